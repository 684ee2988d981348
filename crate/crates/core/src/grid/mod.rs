//! Grid diagrams for oriented knots and links.
//!
//! A grid of size `n` carries one X and one O marker in every column and
//! every row. Column `c` holds its X in row `xs[c]` and its O in row `os[c]`.
//! The rectilinear link diagram joins O to X vertically inside each column and
//! X to O horizontally inside each row; vertical strands always pass over
//! horizontal ones.

mod format;
mod front;

pub use format::{parse_grid, GridJson, GridParseError};
pub use front::{Corner, CornerKind, Cusps, FrontConvention, FrontData};

use std::fmt;

use thiserror::Error;

/// Which marker family a permutation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marker {
    X,
    O,
}

impl Marker {
    pub fn other(self) -> Marker {
        match self {
            Marker::X => Marker::O,
            Marker::O => Marker::X,
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marker::X => f.write_str("X"),
            Marker::O => f.write_str("O"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid size must be positive")]
    EmptyGrid,
    #[error("{marker} list has length {len}, expected {n}")]
    SizeMismatch { marker: Marker, len: usize, n: usize },
    #[error("{marker} list is not a permutation of 0..{n} (entry {value} at column {column})")]
    NotAPermutation {
        marker: Marker,
        column: usize,
        value: usize,
        n: usize,
    },
    #[error("column {column} holds both markers in row {row}")]
    SharedCell { column: usize, row: usize },
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("component {0} given twice; two distinct components are required")]
    SameComponent(usize),
}

/// Index of one link component, ordered by the lowest column it occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub usize);

impl ComponentId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One crossing of the rectilinear diagram: the vertical strand of `column`
/// passes over the horizontal strand of `row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub column: usize,
    pub row: usize,
    pub over: ComponentId,
    pub under: ComponentId,
    pub sign: i32,
}

/// A validated grid diagram. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    xs: Vec<usize>,
    os: Vec<usize>,
    x_col: Vec<usize>,
    o_col: Vec<usize>,
    // columns of each component in tracing order, starting at its lowest column
    cycles: Vec<Vec<usize>>,
    comp_of_col: Vec<usize>,
}

fn inverse(marker: Marker, perm: &[usize]) -> Result<Vec<usize>, GridError> {
    let n = perm.len();
    let mut inv = vec![usize::MAX; n];
    for (column, &value) in perm.iter().enumerate() {
        if value >= n || inv[value] != usize::MAX {
            return Err(GridError::NotAPermutation {
                marker,
                column,
                value,
                n,
            });
        }
        inv[value] = column;
    }
    Ok(inv)
}

impl GridDiagram {
    pub fn new(n: usize, xs: Vec<usize>, os: Vec<usize>) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::EmptyGrid);
        }
        for (marker, list) in [(Marker::X, &xs), (Marker::O, &os)] {
            if list.len() != n {
                return Err(GridError::SizeMismatch {
                    marker,
                    len: list.len(),
                    n,
                });
            }
        }
        let x_col = inverse(Marker::X, &xs)?;
        let o_col = inverse(Marker::O, &os)?;
        if let Some(column) = (0..n).find(|&c| xs[c] == os[c]) {
            return Err(GridError::SharedCell {
                column,
                row: xs[column],
            });
        }

        let mut comp_of_col = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if comp_of_col[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut c = start;
            while comp_of_col[c] == usize::MAX {
                comp_of_col[c] = id;
                cycle.push(c);
                // leave the X of column c horizontally, arrive at the O of that row
                c = o_col[xs[c]];
            }
            cycles.push(cycle);
        }

        Ok(GridDiagram {
            xs,
            os,
            x_col,
            o_col,
            cycles,
            comp_of_col,
        })
    }

    pub fn size(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[usize] {
        &self.xs
    }

    pub fn os(&self) -> &[usize] {
        &self.os
    }

    /// Row of the marker of the given kind in `column`.
    pub fn marker_row(&self, marker: Marker, column: usize) -> usize {
        match marker {
            Marker::X => self.xs[column],
            Marker::O => self.os[column],
        }
    }

    /// Column of the marker of the given kind in `row`.
    pub fn marker_col(&self, marker: Marker, row: usize) -> usize {
        match marker {
            Marker::X => self.x_col[row],
            Marker::O => self.o_col[row],
        }
    }

    pub fn component_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn component_ids(&self) -> impl Iterator<Item = ComponentId> {
        (0..self.cycles.len()).map(ComponentId)
    }

    /// Columns of a component, in tracing order from its lowest column.
    pub fn component_columns(&self, c: ComponentId) -> Result<&[usize], GridError> {
        self.cycles
            .get(c.0)
            .map(Vec::as_slice)
            .ok_or(GridError::UnknownComponent(c.0))
    }

    /// Every component with its member columns.
    pub fn components(&self) -> Vec<(ComponentId, Vec<usize>)> {
        self.cycles
            .iter()
            .enumerate()
            .map(|(i, cols)| {
                let mut cols = cols.clone();
                cols.sort_unstable();
                (ComponentId(i), cols)
            })
            .collect()
    }

    pub fn component_of_column(&self, column: usize) -> ComponentId {
        ComponentId(self.comp_of_col[column])
    }

    /// Component owning the horizontal strand in `row`.
    pub fn component_of_row(&self, row: usize) -> ComponentId {
        ComponentId(self.comp_of_col[self.x_col[row]])
    }

    pub fn check_component(&self, c: ComponentId) -> Result<(), GridError> {
        if c.0 < self.cycles.len() {
            Ok(())
        } else {
            Err(GridError::UnknownComponent(c.0))
        }
    }

    /// All crossings of the rectilinear diagram, in column-major order.
    pub fn crossings(&self) -> Vec<Crossing> {
        let n = self.size();
        let mut out = Vec::new();
        for column in 0..n {
            let (lo, hi) = span(self.os[column], self.xs[column]);
            // vertical strand runs O -> X
            let up = self.xs[column] > self.os[column];
            for row in lo + 1..hi {
                let (left, right) = span(self.x_col[row], self.o_col[row]);
                if left < column && column < right {
                    // horizontal strand runs X -> O
                    let rightward = self.o_col[row] > self.x_col[row];
                    // sign = over x under, over vertical (0, v), under horizontal (h, 0)
                    let sign = if up == rightward { -1 } else { 1 };
                    out.push(Crossing {
                        column,
                        row,
                        over: self.component_of_column(column),
                        under: self.component_of_row(row),
                        sign,
                    });
                }
            }
        }
        out
    }

    /// Sum of the signs of the self-crossings of one component.
    pub fn writhe(&self, c: ComponentId) -> Result<i64, GridError> {
        self.check_component(c)?;
        Ok(self
            .crossings()
            .iter()
            .filter(|x| x.over == c && x.under == c)
            .map(|x| i64::from(x.sign))
            .sum())
    }

    /// Linking number of two distinct components: half the signed count of
    /// the crossings between them.
    pub fn linking_number(&self, a: ComponentId, b: ComponentId) -> Result<i64, GridError> {
        self.check_component(a)?;
        self.check_component(b)?;
        if a == b {
            return Err(GridError::SameComponent(a.0));
        }
        let twice: i64 = self
            .crossings()
            .iter()
            .filter(|x| (x.over == a && x.under == b) || (x.over == b && x.under == a))
            .map(|x| i64::from(x.sign))
            .sum();
        debug_assert_eq!(twice % 2, 0, "odd inter-component crossing sum");
        Ok(twice / 2)
    }

    /// Reverse the orientation of one component by swapping its X and O markers.
    pub fn reverse_component(&self, c: ComponentId) -> Result<GridDiagram, GridError> {
        let columns = self.component_columns(c)?;
        let mut xs = self.xs.clone();
        let mut os = self.os.clone();
        for &col in columns {
            std::mem::swap(&mut xs[col], &mut os[col]);
        }
        GridDiagram::new(self.size(), xs, os)
    }
}

pub(crate) fn span(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl fmt::Display for GridDiagram {
    /// Text form: `n=..`, `X=..`, `O=..` on three lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        writeln!(f, "n={}", self.size())?;
        writeln!(f, "X={}", join(&self.xs))?;
        writeln!(f, "O={}", join(&self.os))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot() -> GridDiagram {
        GridDiagram::new(2, vec![0, 1], vec![1, 0]).unwrap()
    }

    fn split_pair() -> GridDiagram {
        GridDiagram::new(4, vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap()
    }

    #[test]
    fn minimal_unknot_has_one_component() {
        let g = unknot();
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.components(), vec![(ComponentId(0), vec![0, 1])]);
        assert!(g.crossings().is_empty());
        assert_eq!(g.writhe(ComponentId(0)), Ok(0));
    }

    #[test]
    fn split_grid_has_two_components() {
        let g = split_pair();
        assert_eq!(
            g.components(),
            vec![(ComponentId(0), vec![0, 1]), (ComponentId(1), vec![2, 3])]
        );
        assert_eq!(g.linking_number(ComponentId(0), ComponentId(1)), Ok(0));
        assert_eq!(g.writhe(ComponentId(1)), Ok(0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            GridDiagram::new(2, vec![0, 1], vec![0, 1]),
            Err(GridError::SharedCell { column: 0, row: 0 })
        );
        assert!(matches!(
            GridDiagram::new(2, vec![0, 0], vec![1, 0]),
            Err(GridError::NotAPermutation {
                marker: Marker::X,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            GridDiagram::new(3, vec![0, 1], vec![1, 0]),
            Err(GridError::SizeMismatch {
                marker: Marker::X,
                len: 2,
                n: 3
            })
        ));
        assert!(matches!(
            GridDiagram::new(1, vec![0], vec![0]),
            Err(GridError::SharedCell { .. })
        ));
        assert_eq!(GridDiagram::new(0, vec![], vec![]), Err(GridError::EmptyGrid));
        assert!(matches!(
            GridDiagram::new(2, vec![0, 2], vec![1, 0]),
            Err(GridError::NotAPermutation { value: 2, .. })
        ));
    }

    #[test]
    fn component_errors() {
        let g = split_pair();
        assert_eq!(
            g.linking_number(ComponentId(1), ComponentId(1)),
            Err(GridError::SameComponent(1))
        );
        assert_eq!(g.writhe(ComponentId(2)), Err(GridError::UnknownComponent(2)));
        assert!(g.reverse_component(ComponentId(5)).is_err());
    }

    #[test]
    fn reversal_is_an_involution() {
        let g = unknot();
        let r = g.reverse_component(ComponentId(0)).unwrap();
        assert_eq!(r.component_count(), 1);
        assert_ne!(r, g);
        assert_eq!(r.reverse_component(ComponentId(0)).unwrap(), g);
    }

    #[test]
    fn display_is_the_text_format() {
        assert_eq!(unknot().to_string(), "n=2\nX=0,1\nO=1,0\n");
    }
}
