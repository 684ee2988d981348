//! Grid moves: cyclic translation, commutation of adjacent lines, and
//! (de)stabilization.
//!
//! Every move returns a fresh diagram together with a [`ColumnMap`] from old
//! to new column indices, so component identities can be followed through a
//! script even when the component ordering of the new diagram changes.
//!
//! Stabilization subtypes name the cell of the inserted 2x2 block that is left
//! empty. Under the default front convention the subtypes behave as follows
//! (classified exhaustively on all markers of all grids up to size 4):
//!
//! | marker | NE | NW | SE | SW |
//! |--------|----|----|----|----|
//! | X | isotopy | S- | S+ | isotopy |
//! | O | isotopy | S+ | S- | isotopy |
//!
//! `S±` lowers tb by one and changes the rotation number by `±1`.

mod script;

pub use script::{apply_script, parse_move_script, MoveScript, ScriptError, ScriptParseError, ScriptRun, TraceStep};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::grid::{span, ComponentId, GridDiagram, GridError, Marker};
use crate::invariants::InvariantError;
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{axis} {index} and {next} have interleaving marker spans", next = index + 1)]
    InterleavingSpans { axis: Axis, index: usize },
    #[error("{axis} index {index} out of range for a grid of size {n}")]
    IndexOutOfRange { axis: Axis, index: usize, n: usize },
    #[error("no {marker} marker at column {column} (grid size {n})")]
    BadCell { marker: Marker, column: usize, n: usize },
    #[error("column {column} is not the doubled column of a destabilizable 2x2 block")]
    NoDestabilization { column: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Col,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Col => "col",
        })
    }
}

/// Position inside a 2x2 block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    NE,
    NW,
    SE,
    SW,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NE, Quadrant::NW, Quadrant::SE, Quadrant::SW];

    fn is_east(self) -> bool {
        matches!(self, Quadrant::NE | Quadrant::SE)
    }

    fn is_north(self) -> bool {
        matches!(self, Quadrant::NE | Quadrant::NW)
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrant::NE => "NE",
            Quadrant::NW => "NW",
            Quadrant::SE => "SE",
            Quadrant::SW => "SW",
        })
    }
}

impl FromStr for Quadrant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NE" => Ok(Quadrant::NE),
            "NW" => Ok(Quadrant::NW),
            "SE" => Ok(Quadrant::SE),
            "SW" => Ok(Quadrant::SW),
            other => Err(format!("expected NE, NW, SE or SW, found `{other}`")),
        }
    }
}

/// What a stabilization subtype does to the Legendrian type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilizationKind {
    Isotopy,
    Stabilization(Sign),
}

/// Classification of `(marker, empty cell)` subtypes under the default front
/// convention. See the module table.
pub fn stabilization_kind(marker: Marker, empty: Quadrant) -> StabilizationKind {
    use Quadrant::*;
    match (marker, empty) {
        (_, NE) | (_, SW) => StabilizationKind::Isotopy,
        (Marker::X, SE) | (Marker::O, NW) => StabilizationKind::Stabilization(Sign::Plus),
        (Marker::X, NW) | (Marker::O, SE) => StabilizationKind::Stabilization(Sign::Minus),
    }
}

/// The X-marker subtype realizing `S_sign`.
pub fn legendrian_subtype(sign: Sign) -> Quadrant {
    match sign {
        Sign::Plus => Quadrant::SE,
        Sign::Minus => Quadrant::NW,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridMove {
    Translate(Direction),
    Commute {
        axis: Axis,
        index: usize,
    },
    Stabilize {
        marker: Marker,
        column: usize,
        empty: Quadrant,
    },
    Destabilize {
        column: usize,
    },
    LegendrianStab {
        component: ComponentId,
        sign: Sign,
    },
}

impl GridMove {
    /// True for moves that realize Legendrian isotopies.
    pub fn is_isotopy(&self) -> bool {
        match *self {
            GridMove::Translate(_) | GridMove::Commute { .. } => true,
            GridMove::Stabilize { marker, empty, .. } => {
                stabilization_kind(marker, empty) == StabilizationKind::Isotopy
            }
            GridMove::Destabilize { .. } | GridMove::LegendrianStab { .. } => false,
        }
    }
}

impl fmt::Display for GridMove {
    /// Script syntax for the move.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GridMove::Translate(d) => {
                let d = match d {
                    Direction::Up => "up",
                    Direction::Down => "down",
                    Direction::Left => "left",
                    Direction::Right => "right",
                };
                write!(f, "translate {d}")
            }
            GridMove::Commute { axis, index } => write!(f, "commute {axis} {index}"),
            GridMove::Stabilize { marker, column, empty } => write!(f, "stab {marker} {column} {empty}"),
            GridMove::Destabilize { column } => write!(f, "destab {column}"),
            GridMove::LegendrianStab { component, sign } => write!(f, "lstab {component} {sign}"),
        }
    }
}

/// `map[old] = Some(new)` for every column that survives a move.
pub type ColumnMap = Vec<Option<usize>>;

fn identity_map(n: usize) -> ColumnMap {
    (0..n).map(Some).collect()
}

/// Shift every column (or row) cyclically by one.
pub fn translate(g: &GridDiagram, direction: Direction) -> GridDiagram {
    translate_tracked(g, direction).0
}

pub fn translate_tracked(g: &GridDiagram, direction: Direction) -> (GridDiagram, ColumnMap) {
    let n = g.size();
    let (mut xs, mut os) = (g.xs().to_vec(), g.os().to_vec());
    let map: ColumnMap = match direction {
        Direction::Up | Direction::Down => {
            let step = if direction == Direction::Up { 1 } else { n - 1 };
            for v in xs.iter_mut().chain(os.iter_mut()) {
                *v = (*v + step) % n;
            }
            identity_map(n)
        }
        Direction::Left | Direction::Right => {
            let step = if direction == Direction::Right { 1 } else { n - 1 };
            for c in 0..n {
                xs[(c + step) % n] = g.xs()[c];
                os[(c + step) % n] = g.os()[c];
            }
            (0..n).map(|c| Some((c + step) % n)).collect()
        }
    };
    let out = GridDiagram::new(n, xs, os).expect("translation preserves validity");
    (out, map)
}

/// Spans that cross or share an endpoint. Swapping two lines with a shared
/// endpoint changes tb by one, so it is not a commutation.
fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let disjoint = a.1 < b.0 || b.1 < a.0;
    let nested = (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1);
    !(disjoint || nested)
}

/// Swap lines `index` and `index + 1` when their marker spans are disjoint or
/// strictly nested.
pub fn commute(g: &GridDiagram, index: usize, axis: Axis) -> Result<GridDiagram, MoveError> {
    commute_tracked(g, index, axis).map(|(g, _)| g)
}

pub fn commute_tracked(g: &GridDiagram, index: usize, axis: Axis) -> Result<(GridDiagram, ColumnMap), MoveError> {
    let n = g.size();
    if index >= n.saturating_sub(1) {
        return Err(MoveError::IndexOutOfRange { axis, index, n });
    }
    let line_span = |i: usize| match axis {
        Axis::Col => span(g.xs()[i], g.os()[i]),
        Axis::Row => span(g.marker_col(Marker::X, i), g.marker_col(Marker::O, i)),
    };
    if interleaved(line_span(index), line_span(index + 1)) {
        return Err(MoveError::InterleavingSpans { axis, index });
    }
    let (mut xs, mut os) = (g.xs().to_vec(), g.os().to_vec());
    let mut map = identity_map(n);
    match axis {
        Axis::Col => {
            xs.swap(index, index + 1);
            os.swap(index, index + 1);
            map.swap(index, index + 1);
        }
        Axis::Row => {
            let swap = |r: &mut usize| {
                if *r == index {
                    *r = index + 1;
                } else if *r == index + 1 {
                    *r = index;
                }
            };
            xs.iter_mut().for_each(swap);
            os.iter_mut().for_each(swap);
        }
    }
    Ok((GridDiagram::new(n, xs, os)?, map))
}

/// Replace the `marker` in `column` by an L-shaped block of three markers in a
/// grid one larger. `empty` is the block cell left without a marker.
pub fn stabilize_grid(
    g: &GridDiagram,
    marker: Marker,
    column: usize,
    empty: Quadrant,
) -> Result<GridDiagram, MoveError> {
    stabilize_tracked(g, marker, column, empty).map(|s| s.grid)
}

/// Result of a stabilization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilized {
    pub grid: GridDiagram,
    pub map: ColumnMap,
    /// Column holding two markers of the new block; `destab` on it undoes the move.
    pub doubled_column: usize,
}

pub fn stabilize_tracked(
    g: &GridDiagram,
    marker: Marker,
    column: usize,
    empty: Quadrant,
) -> Result<Stabilized, MoveError> {
    let n = g.size();
    if column >= n {
        return Err(MoveError::BadCell { marker, column, n });
    }
    let other = marker.other();
    let row = g.marker_row(marker, column);
    let (c, r) = (column, row);
    let (ec, oc) = if empty.is_east() { (c + 1, c) } else { (c, c + 1) };
    let (er, or) = if empty.is_north() { (r + 1, r) } else { (r, r + 1) };

    let map_col = |c2: usize| if c2 < c { c2 } else { c2 + 1 };
    // the row being split keeps its outside marker in the empty cell's row
    let map_row = |r2: usize| match r2.cmp(&r) {
        std::cmp::Ordering::Less => r2,
        std::cmp::Ordering::Greater => r2 + 1,
        std::cmp::Ordering::Equal => er,
    };

    let mut same = vec![0; n + 1];
    let mut opp = vec![0; n + 1];
    for c2 in (0..n).filter(|&c2| c2 != c) {
        same[map_col(c2)] = map_row(g.marker_row(marker, c2));
        opp[map_col(c2)] = map_row(g.marker_row(other, c2));
    }
    same[ec] = or;
    opp[ec] = map_row(g.marker_row(other, c));
    same[oc] = er;
    opp[oc] = or;

    let (xs, os) = match marker {
        Marker::X => (same, opp),
        Marker::O => (opp, same),
    };
    let grid = GridDiagram::new(n + 1, xs, os)?;
    let map = (0..n).map(|c2| Some(if c2 == c { ec } else { map_col(c2) })).collect();
    Ok(Stabilized {
        grid,
        map,
        doubled_column: oc,
    })
}

/// Undo a stabilization whose doubled column is `column`.
pub fn destabilize(g: &GridDiagram, column: usize) -> Result<GridDiagram, MoveError> {
    destabilize_tracked(g, column).map(|(g, _)| g)
}

pub fn destabilize_tracked(g: &GridDiagram, column: usize) -> Result<(GridDiagram, ColumnMap), MoveError> {
    if column >= g.size() {
        return Err(MoveError::NoDestabilization { column });
    }
    // both readings, when present, give the same diagram; X blocks are tried first
    [Marker::O, Marker::X]
        .into_iter()
        .find_map(|corner| destabilize_reading(g, column, corner))
        .ok_or(MoveError::NoDestabilization { column })
}

/// Destabilize the block whose lone marker of type `corner` sits in column `oc`.
fn destabilize_reading(g: &GridDiagram, oc: usize, corner: Marker) -> Option<(GridDiagram, ColumnMap)> {
    let n = g.size();
    let doubled = corner.other();
    let or = g.marker_row(corner, oc);
    let er = g.marker_row(doubled, oc);
    if or.abs_diff(er) != 1 {
        return None;
    }
    let ec = g.marker_col(doubled, or);
    if ec.abs_diff(oc) != 1 || g.marker_row(corner, ec) == er {
        return None;
    }

    let map_col = |c2: usize| if c2 < oc { c2 } else { c2 - 1 };
    let map_row = |r2: usize| if r2 < or { r2 } else { r2 - 1 };
    let mut same = vec![0; n - 1];
    let mut opp = vec![0; n - 1];
    for c2 in (0..n).filter(|&c2| c2 != oc) {
        let d_row = if c2 == ec { er } else { g.marker_row(doubled, c2) };
        same[map_col(c2)] = map_row(d_row);
        opp[map_col(c2)] = map_row(g.marker_row(corner, c2));
    }
    let (xs, os) = match doubled {
        Marker::X => (same, opp),
        Marker::O => (opp, same),
    };
    let grid = GridDiagram::new(n - 1, xs, os).expect("destabilization preserves validity");
    let map = (0..n).map(|c2| (c2 != oc).then(|| map_col(c2))).collect();
    Some((grid, map))
}

/// Apply the X-marker stabilization realizing `S_sign` on component `c`, at
/// the X marker of its lowest column.
pub fn legendrian_stabilize(g: &GridDiagram, c: ComponentId, sign: Sign) -> Result<GridDiagram, MoveError> {
    legendrian_stabilize_tracked(g, c, sign).map(|s| s.grid)
}

pub fn legendrian_stabilize_tracked(g: &GridDiagram, c: ComponentId, sign: Sign) -> Result<Stabilized, MoveError> {
    let column = g
        .component_columns(c)?
        .iter()
        .copied()
        .min()
        .expect("components are non-empty");
    stabilize_tracked(g, Marker::X, column, legendrian_subtype(sign))
}

/// Component of `new` that each component of `old` became, following `map`.
pub fn component_image(old: &GridDiagram, new: &GridDiagram, map: &[Option<usize>]) -> Vec<ComponentId> {
    old.component_ids()
        .map(|c| {
            let cols = old.component_columns(c).expect("valid component");
            let col = cols
                .iter()
                .find_map(|&c| map[c])
                .expect("moves never delete a whole component");
            new.component_of_column(col)
        })
        .collect()
}

/// Apply one move, returning the new diagram and its column map.
pub fn apply_move(g: &GridDiagram, m: &GridMove) -> Result<(GridDiagram, ColumnMap), MoveError> {
    match *m {
        GridMove::Translate(d) => Ok(translate_tracked(g, d)),
        GridMove::Commute { axis, index } => commute_tracked(g, index, axis),
        GridMove::Stabilize { marker, column, empty } => {
            stabilize_tracked(g, marker, column, empty).map(|s| (s.grid, s.map))
        }
        GridMove::Destabilize { column } => destabilize_tracked(g, column),
        GridMove::LegendrianStab { component, sign } => {
            legendrian_stabilize_tracked(g, component, sign).map(|s| (s.grid, s.map))
        }
    }
}
