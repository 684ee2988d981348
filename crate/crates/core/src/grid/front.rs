use serde::{Deserialize, Serialize};

use super::{ComponentId, Crossing, GridDiagram, GridError, Marker};

/// Directions in which the two strands leave a marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CornerKind {
    /// Strands go up and right.
    NE,
    NW,
    SE,
    SW,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub column: usize,
    pub row: usize,
    pub marker: Marker,
    pub kind: CornerKind,
    pub component: ComponentId,
}

/// How the rectilinear diagram is turned into a front.
///
/// `Counterclockwise` rotates the grid by 45 degrees counterclockwise: NW and
/// SE corners become cusps, NE and SW corners are smoothed, and the
/// vertical-over-horizontal crossings already have the front's over/under
/// rule. `Clockwise` rotates the other way; then NE and SW corners are cusps
/// and every crossing changes sign, so it describes the mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum FrontConvention {
    #[default]
    Counterclockwise,
    Clockwise,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cusps {
    pub up: u32,
    pub down: u32,
}

impl Cusps {
    pub fn total(self) -> u32 {
        self.up + self.down
    }
}

/// Front-projection combinatorics: signed crossings and oriented cusps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontData {
    pub convention: FrontConvention,
    pub crossings: Vec<Crossing>,
    pub cusps: Vec<Cusps>,
}

impl FrontData {
    pub fn component_count(&self) -> usize {
        self.cusps.len()
    }

    pub fn cusps_of(&self, c: ComponentId) -> Result<Cusps, GridError> {
        self.cusps.get(c.0).copied().ok_or(GridError::UnknownComponent(c.0))
    }

    pub fn writhe(&self, c: ComponentId) -> Result<i64, GridError> {
        self.cusps_of(c)?;
        Ok(self
            .crossings
            .iter()
            .filter(|x| x.over == c && x.under == c)
            .map(|x| i64::from(x.sign))
            .sum())
    }
}

impl GridDiagram {
    /// Corner type of the marker of kind `marker` in `column`.
    pub fn corner(&self, marker: Marker, column: usize) -> Corner {
        let row = self.marker_row(marker, column);
        let other_row = self.marker_row(marker.other(), column);
        let other_col = self.marker_col(marker.other(), row);
        let kind = match (other_row > row, other_col > column) {
            (true, true) => CornerKind::NE,
            (true, false) => CornerKind::NW,
            (false, true) => CornerKind::SE,
            (false, false) => CornerKind::SW,
        };
        Corner {
            column,
            row,
            marker,
            kind,
            component: self.component_of_column(column),
        }
    }

    /// All 2n corners, X markers first, each family in column order.
    pub fn corners(&self) -> impl Iterator<Item = Corner> + '_ {
        [Marker::X, Marker::O]
            .into_iter()
            .flat_map(move |m| (0..self.size()).map(move |c| self.corner(m, c)))
    }

    pub fn to_front(&self, convention: FrontConvention) -> FrontData {
        use CornerKind::*;
        use Marker::*;

        let mut cusps = vec![Cusps::default(); self.component_count()];
        for corner in self.corners() {
            // (is a cusp, traversed downward)
            let class = match (convention, corner.kind, corner.marker) {
                (FrontConvention::Counterclockwise, NW, X) => Some(true),
                (FrontConvention::Counterclockwise, SE, O) => Some(true),
                (FrontConvention::Counterclockwise, NW, O) => Some(false),
                (FrontConvention::Counterclockwise, SE, X) => Some(false),
                (FrontConvention::Clockwise, NE, X) => Some(true),
                (FrontConvention::Clockwise, SW, O) => Some(true),
                (FrontConvention::Clockwise, NE, O) => Some(false),
                (FrontConvention::Clockwise, SW, X) => Some(false),
                _ => None,
            };
            if let Some(down) = class {
                let entry = &mut cusps[corner.component.0];
                if down {
                    entry.down += 1;
                } else {
                    entry.up += 1;
                }
            }
        }

        let mut crossings = self.crossings();
        if convention == FrontConvention::Clockwise {
            for x in &mut crossings {
                x.sign = -x.sign;
            }
        }

        FrontData {
            convention,
            crossings,
            cusps,
        }
    }
}
