//! Classical invariants per component and relative invariants per pair.
//!
//! tb is computed twice. [`tb_front`] uses the front formula
//! `writhe - cusps/2`. [`tb_grid_oracle`] draws the contact push-off of the
//! rectilinear curve (shifted diagonally toward the front's upward direction)
//! and counts its signed crossings with the original curve segment by
//! segment. [`classical`] refuses to answer when the two disagree.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{ComponentId, FrontConvention, FrontData, GridDiagram, GridError};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("tb routes disagree on component {component}: front gives {front}, push-off gives {oracle}")]
    OracleMismatch { component: usize, front: i64, oracle: i64 },
}

/// tb, rotation number and the self-linking numbers of both transverse
/// push-offs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassicalInvariants {
    pub tb: i64,
    pub r: i64,
    pub sl_pos: i64,
    pub sl_neg: i64,
}

impl ClassicalInvariants {
    pub fn new(tb: i64, r: i64) -> Self {
        ClassicalInvariants {
            tb,
            r,
            sl_pos: tb - r,
            sl_neg: tb + r,
        }
    }
}

/// Orientation choices for the bounding surface and the contact coorientation.
/// Reversing either one negates the relative rotation and self-linking numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientationFlag {
    pub surface: Sign,
    pub coorientation: Sign,
}

impl Default for OrientationFlag {
    fn default() -> Self {
        OrientationFlag {
            surface: Sign::Plus,
            coorientation: Sign::Plus,
        }
    }
}

impl OrientationFlag {
    pub fn with_surface(surface: Sign) -> Self {
        OrientationFlag {
            surface,
            ..Default::default()
        }
    }

    /// Reverse the surface orientation.
    pub fn flipped(self) -> Self {
        OrientationFlag {
            surface: -self.surface,
            ..self
        }
    }

    pub fn sign(self) -> Sign {
        self.surface * self.coorientation
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelativeInvariants {
    pub pair: (ComponentId, ComponentId),
    pub tb_rel: i64,
    pub r_rel: i64,
    pub sl_rel: i64,
    pub orientation: OrientationFlag,
}

impl RelativeInvariants {
    pub fn triple(&self) -> (i64, i64, i64) {
        (self.tb_rel, self.r_rel, self.sl_rel)
    }
}

/// `writhe - (up + down) / 2` for one component of a front.
pub fn tb_front(f: &FrontData, c: ComponentId) -> Result<i64, GridError> {
    let cusps = f.cusps_of(c)?;
    Ok(f.writhe(c)? - i64::from(cusps.total()) / 2)
}

/// `(down - up) / 2` for one component of a front.
pub fn rot(f: &FrontData, c: ComponentId) -> Result<i64, GridError> {
    let cusps = f.cusps_of(c)?;
    Ok((i64::from(cusps.down) - i64::from(cusps.up)) / 2)
}

pub fn tb_grid_oracle(g: &GridDiagram, c: ComponentId) -> Result<i64, GridError> {
    tb_grid_oracle_with(g, c, FrontConvention::default())
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    vertical: bool,
    // fixed coordinate (x for vertical, y for horizontal)
    at: i64,
    from: i64,
    to: i64,
}

impl Segment {
    fn dir(&self) -> (i64, i64) {
        let d = (self.to - self.from).signum();
        if self.vertical {
            (0, d)
        } else {
            (d, 0)
        }
    }

    fn strictly_contains(&self, v: i64) -> bool {
        let (lo, hi) = if self.from < self.to {
            (self.from, self.to)
        } else {
            (self.to, self.from)
        };
        lo < v && v < hi
    }
}

/// Closed rectilinear curve of one component, scaled by 4 and shifted by
/// `offset`.
fn polyline(g: &GridDiagram, columns: &[usize], offset: (i64, i64)) -> Vec<Segment> {
    let px = |c: usize| 4 * c as i64 + offset.0;
    let py = |r: usize| 4 * r as i64 + offset.1;
    let mut segs = Vec::with_capacity(2 * columns.len());
    for (i, &c) in columns.iter().enumerate() {
        let next = columns[(i + 1) % columns.len()];
        segs.push(Segment {
            vertical: true,
            at: px(c),
            from: py(g.os()[c]),
            to: py(g.xs()[c]),
        });
        segs.push(Segment {
            vertical: false,
            at: py(g.xs()[c]),
            from: px(c),
            to: px(next),
        });
    }
    segs
}

/// Linking number of a component with its contact push-off, by brute force
/// over all segment pairs of the two curves.
pub fn tb_grid_oracle_with(g: &GridDiagram, c: ComponentId, convention: FrontConvention) -> Result<i64, GridError> {
    let columns = g.component_columns(c)?;
    // the front's upward direction in grid coordinates, and which strand family is on top
    let (shift, vertical_over) = match convention {
        FrontConvention::Counterclockwise => ((1, 1), true),
        FrontConvention::Clockwise => ((-1, 1), false),
    };
    let knot = polyline(g, columns, (0, 0));
    let pushoff = polyline(g, columns, shift);

    let mut twice = 0i64;
    for a in &knot {
        for b in &pushoff {
            if a.vertical == b.vertical {
                continue;
            }
            let (v, h) = if a.vertical { (a, b) } else { (b, a) };
            if !(h.strictly_contains(v.at) && v.strictly_contains(h.at)) {
                continue;
            }
            let (over, under) = if vertical_over { (v, h) } else { (h, v) };
            let (o, u) = (over.dir(), under.dir());
            twice += (o.0 * u.1 - o.1 * u.0).signum();
        }
    }
    debug_assert_eq!(twice % 2, 0);
    Ok(twice / 2)
}

/// tb, rotation and self-linking of one component, after checking that both
/// tb routes agree.
pub fn classical(g: &GridDiagram, c: ComponentId) -> Result<ClassicalInvariants, InvariantError> {
    let f = g.to_front(FrontConvention::default());
    classical_from_front(g, &f, c)
}

pub(crate) fn classical_from_front(
    g: &GridDiagram,
    f: &FrontData,
    c: ComponentId,
) -> Result<ClassicalInvariants, InvariantError> {
    let tb = tb_front(f, c)?;
    let oracle = tb_grid_oracle_with(g, c, f.convention)?;
    if tb != oracle {
        return Err(InvariantError::OracleMismatch {
            component: c.0,
            front: tb,
            oracle,
        });
    }
    Ok(ClassicalInvariants::new(tb, rot(f, c)?))
}

/// Classical invariants of every component, in component order.
pub fn classical_all(g: &GridDiagram) -> Result<Vec<ClassicalInvariants>, InvariantError> {
    let f = g.to_front(FrontConvention::default());
    g.component_ids().map(|c| classical_from_front(g, &f, c)).collect()
}

/// Relative tb, rotation and self-linking of component `k` with respect to `j`.
pub fn relative_invariants(
    g: &GridDiagram,
    k: ComponentId,
    j: ComponentId,
    orientation: OrientationFlag,
) -> Result<RelativeInvariants, InvariantError> {
    g.check_component(k)?;
    g.check_component(j)?;
    if k == j {
        return Err(GridError::SameComponent(k.0).into());
    }
    let ck = classical(g, k)?;
    let cj = classical(g, j)?;
    Ok(relative_from(k, j, &ck, &cj, orientation))
}

pub(crate) fn relative_from(
    k: ComponentId,
    j: ComponentId,
    ck: &ClassicalInvariants,
    cj: &ClassicalInvariants,
    orientation: OrientationFlag,
) -> RelativeInvariants {
    let s = orientation.sign().value();
    RelativeInvariants {
        pair: (k, j),
        tb_rel: ck.tb - cj.tb,
        r_rel: s * (ck.r - cj.r),
        sl_rel: s * (ck.sl_pos - cj.sl_pos),
        orientation,
    }
}

/// `{"component":…,"tb":…,"r":…,"sl_pos":…,"sl_neg":…}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub component: usize,
    pub tb: i64,
    pub r: i64,
    pub sl_pos: i64,
    pub sl_neg: i64,
}

impl ComponentReport {
    pub fn new(c: ComponentId, inv: &ClassicalInvariants) -> Self {
        ComponentReport {
            component: c.0,
            tb: inv.tb,
            r: inv.r,
            sl_pos: inv.sl_pos,
            sl_neg: inv.sl_neg,
        }
    }
}

/// `{"pair":[k,j],"tb_rel":…,"r_rel":…,"sl_rel":…}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub pair: [usize; 2],
    pub tb_rel: i64,
    pub r_rel: i64,
    pub sl_rel: i64,
}

impl From<&RelativeInvariants> for PairReport {
    fn from(r: &RelativeInvariants) -> Self {
        PairReport {
            pair: [r.pair.0 .0, r.pair.1 .0],
            tb_rel: r.tb_rel,
            r_rel: r.r_rel,
            sl_rel: r.sl_rel,
        }
    }
}
