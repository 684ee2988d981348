//! Framing, winding and push-off bookkeeping while `K` is isotoped across `J`.
//!
//! The state holds the six per-knot quantities whose differences are the
//! relative invariants. A crossing of sign `ε` (the sign of `J · A` at the
//! crossing point) moves every field, yet the three differences stay fixed.
//! Intersection patterns between the old surface and the trace annulus are
//! resolved arc by arc with the same bookkeeping.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::{classical, InvariantError, OrientationFlag};
use crate::{ComponentId, GridDiagram, Sign};

/// Largest arc count accepted per class in an intersection pattern.
pub const MAX_ARCS: u32 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("an intersection pattern has at most one singular clasp, found {0}")]
    MultipleSingularClasps(usize),
    #[error("{count} {class} arcs exceed the limit of {MAX_ARCS}")]
    TooManyArcs { class: ArcClass, count: u32 },
    #[error("integer overflow in framing bookkeeping")]
    Overflow,
    #[error("relative invariants changed from {before:?} to {after:?}")]
    InvariantBroken {
        before: (i64, i64, i64),
        after: (i64, i64, i64),
    },
}

/// `tw_K, tw_J`: contact framing against the surface framing; `w_K, w_J`:
/// winding of the tangent field; `s_K, s_J`: push-off intersections with the
/// surface.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FramedPairState {
    #[serde(rename = "tw_K")]
    pub tw_k: i64,
    #[serde(rename = "tw_J")]
    pub tw_j: i64,
    #[serde(rename = "w_K")]
    pub w_k: i64,
    #[serde(rename = "w_J")]
    pub w_j: i64,
    #[serde(rename = "sK")]
    pub s_k: i64,
    #[serde(rename = "sJ")]
    pub s_j: i64,
}

impl FramedPairState {
    pub fn new(tw_k: i64, tw_j: i64, w_k: i64, w_j: i64, s_k: i64, s_j: i64) -> Self {
        FramedPairState {
            tw_k,
            tw_j,
            w_k,
            w_j,
            s_k,
            s_j,
        }
    }

    /// State of components `k` and `j` of a grid: framings are the classical
    /// tb numbers, windings and push-off counts are the rotation and positive
    /// self-linking numbers scaled by the orientation sign.
    pub fn from_grid(
        g: &GridDiagram,
        k: ComponentId,
        j: ComponentId,
        orientation: OrientationFlag,
    ) -> Result<Self, InvariantError> {
        let (ck, cj) = (classical(g, k)?, classical(g, j)?);
        if k == j {
            return Err(crate::GridError::SameComponent(k.0).into());
        }
        let s = orientation.sign().value();
        Ok(FramedPairState::new(
            ck.tb,
            cj.tb,
            s * ck.r,
            s * cj.r,
            s * ck.sl_pos,
            s * cj.sl_pos,
        ))
    }

    pub fn tb_rel(&self) -> i64 {
        self.tw_k - self.tw_j
    }

    pub fn r_rel(&self) -> i64 {
        self.w_k - self.w_j
    }

    pub fn sl_rel(&self) -> i64 {
        self.s_k - self.s_j
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.tb_rel(), self.r_rel(), self.sl_rel())
    }

    fn fields(&self) -> [i64; 6] {
        [self.tw_k, self.tw_j, self.w_k, self.w_j, self.s_k, self.s_j]
    }

    /// True when all six fields differ.
    pub fn differs_everywhere(&self, other: &FramedPairState) -> bool {
        self.fields().iter().zip(other.fields()).all(|(a, b)| *a != b)
    }

    fn shifted(&self, twist: i64, winding: i64, pushoff: i64) -> Result<Self, SimError> {
        let add = |a: i64, b: i64| a.checked_add(b).ok_or(SimError::Overflow);
        Ok(FramedPairState {
            tw_k: add(self.tw_k, twist)?,
            tw_j: add(self.tw_j, twist)?,
            w_k: add(self.w_k, winding)?,
            w_j: add(self.w_j, winding)?,
            s_k: add(self.s_k, pushoff)?,
            s_j: add(self.s_j, pushoff)?,
        })
    }
}

/// `K` passes through `J` once, with intersection sign `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrossingEvent {
    pub sign: Sign,
}

/// Apply one crossing: twists and windings drop by `ε`, push-off
/// intersections rise by `ε`, on both knots.
pub fn cross(s: FramedPairState, e: CrossingEvent) -> FramedPairState {
    let eps = e.sign.value();
    FramedPairState {
        tw_k: s.tw_k - eps,
        tw_j: s.tw_j - eps,
        w_k: s.w_k - eps,
        w_j: s.w_j - eps,
        s_k: s.s_k + eps,
        s_j: s.s_j + eps,
    }
}

fn checked_cross(s: FramedPairState, sign: Sign) -> Result<FramedPairState, SimError> {
    let eps = sign.value();
    s.shifted(-eps, -eps, eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcClass {
    Circle,
    BoundaryParallel,
    Ribbon,
    Clasp,
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArcClass::Circle => "circle",
            ArcClass::BoundaryParallel => "boundary-parallel",
            ArcClass::Ribbon => "ribbon",
            ArcClass::Clasp => "clasp",
        })
    }
}

/// Intersection arcs between the old surface and the trace annulus.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntersectionPattern {
    pub circles: u32,
    pub ribbon_arcs: u32,
    pub boundary_parallel_arcs: u32,
    pub clasps: u32,
    /// Signs of the singular clasps; a geometric pattern has at most one.
    pub singular_clasps: Vec<Sign>,
}

impl IntersectionPattern {
    pub fn singular(&self) -> Option<Sign> {
        self.singular_clasps.first().copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResolutionStep {
    /// `index` 0 is the innermost arc of its class.
    Arc {
        class: ArcClass,
        index: u32,
    },
    SingularClasp(Sign),
}

/// Resolve every arc of a pattern, in the order circles, boundary-parallel
/// arcs, ribbon arcs, clasps, singular clasp.
///
/// Circles and boundary-parallel arcs are removed by isotopies of the surface
/// interior and change nothing. Each ribbon arc adds one twist to the framing
/// of both `K` and `J`. Clasps leave every field alone. The singular clasp
/// acts exactly like a crossing of its sign.
pub fn resolve_pattern(
    p: &IntersectionPattern,
    s: FramedPairState,
) -> Result<(FramedPairState, Vec<ResolutionStep>), SimError> {
    if p.singular_clasps.len() > 1 {
        return Err(SimError::MultipleSingularClasps(p.singular_clasps.len()));
    }
    let classes = [
        (ArcClass::Circle, p.circles),
        (ArcClass::BoundaryParallel, p.boundary_parallel_arcs),
        (ArcClass::Ribbon, p.ribbon_arcs),
        (ArcClass::Clasp, p.clasps),
    ];
    if let Some(&(class, count)) = classes.iter().find(|(_, c)| *c > MAX_ARCS) {
        return Err(SimError::TooManyArcs { class, count });
    }

    let mut state = s;
    let mut log = Vec::new();
    for (class, count) in classes {
        for index in 0..count {
            if class == ArcClass::Ribbon {
                state = state.shifted(1, 0, 0)?;
            }
            log.push(ResolutionStep::Arc { class, index });
        }
    }
    if let Some(sign) = p.singular() {
        state = checked_cross(state, sign)?;
        log.push(ResolutionStep::SingularClasp(sign));
    }
    Ok((state, log))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Event {
    Cross(CrossingEvent),
    Pattern(IntersectionPattern),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("event {index}: {source}")]
pub struct TraceError {
    pub index: usize,
    pub source: SimError,
}

/// Replay events from `s0`. The returned trace starts with `s0`; the relative
/// triple is checked after every event.
pub fn run_trace(s0: FramedPairState, events: &[Event]) -> Result<Vec<FramedPairState>, TraceError> {
    let mut trace = Vec::with_capacity(events.len() + 1);
    trace.push(s0);
    let mut state = s0;
    for (index, event) in events.iter().enumerate() {
        let wrap = |source| TraceError { index, source };
        state = match event {
            Event::Cross(e) => checked_cross(state, e.sign).map_err(wrap)?,
            Event::Pattern(p) => resolve_pattern(p, state).map_err(wrap)?.0,
        };
        if state.triple() != s0.triple() {
            return Err(wrap(SimError::InvariantBroken {
                before: s0.triple(),
                after: state.triple(),
            }));
        }
        trace.push(state);
    }
    Ok(trace)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct EventParseError {
    pub line: usize,
    pub message: String,
}

/// Parse an event script:
///
/// ```text
/// cross <+|->
/// pattern circles=<n> ribbon=<n> bparallel=<n> clasps=<n> singular=<+|-|none>
/// ```
/// Pattern keys may appear in any order; missing ones default to 0 / `none`.
pub fn parse_event_script(input: &str) -> Result<Vec<Event>, EventParseError> {
    let mut events = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| EventParseError { line, message };
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(head) = tokens.next() else {
            continue;
        };
        match head {
            "cross" => {
                let sign = tokens
                    .next()
                    .ok_or_else(|| err("`cross` needs a sign".into()))?
                    .parse::<Sign>()
                    .map_err(|e| err(e.to_string()))?;
                if let Some(extra) = tokens.next() {
                    return Err(err(format!("unexpected `{extra}`")));
                }
                events.push(Event::Cross(CrossingEvent { sign }));
            }
            "pattern" => {
                let mut p = IntersectionPattern::default();
                let mut seen: Vec<&str> = Vec::new();
                for token in tokens {
                    let (key, value) = token
                        .split_once('=')
                        .ok_or_else(|| err(format!("expected `key=value`, found `{token}`")))?;
                    if seen.contains(&key) {
                        return Err(err(format!("duplicate key `{key}`")));
                    }
                    seen.push(key);
                    let count = || -> Result<u32, EventParseError> {
                        let n: u32 = value
                            .parse()
                            .map_err(|_| err(format!("`{key}` expects a count, found `{value}`")))?;
                        if n > MAX_ARCS {
                            return Err(err(format!("`{key}={n}` exceeds the limit of {MAX_ARCS}")));
                        }
                        Ok(n)
                    };
                    match key {
                        "circles" => p.circles = count()?,
                        "ribbon" => p.ribbon_arcs = count()?,
                        "bparallel" => p.boundary_parallel_arcs = count()?,
                        "clasps" => p.clasps = count()?,
                        "singular" => {
                            if value != "none" {
                                let sign = value.parse::<Sign>().map_err(|e| err(e.to_string()))?;
                                p.singular_clasps.push(sign);
                            }
                        }
                        other => return Err(err(format!("unknown key `{other}`"))),
                    }
                }
                events.push(Event::Pattern(p));
            }
            other => return Err(err(format!("unknown event `{other}`"))),
        }
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLUS: CrossingEvent = CrossingEvent { sign: Sign::Plus };
    const MINUS: CrossingEvent = CrossingEvent { sign: Sign::Minus };

    #[test]
    fn initial_states() {
        assert_eq!(FramedPairState::default().triple(), (0, 0, 0));
        assert_eq!(FramedPairState::new(-1, -1, 0, 0, -1, -1).triple(), (0, 0, 0));
        assert_eq!(FramedPairState::new(3, 1, 2, -1, 0, 4).triple(), (2, 3, -4));
    }

    #[test]
    fn state_from_grid_matches_relative_invariants() {
        let g = GridDiagram::new(4, vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
        let g = crate::moves::legendrian_stabilize(&g, ComponentId(0), Sign::Plus).unwrap();
        for flag in [OrientationFlag::default(), OrientationFlag::default().flipped()] {
            let s = FramedPairState::from_grid(&g, ComponentId(0), ComponentId(1), flag).unwrap();
            let rel = crate::relative_invariants(&g, ComponentId(0), ComponentId(1), flag).unwrap();
            assert_eq!(s.triple(), rel.triple());
        }
        assert!(FramedPairState::from_grid(&g, ComponentId(1), ComponentId(1), OrientationFlag::default()).is_err());
    }

    #[test]
    fn state_json_uses_field_names() {
        let json = serde_json::to_string(&FramedPairState::new(1, 2, 3, 4, 5, 6)).unwrap();
        assert_eq!(json, r#"{"tw_K":1,"tw_J":2,"w_K":3,"w_J":4,"sK":5,"sJ":6}"#);
    }

    #[test]
    fn single_crossing_moves_every_field() {
        let s = cross(FramedPairState::default(), PLUS);
        assert_eq!(s, FramedPairState::new(-1, -1, -1, -1, 1, 1));
        assert_eq!(s.triple(), (0, 0, 0));
        assert!(s.differs_everywhere(&FramedPairState::default()));
    }

    #[test]
    fn opposite_crossings_cancel() {
        let s = FramedPairState::new(3, -2, 5, 1, 0, 7);
        assert_eq!(cross(cross(s, PLUS), MINUS), s);
        assert_eq!(cross(cross(s, MINUS), PLUS), s);
    }

    #[test]
    fn empty_pattern_changes_nothing() {
        let s = FramedPairState::new(1, 2, 3, 4, 5, 6);
        let (t, log) = resolve_pattern(&IntersectionPattern::default(), s).unwrap();
        assert_eq!(t, s);
        assert!(log.is_empty());
    }

    #[test]
    fn singular_clasp_matches_a_crossing() {
        let s = FramedPairState::new(1, 2, 3, 4, 5, 6);
        for sign in [Sign::Plus, Sign::Minus] {
            let p = IntersectionPattern {
                singular_clasps: vec![sign],
                ..Default::default()
            };
            let (t, log) = resolve_pattern(&p, s).unwrap();
            assert_eq!(t, cross(s, CrossingEvent { sign }));
            assert_eq!(log, vec![ResolutionStep::SingularClasp(sign)]);
        }
    }

    #[test]
    fn ribbon_arcs_twist_both_boundaries() {
        let s = FramedPairState::default();
        let p = IntersectionPattern {
            circles: 2,
            ribbon_arcs: 3,
            ..Default::default()
        };
        let (t, log) = resolve_pattern(&p, s).unwrap();
        assert_eq!((t.tw_k, t.tw_j), (3, 3));
        assert_eq!(t.triple(), s.triple());
        assert_eq!(log.len(), 5);
        assert_eq!(
            log[0],
            ResolutionStep::Arc {
                class: ArcClass::Circle,
                index: 0
            }
        );
        assert_eq!(
            log[2],
            ResolutionStep::Arc {
                class: ArcClass::Ribbon,
                index: 0
            }
        );
    }

    #[test]
    fn resolution_order() {
        let p = IntersectionPattern {
            circles: 1,
            ribbon_arcs: 1,
            boundary_parallel_arcs: 1,
            clasps: 1,
            singular_clasps: vec![Sign::Minus],
        };
        let (_, log) = resolve_pattern(&p, FramedPairState::default()).unwrap();
        let classes: Vec<_> = log
            .iter()
            .map(|s| match s {
                ResolutionStep::Arc { class, .. } => Some(*class),
                ResolutionStep::SingularClasp(_) => None,
            })
            .collect();
        assert_eq!(
            classes,
            vec![
                Some(ArcClass::Circle),
                Some(ArcClass::BoundaryParallel),
                Some(ArcClass::Ribbon),
                Some(ArcClass::Clasp),
                None
            ]
        );
    }

    #[test]
    fn two_singular_clasps_are_rejected() {
        let p = IntersectionPattern {
            singular_clasps: vec![Sign::Plus, Sign::Minus],
            ..Default::default()
        };
        assert_eq!(
            resolve_pattern(&p, FramedPairState::default()),
            Err(SimError::MultipleSingularClasps(2))
        );
        let err = run_trace(FramedPairState::default(), &[Event::Cross(PLUS), Event::Pattern(p)]).unwrap_err();
        assert_eq!(err.index, 1);
    }

    #[test]
    fn traces() {
        let s0 = FramedPairState::new(-1, -2, 0, 1, -1, -3);
        assert_eq!(run_trace(s0, &[]).unwrap(), vec![s0]);
        let alternating: Vec<_> = (0..10)
            .map(|i| Event::Cross(if i % 2 == 0 { PLUS } else { MINUS }))
            .collect();
        let trace = run_trace(s0, &alternating).unwrap();
        assert_eq!(trace.len(), 11);
        assert_eq!(*trace.last().unwrap(), s0);
    }

    #[test]
    fn parse_events() {
        let src = "# demo\ncross +\npattern circles=2 ribbon=3 bparallel=0 clasps=1 singular=-\npattern singular=none\ncross -\n";
        let events = parse_event_script(src).unwrap();
        assert_eq!(events.len(), 4);
        assert_eq!(events[0], Event::Cross(PLUS));
        assert_eq!(
            events[1],
            Event::Pattern(IntersectionPattern {
                circles: 2,
                ribbon_arcs: 3,
                boundary_parallel_arcs: 0,
                clasps: 1,
                singular_clasps: vec![Sign::Minus],
            })
        );
        assert_eq!(events[2], Event::Pattern(IntersectionPattern::default()));
    }

    #[test]
    fn parse_event_errors() {
        for (src, line) in [
            ("cross", 1),
            ("cross +\ncross 0", 2),
            ("cross + +", 1),
            ("pattern circles=x", 1),
            ("pattern circles=1 circles=2", 1),
            ("pattern foo=1", 1),
            ("pattern ribbon", 1),
            ("pattern singular=2", 1),
            ("pattern ribbon=100001", 1),
            ("\n\njump", 3),
        ] {
            assert_eq!(parse_event_script(src).unwrap_err().line, line, "{src}");
        }
    }
}
