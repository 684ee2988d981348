//! Move scripts: one move per line.
//!
//! ```text
//! translate <up|down|left|right>
//! commute <row|col> <i>
//! stab <X|O> <col> <NE|NW|SE|SW>
//! destab <col>
//! lstab <component> <+|->
//! ```
//! `#` starts a comment.

use thiserror::Error;

use super::{apply_move, Axis, Direction, GridMove, MoveError};
use crate::grid::{ComponentId, FrontConvention, GridDiagram, Marker};
use crate::invariants::{classical_all, relative_from, ClassicalInvariants, OrientationFlag, RelativeInvariants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {index} (line {line}) `{mv}`: {source}")]
pub struct ScriptError {
    /// Zero-based position of the failing move.
    pub index: usize,
    pub line: usize,
    pub mv: GridMove,
    pub source: MoveError,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveScript {
    pub moves: Vec<GridMove>,
    /// Source line of each move.
    pub lines: Vec<usize>,
}

impl MoveScript {
    pub fn from_moves(moves: Vec<GridMove>) -> Self {
        let lines = (1..=moves.len()).collect();
        MoveScript { moves, lines }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

fn parse_index(line: usize, token: &str, what: &str) -> Result<usize, ScriptParseError> {
    token.parse().map_err(|_| ScriptParseError {
        line,
        message: format!("expected {what} index, found `{token}`"),
    })
}

pub fn parse_move_script(input: &str) -> Result<MoveScript, ScriptParseError> {
    let mut script = MoveScript::default();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let err = |message: String| ScriptParseError { line, message };
        let arity = |k: usize| {
            if tokens.len() == k + 1 {
                Ok(())
            } else {
                Err(err(format!(
                    "`{}` takes {k} argument(s), found {}",
                    tokens[0],
                    tokens.len() - 1
                )))
            }
        };
        let mv = match tokens[0] {
            "translate" => {
                arity(1)?;
                let d = match tokens[1] {
                    "up" => Direction::Up,
                    "down" => Direction::Down,
                    "left" => Direction::Left,
                    "right" => Direction::Right,
                    other => return Err(err(format!("unknown direction `{other}`"))),
                };
                GridMove::Translate(d)
            }
            "commute" => {
                arity(2)?;
                let axis = match tokens[1] {
                    "row" => Axis::Row,
                    "col" => Axis::Col,
                    other => return Err(err(format!("expected `row` or `col`, found `{other}`"))),
                };
                GridMove::Commute {
                    axis,
                    index: parse_index(line, tokens[2], "line")?,
                }
            }
            "stab" => {
                arity(3)?;
                let marker = match tokens[1] {
                    "X" => Marker::X,
                    "O" => Marker::O,
                    other => return Err(err(format!("expected `X` or `O`, found `{other}`"))),
                };
                GridMove::Stabilize {
                    marker,
                    column: parse_index(line, tokens[2], "column")?,
                    empty: tokens[3].parse().map_err(err)?,
                }
            }
            "destab" => {
                arity(1)?;
                GridMove::Destabilize {
                    column: parse_index(line, tokens[1], "column")?,
                }
            }
            "lstab" => {
                arity(2)?;
                GridMove::LegendrianStab {
                    component: ComponentId(parse_index(line, tokens[1], "component")?),
                    sign: tokens[2].parse().map_err(|e| err(format!("{e}")))?,
                }
            }
            other => return Err(err(format!("unknown move `{other}`"))),
        };
        script.moves.push(mv);
        script.lines.push(line);
    }
    Ok(script)
}

/// Invariants after one step. Component data is indexed by the component's
/// identity in the starting diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// `None` for the starting diagram.
    pub mv: Option<GridMove>,
    /// Current component index of each original component.
    pub current: Vec<ComponentId>,
    pub invariants: Vec<ClassicalInvariants>,
    /// Relative invariants of the tracked pair, labelled with original ids.
    pub relative: Option<RelativeInvariants>,
    /// Some component's cusp count changed in this step.
    pub cusps_changed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptRun {
    pub grid: GridDiagram,
    pub trace: Vec<TraceStep>,
}

struct Tracker {
    // one surviving column per original component
    reps: Vec<usize>,
}

impl Tracker {
    fn current(&self, g: &GridDiagram) -> Vec<ComponentId> {
        self.reps.iter().map(|&c| g.component_of_column(c)).collect()
    }

    fn advance(&mut self, old: &GridDiagram, map: &[Option<usize>]) {
        for rep in &mut self.reps {
            let comp = old.component_of_column(*rep);
            let cols = old.component_columns(comp).expect("tracked component exists");
            *rep = std::iter::once(*rep)
                .chain(cols.iter().copied())
                .find_map(|c| map[c])
                .expect("moves never delete a whole component");
        }
    }
}

fn snapshot(
    g: &GridDiagram,
    tracker: &Tracker,
    pair: Option<(ComponentId, ComponentId)>,
    orientation: OrientationFlag,
    mv: Option<GridMove>,
    prev_cusps: Option<&[u32]>,
) -> Result<(TraceStep, Vec<u32>), MoveError> {
    let current = tracker.current(g);
    let all = classical_all(g)?;
    let invariants: Vec<_> = current.iter().map(|c| all[c.0]).collect();
    let front = g.to_front(FrontConvention::default());
    let cusps: Vec<u32> = current.iter().map(|c| front.cusps[c.0].total()).collect();
    let relative = pair.map(|(k, j)| relative_from(k, j, &invariants[k.0], &invariants[j.0], orientation));
    let cusps_changed = prev_cusps.is_some_and(|p| p != cusps.as_slice());
    Ok((
        TraceStep {
            mv,
            current,
            invariants,
            relative,
            cusps_changed,
        },
        cusps,
    ))
}

/// Run a script, recording the invariants after every step. `pair` selects
/// the components for the relative triple; by default components 0 and 1 when
/// the diagram has at least two.
pub fn apply_script(
    g: &GridDiagram,
    script: &MoveScript,
    pair: Option<(ComponentId, ComponentId)>,
    orientation: OrientationFlag,
) -> Result<ScriptRun, ScriptError> {
    let wrap = |index: usize, source: MoveError| ScriptError {
        index,
        line: script.lines.get(index).copied().unwrap_or(0),
        mv: script.moves[index.min(script.moves.len().saturating_sub(1))],
        source,
    };
    let start_err = |source: MoveError| ScriptError {
        index: 0,
        line: 0,
        mv: script
            .moves
            .first()
            .copied()
            .unwrap_or(GridMove::Destabilize { column: 0 }),
        source,
    };

    let pair = match pair {
        Some((k, j)) => {
            g.check_component(k).map_err(|e| start_err(e.into()))?;
            g.check_component(j).map_err(|e| start_err(e.into()))?;
            if k == j {
                return Err(start_err(crate::GridError::SameComponent(k.0).into()));
            }
            Some((k, j))
        }
        None if g.component_count() >= 2 => Some((ComponentId(0), ComponentId(1))),
        None => None,
    };

    let mut tracker = Tracker {
        reps: g
            .component_ids()
            .map(|c| g.component_columns(c).expect("valid")[0])
            .collect(),
    };
    let (first, mut cusps) = snapshot(g, &tracker, pair, orientation, None, None).map_err(start_err)?;
    let mut trace = vec![first];
    let mut grid = g.clone();

    for (index, mv) in script.moves.iter().enumerate() {
        // lstab names a component of the starting diagram
        let resolved = match *mv {
            GridMove::LegendrianStab { component, sign } => {
                let current = tracker
                    .reps
                    .get(component.0)
                    .map(|&c| grid.component_of_column(c))
                    .ok_or_else(|| wrap(index, crate::GridError::UnknownComponent(component.0).into()))?;
                GridMove::LegendrianStab {
                    component: current,
                    sign,
                }
            }
            other => other,
        };
        let (next, map) = apply_move(&grid, &resolved).map_err(|e| wrap(index, e))?;
        tracker.advance(&grid, &map);
        grid = next;
        let (step, c) =
            snapshot(&grid, &tracker, pair, orientation, Some(*mv), Some(&cusps)).map_err(|e| wrap(index, e))?;
        cusps = c;
        trace.push(step);
    }
    Ok(ScriptRun { grid, trace })
}
