use std::fs;
use std::path::Path;

use legrid_core::crossing::{parse_event_script, run_trace, FramedPairState};
use legrid_core::grid::GridParseError;
use legrid_core::invariants::{classical_all, ComponentReport, PairReport};
use legrid_core::ledger::{parse_model, query, ModelParseError};
use legrid_core::moves::{apply_script, parse_move_script};
use legrid_core::selftest::run_selftest;
use legrid_core::{parse_grid, relative_invariants, ComponentId, GridDiagram, OrientationFlag};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::pretty;
use crate::{Command, PairArgs};

pub fn run(command: Command, pretty: bool) -> Result<String, CliError> {
    match command {
        Command::Inv { grid, component } => inv(&grid, component, pretty),
        Command::Rel { grid, pair } => rel(&grid, &pair, pretty),
        Command::Moves { grid, script, pair } => moves(&grid, &script, &pair, pretty),
        Command::Ledger { model, from, to } => ledger(&model, from.map(|o| o.0), to.map(|o| o.0), pretty),
        Command::CrossSim { events, grid, pair } => cross_sim(&events, grid.as_deref(), &pair, pretty),
        Command::Selftest { seed, cases } => selftest(seed, cases, pretty),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_grid(path: &Path) -> Result<GridDiagram, CliError> {
    parse_grid(&read(path)?).map_err(|e| {
        let (line, column) = e.location();
        let kind = match e {
            GridParseError::Syntax { .. } => "parse",
            GridParseError::Invalid { .. } => "invalid-grid",
        };
        CliError::domain(kind, e.to_string()).at(path, line, Some(column))
    })
}

fn domain(kind: &str) -> impl Fn(&dyn std::fmt::Display) -> CliError + '_ {
    move |e| CliError::domain(kind, e.to_string())
}

fn to_json(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn orientation(pair: &PairArgs) -> OrientationFlag {
    OrientationFlag::with_surface(pair.orient)
}

fn selected_pair(pair: &PairArgs) -> (ComponentId, ComponentId) {
    let (k, j) = pair.pair.unwrap_or((0, 1));
    (ComponentId(k), ComponentId(j))
}

fn inv(path: &Path, component: Option<usize>, pretty: bool) -> Result<String, CliError> {
    let g = load_grid(path)?;
    let all = classical_all(&g).map_err(|e| domain("invariant")(&e))?;
    let ids: Vec<ComponentId> = match component {
        Some(c) => {
            g.check_component(ComponentId(c)).map_err(|e| domain("component")(&e))?;
            vec![ComponentId(c)]
        }
        None => g.component_ids().collect(),
    };
    let reports: Vec<ComponentReport> = ids.iter().map(|&c| ComponentReport::new(c, &all[c.0])).collect();
    Ok(if pretty {
        pretty::components(&reports)
    } else {
        to_json(&reports).to_string()
    })
}

fn rel(path: &Path, pair: &PairArgs, pretty: bool) -> Result<String, CliError> {
    let g = load_grid(path)?;
    let (k, j) = selected_pair(pair);
    let r = relative_invariants(&g, k, j, orientation(pair)).map_err(|e| domain("component")(&e))?;
    let report = PairReport::from(&r);
    Ok(if pretty {
        pretty::pairs(std::slice::from_ref(&report))
    } else {
        to_json(&report).to_string()
    })
}

fn moves(grid: &Path, script: &Path, pair: &PairArgs, pretty: bool) -> Result<String, CliError> {
    let g = load_grid(grid)?;
    let src = read(script)?;
    let s =
        parse_move_script(&src).map_err(|e| CliError::domain("parse", e.message.clone()).at(script, e.line, None))?;
    let flag = orientation(pair);
    let run = apply_script(&g, &s, pair.pair.map(|_| selected_pair(pair)), flag).map_err(|e| {
        CliError::domain("move", e.to_string())
            .at(script, e.line, None)
            .with("step", json!(e.index))
            .with("move", json!(e.mv.to_string()))
    })?;

    let steps: Vec<Value> = run
        .trace
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let components: Vec<ComponentReport> = step
                .invariants
                .iter()
                .enumerate()
                .map(|(c, inv)| ComponentReport::new(ComponentId(c), inv))
                .collect();
            json!({
                "step": i,
                "move": step.mv.map(|m| m.to_string()),
                "components": to_json(&components),
                "relative": step.relative.as_ref().map(|r| to_json(&PairReport::from(r))),
                "cusps_changed": step.cusps_changed,
            })
        })
        .collect();
    let final_grid: Value = serde_json::from_str(&run.grid.to_json()).expect("grid JSON");
    Ok(if pretty {
        pretty::trace(&run.trace)
    } else {
        json!({ "trace": steps, "grid": final_grid }).to_string()
    })
}

fn ledger(path: &Path, from: Option<Vec<i64>>, to: Option<Vec<i64>>, pretty: bool) -> Result<String, CliError> {
    let m = parse_model(&read(path)?).map_err(|e| match e {
        ModelParseError::Syntax { line, column, .. } => {
            CliError::domain("parse", e.to_string()).at(path, line, Some(column))
        }
        ModelParseError::Invalid(ref inner) => domain("ledger")(inner),
    })?;
    let zeros = vec![0; m.rank()];
    let s1 = m
        .surface("F", from.unwrap_or_else(|| zeros.clone()))
        .map_err(|e| domain("ledger")(&e))?;
    let s2 = m.surface("F", to.unwrap_or(zeros)).map_err(|e| domain("ledger")(&e))?;
    let report = query(&m, &s1, &s2).map_err(|e| domain("ledger")(&e))?;
    Ok(if pretty {
        pretty::ledger(&report)
    } else {
        to_json(&report).to_string()
    })
}

fn cross_sim(events: &Path, grid: Option<&Path>, pair: &PairArgs, pretty: bool) -> Result<String, CliError> {
    let src = read(events)?;
    let evs =
        parse_event_script(&src).map_err(|e| CliError::domain("parse", e.message.clone()).at(events, e.line, None))?;
    let s0 = match grid {
        Some(path) => {
            let g = load_grid(path)?;
            let (k, j) = selected_pair(pair);
            FramedPairState::from_grid(&g, k, j, orientation(pair)).map_err(|e| domain("component")(&e))?
        }
        None if pair.pair.is_some() => return Err(CliError::usage("--pair needs --grid")),
        None => FramedPairState::default(),
    };
    let trace = run_trace(s0, &evs).map_err(|e| domain("crossing")(&e).with("event", json!(e.index)))?;
    Ok(if pretty {
        pretty::states(&trace)
    } else {
        to_json(&trace).to_string()
    })
}

fn selftest(seed: u64, cases: usize, pretty: bool) -> Result<String, CliError> {
    let report = run_selftest(seed, cases);
    let out = if pretty {
        pretty::selftest(&report)
    } else {
        to_json(&report).to_string()
    };
    if report.pass {
        return Ok(out);
    }
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    let mut e = CliError::domain("selftest", format!("failed checks: {}", failed.join(", ")));
    e.stdout = Some(out);
    Err(e)
}
