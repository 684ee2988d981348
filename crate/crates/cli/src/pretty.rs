//! Plain-text tables for `--pretty`.

use legrid_core::crossing::FramedPairState;
use legrid_core::invariants::{ComponentReport, PairReport};
use legrid_core::ledger::LedgerReport;
use legrid_core::moves::TraceStep;
use legrid_core::selftest::SelftestReport;

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

pub fn components(reports: &[ComponentReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            [r.component as i64, r.tb, r.r, r.sl_pos, r.sl_neg]
                .iter()
                .map(i64::to_string)
                .collect()
        })
        .collect();
    table(&["component", "tb", "r", "sl+", "sl-"], &rows)
}

pub fn pairs(reports: &[PairReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                format!("{},{}", r.pair[0], r.pair[1]),
                r.tb_rel.to_string(),
                r.r_rel.to_string(),
                r.sl_rel.to_string(),
            ]
        })
        .collect();
    table(&["pair", "tb_rel", "r_rel", "sl_rel"], &rows)
}

pub fn trace(steps: &[TraceStep]) -> String {
    let rows: Vec<Vec<String>> = steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let invs = s
                .invariants
                .iter()
                .map(|c| format!("({},{})", c.tb, c.r))
                .collect::<Vec<_>>()
                .join(" ");
            let rel = s
                .relative
                .map(|r| format!("{:?}", r.triple()))
                .unwrap_or_else(|| "-".into());
            vec![
                i.to_string(),
                s.mv.map(|m| m.to_string()).unwrap_or_else(|| "start".into()),
                invs,
                rel,
                if s.cusps_changed { "yes".into() } else { "".into() },
            ]
        })
        .collect();
    table(
        &["step", "move", "(tb,r) per component", "relative", "cusps changed"],
        &rows,
    )
}

pub fn ledger(r: &LedgerReport) -> String {
    table(
        &["tb_diff", "rot_diff", "sl_diff", "ambiguity"],
        &[vec![
            r.tb_diff.to_string(),
            r.rot_diff.to_string(),
            r.sl_diff.to_string(),
            r.ambiguity.to_string(),
        ]],
    )
}

pub fn states(trace: &[FramedPairState]) -> String {
    let rows: Vec<Vec<String>> = trace
        .iter()
        .enumerate()
        .map(|(i, s)| {
            std::iter::once(i as i64)
                .chain([
                    s.tw_k,
                    s.tw_j,
                    s.w_k,
                    s.w_j,
                    s.s_k,
                    s.s_j,
                    s.tb_rel(),
                    s.r_rel(),
                    s.sl_rel(),
                ])
                .map(|v| v.to_string())
                .collect()
        })
        .collect();
    table(
        &[
            "event", "tw_K", "tw_J", "w_K", "w_J", "sK", "sJ", "tb_rel", "r_rel", "sl_rel",
        ],
        &rows,
    )
}

pub fn selftest(r: &SelftestReport) -> String {
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.cases.to_string(),
                c.failures.to_string(),
                if c.pass { "pass".into() } else { "FAIL".into() },
            ]
        })
        .collect();
    let mut out = format!("seed {}, {} cases per check\n", r.seed, r.cases);
    out.push_str(&table(&["check", "cases", "failures", "result"], &rows));
    for c in r.checks.iter().filter_map(|c| c.first_failure.as_ref().map(|f| (c, f))) {
        out.push_str(&format!("\n{}: {}", c.0.name, c.1));
    }
    out
}
