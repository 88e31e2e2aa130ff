use std::path::PathBuf;

use serde_json::json;

use super::config::RunConfig;
use super::output::{file_label, Cell, Table};
use super::CliError;
use crate::parallel::{map_ordered, ExecutionMode};
use crate::potentials::{Symmetry, SymmetryLimit};
use crate::spectra::{doublet_partner, scan_v0_c, solve_primary, sweep_delta, QuantumNumbers, SearchConfig};
use crate::wavefunctions::{count_nodes, solve_spinor, SpinorContext};

/// Files written and notes for the terminal. `solver_failed` maps to exit code 2.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub notes: Vec<String>,
    pub solver_failed: bool,
}

fn qn(n: u32, kappa: i32) -> QuantumNumbers {
    QuantumNumbers::new(n, kappa).expect("nonzero kappa")
}

/// Left-hand members of the benchmark table rows.
pub fn default_table_states(kind: Symmetry) -> Vec<QuantumNumbers> {
    let (ns, kappas): (Vec<u32>, Vec<i32>) = match kind {
        Symmetry::Spin => ((0..4).collect(), (-5..=-2).rev().collect()),
        Symmetry::Pseudospin => ((1..5).collect(), (-4..=-1).rev().collect()),
    };
    ns.iter().flat_map(|&n| kappas.iter().map(move |&k| qn(n, k))).collect()
}

pub fn default_sweep_states() -> Vec<QuantumNumbers> {
    (0..2).flat_map(|n| (1..=4).map(move |k| qn(n, k))).collect()
}

pub fn default_scan_states(kind: Symmetry) -> Vec<QuantumNumbers> {
    match kind {
        Symmetry::Spin => vec![qn(0, -2), qn(0, 1)],
        Symmetry::Pseudospin => vec![qn(0, -1), qn(0, 2)],
    }
}

pub fn default_wavefunction_states(kind: Symmetry) -> Vec<QuantumNumbers> {
    let kappa = match kind {
        Symmetry::Spin => 1,
        Symmetry::Pseudospin => 2,
    };
    (0..3).map(|n| qn(n, kappa)).collect()
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn base_meta(table: Table, command: &str, cfg: &RunConfig) -> Table {
    table
        .meta("command", json!(command))
        .meta("symmetry", json!(cfg.symmetry.kind.name()))
        .meta("symmetry_constant", json!(cfg.symmetry.constant))
        .meta(
            "parameters",
            json!({"V0": cfg.params.v0, "A": cfg.params.a, "B": cfg.params.b, "delta": cfg.params.delta, "H": cfg.params.h, "M": cfg.params.mass}),
        )
}

pub fn cmd_table(cfg: &RunConfig, mode: ExecutionMode) -> Result<Outcome, CliError> {
    let kind = cfg.symmetry.kind;
    let rows = cfg.states.clone().unwrap_or_else(|| default_table_states(kind));
    let h_alt = if cfg.params.h != 0.0 { cfg.params.h } else { 5.0 };
    let hs = [0.0, h_alt];
    let search = SearchConfig::default();

    let members: Vec<(QuantumNumbers, Option<QuantumNumbers>)> =
        rows.iter().map(|q| (*q, doublet_partner(q, kind).ok())).collect();
    let tasks: Vec<(QuantumNumbers, f64)> = members
        .iter()
        .flat_map(|(a, b)| [Some(*a), *b].into_iter().flatten())
        .flat_map(|q| hs.iter().map(move |&h| (q, h)))
        .collect();
    let energies = map_ordered(mode, &tasks, |&(q, h)| {
        solve_primary(&q, &cfg.symmetry, &cfg.params.with_h(h), &search)
            .ok()
            .flatten()
            .map(|r| r.energy)
    });
    let lookup = |q: QuantumNumbers, h: f64| {
        tasks
            .iter()
            .position(|&(t, th)| t == q && th == h)
            .and_then(|i| energies[i])
    };

    let l_name = match kind {
        Symmetry::Spin => "l",
        Symmetry::Pseudospin => "l_tilde",
    };
    let h_label = |h: f64| format!("E(H={h})");
    let mut table = Table::new(vec![
        l_name.into(),
        "n,kappa".into(),
        "state".into(),
        h_label(0.0),
        h_label(h_alt),
        "partner n,kappa".into(),
        "partner state".into(),
        format!("partner {}", h_label(0.0)),
        format!("partner {}", h_label(h_alt)),
    ]);
    let mut outcome = Outcome::default();
    let mut note_missing = |q: &QuantumNumbers, h: f64, v: Option<f64>| {
        if v.is_none() {
            outcome.notes.push(format!("no bound state for {} at H = {h}", q.label()));
            outcome.solver_failed = true;
        }
        Cell::opt(v)
    };
    for (q, partner) in &members {
        let l = match kind {
            Symmetry::Spin => q.l(),
            Symmetry::Pseudospin => q.l_tilde(),
        };
        let mut row = vec![
            Cell::Int(l as i64),
            Cell::Text(format!("{},{}", q.n, q.kappa)),
            Cell::Text(q.label()),
            note_missing(q, hs[0], lookup(*q, hs[0])),
            note_missing(q, hs[1], lookup(*q, hs[1])),
        ];
        match partner {
            Some(p) => {
                row.push(Cell::Text(format!("{},{}", p.n, p.kappa)));
                row.push(Cell::Text(p.label()));
                row.push(note_missing(p, hs[0], lookup(*p, hs[0])));
                row.push(note_missing(p, hs[1], lookup(*p, hs[1])));
            }
            None => row.extend([Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing]),
        }
        table.rows.push(row);
    }
    let table = base_meta(table, "table", cfg);
    let stem = format!("table_{}", kind.name());
    outcome.files.push(table.write(&cfg.out_dir, &stem, cfg.format).map_err(io_err)?);
    Ok(outcome)
}

pub fn cmd_sweep(cfg: &RunConfig, mode: ExecutionMode) -> Result<Outcome, CliError> {
    let states = cfg.states.clone().unwrap_or_else(default_sweep_states);
    let deltas = cfg.delta_grid.points();
    let sweep = sweep_delta(&states, &cfg.symmetry, &cfg.params, &deltas, &SearchConfig::default(), mode);
    let mut columns = vec!["delta".to_string()];
    columns.extend(states.iter().map(|q| q.label()));
    let mut table = Table::new(columns);
    for (i, d) in sweep.deltas.iter().enumerate() {
        let mut row = vec![Cell::Num(*d)];
        row.extend(sweep.values[i].iter().map(|v| Cell::opt(*v)));
        table.rows.push(row);
    }
    let table = base_meta(table, "sweep", cfg);
    let stem = format!("sweep_{}", cfg.symmetry.kind.name());
    let mut outcome = Outcome::default();
    outcome.files.push(table.write(&cfg.out_dir, &stem, cfg.format).map_err(io_err)?);
    Ok(outcome)
}

pub fn cmd_scan(cfg: &RunConfig, mode: ExecutionMode) -> Result<Outcome, CliError> {
    let kind = cfg.symmetry.kind;
    let states = cfg.states.clone().unwrap_or_else(|| default_scan_states(kind));
    let v0 = cfg.v0_grid.points();
    let c = cfg.c_grid.points();
    let mut outcome = Outcome::default();
    for q in &states {
        let m = scan_v0_c(q, kind, &cfg.params, &v0, &c, &SearchConfig::default(), mode);
        let mut columns = vec!["V0".to_string()];
        columns.extend(m.c.iter().map(|c| format!("C={}", super::output::format_num(*c))));
        let mut table = Table::new(columns);
        for (i, v) in m.v0.iter().enumerate() {
            let mut row = vec![Cell::Num(*v)];
            row.extend(m.values[i].iter().map(|e| Cell::opt(*e)));
            table.rows.push(row);
        }
        let table = base_meta(table, "scan", cfg).meta("state", json!(q.label()));
        let stem = format!("scan_{}_{}", kind.name(), file_label(&q.label()));
        outcome.files.push(table.write(&cfg.out_dir, &stem, cfg.format).map_err(io_err)?);
    }
    Ok(outcome)
}

pub fn cmd_wavefunction(cfg: &RunConfig, mode: ExecutionMode) -> Result<Outcome, CliError> {
    let kind = cfg.symmetry.kind;
    let states = cfg.states.clone().unwrap_or_else(|| default_wavefunction_states(kind));
    let sym: SymmetryLimit = cfg.symmetry;
    let solved = map_ordered(mode, &states, |q| {
        let root = solve_primary(q, &sym, &cfg.params, &SearchConfig::default())?;
        let Some(root) = root else {
            return Ok(None);
        };
        let ctx = SpinorContext::from_root(&root)?;
        Ok::<_, crate::SolverError>(Some((solve_spinor(&root)?, ctx.quadrature_norm()?)))
    });
    let mut outcome = Outcome::default();
    for (q, res) in states.iter().zip(solved) {
        match res {
            Ok(Some((sol, norm))) => {
                let mut table = Table::new(vec!["r".into(), "F".into(), "G".into()]);
                for s in &sol.samples {
                    table.rows.push(vec![Cell::Num(s.r), Cell::Num(s.f), Cell::Num(s.g)]);
                }
                let nodes = count_nodes(&sol.primary_values());
                let table = base_meta(table, "wavefunction", cfg)
                    .meta("state", json!(q.label()))
                    .meta("energy", json!(sol.energy))
                    .meta("norm", json!(norm))
                    .meta("nodes", json!(nodes));
                let stem = format!("wavefunction_{}_{}", kind.name(), file_label(&q.label()));
                outcome.files.push(table.write(&cfg.out_dir, &stem, cfg.format).map_err(io_err)?);
                outcome
                    .notes
                    .push(format!("{}: E = {:.8}, norm = {:.8}, nodes = {}", q.label(), sol.energy, norm, nodes));
            }
            Ok(None) => {
                outcome.notes.push(format!("no bound state for {}", q.label()));
                outcome.solver_failed = true;
            }
            Err(e) => {
                outcome.notes.push(format!("{}: {e}", q.label()));
                outcome.solver_failed = true;
            }
        }
    }
    Ok(outcome)
}
