//! Subcommand bodies. Each builds its tables in memory; files are written at the end.

use std::path::{Path, PathBuf};

use super::config::{Command, OutputFormat, RunConfig, RunMode};
use super::format::{fmt_sig6, opt, write_atomic, Table};
use super::verify::{duopoly_discrepancies, proposition_context, run_verify};
use crate::analysis::{check_proposition, duopoly_sweep, ge_against, swe_against, swe_players_against, sweep, SweepResult};
use crate::error::ModelError;
use crate::model_core::{ContractKind, ContractSpec, Equilibrium};
use crate::solver::{duopoly_fixed_point, duopoly_joint_foc, duopoly_solve, optimal_tax, solve_contract};

/// Stable process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitCode {
    Success = 0,
    Config = 1,
    Infeasible = 2,
    Internal = 3,
}

impl ExitCode {
    pub fn of(e: &ModelError) -> Self {
        if e.is_infeasibility() {
            ExitCode::Infeasible
        } else {
            ExitCode::Internal
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: ExitCode,
    pub files: Vec<PathBuf>,
    /// Lines for stderr.
    pub messages: Vec<String>,
    /// Text for stdout.
    pub report: String,
}

struct Log {
    messages: Vec<String>,
    code: ExitCode,
}

impl Log {
    fn fail(&mut self, e: &ModelError, what: &str) {
        self.messages.push(format!("{what}: {e}"));
        self.code = self.code.max(ExitCode::of(e));
    }
}

/// Named outputs collected before anything touches the disk.
#[derive(Default)]
struct Outputs {
    tables: Vec<(String, Table)>,
    documents: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    fn table(&mut self, name: impl Into<String>, t: Table) {
        self.tables.push((name.into(), t));
    }

    fn write(self, dir: &Path, format: OutputFormat) -> std::io::Result<Vec<PathBuf>> {
        let mut files = vec![];
        for (name, t) in self.tables {
            let (path, bytes) = match format {
                OutputFormat::Csv => (dir.join(format!("{name}.csv")), t.to_csv()),
                OutputFormat::Json => {
                    let mut b = serde_json::to_vec_pretty(&t.to_json()).expect("json");
                    b.push(b'\n');
                    (dir.join(format!("{name}.json")), b)
                }
            };
            write_atomic(&path, &bytes)?;
            files.push(path);
        }
        for (name, bytes) in self.documents {
            let path = dir.join(name);
            write_atomic(&path, &bytes)?;
            files.push(path);
        }
        Ok(files)
    }
}

/// Runs `cmd` with `cfg`, writing into `dir`.
pub fn execute(cmd: Command, cfg: &RunConfig, filter: Option<&str>, dir: &Path, format: OutputFormat) -> Outcome {
    let mode = match cfg.for_command(cmd, filter) {
        Ok(m) => m,
        Err(e) => return Outcome { code: ExitCode::Config, files: vec![], messages: vec![format!("config error: {e}")], report: String::new() },
    };
    if let Err(e) = std::fs::create_dir_all(dir) {
        return Outcome {
            code: ExitCode::Config,
            files: vec![],
            messages: vec![format!("config error: output directory {}: {e}", dir.display())],
            report: String::new(),
        };
    }
    let mut out = Outputs::default();
    let mut log = Log { messages: vec![], code: ExitCode::Success };
    let mut report = String::new();
    match mode {
        RunMode::Solve { contracts } => solve(cfg, &contracts, &mut out, &mut log),
        RunMode::Sweep { contracts, param, grid, quantities } => {
            let solver = cfg.solver_config();
            for c in &contracts {
                match sweep(&cfg.params, c, param, &grid, &solver) {
                    Ok(r) => {
                        if r.gaps() > 0 {
                            log.messages.push(format!("{}: {} of {} grid points did not solve", c.kind, r.gaps(), grid.len()));
                        }
                        for &q in &quantities {
                            if r.series(q).is_empty() && r.gaps() < grid.len() {
                                continue;
                            }
                            out.table(format!("sweep_{}_{}_{}", param.name(), c.kind.name(), q.name()), sweep_table(&r, q));
                        }
                    }
                    Err(e) => log.fail(&e, c.kind.name()),
                }
            }
        }
        RunMode::Tax { contracts, theta0, grid, prop9_levels } => {
            let solver = cfg.solver_config();
            let mut summary = Table::new(["contract", "t_star", "gtr_star", "w", "p", "theta", "q", "pi_al", "u_ap", "interior"]);
            for c in &contracts {
                match optimal_tax(&cfg.params, c, theta0, &grid, &solver) {
                    Ok(opt_t) => {
                        let mut t = Table::new(["t", "w", "p", "theta", "q", "pi_al", "pi_ap", "u_ap", "gtr", "error"]);
                        for pt in &opt_t.curve {
                            match &pt.equilibrium {
                                Some(e) => t.push(vec![
                                    fmt_sig6(pt.t),
                                    opt(e.w),
                                    fmt_sig6(e.p),
                                    fmt_sig6(e.theta),
                                    fmt_sig6(e.q),
                                    opt(e.pi_al),
                                    opt(e.pi_ap),
                                    opt(e.u_ap),
                                    fmt_sig6(e.gtr),
                                    String::new(),
                                ]),
                                None => {
                                    let mut row = vec![fmt_sig6(pt.t)];
                                    row.extend(std::iter::repeat(String::new()).take(8));
                                    row.push(pt.error.clone().unwrap_or_default());
                                    t.push(row);
                                }
                            }
                        }
                        out.table(format!("tax_{}", c.kind.name()), t);
                        let e = &opt_t.equilibrium;
                        summary.push(vec![
                            c.kind.name().into(),
                            fmt_sig6(opt_t.t_star),
                            fmt_sig6(opt_t.gtr_star),
                            opt(e.w),
                            fmt_sig6(e.p),
                            fmt_sig6(e.theta),
                            fmt_sig6(e.q),
                            opt(e.pi_al),
                            opt(e.u_ap),
                            // A maximiser on the grid edge means the peak may lie outside it.
                            {
                                let edge = |x: &f64| (opt_t.t_star - x).abs() <= 1e-12 * x.abs().max(1.0);
                                let interior = !(grid.first().is_some_and(edge) || grid.last().is_some_and(edge));
                                interior.to_string()
                            },
                        ]);
                    }
                    Err(e) => log.fail(&e, c.kind.name()),
                }
            }
            out.table("tax_optimum", summary);
            let mut ctx = proposition_context(cfg);
            ctx.theta0 = theta0;
            ctx.tax_levels = prop9_levels;
            match check_proposition(9, &ctx, &solver) {
                Ok(r) => {
                    let mut t = Table::new(["claim", "observed", "verdict"]);
                    for c in &r.claims {
                        t.push(vec![c.claim.clone(), c.observed.clone(), c.verdict.label().into()]);
                    }
                    report.push_str(&format!("taxed greening ordering: {}\n", r.verdict));
                    out.table("tax_greening_order", t);
                }
                Err(e) => log.fail(&e, "greening ordering"),
            }
        }
        RunMode::Duopoly { params, kinds, sweep, .. } => {
            let solver = cfg.solver_config();
            let mut t = Table::new([
                "contract", "w", "p1", "p2", "theta1", "theta2", "q1", "q2", "pi_al1", "pi_al2", "pi_ap", "u_ap", "cs",
                "fixed_point_gap",
            ]);
            for &k in &kinds {
                let solved = duopoly_solve(&params, k, &solver).and_then(|e| {
                    let j = duopoly_joint_foc(&params, k, e.w)?;
                    let f = duopoly_fixed_point(&params, k, e.w, &solver)?;
                    let gap = (0..2)
                        .map(|i| (j.p[i] - f.p[i]).abs().max((j.theta[i] - f.theta[i]).abs()))
                        .fold(0.0, f64::max);
                    Ok((e, gap))
                });
                match solved {
                    Ok((e, gap)) => t.push(vec![
                        k.name().into(),
                        fmt_sig6(e.w),
                        fmt_sig6(e.p[0]),
                        fmt_sig6(e.p[1]),
                        fmt_sig6(e.theta[0]),
                        fmt_sig6(e.theta[1]),
                        fmt_sig6(e.q[0]),
                        fmt_sig6(e.q[1]),
                        fmt_sig6(e.pi_al[0]),
                        fmt_sig6(e.pi_al[1]),
                        fmt_sig6(e.pi_ap),
                        fmt_sig6(e.u_ap),
                        fmt_sig6(e.cs),
                        fmt_sig6(gap),
                    ]),
                    Err(e) => log.fail(&e, k.name()),
                }
            }
            out.table("duopoly_equilibria", t);
            match duopoly_discrepancies(cfg) {
                Ok(rows) => {
                    let mut d = Table::new([
                        "form", "reading", "w", "variable", "closed_form", "oracle", "rel_err", "agrees",
                    ]);
                    for r in &rows {
                        for (var, k) in [("p1", 0), ("p2", 1), ("theta1", 2), ("theta2", 3)] {
                            let pick = |p: &crate::closed_form::DuopolyPoint| if k < 2 { p.p[k] } else { p.theta[k - 2] };
                            let o = pick(&r.oracle);
                            let (cf, err, ok) = match &r.closed_form {
                                Some(c) => {
                                    let e = (pick(c) - o).abs() / o.abs().max(1.0);
                                    (fmt_sig6(pick(c)), fmt_sig6(e), e <= 1e-9)
                                }
                                None => (String::new(), String::new(), false),
                            };
                            d.push(vec![
                                r.form.clone(),
                                r.transcription.clone(),
                                fmt_sig6(r.w),
                                var.into(),
                                cf,
                                fmt_sig6(o),
                                err,
                                if ok { "yes" } else { "no" }.into(),
                            ]);
                        }
                    }
                    out.table("duopoly_discrepancy", d);
                }
                Err(e) => log.fail(&e, "duopoly closed forms"),
            }
            if let Some((param, grid)) = sweep {
                for &k in &kinds {
                    match duopoly_sweep(&params, k, param, &grid, &solver) {
                        Ok(r) => {
                            let mut t = Table::new([param.name(), "w", "p1", "p2", "theta1", "theta2", "pi_al1", "pi_al2", "u_ap"]);
                            for row in &r.rows {
                                let mut v = vec![fmt_sig6(row.value)];
                                match &row.equilibrium {
                                    Some(e) => v.extend([e.w, e.p[0], e.p[1], e.theta[0], e.theta[1], e.pi_al[0], e.pi_al[1], e.u_ap].map(fmt_sig6)),
                                    None => v.extend(std::iter::repeat(String::new()).take(8)),
                                }
                                t.push(v);
                            }
                            out.table(format!("duopoly_sweep_{}_{}", param.name(), k.name()), t);
                        }
                        Err(e) => log.fail(&e, k.name()),
                    }
                }
            }
        }
        RunMode::Verify => {
            let r = run_verify(cfg);
            report = r.to_text();
            let mut t = Table::new(["status", "group", "name", "value", "reference", "tolerance", "note"]);
            for c in &r.checks {
                t.push(vec![
                    c.status.label().into(),
                    c.group.clone(),
                    c.name.clone(),
                    fmt_sig6(c.value),
                    opt(c.reference),
                    fmt_sig6(c.tolerance),
                    c.note.clone(),
                ]);
            }
            out.table("verify", t);
            out.documents.push(("verify_report.txt".into(), report.clone().into_bytes()));
            let mut json = serde_json::to_vec_pretty(&r).expect("json");
            json.push(b'\n');
            out.documents.push(("verify_report.json".into(), json));
            if !r.ok() {
                log.messages.push(format!("verify: {} check(s) failed", r.count(super::verify::Status::Fail)));
                log.code = log.code.max(ExitCode::Internal);
            }
        }
    }
    let Log { mut messages, code } = log;
    match out.write(dir, format) {
        Ok(files) => Outcome { code, files, messages, report },
        Err(e) => {
            messages.push(format!("writing outputs: {e}"));
            Outcome { code: ExitCode::Config.max(code), files: vec![], messages, report }
        }
    }
}

fn solve(cfg: &RunConfig, contracts: &[ContractSpec], out: &mut Outputs, log: &mut Log) {
    let solver = cfg.solver_config();
    let cent = solve_contract(&cfg.params, &ContractSpec::cent(), &solver);
    let mut t = Table::new([
        "contract", "w", "p", "theta", "q", "phi", "psi", "l", "pi_al", "pi_ap", "u_ap", "channel_profit", "cs", "sw",
        "swe", "swe_players", "ge", "foc_residual",
    ]);
    for c in contracts {
        let solved: Result<Equilibrium, ModelError> =
            if c.kind == ContractKind::Cent { cent.clone() } else { solve_contract(&cfg.params, c, &solver) };
        match solved {
            Ok(e) => {
                let (swe, swp, ge) = match &cent {
                    Ok(ce) => (
                        Some(swe_against(&e, ce)),
                        Some(swe_players_against(&e, ce)),
                        ge_against(&e, ce).ok(),
                    ),
                    Err(_) => (None, None, None),
                };
                t.push(vec![
                    c.kind.name().into(),
                    opt(e.w),
                    fmt_sig6(e.p),
                    fmt_sig6(e.theta),
                    fmt_sig6(e.q),
                    opt(e.phi_star),
                    opt(e.psi),
                    opt(e.l),
                    opt(e.pi_al),
                    opt(e.pi_ap),
                    opt(e.u_ap),
                    fmt_sig6(e.channel_profit),
                    fmt_sig6(e.cs),
                    fmt_sig6(e.sw),
                    opt(swe),
                    opt(swp),
                    opt(ge),
                    opt(e.certificate.map(|k| k.foc_residual)),
                ]);
            }
            Err(e) => log.fail(&e, c.kind.name()),
        }
    }
    out.table("equilibria", t);
}

fn sweep_table(r: &SweepResult, q: crate::analysis::Quantity) -> Table {
    let mut t = Table::new([r.swept_parameter.name(), q.name()]);
    for row in &r.rows {
        t.push(vec![fmt_sig6(row.value), opt(row.equilibrium.as_ref().and_then(|e| q.of(e)))]);
    }
    t
}
