//! Command-line entry point: verification suites, cell tables, system
//! emission and field checking, with machine-readable output for CI.

use crate::cells::{alpha, CellTable};
use crate::error::{Error, Result};
use crate::fields::PolyField;
use crate::operators::{monogenicity_report, OpName, OperatorSet, SplitSign};
use crate::report::Report;
use crate::systems::{emit_system, FirstOrderSystem, SystemOp};
use crate::verify::{run_battery, VerifyConfig};
use crate::witt::WittFrame;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qclif",
    about = "Exact spinor-space machinery for quaternionic Clifford analysis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Table,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact verification battery; exit 0 iff everything passes.
    Verify(VerifyArgs),
    /// Print the symplectic-cell triangle with dimensions and bases.
    Cells(CellsArgs),
    /// Emit the first-order system of an operator on one cell.
    System(SystemArgs),
    /// Load a field file and report its monogenicity statuses.
    Check(CheckArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Quaternionic dimension parameter (R^{4p}).
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Degree bound for the polynomial-field sweeps and kernels.
    #[arg(long, default_value_t = 2)]
    degree: u32,
    /// Seed for the randomized sweeps (fixed default keeps runs bit-identical).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run only the Witt-identity suite.
    #[arg(long)]
    witt: bool,
    /// Pair count for --witt.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Run only the structure/double-cover suite.
    #[arg(long)]
    structures: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CellsArgs {
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    /// Operator: dz, dzd, dzj, dzdj, or all.
    #[arg(long, default_value = "all")]
    op: String,
    /// Emit the ± split systems instead of the full ones.
    #[arg(long)]
    split: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Path to a JSON field file.
    path: std::path::PathBuf,
    /// Residuals to report: all, euclid, or a comma list of dz,dzd,dzj,dzdj.
    #[arg(long, default_value = "all")]
    ops: String,
}

pub fn run_main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Verify(args) => cmd_verify(args),
        Command::Cells(args) => cmd_cells(args),
        Command::System(args) => cmd_system(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let config = VerifyConfig {
        p: args.p,
        degree: args.degree,
        seed: args.seed,
        witt_only: args.witt.then_some(args.n),
        structures_only: args.structures,
    };
    let suites = run_battery(&config)?;
    let all_passed = suites.iter().all(Report::passed);
    match args.format {
        Format::Json => {
            let doc = json!({
                "passed": all_passed,
                "p": args.p,
                "degree": args.degree,
                "seed": args.seed,
                "suites": suites,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        _ => {
            for suite in &suites {
                print!("{suite}");
            }
            let total: usize = suites.iter().map(|s| s.checks.len()).sum();
            println!(
                "{}: {} suites, {} checks",
                if all_passed { "PASS" } else { "FAIL" },
                suites.len(),
                total
            );
            if !all_passed {
                // machine-readable failure manifest
                let failures: Vec<_> = suites
                    .iter()
                    .flat_map(|s| {
                        s.failures().map(move |c| {
                            json!({"suite": s.name, "check": c.name, "detail": c.detail})
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "failures": failures }))
                        .expect("serializable")
                );
            }
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_cells(args: CellsArgs) -> Result<i32> {
    if args.p == 0 {
        return Err(Error::Parse("p must be >= 1".into()));
    }
    let frame = WittFrame::build(2 * args.p)?;
    let table = CellTable::build(&frame)?;
    let p = args.p;
    match args.format {
        Format::Json => {
            let cells: Vec<_> = table
                .cells()
                .map(|(&(r, s), cell)| {
                    json!({
                        "r": r,
                        "s": s,
                        "dim": cell.dim(),
                        "basis": cell.vectors().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut alphas = Vec::new();
            for r in 0..=p {
                for k in 0..p.saturating_sub(r) {
                    alphas.push(json!({"r": r, "k": k, "value": alpha(p, r, k).to_string()}));
                }
            }
            let doc = json!({"p": p, "cells": cells, "alphas": alphas});
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Latex => {
            println!("% symplectic cells of spinor space, p = {p}");
            println!("\\begin{{description}}");
            for (&(r, s), cell) in table.cells() {
                println!(
                    "\\item[$\\mathbb{{S}}^{{{r}}}_{{{s}}}$] dimension {}: ${}$",
                    cell.dim(),
                    cell.vectors()
                        .iter()
                        .map(|v| format!("\\; {v}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            println!("\\end{{description}}");
        }
        _ => {
            println!("symplectic cells for p = {p} (spinor dimension {})", 1 << (2 * p));
            for s in 0..=p {
                let row: Vec<String> = table
                    .cells()
                    .filter(|((_, cs), _)| *cs == s)
                    .map(|(&(r, _), cell)| format!("S^{r}_{s} (dim {})", cell.dim()))
                    .collect();
                println!("  row s={s}: {}", row.join("  "));
            }
            for (&(r, s), cell) in table.cells() {
                println!("S^{r}_{s}:");
                for v in cell.vectors() {
                    println!("    {v}");
                }
            }
            let alphas: Vec<String> = (0..=p)
                .flat_map(|r| {
                    (0..p.saturating_sub(r)).map(move |k| {
                        format!("alpha_{r}^{k} = {}", alpha(p, r, k))
                    })
                })
                .collect();
            println!("ladder scalars: {}", alphas.join(", "));
        }
    }
    Ok(0)
}

fn parse_ops(text: &str) -> Result<Vec<OpName>> {
    match text {
        "all" => Ok(OpName::HERMITIAN.to_vec()),
        "euclid" => Ok(OpName::EUCLIDEAN.to_vec()),
        csv => csv.split(',').map(|s| OpName::parse(s.trim())).collect(),
    }
}

fn system_json(system: &FirstOrderSystem, table: &CellTable) -> serde_json::Value {
    let cell = table.cell(system.r, system.s).expect("emitted from a valid cell");
    json!({
        "p": system.p,
        "r": system.r,
        "s": system.s,
        "op": system.op.name.to_string(),
        "split": system.op.split.map(|s| s.to_string()),
        "unknowns": cell
            .vectors()
            .iter()
            .enumerate()
            .map(|(i, v)| json!({"name": format!("phi_{}", i + 1), "basis": v.to_string()}))
            .collect::<Vec<_>>(),
        "equations": system.equations().iter().map(|e| e.text()).collect::<Vec<_>>(),
    })
}

fn cmd_system(args: SystemArgs) -> Result<i32> {
    if args.p == 0 {
        return Err(Error::Parse("p must be >= 1".into()));
    }
    let frame = WittFrame::build(2 * args.p)?;
    let table = CellTable::build(&frame)?;
    let set = OperatorSet::build(args.p)?;
    let names: Vec<OpName> = parse_ops(&args.op)?
        .into_iter()
        .filter(|n| n.raises().is_some())
        .collect();
    if names.is_empty() {
        return Err(Error::Parse(
            "system emission needs Hermitian operators (dz, dzd, dzj, dzdj)".into(),
        ));
    }
    let mut ops: Vec<SystemOp> = Vec::new();
    for name in names {
        if args.split {
            ops.push(SystemOp::split(name, SplitSign::Plus));
            ops.push(SystemOp::split(name, SplitSign::Minus));
        } else {
            ops.push(SystemOp::full(name));
        }
    }
    let systems: Vec<FirstOrderSystem> = ops
        .into_iter()
        .map(|op| emit_system(&table, &set, op, args.r, args.s))
        .collect::<Result<_>>()?;
    match args.format {
        Format::Json => {
            let docs: Vec<_> = systems.iter().map(|s| system_json(s, &table)).collect();
            println!("{}", serde_json::to_string_pretty(&docs).expect("serializable"));
        }
        Format::Latex => {
            for system in &systems {
                println!("% {} on S^{}_{}", system.op, system.r, system.s);
                println!("\\begin{{align*}}");
                for eq in system.equations() {
                    println!("  {} \\\\", eq.latex());
                }
                println!("\\end{{align*}}");
            }
        }
        _ => {
            for system in &systems {
                println!(
                    "{} on S^{}_{} ({} unknowns, {} equations):",
                    system.op,
                    system.r,
                    system.s,
                    system.unknowns,
                    system.equations().len()
                );
                for eq in system.equations() {
                    println!("  {}", eq.text());
                }
            }
        }
    }
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.path)?;
    let field = PolyField::from_json(&text)?;
    let frame = WittFrame::build(2 * field.p())?;
    let basis = crate::witt::SpinorBasis::build(&frame)?;
    field.check_in_spinor(&basis)?;
    let report = monogenicity_report(&field)?;
    let requested = parse_ops(&args.ops)?;
    let residuals: serde_json::Map<String, serde_json::Value> = report
        .per_op_residual_is_zero
        .iter()
        .filter(|(name, _)| requested.iter().any(|n| n.to_string() == **name))
        .map(|(name, flag)| (name.clone(), json!(flag)))
        .collect();
    let doc = json!({
        "monogenic": report.monogenic,
        "hermitian_I": report.hermitian_i,
        "hermitian_J": report.hermitian_j,
        "q_monogenic": report.q_monogenic,
        "per_op_residual_is_zero": residuals,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(0)
}
