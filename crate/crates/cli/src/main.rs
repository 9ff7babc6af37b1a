//! `otto` — a command-line workbench for quasi-static spin Otto engines.
//!
//! Subcommands: `cycle` (one full report), `sweep` (CSV over a coupling or
//! hot-temperature grid), `critical` (closed-form and bisected coupling
//! thresholds), `majorize` (tail margins), `spectrum` (level table, with an
//! optional diagonalization cross-check), and `figure` (built-in datasets).
//!
//! Exit codes: 0 success, 1 input error, 2 valid parameters that do not
//! operate as an engine (or a failed `spectrum --verify`).

mod config;
mod figures;
mod run;

use clap::{Args, Parser, Subcommand, ValueEnum};
use figures::FigureName;
use otto_core::coupled::{
    critical_coupling_bisect, critical_coupling_closed_form, phi, BisectPredicate,
    ClosedFormVariant, CriticalKind,
};
use otto_core::majorize::majorises;
use otto_core::spectra::{
    coupled_spectrum, hamiltonian_matrix, single_spin_spectrum, single_zeeman_matrix,
};
use otto_core::verify::diagonalize;
use otto_core::{canonical_distribution, Medium};
use run::{csv_row, evaluate, header, json_row, sig12, Setup};
use serde_json::json;
use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "otto",
    version,
    about = "Quasi-static spin Otto engines: cycles, sweeps, majorisation, critical couplings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one cycle and print every derived quantity
    Cycle(ParamArgs),
    /// Emit one CSV row per grid point over J (or over T1 at fixed T2/T1)
    Sweep(SweepArgs),
    /// Critical couplings: Phi, closed forms (both variants), bisection roots
    Critical(ParamArgs),
    /// Majorisation margins between the hot and cold ensembles
    Majorize(ParamArgs),
    /// Print the level table; --verify cross-checks against diagonalization
    Spectrum(SpectrumArgs),
    /// Write a built-in figure dataset as CSV (optionally with a plot script)
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ParamArgs {
    /// Flat `key = value` config file; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Twice the spin magnitude (1 = spin-1/2, 2 = spin-1, ...)
    #[arg(long = "s")]
    twice_s: Option<u32>,
    /// Work with the coupled (1/2, s) medium instead of the lone spin
    #[arg(long)]
    coupled: bool,
    /// Hot-isochore field
    #[arg(long = "B1")]
    b1: Option<f64>,
    /// Cold-isochore field
    #[arg(long = "B2")]
    b2: Option<f64>,
    /// Hot reservoir temperature
    #[arg(long = "T1")]
    t1: Option<f64>,
    /// Cold reservoir temperature
    #[arg(long = "T2")]
    t2: Option<f64>,
    /// Exchange coupling (coupled medium only)
    #[arg(long = "J")]
    j: Option<f64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Majorisation margin tolerance / bisection tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "J-from")]
    j_from: Option<f64>,
    #[arg(long = "J-to")]
    j_to: Option<f64>,
    #[arg(long = "J-steps")]
    j_steps: Option<usize>,
    /// Sweep the hot temperature instead, holding T2/T1 fixed
    #[arg(long = "T1-from")]
    t1_from: Option<f64>,
    #[arg(long = "T1-to")]
    t1_to: Option<f64>,
    #[arg(long = "T1-steps")]
    t1_steps: Option<usize>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Cross-check the analytic levels against the diagonalization oracle
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct FigureArgs {
    /// Which dataset to write
    #[arg(value_enum)]
    name: FigureName,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write a gnuplot script next to the CSV
    #[arg(long)]
    plot_script: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Cycle(args) => cmd_cycle(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Critical(args) => cmd_critical(args),
        Command::Majorize(args) => cmd_majorize(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Figure(args) => cmd_figure(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

/// Parameters resolved from flags + config, before medium-specific checks.
struct Resolved {
    setup: Setup,
    j: f64,
    out: Option<PathBuf>,
    format: Format,
    config: HashMap<String, String>,
}

fn resolve(args: &ParamArgs) -> Result<Resolved, String> {
    let file = match &args.config {
        Some(path) => config::load(path)?,
        None => HashMap::new(),
    };
    let twice_s = config::merge_u32(args.twice_s, &file, "s")?
        .ok_or("missing --s (twice the spin magnitude)")?;
    let coupled = config::merge_bool(args.coupled, &file, "coupled")?;
    let b1 = config::merge_f64(args.b1, &file, "B1")?.ok_or("missing --B1")?;
    let b2 = config::merge_f64(args.b2, &file, "B2")?.ok_or("missing --B2")?;
    let t1 = config::merge_f64(args.t1, &file, "T1")?.ok_or("missing --T1")?;
    let t2 = config::merge_f64(args.t2, &file, "T2")?.ok_or("missing --T2")?;
    let j = config::merge_f64(args.j, &file, "J")?.unwrap_or(0.0);
    let tol = config::merge_f64(args.tol, &file, "tol")?;
    let medium = if coupled { Medium::Coupled } else { Medium::Single };
    let setup = Setup::new(medium, twice_s, b1, b2, t1, t2, tol)?;
    setup.check_coupling(j)?;
    Ok(Resolved {
        setup,
        j,
        out: args.out.clone(),
        format: args.format,
        config: file,
    })
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_cycle(args: ParamArgs) -> Result<u8, String> {
    let r = resolve(&args)?;
    let row = evaluate(&r.setup, r.j, r.setup.t1, r.setup.t2)?;
    let content = match r.format {
        Format::Csv => format!("{}\n{}\n", header(r.setup.medium), csv_row(r.setup.medium, row.j, &row)),
        Format::Json => {
            let mut v = json_row(&r.setup, &row);
            v["config"] = json!({
                "medium": if r.setup.medium == Medium::Coupled { "coupled" } else { "single" },
                "twice_s": r.setup.spin.twice_s(),
                "B1": r.setup.b1, "B2": r.setup.b2,
                "T1": r.setup.t1, "T2": r.setup.t2,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
    };
    write_output(&r.out, &content)?;
    Ok(run::exit_code_for(row.cycle.mode))
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, String> {
    let r = resolve(&args.params)?;
    let file = &r.config;
    let j_from = config::merge_f64(args.j_from, file, "J-from")?;
    let j_to = config::merge_f64(args.j_to, file, "J-to")?;
    let j_steps = config::merge_usize(args.j_steps, file, "J-steps")?;
    let t1_from = config::merge_f64(args.t1_from, file, "T1-from")?;
    let t1_to = config::merge_f64(args.t1_to, file, "T1-to")?;
    let t1_steps = config::merge_usize(args.t1_steps, file, "T1-steps")?;

    let sweep_j = j_from.is_some() || j_to.is_some() || j_steps.is_some();
    let sweep_t1 = t1_from.is_some() || t1_to.is_some() || t1_steps.is_some();
    if sweep_j == sweep_t1 {
        return Err("specify exactly one sweep axis: --J-from/--J-to/--J-steps or --T1-from/--T1-to/--T1-steps".into());
    }

    // Collect (leading swept value, row) pairs, then render once.
    let mut rows = Vec::new();
    let leading_name;
    if sweep_j {
        if r.setup.medium != Medium::Coupled {
            return Err("a J sweep applies to the coupled medium only".into());
        }
        let from = j_from.ok_or("missing --J-from")?;
        let to = j_to.ok_or("missing --J-to")?;
        let steps = j_steps.ok_or("missing --J-steps")?;
        if steps < 2 {
            return Err(format!("sweep requires at least 2 steps, got {steps}"));
        }
        r.setup.check_coupling(from)?;
        r.setup.check_coupling(to)?;
        leading_name = "J";
        for i in 0..steps {
            let j = from + (to - from) * i as f64 / (steps - 1) as f64;
            rows.push((j, evaluate(&r.setup, j, r.setup.t1, r.setup.t2)?));
        }
    } else {
        let from = t1_from.ok_or("missing --T1-from")?;
        let to = t1_to.ok_or("missing --T1-to")?;
        let steps = t1_steps.ok_or("missing --T1-steps")?;
        if steps < 2 {
            return Err(format!("sweep requires at least 2 steps, got {steps}"));
        }
        if from <= 0.0 || to <= 0.0 {
            return Err("T1 sweep bounds must be positive".into());
        }
        let theta = r.setup.t2 / r.setup.t1;
        leading_name = "T1";
        for i in 0..steps {
            let t1 = from + (to - from) * i as f64 / (steps - 1) as f64;
            rows.push((t1, evaluate(&r.setup, r.j, t1, theta * t1)?));
        }
    }

    let content = match r.format {
        Format::Csv => {
            let mut out = String::new();
            if leading_name == "J" {
                out.push_str(header(r.setup.medium));
            } else {
                out.push_str(&format!("T1,{}", &header(r.setup.medium)[2..]));
            }
            out.push('\n');
            for (leading, row) in &rows {
                out.push_str(&csv_row(r.setup.medium, *leading, row));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let array: Vec<serde_json::Value> = rows
                .iter()
                .map(|(leading, row)| {
                    let mut v = json_row(&r.setup, row);
                    v[leading_name] = json!(leading);
                    v
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&array).unwrap())
        }
    };
    write_output(&r.out, &content)?;
    Ok(0)
}

fn cmd_critical(args: ParamArgs) -> Result<u8, String> {
    let r = resolve(&args)?;
    if r.setup.medium != Medium::Coupled {
        return Err("critical couplings are defined for the coupled medium (pass --coupled)".into());
    }
    let s = &r.setup;
    let fail = |e: otto_core::Error| e.to_string();
    let phi_value = phi(s.b1, s.b2, s.t1, s.t2).map_err(fail)?;
    if s.b2 / s.t2 < s.b1 / s.t1 {
        return Err(format!(
            "ratio condition violated: B2/T2 = {} < B1/T1 = {}",
            s.b2 / s.t2,
            s.b1 / s.t1
        ));
    }
    let closed = |kind, variant| {
        critical_coupling_closed_form(kind, variant, s.spin, s.b1, s.b2, s.t1, s.t2).map_err(fail)
    };
    let bisect_tol = config::merge_f64(args.tol, &r.config, "tol")?.unwrap_or(1e-9);
    let root = |p| critical_coupling_bisect(p, s.spin, s.b1, s.b2, s.t1, s.t2, bisect_tol).map_err(fail);

    let std_g = closed(CriticalKind::Global, ClosedFormVariant::Standard)?;
    let std_h = closed(CriticalKind::Half, ClosedFormVariant::Standard)?;
    let std_s = closed(CriticalKind::Spin, ClosedFormVariant::Standard)?;
    let alt_g = closed(CriticalKind::Global, ClosedFormVariant::Alternate)?;
    let alt_h = closed(CriticalKind::Half, ClosedFormVariant::Alternate)?;
    let alt_s = closed(CriticalKind::Spin, ClosedFormVariant::Alternate)?;
    let maj = root(BisectPredicate::GlobalMajorisation)?;
    let pwc_g = root(BisectPredicate::GlobalPwc)?;
    let pwc_h = root(BisectPredicate::HalfPwc)?;
    let pwc_s = root(BisectPredicate::SpinPwc)?;

    let content = match r.format {
        Format::Json => {
            let v = json!({
                "phi": phi_value,
                "phi_over_2n": phi_value / (2.0 * s.spin.multiplicity() as f64),
                "closed_form": {
                    "standard": {"global": std_g, "half": std_h, "spin": std_s},
                    "alternate": {"global": alt_g, "half": alt_h, "spin": alt_s},
                    "variant_disagreement": {
                        "global": std_g - alt_g, "half": std_h - alt_h, "spin": std_s - alt_s,
                    },
                },
                "bisection": {
                    "majorisation_all_margins": {"J": maj.coupling, "monotone": maj.monotone, "sign_changes": maj.sign_changes},
                    "pwc_global": {"J": pwc_g.coupling, "monotone": pwc_g.monotone},
                    "pwc_half": {"J": pwc_h.coupling, "monotone": pwc_h.monotone},
                    "pwc_spin": {"J": pwc_s.coupling, "monotone": pwc_s.monotone},
                    "tolerance": bisect_tol,
                },
                "closed_minus_bisection": {
                    "global_vs_majorisation": std_g - maj.coupling,
                    "half_vs_pwc_half": std_h - pwc_h.coupling,
                    "spin_vs_pwc_spin": std_s - pwc_s.coupling,
                },
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => {
            let mut t = String::new();
            t.push_str(&format!("phi           = {}\n", sig12(phi_value)));
            t.push_str(&format!(
                "phi/(2(2s+1)) = {}\n",
                sig12(phi_value / (2.0 * s.spin.multiplicity() as f64))
            ));
            t.push_str("closed form (standard | alternate):\n");
            t.push_str(&format!("  global: {} | {}\n", sig12(std_g), sig12(alt_g)));
            t.push_str(&format!("  half:   {} | {}\n", sig12(std_h), sig12(alt_h)));
            t.push_str(&format!("  spin:   {} | {}\n", sig12(std_s), sig12(alt_s)));
            t.push_str("bisection roots of the exact predicates:\n");
            t.push_str(&format!(
                "  majorisation (all margins): {}{}\n",
                sig12(maj.coupling),
                if maj.monotone { "" } else { "  [multiple sign changes]" }
            ));
            t.push_str(&format!("  pwc global (X >= 0):        {}\n", sig12(pwc_g.coupling)));
            t.push_str(&format!("  pwc half (X+Z >= 0):        {}\n", sig12(pwc_h.coupling)));
            t.push_str(&format!("  pwc spin (2sX-Z >= 0):      {}\n", sig12(pwc_s.coupling)));
            t.push_str("closed (standard) minus bisection:\n");
            t.push_str(&format!("  global: {}\n", sig12(std_g - maj.coupling)));
            t.push_str(&format!("  half:   {}\n", sig12(std_h - pwc_h.coupling)));
            t.push_str(&format!("  spin:   {}\n", sig12(std_s - pwc_s.coupling)));
            t
        }
    };
    write_output(&r.out, &content)?;
    Ok(0)
}

fn cmd_majorize(args: ParamArgs) -> Result<u8, String> {
    let r = resolve(&args)?;
    let s = &r.setup;
    let fail = |e: otto_core::Error| e.to_string();
    let (hot, cold) = match s.medium {
        Medium::Single => (
            single_spin_spectrum(s.spin, s.b1).map_err(fail)?,
            single_spin_spectrum(s.spin, s.b2).map_err(fail)?,
        ),
        Medium::Coupled => (
            coupled_spectrum(s.spin, s.b1, r.j).map_err(fail)?,
            coupled_spectrum(s.spin, s.b2, r.j).map_err(fail)?,
        ),
    };
    let p = canonical_distribution(&hot, s.t1).map_err(fail)?;
    let pp = canonical_distribution(&cold, s.t2).map_err(fail)?;
    let report = majorises(p.probs(), pp.probs(), s.tol).map_err(fail)?;
    let n = report.margins.len() + 1;

    let content = match r.format {
        Format::Json => {
            let v = json!({
                "holds": report.holds,
                "tolerance": report.tolerance,
                "normalization_margin": report.normalization_margin,
                "first_violated_m": report.first_violated_m,
                "margins": report
                    .margins
                    .iter()
                    .enumerate()
                    .map(|(i, &g)| json!({"m": n - i, "margin": g}))
                    .collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => {
            let mut t = String::from("m,margin\n");
            for (i, &g) in report.margins.iter().enumerate() {
                t.push_str(&format!("{},{}\n", n - i, sig12(g)));
            }
            t.push_str(&format!("holds = {}\n", report.holds));
            if let Some(m) = report.first_violated_m {
                t.push_str(&format!("first violated m = {m}\n"));
            }
            t
        }
    };
    write_output(&r.out, &content)?;
    Ok(if report.holds { 0 } else { 2 })
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<u8, String> {
    // Only the medium, spin, field, and coupling matter here; the spectrum is
    // evaluated at B1 and may legitimately sit below the ordering threshold.
    let p = &args.params;
    let file = match &p.config {
        Some(path) => config::load(path)?,
        None => HashMap::new(),
    };
    let twice_s = config::merge_u32(p.twice_s, &file, "s")?
        .ok_or("missing --s (twice the spin magnitude)")?;
    let spin = otto_core::SpinMagnitude::from_twice_s(twice_s)
        .map_err(|_| "--s must be a positive integer (twice the spin magnitude)".to_string())?;
    let coupled = config::merge_bool(p.coupled, &file, "coupled")?;
    let medium = if coupled { Medium::Coupled } else { Medium::Single };
    let b1 = config::merge_f64(p.b1, &file, "B1")?.ok_or("missing --B1 (the field to evaluate at)")?;
    let j = config::merge_f64(p.j, &file, "J")?.unwrap_or(0.0);

    let fail = |e: otto_core::Error| e.to_string();
    let spectrum = match medium {
        Medium::Single => single_spin_spectrum(spin, b1).map_err(fail)?,
        Medium::Coupled => coupled_spectrum(spin, b1, j).map_err(fail)?,
    };

    let mut verification: Option<(f64, bool)> = None;
    if args.verify {
        let h = match medium {
            Medium::Single => single_zeeman_matrix(spin, b1),
            Medium::Coupled => hamiltonian_matrix(spin, b1, j),
        };
        let eig = diagonalize(&h).map_err(fail)?;
        let mut shifted: Vec<f64> = eig.values.iter().map(|e| e + spectrum.shift()).collect();
        shifted.sort_by(f64::total_cmp);
        let mut analytic = spectrum.levels().to_vec();
        analytic.sort_by(f64::total_cmp);
        let worst = shifted
            .iter()
            .zip(&analytic)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        verification = Some((worst, worst <= 1e-10));
    }

    let content = match p.format {
        Format::Json => {
            let v = json!({
                "medium": if medium == Medium::Coupled { "coupled" } else { "single" },
                "twice_s": spin.twice_s(),
                "B": b1,
                "J": j,
                "shift": spectrum.shift(),
                "ordered": spectrum.is_ordered(),
                "levels": spectrum.levels(),
                "verify": verification.map(|(worst, ok)| json!({"max_deviation": worst, "ok": ok})),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => {
            let mut t = String::from("label,energy\n");
            for (i, &e) in spectrum.levels().iter().enumerate() {
                t.push_str(&format!("{},{}\n", i + 1, sig12(e)));
            }
            t.push_str(&format!("shift = {}\n", sig12(spectrum.shift())));
            t.push_str(&format!("ordered = {}\n", spectrum.is_ordered()));
            if let Some((worst, ok)) = verification {
                t.push_str(&format!(
                    "verify: max |analytic - (eig + shift)| = {} -> {}\n",
                    sig12(worst),
                    if ok { "ok" } else { "MISMATCH" }
                ));
            }
            t
        }
    };
    write_output(&p.out, &content)?;
    match verification {
        Some((_, false)) => Ok(2),
        _ => Ok(0),
    }
}

fn cmd_figure(args: FigureArgs) -> Result<u8, String> {
    figures::emit(args.name, &args.out, args.plot_script)?;
    Ok(0)
}
