//! Built-in figure datasets. Each writes one deterministic CSV (and,
//! optionally, a gnuplot script) into the output directory.
//!
//! All four use the reference parameter sets B1 = 5, B2 = 3 on the coupled
//! (1/2, 1) medium: margins and work curves at (T1, T2) = (6, 3), critical
//! couplings against T1 at fixed T2/T1 = 0.5, and the efficiency bundle at
//! (6, 3).

use crate::run::{evaluate, sig12, Setup};
use otto_core::coupled::{critical_coupling_closed_form, phi, ClosedFormVariant, CriticalKind};
use otto_core::{Medium, SpinMagnitude};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureName {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FigureName {
    pub fn stem(self) -> &'static str {
        match self {
            FigureName::Fig2 => "fig2",
            FigureName::Fig3 => "fig3",
            FigureName::Fig4 => "fig4",
            FigureName::Fig5 => "fig5",
        }
    }
}

fn reference_setup(t1: f64, t2: f64) -> Setup {
    Setup::new(Medium::Coupled, 2, 5.0, 3.0, t1, t2, None).expect("reference parameters are valid")
}

/// Renders the chosen figure dataset as CSV text.
pub fn render(which: FigureName) -> Result<String, String> {
    match which {
        FigureName::Fig2 => fig2(),
        FigureName::Fig3 => fig3(),
        FigureName::Fig4 => fig4(),
        FigureName::Fig5 => fig5(),
    }
}

/// All five tail margins of the coupled (1/2,1) pair over the coupling grid.
fn fig2() -> Result<String, String> {
    let setup = reference_setup(6.0, 3.0);
    let mut out = String::from("J,margin_m6,margin_m5,margin_m4,margin_m3,margin_m2\n");
    for i in 0..=200 {
        let j = 0.4 * i as f64 / 200.0;
        let row = evaluate(&setup, j, 6.0, 3.0)?;
        out.push_str(&sig12(j));
        for &margin in &row.margins {
            out.push(',');
            out.push_str(&sig12(margin));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Work output next to the strictest (m = 2) margin.
fn fig3() -> Result<String, String> {
    let setup = reference_setup(6.0, 3.0);
    let mut out = String::from("J,W,margin_m2\n");
    for i in 0..=200 {
        let j = 0.4 * i as f64 / 200.0;
        let row = evaluate(&setup, j, 6.0, 3.0)?;
        let m2 = *row.margins.last().expect("six-level margins");
        out.push_str(&format!("{},{},{}\n", sig12(j), sig12(row.cycle.work), sig12(m2)));
    }
    Ok(out)
}

/// Closed-form critical couplings against the hot temperature at fixed
/// T2/T1 = 0.5; all three collapse onto Phi/6 as T1 drops.
fn fig4() -> Result<String, String> {
    let spin = SpinMagnitude::ONE;
    let (b1, b2) = (5.0, 3.0);
    let mut out = String::from("T1,Jc_global,Jc_half,Jc_spin\n");
    for i in 0..=78 {
        let t1 = 0.5 + 0.25 * i as f64;
        let t2 = 0.5 * t1;
        let get = |kind| {
            critical_coupling_closed_form(kind, ClosedFormVariant::Standard, spin, b1, b2, t1, t2)
                .map_err(|e| e.to_string())
        };
        out.push_str(&format!(
            "{},{},{},{}\n",
            sig12(t1),
            sig12(get(CriticalKind::Global)?),
            sig12(get(CriticalKind::Half)?),
            sig12(get(CriticalKind::Spin)?)
        ));
    }
    Ok(out)
}

/// Efficiency, its uncoupled value, the coupling-tightened bound, and Carnot
/// over J in [0, Phi/6] where the bound meets Carnot at the right edge.
fn fig5() -> Result<String, String> {
    let setup = reference_setup(6.0, 3.0);
    let j_max = phi(5.0, 3.0, 6.0, 3.0).map_err(|e| e.to_string())? / 6.0;
    let carnot = 1.0 - 3.0 / 6.0;
    let mut out = String::from("J,eta,eta0,eta_ub,carnot\n");
    for i in 0..=100 {
        let j = j_max * i as f64 / 100.0;
        let row = evaluate(&setup, j, 6.0, 3.0)?;
        let eta = row.cycle.efficiency.unwrap_or(f64::NAN);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sig12(j),
            sig12(eta),
            sig12(row.eta0),
            sig12(row.eta_ub.expect("coupled row")),
            sig12(carnot)
        ));
    }
    Ok(out)
}

/// Companion gnuplot script for a figure CSV.
pub fn plot_script(which: FigureName) -> String {
    let stem = which.stem();
    let body = match which {
        FigureName::Fig2 => {
            "plot csv using 1:2 with lines title 'm=6', \\\n     csv using 1:3 with lines title 'm=5', \\\n     csv using 1:4 with lines title 'm=4', \\\n     csv using 1:5 with lines title 'm=3', \\\n     csv using 1:6 with lines title 'm=2'\n"
        }
        FigureName::Fig3 => {
            "plot csv using 1:2 with lines title 'W', \\\n     csv using 1:3 with lines title 'margin m=2'\n"
        }
        FigureName::Fig4 => {
            "plot csv using 1:2 with lines title 'J_c global', \\\n     csv using 1:3 with lines title 'J_c half', \\\n     csv using 1:4 with lines title 'J_c spin'\n"
        }
        FigureName::Fig5 => {
            "plot csv using 1:2 with lines title 'eta', \\\n     csv using 1:3 with lines title 'eta_0', \\\n     csv using 1:4 with lines title 'eta_ub', \\\n     csv using 1:5 with lines title 'Carnot'\n"
        }
    };
    format!(
        "set datafile separator ','\nset key autotitle columnhead\nset grid\ncsv = '{stem}.csv'\nset terminal pngcairo size 900,600\nset output '{stem}.png'\n{body}"
    )
}

/// Writes `<dir>/<stem>.csv` (and `<stem>.gp` when asked) for one figure.
pub fn emit(which: FigureName, dir: &Path, with_script: bool) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let csv = render(which)?;
    let csv_path = dir.join(format!("{}.csv", which.stem()));
    std::fs::write(&csv_path, csv).map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;
    if with_script {
        let gp_path = dir.join(format!("{}.gp", which.stem()));
        std::fs::write(&gp_path, plot_script(which))
            .map_err(|e| format!("cannot write {}: {e}", gp_path.display()))?;
    }
    Ok(())
}
