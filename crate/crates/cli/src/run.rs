//! Validated run parameters and the per-point row assembly shared by the
//! cycle, sweep, and figure commands.

use otto_core::coupled::{functionals, local_work};
use otto_core::majorize::{majorises, single_spin_work_functional, DEFAULT_MARGIN_TOL};
use otto_core::spectra::{coupled_spectrum, single_spin_spectrum};
use otto_core::thermo::cycle_from_distributions;
use otto_core::{canonical_distribution, CycleReport, Medium, OperationMode, SpinMagnitude};
use serde_json::{json, Value};

/// A validated parameter set for one medium.
#[derive(Debug, Clone, Copy)]
pub struct Setup {
    pub medium: Medium,
    pub spin: SpinMagnitude,
    pub b1: f64,
    pub b2: f64,
    pub t1: f64,
    pub t2: f64,
    pub tol: f64,
}

impl Setup {
    /// Checks every bound and names the violated one on failure.
    pub fn new(
        medium: Medium,
        twice_s: u32,
        b1: f64,
        b2: f64,
        t1: f64,
        t2: f64,
        tol: Option<f64>,
    ) -> Result<Self, String> {
        let spin = SpinMagnitude::from_twice_s(twice_s)
            .map_err(|_| "--s must be a positive integer (twice the spin magnitude)".to_string())?;
        if b2 <= 0.0 {
            return Err(format!("B2 must be positive, got {b2}"));
        }
        if b1 <= b2 {
            return Err(format!("B1 must exceed B2, got B1 = {b1}, B2 = {b2}"));
        }
        if t2 <= 0.0 {
            return Err(format!("T2 must be positive, got {t2}"));
        }
        if t1 <= t2 {
            return Err(format!("T1 must exceed T2, got T1 = {t1}, T2 = {t2}"));
        }
        let tol = tol.unwrap_or(DEFAULT_MARGIN_TOL);
        if tol <= 0.0 {
            return Err(format!("tol must be positive, got {tol}"));
        }
        Ok(Setup { medium, spin, b1, b2, t1, t2, tol })
    }

    /// Upper bound of the admissible coupling window at the cold field.
    pub fn coupling_bound(&self) -> f64 {
        self.b2 / (2.0 * self.spin.multiplicity() as f64)
    }

    pub fn check_coupling(&self, j: f64) -> Result<(), String> {
        match self.medium {
            Medium::Single => {
                if j != 0.0 {
                    Err(format!("J applies to the coupled medium only, got J = {j}"))
                } else {
                    Ok(())
                }
            }
            Medium::Coupled => {
                let bound = self.coupling_bound();
                if !(0.0..bound).contains(&j) {
                    Err(format!(
                        "J must lie in [0, B2/(2(2s+1))) = [0, {bound}), got J = {j}"
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// Everything one swept parameter point reports.
#[derive(Debug, Clone)]
pub struct Row {
    pub j: f64,
    pub cycle: CycleReport,
    /// Work functional: the coupled X, or the lone-spin ladder functional.
    pub x: f64,
    /// Coupled only.
    pub y: Option<f64>,
    pub z: Option<f64>,
    pub eta0: f64,
    pub eta_ub: Option<f64>,
    pub w_half: Option<f64>,
    pub w_spin: Option<f64>,
    pub maj_holds: bool,
    /// Tail margins in scan order m = n .. 2.
    pub margins: Vec<f64>,
}

/// Spec for one swept point at temperatures possibly overridden (T1 sweeps).
pub fn evaluate(setup: &Setup, j: f64, t1: f64, t2: f64) -> Result<Row, String> {
    setup.check_coupling(j).map_err(|e| e.to_string())?;
    let fail = |e: otto_core::Error| e.to_string();
    let (hot, cold) = match setup.medium {
        Medium::Single => (
            single_spin_spectrum(setup.spin, setup.b1).map_err(fail)?,
            single_spin_spectrum(setup.spin, setup.b2).map_err(fail)?,
        ),
        Medium::Coupled => (
            coupled_spectrum(setup.spin, setup.b1, j).map_err(fail)?,
            coupled_spectrum(setup.spin, setup.b2, j).map_err(fail)?,
        ),
    };
    let p_hot = canonical_distribution(&hot, t1).map_err(fail)?;
    let p_cold = canonical_distribution(&cold, t2).map_err(fail)?;
    let cycle = cycle_from_distributions(&p_hot, &p_cold).map_err(fail)?;
    let report = majorises(p_hot.probs(), p_cold.probs(), setup.tol).map_err(fail)?;
    let eta0 = 1.0 - setup.b2 / setup.b1;

    match setup.medium {
        Medium::Single => {
            let x = single_spin_work_functional(&p_hot, &p_cold).map_err(fail)?;
            Ok(Row {
                j,
                cycle,
                x,
                y: None,
                z: None,
                eta0,
                eta_ub: None,
                w_half: None,
                w_spin: None,
                maj_holds: report.holds,
                margins: report.margins,
            })
        }
        Medium::Coupled => {
            let f = functionals(&p_hot, &p_cold, setup.spin).map_err(fail)?;
            let lw = local_work(&p_hot, &p_cold, setup.spin, setup.b1, setup.b2).map_err(fail)?;
            // eta_ub is purely spectral and stays finite inside the coupling
            // window (2(2s+1)J < B2 < B1), engine mode or not.
            let eta_ub = eta0 / (1.0 - 2.0 * setup.spin.multiplicity() as f64 * j / setup.b1);
            Ok(Row {
                j,
                cycle,
                x: f.x,
                y: Some(f.y),
                z: Some(f.z),
                eta0,
                eta_ub: Some(eta_ub),
                w_half: Some(lw.work_half),
                w_spin: Some(lw.work_spin),
                maj_holds: report.holds,
                margins: report.margins,
            })
        }
    }
}

pub const COUPLED_HEADER: &str =
    "J,Q1,Q2,W,eta,eta0,eta_ub,S1,S2,D_P_Pp,D_Pp_P,dS_tot,X,Y,Z,w_half,w_spin,maj_holds,mode";
pub const SINGLE_HEADER: &str = "J,Q1,Q2,W,eta,eta0,S1,S2,D_P_Pp,D_Pp_P,dS_tot,X,maj_holds,mode";

/// 12 significant digits, exponent notation, `nan` for undefined entries.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.11e}")
    }
}

pub fn header(medium: Medium) -> &'static str {
    match medium {
        Medium::Single => SINGLE_HEADER,
        Medium::Coupled => COUPLED_HEADER,
    }
}

/// One CSV row matching [`header`], with `leading` standing in for the first
/// column (the swept variable).
pub fn csv_row(medium: Medium, leading: f64, row: &Row) -> String {
    let c = &row.cycle;
    let eta = c.efficiency.unwrap_or(f64::NAN);
    let common_head = [
        sig12(leading),
        sig12(c.heat_hot),
        sig12(c.heat_cold),
        sig12(c.work),
        sig12(eta),
        sig12(row.eta0),
    ];
    let mut fields: Vec<String> = common_head.to_vec();
    if medium == Medium::Coupled {
        fields.push(sig12(row.eta_ub.unwrap()));
    }
    fields.extend([
        sig12(c.entropy_hot),
        sig12(c.entropy_cold),
        sig12(c.divergence_hot_cold),
        sig12(c.divergence_cold_hot),
        sig12(c.entropy_production),
        sig12(row.x),
    ]);
    if medium == Medium::Coupled {
        fields.extend([
            sig12(row.y.unwrap()),
            sig12(row.z.unwrap()),
            sig12(row.w_half.unwrap()),
            sig12(row.w_spin.unwrap()),
        ]);
    }
    fields.push(row.maj_holds.to_string());
    fields.push(c.mode.as_str().to_string());
    fields.join(",")
}

pub fn json_row(setup: &Setup, row: &Row) -> Value {
    let c = &row.cycle;
    let mut v = json!({
        "J": row.j,
        "cycle": {
            "Q1": c.heat_hot,
            "Q2": c.heat_cold,
            "W": c.work,
            "eta": c.efficiency,
            "S1": c.entropy_hot,
            "S2": c.entropy_cold,
            "D_P_Pp": c.divergence_hot_cold,
            "D_Pp_P": c.divergence_cold_hot,
            "dS_tot": c.entropy_production,
            "mode": c.mode.as_str(),
        },
        "X": row.x,
        "eta0": row.eta0,
        "majorisation": {
            "holds": row.maj_holds,
            "margins": row.margins,
        },
    });
    if setup.medium == Medium::Coupled {
        v["Y"] = json!(row.y);
        v["Z"] = json!(row.z);
        v["eta_ub"] = json!(row.eta_ub);
        v["w_half"] = json!(row.w_half);
        v["w_spin"] = json!(row.w_spin);
    }
    v
}

/// Exit-code policy for a single evaluated cycle.
pub fn exit_code_for(mode: OperationMode) -> u8 {
    match mode {
        OperationMode::Engine => 0,
        _ => 2,
    }
}
