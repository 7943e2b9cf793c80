//! Regime bounds for `L^delta_k(t) = (k!/Gamma(k+delta+1))^{1/2} e^{-t/2} t^{delta/2} L^delta_k(t)`.

use serde::Serialize;

use crate::error::{param, Result};
use crate::special_fn::script_l;

/// Where the four regimes are split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeScale {
    /// Breakpoints `1/k, k/2, 3k/2`.
    Degree,
    /// Breakpoints `1/nu, nu/2, 3nu/2` with `nu = 4k + 2 delta + 2`, the turning point of `L^delta_k`.
    Turning,
}

impl RegimeScale {
    pub fn scale(self, k: usize, delta: f64) -> f64 {
        match self {
            RegimeScale::Degree => k as f64,
            RegimeScale::Turning => 4.0 * k as f64 + 2.0 * delta + 2.0,
        }
    }
}

/// Candidate exponential rates for the last regime, largest first.
pub const GAMMA_CANDIDATES: [f64; 7] = [0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625];

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticsReport {
    pub k: usize,
    pub delta: f64,
    pub scale: RegimeScale,
    pub nu: f64,
    /// `sup |L| / shape` in regimes 1 to 3.
    pub constants: [f64; 3],
    /// `sup_{t >= 3 nu / 2} |L(t)| e^{gamma t}` for each entry of `GAMMA_CANDIDATES`.
    pub exponential_constants: Vec<f64>,
    pub value_at_zero: f64,
}

fn shape(regime: usize, nu: f64, delta: f64, t: f64) -> f64 {
    match regime {
        0 => (nu * t).powf(0.5 * delta),
        1 => (nu * t).powf(-0.25),
        _ => nu.powf(-0.25) * (nu.powf(1.0 / 3.0) + (nu - t).abs()).powf(-0.25),
    }
}

fn dense(lo: f64, hi: f64, count: usize, geometric: bool) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let s = i as f64 / (count - 1) as f64;
            if geometric {
                lo * (hi / lo).powf(s)
            } else {
                lo + (hi - lo) * s
            }
        })
        .collect()
}

pub fn check_asymptotics(k: usize, delta: f64, scale: RegimeScale) -> Result<AsymptoticsReport> {
    if k == 0 {
        return Err(param("asymptotics need k >= 1"));
    }
    if !(delta >= 0.0) {
        return Err(param(format!("delta must be nonnegative, got {delta}")));
    }
    let nu = scale.scale(k, delta);
    let breaks = [1.0 / nu, 0.5 * nu, 1.5 * nu];
    // samples per unit oscillation: L^delta_k has k zeros below the turning point
    let per = 40 * (k + 4);
    let grids = [
        dense(breaks[0] * 1e-6, breaks[0], 400, true),
        dense(breaks[0], breaks[1], per, true),
        dense(breaks[1], breaks[2], per, false),
    ];
    let mut constants = [0.0f64; 3];
    for (j, grid) in grids.iter().enumerate() {
        for &t in grid {
            let v = script_l(k, delta, t)?.abs();
            constants[j] = constants[j].max(v / shape(j, nu, delta, t));
        }
    }
    let tail = dense(breaks[2], breaks[2] + 40.0 * (k as f64).sqrt() + 400.0, per, false);
    let mut exponential_constants = vec![0.0f64; GAMMA_CANDIDATES.len()];
    for &t in &tail {
        let v = script_l(k, delta, t)?.abs();
        for (c, g) in exponential_constants.iter_mut().zip(GAMMA_CANDIDATES) {
            *c = c.max(v * (g * t).exp());
        }
    }
    Ok(AsymptoticsReport {
        k,
        delta,
        scale,
        nu,
        constants,
        exponential_constants,
        value_at_zero: script_l(k, delta, 0.0)?,
    })
}

/// Growth allowed of a regime constant between the smallest and any larger `k`.
pub const STABILITY_FACTOR: f64 = 2.0;

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticsStudy {
    pub reports: Vec<AsymptoticsReport>,
    pub stable: [bool; 3],
    /// Largest candidate rate whose constants stay bounded across `k`.
    pub admissible_gamma: Option<f64>,
    pub pass: bool,
}

/// A constant sequence indexed by increasing `k` is stable when every entry
/// is finite and none exceeds `STABILITY_FACTOR` times the first.
fn stable(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite()) && values.iter().all(|&v| v <= STABILITY_FACTOR * values[0])
}

pub fn study_asymptotics(ks: &[usize], delta: f64, scale: RegimeScale) -> Result<AsymptoticsStudy> {
    if ks.is_empty() {
        return Err(param("asymptotics study needs at least one k"));
    }
    let reports = ks.iter().map(|&k| check_asymptotics(k, delta, scale)).collect::<Result<Vec<_>>>()?;
    let mut st = [false; 3];
    for (j, s) in st.iter_mut().enumerate() {
        *s = stable(&reports.iter().map(|r| r.constants[j]).collect::<Vec<_>>());
    }
    let admissible_gamma = GAMMA_CANDIDATES
        .iter()
        .enumerate()
        .find(|(i, _)| stable(&reports.iter().map(|r| r.exponential_constants[*i]).collect::<Vec<_>>()))
        .map(|(_, &g)| g);
    let pass = st.iter().all(|&s| s) && admissible_gamma.is_some();
    Ok(AsymptoticsStudy { reports, stable: st, admissible_gamma, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_at_origin_and_first_regime_is_finite() {
        let r = check_asymptotics(8, 1.0, RegimeScale::Turning).unwrap();
        assert_eq!(r.value_at_zero, 0.0);
        assert!(r.constants[0].is_finite() && r.constants[0] > 0.0);
        assert!(check_asymptotics(0, 1.0, RegimeScale::Degree).is_err());
    }
}
