use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::asymptotics::{study_asymptotics, RegimeScale, GAMMA_CANDIDATES};
use super::decay::fit_decay;
use super::identities::{check_psi_subordination, comparison_residual, laguerre_connection_residual};
use super::pointwise::{pointwise_control_slack, TrigPath};
use super::report::{num, CheckReport};
use super::spectral_bounds::{check_pointwise_spherical, check_spectral_integral, spectrum_sample, DOUBLING_TOLERANCE};
use super::Check;
use crate::error::Result;
use crate::special_fn::{ComplexOrder, SpectralPoint};

pub fn standard_checks() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(LaguerreConnection),
        Box::new(PsiSubordination),
        Box::new(DecayFitCheck::default()),
        Box::new(Asymptotics),
        Box::new(SpectralIntegral { m: 1, n: 2, samples: 200 }),
        Box::new(PointwiseSpherical),
        Box::new(PointwiseControl { paths: 1000, seed: 7 }),
        Box::new(Comparison),
    ]
}

pub struct LaguerreConnection;

pub const CONNECTION_LIMIT: f64 = 1e-8;

impl Check for LaguerreConnection {
    fn name(&self) -> &'static str {
        "laguerre-connection"
    }
    fn summary(&self) -> &'static str {
        "L^a_k(r) as a Beta-weighted average of L^b_k(rs), k <= 20, r <= 20"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["a", "b", "k", "r", "residual"]);
        let mut worst = 0.0f64;
        for (a, b) in [(2.0, 1.0), (1.5, 0.5)] {
            for k in 0..=20 {
                for i in 1..=40 {
                    let r = 0.5 * i as f64;
                    let res = laguerre_connection_residual(ComplexOrder::real(a), ComplexOrder::real(b), k, r)?;
                    worst = worst.max(res);
                    rep.row(vec![num(a), num(b), k.to_string(), num(r), num(res)]);
                }
            }
        }
        rep.constant("max_residual", worst);
        rep.require(worst <= CONNECTION_LIMIT, format!("max residual {worst:e} > {CONNECTION_LIMIT:e}"));
        Ok(rep)
    }
}

pub struct PsiSubordination;

impl PsiSubordination {
    /// `(k, delta, gamma, delta', lambda, r, limit)`.
    pub const CASES: [(usize, f64, f64, f64, f64, f64, f64); 6] = [
        (0, 1.0, 0.0, 0.4, 2.0, 1.5, 1e-8),
        (0, 1.5, 0.8, 0.5, 1.0, 2.0, 1e-8),
        (6, 1.0, 0.7, 0.4, 2.0, 1.5, 1e-6),
        (6, 1.0, 0.0, 0.4, 2.0, 1.5, 1e-6),
        (12, 2.0, -1.1, 0.25, 0.5, 3.0, 1e-6),
        (20, 1.2, 0.3, 1.0, 4.0, 0.8, 1e-6),
    ];
}

impl Check for PsiSubordination {
    fn name(&self) -> &'static str {
        "psi-subordination"
    }
    fn summary(&self) -> &'static str {
        "psi^{delta+i gamma}_k through psi^{delta'}_k and a Beta kernel"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["k", "delta", "gamma", "delta_prime", "lambda", "r", "lhs_re", "lhs_im", "residual", "limit"]);
        let mut worst = 0.0f64;
        for (k, d, g, dp, l, r, limit) in Self::CASES {
            let res = check_psi_subordination(k, d, g, dp, l, r)?;
            worst = worst.max(res.residual);
            rep.require(res.residual <= limit, format!("k = {k}, gamma = {g}: residual {:e} > {limit:e}", res.residual));
            rep.row(vec![k.to_string(), num(d), num(g), num(dp), num(l), num(r), num(res.lhs.re), num(res.lhs.im), num(res.residual), num(limit)]);
        }
        rep.constant("max_residual", worst);
        Ok(rep)
    }
}

pub struct DecayFitCheck {
    pub delta_primes: Vec<f64>,
    pub k_grid: Vec<usize>,
    pub eta_grid: Vec<f64>,
}

impl Default for DecayFitCheck {
    fn default() -> Self {
        Self {
            delta_primes: vec![0.25, 0.5, 1.0],
            k_grid: (4..=64).collect(),
            eta_grid: (1..=64).map(|e| e as f64).collect(),
        }
    }
}

impl Check for DecayFitCheck {
    fn name(&self) -> &'static str {
        "decay-fit"
    }
    fn summary(&self) -> &'static str {
        "A^2 and B^2 against eta k: normalized sups and the log-log exponent of A^2"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["delta_prime", "quantity", "eta_k", "value", "normalized"]);
        for &dp in &self.delta_primes {
            let fit = fit_decay(dp, &self.k_grid, &self.eta_grid)?;
            for (q, f) in [("A2", &fit.a_squared), ("B2", &fit.b_squared)] {
                for &(x, v) in &f.samples {
                    rep.row(vec![num(dp), q.into(), num(x), num(v), num(v * x.powf(f.normalizing_exponent))]);
                }
                rep.constant(format!("{q}_sup_normalized[{dp}]"), f.max_normalized_value);
                rep.constant(format!("{q}_exponent[{dp}]"), f.fitted_exponent);
            }
            rep.require(
                fit.pass,
                format!("delta' = {dp}: A^2 exponent {:.4} vs expected {:.4}", fit.a_squared.fitted_exponent, fit.expected_exponent),
            );
        }
        Ok(rep)
    }
}

pub struct Asymptotics;

impl Check for Asymptotics {
    fn name(&self) -> &'static str {
        "asymptotics"
    }
    fn summary(&self) -> &'static str {
        "four-regime bounds on the normalized Laguerre function, stability across k in {8, 32, 128}"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["scale", "delta", "k", "nu", "c1", "c2", "c3", "c4_at_admissible_gamma"]);
        for delta in [0.5, 1.0] {
            for scale in [RegimeScale::Turning, RegimeScale::Degree] {
                let study = study_asymptotics(&[8, 32, 128], delta, scale)?;
                let gi = study.admissible_gamma.and_then(|g| GAMMA_CANDIDATES.iter().position(|&c| c == g));
                let label = match scale {
                    RegimeScale::Turning => "turning",
                    RegimeScale::Degree => "degree",
                };
                for r in &study.reports {
                    let c4 = gi.map(|i| r.exponential_constants[i]).unwrap_or(f64::NAN);
                    rep.row(vec![label.into(), num(delta), r.k.to_string(), num(r.nu), num(r.constants[0]), num(r.constants[1]), num(r.constants[2]), num(c4)]);
                }
                rep.constant(format!("admissible_gamma[{label},{delta}]"), study.admissible_gamma.unwrap_or(0.0));
                if scale == RegimeScale::Turning {
                    rep.require(study.pass, format!("delta = {delta}: regime constants unstable ({:?}, gamma {:?})", study.stable, study.admissible_gamma));
                } else if !study.pass {
                    rep.notes.push(format!(
                        "breakpoints at 1/k, k/2, 3k/2 (delta = {delta}): regimes 1-3 stable {:?}, admissible gamma {:?}",
                        study.stable, study.admissible_gamma
                    ));
                }
            }
        }
        Ok(rep)
    }
}

pub struct SpectralIntegral {
    pub m: usize,
    pub n: usize,
    pub samples: usize,
}

impl Check for SpectralIntegral {
    fn name(&self) -> &'static str {
        "spectral-integral"
    }
    fn summary(&self) -> &'static str {
        "sup over sampled spectral points of int r^{2m-1} |d^m phi/dr^m|^2 dr, stable under doubling the sample"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["kind", "lambda_or_u", "k", "integral"]);
        let small = check_spectral_integral(self.m, &spectrum_sample(self.samples), self.n)?;
        let large = check_spectral_integral(self.m, &spectrum_sample(2 * self.samples), self.n)?;
        for (z, v) in &large.values {
            let (kind, x, k) = match *z {
                SpectralPoint::Laguerre { lambda, k } => ("laguerre", lambda, k.to_string()),
                SpectralPoint::Bessel { u } => ("bessel", u, String::new()),
                SpectralPoint::Trivial => ("trivial", 0.0, String::new()),
            };
            rep.row(vec![kind.into(), num(x), k, num(*v)]);
        }
        let growth = (large.sup - small.sup) / small.sup;
        rep.constant("sup", small.sup);
        rep.constant("sup_doubled", large.sup);
        let laguerre = large
            .values
            .iter()
            .filter_map(|(z, v)| match *z {
                SpectralPoint::Laguerre { lambda, k } => Some((lambda, k, *v)),
                _ => None,
            })
            .fold((0.0, 0, f64::NEG_INFINITY), |best, x| if x.2 > best.2 { x } else { best });
        rep.constant("laguerre_sup", laguerre.2);
        rep.constant("laguerre_argmax_lambda", laguerre.0);
        rep.constant("laguerre_argmax_k", laguerre.1 as f64);
        rep.require(large.sup.is_finite(), "sup is not finite");
        rep.require(growth <= DOUBLING_TOLERANCE, format!("sup grew by {growth:.3} when the sample was doubled"));
        Ok(rep)
    }
}

pub struct PointwiseSpherical;

impl Check for PointwiseSpherical {
    fn name(&self) -> &'static str {
        "pointwise-spherical"
    }
    fn summary(&self) -> &'static str {
        "Gaussian decay on Sigma_{eps,N} and r^{-n+1/2} decay on Sigma'_eps, r in [1, 100]"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["epsilon", "r", "ln_sup_laguerre", "sup_bessel"]);
        let r_grid: Vec<f64> = (0..120).map(|i| 100f64.powf(i as f64 / 119.0)).collect();
        let mut rates = Vec::new();
        for eps in [0.25, 0.5, 1.0] {
            let r = check_pointwise_spherical(eps, 8, &r_grid, 2)?;
            for row in &r.rows {
                rep.row(vec![num(eps), num(row.0), num(row.1), num(row.2)]);
            }
            rep.constant(format!("laguerre_constant[{eps}]"), r.laguerre_constant);
            rep.constant(format!("laguerre_gamma[{eps}]"), r.laguerre_gamma);
            rep.constant(format!("bessel_constant[{eps}]"), r.bessel_constant);
            rep.require(r.pass, format!("eps = {eps}: normalized sups not bounded"));
            rates.push(r.laguerre_gamma * eps);
        }
        rep.require(rates.windows(2).all(|w| w[1] > w[0]), format!("fitted rates gamma*eps not increasing in eps: {rates:?}"));
        Ok(rep)
    }
}

pub struct PointwiseControl {
    pub paths: usize,
    pub seed: u64,
}

pub const CONTROL_SLACK_LIMIT: f64 = -1e-8;

impl Check for PointwiseControl {
    fn name(&self) -> &'static str {
        "pointwise-control"
    }
    fn summary(&self) -> &'static str {
        "|F(t)|^2 <= 2/l int |F|^2 + 2l int |F'|^2 for random smooth matrix paths"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["path", "dim", "interval_length", "ell", "min_slack"]);
        let rows = (0..self.paths)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
                let dim = 1 + i % 3;
                let len = 0.5 + 4.0 * (i % 7) as f64 / 6.0;
                let path = TrigPath::random(&mut rng, dim, 3 + i % 4, 6.0);
                let ts: Vec<f64> = (0..=64).map(|j| len * j as f64 / 64.0).collect();
                let mut out = Vec::new();
                for ell in [len, 0.25 * len] {
                    out.push((i, dim, len, ell, pointwise_control_slack(&path, (0.0, len), ell, &ts, 96)?));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut worst = f64::INFINITY;
        for (i, dim, len, ell, s) in rows.into_iter().flatten() {
            worst = worst.min(s);
            rep.row(vec![i.to_string(), dim.to_string(), num(len), num(ell), num(s)]);
        }
        rep.constant("min_slack", worst);
        rep.require(worst >= CONTROL_SLACK_LIMIT, format!("min slack {worst:e}"));
        Ok(rep)
    }
}

pub struct Comparison;

impl Check for Comparison {
    fn name(&self) -> &'static str {
        "comparison"
    }
    fn summary(&self) -> &'static str {
        "spherical mean minus uniform average equals (1/r) int_0^r s d/ds (spherical mean) ds"
    }
    fn run(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(self.name(), &["kind", "lambda_or_u", "k", "r", "residual"]);
        let mut worst = 0.0f64;
        let mut points = spectrum_sample(40);
        points.push(SpectralPoint::Trivial);
        for z in points {
            for r in [0.3, 1.0, 4.0] {
                let res = comparison_residual(z, r, 2)?;
                worst = worst.max(res);
                let (kind, x, k) = match z {
                    SpectralPoint::Laguerre { lambda, k } => ("laguerre", lambda, k.to_string()),
                    SpectralPoint::Bessel { u } => ("bessel", u, String::new()),
                    SpectralPoint::Trivial => ("trivial", 0.0, String::new()),
                };
                rep.row(vec![kind.into(), num(x), k, num(r), num(res)]);
            }
        }
        rep.constant("max_residual", worst);
        rep.require(worst <= 1e-8, format!("max residual {worst:e}"));
        Ok(rep)
    }
}
