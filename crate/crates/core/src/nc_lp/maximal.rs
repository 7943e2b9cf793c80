//! `||sup^+ x_i||_p = inf { ||a||_p : -a <= x_i <= a }` for self-adjoint
//! families. The program separates over grid points; each fiber is solved by
//! a log-det barrier path-following method with BFGS centering steps.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::algebra::AlgebraElement;
use super::norms::lp_norm;
use crate::error::{param, Error, Result};
use crate::linalg::{abs, apply_fn, eigh, min_eig, op_norm, CMat, C64};

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Target relative duality gap on `tau(a^p)`.
    pub rel_tol: f64,
    /// Cap on centering iterations summed over all fibers.
    pub max_iterations: usize,
    /// Barrier weight growth per outer step.
    pub mu: f64,
    pub max_fiber_size: usize,
    pub max_family: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-7, max_iterations: 200_000, mu: 8.0, max_fiber_size: 256, max_family: 64 }
    }
}

/// One outer step of one fiber solve.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub fiber: usize,
    pub outer: usize,
    pub iterations: usize,
    pub objective: f64,
    pub barrier_weight: f64,
    pub min_slack: f64,
}

#[derive(Clone, Debug)]
pub struct MaximalNormResult {
    pub p: f64,
    pub value: f64,
    /// The optimal `a`, positive semidefinite on every fiber.
    pub certificate: AlgebraElement,
    pub iterations: usize,
    /// Relative duality-gap bound on `tau(a^p)` (zero for `p = infinity`).
    pub feasibility_gap: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub trace: Vec<TraceRow>,
}

impl MaximalNormResult {
    /// `min_{g,i} lambda_min(a_g -+ x_{i,g})`.
    pub fn min_slack(&self, family: &[AlgebraElement]) -> f64 {
        let mut worst = f64::INFINITY;
        for x in family {
            for (a, xi) in self.certificate.fibers.iter().zip(&x.fibers) {
                worst = worst.min(min_eig(&(a - xi))).min(min_eig(&(a + xi)));
            }
        }
        worst
    }

    /// Solver diagnostics as CSV with a header row.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("fiber,outer,iterations,objective,barrier_weight,min_slack\n");
        for r in &self.trace {
            out.push_str(&format!(
                "{},{},{},{:e},{:e},{:e}\n",
                r.fiber, r.outer, r.iterations, r.objective, r.barrier_weight, r.min_slack
            ));
        }
        out
    }
}

struct FiberSolution {
    a: CMat,
    objective: f64,
    gap: f64,
    iterations: usize,
    trace: Vec<TraceRow>,
    converged: bool,
}

/// Real coordinates of a Hermitian matrix in the basis
/// `E_ii`, `E_ij + E_ji`, `i (E_ij - E_ji)` (`i < j`).
fn to_params(a: &CMat) -> DVector<f64> {
    let d = a.nrows();
    let mut v = Vec::with_capacity(d * d);
    for i in 0..d {
        v.push(a[(i, i)].re);
    }
    for i in 0..d {
        for j in i + 1..d {
            v.push(a[(i, j)].re);
            v.push(-a[(i, j)].im);
        }
    }
    DVector::from_vec(v)
}

fn from_params(v: &DVector<f64>, d: usize) -> CMat {
    let mut a = CMat::zeros(d, d);
    for i in 0..d {
        a[(i, i)] = C64::new(v[i], 0.0);
    }
    let mut idx = d;
    for i in 0..d {
        for j in i + 1..d {
            let z = C64::new(v[idx], -v[idx + 1]);
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
            idx += 2;
        }
    }
    a
}

/// Gradient of `a -> Re tr(G a)` in the coordinates of [`to_params`].
fn grad_params(g: &CMat) -> DVector<f64> {
    let d = g.nrows();
    let mut v = Vec::with_capacity(d * d);
    for i in 0..d {
        v.push(g[(i, i)].re);
    }
    for i in 0..d {
        for j in i + 1..d {
            v.push(2.0 * g[(i, j)].re);
            v.push(-2.0 * g[(i, j)].im);
        }
    }
    DVector::from_vec(v)
}

struct Barrier<'a> {
    xs: &'a [CMat],
    p: f64,
    t: f64,
}

impl Barrier<'_> {
    /// `t tr(a^p) - sum_i logdet(a - x_i) + logdet(a + x_i)` and its gradient;
    /// `None` outside the strictly feasible set.
    fn eval(&self, a: &CMat) -> Option<(f64, CMat)> {
        let d = a.nrows();
        let mut value = 0.0;
        let mut grad = CMat::zeros(d, d);
        for x in self.xs {
            for s in [-1.0, 1.0] {
                let (vals, vecs) = eigh(&(a + x * C64::new(s, 0.0)));
                if !(vals[0] > 0.0) {
                    return None;
                }
                value -= vals.iter().map(|v| v.ln()).sum::<f64>();
                let mut scaled = vecs.clone();
                for (j, v) in vals.iter().enumerate() {
                    scaled.column_mut(j).scale_mut(1.0 / v);
                }
                grad -= scaled * vecs.adjoint();
            }
        }
        let (vals, _) = eigh(a);
        if vals[0] <= 0.0 {
            return None;
        }
        value += self.t * vals.iter().map(|v| v.powf(self.p)).sum::<f64>();
        grad += apply_fn(a, |v| self.p * v.max(0.0).powf(self.p - 1.0)) * C64::new(self.t, 0.0);
        Some((value, grad))
    }
}

/// Matrices `B_j` with `from_params(theta) = sum_j theta_j B_j`.
fn basis(d: usize) -> Vec<CMat> {
    let dim = d * d;
    (0..dim)
        .map(|j| {
            let mut e = DVector::zeros(dim);
            e[j] = 1.0;
            from_params(&e, d)
        })
        .collect()
}

/// `Re tr(X Y)`.
fn re_trace_product(x: &CMat, y: &CMat) -> f64 {
    let d = x.nrows();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            s += (x[(i, j)] * y[(j, i)]).re;
        }
    }
    s
}

impl Barrier<'_> {
    /// Hessian in the coordinates of [`to_params`]: `tr(S^-1 B_j S^-1 B_k)` for
    /// every slack `S`, plus the divided-difference form of `t tr(a^p)`.
    fn hessian(&self, a: &CMat, basis: &[CMat]) -> DMatrix<f64> {
        let dim = basis.len();
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        for x in self.xs {
            for s in [-1.0, 1.0] {
                let (vals, vecs) = eigh(&(a + x * C64::new(s, 0.0)));
                let inv = &vecs * CMat::from_diagonal(&nalgebra::DVector::from_iterator(vals.len(), vals.iter().map(|v| C64::new(1.0 / v, 0.0)))) * vecs.adjoint();
                let m: Vec<CMat> = basis.iter().map(|b| &inv * b).collect();
                for j in 0..dim {
                    for k in j..dim {
                        let v = re_trace_product(&m[j], &m[k]);
                        h[(j, k)] += v;
                        if k != j {
                            h[(k, j)] += v;
                        }
                    }
                }
            }
        }
        let (lam, u) = eigh(a);
        let p = self.p;
        let g = |x: f64| p * x.max(0.0).powf(p - 1.0);
        let dg = |x: f64| p * (p - 1.0) * x.max(f64::MIN_POSITIVE).powf(p - 2.0);
        let d = lam.len();
        let dd = CMat::from_fn(d, d, |i, j| {
            let (x, y) = (lam[i], lam[j]);
            let v = if (x - y).abs() <= 1e-10 * x.abs().max(y.abs()) { dg(0.5 * (x + y)) } else { (g(x) - g(y)) / (x - y) };
            C64::new(v, 0.0)
        });
        let rotated: Vec<CMat> = basis.iter().map(|b| u.adjoint() * b * &u).collect();
        for j in 0..dim {
            for k in j..dim {
                let mut v = 0.0;
                for a_ in 0..d {
                    for b_ in 0..d {
                        v += (dd[(a_, b_)] * rotated[j][(a_, b_)] * rotated[k][(b_, a_)]).re;
                    }
                }
                h[(j, k)] += self.t * v;
                if k != j {
                    h[(k, j)] += self.t * v;
                }
            }
        }
        h
    }
}

/// Largest fiber dimension centered by Newton steps; larger fibers use BFGS.
const NEWTON_MAX_DIM: usize = 8;

/// Damped Newton centering with exact Hessians.
fn newton_center(bar: &Barrier, a0: &CMat, budget: usize) -> (CMat, usize, bool) {
    let d = a0.nrows();
    let basis = basis(d);
    let mut theta = to_params(a0);
    let (mut f, g) = bar.eval(a0).expect("centering starts strictly feasible");
    let mut g = grad_params(&g);
    for it in 0..budget {
        let a = from_params(&theta, d);
        let h = bar.hessian(&a, &basis);
        let dir = match h.clone().cholesky() {
            Some(ch) => ch.solve(&(-&g)),
            None => -&g,
        };
        let decrement = -g.dot(&dir);
        if !(decrement > 0.0) || 0.5 * decrement <= 1e-10 {
            return (a, it, true);
        }
        let mut step = 1.0;
        let mut accepted = None;
        while step > 1e-20 {
            let cand = &theta + &dir * step;
            if let Some((fc, gc)) = bar.eval(&from_params(&cand, d)) {
                if fc < f && fc <= f - 0.25 * step * decrement {
                    accepted = Some((cand, fc, grad_params(&gc)));
                    break;
                }
            }
            step *= 0.5;
        }
        let Some((cand, fc, gc)) = accepted else {
            return (a, it, decrement <= 1e-8 * (1.0 + f.abs()));
        };
        theta = cand;
        f = fc;
        g = gc;
    }
    (from_params(&theta, d), budget, false)
}

fn objective(a: &CMat, p: f64) -> f64 {
    eigh(a).0.iter().map(|v| v.max(0.0).powf(p)).sum()
}

fn min_slack(a: &CMat, xs: &[CMat]) -> f64 {
    xs.iter().map(|x| min_eig(&(a - x)).min(min_eig(&(a + x)))).fold(f64::INFINITY, f64::min)
}

/// Minimizes the barrier from `a0` by BFGS with backtracking.
fn center(bar: &Barrier, a0: &CMat, budget: usize) -> (CMat, usize, bool) {
    let d = a0.nrows();
    let mut theta = to_params(a0);
    let (mut f, g) = bar.eval(a0).expect("centering starts strictly feasible");
    let mut g = grad_params(&g);
    let dim = theta.len();
    let mut h = DMatrix::<f64>::identity(dim, dim);
    let mut scaled = false;
    for it in 0..budget {
        let dir = -(&h * &g);
        let decrement = -g.dot(&dir);
        if decrement <= 1e-14 * (1.0 + f.abs()) || !(decrement > 0.0) {
            return (from_params(&theta, d), it, true);
        }
        let mut step = 1.0;
        let mut accepted = None;
        while step > 1e-20 {
            let cand = &theta + &dir * step;
            if let Some((fc, gc)) = bar.eval(&from_params(&cand, d)) {
                if fc <= f - 1e-4 * step * decrement {
                    accepted = Some((cand, fc, grad_params(&gc)));
                    break;
                }
            }
            step *= 0.5;
        }
        let Some((cand, fc, gc)) = accepted else {
            // no descent possible at working precision: the center is reached
            return (from_params(&theta, d), it, decrement <= 1e-8 * (1.0 + f.abs()));
        };
        let s = &cand - &theta;
        let y = &gc - &g;
        let sy = s.dot(&y);
        if sy > 1e-300 {
            if !scaled {
                h *= sy / y.dot(&y);
                scaled = true;
            }
            let rho = 1.0 / sy;
            let hy = &h * &y;
            let yhy = y.dot(&hy);
            // inverse-Hessian BFGS update
            h += (&s * s.transpose()) * (rho * rho * yhy + rho) - (&hy * s.transpose() + &s * hy.transpose()) * rho;
        }
        theta = cand;
        f = fc;
        g = gc;
    }
    (from_params(&theta, d), budget, false)
}

fn solve_fiber(xs: &[CMat], p: f64, opts: &SolverOptions, fiber: usize, budget: usize) -> FiberSolution {
    let d = xs[0].nrows();
    let scale = xs.iter().map(op_norm).fold(0.0, f64::max);
    if scale == 0.0 {
        return FiberSolution { a: CMat::zeros(d, d), objective: 0.0, gap: 0.0, iterations: 0, trace: vec![], converged: true };
    }
    let unit: Vec<CMat> = xs.iter().map(|x| x / C64::new(scale, 0.0)).collect();
    let mut sum_abs = CMat::zeros(d, d);
    for x in &unit {
        sum_abs += abs(x);
    }
    // (1 + 1e-2) sum |x_i| is strictly feasible once a small multiple of the
    // identity covers kernels shared by all |x_i|
    let mut a = sum_abs * C64::new(1.0 + 1e-2, 0.0) + CMat::identity(d, d) * C64::new(1e-2, 0.0);
    let m = (2 * unit.len() * d) as f64;
    let mut t = m / objective(&a, p).max(1e-300);
    let mut iterations = 0;
    let mut trace = Vec::new();
    let mut converged = true;
    for outer in 0.. {
        let bar = Barrier { xs: &unit, p, t };
        let remaining = budget.saturating_sub(iterations).max(1);
        let (next, its, ok) = if d <= NEWTON_MAX_DIM { newton_center(&bar, &a, remaining) } else { center(&bar, &a, remaining) };
        a = next;
        iterations += its;
        converged &= ok;
        let obj = objective(&a, p);
        trace.push(TraceRow {
            fiber,
            outer,
            iterations: its,
            objective: obj * scale.powf(p),
            barrier_weight: t,
            min_slack: min_slack(&a, &unit) * scale,
        });
        let gap = m / t;
        if gap <= opts.rel_tol * obj || iterations >= budget || outer > 200 {
            converged &= gap <= opts.rel_tol * obj;
            return FiberSolution {
                a: a * C64::new(scale, 0.0),
                objective: obj * scale.powf(p),
                gap: gap * scale.powf(p),
                iterations,
                trace,
                converged,
            };
        }
        t *= opts.mu;
    }
    unreachable!()
}

/// `p = infinity`: bisection on `t` for the feasibility of `t 1 >= +-x_i`.
/// Any feasible `a` with `a <= t 1` makes `t 1` itself feasible, so the
/// feasibility subproblem is decided by the scalar certificate.
fn solve_fiber_sup(xs: &[CMat], fiber: usize) -> FiberSolution {
    let d = xs[0].nrows();
    let feasible = |t: f64| {
        let a = CMat::identity(d, d) * C64::new(t, 0.0);
        min_slack(&a, xs) >= 0.0
    };
    let mut hi = xs.iter().map(op_norm).fold(0.0, f64::max) * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    while !feasible(hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    let mut iterations = 0;
    while hi - lo > 1e-15 * hi && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    let a = CMat::identity(d, d) * C64::new(hi, 0.0);
    let trace = vec![TraceRow { fiber, outer: 0, iterations, objective: hi, barrier_weight: 0.0, min_slack: min_slack(&a, xs) }];
    FiberSolution { a, objective: hi, gap: 0.0, iterations, trace, converged: true }
}

#[derive(Clone, Debug, Default)]
pub struct MaximalNormSolver {
    pub options: SolverOptions,
}

impl MaximalNormSolver {
    pub fn new(options: SolverOptions) -> Self {
        Self { options }
    }

    pub fn solve(&self, family: &[AlgebraElement], p: f64) -> Result<MaximalNormResult> {
        let opts = &self.options;
        if !(p >= 1.0) {
            return Err(param(format!("maximal norm needs p >= 1, got {p}")));
        }
        let first = family.first().ok_or_else(|| param("maximal norm needs a nonempty family"))?;
        let alg = &first.algebra;
        if family.len() > opts.max_family || alg.fiber_dim * alg.len() > opts.max_fiber_size {
            return Err(param(format!(
                "solver budget exceeded: N = {}, d G = {} (limits {}, {})",
                family.len(),
                alg.fiber_dim * alg.len(),
                opts.max_family,
                opts.max_fiber_size
            )));
        }
        for x in family {
            if x.algebra != *alg {
                return Err(Error::DimensionMismatch { expected: alg.len(), got: x.algebra.len() });
            }
            if !x.is_hermitian() {
                return Err(Error::Domain("maximal norm is defined here for self-adjoint families only".into()));
            }
        }
        let budget = opts.max_iterations / alg.len().max(1);
        let fibers: Vec<FiberSolution> = (0..alg.len())
            .into_par_iter()
            .map(|g| {
                let xs: Vec<CMat> = family.iter().map(|x| x.fibers[g].clone()).collect();
                let mut sol = if p.is_infinite() {
                    solve_fiber_sup(&xs, g)
                } else {
                    solve_fiber(&xs, p, opts, g, budget)
                };
                // sum |x_i| is always feasible
                let s = xs.iter().fold(CMat::zeros(alg.fiber_dim, alg.fiber_dim), |acc, x| acc + abs(x));
                let obj = if p.is_infinite() { op_norm(&s) } else { objective(&s, p) };
                if obj <= sol.objective {
                    sol.a = s;
                    sol.objective = obj;
                }
                sol
            })
            .collect();
        let (value, gap) = if p.is_infinite() {
            (fibers.iter().map(|f| f.objective).fold(0.0, f64::max), 0.0)
        } else {
            let total: f64 = fibers.iter().zip(&alg.weights).map(|(f, w)| w * f.objective).sum();
            let gap: f64 = fibers.iter().zip(&alg.weights).map(|(f, w)| w * f.gap).sum();
            (total.powf(1.0 / p), if total > 0.0 { gap / total } else { 0.0 })
        };
        let mut sum_abs = first.map(|_| CMat::zeros(alg.fiber_dim, alg.fiber_dim));
        for x in family {
            for (s, f) in sum_abs.fibers.iter_mut().zip(&x.fibers) {
                *s += abs(f);
            }
        }
        let mut lower_bound = 0.0f64;
        for x in family {
            lower_bound = lower_bound.max(lp_norm(x, p)?);
        }
        let upper_bound = lp_norm(&sum_abs, p)?;
        let converged = fibers.iter().all(|f| f.converged);
        let iterations = fibers.iter().map(|f| f.iterations).sum();
        let trace = fibers.iter().flat_map(|f| f.trace.iter().cloned()).collect();
        let certificate = AlgebraElement::hermitian(alg.clone(), fibers.into_iter().map(|f| f.a).collect())?;
        let result = MaximalNormResult { p, value, certificate, iterations, feasibility_gap: gap, lower_bound, upper_bound, trace };
        let slack_ok = result.min_slack(family) >= -1e-8 * result.certificate.sup_norm();
        let sandwich_ok = value >= lower_bound * (1.0 - 1e-6) - 1e-12 && value <= upper_bound * (1.0 + 1e-6) + 1e-12;
        if !converged || !slack_ok || !sandwich_ok {
            log::warn!("maximal norm solve failed: converged {converged}, feasible {slack_ok}, sandwich {sandwich_ok}");
            return Err(Error::NonConvergence { iterations, gap, last: Some(Box::new(result)) });
        }
        Ok(result)
    }
}

pub fn maximal_norm(family: &[AlgebraElement], p: f64) -> Result<MaximalNormResult> {
    MaximalNormSolver::default().solve(family, p)
}

/// `||sup^+ |x_i|^2||_{p/2}^{1/2}`.
pub fn maximal_norm_column(family: &[AlgebraElement], p: f64) -> Result<f64> {
    if !(p >= 2.0) {
        return Err(param(format!("column maximal norm needs p >= 2, got {p}")));
    }
    let squares = family
        .iter()
        .map(|x| {
            let sq: Vec<CMat> = x.fibers.iter().map(|m| crate::linalg::hermitian_part(&(m.adjoint() * m))).collect();
            AlgebraElement::hermitian(x.algebra.clone(), sq)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(maximal_norm(&squares, p / 2.0)?.value.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_hermitian, max_abs};
    use crate::nc_lp::TracialAlgebra;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn barrier_hessian_matches_gradient_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = 3;
        let xs: Vec<CMat> = (0..4).map(|_| random_hermitian(&mut rng, d)).collect();
        let mut a = CMat::identity(d, d) * C64::new(1.0, 0.0);
        for x in &xs {
            a += abs(x) * C64::new(1.1, 0.0);
        }
        for p in [1.0, 1.5, 2.0, 3.0] {
            let bar = Barrier { xs: &xs, p, t: 0.7 };
            let b = basis(d);
            let h = bar.hessian(&a, &b);
            let theta = to_params(&a);
            let eps = 1e-6;
            for j in 0..b.len() {
                let mut tp = theta.clone();
                tp[j] += eps;
                let mut tm = theta.clone();
                tm[j] -= eps;
                let gp = grad_params(&bar.eval(&from_params(&tp, d)).unwrap().1);
                let gm = grad_params(&bar.eval(&from_params(&tm, d)).unwrap().1);
                let col = (gp - gm) / (2.0 * eps);
                for k in 0..b.len() {
                    assert!((col[k] - h[(k, j)]).abs() < 1e-5 * (1.0 + h[(k, j)].abs()), "p {p} ({k},{j}): {} vs {}", col[k], h[(k, j)]);
                }
            }
        }
    }

    fn herm(alg: &TracialAlgebra, fibers: Vec<CMat>) -> AlgebraElement {
        AlgebraElement::hermitian(alg.clone(), fibers).unwrap()
    }

    #[test]
    fn parameter_map_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_hermitian(&mut rng, 4);
        assert!(max_abs(&(from_params(&to_params(&a), 4) - &a)) < 1e-15);
        // gradient convention: Re tr(G B) = <grad_params(G), params(B)>
        let g = random_hermitian(&mut rng, 4);
        let lhs = (&g * &a).trace().re;
        assert!((lhs - grad_params(&g).dot(&to_params(&a))).abs() < 1e-12);
    }

    #[test]
    fn constant_psd_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let alg = TracialAlgebra::new(3, vec![0.5, 2.0]).unwrap();
        let fibers: Vec<CMat> = (0..2).map(|_| { let m = crate::linalg::random_gaussian(&mut rng, 3); m.adjoint() * m }).collect();
        let x = herm(&alg, fibers.iter().map(crate::linalg::hermitian_part).collect());
        for p in [1.0, 2.0, 3.0, f64::INFINITY] {
            let r = maximal_norm(&[x.clone(), x.clone()], p).unwrap();
            let expect = lp_norm(&x, p).unwrap();
            assert!((r.value - expect).abs() <= 1e-5 * expect, "p = {p}: {} vs {expect}", r.value);
        }
    }

    #[test]
    fn diagonal_family_reduces_to_classical_max() {
        let alg = TracialAlgebra::new(2, vec![1.0, 0.25]).unwrap();
        let diag = |a: f64, b: f64| CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![C64::new(a, 0.0), C64::new(b, 0.0)]));
        let x1 = herm(&alg, vec![diag(1.0, -3.0), diag(0.5, 0.2)]);
        let x2 = herm(&alg, vec![diag(-2.0, 1.0), diag(0.1, -0.7)]);
        let p = 1.5;
        let expect = (2f64.powf(p) + 3f64.powf(p) + 0.25 * (0.5f64.powf(p) + 0.7f64.powf(p))).powf(1.0 / p);
        let r = maximal_norm(&[x1, x2], p).unwrap();
        assert!((r.value - expect).abs() <= 1e-5 * expect);
    }

    #[test]
    fn rejects_non_hermitian_and_bad_p() {
        let x = AlgebraElement::single(CMat::from_row_slice(1, 1, &[C64::new(0.0, 1.0)])).unwrap();
        assert!(matches!(maximal_norm(&[x], 2.0), Err(Error::Domain(_))));
        let y = AlgebraElement::single_hermitian(CMat::identity(1, 1)).unwrap();
        assert!(maximal_norm(&[y.clone()], 0.5).is_err());
        assert!(maximal_norm_column(&[y], 1.5).is_err());
    }

    #[test]
    fn trace_csv_has_header_and_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = AlgebraElement::single_hermitian(random_hermitian(&mut rng, 2)).unwrap();
        let r = maximal_norm(&[x], 2.0).unwrap();
        let csv = r.trace_csv();
        assert!(csv.starts_with("fiber,outer"));
        assert_eq!(csv.lines().count(), r.trace.len() + 1);
    }
}
