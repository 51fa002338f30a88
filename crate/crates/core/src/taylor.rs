//! Per-step local objects: derivatives of the local solution, its Taylor
//! polynomial `l_i`, the order-`r` Taylor map `w_i` of `f`, the exact
//! integral of `w_i(l_i(t))`, and the rescaled residual integrand `g_i`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::poly::{add_assign_scalar_poly, integrate_scalar_poly, mul_scalar_poly, VecPolynomial};
use crate::problem::{eval_partial, multi_indices, CostLedger, IvpProblem};
use crate::quad::Integrand;

/// Dense partial-derivative tensors `f^{(j)}(y)` for `j = 0..=order`.
///
/// `raw[j]` holds `dim * dim^j` entries laid out as
/// `[component][v_1][v_2]...[v_j]`, row-major.
#[derive(Debug, Clone, PartialEq)]
struct DerivTensors {
    dim: usize,
    raw: Vec<Vec<f64>>,
}

impl DerivTensors {
    /// Fetch every distinct partial of order `<= order` exactly once.
    fn fetch(problem: &IvpProblem, y: &[f64], order: usize, ledger: &CostLedger) -> Result<Self> {
        let d = problem.dim();
        let mut raw = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut distinct: HashMap<Vec<usize>, Vec<f64>> = HashMap::new();
            for vars in multi_indices(d, j) {
                let vals = (0..d)
                    .map(|c| eval_partial(problem, y, c, &vars, ledger))
                    .collect::<Result<Vec<_>>>()?;
                distinct.insert(vars, vals);
            }
            let width = d.pow(j as u32);
            let mut tensor = vec![0.0; d * width];
            let mut tuple = vec![0usize; j];
            for flat in 0..width {
                let mut rem = flat;
                for slot in tuple.iter_mut().rev() {
                    *slot = rem % d;
                    rem /= d;
                }
                let mut key = tuple.clone();
                key.sort_unstable();
                let vals = &distinct[&key];
                for c in 0..d {
                    tensor[c * width + flat] = vals[c];
                }
            }
            raw.push(tensor);
        }
        Ok(Self { dim: d, raw })
    }
}

/// Contract the trailing index of a tensor (with a leading component index)
/// against `v`.
fn contract_trailing(tensor: &[f64], dim: usize, v: &[f64]) -> Vec<f64> {
    let rows = tensor.len() / dim;
    (0..rows)
        .map(|row| {
            tensor[row * dim..(row + 1) * dim]
                .iter()
                .zip(v)
                .map(|(t, x)| t * x)
                .sum()
        })
        .collect()
}

/// `T(v_1, ..., v_j)` for an order-`j` tensor; returns one value per component.
fn multilinear(tensor: &[f64], dim: usize, args: &[&[f64]]) -> Vec<f64> {
    let mut cur = tensor.to_vec();
    for v in args.iter().rev() {
        cur = contract_trailing(&cur, dim, v);
    }
    cur
}

/// `w(y) = sum_{j<=r} f^{(j)}(center) (y - center)^j / j!`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorMap {
    dim: usize,
    order: usize,
    center: Vec<f64>,
    /// `tensors[j] = f^{(j)}(center) / j!`, same layout as the raw tensors.
    tensors: Vec<Vec<f64>>,
}

impl TaylorMap {
    fn from_raw(center: &[f64], raw: &DerivTensors, order: usize) -> Self {
        let mut fact = 1.0;
        let tensors = raw.raw[..=order]
            .iter()
            .enumerate()
            .map(|(j, t)| {
                if j > 0 {
                    fact *= j as f64;
                }
                t.iter().map(|x| x / fact).collect()
            })
            .collect();
        Self {
            dim: raw.dim,
            order,
            center: center.to_vec(),
            tensors,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Coefficient tensor of order `j` (already divided by `j!`).
    pub fn tensor(&self, j: usize) -> &[f64] {
        &self.tensors[j]
    }

    pub fn eval(&self, y: &[f64]) -> Vec<f64> {
        let mut out = self.tensors[0].clone();
        if self.order == 0 {
            return out;
        }
        let delta: Vec<f64> = y.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        for j in 1..=self.order {
            let args = vec![delta.as_slice(); j];
            let term = multilinear(&self.tensors[j], self.dim, &args);
            for (o, t) in out.iter_mut().zip(term) {
                *o += t;
            }
        }
        out
    }
}

/// Chain-rule recurrence for `zbar^{(k)}(x_i)`, `k = 0..=upto`, from raw
/// derivative tensors of `f` at `y` (needs orders `0..upto`).
fn derivatives_from_tensors(y: &[f64], t: &DerivTensors, upto: usize) -> Vec<Vec<f64>> {
    let d = t.dim;
    let mut out = vec![y.to_vec()];
    if upto == 0 {
        return out;
    }
    let z1 = t.raw[0].clone();
    out.push(z1.clone());
    if upto >= 2 {
        // z'' = f'(z')
        out.push(multilinear(&t.raw[1], d, &[&z1]));
    }
    if upto >= 3 {
        // z''' = f''(z', z') + f'(z'')
        let z2 = out[2].clone();
        let a = multilinear(&t.raw[2], d, &[&z1, &z1]);
        let b = multilinear(&t.raw[1], d, &[&z2]);
        out.push(a.iter().zip(&b).map(|(x, y)| x + y).collect());
    }
    if upto >= 4 {
        // z'''' = f'''(z', z', z') + 3 f''(z'', z') + f'(z''')
        let z2 = out[2].clone();
        let z3 = out[3].clone();
        let a = multilinear(&t.raw[3], d, &[&z1, &z1, &z1]);
        let b = multilinear(&t.raw[2], d, &[&z2, &z1]);
        let c = multilinear(&t.raw[1], d, &[&z3]);
        out.push((0..d).map(|i| a[i] + 3.0 * b[i] + c[i]).collect());
    }
    out
}

/// `[zbar(x_i), zbar'(x_i), ..., zbar^{(upto)}(x_i)]` for the local solution
/// through `y`. Each needed partial of `f` is fetched once.
pub fn local_derivatives(
    problem: &IvpProblem,
    y: &[f64],
    upto: usize,
    ledger: &CostLedger,
) -> Result<Vec<Vec<f64>>> {
    let r = problem.smoothness().r();
    if upto > r + 1 {
        return Err(Error::contract(format!(
            "solution derivatives up to order {upto} need f in C^{}, class has r = {r}",
            upto - 1
        )));
    }
    if upto == 0 {
        return Ok(vec![y.to_vec()]);
    }
    let tensors = DerivTensors::fetch(problem, y, upto - 1, ledger)?;
    Ok(derivatives_from_tensors(y, &tensors, upto))
}

/// `l(t) = sum_j derivs[j] (t - x_i)^j / j!`.
pub fn build_l(derivs: &[Vec<f64>], x_i: f64) -> Result<VecPolynomial> {
    let Some(first) = derivs.first() else {
        return Err(Error::contract("no derivatives supplied"));
    };
    let dim = first.len();
    if derivs.iter().any(|v| v.len() != dim) {
        return Err(Error::contract("derivative vectors have different lengths"));
    }
    let mut coeffs = vec![Vec::with_capacity(derivs.len()); dim];
    let mut fact = 1.0;
    for (j, dj) in derivs.iter().enumerate() {
        if j > 0 {
            fact *= j as f64;
        }
        for (c, v) in dj.iter().enumerate() {
            coeffs[c].push(v / fact);
        }
    }
    VecPolynomial::new(x_i, coeffs)
}

/// Order-`r` Taylor map of `f` about `y`.
pub fn build_w(problem: &IvpProblem, y: &[f64], ledger: &CostLedger) -> Result<TaylorMap> {
    let r = problem.smoothness().r();
    let tensors = DerivTensors::fetch(problem, y, r, ledger)?;
    Ok(TaylorMap::from_raw(y, &tensors, r))
}

/// The three Taylor objects of one step, built from a single derivative fetch.
#[derive(Debug, Clone)]
pub struct StepObjects {
    pub derivs: Vec<Vec<f64>>,
    pub l: VecPolynomial,
    pub w: TaylorMap,
}

/// `local_derivatives(.., r + 1)`, `build_l` and `build_w` sharing one fetch of
/// the partials of order `<= r`.
pub fn step_objects(problem: &IvpProblem, y: &[f64], x_i: f64, ledger: &CostLedger) -> Result<StepObjects> {
    let r = problem.smoothness().r();
    let tensors = DerivTensors::fetch(problem, y, r, ledger)?;
    let derivs = derivatives_from_tensors(y, &tensors, r + 1);
    let l = build_l(&derivs, x_i)?;
    let w = TaylorMap::from_raw(y, &tensors, r);
    Ok(StepObjects { derivs, l, w })
}

/// Coefficients of `w(l(base + s))` in powers of `s`, one list per component.
pub fn compose(w: &TaylorMap, l: &VecPolynomial) -> Result<Vec<Vec<f64>>> {
    let d = w.dim;
    if l.dim() != d {
        return Err(Error::contract("Taylor map and polynomial dimensions differ"));
    }
    let shift: Vec<Vec<f64>> = l
        .coeffs()
        .iter()
        .zip(&w.center)
        .map(|(c, y)| {
            let mut c = c.clone();
            c[0] -= y;
            c
        })
        .collect();
    let mut out: Vec<Vec<f64>> = w.tensors[0].iter().map(|v| vec![*v]).collect();
    for j in 1..=w.order {
        // polynomial-valued tensor, contracted one trailing index at a time
        let mut cur: Vec<Vec<f64>> = w.tensors[j].iter().map(|v| vec![*v]).collect();
        for _ in 0..j {
            let rows = cur.len() / d;
            cur = (0..rows)
                .map(|row| {
                    let mut acc = Vec::new();
                    for v in 0..d {
                        let prod = mul_scalar_poly(&cur[row * d + v], &shift[v]);
                        add_assign_scalar_poly(&mut acc, &prod, 1.0);
                    }
                    acc
                })
                .collect();
        }
        for (o, p) in out.iter_mut().zip(&cur) {
            add_assign_scalar_poly(o, p, 1.0);
        }
    }
    Ok(out)
}

/// `int_{x_i}^{x_next} w(l(t)) dt`, by exact polynomial composition.
pub fn integrate_w_of_l(w: &TaylorMap, l: &VecPolynomial, x_i: f64, x_next: f64) -> Result<Vec<f64>> {
    if !(x_next > x_i) {
        return Err(Error::contract(format!("empty step [{x_i}, {x_next}]")));
    }
    let composed = compose(w, l)?;
    let s0 = x_i - l.base();
    let s1 = x_next - l.base();
    Ok(composed
        .iter()
        .map(|c| integrate_scalar_poly(c, s1) - integrate_scalar_poly(c, s0))
        .collect())
}

/// `int_0^h w(l(base + s)) ds`; the solver's form, where `l` is centered at
/// the left end of the step.
pub fn integrate_w_of_l_over_step(w: &TaylorMap, l: &VecPolynomial, h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(Error::contract(format!("step size {h} is not positive")));
    }
    Ok(compose(w, l)?
        .iter()
        .map(|c| integrate_scalar_poly(c, h))
        .collect())
}

/// `g(u) = ( f(l(x_i + u h)) - w(l(x_i + u h)) ) / h^{r + rho}` on `[0, 1]`.
///
/// Each evaluation costs one `f` call; `w` is evaluated from stored tensors.
#[derive(Debug)]
pub struct ResidualIntegrand {
    problem: IvpProblem,
    w: TaylorMap,
    l: VecPolynomial,
    h: f64,
    scale: f64,
    evals: AtomicU64,
}

impl ResidualIntegrand {
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn w(&self) -> &TaylorMap {
        &self.w
    }

    pub fn l(&self) -> &VecPolynomial {
        &self.l
    }

    /// `h^{r + rho}`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Number of `f` evaluations made through this integrand so far.
    pub fn evaluations(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }
}

impl Integrand for ResidualIntegrand {
    fn dim(&self) -> usize {
        self.w.dim
    }

    fn eval(&self, u: f64) -> Result<Vec<f64>> {
        let y = self.l.eval_offset(u * self.h);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain(format!("local polynomial is not finite at u = {u}")));
        }
        self.evals.fetch_add(1, Ordering::Relaxed);
        let fy = self.problem.rhs().value(&y);
        let wy = self.w.eval(&y);
        let out: Vec<f64> = fy.iter().zip(&wy).map(|(f, w)| (f - w) / self.scale).collect();
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain(format!("residual integrand is not finite at u = {u}")));
        }
        Ok(out)
    }
}

/// Residual integrand of the step starting at `x_i` (where `l` is centered).
pub fn residual(problem: &IvpProblem, w: TaylorMap, l: VecPolynomial, x_i: f64, h: f64) -> Result<ResidualIntegrand> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::contract(format!("step size {h} is not positive")));
    }
    if l.base() != x_i {
        return Err(Error::contract("local polynomial is not centered at the step start"));
    }
    let s = problem.smoothness();
    Ok(ResidualIntegrand {
        problem: problem.clone(),
        w,
        l,
        h,
        scale: h.powf(s.r() as f64 + s.rho()),
        evals: AtomicU64::new(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::catalog;

    fn ledger() -> CostLedger {
        CostLedger::new()
    }

    #[test]
    fn local_derivatives_identity() {
        let p = catalog("scalar-exponential", 1, 1.0).unwrap();
        let d = local_derivatives(&p, &[2.0], 2, &ledger()).unwrap();
        assert_eq!(d, vec![vec![2.0], vec![2.0], vec![2.0]]);
    }

    #[test]
    fn local_derivatives_quadratic() {
        let p = catalog("scalar-quadratic", 1, 1.0).unwrap();
        let d = local_derivatives(&p, &[1.0], 2, &ledger()).unwrap();
        assert_eq!(d, vec![vec![1.0], vec![1.0], vec![2.0]]);
    }

    #[test]
    fn local_derivatives_constant_rhs() {
        let p = catalog("integration-reduction(poly:0.75)", 1, 1.0).unwrap();
        let y = [0.3, -0.2];
        let d = local_derivatives(&p, &y, 2, &ledger()).unwrap();
        assert_eq!(d, vec![vec![0.3, -0.2], vec![1.0, 0.75], vec![0.0, 0.0]]);
    }

    #[test]
    fn local_derivatives_rejects_too_high_order() {
        let p = catalog("scalar-exponential", 1, 1.0).unwrap();
        assert!(matches!(
            local_derivatives(&p, &[1.0], 3, &ledger()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn local_derivatives_fetch_each_partial_once() {
        // d = 2, orders 0..=2: 1 + 2 + 3 distinct multi-indices, 2 components each
        let p = catalog("lotka-volterra", 2, 1.0).unwrap();
        let l = ledger();
        local_derivatives(&p, &[1.0, 1.0], 3, &l).unwrap();
        assert_eq!(l.snapshot().classical_evals, 12);
    }

    #[test]
    fn local_derivatives_match_exact_harmonic_solution() {
        // through (cos s, sin s): derivatives cycle (-sin, cos), (-cos, -sin), (sin, -cos)
        let p = catalog("harmonic", 3, 1.0).unwrap();
        let s: f64 = 0.4;
        let d = local_derivatives(&p, &[s.cos(), s.sin()], 4, &ledger()).unwrap();
        let expect = [
            [s.cos(), s.sin()],
            [-s.sin(), s.cos()],
            [-s.cos(), -s.sin()],
            [s.sin(), -s.cos()],
            [s.cos(), s.sin()],
        ];
        for (got, want) in d.iter().zip(expect) {
            assert!((got[0] - want[0]).abs() < 1e-15 && (got[1] - want[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn local_derivatives_quadratic_fourth_order() {
        // zbar = 1/(c - t) through y: zbar^{(k)} = k! y^{k+1}
        let p = catalog("scalar-quadratic", 3, 1.0).unwrap();
        let y = 1.3f64;
        let d = local_derivatives(&p, &[y], 4, &ledger()).unwrap();
        let mut fact = 1.0;
        for (k, dk) in d.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            let want = fact * y.powi(k as i32 + 1);
            assert!((dk[0] - want).abs() < 1e-12 * want, "k={k}");
        }
    }

    #[test]
    fn build_l_examples() {
        let l = build_l(&[vec![1.0], vec![1.0], vec![1.0]], 0.25).unwrap();
        assert_eq!(l.coeffs()[0], vec![1.0, 1.0, 0.5]);
        assert_eq!(l.base(), 0.25);

        let l = build_l(&[vec![2.0], vec![-3.0], vec![0.0]], 0.0).unwrap();
        assert_eq!(l.eval(0.5), vec![0.5]);

        let l = build_l(&[vec![0.0], vec![0.0], vec![0.0]], 1.0).unwrap();
        assert_eq!(l.eval(1.7), vec![0.0]);
    }

    #[test]
    fn build_l_rejects_bad_input() {
        assert!(build_l(&[], 0.0).is_err());
        assert!(build_l(&[vec![1.0], vec![1.0, 2.0]], 0.0).is_err());
    }

    #[test]
    fn build_w_examples() {
        let p = catalog("scalar-exponential", 0, 1.0).unwrap();
        let w = build_w(&p, &[1.0], &ledger()).unwrap();
        assert_eq!(w.eval(&[5.0]), vec![1.0]);

        let p = catalog("scalar-exponential", 1, 1.0).unwrap();
        let w = build_w(&p, &[1.0], &ledger()).unwrap();
        assert_eq!(w.eval(&[3.5]), vec![3.5]);

        let p = catalog("scalar-quadratic", 1, 1.0).unwrap();
        let w = build_w(&p, &[1.0], &ledger()).unwrap();
        assert_eq!(w.eval(&[1.5]), vec![1.0 + 2.0 * 0.5]);
    }

    #[test]
    fn build_w_centering_is_exact() {
        for name in ["scalar-exponential", "scalar-quadratic", "logistic", "harmonic", "lotka-volterra", "integration-reduction(cos-pi)"] {
            for r in 0..=3 {
                let p = catalog(name, r, 1.0).unwrap();
                let y: Vec<f64> = (0..p.dim()).map(|k| 0.37 + 0.11 * k as f64).collect();
                let w = build_w(&p, &y, &ledger()).unwrap();
                assert_eq!(w.eval(&y), p.rhs().value(&y), "{name} r={r}");
            }
        }
    }

    #[test]
    fn taylor_tensors_are_symmetric() {
        let p = catalog("lotka-volterra", 3, 1.0).unwrap();
        let w = build_w(&p, &[1.1, 0.6], &ledger()).unwrap();
        let t2 = w.tensor(2);
        // [component][v1][v2], d = 2
        for c in 0..2 {
            assert_eq!(t2[c * 4 + 1], t2[c * 4 + 2]);
        }
        assert_eq!(t2[1], -0.5);
    }

    #[test]
    fn taylor_map_reproduces_quadratic_exactly() {
        let p = catalog("lotka-volterra", 2, 1.0).unwrap();
        let center = [1.2, 0.4];
        let w = build_w(&p, &center, &ledger()).unwrap();
        let y = [0.3, 2.1];
        let exact = p.rhs().value(&y);
        let got = w.eval(&y);
        for k in 0..2 {
            assert!((exact[k] - got[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn integrate_w_of_l_examples() {
        let p = catalog("scalar-exponential", 0, 1.0).unwrap();
        let w = build_w(&p, &[1.0], &ledger()).unwrap();
        let l = build_l(&[vec![1.0], vec![1.0]], 0.0).unwrap();
        assert!((integrate_w_of_l(&w, &l, 0.0, 0.1).unwrap()[0] - 0.1).abs() < 1e-16);

        let p = catalog("scalar-exponential", 1, 1.0).unwrap();
        let w = build_w(&p, &[1.0], &ledger()).unwrap();
        let l = build_l(&[vec![1.0], vec![1.0], vec![1.0]], 0.0).unwrap();
        let got = integrate_w_of_l(&w, &l, 0.0, 0.1).unwrap()[0];
        let want = 0.1 + 0.005 + 1e-3 / 6.0;
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");

        let zero = build_l(&[vec![0.0], vec![0.0], vec![0.0]], 0.0).unwrap();
        let w0 = build_w(&p, &[0.0], &ledger()).unwrap();
        assert_eq!(integrate_w_of_l(&w0, &zero, 0.0, 0.3).unwrap()[0], 0.0);
    }

    #[test]
    fn integrate_w_of_l_rejects_empty_step() {
        let p = catalog("scalar-exponential", 0, 1.0).unwrap();
        let w = build_w(&p, &[1.0], &ledger()).unwrap();
        let l = build_l(&[vec![1.0], vec![1.0]], 0.0).unwrap();
        assert!(integrate_w_of_l(&w, &l, 0.5, 0.5).is_err());
    }

    #[test]
    fn integrate_w_of_l_charges_nothing() {
        let p = catalog("harmonic", 2, 1.0).unwrap();
        let l_ = ledger();
        let obj = step_objects(&p, &[1.0, 0.0], 0.0, &l_).unwrap();
        let before = l_.snapshot();
        integrate_w_of_l(&obj.w, &obj.l, 0.0, 0.1).unwrap();
        assert_eq!(l_.snapshot(), before);
    }

    #[test]
    fn composition_matches_pointwise_evaluation() {
        let p = catalog("lotka-volterra", 3, 1.0).unwrap();
        let obj = step_objects(&p, &[1.4, 0.6], 0.0, &ledger()).unwrap();
        let comp = compose(&obj.w, &obj.l).unwrap();
        for &s in &[0.0, 0.05, 0.13, 0.3] {
            let direct = obj.w.eval(&obj.l.eval_offset(s));
            for c in 0..2 {
                let via: f64 = comp[c].iter().rev().fold(0.0, |a, k| a * s + k);
                assert!((via - direct[c]).abs() < 1e-13, "s={s} c={c}");
            }
        }
        // degree of w o l is at most r (r + 1)
        assert!(comp.iter().all(|c| c.len() <= 3 * 4 + 1));
    }

    #[test]
    fn residual_identity_r0_is_u() {
        let p = catalog("scalar-exponential", 0, 1.0).unwrap();
        for &h in &[0.5, 0.1, 0.01] {
            let obj = step_objects(&p, &[1.0], 0.0, &ledger()).unwrap();
            let g = residual(&p, obj.w, obj.l, 0.0, h).unwrap();
            for &u in &[0.0, 0.25, 0.5, 1.0] {
                assert!((g.eval(u).unwrap()[0] - u).abs() < 1e-13);
            }
            assert_eq!(g.evaluations(), 4);
        }
    }

    #[test]
    fn residual_vanishes_for_polynomial_rhs() {
        for (name, r) in [
            ("scalar-exponential", 1),
            ("harmonic", 1),
            ("scalar-quadratic", 2),
            ("lotka-volterra", 2),
            ("integration-reduction(poly:1;-2;0.5)", 2),
        ] {
            let p = catalog(name, r, 1.0).unwrap();
            let y: Vec<f64> = (0..p.dim()).map(|k| 1.0 + 0.1 * k as f64).collect();
            let obj = step_objects(&p, &y, 0.0, &ledger()).unwrap();
            let g = residual(&p, obj.w, obj.l, 0.0, 0.1).unwrap();
            for &u in &[0.0, 0.3, 0.9] {
                assert!(g.eval(u).unwrap().iter().all(|v| v.abs() < 1e-10), "{name}");
            }
        }
    }

    #[test]
    fn residual_rejects_non_positive_step() {
        let p = catalog("scalar-exponential", 0, 1.0).unwrap();
        let obj = step_objects(&p, &[1.0], 0.0, &ledger()).unwrap();
        assert!(residual(&p, obj.w.clone(), obj.l.clone(), 0.0, 0.0).is_err());
        assert!(residual(&p, obj.w, obj.l, 0.0, -0.1).is_err());
    }
}
