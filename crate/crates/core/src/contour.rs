//! Contour integrals and numeric witnesses.
//!
//! * [`integral_approx_c`]: the approximate integral over the left half of
//!   `|z| = 5`, composite Gauss–Legendre in the angle.
//! * [`cauchy_oracle`]: the coefficient as a Cauchy integral in `x = e^{z/N} - 1`
//!   on a small circle, trapezoid rule. Independent of the exact pipeline.
//! * [`check_monotone_exponent`], [`check_lower_bound_inequality`],
//!   [`constant_c`], [`c_quadrature_check`]: sample-based checks of facts used
//!   in the error analysis.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rug::Float;

use crate::hp::{pairwise_sum, Complex};
use crate::saddle::SaddleData;
use crate::specfun::{dilog, exponent_rate, zeta_two};
use crate::{Error, Result};

/// Radius of the circle carrying the approximate integral.
pub const ARC_RADIUS: f64 = 5.0;

/// Relative node-doubling change above which an approximate integral is flagged.
pub const FLAG_TOLERANCE: f64 = 1e-10;

const PANEL_ORDER: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureRule {
    GaussLegendreComposite,
    TrapezoidPeriodic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub prec: u32,
    pub radius: f64,
    pub rule: QuadratureRule,
}

impl QuadratureSpec {
    pub fn new(nodes: usize, prec: u32, radius: f64, rule: QuadratureRule) -> Result<Self> {
        if nodes < 8 {
            return Err(Error::Precondition(format!("need at least 8 nodes, got {nodes}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Precondition(format!("radius must be positive, got {radius}")));
        }
        crate::check_precision(prec)?;
        Ok(QuadratureSpec { nodes, prec, radius, rule })
    }

    /// 128 Gauss–Legendre nodes on `|z| = 5`.
    pub fn arc(prec: u32) -> Result<Self> {
        Self::new(128, prec, ARC_RADIUS, QuadratureRule::GaussLegendreComposite)
    }

    /// 128 trapezoid nodes on `|x| = min(3/N, 1/2)` with enough bits for `N`.
    pub fn oracle(n: u32, prec: u32) -> Result<Self> {
        let radius = (3.0 / n.max(1) as f64).min(0.5);
        Self::new(128, prec.max(oracle_min_precision(n)), radius, QuadratureRule::TrapezoidPeriodic)
    }

    fn doubled(&self) -> Self {
        QuadratureSpec { nodes: 2 * self.nodes, ..self.clone() }
    }
}

/// A quadrature value together with `|value(nodes) - value(2 nodes)|`.
#[derive(Clone, Debug)]
pub struct OracleValue {
    pub value: Complex,
    pub node_doubling_delta: Float,
}

type Rule = Arc<Vec<(Float, Float)>>;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, cached per `(order, prec)`.
pub fn gauss_legendre(order: usize, prec: u32) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&(order, prec)) {
        return rule.clone();
    }
    let rule = Arc::new(legendre_rule(order, prec));
    cache.lock().unwrap().insert((order, prec), rule.clone());
    rule
}

fn legendre_eval(order: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=order {
        let a = Float::with_val(prec, x * &p1) * (2 * k - 1) as u32;
        let b = Float::with_val(prec, &p0 * (k - 1) as u32);
        let p2 = (a - b) / k as u32;
        p0 = p1;
        p1 = p2;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x² - 1)
    let x2m1 = Float::with_val(prec, x.square_ref()) - 1u32;
    let dp = (Float::with_val(prec, x * &p1) - &p0) * order as u32 / x2m1;
    (p1, dp)
}

fn legendre_rule(order: usize, prec: u32) -> Vec<(Float, Float)> {
    let wp = prec + 16;
    let pi = Complex::pi(wp);
    let tol = Float::with_val(wp, Float::i_exp(1, -(prec as i32) - 4));
    let mut half = Vec::with_capacity(order.div_ceil(2));
    for i in 1..=order.div_ceil(2) {
        let guess = Float::with_val(wp, &pi * (4 * i - 1) as u32) / (4 * order + 2) as u32;
        let mut x = guess.cos();
        let mut dp = Float::new(wp);
        for _ in 0..100 {
            let (p, d) = legendre_eval(order, &x, wp);
            let dx = Float::with_val(wp, &p / &d);
            x -= &dx;
            dp = d;
            if dx.abs() < tol {
                break;
            }
        }
        let (_, d) = legendre_eval(order, &x, wp);
        if d.is_finite() {
            dp = d;
        }
        let one_m_x2 = Float::with_val(wp, 1) - Float::with_val(wp, x.square_ref());
        let w = Float::with_val(wp, 2) / (one_m_x2 * Float::with_val(wp, dp.square_ref()));
        half.push((Float::with_val(prec, x), Float::with_val(prec, w)));
    }
    let mut rule: Vec<(Float, Float)> = half.iter().map(|(x, w)| (Float::with_val(prec, -x), w.clone())).collect();
    let skip = order % 2;
    rule.extend(half.iter().rev().skip(skip).cloned());
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// Composite Gauss–Legendre nodes (abscissa, weight) on `[lo, hi]`:
/// panels of 32 points, or one panel when `nodes ≤ 32`.
fn composite_nodes(lo: &Float, hi: &Float, nodes: usize, prec: u32) -> Vec<(Float, Float)> {
    let order = nodes.min(PANEL_ORDER);
    let panels = nodes.div_ceil(order);
    let rule = gauss_legendre(order, prec);
    let width = Float::with_val(prec, hi - lo) / panels as u32;
    let half = Float::with_val(prec, &width / 2u32);
    let mut out = Vec::with_capacity(order * panels);
    for k in 0..panels {
        let mid = Float::with_val(prec, &width * k as u32) + lo + &half;
        for (x, w) in rule.iter() {
            out.push((Float::with_val(prec, x * &half) + &mid, Float::with_val(prec, w * &half)));
        }
    }
    out
}

struct ArcNode {
    /// quadrature weight times `dz/dθ = i z`
    weight: Complex,
    z: Complex,
    log_neg_z: Complex,
    /// `-½ Ln(1 - e^z)`
    log_root: Complex,
    /// `(Li₂(e^z) - π²/6)/z`
    rate: Complex,
}

/// The parts of the approximate integrand that do not depend on `(l, N)`,
/// evaluated once per node on an arc of `|z| = 5`.
pub struct ArcIntegrand {
    prec: u32,
    nodes: Vec<ArcNode>,
}

impl ArcIntegrand {
    /// Nodes on `θ ∈ [lo, hi]`, `z = 5 e^{iθ}`.
    fn on_angles(lo: &Float, hi: &Float, nodes: usize, prec: u32) -> Result<Self> {
        let radius = Float::with_val(prec, ARC_RADIUS);
        let z2 = zeta_two(prec);
        let rule = composite_nodes(lo, hi, nodes, prec);
        let nodes = rule
            .par_iter()
            .map(|(theta, w)| {
                let z = Complex::from_polar(&radius, theta);
                let e = z.exp();
                let li2 = dilog(&e)?.value;
                let shifted = &li2 - &Complex::from_real(z2.clone());
                let one_minus = &Complex::one(prec) - &e;
                Ok(ArcNode {
                    weight: z.mul_i().scale(w),
                    log_neg_z: (-&z).ln(),
                    log_root: one_minus.ln().scale_f64(-0.5),
                    rate: &shifted / &z,
                    z,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ArcIntegrand { prec, nodes })
    }

    /// The upper quarter `θ ∈ [π/2, π]`.
    pub fn upper_quarter(nodes: usize, prec: u32) -> Result<Self> {
        let pi = Complex::pi(prec);
        Self::on_angles(&Float::with_val(prec, &pi / 2u32), &pi, nodes, prec)
    }

    /// The whole left half `θ ∈ [π/2, 3π/2]`.
    pub fn left_half(nodes: usize, prec: u32) -> Result<Self> {
        let pi = Complex::pi(prec);
        let lo = Float::with_val(prec, &pi / 2u32);
        let hi = Float::with_val(prec, &pi * 3u32) / 2u32;
        Self::on_angles(&lo, &hi, nodes, prec)
    }

    /// `∫ (-z)^{l-1/2}/√(1-e^z) · exp(z/N + N·rate(z)) dz` over the arc.
    pub fn integral(&self, l: u32, n: u32) -> Complex {
        let prec = self.prec;
        let power = Float::with_val(prec, l as f64 - 0.5);
        let inv_n = Float::with_val(prec, n).recip();
        let nf = Float::with_val(prec, n);
        let terms: Vec<Complex> = self
            .nodes
            .par_iter()
            .map(|node| {
                let exponent = &(&(&node.log_neg_z.scale(&power) + &node.log_root) + &node.z.scale(&inv_n))
                    + &node.rate.scale(&nf);
                &node.weight * &exponent.exp()
            })
            .collect();
        pairwise_sum(&terms, prec)
    }
}

/// `(-1)^{l-1} / (N^{l+1/2} (2π)^{3/2})`
fn integral_prefactor(l: u32, n: u32, prec: u32) -> Float {
    let two_pi = Float::with_val(prec, Complex::pi(prec) * 2u32);
    let denom = Float::with_val(prec, Float::with_val(prec, n).pow_ref_f64(l as f64 + 0.5))
        * two_pi.pow_ref_f64(1.5);
    let mut v = denom.recip();
    if l.is_multiple_of(2) {
        v = -v;
    }
    v
}

trait PowF64 {
    fn pow_ref_f64(&self, e: f64) -> Float;
}

impl PowF64 for Float {
    fn pow_ref_f64(&self, e: f64) -> Float {
        use rug::ops::Pow;
        let prec = self.prec();
        Float::with_val(prec, self.pow(&Float::with_val(prec, e)))
    }
}

/// Result of [`integral_approx_c`].
#[derive(Clone, Debug)]
pub struct ApproxIntegral {
    pub value: Float,
    pub node_doubling_delta: Float,
    /// Relative node-doubling change exceeded [`FLAG_TOLERANCE`].
    pub flagged: bool,
}

/// Evaluates the approximate integral for many `(l, N)` on fixed node sets.
pub struct IntegralEvaluator {
    coarse: ArcIntegrand,
    fine: ArcIntegrand,
}

impl IntegralEvaluator {
    pub fn new(spec: &QuadratureSpec) -> Result<Self> {
        if spec.rule != QuadratureRule::GaussLegendreComposite {
            return Err(Error::Precondition("the open arc needs the Gauss–Legendre rule".into()));
        }
        if spec.radius != ARC_RADIUS {
            return Err(Error::Precondition(format!("arc radius must be {ARC_RADIUS}, got {}", spec.radius)));
        }
        Ok(IntegralEvaluator {
            coarse: ArcIntegrand::upper_quarter(spec.nodes, spec.prec)?,
            fine: ArcIntegrand::upper_quarter(2 * spec.nodes, spec.prec)?,
        })
    }

    fn value_from(arc: &ArcIntegrand, l: u32, n: u32) -> Float {
        // the lower quarter contributes -conj of the upper one, and (U - conj U)/i = 2 Im U
        let u = arc.integral(l, n);
        Float::with_val(arc.prec, &u.im * 2u32) * integral_prefactor(l, n, arc.prec)
    }

    pub fn evaluate(&self, l: u32, n: u32) -> Result<ApproxIntegral> {
        if l == 0 || n == 0 {
            return Err(Error::Precondition("integral needs l >= 1 and N >= 1".into()));
        }
        let coarse = Self::value_from(&self.coarse, l, n);
        let fine = Self::value_from(&self.fine, l, n);
        let delta = Float::with_val(self.fine.prec, &fine - &coarse).abs();
        let converged = delta.to_f64() <= FLAG_TOLERANCE * fine.to_f64().abs();
        let flagged = !converged;
        Ok(ApproxIntegral { value: fine, node_doubling_delta: delta, flagged })
    }
}

/// The approximate integral representation of `C_{0,1,l}(N)` on `|z| = 5`.
pub fn integral_approx_c(l: u32, n: u32, spec: &QuadratureSpec) -> Result<ApproxIntegral> {
    IntegralEvaluator::new(spec)?.evaluate(l, n)
}

/// The same integral over the whole left half-circle without using symmetry,
/// returned as a complex number whose imaginary part should vanish.
pub fn integral_approx_c_full_arc(l: u32, n: u32, spec: &QuadratureSpec) -> Result<Complex> {
    if l == 0 || n == 0 {
        return Err(Error::Precondition("integral needs l >= 1 and N >= 1".into()));
    }
    let arc = ArcIntegrand::left_half(spec.nodes, spec.prec)?;
    let v = arc.integral(l, n);
    // divide by i
    let quotient = Complex::new(v.im.clone(), -v.re.clone());
    Ok(quotient.scale(&integral_prefactor(l, n, spec.prec)))
}

/// Bits required by [`cauchy_oracle`] at order `N`.
pub fn oracle_min_precision(n: u32) -> u32 {
    64 + (3 * n).div_ceil(2)
}

/// Largest admissible oracle radius: the distance from 0 to the nearest
/// other pole `e^{2πi/N} - 1`. Infinite for `N = 1`.
pub fn oracle_max_radius(n: u32) -> f64 {
    if n <= 1 {
        f64::INFINITY
    } else {
        2.0 * (std::f64::consts::PI / n as f64).sin()
    }
}

fn cauchy_sum(l: u32, n: u32, nodes: usize, radius: &Float, prec: u32) -> Complex {
    let two_pi = Float::with_val(prec, Complex::pi(prec) * 2u32);
    let terms: Vec<Complex> = (0..nodes)
        .into_par_iter()
        .map(|m| {
            let angle = Float::with_val(prec, &two_pi * m as u32) / nodes as u32;
            let x = Complex::from_polar(radius, &angle);
            let y = &Complex::one(prec) + &x;
            let mut yj = Complex::one(prec);
            let mut denom = Complex::one(prec);
            for _ in 0..n {
                yj = &yj * &y;
                denom = &denom * &(&Complex::one(prec) - &yj);
            }
            &x.powi(l as i64) / &denom
        })
        .collect();
    pairwise_sum(&terms, prec).scale_f64(1.0 / nodes as f64)
}

/// `(1/2πi) ∮ x^{l-1} ∏_{j=1}^N (1 - (1+x)^j)^{-1} dx` on `|x| = spec.radius`.
pub fn cauchy_oracle(l: u32, n: u32, spec: &QuadratureSpec) -> Result<OracleValue> {
    if l == 0 || n == 0 {
        return Err(Error::Precondition("oracle needs l >= 1 and N >= 1".into()));
    }
    if spec.rule != QuadratureRule::TrapezoidPeriodic {
        return Err(Error::Precondition("the closed circle uses the trapezoid rule".into()));
    }
    if spec.radius >= oracle_max_radius(n) {
        return Err(Error::Precondition(format!(
            "radius {} reaches the pole at distance {}",
            spec.radius,
            oracle_max_radius(n)
        )));
    }
    if spec.prec < oracle_min_precision(n) {
        return Err(Error::Precision { bits: spec.prec, min: oracle_min_precision(n) });
    }
    if spec.nodes as u64 <= n as u64 {
        return Err(Error::Precondition(format!("need more than N = {n} nodes, got {}", spec.nodes)));
    }
    let prec = spec.prec;
    let radius = Float::with_val(prec, spec.radius);
    let coarse = cauchy_sum(l, n, spec.nodes, &radius, prec);
    let fine = cauchy_sum(l, n, spec.doubled().nodes, &radius, prec);
    let delta = (&fine - &coarse).abs();
    Ok(OracleValue { value: fine, node_doubling_delta: delta })
}

/// Outcome of [`check_monotone_exponent`].
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneReport {
    pub monotone: bool,
    /// Indices `k` with `Re rate(path[k+1]) < Re rate(path[k])`.
    pub violations: Vec<usize>,
    pub values: Vec<f64>,
}

/// Whether `Re((Li₂(e^z) - π²/6)/z)` is non-decreasing along `path`.
pub fn check_monotone_exponent(path: &[Complex]) -> Result<MonotoneReport> {
    for z in path {
        if z.re > 0 || z.is_zero() {
            return Err(Error::Precondition(format!("path point {} needs Re z <= 0, z != 0", z.with_prec(64))));
        }
    }
    let rates = path.par_iter().map(exponent_rate).collect::<Result<Vec<_>>>()?;
    let violations: Vec<usize> =
        rates.windows(2).enumerate().filter(|(_, w)| w[1].re < w[0].re).map(|(k, _)| k).collect();
    Ok(MonotoneReport {
        monotone: violations.is_empty(),
        violations,
        values: rates.iter().map(|r| r.re.to_f64()).collect(),
    })
}

/// `samples` equally spaced points from `from` to `to`, both included.
pub fn segment(from: &Complex, to: &Complex, samples: usize) -> Vec<Complex> {
    let step = &(to - from).scale_f64(1.0 / (samples.max(2) - 1) as f64);
    (0..samples).map(|k| from + &step.scale_f64(k as f64)).collect()
}

/// The straight segment from `5i` to the saddle point.
pub fn segment_to_saddle(sd: &SaddleData, samples: usize) -> Vec<Complex> {
    let prec = sd.prec();
    segment(&Complex::from_f64(prec, 0.0, ARC_RADIUS), sd.z0(), samples)
}

/// Inequality `1 + e^{2xr} - 2cos(5x)e^{xr} ≥ s·(11x²/12)(r² + 25)` on every
/// grid point `(x, r)`, `x ∈ (0, 1/10]`, `r ∈ [-1, 0]`. `s = 1` is the claim;
/// other scales exist to test the detector.
pub fn check_lower_bound_inequality(grid: &[(f64, f64)], rhs_scale: f64) -> Result<bool> {
    for &(x, r) in grid {
        if !(x > 0.0 && x <= 0.1) || !(-1.0..=0.0).contains(&r) {
            return Err(Error::Precondition(format!("grid point ({x}, {r}) outside (0, 0.1] x [-1, 0]")));
        }
    }
    Ok(grid.iter().all(|&(x, r)| inequality_margin(x, r, rhs_scale) >= 0.0))
}

/// Left side minus right side; the left side is written as
/// `expm1(xr)² + 4 e^{xr} sin²(5x/2)` to keep digits for small `x`.
pub fn inequality_margin(x: f64, r: f64, rhs_scale: f64) -> f64 {
    let e = (x * r).exp_m1();
    let s = (2.5 * x).sin();
    let lhs = e * e + 4.0 * (x * r).exp() * s * s;
    let rhs = rhs_scale * 11.0 * x * x / 12.0 * (r * r + 25.0);
    lhs - rhs
}

/// Default witness grid: `x` in steps of 0.0025 up to 0.1, `r` in steps of 0.025 on `[-0.5, 0]`.
pub fn default_inequality_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::new();
    for i in 1..=40 {
        for k in 0..=20 {
            grid.push((0.0025 * i as f64, -0.025 * k as f64));
        }
    }
    grid
}

/// The constant `c` with the imaginary residue of its closed form.
#[derive(Clone, Debug)]
pub struct ConstantC {
    pub value: Float,
    pub imag_residue: Float,
}

/// `c = (1/40)(99i + 8 ln(1-e^{i/2}) - 80 ln(1-e^{5i}) - 4 ln(1-cos ½) + 40 ln(1-cos 5)
///      - 16i Li₂(e^{i/2}) + 16i Li₂(e^{5i}))`.
pub fn constant_c(prec: u32) -> Result<ConstantC> {
    crate::check_precision(prec)?;
    let wp = prec + 32;
    let one = Complex::one(wp);
    let unit = |t: f64| Complex::from_polar(&Float::with_val(wp, 1), &Float::with_val(wp, t));
    let (wh, w5) = (unit(0.5), unit(5.0));
    let ln1m = |w: &Complex| (&one - w).ln();
    let ln1m_cos = |t: f64| {
        let c = Float::with_val(wp, t).cos();
        Complex::from_real(Float::with_val(wp, 1) - c).ln()
    };
    let li_h = dilog(&wh)?.value;
    let li_5 = dilog(&w5)?.value;
    let sum = [
        Complex::from_f64(wp, 0.0, 99.0),
        ln1m(&wh).scale_f64(8.0),
        ln1m(&w5).scale_f64(-80.0),
        ln1m_cos(0.5).scale_f64(-4.0),
        ln1m_cos(5.0).scale_f64(40.0),
        li_h.mul_i().scale_f64(-16.0),
        li_5.mul_i().scale_f64(16.0),
    ];
    let total = pairwise_sum(&sum, wp).scale_f64(1.0 / 40.0);
    let mut tol = Float::with_val(wp, 1);
    tol >>= prec / 2;
    if Float::with_val(wp, total.im.abs_ref()) >= tol {
        return Err(Error::Check(format!("c has imaginary part {}", total.im.to_f64())));
    }
    Ok(ConstantC { value: Float::with_val(prec, &total.re), imag_residue: Float::with_val(prec, &total.im) })
}

/// Quadrature side of the constant check.
#[derive(Clone, Copy, Debug)]
pub struct CQuadrature {
    pub n: u32,
    /// `∫_{⌊N/10⌋}^{N+1} -ln(1 - cos(5x/N)) dx`
    pub integral: f64,
    /// `-c N` from the closed form
    pub minus_cn: f64,
    pub rel_diff: f64,
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Integrates `-ln(1 - cos(5x/N))` over `[⌊N/10⌋, N+1]` by adaptive Simpson
/// and compares with `-cN`. They agree up to `O(1)`.
pub fn c_quadrature_check(n: u32) -> Result<CQuadrature> {
    if n < 10 {
        return Err(Error::Precondition("the check needs N >= 10".into()));
    }
    let nf = n as f64;
    let f = |x: f64| -(-(5.0 * x / nf).cos()).ln_1p();
    let (a, b) = ((n / 10) as f64, nf + 1.0);
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let integral = adaptive_simpson(&f, a, b, fa, fm, fb, whole, 1e-9, 40);
    let c = constant_c(128)?.value.to_f64();
    let minus_cn = -c * nf;
    Ok(CQuadrature { n, integral, minus_cn, rel_diff: (integral - minus_cn) / minus_cn.abs() })
}
