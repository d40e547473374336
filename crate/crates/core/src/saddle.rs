//! The saddle point `z₀` of the exponent rate `(Li₂(e^z) - π²/6)/z` and the
//! closed-form asymptotics built from it:
//!
//! ```text
//! C_{0,1,l}(N) ≈ b^N N^{-l-1} H_l(N),   b = 1/|1 - e^{z₀}|,
//! H_l(N) = ((-1)^{l-1}/π) √(1/α) (Im W_l cos(Nθ) - Re W_l sin(Nθ)),
//! W_l = ρ (-z₀)^{l-1/2} / √(1 - e^{z₀}),   θ = arg(1 - e^{z₀}).
//! ```

use rug::ops::Pow;
use rug::Float;

use crate::hp::{pairwise_sum, Complex};
use crate::specfun::{phi, phi_with_derivative};
use crate::{Error, Result};

/// Approximate location of the saddle point in the upper half plane.
pub const SADDLE_GUESS: (f64, f64) = (-1.61, 7.42);

/// Radius around [`SADDLE_GUESS`] (or its conjugate) in which the root is unique.
pub const UNIQUENESS_RADIUS: f64 = 1.0;

const MAX_NEWTON_ITERATIONS: usize = 100;
const DIVERGENCE_RADIUS: f64 = 2.0;

pub fn default_initial(prec: u32) -> Complex {
    Complex::from_f64(prec, SADDLE_GUESS.0, SADDLE_GUESS.1)
}

fn pow2(exp: i32, prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, exp))
}

/// Newton iteration on `φ` started at `initial`.
///
/// Returns `z₀` with `|φ(z₀)| < 2^{-(prec-16)}`. `initial` must lie within
/// distance 1 of `-1.61 ± 7.42i`; iterates may not leave the disk of radius 2
/// around `initial`. A step that does not decrease `|φ|` is halved.
pub fn solve_saddle(prec: u32, initial: &Complex) -> Result<Complex> {
    crate::check_precision(prec)?;
    let guess = default_initial(prec);
    let near_upper = (initial - &guess).abs() <= UNIQUENESS_RADIUS;
    let near_lower = (initial - &guess.conj()).abs() <= UNIQUENESS_RADIUS;
    if !(near_upper || near_lower) {
        return Err(Error::Precondition(format!(
            "initial point {} is not within {UNIQUENESS_RADIUS} of -1.61 ± 7.42i",
            initial
        )));
    }

    let wp = prec + 32;
    let start = initial.with_prec(wp);
    let mut z = start.clone();
    let target = pow2(-(prec as i32 + 8), wp);
    let accept = pow2(-(prec as i32 - 16), wp);

    let (mut f, mut df) = phi_with_derivative(&z)?;
    let mut converged = false;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let size = f.abs();
        if size < target {
            converged = true;
            break;
        }
        let step = &f / &df;
        let mut scale = 1.0;
        let mut improved = false;
        while scale > 1e-9 {
            let cand = &z - &step.scale_f64(scale);
            if (&cand - &start).abs() > DIVERGENCE_RADIUS {
                return Err(Error::NoConvergence(format!(
                    "iterate {} left the disk of radius {DIVERGENCE_RADIUS} around the start",
                    cand.with_prec(64)
                )));
            }
            let (fc, dfc) = phi_with_derivative(&cand)?;
            if fc.abs() < size {
                z = cand;
                f = fc;
                df = dfc;
                improved = true;
                break;
            }
            scale /= 2.0;
        }
        if !improved {
            // rounding floor: no step can reduce |φ| further
            converged = size < accept;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "|φ| = {} after {MAX_NEWTON_ITERATIONS} iterations",
            f.abs().to_f64()
        )));
    }

    let z0 = z.with_prec(prec);
    let residual = phi(&z0)?.abs();
    if residual >= pow2(-(prec as i32 - 16), prec) {
        return Err(Error::NoConvergence(format!("residual {} after rounding", residual.to_f64())));
    }
    Ok(z0)
}

/// Every constant of the asymptotic formula, derived from `z₀`.
#[derive(Clone, Debug)]
pub struct SaddleData {
    z0: Complex,
    rho: Complex,
    a: Float,
    b: Float,
    alpha: Float,
    alpha_imag: Float,
    p: Float,
    theta: Float,
    /// `1 - e^{z₀}`
    one_minus_w: Complex,
    /// `-z₀(1 - e^{z₀})/(ρ² e^{z₀}) = 1/α`
    radicand: Complex,
}

impl SaddleData {
    /// Solves for `z₀` from the default guess and derives the constants.
    pub fn compute(prec: u32) -> Result<Self> {
        let z0 = solve_saddle(prec, &default_initial(prec))?;
        saddle_constants(&z0)
    }

    pub fn prec(&self) -> u32 {
        self.z0.prec()
    }

    pub fn z0(&self) -> &Complex {
        &self.z0
    }

    /// Direction of steepest descent `ρ = e^{ia}`.
    pub fn rho(&self) -> &Complex {
        &self.rho
    }

    pub fn a(&self) -> &Float {
        &self.a
    }

    /// Exponential growth base `b = 1/|1 - e^{z₀}|`.
    pub fn b(&self) -> &Float {
        &self.b
    }

    /// `Re(-ρ² e^{z₀}/(z₀(1 - e^{z₀})))`.
    pub fn alpha(&self) -> &Float {
        &self.alpha
    }

    /// Imaginary part of the expression defining `α`; zero up to rounding.
    pub fn alpha_imag(&self) -> &Float {
        &self.alpha_imag
    }

    /// Oscillation period `p = 2π/|θ|`.
    pub fn p(&self) -> &Float {
        &self.p
    }

    /// `θ = arg(1 - e^{z₀})`.
    pub fn theta(&self) -> &Float {
        &self.theta
    }

    pub fn one_minus_exp_z0(&self) -> &Complex {
        &self.one_minus_w
    }

    /// `-z₀(1 - e^{z₀})/(ρ² e^{z₀})`; real, positive and equal to `1/α`.
    pub fn radicand(&self) -> &Complex {
        &self.radicand
    }

    /// Peak growth factor per period, `b^p`.
    pub fn b_pow_p(&self) -> Float {
        let prec = self.prec();
        let ln_b = Float::with_val(prec, self.b.ln_ref());
        Float::with_val(prec, &ln_b * &self.p).exp()
    }

    /// `W_l = ρ (-z₀)^{l-1/2} / √(1 - e^{z₀})`.
    pub fn w_coefficient(&self, l: u32) -> Complex {
        let prec = self.prec();
        let exponent = Complex::from_f64(prec, l as f64 - 0.5, 0.0);
        let power = (-&self.z0).pow(&exponent);
        &(&self.rho * &power) / &self.one_minus_w.sqrt()
    }
}

/// Derives `a, ρ, b, θ, p, α` from a solved saddle point.
pub fn saddle_constants(z0: &Complex) -> Result<SaddleData> {
    let prec = z0.prec();
    crate::check_precision(prec)?;
    let residual = phi(z0)?.abs();
    if residual >= pow2(-(prec as i32 / 2), prec) {
        return Err(Error::Precondition(format!(
            "z0 is not a root of φ: |φ(z0)| = {}",
            residual.to_f64()
        )));
    }
    let wp = prec + 32;
    let z = z0.with_prec(wp);
    let w = z.exp();
    let one_minus_w = &Complex::one(wp) - &w;
    let pi = Complex::pi(wp);

    let ratio = &w / &(&z * &one_minus_w);
    let a = Float::with_val(wp, &pi / 2) - ratio.arg() / 2u32;
    let rho = Complex::from_polar(&Float::with_val(wp, 1), &a);
    let b = one_minus_w.abs().recip();
    let theta = one_minus_w.arg();
    let p = Float::with_val(wp, &pi * 2) / Float::with_val(wp, theta.abs_ref());
    let alpha_c = -(&rho.square() * &ratio);
    let radicand = -(&(&z * &one_minus_w) / &(&rho.square() * &w));

    let mut tol = alpha_c.abs();
    tol >>= prec / 2;
    if Float::with_val(wp, alpha_c.im.abs_ref()) > tol || alpha_c.re <= 0 {
        return Err(Error::Check(format!(
            "α is not real and positive: {}",
            alpha_c.with_prec(64)
        )));
    }

    let round = |x: Float| Float::with_val(prec, x);
    Ok(SaddleData {
        z0: z0.clone(),
        rho: rho.with_prec(prec),
        a: round(a),
        b: round(b),
        alpha: round(alpha_c.re.clone()),
        alpha_imag: round(alpha_c.im.clone()),
        p: round(p),
        theta: round(theta),
        one_minus_w: one_minus_w.with_prec(prec),
        radicand: radicand.with_prec(prec),
    })
}

/// The periodic amplitude `H_l(N)`. `n` may be any real number.
pub fn h_value(l: u32, n: &Float, sd: &SaddleData) -> Float {
    h_with_coefficient(l, &sd.w_coefficient(l), n, sd)
}

fn h_with_coefficient(l: u32, w_l: &Complex, n: &Float, sd: &SaddleData) -> Float {
    let prec = sd.prec();
    let angle = Float::with_val(prec, n * &sd.theta);
    let cos = Float::with_val(prec, angle.cos_ref());
    let sin = Float::with_val(prec, angle.sin_ref());
    let bracket = Float::with_val(prec, &w_l.im * &cos) - Float::with_val(prec, &w_l.re * &sin);
    let root = Float::with_val(prec, sd.radicand.re.sqrt_ref());
    let mut h = bracket * root / Complex::pi(prec);
    if l.is_multiple_of(2) {
        h = -h;
    }
    h
}

/// Upper bound `(1/π) √(1/α) |W_l|` on `|H_l|`.
pub fn h_bound(l: u32, sd: &SaddleData) -> Float {
    let prec = sd.prec();
    let root = Float::with_val(prec, sd.radicand.re.sqrt_ref());
    root * sd.w_coefficient(l).abs() / Complex::pi(prec)
}

/// Main term of the asymptotic expansion of `C_{0,1,l}(N)`.
#[derive(Clone, Debug)]
pub struct AsymptoticValue {
    pub n: u32,
    pub l: u32,
    pub main_term: Float,
    pub h_value: Float,
}

/// `b^N · N^{-l-1} · H_l(N)`.
pub fn asymptotic_c(l: u32, n: u32, sd: &SaddleData) -> Result<AsymptoticValue> {
    if l == 0 || n == 0 {
        return Err(Error::Precondition("asymptotic_c needs l >= 1 and N >= 1".into()));
    }
    let prec = sd.prec();
    let h = h_value(l, &Float::with_val(prec, n), sd);
    let growth = Float::with_val(prec, (&sd.b).pow(n));
    let poly = Float::with_val(prec, Float::u_pow_u(n, l + 1)).recip();
    let main_term = Float::with_val(prec, &growth * &poly) * &h;
    Ok(AsymptoticValue { n, l, main_term, h_value: h })
}

/// `((-1)^{l-1}/(π N^l)) Im(ρ(-z₀)^{l-1/2}/√(α(1-e^{z₀})) · N^{-1}(1-e^{z₀})^{-N})`,
/// the contribution of the two saddle segments written as a complex integral.
pub fn saddle_integral_form(l: u32, n: u32, sd: &SaddleData) -> Float {
    let prec = sd.prec();
    let exponent = Complex::from_f64(prec, l as f64 - 0.5, 0.0);
    let power = (-&sd.z0).pow(&exponent);
    let denom = sd.one_minus_w.scale(&sd.alpha).sqrt();
    let local = &(&sd.rho * &power) / &denom;
    let growth = sd.one_minus_w.powi(-(n as i64));
    let integral = (&local * &growth).scale(&Float::with_val(prec, n).recip());
    let scale = Float::with_val(prec, Float::u_pow_u(n, l)) * Complex::pi(prec);
    let mut v = Float::with_val(prec, &integral.im / &scale);
    if l.is_multiple_of(2) {
        v = -v;
    }
    v
}

/// `(1/2πi) ∮ φ'/φ dz` over `|z - center| = radius` by the trapezoid rule;
/// counts the roots of `φ` inside the circle.
pub fn argument_principle_count(prec: u32, center: &Complex, radius: f64, nodes: usize) -> Result<Complex> {
    crate::check_precision(prec)?;
    let pi2 = Float::with_val(prec, Complex::pi(prec) * 2u32);
    let r = Float::with_val(prec, radius);
    let terms = (0..nodes)
        .map(|m| {
            let angle = Float::with_val(prec, &pi2 * m as u32) / nodes as u32;
            let offset = Complex::from_polar(&r, &angle);
            let z = center + &offset;
            let (f, df) = phi_with_derivative(&z)?;
            // dz = i·offset·dθ, and 1/(2πi)·i·dθ sums to 1/nodes
            Ok(&(&df / &f) * &offset)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&terms, prec).scale_f64(1.0 / nodes as f64))
}
