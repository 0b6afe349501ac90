//! Lambda(s) = N^(s/2) (2 pi)^(-2s) Gamma(s)^2 L(s) via the theta split
//!
//!   Lambda(s) = sum a_n (nc)^-s G(s, nc t0) + w sum a_n (nc)^(s-2) G(2-s, nc/t0)
//!
//! where c = (2 pi)^2 / sqrt N, K(u) = 2 K_0(2 sqrt u) is the inverse Mellin
//! transform of Gamma(s)^2 and G(s, x) = int_x^inf K(u) u^(s-1) du. Any t0 > 0
//! gives the same value exactly when the functional equation holds.

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::special::{bessel_k0, gamma};
use crate::error::{Error, Result};

/// u beyond which K(u) u^(s-1) is below 1e-40 for the s we use.
const U_MAX: f64 = 3000.0;

/// Controls the quadrature and the split point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Smoothing {
    /// Split point of the theta integral; 1 is the symmetric choice.
    pub t0: f64,
    /// Panel width in log u.
    pub panel: f64,
    /// Gauss-Legendre nodes per panel.
    pub nodes: usize,
}

impl Default for Smoothing {
    fn default() -> Self {
        Smoothing {
            t0: 1.0,
            panel: 0.125,
            nodes: 16,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LSeriesParams {
    pub a: i64,
    pub conductor: u64,
    pub root_number: i32,
    /// Number of Dirichlet coefficients used.
    pub cutoff: usize,
    pub smoothing: Smoothing,
}

impl LSeriesParams {
    pub fn c(&self) -> f64 {
        4.0 * PI * PI / (self.conductor as f64).sqrt()
    }

    /// Cutoff making the first omitted term negligible: n c t >= 400 for
    /// the smaller of t0 and 1/t0.
    pub fn recommended_cutoff(conductor: u64, t0: f64) -> usize {
        let c = 4.0 * PI * PI / (conductor as f64).sqrt();
        let t = t0.min(1.0 / t0);
        ((400.0 / (c * t)).ceil() as usize).max(200)
    }

    /// The documented minimum 30 sqrt(N) / (2 pi)^2.
    pub fn minimum_cutoff(conductor: u64) -> usize {
        (30.0 * (conductor as f64).sqrt() / (4.0 * PI * PI)).ceil() as usize
    }
}

/// Cumulative tail integrals of K(e^w) e^(sw) on a grid in w = log u.
struct MellinTable {
    s: Complex64,
    w_lo: f64,
    h: f64,
    /// tail[i] = integral from w_lo + i h to the top
    tail: Vec<Complex64>,
    rule: Vec<(f64, f64)>,
}

fn kernel(u: f64) -> f64 {
    2.0 * bessel_k0(2.0 * u.sqrt())
}

impl MellinTable {
    fn new(s: Complex64, x_min: f64, sm: &Smoothing) -> Result<Self> {
        let gl = GaussLegendre::new(sm.nodes).map_err(|_| Error::Precision("need at least 2 nodes".into()))?;
        let rule: Vec<(f64, f64)> = gl.iter().map(|(x, w)| (*x, *w)).collect();
        let h = sm.panel;
        let w_lo = x_min.ln() - h;
        let w_hi = U_MAX.ln();
        let n = ((w_hi - w_lo) / h).ceil().max(1.0) as usize;
        let mut t = MellinTable {
            s,
            w_lo,
            h,
            tail: vec![Complex64::new(0.0, 0.0); n + 1],
            rule,
        };
        for i in (0..n).rev() {
            let a = w_lo + i as f64 * h;
            t.tail[i] = t.tail[i + 1] + t.panel(a, a + h);
        }
        Ok(t)
    }

    fn panel(&self, a: f64, b: f64) -> Complex64 {
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, wt) in &self.rule {
            let w = mid + half * x;
            acc += wt * kernel(w.exp()) * (self.s * w).exp();
        }
        acc * half
    }

    /// G(s, x) = int_x^inf K(u) u^(s-1) du.
    fn g(&self, x: f64) -> Complex64 {
        let w = x.ln();
        if w >= self.w_lo + self.h * (self.tail.len() - 1) as f64 {
            return Complex64::new(0.0, 0.0);
        }
        let pos = ((w - self.w_lo) / self.h).max(0.0);
        let i = pos.floor() as usize;
        let top = self.w_lo + (i + 1) as f64 * self.h;
        self.panel(w, top) + self.tail[i + 1]
    }
}

/// One half of the split: sum a_n (nc)^-s G(s, nct) over n in `range`,
/// together with sum B(n) |(nc)^-s G(s, nct)| for the error model.
fn half_sum(coeffs: &[i64], c: f64, s: Complex64, t: f64, range: std::ops::Range<usize>, sm: &Smoothing, bound: bool) -> Result<(Complex64, f64)> {
    let table = MellinTable::new(s, c * t, sm)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for n in range {
        let x = n as f64 * c;
        if bound {
            let g = table.g(x * t);
            if g.norm() == 0.0 {
                break;
            }
            // |a_n| <= d_4(n) sqrt n, modelled as sqrt n (1 + log n)^3
            let b = (n as f64).sqrt() * (1.0 + (n as f64).ln()).powi(3);
            err += b * (x.powf(-s.re) * g.norm());
            continue;
        }
        let an = coeffs[n];
        if an == 0 {
            continue;
        }
        acc += an as f64 * Complex64::new(x, 0.0).powc(-s) * table.g(x * t);
    }
    Ok((acc, err))
}

/// Lambda(s) with split point t0 and an estimate of the truncation error.
pub fn lambda(params: &LSeriesParams, coeffs: &[i64], s: Complex64) -> Result<(Complex64, f64)> {
    let m = params.cutoff;
    if coeffs.len() <= m {
        return Err(Error::Resource(format!("{} coefficients supplied, cutoff {m}", coeffs.len().saturating_sub(1))));
    }
    let c = params.c();
    let t0 = params.smoothing.t0;
    let w = params.root_number as f64;
    let sm = &params.smoothing;
    let s2 = Complex64::new(2.0, 0.0) - s;
    let (a, _) = half_sum(coeffs, c, s, t0, 1..m + 1, sm, false)?;
    let (b, _) = half_sum(coeffs, c, s2, 1.0 / t0, 1..m + 1, sm, false)?;
    let (_, ea) = half_sum(coeffs, c, s, t0, m + 1..2 * m + 1, sm, true)?;
    let (_, eb) = half_sum(coeffs, c, s2, 1.0 / t0, m + 1..2 * m + 1, sm, true)?;
    Ok((a + w * b, ea + eb))
}

/// (sqrt N / (2 pi)^2)^s Gamma(s)^2.
pub fn gamma_factor(conductor: u64, s: Complex64) -> Complex64 {
    let q = (conductor as f64).sqrt() / (4.0 * PI * PI);
    let g = gamma(s);
    Complex64::new(q, 0.0).powc(s) * g * g
}

#[derive(Clone, Debug, Serialize)]
pub struct LValue {
    pub a: i64,
    pub s: [f64; 2],
    pub value: [f64; 2],
    /// Truncation-error estimate for `value`.
    pub error: f64,
    pub conductor: u64,
    pub root_number: i32,
    pub cutoff: usize,
}

impl LValue {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }
}

/// L(s) from Lambda(s).
pub fn l_from_params(params: &LSeriesParams, coeffs: &[i64], s: Complex64) -> Result<LValue> {
    let (lam, err) = lambda(params, coeffs, s)?;
    let gf = gamma_factor(params.conductor, s);
    let v = lam / gf;
    Ok(LValue {
        a: params.a,
        s: [s.re, s.im],
        value: [v.re, v.im],
        error: err / gf.norm(),
        conductor: params.conductor,
        root_number: params.root_number,
        cutoff: params.cutoff,
    })
}

/// |Lambda(s) - eps Lambda(2-s)| / |Lambda(s)| with Lambda built using sign
/// eps; vanishes when eps, N and the coefficients are right.
pub fn fe_residual(params: &LSeriesParams, coeffs: &[i64], s: Complex64, eps: i32) -> Result<f64> {
    let p = LSeriesParams {
        root_number: eps,
        ..params.clone()
    };
    let (l1, _) = lambda(&p, coeffs, s)?;
    let (l2, _) = lambda(&p, coeffs, Complex64::new(2.0, 0.0) - s)?;
    Ok((l1 - eps as f64 * l2).norm() / l1.norm())
}

/// The off-centre points used by the symmetry checks.
pub fn sample_points() -> [Complex64; 3] {
    [
        Complex64::new(1.2, 0.0),
        Complex64::new(1.5, 0.0),
        Complex64::new(1.0, 0.3),
    ]
}
