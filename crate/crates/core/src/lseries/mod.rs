//! The L-function of J_A: y^2 = x^5 + A over Q, through Euler factors,
//! a conductor model and a smoothed functional-equation evaluator.

mod afe;
mod cache;
mod count;
mod euler;
pub mod special;
mod verdict;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

pub use afe::{fe_residual, gamma_factor, l_from_params, lambda, sample_points, LSeriesParams, LValue, Smoothing};
pub use cache::{EulerCache, CACHE_ENV};
pub use count::count_points;
pub use euler::{euler_factor, euler_factor_by_counts, is_bad, EulerFactor};
pub use verdict::{
    bsd_rank_check, nonvanishing_criterion, BsdOptions, BsdStatus, BsdVerdict, Check, CriterionReport,
    CriterionVerdict, Evidence, NumericMode,
};

use crate::arith;
use crate::error::{Error, Result};
use crate::rootnumber::root_number_general;

/// Largest number of Dirichlet coefficients we agree to build.
pub const MAX_CUTOFF: usize = 20_000_000;

/// N = 125 * 5^n * 16 * prod_{p | m odd} p^4 for A = m^2, where n = 1 when
/// 5 divides (A^4 - 1)/5 and 2 otherwise; every prime of Q(z) over 2m
/// contributes its norm once.
pub fn conductor(a: i64) -> Result<u64> {
    if a <= 0 {
        return Err(Error::domain(format!("A = {a} must be positive")));
    }
    let m = (a as f64).sqrt().round() as i64;
    if m * m != a {
        return Err(Error::domain(format!("A = {a} is not a square; the conductor model covers A = m^2")));
    }
    if m % 5 == 0 || !arith::is_squarefree(m as u64) {
        return Err(Error::domain(format!("A = {m}^2 needs m square-free and prime to 5")));
    }
    let q5: BigInt = (BigInt::from(a).pow(4) - 1) / 5;
    let n_lambda = if (&q5 % 5u32).is_zero() { 1 } else { 2 };
    let mut n: u128 = 125 * 5u128.pow(n_lambda) * 16;
    for (p, _) in arith::factorize(m as u64) {
        if p != 2 {
            n *= (p as u128).pow(4);
        }
    }
    u64::try_from(n).map_err(|_| Error::Resource(format!("conductor of A = {a} exceeds 64 bits")))
}

/// Euler factors for all primes up to `limit`, from the cache when present.
pub fn euler_factors(a: i64, limit: u64, cache: Option<&EulerCache>) -> Result<Vec<EulerFactor>> {
    let primes = arith::primes_up_to(limit as usize);
    let known = match cache {
        Some(c) => c.load(a)?,
        None => Default::default(),
    };
    let factors = primes
        .par_iter()
        .map(|&p| match known.get(&p) {
            Some(&(c1, c2)) if !is_bad(a, p) => Ok(EulerFactor::good(p, c1, c2)),
            _ => euler_factor(a, p),
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = cache {
        if factors.iter().any(|f| f.is_good() && !known.contains_key(&f.p)) {
            c.store(a, &factors)?;
        }
    }
    Ok(factors)
}

/// a_0..a_cutoff (a_0 = 0 unused) of L(s, J_A) = prod 1/P_p(p^-s).
pub fn dirichlet_coefficients(a: i64, cutoff: usize, cache: Option<&EulerCache>) -> Result<Vec<i64>> {
    if cutoff > MAX_CUTOFF {
        return Err(Error::Resource(format!("cutoff {cutoff} exceeds {MAX_CUTOFF}")));
    }
    let mut out = vec![0i64; cutoff + 1];
    if cutoff == 0 {
        return Ok(out);
    }
    out[1] = 1;
    let factors = euler_factors(a, cutoff as u64, cache)?;
    let mut series = vec![Vec::new(); cutoff + 1];
    for f in &factors {
        series[f.p as usize] = f.inverse_series(cutoff as u64);
    }
    // smallest prime factor sieve
    let mut spf = vec![0u32; cutoff + 1];
    for f in &factors {
        let p = f.p as usize;
        let mut k = p;
        while k <= cutoff {
            if spf[k] == 0 {
                spf[k] = p as u32;
            }
            k += p;
        }
    }
    for n in 2..=cutoff {
        let p = spf[n] as usize;
        let (mut r, mut k) = (n, 0);
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        out[n] = series[p][k]
            .checked_mul(out[r])
            .ok_or_else(|| Error::Resource(format!("coefficient a_{n} overflows")))?;
    }
    Ok(out)
}

/// Tunables for numerical L-values.
#[derive(Clone, Debug, Default)]
pub struct LOptions {
    /// Defaults to `LSeriesParams::recommended_cutoff`.
    pub cutoff: Option<usize>,
    pub smoothing: Smoothing,
    pub cache: Option<EulerCache>,
}

/// Conductor, sign and cutoff for A.
pub fn params(a: i64, opts: &LOptions) -> Result<LSeriesParams> {
    let conductor = conductor(a)?;
    let root_number = root_number_general(a)?;
    if opts.smoothing.t0 <= 0.0 {
        return Err(Error::domain("split point must be positive"));
    }
    let cutoff = opts
        .cutoff
        .unwrap_or_else(|| LSeriesParams::recommended_cutoff(conductor, opts.smoothing.t0));
    Ok(LSeriesParams {
        a,
        conductor,
        root_number,
        cutoff,
        smoothing: opts.smoothing,
    })
}

/// Coefficients for 2 * cutoff, as the error model looks one block further.
pub fn coefficients_for(p: &LSeriesParams, opts: &LOptions) -> Result<Vec<i64>> {
    dirichlet_coefficients(p.a, 2 * p.cutoff, opts.cache.as_ref())
}

/// L(s, J_A) with a truncation-error estimate.
pub fn l_value(a: i64, s: Complex64, opts: &LOptions) -> Result<LValue> {
    let p = params(a, opts)?;
    let coeffs = coefficients_for(&p, opts)?;
    l_from_params(&p, &coeffs, s)
}

#[derive(Clone, Debug, Serialize)]
pub struct SignEstimate {
    pub sign: i32,
    /// Largest relative residual over the sample points for each sign.
    pub residual_plus: f64,
    pub residual_minus: f64,
}

/// The sign eps for which Lambda(s) = eps Lambda(2-s) at off-centre points.
/// Uses an asymmetric split so the test is not a tautology.
pub fn fe_sign_estimate(a: i64, opts: &LOptions) -> Result<SignEstimate> {
    let mut o = opts.clone();
    if o.smoothing.t0 == 1.0 {
        o.smoothing.t0 = 1.2;
    }
    let p = params(a, &o)?;
    let coeffs = coefficients_for(&p, &o)?;
    let worst = |eps: i32| -> Result<f64> {
        sample_points()
            .iter()
            .map(|&s| fe_residual(&p, &coeffs, s, eps))
            .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)))
    };
    let (rp, rm) = (worst(1)?, worst(-1)?);
    let (lo, hi) = (rp.min(rm), rp.max(rm));
    if !(lo < 0.01 * hi) {
        return Err(Error::Precision(format!(
            "sign not decided for A = {a}: residuals {rp:.3e} (+1) and {rm:.3e} (-1)"
        )));
    }
    Ok(SignEstimate {
        sign: if rp < rm { 1 } else { -1 },
        residual_plus: rp,
        residual_minus: rm,
    })
}

/// Convenience for reports: the real part when the imaginary part is tiny.
pub fn real_part_if_real(v: &LValue) -> Option<f64> {
    (v.value[1].abs() <= v.error.max(1e-12) * 10.0).then_some(v.value[0])
}
