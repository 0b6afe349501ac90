//! Local factors P_p(T) = 1 + c1 T + c2 T^2 + p c1 T^3 + p^2 T^4.

use num_complex::Complex64;
use serde::Serialize;

use super::count::{char_sum_p, char_sum_p2, legendre_table};
use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactor {
    pub p: u64,
    /// 1, c1, c2, c3, c4; just [1] at bad primes.
    pub coeffs: Vec<i64>,
}

impl EulerFactor {
    pub fn trivial(p: u64) -> Self {
        EulerFactor { p, coeffs: vec![1] }
    }

    /// Good factor from c1 and c2, filling c3 = p c1 and c4 = p^2.
    pub fn good(p: u64, c1: i64, c2: i64) -> Self {
        let pi = p as i64;
        EulerFactor {
            p,
            coeffs: vec![1, c1, c2, pi * c1, pi * pi],
        }
    }

    pub fn is_good(&self) -> bool {
        self.coeffs.len() == 5
    }

    pub fn c1(&self) -> i64 {
        self.coeffs.get(1).copied().unwrap_or(0)
    }

    pub fn c2(&self) -> i64 {
        self.coeffs.get(2).copied().unwrap_or(0)
    }

    /// a_p = -c1.
    pub fn a_p(&self) -> i64 {
        -self.c1()
    }

    /// The reciprocal roots alpha with P(T) = prod (1 - alpha T). With
    /// beta = alpha + p/alpha the quartic becomes beta^2 + c1 beta + c2 - 2p.
    pub fn reciprocal_roots(&self) -> Vec<Complex64> {
        if !self.is_good() {
            return vec![];
        }
        let p = self.p as f64;
        let c1 = self.c1() as f64;
        let c2 = self.c2() as f64;
        let disc = Complex64::new(c1 * c1 - 4.0 * (c2 - 2.0 * p), 0.0).sqrt();
        let mut out = Vec::with_capacity(4);
        for sgn in [1.0, -1.0] {
            let beta = (Complex64::new(-c1, 0.0) + disc * sgn) / 2.0;
            let d = (beta * beta - 4.0 * p).sqrt();
            out.push((beta + d) / 2.0);
            out.push((beta - d) / 2.0);
        }
        out
    }

    /// Largest deviation of |alpha| from sqrt p.
    pub fn weil_defect(&self) -> f64 {
        let r = (self.p as f64).sqrt();
        self.reciprocal_roots()
            .iter()
            .map(|a| (a.norm() - r).abs())
            .fold(0.0, f64::max)
    }

    /// Coefficients b_0..b_k of 1/P(T) with p^k <= limit.
    pub fn inverse_series(&self, limit: u64) -> Vec<i64> {
        let mut out = vec![1i64];
        let mut pk = self.p;
        while pk <= limit {
            let k = out.len();
            let mut b = 0i64;
            for (j, c) in self.coeffs.iter().enumerate().skip(1) {
                if j <= k {
                    b -= c * out[k - j];
                }
            }
            out.push(b);
            pk = match pk.checked_mul(self.p) {
                Some(v) => v,
                None => break,
            };
        }
        out
    }
}

/// True when p divides 10A.
pub fn is_bad(a: i64, p: u64) -> bool {
    p == 2 || p == 5 || a.rem_euclid(p as i64) == 0
}

fn from_sums(p: u64, s1_chars: i64, s2_chars: i64) -> Result<EulerFactor> {
    // N_r = p^r + 1 + S_r and N_r = p^r + 1 - sum alpha^r
    let e1 = -s1_chars;
    let pw2 = -s2_chars;
    if (e1 * e1 - pw2) % 2 != 0 {
        return Err(Error::Internal(format!("odd second symmetric sum at p = {p}")));
    }
    let f = EulerFactor::good(p, -e1, (e1 * e1 - pw2) / 2);
    if f.weil_defect() > 1e-6 * (p as f64).sqrt() {
        return Err(Error::Internal(format!("point counts at p = {p} violate the Weil bound")));
    }
    Ok(f)
}

/// Euler factor from brute-force counts over F_p and F_p^2.
pub fn euler_factor_by_counts(a: i64, p: u64) -> Result<EulerFactor> {
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if is_bad(a, p) {
        return Ok(EulerFactor::trivial(p));
    }
    let leg = legendre_table(p);
    from_sums(p, char_sum_p(a, p, &leg), char_sum_p2(a, p, &leg))
}

/// For p = 1 mod 5: with psi of order 5, the character sum over F_p^r is
/// the sum of g_j^r-type terms where g_j = sum_u psi^j(u) chi(u + A) lies in
/// Z[z]; the reciprocal roots are the conjugates of -g_1. Exact, O(p).
fn jacobi_factor(a: i64, p: u64) -> Result<EulerFactor> {
    let leg = legendre_table(p);
    let g = primitive_root(p);
    let ar = a.rem_euclid(p as i64) as u64;
    let mut cnt = [0i64; 5];
    let mut u = 1u64;
    for k in 0..p - 1 {
        cnt[(k % 5) as usize] += leg[((u + ar) % p) as usize] as i64;
        u = arith::mul_mod(u, g, p);
    }
    let trace = |c: &[i64; 5]| 4 * c[0] - c[1] - c[2] - c[3] - c[4];
    let mut sq = [0i64; 5];
    for i in 0..5 {
        for j in 0..5 {
            sq[(i + j) % 5] += cnt[i] * cnt[j];
        }
    }
    // sum g_j = S_1 and sum g_j^2 = -S_2 (Hasse-Davenport)
    from_sums(p, trace(&cnt), -trace(&sq))
}

fn primitive_root(p: u64) -> u64 {
    let fac = arith::factorize(p - 1);
    (2..p)
        .find(|&g| fac.iter().all(|&(q, _)| arith::pow_mod(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots")
}

/// Euler factor at p, using the cheapest exact route:
/// p = 2, 3 mod 5 gives 1 + p^2 T^4 (x -> x^5 permutes F_p and F_p^2),
/// p = 4 mod 5 gives (1 + p T^2)^2, p = 1 mod 5 uses Jacobi sums.
pub fn euler_factor(a: i64, p: u64) -> Result<EulerFactor> {
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if is_bad(a, p) {
        return Ok(EulerFactor::trivial(p));
    }
    match p % 5 {
        2 | 3 => Ok(EulerFactor::good(p, 0, 0)),
        4 => Ok(EulerFactor::good(p, 0, 2 * p as i64)),
        _ => jacobi_factor(a, p),
    }
}
