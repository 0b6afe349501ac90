//! Point counts on y^2 = x^5 + A over F_p and F_p^2.

use crate::arith;
use crate::error::{Error, Result};

/// Legendre symbols mod p, indexed by residue.
pub(crate) fn legendre_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p.div_ceil(2) {
        t[((x * x) % p) as usize] = 1;
    }
    if p == 2 {
        t[1] = 1;
    }
    t
}

fn check_good(a: i64, p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p == 2 || p == 5 || a.rem_euclid(p as i64) == 0 {
        return Err(Error::domain(format!("p = {p} divides 10A for A = {a}")));
    }
    Ok(())
}

/// Sum of the quadratic character of x^5 + A over F_p.
pub(crate) fn char_sum_p(a: i64, p: u64, leg: &[i8]) -> i64 {
    let ar = a.rem_euclid(p as i64) as u64;
    (0..p)
        .map(|x| {
            let x5 = arith::pow_mod(x, 5, p);
            leg[((x5 + ar) % p) as usize] as i64
        })
        .sum()
}

/// Sum of the quadratic character of x^5 + A over F_p^2 = F_p[t]/(t^2 - r),
/// r a non-residue. The character is the Legendre symbol of the norm.
pub(crate) fn char_sum_p2(a: i64, p: u64, leg: &[i8]) -> i64 {
    let r = (2..p).find(|&r| leg[r as usize] == -1).expect("odd p has a non-residue");
    let ar = a.rem_euclid(p as i64) as u64;
    let mul = |(x0, x1): (u64, u64), (y0, y1): (u64, u64)| -> (u64, u64) {
        ((x0 * y0 + r * ((x1 * y1) % p)) % p, (x0 * y1 + x1 * y0) % p)
    };
    let mut s = 0i64;
    for x0 in 0..p {
        for x1 in 0..p {
            let x = (x0, x1);
            let x2 = mul(x, x);
            let x4 = mul(x2, x2);
            let (f0, f1) = mul(x4, x);
            let f0 = (f0 + ar) % p;
            // norm f0^2 - r f1^2
            let n = (f0 * f0 + p * p - (r * ((f1 * f1) % p)) % p) % p;
            s += leg[n as usize] as i64;
        }
    }
    s
}

/// #C(F_q) for q = p or p^2, including the single point at infinity.
pub fn count_points(a: i64, q: u64) -> Result<u64> {
    let (p, square) = if arith::is_prime(q) {
        (q, false)
    } else {
        let r = (q as f64).sqrt().round() as u64;
        if r * r != q || !arith::is_prime(r) {
            return Err(Error::domain(format!("q = {q} is neither a prime nor a prime square")));
        }
        (r, true)
    };
    check_good(a, p)?;
    let leg = legendre_table(p);
    Ok(if square {
        (q as i64 + 1 + char_sum_p2(a, p, &leg)) as u64
    } else {
        (q as i64 + 1 + char_sum_p(a, p, &leg)) as u64
    })
}
