//! Global root numbers of y^2 = x^5 + A over Q.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// The data entering the root-number formula for y^2 = x^5 + A.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootNumberInput {
    pub a: i64,
    /// A = 2^e * b with b odd.
    pub e: u32,
    pub b: i64,
    /// (A^4 - 1)/5, exact.
    pub q5: String,
    pub q5_mod5: u8,
    pub f2: u32,
    /// 2^f2 times the odd primes dividing A.
    pub v_a: u64,
}

impl RootNumberInput {
    pub fn new(a: i64) -> Result<Self> {
        if a == 0 {
            return Err(Error::domain("A must be nonzero"));
        }
        if a % 5 == 0 {
            return Err(Error::domain(format!("A = {a} is divisible by 5")));
        }
        let abs = a.unsigned_abs();
        let fac = arith::factorize(abs);
        if let Some(&(p, k)) = fac.iter().find(|&&(_, k)| k >= 10) {
            return Err(Error::domain(format!("A = {a} is divisible by {p}^{k}, not 10th-power free")));
        }
        let e = arith::valuation(abs, 2);
        let b = a / (1i64 << e);
        let big = BigInt::from(a);
        let q5 = (big.pow(4) - BigInt::one()) / BigInt::from(5);
        let q5_mod5 = (&q5 % BigInt::from(5)).to_u8().unwrap();
        let b_mod4 = b.rem_euclid(4);
        let f2 = if e % 2 == 1 {
            3
        } else if b_mod4 == 3 {
            2
        } else if e == 8 {
            0
        } else {
            1
        };
        let odd: u64 = fac.iter().filter(|&&(p, _)| p != 2).map(|&(p, _)| p).product();
        Ok(RootNumberInput {
            a,
            e,
            b,
            q5: q5.to_string(),
            q5_mod5,
            f2,
            v_a: (1u64 << f2) * odd,
        })
    }
}

/// Root number from the general two-case formula with l = 5.
pub fn root_number_general(a: i64) -> Result<i32> {
    let inp = RootNumberInput::new(a)?;
    let v = (inp.v_a % 5) as i64;
    Ok(if inp.q5_mod5 == 0 {
        arith::jacobi(2 * (a.rem_euclid(5)) * v, 5)
    } else {
        -arith::jacobi(2 * inp.q5_mod5 as i64 * v, 5)
    })
}

const PLUS_ROWS: [u64; 10] = [1, 2, 4, 6, 12, 13, 19, 21, 23, 24];

/// Root number of y^2 = x^5 + m^2 for odd square-free m, by residue of m mod 25.
pub fn root_number_m2(m: i64) -> Result<i32> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::domain(format!("m = {m} must be odd")));
    }
    if m % 5 == 0 {
        return Err(Error::domain(format!("m = {m} is divisible by 5")));
    }
    if !arith::is_squarefree(m.unsigned_abs()) {
        return Err(Error::domain(format!("m = {m} is not square-free")));
    }
    let r = m.rem_euclid(25) as u64;
    Ok(if PLUS_ROWS.contains(&r) { 1 } else { -1 })
}
