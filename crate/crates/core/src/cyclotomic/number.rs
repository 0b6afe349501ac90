use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element c0 + c1*z + c2*z^2 + c3*z^3 of Q(z), z a primitive fifth root
/// of unity. Coordinates are canonical, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclotomicNumber {
    c: [BigRational; 4],
}

/// The four field operations, for callers that dispatch on an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &CyclotomicNumber, b: &CyclotomicNumber, op: ArithOp) -> Result<CyclotomicNumber> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CyclotomicNumber {
    pub fn new(c: [BigRational; 4]) -> Self {
        CyclotomicNumber { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        CyclotomicNumber { c: c.map(q) }
    }

    pub fn from_bigints(c: [BigInt; 4]) -> Self {
        CyclotomicNumber {
            c: c.map(BigRational::from_integer),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CyclotomicNumber {
            c: [r, BigRational::zero(), BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 4])
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// z^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(5) {
            0 => Self::one(),
            4 => Self::from_ints([-1, -1, -1, -1]),
            j => {
                let mut c = [0; 4];
                c[j as usize] = 1;
                Self::from_ints(c)
            }
        }
    }

    /// sqrt(5) = 2(z + z^4) + 1.
    pub fn sqrt5() -> Self {
        Self::from_ints([-1, 0, -2, -2])
    }

    /// Fundamental unit of the real subfield, -(1 + sqrt 5)/2 = z^2 + z^3.
    pub fn u_f() -> Self {
        Self::from_ints([0, 0, 1, 1])
    }

    /// z^-2 - z^2.
    pub fn delta() -> Self {
        &Self::zeta_pow(3) - &Self::zeta_pow(2)
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    pub fn integral_coords(&self) -> Option<[BigInt; 4]> {
        if !self.is_integral() {
            return None;
        }
        Some(self.c.clone().map(|x| x.to_integer()))
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Image under the automorphism z -> z^r.
    ///
    /// # Panics
    /// If r is divisible by 5.
    pub fn galois(&self, r: u32) -> Self {
        assert!(r % 5 != 0, "galois exponent must be prime to 5");
        let mut t: [BigRational; 5] = Default::default();
        for (i, x) in self.c.iter().enumerate() {
            t[(i * r as usize) % 5] += x;
        }
        Self::reduce5(t)
    }

    fn reduce5(t: [BigRational; 5]) -> Self {
        let [a, b, c, d, e] = t;
        CyclotomicNumber {
            c: [a - &e, b - &e, c - &e, d - &e],
        }
    }

    /// Product of the four conjugates.
    pub fn norm(&self) -> BigRational {
        let rest = self.conjugate_product();
        let n = self * &rest;
        debug_assert!(n.as_rational().is_some());
        n.c[0].clone()
    }

    /// sigma_2 * sigma_3 * sigma_4 of self; self times this is the norm.
    fn conjugate_product(&self) -> Self {
        &(&self.galois(2) * &self.galois(3)) * &self.galois(4)
    }

    /// Trace of a * conj(a): 5 * sum c_i^2 - (sum c_i)^2. Positive definite.
    pub fn trace_form(&self) -> BigRational {
        let s: BigRational = self.c.iter().sum();
        let sq: BigRational = self.c.iter().map(|x| x * x).sum();
        q(5) * sq - &s * &s
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        let rest = self.conjugate_product();
        let n = (self * &rest).c[0].clone();
        Ok(rest.scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CyclotomicNumber {
            c: self.c.clone().map(|x| x * r),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Image under z -> root in F_p. None if a denominator vanishes mod p.
    pub fn eval_mod(&self, root: u64, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        let mut rp = 1u64;
        for x in &self.c {
            let d = x.denom().mod_floor(&pb).to_u64()?;
            let dinv = crate::arith::inv_mod(d, p)?;
            let n = x.numer().mod_floor(&pb).to_u64()?;
            let t = crate::arith::mul_mod(n, dinv, p);
            acc = (acc + crate::arith::mul_mod(t, rp, p)) % p;
            rp = crate::arith::mul_mod(rp, root, p);
        }
        Some(acc)
    }

    /// Approximate complex embedding z -> exp(2 pi i k / 5).
    pub fn embed(&self, k: u32) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, x) in self.c.iter().enumerate() {
            let v = x.to_f64().unwrap_or(f64::NAN);
            let th = 2.0 * std::f64::consts::PI * (k as f64) * (i as f64) / 5.0;
            re += v * th.cos();
            im += v * th.sin();
        }
        (re, im)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            let mag = x.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, o: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber {
            c: [0, 1, 2, 3].map(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, o: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber {
            c: [0, 1, 2, 3].map(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, o: &CyclotomicNumber) -> CyclotomicNumber {
        let mut t: [BigRational; 5] = Default::default();
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                t[(i + j) % 5] += &self.c[i] * &o.c[j];
            }
        }
        CyclotomicNumber::reduce5(t)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            c: self.c.clone().map(|x| -x),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, o: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: [i64; 4]) -> CyclotomicNumber {
        CyclotomicNumber::from_ints(c)
    }

    // independent oracle: multiply as polynomials mod x^5 - 1 then project
    fn naive_mul(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
        let mut t = [0i64; 5];
        for i in 0..4 {
            for j in 0..4 {
                t[(i + j) % 5] += a[i] * b[j];
            }
        }
        [t[0] - t[4], t[1] - t[4], t[2] - t[4], t[3] - t[4]]
    }

    #[test]
    fn difference_of_squares() {
        let one_minus = z([1, -1, 0, 0]);
        let one_plus = z([1, 1, 0, 0]);
        assert_eq!(&one_minus * &one_plus, z([1, 0, -1, 0]));
    }

    #[test]
    fn small_norms() {
        assert_eq!(z([1, -1, 0, 0]).norm(), q(5));
        assert_eq!(z([1, 1, 0, 0]).norm(), q(1));
        assert_eq!(z([1, -1, 3, 1]).norm(), q(101));
        assert_eq!(CyclotomicNumber::from_integer(3).norm(), q(81));
    }

    #[test]
    fn inverse_of_fundamental_unit() {
        let u = z([1, 1, 0, 0]);
        let inv = u.inverse().unwrap();
        assert!(inv.is_integral());
        assert_eq!(&u * &inv, CyclotomicNumber::one());
        // 1/(1+z) = -(z + z^3)
        assert_eq!(inv, z([0, -1, 0, -1]));
        assert!(CyclotomicNumber::zero().inverse().is_err());
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = CyclotomicNumber::sqrt5();
        assert_eq!(&s * &s, CyclotomicNumber::from_integer(5));
        let u = CyclotomicNumber::u_f();
        // u_F satisfies x^2 + x - 1 = 0 up to sign: (-(1+s)/2)
        let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(u, (&CyclotomicNumber::one() + &s).scale(&half));
        assert_eq!(u.norm(), q(1));
    }

    #[test]
    fn galois_basics() {
        assert_eq!(CyclotomicNumber::zeta().galois(2), z([0, 0, 1, 0]));
        let x = z([3, -1, 4, 7]);
        let mut y = x.clone();
        for _ in 0..4 {
            y = y.galois(2);
        }
        assert_eq!(x, y);
        assert_eq!(CyclotomicNumber::from_integer(17).galois(2), CyclotomicNumber::from_integer(17));
    }

    #[test]
    fn mul_matches_oracle() {
        let a = [3, -2, 5, 1];
        let b = [-4, 0, 7, 2];
        assert_eq!(&z(a) * &z(b), z(naive_mul(a, b)));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(z([1, -1, 3, 1]).to_string(), "1 - z + 3*z^2 + z^3");
        assert_eq!(z([0, 0, 0, -2]).to_string(), "-2*z^3");
    }
}
