use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CyclotomicNumber;
use crate::arith;
use crate::error::{Error, Result};

/// a + b*sqrt(5) with a, b in (1/2)Z and a - b integral: an element of the
/// ring of integers of Q(sqrt 5), viewed inside Q(z).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtFiveForm {
    pub a: BigRational,
    pub b: BigRational,
}

fn half(n: BigInt) -> BigRational {
    BigRational::new(n, BigInt::from(2))
}

/// Residue of a rational with denominator prime to 5.
pub fn residue_mod5(x: &BigRational) -> u8 {
    let five = BigInt::from(5);
    let n = x.numer().mod_floor(&five).to_u64().unwrap();
    let d = x.denom().mod_floor(&five).to_u64().unwrap();
    let dinv = arith::inv_mod(d, 5).expect("denominator divisible by 5");
    ((n * dinv) % 5) as u8
}

impl SqrtFiveForm {
    /// (a2 + b2*sqrt 5)/2.
    pub fn from_doubled(a2: BigInt, b2: BigInt) -> Self {
        SqrtFiveForm {
            a: half(a2),
            b: half(b2),
        }
    }

    /// -(1 + sqrt 5)/2.
    pub fn u_f() -> Self {
        Self::from_doubled(BigInt::from(-1), BigInt::from(-1))
    }

    /// Recognise an element of the real subfield, if `x` lies in it with
    /// half-integral coordinates.
    pub fn from_cyclotomic(x: &CyclotomicNumber) -> Option<Self> {
        let c = x.coords();
        // a + b sqrt5 = (a - b) - 2b z^2 - 2b z^3
        if !c[1].is_zero() || c[2] != c[3] {
            return None;
        }
        let b = -&c[2] / BigRational::from_integer(BigInt::from(2));
        let a = &c[0] + &b;
        let out = SqrtFiveForm { a, b };
        out.is_integral().then_some(out)
    }

    fn is_integral(&self) -> bool {
        let a2 = &self.a * BigRational::from_integer(BigInt::from(2));
        let b2 = &self.b * BigRational::from_integer(BigInt::from(2));
        a2.is_integer() && b2.is_integer() && (a2.to_integer() - b2.to_integer()).is_even()
    }

    pub fn to_cyclotomic(&self) -> CyclotomicNumber {
        let s = CyclotomicNumber::sqrt5();
        &CyclotomicNumber::from_rational(self.a.clone()) + &s.scale(&self.b)
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        SqrtFiveForm {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let five = BigRational::from_integer(BigInt::from(5));
        SqrtFiveForm {
            a: &self.a * &o.a + five * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn neg(&self) -> Self {
        SqrtFiveForm {
            a: -&self.a,
            b: -&self.b,
        }
    }

    pub fn a_mod5(&self) -> u8 {
        residue_mod5(&self.a)
    }

    pub fn b_mod5(&self) -> u8 {
        residue_mod5(&self.b)
    }

    /// log |sigma_1 / sigma_2|, computed without cancellation.
    fn log_ratio(&self) -> f64 {
        let a = self.a.to_f64().unwrap();
        let b = self.b.to_f64().unwrap();
        let n = self.norm().to_f64().unwrap().abs();
        let s5 = 5f64.sqrt();
        let plus = (a + b * s5).abs();
        let minus = (a - b * s5).abs();
        if plus >= minus {
            2.0 * plus.ln() - n.ln()
        } else {
            n.ln() - 2.0 * minus.ln()
        }
    }
}

impl fmt::Display for SqrtFiveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*sqrt5", self.a, sign, self.b.abs())
    }
}

/// Canonical generator a + b sqrt5 with a = 2 (mod 5) for a prime of Q(z)
/// lying over p = 4 (mod 5), given any generator in the real subfield.
///
/// Unit multiples of one generator give the same output: the input is first
/// moved to its balanced associate (|log(sigma_1/sigma_2)| < log phi, a > 0),
/// then multiplied by the least power u_F^j, 0 <= j < 4, making a = 2.
pub fn normalize_generator_split_two(g: &CyclotomicNumber) -> Result<SqrtFiveForm> {
    let x = SqrtFiveForm::from_cyclotomic(g)
        .ok_or_else(|| Error::domain(format!("{g} is not in the ring of integers of Q(sqrt 5)")))?;
    let n = x.norm().abs();
    n.to_integer()
        .to_u64()
        .filter(|p| n.is_integer() && arith::is_prime(*p) && p % 5 == 4)
        .ok_or_else(|| Error::domain(format!("norm of {x} is not a prime = 4 mod 5")))?;
    let x = balance(x);
    let mut y = x;
    for _ in 0..4 {
        if y.a_mod5() == 2 {
            return Ok(y);
        }
        y = y.mul(&SqrtFiveForm::u_f());
    }
    Err(Error::Internal("unit normalisation did not converge".into()))
}

fn balance(mut x: SqrtFiveForm) -> SqrtFiveForm {
    let phi_log = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    let u = SqrtFiveForm::u_f();
    let u_inv = SqrtFiveForm::from_doubled(BigInt::one(), BigInt::from(-1));
    // each factor of u_F shifts the log-ratio by 2 log(phi)
    let r = x.log_ratio();
    let k = -(r / (2.0 * phi_log)).round() as i64;
    let step = if k >= 0 { &u } else { &u_inv };
    for _ in 0..k.unsigned_abs() {
        x = x.mul(step);
    }
    // guard against rounding at the boundary
    while x.log_ratio() > phi_log {
        x = x.mul(&u_inv);
    }
    while x.log_ratio() <= -phi_log {
        x = x.mul(&u);
    }
    if x.a.is_negative() {
        x = x.neg();
    }
    x
}
