//! Fifth-power classes K_P^x / K_P^x5 as exponent vectors over F_5.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use super::pi5::{pi5_expand, pi5_valuation, teichmuller, Pi5Expansion, O5, DEFAULT_PRECISION};
use super::residue::ResidueField;
use crate::arith;
use crate::cyclotomic::{CyclotomicNumber, PrimeIdealK, SplitType};
use crate::error::{Error, Result};
use crate::f5linalg::Ambient;

/// Which local quotient an exponent vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassBasis {
    /// (alpha, beta, gamma, delta, epsilon, eta) =
    /// (pi, 1+pi, 1+pi^2, 1+pi^3, 1+pi^4, 1+pi^5) at the prime above 5.
    Five,
    /// (alpha_P, beta_P) = (pi_P, 5-power root of unity) at the `index`-th
    /// prime above `p`.
    Unramified { p: u64, index: usize },
}

impl ClassBasis {
    pub fn symbols(&self) -> &'static [&'static str] {
        match self {
            ClassBasis::Five => &["α", "β", "γ", "δ", "ε", "η"],
            ClassBasis::Unramified { .. } => &["α", "β"],
        }
    }

    pub fn dim(&self) -> usize {
        self.symbols().len()
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            ClassBasis::Five => Ambient::new(["alpha", "beta", "gamma", "delta", "epsilon", "eta"]),
            ClassBasis::Unramified { p, index } => Ambient::new([
                format!("alpha[{p},{index}]"),
                format!("beta[{p},{index}]"),
            ]),
        }
    }

    pub fn for_prime(prime: &PrimeIdealK) -> ClassBasis {
        match prime.split_type {
            SplitType::Ramified => ClassBasis::Five,
            _ => ClassBasis::Unramified {
                p: prime.p,
                index: prime.index,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitClass {
    pub basis: ClassBasis,
    pub exponents: Vec<u8>,
}

impl UnitClass {
    pub fn new(basis: ClassBasis, exponents: Vec<u8>) -> Self {
        assert_eq!(exponents.len(), basis.dim());
        UnitClass {
            basis,
            exponents: exponents.into_iter().map(|e| e % 5).collect(),
        }
    }

    pub fn trivial(basis: ClassBasis) -> Self {
        UnitClass::new(basis, vec![0; basis.dim()])
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn add(&self, o: &UnitClass) -> Result<UnitClass> {
        if self.basis != o.basis {
            return Err(Error::Ambient(format!("{:?} vs {:?}", self.basis, o.basis)));
        }
        Ok(UnitClass::new(
            self.basis,
            self.exponents.iter().zip(&o.exponents).map(|(a, b)| (a + b) % 5).collect(),
        ))
    }

    pub fn scale(&self, k: u8) -> UnitClass {
        UnitClass::new(self.basis, self.exponents.iter().map(|e| (e * (k % 5)) % 5).collect())
    }

    pub fn neg(&self) -> UnitClass {
        self.scale(4)
    }
}

fn superscript(n: u8) -> &'static str {
    ["⁰", "", "²", "³", "⁴"][n as usize]
}

impl fmt::Display for UnitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        for (s, &e) in self.basis.symbols().iter().zip(&self.exponents) {
            if e != 0 {
                write!(f, "{s}{}", superscript(e))?;
            }
        }
        Ok(())
    }
}

/// Class at the prime above 5 of a nonzero element.
pub fn class_at_5(a: &CyclotomicNumber) -> Result<UnitClass> {
    if a.is_zero() {
        return Err(Error::domain("class of zero"));
    }
    let v = pi5_valuation(a)?;
    if v < 0 {
        // classes are additive; clear the denominator first
        let d = a.denominator();
        let x = a.scale(&BigRational::from_integer(d.clone()));
        return class_at_5(&x)?.add(&class_at_5(&CyclotomicNumber::from_integer(d))?.neg());
    }
    let e = pi5_expand(a, (v + DEFAULT_PRECISION as i64) as u32)?;
    class_of_expansion(&e)
}

/// Class of an expansion; needs at least six digits of unit part.
pub fn class_of_expansion(e: &Pi5Expansion) -> Result<UnitClass> {
    if e.relative_precision() < 6 {
        return Err(Error::Precision(format!(
            "class needs 6 unit digits, have {}",
            e.relative_precision()
        )));
    }
    let alpha = e.valuation.rem_euclid(5) as u8;
    let mut u = e.unit_part();
    let k = u.k();
    let m = 5i128.pow(k);
    let t = teichmuller(e.digits[0], k);
    let tinv = arith::inv_mod((t.rem_euclid(m)) as u64, m as u64).expect("unit") as i128;
    u = u.mul(&O5::from_int(tinv, k));
    let mut ex = vec![alpha];
    for j in 1..=5u32 {
        let d = u.digits(j as usize + 1)[j as usize];
        ex.push(d);
        if d != 0 {
            let b = O5::from_int(1, k).add(&O5::pi_pow(j, k)).pow(d as u64);
            u = u.mul(&b.inverse());
        }
    }
    debug_assert_eq!(&u.digits(6)[..], &[1, 0, 0, 0, 0, 0]);
    Ok(UnitClass::new(ClassBasis::Five, ex))
}

/// Valuation of a nonzero element at an unramified prime.
pub fn valuation_at(a: &CyclotomicNumber, prime: &PrimeIdealK) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::domain("valuation of zero"));
    }
    let d = a.denominator();
    let x = a.scale(&BigRational::from_integer(d.clone()));
    let (vx, _) = strip_prime(&x, prime)?;
    let (vd, _) = strip_prime(&CyclotomicNumber::from_integer(d), prime)?;
    Ok(vx - vd)
}

/// Divide an integral element by the prime generator as often as possible.
fn strip_prime(x: &CyclotomicNumber, prime: &PrimeIdealK) -> Result<(i64, CyclotomicNumber)> {
    if prime.split_type == SplitType::Ramified {
        let v = arith::valuation_big(&x.norm().to_integer(), 5) as i64;
        return Ok((v, x.clone()));
    }
    let field = ResidueField::new(prime)?;
    let ginv = prime.generator.inverse()?;
    let mut x = x.clone();
    let mut v = 0;
    while field.is_zero(&field.reduce(&x)?) {
        x = &x * &ginv;
        debug_assert!(x.is_integral());
        v += 1;
    }
    Ok((v, x))
}

/// Class at a prime not above 5: (valuation mod 5, k) where the unit part u
/// satisfies u = beta^k times a fifth power, beta being the generator of the
/// 5-power roots of unity whose 5^(n-1)-th power is z.
pub fn class_at_unramified(a: &CyclotomicNumber, prime: &PrimeIdealK) -> Result<UnitClass> {
    if prime.split_type == SplitType::Ramified {
        return Err(Error::domain("prime above 5 needs class_at_5"));
    }
    if a.is_zero() {
        return Err(Error::domain("class of zero"));
    }
    let d = a.denominator();
    let x = a.scale(&BigRational::from_integer(d.clone()));
    let cx = integral_class(&x, prime)?;
    let cd = integral_class(&CyclotomicNumber::from_integer(d), prime)?;
    cx.add(&cd.neg())
}

fn integral_class(x: &CyclotomicNumber, prime: &PrimeIdealK) -> Result<UnitClass> {
    let field = ResidueField::new(prime)?;
    let (v, u) = strip_prime(x, prime)?;
    let ubar = field.reduce(&u)?;
    let q = field.order();
    let chi = field.pow(&ubar, (q - 1) / 5);
    let j = field
        .zeta_log(&chi)
        .ok_or_else(|| Error::Internal("power residue is not a fifth root of unity".into()))?;
    let mut m = q - 1;
    while m % 5 == 0 {
        m /= 5;
    }
    let minv = arith::inv_mod((m % 5) as u64, 5).unwrap() as u8;
    Ok(UnitClass::new(
        ClassBasis::for_prime(prime),
        vec![v.rem_euclid(5) as u8, (j * minv) % 5],
    ))
}

/// Class at any prime, dispatching on the prime type.
pub fn class_at(a: &CyclotomicNumber, prime: &PrimeIdealK) -> Result<UnitClass> {
    match prime.split_type {
        SplitType::Ramified => class_at_5(a),
        _ => class_at_unramified(a, prime),
    }
}
