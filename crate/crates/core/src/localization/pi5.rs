//! The completion at the ramified prime, modelled as O/5^k in the basis
//! 1, pi, pi^2, pi^3 with pi = 1 - z and pi^4 = 5pi^3 - 10pi^2 + 10pi - 5.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};

/// Largest supported 5-adic modulus exponent (i128 headroom).
const MAX_K: u32 = 20;

/// Largest absolute pi-adic precision accepted by `pi5_expand`.
pub const MAX_PRECISION: u32 = 4 * (MAX_K - 2);

/// Working precision used when classes are computed from exact elements.
pub const DEFAULT_PRECISION: u32 = 12;

/// 5/pi in the pi basis.
const FIVE_OVER_PI: [i128; 4] = [10, -10, 5, -1];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct O5 {
    c: [i128; 4],
    k: u32,
}

fn modulus(k: u32) -> i128 {
    5i128.pow(k)
}

impl O5 {
    fn reduce(mut c: [i128; 4], k: u32) -> O5 {
        let m = modulus(k);
        for x in c.iter_mut() {
            *x = x.rem_euclid(m);
        }
        O5 { c, k }
    }

    pub(crate) fn from_int(n: i128, k: u32) -> O5 {
        O5::reduce([n, 0, 0, 0], k)
    }

    pub(crate) fn from_bigint(n: &BigInt, k: u32) -> O5 {
        let r = n.mod_floor(&BigInt::from(modulus(k))).to_i128().unwrap();
        O5::from_int(r, k)
    }

    pub(crate) fn pi(k: u32) -> O5 {
        O5::reduce([0, 1, 0, 0], k)
    }

    pub(crate) fn pi_pow(j: u32, k: u32) -> O5 {
        let mut r = O5::from_int(1, k);
        for _ in 0..j {
            r = r.mul(&O5::pi(k));
        }
        r
    }

    /// Image of an integral element under z -> 1 - pi.
    pub(crate) fn from_integral(c: &[BigInt; 4], k: u32) -> O5 {
        let zeta = O5::reduce([1, -1, 0, 0], k);
        let mut acc = O5::from_int(0, k);
        let mut zp = O5::from_int(1, k);
        for ci in c {
            acc = acc.add(&zp.scale(&O5::from_bigint(ci, k).c[0]));
            zp = zp.mul(&zeta);
        }
        acc
    }

    pub(crate) fn add(&self, o: &O5) -> O5 {
        O5::reduce([0, 1, 2, 3].map(|i| self.c[i] + o.c[i]), self.k)
    }

    pub(crate) fn sub(&self, o: &O5) -> O5 {
        O5::reduce([0, 1, 2, 3].map(|i| self.c[i] - o.c[i]), self.k)
    }

    pub(crate) fn scale(&self, n: &i128) -> O5 {
        let m = modulus(self.k);
        O5::reduce(self.c.map(|x| (x * n.rem_euclid(m)) % m), self.k)
    }

    pub(crate) fn mul(&self, o: &O5) -> O5 {
        let m = modulus(self.k);
        let mut t = [0i128; 7];
        for i in 0..4 {
            for j in 0..4 {
                t[i + j] = (t[i + j] + self.c[i] * o.c[j]) % m;
            }
        }
        for top in (4..7).rev() {
            let h = t[top];
            t[top] = 0;
            let b = top - 4;
            t[b] -= 5 * h;
            t[b + 1] += 10 * h;
            t[b + 2] -= 10 * h;
            t[b + 3] += 5 * h;
            for x in t.iter_mut().take(top) {
                *x %= m;
            }
        }
        O5::reduce([t[0], t[1], t[2], t[3]], self.k)
    }

    pub(crate) fn pow(&self, mut e: u64) -> O5 {
        let mut b = *self;
        let mut r = O5::from_int(1, self.k);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    fn digit0(&self) -> u8 {
        (self.c[0].rem_euclid(5)) as u8
    }

    /// (self - d)/pi where d is the constant digit; exact.
    fn shift(&self) -> O5 {
        let d = self.digit0() as i128;
        let t = (self.c[0] - d) / 5;
        let base = [self.c[1], self.c[2], self.c[3], 0];
        O5::reduce([0, 1, 2, 3].map(|i| base[i] + t * FIVE_OVER_PI[i]), self.k)
    }

    pub(crate) fn digits(&self, n: usize) -> Vec<u8> {
        let mut x = *self;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(x.digit0());
            x = x.shift();
        }
        out
    }

    pub(crate) fn from_digits(d: &[u8], k: u32) -> O5 {
        let mut acc = O5::from_int(0, k);
        for &x in d.iter().rev() {
            acc = acc.mul(&O5::pi(k)).add(&O5::from_int(x as i128, k));
        }
        acc
    }

    /// Exact division by pi; caller guarantees divisibility.
    pub(crate) fn div_pi(&self) -> O5 {
        debug_assert_eq!(self.digit0(), 0);
        self.shift()
    }

    /// Number of leading zero digits, or None if zero to full precision.
    pub(crate) fn valuation(&self) -> Option<u32> {
        let mut x = *self;
        for v in 0..4 * self.k {
            if x.digit0() != 0 {
                return Some(v);
            }
            x = x.shift();
        }
        None
    }

    /// Inverse of a unit by Newton iteration.
    pub(crate) fn inverse(&self) -> O5 {
        let d = self.digit0() as u64;
        debug_assert!(d != 0);
        let mut y = O5::from_int(arith::inv_mod(d, 5).unwrap() as i128, self.k);
        let two = O5::from_int(2, self.k);
        // precision doubles each step: 1, 2, 4, ... >= 4k digits
        let mut prec = 1;
        while prec < 4 * self.k {
            y = y.mul(&two.sub(&self.mul(&y)));
            prec *= 2;
        }
        y
    }

    pub(crate) fn k(&self) -> u32 {
        self.k
    }
}

/// Teichmuller representative of d in Z/5^k, i.e. the (5-1)-th root of unity
/// congruent to d.
pub(crate) fn teichmuller(d: u8, k: u32) -> i128 {
    let m = modulus(k);
    let mut t = d as i128;
    for _ in 0..k {
        let mut r = 1i128;
        for _ in 0..5 {
            r = r * t % m;
        }
        t = r;
    }
    t
}

/// A truncated pi-adic expansion sum digits[i] * pi^(valuation + i), valid
/// modulo pi^precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Pi5Expansion {
    pub valuation: i64,
    pub digits: Vec<u8>,
    pub precision: i64,
}

impl Pi5Expansion {
    /// True when the value is zero modulo pi^precision.
    pub fn is_zero_to_precision(&self) -> bool {
        self.digits.is_empty()
    }

    /// Number of known digits of the unit part.
    pub fn relative_precision(&self) -> usize {
        self.digits.len()
    }

    pub(crate) fn unit_part(&self) -> O5 {
        let k = (self.digits.len() as u32).div_ceil(4) + 1;
        O5::from_digits(&self.digits, k)
    }

    fn from_unit(valuation: i64, u: &O5, rel: usize) -> Pi5Expansion {
        Pi5Expansion {
            valuation,
            digits: u.digits(rel),
            precision: valuation + rel as i64,
        }
    }

    /// The expansion of 1 + pi^j, valid to `precision`.
    pub fn one_plus_pi_pow(j: u32, precision: u32) -> Pi5Expansion {
        let mut digits = vec![0u8; precision as usize];
        digits[0] = 1;
        if (j as usize) < digits.len() {
            digits[j as usize] += 1;
        }
        Pi5Expansion {
            valuation: 0,
            digits,
            precision: precision as i64,
        }
    }

    pub fn mul(&self, o: &Pi5Expansion) -> Pi5Expansion {
        let rel = self.digits.len().min(o.digits.len());
        let v = self.valuation + o.valuation;
        if rel == 0 {
            let p = (self.precision + o.valuation).min(o.precision + self.valuation);
            return Pi5Expansion {
                valuation: p,
                digits: vec![],
                precision: p,
            };
        }
        let u = self.unit_part().mul(&o.unit_part());
        Pi5Expansion::from_unit(v, &u, rel)
    }

    pub fn add(&self, o: &Pi5Expansion) -> Pi5Expansion {
        let prec = self.precision.min(o.precision);
        let m = self.valuation.min(o.valuation);
        let need = (prec - m).max(0) as usize;
        if need == 0 {
            return Pi5Expansion {
                valuation: prec,
                digits: vec![],
                precision: prec,
            };
        }
        let k = (need as u32).div_ceil(4) + 1;
        let lift = |e: &Pi5Expansion| -> O5 {
            if e.digits.is_empty() {
                return O5::from_int(0, k);
            }
            let mut d = vec![0u8; (e.valuation - m) as usize];
            d.extend_from_slice(&e.digits);
            d.truncate(need);
            O5::from_digits(&d, k)
        };
        let s = lift(self).add(&lift(o));
        let digits = s.digits(need);
        match digits.iter().position(|&d| d != 0) {
            None => Pi5Expansion {
                valuation: prec,
                digits: vec![],
                precision: prec,
            },
            Some(z) => Pi5Expansion {
                valuation: m + z as i64,
                digits: digits[z..].to_vec(),
                precision: prec,
            },
        }
    }

    pub fn neg(&self) -> Pi5Expansion {
        if self.digits.is_empty() {
            return self.clone();
        }
        let u = self.unit_part();
        let m = O5::from_int(0, u.k()).sub(&u);
        Pi5Expansion::from_unit(self.valuation, &m, self.digits.len())
    }

    /// Expansion of a pi-adic integer held in the working ring, exact modulo
    /// pi^(4k).
    pub(crate) fn from_o5(x: &O5) -> Pi5Expansion {
        let prec = 4 * x.k() as i64;
        match x.valuation() {
            None => Pi5Expansion {
                valuation: prec,
                digits: vec![],
                precision: prec,
            },
            Some(v) => {
                let mut u = *x;
                for _ in 0..v {
                    u = u.div_pi();
                }
                Pi5Expansion::from_unit(v as i64, &u, (prec - v as i64) as usize)
            }
        }
    }

    /// Truncate to a lower absolute precision.
    pub fn truncate(&self, precision: i64) -> Pi5Expansion {
        if precision >= self.precision {
            return self.clone();
        }
        let keep = (precision - self.valuation).max(0) as usize;
        if keep == 0 {
            return Pi5Expansion {
                valuation: precision,
                digits: vec![],
                precision,
            };
        }
        Pi5Expansion {
            valuation: self.valuation,
            digits: self.digits[..keep].to_vec(),
            precision,
        }
    }
}

impl fmt::Display for Pi5Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &d) in self.digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let e = self.valuation + i as i64;
            terms.push(match (d, e) {
                (_, 0) => format!("{d}"),
                (1, 1) => "pi".to_string(),
                (_, 1) => format!("{d}*pi"),
                (1, _) => format!("pi^{e}"),
                _ => format!("{d}*pi^{e}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(pi^{})", terms.join(" + "), self.precision)
    }
}

/// Exact pi-adic valuation of a nonzero integral element: v_5 of its norm.
fn integral_valuation(x: &CyclotomicNumber) -> u32 {
    arith::valuation_big(&x.norm().to_integer(), 5)
}

/// Exact pi-adic valuation of a nonzero element.
pub fn pi5_valuation(a: &CyclotomicNumber) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::domain("valuation of zero"));
    }
    let d = a.denominator();
    let x = a.scale(&num_rational::BigRational::from_integer(d.clone()));
    Ok(integral_valuation(&x) as i64 - 4 * arith::valuation_big(&d, 5) as i64)
}

/// Expansion of a nonzero element of Q(z) modulo pi^precision.
pub fn pi5_expand(a: &CyclotomicNumber, precision: u32) -> Result<Pi5Expansion> {
    if a.is_zero() {
        return Err(Error::domain("cannot expand zero"));
    }
    if precision > MAX_PRECISION {
        return Err(Error::Precision(format!(
            "requested {precision} digits, at most {MAX_PRECISION} supported"
        )));
    }
    let d = a.denominator();
    let x = a.scale(&num_rational::BigRational::from_integer(d.clone()));
    let xc = x.integral_coords().expect("cleared denominators");
    let e = arith::valuation_big(&d, 5);
    let d1 = &d / BigInt::from(5).pow(e);
    let vx = integral_valuation(&x);
    let val = vx as i64 - 4 * e as i64;
    let n = precision as i64;
    if n <= val {
        return Ok(Pi5Expansion {
            valuation: n,
            digits: vec![],
            precision: n,
        });
    }
    let rel = (n - val) as usize;
    let k = (vx + rel as u32).div_ceil(4) + 2;
    if k > MAX_K {
        return Err(Error::Precision(format!(
            "valuation {vx} with {rel} digits exceeds the working modulus"
        )));
    }
    let mut u = O5::from_integral(&xc, k);
    for _ in 0..vx {
        u = u.div_pi();
    }
    let d1 = O5::from_bigint(&d1, k);
    u = u.mul(&d1.inverse());
    if e > 0 {
        let mut five = O5::from_int(5, k);
        for _ in 0..4 {
            five = five.div_pi();
        }
        u = u.mul(&five.inverse().pow(e as u64));
    }
    Ok(Pi5Expansion::from_unit(val, &u, rel))
}

/// Square root with leading digit in {1, 2}, or None when `x` is not a
/// square (odd valuation, or unit part outside +-1 times principal units).
pub fn hensel_sqrt(x: &Pi5Expansion, precision: Option<i64>) -> Option<Pi5Expansion> {
    if x.is_zero_to_precision() || x.valuation.rem_euclid(2) != 0 {
        return None;
    }
    let d0 = x.digits[0];
    let y0 = match d0 {
        1 => 1,
        4 => 2,
        _ => return None,
    };
    let rel = x.digits.len();
    let u = x.unit_part();
    let k = u.k();
    let inv2 = O5::from_int(2, k).inverse();
    let mut y = O5::from_int(y0, k);
    let mut prec = 1;
    while prec < 4 * k {
        y = y.add(&u.mul(&y.inverse())).mul(&inv2);
        prec *= 2;
    }
    let out = Pi5Expansion::from_unit(x.valuation / 2, &y, rel);
    Some(match precision {
        Some(p) => out.truncate(p),
        None => out,
    })
}

/// Expansion of a rational integer.
pub fn pi5_expand_integer(n: i64, precision: u32) -> Result<Pi5Expansion> {
    pi5_expand(&CyclotomicNumber::from_integer(n), precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_of_five() {
        let e = pi5_expand_integer(5, 11).unwrap();
        assert_eq!(e.valuation, 4);
        assert_eq!(&e.digits[..6], &[4, 3, 3, 4, 1, 3]);
        // the pi^10 digit is 4, not 0
        assert_eq!(e.digits[6], 4);
        assert_eq!(e.precision, 11);
    }

    #[test]
    fn expansion_of_sqrt5() {
        let e = pi5_expand(&CyclotomicNumber::sqrt5(), 7).unwrap();
        assert_eq!(e.valuation, 2);
        assert_eq!(e.digits, vec![2, 2, 1, 0, 0]);
    }

    #[test]
    fn uniformizer_and_units() {
        let e = pi5_expand(&CyclotomicNumber::from_ints([1, -1, 0, 0]), 6).unwrap();
        assert_eq!(e.valuation, 1);
        assert_eq!(e.digits, vec![1, 0, 0, 0, 0]);
        // -(1 + sqrt5)/2 = 2 + 4pi^2 + 4pi^3 + pi^5
        let m = pi5_expand(&CyclotomicNumber::u_f(), 6).unwrap();
        assert_eq!(m.digits, vec![2, 0, 4, 4, 0, 1]);
    }

    #[test]
    fn teichmuller_of_two() {
        let t = teichmuller(2, 3);
        assert_eq!(t % 25, 7);
        let e = pi5_expand_integer(t as i64, 6).unwrap();
        assert_eq!(e.digits, vec![2, 0, 0, 0, 4, 3]);
        assert_eq!((t * t * t * t) % 125, 1);
    }

    #[test]
    fn negative_valuation_roundtrip() {
        let a = CyclotomicNumber::from_rational(num_rational::BigRational::new(3.into(), 25.into()));
        let e = pi5_expand(&a, 4).unwrap();
        assert_eq!(e.valuation, -8);
        let f = pi5_expand_integer(25, 12).unwrap();
        let prod = e.mul(&f);
        assert_eq!(prod.valuation, 0);
        assert_eq!(prod.digits[0], 3);
    }

    #[test]
    fn square_roots() {
        let four = pi5_expand_integer(4, 12).unwrap();
        let two = hensel_sqrt(&four, None).unwrap();
        assert_eq!(two, pi5_expand_integer(2, 12).unwrap());
        let x = Pi5Expansion::one_plus_pi_pow(3, 12);
        let y = hensel_sqrt(&x, None).unwrap();
        assert_eq!(y.mul(&y).truncate(6), x.truncate(6));
        let odd = pi5_expand(&CyclotomicNumber::from_ints([2, -2, 0, 0]), 10).unwrap();
        assert!(hensel_sqrt(&odd, None).is_none());
        // 2 is a non-square unit
        assert!(hensel_sqrt(&pi5_expand_integer(2, 8).unwrap(), None).is_none());
    }

    #[test]
    fn addition_tracks_cancellation() {
        let a = pi5_expand_integer(7, 10).unwrap();
        let b = pi5_expand_integer(-2, 10).unwrap();
        let s = a.add(&b);
        assert_eq!(s, pi5_expand_integer(5, 10).unwrap());
    }
}
