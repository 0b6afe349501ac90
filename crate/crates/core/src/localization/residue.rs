//! Residue fields F_q = Z[z]/P for primes P not above 5.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{inv_mod, mul_mod};
use crate::cyclotomic::{CyclotomicNumber, PrimeIdealK, Reduction};
use crate::error::{Error, Result};

/// F_p[z]/(f) with f of degree 1, 2 or 4 as dictated by the prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    p: u64,
    degree: usize,
    /// z^degree = sum tail[i] z^i
    tail: [u64; 4],
}

/// Element of a residue field: coefficients of 1, z, z^2, z^3 (only the
/// first `degree` are used).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    c: [u64; 4],
}

impl ResidueField {
    pub fn new(prime: &PrimeIdealK) -> Result<Self> {
        let p = prime.p;
        let neg = |x: u64| (p - x % p) % p;
        let (degree, tail) = match prime.reduction {
            Reduction::Ramified => return Err(Error::domain("no unramified residue field above 5")),
            Reduction::Linear { root } => (1, [root % p, 0, 0, 0]),
            Reduction::Quadratic { trace } => (2, [neg(1), trace % p, 0, 0]),
            Reduction::Quartic => (4, [neg(1); 4]),
        };
        Ok(ResidueField { p, degree, tail })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Field order q = p^degree.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree as u32)
    }

    pub fn zero(&self) -> Fq {
        Fq { c: [0; 4] }
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        Fq {
            c: [n % self.p, 0, 0, 0],
        }
    }

    pub fn is_zero(&self, x: &Fq) -> bool {
        x.c.iter().all(|&v| v == 0)
    }

    fn reduce_poly(&self, mut t: Vec<u64>) -> Fq {
        let p = self.p;
        let d = self.degree;
        while t.len() > d {
            let top = t.pop().unwrap();
            let base = t.len() - d;
            for i in 0..d {
                t[base + i] = (t[base + i] + mul_mod(top, self.tail[i], p)) % p;
            }
        }
        let mut c = [0u64; 4];
        c[..t.len()].copy_from_slice(&t);
        Fq { c }
    }

    /// Image of the residue of z.
    pub fn zeta(&self) -> Fq {
        self.reduce_poly(vec![0, 1])
    }

    /// Reduction of an element whose denominator is prime to p.
    pub fn reduce(&self, a: &CyclotomicNumber) -> Result<Fq> {
        let pb = BigInt::from(self.p);
        let mut t = Vec::with_capacity(4);
        for x in a.coords() {
            let d = x.denom().mod_floor(&pb).to_u64().unwrap();
            let dinv = inv_mod(d, self.p).ok_or_else(|| Error::domain("denominator divisible by p"))?;
            let n = x.numer().mod_floor(&pb).to_u64().unwrap();
            t.push(mul_mod(n, dinv, self.p));
        }
        Ok(self.reduce_poly(t))
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq {
            c: [0, 1, 2, 3].map(|i| (a.c[i] + b.c[i]) % self.p),
        }
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Fq {
            c: [0, 1, 2, 3].map(|i| (a.c[i] + self.p - b.c[i]) % self.p),
        }
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let d = self.degree;
        let mut t = vec![0u64; 2 * d - 1];
        for i in 0..d {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..d {
                t[i + j] = (t[i + j] + mul_mod(a.c[i], b.c[j], self.p)) % self.p;
            }
        }
        self.reduce_poly(t)
    }

    pub fn pow(&self, a: &Fq, mut e: u128) -> Fq {
        let mut b = *a;
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn inverse(&self, a: &Fq) -> Option<Fq> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// A square root, or None for non-squares. Deterministic.
    pub fn sqrt(&self, a: &Fq) -> Option<Fq> {
        if self.is_zero(a) {
            return Some(*a);
        }
        let q = self.order();
        if self.p == 2 {
            return Some(self.pow(a, q / 2));
        }
        if self.pow(a, (q - 1) / 2) != self.one() {
            return None;
        }
        let mut s = 0;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self.non_residue();
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        while tt != self.one() {
            let mut i = 0;
            let mut t2 = tt;
            while t2 != self.one() {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    fn non_residue(&self) -> Fq {
        let q = self.order();
        let mut n = 0u64;
        loop {
            let cand = if self.degree == 1 {
                self.from_u64(n + 2)
            } else {
                Fq {
                    c: [n % self.p, 1, 0, 0],
                }
            };
            if self.pow(&cand, (q - 1) / 2) != self.one() && !self.is_zero(&cand) {
                return cand;
            }
            n += 1;
        }
    }

    /// Exponent j with x = zeta^j, if x is a fifth root of unity.
    pub fn zeta_log(&self, x: &Fq) -> Option<u8> {
        let z = self.zeta();
        let mut acc = self.one();
        for j in 0..5 {
            if acc == *x {
                return Some(j);
            }
            acc = self.mul(&acc, &z);
        }
        None
    }
}

impl Fq {
    pub fn coeffs(&self) -> [u64; 4] {
        self.c
    }
}
