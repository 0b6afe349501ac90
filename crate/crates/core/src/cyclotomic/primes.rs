use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::lattice;
use super::quadratic::{normalize_generator_split_two, SqrtFiveForm};
use super::CyclotomicNumber;
use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitType {
    Inert,
    SplitTwo,
    SplitCompletely,
    Ramified,
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Inert => "inert",
            SplitType::SplitTwo => "split-two",
            SplitType::SplitCompletely => "split-completely",
            SplitType::Ramified => "ramified",
        })
    }
}

/// How z reduces modulo the prime: the residue field is F_p[z]/(f) with
/// f = z - root, z^2 - trace*z + 1, or the full cyclotomic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    Ramified,
    Linear { root: u64 },
    Quadratic { trace: u64 },
    Quartic,
}

/// A prime ideal of Z[z] with a chosen generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdealK {
    pub p: u64,
    pub split_type: SplitType,
    pub generator: CyclotomicNumber,
    pub residue_degree: u32,
    pub norm: u128,
    pub reduction: Reduction,
    /// Position among the primes above p, in the order returned by
    /// `factor_rational_prime`.
    pub index: usize,
    /// For primes over p = 4 mod 5, the generator as a + b sqrt 5.
    pub real_form: Option<SqrtFiveForm>,
}

impl PrimeIdealK {
    /// Short label such as `7`, `pi(19,1)` or `1-z`.
    pub fn label(&self) -> String {
        match self.split_type {
            SplitType::Ramified => "1-z".into(),
            SplitType::Inert => self.p.to_string(),
            _ => format!("pi({},{})", self.p, self.index + 1),
        }
    }
}

/// Tunables for the generator search.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Initial trace-form bound as a multiple of sqrt(p).
    pub trace_factor: f64,
    /// Number of times the bound may grow by 1.5x before giving up.
    pub max_rounds: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            trace_factor: 4.5,
            max_rounds: 8,
        }
    }
}

pub fn splitting_type(p: u64) -> Result<SplitType> {
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(match p % 5 {
        0 => SplitType::Ramified,
        1 => SplitType::SplitCompletely,
        4 => SplitType::SplitTwo,
        _ => SplitType::Inert,
    })
}

pub fn factor_rational_prime(p: u64) -> Result<Vec<PrimeIdealK>> {
    factor_rational_prime_with(p, &SearchConfig::default())
}

pub fn factor_rational_prime_with(p: u64, cfg: &SearchConfig) -> Result<Vec<PrimeIdealK>> {
    let st = splitting_type(p)?;
    let pp = p as u128;
    Ok(match st {
        SplitType::Ramified => vec![PrimeIdealK {
            p,
            split_type: st,
            generator: CyclotomicNumber::from_ints([1, -1, 0, 0]),
            residue_degree: 1,
            norm: 5,
            reduction: Reduction::Ramified,
            index: 0,
            real_form: None,
        }],
        SplitType::Inert => vec![PrimeIdealK {
            p,
            split_type: st,
            generator: CyclotomicNumber::from_integer(p),
            residue_degree: 4,
            norm: pp * pp * pp * pp,
            reduction: Reduction::Quartic,
            index: 0,
            real_form: None,
        }],
        SplitType::SplitTwo => {
            let (a2, b2) = quadratic_solution(p)?;
            [b2.clone(), -b2]
                .into_iter()
                .enumerate()
                .map(|(index, b2)| {
                    let g = SqrtFiveForm::from_doubled(a2.clone(), b2).to_cyclotomic();
                    let form = normalize_generator_split_two(&g)?;
                    let trace = split_two_trace(&form, p)?;
                    Ok(PrimeIdealK {
                        p,
                        split_type: st,
                        generator: form.to_cyclotomic(),
                        residue_degree: 2,
                        norm: pp * pp,
                        reduction: Reduction::Quadratic { trace },
                        index,
                        real_form: Some(form),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        SplitType::SplitCompletely => {
            let r = arith::fifth_root_of_unity(p).expect("p = 1 mod 5");
            let mut roots: Vec<u64> = (1..5).map(|j| arith::pow_mod(r, j, p)).collect();
            roots.sort_unstable();
            roots
                .into_iter()
                .enumerate()
                .map(|(index, root)| {
                    Ok(PrimeIdealK {
                        p,
                        split_type: st,
                        generator: degree_one_generator(p, root, cfg)?,
                        residue_degree: 1,
                        norm: pp,
                        reduction: Reduction::Linear { root },
                        index,
                        real_form: None,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    })
}

/// Lexicographically least element of norm p among the short vectors of the
/// ideal (p, z - root).
fn degree_one_generator(p: u64, root: u64, cfg: &SearchConfig) -> Result<CyclotomicNumber> {
    let target = BigRational::from_integer(BigInt::from(p));
    let mut bound = cfg.trace_factor * (p as f64).sqrt();
    for _ in 0..=cfg.max_rounds {
        let best = lattice::short_vectors(p, root, bound)
            .into_iter()
            .filter(|v| {
                let x = CyclotomicNumber::from_bigints(v.clone());
                x.norm().abs() == target
            })
            .min();
        if let Some(v) = best {
            return Ok(CyclotomicNumber::from_bigints(v));
        }
        bound *= 1.5;
    }
    Err(Error::Bound(format!(
        "no generator of norm {p} found for the prime (p, z - {root})"
    )))
}

/// Smallest B >= 0 (then A > 0) with A^2 - 5B^2 = +-4p and A = B mod 2.
fn quadratic_solution(p: u64) -> Result<(BigInt, BigInt)> {
    let p4 = 4 * p as u128;
    let limit = 2 * (p as u128).sqrt() + 10;
    for b in 0..=limit {
        let five_b2 = 5 * b * b;
        for cand in [Some(five_b2 + p4), five_b2.checked_sub(p4)].into_iter().flatten() {
            let a = cand.sqrt();
            if a * a == cand && (a + b) % 2 == 0 && a > 0 {
                return Ok((BigInt::from(a), BigInt::from(b)));
            }
        }
    }
    Err(Error::Bound(format!("no element of norm +-{p} in Z[(1+sqrt5)/2]")))
}

/// Trace s of z modulo the prime generated by a + b sqrt5: sqrt5 = -a/b there,
/// and z + 1/z = (sqrt5 - 1)/2.
fn split_two_trace(form: &SqrtFiveForm, p: u64) -> Result<u64> {
    let to_mod = |x: &BigRational| -> Option<u64> {
        let pb = BigInt::from(p);
        let n = x.numer().mod_floor(&pb);
        let d = x.denom().mod_floor(&pb);
        let dinv = arith::inv_mod(d.to_u64()?, p)?;
        Some(arith::mul_mod(n.to_u64()?, dinv, p))
    };
    let a = to_mod(&form.a).ok_or_else(|| Error::Internal("bad a".into()))?;
    let b = to_mod(&form.b).ok_or_else(|| Error::Internal("b vanishes mod p".into()))?;
    if b.is_zero() {
        return Err(Error::Internal("b vanishes mod p".into()));
    }
    let t = arith::mul_mod(p - a % p, arith::inv_mod(b, p).unwrap(), p) % p;
    let inv2 = arith::inv_mod(2, p).unwrap();
    let s = arith::mul_mod((t + p - 1) % p, inv2, p);
    debug_assert_eq!((arith::mul_mod(s, s, p) + s + p - 1) % p, 0);
    Ok(s)
}

/// Generators' product divided by p, as an exact unit check helper.
pub fn generator_product(ideals: &[PrimeIdealK]) -> CyclotomicNumber {
    ideals
        .iter()
        .fold(CyclotomicNumber::one(), |acc, i| &acc * &i.generator)
}
