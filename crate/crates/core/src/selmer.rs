//! The (1 - z)-descent on y^2 = x^5 + m^2 over K = Q(z).
//!
//! K(S,5) is spanned by z, 1+z, 2, 1-z and the chosen generators of the
//! primes dividing m. The Selmer group is the intersection over the bad
//! primes of the pullbacks of the local images under the restriction maps.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::cyclotomic::{factor_rational_prime_with, CyclotomicNumber, PrimeIdealK, SearchConfig, SplitType};
use crate::error::{Error, Result};
use crate::f5linalg::{preimage, Ambient, F5Matrix, F5Subspace};
use crate::localization::{
    class_at, class_of_expansion, hensel_sqrt, pi5_valuation, valuation_at, ClassBasis,
    Pi5Expansion, Quad, QuadRing, UnitClass, EXTENSIONS, O5,
};

/// Tunables for the descent.
#[derive(Clone, Copy, Debug)]
pub struct DescentConfig {
    /// Working modulus 5^precision for the search at the prime above 5.
    pub precision: u32,
    /// x runs over representatives of O / pi^enumeration_digits.
    pub enumeration_digits: u32,
    pub search: SearchConfig,
}

impl Default for DescentConfig {
    fn default() -> Self {
        DescentConfig {
            precision: 16,
            enumeration_digits: 7,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DescentContext {
    pub m: u64,
    pub config: DescentConfig,
    /// (2), (1-z), then the primes above each p | m in increasing p.
    pub bad_primes: Vec<PrimeIdealK>,
    /// z, 1+z, 2, 1-z, then the generators of the m-primes.
    pub ks5_basis: Vec<CyclotomicNumber>,
    pub ambient: Ambient,
}

impl DescentContext {
    pub fn dim(&self) -> usize {
        self.ks5_basis.len()
    }

    /// Position of the prime above 5 in `bad_primes`.
    fn five_index(&self) -> usize {
        1
    }
}

pub fn build_context(m: i64) -> Result<DescentContext> {
    build_context_with(m, DescentConfig::default())
}

pub fn build_context_with(m: i64, config: DescentConfig) -> Result<DescentContext> {
    if m <= 0 {
        return Err(Error::domain(format!("m = {m} must be positive")));
    }
    if m % 2 == 0 {
        return Err(Error::domain(format!("m = {m} must be odd")));
    }
    if m % 5 == 0 {
        return Err(Error::domain(format!("m = {m} is divisible by 5")));
    }
    let mu = m as u64;
    if !arith::is_squarefree(mu) {
        return Err(Error::domain(format!("m = {m} is not square-free")));
    }
    if config.enumeration_digits < 1 || config.enumeration_digits > 10 {
        return Err(Error::Bound(format!(
            "enumeration depth {} outside 1..=10",
            config.enumeration_digits
        )));
    }
    if !(4..=18).contains(&config.precision) {
        return Err(Error::Precision(format!("working precision {} outside 4..=18", config.precision)));
    }
    let mut bad_primes = factor_rational_prime_with(2, &config.search)?;
    bad_primes.extend(factor_rational_prime_with(5, &config.search)?);
    for (p, _) in arith::factorize(mu) {
        bad_primes.extend(factor_rational_prime_with(p, &config.search)?);
    }
    let mut ks5_basis = vec![
        CyclotomicNumber::zeta(),
        CyclotomicNumber::from_ints([1, 1, 0, 0]),
    ];
    let mut labels: Vec<String> = vec!["z".into(), "1+z".into()];
    for pr in &bad_primes {
        ks5_basis.push(pr.generator.clone());
        labels.push(pr.label());
    }
    Ok(DescentContext {
        m: mu,
        config,
        bad_primes,
        ks5_basis,
        ambient: Ambient::new(labels),
    })
}

/// The restriction map K(S,5) -> K_P^x / K_P^x5 as a matrix.
pub fn local_map(ctx: &DescentContext, prime: &PrimeIdealK) -> Result<F5Matrix> {
    let basis = ClassBasis::for_prime(prime);
    let cols = ctx
        .ks5_basis
        .iter()
        .map(|g| class_at(g, prime).map(|c| c.exponents))
        .collect::<Result<Vec<_>>>()?;
    F5Matrix::from_columns(&ctx.ambient, &basis.ambient(), cols)
}

/// Class of an expansion whose low digits are reliable up to `limit`.
fn reliable_class(e: &Pi5Expansion, limit: i64) -> Option<UnitClass> {
    if e.relative_precision() < 6 || e.valuation + 8 > limit {
        return None;
    }
    class_of_expansion(&e.truncate(e.valuation + 8)).ok()
}

/// Class of Y - c for a local point; falls back to -class(Y + c) when
/// Y - c is too close to zero, using (Y - c)(Y + c) = X^5.
fn point_class(y: &Pi5Expansion, c_plus: &Pi5Expansion, c_minus: &Pi5Expansion, limit: i64) -> Option<UnitClass> {
    reliable_class(&y.add(c_minus), limit).or_else(|| reliable_class(&y.add(c_plus), limit).map(|c| c.neg()))
}

/// Class of the norm of Y - c for a point over a quadratic extension, i.e.
/// the image of the rational degree-2 divisor P + P' - 2 inf.
fn quad_point_class(ring: &QuadRing, y: &Quad, c: &O5, limit: i64) -> Option<UnitClass> {
    let minus = Quad {
        a: y.a.sub(c),
        b: y.b,
    };
    let plus = Quad {
        a: y.a.add(c),
        b: y.b,
    };
    let nm = Pi5Expansion::from_o5(&ring.norm(&minus));
    let np = Pi5Expansion::from_o5(&ring.norm(&plus));
    reliable_class(&nm, limit).or_else(|| reliable_class(&np, limit).map(|c| c.neg()))
}

/// Digits of x per coordinate for points over quadratic extensions.
const QUAD_DIGITS: u32 = 3;

/// Integral x with this many digits are tried before quadratic points.
const SHALLOW_DIGITS: u32 = 4;

/// Largest t for which points with v(x) = -2t are tried.
const MAX_POLE: u32 = 3;

/// Accumulates point classes until they span three dimensions.
struct Collector {
    amb: Ambient,
    found: Vec<Vec<u8>>,
    span: F5Subspace,
    k: u32,
    m: i128,
    /// digits lost to divisions by pi stay well below this margin
    limit: i64,
    tried: u64,
}

impl Collector {
    fn new(m: u64, k: u32) -> Self {
        let amb = ClassBasis::Five.ambient();
        Collector {
            span: F5Subspace::zero(&amb),
            amb,
            found: Vec::new(),
            k,
            m: m as i128,
            limit: 4 * k as i64 - 16,
            tried: 0,
        }
    }

    fn done(&self) -> bool {
        self.span.dim() == 3
    }

    fn add(&mut self, cl: UnitClass) -> Result<()> {
        if !self.span.contains(&cl.exponents)? {
            self.found.push(cl.exponents);
            self.span = F5Subspace::span(&self.amb, &self.found)?;
        }
        Ok(())
    }

    /// x = X / pi^(2t) for X with the digits of idx in base 5, idx in range.
    fn rational(&mut self, t: u32, digits: u32, range: std::ops::Range<u64>) -> Result<()> {
        let k = self.k;
        let c = O5::from_int(self.m, k).mul(&O5::pi_pow(5 * t, k));
        let c2 = c.mul(&c);
        let c_plus = Pi5Expansion::from_o5(&c);
        let c_minus = c_plus.neg();
        for idx in range {
            if self.done() {
                break;
            }
            let ds = base5(idx, digits);
            if t > 0 && ds[0] == 0 {
                continue;
            }
            self.tried += 1;
            let x = O5::from_digits(&ds, k);
            let f = Pi5Expansion::from_o5(&x.pow(5).add(&c2));
            let Some(y) = hensel_sqrt(&f, None) else {
                continue;
            };
            if let Some(cl) = point_class(&y, &c_plus, &c_minus, self.limit) {
                self.add(cl)?;
            }
        }
        Ok(())
    }

    /// x = x0 + x1 s over each quadratic extension, x1 nonzero.
    fn quadratic(&mut self) -> Result<()> {
        let k = self.k;
        let c = O5::from_int(self.m, k);
        let c2 = c.mul(&c);
        let q = 5u64.pow(QUAD_DIGITS);
        for &(unit, e) in &EXTENSIONS {
            let ring = QuadRing::new(unit, e, k);
            for idx in q..q * q {
                if self.done() {
                    return Ok(());
                }
                self.tried += 1;
                let x = Quad {
                    a: O5::from_digits(&base5(idx % q, QUAD_DIGITS), k),
                    b: O5::from_digits(&base5(idx / q, QUAD_DIGITS), k),
                };
                let mut f = ring.pow(&x, 5);
                f.a = f.a.add(&c2);
                let Some(y) = ring.sqrt(&f) else {
                    continue;
                };
                if let Some(cl) = quad_point_class(&ring, &y, &c, self.limit) {
                    self.add(cl)?;
                }
            }
        }
        Ok(())
    }
}

fn base5(idx: u64, n: u32) -> Vec<u8> {
    (0..n).map(|i| ((idx / 5u64.pow(i)) % 5) as u8).collect()
}

/// Image of J(K_5)/phi J(K_5) in the six-dimensional class space at 5,
/// found by collecting classes of local divisors until the span has
/// dimension 3.
///
/// Points are tried in stages: integral x with few digits, degree-2
/// divisors P + P' over the three quadratic extensions (class of the norm
/// of y - m), the remaining integral x, and finally x = X / pi^(2t) with X
/// a unit. For the last kind Y = pi^(5t) y satisfies
/// Y^2 = X^5 + m^2 pi^(10t), and Y - m pi^(5t) has the class of y - m.
pub fn local_image_at_5(ctx: &DescentContext) -> Result<F5Subspace> {
    let n = ctx.config.enumeration_digits;
    let mut col = Collector::new(ctx.m, ctx.config.precision);
    let shallow = 5u64.pow(SHALLOW_DIGITS.min(n));
    col.rational(0, n, 0..shallow)?;
    col.quadratic()?;
    col.rational(0, n, shallow..5u64.pow(n))?;
    for t in 1..=MAX_POLE {
        col.rational(t, n, 0..5u64.pow(n))?;
    }
    if col.done() {
        return Ok(col.span);
    }
    Err(Error::Internal(format!(
        "local image at 5 for m = {} reached dimension {} after {} divisors",
        ctx.m,
        col.span.dim(),
        col.tried
    )))
}

/// Image away from 5: spanned by the class of 2m.
pub fn local_image_away_5(ctx: &DescentContext, prime: &PrimeIdealK) -> Result<F5Subspace> {
    if prime.split_type == SplitType::Ramified {
        return Err(Error::domain("the prime above 5 uses local_image_at_5"));
    }
    let c = class_at(&CyclotomicNumber::from_integer(2 * ctx.m), prime)?;
    F5Subspace::span(&ClassBasis::for_prime(prime).ambient(), [c.exponents])
}

/// Local data at one bad prime.
#[derive(Clone, Debug, Serialize)]
pub struct LocalData {
    pub prime: String,
    pub image_dim: usize,
    pub image: Vec<String>,
    pub pullback_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelmerResult {
    pub m: u64,
    pub dimension: usize,
    pub labels: Vec<String>,
    pub basis: Vec<Vec<u8>>,
    pub rendered: Vec<String>,
    pub rank_upper: usize,
    pub local: Vec<LocalData>,
    #[serde(skip)]
    pub space: F5Subspace,
}

/// Local image and its pullback to K(S,5) at one bad prime.
pub fn local_pullback(ctx: &DescentContext, prime: &PrimeIdealK) -> Result<(F5Subspace, F5Subspace)> {
    let image = match prime.split_type {
        SplitType::Ramified => local_image_at_5(ctx)?,
        _ => local_image_away_5(ctx, prime)?,
    };
    let map = local_map(ctx, prime)?;
    let pull = preimage(&map, &image)?;
    Ok((image, pull))
}

pub fn selmer_compute(ctx: &DescentContext) -> Result<SelmerResult> {
    let locals = ctx
        .bad_primes
        .par_iter()
        .map(|pr| local_pullback(ctx, pr))
        .collect::<Result<Vec<_>>>()?;
    let mut sel = F5Subspace::full(&ctx.ambient);
    for (_, pull) in &locals {
        sel = sel.intersect(pull)?;
    }
    let local = ctx
        .bad_primes
        .iter()
        .zip(&locals)
        .map(|(pr, (img, pull))| LocalData {
            prime: pr.label(),
            image_dim: img.dim(),
            image: img.render_basis(),
            pullback_dim: pull.dim(),
        })
        .collect();
    debug_assert_eq!(ctx.five_index(), 1);
    let dimension = sel.dim();
    Ok(SelmerResult {
        m: ctx.m,
        dimension,
        labels: ctx.ambient.labels().to_vec(),
        basis: sel.rows().to_vec(),
        rendered: sel.render_basis(),
        rank_upper: dimension.saturating_sub(1),
        local,
        space: sel,
    })
}

/// Write a unit as +-z^a (1+z)^b and return (a mod 5, b mod 5).
pub fn unit_log(u: &CyclotomicNumber) -> Result<(u8, u8)> {
    let n = u.norm();
    if !u.is_integral() || n.numer().magnitude() != n.denom().magnitude() {
        return Err(Error::domain(format!("{u} is not a unit")));
    }
    let (re, im) = u.embed(1);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let b = (re.hypot(im).ln() / phi.ln()).round() as i64;
    let w = u.checked_div(&CyclotomicNumber::from_ints([1, 1, 0, 0]).pow_signed(b)?)?;
    for a in 0..5 {
        let z = CyclotomicNumber::zeta_pow(a);
        if w == z || w == -&z {
            return Ok((a as u8, b.rem_euclid(5) as u8));
        }
    }
    Err(Error::Internal(format!("unit {u} did not reduce to a root of unity")))
}

/// Coordinates of an S-unit in the K(S,5) basis.
pub fn ks5_coordinates(ctx: &DescentContext, a: &CyclotomicNumber) -> Result<Vec<u8>> {
    if a.is_zero() {
        return Err(Error::domain("zero has no class"));
    }
    let mut u = a.clone();
    let mut vals = Vec::with_capacity(ctx.bad_primes.len());
    for pr in &ctx.bad_primes {
        let v = match pr.split_type {
            SplitType::Ramified => pi5_valuation(&u)?,
            _ => valuation_at(&u, pr)?,
        };
        u = u.checked_div(&pr.generator.pow_signed(v)?)?;
        vals.push(v);
    }
    let (za, ub) = unit_log(&u).map_err(|_| Error::domain(format!("{a} is not an S-unit")))?;
    let mut out = vec![za, ub];
    out.extend(vals.iter().map(|v| v.rem_euclid(5) as u8));
    Ok(out)
}

/// What can be said about J(Q) from the Selmer dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RankStatement {
    /// Selmer dimension 1: J(Q) = Z/5Z, rank 0, unconditionally.
    RankZero { text: String },
    /// Dimension 2 and odd root number, assuming parity.
    ParityRankOne { text: String },
    Bounds { rank_upper: usize, text: String },
}

impl RankStatement {
    pub fn text(&self) -> &str {
        match self {
            RankStatement::RankZero { text } | RankStatement::ParityRankOne { text } => text,
            RankStatement::Bounds { text, .. } => text,
        }
    }
}

pub fn rank_report(result: &SelmerResult, root_number: i32, parity_assumed: bool) -> RankStatement {
    match result.dimension {
        1 => RankStatement::RankZero {
            text: "J(Q) ≅ Z/5Z, rank 0".into(),
        },
        2 if root_number == -1 && parity_assumed => RankStatement::ParityRankOne {
            text: "J(Q) ≅ Z/5Z ⊕ Z under parity".into(),
        },
        d => RankStatement::Bounds {
            rank_upper: d.saturating_sub(1),
            text: format!("Z/5Z ≤ J(Q) ≤ Z/5Z × Z^{}", d.saturating_sub(1)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_for_seven() {
        let ctx = build_context(7).unwrap();
        assert_eq!(ctx.ambient.labels(), ["z", "1+z", "2", "1-z", "7"]);
        assert_eq!(ctx.bad_primes.len(), 3);
    }

    #[test]
    fn context_rejects() {
        for m in [0, -3, 4, 15, 9, 45] {
            assert!(build_context(m).is_err(), "m = {m}");
        }
    }

    #[test]
    fn units_decompose() {
        let z = CyclotomicNumber::zeta();
        let v = CyclotomicNumber::from_ints([1, 1, 0, 0]);
        let u = &z.pow(3) * &v.pow_signed(-7).unwrap();
        assert_eq!(unit_log(&u).unwrap(), (3, 3));
        assert_eq!(unit_log(&-&u).unwrap(), (3, 3));
        assert!(unit_log(&CyclotomicNumber::from_integer(2)).is_err());
    }
}
