//! Exact arithmetic in Q(z), z = exp(2 pi i / 5), and its primes.

mod lattice;
mod number;
mod primes;
mod quadratic;

pub use number::{arith, ArithOp, CyclotomicNumber};
pub use primes::{
    factor_rational_prime, factor_rational_prime_with, generator_product, splitting_type, PrimeIdealK,
    Reduction, SearchConfig, SplitType,
};
pub use quadratic::{normalize_generator_split_two, residue_mod5, SqrtFiveForm};

/// The norm of `a`, i.e. the product of its four conjugates.
pub fn norm(a: &CyclotomicNumber) -> num_rational::BigRational {
    a.norm()
}

/// Image of `a` under z -> z^r.
pub fn galois_apply(a: &CyclotomicNumber, r: u32) -> CyclotomicNumber {
    a.galois(r)
}
