//! Short-vector search in ideals of Z[z] under the trace form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

type Vec4 = [BigInt; 4];

fn dot(x: &Vec4, y: &Vec4) -> BigInt {
    let sx: BigInt = x.iter().sum();
    let sy: BigInt = y.iter().sum();
    let d: BigInt = x.iter().zip(y).map(|(a, b)| a * b).sum();
    BigInt::from(5) * d - sx * sy
}

/// LLL reduction (delta = 3/4) of a basis with respect to the trace form.
fn lll(mut b: Vec<Vec4>) -> Vec<Vec4> {
    let n = b.len();
    let delta = BigRational::new(3.into(), 4.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&b);
            let m = mu[k][j].round();
            if !m.is_zero() {
                let m = m.to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(bj.iter()) {
                    *x -= &m * y;
                }
            }
        }
        let (mu, bstar) = gram_schmidt(&b);
        let lhs = &bstar[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = k.saturating_sub(1).max(1);
        }
    }
    b
}

/// Gram-Schmidt coefficients and squared lengths.
fn gram_schmidt(b: &[Vec4]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bs: Vec<BigRational> = vec![BigRational::zero(); n];
    let g: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| dot(&b[i], &b[j])).collect()).collect();
    for i in 0..n {
        for j in 0..i {
            let mut s = BigRational::from_integer(g[i][j].clone());
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &bs[k];
            }
            mu[i][j] = s / &bs[j];
        }
        let mut s = BigRational::from_integer(g[i][i].clone());
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &bs[k];
        }
        bs[i] = s;
    }
    (mu, bs)
}

/// All nonzero lattice vectors (as coordinate vectors in Z^4) of the ideal
/// generated by p and z - r whose trace form is at most `bound`.
pub(crate) fn short_vectors(p: u64, r: u64, bound: f64) -> Vec<Vec4> {
    let pb = BigInt::from(p);
    let r2 = BigInt::from(crate::arith::mul_mod(r, r, p));
    let r3 = BigInt::from(crate::arith::mul_mod(crate::arith::mul_mod(r, r, p), r, p));
    let z = BigInt::zero;
    let basis = vec![
        [pb, z(), z(), z()],
        [-BigInt::from(r), 1.into(), z(), z()],
        [-r2, z(), 1.into(), z()],
        [-r3, z(), z(), 1.into()],
    ];
    let b = lll(basis);
    enumerate(&b, bound)
}

/// Fincke-Pohst enumeration over a reduced basis; floating point is safe
/// here since reduced Gram entries are O(sqrt p).
fn enumerate(b: &[Vec4], bound: f64) -> Vec<Vec4> {
    let n = b.len();
    let g: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&b[i], &b[j]).to_f64().unwrap()).collect())
        .collect();
    // q[i][i] and q[i][j] (j > i) such that x^T G x = sum q_ii (x_i + sum_j q_ij x_j)^2
    let mut qm = g.clone();
    for i in 0..n {
        for j in i + 1..n {
            qm[j][i] = qm[i][j];
            qm[i][j] /= qm[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                qm[k][l] -= qm[k][i] * qm[i][l];
            }
        }
    }
    let bound = bound * (1.0 + 1e-9) + 1e-6;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    recurse(&qm, n, n - 1, bound, &mut x, &mut out, b);
    out
}

fn recurse(qm: &[Vec<f64>], n: usize, i: usize, rem: f64, x: &mut Vec<i64>, out: &mut Vec<Vec4>, b: &[Vec4]) {
    let c: f64 = -(i + 1..n).map(|j| qm[i][j] * x[j] as f64).sum::<f64>();
    let w = (rem / qm[i][i]).max(0.0).sqrt();
    let lo = (c - w).ceil() as i64;
    let hi = (c + w).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let t = xi as f64 - c;
        let r = rem - qm[i][i] * t * t;
        if r < -1e-9 {
            continue;
        }
        if i == 0 {
            if x.iter().any(|&v| v != 0) {
                let mut v: Vec4 = Default::default();
                for (k, bk) in b.iter().enumerate() {
                    for (vj, bkj) in v.iter_mut().zip(bk.iter()) {
                        *vj += bkj * x[k];
                    }
                }
                out.push(v);
            }
        } else {
            recurse(qm, n, i - 1, r, x, out, b);
        }
    }
    x[i] = 0;
}
