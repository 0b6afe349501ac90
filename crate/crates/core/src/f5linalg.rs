//! Linear algebra over F_5 on labelled ambient spaces.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An ordered list of basis symbols. Two ambients are compatible only when
/// their labels agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ambient {
    labels: Vec<String>,
}

impl Ambient {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        Ambient {
            labels: labels.into_iter().map(Into::into).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn check(&self, other: &Ambient) -> Result<()> {
        if self != other {
            return Err(Error::Ambient(format!(
                "[{}] vs [{}]",
                self.labels.join(", "),
                other.labels.join(", ")
            )));
        }
        Ok(())
    }

    fn check_len(&self, v: &[u8]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Ambient(format!(
                "vector of length {} in ambient of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Render an exponent vector multiplicatively, e.g. `2^3*pi(101,1)`.
    pub fn render(&self, v: &[u8]) -> String {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(v)
            .filter(|(_, &e)| e % 5 != 0)
            .map(|(l, &e)| {
                let l = if l.len() > 1 && !l.starts_with("pi(") && l.chars().any(|c| !c.is_alphanumeric()) {
                    format!("({l})")
                } else {
                    l.clone()
                };
                if e % 5 == 1 {
                    l
                } else {
                    format!("{l}^{}", e % 5)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[inline]
fn inv5(a: u8) -> u8 {
    [0, 1, 3, 2, 4][a as usize % 5]
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u8>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&i| rows[i][c] % 5 != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv5(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = (*x % 5 * inv) % 5;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] % 5 != 0 {
                let f = rows[i][c] % 5;
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] % 5 + 5 * 5 - f * rows[r][j]) % 5;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of {x : A x = 0} for A given by rows of length n.
fn nullspace(rows: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|x| x % 5).collect()).collect();
    let pivots = rref(&mut m, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (5 - row[f] % 5) % 5;
            }
            v
        })
        .collect()
}

/// A subspace of F_5^n, stored as its canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct F5Subspace {
    ambient: Ambient,
    rows: Vec<Vec<u8>>,
}

impl F5Subspace {
    pub fn span<V: AsRef<[u8]>>(ambient: &Ambient, vectors: impl IntoIterator<Item = V>) -> Result<Self> {
        let mut rows = Vec::new();
        for v in vectors {
            let v = v.as_ref();
            ambient.check_len(v)?;
            rows.push(v.iter().map(|x| x % 5).collect());
        }
        rref(&mut rows, ambient.dim());
        Ok(F5Subspace {
            ambient: ambient.clone(),
            rows,
        })
    }

    pub fn zero(ambient: &Ambient) -> Self {
        F5Subspace {
            ambient: ambient.clone(),
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: &Ambient) -> Self {
        let n = ambient.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        F5Subspace {
            ambient: ambient.clone(),
            rows,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        self.ambient.check_len(v)?;
        let ext = F5Subspace::span(&self.ambient, self.rows.iter().map(|r| r.as_slice()).chain([v]))?;
        Ok(ext.dim() == self.dim())
    }

    /// Vectors c with c . u = 0 for all u in self.
    fn annihilator(&self) -> Vec<Vec<u8>> {
        nullspace(&self.rows, self.ambient.dim())
    }

    pub fn intersect(&self, other: &F5Subspace) -> Result<F5Subspace> {
        self.ambient.check(&other.ambient)?;
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        let basis = nullspace(&eqs, self.ambient.dim());
        F5Subspace::span(&self.ambient, basis)
    }

    pub fn sum(&self, other: &F5Subspace) -> Result<F5Subspace> {
        self.ambient.check(&other.ambient)?;
        F5Subspace::span(&self.ambient, self.rows.iter().chain(other.rows.iter()))
    }

    /// Human-readable multiplicative rendering of each basis row.
    pub fn render_basis(&self) -> Vec<String> {
        self.rows.iter().map(|r| self.ambient.render(r)).collect()
    }
}

impl fmt::Display for F5Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.render_basis().join(", "))
    }
}

pub fn span<V: AsRef<[u8]>>(ambient: &Ambient, vectors: impl IntoIterator<Item = V>) -> Result<F5Subspace> {
    F5Subspace::span(ambient, vectors)
}

pub fn intersect(u: &F5Subspace, v: &F5Subspace) -> Result<F5Subspace> {
    u.intersect(v)
}

/// A linear map between labelled ambients; column j is the image of the j-th
/// source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F5Matrix {
    source: Ambient,
    target: Ambient,
    columns: Vec<Vec<u8>>,
}

impl F5Matrix {
    pub fn from_columns(source: &Ambient, target: &Ambient, columns: Vec<Vec<u8>>) -> Result<Self> {
        if columns.len() != source.dim() {
            return Err(Error::Ambient(format!(
                "{} columns for a source of dimension {}",
                columns.len(),
                source.dim()
            )));
        }
        for c in &columns {
            target.check_len(c)?;
        }
        Ok(F5Matrix {
            source: source.clone(),
            target: target.clone(),
            columns: columns.into_iter().map(|c| c.into_iter().map(|x| x % 5).collect()).collect(),
        })
    }

    pub fn identity(a: &Ambient) -> Self {
        let cols = F5Subspace::full(a).rows;
        F5Matrix {
            source: a.clone(),
            target: a.clone(),
            columns: cols,
        }
    }

    pub fn zero(source: &Ambient, target: &Ambient) -> Self {
        F5Matrix {
            source: source.clone(),
            target: target.clone(),
            columns: vec![vec![0; target.dim()]; source.dim()],
        }
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn columns(&self) -> &[Vec<u8>] {
        &self.columns
    }

    pub fn apply(&self, x: &[u8]) -> Result<Vec<u8>> {
        self.source.check_len(x)?;
        let mut y = vec![0u32; self.target.dim()];
        for (xj, col) in x.iter().zip(&self.columns) {
            for (yi, c) in y.iter_mut().zip(col) {
                *yi += (*xj as u32 % 5) * (*c as u32);
            }
        }
        Ok(y.into_iter().map(|v| (v % 5) as u8).collect())
    }

    /// Row i of the matrix.
    fn row(&self, i: usize) -> Vec<u8> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    pub fn kernel(&self) -> F5Subspace {
        let rows: Vec<Vec<u8>> = (0..self.target.dim()).map(|i| self.row(i)).collect();
        let basis = nullspace(&rows, self.source.dim());
        F5Subspace::span(&self.source, basis).expect("kernel lives in the source")
    }

    pub fn image(&self) -> F5Subspace {
        F5Subspace::span(&self.target, self.columns.iter()).expect("columns live in the target")
    }
}

/// {x : L x in T}.
pub fn preimage(l: &F5Matrix, t: &F5Subspace) -> Result<F5Subspace> {
    l.target.check(&t.ambient)?;
    // x is in the preimage iff c . (L x) = 0 for every annihilator c of T
    let eqs: Vec<Vec<u8>> = t
        .annihilator()
        .iter()
        .map(|c| {
            l.columns
                .iter()
                .map(|col| (col.iter().zip(c).map(|(a, b)| *a as u32 * *b as u32).sum::<u32>() % 5) as u8)
                .collect()
        })
        .collect();
    F5Subspace::span(&l.source, nullspace(&eqs, l.source.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> Ambient {
        Ambient::new(["alpha", "beta", "gamma", "delta", "epsilon", "eta"])
    }

    #[test]
    fn empty_span_is_zero() {
        let s = F5Subspace::span(&five(), Vec::<Vec<u8>>::new()).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s, F5Subspace::zero(&five()));
    }

    #[test]
    fn unit_image_at_five() {
        // beta gamma eps, beta^2 gamma^4 delta^2 eps^4, eps^3 eta, alpha
        let a = five();
        let im = F5Subspace::span(
            &a,
            [[0, 1, 1, 0, 1, 0], [0, 2, 4, 2, 4, 0], [0, 0, 0, 0, 3, 1], [1, 0, 0, 0, 0, 0]],
        )
        .unwrap();
        assert_eq!(im.dim(), 4);
        let dee = F5Subspace::span(&a, [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]).unwrap();
        let cap = im.intersect(&dee).unwrap();
        assert_eq!(cap, F5Subspace::span(&a, [[0, 0, 0, 0, 3, 1]]).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = five();
        let b = Ambient::new(["x", "y"]);
        assert!(F5Subspace::full(&a).intersect(&F5Subspace::full(&b)).is_err());
        assert!(F5Subspace::span(&a, [[1u8, 2]]).is_err());
    }

    #[test]
    fn preimage_edge_cases() {
        let a = five();
        let t = F5Subspace::span(&a, [[0, 1, 2, 0, 0, 0]]).unwrap();
        assert_eq!(preimage(&F5Matrix::identity(&a), &t).unwrap(), t);
        let z = F5Matrix::zero(&a, &a);
        assert_eq!(preimage(&z, &F5Subspace::zero(&a)).unwrap(), F5Subspace::full(&a));
    }

    #[test]
    fn render_is_multiplicative() {
        let a = Ambient::new(["z", "1+z", "2", "1-z"]);
        assert_eq!(a.render(&[0, 0, 3, 1]), "2^3*(1-z)");
        assert_eq!(a.render(&[0, 0, 0, 0]), "1");
    }
}
