//! Quadratic extensions O5[s]/(s^2 - d) of the completion at 5, for degree-2
//! divisors on the curve.

use super::pi5::O5;

/// The three quadratic extensions of K_5: d = 2, pi, 2*pi.
pub(crate) const EXTENSIONS: [(i128, u32); 3] = [(2, 0), (1, 1), (2, 1)];

#[derive(Clone, Copy, Debug)]
pub(crate) struct QuadRing {
    d: O5,
    unit: O5,
    ramified: bool,
}

/// a + b s.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Quad {
    pub a: O5,
    pub b: O5,
}

impl QuadRing {
    /// s^2 = unit * pi^e with e in {0, 1}.
    pub(crate) fn new(unit: i128, e: u32, k: u32) -> Self {
        QuadRing {
            d: O5::from_int(unit, k).mul(&O5::pi_pow(e, k)),
            unit: O5::from_int(unit, k),
            ramified: e == 1,
        }
    }

    pub(crate) fn k(&self) -> u32 {
        self.d.k()
    }

    pub(crate) fn lift(&self, a: O5) -> Quad {
        Quad {
            a,
            b: O5::from_int(0, self.k()),
        }
    }

    pub(crate) fn add(&self, x: &Quad, y: &Quad) -> Quad {
        Quad {
            a: x.a.add(&y.a),
            b: x.b.add(&y.b),
        }
    }

    pub(crate) fn mul(&self, x: &Quad, y: &Quad) -> Quad {
        Quad {
            a: x.a.mul(&y.a).add(&self.d.mul(&x.b.mul(&y.b))),
            b: x.a.mul(&y.b).add(&x.b.mul(&y.a)),
        }
    }

    pub(crate) fn pow(&self, x: &Quad, mut e: u32) -> Quad {
        let mut r = self.lift(O5::from_int(1, self.k()));
        let mut b = *x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// N(x) = a^2 - d b^2.
    pub(crate) fn norm(&self, x: &Quad) -> O5 {
        x.a.mul(&x.a).sub(&self.d.mul(&x.b.mul(&x.b)))
    }

    /// Inverse of a unit of the extension.
    fn inverse(&self, x: &Quad) -> Quad {
        let ni = self.norm(x).inverse();
        Quad {
            a: x.a.mul(&ni),
            b: O5::from_int(0, self.k()).sub(&x.b).mul(&ni),
        }
    }

    fn scale_pi(&self, x: &Quad, up: u32) -> Quad {
        let p = O5::pi_pow(up, self.k());
        Quad {
            a: x.a.mul(&p),
            b: x.b.mul(&p),
        }
    }

    fn div_pi(&self, x: &Quad, down: u32) -> Quad {
        let (mut a, mut b) = (x.a, x.b);
        for _ in 0..down {
            a = a.div_pi();
            b = b.div_pi();
        }
        Quad { a, b }
    }

    /// A square root, or None when x is not a square or is zero to working
    /// precision.
    pub(crate) fn sqrt(&self, x: &Quad) -> Option<Quad> {
        let va = x.a.valuation();
        let vb = x.b.valuation();
        let w = match (va, vb) {
            (None, None) => return None,
            (Some(a), None) => a,
            (None, Some(b)) => {
                // b s alone has odd valuation in the ramified case
                if self.ramified {
                    return None;
                }
                b
            }
            (Some(a), Some(b)) => {
                if self.ramified {
                    if b < a {
                        return None;
                    }
                    a
                } else {
                    a.min(b)
                }
            }
        };
        // in the ramified case pi = s^2 / unit
        if w % 2 == 1 && !self.ramified {
            return None;
        }
        let mut g = self.div_pi(x, w);
        if self.ramified {
            // x = s^(2w) * g / unit^w
            let c = self.unit.inverse().pow(w as u64);
            g = Quad {
                a: g.a.mul(&c),
                b: g.b.mul(&c),
            };
        }
        let r0 = g.a.digits(1)[0] as i128;
        let r1 = g.b.digits(1)[0] as i128;
        let d0 = self.d.digits(1)[0] as i128;
        let k = self.k();
        let start = if self.ramified {
            (1..5).find(|&t| (t * t - r0).rem_euclid(5) == 0).map(|t| (t, 0))?
        } else {
            (0..25)
                .map(|i| (i / 5, i % 5))
                .find(|&(p, q)| (p * p + d0 * q * q - r0).rem_euclid(5) == 0 && (2 * p * q - r1).rem_euclid(5) == 0 && (p, q) != (0, 0))?
        };
        let mut y = Quad {
            a: O5::from_int(start.0, k),
            b: O5::from_int(start.1, k),
        };
        let inv2 = O5::from_int(2, k).inverse();
        let mut prec = 1;
        while prec < 8 * k {
            let s = self.add(&y, &self.mul(&g, &self.inverse(&y)));
            y = Quad {
                a: s.a.mul(&inv2),
                b: s.b.mul(&inv2),
            };
            prec *= 2;
        }
        Some(if self.ramified {
            let s = Quad {
                a: O5::from_int(0, k),
                b: O5::from_int(1, k),
            };
            self.mul(&y, &self.pow(&s, w))
        } else {
            self.scale_pi(&y, w / 2)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots_square_back() {
        let k = 10;
        for &(u, e) in &EXTENSIONS {
            let r = QuadRing::new(u, e, k);
            for (a, b) in [(1, 1), (3, 2), (7, 0), (0, 4), (11, 5)] {
                let x = Quad {
                    a: O5::from_int(a, k),
                    b: O5::from_int(b, k),
                };
                let sq = r.mul(&x, &x);
                let y = r.sqrt(&sq).expect("a square");
                let back = r.mul(&y, &y);
                // dividing by pi costs a digit of absolute precision
                let close = |z: O5| z.valuation().is_none_or(|v| v >= 4 * k - 8);
                assert!(close(back.a.sub(&sq.a)), "{u} {e} {a} {b}");
                assert!(close(back.b.sub(&sq.b)), "{u} {e} {a} {b}");
            }
        }
    }
}
