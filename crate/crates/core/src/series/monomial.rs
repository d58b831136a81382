use std::fmt;

use num_traits::Zero;

use crate::rational::{self, Rational};

/// Which representation the z-part of a monomial uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZKind {
    /// `∏ z_i^{α_i}`, one tag per component order.
    Tags,
    /// A single rational power of `z`, the image under τ_ω.
    Weighted,
}

impl ZKind {
    pub fn name(self) -> &'static str {
        match self {
            ZKind::Tags => "multi-index",
            ZKind::Weighted => "weighted exponent",
        }
    }
}

/// The z-part of a monomial.
///
/// `Tags` holds `(i, α_i)` pairs sorted by `i`, every `α_i > 0`. The derived
/// ordering compares those pairs lexicographically; `Weighted` compares
/// numerically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZPart {
    Tags(Vec<(u32, u32)>),
    Weighted(Rational),
}

impl ZPart {
    pub fn empty(kind: ZKind) -> ZPart {
        match kind {
            ZKind::Tags => ZPart::Tags(Vec::new()),
            ZKind::Weighted => ZPart::Weighted(Rational::zero()),
        }
    }

    /// Builds a tag multi-index from arbitrary `(i, α)` pairs, merging
    /// repeats and dropping zero exponents.
    pub fn tags<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> ZPart {
        let mut v: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, a)| a > 0).collect();
        v.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, a) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += a,
                _ => out.push((i, a)),
            }
        }
        ZPart::Tags(out)
    }

    pub fn kind(&self) -> ZKind {
        match self {
            ZPart::Tags(_) => ZKind::Tags,
            ZPart::Weighted(_) => ZKind::Weighted,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            ZPart::Tags(t) => t.is_empty(),
            ZPart::Weighted(e) => e.is_zero(),
        }
    }

    /// Exponents add: per index for tags, as rationals for weighted parts.
    /// Callers guarantee matching kinds.
    fn product(&self, other: &ZPart) -> ZPart {
        match (self, other) {
            (ZPart::Tags(a), ZPart::Tags(b)) => {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].0.cmp(&b[j].0) {
                        std::cmp::Ordering::Less => {
                            out.push(a[i]);
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            out.push(b[j]);
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            out.push((a[i].0, a[i].1 + b[j].1));
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend_from_slice(&a[i..]);
                out.extend_from_slice(&b[j..]);
                ZPart::Tags(out)
            }
            (ZPart::Weighted(a), ZPart::Weighted(b)) => ZPart::Weighted(a + b),
            _ => unreachable!("z-part kinds are checked before multiplying"),
        }
    }
}

/// Exponent record `x^x · ∏ y_j^{y_j} · (z-part)`.
///
/// Field order gives the canonical ordering: x-degree, then the y vector
/// lexicographically, then the z-part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: u32,
    pub y: Vec<u32>,
    pub z: ZPart,
}

impl Monomial {
    pub fn new(x: u32, y: Vec<u32>, z: ZPart) -> Monomial {
        Monomial { x, y, z }
    }

    pub fn one(arity: usize, kind: ZKind) -> Monomial {
        Monomial {
            x: 0,
            y: vec![0; arity],
            z: ZPart::empty(kind),
        }
    }

    pub fn is_one(&self) -> bool {
        self.x == 0 && self.y.iter().all(|&d| d == 0) && self.z.is_trivial()
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x + other.x,
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
            z: self.z.product(&other.z),
        }
    }

    /// `Σ i·α_i` over the tags; `None` for weighted monomials.
    pub fn tagged_order(&self) -> Option<u32> {
        match &self.z {
            ZPart::Tags(t) => Some(t.iter().map(|&(i, a)| i * a).sum()),
            ZPart::Weighted(_) => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.x > 0 {
            parts.push(format!("x^{}", self.x));
        }
        for (j, &d) in self.y.iter().enumerate() {
            if d > 0 {
                parts.push(format!("y{}^{}", j + 1, d));
            }
        }
        match &self.z {
            ZPart::Tags(t) => {
                for &(i, a) in t {
                    parts.push(format!("z{}^{}", i, a));
                }
            }
            ZPart::Weighted(e) if !e.is_zero() => {
                parts.push(format!("z^({})", rational::format(e)))
            }
            ZPart::Weighted(_) => {}
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}
