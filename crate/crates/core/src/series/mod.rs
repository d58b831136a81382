//! Sparse truncated multivariate formal power series over ℚ.
//!
//! A [`Series`] lives in `ℚ[x, y_1..y_s, z-part] / (x^{N+1})`. Coefficients
//! are stored literally, including any `1/n!` factor of an exponential
//! generating function. All monomials of a series share one [`ZKind`]: either
//! component-order tags `z_i` or a single rational power of `z`.

mod dump;
mod monomial;
mod weight;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

pub use dump::{parse_dump, write_dump, DumpTerm};
pub use monomial::{Monomial, ZKind, ZPart};
pub use weight::{WeightMode, WeightVector};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    order: u32,
    arity: usize,
    kind: ZKind,
    terms: BTreeMap<Monomial, Rational>,
}

impl Series {
    pub fn zero(order: u32, arity: usize, kind: ZKind) -> Series {
        Series {
            order,
            arity,
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32, arity: usize, kind: ZKind) -> Series {
        Series::constant(order, arity, kind, Rational::one())
    }

    pub fn constant(order: u32, arity: usize, kind: ZKind, c: Rational) -> Series {
        let mut s = Series::zero(order, arity, kind);
        if !c.is_zero() {
            s.terms.insert(Monomial::one(arity, kind), c);
        }
        s
    }

    /// Collects terms, merging like monomials, dropping zero coefficients and
    /// anything above x-degree `order`.
    pub fn from_terms<I>(order: u32, arity: usize, kind: ZKind, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (mut m, c) in terms {
            if m.y.len() != arity {
                return Err(Error::IncompatibleSeries(format!(
                    "monomial {} has {} y-variables, series has {}",
                    m,
                    m.y.len(),
                    arity
                )));
            }
            if m.z.kind() != kind {
                return Err(Error::KindMismatch {
                    expected: kind.name(),
                    found: m.z.kind().name(),
                });
            }
            if m.x > order {
                continue;
            }
            if let ZPart::Tags(t) = &m.z {
                m.z = ZPart::tags(t.iter().copied());
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Series {
            order,
            arity,
            kind,
            terms: acc,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> ZKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.arity, self.kind))
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.order != other.order {
            return Err(Error::IncompatibleSeries(format!(
                "truncation orders differ ({} vs {})",
                self.order, other.order
            )));
        }
        if self.arity != other.arity {
            return Err(Error::IncompatibleSeries(format!(
                "y-arities differ ({} vs {})",
                self.arity, other.arity
            )));
        }
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                expected: self.kind.name(),
                found: other.kind.name(),
            });
        }
        Ok(())
    }

    fn with_terms(&self, terms: BTreeMap<Monomial, Rational>) -> Series {
        Series {
            order: self.order,
            arity: self.arity,
            kind: self.kind,
            terms,
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(self.with_terms(terms))
    }

    pub fn neg(&self) -> Series {
        self.with_terms(self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return self.with_terms(BTreeMap::new());
        }
        self.with_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    /// Truncated product; monomials above x-degree N are never formed.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        // Terms are sorted by x-degree first, so the inner loop can stop as
        // soon as the combined degree passes the truncation order.
        let rhs: Vec<(&Monomial, &Rational)> = other.terms.iter().collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            let room = self.order - ma.x;
            for &(mb, cb) in rhs.iter().take_while(|(mb, _)| mb.x <= room) {
                let m = ma.product(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(self.with_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()))
    }

    /// `Σ_{k=0}^{N} s^k / k!`. Every term must have x-degree ≥ 1, so powers
    /// beyond N vanish under truncation.
    pub fn exp(&self) -> Result<Series> {
        if self.terms.keys().any(|m| m.x == 0) {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut result = Series::one(self.order, self.arity, self.kind);
        let mut power = result.clone();
        for k in 1..=self.order {
            power = power.mul(self)?.scale(&Rational::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result)
    }

    /// `Σ_{k=1}^{N} (-1)^{k+1} (s-1)^k / k`. The constant term must be 1
    /// and every other term must have x-degree ≥ 1.
    pub fn log(&self) -> Result<Series> {
        let one = Monomial::one(self.arity, self.kind);
        if self.coefficient(&one) != Rational::one()
            || self.terms.keys().any(|m| m.x == 0 && *m != one)
        {
            return Err(Error::BadConstantTerm);
        }
        let mut tail = self.terms.clone();
        tail.remove(&one);
        let tail = self.with_terms(tail);

        let mut result = Series::zero(self.order, self.arity, self.kind);
        let mut power = Series::one(self.order, self.arity, self.kind);
        for k in 1..=self.order {
            power = power.mul(&tail)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&Rational::new(sign.into(), k.into())))?;
        }
        Ok(result)
    }

    /// Applies τ_ω: `∏ z_i^{α_i} ↦ z^{Σ ω_i α_i}`, summing coefficients of
    /// monomials that collide.
    pub fn apply_tau(&self, w: &WeightVector) -> Result<Series> {
        if self.kind != ZKind::Tags {
            return Err(Error::KindMismatch {
                expected: ZKind::Tags.name(),
                found: self.kind.name(),
            });
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let ZPart::Tags(tags) = &m.z else {
                unreachable!("kind checked above")
            };
            let nu = tags.iter().fold(Rational::zero(), |acc, &(i, a)| {
                acc + w.weight(i) * Rational::from_integer(a.into())
            });
            let image = Monomial::new(m.x, m.y.clone(), ZPart::Weighted(nu));
            *terms.entry(image).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Series {
            order: self.order,
            arity: self.arity,
            kind: ZKind::Weighted,
            terms,
        })
    }

    /// Substitutes 1 for every y variable and/or every z variable. Arity and
    /// kind are kept, so the result stays compatible with its input.
    pub fn specialize(&self, set_y_to_one: bool, set_z_to_one: bool) -> Series {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let y = if set_y_to_one {
                vec![0; self.arity]
            } else {
                m.y.clone()
            };
            let z = if set_z_to_one {
                ZPart::empty(self.kind)
            } else {
                m.z.clone()
            };
            *terms
                .entry(Monomial::new(m.x, y, z))
                .or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        self.with_terms(terms)
    }

    /// Drops everything above x-degree `order` and lowers the truncation
    /// order to match. Raising the order is refused since the missing terms
    /// are unknown.
    pub fn truncate(&self, order: u32) -> Result<Series> {
        if order > self.order {
            return Err(Error::IncompatibleSeries(format!(
                "cannot extend order {} to {}",
                self.order, order
            )));
        }
        Ok(Series {
            order,
            arity: self.arity,
            kind: self.kind,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }
}
