use num_traits::One;

use crate::error::Result;
use crate::rational::{self, Rational};

/// How a component's weight enters ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// A component of order i contributes ω_i.
    #[default]
    PerComponent,
    /// A component of order i contributes i·ω_i.
    SizeWeighted,
}

/// A weight ω_i for every component order i ≥ 1: the listed entries, then
/// `fill` for every index past the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    entries: Vec<Rational>,
    fill: Rational,
}

impl Default for WeightVector {
    fn default() -> Self {
        WeightVector::trivial()
    }
}

impl WeightVector {
    /// ω = (1, 1, 1, …); ν is the number of components.
    pub fn trivial() -> WeightVector {
        WeightVector {
            entries: Vec::new(),
            fill: Rational::one(),
        }
    }

    pub fn new(entries: Vec<Rational>) -> WeightVector {
        WeightVector {
            entries,
            fill: Rational::one(),
        }
    }

    pub fn with_fill(entries: Vec<Rational>, fill: Rational) -> WeightVector {
        WeightVector { entries, fill }
    }

    /// Parses a comma-separated list such as `"1,1/2,2/3"`.
    pub fn parse(list: &str) -> Result<WeightVector> {
        let entries = list
            .split(',')
            .map(rational::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightVector::new(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn fill(&self) -> &Rational {
        &self.fill
    }

    /// ω_i for i ≥ 1.
    pub fn weight(&self, i: u32) -> Rational {
        assert!(i >= 1, "component orders start at 1");
        self.entries
            .get(i as usize - 1)
            .unwrap_or(&self.fill)
            .clone()
    }

    /// The vector whose per-component reading reproduces `mode` for graphs
    /// of order at most `max_order`. Size weighting turns ω_i into i·ω_i,
    /// materialized up to `max_order` since that sequence has no constant
    /// tail.
    pub fn for_mode(&self, mode: WeightMode, max_order: u32) -> WeightVector {
        match mode {
            WeightMode::PerComponent => self.clone(),
            WeightMode::SizeWeighted => WeightVector {
                entries: (1..=max_order)
                    .map(|i| self.weight(i) * Rational::from_integer(i.into()))
                    .collect(),
                fill: self.fill.clone(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn fill_rule_pads_with_one() {
        let w = WeightVector::parse("2,1/2").unwrap();
        assert_eq!(w.weight(1), int(2));
        assert_eq!(w.weight(2), ratio(1, 2));
        assert_eq!(w.weight(3), int(1));
        assert_eq!(w.weight(40), int(1));
    }

    #[test]
    fn size_weighted_multiplies_by_order() {
        let w = WeightVector::parse("1,1/2")
            .unwrap()
            .for_mode(WeightMode::SizeWeighted, 4);
        assert_eq!(w.weight(1), int(1));
        assert_eq!(w.weight(2), int(1));
        assert_eq!(w.weight(3), int(3));
        assert_eq!(w.weight(4), int(4));
    }

    #[test]
    fn rejects_garbage() {
        assert!(WeightVector::parse("1,,2").is_err());
        assert!(WeightVector::parse("1/0").is_err());
    }
}
