//! Count tables and their file formats.
//!
//! * [`OrderCountTable`] maps `(n, k)` to a count. It holds connected counts
//!   ḡ (alias [`ConnectedCountTable`]) or totals such as the bicolored
//!   counts; JSON lines `{"n":4,"k":[3],"count":"16"}`.
//! * [`CountTable`] maps `(n, k, ν)` to a count; CSV with header
//!   `n,k,nu,count`. A multi-statistic `k` is written `k1;k2;…`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{Monomial, Series, ZKind, ZPart};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderCountTable {
    arity: usize,
    entries: BTreeMap<(u32, Vec<u32>), BigUint>,
}

/// Counts ḡ_{n,k} of connected graphs with a homogeneous property.
pub type ConnectedCountTable = OrderCountTable;

#[derive(Serialize, Deserialize)]
struct OrderLine {
    n: u32,
    k: Vec<u32>,
    count: String,
}

impl OrderCountTable {
    pub fn new(arity: usize) -> OrderCountTable {
        OrderCountTable {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Sets the count at `(n, k)`. Zero counts are not stored.
    pub fn insert(&mut self, n: u32, k: Vec<u32>, count: BigUint) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidEntry("order n must be at least 1".into()));
        }
        if k.len() != self.arity {
            return Err(Error::InvalidEntry(format!(
                "k has {} entries, table arity is {}",
                k.len(),
                self.arity
            )));
        }
        if count.is_zero() {
            self.entries.remove(&(n, k));
        } else {
            self.entries.insert((n, k), count);
        }
        Ok(())
    }

    pub fn get(&self, n: u32, k: &[u32]) -> BigUint {
        self.entries
            .get(&(n, k.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[u32], &BigUint)> {
        self.entries.iter().map(|((n, k), c)| (*n, k.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_order(&self) -> u32 {
        self.entries.keys().map(|(n, _)| *n).max().unwrap_or(0)
    }

    /// Copy with every entry of order above `order` removed.
    pub fn restrict(&self, order: u32) -> OrderCountTable {
        OrderCountTable {
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .filter(|((n, _), _)| *n <= order)
                .map(|(key, c)| (key.clone(), c.clone()))
                .collect(),
        }
    }

    /// Copy with the listed `(n*, k*)` entries zeroed.
    pub fn without(&self, forbidden: &ForbiddenComponentSet) -> OrderCountTable {
        let mut out = self.clone();
        for (n, k) in forbidden.iter() {
            out.entries.remove(&(n, k.to_vec()));
        }
        out
    }

    /// `Σ c_{n,k} x^n y^k / n!` over entries with n ≤ `order`, optionally
    /// tagging each term with `z_n`. No constant term.
    pub fn egf(&self, order: u32, tag_orders: bool) -> Series {
        let terms = self
            .entries
            .iter()
            .filter(|((n, _), _)| *n <= order)
            .map(|((n, k), c)| {
                let z = if tag_orders {
                    ZPart::tags([(*n, 1)])
                } else {
                    ZPart::tags([])
                };
                let coeff = Rational::new(c.clone().into(), rational::factorial(*n).into());
                (Monomial::new(*n, k.clone(), z), coeff)
            });
        Series::from_terms(order, self.arity, ZKind::Tags, terms)
            .expect("table entries match the series arity")
    }

    pub fn write_jsonl<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for ((n, k), c) in &self.entries {
            let line = OrderLine {
                n: *n,
                k: k.clone(),
                count: c.to_string(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&line).map_err(io::Error::other)?
            )?;
        }
        Ok(())
    }

    /// Parses JSON lines. The arity is taken from the first entry; an empty
    /// input yields an empty table of arity `default_arity`. Repeated keys
    /// are rejected.
    pub fn parse_jsonl(input: &str, default_arity: usize) -> Result<OrderCountTable> {
        let mut table: Option<OrderCountTable> = None;
        for (idx, text) in input.lines().enumerate() {
            let line = idx + 1;
            if text.trim().is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse { line, message };
            let raw: OrderLine = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
            let count: BigUint = raw.count.trim().parse().map_err(|_| {
                perr(format!(
                    "count {:?} is not a nonnegative integer",
                    raw.count
                ))
            })?;
            let t = table.get_or_insert_with(|| OrderCountTable::new(raw.k.len()));
            if t.entries.contains_key(&(raw.n, raw.k.clone())) {
                return Err(perr(format!("duplicate entry n={}, k={:?}", raw.n, raw.k)));
            }
            t.insert(raw.n, raw.k, count)
                .map_err(|e| perr(e.to_string()))?;
        }
        Ok(table.unwrap_or_else(|| OrderCountTable::new(default_arity)))
    }
}

/// Component types `(n*, k*)` to exclude.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForbiddenComponentSet {
    entries: BTreeSet<(u32, Vec<u32>)>,
}

impl ForbiddenComponentSet {
    pub fn new() -> ForbiddenComponentSet {
        ForbiddenComponentSet::default()
    }

    pub fn insert(&mut self, n: u32, k: Vec<u32>) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidEntry(
                "forbidden component order must be at least 1".into(),
            ));
        }
        self.entries.insert((n, k));
        Ok(())
    }

    pub fn contains(&self, n: u32, k: &[u32]) -> bool {
        self.entries.contains(&(n, k.to_vec()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[u32])> {
        self.entries.iter().map(|(n, k)| (*n, k.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `"n:k"` or `"n:k1,k2"`.
    pub fn parse_entry(text: &str) -> Result<(u32, Vec<u32>)> {
        let bad = || Error::InvalidEntry(format!("bad component spec {text:?}, expected n:k"));
        let (n, k) = text.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let k = k
            .split(',')
            .map(|v| v.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if n == 0 {
            return Err(bad());
        }
        Ok((n, k))
    }
}

/// Key of a [`CountTable`] row; the derived order is the canonical
/// `(n, k, ν)` order with ν compared numerically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountKey {
    pub n: u32,
    pub k: Vec<u32>,
    pub nu: Rational,
}

impl CountKey {
    pub fn new(n: u32, k: Vec<u32>, nu: Rational) -> CountKey {
        CountKey { n, k, nu }
    }
}

/// Counts T_{n,k,ν}. Zero counts are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    arity: usize,
    entries: BTreeMap<CountKey, BigUint>,
}

impl CountTable {
    pub fn new(arity: usize) -> CountTable {
        CountTable {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn insert(&mut self, key: CountKey, count: BigUint) -> Result<()> {
        if key.k.len() != self.arity {
            return Err(Error::InvalidEntry(format!(
                "k has {} entries, table arity is {}",
                key.k.len(),
                self.arity
            )));
        }
        if count.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, count);
        }
        Ok(())
    }

    /// Adds `count` to the row at `key`.
    pub fn add(&mut self, key: CountKey, count: &BigUint) -> Result<()> {
        let total = self.get_key(&key) + count;
        self.insert(key, total)
    }

    pub fn get(&self, n: u32, k: &[u32], nu: &Rational) -> BigUint {
        self.get_key(&CountKey::new(n, k.to_vec(), nu.clone()))
    }

    pub fn get_key(&self, key: &CountKey) -> BigUint {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CountKey, &BigUint)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rows of order exactly `n`.
    pub fn of_order(&self, n: u32) -> CountTable {
        CountTable {
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .filter(|(key, _)| key.n == n)
                .map(|(key, c)| (key.clone(), c.clone()))
                .collect(),
        }
    }

    /// Σ_ν T_{n,k,ν}, keyed by `(n, k)`.
    pub fn nu_marginal(&self) -> BTreeMap<(u32, Vec<u32>), BigUint> {
        let mut out: BTreeMap<(u32, Vec<u32>), BigUint> = BTreeMap::new();
        for (key, c) in &self.entries {
            *out.entry((key.n, key.k.clone())).or_default() += c;
        }
        out
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Row labels `(n, k, ν)` as printed in CSV.
    pub fn row_label(key: &CountKey) -> String {
        format!(
            "{},{},{}",
            key.n,
            format_k(&key.k),
            rational::format(&key.nu)
        )
    }

    /// Writes CSV. `extra_zero_rows` are emitted with count 0 when absent
    /// from the table; all rows come out in canonical order.
    pub fn write_csv<W: Write>(
        &self,
        out: &mut W,
        extra_zero_rows: Option<&BTreeSet<CountKey>>,
    ) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "k", "nu", "count"])?;
        let zero = BigUint::zero();
        let mut rows: BTreeMap<&CountKey, &BigUint> = self.entries.iter().collect();
        if let Some(extra) = extra_zero_rows {
            for key in extra {
                rows.entry(key).or_insert(&zero);
            }
        }
        for (key, c) in rows {
            w.write_record([
                key.n.to_string(),
                format_k(&key.k),
                rational::format(&key.nu),
                c.to_string(),
            ])?;
        }
        w.flush()
    }

    /// JSON lines `{"n":..,"k":[..],"nu":"p/q","count":".."}`.
    pub fn write_jsonl<W: Write>(&self, out: &mut W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Line<'a> {
            n: u32,
            k: &'a [u32],
            nu: String,
            count: String,
        }
        for (key, c) in &self.entries {
            let line = Line {
                n: key.n,
                k: &key.k,
                nu: rational::format(&key.nu),
                count: c.to_string(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&line).map_err(io::Error::other)?
            )?;
        }
        Ok(())
    }

    /// Reads the CSV written by [`CountTable::write_csv`]. Explicit zero rows
    /// are accepted and dropped.
    pub fn parse_csv(input: &str) -> Result<CountTable> {
        let mut rdr = csv::Reader::from_reader(input.as_bytes());
        let header = rdr.headers().map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        if header != vec!["n", "k", "nu", "count"] {
            return Err(Error::Parse {
                line: 1,
                message: "expected header n,k,nu,count".into(),
            });
        }
        let mut table: Option<CountTable> = None;
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map(|p| p.line() as usize).unwrap_or(0),
                message: e.to_string(),
            })?;
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
            let perr = |message: String| Error::Parse { line, message };
            if rec.len() != 4 {
                return Err(perr("expected 4 fields".into()));
            }
            let n: u32 = rec[0].parse().map_err(|_| perr("bad n".into()))?;
            let k = parse_k(&rec[1]).ok_or_else(|| perr("bad k".into()))?;
            let nu = rational::parse(&rec[2]).map_err(|e| perr(e.to_string()))?;
            let count: BigUint = rec[3].parse().map_err(|_| perr("bad count".into()))?;
            let t = table.get_or_insert_with(|| CountTable::new(k.len()));
            t.insert(CountKey::new(n, k, nu), count)
                .map_err(|e| perr(e.to_string()))?;
        }
        Ok(table.unwrap_or_else(|| CountTable::new(1)))
    }

    /// Reads a table from the engine's series image under τ_ω: the count at
    /// `(n, k, ν)` is `n!` times the coefficient of `x^n y^k z^ν`. The
    /// constant term (the empty graph) is skipped. Fails if any extracted
    /// value is not a nonnegative integer.
    pub fn from_weighted_series(series: &Series) -> Result<CountTable> {
        if series.kind() != ZKind::Weighted {
            return Err(Error::KindMismatch {
                expected: ZKind::Weighted.name(),
                found: series.kind().name(),
            });
        }
        let mut table = CountTable::new(series.arity());
        for (m, c) in series.terms() {
            if m.x == 0 {
                continue;
            }
            let ZPart::Weighted(nu) = &m.z else {
                unreachable!("kind checked above")
            };
            let scaled = c * Rational::from_integer(rational::factorial(m.x).into());
            let count = rational::to_natural(&scaled).ok_or_else(|| Error::InconsistentTable {
                n: m.x,
                k: m.y.clone(),
                reason: format!(
                    "n!·coefficient at ν={} is {}, not a nonnegative integer",
                    rational::format(nu),
                    rational::format(&scaled)
                ),
            })?;
            table.insert(CountKey::new(m.x, m.y.clone(), nu.clone()), count)?;
        }
        Ok(table)
    }
}

pub(crate) fn format_k(k: &[u32]) -> String {
    k.iter().map(u32::to_string).collect::<Vec<_>>().join(";")
}

fn parse_k(text: &str) -> Option<Vec<u32>> {
    if text.is_empty() {
        return Some(Vec::new());
    }
    text.split(';').map(|v| v.trim().parse().ok()).collect()
}
