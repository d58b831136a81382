//! Counting pipelines built on the exponential formula.
//!
//! Everything here is a pure transformation between count tables and
//! series. The weighted pipeline is
//! `ḡ → exp(Σ ḡ x^n y^k z_n / n!) → τ_ω → n!·[x^n y^k z^ν]`.

mod bipartite;
mod partitions;
mod tables;

pub use bipartite::{
    bicolored_counts, bipartite_component_table, bipartite_connected_table,
    connected_bipartite_series, isolated_vertex, max_bipartite_size, IsolatedVertices,
};
pub use partitions::{aux_coefficient_via_systems, count_via_partitions};
pub use tables::{
    ConnectedCountTable, CountKey, CountTable, ForbiddenComponentSet, OrderCountTable,
};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{Monomial, Series, WeightVector, ZKind};

/// Connected counts from counts of all graphs with a homogeneous property:
/// ḡ is read off `log(1 + Σ g x^n y^k / n!)`.
///
/// Fails with [`Error::InconsistentTable`] when some extracted value is not
/// a nonnegative integer, which means the input was not the count table of
/// a homogeneous property.
pub fn connected_from_all(all: &OrderCountTable, order: u32) -> Result<ConnectedCountTable> {
    let egf = Series::one(order, all.arity(), ZKind::Tags).add(&all.egf(order, false))?;
    let log = egf.log()?;
    table_from_egf(&log, Rational::from_integer(1.into()))
}

/// Reads `n!·scale·coefficient` off a z-free EGF into a table.
pub(crate) fn table_from_egf(egf: &Series, scale: Rational) -> Result<OrderCountTable> {
    let mut table = OrderCountTable::new(egf.arity());
    for (m, c) in egf.terms() {
        if m.x == 0 {
            return Err(Error::InconsistentTable {
                n: 0,
                k: m.y.clone(),
                reason: "term of order 0".into(),
            });
        }
        let scaled = c * &scale * Rational::from_integer(rational::factorial(m.x).into());
        let count = rational::to_natural(&scaled).ok_or_else(|| Error::InconsistentTable {
            n: m.x,
            k: m.y.clone(),
            reason: format!(
                "extracted count {} is not a nonnegative integer",
                rational::format(&scaled)
            ),
        })?;
        table.insert(m.x, m.y.clone(), count)?;
    }
    Ok(table)
}

/// `exp(Σ ḡ x^n y^k / n!)`: the EGF of all graphs whose components are
/// counted by `conn`.
pub fn components_from_connected(conn: &ConnectedCountTable, order: u32) -> Result<Series> {
    conn.egf(order, false).exp()
}

/// Counts of all graphs, read back off a z-free EGF such as the output of
/// [`components_from_connected`]. The constant term is skipped.
pub fn counts_of(series: &Series) -> Result<OrderCountTable> {
    let mut tail = series.clone();
    if !series.constant_term().is_zero() {
        tail = series.sub(&Series::constant(
            series.order(),
            series.arity(),
            series.kind(),
            series.constant_term(),
        ))?;
    }
    table_from_egf(
        &tail.specialize(false, true),
        Rational::from_integer(1.into()),
    )
}

/// Graphs with no component of a forbidden type:
/// `exp(log g − Σ_{(n*,k*)} ḡ_{n*,k*} x^{n*} y^{k*} / n*!)`.
pub fn remove_components(
    g: &Series,
    forbidden: &ForbiddenComponentSet,
    conn: &ConnectedCountTable,
) -> Result<Series> {
    let mut removed = OrderCountTable::new(conn.arity());
    for (n, k) in forbidden.iter() {
        if k.len() != conn.arity() {
            return Err(Error::InvalidEntry(format!(
                "forbidden component k={k:?} does not match arity {}",
                conn.arity()
            )));
        }
        removed.insert(n, k.to_vec(), conn.get(n, k))?;
    }
    g.log()?.sub(&removed.egf(g.order(), false))?.exp()
}

/// The z-tagged series `exp(Σ ḡ x^n y^k z_n / n!)`. Each `z_i` in a monomial
/// marks one component of order i, so `Σ i·α_i` equals the x-degree.
pub fn build_aux(conn: &ConnectedCountTable, order: u32) -> Result<Series> {
    conn.egf(order, true).exp()
}

/// T_{n,k,ν} for `1 ≤ n ≤ order`: the number of graphs with components
/// counted by `conn`, statistics `k` and weighted component number ν, where
/// a component of order i contributes ω_i.
pub fn enumerate_weighted(
    conn: &ConnectedCountTable,
    w: &WeightVector,
    order: u32,
) -> Result<CountTable> {
    let weighted = build_aux(conn, order)?.apply_tau(w)?;
    CountTable::from_weighted_series(&weighted)
}

/// The monomial `x^n y^k` with a trivial z-part of the given kind.
pub fn xy(n: u32, k: &[u32], kind: ZKind) -> Monomial {
    Monomial::new(n, k.to_vec(), crate::series::ZPart::empty(kind))
}
