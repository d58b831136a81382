//! Labeled bipartite graphs by order, size and weighted component number.

use num_bigint::BigUint;

use super::{
    enumerate_weighted, table_from_egf, ConnectedCountTable, CountTable, ForbiddenComponentSet,
    OrderCountTable,
};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{Series, WeightVector, ZKind};

/// Counts c_{n,k} of bicolored graphs (graphs with a chosen proper
/// black/white coloring) of order n and size k, for `1 ≤ n ≤ n_max` and
/// `0 ≤ k ≤ ⌊n²/4⌋`: `c_{n,k} = Σ_i C(n,i) C(i(n−i), k)`.
pub fn bicolored_counts(n_max: u32) -> Result<OrderCountTable> {
    if n_max == 0 {
        return Err(Error::InvalidEntry("n_max must be at least 1".into()));
    }
    let mut table = OrderCountTable::new(1);
    for n in 1..=n_max {
        let n64 = u64::from(n);
        for k in 0..=n64 * n64 / 4 {
            let c: BigUint = (0..=n64)
                .map(|i| rational::binomial(n64, i) * rational::binomial(i * (n64 - i), k))
                .sum();
            table.insert(n, vec![k as u32], c)?;
        }
    }
    Ok(table)
}

/// Connected bipartite counts b̄_{n,k} together with their EGF
/// `𝓑 = ½ log(1 + Σ c_{n,k} x^n y^k / n!)`. A connected bipartite graph has
/// exactly two proper 2-colorings, hence the half.
pub fn connected_bipartite_series(order: u32) -> Result<(ConnectedCountTable, Series)> {
    let all = bicolored_counts(order)?;
    let log = Series::one(order, 1, ZKind::Tags)
        .add(&all.egf(order, false))?
        .log()?;
    let half = Rational::new(1.into(), 2.into());
    let table = table_from_egf(&log, half.clone()).map_err(|e| match e {
        Error::InconsistentTable { n, k, .. } => Error::InconsistentTable {
            n,
            k,
            reason: "connected bicolored count is odd or negative".into(),
        },
        other => other,
    })?;
    Ok((table, log.scale(&half)))
}

/// Whether the counted graphs may have isolated vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsolatedVertices {
    /// Every bipartite graph.
    Included,
    /// Only graphs of minimum degree ≥ 1, i.e. the single-vertex component
    /// type `(1, 0)` is forbidden. This is the convention of the classical
    /// published table of b_{n,k,ν}.
    Excluded,
}

/// Connected bipartite counts with the single-vertex component removed when
/// `isolated` is [`IsolatedVertices::Excluded`].
pub fn bipartite_connected_table(
    order: u32,
    isolated: IsolatedVertices,
) -> Result<ConnectedCountTable> {
    let (conn, _) = connected_bipartite_series(order)?;
    Ok(match isolated {
        IsolatedVertices::Included => conn,
        IsolatedVertices::Excluded => conn.without(&isolated_vertex()),
    })
}

/// The forbidden set `{(1, 0)}` for one statistic.
pub fn isolated_vertex() -> ForbiddenComponentSet {
    let mut f = ForbiddenComponentSet::new();
    f.insert(1, vec![0]).expect("order 1 is valid");
    f
}

/// b_{n,k,ν} for `1 ≤ n ≤ order`: bipartite graphs of order n, size k and
/// weighted component number ν.
pub fn bipartite_component_table(
    order: u32,
    w: &WeightVector,
    isolated: IsolatedVertices,
) -> Result<CountTable> {
    enumerate_weighted(&bipartite_connected_table(order, isolated)?, w, order)
}

/// Largest possible size of a bipartite graph on n vertices.
pub fn max_bipartite_size(n: u32) -> u32 {
    n * n / 4
}
