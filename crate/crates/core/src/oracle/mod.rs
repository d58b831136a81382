//! Brute-force ground truth: every labeled graph on a small vertex set,
//! tallied by size and weighted component number.
//!
//! Graphs on `n` vertices are bit patterns over the `C(n,2)` vertex pairs
//! in lexicographic order `(0,1), (0,2), …, (0,n−1), (1,2), …`. Vertices
//! are numbered from 0 here; vertex `i` stands for vertex `i + 1` of
//! `[n] = {1, …, n}`.

mod union_find;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

pub use union_find::UnionFind;

use crate::enumeration::{CountKey, CountTable};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{WeightMode, WeightVector};

/// Largest order the oracle will ever enumerate (2^28 graphs).
pub const HARD_CAP: u32 = 8;
/// Default cap; order 8 needs an explicit opt-in.
pub const DEFAULT_CAP: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: u32,
    edges: u32,
}

pub fn pair_count(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// Index of pair `(u, v)`, `u < v`, in the lexicographic pair order.
pub fn pair_index(n: u32, u: u32, v: u32) -> u32 {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

impl LabeledGraph {
    pub fn new(n: u32, edges: u32) -> LabeledGraph {
        assert!(n <= HARD_CAP, "order above the oracle cap");
        let bits = pair_count(n);
        assert!(bits == 32 || edges >> bits == 0, "edge bits beyond C(n,2)");
        LabeledGraph { n, edges }
    }

    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> LabeledGraph {
        let mut bits = 0u32;
        for &(a, b) in edges {
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            bits |= 1 << pair_index(n, u, v);
        }
        LabeledGraph::new(n, bits)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u32 {
        self.edges.count_ones()
    }

    pub fn edge_bits(&self) -> u32 {
        self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .filter(move |&(u, v)| self.edges >> pair_index(n, u, v) & 1 == 1)
    }

    /// Neighbour bitmask per vertex.
    pub fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n as usize];
        for (u, v) in self.edges() {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        adj
    }
}

fn check_order(n: u32, cap: u32) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if n == 0 || n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    Ok(())
}

/// Every labeled graph on `n` vertices satisfying `predicate`, each exactly
/// once. Refuses `n` above `cap` (itself clamped to [`HARD_CAP`]).
pub fn enumerate_graphs<'a, P>(
    n: u32,
    cap: u32,
    predicate: P,
) -> Result<impl Iterator<Item = LabeledGraph> + 'a>
where
    P: Fn(&LabeledGraph) -> bool + 'a,
{
    check_order(n, cap)?;
    let total = 1u64 << pair_count(n);
    Ok((0..total)
        .map(move |bits| LabeledGraph::new(n, bits as u32))
        .filter(move |g| predicate(g)))
}

/// Breadth-first 2-coloring of each component.
pub fn is_bipartite(g: &LabeledGraph) -> bool {
    let adj = g.adjacency();
    let mut color = vec![u8::MAX; adj.len()];
    let mut queue = Vec::with_capacity(adj.len());
    for start in 0..adj.len() {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let mut nb = adj[u];
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Minimum degree ≥ 1.
pub fn has_no_isolated_vertex(g: &LabeledGraph) -> bool {
    g.adjacency().iter().all(|&a| a != 0)
}

/// Number of proper black/white colorings, by trying all `2^n`.
pub fn count_two_colorings(g: &LabeledGraph) -> u64 {
    let edges: Vec<(u32, u32)> = g.edges().collect();
    (0u32..1 << g.order())
        .filter(|c| edges.iter().all(|&(u, v)| (c >> u & 1) != (c >> v & 1)))
        .count() as u64
}

/// `(order, size)` of every component, sorted.
pub fn component_stats(g: &LabeledGraph) -> Vec<(u32, u32)> {
    let n = g.order() as usize;
    let mut uf = UnionFind::new(n);
    for (u, v) in g.edges() {
        uf.union(u as usize, v as usize);
    }
    let mut stats: HashMap<usize, (u32, u32)> = HashMap::new();
    for v in 0..n {
        stats.entry(uf.find(v)).or_default().0 += 1;
    }
    for (u, _) in g.edges() {
        stats.get_mut(&uf.find(u as usize)).expect("root present").1 += 1;
    }
    let mut out: Vec<(u32, u32)> = stats.into_values().collect();
    out.sort_unstable();
    out
}

/// Component orders, sorted; they sum to n.
pub fn components(g: &LabeledGraph) -> Vec<u32> {
    component_stats(g).into_iter().map(|(o, _)| o).collect()
}

fn nu_of_orders(orders: &[u32], w: &WeightVector, mode: WeightMode) -> Rational {
    orders.iter().fold(Rational::zero(), |acc, &o| {
        let weight = w.weight(o);
        acc + match mode {
            WeightMode::PerComponent => weight,
            WeightMode::SizeWeighted => weight * Rational::from_integer(o.into()),
        }
    })
}

/// Weighted component number: Σ ω_{|G_i|} per component, or
/// Σ ω_{|G_i|}·|G_i| in size-weighted mode.
pub fn weighted_nu(g: &LabeledGraph, w: &WeightVector, mode: WeightMode) -> Rational {
    nu_of_orders(&components(g), w, mode)
}

/// Exhaustive tally of `(n, size, ν)` over the graphs of order `n` passing
/// `predicate`. Work is split across threads by edge-pattern ranges; the
/// merged tally does not depend on the split.
pub fn oracle_table<P>(
    n: u32,
    cap: u32,
    w: &WeightVector,
    predicate: P,
    mode: WeightMode,
) -> Result<CountTable>
where
    P: Fn(&LabeledGraph) -> bool + Sync,
{
    check_order(n, cap)?;
    let total = 1u64 << pair_count(n);
    let chunk = 1u64 << 12;
    let tally: HashMap<(u32, Vec<u32>), u64> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut local: HashMap<(u32, Vec<u32>), u64> = HashMap::new();
            for bits in c * chunk..((c + 1) * chunk).min(total) {
                let g = LabeledGraph::new(n, bits as u32);
                if predicate(&g) {
                    *local.entry((g.size(), components(&g))).or_default() += 1;
                }
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (key, c) in b {
                *a.entry(key).or_default() += c;
            }
            a
        });
    let mut table = CountTable::new(1);
    for ((size, orders), c) in tally {
        let key = CountKey::new(n, vec![size], nu_of_orders(&orders, w, mode));
        table.add(key, &BigUint::from(c))?;
    }
    Ok(table)
}
