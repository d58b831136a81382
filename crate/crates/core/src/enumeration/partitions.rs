//! Direct partition sums: the weighted counts computed by choosing
//! component vertex sets explicitly, with no series arithmetic.
//!
//! A *system* assigns a multiplicity `m_b` to each connected block type
//! `b = (n_b, k_b)` with `Σ m_b n_b = n` and `Σ m_b k_b = k`. It accounts for
//! `n! / ∏ (n_b!^{m_b} m_b!) · ∏ ḡ_b^{m_b}` graphs.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ConnectedCountTable;
use crate::rational::{self, Rational};
use crate::series::{Monomial, WeightVector, ZPart};

struct Block {
    n: u32,
    k: Vec<u32>,
    count: BigUint,
}

fn blocks(conn: &ConnectedCountTable, n: u32) -> Vec<Block> {
    conn.iter()
        .filter(|(bn, _, c)| *bn <= n && !c.is_zero())
        .map(|(bn, bk, c)| Block {
            n: bn,
            k: bk.to_vec(),
            count: c.clone(),
        })
        .collect()
}

/// Calls `visit` with the multiplicity vector of every system for `(n, k)`.
fn for_each_system<F: FnMut(&[u32])>(blocks: &[Block], n: u32, k: &[u32], visit: &mut F) {
    let mut mult = vec![0u32; blocks.len()];
    let mut rest_k = k.to_vec();
    walk(blocks, 0, n, &mut rest_k, &mut mult, visit);
}

fn walk<F: FnMut(&[u32])>(
    blocks: &[Block],
    idx: usize,
    rest_n: u32,
    rest_k: &mut Vec<u32>,
    mult: &mut Vec<u32>,
    visit: &mut F,
) {
    if rest_n == 0 {
        if rest_k.iter().all(|&v| v == 0) {
            visit(mult);
        }
        return;
    }
    if idx == blocks.len() {
        return;
    }
    let b = &blocks[idx];
    // m = 0 first, then as many copies as still fit.
    walk(blocks, idx + 1, rest_n, rest_k, mult, visit);
    let mut used = 0u32;
    loop {
        if b.n * (used + 1) > rest_n || rest_k.iter().zip(&b.k).any(|(r, bk)| r < bk) {
            break;
        }
        used += 1;
        for (r, bk) in rest_k.iter_mut().zip(&b.k) {
            *r -= bk;
        }
        mult[idx] = used;
        walk(blocks, idx + 1, rest_n - b.n * used, rest_k, mult, visit);
    }
    for (r, bk) in rest_k.iter_mut().zip(&b.k) {
        *r += bk * used;
    }
    mult[idx] = 0;
}

/// T_{n,k,ν} as a sum over systems whose weighted component number
/// `Σ_b ω_{n_b} m_b` equals ν.
pub fn count_via_partitions(
    conn: &ConnectedCountTable,
    n: u32,
    k: &[u32],
    w: &WeightVector,
    nu: &Rational,
) -> BigUint {
    assert!(n >= 1, "count_via_partitions needs n ≥ 1");
    let blocks = blocks(conn, n);
    let n_fact = rational::factorial(n);
    let mut total = BigUint::zero();
    for_each_system(&blocks, n, k, &mut |mult| {
        let weight: Rational = blocks
            .iter()
            .zip(mult)
            .filter(|(_, &m)| m > 0)
            .fold(Rational::zero(), |acc, (b, &m)| {
                acc + w.weight(b.n) * Rational::from_integer(m.into())
            });
        if &weight != nu {
            return;
        }
        let mut denom = BigUint::one();
        let mut graphs = BigUint::one();
        for (b, &m) in blocks.iter().zip(mult) {
            if m == 0 {
                continue;
            }
            denom *= rational::factorial(b.n).pow(m) * rational::factorial(m);
            graphs *= b.count.pow(m);
        }
        let (ways, rem) = n_fact.div_rem(&denom);
        debug_assert!(rem.is_zero(), "set partitions count is integral");
        total += ways * graphs;
    });
    total
}

/// Coefficient of a tagged monomial `x^n y^k ∏ z_i^{α_i}` in the auxiliary
/// series, summed over the systems it collects: each contributes
/// `∏_b (1/m_b!) (ḡ_b / n_b!)^{m_b}`, and a system lands on the monomial
/// when it uses `α_i` components of order i.
///
/// Returns `None` for a monomial whose z-part is not tagged.
pub fn aux_coefficient_via_systems(conn: &ConnectedCountTable, m: &Monomial) -> Option<Rational> {
    let ZPart::Tags(tags) = &m.z else {
        return None;
    };
    if m.x == 0 {
        let trivial = tags.is_empty() && m.y.iter().all(|&d| d == 0);
        return Some(if trivial {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    let blocks = blocks(conn, m.x);
    let mut total = Rational::zero();
    for_each_system(&blocks, m.x, &m.y, &mut |mult| {
        let mut per_order: Vec<(u32, u32)> = Vec::new();
        for (b, &c) in blocks.iter().zip(mult) {
            if c > 0 {
                per_order.push((b.n, c));
            }
        }
        if ZPart::tags(per_order) != m.z {
            return;
        }
        let mut term = Rational::one();
        for (b, &c) in blocks.iter().zip(mult) {
            if c == 0 {
                continue;
            }
            let base = Rational::new(b.count.clone().into(), rational::factorial(b.n).into());
            term *= num_traits::pow(base, c as usize);
            term /= Rational::from_integer(rational::factorial(c).into());
        }
        total += term;
    });
    Some(total)
}
