//! k-noncrossing perfect matchings.
//!
//! `f_k(2n)` counts the perfect matchings on `2n` points without `k`
//! mutually crossing arcs. Such matchings are in bijection with closed
//! lattice walks of length `2n` in the Weyl chamber
//! `x_1 > x_2 > ... > x_{k-1} > 0` of `Z^{k-1}` that start and end at
//! `(k-1, ..., 2, 1)` and move by one unit step `±e_i` at a time. The walk
//! counts are computed by dynamic programming over the chamber points.
//!
//! The second half of the module carries the tabulated leading polynomials
//! `q_{0,k}(z)` of the linear ODEs satisfied by `F_k(z)`, together with
//! their nonzero roots, and checks them with exact arithmetic.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{frac, Poly, PowerSeries, Rational};

/// Largest `k` for which the counting series and tables are supported.
pub const MAX_K: usize = 9;

/// A chamber point with `x_1 > ... > x_{k-1} > 0`, and the number of walks
/// that reach it after a given number of steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkState {
    pub position: Vec<u32>,
    pub count: BigUint,
}

impl WalkState {
    fn in_chamber(position: &[i64]) -> bool {
        position.last().is_none_or(|&x| x > 0) && position.windows(2).all(|w| w[0] > w[1])
    }
}

/// The chamber points reachable from the start within `radius` steps,
/// in breadth-first order, with their neighbor lists.
struct ChamberGraph {
    points: Vec<Vec<i64>>,
    dist: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
}

impl ChamberGraph {
    fn build(dim: usize, radius: usize) -> Self {
        let start: Vec<i64> = (1..=dim as i64).rev().collect();
        let mut points = vec![start.clone()];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(start, 0)]);
        let mut dist = vec![0usize];
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new()];
        let mut head = 0;
        while head < points.len() {
            let d = dist[head];
            let p = points[head].clone();
            for i in 0..dim {
                for step in [1i64, -1] {
                    let mut q = p.clone();
                    q[i] += step;
                    if !WalkState::in_chamber(&q) {
                        continue;
                    }
                    let id = match index.get(&q) {
                        Some(&id) => id,
                        None if d < radius => {
                            let id = points.len();
                            index.insert(q.clone(), id);
                            points.push(q);
                            dist.push(d + 1);
                            neighbors.push(Vec::new());
                            id
                        }
                        None => continue,
                    };
                    neighbors[head].push(id);
                }
            }
            head += 1;
        }
        ChamberGraph {
            points,
            dist,
            neighbors,
        }
    }
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::KOutOfRange(k));
    }
    Ok(())
}

pub(crate) fn check_supported_k(k: usize) -> Result<()> {
    check_k(k)?;
    if k > MAX_K {
        return Err(Error::UnsupportedK {
            k,
            reason: "supported range is 2..=9",
        });
    }
    Ok(())
}

/// `f_k(2m)` for every `m <= n`.
///
/// A walk that is back at the start after `2m <= 2n` steps is never more
/// than `2n - t` steps away from it at time `t`, so only chamber points
/// within that distance are updated. The chamber graph is bipartite
/// (distance parity equals step parity), which lets one buffer hold both
/// the previous and the current layer.
pub fn matching_counts(k: usize, n: usize) -> Result<Vec<BigUint>> {
    check_k(k)?;
    let dim = k - 1;
    let graph = ChamberGraph::build(dim, n);
    // BFS order sorts points by distance; prefix[d] = #points with dist <= d.
    let mut prefix = vec![0usize; n + 2];
    for &d in &graph.dist {
        prefix[d + 1] += 1;
    }
    for d in 1..prefix.len() {
        prefix[d] += prefix[d - 1];
    }
    let mut counts = vec![BigUint::zero(); graph.dist.len()];
    counts[0] = BigUint::one();
    let mut out = vec![BigUint::one()];
    for t in 1..=2 * n {
        let radius = t.min(2 * n - t);
        for p in 0..prefix[radius + 1] {
            if graph.dist[p] % 2 != t % 2 {
                continue;
            }
            let mut acc = std::mem::take(&mut counts[p]);
            acc.set_zero();
            for &q in &graph.neighbors[p] {
                acc += &counts[q];
            }
            counts[p] = acc;
        }
        if t % 2 == 0 {
            out.push(counts[0].clone());
        }
    }
    Ok(out)
}

/// Every chamber point reached by a walk of exactly `steps` steps from the
/// start, with the number of such walks, in breadth-first order.
pub fn walk_states(k: usize, steps: usize) -> Result<Vec<WalkState>> {
    check_k(k)?;
    let graph = ChamberGraph::build(k - 1, steps);
    let mut counts = vec![BigUint::zero(); graph.points.len()];
    counts[0] = BigUint::one();
    for t in 1..=steps {
        for p in 0..graph.points.len() {
            if graph.dist[p] % 2 != t % 2 || graph.dist[p] > t {
                continue;
            }
            let mut acc = std::mem::take(&mut counts[p]);
            acc.set_zero();
            for &q in &graph.neighbors[p] {
                acc += &counts[q];
            }
            counts[p] = acc;
        }
    }
    // The buffer still holds the previous layer at the opposite parity.
    Ok(graph
        .points
        .iter()
        .zip(&graph.dist)
        .zip(counts)
        .filter(|((_, &d), c)| d % 2 == steps % 2 && !c.is_zero())
        .map(|((p, _), count)| WalkState {
            position: p.iter().map(|&x| x as u32).collect(),
            count,
        })
        .collect())
}

/// `f_k(2n)`, the number of k-noncrossing perfect matchings on `2n` points.
pub fn count_matchings(k: usize, n: usize) -> Result<BigUint> {
    Ok(matching_counts(k, n)?.pop().expect("counts always include n = 0"))
}

/// `F_k(z) = sum_n f_k(2n) z^n` truncated at `order`, for `2 <= k <= 9`.
pub fn fk_series(k: usize, order: usize) -> Result<PowerSeries> {
    check_supported_k(k)?;
    let counts = matching_counts(k, order)?;
    let ints: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Ok(PowerSeries::from_integers(&ints))
}

/// `rho_k = 1 / (2k - 2)`; the dominant singularity of `F_k` is `rho_k^2`.
pub fn rho(k: usize) -> Result<Rational> {
    check_k(k)?;
    Ok(frac(1, 2 * k as i64 - 2))
}

/// `q_{0,k}(z)` and its nonzero roots, as tabulated for `2 <= k <= 9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q0kEntry {
    pub k: usize,
    pub polynomial: Poly,
    pub roots: Vec<Rational>,
}

/// The nontrivial factor of `q_{0,k}` (lowest degree first) and its root
/// denominators; the full polynomial is that factor times `z^{k-1}`.
const Q0K_TABLE: [(&[i64], &[i64]); 8] = [
    (&[-1, 4], &[4]),
    (&[-1, 16], &[16]),
    (&[1, -40, 144], &[4, 36]),
    (&[1, -80, 1024], &[16, 64]),
    (&[-1, 140, -4144, 14400], &[4, 36, 100]),
    (&[-1, 224, -12544, 147456], &[16, 64, 144]),
    (&[1, -336, 31584, -826624, 2822400], &[4, 36, 100, 196]),
    (&[1, -480, 69888, -3358720, 37748736], &[16, 64, 144, 256]),
];

pub fn q0k_entry(k: usize) -> Result<Q0kEntry> {
    check_supported_k(k)?;
    let (factor, root_denoms) = Q0K_TABLE[k - 2];
    let shift = Poly::from_terms(&[(k - 1, 1)]);
    Ok(Q0kEntry {
        k,
        polynomial: &Poly::from_i64(factor) * &shift,
        roots: root_denoms.iter().map(|&d| frac(1, d)).collect(),
    })
}

/// True iff `q_{0,k}(rho_k^2) = 0` and every tabulated root annihilates
/// `q_{0,k}`, evaluated exactly.
pub fn table1_root_check(k: usize) -> Result<bool> {
    let entry = q0k_entry(k)?;
    let r = rho(k)?;
    let rho2 = &r * &r;
    let singular_is_root = entry.polynomial.eval(&rho2).is_zero();
    let listed_are_roots = entry.roots.iter().all(|z| entry.polynomial.eval(z).is_zero());
    Ok(singular_is_root && listed_are_roots)
}
