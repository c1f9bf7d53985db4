//! Brute-force enumeration on small instances.
//!
//! Nothing here is clever: diagrams are generated by pairing the smallest
//! unresolved vertex, crossings are found by exhaustive clique search, and
//! every predicate is checked literally. These counts are the ground truth
//! the generating functions are tested against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Arc = (usize, usize);

/// A partial matching on `[n] = {1, ..., n}`: arcs `(i, j)` with
/// `1 <= i < j <= n`, sorted, each vertex in at most one arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    arcs: Vec<Arc>,
}

impl Diagram {
    pub fn new(n: usize, mut arcs: Vec<Arc>) -> Result<Self> {
        arcs.sort_unstable();
        let mut seen = BTreeSet::new();
        for &(i, j) in &arcs {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidDiagram(format!("arc ({i},{j}) outside [1,{n}]")));
            }
            if !seen.insert(i) || !seen.insert(j) {
                return Err(Error::InvalidDiagram(format!("vertex reused by arc ({i},{j})")));
            }
        }
        Ok(Diagram { n, arcs })
    }

    pub fn empty(n: usize) -> Self {
        Diagram { n, arcs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, arc: Arc) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    /// The reflection `i -> n + 1 - i`.
    pub fn mirror(&self) -> Diagram {
        let n = self.n;
        let mut arcs: Vec<Arc> = self.arcs.iter().map(|&(i, j)| (n + 1 - j, n + 1 - i)).collect();
        arcs.sort_unstable();
        Diagram { n, arcs }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (i, j)) in self.arcs.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

/// Two arcs cross iff their endpoints interleave: `i < i' < j < j'`.
pub fn crosses(a: Arc, b: Arc) -> bool {
    let ((i, j), (p, q)) = if a <= b { (a, b) } else { (b, a) };
    i < p && p < j && j < q
}

/// Size of the largest set of pairwise crossing arcs.
pub fn max_mutual_crossing(d: &Diagram) -> usize {
    fn extend(arcs: &[Arc], from: usize, clique: &mut Vec<Arc>, best: &mut usize) {
        *best = (*best).max(clique.len());
        for t in from..arcs.len() {
            if clique.iter().all(|&c| crosses(c, arcs[t])) {
                clique.push(arcs[t]);
                extend(arcs, t + 1, clique, best);
                clique.pop();
            }
        }
    }
    let mut best = 0;
    extend(&d.arcs, 0, &mut Vec::new(), &mut best);
    best
}

/// True iff `d` has no k-crossing, every arc has length at least four, and
/// every arc has a parallel neighbor `(i+1, j-1)` or `(i-1, j+1)`.
pub fn is_modular(d: &Diagram, k: usize) -> bool {
    let long_enough = d.arcs.iter().all(|&(i, j)| j - i >= 4);
    let stacked = d
        .arcs
        .iter()
        .all(|&(i, j)| d.contains((i + 1, j - 1)) || (i > 1 && d.contains((i - 1, j + 1))));
    long_enough && stacked && max_mutual_crossing(d) < k
}

/// Calls `visit` on every partial matching of `[n]` whose arcs all have
/// length at least `min_len`.
///
/// The smallest unresolved vertex is either left isolated or paired with a
/// larger free vertex, so each matching is produced exactly once.
pub fn for_each_partial_matching(n: usize, min_len: usize, mut visit: impl FnMut(&Diagram)) {
    fn rec(
        v: usize,
        used: &mut [bool],
        scratch: &mut Diagram,
        min_len: usize,
        visit: &mut dyn FnMut(&Diagram),
    ) {
        let n = scratch.n;
        let mut v = v;
        while v <= n && used[v] {
            v += 1;
        }
        if v > n {
            visit(scratch);
            return;
        }
        rec(v + 1, used, scratch, min_len, visit);
        for j in (v + min_len.max(1))..=n {
            if used[j] {
                continue;
            }
            used[j] = true;
            scratch.arcs.push((v, j));
            rec(v + 1, used, scratch, min_len, visit);
            scratch.arcs.pop();
            used[j] = false;
        }
    }
    let mut used = vec![false; n + 1];
    let mut scratch = Diagram::empty(n);
    rec(1, &mut used, &mut scratch, min_len, &mut visit);
}

/// Calls `visit` on every perfect matching of `[2s]`.
pub fn for_each_perfect_matching(s: usize, mut visit: impl FnMut(&Diagram)) {
    fn rec(free: &mut Vec<usize>, scratch: &mut Diagram, visit: &mut dyn FnMut(&Diagram)) {
        if free.is_empty() {
            let mut d = scratch.clone();
            d.arcs.sort_unstable();
            visit(&d);
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            scratch.arcs.push((a, b));
            rec(free, scratch, visit);
            scratch.arcs.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut free: Vec<usize> = (1..=2 * s).collect();
    let mut scratch = Diagram::empty(2 * s);
    rec(&mut free, &mut scratch, &mut visit);
}

/// `Q_k(n)` by exhaustive enumeration. Arcs shorter than four are never
/// generated, since the predicate would reject them anyway.
pub fn count_modular(k: usize, n: usize) -> BigUint {
    let mut count = BigUint::zero();
    for_each_partial_matching(n, 4, |d| {
        if is_modular(d, k) {
            count += BigUint::one();
        }
    });
    count
}

/// Every modular k-noncrossing diagram on `[n]`.
pub fn modular_diagrams(k: usize, n: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    for_each_partial_matching(n, 4, |d| {
        if is_modular(d, k) {
            out.push(d.clone());
        }
    });
    out
}

/// Arcs `(i, j)` whose parallel neighbor `(i+1, j-1)` is also present.
fn has_stack_of_two(d: &Diagram) -> bool {
    d.arcs.iter().any(|&(i, j)| d.contains((i + 1, j - 1)))
}

/// All `V_k`-shapes with `s` arcs: k-noncrossing perfect matchings on
/// `[2s]` in which every stack has length one.
pub fn enumerate_vk_shapes(k: usize, s: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    for_each_perfect_matching(s, |d| {
        if !has_stack_of_two(d) && max_mutual_crossing(d) < k {
            out.push(d.clone());
        }
    });
    out.sort();
    out
}

/// Color statistics of a shape.
///
/// * `u1`: arcs of length one.
/// * `u2`: unordered pairs of mutually crossing arcs of length two.
/// * `u3`: arcs `beta` of length at least three crossed by exactly one arc
///   of length two (the pair `(alpha, beta)` is determined by `beta`).
/// * `u4`: arcs `beta` of length at least three crossed by two arcs of
///   length two (the triple is determined by `beta`; `{alpha1, alpha2}`
///   is unordered).
///
/// An arc of length two encloses a single vertex, so it is crossed by at
/// most one arc, and an arc is crossed by at most two arcs of length two
/// (one per endpoint). The classes therefore never share an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorStats {
    pub s: u32,
    pub u1: u32,
    pub u2: u32,
    pub u3: u32,
    pub u4: u32,
}

impl ColorStats {
    /// `u1 + 2 u2 + 2 u3 + 3 u4 <= s`.
    pub fn within_support(&self) -> bool {
        self.u1 + 2 * self.u2 + 2 * self.u3 + 3 * self.u4 <= self.s
    }

    pub fn as_array(&self) -> [u32; 5] {
        [self.s, self.u1, self.u2, self.u3, self.u4]
    }
}

pub fn color_stats(shape: &Diagram) -> ColorStats {
    let arcs = &shape.arcs;
    let len = |a: &Arc| a.1 - a.0;
    let two_arcs: Vec<Arc> = arcs.iter().copied().filter(|a| len(a) == 2).collect();
    let mut st = ColorStats {
        s: arcs.len() as u32,
        u1: arcs.iter().filter(|a| len(a) == 1).count() as u32,
        ..ColorStats::default()
    };
    for (x, &a) in two_arcs.iter().enumerate() {
        st.u2 += two_arcs[x + 1..].iter().filter(|&&b| crosses(a, b)).count() as u32;
    }
    for beta in arcs.iter().filter(|a| len(a) >= 3) {
        match two_arcs.iter().filter(|&&a| crosses(a, *beta)).count() {
            1 => st.u3 += 1,
            2 => st.u4 += 1,
            _ => {}
        }
    }
    st
}

/// Colored shape census: number of `V_k`-shapes per color statistic, for
/// all shapes with at most `s_max` arcs.
pub fn colored_census(k: usize, s_max: usize) -> BTreeMap<ColorStats, BigUint> {
    let mut census = BTreeMap::new();
    for s in 0..=s_max {
        for shape in enumerate_vk_shapes(k, s) {
            *census.entry(color_stats(&shape)).or_insert_with(BigUint::zero) += 1u32;
        }
    }
    census
}
