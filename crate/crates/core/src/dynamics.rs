//! Functional graph of `phi_p` on `P^1(F_p)`, its periodic set and orbit
//! statistics.
//!
//! The periodic set is computed by repeatedly deleting points of in-degree
//! zero. What survives is the intersection of all forward images of the
//! whole space, which for a finite set is exactly the union of cycles.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::algebra::BigRational;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::ReducedMap;

/// A point of `P^1(F_p)`: index `x < p` encodes `[x : 1]` and index `p`
/// encodes `[1 : 0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(u64);

impl ProjPoint {
    pub fn finite(x: u64) -> Self {
        ProjPoint(x)
    }

    pub fn infinity(p: u64) -> Self {
        ProjPoint(p)
    }

    pub fn from_index(i: u64) -> Self {
        ProjPoint(i)
    }

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_infinity(self, p: u64) -> bool {
        self.0 == p
    }
}

/// Successor table of `phi_p` with its cycle decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncGraph {
    p: u64,
    successor: Vec<u32>,
    periodic_mask: Vec<bool>,
    tail_len: Vec<u32>,
    cycle_len: Vec<u32>,
}

/// Aggregate orbit statistics of a functional graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStats {
    /// Mean of tail + cycle length over all points, exact.
    pub mean_rho: BigRational,
    pub max_tail: u32,
    pub max_cycle: u32,
    /// Number of cycles of each length.
    pub cycle_histogram: BTreeMap<u32, u64>,
}

impl FuncGraph {
    /// Builds the graph from an explicit successor table on `p + 1` points.
    pub fn from_successors(p: u64, successor: Vec<u32>) -> Result<Self> {
        let n = successor.len();
        if n as u64 != p + 1 {
            return Err(Error::Domain(format!("expected {} successors, got {n}", p + 1)));
        }
        if let Some(&bad) = successor.iter().find(|&&s| s as usize >= n) {
            return Err(Error::Domain(format!("successor {bad} out of range")));
        }
        let (periodic_mask, order) = peel(&successor);
        let (tail_len, cycle_len) = lengths(&successor, &periodic_mask, &order);
        Ok(FuncGraph { p, successor, periodic_mask, tail_len, cycle_len })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.successor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successor.is_empty()
    }

    pub fn successor(&self, pt: ProjPoint) -> ProjPoint {
        ProjPoint(self.successor[pt.0 as usize] as u64)
    }

    pub fn successors(&self) -> &[u32] {
        &self.successor
    }

    pub fn is_periodic(&self, pt: ProjPoint) -> bool {
        self.periodic_mask[pt.0 as usize]
    }

    pub fn periodic_mask(&self) -> &[bool] {
        &self.periodic_mask
    }

    pub fn tail_len(&self, pt: ProjPoint) -> u32 {
        self.tail_len[pt.0 as usize]
    }

    pub fn cycle_len(&self, pt: ProjPoint) -> u32 {
        self.cycle_len[pt.0 as usize]
    }

    /// The periodic points in index order, and their number.
    pub fn periodic_points(&self) -> (Vec<ProjPoint>, usize) {
        let pts: Vec<ProjPoint> = self
            .periodic_mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| ProjPoint(i as u64))
            .collect();
        let n = pts.len();
        (pts, n)
    }

    pub fn periodic_count(&self) -> usize {
        self.periodic_mask.iter().filter(|&&b| b).count()
    }

    /// Mask of `phi_p^k(P^1(F_p))`.
    pub fn image_set(&self, k: usize) -> Vec<bool> {
        let mut cur = vec![true; self.len()];
        for _ in 0..k {
            let mut next = vec![false; self.len()];
            for (i, &inside) in cur.iter().enumerate() {
                if inside {
                    next[self.successor[i] as usize] = true;
                }
            }
            cur = next;
        }
        cur
    }

    /// Sizes `#phi_p^k(P^1(F_p))` for `k = 1..=n`.
    pub fn image_iterate(&self, n: usize) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(n);
        let mut cur = vec![true; self.len()];
        let mut size = self.len();
        let mut stable = false;
        for _ in 0..n {
            // Once the image stops shrinking it is stable forever.
            if !stable {
                let mut next = vec![false; self.len()];
                for (i, &inside) in cur.iter().enumerate() {
                    if inside {
                        next[self.successor[i] as usize] = true;
                    }
                }
                let next_size = next.iter().filter(|&&b| b).count();
                stable = next_size == size;
                size = next_size;
                cur = next;
            }
            sizes.push(size);
        }
        sizes
    }

    /// Iterates the image until it stops shrinking; returns the limiting set
    /// and the number of steps taken.
    pub fn stabilized_image(&self) -> (Vec<bool>, usize) {
        let mut cur = vec![true; self.len()];
        let mut size = self.len();
        let mut steps = 0;
        loop {
            let mut next = vec![false; self.len()];
            for (i, &inside) in cur.iter().enumerate() {
                if inside {
                    next[self.successor[i] as usize] = true;
                }
            }
            let next_size = next.iter().filter(|&&b| b).count();
            if next_size == size {
                return (cur, steps);
            }
            cur = next;
            size = next_size;
            steps += 1;
        }
    }

    pub fn orbit_stats(&self) -> OrbitStats {
        let mut hist = BTreeMap::new();
        let mut seen = vec![false; self.len()];
        for i in 0..self.len() {
            if self.periodic_mask[i] && !seen[i] {
                let mut j = i;
                loop {
                    seen[j] = true;
                    j = self.successor[j] as usize;
                    if j == i {
                        break;
                    }
                }
                *hist.entry(self.cycle_len[i]).or_insert(0u64) += 1;
            }
        }
        let rho_sum: u64 = self
            .tail_len
            .iter()
            .zip(&self.cycle_len)
            .map(|(&t, &c)| t as u64 + c as u64)
            .sum();
        OrbitStats {
            mean_rho: BigRational::new(BigInt::from(rho_sum), BigInt::from(self.len())),
            max_tail: self.tail_len.iter().copied().max().unwrap_or(0),
            max_cycle: self.cycle_len.iter().copied().max().unwrap_or(0),
            cycle_histogram: hist,
        }
    }
}

/// Kahn-style source removal. Returns the periodic mask and the removal
/// order of the non-periodic points.
fn peel(succ: &[u32]) -> (Vec<bool>, Vec<u32>) {
    let n = succ.len();
    let mut indeg = vec![0u32; n];
    for &s in succ {
        indeg[s as usize] += 1;
    }
    let mut order: Vec<u32> = (0..n as u32).filter(|&i| indeg[i as usize] == 0).collect();
    let mut head = 0;
    while head < order.len() {
        let s = succ[order[head] as usize] as usize;
        indeg[s] -= 1;
        if indeg[s] == 0 {
            order.push(s as u32);
        }
        head += 1;
    }
    let mut periodic = vec![true; n];
    for &i in &order {
        periodic[i as usize] = false;
    }
    (periodic, order)
}

fn lengths(succ: &[u32], periodic: &[bool], order: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = succ.len();
    let mut tail = vec![0u32; n];
    let mut cycle = vec![0u32; n];
    let mut done = vec![false; n];
    for start in 0..n {
        if !periodic[start] || done[start] {
            continue;
        }
        let mut members = vec![start];
        let mut j = succ[start] as usize;
        while j != start {
            members.push(j);
            j = succ[j] as usize;
        }
        for &m in &members {
            cycle[m] = members.len() as u32;
            done[m] = true;
        }
    }
    // Points peeled later are closer to the cycles.
    for &i in order.iter().rev() {
        let s = succ[i as usize] as usize;
        tail[i as usize] = tail[s] + 1;
        cycle[i as usize] = cycle[s];
    }
    (tail, cycle)
}

/// Builds the functional graph of a reduced map on `P^1(F_p)`.
pub fn build_graph(map: &ReducedMap, limits: &Limits) -> Result<FuncGraph> {
    let p = map.prime();
    if p > limits.max_graph_prime {
        return Err(Error::Resource { cap: "functional graph prime", limit: limits.max_graph_prime as u128 });
    }
    let successor = (0..=p)
        .map(|i| map.eval_point(ProjPoint(i)).map(|q| q.0 as u32))
        .collect::<Result<Vec<u32>>>()?;
    FuncGraph::from_successors(p, successor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::RationalMapQ;

    fn graph(expr: &str, p: u64) -> FuncGraph {
        let m = RationalMapQ::parse(expr).unwrap();
        build_graph(&ReducedMap::new(&m, p).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn x_squared_mod_3() {
        let g = graph("x^2", 3);
        assert_eq!(g.successors(), &[0, 1, 1, 3]);
        let (pts, n) = g.periodic_points();
        assert_eq!(pts.iter().map(|p| p.index()).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(n, 3);
        assert_eq!(g.image_iterate(3), vec![3, 3, 3]);
    }

    #[test]
    fn x_squared_minus_2_mod_5() {
        let g = graph("x^2-2", 5);
        assert_eq!(g.successors(), &[3, 4, 2, 2, 4, 5]);
        let (pts, n) = g.periodic_points();
        assert_eq!(pts.iter().map(|p| p.index()).collect::<Vec<_>>(), vec![2, 4, 5]);
        assert_eq!(n, 3);
        assert_eq!(g.image_iterate(3), vec![4, 3, 3]);
        let st = g.orbit_stats();
        assert_eq!(st.max_cycle, 1);
        assert_eq!(st.max_tail, 2);
        assert_eq!(g.tail_len(ProjPoint::finite(0)), 2);
        assert_eq!(st.cycle_histogram, BTreeMap::from([(1, 3)]));
    }

    #[test]
    fn polynomial_maps_fix_infinity() {
        for expr in ["x^2+1", "x^3-3*x", "5*x^4 + x"] {
            for p in [7u64, 11, 13] {
                let g = graph(expr, p);
                assert_eq!(g.successor(ProjPoint::infinity(p)), ProjPoint::infinity(p));
            }
        }
    }

    #[test]
    fn bijection_has_only_cycles() {
        // x^3 permutes F_p when p = 2 mod 3
        let g = graph("x^3", 11);
        assert_eq!(g.periodic_count(), 12);
        assert!(g.orbit_stats().max_tail == 0);
        assert!((0..12).all(|i| g.tail_len(ProjPoint(i)) == 0));
    }

    #[test]
    fn from_successors_validates() {
        assert!(FuncGraph::from_successors(2, vec![0, 1]).is_err());
        assert!(FuncGraph::from_successors(2, vec![0, 1, 3]).is_err());
    }

    #[test]
    fn prime_budget() {
        let m = RationalMapQ::parse("x^2+1").unwrap();
        let r = ReducedMap::new(&m, 101).unwrap();
        let lim = Limits { max_graph_prime: 100, ..Limits::default() };
        assert!(matches!(build_graph(&r, &lim), Err(Error::Resource { .. })));
    }

    /// Floyd's tortoise and hare from `x`; returns (is x periodic, tail, cycle).
    fn floyd(succ: &[u32], x: usize) -> (bool, u32, u32) {
        let f = |i: usize| succ[i] as usize;
        let (mut slow, mut fast) = (f(x), f(f(x)));
        while slow != fast {
            slow = f(slow);
            fast = f(f(fast));
        }
        let mut tail = 0;
        slow = x;
        while slow != fast {
            slow = f(slow);
            fast = f(fast);
            tail += 1;
        }
        let mut cycle = 1;
        let mut j = f(slow);
        while j != slow {
            j = f(j);
            cycle += 1;
        }
        (tail == 0, tail, cycle)
    }

    #[test]
    fn peeling_agrees_with_floyd() {
        for expr in ["x^2+1", "x^2-2", "(x^2+1)/x", "x^3+x+1", "1/x^2"] {
            for p in [3u64, 7, 31, 101, 257] {
                let m = RationalMapQ::parse(expr).unwrap();
                if !m.good_reduction(p) {
                    continue;
                }
                let g = graph(expr, p);
                for i in 0..=p {
                    let (per, tail, cycle) = floyd(g.successors(), i as usize);
                    let pt = ProjPoint(i);
                    assert_eq!((g.is_periodic(pt), g.tail_len(pt), g.cycle_len(pt)), (per, tail, cycle), "{expr} mod {p} at {i}");
                }
            }
        }
    }

    #[test]
    fn mean_rho_is_exact() {
        let g = graph("x^2-2", 5);
        // rho lengths: 0:3, 1:2, 2:1, 3:2, 4:1, inf:1
        assert_eq!(g.orbit_stats().mean_rho, BigRational::new(10.into(), 6.into()));
    }
}
