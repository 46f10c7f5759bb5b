//! Exhaustive search for operators and homomorphisms.
//!
//! Operator identities all have the shape B(x)B(y) = B(t(x, B(x), y)), so
//! once B(x) and B(y) are known the value of B at t(x, B(x), y) is forced.
//! The search assigns values one element at a time and propagates these
//! forced values, which prunes almost every branch long before the map is
//! complete. The cap bounds the number of branch nodes visited.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::operators::RbShape;
use super::{GroupAction, GroupError, GroupMap, GroupTable, Result};

/// Default bound on search nodes.
pub const DEFAULT_CAP: u64 = 100_000_000;

const UNSET: usize = usize::MAX;

struct Problem<'a, F> {
    domain: &'a GroupTable,
    codomain: &'a GroupTable,
    /// t(x, B(x), y), an element of the domain.
    argument: F,
}

struct Budget {
    cap: u64,
    used: AtomicU64,
    exceeded: AtomicBool,
}

impl Budget {
    fn spend(&self) -> bool {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.cap {
            self.exceeded.store(true, Ordering::Relaxed);
        }
        !self.exceeded.load(Ordering::Relaxed)
    }
}

impl<F> Problem<'_, F>
where
    F: Fn(usize, usize, usize) -> usize + Sync,
{
    /// Assigns B(x) = v and everything it forces; false on contradiction.
    fn assign(&self, map: &mut [usize], x: usize, v: usize) -> bool {
        let mut queue = VecDeque::new();
        if !self.set(map, x, v, &mut queue) {
            return false;
        }
        while let Some(x) = queue.pop_front() {
            let n = map.len();
            for y in 0..n {
                if map[y] == UNSET {
                    continue;
                }
                for (a, b) in [(x, y), (y, x)] {
                    let t = (self.argument)(a, map[a], b);
                    let required = self.codomain.mul(map[a], map[b]);
                    if !self.set(map, t, required, &mut queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn set(&self, map: &mut [usize], x: usize, v: usize, queue: &mut VecDeque<usize>) -> bool {
        match map[x] {
            UNSET => {
                map[x] = v;
                queue.push_back(x);
                true
            }
            old => old == v,
        }
    }

    fn dfs(&self, map: &mut Vec<usize>, budget: &Budget, out: &mut Vec<GroupMap>) {
        let Some(x) = map.iter().position(|&v| v == UNSET) else {
            out.push(GroupMap(map.clone()));
            return;
        };
        for v in 0..self.codomain.order() {
            if !budget.spend() {
                return;
            }
            let mut next = map.clone();
            if self.assign(&mut next, x, v) {
                self.dfs(&mut next, budget, out);
            }
        }
    }

    fn solve(&self, cap: u64) -> Result<Vec<GroupMap>> {
        let budget = Budget {
            cap,
            used: AtomicU64::new(0),
            exceeded: AtomicBool::new(false),
        };
        let mut root = vec![UNSET; self.domain.order()];
        // B(e)B(e) = B(t(e, B(e), e)) = B(e) forces B(e) = e
        if !self.assign(&mut root, self.domain.identity(), self.codomain.identity()) {
            return Ok(Vec::new());
        }
        let mut found: Vec<GroupMap> = match root.iter().position(|&v| v == UNSET) {
            None => vec![GroupMap(root)],
            Some(x) => (0..self.codomain.order())
                .into_par_iter()
                .flat_map_iter(|v| {
                    let mut out = Vec::new();
                    if budget.spend() {
                        let mut next = root.clone();
                        if self.assign(&mut next, x, v) {
                            self.dfs(&mut next, &budget, &mut out);
                        }
                    }
                    out
                })
                .collect(),
        };
        if budget.exceeded.load(Ordering::Relaxed) {
            return Err(GroupError::CapExceeded { cap });
        }
        found.sort();
        Ok(found)
    }
}

/// All Rota–Baxter operators of the given weight on G, in lexicographic
/// order of image lists.
///
/// Weights ±1 use the identities of [`check_rb`](super::check_rb); any
/// other weight λ uses the weight-λ identity with the modular inverse power.
pub fn enumerate_rb(g: &GroupTable, weight: i64, cap: u64) -> Result<Vec<GroupMap>> {
    let shape = RbShape::for_weight(g, weight)?;
    let problem = Problem {
        domain: g,
        codomain: g,
        argument: |x: usize, b: usize, y: usize| shape.argument(g, x, b, y),
    };
    problem.solve(cap)
}

/// All relative Rota–Baxter operators B: H → G over the action Ψ.
pub fn enumerate_relative_rb(h: &GroupTable, g: &GroupTable, psi: &GroupAction, cap: u64) -> Result<Vec<GroupMap>> {
    psi.require_valid(g, h)?;
    let problem = Problem {
        domain: h,
        codomain: g,
        argument: |x: usize, b: usize, y: usize| h.mul(x, psi.apply(b, y)),
    };
    problem.solve(cap)
}

/// All group homomorphisms G → H, sorted.
pub fn homomorphisms(g: &GroupTable, h: &GroupTable) -> Vec<GroupMap> {
    let gens = g.generators();
    let r = gens.len();
    let total = h.order().pow(r as u32);
    let mut out: Vec<GroupMap> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut images = Vec::with_capacity(r);
            let mut c = code;
            for _ in 0..r {
                images.push(c % h.order());
                c /= h.order();
            }
            extend_on_generators(g, h, &gens, &images)
        })
        .collect();
    out.sort();
    out
}

/// Extends generator images along the Cayley graph; None if inconsistent.
fn extend_on_generators(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> Option<GroupMap> {
    let mut map = vec![UNSET; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == UNSET {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(GroupMap(map))
}

/// All automorphisms of G as image lists, sorted (the identity first).
pub fn automorphisms(g: &GroupTable) -> Vec<Vec<usize>> {
    homomorphisms(g, g)
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; g.order()];
            m.images().iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
        .map(|m| m.0)
        .collect()
}
