//! Finite groups as Cayley tables and Rota–Baxter operators on them.
//!
//! A Rota–Baxter operator of weight 1 on a group G is a map B: G → G with
//!
//! ```text
//! B(g) B(h) = B(g B(g) h B(g)⁻¹)
//! ```
//!
//! for all g, h. This module checks that identity and its relatives
//! (weight −1, weight λ, relative operators over an action), builds the
//! derived group and skew brace operations, and enumerates all operators on
//! a small group.
//!
//! ```
//! use rbhopf::rb_group::{check_rb, enumerate_rb, GroupMap, GroupTable, DEFAULT_CAP};
//!
//! let s3 = GroupTable::symmetric(3);
//! let inversion = GroupMap::inversion(&s3);
//! assert!(check_rb(&s3, &inversion, 1).unwrap().passed());
//!
//! let ops = enumerate_rb(&GroupTable::cyclic(3), 1, DEFAULT_CAP).unwrap();
//! assert_eq!(ops.len(), 3);
//! ```

mod io;
mod operators;
mod search;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hopf_core::HopfError;
use crate::report::{Suite, VerificationReport, Witness};

pub use io::{GroupFile, OperatorFile};
pub use operators::*;
pub use search::{automorphisms, enumerate_rb, enumerate_relative_rb, homomorphisms, DEFAULT_CAP};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("weight {lambda} is not invertible modulo the group exponent {exponent}")]
    NotInvertible { lambda: i64, exponent: u64 },
    #[error("weight {0} is not ±1 (use the weight-λ checker)")]
    BadWeight(i64),
    #[error("precondition failed: {}", .0.failed_identity.as_deref().unwrap_or("unknown"))]
    Precondition(Box<VerificationReport>),
    #[error("search exceeded the cap of {cap} nodes")]
    CapExceeded { cap: u64 },
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    n: usize,
    /// Row-major: `table[a * n + b] = a·b`.
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl GroupTable {
    /// Validates a Cayley table (closure, identity, inverses, associativity).
    pub fn from_table(name: &str, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(GroupError::Malformed(format!("row {i} has length {} instead of {n}", rows[i].len())));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::Malformed("table entry out of range".into()));
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        Self::from_flat(name, n, table, None)
    }

    fn from_flat(name: &str, n: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        let op = BinaryOp { n, table };
        if let Some(w) = op.group_witness() {
            return Err(GroupError::NotAGroup(w));
        }
        let identity = op.find_identity().expect("checked");
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| op.op(a, b) == identity).expect("checked"))
            .collect();
        Ok(GroupTable {
            name: name.to_string(),
            n,
            table: op.table,
            identity,
            inverse,
            labels: labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect()),
        })
    }

    /// Closes a set of permutations of `0..k` under composition.
    ///
    /// Elements are sorted lexicographically as images lists, so the
    /// identity permutation is element 0. The product is composition with
    /// the right factor applied first.
    pub fn from_permutations(name: &str, generators: &[Vec<usize>]) -> Result<Self> {
        let k = generators.first().map_or(0, Vec::len);
        for g in generators {
            let set: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != k || set.len() != k || set.iter().any(|&x| x >= k) {
                return Err(GroupError::Malformed(format!("{g:?} is not a permutation of 0..{k}")));
            }
        }
        let id: Vec<usize> = (0..k).collect();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = seen.into_iter().collect();
        let index = |p: &Vec<usize>| elements.binary_search(p).expect("closed under products");
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index(&compose(a, b)));
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::from_flat(name, n, table, Some(labels))
    }

    /// ℤ/n with elements 0..n and addition mod n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_flat(&format!("Z{n}"), n, table, None).expect("cyclic group")
    }

    /// The dihedral group of order 2n; element `i + n·j` is r^i s^j.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let mut table = Vec::with_capacity(4 * n * n);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (i, s) = (a % n, a / n);
                let (j, t) = (b % n, b / n);
                let rot = if s == 0 { (i + j) % n } else { (i + n - j) % n };
                table.push(rot + n * ((s + t) % 2));
            }
        }
        let labels = (0..2 * n)
            .map(|a| match (a % n, a / n) {
                (0, 0) => "e".to_string(),
                (i, 0) => format!("r^{i}"),
                (0, _) => "s".to_string(),
                (i, _) => format!("r^{i}s"),
            })
            .collect();
        Self::from_flat(&format!("D{}", 2 * n), 2 * n, table, Some(labels)).expect("dihedral group")
    }

    /// The symmetric group on k points; labels use cycle notation on 1..=k.
    pub fn symmetric(k: usize) -> Self {
        assert!(k > 0);
        let mut gens = vec![(0..k).collect::<Vec<_>>()];
        if k > 1 {
            let mut t: Vec<usize> = (0..k).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..k).map(|i| (i + 1) % k).collect());
        }
        Self::from_permutations(&format!("S{k}"), &gens).expect("symmetric group")
    }

    /// The quaternion group; element `s·4 + u` is (−1)^s times u ∈ {1, i, j, k}.
    pub fn quaternion() -> Self {
        // unit products: (sign, unit) for u·v with u, v ∈ {1, i, j, k}
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mut table = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (s, u) = UNIT[a % 4][b % 4];
                table.push(((a / 4 + b / 4 + s) % 2) * 4 + u);
            }
        }
        let names = ["1", "i", "j", "k"];
        let labels = (0..8)
            .map(|a| format!("{}{}", if a >= 4 { "-" } else { "" }, names[a % 4]))
            .collect();
        Self::from_flat("Q8", 8, table, Some(labels)).expect("quaternion group")
    }

    /// ℤ/p ⋊ ℤ/q where the generator of ℤ/q acts by multiplication by r.
    ///
    /// Element `a + p·b` is the pair (a, b). With (p, q, r) = (7, 3, 2) this
    /// is the nonabelian group of order 21.
    pub fn metacyclic(p: usize, q: usize, r: usize) -> Result<Self> {
        let mut rq = 1;
        for _ in 0..q {
            rq = rq * r % p;
        }
        if rq != 1 % p {
            return Err(GroupError::Malformed(format!("{r}^{q} is not 1 modulo {p}")));
        }
        let rpow: Vec<usize> = std::iter::successors(Some(1 % p), |x| Some(x * r % p)).take(q).collect();
        let mut table = Vec::with_capacity(p * p * q * q);
        for x in 0..p * q {
            for y in 0..p * q {
                let (a1, b1) = (x % p, x / p);
                let (a2, b2) = (y % p, y / p);
                table.push((a1 + rpow[b1] * a2) % p + p * ((b1 + b2) % q));
            }
        }
        Self::from_flat(&format!("Z{p}:Z{q}"), p * q, table, None)
    }

    /// The nonabelian group of order 21.
    pub fn f21() -> Self {
        let mut g = Self::metacyclic(7, 3, 2).expect("2³ = 8 ≡ 1 mod 7");
        g.name = "F21".into();
        g
    }

    /// A × B with element `a·|B| + b`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (na, nb) = (a.n, b.n);
        let mut table = Vec::with_capacity(na * nb * na * nb);
        for x in 0..na * nb {
            for y in 0..na * nb {
                table.push(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
            }
        }
        let labels = (0..na * nb)
            .map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb]))
            .collect();
        Self::from_flat(&format!("{}x{}", a.name, b.name), na * nb, table, Some(labels)).expect("direct product")
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, elements: &[usize]) -> usize {
        elements.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// g h g⁻¹.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.product(&[g, h, self.inv(g)])
    }

    /// [a, b] = a⁻¹ b⁻¹ a b.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.product(&[self.inv(a), self.inv(b), a, b])
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.n).fold(1u64, |acc, a| {
            let o = self.element_order(a) as u64;
            acc / num_integer::gcd(acc, o) * o
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn as_op(&self) -> BinaryOp {
        BinaryOp {
            n: self.n,
            table: self.table.clone(),
        }
    }

    /// Whether a set of elements is a subgroup.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&self.identity)
            && s.iter().all(|&a| s.contains(&self.inv(a)) && s.iter().all(|&b| s.contains(&self.mul(a, b))))
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for a in 0..self.n {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens).into_iter().collect();
            }
        }
        gens
    }

    /// The subgroup on `elements` as a group of its own, keeping labels.
    /// Local index i corresponds to `elements[i]`.
    pub fn subgroup(&self, name: &str, elements: &[usize]) -> Result<GroupTable> {
        if !self.is_subgroup(elements) || elements.iter().collect::<BTreeSet<_>>().len() != elements.len() {
            return Err(GroupError::NotAGroup(format!("{elements:?} is not a subgroup of {}", self.name)));
        }
        let local = |x: usize| elements.iter().position(|&e| e == x).expect("closed under products");
        let rows: Vec<Vec<usize>> = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| local(self.mul(a, b))).collect())
            .collect();
        let mut sub = GroupTable::from_table(name, &rows)?;
        sub.labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        Ok(sub)
    }
}

impl fmt::Display for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.n)
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// A set map between finite groups, given by its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupMap(pub Vec<usize>);

impl GroupMap {
    pub fn new(images: Vec<usize>) -> Self {
        GroupMap(images)
    }

    pub fn apply(&self, g: usize) -> usize {
        self.0[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// B ≡ e.
    pub fn trivial(domain: &GroupTable, codomain: &GroupTable) -> Self {
        GroupMap(vec![codomain.identity(); domain.order()])
    }

    pub fn identity(g: &GroupTable) -> Self {
        GroupMap((0..g.order()).collect())
    }

    pub fn inversion(g: &GroupTable) -> Self {
        GroupMap((0..g.order()).map(|a| g.inv(a)).collect())
    }

    /// Checks that the map is total between groups of the given orders.
    pub fn validate(&self, domain: &GroupTable, codomain: &GroupTable) -> Result<()> {
        if self.0.len() != domain.order() {
            return Err(GroupError::Malformed(format!(
                "map has {} images, domain has order {}",
                self.0.len(),
                domain.order()
            )));
        }
        if let Some(&x) = self.0.iter().find(|&&x| x >= codomain.order()) {
            return Err(GroupError::Malformed(format!("image {x} outside codomain of order {}", codomain.order())));
        }
        Ok(())
    }

    pub fn is_homomorphism(&self, domain: &GroupTable, codomain: &GroupTable) -> bool {
        (0..domain.order()).all(|a| {
            (0..domain.order()).all(|b| self.apply(domain.mul(a, b)) == codomain.mul(self.apply(a), self.apply(b)))
        })
    }

    pub fn kernel(&self, codomain: &GroupTable) -> Vec<usize> {
        (0..self.0.len()).filter(|&a| self.0[a] == codomain.identity()).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        self.0.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }
}

/// An action Ψ: G → Aut(H), one permutation of H per element of G.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupAction {
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(perms: Vec<Vec<usize>>) -> Self {
        GroupAction { perms }
    }

    pub fn trivial(g: &GroupTable, h: &GroupTable) -> Self {
        GroupAction {
            perms: vec![(0..h.order()).collect(); g.order()],
        }
    }

    /// Ψ_g(h) = g h g⁻¹ on G itself.
    pub fn conjugation(g: &GroupTable) -> Self {
        GroupAction {
            perms: (0..g.order())
                .map(|a| (0..g.order()).map(|b| g.conj(a, b)).collect())
                .collect(),
        }
    }

    /// The action determined by a homomorphism G → Aut(H), given as a map
    /// from G into a list of automorphisms of H.
    pub fn from_automorphisms(autos: &[Vec<usize>], hom: &GroupMap) -> Self {
        GroupAction {
            perms: hom.images().iter().map(|&i| autos[i].clone()).collect(),
        }
    }

    /// Ψ_g(h).
    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.perms[g][h]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Ψ_e = id, each Ψ_g an automorphism of H, and Ψ_{ab} = Ψ_a Ψ_b.
    pub fn check(&self, g: &GroupTable, h: &GroupTable) -> VerificationReport {
        let mut suite = Suite::new("group-action", false);
        if self.perms.len() != g.order() || self.perms.iter().any(|p| p.len() != h.order()) {
            suite.record("shape", 1, Some(Witness::at(&[]).with_detail("wrong number of images")));
            return suite.finish();
        }
        if self.perms.iter().flatten().any(|&x| x >= h.order()) {
            suite.record("shape", 1, Some(Witness::at(&[]).with_detail("image out of range")));
            return suite.finish();
        }
        let (ng, nh) = (g.order(), h.order());
        suite.tuples("identity-acts-trivially", &[nh], |i| {
            (self.apply(g.identity(), i[0]) != i[0]).then(|| Witness::at(i))
        });
        suite.tuples("bijective", &[ng], |i| {
            let set: BTreeSet<usize> = self.perms[i[0]].iter().copied().collect();
            (set.len() != nh).then(|| Witness::at(i))
        });
        suite.tuples("multiplicative", &[ng, nh, nh], |i| {
            let lhs = self.apply(i[0], h.mul(i[1], i[2]));
            let rhs = h.mul(self.apply(i[0], i[1]), self.apply(i[0], i[2]));
            (lhs != rhs).then(|| Witness::at(i).with_detail(format!("{lhs} != {rhs}")))
        });
        suite.tuples("composition", &[ng, ng, nh], |i| {
            let lhs = self.apply(g.mul(i[0], i[1]), i[2]);
            let rhs = self.apply(i[0], self.apply(i[1], i[2]));
            (lhs != rhs).then(|| Witness::at(i).with_detail(format!("{lhs} != {rhs}")))
        });
        suite.finish()
    }

    pub(crate) fn require_valid(&self, g: &GroupTable, h: &GroupTable) -> Result<()> {
        let r = self.check(g, h);
        if r.passed() {
            Ok(())
        } else {
            Err(GroupError::InvalidAction(format!(
                "{} fails",
                r.failed_identity.unwrap_or_default()
            )))
        }
    }
}

/// A binary operation on `0..n`, not assumed to be a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryOp {
    n: usize,
    table: Vec<usize>,
}

impl BinaryOp {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n * n).map(|k| f(k / n, k % n)).collect();
        BinaryOp { n, table }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n.max(1)).map(<[usize]>::to_vec).collect()
    }

    pub fn find_identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|a| self.op(e, a) == a && self.op(a, e) == a))
    }

    /// Description of the first group axiom violation, if any.
    fn group_witness(&self) -> Option<String> {
        let n = self.n;
        if self.table.iter().any(|&x| x >= n) {
            return Some("table entry out of range".into());
        }
        let Some(e) = self.find_identity() else {
            return Some("no two-sided identity".into());
        };
        for a in 0..n {
            if !(0..n).any(|b| self.op(a, b) == e && self.op(b, a) == e) {
                return Some(format!("element {a} has no inverse"));
            }
        }
        let (_, w) = crate::report::check_tuples(&[n, n, n], |i| {
            let lhs = self.op(self.op(i[0], i[1]), i[2]);
            let rhs = self.op(i[0], self.op(i[1], i[2]));
            (lhs != rhs).then(|| Witness::at(i))
        });
        w.map(|w| format!("associativity fails at {:?}", w.indices))
    }

    /// Group axioms as a report.
    pub fn check_group(&self) -> VerificationReport {
        let w = self.group_witness();
        VerificationReport::single("group-axioms", "group", w.is_none(), w.unwrap_or_default())
    }

    pub fn is_group(&self) -> bool {
        self.group_witness().is_none()
    }

    pub fn to_group(&self, name: &str) -> Result<GroupTable> {
        GroupTable::from_flat(name, self.n, self.table.clone(), None)
    }

    /// The inverse of `a` for this operation. Panics if there is none.
    pub fn inverse_of(&self, a: usize) -> usize {
        let e = self.find_identity().expect("operation has an identity");
        (0..self.n)
            .find(|&b| self.op(a, b) == e)
            .expect("element has an inverse")
    }
}
