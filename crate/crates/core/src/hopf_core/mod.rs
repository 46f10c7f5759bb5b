//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! An algebra is stored as the table of products of basis elements, a
//! coalgebra as the comultiplication of every basis element (a sparse rank-2
//! tensor) plus the counit vector, and the antipode as a dense matrix.
//! Nothing is assumed: [`check_hopf`] evaluates every axiom on every basis
//! tuple and reports the first counterexample.

mod io;
mod linear;
mod tensor;

pub(crate) use io::{embed, embed_all};
pub use io::{DeltaEntry, HopfFile, PairTerm, ProductEntry, Term};
pub use linear::LinearMap;
pub use tensor::{Tensor, Vector};

use thiserror::Error;

use crate::report::{Suite, VerificationReport, Witness};
use crate::scalars::{FieldCtx, Scalar, ScalarError};

/// Default bound on the dimension of any constructed Hopf algebra.
pub const DEFAULT_DIM_CAP: usize = 256;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the cap of {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("the antipode is not invertible")]
    SingularAntipode,
    #[error("iterated comultiplication depends on bracketing (not coassociative)")]
    NotCoassociative,
    #[error("iteration depth {0} is outside 1..=3")]
    BadDepth(usize),
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, HopfError>;

/// Unital algebra on the basis `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraData {
    dim: usize,
    labels: Vec<String>,
    unit: Vector,
    /// Product of basis elements i and j at `i * dim + j`.
    mult: Vec<Vector>,
}

impl AlgebraData {
    pub fn new(labels: Vec<String>, unit: Vector, mult: Vec<Vector>) -> Result<Self> {
        let dim = labels.len();
        if mult.len() != dim * dim {
            return Err(HopfError::DimensionMismatch {
                expected: dim * dim,
                found: mult.len(),
            });
        }
        for v in mult.iter().chain(std::iter::once(&unit)) {
            if v.max_index().is_some_and(|i| i >= dim) {
                return Err(HopfError::Malformed("basis index out of range".into()));
            }
        }
        Ok(AlgebraData {
            dim,
            labels,
            unit,
            mult,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i * self.dim + j]
    }

    pub fn product(&self, a: &Vector, b: &Vector) -> Vector {
        a.bilinear(b, |i, j| self.basis_product(i, j).clone())
    }

    /// Leg-wise product in A^{⊗r}.
    pub fn tensor_product(&self, x: &Tensor, y: &Tensor) -> Tensor {
        assert_eq!(x.rank(), y.rank());
        let mut out = Tensor::zero(x.rank());
        for (k1, a) in x.iter() {
            for (k2, b) in y.iter() {
                let factors: Vec<&Vector> = k1
                    .iter()
                    .zip(k2)
                    .map(|(&i, &j)| self.basis_product(i, j))
                    .collect();
                out.add_scaled(&(a * b), &Tensor::outer(&factors));
            }
        }
        out
    }

    /// The same space with reversed multiplication.
    pub fn opposite(&self) -> AlgebraData {
        let d = self.dim;
        let mult = (0..d * d)
            .map(|k| self.basis_product(k % d, k / d).clone())
            .collect();
        AlgebraData {
            dim: d,
            labels: self.labels.clone(),
            unit: self.unit.clone(),
            mult,
        }
    }
}

/// Comultiplication and counit on the basis `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoalgebraData {
    delta: Vec<Tensor>,
    counit: Vec<Scalar>,
}

impl CoalgebraData {
    pub fn new(delta: Vec<Tensor>, counit: Vec<Scalar>) -> Result<Self> {
        if delta.len() != counit.len() {
            return Err(HopfError::DimensionMismatch {
                expected: counit.len(),
                found: delta.len(),
            });
        }
        let dim = counit.len();
        for t in &delta {
            if t.rank() != 2 {
                return Err(HopfError::Malformed("comultiplication must have rank 2".into()));
            }
            if t.iter().any(|(k, _)| k.iter().any(|&i| i >= dim)) {
                return Err(HopfError::Malformed("basis index out of range".into()));
            }
        }
        Ok(CoalgebraData { delta, counit })
    }

    /// Builds Δ from a list of `(i, j, k, c)` meaning Δ(e_i) ∋ c·e_j⊗e_k.
    pub fn from_triples(dim: usize, triples: &[(usize, usize, usize, Scalar)], counit: Vec<Scalar>) -> Result<Self> {
        let mut delta = vec![Tensor::zero(2); dim];
        for (i, j, k, c) in triples {
            if *i >= dim {
                return Err(HopfError::Malformed("basis index out of range".into()));
            }
            delta[*i].add_term(vec![*j, *k], c.clone());
        }
        CoalgebraData::new(delta, counit)
    }

    pub fn dim(&self) -> usize {
        self.counit.len()
    }

    pub fn basis_delta(&self, i: usize) -> &Tensor {
        &self.delta[i]
    }

    pub fn delta(&self, v: &Vector) -> Tensor {
        let mut out = Tensor::zero(2);
        for (i, c) in v.iter() {
            out.add_scaled(c, &self.delta[i]);
        }
        out
    }

    pub fn counit_vector(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn counit(&self, v: &Vector) -> Scalar {
        let mut acc = self
            .counit
            .first()
            .map(|c| c.field().zero())
            .unwrap_or_else(|| FieldCtx::Rationals.zero());
        for (i, c) in v.iter() {
            acc = &acc + &(c * &self.counit[i]);
        }
        acc
    }

    /// Applies Δ to the leg `leg` of a tensor.
    pub fn delta_on_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        t.map_leg(leg, 2, |i| self.delta[i].clone())
    }

    /// Δ^{(k)} computed as repeated Δ on the last leg.
    pub fn iterated_delta(&self, v: &Vector, k: usize) -> Tensor {
        let mut t = Tensor::from_vector(v);
        for step in 0..k {
            t = self.delta_on_leg(&t, step);
        }
        t
    }
}

/// A finite-dimensional Hopf algebra candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfData {
    ctx: FieldCtx,
    algebra: AlgebraData,
    coalgebra: CoalgebraData,
    antipode: LinearMap,
}

impl HopfData {
    pub fn new(ctx: FieldCtx, algebra: AlgebraData, coalgebra: CoalgebraData, antipode: LinearMap) -> Result<Self> {
        Self::with_cap(ctx, algebra, coalgebra, antipode, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(
        ctx: FieldCtx,
        algebra: AlgebraData,
        coalgebra: CoalgebraData,
        antipode: LinearMap,
        cap: usize,
    ) -> Result<Self> {
        let dim = algebra.dim();
        if dim > cap {
            return Err(HopfError::TooLarge { dim, cap });
        }
        if coalgebra.dim() != dim {
            return Err(HopfError::DimensionMismatch {
                expected: dim,
                found: coalgebra.dim(),
            });
        }
        if antipode.domain_dim() != dim || antipode.codomain_dim() != dim {
            return Err(HopfError::DimensionMismatch {
                expected: dim,
                found: antipode.domain_dim(),
            });
        }
        Ok(HopfData {
            ctx,
            algebra,
            coalgebra,
            antipode,
        })
    }

    /// The one-dimensional Hopf algebra 𝕜.
    pub fn ground_field(ctx: &FieldCtx) -> Self {
        let one = Vector::basis(0, ctx);
        let algebra = AlgebraData::new(vec!["1".into()], one.clone(), vec![one]).unwrap();
        let mut d = Tensor::zero(2);
        d.add_term(vec![0, 0], ctx.one());
        let coalgebra = CoalgebraData::new(vec![d], vec![ctx.one()]).unwrap();
        HopfData::new(ctx.clone(), algebra, coalgebra, LinearMap::identity(1, ctx)).unwrap()
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.algebra.labels
    }

    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &CoalgebraData {
        &self.coalgebra
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn unit(&self) -> &Vector {
        &self.algebra.unit
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(i, &self.ctx)
    }

    /// Index of the basis element with the given label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.algebra.labels.iter().position(|l| l == label)
    }

    /// Basis vector by label. Panics if absent.
    pub fn element(&self, label: &str) -> Vector {
        let i = self
            .index_of(label)
            .unwrap_or_else(|| panic!("no basis element labelled {label:?}"));
        self.basis(i)
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        match v.max_index() {
            Some(i) if i >= self.dim() => Err(HopfError::DimensionMismatch {
                expected: self.dim(),
                found: i + 1,
            }),
            _ => Ok(()),
        }
    }

    /// Product a·b with dimension checking.
    pub fn mul(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.check_vector(a)?;
        self.check_vector(b)?;
        Ok(self.product(a, b))
    }

    pub fn product(&self, a: &Vector, b: &Vector) -> Vector {
        self.algebra.product(a, b)
    }

    /// Product of several vectors, left to right.
    pub fn product_all(&self, factors: &[&Vector]) -> Vector {
        let mut acc = self.unit().clone();
        for f in factors {
            acc = self.product(&acc, f);
        }
        acc
    }

    pub fn delta(&self, v: &Vector) -> Tensor {
        self.coalgebra.delta(v)
    }

    pub fn counit(&self, v: &Vector) -> Scalar {
        self.coalgebra.counit(v)
    }

    pub fn s(&self, v: &Vector) -> Vector {
        self.antipode.apply(v)
    }

    /// Δ^{(k)}(v) for k in 1..=3, refusing non-coassociative input.
    ///
    /// The result is computed by applying Δ to the last leg and compared
    /// with the bracketing that applies Δ to the first leg.
    pub fn delta_power(&self, v: &Vector, k: usize) -> Result<Tensor> {
        if !(1..=3).contains(&k) {
            return Err(HopfError::BadDepth(k));
        }
        self.check_vector(v)?;
        let right = self.coalgebra.iterated_delta(v, k);
        let mut left = Tensor::from_vector(v);
        for _ in 0..k {
            left = self.coalgebra.delta_on_leg(&left, 0);
        }
        if left != right {
            return Err(HopfError::NotCoassociative);
        }
        Ok(right)
    }

    /// Δ^{(k)} without the bracketing check.
    pub fn legs(&self, v: &Vector, k: usize) -> Tensor {
        self.coalgebra.iterated_delta(v, k)
    }

    /// Leg-wise product in H^{⊗r}.
    pub fn tensor_product(&self, x: &Tensor, y: &Tensor) -> Tensor {
        self.algebra.tensor_product(x, y)
    }

    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim()).all(|i| {
            let d = self.coalgebra.basis_delta(i);
            d.permute(&[1, 0]) == *d
        })
    }

    pub fn is_group_like(&self, v: &Vector) -> bool {
        let vv = Tensor::outer(&[v, v]);
        !v.is_zero() && self.delta(v) == vv && self.counit(v).is_one()
    }

    /// Whether Δ(v) = v⊗1 + g⊗v.
    pub fn is_primitive(&self, v: &Vector, g: &Vector) -> bool {
        let mut expected = Tensor::outer(&[v, self.unit()]);
        expected.add_scaled(&self.ctx.one(), &Tensor::outer(&[g, v]));
        self.delta(v) == expected
    }
}

pub(crate) fn tensor_witness(idx: &[usize], lhs: &Tensor, rhs: &Tensor, ctx: &FieldCtx) -> Option<Witness> {
    lhs.first_difference(rhs, ctx)
        .map(|(pos, l, r)| Witness::at(idx).with_values(pos, l, r))
}

pub(crate) fn vector_witness(idx: &[usize], lhs: &Vector, rhs: &Vector, ctx: &FieldCtx) -> Option<Witness> {
    lhs.first_difference(rhs, ctx)
        .map(|(pos, l, r)| Witness::at(idx).with_values(vec![pos], l, r))
}

pub(crate) fn scalar_witness(idx: &[usize], lhs: &Scalar, rhs: &Scalar) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::at(idx).with_values(Vec::new(), lhs.clone(), rhs.clone()))
}

/// Every Hopf algebra axiom, stopping at the first failing identity.
pub fn check_hopf(h: &HopfData) -> VerificationReport {
    check_hopf_with(h, false)
}

/// [`check_hopf`]; with `full`, evaluates every identity even after a failure.
pub fn check_hopf_with(h: &HopfData, full: bool) -> VerificationReport {
    let d = h.dim();
    let ctx = h.ctx();
    let alg = h.algebra();
    let one = h.unit();
    let mut suite = Suite::new("hopf-axioms", full);

    suite.tuples("associativity", &[d, d, d], |idx| {
        let (a, b, c) = (h.basis(idx[0]), h.basis(idx[1]), h.basis(idx[2]));
        let lhs = alg.product(&alg.product(&a, &b), &c);
        let rhs = alg.product(&a, &alg.product(&b, &c));
        vector_witness(idx, &lhs, &rhs, ctx)
    });
    suite.tuples("unit", &[d], |idx| {
        let a = h.basis(idx[0]);
        vector_witness(idx, &alg.product(one, &a), &a, ctx)
            .or_else(|| vector_witness(idx, &alg.product(&a, one), &a, ctx))
    });
    suite.tuples("coassociativity", &[d], |idx| {
        let a = h.basis(idx[0]);
        let da = h.delta(&a);
        let right = h.coalgebra().delta_on_leg(&da, 1);
        let left = h.coalgebra().delta_on_leg(&da, 0);
        tensor_witness(idx, &left, &right, ctx)
    });
    suite.tuples("counit", &[d], |idx| {
        let a = h.basis(idx[0]);
        let da = h.delta(&a);
        let mut left = Vector::zero();
        let mut right = Vector::zero();
        for (k, c) in da.iter() {
            left.add_term(k[1], c * &h.coalgebra().counit_vector()[k[0]]);
            right.add_term(k[0], c * &h.coalgebra().counit_vector()[k[1]]);
        }
        vector_witness(idx, &left, &a, ctx).or_else(|| vector_witness(idx, &right, &a, ctx))
    });
    suite.tuples("delta-unit", &[], |idx| {
        tensor_witness(idx, &h.delta(one), &Tensor::outer(&[one, one]), ctx)
    });
    suite.tuples("counit-unit", &[], |idx| scalar_witness(idx, &h.counit(one), &ctx.one()));
    suite.tuples("delta-multiplicative", &[d, d], |idx| {
        let (a, b) = (h.basis(idx[0]), h.basis(idx[1]));
        let lhs = h.delta(&alg.product(&a, &b));
        let rhs = h.tensor_product(&h.delta(&a), &h.delta(&b));
        tensor_witness(idx, &lhs, &rhs, ctx)
    });
    suite.tuples("counit-multiplicative", &[d, d], |idx| {
        let (a, b) = (h.basis(idx[0]), h.basis(idx[1]));
        let lhs = h.counit(&alg.product(&a, &b));
        let rhs = &h.counit(&a) * &h.counit(&b);
        scalar_witness(idx, &lhs, &rhs)
    });
    suite.tuples("antipode-left", &[d], |idx| {
        let a = h.basis(idx[0]);
        let lhs = antipode_convolution(h, &a, true);
        vector_witness(idx, &lhs, &one.scale(&h.counit(&a)), ctx)
    });
    suite.tuples("antipode-right", &[d], |idx| {
        let a = h.basis(idx[0]);
        let lhs = antipode_convolution(h, &a, false);
        vector_witness(idx, &lhs, &one.scale(&h.counit(&a)), ctx)
    });
    suite.tuples("antipode-antimultiplicative", &[d, d], |idx| {
        let (a, b) = (h.basis(idx[0]), h.basis(idx[1]));
        let lhs = h.s(&alg.product(&a, &b));
        let rhs = alg.product(&h.s(&b), &h.s(&a));
        vector_witness(idx, &lhs, &rhs, ctx)
    });
    suite.tuples("antipode-anticomultiplicative", &[d], |idx| {
        let a = h.basis(idx[0]);
        let lhs = h.delta(&h.s(&a));
        let rhs = h
            .delta(&a)
            .map_leg(0, 1, |i| Tensor::from_vector(&h.antipode().column(i)))
            .map_leg(1, 1, |i| Tensor::from_vector(&h.antipode().column(i)))
            .permute(&[1, 0]);
        tensor_witness(idx, &lhs, &rhs, ctx)
    });
    suite.finish()
}

/// m(S⊗id)Δ(a) when `left`, otherwise m(id⊗S)Δ(a).
pub fn antipode_convolution(h: &HopfData, a: &Vector, left: bool) -> Vector {
    let mut out = Vector::zero();
    for (k, c) in h.delta(a).iter() {
        let (x, y) = (h.basis(k[0]), h.basis(k[1]));
        let p = if left {
            h.product(&h.s(&x), &y)
        } else {
            h.product(&x, &h.s(&y))
        };
        out.add_scaled(c, &p);
    }
    out
}

/// S(1) = 1 and ε∘S = ε, the consequences of the antipode axioms.
pub fn hopf_consequences(h: &HopfData) -> VerificationReport {
    let ctx = h.ctx();
    let mut suite = Suite::new("hopf-consequences", true);
    suite.tuples("antipode-unit", &[], |idx| {
        vector_witness(idx, &h.s(h.unit()), h.unit(), ctx)
    });
    suite.tuples("counit-antipode", &[h.dim()], |idx| {
        let a = h.basis(idx[0]);
        scalar_witness(idx, &h.counit(&h.s(&a)), &h.counit(&a))
    });
    suite.finish()
}

/// (H, m^op, Δ, ε, S⁻¹).
pub fn opposite_hopf(h: &HopfData) -> Result<HopfData> {
    let inverse = h.antipode().inverse().ok_or(HopfError::SingularAntipode)?;
    Ok(HopfData {
        ctx: h.ctx.clone(),
        algebra: h.algebra.opposite(),
        coalgebra: h.coalgebra.clone(),
        antipode: inverse,
    })
}

/// f(ab) = f(a)f(b) on all basis pairs and f(1) = 1.
pub fn is_algebra_morphism(f: &LinearMap, a: &HopfData, b: &HopfData) -> VerificationReport {
    let mut suite = Suite::new("algebra-morphism", false);
    if let Some(w) = morphism_shape(f, a, b) {
        suite.record("dimensions", 1, Some(w));
        return suite.finish();
    }
    let d = a.dim();
    let ctx = b.ctx();
    suite.tuples("morphism-unit", &[], |idx| {
        vector_witness(idx, &f.apply(a.unit()), b.unit(), ctx)
    });
    suite.tuples("morphism-multiplicative", &[d, d], |idx| {
        let (x, y) = (a.basis(idx[0]), a.basis(idx[1]));
        let lhs = f.apply(&a.product(&x, &y));
        let rhs = b.product(&f.apply(&x), &f.apply(&y));
        vector_witness(idx, &lhs, &rhs, ctx)
    });
    suite.finish()
}

/// Δ_B∘f = (f⊗f)∘Δ_A and ε_B∘f = ε_A.
pub fn is_coalgebra_morphism(f: &LinearMap, a: &HopfData, b: &HopfData) -> VerificationReport {
    let mut suite = Suite::new("coalgebra-morphism", false);
    if let Some(w) = morphism_shape(f, a, b) {
        suite.record("dimensions", 1, Some(w));
        return suite.finish();
    }
    let d = a.dim();
    let ctx = b.ctx();
    suite.tuples("morphism-counit", &[d], |idx| {
        let x = a.basis(idx[0]);
        scalar_witness(idx, &b.counit(&f.apply(&x)), &a.counit(&x))
    });
    suite.tuples("morphism-comultiplicative", &[d], |idx| {
        let x = a.basis(idx[0]);
        let lhs = b.delta(&f.apply(&x));
        let rhs = apply_on_legs(&a.delta(&x), f);
        tensor_witness(idx, &lhs, &rhs, ctx)
    });
    suite.finish()
}

/// (f ⊗ f ⊗ …) applied to every leg.
pub fn apply_on_legs(t: &Tensor, f: &LinearMap) -> Tensor {
    let mut out = t.clone();
    for leg in 0..t.rank() {
        out = out.map_leg(leg, 1, |i| Tensor::from_vector(&f.column(i)));
    }
    out
}

fn morphism_shape(f: &LinearMap, a: &HopfData, b: &HopfData) -> Option<Witness> {
    (f.domain_dim() != a.dim() || f.codomain_dim() != b.dim()).then(|| {
        Witness::at(&[]).with_detail(format!(
            "map is {}x{}, expected {}x{}",
            f.codomain_dim(),
            f.domain_dim(),
            b.dim(),
            a.dim()
        ))
    })
}

/// The Hopf cobrace compatibility
/// a_(1′) ⊗ a_(2′1) ⊗ a_(2′2) = a_(11′) S(a_(2)) a_(31′) ⊗ a_(12′) ⊗ a_(32′),
/// where unprimed legs use `delta` and primed legs use `delta_prime`.
pub fn check_cobrace_compat(
    m: &AlgebraData,
    delta: &CoalgebraData,
    delta_prime: &CoalgebraData,
    s: &LinearMap,
) -> VerificationReport {
    let d = m.dim();
    let ctx = s.field();
    let mut suite = Suite::new("hopf-cobrace", false);
    suite.tuples("cobrace-compatibility", &[d], |idx| {
        let a = Vector::basis(idx[0], &ctx);
        let lhs = delta_prime.delta(&a).map_leg(1, 2, |i| delta.basis_delta(i).clone());
        let mut rhs = Tensor::zero(3);
        for (k, c) in delta.iterated_delta(&a, 2).iter() {
            let s_mid = s.column(k[1]);
            for (p, cp) in delta_prime.basis_delta(k[0]).iter() {
                for (q, cq) in delta_prime.basis_delta(k[2]).iter() {
                    let first = m.product(&m.product(&Vector::basis(p[0], &ctx), &s_mid), &Vector::basis(q[0], &ctx));
                    let t = Tensor::outer(&[&first, &Vector::basis(p[1], &ctx), &Vector::basis(q[1], &ctx)]);
                    rhs.add_scaled(&(&(c * cp) * cq), &t);
                }
            }
        }
        tensor_witness(idx, &lhs, &rhs, &ctx)
    });
    suite.finish()
}
