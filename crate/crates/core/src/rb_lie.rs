//! Relative Rota–Baxter operators of weight λ on Lie algebras.
//!
//! For Lie algebras 𝔤, 𝔥 and a homomorphism φ: 𝔤 → Der(𝔥), a linear map
//! B: 𝔥 → 𝔤 is a relative Rota–Baxter operator of weight λ when
//!
//! ```text
//! [B(u), B(v)]_𝔤 = B(φ(B(u))v − φ(B(v))u + λ[u, v]_𝔥).
//! ```
//!
//! With 𝔥 = 𝔤 and φ = ad this is the ordinary weight-λ identity.
//!
//! ```
//! use rbhopf::hopf_core::LinearMap;
//! use rbhopf::rb_lie::{check_lie, check_rb_lie_weight, LieData};
//! use rbhopf::scalars::FieldCtx;
//!
//! let q = FieldCtx::rationals();
//! let sl2 = LieData::sl2(&q);
//! assert!(check_lie(&sl2).passed());
//! let lambda = q.from_int(2);
//! let b = LinearMap::identity(3, &q).scale(&-&lambda);
//! assert!(check_rb_lie_weight(&sl2, &b, &lambda).passed());
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hopf_core::{embed, vector_witness, HopfError, LinearMap, Term, Tensor, Vector};
use crate::report::{check_tuples, Suite, VerificationReport, Witness};
use crate::scalars::{FieldCtx, Scalar};

/// Default bound on the number of matrices a grid search may visit.
pub const DEFAULT_GRID_CAP: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid action: {}", .0.failed_identity.as_deref().unwrap_or("unknown"))]
    InvalidAction(Box<VerificationReport>),
    #[error("grid search would visit {count} matrices, above the cap of {cap}")]
    TooLarge { count: u128, cap: u64 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

pub type Result<T> = std::result::Result<T, LieError>;

/// A Lie algebra candidate given by structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct LieData {
    ctx: FieldCtx,
    labels: Vec<String>,
    /// `brackets[i * dim + j]` is [e_i, e_j].
    brackets: Vec<Vector>,
}

impl LieData {
    pub fn new(ctx: &FieldCtx, labels: Vec<String>, brackets: Vec<Vector>) -> Result<Self> {
        let d = labels.len();
        if brackets.len() != d * d {
            return Err(LieError::DimensionMismatch {
                expected: d * d,
                found: brackets.len(),
            });
        }
        if let Some(k) = brackets.iter().filter_map(Vector::max_index).find(|&k| k >= d) {
            return Err(LieError::DimensionMismatch { expected: d, found: k + 1 });
        }
        Ok(LieData {
            ctx: ctx.clone(),
            labels,
            brackets,
        })
    }

    /// Sets [e_i, e_j] = v and [e_j, e_i] = −v for each listed pair.
    pub fn from_brackets(ctx: &FieldCtx, labels: &[&str], entries: &[(usize, usize, Vector)]) -> Result<Self> {
        let d = labels.len();
        let mut brackets = vec![Vector::zero(); d * d];
        for (i, j, v) in entries {
            if *i >= d || *j >= d {
                return Err(LieError::Malformed(format!("bracket ({i}, {j}) out of range")));
            }
            brackets[i * d + j] = v.clone();
            brackets[j * d + i] = v.scale(&-ctx.one());
        }
        LieData::new(ctx, labels.iter().map(|s| s.to_string()).collect(), brackets)
    }

    pub fn abelian(dim: usize, ctx: &FieldCtx) -> Self {
        let labels = (0..dim).map(|i| format!("e{i}")).collect();
        LieData::new(ctx, labels, vec![Vector::zero(); dim * dim]).expect("consistent shape")
    }

    /// sl₂ on the basis e, h, f with [h,e] = 2e, [h,f] = −2f, [e,f] = h.
    pub fn sl2(ctx: &FieldCtx) -> Self {
        let e = |i| Vector::basis(i, ctx);
        LieData::from_brackets(
            ctx,
            &["e", "h", "f"],
            &[
                (1, 0, e(0).scale(&ctx.from_int(2))),
                (1, 2, e(2).scale(&ctx.from_int(-2))),
                (0, 2, e(1)),
            ],
        )
        .expect("sl2 constants")
    }

    /// The two-dimensional nonabelian algebra [x, y] = x.
    pub fn affine_line(ctx: &FieldCtx) -> Self {
        LieData::from_brackets(ctx, &["x", "y"], &[(0, 1, Vector::basis(0, ctx))]).expect("constants")
    }

    /// The same space with bracket λ[·,·].
    pub fn rescale(&self, lambda: &Scalar) -> Self {
        LieData {
            ctx: self.ctx.clone(),
            labels: self.labels.clone(),
            brackets: self.brackets.iter().map(|v| v.scale(lambda)).collect(),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(i, &self.ctx)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i * self.dim() + j]
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) {
        let d = self.dim();
        self.brackets[i * d + j] = v;
    }

    pub fn bracket(&self, u: &Vector, v: &Vector) -> Vector {
        u.bilinear(v, |i, j| self.basis_bracket(i, j).clone())
    }

    /// Structure constants as a rank-3 tensor (i, j, k) ↦ c_{ij}^k.
    pub fn to_tensor(&self) -> Tensor {
        let d = self.dim();
        let mut t = Tensor::zero(3);
        for (slot, v) in self.brackets.iter().enumerate() {
            for (k, c) in v.iter() {
                t.add_term(vec![slot / d, slot % d, k], c.clone());
            }
        }
        t
    }
}

/// Antisymmetry and the Jacobi identity on all basis tuples.
pub fn check_lie(l: &LieData) -> VerificationReport {
    let d = l.dim();
    let ctx = l.ctx();
    let mut suite = Suite::new("lie-algebra", false);
    suite.tuples("alternating", &[d], |idx| {
        vector_witness(idx, l.basis_bracket(idx[0], idx[0]), &Vector::zero(), ctx)
    });
    suite.tuples("antisymmetry", &[d, d], |idx| {
        let rhs = l.basis_bracket(idx[1], idx[0]).scale(&-ctx.one());
        vector_witness(idx, l.basis_bracket(idx[0], idx[1]), &rhs, ctx)
    });
    suite.tuples("jacobi", &[d, d, d], |idx| {
        let (x, y, z) = (l.basis(idx[0]), l.basis(idx[1]), l.basis(idx[2]));
        let sum = l
            .bracket(&x, &l.bracket(&y, &z))
            .add(&l.bracket(&y, &l.bracket(&z, &x)))
            .add(&l.bracket(&z, &l.bracket(&x, &y)));
        vector_witness(idx, &sum, &Vector::zero(), ctx)
    });
    suite.finish()
}

/// φ: 𝔤 → End(𝔥), one matrix per basis element of 𝔤.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationAction {
    mats: Vec<LinearMap>,
}

impl DerivationAction {
    pub fn new(mats: Vec<LinearMap>) -> Self {
        DerivationAction { mats }
    }

    /// ad: 𝔤 → Der(𝔤).
    pub fn adjoint(g: &LieData) -> Self {
        let d = g.dim();
        let mats = (0..d)
            .map(|i| {
                let columns: Vec<Vector> = (0..d).map(|j| g.basis_bracket(i, j).clone()).collect();
                LinearMap::from_columns(d, &columns, g.ctx())
            })
            .collect();
        DerivationAction { mats }
    }

    pub fn zero(g: &LieData, h: &LieData) -> Self {
        DerivationAction {
            mats: vec![LinearMap::zero(h.dim(), h.dim(), h.ctx()); g.dim()],
        }
    }

    pub fn matrices(&self) -> &[LinearMap] {
        &self.mats
    }

    /// φ(u)v.
    pub fn apply(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in u.iter() {
            out.add_scaled(c, &self.mats[i].apply(v));
        }
        out
    }

    /// Each φ(e_i) is a derivation of 𝔥 and φ is a Lie homomorphism.
    pub fn check(&self, g: &LieData, h: &LieData) -> VerificationReport {
        let (dg, dh) = (g.dim(), h.dim());
        let ctx = h.ctx();
        let mut suite = Suite::new("derivation-action", false);
        if self.mats.len() != dg || self.mats.iter().any(|m| m.domain_dim() != dh || m.codomain_dim() != dh) {
            let w = Witness::at(&[]).with_detail(format!("expected {dg} matrices of size {dh}x{dh}"));
            suite.record("dimensions", 1, Some(w));
            return suite.finish();
        }
        suite.tuples("derivation", &[dg, dh, dh], |idx| {
            let (m, a, b) = (&self.mats[idx[0]], h.basis(idx[1]), h.basis(idx[2]));
            let lhs = m.apply(&h.bracket(&a, &b));
            let rhs = h.bracket(&m.apply(&a), &b).add(&h.bracket(&a, &m.apply(&b)));
            vector_witness(idx, &lhs, &rhs, ctx)
        });
        suite.tuples("homomorphism", &[dg, dg, dh], |idx| {
            let (x, y, v) = (g.basis(idx[0]), g.basis(idx[1]), h.basis(idx[2]));
            let lhs = self.apply(&g.bracket(&x, &y), &v);
            let rhs = self
                .apply(&x, &self.apply(&y, &v))
                .sub(&self.apply(&y, &self.apply(&x, &v)));
            vector_witness(idx, &lhs, &rhs, ctx)
        });
        suite.finish()
    }
}

fn relative_sides(
    g: &LieData,
    h: &LieData,
    phi: &DerivationAction,
    b: &LinearMap,
    lambda: &Scalar,
    u: usize,
    v: usize,
) -> (Vector, Vector) {
    let (eu, ev) = (h.basis(u), h.basis(v));
    let (bu, bv) = (b.apply(&eu), b.apply(&ev));
    let lhs = g.bracket(&bu, &bv);
    let arg = phi
        .apply(&bu, &ev)
        .sub(&phi.apply(&bv, &eu))
        .add(&h.bracket(&eu, &ev).scale(lambda));
    (lhs, b.apply(&arg))
}

fn require_shape(b: &LinearMap, domain: usize, codomain: usize) -> Result<()> {
    if b.domain_dim() != domain {
        return Err(LieError::DimensionMismatch {
            expected: domain,
            found: b.domain_dim(),
        });
    }
    if b.codomain_dim() != codomain {
        return Err(LieError::DimensionMismatch {
            expected: codomain,
            found: b.codomain_dim(),
        });
    }
    Ok(())
}

/// [B(u), B(v)]_𝔤 = B(φ(B(u))v − φ(B(v))u + λ[u, v]_𝔥) on all basis pairs.
pub fn check_relative_rb_lie(
    g: &LieData,
    h: &LieData,
    phi: &DerivationAction,
    b: &LinearMap,
    lambda: &Scalar,
) -> Result<VerificationReport> {
    let action = phi.check(g, h);
    if !action.passed() {
        return Err(LieError::InvalidAction(Box::new(action)));
    }
    require_shape(b, h.dim(), g.dim())?;
    let d = h.dim();
    let mut suite = Suite::new("relative-rota-baxter-lie", false);
    suite.tuples("relative-rb", &[d, d], |idx| {
        let (lhs, rhs) = relative_sides(g, h, phi, b, lambda, idx[0], idx[1]);
        vector_witness(idx, &lhs, &rhs, g.ctx())
    });
    Ok(suite.finish())
}

/// [B(u), B(v)] = B([B(u), v] − [B(v), u] + λ[u, v]) on all basis pairs.
///
/// The report also compares, pair by pair, the verdict with the relative
/// identity for 𝔥 = 𝔤 with bracket λ[·,·], φ = ad and weight 1.
pub fn check_rb_lie_weight(g: &LieData, b: &LinearMap, lambda: &Scalar) -> VerificationReport {
    let d = g.dim();
    let ctx = g.ctx();
    let mut suite = Suite::new("rota-baxter-lie", false);
    if let Err(e) = require_shape(b, d, d) {
        suite.record("dimensions", 1, Some(Witness::at(&[]).with_detail(e.to_string())));
        return suite.finish();
    }
    let direct = |u: usize, v: usize| {
        let (eu, ev) = (g.basis(u), g.basis(v));
        let (bu, bv) = (b.apply(&eu), b.apply(&ev));
        let lhs = g.bracket(&bu, &bv);
        let arg = g
            .bracket(&bu, &ev)
            .sub(&g.bracket(&bv, &eu))
            .add(&g.bracket(&eu, &ev).scale(lambda));
        (lhs, b.apply(&arg))
    };
    suite.tuples("rb-weight", &[d, d], |idx| {
        let (lhs, rhs) = direct(idx[0], idx[1]);
        vector_witness(idx, &lhs, &rhs, ctx)
    });
    let rescaled = g.rescale(lambda);
    let ad = DerivationAction::adjoint(g);
    let one = ctx.one();
    let (checked, disagreement) = check_tuples(&[d, d], |idx| {
        let (l1, r1) = direct(idx[0], idx[1]);
        let (l2, r2) = relative_sides(g, &rescaled, &ad, b, &one, idx[0], idx[1]);
        ((l1 == r1) != (l2 == r2)).then(|| Witness::at(idx).with_detail("weight-λ and relative verdicts differ"))
    });
    suite.record("relative-form-agrees", checked, disagreement);
    suite.finish()
}

/// All d×d matrices with entries from `grid` passing [`check_rb_lie_weight`],
/// in lexicographic order of their column-major entry codes.
pub fn rb_lie_grid_search(g: &LieData, lambda: &Scalar, grid: &[Scalar], cap: u64) -> Result<Vec<LinearMap>> {
    let d = g.dim();
    let cells = (d * d) as u32;
    let count = (grid.len() as u128).checked_pow(cells).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(LieError::TooLarge { count, cap });
    }
    let ctx = g.ctx();
    let grid: Vec<Scalar> = grid.iter().map(|c| embed(ctx, c)).collect::<std::result::Result<_, _>>()?;
    let n = grid.len() as u64;
    Ok((0..count as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut b = LinearMap::zero(d, d, ctx);
            let mut c = code;
            for col in 0..d {
                for row in 0..d {
                    b.set(row, col, grid[(c % n) as usize].clone());
                    c /= n;
                }
            }
            check_rb_lie_weight(g, &b, lambda).passed().then_some(b)
        })
        .collect())
}

/// On-disk Lie algebra. Pairs (j, i) not listed default to −[e_i, e_j].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieFile {
    pub field: FieldCtx,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

impl LieFile {
    /// Lists each bracket [e_i, e_j] with i < j, plus any nonzero diagonal
    /// or non-antisymmetric entry.
    pub fn from_lie(l: &LieData) -> Self {
        let d = l.dim();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let v = l.basis_bracket(i, j);
                let implied = j < i && *v == l.basis_bracket(j, i).scale(&-l.ctx().one());
                if !v.is_zero() && !implied {
                    let terms = v.iter().map(|(k, c)| Term { k, c: c.clone() }).collect();
                    brackets.push(BracketEntry { i, j, terms });
                }
            }
        }
        let default_labels = (0..d).all(|i| l.labels()[i] == format!("e{i}"));
        LieFile {
            field: l.ctx().clone(),
            dim: d,
            labels: (!default_labels).then(|| l.labels().to_vec()),
            brackets,
        }
    }

    pub fn to_lie(&self) -> Result<LieData> {
        let d = self.dim;
        let ctx = &self.field;
        let mut brackets: Vec<Option<Vector>> = vec![None; d * d];
        for e in &self.brackets {
            if e.i >= d || e.j >= d {
                return Err(LieError::Malformed(format!("bracket ({}, {}) out of range", e.i, e.j)));
            }
            let mut v = Vector::zero();
            for t in &e.terms {
                if t.k >= d {
                    return Err(LieError::Malformed(format!("term index {} out of range", t.k)));
                }
                v.add_term(t.k, embed(ctx, &t.c)?);
            }
            brackets[e.i * d + e.j] = Some(v);
        }
        let filled = (0..d * d)
            .map(|slot| {
                let (i, j) = (slot / d, slot % d);
                brackets[slot]
                    .clone()
                    .or_else(|| brackets[j * d + i].as_ref().map(|v| v.scale(&-ctx.one())))
                    .unwrap_or_else(Vector::zero)
            })
            .collect();
        let labels = match &self.labels {
            Some(l) if l.len() == d => l.clone(),
            Some(_) => return Err(LieError::Malformed("wrong number of labels".into())),
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        LieData::new(ctx, labels, filled)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    #[test]
    fn standard_algebras() {
        assert!(check_lie(&LieData::abelian(3, &q())).passed());
        assert!(check_lie(&LieData::sl2(&q())).passed());
        assert!(check_lie(&LieData::affine_line(&q())).passed());
        let sl2 = LieData::sl2(&q());
        assert_eq!(sl2.bracket(&sl2.basis(1), &sl2.basis(0)), sl2.basis(0).scale(&q().from_int(2)));
    }

    #[test]
    fn perturbed_constant_fails_jacobi() {
        let mut sl2 = LieData::sl2(&q());
        // [e, f] = h + e, kept antisymmetric
        let v = sl2.basis(1).add(&sl2.basis(0));
        sl2.set_bracket(0, 2, v.clone());
        sl2.set_bracket(2, 0, v.scale(&-q().one()));
        let report = check_lie(&sl2);
        assert_eq!(report.failed_identity.as_deref(), Some("jacobi"));
        assert_eq!(report.witness.unwrap().indices.len(), 3);
    }

    #[test]
    fn zero_and_minus_lambda_identity() {
        let sl2 = LieData::sl2(&q());
        for l in [1, -1, 2, 0] {
            let lambda = q().from_int(l);
            assert!(check_rb_lie_weight(&sl2, &LinearMap::zero(3, 3, &q()), &lambda).passed());
            let b = LinearMap::identity(3, &q()).scale(&-&lambda);
            assert!(check_rb_lie_weight(&sl2, &b, &lambda).passed());
            let ad = DerivationAction::adjoint(&sl2);
            assert!(check_relative_rb_lie(&sl2, &sl2, &ad, &b, &lambda).unwrap().passed());
        }
    }

    #[test]
    fn invalid_action_is_an_error() {
        let sl2 = LieData::sl2(&q());
        let bad = DerivationAction::new(vec![LinearMap::identity(3, &q()); 3]);
        let b = LinearMap::zero(3, 3, &q());
        assert!(matches!(
            check_relative_rb_lie(&sl2, &sl2, &bad, &b, &q().one()),
            Err(LieError::InvalidAction(_))
        ));
    }

    #[test]
    fn grid_search_hits_reverify() {
        let l = LieData::affine_line(&q());
        let grid: Vec<Scalar> = [0, 1, -1].iter().map(|&i| q().from_int(i)).collect();
        let hits = rb_lie_grid_search(&l, &q().zero(), &grid, DEFAULT_GRID_CAP).unwrap();
        assert!(hits.contains(&LinearMap::zero(2, 2, &q())));
        // B(x) = 0, B(y) = x has image span(x)
        let mut p = LinearMap::zero(2, 2, &q());
        p.set(0, 1, q().one());
        assert!(hits.contains(&p));
        let mut fixes_x = LinearMap::zero(2, 2, &q());
        fixes_x.set(0, 0, q().one());
        assert!(!hits.contains(&fixes_x));
        for b in &hits {
            // [Bu, Bv] = B([Bu, v] − [Bv, u]) on every pair, written out
            for (u, v) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let (eu, ev) = (l.basis(u), l.basis(v));
                let (bu, bv) = (b.apply(&eu), b.apply(&ev));
                let lhs = l.bracket(&bu, &bv);
                let rhs = b.apply(&l.bracket(&bu, &ev).sub(&l.bracket(&bv, &eu)));
                assert_eq!(lhs, rhs);
            }
        }
        assert!(matches!(
            rb_lie_grid_search(&LieData::sl2(&q()), &q().one(), &grid, 10),
            Err(LieError::TooLarge { .. })
        ));
    }

    #[test]
    fn file_roundtrip() {
        for l in [LieData::sl2(&q()), LieData::abelian(2, &q()), LieData::affine_line(&q())] {
            let text = serde_json::to_string(&LieFile::from_lie(&l)).unwrap();
            let back: LieFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_lie().unwrap(), l);
        }
    }
}
