//! Named Hopf algebras: group algebras, Sweedler's H₄, and the family
//! H_{m,ζ,l,f} generated by a group-like g and a skew-primitive x with
//!
//! ```text
//! g^m = 1,   x^l = f(x),   x g = ζ g x,
//! Δ(g) = g ⊗ g,   Δ(x) = x ⊗ 1 + g ⊗ x.
//! ```
//!
//! Taft algebras are the members with l = m, f = 0 and ζ a primitive m-th
//! root of unity.
//!
//! ```
//! use rbhopf::constructions::{family, FamilyParams};
//! use rbhopf::hopf_core::check_hopf;
//! use rbhopf::scalars::FieldCtx;
//!
//! let k = FieldCtx::cyclotomic(3).unwrap();
//! let taft = family(&FamilyParams::taft(3, &k).unwrap(), &k).unwrap();
//! assert_eq!(taft.dim(), 9);
//! assert!(check_hopf(&taft).passed());
//! ```

mod aut;
mod family;
mod qbinom;

use thiserror::Error;

use crate::hopf_core::{vector_witness, AlgebraData, CoalgebraData, HopfData, HopfError, LinearMap, Tensor, Vector};
use crate::rb_group::GroupTable;
use crate::report::{Suite, VerificationReport, Witness};
use crate::scalars::{FieldCtx, ScalarError};

pub use aut::{compose_automorphisms, family_aut_check, family_aut_search, AutCandidate, AutVerdict};
pub use family::{
    antipode_cauchy_replay, antipode_closed_form, antipode_closed_form_report, family, family_algebra, family_hypotheses, FamilyParams,
};
pub use qbinom::{cauchy_check, qbinom, qbinom_oracle, QBinomTable};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("the construction needs 2 to be invertible, but the field has characteristic 2")]
    Characteristic2,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("hypothesis {} fails", .0.failed_identity.as_deref().unwrap_or("unknown"))]
    Hypotheses(Box<VerificationReport>),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("malformed candidate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

/// 𝕜[G]: every group element is group-like and S(g) = g⁻¹.
pub fn group_algebra(g: &GroupTable, ctx: &FieldCtx) -> HopfData {
    let n = g.order();
    let mult = (0..n * n)
        .map(|k| Vector::basis(g.mul(k / n, k % n), ctx))
        .collect();
    let unit = Vector::basis(g.identity(), ctx);
    let algebra = AlgebraData::new(g.labels().to_vec(), unit, mult).expect("consistent table");
    let delta = (0..n)
        .map(|a| {
            let e = Vector::basis(a, ctx);
            Tensor::outer(&[&e, &e])
        })
        .collect();
    let coalgebra = CoalgebraData::new(delta, vec![ctx.one(); n]).expect("consistent coalgebra");
    let columns: Vec<Vector> = (0..n).map(|a| Vector::basis(g.inv(a), ctx)).collect();
    let antipode = LinearMap::from_columns(n, &columns, ctx);
    HopfData::with_cap(ctx.clone(), algebra, coalgebra, antipode, usize::MAX).expect("dimensions agree")
}

/// Sweedler's four-dimensional Hopf algebra on the basis 1, x, g, g*x.
pub fn sweedler_h4(ctx: &FieldCtx) -> Result<HopfData> {
    if ctx.characteristic() == 2 {
        return Err(ConstructionError::Characteristic2);
    }
    let one = ctx.one();
    let neg = -ctx.one();
    let e = |i: usize| Vector::basis(i, ctx);
    let (u, x, g, gx) = (0, 1, 2, 3);
    // products e_i e_j with g² = 1, x² = 0, x g = −g x
    let table: [[(usize, bool); 4]; 4] = [
        [(u, true), (x, true), (g, true), (gx, true)],
        [(x, true), (usize::MAX, true), (gx, false), (usize::MAX, true)],
        [(g, true), (gx, true), (u, true), (x, true)],
        [(gx, true), (usize::MAX, true), (x, false), (usize::MAX, true)],
    ];
    let mut mult = Vec::with_capacity(16);
    for row in table {
        for (k, positive) in row {
            mult.push(if k == usize::MAX {
                Vector::zero()
            } else {
                Vector::term(k, if positive { one.clone() } else { neg.clone() })
            });
        }
    }
    let labels = ["1", "x", "g", "g*x"].map(String::from).to_vec();
    let algebra = AlgebraData::new(labels, e(u), mult)?;

    let mut delta = vec![Tensor::zero(2); 4];
    delta[u].add_term(vec![u, u], one.clone());
    delta[g].add_term(vec![g, g], one.clone());
    delta[x].add_term(vec![x, u], one.clone());
    delta[x].add_term(vec![g, x], one.clone());
    delta[gx].add_term(vec![gx, g], one.clone());
    delta[gx].add_term(vec![u, gx], one.clone());
    let counit = vec![one.clone(), ctx.zero(), one.clone(), ctx.zero()];
    let coalgebra = CoalgebraData::new(delta, counit)?;

    // S(1) = 1, S(x) = −g x, S(g) = g, S(g x) = x
    let antipode = LinearMap::from_columns(4, &[e(u), Vector::term(gx, neg), e(g), e(x)], ctx);
    Ok(HopfData::new(ctx.clone(), algebra, coalgebra, antipode)?)
}

/// S has order 4 and S²(a) = g a g⁻¹ on every basis element of H₄.
pub fn h4_antipode_report(h: &HopfData) -> VerificationReport {
    let ctx = h.ctx();
    let d = h.dim();
    let g = h.element("g");
    let s2 = h.antipode().pow(2);
    let mut suite = Suite::new("h4-antipode", true);
    suite.tuples("S has order 4", &[], |i| {
        if !s2.pow(2).is_identity() {
            Some(Witness::at(i).with_detail("S^4 is not the identity"))
        } else if s2.is_identity() {
            Some(Witness::at(i).with_detail("S^2 is already the identity"))
        } else {
            None
        }
    });
    suite.tuples("S^2(a) = g a g^-1", &[d], |i| {
        let a = h.basis(i[0]);
        // g is an involution
        let rhs = h.product_all(&[&g, &a, &g]);
        vector_witness(i, &s2.apply(&a), &rhs, ctx)
    });
    suite.finish()
}

/// The Taft algebra of dimension m² over `ctx`, with ζ the field's
/// designated primitive m-th root of unity.
pub fn taft(m: usize, ctx: &FieldCtx) -> Result<HopfData> {
    family(&FamilyParams::taft(m, ctx)?, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf_core::check_hopf;

    #[test]
    fn group_algebras() {
        let q = FieldCtx::Rationals;
        let z2 = group_algebra(&GroupTable::cyclic(2), &q);
        assert!(z2.antipode().is_identity());
        let s3 = GroupTable::symmetric(3);
        let h = group_algebra(&s3, &q);
        assert_eq!(h.dim(), 6);
        for a in 0..6 {
            assert_eq!(h.s(&h.basis(a)), h.basis(s3.inv(a)));
            assert!(h.is_group_like(&h.basis(a)));
        }
        let k3 = FieldCtx::cyclotomic(3).unwrap();
        assert!(check_hopf(&group_algebra(&GroupTable::cyclic(3), &k3)).passed());
    }

    #[test]
    fn sweedler() {
        let h = sweedler_h4(&FieldCtx::Rationals).unwrap();
        let x = h.element("x");
        assert_eq!(h.s(&x), h.element("g*x").scale(&h.ctx().from_int(-1)));
        assert!(h.antipode().pow(4).is_identity());
        assert!(!h.antipode().pow(2).is_identity());
        assert_eq!(h.s(&h.s(&x)), x.scale(&h.ctx().from_int(-1)));
        assert!(matches!(
            sweedler_h4(&FieldCtx::prime(2).unwrap()),
            Err(ConstructionError::Characteristic2)
        ));
        assert!(check_hopf(&sweedler_h4(&FieldCtx::prime(3).unwrap()).unwrap()).passed());
        let report = h4_antipode_report(&h);
        assert!(report.passed());
        assert_eq!(report.check("S^2(a) = g a g^-1").unwrap().checked, 4);
    }

    #[test]
    fn h4_is_the_family_member() {
        let q = FieldCtx::Rationals;
        let h4 = sweedler_h4(&q).unwrap();
        let fam = family(&FamilyParams::h4(&q).unwrap(), &q).unwrap();
        assert_eq!(fam.algebra().unit(), h4.algebra().unit());
        for i in 0..4 {
            assert_eq!(fam.coalgebra().basis_delta(i), h4.coalgebra().basis_delta(i));
            for j in 0..4 {
                assert_eq!(fam.algebra().basis_product(i, j), h4.algebra().basis_product(i, j));
            }
        }
        assert_eq!(fam.coalgebra().counit_vector(), h4.coalgebra().counit_vector());
        assert_eq!(fam.antipode(), h4.antipode());
    }
}
