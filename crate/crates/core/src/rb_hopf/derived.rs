use crate::hopf_core::{vector_witness, AlgebraData, HopfData, LinearMap, Vector};
use crate::report::{Suite, VerificationReport};

use super::{check_rrbo, RbHopfError, RelRBHopf, Result};

/// S_B(a) = Φ_{S_G(B(a_(1)))}(S_H(a_(2))).
pub fn derived_antipode(data: &RelRBHopf) -> LinearMap {
    let (h, g) = (&data.h, &data.g);
    let columns: Vec<Vector> = (0..h.dim())
        .map(|a| {
            let mut out = Vector::zero();
            for (k, c) in h.delta(&h.basis(a)).iter() {
                let x = g.s(&data.b.column(k[0]));
                out.add_scaled(c, &data.phi.apply(&x, &h.s(&h.basis(k[1]))));
            }
            out
        })
        .collect();
    LinearMap::from_columns(h.dim(), &columns, h.ctx())
}

/// (H, ∘, Δ_H, ε_H, S_B), refusing data that fails [`check_rrbo`].
pub fn derived_hopf(data: &RelRBHopf) -> Result<HopfData> {
    let report = check_rrbo(data);
    if !report.passed() {
        return Err(RbHopfError::Precondition(Box::new(report)));
    }
    let h = &data.h;
    let d = h.dim();
    let mult = (0..d * d)
        .map(|k| data.circle(&h.basis(k / d), &h.basis(k % d)))
        .collect();
    let algebra = AlgebraData::new(h.labels().to_vec(), h.unit().clone(), mult)?;
    Ok(HopfData::with_cap(
        h.ctx().clone(),
        algebra,
        h.coalgebra().clone(),
        derived_antipode(data),
        usize::MAX,
    )?)
}

/// Associativity and unit laws of ∘ and B(a∘b) = B(a)B(b), on all basis
/// tuples.
pub fn check_circle(data: &RelRBHopf) -> VerificationReport {
    let (h, g) = (&data.h, &data.g);
    let d = h.dim();
    let ctx = h.ctx();
    let mut suite = Suite::new("circle-product", false);
    suite.tuples("circle-associativity", &[d, d, d], |idx| {
        let (a, b, c) = (h.basis(idx[0]), h.basis(idx[1]), h.basis(idx[2]));
        let lhs = data.circle(&data.circle(&a, &b), &c);
        let rhs = data.circle(&a, &data.circle(&b, &c));
        vector_witness(idx, &lhs, &rhs, ctx)
    });
    suite.tuples("circle-unit", &[d], |idx| {
        let a = h.basis(idx[0]);
        vector_witness(idx, &data.circle(h.unit(), &a), &a, ctx)
            .or_else(|| vector_witness(idx, &data.circle(&a, h.unit()), &a, ctx))
    });
    suite.tuples("circle-morphism", &[d, d], |idx| {
        let (a, b) = (h.basis(idx[0]), h.basis(idx[1]));
        let lhs = data.b.apply(&data.circle(&a, &b));
        let rhs = g.product(&data.b.apply(&a), &data.b.apply(&b));
        vector_witness(idx, &lhs, &rhs, g.ctx())
    });
    suite.finish()
}

/// a ∘ (b*c) = (a_(1) ∘ b) * S(a_(2)) * (a_(3) ∘ c) on all basis triples.
pub fn check_hopf_brace(data: &RelRBHopf) -> VerificationReport {
    let h = &data.h;
    let d = h.dim();
    let mut suite = Suite::new("hopf-brace", false);
    suite.tuples("hopf-brace", &[d, d, d], |idx| {
        let (a, b, c) = (h.basis(idx[0]), h.basis(idx[1]), h.basis(idx[2]));
        let lhs = data.circle(&a, &h.product(&b, &c));
        let mut rhs = Vector::zero();
        for (k, coeff) in h.legs(&a, 2).iter() {
            let left = data.circle(&h.basis(k[0]), &b);
            let right = data.circle(&h.basis(k[2]), &c);
            rhs.add_scaled(coeff, &h.product_all(&[&left, &h.s(&h.basis(k[1])), &right]));
        }
        vector_witness(idx, &lhs, &rhs, h.ctx())
    });
    suite.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, sweedler_h4};
    use crate::hopf_core::check_hopf;
    use crate::rb_group::{GroupMap, GroupTable};
    use crate::rb_hopf::{adjoint_action, counit_operator, grbo};
    use crate::scalars::FieldCtx;

    #[test]
    fn counit_operator_derives_the_same_hopf_algebra() {
        let h = sweedler_h4(&FieldCtx::rationals()).unwrap();
        let data = RelRBHopf::new(h.clone(), h.clone(), adjoint_action(&h), counit_operator(&h, &h)).unwrap();
        let derived = derived_hopf(&data).unwrap();
        assert_eq!(derived, h);
    }

    #[test]
    fn inversion_on_z3_derives_z3() {
        let k = FieldCtx::rationals();
        let z3 = GroupTable::cyclic(3);
        let h = group_algebra(&z3, &k);
        let b = GroupMap::inversion(&z3);
        let columns: Vec<Vector> = (0..3).map(|x| h.basis(b.apply(x))).collect();
        let data = grbo(&h, LinearMap::from_columns(3, &columns, &k)).unwrap();
        let derived = derived_hopf(&data).unwrap();
        assert!(check_hopf(&derived).passed());
        assert_eq!(derived, h);
    }

    #[test]
    fn corrupted_operator_is_refused() {
        let k = FieldCtx::rationals();
        let h = group_algebra(&GroupTable::cyclic(2), &k);
        let mut b = LinearMap::identity(2, &k);
        b.set(0, 1, k.one());
        let data = grbo(&h, b).unwrap();
        assert!(matches!(derived_hopf(&data), Err(RbHopfError::Precondition(_))));
        let brace = check_hopf_brace(&data);
        assert!(!brace.passed());
        assert!(brace.witness.is_some());
    }
}
