use crate::constructions::group_algebra;
use crate::hopf_core::{opposite_hopf, tensor_witness, vector_witness, HopfData, LinearMap, Tensor, Vector};
use crate::rb_group::GroupTable;
use crate::report::{Status, Suite, VerificationReport, Witness};
use crate::scalars::FieldCtx;

use super::{adjoint_action, check_rrbo, right_adjoint_action, ActionData, RbHopfError, RelRBHopf, Result};

/// a ↦ ε(a)·1_G.
pub fn counit_operator(h: &HopfData, g: &HopfData) -> LinearMap {
    let columns: Vec<Vector> = h
        .coalgebra()
        .counit_vector()
        .iter()
        .map(|e| g.unit().scale(e))
        .collect();
    LinearMap::from_columns(g.dim(), &columns, h.ctx())
}

/// The relative operator of an exact factorization G = A·L of a finite
/// group: H = 𝕜[G], the acting Hopf algebra is 𝕜[L]^op with
/// Φ_l(h) = l⁻¹hl, and B(al) = l.
///
/// `a` and `l` are element indices of `g`. The G side uses the basis of L in
/// the order given.
pub fn exact_factorization_rrb(g: &GroupTable, a: &[usize], l: &[usize], ctx: &FieldCtx) -> Result<RelRBHopf> {
    if !g.is_subgroup(a) {
        return Err(RbHopfError::NotSubgroup("A"));
    }
    let l_group = g.subgroup("L", l).map_err(|_| RbHopfError::NotSubgroup("L"))?;
    let mut factor_of = vec![Vec::new(); g.order()];
    for (li, &y) in l.iter().enumerate() {
        for &x in a {
            factor_of[g.mul(x, y)].push(li);
        }
    }
    if let Some((x, f)) = factor_of.iter().enumerate().find(|(_, f)| f.len() != 1) {
        return Err(RbHopfError::NotExact {
            element: g.label(x).to_string(),
            count: f.len(),
        });
    }

    let h = group_algebra(g, ctx);
    let side = opposite_hopf(&group_algebra(&l_group, ctx))?;
    let phi = ActionData::from_fn(l.len(), g.order(), |li, x| {
        let y = l[li];
        Vector::basis(g.mul(g.inv(y), g.mul(x, y)), ctx)
    });
    let columns: Vec<Vector> = factor_of.iter().map(|f| Vector::basis(f[0], ctx)).collect();
    let b = LinearMap::from_columns(l.len(), &columns, ctx);
    RelRBHopf::new(h, side, phi, b)
}

/// Which factor of the exact factorization H = A·L is the ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialFactor {
    /// A = 𝕜, L = H: the acting algebra is H^op, Φ_l(h) = S(l_(1)) h l_(2)
    /// and B is the identity.
    A,
    /// A = H, L = 𝕜: the acting algebra is 𝕜 and B = ε.
    L,
}

/// The two exact factorizations every Hopf algebra has.
pub fn trivial_factorization_rrb(h: &HopfData, which: TrivialFactor) -> Result<RelRBHopf> {
    match which {
        TrivialFactor::A => {
            let side = opposite_hopf(h)?;
            let b = LinearMap::identity(h.dim(), h.ctx());
            RelRBHopf::new(h.clone(), side, right_adjoint_action(h), b)
        }
        TrivialFactor::L => {
            let side = HopfData::ground_field(h.ctx());
            let phi = ActionData::trivial(&side, h);
            let b = counit_operator(h, &side);
            RelRBHopf::new(h.clone(), side, phi, b)
        }
    }
}

/// B: H → H with the adjoint action Φ_a(b) = a_(1) b S(a_(2)).
pub fn grbo(h: &HopfData, b: LinearMap) -> Result<RelRBHopf> {
    RelRBHopf::new(h.clone(), h.clone(), adjoint_action(h), b)
}

/// The relative checks for a GRBO, the direct identity
/// B(a)B(b) = B(a_(1) B(a_(2)) b S(B(a_(3)))), and the associativity
/// condition
///
/// ```text
/// B(a_(2)) b_(1) S(B(a_(5))) ⊗ a_(1) B(a_(3)) b_(2) S(B(a_(4)))
///     = B(a_(1)) b_(1) S(B(a_(2))) ⊗ a_(3) B(a_(4)) b_(2) S(B(a_(5)))
/// ```
///
/// which holds whenever H is cocommutative.
pub fn grbo_check(h: &HopfData, b: &LinearMap) -> VerificationReport {
    let mut suite = Suite::new("group-rota-baxter", false);
    let data = match grbo(h, b.clone()) {
        Ok(data) => data,
        Err(e) => {
            suite.record("dimensions", 1, Some(Witness::at(&[]).with_detail(e.to_string())));
            return suite.finish();
        }
    };
    suite.absorb("", check_rrbo(&data));
    let d = h.dim();
    let ctx = h.ctx();
    let bs = |v: &Vector| h.s(&b.apply(v));
    suite.tuples("grbo-identity", &[d, d], |idx| {
        let (x, y) = (h.basis(idx[0]), h.basis(idx[1]));
        let lhs = h.product(&b.apply(&x), &b.apply(&y));
        let mut arg = Vector::zero();
        for (k, c) in h.legs(&x, 2).iter() {
            let (x1, x2, x3) = (h.basis(k[0]), h.basis(k[1]), h.basis(k[2]));
            arg.add_scaled(c, &h.product_all(&[&x1, &b.apply(&x2), &y, &bs(&x3)]));
        }
        vector_witness(idx, &lhs, &b.apply(&arg), ctx)
    });
    suite.tuples("grbo-associativity-condition", &[d, d], |idx| {
        let (x, y) = (h.basis(idx[0]), h.basis(idx[1]));
        let legs = h.legs(&x, 4);
        let dy = h.delta(&y);
        let mut lhs = Tensor::zero(2);
        let mut rhs = Tensor::zero(2);
        for (k, c) in legs.iter() {
            let e: Vec<Vector> = k.iter().map(|&i| h.basis(i)).collect();
            for (p, cp) in dy.iter() {
                let (y1, y2) = (h.basis(p[0]), h.basis(p[1]));
                let coeff = c * cp;
                let l1 = h.product_all(&[&b.apply(&e[1]), &y1, &bs(&e[4])]);
                let l2 = h.product_all(&[&e[0], &b.apply(&e[2]), &y2, &bs(&e[3])]);
                lhs.add_scaled(&coeff, &Tensor::outer(&[&l1, &l2]));
                let r1 = h.product_all(&[&b.apply(&e[0]), &y1, &bs(&e[1])]);
                let r2 = h.product_all(&[&e[2], &b.apply(&e[3]), &y2, &bs(&e[4])]);
                rhs.add_scaled(&coeff, &Tensor::outer(&[&r1, &r2]));
            }
        }
        tensor_witness(idx, &lhs, &rhs, ctx)
    });
    suite.finish()
}

/// B: H → H^op with Φ_a(b) = S(a_(1)) b a_(2).
pub fn hrbo(h: &HopfData, b: LinearMap) -> Result<RelRBHopf> {
    RelRBHopf::new(h.clone(), opposite_hopf(h)?, right_adjoint_action(h), b)
}

/// Verdicts for a Hopf Rota–Baxter operator.
#[derive(Debug, Clone)]
pub struct HrboReport {
    /// The third condition in its literal two-sided form.
    pub display: VerificationReport,
    /// [`check_rrbo`] on the instantiated data.
    pub rrbo: VerificationReport,
}

impl HrboReport {
    /// Whether the literal display and the compatibility condition of
    /// [`check_rrbo`] give the same verdict.
    pub fn agree(&self) -> bool {
        let cond3 = self
            .rrbo
            .check("condition-3: compatibility")
            .map(|c| c.status == Status::Pass);
        match cond3 {
            Some(ok) => ok == self.display.passed(),
            None => false,
        }
    }
}

/// Checks
///
/// ```text
/// S(B(a_(2))) b B(a_(3)) ⊗ S(B(a_(1)))
///     = S(B(a_(2))) b B(a_(3)) ⊗ S(a_(1)) a_(4) S(B(a_(5)))
/// ```
///
/// literally (products and antipode of H) and runs [`check_rrbo`] on
/// [`hrbo`]`(h, b)` in full.
pub fn hrbo_check(h: &HopfData, b: &LinearMap) -> Result<HrboReport> {
    let data = hrbo(h, b.clone())?;
    let d = h.dim();
    let ctx = h.ctx();
    let sb = |v: &Vector| h.s(&b.apply(v));
    let mut suite = Suite::new("hopf-rota-baxter-display", true);
    suite.tuples("hrbo-condition-3", &[d, d], |idx| {
        let (x, y) = (h.basis(idx[0]), h.basis(idx[1]));
        let mut lhs = Tensor::zero(2);
        for (k, c) in h.legs(&x, 2).iter() {
            let left = h.product_all(&[&sb(&h.basis(k[1])), &y, &b.apply(&h.basis(k[2]))]);
            lhs.add_scaled(c, &Tensor::outer(&[&left, &sb(&h.basis(k[0]))]));
        }
        let mut rhs = Tensor::zero(2);
        for (k, c) in h.legs(&x, 4).iter() {
            let e: Vec<Vector> = k.iter().map(|&i| h.basis(i)).collect();
            let left = h.product_all(&[&sb(&e[1]), &y, &b.apply(&e[2])]);
            let right = h.product_all(&[&h.s(&e[0]), &e[3], &sb(&e[4])]);
            rhs.add_scaled(c, &Tensor::outer(&[&left, &right]));
        }
        tensor_witness(idx, &lhs, &rhs, ctx)
    });
    Ok(HrboReport {
        display: suite.finish(),
        rrbo: super::check_rrbo_with(&data, true),
    })
}
