use crate::hopf_core::{
    antipode_convolution, vector_witness, AlgebraData, CoalgebraData, HopfData, LinearMap, Tensor, Vector,
    DEFAULT_DIM_CAP,
};
use crate::report::{Suite, VerificationReport, Witness};
use crate::scalars::{FieldCtx, Scalar};

use super::qbinom::QBinomTable;
use super::{ConstructionError, Result};

/// Parameters (m, ζ, l, f) of H_{m,ζ,l,f}, with d the multiplicative order of ζ.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    pub m: usize,
    pub zeta: Scalar,
    pub l: usize,
    /// a_0, …, a_{l−1}.
    pub f: Vec<Scalar>,
    pub d: usize,
}

impl FamilyParams {
    /// Validates ζ^m = 1 and a_p ζ^p = ζ^l a_p, which make the normal form
    /// g^α x^β well defined. Shorter coefficient lists are padded with zeros.
    pub fn new(m: usize, zeta: Scalar, l: usize, f: Vec<Scalar>) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(ConstructionError::InvalidParams("m and l must be positive".into()));
        }
        let ctx = zeta.field();
        if f.len() > l {
            return Err(ConstructionError::InvalidParams(format!(
                "f has {} coefficients but its degree must stay below l = {l}",
                f.len()
            )));
        }
        if let Some(c) = f.iter().find(|c| c.field() != ctx) {
            return Err(ConstructionError::InvalidParams(format!("coefficient {c} is not in {ctx}")));
        }
        let d = zeta
            .multiplicative_order()
            .ok_or_else(|| ConstructionError::InvalidParams(format!("ζ = {zeta} is not a root of unity")))?
            as usize;
        if m % d != 0 {
            return Err(ConstructionError::InvalidParams(format!("ζ^{m} ≠ 1 (ζ has order {d})")));
        }
        let mut f = f;
        f.resize(l, ctx.zero());
        let zl = zeta.pow(l as i64)?;
        for (p, a) in f.iter().enumerate() {
            if &(a * &zeta.pow(p as i64)?) != &(&zl * a) {
                return Err(ConstructionError::InvalidParams(format!(
                    "f(ζx) ≠ ζ^l f(x): the coefficient of x^{p} breaks it"
                )));
            }
        }
        Ok(FamilyParams { m, zeta, l, f, d })
    }

    /// The Taft algebra: l = m, f = 0, ζ the designated primitive m-th root.
    pub fn taft(m: usize, ctx: &FieldCtx) -> Result<Self> {
        FamilyParams::new(m, ctx.zeta(m as u32)?, m, Vec::new())
    }

    /// H₄ = H_{2,−1,2,0}.
    pub fn h4(ctx: &FieldCtx) -> Result<Self> {
        FamilyParams::new(2, -ctx.one(), 2, Vec::new())
    }

    pub fn ctx(&self) -> FieldCtx {
        self.zeta.field()
    }

    pub fn dim(&self) -> usize {
        self.m * self.l
    }

    /// Basis index of g^α x^β, with α taken modulo m.
    pub fn index(&self, alpha: i64, beta: usize) -> usize {
        assert!(beta < self.l);
        alpha.rem_euclid(self.m as i64) as usize * self.l + beta
    }

    pub fn label(&self, alpha: usize, beta: usize) -> String {
        format!("g^{alpha}*x^{beta}")
    }

    fn zeta_pow(&self, k: i64) -> Scalar {
        self.zeta.pow(k).expect("ζ is a unit")
    }
}

/// x^n expressed in 1, x, …, x^{l−1}, for n < 2l − 1.
fn x_powers(params: &FamilyParams) -> Vec<Vector> {
    let ctx = params.ctx();
    let l = params.l;
    let mut out: Vec<Vector> = (0..l).map(|b| Vector::basis(b, &ctx)).collect();
    for n in l..2 * l {
        // x^n = x^{n−l} f(x) = Σ a_p x^{n−l+p}, all exponents below n
        let mut v = Vector::zero();
        for (p, a) in params.f.iter().enumerate() {
            v.add_scaled(a, &out[n - l + p].clone());
        }
        out.push(v);
    }
    out
}

/// The algebra on the basis g^α x^β (α major), with products reduced by
/// x^β g^γ = ζ^{βγ} g^γ x^β, g^m = 1 and x^l = f(x).
pub fn family_algebra(params: &FamilyParams) -> Result<AlgebraData> {
    let (m, l) = (params.m, params.l);
    let dim = params.dim();
    if dim > DEFAULT_DIM_CAP {
        return Err(ConstructionError::OutOfRange(format!(
            "dimension {dim} exceeds the cap of {DEFAULT_DIM_CAP}"
        )));
    }
    let xp = x_powers(params);
    let mut mult = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let (a, b) = (i / l, i % l);
        for j in 0..dim {
            let (c, e) = (j / l, j % l);
            let coeff = params.zeta_pow((b * c) as i64);
            let alpha = (a + c) % m;
            let mut v = Vector::zero();
            for (beta, s) in xp[b + e].iter() {
                v.add_term(alpha * l + beta, &coeff * s);
            }
            mult.push(v);
        }
    }
    let labels = (0..dim).map(|i| params.label(i / l, i % l)).collect();
    Ok(AlgebraData::new(labels, Vector::basis(0, &params.ctx()), mult)?)
}

fn power_in(alg: &AlgebraData, t: &Tensor, k: usize, one: &Tensor) -> Tensor {
    (0..k).fold(one.clone(), |acc, _| alg.tensor_product(&acc, t))
}

/// Δ(x), Δ(g) and 1⊗1 in the tensor square.
fn generator_deltas(params: &FamilyParams) -> (Tensor, Tensor, Tensor) {
    let ctx = params.ctx();
    let e = |a: i64, b: usize| Vector::basis(params.index(a, b), &ctx);
    let one = Tensor::outer(&[&e(0, 0), &e(0, 0)]);
    let dg = Tensor::outer(&[&e(1, 0), &e(1, 0)]);
    let mut dx = Tensor::zero(2);
    if params.l > 1 {
        dx = Tensor::outer(&[&e(0, 1), &e(0, 0)]);
        dx.add_scaled(&ctx.one(), &Tensor::outer(&[&e(1, 0), &e(0, 1)]));
    } else {
        // l = 1 means x = f(x) = a_0 is a scalar; Δ(x) = a_0 (1⊗1 + g⊗1)
        // is only consistent when a_0 = 0, which the hypotheses require
        let a0 = &params.f[0];
        dx.add_scaled(a0, &one);
        dx.add_scaled(a0, &dg);
    }
    (dx, dg, one)
}

/// The conditions under which Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x extend to a
/// Hopf structure, together with the direct tensor checks that decide it.
///
/// Conditions: (1) a₀ = 0; (2) m | (l − p) when a_p ≠ 0; (3) {l, q}_ζ = 0
/// for 1 < q < l; (4) {p, q}_ζ = 0 for 1 < q < p when a_p ≠ 0. Then
/// Δ(x)^l = f(Δ(x)), Δ(g)^m = 1⊗1 and Δ(x)Δ(g) = ζΔ(g)Δ(x) are computed
/// in H⊗H, and ε(x^l − f(x)) = 0.
pub fn family_hypotheses(params: &FamilyParams) -> VerificationReport {
    let ctx = params.ctx();
    let l = params.l;
    let table = QBinomTable::new(&params.zeta, l);
    let support: Vec<usize> = (0..l).filter(|&p| !params.f[p].is_zero()).collect();
    let mut suite = Suite::new("family-hypotheses", true);

    suite.tuples("condition-1: a_0 = 0", &[], |i| {
        (!params.f[0].is_zero()).then(|| Witness::at(i).with_values(vec![0], params.f[0].clone(), ctx.zero()))
    });
    suite.tuples("condition-2: m | (l - p) for a_p != 0", &[support.len()], |i| {
        let p = support[i[0]];
        ((l as i64 - p as i64).rem_euclid(params.m as i64) != 0).then(|| Witness::at(&[p]))
    });
    suite.tuples("condition-3: {l choose q} = 0 for 1 < q < l", &[l], |i| {
        let q = i[0];
        let c = table.get(l, q).expect("in range");
        (q > 1 && !c.is_zero()).then(|| Witness::at(&[q]).with_values(vec![l, q], c.clone(), ctx.zero()))
    });
    suite.tuples("condition-4: {p choose q} = 0 for 1 < q < p, a_p != 0", &[support.len(), l], |i| {
        let (p, q) = (support[i[0]], i[1]);
        if !(1 < q && q < p) {
            return None;
        }
        let c = table.get(p, q).expect("in range");
        (!c.is_zero()).then(|| Witness::at(&[p, q]).with_values(vec![p, q], c.clone(), ctx.zero()))
    });

    match family_algebra(params) {
        Err(e) => {
            suite.record("algebra", 1, Some(Witness::at(&[]).with_detail(e.to_string())));
        }
        Ok(alg) => {
            let (dx, dg, one) = generator_deltas(params);
            let tensor_witness = |i: &[usize], lhs: &Tensor, rhs: &Tensor| {
                lhs.first_difference(rhs, &ctx)
                    .map(|(pos, a, b)| Witness::at(i).with_values(pos, a, b))
            };
            suite.tuples("delta-relation: Delta(x)^l = f(Delta(x))", &[], |i| {
                let lhs = power_in(&alg, &dx, l, &one);
                let mut rhs = Tensor::zero(2);
                for (p, a) in params.f.iter().enumerate() {
                    if !a.is_zero() {
                        rhs.add_scaled(a, &power_in(&alg, &dx, p, &one));
                    }
                }
                tensor_witness(i, &lhs, &rhs)
            });
            suite.tuples("delta-group-relation: Delta(g)^m = 1", &[], |i| {
                tensor_witness(i, &power_in(&alg, &dg, params.m, &one), &one)
            });
            suite.tuples("delta-commutation: Delta(x)Delta(g) = zeta Delta(g)Delta(x)", &[], |i| {
                let lhs = alg.tensor_product(&dx, &dg);
                let mut rhs = Tensor::zero(2);
                rhs.add_scaled(&params.zeta, &alg.tensor_product(&dg, &dx));
                tensor_witness(i, &lhs, &rhs)
            });
        }
    }
    suite.tuples("counit-relation: eps(x^l - f(x)) = 0", &[], |i| {
        // ε(x) = 0, so ε(x^l) = 0 and ε(f(x)) = a_0
        let lhs = if l == 0 { ctx.one() } else { ctx.zero() };
        let rhs = params.f[0].clone();
        (lhs != rhs).then(|| Witness::at(i).with_values(Vec::new(), lhs, rhs))
    });
    suite.finish()
}

/// H_{m,ζ,l,f} with Δ built multiplicatively from the generators and S
/// as the antihomomorphism with S(g) = g⁻¹, S(x) = −g⁻¹x.
pub fn family(params: &FamilyParams, ctx: &FieldCtx) -> Result<HopfData> {
    if params.ctx() != *ctx {
        return Err(ConstructionError::InvalidParams(format!(
            "parameters live in {} but the requested field is {ctx}",
            params.ctx()
        )));
    }
    let report = family_hypotheses(params);
    if !report.passed() {
        return Err(ConstructionError::Hypotheses(Box::new(report)));
    }
    let alg = family_algebra(params)?;
    let (m, l) = (params.m, params.l);
    let dim = params.dim();
    let (dx, dg, one) = generator_deltas(params);

    let dg_pows: Vec<Tensor> = std::iter::successors(Some(one.clone()), |t| Some(alg.tensor_product(t, &dg)))
        .take(m)
        .collect();
    let dx_pows: Vec<Tensor> = std::iter::successors(Some(one.clone()), |t| Some(alg.tensor_product(t, &dx)))
        .take(l)
        .collect();
    let delta = (0..dim)
        .map(|i| alg.tensor_product(&dg_pows[i / l], &dx_pows[i % l]))
        .collect();
    let counit = (0..dim)
        .map(|i| if i % l == 0 { ctx.one() } else { ctx.zero() })
        .collect();
    let coalgebra = CoalgebraData::new(delta, counit)?;

    // S(g^α x^β) = S(x)^β S(g)^α
    let e = |a: i64, b: usize| Vector::basis(params.index(a, b), ctx);
    let s_g = e(-1, 0);
    let s_x = if l > 1 { e(-1, 1).scale(&-ctx.one()) } else { Vector::zero() };
    let pow = |v: &Vector, k: usize| (0..k).fold(e(0, 0), |acc, _| alg.product(&acc, v));
    let columns: Vec<Vector> = (0..dim)
        .map(|i| alg.product(&pow(&s_x, i % l), &pow(&s_g, i / l)))
        .collect();
    let antipode = LinearMap::from_columns(dim, &columns, ctx);
    Ok(HopfData::new(ctx.clone(), alg, coalgebra, antipode)?)
}

/// (−1)^q ζ^{−pq−q(q−1)/2} and the index of g^{−p−q} x^q, the value of the
/// antipode on g^p x^q.
pub fn antipode_closed_form(params: &FamilyParams, p: usize, q: usize) -> Result<(Scalar, usize)> {
    if p >= params.m || q >= params.l {
        return Err(ConstructionError::OutOfRange(format!(
            "(p, q) = ({p}, {q}) outside 0..{} × 0..{}",
            params.m, params.l
        )));
    }
    let (p, q) = (p as i64, q as i64);
    let sign = if q % 2 == 0 { params.ctx().one() } else { -params.ctx().one() };
    let coeff = &sign * &params.zeta_pow(-p * q - q * (q - 1) / 2);
    Ok((coeff, params.index(-p - q, q as usize)))
}

/// Compares the constructed antipode with [`antipode_closed_form`] on
/// every basis element.
pub fn antipode_closed_form_report(params: &FamilyParams, h: &HopfData) -> Result<VerificationReport> {
    let mut expected = Vec::with_capacity(params.dim());
    for p in 0..params.m {
        for q in 0..params.l {
            let (c, k) = antipode_closed_form(params, p, q)?;
            expected.push((params.index(p as i64, q), h.basis(k).scale(&c)));
        }
    }
    let mut suite = Suite::new("antipode-closed-form", false);
    suite.tuples("S(g^p x^q) closed form", &[expected.len()], |i| {
        let (a, rhs) = &expected[i[0]];
        vector_witness(&[*a], &h.s(&h.basis(*a)), rhs, h.ctx())
    });
    Ok(suite.finish())
}

/// Replays the vanishing of both antipode convolutions on every g^p x^q
/// with q ≥ 1.
///
/// The left convolution equals c_L · g^{−q} x^q and the right one equals
/// c_R · x^q, where
///
/// ```text
/// c_L = Σ_s {q,s} (−1)^s ζ^{−(q−s)s − s(s−1)/2}
/// c_R = ζ^{−pq} Σ_s {q,s} (−1)^{q−s} ζ^{−(q−s)(q−s−1)/2 − s(q−s)}
/// ```
///
/// By the Cauchy binomial theorem both sums equal ∏_{t<q}(1 − ζ^{t+1−q})
/// (times ζ^{−pq} on the right), which vanishes through its t = q−1 factor.
/// The checker evaluates the sums, the products, and the convolutions
/// computed from the constructed structure constants.
pub fn antipode_cauchy_replay(params: &FamilyParams, h: &HopfData) -> VerificationReport {
    let ctx = params.ctx();
    let (m, l) = (params.m, params.l);
    let table = QBinomTable::new(&params.zeta, l);
    let z = |k: i64| params.zeta_pow(k);
    let sign = |k: i64| if k % 2 == 0 { ctx.one() } else { -ctx.one() };
    let product = |q: i64| (0..q).fold(ctx.one(), |acc, t| &acc * &(&ctx.one() - &z(t + 1 - q)));
    let left_sum = |q: i64| {
        (0..=q).fold(ctx.zero(), |acc, s| {
            let c = table.get(q as usize, s as usize).expect("in range");
            &acc + &(&(c * &sign(s)) * &z(-(q - s) * s - s * (s - 1) / 2))
        })
    };
    let right_sum = |p: i64, q: i64| {
        let inner = (0..=q).fold(ctx.zero(), |acc, s| {
            let c = table.get(q as usize, s as usize).expect("in range");
            let r = q - s;
            &acc + &(&(c * &sign(r)) * &z(-r * (r - 1) / 2 - s * r))
        });
        &z(-p * q) * &inner
    };
    let vector_witness = |i: &[usize], lhs: &Vector, rhs: &Vector| {
        lhs.first_difference(rhs, &ctx)
            .map(|(pos, a, b)| Witness::at(i).with_values(vec![pos], a, b))
    };
    let scalar_witness = |i: &[usize], a: Scalar, b: Scalar| (a != b).then(|| Witness::at(i).with_values(Vec::new(), a, b));

    let mut suite = Suite::new("antipode-cauchy-replay", true);
    let qs = l.saturating_sub(1);
    suite.tuples("left-sum-equals-product", &[qs], |i| {
        let q = i[0] as i64 + 1;
        scalar_witness(i, left_sum(q), product(q))
    });
    suite.tuples("product-vanishes", &[qs], |i| {
        let q = i[0] as i64 + 1;
        scalar_witness(i, product(q), ctx.zero())
    });
    suite.tuples("right-sum-equals-product", &[m, qs], |i| {
        let (p, q) = (i[0] as i64, i[1] as i64 + 1);
        scalar_witness(i, right_sum(p, q), &z(-p * q) * &product(q))
    });
    suite.tuples("left-convolution-matches-sum", &[m, qs], |i| {
        let (p, q) = (i[0] as i64, i[1] + 1);
        let a = h.basis(params.index(p, q));
        let expected = Vector::term(params.index(-(q as i64), q), left_sum(q as i64));
        vector_witness(i, &antipode_convolution(h, &a, true), &expected)
    });
    suite.tuples("right-convolution-matches-sum", &[m, qs], |i| {
        let (p, q) = (i[0] as i64, i[1] + 1);
        let a = h.basis(params.index(p, q));
        let expected = Vector::term(params.index(0, q), right_sum(p, q as i64));
        vector_witness(i, &antipode_convolution(h, &a, false), &expected)
    });
    suite.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf_core::check_hopf;

    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    #[test]
    fn taft_algebras() {
        for m in 2..=6u32 {
            let k = FieldCtx::cyclotomic(m).unwrap();
            let params = FamilyParams::taft(m as usize, &k).unwrap();
            let h = family(&params, &k).unwrap();
            assert_eq!(h.dim(), (m * m) as usize);
            assert!(check_hopf(&h).passed(), "Taft m = {m}");
        }
    }

    #[test]
    fn a4p_and_aq() {
        let k = f3();
        let a4p = FamilyParams::new(2, -k.one(), 6, vec![]).unwrap();
        assert!(family_hypotheses(&a4p).passed());
        let h = family(&a4p, &k).unwrap();
        assert_eq!(h.dim(), 12);
        assert!(check_hopf(&h).passed());
        // q^{p-1} x² with q = 2, p = 3 is 4x² = x²
        let mut f = vec![k.zero(); 3];
        f[2] = k.from_int(4);
        let aq = FamilyParams::new(2, -k.one(), 6, f).unwrap();
        let r = family_hypotheses(&aq);
        assert!(r.passed(), "{r}");
        assert!(check_hopf(&family(&aq, &k).unwrap()).passed());
    }

    #[test]
    fn failing_condition_three() {
        let q = FieldCtx::Rationals;
        let params = FamilyParams::new(2, -q.one(), 3, vec![]).unwrap();
        let r = family_hypotheses(&params);
        assert!(r.failed_identity.as_deref().unwrap().starts_with("condition-3"));
        assert_eq!(r.witness.as_ref().unwrap().indices, vec![2]);
        assert!(!r.check("delta-relation: Delta(x)^l = f(Delta(x))").unwrap().status.eq(&crate::report::Status::Pass));
        assert!(matches!(family(&params, &q), Err(ConstructionError::Hypotheses(_))));
    }

    #[test]
    fn invalid_params() {
        let q = FieldCtx::Rationals;
        assert!(FamilyParams::new(3, -q.one(), 2, vec![]).is_err());
        assert!(FamilyParams::new(2, q.from_int(2), 2, vec![]).is_err());
        // f(ζx) = ζ^l f(x) fails for a_1 x with ζ = −1, l = 2
        assert!(FamilyParams::new(2, -q.one(), 2, vec![q.zero(), q.one()]).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let q = FieldCtx::Rationals;
        let p = FamilyParams::h4(&q).unwrap();
        assert_eq!(antipode_closed_form(&p, 0, 0).unwrap(), (q.one(), 0));
        assert_eq!(antipode_closed_form(&p, 0, 1).unwrap(), (-q.one(), p.index(1, 1)));
        assert_eq!(antipode_closed_form(&p, 1, 1).unwrap(), (q.one(), p.index(0, 1)));
        assert!(antipode_closed_form(&p, 2, 0).is_err());
    }

    #[test]
    fn closed_form_matches_matrix_and_replay_passes() {
        let k4 = FieldCtx::cyclotomic(4).unwrap();
        let k = f3();
        let cases = vec![
            (FamilyParams::taft(4, &k4).unwrap(), k4.clone()),
            (FamilyParams::new(2, -k.one(), 6, vec![]).unwrap(), k.clone()),
        ];
        for (params, ctx) in cases {
            let h = family(&params, &ctx).unwrap();
            for a in 0..params.m {
                for b in 0..params.l {
                    let (c, idx) = antipode_closed_form(&params, a, b).unwrap();
                    assert_eq!(h.antipode().column(params.index(a as i64, b)), Vector::term(idx, c));
                }
            }
            let r = antipode_cauchy_replay(&params, &h);
            assert!(r.passed(), "{r}");
            assert!(antipode_closed_form_report(&params, &h).unwrap().passed());
        }
    }

    #[test]
    fn closed_form_report_catches_a_wrong_antipode() {
        let q = FieldCtx::Rationals;
        let params = FamilyParams::h4(&q).unwrap();
        let good = family(&params, &q).unwrap();
        let wrong = HopfData::with_cap(
            q.clone(),
            good.algebra().clone(),
            good.coalgebra().clone(),
            LinearMap::identity(4, &q),
            DEFAULT_DIM_CAP,
        )
        .unwrap();
        let r = antipode_closed_form_report(&params, &wrong).unwrap();
        assert_eq!(r.witness.unwrap().indices, vec![1]);
    }
}
