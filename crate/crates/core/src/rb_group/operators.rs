use std::collections::BTreeSet;

use crate::constructions::group_algebra;
use crate::hopf_core::{HopfData, LinearMap, Vector};
use crate::report::{Suite, VerificationReport, Witness};
use crate::scalars::FieldCtx;

use super::{BinaryOp, GroupAction, GroupError, GroupMap, GroupTable, Result};

/// The argument of B on the right-hand side of the weight-`w` identity,
/// as a function of g, b = B(g) and h.
///
/// Weight 1: g b h b⁻¹. Weight −1: b h b⁻¹ g. Other weights λ:
/// (g^λ b h^λ b⁻¹)^μ with λμ ≡ 1 modulo the exponent of G.
#[derive(Debug, Clone, Copy)]
pub enum RbShape {
    Plus,
    Minus,
    Lambda { lambda: i64, mu: i64 },
}

impl RbShape {
    pub fn for_weight(g: &GroupTable, weight: i64) -> Result<Self> {
        match weight {
            1 => Ok(RbShape::Plus),
            -1 => Ok(RbShape::Minus),
            lambda => Ok(RbShape::Lambda {
                lambda,
                mu: inverse_power(g, lambda)?,
            }),
        }
    }

    pub fn argument(&self, g: &GroupTable, x: usize, b: usize, h: usize) -> usize {
        match *self {
            RbShape::Plus => g.product(&[x, b, h, g.inv(b)]),
            RbShape::Minus => g.product(&[b, h, g.inv(b), x]),
            RbShape::Lambda { lambda, mu } => {
                let inner = g.product(&[g.pow(x, lambda), b, g.pow(h, lambda), g.inv(b)]);
                g.pow(inner, mu)
            }
        }
    }
}

/// μ with λμ ≡ 1 modulo exp(G).
pub fn inverse_power(g: &GroupTable, lambda: i64) -> Result<i64> {
    let exponent = g.exponent();
    let e = exponent as i64;
    let l = lambda.rem_euclid(e);
    let not_invertible = GroupError::NotInvertible { lambda, exponent };
    if lambda == 0 {
        return Err(not_invertible);
    }
    if e == 1 {
        return Ok(1);
    }
    (1..e).find(|&m| (l * m) % e == 1).ok_or(not_invertible)
}

fn rb_identity_report(name: &str, identity: &str, g: &GroupTable, b: &GroupMap, shape: RbShape) -> VerificationReport {
    let n = g.order();
    let mut suite = Suite::new(name, false);
    suite.tuples(identity, &[n, n], |i| {
        let (x, y) = (i[0], i[1]);
        let lhs = g.mul(b.apply(x), b.apply(y));
        let rhs = b.apply(shape.argument(g, x, b.apply(x), y));
        (lhs != rhs).then(|| Witness::at(i).with_detail(format!("lhs = {}, rhs = {}", g.label(lhs), g.label(rhs))))
    });
    suite.finish()
}

/// B(g)B(h) = B(gB(g)hB(g)⁻¹) for weight 1, B(g)B(h) = B(B(g)hB(g)⁻¹g)
/// for weight −1, on all pairs.
pub fn check_rb(g: &GroupTable, b: &GroupMap, weight: i64) -> Result<VerificationReport> {
    b.validate(g, g)?;
    let (shape, identity) = match weight {
        1 => (RbShape::Plus, "rb-weight-1"),
        -1 => (RbShape::Minus, "rb-weight-minus-1"),
        w => return Err(GroupError::BadWeight(w)),
    };
    Ok(rb_identity_report("rota-baxter", identity, g, b, shape))
}

/// C(a) = B(a⁻¹).
pub fn weight_flip(b: &GroupMap, g: &GroupTable) -> GroupMap {
    GroupMap((0..g.order()).map(|a| b.apply(g.inv(a))).collect())
}

fn require(report: VerificationReport) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(GroupError::Precondition(Box::new(report)))
    }
}

/// The elementary consequences of the weight-1 identity, plus the subgroup
/// property of ker B and Im B.
pub fn lemma_checks(g: &GroupTable, b: &GroupMap) -> Result<VerificationReport> {
    require(check_rb(g, b, 1)?)?;
    let n = g.order();
    let e = g.identity();
    let bb = |x: usize| b.apply(x);
    let differ = |i: &[usize], l: usize, r: usize| (l != r).then(|| Witness::at(i).with_detail(format!("{l} != {r}")));
    let mut suite = Suite::new("rb-lemmas", true);
    suite.tuples("unit: B(e) = e", &[], |i| differ(i, bb(e), e));
    suite.tuples("inverse: B(g)B(g^-1) = B([g^-1, B(g)^-1])", &[n], |i| {
        let x = i[0];
        let lhs = g.mul(bb(x), bb(g.inv(x)));
        let rhs = bb(g.commutator(g.inv(x), g.inv(bb(x))));
        differ(i, lhs, rhs)
    });
    suite.tuples("square: B(g)B(B(g)) = B(gB(g))", &[n], |i| {
        let x = i[0];
        differ(i, g.mul(bb(x), bb(bb(x))), bb(g.mul(x, bb(x))))
    });
    suite.tuples("kernel: B(g) = e implies B(gh) = B(h)", &[n, n], |i| {
        let (x, y) = (i[0], i[1]);
        if bb(x) != e {
            return None;
        }
        differ(i, bb(g.mul(x, y)), bb(y))
    });
    suite.tuples("inverse-image: B(g)^-1 = B(B(g)^-1 g^-1 B(g))", &[n], |i| {
        let x = i[0];
        let bx = bb(x);
        differ(i, g.inv(bx), bb(g.product(&[g.inv(bx), g.inv(x), bx])))
    });
    suite.tuples("kernel-subgroup", &[], |i| {
        (!g.is_subgroup(&b.kernel(g))).then(|| Witness::at(i))
    });
    suite.tuples("image-subgroup", &[], |i| (!g.is_subgroup(&b.image())).then(|| Witness::at(i)));
    Ok(suite.finish())
}

/// The derived operation g∗h = gB(g)hB(g)⁻¹, verified to be a group on
/// which B is again a Rota–Baxter operator and a homomorphism to (G,·).
pub fn derived_group(g: &GroupTable, b: &GroupMap) -> Result<(GroupTable, VerificationReport)> {
    require(check_rb(g, b, 1)?)?;
    let star = BinaryOp::from_fn(g.order(), |x, y| RbShape::Plus.argument(g, x, b.apply(x), y));
    let mut suite = Suite::new("derived-group", true);
    suite.absorb("", star.check_group());
    let Ok(derived) = star.to_group(&format!("{}_B", g.name())) else {
        return Err(GroupError::Precondition(Box::new(suite.finish())));
    };
    suite.absorb("on-derived-", check_rb(&derived, b, 1)?);
    let n = g.order();
    suite.tuples("homomorphism: B(g*h) = B(g)B(h)", &[n, n], |i| {
        let lhs = b.apply(derived.mul(i[0], i[1]));
        let rhs = g.mul(b.apply(i[0]), b.apply(i[1]));
        (lhs != rhs).then(|| Witness::at(i))
    });
    Ok((derived, suite.finish()))
}

/// B(h₁)B(h₂) = B(h₁Ψ_{B(h₁)}(h₂)) for B: H → G.
pub fn relative_rb_check(h: &GroupTable, g: &GroupTable, psi: &GroupAction, b: &GroupMap) -> Result<VerificationReport> {
    psi.require_valid(g, h)?;
    b.validate(h, g)?;
    let n = h.order();
    let mut suite = Suite::new("relative-rota-baxter", false);
    suite.tuples("relative-rb", &[n, n], |i| {
        let (x, y) = (i[0], i[1]);
        let lhs = g.mul(b.apply(x), b.apply(y));
        let rhs = b.apply(h.mul(x, psi.apply(b.apply(x), y)));
        (lhs != rhs).then(|| Witness::at(i).with_detail(format!("lhs = {}, rhs = {}", g.label(lhs), g.label(rhs))))
    });
    Ok(suite.finish())
}

/// H ⋊_Ψ G with (h₁,g₁)(h₂,g₂) = (h₁Ψ_{g₁}(h₂), g₁g₂); the pair (h, g)
/// has index `h·|G| + g`.
pub fn semidirect(h: &GroupTable, g: &GroupTable, psi: &GroupAction) -> Result<GroupTable> {
    psi.require_valid(g, h)?;
    let ng = g.order();
    let op = BinaryOp::from_fn(h.order() * ng, |x, y| {
        let (h1, g1) = (x / ng, x % ng);
        let (h2, g2) = (y / ng, y % ng);
        h.mul(h1, psi.apply(g1, h2)) * ng + g.mul(g1, g2)
    });
    op.to_group(&format!("{}:{}", h.name(), g.name()))
}

/// Outcome of the graph criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCheck {
    pub is_subgroup: bool,
    /// A pair of H-elements whose graph points multiply (or invert) outside the graph.
    pub witness: Option<(usize, usize)>,
}

/// Whether {(h, B(h))} is a subgroup of H ⋊_Ψ G, decided inside the
/// semidirect product table.
pub fn graph_is_subgroup(h: &GroupTable, g: &GroupTable, psi: &GroupAction, b: &GroupMap) -> Result<GraphCheck> {
    b.validate(h, g)?;
    let sd = semidirect(h, g, psi)?;
    let ng = g.order();
    let point = |x: usize| x * ng + b.apply(x);
    let graph: BTreeSet<usize> = (0..h.order()).map(point).collect();
    for x in 0..h.order() {
        if !graph.contains(&sd.inv(point(x))) {
            return Ok(GraphCheck {
                is_subgroup: false,
                witness: Some((x, x)),
            });
        }
        for y in 0..h.order() {
            if !graph.contains(&sd.mul(point(x), point(y))) {
                return Ok(GraphCheck {
                    is_subgroup: false,
                    witness: Some((x, y)),
                });
            }
        }
    }
    Ok(GraphCheck {
        is_subgroup: graph.contains(&sd.identity()),
        witness: None,
    })
}

/// a∗b = f⁻¹(f(a)f(b)).
pub fn transport_group(g: &GroupTable, f: &[usize]) -> Result<BinaryOp> {
    let n = g.order();
    let mut finv = vec![usize::MAX; n];
    for (a, &fa) in f.iter().enumerate() {
        if fa >= n || finv[fa] != usize::MAX {
            return Err(GroupError::Malformed("transport map is not a bijection".into()));
        }
        finv[fa] = a;
    }
    if f.len() != n {
        return Err(GroupError::Malformed("transport map has the wrong length".into()));
    }
    Ok(BinaryOp::from_fn(n, |a, b| finv[g.mul(f[a], f[b])]))
}

/// g∗h = (g^λ h^λ)^μ, with a report on the group axioms, compatibility
/// with conjugation and the shared unit.
pub fn power_star(g: &GroupTable, lambda: i64) -> Result<(BinaryOp, VerificationReport)> {
    let mu = inverse_power(g, lambda)?;
    let n = g.order();
    let star = BinaryOp::from_fn(n, |a, b| g.pow(g.mul(g.pow(a, lambda), g.pow(b, lambda)), mu));
    let report = star_compatibility(g, &star);
    Ok((star, report))
}

/// (G,∗) is a group with the same unit as (G,·) and
/// g(h₁∗h₂)g⁻¹ = (gh₁g⁻¹)∗(gh₂g⁻¹).
pub fn star_compatibility(g: &GroupTable, star: &BinaryOp) -> VerificationReport {
    let n = g.order();
    let mut suite = Suite::new("star-operation", true);
    suite.absorb("star-", star.check_group());
    suite.tuples("shared-unit", &[], |i| {
        (star.find_identity() != Some(g.identity())).then(|| Witness::at(i))
    });
    suite.tuples("conjugation-compatible", &[n, n, n], |i| {
        let (x, a, b) = (i[0], i[1], i[2]);
        let lhs = g.conj(x, star.op(a, b));
        let rhs = star.op(g.conj(x, a), g.conj(x, b));
        (lhs != rhs).then(|| Witness::at(i))
    });
    suite.finish()
}

/// B(g)B(h) = B((g^λ B(g) h^λ B(g)⁻¹)^μ) with λμ ≡ 1 mod exp(G).
pub fn check_rb_lambda(g: &GroupTable, b: &GroupMap, lambda: i64) -> Result<VerificationReport> {
    b.validate(g, g)?;
    let mu = inverse_power(g, lambda)?;
    Ok(rb_identity_report(
        "rota-baxter-lambda",
        "rb-weight-lambda",
        g,
        b,
        RbShape::Lambda { lambda, mu },
    ))
}

/// g₁∘g₂ = g₁ ∗ B(g₁)g₂B(g₁)⁻¹ and the skew brace verdicts it supports.
///
/// Preconditions (∗ a group sharing the unit and compatible with
/// conjugation, and B(g₁)B(g₂) = B(g₁ ∗ B(g₁)g₂B(g₁)⁻¹)) are verified
/// first; a failure is returned as an error carrying the report.
pub fn circ_from_rrb(g: &GroupTable, star: &BinaryOp, b: &GroupMap) -> Result<(BinaryOp, VerificationReport)> {
    b.validate(g, g)?;
    let n = g.order();
    if star.size() != n {
        return Err(GroupError::Malformed("star table has the wrong size".into()));
    }
    let circ = BinaryOp::from_fn(n, |x, y| star.op(x, g.conj(b.apply(x), y)));

    let mut pre = Suite::new("circ-preconditions", false);
    pre.absorb("", star_compatibility(g, star));
    pre.tuples("rb-over-star", &[n, n], |i| {
        let lhs = g.mul(b.apply(i[0]), b.apply(i[1]));
        let rhs = b.apply(circ.op(i[0], i[1]));
        (lhs != rhs).then(|| Witness::at(i))
    });
    require(pre.finish())?;

    let dot = g.as_op();
    let mut suite = Suite::new("circ-from-rrb", true);
    suite.absorb("circ-", circ.check_group());
    let circ_is_group = !suite.failed();
    if circ_is_group {
        suite.absorb("star-circ-", skew_brace_check(star, &circ)?);
        let dot_star = skew_brace_check(&dot, star)?;
        let dot_circ = skew_brace_check(&dot, &circ)?;
        let implication = !dot_star.passed() || dot_circ.passed();
        let detail = if dot_star.passed() {
            "dot/star is a skew brace but dot/circ is not"
        } else {
            ""
        };
        suite.absorb(
            "",
            VerificationReport::single("transfer", "dot-star-brace-implies-dot-circ-brace", implication, detail),
        );
    }
    Ok((circ, suite.finish()))
}

/// a ∘ (b · c) = (a ∘ b) · a⁻¹ · (a ∘ c) on all triples.
pub fn skew_brace_check(dot: &BinaryOp, circ: &BinaryOp) -> Result<VerificationReport> {
    if dot.size() != circ.size() {
        return Err(GroupError::Malformed("operations on sets of different sizes".into()));
    }
    for (name, op) in [("dot", dot), ("circ", circ)] {
        if !op.is_group() {
            return Err(GroupError::NotAGroup(format!("{name} operation")));
        }
    }
    let n = dot.size();
    let inverse: Vec<usize> = (0..n).map(|a| dot.inverse_of(a)).collect();
    let mut suite = Suite::new("skew-brace", false);
    suite.tuples("skew-brace", &[n, n, n], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let lhs = circ.op(a, dot.op(b, c));
        let rhs = dot.op(dot.op(circ.op(a, b), inverse[a]), circ.op(a, c));
        (lhs != rhs).then(|| Witness::at(i).with_detail(format!("{lhs} != {rhs}")))
    });
    Ok(suite.finish())
}

/// 𝕜[G] together with the linear extension of B.
pub fn linearize_rb(g: &GroupTable, b: &GroupMap, ctx: &FieldCtx) -> Result<(HopfData, LinearMap)> {
    require(check_rb(g, b, 1)?)?;
    let h = group_algebra(g, ctx);
    let columns: Vec<Vector> = (0..g.order()).map(|x| Vector::basis(b.apply(x), ctx)).collect();
    let map = LinearMap::from_columns(g.order(), &columns, ctx);
    Ok((h, map))
}
