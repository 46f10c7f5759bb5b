//! Hopf automorphisms of H_{m,ζ,l,f} of the form ψ(g) = g^k,
//! ψ(x) = Σ_{q ≡ k (mod m)} c_q x^q.

use num_integer::Integer;
use rayon::prelude::*;

use crate::hopf_core::{is_algebra_morphism, is_coalgebra_morphism, HopfData, LinearMap, Vector};
use crate::report::{Suite, VerificationReport, Witness};
use crate::scalars::Scalar;

use super::family::{family, FamilyParams};
use super::qbinom::QBinomTable;
use super::{ConstructionError, Result};

/// A theorem-shaped candidate: k and the coefficients c_0, …, c_{l−1}.
#[derive(Debug, Clone, PartialEq)]
pub struct AutCandidate {
    pub k: i64,
    pub c: Vec<Scalar>,
}

/// The theorem's conditions and the direct morphism verification.
#[derive(Debug, Clone)]
pub struct AutVerdict {
    /// gcd(k, m) = 1, vanishing quantum binomials, k² ≡ 1 (mod d) and the
    /// divisibility of ψ(u)^l − f(ψ(u)) by u^l − f(u).
    pub conditions: VerificationReport,
    /// Algebra morphism, coalgebra morphism, bijectivity.
    pub morphism: VerificationReport,
    pub map: LinearMap,
}

impl AutVerdict {
    /// The authoritative answer.
    pub fn is_automorphism(&self) -> bool {
        self.morphism.passed()
    }
}

/// Polynomial remainder of `num` by the monic `den`, coefficients low to high.
fn poly_rem(num: &[Scalar], den: &[Scalar]) -> Vec<Scalar> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r.pop().expect("nonempty");
        let shift = r.len() - dd;
        for (i, c) in den[..dd].iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lead * c);
        }
    }
    r
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let ctx = a[0].field();
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn linear_map_of(params: &FamilyParams, h: &HopfData, k: i64, c: &[Scalar]) -> LinearMap {
    let ctx = h.ctx();
    let l = params.l;
    let psi_g = h.basis(params.index(k, 0));
    let psi_x = Vector::from_terms(c.iter().enumerate().map(|(q, cq)| (params.index(0, q), cq.clone())));
    let pow = |v: &Vector, n: usize| (0..n).fold(h.unit().clone(), |acc, _| h.product(&acc, v));
    let columns: Vec<Vector> = (0..h.dim())
        .map(|i| h.product(&pow(&psi_g, i / l), &pow(&psi_x, i % l)))
        .collect();
    LinearMap::from_columns(h.dim(), &columns, ctx)
}

/// Algebra morphism, coalgebra morphism and invertibility of `f` on `h`.
pub fn hopf_automorphism_report(h: &HopfData, f: &LinearMap) -> VerificationReport {
    let mut suite = Suite::new("hopf-automorphism", false);
    suite.absorb("", is_algebra_morphism(f, h, h));
    if suite.active() {
        suite.absorb("", is_coalgebra_morphism(f, h, h));
    }
    if suite.active() {
        let ok = f.inverse().is_some();
        suite.record(
            "bijective",
            1,
            (!ok).then(|| Witness::at(&[]).with_detail(format!("rank {}", f.rank()))),
        );
    }
    suite.finish()
}

fn verdict_for(params: &FamilyParams, h: &HopfData, table: &QBinomTable, k: i64, c: &[Scalar]) -> Result<AutVerdict> {
    let ctx = params.ctx();
    let (m, l) = (params.m as i64, params.l);
    if c.len() != l {
        return Err(ConstructionError::Malformed(format!("expected {l} coefficients, got {}", c.len())));
    }
    if let Some(q) = (0..l).find(|&q| !c[q].is_zero() && (q as i64 - k).rem_euclid(m) != 0) {
        return Err(ConstructionError::Malformed(format!("c_{q} ≠ 0 but {q} ≢ {k} (mod {m})")));
    }
    if let Some(x) = c.iter().find(|x| x.field() != ctx) {
        return Err(ConstructionError::Malformed(format!("coefficient {x} is not in {ctx}")));
    }
    let support: Vec<usize> = (0..l).filter(|&q| !c[q].is_zero()).collect();

    let mut cond = Suite::new("aut-theorem-conditions", true);
    cond.tuples("gcd(k, m) = 1", &[], |i| (k.gcd(&m) != 1).then(|| Witness::at(i)));
    cond.tuples("quantum binomials vanish for contributing q", &[support.len(), l], |i| {
        let (q, s) = (support[i[0]], i[1]);
        if !(0 < s && s < q) {
            return None;
        }
        let v = table.get(q, s).expect("in range");
        (!v.is_zero()).then(|| Witness::at(&[q, s]).with_values(vec![q, s], v.clone(), ctx.zero()))
    });
    cond.tuples("k^2 = 1 (mod d)", &[], |i| {
        ((k * k - 1).rem_euclid(params.d as i64) != 0).then(|| Witness::at(i))
    });
    cond.tuples("(u^l - f(u)) divides (psi(u)^l - f(psi(u)))", &[], |i| {
        let mut modulus: Vec<Scalar> = params.f.iter().map(|a| -a).collect();
        modulus.push(ctx.one());
        let psi: Vec<Scalar> = if c.is_empty() { vec![ctx.zero()] } else { c.to_vec() };
        let mut acc = vec![ctx.one()];
        let mut powers = vec![acc.clone()];
        for _ in 0..l {
            acc = poly_mul(&acc, &psi);
            powers.push(acc.clone());
        }
        let mut value = powers[l].clone();
        for (p, a) in params.f.iter().enumerate() {
            for (j, x) in powers[p].iter().enumerate() {
                value[j] = &value[j] - &(a * x);
            }
        }
        let rem = poly_rem(&value, &modulus);
        rem.iter()
            .position(|x| !x.is_zero())
            .map(|j| Witness::at(i).with_values(vec![j], rem[j].clone(), ctx.zero()))
    });

    let map = linear_map_of(params, h, k, c);
    let morphism = hopf_automorphism_report(h, &map);
    Ok(AutVerdict {
        conditions: cond.finish(),
        morphism,
        map,
    })
}

/// Checks one candidate ψ(g) = g^k, ψ(x) = Σ c_q x^q.
pub fn family_aut_check(params: &FamilyParams, k: i64, c: &[Scalar]) -> Result<AutVerdict> {
    let h = family(params, &params.ctx())?;
    let table = QBinomTable::new(&params.zeta, params.l);
    verdict_for(params, &h, &table, k, c)
}

/// Every candidate with k in 0..m and coefficients c_q from `grid` on the
/// positions q ≡ k (mod m) that passes the direct verification, in order
/// of k and then of grid positions.
pub fn family_aut_search(params: &FamilyParams, grid: &[Scalar]) -> Result<Vec<AutCandidate>> {
    let ctx = params.ctx();
    let h = family(params, &ctx)?;
    let table = QBinomTable::new(&params.zeta, params.l);
    let mut jobs = Vec::new();
    for k in 0..params.m {
        let slots: Vec<usize> = (0..params.l).filter(|q| q % params.m == k).collect();
        let count = (grid.len() as u64)
            .checked_pow(slots.len() as u32)
            .filter(|&n| n <= 10_000_000)
            .ok_or_else(|| ConstructionError::OutOfRange("candidate grid is too large".into()))?;
        jobs.extend((0..count).map(|code| (k, code, slots.clone())));
    }
    let results: Vec<Result<Option<AutCandidate>>> = jobs
        .par_iter()
        .map(|(k, code, slots)| {
            let mut c = vec![ctx.zero(); params.l];
            let mut rest = *code;
            // the first slot varies slowest
            for &q in slots.iter().rev() {
                c[q] = grid[(rest % grid.len() as u64) as usize].clone();
                rest /= grid.len() as u64;
            }
            let verdict = verdict_for(params, &h, &table, *k as i64, &c)?;
            Ok(verdict.is_automorphism().then(|| AutCandidate { k: *k as i64, c }))
        })
        .collect();
    results.into_iter().filter_map(Result::transpose).collect()
}

/// ψ ∘ ψ' as a linear map, with its automorphism report.
pub fn compose_automorphisms(
    params: &FamilyParams,
    a: &AutCandidate,
    b: &AutCandidate,
) -> Result<(LinearMap, VerificationReport)> {
    let h = family(params, &params.ctx())?;
    let fa = linear_map_of(params, &h, a.k, &a.c);
    let fb = linear_map_of(params, &h, b.k, &b.c);
    let composite = fa.compose(&fb);
    let report = hopf_automorphism_report(&h, &composite);
    Ok((composite, report))
}
