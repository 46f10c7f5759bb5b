//! Quantum binomial coefficients.
//!
//! `{p choose q}_ζ` is the coefficient of u^{p−q} v^q in (u+v)^p inside the
//! skew polynomial ring where vu = ζuv.

use crate::report::{Suite, VerificationReport, Witness};
use crate::scalars::Scalar;

use super::{ConstructionError, Result};

/// Rows `0..=max_p` of quantum binomials at a fixed ζ.
#[derive(Debug, Clone)]
pub struct QBinomTable {
    zeta: Scalar,
    rows: Vec<Vec<Scalar>>,
}

impl QBinomTable {
    /// Fills the table with {p, q} = ζ^q {p−1, q} + {p−1, q−1}.
    pub fn new(zeta: &Scalar, max_p: usize) -> Self {
        let ctx = zeta.field();
        let powers: Vec<Scalar> = std::iter::successors(Some(ctx.one()), |z| Some(z * zeta))
            .take(max_p + 1)
            .collect();
        let mut rows: Vec<Vec<Scalar>> = vec![vec![ctx.one()]];
        for p in 1..=max_p {
            let prev = &rows[p - 1];
            let row = (0..=p)
                .map(|q| {
                    let keep = prev.get(q).map(|c| &powers[q] * c).unwrap_or_else(|| ctx.zero());
                    let shift = if q > 0 { prev[q - 1].clone() } else { ctx.zero() };
                    &keep + &shift
                })
                .collect();
            rows.push(row);
        }
        QBinomTable {
            zeta: zeta.clone(),
            rows,
        }
    }

    pub fn zeta(&self) -> &Scalar {
        &self.zeta
    }

    pub fn max_p(&self) -> usize {
        self.rows.len() - 1
    }

    /// {p, q}, or None outside `0 ≤ q ≤ p ≤ max_p`.
    pub fn get(&self, p: usize, q: usize) -> Option<&Scalar> {
        self.rows.get(p).and_then(|r| r.get(q))
    }
}

/// {p choose q}_ζ.
pub fn qbinom(p: usize, q: usize, zeta: &Scalar) -> Result<Scalar> {
    if q > p {
        return Err(ConstructionError::OutOfRange(format!("q = {q} exceeds p = {p}")));
    }
    Ok(QBinomTable::new(zeta, p).get(p, q).cloned().expect("in range"))
}

/// {p choose q}_ζ by expanding (u+v)^p into all 2^p words and
/// normal-ordering each one.
///
/// Sorting a word into u^a v^b moves every v past every u that follows it,
/// and each such swap contributes a factor ζ, so the word contributes
/// ζ^(number of (v, u) pairs in order).
pub fn qbinom_oracle(p: usize, q: usize, zeta: &Scalar) -> Scalar {
    assert!(p < 31, "word expansion is exponential in p");
    let ctx = zeta.field();
    let mut total = ctx.zero();
    for word in 0u32..(1 << p) {
        if word.count_ones() as usize != q {
            continue;
        }
        // bit i set means position i holds v
        let mut vs_seen = 0i64;
        let mut swaps = 0i64;
        for i in 0..p {
            if word >> i & 1 == 1 {
                vs_seen += 1;
            } else {
                swaps += vs_seen;
            }
        }
        total = &total + &zeta.pow(swaps).expect("nonnegative power");
    }
    total
}

/// ∏_{t<q} (1 + ζ^t u) = Σ_t {q, t}_ζ ζ^{t(t−1)/2} u^t, coefficient by coefficient.
pub fn cauchy_check(q: usize, zeta: &Scalar) -> VerificationReport {
    let ctx = zeta.field();
    let mut product = vec![ctx.one()];
    for t in 0..q {
        let zt = zeta.pow(t as i64).expect("nonnegative power");
        let mut next = vec![ctx.zero(); product.len() + 1];
        for (i, c) in product.iter().enumerate() {
            next[i] = &next[i] + c;
            next[i + 1] = &next[i + 1] + &(c * &zt);
        }
        product = next;
    }
    let table = QBinomTable::new(zeta, q);
    let mut suite = Suite::new("cauchy-binomial", false);
    suite.tuples("cauchy-coefficient", &[q + 1], |i| {
        let t = i[0];
        let rhs = table.get(q, t).expect("in range") * &zeta.pow((t * t.saturating_sub(1) / 2) as i64).expect("power");
        (product[t] != rhs).then(|| Witness::at(i).with_values(vec![t], product[t].clone(), rhs))
    });
    suite.finish()
}
