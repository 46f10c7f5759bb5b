use serde::{Deserialize, Serialize};

use crate::scalars::{FieldCtx, Scalar};

use super::{AlgebraData, CoalgebraData, HopfData, HopfError, LinearMap, Result, Tensor, Vector};

/// On-disk form of a [`HopfData`].
///
/// Only nonzero products and comultiplication terms are listed. Scalars may
/// be written as plain rationals (`"1/2"`) even when the field is larger;
/// they are embedded on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfFile {
    pub field: FieldCtx,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<Scalar>,
    pub mult: Vec<ProductEntry>,
    pub delta: Vec<DeltaEntry>,
    pub counit: Vec<Scalar>,
    /// Row-major.
    pub antipode: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub k: usize,
    pub c: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaEntry {
    pub i: usize,
    pub terms: Vec<PairTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTerm {
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

/// Brings a scalar from a file into `ctx`, accepting rationals anywhere.
pub(crate) fn embed(ctx: &FieldCtx, c: &Scalar) -> Result<Scalar> {
    if c.field() == *ctx {
        return Ok(c.clone());
    }
    match c.as_rational() {
        Some(r) if matches!(c, Scalar::Rational(_)) => Ok(ctx.from_rational(&r)?),
        _ => Err(HopfError::Malformed(format!("scalar {c} does not belong to {ctx}"))),
    }
}

pub(crate) fn embed_all(ctx: &FieldCtx, cs: &[Scalar]) -> Result<Vec<Scalar>> {
    cs.iter().map(|c| embed(ctx, c)).collect()
}

impl HopfFile {
    pub fn from_hopf(h: &HopfData) -> Self {
        let d = h.dim();
        let ctx = h.ctx();
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let p = h.algebra().basis_product(i, j);
                if !p.is_zero() {
                    mult.push(ProductEntry {
                        i,
                        j,
                        terms: p.iter().map(|(k, c)| Term { k, c: c.clone() }).collect(),
                    });
                }
            }
        }
        let delta = (0..d)
            .filter_map(|i| {
                let t = h.coalgebra().basis_delta(i);
                (!t.is_zero()).then(|| DeltaEntry {
                    i,
                    terms: t
                        .iter()
                        .map(|(key, c)| PairTerm {
                            j: key[0],
                            k: key[1],
                            c: c.clone(),
                        })
                        .collect(),
                })
            })
            .collect();
        HopfFile {
            field: ctx.clone(),
            dim: d,
            labels: h.labels().to_vec(),
            unit: h.unit().to_dense(d, ctx),
            mult,
            delta,
            counit: h.coalgebra().counit_vector().to_vec(),
            antipode: h.antipode().rows(),
        }
    }

    pub fn into_hopf(self) -> Result<HopfData> {
        self.to_hopf_with_cap(super::DEFAULT_DIM_CAP)
    }

    pub fn to_hopf_with_cap(&self, cap: usize) -> Result<HopfData> {
        let d = self.dim;
        let ctx = &self.field;
        if d > cap {
            return Err(HopfError::TooLarge { dim: d, cap });
        }
        let check_len = |found: usize| {
            if found == d {
                Ok(())
            } else {
                Err(HopfError::DimensionMismatch { expected: d, found })
            }
        };
        check_len(self.labels.len())?;
        check_len(self.unit.len())?;
        check_len(self.counit.len())?;
        check_len(self.antipode.len())?;
        let in_range = |i: usize| {
            if i < d {
                Ok(i)
            } else {
                Err(HopfError::Malformed(format!("basis index {i} out of range 0..{d}")))
            }
        };

        let mut mult = vec![Vector::zero(); d * d];
        for e in &self.mult {
            let slot = in_range(e.i)? * d + in_range(e.j)?;
            for t in &e.terms {
                mult[slot].add_term(in_range(t.k)?, embed(ctx, &t.c)?);
            }
        }
        let unit = Vector::from_dense(&embed_all(ctx, &self.unit)?);
        let algebra = AlgebraData::new(self.labels.clone(), unit, mult)?;

        let mut delta = vec![Tensor::zero(2); d];
        for e in &self.delta {
            let i = in_range(e.i)?;
            for t in &e.terms {
                delta[i].add_term(vec![in_range(t.j)?, in_range(t.k)?], embed(ctx, &t.c)?);
            }
        }
        let coalgebra = CoalgebraData::new(delta, embed_all(ctx, &self.counit)?)?;

        let rows = self
            .antipode
            .iter()
            .map(|r| {
                check_len(r.len())?;
                embed_all(ctx, r)
            })
            .collect::<Result<Vec<_>>>()?;
        let antipode = if d == 0 {
            LinearMap::zero(0, 0, ctx)
        } else {
            LinearMap::from_rows(&rows).expect("rows have equal length")
        };
        HopfData::with_cap(ctx.clone(), algebra, coalgebra, antipode, cap)
    }
}

impl Serialize for HopfData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        HopfFile::from_hopf(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HopfData {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        HopfFile::deserialize(deserializer)?
            .into_hopf()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::constructions::{family, sweedler_h4, FamilyParams};
    use crate::hopf_core::{check_hopf, HopfData};
    use crate::scalars::FieldCtx;

    #[test]
    fn roundtrip_is_exact() {
        let k = FieldCtx::cyclotomic(3).unwrap();
        let taft = family(&FamilyParams::taft(3, &k).unwrap(), &k).unwrap();
        for h in [sweedler_h4(&FieldCtx::Rationals).unwrap(), taft] {
            let text = serde_json::to_string_pretty(&h).unwrap();
            let back: HopfData = serde_json::from_str(&text).unwrap();
            assert_eq!(back, h);
            assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
            assert!(check_hopf(&back).passed());
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        let h = sweedler_h4(&FieldCtx::Rationals).unwrap();
        let mut v = serde_json::to_value(&h).unwrap();
        v["mult"][0]["terms"][0]["k"] = 9.into();
        assert!(serde_json::from_value::<HopfData>(v).is_err());
        let mut v = serde_json::to_value(&h).unwrap();
        v["counit"].as_array_mut().unwrap().pop();
        assert!(serde_json::from_value::<HopfData>(v).is_err());
    }
}
