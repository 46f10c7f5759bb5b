use serde::{Deserialize, Serialize};

use crate::hopf_core::{embed, embed_all, HopfData, HopfFile, LinearMap, Term, Vector};
use crate::scalars::Scalar;

use super::{ActionData, RbHopfError, RelRBHopf, Result};

/// A Hopf algebra written inline or referenced by path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HopfSource {
    Path(String),
    Inline(Box<HopfFile>),
}

/// Φ_{e_g}(e_h) = Σ c·e_k. Pairs without an entry act as zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub g: usize,
    pub h: usize,
    pub terms: Vec<Term>,
}

/// On-disk form of a [`RelRBHopf`]. `B` is row-major, `dim G` rows of
/// `dim H` entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RrbFile {
    #[serde(rename = "H")]
    pub h: HopfSource,
    #[serde(rename = "G")]
    pub g: HopfSource,
    pub phi: Vec<ActionEntry>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Scalar>>,
}

impl RrbFile {
    pub fn from_data(data: &RelRBHopf) -> Self {
        let mut phi = Vec::new();
        for g in 0..data.phi.dim_g() {
            for h in 0..data.phi.dim_h() {
                let v = data.phi.basis_image(g, h);
                if !v.is_zero() {
                    let terms = v.iter().map(|(k, c)| Term { k, c: c.clone() }).collect();
                    phi.push(ActionEntry { g, h, terms });
                }
            }
        }
        RrbFile {
            h: HopfSource::Inline(Box::new(HopfFile::from_hopf(&data.h))),
            g: HopfSource::Inline(Box::new(HopfFile::from_hopf(&data.g))),
            phi,
            b: data.b.rows(),
        }
    }

    /// Loads the data, failing on path references.
    pub fn to_data(&self) -> Result<RelRBHopf> {
        self.to_data_with(|path| Err(RbHopfError::Malformed(format!("unresolved reference {path:?}"))))
    }

    /// Loads the data, resolving path references with `resolve`.
    pub fn to_data_with(&self, mut resolve: impl FnMut(&str) -> Result<HopfData>) -> Result<RelRBHopf> {
        let mut load = |src: &HopfSource| match src {
            HopfSource::Inline(file) => Ok(file.to_hopf_with_cap(usize::MAX)?),
            HopfSource::Path(p) => resolve(p),
        };
        let h = load(&self.h)?;
        let g = load(&self.g)?;
        if g.ctx() != h.ctx() {
            return Err(RbHopfError::Malformed(format!(
                "H is over {} but G is over {}",
                h.ctx(),
                g.ctx()
            )));
        }
        let ctx = h.ctx().clone();
        let (dg, dh) = (g.dim(), h.dim());
        let mut images = vec![Vector::zero(); dg * dh];
        for e in &self.phi {
            if e.g >= dg || e.h >= dh {
                return Err(RbHopfError::Malformed(format!("action entry ({}, {}) out of range", e.g, e.h)));
            }
            for t in &e.terms {
                if t.k >= dh {
                    return Err(RbHopfError::Malformed(format!("action term index {} out of range", t.k)));
                }
                images[e.g * dh + e.h].add_term(t.k, embed(&ctx, &t.c)?);
            }
        }
        let phi = ActionData::new(dg, dh, images)?;
        if self.b.len() != dg || self.b.iter().any(|r| r.len() != dh) {
            return Err(RbHopfError::Malformed(format!("B must be a {dg}x{dh} matrix")));
        }
        let rows = self
            .b
            .iter()
            .map(|r| embed_all(&ctx, r))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let b = if dg == 0 {
            LinearMap::zero(0, dh, &ctx)
        } else {
            LinearMap::from_rows(&rows).expect("rows have equal length")
        };
        RelRBHopf::new(h, g, phi, b)
    }
}
