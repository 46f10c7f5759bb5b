use std::fmt;

use crate::scalars::{FieldCtx, Scalar};

use super::tensor::Vector;

/// Dense matrix of a linear map, stored column-major
/// (column `j` is the image of basis vector `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    domain_dim: usize,
    codomain_dim: usize,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn zero(codomain_dim: usize, domain_dim: usize, ctx: &FieldCtx) -> Self {
        LinearMap {
            domain_dim,
            codomain_dim,
            entries: vec![ctx.zero(); domain_dim * codomain_dim],
        }
    }

    pub fn identity(dim: usize, ctx: &FieldCtx) -> Self {
        let mut m = LinearMap::zero(dim, dim, ctx);
        for i in 0..dim {
            m.set(i, i, ctx.one());
        }
        m
    }

    /// Builds the map from the images of the domain basis.
    pub fn from_columns(codomain_dim: usize, columns: &[Vector], ctx: &FieldCtx) -> Self {
        let mut m = LinearMap::zero(codomain_dim, columns.len(), ctx);
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                assert!(i < codomain_dim, "column entry out of range");
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// Builds the map from a row-major table.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Option<Self> {
        let codomain_dim = rows.len();
        let domain_dim = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != domain_dim) {
            return None;
        }
        let mut entries = Vec::with_capacity(codomain_dim * domain_dim);
        for j in 0..domain_dim {
            for row in rows {
                entries.push(row[j].clone());
            }
        }
        Some(LinearMap {
            domain_dim,
            codomain_dim,
            entries,
        })
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.codomain_dim)
            .map(|i| (0..self.domain_dim).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[col * self.codomain_dim + row]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.entries[col * self.codomain_dim + row] = value;
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_terms(
            (0..self.codomain_dim).map(|i| (i, self.get(i, j).clone())),
        )
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            assert!(j < self.domain_dim, "vector index {j} outside domain of dimension {}", self.domain_dim);
            for i in 0..self.codomain_dim {
                let m = self.get(i, j);
                if !m.is_zero() {
                    out.add_term(i, c * m);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            domain_dim: self.domain_dim,
            codomain_dim: self.codomain_dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(
            (self.domain_dim, self.codomain_dim),
            (other.domain_dim, other.codomain_dim),
            "sum dimension mismatch"
        );
        LinearMap {
            domain_dim: self.domain_dim,
            codomain_dim: self.codomain_dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.domain_dim, other.codomain_dim, "composition dimension mismatch");
        let ctx = self.field();
        let columns: Vec<Vector> = (0..other.domain_dim)
            .map(|j| self.apply(&other.column(j)))
            .collect();
        LinearMap::from_columns(self.codomain_dim, &columns, &ctx)
    }

    pub fn field(&self) -> FieldCtx {
        self.entries
            .first()
            .map(Scalar::field)
            .unwrap_or(FieldCtx::Rationals)
    }

    pub fn is_square(&self) -> bool {
        self.domain_dim == self.codomain_dim
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.domain_dim).all(|j| {
                (0..self.codomain_dim).all(|i| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn rank(&self) -> usize {
        let (_, rank) = self.row_reduce(None);
        rank
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        if !self.is_square() {
            return None;
        }
        let n = self.domain_dim;
        let ctx = self.field();
        let (reduced, rank) = self.row_reduce(Some(&LinearMap::identity(n, &ctx)));
        (rank == n).then(|| reduced.expect("augmented reduction"))
    }

    pub fn pow(&self, k: u32) -> LinearMap {
        assert!(self.is_square());
        let mut acc = LinearMap::identity(self.domain_dim, &self.field());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Gauss–Jordan elimination; with `augment`, returns the transformed
    /// augment block (the inverse when the input is invertible).
    fn row_reduce(&self, augment: Option<&LinearMap>) -> (Option<LinearMap>, usize) {
        let rows = self.codomain_dim;
        let cols = self.domain_dim;
        let aug_cols = augment.map_or(0, |a| a.domain_dim);
        let mut m: Vec<Vec<Scalar>> = (0..rows)
            .map(|i| {
                let mut r: Vec<Scalar> = (0..cols).map(|j| self.get(i, j).clone()).collect();
                if let Some(a) = augment {
                    r.extend((0..aug_cols).map(|j| a.get(i, j).clone()));
                }
                r
            })
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().expect("pivot is nonzero");
            for v in m[rank].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for k in 0..cols + aug_cols {
                        let delta = &factor * &m[rank][k];
                        m[r][k] = &m[r][k] - &delta;
                    }
                }
            }
            rank += 1;
        }
        let out = augment.map(|_| {
            let block: Vec<Vec<Scalar>> = m.iter().map(|r| r[cols..].to_vec()).collect();
            LinearMap::from_rows(&block).expect("rectangular block")
        });
        (out, rank)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let k = FieldCtx::Rationals;
        let m = LinearMap::from_rows(&[
            vec![k.from_int(2), k.from_int(1)],
            vec![k.from_int(1), k.from_int(1)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).is_identity());
        let singular = LinearMap::from_rows(&[
            vec![k.from_int(1), k.from_int(2)],
            vec![k.from_int(2), k.from_int(4)],
        ])
        .unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
    }
}
