use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rbhopf::hopf_core::{HopfData, HopfFile, LinearMap};
use rbhopf::rb_group::{GroupFile, GroupMap, GroupTable, OperatorFile};
use rbhopf::rb_lie::{LieData, LieFile};
use rbhopf::scalars::{FieldCtx, Scalar};
use serde::de::DeserializeOwned;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn field(text: &str) -> Result<FieldCtx> {
    text.parse::<FieldCtx>()
        .map_err(|e| anyhow!("unknown field {text:?}: {e}"))
}

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
    text.parse().map_err(|_| anyhow!("invalid {what} in {text:?}"))
}

/// A group file, or one of `Z<n>`, `C<n>`, `S<n>`, `D<n>` (of order n),
/// `Q8`, `V4`, `F21`.
pub fn group(spec: &str) -> Result<GroupTable> {
    let path = Path::new(spec);
    if path.exists() {
        let file: GroupFile = read_json(path)?;
        return Ok(file.to_group()?);
    }
    let upper = spec.to_ascii_uppercase();
    let (head, tail) = upper.split_at(1.min(upper.len()));
    let g = match (head, tail) {
        ("Q", "8") => GroupTable::quaternion(),
        ("V", "4") => GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)).with_name("V4"),
        ("F", "21") => GroupTable::f21(),
        ("Z" | "C", n) => GroupTable::cyclic(positive(n, spec)?),
        ("S", n) => {
            let k = positive(n, spec)?;
            if k > 6 {
                bail!("S{k} is too large for the table representation");
            }
            GroupTable::symmetric(k)
        }
        ("D", n) => match positive(n, spec)? {
            k if k % 2 == 0 => GroupTable::dihedral(k / 2),
            _ => bail!("dihedral groups have even order"),
        },
        _ => bail!("{spec:?} is neither a file nor a known group name"),
    };
    Ok(g)
}

fn positive(text: &str, spec: &str) -> Result<usize> {
    match text.parse::<usize>() {
        Ok(n) if (1..=4096).contains(&n) => Ok(n),
        _ => bail!("{spec:?} is neither a file nor a known group name"),
    }
}

/// A comma separated list of group element indices, or an operator file.
pub fn group_map(g: &GroupTable, spec: &str) -> Result<(GroupMap, Option<i64>)> {
    let path = Path::new(spec);
    let (map, weight) = if path.exists() {
        let file: OperatorFile = read_json(path)?;
        (file.map, Some(file.weight))
    } else {
        let images = spec
            .split(',')
            .map(|s| {
                let s = s.trim();
                g.index_of(s).map(Ok).unwrap_or_else(|| number(s, "group element"))
            })
            .collect::<Result<Vec<usize>>>()?;
        (GroupMap::new(images), None)
    };
    map.validate(g, g)?;
    Ok((map, weight))
}

pub fn scalars(ctx: &FieldCtx, text: &str) -> Result<Vec<Scalar>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| ctx.parse_scalar(s.trim()).map_err(|e| anyhow!("{e}")))
        .collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn matrix(ctx: &FieldCtx, text: &str, dim: usize) -> Result<LinearMap> {
    let rows: Vec<Vec<Scalar>> = text.split(';').map(|r| scalars(ctx, r)).collect::<Result<_>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        bail!("the operator must be a {dim}×{dim} matrix");
    }
    LinearMap::from_rows(&rows).ok_or_else(|| anyhow!("malformed operator matrix"))
}

/// A Lie file, or one of `sl2`, `affine`, `abelian:<n>` over `ctx`.
pub fn lie(spec: &str, ctx: &FieldCtx) -> Result<LieData> {
    let path = Path::new(spec);
    if path.exists() {
        let file: LieFile = read_json(path)?;
        return Ok(file.to_lie()?);
    }
    match spec {
        "sl2" => Ok(LieData::sl2(ctx)),
        "affine" => Ok(LieData::affine_line(ctx)),
        _ => match spec.strip_prefix("abelian:") {
            Some(n) => Ok(LieData::abelian(number(n, "dimension")?, ctx)),
            None => bail!("{spec:?} is neither a file nor a known Lie algebra"),
        },
    }
}

pub fn hopf(path: &Path) -> Result<HopfData> {
    let file: HopfFile = read_json(path)?;
    Ok(file.into_hopf()?)
}
