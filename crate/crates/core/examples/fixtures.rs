//! Writes the shipped fixture files into the directory given as the first
//! argument (default `fixtures`).

use std::path::PathBuf;

use rbhopf::constructions::sweedler_h4;
use rbhopf::rb_group::{GroupFile, GroupTable};
use rbhopf::rb_hopf::{exact_factorization_rrb, trivial_factorization_rrb, RrbFile, TrivialFactor};
use rbhopf::scalars::FieldCtx;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, text: String| std::fs::write(dir.join(name), text + "\n");

    let groups = [
        ("s3.json", GroupTable::symmetric(3)),
        ("z2.json", GroupTable::cyclic(2)),
        ("z3.json", GroupTable::cyclic(3)),
        ("z4.json", GroupTable::cyclic(4)),
        ("f21.json", GroupTable::f21()),
    ];
    for (name, g) in &groups {
        write(name, serde_json::to_string_pretty(&GroupFile::from_group(g))?)?;
    }

    let q = FieldCtx::rationals();
    let h4 = trivial_factorization_rrb(&sweedler_h4(&q)?, TrivialFactor::A)?;
    write("h4-rrb-exact-factorization.json", serde_json::to_string_pretty(&RrbFile::from_data(&h4))?)?;

    let s3 = GroupTable::symmetric(3);
    let at = |label: &str| s3.index_of(label).expect("label");
    let a = s3.generated(&[at("(1 2 3)")]);
    let l = s3.generated(&[at("(1 2)")]);
    let data = exact_factorization_rrb(&s3, &a, &l, &q)?;
    write("s3-rrb-exact-factorization.json", serde_json::to_string_pretty(&RrbFile::from_data(&data))?)?;
    Ok(())
}
