//! Exact verification and enumeration for finite-dimensional Hopf algebras,
//! Rota–Baxter operators on groups, Hopf algebras and Lie algebras, and
//! the skew braces and Hopf braces they induce.
//!
//! Everything is computed exactly over ℚ, a cyclotomic field ℚ(ζₙ) or a
//! prime field 𝔽ₚ. Checkers never assume an axiom: they evaluate every
//! identity on every tuple of basis elements and return a
//! [`VerificationReport`](report::VerificationReport) whose witness is the
//! lexicographically first counterexample.
//!
//! ```
//! use rbhopf::constructions::sweedler_h4;
//! use rbhopf::hopf_core::check_hopf;
//! use rbhopf::scalars::FieldCtx;
//!
//! let h4 = sweedler_h4(&FieldCtx::rationals()).unwrap();
//! let report = check_hopf(&h4);
//! assert!(report.passed());
//! assert!(h4.antipode().pow(4).is_identity());
//! ```

pub mod constructions;
pub mod hopf_core;
pub mod rb_group;
pub mod rb_hopf;
pub mod rb_lie;
pub mod report;
pub mod scalars;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/hopf-algebras.md")]
    mod hopf_algebras {}
    #[doc = include_str!("../../../book/src/family.md")]
    mod family {}
    #[doc = include_str!("../../../book/src/group-operators.md")]
    mod group_operators {}
    #[doc = include_str!("../../../book/src/relative-hopf.md")]
    mod relative_hopf {}
    #[doc = include_str!("../../../book/src/lie.md")]
    mod lie {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
