//! Invariants of finitely presented groups.
//!
//! The crate computes the Betti number (rank of the free part of the
//! abelianization) of any finite group presentation via exact Smith normal
//! form, evaluates co-rank / Betti number / rank on a structured class of
//! groups built from free abelian, finite abelian and free atoms, and
//! constructs an explicit witness group for any admissible
//! (corank, betti, rank) triple.
//!
//! Modules:
//! - [`presentation`]: words, presentations, a text grammar, and free /
//!   direct product constructors.
//! - [`linalg`]: exact big-integer matrices and Smith normal form with
//!   unimodular transforms.
//! - [`abelian`]: relation matrices and abelianization invariants.
//! - [`calculus`]: expression trees over the structured group class with
//!   rule-based invariants.
//! - [`realize`]: witness construction for prescribed invariant triples.
//! - [`oracle`]: independent Betti verification by homomorphism counting.
//! - [`report`]: machine-readable JSON reports for the CLI and bindings.

pub mod abelian;
pub mod calculus;
pub mod linalg;
pub mod oracle;
pub mod presentation;
pub mod realize;
pub mod report;

pub use abelian::{abelianize, relation_matrix, AbelianInvariants};
pub use calculus::{GroupExpr, InvariantTriple};
pub use linalg::{int_rank, snf, IntMatrix, SnfResult};
pub use oracle::{betti_oracle, count_homs, HomCount};
pub use presentation::{Presentation, Word};
pub use realize::TripleRequest;
