//! Exact computational model of the generalised Kac–Paljutkin algebras
//! `H_{n,m}`.
//!
//! `H_{n,m}` is realised as the group algebra of the generalised symmetric
//! group `Z_n ≀ S_m` over the cyclotomic field `Q(ζ_{2n})`. On top of that
//! realisation the crate builds
//!
//! - the distinguished elements `x_i`, `s_l`, `y_l`, `z_l` and the
//!   Artin–Wedderburn idempotents `Λ_λ` of the abelian part ([`algebra`]),
//! - the idempotents `e_β` attached to `[n]`-labelled partitions and the full
//!   table of irreducible representations ([`classifier`]),
//! - the coalgebra and antipode of `H_{n,m}` together with axiom checks
//!   ([`hopf`]).
//!
//! Every scalar is an exact element of `Q(ζ_{2n})`; there is no floating point
//! anywhere, so every check is a decisive identity rather than a tolerance.

pub mod algebra;
pub mod classifier;
pub mod cyclotomic;
pub mod error;
pub mod hopf;
pub mod partitions;
pub mod report;
pub mod wreath;

pub use algebra::{AlgebraElement, Caps, CycMatrix, GroupAlgebra};
pub use classifier::{
    enumerate_labelled_partitions, irrep_dimension, irrep_table, labelled_partition_count,
    lambda_from_beta, IrrepRecord, IrrepTable, LabelledPartition, TableOptions,
};
pub use cyclotomic::{CycNumber, Rational};
pub use error::{Error, Result};
pub use hopf::{CocommutativityWitness, HopfReport, HopfStructure, TensorElement};
pub use partitions::{Partition, SymFormalSum, Tableau};
pub use report::{CheckOutcome, CheckReport, Counterexample, Status};
pub use wreath::{conjugacy_class_count, GroupIndex, Perm, WreathElement, WreathGroup};
