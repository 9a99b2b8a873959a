//! Exact Terracini defects and Terracini loci for sets of double points on
//! Segre embeddings of multiprojective spaces.
//!
//! All ranks are computed over the rationals by fraction-free elimination
//! and cross-checked modulo primes.

pub mod error;
pub mod linalg;
pub mod locus;
pub mod rng;
pub mod schemes;
pub mod segre;
pub mod space;

pub use error::{Error, Result};
pub use linalg::IntMatrix;
pub use locus::{membership, MembershipReport, PatternTag};
pub use schemes::{CoordinateDivisor, Multiplicity, SchemeTerm, ZeroDimScheme};
pub use segre::{cohomology, delta, CohomologyReport, MinimalSpace};
pub use space::{MppPoint, Multidegree, MultiprojectiveSpace, PointConfiguration};
