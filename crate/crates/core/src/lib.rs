//! Exact-arithmetic toolkit for signed difference sets in finite abelian groups.
//!
//! A signed difference set is a pair of disjoint subsets `P`, `N` of a finite
//! abelian group `G` of order `v` such that the ternary element `D = P - N` of
//! the integer group ring satisfies
//!
//! ```text
//! D * D^(-1) = n + lambda * G,      n = k - lambda,  k = |P| + |N|.
//! ```
//!
//! Ordinary difference sets are the case `N = {}`, and circulant weighing
//! matrices are the cyclic case `lambda = 0`. Everything in this crate is
//! verified through the group-ring equation in exact integer arithmetic;
//! floating point appears only in the quartic Gauss-sum cross check.
//!
//! The crate is organized as:
//!
//! * [`group`]: finite abelian groups, quotients, multiplier orbits.
//! * [`groupring`]: integer group-ring convolution and the defining equation.
//! * [`sds`]: the set object, counting-identity feasibility, normalization,
//!   canonical forms, autocorrelation.
//! * [`gf`]: finite fields `GF(p^k)`, characters, power residues, Gauss sums.
//! * [`constructions`]: the known explicit families.
//! * [`search`]: multiplier computation, intersection numbers, orbit DFS,
//!   residue scans.
//! * [`mod@format`] / [`catalog`]: the JSON wire format and the JSON-lines
//!   catalog.
//! * [`cli`]: the `sds` command-line front end.
//!
//! ```
//! use sds_core::constructions;
//!
//! // squares vs nonsquares mod 7: the smallest (v, v-1, -1) set
//! let set = constructions::quadratic_residue_sds(7)?;
//! assert!(set.verify()?.ok);
//! assert_eq!(set.autocorrelation()?, vec![6, -1, -1, -1, -1, -1, -1]);
//! # Ok::<(), sds_core::Error>(())
//! ```

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod format;
pub mod gf;
pub mod group;
pub mod groupring;
pub mod sds;
pub mod search;

pub use error::{Error, Result};
pub use group::{AbelianGroup, GroupElement, QuotientData};
pub use groupring::{check_sds_equation, EquationReport, GroupRingElement};
pub use sds::{derive_params, enumerate_feasible, Feasibility, SdsParams, SignedDiffSet};
