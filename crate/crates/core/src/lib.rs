//! Exact spectral geometry of compact Lie groups and symmetric spaces.
//!
//! The crate is organized around three layers:
//!
//! * exact data: the ten indecomposable root systems in explicit ambient
//!   rational coordinates ([`rootsys`]), integer-lattice machinery with
//!   canonical bases and short-vector enumeration ([`lattice`]);
//! * spectral engines: closed-geodesic classes, Morse indices and leading
//!   wave-term cancellation certificates for products of symmetric factors
//!   ([`symspec`]), and the full closed-geodesic / cleanliness classification
//!   of left-invariant naturally reductive metrics on SO(3) ([`so3nat`]);
//! * floating-point oracles ([`oracle`]): Rodrigues exponentials, rigid-body
//!   geodesic flow, monodromy and conjugate-point counters used to
//!   cross-check the exact engines.
//!
//! All exact computation uses arbitrary-precision rationals; floats only
//! appear in `oracle` and in report renderings.
//!
//! ```
//! use weylspec::linalg::{RatMat, RatVec};
//! use weylspec::rat::rat;
//! use weylspec::rootsys::TypeLabel;
//! use weylspec::symspec::{enumerate_spectrum, wave_analysis, Factor, MetricSpec,
//!     SymmetricSpaceSpec};
//!
//! // SU(2) x SO(3) with metric scales (1/4, 1): the two geodesic classes of
//! // squared length 5/2 share the fixed-set dimension but their Morse
//! // indices differ by 2 mod 4, so the leading wave term cannot be certified
//! let l1 = RatVec(vec![rat(1, 2), rat(-1, 2)]);
//! let su2 = Factor::group(TypeLabel::A, 1, vec![]).unwrap();
//! let so3 = Factor::group(TypeLabel::A, 1, vec![l1]).unwrap();
//! let space = SymmetricSpaceSpec::new(0, vec![su2, so3], vec![]).unwrap();
//! let metric = MetricSpec::new(&space, RatMat::identity(0),
//!     vec![rat(1, 4), rat(1, 1)]).unwrap();
//! let report = enumerate_spectrum(&space, &metric, &rat(5, 2)).unwrap();
//! let classes = &report.classes[&rat(5, 2)];
//! assert_eq!(classes.len(), 2);
//! assert!(classes.iter().all(|c| c.dim_fix == 10));
//! let term = wave_analysis(&report).pop().unwrap();
//! assert!(!term.leading_certified_nonzero);
//! ```

pub mod lattice;
pub mod oracle;
pub mod linalg;
pub mod rat;
pub mod rootsys;
pub mod so3nat;
pub mod surd;
pub mod symspec;

pub use rat::Rat;
