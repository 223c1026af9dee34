//! Exact spectra of the coefficient algebra `E_*(A)` generated by a
//! commutative algebra `A` and a partial isometry `U`, for finite
//! partial-permutation models.
//!
//! The crate computes the same object along two independent routes:
//!
//! * [`spectrum`] builds the predicted spectrum from the Gelfand-dual partial
//!   dynamical system `(M, Δ, α)` of [`dynamics`]: finite backward chains
//!   `M̂_N` whose top leaves `α(Δ)`, and infinite chains `M_∞` through the
//!   recurrent core.
//! * [`oracle`] brute-forces the atoms of `E_*(A)` directly from the matrices
//!   and reads off each character's sequence of `A`-characters.
//!
//! [`verify`] compares the two, and [`fuzz`] does so on seeded random models.
//!
//! ```
//! use chainspec::{samples, verify};
//!
//! let model = samples::truncated_shift();
//! let report = verify::verify_equality(&model).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.stats.atoms, 3);
//! ```

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod fuzz;
pub mod model;
pub mod operator;
pub mod oracle;
pub mod samples;
pub mod spectrum;
pub mod verify;

pub use dynamics::{delta_ladder, induced_system, AbstractPds, DeltaLadder};
pub use error::{Error, Result};
pub use model::{ConcreteModel, PartialInjection, Partition};
pub use spectrum::{predicted_spectrum, upper_spectrum, CharacterSeq, SpectrumDescription};
