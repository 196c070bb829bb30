//! Exact symbolic computation for a family of groups built from piecewise-linear
//! homeomorphisms of the unit interval.
//!
//! The library constructs, with no floating point and no unchecked overflow:
//!
//! * dyadic rationals and standard dyadic intervals ([`dyadic`]),
//! * the group of dyadic PL homeomorphisms generated by the two classical
//!   generators, acting on the dyadics ([`thompson`]),
//! * finitely supported integer matrices indexed by interior dyadics and the
//!   twisted action of the PL group on them ([`finmat`]),
//! * the semidirect-product ring combining the two ([`ring`]),
//! * 4×4 Steinberg words over that ring and their elementary-matrix images
//!   ([`steinberg`]),
//! * the induced action on quadruples of finitely supported integer vectors,
//!   with orbit classification and a canonical enumeration ([`gamma0`]),
//! * the two-copy amalgam action glued along an explicit involution
//!   ([`amalgam`]),
//! * small-scale evidence about elementary subgroups of integer matrix groups
//!   reduced mod 2: orders, congruence-style subgroups, coset trees
//!   ([`slinfty`]).
//!
//! Every verification entry point returns a [`report::Report`] so callers can
//! render machine-readable verdicts. All randomness is seeded explicitly.

pub mod amalgam;
pub mod dyadic;
pub mod error;
pub mod finmat;
pub mod gamma0;
pub mod grammar;
pub mod report;
pub mod ring;
pub mod sample;
pub mod slinfty;
pub mod steinberg;
pub mod thompson;

pub use error::Error;

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
