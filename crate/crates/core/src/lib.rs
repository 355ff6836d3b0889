//! Finite group machinery for diagonal double Kodaira structures.
//!
//! The crate realizes finitely presented groups as Cayley tables, decides the
//! CCT property, enumerates prestructures and structures of type (2, n),
//! counts them through the symplectic geometry of extra-special 2-groups,
//! computes automorphism groups and orbit counts, evaluates the invariants of
//! the associated fibrations and the first homology of the covering surface.

pub mod coset;
pub mod group;
pub mod word;

pub use coset::{coset_cap_from_env, CosetError, DEFAULT_COSET_CAP};
pub use group::{realize, ElementSet, FiniteGroup, GroupError, Quotient};
pub use word::{parse_presentation, parse_word, ParseError, Presentation, Word};
pub mod catalog;
pub mod extra_special;
pub mod hom;
pub mod search;
pub mod structures;
pub mod symplectic;
pub mod automorphisms;
pub mod invariants;
pub mod homology;
pub mod verify;
