//! Exact computations with grope trees, free Milnor groups, the Magnus
//! expansion into the square-free ring, μ̄-invariants with distinct indices
//! and link composition.

pub mod composition;
pub mod error;
pub mod grope;
pub mod link;
pub mod milnor;
pub mod random;
pub mod ring;
pub mod verify;
pub mod word;

pub use composition::{Certificate, CompositionSpec, compose, essentiality_certificate, verify_sigma, wedge_ring_element};
pub use error::{Error, Result};
pub use link::{AnyLink, LinkFile, LinkModel, MuIndex, SolidTorusLink, catalog};
pub use grope::{ClosedGropeTree, GropeTree, Side, Surface, TipPath};
pub use milnor::{MilnorElement, conjugation_action, lcs_degree, magnus, normal_form, r_inverse, r_map};
pub use ring::{Monomial, RingElement, basis_rank};
pub use word::{Alphabet, Letter, Word, WordExpr};
