//! Kirillov-Reshetikhin crystals `B^{r,s}` of nonexceptional affine type.
//!
//! Elements are tableaux over the classical crystal alphabet. Affine
//! operators come from promotion (type A), from the diagram involution
//! (types B, D and `A_{2n-1}^{(2)}`), or from virtual embeddings into a
//! simply-laced or twisted ambient crystal (types C, `A_{2n}^{(2)}`,
//! `D_{n+1}^{(2)}`). On top of that sit the minimal-element constructions
//! and the perfectness checks.

pub mod affine;
pub mod cartan;
pub mod error;
pub mod golden;
pub mod letters;
pub mod minimal;
pub mod perfectness;
pub mod pm_diagrams;
pub mod tableaux;

pub use cartan::{CartanType, Family, KrIndex, Weight};
pub use error::{KrError, Result};
