//! Crystals, cactus groups and their actions, tableau combinatorics, and
//! finite coboundary category data.

pub mod actions;
pub mod category;
pub mod cartan;
pub mod commutor;
pub mod crystal;
pub mod error;
pub mod groups;
pub mod perm;
pub mod tableaux;

pub use cartan::{CartanData, Weight};
pub use crystal::CrystalGraph;
pub use error::{Error, Result};
pub use perm::Permutation;
