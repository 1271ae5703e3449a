pub mod catalog;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod lietype;
pub mod perm;
pub mod permgroup;
pub mod qsi;

pub use error::{Error, Result};
pub use chartab::{character_table, Character, CharacterTable};
pub use cyclotomic::Cyclotomic;
pub use perm::Permutation;
pub use permgroup::PermGroup;
