//! Finite groupoids and Bol-Moufang type identities.
//!
//! * [`term`] parses, prints, classifies and transforms identities.
//! * [`magma`] evaluates identities in Cayley tables and compares tables up to
//!   isomorphism and anti-isomorphism.
//! * [`enumerate`] counts the tables of a given order satisfying identities.
//! * [`catalog`] holds the 60 classical and 37 generalized identities together
//!   with their published counts.

pub mod catalog;
pub mod enumerate;
pub mod magma;
pub mod term;

pub use catalog::{CatalogEntry, Family, Filter};
pub use enumerate::{
    count_classes, count_satisfying, enumerate_satisfying, prune_search, ClassCounting,
    CountReport, Engine, FillOrder, SearchConfig,
};
pub use magma::{Action, CayleyTable, ClassMode, Permutation};
pub use term::{
    canonical_rename, classify, identities_equal, parastrophe_identity, parse_identity, parse_term,
    BolMoufangClass, Grammar, Identity, Term, Var,
};
