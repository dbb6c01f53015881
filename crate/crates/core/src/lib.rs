//! Orthoscalar representations of posets that split into two one-parameter
//! parts: spectral sets, eigenvalue chains, explicit projection families,
//! numerical verification and an independent search oracle.

pub mod build;
pub mod catalog;
pub mod chain;
pub mod character;
pub mod error;
pub mod family;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poset;
pub mod solve;
pub mod spectrum;
pub mod split;
pub mod verify;

pub use catalog::{essential_catalog_match, CatalogName};
pub use chain::{
    dimension_bound, enumerate_irreducibles, lambda_zero_case, run_chain, run_degeneracy_filter, ChainContext,
    EigenChain, Side, Termination,
};
pub use character::Character;
pub use error::{Error, Result};
pub use family::ProjectionFamily;
pub use poset::{Block, ChainDecomposition, Poset, PosetClass};
pub use spectrum::{delta_of, DeltaSet, Membership};
pub use split::Split;
pub use verify::{check_all, commutant_dim, VerificationReport};
