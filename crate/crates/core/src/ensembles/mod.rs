//! Hard-instance generators: twin ensembles over layer matchings,
//! bias-bounded Maiorana–McFarland pairs and 3-fold intersection triples.

mod certify;
mod export;
mod matching;
mod mm_pair;
mod set_triple;
mod twin;

pub use certify::certify_separation;
pub use export::{export_ensemble, read_ensemble, Sidecar};
pub use matching::{build_layer_matching, Matching};
pub use mm_pair::{bias, bias_bound, sample_mm_pair, MmFamily, MmPairSample};
pub use set_triple::{planted_triple, sample_set_triple, SetTriple, TripleMode};
pub use twin::{background, pair_values, sample_twin, twin_function, TwinFunction};
