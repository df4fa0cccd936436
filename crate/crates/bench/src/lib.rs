//! Shared inputs for the criterion benches in `benches/`.

use kmk_core::{CartanDatum, Weight};

pub fn algebra(name: &str) -> CartanDatum {
    CartanDatum::named(name).expect("named algebra")
}

/// `Lambda_p` at the affine node.
pub fn basic_weight(d: &CartanDatum) -> Weight {
    d.fundamental_weight(d.affine_node().expect("affine algebra"))
}

pub fn weight(labels: &[i64]) -> Weight {
    Weight::from_labels(labels.to_vec())
}
