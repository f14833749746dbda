//! Deterministic fixtures shared by the benchmark suite.

use so3split_core::cmatrix::{c64, ComplexMatrix};
use so3split_core::so3rep::{direct_sum, spherical_rep, GeneratorTriple, SpinLabel, SpinRep};

/// Labels 5, 4, 3, 2, 2, 1 — a 40-dimensional reducible representation
/// with a repeated block and a full spread of block sizes.
pub fn forty_dim_labels() -> Vec<SpinRep> {
    [10u32, 8, 6, 4, 4, 2]
        .into_iter()
        .map(|two_l| spherical_rep(SpinLabel::from_two_l(two_l)))
        .collect()
}

/// The generator triple of the 40-dimensional direct sum.
pub fn forty_dim_triple() -> GeneratorTriple {
    let (gens, _) = direct_sum(&forty_dim_labels()).expect("nonempty block list");
    gens
}

/// A dense Hermitian 40×40 matrix with a nondegenerate-ish spectrum:
/// a fixed real combination of the three direct-sum generators.
pub fn forty_dim_hermitian() -> ComplexMatrix {
    let gens = forty_dim_triple();
    gens.lx
        .scale(c64(1.0, 0.0))
        .add(&gens.ly.scale(c64(0.5, 0.0)))
        .and_then(|m| m.add(&gens.lz.scale(c64(0.25, 0.0))))
        .expect("same dims")
}
