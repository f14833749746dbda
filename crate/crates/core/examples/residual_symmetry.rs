//! Decompose a direct sum from its raw generators, then classify the
//! residual symmetry of the orbital Zeeman perturbation on spin-1.

use so3split_core::{
    decompose_by_weights, direct_sum, perturbed_hamiltonian, residual_symmetry,
    spherical_rep, SpinLabel,
};

fn main() -> so3split_core::Result<()> {
    // 2 ⊕ 1 ⊕ 1 ⊕ 0, then recover the blocks from the raw generators
    let blocks = [2.0, 1.0, 1.0, 0.0].map(|l| spherical_rep(SpinLabel::from_l(l).unwrap()));
    let (gens, constructed) = direct_sum(&blocks)?;
    assert_eq!(decompose_by_weights(&gens, 1e-8)?, constructed);
    println!("recovered {constructed}");

    // residual symmetry of the Zeeman perturbation on spin-1
    let rep = spherical_rep(SpinLabel::from_two_l(2));
    let h = perturbed_hamiltonian(&rep, 1.0e4)?;
    let report = residual_symmetry(&h, &rep, 1e-10)?;
    println!("residual group: {}", report.group().label());
    Ok(())
}
