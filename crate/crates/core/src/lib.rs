//! Group-theoretic machinery for orbital angular momentum and the normal
//! Zeeman effect: dense complex matrices, spin-l generator construction,
//! character-based decomposition of reducible representations, residual
//! symmetry of a perturbed Hamiltonian, precession dynamics in both
//! pictures, and quantitative hydrogen level splitting.
//!
//! Internal convention: ħ = 1 everywhere except the [`zeeman`] module, which
//! restores physical units through [`zeeman::PhysicalConstants`].

pub mod cmatrix;
pub mod dynamics;
pub mod error;
pub mod repanalysis;
pub mod so3rep;
pub mod zeeman;

pub use cmatrix::{c64, Complex64, ComplexMatrix};
pub use dynamics::{
    angular_difference, eigenstate_minus, eigenstate_plus, expectation, heisenberg_closed_form,
    heisenberg_integrate, l_dot_n, schrodinger_closed_form, schrodinger_integrate, wrap_angle,
    HeisenbergTrajectory, OperatorSample, Orientation, OrientationSample, PrecessionSpec,
    SchrodingerTrajectory, SolutionMethod,
};
pub use error::{Error, Result};
pub use repanalysis::{
    character, decompose_by_character, decompose_by_weights, decomposition_character,
    group_element, group_element_of, homomorphism_check, homomorphism_diagnostic,
    residual_symmetry, splitting_multiplicities, validate_generator_triple, RepDecomposition,
    ResidualGroup, ResidualSymmetryReport, RotationParameter, SymmetryGenerator,
};
pub use so3rep::{
    cartesian_to_spherical, defining_rep, direct_sum, ladder_coefficients, parity_is_physical,
    parity_operator, spherical_rep, tensor_product, Basis, GeneratorTriple, LadderCoefficients,
    Rational64, SpinLabel, SpinRep,
};
pub use zeeman::{
    hydrogen_level, perturbed_hamiltonian, splitting_report, zeeman_split, AtomicLevel,
    LevelReport, PhysicalConstants, Sublevel, ZeemanSpectrum,
};
