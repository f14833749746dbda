//! Physical layer: hydrogen level energies, the orbital Zeeman perturbation
//! H′ = −μ₀·B_z·L_z, and the resulting (2l+1)-fold equidistant splitting in
//! electron-volts.
//!
//! Everything upstream works with ħ = 1 and no units; this module restores
//! physics through [`PhysicalConstants`], stored in CGS-Gaussian (erg, gauss)
//! with output energies converted to eV.
//!
//! Sign convention: μ₀ < 0 (electron orbital moment), so the sublevel energy
//! E(m) = Eₙ − μ₀·B·m places m = +l highest for B > 0.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cmatrix::{c64, ComplexMatrix};
use crate::error::{Error, Result};
use crate::repanalysis::{residual_symmetry, RepDecomposition, ResidualSymmetryReport};
use crate::so3rep::{spherical_rep, Basis, SpinLabel, SpinRep};

/// Commutator tolerance used when classifying the residual symmetry of the
/// perturbation in [`splitting_report`].
const RESIDUAL_TOL: f64 = 1e-9;

/// Physical constants in CGS-Gaussian units with an eV conversion.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct PhysicalConstants {
    /// Electron orbital magnetic moment scale, erg/gauss. Negative: the
    /// moment is antiparallel to the orbital angular momentum.
    pub mu0: f64,
    /// Hydrogen ground-state binding energy, eV.
    pub rydberg_ev: f64,
    /// Ergs per electron-volt.
    pub erg_per_ev: f64,
}

impl PhysicalConstants {
    /// The standard values: μ₀ = −0.9273×10⁻²⁰ erg/gauss,
    /// Ry = 13.6 eV, 1 eV = 1.602176634×10⁻¹² erg.
    pub const fn standard() -> Self {
        Self {
            mu0: -0.9273e-20,
            rydberg_ev: 13.6,
            erg_per_ev: 1.602176634e-12,
        }
    }

    /// Energy of the n-th hydrogen level, −Ry/n² eV.
    pub fn level_energy_ev(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Err(Error::RejectedInput("principal quantum number must be ≥ 1".into()));
        }
        Ok(-self.rydberg_ev / (n as f64 * n as f64))
    }

    /// Energy gained per unit m at the given field: −μ₀·B converted to eV.
    /// Positive for B > 0 because μ₀ < 0. This single expression feeds both
    /// the sublevel formula and the perturbation matrix so the two routes
    /// agree bit-for-bit.
    pub fn sublevel_shift_ev(&self, field_gauss: f64) -> f64 {
        -self.mu0 * field_gauss / self.erg_per_ev
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::standard()
    }
}

/// Energy of the n-th hydrogen level in eV (−13.6/n²).
pub fn hydrogen_level(n: u32) -> Result<f64> {
    PhysicalConstants::standard().level_energy_ev(n)
}

/// An unperturbed hydrogen level (n, l) with its energy.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct AtomicLevel {
    n: u32,
    l: u32,
    energy_ev: f64,
}

impl AtomicLevel {
    /// Requires n ≥ 1 and l ≤ n − 1.
    pub fn new(n: u32, l: u32) -> Result<Self> {
        let energy_ev = hydrogen_level(n)?;
        if l + 1 > n {
            return Err(Error::RejectedInput(format!(
                "orbital quantum number l = {l} exceeds n − 1 = {}",
                n - 1
            )));
        }
        Ok(Self { n, l, energy_ev })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn energy_ev(&self) -> f64 {
        self.energy_ev
    }

    /// The spin label of the level's orbital representation.
    pub fn label(&self) -> SpinLabel {
        SpinLabel::from_two_l(2 * self.l)
    }
}

/// One Zeeman sublevel: magnetic quantum number and energy.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct Sublevel {
    pub m: i64,
    pub energy_ev: f64,
}

/// A split level: the base level, the field, the 2l+1 sublevels in
/// ascending m (ascending energy for B > 0), and the common spacing.
#[derive(Clone, PartialEq, Debug)]
pub struct ZeemanSpectrum {
    base: AtomicLevel,
    field_gauss: f64,
    sublevels: Vec<Sublevel>,
    spacing_ev: f64,
}

impl ZeemanSpectrum {
    pub fn base(&self) -> &AtomicLevel {
        &self.base
    }

    pub fn field_gauss(&self) -> f64 {
        self.field_gauss
    }

    pub fn sublevels(&self) -> &[Sublevel] {
        &self.sublevels
    }

    pub fn spacing_ev(&self) -> f64 {
        self.spacing_ev
    }
}

impl Serialize for ZeemanSpectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ZeemanSpectrum", 6)?;
        s.serialize_field("n", &self.base.n())?;
        s.serialize_field("l", &self.base.l())?;
        s.serialize_field("field_gauss", &self.field_gauss)?;
        s.serialize_field("base_energy_ev", &self.base.energy_ev())?;
        s.serialize_field("spacing_ev", &self.spacing_ev)?;
        s.serialize_field("sublevels", &self.sublevels)?;
        s.end()
    }
}

/// The Zeeman perturbation H′ = −μ₀·B_z·L_z as a matrix in eV, diagonal in
/// the spherical basis. Requires a spherical integer-l representation — the
/// orbital moment formula does not apply to half-integer carriers.
pub fn perturbed_hamiltonian(rep: &SpinRep, field_gauss: f64) -> Result<ComplexMatrix> {
    if !field_gauss.is_finite() {
        return Err(Error::RejectedInput("field must be finite".into()));
    }
    if rep.basis() != Basis::Spherical {
        return Err(Error::RejectedInput(
            "perturbation requires the spherical basis (L_z diagonal)".into(),
        ));
    }
    if !rep.label().is_integer() {
        return Err(Error::RejectedInput(format!(
            "orbital Zeeman coupling requires integer l, got l = {}",
            rep.label()
        )));
    }
    let shift = PhysicalConstants::standard().sublevel_shift_ev(field_gauss);
    Ok(rep.lz().scale(c64(shift, 0.0)))
}

/// Splits an atomic level in a field B ≥ 0 (gauss): sublevel energies
/// E(m) = Eₙ − μ₀·B·m in eV for m = −l..l, with
/// spacing |μ₀|·B converted to eV.
pub fn zeeman_split(level: AtomicLevel, field_gauss: f64) -> Result<ZeemanSpectrum> {
    if !field_gauss.is_finite() || field_gauss < 0.0 {
        return Err(Error::RejectedInput(format!(
            "field must be finite and ≥ 0 gauss, got {field_gauss}"
        )));
    }
    let shift = PhysicalConstants::standard().sublevel_shift_ev(field_gauss);
    let l = level.l() as i64;
    let sublevels = (-l..=l)
        .map(|m| Sublevel {
            m,
            energy_ev: level.energy_ev() + shift * m as f64,
        })
        .collect();
    Ok(ZeemanSpectrum {
        base: level,
        field_gauss,
        sublevels,
        spacing_ev: shift.abs(),
    })
}

/// A split level together with its representation-theoretic cross-checks:
/// the (trivial, single-block) decomposition of the level's carrier and the
/// residual symmetry of the perturbation.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub spectrum: ZeemanSpectrum,
    pub decomposition: RepDecomposition,
    pub residual: ResidualSymmetryReport,
}

/// Reports every l = 0..n−1 at the given field, in ascending l, each with
/// its decomposition and residual-symmetry classification.
pub fn splitting_report(n: u32, field_gauss: f64) -> Result<Vec<LevelReport>> {
    if n == 0 {
        return Err(Error::RejectedInput("principal quantum number must be ≥ 1".into()));
    }
    (0..n)
        .map(|l| {
            let level = AtomicLevel::new(n, l)?;
            let spectrum = zeeman_split(level, field_gauss)?;
            let rep = spherical_rep(level.label());
            let h_pert = perturbed_hamiltonian(&rep, field_gauss)?;
            let residual = residual_symmetry(&h_pert, &rep, RESIDUAL_TOL)?;
            let decomposition = RepDecomposition::from_blocks(vec![(level.label(), 1)])?;
            Ok(LevelReport { spectrum, decomposition, residual })
        })
        .collect()
}
