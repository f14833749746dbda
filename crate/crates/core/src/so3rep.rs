//! Construction of spin-l representations of so(3): the 3×3 Cartesian
//! defining representation acting on (x, y, z), and spherical-basis
//! generators at arbitrary l built from the ladder recursion.
//!
//! Conventions (ħ = 1 throughout):
//! - basis vectors ordered by descending L_z eigenvalue, so the top weight
//!   l comes first;
//! - L_+ = L_x + iL_y carries real positive superdiagonal entries
//!   μ_m = sqrt((l+m)(l−m+1)), mapping |φ_{m−1}⟩ → μ_m|φ_m⟩;
//! - half-integer l is constructed and tested here even though the physical
//!   (Zeeman) layer only accepts integer l.

use std::fmt;

pub use num_rational::Rational64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cmatrix::{c64, Complex64, ComplexMatrix};
use crate::error::{Error, Result};
use crate::repanalysis::RepDecomposition;

/// Hermiticity and commutation tolerance a representation must meet.
pub const REP_ALGEBRA_TOL: f64 = 1e-12;
/// Casimir tolerance: `‖L² − l(l+1)·identity‖_max`.
pub const REP_CASIMIR_TOL: f64 = 1e-10;

/// Spin label storing 2l, so integer and half-integer l are both exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SpinLabel {
    two_l: u32,
}

impl SpinLabel {
    pub const fn from_two_l(two_l: u32) -> Self {
        Self { two_l }
    }

    /// Parses l given as a float, accepted only when it is exactly k/2 ≥ 0.
    pub fn from_l(l: f64) -> Result<Self> {
        let doubled = 2.0 * l;
        if !doubled.is_finite() || doubled < 0.0 || doubled.fract() != 0.0 || doubled > u32::MAX as f64 {
            return Err(Error::RejectedInput(format!(
                "spin label must be a non-negative integer or half-integer, got {l}"
            )));
        }
        Ok(Self { two_l: doubled as u32 })
    }

    pub const fn two_l(self) -> u32 {
        self.two_l
    }

    pub const fn dimension(self) -> usize {
        self.two_l as usize + 1
    }

    pub fn l(self) -> f64 {
        f64::from(self.two_l) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.two_l % 2 == 0
    }

    /// Casimir eigenvalue l(l+1).
    pub fn casimir(self) -> f64 {
        let two_l = f64::from(self.two_l);
        two_l * (two_l + 2.0) / 4.0
    }

    /// Doubled weights 2m in descending order: 2l, 2l−2, ..., −2l.
    pub fn two_m_descending(self) -> impl Iterator<Item = i64> {
        let top = i64::from(self.two_l);
        (0..=self.two_l).map(move |k| top - 2 * i64::from(k))
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_l / 2)
        } else {
            write!(f, "{}/2", self.two_l)
        }
    }
}

/// Basis in which a representation's generators are written.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Spherical,
    Cartesian,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Spherical => write!(f, "spherical"),
            Basis::Cartesian => write!(f, "cartesian"),
        }
    }
}

/// Three same-dimension generator matrices (L_x, L_y, L_z), not necessarily
/// irreducible. Direct sums and tensor products produce these.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GeneratorTriple {
    pub lx: ComplexMatrix,
    pub ly: ComplexMatrix,
    pub lz: ComplexMatrix,
}

impl GeneratorTriple {
    pub fn new(lx: ComplexMatrix, ly: ComplexMatrix, lz: ComplexMatrix) -> Result<Self> {
        if lx.dim() != ly.dim() || lx.dim() != lz.dim() {
            return Err(Error::DimensionMismatch { left: lx.dim(), right: ly.dim().max(lz.dim()) });
        }
        Ok(Self { lx, ly, lz })
    }

    pub fn dim(&self) -> usize {
        self.lx.dim()
    }

    /// Worst Hermiticity residual over the three generators.
    pub fn hermiticity_residual(&self) -> f64 {
        self.lx
            .hermiticity_residual()
            .max(self.ly.hermiticity_residual())
            .max(self.lz.hermiticity_residual())
    }

    /// Worst max-norm residual of [L_a, L_b] − iε_abc·L_c over the three
    /// cyclic pairs.
    pub fn algebra_residual(&self) -> f64 {
        let i = c64(0.0, 1.0);
        let pairs = [
            (&self.lx, &self.ly, &self.lz),
            (&self.ly, &self.lz, &self.lx),
            (&self.lz, &self.lx, &self.ly),
        ];
        pairs
            .iter()
            .map(|(a, b, c)| {
                let comm = a.commutator(b).expect("same dimension");
                comm.sub(&c.scale(i)).expect("same dimension").max_norm()
            })
            .fold(0.0, f64::max)
    }

    /// L_x² + L_y² + L_z².
    pub fn casimir_matrix(&self) -> ComplexMatrix {
        let xx = self.lx.mul(&self.lx).expect("same dimension");
        let yy = self.ly.mul(&self.ly).expect("same dimension");
        let zz = self.lz.mul(&self.lz).expect("same dimension");
        xx.add(&yy).and_then(|s| s.add(&zz)).expect("same dimension")
    }
}

/// An irreducible spin-l representation: label, basis, and generators.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinRep {
    label: SpinLabel,
    basis: Basis,
    gens: GeneratorTriple,
}

impl SpinRep {
    /// Validating constructor, also used by the JSON loader. Checks, in
    /// order: dimension, Hermiticity (1e-12), commutation relations (1e-12),
    /// Casimir (1e-10), and for the spherical basis a diagonal lz with the
    /// descending weight ladder. Reports the first violated invariant.
    pub fn from_parts(
        label: SpinLabel,
        basis: Basis,
        lx: ComplexMatrix,
        ly: ComplexMatrix,
        lz: ComplexMatrix,
    ) -> Result<Self> {
        if basis == Basis::Cartesian && label.two_l() != 2 {
            return Err(Error::MalformedRep(format!(
                "cartesian basis is only defined for the 3-dimensional defining representation, got 2l = {}",
                label.two_l()
            )));
        }
        let gens = GeneratorTriple::new(lx, ly, lz)?;
        let dim = label.dimension();
        if gens.dim() != dim {
            return Err(Error::MalformedRep(format!(
                "generator dimension {} does not match 2l+1 = {dim}",
                gens.dim()
            )));
        }
        let herm = gens.hermiticity_residual();
        if herm > REP_ALGEBRA_TOL {
            return Err(Error::MalformedRep(format!(
                "Hermiticity residual {herm:.3e} exceeds {REP_ALGEBRA_TOL:.1e}"
            )));
        }
        let algebra = gens.algebra_residual();
        if algebra > REP_ALGEBRA_TOL {
            return Err(Error::MalformedRep(format!(
                "commutation residual {algebra:.3e} exceeds {REP_ALGEBRA_TOL:.1e}"
            )));
        }
        let casimir_residual = gens
            .casimir_matrix()
            .sub(&ComplexMatrix::identity(dim).scale(c64(label.casimir(), 0.0)))
            .expect("same dimension")
            .max_norm();
        if casimir_residual > REP_CASIMIR_TOL {
            return Err(Error::MalformedRep(format!(
                "Casimir residual {casimir_residual:.3e} exceeds {REP_CASIMIR_TOL:.1e}"
            )));
        }
        if basis == Basis::Spherical {
            let mut worst = 0.0_f64;
            for (i, two_m) in label.two_m_descending().enumerate() {
                for j in 0..dim {
                    let expected = if i == j { c64(two_m as f64 / 2.0, 0.0) } else { c64(0.0, 0.0) };
                    worst = worst.max((gens.lz.get(i, j) - expected).norm());
                }
            }
            if worst > REP_ALGEBRA_TOL {
                return Err(Error::MalformedRep(format!(
                    "spherical lz must be diag(l, l-1, ..., -l); residual {worst:.3e}"
                )));
            }
        }
        Ok(Self { label, basis, gens })
    }

    pub fn label(&self) -> SpinLabel {
        self.label
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn generators(&self) -> &GeneratorTriple {
        &self.gens
    }

    pub fn lx(&self) -> &ComplexMatrix {
        &self.gens.lx
    }

    pub fn ly(&self) -> &ComplexMatrix {
        &self.gens.ly
    }

    pub fn lz(&self) -> &ComplexMatrix {
        &self.gens.lz
    }

    pub fn dim(&self) -> usize {
        self.gens.dim()
    }
}

impl Serialize for SpinRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SpinRep", 5)?;
        st.serialize_field("two_l", &self.label.two_l())?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("lx", &self.gens.lx)?;
        st.serialize_field("ly", &self.gens.ly)?;
        st.serialize_field("lz", &self.gens.lz)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SpinRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            two_l: u32,
            basis: Basis,
            lx: ComplexMatrix,
            ly: ComplexMatrix,
            lz: ComplexMatrix,
        }
        let raw = Raw::deserialize(deserializer)?;
        SpinRep::from_parts(SpinLabel::from_two_l(raw.two_l), raw.basis, raw.lx, raw.ly, raw.lz)
            .map_err(D::Error::custom)
    }
}

/// Ladder coefficients μ_m = sqrt((l+m)(l−m+1)) for m = l down to −l+1.
#[derive(Clone, PartialEq, Debug)]
pub struct LadderCoefficients {
    label: SpinLabel,
    mu: Vec<f64>,
}

impl LadderCoefficients {
    pub fn for_label(label: SpinLabel) -> Self {
        let mu = label
            .two_m_descending()
            .take(label.two_l() as usize)
            .map(|two_m| ratio_to_f64(Self::mu_squared_exact(label, two_m)).sqrt())
            .collect();
        Self { label, mu }
    }

    pub fn label(&self) -> SpinLabel {
        self.label
    }

    /// μ values ordered by descending m (m = l first, m = −l+1 last).
    pub fn mu_values(&self) -> &[f64] {
        &self.mu
    }

    /// μ_m for the doubled weight 2m, or `None` outside −l < m ≤ l (or off
    /// the weight lattice of this l).
    pub fn mu(&self, two_m: i64) -> Option<f64> {
        let top = i64::from(self.label.two_l());
        if two_m > top || two_m <= -top || (top - two_m) % 2 != 0 {
            return None;
        }
        let index = ((top - two_m) / 2) as usize;
        self.mu.get(index).copied()
    }

    /// μ_m² as an exact rational: (2l+2m)(2l−2m+2)/4, evaluated without
    /// rounding so the step recursion can be checked exactly.
    pub fn mu_squared_exact(label: SpinLabel, two_m: i64) -> Rational64 {
        let two_l = i64::from(label.two_l());
        Rational64::new((two_l + two_m) * (two_l - two_m + 2), 4)
    }
}

fn ratio_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The 3×3 Cartesian-basis representation acting on (x, y, z), with every
/// entry exactly 0 or ±i.
pub fn defining_rep() -> SpinRep {
    let z = c64(0.0, 0.0);
    let i = c64(0.0, 1.0);
    let mi = c64(0.0, -1.0);
    let lx = ComplexMatrix::new(3, vec![z, z, z, z, z, mi, z, i, z]).expect("static entries");
    let ly = ComplexMatrix::new(3, vec![z, z, i, z, z, z, mi, z, z]).expect("static entries");
    let lz = ComplexMatrix::new(3, vec![z, mi, z, i, z, z, z, z, z]).expect("static entries");
    SpinRep::from_parts(SpinLabel::from_two_l(2), Basis::Cartesian, lx, ly, lz)
        .expect("defining representation satisfies the algebra by construction")
}

/// Spherical-basis spin-l generators from the ladder construction:
/// lz = diag(l, l−1, ..., −l), L_+ on the superdiagonal with entries μ_m,
/// lx = (L_+ + L_-)/2, ly = (L_+ − L_-)/(2i).
pub fn spherical_rep(label: SpinLabel) -> SpinRep {
    let dim = label.dimension();
    let ladder = LadderCoefficients::for_label(label);
    let lz = ComplexMatrix::from_diagonal(
        &label
            .two_m_descending()
            .map(|two_m| c64(two_m as f64 / 2.0, 0.0))
            .collect::<Vec<_>>(),
    );
    let mut lx = ComplexMatrix::zeros(dim);
    let mut ly = ComplexMatrix::zeros(dim);
    for (k, &mu) in ladder.mu_values().iter().enumerate() {
        // Row k holds weight m = l−k; the superdiagonal entry couples it to
        // the next-lower weight.
        lx.set(k, k + 1, c64(mu / 2.0, 0.0));
        lx.set(k + 1, k, c64(mu / 2.0, 0.0));
        ly.set(k, k + 1, c64(0.0, -mu / 2.0));
        ly.set(k + 1, k, c64(0.0, mu / 2.0));
    }
    SpinRep::from_parts(label, Basis::Spherical, lx, ly, lz)
        .expect("ladder construction satisfies the algebra by construction")
}

/// Convenience: ladder coefficients for a label.
pub fn ladder_coefficients(label: SpinLabel) -> LadderCoefficients {
    LadderCoefficients::for_label(label)
}

/// Rotates a Cartesian-basis representation into the spherical basis:
/// returns the spherical rep together with the unitary U satisfying
/// U·L_cart·U† = L_sph for each generator.
///
/// The change of basis diagonalizes lz; eigenvector phases are then fixed so
/// the transformed L_+ has real positive superdiagonal entries (and the top
/// eigenvector's first nonzero component is real positive), which makes U
/// deterministic and lands exactly on the ladder-construction convention.
pub fn cartesian_to_spherical(rep: &SpinRep) -> Result<(SpinRep, ComplexMatrix)> {
    if rep.basis() != Basis::Cartesian {
        return Err(Error::RejectedInput(format!(
            "change of basis expects a cartesian-basis representation, got {}",
            rep.basis()
        )));
    }
    let dim = rep.dim();
    let (_, vectors) = rep.lz().hermitian_eigensystem(REP_ALGEBRA_TOL)?;
    // Columns come back with eigenvalues ascending; reorder to descending m.
    let mut w = ComplexMatrix::from_fn(dim, |i, j| vectors.get(i, dim - 1 - j));

    // Phase convention, column 0: first component of significant magnitude
    // becomes real positive.
    let lead = (0..dim)
        .find(|&i| w.get(i, 0).norm() > 1e-8)
        .expect("unit-norm eigenvector has a significant component");
    let mut phase = w.get(lead, 0).conj() / w.get(lead, 0).norm();
    apply_column_phase(&mut w, 0, phase);

    // Remaining columns: make each superdiagonal entry of L_+ = lx + i·ly
    // real positive.
    let l_plus = rep
        .lx()
        .add(&rep.ly().scale(c64(0.0, 1.0)))
        .expect("same dimension");
    for k in 0..dim - 1 {
        let col_k: Vec<Complex64> = (0..dim).map(|i| w.get(i, k)).collect();
        let col_next: Vec<Complex64> = (0..dim).map(|i| w.get(i, k + 1)).collect();
        let image = l_plus.matvec(&col_next).expect("same dimension");
        let entry: Complex64 = col_k.iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
        if entry.norm() > 1e-8 {
            phase = entry.conj() / entry.norm();
            apply_column_phase(&mut w, k + 1, phase);
        }
    }

    let u = w.adjoint();
    let transform = |m: &ComplexMatrix| u.mul(m).and_then(|um| um.mul(&u.adjoint()));
    let lx = transform(rep.lx())?;
    let ly = transform(rep.ly())?;
    let lz = transform(rep.lz())?;
    let spherical = SpinRep::from_parts(rep.label(), Basis::Spherical, lx, ly, lz)?;
    Ok((spherical, u))
}

fn apply_column_phase(m: &mut ComplexMatrix, col: usize, phase: Complex64) {
    for i in 0..m.dim() {
        let v = m.get(i, col) * phase;
        m.set(i, col, v);
    }
}

/// Block-diagonal direct sum of representations, in the given order, plus
/// the multiset of labels as a decomposition record.
pub fn direct_sum(reps: &[SpinRep]) -> Result<(GeneratorTriple, RepDecomposition)> {
    if reps.is_empty() {
        return Err(Error::RejectedInput("direct sum of an empty list".into()));
    }
    if let Some(bad) = reps.iter().find(|r| r.basis() != Basis::Spherical) {
        return Err(Error::RejectedInput(format!(
            "direct sum expects spherical-basis blocks, got a {} block at l = {}",
            bad.basis(),
            bad.label()
        )));
    }
    let lx = ComplexMatrix::block_diag(&reps.iter().map(SpinRep::lx).collect::<Vec<_>>())?;
    let ly = ComplexMatrix::block_diag(&reps.iter().map(SpinRep::ly).collect::<Vec<_>>())?;
    let lz = ComplexMatrix::block_diag(&reps.iter().map(SpinRep::lz).collect::<Vec<_>>())?;
    let mut counts: std::collections::BTreeMap<SpinLabel, usize> = Default::default();
    for r in reps {
        *counts.entry(r.label()).or_insert(0) += 1;
    }
    let decomposition = RepDecomposition::from_blocks(counts.into_iter().collect())?;
    Ok((GeneratorTriple::new(lx, ly, lz)?, decomposition))
}

/// Coupled generators on the product space: L = L_a ⊗ 1 + 1 ⊗ L_b.
pub fn tensor_product(a: &SpinRep, b: &SpinRep) -> Result<GeneratorTriple> {
    if a.basis() != Basis::Spherical || b.basis() != Basis::Spherical {
        return Err(Error::RejectedInput(
            "tensor product expects spherical-basis factors".into(),
        ));
    }
    let ia = ComplexMatrix::identity(a.dim());
    let ib = ComplexMatrix::identity(b.dim());
    let couple = |ma: &ComplexMatrix, mb: &ComplexMatrix| -> Result<ComplexMatrix> {
        ma.kron(&ib).add(&ia.kron(mb))
    };
    GeneratorTriple::new(
        couple(a.lx(), b.lx())?,
        couple(a.ly(), b.ly())?,
        couple(a.lz(), b.lz())?,
    )
}

/// Inversion operator I on the representation carrier.
///
/// On the Cartesian carrier (x, y, z) inversion is −identity. On a spherical
/// integer-l carrier it acts as (−1)^l·identity (the parity of the degree-l
/// spherical harmonics). Half-integer carriers have no geometric inversion;
/// the operator is defined as identity there and
/// [`parity_is_physical`] reports `false` so callers can flag it.
pub fn parity_operator(rep: &SpinRep) -> ComplexMatrix {
    let id = ComplexMatrix::identity(rep.dim());
    match rep.basis() {
        Basis::Cartesian => id.scale(c64(-1.0, 0.0)),
        Basis::Spherical => {
            if !rep.label().is_integer() {
                id
            } else if (rep.label().two_l() / 2) % 2 == 1 {
                id.scale(c64(-1.0, 0.0))
            } else {
                id
            }
        }
    }
}

/// Whether the parity operator returned for this label is the geometric
/// inversion (true for integer l) or the non-physical placeholder used on
/// half-integer carriers.
pub fn parity_is_physical(label: SpinLabel) -> bool {
    label.is_integer()
}
