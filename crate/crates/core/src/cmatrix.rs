//! Dense complex-matrix kernel.
//!
//! Everything downstream (generator construction, characters, precession,
//! level splitting) sits on this module, so it stays deliberately
//! self-contained: row-major dense storage, a cyclic Jacobi eigensolver for
//! Hermitian matrices, and scaling-and-squaring for the matrix exponential.
//! Matrices in this project are small (dimension ≲ 100), which keeps both
//! algorithms comfortably inside their robust regime.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex64 = Complex<f64>;

/// Shorthand complex constructor.
pub const fn c64(re: f64, im: f64) -> Complex64 {
    Complex::new(re, im)
}

/// Maximum Jacobi sweeps before giving up on convergence. Cyclic Jacobi
/// converges quadratically; for dimensions below a few hundred a handful of
/// sweeps suffices, so hitting this cap means the input was pathological.
const MAX_JACOBI_SWEEPS: usize = 60;

/// Square dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects `dim == 0`, a length
    /// that is not `dim²`, and non-finite entries.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::RejectedInput("matrix dimension must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::RejectedInput(format!(
                "expected {} row-major entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if let Some(k) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::RejectedInput(format!(
                "non-finite entry at ({}, {})",
                k / dim,
                k % dim
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![c64(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, c64(1.0, 0.0));
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Standard matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == c64(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ab.sub(&ba)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let entries = self.entries.iter().map(|z| z * factor).collect();
        Self { dim: self.dim, entries }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    /// Largest entry magnitude (max norm).
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum (induced 1-norm).
    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.get(i, j).norm()).sum())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖a − a†‖_max`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let r = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(r);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `‖a·a† − identity‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        let aat = self.mul(&self.adjoint()).expect("same dimension");
        aat.sub(&Self::identity(self.dim)).expect("same dimension").max_norm()
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut out = Self::zeros(n);
        for ia in 0..na {
            for ja in 0..na {
                let a = self.get(ia, ja);
                if a == c64(0.0, 0.0) {
                    continue;
                }
                for ib in 0..nb {
                    for jb in 0..nb {
                        out.set(ia * nb + ib, ja * nb + jb, a * other.get(ib, jb));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal concatenation.
    pub fn block_diag(blocks: &[&Self]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::RejectedInput("block_diag needs at least one block".into()));
        }
        let n: usize = blocks.iter().map(|b| b.dim).sum();
        let mut out = Self::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out.set(offset + i, offset + j, b.get(i, j));
                }
            }
            offset += b.dim;
        }
        Ok(out)
    }

    /// Matrix exponential by scaling-and-squaring with a truncated series.
    ///
    /// The argument is scaled by `2^-s` until its 1-norm is at most 1/2, the
    /// series is summed until terms vanish at working precision, and the
    /// result is squared `s` times. Robust for the skew-Hermitian inputs this
    /// crate produces and accurate to near machine precision at the small
    /// dimensions involved.
    pub fn expm(&self) -> Self {
        let norm = self.one_norm();
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let scaled = self.scale(c64(2.0_f64.powi(-squarings), 0.0));

        let mut sum = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..=40u32 {
            term = term.mul(&scaled).expect("same dimension").scale(c64(1.0 / f64::from(k), 0.0));
            sum = sum.add(&term).expect("same dimension");
            if term.max_norm() <= f64::EPSILON * sum.max_norm() {
                break;
            }
        }
        let mut result = sum;
        for _ in 0..squarings {
            result = result.mul(&result).expect("same dimension");
        }
        result
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Rejects inputs whose Hermiticity residual exceeds `tol`, then works on
    /// the symmetrized matrix `(a + a†)/2`. Returns eigenvalues sorted
    /// ascending and the matching unit-norm eigenvectors as the columns of a
    /// unitary matrix, so `a = V·diag(λ)·V†`. Vectors inside a degenerate
    /// cluster are orthonormal (the accumulated rotations are unitary) but
    /// their individual directions carry no further guarantee.
    pub fn hermitian_eigensystem(&self, tol: f64) -> Result<(Vec<f64>, Self)> {
        let residual = self.hermiticity_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual, tol });
        }
        let n = self.dim;
        let mut a = Self::from_fn(n, |i, j| (self.get(i, j) + self.get(j, i).conj()) * c64(0.5, 0.0));
        let mut v = Self::identity(n);
        let frobenius = a.frobenius_norm();
        if n > 1 && frobenius > 0.0 {
            let target = f64::EPSILON * frobenius * n as f64;
            for _sweep in 0..MAX_JACOBI_SWEEPS {
                if off_diagonal_frobenius(&a) <= target {
                    break;
                }
                for p in 0..n - 1 {
                    for q in p + 1..n {
                        jacobi_rotate(&mut a, &mut v, p, q);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a.get(i, i).re.partial_cmp(&a.get(j, j).re).expect("finite eigenvalues")
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
        let eigenvectors = Self::from_fn(n, |i, j| v.get(i, order[j]));
        Ok((eigenvalues, eigenvectors))
    }

    /// True when every entry of `self − other` has magnitude ≤ `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

fn off_diagonal_frobenius(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry of the Hermitian
/// matrix `a`, accumulated into `v`. The rotation J is the identity except
/// J[p][p] = J[q][q] = c (real), J[p][q] = s, J[q][p] = −s̄, applied as
/// a ← J†·a·J and v ← v·J.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let abs_apq = apq.norm();
    if abs_apq == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let phase = apq / abs_apq;
    let tau = (app - aqq) / (2.0 * abs_apq);
    // Smaller-magnitude root of t² − 2τt − 1 = 0, written cancellation-free.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (tau * tau + 1.0).sqrt())
    } else {
        1.0 / (-tau + (tau * tau + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = phase * c64(t * c, 0.0);

    let n = a.dim();
    // Column update: a ← a·J.
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * s.conj());
        a.set(i, q, aip * s + aiq * c);
    }
    // Row update: a ← J†·a.
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * s);
        a.set(q, j, apj * s.conj() + aqj * c);
    }
    // The pivot pair is zero analytically; pin it to kill roundoff residue.
    a.set(p, q, c64(0.0, 0.0));
    a.set(q, p, c64(0.0, 0.0));
    let app_new = a.get(p, p);
    let aqq_new = a.get(q, q);
    a.set(p, p, c64(app_new.re, 0.0));
    a.set(q, q, c64(aqq_new.re, 0.0));

    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c - viq * s.conj());
        v.set(i, q, vip * s + viq * c);
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs).expect("dimension mismatch in +")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs).expect("dimension mismatch in -")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::mul(self, rhs).expect("dimension mismatch in *")
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.entries.iter().map(|z| [z.re, z.im]).collect();
        let mut st = serializer.serialize_struct("ComplexMatrix", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("entries", &pairs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            entries: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let entries = raw.entries.iter().map(|&[re, im]| c64(re, im)).collect();
        ComplexMatrix::new(raw.dim, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {a} ≈ {b} within {tol}");
    }

    #[test]
    fn new_rejects_bad_shapes() {
        assert!(ComplexMatrix::new(0, vec![]).is_err());
        assert!(ComplexMatrix::new(2, vec![c64(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, vec![c64(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let m = ComplexMatrix::from_fn(3, |i, j| c64(i as f64, j as f64));
        let id = ComplexMatrix::identity(3);
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
    }

    #[test]
    fn mul_rejects_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(
            a.mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn mul_matches_triple_loop_oracle() {
        // Deterministic pseudo-random 4x4 pair; oracle is an independently
        // written triple loop accumulating in the (i, j, k) order.
        let mut state = 0x2545f4914f6cdd1d_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = ComplexMatrix::from_fn(4, |_, _| c64(next(), next()));
        let b = ComplexMatrix::from_fn(4, |_, _| c64(next(), next()));
        let product = a.mul(&b).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = c64(0.0, 0.0);
                for k in 0..4 {
                    acc += a.get(i, k) * b.get(k, j);
                }
                assert!((product.get(i, j) - acc).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn commutator_of_matrix_with_itself_is_zero() {
        let m = ComplexMatrix::from_fn(3, |i, j| c64((i * 3 + j) as f64, (i + j) as f64));
        let z = m.commutator(&m).unwrap();
        assert!(z.max_norm() <= 1e-12);
    }

    #[test]
    fn trace_of_commutator_vanishes() {
        let a = ComplexMatrix::from_fn(5, |i, j| c64((i + 2 * j) as f64, (i * j) as f64 * 0.1));
        let b = ComplexMatrix::from_fn(5, |i, j| c64((3 * i) as f64 - j as f64, 0.7));
        let t = a.commutator(&b).unwrap().trace();
        assert!(t.norm() <= 1e-12 * a.max_norm() * b.max_norm());
    }

    #[test]
    fn adjoint_matches_index_swap_oracle_and_is_involutive() {
        let m = ComplexMatrix::from_fn(4, |i, j| c64(i as f64 - j as f64, (i * j) as f64));
        let adj = m.adjoint();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(adj.get(i, j), m.get(j, i).conj());
            }
        }
        assert_eq!(adj.adjoint(), m);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = ComplexMatrix::zeros(4);
        assert!(z.expm().approx_eq(&ComplexMatrix::identity(4), 1e-15));
    }

    #[test]
    fn expm_matches_closed_form_two_by_two_rotation() {
        // exp(θ·[[0, −1], [1, 0]]) = [[cos θ, −sin θ], [sin θ, cos θ]].
        let theta = 0.7_f64;
        let gen = ComplexMatrix::new(
            2,
            vec![c64(0.0, 0.0), c64(-theta, 0.0), c64(theta, 0.0), c64(0.0, 0.0)],
        )
        .unwrap();
        let rot = gen.expm();
        assert_close(rot.get(0, 0).re, theta.cos(), 1e-14);
        assert_close(rot.get(0, 1).re, -theta.sin(), 1e-14);
        assert_close(rot.get(1, 0).re, theta.sin(), 1e-14);
        assert_close(rot.get(1, 1).re, theta.cos(), 1e-14);
    }

    #[test]
    fn expm_of_diagonal_is_entrywise() {
        let d = ComplexMatrix::from_diagonal(&[c64(0.0, 1.5), c64(0.0, -0.5), c64(0.0, 4.0)]);
        let e = d.expm();
        for (i, lam) in [1.5_f64, -0.5, 4.0].iter().enumerate() {
            let expected = c64(lam.cos(), lam.sin());
            assert!((e.get(i, i) - expected).norm() <= 1e-13);
        }
    }

    #[test]
    fn expm_inverse_identity_up_to_norm_ten() {
        let a = ComplexMatrix::from_fn(4, |i, j| c64(0.9 * (i as f64 - j as f64), 0.8 * (i + j) as f64));
        assert!(a.one_norm() <= 10.0 * 4.0); // sanity on the regime
        let prod = a.expm().mul(&a.scale(c64(-1.0, 0.0)).expm()).unwrap();
        assert!(prod.approx_eq(&ComplexMatrix::identity(4), 1e-10));
    }

    #[test]
    fn expm_is_homomorphic_for_commuting_inputs() {
        let a = ComplexMatrix::from_diagonal(&[c64(0.0, 0.3), c64(0.0, -1.2)]);
        let b = a.scale(c64(2.5, 0.0));
        let lhs = a.expm().mul(&b.expm()).unwrap();
        let rhs = a.add(&b).unwrap().expm();
        assert!(lhs.approx_eq(&rhs, 1e-10));
    }

    #[test]
    fn expm_skew_hermitian_is_unitary() {
        let h = ComplexMatrix::from_fn(5, |i, j| c64((i + j) as f64 * 0.31, i as f64 - 2.0 * j as f64));
        let skew = h.sub(&h.adjoint()).unwrap().scale(c64(0.5, 0.0));
        assert!(skew.expm().unitarity_residual() <= 1e-12);
    }

    #[test]
    fn eigensystem_of_diagonal_matrix() {
        let d = ComplexMatrix::from_diagonal(&[c64(3.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0)]);
        let (vals, vecs) = d.hermitian_eigensystem(1e-12).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        // columns are (sign-free) standard basis vectors matching the sort
        for (k, src) in [1usize, 2, 0].iter().enumerate() {
            assert!((vecs.get(*src, k).norm() - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn eigensystem_rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]).unwrap();
        assert!(matches!(m.hermitian_eigensystem(1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigensystem_reconstructs_hermitian_input() {
        let mut h = ComplexMatrix::from_fn(6, |i, j| c64((i * j) as f64 * 0.2 - i as f64, (i as f64 - j as f64) * 0.7));
        h = h.add(&h.adjoint()).unwrap().scale(c64(0.5, 0.0));
        let (vals, v) = h.hermitian_eigensystem(1e-12).unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!(v.unitarity_residual() <= 1e-12);
        let reconstructed = v
            .mul(&ComplexMatrix::from_diagonal(
                &vals.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>(),
            ))
            .unwrap()
            .mul(&v.adjoint())
            .unwrap();
        assert!(reconstructed.approx_eq(&h, 1e-10));
    }

    #[test]
    fn eigensystem_handles_degenerate_eigenvalues() {
        // 2·identity ⊕ diag(5): eigenvalue 2 has a two-dimensional eigenspace.
        let h = ComplexMatrix::from_diagonal(&[c64(2.0, 0.0), c64(2.0, 0.0), c64(5.0, 0.0)]);
        let (vals, v) = h.hermitian_eigensystem(1e-12).unwrap();
        assert_eq!(vals, vec![2.0, 2.0, 5.0]);
        assert!(v.unitarity_residual() <= 1e-12);
    }

    #[test]
    fn kron_dimensions_and_values() {
        let a = ComplexMatrix::from_diagonal(&[c64(1.0, 0.0), c64(2.0, 0.0)]);
        let b = ComplexMatrix::identity(3);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 6);
        assert_eq!(k.get(0, 0), c64(1.0, 0.0));
        assert_eq!(k.get(5, 5), c64(2.0, 0.0));
        assert_eq!(k.get(0, 3), c64(0.0, 0.0));
    }

    #[test]
    fn block_diag_lays_out_blocks() {
        let a = ComplexMatrix::from_diagonal(&[c64(1.0, 0.0)]);
        let b = ComplexMatrix::from_fn(2, |i, j| c64((i + 2 * j) as f64, 0.0));
        let m = ComplexMatrix::block_diag(&[&a, &b]).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(m.get(0, 0), c64(1.0, 0.0));
        assert_eq!(m.get(1, 2), b.get(0, 1));
        assert_eq!(m.get(0, 1), c64(0.0, 0.0));
    }

    #[test]
    fn json_round_trip_preserves_values() {
        let m = ComplexMatrix::from_fn(2, |i, j| c64(0.1 + i as f64, -0.25 * j as f64));
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with("{\"dim\":2,\"entries\":[["));
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_malformed_payload() {
        let bad: std::result::Result<ComplexMatrix, _> =
            serde_json::from_str("{\"dim\":2,\"entries\":[[1.0,0.0]]}");
        assert!(bad.is_err());
    }
}
