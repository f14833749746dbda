//! Precession of orbital angular momentum in a uniform z-directed magnetic
//! field, in both pictures: the state-vector (Schrödinger) evolution of the
//! L·n eigenvector, and the operator (Heisenberg) evolution of the
//! generator triple. Each closed-form solution is paired with a fixed-step
//! fourth-order integrator of the underlying differential equations so the
//! two routes can cross-validate.
//!
//! One caller-supplied precession `rate` (radians per unit time) drives both
//! pictures; physical runs obtain it from the field strength upstream.
//! Internally ħ = 1, matching the generator construction.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::cmatrix::{c64, Complex64, ComplexMatrix};
use crate::error::{Error, Result};
use crate::so3rep::{defining_rep, GeneratorTriple};

/// Largest permitted dt·|rate|: beyond this a fixed-step fourth-order
/// integrator's local error is no longer comfortably below the contract
/// tolerances.
pub const STEP_CONTROL_LIMIT: f64 = 0.1;

/// |sin θ| below which the (θ, φ) chart of the eigenvector family
/// degenerates: the direction is on the polar axis and φ stops being
/// attributable, so samples are flagged and φ holds its previous value.
pub const CHART_DEGENERACY_TOL: f64 = 1e-8;

/// Algebra residual the initial Heisenberg operator triple must satisfy.
const INITIAL_OPS_TOL: f64 = 1e-8;

/// Spherical orientation (θ polar from +z, φ azimuth), radians.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Orientation {
    theta: f64,
    phi: f64,
}

impl Orientation {
    /// Requires θ ∈ [0, π] and finite φ. φ is kept as given; comparisons
    /// should reduce it mod 2π (see [`angular_difference`]).
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::RejectedInput(format!(
                "polar angle must lie in [0, π], got {theta}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::RejectedInput("azimuth must be finite".into()));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Wraps an angle into (−π, π].
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x % TAU;
    if y > PI {
        y -= TAU;
    } else if y <= -PI {
        y += TAU;
    }
    y
}

/// |a − b| as an angular distance, reduced mod 2π into [0, π].
pub fn angular_difference(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Precession run parameters: rate ω (radians per unit time), final time,
/// and integrator step.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PrecessionSpec {
    omega: f64,
    t_end: f64,
    dt: f64,
}

impl PrecessionSpec {
    /// Validates finiteness, dt > 0, 0 ≤ t_end, dt ≤ t_end when t_end > 0,
    /// and the step-control bound dt·|ω| ≤ 0.1.
    pub fn new(omega: f64, t_end: f64, dt: f64) -> Result<Self> {
        if !omega.is_finite() || !t_end.is_finite() || !dt.is_finite() {
            return Err(Error::RejectedInput("precession parameters must be finite".into()));
        }
        if t_end < 0.0 {
            return Err(Error::RejectedInput(format!("t_end must be ≥ 0, got {t_end}")));
        }
        if dt <= 0.0 {
            return Err(Error::RejectedInput(format!("dt must be > 0, got {dt}")));
        }
        if t_end > 0.0 && dt > t_end {
            return Err(Error::RejectedInput(format!(
                "dt = {dt} exceeds t_end = {t_end}"
            )));
        }
        let product = dt * omega.abs();
        if product > STEP_CONTROL_LIMIT {
            return Err(Error::StepControl { product, limit: STEP_CONTROL_LIMIT });
        }
        Ok(Self { omega, t_end, dt })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Sample times: k·dt for k = 0.., plus a final partial step landing
    /// exactly on t_end when it is not a whole number of steps.
    pub fn time_grid(&self) -> Vec<f64> {
        let mut times = Vec::new();
        let mut k = 0u64;
        loop {
            let t = k as f64 * self.dt;
            if t >= self.t_end {
                break;
            }
            times.push(t);
            k += 1;
        }
        // Merge a vanishingly short trailing step into the endpoint.
        if let Some(&last) = times.last() {
            if self.t_end - last <= self.dt * 1e-9 {
                times.pop();
            }
        }
        times.push(self.t_end);
        times
    }
}

/// How a trajectory was produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionMethod {
    ClosedForm,
    Integrated,
}

impl fmt::Display for SolutionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionMethod::ClosedForm => write!(f, "closed-form"),
            SolutionMethod::Integrated => write!(f, "integrated"),
        }
    }
}

/// One orientation sample; `chart_degenerate` marks |sin θ| below the chart
/// tolerance, where φ is not attributable and holds its previous value (in
/// integrated runs).
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct OrientationSample {
    pub t: f64,
    pub theta: f64,
    pub phi: f64,
    #[serde(rename = "flag")]
    pub chart_degenerate: bool,
}

/// State-picture trajectory: the orientation of the tracked eigenvector.
#[derive(Clone, PartialEq, Debug)]
pub struct SchrodingerTrajectory {
    method: SolutionMethod,
    rate: f64,
    samples: Vec<OrientationSample>,
    norm_drift: f64,
}

impl SchrodingerTrajectory {
    pub fn method(&self) -> SolutionMethod {
        self.method
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn samples(&self) -> &[OrientationSample] {
        &self.samples
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    /// Worst |‖ψ‖ − 1| seen across samples (0 for closed-form runs).
    pub fn norm_drift(&self) -> f64 {
        self.norm_drift
    }
}

/// One operator sample of the Heisenberg flow.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorSample {
    pub t: f64,
    pub ops: GeneratorTriple,
}

/// Operator-picture trajectory: the rotating generator triple.
#[derive(Clone, PartialEq, Debug)]
pub struct HeisenbergTrajectory {
    method: SolutionMethod,
    rate: f64,
    samples: Vec<OperatorSample>,
}

impl HeisenbergTrajectory {
    pub fn method(&self) -> SolutionMethod {
        self.method
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn samples(&self) -> &[OperatorSample] {
        &self.samples
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }
}

/// The 3×3 matrix L·n(θ, φ) on the Cartesian carrier (ħ = 1):
///
/// ```text
///      ⎡    0        −cos θ      sin θ sin φ ⎤
///  i · ⎢  cos θ         0       −sin θ cos φ ⎥
///      ⎣ −sin θ sin φ  sin θ cos φ     0     ⎦
/// ```
///
/// Hermitian and traceless with eigenvalues {−1, 0, +1}; the 0 eigenvalue is
/// forced by tracelessness even when only ±1 are of physical interest.
pub fn l_dot_n(theta: f64, phi: f64) -> ComplexMatrix {
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (phi.sin(), phi.cos());
    let i = |x: f64| c64(0.0, x);
    ComplexMatrix::new(
        3,
        vec![
            i(0.0), i(-ct), i(st * sp),
            i(ct), i(0.0), i(-st * cp),
            i(-st * sp), i(st * cp), i(0.0),
        ],
    )
    .expect("static 3x3 shape")
}

/// Unit eigenvector of L·n(θ, φ) with eigenvalue +1.
pub fn eigenstate_plus(theta: f64, phi: f64) -> [Complex64; 3] {
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (phi.sin(), phi.cos());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [
        c64(-ct * cp * r, sp * r),
        c64(-ct * sp * r, -cp * r),
        c64(st * r, 0.0),
    ]
}

/// Unit eigenvector of L·n(θ, φ) with eigenvalue −1.
pub fn eigenstate_minus(theta: f64, phi: f64) -> [Complex64; 3] {
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (phi.sin(), phi.cos());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [
        c64(-ct * cp * r, -sp * r),
        c64(-ct * sp * r, cp * r),
        c64(st * r, 0.0),
    ]
}

/// Closed-form Schrödinger precession: θ(t) = θ(0), φ(t) = φ(0) − rate·t,
/// sampled on the time grid with φ wrapped into (−π, π].
pub fn schrodinger_closed_form(init: Orientation, spec: &PrecessionSpec) -> SchrodingerTrajectory {
    let degenerate = init.theta().sin().abs() < CHART_DEGENERACY_TOL;
    let samples = spec
        .time_grid()
        .into_iter()
        .map(|t| OrientationSample {
            t,
            theta: init.theta(),
            phi: wrap_angle(init.phi() - spec.omega() * t),
            chart_degenerate: degenerate,
        })
        .collect();
    SchrodingerTrajectory {
        method: SolutionMethod::ClosedForm,
        rate: spec.omega(),
        samples,
        norm_drift: 0.0,
    }
}

/// Integrates the state-vector equation ∂ψ/∂t = i·rate·L_z·ψ on the
/// Cartesian carrier from `eigenstate_plus(init)` with classical fixed-step
/// RK4, then recovers (θ, φ) by inverting the eigenvector parameterization
/// at every grid point.
///
/// Samples with |sin θ| below the chart tolerance are flagged; their φ holds
/// the previous sample's value because the azimuth is not attributable on
/// the polar axis.
pub fn schrodinger_integrate(init: Orientation, spec: &PrecessionSpec) -> SchrodingerTrajectory {
    let lz = defining_rep().lz().clone();
    let rhs = |psi: &[Complex64; 3]| -> [Complex64; 3] {
        let image = lz.matvec(psi).expect("3-vector");
        let factor = c64(0.0, spec.omega());
        [image[0] * factor, image[1] * factor, image[2] * factor]
    };

    let grid = spec.time_grid();
    let mut psi = eigenstate_plus(init.theta(), init.phi());
    let mut samples = Vec::with_capacity(grid.len());
    let mut norm_drift = 0.0_f64;
    let mut previous_phi = wrap_angle(init.phi());
    for (k, &t) in grid.iter().enumerate() {
        if k > 0 {
            let h = t - grid[k - 1];
            psi = rk4_vec_step(&rhs, &psi, h);
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        norm_drift = norm_drift.max((norm - 1.0).abs());

        // Invert the parameterization: the imaginary parts of the first two
        // components carry (sin φ, −cos φ)/√2; the third carries sin θ/√2;
        // the real parts then yield cos θ.
        let sin_theta = std::f64::consts::SQRT_2 * psi[2].re;
        let sin_phi = std::f64::consts::SQRT_2 * psi[0].im;
        let cos_phi = -std::f64::consts::SQRT_2 * psi[1].im;
        let chart_degenerate = sin_theta.abs() < CHART_DEGENERACY_TOL;
        let phi = if chart_degenerate { previous_phi } else { f64::atan2(sin_phi, cos_phi) };
        let cos_theta =
            -std::f64::consts::SQRT_2 * (psi[0].re * cos_phi + psi[1].re * sin_phi) / (cos_phi * cos_phi + sin_phi * sin_phi);
        let theta = f64::atan2(sin_theta, cos_theta);
        samples.push(OrientationSample { t, theta, phi, chart_degenerate });
        previous_phi = phi;
    }
    SchrodingerTrajectory {
        method: SolutionMethod::Integrated,
        rate: spec.omega(),
        samples,
        norm_drift,
    }
}

fn rk4_vec_step(
    rhs: &impl Fn(&[Complex64; 3]) -> [Complex64; 3],
    y: &[Complex64; 3],
    h: f64,
) -> [Complex64; 3] {
    let hh = c64(h, 0.0);
    let half = c64(0.5 * h, 0.0);
    let add = |a: &[Complex64; 3], b: &[Complex64; 3], f: Complex64| {
        [a[0] + b[0] * f, a[1] + b[1] * f, a[2] + b[2] * f]
    };
    let k1 = rhs(y);
    let k2 = rhs(&add(y, &k1, half));
    let k3 = rhs(&add(y, &k2, half));
    let k4 = rhs(&add(y, &k3, hh));
    let sixth = c64(h / 6.0, 0.0);
    let third = c64(h / 3.0, 0.0);
    [
        y[0] + (k1[0] + k4[0]) * sixth + (k2[0] + k3[0]) * third,
        y[1] + (k1[1] + k4[1]) * sixth + (k2[1] + k3[1]) * third,
        y[2] + (k1[2] + k4[2]) * sixth + (k2[2] + k3[2]) * third,
    ]
}

fn validate_initial_ops(init_ops: &GeneratorTriple) -> Result<()> {
    let residual = init_ops.algebra_residual();
    if residual > INITIAL_OPS_TOL {
        return Err(Error::RejectedInput(format!(
            "initial operators do not satisfy the commutation relations: residual {residual:.3e}"
        )));
    }
    Ok(())
}

/// Closed-form Heisenberg precession:
/// L_x(t) = cos(ωt)·L_x(0) + sin(ωt)·L_y(0),
/// L_y(t) = −sin(ωt)·L_x(0) + cos(ωt)·L_y(0),
/// L_z(t) = L_z(0).
pub fn heisenberg_closed_form(
    init_ops: &GeneratorTriple,
    spec: &PrecessionSpec,
) -> Result<HeisenbergTrajectory> {
    validate_initial_ops(init_ops)?;
    let samples = spec
        .time_grid()
        .into_iter()
        .map(|t| {
            let (s, c) = (spec.omega() * t).sin_cos();
            let lx = init_ops
                .lx
                .scale(c64(c, 0.0))
                .add(&init_ops.ly.scale(c64(s, 0.0)))
                .expect("same dimension");
            let ly = init_ops
                .ly
                .scale(c64(c, 0.0))
                .sub(&init_ops.lx.scale(c64(s, 0.0)))
                .expect("same dimension");
            let ops = GeneratorTriple::new(lx, ly, init_ops.lz.clone()).expect("same dimension");
            OperatorSample { t, ops }
        })
        .collect();
    Ok(HeisenbergTrajectory {
        method: SolutionMethod::ClosedForm,
        rate: spec.omega(),
        samples,
    })
}

/// Integrates the operator equations dL_x/dt = ω·L_y, dL_y/dt = −ω·L_x,
/// dL_z/dt = 0 with classical fixed-step RK4 on the matrix pair.
pub fn heisenberg_integrate(
    init_ops: &GeneratorTriple,
    spec: &PrecessionSpec,
) -> Result<HeisenbergTrajectory> {
    validate_initial_ops(init_ops)?;
    let omega = spec.omega();
    let grid = spec.time_grid();
    let mut lx = init_ops.lx.clone();
    let mut ly = init_ops.ly.clone();
    let mut samples = Vec::with_capacity(grid.len());
    for (k, &t) in grid.iter().enumerate() {
        if k > 0 {
            let h = t - grid[k - 1];
            (lx, ly) = rk4_pair_step(&lx, &ly, omega, h);
        }
        let ops = GeneratorTriple::new(lx.clone(), ly.clone(), init_ops.lz.clone())
            .expect("same dimension");
        samples.push(OperatorSample { t, ops });
    }
    Ok(HeisenbergTrajectory {
        method: SolutionMethod::Integrated,
        rate: omega,
        samples,
    })
}

/// One RK4 step of the coupled pair (dX/dt, dY/dt) = (ωY, −ωX).
fn rk4_pair_step(x: &ComplexMatrix, y: &ComplexMatrix, omega: f64, h: f64) -> (ComplexMatrix, ComplexMatrix) {
    let f = |x: &ComplexMatrix, y: &ComplexMatrix| -> (ComplexMatrix, ComplexMatrix) {
        (y.scale(c64(omega, 0.0)), x.scale(c64(-omega, 0.0)))
    };
    let shift = |x: &ComplexMatrix, y: &ComplexMatrix, kx: &ComplexMatrix, ky: &ComplexMatrix, s: f64| {
        (
            x.add(&kx.scale(c64(s, 0.0))).expect("same dimension"),
            y.add(&ky.scale(c64(s, 0.0))).expect("same dimension"),
        )
    };
    let (k1x, k1y) = f(x, y);
    let (x2, y2) = shift(x, y, &k1x, &k1y, 0.5 * h);
    let (k2x, k2y) = f(&x2, &y2);
    let (x3, y3) = shift(x, y, &k2x, &k2y, 0.5 * h);
    let (k3x, k3y) = f(&x3, &y3);
    let (x4, y4) = shift(x, y, &k3x, &k3y, h);
    let (k4x, k4y) = f(&x4, &y4);
    let combine = |k1: &ComplexMatrix, k2: &ComplexMatrix, k3: &ComplexMatrix, k4: &ComplexMatrix, base: &ComplexMatrix| {
        base.add(&k1.add(k4).expect("same dimension").scale(c64(h / 6.0, 0.0)))
            .and_then(|m| m.add(&k2.add(k3).expect("same dimension").scale(c64(h / 3.0, 0.0))))
            .expect("same dimension")
    };
    (combine(&k1x, &k2x, &k3x, &k4x, x), combine(&k1y, &k2y, &k3y, &k4y, y))
}

/// ⟨ψ|M|ψ⟩ for a 3-component state.
pub fn expectation(psi: &[Complex64; 3], m: &ComplexMatrix) -> Complex64 {
    let image = m.matvec(psi).expect("3-vector against 3x3");
    psi.iter().zip(&image).map(|(a, b)| a.conj() * b).sum()
}
