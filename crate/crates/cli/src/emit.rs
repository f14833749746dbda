//! Output rendering. JSON and CSV emissions are contract-bound and
//! byte-deterministic for identical inputs; the table format is
//! human-aligned and may change shape between versions.
//!
//! Floats are serialized with Rust's shortest-round-trip formatting (also
//! what the JSON serializer uses), which reproduces every bit of the value
//! on re-parse.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use so3split_core::cmatrix::{Complex64, ComplexMatrix};
use so3split_core::dynamics::{HeisenbergTrajectory, SchrodingerTrajectory, SolutionMethod};
use so3split_core::repanalysis::{RepDecomposition, ResidualSymmetryReport};
use so3split_core::so3rep::{GeneratorTriple, SpinRep};
use so3split_core::zeeman::{LevelReport, Sublevel};

use crate::{CliError, CliResult, OutputArgs};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// One renderable payload, borrowed from the subcommand that produced it.
pub enum Emission<'a> {
    Triple(&'a GeneratorTriple),
    Rep(&'a SpinRep),
    Character { theta: f64, value: Complex64 },
    Decomposition(&'a RepDecomposition),
    Symmetry(&'a ResidualSymmetryReport),
    OrientationTrajectory(&'a SchrodingerTrajectory),
    OperatorTrajectory(&'a HeisenbergTrajectory),
    Zeeman(&'a [LevelReport]),
}

impl<'a> Emission<'a> {
    pub fn triple(gens: &'a GeneratorTriple) -> Self {
        Emission::Triple(gens)
    }

    pub fn spin_rep(rep: &'a SpinRep) -> Self {
        Emission::Rep(rep)
    }

    pub fn character(theta: f64, value: Complex64) -> Self {
        Emission::Character { theta, value }
    }

    pub fn decomposition(decomp: &'a RepDecomposition) -> Self {
        Emission::Decomposition(decomp)
    }

    pub fn symmetry(report: &'a ResidualSymmetryReport) -> Self {
        Emission::Symmetry(report)
    }

    pub fn orientation_trajectory(trajectory: &'a SchrodingerTrajectory) -> Self {
        Emission::OrientationTrajectory(trajectory)
    }

    pub fn operator_trajectory(trajectory: &'a HeisenbergTrajectory) -> Self {
        Emission::OperatorTrajectory(trajectory)
    }

    pub fn zeeman(reports: &'a [LevelReport]) -> Self {
        Emission::Zeeman(reports)
    }

    /// Renders in the requested format and writes to stdout or the
    /// requested file.
    pub fn write(self, out: &OutputArgs) -> CliResult {
        let text = self.render(out.format);
        match &out.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|err| CliError::Domain(format!("cannot write {}: {err}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Table => self.to_table(),
        }
    }

    fn to_json(&self) -> String {
        match self {
            Emission::Triple(gens) => json_doc(gens),
            Emission::Rep(rep) => json_doc(rep),
            Emission::Character { theta, value } => json_doc(&CharacterDoc {
                theta: *theta,
                character: [value.re, value.im],
            }),
            Emission::Decomposition(decomp) => json_doc(decomp),
            Emission::Symmetry(report) => json_doc(report),
            Emission::OrientationTrajectory(trajectory) => json_doc(&OrientationDoc {
                picture: "schrodinger",
                method: trajectory.method(),
                rate: trajectory.rate(),
                samples: trajectory.samples(),
            }),
            Emission::OperatorTrajectory(trajectory) => {
                let samples: Vec<OperatorRow<'_>> = trajectory
                    .samples()
                    .iter()
                    .map(|s| OperatorRow {
                        t: s.t,
                        lx: &s.ops.lx,
                        ly: &s.ops.ly,
                        lz: &s.ops.lz,
                    })
                    .collect();
                json_doc(&OperatorDoc {
                    picture: "heisenberg",
                    method: trajectory.method(),
                    rate: trajectory.rate(),
                    samples,
                })
            }
            Emission::Zeeman(reports) => {
                let rows: Vec<ZeemanRow<'_>> = reports.iter().map(ZeemanRow::from).collect();
                json_doc(&rows)
            }
        }
    }

    fn to_csv(&self) -> String {
        let mut text = String::new();
        match self {
            Emission::Triple(gens) => {
                text.push_str("op,entry_row,entry_col,re,im\n");
                for (name, m) in [("lx", &gens.lx), ("ly", &gens.ly), ("lz", &gens.lz)] {
                    matrix_csv_rows(&mut text, "", name, m);
                }
            }
            Emission::Rep(rep) => {
                text.push_str("op,entry_row,entry_col,re,im\n");
                let gens = rep.generators();
                for (name, m) in [("lx", &gens.lx), ("ly", &gens.ly), ("lz", &gens.lz)] {
                    matrix_csv_rows(&mut text, "", name, m);
                }
            }
            Emission::Character { theta, value } => {
                text.push_str("theta,re,im\n");
                let _ = writeln!(text, "{theta},{},{}", value.re, value.im);
            }
            Emission::Decomposition(decomp) => {
                text.push_str("two_l,l,mult\n");
                for &(label, mult) in decomp.blocks() {
                    let _ = writeln!(text, "{},{},{mult}", label.two_l(), label.l());
                }
            }
            Emission::Symmetry(report) => {
                text.push_str("generator,residual,survives,group\n");
                let group = report.group().ascii_label();
                for &(gen, residual) in report.residuals() {
                    let survives = u8::from(report.surviving().contains(&gen));
                    let _ = writeln!(text, "{},{residual},{survives},{group}", gen.name());
                }
            }
            Emission::OrientationTrajectory(trajectory) => {
                text.push_str("t,theta,phi,flag\n");
                for s in trajectory.samples() {
                    let _ = writeln!(
                        text,
                        "{},{},{},{}",
                        s.t,
                        s.theta,
                        s.phi,
                        u8::from(s.chart_degenerate)
                    );
                }
            }
            Emission::OperatorTrajectory(trajectory) => {
                text.push_str("t,op,entry_row,entry_col,re,im\n");
                for s in trajectory.samples() {
                    let t = format!("{},", s.t);
                    for (name, m) in [("lx", &s.ops.lx), ("ly", &s.ops.ly), ("lz", &s.ops.lz)] {
                        matrix_csv_rows(&mut text, &t, name, m);
                    }
                }
            }
            Emission::Zeeman(reports) => {
                text.push_str("n,l,m,field_gauss,energy_ev,spacing_ev\n");
                for report in *reports {
                    let spectrum = &report.spectrum;
                    for sub in spectrum.sublevels() {
                        let _ = writeln!(
                            text,
                            "{},{},{},{},{},{}",
                            spectrum.base().n(),
                            spectrum.base().l(),
                            sub.m,
                            spectrum.field_gauss(),
                            sub.energy_ev,
                            spectrum.spacing_ev()
                        );
                    }
                }
            }
        }
        text
    }

    fn to_table(&self) -> String {
        let mut text = String::new();
        match self {
            Emission::Triple(gens) => {
                let _ = writeln!(text, "generator triple on a {}-dimensional carrier", gens.dim());
                for (name, m) in [("L_x", &gens.lx), ("L_y", &gens.ly), ("L_z", &gens.lz)] {
                    let _ = writeln!(text, "{name}:");
                    text.push_str(&matrix_block(m));
                }
            }
            Emission::Rep(rep) => {
                let _ = writeln!(
                    text,
                    "spin-{} representation, {} basis (dim {})",
                    rep.label(),
                    rep.basis(),
                    rep.dim()
                );
                let gens = rep.generators();
                for (name, m) in [("L_x", &gens.lx), ("L_y", &gens.ly), ("L_z", &gens.lz)] {
                    let _ = writeln!(text, "{name}:");
                    text.push_str(&matrix_block(m));
                }
            }
            Emission::Character { theta, value } => {
                if value.im.abs() <= 1e-12 {
                    let _ = writeln!(text, "character(theta = {theta}) = {}", value.re);
                } else {
                    let _ = writeln!(
                        text,
                        "character(theta = {theta}) = {} {} {}i",
                        value.re,
                        if value.im < 0.0 { "-" } else { "+" },
                        value.im.abs()
                    );
                }
            }
            Emission::Decomposition(decomp) => {
                for &(label, mult) in decomp.blocks() {
                    let _ = writeln!(
                        text,
                        "l = {:<5} multiplicity {:<3} (block dim {})",
                        label.to_string(),
                        mult,
                        label.dimension()
                    );
                }
                let _ = writeln!(text, "total dim {}", decomp.total_dim());
            }
            Emission::Symmetry(report) => {
                let _ = writeln!(text, "{:<10} {:<24} survives", "generator", "commutator residual");
                for &(gen, residual) in report.residuals() {
                    let survives = if report.surviving().contains(&gen) { "yes" } else { "no" };
                    let _ = writeln!(text, "{:<10} {:<24} {survives}", gen.name(), format!("{residual:.3e}"));
                }
                let _ = writeln!(text, "residual group: {}", report.group().label());
            }
            Emission::OrientationTrajectory(trajectory) => {
                let _ = writeln!(
                    text,
                    "state-picture precession ({}), rate {}",
                    trajectory.method(),
                    trajectory.rate()
                );
                let _ = writeln!(text, "{:>22} {:>22} {:>22} {:>5}", "t", "theta", "phi", "flag");
                for s in trajectory.samples() {
                    let _ = writeln!(
                        text,
                        "{:>22} {:>22} {:>22} {:>5}",
                        s.t,
                        s.theta,
                        s.phi,
                        u8::from(s.chart_degenerate)
                    );
                }
            }
            Emission::OperatorTrajectory(trajectory) => {
                let _ = writeln!(
                    text,
                    "operator-picture precession ({}), rate {}",
                    trajectory.method(),
                    trajectory.rate()
                );
                for s in trajectory.samples() {
                    let _ = writeln!(text, "t = {}", s.t);
                    for (name, m) in [("L_x", &s.ops.lx), ("L_y", &s.ops.ly), ("L_z", &s.ops.lz)] {
                        let _ = writeln!(text, "{name}:");
                        text.push_str(&matrix_block(m));
                    }
                }
            }
            Emission::Zeeman(reports) => {
                for report in *reports {
                    let spectrum = &report.spectrum;
                    let _ = writeln!(
                        text,
                        "n = {}, l = {}, B = {} gauss: base {} eV, spacing {} eV",
                        spectrum.base().n(),
                        spectrum.base().l(),
                        spectrum.field_gauss(),
                        spectrum.base().energy_ev(),
                        spectrum.spacing_ev()
                    );
                    let _ = writeln!(text, "  residual group: {}", report.residual.group().label());
                    for sub in spectrum.sublevels() {
                        let _ = writeln!(text, "  m = {:>3}: {} eV", sub.m, sub.energy_ev);
                    }
                }
            }
        }
        text
    }
}

#[derive(Serialize)]
struct CharacterDoc {
    theta: f64,
    character: [f64; 2],
}

#[derive(Serialize)]
struct OrientationDoc<'a> {
    picture: &'static str,
    method: SolutionMethod,
    rate: f64,
    samples: &'a [so3split_core::dynamics::OrientationSample],
}

#[derive(Serialize)]
struct OperatorDoc<'a> {
    picture: &'static str,
    method: SolutionMethod,
    rate: f64,
    samples: Vec<OperatorRow<'a>>,
}

#[derive(Serialize)]
struct OperatorRow<'a> {
    t: f64,
    lx: &'a ComplexMatrix,
    ly: &'a ComplexMatrix,
    lz: &'a ComplexMatrix,
}

#[derive(Serialize)]
struct ZeemanRow<'a> {
    n: u32,
    l: u32,
    field_gauss: f64,
    base_energy_ev: f64,
    spacing_ev: f64,
    sublevels: &'a [Sublevel],
    residual_group: &'a str,
    decomposition: &'a RepDecomposition,
}

impl<'a> From<&'a LevelReport> for ZeemanRow<'a> {
    fn from(report: &'a LevelReport) -> Self {
        let spectrum = &report.spectrum;
        ZeemanRow {
            n: spectrum.base().n(),
            l: spectrum.base().l(),
            field_gauss: spectrum.field_gauss(),
            base_energy_ev: spectrum.base().energy_ev(),
            spacing_ev: spectrum.spacing_ev(),
            sublevels: spectrum.sublevels(),
            residual_group: report.residual.group().ascii_label(),
            decomposition: &report.decomposition,
        }
    }
}

fn json_doc<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("payloads are serializable");
    text.push('\n');
    text
}

/// Appends `prefix``op`,row,col,re,im lines for every entry, row-major.
fn matrix_csv_rows(text: &mut String, prefix: &str, op: &str, m: &ComplexMatrix) {
    for row in 0..m.dim() {
        for col in 0..m.dim() {
            let z = m.get(row, col);
            let _ = writeln!(text, "{prefix}{op},{row},{col},{},{}", z.re, z.im);
        }
    }
}

/// Fixed-precision aligned matrix block for table output.
fn matrix_block(m: &ComplexMatrix) -> String {
    let rendered: Vec<String> = (0..m.dim() * m.dim())
        .map(|k| {
            let z = m.get(k / m.dim(), k % m.dim());
            format!("{:.4}{:+.4}i", z.re, z.im)
        })
        .collect();
    let width = rendered.iter().map(String::len).max().unwrap_or(0);
    let mut text = String::new();
    for row in 0..m.dim() {
        text.push_str("  ");
        for col in 0..m.dim() {
            let cell = &rendered[row * m.dim() + col];
            let _ = write!(text, "{cell:>width$}");
            if col + 1 < m.dim() {
                text.push_str("  ");
            }
        }
        text.push('\n');
    }
    text
}
