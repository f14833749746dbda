//! Input-document loading. Representation inputs are accepted in two JSON
//! shapes: a full labeled representation (`{"two_l", "basis", "lx", "ly",
//! "lz"}`, validated exhaustively on deserialization) or a raw generator
//! triple (`{"lx", "ly", "lz"}`, checked for square matching dimensions on
//! load and for the algebraic invariants at the point of use).

use std::path::Path;

use so3split_core::cmatrix::ComplexMatrix;
use so3split_core::repanalysis::RepDecomposition;
use so3split_core::so3rep::{GeneratorTriple, SpinRep};

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|err| CliError::Domain(format!("cannot read {}: {err}", path.display())))
}

fn malformed(path: &Path, what: &str, detail: impl std::fmt::Display) -> CliError {
    CliError::Domain(format!("malformed input: {} is not {what}: {detail}", path.display()))
}

/// A representation input in either accepted shape.
pub enum RepDocument {
    Rep(SpinRep),
    Triple(GeneratorTriple),
}

/// Loads either document shape, preserving which one it was.
pub fn load_rep_document(path: &Path) -> Result<RepDocument, CliError> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|err| malformed(path, "a JSON document", err))?;
    // A labeled representation document carries "basis"; its deserializer
    // runs the full invariant suite and reports the violated invariant.
    // Anything else is read as a raw triple.
    if value.get("basis").is_some() {
        let rep: SpinRep = serde_json::from_value(value)
            .map_err(|err| malformed(path, "a valid representation document", err))?;
        return Ok(RepDocument::Rep(rep));
    }
    let triple: GeneratorTriple = serde_json::from_value(value)
        .map_err(|err| malformed(path, "a generator-triple document", err))?;
    // Re-run the constructor so dimension mismatches are caught here rather
    // than deep inside an operation.
    Ok(RepDocument::Triple(GeneratorTriple::new(triple.lx, triple.ly, triple.lz)?))
}

/// Loads either document shape and reduces it to its generator triple.
pub fn load_triple(path: &Path) -> Result<GeneratorTriple, CliError> {
    Ok(match load_rep_document(path)? {
        RepDocument::Rep(rep) => rep.generators().clone(),
        RepDocument::Triple(triple) => triple,
    })
}

/// Loads a full labeled representation (required where basis and parity
/// conventions matter).
pub fn load_spin_rep(path: &Path) -> Result<SpinRep, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|err| malformed(path, "a valid representation document", err))
}

/// Loads a bare complex matrix document (`{"dim", "entries"}`).
pub fn load_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|err| malformed(path, "a complex-matrix document", err))
}

/// Loads a decomposition document (`{"blocks", "total_dim"}`).
pub fn load_decomposition(path: &Path) -> Result<RepDecomposition, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|err| malformed(path, "a decomposition document", err))
}
