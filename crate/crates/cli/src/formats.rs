//! JSON forms of basis sets and bound reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use steerbound_core::bases::{BasisSet, ORTHONORMAL_TOL_EXTERNAL};
use steerbound_core::numerics::CVector;
use steerbound_core::steering::SteeringBounds;
use steerbound_core::Complex64;

use crate::CliError;

/// On-disk basis set: `vectors[x][a][k] = [re, im]`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    dim: usize,
    settings: usize,
    vectors: Vec<Vec<Vec<[f64; 2]>>>,
}

pub fn basis_to_json(b: &BasisSet) -> String {
    let file = BasisFile {
        dim: b.dim(),
        settings: b.settings(),
        vectors: b
            .vectors()
            .iter()
            .map(|basis| {
                basis
                    .iter()
                    .map(|v| v.as_slice().iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

/// Parses and validates a basis file. Orthonormality is checked to 1e-8 and
/// violations name the offending `(x, a, b)`.
pub fn basis_from_json(text: &str) -> Result<BasisSet, CliError> {
    let file: BasisFile = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("malformed basis JSON: {e}")))?;
    if file.vectors.len() != file.settings {
        return Err(CliError::Input(format!(
            "\"settings\" is {} but {} bases are listed",
            file.settings,
            file.vectors.len()
        )));
    }
    let mut vectors = Vec::with_capacity(file.settings);
    for (x, basis) in file.vectors.into_iter().enumerate() {
        if basis.len() != file.dim {
            return Err(CliError::Input(format!(
                "basis {x} has {} vectors but \"dim\" is {}",
                basis.len(),
                file.dim
            )));
        }
        let mut parsed = Vec::with_capacity(file.dim);
        for (a, comps) in basis.into_iter().enumerate() {
            if comps.len() != file.dim {
                return Err(CliError::Input(format!(
                    "vector (x={x}, a={a}) has {} components but \"dim\" is {}",
                    comps.len(),
                    file.dim
                )));
            }
            let entries = comps
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect();
            parsed.push(CVector::new(entries)?);
        }
        vectors.push(parsed);
    }
    Ok(BasisSet::with_tolerance(vectors, ORTHONORMAL_TOL_EXTERNAL)?)
}

pub fn read_basis_file(path: &Path) -> Result<BasisSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    basis_from_json(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[derive(Serialize)]
struct BoundsReport {
    n_settings: usize,
    s_q: f64,
    bound_theorem: f64,
    bound_weak: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound_toeplitz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs_exact: Option<f64>,
    v_q_theorem: f64,
    v_q_weak: f64,
}

/// Pretty JSON with the field names of [`SteeringBounds`]; absent optional
/// values are left out.
pub fn bounds_to_json(b: &SteeringBounds) -> String {
    let report = BoundsReport {
        n_settings: b.n_settings,
        s_q: b.s_q,
        bound_theorem: b.bound_theorem,
        bound_weak: b.bound_weak,
        bound_toeplitz: b.bound_toeplitz,
        lhs_exact: b.lhs_exact,
        v_q_theorem: b.v_q_theorem,
        v_q_weak: b.v_q_weak,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("plain data serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use steerbound_core::bases::generate_mub_prime;

    #[test]
    fn basis_round_trip() {
        let b = generate_mub_prime(3).unwrap();
        let back = basis_from_json(&basis_to_json(&b)).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = basis_from_json("{\"dim\": 2,\n \"settings\": }").unwrap_err();
        let CliError::Input(msg) = err else {
            panic!("{err:?}")
        };
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn shape_mismatches() {
        let bad = r#"{"dim": 2, "settings": 2, "vectors": [[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
        assert!(matches!(basis_from_json(bad), Err(CliError::Input(_))));
        let bad = r#"{"dim": 2, "settings": 1, "vectors": [[[[1,0],[0,0]],[[0,0]]]]}"#;
        assert!(matches!(basis_from_json(bad), Err(CliError::Input(_))));
    }

    #[test]
    fn orthonormality_violation_names_indices() {
        let bad = r#"{"dim": 2, "settings": 1, "vectors": [[[[1,0],[0,0]],[[0.1,0],[1,0]]]]}"#;
        let CliError::Input(msg) = basis_from_json(bad).unwrap_err() else {
            panic!()
        };
        assert!(
            msg.contains("x=0") && msg.contains("a=0") && msg.contains("b=1"),
            "{msg}"
        );
    }

    #[test]
    fn loose_tolerance_for_files() {
        let ok = r#"{"dim": 2, "settings": 1, "vectors": [[[[1,0],[0,0]],[[1e-9,0],[1,0]]]]}"#;
        assert!(basis_from_json(ok).is_ok());
    }

    #[test]
    fn optional_bounds_are_omitted() {
        let b = generate_mub_prime(2).unwrap();
        let bounds = SteeringBounds::evaluate(&b, None, 1e-9, None).unwrap();
        let json = bounds_to_json(&bounds);
        assert!(!json.contains("lhs_exact") && !json.contains("null"));
        assert!(json.contains("\"bound_theorem\""));
    }
}
