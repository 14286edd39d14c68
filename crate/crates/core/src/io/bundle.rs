//! A code bundle: a JSON manifest next to one matrix file per sector.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{read_matrix, write_matrix, MatrixFormat};
use crate::distance::{DistanceResult, SearchConfig};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::report::{MeasuredParams, Prediction};
use crate::stabilizer::{CodeForm, CssCheckMatrix, StabilizerCode, SymplecticCheckMatrix};

pub const BUNDLE_SCHEMA: &str = "qhp-bundle/1";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Either code representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCode {
    Css(CssCheckMatrix),
    Symplectic(SymplecticCheckMatrix),
}

impl AnyCode {
    /// Sector matrices by their file stem: `g_x`, `g_z` or `a_x`, `a_z`.
    pub fn sectors(&self) -> [(&'static str, &BitMatrix); 2] {
        match self {
            AnyCode::Css(c) => [("g_x", c.g_x()), ("g_z", c.g_z())],
            AnyCode::Symplectic(s) => [("a_x", s.a_x()), ("a_z", s.a_z())],
        }
    }
}

macro_rules! delegate {
    ($self:ident, $c:ident => $e:expr) => {
        match $self {
            AnyCode::Css($c) => $e,
            AnyCode::Symplectic($c) => $e,
        }
    };
}

impl StabilizerCode for AnyCode {
    fn n(&self) -> usize {
        delegate!(self, c => c.n())
    }

    fn k(&self) -> usize {
        delegate!(self, c => c.k())
    }

    fn generator_weight(&self) -> usize {
        delegate!(self, c => c.generator_weight())
    }

    fn to_symplectic(&self) -> SymplecticCheckMatrix {
        delegate!(self, c => c.to_symplectic())
    }

    fn distance(&self, cfg: &SearchConfig) -> DistanceResult {
        delegate!(self, c => c.distance(cfg))
    }

    fn form(&self) -> CodeForm {
        delegate!(self, c => c.form())
    }

    fn sector_ranks(&self) -> Option<(usize, usize)> {
        delegate!(self, c => c.sector_ranks())
    }
}

/// Family name and its arguments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub family: String,
    pub args: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch.
    pub created_unix: u64,
}

impl Metadata {
    pub fn now(seed: Option<u64>) -> Self {
        Metadata {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            created_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub form: CodeForm,
    pub construction: Construction,
    pub n: usize,
    pub format: MatrixFormat,
    /// Sector name to file name, relative to the bundle directory.
    pub files: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<Prediction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<MeasuredParams>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub manifest: Manifest,
    pub code: AnyCode,
}

impl Bundle {
    pub fn new(
        code: AnyCode,
        construction: Construction,
        predicted: Option<Prediction>,
        measured: Option<MeasuredParams>,
        format: MatrixFormat,
        metadata: Metadata,
    ) -> Self {
        let files = code
            .sectors()
            .iter()
            .map(|(name, _)| (name.to_string(), format!("{name}.{}", format.extension())))
            .collect();
        Bundle {
            manifest: Manifest {
                schema: BUNDLE_SCHEMA.to_string(),
                form: code.form(),
                construction,
                n: code.n(),
                format,
                files,
                predicted,
                measured,
                metadata,
            },
            code,
        }
    }
}

pub fn write_bundle(dir: &Path, bundle: &Bundle) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, m) in bundle.code.sectors() {
        let file = &bundle.manifest.files[name];
        write_matrix(&dir.join(file), m, bundle.manifest.format)?;
    }
    let json = serde_json::to_string_pretty(&bundle.manifest)?;
    std::fs::write(dir.join(MANIFEST_FILE), json + "\n")?;
    Ok(())
}

/// Reads a bundle from its directory or from the manifest path.
pub fn read_bundle(path: &Path) -> Result<Bundle> {
    let (dir, manifest_path) = if path.is_dir() {
        (path.to_path_buf(), path.join(MANIFEST_FILE))
    } else {
        let dir = path
            .parent()
            .map_or_else(|| Path::new(".").to_path_buf(), Path::to_path_buf);
        (dir, path.to_path_buf())
    };
    let manifest: Manifest = serde_json::from_str(&std::fs::read_to_string(&manifest_path)?)?;
    if manifest.schema != BUNDLE_SCHEMA {
        return Err(Error::Parse(format!(
            "unsupported bundle schema {:?}",
            manifest.schema
        )));
    }
    let load = |name: &str| -> Result<BitMatrix> {
        let file = manifest
            .files
            .get(name)
            .ok_or_else(|| Error::Parse(format!("manifest lists no {name} file")))?;
        let m = read_matrix(&dir.join(file), manifest.format)?;
        // A matrix without rows carries no column count in txt01.
        Ok(if m.rows() == 0 {
            BitMatrix::zeros(0, manifest.n)
        } else {
            m
        })
    };
    let code = match manifest.form {
        CodeForm::Css => AnyCode::Css(CssCheckMatrix::new(load("g_x")?, load("g_z")?)?),
        CodeForm::Symplectic => {
            AnyCode::Symplectic(SymplecticCheckMatrix::new(load("a_x")?, load("a_z")?)?)
        }
    };
    if code.n() != manifest.n {
        return Err(Error::Parse(format!(
            "manifest says n = {} but the matrices have {} columns",
            manifest.n,
            code.n()
        )));
    }
    Ok(Bundle { manifest, code })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{canonical_toric, non_bipartite_rotated, PeriodicityVectors};

    fn construction() -> Construction {
        Construction {
            family: "test".into(),
            args: serde_json::json!({}),
        }
    }

    #[test]
    fn round_trips_both_forms_and_formats() {
        let dir = tempfile::tempdir().unwrap();
        let css = AnyCode::Css(canonical_toric(3, 4).unwrap());
        let v = PeriodicityVectors::new((2, 1), (-1, 2)).unwrap();
        let sym = AnyCode::Symplectic(non_bipartite_rotated(&v).unwrap());
        for (i, code) in [css, sym].into_iter().enumerate() {
            for format in [MatrixFormat::Alist, MatrixFormat::Txt01] {
                let path = dir.path().join(format!("b{i}-{}", format.extension()));
                let b = Bundle::new(
                    code.clone(),
                    construction(),
                    None,
                    None,
                    format,
                    Metadata::now(Some(3)),
                );
                write_bundle(&path, &b).unwrap();
                let back = read_bundle(&path).unwrap();
                assert_eq!(back.code, code);
                assert_eq!(back.manifest, b.manifest);
                let via_manifest = read_bundle(&path.join(MANIFEST_FILE)).unwrap();
                assert_eq!(via_manifest.code, code);
            }
        }
    }

    #[test]
    fn empty_sector_round_trips_in_txt01() {
        let dir = tempfile::tempdir().unwrap();
        let code = AnyCode::Css(
            CssCheckMatrix::new(
                BitMatrix::from_dense(&[[1u8, 1, 0]]),
                BitMatrix::zeros(0, 3),
            )
            .unwrap(),
        );
        let b = Bundle::new(
            code.clone(),
            construction(),
            None,
            None,
            MatrixFormat::Txt01,
            Metadata::now(None),
        );
        write_bundle(dir.path(), &b).unwrap();
        assert_eq!(read_bundle(dir.path()).unwrap().code, code);
    }

    #[test]
    fn rejects_wrong_schema() {
        let dir = tempfile::tempdir().unwrap();
        let b = Bundle::new(
            AnyCode::Css(canonical_toric(2, 2).unwrap()),
            construction(),
            None,
            None,
            MatrixFormat::Alist,
            Metadata::now(None),
        );
        write_bundle(dir.path(), &b).unwrap();
        let path = dir.path().join(MANIFEST_FILE);
        let text = std::fs::read_to_string(&path)
            .unwrap()
            .replace(BUNDLE_SCHEMA, "other/9");
        std::fs::write(&path, text).unwrap();
        assert!(matches!(read_bundle(dir.path()), Err(Error::Parse(_))));
    }
}
