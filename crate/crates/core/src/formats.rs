//! On-disk JSON shapes shared by the command-line tool and test fixtures.
//!
//! Rationals travel as canonical strings ("3/2", "-4"), matrices as
//! row-major nested arrays, indices 0-based throughout.

use crate::algebra::{
    check_bimodule_axioms, corner_scalar_bimodule, natural_bimodule, regular_bimodule, Bimodule,
    BlockPartition,
};
use crate::decompose::{DecompositionTrace, StepReport};
use crate::error::Error;
use crate::linalg::{Matrix, Rational};
use crate::maps::LinearMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::path::Path;
use std::sync::Arc;

/// Where a map's module comes from: a built-in family or a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleSpec {
    Natural,
    Regular,
    CornerScalar,
    Custom(String),
}

impl BimoduleSpec {
    /// Builds the module this spec names over `p`. Custom files are
    /// axiom-checked on load.
    pub fn resolve(&self, p: &BlockPartition) -> crate::Result<Arc<Bimodule>> {
        let m = match self {
            BimoduleSpec::Natural => natural_bimodule(p),
            BimoduleSpec::Regular => regular_bimodule(p),
            BimoduleSpec::CornerScalar => corner_scalar_bimodule(p)?,
            BimoduleSpec::Custom(path) => load_custom(Path::new(path), p)?,
        };
        Ok(Arc::new(m))
    }
}

impl Serialize for BimoduleSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BimoduleSpec::Natural => s.serialize_str("natural"),
            BimoduleSpec::Regular => s.serialize_str("regular"),
            BimoduleSpec::CornerScalar => s.serialize_str("corner_scalar"),
            BimoduleSpec::Custom(path) => {
                use serde::ser::SerializeMap;
                let mut map = s.serialize_map(Some(1))?;
                map.serialize_entry("custom", path)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for BimoduleSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Custom { custom: String },
        }
        match Raw::deserialize(d)? {
            Raw::Name(name) => match name.as_str() {
                "natural" => Ok(BimoduleSpec::Natural),
                "regular" => Ok(BimoduleSpec::Regular),
                "corner_scalar" => Ok(BimoduleSpec::CornerScalar),
                other => Err(D::Error::custom(format!("unknown bimodule `{other}`"))),
            },
            Raw::Custom { custom } => Ok(BimoduleSpec::Custom(custom)),
        }
    }
}

/// A serialized linear map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub partition: BlockPartition,
    pub bimodule: BimoduleSpec,
    /// One image vector per canonical basis element, in basis order.
    pub images: Vec<Vec<Rational>>,
}

impl MapFile {
    pub fn from_map(f: &LinearMap, spec: BimoduleSpec) -> MapFile {
        MapFile {
            partition: f.partition().clone(),
            bimodule: spec,
            images: f.images().to_vec(),
        }
    }

    /// Rebuilds the map, resolving the module spec against the stored
    /// partition.
    pub fn into_map(&self) -> crate::Result<LinearMap> {
        let m = self.bimodule.resolve(&self.partition)?;
        LinearMap::new(m, self.images.clone())
    }
}

/// Several maps in one file, as written by the sampler.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapsFile {
    pub maps: Vec<MapFile>,
}

/// A serialized bimodule over a partition supplied out of band: per basis
/// element one left and one right action matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub dim: usize,
    pub left: Vec<Vec<Vec<Rational>>>,
    pub right: Vec<Vec<Vec<Rational>>>,
}

fn matrix_rows(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

impl BimoduleFile {
    pub fn from_bimodule(m: &Bimodule) -> BimoduleFile {
        let count = m.basis().len();
        BimoduleFile {
            dim: m.dim(),
            left: (0..count).map(|i| matrix_rows(m.left(i))).collect(),
            right: (0..count).map(|i| matrix_rows(m.right(i))).collect(),
        }
    }

    /// Shape-checks and assembles without verifying the bimodule axioms.
    pub fn into_bimodule(
        &self,
        p: &BlockPartition,
        label: impl Into<String>,
    ) -> crate::Result<Bimodule> {
        let to_matrices = |src: &[Vec<Vec<Rational>>]| -> crate::Result<Vec<Matrix<Rational>>> {
            src.iter().map(|rows| Matrix::from_rows(rows.clone())).collect()
        };
        Bimodule::from_actions(
            p.clone(),
            self.dim,
            to_matrices(&self.left)?,
            to_matrices(&self.right)?,
            label,
        )
    }
}

/// Loads a custom bimodule file without the axiom gate; the axiom report
/// command uses this to show violations instead of refusing the file.
pub fn load_custom_unchecked(path: &Path, p: &BlockPartition) -> crate::Result<Bimodule> {
    let text = std::fs::read_to_string(path)?;
    let file: BimoduleFile = serde_json::from_str(&text)?;
    file.into_bimodule(p, format!("custom({})", path.display()))
}

/// Loads a custom bimodule file and rejects it unless all four bimodule
/// axioms hold.
pub fn load_custom(path: &Path, p: &BlockPartition) -> crate::Result<Bimodule> {
    let m = load_custom_unchecked(path, p)?;
    check_bimodule_axioms(&m).into_result()?;
    Ok(m)
}

/// One recursion level of a decomposition, as serialized.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceEntry {
    #[serde(rename = "B")]
    pub b: Vec<Rational>,
    pub sub_dim: usize,
}

/// Full decomposition output: the two components, the per-level trace,
/// and the identity checks run on the input.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionFile {
    pub d: MapFile,
    pub alpha: MapFile,
    pub trace: Vec<TraceEntry>,
    pub checks: StepReport,
}

impl DecompositionFile {
    pub fn new(
        d: MapFile,
        alpha: MapFile,
        trace: &DecompositionTrace,
        checks: StepReport,
    ) -> DecompositionFile {
        DecompositionFile {
            d,
            alpha,
            trace: trace
                .levels
                .iter()
                .map(|l| TraceEntry { b: l.b.clone(), sub_dim: l.sub_dim })
                .collect(),
            checks,
        }
    }
}

/// Reads a map file from disk.
pub fn read_map_file(path: &Path) -> crate::Result<MapFile> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Canonical serialization: pretty JSON, struct key order, trailing
/// newline. Identical values always produce identical bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> crate::Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}
