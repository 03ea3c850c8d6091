//! Registry of the benchmark networks and their on-disk layout.
//!
//! Each dataset lives in `<data dir>/<name>/`. The data directory is taken
//! from `ALPHACENT_DATA` when set, else the `datasets/` directory of this
//! repository.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evaluation::GroundTruth;
use crate::formats::{load_edge_list, load_gml};
use crate::graph::Graph;
use crate::scalar::Scalar;

pub const DATA_DIR_ENV: &str = "ALPHACENT_DATA";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFormat {
    EdgeList { directed: bool, weighted: bool },
    Gml,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelSource {
    /// A `node<TAB>class` file next to the graph.
    File(&'static str),
    /// A node attribute of the graph file.
    Attribute(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DatasetSpec {
    pub name: &'static str,
    pub provenance: &'static str,
    pub graph_file: &'static str,
    pub format: GraphFormat,
    pub labels: LabelSource,
    /// Replace `A` with `A + Aᵀ` after loading.
    pub symmetrize: bool,
}

pub const DATASETS: &[DatasetSpec] = &[
    DatasetSpec {
        name: "karate",
        provenance: "Zachary (1977), karate club friendship network; factions after the club split",
        graph_file: "karate.edges",
        format: GraphFormat::EdgeList {
            directed: false,
            weighted: false,
        },
        labels: LabelSource::File("karate.labels"),
        symmetrize: false,
    },
    DatasetSpec {
        name: "florentine",
        provenance:
            "Padgett and Ansell (1993), Florentine families: marriage and business ties, parties",
        graph_file: "florentine.edges",
        format: GraphFormat::EdgeList {
            directed: true,
            weighted: false,
        },
        labels: LabelSource::File("florentine.labels"),
        symmetrize: true,
    },
    DatasetSpec {
        name: "football",
        provenance: "Girvan and Newman (2002), NCAA Division I-A 2000 season games; conferences",
        graph_file: "football.gml",
        format: GraphFormat::Gml,
        labels: LabelSource::Attribute("value"),
        symmetrize: false,
    },
    DatasetSpec {
        name: "polbooks",
        provenance: "Krebs, US political books co-purchased on Amazon (2004); leaning l/n/c",
        graph_file: "polbooks.gml",
        format: GraphFormat::Gml,
        labels: LabelSource::Attribute("value"),
        symmetrize: false,
    },
];

pub fn find(name: &str) -> Result<&'static DatasetSpec> {
    DATASETS
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownDataset(name.to_string()))
}

/// The dataset directory in effect.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../datasets"),
    }
}

/// A loaded dataset with its ground truth.
#[derive(Clone, Debug)]
pub struct Dataset<T> {
    pub spec: &'static DatasetSpec,
    pub graph: Graph<T>,
    pub truth: GroundTruth,
}

impl DatasetSpec {
    pub fn graph_path(&self, dir: &Path) -> PathBuf {
        dir.join(self.name).join(self.graph_file)
    }

    pub fn is_installed(&self, dir: &Path) -> bool {
        self.graph_path(dir).is_file()
    }

    fn read(&self, path: &Path) -> Result<String> {
        fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::DatasetMissing {
                name: self.name.to_string(),
                path: path.display().to_string(),
            },
            _ => Error::Io(e),
        })
    }

    pub fn load<T: Scalar>(&'static self, dir: &Path) -> Result<Dataset<T>> {
        let text = self.read(&self.graph_path(dir))?;
        let mut graph = match self.format {
            GraphFormat::EdgeList { directed, weighted } => {
                load_edge_list(&text, directed, weighted)?
            }
            GraphFormat::Gml => load_gml(&text)?,
        };
        let truth = match self.labels {
            LabelSource::File(file) => {
                GroundTruth::parse(&self.read(&dir.join(self.name).join(file))?)?
            }
            LabelSource::Attribute(key) => GroundTruth::from_attribute(&graph, key)?,
        };
        if self.symmetrize {
            graph = graph.symmetrize();
        }
        Ok(Dataset {
            spec: self,
            graph,
            truth,
        })
    }
}

/// Loads a registered dataset from [`data_dir`].
pub fn load<T: Scalar>(name: &str) -> Result<Dataset<T>> {
    find(name)?.load(&data_dir())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatasetInfo {
    pub name: &'static str,
    pub provenance: &'static str,
    pub installed: bool,
    pub nodes: Option<usize>,
    pub links: Option<usize>,
    pub labeled_nodes: Option<usize>,
    pub excluded_nodes: Option<usize>,
}

/// Every registered dataset with its size when installed in `dir`.
pub fn list_datasets(dir: &Path) -> Vec<DatasetInfo> {
    DATASETS
        .iter()
        .map(|spec| {
            let loaded = spec.load::<f64>(dir).ok();
            DatasetInfo {
                name: spec.name,
                provenance: spec.provenance,
                installed: loaded.is_some(),
                nodes: loaded.as_ref().map(|d| d.graph.node_count()),
                links: loaded.as_ref().map(|d| d.graph.link_count()),
                labeled_nodes: loaded.as_ref().map(|d| d.truth.labels.len()),
                excluded_nodes: loaded.as_ref().map(|d| d.truth.excluded.len()),
            }
        })
        .collect()
}
