//! JSON documents for instances and results.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::CertificateReport;
use crate::geom::GridPoint;
use crate::graph::{
    as_path, caterpillar_decompose, check_plane_embedding, default_labels, maximalize_outerplanar, Edge, GraphClass,
    GraphError, Layer, LayeredInstance, MappingMode,
};
use crate::mapped::{PointAssignment, SimultaneousEmbedding};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("layer {layer}: {source}")]
    Layer { layer: usize, source: GraphError },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDocument {
    pub class: GraphClass,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_cycle: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub n: usize,
    pub mapping: MappingMode,
    pub layers: Vec<LayerDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&LayeredInstance> for InstanceDocument {
    fn from(inst: &LayeredInstance) -> Self {
        let labels = (inst.vertex_labels != default_labels(inst.n)).then(|| inst.vertex_labels.clone());
        Self {
            n: inst.n,
            mapping: inst.mapping,
            layers: inst
                .layers
                .iter()
                .map(|l| LayerDocument {
                    class: l.class,
                    edges: l.edges.clone(),
                    rotation: l.rotation.clone(),
                    outer_cycle: l.outer_cycle.clone(),
                })
                .collect(),
            labels,
        }
    }
}

impl InstanceDocument {
    /// Builds and fully validates the instance.
    pub fn into_instance(self) -> Result<LayeredInstance, IoError> {
        if self.n == 0 {
            return Err(IoError::Invalid("instance needs at least one vertex".into()));
        }
        let vertex_labels = match self.labels {
            Some(l) if l.len() != self.n => {
                return Err(IoError::Invalid(format!("{} labels for {} vertices", l.len(), self.n)))
            }
            Some(l) => l,
            None => default_labels(self.n),
        };
        let layers: Vec<Layer> = self
            .layers
            .into_iter()
            .map(|d| Layer {
                class: d.class,
                edges: d.edges,
                rotation: d.rotation,
                outer_cycle: d.outer_cycle,
            })
            .collect();
        let inst = LayeredInstance {
            n: self.n,
            vertex_labels,
            layers,
            mapping: self.mapping,
        };
        validate_classes(&inst)?;
        Ok(inst)
    }
}

/// Structural and class checks for every layer.
pub fn validate_classes(inst: &LayeredInstance) -> Result<(), IoError> {
    inst.validate().map_err(|(layer, source)| IoError::Layer { layer, source })?;
    for (i, l) in inst.layers.iter().enumerate() {
        let wrap = |source| IoError::Layer { layer: i, source };
        match l.class {
            GraphClass::Path => as_path(l, inst.n).map(drop).map_err(wrap)?,
            GraphClass::Caterpillar => caterpillar_decompose(l, inst.n).map(drop).map_err(wrap)?,
            GraphClass::Outerplanar => maximalize_outerplanar(l, inst.n).map(drop).map_err(wrap)?,
            GraphClass::Planar => check_plane_embedding(l, inst.n).map(drop).map_err(wrap)?,
        }
    }
    Ok(())
}

pub fn parse_instance(text: &[u8]) -> Result<LayeredInstance, IoError> {
    serde_json::from_slice::<InstanceDocument>(text)?.into_instance()
}

pub fn serialize_instance(inst: &LayeredInstance) -> String {
    serde_json::to_string_pretty(&InstanceDocument::from(inst)).expect("instance documents always serialize")
}

/// Embedding output together with the instance it solves and its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub coords: Vec<GridPoint>,
    pub width: i64,
    pub height: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignments: Option<Vec<Vec<usize>>>,
    pub certificate: CertificateReport,
    pub instance: InstanceDocument,
}

impl ResultDocument {
    pub fn new(e: &SimultaneousEmbedding, inst: &LayeredInstance, certificate: CertificateReport) -> Self {
        Self {
            coords: e.coords.clone(),
            width: e.width,
            height: e.height,
            assignments: e.assignment.as_ref().map(|a| a.maps.clone()),
            certificate,
            instance: inst.into(),
        }
    }

    pub fn embedding(&self) -> SimultaneousEmbedding {
        SimultaneousEmbedding {
            coords: self.coords.clone(),
            layers: self.instance.layers.iter().map(|l| l.edges.clone()).collect(),
            width: self.width,
            height: self.height,
            assignment: self.assignments.clone().map(|maps| PointAssignment { maps }),
        }
    }
}

pub fn parse_result(text: &[u8]) -> Result<ResultDocument, IoError> {
    Ok(serde_json::from_slice(text)?)
}

pub fn serialize_result(doc: &ResultDocument) -> String {
    serde_json::to_string_pretty(doc).expect("result documents always serialize")
}
