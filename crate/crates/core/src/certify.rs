//! Independent re-checking of drawings using only the exact predicates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{self, GeomError, GridPoint, Segment};
use crate::graph::{Edge, LayeredInstance, MappingMode};
use crate::mapped::SimultaneousEmbedding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    LayerCrossing,
    CollinearTriple,
    OutOfBounds,
    DuplicatePoint,
    BadBijection,
}

/// One failed check. Witness meaning by kind: edge indices within `layer`
/// for crossings, point indices for collinear triples and duplicates, vertex
/// indices for bounds, and vertex indices of `layer` for bijection faults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer: Option<usize>,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CertificateReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl CertificateReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn merge(mut self, other: CertificateReport) -> Self {
        self.violations.extend(other.violations);
        self.ok = self.violations.is_empty();
        self
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("arity mismatch: {0}")]
    Arity(String),
}

/// Re-checks a drawing against the instance it claims to solve.
///
/// Only same-layer edge pairs are compared. Edges are taken from `inst`, so
/// augmentation edges an embedder may have used are never certified.
pub fn certify_embedding(
    e: &SimultaneousEmbedding,
    inst: &LayeredInstance,
    bounds: Option<(i64, i64)>,
) -> Result<CertificateReport, CertifyError> {
    let n = inst.n;
    if e.coords.len() != n {
        return Err(CertifyError::Arity(format!("{} coordinates for {n} vertices", e.coords.len())));
    }
    geom::check_budget_all(&e.coords)?;
    let maps: Vec<Vec<usize>> = match (inst.mapping, &e.assignment) {
        (MappingMode::Given, None) => vec![(0..n).collect(); inst.layers.len()],
        (MappingMode::Given, Some(_)) => {
            return Err(CertifyError::Arity("given-mapping drawing carries an assignment".into()))
        }
        (MappingMode::Free, None) => return Err(CertifyError::Arity("free-mapping drawing lacks an assignment".into())),
        (MappingMode::Free, Some(a)) => {
            if a.maps.len() != inst.layers.len() {
                return Err(CertifyError::Arity(format!(
                    "{} assignments for {} layers",
                    a.maps.len(),
                    inst.layers.len()
                )));
            }
            a.maps.clone()
        }
    };

    let mut violations = duplicate_violations(&e.coords);
    for (layer, map) in maps.iter().enumerate() {
        violations.extend(bijection_violations(layer, map, n));
    }
    let crossings: Vec<Vec<Violation>> = inst
        .layers
        .par_iter()
        .enumerate()
        .map(|(i, l)| layer_crossings(i, &l.edges, &maps[i], &e.coords))
        .collect();
    violations.extend(crossings.into_iter().flatten());
    let mut report = CertificateReport::from_violations(violations);
    if let Some((w, h)) = bounds {
        report = report.merge(certify_bounds(e, w, h));
    }
    Ok(report)
}

fn duplicate_violations(coords: &[GridPoint]) -> Vec<Violation> {
    let mut idx: Vec<usize> = (0..coords.len()).collect();
    idx.sort_by_key(|&i| (coords[i], i));
    idx.windows(2)
        .filter(|w| coords[w[0]] == coords[w[1]])
        .map(|w| Violation {
            kind: ViolationKind::DuplicatePoint,
            layer: None,
            witness: vec![w[0].min(w[1]), w[0].max(w[1])],
        })
        .collect()
}

fn bijection_violations(layer: usize, map: &[usize], n: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    if map.len() != n {
        out.push(Violation {
            kind: ViolationKind::BadBijection,
            layer: Some(layer),
            witness: vec![map.len()],
        });
        return out;
    }
    let mut owner = vec![usize::MAX; n];
    for (v, &pt) in map.iter().enumerate() {
        if pt >= n {
            out.push(Violation {
                kind: ViolationKind::BadBijection,
                layer: Some(layer),
                witness: vec![v],
            });
        } else if owner[pt] != usize::MAX {
            out.push(Violation {
                kind: ViolationKind::BadBijection,
                layer: Some(layer),
                witness: vec![owner[pt], v],
            });
        } else {
            owner[pt] = v;
        }
    }
    out
}

fn layer_crossings(layer: usize, edges: &[Edge], map: &[usize], coords: &[GridPoint]) -> Vec<Violation> {
    let point = |v: usize| map.get(v).and_then(|&p| coords.get(p)).copied();
    // Edges with an unmapped or degenerate endpoint are already reported elsewhere.
    let segs: Vec<Option<Segment>> = edges
        .iter()
        .map(|&(a, b)| Segment::new(point(a)?, point(b)?).ok())
        .collect();
    let mut out = Vec::new();
    for i in 0..segs.len() {
        let Some(si) = &segs[i] else { continue };
        for (j, sj) in segs.iter().enumerate().skip(i + 1) {
            if let Some(sj) = sj {
                if geom::segments_conflict(si, sj) {
                    out.push(Violation {
                        kind: ViolationKind::LayerCrossing,
                        layer: Some(layer),
                        witness: vec![i, j],
                    });
                }
            }
        }
    }
    out
}

/// Reports the first collinear triple, or all of them with `full`.
/// Duplicate points are reported instead when present.
pub fn certify_general_position(points: &[GridPoint], full: bool) -> Result<CertificateReport, CertifyError> {
    geom::check_budget_all(points)?;
    let dups = duplicate_violations(points);
    if !dups.is_empty() {
        return Ok(CertificateReport::from_violations(dups));
    }
    let triples = if full {
        geom::all_collinear_triples(points)?
    } else {
        geom::find_collinear_triple(points)?.into_iter().collect()
    };
    Ok(CertificateReport::from_violations(
        triples
            .into_iter()
            .map(|(a, b, c)| Violation {
                kind: ViolationKind::CollinearTriple,
                layer: None,
                witness: vec![a, b, c],
            })
            .collect(),
    ))
}

/// Checks that every vertex lies in `[1, w] x [1, h]` once the minimum
/// corner is translated to `(1, 1)`.
pub fn certify_bounds(e: &SimultaneousEmbedding, w: i64, h: i64) -> CertificateReport {
    let min_x = e.coords.iter().map(|p| p.x).min().unwrap_or(1);
    let min_y = e.coords.iter().map(|p| p.y).min().unwrap_or(1);
    CertificateReport::from_violations(
        e.coords
            .iter()
            .enumerate()
            .filter(|(_, p)| p.x - min_x + 1 > w || p.y - min_y + 1 > h)
            .map(|(v, _)| Violation {
                kind: ViolationKind::OutOfBounds,
                layer: None,
                witness: vec![v],
            })
            .collect(),
    )
}
