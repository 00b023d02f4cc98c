//! Layers, class validators and the structural reductions the embedders use.
//!
//! Vertices are plain indices `0..n`. A rotation system lists, for every
//! vertex, its neighbours in cyclic order; faces are traced by the rule
//! "arrive at `v` from `u`, leave towards the neighbour after `u` in
//! `rotation[v]`".

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{self, GridPoint};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph needs at least {needed} vertices, got {n}")]
    TooSmall { n: usize, needed: usize },
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("{class} layer requires a rotation system")]
    MissingRotation { class: GraphClass },
    #[error("{class} layer requires an outer cycle")]
    MissingOuterCycle { class: GraphClass },
    #[error("rotation at vertex {0} is not a cyclic order of its neighbours")]
    BadRotation(usize),
    #[error("outer cycle is not a permutation of the {0} vertices")]
    BadOuterCycle(usize),
    #[error("not a path: {0}")]
    NotAPath(&'static str),
    #[error("not a tree")]
    NotATree,
    #[error("not a caterpillar: spine vertex {0} has three or more spine neighbours")]
    NotACaterpillar(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation is not a plane embedding: V - E + F = {v} - {e} + {f} != 2")]
    EulerViolation { v: usize, e: usize, f: usize },
    #[error("chords {0:?} and {1:?} cross with respect to the outer cycle")]
    CrossingChords(Edge, Edge),
    #[error("no admissible chord in face {0:?}")]
    FaceWithoutChord(Vec<usize>),
    #[error("layer is not a triangulation: face {0:?} has length {1}")]
    NotTriangulated(Vec<usize>, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Path,
    Caterpillar,
    Outerplanar,
    Planar,
}

impl std::fmt::Display for GraphClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GraphClass::Path => "path",
            GraphClass::Caterpillar => "caterpillar",
            GraphClass::Outerplanar => "outerplanar",
            GraphClass::Planar => "planar",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MappingMode {
    Given,
    Free,
}

/// One graph of a layered instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub class: GraphClass,
    pub edges: Vec<Edge>,
    pub rotation: Option<Vec<Vec<usize>>>,
    pub outer_cycle: Option<Vec<usize>>,
}

impl Layer {
    pub fn new(class: GraphClass, edges: Vec<Edge>) -> Self {
        Self {
            class,
            edges,
            rotation: None,
            outer_cycle: None,
        }
    }

    pub fn with_rotation(mut self, rotation: Vec<Vec<usize>>) -> Self {
        self.rotation = Some(rotation);
        self
    }

    pub fn with_outer_cycle(mut self, cycle: Vec<usize>) -> Self {
        self.outer_cycle = Some(cycle);
        self
    }

    /// Simple-graph and class-requirement checks.
    pub fn validate(&self, n: usize) -> Result<(), GraphError> {
        check_simple(n, &self.edges)?;
        match self.class {
            GraphClass::Planar if self.rotation.is_none() => {
                return Err(GraphError::MissingRotation { class: self.class })
            }
            GraphClass::Outerplanar if self.outer_cycle.is_none() => {
                return Err(GraphError::MissingOuterCycle { class: self.class })
            }
            _ => {}
        }
        if let Some(rot) = &self.rotation {
            check_rotation(n, &self.edges, rot)?;
        }
        if let Some(cycle) = &self.outer_cycle {
            if !is_permutation(cycle, n) {
                return Err(GraphError::BadOuterCycle(n));
            }
        }
        Ok(())
    }
}

/// The problem input: `n` vertices and one edge set per layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredInstance {
    pub n: usize,
    pub vertex_labels: Vec<String>,
    pub layers: Vec<Layer>,
    pub mapping: MappingMode,
}

impl LayeredInstance {
    pub fn new(n: usize, mapping: MappingMode, layers: Vec<Layer>) -> Self {
        Self {
            n,
            vertex_labels: default_labels(n),
            layers,
            mapping,
        }
    }

    pub fn validate(&self) -> Result<(), (usize, GraphError)> {
        self.layers
            .iter()
            .enumerate()
            .try_for_each(|(i, l)| l.validate(self.n).map_err(|e| (i, e)))
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn is_permutation(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    seq.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

pub(crate) fn check_simple(n: usize, edges: &[Edge]) -> Result<(), GraphError> {
    let mut seen = HashSet::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !seen.insert(norm(u, v)) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
    }
    Ok(())
}

fn check_rotation(n: usize, edges: &[Edge], rot: &[Vec<usize>]) -> Result<(), GraphError> {
    if rot.len() != n {
        return Err(GraphError::BadRotation(rot.len().min(n)));
    }
    let adj = adjacency(n, edges);
    for v in 0..n {
        let mut a = adj[v].clone();
        let mut r = rot[v].clone();
        a.sort_unstable();
        r.sort_unstable();
        if a != r {
            return Err(GraphError::BadRotation(v));
        }
    }
    Ok(())
}

#[inline]
pub(crate) fn norm(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Neighbour lists in edge input order.
pub fn adjacency(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

pub fn is_connected(n: usize, edges: &[Edge]) -> bool {
    if n == 0 {
        return true;
    }
    let adj = adjacency(n, edges);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// A linear order of all vertices; consecutive entries are the path's edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathOrder {
    order: Vec<usize>,
}

impl PathOrder {
    /// Wraps a permutation of `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self, GraphError> {
        if order.is_empty() {
            return Err(GraphError::TooSmall { n: 0, needed: 1 });
        }
        if !is_permutation(&order, order.len()) {
            return Err(GraphError::NotAPath("order is not a permutation of 0..n"));
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.order.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// `position[v]` = index of `v` in the order (0-based).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn to_layer(&self) -> Layer {
        Layer::new(GraphClass::Path, self.edges())
    }
}

/// Recovers the vertex order of a path layer, starting at its lower-indexed end.
pub fn as_path(layer: &Layer, n: usize) -> Result<PathOrder, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall { n, needed: 1 });
    }
    check_simple(n, &layer.edges)?;
    if layer.edges.len() != n - 1 {
        return Err(GraphError::NotAPath("edge count is not n - 1"));
    }
    if n == 1 {
        return PathOrder::new(vec![0]);
    }
    let adj = adjacency(n, &layer.edges);
    if adj.iter().any(|a| a.len() > 2) {
        return Err(GraphError::NotAPath("branch vertex"));
    }
    let start = match (0..n).find(|&v| adj[v].len() == 1) {
        Some(s) => s,
        None => return Err(GraphError::NotAPath("cycle")),
    };
    let mut order = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        order.push(cur);
        match adj[cur].iter().copied().find(|&w| w != prev) {
            Some(next) if order.len() < n => {
                prev = cur;
                cur = next;
            }
            _ => break,
        }
    }
    if order.len() != n {
        return Err(GraphError::NotAPath("disconnected"));
    }
    PathOrder::new(order)
}

/// A tree seen as a spine with legs hanging off each spine vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caterpillar {
    spine: Vec<usize>,
    legs: Vec<Vec<usize>>,
}

impl Caterpillar {
    /// `legs[i]` are the legs of `spine[i]`.
    pub fn new(spine: Vec<usize>, legs: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        if spine.is_empty() {
            return Err(GraphError::TooSmall { n: 0, needed: 1 });
        }
        if legs.len() != spine.len() {
            return Err(GraphError::NotATree);
        }
        let all: Vec<usize> = spine.iter().chain(legs.iter().flatten()).copied().collect();
        if !is_permutation(&all, all.len()) {
            return Err(GraphError::NotATree);
        }
        Ok(Self { spine, legs })
    }

    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    pub fn legs(&self) -> &[Vec<usize>] {
        &self.legs
    }

    pub fn n(&self) -> usize {
        self.spine.len() + self.leg_count()
    }

    pub fn leg_count(&self) -> usize {
        self.legs.iter().map(Vec::len).sum()
    }

    /// Spine edges followed by leg edges.
    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self.spine.windows(2).map(|w| (w[0], w[1])).collect();
        for (p, legs) in self.spine.iter().zip(&self.legs) {
            e.extend(legs.iter().map(|&l| (*p, l)));
        }
        e
    }

    pub fn to_layer(&self) -> Layer {
        Layer::new(GraphClass::Caterpillar, self.edges())
    }
}

/// Splits a tree into spine (the leaf-pruned tree) and legs.
///
/// Legs of a spine vertex are listed in input edge order. A tree on two
/// vertices becomes spine `[min]` with the other vertex as its leg.
pub fn caterpillar_decompose(layer: &Layer, n: usize) -> Result<Caterpillar, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall { n, needed: 1 });
    }
    check_simple(n, &layer.edges)?;
    if layer.edges.len() != n - 1 || !is_connected(n, &layer.edges) {
        return Err(GraphError::NotATree);
    }
    if n == 1 {
        return Caterpillar::new(vec![0], vec![vec![]]);
    }
    if n == 2 {
        let (u, v) = norm(layer.edges[0].0, layer.edges[0].1);
        return Caterpillar::new(vec![u], vec![vec![v]]);
    }
    let adj = adjacency(n, &layer.edges);
    let is_leaf: Vec<bool> = adj.iter().map(|a| a.len() == 1).collect();
    let spine_deg = |v: usize| adj[v].iter().filter(|&&w| !is_leaf[w]).count();
    for v in (0..n).filter(|&v| !is_leaf[v]) {
        if spine_deg(v) > 2 {
            return Err(GraphError::NotACaterpillar(v));
        }
    }
    // Pruned tree is a path; walk it from its lower-indexed end.
    let start = (0..n)
        .find(|&v| !is_leaf[v] && spine_deg(v) <= 1)
        .expect("non-empty pruned tree has an end");
    let mut spine = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = adj[cur].iter().copied().find(|&w| !is_leaf[w] && w != prev) {
        spine.push(next);
        prev = cur;
        cur = next;
    }
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in spine.iter().enumerate() {
        slot[v] = i;
    }
    let mut legs = vec![Vec::new(); spine.len()];
    for &(u, v) in &layer.edges {
        if is_leaf[v] && !is_leaf[u] {
            legs[slot[u]].push(v);
        } else if is_leaf[u] && !is_leaf[v] {
            legs[slot[v]].push(u);
        }
    }
    Caterpillar::new(spine, legs)
}

/// Visits each spine vertex followed by its legs.
pub fn caterpillar_to_path(c: &Caterpillar) -> PathOrder {
    let order: Vec<usize> = c
        .spine
        .iter()
        .zip(&c.legs)
        .flat_map(|(&p, legs)| std::iter::once(p).chain(legs.iter().copied()))
        .collect();
    PathOrder::new(order).expect("caterpillar vertices form a permutation")
}

/// Dart position lookup for a rotation system.
struct Darts<'a> {
    rot: &'a [Vec<usize>],
    pos: HashMap<(usize, usize), usize>,
}

impl<'a> Darts<'a> {
    fn new(rot: &'a [Vec<usize>]) -> Self {
        let mut pos = HashMap::new();
        for (v, nbrs) in rot.iter().enumerate() {
            for (i, &w) in nbrs.iter().enumerate() {
                pos.insert((v, w), i);
            }
        }
        Self { rot, pos }
    }

    /// Dart following `u -> v` around its face.
    fn next(&self, u: usize, v: usize) -> (usize, usize) {
        let r = &self.rot[v];
        let i = self.pos[&(v, u)];
        (v, r[(i + 1) % r.len()])
    }
}

/// Face boundary walks of a rotation system; each walk lists vertices in
/// traversal order, one entry per dart.
pub fn faces(rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let darts = Darts::new(rot);
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Vec::new();
    for (v, nbrs) in rot.iter().enumerate() {
        for &w in nbrs {
            if used.contains(&(v, w)) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = (v, w);
            while used.insert(d) {
                face.push(d.0);
                d = darts.next(d.0, d.1);
            }
            out.push(face);
        }
    }
    out
}

fn rotation_of(layer: &Layer) -> Result<&Vec<Vec<usize>>, GraphError> {
    layer
        .rotation
        .as_ref()
        .ok_or(GraphError::MissingRotation { class: layer.class })
}

/// Verifies that the rotation system is a plane embedding; returns the face count.
pub fn check_plane_embedding(layer: &Layer, n: usize) -> Result<usize, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall { n, needed: 1 });
    }
    check_simple(n, &layer.edges)?;
    let rot = rotation_of(layer)?;
    check_rotation(n, &layer.edges, rot)?;
    if !is_connected(n, &layer.edges) {
        return Err(GraphError::Disconnected);
    }
    let e = layer.edges.len();
    // A single vertex has one (empty) face.
    let f = if e == 0 { 1 } else { faces(rot).len() };
    if n + f != e + 2 {
        return Err(GraphError::EulerViolation { v: n, e, f });
    }
    Ok(f)
}

/// Adds dummy edges until every face is a triangle.
///
/// Each step splits one face of length > 3 by a chord between two distinct,
/// non-adjacent boundary vertices, preferring chords that cut off a single
/// triangle. Returns the augmented layer and the added edges.
pub fn triangulate_plane(layer: &Layer, n: usize) -> Result<(Layer, Vec<Edge>), GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall { n, needed: 3 });
    }
    check_plane_embedding(layer, n)?;
    let mut rot = rotation_of(layer)?.clone();
    let mut edge_set: HashSet<Edge> = layer.edges.iter().map(|&(u, v)| norm(u, v)).collect();
    let mut dummies = Vec::new();

    loop {
        let all = faces(&rot);
        let Some(face) = all.into_iter().find(|f| f.len() > 3) else {
            break;
        };
        let (i, j) = find_chord(&face, &edge_set).ok_or_else(|| GraphError::FaceWithoutChord(face.clone()))?;
        let k = face.len();
        let (wi, wj) = (face[i], face[j]);
        let prev_i = face[(i + k - 1) % k];
        let prev_j = face[(j + k - 1) % k];
        insert_after(&mut rot[wi], prev_i, wj);
        insert_after(&mut rot[wj], prev_j, wi);
        edge_set.insert(norm(wi, wj));
        dummies.push((wi, wj));
    }

    let mut edges = layer.edges.clone();
    edges.extend(dummies.iter().copied());
    let out = Layer {
        class: layer.class,
        edges,
        rotation: Some(rot),
        outer_cycle: layer.outer_cycle.clone(),
    };
    Ok((out, dummies))
}

fn insert_after(list: &mut Vec<usize>, anchor: usize, item: usize) {
    let i = list.iter().position(|&x| x == anchor).expect("anchor in rotation");
    list.insert(i + 1, item);
}

/// Corner indices `(i, j)` of a face walk whose vertices can be joined.
fn find_chord(face: &[usize], edges: &HashSet<Edge>) -> Option<(usize, usize)> {
    let k = face.len();
    let ok = |i: usize, j: usize| face[i] != face[j] && !edges.contains(&norm(face[i], face[j]));
    (0..k)
        .map(|i| (i, (i + 2) % k))
        .find(|&(i, j)| ok(i, j))
        .or_else(|| {
            (0..k)
                .flat_map(|i| (i + 3..k).map(move |j| (i, j)))
                .find(|&(i, j)| ok(i, j))
        })
        .map(|(i, j)| if i < j { (i, j) } else { (j, i) })
}

/// Completes an outerplanar layer to a maximal outerplanar graph on its
/// declared outer cycle. Missing outer-cycle edges are added as dummies too,
/// so trees and paths can be completed on any compatible cycle.
pub fn maximalize_outerplanar(layer: &Layer, n: usize) -> Result<(Layer, Vec<Edge>), GraphError> {
    check_simple(n, &layer.edges)?;
    let cycle = layer
        .outer_cycle
        .as_ref()
        .ok_or(GraphError::MissingOuterCycle { class: layer.class })?;
    if !is_permutation(cycle, n) {
        return Err(GraphError::BadOuterCycle(n));
    }
    let mut pos = vec![0; n];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    // Edges in cycle-position space, lower endpoint first.
    let mut present: HashSet<Edge> = layer.edges.iter().map(|&(u, v)| norm(pos[u], pos[v])).collect();
    let is_cycle_edge = |(a, b): Edge| b == a + 1 || (a == 0 && b == n - 1);
    let chords: Vec<Edge> = present.iter().copied().filter(|&e| !is_cycle_edge(e)).collect();
    let mut sorted_chords = chords.clone();
    sorted_chords.sort_unstable();
    for (x, &(a, b)) in sorted_chords.iter().enumerate() {
        for &(c, d) in &sorted_chords[x + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Err(GraphError::CrossingChords((cycle[a], cycle[b]), (cycle[c], cycle[d])));
            }
        }
    }

    let mut added: Vec<Edge> = Vec::new();
    if n >= 2 {
        for i in 0..n {
            let e = norm(i, (i + 1) % n);
            if e.0 != e.1 && present.insert(e) {
                added.push(e);
            }
        }
    }
    if n >= 3 {
        let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); n];
        for &(a, b) in &present {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        // Each stack entry is a polygon interval [a, b] whose edge (a, b) exists.
        let mut stack = vec![(0, n - 1)];
        while let Some((a, b)) = stack.pop() {
            if b - a < 2 {
                continue;
            }
            // Face adjacent to (a, b) inside the interval.
            let mut face = vec![a];
            let mut cur = a;
            while cur != b {
                let limit = if cur == a { b - 1 } else { b };
                let next = (cur + 1..=limit)
                    .rev()
                    .find(|j| adj[cur].contains(j))
                    .expect("cycle edge to successor exists");
                face.push(next);
                cur = next;
            }
            for w in face.windows(2) {
                if w[1] - w[0] >= 2 {
                    stack.push((w[0], w[1]));
                }
            }
            for &v in &face[2..face.len() - 1] {
                adj[a].insert(v);
                adj[v].insert(a);
                added.push((a, v));
            }
        }
    }

    let dummies: Vec<Edge> = added.iter().map(|&(a, b)| (cycle[a], cycle[b])).collect();
    let mut edges = layer.edges.clone();
    edges.extend(dummies.iter().copied());
    let out = Layer {
        class: layer.class,
        edges,
        rotation: None,
        outer_cycle: Some(cycle.clone()),
    };
    Ok((out, dummies))
}

/// Outer cycle to use when embedding a layer as an outerplanar graph: the
/// declared one, or the traversal order for paths and caterpillars.
pub fn outer_cycle_for(layer: &Layer, n: usize) -> Result<Vec<usize>, GraphError> {
    if let Some(c) = &layer.outer_cycle {
        return Ok(c.clone());
    }
    match layer.class {
        GraphClass::Path => Ok(as_path(layer, n)?.order().to_vec()),
        GraphClass::Caterpillar => Ok(caterpillar_to_path(&caterpillar_decompose(layer, n)?).order().to_vec()),
        class => Err(GraphError::MissingOuterCycle { class }),
    }
}

/// Counterclockwise rotation system read off a straight-line drawing.
pub fn rotation_from_coords(n: usize, edges: &[Edge], coords: &[GridPoint]) -> Vec<Vec<usize>> {
    let mut adj = adjacency(n, edges);
    for (v, nbrs) in adj.iter_mut().enumerate() {
        let c = coords[v];
        nbrs.sort_by(|&a, &b| ccw_from_positive_x(c, coords[a], coords[b]));
    }
    adj
}

/// Counterclockwise angular order around `center`, starting at the +x axis.
pub(crate) fn ccw_from_positive_x(center: GridPoint, a: GridPoint, b: GridPoint) -> Ordering {
    let half = |p: GridPoint| {
        let (dx, dy) = (p.x - center.x, p.y - center.y);
        u8::from(!(dy > 0 || (dy == 0 && dx > 0)))
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&geom::cross(center, a, b)))
}
