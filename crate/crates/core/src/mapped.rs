//! Simultaneous embeddings with a prescribed vertex mapping.
//!
//! * two paths on an `n x n` grid,
//! * general-position refinement of a small grid drawing,
//! * two caterpillars (refined two-path layout),
//! * a path and a caterpillar with right shifts,
//! * the five-path pairing certificate and its exhaustive geometric check.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::EmbedError;
use crate::geom::{self, orient_raw, GridPoint, Orientation, Segment};
use crate::graph::{caterpillar_to_path, norm, Caterpillar, Edge, PathOrder};

/// Per-layer bijections from a layer's vertices onto a shared point list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointAssignment {
    pub maps: Vec<Vec<usize>>,
}

/// Vertex locations shared by all layers plus the layers' edge lists.
///
/// With an assignment, `coords` is the shared point list and layer `i`
/// draws vertex `v` at `coords[assignment.maps[i][v]]`; otherwise vertex `v`
/// sits at `coords[v]` in every layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimultaneousEmbedding {
    pub coords: Vec<GridPoint>,
    pub layers: Vec<Vec<Edge>>,
    pub width: i64,
    pub height: i64,
    pub assignment: Option<PointAssignment>,
}

impl SimultaneousEmbedding {
    /// Keeps coordinates as they are; width and height are the maxima.
    pub fn from_coords(coords: Vec<GridPoint>, layers: Vec<Vec<Edge>>) -> Self {
        let width = coords.iter().map(|p| p.x).max().unwrap_or(0);
        let height = coords.iter().map(|p| p.y).max().unwrap_or(0);
        Self {
            coords,
            layers,
            width,
            height,
            assignment: None,
        }
    }

    /// Translates the minimum corner to `(1, 1)`.
    pub fn normalized(coords: Vec<GridPoint>, layers: Vec<Vec<Edge>>) -> Self {
        Self::from_coords(translate_to_unit_corner(&coords), layers)
    }

    pub fn with_assignment(mut self, assignment: PointAssignment) -> Self {
        self.assignment = Some(assignment);
        self
    }

    /// Location of vertex `v` of layer `layer`.
    pub fn position(&self, layer: usize, v: usize) -> GridPoint {
        match &self.assignment {
            Some(a) => self.coords[a.maps[layer][v]],
            None => self.coords[v],
        }
    }
}

pub(crate) fn translate_to_unit_corner(coords: &[GridPoint]) -> Vec<GridPoint> {
    let min_x = coords.iter().map(|p| p.x).min().unwrap_or(1);
    let min_y = coords.iter().map(|p| p.y).min().unwrap_or(1);
    coords
        .iter()
        .map(|p| GridPoint::new(p.x - min_x + 1, p.y - min_y + 1))
        .collect()
}

/// Vertex `v` goes to (position in `p1`, position in `p2`), both 1-based.
pub fn embed_two_paths(p1: &PathOrder, p2: &PathOrder) -> Result<SimultaneousEmbedding, EmbedError> {
    if p1.len() != p2.len() {
        return Err(EmbedError::MismatchedVertexSets(format!(
            "paths have {} and {} vertices",
            p1.len(),
            p2.len()
        )));
    }
    let n = p1.len();
    let (x, y) = (p1.positions(), p2.positions());
    let coords = (0..n)
        .map(|v| GridPoint::new(x[v] as i64 + 1, y[v] as i64 + 1))
        .collect();
    let mut e = SimultaneousEmbedding::from_coords(coords, vec![p1.edges(), p2.edges()]);
    e.width = n as i64;
    e.height = n as i64;
    Ok(e)
}

/// Cell width used when refining a drawing of `n` points.
pub fn cell_width(n: usize) -> i64 {
    2 * n as i64 + 1
}

/// Cell height used when refining a drawing of `n` points.
pub fn cell_height(n: usize) -> i64 {
    2 * (n as i64) * (n as i64) + 1
}

/// Offsets in scan order: rows outward from the centre row, and inside each
/// row columns outward from the centre column.
fn outward(radius: i64) -> impl Iterator<Item = i64> + Clone {
    std::iter::once(0).chain((1..=radius).flat_map(|d| [-d, d]))
}

/// Moves every point inside its own cell so no three are collinear.
///
/// Point `i` at `(x, y)` lands at `(x * W + dx, y * H + dy)` with
/// `W = 2n + 1`, `H = 2n^2 + 1`, `|dx| <= n`, `|dy| <= n^2`. Points are placed
/// in input order; each takes the first candidate offset not collinear with
/// two previously placed points. At most `n` points may be refined: fewer
/// than `n^2 / 2` lines then pass through a cell, and even counting a full
/// column for every vertical line they cannot cover its `(2n+1)(2n^2+1)`
/// slots.
pub fn refine_general_position(points: &[GridPoint], n: usize) -> Result<Vec<GridPoint>, EmbedError> {
    refine_in_cells(points, n, 1)
}

/// [`refine_general_position`] with cell centres spread `scale` cells apart.
pub(crate) fn refine_in_cells(points: &[GridPoint], n: usize, scale: i64) -> Result<Vec<GridPoint>, EmbedError> {
    if points.len() > n {
        return Err(EmbedError::TooManyPoints { count: points.len(), n });
    }
    geom::check_budget_all(points)?;
    if let Some((first, second)) = geom::find_duplicate(points) {
        return Err(geom::GeomError::DuplicatePoint { first, second }.into());
    }
    let (w, h) = (cell_width(n), cell_height(n));
    let (rx, ry) = (n as i64, (n * n) as i64);
    let overflow = |p: &GridPoint| {
        let limit = geom::COORD_BUDGET as i128;
        (p.x as i128 * (scale * w) as i128).abs() + rx as i128 > limit
            || (p.y as i128 * (scale * h) as i128).abs() + ry as i128 > limit
    };
    if points.iter().any(overflow) {
        return Err(EmbedError::GridTooLarge(n));
    }

    let mut placed: Vec<GridPoint> = Vec::with_capacity(points.len());
    let mut dirs: HashSet<(i64, i64)> = HashSet::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let centre = GridPoint::new(p.x * scale * w, p.y * scale * h);
        let slot = outward(ry)
            .flat_map(|dy| outward(rx).map(move |dx| (dx, dy)))
            .map(|(dx, dy)| GridPoint::new(centre.x + dx, centre.y + dy))
            .find(|c| collinearity_free(*c, &placed, &mut dirs))
            .ok_or(EmbedError::NoFreeSlot { index: i })?;
        placed.push(slot);
    }
    Ok(placed)
}

/// Is `c` off every line through two points of `placed`? Two placed points
/// are collinear with `c` exactly when they leave `c` in parallel directions.
fn collinearity_free(c: GridPoint, placed: &[GridPoint], dirs: &mut HashSet<(i64, i64)>) -> bool {
    dirs.clear();
    placed.iter().all(|q| *q != c && dirs.insert(primitive_line_dir(c, *q)))
}

fn primitive_line_dir(a: GridPoint, b: GridPoint) -> (i64, i64) {
    let (mut dx, mut dy) = (b.x - a.x, b.y - a.y);
    let (mut x, mut y) = (dx.abs(), dy.abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    dx /= x;
    dy /= x;
    if dx < 0 || (dx == 0 && dy < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// Two caterpillars: traverse each into a path, lay the paths out on the
/// `n x n` grid, refine into general position, then draw the caterpillar
/// edges. Width is at most `n(2n+1)` and height at most `n(2n^2+1)`.
pub fn embed_two_caterpillars(c1: &Caterpillar, c2: &Caterpillar) -> Result<SimultaneousEmbedding, EmbedError> {
    if c1.n() != c2.n() {
        return Err(EmbedError::MismatchedVertexSets(format!(
            "caterpillars have {} and {} vertices",
            c1.n(),
            c2.n()
        )));
    }
    let n = c1.n();
    let base = embed_two_paths(&caterpillar_to_path(c1), &caterpillar_to_path(c2))?;
    let refined = refine_general_position(&base.coords, n)?;
    Ok(SimultaneousEmbedding::normalized(refined, vec![c1.edges(), c2.edges()]))
}

/// A path and a caterpillar on at most `(2n - k) x n`, `k` = number of legs.
///
/// Returns the embedding and the number of right shifts performed.
pub fn embed_path_caterpillar(p: &PathOrder, c: &Caterpillar) -> Result<(SimultaneousEmbedding, usize), EmbedError> {
    if p.len() != c.n() {
        return Err(EmbedError::MismatchedVertexSets(format!(
            "path has {} vertices, caterpillar has {}",
            p.len(),
            c.n()
        )));
    }
    let n = p.len();
    let y = p.positions();
    let mut coords = vec![GridPoint::new(0, 0); n];
    for (i, (&s, legs)) in c.spine().iter().zip(c.legs()).enumerate() {
        let col = 2 * (i as i64 + 1);
        coords[s] = GridPoint::new(col, y[s] as i64 + 1);
        for &l in legs {
            coords[l] = GridPoint::new(col + 1, y[l] as i64 + 1);
        }
    }

    let spine = c.spine();
    let mut shifts = 0;
    for i in 0..spine.len().saturating_sub(1) {
        let (cur, next) = (spine[i], spine[i + 1]);
        let legs = &c.legs()[i];
        let mut local = 0;
        while legs
            .iter()
            .any(|&l| orient_raw(coords[cur], coords[next], coords[l]) == Orientation::Collinear)
        {
            if local == legs.len() {
                return Err(EmbedError::ShiftBudget { vertex: cur });
            }
            let from = coords[next].x;
            for q in coords.iter_mut().filter(|q| q.x >= from) {
                q.x += 1;
            }
            local += 1;
        }
        shifts += local;
    }

    let mut e = SimultaneousEmbedding::from_coords(coords, vec![p.edges(), c.edges()]);
    e.height = n as i64;
    Ok((e, shifts))
}

/// The five paths on vertices 1..5 whose edge pairings cover all of K5.
pub const COVERING_FIVE_PATHS: [&str; 5] = ["12345", "13542", "25134", "32415", "35214"];

/// Parses a digit string such as `"13542"` (1-based labels) into a path order.
pub fn path_from_digits(s: &str) -> Result<PathOrder, EmbedError> {
    let order: Option<Vec<usize>> = s
        .chars()
        .map(|ch| ch.to_digit(10).and_then(|d| (d as usize).checked_sub(1)))
        .collect();
    let order = order.ok_or_else(|| EmbedError::MismatchedVertexSets(format!("bad path label string {s:?}")))?;
    Ok(PathOrder::new(order)?)
}

/// A pair of vertex-disjoint edges of K5, endpoints 0-based and normalised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgePair(pub Edge, pub Edge);

impl EdgePair {
    /// `"12-45"` style label with 1-based vertices.
    pub fn label(&self) -> String {
        let EdgePair((a, b), (c, d)) = *self;
        format!("{}{}-{}{}", a + 1, b + 1, c + 1, d + 1)
    }
}

/// The 15 vertex-disjoint edge pairs of K5 in lexicographic order.
pub fn k5_disjoint_pairs() -> Vec<EdgePair> {
    let edges: Vec<Edge> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                out.push(EdgePair(e, f));
            }
        }
    }
    out
}

/// Which paths contain both edges of each disjoint pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCoverage {
    pub pairs: Vec<EdgePair>,
    pub covered_by: Vec<Vec<usize>>,
}

impl PairCoverage {
    pub fn all_covered(&self) -> bool {
        self.covered_by.iter().all(|c| !c.is_empty())
    }

    pub fn uncovered(&self) -> Vec<EdgePair> {
        self.pairs
            .iter()
            .zip(&self.covered_by)
            .filter(|(_, c)| c.is_empty())
            .map(|(p, _)| *p)
            .collect()
    }

    /// Pairs covered by path `i`.
    pub fn covered_by_path(&self, i: usize) -> Vec<EdgePair> {
        self.pairs
            .iter()
            .zip(&self.covered_by)
            .filter(|(_, c)| c.contains(&i))
            .map(|(p, _)| *p)
            .collect()
    }
}

fn check_five(paths: &[PathOrder]) -> Result<(), EmbedError> {
    match paths.iter().find(|p| p.len() != 5) {
        Some(p) => Err(EmbedError::MismatchedVertexSets(format!(
            "expected paths on 5 vertices, got one on {}",
            p.len()
        ))),
        None => Ok(()),
    }
}

pub fn five_path_pair_coverage(paths: &[PathOrder]) -> Result<PairCoverage, EmbedError> {
    check_five(paths)?;
    let edge_sets: Vec<HashSet<Edge>> = paths
        .iter()
        .map(|p| p.edges().into_iter().map(|(a, b)| norm(a, b)).collect())
        .collect();
    let pairs = k5_disjoint_pairs();
    let covered_by = pairs
        .iter()
        .map(|EdgePair(e, f)| {
            edge_sets
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(e) && s.contains(f))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(PairCoverage { pairs, covered_by })
}

/// Grid of `width x height` lattice points used by the five-point search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    pub width: usize,
    pub height: usize,
}

impl GridShape {
    pub fn square(g: usize) -> Self {
        Self { width: g, height: g }
    }

    fn points(&self) -> Vec<GridPoint> {
        (0..self.width)
            .flat_map(|x| (0..self.height).map(move |y| GridPoint::new(x as i64 + 1, y as i64 + 1)))
            .collect()
    }
}

/// Exhaustive search handles grids of at most this many points (8 x 8).
pub const EXHAUSTIVE_POINT_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FivePointVerdict {
    /// Every general-position placement makes some path cross itself.
    NoCounterexample { placements_checked: u64 },
    /// `placement[v]` is the location of vertex `v`; no path self-crosses.
    Counterexample { placement: Vec<GridPoint> },
    /// The grid admits no general-position placement of five points.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FivePointCheck {
    #[serde(flatten)]
    pub verdict: FivePointVerdict,
    pub exhaustive: bool,
}

fn permutations5() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut cur = [0usize; 5];
    fn rec(depth: usize, used: u8, cur: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if depth == 5 {
            out.push(*cur);
            return;
        }
        for v in 0..5 {
            if used & (1 << v) == 0 {
                cur[depth] = v;
                rec(depth + 1, used | (1 << v), cur, out);
            }
        }
    }
    rec(0, 0, &mut cur, &mut out);
    out
}

/// Disjoint edge pairs of each path, used as crossing candidates.
fn path_pairs(paths: &[PathOrder]) -> Vec<Vec<(Edge, Edge)>> {
    paths
        .iter()
        .map(|p| {
            let e = p.edges();
            let mut out = Vec::new();
            for i in 0..e.len() {
                for j in i + 2..e.len() {
                    out.push((e[i], e[j]));
                }
            }
            out
        })
        .collect()
}

/// Looks for a labelling of five chosen points (in general position) under
/// which no path crosses itself. Returns the first such labelling in
/// lexicographic permutation order, `slot[v]` = chosen point of vertex `v`.
fn crossing_free_labelling(
    pts: &[GridPoint; 5],
    perms: &[[usize; 5]],
    pairs: &[Vec<(Edge, Edge)>],
) -> Option<[usize; 5]> {
    let mut cross = [[[[false; 5]; 5]; 5]; 5];
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    if a != b && c != d && a != c && a != d && b != c && b != d {
                        let s1 = Segment::new(pts[a], pts[b]).expect("distinct points");
                        let s2 = Segment::new(pts[c], pts[d]).expect("distinct points");
                        cross[a][b][c][d] = geom::segments_conflict(&s1, &s2);
                    }
                }
            }
        }
    }
    perms.iter().copied().find(|slot| {
        pairs.iter().all(|pp| {
            pp.iter()
                .all(|&((a, b), (c, d))| !cross[slot[a]][slot[b]][slot[c]][slot[d]])
        })
    })
}

fn in_general_position(pts: &[GridPoint; 5]) -> bool {
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                if orient_raw(pts[i], pts[j], pts[k]) == Orientation::Collinear {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks every placement of the five labelled vertices on distinct grid
/// points with no three collinear, looking for one where no path crosses
/// itself.
///
/// The search enumerates point subsets in lexicographic order and, for each
/// subset in general position, all 120 labellings; the first counterexample
/// in that order is reported. Work is split across threads by the first
/// subset element and merged in order, so the result does not depend on the
/// thread count.
pub fn exhaustive_five_point_check(grid: GridShape, paths: &[PathOrder]) -> Result<FivePointCheck, EmbedError> {
    check_five(paths)?;
    let cells = grid.width * grid.height;
    if cells > EXHAUSTIVE_POINT_BUDGET {
        return Err(EmbedError::BudgetExceeded(format!(
            "{}x{} grid has {cells} points, exhaustive search allows {EXHAUSTIVE_POINT_BUDGET}",
            grid.width, grid.height
        )));
    }
    let pts = grid.points();
    let perms = permutations5();
    let pairs = path_pairs(paths);
    let m = pts.len();

    let per_first: Vec<(u64, Option<Vec<GridPoint>>)> = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut count = 0u64;
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        for e in d + 1..m {
                            let chosen = [pts[a], pts[b], pts[c], pts[d], pts[e]];
                            if !in_general_position(&chosen) {
                                continue;
                            }
                            count += perms.len() as u64;
                            if let Some(slot) = crossing_free_labelling(&chosen, &perms, &pairs) {
                                return (count, Some(slot.iter().map(|&s| chosen[s]).collect()));
                            }
                        }
                    }
                }
            }
            (count, None)
        })
        .collect();

    if let Some(placement) = per_first.iter().find_map(|(_, w)| w.clone()) {
        return Ok(FivePointCheck {
            verdict: FivePointVerdict::Counterexample { placement },
            exhaustive: true,
        });
    }
    let total: u64 = per_first.iter().map(|(c, _)| c).sum();
    let verdict = if total == 0 {
        FivePointVerdict::Vacuous
    } else {
        FivePointVerdict::NoCounterexample { placements_checked: total }
    };
    Ok(FivePointCheck { verdict, exhaustive: true })
}

/// Random-subset variant for grids beyond the exhaustive budget. Draws
/// `samples` five-point subsets with a seeded generator and tries all
/// labellings of those in general position.
pub fn sampled_five_point_check(
    grid: GridShape,
    paths: &[PathOrder],
    samples: usize,
    seed: u64,
) -> Result<FivePointCheck, EmbedError> {
    check_five(paths)?;
    let pts = grid.points();
    if pts.len() < 5 {
        return Ok(FivePointCheck {
            verdict: FivePointVerdict::Vacuous,
            exhaustive: false,
        });
    }
    let perms = permutations5();
    let pairs = path_pairs(paths);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0u64;
    for _ in 0..samples {
        let mut idx = sample(&mut rng, pts.len(), 5).into_vec();
        idx.sort_unstable();
        let chosen = [pts[idx[0]], pts[idx[1]], pts[idx[2]], pts[idx[3]], pts[idx[4]]];
        if !in_general_position(&chosen) {
            continue;
        }
        count += perms.len() as u64;
        if let Some(slot) = crossing_free_labelling(&chosen, &perms, &pairs) {
            return Ok(FivePointCheck {
                verdict: FivePointVerdict::Counterexample {
                    placement: slot.iter().map(|&s| chosen[s]).collect(),
                },
                exhaustive: false,
            });
        }
    }
    let verdict = if count == 0 {
        FivePointVerdict::Vacuous
    } else {
        FivePointVerdict::NoCounterexample { placements_checked: count }
    };
    Ok(FivePointCheck { verdict, exhaustive: false })
}
