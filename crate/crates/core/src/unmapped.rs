//! Simultaneous embeddings where each layer chooses its own vertex-to-point
//! bijection onto one shared point set.

use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::EmbedError;
use crate::geom::{self, cross, orient_raw, GeomError, GridPoint, Orientation, Segment};
use crate::graph::{
    self, faces, maximalize_outerplanar, outer_cycle_for, triangulate_plane, GraphError, Layer,
};
use crate::mapped::{refine_in_cells, translate_to_unit_corner, PointAssignment, SimultaneousEmbedding};

/// Shift-method drawing of a triangulated plane graph on `[0, 2n-4] x [0, n-2]`.
///
/// The outer face is the triangle on the dart `v1 -> v2` with `v1 = 0` and
/// `v2` its smallest neighbour; `v1` lands at the origin and `v2` at
/// `(2n - 4, 0)`.
pub fn planar_grid_draw(g: &Layer, n: usize) -> Result<Vec<GridPoint>, EmbedError> {
    if n < 3 {
        return Err(GraphError::TooSmall { n, needed: 3 }.into());
    }
    graph::check_plane_embedding(g, n)?;
    let rot = g.rotation.as_ref().expect("checked plane embedding has a rotation");
    if let Some(f) = faces(rot).into_iter().find(|f| f.len() != 3) {
        let len = f.len();
        return Err(GraphError::NotTriangulated(f, len).into());
    }
    let adj: Vec<HashSet<usize>> = rot.iter().map(|r| r.iter().copied().collect()).collect();
    let v1 = 0;
    let v2 = *rot[v1].iter().min().expect("connected graph");
    let i = rot[v2].iter().position(|&w| w == v1).expect("symmetric rotation");
    let vn = rot[v2][(i + 1) % rot[v2].len()];
    let order = canonical_order(&adj, v1, v2, vn);
    Ok(shift_method(&adj, &order))
}

/// Canonical ordering by repeated removal from the top: each step removes the
/// lowest-index contour vertex, other than `v1` and `v2`, whose remaining
/// contour neighbours are exactly its two contour neighbours.
fn canonical_order(adj: &[HashSet<usize>], v1: usize, v2: usize, vn: usize) -> Vec<usize> {
    let n = adj.len();
    let mut removed = vec![false; n];
    let mut on_contour = vec![false; n];
    for v in [v1, v2, vn] {
        on_contour[v] = true;
    }
    let mut top_down = Vec::with_capacity(n);
    for _ in 2..n {
        let v = (0..n)
            .find(|&v| {
                on_contour[v]
                    && !removed[v]
                    && v != v1
                    && v != v2
                    && adj[v].iter().filter(|&&w| !removed[w] && on_contour[w]).count() == 2
            })
            .expect("a triangulated disk always has a removable contour vertex");
        removed[v] = true;
        for &w in &adj[v] {
            if !removed[w] {
                on_contour[w] = true;
            }
        }
        top_down.push(v);
    }
    let mut order = vec![v1, v2];
    order.extend(top_down.into_iter().rev());
    order
}

fn shift_method(adj: &[HashSet<usize>], order: &[usize]) -> Vec<GridPoint> {
    let n = adj.len();
    let mut x = vec![0i64; n];
    let mut y = vec![0i64; n];
    // Vertices that move together with a contour vertex.
    let mut under: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let (v1, v2, v3) = (order[0], order[1], order[2]);
    x[v2] = 2;
    (x[v3], y[v3]) = (1, 1);
    let mut contour = vec![v1, v3, v2];

    for &v in &order[3..] {
        let touching: Vec<usize> = (0..contour.len()).filter(|&i| adj[v].contains(&contour[i])).collect();
        let (p, q) = (touching[0], *touching.last().expect("v has contour neighbours"));
        debug_assert_eq!(touching.len(), q - p + 1, "contour neighbours are contiguous");
        for (i, &c) in contour.iter().enumerate().skip(p + 1) {
            let dx = if i < q { 1 } else { 2 };
            for &u in &under[c] {
                x[u] += dx;
            }
        }
        let (wp, wq) = (contour[p], contour[q]);
        x[v] = (x[wp] + x[wq] + y[wq] - y[wp]) / 2;
        y[v] = (x[wq] - x[wp] + y[wq] + y[wp]) / 2;
        let mut moved: Vec<usize> = vec![v];
        for &c in &contour[p + 1..q] {
            moved.extend(std::mem::take(&mut under[c]));
        }
        under[v] = moved;
        contour.splice(p + 1..q, [v]);
    }
    (0..n).map(|v| GridPoint::new(x[v], y[v])).collect()
}

/// Safety factor separating grid cells before perturbation.
pub fn safety_factor(n: usize) -> i64 {
    6 * n as i64
}

/// Crossing-free drawing of a plane graph with no three vertices collinear,
/// translated so the minimum corner is `(1, 1)`.
///
/// The shift-method drawing of a triangulation is spread by `6n` cells per
/// unit and every vertex is moved inside its own cell as in
/// [`crate::mapped::refine_general_position`]. Offsets stay below the
/// distance from any vertex to any line through two others, so orientations
/// of all non-collinear triples survive and the drawing stays plane. Point
/// counts per axis are at most `(6n(2n-4) + 1)(2n + 1)` and
/// `(6n(n-2) + 1)(2n^2 + 1)`.
pub fn planar_general_position_draw(g: &Layer, n: usize) -> Result<Vec<GridPoint>, EmbedError> {
    match n {
        0 => return Err(GraphError::TooSmall { n, needed: 1 }.into()),
        1 => return Ok(vec![GridPoint::new(1, 1)]),
        2 => return Ok(vec![GridPoint::new(1, 1), GridPoint::new(2, 1)]),
        _ => {}
    }
    let (tri, _) = triangulate_plane(g, n)?;
    let base = planar_grid_draw(&tri, n)?;
    let fine = refine_in_cells(&base, n, safety_factor(n))?;
    let out = translate_to_unit_corner(&fine);
    geom::check_budget_all(&out).map_err(|_| EmbedError::GridTooLarge(n))?;
    Ok(out)
}

/// Points `(t, t^2 mod p)` for `t = 1..=n`, `p` the smallest prime `>= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolaSet {
    pub p: u64,
    pub points: Vec<GridPoint>,
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

pub fn parabola_pointset(n: usize) -> ParabolaSet {
    let p = (n.max(2) as u64..).find(|&m| is_prime(m)).expect("primes are unbounded");
    let points = (1..=n as u64)
        .map(|t| GridPoint::new(t as i64, ((t * t) % p) as i64))
        .collect();
    ParabolaSet { p, points }
}

/// Angular comparator around `center`, sweeping from the ray towards
/// `start` in rotation sense `sense`.
fn angular_cmp(center: GridPoint, start: GridPoint, sense: Orientation) -> impl Fn(&GridPoint, &GridPoint) -> Ordering {
    let s = sense.sign() as i128;
    move |a, b| {
        let half = |p: &GridPoint| {
            let c = s * cross(center, start, *p);
            let same_dir = c == 0
                && (start.x - center.x) as i128 * (p.x - center.x) as i128
                    + (start.y - center.y) as i128 * (p.y - center.y) as i128
                    > 0;
            u8::from(!(c > 0 || same_dir))
        };
        half(a).cmp(&half(b)).then_with(|| 0.cmp(&(s * cross(center, *a, *b))))
    }
}

fn check_point_set(pts: &[GridPoint]) -> Result<(), EmbedError> {
    geom::check_budget_all(pts)?;
    if let Some((first, second)) = geom::find_duplicate(pts) {
        return Err(GeomError::DuplicatePoint { first, second }.into());
    }
    if let Some(t) = geom::find_collinear_triple(pts)? {
        return Err(EmbedError::NotInGeneralPosition(t));
    }
    Ok(())
}

/// Straight-line embedding of an outerplanar layer on `pts` (general
/// position, one point per vertex). The layer is completed to a maximal
/// outerplanar graph on its outer cycle first.
///
/// An outer edge `(u, v)` sits on a hull edge `(p, q)` of its point subset.
/// The apex `w` of the triangle on `(u, v)` splits the remaining chain into
/// `n_A` vertices between `u` and `w` and `n_B` between `w` and `v`. The point
/// `r` for `w` is chosen so that triangle `p q r` is empty, at most `n_B`
/// points lie beyond `r q` only and at most `n_A` beyond `p r` only; sorting
/// the rest around `r` away from `q` then hands the first `n_A` to `(p, r)`
/// and the others to `(r, q)`, each pair again a hull edge of its part.
pub fn embed_outerplanar_on_points(h: &Layer, pts: &[GridPoint]) -> Result<PointAssignment, EmbedError> {
    let k = pts.len();
    if k == 0 {
        return Err(GraphError::TooSmall { n: 0, needed: 1 }.into());
    }
    check_point_set(pts)?;
    let cycle = outer_cycle_for(h, k)?;
    let with_cycle = h.clone().with_outer_cycle(cycle.clone());
    let (full, _) = maximalize_outerplanar(&with_cycle, k)?;
    let adj: Vec<HashSet<usize>> = graph::adjacency(k, &full.edges)
        .into_iter()
        .map(|a| a.into_iter().collect())
        .collect();

    let mut assign = vec![usize::MAX; k];
    if k == 1 {
        assign[cycle[0]] = 0;
        return Ok(PointAssignment { maps: vec![assign] });
    }
    let (p, q) = if k == 2 {
        if pts[0] < pts[1] { (0, 1) } else { (1, 0) }
    } else {
        let hull = geom::convex_hull(pts)?;
        (0..hull.len())
            .map(|i| {
                let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
                if pts[a] < pts[b] { (a, b) } else { (b, a) }
            })
            .min_by_key(|&(a, b)| (pts[a], pts[b]))
            .expect("hull has edges")
    };
    // Chain u = c0, c1, ..., c_{k-1} = v closed by the edge (u, v).
    let chain = cycle.clone();
    assign[chain[0]] = p;
    assign[chain[k - 1]] = q;
    let rest: Vec<usize> = (0..k).filter(|&i| i != p && i != q).collect();
    Splitter { pts, adj: &adj }.solve(&chain, p, q, rest, &mut assign)?;
    Ok(PointAssignment { maps: vec![assign] })
}

struct Splitter<'a> {
    pts: &'a [GridPoint],
    adj: &'a [HashSet<usize>],
}

impl Splitter<'_> {
    fn solve(&self, chain: &[usize], p: usize, q: usize, rest: Vec<usize>, assign: &mut [usize]) -> Result<(), EmbedError> {
        let m = chain.len() - 1;
        debug_assert_eq!(rest.len() + 2, chain.len());
        if m < 2 {
            return Ok(());
        }
        let (u, v) = (chain[0], chain[m]);
        let t = (1..m)
            .find(|&t| self.adj[u].contains(&chain[t]) && self.adj[chain[t]].contains(&v))
            .expect("maximal outerplanar edge has an inner triangle");
        let (n_a, n_b) = (t - 1, m - t - 1);
        let pts = self.pts;
        let (pp, pq) = (pts[p], pts[q]);
        let side = orient_raw(pp, pq, pts[rest[0]]);

        let mut by_p = rest.clone();
        by_p.sort_by(|&a, &b| angular_cmp(pp, pq, side)(&pts[a], &pts[b]));
        let r0 = by_p[n_b];
        let inside = |s: usize| {
            s != r0
                && orient_raw(pq, pts[r0], pts[s]) == orient_raw(pq, pts[r0], pp)
                && orient_raw(pts[r0], pp, pts[s]) == orient_raw(pts[r0], pp, pq)
        };
        let at_q = angular_cmp(pq, pp, side.reversed());
        let r = rest
            .iter()
            .copied()
            .filter(|&s| s == r0 || inside(s))
            .min_by(|&a, &b| at_q(&pts[a], &pts[b]))
            .expect("r0 is a candidate");

        let pr = pts[r];
        let away_from_q = orient_raw(pr, pp, pq).reversed();
        let mut around_r: Vec<usize> = rest.into_iter().filter(|&s| s != r).collect();
        around_r.sort_by(|&a, &b| angular_cmp(pr, pp, away_from_q)(&pts[a], &pts[b]));
        let part_b = around_r.split_off(n_a);
        let part_a = around_r;

        let q_side = orient_raw(pp, pr, pq);
        let p_side = orient_raw(pr, pq, pp);
        let separated = part_a.iter().all(|&s| orient_raw(pp, pr, pts[s]) == q_side.reversed())
            && part_b.iter().all(|&s| orient_raw(pr, pq, pts[s]) == p_side.reversed());
        if !separated {
            return Err(EmbedError::HullInvariant { point: r });
        }

        assign[chain[t]] = r;
        self.solve(&chain[..=t], p, r, part_a, assign)?;
        self.solve(&chain[t..], r, q, part_b, assign)
    }
}

/// Largest vertex count accepted by [`brute_force_point_assignment`].
pub const BRUTE_FORCE_MAX: usize = 9;

/// Lexicographically first bijection (vertex order) that draws `h` on `pts`
/// without conflicts, found by backtracking.
pub fn brute_force_point_assignment(h: &Layer, pts: &[GridPoint]) -> Result<Option<PointAssignment>, EmbedError> {
    let k = pts.len();
    if k > BRUTE_FORCE_MAX {
        return Err(EmbedError::BudgetExceeded(format!(
            "brute force handles at most {BRUTE_FORCE_MAX} points, got {k}"
        )));
    }
    geom::check_budget_all(pts)?;
    if let Some((first, second)) = geom::find_duplicate(pts) {
        return Err(GeomError::DuplicatePoint { first, second }.into());
    }
    graph::check_simple(k, &h.edges)?;
    let adj = graph::adjacency(k, &h.edges);

    struct Search<'a> {
        pts: &'a [GridPoint],
        adj: &'a [Vec<usize>],
        assign: Vec<usize>,
        used: Vec<bool>,
        drawn: Vec<Segment>,
    }
    impl Search<'_> {
        fn go(&mut self, v: usize) -> bool {
            if v == self.assign.len() {
                return true;
            }
            for pt in 0..self.pts.len() {
                if self.used[pt] {
                    continue;
                }
                let before = self.drawn.len();
                let mut ok = true;
                for &u in self.adj[v].iter().filter(|&&u| u < v) {
                    let s = Segment::new(self.pts[pt], self.pts[self.assign[u]]).expect("distinct points");
                    if self.drawn.iter().any(|d| geom::segments_conflict(d, &s)) {
                        ok = false;
                        break;
                    }
                    self.drawn.push(s);
                }
                if ok {
                    self.assign[v] = pt;
                    self.used[pt] = true;
                    if self.go(v + 1) {
                        return true;
                    }
                    self.used[pt] = false;
                }
                self.drawn.truncate(before);
            }
            false
        }
    }

    let mut s = Search {
        pts,
        adj: &adj,
        assign: vec![usize::MAX; k],
        used: vec![false; k],
        drawn: Vec::new(),
    };
    Ok(s.go(0).then(|| PointAssignment { maps: vec![s.assign] }))
}

/// A plane graph and an outerplanar graph on one point set: the plane layer
/// is drawn in general position and the outerplanar layer is embedded onto
/// those points. Layer 0 maps identically; layer 1 gives, per vertex, the
/// vertex of `g1` whose point it uses.
pub fn simul_embed_planar_outerplanar(g1: &Layer, g2: &Layer, n: usize) -> Result<SimultaneousEmbedding, EmbedError> {
    let coords = planar_general_position_draw(g1, n)?;
    let second = embed_outerplanar_on_points(g2, &coords)?;
    let maps = vec![(0..n).collect(), second.maps.into_iter().next().expect("one layer")];
    Ok(SimultaneousEmbedding::from_coords(coords, vec![g1.edges.clone(), g2.edges.clone()])
        .with_assignment(PointAssignment { maps }))
}

/// Any number of outerplanar layers on the parabola point set, shifted up by
/// one so all coordinates are positive. Extent is at most `p x p`.
pub fn simul_embed_outerplanars(graphs: &[Layer], n: usize) -> Result<SimultaneousEmbedding, EmbedError> {
    let coords: Vec<GridPoint> = parabola_pointset(n)
        .points
        .iter()
        .map(|p| GridPoint::new(p.x, p.y + 1))
        .collect();
    let maps = graphs
        .par_iter()
        .map(|g| embed_outerplanar_on_points(g, &coords).map(|a| a.maps.into_iter().next().expect("one layer")))
        .collect::<Result<Vec<_>, _>>()?;
    let layers = graphs.iter().map(|g| g.edges.clone()).collect();
    Ok(SimultaneousEmbedding::from_coords(coords, layers).with_assignment(PointAssignment { maps }))
}
