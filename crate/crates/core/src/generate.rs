//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geom::{orient_raw, GridPoint, Orientation};
use crate::graph::{is_connected, Caterpillar, Edge, GraphClass, GraphError, Layer, PathOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Path,
    Caterpillar,
    MaximalOuterplanar,
    PlaneTriangulation,
}

/// Deterministic in `(kind, n, seed)`.
pub fn generate(kind: GenKind, n: usize, seed: u64) -> Result<Layer, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        GenKind::Path => random_path(n, &mut rng).map(|p| p.to_layer()),
        GenKind::Caterpillar => random_caterpillar(n, &mut rng).map(|c| c.to_layer()),
        GenKind::MaximalOuterplanar => random_maximal_outerplanar(n, &mut rng),
        GenKind::PlaneTriangulation => random_plane_triangulation(n, &mut rng),
    }
}

fn need(n: usize, needed: usize) -> Result<(), GraphError> {
    if n < needed {
        Err(GraphError::TooSmall { n, needed })
    } else {
        Ok(())
    }
}

fn permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_path<R: Rng>(n: usize, rng: &mut R) -> Result<PathOrder, GraphError> {
    need(n, 1)?;
    PathOrder::new(permutation(n, rng))
}

pub fn random_caterpillar<R: Rng>(n: usize, rng: &mut R) -> Result<Caterpillar, GraphError> {
    need(n, 1)?;
    let spine_len = rng.gen_range(1..=n);
    let mut legs = vec![Vec::new(); spine_len];
    for v in spine_len..n {
        legs[rng.gen_range(0..spine_len)].push(v);
    }
    let pi = permutation(n, rng);
    Caterpillar::new(
        (0..spine_len).map(|v| pi[v]).collect(),
        legs.into_iter().map(|l| l.into_iter().map(|v| pi[v]).collect()).collect(),
    )
}

/// Random triangulated polygon, relabelled; the outer cycle is recorded.
pub fn random_maximal_outerplanar<R: Rng>(n: usize, rng: &mut R) -> Result<Layer, GraphError> {
    need(n, 1)?;
    let mut edges: Vec<Edge> = match n {
        1 => vec![],
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    };
    let mut stack = vec![(0, n - 1)];
    while let Some((a, b)) = stack.pop() {
        if b < a + 2 {
            continue;
        }
        let c = rng.gen_range(a + 1..b);
        if c > a + 1 {
            edges.push((a, c));
        }
        if b > c + 1 {
            edges.push((c, b));
        }
        stack.push((a, c));
        stack.push((c, b));
    }
    let pi = permutation(n, rng);
    let edges = edges.into_iter().map(|(a, b)| (pi[a], pi[b])).collect();
    Ok(Layer::new(GraphClass::Outerplanar, edges).with_outer_cycle((0..n).map(|v| pi[v]).collect()))
}

fn insert_after(list: &mut Vec<usize>, anchor: usize, item: usize) {
    let i = list.iter().position(|&x| x == anchor).expect("anchor present");
    list.insert(i + 1, item);
}

fn succ(rot: &[Vec<usize>], v: usize, u: usize) -> usize {
    let r = &rot[v];
    let i = r.iter().position(|&x| x == u).expect("neighbour present");
    r[(i + 1) % r.len()]
}

/// Random stacked triangulation followed by random edge flips, relabelled.
pub fn random_plane_triangulation<R: Rng>(n: usize, rng: &mut R) -> Result<Layer, GraphError> {
    need(n, 3)?;
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let mut edges: Vec<Edge> = vec![(0, 1), (1, 2), (0, 2)];
    for x in 3..n {
        // Face a -> b -> c around a random dart.
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let c = succ(&rot, b, a);
        insert_after(&mut rot[b], a, x);
        insert_after(&mut rot[c], b, x);
        insert_after(&mut rot[a], c, x);
        rot.push(vec![a, c, b]);
        edges.extend([(a, x), (b, x), (c, x)]);
    }

    for _ in 0..4 * n {
        let idx = rng.gen_range(0..edges.len());
        let (a, b) = edges[idx];
        let c = succ(&rot, b, a);
        let d = succ(&rot, a, b);
        if c == d || rot[c].contains(&d) || rot[a].len() <= 3 || rot[b].len() <= 3 {
            continue;
        }
        rot[a].retain(|&w| w != b);
        rot[b].retain(|&w| w != a);
        insert_after(&mut rot[c], b, d);
        insert_after(&mut rot[d], a, c);
        edges[idx] = (c, d);
    }

    let pi = permutation(n, rng);
    let mut new_rot = vec![Vec::new(); n];
    for (v, r) in rot.into_iter().enumerate() {
        new_rot[pi[v]] = r.into_iter().map(|w| pi[w]).collect();
    }
    let edges = edges.into_iter().map(|(a, b)| (pi[a], pi[b])).collect();
    Ok(Layer::new(GraphClass::Planar, edges).with_rotation(new_rot))
}

/// A random triangulation with random edges removed while it stays connected.
pub fn random_plane_graph<R: Rng>(n: usize, rng: &mut R) -> Result<Layer, GraphError> {
    let mut layer = random_plane_triangulation(n, rng)?;
    let mut order: Vec<usize> = (0..layer.edges.len()).collect();
    order.shuffle(rng);
    let mut keep = vec![true; layer.edges.len()];
    for i in order {
        if !rng.gen_bool(0.5) {
            continue;
        }
        keep[i] = false;
        let rest: Vec<Edge> = layer.edges.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| *e).collect();
        if !is_connected(n, &rest) {
            keep[i] = true;
        }
    }
    let rot = layer.rotation.as_mut().expect("triangulations carry rotations");
    for (&(a, b), _) in layer.edges.iter().zip(&keep).filter(|(_, &k)| !k) {
        rot[a].retain(|&w| w != b);
        rot[b].retain(|&w| w != a);
    }
    layer.edges = layer.edges.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| *e).collect();
    Ok(layer)
}

/// `k` distinct points in `[1, side]^2`, no three collinear, by rejection.
/// Returns `None` when `attempts` draws do not suffice.
pub fn random_general_position_points<R: Rng>(k: usize, side: i64, attempts: usize, rng: &mut R) -> Option<Vec<GridPoint>> {
    let mut pts: Vec<GridPoint> = Vec::with_capacity(k);
    for _ in 0..attempts {
        if pts.len() == k {
            break;
        }
        let c = GridPoint::new(rng.gen_range(1..=side), rng.gen_range(1..=side));
        let ok = pts.iter().all(|&p| p != c)
            && (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| orient_raw(pts[i], pts[j], c) != Orientation::Collinear));
        if ok {
            pts.push(c);
        }
    }
    (pts.len() == k).then_some(pts)
}
