#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use simembed::certify::{certify_embedding, CertificateReport};
use simembed::generate::{random_caterpillar, random_maximal_outerplanar, random_path, random_plane_triangulation};
use simembed::graph::{GraphClass, Layer};
use simembed::{GridPoint, LayeredInstance, MappingMode, Segment, SimultaneousEmbedding};

pub fn certify(e: &SimultaneousEmbedding, mapping: MappingMode, layers: Vec<Layer>, bounds: Option<(i64, i64)>) -> CertificateReport {
    let inst = LayeredInstance::new(e.coords.len(), mapping, layers);
    certify_embedding(e, &inst, bounds).expect("arity matches")
}

/// Straight O(m^2) crossing scan kept separate from the certifier.
pub fn layer_is_plane(edges: &[(usize, usize)], at: impl Fn(usize) -> GridPoint) -> bool {
    let segs: Vec<Segment> = edges.iter().map(|&(a, b)| Segment::new(at(a), at(b)).unwrap()).collect();
    (0..segs.len()).all(|i| (i + 1..segs.len()).all(|j| !simembed::geom::segments_conflict(&segs[i], &segs[j])))
}

pub fn span(coords: &[GridPoint]) -> (i64, i64) {
    let w = coords.iter().map(|p| p.x).max().unwrap() - coords.iter().map(|p| p.x).min().unwrap() + 1;
    let h = coords.iter().map(|p| p.y).max().unwrap() - coords.iter().map(|p| p.y).min().unwrap() + 1;
    (w, h)
}

/// A random layer of the given class on `n` vertices.
pub fn random_layer(class: GraphClass, n: usize, rng: &mut ChaCha8Rng) -> Layer {
    match class {
        GraphClass::Path => random_path(n, rng).unwrap().to_layer(),
        GraphClass::Caterpillar => random_caterpillar(n, rng).unwrap().to_layer(),
        GraphClass::Outerplanar => {
            let mut l = random_maximal_outerplanar(n, rng).unwrap();
            // Drop some chords so non-maximal layers are exercised too.
            let cycle = l.outer_cycle.clone().unwrap();
            let on_cycle = |a: usize, b: usize| {
                let pa = cycle.iter().position(|&v| v == a).unwrap();
                let pb = cycle.iter().position(|&v| v == b).unwrap();
                let d = pa.abs_diff(pb);
                d == 1 || d == n - 1
            };
            l.edges.retain(|&(a, b)| on_cycle(a, b) || rng.gen_bool(0.6));
            l
        }
        GraphClass::Planar => random_plane_triangulation(n, rng).unwrap(),
    }
}
