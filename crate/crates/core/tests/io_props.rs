mod common;

use common::random_layer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simembed::certify::certify_embedding;
use simembed::graph::GraphClass;
use simembed::io::{parse_instance, parse_result, serialize_instance, serialize_result, ResultDocument};
use simembed::svg::{default_styles, render_svg};
use simembed::unmapped::simul_embed_outerplanars;
use simembed::{LayeredInstance, MappingMode};

/// A random valid instance drawn from every class.
pub fn random_instance(seed: u64) -> LayeredInstance {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = r.gen_range(3..20);
    let classes = [GraphClass::Path, GraphClass::Caterpillar, GraphClass::Outerplanar, GraphClass::Planar];
    let layers = (0..r.gen_range(1..4))
        .map(|_| random_layer(classes[r.gen_range(0..4)], n, &mut r))
        .collect();
    let mapping = if r.gen_bool(0.5) { MappingMode::Given } else { MappingMode::Free };
    let mut inst = LayeredInstance::new(n, mapping, layers);
    if r.gen_bool(0.3) {
        inst.vertex_labels = (0..n).map(|i| format!("v{i}")).collect();
    }
    inst
}

#[test]
fn parse_serialize_identity_on_hundred_instances() {
    for seed in 0..100 {
        let inst = random_instance(seed);
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(text.as_bytes()).unwrap(), inst, "seed {seed}");
        assert_eq!(serialize_instance(&parse_instance(text.as_bytes()).unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn result_documents_round_trip(n in 1usize..15, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let layers = vec![random_layer(GraphClass::Outerplanar, n, &mut r), random_layer(GraphClass::Path, n, &mut r)];
        let e = simul_embed_outerplanars(&layers, n).unwrap();
        let inst = LayeredInstance::new(n, MappingMode::Free, layers);
        let rep = certify_embedding(&e, &inst, None).unwrap();
        let doc = ResultDocument::new(&e, &inst, rep);
        let text = serialize_result(&doc);
        let back = parse_result(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.embedding(), e);
    }
}

#[test]
fn three_layer_svg_has_three_groups() {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let layers: Vec<_> = [GraphClass::Path, GraphClass::Caterpillar, GraphClass::Outerplanar]
        .into_iter()
        .map(|c| random_layer(c, 8, &mut r))
        .collect();
    let edges: usize = layers.iter().map(|l| l.edges.len()).sum();
    let e = simul_embed_outerplanars(&layers, 8).unwrap();
    let svg = render_svg(&e, &[], &default_styles(3));
    assert_eq!(svg.matches("<g id=\"layer-").count(), 3);
    assert_eq!(svg.matches("<line").count(), edges);
    assert_eq!(svg.matches("<circle").count(), 8);
}
