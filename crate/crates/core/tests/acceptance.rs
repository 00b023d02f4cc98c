//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line straight to
//! stderr so the verdicts show even when output is captured.

mod common;

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{certify, random_layer, span};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simembed::certify::certify_general_position;
use simembed::cli::planar_general_position_bound;
use simembed::generate::{
    random_caterpillar, random_general_position_points, random_maximal_outerplanar, random_path,
    random_plane_triangulation,
};
use simembed::geom::{orient, segments_conflict};
use simembed::graph::GraphClass;
use simembed::io::{parse_instance, parse_result, serialize_instance};
use simembed::mapped::{
    cell_height, cell_width, embed_path_caterpillar, embed_two_caterpillars, embed_two_paths,
    exhaustive_five_point_check, five_path_pair_coverage, path_from_digits, refine_general_position, FivePointVerdict,
    GridShape, COVERING_FIVE_PATHS,
};
use simembed::unmapped::{
    brute_force_point_assignment, embed_outerplanar_on_points, parabola_pointset, planar_general_position_draw,
    planar_grid_draw, simul_embed_outerplanars, simul_embed_planar_outerplanar,
};
use simembed::{EmbedError, GridPoint, Layer, LayeredInstance, MappingMode, Orientation, PathOrder, Segment};

fn report(id: u32, name: &str, outcome: &Result<String, String>) {
    let line = match outcome {
        Ok(detail) => format!("criterion {id} [{name}]: PASS ({detail})\n"),
        Err(why) => format!("criterion {id} [{name}]: FAIL ({why})\n"),
    };
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn run(id: u32, name: &str, body: impl FnOnce() -> Result<String, String>) {
    let outcome = body();
    report(id, name, &outcome);
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn criterion_1_two_paths() {
    run(1, "two paths on an n x n grid", || {
        let p1 = PathOrder::new((0..7).collect()).unwrap();
        let p2 = PathOrder::new(vec![1, 4, 0, 3, 2, 5, 6]).unwrap();
        let seven = embed_two_paths(&p1, &p2).unwrap();
        let want: Vec<GridPoint> = [(1, 3), (2, 1), (3, 5), (4, 4), (5, 2), (6, 6), (7, 7)]
            .into_iter()
            .map(GridPoint::from)
            .collect();
        ensure!(seven.coords == want, "seven-vertex layout {:?}", seven.coords);

        let start = Instant::now();
        let mut r = rng(1);
        for i in 0..500 {
            let n = r.gen_range(2..=100);
            let (a, b) = (random_path(n, &mut r).unwrap(), random_path(n, &mut r).unwrap());
            let e = embed_two_paths(&a, &b).unwrap();
            let ni = n as i64;
            ensure!(e.width == ni && e.height == ni, "instance {i}: {}x{} for n={n}", e.width, e.height);
            ensure!(span(&e.coords) == (ni, ni), "instance {i}: span {:?}", span(&e.coords));
            let rep = certify(&e, MappingMode::Given, vec![a.to_layer(), b.to_layer()], Some((ni, ni)));
            ensure!(rep.ok, "instance {i}: {:?}", rep.violations.first());
        }
        let took = start.elapsed();
        ensure!(took < Duration::from_secs(5), "500 instances took {took:?}");
        Ok(format!("seven-vertex layout exact, 500 instances certified in {took:.2?}"))
    });
}

/// Vertex `v` at `placement[v]`: are the points in general position and
/// every path free of self-crossings?
fn placement_is_valid(placement: &[GridPoint], paths: &[PathOrder]) -> bool {
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                if orient(placement[i], placement[j], placement[k]).unwrap() == Orientation::Collinear {
                    return false;
                }
            }
        }
    }
    paths.iter().all(|p| {
        let segs: Vec<Segment> = p
            .edges()
            .iter()
            .map(|&(a, b)| Segment::new(placement[a], placement[b]).unwrap())
            .collect();
        (0..segs.len()).all(|i| (i + 1..segs.len()).all(|j| !segments_conflict(&segs[i], &segs[j])))
    })
}

#[test]
fn criterion_2_five_paths() {
    run(2, "five paths with no simultaneous embedding", || {
        let paths: Vec<PathOrder> = COVERING_FIVE_PATHS.iter().map(|s| path_from_digits(s).unwrap()).collect();
        let cov = five_path_pair_coverage(&paths).unwrap();
        ensure!(cov.pairs.len() == 15 && cov.all_covered(), "uncovered {:?}", cov.uncovered());
        for i in 0..5 {
            ensure!(cov.covered_by_path(i).len() == 3, "path {i} covers {}", cov.covered_by_path(i).len());
        }

        let start = Instant::now();
        let check = exhaustive_five_point_check(GridShape::square(5), &paths).unwrap();
        let took = start.elapsed();
        let placements = match check.verdict {
            FivePointVerdict::NoCounterexample { placements_checked } => placements_checked,
            other => return Err(format!("g=5 verdict {other:?}")),
        };
        ensure!(took < Duration::from_secs(60), "search took {took:?}");

        for drop in 0..5 {
            let four: Vec<PathOrder> = (0..5).filter(|&i| i != drop).map(|i| paths[i].clone()).collect();
            let c = five_path_pair_coverage(&four).unwrap();
            ensure!(!c.uncovered().is_empty(), "dropping path {drop} leaves all pairs covered");
            match exhaustive_five_point_check(GridShape::square(5), &four).unwrap().verdict {
                FivePointVerdict::Counterexample { placement } => {
                    ensure!(placement_is_valid(&placement, &four), "dropping {drop}: bad placement {placement:?}");
                }
                other => return Err(format!("dropping {drop}: verdict {other:?}")),
            }
        }
        Ok(format!(
            "15/15 pairs, 3 per path; g=5 exhaustive: {placements} placements, none valid, {took:.2?}; every 4-subset embeds"
        ))
    });
}

#[test]
fn criterion_3_refinement() {
    run(3, "general-position refinement", || {
        let mut r = rng(3);
        for i in 0..200 {
            let side: i64 = r.gen_range(1..=50);
            let n = side as usize;
            let k = r.gen_range(1..=n);
            let mut pts: Vec<GridPoint> = Vec::with_capacity(k);
            while pts.len() < k {
                let p = GridPoint::new(r.gen_range(1..=side), r.gen_range(1..=side));
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            let out = refine_general_position(&pts, n).map_err(|e| format!("instance {i}: {e}"))?;
            ensure!(certify_general_position(&out, false).unwrap().ok, "instance {i}: collinear triple");
            let (w, h) = (cell_width(n), cell_height(n));
            let ni = n as i64;
            for (a, b) in pts.iter().zip(&out) {
                ensure!((b.x - a.x * w).abs() <= ni && (b.y - a.y * h).abs() <= ni * ni, "instance {i}: left cell");
            }
            for a in 0..k {
                for b in 0..k {
                    if pts[a].x < pts[b].x {
                        ensure!(out[a].x < out[b].x, "instance {i}: x order");
                    }
                    if pts[a].y < pts[b].y {
                        ensure!(out[a].y < out[b].y, "instance {i}: y order");
                    }
                }
            }
            let (sw, sh) = span(&out);
            ensure!(sw <= ni * w && sh <= ni * h, "instance {i}: extent {sw}x{sh}");
        }
        Ok("200 point sets on grids up to 50x50".into())
    });
}

#[test]
fn criterion_4_caterpillars() {
    run(4, "two caterpillars; path and caterpillar", || {
        let mut r = rng(4);
        for i in 0..200 {
            let n = r.gen_range(1..=60);
            let (c1, c2) = (random_caterpillar(n, &mut r).unwrap(), random_caterpillar(n, &mut r).unwrap());
            let e = embed_two_caterpillars(&c1, &c2).map_err(|e| format!("pair {i}: {e}"))?;
            let ni = n as i64;
            let bound = (ni * cell_width(n), ni * cell_height(n));
            let rep = certify(&e, MappingMode::Given, vec![c1.to_layer(), c2.to_layer()], Some(bound));
            ensure!(rep.ok, "pair {i}: {:?}", rep.violations.first());
        }
        let mut max_shift_ratio = 0.0f64;
        for i in 0..200 {
            let n = r.gen_range(1..=100);
            let p = random_path(n, &mut r).unwrap();
            let c = random_caterpillar(n, &mut r).unwrap();
            let k = c.leg_count();
            let (e, shifts) = embed_path_caterpillar(&p, &c).map_err(|e| format!("instance {i}: {e}"))?;
            let ni = n as i64;
            ensure!(e.width <= 2 * ni - k as i64, "instance {i}: width {} > 2n-k = {}", e.width, 2 * ni - k as i64);
            ensure!(e.height == ni, "instance {i}: height {}", e.height);
            ensure!(shifts <= k, "instance {i}: {shifts} shifts > k = {k}");
            let rep = certify(&e, MappingMode::Given, vec![p.to_layer(), c.to_layer()], Some((2 * ni - k as i64, ni)));
            ensure!(rep.ok, "instance {i}: {:?}", rep.violations.first());
            if k > 0 {
                max_shift_ratio = max_shift_ratio.max(shifts as f64 / k as f64);
            }
        }
        Ok(format!("200 caterpillar pairs, 200 path+caterpillar (max shifts/k = {max_shift_ratio:.2})"))
    });
}

#[test]
fn criterion_5_planar_grid() {
    run(5, "planar grid drawing and general-position variant", || {
        let mut r = rng(5);
        for i in 0..100 {
            let n = r.gen_range(3..=50);
            let g = random_plane_triangulation(n, &mut r).unwrap();
            let c = planar_grid_draw(&g, n).map_err(|e| format!("instance {i}: {e}"))?;
            let ni = n as i64;
            ensure!(
                c.iter().all(|p| (0..=2 * ni - 4).contains(&p.x) && (0..=ni - 2).contains(&p.y)),
                "instance {i}: outside the (2n-4)x(n-2) grid"
            );
            let e = simembed::SimultaneousEmbedding::from_coords(c, vec![g.edges.clone()]);
            let rep = certify(&e, MappingMode::Given, vec![g.clone()], None);
            ensure!(rep.ok, "instance {i}: {:?}", rep.violations.first());

            let gp = planar_general_position_draw(&g, n).map_err(|e| format!("instance {i}: {e}"))?;
            ensure!(certify_general_position(&gp, false).unwrap().ok, "instance {i}: collinear triple");
            let e = simembed::SimultaneousEmbedding::from_coords(gp, vec![g.edges.clone()]);
            let rep = certify(&e, MappingMode::Given, vec![g], Some(planar_general_position_bound(n)));
            ensure!(rep.ok, "instance {i}: general position variant {:?}", rep.violations.first());
        }
        Ok("100 triangulations, n <= 50".into())
    });
}

#[test]
fn criterion_6_parabola() {
    run(6, "parabola point sets", || {
        for n in 1..=200usize {
            let s = parabola_pointset(n);
            ensure!(certify_general_position(&s.points, false).unwrap().ok, "n={n}: collinear triple");
            // For n = 1 the only candidate is p = 2 = 2n; no prime lies below 2.
            if n >= 2 {
                ensure!((s.p as usize) < 2 * n, "n={n}: p={} not below 2n", s.p);
            } else {
                ensure!(s.p == 2, "n=1: p={}", s.p);
            }
        }
        let mut r = rng(6);
        let layers: Vec<Layer> = (0..5).map(|_| random_maximal_outerplanar(25, &mut r).unwrap()).collect();
        let e = simul_embed_outerplanars(&layers, 25).map_err(|e| e.to_string())?;
        let rep = certify(&e, MappingMode::Free, layers, Some((29, 29)));
        ensure!(rep.ok, "5 layers on n=25: {:?}", rep.violations.first());
        Ok("n = 1..200 in general position, p < 2n for n >= 2; 5 layers on n=25 within 29x29".into())
    });
}

#[test]
fn criterion_7_outerplanar_on_points() {
    run(7, "outerplanar graphs on point sets", || {
        let mut r = rng(7);
        for i in 0..200 {
            let k = r.gen_range(1..=7);
            let h = random_maximal_outerplanar(k, &mut r).unwrap();
            let pts = random_general_position_points(k, 15, 100_000, &mut r).unwrap();
            let a = match embed_outerplanar_on_points(&h, &pts) {
                Ok(a) => a,
                Err(EmbedError::HullInvariant { point }) => return Err(format!("trial {i}: hull invariant at {point}")),
                Err(e) => return Err(format!("trial {i}: {e}")),
            };
            let e = simembed::SimultaneousEmbedding::from_coords(pts.clone(), vec![h.edges.clone()]).with_assignment(a);
            let rep = certify(&e, MappingMode::Free, vec![h.clone()], None);
            ensure!(rep.ok, "trial {i}: {:?}", rep.violations.first());
            let b = brute_force_point_assignment(&h, &pts).unwrap();
            ensure!(b.is_some(), "trial {i}: brute force finds no assignment");
            let e = simembed::SimultaneousEmbedding::from_coords(pts, vec![h.edges.clone()]).with_assignment(b.unwrap());
            ensure!(certify(&e, MappingMode::Free, vec![h], None).ok, "trial {i}: brute force output fails");
        }
        Ok("200 trials with k <= 7, brute force agrees".into())
    });
}

#[test]
fn criterion_8_planar_with_outerplanar() {
    run(8, "planar plus outerplanar without mapping", || {
        let mut r = rng(8);
        for i in 0..100 {
            let n = r.gen_range(3..=20);
            let g1 = random_plane_triangulation(n, &mut r).unwrap();
            let g2 = random_maximal_outerplanar(n, &mut r).unwrap();
            let e = simul_embed_planar_outerplanar(&g1, &g2, n).map_err(|e| format!("pair {i}: {e}"))?;
            let map = &e.assignment.as_ref().unwrap().maps[1];
            let mut sorted = map.clone();
            sorted.sort_unstable();
            ensure!(sorted == (0..n).collect::<Vec<_>>(), "pair {i}: bijection {map:?}");
            let rep = certify(&e, MappingMode::Free, vec![g1, g2], Some(planar_general_position_bound(n)));
            ensure!(rep.ok, "pair {i}: {:?}", rep.violations.first());
        }
        Ok("100 pairs, n <= 20, within the sigma-scaled O(n^3) x O(n^4) bound".into())
    });
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_simembed")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn criterion_9_end_to_end() {
    run(9, "embed/certify round trip and document identity", || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let combos: Vec<(MappingMode, Vec<GraphClass>)> = vec![
            (MappingMode::Given, vec![GraphClass::Path, GraphClass::Path]),
            (MappingMode::Given, vec![GraphClass::Path, GraphClass::Caterpillar]),
            (MappingMode::Given, vec![GraphClass::Caterpillar, GraphClass::Path]),
            (MappingMode::Given, vec![GraphClass::Caterpillar, GraphClass::Caterpillar]),
            (MappingMode::Free, vec![GraphClass::Outerplanar]),
            (MappingMode::Free, vec![GraphClass::Path, GraphClass::Caterpillar, GraphClass::Outerplanar]),
            (MappingMode::Free, vec![GraphClass::Planar, GraphClass::Outerplanar]),
            (MappingMode::Free, vec![GraphClass::Path, GraphClass::Planar]),
        ];
        let mut r = rng(9);
        let mut runs = 0;
        for (ci, (mode, classes)) in combos.iter().enumerate() {
            for rep_i in 0..3 {
                let n = r.gen_range(3..=14);
                let layers = classes.iter().map(|&c| random_layer(c, n, &mut r)).collect();
                let inst = LayeredInstance::new(n, *mode, layers);
                let ip = dir.path().join(format!("i{ci}_{rep_i}.json"));
                let rp = dir.path().join(format!("r{ci}_{rep_i}.json"));
                std::fs::write(&ip, serialize_instance(&inst)).map_err(|e| e.to_string())?;
                let (code, _) = cli(&["embed", "--in", ip.to_str().unwrap(), "--out", rp.to_str().unwrap()]);
                ensure!(code == 0, "combo {ci} ({classes:?}, {mode:?}): embed exit {code}");
                let doc = parse_result(&std::fs::read(&rp).unwrap()).map_err(|e| e.to_string())?;
                let (code, text) = cli(&["certify", "--in", rp.to_str().unwrap()]);
                let rechecked: simembed::certify::CertificateReport =
                    serde_json::from_str(&text).map_err(|e| format!("combo {ci}: {e}"))?;
                ensure!(code == 0, "combo {ci}: certify exit {code}");
                ensure!(
                    rechecked.ok == doc.certificate.ok && rechecked.violations == doc.certificate.violations,
                    "combo {ci}: certificates disagree"
                );
                runs += 1;
            }
        }

        // An unsupported combination is refused with exit 2.
        let g = random_plane_triangulation(6, &mut r).unwrap();
        let bad = LayeredInstance::new(6, MappingMode::Given, vec![g.clone(), g]);
        let bp = dir.path().join("bad.json");
        std::fs::write(&bp, serialize_instance(&bad)).unwrap();
        let (code, _) = cli(&["embed", "--in", bp.to_str().unwrap()]);
        ensure!(code == 2, "two planar layers with mapping: exit {code}");

        let classes = [GraphClass::Path, GraphClass::Caterpillar, GraphClass::Outerplanar, GraphClass::Planar];
        for seed in 0..100u64 {
            let mut rr = rng(1000 + seed);
            let n = rr.gen_range(3..20);
            let layers = (0..rr.gen_range(1..4)).map(|_| random_layer(classes[rr.gen_range(0..4)], n, &mut rr)).collect();
            let mode = if rr.gen_bool(0.5) { MappingMode::Given } else { MappingMode::Free };
            let inst = LayeredInstance::new(n, mode, layers);
            let parsed = parse_instance(serialize_instance(&inst).as_bytes()).map_err(|e| e.to_string())?;
            ensure!(parsed == inst, "instance {seed} changed across serialize/parse");
        }
        Ok(format!("{runs} CLI round trips over {} class combinations; 100 document identities", combos.len()))
    });
}
