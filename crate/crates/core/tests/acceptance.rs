//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test --release --test acceptance`. Exits nonzero if any
//! criterion not listed in `KNOWN_RED` fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use bounded_treemap::bench::{run_bench, BenchConfig};
use bounded_treemap::convex_layout::{check_k_phi, separation_angle, BOX_RATIO};
use bounded_treemap::geometry::{convex_hull, ConvexPolygon, Point, Rect, ShapeClass};
use bounded_treemap::io::{
    emit_layout_json, emit_report, emit_tree_json, generate_random_tree, parse_tree, render_svg,
    RandomTreeSpec, RenderStyle, WeightDistribution,
};
use bounded_treemap::layout::{compute_layout, Algorithm, Trace};
use bounded_treemap::ortho_layout::OrthoCase;
use bounded_treemap::partition::{lpt_partition, split_rect, vertical_cut_widths};
use bounded_treemap::single_level::{
    find_packing, layout_from_packing, layout_single_level_traced, leaf_bound,
    lower_bound_aspect_closed_form, lower_bound_instance, lower_bound_root, rect_bound,
    reduce_square_packing, PackingError, Placement, SingleLevelInstance, SquarePackingInstance,
};
use bounded_treemap::tree_model::WeightedTree;
use bounded_treemap::verifier::{verify, VerificationReport, Violation, AREA_TOL, TILING_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that fail for documented reasons (see README).
const KNOWN_RED: &[u32] = &[3, 5];

const FIXTURES: [&str; 3] = ["ortho_case_c.json", "ortho_case_d.json", "ortho_case_d_deep.json"];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Residuals of every layout verified anywhere in the suite.
#[derive(Default)]
struct Exactness {
    layouts: usize,
    max_area: f64,
    max_tiling: f64,
    failures: usize,
}

impl Exactness {
    fn record(&mut self, rep: &VerificationReport) {
        self.layouts += 1;
        self.max_area = self.max_area.max(rep.max_area_residual);
        self.max_tiling = self.max_tiling.max(rep.max_tiling_residual);
        let bad = rep.violations().any(|(_, v)| {
            matches!(
                v,
                Violation::Area { .. } | Violation::Tiling { .. } | Violation::RootNotUnit { .. }
            )
        });
        if bad || rep.max_area_residual > AREA_TOL || rep.max_tiling_residual > TILING_TOL {
            self.failures += 1;
        }
    }
}

fn fixture(name: &str) -> WeightedTree {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    parse_tree(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// 200 seeded log-uniform trees with up to 500 leaves and depth at most 12,
/// followed by the case (c)/(d) fixtures.
fn corpus() -> Vec<(String, WeightedTree)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for i in 0..200 {
        let spec = RandomTreeSpec {
            max_depth: rng.random_range(1..=12),
            max_children: rng.random_range(2..=8),
            leaf_count: rng.random_range(1..=500),
            weights: WeightDistribution::LogUniform { min: 1e-4, max: 1.0 },
        };
        let capacity = (spec.max_children as f64).powi(spec.max_depth as i32);
        let spec = RandomTreeSpec {
            leaf_count: spec.leaf_count.min(capacity as usize),
            ..spec
        };
        let seed = rng.random();
        out.push((format!("random #{i}"), generate_random_tree(seed, &spec).unwrap()));
    }
    for name in FIXTURES {
        out.push((name.to_string(), fixture(name)));
    }
    out
}

fn criterion_1(corpus: &[(String, WeightedTree)], ex: &mut Exactness) -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    let (mut leaf_rect, mut leaf_ls, mut internal) = (0.0f64, 0.0f64, 0.0f64);
    let mut cases = [0usize; 6];
    for (name, t) in corpus {
        let (layout, trace) = compute_layout(t, Algorithm::Ortho).unwrap();
        let rep = verify(t, &layout, Algorithm::Ortho).unwrap();
        ex.record(&rep);
        if !rep.pass {
            failed.push(name.clone());
        }
        for r in &rep.regions {
            match (r.leaf, r.shape) {
                (true, ShapeClass::Rectangle) => leaf_rect = leaf_rect.max(r.asp_ortho),
                (true, _) => leaf_ls = leaf_ls.max(r.asp_ortho),
                (false, _) => internal = internal.max(r.asp_ortho),
            }
        }
        if let Trace::Ortho(o) = trace {
            for (k, c) in OrthoCase::ALL.iter().enumerate() {
                cases[k] += o.count(*c);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let mut fixture_cases = Vec::new();
    for (name, want) in [
        ("ortho_case_c.json", OrthoCase::HeavyLeaf),
        ("ortho_case_d.json", OrthoCase::ThreeSlices),
        ("ortho_case_d_deep.json", OrthoCase::ThreeSlices),
    ] {
        let (_, trace) = compute_layout(&fixture(name), Algorithm::Ortho).unwrap();
        let Trace::Ortho(o) = trace else { unreachable!() };
        fixture_cases.push(o.count(want) > 0);
    }
    let tol = 1e-6;
    let pass = failed.is_empty()
        && leaf_rect <= 8.0 + tol
        && leaf_ls <= 32.0 + tol
        && internal <= 64.0 + tol
        && fixture_cases.iter().all(|&b| b)
        && elapsed < 10.0;
    Outcome::new(
        pass,
        format!(
            "{} trees, {} failing; max asp leaf rect {leaf_rect:.4}, leaf L/S {leaf_ls:.4}, internal {internal:.4}; \
             heavy_leaf {} three_slices {}; fixtures force (c)/(d): {fixture_cases:?}; {elapsed:.2}s",
            corpus.len(),
            failed.len(),
            cases[OrthoCase::HeavyLeaf as usize],
            cases[OrthoCase::ThreeSlices as usize],
        ),
    )
}

fn criterion_2(ex: &mut Exactness) -> Outcome {
    let t = WeightedTree::from_leaf_weights(&[0.95, 0.05]).unwrap();
    let (layout, _) = compute_layout(&t, Algorithm::Ortho).unwrap();
    let rep = verify(&t, &layout, Algorithm::Ortho).unwrap();
    ex.record(&rep);
    let heavy = &rep.regions[1];
    let bound = 64.0 / 7.0;
    let pass = rep.pass && heavy.shape == ShapeClass::LShape && heavy.asp_ortho <= bound + 1e-9;
    Outcome::new(
        pass,
        format!(
            "heavy leaf {} with asp {:.9} (bound {bound:.9})",
            heavy.shape, heavy.asp_ortho
        ),
    )
}

/// Largest `asp_convex / (depth + 6)` over the regions of one tree.
fn scaled_aspect(rep: &VerificationReport) -> f64 {
    rep.regions
        .iter()
        .map(|r| r.asp_convex / (r.depth as f64 + 6.0))
        .fold(0.0, f64::max)
}

fn criterion_3(corpus: &[(String, WeightedTree)], ex: &mut Exactness) -> Outcome {
    let mut failed = 0;
    let mut inv_fail = 0;
    let mut scaled = 0.0f64;
    for (_, t) in corpus {
        let (layout, _) = compute_layout(t, Algorithm::Convex).unwrap();
        let rep = verify(t, &layout, Algorithm::Convex).unwrap();
        ex.record(&rep);
        failed += usize::from(!rep.pass);
        scaled = scaled.max(scaled_aspect(&rep));
        for r in &layout.regions {
            let d = t.depth_of(r.node);
            let p = ConvexPolygon::new(r.polygon.vertices().to_vec()).unwrap();
            let inv1 = p.non_axis_edge_count() <= d + 4;
            let inv2 = check_k_phi(&p, BOX_RATIO, separation_angle(d)).ok;
            inv_fail += usize::from(!(inv1 && inv2));
        }
    }

    // Depth held at exactly 6 while the leaf count grows.
    let sizes = [64, 128, 256, 512];
    let mut seeds = ChaCha8Rng::seed_from_u64(0);
    let mut series = Vec::new();
    for &n in &sizes {
        let spec = RandomTreeSpec {
            max_depth: 6,
            max_children: 12,
            leaf_count: n,
            weights: WeightDistribution::LogUniform { min: 1e-4, max: 1.0 },
        };
        let mut worst = 0.0f64;
        let mut kept = 0;
        while kept < 200 {
            let t = generate_random_tree(seeds.random(), &spec).unwrap();
            if t.depth() != 6 {
                continue;
            }
            kept += 1;
            let (layout, _) = compute_layout(&t, Algorithm::Convex).unwrap();
            let rep = verify(&t, &layout, Algorithm::Convex).unwrap();
            ex.record(&rep);
            failed += usize::from(!rep.pass);
            worst = worst.max(scaled_aspect(&rep));
        }
        series.push(worst);
    }
    let monotone = series.windows(2).all(|w| w[1] <= w[0] + 1e-9);
    let pass = failed == 0 && inv_fail == 0 && scaled.is_finite() && monotone;
    let series_text: Vec<String> = sizes
        .iter()
        .zip(&series)
        .map(|(n, s)| format!("n={n}: {s:.6}"))
        .collect();
    Outcome::new(
        pass,
        format!(
            "{} corpus trees, {failed} failing verify, {inv_fail} regions break the edge-count or separation invariant; \
             max asp_convex/(d+6) = {scaled:.6}; depth 6 series [{}], non-increasing: {monotone}",
            corpus.len(),
            series_text.join(", ")
        ),
    )
}

/// Random single-level weights: mixtures of flat, log-uniform and dominated
/// instances.
fn single_instance(rng: &mut ChaCha8Rng) -> SingleLevelInstance {
    let n = rng.random_range(1..=40);
    let kind = rng.random_range(0..4);
    let w: Vec<f64> = (0..n)
        .map(|i| match kind {
            0 => 1.0 - rng.random::<f64>(),
            1 => (rng.random_range(-9.0..0.0f64)).exp(),
            2 if i == 0 => rng.random_range(1.0..50.0),
            _ => rng.random_range(0.2..1.0),
        })
        .collect();
    SingleLevelInstance::new(&w).unwrap()
}

fn criterion_4(ex: &mut Exactness) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    let (mut leaf, mut rect) = (0.0f64, 0.0f64);
    let mut failed = 0;
    for _ in 0..10_000 {
        let inst = single_instance(&mut rng);
        let (layout, trace) = layout_single_level_traced(&inst);
        let rep = verify(&inst.tree(), &layout, Algorithm::Single).unwrap();
        ex.record(&rep);
        failed += usize::from(!rep.pass);
        leaf = leaf.max(rep.max_asp_ortho(|r| r.leaf)).max(trace.max_leaf_aspect);
        rect = rect
            .max(rep.auxiliary.iter().map(|a| a.aspect).fold(0.0, f64::max))
            .max(trace.max_rect_aspect);
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = failed == 0 && leaf <= leaf_bound() + 1e-9 && rect <= rect_bound() + 1e-9 && elapsed < 5.0;
    Outcome::new(
        pass,
        format!(
            "10000 instances, {failed} failing; max leaf asp {leaf:.6} (bound {:.6}), max rect asp {rect:.6} (bound {:.6}); {elapsed:.2}s",
            leaf_bound(),
            rect_bound()
        ),
    )
}

fn criterion_5(ex: &mut Exactness) -> Outcome {
    let x = lower_bound_root();
    let cubic = 4.0 * x * x * x - 4.0 * x * x + 4.0 * x - 1.0;
    let closed = lower_bound_aspect_closed_form();
    let inst = lower_bound_instance();
    let (layout, _) = layout_single_level_traced(&inst);
    let rep = verify(&inst.tree(), &layout, Algorithm::Single).unwrap();
    ex.record(&rep);
    let asp = rep.max_asp_ortho(|r| r.leaf);
    let pass = rep.pass
        && cubic.abs() <= 1e-9
        && (1.0 / x - closed).abs() <= 1e-9
        && (3.1305 - 1e-4..=3.15470 + 1e-9).contains(&asp);
    Outcome::new(
        pass,
        format!(
            "x = {x:.12}, cubic residual {cubic:.1e}, 1/x - closed form {:.1e}; max asp {asp:.6} \
             (1/x {:.6}, differs by {:.1e}), required [{:.6}, {:.6}]",
            1.0 / x - closed,
            1.0 / x,
            (asp - 1.0 / x).abs(),
            3.1305 - 1e-4,
            3.15470 + 1e-9
        ),
    )
}

/// Integer weights whose maximum is at most `k/3000` of the total.
fn lpt_instance(rng: &mut ChaCha8Rng, k: u64) -> Vec<u64> {
    let n = rng.random_range(2..=12);
    let mut w: Vec<u64> = (0..n).map(|_| rng.random_range(1..=1u64 << 20)).collect();
    loop {
        let max = *w.iter().max().unwrap();
        let total: u64 = w.iter().sum();
        if 3000 * max <= k * total {
            return w;
        }
        let lo = if rng.random_bool(0.5) { max / 2 } else { 1 };
        w.push(rng.random_range(lo.max(1)..=max));
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut detail = Vec::new();
    let mut pass = true;
    // t = k / 3000: [3/10, 1/3) and [1/3, 2/3].
    for (label, range, below_third) in [
        ("t in [3/10, 1/3)", 900..=999u64, true),
        ("t in [1/3, 2/3]", 1000..=2000u64, false),
    ] {
        let mut bad = 0;
        let mut tight = 0.0f64;
        for _ in 0..10_000 {
            let k = rng.random_range(range.clone());
            let w = lpt_instance(&mut rng, k);
            let weights: Vec<f64> = w.iter().map(|&x| x as f64).collect();
            let s = lpt_partition(&weights).unwrap();
            let (w1, w2) = (s.w1 as u64, s.w2 as u64);
            let total: u64 = w.iter().sum();
            let ok = w1 + w2 == total
                && w2 <= w1
                && if below_third {
                    3000 * w1 <= 2 * k * total
                } else {
                    3 * w1 <= 2 * total
                };
            bad += usize::from(!ok);
            let bound = if below_third {
                2.0 * k as f64 / 3000.0
            } else {
                2.0 / 3.0
            };
            tight = tight.max(w1 as f64 / total as f64 / bound);
        }
        pass &= bad == 0;
        detail.push(format!("{label}: {bad} violations, max w1/bound {tight:.4}"));
    }
    Outcome::new(pass, detail.join("; "))
}

fn random_convex(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    loop {
        let (sx, sy) = (
            rng.random_range(-3.0..3.0f64).exp(),
            rng.random_range(-3.0..3.0f64).exp(),
        );
        let k = rng.random_range(3..=14);
        let pts: Vec<Point> = (0..k)
            .map(|_| Point::new(rng.random::<f64>() * sx, rng.random::<f64>() * sy))
            .collect();
        if let Ok(p) = convex_hull(&pts) {
            if p.area() > 1e-9 * sx * sy {
                return p;
            }
        }
    }
}

/// Same polygon with x and y swapped when it is taller than wide.
fn wide(p: ConvexPolygon) -> ConvexPolygon {
    if p.width() >= p.height() {
        return p;
    }
    let swapped: Vec<Point> = p.vertices().iter().map(|v| Point::new(v.y, v.x)).collect();
    convex_hull(&swapped).unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rect_bad = 0;
    for _ in 0..10_000 {
        let (w, h) = (
            rng.random_range(-4.0..4.0f64).exp(),
            rng.random_range(-4.0..4.0f64).exp(),
        );
        let r = Rect::from_bounds(0.0, 0.0, w, h).unwrap();
        let f = rng.random_range(-9.0..0.0f64).exp().min(0.999_999);
        let (w1, w2) = (f * r.area(), (1.0 - f) * r.area());
        let (r1, r2) = split_rect(&r, w1, w2).unwrap();
        for (piece, wi) in [(r1, w1), (r2, w2)] {
            let bound = r.aspect().max(r.area() / wi);
            rect_bad += usize::from(piece.aspect() > bound + 1e-9);
        }
    }
    let mut poly_bad = 0;
    let mut narrowest = f64::INFINITY;
    for _ in 0..10_000 {
        let p = wide(random_convex(&mut rng));
        let f = rng.random_range(1.0 / 3.0..=2.0 / 3.0);
        let rep = vertical_cut_widths(&p, f).unwrap();
        poly_bad += usize::from(!rep.within_quarters);
        narrowest = narrowest.min(rep.left_width.min(rep.right_width) / rep.width);
    }
    Outcome::new(
        rect_bad == 0 && poly_bad == 0,
        format!(
            "rectangles: {rect_bad} violations; convex polygons: {poly_bad} violations, narrowest piece {narrowest:.4} of the width"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..10_000 {
        let p = random_convex(&mut rng);
        let sigma = p.polygon().bounding_square_area();
        let d2 = p.polygon().diameter_sq();
        let tol = 1e-12 * sigma;
        bad += usize::from(!(sigma <= d2 + tol && d2 <= 2.0 * sigma + tol));
        lo = lo.min(d2 / sigma);
        hi = hi.max(d2 / sigma);
    }
    Outcome::new(
        bad == 0,
        format!("{bad} violations; diam^2 / area(sigma) in [{lo:.6}, {hi:.6}]"),
    )
}

/// Non-decreasing side lists of length 1..=max_len with entries in 1..=side.
fn multisets(side: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(side: u32, max_len: usize, from: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for s in from..=side {
            cur.push(s);
            go(side, max_len, s, cur, out);
            cur.pop();
        }
    }
    go(side, max_len, 1, &mut cur, &mut out);
    out
}

/// Every square sits on the integer grid at its own side length without
/// overlap, so every region of the layout is a square in exact arithmetic.
fn exact_packing(sp: &SquarePackingInstance, placement: &Placement) -> bool {
    let n = sp.container_side;
    let mut grid = vec![false; (n * n) as usize];
    placement.len() == sp.sides.len()
        && placement.iter().zip(&sp.sides).all(|(&(x, y, s), &side)| {
            s == side
                && x + s <= n
                && y + s <= n
                && (y..y + s)
                    .all(|r| (x..x + s).all(|c| !std::mem::replace(&mut grid[(r * n + c) as usize], true)))
        })
}

fn criterion_9(ex: &mut Exactness) -> Outcome {
    let (mut total, mut overfull, mut feasible, mut bad) = (0, 0, 0, 0);
    let mut max_drift = 0.0f64;
    for side in 1..=4 {
        for sides in multisets(side, 5) {
            total += 1;
            let sp = match SquarePackingInstance::new(side, sides) {
                Ok(sp) => sp,
                Err(PackingError::Overfull { .. }) => {
                    overfull += 1;
                    continue;
                }
                Err(e) => panic!("{e}"),
            };
            let Some(placement) = find_packing(&sp).unwrap() else {
                continue;
            };
            feasible += 1;
            let layout = layout_from_packing(&sp, &placement);
            let t = reduce_square_packing(&sp).unwrap().tree();
            let rep = verify(&t, &layout, Algorithm::Single).unwrap();
            ex.record(&rep);
            let drift = rep
                .regions
                .iter()
                .map(|r| (r.asp_ortho - 1.0).abs())
                .fold(0.0, f64::max);
            max_drift = max_drift.max(drift);
            if !(rep.pass && exact_packing(&sp, &placement) && drift <= 2.0 * f64::EPSILON) {
                bad += 1;
            }
        }
    }
    let two_in_three = SquarePackingInstance::new(3, vec![2, 2]).unwrap();
    let infeasible = find_packing(&two_in_three).unwrap().is_none();
    let weights = two_in_three.reduce().unwrap();
    let exact = weights.numerators == [4, 4, 1] && weights.denominator == 9;
    Outcome::new(
        bad == 0 && infeasible && exact,
        format!(
            "{total} instances ({overfull} overfull, {feasible} packable), {bad} packable layouts not at aspect 1 \
             (largest float deviation {max_drift:.1e}); [2,2] in 3 infeasible: {infeasible}; weights {:?}/{}",
            weights.numerators, weights.denominator
        ),
    )
}

fn pipeline_bytes(t: &WeightedTree, alg: Algorithm) -> (String, String, String) {
    let (layout, _) = compute_layout(t, alg).unwrap();
    let rep = verify(t, &layout, alg).unwrap();
    (
        render_svg(t, &layout, &RenderStyle::default()),
        emit_report(&rep),
        emit_layout_json(t, &layout),
    )
}

fn criterion_10() -> Outcome {
    let single =
        WeightedTree::from_leaf_weights(&(1..=25).map(|i| 1.0 / i as f64).collect::<Vec<_>>()).unwrap();
    let deep = fixture("ortho_case_d_deep.json");
    let mut same = 0;
    let mut checks = 0;
    for (t, alg) in [
        (&deep, Algorithm::Convex),
        (&deep, Algorithm::Ortho),
        (&single, Algorithm::Single),
    ] {
        checks += 1;
        same += usize::from(pipeline_bytes(t, alg) == pipeline_bytes(t, alg));
    }
    for alg in [Algorithm::Convex, Algorithm::Ortho, Algorithm::Single] {
        let config = BenchConfig {
            algorithm: alg,
            trials: 8,
            seed: 10,
            spec: RandomTreeSpec {
                leaf_count: 60,
                ..RandomTreeSpec::default()
            },
        };
        checks += 1;
        same += usize::from(
            emit_report(&run_bench(&config).unwrap()) == emit_report(&run_bench(&config).unwrap()),
        );
    }
    let spec = RandomTreeSpec::default();
    checks += 1;
    same += usize::from(
        emit_tree_json(&generate_random_tree(3, &spec).unwrap())
            == emit_tree_json(&generate_random_tree(3, &spec).unwrap()),
    );
    Outcome::new(
        same == checks,
        format!("{same}/{checks} repeated outputs byte-identical"),
    )
}

fn criterion_11(ex: &Exactness) -> Outcome {
    Outcome::new(
        ex.failures == 0 && ex.max_area <= AREA_TOL && ex.max_tiling <= TILING_TOL,
        format!(
            "{} layouts, {} with area/tiling violations; max area residual {:.2e}, max tiling residual {:.2e}",
            ex.layouts, ex.failures, ex.max_area, ex.max_tiling
        ),
    )
}

fn main() -> ExitCode {
    let corpus = corpus();
    let mut ex = Exactness::default();
    let mut outcomes = vec![
        criterion_1(&corpus, &mut ex),
        criterion_2(&mut ex),
        criterion_3(&corpus, &mut ex),
        criterion_4(&mut ex),
        criterion_5(&mut ex),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(&mut ex),
        criterion_10(),
    ];
    outcomes.push(criterion_11(&ex));
    let mut unexpected = 0;
    for (i, o) in outcomes.iter().enumerate() {
        let n = i as u32 + 1;
        let status = match (o.pass, KNOWN_RED.contains(&n)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {n}: {status}: {}", o.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
