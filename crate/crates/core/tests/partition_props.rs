use bounded_treemap::geometry::{convex_hull, Point, Rect};
use bounded_treemap::partition::{lpt_bound, lpt_partition, split_rect, vertical_cut_widths};
use proptest::prelude::*;

proptest! {
    #[test]
    fn lpt_bins_partition_items(w in prop::collection::vec(1u32..1_000_000, 2..40)) {
        let weights: Vec<f64> = w.iter().map(|&x| f64::from(x)).collect();
        let s = lpt_partition(&weights).unwrap();
        let mut all: Vec<usize> = s.h1.iter().chain(&s.h2).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..w.len()).collect::<Vec<_>>());
        prop_assert!(s.w1 >= s.w2);
        prop_assert_eq!(s.w1, s.h1.iter().map(|&i| weights[i]).sum::<f64>());
        prop_assert_eq!(s.w1 + s.w2, weights.iter().sum::<f64>());
        // the greedy rule keeps the bins within one item of each other
        let max = weights.iter().copied().fold(0.0, f64::max);
        prop_assert!(s.w1 - s.w2 <= max);
    }

    #[test]
    fn lpt_respects_regime_bound(w in prop::collection::vec(1u32..1000, 4..30)) {
        let weights: Vec<f64> = w.iter().map(|&x| f64::from(x)).collect();
        let total: f64 = weights.iter().sum();
        let t = weights.iter().copied().fold(0.0, f64::max) / total;
        let t = t.max(0.3);
        if let Some(b) = lpt_bound(t) {
            let s = lpt_partition(&weights).unwrap();
            prop_assert!(s.w1 <= b * total * (1.0 + 1e-12), "{} > {}", s.w1, b * total);
        }
    }

    #[test]
    fn split_rect_bound(w in 0.01f64..100.0, h in 0.01f64..100.0, f in 0.0001f64..0.9999) {
        let r = Rect::from_bounds(0.0, 0.0, w, h).unwrap();
        let (w1, w2) = (f * r.area(), (1.0 - f) * r.area());
        let (a, b) = split_rect(&r, w1, w2).unwrap();
        prop_assert!((a.area() - w1).abs() <= 1e-12 * r.area());
        prop_assert!((b.area() - w2).abs() <= 1e-12 * r.area());
        prop_assert!(a.aspect() <= r.aspect().max(r.area() / w1) + 1e-9);
        prop_assert!(b.aspect() <= r.aspect().max(r.area() / w2) + 1e-9);
    }

    #[test]
    fn vertical_cuts_stay_in_quarters(
        pts in prop::collection::vec((0.0f64..4.0, 0.0f64..1.0), 3..14),
        f in (1.0f64 / 3.0)..=(2.0 / 3.0),
    ) {
        let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let Ok(p) = convex_hull(&pts) else { return Ok(()) };
        prop_assume!(p.area() > 1e-6 && p.width() >= p.height());
        let rep = vertical_cut_widths(&p, f).unwrap();
        prop_assert!(rep.within_quarters, "{:?}", rep);
    }
}

#[test]
fn split_rect_rejects_mismatched_weights() {
    assert!(split_rect(&Rect::unit(), 0.5, 0.6).is_err());
    assert!(split_rect(&Rect::unit(), 1.0, 0.0).is_err());
}
