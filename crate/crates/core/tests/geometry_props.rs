use bounded_treemap::geometry::{
    area_cut, canonicalize, clip_convex, convex_hull, ortho_difference, rectilinear_mismatch_area,
    ConvexPolygon, Corner, Point, Polygon, Rect,
};
use proptest::prelude::*;

fn convex() -> impl Strategy<Value = ConvexPolygon> {
    (
        prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 3..16),
        -3.0f64..3.0,
        -3.0f64..3.0,
    )
        .prop_filter_map("degenerate hull", |(pts, lx, ly)| {
            let (sx, sy) = (lx.exp(), ly.exp());
            let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::new(x * sx, y * sy)).collect();
            convex_hull(&pts).ok().filter(|p| p.area() > 1e-6 * sx * sy)
        })
}

fn rect() -> impl Strategy<Value = Rect> {
    (-5.0f64..5.0, -5.0f64..5.0, 0.01f64..10.0, 0.01f64..10.0)
        .prop_map(|(x, y, w, h)| Rect::from_bounds(x, y, x + w, y + h).unwrap())
}

fn corner() -> impl Strategy<Value = Corner> {
    (any::<bool>(), any::<bool>()).prop_map(|(r, t)| Corner::from_sides(r, t))
}

proptest! {
    #[test]
    fn area_cut_hits_fraction(p in convex(), theta in 0.0f64..std::f64::consts::PI, f in 0.01f64..0.99) {
        let line = area_cut(&p, theta, f);
        let (left, right) = clip_convex(&p, &line).unwrap();
        let a = p.area();
        prop_assert!((left.area() - f * a).abs() <= 1e-9 * a, "{} vs {}", left.area(), f * a);
        prop_assert!((left.area() + right.area() - a).abs() <= 1e-9 * a);
    }

    #[test]
    fn aspect_definitions_bracket(p in convex()) {
        let q = p.polygon();
        prop_assert!(q.asp_ortho() >= 1.0 - 1e-12);
        prop_assert!(q.asp_convex() >= q.asp_ortho() * (1.0 - 1e-12));
        prop_assert!(q.asp_convex() <= 2.0 * q.asp_ortho() * (1.0 + 1e-12));
    }

    #[test]
    fn hull_contains_its_input(pts in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 3..20)) {
        let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::new(x, y)).collect();
        if let Ok(h) = convex_hull(&pts) {
            let b = h.bbox();
            for q in &pts {
                prop_assert!(b.min.x <= q.x && q.x <= b.max.x && b.min.y <= q.y && q.y <= b.max.y);
            }
        }
    }

    #[test]
    fn isometry_round_trips(r in rect(), c in corner(), u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let iso = canonicalize(&r, c);
        let p = Point::new(r.min.x + u * r.width(), r.min.y + v * r.height());
        let q = iso.forward(p);
        prop_assert!(q.x >= -1e-9 && q.x <= iso.canonical_width() + 1e-9);
        prop_assert!(q.y >= -1e-9 && q.y <= iso.canonical_height() + 1e-9);
        let back = iso.inverse(q);
        prop_assert!(back.dist(p) <= 1e-9 * (1.0 + r.width() + r.height()));
        // the marked corner lands at the canonical bottom right
        let m = iso.forward(r.corner(c));
        prop_assert!(m.dist(Point::new(iso.canonical_width(), 0.0)) <= 1e-9);
    }

    #[test]
    fn corner_hole_area(r in rect(), c in corner(), s in 0.05f64..0.95) {
        let iso = canonicalize(&r, c);
        let hole = iso.corner_rect(c, s);
        let d = ortho_difference(&r, &[hole]).unwrap();
        prop_assert!((d.area() - (r.area() - hole.area())).abs() <= 1e-9 * r.area());
        prop_assert_eq!(d.polygon().reflex_count(), 1);
    }

    #[test]
    fn split_rectangles_tile(r in rect(), f in 0.01f64..0.99, shift in 0.0f64..0.1) {
        let x = r.min.x + f * r.width();
        let a = Rect::from_bounds(r.min.x, r.min.y, x, r.max.y).unwrap();
        let b = Rect::from_bounds(x, r.min.y, r.max.x, r.max.y).unwrap();
        let parent: Polygon = r.into();
        let (pa, pb): (Polygon, Polygon) = (a.into(), b.into());
        prop_assert!(rectilinear_mismatch_area(&parent, &[&pa, &pb]) <= 1e-12 * r.area());
        // moving one piece up uncovers a strip and pokes out by the same amount
        let dy = shift * r.height();
        let moved: Polygon = Rect::from_bounds(x, r.min.y + dy, r.max.x, r.max.y + dy).unwrap().into();
        let expected = 2.0 * dy * b.width();
        let got = rectilinear_mismatch_area(&parent, &[&pa, &moved]);
        prop_assert!((got - expected).abs() <= 1e-9 * r.area(), "{} vs {}", got, expected);
    }
}
