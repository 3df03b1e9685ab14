use heisot::json::{parse_config, parse_line, parse_measure, parse_plane_map, parse_point, parse_radon_sample};
use heisot::{distance, solve_wp, wasserstein, DiscreteMeasure, GroundCost, HeisenbergPoint, VerticalLine};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

fn point(n: usize) -> impl Strategy<Value = HeisenbergPoint> {
    (
        prop::collection::vec(coord(), n),
        prop::collection::vec(coord(), n),
        coord(),
    )
        .prop_map(|(x, y, z)| HeisenbergPoint { x, y, z })
}

fn line(n: usize) -> impl Strategy<Value = VerticalLine> {
    (prop::collection::vec(coord(), n), prop::collection::vec(coord(), n))
        .prop_map(|(x_tilde, y_tilde)| VerticalLine { x_tilde, y_tilde })
}

fn measure(n: usize) -> impl Strategy<Value = DiscreteMeasure> {
    prop::collection::vec((point(n), 0.1..1.0f64), 1..5).prop_map(|atoms| {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        DiscreteMeasure::new(atoms.into_iter().map(|(q, w)| (q, w / total)).collect()).unwrap()
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_law_is_associative_with_inverses(a in point(2), b in point(2), c in point(2)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, 1e-9));
        prop_assert!(a.mul(&a.inv()).unwrap().approx_eq(&HeisenbergPoint::origin(2), 1e-12));
    }

    #[test]
    fn distance_is_a_left_invariant_metric(a in point(1), b in point(1), c in point(1), g in point(1)) {
        let ab = distance(&a, &b).unwrap();
        prop_assert!(close(ab, distance(&b, &a).unwrap(), 1e-12));
        prop_assert!(ab <= distance(&a, &c).unwrap() + distance(&c, &b).unwrap() + 1e-9);
        let moved = distance(&g.mul(&a).unwrap(), &g.mul(&b).unwrap()).unwrap();
        prop_assert!(close(ab, moved, 1e-9));
        prop_assert_eq!(distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn projection_is_the_nearest_point_of_the_line(q in point(2), l in line(2), dz in -3.0..3.0f64) {
        let foot = q.vertical_project(&l).unwrap();
        prop_assert!(l.contains(&foot, 1e-9));
        let other = l.point_at(foot.z + dz);
        prop_assert!(distance(&q, &foot).unwrap() <= distance(&q, &other).unwrap() + 1e-12);
    }

    #[test]
    fn wasserstein_is_symmetric_and_bounded_by_the_product_plan(mu in measure(1), nu in measure(1), p in 1.0..4.0f64) {
        let forward = wasserstein(&mu, &nu, p).unwrap();
        prop_assert!(close(forward, wasserstein(&nu, &mu, p).unwrap(), 1e-9));
        let mut product = 0.0;
        for a in mu.atoms() {
            for b in nu.atoms() {
                product += a.weight * b.weight * distance(&a.point, &b.point).unwrap().powf(p);
            }
        }
        prop_assert!(forward.powf(p) <= product + 1e-9);
    }

    #[test]
    fn lp_duality_closes(mu in measure(1), nu in measure(1), p in 1.0..4.0f64) {
        let r = solve_wp(&mu, &nu, p, GroundCost::Heisenberg).unwrap();
        prop_assert!(close(r.cost_p, r.dual_value(), 1e-9));
        prop_assert!(r.coupling.marginal_excess() <= 1e-9);
    }

    #[test]
    fn measures_round_trip_through_json(mu in measure(2)) {
        let text = mu.to_json();
        prop_assert_eq!(parse_measure(&text).unwrap(), mu);
    }

    #[test]
    fn decoders_never_panic(text in "\\PC{0,64}") {
        let _ = parse_point(&text);
        let _ = parse_line(&text);
        let _ = parse_measure(&text);
        let _ = parse_plane_map(&text);
        let _ = parse_radon_sample(&text);
        let _ = parse_config(&text);
    }

    #[test]
    fn decoders_never_panic_on_json_shapes(
        xs in prop::collection::vec(-1e3..1e3f64, 0..4),
        ys in prop::collection::vec(-1e3..1e3f64, 0..4),
        w in -2.0..2.0f64,
        dim in 0usize..4,
    ) {
        let atom = serde_json::json!({"x": xs, "y": ys, "z": 0.0, "w": w});
        let _ = parse_measure(&serde_json::json!({"dim": dim, "atoms": [atom]}).to_string());
        let _ = parse_radon_sample(
            &serde_json::json!({"line": {"xt": xs, "yt": ys}, "projection": {"dim": dim, "atoms": [atom]}}).to_string(),
        );
        let _ = parse_plane_map(&serde_json::json!([{"from": xs, "to": ys}]).to_string());
    }
}
