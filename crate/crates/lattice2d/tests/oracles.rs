use lattice2d::geometry::{conorms, reduce_to_obtuse, vonorms, Basis, Vec2};
use lattice2d::invariants::{oriented_projected_invariant, oriented_root_invariant, Sign};
use lattice2d::metrics::{
    oriented_projected_metric, oriented_root_metric, projected_boundary_infimum,
    root_boundary_infimum, Minkowski,
};
use lattice2d::neighbors::{kth_distance_oracle, rsd, voronoi_vectors};
use proptest::prelude::*;

fn basis() -> impl Strategy<Value = Basis> {
    [[-3.0..3.0f64, -3.0..3.0f64], [-3.0..3.0f64, -3.0..3.0f64]].prop_filter_map(
        "well-conditioned basis",
        |m| {
            let b = Basis::from_rows(m).ok()?;
            (b.det().abs() > 0.1 * b.v1.norm() * b.v2.norm()).then_some(b)
        },
    )
}

fn lattice_points(b: &Basis, n: i64) -> impl Iterator<Item = (i64, i64, Vec2)> + '_ {
    (-n..=n).flat_map(move |i| (-n..=n).map(move |j| (i, j, b.point(i, j))))
}

// Integer coordinates of `v` in the basis `b`, if it is a lattice vector.
fn coordinates(b: &Basis, v: Vec2) -> Option<(f64, f64)> {
    let d = b.det();
    let c1 = v.det(b.v2) / d;
    let c2 = b.v1.det(v) / d;
    let near = |c: f64| (c - c.round()).abs() < 1e-6;
    (near(c1) && near(c2)).then(|| (c1.round(), c2.round()))
}

proptest! {
    #[test]
    fn reduction_keeps_the_lattice_and_finds_shortest_vector(b in basis()) {
        let s = reduce_to_obtuse(&b).unwrap();
        let vn = vonorms(&s);
        let eps = s.eps_zero();
        prop_assert!(conorms(&s).min() >= -eps);
        let r = s.basis();
        prop_assert!((r.det().abs() - b.det().abs()).abs() <= 1e-9 * b.det().abs());
        prop_assert!(coordinates(&b, r.v1).is_some() && coordinates(&b, r.v2).is_some());
        let shortest = lattice_points(&b, 12)
            .filter(|&(i, j, _)| (i, j) != (0, 0))
            .map(|(_, _, v)| v.norm2())
            .fold(f64::INFINITY, f64::min);
        prop_assert!((vn.min() - shortest).abs() <= 1e-9 * shortest);
    }

    #[test]
    fn voronoi_vectors_are_shortest_in_their_class(b in basis()) {
        let s = reduce_to_obtuse(&b).unwrap();
        let base = s.basis();
        let set = voronoi_vectors(&s).unwrap();
        for vv in &set.vectors {
            let (c1, c2) = coordinates(&base, vv.v).unwrap();
            let (p1, p2) = (c1.rem_euclid(2.0), c2.rem_euclid(2.0));
            let mut class: Vec<f64> = lattice_points(&base, 6)
                .filter(|&(i, j, _)| (i as f64).rem_euclid(2.0) == p1 && (j as f64).rem_euclid(2.0) == p2)
                .map(|(_, _, v)| v.norm2())
                .collect();
            class.sort_by(f64::total_cmp);
            let n = vv.v.norm2();
            prop_assert!(n <= class[0] * (1.0 + 1e-9));
            let strict = class[2] > class[0] * (1.0 + 1e-9);
            prop_assert_eq!(vv.strict, strict);
        }
    }

    #[test]
    fn rsd_matches_direct_enumeration(b in basis(), k in 1usize..40) {
        let s = reduce_to_obtuse(&b).unwrap();
        let d = rsd(&s, k);
        prop_assert_eq!(d.len(), k);
        for (i, &x) in d.distances.iter().enumerate() {
            let want = kth_distance_oracle(&b, i + 1);
            prop_assert!((x - want).abs() <= 1e-9 * want);
        }
    }

    #[test]
    fn euclidean_oriented_metrics_match_boundary_search(a in basis(), b in basis()) {
        let (sa, sb) = (reduce_to_obtuse(&a).unwrap(), reduce_to_obtuse(&b).unwrap());
        let mut ra = oriented_root_invariant(&sa).unwrap();
        let mut rb = oriented_root_invariant(&sb).unwrap();
        prop_assume!(ra.sign != Sign::Zero && rb.sign != Sign::Zero);
        if ra.sign == rb.sign {
            rb = rb.mirror();
        }
        let numeric = root_boundary_infimum(&[ra.ri.as_array(), rb.ri.as_array()], Minkowski::TWO);
        let closed = oriented_root_metric(&ra, &rb, Minkowski::TWO);
        prop_assert!((numeric - closed).abs() <= 1e-6 * closed.max(1.0), "{} vs {}", closed, numeric);
        ra = ra.mirror();
        prop_assert!(oriented_root_metric(&ra, &rb, Minkowski::TWO) <= closed + 1e-12);

        let mut pa = oriented_projected_invariant(&sa).unwrap();
        let mut pb = oriented_projected_invariant(&sb).unwrap();
        if pa.sign == pb.sign {
            pb = pb.mirror();
        }
        let numeric = projected_boundary_infimum(&[[pa.pi.x, pa.pi.y], [pb.pi.x, pb.pi.y]], Minkowski::TWO);
        let closed = oriented_projected_metric(&pa, &pb, Minkowski::TWO);
        prop_assert!((numeric - closed).abs() <= 1e-6, "{} vs {}", closed, numeric);
        pa = pa.mirror();
        prop_assert!(oriented_projected_metric(&pa, &pb, Minkowski::TWO) <= closed + 1e-12);
    }
}
