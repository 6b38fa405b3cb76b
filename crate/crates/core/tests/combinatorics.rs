use mvgrass::mvcomb::{
    canonicalize, datum_along, is_generalized_mv, lusztig_data_with_coweight, vertices_of,
};
use mvgrass::rootdata::{borel_elt, borel_index};
use mvgrass::{Coweight, CrystalWord, GTFamily, LusztigDatum, MVPolytope, ReducedWord, WeylElt};
use proptest::prelude::*;

fn datum() -> impl Strategy<Value = LusztigDatum> {
    (prop::bool::ANY, [0u32..6, 0u32..6, 0u32..6]).prop_map(|(w, n)| {
        LusztigDatum::new(
            if w {
                ReducedWord::W121
            } else {
                ReducedWord::W212
            },
            n,
        )
    })
}

fn base() -> impl Strategy<Value = Coweight> {
    [-3i64..4, -3i64..4, -3i64..4]
}

fn weyl() -> impl Strategy<Value = WeylElt> {
    (0usize..6).prop_map(|k| WeylElt::ALL[k])
}

/// Point-in-hexagon test in the plane `x0 + x1 + x2 = ν`, using the
/// clockwise vertex order.
fn in_hull(f: &GTFamily, x: Coweight) -> bool {
    let v = f.vertices();
    if x.iter().sum::<i64>() != f.nu() {
        return false;
    }
    let distinct = f.distinct_vertices();
    if distinct.len() == 1 {
        return x == distinct[0];
    }
    let mut sign = 0i64;
    for k in 0..6 {
        let (a, b) = (v[k], v[(k + 1) % 6]);
        if a == b {
            continue;
        }
        let cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
        if cross != 0 {
            if sign != 0 && cross.signum() != sign {
                return false;
            }
            sign = cross.signum();
        }
    }
    if sign == 0 {
        // Degenerate polygon: a segment. Check betweenness.
        let (lo, hi) = distinct
            .iter()
            .fold((distinct[0], distinct[0]), |(lo, hi), &p| {
                (lo.min(p), hi.max(p))
            });
        return lo <= x
            && x <= hi
            && (0..3).all(|i| x[i] >= lo[i].min(hi[i]) && x[i] <= lo[i].max(hi[i]));
    }
    true
}

proptest! {
    #[test]
    fn braid_is_an_involution(d in datum()) {
        let b = d.braid();
        prop_assert_eq!(b.braid(), d);
        prop_assert_eq!(b.dimension(), d.dimension());
        prop_assert_eq!(b.coweight(), d.coweight());
        prop_assert_ne!(b.word, d.word);
    }

    #[test]
    fn braid_is_tropical_transition(n in [0u32..8, 0u32..8, 0u32..8]) {
        let [a, b, c] = n.map(i64::from);
        let m = a.min(c);
        let want = [b + c - m, m, a + b - m].map(|x| x as u32);
        prop_assert_eq!(LusztigDatum::w121(n).braid().n, want);
    }

    #[test]
    fn data_are_read_back_from_vertices(d in datum(), b in base()) {
        let f = vertices_of(&d, b);
        prop_assert_eq!(datum_along(&f, d.word), d);
        prop_assert_eq!(datum_along(&f, d.word.other()), d.braid());
        let p = MVPolytope::from_family(&f).unwrap();
        prop_assert_eq!(p.family(), &f);
        prop_assert_eq!(p.datum(ReducedWord::W121), d.in_word(ReducedWord::W121));
    }

    #[test]
    fn lattice_points_match_hull(d in datum(), b in base()) {
        let f = vertices_of(&d, b);
        let pts = f.lattice_points();
        let lo: Vec<i64> = (0..3).map(|i| f.vertices().iter().map(|v| v[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..3).map(|i| f.vertices().iter().map(|v| v[i]).max().unwrap()).collect();
        let mut brute = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let z = f.nu() - x - y;
                if in_hull(&f, [x, y, z]) {
                    brute.push([x, y, z]);
                }
            }
        }
        let mut sorted = pts.clone();
        sorted.sort();
        brute.sort();
        prop_assert_eq!(sorted, brute);
        for v in f.vertices() {
            prop_assert!(f.contains_point(*v));
        }
    }

    #[test]
    fn weyl_action_is_an_action(d in datum(), u in weyl(), v in weyl()) {
        let f = vertices_of(&d, [0, 0, 0]);
        prop_assert_eq!(f.weyl_act(u).weyl_act(v), f.weyl_act(v.compose(u)));
        prop_assert_eq!(f.weyl_act(WeylElt::ID), f.clone());
        let g = f.weyl_act(u);
        let mut a: Vec<Coweight> = g.lattice_points();
        let mut b: Vec<Coweight> = f.lattice_points().into_iter().map(|x| u.act(x)).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert!(is_generalized_mv(&g));
        let (w, p) = canonicalize(&g).unwrap();
        prop_assert_eq!(p.family().weyl_act(w), g);
    }

    #[test]
    fn negation_is_point_reflection(d in datum(), b in base()) {
        let f = vertices_of(&d, b);
        let g = f.negate();
        prop_assert_eq!(g.negate(), f.clone());
        let mut a = g.lattice_points();
        let mut c: Vec<Coweight> = f.lattice_points().into_iter().map(|x| x.map(|t| -t)).collect();
        a.sort();
        c.sort();
        prop_assert_eq!(a, c);
    }

    #[test]
    fn crystal_operators_are_inverse(d in datum(), i in 1usize..3) {
        let p = MVPolytope::new(d, [0, 0, 0]);
        let q = p.crystal_f(i);
        prop_assert_eq!(q.top(), p.top());
        prop_assert_eq!(q.dimension(), p.dimension() + 1);
        prop_assert_eq!(q.crystal_e(i), Some(p.clone()));
        if let Some(r) = p.crystal_e(i) {
            prop_assert_eq!(r.crystal_f(i), p);
        }
    }
}

#[test]
fn borel_indices_run_clockwise() {
    let order = ["123", "132", "312", "321", "231", "213"];
    for (b, s) in order.iter().enumerate() {
        assert_eq!(borel_elt(b).one_line(), *s);
        assert_eq!(borel_index(WeylElt::from_one_line(s).unwrap()), b);
    }
}

#[test]
fn kostant_partition_count() {
    for p in 0..=12u32 {
        for q in 0..=12u32 {
            let mut brute = 0;
            for a in 0..=p + q {
                for b in 0..=p + q {
                    for c in 0..=p + q {
                        if LusztigDatum::w121([a, b, c]).coweight()
                            == [-(p as i64), p as i64 - q as i64, q as i64]
                        {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(lusztig_data_with_coweight(p, q).len(), brute);
            assert_eq!(brute, p.min(q) as usize + 1);
        }
    }
}

#[test]
fn crystal_words_from_the_empty_word() {
    let mut w = CrystalWord::empty();
    let mut seen = Vec::new();
    for _ in 0..4 {
        w = w.prepend_alternating();
        seen.push(w.to_string());
    }
    assert_eq!(seen, ["1", "21", "121", "2121"]);
}

/// Lowering one support number of a Weyl polytope either leaves a family
/// whose numbers are all attained by lattice points, or is rejected.
#[test]
fn perturbed_supports() {
    use mvgrass::rootdata::{lattice_points_of, support_of_points};
    use mvgrass::Error;
    let mut rejected = 0;
    for lambda in [[1, 0, 0], [1, 1, 0], [2, 0, 0], [2, 1, 0], [1, 0, -1], [3, 1, 0]] {
        let f = GTFamily::weyl_polytope(lambda);
        for k in 0..6 {
            for drop in 1..=3 {
                let mut m = f.support();
                m[k] -= drop;
                let pts = lattice_points_of(&m, f.nu());
                let feasible = support_of_points(&pts) == Some(m);
                match GTFamily::from_support(m, f.nu()) {
                    Ok(g) => {
                        assert!(feasible, "λ={lambda:?} k={k} drop={drop}");
                        assert_eq!(g.support(), m);
                    }
                    Err(e) => {
                        assert!(!feasible, "λ={lambda:?} k={k} drop={drop}: {e}");
                        assert!(matches!(e, Error::InconsistentFamily(_)), "{e}");
                        rejected += 1;
                    }
                }
            }
        }
    }
    assert!(rejected > 0);
}
