use mvgrass::grass::{enumerate_points, GrassPoint, LaurentMatrix, DEFAULT_BUDGET};
use mvgrass::rootdata::{borel_elt, borel_index};
use mvgrass::springer::{
    criterion, criterion_general, criterion_oracle, fundamental_domain, is_ultrametric,
    member_springer, permute_pattern, separating_valuations, springer_dim, vertex_gaps, GammaJson,
    Pattern, RegularDiagonal,
};
use mvgrass::{GTFamily, LusztigDatum, MVPolytope, PrimeField, WeylElt};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn schubert_points() -> Vec<GrassPoint> {
    enumerate_points(&GTFamily::weyl_polytope([2, 0, -1]), f3(), DEFAULT_BUDGET).unwrap()
}

fn pattern() -> impl Strategy<Value = Pattern> {
    [0u32..4, 0u32..4, 0u32..4].prop_filter("ultrametric", is_ultrametric)
}

fn normal_datum() -> impl Strategy<Value = [u32; 3]> {
    [0u32..3, 0u32..3, 0u32..3].prop_filter("normal", |&[a, b, c]| a >= c && c >= b)
}

#[test]
fn springer_points_have_short_edges() {
    let pts = schubert_points();
    for c in [
        [1, 1, 1],
        [2, 1, 1],
        [1, 2, 1],
        [1, 1, 2],
        [0, 1, 0],
        [2, 0, 0],
    ] {
        let g = RegularDiagonal::from_pattern(f3(), c).unwrap();
        let sep = separating_valuations(&c);
        for x in pts.iter().filter(|x| member_springer(x, &g).unwrap()) {
            let gaps = vertex_gaps(x).unwrap();
            assert!(
                (0..6).all(|b| gaps[b] <= sep[b] as i64),
                "c={c:?} gaps={gaps:?}"
            );
        }
    }
}

#[test]
fn springer_fibre_is_torus_stable() {
    let pts = schubert_points();
    let g = RegularDiagonal::from_pattern(f3(), [2, 1, 1]).unwrap();
    for x in &pts {
        let m = member_springer(x, &g).unwrap();
        for chi in [[1, 0, 0], [0, -1, 2], [3, 3, 3]] {
            assert_eq!(member_springer(&x.translate(chi), &g).unwrap(), m);
        }
    }
}

#[test]
fn permutations_move_the_pattern() {
    let pts = schubert_points();
    let g = RegularDiagonal::from_pattern(f3(), [2, 1, 1]).unwrap();
    for (i, w) in [(1, WeylElt::S1), (2, WeylElt::S2)] {
        let s = LaurentMatrix::s_bar(f3(), i);
        let gw = g.permute(w);
        assert_eq!(gw.pattern(), permute_pattern(&g.pattern(), w));
        for x in &pts {
            assert_eq!(
                member_springer(&x.left_mul(&s).unwrap(), &gw).unwrap(),
                member_springer(x, &g).unwrap()
            );
        }
    }
}

#[test]
fn fundamental_domain_dimension() {
    let g = RegularDiagonal::from_pattern(PrimeField::new(2).unwrap(), [2, 1, 1]).unwrap();
    assert_eq!(springer_dim(&g), 4);
    let fd = fundamental_domain(&g).unwrap();
    let pts = fd.points(DEFAULT_BUDGET).unwrap();
    assert!(pts.iter().all(|x| x.member(&fd.polytope)));
    assert!(fundamental_domain(&RegularDiagonal::from_pattern(f3(), [1, 2, 1]).unwrap()).is_err());
}

#[test]
fn gamma_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = RegularDiagonal::from_pattern_random(PrimeField::new(5).unwrap(), [3, 1, 1], &mut rng)
        .unwrap();
    assert_eq!(g.pattern(), [3, 1, 1]);
    let s = serde_json::to_string(&g.to_json()).unwrap();
    let back: GammaJson = serde_json::from_str(&s).unwrap();
    assert_eq!(back.into_gamma(5, &mut rng).unwrap(), g);
    let wrong: GammaJson =
        serde_json::from_str(&s.replace("\"pattern\":[3,1,1]", "\"pattern\":[1,1,3]")).unwrap();
    assert!(wrong.into_gamma(5, &mut rng).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn criterion_agrees_with_point_count(n in normal_datum(), c in pattern(), b in 0usize..6) {
        let p = MVPolytope::new(LusztigDatum::w121(n), [0, 0, 0]);
        let g = RegularDiagonal::from_pattern(f3(), c).unwrap();
        let a = criterion(&p, b, &c).unwrap();
        let o = criterion_oracle(&p, b, &g, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(a.affine, o.affine, "{:?} {:?}", a, o);
        prop_assert_eq!(a.l_sum, o.l_sum);
    }

    #[test]
    fn criterion_is_symmetric(n in normal_datum(), c in pattern(), b in 0usize..6, k in 0usize..6, neg in any::<bool>()) {
        let p = MVPolytope::new(LusztigDatum::w121(n), [1, 0, -2]);
        let want = criterion(&p, b, &c).unwrap().affine;
        let w = WeylElt::ALL[k];
        let (f, bb) = if neg {
            (p.family().negate(), borel_index(borel_elt(b).compose(WeylElt::W0)))
        } else {
            (p.family().clone(), b)
        };
        let moved = f.weyl_act(w);
        let bw = borel_index(w.compose(borel_elt(bb)));
        let cw = permute_pattern(&c, w);
        prop_assert_eq!(criterion_general(&moved, bw, &cw).unwrap().affine, want);
    }
}
