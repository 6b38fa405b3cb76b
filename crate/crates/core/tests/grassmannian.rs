use mvgrass::grass::{
    canonicalize_point, d_value_by_inverse, d_value_of, enumerate_points, random_k, GrassPoint,
    LaurentMatrix, DEFAULT_BUDGET,
};
use mvgrass::mvcomb::vertices_of;
use mvgrass::{ChamberWeight, Coweight, GTFamily, LusztigDatum, PrimeField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// `|Gr^μ(F_q)|` for dominant `μ`: a rank `⟨2ρ, μ⟩ - dim G/P` affine bundle
/// over the partial flag variety `G/P_μ`.
fn orbit_count(mu: Coweight, q: u128) -> u128 {
    let two_rho = 2 * (mu[0] - mu[2]) as u32;
    let (flag, dim) = match (mu[0] == mu[1], mu[1] == mu[2]) {
        (true, true) => (1, 0),
        (false, false) => ((1 + q) * (1 + q + q * q), 3),
        _ => (1 + q + q * q, 2),
    };
    flag * q.pow(two_rho - dim)
}

/// `|Sch(λ)(F_q)|` as a sum over dominant coweights below `λ`.
fn schubert_count(lambda: Coweight, q: u128) -> u128 {
    let nu: i64 = lambda.iter().sum();
    let mut total = 0;
    for a in lambda[2]..=lambda[0] {
        for b in lambda[2]..=a {
            let c = nu - a - b;
            if c > b || c < lambda[2] {
                continue;
            }
            let dominated = a <= lambda[0] && a + b <= lambda[0] + lambda[1];
            if dominated {
                total += orbit_count([a, b, c], q);
            }
        }
    }
    total
}

#[test]
fn schubert_point_counts() {
    for lambda in [
        [1, 0, 0],
        [1, 1, 0],
        [2, 0, 0],
        [1, 0, -1],
        [2, 1, 0],
        [2, 2, 0],
        [3, 0, 0],
        [2, 0, -1],
    ] {
        for q in [2u32, 3] {
            let pts = enumerate_points(&GTFamily::weyl_polytope(lambda), field(q), DEFAULT_BUDGET)
                .unwrap();
            assert_eq!(
                pts.len() as u128,
                schubert_count(lambda, q as u128),
                "λ={lambda:?} q={q}"
            );
        }
    }
}

#[test]
fn torus_fixed_points() {
    for nu in [[0, 0, 0], [2, -1, 0], [-3, 1, 4]] {
        let x = GrassPoint::torus(field(5), nu);
        assert_eq!(x.ec().unwrap(), GTFamily::point(nu));
    }
    let f = vertices_of(&LusztigDatum::w121([2, 1, 1]), [0, 0, 0]);
    let fixed: Vec<Coweight> = enumerate_points(&f, field(2), DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|x| x.ec().unwrap().is_point())
        .map(|x| x.d())
        .collect();
    let mut lp = f.lattice_points();
    lp.sort();
    assert_eq!(fixed, lp);
}

#[test]
fn membership_is_containment_of_ec() {
    let f = vertices_of(&LusztigDatum::w121([1, 1, 1]), [0, 0, 0]);
    let big = GTFamily::weyl_polytope([2, 0, -1]);
    for x in enumerate_points(&big, field(2), DEFAULT_BUDGET).unwrap() {
        assert_eq!(x.member(&f), f.contains(&x.ec().unwrap()));
    }
}

fn random_lattice(rng: &mut ChaCha8Rng, f: PrimeField) -> LaurentMatrix {
    let nu: Coweight = [
        rng.gen_range(-2..3),
        rng.gen_range(-2..3),
        rng.gen_range(-2..3),
    ];
    random_k(f, 3, rng)
        .mul(&LaurentMatrix::eps(f, nu))
        .mul(&random_k(f, 2, rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_right_k_invariant(seed in any::<u64>()) {
        let f = field(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_lattice(&mut rng, f);
        let k = random_k(f, 2, &mut rng);
        prop_assert_eq!(canonicalize_point(&g).unwrap(), canonicalize_point(&g.mul(&k)).unwrap());
    }

    #[test]
    fn jacobi_matches_inverse_minors(seed in any::<u64>()) {
        let f = field(7);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = canonicalize_point(&random_lattice(&mut rng, f)).unwrap();
        let h = x.h();
        for s in ChamberWeight::ALL {
            prop_assert_eq!(d_value_of(&h, s, x.nu()).unwrap(), d_value_by_inverse(&h, s).unwrap());
        }
    }

    #[test]
    fn ec_is_torus_equivariant(seed in any::<u64>(), chi in [-2i64..3, -2i64..3, -2i64..3]) {
        let f = field(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = canonicalize_point(&random_lattice(&mut rng, f)).unwrap();
        let e = x.ec().unwrap();
        prop_assert_eq!(x.translate(chi).ec().unwrap(), e.translate(chi));
        let t = LaurentMatrix::from_ints(f, [[rng.gen_range(1..5), 0, 0], [0, rng.gen_range(1..5), 0], [0, 0, 1]]);
        prop_assert_eq!(x.left_mul(&t).unwrap().ec().unwrap(), e.clone());
        prop_assert!(mvgrass::mvcomb::is_generalized_mv(&e));
    }
}

#[test]
fn precision_guard() {
    use mvgrass::grass::{check_precision, required_precision};
    let small = GTFamily::weyl_polytope([1, 0, 0]);
    assert_eq!(required_precision(&small), 16);
    let big = GTFamily::weyl_polytope([12, 0, -12]);
    assert!(required_precision(&big) > 64);
    assert!(check_precision(&small, 64).is_ok());
    assert!(check_precision(&big, 64).is_err());
}
