use mvgrass::grass::{enumerate_points, DEFAULT_BUDGET};
use mvgrass::moment::{
    formal_betti, min_formal_poincare, skeleton, Edge, MomentGraph, PoincarePoly,
    DEFAULT_GRAPH_BUDGET,
};
use mvgrass::mvcomb::vertices_of;
use mvgrass::paving::{contracting_cell, greedy_paving, paving_121};
use mvgrass::rootdata::Root;
use mvgrass::{Coweight, GTFamily, LusztigDatum, MVPolytope, PrimeField};
use proptest::prelude::*;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn synthetic_graph(n: usize, mask: u32) -> MomentGraph {
    let vertices: Vec<Coweight> = (0..n as i64).map(|i| [i, 0, -i]).collect();
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push(Edge {
                    u: vertices[j],
                    v: vertices[i],
                    root: Root::new(0, 2),
                    k: (j - i) as i64,
                });
            }
            bit += 1;
        }
    }
    MomentGraph::new(vertices, edges)
}

proptest! {
    #[test]
    fn minimum_matches_exhaustive_search(n in 1usize..7, mask in any::<u32>()) {
        let g = synthetic_graph(n, mask);
        let (best, order) = min_formal_poincare(&g, DEFAULT_GRAPH_BUDGET).unwrap();
        prop_assert_eq!(formal_betti(&g, &order).unwrap(), best.clone());
        let brute = permutations(n)
            .into_iter()
            .map(|p| formal_betti(&g, &p.iter().map(|&i| g.vertices[i]).collect::<Vec<_>>()).unwrap())
            .min()
            .unwrap();
        prop_assert_eq!(best, brute);
    }

    #[test]
    fn formal_betti_counts_vertices_and_edges(n in 1usize..8, mask in any::<u32>()) {
        let g = synthetic_graph(n, mask);
        let b = formal_betti(&g, &g.vertices).unwrap();
        prop_assert_eq!(b.total() as usize, n);
        let weighted: u64 = b.0.iter().enumerate().map(|(d, &c)| d as u64 * c).sum();
        prop_assert_eq!(weighted as usize, g.edges.len());
    }
}

/// Lattice points of `f` on a common root line are joined exactly when
/// the segment between them stays in `f`, which always holds by convexity.
#[test]
fn skeleton_joins_points_on_root_lines() {
    for n in [[1, 0, 0], [1, 1, 1], [2, 1, 1], [0, 2, 1]] {
        let f = vertices_of(&LusztigDatum::w121(n), [0, 0, 0]);
        let g = skeleton(&f).unwrap();
        let pts = f.lattice_points();
        let mut want = 0;
        for u in &pts {
            for v in &pts {
                let d = [u[0] - v[0], u[1] - v[1], u[2] - v[2]];
                if Root::POSITIVE
                    .iter()
                    .any(|a| d[a.i] > 0 && d == a.coroot().map(|x| x * d[a.i]))
                {
                    want += 1;
                }
            }
        }
        assert_eq!(g.edges.len(), want, "{n:?}");
        assert!(g.to_dot().starts_with("graph moment {"));
    }
}

#[test]
fn projective_plane_betti_numbers() {
    let g = skeleton(&GTFamily::weyl_polytope([1, 0, 0])).unwrap();
    assert_eq!(g.edges.len(), 3);
    assert_eq!(
        min_formal_poincare(&g, DEFAULT_GRAPH_BUDGET).unwrap().0,
        PoincarePoly(vec![1, 1, 1])
    );
}

#[test]
fn paving_polynomial_counts_points_at_other_primes() {
    for n in [[1, 0, 1], [2, 0, 1], [1, 1, 1]] {
        let d = LusztigDatum::w121(n);
        let f = MVPolytope::new(d, [0, 0, 0]).family().clone();
        let plan = greedy_paving(&f, &[2], DEFAULT_BUDGET).unwrap();
        let at5 = enumerate_points(&f, PrimeField::new(5).unwrap(), DEFAULT_BUDGET)
            .unwrap()
            .len();
        assert_eq!(plan.predicted(5), at5 as u128, "{n:?}");
        assert_eq!(plan.max_dim(), Some(d.dimension() as usize));
        if d.is_normal() {
            assert_eq!(
                paving_121(&d, &[2], DEFAULT_BUDGET).unwrap().poincare(),
                plan.poincare()
            );
        }
    }
}

#[test]
fn contracting_cells_over_f3() {
    let f = PrimeField::new(3).unwrap();
    for n in [[1, 0, 0], [1, 0, 1], [2, 1, 1]] {
        let p = MVPolytope::new(LusztigDatum::w121(n), [1, -2, 0]);
        let dim = n[0] + 2 * n[1] + n[2];
        for b in 0..6 {
            let cell = contracting_cell(&p, b).unwrap();
            assert_eq!(cell.dim(), dim as usize);
            assert_eq!(
                cell.points(f, 0).unwrap().len() as u64,
                3u64.pow(dim),
                "{n:?} b={b}"
            );
        }
    }
}
