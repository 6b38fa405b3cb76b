//! The greedy paving: repeatedly remove the contracting cell of a vertex
//! of a largest remaining polytope, then cover the rest by the largest
//! generalized MV polytopes that avoid that vertex.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::{PavingPlan, PavingStep};
use crate::error::{Error, Result};
use crate::grass::{enumerate_points, GrassPoint};
use crate::laurent::PrimeField;
use crate::moment::{skeleton, Edge};
use crate::mvcomb::{canonicalize, is_generalized_mv};
use crate::rootdata::{
    lattice_points_of, pairing, support_of_points, ChamberWeight, Coweight, GTFamily, Support,
};

type VertexRule = Box<dyn Fn(&GTFamily, usize, Coweight) -> bool>;
type PolytopeRule = Box<dyn Fn(&GTFamily) -> bool>;
type DimRule = Box<dyn Fn(&GTFamily, usize) -> Result<usize>>;

/// Hooks that specialize the greedy scheme.
pub struct GreedyRules {
    /// Whether vertex `b` (at `v`) of an active polytope may be chosen.
    pub allow_vertex: VertexRule,
    /// Polytopes worth keeping in the active list.
    pub keep: PolytopeRule,
    /// Predicted cell dimension for vertex `b` of an active polytope.
    pub cell_dim: DimRule,
}

impl Default for GreedyRules {
    fn default() -> Self {
        GreedyRules {
            allow_vertex: Box::new(|_, _, _| true),
            keep: Box::new(|_| true),
            cell_dim: Box::new(|f, _| mv_dim(f)),
        }
    }
}

/// Dimension of `X(f)` for a generalized MV polytope.
pub fn mv_dim(f: &GTFamily) -> Result<usize> {
    Ok(canonicalize(f)?.1.dimension() as usize)
}

/// Greedy paving of `X(f)`, verified over every `q` in `qs`.
pub fn greedy_paving(f: &GTFamily, qs: &[u32], budget: u128) -> Result<PavingPlan> {
    let mut pts = Vec::new();
    for &q in qs {
        pts.push((q, enumerate_points(f, PrimeField::new(q)?, budget)?));
    }
    greedy_paving_with(f, pts, &GreedyRules::default())
}

struct Remaining {
    q: u32,
    total: usize,
    points: Vec<(GrassPoint, GTFamily)>,
}

/// The greedy scheme on explicit point sets: `points[k] = (q, S_q)` where
/// `S_q` is the set of `F_q`-points to be paved, starting from the single
/// active polytope `f`.
pub fn greedy_paving_with(
    f: &GTFamily,
    points: Vec<(u32, Vec<GrassPoint>)>,
    rules: &GreedyRules,
) -> Result<PavingPlan> {
    let mut rem = Vec::new();
    for (q, pts) in points {
        let total = pts.len();
        let points = pts
            .into_par_iter()
            .map(|x| {
                let e = x.ec()?;
                Ok((x, e))
            })
            .collect::<Result<Vec<_>>>()?;
        rem.push(Remaining { q, total, points });
    }
    let mut active: Vec<GTFamily> = if (rules.keep)(f) {
        vec![f.clone()]
    } else {
        Vec::new()
    };
    let mut skeletons: HashMap<GTFamily, Vec<Edge>> = HashMap::new();
    let mut dims: HashMap<GTFamily, usize> = HashMap::new();
    let mut steps = Vec::new();
    while !active.is_empty() {
        let mut edges = BTreeSet::new();
        for p in &active {
            if !skeletons.contains_key(p) {
                skeletons.insert(p.clone(), skeleton(p)?.edges);
            }
            edges.extend(skeletons[p].iter().copied());
            if !dims.contains_key(p) {
                dims.insert(p.clone(), mv_dim(p)?);
            }
        }
        let wt = |v: Coweight| edges.iter().filter(|e| e.u == v || e.v == v).count();
        let mut levels: Vec<usize> = active.iter().map(|p| dims[p]).collect();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        levels.dedup();
        let mut choice = None;
        for level in levels {
            let mut best: Option<(usize, Coweight, usize, usize)> = None;
            for (k, p) in active.iter().enumerate().filter(|(_, p)| dims[*p] == level) {
                for b in 0..6 {
                    let v = p.vertex(b);
                    let exclusive = active
                        .iter()
                        .enumerate()
                        .all(|(j, o)| j == k || !o.contains_point(v));
                    if !exclusive || !(rules.allow_vertex)(p, b, v) {
                        continue;
                    }
                    let key = (wt(v), v, b, k);
                    if best.is_none_or(|c| key < c) {
                        best = Some(key);
                    }
                }
            }
            if best.is_some() {
                choice = best;
                break;
            }
        }
        let Some((_, v, b, k)) = choice else {
            return Err(Error::PavingVerificationFailed(format!(
                "no removable vertex among active polytopes {:?}",
                active.iter().map(|p| p.vertices()).collect::<Vec<_>>()
            )));
        };
        let p = active.swap_remove(k);
        let dim = (rules.cell_dim)(&p, b)?;
        let mut counts = Vec::new();
        for r in rem.iter_mut() {
            let before = r.points.len();
            r.points.retain(|(_, e)| e.vertex(b) != v);
            counts.push((r.q, (before - r.points.len()) as u64));
        }
        steps.push(PavingStep {
            vertex: v,
            borel: Some(b),
            dim,
            polytope: p.clone(),
            counts,
        });
        for s in maximal_subpolytopes_avoiding(&p, v)? {
            if (rules.keep)(&s) {
                active.push(s);
            }
        }
        active = maximal_only(active);
    }
    let mut plan = PavingPlan::new(steps);
    for r in &rem {
        plan.record(r.q, r.total as u64, r.points.is_empty());
    }
    plan.check()?;
    Ok(plan)
}

/// Drops duplicates and families contained in another one; keeps order.
fn maximal_only(fams: Vec<GTFamily>) -> Vec<GTFamily> {
    let mut out: Vec<GTFamily> = Vec::new();
    for (i, f) in fams.iter().enumerate() {
        let dominated =
            fams.iter()
                .enumerate()
                .any(|(j, g)| if f == g { j < i } else { g.contains(f) });
        if !dominated {
            out.push(f.clone());
        }
    }
    out
}

/// The maximal generalized MV polytopes inside `p` not containing `v`,
/// generated by pulling each facet through `v` in by one unit.
pub fn maximal_subpolytopes_avoiding(p: &GTFamily, v: Coweight) -> Result<Vec<GTFamily>> {
    let m = p.support();
    let mut out = Vec::new();
    for (k, s) in ChamberWeight::ALL.iter().enumerate() {
        if pairing(v, *s) != m[k] {
            continue;
        }
        let mut m2 = m;
        m2[k] -= 1;
        let pts = lattice_points_of(&m2, p.nu());
        let Some(tight) = support_of_points(&pts) else {
            continue;
        };
        match GTFamily::from_support(tight, p.nu()) {
            Ok(g) if is_generalized_mv(&g) => out.push(g),
            _ => out.extend(generalized_mv_within(&tight, p.nu())),
        }
    }
    out.sort();
    out.dedup();
    Ok(maximal_only(out))
}

/// All generalized MV polytopes with support below `m`.
fn generalized_mv_within(m: &Support, nu: i64) -> Vec<GTFamily> {
    let lo: Support = std::array::from_fn(|k| nu - m[ChamberWeight::ALL[k].complement().index()]);
    let mut out = Vec::new();
    let mut cur = lo;
    loop {
        if let Ok(g) = GTFamily::from_support(cur, nu) {
            if is_generalized_mv(&g) {
                out.push(g);
            }
        }
        let mut k = 0;
        while k < 6 {
            if cur[k] < m[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
        if k == 6 {
            break;
        }
    }
    maximal_only(out)
}
