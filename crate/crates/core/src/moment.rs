//! Moment graphs of truncated affine Grassmannians and their formal Betti
//! numbers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grass::curve_point;
use crate::laurent::PrimeField;
use crate::rootdata::{sub, Coweight, GTFamily, Root};

/// Default cap on DP states in [`min_formal_poincare`].
pub const DEFAULT_GRAPH_BUDGET: u128 = 1 << 22;

/// An edge `{u, v}` with `u - v = k·α^∨`, `α` positive and `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: Coweight,
    pub v: Coweight,
    pub root: Root,
    pub k: i64,
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct E {
            u: Coweight,
            v: Coweight,
            root: String,
            k: i64,
        }
        E {
            u: self.u,
            v: self.v,
            root: self.root.to_string(),
            k: self.k,
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentGraph {
    pub vertices: Vec<Coweight>,
    pub edges: Vec<Edge>,
}

impl MomentGraph {
    pub fn new(mut vertices: Vec<Coweight>, mut edges: Vec<Edge>) -> Self {
        vertices.sort();
        vertices.dedup();
        edges.sort();
        MomentGraph { vertices, edges }
    }

    fn index(&self) -> HashMap<Coweight, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect()
    }

    pub fn wt(&self, v: Coweight) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    /// Edges joining `v` to `v - kα^∨` with `k >= 1`; `α` may be negative.
    pub fn l(&self, v: Coweight, a: Root) -> usize {
        self.edges
            .iter()
            .filter(|e| {
                let (from, to) = if e.u == v {
                    (e.u, e.v)
                } else if e.v == v {
                    (e.v, e.u)
                } else {
                    return false;
                };
                let d = sub(from, to);
                let k = d[a.i];
                k > 0 && d == crate::rootdata::scale(k, a.coroot())
            })
            .count()
    }

    /// Edges incident to `v`, with the other endpoint.
    pub fn neighbours(&self, v: Coweight) -> Vec<(Coweight, Edge)> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.u == v {
                    Some((e.v, *e))
                } else if e.v == v {
                    Some((e.u, *e))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph moment {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"({},{},{})\"];", v[0], v[1], v[2]);
        }
        let idx = self.index();
        for e in &self.edges {
            let (i, j) = (e.root.i + 1, e.root.j + 1);
            let _ = writeln!(
                s,
                "  v{} -- v{} [label=\"α{i}{j}, {}\"];",
                idx[&e.u], idx[&e.v], e.k
            );
        }
        s.push_str("}\n");
        s
    }
}

/// The 1-skeleton of `X(f)`: lattice points joined when the torus curve
/// between them lies in `X(f)`.
pub fn skeleton(f: &GTFamily) -> Result<MomentGraph> {
    let field = PrimeField::new(2)?;
    let verts = f.lattice_points();
    let mut edges = Vec::new();
    for &nu in &verts {
        for &other in &verts {
            let d = sub(nu, other);
            let Some(a) = Root::POSITIVE
                .into_iter()
                .find(|a| d == crate::rootdata::scale(d[a.i], a.coroot()))
            else {
                continue;
            };
            let k = d[a.i];
            if k < 1 {
                continue;
            }
            let x = curve_point(field, a, 1, a.pair(nu) - k, nu)?;
            if x.member(f) {
                edges.push(Edge {
                    u: nu,
                    v: other,
                    root: a,
                    k,
                });
            }
        }
    }
    Ok(MomentGraph::new(verts, edges))
}

/// `Σ b_{2i} t^{2i}`, stored as `b_0, b_2, b_4, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PoincarePoly(pub Vec<u64>);

impl PoincarePoly {
    pub fn from_dims(dims: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Vec::new();
        for d in dims {
            if b.len() <= d {
                b.resize(d + 1, 0);
            }
            b[d] += 1;
        }
        PoincarePoly(b)
    }

    pub fn monomial(d: usize) -> Self {
        Self::from_dims([d])
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, other: &PoincarePoly) -> PoincarePoly {
        let n = self.0.len().max(other.0.len());
        let b = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        PoincarePoly(b).trim()
    }

    /// `P(t)` with `t^2 = q`.
    pub fn eval_q(&self, q: u64) -> u128 {
        self.0
            .iter()
            .rev()
            .fold(0u128, |acc, &b| acc * q as u128 + b as u128)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&b| b != 0)
    }
}

impl Ord for PoincarePoly {
    /// `P < Q` when the leading coefficient of `Q - P` is positive.
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in (0..n).rev() {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for PoincarePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &b) in self.0.iter().enumerate() {
            if b == 0 {
                continue;
            }
            terms.push(match (i, b) {
                (0, b) => b.to_string(),
                (1, 1) => "t^2".to_string(),
                (1, b) => format!("{b}t^2"),
                (i, 1) => format!("t^{}", 2 * i),
                (i, b) => format!("{b}t^{}", 2 * i),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

pub fn compare(p: &PoincarePoly, q: &PoincarePoly) -> Ordering {
    p.cmp(q)
}

/// Formal Betti numbers for a total order listed greatest first: every
/// edge points away from its greater endpoint.
pub fn formal_betti(g: &MomentGraph, order: &[Coweight]) -> Result<PoincarePoly> {
    if order.len() != g.vertices.len() {
        return Err(Error::InvalidInput(
            "order must list every vertex once".into(),
        ));
    }
    let rank: HashMap<Coweight, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    if rank.len() != order.len() || g.vertices.iter().any(|v| !rank.contains_key(v)) {
        return Err(Error::InvalidInput(
            "order must list every vertex once".into(),
        ));
    }
    let mut out = vec![0usize; order.len()];
    for e in &g.edges {
        let src = if rank[&e.u] < rank[&e.v] { e.u } else { e.v };
        out[rank[&src]] += 1;
    }
    Ok(PoincarePoly::from_dims(out))
}

/// Exact minimum of [`formal_betti`] over all total orders, with a witness.
///
/// Listing vertices greatest first, the out-degree of the next vertex only
/// depends on which vertices are already listed, and the comparison is
/// compatible with addition, so a dynamic programme over vertex subsets is
/// exact.
pub fn min_formal_poincare(g: &MomentGraph, budget: u128) -> Result<(PoincarePoly, Vec<Coweight>)> {
    let n = g.vertices.len();
    let needed = 1u128 << n.min(127);
    if n >= 64 || needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let idx = g.index();
    let mut adj = vec![0u64; n];
    for e in &g.edges {
        let (a, b) = (idx[&e.u], idx[&e.v]);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let size = 1usize << n;
    let mut best: Vec<Option<(PoincarePoly, u8)>> = vec![None; size];
    best[full as usize] = Some((PoincarePoly::default(), u8::MAX));
    for placed in (0..full).rev() {
        let mut cur: Option<(PoincarePoly, u8)> = None;
        for v in 0..n {
            if placed & (1 << v) != 0 {
                continue;
            }
            let out = (adj[v] & !placed & !(1 << v)).count_ones() as usize;
            let next = placed | (1 << v);
            let tail = &best[next as usize].as_ref().unwrap().0;
            let cand = tail.add(&PoincarePoly::monomial(out));
            if cur.as_ref().is_none_or(|(c, _)| cand < *c) {
                cur = Some((cand, v as u8));
            }
        }
        best[placed as usize] = cur;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while placed != full {
        let v = best[placed as usize].as_ref().unwrap().1 as usize;
        order.push(g.vertices[v]);
        placed |= 1 << v;
    }
    let poly = best[0].take().map(|x| x.0).unwrap_or_default();
    Ok((poly, order))
}
