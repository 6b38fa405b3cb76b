//! Root data of GL3: the Weyl group S3, roots and coroots, chamber weights,
//! and positive (G,T)-orthogonal families.
//!
//! Coweights are plain integer triples. Indices are 0-based internally and
//! printed 1-based.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Coweight = [i64; 3];

pub fn add(a: Coweight, b: Coweight) -> Coweight {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Coweight, b: Coweight) -> Coweight {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(k: i64, a: Coweight) -> Coweight {
    [k * a[0], k * a[1], k * a[2]]
}

pub fn total(a: Coweight) -> i64 {
    a.iter().sum()
}

/// The root `α_ij` (`i != j`), with coroot `e_i - e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < 3 && j < 3 && i != j, "bad root ({i},{j})");
        Root { i, j }
    }

    /// Positive roots for the upper triangular Borel: α12, α23, α13.
    pub const POSITIVE: [Root; 3] = [
        Root { i: 0, j: 1 },
        Root { i: 1, j: 2 },
        Root { i: 0, j: 2 },
    ];

    pub fn coroot(self) -> Coweight {
        let mut v = [0; 3];
        v[self.i] = 1;
        v[self.j] = -1;
        v
    }

    pub fn pair(self, nu: Coweight) -> i64 {
        nu[self.i] - nu[self.j]
    }

    pub fn neg(self) -> Root {
        Root {
            i: self.j,
            j: self.i,
        }
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    /// The positive root among `±self`.
    pub fn positive(self) -> Root {
        if self.is_positive() {
            self
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "a{}{}", self.i + 1, self.j + 1)
        } else {
            write!(f, "-a{}{}", self.j + 1, self.i + 1)
        }
    }
}

/// A permutation `w` of `{0,1,2}`, stored as `w(0), w(1), w(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElt(pub [usize; 3]);

impl WeylElt {
    pub const ID: WeylElt = WeylElt([0, 1, 2]);
    pub const S1: WeylElt = WeylElt([1, 0, 2]);
    pub const S2: WeylElt = WeylElt([0, 2, 1]);
    pub const S1S2: WeylElt = WeylElt([1, 2, 0]);
    pub const S2S1: WeylElt = WeylElt([2, 0, 1]);
    pub const W0: WeylElt = WeylElt([2, 1, 0]);

    /// Fixed enumeration order used for tie-breaking.
    pub const ALL: [WeylElt; 6] = [
        Self::ID,
        Self::S1,
        Self::S2,
        Self::S1S2,
        Self::S2S1,
        Self::W0,
    ];

    pub fn simple(i: usize) -> WeylElt {
        match i {
            1 => Self::S1,
            2 => Self::S2,
            _ => panic!("no simple reflection s{i} in S3"),
        }
    }

    pub fn apply(self, i: usize) -> usize {
        self.0[i]
    }

    pub fn compose(self, other: WeylElt) -> WeylElt {
        WeylElt([self.0[other.0[0]], self.0[other.0[1]], self.0[other.0[2]]])
    }

    pub fn inverse(self) -> WeylElt {
        let mut inv = [0; 3];
        for i in 0..3 {
            inv[self.0[i]] = i;
        }
        WeylElt(inv)
    }

    pub fn length(self) -> usize {
        let p = self.0;
        (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    /// `(wλ)_{w(i)} = λ_i`.
    pub fn act(self, lambda: Coweight) -> Coweight {
        let mut out = [0; 3];
        for i in 0..3 {
            out[self.0[i]] = lambda[i];
        }
        out
    }

    pub fn act_root(self, a: Root) -> Root {
        Root {
            i: self.0[a.i],
            j: self.0[a.j],
        }
    }

    pub fn act_set(self, s: ChamberWeight) -> ChamberWeight {
        let mut m = 0u8;
        for i in 0..3 {
            if s.0 & (1 << i) != 0 {
                m |= 1 << self.0[i];
            }
        }
        ChamberWeight(m)
    }

    /// `w·ρ` for `ρ = (1,0,-1)` viewed as a weight.
    pub fn rho(self) -> [i64; 3] {
        self.act([1, 0, -1])
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&w| w == self).unwrap()
    }

    /// One-line notation, 1-based: `s1` is `"213"`.
    pub fn one_line(self) -> String {
        self.0.iter().map(|&i| char::from(b'1' + i as u8)).collect()
    }

    pub fn from_one_line(s: &str) -> Result<WeylElt> {
        let b = s.as_bytes();
        if b.len() != 3 {
            return Err(Error::InvalidInput(format!("bad permutation {s:?}")));
        }
        let mut p = [0; 3];
        for (k, &c) in b.iter().enumerate() {
            if !(b'1'..=b'3').contains(&c) {
                return Err(Error::InvalidInput(format!("bad permutation {s:?}")));
            }
            p[k] = (c - b'1') as usize;
        }
        let w = WeylElt(p);
        if w.compose(w.inverse()) != Self::ID {
            return Err(Error::InvalidInput(format!("bad permutation {s:?}")));
        }
        Ok(w)
    }
}

/// A Borel containing `T`, indexed clockwise `0..5` starting from the upper
/// triangular one: `w` runs through `id, s2, s2s1, w0, s1s2, s1`.
pub const BOREL_ELTS: [WeylElt; 6] = [
    WeylElt::ID,
    WeylElt::S2,
    WeylElt::S2S1,
    WeylElt::W0,
    WeylElt::S1S2,
    WeylElt::S1,
];

pub fn borel_elt(b: usize) -> WeylElt {
    BOREL_ELTS[b]
}

pub fn borel_index(w: WeylElt) -> usize {
    BOREL_ELTS.iter().position(|&x| x == w).unwrap()
}

/// Simple reflection `s` with `w_{b+1} = w_b s`.
pub fn edge_reflection(b: usize) -> usize {
    let w = borel_elt(b);
    let next = borel_elt((b + 1) % 6);
    if w.compose(WeylElt::S1) == next {
        1
    } else {
        debug_assert_eq!(w.compose(WeylElt::S2), next);
        2
    }
}

/// Root separating `B_b` from `B_{b+1}`, positive for `B_b`.
pub fn separating_root(b: usize) -> Root {
    let s = edge_reflection(b);
    borel_elt(b).act_root(Root::new(s - 1, s))
}

/// Chamber weight as the column set `w·{1..i}`, a bitmask over `{0,1,2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChamberWeight(pub u8);

impl ChamberWeight {
    pub const ALL: [ChamberWeight; 6] = [
        ChamberWeight(0b001),
        ChamberWeight(0b010),
        ChamberWeight(0b100),
        ChamberWeight(0b011),
        ChamberWeight(0b101),
        ChamberWeight(0b110),
    ];

    pub fn level(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn elements(self) -> Vec<usize> {
        (0..3).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(self) -> ChamberWeight {
        ChamberWeight(!self.0 & 0b111)
    }

    pub fn index(self) -> usize {
        Self::ALL
            .iter()
            .position(|&s| s == self)
            .expect("not a chamber weight")
    }

    /// `w·ϖ_i` as a column set.
    pub fn of(w: WeylElt, level: usize) -> ChamberWeight {
        let base = if level == 1 {
            ChamberWeight(0b001)
        } else {
            ChamberWeight(0b011)
        };
        w.act_set(base)
    }
}

impl fmt::Display for ChamberWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self
            .elements()
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        write!(f, "{{{}}}", e.join(","))
    }
}

pub fn pairing(lambda: Coweight, s: ChamberWeight) -> i64 {
    (0..3).filter(|&i| s.contains(i)).map(|i| lambda[i]).sum()
}

/// Support numbers `M_S`, indexed like [`ChamberWeight::ALL`].
pub type Support = [i64; 6];

impl Serialize for WeylElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

/// A positive (G,T)-orthogonal family: one vertex per Borel, in absolute
/// coordinates on a fixed `ν_G` fibre.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTFamily {
    nu: i64,
    /// Indexed by Borel index.
    vertices: [Coweight; 6],
    support: Support,
}

impl GTFamily {
    /// Validates and wraps vertex data indexed by Borel index.
    pub fn from_vertices(vertices: [Coweight; 6]) -> Result<Self> {
        let nu = total(vertices[0]);
        if vertices.iter().any(|&v| total(v) != nu) {
            return Err(Error::InconsistentFamily(
                "vertices lie on different components".into(),
            ));
        }
        for b in 0..6 {
            let diff = sub(vertices[b], vertices[(b + 1) % 6]);
            let a = separating_root(b);
            let n = diff[a.i];
            if diff != scale(n, a.coroot()) {
                return Err(Error::InconsistentFamily(format!(
                    "edge {b}-{}: difference {diff:?} is not a multiple of the coroot of {a}",
                    (b + 1) % 6
                )));
            }
            if n < 0 {
                return Err(Error::InconsistentFamily(format!(
                    "edge {b}-{} has negative length {n}",
                    (b + 1) % 6
                )));
            }
        }
        let mut support = [0; 6];
        for (b, &v) in vertices.iter().enumerate() {
            let w = borel_elt(b);
            for level in [1, 2] {
                let s = ChamberWeight::of(w, level);
                support[s.index()] = pairing(v, s);
            }
        }
        Ok(GTFamily {
            nu,
            vertices,
            support,
        })
    }

    /// Rebuilds the family from its six support numbers.
    pub fn from_support(m: Support, nu: i64) -> Result<Self> {
        let mut vertices = [[0; 3]; 6];
        for (b, v) in vertices.iter_mut().enumerate() {
            let w = borel_elt(b);
            let m1 = m[ChamberWeight::of(w, 1).index()];
            let m2 = m[ChamberWeight::of(w, 2).index()];
            v[w.apply(0)] = m1;
            v[w.apply(1)] = m2 - m1;
            v[w.apply(2)] = nu - m2;
        }
        let f = Self::from_vertices(vertices)?;
        if f.support != m {
            return Err(Error::InconsistentFamily(
                "support numbers are not tight".into(),
            ));
        }
        Ok(f)
    }

    /// The single point family at `nu`.
    pub fn point(nu: Coweight) -> Self {
        Self::from_vertices([nu; 6]).unwrap()
    }

    /// Family of the Weyl polytope `conv(W·λ)`.
    pub fn weyl_polytope(lambda: Coweight) -> Self {
        let mut dom = lambda;
        dom.sort_unstable_by(|a, b| b.cmp(a));
        let mut v = [[0; 3]; 6];
        for (b, x) in v.iter_mut().enumerate() {
            *x = borel_elt(b).act(dom);
        }
        Self::from_vertices(v).unwrap()
    }

    pub fn nu(&self) -> i64 {
        self.nu
    }

    pub fn vertices(&self) -> &[Coweight; 6] {
        &self.vertices
    }

    /// Vertex `λ_b` for Borel index `b`.
    pub fn vertex(&self, b: usize) -> Coweight {
        self.vertices[b]
    }

    /// Vertex `λ_w` of the Borel `w·B0`.
    pub fn vertex_at(&self, w: WeylElt) -> Coweight {
        self.vertices[borel_index(w)]
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn m(&self, s: ChamberWeight) -> i64 {
        self.support[s.index()]
    }

    /// Edge length `n` with `λ_b - λ_{b+1} = n·α^∨`.
    pub fn edge_lengths(&self) -> [i64; 6] {
        let mut out = [0; 6];
        for (b, o) in out.iter_mut().enumerate() {
            let a = separating_root(b);
            *o = sub(self.vertices[b], self.vertices[(b + 1) % 6])[a.i];
        }
        out
    }

    pub fn is_point(&self) -> bool {
        self.vertices.iter().all(|&v| v == self.vertices[0])
    }

    pub fn distinct_vertices(&self) -> Vec<Coweight> {
        let mut v = self.vertices.to_vec();
        v.sort();
        v.dedup();
        v
    }

    /// `inner ⊆ self`, compared through support numbers.
    pub fn contains(&self, inner: &GTFamily) -> bool {
        self.nu == inner.nu && (0..6).all(|k| inner.support[k] <= self.support[k])
    }

    pub fn contains_point(&self, nu: Coweight) -> bool {
        total(nu) == self.nu
            && ChamberWeight::ALL
                .iter()
                .all(|&s| pairing(nu, s) <= self.m(s))
    }

    /// Integer points of the polytope, sorted.
    pub fn lattice_points(&self) -> Vec<Coweight> {
        lattice_points_of(&self.support, self.nu)
    }

    pub fn weyl_act(&self, w: WeylElt) -> GTFamily {
        let mut v = [[0; 3]; 6];
        for (b, x) in v.iter_mut().enumerate() {
            let wp = borel_elt(b);
            *x = w.act(self.vertex_at(w.inverse().compose(wp)));
        }
        GTFamily::from_vertices(v).expect("Weyl action preserves positivity")
    }

    pub fn translate(&self, chi: Coweight) -> GTFamily {
        let v = self.vertices.map(|x| add(x, chi));
        GTFamily::from_vertices(v).unwrap()
    }

    /// The involution `ν ↦ -ν`, which sends the vertex of `w·B0` to the
    /// vertex of `w w0·B0`.
    pub fn negate(&self) -> GTFamily {
        let mut v = [[0; 3]; 6];
        for (b, x) in v.iter_mut().enumerate() {
            let w = borel_elt(b);
            *x = scale(-1, self.vertex_at(w.compose(WeylElt::W0)));
        }
        GTFamily::from_vertices(v).expect("negation preserves positivity")
    }

    pub fn same_up_to_translation(&self, other: &GTFamily) -> bool {
        let chi = sub(other.vertices[0], self.vertices[0]);
        self.translate(chi) == *other
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            nu: self.nu,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(b, &v)| (borel_elt(b).one_line(), v))
                .collect(),
        }
    }
}

/// Integer points `ν` with `Σν = nu` and `⟨ν,S⟩ <= M_S`, sorted.
pub fn lattice_points_of(m: &Support, nu: i64) -> Vec<Coweight> {
    let upper = |i: usize| m[ChamberWeight(1 << i).index()];
    let lower = |i: usize| nu - m[ChamberWeight(0b111 & !(1 << i)).index()];
    let mut out = Vec::new();
    for a in lower(0)..=upper(0) {
        for b in lower(1)..=upper(1) {
            let p = [a, b, nu - a - b];
            if ChamberWeight::ALL
                .iter()
                .all(|&s| pairing(p, s) <= m[s.index()])
            {
                out.push(p);
            }
        }
    }
    out
}

/// Smallest support numbers describing the hull of `points`.
pub fn support_of_points(points: &[Coweight]) -> Option<Support> {
    if points.is_empty() {
        return None;
    }
    let mut m = [i64::MIN; 6];
    for &p in points {
        for (k, &s) in ChamberWeight::ALL.iter().enumerate() {
            m[k] = m[k].max(pairing(p, s));
        }
    }
    Some(m)
}

impl Serialize for GTFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Wire form `{"nu": int, "vertices": {"123": [..], ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub nu: i64,
    pub vertices: BTreeMap<String, Coweight>,
}

impl FamilyJson {
    pub fn into_family(self) -> Result<GTFamily> {
        let mut v = [None; 6];
        for (k, x) in &self.vertices {
            let w = WeylElt::from_one_line(k)?;
            v[borel_index(w)] = Some(*x);
        }
        let mut out = [[0; 3]; 6];
        for b in 0..6 {
            out[b] = v[b].ok_or_else(|| {
                Error::InvalidInput(format!("missing vertex for {}", borel_elt(b).one_line()))
            })?;
        }
        let f = GTFamily::from_vertices(out)?;
        if f.nu != self.nu {
            return Err(Error::InconsistentFamily(format!(
                "nu {} does not match vertices",
                self.nu
            )));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing([1, 0, 0], ChamberWeight(0b001)), 1);
        assert_eq!(pairing([2, 1, -1], ChamberWeight(0b011)), 3);
        for s in ChamberWeight::ALL {
            assert_eq!(pairing([0, 0, 0], s), 0);
        }
    }

    #[test]
    fn weyl_group_tables() {
        assert_eq!(WeylElt::S1.compose(WeylElt::S2), WeylElt::S1S2);
        assert_eq!(WeylElt::S2.compose(WeylElt::S1), WeylElt::S2S1);
        assert_eq!(
            WeylElt::S1.compose(WeylElt::S2).compose(WeylElt::S1),
            WeylElt::W0
        );
        assert_eq!(WeylElt::W0.length(), 3);
        for w in WeylElt::ALL {
            assert_eq!(w.compose(w.inverse()), WeylElt::ID);
            assert_eq!(WeylElt::from_one_line(&w.one_line()).unwrap(), w);
        }
        assert_eq!(WeylElt::S1.one_line(), "213");
    }

    #[test]
    fn borels_go_around_the_hexagon() {
        for b in 0..6 {
            let w = borel_elt(b);
            let next = borel_elt((b + 1) % 6);
            assert_eq!(w.length().abs_diff(next.length()), 1);
        }
    }

    #[test]
    fn weyl_polytope_vertices() {
        let f = GTFamily::weyl_polytope([1, 0, 0]);
        assert_eq!(f.vertex(0), [1, 0, 0]);
        assert_eq!(f.vertex_at(WeylElt::S1), [0, 1, 0]);
        assert_eq!(f.vertex_at(WeylElt::W0), [0, 0, 1]);
        assert_eq!(f.lattice_points(), vec![[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    }

    #[test]
    fn support_round_trip() {
        let f = GTFamily::weyl_polytope([2, 0, -1]);
        let g = GTFamily::from_support(f.support(), f.nu()).unwrap();
        assert_eq!(f, g);
        let z = GTFamily::from_support([0; 6], 0).unwrap();
        assert!(z.is_point());
        assert_eq!(z.vertex(3), [0, 0, 0]);
    }

    #[test]
    fn identity_and_translation() {
        let f = GTFamily::weyl_polytope([2, 1, -1]);
        assert_eq!(f.weyl_act(WeylElt::ID), f);
        assert_eq!(f.translate([1, -2, 5]).translate([-1, 2, -5]), f);
        assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn json_round_trip() {
        let f = GTFamily::weyl_polytope([1, 1, 0]);
        let s = serde_json::to_string(&f).unwrap();
        let back: FamilyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_family().unwrap(), f);
    }
}
