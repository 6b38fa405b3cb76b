//! Lusztig data, the rank-two braid move, MV polytopes and their crystal
//! operators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{add, scale, sub, Coweight, GTFamily, WeylElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ReducedWord {
    #[serde(rename = "121")]
    W121,
    #[serde(rename = "212")]
    W212,
}

impl ReducedWord {
    pub fn letters(self) -> [usize; 3] {
        match self {
            ReducedWord::W121 => [1, 2, 1],
            ReducedWord::W212 => [2, 1, 2],
        }
    }

    pub fn other(self) -> ReducedWord {
        match self {
            ReducedWord::W121 => ReducedWord::W212,
            ReducedWord::W212 => ReducedWord::W121,
        }
    }

    /// The word whose last letter is `i`.
    pub fn ending_with(i: usize) -> ReducedWord {
        match i {
            1 => ReducedWord::W121,
            2 => ReducedWord::W212,
            _ => panic!("no simple root {i}"),
        }
    }

    /// Prefixes `w_0 = id, w_1, w_2, w_3 = w0` of the word.
    pub fn path(self) -> [WeylElt; 4] {
        let l = self.letters();
        let w1 = WeylElt::simple(l[0]);
        let w2 = w1.compose(WeylElt::simple(l[1]));
        [WeylElt::ID, w1, w2, w2.compose(WeylElt::simple(l[2]))]
    }

    /// Coroots `-β_j = w_{j-1}·α_{i_j}^∨`, positive.
    pub fn step_coroots(self) -> [Coweight; 3] {
        let p = self.path();
        let l = self.letters();
        let mut out = [[0; 3]; 3];
        for k in 0..3 {
            let mut a = [0; 3];
            a[l[k] - 1] = 1;
            a[l[k]] = -1;
            out[k] = p[k].act(a);
        }
        out
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReducedWord::W121 => "121",
            ReducedWord::W212 => "212",
        })
    }
}

impl FromStr for ReducedWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "121" => Ok(ReducedWord::W121),
            "212" => Ok(ReducedWord::W212),
            _ => Err(Error::InvalidInput(format!(
                "reduced word must be 121 or 212, got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LusztigDatum {
    pub word: ReducedWord,
    pub n: [u32; 3],
}

impl LusztigDatum {
    pub fn new(word: ReducedWord, n: [u32; 3]) -> Self {
        LusztigDatum { word, n }
    }

    pub fn w121(n: [u32; 3]) -> Self {
        Self::new(ReducedWord::W121, n)
    }

    pub fn ni(&self) -> [i64; 3] {
        self.n.map(i64::from)
    }

    /// The same polytope read along the other reduced word.
    pub fn braid(&self) -> LusztigDatum {
        let [n1, n2, n3] = self.n;
        let a = n1.min(n3);
        LusztigDatum {
            word: self.word.other(),
            n: [n2 + n3 - a, a, n1 + n2 - a],
        }
    }

    pub fn in_word(&self, word: ReducedWord) -> LusztigDatum {
        if self.word == word {
            *self
        } else {
            self.braid()
        }
    }

    /// `n1 + 2 n2 + n3`, computed in `121` coordinates.
    pub fn dimension(&self) -> i64 {
        let [n1, n2, n3] = self.in_word(ReducedWord::W121).ni();
        n1 + 2 * n2 + n3
    }

    /// `μ = Σ n_j β_j`, the difference `λ_{w0} - λ_id`.
    pub fn coweight(&self) -> Coweight {
        let c = self.word.step_coroots();
        let n = self.ni();
        let mut mu = [0; 3];
        for k in 0..3 {
            mu = sub(mu, scale(n[k], c[k]));
        }
        mu
    }

    /// Normal position `n1 >= n3 >= n2` of a `121` datum.
    pub fn is_normal(&self) -> bool {
        let [n1, n2, n3] = self.n;
        self.word == ReducedWord::W121 && n1 >= n3 && n3 >= n2
    }
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){:?}", self.word, self.n)
    }
}

/// Vertex family with the given datum and `λ_id = base + (n1, 0, -n2)` in
/// `121` coordinates.
pub fn vertices_of(d: &LusztigDatum, base: Coweight) -> GTFamily {
    let d121 = d.in_word(ReducedWord::W121);
    let d212 = d121.braid();
    let [n1, n2, _] = d121.ni();
    let top = add(base, [n1, 0, -n2]);
    family_from_top(&d121, &d212, top).expect("braid-consistent data give a valid family")
}

fn family_from_top(d121: &LusztigDatum, d212: &LusztigDatum, top: Coweight) -> Result<GTFamily> {
    let mut v: [Option<Coweight>; 6] = [None; 6];
    let put = |v: &mut [Option<Coweight>; 6], w: WeylElt, x: Coweight| -> Result<()> {
        let b = crate::rootdata::borel_index(w);
        match v[b] {
            Some(y) if y != x => Err(Error::InconsistentFamily(format!(
                "paths disagree at {}: {y:?} vs {x:?}",
                w.one_line()
            ))),
            _ => {
                v[b] = Some(x);
                Ok(())
            }
        }
    };
    for d in [d121, d212] {
        let path = d.word.path();
        let c = d.word.step_coroots();
        let mut x = top;
        put(&mut v, path[0], x)?;
        for k in 0..3 {
            x = sub(x, scale(d.ni()[k], c[k]));
            put(&mut v, path[k + 1], x)?;
        }
    }
    GTFamily::from_vertices(v.map(|x| x.unwrap()))
}

/// Lusztig datum read off a family along `word`.
pub fn datum_along(f: &GTFamily, word: ReducedWord) -> LusztigDatum {
    let path = word.path();
    let c = word.step_coroots();
    let mut n = [0u32; 3];
    for k in 0..3 {
        let diff = sub(f.vertex_at(path[k]), f.vertex_at(path[k + 1]));
        let i = c[k].iter().position(|&x| x == 1).unwrap();
        n[k] = u32::try_from(diff[i]).expect("positive family");
    }
    LusztigDatum { word, n }
}

/// An MV polytope in absolute coordinates, carrying both Lusztig data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MVPolytope {
    base: Coweight,
    d121: LusztigDatum,
    d212: LusztigDatum,
    family: GTFamily,
}

impl MVPolytope {
    pub fn new(d: LusztigDatum, base: Coweight) -> Self {
        let d121 = d.in_word(ReducedWord::W121);
        MVPolytope {
            base,
            d121,
            d212: d121.braid(),
            family: vertices_of(&d121, base),
        }
    }

    /// The MV polytope with datum `d` whose vertex `λ_id` is `top`.
    pub fn with_top(d: LusztigDatum, top: Coweight) -> Self {
        let [n1, n2, _] = d.in_word(ReducedWord::W121).ni();
        Self::new(d, sub(top, [n1, 0, -n2]))
    }

    /// Accepts a family only when its two path data satisfy the braid rule.
    pub fn from_family(f: &GTFamily) -> Result<Self> {
        let d121 = datum_along(f, ReducedWord::W121);
        let d212 = datum_along(f, ReducedWord::W212);
        if d121.braid() != d212 {
            return Err(Error::NotMV);
        }
        Ok(Self::with_top(d121, f.vertex(0)))
    }

    pub fn base(&self) -> Coweight {
        self.base
    }

    pub fn top(&self) -> Coweight {
        self.family.vertex(0)
    }

    pub fn datum(&self, word: ReducedWord) -> LusztigDatum {
        match word {
            ReducedWord::W121 => self.d121,
            ReducedWord::W212 => self.d212,
        }
    }

    pub fn family(&self) -> &GTFamily {
        &self.family
    }

    pub fn dimension(&self) -> i64 {
        self.d121.dimension()
    }

    pub fn coweight(&self) -> Coweight {
        self.d121.coweight()
    }

    /// Lowering operator; keeps `λ_id` fixed.
    pub fn crystal_f(&self, i: usize) -> MVPolytope {
        let mut d = self.datum(ReducedWord::ending_with(i));
        d.n[2] += 1;
        Self::with_top(d, self.top())
    }

    /// Raising operator; `None` is the crystal zero.
    pub fn crystal_e(&self, i: usize) -> Option<MVPolytope> {
        let mut d = self.datum(ReducedWord::ending_with(i));
        if d.n[2] == 0 {
            return None;
        }
        d.n[2] -= 1;
        Some(Self::with_top(d, self.top()))
    }

    /// `E_{j_1} ⋯ E_{j_l}`, applying `E_{j_l}` first.
    pub fn apply_crystal_word(&self, j: &CrystalWord) -> Option<MVPolytope> {
        let mut p = self.clone();
        for &i in j.0.iter().rev() {
            p = p.crystal_e(i as usize)?;
        }
        Some(p)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            word: ReducedWord::W121,
            n: self.d121.n,
            base: self.base,
        }
    }
}

/// Wire form `{"word": "121", "n": [..], "base": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub word: ReducedWord,
    pub n: [u32; 3],
    #[serde(default)]
    pub base: Coweight,
}

impl PolytopeJson {
    pub fn into_polytope(self) -> MVPolytope {
        MVPolytope::new(LusztigDatum::new(self.word, self.n), self.base)
    }
}

/// A word in `{1,2}` with no repeated adjacent letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CrystalWord(Vec<u8>);

impl CrystalWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&c| c != 1 && c != 2) {
            return Err(Error::InvalidInput(format!(
                "crystal word letters must be 1 or 2: {letters:?}"
            )));
        }
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "crystal word must alternate: {letters:?}"
            )));
        }
        Ok(CrystalWord(letters))
    }

    pub fn empty() -> Self {
        CrystalWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word with the letter alternating against the current first one
    /// put in front (`1` in front of the empty word).
    pub fn prepend_alternating(&self) -> CrystalWord {
        let first = match self.0.first() {
            Some(1) => 2,
            Some(_) => 1,
            None => 1,
        };
        let mut v = vec![first];
        v.extend_from_slice(&self.0);
        CrystalWord(v)
    }

    /// All alternating words of length `len`.
    pub fn all_of_length(len: usize) -> Vec<CrystalWord> {
        if len == 0 {
            return vec![CrystalWord::empty()];
        }
        [1u8, 2]
            .iter()
            .map(|&s| {
                CrystalWord(
                    (0..len)
                        .map(|k| if k % 2 == 0 { s } else { 3 - s })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for CrystalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CrystalWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::InvalidInput(format!("bad crystal word {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        CrystalWord::new(letters)
    }
}

/// `⟨w·ρ, λ_w - λ_{w w0}⟩`.
pub fn rho_gap(f: &GTFamily, w: WeylElt) -> i64 {
    let r = w.rho();
    let d = sub(f.vertex_at(w), f.vertex_at(w.compose(WeylElt::W0)));
    (0..3).map(|i| r[i] * d[i]).sum()
}

/// Finds `w` with `w⁻¹·f` an MV polytope, trying minimizers of
/// [`rho_gap`] first and breaking ties in [`WeylElt::ALL`] order.
pub fn canonicalize(f: &GTFamily) -> Result<(WeylElt, MVPolytope)> {
    let mut order: Vec<WeylElt> = WeylElt::ALL.to_vec();
    order.sort_by_key(|&w| (rho_gap(f, w), w.index()));
    for w in order {
        if let Ok(p) = MVPolytope::from_family(&f.weyl_act(w.inverse())) {
            return Ok((w, p));
        }
    }
    Err(Error::NotMV)
}

/// True for Weyl translates of MV polytopes.
pub fn is_generalized_mv(f: &GTFamily) -> bool {
    canonicalize(f).is_ok()
}

/// Lusztig data in `121` coordinates with `-μ = p α1^∨ + q α2^∨`.
pub fn lusztig_data_with_coweight(p: u32, q: u32) -> Vec<[u32; 3]> {
    (0..=p.min(q)).map(|n2| [p - n2, n2, q - n2]).collect()
}

/// Borel index of the vertex `λ_{w_j}` along a word path.
pub fn path_borels(word: ReducedWord) -> [usize; 4] {
    word.path().map(crate::rootdata::borel_index)
}
