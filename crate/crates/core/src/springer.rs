//! Affine Springer fibres of regular diagonal `γ ∈ t(O)`, intersected with
//! truncated affine Grassmannians.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grass::{enumerate_points, GrassPoint, LaurentMatrix};
use crate::laurent::{LaurentSeries, PrimeField, SeriesJson, Val};
use crate::mvcomb::{CrystalWord, LusztigDatum, MVPolytope, ReducedWord};
use crate::paving::{contracting_cell, greedy_paving_with, GreedyRules, PavingPlan};
use crate::rootdata::{borel_elt, borel_index, GTFamily, Root, WeylElt};

/// Root valuations `(c12, c23, c13)`.
pub type Pattern = [u32; 3];

fn pattern_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (1, 2) => 1,
        (0, 2) => 2,
        _ => panic!("not a root: ({i}, {j})"),
    }
}

/// `c_{ij} = val(γ_i - γ_j)`, symmetric in `i, j`.
pub fn pattern_at(c: &Pattern, i: usize, j: usize) -> u32 {
    c[pattern_index(i, j)]
}

/// The two smallest of the three valuations agree.
pub fn is_ultrametric(c: &Pattern) -> bool {
    let mut s = *c;
    s.sort_unstable();
    s[0] == s[1]
}

/// `(wγ)_{w(i)} = γ_i`, on valuations.
pub fn permute_pattern(c: &Pattern, w: WeylElt) -> Pattern {
    let mut out = [0; 3];
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        out[pattern_index(w.apply(i), w.apply(j))] = pattern_at(c, i, j);
    }
    out
}

/// A regular element `diag(γ1, γ2, γ3)` of `t(O)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularDiagonal {
    gamma: [LaurentSeries; 3],
    c: Pattern,
}

impl RegularDiagonal {
    pub fn from_series(gamma: [LaurentSeries; 3]) -> Result<Self> {
        let field = gamma[0].field();
        if gamma.iter().any(|g| g.field() != field) {
            return Err(Error::InvalidInput("entries over different fields".into()));
        }
        if gamma.iter().any(|g| g.val_lower_bound() < Val::Finite(0)) {
            return Err(Error::InvalidInput("γ must be integral".into()));
        }
        let mut c = [0; 3];
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            match (&gamma[i] - &gamma[j]).val()? {
                Val::Finite(v) => c[pattern_index(i, j)] = v as u32,
                Val::Infinite => return Err(Error::InvalidInput("γ is not regular".into())),
            }
        }
        Ok(RegularDiagonal { gamma, c })
    }

    /// A polynomial representative with `γ1 = 0` and the given valuations.
    pub fn from_pattern(field: PrimeField, c: Pattern) -> Result<Self> {
        if !is_ultrametric(&c) {
            return Err(Error::InvalidInput(format!(
                "valuations {c:?} are not ultrametric"
            )));
        }
        let [c12, c23, c13] = c.map(|x| x as i64);
        let mono = |e: i64| LaurentSeries::monomial(field, 1, e);
        let (g2, g3) = if c12 == c23 && c23 == c13 {
            if field.p() < 3 {
                return Err(Error::NotRealizable {
                    pattern: c,
                    p: field.p(),
                });
            }
            (mono(c12), LaurentSeries::monomial(field, 2, c12))
        } else if c12 == c13 {
            (mono(c12), &mono(c12) + &mono(c23))
        } else {
            (mono(c12), mono(c13))
        };
        Self::from_series([LaurentSeries::zero(field), g2, g3])
    }

    /// [`Self::from_pattern`] followed by `γ ↦ uγ + t` with a random unit
    /// `u` and a random polynomial `t`.
    pub fn from_pattern_random<R: Rng + ?Sized>(
        field: PrimeField,
        c: Pattern,
        rng: &mut R,
    ) -> Result<Self> {
        let base = Self::from_pattern(field, c)?;
        let u = LaurentSeries::monomial(field, rng.gen_range(1..field.p()), 0);
        let len = c.iter().max().copied().unwrap_or(0) as usize + 1;
        let t = LaurentSeries::exact(
            field,
            0,
            (0..len).map(|_| rng.gen_range(0..field.p())).collect(),
        );
        Self::from_series(base.gamma.map(|g| &(&u * &g) + &t))
    }

    pub fn field(&self) -> PrimeField {
        self.gamma[0].field()
    }

    pub fn gamma(&self) -> &[LaurentSeries; 3] {
        &self.gamma
    }

    pub fn pattern(&self) -> Pattern {
        self.c
    }

    pub fn matrix(&self) -> LaurentMatrix {
        let f = self.field();
        LaurentMatrix::from_fn(f, |i, j| {
            if i == j {
                self.gamma[i].clone()
            } else {
                LaurentSeries::zero(f)
            }
        })
    }

    pub fn permute(&self, w: WeylElt) -> RegularDiagonal {
        let mut g = self.gamma.clone();
        for i in 0..3 {
            g[w.apply(i)] = self.gamma[i].clone();
        }
        RegularDiagonal {
            gamma: g,
            c: permute_pattern(&self.c, w),
        }
    }

    pub fn to_json(&self) -> GammaJson {
        GammaJson {
            series: Some(self.gamma.clone().map(|g| g.to_json())),
            pattern: Some(self.c),
            prime: None,
        }
    }
}

/// Wire form: three series, or a valuation pattern plus a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<[SeriesJson; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Pattern>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
}

impl GammaJson {
    /// Series win over the pattern; a bare pattern is realized over `F_p`
    /// with random units drawn from `rng`.
    pub fn into_gamma<R: Rng + ?Sized>(
        self,
        default_prime: u32,
        rng: &mut R,
    ) -> Result<RegularDiagonal> {
        let field = PrimeField::new(self.prime.unwrap_or(default_prime))?;
        if let Some(s) = self.series {
            let [a, b, c] = s;
            let g = RegularDiagonal::from_series([
                a.into_series(field),
                b.into_series(field),
                c.into_series(field),
            ])?;
            if let Some(p) = self.pattern {
                if p != g.c {
                    return Err(Error::PatternMismatch(format!(
                        "series give {:?}, pattern says {p:?}",
                        g.c
                    )));
                }
            }
            return Ok(g);
        }
        match self.pattern {
            Some(p) => RegularDiagonal::from_pattern_random(field, p, rng),
            None => Err(Error::InvalidInput("γ needs series or a pattern".into())),
        }
    }
}

/// Whether `g⁻¹ γ g` is integral, given `g` and `g⁻¹`.
pub fn conjugate_integral(
    g: &LaurentMatrix,
    g_inv: &LaurentMatrix,
    gamma: &RegularDiagonal,
) -> Result<bool> {
    let a = g_inv.mul(&gamma.matrix()).mul(g);
    for row in a.entries() {
        for x in row {
            if x.val_lower_bound() >= Val::Finite(0) {
                continue;
            }
            if let Val::Finite(v) = x.val()? {
                if v < 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `x ∈ X_γ`.
pub fn member_springer(x: &GrassPoint, gamma: &RegularDiagonal) -> Result<bool> {
    if x.field() != gamma.field() {
        return Err(Error::InvalidInput(
            "point and γ live over different fields".into(),
        ));
    }
    let h = x.h();
    conjugate_integral(&h, &h.inverse()?, gamma)
}

/// `c12 + c23 + c13`.
pub fn springer_dim(gamma: &RegularDiagonal) -> u32 {
    gamma.c.iter().sum()
}

/// `X(f) ∩ X_γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerTruncation {
    pub polytope: GTFamily,
    pub gamma: RegularDiagonal,
}

impl SpringerTruncation {
    pub fn points(&self, budget: u128) -> Result<Vec<GrassPoint>> {
        let pts = enumerate_points(&self.polytope, self.gamma.field(), budget)?;
        let mut out = Vec::with_capacity(pts.len());
        for x in pts {
            if member_springer(&x, &self.gamma)? {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// `(n1, n2)` for the valuation pattern `(n1, n2, n2)` with `n1 >= n2`.
pub fn family_parameters(c: &Pattern) -> Result<(u32, u32)> {
    let [c12, c23, c13] = *c;
    if c23 != c13 || c12 < c23 {
        return Err(Error::PatternMismatch(format!(
            "expected (n1, n2, n2) with n1 >= n2, got {c:?}"
        )));
    }
    Ok((c12, c23))
}

/// `F_γ = X(P(n1, n2, n2)) ∩ X_γ`.
pub fn fundamental_domain(gamma: &RegularDiagonal) -> Result<SpringerTruncation> {
    let (n1, n2) = family_parameters(&gamma.c)?;
    let p = MVPolytope::new(LusztigDatum::w121([n1, n2, n2]), [0, 0, 0]);
    Ok(SpringerTruncation {
        polytope: p.family().clone(),
        gamma: gamma.clone(),
    })
}

/// `l_α^B = min(width of the α coordinate of C_B, c_α)` for the three
/// coordinates of the contracting cell.
pub fn l_values(p: &MVPolytope, b: usize, c: &Pattern) -> Result<[(Root, u32); 3]> {
    let cell = contracting_cell(p, b)?;
    let w = cell.windows(0);
    Ok(std::array::from_fn(|k| {
        let (i, j, _, width) = w[k];
        (Root::new(i, j), (width as u32).min(pattern_at(c, i, j)))
    }))
}

/// Right-hand side of the affine-cell inequality for Borel `b`.
pub fn criterion_bound(p: &MVPolytope, b: usize, c: &Pattern) -> Result<i64> {
    let d = p.datum(ReducedWord::W121);
    if !d.is_normal() {
        return Err(Error::NormalPositionRequired(d.n));
    }
    let [n1, n2, n3] = d.ni();
    let [c12, c23, c13] = c.map(|x| x as i64);
    Ok(match b {
        0 | 5 | 2 | 3 => n2 + n3 + c12,
        1 => n1 + n2 + c23,
        4 => n1 + n2 + c13,
        _ => return Err(Error::InvalidInput(format!("Borel index {b} out of range"))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub l_sum: u32,
    pub bound: i64,
    pub affine: bool,
}

/// Whether `C_B(P) ∩ X_γ` is an affine space, for `P` in normal position.
pub fn criterion(p: &MVPolytope, b: usize, c: &Pattern) -> Result<CriterionReport> {
    let l_sum = l_values(p, b, c)?.iter().map(|x| x.1).sum::<u32>();
    let bound = criterion_bound(p, b, c)?;
    Ok(CriterionReport {
        l_sum,
        bound,
        affine: l_sum as i64 <= bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub q: u32,
    pub count: u64,
    pub l_sum: u32,
    /// `count == q^{Σl}`.
    pub affine: bool,
}

/// Brute force: counts `F_q`-points of `C_B(P) ∩ X_γ` through the cell
/// coordinates, `q` being the characteristic of `γ`.
pub fn criterion_oracle(
    p: &MVPolytope,
    b: usize,
    gamma: &RegularDiagonal,
    budget: u128,
) -> Result<OracleReport> {
    let field = gamma.field();
    let cell = contracting_cell(p, b)?;
    let needed = cell.param_count(field.p(), 0);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let l_sum = l_values(p, b, &gamma.c)?.iter().map(|x| x.1).sum::<u32>();
    let mut count = 0u64;
    let mut err = None;
    cell.for_each_rep(field, 0, |g, gi| match conjugate_integral(g, gi, gamma) {
        Ok(true) => count += 1,
        Ok(false) => {}
        Err(e) => err = Some(e),
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let q = field.p();
    Ok(OracleReport {
        q,
        count,
        l_sum,
        affine: (q as u128).pow(l_sum) == count as u128,
    })
}

/// A symmetry taking a generalized MV polytope to normal position: first
/// `ι` (if set), then `w`, then a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub w: WeylElt,
    pub iota: bool,
}

/// Finds `(ι?, w)` with `w·ι?(f)` an MV polytope in normal position, and
/// transports Borel `b` and the pattern along.
pub fn normal_position(
    f: &GTFamily,
    b: usize,
    c: &Pattern,
) -> Result<(MVPolytope, usize, Pattern, NormalForm)> {
    for iota in [false, true] {
        let g = if iota { f.negate() } else { f.clone() };
        let bi = if iota {
            borel_index(borel_elt(b).compose(WeylElt::W0))
        } else {
            b
        };
        for w in WeylElt::ALL {
            let h = g.weyl_act(w);
            let Ok(p) = MVPolytope::from_family(&h) else {
                continue;
            };
            if !p.datum(ReducedWord::W121).is_normal() {
                continue;
            }
            let bw = borel_index(w.compose(borel_elt(bi)));
            return Ok((p, bw, permute_pattern(c, w), NormalForm { w, iota }));
        }
    }
    Err(Error::NotMV)
}

/// [`criterion`] for any Borel of any generalized MV polytope.
pub fn criterion_general(f: &GTFamily, b: usize, c: &Pattern) -> Result<CriterionReport> {
    let (p, bw, cw, _) = normal_position(f, b, c)?;
    criterion(&p, bw, &cw)
}

/// Rules for paving `X(Q) ∩ X_γ` minus `X(inner)`: only vertices outside
/// `inner` whose cells pass the criterion, with cell dimension `Σ l`.
pub fn springer_rules(c: Pattern, inner: Option<GTFamily>) -> GreedyRules {
    let inner2 = inner.clone();
    GreedyRules {
        allow_vertex: Box::new(move |f, b, v| {
            inner.as_ref().is_none_or(|i| !i.contains_point(v))
                && criterion_general(f, b, &c)
                    .map(|r| r.affine)
                    .unwrap_or(false)
        }),
        keep: Box::new(move |f| inner2.as_ref().is_none_or(|i| !i.contains(f))),
        cell_dim: Box::new(move |f, b| Ok(criterion_general(f, b, &c)?.l_sum as usize)),
    }
}

/// One `γ` per verification prime, all with valuations `c`.
pub fn gammas_for(c: Pattern, qs: &[u32]) -> Result<Vec<RegularDiagonal>> {
    qs.iter()
        .map(|&q| RegularDiagonal::from_pattern(PrimeField::new(q)?, c))
        .collect()
}

/// Paving of `X(E_j P(n1, n2, n2)) ∩ X_γ` by induction on `j`: the part
/// outside `X(E_{j'} P)`, with `j'` the next longer alternating word, is
/// paved greedily by criterion-approved cells, down to words of length
/// `2 n2`. Every `γ` in `gammas` is used for verification over its field.
pub fn truncated_paving(
    gammas: &[RegularDiagonal],
    j: &CrystalWord,
    budget: u128,
) -> Result<PavingPlan> {
    let Some(first) = gammas.first() else {
        return Err(Error::InvalidInput("need at least one γ".into()));
    };
    let c = first.c;
    if gammas.iter().any(|g| g.c != c) {
        return Err(Error::PatternMismatch(
            "all γ must share one valuation pattern".into(),
        ));
    }
    let (n1, n2) = family_parameters(&c)?;
    let p = MVPolytope::new(LusztigDatum::w121([n1, n2, n2]), [0, 0, 0]);
    let mut chain = Vec::new();
    let mut word = j.clone();
    loop {
        match p.apply_crystal_word(&word) {
            Some(q) => chain.push(q.family().clone()),
            None if chain.is_empty() => return Ok(PavingPlan::empty()),
            None => {
                return Err(Error::PavingVerificationFailed(format!(
                    "E_{word} P vanishes inside the chain"
                )))
            }
        }
        if word.len() >= 2 * n2 as usize {
            break;
        }
        word = word.prepend_alternating();
    }
    let mut pts = Vec::new();
    for g in gammas {
        let t = SpringerTruncation {
            polytope: chain[0].clone(),
            gamma: g.clone(),
        };
        pts.push((g.field().p(), t.points(budget)?));
    }
    let mut steps = Vec::new();
    for k in 0..chain.len() {
        let inner = chain.get(k + 1).cloned();
        let part: Vec<(u32, Vec<GrassPoint>)> = pts
            .iter()
            .map(|(q, xs)| {
                let keep = xs
                    .iter()
                    .filter(|x| x.member(&chain[k]) && inner.as_ref().is_none_or(|i| !x.member(i)))
                    .cloned()
                    .collect();
                (*q, keep)
            })
            .collect();
        let sub = greedy_paving_with(&chain[k], part, &springer_rules(c, inner))?;
        steps.extend(sub.steps);
    }
    let mut plan = PavingPlan::new(steps);
    for (q, xs) in &pts {
        let covered: u64 = plan
            .steps
            .iter()
            .flat_map(|s| s.counts.iter())
            .filter(|x| x.0 == *q)
            .map(|x| x.1)
            .sum();
        plan.record(*q, xs.len() as u64, covered == xs.len() as u64);
    }
    plan.check()?;
    Ok(plan)
}

/// Whether every `F_q`-point of `X(f)` lies in `X_γ`.
pub fn springer_condition_automatic(
    f: &GTFamily,
    gamma: &RegularDiagonal,
    budget: u128,
) -> Result<bool> {
    let pts = enumerate_points(f, gamma.field(), budget)?;
    for x in &pts {
        if !member_springer(x, gamma)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adjacent-vertex gaps `H_B(x) - H_{B'}(x)` of `Ec(x)`, as multiples of
/// the separating coroot, indexed by the edge `b — b+1`.
pub fn vertex_gaps(x: &GrassPoint) -> Result<[i64; 6]> {
    Ok(x.ec()?.edge_lengths())
}

/// `val(α(γ))` for the root separating Borels `b` and `b + 1`.
pub fn separating_valuations(c: &Pattern) -> [u32; 6] {
    std::array::from_fn(|b| {
        let a = crate::rootdata::separating_root(b);
        pattern_at(c, a.i, a.j)
    })
}
