//! The acceptance suite: ten checks, each returning a deterministic report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::grass::bfz::{random_t, transition_121_to_212, y_inverse_point};
use crate::grass::{
    canonicalize_point, enumerate_points, random_k, GrassPoint, LaurentMatrix, DEFAULT_BUDGET,
};
use crate::laurent::{LaurentSeries, PrimeField, Val};
use crate::moment::{min_formal_poincare, skeleton, DEFAULT_GRAPH_BUDGET};
use crate::mvcomb::{canonicalize, CrystalWord, LusztigDatum, MVPolytope, ReducedWord};
use crate::paving::{contracting_cell, greedy_paving, paving_121, DEFAULT_VERIFY_Q};
use crate::rootdata::{Coweight, GTFamily};
use crate::springer::{
    criterion, criterion_oracle, gammas_for, is_ultrametric, springer_condition_automatic,
    springer_dim, truncated_paving, RegularDiagonal,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Cases examined.
    pub cases: u64,
    pub detail: String,
    /// First failing instance, if any.
    pub witness: Option<String>,
}

impl CriterionReport {
    fn new(id: u8, name: &'static str) -> Self {
        CriterionReport {
            id,
            name,
            passed: true,
            cases: 0,
            detail: String::new(),
            witness: None,
        }
    }

    fn fail(&mut self, w: String) {
        self.passed = false;
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }
}

pub const CRITERIA: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

pub fn run(id: u8, seed: u64) -> Result<CriterionReport> {
    match id {
        1 => criterion_1(),
        2 => criterion_2(seed),
        3 => criterion_3(seed),
        4 => criterion_4(seed),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        _ => Err(crate::Error::InvalidInput(format!("no criterion {id}"))),
    }
}

pub fn run_all(seed: u64) -> Result<Vec<CriterionReport>> {
    CRITERIA.iter().map(|&id| run(id, seed)).collect()
}

fn cube(hi: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=hi {
        for b in 0..=hi {
            for c in 0..=hi {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// `121` data in `[0, hi]³` with `n1 >= n3 >= n2`.
pub fn normal_data(hi: u32) -> Vec<[u32; 3]> {
    cube(hi)
        .into_iter()
        .filter(|&[a, b, c]| a >= c && c >= b)
        .collect()
}

pub fn ultrametric_patterns(hi: u32) -> Vec<[u32; 3]> {
    cube(hi).into_iter().filter(is_ultrametric).collect()
}

/// Braid moves are involutive and preserve dimension and coweight.
pub fn criterion_1() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(1, "braid involution and invariants");
    for word in [ReducedWord::W121, ReducedWord::W212] {
        for n in cube(10) {
            r.cases += 1;
            let d = LusztigDatum::new(word, n);
            let b = d.braid();
            if b.braid() != d || b.dimension() != d.dimension() || b.coweight() != d.coweight() {
                r.fail(format!("{d}"));
            }
        }
    }
    r.detail = format!("{} data checked", r.cases);
    Ok(r)
}

fn val_u(s: &LaurentSeries) -> Option<i64> {
    match s.val() {
        Ok(Val::Finite(v)) => Some(v),
        _ => None,
    }
}

/// Valuations of the field-level transition follow the tropical braid move.
pub fn criterion_2(seed: u64) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(2, "tropical transition map");
    let field = PrimeField::new(10007)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
    let (mut generic, mut degenerate) = (0u64, 0u64);
    for k in 0..1000 {
        let mut n = [0u32; 3].map(|_| rng.gen_range(0..=4));
        let mut t = random_t(field, n, 4, &mut rng);
        if k % 10 == 0 {
            n[2] = n[0];
            let tail = LaurentSeries::random_poly_with_val(field, n[0] as i64 + 1, 3, &mut rng);
            t[2] = &(-&t[0]) + &tail;
        }
        r.cases += 1;
        let s = &t[0] + &t[2];
        let sv = val_u(&s).unwrap_or(i64::MAX);
        let m = n[0].min(n[2]) as i64;
        if sv == m {
            generic += 1;
            let tp = transition_121_to_212(&t)?;
            let got: Vec<Option<i64>> = tp.iter().map(val_u).collect();
            let want = LusztigDatum::w121(n)
                .braid()
                .n
                .map(|x| Some(x as i64))
                .to_vec();
            if got != want {
                r.fail(format!("n={n:?}: valuations {got:?}, braid {want:?}"));
            }
        } else {
            degenerate += 1;
            if n[0] != n[2] {
                r.fail(format!("n={n:?}: cancellation with val t1 != val t3"));
            }
        }
    }
    r.detail = format!(
        "{generic} generic samples, {degenerate} with cancellation (all at val t1 = val t3)"
    );
    Ok(r)
}

/// `[y(t)⁻¹]` lies in `X(P(n))` and generically has polytope `P(n)`.
pub fn criterion_3(seed: u64) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(3, "generic points of MV cycles");
    let field = PrimeField::new(10007)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    let (mut inside, mut exact) = (0u64, 0u64);
    for word in [ReducedWord::W121, ReducedWord::W212] {
        for n in cube(2) {
            let p = MVPolytope::with_top(LusztigDatum::new(word, n), [0, 0, 0]);
            for _ in 0..20 {
                r.cases += 1;
                let t = random_t(field, n, 3, &mut rng);
                let x = y_inverse_point(word, &t)?;
                if x.member(p.family()) {
                    inside += 1;
                } else {
                    r.fail(format!("({word}){n:?}: point outside X(P)"));
                }
                if &x.ec()? == p.family() {
                    exact += 1;
                }
            }
        }
    }
    let ratio = exact as f64 / r.cases as f64;
    if ratio < 0.95 {
        r.fail(format!("generic fraction {ratio:.3} < 0.95"));
    }
    r.detail = format!(
        "{inside}/{} inside, {exact}/{} with Ec = P",
        r.cases, r.cases
    );
    Ok(r)
}

/// `Ec(x)` is a generalized MV polytope for random points of a Schubert
/// variety.
pub fn criterion_4(seed: u64) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(4, "Ec(x) is MV up to W");
    let field = PrimeField::new(10007)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let p = MVPolytope::new(LusztigDatum::w121([2, 1, 1]), [0, 0, 0]);
    let dominant = p
        .family()
        .vertices()
        .iter()
        .map(|v| {
            let mut d = *v;
            d.sort_unstable_by(|a, b| b.cmp(a));
            d
        })
        .max()
        .unwrap_or([0; 3]);
    let sch = GTFamily::weyl_polytope(dominant);
    let fixed = sch.lattice_points();
    for k in 0..200 {
        r.cases += 1;
        let nu: Coweight = if k % 2 == 0 {
            dominant
        } else {
            fixed[rng.gen_range(0..fixed.len())]
        };
        let g = random_k(field, 3, &mut rng).mul(&LaurentMatrix::eps(field, nu));
        let x = canonicalize_point(&g)?;
        if !x.member(&sch) {
            r.fail(format!("sample {k} left Sch({dominant:?})"));
            continue;
        }
        if canonicalize(&x.ec()?).is_err() {
            r.fail(format!("sample {k}: {}", x));
        }
    }
    r.detail = format!("{} samples in Sch({dominant:?})", r.cases);
    Ok(r)
}

/// Contracting cells have `2^{n1+2n2+n3}` points over `F_2` and equal the
/// contracting sets.
pub fn criterion_5() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(5, "contracting cells");
    let field = PrimeField::new(2)?;
    for n in normal_data(2) {
        let p = MVPolytope::new(LusztigDatum::w121(n), [0, 0, 0]);
        let pts = enumerate_points(p.family(), field, DEFAULT_BUDGET)?;
        let ecs: Vec<GTFamily> = pts.iter().map(|x| x.ec()).collect::<Result<_>>()?;
        let dim = n[0] + 2 * n[1] + n[2];
        for b in 0..6 {
            r.cases += 1;
            let v = p.family().vertex(b);
            let set: Vec<GrassPoint> = pts
                .iter()
                .zip(&ecs)
                .filter(|(_, e)| e.vertex(b) == v)
                .map(|(x, _)| x.clone())
                .collect();
            let cell = contracting_cell(&p, b)?.points(field, 0)?;
            if set.len() as u64 != 1u64 << dim || cell != set {
                r.fail(format!(
                    "n={n:?} b={b}: |set|={}, |cell|={}",
                    set.len(),
                    cell.len()
                ));
            }
        }
    }
    r.detail = format!("{} (polytope, Borel) pairs", r.cases);
    Ok(r)
}

pub fn criterion_6_polytopes() -> Vec<(String, Option<LusztigDatum>, GTFamily)> {
    let mut out: Vec<(String, Option<LusztigDatum>, GTFamily)> = [
        [1, 0, 0],
        [0, 0, 1],
        [1, 0, 1],
        [2, 1, 1],
        [1, 1, 0],
        [2, 0, 1],
    ]
    .into_iter()
    .map(|n| {
        let d = LusztigDatum::w121(n);
        (
            format!("P121{n:?}"),
            Some(d),
            MVPolytope::new(d, [0, 0, 0]).family().clone(),
        )
    })
    .collect();
    for l in [[1, 0, 0], [1, 1, 0]] {
        out.push((format!("W{l:?}"), None, GTFamily::weyl_polytope(l)));
    }
    out
}

/// Greedy pavings verify, and agree with the Iwahori paving and with the
/// minimal formal Betti numbers.
pub fn criterion_6() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(6, "pavings and point counts");
    let mut lines = Vec::new();
    for (name, d, f) in criterion_6_polytopes() {
        r.cases += 1;
        let g = match greedy_paving(&f, &DEFAULT_VERIFY_Q, DEFAULT_BUDGET) {
            Ok(g) => g,
            Err(e) => {
                r.fail(format!("{name}: {e}"));
                continue;
            }
        };
        let poly = g.poincare();
        let mut line = format!("{name}: {poly}");
        if let Some(d) = d.filter(|d| d.is_normal()) {
            let i = paving_121(&d, &DEFAULT_VERIFY_Q, DEFAULT_BUDGET)?;
            if i.poincare() != poly {
                r.fail(format!("{name}: Iwahori paving gives {}", i.poincare()));
            }
            line.push_str(" iwahori=ok");
        }
        let sk = skeleton(&f)?;
        if sk.vertices.len() <= 12 {
            let (m, _) = min_formal_poincare(&sk, DEFAULT_GRAPH_BUDGET)?;
            if m != poly {
                r.fail(format!("{name}: minimal formal Betti numbers {m}"));
            }
            line.push_str(" min=ok");
        }
        lines.push(line);
    }
    r.detail = lines.join("; ");
    Ok(r)
}

/// The criterion for `C_B(P) ∩ X_γ` to be affine matches brute force.
pub fn criterion_7() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(7, "affine-cell criterion vs brute force");
    let mut by_q = [0u64; 2];
    for n in normal_data(2) {
        let p = MVPolytope::new(LusztigDatum::w121(n), [0, 0, 0]);
        for c in ultrametric_patterns(3) {
            let all_equal = c[0] == c[1] && c[1] == c[2];
            let mut qs = vec![if all_equal { 3 } else { 2 }];
            if n[0] == c[0] && !all_equal {
                qs.push(3);
            }
            for q in qs {
                let g = RegularDiagonal::from_pattern(PrimeField::new(q)?, c)?;
                for b in 0..6 {
                    r.cases += 1;
                    by_q[usize::from(q == 3)] += 1;
                    let a = criterion(&p, b, &c)?;
                    let o = criterion_oracle(&p, b, &g, DEFAULT_BUDGET)?;
                    if a.affine != o.affine {
                        r.fail(format!(
                            "n={n:?} c={c:?} b={b} q={q}: criterion {a:?}, oracle {o:?}"
                        ));
                    }
                }
            }
        }
    }
    r.detail = format!("{} cells at q=2, {} at q=3", by_q[0], by_q[1]);
    Ok(r)
}

pub const SPRINGER_FAMILY: [(u32, u32); 3] = [(1, 1), (2, 1), (2, 2)];

/// Verification primes for the pattern `(n1, n2, n2)`: when `n1 = n2` all
/// three root valuations agree, which needs `p >= 3`.
pub fn springer_primes(n1: u32, n2: u32) -> [u32; 2] {
    if n1 == n2 {
        [3, 5]
    } else {
        [2, 3]
    }
}

/// Truncated Springer fibres are paved, the shortest ones by the MV cycle
/// paving, and long words give nothing.
pub fn criterion_8() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(8, "truncated Springer fibre pavings");
    let mut lines = Vec::new();
    for (n1, n2) in SPRINGER_FAMILY {
        let c = [n1, n2, n2];
        let qs = springer_primes(n1, n2);
        let gammas = gammas_for(c, &qs)?;
        let p = MVPolytope::new(LusztigDatum::w121([n1, n2, n2]), [0, 0, 0]);
        for len in 0..=2 * n2 as usize {
            for j in CrystalWord::all_of_length(len) {
                r.cases += 1;
                match truncated_paving(&gammas, &j, DEFAULT_BUDGET) {
                    Ok(plan) if plan.is_verified() => {}
                    Ok(_) => r.fail(format!("({n1},{n2}) j={j}: unverified plan")),
                    Err(e) => r.fail(format!("({n1},{n2}) j={j}: {e}")),
                }
            }
        }
        let base_word = CrystalWord::all_of_length(2 * n2 as usize)
            .into_iter()
            .find(|w| w.letters().last() == Some(&1) || w.is_empty())
            .unwrap_or_default();
        let base = p.apply_crystal_word(&base_word).map(|q| q.family().clone());
        let target = MVPolytope::new(LusztigDatum::w121([n1 - n2, n2, 0]), [0, 0, 0]);
        match base {
            Some(q) if q.same_up_to_translation(target.family()) => {
                r.cases += 1;
                for g in &gammas {
                    if !springer_condition_automatic(&q, g, DEFAULT_BUDGET)? {
                        r.fail(format!(
                            "({n1},{n2}): Springer condition not automatic on E_{base_word} P"
                        ));
                    }
                }
                let plan = truncated_paving(&gammas, &base_word, DEFAULT_BUDGET)?;
                let mv = greedy_paving(target.family(), &qs, DEFAULT_BUDGET)?;
                if plan.poincare() != mv.poincare() {
                    r.fail(format!(
                        "({n1},{n2}): base plan {} vs MV paving {}",
                        plan.poincare(),
                        mv.poincare()
                    ));
                }
            }
            _ => r.fail(format!(
                "({n1},{n2}): E_{base_word} P is not P121({},{n2},0)",
                n1 - n2
            )),
        }
        for len in [2 * n2 as usize + 1, 2 * n2 as usize + 2] {
            for j in CrystalWord::all_of_length(len)
                .into_iter()
                .filter(|w| w.letters().last() == Some(&1))
            {
                r.cases += 1;
                let plan = truncated_paving(&gammas, &j, DEFAULT_BUDGET)?;
                if !plan.steps.is_empty() {
                    r.fail(format!("({n1},{n2}) j={j}: expected an empty plan"));
                }
            }
        }
        lines.push(format!("({n1},{n2}) at q={qs:?}: base word {base_word}"));
    }
    r.detail = lines.join("; ");
    Ok(r)
}

/// The top cell of the full truncation has dimension `springer_dim(γ)`.
pub fn criterion_9() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(9, "Springer fibre dimension");
    let mut lines = Vec::new();
    for (n1, n2) in SPRINGER_FAMILY {
        r.cases += 1;
        let gammas = gammas_for([n1, n2, n2], &springer_primes(n1, n2))?;
        let plan = truncated_paving(&gammas, &CrystalWord::empty(), DEFAULT_BUDGET)?;
        let top = plan.max_dim().unwrap_or(0) as u32;
        let want = springer_dim(&gammas[0]);
        if top != want || want != n1 + 2 * n2 {
            r.fail(format!("({n1},{n2}): top {top}, springer_dim {want}"));
        }
        lines.push(format!("({n1},{n2}): {top}"));
    }
    r.detail = lines.join("; ");
    Ok(r)
}

/// The number of Lusztig data of a given weight is `min(p, q) + 1`.
pub fn criterion_10() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(10, "Kostant partition count");
    for p in 0..=12u32 {
        for q in 0..=12u32 {
            r.cases += 1;
            let mu: Coweight = [-(p as i64), p as i64 - q as i64, q as i64];
            let mut partitions = 0;
            for a in 0..=p {
                for b in 0..=q {
                    for c in 0..=p.min(q) {
                        if a + c == p && b + c == q {
                            partitions += 1;
                        }
                    }
                }
            }
            let data = crate::mvcomb::lusztig_data_with_coweight(p, q);
            let ok_weights = data.iter().all(|&n| LusztigDatum::w121(n).coweight() == mu);
            if data.len() != partitions || partitions != p.min(q) as usize + 1 || !ok_weights {
                r.fail(format!(
                    "p={p} q={q}: {} data, {partitions} partitions",
                    data.len()
                ));
            }
        }
    }
    r.detail = format!("{} weights", r.cases);
    Ok(r)
}
