//! Points of the affine Grassmannian `G(F)/K` for `G = GL3`.
//!
//! Every coset has a unique lower triangular representative `h` with
//! `h_jj = ε^{d_j}` and below-diagonal entries Laurent polynomials whose
//! exponents in row `i` stay below `d_i`. All predicates are computed on
//! that representative.

pub mod bfz;
mod matrix;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentSeries, PrimeField, Val, DEFAULT_PREC};
use crate::rootdata::{pairing, total, ChamberWeight, Coweight, GTFamily, Root, Support};

pub use matrix::{random_k, LaurentMatrix};

/// Default cap on the number of candidate representatives examined by
/// [`enumerate_points`].
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// Below-diagonal positions in storage order.
const LOW: [(usize, usize); 3] = [(1, 0), (2, 0), (2, 1)];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassPoint {
    d: Coweight,
    /// `h10, h20, h21`.
    low: [LaurentSeries; 3],
}

impl GrassPoint {
    /// Builds a point from canonical data, checking the normal form.
    pub fn from_canonical(d: Coweight, low: [LaurentSeries; 3]) -> Result<Self> {
        for (k, &(i, _)) in LOW.iter().enumerate() {
            let x = &low[k];
            if !x.is_exact() {
                return Err(Error::InvalidInput(
                    "canonical entries must be exact".into(),
                ));
            }
            if let Some(top) = x.degree() {
                if top >= d[i] {
                    return Err(Error::InvalidInput(format!(
                        "entry in row {} reaches ε^{top}",
                        i + 1
                    )));
                }
            }
        }
        Ok(GrassPoint { d, low })
    }

    /// `ε^ν K`.
    pub fn torus(field: PrimeField, nu: Coweight) -> Self {
        let z = LaurentSeries::zero(field);
        GrassPoint {
            d: nu,
            low: [z.clone(), z.clone(), z],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.low[0].field()
    }

    /// Diagonal exponents; this is the vertex `H_{w0 B0}(x)`.
    pub fn d(&self) -> Coweight {
        self.d
    }

    pub fn nu(&self) -> i64 {
        total(self.d)
    }

    pub fn entry(&self, i: usize, j: usize) -> LaurentSeries {
        let f = self.field();
        if i == j {
            LaurentSeries::monomial(f, 1, self.d[i])
        } else if i < j {
            LaurentSeries::zero(f)
        } else {
            self.low[LOW.iter().position(|&p| p == (i, j)).unwrap()].clone()
        }
    }

    /// The canonical representative.
    pub fn h(&self) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.field(), |i, j| self.entry(i, j))
    }

    /// `D_S(x)`, via Jacobi's identity: the minimum valuation of the minors
    /// of `h` on rows `S^c`, minus `ν`.
    pub fn d_value(&self, s: ChamberWeight) -> i64 {
        let h = self.h();
        d_value_of(&h, s, self.nu()).expect("canonical representatives are exact")
    }

    /// The six values `D_S`, indexed like [`ChamberWeight::ALL`].
    pub fn d_profile(&self) -> Support {
        let h = self.h();
        let nu = self.nu();
        ChamberWeight::ALL.map(|s| d_value_of(&h, s, nu).expect("exact"))
    }

    /// Support numbers `M_S = -D_S` of `Ec(x)`.
    pub fn support(&self) -> Support {
        self.d_profile().map(|v| -v)
    }

    /// The polytope `Ec(x)` as a vertex family; vertex `b` is `H_{B_b}(x)`.
    pub fn ec(&self) -> Result<GTFamily> {
        GTFamily::from_support(self.support(), self.nu())
    }

    /// Membership in the truncation `X(f)`.
    pub fn member(&self, f: &GTFamily) -> bool {
        self.nu() == f.nu() && {
            let m = self.support();
            (0..6).all(|k| m[k] <= f.support()[k])
        }
    }

    /// `ε^χ·x`.
    pub fn translate(&self, chi: Coweight) -> GrassPoint {
        let low = std::array::from_fn(|k| self.low[k].shift(chi[LOW[k].0]));
        GrassPoint {
            d: crate::rootdata::add(self.d, chi),
            low,
        }
    }

    /// Left multiplication by `g`, re-canonicalized.
    pub fn left_mul(&self, g: &LaurentMatrix) -> Result<GrassPoint> {
        canonicalize_point(&g.mul(&self.h()))
    }

    pub fn to_json(&self) -> PointJson {
        let h = self.h();
        PointJson {
            d: self.d,
            nu: self.nu(),
            h: std::array::from_fn(|i| std::array::from_fn(|j| h.get(i, j).to_json())),
        }
    }
}

impl fmt::Display for GrassPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.h())
    }
}

impl Serialize for GrassPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointJson {
    pub d: Coweight,
    pub nu: i64,
    pub h: [[crate::laurent::SeriesJson; 3]; 3],
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    match k {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        3 => vec![vec![0, 1, 2]],
        _ => unreachable!(),
    }
}

/// `D_S(gK)` for any representative `g` with `val det g = nu`.
pub fn d_value_of(g: &LaurentMatrix, s: ChamberWeight, nu: i64) -> Result<i64> {
    let rows = s.complement().elements();
    let mut best = Val::Infinite;
    let mut unknown_floor = Val::Infinite;
    for cols in subsets(rows.len()) {
        let m = g.minor(&rows, &cols);
        match m.val() {
            Ok(v) => best = best.min(v),
            Err(_) => unknown_floor = unknown_floor.min(m.val_lower_bound()),
        }
    }
    if unknown_floor < best {
        return Err(Error::PrecisionLoss("minor valuation undetermined".into()));
    }
    match best {
        Val::Finite(v) => Ok(v - nu),
        Val::Infinite => Err(Error::SingularMatrix),
    }
}

/// `D_S` straight from the definition: minimum valuation of the minors of
/// `g⁻¹` with columns `S` over all row sets. Used to cross-check Jacobi.
pub fn d_value_by_inverse(g: &LaurentMatrix, s: ChamberWeight) -> Result<i64> {
    let gi = g.inverse()?;
    let cols = s.elements();
    let mut best = Val::Infinite;
    for rows in subsets(cols.len()) {
        let m = gi.minor(&rows, &cols);
        if let Ok(v) = m.val() {
            best = best.min(v);
        }
    }
    best.finite().ok_or(Error::SingularMatrix)
}

/// `Δ_S(g)`: the minor on the first `|S|` rows and the columns `S`.
pub fn delta(g: &LaurentMatrix, s: ChamberWeight) -> LaurentSeries {
    let rows: Vec<usize> = (0..s.level()).collect();
    g.minor(&rows, &s.elements())
}

/// Normal form of `gK` with the default working precision.
pub fn canonicalize_point(g: &LaurentMatrix) -> Result<GrassPoint> {
    canonicalize_point_prec(g, DEFAULT_PREC)
}

/// Normal form of `gK`, using right column operations over `O` only.
/// `prec` bounds the precision of the unit inverses taken on the way.
pub fn canonicalize_point_prec(g: &LaurentMatrix, prec: i64) -> Result<GrassPoint> {
    let f = g.field();
    let mut m: [[LaurentSeries; 3]; 3] = g.entries().clone();
    let mut d = [0i64; 3];
    for r in 0..3 {
        let mut best: Option<(i64, usize)> = None;
        let mut floor = Val::Infinite;
        for c in r..3 {
            match m[r][c].val() {
                Ok(Val::Finite(v)) => {
                    if best.is_none_or(|(bv, _)| v < bv) {
                        best = Some((v, c));
                    }
                }
                Ok(Val::Infinite) => {}
                Err(_) => floor = floor.min(m[r][c].val_lower_bound()),
            }
        }
        let (v, c) = match best {
            Some(b) => b,
            None if floor == Val::Infinite => return Err(Error::SingularMatrix),
            None => {
                return Err(Error::PrecisionLoss(format!(
                    "row {} vanishes to precision",
                    r + 1
                )))
            }
        };
        if floor < Val::Finite(v) {
            return Err(Error::PrecisionLoss(format!(
                "pivot in row {} undetermined",
                r + 1
            )));
        }
        for row in m.iter_mut() {
            row.swap(r, c);
        }
        d[r] = v;
        // unit u with m[r][r] = u ε^v
        let unit = m[r][r].shift(-v);
        let uinv = unit.inv_prec(prec)?;
        for row in m.iter_mut().skip(r + 1) {
            row[r] = &row[r] * &uinv;
        }
        m[r][r] = LaurentSeries::monomial(f, 1, v);
        for c2 in r + 1..3 {
            if m[r][c2].is_exact_zero() {
                continue;
            }
            let q = m[r][c2].shift(-v);
            for row in m.iter_mut().skip(r + 1) {
                let t = &q * &row[r];
                row[c2] = &row[c2] - &t;
            }
            m[r][c2] = LaurentSeries::zero(f);
        }
    }
    for i in 1..3 {
        for j in 0..i {
            let low = m[i][j].polynomial_part_below(d[i])?;
            let high = &m[i][j] - &low;
            if !high.is_exact_zero() {
                let a = high.shift(-d[i]);
                for k in i + 1..3 {
                    let t = &a * &m[k][i];
                    m[k][j] = &m[k][j] - &t;
                }
            }
            m[i][j] = low;
        }
    }
    Ok(GrassPoint {
        d,
        low: LOW.map(|(i, j)| m[i][j].clone()),
    })
}

/// Smallest working precision accepted for computations on `X(f)`: twice
/// the perimeter of `f`, and at least 16.
pub fn required_precision(f: &GTFamily) -> i64 {
    (2 * f.edge_lengths().iter().sum::<i64>()).max(16)
}

pub fn check_precision(f: &GTFamily, prec: i64) -> Result<()> {
    let need = required_precision(f);
    if prec < need {
        return Err(Error::PrecisionLoss(format!(
            "working precision {prec} is below the required {need}"
        )));
    }
    Ok(())
}

/// Per-row exponent floor `ν - M_{{i}^c}` for points of `X(f)`.
pub fn row_floors(f: &GTFamily) -> [i64; 3] {
    std::array::from_fn(|i| f.nu() - f.m(ChamberWeight(0b111 & !(1 << i))))
}

/// Number of candidate representatives [`enumerate_points`] would examine.
pub fn enumeration_size(f: &GTFamily, p: u32) -> u128 {
    let lo = row_floors(f);
    f.lattice_points()
        .iter()
        .map(|d| {
            let e = (d[1] - lo[1]).max(0) + 2 * (d[2] - lo[2]).max(0);
            (p as u128).saturating_pow(e as u32)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// All `F_p`-points of `X(f)`, sorted.
pub fn enumerate_points(f: &GTFamily, field: PrimeField, budget: u128) -> Result<Vec<GrassPoint>> {
    let needed = enumeration_size(f, field.p());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let lo = row_floors(f);
    let jobs: Vec<(Coweight, u64)> = f
        .lattice_points()
        .into_iter()
        .flat_map(|d| {
            let w1 = (d[1] - lo[1]).max(0) as u32;
            (0..(field.p() as u64).pow(w1)).map(move |a| (d, a))
        })
        .collect();
    let mut out: Vec<GrassPoint> = jobs
        .par_iter()
        .flat_map_iter(|&(d, a)| {
            let w1 = (d[1] - lo[1]).max(0) as usize;
            let w2 = (d[2] - lo[2]).max(0) as usize;
            let h10 = poly_from_index(field, lo[1], w1, a);
            let count = (field.p() as u64).pow(2 * w2 as u32);
            (0..count).filter_map(move |b| {
                let pp = (field.p() as u64).pow(w2 as u32);
                let h20 = poly_from_index(field, lo[2], w2, b % pp);
                let h21 = poly_from_index(field, lo[2], w2, b / pp);
                let x = GrassPoint {
                    d,
                    low: [h10.clone(), h20, h21],
                };
                x.member(f).then_some(x)
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The polynomial `Σ c_k ε^{lo+k}` whose base-`p` digits are `idx`.
pub fn poly_from_index(field: PrimeField, lo: i64, width: usize, mut idx: u64) -> LaurentSeries {
    let p = field.p() as u64;
    let mut coeffs = Vec::with_capacity(width);
    for _ in 0..width {
        coeffs.push((idx % p) as u32);
        idx /= p;
    }
    LaurentSeries::exact(field, lo, coeffs)
}

/// The point `x_α(c ε^m) ε^ν K` on a one-dimensional torus orbit.
pub fn curve_point(field: PrimeField, a: Root, c: u32, m: i64, nu: Coweight) -> Result<GrassPoint> {
    let x = LaurentMatrix::x_root(field, a, LaurentSeries::monomial(field, c, m));
    canonicalize_point(&x.mul(&LaurentMatrix::eps(field, nu)))
}

/// `⟨ν, S⟩ <= M_S` for every `S`, with matching component sums.
pub fn support_le(a: &Support, b: &Support) -> bool {
    (0..6).all(|k| a[k] <= b[k])
}

pub fn pairing_vec(nu: Coweight) -> Support {
    ChamberWeight::ALL.map(|s| pairing(nu, s))
}
