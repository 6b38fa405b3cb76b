//! Explicitly parametrized cells `M·ε^λ K/K`, where `M` has ones on the
//! diagonal and off-diagonal entries drawn from valuation windows.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grass::{canonicalize_point, poly_from_index, GrassPoint, LaurentMatrix};
use crate::laurent::{LaurentSeries, PrimeField};
use crate::mvcomb::{MVPolytope, ReducedWord};
use crate::rootdata::{Coweight, Root};

/// A cell `M ε^λ K/K` (or `M⁻¹ ε^λ K/K` when `inverted`), the entry at
/// `(i, j)` ranging over `p^m`. When `factored`, `M` is instead the
/// product of root subgroup elements `x_{ij}` in the listed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellShape {
    pub lambda: Coweight,
    pub entries: Vec<(usize, usize, i64)>,
    pub inverted: bool,
    pub factored: bool,
}

impl CellShape {
    /// Exponent window `[m, λ_i - λ_j + slack)` of each entry.
    pub fn windows(&self, slack: i64) -> Vec<(usize, usize, i64, usize)> {
        self.entries
            .iter()
            .map(|&(i, j, m)| {
                (
                    i,
                    j,
                    m,
                    (self.lambda[i] - self.lambda[j] + slack - m).max(0) as usize,
                )
            })
            .collect()
    }

    /// `Σ max(0, λ_i - λ_j - m)`: the number of free `F_q` coordinates.
    pub fn dim(&self) -> usize {
        self.windows(0).iter().map(|w| w.3).sum()
    }

    pub fn param_count(&self, p: u32, slack: i64) -> u128 {
        let e: usize = self.windows(slack).iter().map(|w| w.3).sum();
        (p as u128).saturating_pow(e as u32)
    }

    /// Calls `visit(g, g⁻¹)` for every parameter value, where `g` is the
    /// representative `M ε^λ` (exact).
    pub fn for_each_rep(
        &self,
        field: PrimeField,
        slack: i64,
        mut visit: impl FnMut(&LaurentMatrix, &LaurentMatrix),
    ) -> Result<()> {
        let w = self.windows(slack);
        let total: u128 = self.param_count(field.p(), slack);
        let total = u64::try_from(total).map_err(|_| Error::BudgetExceeded {
            needed: total,
            budget: u64::MAX as u128,
        })?;
        let eps = LaurentMatrix::eps(field, self.lambda);
        let eps_inv = LaurentMatrix::eps(field, self.lambda.map(|x| -x));
        let p = field.p() as u64;
        for mut idx in 0..total {
            let mut m = LaurentMatrix::identity(field);
            for &(i, j, lo, width) in &w {
                let pw = p.pow(width as u32);
                let s = poly_from_index(field, lo, width, idx % pw);
                idx /= pw;
                if self.factored {
                    m = m.mul(&LaurentMatrix::x_root(field, Root::new(i, j), s));
                } else {
                    m.set(i, j, s);
                }
            }
            let mi = unipotent_inverse(&m)?;
            let (a, ai) = if self.inverted { (mi, m) } else { (m, mi) };
            visit(&a.mul(&eps), &eps_inv.mul(&ai));
        }
        Ok(())
    }

    /// The distinct points of the cell over `F_p`, sorted.
    pub fn points(&self, field: PrimeField, slack: i64) -> Result<Vec<GrassPoint>> {
        let mut out = BTreeSet::new();
        let mut err = None;
        self.for_each_rep(field, slack, |g, _| match canonicalize_point(g) {
            Ok(x) => {
                out.insert(x);
            }
            Err(e) => err = Some(e),
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(out.into_iter().collect()),
        }
    }
}

/// Exact inverse of a matrix with determinant `1`.
pub fn unipotent_inverse(m: &LaurentMatrix) -> Result<LaurentMatrix> {
    let det = m.det();
    if det != LaurentSeries::one(m.field()) {
        return Err(Error::InvalidInput("expected determinant one".into()));
    }
    m.inverse()
}

/// The contracting cell `C_{B_b}(P)` of an MV polytope in normal position,
/// in explicit coordinates.
pub fn contracting_cell(p: &MVPolytope, b: usize) -> Result<CellShape> {
    let d = p.datum(ReducedWord::W121);
    if !d.is_normal() {
        return Err(Error::NormalPositionRequired(d.n));
    }
    let [n1, n2, n3] = d.ni();
    let top = p.family().vertex(0);
    let chi = [top[0] - n1, top[1], top[2] + n2];
    let (entries, inverted): (Vec<(usize, usize, i64)>, bool) = match b {
        0 => (vec![(0, 1, 0), (0, 2, n1 - n3), (1, 2, 0)], true),
        1 => (vec![(0, 1, 0), (0, 2, n1 - n3), (2, 1, 0)], false),
        2 => (vec![(0, 1, 0), (2, 0, n3 - n1), (2, 1, 0)], false),
        3 => (vec![(1, 0, 0), (2, 0, 0), (2, 1, n3 - n1)], false),
        4 => (vec![(1, 0, 0), (2, 0, 0), (1, 2, n1 - n3)], false),
        5 => (vec![(0, 2, 0), (1, 0, 0), (1, 2, n1 - n3)], true),
        _ => return Err(Error::InvalidInput(format!("Borel index {b} out of range"))),
    };
    let entries = entries
        .into_iter()
        .map(|(i, j, m)| (i, j, m + chi[i] - chi[j]))
        .collect();
    Ok(CellShape {
        lambda: p.family().vertex(b),
        entries,
        inverted,
        factored: false,
    })
}
