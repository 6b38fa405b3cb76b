//! Iwahori orbits `I_a ε^{λ'} K/K` intersected with Schubert varieties,
//! and the resulting paving of `121` MV cycles.

use serde::Serialize;

use super::cells::CellShape;
use super::{PavingPlan, PavingStep};
use crate::error::{Error, Result};
use crate::grass::{enumerate_points, GrassPoint};
use crate::laurent::PrimeField;
use crate::mvcomb::{LusztigDatum, MVPolytope, ReducedWord};
use crate::rootdata::{total, Coweight, GTFamily, Support};

/// Off-diagonal positions, lower triangle first.
const OFF_DIAGONAL: [(usize, usize); 6] = [(1, 0), (2, 0), (2, 1), (0, 1), (0, 2), (1, 2)];

/// Valuation bound of the `(i, j)` entry of `I_a = ε^a I ε^{-a}`.
pub fn iwahori_threshold(a: Coweight, i: usize, j: usize) -> i64 {
    if i > j {
        a[i] - a[j] + 1
    } else {
        a[i] - a[j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SchubertShape {
    /// `λ1 >= λ2 = λ3`: entries of `g` bounded below by `λ3`.
    Lower,
    /// `λ1 = λ2 >= λ3`: entries of `g⁻¹` bounded below by `-λ1`.
    Upper,
}

pub fn schubert_shape(lambda: Coweight) -> Result<SchubertShape> {
    if lambda[0] >= lambda[1] && lambda[1] == lambda[2] {
        Ok(SchubertShape::Lower)
    } else if lambda[0] == lambda[1] && lambda[1] >= lambda[2] {
        Ok(SchubertShape::Upper)
    } else {
        Err(Error::ShapeMismatch(lambda))
    }
}

/// `Sch(λ) ∩ I_a ε^{λ'} K/K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IwahoriCell {
    pub a: Coweight,
    pub lambda: Coweight,
    pub lambda_prime: Coweight,
    pub shape: SchubertShape,
    /// Thresholds `m_ij`; the diagonal is unused.
    pub m: [[i64; 3]; 3],
    pub dim: usize,
}

pub fn iwahori_cell(a: Coweight, lambda: Coweight, lambda_prime: Coweight) -> Result<IwahoriCell> {
    let shape = schubert_shape(lambda)?;
    if !GTFamily::weyl_polytope(lambda).contains_point(lambda_prime) {
        return Err(Error::InvalidInput(format!(
            "{lambda_prime:?} is not a fixed point of Sch({lambda:?})"
        )));
    }
    let mut m = [[0i64; 3]; 3];
    for (i, j) in OFF_DIAGONAL {
        let extra = match shape {
            SchubertShape::Lower => lambda[2] - lambda_prime[j],
            SchubertShape::Upper => -lambda[0] + lambda_prime[i],
        };
        m[i][j] = iwahori_threshold(a, i, j).max(extra);
    }
    let dim = free_dim(lambda_prime, &m);
    Ok(IwahoriCell {
        a,
        lambda,
        lambda_prime,
        shape,
        m,
        dim,
    })
}

fn free_dim(lp: Coweight, m: &[[i64; 3]; 3]) -> usize {
    OFF_DIAGONAL
        .iter()
        .map(|&(i, j)| (lp[i] - lp[j] - m[i][j]).max(0) as usize)
        .sum()
}

/// The orbit `I_a ε^{λ'} K/K` as a product of root subgroups.
pub fn iwahori_orbit(a: Coweight, lambda_prime: Coweight) -> CellShape {
    CellShape {
        lambda: lambda_prime,
        entries: OFF_DIAGONAL
            .iter()
            .map(|&(i, j)| (i, j, iwahori_threshold(a, i, j)))
            .collect(),
        inverted: false,
        factored: true,
    }
}

impl IwahoriCell {
    /// `F_p`-points: the orbit filtered by the Schubert condition.
    pub fn points(&self, field: PrimeField) -> Result<Vec<GrassPoint>> {
        let sch = GTFamily::weyl_polytope(self.lambda);
        let pts = iwahori_orbit(self.a, self.lambda_prime).points(field, 0)?;
        Ok(pts.into_iter().filter(|x| x.member(&sch)).collect())
    }
}

/// `X(P(n)) = Sch(λ1) ∩ ε^a Sch(λ2)` for a `121` datum in normal position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MVIntersection {
    pub lambda1: Coweight,
    pub a: Coweight,
    pub lambda2: Coweight,
}

impl MVIntersection {
    /// Componentwise minimum of the two support vectors.
    pub fn support(&self) -> Support {
        let s1 = GTFamily::weyl_polytope(self.lambda1).support();
        let s2 = GTFamily::weyl_polytope(self.lambda2)
            .translate(self.a)
            .support();
        std::array::from_fn(|k| s1[k].min(s2[k]))
    }

    pub fn family(&self) -> Result<GTFamily> {
        GTFamily::from_support(self.support(), total(self.lambda1))
    }

    pub fn contains(&self, x: &GrassPoint) -> bool {
        x.member(&GTFamily::weyl_polytope(self.lambda1))
            && x.member(&GTFamily::weyl_polytope(self.lambda2).translate(self.a))
    }
}

pub fn mv_as_intersection(d: &LusztigDatum) -> Result<MVIntersection> {
    if !d.is_normal() {
        return Err(Error::NormalPositionRequired(d.n));
    }
    let [n1, n2, n3] = d.ni();
    Ok(MVIntersection {
        lambda1: [n1 + n2, -n2, -n2],
        a: [n1 - n3, n1 - n3, 0],
        lambda2: [n3, n3, -n1 - n2],
    })
}

/// Thresholds of the cell over `λ'` in the paving of `X(P(n))`.
pub fn intersection_thresholds(ix: &MVIntersection, lambda_prime: Coweight) -> [[i64; 3]; 3] {
    let mut m = [[0i64; 3]; 3];
    for (i, j) in OFF_DIAGONAL {
        let first = ix.lambda1[2] - lambda_prime[j];
        let second = -ix.lambda2[0] + lambda_prime[i] - ix.a[j];
        m[i][j] = iwahori_threshold(ix.a, i, j).max(first).max(second);
    }
    m
}

/// One cell per fixed point: `X(P(n)) ∩ I_a ε^{λ'} K/K`, checked by
/// counting points over each `q` in `qs`.
pub fn paving_121(d: &LusztigDatum, qs: &[u32], budget: u128) -> Result<PavingPlan> {
    let d = d.in_word(ReducedWord::W121);
    let ix = mv_as_intersection(&d)?;
    let poly = MVPolytope::new(d, [0, 0, 0]);
    let f = poly.family().clone();
    let mut steps: Vec<PavingStep> = f
        .lattice_points()
        .into_iter()
        .map(|lp| PavingStep {
            vertex: lp,
            borel: None,
            dim: free_dim(lp, &intersection_thresholds(&ix, lp)),
            polytope: f.clone(),
            counts: Vec::new(),
        })
        .collect();
    steps.sort_by(|x, y| y.dim.cmp(&x.dim).then(x.vertex.cmp(&y.vertex)));
    let mut plan = PavingPlan::new(steps);
    for &q in qs {
        let field = PrimeField::new(q)?;
        let all = enumerate_points(&f, field, budget)?;
        let mut covered = 0usize;
        for step in plan.steps.iter_mut() {
            let cell: Vec<GrassPoint> = iwahori_orbit(ix.a, step.vertex)
                .points(field, 0)?
                .into_iter()
                .filter(|x| ix.contains(x))
                .collect();
            if cell.iter().any(|x| all.binary_search(x).is_err()) {
                return Err(Error::PavingVerificationFailed(format!(
                    "cell over {:?} leaves X(P) at q={q}",
                    step.vertex
                )));
            }
            covered += cell.len();
            step.counts.push((q, cell.len() as u64));
        }
        plan.record(q, all.len() as u64, covered == all.len());
    }
    plan.check()?;
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::DEFAULT_BUDGET;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn projective_plane_cells() {
        for lambda in [[1, 0, 0], [1, 1, 0]] {
            let sch = GTFamily::weyl_polytope(lambda);
            let mut dims = Vec::new();
            let mut total = 0;
            for lp in sch.lattice_points() {
                let c = iwahori_cell([0, 0, 0], lambda, lp).unwrap();
                let pts = c.points(f(2)).unwrap();
                assert_eq!(pts.len(), 1 << c.dim);
                total += pts.len();
                dims.push(c.dim);
            }
            dims.sort();
            assert_eq!(dims, vec![0, 1, 2]);
            assert_eq!(
                total,
                enumerate_points(&sch, f(2), DEFAULT_BUDGET).unwrap().len()
            );
        }
    }

    #[test]
    fn shape_mismatch() {
        assert_eq!(
            iwahori_cell([0; 3], [2, 1, 0], [2, 1, 0]),
            Err(Error::ShapeMismatch([2, 1, 0]))
        );
    }

    #[test]
    fn intersection_examples() {
        let ix = mv_as_intersection(&LusztigDatum::w121([1, 0, 0])).unwrap();
        assert_eq!(
            (ix.lambda1, ix.a, ix.lambda2),
            ([1, 0, 0], [1, 1, 0], [0, 0, -1])
        );
        let ix = mv_as_intersection(&LusztigDatum::w121([2, 1, 1])).unwrap();
        assert_eq!(
            (ix.lambda1, ix.a, ix.lambda2),
            ([3, -1, -1], [1, 1, 0], [1, 1, -3])
        );
        for n in [[1, 0, 0], [1, 0, 1], [2, 1, 1], [2, 0, 1]] {
            let d = LusztigDatum::w121(n);
            let ix = mv_as_intersection(&d).unwrap();
            assert_eq!(
                &ix.family().unwrap(),
                MVPolytope::new(d, [0, 0, 0]).family(),
                "{n:?}"
            );
        }
    }

    #[test]
    fn small_pavings() {
        let plan = paving_121(&LusztigDatum::w121([1, 0, 0]), &[2, 3], DEFAULT_BUDGET).unwrap();
        assert_eq!(plan.dims(), vec![1, 0]);
        let plan = paving_121(&LusztigDatum::w121([0, 0, 0]), &[2, 3], DEFAULT_BUDGET).unwrap();
        assert_eq!(plan.dims(), vec![0]);
        paving_121(&LusztigDatum::w121([1, 0, 1]), &[2, 3], DEFAULT_BUDGET).unwrap();
        paving_121(&LusztigDatum::w121([2, 1, 1]), &[2, 3], DEFAULT_BUDGET).unwrap();
    }
}
