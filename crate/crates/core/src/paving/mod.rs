//! Pavings of truncated affine Grassmannians by affine cells, each one
//! checked by counting points over small prime fields.

mod cells;
mod greedy;
mod iwahori;

pub use cells::{contracting_cell, unipotent_inverse, CellShape};
pub use greedy::{greedy_paving, greedy_paving_with, maximal_subpolytopes_avoiding, GreedyRules};
pub use iwahori::{
    intersection_thresholds, iwahori_cell, iwahori_orbit, iwahori_threshold, mv_as_intersection,
    paving_121, schubert_shape, IwahoriCell, MVIntersection, SchubertShape,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moment::PoincarePoly;
use crate::rootdata::{Coweight, GTFamily};

/// Primes at which pavings are checked by default.
pub const DEFAULT_VERIFY_Q: [u32; 2] = [2, 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PavingStep {
    pub vertex: Coweight,
    /// `None` for cells not attached to a Borel (Iwahori pavings).
    pub borel: Option<usize>,
    pub dim: usize,
    pub polytope: GTFamily,
    /// `(q, |cell(F_q)|)`.
    pub counts: Vec<(u32, u64)>,
}

impl PavingStep {
    /// Every recorded count equals `q^dim`.
    pub fn counts_ok(&self) -> bool {
        self.counts
            .iter()
            .all(|&(q, c)| (q as u128).pow(self.dim as u32) == c as u128)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub q: u32,
    /// `Σ q^dim` over the steps.
    pub predicted: u128,
    /// Number of `F_q`-points of the paved space.
    pub points: u64,
    /// Whether the cells partition the points.
    pub partition: bool,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.partition && self.predicted == self.points as u128
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PavingPlan {
    pub steps: Vec<PavingStep>,
    pub verified: Vec<Verification>,
}

impl PavingPlan {
    pub fn new(steps: Vec<PavingStep>) -> Self {
        PavingPlan {
            steps,
            verified: Vec::new(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.dim).collect()
    }

    pub fn poincare(&self) -> PoincarePoly {
        PoincarePoly::from_dims(self.dims())
    }

    pub fn predicted(&self, q: u32) -> u128 {
        self.poincare().eval_q(q as u64)
    }

    pub fn record(&mut self, q: u32, points: u64, partition: bool) {
        let predicted = self.predicted(q);
        self.verified.push(Verification {
            q,
            predicted,
            points,
            partition,
        });
    }

    pub fn is_verified(&self) -> bool {
        !self.verified.is_empty()
            && self.verified.iter().all(|v| v.ok())
            && self.steps.iter().all(|s| s.counts_ok())
    }

    /// Turns a failed verification into an error.
    pub fn check(&self) -> Result<()> {
        if let Some(s) = self.steps.iter().find(|s| !s.counts_ok()) {
            return Err(Error::PavingVerificationFailed(format!(
                "cell at {:?} (borel {:?}) has counts {:?}, expected dimension {}",
                s.vertex, s.borel, s.counts, s.dim
            )));
        }
        if let Some(v) = self.verified.iter().find(|v| !v.ok()) {
            return Err(Error::PavingVerificationFailed(format!(
                "q={}: predicted {} points, found {} (partition: {})",
                v.q, v.predicted, v.points, v.partition
            )));
        }
        Ok(())
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.steps.iter().map(|s| s.dim).max()
    }
}
