use serde::{Deserialize, Serialize};

use super::fixed::group_of;
use crate::error::{Error, Result};
use crate::invariants::{verify_relative, Invariant};
use crate::local::GaloisData;
use crate::perm::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    PointStabilizer,
    UnityStabilizer,
    CompositionStep,
}

/// One step C_{k-1} > C_k of a chain with its C_{k-1}-relative C_k-invariant.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub group: PermGroup,
    pub invariant: Invariant,
    pub origin: Origin,
}

/// A descending chain G = C_0 > C_1 > ... with one step per proper inclusion.
#[derive(Clone, Debug)]
pub struct ChainPlan {
    pub top: PermGroup,
    pub steps: Vec<ChainStep>,
}

impl ChainPlan {
    pub fn new(top: PermGroup) -> ChainPlan {
        ChainPlan { top, steps: vec![] }
    }

    pub fn last(&self) -> &PermGroup {
        self.steps.last().map(|s| &s.group).unwrap_or(&self.top)
    }

    /// Append a step after checking the inclusion is proper and the invariant is relative.
    pub fn push(&mut self, group: PermGroup, invariant: Invariant, origin: Origin) -> Result<()> {
        let prev = self.last();
        if !group.is_subgroup_of(prev) || group.order() == prev.order() {
            return Err(Error::Construction("chain step is not a proper subgroup".into()));
        }
        if !verify_relative(&invariant, prev, &group)? {
            return Err(Error::Construction(format!(
                "{} is not a relative invariant for the step",
                invariant.render()
            )));
        }
        self.steps.push(ChainStep { group, invariant, origin });
        Ok(())
    }

    pub fn groups(&self) -> Vec<&PermGroup> {
        std::iter::once(&self.top).chain(self.steps.iter().map(|s| &s.group)).collect()
    }

    pub fn orders(&self) -> Vec<u128> {
        self.groups().iter().map(|g| g.order()).collect()
    }

    pub fn ends_trivial(&self) -> bool {
        self.last().is_trivial()
    }
}

/// Point-stabilizer chain: repeatedly fix the point whose stabilizer is smallest
/// (smallest index on ties), recording x_d whenever the stabilizer shrinks.
pub fn minimal_chain(data: &GaloisData) -> Result<ChainPlan> {
    let g = group_of(data)?;
    let n = g.degree();
    let mut plan = ChainPlan::new(g.clone());
    let mut fixed: Vec<usize> = vec![];
    let mut rest: Vec<usize> = (0..n).collect();
    while !rest.is_empty() {
        let mut best: Option<(u128, usize, PermGroup)> = None;
        for &d in &rest {
            let mut pts = fixed.clone();
            pts.push(d);
            let s = g.stabilizer_pointwise(&pts);
            if best.as_ref().is_none_or(|b| s.order() < b.0) {
                best = Some((s.order(), d, s));
            }
        }
        let (order, d, s) = best.unwrap();
        fixed.push(d);
        rest.retain(|&x| x != d);
        if order < plan.last().order() {
            plan.push(s, Invariant::variable(n, d), Origin::PointStabilizer)?;
        }
    }
    Ok(plan)
}
