//! Sets of primitives executed in parallel by distinct robots in one step.
//!
//! Two primitives conflict when their footprints share a cell. A set with
//! pairwise disjoint footprints commutes: every member reads and writes only
//! its own cells, so the members can be applied in any order.

use alloc::vec::Vec;
use core::fmt;

use crate::grid::GridState;
use crate::primitives::{applicable_primitives, Footprint, MotionPrimitive, PrimitiveError, Rules};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JointActionError {
    #[error("joint action is empty")]
    Empty,
    #[error("primitives {0} and {1} have overlapping footprints")]
    Conflict(usize, usize),
}

/// A nonempty conflict-free set of primitives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointAction {
    primitives: Vec<MotionPrimitive>,
}

impl JointAction {
    pub fn new(primitives: Vec<MotionPrimitive>) -> Result<Self, JointActionError> {
        if primitives.is_empty() {
            return Err(JointActionError::Empty);
        }
        let fps: Vec<Footprint> = primitives.iter().map(MotionPrimitive::footprint).collect();
        for i in 0..fps.len() {
            for j in i + 1..fps.len() {
                if fps[i].intersects(&fps[j]) {
                    return Err(JointActionError::Conflict(i, j));
                }
            }
        }
        Ok(JointAction { primitives })
    }

    pub fn single(p: MotionPrimitive) -> Self {
        JointAction { primitives: alloc::vec![p] }
    }

    pub fn primitives(&self) -> &[MotionPrimitive] {
        &self.primitives
    }

    pub fn len(&self) -> usize {
        self.primitives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    /// Checks every member against `state`, in order.
    pub fn precondition(&self, state: &GridState, rules: Rules) -> Result<(), (usize, PrimitiveError)> {
        self.primitives
            .iter()
            .enumerate()
            .try_for_each(|(i, p)| p.precondition(state, rules).map_err(|e| (i, e)))
    }

    /// Applies the members in order.
    ///
    /// # Panics
    /// If a member is not applicable at its turn.
    pub fn apply(&self, state: &GridState, rules: Rules) -> GridState {
        let next = apply_in_order(state, self.primitives.iter(), rules);
        #[cfg(debug_assertions)]
        if self.primitives.len() > 1 {
            let reversed = apply_in_order(state, self.primitives.iter().rev(), rules);
            debug_assert_eq!(next, reversed, "joint action {self} is order dependent");
        }
        next
    }
}

fn apply_in_order<'a>(
    state: &GridState,
    prims: impl Iterator<Item = &'a MotionPrimitive>,
    rules: Rules,
) -> GridState {
    let mut next = state.clone();
    for p in prims {
        if let Err(e) = p.precondition(&next, rules) {
            panic!("apply {p} on a state where it is not applicable: {e}");
        }
        p.apply_unchecked(&mut next);
    }
    next
}

impl fmt::Display for JointAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.primitives.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Applies `action` to `state`; see [`JointAction::apply`].
pub fn apply_joint(state: &GridState, action: &JointAction, rules: Rules) -> GridState {
    action.apply(state, rules)
}

/// Every nonempty conflict-free combination of per-robot primitives with at
/// most `max_parallel` members (`None` = no cap).
///
/// Robots are visited in row-major order and each robot's primitives in
/// [`applicable_primitives`] order; subsets are produced depth first, so the
/// output order is deterministic.
pub fn enumerate_joint_actions(state: &GridState, rules: Rules, max_parallel: Option<usize>) -> Vec<JointAction> {
    let per_robot: Vec<Vec<(MotionPrimitive, Footprint)>> = state
        .robots()
        .map(|r| {
            applicable_primitives(state, r, rules)
                .expect("robot cell")
                .into_iter()
                .map(|p| (p, p.footprint()))
                .collect::<Vec<_>>()
        })
        .filter(|v| !v.is_empty())
        .collect();
    let cap = max_parallel.unwrap_or(usize::MAX).max(1);
    let mut out = Vec::new();
    let mut chosen: Vec<(MotionPrimitive, Footprint)> = Vec::new();
    extend_subsets(&per_robot, 0, cap, &mut chosen, &mut out);
    out
}

fn extend_subsets(
    per_robot: &[Vec<(MotionPrimitive, Footprint)>],
    from: usize,
    cap: usize,
    chosen: &mut Vec<(MotionPrimitive, Footprint)>,
    out: &mut Vec<JointAction>,
) {
    if chosen.len() == cap {
        return;
    }
    for (i, options) in per_robot.iter().enumerate().skip(from) {
        for &(p, fp) in options {
            if chosen.iter().any(|(_, other)| other.intersects(&fp)) {
                continue;
            }
            chosen.push((p, fp));
            out.push(JointAction { primitives: chosen.iter().map(|(p, _)| *p).collect() });
            extend_subsets(per_robot, i + 1, cap, chosen, out);
            chosen.pop();
        }
    }
}
