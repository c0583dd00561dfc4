//! Good sets, regulating sets and their synthesis.
//!
//! A set `V ⊆ X×Y` is forward-closed when `h(V) ⊆ V`. Given a good set `G`,
//! a regulating set is a non-empty forward-closed subset of `G`, and the
//! agent is a good regulator when one exists. Forward-closed sets are closed
//! under union, so there is a unique largest one inside `G`; it is found here
//! by pruning `G` down to its greatest fixpoint.

use crate::error::{check_size, Error, Result};
use crate::machine::CoupledSystem;
use crate::set::StateSet;

/// Largest joint space the exhaustive enumeration accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// A coupled system together with a good set `G ⊆ X×Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegulationSituation {
    system: CoupledSystem,
    good: StateSet,
}

impl RegulationSituation {
    pub fn new(system: CoupledSystem, good: StateSet) -> Result<Self> {
        check_size("good set", system.num_joint_states(), good.universe())?;
        Ok(Self { system, good })
    }

    pub fn system(&self) -> &CoupledSystem {
        &self.system
    }

    pub fn good(&self) -> &StateSet {
        &self.good
    }
}

/// True iff every member of `v` steps to a member of `v`.
pub fn is_forward_closed(sys: &CoupledSystem, v: &StateSet) -> Result<bool> {
    check_size("state set", sys.num_joint_states(), v.universe())?;
    Ok(v.iter().all(|i| v.contains(sys.step_index(i))))
}

/// Non-empty, forward-closed and contained in the good set.
pub fn is_regulating_set(sit: &RegulationSituation, r: &StateSet) -> Result<bool> {
    let closed = is_forward_closed(&sit.system, r)?;
    Ok(!r.is_empty() && closed && r.is_subset(&sit.good))
}

/// Result of pruning a set down to its largest forward-closed subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruning {
    pub kernel: StateSet,
    /// Rounds that removed at least one state.
    pub rounds: usize,
}

/// Greatest fixpoint of `K ↦ K ∩ h⁻¹(K)` starting from `start`.
pub fn largest_forward_closed_subset(sys: &CoupledSystem, start: &StateSet) -> Result<Pruning> {
    check_size("state set", sys.num_joint_states(), start.universe())?;
    let mut kernel = start.clone();
    let mut rounds = 0;
    loop {
        let leaving: Vec<usize> = kernel
            .iter()
            .filter(|&i| !kernel.contains(sys.step_index(i)))
            .collect();
        if leaving.is_empty() {
            return Ok(Pruning { kernel, rounds });
        }
        for i in leaving {
            kernel.remove(i);
        }
        rounds += 1;
    }
}

/// The union of all regulating sets, or `None` if the agent is not a good
/// regulator.
pub fn largest_regulating_set(sit: &RegulationSituation) -> Option<StateSet> {
    let pruning = largest_forward_closed_subset(&sit.system, &sit.good)
        .expect("good set is sized at construction");
    (!pruning.kernel.is_empty()).then_some(pruning.kernel)
}

pub fn is_good_regulator(sit: &RegulationSituation) -> bool {
    largest_regulating_set(sit).is_some()
}

/// Classical goal: `{(x, y) | y ∈ goal}`.
pub fn lift_environment_goal(goal: &StateSet, sys: &CoupledSystem) -> Result<StateSet> {
    let nx = sys.agent().num_states();
    let ny = sys.environment().num_states();
    check_size("environment goal", ny, goal.universe())?;
    Ok(StateSet::from_indices(
        nx * ny,
        (0..nx).flat_map(|x| goal.iter().map(move |y| x * ny + y)),
    ))
}

/// Agent-side goal: `{(x, y) | x ∈ goal}`.
pub fn lift_agent_goal(goal: &StateSet, sys: &CoupledSystem) -> Result<StateSet> {
    let nx = sys.agent().num_states();
    let ny = sys.environment().num_states();
    check_size("agent goal", nx, goal.universe())?;
    Ok(StateSet::from_indices(
        nx * ny,
        goal.iter().flat_map(|x| (0..ny).map(move |y| x * ny + y)),
    ))
}

/// Every forward-closed subset of `G`, found by testing all `2^|X×Y|`
/// candidate subsets. Returned in ascending bitmask order; always contains
/// the empty set.
pub fn enumerate_forward_closed_subsets(
    sit: &RegulationSituation,
    cap: usize,
) -> Result<Vec<StateSet>> {
    let n = sit.system.num_joint_states();
    if n > cap || n > 63 {
        return Err(Error::Capacity {
            universe: n,
            cap: cap.min(63),
        });
    }
    let successor: Vec<u64> = (0..n)
        .map(|i| {
            let w = sit.system.joint(i);
            let next = sit.system.step(w).expect("in range");
            1u64 << sit.system.index_of(next).expect("in range")
        })
        .collect();
    let good = sit.good.to_mask().expect("universe below 64");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask & !good != 0 {
            continue;
        }
        let closed = (0..n).all(|i| mask & (1 << i) == 0 || mask & successor[i] != 0);
        if closed {
            out.push(StateSet::from_mask(n, mask));
        }
    }
    Ok(out)
}
