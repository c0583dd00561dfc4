//! Possibilistic belief interpretations of an agent.
//!
//! An observer attributes to each agent state `x` a set `ψ(x)` of model
//! states the agent considers possible, and a set `φ(x)` of states in which
//! its goal counts as met. Beliefs are updated by
//!
//! ```text
//! update(B, a, s) = { z' | ∃ z ∈ B : (z', s) = f(z, a) }
//! ```
//!
//! and `ψ` is consistent when `update(ψ(x), r(x), s) ⊆ ψ(u(x, s))` for every
//! `x` and `s`. Inclusion, not equality, is required: the observer may let
//! the agent forget information.

use std::collections::HashSet;
use std::fmt;
use std::marker::PhantomData;

use crate::error::{check_index, check_size, Error, Result};
use crate::machine::{CoupledSystem, JointState, MealyMachine, MooreMachine};
use crate::set::StateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Beliefs {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norms {}

/// A total map from agent states to subsets of model states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateMap<Role> {
    model_size: usize,
    sets: Vec<StateSet>,
    _role: PhantomData<Role>,
}

/// `ψ: X → P(Z)`.
pub type BeliefMap = StateMap<Beliefs>;
/// `φ: X → P(Z)`. Carries no consistency condition.
pub type NormativeMap = StateMap<Norms>;

impl<Role> StateMap<Role> {
    pub fn new(model_size: usize, sets: Vec<StateSet>) -> Result<Self> {
        for set in &sets {
            check_size("belief subset", model_size, set.universe())?;
        }
        Ok(Self {
            model_size,
            sets,
            _role: PhantomData,
        })
    }

    pub fn constant(agent_size: usize, set: StateSet) -> Self {
        Self {
            model_size: set.universe(),
            sets: vec![set; agent_size],
            _role: PhantomData,
        }
    }

    pub fn agent_size(&self) -> usize {
        self.sets.len()
    }

    pub fn model_size(&self) -> usize {
        self.model_size
    }

    /// Panics if `x` is out of range.
    pub fn get(&self, x: usize) -> &StateSet {
        &self.sets[x]
    }

    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }

    /// Slices a set of joint states into `x ↦ { y | (x, y) ∈ set }`.
    fn slices(set: &StateSet, agent_size: usize, env_size: usize) -> Result<Self> {
        check_size("joint set", agent_size * env_size, set.universe())?;
        let sets = (0..agent_size)
            .map(|x| {
                StateSet::from_indices(
                    env_size,
                    (0..env_size).filter(|&y| set.contains(x * env_size + y)),
                )
            })
            .collect();
        Self::new(env_size, sets)
    }

    /// `{ (x, z) | z ∈ map(x) }` over the x-major product space.
    pub fn to_joint_set(&self) -> StateSet {
        let n = self.model_size;
        StateSet::from_indices(
            self.agent_size() * n,
            self.sets
                .iter()
                .enumerate()
                .flat_map(|(x, set)| set.iter().map(move |z| x * n + z)),
        )
    }
}

/// `ψ(x) = { y | (x, y) ∈ R }`.
pub fn belief_map_from_regulating_set(
    r: &StateSet,
    agent_size: usize,
    env_size: usize,
) -> Result<BeliefMap> {
    BeliefMap::slices(r, agent_size, env_size)
}

/// `φ(x) = { y | (x, y) ∈ G }`.
pub fn normative_map_from_good_set(
    g: &StateSet,
    agent_size: usize,
    env_size: usize,
) -> Result<NormativeMap> {
    NormativeMap::slices(g, agent_size, env_size)
}

/// Posterior beliefs after taking `a` and observing `s`. May be empty.
pub fn possibilistic_update(
    model: &MealyMachine,
    b: &StateSet,
    a: usize,
    s: usize,
) -> Result<StateSet> {
    check_size("belief subset", model.num_states(), b.universe())?;
    check_index("action", a, model.interface().num_actions())?;
    check_index("sensor", s, model.interface().num_sensors())?;
    Ok(update_unchecked(model, b, a, s))
}

fn update_unchecked(model: &MealyMachine, b: &StateSet, a: usize, s: usize) -> StateSet {
    let mut out = StateSet::empty(model.num_states());
    for z in b {
        let (next, sensor) = model.e(z, a);
        if sensor == s {
            out.insert(next);
        }
    }
    out
}

/// Sensor values that leave the posterior non-empty.
pub fn subjectively_possible_sensors(
    model: &MealyMachine,
    b: &StateSet,
    a: usize,
) -> Result<StateSet> {
    let num_sensors = model.interface().num_sensors();
    let mut out = StateSet::empty(num_sensors);
    for s in 0..num_sensors {
        if !possibilistic_update(model, b, a, s)?.is_empty() {
            out.insert(s);
        }
    }
    Ok(out)
}

/// An agent, the model it is read as having, and the maps placed on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpretationBundle {
    agent: MooreMachine,
    model: MealyMachine,
    psi: BeliefMap,
    phi: Option<NormativeMap>,
}

impl InterpretationBundle {
    pub fn new(
        agent: MooreMachine,
        model: MealyMachine,
        psi: BeliefMap,
        phi: Option<NormativeMap>,
    ) -> Result<Self> {
        if agent.interface() != model.interface() {
            return Err(Error::InterfaceMismatch);
        }
        check_size("belief map domain", agent.num_states(), psi.agent_size())?;
        check_size("belief map codomain", model.num_states(), psi.model_size())?;
        if let Some(phi) = &phi {
            check_size("normative map domain", agent.num_states(), phi.agent_size())?;
            check_size(
                "normative map codomain",
                model.num_states(),
                phi.model_size(),
            )?;
        }
        Ok(Self {
            agent,
            model,
            psi,
            phi,
        })
    }

    /// `ψ` from `R` and `φ` from `G`, with the true environment as model.
    pub fn from_sets(
        sys: &CoupledSystem,
        regulating: &StateSet,
        good: Option<&StateSet>,
    ) -> Result<Self> {
        let nx = sys.agent().num_states();
        let ny = sys.environment().num_states();
        let psi = belief_map_from_regulating_set(regulating, nx, ny)?;
        let phi = good
            .map(|g| normative_map_from_good_set(g, nx, ny))
            .transpose()?;
        Self::new(sys.agent().clone(), sys.environment().clone(), psi, phi)
    }

    pub fn agent(&self) -> &MooreMachine {
        &self.agent
    }

    pub fn model(&self) -> &MealyMachine {
        &self.model
    }

    pub fn psi(&self) -> &BeliefMap {
        &self.psi
    }

    pub fn phi(&self) -> Option<&NormativeMap> {
        self.phi.as_ref()
    }
}

/// A point where `update(ψ(x), r(x), s)` contains `z_next ∉ ψ(u(x, s))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyWitness {
    pub x: usize,
    pub s: usize,
    pub z_next: usize,
}

impl fmt::Display for ConsistencyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "agent state {} with sensor {} admits model state {} outside the posterior belief",
            self.x, self.s, self.z_next
        )
    }
}

/// Checks the consistency inclusion at every `(x, s)`, in lexicographic
/// order, and returns the first offending `(x, s, z')`.
pub fn is_consistent_belief_map(
    bundle: &InterpretationBundle,
) -> std::result::Result<(), ConsistencyWitness> {
    let agent = &bundle.agent;
    let psi = &bundle.psi;
    for x in 0..agent.num_states() {
        let action = agent.r(x);
        for s in 0..agent.interface().num_sensors() {
            let posterior = update_unchecked(&bundle.model, psi.get(x), action, s);
            let attributed = psi.get(agent.u(x, s));
            if let Some(z_next) = posterior.iter().find(|&z| !attributed.contains(z)) {
                return Err(ConsistencyWitness { x, s, z_next });
            }
        }
    }
    Ok(())
}

/// Outcome of the subjective regulation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectiveReport {
    pub holds: bool,
    /// States `x0` with non-empty beliefs.
    pub admissible_starts: Vec<usize>,
    /// States where `ψ(x) ⊄ φ(x)`.
    pub violations: Vec<usize>,
}

/// `ψ ⊆ φ` pointwise and some `ψ(x0)` non-empty. Requires a consistent `ψ`
/// and a normative map.
pub fn is_subjective_good_regulator(bundle: &InterpretationBundle) -> Result<SubjectiveReport> {
    is_consistent_belief_map(bundle).map_err(Error::InconsistentBeliefs)?;
    let phi = bundle
        .phi
        .as_ref()
        .ok_or_else(|| Error::Config("subjective regulation needs a normative map".into()))?;
    let psi = &bundle.psi;
    let admissible_starts: Vec<usize> = (0..psi.agent_size())
        .filter(|&x| !psi.get(x).is_empty())
        .collect();
    let violations: Vec<usize> = (0..psi.agent_size())
        .filter(|&x| !psi.get(x).is_subset(phi.get(x)))
        .collect();
    Ok(SubjectiveReport {
        holds: violations.is_empty() && !admissible_starts.is_empty(),
        admissible_starts,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub t: usize,
    pub state: JointState,
    pub believed: StateSet,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefTrace {
    pub records: Vec<TraceRecord>,
}

impl BeliefTrace {
    pub fn violations(&self) -> usize {
        self.records.iter().filter(|r| !r.contained).count()
    }
}

/// Runs the agent against `env` for `n` steps from `w0` and records, at each
/// step, whether the true environment state lies in the attributed beliefs.
///
/// The bundle's model must have as many states as `env`, since beliefs are
/// compared against true environment states.
pub fn belief_trace(
    bundle: &InterpretationBundle,
    env: &MealyMachine,
    w0: JointState,
    n: usize,
) -> Result<BeliefTrace> {
    check_size(
        "model state space",
        env.num_states(),
        bundle.model.num_states(),
    )?;
    let sys = CoupledSystem::new(bundle.agent.clone(), env.clone())?;
    let path = sys.trajectory(w0, n)?;
    if !bundle.psi.get(w0.x).contains(w0.y) {
        return Err(Error::StartOutsideBelief { x: w0.x, y: w0.y });
    }
    let records = path
        .into_iter()
        .enumerate()
        .map(|(t, state)| {
            let believed = bundle.psi.get(state.x).clone();
            TraceRecord {
                t,
                state,
                contained: believed.contains(state.y),
                believed,
            }
        })
        .collect();
    Ok(BeliefTrace { records })
}

/// Descriptive statistics of how much a belief map depends on agent state.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Triviality {
    pub distinct_beliefs: usize,
    pub constant: bool,
    pub absurd_states: usize,
    pub min_cardinality: usize,
    pub max_cardinality: usize,
    pub mean_cardinality: f64,
}

pub fn triviality_report(psi: &BeliefMap) -> Triviality {
    let distinct: HashSet<&StateSet> = psi.sets().iter().collect();
    let sizes: Vec<usize> = psi.sets().iter().map(StateSet::len).collect();
    let n = sizes.len();
    Triviality {
        distinct_beliefs: distinct.len(),
        constant: distinct.len() <= 1,
        absurd_states: sizes.iter().filter(|&&c| c == 0).count(),
        min_cardinality: sizes.iter().copied().min().unwrap_or(0),
        max_cardinality: sizes.iter().copied().max().unwrap_or(0),
        mean_cardinality: if n == 0 {
            0.0
        } else {
            sizes.iter().sum::<usize>() as f64 / n as f64
        },
    }
}
