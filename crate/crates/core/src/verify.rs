//! Brute-force cross-checks between the dynamical and the belief-based
//! views of regulation.
//!
//! Two equivalences are checked on random finite instances:
//!
//! * a set `R ⊆ X×Y` is forward-closed exactly when the slice map
//!   `ψ(x) = { y | (x, y) ∈ R }` is a consistent belief map with the
//!   environment as model;
//! * `R` is a regulating set for `G` exactly when the agent is a subjective
//!   good regulator under `ψ` (from `R`) and `φ` (from `G`), with each of the
//!   three conditions matching separately.
//!
//! The left-hand sides only ever call [`CoupledSystem::step`]; the
//! right-hand sides only ever evaluate the belief update on the model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_size, Error, Result};
use crate::interpretation::{
    belief_map_from_regulating_set, is_consistent_belief_map, normative_map_from_good_set,
    InterpretationBundle,
};
use crate::machine::{CoupledSystem, Interface, MealyMachine, MooreMachine};
use crate::regulation::{
    is_forward_closed, is_regulating_set, largest_forward_closed_subset, RegulationSituation,
};
use crate::set::StateSet;

/// Sizes `(|X|, |Y|, |S|, |A|)` and a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub agent_states: usize,
    pub env_states: usize,
    pub sensors: usize,
    pub actions: usize,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(sizes: Sizes, seed: u64) -> Self {
        Self {
            agent_states: sizes.agent_states,
            env_states: sizes.env_states,
            sensors: sizes.sensors,
            actions: sizes.actions,
            seed,
        }
    }

    pub fn sizes(&self) -> Sizes {
        Sizes {
            agent_states: self.agent_states,
            env_states: self.env_states,
            sensors: self.sensors,
            actions: self.actions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sizes {
    pub agent_states: usize,
    pub env_states: usize,
    pub sensors: usize,
    pub actions: usize,
}

impl Sizes {
    pub const fn new(
        agent_states: usize,
        env_states: usize,
        sensors: usize,
        actions: usize,
    ) -> Self {
        Self {
            agent_states,
            env_states,
            sensors,
            actions,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.agent_states == 0 || self.env_states == 0 || self.sensors == 0 || self.actions == 0
        {
            return Err(Error::Config(
                "instance sizes must all be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Independently uniform sizes in `1..=self`.
    pub fn sample_below<R: Rng>(&self, rng: &mut R) -> Sizes {
        Sizes {
            agent_states: rng.random_range(1..=self.agent_states),
            env_states: rng.random_range(1..=self.env_states),
            sensors: rng.random_range(1..=self.sensors),
            actions: rng.random_range(1..=self.actions),
        }
    }
}

impl std::str::FromStr for Sizes {
    type Err = String;

    /// Parses `X,Y,S,A`.
    fn from_str(text: &str) -> std::result::Result<Self, String> {
        let parts: Vec<usize> = text
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
            .collect::<std::result::Result<_, _>>()?;
        match parts[..] {
            [x, y, s, a] if x > 0 && y > 0 && s > 0 && a > 0 => Ok(Sizes::new(x, y, s, a)),
            [_, _, _, _] => Err("sizes must all be at least 1".into()),
            _ => Err("expected four comma-separated sizes X,Y,S,A".into()),
        }
    }
}

/// Agent and environment whose tables are sampled independently and
/// uniformly from the seed.
pub fn random_instance(spec: &InstanceSpec) -> Result<(MooreMachine, MealyMachine)> {
    spec.sizes().validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let interface = Interface::with_sizes(spec.sensors, spec.actions)?;
    let agent_states = (0..spec.agent_states).map(|i| format!("x{i}")).collect();
    let env_states = (0..spec.env_states).map(|i| format!("y{i}")).collect();
    let readout = (0..spec.agent_states)
        .map(|_| rng.random_range(0..spec.actions))
        .collect();
    let update = (0..spec.agent_states * spec.sensors)
        .map(|_| rng.random_range(0..spec.agent_states))
        .collect();
    let evolve = (0..spec.env_states * spec.actions)
        .map(|_| {
            (
                rng.random_range(0..spec.env_states),
                rng.random_range(0..spec.sensors),
            )
        })
        .collect();
    Ok((
        MooreMachine::new(interface.clone(), agent_states, readout, update)?,
        MealyMachine::new(interface, env_states, evolve)?,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentVerdict {
    pub name: &'static str,
    pub left: bool,
    pub right: bool,
    pub agree: bool,
}

impl ComponentVerdict {
    fn new(name: &'static str, left: bool, right: bool) -> Self {
        Self {
            name,
            left,
            right,
            agree: left == right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub left: bool,
    pub right: bool,
    pub agree: bool,
    /// Per-condition correspondences; empty for the lemma.
    pub components: Vec<ComponentVerdict>,
    pub witness: Option<String>,
}

impl Verdict {
    /// Both sides agree and so does every component.
    pub fn all_agree(&self) -> bool {
        self.agree && self.components.iter().all(|c| c.agree)
    }
}

pub const FORWARD_CLOSED: &str = "forward_closed~consistent";
pub const NON_EMPTY: &str = "non_empty~some_belief_non_empty";
pub const CONTAINED: &str = "r_subset_g~psi_subset_phi";

/// Forward-closure of `r` against consistency of its slice map.
pub fn verify_lemma1(agent: &MooreMachine, env: &MealyMachine, r: &StateSet) -> Result<Verdict> {
    let sys = CoupledSystem::new(agent.clone(), env.clone())?;
    let left = is_forward_closed(&sys, r)?;

    let psi = belief_map_from_regulating_set(r, agent.num_states(), env.num_states())?;
    let bundle = InterpretationBundle::new(agent.clone(), env.clone(), psi, None)?;
    let consistency = is_consistent_belief_map(&bundle);
    let right = consistency.is_ok();

    let witness = (left != right).then(|| match consistency {
        Err(w) => format!("belief map inconsistent at {w} although R is forward-closed"),
        Ok(()) => "R is not forward-closed although its belief map is consistent".to_string(),
    });
    Ok(Verdict {
        left,
        right,
        agree: left == right,
        components: Vec::new(),
        witness,
    })
}

/// Good regulator with `(G, R)` against subjective good regulator with
/// `ψ` from `R`, `φ` from `G` and the environment as model.
pub fn verify_theorem1(
    agent: &MooreMachine,
    env: &MealyMachine,
    g: &StateSet,
    r: &StateSet,
) -> Result<Verdict> {
    let sys = CoupledSystem::new(agent.clone(), env.clone())?;
    check_size("regulating set", sys.num_joint_states(), r.universe())?;
    let sit = RegulationSituation::new(sys.clone(), g.clone())?;
    let left = is_regulating_set(&sit, r)?;
    let closed = is_forward_closed(&sys, r)?;
    let non_empty = !r.is_empty();
    let contained = r.is_subset(g);

    let (nx, ny) = (agent.num_states(), env.num_states());
    let psi = belief_map_from_regulating_set(r, nx, ny)?;
    let phi = normative_map_from_good_set(g, nx, ny)?;
    let bundle = InterpretationBundle::new(agent.clone(), env.clone(), psi, Some(phi))?;
    let consistent = is_consistent_belief_map(&bundle).is_ok();
    let psi = bundle.psi();
    let phi = bundle.phi().expect("constructed with φ");
    let some_belief = psi.sets().iter().any(|b| !b.is_empty());
    let pointwise = (0..nx).all(|x| psi.get(x).is_subset(phi.get(x)));
    let right = consistent && some_belief && pointwise;

    let components = vec![
        ComponentVerdict::new(FORWARD_CLOSED, closed, consistent),
        ComponentVerdict::new(NON_EMPTY, non_empty, some_belief),
        ComponentVerdict::new(CONTAINED, contained, pointwise),
    ];
    let witness = components
        .iter()
        .find(|c| !c.agree)
        .map(|c| {
            format!(
                "component {} disagrees: left={} right={}",
                c.name, c.left, c.right
            )
        })
        .or_else(|| (left != right).then(|| "overall verdicts disagree".to_string()));
    Ok(Verdict {
        left,
        right,
        agree: left == right,
        components,
        witness,
    })
}

/// Greedily drops members of `set`, in ascending index order, as long as
/// `still_fails` keeps holding.
pub fn minimize_subset(set: &StateSet, mut still_fails: impl FnMut(&StateSet) -> bool) -> StateSet {
    let mut current = set.clone();
    for i in set.iter() {
        let mut candidate = current.clone();
        candidate.remove(i);
        if still_fails(&candidate) {
            current = candidate;
        }
    }
    current
}

/// Uniform random subset with inclusion probability `p`.
pub fn random_subset<R: Rng>(rng: &mut R, universe: usize, p: f64) -> StateSet {
    StateSet::from_indices(universe, (0..universe).filter(|_| rng.random_bool(p)))
}

/// Forward closure of `seeds`: everything reachable from them.
pub fn forward_closure(sys: &CoupledSystem, seeds: &StateSet) -> StateSet {
    let mut closure = seeds.clone();
    let mut frontier: Vec<usize> = seeds.iter().collect();
    while let Some(i) = frontier.pop() {
        let next = sys.step_index(i);
        if closure.insert(next) {
            frontier.push(next);
        }
    }
    closure
}

/// Mixture of candidate `R` shapes: uniform, sparse, forward-closed, and
/// forward-closed with one member knocked out.
pub fn sample_candidate<R: Rng>(rng: &mut R, sys: &CoupledSystem) -> StateSet {
    let n = sys.num_joint_states();
    match rng.random_range(0..4) {
        0 => random_subset(rng, n, 0.5),
        1 => random_subset(rng, n, 0.2),
        2 => forward_closure(sys, &random_subset(rng, n, 0.15)),
        _ => {
            let mut set = forward_closure(sys, &random_subset(rng, n, 0.15));
            let members: Vec<usize> = set.iter().collect();
            if !members.is_empty() {
                set.remove(members[rng.random_range(0..members.len())]);
            }
            set
        }
    }
}

/// A `(G, R)` pair. With `correlated`, `R ⊆ G` is forced.
pub fn sample_goal_and_candidate<R: Rng>(
    rng: &mut R,
    sys: &CoupledSystem,
    correlated: bool,
) -> (StateSet, StateSet) {
    let n = sys.num_joint_states();
    if !correlated {
        let density = rng.random_range(0.3..0.9);
        let g = random_subset(rng, n, density);
        return (g, sample_candidate(rng, sys));
    }
    match rng.random_range(0..3) {
        0 => {
            let r = sample_candidate(rng, sys);
            let g = r.union(&random_subset(rng, n, 0.5));
            (g, r)
        }
        1 => {
            let g = random_subset(rng, n, 0.75);
            let r = largest_forward_closed_subset(sys, &g)
                .expect("sized to the system")
                .kernel;
            (g, r)
        }
        _ => {
            let g = random_subset(rng, n, 0.6);
            let r = g.intersection(&random_subset(rng, n, 0.5));
            (g, r)
        }
    }
}

/// Tally of one side-by-side check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub agree: usize,
    pub disagree: usize,
    pub left_true: usize,
}

impl Tally {
    fn record(&mut self, left: bool, right: bool) {
        self.checked += 1;
        if left == right {
            self.agree += 1;
        } else {
            self.disagree += 1;
        }
        if left {
            self.left_true += 1;
        }
    }
}

/// A reproducible failing case, with `R` (and `G`) greedily minimized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Absent when the machines did not come from [`random_instance`].
    pub instance: Option<InstanceSpec>,
    pub good: Option<Vec<usize>>,
    pub regulating: Vec<usize>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub tally: Tally,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub tally: Tally,
    pub forward_closed: Tally,
    pub non_empty: Tally,
    pub contained: Tally,
    pub correlated_trials: usize,
    pub counterexample: Option<Counterexample>,
}

impl TheoremReport {
    pub fn all_agree(&self) -> bool {
        self.tally.disagree == 0
            && self.forward_closed.disagree == 0
            && self.non_empty.disagree == 0
            && self.contained.disagree == 0
    }
}

fn lemma_counterexample(
    agent: &MooreMachine,
    env: &MealyMachine,
    spec: Option<InstanceSpec>,
    r: &StateSet,
) -> Counterexample {
    let fails = |set: &StateSet| {
        !verify_lemma1(agent, env, set)
            .map(|v| v.agree)
            .unwrap_or(true)
    };
    let r = minimize_subset(r, fails);
    let witness = verify_lemma1(agent, env, &r).ok().and_then(|v| v.witness);
    Counterexample {
        instance: spec,
        good: None,
        regulating: r.iter().collect(),
        witness,
    }
}

/// Lemma check on one instance, over every subset of `X×Y`. Requires
/// `|X|·|Y| < 64`.
pub fn lemma1_exhaustive(spec: InstanceSpec, report: &mut LemmaReport) -> Result<()> {
    let (agent, env) = random_instance(&spec)?;
    lemma1_exhaustive_on(&agent, &env, Some(spec), report)
}

pub fn lemma1_exhaustive_on(
    agent: &MooreMachine,
    env: &MealyMachine,
    spec: Option<InstanceSpec>,
    report: &mut LemmaReport,
) -> Result<()> {
    let n = agent.num_states() * env.num_states();
    if n >= 63 {
        return Err(Error::Capacity {
            universe: n,
            cap: 62,
        });
    }
    for mask in 0u64..(1u64 << n) {
        let r = StateSet::from_mask(n, mask);
        let verdict = verify_lemma1(agent, env, &r)?;
        report.tally.record(verdict.left, verdict.right);
        if !verdict.agree && report.counterexample.is_none() {
            report.counterexample = Some(lemma_counterexample(agent, env, spec, &r));
        }
    }
    Ok(())
}

/// Batch parameters shared by the randomized checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_sizes: Sizes,
}

impl BatchConfig {
    fn instances(&self) -> impl Iterator<Item = (usize, InstanceSpec, ChaCha8Rng)> + '_ {
        let mut master = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.trials).map(move |trial| {
            let sizes = self.max_sizes.sample_below(&mut master);
            let spec = InstanceSpec::new(sizes, master.random());
            let sets = ChaCha8Rng::seed_from_u64(master.random());
            (trial, spec, sets)
        })
    }
}

/// `trials` random `(instance, R)` pairs.
pub fn lemma1_batch(config: &BatchConfig) -> Result<LemmaReport> {
    config.max_sizes.validate()?;
    let mut report = LemmaReport::default();
    for (_, spec, mut rng) in config.instances() {
        let (agent, env) = random_instance(&spec)?;
        let sys = CoupledSystem::new(agent.clone(), env.clone())?;
        let r = sample_candidate(&mut rng, &sys);
        let verdict = verify_lemma1(&agent, &env, &r)?;
        report.tally.record(verdict.left, verdict.right);
        if !verdict.agree && report.counterexample.is_none() {
            report.counterexample = Some(lemma_counterexample(&agent, &env, Some(spec), &r));
        }
    }
    Ok(report)
}

fn theorem_counterexample(
    agent: &MooreMachine,
    env: &MealyMachine,
    spec: Option<InstanceSpec>,
    g: &StateSet,
    r: &StateSet,
) -> Counterexample {
    let fails = |g: &StateSet, r: &StateSet| {
        !verify_theorem1(agent, env, g, r)
            .map(|v| v.all_agree())
            .unwrap_or(true)
    };
    let r = minimize_subset(r, |r| fails(g, r));
    let g = minimize_subset(g, |g| fails(g, &r));
    let witness = verify_theorem1(agent, env, &g, &r)
        .ok()
        .and_then(|v| v.witness);
    Counterexample {
        instance: spec,
        good: Some(g.iter().collect()),
        regulating: r.iter().collect(),
        witness,
    }
}

/// Records one theorem verdict into `report`.
pub fn record_theorem(
    report: &mut TheoremReport,
    agent: &MooreMachine,
    env: &MealyMachine,
    spec: Option<InstanceSpec>,
    g: &StateSet,
    r: &StateSet,
) -> Result<Verdict> {
    let verdict = verify_theorem1(agent, env, g, r)?;
    report.tally.record(verdict.left, verdict.right);
    for c in &verdict.components {
        let tally = match c.name {
            FORWARD_CLOSED => &mut report.forward_closed,
            NON_EMPTY => &mut report.non_empty,
            _ => &mut report.contained,
        };
        tally.record(c.left, c.right);
    }
    if !verdict.all_agree() && report.counterexample.is_none() {
        report.counterexample = Some(theorem_counterexample(agent, env, spec, g, r));
    }
    Ok(verdict)
}

/// `trials` random `(instance, G, R)` triples; even trials force `R ⊆ G`.
pub fn theorem1_batch(config: &BatchConfig) -> Result<TheoremReport> {
    config.max_sizes.validate()?;
    let mut report = TheoremReport::default();
    for (trial, spec, mut rng) in config.instances() {
        let (agent, env) = random_instance(&spec)?;
        let sys = CoupledSystem::new(agent.clone(), env.clone())?;
        let correlated = trial % 2 == 0;
        let (g, r) = sample_goal_and_candidate(&mut rng, &sys, correlated);
        if correlated {
            report.correlated_trials += 1;
        }
        record_theorem(&mut report, &agent, &env, Some(spec), &g, &r)?;
    }
    Ok(report)
}

/// `trials` random candidate sets `R` on fixed machines.
pub fn lemma1_on_system(
    agent: &MooreMachine,
    env: &MealyMachine,
    trials: usize,
    seed: u64,
) -> Result<LemmaReport> {
    let sys = CoupledSystem::new(agent.clone(), env.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LemmaReport::default();
    for _ in 0..trials {
        let r = sample_candidate(&mut rng, &sys);
        let verdict = verify_lemma1(agent, env, &r)?;
        report.tally.record(verdict.left, verdict.right);
        if !verdict.agree && report.counterexample.is_none() {
            report.counterexample = Some(lemma_counterexample(agent, env, None, &r));
        }
    }
    Ok(report)
}

/// `trials` random `(G, R)` pairs on fixed machines. A supplied `good` set
/// is used as `G` throughout; even trials draw `R ⊆ G`.
pub fn theorem1_on_system(
    agent: &MooreMachine,
    env: &MealyMachine,
    good: Option<&StateSet>,
    trials: usize,
    seed: u64,
) -> Result<TheoremReport> {
    let sys = CoupledSystem::new(agent.clone(), env.clone())?;
    if let Some(g) = good {
        check_size("good set", sys.num_joint_states(), g.universe())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TheoremReport::default();
    for trial in 0..trials {
        let correlated = trial % 2 == 0;
        let (g, r) = match good {
            Some(g) if correlated => {
                let r = if rng.random_bool(0.5) {
                    largest_forward_closed_subset(&sys, g)?.kernel
                } else {
                    g.intersection(&sample_candidate(&mut rng, &sys))
                };
                (g.clone(), r)
            }
            Some(g) => (g.clone(), sample_candidate(&mut rng, &sys)),
            None => sample_goal_and_candidate(&mut rng, &sys, correlated),
        };
        if correlated {
            report.correlated_trials += 1;
        }
        record_theorem(&mut report, agent, env, None, &g, &r)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn same_seed_same_machines() {
        let spec = InstanceSpec::new(Sizes::new(3, 4, 2, 3), 7);
        assert_eq!(
            random_instance(&spec).unwrap(),
            random_instance(&spec).unwrap()
        );
        let other = InstanceSpec { seed: 8, ..spec };
        assert_ne!(
            random_instance(&spec).unwrap(),
            random_instance(&other).unwrap()
        );
    }

    #[test]
    fn unit_sizes_give_the_doorstop_shape() {
        for seed in 0..5 {
            let (agent, env) =
                random_instance(&InstanceSpec::new(Sizes::new(1, 1, 1, 1), seed)).unwrap();
            assert_eq!(agent.readout(0), Ok(0));
            assert_eq!(agent.update(0, 0), Ok(0));
            assert_eq!(env.evolve(0, 0), Ok((0, 0)));
        }
    }

    #[test]
    fn zero_sizes_rejected() {
        assert!(random_instance(&InstanceSpec::new(Sizes::new(0, 1, 1, 1), 0)).is_err());
        assert!("1,2,3".parse::<Sizes>().is_err());
        assert!("1,0,3,4".parse::<Sizes>().is_err());
        assert_eq!("4, 4,3,3".parse::<Sizes>(), Ok(Sizes::new(4, 4, 3, 3)));
    }

    #[test]
    fn lemma_trivial_sets() {
        let sys = presets::toggle_world();
        for r in [StateSet::empty(4), StateSet::full(4)] {
            let v = verify_lemma1(sys.agent(), sys.environment(), &r).unwrap();
            assert!(v.left && v.right && v.agree);
            assert!(v.witness.is_none());
        }
    }

    #[test]
    fn theorem_trivial_sets() {
        let sys = presets::toggle_world();
        let (a, e) = (sys.agent(), sys.environment());
        let v = verify_theorem1(a, e, &StateSet::full(4), &StateSet::empty(4)).unwrap();
        assert!(!v.left && !v.right && v.all_agree());
        let v = verify_theorem1(a, e, &StateSet::full(4), &StateSet::full(4)).unwrap();
        assert!(v.left && v.right && v.all_agree());
        assert_eq!(v.components.len(), 3);
    }

    #[test]
    fn minimizer_reaches_a_minimal_failing_set() {
        // Fails whenever both 2 and 5 are present.
        let set = StateSet::from_indices(8, [0, 2, 3, 5, 7]);
        let min = minimize_subset(&set, |s| s.contains(2) && s.contains(5));
        assert_eq!(min, StateSet::from_indices(8, [2, 5]));
    }

    #[test]
    fn forward_closure_is_closed() {
        let sys = presets::toggle_world();
        let c = forward_closure(&sys, &StateSet::from_indices(4, [1]));
        assert_eq!(c, StateSet::from_indices(4, [0, 1, 3]));
        assert_eq!(is_forward_closed(&sys, &c), Ok(true));
    }

    #[test]
    fn exhaustive_lemma_on_toggle_world() {
        let sys = presets::toggle_world();
        let spec = InstanceSpec::new(Sizes::new(2, 2, 2, 2), 0);
        let mut report = LemmaReport::default();
        lemma1_exhaustive_on(sys.agent(), sys.environment(), Some(spec), &mut report).unwrap();
        assert_eq!(report.tally.checked, 16);
        assert_eq!(report.tally.disagree, 0);
        // Closed subsets of h = {0->0, 1->3, 2->3, 3->0}: {}, {0}, {0,3},
        // {0,1,3}, {0,2,3}, {0,1,2,3}.
        assert_eq!(report.tally.left_true, 6);
    }

    #[test]
    fn batches_are_deterministic() {
        let config = BatchConfig {
            trials: 50,
            seed: 3,
            max_sizes: Sizes::new(3, 3, 2, 2),
        };
        assert_eq!(
            lemma1_batch(&config).unwrap(),
            lemma1_batch(&config).unwrap()
        );
        assert_eq!(
            theorem1_batch(&config).unwrap(),
            theorem1_batch(&config).unwrap()
        );
        let empty = BatchConfig {
            trials: 0,
            ..config
        };
        assert_eq!(lemma1_batch(&empty).unwrap().tally.checked, 0);
    }

    #[test]
    fn theorem_batch_covers_both_verdicts() {
        let config = BatchConfig {
            trials: 200,
            seed: 11,
            max_sizes: Sizes::new(4, 4, 3, 3),
        };
        let report = theorem1_batch(&config).unwrap();
        assert!(report.all_agree());
        assert!(report.tally.left_true > 0);
        assert!(report.tally.left_true < report.tally.checked);
        assert_eq!(report.correlated_trials, 100);
    }
}
