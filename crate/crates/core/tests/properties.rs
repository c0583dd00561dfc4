mod common;

use common::*;
use goodreg::interpretation::{BeliefMap, InterpretationBundle};
use goodreg::regulation::DEFAULT_ENUMERATION_CAP;
use goodreg::verify::{random_instance, verify_lemma1, verify_theorem1, InstanceSpec, Sizes};
use goodreg::*;
use proptest::prelude::*;

fn instance_spec(max: Sizes) -> impl Strategy<Value = InstanceSpec> {
    (
        1..=max.agent_states,
        1..=max.env_states,
        1..=max.sensors,
        1..=max.actions,
        any::<u64>(),
    )
        .prop_map(|(x, y, s, a, seed)| InstanceSpec::new(Sizes::new(x, y, s, a), seed))
}

fn system(spec: &InstanceSpec) -> CoupledSystem {
    let (agent, env) = random_instance(spec).unwrap();
    couple(agent, env).unwrap()
}

fn mask_set(n: usize, mask: u64) -> StateSet {
    StateSet::from_mask(n, mask)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn step_follows_the_composition_law(spec in instance_spec(Sizes::new(4, 4, 3, 3))) {
        let sys = system(&spec);
        for x in 0..spec.agent_states {
            for y in 0..spec.env_states {
                let w = JointState::new(x, y);
                let (x2, y2) = oracle_step(sys.agent(), sys.environment(), x, y);
                prop_assert_eq!(sys.step(w).unwrap(), JointState::new(x2, y2));
                prop_assert_eq!(sys.step(w).unwrap(), sys.step(w).unwrap());
            }
        }
    }

    #[test]
    fn trajectories_compose(spec in instance_spec(Sizes::new(4, 4, 3, 3)), n in 0usize..20, m in 0usize..20, x in 0usize..4, y in 0usize..4) {
        let sys = system(&spec);
        let w0 = JointState::new(x % spec.agent_states, y % spec.env_states);
        let whole = sys.trajectory(w0, n + m).unwrap();
        let first = sys.trajectory(w0, n).unwrap();
        let second = sys.trajectory(*first.last().unwrap(), m).unwrap();
        prop_assert_eq!(whole.len(), n + m + 1);
        prop_assert_eq!(&whole[..=n], &first[..]);
        prop_assert_eq!(&whole[n..], &second[..]);
        let mut w = w0;
        for _ in 0..n {
            w = sys.step(w).unwrap();
        }
        prop_assert_eq!(first.last().copied(), Some(w));
    }

    #[test]
    fn forward_closed_matches_oracle(spec in instance_spec(Sizes::new(4, 4, 3, 3)), mask in any::<u64>()) {
        let sys = system(&spec);
        let n = sys.num_joint_states();
        let mask = mask & ((1u64 << n) - 1);
        prop_assert_eq!(
            is_forward_closed(&sys, &mask_set(n, mask)).unwrap(),
            oracle_forward_closed(sys.agent(), sys.environment(), mask)
        );
    }

    #[test]
    fn largest_is_union_of_closed_subsets(spec in instance_spec(Sizes::new(3, 4, 3, 3)), good in any::<u64>()) {
        let sys = system(&spec);
        let n = sys.num_joint_states();
        let good = good & ((1u64 << n) - 1);
        let sit = RegulationSituation::new(sys.clone(), mask_set(n, good)).unwrap();
        let family = enumerate_forward_closed_subsets(&sit, DEFAULT_ENUMERATION_CAP).unwrap();
        let oracle = oracle_closed_family(sys.agent(), sys.environment(), good);
        prop_assert_eq!(family.iter().map(mask_of).collect::<Vec<_>>(), oracle.clone());

        // closed under pairwise union
        for a in &family {
            for b in &family {
                prop_assert!(is_forward_closed(&sys, &a.union(b)).unwrap());
            }
        }

        let union = oracle.iter().fold(0, |acc, m| acc | m);
        match largest_regulating_set(&sit) {
            Some(r) => {
                prop_assert_eq!(mask_of(&r), union);
                prop_assert!(is_regulating_set(&sit, &r).unwrap());
                prop_assert!(family.iter().all(|f| f.is_subset(&r)));
            }
            None => prop_assert_eq!(union, 0),
        }
        prop_assert_eq!(is_good_regulator(&sit), union != 0);
    }

    #[test]
    fn pruning_terminates_within_universe_rounds(spec in instance_spec(Sizes::new(4, 4, 3, 3)), good in any::<u64>()) {
        let sys = system(&spec);
        let n = sys.num_joint_states();
        let good = mask_set(n, good & ((1u64 << n) - 1));
        let pruning = goodreg::regulation::largest_forward_closed_subset(&sys, &good).unwrap();
        prop_assert!(pruning.rounds <= n);
        prop_assert!(pruning.kernel.is_subset(&good));
    }

    #[test]
    fn trajectories_stay_in_regulating_sets(spec in instance_spec(Sizes::new(4, 4, 3, 3)), good in any::<u64>(), steps in 0usize..60) {
        let sys = system(&spec);
        let n = sys.num_joint_states();
        let g = mask_set(n, good & ((1u64 << n) - 1));
        let sit = RegulationSituation::new(sys.clone(), g.clone()).unwrap();
        if let Some(r) = largest_regulating_set(&sit) {
            for i in r.iter() {
                let w0 = sys.joint_state(i).unwrap();
                for w in sys.trajectory(w0, steps).unwrap() {
                    let j = sys.index_of(w).unwrap();
                    prop_assert!(r.contains(j) && g.contains(j));
                }
            }
        }
    }

    #[test]
    fn update_is_monotone_and_distributes_over_union(spec in instance_spec(Sizes::new(1, 6, 3, 3)), b1 in any::<u64>(), b2 in any::<u64>()) {
        let (_, model) = random_instance(&spec).unwrap();
        let nz = model.num_states();
        let keep = (1u64 << nz) - 1;
        let b1 = mask_set(nz, b1 & keep);
        let b2 = mask_set(nz, b2 & keep);
        let bigger = b1.union(&b2);
        for a in 0..spec.actions {
            for s in 0..spec.sensors {
                let u1 = possibilistic_update(&model, &b1, a, s).unwrap();
                let u2 = possibilistic_update(&model, &b2, a, s).unwrap();
                let uu = possibilistic_update(&model, &bigger, a, s).unwrap();
                prop_assert!(u1.is_subset(&uu));
                prop_assert_eq!(uu, u1.union(&u2));
                let flags: Vec<bool> = (0..nz).map(|z| b1.contains(z)).collect();
                let oracle = oracle_update(&model, &flags, a, s);
                prop_assert_eq!((0..nz).map(|z| u1.contains(z)).collect::<Vec<_>>(), oracle);
            }
            let possible = subjectively_possible_sensors(&model, &b1, a).unwrap();
            prop_assert_eq!(possible.is_empty(), b1.is_empty());
        }
    }

    #[test]
    fn consistency_matches_oracle_for_arbitrary_models(
        spec in instance_spec(Sizes::new(4, 4, 3, 3)),
        model_states in 1usize..5,
        model_seed in any::<u64>(),
        psi_bits in any::<u64>(),
    ) {
        let (agent, _) = random_instance(&spec).unwrap();
        let model_spec = InstanceSpec::new(
            Sizes::new(1, model_states, spec.sensors, spec.actions),
            model_seed,
        );
        let (_, model) = random_instance(&model_spec).unwrap();
        let nx = agent.num_states();
        let psi_flags = slices(psi_bits, nx, model_states);
        let psi = BeliefMap::new(
            model_states,
            psi_flags
                .iter()
                .map(|row| StateSet::from_indices(model_states, (0..model_states).filter(|&z| row[z])))
                .collect(),
        )
        .unwrap();
        let bundle = InterpretationBundle::new(agent.clone(), model.clone(), psi, None).unwrap();
        prop_assert_eq!(
            is_consistent_belief_map(&bundle).is_ok(),
            oracle_consistent(&agent, &model, &psi_flags)
        );
    }

    #[test]
    fn empty_beliefs_impose_nothing(spec in instance_spec(Sizes::new(4, 4, 3, 3)), psi_bits in any::<u64>(), blank in 0usize..4) {
        // Clearing ψ(x) at one state cannot create a violation *at* that state.
        let sys = system(&spec);
        let (nx, ny) = (spec.agent_states, spec.env_states);
        let mut sets: Vec<StateSet> = slices(psi_bits, nx, ny)
            .iter()
            .map(|row| StateSet::from_indices(ny, (0..ny).filter(|&y| row[y])))
            .collect();
        let x = blank % nx;
        sets[x] = StateSet::empty(ny);
        let psi = BeliefMap::new(ny, sets).unwrap();
        let bundle = InterpretationBundle::new(sys.agent().clone(), sys.environment().clone(), psi, None).unwrap();
        if let Err(w) = is_consistent_belief_map(&bundle) {
            prop_assert_ne!(w.x, x);
        }
    }

    #[test]
    fn forgetting_keeps_consistency(spec in instance_spec(Sizes::new(4, 4, 3, 3)), good in any::<u64>()) {
        // Growing each ψ(x) to the full space keeps consistency; so does
        // replacing ψ by ψ' with ψ ⊆ ψ' when ψ' is itself closed.
        let sys = system(&spec);
        let n = sys.num_joint_states();
        let (nx, ny) = (spec.agent_states, spec.env_states);
        let g = mask_set(n, good & ((1u64 << n) - 1));
        let sit = RegulationSituation::new(sys.clone(), g).unwrap();
        if let Some(r) = largest_regulating_set(&sit) {
            let full = StateSet::full(n);
            for bigger in [r.clone(), full] {
                let bundle = InterpretationBundle::from_sets(&sys, &bigger, None).unwrap();
                prop_assert!(is_consistent_belief_map(&bundle).is_ok());
                let psi = bundle.psi();
                let smaller = belief_map_from_regulating_set(&r, nx, ny).unwrap();
                for x in 0..nx {
                    prop_assert!(smaller.get(x).is_subset(psi.get(x)));
                }
            }
        }
    }

    #[test]
    fn lemma_and_theorem_agree(spec in instance_spec(Sizes::new(4, 4, 3, 3)), g in any::<u64>(), r in any::<u64>()) {
        let (agent, env) = random_instance(&spec).unwrap();
        let n = spec.agent_states * spec.env_states;
        let keep = (1u64 << n) - 1;
        let (g, r) = (mask_set(n, g & keep), mask_set(n, r & keep));
        let lemma = verify_lemma1(&agent, &env, &r).unwrap();
        prop_assert!(lemma.agree);
        prop_assert_eq!(lemma.left, oracle_forward_closed(&agent, &env, mask_of(&r)));
        let theorem = verify_theorem1(&agent, &env, &g, &r).unwrap();
        prop_assert!(theorem.all_agree());
        let theorem_in_g = verify_theorem1(&agent, &env, &g, &r.intersection(&g)).unwrap();
        prop_assert!(theorem_in_g.all_agree());
    }

    #[test]
    fn belief_traces_never_leave_beliefs(spec in instance_spec(Sizes::new(4, 4, 3, 3)), good in any::<u64>()) {
        let sys = system(&spec);
        let n = sys.num_joint_states();
        let sit = RegulationSituation::new(sys.clone(), mask_set(n, good & ((1u64 << n) - 1))).unwrap();
        if let Some(r) = largest_regulating_set(&sit) {
            let bundle = InterpretationBundle::from_sets(&sys, &r, None).unwrap();
            for i in r.iter() {
                let trace = belief_trace(&bundle, sys.environment(), sys.joint_state(i).unwrap(), 30).unwrap();
                prop_assert_eq!(trace.violations(), 0);
            }
        }
    }

    #[test]
    fn scenario_round_trip(spec in instance_spec(Sizes::new(4, 4, 3, 3)), good in any::<u64>(), reg in any::<u64>(), psi in any::<u64>()) {
        use goodreg::scenario::{parse_scenario, Scenario, SetSpec};
        let sys = system(&spec);
        let n = sys.num_joint_states();
        let keep = (1u64 << n) - 1;
        let mut scenario = Scenario::new(sys.clone());
        scenario.good = Some(SetSpec::Pairs(mask_set(n, good & keep)));
        scenario.regulating = Some(if reg % 2 == 0 {
            SetSpec::EnvGoal(mask_set(spec.env_states, reg >> 1))
        } else {
            SetSpec::AgentGoal(mask_set(spec.agent_states, reg >> 1))
        });
        scenario.psi = Some(belief_map_from_regulating_set(&mask_set(n, psi & keep), spec.agent_states, spec.env_states).unwrap());
        let text = scenario.to_toml();
        prop_assert_eq!(parse_scenario(&text).unwrap(), scenario);
    }
}

#[test]
fn random_instance_golden() {
    // Frozen from the first run of seed 42 at sizes (2,2,2,2).
    let spec = InstanceSpec::new(Sizes::new(2, 2, 2, 2), 42);
    let (agent, env) = random_instance(&spec).unwrap();
    let readout: Vec<usize> = (0..2).map(|x| agent.readout(x).unwrap()).collect();
    let update: Vec<usize> = (0..2)
        .flat_map(|x| (0..2).map(move |s| (x, s)))
        .map(|(x, s)| agent.update(x, s).unwrap())
        .collect();
    let evolve: Vec<(usize, usize)> = (0..2)
        .flat_map(|y| (0..2).map(move |a| (y, a)))
        .map(|(y, a)| env.evolve(y, a).unwrap())
        .collect();
    assert_eq!(readout, vec![0, 1]);
    assert_eq!(update, vec![0, 1, 1, 0]);
    assert_eq!(evolve, vec![(0, 1), (1, 0), (1, 0), (0, 0)]);
}
