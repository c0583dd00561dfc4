//! Interprets the toggle-world agent against a model other than its real
//! environment: a lamp that is always dark. Then breaks the belief map on
//! purpose to show a consistency witness.

use goodreg::scenario::parse_scenario;
use goodreg::{
    is_consistent_belief_map, is_subjective_good_regulator, possibilistic_update,
    subjectively_possible_sensors, BeliefMap, InterpretationBundle, StateSet,
};

const LAMP: &str = include_str!("../fixtures/lamp_model.toml");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = parse_scenario(LAMP)?;
    let agent = scenario.system.agent().clone();
    let model = scenario.belief_model().clone();
    let psi = scenario.psi.clone().expect("fixture has psi");

    let dark = StateSet::full(1);
    let stay = agent.interface().action_index("stay").unwrap();
    let expected = subjectively_possible_sensors(&model, &dark, stay)?;
    println!("sensors the lamp model allows after `stay`: {expected:?}");
    for (s, label) in agent.interface().sensors().iter().enumerate() {
        println!(
            "  update(dark, stay, {label}) = {:?}",
            possibilistic_update(&model, &dark, stay, s)?
        );
    }

    let bundle =
        InterpretationBundle::new(agent.clone(), model.clone(), psi, scenario.phi.clone())?;
    let report = is_subjective_good_regulator(&bundle)?;
    println!("subjective good regulator: {}", report.holds);

    let broken = BeliefMap::new(1, vec![StateSet::empty(1), StateSet::full(1)])?;
    let bundle = InterpretationBundle::new(agent, model, broken, None)?;
    if let Err(w) = is_consistent_belief_map(&bundle) {
        println!("swapped beliefs are inconsistent: {w}");
    }
    Ok(())
}
