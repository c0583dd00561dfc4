//! Reads beliefs and norms off a regulating set and checks that they make
//! the agent a subjective good regulator.

use goodreg::{
    is_consistent_belief_map, is_subjective_good_regulator, largest_regulating_set, presets,
    InterpretationBundle, RegulationSituation,
};

fn main() -> goodreg::Result<()> {
    let sys = presets::toggle_world();
    let good = presets::toggle_world_goal();
    let sit = RegulationSituation::new(sys.clone(), good.clone())?;
    let r = largest_regulating_set(&sit).expect("toggle world regulates y0");

    let bundle = InterpretationBundle::from_sets(&sys, &r, Some(&good))?;
    let agent = bundle.agent();
    let model = bundle.model();
    let phi = bundle.phi().expect("built with a good set");
    for x in 0..agent.num_states() {
        let names = |set: &goodreg::StateSet| -> Vec<&str> {
            set.iter().map(|z| model.states()[z].as_str()).collect()
        };
        println!(
            "{:>3}: believes {:?}, ought {:?}",
            agent.states()[x],
            names(bundle.psi().get(x)),
            names(phi.get(x))
        );
    }

    match is_consistent_belief_map(&bundle) {
        Ok(()) => println!("beliefs are consistent"),
        Err(w) => println!("inconsistent: {w}"),
    }
    let report = is_subjective_good_regulator(&bundle)?;
    println!(
        "subjective good regulator: {} (admissible starts {:?})",
        report.holds, report.admissible_starts
    );
    Ok(())
}
