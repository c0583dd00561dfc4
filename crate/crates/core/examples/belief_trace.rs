use goodreg::{
    belief_trace, largest_regulating_set, presets, InterpretationBundle, JointState,
    RegulationSituation,
};

// Runs the toggle world from inside R and reports, step by step, whether the
// true environment state is among the agent's beliefs.
fn main() -> goodreg::Result<()> {
    let sys = presets::toggle_world();
    let sit = RegulationSituation::new(sys.clone(), presets::toggle_world_goal())?;
    let r = largest_regulating_set(&sit).unwrap();
    let bundle = InterpretationBundle::from_sets(&sys, &r, None)?;

    let trace = belief_trace(&bundle, sys.environment(), JointState::new(0, 0), 5)?;
    for rec in &trace.records {
        println!(
            "t={} {:?} believed={:?} ok={}",
            rec.t, rec.state, rec.believed, rec.contained
        );
    }
    println!("violations: {}", trace.violations());

    // (x1, y1) is outside R, so x1 believes nothing and the trace is refused.
    match belief_trace(&bundle, sys.environment(), JointState::new(1, 1), 5) {
        Err(e) => println!("from (x1, y1): {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
