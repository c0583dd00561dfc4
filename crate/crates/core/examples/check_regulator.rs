//! Is the toggle-world agent a good regulator for "keep the environment in
//! y0"? Prints the largest regulating set and the pruning that found it.
//!
//!     cargo run --example check_regulator

use goodreg::regulation::largest_forward_closed_subset;
use goodreg::{is_forward_closed, largest_regulating_set, presets, RegulationSituation};

fn main() -> goodreg::Result<()> {
    let sys = presets::toggle_world();
    let good = presets::toggle_world_goal();

    println!("transitions:");
    for i in 0..sys.num_joint_states() {
        let t = sys.step_detailed(sys.joint_state(i)?)?;
        let a = &sys.interface().actions()[t.action];
        let s = &sys.interface().sensors()[t.sensor];
        println!("  {:?} --{a}/{s}--> {:?}", t.from, t.to);
    }

    println!("G is forward-closed: {}", is_forward_closed(&sys, &good)?);
    let pruning = largest_forward_closed_subset(&sys, &good)?;
    println!("pruning removed states in {} round(s)", pruning.rounds);

    let sit = RegulationSituation::new(sys.clone(), good)?;
    match largest_regulating_set(&sit) {
        Some(r) => {
            let members: Vec<_> = r.iter().map(|i| sys.joint_state(i).unwrap()).collect();
            println!("good regulator, largest R = {members:?}");
        }
        None => println!("not a good regulator"),
    }
    Ok(())
}
