//! Builds a scenario in code, writes it as TOML and reads it back.

use goodreg::scenario::{parse_scenario, serialize_scenario, Scenario, SetSpec};
use goodreg::{presets, StateSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut scenario = Scenario::new(presets::toggle_world());
    scenario.good = Some(SetSpec::EnvGoal(StateSet::from_indices(2, [0])));

    let text = serialize_scenario(&scenario);
    println!("{text}");
    let back = parse_scenario(&text)?;
    assert_eq!(back, scenario);

    match parse_scenario(&text.replace("\"y0\"]", "\"y9\"]")) {
        Err(e) => println!("error[{}]: {e}", e.code()),
        Ok(_) => println!("unexpectedly parsed"),
    }
    Ok(())
}
