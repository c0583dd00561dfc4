//! Writes the coupled transition graph of a scenario file as Graphviz DOT.
//!
//!     cargo run --example export_dot -- fixtures/doorstop.toml | dot -Tsvg > doorstop.svg

use goodreg::cli::cmd_export_dot;
use goodreg::scenario::parse_scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/toggle_world.toml").to_string()
    });
    let scenario = parse_scenario(&std::fs::read_to_string(&path)?)?;
    print!("{}", cmd_export_dot(&scenario));
    Ok(())
}
