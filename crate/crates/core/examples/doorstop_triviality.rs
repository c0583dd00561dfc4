//! A doorstop regulates too. Its belief map has one distinct value, which the
//! triviality report makes visible.

use goodreg::{
    largest_regulating_set, presets, triviality_report, InterpretationBundle, RegulationSituation,
};

fn main() -> goodreg::Result<()> {
    let sys = presets::doorstop();
    let good = presets::doorstop_goal();
    let sit = RegulationSituation::new(sys.clone(), good.clone())?;
    let r = largest_regulating_set(&sit).expect("y0 and y1 cycle inside G");

    let bundle = InterpretationBundle::from_sets(&sys, &r, Some(&good))?;
    println!("psi(*) = {:?}", bundle.psi().get(0));
    println!("phi(*) = {:?}", bundle.phi().unwrap().get(0));

    let report = triviality_report(bundle.psi());
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    if report.constant {
        println!("beliefs do not depend on agent state");
    }
    Ok(())
}
