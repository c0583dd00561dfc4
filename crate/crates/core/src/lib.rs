//! Good regulators and the belief interpretations they admit.
//!
//! An agent (a Moore machine) coupled to an environment (a Mealy machine)
//! forms a closed deterministic system on `X×Y`. Given a good set `G`, the
//! agent is a good regulator when some non-empty forward-closed `R ⊆ G`
//! exists. Every such `R` can be read back as a consistent possibilistic
//! belief map `ψ`, and `G` as a normative map `φ`, under which the agent is a
//! *subjective* good regulator. This crate computes all of these objects and
//! cross-checks the correspondence by brute force.
//!
//! Start with [`presets::toggle_world`] or the programs in `examples/`.

pub mod cli;
pub mod error;
pub mod interpretation;
pub mod machine;
pub mod presets;
pub mod regulation;
pub mod scenario;
pub mod set;
pub mod verify;

pub use error::{Error, Result};
pub use interpretation::{
    belief_map_from_regulating_set, belief_trace, is_consistent_belief_map,
    is_subjective_good_regulator, normative_map_from_good_set, possibilistic_update,
    subjectively_possible_sensors, triviality_report, BeliefMap, BeliefTrace, InterpretationBundle,
    NormativeMap, Triviality,
};
pub use machine::{couple, CoupledSystem, Interface, JointState, MealyMachine, MooreMachine};
pub use regulation::{
    enumerate_forward_closed_subsets, is_forward_closed, is_good_regulator, is_regulating_set,
    largest_regulating_set, lift_agent_goal, lift_environment_goal, RegulationSituation,
};
pub use set::StateSet;
