//! The `goodreg` command line.
//!
//! Everything runs through [`run`], which returns the exit code and the text
//! that would be written to stdout and stderr. The binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 usage, 2 parse/validation, 3 negative verdict,
//! 4 a cross-check disagreed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::interpretation::{
    belief_trace, is_consistent_belief_map, is_subjective_good_regulator,
    normative_map_from_good_set, triviality_report, InterpretationBundle, StateMap, Triviality,
};
use crate::machine::{CoupledSystem, JointState};
use crate::regulation::{
    is_regulating_set, largest_regulating_set, RegulationSituation, DEFAULT_ENUMERATION_CAP,
};
use crate::scenario::{parse_scenario, Scenario, FORMAT_VERSION};
use crate::set::StateSet;
use crate::verify::{
    lemma1_batch, lemma1_exhaustive_on, lemma1_on_system, theorem1_batch, theorem1_on_system,
    BatchConfig, LemmaReport, Sizes, TheoremReport,
};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_FALSIFIED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "goodreg",
    version,
    about = "Good regulators and their belief interpretations"
)]
pub struct Cli {
    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of randomized verification trials.
    #[arg(long, global = true, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the agent is a good regulator and report the largest
    /// regulating set.
    Check { file: PathBuf },
    /// Build the belief and normative maps from the regulating and good sets.
    Synthesize { file: PathBuf },
    /// Check a user-supplied belief map against a model.
    Interpret { file: PathBuf },
    /// Cross-check forward-closure against belief consistency, and
    /// regulation against subjective regulation.
    Verify {
        /// Scenario whose machines are checked; omit to use random instances.
        file: Option<PathBuf>,
        /// Use random instances even when a file is given.
        #[arg(long)]
        random: bool,
        /// Check the forward-closure correspondence on every subset of the
        /// scenario's joint space.
        #[arg(long)]
        exhaustive: bool,
        /// Upper bounds X,Y,S,A for random instance sizes.
        #[arg(long, default_value = "4,4,3,3")]
        max_sizes: Sizes,
    },
    /// Run the coupled system and track whether beliefs contain the true state.
    Trace {
        file: PathBuf,
        /// Start state as `agent-label,env-label`.
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Emit the coupled transition graph in DOT syntax.
    ExportDot { file: PathBuf },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::out(EXIT_OK, text),
                _ => Outcome::fail(EXIT_USAGE, text),
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check { file } => load(file).map(|s| cmd_check(&s, cli.output)),
        Command::Synthesize { file } => load(file).map(|s| cmd_synthesize(&s, cli.output)),
        Command::Interpret { file } => load(file).map(|s| cmd_interpret(&s, cli.output)),
        Command::Verify {
            file,
            random,
            exhaustive,
            max_sizes,
        } => {
            let options = VerifyOptions {
                trials: cli.trials,
                seed: cli.seed,
                exhaustive: *exhaustive,
                max_sizes: *max_sizes,
            };
            match file {
                Some(path) if !random => {
                    load(path).map(|s| cmd_verify(Some(&s), &options, cli.output))
                }
                _ => Ok(cmd_verify(None, &options, cli.output)),
            }
        }
        Command::Trace { file, start, steps } => {
            load(file).map(|s| cmd_trace(&s, start, *steps, cli.output))
        }
        Command::ExportDot { file } => {
            load(file).map(|s| Outcome::out(EXIT_OK, cmd_export_dot(&s)))
        }
    };
    result.unwrap_or_else(|failure| failure)
}

fn load(path: &Path) -> Result<Scenario, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Outcome::fail(
            EXIT_USAGE,
            format!("error: cannot read {}: {e}", path.display()),
        )
    })?;
    parse_scenario(&text).map_err(|e| {
        Outcome::fail(
            EXIT_PARSE,
            format!("error[{}]: {}: {e}", e.code(), path.display()),
        )
    })
}

pub type LabelTable = BTreeMap<String, Vec<String>>;

/// JSON report. Every key is always present; sections that a command does
/// not compute are `null`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AnalysisReport {
    pub format_version: u32,
    pub verdict: Option<VerdictReport>,
    pub largest_r: Option<Vec<(String, String)>>,
    pub psi: Option<LabelTable>,
    pub phi: Option<LabelTable>,
    pub triviality: Option<Triviality>,
    pub verification: Option<VerificationReport>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerdictReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub good_regulator: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regulating_set_source: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regulating_set: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_regulating_set: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subjective_good_regulator: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible_x0: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normative_violations: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub mode: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_sizes: Option<Sizes>,
    pub lemma1: LemmaReport,
    pub theorem1: TheoremReport,
    pub all_agree: bool,
}

impl AnalysisReport {
    fn new() -> Self {
        Self {
            format_version: FORMAT_VERSION,
            ..Self::default()
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(v) = &self.verdict {
            let flag = |b: bool| if b { "yes" } else { "no" };
            if let Some(b) = v.good_regulator {
                writeln!(out, "good regulator: {}", flag(b)).unwrap();
            }
            if let Some(src) = v.regulating_set_source {
                writeln!(
                    out,
                    "regulating set ({src}): {}",
                    pairs_text(v.regulating_set.as_deref().unwrap_or(&[]))
                )
                .unwrap();
            }
            if let Some(b) = v.is_regulating_set {
                writeln!(out, "is regulating set: {}", flag(b)).unwrap();
            }
            if let Some(b) = v.consistent {
                writeln!(out, "consistent belief map: {}", flag(b)).unwrap();
            }
            if let Some(w) = &v.witness {
                writeln!(out, "witness: {w}").unwrap();
            }
            if let Some(b) = v.subjective_good_regulator {
                writeln!(out, "subjective good regulator: {}", flag(b)).unwrap();
            }
            if let Some(xs) = &v.admissible_x0 {
                writeln!(out, "admissible x0: {}", list_text(xs)).unwrap();
            }
            if let Some(xs) = &v.normative_violations {
                writeln!(out, "normative violations: {}", list_text(xs)).unwrap();
            }
            if let Some(e) = &v.explanation {
                writeln!(out, "note: {e}").unwrap();
            }
        }
        if let Some(r) = &self.largest_r {
            writeln!(out, "largest regulating set: {}", pairs_text(r)).unwrap();
        }
        for (name, table) in [("psi", &self.psi), ("phi", &self.phi)] {
            if let Some(table) = table {
                writeln!(out, "{name}:").unwrap();
                for (x, ys) in table {
                    writeln!(out, "  {x}: {}", list_text(ys)).unwrap();
                }
            }
        }
        if let Some(t) = &self.triviality {
            writeln!(
                out,
                "triviality: distinct={} constant={} absurd={} cardinality min={} max={} mean={:.3}",
                t.distinct_beliefs,
                t.constant,
                t.absurd_states,
                t.min_cardinality,
                t.max_cardinality,
                t.mean_cardinality
            )
            .unwrap();
        }
        if let Some(v) = &self.verification {
            writeln!(
                out,
                "verification ({}, seed {}, trials {}):",
                v.mode, v.seed, v.trials
            )
            .unwrap();
            let l = &v.lemma1.tally;
            writeln!(
                out,
                "  lemma: checked={} agree={} disagree={} forward_closed={}",
                l.checked, l.agree, l.disagree, l.left_true
            )
            .unwrap();
            let t = &v.theorem1;
            writeln!(
                out,
                "  theorem: checked={} agree={} disagree={} regulating={} correlated={}",
                t.tally.checked,
                t.tally.agree,
                t.tally.disagree,
                t.tally.left_true,
                t.correlated_trials
            )
            .unwrap();
            for (name, c) in [
                ("forward-closed ~ consistent", &t.forward_closed),
                ("non-empty ~ some belief", &t.non_empty),
                ("R in G ~ psi in phi", &t.contained),
            ] {
                writeln!(out, "    {name}: agree={} disagree={}", c.agree, c.disagree).unwrap();
            }
            writeln!(out, "  all agree: {}", v.all_agree).unwrap();
        }
        out
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

fn list_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn pairs_text(pairs: &[(String, String)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
    format!("{{{}}}", inner.join(", "))
}

fn sorted(mut labels: Vec<String>) -> Vec<String> {
    labels.sort();
    labels
}

fn labels_of(labels: &[String], set: &StateSet) -> Vec<String> {
    sorted(set.iter().map(|i| labels[i].clone()).collect())
}

fn pair_labels(sys: &CoupledSystem, set: &StateSet) -> Vec<(String, String)> {
    let xs = sys.agent().states();
    let ys = sys.environment().states();
    let mut pairs: Vec<(String, String)> = set
        .iter()
        .map(|i| {
            let w = sys.joint_state(i).expect("in range");
            (xs[w.x].clone(), ys[w.y].clone())
        })
        .collect();
    pairs.sort();
    pairs
}

fn label_table<Role>(map: &StateMap<Role>, xs: &[String], zs: &[String]) -> LabelTable {
    xs.iter()
        .enumerate()
        .map(|(x, label)| (label.clone(), labels_of(zs, map.get(x))))
        .collect()
}

fn require_good(scenario: &Scenario, command: &str) -> Result<StateSet, Outcome> {
    scenario.good_set().ok_or_else(|| {
        Outcome::fail(
            EXIT_USAGE,
            format!("error: `{command}` needs a [good] section in the scenario"),
        )
    })
}

pub fn cmd_check(scenario: &Scenario, format: OutputFormat) -> Outcome {
    let good = match require_good(scenario, "check") {
        Ok(g) => g,
        Err(o) => return o,
    };
    let sys = &scenario.system;
    let sit = RegulationSituation::new(sys.clone(), good).expect("validated size");
    let largest = largest_regulating_set(&sit);
    let mut report = AnalysisReport::new();
    report.verdict = Some(VerdictReport {
        good_regulator: Some(largest.is_some()),
        ..VerdictReport::default()
    });
    report.largest_r = largest.as_ref().map(|r| pair_labels(sys, r));
    let code = if largest.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Outcome::out(code, report.render(format))
}

pub fn cmd_synthesize(scenario: &Scenario, format: OutputFormat) -> Outcome {
    let good = match require_good(scenario, "synthesize") {
        Ok(g) => g,
        Err(o) => return o,
    };
    let sys = &scenario.system;
    let sit = RegulationSituation::new(sys.clone(), good.clone()).expect("validated size");
    let largest = largest_regulating_set(&sit);
    let mut report = AnalysisReport::new();
    report.largest_r = largest.as_ref().map(|r| pair_labels(sys, r));

    let (regulating, source) = match (scenario.regulating_set(), &largest) {
        (Some(r), _) => (r, "supplied"),
        (None, Some(r)) => (r.clone(), "largest"),
        (None, None) => {
            report.verdict = Some(VerdictReport {
                good_regulator: Some(false),
                explanation: Some(
                    "no non-empty forward-closed subset of the good set exists and no regulating set was supplied"
                        .into(),
                ),
                ..VerdictReport::default()
            });
            return Outcome::out(EXIT_NEGATIVE, report.render(format));
        }
    };

    let bundle =
        InterpretationBundle::from_sets(sys, &regulating, Some(&good)).expect("validated size");
    let xs = sys.agent().states();
    let ys = sys.environment().states();
    let is_regulating = is_regulating_set(&sit, &regulating).expect("validated size");
    let mut verdict = VerdictReport {
        good_regulator: Some(largest.is_some()),
        regulating_set_source: Some(source),
        regulating_set: Some(pair_labels(sys, &regulating)),
        is_regulating_set: Some(is_regulating),
        ..VerdictReport::default()
    };
    match is_subjective_good_regulator(&bundle) {
        Ok(sub) => {
            verdict.consistent = Some(true);
            verdict.subjective_good_regulator = Some(sub.holds);
            verdict.admissible_x0 = Some(sorted(
                sub.admissible_starts
                    .iter()
                    .map(|&x| xs[x].clone())
                    .collect(),
            ));
            verdict.normative_violations = Some(sorted(
                sub.violations.iter().map(|&x| xs[x].clone()).collect(),
            ));
        }
        Err(Error::InconsistentBeliefs(w)) => {
            verdict.consistent = Some(false);
            verdict.subjective_good_regulator = Some(false);
            verdict.witness = Some(witness_text(scenario, w));
        }
        Err(e) => unreachable!("bundle has φ: {e}"),
    }
    report.verdict = Some(verdict);
    report.psi = Some(label_table(bundle.psi(), xs, ys));
    report.phi = bundle.phi().map(|phi| label_table(phi, xs, ys));
    report.triviality = Some(triviality_report(bundle.psi()));
    let code = if is_regulating {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Outcome::out(code, report.render(format))
}

fn witness_text(scenario: &Scenario, w: crate::interpretation::ConsistencyWitness) -> String {
    let xs = scenario.system.agent().states();
    let ss = scenario.system.interface().sensors();
    let zs = scenario.belief_model().states();
    format!(
        "at agent state {} with sensor {}, model state {} is possible but not believed",
        xs[w.x], ss[w.s], zs[w.z_next]
    )
}

pub fn cmd_interpret(scenario: &Scenario, format: OutputFormat) -> Outcome {
    let Some(psi) = scenario.psi.clone() else {
        return Outcome::fail(
            EXIT_USAGE,
            "error: `interpret` needs a [psi] section in the scenario",
        );
    };
    let sys = &scenario.system;
    let phi = match (&scenario.phi, &scenario.model, scenario.good_set()) {
        (Some(phi), _, _) => Some(phi.clone()),
        (None, None, Some(g)) => Some(
            normative_map_from_good_set(
                &g,
                sys.agent().num_states(),
                sys.environment().num_states(),
            )
            .expect("validated size"),
        ),
        _ => None,
    };
    let model = scenario.belief_model().clone();
    let bundle =
        InterpretationBundle::new(sys.agent().clone(), model, psi, phi).expect("validated sizes");
    let xs = sys.agent().states();
    let zs = scenario.belief_model().states();

    let mut verdict = VerdictReport::default();
    let mut ok = match is_consistent_belief_map(&bundle) {
        Ok(()) => {
            verdict.consistent = Some(true);
            true
        }
        Err(w) => {
            verdict.consistent = Some(false);
            verdict.witness = Some(witness_text(scenario, w));
            false
        }
    };
    if ok && bundle.phi().is_some() {
        let sub = is_subjective_good_regulator(&bundle).expect("consistent with φ");
        verdict.subjective_good_regulator = Some(sub.holds);
        verdict.admissible_x0 = Some(sorted(
            sub.admissible_starts
                .iter()
                .map(|&x| xs[x].clone())
                .collect(),
        ));
        verdict.normative_violations = Some(sorted(
            sub.violations.iter().map(|&x| xs[x].clone()).collect(),
        ));
        ok = sub.holds;
    }
    let mut report = AnalysisReport::new();
    report.verdict = Some(verdict);
    report.psi = Some(label_table(bundle.psi(), xs, zs));
    report.phi = bundle.phi().map(|phi| label_table(phi, xs, zs));
    report.triviality = Some(triviality_report(bundle.psi()));
    Outcome::out(
        if ok { EXIT_OK } else { EXIT_NEGATIVE },
        report.render(format),
    )
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub max_sizes: Sizes,
}

pub fn cmd_verify(
    scenario: Option<&Scenario>,
    options: &VerifyOptions,
    format: OutputFormat,
) -> Outcome {
    let result = match scenario {
        None => verify_random(options),
        Some(s) => verify_scenario(s, options),
    };
    let verification = match result {
        Ok(v) => v,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let all_agree = verification.all_agree;
    let counterexample = verification
        .lemma1
        .counterexample
        .clone()
        .or_else(|| verification.theorem1.counterexample.clone());
    let mut report = AnalysisReport::new();
    report.verification = Some(verification);
    let mut outcome = Outcome::out(
        if all_agree { EXIT_OK } else { EXIT_FALSIFIED },
        report.render(format),
    );
    if let Some(c) = counterexample {
        outcome.stderr = format!(
            "counterexample:\n{}\n",
            serde_json::to_string_pretty(&c).expect("serializes")
        );
    }
    outcome
}

fn verify_random(options: &VerifyOptions) -> crate::Result<VerificationReport> {
    let config = BatchConfig {
        trials: options.trials,
        seed: options.seed,
        max_sizes: options.max_sizes,
    };
    let lemma1 = lemma1_batch(&config)?;
    let theorem1 = theorem1_batch(&config)?;
    Ok(VerificationReport {
        mode: "random",
        seed: options.seed,
        trials: options.trials,
        exhaustive: false,
        max_sizes: Some(options.max_sizes),
        all_agree: lemma1.tally.disagree == 0 && theorem1.all_agree(),
        lemma1,
        theorem1,
    })
}

fn verify_scenario(
    scenario: &Scenario,
    options: &VerifyOptions,
) -> crate::Result<VerificationReport> {
    let sys = &scenario.system;
    let (agent, env) = (sys.agent(), sys.environment());
    let lemma1 = if options.exhaustive {
        let n = sys.num_joint_states();
        if n > DEFAULT_ENUMERATION_CAP {
            return Err(Error::Capacity {
                universe: n,
                cap: DEFAULT_ENUMERATION_CAP,
            });
        }
        let mut report = LemmaReport::default();
        lemma1_exhaustive_on(agent, env, None, &mut report)?;
        report
    } else {
        lemma1_on_system(agent, env, options.trials, options.seed)?
    };
    let good = scenario.good_set();
    let theorem1 = theorem1_on_system(agent, env, good.as_ref(), options.trials, options.seed)?;
    Ok(VerificationReport {
        mode: "scenario",
        seed: options.seed,
        trials: options.trials,
        exhaustive: options.exhaustive,
        max_sizes: None,
        all_agree: lemma1.tally.disagree == 0 && theorem1.all_agree(),
        lemma1,
        theorem1,
    })
}

#[derive(Debug, Serialize)]
struct TraceLine {
    t: usize,
    x: String,
    y: String,
    psi: Vec<String>,
    contained: bool,
}

#[derive(Debug, Serialize)]
struct TraceReport {
    format_version: u32,
    trace: Vec<TraceLine>,
    violations: usize,
}

pub fn cmd_trace(scenario: &Scenario, start: &str, steps: usize, format: OutputFormat) -> Outcome {
    let sys = &scenario.system;
    let Some((xl, yl)) = start.split_once(',') else {
        return Outcome::fail(EXIT_USAGE, "error: --start must be `agent-label,env-label`");
    };
    let (Some(x), Some(y)) = (
        sys.agent().state_index(xl.trim()),
        sys.environment().state_index(yl.trim()),
    ) else {
        return Outcome::fail(EXIT_USAGE, format!("error: unknown start state `{start}`"));
    };

    let bundle = if let Some(psi) = &scenario.psi {
        if scenario.belief_model().num_states() != sys.environment().num_states() {
            return Outcome::fail(
                EXIT_USAGE,
                "error: `trace` compares beliefs with environment states; the model must match the environment",
            );
        }
        InterpretationBundle::new(sys.agent().clone(), scenario.belief_model().clone(), psi.clone(), None)
    } else {
        let regulating = match scenario.regulating_set() {
            Some(r) => r,
            None => {
                let good = match require_good(scenario, "trace") {
                    Ok(g) => g,
                    Err(o) => return o,
                };
                let sit = RegulationSituation::new(sys.clone(), good).expect("validated size");
                match largest_regulating_set(&sit) {
                    Some(r) => r,
                    None => {
                        return Outcome::fail(
                            EXIT_NEGATIVE,
                            "error: not a good regulator; no belief map to trace",
                        )
                    }
                }
            }
        };
        InterpretationBundle::from_sets(sys, &regulating, None)
    }
    .expect("validated sizes");

    let trace = match belief_trace(&bundle, sys.environment(), JointState::new(x, y), steps) {
        Ok(t) => t,
        Err(Error::StartOutsideBelief { .. }) => {
            return Outcome::fail(EXIT_NEGATIVE, "error: start state outside believed set")
        }
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let xs = sys.agent().states();
    let ys = sys.environment().states();
    let lines: Vec<TraceLine> = trace
        .records
        .iter()
        .map(|r| TraceLine {
            t: r.t,
            x: xs[r.state.x].clone(),
            y: ys[r.state.y].clone(),
            psi: labels_of(ys, &r.believed),
            contained: r.contained,
        })
        .collect();
    let violations = trace.violations();
    let stdout = match format {
        OutputFormat::Text => lines
            .iter()
            .map(|l| {
                format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    l.t,
                    l.x,
                    l.y,
                    list_text(&l.psi),
                    l.contained
                )
            })
            .collect(),
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(&TraceReport {
                format_version: FORMAT_VERSION,
                trace: lines,
                violations,
            })
            .expect("serializes");
            text.push('\n');
            text
        }
    };
    Outcome::out(
        if violations == 0 {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        },
        stdout,
    )
}

fn dot_escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of the coupled dynamics, nodes in x-major order. Nodes in
/// the good set are outlined; nodes in the regulating set (supplied, or the
/// largest one) are filled.
pub fn cmd_export_dot(scenario: &Scenario) -> String {
    let sys = &scenario.system;
    let good = scenario.good_set();
    let regulating = scenario.regulating_set().or_else(|| {
        good.as_ref().and_then(|g| {
            largest_regulating_set(
                &RegulationSituation::new(sys.clone(), g.clone()).expect("validated size"),
            )
        })
    });
    let xs = sys.agent().states();
    let ys = sys.environment().states();
    let actions = sys.interface().actions();
    let sensors = sys.interface().sensors();

    let mut out = String::from("digraph coupled {\n  node [shape=ellipse];\n");
    for i in 0..sys.num_joint_states() {
        let w = sys.joint_state(i).expect("in range");
        let mut attrs = vec![format!(
            "label=\"{},{}\"",
            dot_escape(&xs[w.x]),
            dot_escape(&ys[w.y])
        )];
        if good.as_ref().is_some_and(|g| g.contains(i)) {
            attrs.push("penwidth=2".into());
        }
        if regulating.as_ref().is_some_and(|r| r.contains(i)) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightblue".into());
        }
        writeln!(out, "  n{i} [{}];", attrs.join(", ")).unwrap();
    }
    for i in 0..sys.num_joint_states() {
        let t = sys
            .step_detailed(sys.joint_state(i).expect("in range"))
            .expect("in range");
        let j = sys.index_of(t.to).expect("in range");
        writeln!(
            out,
            "  n{i} -> n{j} [label=\"{}/{}\"];",
            dot_escape(&actions[t.action]),
            dot_escape(&sensors[t.sensor])
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
