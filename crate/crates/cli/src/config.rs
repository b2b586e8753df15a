//! Run configuration files.
//!
//! A config is TOML with a top-level `command` and one section named after
//! it:
//!
//! ```toml
//! command = "simulate"        # or "analyze", "table"
//! output = "results.csv"      # optional
//! threads = "auto"            # or a count
//!
//! [scenario]
//! name = "ar1-study"
//! ns = [100, 500]             # or a single `n`
//! ts = [20, 40]               # or a single `t`
//! k = 5
//! reps = 5000
//! alpha = 0.05
//! seed = 7
//! fixed_effects = false
//! x_next = "redraw"           # or "fixed"
//! ci = "symmetric"            # or "strict-paper"
//! slopes = { kind = "half-split", lo = 1.0, hi = 2.0 }
//! errors = { kind = "ar1", phi = 0.3 }
//! sigma = { kind = "banded", bandwidth = "auto" }
//! demean_adjust = false       # defaults to `fixed_effects`
//! kernel = { shape = "bartlett", b_prime = 1.0 }
//!
//! [analyze]
//! panel = "panel.csv"
//! predict = "predict.csv"
//! sigma = "banded"            # banded | ar1 | hetero | hac | true
//! bandwidth = "auto"
//! alpha = 0.05
//! fixed_effects = false
//! strict_paper_ci = false
//!
//! [table]
//! id = "T3"
//! reps = 5000
//! seed = 20240601
//! ```
//!
//! Every field except `command` (and the analyze file paths) has a default.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use panel_msfe::covariance::{Bandwidth, ScaleFn, SigmaSpec, SigmaVariant};
use panel_msfe::inference::{CiMode, KernelSpec};
use panel_msfe::operator::{CrossCovariance, TimeCovariance};
use panel_msfe::simulation::{ErrorDesign, ScenarioConfig, SlopeDesign, StudyGrid, XNextMode};
use panel_msfe::tables::TableId;

use crate::error::{CliError, Result};

pub const DEFAULT_N: usize = 100;
pub const DEFAULT_T: usize = 40;
pub const DEFAULT_TABLE_SEED: u64 = 20240601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Threads {
    #[default]
    Auto,
    Count(usize),
}

/// Covariance estimator choice for real data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaChoice {
    #[default]
    Banded,
    Ar1,
    Hetero,
    Hac,
    /// Identity covariance, as if the errors were known to be white.
    True,
}

impl std::str::FromStr for SigmaChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "banded" => Ok(Self::Banded),
            "ar1" => Ok(Self::Ar1),
            "hetero" => Ok(Self::Hetero),
            "hac" => Ok(Self::Hac),
            "true" => Ok(Self::True),
            _ => Err(format!(
                "unknown estimator `{s}`; expected banded, ar1, hetero, hac or true"
            )),
        }
    }
}

impl SigmaChoice {
    pub fn spec(self, bandwidth: Bandwidth, fixed_effects: bool) -> SigmaSpec {
        let variant = match self {
            SigmaChoice::Banded => SigmaVariant::Banded { bandwidth },
            SigmaChoice::Ar1 => SigmaVariant::Ar1Parametric,
            SigmaChoice::Hetero => SigmaVariant::HeteroScaled {
                scale: ScaleFn::AbsComponent { component: 0 },
                inner: Box::new(SigmaVariant::Banded { bandwidth }),
            },
            SigmaChoice::Hac => SigmaVariant::Hac { bandwidth },
            SigmaChoice::True => SigmaVariant::TrueSigma {
                time: TimeCovariance::Identity,
                cross: CrossCovariance::Identity,
            },
        };
        SigmaSpec::new(variant).with_demean_adjust(fixed_effects)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    /// Template for every cell; `n` and `t_len` are the first grid values.
    pub scenario: ScenarioConfig,
    pub ns: Vec<usize>,
    pub ts: Vec<usize>,
}

impl StudyConfig {
    pub fn grid(&self) -> StudyGrid {
        StudyGrid {
            base: self.scenario.clone(),
            ns: self.ns.clone(),
            ts: self.ts.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeConfig {
    pub panel: PathBuf,
    pub predict: PathBuf,
    pub sigma: SigmaChoice,
    pub bandwidth: Bandwidth,
    pub alpha: f64,
    pub fixed_effects: bool,
    pub ci_mode: CiMode,
}

impl AnalyzeConfig {
    pub fn new(panel: impl Into<PathBuf>, predict: impl Into<PathBuf>) -> Self {
        Self {
            panel: panel.into(),
            predict: predict.into(),
            sigma: SigmaChoice::Banded,
            bandwidth: Bandwidth::Auto,
            alpha: 0.05,
            fixed_effects: false,
            ci_mode: CiMode::Symmetric,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableConfig {
    pub id: TableId,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Simulate(StudyConfig),
    Analyze(AnalyzeConfig),
    Table(TableConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub threads: Threads,
}

impl RunConfig {
    /// Checks that every referenced input file exists.
    pub fn check_inputs(&self) -> Result<()> {
        if let Command::Analyze(a) = &self.command {
            for p in [&a.panel, &a.predict] {
                if !p.exists() {
                    return Err(CliError::Validation(format!(
                        "input file {} does not exist",
                        p.display()
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---- file representation ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum ThreadsRepr {
    Count(usize),
    Word(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threads: Option<ThreadsRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario: Option<FileScenario>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analyze: Option<FileAnalyze>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<FileTable>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileScenario {
    name: Option<String>,
    n: Option<usize>,
    t: Option<usize>,
    ns: Option<Vec<usize>>,
    ts: Option<Vec<usize>>,
    k: Option<usize>,
    reps: Option<usize>,
    alpha: Option<f64>,
    seed: Option<u64>,
    fixed_effects: Option<bool>,
    x_next: Option<XNextMode>,
    ci: Option<CiMode>,
    slopes: Option<SlopeDesign>,
    errors: Option<ErrorDesign>,
    sigma: Option<SigmaVariant>,
    demean_adjust: Option<bool>,
    kernel: Option<KernelSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileAnalyze {
    panel: PathBuf,
    predict: PathBuf,
    sigma: Option<SigmaChoice>,
    bandwidth: Option<Bandwidth>,
    alpha: Option<f64>,
    fixed_effects: Option<bool>,
    strict_paper_ci: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTable {
    id: String,
    reps: Option<usize>,
    seed: Option<u64>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses and validates a config, filling in every default.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let file: FileConfig = toml::from_str(text).map_err(|e| CliError::Parse {
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(1),
        message: e.message().to_string(),
    })?;
    let invalid = |m: String| Err(CliError::Validation(m));

    let threads = match file.threads {
        None => Threads::Auto,
        Some(ThreadsRepr::Word(w)) if w == "auto" => Threads::Auto,
        Some(ThreadsRepr::Count(0)) => return invalid("threads must be >= 1".into()),
        Some(ThreadsRepr::Count(c)) => Threads::Count(c),
        Some(ThreadsRepr::Word(w)) => {
            return invalid(format!("threads must be a count or \"auto\", not \"{w}\""))
        }
    };

    let sections = [
        file.scenario.is_some(),
        file.analyze.is_some(),
        file.table.is_some(),
    ];
    let command = match file.command.as_str() {
        "simulate" => {
            if sections[1] || sections[2] {
                return invalid("a simulate config takes only a [scenario] section".into());
            }
            Command::Simulate(study(file.scenario.unwrap_or_default())?)
        }
        "analyze" => {
            if sections[0] || sections[2] {
                return invalid("an analyze config takes only an [analyze] section".into());
            }
            let Some(a) = file.analyze else {
                return invalid(
                    "command \"analyze\" needs an [analyze] section with panel and predict".into(),
                );
            };
            let alpha = a.alpha.unwrap_or(0.05);
            if !(alpha > 0.0 && alpha < 1.0) {
                return invalid(format!("alpha {alpha} not in (0,1)"));
            }
            Command::Analyze(AnalyzeConfig {
                panel: a.panel,
                predict: a.predict,
                sigma: a.sigma.unwrap_or_default(),
                bandwidth: a.bandwidth.unwrap_or(Bandwidth::Auto),
                alpha,
                fixed_effects: a.fixed_effects.unwrap_or(false),
                ci_mode: if a.strict_paper_ci.unwrap_or(false) {
                    CiMode::StrictPaper
                } else {
                    CiMode::Symmetric
                },
            })
        }
        "table" => {
            if sections[0] || sections[1] {
                return invalid("a table config takes only a [table] section".into());
            }
            let Some(t) = file.table else {
                return invalid("command \"table\" needs a [table] section with an id".into());
            };
            let id: TableId =
                t.id.parse()
                    .map_err(|_| CliError::UnknownTable(t.id.clone()))?;
            let reps = t.reps.unwrap_or(5000);
            if reps == 0 {
                return invalid("reps must be >= 1".into());
            }
            Command::Table(TableConfig {
                id,
                reps,
                seed: t.seed.unwrap_or(DEFAULT_TABLE_SEED),
            })
        }
        other => {
            return invalid(format!(
                "unknown command \"{other}\"; expected simulate, analyze or table"
            ))
        }
    };
    Ok(RunConfig {
        command,
        output: file.output,
        threads,
    })
}

fn study(s: FileScenario) -> Result<StudyConfig> {
    let invalid = |m: String| Err(CliError::Validation(m));
    let ns = match (s.n, s.ns) {
        (Some(_), Some(_)) => return invalid("give either n or ns, not both".into()),
        (Some(n), None) => vec![n],
        (None, Some(ns)) => ns,
        (None, None) => vec![DEFAULT_N],
    };
    let ts = match (s.t, s.ts) {
        (Some(_), Some(_)) => return invalid("give either t or ts, not both".into()),
        (Some(t), None) => vec![t],
        (None, Some(ts)) => ts,
        (None, None) => vec![DEFAULT_T],
    };
    if ns.is_empty() || ts.is_empty() {
        return invalid("the (N, T) grid is empty".into());
    }
    let mut cfg = ScenarioConfig::new(s.name.unwrap_or_else(|| "scenario".into()), ns[0], ts[0]);
    if let Some(k) = s.k {
        cfg.k = k;
    }
    if let Some(r) = s.reps {
        cfg.reps = r;
    }
    if let Some(a) = s.alpha {
        cfg.alpha = a;
    }
    if let Some(seed) = s.seed {
        cfg.seed = seed;
    }
    if let Some(fe) = s.fixed_effects {
        cfg.fixed_effects = fe;
    }
    if let Some(x) = s.x_next {
        cfg.x_next_mode = x;
    }
    if let Some(ci) = s.ci {
        cfg.ci_mode = ci;
    }
    if let Some(sl) = s.slopes {
        cfg.slope_design = sl;
    }
    if let Some(e) = s.errors {
        cfg.error_design = e;
    }
    if let Some(v) = s.sigma {
        cfg.sigma_spec = SigmaSpec::new(v);
    }
    cfg.sigma_spec.demean_adjust = s.demean_adjust.unwrap_or(cfg.fixed_effects);
    if let Some(kernel) = s.kernel {
        cfg.kernel = kernel;
    }
    for &n in &ns {
        for &t in &ts {
            let mut c = cfg.clone();
            c.n = n;
            c.t_len = t;
            c.validate().map_err(|e| match e {
                panel_msfe::error::Error::InvalidPanel(m) => CliError::Validation(m),
                other => CliError::Core(other),
            })?;
        }
    }
    Ok(StudyConfig {
        scenario: cfg,
        ns,
        ts,
    })
}

/// Renders a config that [`parse_config`] reads back to an equal value.
pub fn emit_config(cfg: &RunConfig) -> String {
    let threads = Some(match cfg.threads {
        Threads::Auto => ThreadsRepr::Word("auto".into()),
        Threads::Count(c) => ThreadsRepr::Count(c),
    });
    let mut file = FileConfig {
        command: String::new(),
        output: cfg.output.clone(),
        threads,
        scenario: None,
        analyze: None,
        table: None,
    };
    match &cfg.command {
        Command::Simulate(s) => {
            let c = &s.scenario;
            file.command = "simulate".into();
            file.scenario = Some(FileScenario {
                name: Some(c.name.clone()),
                n: None,
                t: None,
                ns: Some(s.ns.clone()),
                ts: Some(s.ts.clone()),
                k: Some(c.k),
                reps: Some(c.reps),
                alpha: Some(c.alpha),
                seed: Some(c.seed),
                fixed_effects: Some(c.fixed_effects),
                x_next: Some(c.x_next_mode),
                ci: Some(c.ci_mode),
                slopes: Some(c.slope_design.clone()),
                errors: Some(c.error_design.clone()),
                sigma: Some(c.sigma_spec.variant.clone()),
                demean_adjust: Some(c.sigma_spec.demean_adjust),
                kernel: Some(c.kernel),
            });
        }
        Command::Analyze(a) => {
            file.command = "analyze".into();
            file.analyze = Some(FileAnalyze {
                panel: a.panel.clone(),
                predict: a.predict.clone(),
                sigma: Some(a.sigma),
                bandwidth: Some(a.bandwidth),
                alpha: Some(a.alpha),
                fixed_effects: Some(a.fixed_effects),
                strict_paper_ci: Some(a.ci_mode == CiMode::StrictPaper),
            });
        }
        Command::Table(t) => {
            file.command = "table".into();
            file.table = Some(FileTable {
                id: t.id.to_string(),
                reps: Some(t.reps),
                seed: Some(t.seed),
            });
        }
    }
    toml::to_string(&file).expect("config serializes")
}

pub fn read_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_simulate_gets_defaults() {
        let cfg = parse_config("command = \"simulate\"\n[scenario]\nname = \"x\"\n").unwrap();
        let Command::Simulate(s) = &cfg.command else {
            panic!()
        };
        assert_eq!(s.scenario.k, 5);
        assert_eq!(s.scenario.reps, 5000);
        assert_eq!(s.scenario.alpha, 0.05);
        assert_eq!(s.scenario.sigma_spec.bandwidth(80), Some(3));
        assert_eq!(
            (s.ns.clone(), s.ts.clone()),
            (vec![DEFAULT_N], vec![DEFAULT_T])
        );
        assert_eq!(cfg.threads, Threads::Auto);
    }

    #[test]
    fn phi_outside_unit_interval_is_rejected() {
        let text = "command = \"simulate\"\n[scenario]\nname = \"x\"\nerrors = { kind = \"ar1\", phi = 1.2 }\n";
        let err = parse_config(text).unwrap_err();
        assert_eq!(err.code(), "ValidationError");
        assert_eq!(err.to_string(), "phi out of (-1,1)");
    }

    #[test]
    fn syntax_errors_carry_a_line() {
        let err = parse_config("command = \"simulate\"\n[scenario]\nname = \n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err:?}");
        let err = parse_config("command = \"simulate\"\n[scenario]\nbogus = 1\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn round_trips() {
        let texts = [
            "command = \"simulate\"\nthreads = 2\n[scenario]\nname = \"a\"\nns = [10, 20]\nts = [15]\nseed = 9\nfixed_effects = true\nslopes = { kind = \"random-normal\", mean = 0.0, sd = 1.0 }\nerrors = { kind = \"hetero-ar1\", phi = 0.3 }\nsigma = { kind = \"hac\", bandwidth = 2 }\n",
            "command = \"simulate\"\n[scenario]\nsigma = { kind = \"hetero-scaled\", scale = { kind = \"abs-component\", component = 0 }, inner = { kind = \"banded\", bandwidth = \"auto\" } }\n",
            "command = \"analyze\"\noutput = \"o.csv\"\n[analyze]\npanel = \"p.csv\"\npredict = \"q.csv\"\nsigma = \"ar1\"\nstrict_paper_ci = true\n",
            "command = \"table\"\n[table]\nid = \"A13\"\nreps = 10\n",
        ];
        for text in texts {
            let cfg = parse_config(text).unwrap();
            let again = parse_config(&emit_config(&cfg)).unwrap();
            assert_eq!(cfg, again, "{}", emit_config(&cfg));
        }
    }

    #[test]
    fn unknown_table_and_command() {
        let err = parse_config("command = \"table\"\n[table]\nid = \"T99\"\n").unwrap_err();
        assert_eq!(err.code(), "UnknownTable");
        let err = parse_config("command = \"plot\"\n").unwrap_err();
        assert_eq!(err.code(), "ValidationError");
    }
}
