//! The `bccalc` command line.

use std::ffi::OsString;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::Parser;

use crate::algorithms::{bc_c, bc_c_sa, CutSet, MethodChoice, Options, SemiAlgSystem};
use crate::classify::{classify_cutset, ProbeOptions};
use crate::expr::{parse, Bindings, Expr, ParseOptions};
use crate::json::Document;
use crate::num::parse_rat;
use crate::render::{emit_svg, Viewport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bccalc", version, about = "Branch cuts of an expression in one complex variable")]
pub struct Cli {
    /// Expression, e.g. "log(z^2-1)"
    #[arg(allow_hyphen_values = true)]
    pub expression: String,
    /// Name of the complex variable
    #[arg(long = "var", default_value = "z")]
    pub variable: String,
    /// real, parametric or auto
    #[arg(long, default_value = "auto")]
    pub method: MethodChoice,
    /// Declare a parameter, optionally with a rational value: `a` or `a=1/3`
    #[arg(long = "param", value_name = "NAME[=VALUE]")]
    pub params: Vec<String>,
    /// Print semi-algebraic systems instead of solved cuts
    #[arg(long)]
    pub semialgebraic: bool,
    /// Classify cuts as true or spurious by numeric probing
    #[arg(long)]
    pub classify: bool,
    /// Drop squared branches that a sign argument rules out
    #[arg(long)]
    pub remove_denesting: bool,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// xmin,xmax,ymin,ymax
    #[arg(long, allow_hyphen_values = true)]
    pub viewport: Option<Viewport>,
    /// Probe offset from the cut
    #[arg(long)]
    pub eps: Option<f64>,
    /// Probes per cut
    #[arg(long)]
    pub samples: Option<usize>,
}

/// Everything a run needs, validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub expression: String,
    pub variable: String,
    pub param_names: Vec<String>,
    pub bindings: Bindings,
    pub method: MethodChoice,
    pub semialgebraic: bool,
    pub classify: bool,
    pub remove_denesting: bool,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub viewport: Viewport,
    pub probe: ProbeOptions,
}

impl TryFrom<Cli> for RunConfig {
    type Error = String;

    fn try_from(c: Cli) -> Result<Self, String> {
        let mut param_names = Vec::new();
        let mut bindings = Bindings::new();
        for p in &c.params {
            let (name, value) = match p.split_once('=') {
                Some((n, v)) => (n.trim(), Some(v.trim())),
                None => (p.trim(), None),
            };
            if name.is_empty() || !name.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                return Err(format!("bad parameter name {name:?}"));
            }
            if name == c.variable {
                return Err(format!("parameter `{name}` clashes with the variable"));
            }
            if let Some(v) = value {
                let r = parse_rat(v).ok_or_else(|| format!("parameter value {v:?} is not a rational number"))?;
                bindings.insert(name.to_string(), r);
            }
            param_names.push(name.to_string());
        }
        if c.classify {
            if let Some(n) = param_names.iter().find(|n| !bindings.contains_key(*n)) {
                return Err(format!("--classify needs a value for parameter `{n}` (use --param {n}=VALUE)"));
            }
        }
        let mut probe = ProbeOptions::default();
        if let Some(e) = c.eps {
            if !(e > 0.0 && e.is_finite()) {
                return Err(format!("--eps must be positive, got {e}"));
            }
            probe.eps = e;
        }
        if let Some(n) = c.samples {
            if n == 0 {
                return Err("--samples must be at least 1".into());
            }
            probe.n = n;
        }
        let viewport = c.viewport.unwrap_or_default();
        probe.window = viewport;
        Ok(RunConfig {
            expression: c.expression,
            variable: c.variable,
            param_names,
            bindings,
            method: c.method,
            semialgebraic: c.semialgebraic,
            classify: c.classify,
            remove_denesting: c.remove_denesting,
            json: c.json,
            svg: c.svg,
            viewport,
            probe,
        })
    }
}

/// The computed artifacts of a run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub expr: Expr,
    pub cuts: CutSet,
    pub systems: Option<Vec<SemiAlgSystem>>,
}

pub fn compute(cfg: &RunConfig) -> Result<Outcome, String> {
    let popts = ParseOptions { var: cfg.variable.clone(), params: cfg.param_names.clone(), allow_free_params: false };
    let expr = parse(&cfg.expression, &popts).map_err(|e| e.to_string())?;
    let opts = Options { method: cfg.method, remove_denesting: cfg.remove_denesting, params: cfg.bindings.clone() };
    if cfg.semialgebraic {
        let (systems, warnings) = bc_c_sa(&expr, &opts);
        let cuts = CutSet { cuts: Vec::new(), warnings };
        return Ok(Outcome { expr, cuts, systems: Some(systems) });
    }
    let mut cuts = bc_c(&expr, &opts);
    if cfg.classify {
        cuts = classify_cutset(&expr, &cuts, &cfg.bindings, &cfg.probe);
    }
    Ok(Outcome { expr, cuts, systems: None })
}

/// Human-readable report.
pub fn report(cfg: &RunConfig, o: &Outcome) -> String {
    let mut s = String::new();
    if let Some(systems) = &o.systems {
        for sys in systems {
            s.push_str(&format!("{sys}\n"));
        }
        return s;
    }
    for c in &o.cuts.cuts {
        if cfg.classify {
            s.push_str(&format!("{c}  [{}]\n", c.classification));
        } else {
            s.push_str(&format!("{c}\n"));
        }
    }
    s
}

pub fn document(cfg: &RunConfig, o: &Outcome) -> Document {
    let d = Document::new(&cfg.expression, &cfg.variable, &cfg.method.to_string(), &o.cuts, cfg.classify);
    match &o.systems {
        Some(s) => d.with_systems(s),
        None => d,
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Runs the command line; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let cfg = match RunConfig::try_from(cli) {
        Ok(c) => c,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let outcome = match catch_unwind(AssertUnwindSafe(|| compute(&cfg))) {
        Ok(Ok(o)) => o,
        Ok(Err(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal failure while computing branch cuts");
            return EXIT_INTERNAL;
        }
    };
    for w in &outcome.cuts.warnings {
        let _ = writeln!(err, "warning: {}", w.message);
    }
    let _ = write!(out, "{}", report(&cfg, &outcome));
    if let Some(p) = &cfg.json {
        if let Err(m) = write_file(p, &document(&cfg, &outcome).to_json()) {
            let _ = writeln!(err, "error: {m}");
            return EXIT_INTERNAL;
        }
    }
    if let Some(p) = &cfg.svg {
        if let Err(m) = write_file(p, &emit_svg(&outcome.cuts, &cfg.viewport)) {
            let _ = writeln!(err, "error: {m}");
            return EXIT_INTERNAL;
        }
    }
    EXIT_OK
}
