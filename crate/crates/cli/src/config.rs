//! Run configuration: flat `key = value` files mirrored 1:1 by flags.
//!
//! Precedence, highest first: command-line flags, the `--config` file, the
//! `ONECUT_PRECISION_BITS` environment variable (precision only), built-in
//! defaults. Every problem is collected before any computation starts.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use onecut::potential::Potential;
use onecut::{PrecisionConfig, DEFAULT_DIGITS_TARGET, DEFAULT_PRECISION_BITS};

pub const PRECISION_ENV: &str = "ONECUT_PRECISION_BITS";

/// Tolerance names accepted by `--tol name=value`, with defaults.
pub const TOLERANCES: [(&str, f64); 4] = [("limit", 1e-6), ("beta1", 1e-3), ("odd_alpha", 1e-3), ("jacobi_rel", 1e-12)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Eqm,
    Rec,
    Rh,
    Fit,
    Verify,
    JacobiCheck,
}

impl CommandKind {
    fn keys(self) -> &'static [&'static str] {
        const COMMON: &[&str] = &["potential", "precision-bits", "digits", "format", "meta-out"];
        match self {
            CommandKind::Eqm => COMMON,
            CommandKind::Rec => &["potential", "precision-bits", "digits", "format", "meta-out", "n-max"],
            CommandKind::Rh => &["potential", "precision-bits", "digits", "format", "meta-out", "report"],
            CommandKind::Fit => &["potential", "precision-bits", "digits", "format", "meta-out", "window", "powers", "column", "input"],
            CommandKind::Verify => {
                &["potential", "precision-bits", "digits", "format", "meta-out", "n-max", "window", "tol", "plot", "richardson"]
            }
            CommandKind::JacobiCheck => &["precision-bits", "digits", "format", "meta-out", "n-max", "window", "tol", "A", "B"],
        }
    }

    fn formats(self) -> &'static [Format] {
        match self {
            CommandKind::Rec => &[Format::Csv, Format::Json],
            CommandKind::Verify => &[Format::Json, Format::Table],
            _ => &[Format::Json],
        }
    }

    fn needs_potential(self) -> bool {
        !matches!(self, CommandKind::Fit | CommandKind::JacobiCheck)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "table" => Some(Format::Table),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    A,
    B,
    Both,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub potential: Option<Potential>,
    pub n_max: usize,
    pub precision: PrecisionConfig,
    pub window: Option<(usize, usize)>,
    pub powers: Option<Vec<u32>>,
    pub tolerances: BTreeMap<String, f64>,
    pub format: Format,
    pub meta_out: Option<PathBuf>,
    pub column: Column,
    pub input: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub richardson: bool,
}

impl RunConfig {
    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}

/// Every violation found while resolving a configuration.
#[derive(Debug)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid configuration ({} problem{}):", self.0.len(), if self.0.len() == 1 { "" } else { "s" })?;
        for e in &self.0 {
            writeln!(f, "  - {e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

/// Canonical key: `n_max` and `n-max` are the same setting.
fn canonical(key: &str) -> String {
    let key = key.trim();
    if key == "A" || key == "B" {
        return key.to_string();
    }
    key.to_ascii_lowercase().replace('_', "-")
}

/// Parses `key = value` lines; `#` starts a comment. `tol.<name>` keys
/// become `--tol name=value` entries.
pub fn parse_config_text(text: &str, errors: &mut Vec<String>) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => {
                let k = k.trim();
                let v = v.trim();
                match k.strip_prefix("tol.") {
                    Some(name) => out.push(("tol".to_string(), format!("{name}={v}"))),
                    None => out.push((canonical(k), v.to_string())),
                }
            }
            None => errors.push(format!("config line {}: expected `key = value`, got `{line}`", i + 1)),
        }
    }
    out
}

/// Merges file and flag settings and validates them.
///
/// `flags` holds only settings given on the command line; `tol` may repeat.
pub fn resolve(command: CommandKind, flags: Vec<(String, String)>, config: Option<&Path>) -> Result<RunConfig, ConfigErrors> {
    let mut errors = Vec::new();
    let mut merged: BTreeMap<String, String> = BTreeMap::new();
    let mut tols: BTreeMap<String, String> = BTreeMap::new();
    let mut put = |k: String, v: String, tols: &mut BTreeMap<String, String>, errors: &mut Vec<String>| {
        if k == "tol" {
            match v.split_once('=') {
                Some((name, value)) => {
                    tols.insert(name.trim().to_string(), value.trim().to_string());
                }
                None => errors.push(format!("tolerance `{v}` must look like name=value")),
            }
        } else {
            merged.insert(k, v);
        }
    };
    if let Some(path) = config {
        match std::fs::read_to_string(path) {
            Ok(text) => {
                for (k, v) in parse_config_text(&text, &mut errors) {
                    put(k, v, &mut tols, &mut errors);
                }
            }
            Err(e) => errors.push(format!("cannot read config file {}: {e}", path.display())),
        }
    }
    for (k, v) in flags {
        put(canonical(&k), v, &mut tols, &mut errors);
    }
    let allowed = command.keys();
    for key in merged.keys() {
        if !allowed.contains(&key.as_str()) {
            errors.push(format!("setting `{key}` does not apply to this command"));
        }
    }
    if !tols.is_empty() && !allowed.contains(&"tol") {
        errors.push("tolerances do not apply to this command".to_string());
    }

    let get = |k: &str| merged.get(k).map(String::as_str);
    let number = |key: &str, default: usize, lo: usize, hi: usize, errors: &mut Vec<String>| -> usize {
        match get(key) {
            None => default,
            Some(s) => match s.parse::<usize>() {
                Ok(v) if (lo..=hi).contains(&v) => v,
                Ok(v) => {
                    errors.push(format!("{key} = {v} is outside {lo}..={hi}"));
                    default
                }
                Err(_) => {
                    errors.push(format!("{key} = `{s}` is not a non-negative integer"));
                    default
                }
            },
        }
    };

    let bits = match get("precision-bits") {
        Some(_) => number("precision-bits", DEFAULT_PRECISION_BITS as usize, 64, 4096, &mut errors),
        None => match std::env::var(PRECISION_ENV) {
            Ok(s) => match s.trim().parse::<usize>() {
                Ok(v) if (64..=4096).contains(&v) => v,
                _ => {
                    errors.push(format!("{PRECISION_ENV} = `{s}` must be an integer in 64..=4096"));
                    DEFAULT_PRECISION_BITS as usize
                }
            },
            Err(_) => DEFAULT_PRECISION_BITS as usize,
        },
    } as u32;
    let digits = number("digits", DEFAULT_DIGITS_TARGET as usize, 1, 1000, &mut errors) as u32;
    let precision = PrecisionConfig::new(bits, digits);
    if digits + 5 > precision.working_digits() {
        errors.push(format!(
            "digits = {digits} needs more than {bits} bits (at most {} digits)",
            precision.working_digits().saturating_sub(5)
        ));
    }
    let default_n = if command == CommandKind::JacobiCheck { 64 } else { 40 };
    let n_max = number("n-max", default_n, 1, 100_000, &mut errors);

    let mut potential_spec = get("potential").map(str::to_string);
    if command == CommandKind::JacobiCheck {
        match (get("A"), get("B")) {
            (Some(a), Some(b)) => potential_spec = Some(format!("jacobi:{a},{b}")),
            _ => errors.push("jacobi-check needs both --A and --B".to_string()),
        }
    }
    let potential = match &potential_spec {
        Some(spec) => match Potential::parse(spec, bits) {
            Ok(p) => Some(p),
            Err(e) => {
                errors.push(format!("potential `{spec}`: {e}"));
                None
            }
        },
        None => {
            if command.needs_potential() {
                errors.push("--potential is required".to_string());
            }
            None
        }
    };

    let window = get("window").and_then(|s| {
        let parsed = s.split_once(':').and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
        match parsed {
            Some((lo, hi)) if lo >= 1 && lo < hi => {
                if command != CommandKind::Fit && hi > n_max {
                    errors.push(format!("window {lo}:{hi} extends past n-max = {n_max}"));
                }
                Some((lo, hi))
            }
            _ => {
                errors.push(format!("window `{s}` must be lo:hi with 1 <= lo < hi"));
                None
            }
        }
    });

    let powers = get("powers").and_then(|s| {
        let parsed: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match parsed {
            Ok(v) if !v.is_empty() => {
                let mut sorted = v.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != v.len() {
                    errors.push(format!("powers `{s}` repeat an exponent"));
                }
                Some(v)
            }
            _ => {
                errors.push(format!("powers `{s}` must be a comma-separated list of non-negative integers"));
                None
            }
        }
    });

    let mut tolerances: BTreeMap<String, f64> = TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for (name, value) in &tols {
        match (tolerances.contains_key(name), value.parse::<f64>()) {
            (false, _) => errors
                .push(format!("unknown tolerance `{name}` (known: {})", TOLERANCES.iter().map(|t| t.0).collect::<Vec<_>>().join(", "))),
            (true, Ok(v)) if v.is_finite() && v > 0.0 => {
                tolerances.insert(name.clone(), v);
            }
            (true, _) => errors.push(format!("tolerance {name} = `{value}` must be a positive number")),
        }
    }

    let format = match get("format") {
        None => command.formats()[0],
        Some(s) => match Format::parse(s) {
            Some(f) if command.formats().contains(&f) => f,
            _ => {
                let names: Vec<&str> = command
                    .formats()
                    .iter()
                    .map(|f| match f {
                        Format::Json => "json",
                        Format::Csv => "csv",
                        Format::Table => "table",
                    })
                    .collect();
                errors.push(format!("format `{s}` is not available here (use {})", names.join(" or ")));
                command.formats()[0]
            }
        },
    };

    let report = get("report").unwrap_or("beta1").to_string();
    if report != "beta1" {
        errors.push(format!("report `{report}` is not known (use beta1)"));
    }
    let column = match get("column").unwrap_or("both") {
        "a" => Column::A,
        "b" => Column::B,
        "both" => Column::Both,
        other => {
            errors.push(format!("column `{other}` must be a, b or both"));
            Column::Both
        }
    };
    if column == Column::Both && powers.is_some() && command == CommandKind::Fit {
        errors.push("--powers needs --column a or --column b".to_string());
    }
    let richardson = match get("richardson") {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => {
            errors.push(format!("richardson = `{other}` must be true or false"));
            false
        }
    };

    if !errors.is_empty() {
        return Err(ConfigErrors(errors));
    }
    Ok(RunConfig {
        potential,
        n_max,
        precision,
        window,
        powers,
        tolerances,
        format,
        meta_out: get("meta-out").map(PathBuf::from),
        column,
        input: get("input").map(PathBuf::from),
        plot: get("plot").map(PathBuf::from),
        richardson,
    })
}
