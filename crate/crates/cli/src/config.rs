use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtau_core::num::{Complex, Precision};

#[derive(Parser, Debug)]
#[command(
    name = "qtau",
    version,
    about = "Verify q-Painleve III(D8) tau-function identities"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Print conformal block coefficients
    Block,
    /// Main bilinear relation residual
    Bilinear,
    /// q-Toda and qPIII residuals of the tau function
    Qtoda,
    /// Algebraic-solution identity
    Algebraic,
    /// Generic-base relations
    AppendixB,
    /// Fiber-base relation (expected to fail)
    FiberBase,
    /// Group relations, induced action and first-order forms
    Symmetry,
    /// Continuous limits and the continuous bilinear relation
    Limits,
    /// Series forms, shifts and C-function equations of tau
    Tau,
    /// q-special function identities
    Identities,
    /// Every check at desk-scale orders
    Suite,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Out {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Truncation order in Z
    #[arg(long, global = true)]
    pub order: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// Working precision in decimal digits
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q2: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Continuous time z
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Discrete time Z
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub zz: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sign: Option<i64>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<u32>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub out: Option<Out>,
    /// File of `key = value` defaults; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Record wall-clock times (makes output non-reproducible)
    #[arg(long, global = true)]
    pub timing: bool,
}

const CONFIG_KEYS: [&str; 17] = [
    "order", "mode", "digits", "u", "q", "q1", "q2", "s", "sigma", "z", "zz", "sign", "n-max",
    "trials", "seed", "out", "timing",
];

/// Parses `key = value` lines into flags. Blank lines and `#` comments are
/// skipped; `n_max` is accepted for `n-max`.
pub fn config_flags(text: &str) -> Result<Vec<OsString>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
        let k = k.trim().replace('_', "-");
        let v = v.trim();
        if !CONFIG_KEYS.contains(&k.as_str()) {
            return Err(format!("config line {}: unknown key `{k}`", i + 1));
        }
        if k == "timing" {
            match v {
                "true" => out.push("--timing".into()),
                "false" => {}
                _ => {
                    return Err(format!(
                        "config line {}: timing must be true or false",
                        i + 1
                    ))
                }
            }
            continue;
        }
        out.push(format!("--{k}").into());
        out.push(v.into());
    }
    Ok(out)
}

/// Parses the command line, splicing in `--config` defaults ahead of the
/// explicit flags so that the latter win.
pub fn parse(args: Vec<OsString>) -> Result<Cli, clap::Error> {
    let first = Cli::try_parse_from(&args)?;
    let Some(path) = first.opts.config.clone() else {
        return Ok(first);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        clap::Error::raw(
            clap::error::ErrorKind::Io,
            format!("cannot read {}: {e}\n", path.display()),
        )
    })?;
    let flags = config_flags(&text)
        .map_err(|e| clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("{e}\n")))?;
    let mut spliced = Vec::with_capacity(args.len() + flags.len());
    spliced.extend(args.iter().take(1).cloned());
    spliced.extend(flags);
    spliced.extend(args.iter().skip(1).cloned());
    Cli::try_parse_from(spliced)
}

/// Resolved options with numeric parameters at the working precision.
#[derive(Clone, Debug)]
pub struct Settings {
    pub order: Option<u32>,
    pub mode: Option<Mode>,
    pub precision: Precision,
    pub u: Option<Complex>,
    pub q: Option<Complex>,
    pub q1: Option<Complex>,
    pub q2: Option<Complex>,
    pub s: Option<Complex>,
    pub sigma: Option<Complex>,
    pub z: Option<Complex>,
    pub zz: Option<Complex>,
    pub sign: Option<i64>,
    pub n_max: Option<u32>,
    pub trials: Option<usize>,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings::from_opts(&Opts::default()).expect("defaults are valid")
    }
}

impl Settings {
    pub fn from_opts(o: &Opts) -> Result<Self, String> {
        let digits = o.digits.unwrap_or(50);
        if !(15..=2000).contains(&digits) {
            return Err("--digits must lie in 15..=2000".into());
        }
        let p = Precision::digits(digits);
        let num = |name: &str, v: &Option<String>| -> Result<Option<Complex>, String> {
            v.as_deref()
                .map(|s| {
                    Complex::parse(s, p)
                        .ok_or_else(|| format!("--{name}: cannot parse `{s}` as a complex number"))
                })
                .transpose()
        };
        if let Some(s) = o.sign {
            if s != 1 && s != -1 {
                return Err("--sign must be 1 or -1".into());
            }
        }
        Ok(Settings {
            order: o.order,
            mode: o.mode,
            precision: p,
            u: num("u", &o.u)?,
            q: num("q", &o.q)?,
            q1: num("q1", &o.q1)?,
            q2: num("q2", &o.q2)?,
            s: num("s", &o.s)?,
            sigma: num("sigma", &o.sigma)?,
            z: num("z", &o.z)?,
            zz: num("zz", &o.zz)?,
            sign: o.sign,
            n_max: o.n_max,
            trials: o.trials,
            seed: o.seed.unwrap_or(1),
        })
    }

    pub fn digits(&self) -> u32 {
        self.precision.get()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn config_lines() {
        let f = config_flags("# defaults\norder = 6\nn_max=3 # inline\n\ntiming = true\n").unwrap();
        assert_eq!(f, os(&["--order", "6", "--n-max", "3", "--timing"]));
        assert!(config_flags("bogus = 1").is_err());
        assert!(config_flags("order 6").is_err());
    }

    #[test]
    fn flags_after_subcommand_and_negative_values() {
        let c = parse(os(&[
            "qtau",
            "algebraic",
            "--sign",
            "-1",
            "--u",
            "-0.3+0.1i",
        ]))
        .unwrap();
        assert_eq!(c.command, Command::Algebraic);
        assert_eq!(c.opts.sign, Some(-1));
        let s = Settings::from_opts(&c.opts).unwrap();
        assert!((s.u.unwrap().re_f64() + 0.3).abs() < 1e-15);
    }

    #[test]
    fn bad_values_rejected() {
        assert!(parse(os(&["qtau", "bilinear", "--mode", "fuzzy"])).is_err());
        let c = parse(os(&["qtau", "bilinear", "--u", "x+y"])).unwrap();
        assert!(Settings::from_opts(&c.opts).is_err());
        let c = parse(os(&["qtau", "bilinear", "--sign", "2"])).unwrap();
        assert!(Settings::from_opts(&c.opts).is_err());
    }
}
