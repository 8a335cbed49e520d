use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use movquad::{Fp60, Fp61, Fp62, Fp62b};

/// Primes accepted by `--field fp:<p>`.
pub const PRIMES: [u64; 4] = [Fp62::MODULUS, Fp61::MODULUS, Fp62b::MODULUS, Fp60::MODULUS];

/// Implicitize tensor-product surfaces with moving planes and quadrics.
#[derive(Clone, Debug, Parser)]
#[command(name = "movquad", version)]
pub struct JobConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Parameterization file: {"m": .., "n": .., "f": [four polynomials]}.
    pub input: PathBuf,

    /// Degree in s (planes, quadrics, matrix, complex).
    #[arg(long)]
    pub mu: Option<u32>,

    /// Degree in t (planes, quadrics, matrix, complex).
    #[arg(long)]
    pub nu: Option<u32>,

    /// rational, fp (2^62-57), or fp:<p> for one of the compiled primes.
    #[arg(long, default_value = "rational", value_parser = parse_field)]
    pub field: FieldChoice,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value = "default")]
    pub quadric_source: QuadricChoice,

    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,

    /// Swap the roles of s and t before running the command.
    #[arg(long)]
    pub transpose: bool,

    /// Skip the comparison with the interpolation oracle.
    #[arg(long)]
    pub no_verify: bool,

    /// Form in x0..x3 to check (verify only).
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,

    /// Expected power of F (verify only); defaults to deg(form) / deg(F).
    #[arg(long)]
    pub power: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Analyze,
    Planes,
    Quadrics,
    Matrix,
    Complex,
    Implicitize,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Fp(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuadricChoice {
    Default,
    Saturated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    match s {
        "rational" | "q" | "QQ" => Ok(FieldChoice::Rational),
        "fp" => Ok(FieldChoice::Fp(Fp62::MODULUS)),
        _ => {
            let p = s
                .strip_prefix("fp:")
                .ok_or_else(|| format!("unknown field `{s}`; expected rational, fp or fp:<p>"))?
                .parse::<u64>()
                .map_err(|e| format!("bad prime in `{s}`: {e}"))?;
            if PRIMES.contains(&p) {
                Ok(FieldChoice::Fp(p))
            } else {
                Err(format!("prime {p} is not compiled in; choose one of {PRIMES:?}"))
            }
        }
    }
}

impl JobConfig {
    /// Checks the flag combinations clap cannot express.
    pub fn validate(&self) -> Result<(), String> {
        let wants_bidegree = matches!(self.command, Command::Planes | Command::Quadrics | Command::Matrix | Command::Complex);
        match (wants_bidegree, self.mu.is_some() && self.nu.is_some(), self.mu.is_some() || self.nu.is_some()) {
            (true, false, _) => return Err(format!("{} needs both --mu and --nu", self.command_name())),
            (false, _, true) => return Err(format!("{} does not take --mu/--nu", self.command_name())),
            _ => {}
        }
        let is_verify = self.command == Command::Verify;
        if is_verify && self.form.is_none() {
            return Err("verify needs --form".into());
        }
        if !is_verify && (self.form.is_some() || self.power.is_some()) {
            return Err("--form and --power are only used by verify".into());
        }
        if self.power == Some(0) {
            return Err("--power must be at least 1".into());
        }
        Ok(())
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.mu.expect("validated"), self.nu.expect("validated"))
    }

    pub fn command_name(&self) -> &'static str {
        match self.command {
            Command::Analyze => "analyze",
            Command::Planes => "planes",
            Command::Quadrics => "quadrics",
            Command::Matrix => "matrix",
            Command::Complex => "complex",
            Command::Implicitize => "implicitize",
            Command::Verify => "verify",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> Result<JobConfig, clap::Error> {
        JobConfig::try_parse_from(std::iter::once("movquad").chain(args.iter().copied()))
    }

    #[test]
    fn field_choices() {
        assert_eq!(parse_field("rational"), Ok(FieldChoice::Rational));
        assert_eq!(parse_field("fp"), Ok(FieldChoice::Fp(Fp62::MODULUS)));
        assert_eq!(parse_field("fp:2305843009213693951"), Ok(FieldChoice::Fp(Fp61::MODULUS)));
        assert!(parse_field("fp:7").is_err());
        assert!(parse_field("real").is_err());
    }

    #[test]
    fn bidegree_flags_are_checked() {
        assert!(job(&["matrix", "x.json", "--mu", "1", "--nu", "1"]).unwrap().validate().is_ok());
        assert!(job(&["matrix", "x.json", "--mu", "1"]).unwrap().validate().is_err());
        assert!(job(&["analyze", "x.json", "--nu", "1"]).unwrap().validate().is_err());
        assert!(job(&["verify", "x.json"]).unwrap().validate().is_err());
        assert!(job(&["verify", "x.json", "--form", "x0", "--power", "0"]).unwrap().validate().is_err());
        assert!(job(&["analyze", "x.json", "--form", "x0"]).unwrap().validate().is_err());
        assert!(job(&["frobnicate", "x.json"]).is_err());
    }
}
