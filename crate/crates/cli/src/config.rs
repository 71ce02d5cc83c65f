//! Flags and `key=value` config files merged into one validated run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use qverma::orbit::Regime;
use qverma::ring::{parse_rational, ArithmeticMode, QScalar, Rational};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Uq,
    Adjoint,
    Braiding,
    Intertwiner,
    Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportObject {
    Module,
    Intertwiner,
    Braiding,
    Ideal,
}

/// Flags shared by every command. Each may also come from `--config`.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Rank parameter of sl(n).
    #[arg(long)]
    pub n: Option<usize>,
    /// Integer weight mu of the module mu*w1.
    #[arg(long)]
    pub mu: Option<i64>,
    /// Deformation parameter hbar (rational or scalar text).
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<String>,
    /// `sym` for symbolic q, `1` for the classical point, or a rational p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Branch of gamma(q): gt1 or lt1.
    #[arg(long)]
    pub regime: Option<String>,
    /// Orbit scale alpha0.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha0: Option<String>,
    /// Truncation or filtration degree.
    #[arg(long)]
    pub truncation: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File of `key=value` lines; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QBinding {
    Symbolic,
    Classical,
    Rational(Rational),
}

impl QBinding {
    pub fn parse(s: &str) -> Result<QBinding, ConfigError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("sym") || s.eq_ignore_ascii_case("symbolic") {
            return Ok(QBinding::Symbolic);
        }
        let r = parse_rational(s)
            .map_err(|_| ConfigError(format!("--q expects `sym` or a rational p/q, got `{s}`")))?;
        if r == Rational::from_integer(1.into()) {
            return Ok(QBinding::Classical);
        }
        if r == Rational::from_integer(0.into()) || r == Rational::from_integer((-1).into()) {
            return err(format!("q = {s} is not allowed"));
        }
        Ok(QBinding::Rational(r))
    }

    /// Arithmetic for modules with an integer weight.
    pub fn integer_mode(&self) -> ArithmeticMode {
        match self {
            QBinding::Symbolic => ArithmeticMode::ExactIntegerWeight,
            QBinding::Classical => ArithmeticMode::Classical { mu: None },
            QBinding::Rational(q) => ArithmeticMode::NumericRational {
                q: q.clone(),
                z: None,
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            QBinding::Symbolic => "sym".into(),
            QBinding::Classical => "1".into(),
            QBinding::Rational(q) => qverma::ring::format_rational(q),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub mu: Option<i64>,
    pub hbar: Option<QScalar>,
    pub q: QBinding,
    pub regime: Option<Regime>,
    pub alpha0: QScalar,
    pub truncation: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// The regime given, or the one implied by a rational `q`.
    pub fn regime(&self) -> Result<Regime, ConfigError> {
        let implied = match &self.q {
            QBinding::Rational(q) => Some(if q.numer().magnitude() > q.denom().magnitude() {
                Regime::Gt1
            } else {
                Regime::Lt1
            }),
            _ => None,
        };
        match (self.regime, implied) {
            (Some(r), Some(i)) if r != i => err(format!(
                "regime {} contradicts q = {}",
                r.label(),
                self.q.label()
            )),
            (Some(r), _) => Ok(r),
            (None, Some(i)) => Ok(i),
            (None, None) => Ok(Regime::Gt1),
        }
    }

    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("n".into(), self.n.to_string());
        m.insert("q".into(), self.q.label());
        if let Some(mu) = self.mu {
            m.insert("mu".into(), mu.to_string());
        }
        if let Some(h) = &self.hbar {
            m.insert("hbar".into(), h.to_string());
        }
        if let Some(r) = self.regime {
            m.insert("regime".into(), r.label().into());
        }
        m.insert("alpha0".into(), self.alpha0.to_string());
        if let Some(t) = self.truncation {
            m.insert("truncation".into(), t.to_string());
        }
        m
    }
}

/// A rational `p/q` or any scalar in its text form.
pub fn parse_scalar(key: &str, s: &str) -> Result<QScalar, ConfigError> {
    if let Ok(r) = parse_rational(s) {
        return Ok(QScalar::from_rational(r));
    }
    s.trim()
        .parse::<QScalar>()
        .map_err(|e| ConfigError(format!("--{key}: cannot parse `{s}` ({e})")))
}

/// Reads `key=value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    const KEYS: [&str; 11] = [
        "n",
        "mu",
        "hbar",
        "q",
        "regime",
        "alpha0",
        "truncation",
        "format",
        "out",
        "suite",
        "object",
    ];
    let mut out = BTreeMap::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(format!("config line {}: expected key=value", k + 1));
        };
        let key = key.trim().to_ascii_lowercase();
        if !KEYS.contains(&key.as_str()) {
            return err(format!("config line {}: unknown key `{key}`", k + 1));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T, ConfigError> {
    s.trim()
        .parse()
        .map_err(|_| ConfigError(format!("{key}: cannot parse `{s}`")))
}

pub fn parse_enum<T: ValueEnum>(key: &str, s: &str) -> Result<T, ConfigError> {
    T::from_str(s.trim(), true).map_err(|_| ConfigError(format!("{key}: unknown value `{s}`")))
}

impl CommonArgs {
    /// Fills unset flags from the config file, then validates.
    pub fn resolve(&self) -> Result<(RunConfig, BTreeMap<String, String>), ConfigError> {
        let file = match &self.config {
            Some(p) => read_config_file(p)?,
            None => BTreeMap::new(),
        };
        let get = |k: &str| file.get(k).map(String::as_str);
        let n = match self.n {
            Some(n) => n,
            None => match get("n") {
                Some(s) => parse_num("n", s)?,
                None => return err("--n is required"),
            },
        };
        if n < 2 {
            return err("--n must be at least 2");
        }
        let mu = match self.mu {
            Some(m) => Some(m),
            None => get("mu").map(|s| parse_num("mu", s)).transpose()?,
        };
        if let Some(m) = mu {
            if m < 0 {
                return err("--mu must be nonnegative");
            }
        }
        let hbar = match self.hbar.as_deref().or(get("hbar")) {
            Some(s) => Some(parse_scalar("hbar", s)?),
            None => None,
        };
        let q = match self.q.as_deref().or(get("q")) {
            Some(s) => QBinding::parse(s)?,
            None => QBinding::Symbolic,
        };
        let regime =
            match self.regime.as_deref().or(get("regime")) {
                Some(s) => Some(Regime::parse(s).ok_or_else(|| {
                    ConfigError(format!("--regime expects gt1 or lt1, got `{s}`"))
                })?),
                None => None,
            };
        let alpha0 = match self.alpha0.as_deref().or(get("alpha0")) {
            Some(s) => parse_scalar("alpha0", s)?,
            None => QScalar::one(),
        };
        if alpha0.is_zero() {
            return err("--alpha0 must be nonzero");
        }
        let truncation = match self.truncation {
            Some(t) => Some(t),
            None => get("truncation")
                .map(|s| parse_num("truncation", s))
                .transpose()?,
        };
        let format = match self.format {
            Some(f) => f,
            None => match get("format") {
                Some(s) => parse_enum("format", s)?,
                None => Format::Text,
            },
        };
        let out = self.out.clone().or_else(|| get("out").map(PathBuf::from));
        let cfg = RunConfig {
            n,
            mu,
            hbar,
            q,
            regime,
            alpha0,
            truncation,
            format,
            out,
        };
        cfg.regime()?;
        Ok((cfg, file))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text() {
        let m = parse_config_text("n = 3\n# comment\nq=3/2 # trailing\n\nregime=gt1\n").unwrap();
        assert_eq!(m["n"], "3");
        assert_eq!(m["q"], "3/2");
        assert!(parse_config_text("colour=red").is_err());
        assert!(parse_config_text("n 3").is_err());
    }

    #[test]
    fn q_binding() {
        assert_eq!(QBinding::parse("sym").unwrap(), QBinding::Symbolic);
        assert_eq!(QBinding::parse("1").unwrap(), QBinding::Classical);
        assert!(matches!(
            QBinding::parse("-2/3").unwrap(),
            QBinding::Rational(_)
        ));
        assert!(QBinding::parse("0").is_err());
        assert!(QBinding::parse("x").is_err());
    }

    #[test]
    fn regime_conflict() {
        let args = CommonArgs {
            n: Some(3),
            q: Some("1/2".into()),
            regime: Some("gt1".into()),
            ..Default::default()
        };
        assert!(args.resolve().is_err());
    }
}
