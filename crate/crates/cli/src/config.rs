//! Experiment configuration files.
//!
//! One `key = value` per line; `#` starts a comment. Values are integers,
//! rationals (`106/9`), bracketed sequences (`[-4, 0, 0, 1]`, low degree
//! first), points (`(2, 2)`), booleans and bare words.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use hyperpic::{IntPoly, MumfordDivisor, OddHyperellipticCurve, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub source: String,
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        if let Some(l) = self.line {
            write!(f, ":{l}")?;
        }
        if let Some(k) = &self.key {
            write!(f, ": key `{k}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// How the divisor is given: a point, or a Mumford pair `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorInput {
    Point(BigRational, BigRational),
    Mumford(Vec<BigRational>, Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub f: Vec<BigInt>,
    pub divisor: Option<DivisorInput>,
    pub divisor2: Option<DivisorInput>,
    pub multiple: BigInt,
    pub from: Option<BigInt>,
    pub to: Option<BigInt>,
    pub format: Option<OutputFormat>,
    pub factor_bound: Option<u64>,
    pub squarefree_only: Option<bool>,
    pub min_order: Option<u64>,
    pub floor: Option<BigInt>,
    source: String,
    lines: BTreeMap<String, usize>,
}

const KEYS: &[&str] = &[
    "f",
    "point",
    "mumford_a",
    "mumford_b",
    "point2",
    "mumford2_a",
    "mumford2_b",
    "multiple",
    "from",
    "to",
    "format",
    "factor_bound",
    "squarefree_only",
    "min_order",
    "floor",
];

struct Entry {
    line: usize,
    value: String,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let source = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            source: source.clone(),
            line: None,
            key: None,
            message: format!("cannot read file: {e}"),
        })?;
        Self::parse(&text, &source)
    }

    pub fn parse(text: &str, source: &str) -> Result<Self, ConfigError> {
        let err = |line: usize, key: Option<&str>, message: String| ConfigError {
            source: source.to_string(),
            line: Some(line),
            key: key.map(str::to_string),
            message,
        };
        let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(line, None, format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(err(line, Some(key), "unknown key".into()));
            }
            if let Some(prev) = entries.get(key) {
                return Err(err(
                    line,
                    Some(key),
                    format!("duplicate key (first set on line {})", prev.line),
                ));
            }
            entries.insert(
                key.to_string(),
                Entry {
                    line,
                    value: value.trim().to_string(),
                },
            );
        }

        let lines: BTreeMap<String, usize> = entries.iter().map(|(k, e)| (k.clone(), e.line)).collect();
        let get = |key: &str| entries.get(key);
        let field = |key: &str, e: &Entry, m: String| err(e.line, Some(key), m);

        let f = match get("f") {
            Some(e) => parse_int_list(&e.value).map_err(|m| field("f", e, m))?,
            None => {
                return Err(ConfigError {
                    source: source.to_string(),
                    line: None,
                    key: Some("f".into()),
                    message: "missing required key".into(),
                })
            }
        };
        let divisor = divisor_input(&entries, "point", "mumford_a", "mumford_b", &err)?;
        let divisor2 = divisor_input(&entries, "point2", "mumford2_a", "mumford2_b", &err)?;
        let int = |key: &str| -> Result<Option<BigInt>, ConfigError> {
            get(key)
                .map(|e| parse_int(&e.value).map_err(|m| field(key, e, m)))
                .transpose()
        };
        let uint = |key: &str| -> Result<Option<u64>, ConfigError> {
            get(key)
                .map(|e| {
                    e.value
                        .parse::<u64>()
                        .map_err(|_| field(key, e, format!("expected a non-negative integer, got `{}`", e.value)))
                })
                .transpose()
        };
        let format = get("format")
            .map(|e| e.value.parse::<OutputFormat>().map_err(|m| field("format", e, m)))
            .transpose()?;
        let squarefree_only = get("squarefree_only")
            .map(|e| match e.value.as_str() {
                "true" => Ok(true),
                "false" => Ok(false),
                v => Err(field(
                    "squarefree_only",
                    e,
                    format!("expected true or false, got `{v}`"),
                )),
            })
            .transpose()?;
        Ok(ExperimentConfig {
            f,
            divisor,
            divisor2,
            multiple: int("multiple")?.unwrap_or_else(|| BigInt::from(1)),
            from: int("from")?,
            to: int("to")?,
            format,
            factor_bound: uint("factor_bound")?,
            squarefree_only,
            min_order: uint("min_order")?,
            floor: int("floor")?,
            source: source.to_string(),
            lines,
        })
    }

    fn error(&self, key: &str, message: String) -> ConfigError {
        ConfigError {
            source: self.source.clone(),
            line: self.lines.get(key).copied(),
            key: Some(key.to_string()),
            message,
        }
    }

    pub fn curve(&self) -> Result<OddHyperellipticCurve, ConfigError> {
        OddHyperellipticCurve::new(IntPoly::new(self.f.clone())).map_err(|e| self.error("f", e.to_string()))
    }

    fn build(
        &self,
        input: &DivisorInput,
        keys: (&str, &str),
        curve: &OddHyperellipticCurve,
    ) -> Result<MumfordDivisor, ConfigError> {
        match input {
            DivisorInput::Point(x, y) => {
                MumfordDivisor::from_point(curve, x, y).map_err(|e| self.error(keys.0, e.to_string()))
            }
            DivisorInput::Mumford(a, b) => MumfordDivisor::new(curve, RatPoly::new(a.clone()), RatPoly::new(b.clone()))
                .map_err(|e| self.error(keys.1, e.to_string())),
        }
    }

    /// The configured divisor times `multiple`; the identity when none is given.
    pub fn divisor(&self, curve: &OddHyperellipticCurve) -> Result<MumfordDivisor, ConfigError> {
        let base = match &self.divisor {
            Some(input) => self.build(input, ("point", "mumford_a"), curve)?,
            None => MumfordDivisor::identity(),
        };
        Ok(base.smul(&self.multiple, curve))
    }

    pub fn second_divisor(&self, curve: &OddHyperellipticCurve) -> Result<MumfordDivisor, ConfigError> {
        match &self.divisor2 {
            Some(input) => self.build(input, ("point2", "mumford2_a"), curve),
            None => Err(ConfigError {
                source: self.source.clone(),
                line: None,
                key: Some("point2".into()),
                message: "a second divisor (point2 or mumford2_a/mumford2_b) is required".into(),
            }),
        }
    }
}

fn divisor_input(
    entries: &BTreeMap<String, Entry>,
    point: &str,
    ka: &str,
    kb: &str,
    err: &dyn Fn(usize, Option<&str>, String) -> ConfigError,
) -> Result<Option<DivisorInput>, ConfigError> {
    match (entries.get(point), entries.get(ka), entries.get(kb)) {
        (Some(p), None, None) => {
            let (x, y) = parse_point(&p.value).map_err(|m| err(p.line, Some(point), m))?;
            Ok(Some(DivisorInput::Point(x, y)))
        }
        (None, Some(a), Some(b)) => {
            let av = parse_rat_list(&a.value).map_err(|m| err(a.line, Some(ka), m))?;
            let bv = parse_rat_list(&b.value).map_err(|m| err(b.line, Some(kb), m))?;
            Ok(Some(DivisorInput::Mumford(av, bv)))
        }
        (None, None, None) => Ok(None),
        (Some(p), _, _) => Err(err(
            p.line,
            Some(point),
            format!("give either `{point}` or `{ka}`/`{kb}`, not both"),
        )),
        (None, Some(e), None) | (None, None, Some(e)) => Err(err(
            e.line,
            Some(if entries.contains_key(ka) { ka } else { kb }),
            format!("`{ka}` and `{kb}` must be given together"),
        )),
    }
}

pub fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| format!("expected an integer, got `{}`", s.trim()))
}

pub fn parse_rat(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(BigRational::new(n, d))
        }
        None => parse_int(s)
            .map(BigRational::from_integer)
            .map_err(|_| format!("expected an integer or rational, got `{s}`")),
    }
}

fn delimited(s: &str, open: char, close: char) -> Result<Vec<&str>, String> {
    let s = s.trim();
    let inner = s
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| format!("expected `{open}...{close}`, got `{s}`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').collect())
}

pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>, String> {
    delimited(s, '[', ']')?.into_iter().map(parse_int).collect()
}

pub fn parse_rat_list(s: &str) -> Result<Vec<BigRational>, String> {
    delimited(s, '[', ']')?.into_iter().map(parse_rat).collect()
}

fn parse_point(s: &str) -> Result<(BigRational, BigRational), String> {
    let parts = delimited(s, '(', ')')?;
    if parts.len() != 2 {
        return Err(format!("a point has two coordinates, got {}", parts.len()));
    }
    Ok((parse_rat(parts[0])?, parse_rat(parts[1])?))
}
