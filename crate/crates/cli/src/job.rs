//! Job configuration shared by the flag interface and `kmk run`.

use std::fmt;

use kmk_core::{CartanDatum, Error, Weight};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Dellm,
    Prop61,
    Macdonald,
    Level0,
    Level1,
    Stembridge,
    TensorMinusOne,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::Dellm => "dellm",
            Check::Prop61 => "prop61",
            Check::Macdonald => "macdonald",
            Check::Level0 => "level0",
            Check::Level1 => "level1",
            Check::Stembridge => "stembridge",
            Check::TensorMinusOne => "tensor-minus-one",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Kostka,
    Hl,
    String,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Name(String),
    Matrix { matrix: Vec<Vec<i64>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub algebra: AlgebraSpec,
    pub command: Command,
    #[serde(default)]
    pub check: Option<Check>,
    #[serde(default)]
    pub weight: Option<Vec<i64>>,
    #[serde(default)]
    pub delta: i64,
    #[serde(default)]
    pub mu: Option<Vec<i64>>,
    #[serde(default)]
    pub mu_delta: i64,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub t_cap: Option<usize>,
    #[serde(default)]
    pub ball_cap: Option<usize>,
    #[serde(default)]
    pub format: Option<Format>,
}

pub const DEFAULT_DEPTH: usize = 4;
pub const DEFAULT_ORDER: usize = 4;
pub const DEFAULT_BALL_CAP: usize = 200_000;
pub const DEFAULT_GUARD_MB: f64 = 4096.0;

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotGcm(_) | Error::NotSymmetrizable | Error::UnsupportedType(_) | Error::WrongKind(_) => 3,
            Error::BallTooLarge(_) | Error::HeightBoundExceeded { .. } => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

pub fn parse_labels(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("malformed integer {x:?} in weight")))
        .collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>, String> {
    s.split(';').map(parse_labels).collect()
}

impl JobConfig {
    pub fn datum(&self) -> Result<CartanDatum, Failure> {
        Ok(match &self.algebra {
            AlgebraSpec::Name(n) => CartanDatum::named(n)?,
            AlgebraSpec::Matrix { matrix } => {
                let n = matrix.len();
                if n == 0 || matrix.iter().any(|r| r.len() != n) {
                    return Err(Failure::config("matrix must be square and nonempty"));
                }
                CartanDatum::validate(matrix.clone(), None)?
            }
        })
    }

    pub fn algebra_label(&self) -> String {
        match &self.algebra {
            AlgebraSpec::Name(n) => n.trim().to_string(),
            AlgebraSpec::Matrix { matrix } => {
                let rows: Vec<String> = matrix
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                rows.join(";")
            }
        }
    }

    fn weight_from(&self, d: &CartanDatum, labels: &[i64], delta: i64, what: &str) -> Result<Weight, Failure> {
        if labels.len() != d.rank() {
            return Err(Failure::config(format!(
                "{what} has {} labels, algebra has rank {}",
                labels.len(),
                d.rank()
            )));
        }
        if delta != 0 && !d.is_affine() {
            return Err(Failure::config(format!("{what}: finite-type weights carry no delta part")));
        }
        Ok(Weight::new(labels.to_vec(), delta))
    }

    pub fn lambda(&self, d: &CartanDatum) -> Result<Weight, Failure> {
        match &self.weight {
            Some(l) => self.weight_from(d, l, self.delta, "weight"),
            None => Err(Failure::config("this command needs --weight")),
        }
    }

    pub fn mu(&self, d: &CartanDatum) -> Result<Option<Weight>, Failure> {
        self.mu.as_ref().map(|l| self.weight_from(d, l, self.mu_delta, "mu")).transpose()
    }

    pub fn depth(&self) -> usize {
        self.depth.unwrap_or(DEFAULT_DEPTH)
    }

    pub fn order(&self) -> usize {
        self.order.unwrap_or(DEFAULT_ORDER)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }

    /// Height of the deepest formal series the job will build.
    fn working_depth(&self, d: &CartanDatum) -> usize {
        let hd = d.delta_height().unwrap_or(1).max(1) as usize;
        match (self.command, self.check) {
            (Command::String, _) | (Command::Verify, Some(Check::Level0 | Check::Level1)) => {
                // the offset of mu below lambda is added on top; bounded by the label size
                let extra: i64 = self.weight.iter().chain(self.mu.iter()).flatten().map(|x| x.abs()).sum();
                self.order() * hd + extra as usize
            }
            _ => self.depth(),
        }
    }

    /// Rough size of the largest table: points of `Q+` up to the working depth
    /// times a dense polynomial each.
    pub fn estimated_mb(&self, d: &CartanDatum) -> f64 {
        let depth = self.working_depth(d) as f64;
        let mut points = 1.0;
        for i in 1..=d.rank() {
            points *= (depth + i as f64) / i as f64;
        }
        points * (depth + 1.0) * 8.0 * 4.0 / (1024.0 * 1024.0)
    }
}

pub fn guard_mb() -> Result<f64, Failure> {
    match std::env::var("KMK_MEMORY_GUARD_MB") {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .map_err(|_| Failure::config(format!("KMK_MEMORY_GUARD_MB={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_GUARD_MB),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weights_and_matrices() {
        assert_eq!(parse_labels("1, 0,-2").unwrap(), vec![1, 0, -2]);
        assert_eq!(parse_labels("[3]").unwrap(), vec![3]);
        assert!(parse_labels("1,x").is_err());
        assert_eq!(parse_matrix("2,-1;-1,2").unwrap(), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn config_round_trip() {
        let text = r#"{"algebra": {"matrix": [[2,-2],[-2,2]]}, "command": "verify", "check": "tensor-minus-one", "weight": [1,1]}"#;
        let cfg: JobConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.check, Some(Check::TensorMinusOne));
        assert!(cfg.datum().unwrap().is_affine());
        assert!(serde_json::from_str::<JobConfig>(r#"{"algebra":"A2","command":"kostka","bogus":1}"#).is_err());
    }
}
