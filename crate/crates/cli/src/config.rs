use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use flagflux::correspond::DEFAULT_RANK_BOUND;
use flagflux::gcs::BlockSpec;
use flagflux::tduality::DEFAULT_BUDGET;
use flagflux::Series;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const RANK_BOUND_ENV: &str = "FLAGFLUX_RANK_BOUND";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    RootSystem,
    Nilradical,
    Dualize,
    Correspond,
    Selfdual,
    GcsTransport,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::RootSystem => "root-system",
            CommandName::Nilradical => "nilradical",
            CommandName::Dualize => "dualize",
            CommandName::Correspond => "correspond",
            CommandName::Selfdual => "selfdual",
            CommandName::GcsTransport => "gcs-transport",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// A job as written in a config file or assembled from flags. Every field is
/// optional here; [`JobConfig::resolve`] fills defaults and checks presence.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_summands: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flux: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Keyed by root, written as in the legend (`α1+α2`) or as a
    /// coefficient list (`1,1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BTreeMap<String, BlockSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    /// Overlays `file` on `self`. The file wins; each overridden flag is
    /// returned as a warning.
    pub fn overlay(self, file: JobConfig) -> (JobConfig, Vec<String>) {
        let mut warnings = Vec::new();
        macro_rules! pick {
            ($field:ident) => {
                match (self.$field, file.$field) {
                    (Some(flag), Some(from_file)) => {
                        if flag != from_file {
                            warnings.push(format!(
                                "--{} overridden by the config file",
                                stringify!($field).replace('_', "-")
                            ));
                        }
                        Some(from_file)
                    }
                    (flag, from_file) => from_file.or(flag),
                }
            };
        }
        let merged = JobConfig {
            command: pick!(command),
            series: pick!(series),
            rank: pick!(rank),
            theta: pick!(theta),
            algebra: pick!(algebra),
            ideal: pick!(ideal),
            ideal_summands: pick!(ideal_summands),
            flux: pick!(flux),
            rank_bound: pick!(rank_bound),
            budget: pick!(budget),
            blocks: pick!(blocks),
            format: pick!(format),
        };
        (merged, warnings)
    }

    pub fn resolve(self, env_rank_bound: Option<&str>) -> Result<Job, CliError> {
        let command = self
            .command
            .ok_or_else(|| CliError::Parse("no command given".into()))?;
        let series = match self.series.as_deref() {
            None => Series::A,
            Some(s) => parse_series(s)?,
        };
        let rank_bound = match (self.rank_bound, env_rank_bound) {
            (Some(b), _) => b,
            (None, Some(v)) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("{RANK_BOUND_ENV}={v:?} is not a positive integer")))?,
            (None, None) => DEFAULT_RANK_BOUND,
        };
        let job = Job {
            command,
            series,
            rank: self.rank,
            theta: self.theta.unwrap_or_default(),
            algebra: self.algebra,
            ideal: self.ideal,
            ideal_summands: self.ideal_summands,
            flux: self.flux.unwrap_or_else(|| "0".into()),
            rank_bound,
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            blocks: self.blocks,
            format: self.format.unwrap_or_default(),
        };
        job.validate()?;
        Ok(job)
    }
}

/// A fully resolved job. Serialized into every report so a run can be
/// repeated from its output alone.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Job {
    pub command: CommandName,
    pub series: Series,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub theta: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal_summands: Option<Vec<usize>>,
    pub flux: String,
    pub rank_bound: usize,
    pub budget: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BTreeMap<String, BlockSpec>>,
    #[serde(skip)]
    pub format: Format,
}

impl Job {
    fn validate(&self) -> Result<(), CliError> {
        let missing = |what: &str| CliError::Parse(format!("{} needs {what}", self.command.as_str()));
        let flag_or_algebra = self.rank.is_some() || self.algebra.is_some();
        match self.command {
            CommandName::RootSystem | CommandName::Nilradical | CommandName::Selfdual => {
                self.rank.ok_or_else(|| missing("--rank"))?;
            }
            CommandName::Dualize | CommandName::Correspond => {
                if !flag_or_algebra {
                    return Err(missing("--rank or --algebra"));
                }
            }
            CommandName::GcsTransport => {
                self.rank.ok_or_else(|| missing("--rank"))?;
            }
        }
        if self.rank.is_some() && self.algebra.is_some() {
            return Err(CliError::Parse("--rank and --algebra are mutually exclusive".into()));
        }
        if matches!(
            self.command,
            CommandName::Dualize | CommandName::Correspond | CommandName::GcsTransport
        ) {
            match (&self.ideal, &self.ideal_summands) {
                (None, None) => return Err(missing("--ideal or --ideal-summands")),
                (Some(_), Some(_)) => {
                    return Err(CliError::Parse("--ideal and --ideal-summands are mutually exclusive".into()))
                }
                (None, Some(_)) if self.algebra.is_some() => {
                    return Err(CliError::Parse("--ideal-summands needs a flag, not --algebra".into()))
                }
                _ => {}
            }
        }
        if self.command == CommandName::GcsTransport && self.blocks.is_none() {
            return Err(missing("--blocks"));
        }
        if self.rank_bound == 0 {
            return Err(CliError::Parse("--rank-bound must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn parse_series(s: &str) -> Result<Series, CliError> {
    Ok(match s.trim() {
        "A" | "a" => Series::A,
        "B" | "b" => Series::B,
        "C" | "c" => Series::C,
        "D" | "d" => Series::D,
        "E" | "e" => Series::E,
        "F" | "f" => Series::F,
        "G" | "g" => Series::G,
        other => return Err(CliError::Parse(format!("unknown series {other:?}"))),
    })
}

/// `1,3,5`, with braces and spaces tolerated; the empty string is the empty list.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>, CliError> {
    let body = s.trim().trim_start_matches('{').trim_end_matches('}');
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Parse(format!("not an index: {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_wins_and_warns() {
        let flags = JobConfig {
            rank: Some(3),
            flux: Some("0".into()),
            ..Default::default()
        };
        let file = JobConfig {
            rank: Some(2),
            ideal: Some(vec![3]),
            ..Default::default()
        };
        let (merged, warnings) = flags.overlay(file);
        assert_eq!(merged.rank, Some(2));
        assert_eq!(merged.flux.as_deref(), Some("0"));
        assert_eq!(warnings, vec!["--rank overridden by the config file".to_string()]);
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("{4, 5,6}").unwrap(), vec![4, 5, 6]);
        assert!(parse_index_list("").unwrap().is_empty());
        assert!(parse_index_list("1,x").is_err());
    }

    #[test]
    fn rank_bound_precedence() {
        let cfg = |b: Option<usize>| JobConfig {
            command: Some(CommandName::RootSystem),
            rank: Some(1),
            rank_bound: b,
            ..Default::default()
        };
        assert_eq!(cfg(None).resolve(None).unwrap().rank_bound, DEFAULT_RANK_BOUND);
        assert_eq!(cfg(None).resolve(Some("7")).unwrap().rank_bound, 7);
        assert_eq!(cfg(Some(5)).resolve(Some("7")).unwrap().rank_bound, 5);
        assert!(cfg(None).resolve(Some("seven")).is_err());
    }
}
