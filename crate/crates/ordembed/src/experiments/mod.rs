//! Seeded, reproducible experiments. Each returns a [`Report`] whose bytes
//! depend only on the experiment id, the seed and the stage count.
//!
//! Identifiers: `lexsum[:n]`, `rad[:k]`, `copies[:n]`, `interval[:n]`,
//! `power`, `selfpow[:k]`, `chain-separation`, `recombination[:k[:m]]`,
//! `strict-growth[:m]`, where `m` is a part size.

use std::fmt;
use std::str::FromStr;

use ordembed_core::analysis::AnalysisError;
use ordembed_core::presentation::PresentationError;

use crate::report::{Config, Report};

mod common;
mod constructions;
mod symbolic;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("unknown experiment {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Lexsum(u64),
    Rad(u64),
    /// `None` checks every count up to 7.
    Copies(Option<u64>),
    Interval(u32),
    Power,
    SelfPow(u32),
    ChainSeparation,
    Recombination {
        k: u64,
        part_size: u64,
    },
    StrictGrowth {
        part_size: u64,
    },
}

pub const ALL: &[&str] = &[
    "lexsum",
    "rad",
    "copies",
    "interval",
    "power",
    "selfpow",
    "chain-separation",
    "recombination",
    "strict-growth",
];

impl Experiment {
    pub fn default_stages(&self) -> usize {
        match self {
            Experiment::Lexsum(_) | Experiment::Rad(_) | Experiment::ChainSeparation => 200,
            Experiment::Copies(_) => 60,
            Experiment::Interval(_) => 100,
            Experiment::Power => 40,
            Experiment::SelfPow(_) => 30,
            Experiment::Recombination { .. } | Experiment::StrictGrowth { .. } => 300,
        }
    }

    /// `config` with the settings this experiment overrides.
    pub fn adjust(&self, config: &Config) -> Config {
        let mut config = config.clone();
        if *self == Experiment::Power {
            config.checkpoint_interval = 1;
        }
        config
    }

    pub fn run(&self, config: &Config) -> Result<Report, ExperimentError> {
        let config = &self.adjust(config);
        let mut report = Report::new(format!("exp:{self}"), config.clone());
        match *self {
            Experiment::Lexsum(n) => symbolic::lexsum(&mut report, n, config)?,
            Experiment::Rad(k) => symbolic::rad(&mut report, k, config)?,
            Experiment::Copies(n) => symbolic::copies(&mut report, n, config)?,
            Experiment::Interval(n) => symbolic::interval(&mut report, n, config)?,
            Experiment::Power => symbolic::power(&mut report, config)?,
            Experiment::SelfPow(k) => symbolic::selfpow(&mut report, k, config)?,
            Experiment::ChainSeparation => constructions::chain_separation(&mut report, config)?,
            Experiment::Recombination { k, part_size } => {
                constructions::recombination(&mut report, k, part_size, config)?
            }
            Experiment::StrictGrowth { part_size } => {
                constructions::strict_growth(&mut report, part_size, config)?
            }
        }
        Ok(report)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Experiment::Lexsum(n) => write!(f, "lexsum:{n}"),
            Experiment::Rad(k) => write!(f, "rad:{k}"),
            Experiment::Copies(Some(n)) => write!(f, "copies:{n}"),
            Experiment::Copies(None) => write!(f, "copies"),
            Experiment::Interval(n) => write!(f, "interval:{n}"),
            Experiment::Power => write!(f, "power"),
            Experiment::SelfPow(k) => write!(f, "selfpow:{k}"),
            Experiment::ChainSeparation => write!(f, "chain-separation"),
            Experiment::Recombination { k, part_size } => {
                write!(f, "recombination:{k}:{part_size}")
            }
            Experiment::StrictGrowth { part_size } => write!(f, "strict-growth:{part_size}"),
        }
    }
}

impl FromStr for Experiment {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ExperimentError::Unknown(s.to_string());
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let params: Vec<u64> = parts
            .map(|p| p.parse::<u64>().ok().filter(|&v| v > 0))
            .collect::<Option<_>>()
            .ok_or_else(unknown)?;
        let at_most = |n: usize| {
            if params.len() <= n {
                Ok(())
            } else {
                Err(unknown())
            }
        };
        let get = |i: usize, default: u64| params.get(i).copied().unwrap_or(default);
        let small = |v: u64| u32::try_from(v).map_err(|_| unknown());
        let exp = match name {
            "lexsum" => at_most(1).map(|_| Experiment::Lexsum(get(0, 2)))?,
            "rad" => at_most(1).map(|_| Experiment::Rad(get(0, 1)))?,
            "copies" => at_most(1).map(|_| Experiment::Copies(params.first().copied()))?,
            "interval" => at_most(1)
                .and_then(|_| small(get(0, 2)))
                .map(Experiment::Interval)?,
            "power" => at_most(0).map(|_| Experiment::Power)?,
            "selfpow" => at_most(1)
                .and_then(|_| small(get(0, 2)))
                .map(Experiment::SelfPow)?,
            "chain-separation" => at_most(0).map(|_| Experiment::ChainSeparation)?,
            "recombination" => at_most(2).map(|_| Experiment::Recombination {
                k: get(0, 3),
                part_size: get(1, 1),
            })?,
            "strict-growth" => at_most(1).map(|_| Experiment::StrictGrowth {
                part_size: get(0, 1),
            })?,
            _ => return Err(unknown()),
        };
        Ok(exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert_eq!("rad".parse::<Experiment>().unwrap(), Experiment::Rad(1));
        assert_eq!(
            "recombination:4:3".parse::<Experiment>().unwrap(),
            Experiment::Recombination { k: 4, part_size: 3 }
        );
        for id in ALL {
            let e: Experiment = id.parse().unwrap();
            assert_eq!(e.to_string().parse::<Experiment>().unwrap(), e);
        }
        for bad in [
            "nope",
            "rad:0",
            "rad:x",
            "power:2",
            "rad:1:2",
            "recombination:1:2:3",
        ] {
            assert!(bad.parse::<Experiment>().is_err(), "{bad}");
        }
    }
}
