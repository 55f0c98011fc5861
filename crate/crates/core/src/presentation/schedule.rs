use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Atoms are permuted inside consecutive windows of this many indices, so
/// every atom is enumerated by a bounded stage.
pub const WINDOW: u64 = 16;

/// The order in which atom indices are enumerated, one per stage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Schedule {
    /// `0, 1, 2, ...`
    Standard,
    /// Within each window, indices grouped by residue mod 4.
    RoundRobin,
    /// Within each window, a ChaCha8 shuffle derived from the seed.
    Seeded(u64),
    /// The listed atoms first, then all others ascending.
    Explicit(Vec<u64>),
}

impl Schedule {
    /// The first `s` enumerated atom indices.
    pub fn first(&self, s: usize) -> Vec<u64> {
        match self {
            Schedule::Standard => (0..s as u64).collect(),
            Schedule::RoundRobin | Schedule::Seeded(_) => {
                let mut out = Vec::with_capacity(s);
                let mut w = 0;
                while out.len() < s {
                    let window = self.window(w);
                    let take = (s - out.len()).min(window.len());
                    out.extend_from_slice(&window[..take]);
                    w += 1;
                }
                out
            }
            Schedule::Explicit(listed) => {
                let mut seen = BTreeSet::new();
                let mut out: Vec<u64> = listed
                    .iter()
                    .copied()
                    .filter(|a| seen.insert(*a))
                    .take(s)
                    .collect();
                let mut next = 0;
                while out.len() < s {
                    if !seen.contains(&next) {
                        out.push(next);
                    }
                    next += 1;
                }
                out
            }
        }
    }

    fn window(&self, w: u64) -> Vec<u64> {
        let mut indices: Vec<u64> = (w * WINDOW..(w + 1) * WINDOW).collect();
        match self {
            Schedule::RoundRobin => indices.sort_by_key(|&i| (i % 4, i)),
            Schedule::Seeded(seed) => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed ^ w.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                indices.shuffle(&mut rng);
            }
            _ => {}
        }
        indices
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Standard => f.write_str("standard"),
            Schedule::RoundRobin => f.write_str("roundrobin"),
            Schedule::Seeded(seed) => write!(f, "seeded:{seed}"),
            Schedule::Explicit(atoms) => {
                f.write_str("explicit:")?;
                for (i, a) in atoms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown schedule '{0}' (expected standard, roundrobin, seeded:<n> or explicit:<a,b,...>)")]
pub struct ScheduleParseError(pub String);

impl FromStr for Schedule {
    type Err = ScheduleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScheduleParseError(s.to_string());
        match s.trim() {
            "standard" => Ok(Schedule::Standard),
            "roundrobin" => Ok(Schedule::RoundRobin),
            other => {
                if let Some(seed) = other.strip_prefix("seeded:") {
                    return seed.trim().parse().map(Schedule::Seeded).map_err(|_| err());
                }
                if let Some(list) = other.strip_prefix("explicit:") {
                    if list.trim().is_empty() {
                        return Ok(Schedule::Explicit(Vec::new()));
                    }
                    return list
                        .split(',')
                        .map(|a| a.trim().parse::<u64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map(Schedule::Explicit)
                        .map_err(|_| err());
                }
                Err(err())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_schedule_is_a_windowed_permutation() {
        for sched in [
            Schedule::Standard,
            Schedule::RoundRobin,
            Schedule::Seeded(7),
            Schedule::Seeded(8),
        ] {
            let mut first = sched.first(64);
            first.sort_unstable();
            assert_eq!(first, (0..64).collect::<Vec<_>>(), "{sched}");
        }
        assert_eq!(&Schedule::RoundRobin.first(5), &[0, 4, 8, 12, 1]);
        assert_ne!(Schedule::Seeded(1).first(16), Schedule::Seeded(2).first(16));
        assert_eq!(Schedule::Seeded(1).first(40), Schedule::Seeded(1).first(40));
    }

    #[test]
    fn explicit_schedule() {
        let s = Schedule::Explicit(alloc::vec![5, 2, 5]);
        assert_eq!(s.first(5), alloc::vec![5, 2, 0, 1, 3]);
        assert_eq!(s.first(1), alloc::vec![5]);
    }

    #[test]
    fn textual_forms() {
        for text in ["standard", "roundrobin", "seeded:42", "explicit:3,1,2"] {
            let s: Schedule = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert!("seeded:x".parse::<Schedule>().is_err());
        assert!("random".parse::<Schedule>().is_err());
    }
}
