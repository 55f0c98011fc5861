//! Finite truncations of order-type expressions, used to refute equalities.
//!
//! Truncating at depth `d` replaces every ω by a chain of `d` elements. Each
//! element is labelled by what sits immediately to its left and right in the
//! infinite order: `None` for nothing at all, `Some(0)` for an immediate
//! neighbour, and `Some(k)` for a limit approached through a block of type
//! `ω^k` (from the left) or `(ω^k)*` (from the right). Isomorphic expressions
//! have truncations that embed into each other with labels preserved.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ordertype::{OrderType, Term};

type Label = (Option<u32>, Option<u32>);

const MAX_TERMS: usize = 3;
const MAX_EXPONENT: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("truncation oracle does not support {0}")]
pub struct TruncationError(pub String);

/// `Ok(false)` proves the expressions denote different order types; `Ok(true)`
/// means no difference was detected at this depth.
pub fn truncation_iso_oracle(
    e1: &OrderType,
    e2: &OrderType,
    depth: u64,
) -> Result<bool, TruncationError> {
    let depth = depth.max(2);
    let slack = coefficient_mass(e1)? + coefficient_mass(e2)?;
    let deep = 2 * depth + 1 + slack;
    let forward = embeds(&truncate(e1, depth)?, &truncate(e2, deep)?);
    let backward = embeds(&truncate(e2, depth)?, &truncate(e1, deep)?);
    Ok(forward && backward && growth(e1, depth)? == growth(e2, depth)?)
}

fn coefficient_mass(e: &OrderType) -> Result<u64, TruncationError> {
    supported(e)?;
    Ok(e.terms().iter().map(Term::coefficient).sum())
}

fn supported(e: &OrderType) -> Result<(), TruncationError> {
    if e.terms().len() > MAX_TERMS {
        return Err(TruncationError(format!("{e}: more than {MAX_TERMS} terms")));
    }
    for t in e.terms() {
        if let Some(exp) = t.exponent() {
            match exp.finite_value() {
                Some(k) if k <= MAX_EXPONENT => {}
                _ => {
                    return Err(TruncationError(format!(
                        "{e}: exponent {exp} is not an integer up to {MAX_EXPONENT}"
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Labels whose count rises from depth `d` to `d + 1`.
fn growth(e: &OrderType, d: u64) -> Result<BTreeSet<Label>, TruncationError> {
    let count = |labels: Vec<Label>| {
        let mut m: BTreeMap<Label, usize> = BTreeMap::new();
        for l in labels {
            *m.entry(l).or_default() += 1;
        }
        m
    };
    let small = count(truncate(e, d)?);
    let large = count(truncate(e, d + 1)?);
    Ok(large
        .into_iter()
        .filter(|(l, n)| small.get(l).copied().unwrap_or(0) < *n)
        .map(|(l, _)| l)
        .collect())
}

/// Label-preserving order embedding of `small` into `big`; greedy matching is exact for subsequences.
fn embeds(small: &[Label], big: &[Label]) -> bool {
    let mut it = big.iter();
    small.iter().all(|l| it.any(|m| m == l))
}

fn truncate(e: &OrderType, d: u64) -> Result<Vec<Label>, TruncationError> {
    supported(e)?;
    let terms: Vec<&Term> = e.terms().iter().filter(|t| t.coefficient() > 0).collect();
    let exponent = |t: &Term| t.exponent().and_then(OrderType::finite_value).unwrap_or(0) as u32;
    let mut out = Vec::new();
    for (j, term) in terms.iter().enumerate() {
        let before = match j.checked_sub(1).map(|i| terms[i]) {
            None => None,
            Some(t @ Term::Ordinal { .. }) => Some(exponent(t)),
            Some(_) => Some(0),
        };
        let after = match terms.get(j + 1) {
            None => None,
            Some(t @ Term::Reversed { .. }) => Some(exponent(t)),
            Some(_) => Some(0),
        };
        match term {
            Term::Finite(m) => {
                for i in 0..*m {
                    let left = if i == 0 { before } else { Some(0) };
                    let right = if i + 1 == *m { after } else { Some(0) };
                    out.push((left, right));
                }
            }
            Term::Ordinal { coefficient, .. } => {
                let k = exponent(term);
                for copy in 0..*coefficient {
                    for z in 0..d.pow(k) {
                        let left = match (z, copy) {
                            (0, 0) => before,
                            (0, _) => Some(k),
                            _ => Some(trailing_zero_digits(z, d, k)),
                        };
                        out.push((left, Some(0)));
                    }
                }
            }
            Term::Reversed { coefficient, .. } => {
                let k = exponent(term);
                for copy in 0..*coefficient {
                    for z in (0..d.pow(k)).rev() {
                        let right = match z {
                            0 if copy + 1 == *coefficient => after,
                            0 => Some(k),
                            _ => Some(trailing_zero_digits(z, d, k)),
                        };
                        out.push((Some(0), right));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Number of trailing zero digits of `z` written with `k` digits in base `d`.
fn trailing_zero_digits(mut z: u64, d: u64, k: u32) -> u32 {
    let mut t = 0;
    while t < k && z.is_multiple_of(d) {
        z /= d;
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(a: &str, b: &str) -> bool {
        truncation_iso_oracle(&a.parse().unwrap(), &b.parse().unwrap(), 4).unwrap()
    }

    #[test]
    fn verdicts() {
        assert!(oracle("w + w^2", "w^2"));
        assert!(!oracle("w", "rev(w)"));
        assert!(!oracle("w*2", "w"));
        assert!(oracle("3 + w", "w"));
        assert!(oracle("rev(w) + 3", "rev(w)"));
        assert!(!oracle("w + 3", "w"));
        assert!(!oracle("w^2 + w", "w^3"));
        assert!(!oracle("w^2 + w", "w^2*2"));
        assert!(!oracle("5", "6"));
        assert!(oracle("5", "5"));
    }

    #[test]
    fn rejects_large_expressions() {
        let big: OrderType = "w^4".parse().unwrap();
        assert!(truncation_iso_oracle(&big, &big, 4).is_err());
        let long: OrderType = "w^3 + w^2 + w + 1".parse().unwrap();
        assert!(truncation_iso_oracle(&long, &long, 4).is_err());
    }
}
