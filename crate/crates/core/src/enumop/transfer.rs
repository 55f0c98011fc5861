use alloc::format;
use alloc::string::{String, ToString};

use super::{OpError, Operator};
use crate::ordertype::{sum_over, OrderType, OrderTypeError, SummandSpec, Term};

pub(super) fn transfer(op: &Operator, input: &OrderType) -> Result<OrderType, OpError> {
    let input = input.normalize()?;
    let outside = |reason: String| OpError::InputOutsideFragment {
        op: op.to_string(),
        input: input.to_string(),
        reason,
    };
    let lift = |e: OrderTypeError| match e {
        OrderTypeError::Overflow => OpError::OrderType(e),
        other => outside(other.to_string()),
    };
    match op {
        Operator::LexSum => input.mul(&input).map_err(lift),
        Operator::Radius => radius(&input, &outside, &lift),
        Operator::Interval => {
            let exponent = match input.terms() {
                [Term::Ordinal {
                    exponent,
                    coefficient: 1,
                }
                | Term::Reversed {
                    exponent,
                    coefficient: 1,
                }] => exponent,
                _ => {
                    return Err(outside(
                        "expected a single block w^n or rev(w^n)".to_string(),
                    ))
                }
            };
            let lower = exponent
                .finite_value()
                .and_then(|_| exponent.predecessor())
                .ok_or_else(|| outside(format!("exponent {exponent} is not a positive integer")))?;
            sum_over(&input, &SummandSpec::Leading { exponent: lower }).map_err(lift)
        }
        Operator::Power { .. } => {
            let finite_degree = input
                .terms()
                .iter()
                .all(|t| t.exponent().is_none_or(|e| e.finite_value().is_some()));
            if !finite_degree {
                return Err(outside("input must be below w^w".to_string()));
            }
            sum_over(&input, &SummandSpec::UnboundedFiniteDegree).map_err(lift)
        }
        Operator::SelfPower(k) => input.pow(*k).map_err(lift),
        Operator::Copies { k, inner } => {
            let block = transfer(inner, &input)?;
            let mut total = OrderType::zero();
            for _ in 0..*k {
                total = total.add(&block)?;
            }
            Ok(total)
        }
        Operator::Hetero(ops) => {
            let mut total = OrderType::zero();
            for inner in ops {
                total = total.add(&transfer(inner, &input)?)?;
            }
            Ok(total)
        }
        Operator::Product(l, r) => {
            let left = transfer(l, &input)?;
            let right = transfer(r, &input)?;
            left.mul(&right).map_err(lift)
        }
    }
}

/// Splits the input into copies of ω and ω*. An element has finite radius
/// exactly when it lies in a leading ω or a trailing ω*; those blocks are
/// finite and nonzero, all others are a full copy of the input.
fn radius(
    input: &OrderType,
    outside: &impl Fn(String) -> OpError,
    lift: &impl Fn(OrderTypeError) -> OpError,
) -> Result<OrderType, OpError> {
    let mut units = alloc::vec::Vec::new();
    for term in input.terms() {
        match term {
            Term::Ordinal {
                exponent,
                coefficient,
            } if exponent.finite_value() == Some(1) => {
                units.extend(core::iter::repeat_n(
                    OrderType::omega(),
                    *coefficient as usize,
                ));
            }
            Term::Reversed {
                exponent,
                coefficient,
            } if exponent.finite_value() == Some(1) => {
                units.extend(core::iter::repeat_n(
                    OrderType::omega().reverse(),
                    *coefficient as usize,
                ));
            }
            _ => return Err(outside(format!("block {term} is not w or rev(w)"))),
        }
    }
    let last = units.len().saturating_sub(1);
    let mut total = OrderType::zero();
    for (i, unit) in units.iter().enumerate() {
        let finite_radius = if unit.has_reversed() {
            i == last
        } else {
            i == 0
        };
        let spec = if finite_radius {
            SummandSpec::FiniteNonzero
        } else {
            SummandSpec::Uniform(input.clone())
        };
        total = total
            .add(&sum_over(unit, &spec).map_err(lift)?)
            .map_err(lift)?;
    }
    Ok(total)
}

pub(super) fn fragment(op: &Operator) -> String {
    match op {
        Operator::LexSum => "sums of blocks of one polarity".to_string(),
        Operator::Radius => "sums of w and rev(w)".to_string(),
        Operator::Interval => "w^n and rev(w^n) for finite n >= 1".to_string(),
        Operator::Power { .. } => "limit ordinals below w^w and their reverses".to_string(),
        Operator::SelfPower(_) => "sums of blocks of one polarity".to_string(),
        Operator::Copies { inner, .. } => fragment(inner),
        Operator::Hetero(ops) => {
            let parts: alloc::vec::Vec<String> = ops.iter().map(fragment).collect();
            format!("intersection of [{}]", parts.join("; "))
        }
        Operator::Product(l, r) => format!("intersection of [{}; {}]", fragment(l), fragment(r)),
    }
}
