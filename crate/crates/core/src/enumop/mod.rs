//! Enumeration operators: monotone maps on finite diagrams, each with a
//! symbolic transfer function on order types.
//!
//! Operator identifiers:
//!
//! ```text
//! op := 'lexsum' | 'rad' | 'interval' | 'power' | 'selfpow:' k
//!     | 'copies:' k ':' op | 'prod:' op ':' op | 'hetero:' [op (',' op)*]
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::diagram::FiniteDiagram;
use crate::name::ElementName;
use crate::ordertype::{OrderType, OrderTypeError};

mod apply;
pub mod naive;
mod stream;
mod transfer;

pub use stream::{run_stream, StreamError};

/// Default cap on the number of output facts of one `power` application.
pub const DEFAULT_POWER_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("operator {op} needs atom-named input, got {name}")]
    NonAtomInput { op: String, name: ElementName },
    #[error("output would have {needed} elements, over the budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("{input} is outside the supported input fragment of {op}: {reason}")]
    InputOutsideFragment {
        op: String,
        input: String,
        reason: String,
    },
    #[error("invalid operator identifier '{text}': {reason}")]
    InvalidOperator { text: String, reason: String },
    #[error(transparent)]
    OrderType(#[from] OrderTypeError),
}

/// A monotone operator on finite linear orders.
pub trait EnumOperator {
    fn name(&self) -> String;

    /// The output diagram; a strict total order on structured names.
    fn apply(&self, input: &FiniteDiagram) -> Result<FiniteDiagram, OpError>;

    /// The order type of the output on a presentation of `input`.
    fn transfer(&self, input: &OrderType) -> Result<OrderType, OpError>;

    /// Human-readable description of the inputs `transfer` accepts.
    fn input_fragment(&self) -> String;
}

/// The shipped operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operator {
    /// Every pair, lexicographically.
    LexSum,
    /// Pairs `(a, d)` with `value(d)` at most the radius of `a`.
    Radius,
    /// Each point replaced by an interval around it.
    Interval,
    /// Each `a` replaced by the tuples of length `value(a)`.
    Power { budget: u64 },
    /// `k` tagged copies of the inner output.
    Copies { k: u64, inner: Box<Operator> },
    /// Tagged outputs of each operator, in sequence.
    Hetero(Vec<Operator>),
    /// `k`-tuples, rightmost coordinate most significant.
    SelfPower(u32),
    /// Pairs from the two outputs, right coordinate most significant.
    Product(Box<Operator>, Box<Operator>),
}

impl Operator {
    pub fn power() -> Operator {
        Operator::Power {
            budget: DEFAULT_POWER_BUDGET,
        }
    }

    pub fn copies(k: u64, inner: Operator) -> Operator {
        Operator::Copies {
            k,
            inner: Box::new(inner),
        }
    }

    pub fn product(left: Operator, right: Operator) -> Operator {
        Operator::Product(Box::new(left), Box::new(right))
    }

    /// The same operator with every `power` component capped at `budget`.
    pub fn with_power_budget(&self, budget: u64) -> Operator {
        match self {
            Operator::Power { .. } => Operator::Power { budget },
            Operator::Copies { k, inner } => Operator::copies(*k, inner.with_power_budget(budget)),
            Operator::Hetero(ops) => {
                Operator::Hetero(ops.iter().map(|o| o.with_power_budget(budget)).collect())
            }
            Operator::Product(l, r) => {
                Operator::product(l.with_power_budget(budget), r.with_power_budget(budget))
            }
            other => other.clone(),
        }
    }

    /// Whether `apply` reads the natural-number values of atom names.
    pub fn reads_values(&self) -> bool {
        match self {
            Operator::Radius | Operator::Interval | Operator::Power { .. } => true,
            Operator::LexSum | Operator::SelfPower(_) => false,
            Operator::Copies { inner, .. } => inner.reads_values(),
            Operator::Hetero(ops) => ops.iter().any(Operator::reads_values),
            Operator::Product(l, r) => l.reads_values() || r.reads_values(),
        }
    }

    /// Whether the output size grows faster than polynomially in the input.
    pub fn is_explosive(&self) -> bool {
        match self {
            Operator::Power { .. } => true,
            Operator::SelfPower(k) => *k > 2,
            Operator::Copies { inner, .. } => inner.is_explosive(),
            Operator::Hetero(ops) => ops.iter().any(Operator::is_explosive),
            Operator::Product(..) => true,
            _ => false,
        }
    }
}

impl EnumOperator for Operator {
    fn name(&self) -> String {
        self.to_string()
    }

    fn apply(&self, input: &FiniteDiagram) -> Result<FiniteDiagram, OpError> {
        let order = apply::apply(self, input)?;
        Ok(FiniteDiagram::from_order(order).expect("operator output names are distinct"))
    }

    fn transfer(&self, input: &OrderType) -> Result<OrderType, OpError> {
        transfer::transfer(self, input)
    }

    fn input_fragment(&self) -> String {
        transfer::fragment(self)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::LexSum => f.write_str("lexsum"),
            Operator::Radius => f.write_str("rad"),
            Operator::Interval => f.write_str("interval"),
            Operator::Power { .. } => f.write_str("power"),
            Operator::Copies { k, inner } => write!(f, "copies:{k}:{inner}"),
            Operator::Hetero(ops) => {
                f.write_str("hetero:")?;
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{op}")?;
                }
                Ok(())
            }
            Operator::SelfPower(k) => write!(f, "selfpow:{k}"),
            Operator::Product(l, r) => write!(f, "prod:{l}:{r}"),
        }
    }
}

impl FromStr for Operator {
    type Err = OpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = IdParser {
            text: s,
            rest: s.trim(),
        };
        let op = parser.op()?;
        if !parser.rest.is_empty() {
            return Err(parser.error(&format!("unexpected '{}'", parser.rest)));
        }
        Ok(op)
    }
}

struct IdParser<'a> {
    text: &'a str,
    rest: &'a str,
}

impl IdParser<'_> {
    fn error(&self, reason: &str) -> OpError {
        OpError::InvalidOperator {
            text: self.text.to_string(),
            reason: reason.to_string(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        match self.rest.strip_prefix(token) {
            Some(rest) => {
                self.rest = rest;
                true
            }
            None => false,
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), OpError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn number(&mut self) -> Result<u64, OpError> {
        let digits = self.rest.bytes().take_while(u8::is_ascii_digit).count();
        let n = self.rest[..digits]
            .parse()
            .map_err(|_| self.error("expected a positive integer"))?;
        self.rest = &self.rest[digits..];
        if n == 0 {
            return Err(self.error("count must be positive"));
        }
        Ok(n)
    }

    fn op(&mut self) -> Result<Operator, OpError> {
        if self.eat("lexsum") {
            return Ok(Operator::LexSum);
        }
        if self.eat("rad") {
            return Ok(Operator::Radius);
        }
        if self.eat("interval") {
            return Ok(Operator::Interval);
        }
        if self.eat("power") {
            return Ok(Operator::power());
        }
        if self.eat("selfpow:") {
            let k = self.number()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
            return Ok(Operator::SelfPower(k));
        }
        if self.eat("copies:") {
            let k = self.number()?;
            self.expect(":")?;
            return Ok(Operator::copies(k, self.op()?));
        }
        if self.eat("prod:") {
            let left = self.op()?;
            self.expect(":")?;
            return Ok(Operator::product(left, self.op()?));
        }
        if self.eat("hetero:") {
            let mut ops = Vec::new();
            if self.rest.is_empty() || self.rest.starts_with(':') {
                return Ok(Operator::Hetero(ops));
            }
            loop {
                ops.push(self.op()?);
                if !self.eat(",") {
                    break;
                }
            }
            return Ok(Operator::Hetero(ops));
        }
        Err(self.error("unknown operator"))
    }
}

/// Sizes used when sampling random input diagrams for an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialShape {
    pub max_size: usize,
    pub name_bound: u64,
}

impl TrialShape {
    /// Inputs of up to 12 atoms, smaller for operators whose output explodes.
    pub fn for_operator(op: &Operator) -> TrialShape {
        match op {
            Operator::Power { .. } => TrialShape {
                max_size: 4,
                name_bound: 5,
            },
            Operator::SelfPower(k) if *k <= 2 => TrialShape {
                max_size: 12,
                name_bound: 24,
            },
            Operator::SelfPower(_) | Operator::Product(..) => TrialShape {
                max_size: 6,
                name_bound: 12,
            },
            Operator::Copies { inner, .. } => TrialShape::for_operator(inner),
            Operator::Hetero(ops) => ops
                .iter()
                .map(TrialShape::for_operator)
                .min_by_key(|s| s.max_size)
                .unwrap_or(TrialShape {
                    max_size: 12,
                    name_bound: 24,
                }),
            _ => TrialShape {
                max_size: 12,
                name_bound: 24,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_round_trip() {
        for id in [
            "lexsum",
            "rad",
            "interval",
            "power",
            "selfpow:2",
            "copies:3:rad",
            "prod:interval:selfpow:2",
            "hetero:rad,rad,copies:2:lexsum",
            "prod:hetero:rad,rad:lexsum",
            "hetero:",
        ] {
            let op: Operator = id.parse().unwrap();
            assert_eq!(op.to_string(), id);
        }
    }

    #[test]
    fn bad_identifiers() {
        for id in [
            "",
            "radius",
            "copies:0:rad",
            "copies:rad",
            "prod:rad",
            "selfpow:",
            "rad,rad",
            "foo",
        ] {
            assert!(
                matches!(id.parse::<Operator>(), Err(OpError::InvalidOperator { .. })),
                "{id}"
            );
        }
    }
}
