//! Symbolic order types.
//!
//! An [`OrderType`] is a finite sum of blocks read left to right. Each block is
//! a finite chain `m`, an ordinal power `ω^e·m`, or a reversed ordinal power
//! `(ω^e)*·m`. Exponents are themselves pure ordinals in Cantor normal form.
//!
//! Normalization only removes absorbed blocks and merges adjacent blocks of
//! equal exponent and polarity:
//!
//! * `n + ω^e·m = ω^e·m`, and `ω^a·m + ω^b·k = ω^b·k` when `a < b`;
//! * the mirror images `(ω^e)*·m + n = (ω^e)*·m` and
//!   `(ω^b)*·k + (ω^a)*·m = (ω^b)*·k` when `a < b`;
//! * nothing is absorbed across an ordinal/reversed boundary (`ω + ω*` stays).

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::{Serialize, Serializer};

mod parse;
mod sum;

pub use parse::{parse, ParseError};
pub use sum::{sum_over, SummandSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderTypeError {
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error("mixed polarity in product: {left} and {right}")]
    MixedPolarity { left: String, right: String },
    #[error("unsupported summand family: {0}")]
    UnsupportedSummandFamily(String),
    #[error("coefficient overflow")]
    Overflow,
}

pub type Result<T> = core::result::Result<T, OrderTypeError>;

/// One block of an order-type sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// A finite chain with `m` elements.
    Finite(u64),
    /// `ω^exponent · coefficient`.
    Ordinal {
        exponent: OrderType,
        coefficient: u64,
    },
    /// `(ω^exponent)* · coefficient`.
    Reversed {
        exponent: OrderType,
        coefficient: u64,
    },
}

impl Term {
    /// `ω^exponent · coefficient`, collapsing to a finite block when the exponent is zero.
    pub fn power(exponent: OrderType, coefficient: u64) -> Term {
        if exponent.is_zero() {
            Term::Finite(coefficient)
        } else {
            Term::Ordinal {
                exponent,
                coefficient,
            }
        }
    }

    pub fn reversed_power(exponent: OrderType, coefficient: u64) -> Term {
        if exponent.is_zero() {
            Term::Finite(coefficient)
        } else {
            Term::Reversed {
                exponent,
                coefficient,
            }
        }
    }

    /// Exponent of the block; `None` for finite blocks (exponent zero).
    pub fn exponent(&self) -> Option<&OrderType> {
        match self {
            Term::Finite(_) => None,
            Term::Ordinal { exponent, .. } | Term::Reversed { exponent, .. } => Some(exponent),
        }
    }

    pub fn coefficient(&self) -> u64 {
        match self {
            Term::Finite(m) => *m,
            Term::Ordinal { coefficient, .. } | Term::Reversed { coefficient, .. } => *coefficient,
        }
    }

    fn reverse(&self) -> Term {
        match self {
            Term::Finite(m) => Term::Finite(*m),
            Term::Ordinal {
                exponent,
                coefficient,
            } => Term::Reversed {
                exponent: exponent.clone(),
                coefficient: *coefficient,
            },
            Term::Reversed {
                exponent,
                coefficient,
            } => Term::Ordinal {
                exponent: exponent.clone(),
                coefficient: *coefficient,
            },
        }
    }

    fn normalized(&self) -> Result<Option<Term>> {
        match self {
            Term::Finite(0) => Ok(None),
            Term::Finite(m) => Ok(Some(Term::Finite(*m))),
            Term::Ordinal { coefficient: 0, .. } | Term::Reversed { coefficient: 0, .. } => {
                Ok(None)
            }
            Term::Ordinal {
                exponent,
                coefficient,
            }
            | Term::Reversed {
                exponent,
                coefficient,
            } => {
                let exponent = exponent.normalize()?;
                if exponent.has_reversed() {
                    return Err(OrderTypeError::UnsupportedForm(alloc::format!(
                        "exponent {exponent} is not an ordinal"
                    )));
                }
                Ok(Some(match self {
                    Term::Ordinal { .. } => Term::power(exponent, *coefficient),
                    _ => Term::reversed_power(exponent, *coefficient),
                }))
            }
        }
    }
}

/// A symbolic order type: a finite, left-to-right sum of [`Term`]s.
///
/// The empty sum is the empty order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct OrderType {
    terms: Vec<Term>,
}

impl OrderType {
    pub fn zero() -> OrderType {
        OrderType::default()
    }

    pub fn finite(m: u64) -> OrderType {
        OrderType::from_terms([Term::Finite(m)]).dropping_zero()
    }

    /// ω
    pub fn omega() -> OrderType {
        OrderType::omega_power(OrderType::finite(1), 1)
    }

    /// `ω^exponent · coefficient`
    pub fn omega_power(exponent: OrderType, coefficient: u64) -> OrderType {
        OrderType::from_terms([Term::power(exponent, coefficient)]).dropping_zero()
    }

    /// `(ω^exponent)* · coefficient`
    pub fn reversed_power(exponent: OrderType, coefficient: u64) -> OrderType {
        OrderType::from_terms([Term::reversed_power(exponent, coefficient)]).dropping_zero()
    }

    /// Builds an expression from terms as written, without normalizing.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> OrderType {
        OrderType {
            terms: terms.into_iter().collect(),
        }
    }

    fn dropping_zero(mut self) -> OrderType {
        self.terms.retain(|t| t.coefficient() != 0);
        self
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient() == 0)
    }

    pub fn has_reversed(&self) -> bool {
        self.terms
            .iter()
            .any(|t| matches!(t, Term::Reversed { .. }))
    }

    pub fn has_ordinal(&self) -> bool {
        self.terms.iter().any(|t| matches!(t, Term::Ordinal { .. }))
    }

    /// The number of elements, if every block is finite.
    pub fn finite_value(&self) -> Option<u64> {
        self.terms.iter().try_fold(0u64, |acc, t| match t {
            Term::Finite(m) => acc.checked_add(*m),
            _ => None,
        })
    }

    /// True for a nonzero ordinal without a last element. Expects a normalized value.
    pub fn is_limit_ordinal(&self) -> bool {
        !self.has_reversed() && matches!(self.terms.last(), Some(Term::Ordinal { .. }))
    }

    /// Removes absorbed terms and merges adjacent equal-exponent terms of the same polarity.
    ///
    /// Fails with [`OrderTypeError::UnsupportedForm`] when an exponent is not an ordinal.
    pub fn normalize(&self) -> Result<OrderType> {
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            if let Some(term) = term.normalized()? {
                push_absorbing(&mut out, term)?;
            }
        }
        Ok(OrderType { terms: out })
    }

    /// The reverse order: term sequence reversed, ordinal and reversed blocks swapped.
    pub fn reverse(&self) -> OrderType {
        OrderType {
            terms: self.terms.iter().rev().map(Term::reverse).collect(),
        }
    }

    /// Ordered sum `self + other`, normalized.
    pub fn add(&self, other: &OrderType) -> Result<OrderType> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OrderType { terms }.normalize()
    }

    /// Product `self · other`: `self` taken `other` times.
    ///
    /// Defined when both sides are pure ordinals, or both are pure reversed
    /// ordinals (finite blocks count as either).
    pub fn mul(&self, other: &OrderType) -> Result<OrderType> {
        let left = self.normalize()?;
        let right = other.normalize()?;
        if left.is_zero() || right.is_zero() {
            return Ok(OrderType::zero());
        }
        if !left.has_reversed() && !right.has_reversed() {
            return mul_ordinal(&left, &right);
        }
        if !left.has_ordinal() && !right.has_ordinal() {
            let product = mul_ordinal(&left.reverse().normalize()?, &right.reverse().normalize()?)?;
            return product.reverse().normalize();
        }
        Err(OrderTypeError::MixedPolarity {
            left: alloc::format!("{left}"),
            right: alloc::format!("{right}"),
        })
    }

    /// `self^k` as a `k`-fold product; `self^0 = 1`.
    pub fn pow(&self, k: u32) -> Result<OrderType> {
        if k == 0 {
            return Ok(OrderType::finite(1));
        }
        let mut acc = self.normalize()?;
        for _ in 1..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Equality of normal forms.
    pub fn equal(&self, other: &OrderType) -> Result<bool> {
        Ok(self.normalize()? == other.normalize()?)
    }

    /// `e` with `e = 1 + e'` undone: for a successor ordinal `β + 1`, returns `β`.
    pub(crate) fn predecessor(&self) -> Option<OrderType> {
        let mut value = self.normalize().ok()?;
        if value.has_reversed() {
            return None;
        }
        match value.terms.last_mut() {
            Some(Term::Finite(m)) => {
                *m -= 1;
                Some(value.dropping_zero())
            }
            _ => None,
        }
    }
}

/// Compares two normalized pure ordinals in Cantor normal form.
pub fn cmp_ordinal(a: &OrderType, b: &OrderType) -> Ordering {
    for (x, y) in a.terms.iter().zip(&b.terms) {
        let ord =
            cmp_exponent(x.exponent(), y.exponent()).then(x.coefficient().cmp(&y.coefficient()));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

fn cmp_exponent(a: Option<&OrderType>, b: Option<&OrderType>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(a), Some(b)) => cmp_ordinal(a, b),
    }
}

fn checked_add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(OrderTypeError::Overflow)
}

fn push_absorbing(out: &mut Vec<Term>, term: Term) -> Result<()> {
    match term {
        Term::Finite(n) => match out.last_mut() {
            Some(Term::Finite(m)) => *m = checked_add(*m, n)?,
            Some(Term::Reversed { .. }) => {}
            _ => out.push(Term::Finite(n)),
        },
        Term::Ordinal {
            exponent,
            coefficient,
        } => {
            while let Some(last) = out.last() {
                let absorbed = match last {
                    Term::Finite(_) => true,
                    Term::Ordinal { exponent: e, .. } => {
                        cmp_ordinal(e, &exponent) == Ordering::Less
                    }
                    Term::Reversed { .. } => false,
                };
                if !absorbed {
                    break;
                }
                out.pop();
            }
            if let Some(Term::Ordinal {
                exponent: e,
                coefficient: c,
            }) = out.last_mut()
            {
                if *e == exponent {
                    *c = checked_add(*c, coefficient)?;
                    return Ok(());
                }
            }
            out.push(Term::Ordinal {
                exponent,
                coefficient,
            });
        }
        Term::Reversed {
            exponent,
            coefficient,
        } => {
            if let Some(Term::Reversed {
                exponent: e,
                coefficient: c,
            }) = out.last_mut()
            {
                match cmp_ordinal(e, &exponent) {
                    Ordering::Greater => return Ok(()),
                    Ordering::Equal => {
                        *c = checked_add(*c, coefficient)?;
                        return Ok(());
                    }
                    Ordering::Less => {}
                }
            }
            out.push(Term::Reversed {
                exponent,
                coefficient,
            });
        }
    }
    Ok(())
}

// Both arguments normalized, nonzero, without reversed terms.
fn mul_ordinal(left: &OrderType, right: &OrderType) -> Result<OrderType> {
    let (lead, rest) = left.terms.split_first().expect("nonzero");
    let lead_exponent = lead.exponent().cloned().unwrap_or_default();
    let mut terms = Vec::new();
    for term in &right.terms {
        match term {
            Term::Finite(d) => {
                let c = lead
                    .coefficient()
                    .checked_mul(*d)
                    .ok_or(OrderTypeError::Overflow)?;
                terms.push(Term::power(lead_exponent.clone(), c));
                terms.extend(rest.iter().cloned());
            }
            Term::Ordinal {
                exponent,
                coefficient,
            } => {
                terms.push(Term::power(lead_exponent.add(exponent)?, *coefficient));
            }
            Term::Reversed { .. } => unreachable!("checked by caller"),
        }
    }
    OrderType { terms }.normalize()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Finite(m) => write!(f, "{m}"),
            Term::Ordinal {
                exponent,
                coefficient,
            } => {
                write_power(f, exponent)?;
                write_coefficient(f, *coefficient)
            }
            Term::Reversed {
                exponent,
                coefficient,
            } => {
                f.write_str("rev(")?;
                write_power(f, exponent)?;
                f.write_str(")")?;
                write_coefficient(f, *coefficient)
            }
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, exponent: &OrderType) -> fmt::Result {
    f.write_str("w")?;
    match exponent.terms.as_slice() {
        [Term::Finite(1)] => Ok(()),
        [Term::Finite(n)] => write!(f, "^{n}"),
        [Term::Ordinal {
            exponent,
            coefficient: 1,
        }] => {
            f.write_str("^")?;
            write_power(f, exponent)
        }
        [] => f.write_str("^0"),
        _ => write!(f, "^({exponent})"),
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: u64) -> fmt::Result {
    if c != 1 {
        write!(f, "*{c}")?;
    }
    Ok(())
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl FromStr for OrderType {
    type Err = ParseError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for OrderType {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ot(s: &str) -> OrderType {
        s.parse().unwrap()
    }

    fn norm(s: &str) -> String {
        alloc::format!("{}", ot(s).normalize().unwrap())
    }

    #[test]
    fn absorption_rules() {
        assert_eq!(norm("w + w^2"), "w^2");
        assert_eq!(norm("rev(w^2) + rev(w)"), "rev(w^2)");
        assert_eq!(norm("3 + w"), "w");
        assert_eq!(norm("w + 3"), "w + 3");
        assert_eq!(norm("w + rev(w)"), "w + rev(w)");
        assert_eq!(norm("rev(w) + w"), "rev(w) + w");
        assert_eq!(norm("rev(w) + 3 + w"), "rev(w) + w");
        assert_eq!(norm("w*2 + w*3"), "w*5");
        assert_eq!(norm("rev(w) + rev(w^2)"), "rev(w) + rev(w^2)");
        assert_eq!(norm("2 + 3"), "5");
        assert_eq!(norm("w^0*4"), "4");
    }

    #[test]
    fn reversed_block_absorbs_finite_tail() {
        assert_eq!(norm("rev(w) + 3"), "rev(w)");
        assert_eq!(norm("3 + rev(w)"), "3 + rev(w)");
    }

    #[test]
    fn reversed_exponent_is_unsupported() {
        let err = ot("w^(rev(w))").normalize().unwrap_err();
        assert!(matches!(err, OrderTypeError::UnsupportedForm(_)));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(alloc::format!("{}", ot("w^2*3").reverse()), "rev(w^2)*3");
        assert_eq!(
            alloc::format!("{}", ot("w*2 + 3").reverse()),
            "3 + rev(w)*2"
        );
    }

    #[test]
    fn ordinal_products() {
        let w_n = |n: u64| OrderType::omega_power(OrderType::finite(1), n);
        for n in 1..=5 {
            let sq = w_n(n).mul(&w_n(n)).unwrap();
            assert_eq!(sq, OrderType::omega_power(OrderType::finite(2), n));
            assert!(w_n(n)
                .mul(&OrderType::omega())
                .unwrap()
                .equal(&ot("w^2"))
                .unwrap());
        }
        assert_eq!(ot("w^2 + 1").mul(&ot("3")).unwrap(), ot("w^2*3 + 1"));
        assert_eq!(ot("w + 1").mul(&ot("w + 1")).unwrap(), ot("w^2 + w + 1"));
        assert_eq!(ot("rev(w^2)").pow(2).unwrap(), ot("rev(w^4)"));
        assert_eq!(ot("w^w").mul(&ot("w^2")).unwrap(), ot("w^(w+2)"));
        assert!(matches!(
            ot("w").mul(&ot("rev(w)")),
            Err(OrderTypeError::MixedPolarity { .. })
        ));
        assert_eq!(ot("w^3").mul(&ot("1")).unwrap(), ot("w^3"));
    }

    #[test]
    fn cnf_comparison() {
        let a = ot("w^2 + w*3").normalize().unwrap();
        let b = ot("w^2 + w*3 + 1").normalize().unwrap();
        let c = ot("w^2*2").normalize().unwrap();
        assert_eq!(cmp_ordinal(&a, &b), Ordering::Less);
        assert_eq!(cmp_ordinal(&b, &c), Ordering::Less);
        assert_eq!(cmp_ordinal(&ot("w^w"), &ot("w^9")), Ordering::Greater);
    }

    #[test]
    fn predecessor_of_exponents() {
        assert_eq!(ot("3").predecessor(), Some(ot("2")));
        assert_eq!(ot("w + 2").predecessor(), Some(ot("w + 1")));
        assert_eq!(ot("w").predecessor(), None);
    }
}
