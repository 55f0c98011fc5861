//! Generalized sums `Σ_{a∈I} τ_a` over an index order `I`, for the summand
//! families whose result is determined by the family alone.

use alloc::format;
use alloc::vec::Vec;

use super::{OrderType, OrderTypeError, Result, Term};

/// What is known about the summands `τ_a` of a generalized sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SummandSpec {
    /// Every summand is finite, and infinitely many are nonzero in each
    /// ω-segment of the index.
    FiniteNonzero,
    /// Every summand is below `ω^(e+1)`, and infinitely many in each
    /// ω-segment of the index are at least `ω^e`.
    Leading { exponent: OrderType },
    /// Every summand equals the given type.
    Uniform(OrderType),
    /// Summands are below `ω^ω`, and their leading exponents are unbounded
    /// on every ω-segment of the index.
    UnboundedFiniteDegree,
}

/// Evaluates `Σ_{a∈index} τ_a`.
///
/// For a reversed index the summands are taken to be the mirrored family, and
/// the result is the reverse of the sum over the reversed index.
pub fn sum_over(index: &OrderType, summands: &SummandSpec) -> Result<OrderType> {
    let index = index.normalize()?;
    if index.is_zero() {
        return Ok(OrderType::zero());
    }
    if let SummandSpec::Uniform(tau) = summands {
        return tau.mul(&index);
    }
    if index.has_reversed() {
        if index.has_ordinal() {
            return Err(OrderTypeError::UnsupportedSummandFamily(format!(
                "index {index} mixes ordinal and reversed blocks"
            )));
        }
        let mirrored = sum_over_ordinal(&index.reverse().normalize()?, summands)?;
        return mirrored.reverse().normalize();
    }
    sum_over_ordinal(&index, summands)
}

fn sum_over_ordinal(index: &OrderType, summands: &SummandSpec) -> Result<OrderType> {
    if !index.is_limit_ordinal() {
        return Err(OrderTypeError::UnsupportedSummandFamily(format!(
            "index {index} has a last element, so the sum depends on individual summands"
        )));
    }
    match summands {
        SummandSpec::FiniteNonzero => Ok(index.clone()),
        SummandSpec::Leading { exponent } => {
            let exponent = exponent.normalize()?;
            if exponent.has_reversed() {
                return Err(OrderTypeError::UnsupportedForm(format!(
                    "exponent {exponent} is not an ordinal"
                )));
            }
            OrderType::omega_power(exponent, 1).mul(index)
        }
        SummandSpec::UnboundedFiniteDegree => {
            let quotient = left_divide_by_omega(index);
            OrderType::omega_power(OrderType::omega(), 1).mul(&quotient)
        }
        SummandSpec::Uniform(_) => unreachable!("handled by sum_over"),
    }
}

/// For a limit ordinal `α`, the `β` with `ω·β = α`.
fn left_divide_by_omega(alpha: &OrderType) -> OrderType {
    let terms: Vec<Term> = alpha
        .terms()
        .iter()
        .map(|term| {
            let exponent = term.exponent().cloned().unwrap_or_default();
            let exponent = match exponent.finite_value() {
                Some(n) => OrderType::finite(n - 1),
                // 1 + e = e for infinite e
                None => exponent,
            };
            Term::power(exponent, term.coefficient())
        })
        .collect();
    OrderType::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ot(s: &str) -> OrderType {
        s.parse().unwrap()
    }

    #[test]
    fn finite_summands_over_omega() {
        assert_eq!(
            sum_over(&ot("w"), &SummandSpec::FiniteNonzero).unwrap(),
            ot("w")
        );
        assert_eq!(
            sum_over(&ot("rev(w)"), &SummandSpec::FiniteNonzero).unwrap(),
            ot("rev(w)")
        );
    }

    #[test]
    fn uniform_summands() {
        assert_eq!(
            sum_over(&ot("w"), &SummandSpec::Uniform(ot("w*2"))).unwrap(),
            ot("w^2")
        );
        assert_eq!(
            sum_over(&ot("rev(w)"), &SummandSpec::Uniform(ot("rev(w)*2"))).unwrap(),
            ot("rev(w^2)")
        );
    }

    #[test]
    fn leading_family() {
        for n in 2..=5u64 {
            let spec = SummandSpec::Leading {
                exponent: OrderType::finite(n - 1),
            };
            assert_eq!(
                sum_over(&ot("w"), &spec).unwrap(),
                OrderType::omega_power(OrderType::finite(n), 1)
            );
        }
    }

    #[test]
    fn unbounded_degrees() {
        let spec = SummandSpec::UnboundedFiniteDegree;
        assert_eq!(sum_over(&ot("w"), &spec).unwrap(), ot("w^w"));
        assert_eq!(sum_over(&ot("w^3"), &spec).unwrap(), ot("w^(w+2)"));
        assert_eq!(sum_over(&ot("rev(w)"), &spec).unwrap(), ot("rev(w^w)"));
    }

    #[test]
    fn unsupported_indices() {
        let spec = SummandSpec::FiniteNonzero;
        assert!(matches!(
            sum_over(&ot("w + 1"), &spec),
            Err(OrderTypeError::UnsupportedSummandFamily(_))
        ));
        assert!(matches!(
            sum_over(&ot("3"), &spec),
            Err(OrderTypeError::UnsupportedSummandFamily(_))
        ));
        assert!(matches!(
            sum_over(&ot("rev(w) + w"), &spec),
            Err(OrderTypeError::UnsupportedSummandFamily(_))
        ));
        assert_eq!(sum_over(&ot("0"), &spec).unwrap(), ot("0"));
    }
}
