use alloc::vec::Vec;

use super::{OpError, Operator};
use crate::diagram::FiniteDiagram;
use crate::name::ElementName;

/// Output elements in ascending order.
pub(super) fn apply(op: &Operator, input: &FiniteDiagram) -> Result<Vec<ElementName>, OpError> {
    let xs = input.elements();
    match op {
        Operator::LexSum => Ok(xs
            .iter()
            .flat_map(|a| xs.iter().map(move |b| ElementName::pair(a, b)))
            .collect()),
        Operator::Radius => radius(op, xs),
        Operator::Interval => interval(op, xs),
        Operator::Power { budget } => power(op, xs, *budget),
        Operator::SelfPower(k) => Ok(anti_lex_tuples(xs, *k as usize)
            .into_iter()
            .map(|t| ElementName::tuple(&t[0], t[1..].to_vec()))
            .collect()),
        Operator::Copies { k, inner } => {
            let block = apply(inner, input)?;
            Ok((0..*k)
                .flat_map(|i| block.iter().map(move |x| ElementName::copy(i, x.clone())))
                .collect())
        }
        Operator::Hetero(ops) => {
            let mut out = Vec::new();
            for (i, inner) in ops.iter().enumerate() {
                out.extend(
                    apply(inner, input)?
                        .into_iter()
                        .map(|x| ElementName::copy(i as u64, x)),
                );
            }
            Ok(out)
        }
        Operator::Product(l, r) => {
            let left = apply(l, input)?;
            let right = apply(r, input)?;
            Ok(right
                .iter()
                .flat_map(|y| left.iter().map(move |x| ElementName::pair(x, y)))
                .collect())
        }
    }
}

fn atom_values(op: &Operator, xs: &[ElementName]) -> Result<Vec<u64>, OpError> {
    xs.iter()
        .map(|x| {
            x.as_atom().ok_or_else(|| OpError::NonAtomInput {
                op: alloc::string::ToString::to_string(op),
                name: x.clone(),
            })
        })
        .collect()
}

fn radius(op: &Operator, xs: &[ElementName]) -> Result<Vec<ElementName>, OpError> {
    let values = atom_values(op, xs)?;
    let n = xs.len();
    let mut out = Vec::new();
    for (i, a) in xs.iter().enumerate() {
        let rad = ((i + 1).min(n - i)) as u64;
        for (d, &v) in xs.iter().zip(&values) {
            if v <= rad {
                out.push(ElementName::pair(a, d));
            }
        }
    }
    Ok(out)
}

fn interval(op: &Operator, xs: &[ElementName]) -> Result<Vec<ElementName>, OpError> {
    let values = atom_values(op, xs)?;
    let mut by_value: Vec<usize> = (0..xs.len()).collect();
    by_value.sort_unstable_by_key(|&i| values[i]);
    // positions of b and c for each a, as the value threshold rises
    let mut bounds = alloc::vec![(0, 0); xs.len()];
    let (mut lo, mut hi) = (usize::MAX, 0);
    for &i in &by_value {
        lo = lo.min(i);
        hi = hi.max(i);
        bounds[i] = (lo, hi);
    }
    let mut out = Vec::new();
    for (i, a) in xs.iter().enumerate() {
        let (b, c) = bounds[i];
        out.extend(xs[b..=c].iter().map(|d| ElementName::pair(a, d)));
    }
    Ok(out)
}

fn power(op: &Operator, xs: &[ElementName], budget: u64) -> Result<Vec<ElementName>, OpError> {
    let values = atom_values(op, xs)?;
    let n = xs.len() as u64;
    let mut needed: u64 = 0;
    for &v in &values {
        let block = u32::try_from(v)
            .ok()
            .filter(|&v| u64::from(v) <= budget)
            .and_then(|v| n.checked_pow(v))
            .unwrap_or(u64::MAX);
        needed = needed.saturating_add(block);
    }
    if needed > budget {
        return Err(OpError::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for (a, &v) in xs.iter().zip(&values) {
        out.extend(
            anti_lex_tuples(xs, v as usize)
                .into_iter()
                .map(|t| ElementName::tuple(a, t)),
        );
    }
    Ok(out)
}

/// All `k`-tuples over `xs` in ascending order, the last component most significant.
fn anti_lex_tuples(xs: &[ElementName], k: usize) -> Vec<Vec<ElementName>> {
    let mut tuples: Vec<Vec<ElementName>> = alloc::vec![Vec::new()];
    for _ in 0..k {
        // a new least significant component in front
        tuples = tuples
            .iter()
            .flat_map(|t| {
                xs.iter().map(move |x| {
                    let mut longer = Vec::with_capacity(t.len() + 1);
                    longer.push(x.clone());
                    longer.extend_from_slice(t);
                    longer
                })
            })
            .collect();
    }
    tuples
}
