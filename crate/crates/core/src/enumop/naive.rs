//! Reference implementations written directly from the operator definitions:
//! an element set plus a comparison predicate, with no attention to output
//! order or efficiency. Used to cross-check the real implementations.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use alloc::vec::Vec;

use super::Operator;
use crate::diagram::FiniteDiagram;
use crate::name::ElementName;

type Less = Rc<dyn Fn(&ElementName, &ElementName) -> bool>;

pub struct NaiveOutput {
    pub elements: BTreeSet<ElementName>,
    pub less: Less,
}

impl NaiveOutput {
    /// True iff `d` has exactly these elements and agrees with `less` on every pair.
    pub fn agrees_with(&self, d: &FiniteDiagram) -> bool {
        let listed: BTreeSet<&ElementName> = d.elements().iter().collect();
        if listed.len() != self.elements.len() || !self.elements.iter().all(|x| listed.contains(x))
        {
            return false;
        }
        let xs = d.elements();
        for (i, x) in xs.iter().enumerate() {
            if (self.less)(x, x) {
                return false;
            }
            for y in &xs[i + 1..] {
                if !(self.less)(x, y) || (self.less)(y, x) {
                    return false;
                }
            }
        }
        true
    }
}

/// `None` when an operator needs atom names and the input has others, or
/// when a `power` output would exceed its budget.
pub fn naive_apply(op: &Operator, input: &FiniteDiagram) -> Option<NaiveOutput> {
    let xs: Vec<ElementName> = input.elements().to_vec();
    let pos = {
        let d = input.clone();
        Rc::new(move |x: &ElementName| d.position(x).expect("input element"))
    };
    let value = |x: &ElementName| x.as_atom();
    match op {
        Operator::LexSum | Operator::Radius | Operator::Interval => {
            let mut elements = BTreeSet::new();
            for a in &xs {
                for d in &xs {
                    if naive_pair_member(op, input, a, d)? {
                        elements.insert(ElementName::pair(a, d));
                    }
                }
            }
            let p = pos.clone();
            let less: Less = Rc::new(move |x, y| match (x, y) {
                (ElementName::Pair(a, b), ElementName::Pair(c, d)) => (p(a), p(b)) < (p(c), p(d)),
                _ => false,
            });
            Some(NaiveOutput { elements, less })
        }
        Operator::Power { budget } => {
            let mut elements = BTreeSet::new();
            for a in &xs {
                let v = value(a)?;
                let count = (xs.len() as u64).checked_pow(u32::try_from(v).ok()?)?;
                if count > *budget || v > *budget {
                    return None;
                }
                for t in all_tuples(&xs, v as usize) {
                    elements.insert(ElementName::Tuple(Box::new(a.clone()), t));
                }
            }
            if elements.len() as u64 > *budget {
                return None;
            }
            let p = pos.clone();
            let less: Less = Rc::new(move |x, y| match (x, y) {
                (ElementName::Tuple(a, s), ElementName::Tuple(b, t)) => {
                    if a != b {
                        return p(a) < p(b);
                    }
                    // rightmost differing component decides
                    s.iter()
                        .zip(t)
                        .rev()
                        .find(|(u, w)| u != w)
                        .is_some_and(|(u, w)| p(u) < p(w))
                }
                _ => false,
            });
            Some(NaiveOutput { elements, less })
        }
        Operator::SelfPower(k) => {
            let elements = all_tuples(&xs, *k as usize)
                .into_iter()
                .map(|t| ElementName::Tuple(Box::new(t[0].clone()), t[1..].to_vec()))
                .collect();
            let p = pos.clone();
            let less: Less = Rc::new(move |x, y| match (x, y) {
                (ElementName::Tuple(a, s), ElementName::Tuple(b, t)) => {
                    let u: Vec<&ElementName> = core::iter::once(&**a).chain(s).collect();
                    let w: Vec<&ElementName> = core::iter::once(&**b).chain(t).collect();
                    u.iter()
                        .zip(&w)
                        .rev()
                        .find(|(m, n)| m != n)
                        .is_some_and(|(m, n)| p(m) < p(n))
                }
                _ => false,
            });
            Some(NaiveOutput { elements, less })
        }
        Operator::Copies { k, inner } => {
            let inner = naive_apply(inner, input)?;
            tagged(
                (0..*k)
                    .map(|_| NaiveOutput {
                        elements: inner.elements.clone(),
                        less: inner.less.clone(),
                    })
                    .collect(),
            )
        }
        Operator::Hetero(ops) => {
            let outputs = ops
                .iter()
                .map(|o| naive_apply(o, input))
                .collect::<Option<Vec<_>>>()?;
            tagged(outputs)
        }
        Operator::Product(l, r) => {
            let left = naive_apply(l, input)?;
            let right = naive_apply(r, input)?;
            let mut elements = BTreeSet::new();
            for x in &left.elements {
                for y in &right.elements {
                    elements.insert(ElementName::pair(x, y));
                }
            }
            let (ll, rl) = (left.less.clone(), right.less.clone());
            let less: Less = Rc::new(move |u, v| match (u, v) {
                (ElementName::Pair(x1, y1), ElementName::Pair(x2, y2)) => {
                    rl(y1, y2) || (y1 == y2 && ll(x1, x2))
                }
                _ => false,
            });
            Some(NaiveOutput { elements, less })
        }
    }
}

/// Membership of `(a, d)` in the output of a pair-producing operator,
/// recomputed from scratch for every pair.
fn naive_pair_member(
    op: &Operator,
    input: &FiniteDiagram,
    a: &ElementName,
    d: &ElementName,
) -> Option<bool> {
    let xs = input.elements();
    let le = |x: &ElementName, y: &ElementName| input.position(x) <= input.position(y);
    match op {
        Operator::LexSum => Some(true),
        Operator::Radius => {
            let left = xs.iter().filter(|b| le(b, a)).count() as u64;
            let right = xs.iter().filter(|b| le(a, b)).count() as u64;
            Some(d.as_atom()? <= left.min(right))
        }
        Operator::Interval => {
            let va = a.as_atom()?;
            let mut s = Vec::new();
            for x in xs {
                if x.as_atom()? <= va {
                    s.push(x);
                }
            }
            let b = s
                .iter()
                .copied()
                .filter(|x| le(x, a))
                .min_by_key(|x| input.position(x))?;
            let c = s
                .iter()
                .copied()
                .filter(|x| le(a, x))
                .max_by_key(|x| input.position(x))?;
            Some(le(b, d) && le(d, c))
        }
        _ => None,
    }
}

fn tagged(outputs: Vec<NaiveOutput>) -> Option<NaiveOutput> {
    let mut elements = BTreeSet::new();
    for (i, out) in outputs.iter().enumerate() {
        elements.extend(
            out.elements
                .iter()
                .map(|x| ElementName::copy(i as u64, x.clone())),
        );
    }
    let lesses: Vec<Less> = outputs.into_iter().map(|o| o.less).collect();
    let less: Less = Rc::new(move |x, y| match (x, y) {
        (ElementName::Copy(i, a), ElementName::Copy(j, b)) => {
            i < j || (i == j && lesses[*i as usize](a, b))
        }
        _ => false,
    });
    Some(NaiveOutput { elements, less })
}

/// Every sequence of length `k` over `xs`, in no particular order.
fn all_tuples(xs: &[ElementName], k: usize) -> Vec<Vec<ElementName>> {
    let n = xs.len();
    if n == 0 {
        return if k == 0 {
            alloc::vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let total = n.pow(k as u32);
    (0..total)
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let x = xs[code % n].clone();
                    code /= n;
                    x
                })
                .collect()
        })
        .collect()
}
