//! Computable presentations: stage-indexed growing finite diagrams whose union
//! realizes a declared order type.
//!
//! Every presentation has domain a set of atoms. Stage `s` contains the atoms
//! among the first `s` enumerated indices that belong to the domain, each
//! inserted with full comparison data, so stages are always total orders.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::FiniteDiagram;
use crate::name::ElementName;
use crate::ordertype::{OrderType, OrderTypeError, Term};

mod layout;
mod schedule;

pub use layout::{cantor_tuple, cantor_unpair, Filter, Key, Layout, Rows};
pub use schedule::{Schedule, ScheduleParseError, WINDOW};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("no built-in presentation for order type {0}")]
    UnsupportedTargetType(String),
    #[error("diagram element {0} is not an atom")]
    NonAtomElement(ElementName),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    OrderType(#[from] OrderTypeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Enumeration {
    Schedule(Schedule),
    /// Stage `t` advances constituent `t mod k`; its `m`-th index becomes `m*k + j`.
    Interleave(Vec<Enumeration>),
}

impl Enumeration {
    fn first(&self, s: usize) -> Vec<u64> {
        match self {
            Enumeration::Schedule(sched) => sched.first(s),
            Enumeration::Interleave(parts) => {
                let k = parts.len();
                let lists: Vec<Vec<u64>> = parts
                    .iter()
                    .enumerate()
                    .map(|(j, p)| p.first((s + k - 1 - j) / k))
                    .collect();
                (0..s)
                    .map(|t| lists[t % k][t / k] * k as u64 + (t % k) as u64)
                    .collect()
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            Enumeration::Schedule(sched) => sched.to_string(),
            Enumeration::Interleave(parts) => {
                let inner: Vec<String> = parts.iter().map(Enumeration::describe).collect();
                format!("interleave({})", inner.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    target: OrderType,
    layout: Layout,
    enumeration: Enumeration,
    part_targets: Vec<OrderType>,
    label: String,
}

impl Presentation {
    /// The standard presentation of a sum of blocks `m`, `ω^k·n`, `(ω^k)*·n` with finite `k`.
    pub fn standard(
        target: &OrderType,
        schedule: Schedule,
    ) -> Result<Presentation, PresentationError> {
        let target = target.normalize()?;
        let layouts = target
            .terms()
            .iter()
            .map(term_layout)
            .collect::<Result<Vec<_>, _>>()?;
        let layout = match layouts.len() {
            0 => Layout::Finite(0),
            1 => layouts.into_iter().next().expect("one layout"),
            k => Layout::Concat {
                parts: layouts,
                rank: (0..k).collect(),
            },
        };
        let label = format!("std({target})");
        Ok(Presentation {
            target,
            layout,
            enumeration: Enumeration::Schedule(schedule),
            part_targets: Vec::new(),
            label,
        })
    }

    /// A presentation whose union is the given finite diagram of atoms.
    pub fn from_diagram(d: &FiniteDiagram) -> Result<Presentation, PresentationError> {
        let mut positions = BTreeMap::new();
        for (p, x) in d.elements().iter().enumerate() {
            let atom = x
                .as_atom()
                .ok_or_else(|| PresentationError::NonAtomElement(x.clone()))?;
            positions.insert(atom, p);
        }
        Ok(Presentation {
            target: OrderType::finite(d.len() as u64),
            layout: Layout::Diagram(positions),
            enumeration: Enumeration::Schedule(Schedule::Standard),
            part_targets: Vec::new(),
            label: format!("diagram({})", d.len()),
        })
    }

    /// `p1 + p2 + ...`; part `j` owns the atoms congruent to `j` mod the number of parts.
    pub fn concat_sum(parts: &[Presentation]) -> Result<Presentation, PresentationError> {
        if parts.is_empty() {
            return Err(PresentationError::InvalidParameter(
                "concatenation of no presentations".into(),
            ));
        }
        let mut target = OrderType::zero();
        for p in parts {
            target = target.add(&p.target)?;
        }
        let labels: Vec<&str> = parts.iter().map(|p| p.label.as_str()).collect();
        Ok(Presentation {
            target,
            layout: Layout::Concat {
                parts: parts.iter().map(|p| p.layout.clone()).collect(),
                rank: (0..parts.len()).collect(),
            },
            enumeration: Enumeration::Interleave(
                parts.iter().map(|p| p.enumeration.clone()).collect(),
            ),
            part_targets: parts.iter().map(|p| p.target.clone()).collect(),
            label: labels.join(" + "),
        })
    }

    /// The `j`-th summand of a concatenation, as a subpresentation on the same atoms.
    pub fn part(&self, j: usize) -> Result<Presentation, PresentationError> {
        let Layout::Concat { parts, .. } = &self.layout else {
            return Err(PresentationError::InvalidParameter(format!(
                "{} is not a concatenation",
                self.label
            )));
        };
        if j >= parts.len() {
            return Err(PresentationError::InvalidParameter(format!(
                "no part {j} in {}",
                self.label
            )));
        }
        let filter = Filter::Residue {
            modulus: parts.len() as u64,
            residues: alloc::vec![j as u64],
        };
        Ok(self.restricted(
            filter,
            self.part_targets[j].clone(),
            format!("part {j} of ({})", self.label),
        ))
    }

    /// Rearranges the summands of a concatenation: `order[r]` is the part placed `r`-th.
    pub fn permute_parts(&self, order: &[usize]) -> Result<Presentation, PresentationError> {
        let Layout::Concat { parts, .. } = &self.layout else {
            return Err(PresentationError::InvalidParameter(format!(
                "{} is not a concatenation",
                self.label
            )));
        };
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..parts.len()).collect::<Vec<_>>() {
            return Err(PresentationError::InvalidParameter(format!(
                "{order:?} is not a permutation of the parts"
            )));
        }
        let mut rank = alloc::vec![0; parts.len()];
        let mut target = OrderType::zero();
        for (r, &j) in order.iter().enumerate() {
            rank[j] = r;
            target = target.add(&self.part_targets[j])?;
        }
        Ok(Presentation {
            target,
            layout: Layout::Concat {
                parts: parts.clone(),
                rank,
            },
            enumeration: self.enumeration.clone(),
            part_targets: self.part_targets.clone(),
            label: format!("permute{order:?}({})", self.label),
        })
    }

    /// Diagonal merge of rows of ω, each cut into parts of `part_size`:
    /// `α_{0,0} + α_{0,1} + α_{1,0} + α_{0,2} + ...`.
    pub fn interleave_merge(
        rows: Rows,
        part_size: u64,
        schedule: Schedule,
    ) -> Result<Presentation, PresentationError> {
        if part_size == 0 || rows == Rows::Finite(0) {
            return Err(PresentationError::InvalidParameter(
                "merge needs at least one row and nonempty parts".into(),
            ));
        }
        let rows_label = match rows {
            Rows::Finite(r) => r.to_string(),
            Rows::Infinite => "w".to_string(),
        };
        Ok(Presentation {
            target: OrderType::omega(),
            layout: Layout::Merge { rows, part_size },
            enumeration: Enumeration::Schedule(schedule),
            part_targets: Vec::new(),
            label: format!("merge(rows={rows_label}, part={part_size})"),
        })
    }

    /// Row `n` of a merge, as a subpresentation on the same atoms.
    pub fn row(&self, n: u64) -> Result<Presentation, PresentationError> {
        let Layout::Merge { rows, .. } = self.layout else {
            return Err(PresentationError::InvalidParameter(format!(
                "{} is not a merge",
                self.label
            )));
        };
        if let Rows::Finite(r) = rows {
            if n >= r {
                return Err(PresentationError::InvalidParameter(format!(
                    "no row {n} in {}",
                    self.label
                )));
            }
        }
        Ok(self.restricted(
            Filter::Row { rows, row: n },
            OrderType::omega(),
            format!("row {n} of ({})", self.label),
        ))
    }

    /// From `k` copies of ω (the atoms of `std(ω·k)`): `Σ_j Σ_{c<k-1} α_{c,j} + A_{k-1}`, a copy of `ω·2`.
    pub fn partition_recombine(
        k: u64,
        part_size: u64,
        schedule: Schedule,
    ) -> Result<Presentation, PresentationError> {
        if k < 2 || part_size == 0 {
            return Err(PresentationError::InvalidParameter(
                "recombination needs k >= 2 and nonempty parts".into(),
            ));
        }
        Ok(Presentation {
            target: OrderType::omega_power(OrderType::finite(1), 2),
            layout: Layout::Recombine {
                copies: k,
                part_size,
            },
            enumeration: Enumeration::Schedule(schedule),
            part_targets: Vec::new(),
            label: format!("recombine(k={k}, part={part_size})"),
        })
    }

    /// From `L = A + B` and `M = C + D` (the atoms of `std(ω·4)`): `A + Σ(β_i + γ_i) + D`, a copy of `ω·3`.
    pub fn strict_growth(
        part_size: u64,
        schedule: Schedule,
    ) -> Result<Presentation, PresentationError> {
        if part_size == 0 {
            return Err(PresentationError::InvalidParameter(
                "parts must be nonempty".into(),
            ));
        }
        Ok(Presentation {
            target: OrderType::omega_power(OrderType::finite(1), 3),
            layout: Layout::StrictGrowth { part_size },
            enumeration: Enumeration::Schedule(schedule),
            part_targets: Vec::new(),
            label: format!("strict-growth(part={part_size})"),
        })
    }

    /// The construction of [`Presentation::strict_growth`] without `D`, a copy of `ω·2`.
    pub fn without_tail(&self) -> Result<Presentation, PresentationError> {
        if !matches!(self.layout, Layout::StrictGrowth { .. }) {
            return Err(PresentationError::InvalidParameter(format!(
                "{} has no tail copy",
                self.label
            )));
        }
        let filter = Filter::Residue {
            modulus: 4,
            residues: alloc::vec![0, 1, 2],
        };
        let target = OrderType::omega_power(OrderType::finite(1), 2);
        Ok(self.restricted(filter, target, format!("{} without tail", self.label)))
    }

    /// The copies `first` and `first + 1` of `std(ω·copies)`, a copy of `ω·2`.
    pub fn copy_pair(
        copies: u64,
        first: u64,
        schedule: Schedule,
    ) -> Result<Presentation, PresentationError> {
        if first + 1 >= copies {
            return Err(PresentationError::InvalidParameter(format!(
                "copies {first}, {} out of range",
                first + 1
            )));
        }
        let base = Presentation::standard(
            &OrderType::omega_power(OrderType::finite(1), copies),
            schedule,
        )?;
        let filter = Filter::Residue {
            modulus: copies,
            residues: alloc::vec![first, first + 1],
        };
        let target = OrderType::omega_power(OrderType::finite(1), 2);
        Ok(base.restricted(
            filter,
            target,
            format!("copies {first},{} of ({})", first + 1, base.label),
        ))
    }

    /// The reverse order on the same atoms.
    pub fn reversed(&self) -> Presentation {
        Presentation {
            target: self.target.reverse(),
            layout: Layout::Reversed(Box::new(self.layout.clone())),
            enumeration: self.enumeration.clone(),
            part_targets: self.part_targets.iter().map(OrderType::reverse).collect(),
            label: format!("rev({})", self.label),
        }
    }

    /// The same order enumerated under another schedule.
    pub fn with_schedule(&self, schedule: Schedule) -> Presentation {
        Presentation {
            enumeration: Enumeration::Schedule(schedule),
            ..self.clone()
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Presentation {
        self.label = label.into();
        self
    }

    fn restricted(&self, filter: Filter, target: OrderType, label: String) -> Presentation {
        Presentation {
            target,
            layout: Layout::Restrict {
                inner: Box::new(self.layout.clone()),
                filter,
            },
            enumeration: self.enumeration.clone(),
            part_targets: Vec::new(),
            label,
        }
    }

    pub fn target(&self) -> &OrderType {
        &self.target
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn schedule_label(&self) -> String {
        self.enumeration.describe()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// The stage-`s` diagram.
    pub fn prefix(&self, s: usize) -> FiniteDiagram {
        let mut located: Vec<(Key, u64)> = self
            .enumeration
            .first(s)
            .into_iter()
            .filter_map(|i| Some((self.layout.locate(i)?, i)))
            .collect();
        located.sort_unstable();
        FiniteDiagram::from_order(
            located
                .into_iter()
                .map(|(_, i)| ElementName::Atom(i))
                .collect(),
        )
        .expect("enumerated atoms are distinct")
    }

    /// The diagrams of stages `0..=s_max`, built incrementally.
    pub fn stages(&self, s_max: usize) -> Stages<'_> {
        Stages {
            layout: &self.layout,
            indices: self.enumeration.first(s_max),
            next: 0,
            current: Vec::new(),
        }
    }
}

pub struct Stages<'a> {
    layout: &'a Layout,
    indices: Vec<u64>,
    next: usize,
    current: Vec<(Key, u64)>,
}

impl Iterator for Stages<'_> {
    type Item = FiniteDiagram;

    fn next(&mut self) -> Option<FiniteDiagram> {
        if self.next > self.indices.len() {
            return None;
        }
        if self.next > 0 {
            let i = self.indices[self.next - 1];
            if let Some(key) = self.layout.locate(i) {
                let entry = (key, i);
                let at = self.current.binary_search(&entry).unwrap_or_else(|at| at);
                self.current.insert(at, entry);
            }
        }
        self.next += 1;
        let order = self
            .current
            .iter()
            .map(|(_, i)| ElementName::Atom(*i))
            .collect();
        Some(FiniteDiagram::from_order(order).expect("enumerated atoms are distinct"))
    }
}

fn term_layout(term: &Term) -> Result<Layout, PresentationError> {
    let unsupported = || PresentationError::UnsupportedTargetType(term.to_string());
    let finite_exponent = |e: &OrderType| {
        e.finite_value()
            .and_then(|k| u32::try_from(k).ok())
            .ok_or_else(unsupported)
    };
    Ok(match term {
        Term::Finite(m) => Layout::Finite(*m),
        Term::Ordinal {
            exponent,
            coefficient,
        } => Layout::OmegaPower {
            exponent: finite_exponent(exponent)?,
            copies: *coefficient,
        },
        Term::Reversed {
            exponent,
            coefficient,
        } => Layout::Reversed(Box::new(Layout::OmegaPower {
            exponent: finite_exponent(exponent)?,
            copies: *coefficient,
        })),
    })
}

/// `std_presentation` under its conventional name.
pub fn std_presentation(
    target: &OrderType,
    schedule: Schedule,
) -> Result<Presentation, PresentationError> {
    Presentation::standard(target, schedule)
}

/// `size` distinct atoms from `0..2·size` in a uniformly random order.
pub fn random_finite_diagram(size: usize, seed: u64) -> FiniteDiagram {
    random_finite_diagram_in(size, 2 * size as u64, seed)
}

/// `size` distinct atoms from `0..name_bound` in a uniformly random order.
pub fn random_finite_diagram_in(size: usize, name_bound: u64, seed: u64) -> FiniteDiagram {
    assert!(
        size as u64 <= name_bound,
        "cannot pick {size} distinct names below {name_bound}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names: Vec<u64> = rand::seq::index::sample(&mut rng, name_bound as usize, size)
        .into_iter()
        .map(|n| n as u64)
        .collect();
    names.shuffle(&mut rng);
    FiniteDiagram::from_atoms(names).expect("sampled names are distinct")
}
