use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::Serialize;

use super::{AnalysisError, StreamRun};
use crate::name::ElementName;

/// Sizes of the open interval `(x, y)` at the checkpoints where both exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapEvidence {
    pub x: ElementName,
    pub y: ElementName,
    /// Stage of each count.
    pub stages: Vec<usize>,
    pub counts: Vec<u64>,
    /// Strictly increasing over the last `c` counts.
    pub growing: bool,
}

impl GapEvidence {
    pub fn is_non_decreasing(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Interval sizes between `x` and `y` across the run's checkpoints;
/// `growing` iff the last `c` of them strictly increase.
pub fn gap_evidence(
    run: &StreamRun,
    x: &ElementName,
    y: &ElementName,
    c: usize,
) -> Result<GapEvidence, AnalysisError> {
    if x == y {
        return Err(AnalysisError::SameElement(x.clone()));
    }
    let mut stages = Vec::new();
    let mut counts = Vec::new();
    for (stage, d) in run.checkpoints.iter().zip(&run.outputs) {
        if let Some(n) = d.interval_size(x, y) {
            stages.push(*stage);
            counts.push(n as u64);
        }
    }
    if counts.is_empty() {
        let absent = if run.outputs.iter().any(|d| d.contains(x)) {
            y
        } else {
            x
        };
        return Err(AnalysisError::MissingElement(absent.clone()));
    }
    let growing = counts.len() >= c.max(2)
        && counts[counts.len() - c.max(2)..]
            .windows(2)
            .all(|w| w[0] < w[1]);
    Ok(GapEvidence {
        x: x.clone(),
        y: y.clone(),
        stages,
        counts,
        growing,
    })
}

/// A run of consecutive final-stage elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Class {
    pub members: Vec<ElementName>,
    /// Every member was present at each of the last `window` checkpoints.
    pub settled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condensation {
    pub window: usize,
    pub classes: Vec<Class>,
}

impl Condensation {
    pub fn settled(&self) -> impl Iterator<Item = &Class> {
        self.classes.iter().filter(|c| c.settled)
    }
}

/// Joins consecutive final-stage elements that were adjacent at each of the
/// last `window` checkpoints. With fewer checkpoints than that, every element
/// is its own unsettled class.
pub fn condense(run: &StreamRun, window: usize) -> Condensation {
    let Some(last) = run.outputs.last() else {
        return Condensation {
            window,
            classes: Vec::new(),
        };
    };
    let xs = last.elements();
    let window = window.max(1);
    if run.outputs.len() < window || window < 2 {
        let classes = xs
            .iter()
            .map(|x| Class {
                members: alloc::vec![x.clone()],
                settled: false,
            })
            .collect();
        return Condensation { window, classes };
    }
    let recent = &run.outputs[run.outputs.len() - window..];
    let present = |x: &ElementName| recent.iter().all(|d| d.contains(x));
    let mut classes: Vec<Class> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let joined = i > 0
            && recent
                .iter()
                .all(|d| d.interval_size(&xs[i - 1], x) == Some(0));
        match classes.last_mut() {
            Some(class) if joined => class.members.push(x.clone()),
            _ => classes.push(Class {
                members: alloc::vec![x.clone()],
                settled: true,
            }),
        }
        let class = classes.last_mut().expect("just pushed");
        class.settled &= present(x);
    }
    Condensation { window, classes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "bound")]
pub enum BlockClass {
    /// Unchanged over the stability window; the largest size seen.
    Bounded(u64),
    /// Strictly increasing over the growth window.
    Growing,
    /// Too young, or neither pattern.
    Unsettled,
}

/// The output elements sharing one first coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Group {
    pub key: ElementName,
    pub sizes: Vec<u64>,
    pub class: BlockClass,
    /// Least member at the first checkpoint where the group appears.
    pub representative: ElementName,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub checkpoints: Vec<usize>,
    /// In final-stage order.
    pub groups: Vec<Group>,
    /// Maximal runs of consecutive growing groups, as indices into `groups`.
    pub tiers: Vec<Vec<usize>>,
}

impl BlockReport {
    pub fn group(&self, key: &ElementName) -> Option<&Group> {
        self.groups.iter().find(|g| &g.key == key)
    }

    /// Maximal runs of consecutive growing groups accepted by `keep`; any
    /// other group ends a run.
    pub fn tiers_where(&self, mut keep: impl FnMut(&Group) -> bool) -> Vec<Vec<usize>> {
        let mut tiers: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for (i, g) in self.groups.iter().enumerate() {
            if g.class == BlockClass::Growing && keep(g) {
                current.push(i);
            } else if !current.is_empty() {
                tiers.push(core::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            tiers.push(current);
        }
        tiers
    }
}

/// Groups output elements by [`ElementName::group_key`] and classifies each
/// group by its size history.
pub fn block_report(run: &StreamRun, stability_window: usize, growth_window: usize) -> BlockReport {
    let mut order: Vec<ElementName> = Vec::new();
    let mut index: BTreeMap<ElementName, usize> = BTreeMap::new();
    if let Some(last) = run.outputs.last() {
        for x in last.elements() {
            let key = x.group_key();
            if !index.contains_key(&key) {
                index.insert(key.clone(), order.len());
                order.push(key);
            }
        }
    }
    let n = order.len();
    let mut sizes = alloc::vec![alloc::vec![0u64; run.outputs.len()]; n];
    let mut representative: Vec<Option<ElementName>> = alloc::vec![None; n];
    for (t, d) in run.outputs.iter().enumerate() {
        for x in d.elements() {
            let g = index[&x.group_key()];
            sizes[g][t] += 1;
            if representative[g].is_none() {
                representative[g] = Some(x.clone());
            }
        }
    }
    let groups: Vec<Group> = order
        .into_iter()
        .zip(sizes)
        .zip(representative)
        .map(|((key, sizes), rep)| {
            let class = classify(&sizes, stability_window, growth_window);
            Group {
                key,
                sizes,
                class,
                representative: rep.expect("group has a member"),
            }
        })
        .collect();
    let mut report = BlockReport {
        checkpoints: run.checkpoints.clone(),
        groups,
        tiers: Vec::new(),
    };
    report.tiers = report.tiers_where(|_| true);
    report
}

fn classify(sizes: &[u64], stability_window: usize, growth_window: usize) -> BlockClass {
    let span = stability_window.max(growth_window).max(2);
    if sizes.len() < span {
        return BlockClass::Unsettled;
    }
    let recent = &sizes[sizes.len() - span..];
    if recent.contains(&0) {
        return BlockClass::Unsettled;
    }
    let growth = &sizes[sizes.len() - growth_window.max(2)..];
    if growth.windows(2).all(|w| w[0] < w[1]) {
        return BlockClass::Growing;
    }
    let stable = &sizes[sizes.len() - stability_window.max(2)..];
    if stable.windows(2).all(|w| w[0] == w[1]) {
        return BlockClass::Bounded(sizes.iter().copied().max().unwrap_or(0));
    }
    BlockClass::Unsettled
}
