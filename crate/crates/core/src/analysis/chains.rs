use alloc::format;
use alloc::vec::Vec;

use serde::Serialize;

use super::{condense, gap_evidence, AnalysisError, StreamRun};
use crate::diagram::FiniteDiagram;
use crate::name::ElementName;

/// An ascending sequence in the final output, with `<^∞` evidence between neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub chain: Vec<ElementName>,
    /// Whether the gap between `chain[i]` and `chain[i+1]` is growing.
    pub gap_flags: Vec<bool>,
}

impl ChainWitness {
    pub fn from_elements(
        run: &StreamRun,
        chain: Vec<ElementName>,
        growth_window: usize,
    ) -> ChainWitness {
        let gap_flags = chain
            .windows(2)
            .map(|w| {
                gap_evidence(run, &w[0], &w[1], growth_window)
                    .map(|g| g.growing)
                    .unwrap_or(false)
            })
            .collect();
        ChainWitness { chain, gap_flags }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

/// Splits the settled part of the final output into at most `n_expected`
/// chains: the lowest settled classes one chain each, and one top chain of
/// representatives (first members) of every remaining class.
pub fn extract_chains(
    run: &StreamRun,
    n_expected: usize,
    stability_window: usize,
    growth_window: usize,
) -> Result<Vec<ChainWitness>, AnalysisError> {
    let classes: Vec<_> = condense(run, stability_window).settled().cloned().collect();
    if classes.is_empty() {
        return Ok(Vec::new());
    }
    if n_expected == 0 {
        return Err(AnalysisError::DecompositionFailed(format!(
            "{} settled classes but no chains allowed",
            classes.len()
        )));
    }
    let chains: Vec<Vec<ElementName>> = if classes.len() <= n_expected {
        classes.into_iter().map(|c| c.members).collect()
    } else {
        let mut out: Vec<Vec<ElementName>> = classes[..n_expected - 1]
            .iter()
            .map(|c| c.members.clone())
            .collect();
        out.push(
            classes[n_expected - 1..]
                .iter()
                .map(|c| c.members[0].clone())
                .collect(),
        );
        out
    };
    Ok(chains
        .into_iter()
        .map(|c| ChainWitness::from_elements(run, c, growth_window))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeparationVerdict {
    /// Almost all of chain A lies below almost all of chain B.
    Forward,
    /// Almost all of chain B lies below almost all of chain A.
    Backward,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub len_a: usize,
    pub len_b: usize,
    /// Pairs `(i, j)` with `a_i < b_j` failing in the final diagram.
    pub exceptions_forward: u64,
    /// Least `q` with `a_i < b_j` for all `i, j >= q`.
    pub q_forward: usize,
    pub exceptions_backward: u64,
    pub q_backward: usize,
    pub verdict: SeparationVerdict,
}

impl SeparationReport {
    pub fn q(&self) -> Option<usize> {
        match self.verdict {
            SeparationVerdict::Forward => Some(self.q_forward),
            SeparationVerdict::Backward => Some(self.q_backward),
            SeparationVerdict::None => None,
        }
    }
}

/// Looks for `<*` evidence between two chains in `d`, in both directions.
/// A direction is claimed when both chains have at least 4 elements and its
/// threshold is at most half the shorter chain.
pub fn separation_check(
    d: &FiniteDiagram,
    a: &ChainWitness,
    b: &ChainWitness,
) -> Result<SeparationReport, AnalysisError> {
    let positions = |c: &ChainWitness| -> Result<Vec<usize>, AnalysisError> {
        c.chain
            .iter()
            .map(|x| {
                d.position(x)
                    .ok_or_else(|| AnalysisError::MissingElement(x.clone()))
            })
            .collect()
    };
    let (pa, pb) = (positions(a)?, positions(b)?);
    let (exceptions_forward, q_forward) = threshold(&pa, &pb);
    let (exceptions_backward, q_backward) = threshold(&pb, &pa);
    let shorter = pa.len().min(pb.len());
    let claims = |q: usize| shorter >= 4 && q <= shorter / 2;
    let verdict = if claims(q_forward) {
        SeparationVerdict::Forward
    } else if claims(q_backward) {
        SeparationVerdict::Backward
    } else {
        SeparationVerdict::None
    };
    Ok(SeparationReport {
        len_a: pa.len(),
        len_b: pb.len(),
        exceptions_forward,
        q_forward,
        exceptions_backward,
        q_backward,
        verdict,
    })
}

/// Exceptions to `x_i < y_j` and the least `q` confining them to `min(i, j) < q`.
fn threshold(xs: &[usize], ys: &[usize]) -> (u64, usize) {
    let mut sorted_ys: Vec<usize> = ys.to_vec();
    sorted_ys.sort_unstable();
    let ascending = sorted_ys == ys;
    let mut exceptions = 0u64;
    let mut q = 0;
    for (i, &x) in xs.iter().enumerate() {
        if ascending {
            // y_j < x exactly for j < below
            let below = ys.partition_point(|&y| y < x);
            exceptions += below as u64;
            if below > 0 {
                q = q.max(i.min(below - 1) + 1);
            }
        } else {
            for (j, &y) in ys.iter().enumerate() {
                if y < x {
                    exceptions += 1;
                    q = q.max(i.min(j) + 1);
                }
            }
        }
    }
    (exceptions, q)
}
