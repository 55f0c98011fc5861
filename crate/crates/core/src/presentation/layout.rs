//! Where each atom index sits in the presented order.
//!
//! Every layout assigns atom `i` an optional key; atoms compare by their keys
//! lexicographically. Keys produced by one layout are never proper prefixes of
//! each other, which keeps reversal (negating every component) sound.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub type Key = Vec<i64>;

/// Inverse of the Cantor pairing `(x, y) ↦ (x+y)(x+y+1)/2 + y`.
pub fn cantor_unpair(z: u64) -> (u64, u64) {
    let z = z as u128;
    let mut w = (8 * z + 1).isqrt() / 2;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let y = z - w * (w + 1) / 2;
    ((w - y) as u64, y as u64)
}

/// `k`-fold unpairing into a tuple of length `k`, most significant first.
pub fn cantor_tuple(z: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    let mut rest = z;
    for _ in 1..k {
        let (a, b) = cantor_unpair(rest);
        out.push(a);
        rest = b;
    }
    out.push(rest);
    out
}

/// Row structure of an interleaving merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rows {
    Finite(u64),
    Infinite,
}

impl Rows {
    /// Row and position within the row of atom `i`.
    pub fn coords(self, i: u64) -> (u64, u64) {
        match self {
            Rows::Finite(r) => (i % r, i / r),
            Rows::Infinite => cantor_unpair(i),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filter {
    /// Keep atoms whose index mod `modulus` is listed.
    Residue { modulus: u64, residues: Vec<u64> },
    /// Keep the atoms of one merge row.
    Row { rows: Rows, row: u64 },
}

impl Filter {
    fn keeps(&self, i: u64) -> bool {
        match self {
            Filter::Residue { modulus, residues } => residues.contains(&(i % modulus)),
            Filter::Row { rows, row } => rows.coords(i).0 == *row,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    /// Atoms `0..m` in index order.
    Finite(u64),
    /// `ω^exponent · copies`: copy `i mod copies`, position by unpairing `i div copies`.
    OmegaPower {
        exponent: u32,
        copies: u64,
    },
    /// Atom `i` belongs to part `i mod k` with inner index `i div k`; parts are
    /// arranged by `rank`.
    Concat {
        parts: Vec<Layout>,
        rank: Vec<usize>,
    },
    /// Diagonal interleaving of the rows of an ω-presentation family, cut into parts.
    Merge {
        rows: Rows,
        part_size: u64,
    },
    /// Four standard copies of ω, arranged as `A + Σ(β_i + γ_i) + D`.
    StrictGrowth {
        part_size: u64,
    },
    /// `k` standard copies of ω: the first `k-1` cut into parts and interleaved, then the last.
    Recombine {
        copies: u64,
        part_size: u64,
    },
    /// Fixed finite order on the listed atoms.
    Diagram(BTreeMap<u64, usize>),
    Restrict {
        inner: Box<Layout>,
        filter: Filter,
    },
    Reversed(Box<Layout>),
}

impl Layout {
    pub fn locate(&self, i: u64) -> Option<Key> {
        match self {
            Layout::Finite(m) => (i < *m).then(|| vec![i as i64]),
            Layout::OmegaPower { exponent, copies } => {
                let mut key = vec![(i % copies) as i64];
                key.extend(
                    cantor_tuple(i / copies, *exponent)
                        .into_iter()
                        .map(|x| x as i64),
                );
                Some(key)
            }
            Layout::Concat { parts, rank } => {
                let k = parts.len() as u64;
                let j = (i % k) as usize;
                let mut key = vec![rank[j] as i64];
                key.extend(parts[j].locate(i / k)?);
                Some(key)
            }
            Layout::Merge { rows, part_size } => {
                let (row, j) = rows.coords(i);
                let (p, off) = (j / part_size, j % part_size);
                Some(vec![(row + p) as i64, row as i64, off as i64])
            }
            Layout::StrictGrowth { part_size } => {
                let (c, pos) = (i % 4, (i / 4) as i64);
                let (p, off) = (pos / *part_size as i64, pos % *part_size as i64);
                Some(match c {
                    0 => vec![0, pos, 0, 0],
                    1 => vec![1, p, 0, off],
                    2 => vec![1, p, 1, off],
                    _ => vec![2, pos, 0, 0],
                })
            }
            Layout::Recombine { copies, part_size } => {
                let (c, pos) = (i % copies, i / copies);
                if c + 1 == *copies {
                    Some(vec![1, pos as i64, 0, 0])
                } else {
                    Some(vec![
                        0,
                        (pos / part_size) as i64,
                        c as i64,
                        (pos % part_size) as i64,
                    ])
                }
            }
            Layout::Diagram(positions) => positions.get(&i).map(|&p| vec![p as i64]),
            Layout::Restrict { inner, filter } => {
                if filter.keeps(i) {
                    inner.locate(i)
                } else {
                    None
                }
            }
            Layout::Reversed(inner) => inner.locate(i).map(|k| k.into_iter().map(|x| -x).collect()),
        }
    }
}
