use std::collections::HashSet;

use crate::algebra::FiniteAbelianGroup;
use crate::error::Result;
use crate::limits::Limits;

use super::chain::{ChainComplex, SubcomplexMap};
use super::cohomology::{apply_coboundary, Cochain};

/// Result of exhaustive cochain enumeration in one degree.
#[derive(Clone, Debug)]
pub struct CocycleEnumeration {
    pub degree: usize,
    pub cocycle_count: u64,
    pub coboundary_count: u64,
    /// One representative per class, in order of first appearance.
    pub classes: Vec<Cochain>,
}

impl CocycleEnumeration {
    pub fn class_count(&self) -> u64 {
        self.classes.len() as u64
    }
}

fn decode(a: &FiniteAbelianGroup, len: usize, mut index: u64) -> Cochain {
    let n = a.order();
    let mut out = vec![a.identity(); len];
    for slot in out.iter_mut().rev() {
        *slot = a.element((index % n) as usize);
        index /= n;
    }
    out
}

fn encode(a: &FiniteAbelianGroup, cochain: &[Vec<u64>]) -> u64 {
    let n = a.order();
    cochain.iter().fold(0, |acc, v| acc * n + a.index_of(v) as u64)
}

/// All cochains of degree `q` with the given cells forced to zero.
fn cochains<'a>(
    a: &'a FiniteAbelianGroup,
    len: usize,
    free: &'a [usize],
) -> impl Iterator<Item = Cochain> + 'a {
    let total = a.order().pow(free.len() as u32);
    (0..total).map(move |i| {
        let vals = decode(a, free.len(), i);
        let mut out = vec![a.identity(); len];
        for (&c, v) in free.iter().zip(vals) {
            out[c] = v;
        }
        out
    })
}

fn run(
    c: &ChainComplex,
    a: &FiniteAbelianGroup,
    q: usize,
    keep: &[Vec<usize>],
    limits: &Limits,
) -> Result<CocycleEnumeration> {
    let free_q = keep.get(q).cloned().unwrap_or_default();
    let free_prev = if q == 0 { vec![] } else { keep.get(q - 1).cloned().unwrap_or_default() };
    limits.check_power(a.order(), free_q.len())?;
    limits.check_power(a.order(), free_prev.len())?;

    let zero_next = vec![a.identity(); c.cells(q + 1)];
    let coboundaries: HashSet<u64> = if q == 0 {
        std::iter::once(encode(a, &vec![a.identity(); c.cells(0)])).collect()
    } else {
        cochains(a, c.cells(q - 1), &free_prev)
            .map(|psi| encode(a, &apply_coboundary(c, a, q - 1, &psi)))
            .collect()
    };
    let mut seen: HashSet<u64> = HashSet::new();
    let mut classes = Vec::new();
    let mut cocycle_count = 0;
    for phi in cochains(a, c.cells(q), &free_q) {
        if apply_coboundary(c, a, q, &phi) != zero_next {
            continue;
        }
        cocycle_count += 1;
        if seen.contains(&encode(a, &phi)) {
            continue;
        }
        for b in &coboundaries {
            let bv = decode(a, phi.len(), *b);
            let sum: Cochain = phi.iter().zip(&bv).map(|(x, y)| a.add(x, y)).collect();
            seen.insert(encode(a, &sum));
        }
        classes.push(phi);
    }
    Ok(CocycleEnumeration {
        degree: q,
        cocycle_count,
        coboundary_count: coboundaries.len() as u64,
        classes,
    })
}

/// Brute-force `H^q(c; A)`: enumerate all cochains, keep cocycles, and
/// group them into cosets of the coboundaries.
///
/// Guarded by `|A|^{cells}` in degrees `q` and `q − 1`.
pub fn enumerate_cocycles(
    c: &ChainComplex,
    a: &FiniteAbelianGroup,
    q: usize,
    limits: &Limits,
) -> Result<CocycleEnumeration> {
    let keep: Vec<Vec<usize>> = (0..=c.top_dim()).map(|k| (0..c.cells(k)).collect()).collect();
    run(c, a, q, &keep, limits)
}

/// Relative version: only cochains vanishing on `sub` are enumerated.
pub fn enumerate_relative_cocycles(
    w: &ChainComplex,
    sub: &SubcomplexMap,
    a: &FiniteAbelianGroup,
    q: usize,
    limits: &Limits,
) -> Result<CocycleEnumeration> {
    if sub.target() != w {
        return Err(crate::Error::invalid("the subcomplex is not included in this complex"));
    }
    run(w, a, q, &sub.complement(), limits)
}
