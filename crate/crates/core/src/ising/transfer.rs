use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::{weight, IsingLattice};
use crate::error::{Error, Result};

/// Largest row width accepted by [`transfer_matrix`].
pub const MAX_TRANSFER_WIDTH: usize = 12;

fn check_width(l: usize) -> Result<()> {
    if l == 0 || l > MAX_TRANSFER_WIDTH {
        return Err(Error::GuardExceeded {
            required: 1u128 << (l.min(127)),
            limit: 1 << MAX_TRANSFER_WIDTH,
        });
    }
    Ok(())
}

fn spin(row: usize, x: usize) -> i8 {
    if row >> x & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Diagonal of horizontal-edge weights of a row; the edge `(L−1, 0)` is
/// twisted when `twist` is set.
fn row_weights(l: usize, beta: f64, twist: bool) -> Vec<f64> {
    (0..1usize << l)
        .map(|row| {
            (0..l)
                .map(|x| {
                    let tw = if twist && x == l - 1 { -1 } else { 1 };
                    weight(beta, spin(row, x) * spin(row, (x + 1) % l) * tw)
                })
                .product()
        })
        .collect()
}

/// Vertical-edge weights between two consecutive rows (symmetric).
fn link_weights(l: usize, beta: f64) -> DMatrix<f64> {
    let n = 1usize << l;
    DMatrix::from_fn(n, n, |a, b| {
        (0..l).map(|x| weight(beta, spin(a, x) * spin(b, x))).product()
    })
}

/// `M[σ, σ′] = Π_x θ(σ_x σ′_x) · Π_x θ(σ′_x σ′_{x+1} · twist)`: one time
/// step, carrying the vertical links into row `σ′` and the horizontal edges
/// of `σ′`. Rows are encoded as bit masks, bit `x` set for spin `−1`.
pub fn transfer_matrix(l: usize, beta: f64, spatial_twist: bool) -> Result<DMatrix<f64>> {
    check_width(l)?;
    super::check_beta(beta)?;
    let d = row_weights(l, beta, spatial_twist);
    let mut m = link_weights(l, beta);
    for (j, dj) in d.iter().enumerate() {
        m.column_mut(j).scale_mut(*dj);
    }
    Ok(m)
}

/// `Z = Tr(M^T · F^{h_t})` with `F` the global spin flip. The lattice is
/// transposed first when `L > T`, exchanging `h_x` and `h_t`.
pub fn partition_transfer(lat: &IsingLattice, h_x: bool, h_t: bool) -> Result<f64> {
    let (l, t, h_x, h_t) = if lat.l() > lat.t() {
        (lat.t(), lat.l(), h_t, h_x)
    } else {
        (lat.l(), lat.t(), h_x, h_t)
    };
    let m = transfer_matrix(l, lat.beta(), h_x)?;
    let mut power = DMatrix::identity(m.nrows(), m.ncols());
    let (mut base, mut e) = (m, t);
    while e > 0 {
        if e & 1 == 1 {
            power = &power * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    let all = (1usize << l) - 1;
    Ok((0..=all)
        .map(|s| power[(s, if h_t { s ^ all } else { s })])
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PfSpectrum {
    pub largest: f64,
    pub second: f64,
    pub gap: f64,
}

/// Top two eigenvalues of the transfer matrix, from its symmetric form
/// `D^{1/2} V D^{1/2}` (similar to `M = V D`).
pub fn pf_spectrum(l: usize, beta: f64, spatial_twist: bool) -> Result<PfSpectrum> {
    check_width(l)?;
    super::check_beta(beta)?;
    let root: Vec<f64> = row_weights(l, beta, spatial_twist).iter().map(|w| w.sqrt()).collect();
    let mut s = link_weights(l, beta);
    let n = s.nrows();
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] *= root[i] * root[j];
        }
    }
    let eig = SymmetricEigen::try_new(s, 1e-15, 10_000).ok_or(Error::NoConvergence(10_000))?;
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    let largest = ev[0];
    let second = ev.get(1).copied().unwrap_or(0.0);
    Ok(PfSpectrum {
        largest,
        second,
        gap: largest - second.abs(),
    })
}
