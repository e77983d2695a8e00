//! The square-lattice Ising model on an `L × T` torus with a ℤ₂ background.
//!
//! Spins live on sites `(x, t)`, indexed `t·L + x`. Edge `t·L + x` is the
//! horizontal edge `(x,t)–(x+1,t)` and edge `L·T + t·L + x` the vertical
//! edge `(x,t)–(x,t+1)`, both periodic. An edge is frustrated when
//! `sᵢ sⱼ · twist = −1`, and carries weight `e^{−2β}` in that case.
//!
//! The holonomy sector `(h_x, h_t)` twists the horizontal edges at
//! `x = L − 1` when `h_x` is set, and the vertical edges at `t = T − 1` when
//! `h_t` is set.

mod transfer;

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;

pub use transfer::{partition_transfer, pf_spectrum, transfer_matrix, PfSpectrum, MAX_TRANSFER_WIDTH};

/// `β_c = ½ ln(1 + √2)`, the self-dual point.
pub const BETA_C: f64 = 0.440_686_793_509_771_5;

/// Largest `L·T` accepted by [`partition_bruteforce`].
pub const MAX_BRUTEFORCE_SITES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsingLattice {
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "T")]
    t: usize,
    beta: f64,
}

impl IsingLattice {
    pub fn new(l: usize, t: usize, beta: f64) -> Result<Self> {
        if l == 0 || t == 0 {
            return Err(Error::invalid("lattice sides must be at least 1"));
        }
        check_beta(beta)?;
        Ok(Self { l, t, beta })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.l, self.t, beta)
    }

    pub fn sites(&self) -> usize {
        self.l * self.t
    }

    pub fn edges(&self) -> usize {
        2 * self.sites()
    }

    /// Endpoints of edge `e`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (l, t) = (self.l, self.t);
        let n = l * t;
        let (r, vertical) = if e < n { (e, false) } else { (e - n, true) };
        let (x, y) = (r % l, r / l);
        if vertical {
            (r, ((y + 1) % t) * l + x)
        } else {
            (r, y * l + (x + 1) % l)
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("beta must be a positive real, got {beta}")))
    }
}

/// A ℤ₂ gauge field: one twist bit per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Background {
    l: usize,
    t: usize,
    twists: Vec<bool>,
}

impl Background {
    pub fn trivial(l: usize, t: usize) -> Self {
        Self {
            l,
            t,
            twists: vec![false; 2 * l * t],
        }
    }

    pub fn holonomy(l: usize, t: usize, h_x: bool, h_t: bool) -> Self {
        let mut b = Self::trivial(l, t);
        let n = l * t;
        for y in 0..t {
            b.twists[y * l + l - 1] = h_x;
        }
        for x in 0..l {
            b.twists[n + (t - 1) * l + x] = h_t;
        }
        b
    }

    pub fn from_twists(l: usize, t: usize, twists: Vec<bool>) -> Result<Self> {
        if twists.len() != 2 * l * t {
            return Err(Error::invalid(format!(
                "a {l}×{t} torus has {} edges, got {} twists",
                2 * l * t,
                twists.len()
            )));
        }
        Ok(Self { l, t, twists })
    }

    pub fn twists(&self) -> &[bool] {
        &self.twists
    }

    /// Flips every edge at `site`; a self-loop is flipped twice.
    pub fn gauge_transform(&self, site: usize) -> Self {
        let lat = IsingLattice {
            l: self.l,
            t: self.t,
            beta: 1.0,
        };
        let mut b = self.clone();
        for e in 0..b.twists.len() {
            let (i, j) = lat.endpoints(e);
            if (i == site) != (j == site) {
                b.twists[e] = !b.twists[e];
            }
        }
        b
    }

    /// Holonomies around the cycles `t = 0` and `x = 0`.
    pub fn holonomies(&self) -> (bool, bool) {
        let n = self.l * self.t;
        let h_x = (0..self.l).fold(false, |acc, x| acc ^ self.twists[x]);
        let h_t = (0..self.t).fold(false, |acc, y| acc ^ self.twists[n + y * self.l]);
        (h_x, h_t)
    }
}

/// `θ_β(s)`: `1` for `s = +1`, `e^{−2β}` for `s = −1` (any `s ≤ 0`).
pub fn weight(beta: f64, s: i8) -> f64 {
    if s > 0 {
        1.0
    } else {
        (-2.0 * beta).exp()
    }
}

/// Number of spin configurations with each count of frustrated edges.
pub fn frustration_histogram(lat: &IsingLattice, bg: &Background, limits: &Limits) -> Result<Vec<u64>> {
    if (bg.l, bg.t) != (lat.l, lat.t) {
        return Err(Error::invalid("background and lattice sizes differ"));
    }
    let n = lat.sites();
    if n > MAX_BRUTEFORCE_SITES {
        return Err(Error::GuardExceeded {
            required: 1u128 << n.min(127),
            limit: 1 << MAX_BRUTEFORCE_SITES,
        });
    }
    let total = limits.check_power(2, n)? as u64;
    let edges: Vec<(usize, usize, u32)> = (0..lat.edges())
        .map(|e| {
            let (i, j) = lat.endpoints(e);
            (i, j, u32::from(bg.twists[e]))
        })
        .collect();
    let block = |lo: u64, hi: u64| {
        let mut hist = vec![0u64; edges.len() + 1];
        for mask in lo..hi {
            let k: u32 = edges
                .iter()
                .map(|&(i, j, tw)| (((mask >> i) ^ (mask >> j)) as u32 & 1) ^ tw)
                .sum();
            hist[k as usize] += 1;
        }
        hist
    };
    let threads = (limits.threads() as u64).min(total).max(1);
    let hists: Vec<Vec<u64>> = if threads == 1 {
        vec![block(0, total)]
    } else {
        let chunk = total.div_ceil(threads);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|b| {
                    let (lo, hi) = (b * chunk, ((b + 1) * chunk).min(total));
                    let block = &block;
                    s.spawn(move || block(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut hist = vec![0u64; edges.len() + 1];
    for h in hists {
        for (a, b) in hist.iter_mut().zip(h) {
            *a += b;
        }
    }
    Ok(hist)
}

/// `Σ_k h_k e^{−2β(k − k_min)}` and `k_min`, the smallest occupied count.
fn scaled_sum(hist: &[u64], beta: f64) -> (f64, usize) {
    let kmin = hist.iter().position(|&c| c > 0).unwrap_or(0);
    let scaled = hist[kmin..]
        .iter()
        .enumerate()
        .map(|(d, &c)| c as f64 * (-2.0 * beta * d as f64).exp())
        .sum();
    (scaled, kmin)
}

/// `ln Z` from the frustration histogram, stable for large `β`.
pub fn log_partition_bruteforce(lat: &IsingLattice, bg: &Background, limits: &Limits) -> Result<f64> {
    let (scaled, kmin) = scaled_sum(&frustration_histogram(lat, bg, limits)?, lat.beta);
    Ok(scaled.ln() - 2.0 * lat.beta * kmin as f64)
}

/// `Σ_s Π_e θ_β(sᵢ sⱼ · twist(e))` by enumerating all `2^{LT}` configurations.
pub fn partition_bruteforce(lat: &IsingLattice, bg: &Background, limits: &Limits) -> Result<f64> {
    let (scaled, kmin) = scaled_sum(&frustration_histogram(lat, bg, limits)?, lat.beta);
    Ok(scaled * (-2.0 * lat.beta * kmin as f64).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    TransferMatrix,
}

/// Partition functions of the four holonomy sectors, indexed `h_x + 2 h_t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sectors(pub [f64; 4]);

impl Sectors {
    pub fn get(&self, h_x: bool, h_t: bool) -> f64 {
        self.0[usize::from(h_x) + 2 * usize::from(h_t)]
    }

    pub fn key(i: usize) -> &'static str {
        ["00", "10", "01", "11"][i]
    }

    /// `½ Σ_h Z[h]`.
    pub fn gauged(&self) -> f64 {
        0.5 * self.0.iter().sum::<f64>()
    }

    /// Gauging with a dual background `χ`:
    /// `Z′[χ] = ½ Σ_h (−1)^{χ_x h_t + χ_t h_x} Z[h]`. Applying it twice
    /// returns the original sectors.
    pub fn gauge(&self) -> Sectors {
        let mut out = [0.0; 4];
        for (c, o) in out.iter_mut().enumerate() {
            let (cx, ct) = (c & 1, c >> 1);
            *o = 0.5
                * (0..4)
                    .map(|h| {
                        let (hx, ht) = (h & 1, h >> 1);
                        if (cx * ht + ct * hx) % 2 == 0 {
                            self.0[h]
                        } else {
                            -self.0[h]
                        }
                    })
                    .sum::<f64>();
        }
        Sectors(out)
    }
}

impl Serialize for Sectors {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        for (i, v) in self.0.iter().enumerate() {
            m.serialize_entry(Self::key(i), v)?;
        }
        m.end()
    }
}

pub fn sector_partitions(lat: &IsingLattice, method: Method, limits: &Limits) -> Result<Sectors> {
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        let (h_x, h_t) = (i & 1 == 1, i & 2 == 2);
        *o = match method {
            Method::BruteForce => partition_bruteforce(lat, &Background::holonomy(lat.l, lat.t, h_x, h_t), limits)?,
            Method::TransferMatrix => partition_transfer(lat, h_x, h_t)?,
        };
    }
    Ok(Sectors(out))
}

/// `½ Σ` over the four holonomy sectors, by brute force.
pub fn gauged_partition(lat: &IsingLattice, limits: &Limits) -> Result<f64> {
    Ok(sector_partitions(lat, Method::BruteForce, limits)?.gauged())
}

/// `β∨ = ½ asinh(1 / sinh 2β)`, so that `sinh 2β · sinh 2β∨ = 1`.
pub fn kw_dual_beta(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(0.5 * (1.0 / (2.0 * beta).sinh()).asinh())
}

/// `gauged(β) / [((1 + e^{−2β})/2)^{2LT} · Z(β∨)]`, which should not depend
/// on `β`.
pub fn kw_ratio(lat: &IsingLattice, limits: &Limits) -> Result<f64> {
    let beta = lat.beta;
    let dual = lat.with_beta(kw_dual_beta(beta)?)?;
    let gauged = gauged_partition(lat, limits)?;
    let z_dual = partition_bruteforce(&dual, &Background::trivial(lat.l, lat.t), limits)?;
    let per_edge = ((1.0 + (-2.0 * beta).exp()) / 2.0).powi(lat.edges() as i32);
    Ok(gauged / (per_edge * z_dual))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KwFit {
    pub constant: f64,
    /// Relative disagreement of the two fitting points.
    pub spread: f64,
}

/// Pins the ratio constant from two temperatures.
pub fn fit_kw_constant(l: usize, t: usize, beta1: f64, beta2: f64, limits: &Limits) -> Result<KwFit> {
    let r1 = kw_ratio(&IsingLattice::new(l, t, beta1)?, limits)?;
    let r2 = kw_ratio(&IsingLattice::new(l, t, beta2)?, limits)?;
    let constant = 0.5 * (r1 + r2);
    Ok(KwFit {
        constant,
        spread: (r1 - r2).abs() / constant,
    })
}
