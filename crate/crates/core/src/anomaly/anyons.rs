use num_integer::Integer;
use serde::Serialize;

use crate::algebra::Phase;
use crate::error::{Error, Result};

/// The minimal abelian TFT `A^{N,p}`: anyons `Lᵏ`, `k ∈ ℤ_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalTft {
    n: u64,
    p: u64,
}

impl MinimalTft {
    /// `p` is reduced mod `N`; requires `N ≥ 1` and `gcd(p, N) = 1`.
    pub fn new(n: u64, p: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("N must be at least 1"));
        }
        let p = p.rem_euclid(n as i64) as u64;
        if p.gcd(&n) != 1 {
            return Err(Error::invalid(format!("p = {p} is not coprime to N = {n}")));
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `θ_k = p k² / 2N mod 1`, for `k` in `[0, N)`.
    pub fn spin(&self, k: u64) -> Phase {
        Phase::new((self.p * k * k) as i64, (2 * self.n) as i64)
    }

    /// One-form symmetry charge `p k mod N`.
    pub fn charge(&self, k: u64) -> u64 {
        (self.p * k) % self.n
    }

    /// `B(j, k) = p j k / N mod 1`.
    pub fn braiding(&self, j: u64, k: u64) -> Phase {
        Phase::new((self.p * j * k) as i64, self.n as i64)
    }

    pub fn data(&self) -> AnyonTable {
        let n = self.n;
        AnyonTable {
            n,
            p: self.p,
            anyons: (0..n)
                .map(|k| Anyon {
                    k,
                    spin: self.spin(k),
                    charge: self.charge(k),
                })
                .collect(),
            braiding: (0..n).map(|j| (0..n).map(|k| self.braiding(j, k)).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anyon {
    pub k: u64,
    pub spin: Phase,
    pub charge: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnyonTable {
    #[serde(rename = "N")]
    pub n: u64,
    pub p: u64,
    pub anyons: Vec<Anyon>,
    pub braiding: Vec<Vec<Phase>>,
}

pub fn minimal_tft_data(t: &MinimalTft) -> AnyonTable {
    t.data()
}

/// Quantum dimension `1/√N` of the defect built from `A^{N,p}`.
pub fn defect_quantum_dim(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    Ok(1.0 / (n as f64).sqrt())
}

/// `A^{N,1}` on `S¹×S²` with `Lᵐ` inserted: `1` if `m ≡ 0 mod N`, else `0`.
pub fn flux_projector_action(n: u64, m: i64) -> Result<u8> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    Ok(u8::from(m.rem_euclid(n as i64) == 0))
}

/// Angle of a chiral defect, `p/N ∈ ℚ/ℤ`, kept with its denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChiralAngle(pub Phase);

impl ChiralAngle {
    pub fn new(p: i64, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Self(Phase::new(p, n)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChiralFusion {
    pub result: Phase,
    pub condensed_order: u64,
}

/// `D_a ⊗ D_b = (TFT) · D_{a+b}`: the angle adds in ℚ/ℤ and the gauged
/// subgroup has order `lcm(N₁, N₂) / den(a + b)`. For equal denominators
/// `N` this is `gcd(p + q, N)`.
pub fn chiral_fuse(a: ChiralAngle, b: ChiralAngle) -> ChiralFusion {
    let result = a.0 + b.0;
    let l = (a.0.denom() as u64).lcm(&(b.0.denom() as u64));
    ChiralFusion {
        result,
        condensed_order: l / result.denom() as u64,
    }
}
