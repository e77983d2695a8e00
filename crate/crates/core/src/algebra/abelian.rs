use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::matrix::{smith_decomposition, IntMatrix};
use super::phase::Phase;
use crate::error::{Error, Result};

/// An element of a finite abelian group: one residue per invariant factor.
pub type Element = Vec<u64>;

/// Finite abelian group `ℤ_{n₁} × … × ℤ_{n_k}` in invariant-factor form,
/// `n₁ | n₂ | … | n_k`, every `nᵢ ≥ 2`. The empty list is the trivial group.
///
/// Elements are residue tuples; [`elements`](Self::elements) lists them in
/// lexicographic order, which is also the order used by [`index_of`](Self::index_of).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAbelian", into = "RawAbelian")]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawAbelian {
    invariant_factors: Vec<u64>,
}

impl TryFrom<RawAbelian> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(raw: RawAbelian) -> Result<Self> {
        FiniteAbelianGroup::new(raw.invariant_factors)
    }
}

impl From<FiniteAbelianGroup> for RawAbelian {
    fn from(g: FiniteAbelianGroup) -> Self {
        RawAbelian {
            invariant_factors: g.factors,
        }
    }
}

impl FiniteAbelianGroup {
    /// Validates an invariant-factor list.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&f) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::invalid(format!(
                "invariant factors must be at least 2, found {f}"
            )));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid(format!(
                "invariant factors must form a divisibility chain: {} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self { factors: vec![] }
    }

    /// `ℤ_n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::invalid("ℤ_0 is not finite")),
            1 => Ok(Self::trivial()),
            n => Ok(Self { factors: vec![n] }),
        }
    }

    /// Normalises an arbitrary product of cyclic groups into invariant-factor
    /// form (Smith normal form of the diagonal relation matrix).
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::invalid("cyclic factor of order 0"));
        }
        let diag: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
        let s = smith_decomposition(&IntMatrix::diagonal(orders.len(), orders.len(), &diag));
        let factors = s
            .invariants()
            .iter()
            .map(|d| d.to_u64().expect("invariant factor overflow"))
            .filter(|&d| d > 1)
            .collect();
        Ok(Self { factors })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn identity(&self) -> Element {
        vec![0; self.factors.len()]
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        a.len() == self.factors.len() && a.iter().zip(&self.factors).all(|(x, n)| x < n)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        a.iter()
            .zip(&self.factors)
            .map(|(x, n)| (n - x % n) % n)
            .collect()
    }

    /// `k·a` for any integer `k`.
    pub fn scale(&self, a: &[u64], k: i64) -> Element {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &n)| ((x as i128 * k as i128).rem_euclid(n as i128)) as u64)
            .collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &n)| n / num_integer::gcd(x, n))
            .fold(1, num_integer::lcm)
    }

    /// Lexicographic index of an element (first factor most significant).
    pub fn index_of(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element(&self, mut index: usize) -> Element {
        let mut out = vec![0; self.factors.len()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    /// Canonical generators `gᵢ = (0,…,1,…,0)`.
    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank())
            .map(|i| {
                let mut g = self.identity();
                g[i] = 1;
                g
            })
            .collect()
    }

    /// Pontryagin dual `A^∨ = Hom(A, ℚ/ℤ)`. It has the same invariant
    /// factors; characters are indexed by exponent tuples, see [`Character`].
    pub fn dual(&self) -> FiniteAbelianGroup {
        self.clone()
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(move |e| Character {
            group: self.clone(),
            exponents: e,
        })
    }

    pub fn product(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let orders: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        Self::from_cyclic_orders(&orders).expect("factors are nonzero")
    }
}

/// Free function form of [`FiniteAbelianGroup::dual`].
pub fn dual_group(a: &FiniteAbelianGroup) -> FiniteAbelianGroup {
    a.dual()
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup({self})")
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `Z4`, `Z2xZ6`, `0`/`1` (trivial). Factors need not be in
    /// invariant form: `Z2xZ3` is normalised to `Z6`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s == "1" || s.eq_ignore_ascii_case("trivial") {
            return Ok(Self::trivial());
        }
        let orders = s
            .split(['x', '*'])
            .map(|p| {
                p.trim()
                    .strip_prefix('Z')
                    .and_then(|n| n.parse::<u64>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::invalid(format!("cannot parse abelian group {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cyclic_orders(&orders)
    }
}

/// A character `χ: A → ℚ/ℤ`, `χ(a) = Σ cᵢ aᵢ / nᵢ` with `cᵢ` reduced mod `nᵢ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Character {
    group: FiniteAbelianGroup,
    exponents: Vec<u64>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != group.rank() {
            return Err(Error::invalid(format!(
                "character of {group} needs {} exponents, got {}",
                group.rank(),
                exponents.len()
            )));
        }
        let exponents = exponents
            .iter()
            .zip(group.invariant_factors())
            .map(|(c, n)| c % n)
            .collect();
        Ok(Self {
            group: group.clone(),
            exponents,
        })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn eval(&self, a: &[u64]) -> Phase {
        self.exponents
            .iter()
            .zip(a)
            .zip(self.group.invariant_factors())
            .map(|((&c, &x), &n)| Phase::new(((c * x) % n) as i64, n as i64))
            .sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }
}
