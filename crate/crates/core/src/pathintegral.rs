//! Groupoid-cardinality path integrals of finite homotopy theories.
//!
//! The target is either `BG` for a finite group or an Eilenberg–MacLane
//! space `BⁿA`. For `BⁿA` all quantities come from cohomology orders:
//! `π_q(Map(M, BⁿA)) ≅ H^{n−q}(M; A)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{FiniteAbelianGroup, FiniteGroup, Phase};
use crate::complexes::{cohomology, ChainComplex, ManifoldExpr};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// π-finite target space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiFiniteTarget {
    /// `BG` for a finite (possibly nonabelian) group.
    BG(FiniteGroup),
    /// `BⁿA`, `n ≥ 1`.
    EilenbergMacLane { group: FiniteAbelianGroup, degree: usize },
}

impl PiFiniteTarget {
    pub fn eilenberg_maclane(group: FiniteAbelianGroup, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("Eilenberg–MacLane degree must be at least 1"));
        }
        Ok(Self::EilenbergMacLane { group, degree })
    }
}

impl FromStr for PiFiniteTarget {
    type Err = Error;

    /// `BG:S3`, `B:Z2` (= `B1:Z2`), `B2:Z2`, `B3:Z2xZ4`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, group) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("target {s:?} should look like B2:Z2 or BG:S3")))?;
        let head = head.trim();
        if head.eq_ignore_ascii_case("BG") {
            return Ok(Self::BG(FiniteGroup::preset(group)?));
        }
        let degree = match head.strip_prefix('B') {
            Some("") => 1,
            Some(d) => d
                .parse()
                .map_err(|_| Error::invalid(format!("bad target degree in {s:?}")))?,
            None => return Err(Error::invalid(format!("target {s:?} should start with B"))),
        };
        Self::eilenberg_maclane(group.parse()?, degree)
    }
}

impl fmt::Display for PiFiniteTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BG(g) => write!(f, "BG(|G|={})", g.order()),
            Self::EilenbergMacLane { group, degree } => write!(f, "B{degree}:{group}"),
        }
    }
}

fn ratio_pow(base: u64, exp: i32) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), (-exp) as usize)
    }
}

/// Mod-2 test for a closed pseudomanifold: `H^top(M;ℤ₂)` is nonzero and
/// has one generator per connected component.
pub fn looks_closed(m: &ChainComplex) -> bool {
    let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
    let top = cohomology(m, &z2, m.top_dim()).order();
    top > 1 && top == cohomology(m, &z2, 0).order()
}

/// `Z(M) = Π_{q=0}^{n} |H^{n−q}(M;A)|^{(−1)^q}`.
pub fn em_partition(m: &ChainComplex, a: &FiniteAbelianGroup, n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::invalid("Eilenberg–MacLane degree must be at least 1"));
    }
    if !looks_closed(m) {
        return Err(Error::invalid("the partition function needs a closed manifold"));
    }
    Ok((0..=n)
        .map(|q| {
            let h = cohomology(m, a, n - q).order();
            ratio_pow(h, if q % 2 == 0 { 1 } else { -1 })
        })
        .fold(BigRational::one(), |acc, x| acc * x))
}

/// `dim Z(M) = |H^n(M;A)|` for the state space on a closed `M`.
pub fn em_state_space_dim(m: &ChainComplex, a: &FiniteAbelianGroup, n: usize) -> u64 {
    cohomology(m, a, n).order()
}

/// Simple objects of the category attached to a closed 3-manifold by the
/// `B²A` theory: `|H²(M;A)|·|H¹(M;A)|`.
pub fn em_category_simple_count(m: &ChainComplex, a: &FiniteAbelianGroup) -> Result<u64> {
    if m.top_dim() != 3 {
        return Err(Error::invalid(format!(
            "expected a 3-manifold, got dimension {}",
            m.top_dim()
        )));
    }
    Ok(cohomology(m, a, 2).order() * cohomology(m, a, 1).order())
}

/// Number of tuples `(a₁,b₁,…,a_g,b_g)` with `Π[aᵢ,bᵢ] = e`.
///
/// Brute force over `|G|^{2g}` tuples, split over `a₁` across
/// `limits.threads()` workers; the reduction is an integer sum.
pub fn commuting_tuple_count(g: &FiniteGroup, genus: usize, limits: &Limits) -> Result<u64> {
    limits.check_power(g.order() as u64, 2 * genus)?;
    if genus == 0 {
        return Ok(1);
    }
    let n = g.order();
    let comm: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| g.commutator(a, b)).collect())
        .collect();

    fn count(g: &FiniteGroup, comm: &[Vec<usize>], acc: usize, pairs: usize) -> u64 {
        if pairs == 0 {
            return u64::from(acc == g.identity());
        }
        let mut total = 0;
        for row in comm {
            for &c in row {
                total += count(g, comm, g.mul(acc, c), pairs - 1);
            }
        }
        total
    }

    let first = |a1: usize| -> u64 {
        comm[a1]
            .iter()
            .map(|&c| count(g, &comm, g.mul(g.identity(), c), genus - 1))
            .sum()
    };
    let threads = limits.threads().clamp(1, n);
    if threads == 1 {
        return Ok((0..n).map(first).sum());
    }
    let total = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let first = &first;
                s.spawn(move || (t..n).step_by(threads).map(first).sum::<u64>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    Ok(total)
}

/// `Z_G(Σ_g) = #{Π[aᵢ,bᵢ] = e} / |G|`, exact.
pub fn surface_gauge_count(g: &FiniteGroup, genus: usize, limits: &Limits) -> Result<BigRational> {
    let count = commuting_tuple_count(g, genus, limits)?;
    Ok(BigRational::new(BigInt::from(count), BigInt::from(g.order())))
}

/// Genus of a manifold expression that names a closed orientable surface.
pub fn surface_genus(m: &ManifoldExpr) -> Option<usize> {
    let t = m.text().replace(' ', "").to_ascii_lowercase();
    match t.as_str() {
        "sphere:2" => Some(0),
        "torus:2" | "circle*circle" => Some(1),
        _ => t.strip_prefix("surface:").and_then(|g| g.parse().ok()),
    }
}

/// Partition function of a π-finite target on a closed manifold.
///
/// `twist` is reserved for a cohomological weight; only the zero weight is
/// implemented. A nonabelian `BG` is supported on closed orientable
/// surfaces only.
pub fn partition(
    target: &PiFiniteTarget,
    m: &ManifoldExpr,
    twist: Phase,
    limits: &Limits,
) -> Result<BigRational> {
    if !twist.is_zero() {
        return Err(Error::Unsupported("twisted (nonzero) weights are not implemented".into()));
    }
    match target {
        PiFiniteTarget::EilenbergMacLane { group, degree } => em_partition(m.complex(), group, *degree),
        PiFiniteTarget::BG(g) => {
            if g.is_abelian() {
                let a = abelian_of(g)?;
                return em_partition(m.complex(), &a, 1);
            }
            match surface_genus(m) {
                Some(genus) => surface_gauge_count(g, genus, limits),
                None => Err(Error::Unsupported(format!(
                    "nonabelian BG is only supported on surfaces, not {:?}",
                    m.text()
                ))),
            }
        }
    }
}

/// Invariant factors of an abelian Cayley table, from element orders.
fn abelian_of(g: &FiniteGroup) -> Result<FiniteAbelianGroup> {
    let n = g.order();
    // count elements of each order and peel off invariant factors via the
    // counts |{x : x^k = e}| = Π gcd(k, nᵢ); brute force over divisor chains
    let power_id = |k: usize| {
        (0..n)
            .filter(|&x| {
                let mut y = g.identity();
                for _ in 0..k {
                    y = g.mul(y, x);
                }
                y == g.identity()
            })
            .count()
    };
    let target: Vec<usize> = (1..=n).map(power_id).collect();
    let mut found = None;
    search(n, 2, &mut vec![], &target, &mut found);
    found
        .map(|f| FiniteAbelianGroup::new(f).expect("chain is valid"))
        .ok_or_else(|| Error::invalid("could not identify the abelian group"))
}

fn search(rest: usize, min: usize, chain: &mut Vec<u64>, target: &[usize], out: &mut Option<Vec<u64>>) {
    if out.is_some() {
        return;
    }
    if rest == 1 {
        let ok = (1..=target.len()).all(|k| {
            chain.iter().map(|&ni| num_integer::gcd(k as u64, ni)).product::<u64>() as usize == target[k - 1]
        });
        if ok {
            *out = Some(chain.clone());
        }
        return;
    }
    for d in min..=rest {
        if rest.is_multiple_of(d) && chain.last().is_none_or(|&l| (d as u64).is_multiple_of(l)) {
            chain.push(d as u64);
            search(rest / d, d, chain, target, out);
            chain.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_parsing() {
        assert_eq!(
            "B2:Z2".parse::<PiFiniteTarget>().unwrap(),
            PiFiniteTarget::eilenberg_maclane("Z2".parse().unwrap(), 2).unwrap()
        );
        assert!(matches!("B:Z3".parse::<PiFiniteTarget>().unwrap(), PiFiniteTarget::EilenbergMacLane { degree: 1, .. }));
        assert!(matches!("BG:S3".parse::<PiFiniteTarget>().unwrap(), PiFiniteTarget::BG(_)));
        assert!("B0:Z2".parse::<PiFiniteTarget>().is_err());
        assert!("K2:Z2".parse::<PiFiniteTarget>().is_err());
    }

    #[test]
    fn abelian_identification() {
        for s in ["Z2", "Z4", "Z2xZ2", "Z2xZ4", "Z6"] {
            let g = FiniteGroup::preset(s).unwrap();
            assert_eq!(abelian_of(&g).unwrap(), s.parse().unwrap());
        }
    }

    #[test]
    fn closedness() {
        use crate::complexes::*;
        assert!(looks_closed(&torus(3).unwrap()));
        assert!(looks_closed(&rp(2).unwrap()));
        assert!(!looks_closed(&disk().complex));
        assert!(!looks_closed(&pants().complex));
        assert!(em_partition(&cylinder().complex, &"Z2".parse().unwrap(), 1).is_err());
    }

    #[test]
    fn twist_hook() {
        let m: ManifoldExpr = "torus:2".parse().unwrap();
        let t: PiFiniteTarget = "B:Z2".parse().unwrap();
        let l = Limits::default();
        assert!(partition(&t, &m, Phase::ZERO, &l).is_ok());
        assert!(matches!(partition(&t, &m, Phase::new(1, 2), &l), Err(Error::Unsupported(_))));
    }
}
