//! Fusion rings (Grothendieck rings of fusion categories): group rings,
//! Tambara–Yamagami rings, Perron–Frobenius dimensions and the one-sided
//! obstructions to fiber functors and square roots.

use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteGroup;
use crate::error::{Error, Result};

const PF_TOL: f64 = 1e-12;
const PF_MAX_ITER: usize = 100_000;
const INTEGER_TOL: f64 = 1e-9;

/// Based ring with structure constants `N_{ij}^k = N[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRing", into = "RawRing")]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    n: Vec<Vec<Vec<u64>>>,
    dual: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawRing {
    labels: Vec<String>,
    unit: usize,
    #[serde(rename = "N")]
    n: Vec<Vec<Vec<u64>>>,
    dual: Vec<usize>,
}

impl TryFrom<RawRing> for FusionRing {
    type Error = Error;
    fn try_from(r: RawRing) -> Result<Self> {
        FusionRing::new(r.labels, r.unit, r.n, r.dual)
    }
}

impl From<FusionRing> for RawRing {
    fn from(r: FusionRing) -> Self {
        RawRing {
            labels: r.labels,
            unit: r.unit,
            n: r.n,
            dual: r.dual,
        }
    }
}

impl FusionRing {
    /// Validates shapes, unit laws, associativity, `N_{ij}^1 = δ_{j,i*}` and
    /// that the dual is an involution.
    pub fn new(labels: Vec<String>, unit: usize, n: Vec<Vec<Vec<u64>>>, dual: Vec<usize>) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::invalid("a fusion ring needs at least one simple object"));
        }
        if unit >= r {
            return Err(Error::invalid(format!("unit index {unit} out of range")));
        }
        if n.len() != r || n.iter().any(|a| a.len() != r || a.iter().any(|b| b.len() != r)) {
            return Err(Error::invalid(format!("N must be a {r}x{r}x{r} array")));
        }
        if dual.len() != r || dual.iter().any(|&d| d >= r) {
            return Err(Error::invalid("dual must map each label to a label"));
        }
        for i in 0..r {
            if dual[dual[i]] != i {
                return Err(Error::invalid(format!("dual is not an involution at {}", labels[i])));
            }
            for k in 0..r {
                let delta = u64::from(i == k);
                if n[unit][i][k] != delta || n[i][unit][k] != delta {
                    return Err(Error::invalid(format!("unit law fails at {}", labels[i])));
                }
                if n[i][k][unit] != u64::from(k == dual[i]) {
                    return Err(Error::invalid(format!(
                        "{} ⊗ {} contains the unit with the wrong multiplicity",
                        labels[i], labels[k]
                    )));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u64 = (0..r).map(|m| n[i][j][m] * n[m][k][l]).sum();
                        let rhs: u64 = (0..r).map(|m| n[j][k][m] * n[i][m][l]).sum();
                        if lhs != rhs {
                            return Err(Error::invalid(format!(
                                "fusion is not associative at ({}, {}, {})",
                                labels[i], labels[j], labels[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self { labels, unit, n, dual })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("bad fusion ring JSON: {e}")))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[i][j][k]
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// `(N_i)_{jk} = N_{ij}^k`; its Perron–Frobenius eigenvalue is `dᵢ`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        self.n[i].clone()
    }

    /// Every simple object is invertible.
    pub fn is_pointed(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).map(|k| self.n[i][self.dual[i]][k]).sum::<u64>() == 1)
    }

    pub fn simple(&self, i: usize) -> RingElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        RingElement {
            ring: self.clone(),
            coefficients: c,
        }
    }

    pub fn element(&self, coefficients: Vec<u64>) -> Result<RingElement> {
        if coefficients.len() != self.rank() {
            return Err(Error::invalid(format!(
                "ring element needs {} coefficients, got {}",
                self.rank(),
                coefficients.len()
            )));
        }
        Ok(RingElement {
            ring: self.clone(),
            coefficients,
        })
    }
}

/// Nonnegative integer combination of simple objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: FusionRing,
    coefficients: Vec<u64>,
}

impl RingElement {
    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn scale(&self, k: u64) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coefficients: self.coefficients.iter().map(|c| c * k).collect(),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        assert_eq!(self.ring, rhs.ring, "elements of different rings");
        let r = self.ring.rank();
        let mut out = vec![0u64; r];
        for (i, &a) in self.coefficients.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in rhs.coefficients.iter().enumerate().filter(|(_, &b)| b != 0) {
                for (k, o) in out.iter_mut().enumerate() {
                    *o += a * b * self.ring.n[i][j][k];
                }
            }
        }
        RingElement {
            ring: self.ring.clone(),
            coefficients: out,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .zip(&self.ring.labels)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, l)| if c == 1 { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `ℤ[G]`: one simple per element, fusion from the Cayley table.
/// Labels are `1` for the identity and `g<i>` for element index `i`.
pub fn group_ring(g: &FiniteGroup) -> FusionRing {
    let n = g.order();
    let labels = (0..n)
        .map(|i| if i == g.identity() { "1".to_string() } else { format!("g{i}") })
        .collect();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| u64::from(g.mul(i, j) == k)).collect())
                .collect()
        })
        .collect();
    let dual = (0..n).map(|i| g.inv(i)).collect();
    FusionRing::new(labels, g.identity(), table, dual).expect("group rings are fusion rings")
}

/// Tambara–Yamagami ring of an abelian group: simples `L0…L{n−1}` (by
/// element index) and `N`, with `L_g L_h = L_{gh}`, `N L_g = L_g N = N`,
/// `N N = Σ_g L_g`.
pub fn tambara_yamagami(g: &FiniteGroup) -> Result<FusionRing> {
    if !g.is_abelian() {
        return Err(Error::invalid("Tambara–Yamagami rings need an abelian group"));
    }
    let n = g.order();
    let r = n + 1;
    let mut labels: Vec<String> = (0..n).map(|i| format!("L{i}")).collect();
    labels.push("N".into());
    let mut t = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..n {
        for j in 0..n {
            t[i][j][g.mul(i, j)] = 1;
        }
        t[i][n][n] = 1;
        t[n][i][n] = 1;
        t[n][n][i] = 1;
    }
    let mut dual: Vec<usize> = (0..n).map(|i| g.inv(i)).collect();
    dual.push(n);
    FusionRing::new(labels, g.identity(), t, dual)
}

/// A Perron–Frobenius dimension with its exact form when recognised.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dimension {
    pub label: String,
    pub value: f64,
    /// `"k"` for an integer, `"sqrt(s)"` when `d²` is the integer `s`.
    pub exact: Option<String>,
}

fn exact_form(d: f64) -> Option<String> {
    let r = d.round();
    if (d - r).abs() <= INTEGER_TOL {
        return Some(format!("{}", r as u64));
    }
    let s = (d * d).round();
    if (d * d - s).abs() <= INTEGER_TOL {
        return Some(format!("sqrt({})", s as u64));
    }
    None
}

/// Perron–Frobenius dimensions `dᵢ`, normalised so `d_unit = 1`.
///
/// Pointed rings get exact 1s. Otherwise the common PF eigenvector of the
/// `N_i` is found by power iteration on `I + Σᵢ N_i` (tolerance `1e−12`,
/// at most `10⁵` steps), and `dᵢ` is read off as the ratio `(N_i d)_u / d_u`.
pub fn pf_dimensions(r: &FusionRing) -> Result<Vec<Dimension>> {
    let k = r.rank();
    let values: Vec<f64> = if r.is_pointed() {
        vec![1.0; k]
    } else {
        let mut s = DMatrix::<f64>::identity(k, k);
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    s[(j, l)] += r.n[i][j][l] as f64;
                }
            }
        }
        let mut x = nalgebra::DVector::<f64>::from_element(k, 1.0);
        let mut converged = false;
        for _ in 0..PF_MAX_ITER {
            let mut y = &s * &x;
            let norm = y.max();
            y /= norm;
            let diff = (&y - &x).amax();
            x = y;
            if diff <= PF_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence(PF_MAX_ITER));
        }
        if x.iter().any(|&v| v <= 0.0) {
            return Err(Error::invalid("fusion ring is not connected"));
        }
        x /= x[r.unit];
        x.iter().copied().collect()
    };
    Ok(values
        .iter()
        .zip(&r.labels)
        .map(|(&v, l)| {
            let exact = exact_form(v);
            // snap recognised integers exactly
            let value = match &exact {
                Some(e) if !e.starts_with("sqrt") => v.round(),
                Some(_) => (v * v).round().sqrt(),
                None => v,
            };
            Dimension {
                label: l.clone(),
                value,
                exact,
            }
        })
        .collect())
}

/// One-sided fiber-functor test.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FiberFunctorVerdict {
    /// Necessary condition satisfied; existence is not claimed.
    Possible { note: String },
    Impossible {
        witness: String,
        dimension: f64,
        exact: Option<String>,
    },
}

pub fn fiber_functor_obstruction(r: &FusionRing) -> Result<FiberFunctorVerdict> {
    let dims = pf_dimensions(r)?;
    for d in &dims {
        if (d.value - d.value.round()).abs() > INTEGER_TOL {
            return Ok(FiberFunctorVerdict::Impossible {
                witness: d.label.clone(),
                dimension: d.value,
                exact: d.exact.clone(),
            });
        }
    }
    Ok(FiberFunctorVerdict::Possible {
        note: "all Perron-Frobenius dimensions are integers; this is a necessary condition only".into(),
    })
}

/// One-sided test for `T = S* ⊗ S`: the rank of such a ring is a square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SquareRootVerdict {
    NoSqrt { rank: usize, reason: String },
    Inconclusive { rank: usize },
}

pub fn square_root_obstruction(r: &FusionRing) -> SquareRootVerdict {
    let rank = r.rank();
    let root = (rank as f64).sqrt().round() as usize;
    if root * root == rank {
        SquareRootVerdict::Inconclusive { rank }
    } else {
        SquareRootVerdict::NoSqrt {
            rank,
            reason: format!("rank {rank} is not a perfect square"),
        }
    }
}

/// `Σ_g L_g` in the group ring of `G`.
pub fn quotient_defect_composition(g: &FiniteGroup) -> RingElement {
    let ring = group_ring(g);
    let n = ring.rank();
    ring.element(vec![1; n]).expect("length matches rank")
}
