use serde::{Deserialize, Serialize};

use super::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};

const S3_JSON: &str = include_str!("../../presets/s3.json");
const D4_JSON: &str = include_str!("../../presets/d4.json");
const Q8_JSON: &str = include_str!("../../presets/q8.json");
const Z2XZ2_JSON: &str = include_str!("../../presets/z2xz2.json");

/// A finite group given by its Cayley table. Validated on construction:
/// Latin square, two-sided identity, associativity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct FiniteGroup {
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    order: usize,
    cayley: Vec<Vec<usize>>,
    identity: usize,
}

impl TryFrom<RawGroup> for FiniteGroup {
    type Error = Error;
    fn try_from(raw: RawGroup) -> Result<Self> {
        if raw.cayley.len() != raw.order {
            return Err(Error::invalid(format!(
                "order {} does not match a Cayley table with {} rows",
                raw.order,
                raw.cayley.len()
            )));
        }
        FiniteGroup::new(raw.cayley, raw.identity)
    }
}

impl From<FiniteGroup> for RawGroup {
    fn from(g: FiniteGroup) -> Self {
        RawGroup {
            order: g.order(),
            cayley: g.cayley,
            identity: g.identity,
        }
    }
}

impl FiniteGroup {
    pub fn new(cayley: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::invalid("a group has at least one element"));
        }
        if identity >= n {
            return Err(Error::invalid(format!("identity index {identity} out of range")));
        }
        let mut seen = vec![false; n];
        for row in &cayley {
            if row.len() != n {
                return Err(Error::invalid("Cayley table is not square"));
            }
            seen.iter_mut().for_each(|s| *s = false);
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::invalid("Cayley table rows must be permutations"));
                }
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for row in &cayley {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::invalid("Cayley table columns must be permutations"));
                }
            }
        }
        for a in 0..n {
            if cayley[identity][a] != a || cayley[a][identity] != a {
                return Err(Error::invalid(format!(
                    "element {identity} is not a two-sided identity"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a][b];
                for c in 0..n {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::invalid(format!(
                            "multiplication is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        // Latin rows guarantee a unique right inverse, which is two-sided
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| cayley[a][b] == identity).unwrap())
            .collect();
        Ok(Self {
            cayley,
            identity,
            inverse,
        })
    }

    /// `ℤ_n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ℤ_0 is not finite"));
        }
        Self::new(
            (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            0,
        )
    }

    /// Cayley table of an abelian group, elements in lexicographic order.
    pub fn from_abelian(a: &FiniteAbelianGroup) -> Self {
        let elems: Vec<_> = a.elements().collect();
        let cayley = elems
            .iter()
            .map(|x| elems.iter().map(|y| a.index_of(&a.add(x, y))).collect())
            .collect();
        Self::new(cayley, 0).expect("abelian group tables are valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("bad group JSON: {e}")))
    }

    /// Named presets: `S3`, `D4`, `Q8`, `Z2xZ2` (also `V4`), `Zn`, and any
    /// abelian product such as `Z2xZ4`.
    pub fn preset(name: &str) -> Result<Self> {
        let json = match name.trim().to_ascii_uppercase().as_str() {
            "S3" => S3_JSON,
            "D4" => D4_JSON,
            "Q8" => Q8_JSON,
            "V4" | "Z2XZ2" => Z2XZ2_JSON,
            _ => {
                let a: FiniteAbelianGroup = name.parse().map_err(|_| {
                    Error::invalid(format!(
                        "unknown group {name:?} (expected S3, D4, Q8, Zn or a product like Z2xZ4)"
                    ))
                })?;
                return Ok(Self::from_abelian(&a));
            }
        };
        Self::from_json(json)
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ab_ai = self.mul(ab, self.inv(a));
        self.mul(ab_ai, self.inv(b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member. The class
    /// of the identity is always the singleton `[identity]`.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, x), self.inv(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = id;
            }
            classes.push(class);
        }
        classes
    }
}

/// Free function form of [`FiniteGroup::conjugacy_classes`].
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    g.conjugacy_classes()
}
