use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;
use crate::error::{Error, Result};

/// Finite cellular chain complex over ℤ.
///
/// `cells[k]` is the number of `k`-cells; `∂_k: C_k → C_{k−1}` is stored as a
/// `cells[k−1] × cells[k]` matrix whose column `j` lists the boundary of
/// cell `j`. Construction checks `∂_{k−1}∘∂_k = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct ChainComplex {
    cells: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    cells: Vec<usize>,
    boundaries: Vec<Vec<Vec<i64>>>,
}

impl TryFrom<RawComplex> for ChainComplex {
    type Error = Error;
    fn try_from(raw: RawComplex) -> Result<Self> {
        if raw.boundaries.len() + 1 != raw.cells.len().max(1) {
            return Err(Error::invalid(format!(
                "{} cell counts need {} boundary matrices, got {}",
                raw.cells.len(),
                raw.cells.len().saturating_sub(1),
                raw.boundaries.len()
            )));
        }
        let mut mats = Vec::with_capacity(raw.boundaries.len());
        for (k, rows) in raw.boundaries.iter().enumerate() {
            if rows.len() != raw.cells[k] {
                return Err(Error::invalid(format!(
                    "boundary ∂_{} must have {} rows, got {}",
                    k + 1,
                    raw.cells[k],
                    rows.len()
                )));
            }
            mats.push(IntMatrix::from_rows(rows, raw.cells[k + 1])?);
        }
        ChainComplex::new(raw.cells, mats)
    }
}

impl From<ChainComplex> for RawComplex {
    fn from(c: ChainComplex) -> Self {
        RawComplex {
            boundaries: c
                .boundaries
                .iter()
                .map(|m| m.to_rows_i64().expect("boundary entries fit in i64"))
                .collect(),
            cells: c.cells,
        }
    }
}

impl ChainComplex {
    pub fn new(cells: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let cells = if cells.is_empty() { vec![0] } else { cells };
        if boundaries.len() + 1 != cells.len() {
            return Err(Error::invalid(format!(
                "{} cell counts need {} boundary matrices, got {}",
                cells.len(),
                cells.len() - 1,
                boundaries.len()
            )));
        }
        for (i, m) in boundaries.iter().enumerate() {
            let k = i + 1;
            if m.rows() != cells[k - 1] || m.cols() != cells[k] {
                return Err(Error::invalid(format!(
                    "∂_{k} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    cells[k - 1],
                    cells[k]
                )));
            }
        }
        for k in 2..cells.len() {
            if !(&boundaries[k - 2] * &boundaries[k - 1]).is_zero() {
                return Err(Error::invalid(format!("∂_{}∘∂_{k} ≠ 0", k - 1)));
            }
        }
        Ok(Self { cells, boundaries })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("bad complex JSON: {e}")))
    }

    /// The empty complex (no cells).
    pub fn empty() -> Self {
        Self {
            cells: vec![0],
            boundaries: vec![],
        }
    }

    pub fn point() -> Self {
        Self {
            cells: vec![1],
            boundaries: vec![],
        }
    }

    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cells
    }

    pub fn cells(&self, k: usize) -> usize {
        self.cells.get(k).copied().unwrap_or(0)
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().sum()
    }

    /// `∂_k`, with correctly shaped empty/zero matrices outside `1..=top_dim`.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k >= 1 && k <= self.top_dim() {
            self.boundaries[k - 1].clone()
        } else {
            let rows = if k == 0 { 0 } else { self.cells(k - 1) };
            IntMatrix::zeros(rows, self.cells(k))
        }
    }

    /// `δ^q = ∂_{q+1}ᵀ: C^q → C^{q+1}`.
    pub fn coboundary(&self, q: usize) -> IntMatrix {
        self.boundary(q + 1).transpose()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn product_offset(a: &ChainComplex, b: &ChainComplex, k: usize, p: usize) -> usize {
        (0..p).map(|i| a.cells(i) * b.cells(k - i)).sum()
    }

    /// Index of the product cell `aᵢ × bⱼ` with `dim aᵢ = p`, `dim bⱼ = k − p`.
    pub fn product_index(a: &ChainComplex, b: &ChainComplex, p: usize, i: usize, k: usize, j: usize) -> usize {
        Self::product_offset(a, b, p + k, p) + i * b.cells(k) + j
    }

    /// Tensor product complex with the Koszul sign
    /// `∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`.
    pub fn product(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
        let top = a.top_dim() + b.top_dim();
        let cells: Vec<usize> = (0..=top)
            .map(|k| (0..=k).map(|p| a.cells(p) * b.cells(k - p)).sum())
            .collect();
        let mut boundaries = Vec::with_capacity(top);
        for k in 1..=top {
            let mut m = IntMatrix::zeros(cells[k - 1], cells[k]);
            for p in 0..=k {
                let q = k - p;
                let (da, db) = (a.boundary(p), b.boundary(q));
                for i in 0..a.cells(p) {
                    for j in 0..b.cells(q) {
                        let col = Self::product_index(a, b, p, i, q, j);
                        if p >= 1 {
                            for i2 in 0..a.cells(p - 1) {
                                let x = da.get(i2, i);
                                if !x.is_zero() {
                                    let row = Self::product_index(a, b, p - 1, i2, q, j);
                                    m.set(row, col, m.get(row, col) + x);
                                }
                            }
                        }
                        if q >= 1 {
                            let sign = if p % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                            for j2 in 0..b.cells(q - 1) {
                                let x = db.get(j2, j);
                                if !x.is_zero() {
                                    let row = Self::product_index(a, b, p, i, q - 1, j2);
                                    m.set(row, col, m.get(row, col) + &sign * x);
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        ChainComplex::new(cells, boundaries).expect("product of complexes is a complex")
    }

    /// Block-diagonal union; cells of `a` come first in every degree.
    pub fn disjoint_union(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
        let top = a.top_dim().max(b.top_dim());
        let cells: Vec<usize> = (0..=top).map(|k| a.cells(k) + b.cells(k)).collect();
        let boundaries = (1..=top)
            .map(|k| {
                let (da, db) = (a.boundary(k), b.boundary(k));
                let (ra, ca) = (a.cells(k - 1), a.cells(k));
                IntMatrix::from_fn(cells[k - 1], cells[k], |i, j| match (i < ra, j < ca) {
                    (true, true) => da.get(i, j).clone(),
                    (false, false) => db.get(i - ra, j - ca).clone(),
                    _ => BigInt::zero(),
                })
            })
            .collect();
        ChainComplex::new(cells, boundaries).expect("union of complexes is a complex")
    }

    /// The quotient complex keeping only the listed cells in each degree.
    /// Callers must pass the complement of a subcomplex.
    pub(crate) fn restrict_to(&self, keep: &[Vec<usize>]) -> ChainComplex {
        let cells: Vec<usize> = keep.iter().map(Vec::len).collect();
        let boundaries = (1..cells.len())
            .map(|k| self.boundary(k).select(&keep[k - 1], &keep[k]))
            .collect();
        ChainComplex::new(cells, boundaries).expect("quotient by a subcomplex is a complex")
    }
}

/// Inclusion of a subcomplex, given cell by cell in each degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubcomplexMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<Vec<usize>>,
}

impl SubcomplexMap {
    /// Validates injectivity, ranges and the chain-map condition.
    pub fn new(source: ChainComplex, target: ChainComplex, maps: Vec<Vec<usize>>) -> Result<Self> {
        if maps.len() != source.top_dim() + 1 {
            return Err(Error::invalid(format!(
                "inclusion needs a cell map for each of {} degrees, got {}",
                source.top_dim() + 1,
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.len() != source.cells(k) {
                return Err(Error::invalid(format!(
                    "degree {k}: source has {} cells but the map lists {}",
                    source.cells(k),
                    m.len()
                )));
            }
            let mut seen = vec![false; target.cells(k)];
            for &t in m {
                if t >= target.cells(k) {
                    return Err(Error::invalid(format!("degree {k}: cell {t} is out of range")));
                }
                if std::mem::replace(&mut seen[t], true) {
                    return Err(Error::invalid(format!("degree {k}: inclusion is not injective")));
                }
            }
        }
        for k in 1..maps.len() {
            let (ds, dt) = (source.boundary(k), target.boundary(k));
            let mut preimage = vec![None; target.cells(k - 1)];
            for (s, &t) in maps[k - 1].iter().enumerate() {
                preimage[t] = Some(s);
            }
            for (i, &fi) in maps[k].iter().enumerate() {
                for (t, pre) in preimage.iter().enumerate() {
                    let expected = match pre {
                        Some(s) => ds.get(*s, i).clone(),
                        None => BigInt::zero(),
                    };
                    if *dt.get(t, fi) != expected {
                        return Err(Error::invalid(format!(
                            "inclusion is not a chain map: boundary of {k}-cell {i} differs"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            source,
            target,
            maps,
        })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// Target index of each source cell in degree `k` (empty above the
    /// source's top dimension).
    pub fn cell_map(&self, k: usize) -> &[usize] {
        self.maps.get(k).map_or(&[], Vec::as_slice)
    }

    /// `a × S → a × B` for `S → B`.
    pub fn product_left(a: &ChainComplex, s: &SubcomplexMap) -> SubcomplexMap {
        let src = ChainComplex::product(a, &s.source);
        let tgt = ChainComplex::product(a, &s.target);
        let maps = (0..=src.top_dim())
            .map(|k| {
                let mut m = vec![0; src.cells(k)];
                for p in 0..=k.min(a.top_dim()) {
                    let q = k - p;
                    for i in 0..a.cells(p) {
                        for j in 0..s.source.cells(q) {
                            m[ChainComplex::product_index(a, &s.source, p, i, q, j)] =
                                ChainComplex::product_index(a, &s.target, p, i, q, s.maps[q][j]);
                        }
                    }
                }
                m
            })
            .collect();
        SubcomplexMap::new(src, tgt, maps).expect("product of an inclusion is an inclusion")
    }

    /// `S × b → B × b` for `S → B`.
    pub fn product_right(s: &SubcomplexMap, b: &ChainComplex) -> SubcomplexMap {
        let src = ChainComplex::product(&s.source, b);
        let tgt = ChainComplex::product(&s.target, b);
        let maps = (0..=src.top_dim())
            .map(|k| {
                let mut m = vec![0; src.cells(k)];
                for p in 0..=k.min(s.source.top_dim()) {
                    let q = k - p;
                    for i in 0..s.source.cells(p) {
                        for j in 0..b.cells(q) {
                            m[ChainComplex::product_index(&s.source, b, p, i, q, j)] =
                                ChainComplex::product_index(&s.target, b, p, s.maps[p][i], q, j);
                        }
                    }
                }
                m
            })
            .collect();
        SubcomplexMap::new(src, tgt, maps).expect("product of an inclusion is an inclusion")
    }

    /// Re-targets `S → A` to `S → A ⊔ B` (`left`) or `S → B ⊔ A` (`!left`).
    pub fn into_union(&self, other: &ChainComplex, left: bool) -> SubcomplexMap {
        let (tgt, shift): (ChainComplex, Box<dyn Fn(usize) -> usize>) = if left {
            (ChainComplex::disjoint_union(&self.target, other), Box::new(|_| 0))
        } else {
            (
                ChainComplex::disjoint_union(other, &self.target),
                Box::new(move |k| other.cells(k)),
            )
        };
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| m.iter().map(|&t| t + shift(k)).collect())
            .collect();
        SubcomplexMap::new(self.source.clone(), tgt, maps).expect("union inclusion is valid")
    }

    /// The inclusion of a disjoint union of two subcomplexes of the same target.
    pub fn union(a: &SubcomplexMap, b: &SubcomplexMap) -> Result<SubcomplexMap> {
        if a.target != b.target {
            return Err(Error::invalid("subcomplexes live in different complexes"));
        }
        let src = ChainComplex::disjoint_union(&a.source, &b.source);
        let maps = (0..=src.top_dim())
            .map(|k| a.cell_map(k).iter().chain(b.cell_map(k)).copied().collect())
            .collect();
        SubcomplexMap::new(src, a.target.clone(), maps)
    }

    /// Cells of the target not hit by the inclusion, per degree.
    pub fn complement(&self) -> Vec<Vec<usize>> {
        (0..=self.target.top_dim())
            .map(|k| {
                let hit = self.cell_map(k);
                (0..self.target.cells(k)).filter(|c| !hit.contains(c)).collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![IntMatrix::zeros(1, 1)]).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        // ∂₁ = [1], ∂₂ = [1]: composite is nonzero
        let one = IntMatrix::from_rows(&[vec![1]], 1).unwrap();
        assert!(ChainComplex::new(vec![1, 1, 1], vec![one.clone(), one]).is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ChainComplex::new(vec![1, 2], vec![IntMatrix::zeros(1, 1)]).is_err());
        assert!(ChainComplex::new(vec![1, 1], vec![]).is_err());
    }

    #[test]
    fn product_of_circles_is_torus() {
        let t = ChainComplex::product(&circle(), &circle());
        assert_eq!(t.cell_counts(), &[1, 2, 1]);
        assert!(t.boundary(2).is_zero());
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn union_counts() {
        let u = ChainComplex::disjoint_union(&circle(), &ChainComplex::point());
        assert_eq!(u.cell_counts(), &[2, 1]);
    }

    #[test]
    fn json_schema() {
        let s = r#"{"cells":[1,1,1],"boundaries":[[[0]],[[2]]]}"#;
        let rp2 = ChainComplex::from_json(s).unwrap();
        assert_eq!(rp2.boundary(2).get_i64(0, 0), 2);
        assert_eq!(serde_json::to_string(&rp2).unwrap(), s);
        assert!(ChainComplex::from_json(r#"{"cells":[1,1,1],"boundaries":[[[1]],[[1]]]}"#).is_err());
    }

    #[test]
    fn inclusion_must_be_chain_map() {
        // interval v0 --e--> v1 ; including a point as v0 is fine
        let d = IntMatrix::from_rows(&[vec![-1], vec![1]], 1).unwrap();
        let interval = ChainComplex::new(vec![2, 1], vec![d]).unwrap();
        assert!(SubcomplexMap::new(ChainComplex::point(), interval.clone(), vec![vec![0]]).is_ok());
        // a circle mapped onto the interval's edge is not a chain map
        assert!(SubcomplexMap::new(circle(), interval, vec![vec![0], vec![0]]).is_err());
    }
}
