use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{smith_decomposition, Element, FiniteAbelianGroup, IntMatrix};
use crate::error::{Error, Result};

use super::chain::{ChainComplex, SubcomplexMap};

/// A cochain: one coefficient in `A` per cell of the relevant degree.
pub type Cochain = Vec<Element>;

/// `H^q(−; ℤ_n)` for a single cyclic factor, with explicit coordinates.
///
/// With `U·δ·V = D` the cocycles are `x = V·y`, `yᵢ ∈ sᵢℤ_n` where
/// `sᵢ = n / gcd(dᵢ, n)`. In the kernel coordinates `w = y/s` (so
/// `wᵢ ∈ ℤ_{kᵢ}`, `kᵢ = n/sᵢ`) the coboundaries form the column span of `W`;
/// a second Smith form of `[W | diag k]` diagonalises the quotient.
#[derive(Clone, Debug)]
struct CyclicPiece {
    modulus: u64,
    v: IntMatrix,
    v_inv: IntMatrix,
    scale: Vec<u64>,
    quotient_u: IntMatrix,
    quotient_u_inv: IntMatrix,
    // all diagonal entries of the quotient Smith form, 1s included
    orders: Vec<u64>,
}

impl CyclicPiece {
    fn compute(delta: &IntMatrix, delta_prev: &IntMatrix, n: u64) -> Self {
        let m = delta.cols();
        let snf = smith_decomposition(delta);
        let inv = snf.invariants();
        let scale: Vec<u64> = (0..m)
            .map(|i| match inv.get(i) {
                Some(d) => {
                    let d = (d % BigInt::from(n)).to_u64().unwrap();
                    n / d.gcd(&n)
                }
                None => 1,
            })
            .collect();
        let kernel_orders: Vec<u64> = scale.iter().map(|s| n / s).collect();

        let gens = delta_prev.cols();
        let mut rel = IntMatrix::zeros(m, gens + m);
        for j in 0..gens {
            let col: Vec<u64> = (0..m)
                .map(|i| {
                    let x = delta_prev.get(i, j).mod_floor(&BigInt::from(n));
                    x.to_u64().unwrap()
                })
                .collect();
            let y = snf.v_inv.mul_vec_mod(&col, n);
            for i in 0..m {
                debug_assert_eq!(y[i] % scale[i], 0, "coboundary outside the cocycle lattice");
                rel.set(i, j, BigInt::from(y[i] / scale[i]));
            }
        }
        for i in 0..m {
            rel.set(i, gens + i, BigInt::from(kernel_orders[i]));
        }
        let q = smith_decomposition(&rel);
        let orders = (0..m).map(|j| q.d.get(j, j).to_u64().unwrap()).collect();
        Self {
            modulus: n,
            v: snf.v,
            v_inv: snf.v_inv,
            scale,
            quotient_u: q.u,
            quotient_u_inv: q.u_inv,
            orders,
        }
    }

    fn nontrivial(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.orders.iter().copied().enumerate().filter(|&(_, d)| d > 1)
    }

    fn class_of(&self, x: &[u64]) -> Option<Vec<u64>> {
        let y = self.v_inv.mul_vec_mod(x, self.modulus);
        if y.iter().zip(&self.scale).any(|(yi, s)| yi % s != 0) {
            return None;
        }
        let w: Vec<u64> = y.iter().zip(&self.scale).map(|(yi, s)| yi / s).collect();
        let c: Vec<BigInt> = (0..w.len())
            .map(|j| {
                self.quotient_u
                    .row(j)
                    .iter()
                    .zip(&w)
                    .map(|(a, &b)| a * BigInt::from(b))
                    .sum()
            })
            .collect();
        Some(
            self.nontrivial()
                .map(|(j, d)| c[j].mod_floor(&BigInt::from(d)).to_u64().unwrap())
                .collect(),
        )
    }

    fn representative(&self, coords: &[u64]) -> Vec<u64> {
        let m = self.orders.len();
        let mut e = vec![0u64; m];
        for ((j, _), &c) in self.nontrivial().zip(coords) {
            e[j] = c;
        }
        // w = U_R⁻¹·e over ℤ, reduced mod k via y = s⊙w mod n
        let y: Vec<u64> = (0..m)
            .map(|i| {
                let w: BigInt = self
                    .quotient_u_inv
                    .row(i)
                    .iter()
                    .zip(&e)
                    .map(|(a, &b)| a * BigInt::from(b))
                    .sum();
                (w * BigInt::from(self.scale[i]))
                    .mod_floor(&BigInt::from(self.modulus))
                    .to_u64()
                    .unwrap()
            })
            .collect();
        self.v.mul_vec_mod(&y, self.modulus)
    }
}

/// `H^q(X; A)` with explicit coordinates, representatives and class lookup.
///
/// For relative groups the cochains live on the ambient complex and vanish
/// on the subcomplex.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    coefficients: FiniteAbelianGroup,
    group: FiniteAbelianGroup,
    pieces: Vec<CyclicPiece>,
    support: Vec<usize>,
    ambient_cells: usize,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &FiniteAbelianGroup {
        &self.coefficients
    }

    /// The group, in invariant-factor form.
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    /// Orders of the coordinate generators (not necessarily a divisibility
    /// chain; their product is the group order).
    pub fn coordinate_orders(&self) -> Vec<u64> {
        self.pieces
            .iter()
            .flat_map(|p| p.nontrivial().map(|(_, d)| d))
            .collect()
    }

    /// Number of cells in degree `q` of the ambient complex.
    pub fn cochain_len(&self) -> usize {
        self.ambient_cells
    }

    /// Coordinates of the class of a cocycle, or an error if it is not a
    /// cocycle (or, for relative groups, does not vanish on the subcomplex).
    pub fn class_of(&self, cochain: &[Element]) -> Result<Vec<u64>> {
        if cochain.len() != self.ambient_cells {
            return Err(Error::invalid(format!(
                "cochain has {} entries, expected {}",
                cochain.len(),
                self.ambient_cells
            )));
        }
        let mut in_support = vec![false; self.ambient_cells];
        for &c in &self.support {
            in_support[c] = true;
        }
        for (c, v) in cochain.iter().enumerate() {
            if !self.coefficients.contains(v) {
                return Err(Error::invalid(format!("cochain value {v:?} is not in {}", self.coefficients)));
            }
            if !in_support[c] && v.iter().any(|&x| x != 0) {
                return Err(Error::invalid("cochain does not vanish on the subcomplex"));
            }
        }
        let mut out = Vec::new();
        for (f, piece) in self.pieces.iter().enumerate() {
            let x: Vec<u64> = self.support.iter().map(|&c| cochain[c][f]).collect();
            out.extend(
                piece
                    .class_of(&x)
                    .ok_or_else(|| Error::invalid("cochain is not a cocycle"))?,
            );
        }
        Ok(out)
    }

    /// A cocycle representing the given coordinates.
    pub fn representative(&self, coords: &[u64]) -> Cochain {
        let mut out = vec![self.coefficients.identity(); self.ambient_cells];
        let mut rest = coords;
        for (f, piece) in self.pieces.iter().enumerate() {
            let k = piece.nontrivial().count();
            let (mine, tail) = rest.split_at(k);
            rest = tail;
            for (&c, x) in self.support.iter().zip(piece.representative(mine)) {
                out[c][f] = x;
            }
        }
        out
    }

    /// Representatives of the coordinate generators.
    pub fn generators(&self) -> Vec<Cochain> {
        let n = self.coordinate_orders().len();
        (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                self.representative(&e)
            })
            .collect()
    }

    /// All classes as coordinate tuples, lexicographic.
    pub fn classes(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let orders = self.coordinate_orders();
        let total: u64 = orders.iter().product();
        (0..total).map(move |mut i| {
            let mut c = vec![0; orders.len()];
            for (slot, &d) in c.iter_mut().zip(&orders).rev() {
                *slot = i % d;
                i /= d;
            }
            c
        })
    }
}

fn compute(
    c: &ChainComplex,
    a: &FiniteAbelianGroup,
    q: usize,
    support: Vec<usize>,
    ambient_cells: usize,
) -> CohomologyGroup {
    let delta = c.coboundary(q);
    let delta_prev = if q == 0 {
        IntMatrix::zeros(c.cells(0), 0)
    } else {
        c.coboundary(q - 1)
    };
    let pieces: Vec<CyclicPiece> = a
        .invariant_factors()
        .iter()
        .map(|&n| CyclicPiece::compute(&delta, &delta_prev, n))
        .collect();
    let orders: Vec<u64> = pieces
        .iter()
        .flat_map(|p| p.nontrivial().map(|(_, d)| d))
        .collect();
    let group = FiniteAbelianGroup::from_cyclic_orders(&orders).expect("orders are positive");
    CohomologyGroup {
        degree: q,
        coefficients: a.clone(),
        group,
        pieces,
        support,
        ambient_cells,
    }
}

/// `H^q(c; A)`. Degrees above the top dimension give the trivial group.
pub fn cohomology(c: &ChainComplex, a: &FiniteAbelianGroup, q: usize) -> CohomologyGroup {
    let n = c.cells(q);
    compute(c, a, q, (0..n).collect(), n)
}

/// `H^q(w, sub; A)`: cohomology of the cochains on `w` vanishing on `sub`.
pub fn relative_cohomology(
    w: &ChainComplex,
    sub: &SubcomplexMap,
    a: &FiniteAbelianGroup,
    q: usize,
) -> Result<CohomologyGroup> {
    if sub.target() != w {
        return Err(Error::invalid("the subcomplex is not included in this complex"));
    }
    let keep = sub.complement();
    let quotient = w.restrict_to(&keep);
    let support = keep.get(q).cloned().unwrap_or_default();
    Ok(compute(&quotient, a, q, support, w.cells(q)))
}

/// Pulls a cochain on the target back to the source of an inclusion.
pub fn restrict(sub: &SubcomplexMap, q: usize, cochain: &[Element]) -> Cochain {
    sub.cell_map(q).iter().map(|&t| cochain[t].clone()).collect()
}

/// `δφ` for a cochain `φ` of degree `q`.
pub fn apply_coboundary(c: &ChainComplex, a: &FiniteAbelianGroup, q: usize, cochain: &[Element]) -> Cochain {
    let d = c.boundary(q + 1);
    (0..c.cells(q + 1))
        .map(|s| {
            let mut acc = a.identity();
            for (t, v) in cochain.iter().enumerate() {
                let x = d.get(t, s);
                if !x.is_zero() {
                    let k = x.to_i64().expect("boundary coefficient fits in i64");
                    acc = a.add(&acc, &a.scale(v, k));
                }
            }
            acc
        })
        .collect()
}

/// Induced map on cohomology, as a matrix over coordinates: column `j` is
/// the image of the `j`-th source generator.
#[derive(Clone, Debug)]
pub struct CohomologyMap {
    pub source: CohomologyGroup,
    pub target: CohomologyGroup,
    pub matrix: Vec<Vec<u64>>,
}

impl CohomologyMap {
    pub fn apply(&self, coords: &[u64]) -> Vec<u64> {
        let orders = self.target.coordinate_orders();
        orders
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let s: u128 = self.matrix[i]
                    .iter()
                    .zip(coords)
                    .map(|(&a, &b)| a as u128 * b as u128)
                    .sum();
                (s % d as u128) as u64
            })
            .collect()
    }
}

/// `H^q(w; A) → H^q(sub; A)` induced by the inclusion.
pub fn restriction_map(
    w: &ChainComplex,
    sub: &SubcomplexMap,
    a: &FiniteAbelianGroup,
    q: usize,
) -> Result<CohomologyMap> {
    if sub.target() != w {
        return Err(Error::invalid("the subcomplex is not included in this complex"));
    }
    let source = cohomology(w, a, q);
    let target = cohomology(sub.source(), a, q);
    let images: Vec<Vec<u64>> = source
        .generators()
        .iter()
        .map(|g| target.class_of(&restrict(sub, q, g)))
        .collect::<Result<_>>()?;
    let rows = target.coordinate_orders().len();
    let matrix = (0..rows)
        .map(|i| images.iter().map(|col| col[i]).collect())
        .collect();
    Ok(CohomologyMap {
        source,
        target,
        matrix,
    })
}
