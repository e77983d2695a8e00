use std::str::FromStr;

use crate::algebra::IntMatrix;
use crate::error::{Error, Result};

use super::chain::{ChainComplex, SubcomplexMap};

/// A complex together with named boundary pieces (possibly none).
///
/// For the bordism presets (`interval`, `cylinder`, `pants`, `disk`) the
/// boundary pieces are the individual boundary components in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub complex: ChainComplex,
    pub boundary: Vec<SubcomplexMap>,
}

impl Space {
    pub fn closed(complex: ChainComplex) -> Self {
        Self {
            complex,
            boundary: vec![],
        }
    }

    /// Product, with boundary pieces `∂a × b` followed by `a × ∂b`.
    pub fn product(a: &Space, b: &Space) -> Space {
        let complex = ChainComplex::product(&a.complex, &b.complex);
        let boundary = a
            .boundary
            .iter()
            .map(|s| SubcomplexMap::product_right(s, &b.complex))
            .chain(b.boundary.iter().map(|s| SubcomplexMap::product_left(&a.complex, s)))
            .collect();
        Space { complex, boundary }
    }

    pub fn disjoint_union(a: &Space, b: &Space) -> Space {
        let complex = ChainComplex::disjoint_union(&a.complex, &b.complex);
        let boundary = a
            .boundary
            .iter()
            .map(|s| s.into_union(&b.complex, true))
            .chain(b.boundary.iter().map(|s| s.into_union(&a.complex, false)))
            .collect();
        Space { complex, boundary }
    }
}

fn m(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(rows, cols).expect("preset matrix is well formed")
}

fn cx(cells: Vec<usize>, boundaries: Vec<IntMatrix>) -> ChainComplex {
    ChainComplex::new(cells, boundaries).expect("preset is a chain complex")
}

pub fn point() -> ChainComplex {
    ChainComplex::point()
}

/// One vertex, one loop.
pub fn circle() -> ChainComplex {
    cx(vec![1, 1], vec![IntMatrix::zeros(1, 1)])
}

/// `Sⁿ` as one 0-cell and one n-cell (`n ≤ 5`); `S⁰` is two points.
pub fn sphere(n: usize) -> Result<ChainComplex> {
    if n > 5 {
        return Err(Error::invalid(format!("sphere:{n} is out of range (0..=5)")));
    }
    if n == 0 {
        return Ok(cx(vec![2], vec![]));
    }
    let mut cells = vec![0; n + 1];
    cells[0] = 1;
    cells[n] = 1;
    let boundaries = (1..=n).map(|k| IntMatrix::zeros(cells[k - 1], cells[k])).collect();
    Ok(cx(cells, boundaries))
}

/// `Tⁿ = (S¹)ⁿ` (`1 ≤ n ≤ 5`).
pub fn torus(n: usize) -> Result<ChainComplex> {
    if !(1..=5).contains(&n) {
        return Err(Error::invalid(format!("torus:{n} is out of range (1..=5)")));
    }
    let c = circle();
    Ok((1..n).fold(c.clone(), |acc, _| ChainComplex::product(&acc, &c)))
}

/// Closed orientable surface of genus `g ≤ 4`: one vertex, `2g` loops, one
/// face attached along the product of commutators, so `∂₂ = 0`.
pub fn surface(g: usize) -> Result<ChainComplex> {
    if g > 4 {
        return Err(Error::invalid(format!("surface:{g} is out of range (0..=4)")));
    }
    if g == 0 {
        return sphere(2);
    }
    Ok(cx(
        vec![1, 2 * g, 1],
        vec![IntMatrix::zeros(1, 2 * g), IntMatrix::zeros(2 * g, 1)],
    ))
}

/// `ℝPⁿ` (`1 ≤ n ≤ 4`), one cell per dimension, `∂_k = 1 + (−1)^k`.
pub fn rp(n: usize) -> Result<ChainComplex> {
    if !(1..=4).contains(&n) {
        return Err(Error::invalid(format!("rp:{n} is out of range (1..=4)")));
    }
    let boundaries = (1..=n)
        .map(|k| m(&[vec![if k % 2 == 0 { 2 } else { 0 }]], 1))
        .collect();
    Ok(cx(vec![1; n + 1], boundaries))
}

/// Klein bottle: word `a b a⁻¹ b`, so `∂F = 2b`.
pub fn klein() -> ChainComplex {
    cx(
        vec![1, 2, 1],
        vec![IntMatrix::zeros(1, 2), m(&[vec![0], vec![2]], 1)],
    )
}

/// Interval `v₀ --e--> v₁`; boundary pieces `[v₀, v₁]`.
pub fn interval() -> Space {
    let complex = cx(vec![2, 1], vec![m(&[vec![-1], vec![1]], 1)]);
    let end = |v: usize| SubcomplexMap::new(point(), complex.clone(), vec![vec![v]]).unwrap();
    Space {
        boundary: vec![end(0), end(1)],
        complex,
    }
}

/// `S¹ × I`; boundary pieces are the two end circles.
pub fn cylinder() -> Space {
    Space::product(&Space::closed(circle()), &interval())
}

/// Disk: vertex `p`, loop `a`, face with `∂F = a`. Boundary piece: the loop.
pub fn disk() -> Space {
    let complex = cx(vec![1, 1, 1], vec![IntMatrix::zeros(1, 1), m(&[vec![1]], 1)]);
    let rim = SubcomplexMap::new(circle(), complex.clone(), vec![vec![0], vec![0]]).unwrap();
    Space {
        complex,
        boundary: vec![rim],
    }
}

/// Pair of pants.
///
/// Vertices `p₁ p₂ p₃`; loops `a₁ a₂ a₃` based at them; arcs `t₁: p₃→p₁`,
/// `t₂: p₃→p₂`; one face attached along `a₃ t₁ a₁⁻¹ t₁⁻¹ t₂ a₂⁻¹ t₂⁻¹`, so
/// `∂F = a₃ − a₁ − a₂`. Boundary pieces are the circles `a₁, a₂, a₃`; on
/// cohomology the restriction to `a₃` is the sum of the other two.
pub fn pants() -> Space {
    // edge order: a1 a2 a3 t1 t2
    let d1 = m(
        &[
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 1],
            vec![0, 0, 0, -1, -1],
        ],
        5,
    );
    let d2 = m(&[vec![-1], vec![-1], vec![1], vec![0], vec![0]], 1);
    let complex = cx(vec![3, 5, 1], vec![d1, d2]);
    let rim = |i: usize| SubcomplexMap::new(circle(), complex.clone(), vec![vec![i], vec![i]]).unwrap();
    Space {
        boundary: vec![rim(0), rim(1), rim(2)],
        complex,
    }
}

fn need(param: Option<usize>, name: &str) -> Result<usize> {
    param.ok_or_else(|| Error::invalid(format!("{name} needs a parameter, e.g. {name}:2")))
}

/// Looks up a preset by name. Parametrised families take `param`.
pub fn preset(name: &str, param: Option<usize>) -> Result<Space> {
    let closed = |c: Result<ChainComplex>| c.map(Space::closed);
    let no_param = |s: Space| match param {
        None => Ok(s),
        Some(_) => Err(Error::invalid(format!("{name} takes no parameter"))),
    };
    match name.to_ascii_lowercase().as_str() {
        "sphere" => closed(sphere(need(param, "sphere")?)),
        "torus" => closed(torus(need(param, "torus")?)),
        "surface" => closed(surface(need(param, "surface")?)),
        "rp" => closed(rp(need(param, "rp")?)),
        "klein" => no_param(Space::closed(klein())),
        "circle" => no_param(Space::closed(circle())),
        "point" => no_param(Space::closed(point())),
        "interval" => no_param(interval()),
        "cylinder" => no_param(cylinder()),
        "disk" | "cap" => no_param(disk()),
        "pants" => no_param(pants()),
        _ => Err(Error::invalid(format!(
            "unknown manifold {name:?} (expected sphere, torus, surface, rp, klein, circle, point, interval, cylinder, disk, pants)"
        ))),
    }
}

/// Manifold expression: presets `name` or `name:k`, combined with `*`
/// (product) and `+` (disjoint union); `*` binds tighter.
///
/// ```
/// use finsym_core::complexes::ManifoldExpr;
/// let m: ManifoldExpr = "sphere:2*sphere:2".parse().unwrap();
/// assert_eq!(m.space().complex.cell_counts(), &[1, 0, 2, 0, 1]);
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldExpr {
    text: String,
    space: Space,
}

impl ManifoldExpr {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.space.complex
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

impl FromStr for ManifoldExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut union: Option<Space> = None;
        for summand in s.split('+') {
            let mut prod: Option<Space> = None;
            for factor in summand.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::invalid(format!("empty factor in manifold {s:?}")));
                }
                let (name, param) = match factor.split_once(':') {
                    Some((n, p)) => {
                        let p = p.trim().parse::<usize>().map_err(|_| {
                            Error::invalid(format!("bad parameter in {factor:?}"))
                        })?;
                        (n.trim(), Some(p))
                    }
                    None => (factor, None),
                };
                let sp = preset(name, param)?;
                prod = Some(match prod {
                    None => sp,
                    Some(acc) => Space::product(&acc, &sp),
                });
            }
            let sp = prod.expect("split yields at least one factor");
            union = Some(match union {
                None => sp,
                Some(acc) => Space::disjoint_union(&acc, &sp),
            });
        }
        Ok(Self {
            text: s.trim().to_string(),
            space: union.expect("split yields at least one summand"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts() {
        assert_eq!(circle().cell_counts(), &[1, 1]);
        assert_eq!(surface(2).unwrap().cell_counts(), &[1, 4, 1]);
        assert_eq!(torus(3).unwrap().cell_counts(), &[1, 3, 3, 1]);
        assert_eq!(sphere(3).unwrap().cell_counts(), &[1, 0, 0, 1]);
        assert_eq!(sphere(0).unwrap().cell_counts(), &[2]);
        assert_eq!(cylinder().complex.cell_counts(), &[2, 3, 1]);
        assert_eq!(pants().complex.euler_characteristic(), -1);
        assert_eq!(disk().complex.euler_characteristic(), 1);
    }

    #[test]
    fn rp2_matrices() {
        let r = rp(2).unwrap();
        assert_eq!(r.boundary(1).get_i64(0, 0), 0);
        assert_eq!(r.boundary(2).get_i64(0, 0), 2);
    }

    #[test]
    fn ranges() {
        assert!(sphere(6).is_err());
        assert!(torus(0).is_err() && torus(6).is_err());
        assert!(surface(5).is_err());
        assert!(rp(5).is_err() && rp(0).is_err());
        assert!(preset("moebius", None).is_err());
        assert!(preset("torus", None).is_err());
        assert!(preset("klein", Some(1)).is_err());
    }

    #[test]
    fn expressions() {
        let e: ManifoldExpr = "torus:2 * circle".parse().unwrap();
        assert_eq!(e.complex().cell_counts(), &[1, 3, 3, 1]);
        let e: ManifoldExpr = "circle+circle".parse().unwrap();
        assert_eq!(e.complex().cell_counts(), &[2, 2]);
        let e: ManifoldExpr = "pants+cylinder".parse().unwrap();
        assert_eq!(e.space().boundary.len(), 5);
        assert!("torus:x".parse::<ManifoldExpr>().is_err());
        assert!("torus:2**circle".parse::<ManifoldExpr>().is_err());
    }
}
