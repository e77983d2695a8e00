use serde::{Deserialize, Serialize};

use super::abelian::{Element, FiniteAbelianGroup};
use super::phase::Phase;
use crate::error::{Error, Result};

/// Quadratic refinement `q: A′ → ℚ/ℤ`.
///
/// Specified by `q(gᵢ)` on the canonical generators and the cross terms
/// `b(gᵢ, gⱼ)` for `i < j` (row-major over the upper triangle). The full
/// table `q(Σ aᵢgᵢ) = Σ aᵢ² q(gᵢ) + Σ_{i<j} aᵢaⱼ b(gᵢ,gⱼ)` is expanded and
/// checked: `q(n·a) = n²·q(a)` and bi-additivity of the polarisation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct QuadraticForm {
    domain: FiniteAbelianGroup,
    gen_values: Vec<Phase>,
    cross_terms: Vec<Phase>,
    values: Vec<Phase>,
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    group: FiniteAbelianGroup,
    gen_values: Vec<Phase>,
    #[serde(default)]
    cross_terms: Vec<Phase>,
}

impl TryFrom<RawForm> for QuadraticForm {
    type Error = Error;
    fn try_from(r: RawForm) -> Result<Self> {
        QuadraticForm::new(&r.group, r.gen_values, r.cross_terms)
    }
}

impl From<QuadraticForm> for RawForm {
    fn from(q: QuadraticForm) -> Self {
        RawForm {
            group: q.domain,
            gen_values: q.gen_values,
            cross_terms: q.cross_terms,
        }
    }
}

impl QuadraticForm {
    pub fn new(
        domain: &FiniteAbelianGroup,
        gen_values: Vec<Phase>,
        cross_terms: Vec<Phase>,
    ) -> Result<Self> {
        let k = domain.rank();
        if gen_values.len() != k {
            return Err(Error::invalid(format!(
                "quadratic form on {domain} needs {k} generator values, got {}",
                gen_values.len()
            )));
        }
        if cross_terms.len() != k * k.saturating_sub(1) / 2 {
            return Err(Error::invalid(format!(
                "quadratic form on {domain} needs {} cross terms, got {}",
                k * k.saturating_sub(1) / 2,
                cross_terms.len()
            )));
        }
        let cross = |i: usize, j: usize| cross_terms[i * k - i * (i + 1) / 2 + (j - i - 1)];
        let values = domain
            .elements()
            .map(|a| {
                let mut v = Phase::ZERO;
                for i in 0..k {
                    v += gen_values[i].times((a[i] * a[i]) as i64);
                    for j in i + 1..k {
                        v += cross(i, j).times((a[i] * a[j]) as i64);
                    }
                }
                v
            })
            .collect();
        let q = Self {
            domain: domain.clone(),
            gen_values,
            cross_terms,
            values,
        };
        q.validate()?;
        Ok(q)
    }

    /// The zero form.
    pub fn zero(domain: &FiniteAbelianGroup) -> Self {
        let k = domain.rank();
        Self::new(
            domain,
            vec![Phase::ZERO; k],
            vec![Phase::ZERO; k * k.saturating_sub(1) / 2],
        )
        .expect("zero form is valid")
    }

    fn validate(&self) -> Result<()> {
        let a = &self.domain;
        if !self.values[0].is_zero() {
            return Err(Error::invalid("q(0) must vanish"));
        }
        let e = a.exponent() as i64;
        for x in a.elements() {
            let qx = self.value(&x);
            for n in (-1..=e + 1).filter(|&n| n != 0) {
                if self.value(&a.scale(&x, n)) != qx.times(n * n) {
                    return Err(Error::invalid(format!(
                        "q(n·a) ≠ n²·q(a) at a = {x:?}, n = {n}: the generator values are not compatible with the group"
                    )));
                }
            }
        }
        let elems: Vec<Element> = a.elements().collect();
        for x in &elems {
            for y in &elems {
                let bxy = self.b(x, y);
                if bxy != self.b(y, x) {
                    return Err(Error::invalid("polarisation is not symmetric"));
                }
                for z in &elems {
                    if self.b(&a.add(x, y), z) != self.b(x, z) + self.b(y, z) {
                        return Err(Error::invalid(format!(
                            "polarisation is not bi-additive at ({x:?}, {y:?}, {z:?})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &FiniteAbelianGroup {
        &self.domain
    }

    pub fn gen_values(&self) -> &[Phase] {
        &self.gen_values
    }

    pub fn cross_terms(&self) -> &[Phase] {
        &self.cross_terms
    }

    pub fn value(&self, a: &[u64]) -> Phase {
        self.values[self.domain.index_of(a)]
    }

    /// Full value table in lexicographic element order.
    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    /// `b(x, y) = q(x + y) − q(x) − q(y)`
    pub fn b(&self, x: &[u64], y: &[u64]) -> Phase {
        self.value(&self.domain.add(x, y)) - self.value(x) - self.value(y)
    }

    pub fn bihomomorphism(&self) -> Bihomomorphism {
        bihomomorphism(self)
    }
}

/// Tabulated bihomomorphism `b: A′ × A′ → ℚ/ℤ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bihomomorphism {
    domain: FiniteAbelianGroup,
    table: Vec<Vec<Phase>>,
}

impl Bihomomorphism {
    pub fn domain(&self) -> &FiniteAbelianGroup {
        &self.domain
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> Phase {
        self.table[self.domain.index_of(x)][self.domain.index_of(y)]
    }

    pub fn table(&self) -> &[Vec<Phase>] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(Phase::is_zero)
    }
}

/// Polarisation of a (validated) quadratic form.
pub fn bihomomorphism(q: &QuadraticForm) -> Bihomomorphism {
    let elems: Vec<Element> = q.domain.elements().collect();
    let table = elems
        .iter()
        .map(|x| elems.iter().map(|y| q.b(x, y)).collect())
        .collect();
    Bihomomorphism {
        domain: q.domain.clone(),
        table,
    }
}
