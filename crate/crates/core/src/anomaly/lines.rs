use serde::Serialize;

use crate::algebra::{Element, FiniteAbelianGroup, Phase, QuadraticForm};
use crate::error::{Error, Result};

/// An injective homomorphism `ι: A′ → A`, given by the images of the
/// canonical generators of `A′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupEmbedding {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    images: Vec<Element>,
}

impl SubgroupEmbedding {
    pub fn new(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::invalid(format!(
                "{source} has {} generators but {} images were given",
                source.rank(),
                images.len()
            )));
        }
        for (img, &n) in images.iter().zip(source.invariant_factors()) {
            if !target.contains(img) {
                return Err(Error::invalid(format!("{img:?} is not an element of {target}")));
            }
            if target.scale(img, n as i64) != target.identity() {
                return Err(Error::invalid(format!(
                    "image {img:?} has order not dividing {n}, so the map is not a homomorphism"
                )));
            }
        }
        let e = Self {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        let mut seen = std::collections::HashSet::new();
        if !source.elements().all(|x| seen.insert(e.apply(&x))) {
            return Err(Error::invalid(format!("the map {source} → {target} is not injective")));
        }
        Ok(e)
    }

    /// Aligns the invariant factors of `A′` with the last factors of `A`:
    /// the `j`-th generator goes to `(n/m)·gₖ` where `m | n`.
    pub fn standard(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Result<Self> {
        let (r, k) = (source.rank(), target.rank());
        let fail = || {
            Error::invalid(format!(
                "{source} has no standard embedding into {target}; give the generator images explicitly"
            ))
        };
        if r > k {
            return Err(fail());
        }
        let mut images = Vec::with_capacity(r);
        for (j, &m) in source.invariant_factors().iter().enumerate() {
            let slot = k - r + j;
            let n = target.invariant_factors()[slot];
            if !n.is_multiple_of(m) {
                return Err(fail());
            }
            let mut img = target.identity();
            img[slot] = n / m;
            images.push(img);
        }
        Self::new(source, target, images)
    }

    pub fn apply(&self, x: &[u64]) -> Element {
        self.images
            .iter()
            .zip(x)
            .fold(self.target.identity(), |acc, (img, &c)| {
                self.target.add(&acc, &self.target.scale(img, c as i64))
            })
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }
}

/// Set of allowed line labels `(m, e) ∈ A × A^∨`; `e` is stored by its
/// character exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineLattice {
    ambient: FiniteAbelianGroup,
    pairs: Vec<LinePair>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LinePair {
    pub m: Element,
    pub e: Element,
}

impl LineLattice {
    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn pairs(&self) -> &[LinePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, m: &[u64], e: &[u64]) -> bool {
        self.pairs
            .binary_search(&LinePair {
                m: m.to_vec(),
                e: e.to_vec(),
            })
            .is_ok()
    }

    /// Closed under addition in `A × A^∨` (and so a subgroup, being finite
    /// and nonempty).
    pub fn is_subgroup(&self) -> bool {
        let a = &self.ambient;
        !self.pairs.is_empty()
            && self.pairs.iter().all(|x| {
                self.pairs
                    .iter()
                    .all(|y| self.contains(&a.add(&x.m, &y.m), &a.add(&x.e, &y.e)))
            })
    }
}

/// Lines compatible with the boundary condition `(A′, q)`:
/// `m ∈ ι(A′)` and `e(ι(g′)) = −b(m, g′)` for every generator `g′` of
/// `A′`, with `e` otherwise free. The result has exactly `|A|` elements.
pub fn allowed_lines(
    a: &FiniteAbelianGroup,
    embedding: &SubgroupEmbedding,
    q: &QuadraticForm,
) -> Result<LineLattice> {
    if embedding.target() != a {
        return Err(Error::invalid("the embedding does not land in A"));
    }
    let ap = embedding.source();
    if q.domain() != ap {
        return Err(Error::invalid(format!(
            "the quadratic form is defined on {}, not on A′ = {ap}",
            q.domain()
        )));
    }
    let gens = ap.generators();
    let gen_images: Vec<Element> = gens.iter().map(|g| embedding.apply(g)).collect();
    let mut pairs = Vec::new();
    for mp in ap.elements() {
        let m = embedding.apply(&mp);
        let wanted: Vec<Phase> = gens.iter().map(|g| -q.b(&mp, g)).collect();
        for chi in a.characters() {
            if gen_images.iter().zip(&wanted).all(|(img, w)| chi.eval(img) == *w) {
                pairs.push(LinePair {
                    m: m.clone(),
                    e: chi.exponents().to_vec(),
                });
            }
        }
    }
    pairs.sort();
    let lattice = LineLattice {
        ambient: a.clone(),
        pairs,
    };
    debug_assert_eq!(lattice.len() as u64, a.order());
    Ok(lattice)
}
