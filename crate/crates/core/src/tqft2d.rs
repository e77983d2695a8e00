//! The two-dimensional finite gauge theory with abelian gauge group `G`,
//! as a functor on the bordisms cylinder, pants, co-pants, cap, cup and
//! closed surfaces.
//!
//! The state space of `k` circles has basis `H¹(⊔ₖS¹; G) = Gᵏ`, ordered
//! lexicographically. A bordism `W: ∂_in → ∂_out` acts by
//!
//! ```text
//! Z(W)[out, in] = c(W) · #{A ∈ H¹(W;G) : A|∂_in = in, A|∂_out = out}
//! c(W)          = |H⁰(∂_out W; G)| / |H⁰(W; G)|
//! ```
//!
//! which is the groupoid cardinality of the fibre of the restriction map
//! in this basis. With this constant the cylinder is the identity, gluing
//! is composition and a closed genus-`g` surface evaluates to
//! `|G|^{2g−1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::algebra::{rational_string, Element, FiniteAbelianGroup};
use crate::complexes::{circle, cohomology, cylinder, disk, pants, restrict, surface, torus, ChainComplex, Space};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::pathintegral::em_partition;

/// Supported bordism shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `S¹ → S¹`
    Cylinder,
    /// `S¹ ⊔ S¹ → S¹`
    Pants,
    /// `S¹ → S¹ ⊔ S¹`
    CoPants,
    /// `∅ → S¹`
    Cap,
    /// `S¹ → ∅`
    Cup,
    /// Closed orientable surface of the given genus, `∅ → ∅`.
    Closed(usize),
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "cylinder" | "identity" => Shape::Cylinder,
            "pants" => Shape::Pants,
            "copants" | "co-pants" => Shape::CoPants,
            "cap" => Shape::Cap,
            "cup" => Shape::Cup,
            "sphere" => Shape::Closed(0),
            "torus" => Shape::Closed(1),
            _ => match t.strip_prefix("surface:").map(str::parse::<usize>) {
                Some(Ok(g)) => Shape::Closed(g),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "bordism shape {s:?} (expected cylinder, pants, copants, cap, cup, sphere, torus, surface:g)"
                    )))
                }
            },
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Cylinder => write!(f, "cylinder"),
            Shape::Pants => write!(f, "pants"),
            Shape::CoPants => write!(f, "copants"),
            Shape::Cap => write!(f, "cap"),
            Shape::Cup => write!(f, "cup"),
            Shape::Closed(g) => write!(f, "surface:{g}"),
        }
    }
}

/// A surface with its boundary circles split into incoming and outgoing.
#[derive(Clone, Debug)]
pub struct Bordism {
    space: Space,
    incoming: Vec<usize>,
    outgoing: Vec<usize>,
}

impl Bordism {
    /// `incoming`/`outgoing` index `space.boundary`; every boundary piece
    /// used must be the one-vertex circle.
    pub fn new(space: Space, incoming: Vec<usize>, outgoing: Vec<usize>) -> Result<Self> {
        let c = circle();
        for &i in incoming.iter().chain(&outgoing) {
            let piece = space
                .boundary
                .get(i)
                .ok_or_else(|| Error::invalid(format!("no boundary piece {i}")))?;
            if piece.source() != &c {
                return Err(Error::Unsupported("boundary pieces must be circles".into()));
            }
        }
        Ok(Self {
            space,
            incoming,
            outgoing,
        })
    }

    pub fn from_shape(shape: Shape) -> Result<Self> {
        let b = |space: Space, i: Vec<usize>, o: Vec<usize>| Self::new(space, i, o);
        match shape {
            Shape::Cylinder => b(cylinder(), vec![0], vec![1]),
            Shape::Pants => b(pants(), vec![0, 1], vec![2]),
            Shape::CoPants => b(pants(), vec![2], vec![0, 1]),
            Shape::Cap => b(disk(), vec![], vec![0]),
            Shape::Cup => b(disk(), vec![0], vec![]),
            Shape::Closed(g) => {
                let c = if g == 1 { torus(2)? } else { surface(g)? };
                b(Space::closed(c), vec![], vec![])
            }
        }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.space.complex
    }

    pub fn incoming(&self) -> usize {
        self.incoming.len()
    }

    pub fn outgoing(&self) -> usize {
        self.outgoing.len()
    }
}

/// `Z(⊔ₖ S¹) = ℂ[Gᵏ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    group: FiniteAbelianGroup,
    circles: usize,
}

impl StateSpace {
    pub fn new(group: &FiniteAbelianGroup, circles: usize) -> Self {
        Self {
            group: group.clone(),
            circles,
        }
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn dim(&self) -> usize {
        (self.group.order() as usize).pow(self.circles as u32)
    }

    /// Basis labels: one group element per circle, lexicographic.
    pub fn basis(&self) -> Vec<Vec<Element>> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn label(&self, mut index: usize) -> Vec<Element> {
        let n = self.group.order() as usize;
        let mut out = vec![self.group.identity(); self.circles];
        for slot in out.iter_mut().rev() {
            *slot = self.group.element(index % n);
            index /= n;
        }
        out
    }

    pub fn index_of(&self, label: &[Element]) -> usize {
        let n = self.group.order() as usize;
        label.iter().fold(0, |acc, e| acc * n + self.group.index_of(e))
    }
}

/// Exact linear map `Z(∂_in) → Z(∂_out)`; rows are outgoing basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BordismMatrix {
    group: FiniteAbelianGroup,
    incoming: usize,
    outgoing: usize,
    entries: Vec<Vec<BigRational>>,
    provenance: Option<Provenance>,
}

/// How the entries of a directly evaluated bordism arose:
/// `entries = constant · counts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub constant: BigRational,
    pub counts: Vec<Vec<u64>>,
    pub h1_order: u64,
    pub h0_order: u64,
}

impl BordismMatrix {
    pub fn identity(group: &FiniteAbelianGroup, circles: usize) -> Self {
        let d = StateSpace::new(group, circles).dim();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Self {
            group: group.clone(),
            incoming: circles,
            outgoing: circles,
            entries,
            provenance: None,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn source(&self) -> StateSpace {
        StateSpace::new(&self.group, self.incoming)
    }

    pub fn target(&self) -> StateSpace {
        StateSpace::new(&self.group, self.outgoing)
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn entry(&self, out: usize, inp: usize) -> &BigRational {
        &self.entries[out][inp]
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// `self ∘ before`: apply `before`, then `self`.
    pub fn compose(&self, before: &BordismMatrix) -> Result<BordismMatrix> {
        if self.group != before.group || self.incoming != before.outgoing {
            return Err(Error::invalid(format!(
                "cannot compose: {} outgoing circles feed {} incoming circles",
                before.outgoing, self.incoming
            )));
        }
        let (rows, mid, cols) = (self.entries.len(), before.entries.len(), before.source().dim());
        let entries = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        (0..mid)
                            .map(|k| &self.entries[i][k] * &before.entries[k][j])
                            .fold(BigRational::zero(), |a, b| a + b)
                    })
                    .collect()
            })
            .collect();
        Ok(BordismMatrix {
            group: self.group.clone(),
            incoming: before.incoming,
            outgoing: self.outgoing,
            entries,
            provenance: None,
        })
    }

    /// Disjoint union; circles of `self` come first (Kronecker product with
    /// `self` as the major factor).
    pub fn tensor(&self, other: &BordismMatrix) -> Result<BordismMatrix> {
        if self.group != other.group {
            return Err(Error::invalid("tensor of bordisms over different groups"));
        }
        let (r2, c2) = (other.entries.len(), other.source().dim());
        let (r1, c1) = (self.entries.len(), self.source().dim());
        let entries = (0..r1 * r2)
            .map(|i| {
                (0..c1 * c2)
                    .map(|j| &self.entries[i / r2][j / c2] * &other.entries[i % r2][j % c2])
                    .collect()
            })
            .collect();
        Ok(BordismMatrix {
            group: self.group.clone(),
            incoming: self.incoming + other.incoming,
            outgoing: self.outgoing + other.outgoing,
            entries,
            provenance: None,
        })
    }

    pub fn trace(&self) -> Result<BigRational> {
        if self.incoming != self.outgoing {
            return Err(Error::invalid("trace of a non-square bordism"));
        }
        Ok((0..self.entries.len())
            .map(|i| self.entries[i][i].clone())
            .fold(BigRational::zero(), |a, b| a + b))
    }

    /// The value of a closed bordism.
    pub fn scalar(&self) -> Result<BigRational> {
        if self.incoming != 0 || self.outgoing != 0 {
            return Err(Error::invalid("only closed bordisms evaluate to a scalar"));
        }
        Ok(self.entries[0][0].clone())
    }
}

impl Serialize for BordismMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BordismMatrix", 8)?;
        st.serialize_field("group", &self.group.to_string())?;
        st.serialize_field("in_circles", &self.incoming)?;
        st.serialize_field("out_circles", &self.outgoing)?;
        st.serialize_field("basis_in", &self.source().basis())?;
        st.serialize_field("basis_out", &self.target().basis())?;
        let entries: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(rational_string).collect())
            .collect();
        st.serialize_field("entries", &entries)?;
        st.serialize_field("constant", &self.provenance.as_ref().map(|p| rational_string(&p.constant)))?;
        st.serialize_field("counts", &self.provenance.as_ref().map(|p| &p.counts))?;
        st.end()
    }
}

/// Evaluates a bordism directly from the cohomology of the surface.
pub fn bordism_matrix(w: &Bordism, g: &FiniteAbelianGroup) -> Result<BordismMatrix> {
    let c = w.complex();
    let h1 = cohomology(c, g, 1);
    Limits::default().check(h1.order() as u128)?;
    let h0 = cohomology(c, g, 0).order();
    let (sin, sout) = (StateSpace::new(g, w.incoming()), StateSpace::new(g, w.outgoing()));
    let mut counts = vec![vec![0u64; sin.dim()]; sout.dim()];
    let value_on = |piece: usize, rep: &[Element]| -> Element {
        restrict(&w.space.boundary[piece], 1, rep).remove(0)
    };
    for class in h1.classes() {
        let rep = h1.representative(&class);
        let ins: Vec<Element> = w.incoming.iter().map(|&p| value_on(p, &rep)).collect();
        let outs: Vec<Element> = w.outgoing.iter().map(|&p| value_on(p, &rep)).collect();
        counts[sout.index_of(&outs)][sin.index_of(&ins)] += 1;
    }
    let constant = BigRational::new(
        BigInt::from(g.order()).pow(w.outgoing() as u32),
        BigInt::from(h0),
    );
    let entries = counts
        .iter()
        .map(|r| r.iter().map(|&n| &constant * BigInt::from(n)).collect())
        .collect();
    Ok(BordismMatrix {
        group: g.clone(),
        incoming: w.incoming(),
        outgoing: w.outgoing(),
        entries,
        provenance: Some(Provenance {
            constant,
            counts,
            h1_order: h1.order(),
            h0_order: h0,
        }),
    })
}

pub fn shape_matrix(shape: Shape, g: &FiniteAbelianGroup) -> Result<BordismMatrix> {
    bordism_matrix(&Bordism::from_shape(shape)?, g)
}

/// Closed genus-`g` surface glued from elementary pieces:
/// `cup ∘ (pants ∘ copants)^g ∘ cap`.
pub fn handle_composite(genus: usize, g: &FiniteAbelianGroup) -> Result<BigRational> {
    let handle = shape_matrix(Shape::Pants, g)?.compose(&shape_matrix(Shape::CoPants, g)?)?;
    let mut m = shape_matrix(Shape::Cap, g)?;
    for _ in 0..genus {
        m = handle.compose(&m)?;
    }
    shape_matrix(Shape::Cup, g)?.compose(&m)?.scalar()
}

/// `Tr Z(M × I) = |H¹(M;G)| = Z(M × S¹)` for `M` a union of circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub circles: usize,
    pub trace: BigRational,
    pub h1_order: u64,
    pub closed_value: BigRational,
    pub pass: bool,
}

impl Serialize for TraceCheck {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TraceCheck", 5)?;
        st.serialize_field("circles", &self.circles)?;
        st.serialize_field("trace", &rational_string(&self.trace))?;
        st.serialize_field("h1_order", &self.h1_order)?;
        st.serialize_field("closed_value", &rational_string(&self.closed_value))?;
        st.serialize_field("pass", &self.pass)?;
        st.end()
    }
}

pub fn trace_check(circles: usize, g: &FiniteAbelianGroup) -> Result<TraceCheck> {
    let cyl = shape_matrix(Shape::Cylinder, g)?;
    let mut m = BordismMatrix::identity(g, 0);
    let mut space = ChainComplex::empty();
    let mut closed = ChainComplex::empty();
    for _ in 0..circles {
        m = m.tensor(&cyl)?;
        space = ChainComplex::disjoint_union(&space, &circle());
        closed = ChainComplex::disjoint_union(&closed, &torus(2)?);
    }
    let trace = m.trace()?;
    let h1_order = cohomology(&space, g, 1).order();
    let closed_value = if circles == 0 {
        BigRational::one()
    } else {
        em_partition(&closed, g, 1)?
    };
    let pass = trace == BigRational::from_integer(BigInt::from(h1_order)) && trace == closed_value;
    Ok(TraceCheck {
        circles,
        trace,
        h1_order,
        closed_value,
        pass,
    })
}

/// State space, pants and co-pants of the theory, with the checks that tie
/// them together.
#[derive(Clone, Debug)]
pub struct ProblemOneReport {
    pub group: FiniteAbelianGroup,
    pub circle_dim: usize,
    pub cylinder: BordismMatrix,
    pub pants: BordismMatrix,
    pub copants: BordismMatrix,
    pub cylinder_is_identity: bool,
    pub trace: TraceCheck,
    pub torus_direct: BigRational,
    pub torus_glued: BigRational,
}

impl Serialize for ProblemOneReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProblemOneReport", 9)?;
        st.serialize_field("group", &self.group.to_string())?;
        st.serialize_field("circle_dim", &self.circle_dim)?;
        st.serialize_field("cylinder", &self.cylinder)?;
        st.serialize_field("pants", &self.pants)?;
        st.serialize_field("copants", &self.copants)?;
        st.serialize_field("cylinder_is_identity", &self.cylinder_is_identity)?;
        st.serialize_field("trace", &self.trace)?;
        st.serialize_field("torus_direct", &rational_string(&self.torus_direct))?;
        st.serialize_field("torus_glued", &rational_string(&self.torus_glued))?;
        st.end()
    }
}

pub fn solve_problem_one(g: &FiniteAbelianGroup) -> Result<ProblemOneReport> {
    let cylinder = shape_matrix(Shape::Cylinder, g)?;
    let mut bare = cylinder.clone();
    bare.provenance = None;
    Ok(ProblemOneReport {
        group: g.clone(),
        circle_dim: StateSpace::new(g, 1).dim(),
        cylinder_is_identity: bare == BordismMatrix::identity(g, 1),
        pants: shape_matrix(Shape::Pants, g)?,
        copants: shape_matrix(Shape::CoPants, g)?,
        trace: trace_check(1, g)?,
        torus_direct: shape_matrix(Shape::Closed(1), g)?.scalar()?,
        torus_glued: handle_composite(1, g)?,
        cylinder,
    })
}
