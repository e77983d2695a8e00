use nalgebra::DMatrix;

use finsym_core::algebra::FiniteGroup;
use finsym_core::fusion::*;

const ALL_GROUPS: [&str; 11] = ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z8", "Z2xZ4", "D4"];
const ABELIAN: [&str; 8] = ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z2xZ4"];

fn g(name: &str) -> FiniteGroup {
    FiniteGroup::preset(name).unwrap()
}

fn fibonacci() -> FusionRing {
    FusionRing::from_json(
        r#"{"labels":["1","t"],"unit":0,"N":[[[1,0],[0,1]],[[0,1],[1,1]]],"dual":[0,1]}"#,
    )
    .unwrap()
}

fn rings() -> Vec<(String, FusionRing)> {
    let mut out: Vec<(String, FusionRing)> = ALL_GROUPS
        .iter()
        .map(|n| (format!("Z[{n}]"), group_ring(&g(n))))
        .collect();
    out.extend(ABELIAN.iter().map(|n| (format!("TY({n})"), tambara_yamagami(&g(n)).unwrap())));
    out.push(("Q8".into(), group_ring(&g("Q8"))));
    out.push(("Fib".into(), fibonacci()));
    out
}

/// Spectral radius of `N_i` as its largest singular value, from a
/// symmetric eigensolve of `N_i N_iᵀ`. Valid because every ring here has
/// normal fusion matrices (`N_iᵀ = N_{i*}`, and the ring is commutative or
/// `N_i` is a permutation matrix).
fn spectral_radius(r: &FusionRing, i: usize) -> f64 {
    let k = r.rank();
    let m = DMatrix::from_fn(k, k, |a, b| r.n(i, a, b) as f64);
    let gram = &m * m.transpose();
    nalgebra::SymmetricEigen::try_new(gram, 1e-15, 10_000)
        .expect("symmetric eigensolver converges")
        .eigenvalues
        .max()
        .sqrt()
}

#[test]
fn pf_dims_match_eigensolver() {
    for (name, r) in rings() {
        let dims = pf_dimensions(&r).unwrap();
        assert_eq!(dims[r.unit()].value, 1.0);
        for (i, d) in dims.iter().enumerate() {
            assert!((d.value - spectral_radius(&r, i)).abs() < 1e-9, "{name} {}", d.label);
            assert!(d.value >= 1.0 - 1e-12);
        }
    }
}

#[test]
fn pf_dims_are_characters() {
    for (name, r) in rings() {
        let d: Vec<f64> = pf_dimensions(&r).unwrap().iter().map(|x| x.value).collect();
        for i in 0..r.rank() {
            for j in 0..r.rank() {
                let rhs: f64 = (0..r.rank()).map(|k| r.n(i, j, k) as f64 * d[k]).sum();
                assert!((d[i] * d[j] - rhs).abs() < 1e-9, "{name}");
            }
        }
    }
}

#[test]
fn fusion_matrices_multiply_like_the_ring() {
    for (name, r) in rings() {
        let k = r.rank();
        let mat = |i: usize| DMatrix::from_fn(k, k, |a, b| r.n(i, a, b) as f64);
        for i in 0..k {
            for j in 0..k {
                // N_i N_j = Σ_m N_{ij}^m N_m  (left regular representation, transposed)
                let lhs = mat(j) * mat(i);
                let rhs = (0..k).fold(DMatrix::zeros(k, k), |acc, m| acc + mat(m) * r.n(i, j, m) as f64);
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }
}

#[test]
fn documented_dimensions() {
    let ising = tambara_yamagami(&g("Z2")).unwrap();
    let d = pf_dimensions(&ising).unwrap();
    assert_eq!((d[0].value, d[1].value), (1.0, 1.0));
    assert!((d[2].value - 2f64.sqrt()).abs() <= 1e-12);
    assert_eq!(d[2].exact.as_deref(), Some("sqrt(2)"));

    let ty4 = pf_dimensions(&tambara_yamagami(&g("Z4")).unwrap()).unwrap();
    assert_eq!(ty4.iter().map(|x| x.value).collect::<Vec<_>>(), vec![1.0, 1.0, 1.0, 1.0, 2.0]);

    for n in ABELIAN {
        let r = tambara_yamagami(&g(n)).unwrap();
        let d = pf_dimensions(&r).unwrap();
        let want = (g(n).order() as f64).sqrt();
        assert!((d.last().unwrap().value - want).abs() <= 1e-12, "TY({n})");
    }
    for n in ALL_GROUPS {
        assert!(pf_dimensions(&group_ring(&g(n))).unwrap().iter().all(|d| d.value == 1.0));
    }
}

#[test]
fn fiber_functor_verdicts() {
    match fiber_functor_obstruction(&tambara_yamagami(&g("Z2")).unwrap()).unwrap() {
        FiberFunctorVerdict::Impossible { witness, exact, .. } => {
            assert_eq!(witness, "N");
            assert_eq!(exact.as_deref(), Some("sqrt(2)"));
        }
        v => panic!("expected impossible, got {v:?}"),
    }
    assert!(matches!(
        fiber_functor_obstruction(&group_ring(&g("Z5"))).unwrap(),
        FiberFunctorVerdict::Possible { .. }
    ));
    assert!(matches!(
        fiber_functor_obstruction(&tambara_yamagami(&g("Z4")).unwrap()).unwrap(),
        FiberFunctorVerdict::Possible { .. }
    ));
    match fiber_functor_obstruction(&fibonacci()).unwrap() {
        FiberFunctorVerdict::Impossible { witness, exact, dimension } => {
            assert_eq!(witness, "t");
            assert_eq!(exact, None);
            assert!((dimension - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        }
        v => panic!("expected impossible, got {v:?}"),
    }
}

#[test]
fn square_root_verdicts() {
    assert_eq!(
        square_root_obstruction(&group_ring(&g("Z2"))),
        SquareRootVerdict::NoSqrt { rank: 2, reason: "rank 2 is not a perfect square".into() }
    );
    assert!(matches!(square_root_obstruction(&group_ring(&g("Z3"))), SquareRootVerdict::NoSqrt { rank: 3, .. }));
    assert_eq!(square_root_obstruction(&group_ring(&g("Z4"))), SquareRootVerdict::Inconclusive { rank: 4 });
    assert_eq!(square_root_obstruction(&group_ring(&g("Z1"))), SquareRootVerdict::Inconclusive { rank: 1 });
}

#[test]
fn quotient_defect_squares_to_multiple() {
    for n in ALL_GROUPS.iter().chain(&["Q8"]) {
        let grp = g(n);
        let s = quotient_defect_composition(&grp);
        assert_eq!(&s * &s, s.scale(grp.order() as u64), "{n}");
    }
    let z2 = quotient_defect_composition(&g("Z2"));
    assert_eq!(z2.to_string(), "1 + g1");
    assert_eq!((&z2 * &z2).to_string(), "2*1 + 2*g1");
    let triv = quotient_defect_composition(&g("Z1"));
    assert_eq!(triv, triv.ring().simple(triv.ring().unit()));
}

#[test]
fn ty_z3_square_of_n() {
    let r = tambara_yamagami(&g("Z3")).unwrap();
    let n = r.simple(r.label_index("N").unwrap());
    assert_eq!((&n * &n).to_string(), "L0 + L1 + L2");
}

#[test]
fn nonabelian_group_ring() {
    let r = group_ring(&g("S3"));
    assert_eq!(r.rank(), 6);
    let noncommuting = (0..6).any(|i| (0..6).any(|j| (0..6).any(|k| r.n(i, j, k) != r.n(j, i, k))));
    assert!(noncommuting);
}
