//! Acceptance checks, one line per criterion. Exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use finsym_core::algebra::{FiniteAbelianGroup, FiniteGroup, Phase, QuadraticForm};
use finsym_core::anomaly::*;
use finsym_core::complexes::{cohomology, enumerate_cocycles, preset};
use finsym_core::fusion::*;
use finsym_core::ising::{self, Background, IsingLattice, Method};
use finsym_core::pathintegral::{em_partition, em_state_space_dim, surface_gauge_count};
use finsym_core::tqft2d::solve_problem_one;
use finsym_core::Limits;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ab(s: &str) -> FiniteAbelianGroup {
    s.parse().unwrap()
}

fn grp(s: &str) -> FiniteGroup {
    FiniteGroup::preset(s).unwrap()
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn c1() -> Check {
    let start = Instant::now();
    let lim = Limits::default();
    for name in ["Z2", "Z3", "Z2xZ2", "S3", "D4", "Q8"] {
        let g = grp(name);
        let z = surface_gauge_count(&g, 1, &lim).map_err(|e| e.to_string())?;
        let classes = g.conjugacy_classes().len() as u64;
        ensure(z == int(classes), || format!("{name}: {z} vs {classes} classes"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("6 groups in {:?}", start.elapsed()))
}

fn c2() -> Check {
    let r = solve_problem_one(&ab("Z2")).map_err(|e| e.to_string())?;
    ensure(r.circle_dim == 2, || format!("dim Z(S¹) = {}", r.circle_dim))?;
    let g = ab("Z2");
    let basis_in: Vec<_> = r.pants.source().basis();
    for (k, row) in r.pants.entries().iter().enumerate() {
        for (col, label) in basis_in.iter().enumerate() {
            let sum = g.add(&label[0], &label[1]);
            let want = int(u64::from(g.index_of(&sum) == k));
            ensure(row[col] == want, || format!("pants[{k}][{col}] = {}", row[col]))?;
        }
    }
    ensure(r.cylinder_is_identity, || "cylinder is not the identity".into())?;
    ensure(r.trace.trace == int(2) && r.trace.closed_value == int(2) && r.torus_direct == int(2), || {
        format!("trace {} closed {} torus {}", r.trace.trace, r.trace.closed_value, r.torus_direct)
    })?;
    Ok("dim 2, pants = multiplication table, Tr = 2 = Z(T²)".into())
}

fn c3() -> Check {
    let start = Instant::now();
    let s5 = preset("sphere", Some(5)).map_err(|e| e.to_string())?.complex;
    for a in ["Z2", "Z3", "Z2xZ2"] {
        let g = ab(a);
        let z = em_partition(&s5, &g, 2).map_err(|e| e.to_string())?;
        ensure(z == int(g.order()), || format!("S⁵, {a}: {z}"))?;
    }
    let t5 = preset("torus", Some(5)).map_err(|e| e.to_string())?.complex;
    let z = em_partition(&t5, &ab("Z2"), 2).map_err(|e| e.to_string())?;
    ensure(z == int(64), || format!("T⁵: {z}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("S⁵ gives |A|, T⁵ gives 64, in {:?}", start.elapsed()))
}

fn c4() -> Check {
    let s2 = preset("sphere", Some(2)).map_err(|e| e.to_string())?.complex;
    for a in ["Z2", "Z3", "Z4", "Z2xZ2", "Z6"] {
        let g = ab(a);
        let d = em_state_space_dim(&s2, &g, 2);
        ensure(d == g.order(), || format!("{a}: {d}"))?;
    }
    Ok("5 groups".into())
}

fn c5() -> Check {
    let ty = tambara_yamagami(&grp("Z2")).map_err(|e| e.to_string())?;
    let d = pf_dimensions(&ty).map_err(|e| e.to_string())?;
    ensure(d[0].value == 1.0 && d[1].value == 1.0, || "invertible lines not 1".into())?;
    ensure((d[2].value - 2f64.sqrt()).abs() <= 1e-12, || format!("d_N = {}", d[2].value))?;
    let ff = fiber_functor_obstruction(&ty).map_err(|e| e.to_string())?;
    ensure(matches!(ff, FiberFunctorVerdict::Impossible { .. }), || format!("{ff:?}"))?;
    let sq = square_root_obstruction(&group_ring(&grp("Z2")));
    ensure(
        matches!(&sq, SquareRootVerdict::NoSqrt { rank: 2, reason } if reason.contains("perfect square")),
        || format!("{sq:?}"),
    )?;
    Ok(format!("d_N = {:.15}", d[2].value))
}

fn c6() -> Check {
    let names = [
        "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8",
    ];
    for n in names {
        let g = grp(n);
        let s = quotient_defect_composition(&g);
        ensure(&s * &s == s.scale(g.order() as u64), || n.to_string())?;
    }
    Ok(format!("{} groups of order ≤ 8", names.len()))
}

fn chains(max: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, prod: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let mut n = prefix.last().copied().unwrap_or(2);
        while prod * n <= max {
            if prefix.last().is_none_or(|&l| n % l == 0) {
                prefix.push(n);
                go(prefix, prod * n, max, out);
                prefix.pop();
            }
            n += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max, &mut out);
    out
}

/// Diagonal quadratic forms with generator values in `(1/2n)ℤ/ℤ`.
fn diagonal_forms(g: &FiniteAbelianGroup) -> Vec<QuadraticForm> {
    let k = g.rank();
    let mut gens: Vec<Vec<Phase>> = vec![vec![]];
    for &n in g.invariant_factors() {
        gens = gens
            .into_iter()
            .flat_map(|v| {
                (0..2 * n as i64).map(move |j| {
                    let mut w = v.clone();
                    w.push(Phase::new(j, 2 * n as i64));
                    w
                })
            })
            .collect();
    }
    gens.into_iter()
        .filter_map(|gv| QuadraticForm::new(g, gv, vec![Phase::ZERO; k * k.saturating_sub(1) / 2]).ok())
        .collect()
}

fn c7() -> Check {
    let z2 = ab("Z2");
    let triv = FiniteAbelianGroup::trivial();
    let pair = |m: u64, e: u64| LinePair { m: vec![m], e: vec![e] };
    let cases = [
        (triv.clone(), QuadraticForm::zero(&triv), vec![pair(0, 0), pair(0, 1)]),
        (z2.clone(), QuadraticForm::zero(&z2), vec![pair(0, 0), pair(1, 0)]),
        (
            z2.clone(),
            QuadraticForm::new(&z2, vec![Phase::new(1, 4)], vec![]).unwrap(),
            vec![pair(0, 0), pair(1, 1)],
        ),
    ];
    for (sub, q, want) in cases {
        let emb = SubgroupEmbedding::standard(&sub, &z2).map_err(|e| e.to_string())?;
        let l = allowed_lines(&z2, &emb, &q).map_err(|e| e.to_string())?;
        ensure(l.pairs() == want.as_slice(), || format!("A′ = {sub}: {:?}", l.pairs()))?;
    }
    let mut count = 0;
    for fa in chains(16) {
        let a = FiniteAbelianGroup::from_cyclic_orders(&fa).unwrap();
        for fp in chains(a.order()) {
            let ap = FiniteAbelianGroup::from_cyclic_orders(&fp).unwrap();
            let Ok(emb) = SubgroupEmbedding::standard(&ap, &a) else {
                continue;
            };
            for q in diagonal_forms(&ap) {
                let l = allowed_lines(&a, &emb, &q).map_err(|e| e.to_string())?;
                ensure(l.len() as u64 == a.order() && l.is_subgroup(), || format!("{a} ⊃ {ap}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("3 ℤ₂ lattices; {count} (A, A′, q) cases with |A| ≤ 16"))
}

fn c8() -> Check {
    for n in 2..=16u64 {
        let v = ym_theta_pi_anomaly(n).map_err(|e| e.to_string())?;
        let ok = match v {
            YmVerdict::Anomalous => n % 2 == 0,
            YmVerdict::Counterterm { k } => n % 2 == 1 && k == (n - 1) / 2,
        };
        ensure(ok, || format!("N = {n}: {v:?}"))?;
    }
    Ok("N = 2..16".into())
}

fn c9() -> Check {
    let t = MinimalTft::new(2, 1).map_err(|e| e.to_string())?;
    ensure(t.spin(1) == Phase::new(1, 4), || format!("θ₁ = {}", t.spin(1)))?;
    for n in 1..=12u64 {
        for p in 1..=n as i64 {
            let Ok(t) = MinimalTft::new(n, p) else {
                continue;
            };
            for j in 1..n {
                ensure((0..n).any(|k| !t.braiding(j, k).is_zero()), || format!("N={n} p={p} j={j}"))?;
            }
        }
        let d = defect_quantum_dim(n).map_err(|e| e.to_string())?;
        ensure((d - 1.0 / (n as f64).sqrt()).abs() <= 1e-15, || format!("N={n}: {d}"))?;
    }
    Ok("θ₁ = 1/4; nondegenerate for N ≤ 12".into())
}

fn c10() -> Check {
    let a = ChiralAngle::new(1, 4).map_err(|e| e.to_string())?;
    let f = chiral_fuse(a, a);
    ensure(f.result == Phase::new(1, 2) && f.condensed_order == 2, || format!("{f:?}"))?;
    Ok("1/4 ⊗ 1/4 = 1/2, ℤ₂ condensed".into())
}

fn c11() -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=20u64 {
        for p in 0..n as i64 {
            if num_integer::gcd(p as u64, n) != 1 {
                continue;
            }
            let g = gauss_sum(n, p).map_err(|e| e.to_string())?;
            ensure(g.exact == n, || format!("N={n} p={p}: exact {}", g.exact))?;
            let err = (g.direct_re - n as f64).hypot(g.direct_im);
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("N={n} p={p}: direct error {err:e}"))?;
        }
    }
    Ok(format!("worst direct error {worst:.1e}"))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn c12() -> Check {
    let start = Instant::now();
    let lim = Limits::default();
    let err = |e: finsym_core::Error| e.to_string();
    let mut worst: f64 = 0.0;
    let mut tori = 0;
    for l in 1..=16usize {
        for t in 1..=16 / l {
            tori += 1;
            for beta in [0.1, 0.3, ising::BETA_C, 1.0] {
                let lat = IsingLattice::new(l, t, beta).map_err(err)?;
                let bf = ising::sector_partitions(&lat, Method::BruteForce, &lim).map_err(err)?;
                let tm = ising::sector_partitions(&lat, Method::TransferMatrix, &lim).map_err(err)?;
                for i in 0..4 {
                    worst = worst.max(rel(tm.0[i], bf.0[i]));
                }
            }
        }
    }
    ensure(worst <= 1e-12, || format!("transfer vs brute force: {worst:e}"))?;

    let bc = ising::BETA_C;
    ensure(((2.0 * bc).sinh() - 1.0).abs() <= 1e-12, || "sinh 2β_c ≠ 1".into())?;
    ensure((bc - 0.5 * (1.0 + 2f64.sqrt()).ln()).abs() <= 1e-15, || "β_c constant".into())?;
    ensure((ising::kw_dual_beta(bc).map_err(err)? - bc).abs() <= 1e-12, || "β_c not fixed".into())?;
    for k in 1..=40 {
        let beta = 0.05 * k as f64;
        let back = ising::kw_dual_beta(ising::kw_dual_beta(beta).map_err(err)?).map_err(err)?;
        ensure((back - beta).abs() <= 1e-12, || format!("involution fails at β = {beta}"))?;
    }

    let mut spread: f64 = 0.0;
    let mut constants = Vec::new();
    for (l, t) in [(2usize, 2usize), (3, 3)] {
        let fit = ising::fit_kw_constant(l, t, 0.2, 0.9, &lim).map_err(err)?;
        for k in 0..10 {
            let beta = 0.1 + 0.15 * k as f64;
            let lat = IsingLattice::new(l, t, beta).map_err(err)?;
            let r = ising::kw_ratio(&lat, &lim).map_err(err)?;
            spread = spread.max(rel(r, fit.constant));
        }
        constants.push(format!("c({l},{t}) = {}", fit.constant));
    }
    ensure(spread <= 1e-9, || format!("KW ratio spread {spread:e}"))?;
    // gauge invariance spot check
    let lat = IsingLattice::new(3, 3, 0.4).map_err(err)?;
    let base = Background::holonomy(3, 3, true, false);
    let z0 = ising::partition_bruteforce(&lat, &base, &lim).map_err(err)?;
    let z1 = ising::partition_bruteforce(&lat, &base.gauge_transform(4), &lim).map_err(err)?;
    ensure(rel(z1, z0) <= 1e-12, || "gauge invariance".into())?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "{tori} tori, worst rel {worst:.1e}; KW spread {spread:.1e}; {}; {:?}",
        constants.join(", "),
        start.elapsed()
    ))
}

fn c13() -> Check {
    let spaces: Vec<(&str, Option<usize>)> = vec![
        ("point", None),
        ("circle", None),
        ("interval", None),
        ("disk", None),
        ("cylinder", None),
        ("pants", None),
        ("klein", None),
        ("sphere", Some(0)),
        ("sphere", Some(1)),
        ("sphere", Some(2)),
        ("sphere", Some(3)),
        ("torus", Some(1)),
        ("torus", Some(2)),
        ("torus", Some(3)),
        ("surface", Some(0)),
        ("surface", Some(1)),
        ("surface", Some(2)),
        ("surface", Some(3)),
        ("surface", Some(4)),
        ("rp", Some(1)),
        ("rp", Some(2)),
        ("rp", Some(3)),
    ];
    let lim = Limits::default();
    let mut checked = 0;
    for (name, param) in &spaces {
        let c = preset(name, *param).map_err(|e| e.to_string())?.complex;
        for a in ["Z1", "Z2", "Z3", "Z4", "Z2xZ2"] {
            let g = ab(a);
            for q in 0..=c.top_dim() {
                let snf = cohomology(&c, &g, q).order();
                let e = enumerate_cocycles(&c, &g, q, &lim).map_err(|e| e.to_string())?;
                ensure(snf == e.class_count() as u64 && snf * e.coboundary_count == e.cocycle_count, || {
                    format!("{name}:{param:?} {a} H^{q}: {snf} vs {}", e.class_count())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (space, A, q) cases"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("torus count equals conjugacy classes", c1),
        ("2d finite gauge theory for Z2: state space, pants, cylinder, trace", c2),
        ("B2A partition functions on S5 and T5", c3),
        ("mapping-space state spaces on S2", c4),
        ("fusion obstructions for TY(Z2) and Z[Z2]", c5),
        ("quotient-defect identity", c6),
        ("line lattices", c7),
        ("theta = pi anomaly parity", c8),
        ("minimal TFT data", c9),
        ("chiral defect fusion", c10),
        ("Gauss sums", c11),
        ("Ising transfer matrix, duality and gauging", c12),
        ("SNF cohomology against cocycle enumeration", c13),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
