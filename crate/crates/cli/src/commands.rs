use std::path::Path;

use serde_json::{json, Value};

use finsym_core::algebra::{rational_string, FiniteAbelianGroup, FiniteGroup, Phase, QuadraticForm};
use finsym_core::anomaly::{
    allowed_lines, chiral_fuse, defect_quantum_dim, flux_projector_action, fractional_instanton, gauss_sum,
    ym_theta_pi_anomaly, ChiralAngle, MinimalTft, SubgroupEmbedding,
};
use finsym_core::complexes::{
    cohomology, enumerate_cocycles, enumerate_relative_cocycles, relative_cohomology, ChainComplex,
    ManifoldExpr, SubcomplexMap,
};
use finsym_core::fusion::{
    fiber_functor_obstruction, group_ring, pf_dimensions, quotient_defect_composition, square_root_obstruction,
    tambara_yamagami, FusionRing,
};
use finsym_core::ising::{self, IsingLattice, Method, Sectors};
use finsym_core::pathintegral::{self, PiFiniteTarget};
use finsym_core::tqft2d::{shape_matrix, solve_problem_one, trace_check, Shape};
use finsym_core::{Error, Limits, Result};

use crate::{
    AnomalyArgs, AnyonsArgs, BordismArgs, CohomologyArgs, Command, FusionArgs, GaussArgs, IsingArgs, IsingMethod,
    LinesArgs, PartitionArgs,
};

fn input(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize to JSON")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn abelian(s: &str) -> Result<FiniteAbelianGroup> {
    s.parse()
}

fn phase(s: &str) -> Result<Phase> {
    s.trim().parse()
}

pub fn run(cmd: &Command, limits: &Limits) -> Result<Value> {
    match cmd {
        Command::Cohomology(a) => run_cohomology(a, limits),
        Command::Partition(a) => run_partition(a, limits),
        Command::Bordism(a) => run_bordism(a),
        Command::Fusion(a) => run_fusion(a),
        Command::Lines(a) => run_lines(a),
        Command::Anyons(a) => run_anyons(a),
        Command::Anomaly(a) => run_anomaly(a),
        Command::Gauss(a) => run_gauss(a),
        Command::Ising(a) => run_ising(a, limits),
        Command::Problem1(a) => Ok(to_value(&solve_problem_one(&abelian(&a.group)?)?)),
    }
}

fn run_cohomology(a: &CohomologyArgs, limits: &Limits) -> Result<Value> {
    let coeff = abelian(&a.coeff)?;
    let (complex, boundary) = match (&a.manifold, &a.complex) {
        (_, Some(path)) => (ChainComplex::from_json(&read(path)?)?, None),
        (Some(m), None) => {
            let m: ManifoldExpr = m.parse()?;
            let boundary = if a.relative {
                let pieces = &m.space().boundary;
                let Some(first) = pieces.first() else {
                    return Err(input(format!("{} has empty boundary", m.text())));
                };
                let mut acc = first.clone();
                for p in &pieces[1..] {
                    acc = SubcomplexMap::union(&acc, p)?;
                }
                Some(acc)
            } else {
                None
            };
            (m.complex().clone(), boundary)
        }
        (None, None) => return Err(input("give --manifold or --complex")),
    };
    let row = |q: usize| -> Result<Value> {
        let h = match &boundary {
            Some(b) => relative_cohomology(&complex, b, &coeff, q)?,
            None => cohomology(&complex, &coeff, q),
        };
        let mut v = json!({
            "degree": q,
            "group": h.group().to_string(),
            "order": h.order(),
            "invariant_factors": h.group().invariant_factors(),
        });
        if a.enumerate {
            let e = match &boundary {
                Some(b) => enumerate_relative_cocycles(&complex, b, &coeff, q, limits)?,
                None => enumerate_cocycles(&complex, &coeff, q, limits)?,
            };
            v["cocycles"] = json!(e.cocycle_count);
            v["coboundaries"] = json!(e.coboundary_count);
            v["enumerated_classes"] = json!(e.class_count());
        }
        Ok(v)
    };
    match a.degree {
        Some(q) => row(q),
        None => Ok(Value::Array((0..=complex.top_dim()).map(row).collect::<Result<_>>()?)),
    }
}

fn run_partition(a: &PartitionArgs, limits: &Limits) -> Result<Value> {
    let target: PiFiniteTarget = a.target.parse()?;
    let m: ManifoldExpr = a.manifold.parse()?;
    let z = pathintegral::partition(&target, &m, phase(&a.twist)?, limits)?;
    Ok(json!({ "value": rational_string(&z) }))
}

fn run_bordism(a: &BordismArgs) -> Result<Value> {
    let g = abelian(&a.group)?;
    if let Some(n) = a.trace_circles {
        return Ok(to_value(&trace_check(n, &g)?));
    }
    let shape: Shape = a.shape.parse()?;
    let m = shape_matrix(shape, &g)?;
    let mut v = to_value(&m);
    v["shape"] = json!(shape.to_string());
    Ok(v)
}

fn group(s: &str) -> Result<FiniteGroup> {
    FiniteGroup::preset(s.trim())
}

fn ring_from_spec(spec: &str) -> Result<FusionRing> {
    match spec.split_once(':') {
        Some(("group", g)) => Ok(group_ring(&group(g)?)),
        Some(("ty", g)) => tambara_yamagami(&group(g)?),
        _ => Err(input(format!("fusion ring {spec:?}: expected group:G or ty:A"))),
    }
}

fn run_fusion(a: &FusionArgs) -> Result<Value> {
    if let Some(g) = &a.quotient_defect {
        let g = group(g)?;
        let s = quotient_defect_composition(&g);
        let sq = &s * &s;
        return Ok(json!({
            "order": g.order(),
            "element": s.to_string(),
            "square": sq.to_string(),
            "identity_holds": sq == s.scale(g.order() as u64),
        }));
    }
    let ring = match (&a.ring, &a.file) {
        (_, Some(path)) => FusionRing::from_json(&read(path)?)?,
        (Some(spec), None) => ring_from_spec(spec)?,
        (None, None) => return Err(input("give --ring, --file or --quotient-defect")),
    };
    Ok(json!({
        "labels": ring.labels(),
        "dimensions": to_value(&pf_dimensions(&ring)?),
        "fiber_functor": to_value(&fiber_functor_obstruction(&ring)?),
        "square_root": to_value(&square_root_obstruction(&ring)),
    }))
}

fn parse_images(s: &str) -> Result<Vec<Vec<u64>>> {
    s.split(';')
        .map(|img| {
            img.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| input(format!("bad embedding entry {x:?}"))))
                .collect()
        })
        .collect()
}

fn run_lines(a: &LinesArgs) -> Result<Value> {
    let amb = abelian(&a.ambient)?;
    let sub = abelian(&a.subgroup)?;
    let q = if a.q.is_empty() && a.cross.is_empty() {
        QuadraticForm::zero(&sub)
    } else {
        let gens = a.q.iter().map(|s| phase(s)).collect::<Result<Vec<_>>>()?;
        let mut cross = a.cross.iter().map(|s| phase(s)).collect::<Result<Vec<_>>>()?;
        let k = sub.rank();
        if cross.is_empty() {
            cross = vec![Phase::ZERO; k * k.saturating_sub(1) / 2];
        }
        QuadraticForm::new(&sub, gens, cross)?
    };
    let emb = match &a.embed {
        Some(s) => SubgroupEmbedding::new(&sub, &amb, parse_images(s)?)?,
        None => SubgroupEmbedding::standard(&sub, &amb)?,
    };
    let l = allowed_lines(&amb, &emb, &q)?;
    Ok(json!({
        "ambient": amb.to_string(),
        "subgroup": sub.to_string(),
        "pairs": to_value(&l.pairs()),
        "count": l.len(),
        "closed": l.is_subgroup(),
    }))
}

fn run_anyons(a: &AnyonsArgs) -> Result<Value> {
    let t = MinimalTft::new(a.n, a.p)?;
    let mut v = to_value(&t.data());
    v["defect_quantum_dim"] = json!(defect_quantum_dim(a.n)?);
    if let Some(m) = a.flux {
        v["flux"] = json!({ "m": m, "projector": flux_projector_action(a.n, m)? });
    }
    Ok(v)
}

fn angle(s: &str) -> Result<ChiralAngle> {
    let (p, n) = s.split_once('/').unwrap_or((s, "1"));
    let p = p.trim().parse::<i64>().map_err(|_| input(format!("bad angle {s:?}")))?;
    let n = n.trim().parse::<i64>().map_err(|_| input(format!("bad angle {s:?}")))?;
    ChiralAngle::new(p, n)
}

fn run_anomaly(a: &AnomalyArgs) -> Result<Value> {
    if let Some(n) = a.ym_theta_pi {
        return Ok(to_value(&ym_theta_pi_anomaly(n)?));
    }
    if let Some(n) = a.instanton {
        let p = a.pontryagin.ok_or_else(|| input("--instanton needs --P"))?;
        let v = fractional_instanton(n, p, a.spin)?;
        return Ok(json!({ "N": n, "P": p, "spin": a.spin, "fractional_part": v.to_string() }));
    }
    match a.chiral.as_deref() {
        Some([x, y]) => Ok(to_value(&chiral_fuse(angle(x)?, angle(y)?))),
        _ => Err(input("give --ym-theta-pi, --instanton or --chiral A B")),
    }
}

fn run_gauss(a: &GaussArgs) -> Result<Value> {
    Ok(to_value(&gauss_sum(a.n, a.p)?))
}

fn sector_keys(spec: &str) -> Result<Vec<usize>> {
    if spec.trim() == "all" {
        return Ok((0..4).collect());
    }
    spec.split(',')
        .map(|k| {
            (0..4)
                .find(|&i| Sectors::key(i) == k.trim())
                .ok_or_else(|| input(format!("unknown sector {k:?}; use 00, 10, 01, 11 or all")))
        })
        .collect()
}

fn sweep(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || input(format!("sweep {spec:?}: expected lo:hi:n"));
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let (lo, hi): (f64, f64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    match n {
        0 => Err(bad()),
        1 => Ok(vec![lo]),
        _ => Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()),
    }
}

fn ising_row(a: &IsingArgs, beta: f64, keys: &[usize], limits: &Limits) -> Result<Value> {
    let lat = IsingLattice::new(a.l, a.t, beta)?;
    let method = match a.method {
        IsingMethod::Brute => Method::BruteForce,
        IsingMethod::Transfer => Method::TransferMatrix,
    };
    let s = ising::sector_partitions(&lat, method, limits)?;
    let mut sectors = serde_json::Map::new();
    for &k in keys {
        sectors.insert(Sectors::key(k).to_string(), json!(s.0[k]));
    }
    let mut v = json!({ "L": a.l, "T": a.t, "beta": beta, "sectors": sectors });
    if a.gauge {
        v["gauged"] = json!(s.gauged());
    }
    if a.kw {
        v["beta_dual"] = json!(ising::kw_dual_beta(beta)?);
        v["kw_ratio"] = json!(ising::kw_ratio(&lat, limits)?);
    }
    Ok(v)
}

fn run_ising(a: &IsingArgs, limits: &Limits) -> Result<Value> {
    let keys = sector_keys(&a.sectors)?;
    match (&a.sweep, a.beta) {
        (Some(spec), _) => Ok(Value::Array(
            sweep(spec)?
                .into_iter()
                .map(|b| ising_row(a, b, &keys, limits))
                .collect::<Result<_>>()?,
        )),
        (None, Some(beta)) => ising_row(a, beta, &keys, limits),
        (None, None) => Err(input("give --beta or --sweep")),
    }
}
