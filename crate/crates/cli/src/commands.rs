use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use ncomplex::algebra::relation_checks;
use ncomplex::cohomology::{four_term_check, hexagon_check, poincare_suite, CohomologyTable};
use ncomplex::diagrams::partitions;
use ncomplex::fields::{block, delta as delta_op, n_diff_power, star_field, star_field_inverse, star_relation_constants, PolyTensorField};
use ncomplex::gauge::{
    random_divergence_free, sequence_exactness, spin2_complex_check, spin2_constants, spin2_d1, spin2_d2, spin2_d3,
    stress_potential as stress_solve, GaugeField, GaugeRole,
};
use ncomplex::json::{field_from_json, field_to_json, table_to_json, tensor_from_json, tensor_to_json};
use ncomplex::multiforms::{green_factor_block, lemma4_check, relative_cohomology_check, theorem2_all, theorem2_check, RankCertificate};
use ncomplex::probe::Probe;
use ncomplex::tensor::coords::projector_rank;
use ncomplex::tensor::young_project;
use ncomplex::{Diagram, Variance};
use serde_json::{json, Value};

use crate::output::{csv, table, verdict, Output};
use crate::{Complex, Failure, Input};

type Outcome = Result<Output, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_source(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_field(path: Option<&Path>) -> Result<PolyTensorField, Failure> {
    let text = read_source(path)?;
    field_from_json(&text).map_err(|e| usage(format!("{}: {e}", source_name(path))))
}

fn source_name(path: Option<&Path>) -> String {
    match path {
        Some(p) if p.as_os_str() != "-" => p.display().to_string(),
        _ => "stdin".into(),
    }
}

fn diagram(rows: &[usize]) -> Result<Diagram, Failure> {
    Ok(Diagram::new(rows.to_vec())?)
}

fn check_complex(c: Complex) -> Result<usize, Failure> {
    if c.n < 2 {
        return Err(usage(format!("--N must be at least 2, got {}", c.n)));
    }
    if c.dim == 0 {
        return Err(usage("--D must be at least 1"));
    }
    Ok((c.n - 1) * c.dim)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn dim(shape: &[usize], dim: usize, check: bool) -> Outcome {
    let y = diagram(shape)?;
    let d = y.schur_dim(dim);
    let mut text = format!("{d}\n");
    let mut value = json!({ "shape": shape, "D": dim, "dim": d });
    let mut rows = vec![join(shape), dim.to_string(), d.to_string()];
    let mut header = vec!["shape", "D", "dim"];
    if check {
        let rank = projector_rank(&y, dim) as u64;
        text = format!("{d}\nprojector rank {rank}\n");
        value["projector_rank"] = json!(rank);
        rows.push(rank.to_string());
        header.push("projector_rank");
        return Ok(Output::check(text, value, rank == d).with_csv(csv(&header, &[rows])));
    }
    Ok(Output::value(text, value).with_csv(csv(&header, &[rows])))
}

pub fn project(shape: &[usize], input: &Input) -> Outcome {
    let y = diagram(shape)?;
    let path = input.input.as_deref();
    let t = tensor_from_json(&read_source(path)?).map_err(|e| usage(format!("{}: {e}", source_name(path))))?;
    if t.degree != y.size() {
        return Err(usage(format!("tensor degree {} does not match shape {y} of size {}", t.degree, y.size())));
    }
    let out = young_project(&y, &t)?.with_shape(y);
    Ok(Output::document(tensor_to_json(&out)))
}

pub fn diff(power: usize, input: &Input) -> Outcome {
    let f = read_field(input.input.as_deref())?;
    if power == 0 {
        return Err(usage("--power must be at least 1"));
    }
    if f.variance != Variance::Co {
        return Err(usage("d acts on covariant fields"));
    }
    Ok(Output::document(field_to_json(&n_diff_power(&f, power))))
}

pub fn delta(input: &Input) -> Outcome {
    let f = read_field(input.input.as_deref())?;
    Ok(Output::document(field_to_json(&delta_op(&f)?)))
}

pub fn dual(input: &Input, constants: bool) -> Outcome {
    let f = read_field(input.input.as_deref())?;
    let out = match f.variance {
        Variance::Co => star_field(&f)?,
        Variance::Contra => star_field_inverse(&f)?,
    };
    if !constants {
        return Ok(Output::document(field_to_json(&out)));
    }
    let c: Vec<String> = star_relation_constants(f.n, f.dim)?.iter().map(ToString::to_string).collect();
    let value = json!({ "dual": field_to_json(&out), "constants": c });
    Ok(Output::document(value))
}

pub fn cohomology(c: Complex, p: &[usize], qmax: usize) -> Outcome {
    let top = check_complex(c)?;
    let degrees: Vec<usize> = if p.is_empty() { (0..=top).collect() } else { p.to_vec() };
    if let Some(&bad) = degrees.iter().find(|&&d| d > top) {
        return Err(usage(format!("degree {bad} exceeds (N-1)D = {top}")));
    }
    let t = CohomologyTable::compute(c.n, c.dim, &degrees, qmax)?;
    Ok(Output::value(t.to_text(), table_to_json(&t)).with_csv(t.to_csv()))
}

/// `dim H` laid out with one row per `(p, k)` and one column per `q`.
fn grid(t: &CohomologyTable, skip_zero_degree: bool) -> String {
    let mut header = vec!["p,k".to_string()];
    header.extend((0..=t.q_max).map(|q| format!("q={q}")));
    let mut rows: Vec<Vec<String>> = Vec::new();
    for e in &t.entries {
        if skip_zero_degree && e.p == 0 {
            continue;
        }
        if e.q == 0 {
            rows.push(vec![format!("{},{}", e.p, e.k)]);
        }
        rows.last_mut().expect("q = 0 first").push(e.dim_h.to_string());
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    table(&header, &rows)
}

pub fn poincare(c: Complex, nmax: usize, qmax: usize) -> Outcome {
    check_complex(c)?;
    if nmax == 0 {
        return Err(usage("--nmax must be at least 1"));
    }
    let r = poincare_suite(c.n, c.dim, nmax, qmax)?;
    let mut text = format!("N={} D={} nmax={} qmax={}: dim H in the well-filled degrees\n", c.n, c.dim, nmax, qmax);
    text.push_str(&grid(&r.table, true));
    let _ = writeln!(text, "degree 0: polynomials of degree < k");
    for v in &r.violations {
        let _ = writeln!(text, "violation: {v}");
    }
    let value = json!({
        "N": c.n, "D": c.dim, "nmax": nmax, "qmax": qmax, "checked": r.checked,
        "violations": r.violations, "table": table_to_json(&r.table),
    });
    let passed = r.passed();
    Ok(Output::check(text, value, passed).with_csv(r.table.to_csv()))
}

pub fn hexagon(c: Complex, k: usize, l: usize, qmax: usize, four_term: bool) -> Outcome {
    check_complex(c)?;
    if four_term {
        let r = four_term_check(c.n, c.dim, k, l, qmax)?;
        let rows: Vec<Vec<String>> = r
            .rows
            .iter()
            .map(|row| {
                let mut cells = vec![row.q.to_string()];
                cells.extend(row.dims.iter().map(usize::to_string));
                cells.push(row.alternating_sum.to_string());
                cells.push(verdict(row.exact.iter().all(|&e| e)).into());
                cells
            })
            .collect();
        let header = ["q", "dim_1", "dim_2", "dim_3", "dim_4", "alt_sum", "exact"];
        let mut text = format!("N={} D={} four-term sequence for k={k}, l={l}\n", c.n, c.dim);
        text.push_str(&table(&header, &rows));
        let _ = writeln!(text, "totals {:?}, alternating sum {}", r.totals, r.total_alternating_sum());
        let value = serde_json::to_value(&r).expect("serializable");
        return Ok(Output::check(text, value, r.passed()).with_csv(csv(&header, &rows)));
    }
    let r = hexagon_check(c.n, c.dim, k, l, qmax)?;
    let mut text = format!("N={} D={} hexagon for k={k}, l={l}, q<={qmax}\n", c.n, c.dim);
    if r.nodes.is_empty() {
        let _ = writeln!(text, "no admissible (k, l) for N = {}", c.n);
    }
    let nontrivial = r.nodes.iter().filter(|n| n.dim_h > 0).count();
    let _ = writeln!(text, "{} positions checked, {} with nonzero cohomology", r.nodes.len(), nontrivial);
    let header = ["node", "incoming", "outgoing", "dim_H", "im_in", "ker_out", "exact"];
    let rows: Vec<Vec<String>> = r
        .nodes
        .iter()
        .filter(|n| n.dim_h > 0 || !n.exact)
        .map(|n| vec![n.node.clone(), n.incoming.clone(), n.outgoing.clone(), n.dim_h.to_string(), n.dim_image_in.to_string(), n.dim_kernel_out.to_string(), verdict(n.exact).into()])
        .collect();
    if !rows.is_empty() {
        text.push_str(&table(&header, &rows));
    }
    let value = serde_json::to_value(&r).expect("serializable");
    Ok(Output::check(text, value, r.passed()).with_csv(csv(&header, &rows)))
}

fn certificate(title: String, cert: &RankCertificate) -> Output {
    let header = ["degrees", "q", "cocycles", "coboundaries", "sum", "holds"];
    let rows: Vec<Vec<String>> = cert
        .rows
        .iter()
        .map(|r| {
            vec![
                join(&r.degrees),
                r.q.to_string(),
                r.dim_cocycles.to_string(),
                r.dim_coboundaries.to_string(),
                r.dim_sum.to_string(),
                verdict(r.holds()).into(),
            ]
        })
        .collect();
    let mut text = title;
    text.push_str(&table(&header, &rows));
    let value = serde_json::to_value(cert).expect("serializable");
    Output::check(text, value, cert.holds()).with_csv(csv(&header, &rows))
}

pub fn theorem2(c: Complex, k_set: &[usize], m: usize, qmax: usize, degrees: &[usize], relative: Option<usize>) -> Outcome {
    check_complex(c)?;
    if let Some(i) = relative {
        let cert = relative_cohomology_check(c.n, c.dim, k_set, i, qmax)?;
        let title = format!("N={} D={} relative cohomology of slot {i} modulo K={{{}}}\n", c.n, c.dim, join(k_set));
        return Ok(certificate(title, &cert));
    }
    let cert = if degrees.is_empty() {
        theorem2_all(c.n, c.dim, k_set, m, qmax)?
    } else {
        theorem2_check(c.n, c.dim, k_set, m, degrees, qmax)?
    };
    let title = format!("N={} D={} K={{{}}} m={m}\n", c.n, c.dim, join(k_set));
    Ok(certificate(title, &cert))
}

pub fn green(c: Complex, p: &[usize], qmax: usize) -> Outcome {
    let top = check_complex(c)?;
    let degrees: Vec<usize> = if p.is_empty() { (0..top).collect() } else { p.to_vec() };
    if let Some(&bad) = degrees.iter().find(|&&d| d >= top) {
        return Err(usage(format!("degree {bad}: dF leaves the complex above {}", top - 1)));
    }
    let mut rows = Vec::new();
    let mut blocks = Vec::new();
    for &deg in &degrees {
        for q in 0..=qmax {
            let b = green_factor_block(c.n, c.dim, deg, q)?;
            rows.push(vec![
                deg.to_string(),
                q.to_string(),
                b.tested.to_string(),
                b.factor.clone().unwrap_or_else(|| "-".into()),
                b.equals_first_slot.map_or("-".into(), |x| x.to_string()),
            ]);
            blocks.push(b);
        }
    }
    let header = ["p", "q", "tested", "factor", "dF=d1F"];
    let mut text = format!("N={} D={}: dF = c pi(d_(i+1) F), one c per block\n", c.n, c.dim);
    text.push_str(&table(&header, &rows));
    let value = json!({ "N": c.n, "D": c.dim, "blocks": blocks });
    Ok(Output::check(text, value, true).with_csv(csv(&header, &rows)))
}

pub fn spin2(dim: usize, q: usize, qmax: usize, input: Option<&Path>, seed: u64) -> Outcome {
    if dim < 2 {
        return Err(usage("--D must be at least 2"));
    }
    let start = match input {
        Some(_) => read_field(input)?,
        None => PolyTensorField::random(3, dim, 1, q, Variance::Co, &mut Probe::new(seed))?,
    };
    if start.dim != dim {
        return Err(usage(format!("input has D = {}, expected {dim}", start.dim)));
    }
    let role = match start.degree {
        1 => GaugeRole::Vector,
        2 => GaugeRole::Metric,
        d => return Err(usage(format!("expected a vector potential (degree 1) or a metric (degree 2), got degree {d}"))),
    };
    let mut chain = vec![GaugeField::new(role, start).map_err(|e| usage(e.to_string()))?];
    if role == GaugeRole::Vector {
        chain.push(spin2_d1(&chain[0])?);
    }
    let h = chain.last().expect("nonempty").clone();
    let r = spin2_d2(&h)?;
    let b = spin2_d3(&r)?;
    let constants = spin2_constants(dim)?;
    let complex = spin2_complex_check(dim, qmax)?;
    let seq = sequence_exactness(2, dim, qmax)?;
    let exact = seq.iter().all(|row| row.h_potential == 0 && row.h_curvature == 0);
    let gauge_ok = role != GaugeRole::Vector || r.field.is_zero();
    let bianchi_ok = b.field.is_zero();

    let mut text = format!("D={dim} spin-2 complex\n");
    let _ = writeln!(text, "d1 = {} d, d2 = {} d^2, d3 = {}", constants.d1, constants.d2, constants.d3.as_ref().map_or("0 (above top degree)".into(), |c| format!("{c} d")));
    for g in &chain {
        let _ = writeln!(text, "{:?}: degree {}, polynomial degree {}, {} components", g.role, g.field.degree, g.field.poly_degree, g.field.nnz());
    }
    let _ = writeln!(text, "Curvature: {} components", r.field.nnz());
    if role == GaugeRole::Vector {
        let _ = writeln!(text, "d2 d1 X = 0: {}", verdict(gauge_ok));
    }
    let _ = writeln!(text, "d3 d2 h = 0: {}", verdict(bianchi_ok));
    let _ = writeln!(text, "composites vanish on block bases (q<={}): {}", qmax + 3, verdict(complex));
    let _ = writeln!(text, "sequence exact at potential and curvature (q<={qmax}): {}", verdict(exact));
    let value = json!({
        "D": dim, "seed": seed, "constants": constants,
        "gauge_invariance": gauge_ok, "bianchi": bianchi_ok,
        "complex_on_bases": complex, "sequence": seq,
        "metric": field_to_json(&h.field), "curvature": field_to_json(&r.field),
    });
    Ok(Output::check(text, value, gauge_ok && bianchi_ok && complex && exact))
}

pub fn spin_s(s: usize, dim: usize, qmax: usize) -> Outcome {
    if s == 0 || dim == 0 {
        return Err(usage("--S and --D must be at least 1"));
    }
    let rows = sequence_exactness(s, dim, qmax)?;
    let header = ["q", "H_potential", "H_curvature"];
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| vec![r.q.to_string(), r.h_potential.to_string(), r.h_curvature.to_string()]).collect();
    let mut text = format!("S={s} D={dim}: cohomology of the gauge sequence in the {}-complex\n", s + 1);
    text.push_str(&table(&header, &cells));
    let passed = rows.iter().all(|r| r.h_potential == 0 && r.h_curvature == 0);
    Ok(Output::check(text, json!({ "S": s, "D": dim, "rows": rows }), passed).with_csv(csv(&header, &cells)))
}

pub fn stress_potential(dim: usize, q: usize, input: Option<&Path>, seed: u64) -> Outcome {
    let t = match input {
        Some(_) => read_field(input)?,
        None => {
            if dim < 2 {
                return Err(usage("--D must be at least 2"));
            }
            random_divergence_free(dim, q, &mut Probe::new(seed))?
        }
    };
    let sp = stress_solve(&t)?;
    let mut text = format!("D={} stress tensor, polynomial degree {}, {} components\n", t.dim, t.poly_degree, t.nnz());
    let _ = writeln!(text, "tau: {} components, rho: {} components", sp.tau.nnz(), sp.rho.nnz());
    let _ = writeln!(text, "kappa = {}", sp.kappa);
    let _ = writeln!(text, "R: {} components, residual zero: {}", sp.r.nnz(), sp.residual_zero);
    let value = json!({
        "seed": seed, "kappa": sp.kappa.to_string(), "residual_zero": sp.residual_zero,
        "T": field_to_json(&t), "rho": field_to_json(&sp.rho), "R": field_to_json(&sp.r),
    });
    Ok(Output::check(text, value, sp.residual_zero))
}

pub fn algebra(c: Complex, cap: usize, seed: u64) -> Outcome {
    check_complex(c)?;
    let r = relation_checks(c.n, c.dim, cap, seed)?;
    let opt = |x: Option<usize>| x.map_or("-".into(), |v| v.to_string());
    let header = ["degree", "kernel", "ideal", "cyclic_rank", "schur_dim"];
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![row.degree.to_string(), row.kernel_dim.to_string(), opt(row.ideal_dim), row.cyclic_rank.to_string(), row.schur_dim.to_string()]
        })
        .collect();
    let mut text = format!("N={} D={} degree<={cap} seed={seed}\n", c.n, c.dim);
    let _ = writeln!(text, "a letter repeated N times acts as zero: {}", verdict(r.repeated_letter));
    let _ = writeln!(text, "symmetric tensors of degree N act as zero: {}", verdict(r.symmetric_power));
    if let Some(x) = r.three_relations {
        let _ = writeln!(text, "cyclic and XYXX relations act as zero: {}", verdict(x));
    }
    text.push_str(&table(&header, &rows));
    let value = serde_json::to_value(&r).expect("serializable");
    Ok(Output::check(text, value, r.passed()).with_csv(csv(&header, &rows)))
}

struct Suite {
    results: Vec<(String, Result<bool, String>)>,
}

impl Suite {
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> ncomplex::Result<bool>) {
        self.results.push((name.into(), f().map_err(|e| e.to_string())));
    }
}

fn d_power_vanishes(n: usize, dim: usize, qmax: usize) -> bool {
    (0..=(n - 1) * dim).all(|p| {
        (0..=qmax).all(|q| block::d_power_images(n, dim, p, q, n).iter().all(Vec::is_empty))
    })
}

pub fn verify_all(small: bool, seed: u64) -> Outcome {
    let (orders, dims, qmax, cells): (&[usize], &[usize], usize, usize) =
        if small { (&[2, 3], &[2], 2, 4) } else { (&[2, 3, 4], &[2, 3], 3, 6) };
    let mut s = Suite { results: Vec::new() };
    for &n in orders {
        for &dim in dims {
            s.run(format!("d^N = 0 (N={n}, D={dim})"), || Ok(d_power_vanishes(n, dim, qmax)));
        }
    }
    s.run(format!("Schur dimension equals projector rank (|Y|<={cells}, D<=3)"), || {
        Ok((1..=cells).flat_map(partitions).all(|y| (1..=3).all(|d| projector_rank(&y, d) as u64 == y.schur_dim(d))))
    });
    for &n in orders.iter().filter(|&&n| n >= 3) {
        for &dim in dims {
            s.run(format!("Poincare vanishing (N={n}, D={dim})"), || Ok(poincare_suite(n, dim, 2, qmax)?.passed()));
        }
    }
    s.run("hexagon exact (N=3, D=2, k=l=1)", || Ok(hexagon_check(3, 2, 1, 1, qmax)?.passed()));
    s.run("duality constants exist (N=3, D=2)", || Ok(star_relation_constants(3, 2)?.len() == 4));
    for m in 1..=2 {
        s.run(format!("multiform vanishing (N=3, D=2, K={{1,2}}, m={m})"), || Ok(theorem2_all(3, 2, &[1, 2], m, qmax)?.holds()));
    }
    s.run("green factor consistent per block (N=3, D=2)", || {
        for p in 0..4 {
            for q in 0..=qmax {
                green_factor_block(3, 2, p, q)?;
            }
        }
        Ok(true)
    });
    s.run("kernel of d^k equals common kernel of slot products (N=3, D=2)", || {
        let mut ok = true;
        for p in [2, 4] {
            for k in 1..=2 {
                for q in 0..=qmax {
                    ok &= lemma4_check(3, 2, p, k, q)?.holds();
                }
            }
        }
        Ok(ok)
    });
    for &dim in &[2, 3] {
        s.run(format!("spin-2 complex and sequence exactness (D={dim})"), || {
            let exact = sequence_exactness(2, dim, qmax)?.iter().all(|r| r.h_potential == 0 && r.h_curvature == 0);
            Ok(spin2_complex_check(dim, qmax.min(1))? && exact)
        });
    }
    let trials = if small { 4 } else { 20 };
    s.run(format!("stress potential residual zero ({trials} seeded inputs, D=3)"), || {
        let mut probe = Probe::new(seed);
        for i in 0..trials {
            let t = random_divergence_free(3, i % 3, &mut probe)?;
            if !stress_solve(&t)?.residual_zero {
                return Ok(false);
            }
        }
        Ok(true)
    });
    let cap = if small { 3 } else { 4 };
    for &(n, dim) in &[(2, 2), (3, 2), (4, 2)] {
        s.run(format!("quotient algebra relations (N={n}, D={dim}, degree<={cap})"), || {
            Ok(relation_checks(n, dim, cap, seed)?.passed())
        });
    }

    let mut text = String::new();
    let mut items = Vec::new();
    let mut all = true;
    for (name, r) in &s.results {
        let (ok, note) = match r {
            Ok(b) => (*b, None),
            Err(e) => (false, Some(e.clone())),
        };
        all &= ok;
        let _ = writeln!(text, "{} {name}{}", verdict(ok), note.as_ref().map_or(String::new(), |e| format!(": {e}")));
        items.push(json!({ "check": name, "passed": ok, "error": note }));
    }
    let value: Value = json!({ "small": small, "seed": seed, "checks": items });
    Ok(Output::check(text, value, all))
}
