use std::fs;
use std::io::Read as _;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde_json::{json, Value};

use minrank_lab::algebra::{
    mat_rank, parse_rational, real_rank, AlgebraError, AnyMatrix, Field, Matrix, PrimeField, Rationals,
};
use minrank_lab::bounds::{envelope, union_bound_log, BoundParams, BoundsError};
use minrank_lab::experiment::{run_experiment, ExperimentConfig, ExperimentError, ReportFormat};
use minrank_lab::geom::{
    pgraph_factorize, pgraph_matrix, regular_simplex, touching_spheres_matrix, unit_distance_matrix,
    unit_distance_points, GeomError, PointConfig, SphereConfig,
};
use minrank_lab::graph::{clique_cover_exact, complement, gnp, Graph, GraphError, SplitMix64};
use minrank_lab::minrank::{minrank_exact, Certificate, MinrankError};
use minrank_lab::pattern::{
    find_nks_principal_submatrix, nks_census, nks_witness, rbg_bound, zero_patterns_of_family, MultiPoly,
    PatternError,
};

use crate::{
    BoundsArgs, Command, ExperimentArgs, GenArgs, GeomCommand, MinrankArgs, Output, PatternsCommand,
};

/// A command failure and the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1.
    Invalid(anyhow::Error),
    /// Exit 2: size limit or node budget.
    Limit(anyhow::Error),
    /// Exit 3: a check failed or a lemma produced a counterexample.
    Check(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Limit(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Invalid(e) | Failure::Limit(e) | Failure::Check(e) => e,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::InstanceTooLarge { .. } => Failure::Limit(e.into()),
            _ => Failure::Invalid(e.into()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Invalid(e.into())
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        Failure::Invalid(e.into())
    }
}

impl From<MinrankError> for Failure {
    fn from(e: MinrankError) -> Self {
        match e {
            MinrankError::TooLarge { .. } | MinrankError::Undecided { .. } => Failure::Limit(e.into()),
            MinrankError::Graph(g) => g.into(),
            _ => Failure::Invalid(e.into()),
        }
    }
}

impl From<PatternError> for Failure {
    fn from(e: PatternError) -> Self {
        match e {
            PatternError::LimitExceeded { .. } => Failure::Limit(e.into()),
            PatternError::LemmaCounterexample { .. } => Failure::Check(e.into()),
            _ => Failure::Invalid(e.into()),
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Graph(g) => g.into(),
            GeomError::Pattern(p) => p.into(),
            GeomError::IdentityFailed => Failure::Check(e.into()),
            _ => Failure::Invalid(e.into()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Minrank(m) => m.into(),
            _ => Failure::Invalid(e.into()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn emit_text(out: &Output, text: &str) -> Outcome {
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit(out: &Output, v: &Value) -> Outcome {
    let mut s = serde_json::to_string(v).expect("plain data");
    s.push('\n');
    emit_text(out, &s)
}

fn prime(q: u32) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(q)?)
}

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Minrank(a) => minrank(a),
        Command::Verify(a) => verify(&a.certificate),
        Command::Bounds(a) => bounds(a),
        Command::Experiment(a) => experiment(a),
        Command::Patterns(c) => patterns(c),
        Command::Geom(c) => geom(c),
    }
}

fn gen(a: GenArgs) -> Outcome {
    emit(&a.output, &gnp(a.n, a.p, a.seed)?.to_json())
}

fn minrank(a: MinrankArgs) -> Outcome {
    let g = match (&a.graph, a.n, a.p) {
        (Some(path), _, _) => Graph::from_json(&read_json(path)?)?,
        (None, Some(n), Some(p)) => gnp(n, p, a.seed)?,
        _ => return Err(anyhow!("give a graph file or --n and --p").into()),
    };
    let field = prime(a.field)?;
    let r = minrank_exact(&g, field, a.budget)?;
    let cert = Certificate::from_result(&g, &r);
    let report = json!({
        "field": format!("gf:{}", a.field),
        "status": if r.is_exact() { "exact" } else { "undecided" },
        "minrank": r.value,
        "bracket": [r.bracket.0, r.bracket.1],
        "alpha": r.alpha,
        "clique_cover": r.clique_cover,
        "nodes": r.nodes,
        "certificate": cert.map(|c| c.to_json()),
    });
    emit(&a.output, &report)?;
    if !r.is_exact() {
        return Err(Failure::Limit(anyhow!(
            "budget of {} nodes exhausted; minrank in [{}, {}]",
            a.budget,
            r.bracket.0,
            r.bracket.1
        )));
    }
    Ok(())
}

fn verify(path: &Path) -> Outcome {
    let v = read_json(path)?;
    // accept a bare certificate or the output of `minrank`
    let cert_json = v.get("certificate").unwrap_or(&v);
    let cert = Certificate::from_json(cert_json)?;
    let ok = cert.verify()?;
    println!("{}", json!({ "valid": ok, "claimed_rank": cert.claimed_rank }));
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(anyhow!("certificate does not verify")))
    }
}

fn bounds(a: BoundsArgs) -> Outcome {
    let (threshold, scale) = envelope(a.n, a.p)?;
    let k = a.k.unwrap_or_else(|| (threshold.floor() as u64).clamp(1, a.n));
    let params = BoundParams::new(a.n, a.p, k)?;
    // p = 1 has no union bound; report null rather than fail
    let log_union_bound = if a.p < 1.0 {
        Some(union_bound_log(&params)?)
    } else {
        None
    };
    emit(
        &a.output,
        &json!({
            "n": a.n,
            "p": a.p,
            "k": k,
            "threshold": threshold,
            "log_union_bound": log_union_bound,
            "reference_scale": scale,
        }),
    )
}

fn experiment(a: ExperimentArgs) -> Outcome {
    let format: ReportFormat = a.format.parse()?;
    let cfg = ExperimentConfig {
        n_list: a.n_list,
        p_list: a.p_list,
        trials: a.trials,
        seed: a.seed,
        field: prime(a.field)?,
        budget: a.budget,
        threads: a.threads,
    };
    let report = run_experiment(&cfg)?;
    emit_text(&a.output, &report.render(format))?;
    let undecided = report.undecided();
    if undecided > 0 {
        eprintln!(
            "{undecided} of {} trials undecided within budget",
            report.rows.len()
        );
    }
    Ok(())
}

fn polys_from_json(field: PrimeField, v: &Value) -> Result<Vec<MultiPoly<u32>>, Failure> {
    let list = v
        .as_array()
        .or_else(|| v.get("polys").and_then(Value::as_array))
        .ok_or_else(|| anyhow!("expected a list of polynomials"))?;
    Ok(list
        .iter()
        .map(|p| MultiPoly::from_json(&field, p))
        .collect::<Result<Vec<_>, _>>()?)
}

/// A random n x n GF(q) matrix of rank exactly `r`, as a product of
/// random `n x r` and `r x n` factors resampled until the rank is full.
fn random_rank_matrix(field: PrimeField, n: usize, r: usize, seed: u64) -> Matrix<u32> {
    let mut rng = SplitMix64::new(seed);
    let q = field.modulus() as u64;
    loop {
        let mut draw = |rows, cols| Matrix::from_fn(rows, cols, |_, _| (rng.next_u64() % q) as u32);
        let a = draw(n, r);
        let b = draw(r, n);
        let m = a.mul(&field, &b).expect("shapes agree");
        if mat_rank(&field, &m) == r {
            return m;
        }
    }
}

fn witness_json<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Value, Failure> {
    Ok(json!({ "witness": nks_witness(field, m)? }))
}

fn lemma22_json<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Value, Failure> {
    let (subset, w) = find_nks_principal_submatrix(field, m)?;
    Ok(json!({
        "n": m.n_rows(),
        "rank": mat_rank(field, m),
        "subset": subset,
        "witness": w,
    }))
}

fn patterns(c: PatternsCommand) -> Outcome {
    match c {
        PatternsCommand::Rbg { polys, field, output } => {
            let field = prime(field)?;
            let family = polys_from_json(field, &read_json(&polys)?)?;
            let pats = zero_patterns_of_family(&family, field)?;
            let m = family.len() as u64;
            let d = family.iter().map(|p| p.degree()).max().unwrap_or(0) as u64;
            let nv = family.first().map_or(0, |p| p.num_vars()) as u64;
            let bound = rbg_bound(m, d, nv);
            let count = pats.len();
            emit(
                &output,
                &json!({
                    "m": m,
                    "d": d,
                    "num_vars": nv,
                    "field": format!("gf:{}", field.modulus()),
                    "count": count,
                    "bound": bound.to_string(),
                    "within_bound": bound >= (count as u64).into(),
                    "patterns": pats.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                }),
            )
        }
        PatternsCommand::NksWitness { matrix, output } => {
            let v = match AnyMatrix::from_json(&read_json(&matrix)?)? {
                AnyMatrix::Prime(f, m) => witness_json(&f, &m)?,
                AnyMatrix::Rational(m) => witness_json(&Rationals, &m)?,
                AnyMatrix::Float(_) => return Err(anyhow!("witness search needs an exact matrix").into()),
            };
            emit(&output, &v)
        }
        PatternsCommand::NksCensus { n, field, output } => {
            let entries = nks_census(n, prime(field)?)?;
            let violations = entries.iter().filter(|e| !e.within_bound()).count();
            emit(&output, &json!(entries))?;
            if violations > 0 {
                return Err(Failure::Check(anyhow!(
                    "{violations} census entries exceed the bound"
                )));
            }
            Ok(())
        }
        PatternsCommand::Lemma22 {
            matrix,
            n,
            rank,
            seed,
            field,
            output,
        } => {
            let v = match (matrix, n, rank) {
                (Some(path), _, _) => match AnyMatrix::from_json(&read_json(&path)?)? {
                    AnyMatrix::Prime(f, m) => lemma22_json(&f, &m)?,
                    AnyMatrix::Rational(m) => lemma22_json(&Rationals, &m)?,
                    AnyMatrix::Float(_) => return Err(anyhow!("lemma search needs an exact matrix").into()),
                },
                (None, Some(n), Some(r)) => {
                    if r == 0 || r > n {
                        return Err(anyhow!("--rank must be in 1..={n}").into());
                    }
                    if n > minrank_lab::pattern::DEFAULT_PRINCIPAL_LIMIT {
                        return Err(PatternError::LimitExceeded {
                            size: n as u128,
                            limit: minrank_lab::pattern::DEFAULT_PRINCIPAL_LIMIT as u128,
                        }
                        .into());
                    }
                    let f = prime(field)?;
                    let m = random_rank_matrix(f, n, r, seed);
                    let mut v = lemma22_json(&f, &m)?;
                    v["matrix"] = AnyMatrix::Prime(f, m).to_json();
                    v
                }
                _ => return Err(anyhow!("give a matrix file or --n and --rank").into()),
            };
            emit(&output, &v)
        }
    }
}

fn rank_report(m: Matrix<f64>, dim: usize, bound: usize, tol: f64) -> Result<(Value, bool), Failure> {
    let rank = real_rank(&m, tol)?;
    let v = json!({
        "n": m.n_rows(),
        "dim": dim,
        "rank": rank,
        "bound": bound,
        "within_bound": rank <= bound,
        "matrix": AnyMatrix::Float(m).to_json(),
    });
    Ok((v, rank <= bound))
}

fn finish_rank(output: &Output, v: Value, ok: bool) -> Outcome {
    emit(output, &v)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(anyhow!(
            "rank {} exceeds {}",
            v["rank"],
            v["bound"]
        )))
    }
}

fn parse_points<F: Field>(field: &F, v: &Value) -> Result<Vec<Vec<F::Elem>>, Failure> {
    let rows = v.as_array().ok_or_else(|| anyhow!("expected a list of points"))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Failure::from(anyhow!("point is not a list")))?
                .iter()
                .map(|x| Ok(field.from_rational(&parse_rational(x)?)?))
                .collect()
        })
        .collect()
}

fn pgraph_json<F: Field>(
    field: &F,
    poly: &Value,
    d: usize,
    reps: Option<&Value>,
    domain: String,
) -> Result<Value, Failure> {
    let p = MultiPoly::from_json(field, poly)?;
    let fact = pgraph_factorize(field, &p, d)?;
    let mut v = json!({
        "d": d,
        "len": fact.len(),
        "effective_len": fact.effective_len(),
        "factorization": fact.to_json(field),
    });
    if let Some(reps) = reps {
        let pts = parse_points(field, reps)?;
        let m = pgraph_matrix(field, &fact, &pts)?;
        v["rank"] = json!(mat_rank(field, &m));
        v["matrix"] = json!({
            "domain": domain,
            "rows": m.to_rows().iter().map(|r| r.iter().map(|x| field.elem_to_json(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
    }
    Ok(v)
}

fn geom(c: GeomCommand) -> Outcome {
    match c {
        GeomCommand::Simplex { d, output } => {
            let s = regular_simplex(d);
            let mut worst: f64 = 0.0;
            for (i, a) in s.points.iter().enumerate() {
                for b in &s.points[i + 1..] {
                    let dist: f64 = a
                        .iter()
                        .zip(b)
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt();
                    worst = worst.max((dist - 1.0).abs());
                }
            }
            let mut v = s.to_json();
            v["max_distance_error"] = json!(worst);
            emit(&output, &v)
        }
        GeomCommand::UnitDistance {
            config,
            n,
            p,
            seed,
            tol,
            output,
        } => {
            let (pts, graph) = match (config, n, p) {
                (Some(path), _, _) => (PointConfig::from_json(&read_json(&path)?)?, None),
                (None, Some(n), Some(p)) => {
                    let g = gnp(n, p, seed)?;
                    let (_, coloring) = clique_cover_exact(&complement(&g))?;
                    (unit_distance_points(&g, &coloring)?, Some(g))
                }
                _ => return Err(anyhow!("give a config file or --n and --p").into()),
            };
            let parts = unit_distance_matrix(&pts);
            let (mut v, ok) = rank_report(parts.m, pts.dim, pts.dim + 2, tol)?;
            if let Some(g) = graph {
                v["graph"] = g.to_json();
                v["points"] = pts.to_json();
            }
            finish_rank(&output, v, ok)
        }
        GeomCommand::Spheres { config, tol, output } => {
            let cfg = SphereConfig::from_json(&read_json(&config)?)?;
            let parts = touching_spheres_matrix(&cfg);
            let (v, ok) = rank_report(parts.m, cfg.dim, cfg.dim + 3, tol)?;
            finish_rank(&output, v, ok)
        }
        GeomCommand::Pgraph {
            poly,
            d,
            field,
            reps,
            output,
        } => {
            let poly = read_json(&poly)?;
            let reps = reps.map(|r| read_json(&r)).transpose()?;
            let v = if field == "rational" {
                pgraph_json(&Rationals, &poly, d, reps.as_ref(), "rational".into())?
            } else {
                let q: u32 = field
                    .strip_prefix("gf:")
                    .unwrap_or(&field)
                    .parse()
                    .map_err(|_| anyhow!("--field must be `rational` or a prime, got {field:?}"))?;
                pgraph_json(&prime(q)?, &poly, d, reps.as_ref(), format!("gf:{q}"))?
            };
            emit(&output, &v)
        }
    }
}
