use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{parse_function_spec, ExperimentConfig, RunOutput, Subcommand, TrialRow};
use crate::boolfn::{
    exact_distance_to_monotone, exact_distance_to_symmetric, fourier_monotonicity_statistic, hamming_distance,
    is_monotone, is_symmetric, is_triangle_free, monotone_violation_probability, symmetry_violation_probability,
    to_hex, total_influence, triangle_density, walsh_transform, BooleanFunction, MAX_MONOTONE_ARITY,
};
use crate::ensembles::{
    build_layer_matching, certify_separation, export_ensemble, sample_mm_pair, sample_set_triple, sample_twin, Matching,
    MmFamily, TripleMode,
};
use crate::error::{Error, Result};
use crate::qstate::RngStream;
use crate::spectra::{
    build_difference_matrix, component_census, distinct_projector_check, helstrom_from_trace_norm, trace_norm,
    trace_norm_closed_form, ClosedFormParams, ThreeFoldMethod,
};
use crate::testers::{
    classical_triangle_baseline, estimate_intersection2, test_mm, test_monotonicity, test_symmetry,
    test_triangle_freeness, witness_rate_bound, MonotonicityParams, SymmetryParams, TesterVerdict, TriangleParams,
};

/// Triangle density is quadratic in the support; skip it above this arity.
const TRIANGLE_ORACLE_MAX_ARITY: usize = 12;

pub(super) fn dispatch(c: &ExperimentConfig) -> Result<RunOutput> {
    match c.subcommand {
        Subcommand::TestMonotonicity => monotonicity(c),
        Subcommand::TestSymmetry => symmetry(c),
        Subcommand::TestTriangleFreeness => triangle(c),
        Subcommand::TestMm => mm_tester(c),
        Subcommand::Intersection2 => intersection2(c),
        Subcommand::TwinSpectrum => twin_spectrum(c),
        Subcommand::ThreeFoldCheck => three_fold(c),
        Subcommand::EnsembleDistinguish => distinguish(c),
        Subcommand::BaselineTriangle => baseline(c),
        Subcommand::Oracle => Ok(RunOutput { rows: Vec::new(), oracle: oracle(&function(c)?), details: json!({}) }),
    }
}

fn function(c: &ExperimentConfig) -> Result<BooleanFunction> {
    let spec = c
        .function
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("function: required by {}", c.subcommand)))?;
    parse_function_spec(spec, c.n)
}

fn trials<F>(c: &ExperimentConfig, run: F) -> Result<Vec<TrialRow>>
where
    F: Fn(u64, RngStream) -> Result<TrialRow> + Sync + Send,
{
    if c.trials == 0 {
        return Err(Error::InvalidParameter("trials: must be positive".into()));
    }
    let tag = c.subcommand.name();
    (0..c.trials).into_par_iter().map(|i| run(i, RngStream::for_trial(c.seed, i, tag))).collect()
}

fn verdict_row(trial: u64, v: &TesterVerdict) -> TrialRow {
    let mut row = TrialRow::new(trial, Some(v.decision.is_accept()), v.statistic, v.copies_used);
    row.values = v.diagnostics.clone();
    row.values.insert("aborted_iterations".into(), v.aborted_iterations as f64);
    row.flags = v.flags.clone();
    row
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serialises")
}

/// Every exact oracle that applies at this arity.
fn oracle(f: &BooleanFunction) -> Value {
    let n = f.arity();
    let sym = exact_distance_to_symmetric(f).expect("any arity");
    let mut o = json!({
        "arity": n,
        "weight": f.count_ones(),
        "is_monotone": is_monotone(f),
        "is_symmetric": is_symmetric(f),
        "monotone_violation_probability": monotone_violation_probability(f),
        "fourier_monotonicity_statistic": fourier_monotonicity_statistic(f),
        "total_influence": total_influence(&walsh_transform(f)),
        "symmetry_violation_probability": symmetry_violation_probability(f),
        "distance_to_symmetric": sym.epsilon,
        "distance_to_symmetric_flips": sym.flips,
    });
    if n >= 2 {
        o["hex"] = json!(to_hex(f));
    }
    if n <= MAX_MONOTONE_ARITY {
        let mono = exact_distance_to_monotone(f).expect("arity checked");
        o["distance_to_monotone"] = json!(mono.epsilon);
        o["distance_to_monotone_flips"] = json!(mono.flips);
    }
    if n <= TRIANGLE_ORACLE_MAX_ARITY {
        o["is_triangle_free"] = json!(is_triangle_free(f));
        o["triangle_density"] = json!(triangle_density(f));
    }
    o
}

fn monotonicity(c: &ExperimentConfig) -> Result<RunOutput> {
    let (eps, delta) = (c.need(c.epsilon, "epsilon")?, c.need(c.delta, "delta")?);
    let f = function(c)?;
    let params = MonotonicityParams::new(f.arity(), eps, delta)?;
    let rows = trials(c, |i, mut rng| Ok(verdict_row(i, &test_monotonicity(&f, eps, delta, &mut rng)?)))?;
    Ok(RunOutput {
        rows,
        oracle: oracle(&f),
        details: json!({ "params": to_value(&params), "closed_form_copies": params.copies() }),
    })
}

fn symmetry(c: &ExperimentConfig) -> Result<RunOutput> {
    let (eps, delta) = (c.need(c.epsilon, "epsilon")?, c.need(c.delta, "delta")?);
    let f = function(c)?;
    let params = SymmetryParams::new(eps, delta)?;
    let rows = trials(c, |i, mut rng| Ok(verdict_row(i, &test_symmetry(&f, eps, delta, &mut rng)?)))?;
    Ok(RunOutput { rows, oracle: oracle(&f), details: json!({ "params": to_value(&params) }) })
}

fn triangle(c: &ExperimentConfig) -> Result<RunOutput> {
    let (eps, delta) = (c.need(c.epsilon, "epsilon")?, c.need(c.delta, "delta")?);
    let params = TriangleParams::with_eta(eps, delta, c.eta.unwrap_or(eps))?;
    let f = function(c)?;
    let rows = trials(c, |i, mut rng| Ok(verdict_row(i, &test_triangle_freeness(&f, &params, &mut rng)?)))?;
    Ok(RunOutput {
        rows,
        oracle: oracle(&f),
        details: json!({ "params": to_value(&params), "theorem_copies": params.theorem_copies() }),
    })
}

fn mm_family(c: &ExperimentConfig) -> Result<MmFamily> {
    match c.family.as_deref().unwrap_or("mm") {
        "mm" => Ok(MmFamily::F1),
        "mm_dual" => Ok(MmFamily::F2),
        other => Err(Error::InvalidParameter(format!("family: `{other}` is not mm or mm_dual"))),
    }
}

/// A fixed `--function`, or a fresh `mm(h)` / `mm_dual(h)` per trial.
fn mm_tester(c: &ExperimentConfig) -> Result<RunOutput> {
    let delta = c.need(c.delta, "delta")?;
    if c.function.is_some() {
        let f = function(c)?;
        if f.arity() % 2 != 0 {
            return Err(Error::Arity(format!("test-mm needs an even arity, got {}", f.arity())));
        }
        let rows = trials(c, |i, mut rng| Ok(verdict_row(i, &test_mm(&f, delta, &mut rng)?)))?;
        return Ok(RunOutput { rows, oracle: json!({ "arity": f.arity() }), details: json!({}) });
    }
    let n = c.need(c.n, "n")?;
    let family = mm_family(c)?;
    let rows = trials(c, |i, mut rng| {
        let sample = sample_mm_pair(n, family, &mut rng.fork("instance"))?;
        let v = test_mm(&sample.function, delta, &mut rng)?;
        Ok(verdict_row(i, &v)
            .with("h_bias", sample.bias)
            .with("h_weight", sample.h.count_ones() as f64)
            .with("h_draws", sample.draws as f64))
    })?;
    Ok(RunOutput { rows, oracle: json!({}), details: json!({ "family": to_value(&family), "h_arity": n }) })
}

fn uniform_set(n: usize, rng: &mut RngStream) -> Result<BooleanFunction> {
    BooleanFunction::from_fn(n, |_| rng.random_bool(0.5))
}

/// `|A ∩ B|/2^n` read off a pair encoding.
fn pair_intersection(f: &BooleanFunction) -> f64 {
    let half = f.len() as u32 / 2;
    (0..half).filter(|&x| f.get(x << 1) && f.get(x << 1 | 1)).count() as f64 / half as f64
}

/// A fixed pair encoding, or uniform `(A, B)` on `n` bits per trial.
/// `accept` records whether the estimate is within `ε` of the exact value.
fn intersection2(c: &ExperimentConfig) -> Result<RunOutput> {
    let (eps, delta) = (c.need(c.epsilon, "epsilon")?, c.need(c.delta, "delta")?);
    let fixed = match &c.function {
        Some(_) => Some(function(c)?),
        None => {
            c.need(c.n, "n")?;
            None
        }
    };
    let rows = trials(c, |i, mut rng| {
        let f = match &fixed {
            Some(f) => f.clone(),
            None => {
                let mut inst = rng.fork("instance");
                let n = c.n.expect("checked");
                let a = uniform_set(n, &mut inst)?;
                let b = uniform_set(n, &mut inst)?;
                crate::boolfn::pair(&a, &b)?
            }
        };
        let exact = pair_intersection(&f);
        let est = estimate_intersection2(&f, eps, delta, &mut rng)?;
        let error = est.estimate - exact;
        Ok(TrialRow::new(i, Some(error.abs() <= eps), est.estimate, est.copies_used)
            .with("exact", exact)
            .with("error", error)
            .with("inf_hat", est.inf_hat)
            .with("a_hat", est.a_hat)
            .with("b_hat", est.b_hat))
    })?;
    let oracle = fixed.as_ref().map_or(json!({}), |f| json!({ "intersection_density": pair_intersection(f) }));
    Ok(RunOutput { rows, oracle, details: json!({ "tolerance": eps }) })
}

fn matching(c: &ExperimentConfig) -> Result<Matching> {
    let n = c.need(c.n, "n")?;
    let m = c.need(c.m, "m")?;
    build_layer_matching(n, m, &mut RngStream::for_trial(c.seed, 0, "matching"))
}

fn fits(n: usize, t: usize, cap: usize) -> bool {
    n * t < usize::BITS as usize - 1 && (1usize << (n * t)) <= cap
}

/// Closed-form trace norms for `t' = 1..=t`, one row each, and at `t` the
/// brute-force comparison plus component census when `2^{nt}` fits the cap.
fn twin_spectrum(c: &ExperimentConfig) -> Result<RunOutput> {
    let t = c.need(c.t, "t")?;
    let m = matching(c)?;
    let n = m.n();
    let base = ClosedFormParams::new(n, t, m.achieved_m())?;
    let mut rows = Vec::with_capacity(t);
    for tt in 1..=t {
        let cf = trace_norm_closed_form(&base.with_t(tt))?;
        rows.push(
            TrialRow::new(tt as u64 - 1, None, cf.total, 0)
                .with("t", tt as f64)
                .with("empty_type_term", cf.empty_type_term)
                .with("star_term", cf.star_term)
                .with("helstrom", helstrom_from_trace_norm(cf.total)),
        );
    }
    let closed = rows[t - 1].statistic;
    let brute = if fits(n, t, c.dim_cap) {
        let norm = trace_norm(&build_difference_matrix(&m, t, c.dim_cap)?)?;
        let census = component_census(&m, t, c.dim_cap)?;
        json!({
            "trace_norm": norm,
            "closed_form": closed,
            "agreement": (norm - closed).abs(),
            "census": to_value(&census),
        })
    } else {
        json!({ "skipped": format!("2^{} exceeds the dimension cap {}", n * t, c.dim_cap) })
    };
    Ok(RunOutput {
        rows,
        oracle: json!({}),
        details: json!({
            "matching": m.pairs(),
            "achieved_m": m.achieved_m(),
            "epsilon": m.epsilon(),
            "brute_force": brute,
        }),
    })
}

/// Literal enumeration for `n ≤ 2`, the exact factorisation above.
fn three_fold(c: &ExperimentConfig) -> Result<RunOutput> {
    let (n, t) = (c.need(c.n, "n")?, c.need(c.t, "t")?);
    let method = if n <= 2 { ThreeFoldMethod::Enumeration } else { ThreeFoldMethod::Factorized };
    let report = distinct_projector_check(n, t, method, c.dim_cap)?;
    let row = TrialRow::new(0, Some(report.trace_norm <= report.bound + 1e-6), report.trace_norm, 0)
        .with("bound", report.bound)
        .with("max_projected_deviation", report.max_projected_deviation);
    Ok(RunOutput {
        rows: vec![row],
        oracle: json!({}),
        details: json!({ "report": to_value(&report), "ratio_to_bound": report.trace_norm / report.bound }),
    })
}

fn export_pair(
    c: &ExperimentConfig,
    stems: [&str; 2],
    sides: [&[BooleanFunction]; 2],
    parameters: Value,
    certifications: Value,
) -> Result<Value> {
    let Some(dir) = &c.export else { return Ok(Value::Null) };
    let mut paths = Vec::new();
    for (stem, members) in stems.into_iter().zip(sides) {
        let (hex, meta) =
            export_ensemble(dir, stem, members, stem, c.seed, parameters.clone(), certifications.clone())?;
        paths.push(hex.display().to_string());
        paths.push(meta.display().to_string());
    }
    Ok(json!(paths))
}

/// Samples `trials` members from each side of a hard-instance family and
/// certifies their separation. Each row pairs the two members drawn on that
/// trial; its statistic is their normalised distance.
fn distinguish(c: &ExperimentConfig) -> Result<RunOutput> {
    match c.family.as_deref() {
        Some("twin") => distinguish_twin(c),
        Some("mm") => distinguish_mm(c),
        Some("triple") => distinguish_triple(c),
        Some(other) => Err(Error::InvalidParameter(format!("family: `{other}` is not twin, mm or triple"))),
        None => Err(Error::InvalidParameter("family: required by ensemble-distinguish".into())),
    }
}

fn normalised_distance(f: &BooleanFunction, g: &BooleanFunction) -> Result<f64> {
    Ok(hamming_distance(f, g)? as f64 / f.len() as f64)
}

type Sampled = (TrialRow, BooleanFunction, BooleanFunction);

fn collect_sides(c: &ExperimentConfig, draw: impl Fn(u64, RngStream) -> Result<Sampled> + Sync + Send) -> Result<(Vec<TrialRow>, Vec<BooleanFunction>, Vec<BooleanFunction>)> {
    if c.trials == 0 {
        return Err(Error::InvalidParameter("trials: must be positive".into()));
    }
    let tag = c.subcommand.name();
    let drawn: Vec<Sampled> =
        (0..c.trials).into_par_iter().map(|i| draw(i, RngStream::for_trial(c.seed, i, tag))).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(drawn.len());
    let (mut f0, mut f1) = (Vec::new(), Vec::new());
    for (row, a, b) in drawn {
        rows.push(row);
        f0.push(a);
        f1.push(b);
    }
    Ok((rows, f0, f1))
}

/// Variant 0 is monotone; variant 1 is exactly `|A|/2^n`-far from monotone.
fn distinguish_twin(c: &ExperimentConfig) -> Result<RunOutput> {
    let m = matching(c)?;
    let n = m.n();
    let len = (1u64 << n) as f64;
    let (rows, f0, f1) = collect_sides(c, |i, rng| {
        let a = sample_twin(&m, 0, &mut rng.fork("variant0"))?;
        let b = sample_twin(&m, 1, &mut rng.fork("variant1"))?;
        let far = b.violating_pairs() as f64 / len;
        let mut row = TrialRow::new(i, None, far, 0)
            .with("distance", normalised_distance(&a.base, &b.base)?)
            .with("variant0_monotone", is_monotone(&a.base) as u8 as f64)
            .with("variant1_a_size", b.a_size() as f64);
        if n <= MAX_MONOTONE_ARITY {
            row = row.with("variant1_exact_distance", exact_distance_to_monotone(&b.base)?.epsilon);
        }
        Ok((row, a.base, b.base))
    })?;
    let separation = certify_separation(&f0, &f1)?;
    let mut details = json!({
        "family": "twin",
        "matching": m.pairs(),
        "achieved_m": m.achieved_m(),
        "epsilon": m.epsilon(),
        "min_separation": separation,
    });
    if let Some(t) = c.t {
        let cf = trace_norm_closed_form(&ClosedFormParams::new(n, t, m.achieved_m())?)?;
        details["t"] = json!(t);
        details["trace_norm"] = json!(cf.total);
        details["helstrom"] = json!(helstrom_from_trace_norm(cf.total));
    }
    let params = json!({ "n": n, "m": m.achieved_m(), "matching": m.pairs() });
    details["exported"] =
        export_pair(c, ["twin_variant0", "twin_variant1"], [&f0, &f1], params, json!({ "min_separation": separation }))?;
    Ok(RunOutput { rows, oracle: json!({}), details })
}

fn distinguish_mm(c: &ExperimentConfig) -> Result<RunOutput> {
    let n = c.need(c.n, "n")?;
    let (rows, f0, f1) = collect_sides(c, |i, rng| {
        let a = sample_mm_pair(n, MmFamily::F1, &mut rng.fork("f1"))?;
        let b = sample_mm_pair(n, MmFamily::F2, &mut rng.fork("f2"))?;
        let row = TrialRow::new(i, None, normalised_distance(&a.function, &b.function)?, 0)
            .with("f1_bias", a.bias)
            .with("f2_bias", b.bias);
        Ok((row, a.function, b.function))
    })?;
    let separation = certify_separation(&f0, &f1)?;
    let mut details = json!({ "family": "mm", "h_arity": n, "min_separation": separation });
    details["exported"] =
        export_pair(c, ["mm_f1", "mm_f2"], [&f0, &f1], json!({ "n": n }), json!({ "min_separation": separation }))?;
    Ok(RunOutput { rows, oracle: json!({}), details })
}

fn distinguish_triple(c: &ExperimentConfig) -> Result<RunOutput> {
    let n = c.need(c.n, "n")?;
    let (rows, f0, f1) = collect_sides(c, |i, rng| {
        let a = sample_set_triple(n, TripleMode::Independent, &mut rng.fork("independent"))?;
        let b = sample_set_triple(n, TripleMode::Xor, &mut rng.fork("xor"))?;
        let (fa, fb) = (a.function()?, b.function()?);
        let row = TrialRow::new(i, None, normalised_distance(&fa, &fb)?, 0)
            .with("independent_intersection", a.intersection_density())
            .with("xor_intersection", b.intersection_density());
        Ok((row, fa, fb))
    })?;
    let separation = certify_separation(&f0, &f1)?;
    let mut details = json!({ "family": "triple", "n": n, "min_separation": separation });
    details["exported"] = export_pair(
        c,
        ["triple_independent", "triple_xor"],
        [&f0, &f1],
        json!({ "n": n }),
        json!({ "min_separation": separation }),
    )?;
    Ok(RunOutput { rows, oracle: json!({}), details })
}

/// Witness counts over `trials` runs of `q` samples, against the union
/// bound `q³/2^n` and its 3σ binomial slack.
fn baseline(c: &ExperimentConfig) -> Result<RunOutput> {
    let q = c.need(c.q, "q")?;
    let f = function(c)?;
    let rows = trials(c, |i, mut rng| {
        let count = classical_triangle_baseline(&f, q, &mut rng)?;
        Ok(TrialRow::new(i, None, count as f64, q as u64).with("witness", (count > 0) as u8 as f64))
    })?;
    let witnessed = rows.iter().filter(|r| r.statistic > 0.0).count() as f64;
    let rate = witnessed / rows.len() as f64;
    let bound = witness_rate_bound(f.arity(), q);
    let p = bound.min(1.0);
    let sigma = (p * (1.0 - p) / rows.len() as f64).sqrt();
    Ok(RunOutput {
        rows,
        oracle: json!({}),
        details: json!({
            "q": q,
            "witness_rate": rate,
            "union_bound": bound,
            "sigma": sigma,
            "within_bound": rate <= bound + 3.0 * sigma,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::run;

    fn cfg(sub: Subcommand) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(sub);
        c.delta = Some(0.1);
        c
    }

    #[test]
    fn three_fold_t1_is_zero() {
        let mut c = cfg(Subcommand::ThreeFoldCheck);
        (c.n, c.t) = (Some(2), Some(1));
        let r = run(&c).unwrap();
        assert_eq!(r.rows[0].statistic, 0.0);
        assert_eq!(r.rows[0].accept, Some(true));
    }

    #[test]
    fn twin_spectrum_agrees() {
        let mut c = cfg(Subcommand::TwinSpectrum);
        (c.n, c.m, c.t) = (Some(3), Some(2), Some(2));
        let r = run(&c).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.details["brute_force"]["agreement"].as_f64().unwrap() <= 1e-8);
        c.dim_cap = 8;
        let r = run(&c).unwrap();
        assert!(r.details["brute_force"]["skipped"].is_string());
    }

    #[test]
    fn oracle_for_antidictator() {
        let mut c = cfg(Subcommand::Oracle);
        (c.function, c.n) = (Some("antidictator".into()), Some(3));
        let r = run(&c).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.oracle["distance_to_monotone"], json!(0.5));
        assert_eq!(r.oracle["is_symmetric"], json!(false));
    }

    #[test]
    fn intersection_rows_carry_exact_values() {
        let mut c = cfg(Subcommand::Intersection2);
        (c.n, c.epsilon, c.trials) = (Some(5), Some(0.2), 4);
        let r = run(&c).unwrap();
        for row in &r.rows {
            let exact = row.values["exact"];
            assert!((0.0..=1.0).contains(&exact));
            assert_eq!(row.accept, Some((row.statistic - exact).abs() <= 0.2));
        }
    }

    #[test]
    fn distinguish_families() {
        let mut c = cfg(Subcommand::EnsembleDistinguish);
        (c.n, c.m, c.trials, c.t) = (Some(4), Some(2), 3, Some(2));
        c.family = Some("twin".into());
        let r = run(&c).unwrap();
        for row in &r.rows {
            assert_eq!(row.values["variant0_monotone"], 1.0);
            assert_eq!(row.values["variant1_exact_distance"], row.statistic);
        }
        c.family = Some("mm".into());
        c.n = Some(3);
        assert!(run(&c).unwrap().details["min_separation"].as_f64().unwrap() > 0.0);
        c.family = Some("triple".into());
        run(&c).unwrap();
        c.family = Some("nope".into());
        assert!(matches!(run(&c), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn export_writes_both_sides() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = cfg(Subcommand::EnsembleDistinguish);
        (c.n, c.trials) = (Some(3), 2);
        c.family = Some("mm".into());
        c.export = Some(dir.path().to_path_buf());
        run(&c).unwrap();
        let (members, side) = crate::ensembles::read_ensemble(dir.path(), "mm_f2").unwrap();
        assert_eq!((members.len(), side.arity), (2, 6));
    }

    #[test]
    fn baseline_on_constant_one() {
        let mut c = cfg(Subcommand::BaselineTriangle);
        (c.function, c.n, c.q, c.trials) = (Some("constant1".into()), Some(9), Some(8), 50);
        let r = run(&c).unwrap();
        assert!(r.details["within_bound"].as_bool().unwrap());
        assert_eq!(r.aggregates.total_copies, 400);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let mut c = cfg(Subcommand::TestSymmetry);
        (c.function, c.n, c.epsilon, c.trials, c.seed) = (Some("majority".into()), Some(6), Some(0.3), 16, 9);
        let parallel = run(&c).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| run(&c).unwrap());
        assert_eq!(parallel.canonical_json().unwrap(), single.canonical_json().unwrap());
    }

    #[test]
    fn missing_fields_are_named() {
        let c = cfg(Subcommand::TwinSpectrum);
        match run(&c) {
            Err(Error::InvalidParameter(msg)) => assert!(msg.starts_with("t:"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let mut c = cfg(Subcommand::TestMm);
        c.n = Some(3);
        c.family = Some("bent".into());
        assert!(matches!(run(&c), Err(Error::InvalidParameter(m)) if m.starts_with("family")));
    }
}
