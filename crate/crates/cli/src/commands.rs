use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};

use hlya::constructions::{self, ConstructionError};
use hlya::corpus::{self, CorpusError, CorpusSpec};
use hlya::document;
use hlya::fixtures;
use hlya::isoclinism::decompose::{decompose_stem_abelian, DecomposeError};
use hlya::isoclinism::search::{search_isoclinism, SearchBudget, SearchError};
use hlya::isoclinism::{verify_isoclinism, IsoclinismError};
use hlya::linalg::Vector;
use hlya::{subobjects, Field, HlyAlgebra, Scalar, Subspace};

use crate::certificate::{pretty, read_file, CliError, Run, Verdict};
use crate::{FactorSetArgs, FixtureAction, IsoclinicArgs};

struct Loaded {
    algebra: HlyAlgebra,
    metadata: Option<Value>,
}

fn load_algebra(run: &mut Run, arg: &str) -> Result<Loaded, CliError> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        let algebra = fixtures::fixture(name)
            .ok_or_else(|| CliError::new(format!("unknown fixture `{name}`; known: {}", fixtures::NAMES.join(", "))))?;
        let metadata = Some(fixtures::metadata(name));
        let text = pretty(&document::algebra_to_value(&algebra, metadata.clone()));
        run.input(arg, text.as_bytes());
        return Ok(Loaded { algebra, metadata });
    }
    let bytes = read_file(arg)?;
    run.input(arg, &bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::new(format!("{arg}: not UTF-8: {e}")))?;
    let (algebra, metadata) = document::parse_algebra(&text).map_err(|e| CliError::new(format!("{arg}: {e}")))?;
    Ok(Loaded { algebra, metadata })
}

fn subspace_summary(s: &Subspace) -> Value {
    s.to_json()
}

fn check_results(run: &mut Run, a: &HlyAlgebra) {
    let report = a.check_axioms();
    let center = subobjects::center(a);
    let derived = subobjects::derived(a);
    run.set("dim", json!(a.dim()));
    run.set("field", json!(a.field()));
    run.set("axioms", report.to_json());
    run.set("center", subspace_summary(&center));
    run.set("derived", subspace_summary(&derived));
    run.set("stem", json!(subobjects::is_stem(a)));
    if !report.all_pass() {
        run.verdict(Verdict::Fail);
    }
}

pub fn check(algebra: Option<String>, fixture: Option<String>) -> Result<Run, CliError> {
    let arg = match (algebra, fixture) {
        (_, Some(name)) => format!("fixture:{name}"),
        (Some(path), None) => path,
        (None, None) => return Err(CliError::new("check needs an algebra path or --fixture NAME")),
    };
    let mut run = Run::new(json!({ "name": "check", "algebra": arg }));
    let loaded = load_algebra(&mut run, &arg)?;
    if let Some(m) = loaded.metadata {
        run.set("metadata", m);
    }
    check_results(&mut run, &loaded.algebra);
    Ok(run)
}

fn parse_vectors(field: Field, n: usize, value: &Value, what: &str) -> Result<Vec<Vector>, CliError> {
    let rows = value
        .as_array()
        .ok_or_else(|| CliError::new(format!("{what}: expected a list of vectors")))?;
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let items = row
                .as_array()
                .filter(|v| v.len() == n)
                .ok_or_else(|| CliError::new(format!("{what}[{r}]: expected {n} coefficients")))?;
            items
                .iter()
                .map(|x| Scalar::from_json(field, x).map_err(|e| CliError::new(format!("{what}[{r}]: {e}"))))
                .collect()
        })
        .collect()
}

fn parse_ideal(loaded: &Loaded, spec: &str) -> Result<Subspace, CliError> {
    let a = &loaded.algebra;
    let (field, n) = (a.field(), a.dim());
    match spec {
        "center" => Ok(subobjects::center(a)),
        "derived" => Ok(subobjects::derived(a)),
        "zero" => Ok(Subspace::zero(field, n)),
        _ => {
            let (value, what) = if let Some(name) = spec.strip_prefix("meta:") {
                let v = loaded
                    .metadata
                    .as_ref()
                    .and_then(|m| m.get("ideals"))
                    .and_then(|m| m.get(name))
                    .cloned()
                    .ok_or_else(|| CliError::new(format!("document metadata has no ideals.{name}")))?;
                (v, format!("ideals.{name}"))
            } else {
                let v: Value = serde_json::from_str(spec).map_err(|e| CliError::new(format!("--ideal: {e}")))?;
                (v, "--ideal".to_string())
            };
            Ok(Subspace::from_vectors(field, n, &parse_vectors(field, n, &value, &what)?))
        }
    }
}

pub fn quotient(algebra: &str, ideal: &str, emit: Option<PathBuf>) -> Result<Run, CliError> {
    let mut run = Run::new(json!({ "name": "quotient", "algebra": algebra, "ideal": ideal }));
    let loaded = load_algebra(&mut run, algebra)?;
    let sub = parse_ideal(&loaded, ideal)?;
    run.set("ideal", sub.to_json());
    match constructions::quotient(&loaded.algebra, &sub) {
        Ok(qp) => {
            let doc = document::algebra_to_value(&qp.quotient, None);
            run.set("presentation", qp.to_json());
            run.set("quotient_dim", json!(qp.quotient.dim()));
            run.set("quotient", doc.clone());
            if let Some(path) = emit {
                run.emit(&path, &doc)?;
            }
        }
        Err(ConstructionError::NotAnIdeal(report)) => {
            if let Some(f) = report.failures.first() {
                let product: Vec<String> = f.product.iter().map(|s| s.to_string()).collect();
                eprintln!(
                    "not a Hom-ideal: {} fails for {} with product ({})",
                    f.inclusion,
                    f.generators.join(", "),
                    product.join(", ")
                );
            }
            run.set("error", json!("not a Hom-ideal"));
            run.set("ideal_report", report.to_json());
            run.verdict(Verdict::Fail);
        }
        Err(e) => construction_failure(&mut run, e),
    }
    Ok(run)
}

fn construction_failure(run: &mut Run, e: ConstructionError) {
    run.set("error", json!(e.to_string()));
    match e {
        ConstructionError::NoInvariantComplement(diag) => {
            run.set("sylvester", diag.to_json());
            run.verdict(Verdict::Obstruction);
        }
        ConstructionError::ReconstructionFailed(_, Some(f)) => {
            run.set("failure", f.to_json());
            run.verdict(Verdict::Fail);
        }
        ConstructionError::NotAnIdeal(r) | ConstructionError::NotASubalgebra(r) => {
            run.set("report", r.to_json());
            run.verdict(Verdict::Fail);
        }
        _ => run.verdict(Verdict::Fail),
    }
}

pub fn direct_sum(first: &str, second: &str, emit: Option<PathBuf>) -> Result<Run, CliError> {
    let mut run = Run::new(json!({ "name": "direct-sum", "first": first, "second": second }));
    let a = load_algebra(&mut run, first)?.algebra;
    let b = load_algebra(&mut run, second)?.algebra;
    if a.field() != b.field() {
        return Err(CliError::new(format!("fields differ: {} and {}", a.field(), b.field())));
    }
    let s = constructions::direct_sum(&a, &b).map_err(|e| CliError::new(e.to_string()))?;
    let doc = document::algebra_to_value(&s, None);
    run.set("dim", json!(s.dim()));
    run.set("sum", doc.clone());
    if let Some(path) = emit {
        run.emit(&path, &doc)?;
    }
    Ok(run)
}

pub fn factor_set(args: FactorSetArgs) -> Result<Run, CliError> {
    let mode = if args.mode.extract {
        "extract"
    } else if args.mode.roundtrip {
        "roundtrip"
    } else {
        "extend"
    };
    let mut run = Run::new(json!({
        "name": "factor-set",
        "algebra": args.algebra,
        "mode": mode,
        "factor_set": args.mode.extend,
    }));
    let a = load_algebra(&mut run, &args.algebra)?.algebra;
    if let Some(fs_path) = &args.mode.extend {
        let bytes = read_file(fs_path)?;
        run.input(fs_path, &bytes);
        let text = String::from_utf8(bytes).map_err(|e| CliError::new(format!("{fs_path}: not UTF-8: {e}")))?;
        let fs = document::parse_factor_set(&text).map_err(|e| CliError::new(format!("{fs_path}: {e}")))?;
        let data = match constructions::extension_data_for(&a, fs) {
            Ok(d) => d,
            Err(e @ (ConstructionError::Dimension(_) | ConstructionError::FieldMismatch(..))) => {
                return Err(CliError::new(format!("{fs_path}: {e}")))
            }
            Err(e) => {
                construction_failure(&mut run, e);
                return Ok(run);
            }
        };
        let validation = constructions::validate_factor_set(&data);
        run.set("validation", validation.to_json());
        if !validation.pass() {
            run.verdict(Verdict::Fail);
        }
        match constructions::central_extension(&data) {
            Ok(ext) => {
                let doc = document::algebra_to_value(&ext.algebra, None);
                run.set("extension", doc.clone());
                run.set("extension_axioms", ext.report.to_json());
                run.set("extension_center", ext.center.to_json());
                run.set("center_is_first_block", json!(ext.center_matches()));
                if !ext.report.all_pass() {
                    run.verdict(Verdict::Fail);
                }
                if let Some(path) = args.emit {
                    run.emit(&path, &doc)?;
                }
            }
            Err(e) => construction_failure(&mut run, e),
        }
        return Ok(run);
    }

    let ex = match constructions::extract_factor_set(&a) {
        Ok(ex) => ex,
        Err(e) => {
            construction_failure(&mut run, e);
            return Ok(run);
        }
    };
    let fs_doc = document::factor_set_to_value(&ex.data.factor_set);
    run.set("center", ex.center.to_json());
    run.set("complement", ex.section.complement.to_json());
    run.set("lift", ex.section.lift.to_json());
    run.set("center_twist", ex.data.z_twist.to_json());
    run.set("factor_set", fs_doc.clone());
    if args.mode.extract {
        let validation = constructions::validate_factor_set(&ex.data);
        run.set("validation", validation.to_json());
        if !validation.pass() {
            run.verdict(Verdict::Fail);
        }
        if let Some(path) = args.emit {
            run.emit(&path, &fs_doc)?;
        }
        return Ok(run);
    }
    let ext = match constructions::central_extension(&ex.data) {
        Ok(ext) => ext,
        Err(e) => {
            construction_failure(&mut run, e);
            return Ok(run);
        }
    };
    run.set("extension_axioms", ext.report.to_json());
    run.set("extension_center", ext.center.to_json());
    run.set("center_is_first_block", json!(ext.center_matches()));
    if !ext.report.all_pass() {
        run.verdict(Verdict::Fail);
    }
    match constructions::reconstruct_iso(&a, &ex, &ext.algebra) {
        Ok(m) => {
            run.set("isomorphism", m.to_json());
            run.set("isomorphism_verified", json!(true));
        }
        Err(e) => {
            run.set("isomorphism_verified", json!(false));
            construction_failure(&mut run, e);
        }
    }
    if let Some(path) = args.emit {
        run.emit(&path, &document::algebra_to_value(&ext.algebra, None))?;
    }
    Ok(run)
}

pub fn parse_field(text: &str) -> Result<Field, CliError> {
    if text == "Q" {
        return Ok(Field::Rational);
    }
    let p = text
        .strip_prefix('F')
        .and_then(|p| p.strip_prefix("p:").unwrap_or(p).parse::<u64>().ok())
        .ok_or_else(|| CliError::new(format!("unknown field `{text}`; use Q or F<prime>")))?;
    Field::prime(p).map_err(|e| CliError::new(e.to_string()))
}

fn frame_dims(run: &mut Run, a: &HlyAlgebra, b: &HlyAlgebra) {
    let dims = |x: &HlyAlgebra| {
        json!({
            "dim": x.dim(),
            "center_dim": subobjects::center(x).dim(),
            "derived_dim": subobjects::derived(x).dim(),
        })
    };
    run.set("first", dims(a));
    run.set("second", dims(b));
}

pub fn isoclinic(args: IsoclinicArgs) -> Result<Run, CliError> {
    let mut run = Run::new(json!({
        "name": "isoclinic",
        "first": args.first,
        "second": args.second,
        "witness": args.witness,
        "search": args.search,
        "field": args.field,
        "budget": args.search.then_some(args.budget),
        "bound": args.search.then_some(args.bound),
    }));
    let a = load_algebra(&mut run, &args.first)?.algebra;
    let b = load_algebra(&mut run, &args.second)?.algebra;
    if a.field() != b.field() {
        return Err(CliError::new(format!("fields differ: {} and {}", a.field(), b.field())));
    }
    if let Some(f) = &args.field {
        let f = parse_field(f)?;
        if f != a.field() {
            return Err(CliError::new(format!("--field {f} but the algebras are over {}", a.field())));
        }
    }
    frame_dims(&mut run, &a, &b);
    if let Some(path) = &args.witness {
        let bytes = read_file(path)?;
        run.input(path, &bytes);
        let text = String::from_utf8(bytes).map_err(|e| CliError::new(format!("{path}: not UTF-8: {e}")))?;
        let w = document::parse_witness(&text).map_err(|e| CliError::new(format!("{path}: {e}")))?;
        if w.theta.field() != a.field() {
            return Err(CliError::new(format!("{path}: witness is over {}", w.theta.field())));
        }
        match verify_isoclinism(&a, &b, &w) {
            Ok(report) => {
                if !report.pass() {
                    run.verdict(Verdict::Fail);
                }
                run.set("report", report.to_json());
            }
            Err(e) => isoclinism_failure(&mut run, e),
        }
        return Ok(run);
    }
    let budget = SearchBudget {
        max_candidates: args.budget,
        bound: args.bound,
    };
    match search_isoclinism(&a, &b, budget) {
        Ok(out) => {
            run.set("examined", json!(out.examined));
            match out.found {
                Some(w) => {
                    let report = verify_isoclinism(&a, &b, &w).map_err(|e| CliError::new(e.to_string()))?;
                    run.set("witness", document::witness_to_value(&w));
                    run.set("report", report.to_json());
                }
                None => {
                    run.set("reason", json!(out.reason));
                    run.verdict(Verdict::Fail);
                }
            }
        }
        Err(SearchError::BudgetExhausted { examined }) => {
            run.set("examined", json!(examined));
            run.set("reason", json!("budget exhausted; no conclusion"));
            run.verdict(Verdict::Inconclusive);
        }
        Err(SearchError::FieldMismatch(x, y)) => return Err(CliError::new(format!("fields differ: {x} and {y}"))),
        Err(SearchError::Isoclinism(e)) => isoclinism_failure(&mut run, e),
    }
    Ok(run)
}

fn isoclinism_failure(run: &mut Run, e: IsoclinismError) {
    run.set("error", json!(e.to_string()));
    if let IsoclinismError::WitnessVerificationFailed(r) = &e {
        run.set("report", r.to_json());
    }
    run.verdict(Verdict::Fail);
}

pub fn decompose(algebra: &str, emit_dir: Option<PathBuf>) -> Result<Run, CliError> {
    let mut run = Run::new(json!({ "name": "decompose", "algebra": algebra }));
    let a = load_algebra(&mut run, algebra)?.algebra;
    match decompose_stem_abelian(&a) {
        Ok(d) => {
            let stem = document::algebra_to_value(&d.stem_part, None);
            let abelian = document::algebra_to_value(&d.abelian_part, None);
            run.set("decomposition", d.to_json());
            run.set("stem_part", stem.clone());
            run.set("abelian_part", abelian.clone());
            if let Some(dir) = emit_dir {
                run.emit(&dir.join("stem.json"), &stem)?;
                run.emit(&dir.join("abelian.json"), &abelian)?;
                run.emit(&dir.join("witness.json"), &d.witness.to_json())?;
            }
        }
        Err(DecomposeError::NoInvariantComplement { step, diagnostics }) => {
            run.set("error", json!(format!("no twist-invariant complement at the {step} step")));
            run.set("step", json!(step));
            run.set("sylvester", diagnostics.to_json());
            run.verdict(Verdict::Obstruction);
        }
        Err(DecomposeError::Construction(e)) => construction_failure(&mut run, e),
        Err(e) => {
            run.set("error", json!(e.to_string()));
            run.verdict(Verdict::Fail);
        }
    }
    Ok(run)
}

pub fn corpus(field: &str, dim: usize, count: usize, seed: u64, exhaustive: bool, out: PathBuf) -> Result<Run, CliError> {
    let mut run = Run::new(json!({
        "name": "corpus",
        "field": field,
        "dim": dim,
        "count": (!exhaustive).then_some(count),
        "seed": (!exhaustive).then_some(seed),
        "exhaustive": exhaustive,
        "out": out.display().to_string(),
    }));
    let f = parse_field(field)?;
    let unsupported = |e: CorpusError| CliError::new(e.to_string());
    let algebras = if exhaustive {
        if dim != 2 {
            return Err(CliError::new("--exhaustive enumerates dimension 2 only"));
        }
        let candidates = corpus::dim2_candidates(f).map_err(unsupported)?.len();
        run.set("candidates", json!(candidates));
        corpus::exhaustive_dim2(f).map_err(unsupported)?
    } else {
        match corpus::sample(&CorpusSpec::new(f, dim, count, seed)) {
            Ok(c) => {
                run.set("attempts", json!(c.attempts));
                c.algebras
            }
            Err(e @ CorpusError::TooFewSamples { .. }) => {
                run.set("error", json!(e.to_string()));
                run.verdict(Verdict::Inconclusive);
                return Ok(run);
            }
            Err(e) => return Err(unsupported(e)),
        }
    };
    fs::create_dir_all(&out).map_err(|e| CliError::new(format!("{}: {e}", out.display())))?;
    for (i, a) in algebras.iter().enumerate() {
        let meta = json!({ "corpus": { "field": f, "dim": dim, "seed": (!exhaustive).then_some(seed), "index": i } });
        run.emit(&out.join(format!("algebra-{i:04}.json")), &document::algebra_to_value(a, Some(meta)))?;
    }
    run.set("count", json!(algebras.len()));
    run.set("abelian", json!(algebras.iter().filter(|a| a.is_abelian()).count()));
    Ok(run)
}

pub fn fixture(action: FixtureAction) -> Result<(), CliError> {
    match action {
        FixtureAction::List => {
            for name in fixtures::NAMES {
                println!("{name}");
            }
            Ok(())
        }
        FixtureAction::Emit { name, out } => {
            let a = fixtures::fixture(&name)
                .ok_or_else(|| CliError::new(format!("unknown fixture `{name}`; known: {}", fixtures::NAMES.join(", "))))?;
            let text = pretty(&document::algebra_to_value(&a, Some(fixtures::metadata(&name))));
            match out {
                Some(p) => fs::write(&p, text).map_err(|e| CliError::new(format!("{}: {e}", p.display()))),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}
