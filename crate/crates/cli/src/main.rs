//! Command line front end for the `dimea` effect-algebra library.
//!
//! Every command reads JSON files or literal arguments, prints exactly one
//! JSON document, and exits with code 0 when the computed verdict is
//! positive, 1 when it is negative (the document then carries a witness),
//! and 2 on usage or input errors.  Output is deterministic: object keys
//! are sorted and every run over the same inputs produces the same bytes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dimea::dirsys::{
    limit_eq, limit_oplus, validate_system, DirectedSystem, ExplicitSystem, LimitElement,
};
use dimea::ea::{has_rdp, validate_axioms, FiniteEffectAlgebra};
use dimea::real::{
    approximate, merge, reduce_to_positive_basis, refine_equal_sums, stage, transition,
    ExactReal, GeneratorTuple, RealError, RealSystem,
};
use dimea::simplicial::SimplicialEffectAlgebra;
use dimea::tensor::{
    factor_bimorphism, tensor_simplicial, universal_property_oracle, SimplicialTensor,
    TensorError,
};
use dimea::{Int, Limits, Rat};

/// Exact effect-algebra computations: validation, Riesz decomposition,
/// tensor products, directed limits, and the arithmetic of the unit
/// interval.
#[derive(Parser)]
#[command(name = "dimea", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the randomized sampling commands (fixed default, so runs
    /// are reproducible unless a different seed is chosen).
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,

    /// Bound for materialization and search; overrides the
    /// EA_SEARCH_LIMIT environment variable and the built-in default 4096.
    #[arg(long, global = true)]
    limit: Option<usize>,

    /// Write the JSON output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; only "json" is supported.
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a JSON file holding a sum table, an interval algebra, a
    /// tensor, or a directed system, and report every violation found.
    Validate {
        /// File to inspect; its kind is recognized from its fields.
        file: PathBuf,
    },
    /// Decide Riesz decomposition for a sum table or interval file;
    /// a failure is reported with a witness quadruple.
    Rdp {
        /// Sum-table or interval JSON file.
        file: PathBuf,
    },
    /// Compute the tensor product of two interval algebras.
    Tensor {
        /// Left factor (interval JSON file).
        left: PathBuf,
        /// Right factor (interval JSON file).
        right: PathBuf,
    },
    /// Factor the bimorphism given by atom images through a tensor,
    /// producing the unique induced morphism.
    Factor {
        /// Tensor JSON file, as produced by `tensor`.
        tensor: PathBuf,
        /// JSON array of target element ids: the image of atom (i, j) at
        /// row-major position i·m + j.
        images: PathBuf,
        /// Target sum-table JSON file.
        target: PathBuf,
    },
    /// Check the factorization property of a tensor against every sum
    /// table in a directory: each bimorphism must factor uniquely.
    Oracle {
        /// Left factor (interval JSON file).
        left: PathBuf,
        /// Right factor (interval JSON file).
        right: PathBuf,
        /// Directory of target sum-table JSON files.
        catalog: PathBuf,
    },
    /// Operate on a directed system of interval algebras: a system JSON
    /// file, or `@r01` for the built-in unit-interval system.
    Limit {
        /// System file path, or `@r01`.
        system: String,
        #[command(subcommand)]
        op: LimitOp,
    },
    /// Work with the unit-interval system directly: stages are tuples of
    /// exact reals such as "(1/2)" or "(1 - 1/2*sqrt2, 1/2*sqrt2)".
    R01 {
        #[command(subcommand)]
        op: R01Op,
    },
}

#[derive(Subcommand)]
enum LimitOp {
    /// Decide whether two represented elements are equal in the limit.
    Eq {
        /// First element, e.g. {"index": "i2", "value": [1]}; for @r01 a
        /// bare literal such as "1/2" is also accepted.
        a: String,
        /// Second element, in the same format.
        b: String,
    },
    /// Compute the partial sum of two represented elements.
    Oplus {
        /// First summand.
        a: String,
        /// Second summand.
        b: String,
    },
    /// Check the directed-system laws on a sample of indices: every file
    /// index, or a seeded random sample of stages for @r01.
    Validate,
}

#[derive(Subcommand)]
enum R01Op {
    /// Represent an exact real from [0, 1] inside a concrete stage.
    Approximate {
        /// Literal such as "1/2", "sqrt2/2", or "1 - 1/3*sqrt3".
        value: String,
    },
    /// Merge two stages into one that expresses both.
    Merge {
        /// First stage, e.g. "(1/2)".
        a: String,
        /// Second stage.
        b: String,
    },
    /// Describe the interval algebra of a stage.
    Stage {
        /// Stage tuple, e.g. "(1 - 1/2*sqrt2, 1/2*sqrt2)".
        tuple: String,
    },
    /// Compute the matrix that re-expresses one stage inside another.
    Transition {
        /// Stage being re-expressed.
        from: String,
        /// Stage doing the expressing.
        into: String,
    },
    /// Trace a basis reduction: with --split, refine two equal-sum sides
    /// into a common refinement; without it, reduce the listed reals to a
    /// rationally independent nonnegative basis.
    Trace {
        /// List of reals, e.g. "(1/2, 1/3, 1/6)"; need not be a stage.
        reals: String,
        /// Sizes of the left side: entries before SPLIT must sum to the
        /// entries from SPLIT on.
        #[arg(long)]
        split: Option<usize>,
    },
}

/// One finished command: the JSON document to print and the verdict that
/// decides between exit codes 0 and 1.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn good(value: Value) -> Self {
        Outcome { value, ok: true }
    }

    fn bad(value: Value) -> Self {
        Outcome { value, ok: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.format != "json" {
        eprintln!("error: unsupported format {:?}; only \"json\"", cli.format);
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(outcome) => {
            let mut text = serde_json::to_string_pretty(&outcome.value)
                .expect("JSON values always serialize");
            text.push('\n');
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let limits = effective_limits(cli)?;
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Rdp { file } => cmd_rdp(file, &limits),
        Command::Tensor { left, right } => cmd_tensor(left, right),
        Command::Factor {
            tensor,
            images,
            target,
        } => cmd_factor(tensor, images, target, &limits),
        Command::Oracle {
            left,
            right,
            catalog,
        } => cmd_oracle(left, right, catalog, &limits),
        Command::Limit { system, op } => cmd_limit(system, op, cli.seed),
        Command::R01 { op } => cmd_r01(op),
    }
}

/// The search bounds in effect: `--limit` wins, then EA_SEARCH_LIMIT,
/// then the library default.
fn effective_limits(cli: &Cli) -> Result<Limits, String> {
    if let Some(n) = cli.limit {
        return Ok(Limits::uniform(n));
    }
    match std::env::var("EA_SEARCH_LIMIT") {
        Ok(raw) => {
            let n: usize = raw.trim().parse().map_err(|_| {
                format!("EA_SEARCH_LIMIT must be an unsigned integer, got {raw:?}")
            })?;
            Ok(Limits::uniform(n))
        }
        Err(_) => Ok(Limits::default()),
    }
}

// ---------------------------------------------------------------------
// Shared input helpers.
// ---------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Reads a file and checks that it is syntactically valid JSON, reporting
/// the file name together with the position of the first defect.
fn read_json(path: &Path) -> Result<(String, Value), String> {
    let text = read_file(path)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((text, value))
}

fn load_table(path: &Path) -> Result<FiniteEffectAlgebra, String> {
    let (text, _) = read_json(path)?;
    FiniteEffectAlgebra::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_interval(path: &Path) -> Result<SimplicialEffectAlgebra, String> {
    let (text, _) = read_json(path)?;
    SimplicialEffectAlgebra::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn int_value(n: &Int) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

fn ints_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

fn matrix_value(m: &[Vec<Int>]) -> Value {
    Value::Array(m.iter().map(|row| ints_value(row)).collect())
}

fn value_to_int(v: &Value) -> Result<Int, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| format!("number {n} is not an integer")),
        Value::String(s) => Int::from_str(s).map_err(|e| format!("integer {s:?}: {e}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

fn value_to_ints(v: &Value) -> Result<Vec<Int>, String> {
    let arr = v
        .as_array()
        .ok_or_else(|| format!("expected an array of integers, got {v}"))?;
    arr.iter().map(value_to_int).collect()
}

/// Parses a list of exact reals, written either as a parenthesized literal
/// "(1/2, sqrt2/2)" or as a JSON array of literals.
fn parse_reals(arg: &str) -> Result<Vec<ExactReal>, String> {
    let trimmed = arg.trim();
    let literals: Vec<String> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| format!("real list {trimmed:?}: {e}"))?
    } else {
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| {
                format!("expected (a, b, ...) or a JSON array of literals, got {trimmed:?}")
            })?;
        if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|s| s.trim().to_owned()).collect()
        }
    };
    literals
        .iter()
        .map(|s| {
            ExactReal::from_str(s).map_err(|e: RealError| format!("literal {s:?}: {e}"))
        })
        .collect()
}

fn parse_tuple(arg: &str) -> Result<GeneratorTuple, String> {
    GeneratorTuple::from_unsorted(parse_reals(arg)?)
        .map_err(|e| format!("stage tuple {arg:?}: {e}"))
}

fn tuple_value(t: &GeneratorTuple) -> Value {
    serde_json::to_value(t).expect("tuples always serialize")
}

fn reals_value(xs: &[ExactReal]) -> Value {
    Value::Array(xs.iter().map(|x| Value::from(x.to_string())).collect())
}

// ---------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------

fn cmd_validate(file: &Path) -> Result<Outcome, String> {
    let (text, value) = read_json(file)?;
    let obj = value
        .as_object()
        .ok_or_else(|| format!("{}: expected a JSON object", file.display()))?;

    let report = |kind: &str, violations: Vec<Value>, extra: Value| -> Outcome {
        let mut doc = json!({
            "kind": kind,
            "valid": violations.is_empty(),
            "violations": violations,
        });
        if let (Some(doc_map), Some(extra_map)) = (doc.as_object_mut(), extra.as_object()) {
            for (k, v) in extra_map {
                doc_map.insert(k.clone(), v.clone());
            }
        }
        let ok = doc["valid"].as_bool().unwrap_or(false);
        if ok {
            Outcome::good(doc)
        } else {
            Outcome::bad(doc)
        }
    };

    if obj.contains_key("elements") {
        // A sum table.  Structural defects surface as load errors and are
        // reported as violations; axiom defects come with witnesses.
        return Ok(match FiniteEffectAlgebra::from_json(&text) {
            Ok(table) => {
                let axioms = validate_axioms(&table);
                let violations = axioms
                    .violations
                    .iter()
                    .map(|v| serde_json::to_value(v).expect("violations serialize"))
                    .collect();
                report(
                    "table",
                    violations,
                    json!({ "elements": table.len() }),
                )
            }
            Err(e) => report("table", vec![Value::from(e)], json!({})),
        });
    }

    if obj.contains_key("indices") {
        // A directed system: load, then check the laws on every index.
        return Ok(match ExplicitSystem::from_json(&text) {
            Ok(sys) => {
                let sample: Vec<String> = sys.indices().to_vec();
                let rep = validate_system(&sys, &sample);
                let violations = rep
                    .violations
                    .iter()
                    .map(|v| Value::from(v.to_string()))
                    .collect();
                report(
                    "system",
                    violations,
                    json!({ "checked": rep.checked }),
                )
            }
            Err(e) => report("system", vec![Value::from(e)], json!({})),
        });
    }

    if obj.contains_key("left") && obj.contains_key("right") {
        // A stored tensor: its unit and atom order must match the factors.
        return Ok(match SimplicialTensor::from_json(&text) {
            Ok(t) => report(
                "tensor",
                Vec::new(),
                json!({ "unit": ints_value(&t.product.unit) }),
            ),
            Err(e) => report("tensor", vec![Value::from(e)], json!({})),
        });
    }

    if obj.contains_key("unit") {
        // An interval algebra: construction performs the validation.
        return Ok(match SimplicialEffectAlgebra::from_json(&text) {
            Ok(alg) => report(
                "interval",
                Vec::new(),
                json!({ "rank": alg.rank, "count": int_value(&alg.count()) }),
            ),
            Err(e) => report("interval", vec![Value::from(e)], json!({})),
        });
    }

    Err(format!(
        "{}: unrecognized file shape; expected a sum table (\"elements\"), an interval (\"unit\"), a tensor (\"left\"/\"right\"), or a system (\"indices\")",
        file.display()
    ))
}

// ---------------------------------------------------------------------
// rdp
// ---------------------------------------------------------------------

fn cmd_rdp(file: &Path, limits: &Limits) -> Result<Outcome, String> {
    let (text, value) = read_json(file)?;
    let obj = value
        .as_object()
        .ok_or_else(|| format!("{}: expected a JSON object", file.display()))?;

    let table = if obj.contains_key("elements") {
        FiniteEffectAlgebra::from_json(&text).map_err(|e| format!("{}: {e}", file.display()))?
    } else if obj.contains_key("unit") {
        let alg = SimplicialEffectAlgebra::from_json(&text)
            .map_err(|e| format!("{}: {e}", file.display()))?;
        alg.materialize(limits)
            .map_err(|e| format!("{}: {e}", file.display()))?
    } else {
        return Err(format!(
            "{}: expected a sum table (\"elements\") or an interval (\"unit\")",
            file.display()
        ));
    };

    let axioms = validate_axioms(&table);
    if !axioms.is_valid() {
        return Err(format!(
            "{}: not an effect algebra: {}",
            file.display(),
            axioms.violations[0]
        ));
    }

    Ok(match has_rdp(&table) {
        None => Outcome::good(json!({ "rdp": true })),
        Some(w) => Outcome::bad(json!({
            "rdp": false,
            "witness": serde_json::to_value(&w).expect("witnesses serialize"),
        })),
    })
}

// ---------------------------------------------------------------------
// tensor
// ---------------------------------------------------------------------

fn cmd_tensor(left: &Path, right: &Path) -> Result<Outcome, String> {
    let l = load_interval(left)?;
    let r = load_interval(right)?;
    let t = tensor_simplicial(&l, &r);
    let doc: Value =
        serde_json::from_str(&t.to_json()).expect("emitted tensor JSON re-parses");
    Ok(Outcome::good(doc))
}

// ---------------------------------------------------------------------
// factor
// ---------------------------------------------------------------------

fn cmd_factor(
    tensor: &Path,
    images: &Path,
    target: &Path,
    limits: &Limits,
) -> Result<Outcome, String> {
    let (text, _) = read_json(tensor)?;
    let t = SimplicialTensor::from_json(&text).map_err(|e| format!("{}: {e}", tensor.display()))?;

    let (_, images_value) = read_json(images)?;
    let ids: Vec<String> = serde_json::from_value(images_value).map_err(|e| {
        format!(
            "{}: expected a JSON array of element ids: {e}",
            images.display()
        )
    })?;

    let table = Arc::new(load_table(target)?);
    let atom_images = ids
        .iter()
        .map(|id| {
            table.element(id).ok_or_else(|| {
                format!("{}: {id:?} is not an element of the target", images.display())
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    match factor_bimorphism(&t, &atom_images, &table, limits) {
        Ok(witness) => Ok(Outcome::good(json!({
            "factors": true,
            "map": witness.psi.to_pairs(),
        }))),
        Err(e @ (TensorError::InvalidBimorphism { .. } | TensorError::ContractViolation { .. })) => {
            Ok(Outcome::bad(json!({
                "factors": false,
                "witness": e.to_string(),
            })))
        }
        Err(e) => Err(format!("{}: {e}", tensor.display())),
    }
}

// ---------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------

fn cmd_oracle(
    left: &Path,
    right: &Path,
    catalog: &Path,
    limits: &Limits,
) -> Result<Outcome, String> {
    let l = load_interval(left)?;
    let r = load_interval(right)?;

    let mut entries: Vec<PathBuf> = std::fs::read_dir(catalog)
        .map_err(|e| format!("{}: {e}", catalog.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    entries.sort();
    if entries.is_empty() {
        return Err(format!(
            "{}: no .json sum-table files found",
            catalog.display()
        ));
    }

    let mut names = Vec::with_capacity(entries.len());
    let mut targets = Vec::with_capacity(entries.len());
    for path in &entries {
        targets.push(Arc::new(load_table(path)?));
        names.push(
            path.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
        );
    }

    let report = universal_property_oracle(&l, &r, &targets, limits)
        .map_err(|e| format!("oracle: {e}"))?;

    let cases: Vec<Value> = report
        .cases
        .iter()
        .map(|c| {
            json!({
                "target": names[c.target_index],
                "size": c.target_size,
                "bimorphisms": c.bimorphisms,
                "exhaustive": c.exhaustive,
            })
        })
        .collect();
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| Value::from(f.to_string()))
        .collect();
    let doc = json!({
        "passed": report.passed(),
        "bimorphisms": report.bimorphisms_checked(),
        "cases": cases,
        "failures": failures,
    });
    Ok(if report.passed() {
        Outcome::good(doc)
    } else {
        Outcome::bad(doc)
    })
}

// ---------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------

fn cmd_limit(system: &str, op: &LimitOp, seed: u64) -> Result<Outcome, String> {
    if system == "@r01" {
        limit_over(&RealSystem, op, |arg| parse_r01_element(arg), || r01_sample(seed))
    } else {
        let path = PathBuf::from(system);
        let (text, _) = read_json(&path)?;
        let sys =
            ExplicitSystem::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let all = sys.indices().to_vec();
        limit_over(
            &sys,
            op,
            |arg| parse_explicit_element(arg),
            move || Ok(all.clone()),
        )
    }
}

/// Runs one limit operation over any directed system, given parsers for
/// element arguments and a sample of indices for validation.
fn limit_over<S, P, D>(sys: &S, op: &LimitOp, parse: P, sample: D) -> Result<Outcome, String>
where
    S: DirectedSystem,
    S::Index: serde::Serialize,
    P: Fn(&str) -> Result<LimitElement<S::Index>, String>,
    D: FnOnce() -> Result<Vec<S::Index>, String>,
{
    let index_value = |i: &S::Index| serde_json::to_value(i).expect("indices serialize");
    match op {
        LimitOp::Eq { a, b } => {
            let x = parse(a)?;
            let y = parse(b)?;
            let bound = sys
                .upper_bound(&x.index, &y.index)
                .map_err(|e| e.to_string())?;
            let equal = limit_eq(sys, &x, &y).map_err(|e| e.to_string())?;
            if equal {
                Ok(Outcome::good(json!({
                    "equal": true,
                    "bound": index_value(&bound),
                })))
            } else {
                let fx = push(sys, &bound, &x)?;
                let fy = push(sys, &bound, &y)?;
                Ok(Outcome::bad(json!({
                    "equal": false,
                    "bound": index_value(&bound),
                    "left": ints_value(&fx),
                    "right": ints_value(&fy),
                })))
            }
        }
        LimitOp::Oplus { a, b } => {
            let x = parse(a)?;
            let y = parse(b)?;
            match limit_oplus(sys, &x, &y).map_err(|e| e.to_string())? {
                Some(sum) => Ok(Outcome::good(json!({
                    "defined": true,
                    "index": index_value(&sum.index),
                    "value": ints_value(&sum.value),
                }))),
                None => {
                    let bound = sys
                        .upper_bound(&x.index, &y.index)
                        .map_err(|e| e.to_string())?;
                    let fx = push(sys, &bound, &x)?;
                    let fy = push(sys, &bound, &y)?;
                    Ok(Outcome::bad(json!({
                        "defined": false,
                        "bound": index_value(&bound),
                        "left": ints_value(&fx),
                        "right": ints_value(&fy),
                    })))
                }
            }
        }
        LimitOp::Validate => {
            let indices = sample()?;
            let rep = validate_system(sys, &indices);
            let doc = json!({
                "valid": rep.is_valid(),
                "checked": rep.checked.iter().map(&index_value).collect::<Vec<_>>(),
                "violations": rep
                    .violations
                    .iter()
                    .map(|v| Value::from(v.to_string()))
                    .collect::<Vec<_>>(),
            });
            Ok(if rep.is_valid() {
                Outcome::good(doc)
            } else {
                Outcome::bad(doc)
            })
        }
    }
}

/// The image of a represented element at `bound`.
fn push<S: DirectedSystem>(
    sys: &S,
    bound: &S::Index,
    x: &LimitElement<S::Index>,
) -> Result<Vec<Int>, String> {
    let f = sys.transition(bound, &x.index).map_err(|e| e.to_string())?;
    f.apply(&x.value).map_err(|e| e.to_string())
}

/// Element of a file-backed system: {"index": "name", "value": [ints]}.
fn parse_explicit_element(arg: &str) -> Result<LimitElement<String>, String> {
    let value: Value =
        serde_json::from_str(arg.trim()).map_err(|e| format!("element {arg:?}: {e}"))?;
    let obj = value.as_object().ok_or_else(|| {
        format!("element {arg:?}: expected {{\"index\": ..., \"value\": [...]}}")
    })?;
    let index = obj
        .get("index")
        .and_then(Value::as_str)
        .ok_or_else(|| format!("element {arg:?}: field \"index\" must be a string"))?
        .to_owned();
    let raw = obj
        .get("value")
        .ok_or_else(|| format!("element {arg:?}: field \"value\" is missing"))?;
    let value = value_to_ints(raw).map_err(|e| format!("element {arg:?}: {e}"))?;
    Ok(LimitElement { index, value })
}

/// Element of the unit-interval system.  Accepts a bare real literal
/// (represented via `approximate`) or {"index": tuple, "value": [ints]}
/// where the tuple is a literal string or an array of literals.
fn parse_r01_element(arg: &str) -> Result<LimitElement<GeneratorTuple>, String> {
    let trimmed = arg.trim();
    if !trimmed.starts_with('{') {
        let x = ExactReal::from_str(trimmed)
            .map_err(|e| format!("element {trimmed:?}: {e}"))?;
        let a = approximate(&x).map_err(|e| format!("element {trimmed:?}: {e}"))?;
        return Ok(LimitElement {
            index: a.stage.index,
            value: a.element,
        });
    }
    let value: Value =
        serde_json::from_str(trimmed).map_err(|e| format!("element {arg:?}: {e}"))?;
    let obj = value.as_object().ok_or_else(|| {
        format!("element {arg:?}: expected {{\"index\": ..., \"value\": [...]}}")
    })?;
    let index = match obj.get("index") {
        Some(Value::String(s)) => parse_tuple(s)?,
        Some(arr @ Value::Array(_)) => serde_json::from_value::<GeneratorTuple>(arr.clone())
            .map_err(|e| format!("element {arg:?}: {e}"))?,
        _ => {
            return Err(format!(
                "element {arg:?}: field \"index\" must be a tuple literal or an array of literals"
            ))
        }
    };
    let raw = obj
        .get("value")
        .ok_or_else(|| format!("element {arg:?}: field \"value\" is missing"))?;
    let value = value_to_ints(raw).map_err(|e| format!("element {arg:?}: {e}"))?;
    Ok(LimitElement { index, value })
}

/// A reproducible sample of unit-interval stages: three cyclic stages
/// 1/n and one two-generator radical stage for each of √2 and √3.
fn r01_sample(seed: u64) -> Result<Vec<GeneratorTuple>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = Vec::new();
    for _ in 0..3 {
        let n: u64 = rng.gen_range(2..=12);
        let generator = ExactReal::from_rat(Rat::new(Int::from(1), Int::from(n)));
        let tuple = GeneratorTuple::new(vec![generator]).map_err(|e| e.to_string())?;
        if !sample.contains(&tuple) {
            sample.push(tuple);
        }
    }
    for d in [2u64, 3] {
        let q: i64 = rng.gen_range(2..=6);
        let x = ExactReal::sqrt(d).scale(&Rat::new(Int::from(1), Int::from(q)));
        let a = approximate(&x).map_err(|e| e.to_string())?;
        sample.push(a.stage.index);
    }
    Ok(sample)
}

// ---------------------------------------------------------------------
// r01
// ---------------------------------------------------------------------

fn cmd_r01(op: &R01Op) -> Result<Outcome, String> {
    match op {
        R01Op::Approximate { value } => {
            let x = ExactReal::from_str(value.trim())
                .map_err(|e| format!("literal {value:?}: {e}"))?;
            let a = approximate(&x).map_err(|e| e.to_string())?;
            Ok(Outcome::good(json!({
                "index": tuple_value(&a.stage.index),
                "value": ints_value(&a.element),
            })))
        }
        R01Op::Merge { a, b } => {
            let left = parse_tuple(a)?;
            let right = parse_tuple(b)?;
            let merged = merge(&left, &right).map_err(|e| e.to_string())?;
            Ok(Outcome::good(json!({ "tuple": tuple_value(&merged) })))
        }
        R01Op::Stage { tuple } => {
            let t = parse_tuple(tuple)?;
            let s = stage(&t).map_err(|e| e.to_string())?;
            Ok(Outcome::good(json!({
                "index": tuple_value(&s.index),
                "rank": s.algebra.rank,
                "unit": ints_value(&s.algebra.unit),
                "count": int_value(&s.algebra.count()),
            })))
        }
        R01Op::Transition { from, into } => {
            let small = parse_tuple(from)?;
            let big = parse_tuple(into)?;
            match transition(&big, &small) {
                Ok(morphism) => Ok(Outcome::good(json!({
                    "comparable": true,
                    "from": tuple_value(&small),
                    "into": tuple_value(&big),
                    "matrix": matrix_value(&morphism.matrix),
                }))),
                Err(e @ RealError::NotComparable { .. }) => Ok(Outcome::bad(json!({
                    "comparable": false,
                    "witness": e.to_string(),
                }))),
                Err(e) => Err(e.to_string()),
            }
        }
        R01Op::Trace { reals, split } => {
            let xs = parse_reals(reals)?;
            let trace = match split {
                Some(k) => refine_equal_sums(&xs, *k).map_err(|e| e.to_string())?,
                None => reduce_to_positive_basis(&xs).map_err(|e| e.to_string())?,
            };
            Ok(Outcome::good(json!({
                "input": reals_value(&trace.input),
                "output": reals_value(&trace.output),
                "matrix": matrix_value(&trace.matrix),
            })))
        }
    }
}
