use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};
use ybe::commutant::{annihilator_basis, centralizer_basis};
use ybe::families::{catalog, construct as build_family, find_family};
use ybe::groebner::{
    buchberger, in_radical, is_groebner_basis, normal_form, reduce_basis, ybe_ideal,
    BuchbergerOptions, MultiPoly, PolyRing,
};
use ybe::io::{
    census_to_json, census_value, matrix_list_value, matrix_to_json, matrix_value, to_pretty,
    verdict_value,
};
use ybe::oracle::{
    classify_against_families, enumerate_commuting_solutions, enumerate_solutions,
    verify_theorems_on_census, EnumerationOptions, Execution,
};
use ybe::sylvester::{sylvester_solve, sylvester_unique, SylvesterProblem, SylvesterSolution};
use ybe::ybe::{check_pencil_condition, residual};
use ybe::{Error, Matrix};

use crate::input::{coefficient, field_or_default, load_matrix, read_text, write_text};
use crate::{CoefficientArgs, Context, Failure, Outcome};

type CmdResult = Result<Outcome, Failure>;

fn rows_json(m: &Matrix) -> Value {
    matrix_value(m)["rows"].clone()
}

fn indented(m: &Matrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn json_outcome(holds: bool, v: Value) -> Outcome {
    Outcome {
        holds,
        stdout: to_pretty(&v),
    }
}

pub fn verify(ctx: &Context, coef: &CoefficientArgs, x_path: &str) -> CmdResult {
    let a = coefficient(ctx, coef)?;
    let x = load_matrix(ctx, x_path)?;
    if x.field() != a.field() {
        return Err(Failure(format!(
            "A is over {}, X is over {}",
            a.field(),
            x.field()
        )));
    }
    let report = residual(&a, &x)?;
    if ctx.json {
        return Ok(json_outcome(
            report.is_solution,
            json!({
                "field": a.field().to_string(),
                "residual": rows_json(&report.residual),
                "is_solution": report.is_solution,
            }),
        ));
    }
    let mut out = String::new();
    writeln!(out, "residual AXA - XAX:").unwrap();
    out.push_str(&indented(&report.residual));
    writeln!(out, "solution: {}", ctx.mark(report.is_solution)).unwrap();
    Ok(Outcome {
        holds: report.is_solution,
        stdout: out,
    })
}

fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>, Failure> {
    let mut out = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Failure(format!("parameter {p:?} is not of the form key=value")))?;
        if out
            .insert(k.trim().to_string(), v.trim().to_string())
            .is_some()
        {
            return Err(Failure(format!("parameter {k:?} given twice")));
        }
    }
    Ok(out)
}

pub fn construct(
    ctx: &Context,
    family: &str,
    params: &[String],
    out: Option<&str>,
    coefficient_out: Option<&str>,
) -> CmdResult {
    let field = field_or_default(ctx);
    let raw = parse_params(params)?;
    let (a, x) = build_family(&field, family, &raw)?;
    // constructors verify internally; this is a second, independent check
    if !residual(&a, &x)?.is_solution {
        return Err(Failure(format!("family {family} produced a non-solution")));
    }
    if let Some(path) = out {
        write_text(path, &matrix_to_json(&x))?;
    }
    if let Some(path) = coefficient_out {
        write_text(path, &matrix_to_json(&a))?;
    }
    let name = find_family(family).map(|d| d.name).unwrap_or(family);
    if ctx.json {
        return Ok(json_outcome(
            true,
            json!({
                "family": name,
                "coefficient": matrix_value(&a),
                "solution": matrix_value(&x),
            }),
        ));
    }
    let mut s = String::new();
    writeln!(s, "family: {name} over {field}").unwrap();
    writeln!(s, "A =").unwrap();
    s.push_str(&indented(&a));
    writeln!(s, "X =").unwrap();
    s.push_str(&indented(&x));
    writeln!(s, "residual: 0").unwrap();
    Ok(Outcome {
        holds: true,
        stdout: s,
    })
}

pub struct CensusFlags {
    pub commuting: bool,
    pub budget: u128,
    pub sequential: bool,
    pub list: bool,
    pub out: Option<String>,
}

fn counts_line<K: ToString>(m: &BTreeMap<K, usize>) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(k, v)| format!("{}: {v}", k.to_string()))
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

pub fn census(ctx: &Context, coef: &CoefficientArgs, flags: CensusFlags) -> CmdResult {
    let a = coefficient(ctx, coef)?;
    let options = EnumerationOptions {
        budget: flags.budget,
        execution: if flags.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let report = if flags.commuting {
        enumerate_commuting_solutions(&a, options)?
    } else {
        enumerate_solutions(&a, options)?
    };
    let report = classify_against_families(&report);
    let verdicts = verify_theorems_on_census(&report)?;
    let failed: Vec<_> = verdicts.iter().filter(|v| !v.verdict.holds).collect();
    let holds = failed.is_empty();
    if let Some(path) = &flags.out {
        write_text(path, &census_to_json(&report))?;
    }
    if ctx.json {
        // stdout stays a plain census document; the check summary goes to stderr
        eprintln!(
            "property checks: {} run, {} failed",
            verdicts.len(),
            failed.len()
        );
        for v in &failed {
            eprintln!("{}", verdict_value(&v.verdict));
        }
        return Ok(json_outcome(holds, census_value(&report)));
    }
    let mut s = String::new();
    let scope = if report.commuting_only {
        "commuting solutions"
    } else {
        "solutions"
    };
    writeln!(s, "census of {scope} of AXA = XAX over {}", report.field).unwrap();
    match &report.jordan {
        Some(j) => writeln!(s, "coefficient: Jordan {j}").unwrap(),
        None => {
            writeln!(s, "coefficient:").unwrap();
            s.push_str(&indented(&report.coefficient));
        }
    }
    writeln!(s, "solutions: {}", report.total()).unwrap();
    writeln!(s, "by rank: {}", counts_line(&report.by_rank)).unwrap();
    writeln!(s, "by kernel: {}", counts_line(&report.by_kernel)).unwrap();
    writeln!(s, "families: {}", counts_line(&report.family_tallies)).unwrap();
    writeln!(s, "unmatched: {}", report.unmatched().len()).unwrap();
    if flags.list {
        let tags = report.tags.as_ref().expect("classified");
        for (i, (x, t)) in report.solutions.iter().zip(tags).enumerate() {
            writeln!(s, "#{i} {t}").unwrap();
            s.push_str(&indented(x));
        }
    }
    writeln!(
        s,
        "property checks: {} run, {} failed {}",
        verdicts.len(),
        failed.len(),
        ctx.mark(holds)
    )
    .unwrap();
    for v in &failed {
        let witness = v
            .verdict
            .witness
            .as_ref()
            .map(|w| w.to_string())
            .unwrap_or_default();
        writeln!(
            s,
            "  solution #{} violates {}: {}",
            v.solution,
            v.verdict.property,
            witness.trim_end()
        )
        .unwrap();
    }
    Ok(Outcome { holds, stdout: s })
}

pub fn sylvester(ctx: &Context, a: &str, b: &str, c: &str) -> CmdResult {
    let (a, b, c) = (
        load_matrix(ctx, a)?,
        load_matrix(ctx, b)?,
        load_matrix(ctx, c)?,
    );
    let problem = SylvesterProblem::new(a, b, c)?;
    let unique = sylvester_unique(problem.a(), problem.b())?;
    let solution = sylvester_solve(&problem);
    if let Some(x) = solution.particular() {
        if !problem.residual(x)?.is_zero() {
            return Err(Failure(
                "solver returned a matrix with nonzero residual".into(),
            ));
        }
    }
    let holds = !matches!(solution, SylvesterSolution::Inconsistent);
    if ctx.json {
        let body = match &solution {
            SylvesterSolution::Unique(x) => {
                json!({ "outcome": "unique", "solution": rows_json(x) })
            }
            SylvesterSolution::Affine { particular, kernel } => json!({
                "outcome": "affine",
                "solution": rows_json(particular),
                "kernel": kernel.iter().map(rows_json).collect::<Vec<_>>(),
            }),
            SylvesterSolution::Inconsistent => json!({ "outcome": "inconsistent" }),
        };
        let mut v =
            json!({ "field": problem.a().field().to_string(), "unique_for_every_c": unique });
        v.as_object_mut()
            .unwrap()
            .extend(body.as_object().unwrap().clone());
        return Ok(json_outcome(holds, v));
    }
    let mut s = String::new();
    writeln!(
        s,
        "unique for every C: {}",
        if unique { "yes" } else { "no" }
    )
    .unwrap();
    match &solution {
        SylvesterSolution::Unique(x) => {
            writeln!(s, "outcome: unique").unwrap();
            writeln!(s, "X =").unwrap();
            s.push_str(&indented(x));
            writeln!(s, "residual: 0").unwrap();
        }
        SylvesterSolution::Affine { particular, kernel } => {
            writeln!(s, "outcome: affine, kernel dimension {}", kernel.len()).unwrap();
            writeln!(s, "particular X =").unwrap();
            s.push_str(&indented(particular));
            writeln!(s, "residual: 0").unwrap();
            for (i, k) in kernel.iter().enumerate() {
                writeln!(s, "kernel #{i} =").unwrap();
                s.push_str(&indented(k));
            }
        }
        SylvesterSolution::Inconsistent => writeln!(s, "outcome: inconsistent").unwrap(),
    }
    Ok(Outcome { holds, stdout: s })
}

pub struct GroebnerArgs {
    pub ideal: Option<String>,
    pub coefficient: CoefficientArgs,
    pub gens: Option<String>,
    pub vars: Vec<String>,
    pub order: Option<String>,
    pub probes: Vec<String>,
    pub radical: bool,
    pub pair_cap: usize,
}

fn identifiers(text: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut current = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphabetic()
            || (!current.is_empty() && (c.is_ascii_alphanumeric() || c == '_'))
        {
            current.push(c);
        } else if !current.is_empty() {
            out.insert(std::mem::take(&mut current));
        }
    }
    out
}

fn generator_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_at_line(ring: &PolyRing, line: usize, text: &str) -> Result<MultiPoly, Failure> {
    ring.parse(text).map_err(|e| match e {
        Error::Parse {
            column, message, ..
        } => Failure(format!("line {line}, column {column}: {message}")),
        other => Failure(other.to_string()),
    })
}

pub fn groebner(ctx: &Context, args: GroebnerArgs) -> CmdResult {
    let (ring, gens) = match (&args.gens, &args.ideal) {
        (Some(path), _) => {
            let text = read_text(path)?;
            let lines = generator_lines(&text);
            let vars: Vec<String> = if args.vars.is_empty() {
                lines
                    .iter()
                    .flat_map(|(_, l)| identifiers(l))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect()
            } else {
                args.vars.clone()
            };
            let ring = PolyRing::new(vars)?;
            let gens = lines
                .iter()
                .map(|(n, l)| parse_at_line(&ring, *n, l))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|Failure(m)| Failure(format!("{path}: {m}")))?;
            (ring, gens)
        }
        (None, Some(name)) if name == "ybe" => ybe_ideal(&coefficient(ctx, &args.coefficient)?)?,
        (None, Some(name)) => {
            return Err(Failure(format!(
                "unknown ideal {name:?}; only \"ybe\" is built in"
            )))
        }
        (None, None) => {
            return Err(Failure(
                "give --ideal ybe with a coefficient, or --gens FILE".into(),
            ))
        }
    };
    let (ring, gens) = match &args.order {
        Some(order) => {
            let target = ring.with_order(order)?;
            let moved = gens
                .iter()
                .map(|g| ring.translate(g, &target))
                .collect::<Result<Vec<_>, _>>()?;
            (target, moved)
        }
        None => (ring, gens),
    };
    let options = BuchbergerOptions {
        pair_cap: args.pair_cap,
        ..BuchbergerOptions::default()
    };
    let basis = match buchberger(&gens, options) {
        Ok(g) => reduce_basis(&g),
        Err(Error::PairCapExceeded { cap, partial }) => {
            return Err(Failure(format!(
                "S-pair cap {cap} exceeded with {} partial generators; raise --pair-cap",
                partial.len()
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let certified =
        is_groebner_basis(&basis) && gens.iter().all(|g| normal_form(g, &basis).is_zero());
    if !certified {
        return Err(Failure(
            "internal check failed: result is not a Gröbner basis of the input".into(),
        ));
    }
    let probes = args
        .probes
        .iter()
        .map(|p| {
            let poly = ring
                .parse(p)
                .map_err(|e| Failure(format!("probe {p:?}: {e}")))?;
            let vanishes = if args.radical {
                Some(in_radical(&poly, &gens, options)?)
            } else {
                None
            };
            Ok((p.clone(), normal_form(&poly, &basis), vanishes))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let holds = probes
        .iter()
        .all(|(_, nf, vanishes)| vanishes.unwrap_or_else(|| nf.is_zero()));
    if ctx.json {
        return Ok(json_outcome(
            holds,
            json!({
                "vars": ring.vars(),
                "order": "lex",
                "generators": gens.iter().map(|g| ring.format(g)).collect::<Vec<_>>(),
                "basis": basis.iter().map(|g| ring.format(g)).collect::<Vec<_>>(),
                "probes": probes.iter().map(|(p, nf, vanishes)| {
                    let mut v = json!({ "poly": p, "normal_form": ring.format(nf) });
                    if let Some(r) = vanishes {
                        v["in_radical"] = json!(r);
                    }
                    v
                }).collect::<Vec<_>>(),
            }),
        ));
    }
    let mut s = String::new();
    writeln!(s, "order: lex {}", ring.vars().join(" > ")).unwrap();
    writeln!(s, "generators: {}", gens.len()).unwrap();
    writeln!(s, "reduced basis ({}):", basis.len()).unwrap();
    for g in &basis {
        writeln!(s, "  {}", ring.format(g)).unwrap();
    }
    if !probes.is_empty() {
        writeln!(s, "normal forms:").unwrap();
        for (p, nf, vanishes) in &probes {
            match vanishes {
                None => {
                    writeln!(s, "  {p} -> {} {}", ring.format(nf), ctx.mark(nf.is_zero())).unwrap()
                }
                Some(r) => writeln!(
                    s,
                    "  {p} -> {}, vanishes on all solutions: {}",
                    ring.format(nf),
                    ctx.mark(*r)
                )
                .unwrap(),
            }
        }
    }
    Ok(Outcome { holds, stdout: s })
}

pub fn pencil(ctx: &Context, coef: &CoefficientArgs, x0: &str, x1: &str) -> CmdResult {
    let a = coefficient(ctx, coef)?;
    let (x0, x1) = (load_matrix(ctx, x0)?, load_matrix(ctx, x1)?);
    let report = check_pencil_condition(&a, &x0, &x1)?;
    let holds = report.verdict.holds;
    if ctx.json {
        return Ok(json_outcome(
            holds,
            json!({
                "field": a.field().to_string(),
                "holds": holds,
                "conditions": report.conditions.iter().map(|(name, m)| json!({
                    "name": name,
                    "holds": m.is_zero(),
                    "value": rows_json(m),
                })).collect::<Vec<_>>(),
                "samples": report.samples.iter().map(|(l, ok)| json!({
                    "lambda": l.to_string(),
                    "is_solution": ok,
                })).collect::<Vec<_>>(),
            }),
        ));
    }
    let mut s = String::new();
    for (name, m) in &report.conditions {
        writeln!(s, "{name} = 0: {}", ctx.mark(m.is_zero())).unwrap();
        if !m.is_zero() {
            s.push_str(&indented(m));
        }
    }
    let samples: Vec<String> = report
        .samples
        .iter()
        .map(|(l, ok)| format!("{l}: {}", if *ok { "solution" } else { "not a solution" }))
        .collect();
    writeln!(s, "X0 + lambda*X1 at lambda = {}", samples.join(", ")).unwrap();
    writeln!(s, "pencil condition: {}", ctx.mark(holds)).unwrap();
    Ok(Outcome { holds, stdout: s })
}

pub fn centralizer(ctx: &Context, coef: &CoefficientArgs, annihilator: bool) -> CmdResult {
    let a = coefficient(ctx, coef)?;
    let basis = if annihilator {
        annihilator_basis(&a)?
    } else {
        centralizer_basis(&a)?
    };
    if ctx.json {
        return Ok(json_outcome(true, matrix_list_value(a.field(), &basis)));
    }
    let what = if annihilator {
        "annihilator {M : AM = 0 = MA}"
    } else {
        "centralizer {M : AM = MA}"
    };
    let mut s = String::new();
    writeln!(s, "{what}, dimension {}", basis.len()).unwrap();
    for (i, m) in basis.iter().enumerate() {
        writeln!(s, "#{i}").unwrap();
        s.push_str(&indented(m));
    }
    Ok(Outcome {
        holds: true,
        stdout: s,
    })
}

pub fn families(ctx: &Context) -> Outcome {
    let cat = catalog();
    if ctx.json {
        let list: Vec<Value> = cat
            .iter()
            .map(|d| {
                json!({
                    "name": d.name,
                    "aliases": d.aliases,
                    "anchor": d.anchor,
                    "coefficient": d.coefficient,
                    "params": d.params.iter().map(|p| json!({
                        "name": p.name,
                        "kind": p.kind.to_string(),
                        "default": p.default,
                        "note": p.note,
                    })).collect::<Vec<_>>(),
                    "side_conditions": d.side_conditions,
                })
            })
            .collect();
        return json_outcome(true, Value::Array(list));
    }
    let mut s = String::new();
    for d in &cat {
        let aliases = if d.aliases.is_empty() {
            String::new()
        } else {
            format!(" (aliases: {})", d.aliases.join(", "))
        };
        writeln!(s, "{}{aliases}", d.name).unwrap();
        writeln!(s, "  {}", d.anchor).unwrap();
        writeln!(s, "  coefficient: {}", d.coefficient).unwrap();
        for p in &d.params {
            let default = p
                .default
                .map(|v| format!(" [default {v}]"))
                .unwrap_or_default();
            writeln!(s, "  {} ({}){default}: {}", p.name, p.kind, p.note).unwrap();
        }
        for c in d.side_conditions {
            writeln!(s, "  requires {c}").unwrap();
        }
    }
    Outcome {
        holds: true,
        stdout: s,
    }
}
