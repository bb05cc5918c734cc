//! Subcommand implementations.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};
use weyllab_core::arith::{is_prime, Rat};
use weyllab_core::error::Error;
use weyllab_core::pbw::{self, Gen};
use weyllab_core::rootdata::{AffineType, Family, RootDatum, RootElement, Weight};
use weyllab_core::scanner::{self, ScanEntry, Status, Witness};
use weyllab_core::shapovalov::{self, Builder, ShapovalovElement};
use weyllab_core::text;
use weyllab_core::verma::{HomCertificate, HomKind, Verma};
use weyllab_core::weylgroup;

use crate::cache::{self, Cache};
use crate::cli::{Command, HomArgs, LinkageArgs, ScanCommand, ShapovalovArgs, VerifyCommand};
use crate::config::Config;
use crate::output::{big_to_json, Report};
use crate::{Outcome, EXIT_HYPOTHESIS, EXIT_INTERNAL, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

pub fn dispatch(command: &Command, config: &Config) -> Outcome {
    let result = match command {
        Command::Scan(ScanCommand::A1 { prime, max_level, quasi_simple, lowest_level }) => {
            scan_a1(*prime, *max_level, *quasi_simple, *lowest_level, config)
        }
        Command::Scan(ScanCommand::Ar { rank, prime, max_level, quasi_simple }) => {
            scan_ar(*rank, *prime, *max_level, *quasi_simple)
        }
        Command::Scan(ScanCommand::LevelOne { kind, prime }) => scan_level_one(kind, *prime, config),
        Command::Shapovalov(args) => cmd_shapovalov(args, config),
        Command::Verify(VerifyCommand::WeylHom(args)) => cmd_verify(HomKind::Weyl, args, config),
        Command::Verify(VerifyCommand::VermaHom(args)) => cmd_verify(HomKind::Verma, args, config),
        Command::Linkage(args) => cmd_linkage(args, config),
    };
    match result {
        Ok((code, report)) => {
            let mut out = Outcome { code, stdout: report.render(config.format), stderr: String::new() };
            if code == EXIT_INTERNAL {
                out.stderr = "internal inconsistency; see the report\n".into();
            }
            out
        }
        Err(e) => e,
    }
}

type CmdResult = Result<(i32, Report), Outcome>;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) => EXIT_HYPOTHESIS,
        Error::NonzeroImage => EXIT_NEGATIVE,
        Error::Parse(_)
        | Error::UnsupportedType(_)
        | Error::NotRealRoot(_)
        | Error::NotBaseRoot(_)
        | Error::NotEtaGood(_)
        | Error::BudgetExceeded(_)
        | Error::Scope(_) => EXIT_USAGE,
        Error::InternalData(_) | Error::NotInBorel | Error::Basis(_) | Error::Rescaling(_) | Error::Construction(_) => {
            EXIT_INTERNAL
        }
    }
}

fn fail(e: Error) -> Outcome {
    let message = match &e {
        Error::Hypothesis(list) => {
            let mut s = String::from("hypotheses not satisfied:\n");
            for h in list {
                s.push_str("  - ");
                s.push_str(h);
                s.push('\n');
            }
            s
        }
        other => format!("error: {other}"),
    };
    Outcome::error(exit_code(&e), message)
}

fn usage(message: impl Into<String>) -> Outcome {
    Outcome::error(EXIT_USAGE, format!("error: {}", message.into()))
}

fn check_prime(p: i64) -> Result<i64, Outcome> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(usage(format!("{p} is not prime")))
    }
}

fn xi_string(xi: &[i64]) -> String {
    format!("({})", xi.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

fn witness_json(datum: &RootDatum, w: &Witness) -> Value {
    let (condition, eta) = match &w.condition {
        Some((c, eta)) => (Value::from(c.id()), Value::from(*eta)),
        None => (Value::Null, Value::Null),
    };
    json!({
        "gamma": text::format_root_affine(datum, &w.gamma(datum.n())),
        "family": w.family,
        "t": w.t,
        "e": w.e,
        "M": w.m,
        "D": w.d,
        "condition": condition,
        "eta": eta,
    })
}

fn witness_text(w: &Witness) -> String {
    let cond = match &w.condition {
        Some((c, eta)) => format!(" ({}, η={eta})", c.id()),
        None => String::new(),
    };
    format!("α{}+{}δ: {}·p^{}+{}{cond}", w.family, w.t, w.m, w.e, w.d)
}

/// Fast-path verdicts that disagree with the brute-force oracle.
fn membership_diff(entries: &[ScanEntry], p: i64) -> Vec<Value> {
    let mut diff = Vec::new();
    for e in entries {
        let fast = scanner::y_plus_fast(&e.xi, p);
        let oracle = !scanner::y_plus_oracle(&e.xi, p).is_empty();
        let member = e.status != Status::NotInYPlus;
        if fast != oracle || member != oracle {
            diff.push(
                json!({ "weight": xi_string(&e.xi), "fast": fast, "oracle": oracle, "status": e.status.label() }),
            );
        }
    }
    diff
}

fn scan_report(datum: &RootDatum, entries: &[ScanEntry], p: i64, quasi_simple: bool) -> (i32, Report) {
    let diff = membership_diff(entries, p);
    let shown: Vec<&ScanEntry> = entries.iter().filter(|e| !quasi_simple || e.status == Status::QuasiSimple).collect();
    let rows: Vec<Value> = shown
        .iter()
        .map(|e| {
            json!({
                "level": e.level,
                "weight": xi_string(&e.xi),
                "status": e.status.label(),
                "witnesses": e.witnesses.iter().map(|w| witness_json(datum, w)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut table = String::new();
    for e in &shown {
        if quasi_simple {
            table.push_str(&format!("{}: {}\n", e.level, xi_string(&e.xi)));
        } else {
            let w = e.witnesses.first().map(|w| format!("  {}", witness_text(w))).unwrap_or_default();
            table.push_str(&format!("{}: {} {}{w}\n", e.level, xi_string(&e.xi), e.status.label()));
        }
    }
    if !diff.is_empty() {
        table.push_str("fast path and oracle disagree:\n");
        for d in &diff {
            table.push_str(&format!("  {d}\n"));
        }
    }
    let json = json!({
        "type": datum.kind.to_string(),
        "p": p,
        "quasi_simple_only": quasi_simple,
        "rows": rows,
        "mismatches": diff,
    });
    let code = if diff.is_empty() { EXIT_OK } else { EXIT_INTERNAL };
    (code, Report { json, rows, table })
}

fn scan_a1(
    prime: Option<i64>,
    max_level: Option<i64>,
    quasi_simple: bool,
    lowest_level: bool,
    config: &Config,
) -> CmdResult {
    if lowest_level {
        let primes = match prime {
            Some(p) => vec![check_prime(p)?],
            None => config.primes.clone(),
        };
        let mut rows = Vec::new();
        let mut table = String::new();
        for p in primes {
            let (level, xis) = scanner::lowest_level(p);
            let set: Vec<String> = xis.iter().map(i64::to_string).collect();
            if prime.is_none() {
                table.push_str(&format!("p={p}: "));
            }
            table.push_str(&format!("{level} : {{{}}}\n", set.join(",")));
            rows.push(json!({ "p": p, "level": level, "xi0": xis.iter().collect::<Vec<_>>() }));
        }
        let json = json!({ "type": "A1", "rows": rows });
        return Ok((EXIT_OK, Report { json, rows, table }));
    }
    let p = check_prime(prime.ok_or_else(|| usage("--prime is required"))?)?;
    let max_level = max_level.ok_or_else(|| usage("--max-level is required"))?;
    if max_level < 0 {
        return Err(usage("--max-level must be non-negative"));
    }
    let datum = RootDatum::a1();
    Ok(scan_report(&datum, &scanner::scan_a1(p, max_level), p, quasi_simple))
}

fn scan_ar(rank: usize, prime: i64, max_level: i64, quasi_simple: bool) -> CmdResult {
    let p = check_prime(prime)?;
    if rank == 0 {
        return Err(usage("--rank must be positive"));
    }
    if max_level < 0 {
        return Err(usage("--max-level must be non-negative"));
    }
    let datum = RootDatum::load(AffineType::new(Family::A, rank)).map_err(fail)?;
    Ok(scan_report(&datum, &scanner::scan_ar(rank, p, max_level), p, quasi_simple))
}

fn node_list(nodes: &[usize]) -> String {
    if nodes.is_empty() {
        "∅".into()
    } else {
        nodes.iter().map(|j| format!("ϖ{j}")).collect::<Vec<_>>().join(", ")
    }
}

fn scan_level_one(kind: &str, prime: Option<i64>, config: &Config) -> CmdResult {
    let kind = AffineType::parse(kind).map_err(fail)?;
    let primes = match prime {
        Some(p) => vec![check_prime(p)?],
        None => config.primes.clone(),
    };
    let mut rows = Vec::new();
    let mut table = String::new();
    let mut code = EXIT_OK;
    for p in primes {
        let r = scanner::level_one_scan(kind, p, config.t_bound_for(p)).map_err(fail)?;
        let brute: BTreeSet<usize> = r.brute_force.iter().copied().collect();
        let sound = r.sufficient.iter().all(|j| brute.contains(j));
        if !sound {
            code = EXIT_INTERNAL;
        }
        if prime.is_none() {
            table.push_str(&format!("p={p}: "));
        }
        table.push_str(&node_list(&r.sufficient));
        table.push('\n');
        if !r.consistent() {
            table.push_str(&format!("  brute force (t ≤ {}): {}\n", r.t_bound, node_list(&r.brute_force)));
        }
        let names = |v: &[usize]| v.iter().map(|j| format!("ϖ{j}")).collect::<Vec<_>>();
        rows.push(json!({
            "type": kind.to_string(),
            "p": p,
            "candidates": names(&r.candidates),
            "weights": names(&r.sufficient),
            "brute_force": names(&r.brute_force),
            "t_bound": r.t_bound,
            "consistent": r.consistent(),
        }));
    }
    let json = json!({ "type": kind.to_string(), "rows": rows });
    Ok((code, Report { json, rows, table }))
}

fn label(word: &[Gen]) -> String {
    pbw::runs(word)
        .iter()
        .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{g}^({k})") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn rat_json(x: &Rat) -> Value {
    if x.is_integer() {
        big_to_json(x.numer())
    } else {
        Value::String(cache::rat_string(x))
    }
}

fn element_json(datum: &RootDatum, z: &ShapovalovElement) -> Value {
    let divided: Value = match z.element.pbw_divided_coordinates() {
        Some(c) => Value::Object(c.iter().map(|(w, x)| (label(w), rat_json(x))).collect::<Map<_, _>>()),
        None => Value::Null,
    };
    json!({
        "gamma": text::format_root_affine(datum, &z.gamma),
        "D": z.d,
        "eta": z.avoided,
        "leading_scale": z.leading_scale,
        "element": shapovalov::format_element(z),
        "terms": cache::uea_to_json(&z.element),
        "divided_coordinates": divided,
        "order_key": pbw::ORDER_KEY,
    })
}

fn cached_element(
    builder: &mut Builder,
    cache: Option<&Cache>,
    gamma: &RootElement,
    d: u32,
    eta: Option<usize>,
) -> Result<ShapovalovElement, Error> {
    if let Some(z) = cache.and_then(|c| c.get(gamma, d, eta)) {
        return Ok(z);
    }
    let z = match eta {
        None => builder.integral_shapovalov(gamma, d)?,
        Some(k) => {
            let base = cached_element(builder, cache, gamma, d, None)?;
            builder.eta_avoiding(&base, k)?
        }
    };
    if let Some(c) = cache {
        // A cache that cannot be written only costs recomputation.
        let _ = c.put(&z);
    }
    Ok(z)
}

fn cmd_shapovalov(args: &ShapovalovArgs, config: &Config) -> CmdResult {
    let datum = RootDatum::a1();
    let gamma = text::parse_root(&datum, &args.gamma).map_err(fail)?;
    if !datum.is_positive_real_root(&gamma) {
        return Err(usage(format!("{} is not a positive real root", args.gamma)));
    }
    if args.d == 0 {
        return Err(usage("--d must be positive"));
    }
    if let Some(k) = args.eta {
        if k >= datum.n() {
            return Err(usage(format!("η = {k} is not a simple index")));
        }
    }
    let mut builder = Builder::new(&datum).map_err(fail)?;
    builder.budget = config.degree_budget;
    let cache = Cache::locate(config.cache_dir.as_deref());
    let z = cached_element(&mut builder, cache.as_ref(), &gamma, args.d, None).map_err(fail)?;
    let mut elements = vec![z.clone()];
    if let Some(k) = args.eta {
        elements.push(cached_element(&mut builder, cache.as_ref(), &gamma, args.d, Some(k)).map_err(fail)?);
    }
    let mut table = String::new();
    for e in &elements {
        let name = match e.avoided {
            Some(k) => format!("Z_{k}"),
            None => "Z".into(),
        };
        table.push_str(&format!("{name} = {}\n", shapovalov::format_element(e)));
    }
    let mut code = EXIT_OK;
    let mut verification = Value::Null;
    if args.verify {
        let singular = shapovalov::verify_singular(&datum, &z, config.samples).map_err(fail)?;
        let factor = shapovalov::factor_formula_check(&mut builder, &z, config.factor_height).map_err(fail)?;
        let exact = factor.entries.iter().filter(|e| e.exact).count();
        let restricted = factor.entries.iter().filter(|e| e.on_hyperplane).count();
        let total = factor.entries.len();
        if !singular.passed() || !factor.passed() {
            code = EXIT_NEGATIVE;
        }
        table.push_str(&format!(
            "singular at {} sample points: {}\n",
            singular.samples.len(),
            if singular.passed() { "pass" } else { "FAIL" }
        ));
        table.push_str(&format!(
            "factor formula: {} ({restricted}/{total} on the hyperplane, {exact}/{total} exact)\n",
            if factor.passed() { "pass" } else { "FAIL" }
        ));
        verification = json!({
            "singular": { "samples": singular.samples.len(), "passed": singular.passed() },
            "factor_formula": {
                "entries": total,
                "exact": exact,
                "on_hyperplane": restricted,
                "passed": factor.passed(),
            },
        });
    }
    let rows: Vec<Value> = elements.iter().map(|e| element_json(&datum, e)).collect();
    let json = json!({ "elements": rows, "verification": verification });
    Ok((code, Report { json, rows, table }))
}

pub fn certificate_json(datum: &RootDatum, c: &HomCertificate) -> Value {
    json!({
        "kind": match c.kind { HomKind::Weyl => "weyl-hom", HomKind::Verma => "verma-hom" },
        "lambda": text::format_weight_linear(&c.lambda),
        "mu": text::format_weight_linear(&c.mu),
        "gamma": text::format_root_affine(datum, &c.gamma),
        "D": c.d,
        "e": c.e,
        "M": c.m,
        "p": c.p,
        "eta": c.eta,
        "g": c.g,
        "basis": c.basis_labels,
        "coordinates": c.coordinates.iter().map(big_to_json).collect::<Vec<_>>(),
        "checks": c.checks.iter().map(|k| json!({ "i": k.i, "n": k.n, "pass": k.pass })).collect::<Vec<_>>(),
        "valid": c.valid(),
    })
}

fn cmd_verify(kind: HomKind, args: &HomArgs, config: &Config) -> CmdResult {
    let datum = RootDatum::a1();
    let lambda = text::parse_weight(&datum, &args.lambda).map_err(fail)?;
    let gamma = text::parse_root(&datum, &args.gamma).map_err(fail)?;
    let p = check_prime(args.prime)?;
    let mut v = Verma::new(&datum).map_err(fail)?;
    v.dimension_budget = config.dimension_budget;
    v.height_budget = config.height_budget;
    v.builder().budget = config.degree_budget;
    let cert = match kind {
        HomKind::Weyl => v.weyl_hom_check(&lambda, &gamma, args.d, args.eta, p),
        HomKind::Verma => v.verma_hom_check(&lambda, &gamma, args.d, args.eta, p),
    }
    .map_err(fail)?;
    let json = certificate_json(&datum, &cert);
    let mut table = String::new();
    for key in ["kind", "lambda", "mu", "gamma", "D", "e", "M", "p", "eta", "g", "basis", "coordinates", "valid"] {
        let v = &json[key];
        table.push_str(&format!("{key}: {}\n", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())));
    }
    for k in &cert.checks {
        table.push_str(&format!("e_{}^({}): {}\n", k.i, k.n, if k.pass { "pass" } else { "FAIL" }));
    }
    let code = if cert.valid() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, Report { rows: vec![json.clone()], json, table }))
}

fn cmd_linkage(args: &LinkageArgs, config: &Config) -> CmdResult {
    let kind = AffineType::parse(&args.kind).map_err(fail)?;
    let datum = RootDatum::load(kind).map_err(fail)?;
    let x = text::parse_weight(&datum, &args.from).map_err(fail)?;
    let y = text::parse_weight(&datum, &args.to).map_err(fail)?;
    let p = check_prime(args.prime)?;
    let mut bounds = config.search_bounds();
    if let Some(d) = args.depth {
        if d == 0 {
            return Err(usage("--depth must be positive"));
        }
        bounds.depth = d;
    }
    let chain = weylgroup::linkage_chain(&datum, &x, &y, p, &bounds);
    let w = |w: &Weight| text::format_weight_linear(w);
    let rows: Vec<Value> = chain
        .iter()
        .flatten()
        .map(|l| {
            json!({
                "from": w(&l.from),
                "to": w(&l.to),
                "beta": text::format_root_affine(&datum, &l.step.beta),
                "n": l.step.n,
                "m": l.step.m,
            })
        })
        .collect();
    let mut table = String::new();
    match &chain {
        None => table.push_str("none within bounds\n"),
        Some(c) if c.is_empty() => table.push_str("identical weights: empty chain\n"),
        Some(_) => {
            for r in &rows {
                table.push_str(&format!(
                    "{} ↑ {}  β = {}, n = {}, m = {}\n",
                    r["from"].as_str().unwrap_or_default(),
                    r["to"].as_str().unwrap_or_default(),
                    r["beta"].as_str().unwrap_or_default(),
                    r["n"],
                    r["m"]
                ));
            }
        }
    }
    let json = json!({
        "from": w(&x),
        "to": w(&y),
        "p": p,
        "found": chain.is_some(),
        "chain": rows,
    });
    let code = if chain.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, Report { json, rows, table }))
}
