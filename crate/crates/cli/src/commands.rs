use std::path::Path;

use invforge_core::golden;
use invforge_core::groupenum::{count_transvections, standard_group};
use invforge_core::hilbert::series_for_group;
use invforge_core::invariants::{verify_identity, InvariantError, RelationKind, IDENTITIES};
use invforge_core::{GroupKind, Options, PolyMatrix, Polynomial, SpaceKind, Tower};
use serde_json::{json, Value};

pub const TARGETS: [&str; 11] = ["xi", "dickson", "lambda", "lambda-i", "omega", "omega-pm", "chern", "eta", "ke", "jf", "relations"];

pub struct Ctx {
    pub json: bool,
    pub allow_slow: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 1, message: msg.into() }
    }

    fn failed(msg: impl Into<String>) -> Self {
        Failure { code: 2, message: msg.into() }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::SlowGated { .. } => Failure::usage(format!("{e} (pass --allow-slow)")),
            InvariantError::SizeLimitExceeded { .. } | InvariantError::InvalidArgument(_) | InvariantError::UnknownIdentity(_) => {
                Failure::usage(e.to_string())
            }
            other => Failure::failed(other.to_string()),
        }
    }
}

type Res = Result<(), Failure>;

fn s(p: &Polynomial) -> Value {
    Value::String(p.to_canonical_string())
}

fn list(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(s).collect())
}

fn matrix(m: &PolyMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array((0..m.cols()).map(|c| s(m.get(r, c))).collect())).collect())
}

/// Plain output is `key = value` per line, or the bare value for a single string.
fn emit(ctx: &Ctx, head: Value, items: Vec<(String, Value)>) {
    if ctx.json {
        let mut obj = head.as_object().cloned().unwrap_or_default();
        obj.insert("schema".into(), json!(1));
        obj.insert("result".into(), Value::Object(items.into_iter().collect()));
        println!("{}", Value::Object(obj));
        return;
    }
    if let [(_, Value::String(v))] = items.as_slice() {
        println!("{v}");
        return;
    }
    for (k, v) in items {
        plain(&k, &v);
    }
}

fn plain(key: &str, v: &Value) {
    match v {
        Value::String(x) => println!("{key} = {x}"),
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                plain(&format!("{key}[{i}]"), x);
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                plain(&format!("{key}.{k}"), x);
            }
        }
        other => println!("{key} = {other}"),
    }
}

fn group_kind(name: &str) -> Result<GroupKind, Failure> {
    GroupKind::parse(name).ok_or_else(|| Failure::usage(format!("unknown group `{name}`")))
}

fn space_kind(group: Option<&str>) -> Result<SpaceKind, Failure> {
    match group.unwrap_or("o-odd") {
        "o-odd" => Ok(SpaceKind::OddNonsingular),
        "o-plus" => Ok(SpaceKind::EvenPlus),
        "o-minus" => Ok(SpaceKind::EvenMinus),
        other => Err(Failure::usage(format!("`{other}` has no quadratic model here; use o-odd, o-plus or o-minus"))),
    }
}

fn signs(sign: Option<&str>) -> Vec<bool> {
    match sign {
        Some("+") => vec![true],
        Some("-") => vec![false],
        _ => vec![true, false],
    }
}

fn sign_name(plus: bool) -> &'static str {
    if plus {
        "+"
    } else {
        "-"
    }
}

fn opts(ctx: &Ctx) -> Options {
    Options { allow_slow: ctx.allow_slow }
}

pub fn compute(ctx: &Ctx, target: &str, n: usize, sign: Option<&str>, i: Option<usize>, group: Option<&str>) -> Res {
    let t = Tower::new(n, opts(ctx))?;
    let mut items: Vec<(String, Value)> = Vec::new();
    match target {
        "xi" => {
            let c = t.ctx(space_kind(group)?)?;
            items.extend(c.xi.iter().enumerate().map(|(j, p)| (format!("xi{j}"), s(p))));
        }
        "dickson" => {
            let d = t.dickson(space_kind(group)?)?;
            items.extend(d.c.iter().enumerate().map(|(j, p)| (format!("c{j}"), s(p))));
        }
        "lambda" => items.push(("lambda".into(), s(t.lambda()?))),
        "lambda-i" => {
            let i = i.ok_or_else(|| Failure::usage("lambda-i needs --i"))?;
            if i > 2 * n {
                return Err(Failure::usage(format!("--i must be at most {}", 2 * n)));
            }
            items.push((format!("lambda_{},{i}", 2 * n), s(t.lambda_i(i)?)));
        }
        "omega" => items.push(("omega".into(), s(t.omega()?))),
        "omega-pm" => {
            let pm = t.omega_pm()?;
            for plus in signs(sign) {
                items.push((format!("omega{}", sign_name(plus)), s(pm.get(plus))));
                items.push((format!("alpha{}", sign_name(plus)), list(pm.alphas(plus))));
            }
        }
        "chern" => {
            let ch = t.chern(space_kind(group)?)?;
            for plus in signs(sign) {
                items.push((format!("P{}", sign_name(plus)), s(ch.get_p(plus))));
                items.push((format!("Q{}", sign_name(plus)), s(ch.get_q(plus))));
            }
            items.extend(ch.d.iter().enumerate().map(|(k, p)| (format!("d{}", n + k), s(p))));
        }
        "eta" => items.push(("eta".into(), s(&t.eta()?))),
        "ke" => {
            let ke = t.ke()?;
            items.push(("K".into(), matrix(&ke.k)));
            items.push(("E".into(), matrix(&ke.e)));
        }
        "jf" => {
            let jf = t.jf()?;
            items.push(("J".into(), matrix(&jf.j)));
            items.push(("F".into(), matrix(&jf.f)));
        }
        "relations" => {
            let name = group.unwrap_or("o-odd");
            let kind = RelationKind::parse(name).ok_or_else(|| Failure::usage(format!("unknown group `{name}`")))?;
            let sys = t.relations(kind)?;
            let rel: Vec<Value> = sys
                .relators
                .iter()
                .zip(&sys.eliminates)
                .map(|(r, e)| match e {
                    Some(v) => json!({ "relator": s(r), "defines": v }),
                    None => json!({ "relator": s(r) }),
                })
                .collect();
            items.push(("relators".into(), Value::Array(rel)));
            items.push(("determinants".into(), Value::Object(sys.claimed_dets.iter().map(|(k, p)| (k.clone(), s(p))).collect())));
            if ctx.json {
                items.push(("matrices".into(), Value::Object(sys.matrices.iter().map(|(k, m)| (k.clone(), matrix(m))).collect())));
            }
            items.push(("residues_checked".into(), json!(sys.residues_checked)));
        }
        other => return Err(Failure::usage(format!("unknown target `{other}`"))),
    }
    emit(ctx, json!({ "command": "compute", "target": target, "n": n }), items);
    Ok(())
}

pub fn list_identities(ctx: &Ctx) -> Res {
    if ctx.json {
        println!("{}", json!({ "schema": 1, "identities": IDENTITIES }));
    } else {
        for name in IDENTITIES {
            println!("{name}");
        }
    }
    Ok(())
}

pub fn verify(ctx: &Ctx, name: Option<&str>, n: Option<usize>, all: bool) -> Res {
    let names: Vec<&str> = if all { IDENTITIES.to_vec() } else { vec![name.expect("clap requires --name")] };
    if let Some(bad) = names.iter().find(|x| !IDENTITIES.contains(x)) {
        return Err(Failure::usage(format!("unknown identity `{bad}`; see `verify --list`")));
    }
    let ns: Vec<usize> = match n {
        Some(n) => vec![n],
        None if all => vec![1, 2],
        None => return Err(Failure::usage("--n is required")),
    };
    let mut failed = 0;
    let mut reports = Vec::new();
    for n in ns {
        let t = Tower::new(n, opts(ctx))?;
        for name in &names {
            let r = match verify_identity(name, &t) {
                Err(e @ InvariantError::SizeLimitExceeded { .. }) if all => {
                    if ctx.json {
                        reports.push(json!({ "name": name, "n": n, "skipped": e.to_string() }));
                    } else {
                        println!("SKIP {name} n={n} ({e})");
                    }
                    continue;
                }
                r => r?,
            };
            if !r.passed {
                failed += 1;
            }
            if ctx.json {
                reports.push(json!({ "name": r.name, "n": r.n, "passed": r.passed, "checks": r.checks, "diff": r.diff }));
            } else {
                println!("{} {} n={}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.n);
                if let Some(d) = &r.diff {
                    println!("  {d}");
                }
            }
        }
    }
    if ctx.json {
        println!("{}", json!({ "schema": 1, "command": "verify", "reports": reports }));
    }
    if failed > 0 {
        return Err(Failure::failed(format!("{failed} identity check(s) failed")));
    }
    Ok(())
}

pub fn enumerate(ctx: &Ctx, group: &str, n: usize, transvections: bool) -> Res {
    let kind = group_kind(group)?;
    let g = standard_group(kind, n).map_err(|e| Failure::usage(e.to_string()))?;
    let mut items = vec![
        ("order".to_string(), json!(g.order())),
        ("order_formula".to_string(), json!(kind.order_formula(n as u32))),
        ("dim".to_string(), json!(g.dim)),
        ("generators".to_string(), json!(g.generators.len())),
    ];
    if transvections {
        let tc = count_transvections(&g);
        items.push(("transvections".into(), json!(tc.count)));
        items.push(("transvection_formula".into(), json!(kind.transvection_formula(n as u32))));
        let per: serde_json::Map<String, Value> = tc.per_hyperplane.iter().map(|(h, c)| (format!("{h:0w$b}", w = g.dim), json!(c))).collect();
        items.push(("per_hyperplane".into(), Value::Object(per)));
    }
    emit(ctx, json!({ "command": "enumerate", "group": kind.name(), "n": n }), items);
    Ok(())
}

fn ratio(r: num_rational::Ratio<i128>) -> Value {
    if r.is_integer() {
        json!(r.to_integer() as i64)
    } else {
        json!(r.to_string())
    }
}

pub fn hilbert(group: &str, n: u32, expand: Option<usize>) -> Res {
    let kind = group_kind(group)?;
    let series = series_for_group(n, kind).map_err(|e| Failure::usage(e.to_string()))?;
    let (order, refl) = series.laurent_leading().map_err(|e| Failure::failed(e.to_string()))?;
    let coeffs = match expand {
        Some(d) => Some(series.expand_coeffs(d).map_err(|e| Failure::usage(e.to_string()))?),
        None => None,
    };
    let mut out = json!({
        "schema": 1,
        "group": kind.name(),
        "n": n,
        "series": { "num": series.numerator_degrees, "den": series.denominator_degrees },
        "order": ratio(order),
        "reflections": ratio(refl),
        "coefficients": coeffs,
    });
    if kind == GroupKind::Sp {
        out["derived"] = json!("symplectic degrees follow the generator and relation structure of the invariant ring");
    }
    println!("{out}");
    Ok(())
}

pub fn goldens(ctx: &Ctx, mode: &str, root: &Path) -> Res {
    let arts = golden::artifacts()?;
    let io = |e: std::io::Error| Failure::failed(format!("{}: {e}", root.display()));
    if mode == "regenerate" {
        let changed = golden::regenerate(root, &arts).map_err(io)?;
        if ctx.json {
            println!("{}", json!({ "schema": 1, "command": "goldens", "mode": mode, "total": arts.len(), "changed": changed }));
        } else {
            for p in &changed {
                println!("M {p}");
            }
            println!("{} of {} files changed", changed.len(), arts.len());
        }
        return Ok(());
    }
    let rep = golden::check(root, &arts).map_err(io)?;
    if ctx.json {
        println!(
            "{}",
            json!({ "schema": 1, "command": "goldens", "mode": mode, "checked": rep.checked, "mismatched": rep.mismatched, "missing": rep.missing })
        );
    } else {
        for p in &rep.mismatched {
            println!("MISMATCH {p}");
        }
        for p in &rep.missing {
            println!("MISSING {p}");
        }
        println!("{} checked, {} mismatched, {} missing", rep.checked, rep.mismatched.len(), rep.missing.len());
    }
    if !rep.ok() {
        return Err(Failure::failed(format!("golden mismatch: {}", [rep.mismatched, rep.missing].concat().join(", "))));
    }
    Ok(())
}
