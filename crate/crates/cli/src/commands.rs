use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use qsi_core::catalog::{small_groups, Catalog};
use qsi_core::chartab::character_table;
use qsi_core::lietype::{
    eliminate as eliminate_family, group_order, is_zsigmondy_exception, primitive_prime_divisors, singer_torus_order,
    steinberg_degree, LieFamily,
};
use qsi_core::permgroup::parse_generator_file;
use qsi_core::qsi::{verify_witness, Mode, QsiContext, QsiVerdict, SearchOptions, Status};
use qsi_core::{Error, PermGroup};
use serde_json::{json, Value};

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// What a subcommand produced: the same content as text and as JSON.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Set when a bound stopped part of the analysis; names the bound.
    pub capacity: Option<String>,
    /// False when a check inside the command failed.
    pub ok: bool,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Report { text, json, capacity: None, ok: true }
    }
}

/// Bad arguments or unknown names; exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Resolves a catalog id, a small group id `G<n>_<i>` or a generator file.
pub fn resolve_group(catalog: &Catalog, name: &str) -> Result<(String, PermGroup)> {
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok((id, parse_generator_file(&text)?));
    }
    if let Some((n, i)) = parse_small_id(name) {
        if n <= 24 {
            if let Some(g) = small_groups(n)?.into_iter().find(|g| g.order == n && g.index == i) {
                return Ok((g.id(), g.group));
            }
        }
        return Err(UsageError(format!("no small group `{name}` (orders up to 24 are built in)")).into());
    }
    match catalog.load(name) {
        Ok(g) => Ok((catalog.entry(name)?.id.clone(), g)),
        Err(Error::NotFound(_)) => Err(UsageError(format!(
            "unknown group `{name}`; known ids: {}",
            catalog.ids().join(", ")
        ))
        .into()),
        Err(e) => Err(e.into()),
    }
}

fn parse_small_id(name: &str) -> Option<(usize, usize)> {
    let (n, i) = name.strip_prefix('G')?.split_once('_')?;
    Some((n.parse().ok()?, i.parse().ok()?))
}

pub fn table(catalog: &Catalog, name: &str) -> Result<Report> {
    let (id, group) = resolve_group(catalog, name)?;
    let t = character_table(&group)?;
    let text = format!("{id}, order {}, {} classes\n{}", group.order(), t.len(), t.render());
    let json = json!({
        "command": "table",
        "group": id,
        "order": group.order(),
        "table": t.to_json(),
    });
    Ok(Report::new(text, json))
}

/// `4`, `deg:4` or `idx:3` (1-based, as in the printed table).
fn select_characters(ctx: &QsiContext, spec: &str) -> Result<Vec<usize>> {
    let table = ctx.table();
    let bad = || UsageError(format!("bad --char `{spec}`: use a degree (`4`, `deg:4`) or an index (`idx:3`)"));
    if let Some(i) = spec.strip_prefix("idx:") {
        let i: usize = i.parse().map_err(|_| bad())?;
        if i == 0 || i > table.len() {
            return Err(UsageError(format!("index {i} out of range 1..={}", table.len())).into());
        }
        return Ok(vec![i - 1]);
    }
    let d: i128 = spec.strip_prefix("deg:").unwrap_or(spec).parse().map_err(|_| bad())?;
    let found: Vec<usize> = (0..table.len()).filter(|&i| table.irreducible(i).degree() == d).collect();
    if found.is_empty() {
        return Err(UsageError(format!("no irreducible of degree {d}; degrees are {:?}", table.degrees())).into());
    }
    Ok(found)
}

fn verdict_line(v: &QsiVerdict) -> String {
    let mut line = format!("X.{:<3} degree {:<5} {}", v.character_index + 1, v.character.degree(), v.status.as_str());
    match (&v.witness, v.status) {
        (Some(w), _) => {
            let _ = write!(
                line,
                "  U order {} (class {}), phi = U-irreducible {}, k = {}, |ker phi| = {}",
                w.subgroup.order(),
                w.subgroup_class.map_or("G".to_string(), |c| c.to_string()),
                w.char_index + 1,
                w.multiplier,
                w.kernel_order
            );
        }
        (None, Status::UndecidedCapacity) => {
            let _ = write!(line, "  {}", v.capacity.as_ref().map(|e| e.to_string()).unwrap_or_default());
        }
        (None, _) => {
            let prefiltered = v.pruning_log.iter().filter(|e| e.outcome.is_prefilter()).count();
            let _ = write!(
                line,
                "  {} subgroup classes examined, {prefiltered} rejected by prefilters",
                v.pruning_log.len()
            );
        }
    }
    line
}

pub fn qsi(
    catalog: &Catalog,
    name: &str,
    character: Option<&str>,
    monomial: bool,
    options: SearchOptions,
) -> Result<Report> {
    let (id, group) = resolve_group(catalog, name)?;
    let ctx = QsiContext::new(&group, options)?;
    let mode = if monomial { Mode::Monomial } else { Mode::Qsi };
    let (verdicts, conclusion) = match character {
        Some(spec) => {
            let picked = select_characters(&ctx, spec)?;
            let verdicts = picked.iter().map(|&i| ctx.decide(i, mode)).collect::<qsi_core::Result<Vec<_>>>()?;
            (verdicts, None)
        }
        None => {
            let gv = ctx.decide_all(mode)?;
            let c = gv.conclusion();
            (gv.verdicts, c)
        }
    };
    for v in &verdicts {
        if let Some(w) = &v.witness {
            verify_witness(&v.character, w, mode)?;
        }
    }
    let solvable = ctx.is_solvable()?;
    let kind = if monomial { "monomial" } else { "QSI" };
    let mut text = format!(
        "{id}, order {}, mode {}, solvable: {}\n",
        group.order(),
        if monomial { "monomial" } else { "qsi" },
        if solvable { "yes" } else { "no" }
    );
    for v in &verdicts {
        text.push_str(&verdict_line(v));
        text.push('\n');
    }
    if character.is_none() {
        let _ = writeln!(
            text,
            "conclusion: {}",
            match conclusion {
                Some(true) => format!("{id} is {kind}"),
                Some(false) => format!("{id} is not {kind}"),
                None => "undecided".to_string(),
            }
        );
    }
    let capacity = verdicts
        .iter()
        .find_map(|v| v.capacity.as_ref())
        .map(|e| e.to_string());
    let json = json!({
        "command": "qsi",
        "group": id,
        "order": group.order(),
        "mode": mode,
        "solvable": solvable,
        "conclusion": conclusion,
        "verdicts": verdicts.iter().map(QsiVerdict::to_json).collect::<Vec<_>>(),
    });
    Ok(Report { text, json, capacity, ok: true })
}

fn family_args(args: &[String]) -> Result<(LieFamily, u64)> {
    let num = |s: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| UsageError(format!("`{s}` is not a non-negative integer")).into())
    };
    let (family, q) = match args {
        [f, q] => (LieFamily::parse(f, None), num(q)?),
        [f, n, q] => {
            let n = u32::try_from(num(n)?).map_err(|_| UsageError("dimension too large".into()))?;
            (LieFamily::parse(f, Some(n)), num(q)?)
        }
        _ => return Err(UsageError("expected <family> [n] <q>".into()).into()),
    };
    let family = family.map_err(|e| UsageError(e.to_string()))?;
    Ok((family, q))
}

pub fn order(args: &[String]) -> Result<Report> {
    let (family, q) = family_args(args)?;
    let o = group_order(family, q)?;
    let st = steinberg_degree(family, q)?;
    let torus = singer_torus_order(family, q).ok();
    let mut text = format!("{}\n", o.simple);
    let _ = writeln!(text, "group              {}", family.name_at(q));
    let _ = writeln!(text, "simply connected   {}", o.simply_connected);
    let _ = writeln!(text, "center             {}", o.center);
    let _ = writeln!(text, "characteristic     {}", o.characteristic);
    let _ = writeln!(text, "steinberg degree   {st}");
    if let Some(t) = &torus {
        let _ = writeln!(text, "torus element      {} = {}", t.order_expression, t.element_order);
    }
    if let Some(note) = &o.note {
        let _ = writeln!(text, "note               {note}");
    }
    let json = json!({
        "command": "order",
        "name": family.name_at(q),
        "order": o,
        "steinberg_degree": st.to_string(),
        "torus": torus,
    });
    Ok(Report::new(text, json))
}

pub fn zsigmondy(d: u64, n: u32) -> Result<Report> {
    if d < 2 || n < 2 {
        return Err(UsageError("need d >= 2 and n >= 2".into()).into());
    }
    let ppds = primitive_prime_divisors(d, n)?;
    let exception = is_zsigmondy_exception(d, n);
    let text = match ppds.first() {
        None => "none (exception)\n".to_string(),
        Some(p) if ppds.len() == 1 => format!("{p}\n"),
        Some(p) => {
            let all: Vec<String> = ppds.iter().map(u128::to_string).collect();
            format!("{p}\nall: {}\n", all.join(" "))
        }
    };
    let json = json!({
        "command": "zsigmondy",
        "d": d,
        "n": n,
        "smallest": ppds.first().map(u128::to_string),
        "primitive_prime_divisors": ppds.iter().map(u128::to_string).collect::<Vec<_>>(),
        "exception": exception,
    });
    Ok(Report::new(text, json))
}

pub fn eliminate(args: &[String]) -> Result<Report> {
    let (family, q) = family_args(args)?;
    let report = eliminate_family(family, q)?;
    report.verify()?;
    let mut json = report.to_json();
    json["command"] = json!("eliminate");
    json["name"] = json!(family.name_at(q));
    Ok(Report::new(report.render(), json))
}

pub fn list(catalog: &Catalog) -> Report {
    let mut text = String::new();
    for e in catalog.entries() {
        let _ = writeln!(text, "{:<10} {:>6}  {}", e.id, e.expected_order, e.notes);
    }
    for s in catalog.subgroups() {
        let _ = writeln!(text, "{:<10} {:>6}  in {}: {}", s.id, s.expected_order, s.parent, s.notes);
    }
    let json = json!({
        "command": "list",
        "groups": catalog.entries(),
        "subgroups": catalog.subgroups(),
    });
    Report::new(text, json)
}

pub fn list_cases() -> Report {
    let text: String = crate::cases::CASES.iter().map(|(id, what)| format!("{id:<26} {what}\n")).collect();
    let json = json!({
        "command": "list-cases",
        "cases": crate::cases::CASES.iter().map(|(id, what)| json!({"id": id, "description": what})).collect::<Vec<_>>(),
    });
    Report::new(text, json)
}

pub fn schema() -> Report {
    let json: Value = serde_json::from_str(SCHEMA).expect("schema is valid JSON");
    Report::new(SCHEMA.to_string(), json)
}
