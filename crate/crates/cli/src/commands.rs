use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use boolinv::booleanization::{
    boolean_hull, booleanize, booleanize_distributive, direct_booleanize, factor_through, Booleanization,
};
use boolinv::completion::{completion_factorize, completion_table};
use boolinv::cuntz::{
    congruent, pm_compose, pm_fix, pm_inverse, pm_join, pm_meet, pm_subtract, poly_product, poly_relate,
    quotient_theta, random_perm_maps, PermMap, PermMapFile, PolyElement,
};
use boolinv::lang::{combine, is_essential, parse_word_list, DefiniteLang, LangFile, LangOp, PrefixCode};
use boolinv::ring_rep::russia_check;
use boolinv::semigroup::{builtin, verify_inverse_semigroup, CayleyTable, Elem, TableFile, BUILTIN_NAMES};

use crate::args::{CtCmd, LangCmd, LangSource, OpArg, PolyCmd, RepCmd, SemigroupCmd, Stage, TableSource};
use crate::error::CliError;

/// Result of a command in both output formats, plus the exit code to use
/// when the command itself succeeded.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            code: 0,
        }
    }

    fn of<T: Serialize>(value: &T, text: impl Into<String>) -> Self {
        Output::new(serde_json::to_value(value).expect("outputs serialize"), text)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

/// A JSON argument: inline when it starts with `{`, otherwise a file path.
fn json_arg(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read(Path::new(arg))
    }
}

fn table_by_name(name: &str) -> Result<CayleyTable, CliError> {
    builtin(name).ok_or_else(|| {
        CliError::invalid(format!("unknown table {name}; built-in tables are {}", BUILTIN_NAMES.join(", ")))
    })
}

fn table_file(src: &TableSource) -> Result<TableFile, CliError> {
    match (&src.builtin, &src.input) {
        (Some(name), _) => Ok(table_by_name(name)?.to_file()),
        (None, Some(path)) => Ok(TableFile::from_json(&read(path)?)?),
        (None, None) => Err(CliError::invalid("give --builtin or --in")),
    }
}

fn load_table(src: &TableSource) -> Result<CayleyTable, CliError> {
    Ok(CayleyTable::from_file(&table_file(src)?)?)
}

fn parse_indices(s: &str, bound: usize) -> Result<Vec<Elem>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let i: usize = p
                .trim()
                .parse()
                .map_err(|_| CliError::invalid(format!("not an index: {p}")))?;
            if i >= bound {
                return Err(CliError::invalid(format!("index {i} out of range 0..{bound}")));
            }
            Ok(Elem(i))
        })
        .collect()
}

fn render_table(t: &CayleyTable) -> String {
    let width = t.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:>width$}");
    let mut out = format!("{} ({} elements)\n", t.name(), t.len());
    let header: Vec<String> = t.labels().iter().map(|l| pad(l)).collect();
    let _ = writeln!(out, "{} | {}", pad("·"), header.join(" "));
    for a in t.elements() {
        let row: Vec<String> = t.elements().map(|b| pad(t.label(t.mul(a, b)))).collect();
        let _ = writeln!(out, "{} | {}", pad(t.label(a)), row.join(" "));
    }
    out
}

fn indices(map: &[Elem]) -> Vec<usize> {
    map.iter().map(|e| e.0).collect()
}

pub fn semigroup(cmd: &SemigroupCmd) -> Result<Output, CliError> {
    match cmd {
        SemigroupCmd::Verify(src) => {
            let file = table_file(src)?;
            let report = verify_inverse_semigroup(&file)?;
            let mut out = Output::new(
                json!({"ok": report.is_ok(), "violations": report.violations}),
                if report.is_ok() { "ok".to_string() } else { report.to_string() },
            );
            out.code = if report.is_ok() { 0 } else { 1 };
            Ok(out)
        }
        SemigroupCmd::Classify(src) => {
            let c = load_table(src)?.classify();
            let text = format!(
                "distributive: {}\nboolean: {}\nmeet semigroup: {}\nmonoid: {}",
                c.is_distributive, c.is_boolean, c.is_meet_semigroup, c.is_monoid
            );
            Ok(Output::of(&c, text))
        }
        SemigroupCmd::Complete(src) => {
            let t = load_table(src)?;
            let c = completion_table(&t)?;
            let ideals: Vec<String> = c.ideals.iter().map(|i| i.label(&t)).collect();
            let json = json!({
                "size": c.dtable.len(),
                "dtable": c.dtable.to_file(),
                "delta": indices(&c.delta),
                "ideals": ideals,
            });
            Ok(Output::new(json, render_table(&c.dtable)))
        }
        SemigroupCmd::Booleanize {
            table,
            direct,
            distributive,
        } => {
            let t = load_table(table)?;
            if *direct {
                let d = direct_booleanize(&t)?;
                let mut json = booleanization_json(&d.booleanization);
                json["certified"] = json!(d.certified);
                json["iso"] = json!(indices(&d.iso));
                let text = format!("{}certified: {}\n", render_table(&d.booleanization.btable), d.certified);
                return Ok(Output::new(json, text));
            }
            let b = if *distributive {
                booleanize_distributive(&t)?
            } else {
                booleanize(&t)?
            };
            Ok(Output::new(booleanization_json(&b), render_table(&b.btable)))
        }
        SemigroupCmd::Hull { table, sub } => {
            let t = load_table(table)?;
            let (ambient, members) = match sub {
                Some(s) => {
                    let members = parse_indices(s, t.len())?;
                    (t, members)
                }
                None => {
                    let b = booleanize(&t)?;
                    (b.btable.clone(), b.iota.clone())
                }
            };
            let h = boolean_hull(&ambient, &members)?;
            let json = json!({
                "ambient_size": ambient.len(),
                "size": h.members.len(),
                "members": indices(&h.members),
                "isomorphic": h.isomorphic,
            });
            let labels: Vec<&str> = h.members.iter().map(|&m| ambient.label(m)).collect();
            let text = format!(
                "hull has {} of {} elements; isomorphic to B(D): {}\n{}",
                h.members.len(),
                ambient.len(),
                h.isomorphic,
                labels.join("\n")
            );
            Ok(Output::new(json, text))
        }
        SemigroupCmd::Factor {
            table,
            target,
            target_in,
            map,
            through,
        } => {
            let s = load_table(table)?;
            let t = match (target, target_in) {
                (Some(name), _) => table_by_name(name)?,
                (None, Some(path)) => CayleyTable::from_file(&TableFile::from_json(&read(path)?)?)?,
                (None, None) => return Err(CliError::invalid("give --target or --target-in")),
            };
            let theta = parse_indices(map, t.len())?;
            if theta.len() != s.len() {
                return Err(CliError::invalid(format!(
                    "map has {} entries for {} elements",
                    theta.len(),
                    s.len()
                )));
            }
            let (gamma, unique) = match through {
                Stage::Completion => {
                    let c = completion_table(&s)?;
                    let f = completion_factorize(&s, &c, &theta, &t)?;
                    (f.map, f.unique)
                }
                Stage::Booleanization => {
                    let b = booleanize(&s)?;
                    let f = factor_through(&b, &s, &theta, &t)?;
                    (f.gamma, f.unique)
                }
            };
            let labels: Vec<&str> = gamma.iter().map(|&g| t.label(g)).collect();
            let text = format!("gamma: {}\nunique: {unique}", labels.join(" "));
            Ok(Output::new(json!({"gamma": indices(&gamma), "unique": unique}), text))
        }
    }
}

fn booleanization_json(b: &Booleanization) -> Value {
    let g = &b.groupoid;
    let arrows: Vec<&str> = g.arrows().iter().map(|&p| g.carrier().label(p)).collect();
    let bisections: Vec<Vec<usize>> = b.bisections.iter().map(|x| x.arrows()).collect();
    json!({
        "size": b.len(),
        "btable": b.btable.to_file(),
        "beta": indices(&b.beta),
        "arrows": arrows,
        "bisections": bisections,
    })
}

fn lang_source(src: &LangSource) -> Result<DefiniteLang, CliError> {
    if let Some(path) = &src.input {
        let file: LangFile = serde_json::from_str(&read(path)?).map_err(CliError::invalid)?;
        return Ok(file.parse()?);
    }
    let n = src
        .alphabet
        .ok_or_else(|| CliError::invalid("give --alphabet or --in"))?;
    Ok(DefiniteLang::normalize(
        n,
        &parse_word_list(&src.bounded, n)?,
        &parse_word_list(&src.code, n)?,
    )?)
}

fn lang_arg(arg: &str) -> Result<DefiniteLang, CliError> {
    let file: LangFile = serde_json::from_str(&json_arg(arg)?).map_err(CliError::invalid)?;
    Ok(file.parse()?)
}

pub fn lang(cmd: &LangCmd) -> Result<Output, CliError> {
    match cmd {
        LangCmd::Normalize(src) => {
            let l = lang_source(src)?;
            Ok(Output::of(&l, l.to_string()))
        }
        LangCmd::Combine { op, left, right } => {
            let op = match op {
                OpArg::Union => LangOp::Union,
                OpArg::Intersect => LangOp::Intersect,
                OpArg::Difference => LangOp::Difference,
                OpArg::Complement => LangOp::Complement,
            };
            let l1 = lang_arg(left)?;
            let l2 = right.as_deref().map(lang_arg).transpose()?;
            let l = combine(op, &l1, l2.as_ref())?;
            Ok(Output::of(&l, l.to_string()))
        }
        LangCmd::Essential { alphabet, code } => {
            let code = PrefixCode::new(parse_word_list(code, *alphabet)?)?;
            let e = is_essential(&code, *alphabet);
            let text = match &e.complement {
                Some(c) => {
                    let ws: Vec<String> = c.iter().map(|w| w.to_string()).collect();
                    format!("essential; complement {{{}}}", ws.join(", "))
                }
                None => "not essential".to_string(),
            };
            Ok(Output::of(&e, text))
        }
    }
}

pub fn poly(cmd: &PolyCmd) -> Result<Output, CliError> {
    match cmd {
        PolyCmd::Mul { n, elements } => {
            let parsed = elements
                .iter()
                .map(|s| PolyElement::parse(s, *n))
                .collect::<Result<Vec<_>, _>>()?;
            let p = parsed
                .iter()
                .skip(1)
                .fold(parsed[0].clone(), |acc, x| poly_product(&acc, x));
            Ok(Output::of(&p, p.render()))
        }
        PolyCmd::Relate { n, a, b } => {
            let r = poly_relate(&PolyElement::parse(a, *n)?, &PolyElement::parse(b, *n)?);
            let text = format!(
                "leq: {}\ngeq: {}\ncompatible: {}\northogonal: {}",
                r.leq, r.geq, r.compatible, r.orthogonal
            );
            Ok(Output::of(&r, text))
        }
    }
}

fn perm_map(arg: &str) -> Result<PermMap, CliError> {
    let file: PermMapFile = serde_json::from_str(&json_arg(arg)?).map_err(CliError::invalid)?;
    Ok(file.parse()?)
}

fn map_output(m: &PermMap) -> Output {
    Output::of(m, m.to_string())
}

pub fn ct(cmd: &CtCmd) -> Result<Output, CliError> {
    match cmd {
        CtCmd::Compose { m1, m2 } => Ok(map_output(&pm_compose(&perm_map(m1)?, &perm_map(m2)?)?)),
        CtCmd::Inverse { m } => Ok(map_output(&pm_inverse(&perm_map(m)?))),
        CtCmd::Meet { m1, m2 } => Ok(map_output(&pm_meet(&perm_map(m1)?, &perm_map(m2)?)?)),
        CtCmd::Join { m1, m2 } => Ok(map_output(&pm_join(&perm_map(m1)?, &perm_map(m2)?)?)),
        CtCmd::Subtract { m1, m2 } => Ok(map_output(&pm_subtract(&perm_map(m1)?, &perm_map(m2)?)?)),
        CtCmd::Fix { m } => {
            let l = pm_fix(&perm_map(m)?);
            Ok(Output::of(&l, l.to_string()))
        }
        CtCmd::Quotient { m } => {
            let c = quotient_theta(&perm_map(m)?);
            Ok(Output::of(&c, c.to_string()))
        }
        CtCmd::Congruent { m1, m2 } => {
            let c = congruent(&perm_map(m1)?, &perm_map(m2)?)?;
            Ok(Output::new(json!({"congruent": c}), c.to_string()))
        }
        CtCmd::Random {
            seed,
            n,
            max_len,
            count,
        } => {
            if *n < 2 {
                return Err(CliError::invalid(format!("alphabet of size {n} is too small")));
            }
            let maps = random_perm_maps(*seed, *n, *max_len, *count);
            let text: Vec<String> = maps.iter().map(|m| m.to_string()).collect();
            Ok(Output::of(&maps, text.join("\n")))
        }
    }
}

pub fn rep(cmd: &RepCmd) -> Result<Output, CliError> {
    match cmd {
        RepCmd::RussiaCheck(src) => {
            let t = load_table(src)?;
            let r = russia_check(&t)?;
            let mut text = format!(
                "|S″| = {}, |B(S)| = {}, isomorphic: {} ({} representation)",
                r.s_double_prime_size, r.booleanization_size, r.isomorphic, r.representation
            );
            if let Some(m) = &r.mismatch {
                let _ = write!(text, "\nfirst mismatch: {m}");
            }
            Ok(Output::of(&r, text))
        }
    }
}
