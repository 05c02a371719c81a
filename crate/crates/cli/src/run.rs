use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clonealg_core::alg::{parse_algebra, semantic_dim, similar};
use clonealg_core::birkhoff::{alpha_star, eps_map, hsp_member, hspfin_member, hspw_member, str_check, AlphaStar};
use clonealg_core::clone::{
    check_central, check_hyperidentity_bounded, check_identity, check_meta_identity, clone_gen, free_algebra, term_op,
};
use clonealg_core::term::syntax::{parse_fin, parse_meta, parse_q};
use clonealg_core::term::{bullet, circle, normalize_with_budget};
use clonealg_core::{Error, FiniteAlgebra, Signature, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, Direction, FinSearch, Global, SigSource};
use crate::text;

/// What a command prints and how it exits.
pub struct Output {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

impl Output {
    fn success(json: Value, text: String) -> Self {
        Output { code: 0, json, text }
    }

    fn verdict<H: Serialize, V: Serialize>(v: &Verdict<H, V>, text: String) -> Self {
        Output {
            code: v.exit_code(),
            json: to_json(v),
            text,
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// A failure before or inside an engine call.
#[derive(Debug)]
pub enum Failure {
    Io(String),
    Engine(Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(msg) => f.write_str(msg),
            Failure::Engine(e) => e.fmt(f),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn to_json<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine values serialize")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FiniteAlgebra> {
    parse_algebra(&read(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn signature(src: &SigSource) -> Result<Option<Signature>> {
    Ok(match (&src.sig, &src.alg) {
        (Some(s), _) => Some(Signature::parse(s)?),
        (None, Some(path)) => Some(load(path)?.signature()),
        (None, None) => None,
    })
}

fn check_product(carrier: usize, n: usize, max: u64) -> Result<()> {
    let size = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(carrier as u64));
    match size {
        Some(s) if s <= max => Ok(()),
        _ => Err(Error::ResourceExhausted {
            what: "product carrier",
            limit: max,
        }
        .into()),
    }
}

pub fn dispatch(cmd: &Command, g: &Global) -> Result<Output> {
    match cmd {
        Command::Normalize { term, sig } => {
            let sig = signature(sig)?;
            let nf = normalize_with_budget(&parse_q(term, sig.as_ref())?, g.budget as u64)?;
            Ok(Output::success(json!({ "normal_form": nf }), format!("{nf}\n")))
        }
        Command::Translate { direction, term, sig } => {
            let sig = signature(sig)?;
            let out = match direction {
                Direction::Bullet => bullet(&parse_fin(term, sig.as_ref())?).to_string(),
                Direction::Circle => {
                    let sig = sig.ok_or_else(|| Failure::Io("circle needs --sig or --alg".into()))?;
                    circle(&parse_meta(term, Some(&sig))?, &sig)?.to_string()
                }
            };
            Ok(Output::success(json!({ "term": out }), format!("{out}\n")))
        }
        Command::Dim { algebra, op } => {
            let a = load(algebra)?;
            if let Some(name) = op {
                a.op(name)?;
            }
            let rows: Vec<Value> = a
                .ops()
                .iter()
                .filter(|(name, _)| op.as_ref().is_none_or(|o| o == *name))
                .map(|(name, t)| json!({ "op": name, "arity": t.arity(), "dim": semantic_dim(t) }))
                .collect();
            let text = text::dims(&rows);
            Ok(Output::success(Value::Array(rows), text))
        }
        Command::Similar { algebra, left, right } => {
            let a = load(algebra)?;
            let same = similar(a.op(left)?, a.op(right)?)?;
            Ok(Output {
                code: if same { 0 } else { 1 },
                json: json!({ "similar": same }),
                text: if same { "similar\n" } else { "not similar\n" }.to_string(),
            })
        }
        Command::Clone { algebra, arity } => {
            let level = clone_gen(&load(algebra)?, *arity, g.budget)?;
            Ok(Output::success(to_json(&level), text::clone_level(&level)))
        }
        Command::CheckId { algebra, left, right } => {
            let a = load(algebra)?;
            let sig = a.signature();
            let v = check_identity(&a, &parse_fin(left, Some(&sig))?, &parse_fin(right, Some(&sig))?)?;
            Ok(Output::verdict(&v, text::verdict(&v, |_| String::new(), text::counterexample)))
        }
        Command::CheckMetaId { algebra, left, right } => {
            let a = load(algebra)?;
            let sig = a.signature();
            let v = check_meta_identity(&a, &parse_meta(left, Some(&sig))?, &parse_meta(right, Some(&sig))?)?;
            Ok(Output::verdict(&v, text::verdict(&v, |_| String::new(), text::point_counterexample)))
        }
        Command::CheckHyper { algebra, left, right, bound } => {
            let a = load(algebra)?;
            let sig = a.signature();
            let (t, u) = (parse_meta(left, Some(&sig))?, parse_meta(right, Some(&sig))?);
            let v = check_hyperidentity_bounded(&a, &t, &u, *bound, g.budget as u64)?;
            Ok(Output::verdict(&v, text::verdict(&v, |_| String::new(), text::hyper_counterexample)))
        }
        Command::Central { algebra, term } => {
            let a = load(algebra)?;
            let op = term_op(&a, &parse_meta(term, Some(&a.signature()))?)?;
            let v = check_central(&op)?;
            Ok(Output::verdict(&v, text::verdict(&v, |_| String::new(), text::central_violation)))
        }
        Command::Free { algebra, rank } => {
            let a = load(algebra)?;
            let free = free_algebra(&a, *rank, g.budget)?;
            if free.level.len() as u64 > g.max_product {
                return Err(Error::ResourceExhausted {
                    what: "free algebra carrier",
                    limit: g.max_product,
                }
                .into());
            }
            let json = json!({ "rank": rank, "generators": free.generators(), "level": free.level, "algebra": free.algebra });
            Ok(Output::success(json, text::free(*rank, &free)))
        }
        Command::Eps { pair, arity } => {
            let (a, b) = (load(&pair.from)?, load(&pair.to)?);
            let v = eps_map(&a, &b, *arity, g.budget)?;
            Ok(Output::verdict(&v, text::verdict(&v, text::eps, |s| format!("{s}\n"))))
        }
        Command::Hsp { pair, gens } => {
            let (a, b) = (load(&pair.from)?, load(&pair.to)?);
            let v = hsp_member(&a, &b, gens.as_deref(), g.budget)?;
            Ok(Output::verdict(&v, text::verdict(&v, text::hsp, |s| format!("{s}\n"))))
        }
        Command::HspFin(search) => {
            let (a, b) = fin_inputs(search, g)?;
            let v = hspfin_member(&a, &b, &search.gens, search.n_bound, g.budget)?;
            Ok(Output::verdict(&v, text::verdict(&v, text::uc, |_| String::new())))
        }
        Command::HspW(search) => {
            let (a, b) = fin_inputs(search, g)?;
            let (v, why) = hspw_member(&a, &b, &search.gens, search.n_bound, g.budget)?;
            let mut json = to_json(&v);
            json["rationale"] = json!(why);
            let mut text = text::verdict(&v, text::uc, |_| String::new());
            let _ = writeln!(text, "rationale: {why}");
            Ok(Output {
                code: v.exit_code(),
                json,
                text,
            })
        }
        Command::AlphaStar { pair, map, phi } => {
            let (a, b) = (load(&pair.from)?, load(&pair.to)?);
            let alpha = parse_map(&read(map)?)?;
            let phi = term_op(&a, &parse_meta(phi, Some(&a.signature()))?)?;
            let r = alpha_star(&a, &b, &alpha, &phi)?;
            let code = match r {
                AlphaStar::Defined { .. } => 0,
                AlphaStar::Undefined { .. } => 1,
            };
            Ok(Output {
                code,
                json: to_json(&r),
                text: text::alpha(&r),
            })
        }
        Command::StrCheck { presentation, sig } => {
            let s = load(presentation)?;
            let sig = Signature::parse(sig)?;
            let v = str_check(&sig, s.carrier(), &s.top_extensions())?;
            Ok(Output::verdict(&v, text::verdict(&v, |a| a.to_string(), text::str_violation)))
        }
    }
}

fn fin_inputs(search: &FinSearch, g: &Global) -> Result<(FiniteAlgebra, FiniteAlgebra)> {
    let (a, b) = (load(&search.pair.from)?, load(&search.pair.to)?);
    check_product(a.carrier(), search.n_bound, g.max_product)?;
    Ok((a, b))
}

fn parse_map(text: &str) -> Result<Vec<u32>> {
    let values: std::result::Result<Vec<u32>, _> = text.split_whitespace().map(str::parse).collect();
    values.map_err(|e| Failure::Io(format!("map file: {e}")))
}
