use std::time::Instant;

use pfcount::algebra::{Field, Scalar};
use pfcount::instance::{pair_text, parity_text, Instance, Kind, Reduction, Target};
use pfcount::matroid::{count_common_bases, count_parity_bases, lawler_reduce, Limits};
use pfcount::weighted::{count_min_weight_common_bases, count_min_weight_parity_bases, count_over_primes, CrtTarget};
use pfcount::{Error, Result};
use serde_json::{json, Map, Value};

use crate::{Common, Emit};

/// Either a structured report or raw text for `reduce`.
pub enum Output {
    Report(Map<String, Value>),
    Text(String),
}

struct Session {
    inst: Instance,
    field: Field,
    limits: Limits,
    timings: Map<String, Value>,
    keep_timings: bool,
}

impl Session {
    fn open(c: &Common) -> Result<Session> {
        let started = Instant::now();
        let text = std::fs::read_to_string(&c.file)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", c.file.display())))?;
        let inst = Instance::parse(&text)?;
        let field = c.field.unwrap_or(inst.field);
        let limits = c.budget.map_or_else(Limits::default, Limits::uniform);
        let mut s = Session { inst, field, limits, timings: Map::new(), keep_timings: c.timings };
        s.lap("parse", started);
        Ok(s)
    }

    fn lap(&mut self, what: &str, since: Instant) {
        self.timings.insert(what.into(), json!(since.elapsed().as_secs_f64() * 1e3));
    }

    fn build(&mut self) -> Result<Reduction> {
        let t = Instant::now();
        let red = self.inst.build(Some(self.field))?;
        self.lap("build", t);
        Ok(red)
    }

    fn header(&self, command: &str) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("family".into(), json!(self.inst.kind.name()));
        m.insert("field".into(), json!(self.field.to_string()));
        m
    }

    fn finish(self, mut m: Map<String, Value>) -> Output {
        if self.keep_timings {
            m.insert("timings_ms".into(), Value::Object(self.timings));
        }
        Output::Report(m)
    }
}

/// Path families count path systems only at minimum total length.
fn weighted_for(c: &Common, kind: Kind) -> bool {
    c.weighted || matches!(kind, Kind::St | Kind::Stu)
}

fn scaled(w: Option<i64>, scale: i64) -> Result<Option<i64>> {
    match w {
        Some(w) if w % scale != 0 => Err(Error::Internal(format!("weight {w} not divisible by scale {scale}"))),
        Some(w) => Ok(Some(w / scale)),
        None => Ok(None),
    }
}

struct Counted {
    count: Scalar,
    min_weight: Option<i64>,
    extra: Map<String, Value>,
}

fn count_reduction(red: &Reduction, weighted: bool) -> Result<Counted> {
    let mut extra = Map::new();
    if weighted {
        let w = &red.weights;
        let res = match &red.target {
            Target::Pair(p) => count_min_weight_common_bases(p, w)?,
            Target::Parity(p) => count_min_weight_parity_bases(p, w)?,
        };
        extra.insert("route".into(), json!("weighted"));
        if let Some(b) = &res.base {
            let names = match &red.target {
                Target::Pair(p) => p.col_names(b),
                Target::Parity(p) => p.line_names(b),
            };
            extra.insert("witness".into(), json!(names));
        }
        return Ok(Counted { count: res.count, min_weight: scaled(res.min_weight, red.length_scale)?, extra });
    }
    let res = match &red.target {
        Target::Pair(p) => count_common_bases(p)?,
        Target::Parity(p) => count_parity_bases(p)?,
    };
    extra.insert("route".into(), json!(if matches!(red.target, Target::Pair(_)) { "determinant" } else { "pfaffian" }));
    extra.insert("constant".into(), json!(if res.has_base { res.constant_used.to_string() } else { "none".into() }));
    extra.insert("raw".into(), json!(res.raw.to_string()));
    Ok(Counted { count: res.count, min_weight: None, extra })
}

pub fn count(c: &Common) -> Result<Output> {
    let mut s = Session::open(c)?;
    let red = s.build()?;
    let weighted = weighted_for(c, s.inst.kind);
    let mut m = s.header("count");
    let t = Instant::now();
    if c.crt {
        let target = match &red.target {
            Target::Pair(p) => CrtTarget::Pair(p),
            Target::Parity(p) => CrtTarget::Parity(p),
        };
        let out = count_over_primes(target, weighted.then_some(red.weights.as_slice()))?;
        m.insert("route".into(), json!("crt"));
        m.insert("count".into(), json!(out.count.to_string()));
        m.insert("constant".into(), json!(out.constant.to_string()));
        m.insert("primes".into(), json!(out.primes));
        m.insert("residues".into(), json!(out.residues));
        m.insert("forced_zero".into(), json!(out.forced_zero));
        if weighted {
            m.insert("min_weight".into(), json!(scaled(out.min_weight, red.length_scale)?));
            m.insert("length_scale".into(), json!(red.length_scale));
        }
    } else {
        let counted = count_reduction(&red, weighted)?;
        m.insert("count".into(), json!(counted.count.to_string()));
        if weighted {
            m.insert("min_weight".into(), json!(counted.min_weight));
            m.insert("length_scale".into(), json!(red.length_scale));
        }
        m.extend(counted.extra);
    }
    s.lap("count", t);
    if let Some(w) = &red.warning {
        m.insert("warning".into(), json!(w));
    }
    Ok(s.finish(m))
}

pub fn verify(c: &Common) -> Result<Output> {
    let mut s = Session::open(c)?;
    let red = s.build()?;
    let weighted = weighted_for(c, s.inst.kind);
    let mut m = s.header("verify");
    let t = Instant::now();
    let verdict = red.verify(&s.limits)?;
    m.insert(
        "pfaffian".into(),
        json!({
            "holds": verdict.is_pfaffian,
            "vacuous": verdict.vacuous,
            "bases": verdict.bases,
            "constant": verdict.constant.map(|c| c.to_string()),
        }),
    );
    let en = s.inst.enumerate(Some(s.field), &s.limits)?;
    let checks: Vec<Value> = red
        .sign_checks(&s.inst, &en)?
        .into_iter()
        .map(|c| json!({"name": c.name, "holds": c.holds, "checked": c.checked}))
        .collect();
    m.insert("sign_checks".into(), json!(checks));
    let counted = count_reduction(&red, weighted)?;
    let expected = if weighted { en.min_weight_count() } else { en.count() };
    let mut agrees = counted.count == s.field.from_i64(expected as i64);
    if weighted {
        agrees &= counted.min_weight == en.min_weight();
    }
    m.insert(
        "oracle".into(),
        json!({
            "structures": en.count(),
            "expected": expected,
            "count": counted.count.to_string(),
            "agrees": agrees,
        }),
    );
    s.lap("verify", t);
    if let Some(w) = &red.warning {
        m.insert("warning".into(), json!(w));
    }
    Ok(s.finish(m))
}

pub fn reduce(c: &Common, emit: Emit) -> Result<Output> {
    let mut s = Session::open(c)?;
    let red = s.build()?;
    let w = c.weighted.then_some(red.weights.as_slice());
    let text = match (&red.target, emit) {
        (Target::Pair(p), Emit::Native) => pair_text(p, w),
        (Target::Parity(p), Emit::Native) => parity_text(p, w),
        (Target::Pair(p), Emit::Lawler) => parity_text(&lawler_reduce(p)?, w),
        (Target::Parity(_), Emit::Lawler) => {
            return Err(Error::InvalidInput(format!("family {} already reduces to a parity", s.inst.kind)))
        }
    };
    if c.json {
        let mut m = s.header("reduce");
        m.insert("text".into(), json!(text));
        return Ok(s.finish(m));
    }
    Ok(Output::Text(text))
}

pub fn oracle(c: &Common) -> Result<Output> {
    let mut s = Session::open(c)?;
    let t = Instant::now();
    let en = s.inst.enumerate(Some(s.field), &s.limits)?;
    s.lap("enumerate", t);
    let mut m = s.header("oracle");
    m.insert("count".into(), json!(en.count()));
    m.insert("min_weight".into(), json!(en.min_weight()));
    m.insert("min_weight_count".into(), json!(en.min_weight_count()));
    let items: Vec<Value> = en
        .items
        .iter()
        .map(|x| {
            let mut o = Map::new();
            o.insert("elements".into(), json!(x.labels));
            o.insert("weight".into(), json!(x.weight));
            o.insert("sign".into(), json!(x.sign.to_string()));
            if !x.linkage.is_empty() {
                o.insert("linkage".into(), json!(x.linkage));
            }
            if let Some(f) = x.factor {
                o.insert("factor".into(), json!(f));
            }
            Value::Object(o)
        })
        .collect();
    m.insert("structures".into(), json!(items));
    Ok(s.finish(m))
}
