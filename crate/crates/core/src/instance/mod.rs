//! Line-oriented instance files.
//!
//! One directive per line; a token starting with `#` begins a comment. The first directive is `family`.
//! Declaration order is significant: vertex, edge, row and column orders fix every sign.
//!
//! ```text
//! family tree
//! field rational
//! vertices a b c
//! edge e1 a b 2
//! edge e2 b c
//! edge e3 a c 5
//! ```

mod build;
mod emit;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::Field;
use crate::constructions::{Graph, Hypergraph3};
use crate::error::{Error, Result};

pub use build::{Reduction, SignCheck, Target};
pub use emit::{pair_text, parity_text};

/// Largest accepted edge length, weight or row-vector entry in absolute value.
pub const MAX_MAGNITUDE: i64 = 1_000_000_000;
/// Longest accepted numeric token.
const MAX_NUMBER_LEN: usize = 200;
/// Largest accepted number of matrix columns or rows.
const MAX_DIMENSION: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Tree,
    Arborescence,
    Matching,
    BipartiteMatching,
    Hypertree,
    DagSt,
    St,
    Stu,
    DeltaMatroid,
    Euler,
    RawPair,
    RawParity,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::Tree,
        Kind::Arborescence,
        Kind::Matching,
        Kind::BipartiteMatching,
        Kind::Hypertree,
        Kind::DagSt,
        Kind::St,
        Kind::Stu,
        Kind::DeltaMatroid,
        Kind::Euler,
        Kind::RawPair,
        Kind::RawParity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Tree => "tree",
            Kind::Arborescence => "arborescence",
            Kind::Matching => "matching",
            Kind::BipartiteMatching => "bipartite-matching",
            Kind::Hypertree => "hypertree",
            Kind::DagSt => "dag-st",
            Kind::St => "st",
            Kind::Stu => "stu",
            Kind::DeltaMatroid => "delta-matroid",
            Kind::Euler => "euler",
            Kind::RawPair => "raw-pair",
            Kind::RawParity => "raw-parity",
        }
    }

    fn allows(self, directive: &str) -> bool {
        let graph = ["vertices", "edge"];
        let extra: &[&str] = match self {
            Kind::Tree | Kind::Arborescence => &["root"],
            Kind::Matching => &[],
            Kind::BipartiteMatching => &["left", "right"],
            Kind::Hypertree => return ["vertices", "hyperedge", "root"].contains(&directive),
            Kind::DagSt | Kind::St => &["group"],
            Kind::Stu => &["group", "vector"],
            Kind::Euler => &["tour"],
            Kind::DeltaMatroid => return ["elements", "row", "twist"].contains(&directive),
            Kind::RawPair => return ["columns", "row1", "row2", "weight"].contains(&directive),
            Kind::RawParity => return ["columns", "line", "row", "weight"].contains(&directive),
        };
        graph.contains(&directive) || extra.contains(&directive)
    }

    fn uses_graph(self) -> bool {
        !matches!(self, Kind::Hypertree | Kind::DeltaMatroid | Kind::RawPair | Kind::RawParity)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family '{s}'")))
    }
}

/// A labelled matrix row as read from the file.
pub type Row = (String, Vec<BigRational>);

/// A parsed instance. Entries are kept over ℚ and reduced into the requested field on build.
#[derive(Clone, Debug)]
pub struct Instance {
    pub kind: Kind,
    pub field: Field,
    pub constant: Option<BigRational>,
    pub graph: Graph,
    pub hypergraph: Hypergraph3,
    pub root: Option<String>,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub groups: Vec<Vec<String>>,
    pub vectors: Vec<[i64; 2]>,
    pub tour: Vec<String>,
    pub elements: Vec<String>,
    pub twist: Vec<String>,
    pub columns: Vec<String>,
    pub lines: Vec<(String, String, String)>,
    pub rows: Vec<Row>,
    pub rows1: Vec<Row>,
    pub rows2: Vec<Row>,
    pub weights: Vec<(String, i64)>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn bounded(line: usize, tok: &str, what: &str) -> Result<i64> {
    let v: i64 = tok.parse().map_err(|_| err(line, format!("bad {what} '{tok}'")))?;
    if v.abs() > MAX_MAGNITUDE {
        return Err(err(line, format!("{what} {v} exceeds {MAX_MAGNITUDE} in magnitude")));
    }
    Ok(v)
}

/// An integer or `p/q` with `q ≠ 0`.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    if tok.is_empty() || tok.len() > MAX_NUMBER_LEN {
        return None;
    }
    let int = |s: &str| -> Option<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    };
    match tok.split_once('/') {
        None => int(tok).map(BigRational::from_integer),
        Some((n, d)) => {
            let (n, d) = (int(n)?, int(d)?);
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

fn labels(args: &[&str]) -> Vec<String> {
    args.iter().map(|s| s.to_string()).collect()
}

fn row(line: usize, args: &[&str]) -> Result<Row> {
    let (label, vals) = args.split_first().ok_or_else(|| err(line, "row needs a label"))?;
    if vals.len() > MAX_DIMENSION {
        return Err(err(line, "row too long"));
    }
    let vals = vals
        .iter()
        .map(|t| parse_rational(t).ok_or_else(|| err(line, format!("bad entry '{t}'"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((label.to_string(), vals))
}

fn arity(line: usize, directive: &str, args: &[&str], min: usize, max: usize) -> Result<()> {
    if args.len() < min || args.len() > max {
        return Err(err(line, format!("'{directive}' takes {min}..={max} arguments, got {}", args.len())));
    }
    Ok(())
}

impl Instance {
    fn empty(kind: Kind) -> Instance {
        Instance {
            kind,
            field: Field::Rational,
            constant: None,
            graph: Graph::new(Vec::<String>::new()).expect("empty graph"),
            hypergraph: Hypergraph3::new(Vec::<String>::new()).expect("empty hypergraph"),
            root: None,
            left: Vec::new(),
            right: Vec::new(),
            groups: Vec::new(),
            vectors: Vec::new(),
            tour: Vec::new(),
            elements: Vec::new(),
            twist: Vec::new(),
            columns: Vec::new(),
            lines: Vec::new(),
            rows: Vec::new(),
            rows1: Vec::new(),
            rows2: Vec::new(),
            weights: Vec::new(),
        }
    }

    /// Parses a whole file. Never panics; syntax errors carry their line number.
    pub fn parse(text: &str) -> Result<Instance> {
        let mut inst: Option<Instance> = None;
        let mut seen_field = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let toks: Vec<&str> = raw.split_whitespace().take_while(|t| !t.starts_with('#')).collect();
            let Some((&directive, args)) = toks.split_first() else { continue };
            let Some(cur) = inst.as_mut() else {
                if directive != "family" {
                    return Err(err(line, "the first directive must be 'family'"));
                }
                arity(line, directive, args, 1, 1)?;
                let kind = args[0].parse::<Kind>().map_err(|e| err(line, e.to_string()))?;
                inst = Some(Instance::empty(kind));
                continue;
            };
            cur.directive(line, directive, args, &mut seen_field)?;
        }
        let inst = inst.ok_or_else(|| err(0, "empty file: no 'family' directive"))?;
        inst.check_references()?;
        Ok(inst)
    }

    fn directive(&mut self, line: usize, directive: &str, args: &[&str], seen_field: &mut bool) -> Result<()> {
        match directive {
            "family" => return Err(err(line, "only one 'family' directive is allowed")),
            "field" => {
                arity(line, directive, args, 1, 1)?;
                if std::mem::replace(seen_field, true) {
                    return Err(err(line, "duplicate 'field'"));
                }
                self.field = args[0].parse().map_err(|e: Error| err(line, e.to_string()))?;
                return Ok(());
            }
            "constant" => {
                arity(line, directive, args, 1, 1)?;
                if self.constant.is_some() {
                    return Err(err(line, "duplicate 'constant'"));
                }
                let c = parse_rational(args[0]).ok_or_else(|| err(line, format!("bad constant '{}'", args[0])))?;
                if c.is_zero() {
                    return Err(err(line, "the constant must be nonzero"));
                }
                self.constant = Some(c);
                return Ok(());
            }
            _ => {}
        }
        if !self.kind.allows(directive) {
            return Err(err(line, format!("directive '{directive}' is not used by family {}", self.kind)));
        }
        let wrap = |e: Error| match e {
            Error::InvalidInput(m) => err(line, m),
            other => err(line, other.to_string()),
        };
        match directive {
            "vertices" => {
                if args.is_empty() {
                    return Err(err(line, "'vertices' needs at least one label"));
                }
                for v in args {
                    if self.kind.uses_graph() {
                        self.graph.add_vertex(*v).map_err(wrap)?;
                    } else {
                        self.hypergraph.add_vertex(*v).map_err(wrap)?;
                    }
                }
            }
            "edge" => {
                arity(line, directive, args, 3, 4)?;
                let len = args.get(3).map(|t| bounded(line, t, "length")).transpose()?;
                self.graph.add_edge(args[0], args[1], args[2], len).map_err(wrap)?;
            }
            "hyperedge" => {
                arity(line, directive, args, 4, 5)?;
                let len = args.get(4).map(|t| bounded(line, t, "length")).transpose()?;
                self.hypergraph.add_edge(args[0], [args[1], args[2], args[3]], len).map_err(wrap)?;
            }
            "root" => {
                arity(line, directive, args, 1, 1)?;
                if self.root.replace(args[0].to_string()).is_some() {
                    return Err(err(line, "duplicate 'root'"));
                }
            }
            "left" => self.left.extend(labels(args)),
            "right" => self.right.extend(labels(args)),
            "group" => {
                if args.is_empty() {
                    return Err(err(line, "'group' needs at least one terminal"));
                }
                self.groups.push(labels(args));
            }
            "vector" => {
                arity(line, directive, args, 2, 2)?;
                self.vectors.push([bounded(line, args[0], "vector entry")?, bounded(line, args[1], "vector entry")?]);
            }
            "tour" => self.tour.extend(labels(args)),
            "elements" => self.elements.extend(labels(args)),
            "twist" => self.twist.extend(labels(args)),
            "columns" => {
                self.columns.extend(labels(args));
                if self.columns.len() > MAX_DIMENSION {
                    return Err(err(line, "too many columns"));
                }
            }
            "line" => {
                arity(line, directive, args, 3, 3)?;
                self.lines.push((args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            "row" | "row1" | "row2" => {
                let r = row(line, args)?;
                let target = match directive {
                    "row" => &mut self.rows,
                    "row1" => &mut self.rows1,
                    _ => &mut self.rows2,
                };
                if target.len() >= MAX_DIMENSION {
                    return Err(err(line, "too many rows"));
                }
                target.push(r);
            }
            "weight" => {
                arity(line, directive, args, 2, 2)?;
                self.weights.push((args[0].to_string(), bounded(line, args[1], "weight")?));
            }
            _ => return Err(err(line, format!("unknown directive '{directive}'"))),
        }
        Ok(())
    }

    /// Label checks that need the whole file.
    fn check_references(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidInput(m));
        let vertex_known = |v: &str| match self.kind {
            Kind::Hypertree => self.hypergraph.vertex_index(v).is_some(),
            _ => self.graph.vertex_index(v).is_some(),
        };
        if let Some(r) = &self.root {
            if !vertex_known(r) {
                return fail(format!("root '{r}' is not a declared vertex"));
            }
        }
        for v in self.left.iter().chain(&self.right).chain(self.groups.iter().flatten()) {
            if !vertex_known(v) {
                return fail(format!("'{v}' is not a declared vertex"));
            }
        }
        for e in &self.tour {
            if !self.graph.edges().iter().any(|x| &x.label == e) {
                return fail(format!("tour uses undeclared edge '{e}'"));
            }
        }
        for t in &self.twist {
            if !self.elements.contains(t) {
                return fail(format!("twist uses undeclared element '{t}'"));
            }
        }
        let weight_targets: Vec<&String> = match self.kind {
            Kind::RawParity => self.lines.iter().map(|l| &l.0).collect(),
            _ => self.columns.iter().collect(),
        };
        for (name, _) in &self.weights {
            if !weight_targets.contains(&name) {
                return fail(format!("weight for unknown {} '{name}'", if self.kind == Kind::RawParity { "line" } else { "column" }));
            }
        }
        let width = self.columns.len();
        let raw_rows = match self.kind {
            Kind::DeltaMatroid => {
                if self.rows.len() != self.elements.len() {
                    return fail(format!("{} rows for {} elements", self.rows.len(), self.elements.len()));
                }
                self.elements.len()
            }
            _ => width,
        };
        for (label, vals) in self.rows.iter().chain(&self.rows1).chain(&self.rows2) {
            if vals.len() != raw_rows {
                return fail(format!("row '{label}' has {} entries, expected {raw_rows}", vals.len()));
            }
        }
        Ok(())
    }

    /// Weight of each raw column (pair) or line (parity); absent entries are 0.
    pub fn raw_weights(&self, names: &[String]) -> Vec<i64> {
        names
            .iter()
            .map(|n| self.weights.iter().rev().find(|(m, _)| m == n).map_or(0, |(_, w)| *w))
            .collect()
    }
}
