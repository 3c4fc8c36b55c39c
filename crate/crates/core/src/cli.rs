//! The `gp` command line: context files, word arguments and the subcommands.
//!
//! A context file is line oriented; `#` starts a comment.
//!
//! ```text
//! monoid U { elements: 1 a ; identity: 1 ; table: 1 a, a a }
//! monoid F free { alphabet: x y }
//! graph {
//!   vertices: A:U B:F
//!   edges: A-B
//! }
//! word w = A.a B.xy
//! ```
//!
//! Table rows are separated by commas or line breaks.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::annihilator::{annihilator_generators, fle_report, FleBounds, PairSet};
use crate::error::Error;
use crate::fixtures;
use crate::howson::{default_witness_bound, find_intersection_witness, intersect_principal, lcm_check, LcmVerdict};
use crate::ideals::{accpl_report, leq_principal, AccplEvidence};
use crate::model::{is_identifier, FiniteMonoid, FreeMonoid, GpContext, Graph, VertexMonoid, Word};
use crate::normal_form::{canonical, equal, foata_left, foata_right, CanonicalForm};
use crate::oracle::{
    oracle_annihilator_pairs, oracle_equal, oracle_intersection_elements, oracle_leq_principal, DEFAULT_SLACK,
};
use crate::structure::{coherency_report, decide_wln, direct4_partition, is_relatively_complete};

/// A parse failure with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed context file: the context and its named words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextFile {
    pub context: GpContext,
    pub words: BTreeMap<String, Word>,
}

impl ContextFile {
    /// A word alias, or else a word in `V.e` syntax.
    pub fn resolve(&self, arg: &str) -> Result<Word, Error> {
        match self.words.get(arg.trim()) {
            Some(w) => Ok(w.clone()),
            None => self.context.parse_word(arg),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Open,
    Close,
    Semi,
    Comma,
    Equals,
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (col, c) = chars[i];
            let simple = match c {
                '{' => Some(Tok::Open),
                '}' => Some(Tok::Close),
                ';' => Some(Tok::Semi),
                ',' => Some(Tok::Comma),
                '=' => Some(Tok::Equals),
                _ => None,
            };
            let at = |tok| Token {
                tok,
                line: li + 1,
                column: col + 1,
            };
            if let Some(t) = simple {
                out.push(at(t));
                i += 1;
            } else if c.is_whitespace() {
                i += 1;
            } else {
                let start = i;
                while i < chars.len() && !chars[i].1.is_whitespace() && !"{};,=".contains(chars[i].1) {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push(at(Tok::Atom(s)));
            }
        }
        out.push(Token {
            tok: Tok::Newline,
            line: li + 1,
            column: line.len() + 1,
        });
    }
    out
}

fn err_at(t: &Token, message: impl Into<String>) -> ParseError {
    ParseError {
        line: t.line,
        column: t.column,
        message: message.into(),
    }
}

/// A `key: value` field of a braced block; `rows` splits the value at commas and line breaks.
struct Field {
    key: Token,
    rows: Vec<Vec<Token>>,
}

impl Field {
    fn atoms(&self) -> Vec<&Token> {
        self.rows.iter().flatten().collect()
    }
}

struct TokenStream<'t> {
    toks: &'t [Token],
    pos: usize,
    eof: Token,
}

impl<'t> TokenStream<'t> {
    fn peek(&self) -> &Token {
        self.toks.get(self.pos).unwrap_or(&self.eof)
    }

    fn next(&mut self) -> Token {
        let t = self.peek().clone();
        self.pos += 1;
        t
    }

    fn skip_newlines(&mut self) {
        while self.pos < self.toks.len() && self.toks[self.pos].tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn atom(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Atom(s) => Ok((s.clone(), t.clone())),
            _ => Err(err_at(&t, format!("expected {what}"))),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        self.skip_newlines();
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(err_at(&t, format!("expected {what}")))
        }
    }

    /// Reads `{ key: ... ; key: ... }`.
    fn block(&mut self) -> Result<Vec<Field>, ParseError> {
        let open = self.expect(Tok::Open, "'{'")?;
        let mut fields: Vec<Field> = Vec::new();
        loop {
            let t = self.next();
            match &t.tok {
                Tok::Close => return Ok(fields),
                Tok::Newline | Tok::Comma if self.pos > self.toks.len() => {
                    return Err(err_at(&open, "unterminated block"));
                }
                Tok::Newline | Tok::Comma => {
                    if let Some(f) = fields.last_mut() {
                        if f.rows.last().is_some_and(|r| !r.is_empty()) {
                            f.rows.push(Vec::new());
                        }
                    }
                }
                Tok::Semi => {
                    if let Some(f) = fields.last_mut() {
                        f.rows.push(Vec::new());
                    }
                    fields.push(Field {
                        key: t.clone(),
                        rows: Vec::new(),
                    });
                }
                Tok::Atom(s) if s.ends_with(':') => fields.push(Field {
                    key: t.clone(),
                    rows: vec![Vec::new()],
                }),
                Tok::Atom(_) => match fields.last_mut() {
                    Some(f) if f.rows.last().is_some() => f.rows.last_mut().unwrap().push(t.clone()),
                    _ => return Err(err_at(&t, "expected a field name such as 'elements:'")),
                },
                Tok::Open | Tok::Equals => return Err(err_at(&t, "unexpected token in block")),
            }
            if self.pos > self.toks.len() {
                return Err(err_at(&open, "unterminated block"));
            }
        }
    }
}

fn field_map(fields: Vec<Field>, allowed: &[&str]) -> Result<BTreeMap<String, Field>, ParseError> {
    let mut map = BTreeMap::new();
    for mut f in fields {
        let Tok::Atom(k) = &f.key.tok else { continue };
        let k = k.trim_end_matches(':').to_string();
        if !allowed.contains(&k.as_str()) {
            return Err(err_at(&f.key, format!("unknown field {k:?}")));
        }
        if map.contains_key(&k) {
            return Err(err_at(&f.key, format!("duplicate field {k:?}")));
        }
        f.rows.retain(|r| !r.is_empty());
        map.insert(k, f);
    }
    Ok(map)
}

fn atom_str(t: &Token) -> &str {
    match &t.tok {
        Tok::Atom(s) => s,
        _ => "",
    }
}

fn required<'m>(map: &'m BTreeMap<String, Field>, key: &str, at: &Token) -> Result<&'m Field, ParseError> {
    map.get(key).ok_or_else(|| err_at(at, format!("missing field {key:?}")))
}

fn parse_monoid(p: &mut TokenStream<'_>, name: &str, at: &Token) -> Result<VertexMonoid, ParseError> {
    let free = matches!(&p.peek().tok, Tok::Atom(s) if s == "free");
    if free {
        p.next();
        let map = field_map(p.block()?, &["alphabet"])?;
        let f = required(&map, "alphabet", at)?;
        let mut alphabet = Vec::new();
        for t in f.atoms() {
            let mut cs = atom_str(t).chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => alphabet.push(c),
                _ => return Err(err_at(t, "alphabet symbols are single letters")),
            }
        }
        return FreeMonoid::new(name, alphabet)
            .map(VertexMonoid::Free)
            .map_err(|e| err_at(at, e.to_string()));
    }
    let map = field_map(p.block()?, &["elements", "identity", "table"])?;
    let elements: Vec<String> = required(&map, "elements", at)?
        .atoms()
        .iter()
        .map(|t| atom_str(t).to_string())
        .collect();
    let idf = required(&map, "identity", at)?;
    let id_tok = match idf.atoms().as_slice() {
        [t] => *t,
        _ => return Err(err_at(&idf.key, "identity takes exactly one element")),
    };
    let identity = elements
        .iter()
        .position(|e| e == atom_str(id_tok))
        .ok_or_else(|| err_at(id_tok, format!("unknown element {:?}", atom_str(id_tok))))?;
    let tf = required(&map, "table", at)?;
    if tf.rows.len() != elements.len() {
        return Err(err_at(
            &tf.key,
            format!("table has {} rows, expected {}", tf.rows.len(), elements.len()),
        ));
    }
    let mut table = Vec::new();
    for row in &tf.rows {
        if row.len() != elements.len() {
            return Err(err_at(
                &row[0],
                format!("table row has {} entries, expected {}", row.len(), elements.len()),
            ));
        }
        let mut r = Vec::new();
        for t in row {
            let i = elements
                .iter()
                .position(|e| e == atom_str(t))
                .ok_or_else(|| err_at(t, format!("unknown element {:?}", atom_str(t))))?;
            r.push(i);
        }
        table.push(r);
    }
    FiniteMonoid::new(name, elements, identity, table)
        .map(VertexMonoid::Finite)
        .map_err(|e| err_at(at, e.to_string()))
}

/// Vertex declarations, edges, and the `graph` keyword token.
type GraphBlock = (Vec<(String, Token)>, Vec<(Token, String, String)>, Token);

pub fn parse_context(text: &str) -> Result<ContextFile, ParseError> {
    let toks = tokenize(text);
    let last_line = toks.last().map_or(1, |t| t.line);
    let mut p = TokenStream {
        toks: &toks,
        pos: 0,
        eof: Token {
            tok: Tok::Newline,
            line: last_line + 1,
            column: 1,
        },
    };
    let mut monoids: BTreeMap<String, VertexMonoid> = BTreeMap::new();
    let mut graph: Option<GraphBlock> = None;
    let mut word_defs: Vec<(String, Vec<Token>, Token)> = Vec::new();
    loop {
        p.skip_newlines();
        if p.pos >= toks.len() {
            break;
        }
        let (kw, kt) = p.atom("'monoid', 'graph' or 'word'")?;
        match kw.as_str() {
            "monoid" => {
                let (name, nt) = p.atom("a monoid name")?;
                if !is_identifier(&name) {
                    return Err(err_at(&nt, format!("invalid monoid name {name:?}")));
                }
                if monoids.contains_key(&name) {
                    return Err(err_at(&nt, format!("duplicate monoid {name:?}")));
                }
                let m = parse_monoid(&mut p, &name, &nt)?;
                monoids.insert(name, m);
            }
            "graph" => {
                if graph.is_some() {
                    return Err(err_at(&kt, "duplicate graph"));
                }
                let map = field_map(p.block()?, &["vertices", "edges"])?;
                let mut vertices = Vec::new();
                for t in required(&map, "vertices", &kt)?.atoms() {
                    let (v, m) = atom_str(t)
                        .split_once(':')
                        .ok_or_else(|| err_at(t, "vertices are written NAME:MONOID"))?;
                    vertices.push((format!("{v}:{m}"), t.clone()));
                }
                let mut edges = Vec::new();
                if let Some(f) = map.get("edges") {
                    for t in f.atoms() {
                        let (x, y) = atom_str(t)
                            .split_once('-')
                            .ok_or_else(|| err_at(t, "edges are written X-Y"))?;
                        edges.push((t.clone(), x.to_string(), y.to_string()));
                    }
                }
                graph = Some((vertices, edges, kt));
            }
            "word" => {
                let (name, nt) = p.atom("a word name")?;
                if !is_identifier(&name) || name == "e" {
                    return Err(err_at(&nt, format!("invalid word name {name:?}")));
                }
                if word_defs.iter().any(|(n, _, _)| *n == name) {
                    return Err(err_at(&nt, format!("duplicate word {name:?}")));
                }
                let eq = p.next();
                if eq.tok != Tok::Equals {
                    return Err(err_at(&eq, "expected '='"));
                }
                let mut letters = Vec::new();
                while let Tok::Atom(_) = p.peek().tok {
                    letters.push(p.next());
                }
                match p.peek().tok {
                    Tok::Newline | Tok::Semi => {
                        p.next();
                    }
                    _ => return Err(err_at(p.peek(), "unexpected token after word")),
                }
                word_defs.push((name, letters, nt));
            }
            _ => return Err(err_at(&kt, format!("unknown statement {kw:?}"))),
        }
    }

    let (vertices, edges, gt) = graph.ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "missing graph".into(),
    })?;
    let mut names = Vec::new();
    let mut vms = Vec::new();
    for (decl, t) in &vertices {
        let (v, m) = decl.split_once(':').expect("checked above");
        if !is_identifier(v) || v == "e" {
            return Err(err_at(t, format!("invalid vertex name {v:?}")));
        }
        if names.iter().any(|n| n == v) {
            return Err(err_at(t, format!("duplicate vertex {v:?}")));
        }
        let monoid = monoids
            .get(m)
            .ok_or_else(|| err_at(t, format!("unknown monoid {m:?}")))?;
        names.push(v.to_string());
        vms.push(monoid.clone());
    }
    let mut idx_edges = Vec::new();
    for (t, x, y) in &edges {
        let find = |n: &str| {
            names
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| err_at(t, format!("unknown vertex {n:?}")))
        };
        let (i, j) = (find(x)?, find(y)?);
        if i == j {
            return Err(err_at(t, "loop edge"));
        }
        idx_edges.push((i, j));
    }
    let g = Graph::new(names.len(), &idx_edges).map_err(|e| err_at(&gt, e.to_string()))?;
    let context = GpContext::with_names(g, vms, names).map_err(|e| err_at(&gt, e.to_string()))?;
    let mut words = BTreeMap::new();
    for (name, letters, nt) in word_defs {
        let text: Vec<&str> = letters.iter().map(atom_str).collect();
        let w = context
            .parse_word(&text.join(" "))
            .map_err(|e| err_at(letters.first().unwrap_or(&nt), e.to_string()))?;
        words.insert(name, w);
    }
    Ok(ContextFile { context, words })
}

/// Prints a context file that parses back to the same context and words.
pub fn print_context(file: &ContextFile) -> String {
    let ctx = &file.context;
    let mut out = String::new();
    let mut printed: Vec<&VertexMonoid> = Vec::new();
    for m in ctx.monoids() {
        if printed.contains(&m) {
            continue;
        }
        printed.push(m);
        match m {
            VertexMonoid::Finite(f) => {
                let names = f.element_names();
                out.push_str(&format!("monoid {} {{\n", f.name()));
                out.push_str(&format!("  elements: {}\n", names.join(" ")));
                out.push_str(&format!("  identity: {}\n", names[f.identity()]));
                out.push_str("  table:\n");
                for x in 0..f.size() {
                    let row: Vec<&str> = f.row(x).iter().map(|&y| names[y].as_str()).collect();
                    out.push_str(&format!("    {}\n", row.join(" ")));
                }
                out.push_str("}\n");
            }
            VertexMonoid::Free(f) => {
                let a: Vec<String> = f.alphabet().iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("monoid {} free {{ alphabet: {} }}\n", f.name(), a.join(" ")));
            }
        }
    }
    let vs: Vec<String> = (0..ctx.vertex_count())
        .map(|v| format!("{}:{}", ctx.vertex_name(v), ctx.monoid(v).name()))
        .collect();
    let es: Vec<String> = ctx
        .graph()
        .edges()
        .iter()
        .map(|&(x, y)| format!("{}-{}", ctx.vertex_name(x), ctx.vertex_name(y)))
        .collect();
    out.push_str("graph {\n");
    out.push_str(&format!("  vertices: {}\n", vs.join(" ")));
    out.push_str(&format!("  edges: {}\n", es.join(" ")));
    out.push_str("}\n");
    for (name, w) in &file.words {
        out.push_str(&format!("word {name} = {}\n", ctx.format_word(w)));
    }
    out
}

#[derive(Debug, Parser)]
#[command(
    name = "gp",
    about = "Normal forms, ideals and finitary conditions for graph products of monoids"
)]
pub struct Cli {
    /// Context file to load.
    #[arg(short, long, global = true)]
    pub context: Option<PathBuf>,
    /// Use a built-in fixture context instead of a file.
    #[arg(long, global = true, conflicts_with = "context")]
    pub fixture: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of a word.
    Normalize { word: String },
    /// Decide equality of two words.
    Eq { u: String, v: String },
    /// Multiply two words.
    Mul { u: String, v: String },
    /// Print the left and right Foata forms.
    Foata { word: String },
    /// Decide whether the first word lies in the principal left ideal of the second.
    Divides { u: String, v: String },
    /// Find the least element in both principal left ideals.
    Witness {
        a: String,
        b: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Generators of the intersection of two principal left ideals.
    Intersect { a: String, b: String },
    /// Classify the intersection as empty, principal or not principal.
    Lcm { a: String, b: String },
    /// Generators of the left annihilator congruence of a word.
    Annihilator {
        word: String,
        /// Length and state bounds for a completeness check against the oracle.
        #[arg(long, value_parser = parse_bounds, value_name = "L,S")]
        verify_bound: Option<(usize, usize)>,
    },
    /// Decide a structural property.
    Check {
        #[arg(value_enum)]
        property: Property,
    },
    /// Print the three-part direct product decomposition.
    Decompose,
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Print the loaded context in file syntax.
    Print,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Accpl,
    Wln,
    Relcomplete,
    Coherent,
}

#[derive(Debug, Subcommand)]
pub enum OracleQuery {
    Eq {
        u: String,
        v: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    Leq {
        u: String,
        v: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    Intersect {
        a: String,
        b: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    Ann {
        word: String,
        #[arg(long)]
        bound: Option<usize>,
    },
}

fn parse_bounds(s: &str) -> Result<(usize, usize), String> {
    let (l, r) = s.split_once(',').ok_or("expected L,S")?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((parse(l)?, parse(r)?))
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Text lines and the mirrored JSON value of one command.
struct Outcome {
    code: i32,
    lines: Vec<String>,
    json: Value,
}

impl Outcome {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Outcome { code: 0, lines, json }
    }

    fn verdict(holds: bool, mut lines: Vec<String>, json: Value) -> Self {
        lines.insert(0, holds.to_string());
        Outcome {
            code: if holds { 0 } else { 1 },
            lines,
            json,
        }
    }
}

fn cf_json(ctx: &GpContext, cf: &CanonicalForm) -> Value {
    let blocks: Vec<Vec<String>> = cf
        .blocks()
        .iter()
        .map(|b| b.iter().map(|l| ctx.format_letter(l)).collect())
        .collect();
    json!({ "canonical": cf.render(ctx), "blocks": blocks })
}

fn pairs_text(ctx: &GpContext, k: &PairSet) -> Vec<String> {
    k.pairs
        .iter()
        .map(|(s, t)| format!("{} ~ {}", s.render(ctx), t.render(ctx)))
        .collect()
}

fn pairs_json(ctx: &GpContext, k: &PairSet) -> Value {
    Value::Array(
        k.pairs
            .iter()
            .map(|(s, t)| json!([s.render(ctx), t.render(ctx)]))
            .collect(),
    )
}

fn env_bound() -> Option<usize> {
    std::env::var("GP_ORACLE_BOUND").ok()?.trim().parse().ok()
}

fn oracle_bound(explicit: Option<usize>, default: usize) -> usize {
    explicit.or_else(env_bound).unwrap_or(default)
}

fn load(cli: &Cli) -> Result<ContextFile, Failure> {
    if let Some(name) = &cli.fixture {
        let context = fixtures::by_name(name).ok_or_else(|| Failure::Usage(format!("unknown fixture {name:?}")))?;
        return Ok(ContextFile {
            context,
            words: BTreeMap::new(),
        });
    }
    let path = cli
        .context
        .as_ref()
        .ok_or_else(|| Failure::Usage("no context: pass --context FILE or --fixture NAME".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_context(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, file: &ContextFile) -> Result<Outcome, Failure> {
    let ctx = &file.context;
    let word = |s: &str| file.resolve(s).map_err(Failure::from);
    let name = |v: usize| ctx.vertex_name(v).to_string();
    Ok(match &cli.command {
        Command::Normalize { word: w } => {
            let cf = canonical(ctx, &word(w)?);
            Outcome::ok(vec![cf.render(ctx)], cf_json(ctx, &cf))
        }
        Command::Eq { u, v } => {
            let holds = equal(ctx, &word(u)?, &word(v)?);
            Outcome::verdict(holds, vec![], json!({ "equal": holds }))
        }
        Command::Mul { u, v } => {
            let cf = canonical(ctx, &word(u)?.concat(&word(v)?));
            Outcome::ok(vec![cf.render(ctx)], cf_json(ctx, &cf))
        }
        Command::Foata { word: w } => {
            let w = word(w)?;
            let (l, r) = (foata_left(ctx, &w), foata_right(ctx, &w));
            Outcome::ok(
                vec![format!("left {}", l.render(ctx)), format!("right {}", r.render(ctx))],
                json!({ "left": cf_json(ctx, &l), "right": cf_json(ctx, &r) }),
            )
        }
        Command::Divides { u, v } => {
            let c = leq_principal(ctx, &word(u)?, &word(v)?);
            let lines = c.iter().map(|c| format!("witness {}", ctx.format_word(c))).collect();
            let j = json!({ "divides": c.is_some(), "witness": c.as_ref().map(|c| ctx.format_word(c)) });
            Outcome::verdict(c.is_some(), lines, j)
        }
        Command::Witness { a, b, bound } => {
            let (a, b) = (canonical(ctx, &word(a)?).word(), canonical(ctx, &word(b)?).word());
            let bound = bound.unwrap_or_else(|| default_witness_bound(ctx, &a, &b));
            let z = find_intersection_witness(ctx, &a, &b, bound);
            let text = z.as_ref().map_or("none".to_string(), |z| z.render(ctx));
            Outcome::ok(
                vec![text],
                json!({ "bound": bound, "witness": z.as_ref().map(|z| cf_json(ctx, z)) }),
            )
        }
        Command::Intersect { a, b } => {
            let (a, b) = (canonical(ctx, &word(a)?).word(), canonical(ctx, &word(b)?).word());
            let x = intersect_principal(ctx, &a, &b)?;
            let mut lines: Vec<String> = x.generators.iter().map(|g| g.render(ctx)).collect();
            if lines.is_empty() {
                lines.push("empty".into());
            }
            let gens: Vec<Value> = x.generators.iter().map(|g| cf_json(ctx, g)).collect();
            Outcome::ok(lines, json!({ "generators": gens }))
        }
        Command::Lcm { a, b } => {
            let (a, b) = (canonical(ctx, &word(a)?).word(), canonical(ctx, &word(b)?).word());
            let (line, j) = match lcm_check(ctx, &a, &b)? {
                LcmVerdict::Empty => ("empty".to_string(), json!({ "verdict": "empty" })),
                LcmVerdict::Principal(g) => (
                    format!("principal {}", g.render(ctx)),
                    json!({ "verdict": "principal", "generator": cf_json(ctx, &g) }),
                ),
                LcmVerdict::NotPrincipal(g, h) => (
                    format!("not-principal {} {}", g.render(ctx), h.render(ctx)),
                    json!({ "verdict": "not-principal", "certificate": [cf_json(ctx, &g), cf_json(ctx, &h)] }),
                ),
            };
            Outcome::ok(vec![line], j)
        }
        Command::Annihilator { word: w, verify_bound } => {
            let a = canonical(ctx, &word(w)?).word();
            match verify_bound {
                None => {
                    let k = annihilator_generators(ctx, &a)?;
                    Outcome::ok(pairs_text(ctx, &k), json!({ "pairs": pairs_json(ctx, &k) }))
                }
                Some((length, states)) => {
                    let bounds = FleBounds {
                        oracle_length: oracle_bound(None, FleBounds::default().oracle_length),
                        length: *length,
                        states: *states,
                    };
                    let r = fle_report(ctx, std::slice::from_ref(&a), bounds)?;
                    let s = &r.samples[0];
                    let mut lines = pairs_text(ctx, &s.generators);
                    lines.push(format!("verified {}", s.verified));
                    lines.push(format!("completeness {}/{}", s.reached, s.total));
                    let j = json!({
                        "pairs": pairs_json(ctx, &s.generators),
                        "verified": s.verified,
                        "reached": s.reached,
                        "total": s.total,
                    });
                    Outcome::ok(lines, j)
                }
            }
        }
        Command::Check { property } => match property {
            Property::Accpl => {
                let r = accpl_report(ctx);
                let lines = r
                    .evidence
                    .iter()
                    .enumerate()
                    .map(|(v, e)| match e {
                        AccplEvidence::FinitelyManyIdeals(n) => {
                            format!("{}: true ({n} principal left ideals)", name(v))
                        }
                        AccplEvidence::LengthDecreases => format!("{}: true (free)", name(v)),
                    })
                    .collect();
                Outcome::verdict(
                    r.overall,
                    lines,
                    json!({ "holds": r.overall, "per_vertex": r.per_vertex }),
                )
            }
            Property::Wln => {
                let r = decide_wln(ctx);
                let mut lines: Vec<String> = r.violations.iter().map(|v| v.reason.clone()).collect();
                for (v, ok) in r.vertex_wln.iter().enumerate() {
                    if !ok {
                        lines.push(format!("vertex {} is not weakly left noetherian", name(v)));
                    }
                }
                let j = json!({
                    "holds": r.overall,
                    "relatively_complete": r.relatively_complete,
                    "special_pair": r.special_pair.map(|(x, y)| [name(x), name(y)]),
                    "violations": r.violations.iter().map(|v| v.reason.clone()).collect::<Vec<_>>(),
                    "non_group_vertices": r.non_group_vertices.iter().map(|&v| name(v)).collect::<Vec<_>>(),
                    "vertex_wln": r.vertex_wln,
                });
                Outcome::verdict(r.overall, lines, j)
            }
            Property::Relcomplete => {
                let r = is_relatively_complete(ctx);
                let mut lines: Vec<String> = r.violations.iter().map(|v| v.reason.clone()).collect();
                if let Some((x, y)) = r.special_pair {
                    lines.push(format!("special pair ({},{})", name(x), name(y)));
                }
                let j = json!({
                    "holds": r.holds,
                    "special_pair": r.special_pair.map(|(x, y)| [name(x), name(y)]),
                    "violations": r.violations.iter().map(|v| v.reason.clone()).collect::<Vec<_>>(),
                });
                Outcome::verdict(r.holds, lines, j)
            }
            Property::Coherent => {
                let r = coherency_report(ctx, &[])?;
                let lines = (0..ctx.vertex_count())
                    .map(|v| format!("{}: howson {}, fle {}", name(v), r.vertex_howson[v], r.vertex_fle[v]))
                    .collect();
                let j = json!({ "holds": r.overall, "howson": r.vertex_howson, "fle": r.vertex_fle });
                Outcome::verdict(r.overall, lines, j)
            }
        },
        Command::Decompose => match direct4_partition(ctx) {
            Ok(r) => {
                let mut lines = Vec::new();
                let mut parts = Vec::new();
                for (p, k) in r.parts.iter().zip(&r.kinds) {
                    let vs: Vec<String> = p.iter().map(|&v| name(v)).collect();
                    lines.push(format!("{}: {}", k.as_str(), vs.join(" ")).trim_end().to_string());
                    parts.push(json!({ "kind": k.as_str(), "vertices": vs }));
                }
                Outcome::ok(lines, json!({ "parts": parts }))
            }
            Err(Error::NotRelativelyComplete(reason)) => Outcome {
                code: 1,
                lines: vec!["not relatively complete".into(), reason.clone()],
                json: json!({ "parts": null, "reason": reason }),
            },
            Err(e) => return Err(e.into()),
        },
        Command::Oracle { query } => match query {
            OracleQuery::Eq { u, v, bound } => {
                let (u, v) = (word(u)?, word(v)?);
                let bound = oracle_bound(*bound, u.len().max(v.len()) + DEFAULT_SLACK);
                let holds = oracle_equal(ctx, &u, &v, bound);
                Outcome::verdict(holds, vec![], json!({ "equal": holds, "bound": bound }))
            }
            OracleQuery::Leq { u, v, bound } => {
                let (u, v) = (word(u)?, word(v)?);
                let bound = oracle_bound(*bound, u.len() + v.len());
                let c = oracle_leq_principal(ctx, &u, &v, bound);
                let lines = c.iter().map(|c| format!("witness {}", ctx.format_word(c))).collect();
                let j = json!({ "divides": c.is_some(), "witness": c.as_ref().map(|c| ctx.format_word(c)), "bound": bound });
                Outcome::verdict(c.is_some(), lines, j)
            }
            OracleQuery::Intersect { a, b, bound } => {
                let (a, b) = (word(a)?, word(b)?);
                let bound = oracle_bound(*bound, a.len() + b.len() + DEFAULT_SLACK);
                let xs: Vec<CanonicalForm> = oracle_intersection_elements(ctx, &a, &b, bound)
                    .iter()
                    .map(|w| canonical(ctx, w))
                    .collect();
                let mut lines: Vec<String> = xs.iter().map(|x| x.render(ctx)).collect();
                if lines.is_empty() {
                    lines.push("empty".into());
                }
                let j = json!({ "elements": xs.iter().map(|x| cf_json(ctx, x)).collect::<Vec<_>>(), "bound": bound });
                Outcome::ok(lines, j)
            }
            OracleQuery::Ann { word: w, bound } => {
                let a = word(w)?;
                let bound = oracle_bound(*bound, FleBounds::default().oracle_length);
                let pairs = oracle_annihilator_pairs(ctx, &a, bound);
                let render = |w: &Word| canonical(ctx, w).render(ctx);
                let lines = pairs
                    .iter()
                    .map(|(s, t)| format!("{} ~ {}", render(s), render(t)))
                    .collect();
                let j = json!({ "pairs": pairs.iter().map(|(s, t)| [render(s), render(t)]).collect::<Vec<_>>(), "bound": bound });
                Outcome::ok(lines, j)
            }
        },
        Command::Print => {
            let text = print_context(file);
            Outcome::ok(text.lines().map(str::to_string).collect(), json!({ "context": text }))
        }
    })
}

/// Runs one invocation and returns the exit code: 0 success, 1 negative verdict,
/// 2 usage or parse error, 3 internal invariant violation.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let result = load(&cli).and_then(|f| execute(&cli, &f));
    match result {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", o.json);
            } else {
                for l in &o.lines {
                    let _ = writeln!(out, "{l}");
                }
            }
            o.code
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            3
        }
    }
}
