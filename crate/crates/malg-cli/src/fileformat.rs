//! Line-oriented text format for structures.
//!
//! Every file starts with a `malg 1` header and a `kind` line. Elements
//! are named, sets use braces, tuples use parentheses, comments start
//! with `#`. Example:
//!
//! ```text
//! malg 1
//! kind multialgebra
//! elements 0 1
//! op s 1
//! s(0) = {1}
//! s(1) = {1}
//! ```
//!
//! `print` emits the canonical form (declaration order for elements and
//! symbols, tuple order for body lines, sets sorted); `parse(print(x))`
//! returns `x` exactly.

use std::fmt;

use malg::bits::BitSet;
use malg::core::{tuple_count, tuple_from_index, Signature, Term, Universe};
use malg::error::Caps;
use malg::multialg::MultiAlgebra;
use malg::variants::PartialMultiAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// A parsed poset file: labels plus the reflexive relation as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetFile {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

/// A parsed ordered-algebra file, still unvalidated: the order part and
/// deterministic operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedFile {
    pub poset: PosetFile,
    pub sig: Signature,
    pub tables: Vec<Vec<usize>>,
}

/// A parsed morphism file. Images are sets so one format serves both
/// plain maps (all singletons) and set-valued ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismFile {
    pub src_labels: Vec<String>,
    pub dst_labels: Vec<String>,
    pub images: Vec<BitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermFile {
    pub vars: Vec<String>,
    pub term: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Multi(MultiAlgebra),
    Partial(PartialMultiAlgebra),
    Poset(PosetFile),
    Ordered(OrderedFile),
    Morphism(MorphismFile),
    Term(TermFile),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Multi(_) => "multialgebra",
            Structure::Partial(_) => "partial",
            Structure::Poset(_) => "poset",
            Structure::Ordered(_) => "ordered-algebra",
            Structure::Morphism(_) => "morphism",
            Structure::Term(_) => "term",
        }
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn logical_lines(input: &str) -> Vec<Line<'_>> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| {
            let text = match l.find('#') {
                Some(p) => &l[..p],
                None => l,
            };
            Line {
                no: i + 1,
                text: text.trim_end(),
            }
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect()
}

fn lookup(labels: &[String], name: &str, line: usize, col: usize) -> PResult<usize> {
    labels
        .iter()
        .position(|l| l == name)
        .ok_or(ParseError {
            line,
            col,
            msg: format!("unknown element `{name}`"),
        })
}

/// Splits `name(a,b)` into the symbol and argument labels.
fn split_application(text: &str, line: usize) -> PResult<(&str, Vec<&str>)> {
    let open = match text.find('(') {
        Some(p) => p,
        None => return err(line, 1, "expected `symbol(args) = value`"),
    };
    let close = match text.rfind(')') {
        Some(p) if p > open => p,
        _ => return err(line, open + 1, "unclosed argument list"),
    };
    let name = text[..open].trim();
    if name.is_empty() {
        return err(line, 1, "missing operation symbol");
    }
    let inner = text[open + 1..close].trim();
    let args = if inner.is_empty() {
        vec![]
    } else {
        inner.split(',').map(str::trim).collect()
    };
    Ok((name, args))
}

fn parse_set(text: &str, labels: &[String], line: usize, col: usize) -> PResult<BitSet> {
    let t = text.trim();
    if !t.starts_with('{') || !t.ends_with('}') {
        return err(line, col, "expected a set in braces");
    }
    let inner = t[1..t.len() - 1].trim();
    let mut s = BitSet::empty(labels.len());
    if inner.is_empty() {
        return Ok(s);
    }
    for part in inner.split(',') {
        s.insert(lookup(labels, part.trim(), line, col)?);
    }
    Ok(s)
}

fn print_set(s: &BitSet, labels: &[String]) -> String {
    let items: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn parse(input: &str) -> PResult<Structure> {
    let lines = logical_lines(input);
    let mut it = lines.iter();
    let header = match it.next() {
        Some(l) => l,
        None => return err(1, 1, "empty file"),
    };
    if header.text.trim() != "malg 1" {
        return err(header.no, 1, "expected header `malg 1`");
    }
    let kind_line = match it.next() {
        Some(l) => l,
        None => return err(header.no + 1, 1, "missing `kind` line"),
    };
    let kind = match kind_line.text.trim().strip_prefix("kind ") {
        Some(k) => k.trim(),
        None => return err(kind_line.no, 1, "expected `kind <tag>`"),
    };
    let rest: Vec<&Line> = it.collect();
    match kind {
        "multialgebra" => parse_multi(&rest, false),
        "partial" => parse_multi(&rest, true),
        "poset" => parse_poset(&rest).map(Structure::Poset),
        "ordered-algebra" => parse_ordered(&rest),
        "morphism" => parse_morphism(&rest),
        "term" => parse_term_file(&rest),
        other => err(kind_line.no, 6, format!("unknown kind `{other}`")),
    }
}

fn parse_elements(l: &Line) -> PResult<Vec<String>> {
    match l.text.trim().strip_prefix("elements ") {
        Some(rest) => {
            let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if labels.is_empty() {
                return err(l.no, 10, "element list is empty");
            }
            for (i, a) in labels.iter().enumerate() {
                if labels[..i].contains(a) {
                    return err(l.no, 10, format!("duplicate element `{a}`"));
                }
            }
            Ok(labels)
        }
        None => err(l.no, 1, "expected `elements <labels>`"),
    }
}

fn parse_ops<'a>(lines: &mut std::iter::Peekable<std::slice::Iter<'_, &'a Line<'a>>>)
    -> PResult<Signature> {
    let mut symbols: Vec<(String, usize)> = Vec::new();
    while let Some(l) = lines.peek() {
        let t = l.text.trim();
        let Some(rest) = t.strip_prefix("op ") else { break };
        let mut parts = rest.split_whitespace();
        let name = parts
            .next()
            .ok_or(ParseError {
                line: l.no,
                col: 4,
                msg: "missing operation name".into(),
            })?
            .to_string();
        let arity: usize = parts
            .next()
            .and_then(|a| a.parse().ok())
            .ok_or(ParseError {
                line: l.no,
                col: 4 + name.len() + 1,
                msg: "missing or invalid arity".into(),
            })?;
        if symbols.iter().any(|(n, _)| *n == name) {
            return err(l.no, 4, format!("duplicate operation `{name}`"));
        }
        symbols.push((name, arity));
        lines.next();
    }
    Signature::new(symbols).map_err(|e| ParseError {
        line: 0,
        col: 0,
        msg: e.to_string(),
    })
}

fn parse_multi(lines: &[&Line], partial: bool) -> PResult<Structure> {
    let mut it = lines.iter().peekable();
    let first = it.next().ok_or(ParseError {
        line: 0,
        col: 0,
        msg: "missing `elements` line".into(),
    })?;
    let labels = parse_elements(first)?;
    let sig = parse_ops(&mut it)?;
    let n = labels.len();
    let caps = Caps::default();
    let mut tables: Vec<Vec<Option<BitSet>>> = (0..sig.len())
        .map(|sym| {
            vec![None; tuple_count(n, sig.arity(sym), &caps).unwrap_or(0) as usize]
        })
        .collect();
    for l in it {
        let (eq_l, eq_r) = match l.text.split_once('=') {
            Some(p) => p,
            None => return err(l.no, 1, "expected `symbol(args) = {set}`"),
        };
        let (name, args) = split_application(eq_l, l.no)?;
        let sym = sig.index_of(name).ok_or(ParseError {
            line: l.no,
            col: 1,
            msg: format!("unknown operation `{name}`"),
        })?;
        if args.len() != sig.arity(sym) {
            return err(
                l.no,
                1,
                format!("`{name}` takes {} arguments, got {}", sig.arity(sym), args.len()),
            );
        }
        let tuple: Vec<usize> = args
            .iter()
            .map(|a| lookup(&labels, a, l.no, 1))
            .collect::<PResult<_>>()?;
        let value = parse_set(eq_r, &labels, l.no, eq_l.len() + 2)?;
        if value.is_empty() && !partial {
            return err(l.no, eq_l.len() + 2, "empty value forbidden");
        }
        let idx = malg::core::tuple_index(n, &tuple);
        if tables[sym][idx].is_some() {
            return err(l.no, 1, format!("duplicate line for `{name}({})`", args.join(",")));
        }
        tables[sym][idx] = Some(value);
    }
    let mut full = Vec::with_capacity(sig.len());
    for (sym, table) in tables.into_iter().enumerate() {
        let mut t = Vec::with_capacity(table.len());
        for (ti, v) in table.into_iter().enumerate() {
            match v {
                Some(v) => t.push(v),
                None => {
                    let tuple = tuple_from_index(n, sig.arity(sym), ti as u64);
                    let shown: Vec<&str> =
                        tuple.iter().map(|&a| labels[a].as_str()).collect();
                    return err(
                        0,
                        0,
                        format!("missing line for `{}({})`", sig.name(sym), shown.join(",")),
                    );
                }
            }
        }
        full.push(t);
    }
    let universe = Universe::new(labels).map_err(|e| ParseError {
        line: 0,
        col: 0,
        msg: e.to_string(),
    })?;
    let build = |msg: malg::error::Error| ParseError {
        line: 0,
        col: 0,
        msg: msg.to_string(),
    };
    if partial {
        Ok(Structure::Partial(
            PartialMultiAlgebra::new(sig, universe, full).map_err(build)?,
        ))
    } else {
        Ok(Structure::Multi(
            MultiAlgebra::new(sig, universe, full).map_err(build)?,
        ))
    }
}

fn parse_order_pairs(
    lines: &mut std::iter::Peekable<std::slice::Iter<'_, &Line<'_>>>,
    labels: &[String],
) -> PResult<Vec<Vec<bool>>> {
    let n = labels.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true; // reflexivity is implied
    }
    while let Some(l) = lines.peek() {
        let t = l.text.trim();
        let Some((a, b)) = t.split_once("<=") else { break };
        let ai = lookup(labels, a.trim(), l.no, 1)?;
        let bi = lookup(labels, b.trim(), l.no, a.len() + 3)?;
        leq[ai][bi] = true;
        lines.next();
    }
    Ok(leq)
}

fn parse_poset(lines: &[&Line]) -> PResult<PosetFile> {
    let mut it = lines.iter().peekable();
    let first = it.next().ok_or(ParseError {
        line: 0,
        col: 0,
        msg: "missing `elements` line".into(),
    })?;
    let labels = parse_elements(first)?;
    let leq = parse_order_pairs(&mut it, &labels)?;
    if let Some(l) = it.next() {
        return err(l.no, 1, "unexpected line in poset file");
    }
    Ok(PosetFile { labels, leq })
}

fn parse_ordered(lines: &[&Line]) -> PResult<Structure> {
    let mut it = lines.iter().peekable();
    let first = it.next().ok_or(ParseError {
        line: 0,
        col: 0,
        msg: "missing `elements` line".into(),
    })?;
    let labels = parse_elements(first)?;
    let leq = parse_order_pairs(&mut it, &labels)?;
    let sig = parse_ops(&mut it)?;
    let n = labels.len();
    let caps = Caps::default();
    let mut tables: Vec<Vec<Option<usize>>> = (0..sig.len())
        .map(|sym| {
            vec![None; tuple_count(n, sig.arity(sym), &caps).unwrap_or(0) as usize]
        })
        .collect();
    for l in it {
        let (eq_l, eq_r) = match l.text.split_once('=') {
            Some(p) => p,
            None => return err(l.no, 1, "expected `symbol(args) = element`"),
        };
        let (name, args) = split_application(eq_l, l.no)?;
        let sym = sig.index_of(name).ok_or(ParseError {
            line: l.no,
            col: 1,
            msg: format!("unknown operation `{name}`"),
        })?;
        if args.len() != sig.arity(sym) {
            return err(
                l.no,
                1,
                format!("`{name}` takes {} arguments, got {}", sig.arity(sym), args.len()),
            );
        }
        let tuple: Vec<usize> = args
            .iter()
            .map(|a| lookup(&labels, a, l.no, 1))
            .collect::<PResult<_>>()?;
        let value = lookup(&labels, eq_r.trim(), l.no, eq_l.len() + 2)?;
        let idx = malg::core::tuple_index(n, &tuple);
        if tables[sym][idx].is_some() {
            return err(l.no, 1, format!("duplicate line for `{name}({})`", args.join(",")));
        }
        tables[sym][idx] = Some(value);
    }
    let mut full = Vec::with_capacity(sig.len());
    for (sym, table) in tables.into_iter().enumerate() {
        let mut t = Vec::with_capacity(table.len());
        for (ti, v) in table.into_iter().enumerate() {
            match v {
                Some(v) => t.push(v),
                None => {
                    let tuple = tuple_from_index(n, sig.arity(sym), ti as u64);
                    let shown: Vec<&str> =
                        tuple.iter().map(|&a| labels[a].as_str()).collect();
                    return err(
                        0,
                        0,
                        format!("missing line for `{}({})`", sig.name(sym), shown.join(",")),
                    );
                }
            }
        }
        full.push(t);
    }
    Ok(Structure::Ordered(OrderedFile {
        poset: PosetFile { labels, leq },
        sig,
        tables: full,
    }))
}

fn parse_morphism(lines: &[&Line]) -> PResult<Structure> {
    let mut it = lines.iter();
    let src_line = it.next().ok_or(ParseError {
        line: 0,
        col: 0,
        msg: "missing `src` line".into(),
    })?;
    let src_labels: Vec<String> = match src_line.text.trim().strip_prefix("src ") {
        Some(rest) => rest.split_whitespace().map(String::from).collect(),
        None => return err(src_line.no, 1, "expected `src <labels>`"),
    };
    let dst_line = it.next().ok_or(ParseError {
        line: src_line.no + 1,
        col: 0,
        msg: "missing `dst` line".into(),
    })?;
    let dst_labels: Vec<String> = match dst_line.text.trim().strip_prefix("dst ") {
        Some(rest) => rest.split_whitespace().map(String::from).collect(),
        None => return err(dst_line.no, 1, "expected `dst <labels>`"),
    };
    let mut images: Vec<Option<BitSet>> = vec![None; src_labels.len()];
    for l in it {
        let (a, b) = match l.text.split_once("->") {
            Some(p) => p,
            None => return err(l.no, 1, "expected `element -> image`"),
        };
        let ai = lookup(&src_labels, a.trim(), l.no, 1)?;
        let bt = b.trim();
        let img = if bt.starts_with('{') {
            parse_set(bt, &dst_labels, l.no, a.len() + 3)?
        } else {
            BitSet::singleton(dst_labels.len(), lookup(&dst_labels, bt, l.no, a.len() + 3)?)
        };
        if img.is_empty() {
            return err(l.no, a.len() + 3, "empty value forbidden");
        }
        if images[ai].is_some() {
            return err(l.no, 1, format!("duplicate line for `{}`", a.trim()));
        }
        images[ai] = Some(img);
    }
    let images: Vec<BitSet> = images
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or(ParseError {
                line: 0,
                col: 0,
                msg: format!("missing line for `{}`", src_labels[i]),
            })
        })
        .collect::<PResult<_>>()?;
    Ok(Structure::Morphism(MorphismFile {
        src_labels,
        dst_labels,
        images,
    }))
}

fn parse_term_file(lines: &[&Line]) -> PResult<Structure> {
    let mut it = lines.iter();
    let vars_line = it.next().ok_or(ParseError {
        line: 0,
        col: 0,
        msg: "missing `vars` line".into(),
    })?;
    let vars: Vec<String> = match vars_line.text.trim().strip_prefix("vars ") {
        Some(rest) => rest.split_whitespace().map(String::from).collect(),
        None => return err(vars_line.no, 1, "expected `vars <names>`"),
    };
    let term_line = it.next().ok_or(ParseError {
        line: vars_line.no + 1,
        col: 0,
        msg: "missing `term` line".into(),
    })?;
    let text = match term_line.text.trim().strip_prefix("term ") {
        Some(t) => t.trim(),
        None => return err(term_line.no, 1, "expected `term <expression>`"),
    };
    let term = parse_term(text).map_err(|(col, msg)| ParseError {
        line: term_line.no,
        col,
        msg,
    })?;
    if let Some(l) = it.next() {
        return err(l.no, 1, "unexpected line in term file");
    }
    Ok(Structure::Term(TermFile { vars, term }))
}

/// Parses a term expression like `f(s(x),y)`; errors carry the column.
pub fn parse_term(text: &str) -> Result<Term, (usize, String)> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let t = parse_term_at(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err((pos + 1, "trailing input after term".into()));
    }
    Ok(t)
}

fn skip_ws(b: &[u8], pos: &mut usize) {
    while *pos < b.len() && b[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_term_at(b: &[u8], pos: &mut usize) -> Result<Term, (usize, String)> {
    skip_ws(b, pos);
    let start = *pos;
    while *pos < b.len() && (b[*pos].is_ascii_alphanumeric() || b[*pos] == b'_') {
        *pos += 1;
    }
    if *pos == start {
        return Err((start + 1, "expected an identifier".into()));
    }
    let name = std::str::from_utf8(&b[start..*pos]).unwrap().to_string();
    skip_ws(b, pos);
    if *pos < b.len() && b[*pos] == b'(' {
        *pos += 1;
        let mut args = Vec::new();
        loop {
            args.push(parse_term_at(b, pos)?);
            skip_ws(b, pos);
            match b.get(*pos) {
                Some(b',') => *pos += 1,
                Some(b')') => {
                    *pos += 1;
                    break;
                }
                _ => return Err((*pos + 1, "expected `,` or `)`".into())),
            }
        }
        Ok(Term::App(name, args))
    } else {
        Ok(Term::Var(name))
    }
}

pub fn print(s: &Structure) -> String {
    let mut out = String::from("malg 1\n");
    out.push_str(&format!("kind {}\n", s.kind()));
    match s {
        Structure::Multi(m) => {
            print_multi_body(
                &mut out,
                m.signature(),
                &m.universe().labels().map(String::from).collect::<Vec<_>>(),
                |sym, ti| m.table(sym)[ti].clone(),
            );
        }
        Structure::Partial(m) => {
            let labels: Vec<String> = m.universe().labels().map(String::from).collect();
            let sig = m.signature().clone();
            let n = labels.len();
            let caps = Caps::default();
            print_multi_body(&mut out, &sig, &labels, |sym, ti| {
                let tuple = tuple_from_index(n, sig.arity(sym), ti as u64);
                let _ = &caps;
                m.value(sym, &tuple).clone()
            });
        }
        Structure::Poset(p) => print_poset_body(&mut out, p),
        Structure::Ordered(o) => {
            print_poset_body(&mut out, &o.poset);
            let labels = &o.poset.labels;
            for (name, arity) in o.sig.iter() {
                out.push_str(&format!("op {name} {arity}\n"));
            }
            for sym in 0..o.sig.len() {
                let arity = o.sig.arity(sym);
                for (ti, &v) in o.tables[sym].iter().enumerate() {
                    let tuple = tuple_from_index(labels.len(), arity, ti as u64);
                    let shown: Vec<&str> = tuple.iter().map(|&a| labels[a].as_str()).collect();
                    out.push_str(&format!(
                        "{}({}) = {}\n",
                        o.sig.name(sym),
                        shown.join(","),
                        labels[v]
                    ));
                }
            }
        }
        Structure::Morphism(m) => {
            out.push_str(&format!("src {}\n", m.src_labels.join(" ")));
            out.push_str(&format!("dst {}\n", m.dst_labels.join(" ")));
            for (a, img) in m.images.iter().enumerate() {
                if img.len() == 1 {
                    out.push_str(&format!(
                        "{} -> {}\n",
                        m.src_labels[a],
                        m.dst_labels[img.first().unwrap()]
                    ));
                } else {
                    out.push_str(&format!(
                        "{} -> {}\n",
                        m.src_labels[a],
                        print_set(img, &m.dst_labels)
                    ));
                }
            }
        }
        Structure::Term(t) => {
            out.push_str(&format!("vars {}\n", t.vars.join(" ")));
            out.push_str(&format!("term {}\n", t.term));
        }
    }
    out
}

fn print_multi_body(
    out: &mut String,
    sig: &Signature,
    labels: &[String],
    value: impl Fn(usize, usize) -> BitSet,
) {
    out.push_str(&format!("elements {}\n", labels.join(" ")));
    for (name, arity) in sig.iter() {
        out.push_str(&format!("op {name} {arity}\n"));
    }
    let caps = Caps::default();
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let total = tuple_count(labels.len(), arity, &caps).unwrap() as usize;
        for ti in 0..total {
            let tuple = tuple_from_index(labels.len(), arity, ti as u64);
            let shown: Vec<&str> = tuple.iter().map(|&a| labels[a].as_str()).collect();
            out.push_str(&format!(
                "{}({}) = {}\n",
                sig.name(sym),
                shown.join(","),
                print_set(&value(sym, ti), labels)
            ));
        }
    }
}

fn print_poset_body(out: &mut String, p: &PosetFile) {
    out.push_str(&format!("elements {}\n", p.labels.join(" ")));
    let n = p.labels.len();
    for a in 0..n {
        for b in 0..n {
            if a != b && p.leq[a][b] {
                out.push_str(&format!("{} <= {}\n", p.labels[a], p.labels[b]));
            }
        }
    }
}
