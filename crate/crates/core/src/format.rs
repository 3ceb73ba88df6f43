//! Line-oriented text formats.
//!
//! ```text
//! poset <n>          bipartite <k> <r>      graph <n>       linext <n>
//! rel <u> <v>        edge <a> <b>           edge <u> <v>    <x_0> .. <x_{n-1}>
//! ```
//!
//! Lines starting with `#` and blank lines are ignored everywhere. Errors
//! carry the 1-based line number.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::expander::{BipartiteGraph, SimpleGraph};
use crate::linext::LinearExtension;
use crate::poset::Poset;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Content lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| err(line, format!("expected a non-negative integer, found `{token}`")))
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, keyword: &str, arity: usize) -> Result<Vec<usize>> {
    let (line, tokens) = it.next().ok_or_else(|| err(1, format!("missing `{keyword}` header")))?;
    if tokens[0] != keyword || tokens.len() != arity + 1 {
        return Err(err(line, format!("expected `{keyword}` followed by {arity} number(s)")));
    }
    tokens[1..].iter().map(|t| number(line, t)).collect()
}

/// `keyword a b` lines with both numbers below `bound`.
fn pairs<'a>(
    it: impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
    bound: usize,
) -> Result<Vec<(usize, usize)>> {
    it.map(|(line, tokens)| {
        if tokens[0] != keyword || tokens.len() != 3 {
            return Err(err(line, format!("expected `{keyword} <a> <b>`")));
        }
        let (a, b) = (number(line, tokens[1])?, number(line, tokens[2])?);
        if let Some(bad) = [a, b].into_iter().find(|&x| x >= bound) {
            return Err(err(line, format!("index {bad} out of range 0..{bound}")));
        }
        Ok((a, b))
    })
    .collect()
}

fn comment_block(out: &mut String, comments: &[String]) {
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut it = lines(text);
    let n = header(&mut it, "poset", 1)?[0];
    Poset::from_relations(n, pairs(it, "rel", n)?)
}

/// Writes only the cover pairs, after `comments` as `#` lines.
pub fn serialize_poset(p: &Poset, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, comments);
    let _ = writeln!(out, "poset {}", p.len());
    for &(u, v) in p.covers() {
        let _ = writeln!(out, "rel {u} {v}");
    }
    out
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut it = lines(text);
    let h = header(&mut it, "bipartite", 2)?;
    BipartiteGraph::from_edges(h[0], h[1], pairs(it, "edge", h[0])?)
}

pub fn serialize_bipartite(g: &BipartiteGraph, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, comments);
    let _ = writeln!(out, "bipartite {} {}", g.k(), g.r());
    for (a, b) in g.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut it = lines(text);
    let n = header(&mut it, "graph", 1)?[0];
    SimpleGraph::from_edges(n, pairs(it, "edge", n)?)
}

pub fn serialize_graph(g: &SimpleGraph, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, comments);
    let _ = writeln!(out, "graph {}", g.len());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

/// The raw order of a `linext` file, checked only for being a permutation.
pub fn parse_order(text: &str) -> Result<Vec<usize>> {
    let mut it = lines(text);
    let n = header(&mut it, "linext", 1)?[0];
    let mut order = Vec::with_capacity(n);
    let mut last_line = 1;
    for (line, tokens) in it {
        last_line = line;
        for t in tokens {
            order.push(number(line, t)?);
        }
    }
    if order.len() != n {
        return Err(err(last_line, format!("expected {n} indices, found {}", order.len())));
    }
    crate::poset::check_permutation(n, &order).map_err(|e| err(last_line, e.to_string()))?;
    Ok(order)
}

pub fn parse_linext(text: &str, p: &Poset) -> Result<LinearExtension> {
    LinearExtension::new(p, parse_order(text)?)
}

pub fn serialize_linext(l: &LinearExtension) -> String {
    let body: Vec<String> = l.order().iter().map(usize::to_string).collect();
    format!("linext {}\n{}\n", l.len(), body.join(" "))
}
