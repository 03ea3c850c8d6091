//! Text formats: whitespace edge lists, a GML subset, and tab-separated
//! ground-truth label files.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::scalar::Scalar;

/// Parses an edge list.
///
/// Each non-comment line is `src dst [weight]`; everything after `#` is a
/// comment. A line holding a single token declares an isolated node. Labels
/// are numbered in order of first appearance. When `weighted` is false a
/// third column is ignored and every edge has weight 1. Repeated edges
/// accumulate their weights.
pub fn load_edge_list<T: Scalar>(text: &str, directed: bool, weighted: bool) -> Result<Graph<T>> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |tok: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() - 1
        })
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.len() {
            0 => continue,
            1 => {
                intern(tokens[0], &mut labels);
            }
            2 | 3 => {
                let weight = if weighted && tokens.len() == 3 {
                    let w: f64 = tokens[2].parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid weight `{}`", tokens[2]),
                    })?;
                    if w < 0.0 {
                        return Err(Error::NegativeWeight {
                            line: line_no,
                            weight: w,
                        });
                    }
                    if !w.is_finite() {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("non-finite weight `{}`", tokens[2]),
                        });
                    }
                    w
                } else {
                    1.0
                };
                let source = intern(tokens[0], &mut labels);
                let target = intern(tokens[1], &mut labels);
                edges.push(Edge {
                    source,
                    target,
                    weight: T::of(weight),
                });
            }
            n => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `src dst [weight]`, found {n} fields"),
                })
            }
        }
    }
    Graph::new(labels, directed, edges)
}

/// Writes a graph in the edge-list format accepted by [`load_edge_list`],
/// with full-precision weights. Fails for labels that contain whitespace or
/// `#`, which the format cannot represent.
pub fn to_edge_list<T: Scalar>(g: &Graph<T>) -> Result<String> {
    if let Some(bad) = g
        .labels()
        .iter()
        .find(|l| l.is_empty() || l.contains(char::is_whitespace) || l.contains('#'))
    {
        return Err(Error::InvalidParameter(format!(
            "label `{bad}` cannot be written to an edge list"
        )));
    }
    let mut out = String::new();
    let kind = if g.is_directed() {
        "directed"
    } else {
        "undirected"
    };
    let _ = writeln!(out, "# {kind} graph, {} nodes", g.node_count());
    let mut touched = vec![false; g.node_count()];
    for e in g.edges() {
        touched[e.source] = true;
        touched[e.target] = true;
    }
    for (i, used) in touched.iter().enumerate() {
        if !used {
            let _ = writeln!(out, "{}", g.label(i));
        }
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "{} {} {}",
            g.label(e.source),
            g.label(e.target),
            e.weight
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum GmlValue {
    Number(f64),
    Text(String),
    List(Vec<(String, GmlValue)>),
}

impl GmlValue {
    fn as_key(&self) -> Option<String> {
        match self {
            GmlValue::Number(x) => Some(if x.fract() == 0.0 && x.abs() < 1e15 {
                format!("{}", *x as i64)
            } else {
                x.to_string()
            }),
            GmlValue::Text(s) => Some(s.clone()),
            GmlValue::List(_) => None,
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Key(String),
    Number(f64),
    Text(String),
    Open,
    Close,
}

fn tokenize_gml(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c == '[' {
            chars.next();
            tokens.push(Token::Open);
        } else if c == ']' {
            chars.next();
            tokens.push(Token::Close);
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            let mut closed = false;
            for (_, c) in chars.by_ref() {
                if c == '"' {
                    closed = true;
                    break;
                }
                s.push(c);
            }
            if !closed {
                return Err(Error::Gml(format!("unterminated string at byte {start}")));
            }
            tokens.push(Token::Text(s));
        } else {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() || c == '[' || c == ']' || c == '"' {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let word = &text[start..end];
            if let Ok(x) = word.parse::<f64>() {
                tokens.push(Token::Number(x));
            } else if word
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            {
                tokens.push(Token::Key(word.to_string()));
            } else {
                return Err(Error::Gml(format!("unexpected token `{word}`")));
            }
        }
    }
    Ok(tokens)
}

fn parse_gml_list(
    tokens: &[Token],
    pos: &mut usize,
    nested: bool,
) -> Result<Vec<(String, GmlValue)>> {
    let mut items = Vec::new();
    loop {
        let key = match tokens.get(*pos) {
            None if nested => return Err(Error::Gml("unbalanced `[`".into())),
            None => return Ok(items),
            Some(Token::Close) if nested => {
                *pos += 1;
                return Ok(items);
            }
            Some(Token::Key(k)) => k.clone(),
            Some(t) => return Err(Error::Gml(format!("expected key, found {t:?}"))),
        };
        *pos += 1;
        let value = match tokens.get(*pos) {
            Some(Token::Number(x)) => GmlValue::Number(*x),
            Some(Token::Text(s)) => GmlValue::Text(s.clone()),
            Some(Token::Key(s)) => GmlValue::Text(s.clone()),
            Some(Token::Open) => {
                *pos += 1;
                let inner = parse_gml_list(tokens, pos, true)?;
                items.push((key, GmlValue::List(inner)));
                continue;
            }
            Some(Token::Close) | None => {
                return Err(Error::Gml(format!("key `{key}` has no value")));
            }
        };
        *pos += 1;
        items.push((key, value));
    }
}

/// Parses the GML subset `graph [ directed, node [ id label ... ], edge [
/// source target value ] ]`.
///
/// Node attributes other than `id`/`label` (e.g. `value`) are kept as string
/// metadata on the node. An edge `value` or `weight` becomes its weight;
/// other unknown keys are ignored with a warning.
pub fn load_gml<T: Scalar>(text: &str) -> Result<Graph<T>> {
    let tokens = tokenize_gml(text)?;
    let mut pos = 0;
    let top = parse_gml_list(&tokens, &mut pos, false)?;
    let graph = top
        .into_iter()
        .find_map(|(k, v)| match (k.as_str(), v) {
            ("graph", GmlValue::List(items)) => Some(items),
            _ => None,
        })
        .ok_or_else(|| Error::Gml("no `graph [ ... ]` block".into()))?;

    let mut directed = false;
    let mut node_blocks = Vec::new();
    let mut edge_blocks = Vec::new();
    let mut ignored: BTreeSet<String> = BTreeSet::new();
    for (key, value) in graph {
        match (key.as_str(), value) {
            ("directed", GmlValue::Number(x)) => directed = x != 0.0,
            ("node", GmlValue::List(items)) => node_blocks.push(items),
            ("edge", GmlValue::List(items)) => edge_blocks.push(items),
            (other, _) => {
                ignored.insert(format!("graph.{other}"));
            }
        }
    }

    let mut labels = Vec::with_capacity(node_blocks.len());
    let mut attributes = Vec::with_capacity(node_blocks.len());
    let mut id_to_index: HashMap<String, usize> = HashMap::new();
    for items in node_blocks {
        let mut id = None;
        let mut label = None;
        let mut attrs = BTreeMap::new();
        for (key, value) in items {
            match key.as_str() {
                "id" => id = value.as_key(),
                "label" => label = value.as_key(),
                _ => match value.as_key() {
                    Some(v) => {
                        attrs.insert(key, v);
                    }
                    None => {
                        ignored.insert(format!("node.{key}"));
                    }
                },
            }
        }
        let id = id.ok_or_else(|| Error::Gml("node without `id`".into()))?;
        if id_to_index.insert(id.clone(), labels.len()).is_some() {
            return Err(Error::Gml(format!("duplicate node id {id}")));
        }
        labels.push(label.unwrap_or(id));
        attributes.push(attrs);
    }

    let mut edges = Vec::with_capacity(edge_blocks.len());
    for items in edge_blocks {
        let mut source = None;
        let mut target = None;
        let mut weight = 1.0;
        for (key, value) in items {
            match (key.as_str(), &value) {
                ("source", _) => source = value.as_key(),
                ("target", _) => target = value.as_key(),
                ("value" | "weight", GmlValue::Number(w)) => weight = *w,
                _ => {
                    ignored.insert(format!("edge.{key}"));
                }
            }
        }
        let resolve = |end: Option<String>, which: &str| -> Result<usize> {
            let id = end.ok_or_else(|| Error::Gml(format!("edge without `{which}`")))?;
            id_to_index
                .get(&id)
                .copied()
                .ok_or(Error::DanglingEdge { id })
        };
        let s = resolve(source, "source")?;
        let t = resolve(target, "target")?;
        if weight < 0.0 {
            return Err(Error::Gml(format!("negative edge weight {weight}")));
        }
        edges.push(Edge {
            source: s,
            target: t,
            weight: T::of(weight),
        });
    }
    for key in &ignored {
        warn!("GML: ignoring unsupported key `{key}`");
    }
    Graph::new(labels, directed, edges)?.with_attributes(attributes)
}

/// Writes a graph as GML. Node ids are the internal indices; node metadata
/// is emitted as string attributes.
pub fn to_gml<T: Scalar>(g: &Graph<T>) -> String {
    let mut out = String::from("graph [\n");
    let _ = writeln!(out, "  directed {}", u8::from(g.is_directed()));
    for i in 0..g.node_count() {
        let _ = writeln!(out, "  node [\n    id {i}\n    label \"{}\"", g.label(i));
        for (k, v) in g.attributes(i) {
            let _ = writeln!(out, "    {k} \"{v}\"");
        }
        out.push_str("  ]\n");
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  edge [\n    source {}\n    target {}\n    value {}\n  ]",
            e.source, e.target, e.weight
        );
    }
    out.push_str("]\n");
    out
}

/// Class label that marks a node as explicitly excluded from evaluation.
pub const EXCLUDED_CLASS: &str = "-";

/// Parses `node_label<TAB>class_label` lines. Lines starting with `#` are
/// comments. Returns `(node, class)` pairs in file order.
pub fn parse_label_lines(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (node, class) = line.split_once('\t').ok_or_else(|| Error::Parse {
            line: lineno + 1,
            message: "expected `node<TAB>class`".into(),
        })?;
        let (node, class) = (node.trim(), class.trim());
        if node.is_empty() || class.is_empty() {
            return Err(Error::Parse {
                line: lineno + 1,
                message: "empty node or class label".into(),
            });
        }
        out.push((node.to_string(), class.to_string()));
    }
    Ok(out)
}
