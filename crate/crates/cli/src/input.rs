//! Graph input grammar shared by the verbs.

use std::path::Path;

use thiserror::Error;
use vmcalc::theta::build_theta;
use vmcalc::{Graph, ThetaSpec};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn parse_err(input: &str, reason: impl ToString) -> InputError {
    InputError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn size(input: &str, digits: &str, min: usize) -> Result<usize, InputError> {
    let k: usize = digits
        .parse()
        .map_err(|_| parse_err(input, "expected a vertex count"))?;
    if k < min || k > vmcalc::MAX_VERTICES {
        return Err(parse_err(
            input,
            format!("size must be in {min}..={}", vmcalc::MAX_VERTICES),
        ));
    }
    Ok(k)
}

/// Accepts `theta:1,3,3`, `cycle:k`, `g6:<graph6>`, `edges:n;u-v,u-v`, the
/// builtins `C<k>`, `K<k>`, `P<k>`, or a path to a file holding graph6 or
/// `n m` edge-list text.
pub fn parse_graph(input: &str) -> Result<Graph, InputError> {
    let s = input.trim();
    if let Some(rest) = s.strip_prefix("theta:") {
        let spec: ThetaSpec = rest.parse().map_err(|e| parse_err(input, e))?;
        return Ok(build_theta(&spec));
    }
    if let Some(rest) = s.strip_prefix("cycle:") {
        return Ok(Graph::cycle(size(input, rest, 3)?));
    }
    if let Some(rest) = s.strip_prefix("g6:") {
        return Graph::from_graph6(rest).map_err(|e| parse_err(input, e));
    }
    if let Some(rest) = s.strip_prefix("edges:") {
        return parse_edges(input, rest);
    }
    if let Some(g) = builtin(input, s)? {
        return Ok(g);
    }
    let path = Path::new(s);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
            path: s.to_string(),
            source,
        })?;
        return parse_file(input, &text);
    }
    Err(parse_err(input, "unrecognized graph input"))
}

fn builtin(input: &str, s: &str) -> Result<Option<Graph>, InputError> {
    let mut chars = s.chars();
    let (Some(kind), digits) = (chars.next(), chars.as_str()) else {
        return Ok(None);
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    Ok(match kind {
        'C' => Some(Graph::cycle(size(input, digits, 3)?)),
        'K' => Some(Graph::complete(size(input, digits, 0)?)),
        'P' => Some(Graph::path(size(input, digits, 0)?)),
        _ => None,
    })
}

fn parse_edges(input: &str, rest: &str) -> Result<Graph, InputError> {
    let (n, list) = rest.split_once(';').unwrap_or((rest, ""));
    let n = size(input, n.trim(), 0)?;
    let mut edges = Vec::new();
    for item in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (u, v) = item
            .split_once('-')
            .ok_or_else(|| parse_err(input, format!("edge {item:?} is not u-v")))?;
        let u: usize = u
            .trim()
            .parse()
            .map_err(|_| parse_err(input, "bad endpoint"))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| parse_err(input, "bad endpoint"))?;
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges).map_err(|e| parse_err(input, e))
}

fn parse_file(input: &str, text: &str) -> Result<Graph, InputError> {
    let body = text.trim();
    let edge_list = body
        .split_whitespace()
        .next()
        .is_some_and(|t| t.bytes().all(|b| b.is_ascii_digit()));
    let parsed = if edge_list {
        Graph::from_edge_list(body)
    } else {
        Graph::from_graph6(body)
    };
    parsed.map_err(|e| parse_err(input, e))
}
