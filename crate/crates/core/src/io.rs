//! Plain-text edge lists: a header line `n m` followed by `m` lines `a b`
//! with 0-based endpoints. Blank lines and `#` comments are ignored.

use crate::error::{invalid, Result};

pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((ln, header)) = lines.next() else {
        return invalid("empty edge list");
    };
    let nums = numbers(header, ln)?;
    let (n, m) = match nums[..] {
        [n] => (n, None),
        [n, m] => (n, Some(m)),
        _ => return invalid(format!("line {ln}: expected header `n m`")),
    };
    let mut edges = Vec::new();
    for (ln, l) in lines {
        match numbers(l, ln)?[..] {
            [a, b] => edges.push((a, b)),
            _ => return invalid(format!("line {ln}: expected two endpoints")),
        }
    }
    if let Some(m) = m {
        if m != edges.len() {
            return invalid(format!("header announces {m} edges, found {}", edges.len()));
        }
    }
    Ok((n, edges))
}

fn numbers(l: &str, ln: usize) -> Result<Vec<usize>> {
    l.split_whitespace()
        .map(|t| t.parse::<usize>().or_else(|_| invalid(format!("line {ln}: bad integer {t:?}"))))
        .collect()
}

pub fn format_edge_list(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for (a, b) in edges {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}
