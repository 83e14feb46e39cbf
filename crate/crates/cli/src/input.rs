//! Resolution of command-line operands into graphs, configurations and groups.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ccwl::catalog;
use ccwl::io::parse_edge_list;
use ccwl::permgrp::inv;
use ccwl::wlclosure::wl_close_graph;
use ccwl::{ColorGraph, Error, PermGroup, SimpleGraph};

/// What an operand turned out to name.
pub enum Source {
    Graph(SimpleGraph),
    Config(ColorGraph),
    Group(PermGroup),
}

/// `catalog:NAME` names a bundled graph or a catalog group spec such as
/// `catalog:alt5/orbits=30+12`. A `.json` file holds a configuration or a
/// group; anything else is read as an edge list.
pub fn resolve(arg: &str) -> Result<Source> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        if let Some(g) = catalog::graph(name) {
            return Ok(Source::Graph(g));
        }
        if let Ok(g) = catalog::catalog_group(name) {
            return Ok(Source::Group(g));
        }
        let mut known = catalog::graph_names();
        known.extend(catalog::groups().iter().map(|g| g.name));
        return Err(Error::Invalid(format!("unknown catalog entry {name:?}; known: {}", known.join(", "))).into());
    }
    let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    if Path::new(arg).extension().is_some_and(|e| e == "json") {
        let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
        let src = if value.get("generators").is_some() {
            Source::Group(PermGroup::from_json(&text)?)
        } else {
            Source::Config(ColorGraph::from_json(&text)?)
        };
        return Ok(src);
    }
    let (n, edges) = parse_edge_list(&text)?;
    Ok(Source::Graph(SimpleGraph::new(n, &edges)?))
}

fn check_size(n: usize) -> Result<()> {
    let bound = ccwl::limits::max_n();
    if n > bound {
        return Err(Error::Bound(format!("{n} points exceed the limit of {bound}; raise CC_MAX_N")).into());
    }
    Ok(())
}

pub fn graph(arg: &str) -> Result<SimpleGraph> {
    match resolve(arg)? {
        Source::Graph(g) => {
            check_size(g.n())?;
            Ok(g)
        }
        _ => bail!(Error::Invalid(format!("{arg} is not a graph"))),
    }
}

/// The closure of a graph, a configuration as given, or the orbit
/// configuration of a group.
pub fn config(arg: &str) -> Result<ColorGraph> {
    let x = match resolve(arg)? {
        Source::Graph(g) => {
            check_size(g.n())?;
            wl_close_graph(g.n(), &g.edges())?
        }
        Source::Config(x) => x,
        Source::Group(g) => {
            check_size(g.degree())?;
            inv(&g)
        }
    };
    check_size(x.n())?;
    Ok(x)
}

pub fn group(arg: &str) -> Result<PermGroup> {
    match resolve(arg)? {
        Source::Group(g) => {
            check_size(g.degree())?;
            Ok(g)
        }
        _ => bail!(Error::Invalid(format!("{arg} is not a group"))),
    }
}
