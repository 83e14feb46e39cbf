//! Tables regenerated from the bundled catalog.

use anyhow::Result;
use ccwl::candidates::{search as run_search, symmetric_units, SearchOptions};
use ccwl::catalog::{self, catalog_group, search_rows};
use ccwl::permgrp::inv;
use ccwl::rigidity::RhoContext;
use ccwl::spectral::{is_faithful, rainbow_rho, representation};
use ccwl::wlclosure::wl_close_graph;
use ccwl::EigenChoice;
use serde_json::Value;

use crate::Out;

/// One row per solid: closure rank, Gram classes, eigenvalue and the
/// faithfulness and rigidity verdicts under the bundled hints.
pub fn solids(out: &mut Out) -> Result<()> {
    let mut rows = Vec::new();
    for s in catalog::solids() {
        let g = s.graph();
        let x = wl_close_graph(g.n(), &g.edges())?;
        let rep = representation(&x, &g, s.matrix, EigenChoice::Value(s.lambda))?;
        let rb = rainbow_rho(&x, &rep)?;
        let rigid = RhoContext::new(&x, &rep)?.find_rigid_color().is_some();
        let degrees: Vec<String> = x
            .fibers()
            .iter()
            .map(|f| format!("{}[{}]", f.len(), g.degree(f[0])))
            .collect();
        rows.push(vec![
            Value::from(s.name),
            s.group.into(),
            degrees.join("+").into(),
            x.rank().into(),
            rb.fibered_rank.into(),
            rep.w.len().into(),
            s.matrix.to_string().into(),
            s.lambda_text.into(),
            format!("{:.6}", rep.lambda).into(),
            is_faithful(&x, &rb).into(),
            rigid.into(),
        ]);
    }
    out.table(
        "solids",
        &["solid", "group", "degrees", "S", "S_rho", "W", "matrix", "lambda", "lambda_value", "faithful", "rigid"],
        rows,
    );
    Ok(())
}

/// One row per reference search case. Counts are recomputed when the base
/// has at most `max_units` symmetric units and left blank otherwise.
pub fn search(out: &mut Out, max_units: usize) -> Result<()> {
    let mut rows = Vec::new();
    for row in search_rows() {
        let base = inv(&catalog_group(&row.spec())?);
        let units = symmetric_units(&base).len();
        let (cand, closed, poly) = if row.candidates.is_some() && units <= max_units {
            let (_, rep) = run_search(&base, &SearchOptions::default())?;
            (Value::from(rep.counts.edge_bounded), Value::from(rep.counts.wl_exact), Value::from(rep.counts.polyhedral))
        } else {
            (Value::Null, Value::Null, Value::Null)
        };
        rows.push(vec![
            Value::from(row.group),
            row.orbits.into(),
            base.rank().into(),
            row.aut.into(),
            units.into(),
            cand,
            closed,
            poly,
        ]);
    }
    out.table(
        "search",
        &["group", "orbits", "rank", "aut", "units", "candidates", "closed", "polyhedral"],
        rows,
    );
    Ok(())
}
