//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

use std::time::{Duration, Instant};

use ccwl::catalog::{self, catalog_group, moebius_kantor, search_rows};
use ccwl::ccstruct::{
    algebraic_fusion, parabolics, parabolics_single_generated, quotient, restriction, tensor, validate,
};
use ccwl::candidates::search;
use ccwl::isomorph::{algebraic_aut_group, color_isomorphic, is_schurian};
use ccwl::permgrp::inv;
use ccwl::rigidity::{RhoContext, RigidityCertificate, SetRule};
use ccwl::spectral::{build_rep, rainbow_rho, is_faithful, projection, representation, EigenChoice, MatrixKind, Spectrum};
use ccwl::wlclosure::{wl_close_graph, wl_close_rainbow};
use ccwl::{ColorGraph, SearchOptions, SimpleGraph, SphericalRep};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closure_of(g: &SimpleGraph) -> ColorGraph {
    wl_close_graph(g.n(), &g.edges()).expect("valid graph")
}

fn hinted(name: &str) -> (ColorGraph, SimpleGraph, SphericalRep) {
    let s = catalog::solid(name).unwrap();
    let g = s.graph();
    let x = closure_of(&g);
    let rep = representation(&x, &g, s.matrix, EigenChoice::Value(s.lambda)).unwrap();
    (x, g, rep)
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> SimpleGraph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.15..0.85);
    let mut e = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(p) {
                e.push((a, b));
            }
        }
    }
    SimpleGraph::new(n, &e).unwrap()
}

fn wl_ranks() -> Check {
    let start = Instant::now();
    for s in catalog::solids() {
        let r = closure_of(&s.graph()).rank();
        ensure(r == s.wl_rank, || format!("{}: rank {r}, expected {}", s.name, s.wl_rank))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("15 solids in {:.2}s", t.as_secs_f64()))
}

fn rho_ranks() -> Check {
    let mut bad = Vec::new();
    for s in catalog::solids() {
        let g = s.graph();
        let x = closure_of(&g);
        let m = ccwl::spectral::graph_matrix(&g, s.matrix);
        let spec = Spectrum::new(m);
        let mult = spec.groups.iter().find(|(v, _)| (v - s.lambda).abs() < 1e-6).map(|g| g.1);
        ensure(mult == Some(3), || format!("{}: multiplicity {mult:?}", s.name))?;
        let p = projection(&x, &g, s.matrix, EigenChoice::Value(s.lambda)).map_err(|e| format!("{}: {e}", s.name))?;
        ensure((p.lambda - s.lambda).abs() < 1e-6, || format!("{}: lambda {}", s.name, p.lambda))?;
        let rep = build_rep(&x, &p).map_err(|e| format!("{}: {e}", s.name))?;
        let rb = rainbow_rho(&x, &rep).map_err(|e| format!("{}: {e}", s.name))?;
        if rb.fibered_rank != s.rho_rank {
            bad.push(format!("{} has {} classes (|W| = {}), expected {}", s.name, rb.fibered_rank, rb.rank(), s.rho_rank));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("15 solids".into())
}

fn faithfulness() -> Check {
    for s in catalog::solids() {
        let (x, _, rep) = hinted(s.name);
        let rb = rainbow_rho(&x, &rep).unwrap();
        ensure(is_faithful(&x, &rb), || format!("{} not faithful", s.name))?;
    }
    let mk = moebius_kantor();
    let x = closure_of(&mk);
    let rep = representation(&x, &mk, MatrixKind::A, EigenChoice::Value(1.0)).map_err(|e| format!("Moebius-Kantor: {e}"))?;
    let rb = rainbow_rho(&x, &rep).unwrap();
    ensure(!is_faithful(&x, &rb), || "Moebius-Kantor eigenvalue 1 reported faithful".into())?;
    Ok(format!(
        "15 solids faithful; Moebius-Kantor rank {} vs closure of Gram rainbow {}",
        x.rank(),
        wl_close_rainbow(&rb.graph).rank()
    ))
}

fn rigidity() -> Check {
    for s in catalog::solids() {
        let (x, _, rep) = hinted(s.name);
        let ctx = RhoContext::new(&x, &rep).map_err(|e| format!("{}: {e}", s.name))?;
        let (c, cert) = ctx.find_rigid_color().ok_or_else(|| format!("{}: no rigid color", s.name))?;
        ensure(cert.seed_color == Some(c) && cert.rigid, || format!("{}: bad certificate", s.name))?;
        ensure(ctx.replay(&cert), || format!("{}: replay failed", s.name))?;
        let back = RigidityCertificate::from_json(&cert.to_json()).unwrap();
        ensure(back == cert && back.to_json() == cert.to_json(), || format!("{}: JSON round trip", s.name))?;
    }
    Ok("15 solids certified".into())
}

fn schurity() -> Check {
    for s in catalog::solids() {
        let x = closure_of(&s.graph());
        ensure(is_schurian(&x).unwrap(), || format!("{} not schurian", s.name))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c4);
    for i in 0..50 {
        let g = random_graph(&mut rng, 10);
        ensure(is_schurian(&closure_of(&g)).unwrap(), || format!("random graph {i}: {:?}", g.edges()))?;
    }
    Ok("15 solids and 50 random graphs".into())
}

fn inv_ranks() -> Check {
    let cases = [
        ("alt4/orbits=6", 4),
        ("alt4/orbits=4", 2),
        ("alt4/orbits=6+4", 10),
        ("sym4II/orbits=8", 4),
        ("sym4II/orbits=12+8", 19),
        ("alt5/orbits=30", 16),
        ("alt5/orbits=20", 8),
        ("alt5/orbits=30+20+12", 68),
    ];
    for (spec, rank) in cases {
        let r = inv(&catalog_group(spec).unwrap()).rank();
        ensure(r == rank, || format!("{spec}: rank {r}, expected {rank}"))?;
    }
    Ok(format!("{} groups", cases.len()))
}

fn search_counts() -> Check {
    let mut notes = Vec::new();
    for (spec, xp, x) in [
        ("alt4/orbits=6+4", 19, 0),
        ("alt5/orbits=30", 52, 5),
        ("alt5/orbits=20", 10, 0),
        ("sym4II/orbits=12+6", 148, 6),
        ("alt5/orbits=20+12", 80, 1),
    ] {
        let start = Instant::now();
        let base = inv(&catalog_group(spec).unwrap());
        let (_, rep) = search(&base, &SearchOptions::default()).map_err(|e| format!("{spec}: {e}"))?;
        let t = start.elapsed();
        let c = rep.counts;
        ensure((c.edge_bounded, c.wl_exact) == (xp, x), || {
            format!("{spec}: got ({}, {}), expected ({xp}, {x})", c.edge_bounded, c.wl_exact)
        })?;
        ensure(rep.witnesses.is_empty(), || format!("{spec}: {} polyhedral witnesses", rep.witnesses.len()))?;
        ensure(t < Duration::from_secs(300), || format!("{spec}: took {t:?}"))?;
        notes.push(format!("{spec} {:.1}s", t.as_secs_f64()));
    }
    let base = inv(&catalog_group("sym4I/orbits=6+4").unwrap());
    let (_, rep) = search(&base, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(!rep.witnesses.is_empty(), || "sym4I 6+4: no polyhedral witness".into())?;
    for w in &rep.witnesses {
        let y = wl_close_graph(w.n, &w.edges).unwrap();
        ensure(y.rank() == 9, || format!("witness rank {}", y.rank()))?;
        ensure(color_isomorphic(&y, &base).unwrap().is_some(), || "witness not isomorphic to the base".into())?;
    }
    notes.push(format!("sym4I 6+4: {} witnesses", rep.witnesses.len()));
    Ok(notes.join("; "))
}

/// Configurations the property suites run on.
fn corpus() -> Vec<(String, ColorGraph)> {
    let mut out: Vec<(String, ColorGraph)> =
        catalog::solids().iter().map(|s| (s.name.to_string(), closure_of(&s.graph()))).collect();
    for row in search_rows() {
        out.push((row.spec(), inv(&catalog_group(&row.spec()).unwrap())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc);
    for i in 0..100 {
        out.push((format!("random-{i}"), closure_of(&random_graph(&mut rng, 9))));
    }
    out
}

fn tensor_identities(x: &ColorGraph) -> std::result::Result<(), String> {
    let t = tensor(x).map_err(|e| e.to_string())?;
    let k = x.rank();
    for r in 0..k {
        for s in 0..k {
            for u in 0..k {
                let lhs = x.size(u) * t.get(r, s, u);
                let rhs = x.size(r) * t.get(s, x.converse(u), x.converse(r));
                if lhs != rhs {
                    return Err(format!("triangle identity fails at ({r},{s},{u})"));
                }
            }
        }
    }
    for u in 0..k {
        let (a, b) = x.rep(u);
        for s in 0..k {
            let sum: usize = (0..k).map(|r| t.get(r, s, u)).sum();
            let direct = (0..x.n()).filter(|&g| x.color(g, b) == s).count();
            if sum != direct {
                return Err(format!("row sum fails at ({s},{u}) for ({a},{b})"));
            }
        }
    }
    Ok(())
}

fn structure_checks(x: &ColorGraph) -> std::result::Result<(), String> {
    let t = tensor(x).unwrap();
    let ps = if x.rank() <= ccwl::limits::PARABOLIC_RANK_CUTOFF { parabolics(x) } else { parabolics_single_generated(x) }
        .map_err(|e| e.to_string())?;
    for p in ps.iter().take(12) {
        let q = quotient(x, p).map_err(|e| e.to_string())?;
        if !validate(&q.quotient).coherent {
            return Err(format!("quotient by {:?} not coherent", p.colors));
        }
        for class in p.classes.iter().take(3) {
            let r = restriction(x, class).map_err(|e| e.to_string())?;
            if !validate(&r).coherent {
                return Err("restriction not coherent".into());
            }
        }
    }
    for f in x.fibers() {
        if !validate(&restriction(x, f).map_err(|e| e.to_string())?).coherent {
            return Err("fiber restriction not coherent".into());
        }
    }
    if x.rank() <= 40 {
        let phi = algebraic_aut_group(x).map_err(|e| e.to_string())?;
        let full = algebraic_fusion(x, &phi.elements).map_err(|e| e.to_string())?;
        if full.rank() > x.rank() {
            return Err("fusion increased rank".into());
        }
        for g in &phi.generators {
            let mut cyc = vec![(0..x.rank()).collect::<Vec<_>>()];
            loop {
                let next: Vec<usize> = cyc.last().unwrap().iter().map(|&c| g[c]).collect();
                if next == cyc[0] {
                    break;
                }
                cyc.push(next);
            }
            let part = algebraic_fusion(x, &cyc).map_err(|e| e.to_string())?;
            if part.rank() < full.rank() || part.rank() > x.rank() || !part.refines(&full) {
                return Err("fusion not monotone".into());
            }
        }
    }
    let _ = t;
    Ok(())
}

fn wl_properties(rng: &mut ChaCha8Rng, g: &SimpleGraph) -> std::result::Result<(), String> {
    let x = closure_of(g);
    if !wl_close_rainbow(&x).same_partition(&x) {
        return Err("closure not idempotent".into());
    }
    let n = g.n();
    for _ in 0..20 {
        let mut f: Vec<usize> = (0..n).collect();
        f.shuffle(rng);
        let e: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (f[a], f[b])).collect();
        let y = wl_close_graph(n, &e).unwrap();
        if !y.same_partition(&x.relabel(&f).unwrap()) {
            return Err("closure not equivariant".into());
        }
    }
    Ok(())
}

fn property_suites() -> Check {
    let corpus = corpus();
    for (name, x) in &corpus {
        let v = validate(x);
        ensure(v.coherent, || format!("{name}: {:?}", v.violation))?;
        tensor_identities(x).map_err(|e| format!("{name}: {e}"))?;
        structure_checks(x).map_err(|e| format!("{name}: {e}"))?;
    }
    for s in catalog::solids() {
        let (x, _, rep) = hinted(s.name);
        let t = tensor(&x).unwrap();
        for (r, u, w, c) in t.iter() {
            ensure(t.is_thin(w) || c <= 2, || format!("{}: c({r},{u};{w}) = {c}", s.name))?;
        }
        let ctx = RhoContext::new(&x, &rep).map_err(|e| format!("{}: {e}", s.name))?;
        for w in (0..x.rank()).filter(|&w| !rep.is_antipodal(w)) {
            for a in 0..rep.w.len() {
                for b in 0..rep.w.len() {
                    ensure(ctx.count(a, b, w) <= 2, || format!("{}: Gram count above 2", s.name))?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d);
    for s in catalog::solids() {
        wl_properties(&mut rng, &s.graph()).map_err(|e| format!("{}: {e}", s.name))?;
    }
    let mut gen = ChaCha8Rng::seed_from_u64(0xacc);
    for i in 0..100 {
        let g = random_graph(&mut gen, 9);
        wl_properties(&mut rng, &g).map_err(|e| format!("random-{i}: {e}"))?;
    }
    Ok(format!("{} configurations", corpus.len()))
}

/// Colors inside the intersection of compositions of Gram relations, from
/// explicit boolean matrices.
fn s_delta_direct(x: &ColorGraph, rep: &SphericalRep, delta: &[usize], a: usize, b: usize, rule: SetRule) -> Vec<usize> {
    let n = x.n();
    let k = x.rank();
    let wr = |p: usize, q: usize| rep.w_of_color[x.color(p, q)];
    let mut inter = vec![true; n * n];
    if delta.len() == 2 {
        return vec![x.color(a, b)];
    }
    for &d in delta.iter().filter(|&&d| d != a && d != b) {
        let (u, v) = (wr(a, d), wr(d, b));
        for p in 0..n {
            for q in 0..n {
                if inter[p * n + q] {
                    inter[p * n + q] = (0..n).any(|g| wr(p, g) == u && wr(g, q) == v);
                }
            }
        }
    }
    (0..k)
        .filter(|&t| x.pairs_of(t).iter().all(|&(p, q)| inter[p * n + q]))
        .filter(|&t| rule == SetRule::Literal || (!x.is_reflexive(t) && rep.w_of_color[t] == wr(a, b)))
        .collect()
}

fn oracle_equivalence() -> Check {
    let names: Vec<&str> = catalog::solids().iter().filter(|s| s.graph().n() <= 20).map(|s| s.name).collect();
    let prepared: Vec<_> = names.iter().map(|n| hinted(n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
    let mut checked = 0;
    for q in 0..200 {
        let (x, _, rep) = &prepared[q % prepared.len()];
        let n = x.n();
        let size = rng.gen_range(2..=n.min(6));
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(&mut rng);
        let delta = &pts[..size];
        let (a, b) = (delta[0], delta[1]);
        for rule in [SetRule::SameGram, SetRule::Literal] {
            let ctx = RhoContext::with_rule(x, rep, rule).unwrap();
            let fast = ctx.s_delta(delta, a, b).unwrap();
            let slow = s_delta_direct(x, rep, delta, a, b, rule);
            ensure(fast == slow, || format!("query {q} {rule:?}: {fast:?} vs {slow:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} queries over {} solids", names.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("closure ranks of the solids", wl_ranks),
        ("Gram class counts and eigenvalues", rho_ranks),
        ("faithfulness", faithfulness),
        ("rigid colors with replayable certificates", rigidity),
        ("schurity", schurity),
        ("orbit configuration ranks", inv_ranks),
        ("candidate search counts", search_counts),
        ("property suites", property_suites),
        ("indistinguishable-set oracle", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(note) => println!("PASS {} {name} ({note}; {secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
