//! Path-addition embedding (Demoucron, Malgrange, Pertuiset) of each
//! biconnected block, and an independent check of the resulting faces.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::SimpleGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockEmbedding {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Oriented facial cycles; empty for a bridge.
    pub faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub blocks: Vec<BlockEmbedding>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Edge sets of the biconnected components.
fn blocks(g: &SimpleGraph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a SimpleGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St, v: usize, parent: usize) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for &w in s.g.neighbors(v) {
            if s.disc[w] == 0 {
                s.stack.push(key(v, w));
                dfs(s, w, v);
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut comp = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        comp.push(e);
                        if e == key(v, w) {
                            break;
                        }
                    }
                    s.out.push(comp);
                }
            } else if w != parent && s.disc[w] < s.disc[v] {
                s.stack.push(key(v, w));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let mut s = St { g, disc: vec![0; g.n()], low: vec![0; g.n()], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..g.n() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

fn find_cycle(adj: &HashMap<usize, Vec<usize>>, start: usize) -> Vec<usize> {
    // BFS tree plus one non-tree edge closes a cycle through their common ancestor
    let mut parent: HashMap<usize, usize> = HashMap::from([(start, usize::MAX)]);
    let mut queue = VecDeque::from([start]);
    let mut extra = None;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if !parent.contains_key(&w) {
                parent.insert(w, v);
                queue.push_back(w);
            } else if parent[&v] != w && extra.is_none() {
                extra = Some((v, w));
            }
        }
    }
    let Some((u, w)) = extra else { return Vec::new() };
    let to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[&x] != usize::MAX {
            x = parent[&x];
            path.push(x);
        }
        path
    };
    let (mut pu, mut pw) = (to_root(u), to_root(w));
    let mut lca = start;
    while let (Some(&a), Some(&b)) = (pu.last(), pw.last()) {
        if a != b {
            break;
        }
        lca = a;
        pu.pop();
        pw.pop();
    }
    pu.push(lca);
    pu.extend(pw.into_iter().rev());
    pu
}

struct Fragment {
    edges: Vec<(usize, usize)>,
    attachments: BTreeSet<usize>,
    interior: HashSet<usize>,
}

fn embed_block(edges: &[(usize, usize)]) -> Option<BlockEmbedding> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    if edges.len() == 1 {
        return Some(BlockEmbedding { vertices: verts, edges: edges.to_vec(), faces: Vec::new() });
    }
    let mut adj: HashMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
    for &(a, b) in edges {
        adj.get_mut(&a).expect("vertex").push(b);
        adj.get_mut(&b).expect("vertex").push(a);
    }
    for l in adj.values_mut() {
        l.sort_unstable();
    }
    let cycle = find_cycle(&adj, verts[0]);
    let mut in_h: HashSet<usize> = cycle.iter().copied().collect();
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        h_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];
    while h_edges.len() < edges.len() {
        let frags = fragments(edges, &adj, &in_h, &h_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (i, f) in frags.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| f.attachments.iter().all(|a| face.contains(a)))
                .map(|(k, _)| k)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment");
        let path = fragment_path(&frags[fi], &adj);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        in_h.extend(path.iter().copied());
    }
    Some(BlockEmbedding { vertices: verts, edges: edges.to_vec(), faces })
}

fn fragments(
    edges: &[(usize, usize)],
    adj: &HashMap<usize, Vec<usize>>,
    in_h: &HashSet<usize>,
    h_edges: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(a, b) in edges {
        if in_h.contains(&a) && in_h.contains(&b) && !h_edges.contains(&key(a, b)) {
            out.push(Fragment {
                edges: vec![key(a, b)],
                attachments: BTreeSet::from([a, b]),
                interior: HashSet::new(),
            });
        }
    }
    let mut seen: HashSet<usize> = HashSet::new();
    let mut outside: Vec<usize> = adj.keys().copied().filter(|v| !in_h.contains(v)).collect();
    outside.sort_unstable();
    for s in outside {
        if seen.contains(&s) {
            continue;
        }
        let mut interior = HashSet::from([s]);
        seen.insert(s);
        let mut queue = VecDeque::from([s]);
        let mut fedges = BTreeSet::new();
        let mut attachments = BTreeSet::new();
        while let Some(v) = queue.pop_front() {
            for &w in &adj[&v] {
                fedges.insert(key(v, w));
                if in_h.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    interior.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { edges: fedges.into_iter().collect(), attachments, interior });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(f: &Fragment, adj: &HashMap<usize, Vec<usize>>) -> Vec<usize> {
    if f.interior.is_empty() {
        let (a, b) = f.edges[0];
        return vec![a, b];
    }
    let a = *f.attachments.iter().next().expect("attachments");
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &w in &adj[&a] {
        if f.interior.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if f.interior.contains(&w) {
                if !prev.contains_key(&w) {
                    prev.insert(w, v);
                    queue.push_back(w);
                }
            } else if w != a && f.attachments.contains(&w) {
                let mut path = vec![w, v];
                let mut x = v;
                while prev[&x] != a {
                    x = prev[&x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().expect("path");
    let i = face.iter().position(|&v| v == a).expect("a on face");
    let j = face.iter().position(|&v| v == b).expect("b on face");
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut x = i;
    loop {
        f1.push(face[x]);
        if x == j {
            break;
        }
        x = (x + 1) % k;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut x = j;
    loop {
        f2.push(face[x]);
        if x == i {
            break;
        }
        x = (x + 1) % k;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

/// A planar embedding of every block, or `None` when some block is not planar.
pub fn embed(g: &SimpleGraph) -> Option<Embedding> {
    let mut out = Vec::new();
    for b in blocks(g) {
        out.push(embed_block(&b)?);
    }
    Some(Embedding { blocks: out })
}

/// Checks that the blocks partition the edges and that every block's faces
/// form a rotation system of genus zero.
pub fn verify_embedding(g: &SimpleGraph, emb: &Embedding) -> bool {
    let mut all: Vec<(usize, usize)> = emb.blocks.iter().flat_map(|b| b.edges.iter().map(|&(a, c)| key(a, c))).collect();
    all.sort_unstable();
    if all != g.edges() {
        return false;
    }
    emb.blocks.iter().all(verify_block)
}

fn verify_block(b: &BlockEmbedding) -> bool {
    let m = b.edges.len();
    if m == 1 {
        return b.faces.is_empty();
    }
    let edge_set: HashSet<(usize, usize)> = b.edges.iter().map(|&(x, y)| key(x, y)).collect();
    let mut darts: HashSet<(usize, usize)> = HashSet::new();
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for f in &b.faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            if !edge_set.contains(&key(u, v)) || !darts.insert((u, v)) {
                return false;
            }
            // rotation at v sends u to w
            succ.insert((v, u), w);
        }
    }
    if darts.len() != 2 * m {
        return false;
    }
    let mut nbrs: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(x, y) in &edge_set {
        nbrs.entry(x).or_default().push(y);
        nbrs.entry(y).or_default().push(x);
    }
    for (&v, list) in &nbrs {
        let start = list[0];
        let mut u = start;
        let mut steps = 0;
        loop {
            let Some(&w) = succ.get(&(v, u)) else { return false };
            u = w;
            steps += 1;
            if u == start || steps > list.len() {
                break;
            }
        }
        if steps != list.len() {
            return false;
        }
    }
    b.faces.len() + b.vertices.len() == m + 2
}
