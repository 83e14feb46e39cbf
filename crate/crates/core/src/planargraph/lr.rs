//! Left-right planarity test: DFS orientation, nesting order, then a
//! conflict-pair stack over return edges.

use super::SimpleGraph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr {
    /// Incident `(neighbor, edge id)` per vertex.
    inc: Vec<Vec<(usize, usize)>>,
    oriented: Vec<bool>,
    source: Vec<usize>,
    target: Vec<usize>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    out: Vec<Vec<usize>>,
    refs: Vec<usize>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

pub(super) fn lr_planar(g: &SimpleGraph) -> bool {
    let edges = g.edges();
    let m = edges.len();
    let mut inc = vec![Vec::new(); g.n()];
    for (id, &(a, b)) in edges.iter().enumerate() {
        inc[a].push((b, id));
        inc[b].push((a, id));
    }
    let mut s = Lr {
        inc,
        oriented: vec![false; m],
        source: vec![NONE; m],
        target: vec![NONE; m],
        height: vec![NONE; g.n()],
        parent_edge: vec![NONE; g.n()],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting: vec![0; m],
        out: vec![Vec::new(); g.n()],
        refs: vec![NONE; m],
        lowpt_edge: vec![NONE; m],
        stack_bottom: vec![0; m],
        stack: Vec::new(),
    };
    let mut roots = Vec::new();
    for v in 0..g.n() {
        if s.height[v] == NONE {
            s.height[v] = 0;
            roots.push(v);
            s.orient(v);
        }
    }
    for v in 0..g.n() {
        let nesting = &s.nesting;
        s.out[v].sort_by_key(|&e| nesting[e]);
    }
    roots.into_iter().all(|r| s.test(r))
}

impl Lr {
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for k in 0..self.inc[v].len() {
            let (w, id) = self.inc[v][k];
            if self.oriented[id] {
                continue;
            }
            self.oriented[id] = true;
            self.source[id] = v;
            self.target[id] = w;
            self.out[v].push(id);
            self.lowpt[id] = self.height[v];
            self.lowpt2[id] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = id;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[id] = self.height[w];
            }
            self.nesting[id] = 2 * self.lowpt[id] + usize::from(self.lowpt2[id] < self.height[v]);
            if e != NONE {
                if self.lowpt[id] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[id]);
                    self.lowpt[e] = self.lowpt[id];
                } else if self.lowpt[id] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[id]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[id]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn set_ref(&mut self, e: usize, to: usize) {
        if e != NONE {
            self.refs[e] = to;
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let first = self.out[v].first().copied();
        for k in 0..self.out[v].len() {
            let ei = self.out[v][k];
            let w = self.target[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == ei {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair { left: Interval::EMPTY, right: Interval { low: ei, high: ei } });
            }
            if self.lowpt[ei] < self.height[v] {
                if Some(ei) == first {
                    if e != NONE {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    }
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair { left: Interval::EMPTY, right: Interval::EMPTY };
        loop {
            let Some(mut q) = self.stack.pop() else { return false };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                let to = self.lowpt_edge[e];
                self.set_ref(q.right.low, to);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("nonempty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.source[e];
        let u_height = self.height[u];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != u_height {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.target[p.left.high] == u {
                p.left.high = self.refs[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.refs[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.target[p.right.high] == u {
                p.right.high = self.refs[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.refs[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < u_height {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.refs[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) { hl } else { hr };
            }
        }
    }
}
