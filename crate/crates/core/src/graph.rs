//! Labeled inverse graphs with dense vertex ids, plus the folding engine.
//!
//! Direction `d < rank` is the positive edge labeled by generator `d`;
//! direction `rank + d` is its formal inverse. Every stored half-edge has its
//! mirror stored at the other endpoint.

use std::collections::VecDeque;

use crate::words::{Letter, Word};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Graph {
    pub rank: usize,
    pub origin: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn new(rank: usize, vertices: usize) -> Self {
        Graph {
            rank,
            origin: 0,
            adj: vec![NONE; vertices * 2 * rank],
        }
    }

    #[inline]
    pub fn dirs(&self) -> usize {
        2 * self.rank
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.adj.len() / self.dirs().max(1)
    }

    #[inline]
    pub fn inv_dir(&self, d: usize) -> usize {
        if d < self.rank {
            d + self.rank
        } else {
            d - self.rank
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        let v = self.len();
        self.adj.extend(std::iter::repeat_n(NONE, self.dirs()));
        v
    }

    #[inline]
    pub fn target(&self, v: usize, d: usize) -> Option<usize> {
        let t = self.adj[v * self.dirs() + d];
        (t != NONE).then_some(t as usize)
    }

    /// Adds the edge `u --d--> v` and its mirror. Returns false, leaving the
    /// graph untouched, if either half-edge slot is already taken by a
    /// different edge.
    pub fn link(&mut self, u: usize, d: usize, v: usize) -> bool {
        let e = self.inv_dir(d);
        match (self.target(u, d), self.target(v, e)) {
            (None, None) => {
                let k = self.dirs();
                self.adj[u * k + d] = v as u32;
                self.adj[v * k + e] = u as u32;
                true
            }
            (Some(x), Some(y)) => x == v && y == u,
            _ => false,
        }
    }

    pub fn unlink(&mut self, u: usize, d: usize) {
        if let Some(v) = self.target(u, d) {
            let k = self.dirs();
            let e = self.inv_dir(d);
            self.adj[u * k + d] = NONE;
            self.adj[v * k + e] = NONE;
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.dirs())
            .filter(|&d| self.target(v, d).is_some())
            .count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len())
            .map(|v| {
                (0..self.rank)
                    .filter(|&d| self.target(v, d).is_some())
                    .count()
            })
            .sum()
    }

    /// Follows `letters` from `start`, returning the end vertex if the whole
    /// word can be read.
    pub fn read(&self, start: usize, letters: &[Letter]) -> Option<usize> {
        let mut v = start;
        for l in letters {
            v = self.target(v, l.index(self.rank))?;
        }
        Some(v)
    }

    /// Removes non-origin vertices of degree at most one until none remain,
    /// then renumbers the survivors preserving their relative order.
    pub fn trim(&self) -> Graph {
        let mut g = self.clone();
        let mut alive = vec![true; g.len()];
        let mut queue: Vec<usize> = (0..g.len()).filter(|&v| g.degree(v) <= 1).collect();
        while let Some(v) = queue.pop() {
            if !alive[v] || v == g.origin || g.degree(v) > 1 {
                continue;
            }
            alive[v] = false;
            for d in 0..g.dirs() {
                if let Some(w) = g.target(v, d) {
                    g.unlink(v, d);
                    if g.degree(w) <= 1 {
                        queue.push(w);
                    }
                }
            }
        }
        g.retain(&alive)
    }

    /// Induced subgraph on the vertices flagged in `keep`, renumbered in
    /// increasing order. The origin must be kept.
    pub fn retain(&self, keep: &[bool]) -> Graph {
        let mut map = vec![NONE; self.len()];
        let mut n = 0;
        for v in 0..self.len() {
            if keep[v] {
                map[v] = n as u32;
                n += 1;
            }
        }
        let mut out = Graph::new(self.rank, n);
        out.origin = map[self.origin] as usize;
        for v in 0..self.len() {
            if !keep[v] {
                continue;
            }
            for d in 0..self.dirs() {
                if let Some(w) = self.target(v, d) {
                    if keep[w] {
                        let k = out.dirs();
                        out.adj[map[v] as usize * k + d] = map[w];
                    }
                }
            }
        }
        out
    }

    /// Vertices reachable from `root`, in breadth-first order with neighbours
    /// visited in direction order.
    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for d in 0..self.dirs() {
                if let Some(w) = self.target(v, d) {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        order
    }

    /// Transition table of the vertices in `order`, renumbered by position.
    pub fn code(&self, order: &[usize]) -> Vec<u32> {
        let mut pos = vec![NONE; self.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i as u32;
        }
        let mut code = Vec::with_capacity(order.len() * self.dirs() + 1);
        code.push(order.len() as u32);
        for &v in order {
            for d in 0..self.dirs() {
                code.push(match self.target(v, d) {
                    Some(w) => pos[w],
                    None => NONE,
                });
            }
        }
        code
    }

    /// Renumbers the vertices so that `order[i]` becomes vertex `i`. Vertices
    /// not listed are dropped.
    pub fn renumber(&self, order: &[usize]) -> Graph {
        let mut pos = vec![NONE; self.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i as u32;
        }
        let mut out = Graph::new(self.rank, order.len());
        out.origin = pos[self.origin] as usize;
        for (i, &v) in order.iter().enumerate() {
            for d in 0..self.dirs() {
                if let Some(w) = self.target(v, d) {
                    if pos[w] != NONE {
                        let k = out.dirs();
                        out.adj[i * k + d] = pos[w];
                    }
                }
            }
        }
        out
    }

    /// Canonical relabeling: breadth-first from the origin, unreachable
    /// vertices dropped. The origin becomes vertex 0.
    pub fn canonical(&self) -> Graph {
        self.renumber(&self.bfs_order(self.origin))
    }

    /// Undirected multi-source distances; `usize::MAX` when unreachable.
    pub fn distances(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for d in 0..self.dirs() {
                if let Some(w) = self.target(v, d) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// Breadth-first tree from `root`: for each reached vertex, the label of
    /// a shortest path from `root`.
    pub fn geodesics(&self, root: usize) -> Vec<Option<Word>> {
        let mut labels: Vec<Option<Word>> = vec![None; self.len()];
        labels[root] = Some(Word::identity(self.rank));
        for v in self.bfs_order(root) {
            let here = labels[v].clone().expect("visited in order");
            for d in 0..self.dirs() {
                if let Some(w) = self.target(v, d) {
                    if labels[w].is_none() {
                        let step =
                            Word::reduce_unchecked([Letter::from_index(d, self.rank)], self.rank);
                        labels[w] = Some(here.mul_unchecked(&step));
                    }
                }
            }
        }
        labels
    }

    /// True when `pattern`, read from `pattern_root`, maps injectively into
    /// this graph with `pattern_root` sent to `root`.
    pub fn embeds(&self, root: usize, pattern: &Graph, pattern_root: usize) -> bool {
        let mut image = vec![usize::MAX; pattern.len()];
        let mut used = vec![false; self.len()];
        image[pattern_root] = root;
        used[root] = true;
        for v in pattern.bfs_order(pattern_root) {
            for d in 0..pattern.dirs() {
                let Some(w) = pattern.target(v, d) else {
                    continue;
                };
                let Some(x) = self.target(image[v], d) else {
                    return false;
                };
                if image[w] == usize::MAX {
                    if used[x] {
                        return false;
                    }
                    image[w] = x;
                    used[x] = true;
                } else if image[w] != x {
                    return false;
                }
            }
        }
        true
    }

    /// Connected-component id of every vertex, numbered by least member.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.len()];
        let mut count = 0;
        for v in 0..self.len() {
            if comp[v] != usize::MAX {
                continue;
            }
            for w in self.bfs_order(v) {
                comp[w] = count;
            }
            count += 1;
        }
        (comp, count)
    }
}

/// Incremental folding with a union-find over vertices.
pub(crate) struct Folder {
    rank: usize,
    parent: Vec<usize>,
    adj: Vec<u32>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    pub fn new(rank: usize) -> Self {
        let mut f = Folder {
            rank,
            parent: Vec::new(),
            adj: Vec::new(),
            pending: Vec::new(),
        };
        f.add_vertex();
        f
    }

    pub fn add_vertex(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.adj.extend(std::iter::repeat_n(NONE, 2 * self.rank));
        v
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn slot(&self, v: usize, d: usize) -> usize {
        v * 2 * self.rank + d
    }

    fn set_half(&mut self, u: usize, d: usize, v: usize) {
        let s = self.slot(u, d);
        if self.adj[s] == NONE {
            self.adj[s] = v as u32;
        } else {
            let w = self.adj[s] as usize;
            if self.find(w) != self.find(v) {
                self.pending.push((w, v));
            }
        }
    }

    pub fn add_edge(&mut self, u: usize, d: usize, v: usize) {
        let u = self.find(u);
        let v = self.find(v);
        let e = if d < self.rank {
            d + self.rank
        } else {
            d - self.rank
        };
        self.set_half(u, d, v);
        self.set_half(v, e, u);
        self.settle();
    }

    /// Adds a closed path at `base` spelling `letters`.
    pub fn add_loop(&mut self, base: usize, letters: &[Letter]) {
        let mut v = base;
        for (i, l) in letters.iter().enumerate() {
            let w = if i + 1 == letters.len() {
                base
            } else {
                self.add_vertex()
            };
            self.add_edge(v, l.index(self.rank), w);
            v = w;
        }
    }

    fn settle(&mut self) {
        while let Some((x, y)) = self.pending.pop() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            let (keep, gone) = if x < y { (x, y) } else { (y, x) };
            self.parent[gone] = keep;
            for d in 0..2 * self.rank {
                let s = self.slot(gone, d);
                let t = self.adj[s];
                if t != NONE {
                    self.adj[s] = NONE;
                    self.set_half(keep, d, t as usize);
                }
            }
        }
    }

    /// The folded graph on the surviving classes; vertex 0 is the origin.
    pub fn finish(self) -> Graph {
        self.finish_with_map().0
    }

    /// Like [`Folder::finish`], also returning where each added vertex went.
    pub fn finish_with_map(mut self) -> (Graph, Vec<usize>) {
        let n = self.parent.len();
        let reps: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut index = vec![NONE; n];
        let mut count = 0;
        for v in 0..n {
            if reps[v] == v {
                index[v] = count as u32;
                count += 1;
            }
        }
        let mut g = Graph::new(self.rank, count);
        g.origin = index[reps[0]] as usize;
        for v in 0..n {
            if reps[v] != v {
                continue;
            }
            for d in 0..2 * self.rank {
                let t = self.adj[self.slot(v, d)];
                if t != NONE {
                    let w = index[reps[t as usize]] as usize;
                    let k = g.dirs();
                    g.adj[index[v] as usize * k + d] = w as u32;
                }
            }
        }
        let map = reps.iter().map(|&r| index[r] as usize).collect();
        (g, map)
    }
}
