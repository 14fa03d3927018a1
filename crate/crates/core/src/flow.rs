//! Small-capacity augmenting-path max-flow over a static CSR network.
//!
//! Arcs leaving a node are stored sorted by head, so breadth-first search
//! visits lower labels first and every query is deterministic. Capacities
//! touched by a query are restored lazily by the next one.

use std::collections::VecDeque;

pub(crate) struct NetworkBuilder {
    nodes: usize,
    // (tail, head, capacity, reverse capacity)
    pairs: Vec<(u32, u32, i32, i32)>,
}

impl NetworkBuilder {
    #[cfg(test)]
    pub(crate) fn new(nodes: usize) -> Self {
        NetworkBuilder { nodes, pairs: Vec::new() }
    }

    pub(crate) fn with_capacity(nodes: usize, pairs: usize) -> Self {
        NetworkBuilder { nodes, pairs: Vec::with_capacity(pairs) }
    }

    /// Adds arc `tail -> head` with capacity `cap` whose paired reverse arc
    /// has capacity `rev_cap` (0 for a directed arc, `cap` for an undirected edge).
    pub(crate) fn add(&mut self, tail: usize, head: usize, cap: i32, rev_cap: i32) {
        self.pairs.push((tail as u32, head as u32, cap, rev_cap));
    }

    pub(crate) fn build(self) -> FlowNetwork {
        let nodes = self.nodes;
        // Each pair contributes two half-arcs: (tail, head, cap, pair, side).
        let mut half: Vec<(u32, u32, i32, u32, u8)> = Vec::with_capacity(self.pairs.len() * 2);
        for (id, &(t, h, c, rc)) in self.pairs.iter().enumerate() {
            half.push((t, h, c, id as u32, 0));
            half.push((h, t, rc, id as u32, 1));
        }
        half.sort_unstable_by_key(|&(t, h, _, id, side)| (t, h, id, side));

        let mut start = vec![0usize; nodes + 1];
        for &(t, ..) in &half {
            start[t as usize + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let mut pos_of = vec![[0u32; 2]; self.pairs.len()];
        let mut head = Vec::with_capacity(half.len());
        let mut cap = Vec::with_capacity(half.len());
        for (pos, &(_, h, c, id, side)) in half.iter().enumerate() {
            pos_of[id as usize][side as usize] = pos as u32;
            head.push(h);
            cap.push(c);
        }
        let rev = half
            .iter()
            .map(|&(.., id, side)| pos_of[id as usize][1 - side as usize])
            .collect();
        FlowNetwork {
            start,
            head,
            rev,
            orig: cap.clone(),
            cap,
            touched: Vec::new(),
            parent: vec![u32::MAX; nodes],
            stamp: vec![0; nodes],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }
}

pub(crate) struct FlowNetwork {
    start: Vec<usize>,
    head: Vec<u32>,
    rev: Vec<u32>,
    cap: Vec<i32>,
    orig: Vec<i32>,
    touched: Vec<u32>,
    parent: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<u32>,
}

impl FlowNetwork {
    pub(crate) fn reset(&mut self) {
        for &e in &self.touched {
            self.cap[e as usize] = self.orig[e as usize];
        }
        self.touched.clear();
    }

    #[inline]
    pub(crate) fn arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.start[v]..self.start[v + 1]
    }

    #[inline]
    pub(crate) fn head(&self, e: usize) -> usize {
        self.head[e] as usize
    }

    /// Flow currently carried by arc `e` (negative when the paired arc carries it).
    #[inline]
    pub(crate) fn flow(&self, e: usize) -> i32 {
        // Read from the paired arc so that disabled arcs carry no flow.
        let r = self.rev[e] as usize;
        self.cap[r] - self.orig[r]
    }

    /// Capacity of arc `e` before any flow was pushed.
    #[inline]
    pub(crate) fn original(&self, e: usize) -> i32 {
        self.orig[e]
    }

    pub(crate) fn find_arc(&self, tail: usize, head: usize) -> Option<usize> {
        let range = self.arcs(tail);
        let slice = &self.head[range.clone()];
        let i = slice.partition_point(|&h| (h as usize) < head);
        (i < slice.len() && slice[i] as usize == head).then_some(range.start + i)
    }

    /// Sets an arc's residual capacity to zero for the current query.
    pub(crate) fn disable(&mut self, e: usize) {
        self.touched.push(e as u32);
        self.cap[e] = 0;
    }

    #[inline]
    fn push(&mut self, e: usize, amount: i32) {
        let r = self.rev[e] as usize;
        self.cap[e] -= amount;
        self.cap[r] += amount;
        self.touched.push(e as u32);
        self.touched.push(r as u32);
    }

    /// Pushes one unit along the given arcs if all have residual capacity.
    pub(crate) fn try_push_path(&mut self, arcs: &[usize]) -> bool {
        if arcs.iter().all(|&e| self.cap[e] > 0) {
            for &e in arcs {
                self.push(e, 1);
            }
            true
        } else {
            false
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Finds one shortest augmenting path and pushes one unit along it.
    fn augment_once(&mut self, s: usize, t: usize) -> bool {
        let epoch = self.next_epoch();
        self.queue.clear();
        self.stamp[s] = epoch;
        self.queue.push_back(s as u32);
        let mut found = false;
        'bfs: while let Some(v) = self.queue.pop_front() {
            let v = v as usize;
            for e in self.start[v]..self.start[v + 1] {
                if self.cap[e] <= 0 {
                    continue;
                }
                let h = self.head[e] as usize;
                if self.stamp[h] == epoch {
                    continue;
                }
                self.stamp[h] = epoch;
                self.parent[h] = e as u32;
                if h == t {
                    found = true;
                    break 'bfs;
                }
                self.queue.push_back(h as u32);
            }
        }
        if !found {
            return false;
        }
        let mut v = t;
        while v != s {
            let e = self.parent[v] as usize;
            self.push(e, 1);
            v = self.head[self.rev[e] as usize] as usize;
        }
        true
    }

    /// Augments on top of the current flow until `limit` extra units have
    /// been pushed or no augmenting path remains. Returns the units pushed.
    pub(crate) fn augment(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut pushed = 0;
        while pushed < limit && self.augment_once(s, t) {
            pushed += 1;
        }
        pushed
    }

    /// Residual reachability from `s` under the current flow.
    pub(crate) fn reachable(&mut self, s: usize) -> Vec<bool> {
        let nodes = self.start.len() - 1;
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            for e in self.arcs(v) {
                let h = self.head[e] as usize;
                if self.cap[e] > 0 && !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        seen
    }
}
