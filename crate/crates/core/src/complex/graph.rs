use std::collections::VecDeque;

use super::Complex;

pub const UNREACHABLE: usize = usize::MAX;

impl Complex {
    /// BFS distances in the 1-skeleton; [`UNREACHABLE`] where disconnected.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        self.distances_avoiding(src, None)
    }

    /// BFS distances with the masked edges deleted.
    pub fn distances_avoiding(&self, src: usize, removed: Option<&[bool]>) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &(e, u) in self.neighbors(v) {
                if removed.is_some_and(|m| m[e]) {
                    continue;
                }
                if dist[u] == UNREACHABLE {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn distance(&self, p: usize, q: usize) -> usize {
        self.distances_from(p)[q]
    }

    /// The shortest `p`–`q` path whose edge-id sequence is lexicographically
    /// least. `dist_to_q` must be [`Complex::distances_from`]`(q)`.
    pub fn lex_geodesic_with(&self, p: usize, dist_to_q: &[usize]) -> Vec<usize> {
        let mut path = Vec::with_capacity(dist_to_q[p]);
        let mut v = p;
        while dist_to_q[v] > 0 {
            let &(e, u) = self
                .neighbors(v)
                .iter()
                .find(|&&(_, u)| dist_to_q[u] + 1 == dist_to_q[v])
                .expect("a BFS predecessor exists");
            path.push(e);
            v = u;
        }
        path
    }

    pub fn lex_geodesic(&self, p: usize, q: usize) -> Vec<usize> {
        self.lex_geodesic_with(p, &self.distances_from(q))
    }

    /// Vertices visited by an edge path starting at `p`.
    pub fn path_vertices(&self, p: usize, path: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(path.len() + 1);
        out.push(p);
        let mut v = p;
        for &e in path {
            v = self.other_end(e, v);
            out.push(v);
        }
        out
    }

    /// Connected-component label per vertex after deleting masked edges,
    /// labels numbered in order of least vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![UNREACHABLE; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != UNREACHABLE {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(e, u) in self.neighbors(v) {
                    if !removed[e] && label[u] == UNREACHABLE {
                        label[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}
