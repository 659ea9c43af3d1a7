//! Ordered partitions and equitable refinement over a coloured relation
//! matrix.
//!
//! A cell is identified by the position of its first element in `order`.
//! Refinement splits cells by how many relations of each kind their
//! members have into a splitter cell. Fragments are placed in ascending
//! count order, so the result depends only on the structure and never on
//! vertex ids. Two partitions related by an automorphism therefore refine
//! identically, and the event trace of one can be checked against the
//! other.

/// Relation codes stored in the matrix: 0 = same vertex, then out/in
/// crossed with white/black arc label.
pub(crate) const REL_KINDS: usize = 5;
const INCREMENT: [u64; REL_KINDS] = [0, 1, 1 << 16, 1 << 32, 1 << 48];

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    order: Vec<u32>,
    pos: Vec<u32>,
    cell: Vec<u32>,
    len: Vec<u32>,
    cells: usize,
}

pub(crate) enum Trace<'a> {
    Record(&'a mut Vec<u64>),
    Check { expected: &'a [u64], at: usize },
    Ignore,
}

impl Trace<'_> {
    fn push(&mut self, event: u64) -> bool {
        match self {
            Trace::Record(v) => {
                v.push(event);
                true
            }
            Trace::Check { expected, at } => {
                let ok = expected.get(*at) == Some(&event);
                *at += 1;
                ok
            }
            Trace::Ignore => true,
        }
    }

    fn finish(&self) -> bool {
        match self {
            Trace::Check { expected, at } => *at == expected.len(),
            _ => true,
        }
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(7) ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

impl Partition {
    /// Builds the partition whose cells are the given groups, in order.
    /// Groups must be disjoint, non-empty and cover `0..n`.
    pub(crate) fn from_groups(n: usize, groups: &[Vec<usize>]) -> Self {
        let mut p = Partition {
            order: Vec::with_capacity(n),
            pos: vec![0; n],
            cell: vec![0; n],
            len: vec![0; n],
            cells: 0,
        };
        for g in groups.iter().filter(|g| !g.is_empty()) {
            let start = p.order.len() as u32;
            for &v in g {
                p.pos[v] = p.order.len() as u32;
                p.cell[v] = start;
                p.order.push(v as u32);
            }
            p.len[start as usize] = g.len() as u32;
            p.cells += 1;
        }
        debug_assert_eq!(p.order.len(), n);
        p
    }

    pub(crate) fn n(&self) -> usize {
        self.order.len()
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.order.len()
    }

    pub(crate) fn cell_start(&self, v: usize) -> usize {
        self.cell[v] as usize
    }

    pub(crate) fn cell_members(&self, start: usize) -> impl Iterator<Item = usize> + '_ {
        self.order[start..start + self.len[start] as usize]
            .iter()
            .map(|&v| v as usize)
    }

    pub(crate) fn cell_len_of(&self, v: usize) -> usize {
        self.len[self.cell[v] as usize] as usize
    }

    pub(crate) fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= self.order.len() {
                return None;
            }
            let cur = s;
            s += self.len[s] as usize;
            Some(cur)
        })
    }

    pub(crate) fn element_at(&self, position: usize) -> usize {
        self.order[position] as usize
    }

    /// Least vertex lying in a cell of size > 1.
    pub(crate) fn least_unfixed(&self) -> Option<usize> {
        (0..self.n()).find(|&v| self.cell_len_of(v) > 1)
    }

    /// Splits `v` off into a singleton at the front of its cell and returns
    /// the singleton's start, or `None` if `v` was already alone.
    pub(crate) fn individualize(&mut self, v: usize) -> Option<usize> {
        let s = self.cell[v] as usize;
        let l = self.len[s] as usize;
        if l == 1 {
            return None;
        }
        let p = self.pos[v] as usize;
        let other = self.order[s];
        self.order.swap(s, p);
        self.pos[other as usize] = p as u32;
        self.pos[v] = s as u32;
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for i in s + 1..s + l {
            self.cell[self.order[i] as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        Some(s)
    }

    /// Refines to the coarsest equitable partition below `self`, starting
    /// from the given splitter cells. Returns `false` as soon as the trace
    /// diverges from the one being checked against.
    pub(crate) fn refine(
        &mut self,
        rel: &[u8],
        splitters: &[usize],
        trace: &mut Trace<'_>,
    ) -> bool {
        let n = self.n();
        let mut queued = vec![false; n];
        let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
        for &s in splitters {
            if !queued[s] {
                queued[s] = true;
                queue.push_back(s);
            }
        }
        let mut counts = vec![0u64; n];
        let mut scratch: Vec<(u64, u32)> = Vec::new();
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if self.is_discrete() {
                break;
            }
            let wlen = self.len[w] as usize;
            for v in 0..n {
                if self.len[self.cell[v] as usize] == 1 {
                    continue;
                }
                let row = &rel[v * n..(v + 1) * n];
                counts[v] = self.order[w..w + wlen]
                    .iter()
                    .map(|&m| INCREMENT[row[m as usize] as usize])
                    .sum();
            }
            let mut s = 0;
            while s < n {
                let l = self.len[s] as usize;
                if l > 1 {
                    let first = counts[self.order[s] as usize];
                    let uniform = self.order[s + 1..s + l]
                        .iter()
                        .all(|&v| counts[v as usize] == first);
                    if !uniform
                        && !self.split(
                            s,
                            l,
                            &counts,
                            w,
                            &mut queued,
                            &mut queue,
                            &mut scratch,
                            trace,
                        )
                    {
                        return false;
                    }
                }
                s += l;
            }
        }
        trace.push(self.cells as u64) && trace.finish()
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        s: usize,
        l: usize,
        counts: &[u64],
        splitter: usize,
        queued: &mut [bool],
        queue: &mut std::collections::VecDeque<usize>,
        scratch: &mut Vec<(u64, u32)>,
        trace: &mut Trace<'_>,
    ) -> bool {
        scratch.clear();
        scratch.extend(
            self.order[s..s + l]
                .iter()
                .map(|&v| (counts[v as usize], v)),
        );
        scratch.sort_unstable();
        let mut event = mix(mix(0, splitter as u64), s as u64);
        let mut frag_start = s;
        for i in 0..l {
            let (c, v) = scratch[i];
            self.order[s + i] = v;
            self.pos[v as usize] = (s + i) as u32;
            let last = i + 1 == l || scratch[i + 1].0 != c;
            if last {
                let frag_len = s + i + 1 - frag_start;
                for j in frag_start..s + i + 1 {
                    self.cell[self.order[j] as usize] = frag_start as u32;
                }
                self.len[frag_start] = frag_len as u32;
                event = mix(mix(event, c), frag_len as u64);
                if !queued[frag_start] {
                    queued[frag_start] = true;
                    queue.push_back(frag_start);
                }
                if frag_start != s {
                    self.cells += 1;
                }
                frag_start = s + i + 1;
            }
        }
        trace.push(event)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0 -> 1 -> 2 -> 0 plus a sink 3
    fn triangle_and_sink() -> Vec<u8> {
        let n = 4;
        let arcs = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        let mut rel = vec![0u8; n * n];
        for (u, v) in arcs {
            rel[u * n + v] = 1;
            rel[v * n + u] = 3;
        }
        rel
    }

    #[test]
    fn refinement_separates_by_degree() {
        let rel = triangle_and_sink();
        let mut p = Partition::from_groups(4, &[vec![0, 1, 2, 3]]);
        assert!(p.refine(&rel, &[0], &mut Trace::Ignore));
        assert_eq!(p.cells, 2);
        assert_eq!(p.cell_len_of(3), 1);
        assert_eq!(p.cell_len_of(0), 3);
    }

    #[test]
    fn traces_agree_on_automorphic_individualizations() {
        let rel = triangle_and_sink();
        let mut base = Partition::from_groups(4, &[vec![0, 1, 2, 3]]);
        base.refine(&rel, &[0], &mut Trace::Ignore);
        let mut left = base.clone();
        let w = left.individualize(0).unwrap();
        let mut trace = Vec::new();
        assert!(left.refine(&rel, &[w], &mut Trace::Record(&mut trace)));
        assert!(left.is_discrete());
        for v in 1..3 {
            let mut right = base.clone();
            let w = right.individualize(v).unwrap();
            assert!(right.refine(
                &rel,
                &[w],
                &mut Trace::Check {
                    expected: &trace,
                    at: 0
                }
            ));
        }
    }
}
