//! Automorphism testing and search.
//!
//! [`AutomorphismSearch`] is a complete backtracking search over vertex
//! images. Each node individualizes one vertex and refines the partition
//! to an equitable one; a branch is cut as soon as the refinement trace of
//! the candidate image disagrees with that of the source vertex. Leaves are
//! discrete partitions and are checked explicitly, so pruning never affects
//! correctness.
//!
//! Source vertices are individualized in ascending id order and candidate
//! images are tried in ascending order, so automorphisms are produced in
//! lexicographic order of their image lists.

mod partition;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::labeling::{ArcLabeling, Color, VertexLabeling};
use crate::perm::Permutation;
use crate::tournament::Tournament;
use partition::{Partition, Trace};

/// Default cap on `n` for [`enumerate_automorphisms`].
pub const DEFAULT_ENUMERATION_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("permutation has degree {found}, tournament has order {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("vertex {0} in a constraint is out of range")]
    VertexOutOfRange(usize),
    #[error("({0}, {1}) is not an arc of the tournament")]
    NotAnArc(usize, usize),
    #[error("enumeration guard exceeded: n = {n} > {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("orders above 65535 are not searchable")]
    TooLarge,
}

/// What a sought automorphism has to respect.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchConstraints<'a> {
    pub vertex_labels: Option<&'a VertexLabeling>,
    pub arc_labels: Option<&'a ArcLabeling>,
    pub fixed_pointwise: Option<&'a [usize]>,
    pub exclude_identity: bool,
}

impl<'a> SearchConstraints<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn preserving_vertices(mut self, labels: &'a VertexLabeling) -> Self {
        self.vertex_labels = Some(labels);
        self
    }

    pub fn preserving_arcs(mut self, labels: &'a ArcLabeling) -> Self {
        self.arc_labels = Some(labels);
        self
    }

    pub fn fixing(mut self, vertices: &'a [usize]) -> Self {
        self.fixed_pointwise = Some(vertices);
        self
    }

    pub fn nontrivial(mut self) -> Self {
        self.exclude_identity = true;
        self
    }

    fn validate(&self, t: &Tournament) -> Result<(), SymmetryError> {
        let n = t.order();
        if let Some(l) = self.vertex_labels {
            if l.len() != n {
                return Err(SymmetryError::SizeMismatch {
                    expected: n,
                    found: l.len(),
                });
            }
        }
        if let Some(a) = self.arc_labels {
            for &(u, v) in a.black_arcs() {
                if u >= n || v >= n || !t.has_arc(u, v) {
                    return Err(SymmetryError::NotAnArc(u, v));
                }
            }
        }
        if let Some(fixed) = self.fixed_pointwise {
            if let Some(&v) = fixed.iter().find(|&&v| v >= n) {
                return Err(SymmetryError::VertexOutOfRange(v));
            }
        }
        Ok(())
    }
}

/// True iff `p` maps every arc to an arc.
pub fn is_automorphism(t: &Tournament, p: &Permutation) -> Result<bool, SymmetryError> {
    if p.len() != t.order() {
        return Err(SymmetryError::SizeMismatch {
            expected: t.order(),
            found: p.len(),
        });
    }
    Ok(t.arcs().all(|(u, v)| t.has_arc(p.apply(u), p.apply(v))))
}

/// True iff `p` is an automorphism satisfying every constraint.
pub fn satisfies(
    t: &Tournament,
    p: &Permutation,
    c: &SearchConstraints<'_>,
) -> Result<bool, SymmetryError> {
    c.validate(t)?;
    if !is_automorphism(t, p)? {
        return Ok(false);
    }
    if c.exclude_identity && p.is_identity() {
        return Ok(false);
    }
    if let Some(l) = c.vertex_labels {
        if (0..t.order()).any(|v| l.color(p.apply(v)) != l.color(v)) {
            return Ok(false);
        }
    }
    if let Some(a) = c.arc_labels {
        if a.black_arcs()
            .iter()
            .any(|&(u, v)| !a.is_black(p.apply(u), p.apply(v)))
        {
            return Ok(false);
        }
    }
    if let Some(fixed) = c.fixed_pointwise {
        if fixed.iter().any(|&v| p.apply(v) != v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographically least automorphism satisfying the constraints, if any.
pub fn find_automorphism(
    t: &Tournament,
    c: &SearchConstraints<'_>,
) -> Result<Option<Permutation>, SymmetryError> {
    Ok(AutomorphismSearch::new(t, c)?.find())
}

/// All automorphisms of `t` in lexicographic order, identity first.
pub fn enumerate_automorphisms(t: &Tournament) -> Result<Vec<Permutation>, SymmetryError> {
    enumerate_automorphisms_guarded(t, &SearchConstraints::new(), DEFAULT_ENUMERATION_GUARD)
}

pub fn enumerate_automorphisms_guarded(
    t: &Tournament,
    c: &SearchConstraints<'_>,
    guard: usize,
) -> Result<Vec<Permutation>, SymmetryError> {
    if t.order() > guard {
        return Err(SymmetryError::GuardExceeded {
            n: t.order(),
            guard,
        });
    }
    let mut out = Vec::new();
    AutomorphismSearch::new(t, c)?.visit(|p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Vertex orbits of `Aut(t)`, each sorted, listed by least element.
pub fn orbits(t: &Tournament) -> Result<Vec<Vec<usize>>, SymmetryError> {
    orbits_under(t, &SearchConstraints::new())
}

/// Orbits of the subgroup of automorphisms satisfying `c`
/// (`exclude_identity` is ignored). Small orders enumerate the subgroup;
/// larger ones run one existence search per candidate pair.
pub fn orbits_under(
    t: &Tournament,
    c: &SearchConstraints<'_>,
) -> Result<Vec<Vec<usize>>, SymmetryError> {
    let n = t.order();
    let c = SearchConstraints {
        exclude_identity: false,
        ..*c
    };
    let mut uf = UnionFind::new(n);
    if n <= DEFAULT_ENUMERATION_GUARD {
        AutomorphismSearch::new(t, &c)?.visit(|p| {
            for v in 0..n {
                uf.union(v, p.apply(v));
            }
            ControlFlow::Continue(())
        });
    } else {
        let search = AutomorphismSearch::new(t, &c)?;
        for a in 0..n {
            if uf.find(a) != a {
                continue;
            }
            for b in a + 1..n {
                if uf.find(b) == uf.find(a) || !search.root_compatible(a, b) {
                    continue;
                }
                if let Some(p) = search.find_mapping(a, b) {
                    for v in 0..n {
                        uf.union(v, p.apply(v));
                    }
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller id as representative
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

struct Level {
    partition: Partition,
    /// Trace recorded while refining into this level.
    trace: Vec<u64>,
    /// Vertex individualized to reach the next level.
    target: Option<usize>,
}

/// A prepared search: the coloured relation matrix, the root partition and
/// the chain of source-side partitions ("left path").
pub struct AutomorphismSearch {
    n: usize,
    rel: Vec<u8>,
    exclude_identity: bool,
    root: Partition,
    nodes: std::cell::Cell<u64>,
}

impl AutomorphismSearch {
    pub fn new(t: &Tournament, c: &SearchConstraints<'_>) -> Result<Self, SymmetryError> {
        c.validate(t)?;
        let n = t.order();
        if n > u16::MAX as usize {
            return Err(SymmetryError::TooLarge);
        }
        let black: BTreeSet<(usize, usize)> = c
            .arc_labels
            .map(|a| a.black_arcs().clone())
            .unwrap_or_default();
        let mut rel = vec![0u8; n * n];
        for (u, v) in t.arcs() {
            let b = black.contains(&(u, v)) as u8;
            rel[u * n + v] = 1 + b;
            rel[v * n + u] = 3 + b;
        }

        let mut fixed: Vec<usize> = c.fixed_pointwise.map(|f| f.to_vec()).unwrap_or_default();
        fixed.sort_unstable();
        fixed.dedup();
        let mut is_fixed = vec![false; n];
        for &v in &fixed {
            is_fixed[v] = true;
        }
        let mut groups: Vec<Vec<usize>> = fixed.iter().map(|&v| vec![v]).collect();
        let color_of = |v: usize| c.vertex_labels.map_or(Color::White, |l| l.color(v));
        for color in [Color::White, Color::Black] {
            groups.push(
                (0..n)
                    .filter(|&v| !is_fixed[v] && color_of(v) == color)
                    .collect(),
            );
        }
        let mut root = Partition::from_groups(n, &groups);
        let starts: Vec<usize> = root.starts().collect();
        root.refine(&rel, &starts, &mut Trace::Ignore);
        Ok(AutomorphismSearch {
            n,
            rel,
            exclude_identity: c.exclude_identity,
            root,
            nodes: std::cell::Cell::new(0),
        })
    }

    /// Number of search nodes expanded so far.
    pub fn nodes(&self) -> u64 {
        self.nodes.get()
    }

    pub fn find(&self) -> Option<Permutation> {
        let mut found = None;
        self.visit(|p| {
            found = Some(p.clone());
            ControlFlow::Break(())
        });
        found
    }

    /// Calls `f` on every satisfying automorphism in lexicographic order
    /// until it breaks.
    pub fn visit(&self, mut f: impl FnMut(&Permutation) -> ControlFlow<()>) {
        let left = self.left_path(None);
        let _ = self.dfs(&left, 0, &self.root, None, &mut f);
    }

    /// Some satisfying automorphism mapping `a` to `b`.
    pub fn find_mapping(&self, a: usize, b: usize) -> Option<Permutation> {
        if !self.root_compatible(a, b) {
            return None;
        }
        let left = self.left_path(Some(a));
        let mut found = None;
        let _ = self.dfs(&left, 0, &self.root, Some(b), &mut |p| {
            if p.apply(a) == b {
                found = Some(p.clone());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        found
    }

    fn root_compatible(&self, a: usize, b: usize) -> bool {
        self.root.cell_start(a) == self.root.cell_start(b)
    }

    fn left_path(&self, first: Option<usize>) -> Vec<Level> {
        let mut levels = vec![Level {
            partition: self.root.clone(),
            trace: Vec::new(),
            target: None,
        }];
        loop {
            let depth = levels.len();
            let cur = levels.last_mut().unwrap();
            let target = match (depth, first) {
                (1, Some(a)) => Some(a),
                _ => cur.partition.least_unfixed(),
            };
            let Some(u) = target else { break };
            cur.target = Some(u);
            let mut next = cur.partition.clone();
            let mut trace = Vec::new();
            if let Some(w) = next.individualize(u) {
                next.refine(&self.rel, &[w], &mut Trace::Record(&mut trace));
            }
            levels.push(Level {
                partition: next,
                trace,
                target: None,
            });
        }
        levels
    }

    fn dfs(
        &self,
        left: &[Level],
        depth: usize,
        right: &Partition,
        forced: Option<usize>,
        f: &mut dyn FnMut(&Permutation) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.nodes.set(self.nodes.get() + 1);
        let level = &left[depth];
        let Some(u) = level.target else {
            return self.leaf(&level.partition, right, f);
        };
        let start = level.partition.cell_start(u);
        let mut candidates: Vec<usize> = right.cell_members(start).collect();
        candidates.sort_unstable();
        if let Some(b) = forced {
            candidates.retain(|&v| v == b);
        }
        let child_trace = &left[depth + 1].trace;
        for v in candidates {
            let mut child = right.clone();
            let ok = match child.individualize(v) {
                Some(w) => child.refine(
                    &self.rel,
                    &[w],
                    &mut Trace::Check {
                        expected: child_trace,
                        at: 0,
                    },
                ),
                None => child_trace.is_empty(),
            };
            if ok {
                self.dfs(left, depth + 1, &child, None, f)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn leaf(
        &self,
        left: &Partition,
        right: &Partition,
        f: &mut dyn FnMut(&Permutation) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.n;
        let mut image = vec![0usize; n];
        for i in 0..n {
            image[left.element_at(i)] = right.element_at(i);
        }
        if self.exclude_identity && image.iter().enumerate().all(|(i, &x)| i == x) {
            return ControlFlow::Continue(());
        }
        let rel = &self.rel;
        let preserves = (0..n).all(|u| {
            let pu = image[u];
            (0..n).all(|v| rel[u * n + v] == rel[pu * n + image[v]])
        });
        if !preserves {
            return ControlFlow::Continue(());
        }
        f(&Permutation::from_image_unchecked(image))
    }
}
