//! Tournaments stored as bit-packed orientation matrices, plus the
//! generators and structural queries the rest of the crate builds on.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

/// Largest `k` accepted by [`Tournament::hk`]. `H_10` already has 59049
/// vertices.
pub const MAX_HK_DEPTH: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("a tournament needs at least one vertex")]
    Empty,
    #[error("self-loop ({0}, {0})")]
    SelfLoop(usize),
    #[error("arc ({u}, {v}) is out of range for n = {n}")]
    ArcOutOfRange { u: usize, v: usize, n: usize },
    #[error("pair {{{0}, {1}}} is given more than once")]
    DuplicatePair(usize, usize),
    #[error("pair {{{0}, {1}}} is not oriented")]
    MissingPair(usize, usize),
    #[error("vertex {v} is out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("depth {0} exceeds the resource guard k <= {MAX_HK_DEPTH}")]
    DepthTooLarge(u32),
    #[error("vertex set is empty")]
    EmptySet,
}

/// A complete oriented graph on vertices `0..n`.
///
/// Row `u` of the matrix holds the out-neighbourhood of `u` as a bitset.
/// Values are immutable once built; every constructor checks that the
/// diagonal is clear and that each pair is oriented exactly one way.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tournament")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl Tournament {
    fn blank(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Tournament {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn set_row_range(&mut self, u: usize, start: usize, end: usize) {
        let row = &mut self.bits[u * self.words..(u + 1) * self.words];
        let mut v = start;
        while v < end {
            if v.is_multiple_of(64) && v + 64 <= end {
                row[v / 64] = u64::MAX;
                v += 64;
            } else {
                row[v / 64] |= 1 << (v % 64);
                v += 1;
            }
        }
    }

    /// Builds a tournament from an explicit list of arcs. Every unordered
    /// pair must appear exactly once.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, TournamentError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(TournamentError::Empty);
        }
        let mut t = Tournament::blank(n);
        let mut seen = vec![false; n * n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(TournamentError::ArcOutOfRange { u, v, n });
            }
            if u == v {
                return Err(TournamentError::SelfLoop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if std::mem::replace(&mut seen[a * n + b], true) {
                return Err(TournamentError::DuplicatePair(a, b));
            }
            t.set(u, v);
        }
        for a in 0..n {
            for b in a + 1..n {
                if !seen[a * n + b] {
                    return Err(TournamentError::MissingPair(a, b));
                }
            }
        }
        Ok(t)
    }

    /// Orients each pair `i < j` as `i -> j` when `forward(i, j)` holds and
    /// `j -> i` otherwise.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Tournament::blank(n);
        for i in 0..n {
            for j in i + 1..n {
                if forward(i, j) {
                    t.set(i, j);
                } else {
                    t.set(j, i);
                }
            }
        }
        t
    }

    /// The transitive tournament with `i -> j` iff `i < j`.
    pub fn transitive(n: usize) -> Self {
        Tournament::from_fn(n, |_, _| true)
    }

    /// `H_k`: a directed triangle whose three vertices are replaced by copies
    /// of `H_{k-1}`. Vertex `v` is addressed by its base-3 digits, most
    /// significant digit first; between different blocks of one level the
    /// arcs run block 0 -> block 1 -> block 2 -> block 0.
    pub fn hk(k: u32) -> Result<Self, TournamentError> {
        if k > MAX_HK_DEPTH {
            return Err(TournamentError::DepthTooLarge(k));
        }
        let n = 3usize.pow(k);
        let mut t = Tournament::blank(n);
        for u in 0..n {
            let mut block = 1;
            while block < n {
                let parent = u / (3 * block) * (3 * block);
                let digit = (u - parent) / block;
                let next = parent + ((digit + 1) % 3) * block;
                t.set_row_range(u, next, next + block);
                block *= 3;
            }
        }
        Ok(t)
    }

    /// A uniformly random tournament. Pairs `(i, j)` with `i < j` are visited
    /// row by row and each is oriented `i -> j` when the top bit of the next
    /// `u32` drawn from ChaCha8 (seeded with `seed_from_u64(seed)`) is set.
    pub fn random(n: usize, seed: u64) -> Result<Self, TournamentError> {
        if n == 0 {
            return Err(TournamentError::Empty);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Tournament::from_fn(n, |_, _| rng.next_u32() >> 31 == 1))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `Some(k)` iff this tournament is exactly `H_k` under base-3
    /// addressing.
    pub fn hk_depth(&self) -> Option<u32> {
        let mut k = 0;
        let mut m = 1;
        while m < self.n {
            m *= 3;
            k += 1;
        }
        (m == self.n && k <= MAX_HK_DEPTH && Tournament::hk(k).ok().as_ref() == Some(self))
            .then_some(k)
    }

    /// True iff `u -> v` is an arc.
    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// All arcs in ascending `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n)
                .filter(move |&v| self.has_arc(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn arc_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// The arc on the pair `{u, v}`, oriented the way the tournament has it.
    pub fn arc_between(&self, u: usize, v: usize) -> (usize, usize) {
        if self.has_arc(u, v) {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.bits[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), TournamentError> {
        if v < self.n {
            Ok(())
        } else {
            Err(TournamentError::VertexOutOfRange { v, n: self.n })
        }
    }

    /// Re-checks the two tournament invariants: an empty diagonal and exactly
    /// one orientation per pair.
    pub fn check_invariants(&self) -> Result<(), TournamentError> {
        for u in 0..self.n {
            if self.has_arc(u, u) {
                return Err(TournamentError::SelfLoop(u));
            }
            for v in u + 1..self.n {
                match (self.has_arc(u, v), self.has_arc(v, u)) {
                    (true, true) => return Err(TournamentError::DuplicatePair(u, v)),
                    (false, false) => return Err(TournamentError::MissingPair(u, v)),
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Number of vertices `z` other than `x` and `y` whose relationship to
    /// `x` differs from their relationship to `y`, i.e. `z -> x` and
    /// `y -> z`, or `x -> z` and `z -> y`.
    pub fn relationship_difference(&self, x: usize, y: usize) -> Result<usize, TournamentError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok((0..self.n)
            .filter(|&z| z != x && z != y)
            .filter(|&z| self.has_arc(z, x) == self.has_arc(y, z))
            .count())
    }

    /// True iff every vertex outside `set` either beats all of `set` or is
    /// beaten by all of it.
    pub fn is_module(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        (0..self.n).filter(|&v| !inside[v]).all(|v| {
            let mut dirs = set.iter().map(|&u| self.has_arc(v, u));
            match dirs.next() {
                None => true,
                Some(first) => dirs.all(|d| d == first),
            }
        })
    }

    /// A Hamiltonian path built by insertion: each vertex goes in front of the
    /// first path vertex it beats, or at the end if it beats none of them.
    pub fn hamiltonian_path(&self) -> Vec<usize> {
        let mut path: Vec<usize> = Vec::with_capacity(self.n);
        for v in 0..self.n {
            match path.iter().position(|&p| self.has_arc(v, p)) {
                Some(i) => path.insert(i, v),
                None => path.push(v),
            }
        }
        path
    }

    /// The subtournament induced by `set`. Local vertex `i` of the result is
    /// `set[i]` after sorting and deduplication.
    pub fn induced(&self, set: &[usize]) -> Result<Subtournament, TournamentError> {
        if set.is_empty() {
            return Err(TournamentError::EmptySet);
        }
        let mut original = set.to_vec();
        original.sort_unstable();
        original.dedup();
        for &v in &original {
            self.check_vertex(v)?;
        }
        let tournament = Tournament::from_fn(original.len(), |i, j| {
            self.has_arc(original[i], original[j])
        });
        Ok(Subtournament {
            tournament,
            original,
        })
    }
}

/// An induced subtournament together with its vertex correspondence.
#[derive(Debug, Clone)]
pub struct Subtournament {
    pub tournament: Tournament,
    /// `original[local]` is the id of `local` in the parent tournament.
    pub original: Vec<usize>,
}

impl Subtournament {
    /// Old-to-new id map: the local id of a parent vertex, if it was kept.
    pub fn local_id(&self, parent: usize) -> Option<usize> {
        self.original.binary_search(&parent).ok()
    }

    pub fn to_parent(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&i| self.original[i]).collect()
    }
}

/// Base-3 addressing of `H_k`. Tertian and basic-module membership are
/// computed from vertex ids, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HkIndex {
    k: u32,
}

impl HkIndex {
    pub fn new(k: u32) -> Result<Self, TournamentError> {
        if k > MAX_HK_DEPTH {
            return Err(TournamentError::DepthTooLarge(k));
        }
        Ok(HkIndex { k })
    }

    pub fn depth(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        3usize.pow(self.k)
    }

    /// Size of a tertian, `3^(k-1)`.
    pub fn tertian_size(&self) -> usize {
        self.order() / 3
    }

    /// Digit `level` of `v`, where level 0 is the most significant digit.
    pub fn digit(&self, v: usize, level: u32) -> usize {
        v / 3usize.pow(self.k - 1 - level) % 3
    }

    /// Which top-level tertian (0, 1 or 2) contains `v`. Requires `k >= 1`.
    pub fn tertian(&self, v: usize) -> usize {
        v / self.tertian_size()
    }

    pub fn tertian_range(&self, t: usize) -> std::ops::Range<usize> {
        let s = self.tertian_size();
        t * s..(t + 1) * s
    }

    /// Index of the basic module (a directed triangle) that contains `v`.
    pub fn basic_module(&self, v: usize) -> usize {
        v / 3
    }

    pub fn basic_module_count(&self) -> usize {
        self.order() / 3
    }
}

/// The `3^(k-1)` disjoint triples `{3m, 3m+1, 3m+2}` of `H_k`.
pub fn basic_modules(k: u32) -> Result<Vec<[usize; 3]>, TournamentError> {
    if k == 0 {
        return Err(TournamentError::EmptySet);
    }
    let idx = HkIndex::new(k)?;
    Ok((0..idx.basic_module_count())
        .map(|m| [3 * m, 3 * m + 1, 3 * m + 2])
        .collect())
}

/// One member of a seeded random corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub n: usize,
    pub seed: u64,
    pub tournament: Tournament,
}

/// `count` seeded random tournaments with orders cycling through
/// `min_n..=max_n`. Entry `i` uses seed `base_seed + i`.
pub fn random_corpus(count: usize, min_n: usize, max_n: usize, base_seed: u64) -> Vec<CorpusEntry> {
    assert!(min_n >= 1 && min_n <= max_n);
    let span = max_n - min_n + 1;
    (0..count)
        .map(|i| {
            let n = min_n + i % span;
            let seed = base_seed.wrapping_add(i as u64);
            CorpusEntry {
                n,
                seed,
                tournament: Tournament::random(n, seed).expect("n >= 1"),
            }
        })
        .collect()
}
