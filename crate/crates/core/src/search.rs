//! Exact minimum distinguishing classes and determining sets.
//!
//! Everything here enumerates candidate subsets by increasing size, in
//! lexicographic order within a size, and stops at the first one that
//! passes. The returned witness is therefore the lexicographically least
//! minimum. Per-size statistics record how many candidates were rejected
//! below the minimum so a result can be replayed.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::labeling::{
    class_to_labeling, is_distinguishing_arc, is_distinguishing_vertex, ArcLabeling,
};
use crate::perm::Permutation;
use crate::symmetry::{
    find_automorphism, AutomorphismSearch, SearchConstraints, SymmetryError,
    DEFAULT_ENUMERATION_GUARD,
};
use crate::tournament::{HkIndex, Tournament, TournamentError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exhaustion {
    #[default]
    Fail,
    /// Return a verified, possibly non-minimal witness when one is
    /// available.
    ReturnBestFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBudget {
    pub max_subset_size: Option<usize>,
    pub max_candidates: Option<u64>,
    pub on_exhaustion: Exhaustion,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_max_size(mut self, size: usize) -> Self {
        self.max_subset_size = Some(size);
        self
    }

    pub fn with_max_candidates(mut self, count: u64) -> Self {
        self.max_candidates = Some(count);
        self
    }

    pub fn returning_best(mut self) -> Self {
        self.on_exhaustion = Exhaustion::ReturnBestFound;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.max_subset_size == Some(0) || self.max_candidates == Some(0) {
            return Err(SearchError::InvalidBudget);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Rho,
    RhoPrime,
    Det,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Rho => "rho",
            Quantity::RhoPrime => "rho_prime",
            Quantity::Det => "det",
        })
    }
}

/// Candidates seen at one subset size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelStats {
    pub size: usize,
    /// Candidates handed to the verifier.
    pub examined: u64,
    /// Candidates skipped without verification (orbit or module pruning).
    pub pruned: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub levels: Vec<LevelStats>,
}

impl SearchStats {
    pub fn examined(&self) -> u64 {
        self.levels.iter().map(|l| l.examined).sum()
    }

    pub fn pruned(&self) -> u64 {
        self.levels.iter().map(|l| l.pruned).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimum<W> {
    pub value: usize,
    pub witness: W,
    /// False when the budget ran out and `witness` is only an upper bound.
    pub exact: bool,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("budget caps must be positive")]
    InvalidBudget,
    #[error("{quantity}: budget exhausted; every candidate of size < {lower_bound} failed")]
    BudgetExhausted {
        quantity: Quantity,
        lower_bound: usize,
        stats: SearchStats,
    },
    #[error("no distinguishing class of size <= {bound} inside the given set")]
    NotFoundWithin { bound: usize },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// Increasing-size search over subsets of `universe`.
///
/// `prune` may reject a candidate before verification; `fallback` supplies
/// an upper-bound witness if the budget runs out under
/// [`Exhaustion::ReturnBestFound`].
fn minimize<T: Copy>(
    universe: &[T],
    budget: &SearchBudget,
    quantity: Quantity,
    mut prune: impl FnMut(&[T]) -> bool,
    mut accept: impl FnMut(&[T]) -> Result<bool, SearchError>,
    fallback: impl FnOnce() -> Result<Option<Vec<T>>, SearchError>,
) -> Result<Minimum<Vec<T>>, SearchError> {
    budget.validate()?;
    let max_size = budget
        .max_subset_size
        .map_or(universe.len(), |m| m.min(universe.len()));
    let mut stats = SearchStats::default();
    let mut examined = 0u64;
    let mut exhausted = false;
    'sizes: for size in 0..=max_size {
        let mut level = LevelStats {
            size,
            examined: 0,
            pruned: 0,
        };
        for combo in universe.iter().copied().combinations(size) {
            if prune(&combo) {
                level.pruned += 1;
                continue;
            }
            if budget.max_candidates.is_some_and(|cap| examined >= cap) {
                stats.levels.push(level);
                exhausted = true;
                break 'sizes;
            }
            examined += 1;
            level.examined += 1;
            if accept(&combo)? {
                stats.levels.push(level);
                return Ok(Minimum {
                    value: size,
                    witness: combo,
                    exact: true,
                    stats,
                });
            }
        }
        stats.levels.push(level);
    }
    // every fully scanned level failed; a level cut short proves nothing
    let lower_bound = stats.levels.len() - usize::from(exhausted);
    if budget.on_exhaustion == Exhaustion::ReturnBestFound {
        if let Some(w) = fallback()? {
            return Ok(Minimum {
                value: w.len(),
                witness: w,
                exact: false,
                stats,
            });
        }
    }
    Err(SearchError::BudgetExhausted {
        quantity,
        lower_bound,
        stats,
    })
}

/// True iff only the identity fixes every vertex of `set`.
pub fn is_determining_set(t: &Tournament, set: &[usize]) -> Result<bool, SearchError> {
    for &v in set {
        t.check_vertex(v)?;
    }
    let c = SearchConstraints::new().fixing(set).nontrivial();
    Ok(find_automorphism(t, &c)?.is_none())
}

/// True iff colouring `set` black and the rest white is distinguishing.
pub fn is_distinguishing_class(t: &Tournament, set: &[usize]) -> Result<bool, SearchError> {
    let labels = class_to_labeling(t, set)?;
    Ok(is_distinguishing_vertex(t, &labels)?.is_distinguishing())
}

/// The determining number and its lexicographically least witness.
pub fn det_exact(
    t: &Tournament,
    budget: &SearchBudget,
) -> Result<Minimum<Vec<usize>>, SearchError> {
    let universe: Vec<usize> = (0..t.order()).collect();
    minimize(
        &universe,
        budget,
        Quantity::Det,
        |_| false,
        |s| is_determining_set(t, s),
        // all but one vertex always determine the last
        || Ok(Some((0..t.order().saturating_sub(1)).collect())),
    )
}

/// Minimum size of a distinguishing vertex class.
///
/// When the automorphism group is small enough to enumerate, a candidate is
/// skipped unless it is the lexicographically least member of its orbit.
/// The least distinguishing set is always the least of its orbit, so the
/// witness is unaffected.
pub fn rho_exact(
    t: &Tournament,
    budget: &SearchBudget,
) -> Result<Minimum<Vec<usize>>, SearchError> {
    let group = if t.order() <= DEFAULT_ENUMERATION_GUARD {
        crate::symmetry::enumerate_automorphisms(t)?
    } else {
        Vec::new()
    };
    let universe: Vec<usize> = (0..t.order()).collect();
    let mut image = Vec::new();
    minimize(
        &universe,
        budget,
        Quantity::Rho,
        |s| {
            group.iter().any(|g| {
                image.clear();
                image.extend(s.iter().map(|&v| g.apply(v)));
                image.sort_unstable();
                image.as_slice() < s
            })
        },
        |s| is_distinguishing_class(t, s),
        || Ok(None),
    )
}

/// Every distinguishing class of exactly `size` vertices, ascending.
pub fn distinguishing_classes_of_size(
    t: &Tournament,
    size: usize,
) -> Result<Vec<Vec<usize>>, SearchError> {
    let mut out = Vec::new();
    for combo in (0..t.order()).combinations(size) {
        if is_distinguishing_class(t, &combo)? {
            out.push(combo);
        }
    }
    Ok(out)
}

/// True iff every basic module of `H_k` contains an endpoint of `arcs`.
pub fn covers_basic_modules(k: u32, arcs: &[(usize, usize)]) -> bool {
    let idx = match HkIndex::new(k) {
        Ok(i) if k >= 1 => i,
        _ => return true,
    };
    let mut hit = vec![false; idx.basic_module_count()];
    for &(u, v) in arcs {
        hit[idx.basic_module(u)] = true;
        hit[idx.basic_module(v)] = true;
    }
    hit.iter().all(|&h| h)
}

/// Minimum size of a distinguishing arc class.
///
/// With `module_filter` set and `t` equal to some `H_k`, arc sets leaving a
/// basic module without a black endpoint are discarded unverified: the
/// rotation of such a module fixes everything else and preserves the
/// labeling.
pub fn rho_prime_exact(
    t: &Tournament,
    budget: &SearchBudget,
    module_filter: bool,
) -> Result<Minimum<Vec<(usize, usize)>>, SearchError> {
    let hk = if module_filter { t.hk_depth() } else { None };
    let universe: Vec<(usize, usize)> = t.arcs().collect();
    minimize(
        &universe,
        budget,
        Quantity::RhoPrime,
        |arcs| hk.is_some_and(|k| !covers_basic_modules(k, arcs)),
        |arcs| {
            Ok(
                is_distinguishing_arc(t, &ArcLabeling::from_arcs(arcs.iter().copied()))?
                    .is_distinguishing(),
            )
        },
        || {
            // black Hamiltonian path: every vertex sits at its own distance
            // from the start
            let path = t.hamiltonian_path();
            let arcs: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
            let ok = is_distinguishing_arc(t, &ArcLabeling::from_arcs(arcs.iter().copied()))?
                .is_distinguishing();
            Ok(ok.then_some(arcs))
        },
    )
}

/// A smallest distinguishing class of `t[set]` of size at most `bound`,
/// reported in `t`'s vertex ids.
pub fn min_distinguishing_class_within(
    t: &Tournament,
    set: &[usize],
    bound: usize,
) -> Result<Vec<usize>, SearchError> {
    let sub = t.induced(set)?;
    let budget = SearchBudget {
        max_subset_size: Some(bound.max(1)),
        ..SearchBudget::unlimited()
    };
    match rho_exact(&sub.tournament, &budget) {
        Ok(m) if m.value <= bound => Ok(sub.to_parent(&m.witness)),
        Ok(_) | Err(SearchError::BudgetExhausted { .. }) => {
            Err(SearchError::NotFoundWithin { bound })
        }
        Err(e) => Err(e),
    }
}

/// Nontrivial automorphism of `t` fixing every vertex of `set`, if any.
pub fn pointwise_stabilizer_witness(
    t: &Tournament,
    set: &[usize],
) -> Result<Option<Permutation>, SearchError> {
    let s = AutomorphismSearch::new(t, &SearchConstraints::new().fixing(set).nontrivial())?;
    Ok(s.find())
}
