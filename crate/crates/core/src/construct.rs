//! Explicit distinguishing labelings.
//!
//! * [`complement_reduce`] swaps a distinguishing class for its complement
//!   when that is smaller.
//! * [`construct_determining_arc_labeling`] turns a small determining set
//!   `S` and a distinguishing class `R` of `T[S]` into a distinguishing arc
//!   labeling with at most `floor(7n/36) + 3` black arcs.
//! * [`construct_hk_arc_labeling`] builds the recursive labeling of `H_k`
//!   with `ceil(3^(k-1) / 2)` black arcs.
//!
//! Every labeling is run through the automorphism search before it is
//! returned.

use std::fmt;

use thiserror::Error;

use crate::labeling::{is_distinguishing_arc, ArcLabeling, Verdict};
use crate::perm::Permutation;
use crate::search::{
    det_exact, is_determining_set, is_distinguishing_class, min_distinguishing_class_within,
    SearchBudget, SearchError,
};
use crate::symmetry::SymmetryError;
use crate::tournament::{HkIndex, Tournament, MAX_HK_DEPTH};

/// Largest `k` for which [`construct_hk_arc_labeling`] will run its final
/// verification (`H_6` has 729 vertices).
pub const HK_ARC_VERIFY_GUARD: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the given set is not a distinguishing class")]
    NotDistinguishingClass,
    #[error("no determining set of size <= {bound} found within the search budget")]
    DeterminingSetBudget { bound: usize },
    #[error("constructed labeling is preserved by {witness}")]
    VerificationFailed {
        witness: Permutation,
        trace: Option<Box<PipelineTrace>>,
    },
    #[error("H_0 has no arcs to label")]
    NoArcs,
    #[error("depth {0} is above the verification guard {HK_ARC_VERIFY_GUARD}")]
    TooDeep(u32),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Returns the smaller of `set` and its complement (`set` on a tie), after
/// checking that `set` is distinguishing.
pub fn complement_reduce(t: &Tournament, set: &[usize]) -> Result<Vec<usize>, ConstructionError> {
    if !is_distinguishing_class(t, set)? {
        return Err(ConstructionError::NotDistinguishingClass);
    }
    let mut inside = vec![false; t.order()];
    for &v in set {
        inside[v] = true;
    }
    let rest: Vec<usize> = (0..t.order()).filter(|&v| !inside[v]).collect();
    let mut own = set.to_vec();
    own.sort_unstable();
    own.dedup();
    Ok(if rest.len() < own.len() { rest } else { own })
}

/// A determining set of size at most `floor(n/3)`.
///
/// For `H_k` the first vertex of every basic module is used directly;
/// anything else goes through the increasing-size search.
pub fn find_determining_set_bounded(
    t: &Tournament,
    budget: &SearchBudget,
) -> Result<Vec<usize>, ConstructionError> {
    let bound = t.order() / 3;
    if let Some(k) = t.hk_depth() {
        let set: Vec<usize> = if k == 0 {
            Vec::new()
        } else {
            (0..t.order()).step_by(3).collect()
        };
        if is_determining_set(t, &set)? {
            return Ok(set);
        }
    }
    let capped = SearchBudget {
        max_subset_size: Some(bound.max(1)),
        ..*budget
    };
    match det_exact(t, &capped) {
        Ok(m) if m.exact && m.value <= bound => Ok(m.witness),
        Ok(_) | Err(SearchError::BudgetExhausted { .. }) => {
            Err(ConstructionError::DeterminingSetBudget { bound })
        }
        Err(e) => Err(e.into()),
    }
}

/// How the leftover vertices were attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftoverCase {
    /// Nothing left over.
    U0,
    /// One leftover, `R` empty.
    U1a,
    /// One leftover, `R` nonempty.
    U1b,
    /// Two leftovers, `S \ R` empty.
    U2a,
    /// Two leftovers, `S \ R` nonempty.
    U2b,
    /// Three leftovers, `R` empty (cannot occur: at most one leftover
    /// comes from `S \ R`).
    U3a,
    /// Three leftovers, `R` nonempty.
    U3b,
}

impl fmt::Display for LeftoverCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Record of one run of [`construct_determining_arc_labeling`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub determining: Vec<usize>,
    pub distinguishing: Vec<usize>,
    pub pairs: Vec<[usize; 2]>,
    pub triples: Vec<[usize; 3]>,
    pub leftovers: Vec<usize>,
    pub extra_arcs: Vec<(usize, usize)>,
    pub case: LeftoverCase,
}

impl PipelineTrace {
    /// Pairs, triples and leftovers partition the determining set, with at
    /// most one leftover outside `R` and at most two inside it.
    pub fn check_partition(&self) -> bool {
        let mut parts: Vec<usize> = self
            .pairs
            .iter()
            .flatten()
            .chain(self.triples.iter().flatten())
            .chain(&self.leftovers)
            .copied()
            .collect();
        parts.sort_unstable();
        let mut s = self.determining.clone();
        s.sort_unstable();
        let in_r = self
            .leftovers
            .iter()
            .filter(|v| self.distinguishing.contains(v))
            .count();
        parts == s && self.leftovers.len() <= 3 && in_r <= 2 && self.leftovers.len() - in_r <= 1
    }

    /// Key/value lines, one step per key.
    pub fn to_key_values(&self) -> Vec<(String, String)> {
        fn join(v: impl IntoIterator<Item = String>) -> String {
            v.into_iter().collect::<Vec<_>>().join(" ")
        }
        vec![
            (
                "trace.determining_set".into(),
                join(self.determining.iter().map(|v| v.to_string())),
            ),
            (
                "trace.distinguishing_subset".into(),
                join(self.distinguishing.iter().map(|v| v.to_string())),
            ),
            (
                "trace.pairs".into(),
                join(self.pairs.iter().map(|p| format!("{},{}", p[0], p[1]))),
            ),
            (
                "trace.triples".into(),
                join(
                    self.triples
                        .iter()
                        .map(|t| format!("{},{},{}", t[0], t[1], t[2])),
                ),
            ),
            (
                "trace.leftovers".into(),
                join(self.leftovers.iter().map(|v| v.to_string())),
            ),
            (
                "trace.extra_arcs".into(),
                join(self.extra_arcs.iter().map(|(u, v)| format!("{u}>{v}"))),
            ),
            ("trace.case".into(), self.case.to_string()),
        ]
    }
}

/// Arc labeling from a determining set.
///
/// 1. `S`: a determining set with `|S| <= floor(n/3)`.
/// 2. `R`: a minimum distinguishing class of `T[S]`, `|R| <= floor(|S|/2)`.
/// 3. `S \ R` is cut into consecutive pairs (ascending ids); the arc of each
///    pair is blackened.
/// 4. `R` is cut into consecutive triples; the two arcs of a directed path
///    through each triple are blackened.
/// 5. Up to three leftovers are joined to the black structure so that they
///    form a black path whose vertex count no other black component has.
///
/// Each black component is a path, and an automorphism of odd order cannot
/// act nontrivially on a path, so a preserving automorphism fixes the
/// special component, permutes pairs among pairs and triples among
/// triples, hence fixes `S` setwise and `R` setwise, hence is trivial on
/// `S`, hence is the identity.
pub fn construct_determining_arc_labeling(
    t: &Tournament,
    budget: &SearchBudget,
) -> Result<(ArcLabeling, PipelineTrace), ConstructionError> {
    let determining = find_determining_set_bounded(t, budget)?;
    let distinguishing = if determining.is_empty() {
        Vec::new()
    } else {
        min_distinguishing_class_within(t, &determining, determining.len() / 2)?
    };
    let outside: Vec<usize> = determining
        .iter()
        .copied()
        .filter(|v| !distinguishing.contains(v))
        .collect();

    let mut black = ArcLabeling::new();
    let pairs: Vec<[usize; 2]> = outside.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
    for &[p, q] in &pairs {
        black.insert(t.arc_between(p, q));
    }
    // each triple is stored in its directed-path order
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for c in distinguishing.chunks_exact(3) {
        let sub = t.induced(c).expect("triple is nonempty");
        let path = sub.to_parent(&sub.tournament.hamiltonian_path());
        black.insert((path[0], path[1]));
        black.insert((path[1], path[2]));
        triples.push([path[0], path[1], path[2]]);
    }

    let mut leftovers: Vec<usize> = outside.chunks_exact(2).remainder().to_vec();
    leftovers.extend_from_slice(distinguishing.chunks_exact(3).remainder());

    let pair_anchor = pairs.first().map(|p| p[0]);
    let triple_anchor = triples.first().map(|t| t[0]);
    // only reached when S is a single vertex
    let any_other = |u: usize| (0..t.order()).find(|&v| v != u);

    let mut extra = Vec::new();
    let r_empty = distinguishing.is_empty();
    let case = match leftovers.as_slice() {
        [] => LeftoverCase::U0,
        &[u1] => {
            let anchor = if r_empty {
                pair_anchor.or_else(|| any_other(u1))
            } else {
                triple_anchor.or(pair_anchor).or_else(|| any_other(u1))
            };
            if let Some(a) = anchor {
                extra.push(t.arc_between(a, u1));
            }
            if r_empty {
                LeftoverCase::U1a
            } else {
                LeftoverCase::U1b
            }
        }
        &[u1, u2] => {
            if outside.is_empty() {
                extra.push(t.arc_between(u1, u2));
                LeftoverCase::U2a
            } else {
                if let Some(a) = pair_anchor {
                    extra.push(t.arc_between(a, u1));
                }
                extra.push(t.arc_between(u1, u2));
                LeftoverCase::U2b
            }
        }
        &[u1, u2, u3] => {
            extra.push(t.arc_between(u1, u2));
            extra.push(t.arc_between(u2, u3));
            if r_empty {
                LeftoverCase::U3a
            } else {
                if let Some(a) = triple_anchor {
                    extra.push(t.arc_between(a, u1));
                }
                LeftoverCase::U3b
            }
        }
        _ => unreachable!("at most one leftover pair member and two triple members"),
    };
    for &a in &extra {
        black.insert(a);
    }

    let trace = PipelineTrace {
        determining,
        distinguishing,
        pairs,
        triples,
        leftovers,
        extra_arcs: extra,
        case,
    };
    debug_assert!(trace.check_partition());
    match is_distinguishing_arc(t, &black)? {
        Verdict::Distinguishing => Ok((black, trace)),
        Verdict::Preserved(witness) => Err(ConstructionError::VerificationFailed {
            witness,
            trace: Some(Box::new(trace)),
        }),
    }
}

fn hk_arc_pattern(k: u32) -> (ArcLabeling, (usize, usize)) {
    debug_assert!(k >= 1);
    if k == 1 {
        return (ArcLabeling::from_arcs([(0, 1)]), (0, 1));
    }
    let (sub, (pu, pv)) = hk_arc_pattern(k - 1);
    let s = 3usize.pow(k - 1);
    let mut out = ArcLabeling::new();
    for copy in 0..3 {
        let off = copy * s;
        for &(u, v) in sub.black_arcs() {
            out.insert((u + off, v + off));
        }
    }
    // tertians 1 and 2 give up their primitive arc; one arc from tertian 1
    // to tertian 2 replaces them, leaving a single primitive arc in tertian 0
    out.remove(&(pu + s, pv + s));
    out.remove(&(pu + 2 * s, pv + 2 * s));
    out.insert((pu + s, pu + 2 * s));
    (out, (pu, pv))
}

/// The recursive arc labeling of `H_k`, `k >= 1`, verified before return.
pub fn construct_hk_arc_labeling(k: u32) -> Result<ArcLabeling, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::NoArcs);
    }
    if k > HK_ARC_VERIFY_GUARD.min(MAX_HK_DEPTH) {
        return Err(ConstructionError::TooDeep(k));
    }
    let (labels, _) = hk_arc_pattern(k);
    let t = Tournament::hk(k).expect("depth checked");
    match is_distinguishing_arc(&t, &labels)? {
        Verdict::Distinguishing => Ok(labels),
        Verdict::Preserved(witness) => Err(ConstructionError::VerificationFailed {
            witness,
            trace: None,
        }),
    }
}

/// For an arc set on `H_k` leaving some basic module without a black
/// endpoint, the rotation of the first such module (identity elsewhere).
/// It preserves the labeling because the module relates uniformly to the
/// rest of the tournament.
pub fn uncovered_module_rotation(k: u32, arcs: &ArcLabeling) -> Option<Permutation> {
    let idx = HkIndex::new(k).ok().filter(|_| k >= 1)?;
    let touched = arcs.endpoints();
    let m = (0..idx.basic_module_count())
        .find(|&m| (3 * m..3 * m + 3).all(|v| !touched.contains(&v)))?;
    let mut image: Vec<usize> = (0..idx.order()).collect();
    image[3 * m] = 3 * m + 1;
    image[3 * m + 1] = 3 * m + 2;
    image[3 * m + 2] = 3 * m;
    Some(Permutation::from_image_unchecked(image))
}
