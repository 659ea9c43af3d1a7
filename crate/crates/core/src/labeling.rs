//! Two-valued vertex and arc labelings and their verification.

use std::collections::BTreeSet;

use crate::perm::Permutation;
use crate::symmetry::{find_automorphism, SearchConstraints, SymmetryError};
use crate::tournament::{HkIndex, Tournament, TournamentError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexLabeling {
    colors: Vec<Color>,
}

impl VertexLabeling {
    pub fn new(colors: Vec<Color>) -> Self {
        VertexLabeling { colors }
    }

    pub fn uniform(n: usize, color: Color) -> Self {
        VertexLabeling {
            colors: vec![color; n],
        }
    }

    /// Black on `black`, white elsewhere.
    pub fn from_black_set(n: usize, black: &[usize]) -> Self {
        let mut colors = vec![Color::White; n];
        for &v in black {
            colors[v] = Color::Black;
        }
        VertexLabeling { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.colors[v] == Color::Black)
            .collect()
    }

    pub fn black_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Black).count()
    }

    pub fn complement(&self) -> Self {
        VertexLabeling {
            colors: self.colors.iter().map(|c| c.flip()).collect(),
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> VertexLabeling {
        VertexLabeling {
            colors: self.colors[range].to_vec(),
        }
    }
}

/// An arc labeling kept as its black class; every other arc is white.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ArcLabeling {
    black: BTreeSet<(usize, usize)>,
}

impl ArcLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        ArcLabeling {
            black: arcs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, arc: (usize, usize)) -> bool {
        self.black.insert(arc)
    }

    pub fn remove(&mut self, arc: &(usize, usize)) -> bool {
        self.black.remove(arc)
    }

    pub fn is_black(&self, u: usize, v: usize) -> bool {
        self.black.contains(&(u, v))
    }

    pub fn black_arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.black
    }

    pub fn black_count(&self) -> usize {
        self.black.len()
    }

    /// Vertices incident to at least one black arc.
    pub fn endpoints(&self) -> BTreeSet<usize> {
        self.black.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    pub fn check_against(&self, t: &Tournament) -> Result<(), SymmetryError> {
        match self
            .black
            .iter()
            .find(|&&(u, v)| u >= t.order() || v >= t.order() || !t.has_arc(u, v))
        {
            Some(&(u, v)) => Err(SymmetryError::NotAnArc(u, v)),
            None => Ok(()),
        }
    }
}

/// Outcome of a distinguishing check. A negative verdict carries a
/// nontrivial automorphism preserving the labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Distinguishing,
    Preserved(Permutation),
}

impl Verdict {
    pub fn is_distinguishing(&self) -> bool {
        matches!(self, Verdict::Distinguishing)
    }

    pub fn witness(&self) -> Option<&Permutation> {
        match self {
            Verdict::Distinguishing => None,
            Verdict::Preserved(p) => Some(p),
        }
    }

    fn from_search(found: Option<Permutation>) -> Self {
        found.map_or(Verdict::Distinguishing, Verdict::Preserved)
    }
}

pub fn is_distinguishing_vertex(
    t: &Tournament,
    labels: &VertexLabeling,
) -> Result<Verdict, SymmetryError> {
    let c = SearchConstraints::new()
        .preserving_vertices(labels)
        .nontrivial();
    find_automorphism(t, &c).map(Verdict::from_search)
}

pub fn is_distinguishing_arc(
    t: &Tournament,
    labels: &ArcLabeling,
) -> Result<Verdict, SymmetryError> {
    labels.check_against(t)?;
    let c = SearchConstraints::new()
        .preserving_arcs(labels)
        .nontrivial();
    find_automorphism(t, &c).map(Verdict::from_search)
}

/// Black on `class`, white on the rest.
pub fn class_to_labeling(
    t: &Tournament,
    class: &[usize],
) -> Result<VertexLabeling, TournamentError> {
    for &v in class {
        t.check_vertex(v)?;
    }
    Ok(VertexLabeling::from_black_set(t.order(), class))
}

/// The white labeling of `H_k`: white labelings on tertians 0 and 1, a
/// black labeling on tertian 2. `H_0` gets a single white vertex.
pub fn white_labeling(k: u32) -> VertexLabeling {
    hk_labeling(k, Color::White)
}

/// Dual of [`white_labeling`]: black labelings on tertians 0 and 1, a
/// white labeling on tertian 2.
pub fn black_labeling(k: u32) -> VertexLabeling {
    hk_labeling(k, Color::Black)
}

fn hk_labeling(k: u32, kind: Color) -> VertexLabeling {
    if k == 0 {
        return VertexLabeling::uniform(1, kind);
    }
    let same = hk_labeling(k - 1, kind);
    let other = hk_labeling(k - 1, kind.flip());
    let mut colors = Vec::with_capacity(3 * same.len());
    colors.extend_from_slice(same.colors());
    colors.extend_from_slice(same.colors());
    colors.extend_from_slice(other.colors());
    VertexLabeling { colors }
}

/// Does `labels` have the recursive white (`Color::White`) or black shape
/// on `H_k`, with the minority tertian in any position?
pub fn has_hk_shape(k: u32, labels: &VertexLabeling, kind: Color) -> bool {
    if labels.len() != 3usize.pow(k) {
        return false;
    }
    if k == 0 {
        return labels.color(0) == kind;
    }
    let idx = HkIndex::new(k).expect("order already matched");
    let parts: Vec<VertexLabeling> = (0..3).map(|i| labels.slice(idx.tertian_range(i))).collect();
    let same = parts
        .iter()
        .filter(|p| has_hk_shape(k - 1, p, kind))
        .count();
    let other = parts
        .iter()
        .filter(|p| has_hk_shape(k - 1, p, kind.flip()))
        .count();
    same == 2 && other == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hk_labelings_by_hand() {
        assert_eq!(white_labeling(0).colors(), &[Color::White]);
        assert_eq!(black_labeling(0).colors(), &[Color::Black]);
        let w1 = white_labeling(1);
        assert_eq!(w1.colors(), &[Color::White, Color::White, Color::Black]);
        let w2 = white_labeling(2);
        assert_eq!(w2.black_count(), 4);
        assert_eq!(w2.len() - w2.black_count(), 5);
    }

    #[test]
    fn black_counts_follow_the_recursion() {
        // b_w(k) = 2 b_w(k-1) + b_b(k-1), b_b(k) = 2 b_b(k-1) + b_w(k-1)
        let (mut bw, mut bb) = (0usize, 1usize);
        for k in 0..=6u32 {
            let n = 3usize.pow(k);
            assert_eq!(white_labeling(k).black_count(), bw);
            assert_eq!(black_labeling(k).black_count(), bb);
            assert_eq!(bw, (n - 1) / 2);
            assert_eq!(bb, n.div_ceil(2));
            (bw, bb) = (2 * bw + bb, 2 * bb + bw);
        }
    }

    #[test]
    fn shape_checker() {
        for k in 0..=3 {
            assert!(has_hk_shape(k, &white_labeling(k), Color::White));
            assert!(has_hk_shape(k, &black_labeling(k), Color::Black));
        }
        // minority tertian moved to the front is still a white labeling
        let mut colors = Vec::new();
        colors.extend_from_slice(black_labeling(1).colors());
        colors.extend_from_slice(white_labeling(1).colors());
        colors.extend_from_slice(white_labeling(1).colors());
        assert!(has_hk_shape(2, &VertexLabeling::new(colors), Color::White));
        assert!(!has_hk_shape(
            2,
            &VertexLabeling::uniform(9, Color::White),
            Color::White
        ));
    }

    #[test]
    fn vertex_verdicts() {
        let tr = Tournament::transitive(5);
        assert!(
            is_distinguishing_vertex(&tr, &VertexLabeling::uniform(5, Color::White))
                .unwrap()
                .is_distinguishing()
        );
        let c3 = Tournament::hk(1).unwrap();
        let v = is_distinguishing_vertex(&c3, &VertexLabeling::uniform(3, Color::White)).unwrap();
        assert_eq!(v.witness().unwrap().images(), &[1, 2, 0]);
        let h2 = Tournament::hk(2).unwrap();
        assert!(is_distinguishing_vertex(&h2, &white_labeling(2))
            .unwrap()
            .is_distinguishing());
        let l = class_to_labeling(&c3, &[0]).unwrap();
        assert!(is_distinguishing_vertex(&c3, &l)
            .unwrap()
            .is_distinguishing());
    }

    #[test]
    fn arc_verdicts() {
        let c3 = Tournament::hk(1).unwrap();
        assert!(
            is_distinguishing_arc(&c3, &ArcLabeling::from_arcs([(0, 1)]))
                .unwrap()
                .is_distinguishing()
        );
        let v = is_distinguishing_arc(&c3, &ArcLabeling::new()).unwrap();
        assert_eq!(v.witness().unwrap().images(), &[1, 2, 0]);
        assert_eq!(
            is_distinguishing_arc(&c3, &ArcLabeling::from_arcs([(2, 1)])).unwrap_err(),
            SymmetryError::NotAnArc(2, 1)
        );
    }

    #[test]
    fn class_labelings() {
        let t = Tournament::random(5, 1).unwrap();
        assert_eq!(class_to_labeling(&t, &[]).unwrap().black_count(), 0);
        assert_eq!(
            class_to_labeling(&t, &[0, 1, 2, 3, 4])
                .unwrap()
                .black_count(),
            5
        );
        assert!(class_to_labeling(&t, &[7]).is_err());
    }
}
