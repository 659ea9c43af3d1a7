//! Brute-force oracles. Nothing here calls the refinement search.
#![allow(dead_code)]

use std::collections::BTreeSet;

use distinguish_core::Tournament;

/// Rearranges `p` into the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn preserves_arcs_of(t: &Tournament, p: &[usize]) -> bool {
    t.arcs().all(|(u, v)| t.has_arc(p[u], p[v]))
}

/// Every automorphism of `t` in lexicographic order of image sequences,
/// found by trying all `n!` bijections.
pub fn brute_automorphisms(t: &Tournament) -> Vec<Vec<usize>> {
    let n = t.order();
    let arcs: Vec<(usize, usize)> = t.arcs().collect();
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        if arcs.iter().all(|&(u, v)| t.has_arc(p[u], p[v])) {
            out.push(p.clone());
        }
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

pub fn fixes_setwise(p: &[usize], set: &[usize]) -> bool {
    let s: BTreeSet<usize> = set.iter().copied().collect();
    set.iter().all(|v| s.contains(&p[*v]))
}

pub fn fixes_pointwise(p: &[usize], set: &[usize]) -> bool {
    set.iter().all(|&v| p[v] == v)
}

pub fn preserves_arc_set(p: &[usize], black: &BTreeSet<(usize, usize)>) -> bool {
    black.iter().all(|&(u, v)| black.contains(&(p[u], p[v])))
}

/// Nontrivial automorphisms only.
pub fn nontrivial(auts: &[Vec<usize>]) -> impl Iterator<Item = &Vec<usize>> {
    auts.iter().filter(|p| !is_identity(p))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

pub fn brute_rho(t: &Tournament, auts: &[Vec<usize>]) -> usize {
    (0..=t.order())
        .find(|&k| {
            subsets_of_size(t.order(), k)
                .iter()
                .any(|s| nontrivial(auts).all(|p| !fixes_setwise(p, s)))
        })
        .unwrap()
}

pub fn brute_det(t: &Tournament, auts: &[Vec<usize>]) -> usize {
    (0..=t.order())
        .find(|&k| {
            subsets_of_size(t.order(), k)
                .iter()
                .any(|s| nontrivial(auts).all(|p| !fixes_pointwise(p, s)))
        })
        .unwrap()
}

pub fn brute_rho_prime(t: &Tournament, auts: &[Vec<usize>]) -> usize {
    let arcs: Vec<(usize, usize)> = t.arcs().collect();
    (0..=arcs.len())
        .find(|&k| {
            subsets_of_size(arcs.len(), k).iter().any(|s| {
                let black: BTreeSet<(usize, usize)> = s.iter().map(|&i| arcs[i]).collect();
                nontrivial(auts).all(|p| !preserves_arc_set(p, &black))
            })
        })
        .unwrap()
}

/// `x` relates differently to `a` and `b`.
pub fn separates(t: &Tournament, x: usize, a: usize, b: usize) -> bool {
    t.has_arc(x, a) != t.has_arc(x, b)
}

/// `T[a, b, c]`: a 3-cycle with block `i` replaced by `blocks[i]`.
pub fn c3_substitution(blocks: [&Tournament; 3]) -> Tournament {
    let sizes: Vec<usize> = blocks.iter().map(|b| b.order()).collect();
    let n: usize = sizes.iter().sum();
    let block_of = |v: usize| {
        let mut v = v;
        for (i, &s) in sizes.iter().enumerate() {
            if v < s {
                return (i, v);
            }
            v -= s;
        }
        unreachable!()
    };
    Tournament::from_fn(n, |u, v| {
        let (bu, lu) = block_of(u);
        let (bv, lv) = block_of(v);
        if bu == bv {
            blocks[bu].has_arc(lu, lv)
        } else {
            (bu + 1) % 3 == bv
        }
    })
}

/// Circulant on `n` (odd) vertices: `i -> j` iff `(j - i) mod n` lies in
/// `gaps`, which must contain exactly one of each `d`, `n - d`.
pub fn circulant(n: usize, gaps: &[usize]) -> Tournament {
    Tournament::from_fn(n, |i, j| gaps.contains(&((j + n - i) % n)))
}

/// Circulant whose gap set is picked by the bits of `mask`.
pub fn circulant_from_mask(n: usize, mask: u64) -> Tournament {
    let gaps: Vec<usize> = (1..=n / 2)
        .map(|d| if mask >> (d - 1) & 1 == 1 { d } else { n - d })
        .collect();
    circulant(n, &gaps)
}
