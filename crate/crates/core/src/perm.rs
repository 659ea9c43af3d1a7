use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image list is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("malformed permutation text: {0}")]
    Syntax(String),
}

/// A bijection on `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, PermutationError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(PermutationError::NotBijection(n));
            }
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(image.clone()).is_ok());
        Permutation { image }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermutationError> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n || std::mem::replace(&mut touched[x], true) {
                    return Err(PermutationError::NotBijection(n));
                }
                image[x] = c[(i + 1) % c.len()];
            }
        }
        Permutation::new(image)
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    /// Non-trivial cycles, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// Cycle notation such as `(0 1 2)(3 4)`; the identity renders as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", items.join(" "))
            })
            .collect()
    }

    /// Parses either a space-separated image list or cycle notation. Cycle
    /// notation needs the degree `n`, since fixed points are omitted.
    pub fn parse(text: &str, n: usize) -> Result<Self, PermutationError> {
        let text = text.trim();
        if text.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = text;
            while !rest.is_empty() {
                let body = rest
                    .strip_prefix('(')
                    .ok_or_else(|| PermutationError::Syntax(format!("expected '(' at {rest:?}")))?;
                let close = body
                    .find(')')
                    .ok_or_else(|| PermutationError::Syntax("unclosed cycle".into()))?;
                let cycle = body[..close]
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| PermutationError::Syntax(format!("bad vertex {s:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                rest = body[close + 1..].trim_start();
            }
            Permutation::from_cycles(n, &cycles)
        } else {
            let image = text
                .split_whitespace()
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| PermutationError::Syntax(format!("bad image {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if image.len() != n {
                return Err(PermutationError::Syntax(format!(
                    "expected {n} images, found {}",
                    image.len()
                )));
            }
            Permutation::new(image)
        }
    }
}

/// Space-separated image list.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
