//! Re-checkable result records.
//!
//! A certificate is a list of `key: value` lines. It pins the input by the
//! SHA-256 of its `.trn` rendering, so a stored witness can be replayed
//! against the same tournament later.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::format::render_trn;
use crate::search::{Minimum, Quantity, SearchStats};
use crate::tournament::Tournament;

pub fn input_sha256(t: &Tournament) -> String {
    hex::encode(Sha256::digest(render_trn(t).as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    fields: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(t: &Tournament) -> Self {
        let mut c = Self::default();
        c.push("input_sha256", input_sha256(t));
        c.push("order", t.order().to_string());
        c
    }

    /// Certificate for an exact (or best-found) minimum.
    pub fn for_minimum<W: WitnessText>(t: &Tournament, quantity: Quantity, m: &Minimum<W>) -> Self {
        let mut c = Self::new(t);
        c.push("quantity", quantity.to_string());
        c.push("value", m.value.to_string());
        c.push("exact", m.exact.to_string());
        c.push("witness", m.witness.witness_text());
        c.push_stats(&m.stats);
        c
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let key = key.into();
        debug_assert!(!key.contains(':') && !key.contains('\n'));
        let value: String = value.into();
        debug_assert!(!value.contains('\n'));
        self.fields.push((key, value));
    }

    pub fn push_stats(&mut self, stats: &SearchStats) {
        for l in &stats.levels {
            self.push(
                format!("level.{}", l.size),
                format!("examined={} pruned={}", l.examined, l.pruned),
            );
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    /// Whether this certificate was issued for `t`.
    pub fn matches(&self, t: &Tournament) -> bool {
        self.get("input_sha256") == Some(input_sha256(t).as_str())
    }

    pub fn parse(text: &str) -> Option<Self> {
        let mut c = Self::default();
        for line in text.lines() {
            let (k, v) = line
                .split_once(": ")
                .or_else(|| line.strip_suffix(':').map(|k| (k, "")))?;
            c.fields.push((k.to_string(), v.to_string()));
        }
        Some(c)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            if v.is_empty() {
                writeln!(f, "{k}:")?;
            } else {
                writeln!(f, "{k}: {v}")?;
            }
        }
        Ok(())
    }
}

/// Single-line rendering of a witness: vertex ids, or `u>v` arcs.
pub trait WitnessText {
    fn witness_text(&self) -> String;
}

impl WitnessText for Vec<usize> {
    fn witness_text(&self) -> String {
        self.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl WitnessText for Vec<(usize, usize)> {
    fn witness_text(&self) -> String {
        self.iter()
            .map(|(u, v)| format!("{u}>{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{det_exact, SearchBudget};

    #[test]
    fn round_trip() {
        let h2 = Tournament::hk(2).unwrap();
        let m = det_exact(&h2, &SearchBudget::unlimited()).unwrap();
        let c = Certificate::for_minimum(&h2, Quantity::Det, &m);
        let text = c.to_string();
        assert!(text.contains("quantity: det\nvalue: 3\nexact: true\nwitness: 0 3 6\n"));
        let back = Certificate::parse(&text).unwrap();
        assert_eq!(back, c);
        assert!(back.matches(&h2));
        assert!(!back.matches(&Tournament::transitive(9)));
    }

    #[test]
    fn hash_is_stable() {
        let t = Tournament::hk(1).unwrap();
        assert_eq!(input_sha256(&t).len(), 64);
        assert_eq!(input_sha256(&t), input_sha256(&Tournament::hk(1).unwrap()));
    }
}
