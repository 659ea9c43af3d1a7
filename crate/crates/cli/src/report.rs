use std::fmt::Write as _;

use distinguish_core::labeling::{is_distinguishing_arc, ArcLabeling};
use distinguish_core::search::{
    det_exact, is_determining_set, is_distinguishing_class, rho_exact, rho_prime_exact,
};
use distinguish_core::tournament::random_corpus;
use distinguish_core::{
    det_bound, rho_bound, rho_prime_bound, Exhaustion, SearchBudget, SearchError, Tournament,
};
use rayon::prelude::*;

pub struct Input {
    pub source: String,
    pub tournament: Tournament,
}

pub fn inputs(max_k: u32, random: usize, max_n: usize, seed: u64) -> Vec<Input> {
    let mut out: Vec<Input> = (0..=max_k)
        .map(|k| Input {
            source: format!("H_{k}"),
            tournament: Tournament::hk(k).expect("depth checked by caller"),
        })
        .collect();
    if random > 0 {
        out.extend(
            random_corpus(random, 1, max_n, seed)
                .into_iter()
                .map(|e| Input {
                    source: format!("random:{}", e.seed),
                    tournament: e.tournament,
                }),
        );
    }
    out
}

/// Exact value, or a lower bound when the budget ran out.
enum Cell {
    Exact { value: usize, verified: bool },
    AtLeast(usize),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Exact { value, .. } => value.to_string(),
            Cell::AtLeast(l) => format!(">={l}"),
        }
    }

    fn within(&self, bound: usize) -> Option<bool> {
        match self {
            Cell::Exact { value, verified } => Some(*verified && *value <= bound),
            Cell::AtLeast(l) => (*l > bound).then_some(false),
        }
    }
}

fn cell<W>(
    r: Result<distinguish_core::Minimum<W>, SearchError>,
    check: impl FnOnce(&W) -> bool,
) -> Result<Cell, SearchError> {
    match r {
        Ok(m) => Ok(Cell::Exact {
            value: m.value,
            verified: m.exact && check(&m.witness),
        }),
        Err(SearchError::BudgetExhausted { lower_bound, .. }) => Ok(Cell::AtLeast(lower_bound)),
        Err(e) => Err(e),
    }
}

pub struct Row {
    n: usize,
    source: String,
    rho: Cell,
    det: Cell,
    rho_prime: Cell,
}

impl Row {
    fn verified(&self) -> &'static str {
        let checks = [
            self.rho.within(rho_bound(self.n)),
            self.det.within(det_bound(self.n)),
            self.rho_prime.within(rho_prime_bound(self.n)),
        ];
        if checks.contains(&Some(false)) {
            "no"
        } else if checks.contains(&None) {
            "partial"
        } else {
            "yes"
        }
    }

    pub fn is_violation(&self) -> bool {
        self.verified() == "no"
    }
}

fn row(input: &Input, budget: &SearchBudget, module_filter: bool) -> Result<Row, SearchError> {
    let t = &input.tournament;
    // an inexact cell would be a fallback witness, not a minimum
    let budget = &SearchBudget {
        on_exhaustion: Exhaustion::Fail,
        ..*budget
    };
    let rho = cell(rho_exact(t, budget), |w| {
        is_distinguishing_class(t, w).unwrap_or(false)
    })?;
    let det = cell(det_exact(t, budget), |w| {
        is_determining_set(t, w).unwrap_or(false)
    })?;
    let rho_prime = cell(rho_prime_exact(t, budget, module_filter), |w| {
        is_distinguishing_arc(t, &ArcLabeling::from_arcs(w.iter().copied()))
            .is_ok_and(|v| v.is_distinguishing())
    })?;
    Ok(Row {
        n: t.order(),
        source: input.source.clone(),
        rho,
        det,
        rho_prime,
    })
}

/// Rows come back in input order whatever order the workers finish in.
pub fn rows(
    inputs: &[Input],
    budget: &SearchBudget,
    module_filter: bool,
) -> Result<Vec<Row>, SearchError> {
    inputs
        .par_iter()
        .map(|i| row(i, budget, module_filter))
        .collect()
}

const HEADER: [&str; 9] = [
    "n",
    "source",
    "rho",
    "rho_bound",
    "det",
    "det_bound",
    "rho_prime",
    "rho_prime_bound",
    "verified",
];

fn fields(r: &Row) -> [String; 9] {
    [
        r.n.to_string(),
        r.source.clone(),
        r.rho.text(),
        rho_bound(r.n).to_string(),
        r.det.text(),
        det_bound(r.n).to_string(),
        r.rho_prime.text(),
        rho_prime_bound(r.n).to_string(),
        r.verified().to_string(),
    ]
}

pub fn render(rows: &[Row], csv: bool) -> String {
    let table: Vec<[String; 9]> = std::iter::once(HEADER.map(String::from))
        .chain(rows.iter().map(fields))
        .collect();
    let mut out = String::new();
    if csv {
        for line in &table {
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        return out;
    }
    let widths: Vec<usize> = (0..9)
        .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for line in &table {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (s, &w))| {
                if c == 1 {
                    format!("{s:<w$}")
                } else {
                    format!("{s:>w$}")
                }
            })
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    out
}
