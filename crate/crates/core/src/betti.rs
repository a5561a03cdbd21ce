//! Betti numbers of Stanley-Reisner rings.
//!
//! Two independent routes build the same finely graded table for a matroid:
//! [`betti_fine_hochster`] computes reduced homology of every restriction,
//! and [`betti_fine_matroid`] reads the table off the nullity function and
//! the reduced Euler characteristic of restrictions, with no homology.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::finfield::PrimeField;
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Finely graded Betti numbers `β_{i,σ}`; zero entries are not stored.
#[derive(Debug, Clone)]
pub struct BettiTable {
    ground: usize,
    fine: BTreeMap<(usize, Subset), u64>,
    graded: OnceLock<BTreeMap<(usize, usize), u64>>,
}

impl PartialEq for BettiTable {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.fine == other.fine
    }
}

impl Eq for BettiTable {}

impl BettiTable {
    pub fn new(ground: usize, fine: BTreeMap<(usize, Subset), u64>) -> Self {
        let fine = fine.into_iter().filter(|&(_, b)| b != 0).collect();
        BettiTable {
            ground,
            fine,
            graded: OnceLock::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    /// `β_{i,σ}`.
    pub fn get(&self, i: usize, sigma: Subset) -> u64 {
        self.fine.get(&(i, sigma)).copied().unwrap_or(0)
    }

    pub fn fine(&self) -> &BTreeMap<(usize, Subset), u64> {
        &self.fine
    }

    /// `β_{i,d} = Σ_{|σ| = d} β_{i,σ}`.
    pub fn graded(&self) -> &BTreeMap<(usize, usize), u64> {
        self.graded.get_or_init(|| {
            let mut out = BTreeMap::new();
            for (&(i, sigma), &b) in &self.fine {
                *out.entry((i, sigma.len())).or_insert(0) += b;
            }
            out
        })
    }

    pub fn graded_entry(&self, i: usize, d: usize) -> u64 {
        self.graded().get(&(i, d)).copied().unwrap_or(0)
    }

    /// `β_0, β_1, ..` up to the last nonzero homological degree.
    pub fn global(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.length().map_or(0, |l| l + 1)];
        for (&(i, _), &b) in self.graded() {
            out[i] += b;
        }
        out
    }

    /// Largest homological degree with a nonzero entry.
    pub fn length(&self) -> Option<usize> {
        self.fine.keys().map(|&(i, _)| i).max()
    }

    /// Total degrees carrying nonzero entries in homological degree `i`.
    pub fn degrees_in(&self, i: usize) -> Vec<usize> {
        self.graded()
            .keys()
            .filter(|&&(j, _)| j == i)
            .map(|&(_, d)| d)
            .collect()
    }

    pub fn diagram(&self) -> BettiDiagram {
        BettiDiagram::from_table(self)
    }

    pub fn to_json(&self, include_fine: bool) -> String {
        let mut fine: Vec<FineEntry> = self
            .fine
            .iter()
            .map(|(&(i, sigma), &beta)| FineEntry {
                i,
                sigma: sigma.to_one_based(),
                beta,
            })
            .collect();
        fine.sort_by(|a, b| (a.i, a.sigma.len(), &a.sigma).cmp(&(b.i, b.sigma.len(), &b.sigma)));
        let doc = TableJson {
            n: self.ground,
            fine: include_fine.then_some(fine),
            graded: self
                .graded()
                .iter()
                .map(|(&(i, d), &b)| [i as u64, d as u64, b])
                .collect(),
            global: self.global(),
        };
        serde_json::to_string(&doc).expect("table serializes")
    }

    /// Reads a table written by [`to_json`](Self::to_json) with the fine
    /// entries included.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableJson = serde_json::from_str(text)
            .map_err(|e| Error::Inconsistent(format!("bad table JSON: {e}")))?;
        let entries = doc
            .fine
            .ok_or_else(|| Error::Inconsistent("table JSON lacks fine entries".into()))?;
        let mut fine = BTreeMap::new();
        for e in entries {
            if let Some(&bad) = e.sigma.iter().find(|&&x| x == 0 || x > doc.n) {
                return Err(Error::ElementOutOfRange {
                    element: bad,
                    ground: doc.n,
                });
            }
            fine.insert((e.i, Subset::from_one_based(&e.sigma)), e.beta);
        }
        let table = BettiTable::new(doc.n, fine);
        let graded: Vec<[u64; 3]> = table
            .graded()
            .iter()
            .map(|(&(i, d), &b)| [i as u64, d as u64, b])
            .collect();
        if graded != doc.graded || table.global() != doc.global {
            return Err(Error::Inconsistent(
                "graded or global view disagrees with fine entries".into(),
            ));
        }
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
struct FineEntry {
    i: usize,
    sigma: Vec<usize>,
    beta: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    fine: Option<Vec<FineEntry>>,
    graded: Vec<[u64; 3]>,
    global: Vec<u64>,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::GroundTooLarge { n, cap });
    }
    Ok(())
}

/// Hochster's formula: `β_{i,σ} = h̃_{|σ|-i-1}(Δ_σ)` for every `σ`.
pub fn betti_fine_hochster(
    complex: &SimplicialComplex,
    field: PrimeField,
    cap: usize,
) -> Result<BettiTable> {
    let n = complex.ground_size();
    check_cap(n, cap)?;
    let fine = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let sigma = Subset(mask);
            let h = complex.restrict(sigma).reduced_homology(field);
            let mut part = Vec::new();
            for i in 0..=sigma.len() {
                let b = h.get(sigma.len() as isize - i as isize - 1);
                if b != 0 {
                    part.push(((i, sigma), b as u64));
                }
            }
            part
        })
        .flatten()
        .collect();
    Ok(BettiTable::new(n, fine))
}

/// The matroid route: `β_{i,σ}` is nonzero exactly when `σ` is a union of
/// circuits with nullity `i`, and then equals `(-1)^{r(σ)-1} χ̃(M_σ)`.
pub fn betti_fine_matroid(m: &Matroid, cap: usize) -> Result<BettiTable> {
    let n = m.ground_size();
    check_cap(n, cap)?;
    let size = 1usize << n;
    let ranks = m.rank_table();

    // Signed indicator of independent sets, summed over submasks: χ̃(M_σ).
    let mut chi: Vec<i64> = (0..size)
        .map(|mask| {
            let len = mask.count_ones() as usize;
            match (ranks[mask] as usize == len, len % 2) {
                (false, _) => 0,
                (true, 0) => -1,
                (true, _) => 1,
            }
        })
        .collect();
    // Union of the circuits contained in each mask.
    let mut covered: Vec<u64> = vec![0; size];
    for &c in m.circuits() {
        covered[c.bits() as usize] = c.bits();
    }
    for bit in 0..n {
        let step = 1usize << bit;
        for mask in 0..size {
            if mask & step != 0 {
                chi[mask] += chi[mask ^ step];
                covered[mask] |= covered[mask ^ step];
            }
        }
    }

    let mut fine = BTreeMap::new();
    for mask in 0..size {
        if covered[mask] != mask as u64 {
            continue;
        }
        let sigma = Subset(mask as u64);
        let r = ranks[mask] as usize;
        let beta = if r % 2 == 1 { chi[mask] } else { -chi[mask] };
        if beta <= 0 {
            return Err(Error::Inconsistent(format!(
                "union of circuits {sigma} has Betti number {beta}"
            )));
        }
        fine.insert((sigma.len() - r, sigma), beta as u64);
    }
    Ok(BettiTable::new(n, fine))
}

/// Betti diagram: `β_{i,d}` sits in column `i`, row `d - i`; column 0 is
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiDiagram {
    columns: usize,
    rows: BTreeMap<usize, BTreeMap<usize, u64>>,
}

impl BettiDiagram {
    pub fn from_table(table: &BettiTable) -> Self {
        let mut rows: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
        let mut columns = 0;
        for (&(i, d), &b) in table.graded() {
            if i == 0 {
                continue;
            }
            columns = columns.max(i);
            rows.entry(d - i).or_default().insert(i, b);
        }
        BettiDiagram { columns, rows }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Row labels present in the diagram.
    pub fn row_labels(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Entries of row `label` for columns `1..=columns`, zero where blank.
    pub fn row(&self, label: usize) -> Vec<u64> {
        let row = self.rows.get(&label);
        (1..=self.columns)
            .map(|i| row.and_then(|r| r.get(&i)).copied().unwrap_or(0))
            .collect()
    }

    /// A single row means the resolution is linear.
    pub fn is_linear(&self) -> bool {
        self.rows.len() <= 1
    }
}

impl fmt::Display for BettiDiagram {
    /// Left-aligned cells padded to the widest entry of each column; blank
    /// for zeros; trailing spaces trimmed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label_width = self
            .rows
            .keys()
            .map(|l| l.to_string().len())
            .max()
            .unwrap_or(1);
        let widths: Vec<usize> = (1..=self.columns)
            .map(|i| {
                self.rows
                    .values()
                    .filter_map(|r| r.get(&i))
                    .map(|b| b.to_string().len())
                    .chain(std::iter::once(i.to_string().len()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let render = |cells: Vec<String>| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join(" ")
                .trim_end()
                .to_string()
        };
        let header = render((1..=self.columns).map(|i| i.to_string()).collect());
        let head = format!("{} | {}", " ".repeat(label_width), header);
        writeln!(f, "{}", head.trim_end())?;
        let rule = widths.iter().sum::<usize>() + widths.len().saturating_sub(1);
        writeln!(f, "{}-+-{}", "-".repeat(label_width), "-".repeat(rule))?;
        for (label, row) in &self.rows {
            let cells = (1..=self.columns)
                .map(|i| row.get(&i).map(|b| b.to_string()).unwrap_or_default())
                .collect();
            let line = format!("{label:>label_width$} | {}", render(cells));
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}
