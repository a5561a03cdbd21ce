//! Generalized Hamming weights of a matroid and the invariants read off
//! alongside them: support, MDS profile, Whitney polynomial, Clifford index.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::betti::{betti_fine_matroid, BettiTable};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{all_subsets, Subset};

/// `d_i = min{ d : β_{i,d} ≠ 0 }` for `i = 1..=k`.
pub fn weights_from_betti(table: &BettiTable, k: usize) -> Result<Vec<usize>> {
    (1..=k)
        .map(|i| {
            table.degrees_in(i).first().copied().ok_or_else(|| {
                Error::Inconsistent(format!("no Betti number in homological degree {i} <= {k}"))
            })
        })
        .collect()
}

/// `d_i = min{ |σ| : n(σ) = i }`, by sweeping every subset.
pub fn weights_bruteforce(m: &Matroid) -> Vec<usize> {
    let k = m.corank();
    let mut best = vec![usize::MAX; k + 1];
    for sigma in all_subsets(m.ground_size()) {
        let i = m.nullity(sigma);
        best[i] = best[i].min(sigma.len());
    }
    best.into_iter().skip(1).collect()
}

/// Number of coordinates covered by some circuit.
pub fn support_size(m: &Matroid) -> usize {
    m.circuits().support().len()
}

/// Outcome of checking Wei duality between a matroid and its dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeiDuality {
    /// `{d_i}` and `{n + 1 - d*_j}` partition `{1, .., n}`.
    Holds,
    Fails {
        weights: Vec<usize>,
        dual_weights: Vec<usize>,
    },
    /// The partition failed on a matroid with loops or isthmuses.
    NotApplicable,
}

impl WeiDuality {
    pub fn holds(&self) -> bool {
        matches!(self, WeiDuality::Holds)
    }
}

pub fn wei_duality_check(m: &Matroid) -> WeiDuality {
    let n = m.ground_size();
    let weights = weights_bruteforce(m);
    let dual_weights = weights_bruteforce(&m.dual());
    let mut seen = vec![false; n + 1];
    let mut ok = true;
    let complements = dual_weights.iter().map(|&d| n + 1 - d);
    for v in weights.iter().copied().chain(complements) {
        if v == 0 || v > n || seen[v] {
            ok = false;
            break;
        }
        seen[v] = true;
    }
    ok &= seen.iter().skip(1).all(|&b| b);
    if ok {
        WeiDuality::Holds
    } else {
        let (loops, isthmuses) = m.loops_and_isthmuses();
        if loops.is_empty() && isthmuses.is_empty() {
            WeiDuality::Fails {
                weights,
                dual_weights,
            }
        } else {
            WeiDuality::NotApplicable
        }
    }
}

/// MDS diagnostics for a matroid and its own Betti table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdsProfile {
    /// Smallest `h` with `d_i = n - k + i` for all `i >= h`.
    pub mds_level: Option<usize>,
    /// Smallest `h` such that columns `h..=k` of the Betti diagram share one
    /// row.
    pub linear_tail_from: Option<usize>,
    /// Whether every column `i >= h` lies exactly in total degree
    /// `n - k + i`, for `h = mds_level` (or the linear tail when not MDS).
    pub tail_in_singleton_row: bool,
    pub isthmus_free: bool,
    /// 1-based isthmuses.
    pub isthmuses: Vec<usize>,
    /// For MDS matroids: whether the Alexander dual complex is a matroid.
    pub alexander_dual_is_matroid: Option<bool>,
}

impl MdsProfile {
    pub fn is_mds(&self) -> bool {
        self.mds_level == Some(1)
    }
}

pub fn mds_profile(m: &Matroid, table: &BettiTable) -> Result<MdsProfile> {
    let n = m.ground_size();
    let k = m.corank();
    let r = n - k;
    let weights = weights_from_betti(table, k)?;
    let mds_level = (1..=k).find(|&h| (h..=k).all(|i| weights[i - 1] == r + i));

    let row_of = |i: usize| -> Option<usize> {
        match table.degrees_in(i).as_slice() {
            [d] => Some(d - i),
            _ => None,
        }
    };
    let linear_tail_from = (1..=k).find(|&h| {
        let rows: Option<Vec<usize>> = (h..=k).map(row_of).collect();
        rows.is_some_and(|rows| rows.windows(2).all(|w| w[0] == w[1]))
    });
    let tail_in_singleton_row = match mds_level.or(linear_tail_from) {
        Some(h) => (h..=k).all(|i| table.degrees_in(i) == vec![r + i]),
        None => false,
    };
    let isthmuses = m.isthmuses();
    let alexander_dual_is_matroid = (mds_level == Some(1)).then(|| {
        SimplicialComplex::independence_complex(m)
            .alexander_dual()
            .is_matroid()
    });
    Ok(MdsProfile {
        mds_level,
        linear_tail_from,
        tail_in_singleton_row,
        isthmus_free: isthmuses.is_empty(),
        isthmuses: isthmuses.to_one_based(),
        alexander_dual_is_matroid,
    })
}

/// `W(x, y) = Σ_X x^{r(E) - r(X)} y^{|X| - r(X)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitneyPolynomial {
    coefficients: BTreeMap<(usize, usize), u64>,
}

impl WhitneyPolynomial {
    /// Coefficient of `x^ex y^ey`.
    pub fn coefficient(&self, ex: usize, ey: usize) -> u64 {
        self.coefficients.get(&(ex, ey)).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.coefficients
    }

    pub fn total(&self) -> u64 {
        self.coefficients.values().sum()
    }

    /// Coefficients of `W(x, 0)`, indexed by the power of `x`.
    pub fn x_part(&self) -> Vec<u64> {
        let top = self
            .coefficients
            .keys()
            .map(|&(ex, _)| ex)
            .max()
            .unwrap_or(0);
        (0..=top).map(|ex| self.coefficient(ex, 0)).collect()
    }

    /// Terms ordered by descending power of `x`, then of `y`.
    pub fn terms(&self) -> Vec<(usize, usize, u64)> {
        self.coefficients
            .iter()
            .rev()
            .map(|(&(ex, ey), &c)| (ex, ey, c))
            .collect()
    }
}

impl fmt::Display for WhitneyPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |var: &str, e: usize| match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        let terms: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(ex, ey, c)| {
                let mono = format!("{}{}", power("x", ex), power("y", ey));
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

pub fn whitney_polynomial(m: &Matroid) -> WhitneyPolynomial {
    let full = m.full_rank();
    let mut coefficients = BTreeMap::new();
    for x in all_subsets(m.ground_size()) {
        let r = m.rank(x);
        *coefficients.entry((full - r, x.len() - r)).or_insert(0) += 1;
    }
    WhitneyPolynomial { coefficients }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliffordGonality {
    /// `t`-gonality for `t = 1..=k`, equal to `d_t`.
    pub gonality: Vec<usize>,
    /// `min{ d_i - 2i : d_i <= r - 2 + i }`, absent when no `i` qualifies.
    pub clifford: Option<i64>,
}

pub fn clifford_and_gonality(m: &Matroid, weights: &[usize]) -> CliffordGonality {
    let r = m.full_rank() as i64;
    let clifford = weights
        .iter()
        .enumerate()
        .map(|(j, &d)| (j as i64 + 1, d as i64))
        .filter(|&(i, d)| d <= r - 2 + i)
        .map(|(i, d)| d - 2 * i)
        .min();
    CliffordGonality {
        gonality: weights.to_vec(),
        clifford,
    }
}

/// Everything reported by the `weights` family of commands.
#[derive(Debug, Clone)]
pub struct WeightReport {
    pub n: usize,
    pub k: usize,
    pub weights: Vec<usize>,
    pub support_size: usize,
    pub mds: MdsProfile,
    pub is_degenerate: bool,
    pub whitney: WhitneyPolynomial,
    pub clifford: CliffordGonality,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    n: usize,
    k: usize,
    weights: &'a [usize],
    support: usize,
    mds_level: Option<usize>,
    degenerate: bool,
    whitney: Vec<[u64; 3]>,
    clifford: Option<i64>,
    gonality: &'a [usize],
}

impl WeightReport {
    /// Builds the report with weights read from the fast-path Betti table.
    pub fn build(m: &Matroid, cap: usize) -> Result<Self> {
        let table = betti_fine_matroid(m, cap)?;
        let k = m.corank();
        let weights = weights_from_betti(&table, k)?;
        let mds = mds_profile(m, &table)?;
        let clifford = clifford_and_gonality(m, &weights);
        Ok(WeightReport {
            n: m.ground_size(),
            k,
            support_size: support_size(m),
            is_degenerate: !mds.isthmus_free,
            whitney: whitney_polynomial(m),
            weights,
            mds,
            clifford,
        })
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            n: self.n,
            k: self.k,
            weights: &self.weights,
            support: self.support_size,
            mds_level: self.mds.mds_level,
            degenerate: self.is_degenerate,
            whitney: self
                .whitney
                .terms()
                .into_iter()
                .map(|(ex, ey, c)| [ex as u64, ey as u64, c])
                .collect(),
            clifford: self.clifford.clifford,
            gonality: &self.clifford.gonality,
        };
        serde_json::to_string(&doc).expect("report serializes")
    }
}

/// Direct evaluation of the Clifford index over subsets:
/// `min{ |A| - 2 n(A) : n(A) >= 1, |A| <= n(A) + r - 2 }`.
pub fn clifford_bruteforce(m: &Matroid) -> Option<i64> {
    let r = m.full_rank() as i64;
    all_subsets(m.ground_size())
        .filter_map(|a| {
            let na = m.nullity(a) as i64;
            let size = a.len() as i64;
            (na >= 1 && size <= na + r - 2).then_some(size - 2 * na)
        })
        .min()
}

/// Elements of `m` in no circuit, as a subset.
pub fn uncovered(m: &Matroid) -> Subset {
    m.ground().difference(m.circuits().support())
}
