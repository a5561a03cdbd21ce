//! Independent oracles shared by the integration tests. Everything here is
//! computed from the rank function alone, by exhaustive enumeration.

#![allow(dead_code)]

use std::path::PathBuf;

use hamming_betti::cli::parse_input;
use hamming_betti::subset::all_subsets;
use hamming_betti::{FieldMatrix, Matroid, PrimeField, Subset};
use rand::Rng;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

pub fn corpus(name: &str) -> Matroid {
    let text = std::fs::read_to_string(corpus_path(name)).expect("corpus file");
    parse_input(&text)
        .expect("corpus parses")
        .into_matroid()
        .expect("corpus is a matroid")
}

pub fn set(labels: &[usize]) -> Subset {
    Subset::from_one_based(labels)
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Minimal dependent sets, found by testing every subset.
pub fn circuits_oracle(m: &Matroid) -> Vec<Subset> {
    let mut out: Vec<Subset> = all_subsets(m.ground_size())
        .filter(|&s| m.rank(s) < s.len() && s.iter().all(|x| m.rank(s.without(x)) == s.len() - 1))
        .collect();
    out.sort_by_key(|s| s.display_key());
    out
}

/// d_i = min |s| over subsets of nullity i, for i = 1..=k.
pub fn weights_oracle(n: usize, rank: impl Fn(Subset) -> usize) -> Vec<usize> {
    let k = n - rank(Subset::full(n));
    let mut d = vec![usize::MAX; k];
    for s in all_subsets(n) {
        let null = s.len() - rank(s);
        for slot in d.iter_mut().take(null) {
            *slot = (*slot).min(s.len());
        }
    }
    d
}

pub fn dual_rank(m: &Matroid, s: Subset) -> usize {
    let n = m.ground_size();
    s.len() + m.rank(s.complement(n)) - m.full_rank()
}

/// Elements lying in some circuit, counted as those whose removal keeps
/// the rank.
pub fn support_oracle(m: &Matroid) -> usize {
    let full = Subset::full(m.ground_size());
    (0..m.ground_size())
        .filter(|&x| m.rank(full.without(x)) == m.full_rank())
        .count()
}

/// h-vector of the independence complex from the face counts.
pub fn h_vector_oracle(m: &Matroid) -> Vec<i64> {
    let r = m.full_rank();
    let mut f = vec![0i64; r + 1];
    for s in all_subsets(m.ground_size()).filter(|&s| m.rank(s) == s.len()) {
        f[s.len()] += 1;
    }
    (0..=r)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom((r - i) as u64, (k - i) as u64) as i64 * f[i]
                })
                .sum()
        })
        .collect()
}

/// Largest family of circuits inside `sigma` in which each member owns an
/// element outside all other members. Depth-first over valid families; a
/// new member needs a private element outside the current union, which
/// bounds how far a branch can grow.
pub fn max_nonredundant(circuits: &[Subset], sigma: Subset) -> usize {
    let inside: Vec<Subset> = circuits
        .iter()
        .copied()
        .filter(|c| c.is_subset_of(sigma))
        .collect();

    fn valid(family: &[Subset]) -> bool {
        (0..family.len()).all(|a| {
            let others = family
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .fold(Subset::EMPTY, |u, (_, &c)| u.union(c));
            !family[a].difference(others).is_empty()
        })
    }

    fn search(
        inside: &[Subset],
        start: usize,
        sigma: Subset,
        family: &mut Vec<Subset>,
        best: &mut usize,
    ) {
        *best = (*best).max(family.len());
        let union = family.iter().fold(Subset::EMPTY, |u, &c| u.union(c));
        if family.len() + sigma.difference(union).len() <= *best {
            return;
        }
        for j in start..inside.len() {
            if inside[j].difference(union).is_empty() {
                continue;
            }
            family.push(inside[j]);
            if valid(family) {
                search(inside, j + 1, sigma, family, best);
            }
            family.pop();
        }
    }

    let mut best = 0;
    search(&inside, 0, sigma, &mut Vec::new(), &mut best);
    best
}

/// Random matrix over GF(p) with `n` columns and between 1 and n rows.
pub fn random_matrix(rng: &mut impl Rng, p: u64, n: usize) -> FieldMatrix {
    let field = PrimeField::new(p).expect("prime");
    let rows = rng.gen_range(1..=n);
    let entries: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect())
        .collect();
    FieldMatrix::from_rows(field, n, &entries).expect("shape")
}
