//! Simplicial complexes stored by their facets, with reduced homology over
//! a prime field.

use std::collections::{BTreeSet, HashMap};

use crate::finfield::{rank_dense, rank_gf2_bitrows, FieldMatrix, PrimeField};
use crate::matroid::Matroid;
use crate::subset::{all_subsets, Subset};

/// A simplicial complex on `{0, .., n-1}`, represented by its facets.
///
/// The facet list is an antichain sorted for display. An empty facet list
/// is the void complex (no faces at all); `[∅]` is the complex whose only
/// face is the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: usize,
    facets: Vec<Subset>,
}

/// Reduced Betti numbers `h̃_{-1}, h̃_0, .., h̃_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexDims {
    dims: Vec<usize>,
}

impl ChainComplexDims {
    /// `h̃_i` for `i >= -1`; zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.dims.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Dimensions starting at degree -1.
    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &h)| if k % 2 == 1 { h as i64 } else { -(h as i64) })
            .sum()
    }
}

fn maximal_only(mut sets: Vec<Subset>) -> Vec<Subset> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    sets.dedup();
    let mut kept: Vec<Subset> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset_of(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by_key(|s| s.display_key());
    kept
}

impl SimplicialComplex {
    /// The complex generated by `sets`; non-maximal members are dropped.
    pub fn from_facets(ground: usize, sets: Vec<Subset>) -> Self {
        let full = Subset::full(ground);
        debug_assert!(sets.iter().all(|s| s.is_subset_of(full)));
        SimplicialComplex {
            ground,
            facets: maximal_only(sets.into_iter().map(|s| s.intersection(full)).collect()),
        }
    }

    /// The void complex, with no faces.
    pub fn void(ground: usize) -> Self {
        SimplicialComplex {
            ground,
            facets: Vec::new(),
        }
    }

    /// The full simplex on the ground set.
    pub fn simplex(ground: usize) -> Self {
        Self::from_facets(ground, vec![Subset::full(ground)])
    }

    /// The complex of independent sets of `m`; its facets are the bases.
    pub fn independence_complex(m: &Matroid) -> Self {
        SimplicialComplex {
            ground: m.ground_size(),
            facets: m.bases(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn facets(&self) -> &[Subset] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the complex, `-1` for `{∅}`; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_face(&self, s: Subset) -> bool {
        self.facets.iter().any(|f| s.is_subset_of(*f))
    }

    /// All faces grouped by size: entry `k` holds the faces with `k`
    /// elements, in increasing mask order.
    pub fn faces_by_size(&self) -> Vec<Vec<Subset>> {
        let Some(top) = self.facets.iter().map(|f| f.len()).max() else {
            return Vec::new();
        };
        let mut seen: BTreeSet<Subset> = BTreeSet::new();
        for f in &self.facets {
            seen.extend(f.submasks());
        }
        let mut by_size = vec![Vec::new(); top + 1];
        for s in seen {
            by_size[s.len()].push(s);
        }
        by_size
    }

    /// `Δ_σ`: the faces of `Δ` intersected with `sigma`.
    pub fn restrict(&self, sigma: Subset) -> Self {
        if self.is_void() {
            return self.clone();
        }
        SimplicialComplex {
            ground: self.ground,
            facets: maximal_only(self.facets.iter().map(|f| f.intersection(sigma)).collect()),
        }
    }

    /// Minimal subsets of the ground set that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = all_subsets(self.ground)
            .filter(|&s| !self.is_face(s) && s.iter().all(|x| self.is_face(s.without(x))))
            .collect();
        out.sort_by_key(|s| s.display_key());
        out
    }

    /// `Δ* = { E - σ : σ ∉ Δ }`, whose facets are the complements of the
    /// minimal non-faces of `Δ`.
    pub fn alexander_dual(&self) -> Self {
        let facets = self
            .minimal_nonfaces()
            .into_iter()
            .map(|s| s.complement(self.ground))
            .collect();
        SimplicialComplex {
            ground: self.ground,
            facets: maximal_only(facets),
        }
    }

    /// `f_{-1}, f_0, ..`: the number of faces of each size.
    pub fn f_vector(&self) -> Vec<u64> {
        self.faces_by_size()
            .iter()
            .map(|level| level.len() as u64)
            .collect()
    }

    /// The h-vector `h_0, .., h_r` defined by
    /// `Σ_i f_{i-1} (t-1)^{r-i} = Σ_i h_i t^{r-i}`.
    pub fn h_vector(&self, rank: usize) -> Vec<i64> {
        h_vector_from_f(&self.f_vector(), rank)
    }

    /// `χ̃ = Σ_{i >= -1} (-1)^i f_i`.
    pub fn reduced_euler_char(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// The boundary map from faces of dimension `i` to faces of dimension
    /// `i - 1`, with rows indexed by the codomain in increasing mask order.
    pub fn boundary_matrix(&self, i: isize, field: PrimeField) -> FieldMatrix {
        let faces = self.faces_by_size();
        let level = |k: isize| -> &[Subset] {
            if k < 0 || k as usize >= faces.len() {
                &[]
            } else {
                &faces[k as usize]
            }
        };
        let domain = level(i + 1);
        let codomain = level(i);
        let index: HashMap<Subset, usize> =
            codomain.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut m = FieldMatrix::zeros(field, codomain.len(), domain.len());
        for (col, &face) in domain.iter().enumerate() {
            for (pos, x) in face.iter().enumerate() {
                let entry = if pos % 2 == 0 { 1 } else { field.neg(1) };
                m.set(index[&face.without(x)], col, entry);
            }
        }
        m
    }

    /// Dimensions of the reduced homology groups over `field`.
    pub fn reduced_homology(&self, field: PrimeField) -> ChainComplexDims {
        let faces = self.faces_by_size();
        let mut dims = vec![0usize; self.ground + 1];
        if faces.is_empty() {
            return ChainComplexDims { dims };
        }
        // ranks[k] = rank of the map from k-element faces to (k-1)-element faces.
        let mut ranks = vec![0usize; faces.len() + 1];
        for k in 1..faces.len() {
            ranks[k] = boundary_rank(&faces[k - 1], &faces[k], field);
        }
        for (k, level) in faces.iter().enumerate() {
            dims[k] = level.len() - ranks[k] - ranks[k + 1];
        }
        ChainComplexDims { dims }
    }

    /// Whether the facets are the bases of a matroid (basis exchange holds).
    pub fn is_matroid(&self) -> bool {
        let Some(first) = self.facets.first() else {
            return false;
        };
        if self.facets.iter().any(|f| f.len() != first.len()) {
            return false;
        }
        Matroid::from_bases(self.ground, self.facets.clone()).is_ok()
    }
}

pub(crate) fn h_vector_from_f(f: &[u64], rank: usize) -> Vec<i64> {
    let binom = |n: usize, k: usize| -> i64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
    };
    (0..=rank)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let fi = f.get(i).copied().unwrap_or(0) as i64;
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * fi * binom(rank - i, k - i)
                })
                .sum()
        })
        .collect()
}

fn boundary_rank(lower: &[Subset], upper: &[Subset], field: PrimeField) -> usize {
    if lower.is_empty() || upper.is_empty() {
        return 0;
    }
    let index: HashMap<Subset, usize> = lower.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    if field.modulus() == 2 {
        // One packed bit-row per upper face; signs vanish in characteristic 2.
        let words = lower.len().div_ceil(64);
        let mut rows: Vec<Vec<u64>> = upper
            .iter()
            .map(|&face| {
                let mut row = vec![0u64; words];
                for x in face.iter() {
                    let k = index[&face.without(x)];
                    row[k / 64] |= 1u64 << (k % 64);
                }
                row
            })
            .collect();
        return rank_gf2_bitrows(&mut rows);
    }
    let minus_one = field.neg(1);
    let mut rows: Vec<Vec<u32>> = upper
        .iter()
        .map(|&face| {
            let mut row = vec![0u32; lower.len()];
            for (pos, x) in face.iter().enumerate() {
                row[index[&face.without(x)]] = if pos % 2 == 0 { 1 } else { minus_one };
            }
            row
        })
        .collect();
    rank_dense(field, &mut rows)
}
