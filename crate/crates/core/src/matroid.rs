//! Matroids on small ground sets, given by a rank oracle.
//!
//! A [`Matroid`] is built from a matrix over a prime field, from its bases,
//! from its circuits, or as a uniform matroid, and can be dualized and
//! restricted. Ranks are memoized in a thread-safe cache.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::finfield::FieldMatrix;
use crate::subset::{all_subsets, subsets_of_size, Subset, MAX_GROUND};

/// How a matroid was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Matrix,
    Bases,
    Circuits,
    Uniform,
    DualOf,
    RestrictionOf,
}

#[derive(Debug, Clone)]
enum RankSource {
    Matrix(FieldMatrix),
    Bases(Vec<Subset>),
    Circuits(Vec<Subset>),
    Uniform(usize),
    Dual {
        inner: Arc<Matroid>,
        full_rank: usize,
    },
    Restriction {
        parent: Arc<Matroid>,
        elements: Vec<usize>,
    },
}

/// The circuits of a matroid, sorted by size and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitSet(Vec<Subset>);

impl CircuitSet {
    pub fn as_slice(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.0.iter()
    }

    /// Circuits contained in `sigma`.
    pub fn within(&self, sigma: Subset) -> impl Iterator<Item = Subset> + '_ {
        self.0
            .iter()
            .copied()
            .filter(move |c| c.is_subset_of(sigma))
    }

    /// Union of all circuits.
    pub fn support(&self) -> Subset {
        self.0.iter().fold(Subset::EMPTY, |acc, &c| acc.union(c))
    }
}

impl<'a> IntoIterator for &'a CircuitSet {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub struct Matroid {
    ground: usize,
    source: RankSource,
    memo: RwLock<HashMap<Subset, usize>>,
    circuits: OnceLock<CircuitSet>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid::with_source(self.ground, self.source.clone())
    }
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.ground)
            .field("provenance", &self.provenance())
            .field("rank", &self.full_rank())
            .finish()
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::GroundTooLarge { n, cap: MAX_GROUND });
    }
    Ok(())
}

fn check_within(n: usize, s: Subset) -> Result<()> {
    if !s.is_subset_of(Subset::full(n)) {
        let element = s.difference(Subset::full(n)).first().unwrap_or(n) + 1;
        return Err(Error::ElementOutOfRange { element, ground: n });
    }
    Ok(())
}

fn sort_for_display(sets: &mut Vec<Subset>) {
    sets.sort_by_key(|s| s.display_key());
    sets.dedup();
}

impl Matroid {
    fn with_source(ground: usize, source: RankSource) -> Self {
        Matroid {
            ground,
            source,
            memo: RwLock::new(HashMap::new()),
            circuits: OnceLock::new(),
        }
    }

    /// The column matroid of `h`: ranks are ranks of column submatrices.
    pub fn from_matrix(h: FieldMatrix) -> Result<Self> {
        check_ground(h.cols())?;
        Ok(Self::with_source(h.cols(), RankSource::Matrix(h)))
    }

    /// The matroid with the given bases, after checking the exchange axiom.
    pub fn from_bases(n: usize, bases: Vec<Subset>) -> Result<Self> {
        check_ground(n)?;
        let mut bases = bases;
        if bases.is_empty() {
            return Err(Error::InvalidBases(
                "a matroid has at least one basis".into(),
            ));
        }
        for &b in &bases {
            check_within(n, b)?;
        }
        sort_for_display(&mut bases);
        let r = bases[0].len();
        if let Some(b) = bases.iter().find(|b| b.len() != r) {
            return Err(Error::InvalidBases(format!(
                "bases {} and {} have different sizes",
                bases[0], b
            )));
        }
        validate_basis_exchange(&bases)?;
        Ok(Self::with_source(n, RankSource::Bases(bases)))
    }

    /// The matroid with the given circuits, after checking the circuit
    /// axioms. An empty family gives the free matroid.
    pub fn from_circuits(n: usize, circuits: Vec<Subset>) -> Result<Self> {
        check_ground(n)?;
        let mut circuits = circuits;
        for &c in &circuits {
            check_within(n, c)?;
        }
        sort_for_display(&mut circuits);
        validate_circuit_axioms(&circuits)?;
        Ok(Self::with_source(n, RankSource::Circuits(circuits)))
    }

    /// The uniform matroid `U(r, n)`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        check_ground(n)?;
        if r > n {
            return Err(Error::RankTooLarge { rank: r, n });
        }
        Ok(Self::with_source(n, RankSource::Uniform(r)))
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.ground)
    }

    pub fn provenance(&self) -> Provenance {
        match self.source {
            RankSource::Matrix(_) => Provenance::Matrix,
            RankSource::Bases(_) => Provenance::Bases,
            RankSource::Circuits(_) => Provenance::Circuits,
            RankSource::Uniform(_) => Provenance::Uniform,
            RankSource::Dual { .. } => Provenance::DualOf,
            RankSource::Restriction { .. } => Provenance::RestrictionOf,
        }
    }

    /// Rank of `sigma`. Elements outside the ground set are ignored.
    pub fn rank(&self, sigma: Subset) -> usize {
        let sigma = sigma.intersection(self.ground());
        if let RankSource::Uniform(r) = self.source {
            return sigma.len().min(r);
        }
        if sigma.is_empty() {
            return 0;
        }
        if let Some(&r) = self.memo.read().expect("rank memo poisoned").get(&sigma) {
            return r;
        }
        let r = self.compute_rank(sigma);
        self.memo
            .write()
            .expect("rank memo poisoned")
            .insert(sigma, r);
        r
    }

    pub fn nullity(&self, sigma: Subset) -> usize {
        let sigma = sigma.intersection(self.ground());
        sigma.len() - self.rank(sigma)
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// `|E| - r(E)`, the number of generalized weights.
    pub fn corank(&self) -> usize {
        self.ground - self.full_rank()
    }

    pub fn is_independent(&self, sigma: Subset) -> bool {
        self.rank(sigma) == sigma.len()
    }

    fn compute_rank(&self, sigma: Subset) -> usize {
        match &self.source {
            RankSource::Matrix(h) => h
                .rank_of_subset(sigma)
                .expect("subsets are clipped to the ground set"),
            RankSource::Bases(bases) => bases
                .iter()
                .map(|b| b.intersection(sigma).len())
                .max()
                .unwrap_or(0),
            RankSource::Circuits(circuits) => greedy_rank(circuits, sigma),
            RankSource::Uniform(r) => sigma.len().min(*r),
            RankSource::Dual { inner, full_rank } => {
                sigma.len() + inner.rank(sigma.complement(self.ground)) - full_rank
            }
            RankSource::Restriction { parent, elements } => {
                parent.rank(Subset::from_indices(sigma.iter().map(|j| elements[j])))
            }
        }
    }

    /// Ranks of every subset, indexed by mask. Bypasses the memo.
    pub fn rank_table(&self) -> Vec<u8> {
        (0..1u64 << self.ground)
            .into_par_iter()
            .map(|mask| {
                let s = Subset(mask);
                match self.source {
                    RankSource::Uniform(r) => s.len().min(r) as u8,
                    _ if mask == 0 => 0,
                    _ => self.compute_rank(s) as u8,
                }
            })
            .collect()
    }

    /// The minimal dependent sets, found breadth-first by size. Any superset
    /// of a circuit already found is skipped without a rank query.
    pub fn circuits(&self) -> &CircuitSet {
        self.circuits.get_or_init(|| {
            let n = self.ground;
            let max_size = (self.full_rank() + 1).min(n);
            let mut found: Vec<Subset> = Vec::new();
            for k in 1..=max_size {
                let fresh: Vec<Subset> = subsets_of_size(n, k)
                    .filter(|s| !found.iter().any(|c| c.is_subset_of(*s)))
                    .filter(|&s| !self.is_independent(s))
                    .collect();
                found.extend(fresh);
            }
            sort_for_display(&mut found);
            CircuitSet(found)
        })
    }

    pub fn bases(&self) -> Vec<Subset> {
        let r = self.full_rank();
        let mut bases: Vec<Subset> = subsets_of_size(self.ground, r)
            .filter(|&s| self.is_independent(s))
            .collect();
        sort_for_display(&mut bases);
        bases
    }

    pub fn is_circuit(&self, sigma: Subset) -> bool {
        !sigma.is_empty()
            && sigma.is_subset_of(self.ground())
            && !self.is_independent(sigma)
            && sigma.iter().all(|x| self.is_independent(sigma.without(x)))
    }

    /// The dual matroid, with `r*(S) = |S| + r(E - S) - r(E)`.
    pub fn dual(&self) -> Matroid {
        if let RankSource::Dual { inner, .. } = &self.source {
            return inner.as_ref().clone();
        }
        let full_rank = self.full_rank();
        Self::with_source(
            self.ground,
            RankSource::Dual {
                inner: Arc::new(self.clone()),
                full_rank,
            },
        )
    }

    /// The restriction to `sigma`, reindexed so that the `j`-th smallest
    /// element of `sigma` becomes element `j`.
    pub fn restriction(&self, sigma: Subset) -> Result<Matroid> {
        check_within(self.ground, sigma)?;
        let elements: Vec<usize> = sigma.iter().collect();
        Ok(Self::with_source(
            elements.len(),
            RankSource::Restriction {
                parent: Arc::new(self.clone()),
                elements,
            },
        ))
    }

    /// Elements of rank zero.
    pub fn loops(&self) -> Subset {
        Subset::from_indices((0..self.ground).filter(|&x| self.rank(Subset::singleton(x)) == 0))
    }

    /// Elements in every basis: the loops of the dual, i.e. those whose
    /// removal drops the rank.
    pub fn isthmuses(&self) -> Subset {
        let e = self.ground();
        let r = self.full_rank();
        Subset::from_indices((0..self.ground).filter(|&x| self.rank(e.without(x)) < r))
    }

    pub fn loops_and_isthmuses(&self) -> (Subset, Subset) {
        (self.loops(), self.isthmuses())
    }

    /// Checks that each given set is a circuit and that every circuit in the
    /// family owns an element lying in no other member.
    pub fn is_nonredundant(&self, family: &[Subset]) -> Result<bool> {
        if let Some(bad) = family.iter().find(|&&c| !self.is_circuit(c)) {
            return Err(Error::NotACircuit(bad.to_string()));
        }
        Ok(has_private_elements(family))
    }

    /// The maximal number of non-redundant circuits inside `sigma`. This
    /// always equals the nullity of `sigma`; see
    /// [`nonredundant_witness`](Self::nonredundant_witness) for a family
    /// realizing it.
    pub fn nonredundancy_degree(&self, sigma: Subset) -> usize {
        self.nullity(sigma)
    }

    /// A family of `nullity(sigma)` non-redundant circuits inside `sigma`.
    ///
    /// Built recursively: drop an element `x` of some circuit in `sigma`,
    /// solve for `sigma - x`, and if one circuit short, extend the family by
    /// a circuit through `x` that avoids the private elements of the others.
    pub fn nonredundant_witness(&self, sigma: Subset) -> Vec<Subset> {
        let sigma = sigma.intersection(self.ground());
        let target = self.nullity(sigma);
        if target == 0 {
            return Vec::new();
        }
        let inside: Vec<Subset> = self.circuits().within(sigma).collect();
        let x = inside[0].first().expect("circuits are nonempty");
        let mut family = self.nonredundant_witness(sigma.without(x));
        if family.len() >= target {
            family.truncate(target);
            return family;
        }
        let privates: Vec<usize> = private_elements(&family);
        let mut best: Option<(usize, Subset)> = None;
        for &c in inside.iter().filter(|c| c.contains(x)) {
            let hits = privates.iter().filter(|&&p| c.contains(p)).count();
            if best.is_none_or(|(h, _)| hits < h) {
                best = Some((hits, c));
            }
        }
        let (hits, extra) = best.expect("x lies in a circuit inside sigma");
        debug_assert_eq!(hits, 0, "circuit elimination guarantees a clean extension");
        family.push(extra);
        family
    }
}

/// Largest independent subset of `sigma` found greedily; exact for matroids.
fn greedy_rank(circuits: &[Subset], sigma: Subset) -> usize {
    let mut indep = Subset::EMPTY;
    for x in sigma.iter() {
        let cand = indep.with(x);
        if !circuits
            .iter()
            .any(|c| c.contains(x) && c.is_subset_of(cand))
        {
            indep = cand;
        }
    }
    indep.len()
}

fn has_private_elements(family: &[Subset]) -> bool {
    family.iter().enumerate().all(|(i, c)| {
        let others = family
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Subset::EMPTY, |acc, (_, &d)| acc.union(d));
        !c.difference(others).is_empty()
    })
}

/// The smallest private element of each member of a non-redundant family.
fn private_elements(family: &[Subset]) -> Vec<usize> {
    family
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let others = family
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Subset::EMPTY, |acc, (_, &d)| acc.union(d));
            c.difference(others)
                .first()
                .expect("family is non-redundant")
        })
        .collect()
}

fn validate_basis_exchange(bases: &[Subset]) -> Result<()> {
    let set: std::collections::HashSet<Subset> = bases.iter().copied().collect();
    for &a in bases {
        for &b in bases {
            for x in a.difference(b).iter() {
                let ok = b
                    .difference(a)
                    .iter()
                    .any(|y| set.contains(&a.without(x).with(y)));
                if !ok {
                    return Err(Error::InvalidBases(format!(
                        "exchange axiom fails for {a} and {b} at element {}",
                        x + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

fn validate_circuit_axioms(circuits: &[Subset]) -> Result<()> {
    if circuits.iter().any(|c| c.is_empty()) {
        return Err(Error::InvalidCircuits(
            "the empty set is not a circuit".into(),
        ));
    }
    for (i, &a) in circuits.iter().enumerate() {
        for &b in &circuits[i + 1..] {
            if a.is_subset_of(b) || b.is_subset_of(a) {
                return Err(Error::InvalidCircuits(format!("{a} and {b} are nested")));
            }
            for x in a.intersection(b).iter() {
                let pool = a.union(b).without(x);
                if !circuits.iter().any(|c| c.is_subset_of(pool)) {
                    return Err(Error::InvalidCircuits(format!(
                        "elimination fails for {a} and {b} at element {}",
                        x + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Exhaustive check that a rank function on all subsets satisfies the
/// matroid rank axioms. Used by the verifier and tests.
pub fn rank_axioms_hold(m: &Matroid) -> bool {
    let table = m.rank_table();
    let n = m.ground_size();
    all_subsets(n).all(|s| {
        let r = table[s.bits() as usize] as usize;
        r <= s.len()
            && (0..n).filter(|&x| !s.contains(x)).all(|x| {
                let rx = table[s.with(x).bits() as usize] as usize;
                rx == r || rx == r + 1
            })
    }) && all_subsets(n).all(|a| {
        // Local submodularity suffices given unit increase.
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                if a.contains(x) || a.contains(y) {
                    return true;
                }
                let r = |s: Subset| table[s.bits() as usize] as usize;
                r(a.with(x).with(y)) + r(a) <= r(a.with(x)) + r(a.with(y))
            })
        })
    })
}
