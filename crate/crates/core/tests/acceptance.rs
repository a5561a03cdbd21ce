//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line, followed by any failing sub-checks.

mod common;

use std::time::{Duration, Instant};

use common::*;
use hamming_betti::subset::all_subsets;
use hamming_betti::{
    betti_fine_hochster, betti_fine_matroid, mds_profile, weights_from_betti, whitney_polynomial,
    BettiTable, Matroid, PrimeField, SimplicialComplex, Subset, DEFAULT_MAX_GROUND,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = DEFAULT_MAX_GROUND;

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(1);
const LIMIT_3: Duration = Duration::from_secs(5);
const LIMIT_4: Duration = Duration::from_secs(2);
const LIMIT_5: Duration = Duration::from_secs(30);
const LIMIT_6: Duration = Duration::from_secs(300);

const RANDOM_SEED: u64 = 0x5eed_b377;
const RANDOM_PER_FIELD: usize = 80;
const RANDOM_MAX_N: usize = 10;
const EXHAUSTIVE_MAX_N: usize = 8;

#[derive(Default)]
struct Checks {
    total: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.total += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        self.check(ok, format!("{what}: got {got:?}, expected {want:?}"));
    }
}

fn diagram_rows(t: &BettiTable) -> Vec<(usize, Vec<u64>)> {
    let d = t.diagram();
    d.row_labels()
        .into_iter()
        .map(|l| {
            let mut row = d.row(l);
            while row.last() == Some(&0) {
                row.pop();
            }
            (l, row)
        })
        .collect()
}

fn rows(spec: &[(usize, &[u64])]) -> Vec<(usize, Vec<u64>)> {
    spec.iter().map(|&(l, r)| (l, r.to_vec())).collect()
}

fn sets(list: &[&[usize]]) -> Vec<Subset> {
    let mut v: Vec<Subset> = list.iter().map(|s| set(s)).collect();
    v.sort_by_key(|s| s.display_key());
    v
}

fn alexander_table(m: &Matroid) -> BettiTable {
    let dual = SimplicialComplex::independence_complex(m).alexander_dual();
    betti_fine_hochster(&dual, PrimeField::GF2, CAP).unwrap()
}

fn weights(m: &Matroid) -> Vec<usize> {
    weights_from_betti(&betti_fine_matroid(m, CAP).unwrap(), m.corank()).unwrap()
}

fn criterion_1(c: &mut Checks) {
    let m = corpus("h1.txt");
    let mut got: Vec<Subset> = m.circuits().iter().copied().collect();
    got.sort_by_key(|s| s.display_key());
    c.eq(
        "circuits",
        got,
        sets(&[
            &[1, 2, 3, 4],
            &[1, 4, 5],
            &[1, 6],
            &[2, 3, 4, 6],
            &[2, 3, 5],
            &[4, 5, 6],
        ]),
    );
    let t = betti_fine_matroid(&m, CAP).unwrap();
    c.eq(
        "diagram",
        diagram_rows(&t),
        rows(&[(1, &[1]), (2, &[3, 2]), (3, &[2, 7, 4])]),
    );
    c.eq("weights", weights_from_betti(&t, 3).unwrap(), vec![2, 4, 6]);
}

fn criterion_2(c: &mut Checks) {
    let m = corpus("h1.txt");
    let dual = SimplicialComplex::independence_complex(&m).alexander_dual();
    c.eq(
        "facets",
        dual.facets().to_vec(),
        sets(&[
            &[1, 2, 3],
            &[1, 4, 6],
            &[1, 5],
            &[2, 3, 4, 5],
            &[2, 3, 6],
            &[5, 6],
        ]),
    );
    let t = betti_fine_hochster(&dual, PrimeField::GF2, CAP).unwrap();
    c.eq("diagram", diagram_rows(&t), rows(&[(2, &[13, 25, 17, 4])]));
    let w = whitney_polynomial(&m);
    let want: Vec<(usize, usize, u64)> = vec![
        (3, 0, 1),
        (2, 1, 1),
        (2, 0, 6),
        (1, 2, 1),
        (1, 1, 7),
        (1, 0, 14),
        (0, 3, 1),
        (0, 2, 6),
        (0, 1, 14),
        (0, 0, 13),
    ];
    let mut got = w.terms();
    got.sort();
    let mut sorted = want.clone();
    sorted.sort();
    c.eq("whitney terms", got, sorted);
    c.eq("W(x,0)", w.x_part(), vec![13, 14, 6, 1]);
}

fn criterion_3(c: &mut Checks) {
    let (h2, h3) = (corpus("h2.txt"), corpus("h3.txt"));
    let g = |m: &Matroid| betti_fine_matroid(m, CAP).unwrap().global();
    c.eq("H2 global", g(&h2), vec![1, 3, 2]);
    c.eq("H3 global", g(&h3), vec![1, 2, 1]);
    c.eq("H2 weights", weights(&h2), vec![2, 4]);
    c.eq("H3 weights", weights(&h3), vec![2, 4]);

    let (h4, h5) = (corpus("h4.txt"), corpus("h5.txt"));
    c.eq("H4 global", g(&h4), vec![1, 3, 2]);
    c.eq("H5 global", g(&h5), vec![1, 3, 2]);
    c.eq("H4 weights", weights(&h4), vec![2, 3]);
    c.eq("H5 weights", weights(&h5), vec![2, 4]);

    let (h8, h9) = (corpus("h8.txt"), corpus("h9.txt"));
    let dual_diagram = rows(&[(2, &[16, 33, 24, 6])]);
    c.eq(
        "H8 dual diagram",
        diagram_rows(&alexander_table(&h8)),
        dual_diagram.clone(),
    );
    c.eq(
        "H9 dual diagram",
        diagram_rows(&alexander_table(&h9)),
        dual_diagram,
    );
    c.eq("H8 weights", weights(&h8), vec![3, 5, 6]);
    c.eq("H9 weights", weights(&h9), vec![2, 5, 6]);

    c.eq(
        "M2* diagram",
        diagram_rows(&alexander_table(&h2)),
        rows(&[(1, &[5, 6, 2])]),
    );
    c.eq(
        "M3* diagram",
        diagram_rows(&alexander_table(&h3)),
        rows(&[(1, &[4, 4, 1])]),
    );
}

fn criterion_4(c: &mut Checks) {
    let m6 = corpus("h6.txt");
    let t6 = betti_fine_matroid(&m6, CAP).unwrap();
    c.eq(
        "M6 diagram",
        diagram_rows(&t6),
        rows(&[(2, &[4]), (3, &[3, 12, 6])]),
    );
    c.eq(
        "M6 weights",
        weights_from_betti(&t6, 3).unwrap(),
        vec![3, 5, 6],
    );
    let p6 = mds_profile(&m6, &t6).unwrap();
    c.eq("M6 mds level", p6.mds_level, Some(2));
    c.eq("M6 linear tail", p6.linear_tail_from, Some(2));

    let m7 = corpus("h7.txt");
    let t7 = betti_fine_matroid(&m7, CAP).unwrap();
    c.eq("M7 diagram", diagram_rows(&t7), rows(&[(2, &[10, 15, 6])]));
    c.eq(
        "M7 weights",
        weights_from_betti(&t7, 3).unwrap(),
        vec![3, 4, 5],
    );
    c.check(t7.diagram().is_linear(), "M7 resolution is not linear");
    let p7 = mds_profile(&m7, &t7).unwrap();
    c.check(!p7.is_mds(), "M7 flagged MDS");
    c.eq("M7 isthmuses", p7.isthmuses.clone(), vec![2]);

    for n in 2..=7 {
        for r in 1..n {
            let u = Matroid::uniform(r, n).unwrap();
            let p = mds_profile(&u, &betti_fine_matroid(&u, CAP).unwrap()).unwrap();
            c.check(p.is_mds(), format!("U({r},{n}) not MDS"));
            c.eq(
                &format!("U({r},{n}) Alexander dual is a matroid"),
                p.alexander_dual_is_matroid,
                Some(true),
            );
        }
    }
}

fn criterion_5(c: &mut Checks) {
    for n in 2..=10usize {
        for r in 1..n {
            let u = Matroid::uniform(r, n).unwrap();
            let t = betti_fine_matroid(&u, CAP).unwrap();
            let mut want = std::collections::BTreeMap::from([((0, 0), 1)]);
            for s in 1..=n - r {
                want.insert(
                    (s, r + s),
                    binom((r + s - 1) as u64, r as u64) * binom(n as u64, (r + s) as u64),
                );
            }
            c.eq(&format!("U({r},{n}) graded"), t.graded().clone(), want);
            let k = n - r;
            c.eq(
                &format!("U({r},{n}) weights"),
                weights_from_betti(&t, k).unwrap(),
                (n - k + 1..=n).collect::<Vec<_>>(),
            );
            let level = binom((n - 1) as u64, r as u64);
            let h = h_vector_oracle(&u);
            let h_top = *h.iter().rev().find(|&&x| x != 0).unwrap();
            c.eq(
                &format!("U({r},{n}) top Betti"),
                t.graded_entry(k, n),
                level,
            );
            c.eq(&format!("U({r},{n}) top h"), h_top, level as i64);
        }
    }
}

/// Checks every random-instance property and the levelness identity.
fn random_instance(c: &mut Checks, levelness: &mut Checks, label: &str, p: u64, m: &Matroid) {
    let n = m.ground_size();
    let field = PrimeField::new(p).unwrap();
    let fast = betti_fine_matroid(m, CAP).unwrap();
    let complex = SimplicialComplex::independence_complex(m);
    let hochster = betti_fine_hochster(&complex, field, CAP).unwrap();
    c.check(
        fast == hochster,
        format!("{label}: fast path differs from Hochster"),
    );

    let k = m.corank();
    let oracle = weights_oracle(n, |s| m.rank(s));
    c.eq(
        &format!("{label}: weights"),
        weights_from_betti(&fast, k).ok(),
        Some(oracle.clone()),
    );

    if n <= EXHAUSTIVE_MAX_N {
        let circuits = circuits_oracle(m);
        for sigma in all_subsets(n) {
            let best = max_nonredundant(&circuits, sigma);
            if best != m.nonredundancy_degree(sigma) || best != m.nullity(sigma) {
                c.check(false, format!("{label}: non-redundancy at {sigma}: {best}"));
            }
            let w = m.nonredundant_witness(sigma);
            if w.len() != best || !m.is_nonredundant(&w).unwrap_or(false) {
                c.check(false, format!("{label}: bad witness at {sigma}"));
            }
        }
        c.check(true, "");
    }

    let alexander = complex.alexander_dual();
    let tables: Vec<(BettiTable, BettiTable)> = [2u64, 3, 5]
        .iter()
        .map(|&q| {
            let f = PrimeField::new(q).unwrap();
            (
                betti_fine_hochster(&complex, f, CAP).unwrap(),
                betti_fine_hochster(&alexander, f, CAP).unwrap(),
            )
        })
        .collect();
    c.check(
        tables.windows(2).all(|w| w[0] == w[1]),
        format!("{label}: homology depends on the field"),
    );

    c.eq(
        &format!("{label}: resolution length"),
        fast.length().unwrap_or(0),
        k,
    );
    c.eq(
        &format!("{label}: d_k vs support"),
        oracle.last().copied().unwrap_or(0),
        support_oracle(m),
    );

    let (loops, isthmuses) = m.loops_and_isthmuses();
    if loops.is_empty() && isthmuses.is_empty() {
        let dual = weights_oracle(n, |s| dual_rank(m, s));
        let mut all: Vec<usize> = oracle.clone();
        all.extend(dual.iter().map(|d| n + 1 - d));
        all.sort_unstable();
        c.eq(
            &format!("{label}: Wei duality"),
            all,
            (1..=n).collect::<Vec<_>>(),
        );
    }

    let h = h_vector_oracle(m);
    let h_top = *h.iter().rev().find(|&&x| x != 0).unwrap();
    let degrees = fast.degrees_in(k);
    levelness.eq(&format!("{label}: top degrees"), degrees.len(), 1);
    levelness.eq(
        &format!("{label}: top Betti vs h"),
        fast.graded_entry(k, degrees[0]) as i64,
        h_top,
    );
}

fn criterion_6_and_7() -> (Checks, Duration, Checks) {
    let start = Instant::now();
    let mut c = Checks::default();
    let mut level = Checks::default();

    let m1 = corpus("h1.txt");
    let h = h_vector_oracle(&m1);
    level.eq("M1 h-vector", h.clone(), vec![1, 3, 5, 4]);
    let t1 = betti_fine_matroid(&m1, CAP).unwrap();
    level.eq("M1 beta_{3,6}", t1.graded_entry(3, 6) as i64, h[3]);
    level.eq("M1 h_3", h[3], 4);

    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut count = 0;
    for p in [2u64, 3, 5] {
        for j in 0..RANDOM_PER_FIELD {
            let n = rng.gen_range(3..=RANDOM_MAX_N);
            let h = random_matrix(&mut rng, p, n);
            let m = Matroid::from_matrix(h).unwrap();
            random_instance(&mut c, &mut level, &format!("GF({p}) #{j} n={n}"), p, &m);
            count += 1;
        }
    }
    c.check(count >= 200, format!("only {count} random instances"));
    (c, start.elapsed(), level)
}

fn report(id: usize, name: &str, c: &Checks, elapsed: Duration, limit: Option<Duration>) -> bool {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let ok = c.failures.is_empty() && in_time;
    let limit_text = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    println!(
        "{} criterion {id}: {name}: {}/{} checks, {:.2?}{limit_text}",
        if ok { "PASS" } else { "FAIL" },
        c.total - c.failures.len(),
        c.total,
        elapsed,
    );
    for f in &c.failures {
        println!("    - {f}");
    }
    if !in_time {
        println!("    - exceeded time limit");
    }
    ok
}

fn timed(f: impl FnOnce(&mut Checks)) -> (Checks, Duration) {
    let mut c = Checks::default();
    let start = Instant::now();
    f(&mut c);
    (c, start.elapsed())
}

fn main() {
    let mut all = true;
    let (c, t) = timed(criterion_1);
    all &= report(1, "running example", &c, t, Some(LIMIT_1));
    let (c, t) = timed(criterion_2);
    all &= report(
        2,
        "Alexander dual and Whitney polynomial",
        &c,
        t,
        Some(LIMIT_2),
    );
    let (c, t) = timed(criterion_3);
    all &= report(3, "negative results", &c, t, Some(LIMIT_3));
    let (c, t) = timed(criterion_4);
    all &= report(4, "MDS suite", &c, t, Some(LIMIT_4));
    let (c, t) = timed(criterion_5);
    all &= report(5, "uniform closed form", &c, t, Some(LIMIT_5));
    let (c6, t6, c7) = criterion_6_and_7();
    all &= report(6, "random oracle equivalence", &c6, t6, Some(LIMIT_6));
    all &= report(7, "h-vector levelness", &c7, t6, None);
    if !all {
        std::process::exit(1);
    }
}
