//! Command-line front end: input parsing, command dispatch and output
//! formatting. `main.rs` only does process I/O around [`execute`].

use std::fmt::Write as _;

use clap::{Parser, ValueEnum};
use serde_json::Value;

use crate::betti::{betti_fine_hochster, betti_fine_matroid, BettiTable};
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::finfield::{FieldMatrix, PrimeField};
use crate::matroid::{rank_axioms_hold, Matroid};
use crate::subset::{all_subsets, Subset, DEFAULT_MAX_GROUND, MAX_GROUND};
use crate::weights::{
    mds_profile, wei_duality_check, weights_bruteforce, weights_from_betti, whitney_polynomial,
    WeiDuality, WeightReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Generalized Hamming weights d_1..d_k
    Weights,
    /// Graded and global Betti numbers (--fine for the multigraded table)
    Betti,
    /// Betti diagram
    Diagram,
    /// Whitney polynomial
    Whitney,
    /// MDS profile
    Mds,
    /// Cross-check every computation against its oracle
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    Matroid,
    Dual,
    Alexander,
    DualAlexander,
}

#[derive(Debug, Parser)]
#[command(name = "hamming-betti", version, about)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Input file; reads stdin when absent or `-`
    pub input: Option<String>,

    /// Which complex to work with
    #[arg(long, value_enum, default_value = "matroid")]
    pub complex: ComplexKind,

    /// Prime field used for homology computations
    #[arg(long, default_value_t = 2)]
    pub field: u64,

    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,

    /// Override the ground-set size limit
    #[arg(long, value_name = "N")]
    pub max_n: Option<usize>,

    /// Include the multigraded Betti numbers
    #[arg(long)]
    pub fine: bool,
}

/// Input as given by the user, before validation by the matroid
/// constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    Matrix(FieldMatrix),
    Bases { n: usize, bases: Vec<Subset> },
    Circuits { n: usize, circuits: Vec<Subset> },
    Uniform { r: usize, n: usize },
}

impl InputSpec {
    pub fn ground_size(&self) -> usize {
        match self {
            InputSpec::Matrix(h) => h.cols(),
            InputSpec::Bases { n, .. }
            | InputSpec::Circuits { n, .. }
            | InputSpec::Uniform { n, .. } => *n,
        }
    }

    pub fn into_matroid(self) -> Result<Matroid, Error> {
        match self {
            InputSpec::Matrix(h) => Matroid::from_matrix(h),
            InputSpec::Bases { n, bases } => Matroid::from_bases(n, bases),
            InputSpec::Circuits { n, circuits } => Matroid::from_circuits(n, circuits),
            InputSpec::Uniform { r, n } => Matroid::uniform(r, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Output of a successful run. `code` is nonzero only when `verify` finds a
/// mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub warnings: Vec<String>,
}

/// Parses the plain-text matrix format or one of the JSON forms.
pub fn parse_input(text: &str) -> Result<InputSpec, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_matrix_text(text)
    }
}

fn parse_matrix_text(text: &str) -> Result<InputSpec, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| CliError::input("line 1: empty input"))?;
    let modulus = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["field", p] => p
            .parse::<u64>()
            .map_err(|_| CliError::input(format!("line {header_line}: bad field modulus `{p}`")))?,
        _ => {
            return Err(CliError::input(format!(
                "line {header_line}: expected `field <p>`, found `{header}`"
            )))
        }
    };
    let field = PrimeField::new(modulus)
        .map_err(|e| CliError::input(format!("line {header_line}: {e}")))?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (line_no, line) in lines {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| {
                    CliError::input(format!("line {line_no}: bad matrix entry `{tok}`"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::input(format!(
                    "line {line_no}: expected {} entries, found {}",
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    let cols = rows
        .first()
        .map(|r| r.len())
        .ok_or_else(|| CliError::input(format!("line {header_line}: matrix has no rows")))?;
    let h = FieldMatrix::from_rows(field, cols, &rows)
        .map_err(|e| CliError::input(format!("line {header_line}: {e}")))?;
    Ok(InputSpec::Matrix(h))
}

/// 1-based line of the first occurrence of `needle`, for error messages.
fn line_of(text: &str, needle: &str) -> usize {
    text.lines()
        .position(|l| l.contains(needle))
        .map_or(1, |k| k + 1)
}

fn parse_json(text: &str) -> Result<InputSpec, CliError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| CliError::input(format!("line {}: invalid JSON: {e}", e.line())))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::input("line 1: expected a JSON object"))?;
    let err =
        |key: &str, msg: String| CliError::input(format!("line {}: {msg}", line_of(text, key)));
    let uint = |key: &str, v: &Value| -> Result<usize, CliError> {
        v.as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| err(key, format!("`{key}` must hold non-negative integers")))
    };
    let sets = |key: &str, n: usize| -> Result<Vec<Subset>, CliError> {
        let list = obj[key]
            .as_array()
            .ok_or_else(|| err(key, format!("`{key}` must be a list of lists")))?;
        list.iter()
            .map(|set| {
                let elems = set
                    .as_array()
                    .ok_or_else(|| err(key, format!("`{key}` must be a list of lists")))?;
                let labels = elems
                    .iter()
                    .map(|e| uint(key, e))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l > n) {
                    return Err(err(
                        key,
                        format!("element {bad} outside the ground set 1..{n}"),
                    ));
                }
                Ok(Subset::from_one_based(&labels))
            })
            .collect()
    };

    if let Some(u) = obj.get("uniform") {
        let pair = u
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| err("uniform", "`uniform` must be [r, n]".into()))?;
        let (r, n) = (uint("uniform", &pair[0])?, uint("uniform", &pair[1])?);
        if r > n {
            return Err(err(
                "uniform",
                format!("rank {r} exceeds ground set size {n}"),
            ));
        }
        return Ok(InputSpec::Uniform { r, n });
    }
    if let Some(m) = obj.get("matrix") {
        let p = obj
            .get("field")
            .ok_or_else(|| err("matrix", "`matrix` requires `field`".into()))
            .and_then(|v| uint("field", v))?;
        let field = PrimeField::new(p as u64).map_err(|e| err("field", e.to_string()))?;
        let rows = m
            .as_array()
            .ok_or_else(|| err("matrix", "`matrix` must be a list of rows".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| err("matrix", "`matrix` must be a list of rows".into()))?
                    .iter()
                    .map(|e| {
                        e.as_i64()
                            .ok_or_else(|| err("matrix", "matrix entries must be integers".into()))
                    })
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cols = rows.first().map_or(0, |r| r.len());
        let h =
            FieldMatrix::from_rows(field, cols, &rows).map_err(|e| err("matrix", e.to_string()))?;
        return Ok(InputSpec::Matrix(h));
    }
    let n = obj
        .get("n")
        .ok_or_else(|| {
            CliError::input("line 1: expected one of `uniform`, `matrix`, `bases`, `circuits`")
        })
        .and_then(|v| uint("\"n\"", v))?;
    if n > MAX_GROUND {
        return Err(CliError {
            code: EXIT_CAP,
            message: Error::GroundTooLarge { n, cap: MAX_GROUND }.to_string(),
        });
    }
    match (obj.contains_key("bases"), obj.contains_key("circuits")) {
        (true, false) => Ok(InputSpec::Bases {
            n,
            bases: sets("bases", n)?,
        }),
        (false, true) => Ok(InputSpec::Circuits {
            n,
            circuits: sets("circuits", n)?,
        }),
        _ => Err(CliError::input(
            "line 1: give exactly one of `bases` or `circuits` together with `n`",
        )),
    }
}

fn build_matroid(spec: InputSpec, text: &str) -> Result<Matroid, CliError> {
    let key = match &spec {
        InputSpec::Bases { .. } => "bases",
        InputSpec::Circuits { .. } => "circuits",
        _ => "",
    };
    spec.into_matroid().map_err(|e| match e {
        Error::GroundTooLarge { .. } => CliError {
            code: EXIT_CAP,
            message: e.to_string(),
        },
        _ => CliError::input(format!("line {}: {e}", line_of(text, key))),
    })
}

fn cap_error(e: Error) -> CliError {
    match e {
        Error::GroundTooLarge { .. } => CliError {
            code: EXIT_CAP,
            message: e.to_string(),
        },
        other => CliError::input(other.to_string()),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs one command on the given input text.
pub fn execute(cli: &Cli, text: &str) -> Result<Output, CliError> {
    let mut warnings = Vec::new();
    let cap = match cli.max_n {
        Some(n) if n > MAX_GROUND => {
            return Err(CliError::input(format!(
                "--max-n {n} exceeds the supported maximum of {MAX_GROUND}"
            )))
        }
        Some(n) => {
            if n > DEFAULT_MAX_GROUND {
                warnings.push(format!(
                    "warning: ground-set cap raised to {n}; exhaustive sweeps cost 2^n"
                ));
            }
            n
        }
        None => DEFAULT_MAX_GROUND,
    };
    let field = PrimeField::new(cli.field).map_err(|e| CliError::input(format!("--field: {e}")))?;
    let spec = parse_input(text)?;
    let n = spec.ground_size();
    if n > cap {
        return Err(CliError {
            code: EXIT_CAP,
            message: format!(
                "ground set of size {n} exceeds the cap of {cap}; pass --max-n {n} to override"
            ),
        });
    }
    let base = build_matroid(spec, text)?;
    let matroid = match cli.complex {
        ComplexKind::Matroid | ComplexKind::Alexander => base,
        ComplexKind::Dual | ComplexKind::DualAlexander => base.dual(),
    };
    let alexander = matches!(
        cli.complex,
        ComplexKind::Alexander | ComplexKind::DualAlexander
    );

    let table = || -> Result<BettiTable, CliError> {
        if alexander {
            let dual = SimplicialComplex::independence_complex(&matroid).alexander_dual();
            betti_fine_hochster(&dual, field, cap).map_err(cap_error)
        } else {
            betti_fine_matroid(&matroid, cap).map_err(cap_error)
        }
    };
    let require_matroid = |what: &str| -> Result<(), CliError> {
        if alexander {
            Err(CliError::input(format!(
                "`{what}` needs a matroid; use --complex matroid or dual"
            )))
        } else {
            Ok(())
        }
    };

    let mut out = String::new();
    let mut code = EXIT_OK;
    match cli.command {
        Command::Weights => {
            require_matroid("weights")?;
            let report = WeightReport::build(&matroid, cap).map_err(cap_error)?;
            if cli.json {
                out.push_str(&report.to_json());
                out.push('\n');
            } else {
                writeln!(out, "d: {}", join(&report.weights)).unwrap();
            }
        }
        Command::Betti => {
            let t = table()?;
            if cli.json {
                out.push_str(&t.to_json(cli.fine));
                out.push('\n');
            } else {
                writeln!(out, "global: {}", join(&t.global())).unwrap();
                for (&(i, d), &b) in t.graded() {
                    writeln!(out, "beta[{i},{d}] = {b}").unwrap();
                }
                if cli.fine {
                    let mut fine: Vec<_> = t.fine().iter().collect();
                    fine.sort_by_key(|(&(i, s), _)| (i, s.display_key()));
                    for (&(i, s), &b) in fine {
                        writeln!(out, "beta[{i},{s}] = {b}").unwrap();
                    }
                }
            }
        }
        Command::Diagram => {
            let t = table()?;
            if cli.json {
                out.push_str(&t.to_json(cli.fine));
                out.push('\n');
            } else {
                out.push_str(&t.diagram().to_string());
            }
        }
        Command::Whitney => {
            require_matroid("whitney")?;
            let w = whitney_polynomial(&matroid);
            if cli.json {
                let terms: Vec<[u64; 3]> = w
                    .terms()
                    .into_iter()
                    .map(|(ex, ey, c)| [ex as u64, ey as u64, c])
                    .collect();
                out.push_str(&serde_json::json!({ "whitney": terms }).to_string());
                out.push('\n');
            } else {
                writeln!(out, "W(x,y) = {w}").unwrap();
                let fx: Vec<String> = w
                    .x_part()
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(e, &c)| match (e, c) {
                        (0, _) => c.to_string(),
                        (1, 1) => "x".into(),
                        (1, _) => format!("{c}x"),
                        (_, 1) => format!("x^{e}"),
                        _ => format!("{c}x^{e}"),
                    })
                    .collect();
                writeln!(out, "W(x,0) = {}", fx.join("+")).unwrap();
            }
        }
        Command::Mds => {
            require_matroid("mds")?;
            let t = table()?;
            let profile = mds_profile(&matroid, &t).map_err(cap_error)?;
            if cli.json {
                out.push_str(&serde_json::to_string(&profile).expect("profile serializes"));
                out.push('\n');
            } else {
                let opt = |o: Option<usize>| o.map_or("none".to_string(), |h| h.to_string());
                writeln!(out, "mds level: {}", opt(profile.mds_level)).unwrap();
                writeln!(out, "MDS: {}", if profile.is_mds() { "yes" } else { "no" }).unwrap();
                writeln!(out, "linear tail from: {}", opt(profile.linear_tail_from)).unwrap();
                let isthmuses = if profile.isthmuses.is_empty() {
                    "none".to_string()
                } else {
                    join(&profile.isthmuses)
                };
                writeln!(out, "isthmuses: {isthmuses}").unwrap();
                if let Some(ok) = profile.alexander_dual_is_matroid {
                    writeln!(
                        out,
                        "alexander dual is a matroid: {}",
                        if ok { "yes" } else { "no" }
                    )
                    .unwrap();
                }
            }
        }
        Command::Verify => {
            let checks = verify(&matroid, field, cap).map_err(cap_error)?;
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {}: {}", c.name, c.detail).unwrap();
                if !c.passed {
                    code = EXIT_VERIFY;
                }
            }
        }
    }
    Ok(Output {
        code,
        stdout: out,
        warnings,
    })
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Oracle cross-checks for one matroid.
pub fn verify(m: &Matroid, field: PrimeField, cap: usize) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };

    push(
        "rank-axioms",
        rank_axioms_hold(m),
        "monotone, unit-increase, submodular".into(),
    );

    let fast = betti_fine_matroid(m, cap)?;
    let complex = SimplicialComplex::independence_complex(m);
    let hochster = betti_fine_hochster(&complex, field, cap)?;
    push(
        "fast-path-vs-hochster",
        fast == hochster,
        format!(
            "{} nonzero entries over GF({})",
            fast.fine().len(),
            field.modulus()
        ),
    );

    let k = m.corank();
    let from_betti = weights_from_betti(&fast, k);
    let brute = weights_bruteforce(m);
    push(
        "weights-vs-bruteforce",
        from_betti.as_ref() == Ok(&brute),
        format!("d = {}", join(&brute)),
    );

    let length = fast.length().unwrap_or(0);
    push(
        "resolution-length",
        length == k,
        format!("length {length}, n - r = {k}"),
    );

    let support = m.circuits().support().len();
    let top = brute.last().copied().unwrap_or(0);
    push(
        "top-weight-is-support",
        top == support,
        format!("d_k = {top}, support = {support}"),
    );

    let alexander = complex.alexander_dual();
    let mut independent = true;
    let mut reference: Option<(BettiTable, BettiTable)> = None;
    for p in [2u64, 3, 5] {
        let f = PrimeField::new(p).expect("small primes");
        let pair = (
            betti_fine_hochster(&complex, f, cap)?,
            betti_fine_hochster(&alexander, f, cap)?,
        );
        match &reference {
            None => reference = Some(pair),
            Some(r) => independent &= *r == pair,
        }
    }
    push(
        "field-independence",
        independent,
        "GF(2), GF(3), GF(5)".into(),
    );

    let wei = wei_duality_check(m);
    let detail = match &wei {
        WeiDuality::Holds => "partition of 1..n".to_string(),
        WeiDuality::NotApplicable => "not applicable (loops or isthmuses)".to_string(),
        WeiDuality::Fails {
            weights,
            dual_weights,
        } => {
            format!("d = {}, dual d = {}", join(weights), join(dual_weights))
        }
    };
    push(
        "wei-duality",
        !matches!(wei, WeiDuality::Fails { .. }),
        detail,
    );

    let witness_ok = all_subsets(m.ground_size()).all(|s| {
        let w = m.nonredundant_witness(s);
        w.len() == m.nullity(s) && m.is_nonredundant(&w).unwrap_or(false)
    });
    push(
        "nonredundancy-degree",
        witness_ok,
        "witness size equals nullity on every subset".into(),
    );

    let h = complex.h_vector(m.full_rank());
    let h_top = h.iter().rev().find(|&&x| x != 0).copied().unwrap_or(0);
    let top_degrees = fast.degrees_in(k);
    let top_beta = top_degrees
        .first()
        .map_or(0, |&d| fast.graded_entry(k, d) as i64);
    push(
        "levelness",
        top_degrees.len() == 1 && top_beta == h_top,
        format!("beta top = {top_beta}, h_s = {h_top}"),
    );
    Ok(checks)
}
