//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Runs as a plain binary (no libtest harness) so the verdict lines are
//! always printed. Tolerances are the constants below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hvec_core::bounds::{
    chained_bound, corollary210_predicate, corollary26_predicate, ghms_feasible, main_theorem_bound, theorem214_predicate,
    verify_instance,
};
use hvec_core::combinatorics::{
    binomial, full_alternating_sum, is_o_sequence, lemma27_lhs, lemma27_rhs, macaulay_expansion, BinomialExpansion,
};
use hvec_core::generators::{example211, random_module, truncated_gorenstein_conic};
use hvec_core::identities::{check_identities, degree_data, DegreeData, GENERIC_LOWER_BOUND};
use hvec_core::io::{write_module, ModuleFile};
use hvec_core::report::CheckOutcome;
use hvec_core::{Field, HVector, InverseSystemModule, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LEMMA27_TMAX: i64 = 60;
const LEMMA27_BUDGET: Duration = Duration::from_secs(1);
const GRID_BUDGET: Duration = Duration::from_secs(30);
const TRIALS: usize = 5;
const STRESS_INSTANCES: usize = 100;
const STRESS_SEED: u64 = 20_240_601;
const IDENTITY_INSTANCES: usize = 25;
const IDENTITY_SEED: u64 = 7_000;
const EXPANSION_NMAX: u64 = 5000;
const EXPANSION_IMAX: u32 = 12;
const THM214_RMAX: u64 = 7;
const H212: [u64; 7] = [1, 3, 5, 7, 7, 5, 3];

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn hv(v: &[u64]) -> HVector {
    HVector::new(v.to_vec())
}

fn sharp_h(t: u64, p: u64, e: usize) -> HVector {
    let mut h = vec![1];
    h.extend(std::iter::repeat_n((t + 1) * p, e - 1));
    h.push(t);
    HVector::new(h)
}

// ---- criterion 1 ----------------------------------------------------------

fn lemma27() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut pairs = 0;
    for t in 2..=LEMMA27_TMAX {
        for j in 2..=t {
            pairs += 1;
            let ok = lemma27_lhs(t, j).map(|l| l == lemma27_rhs(t, j)).unwrap_or(false)
                && full_alternating_sum(t, j) == 0.into();
            if !ok {
                bad.push((t, j));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        bad.is_empty() && elapsed < LEMMA27_BUDGET,
        format!("{pairs} pairs, {} failures {bad:?}, {elapsed:?} (budget {LEMMA27_BUDGET:?})", bad.len()),
    )
}

// ---- criterion 2 ----------------------------------------------------------

/// Integers produced by the sharp grid: parent h and, per c, (empirical, bound).
type GridData = Vec<(String, HVector, Vec<(HVector, Vec<u64>)>)>;

fn grid_data<F: Field>(field: F) -> Result<GridData, String> {
    let mut out = Vec::new();
    for t in 2..=4usize {
        for p in 1..=2usize {
            for e in 2..=6usize {
                let m = example211(t, p, e, field.clone()).map_err(|e| e.to_string())?;
                let h = m.h_vector();
                let mut quotients = Vec::new();
                for c in 1..t {
                    let emp = m.empirical_generic_h(c, TRIALS, (t * 100 + p * 10 + e) as u64).map_err(|e| e.to_string())?;
                    let bound = main_theorem_bound(&h, t as u64, c as u64).map_err(|e| e.to_string())?;
                    quotients.push((emp.h, bound.entries));
                }
                out.push((m.label().to_string(), h, quotients));
            }
        }
    }
    Ok(out)
}

fn sharp_grid(data: &Result<GridData, String>, elapsed: Duration) -> Verdict {
    let data = match data {
        Ok(d) => d,
        Err(e) => return verdict(false, e.clone()),
    };
    let mut bad = Vec::new();
    for (label, h, quotients) in data {
        let (t, p, e) = (h.top(), h.codimension() / (h.top() + 1), h.socle_degree());
        if *h != sharp_h(t, p, e) {
            bad.push(format!("{label}: h = {h}"));
        }
        for (k, (emp, bound)) in quotients.iter().enumerate() {
            let c = k as u64 + 1;
            let want = sharp_h(c, p, e);
            if *emp != want || bound.as_slice() != want.entries() {
                bad.push(format!("{label} c={c}: empirical {emp}, bound {bound:?}, expected {want}"));
            }
        }
    }
    let quotients: usize = data.iter().map(|d| d.2.len()).sum();
    verdict(
        bad.is_empty() && elapsed < GRID_BUDGET,
        format!("{} modules, {quotients} quotients tight, {elapsed:?} (budget {GRID_BUDGET:?}) {bad:?}", data.len()),
    )
}

// ---- criterion 3 ----------------------------------------------------------

fn example212() -> Verdict {
    let h = hv(&H212);
    let mut bad = Vec::new();
    let direct2 = main_theorem_bound(&h, 3, 2).map(|b| b.entries).ok();
    if direct2.as_deref() != Some(&[1, 3, 4, 6, 5, 4, 2][..]) {
        bad.push(format!("c=2 bound {direct2:?}"));
    }
    let direct1 = main_theorem_bound(&h, 3, 1).map(|b| b.entries).ok();
    if direct1.as_deref() != Some(&[1, 2, 3, 4, 3, 2, 1][..]) {
        bad.push(format!("c=1 bound {direct1:?}"));
    }
    if ghms_feasible(&h, &hv(&[1, 3, 4, 6, 5, 4, 2]), 2).unwrap_or(true) {
        bad.push("(1,3,4,6,5,4,2) accepted".into());
    }
    if !ghms_feasible(&h, &hv(&[1, 3, 5, 6, 6, 4, 2]), 2).unwrap_or(false) {
        bad.push("(1,3,5,6,6,4,2) rejected".into());
    }
    match chained_bound(&h, 3, &[3, 2, 1], true) {
        Ok(b) if b.as_h_vector().dominates(&hv(&[1, 3, 4, 4, 4, 3, 1])) => {}
        other => bad.push(format!("chained {other:?}")),
    }
    verdict(bad.is_empty(), if bad.is_empty() { "all regression values match".to_string() } else { bad.join("; ") })
}

// ---- criteria 4, 7 and part of 8 -------------------------------------------

struct StressCase {
    label: String,
    h: HVector,
    t: usize,
    /// `(c, empirical, bound)` for every admissible `c`.
    quotients: Vec<(usize, HVector, Vec<u64>)>,
}

fn stress_corpus() -> Result<Vec<StressCase>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(STRESS_SEED);
    let mut out = Vec::new();
    for k in 0..STRESS_INSTANCES {
        let r = rng.gen_range(2..=5usize);
        let e = rng.gen_range(2..=8usize);
        let dim = binomial((e + r - 1) as i64, (r - 1) as i64).to_string().parse::<usize>().unwrap();
        let t = rng.gen_range(2..=4usize.min(dim));
        let density = [1.0, 0.6, 0.3][k % 3];
        let seed = STRESS_SEED + k as u64;
        let m = random_module(r, e, t, density, seed, PrimeField::default()).map_err(|e| e.to_string())?;
        let mut quotients = Vec::new();
        for c in 1..t {
            let rep = verify_instance(&m, c, TRIALS, seed).map_err(|e| e.to_string())?;
            quotients.push((c, rep.empirical, rep.bound));
        }
        out.push(StressCase { label: m.label().to_string(), h: m.h_vector(), t, quotients });
    }
    Ok(out)
}

fn stress(corpus: &[StressCase]) -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for case in corpus {
        for (c, emp, bound) in &case.quotients {
            checked += 1;
            if !emp.dominates(&hv(bound)) {
                bad.push(format!("{} c={c}: {emp} vs {bound:?}", case.label));
            }
        }
    }
    verdict(bad.is_empty(), format!("{} modules, {checked} quotients, {} violations {bad:?}", corpus.len(), bad.len()))
}

fn corollaries(corpus: &[StressCase]) -> Verdict {
    let (mut n26, mut n210) = (0, 0);
    let mut bad = Vec::new();
    for case in corpus {
        let r = case.h.codimension();
        let t = case.t as u64;
        let h1_of = |c: usize| case.quotients.iter().find(|q| q.0 == c).map(|q| q.1.get(1));
        if corollary26_predicate(&case.h, t) {
            n26 += 1;
            if h1_of(1) != Some(r) {
                bad.push(format!("{} c=1: H_1 {:?} != r {r}", case.label, h1_of(1)));
            }
        }
        if corollary210_predicate(&case.h, t) {
            n210 += 1;
            if h1_of(case.t - 1) != Some(r) {
                bad.push(format!("{} c={}: H_1 {:?} != r {r}", case.label, case.t - 1, h1_of(case.t - 1)));
            }
        }
    }
    verdict(
        bad.is_empty() && n26 > 0 && n210 > 0,
        format!("hypothesis met: {n26} (gorenstein), {n210} (type t-1); {} failures {bad:?}", bad.len()),
    )
}

// ---- criteria 5, 6 ---------------------------------------------------------

/// The identity corpus, built over the rationals with integer coefficients
/// so the very same modules can be read over any field.
fn identity_corpus() -> Result<Vec<String>, String> {
    (0..IDENTITY_INSTANCES)
        .map(|k| {
            let t = 2 + k % 3;
            let r = 2 + (k / 3) % 3;
            let e = 3 + (k / 9) % 3;
            let density = if k % 2 == 0 { 1.0 } else { 0.5 };
            let m = random_module(r, e, t, density, IDENTITY_SEED + k as u64, Rationals).map_err(|e| e.to_string())?;
            write_module(&m).map_err(|e| e.to_string())
        })
        .collect()
}

fn load<F: Field>(text: &str, field: F) -> Result<InverseSystemModule<F>, String> {
    ModuleFile::parse(text).and_then(|f| f.build(field, "")).map_err(|e| e.to_string())
}

type IdentityRun = Vec<(String, Vec<DegreeData>, Vec<CheckOutcome>)>;

fn identity_run<F: Field>(corpus: &[String], field: F) -> Result<IdentityRun, String> {
    corpus
        .iter()
        .enumerate()
        .map(|(k, text)| {
            let m = load(text, field.clone())?;
            let seed = IDENTITY_SEED + k as u64;
            let data = degree_data(&m, TRIALS, seed).map_err(|e| e.to_string())?;
            let checks = check_identities(&m, TRIALS, seed).map_err(|e| e.to_string())?;
            Ok((m.label().to_string(), data, checks))
        })
        .collect()
}

fn identities(run: &Result<IdentityRun, String>) -> Verdict {
    let run = match run {
        Ok(r) => r,
        Err(e) => return verdict(false, e.clone()),
    };
    let checks: Vec<&CheckOutcome> = run.iter().flat_map(|r| &r.2).filter(|c| c.name != GENERIC_LOWER_BOUND).collect();
    let failed: Vec<&&CheckOutcome> = checks.iter().filter(|c| !c.passed).collect();
    let instances_failing = run
        .iter()
        .filter(|r| r.2.iter().any(|c| c.name != GENERIC_LOWER_BOUND && !c.passed))
        .count();
    let sample: Vec<String> = failed
        .iter()
        .take(4)
        .map(|c| format!("[{} u={} {}: {} vs {}]", c.label, c.u, c.name, c.lhs, c.rhs))
        .collect();
    verdict(
        failed.is_empty(),
        format!(
            "{} equalities on {} instances, {} failed on {instances_failing} instances {}",
            checks.len(),
            run.len(),
            failed.len(),
            sample.join(" ")
        ),
    )
}

fn theorem24(run: &Result<IdentityRun, String>) -> Verdict {
    let run = match run {
        Ok(r) => r,
        Err(e) => return verdict(false, e.clone()),
    };
    let checks: Vec<&CheckOutcome> = run.iter().flat_map(|r| &r.2).filter(|c| c.name == GENERIC_LOWER_BOUND).collect();
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("[{} u={}: {} < {}]", c.label, c.u, c.lhs, c.rhs))
        .collect();
    verdict(failed.is_empty(), format!("{} degrees checked, {} failed {}", checks.len(), failed.len(), failed.join(" ")))
}

// ---- criterion 8 -----------------------------------------------------------

fn expansion_is_canonical(x: &BinomialExpansion) -> bool {
    let sum: num_bigint::BigUint = x.parts.iter().map(|&(top, k)| binomial(top as i64, k as i64)).sum();
    let descending_k = x.parts.iter().enumerate().all(|(idx, &(_, k))| k as usize + idx == x.i as usize);
    let strict_tops = x.parts.windows(2).all(|w| w[0].0 > w[1].0);
    let last_ok = x.parts.last().is_some_and(|&(top, k)| top >= k as u64 && k >= 1);
    sum == num_bigint::BigUint::from(x.n) && descending_k && strict_tops && last_ok
}

/// Counts every admissible expansion of `n` by exhaustive search.
fn count_expansions(n: u64, i: u32, max_top: u64) -> usize {
    if n == 0 {
        return 1;
    }
    if i == 0 {
        return 0;
    }
    (i as u64..max_top)
        .map(|top| (top, binomial(top as i64, i as i64).to_string().parse::<u64>().unwrap()))
        .filter(|&(_, b)| b <= n)
        .map(|(top, b)| count_expansions(n - b, i - 1, top))
        .sum()
}

fn macaulay(grid: &Result<GridData, String>, stress: &Result<Vec<StressCase>, String>) -> Verdict {
    let mut bad = Vec::new();
    for n in 1..=EXPANSION_NMAX {
        for i in 1..=EXPANSION_IMAX {
            match macaulay_expansion(n, i) {
                Ok(x) if expansion_is_canonical(&x) => {}
                other => bad.push(format!("expansion n={n} i={i}: {other:?}")),
            }
        }
    }
    for n in 1..=300u64 {
        for i in 1..=4u32 {
            let count = count_expansions(n, i, n + i as u64 + 1);
            if count != 1 {
                bad.push(format!("n={n} i={i} has {count} expansions"));
            }
        }
    }
    match is_o_sequence(&[1, 3, 4, 6]) {
        Ok(v) if v.first_violation == Some(2) => {}
        other => bad.push(format!("(1,3,4,6): {other:?}")),
    }

    let mut computed: Vec<(String, HVector)> = Vec::new();
    if let Ok(grid) = grid {
        for (label, h, qs) in grid {
            computed.push((label.clone(), h.clone()));
            computed.extend(qs.iter().map(|q| (format!("{label} quotient"), q.0.clone())));
        }
    } else {
        bad.push("criterion 2 data missing".into());
    }
    if let Ok(stress) = stress {
        for case in stress {
            computed.push((case.label.clone(), case.h.clone()));
            computed.extend(case.quotients.iter().map(|q| (format!("{} c={}", case.label, q.0), q.1.clone())));
        }
    } else {
        bad.push("criterion 4 data missing".into());
    }
    let mut o_checked = 0;
    let mut thm_checked = 0;
    for (label, h) in &computed {
        o_checked += 1;
        let signed: Vec<i64> = h.entries().iter().map(|&x| x as i64).collect();
        if !is_o_sequence(&signed).map(|v| v.is_o_sequence).unwrap_or(false) {
            bad.push(format!("{label}: {h} is not an O-sequence"));
        }
        if h.codimension() <= THM214_RMAX {
            thm_checked += 1;
            if !theorem214_predicate(h) {
                bad.push(format!("{label}: {h} has a < r"));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "expansions n<={EXPANSION_NMAX} i<={EXPANSION_IMAX} canonical; {o_checked} O-sequence checks; {thm_checked} r<={THM214_RMAX} checks; {} failures {:?}",
            bad.len(),
            bad.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

// ---- criterion 9 -----------------------------------------------------------

fn conic_bounds<F: Field>(field: F) -> Result<(HVector, Vec<u64>, Vec<u64>), String> {
    let m = truncated_gorenstein_conic(7, 6, field, 1).map_err(|e| e.to_string())?;
    let h = m.h_vector();
    let b2 = main_theorem_bound(&h, 3, 2).map_err(|e| e.to_string())?.entries;
    let chained = chained_bound(&h, 3, &[3, 2, 1], true).map_err(|e| e.to_string())?.entries;
    Ok((h, b2, chained))
}

fn dual_field(
    grid_mod: &Result<GridData, String>,
    ident_mod: &Result<IdentityRun, String>,
    corpus: &[String],
) -> Verdict {
    let mut bad = Vec::new();
    let grid_q = grid_data(Rationals);
    if grid_q.is_err() || grid_mod.is_err() || grid_q.as_ref().ok() != grid_mod.as_ref().ok() {
        bad.push("example grid differs".to_string());
    }
    let conic_mod = conic_bounds(PrimeField::default());
    let conic_q = conic_bounds(Rationals);
    match (&conic_mod, &conic_q) {
        (Ok(a), Ok(b)) if a == b && a.0 == hv(&H212) => {}
        _ => bad.push(format!("conic regression differs: {conic_mod:?} vs {conic_q:?}")),
    }
    let ident_q = identity_run(corpus, Rationals);
    match (&ident_q, ident_mod) {
        (Ok(q), Ok(m)) => {
            for (a, b) in q.iter().zip(m) {
                if a.1 != b.1 {
                    bad.push(format!("{}: degree data differ", a.0));
                }
                let verdicts = |x: &[CheckOutcome]| x.iter().map(|c| (c.lhs, c.rhs, c.passed)).collect::<Vec<_>>();
                if verdicts(&a.2) != verdicts(&b.2) {
                    bad.push(format!("{}: identity checks differ", a.0));
                }
            }
        }
        _ => bad.push("identity run failed".into()),
    }
    verdict(bad.is_empty(), if bad.is_empty() { "rational and modular integers identical".to_string() } else { bad.join("; ") })
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Verdict)> = Vec::new();
    let mut report = |n: u32, name: &'static str, v: Verdict| {
        println!("{} criterion {n} ({name}): {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
        results.push((n, name, v));
    };

    report(1, "binomial alternating sums", lemma27());

    let start = Instant::now();
    let grid = grid_data(PrimeField::default());
    report(2, "sharp family", sharp_grid(&grid, start.elapsed()));

    report(3, "regression h=(1,3,5,7,7,5,3)", example212());

    let stress_data = stress_corpus();
    match &stress_data {
        Ok(corpus) => {
            report(4, "lower bound stress test", stress(corpus));
            report(7, "codimension-preserving quotients", corollaries(corpus));
        }
        Err(e) => {
            report(4, "lower bound stress test", verdict(false, e.clone()));
            report(7, "codimension-preserving quotients", verdict(false, e.clone()));
        }
    }

    let corpus = identity_corpus();
    let ident = corpus.as_ref().map_err(Clone::clone).and_then(|c| identity_run(c, PrimeField::default()));
    report(5, "intersection identities", identities(&ident));
    report(6, "generic quotient inequality", theorem24(&ident));

    report(8, "Macaulay machinery", macaulay(&grid, &stress_data));

    let corpus = corpus.unwrap_or_default();
    report(9, "dual-field certification", dual_field(&grid, &ident, &corpus));

    results.sort_by_key(|r| r.0);
    let failed: Vec<u32> = results.iter().filter(|r| !r.2.passed).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria {failed:?} fail");
        ExitCode::FAILURE
    }
}
