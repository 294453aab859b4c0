//! Acceptance criteria 1 to 11. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails. Every comparison is exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use betti_core::golden::{quadric_hull, ReproTarget};
use betti_core::groebner::Ideal;
use betti_core::hierarchy::{
    betti_bound, binom, points_identity_check, verify_bounds, Comparison, HierarchyBound, Hypothesis,
};
use betti_core::polycore::{Field, MonomialOrder, PrimeField, Rationals};
use betti_core::resolution::{
    betti_from_ranks, betti_table, euler_identity_holds, free_resolution, numeric_invariants, truncated_betti_numbers,
    BettiTable, NumericInvariants,
};
use betti_core::varieties::{
    random_points, random_points_on_rational_normal_curve, rational_normal_scroll, ScrollSpec,
};
use log::warn;

type Verdict = Result<String, String>;

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

struct CorpusEntry {
    name: String,
    table: BettiTable,
    degree: u64,
    codimension: usize,
}

/// Shared state: every resolution computed by criteria 1 to 8 is checked for
/// self-consistency and recorded for the falsification harness.
#[derive(Default)]
struct Suite {
    corpus: Vec<CorpusEntry>,
    resolutions: usize,
    inconsistencies: Vec<String>,
    lex_checked: Vec<String>,
}

impl Suite {
    /// Minimal resolution with the engine self-checks, recorded in the corpus.
    fn analyze<F: Field>(&mut self, name: &str, ideal: &Ideal<F>) -> (BettiTable, NumericInvariants) {
        let res = free_resolution(ideal).unwrap_or_else(|e| panic!("{name}: {e}"));
        let table = betti_table(&res).unwrap();
        let inv = numeric_invariants(ideal, &table).unwrap();
        self.resolutions += 1;
        let mut bad = |what: &str| self.inconsistencies.push(format!("{name}: {what}"));
        if !euler_identity_holds(ideal, &table).unwrap() {
            bad("Euler identity");
        }
        if !res.is_complex() {
            bad("d∘d != 0");
        }
        if !res.has_no_unit_entries() {
            bad("unit entry in a minimal differential");
        }
        if res.length() > ideal.num_vars() {
            bad("projective dimension exceeds r+1");
        }
        if betti_from_ranks(&res) != table {
            bad("rank formula disagrees with the minimal table");
        }
        if !res.exactness_certificate(11) {
            bad("exactness certificate");
        }
        self.corpus.push(CorpusEntry {
            name: name.to_string(),
            table: table.clone(),
            degree: inv.degree,
            codimension: inv.codimension,
        });
        (table, inv)
    }

    /// Recomputes the table under lex and records a mismatch.
    fn lex_agrees<F: Field>(&mut self, name: &str, ideal: &Ideal<F>, table: &BettiTable) {
        let lex = ideal.with_ring(ideal.ring().reordered(MonomialOrder::Lex));
        let res = free_resolution(&lex).unwrap();
        let t = betti_table(&res).unwrap();
        self.lex_checked.push(name.to_string());
        if &t != table {
            self.inconsistencies.push(format!("{name}: lex table differs: {:?}", t.diff(table)));
        }
    }
}

fn rows(t: &BettiTable, j: usize) -> Vec<u64> {
    t.row(j).into_iter().map(|(_, b)| b).collect()
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let el = start.elapsed();
    if el > budget {
        Err(format!("{what} took {el:.1?}, budget {budget:?}"))
    } else {
        Ok(())
    }
}

fn criterion_1(s: &mut Suite) -> Verdict {
    let target = ReproTarget::MonomialCurve;
    let want = target.expected();
    let mut times = Vec::new();
    let t0 = Instant::now();
    let ideal = target.build(&fp()).map_err(|e| e.to_string())?;
    let (t, _) = s.analyze("monomial curve / F_32003", &ideal);
    within(t0, Duration::from_secs(60), "F_32003 run")?;
    times.push(t0.elapsed());
    s.lex_agrees("monomial curve / F_32003", &ideal, &t);
    if t != want {
        return Err(format!("F_32003 table differs: {:?}", t.diff(&want)));
    }
    let t0 = Instant::now();
    let ideal = target.build(&Rationals).map_err(|e| e.to_string())?;
    let (t, _) = s.analyze("monomial curve / QQ", &ideal);
    within(t0, Duration::from_secs(60), "QQ run")?;
    times.push(t0.elapsed());
    if t != want {
        return Err(format!("QQ table differs: {:?}", t.diff(&want)));
    }
    Ok(format!("rows (10,16,9)/(1,14,26,20,5) over F_32003 and QQ in {:.2?} / {:.2?}", times[0], times[1]))
}

fn criterion_2(s: &mut Suite) -> Verdict {
    let t0 = Instant::now();
    let ideal = ReproTarget::QuarticExtremal.build(&fp()).map_err(|e| e.to_string())?;
    let (t, _) = s.analyze("nu_2 quartic", &ideal);
    within(t0, Duration::from_secs(60), "run")?;
    s.lex_agrees("nu_2 quartic", &ideal, &t);
    if (rows(&t, 1), rows(&t, 2)) != (vec![7, 8, 3], vec![6, 8, 3]) {
        return Err(format!("table {t:?}"));
    }
    let hb = HierarchyBound::new(4, 0, 3).unwrap();
    for p in 1..=3 {
        let b = betti_bound(&hb, p).unwrap();
        if t.get(p as usize, 1) as i64 != b {
            return Err(format!("beta_{{{p},1}} = {} but the bound is {b}", t.get(p as usize, 1)));
        }
    }
    Ok(format!("rows (7,8,3)/(6,8,3), equality with the P(0,3) bound at p=1,2,3 in {:.2?}", t0.elapsed()))
}

fn criterion_3(s: &mut Suite) -> Verdict {
    let t0 = Instant::now();
    let target = ReproTarget::DelPezzoProjection;
    let ideal = target.build(&fp()).map_err(|e| e.to_string())?;
    let (t, inv) = s.analyze("del Pezzo projection", &ideal);
    let hull = quadric_hull(&ideal).map_err(|e| e.to_string())?;
    within(t0, Duration::from_secs(600), "run")?;
    if t != target.expected() {
        return Err(format!("table differs: {:?}", t.diff(&target.expected())));
    }
    if (inv.degree, inv.codimension) != (20, 4) {
        return Err(format!("curve has degree {} and codimension {}", inv.degree, inv.codimension));
    }
    if (hull.dimension, hull.degree, hull.codimension) != (2, 5, 3) {
        return Err(format!("quadrics cut out dim {} deg {} codim {}", hull.dimension, hull.degree, hull.codimension));
    }
    Ok(format!("7-row table of the degree-20 curve; 5 quadrics cut a degree-5 codim-3 surface; {:.2?}", t0.elapsed()))
}

fn criterion_4(s: &mut Suite) -> Verdict {
    let target = ReproTarget::CanonicalCurve;
    let t0 = Instant::now();
    let ideal = target.build(&fp()).map_err(|e| e.to_string())?;
    let truncated = truncated_betti_numbers(&ideal, 3).map_err(|e| e.to_string())?;
    let fallback_time = t0.elapsed();
    if (truncated.get(1, 1), truncated.get(1, 2)) != (28, 0) {
        return Err(format!("truncated beta_{{1,1}}, beta_{{1,2}} = {}, {}", truncated.get(1, 1), truncated.get(1, 2)));
    }
    let (t, inv) = s.analyze("canonical curve", &ideal);
    within(t0, Duration::from_secs(1800), "full table")?;
    if t != target.expected() {
        return Err(format!("full table differs: {:?}", t.diff(&target.expected())));
    }
    Ok(format!(
        "full table (degree {}, e {}) in {:.2?}; truncated check beta_1,1=28, beta_1,2=0 in {fallback_time:.2?}",
        inv.degree,
        inv.codimension,
        t0.elapsed()
    ))
}

fn criterion_5(s: &mut Suite) -> Verdict {
    let t0 = Instant::now();
    let specs: Vec<Vec<u32>> =
        vec![vec![3], vec![4], vec![5], vec![6], vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 3]];
    for a in specs {
        let name = format!("S{a:?}");
        let ideal = rational_normal_scroll(&fp(), &ScrollSpec::new(a).unwrap()).unwrap();
        let (t, inv) = s.analyze(&name, &ideal);
        s.lex_agrees(&name, &ideal, &t);
        let e = inv.codimension as i64;
        for p in 1..=e + 1 {
            let want = p * binom(e + 1, p + 1);
            if t.get(p as usize, 1) as i64 != want {
                return Err(format!("{name}: beta_{{{p},1}} = {}, want {want}", t.get(p as usize, 1)));
            }
        }
        if t.get(e as usize, 1) as i64 != e || t.regularity() != 1 {
            return Err(format!("{name}: beta_{{e,1}} != e or not 2-regular"));
        }
    }
    within(t0, Duration::from_secs(120), "sweep")?;
    Ok(format!("8 varieties of minimal degree, beta_p,1 = p C(e+1,p+1) and beta_e,1 = e; {:.2?}", t0.elapsed()))
}

/// Runs `check` on `seed`, and once more on a derived seed if it fails.
fn with_one_reseed(seed: u64, reseeds: &mut usize, mut check: impl FnMut(u64) -> bool) -> bool {
    if check(seed) {
        return true;
    }
    let retry = seed + 1_000_000;
    warn!("seed {seed} failed a generic property; retrying with seed {retry}");
    *reseeds += 1;
    check(retry)
}

fn criterion_6(s: &mut Suite) -> Verdict {
    let t0 = Instant::now();
    let mut reseeds = 0;
    let mut count = 0;
    for r in 3..=6usize {
        for p in 1..=3usize {
            let d = 2 * r + 1 - p;
            for seed in 0..20u64 {
                let ok = with_one_reseed(seed, &mut reseeds, |sd| {
                    let (_, ideal) = random_points(&fp(), r, d, sd).unwrap();
                    let (t, _) = s.analyze(&format!("{d} points in P^{r} seed {sd}"), &ideal);
                    t.satisfies_n2p(p)
                });
                if !ok {
                    return Err(format!("{d} points in P^{r}, seed {seed}: N_2,{p} fails after a reseed"));
                }
                count += 1;
            }
        }
    }
    within(t0, Duration::from_secs(300), "sweep")?;
    Ok(format!("{count} point sets satisfy N_2,p ({reseeds} reseeds) in {:.2?}", t0.elapsed()))
}

fn criterion_7(s: &mut Suite) -> Verdict {
    let t0 = Instant::now();
    let generic = BettiTable::from_rows(&[(0, 0, &[1]), (1, 1, &[3]), (2, 1, &[1, 6, 3])]);
    let special = BettiTable::from_rows(&[(0, 0, &[1]), (1, 1, &[3, 2]), (2, 1, &[3, 6, 3])]);
    let mut reseeds = 0;
    for seed in 0..20u64 {
        let ok = with_one_reseed(seed, &mut reseeds, |sd| {
            let (_, ideal) = random_points(&fp(), 3, 7, sd).unwrap();
            let name = format!("7 points seed {sd}");
            let (t, _) = s.analyze(&name, &ideal);
            if sd == 0 {
                s.lex_agrees(&name, &ideal, &t);
            }
            t == generic
        });
        if !ok {
            return Err(format!("seed {seed}: not the generic table"));
        }
    }
    for seed in 0..5u64 {
        let (_, ideal) = random_points_on_rational_normal_curve(&fp(), 3, 7, seed).unwrap();
        let name = format!("7 points on the twisted cubic seed {seed}");
        let (t, _) = s.analyze(&name, &ideal);
        if seed == 0 {
            s.lex_agrees(&name, &ideal, &t);
        }
        if t != special {
            return Err(format!("{name}: {:?}", t.diff(&special)));
        }
    }
    within(t0, Duration::from_secs(120), "run")?;
    Ok(format!("20 generic seeds and 5 twisted-cubic seeds match ({reseeds} reseeds) in {:.2?}", t0.elapsed()))
}

fn criterion_8(s: &mut Suite) -> Verdict {
    let t0 = Instant::now();
    for (e, m) in [(3i64, 3i64), (4, 3), (4, 4), (5, 3)] {
        for seed in 0..3u64 {
            let d = (e + 1 + m) as usize;
            let (_, ideal) = random_points(&fp(), e as usize, d, seed).unwrap();
            let (t, _) = s.analyze(&format!("{d} points in P^{e} seed {seed}"), &ideal);
            let v = points_identity_check(&t, e, m);
            if !v.holds() {
                return Err(format!("(e,m)=({e},{m}) seed {seed}: {:?}", v.terms));
            }
        }
    }
    within(t0, Duration::from_secs(300), "run")?;
    Ok(format!("identity holds for (3,3),(4,3),(4,4),(5,3), 3 seeds each, in {:.2?}", t0.elapsed()))
}

fn criterion_9(s: &mut Suite) -> Verdict {
    let mut checked = 0;
    let mut skipped = 0;
    for entry in &s.corpus {
        let e = entry.codimension as i64;
        if e < 2 {
            skipped += 1;
            continue;
        }
        let d = entry.degree as i64;
        let m = (d - e - 1).clamp(0, e);
        let hb = HierarchyBound::new(e, 0, m).unwrap();
        let report = verify_bounds(&entry.table, &hb, Hypothesis::Degree);
        if let Some(c) = report.checks.iter().find(|c| c.verdict == Comparison::Violation) {
            return Err(format!("{}: beta_{{{},1}} = {} > {} under P(0,{m})", entry.name, c.p, c.value, c.bound));
        }
        checked += 1;
    }
    Ok(format!("{checked} tables within their bounds, zero violations ({skipped} hypersurfaces skipped, e < 2)"))
}

fn criterion_10(s: &mut Suite) -> Verdict {
    if !s.inconsistencies.is_empty() {
        return Err(s.inconsistencies.join("; "));
    }
    Ok(format!(
        "{} resolutions: Euler identity, d∘d = 0, no unit entries, pd <= r+1, rank formula, exactness; lex agreement on {} instances",
        s.resolutions,
        s.lex_checked.len()
    ))
}

fn criterion_11(_: &mut Suite) -> Verdict {
    let t0 = Instant::now();
    let mut triples = 0;
    for e in 2..=12i64 {
        for k in 0..e {
            for m in 0..=e - k {
                let hb = HierarchyBound::new(e, k, m).unwrap();
                triples += 1;
                let p = hb.switch_point();
                if p >= 1 {
                    let low = p * binom(e + 1 - k, p + 1) - m * binom(e - k, p - 1);
                    let high = p * binom(e - k, p + 1);
                    if low != high || betti_bound(&hb, p) != Ok(low) {
                        return Err(format!("branches differ at {hb:?}"));
                    }
                }
                if m == e - k && k + 1 <= e - 1 {
                    let next = HierarchyBound::new(e, k + 1, 0).unwrap();
                    for p in 1..=e + 2 {
                        if betti_bound(&hb, p) != betti_bound(&next, p) {
                            return Err(format!("stacking fails at {hb:?}, p = {p}"));
                        }
                    }
                }
            }
        }
    }
    within(t0, Duration::from_secs(1), "sweep")?;
    Ok(format!("{triples} triples: branch coincidence and stacking in {:.2?}", t0.elapsed()))
}

fn main() -> ExitCode {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).is_test(true).try_init();
    let criteria: [(&str, fn(&mut Suite) -> Verdict); 11] = [
        ("golden table, monomial curve", criterion_1),
        ("golden table, extremal quartic", criterion_2),
        ("golden table, del Pezzo projection", criterion_3),
        ("golden table, canonical curve", criterion_4),
        ("minimal degree equality sweep", criterion_5),
        ("general points satisfy N_2,p", criterion_6),
        ("eligible tables for seven points", criterion_7),
        ("points identity", criterion_8),
        ("corpus falsification harness", criterion_9),
        ("engine self-consistency", criterion_10),
        ("bound formula sweep", criterion_11),
    ];
    let mut suite = Suite::default();
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(|| run(&mut suite)))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", n + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
