use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use betti_core::golden::ReproTarget;
use betti_core::groebner::Ideal;
use betti_core::hierarchy::{
    betti_bound, hypothesis_from_degree, kp1_diagnostic, verify_bounds, ConditionReport, DeclaredConditions,
    HierarchyBound, Hypothesis,
};
use betti_core::io::IdealFile;
use betti_core::polycore::{Field, FieldSpec, PrimeField, Rationals};
use betti_core::resolution::{
    betti_numbers, free_resolution, numeric_invariants, truncated_betti_numbers, BettiTable, NumericInvariants,
};
use betti_core::varieties::{Recipe, Stage};
use log::info;

use crate::{Cli, Command, Format, Outcome};

/// Runs `$body` with `$f` bound to the field described by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Construct { recipe, output } => construct(cli, recipe, output.as_deref()),
        Command::Resolve { file } => resolve(cli, file),
        Command::Betti { file, csv } => betti(cli, file, csv.as_deref()),
        Command::Verify { file, k, m, assert, declare } => verify(cli, file, *k, *m, *assert, declare),
        Command::Bounds { e, k, m } => bounds(cli, *e, *k, *m),
        Command::Reproduce { target } => reproduce(cli, target),
    }
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, code: 0 })
}

fn construct(cli: &Cli, text: &str, output: Option<&Path>) -> Result<Outcome> {
    let recipe: Recipe = text.parse()?;
    let spec = cli.field.unwrap_or_default();
    info!("construct {recipe} over {spec} with seed {}", cli.seed);
    let comments = vec![
        format!("construct: {recipe}"),
        format!("seed: {}", cli.seed),
        format!("field: {spec}"),
        format!("tool: betti {}", env!("CARGO_PKG_VERSION")),
    ];
    let file = with_field!(spec, |f| IdealFile::from_ideal(&recipe.build(&f, cli.seed)?, comments));
    let rendered = file.render();
    match output {
        Some(path) => {
            fs::write(path, &rendered).with_context(|| format!("writing {}", path.display()))?;
            ok(format!("wrote {} generators to {}\n", file.generators.len(), path.display()))
        }
        None => ok(rendered),
    }
}

fn load(cli: &Cli, path: &Path) -> Result<(IdealFile, FieldSpec)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = IdealFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let spec = cli.field.unwrap_or(file.field);
    Ok((file, spec))
}

fn table_of<F: Field>(cli: &Cli, ideal: &Ideal<F>) -> Result<BettiTable> {
    Ok(match cli.degree_bound {
        Some(b) => truncated_betti_numbers(ideal, b)?,
        None => betti_numbers(ideal)?,
    })
}

fn format_table(format: Format, t: &BettiTable) -> String {
    match format {
        Format::Grid => t.to_grid(),
        Format::Csv => t.to_csv(),
        Format::Kv => t.to_kv(),
    }
}

fn betti(cli: &Cli, path: &Path, csv: Option<&Path>) -> Result<Outcome> {
    let (file, spec) = load(cli, path)?;
    let table = with_field!(spec, |f| table_of(cli, &file.to_ideal(f)?)?);
    if let Some(csv) = csv {
        fs::write(csv, table.to_csv()).with_context(|| format!("writing {}", csv.display()))?;
    }
    ok(format_table(cli.format, &table))
}

fn invariants_kv(out: &mut String, inv: &NumericInvariants) {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "dimension={}", inv.dimension);
    let _ = writeln!(out, "codimension={}", inv.codimension);
    let _ = writeln!(out, "degree={}", inv.degree);
    let _ = writeln!(out, "regularity={}", inv.regularity);
    let _ = writeln!(out, "projective_dimension={}", inv.projective_dimension);
    let _ = writeln!(out, "acm={}", inv.is_acm);
    let _ = writeln!(out, "n2p={}", inv.n2p);
    let _ = writeln!(out, "hilbert_numerator={}", join(&inv.hilbert_numerator));
    let _ = writeln!(out, "h_vector={}", join(&inv.h_vector));
}

fn resolve(cli: &Cli, path: &Path) -> Result<Outcome> {
    let (file, spec) = load(cli, path)?;
    let (twists, inv) = with_field!(spec, |f| {
        let ideal = file.to_ideal(f)?;
        let res = free_resolution(&ideal)?;
        let twists: Vec<Vec<i32>> = res.modules.iter().map(|m| m.twists.clone()).collect();
        let table = betti_numbers(&ideal)?;
        let inv = if ideal.is_zero() { None } else { Some(numeric_invariants(&ideal, &table)?) };
        (twists, inv)
    });
    let mut out = String::new();
    for (i, t) in twists.iter().enumerate() {
        let list = degree_multiset(t);
        match cli.format {
            Format::Kv => {
                let _ = writeln!(out, "rank.{i}={}", t.len());
            }
            Format::Csv if i == 0 => {
                let _ = writeln!(out, "i,rank\n{i},{}", t.len());
            }
            Format::Csv => {
                let _ = writeln!(out, "{i},{}", t.len());
            }
            Format::Grid => {
                let _ = writeln!(out, "F{i}: rank {} degrees {list}", t.len());
            }
        }
    }
    if let (Some(inv), false) = (inv, cli.format == Format::Csv) {
        invariants_kv(&mut out, &inv);
    }
    ok(out)
}

/// `2^10 3` for ten generators of degree 2 and one of degree 3.
fn degree_multiset(twists: &[i32]) -> String {
    let mut counts = std::collections::BTreeMap::new();
    for &d in twists {
        *counts.entry(d).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .map(|(d, c)| if c == 1 { d.to_string() } else { format!("{d}^{c}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Label for containments that hold by construction.
fn witnessed(file: &IdealFile) -> Option<String> {
    let recipe: Recipe = file.comment_value("construct")?.parse().ok()?;
    match recipe.stages.first()? {
        Stage::Divisor { a, b, .. } if recipe.stages.len() == 1 => {
            Some(format!("contained in the scroll S({a},{b}) by construction"))
        }
        Stage::Scroll(a) if recipe.stages.len() == 1 => Some(format!("equal to the scroll S{a:?} by construction")),
        _ => None,
    }
}

fn verify(cli: &Cli, path: &Path, k: i64, m: Option<i64>, asserted: bool, declare: &[(i64, i64)]) -> Result<Outcome> {
    let (file, spec) = load(cli, path)?;
    let (table, inv) = with_field!(spec, |f| {
        let ideal = file.to_ideal(f)?;
        let table = table_of(cli, &ideal)?;
        let inv = numeric_invariants(&ideal, &betti_numbers(&ideal)?)?;
        (table, inv)
    });
    let e = inv.codimension as i64;
    let d = inv.degree as i64;
    if e < 2 {
        bail!("codimension {e} is below 2; the bounds start at e = 2");
    }
    let m = m.unwrap_or_else(|| (d - e - 1).clamp(0, (e - k).max(0)));
    let hb = HierarchyBound::new(e, k, m)?;
    let hypothesis = if asserted { Hypothesis::Asserted } else { hypothesis_from_degree(&hb, d) };
    let mut report = verify_bounds(&table, &hb, hypothesis);
    let kp1 = kp1_diagnostic(&table, e, d, &DeclaredConditions { facts: declare.to_vec() });
    report.labels.extend(kp1.labels);
    report.messages.extend(kp1.messages);
    report.falsifiers.extend(kp1.falsifiers);
    if let Some(w) = witnessed(&file) {
        report.labels.push(w);
    }
    let text = match cli.format {
        Format::Kv => format!("degree={d}\ncodimension={e}\n{}", report.to_kv()),
        Format::Csv => report_csv(&report),
        Format::Grid => report_text(&report, d),
    };
    Ok(Outcome { text, code: report.exit_code() as u8 })
}

fn report_csv(r: &ConditionReport) -> String {
    let mut out = String::from("p,beta,bound,verdict\n");
    for c in &r.checks {
        let _ = writeln!(out, "{},{},{},{}", c.p, c.value, c.bound, c.verdict);
    }
    out
}

fn report_text(r: &ConditionReport, d: i64) -> String {
    let mut out = String::new();
    if let Some(b) = &r.bound {
        let _ = writeln!(out, "{b}, degree {d}, hypothesis {}", r.hypothesis);
    }
    let _ = writeln!(out, "{:>3} {:>6} {:>6}  verdict", "p", "beta", "bound");
    for c in &r.checks {
        let _ = writeln!(out, "{:>3} {:>6} {:>6}  {}", c.p, c.value, c.bound, c.verdict);
    }
    if let Some(x) = r.extremal {
        let _ = writeln!(out, "extremal: {}", if x { "yes" } else { "no" });
    }
    for l in &r.labels {
        let _ = writeln!(out, "label: {l}");
    }
    for l in &r.messages {
        let _ = writeln!(out, "note: {l}");
    }
    for l in &r.falsifiers {
        let _ = writeln!(out, "FALSIFIER: {l}");
    }
    let _ = writeln!(out, "exit: {}", r.exit_code());
    out
}

fn bounds(cli: &Cli, e: i64, k: Option<i64>, m: Option<i64>) -> Result<Outcome> {
    let rows: Vec<HierarchyBound> = match (k, m) {
        (Some(k), Some(m)) => vec![HierarchyBound::new(e, k, m)?],
        (Some(k), None) => (0..=e - k).map(|m| HierarchyBound::new(e, k, m)).collect::<Result<_, _>>()?,
        (None, Some(_)) => bail!("--m needs --k"),
        (None, None) => {
            HierarchyBound::new(e, 0, 0)?;
            (0..e).flat_map(|k| (0..=e - k).map(move |m| HierarchyBound::new(e, k, m))).collect::<Result<_, _>>()?
        }
    };
    let ps: Vec<i64> = (1..=e).collect();
    let mut out = String::new();
    match cli.format {
        Format::Grid => {
            let _ = write!(out, "  k  m |");
            for p in &ps {
                let _ = write!(out, " {:>6}", format!("p={p}"));
            }
            out.push('\n');
        }
        Format::Csv => out.push_str("e,k,m,p,bound\n"),
        Format::Kv => {}
    }
    for hb in &rows {
        if cli.format == Format::Grid {
            let _ = write!(out, "{:>3} {:>2} |", hb.k, hb.m);
        }
        for &p in &ps {
            let b = betti_bound(hb, p)?;
            match cli.format {
                Format::Grid => {
                    let _ = write!(out, " {b:>6}");
                }
                Format::Csv => {
                    let _ = writeln!(out, "{e},{},{},{p},{b}", hb.k, hb.m);
                }
                Format::Kv => {
                    let _ = writeln!(out, "bound.{}.{}.{p}={b}", hb.k, hb.m);
                }
            }
        }
        if cli.format == Format::Grid {
            out.push('\n');
        }
    }
    ok(out)
}

fn reproduce(cli: &Cli, which: &str) -> Result<Outcome> {
    let targets: Vec<ReproTarget> =
        if which == "all" { ReproTarget::ALL.to_vec() } else { vec![which.parse()?] };
    let spec = cli.field.unwrap_or_default();
    let mut out = String::new();
    let mut failed = false;
    for t in targets {
        let outcome = with_field!(spec, |f| t.run(&f)?);
        let pass = outcome.passed();
        failed |= !pass;
        let _ = writeln!(out, "{t} [{spec}]: {}", if pass { "pass" } else { "FAIL" });
        for (i, j, got, want) in &outcome.mismatches {
            let _ = writeln!(out, "  beta_{i},{j}: computed {got}, expected {want}");
        }
        if let Some(h) = &outcome.quadric_hull {
            let _ = writeln!(out, "  quadrics cut out: dimension {}, degree {}, codimension {}", h.dimension, h.degree, h.codimension);
        }
        if cli.format == Format::Grid {
            out.push_str(&outcome.table.to_grid());
        }
    }
    Ok(Outcome { text: out, code: u8::from(failed) })
}
