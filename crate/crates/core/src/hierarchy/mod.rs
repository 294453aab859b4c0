//! Upper bounds on the quadratic strand `β_{p,1}` under the conditions
//! `P(k, m)`, the eligible tables of ACM varieties of degree `e + 4`, and
//! diagnostics that compare computed Betti tables against them.

use std::fmt::{self, Write as _};

use crate::error::{AlgebraError, Result};
use crate::resolution::BettiTable;

/// `C(n, j)` with the extended convention: zero unless `0 <= j <= n`.
pub fn binom(n: i64, j: i64) -> i64 {
    if j < 0 || n < 0 || j > n {
        return 0;
    }
    let j = j.min(n - j);
    (0..j).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Level `k` and offset `m` of a bound in codimension `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HierarchyBound {
    pub e: i64,
    pub k: i64,
    pub m: i64,
}

impl HierarchyBound {
    /// Requires `e >= 2`, `0 <= k <= e-1` and `0 <= m <= e-k`.
    pub fn new(e: i64, k: i64, m: i64) -> Result<Self> {
        if e < 2 || k < 0 || k > e - 1 || m < 0 || m > e - k {
            return Err(AlgebraError::OutOfRange(format!(
                "(e,k,m) = ({e},{k},{m}) needs e >= 2, 0 <= k <= e-1, 0 <= m <= e-k"
            )));
        }
        Ok(HierarchyBound { e, k, m })
    }

    /// Index where the two branches of the bound meet.
    pub fn switch_point(&self) -> i64 {
        self.e + 1 - self.m - self.k
    }

    pub fn bound(&self, p: i64) -> Result<i64> {
        betti_bound(self, p)
    }
}

impl fmt::Display for HierarchyBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{}) in codimension {}", self.k, self.m, self.e)
    }
}

/// Upper bound for `β_{p,1}` of a variety of codimension `e` satisfying
/// `P(k, m)`:
/// `p C(e+1-k, p+1) - m C(e-k, p-1)` up to `p = e+1-m-k`, and
/// `p C(e-k, p+1)` from there on.
pub fn betti_bound(hb: &HierarchyBound, p: i64) -> Result<i64> {
    if p < 1 {
        return Err(AlgebraError::OutOfRange(format!("p = {p} must be at least 1")));
    }
    let HierarchyBound { e, k, m } = *hb;
    let low = |p: i64| p * binom(e + 1 - k, p + 1) - m * binom(e - k, p - 1);
    let high = |p: i64| p * binom(e - k, p + 1);
    let s = hb.switch_point();
    if p < s {
        Ok(low(p))
    } else if p > s {
        Ok(high(p))
    } else {
        let (a, b) = (low(p), high(p));
        if a != b {
            return Err(AlgebraError::Degenerate(format!("branches disagree at p = {p}: {a} vs {b}")));
        }
        Ok(a)
    }
}

/// `d_i = 2^{e-i} - (e-i)`, for `0 <= i <= e-2`.
pub fn degree_threshold(e: i64, i: i64) -> Result<i64> {
    if i < 0 || i > e - 2 || e - i > 62 {
        return Err(AlgebraError::OutOfRange(format!("degree threshold needs 0 <= i <= e-2, got e={e}, i={i}")));
    }
    Ok((1i64 << (e - i)) - (e - i))
}

/// `A(0, m)` holds by degree when `d >= e + m + 1`.
pub fn check_a0(e: i64, d: i64, m: i64) -> bool {
    d >= e + m + 1
}

/// Degree above which the second-hierarchy bound `P(1,1)` is proved to
/// apply to varieties outside every `(n+1)`-fold variety of minimal degree:
/// `d > 2^{C(e,2) - 2}`. `None` when the power overflows.
pub fn second_hierarchy_degree_threshold(e: i64) -> Option<i64> {
    let exp = binom(e, 2) - 2;
    if exp < 0 {
        return Some(0);
    }
    if exp > 62 {
        return None;
    }
    Some(1i64 << exp)
}

/// The two Betti tables an ACM variety of codimension `e` and degree `e+4`
/// can have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EligibleTablePair {
    pub e: i64,
    pub generic: BettiTable,
    pub special: BettiTable,
}

fn to_u64(v: i64, what: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| AlgebraError::Degenerate(format!("{what} is negative ({v})")))
}

pub fn eligible_tables_e_plus_4(e: i64) -> Result<EligibleTablePair> {
    if e < 3 {
        return Err(AlgebraError::OutOfRange(format!("eligible tables need e >= 3, got {e}")));
    }
    let mut common = BettiTable::new();
    common.set(0, 0, 1);
    for p in 1..=e - 2 {
        let b = p * binom(e + 1, p + 1) - 3 * binom(e, p - 1);
        common.set(p as usize, 1, to_u64(b, "beta_{p,1}")?);
    }
    let eu = e as usize;
    let mut generic = common.clone();
    generic.set(eu - 2, 2, binom(e - 1, 2) as u64);
    generic.set(eu - 1, 2, 2 * e as u64);
    generic.set(eu, 2, 3);
    let mut special = common;
    special.set(eu - 1, 1, (e - 1) as u64);
    special.set(eu - 2, 2, binom(e, 2) as u64);
    special.set(eu - 1, 2, 2 * e as u64);
    special.set(eu, 2, 3);
    Ok(EligibleTablePair { e, generic, special })
}

/// Coefficients of `(1 + e t + m t^2)(1 - t)^e`.
pub fn h_vector_numerator(h: &[i64], e: i64) -> Vec<i64> {
    let mut out = h.to_vec();
    for _ in 0..e {
        let mut next = vec![0i64; out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        out = next;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Betti table of an ACM variety of codimension `e` and degree `e+1+m`
/// contained in an `(n+1)`-fold variety of minimal degree, `3 <= m <= e-1`.
///
/// The quadratic strand is the extremal bound for `P(0, m)`; the cubic strand
/// follows from the Euler identity against the h-vector `(1, e, m)`.
pub fn extremal_table(e: i64, m: i64) -> Result<BettiTable> {
    if m < 3 || m > e - 1 {
        return Err(AlgebraError::OutOfRange(format!("extremal tables need 3 <= m <= e-1, got e={e}, m={m}")));
    }
    let hb = HierarchyBound::new(e, 0, m)?;
    let numerator = h_vector_numerator(&[1, e, m], e);
    let c = |i: i64| numerator.get(i as usize).copied().unwrap_or(0);
    let mut t = BettiTable::new();
    t.set(0, 0, 1);
    for p in 1..=e + 1 {
        let b1 = betti_bound(&hb, p)?;
        t.set(p as usize, 1, to_u64(b1, "beta_{p,1}")?);
        // coefficient of t^{p+1}: (-1)^p (β_{p,1} - β_{p-1,2})
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let b2 = b1 - sign * c(p + 1);
        t.set((p - 1) as usize, 2, to_u64(b2, "beta_{p,2}")?);
    }
    if t.euler_numerator() != numerator {
        return Err(AlgebraError::Degenerate(format!("no 3-regular table with h-vector (1,{e},{m})")));
    }
    Ok(t)
}

/// One `p` of the identity `β_{p,1} - β_{p-1,2} = p C(e+1,p+1) - m C(e,p-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTerm {
    pub p: i64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsIdentityVerdict {
    pub terms: Vec<IdentityTerm>,
}

impl PointsIdentityVerdict {
    pub fn holds(&self) -> bool {
        self.terms.iter().all(|t| t.lhs == t.rhs)
    }
}

/// The identity for the table of `e+1+m` points in general position in `P^e`.
pub fn points_identity_check(table: &BettiTable, e: i64, m: i64) -> PointsIdentityVerdict {
    let top = (table.projective_dimension() as i64 + 1).max(e + 1);
    let terms = (1..=top)
        .map(|p| {
            let lhs = table.get(p as usize, 1) as i64 - table.get((p - 1) as usize, 2) as i64;
            let rhs = p * binom(e + 1, p + 1) - m * binom(e, p - 1);
            IdentityTerm { p, lhs, rhs }
        })
        .filter(|t| t.lhs != 0 || t.rhs != 0)
        .collect();
    PointsIdentityVerdict { terms }
}

/// How a condition `P(k, m)` is known to hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// `k = 0` and `d >= e + m + 1`.
    Degree,
    /// The variety is contained in a known variety by construction.
    Witnessed,
    /// Declared by the caller.
    Asserted,
    Unknown,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::Degree => "degree",
            Hypothesis::Witnessed => "witnessed",
            Hypothesis::Asserted => "asserted",
            Hypothesis::Unknown => "unknown",
        })
    }
}

/// `Degree` when the degree alone gives `P(0, m)`, otherwise `Unknown`.
pub fn hypothesis_from_degree(hb: &HierarchyBound, d: i64) -> Hypothesis {
    if hb.k == 0 && check_a0(hb.e, d, hb.m) {
        Hypothesis::Degree
    } else {
        Hypothesis::Unknown
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Below,
    Equal,
    Violation,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Below => "<",
            Comparison::Equal => "=",
            Comparison::Violation => "violation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub p: i64,
    pub value: i64,
    pub bound: i64,
    pub verdict: Comparison,
}

/// Outcome of a bound verification or a `K_{p,1}` diagnostic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub bound: Option<HierarchyBound>,
    pub hypothesis: Hypothesis,
    pub checks: Vec<BoundCheck>,
    pub extremal: Option<bool>,
    /// Containment conclusions, e.g. `VMD(n)`.
    pub labels: Vec<String>,
    pub messages: Vec<String>,
    /// Failed hard checks.
    pub falsifiers: Vec<String>,
}

impl ConditionReport {
    fn empty(hypothesis: Hypothesis) -> Self {
        ConditionReport {
            bound: None,
            hypothesis,
            checks: Vec::new(),
            extremal: None,
            labels: Vec::new(),
            messages: Vec::new(),
            falsifiers: Vec::new(),
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| c.verdict == Comparison::Violation)
    }

    pub fn has_violation(&self) -> bool {
        self.violations().next().is_some() || !self.falsifiers.is_empty()
    }

    /// 0: every check passes under a known hypothesis; 1: a violation under a
    /// known hypothesis; 2: the hypothesis is unknown.
    pub fn exit_code(&self) -> i32 {
        if self.hypothesis == Hypothesis::Unknown {
            2
        } else if self.has_violation() {
            1
        } else {
            0
        }
    }

    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        if let Some(b) = &self.bound {
            let _ = writeln!(out, "bound.e={}\nbound.k={}\nbound.m={}", b.e, b.k, b.m);
        }
        let _ = writeln!(out, "hypothesis={}", self.hypothesis);
        for c in &self.checks {
            let _ = writeln!(out, "p.{}.beta={}\np.{}.bound={}\np.{}.verdict={}", c.p, c.value, c.p, c.bound, c.p, c.verdict);
        }
        if let Some(x) = self.extremal {
            let _ = writeln!(out, "extremal={x}");
        }
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "label.{i}={l}");
        }
        for (i, l) in self.messages.iter().enumerate() {
            let _ = writeln!(out, "message.{i}={l}");
        }
        for (i, l) in self.falsifiers.iter().enumerate() {
            let _ = writeln!(out, "falsifier.{i}={l}");
        }
        let _ = writeln!(out, "exit={}", self.exit_code());
        out
    }
}

/// Compares the quadratic strand of `table` with the bound for `hb`, for
/// `p = 1 .. max(e+1, pd)`. Extremal means equality at every such `p`.
pub fn verify_bounds(table: &BettiTable, hb: &HierarchyBound, hypothesis: Hypothesis) -> ConditionReport {
    let mut report = ConditionReport::empty(hypothesis);
    report.bound = Some(*hb);
    let top = hb.e.max(table.projective_dimension() as i64 - 1) + 1;
    for p in 1..=top {
        let bound = betti_bound(hb, p).expect("p >= 1 and (e,k,m) validated");
        let value = table.get(p as usize, 1) as i64;
        let verdict = match value.cmp(&bound) {
            std::cmp::Ordering::Less => Comparison::Below,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Violation,
        };
        if verdict == Comparison::Violation {
            report.messages.push(format!("beta_{{{p},1}} = {value} exceeds the bound {bound}"));
        }
        report.checks.push(BoundCheck { p, value, bound, verdict });
    }
    report.extremal = Some(report.checks.iter().all(|c| c.verdict == Comparison::Equal));
    report
}

/// Declared conditions `P(k, m)`, closed under `P(k, m+1) ⇒ P(k, m)` and
/// `P(k+1, 0) ⇒ P(k, m)` for `m <= d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeclaredConditions {
    pub facts: Vec<(i64, i64)>,
}

impl DeclaredConditions {
    pub fn holds(&self, e: i64, k: i64, m: i64) -> bool {
        self.facts.iter().any(|&(k2, m2)| {
            (k2 == k && m2 >= m) || (k2 > k && degree_threshold(e, k).is_ok_and(|dk| m <= dk))
        })
    }
}

/// `K_{p,1}`-type implications for a table of a nondegenerate variety of
/// codimension `e` and degree `d`, plus the generalized statements at every
/// level `k` whose condition `P(k, e-k)` is declared.
pub fn kp1_diagnostic(table: &BettiTable, e: i64, d: i64, declared: &DeclaredConditions) -> ConditionReport {
    let mut r = ConditionReport::empty(Hypothesis::Degree);
    let b = |p: i64| if p < 0 { 0 } else { table.get(p as usize, 1) as i64 };
    for p in e + 1..=table.projective_dimension() as i64 {
        if b(p) != 0 {
            r.falsifiers.push(format!("beta_{{{p},1}} = {} but must vanish for p >= e+1", b(p)));
        }
    }
    if b(e) != 0 {
        if b(e) == e {
            r.labels.push("VMD(n)".into());
            r.messages.push(format!("beta_{{{e},1}} = e: a variety of minimal degree"));
        } else {
            r.falsifiers.push(format!("beta_{{{e},1}} = {} is neither 0 nor e", b(e)));
        }
    } else {
        r.messages.push(format!("beta_{{{e},1}} = 0: not a variety of minimal degree"));
        let v = b(e - 1);
        if d >= e + 3 {
            if v == 0 {
                r.labels.push("not contained in a VMD(n+1)".into());
                r.messages.push(format!("beta_{{{},1}} = 0: not contained in a VMD(n+1)", e - 1));
            } else if v == e - 1 {
                r.labels.push("divisor in a VMD(n+1)".into());
                r.messages.push(format!("beta_{{{},1}} = e-1: contained in a VMD(n+1)", e - 1));
            } else {
                r.falsifiers.push(format!("beta_{{{},1}} = {v} but d >= e+3 forces 0 or e-1", e - 1));
            }
        } else if d == e + 2 && v != 0 {
            let del_pezzo = binom(e + 1, 2) - 1;
            if v == del_pezzo || v == e - 1 {
                r.messages.push(format!("beta_{{{},1}} = {v} is one of C(e+1,2)-1, e-1", e - 1));
            } else {
                r.falsifiers.push(format!("beta_{{{},1}} = {v} not in {{{del_pezzo}, {}}}", e - 1, e - 1));
            }
        }
    }
    for k in 0..=e - 3 {
        if !declared.holds(e, k, e - k) {
            continue;
        }
        for p in e - k..=e + 1 {
            if b(p) != 0 {
                r.falsifiers.push(format!("P({k},{}) declared but beta_{{{p},1}} = {} != 0", e - k, b(p)));
            }
        }
        let q = e - k - 1;
        if b(q) != 0 {
            if b(q) == q {
                r.labels.push(format!("contained in a VMD(n+{})", k + 1));
            } else {
                r.falsifiers.push(format!("P({k},{}) declared but beta_{{{q},1}} = {} != {q}", e - k, b(q)));
            }
        }
        let q = e - k - 2;
        if b(q) != 0 {
            if declared.holds(e, k + 1, 2) {
                if b(q) == q {
                    r.labels.push(format!("contained in a VMD(n+{})", k + 2));
                } else {
                    r.falsifiers.push(format!("P({},2) declared but beta_{{{q},1}} = {} != {q}", k + 1, b(q)));
                }
            } else if declared.holds(e, k + 1, 1) {
                let allowed = level_dichotomy(e, k);
                if !allowed.contains(&b(q)) {
                    r.falsifiers.push(format!(
                        "P({},1) declared but beta_{{{q},1}} = {} not in {allowed:?}",
                        k + 1,
                        b(q)
                    ));
                }
            }
        }
    }
    r
}

/// Allowed nonzero values of `β_{e-k-2,1}` under `P(k, e-k)` and `P(k+1, 1)`:
/// `(e-k-2) C(e-k, e-k-1) - C(e-k-1, e-k-3)` and `e-k-2`.
pub fn level_dichotomy(e: i64, k: i64) -> [i64; 2] {
    let q = e - k - 2;
    [q * binom(e - k, e - k - 1) - binom(e - k - 1, e - k - 3), q]
}

/// One `p` of the points diagnostic: the three conditions that are
/// equivalent for points in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsCondition {
    pub p: i64,
    pub n2p: bool,
    pub diagonal_vanishes: bool,
    pub bound: i64,
    pub bound_holds: bool,
}

impl PointsCondition {
    pub fn consistent(&self) -> bool {
        self.n2p == self.diagonal_vanishes && self.n2p == self.bound_holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsDiagnostic {
    /// Initial degree of the ideal.
    pub t: i64,
    pub conditions: Vec<PointsCondition>,
}

impl PointsDiagnostic {
    pub fn consistent(&self) -> bool {
        self.conditions.iter().all(PointsCondition::consistent)
    }
}

/// For `d` points in general position in `P^r` with initial degree `t`:
/// `N_{2,p}` ⇔ `β_{p,t} = 0` ⇔
/// `β_{p+1,t-1} <= C(p+t-1,p) C(r+t,p+t) - d C(r,p)`, for `1 <= p <= r`.
pub fn crv_points_diagnostic(table: &BettiTable, r: i64, d: i64) -> Result<PointsDiagnostic> {
    let t = table
        .entries()
        .filter(|&((i, _), b)| i == 1 && b != 0)
        .map(|((_, j), _)| j as i64 + 1)
        .min()
        .ok_or_else(|| AlgebraError::Degenerate("the table has no generators".into()))?;
    let mut conditions = Vec::new();
    for p in 1..=r {
        let n2p = table.satisfies_n2p(p as usize);
        let diagonal_vanishes = table.get(p as usize, t as usize) == 0;
        let bound = binom(p + t - 1, p) * binom(r + t, p + t) - d * binom(r, p);
        let lhs = if t >= 1 { table.get((p + 1) as usize, (t - 1) as usize) as i64 } else { 0 };
        conditions.push(PointsCondition { p, n2p, diagonal_vanishes, bound, bound_holds: lhs <= bound });
    }
    Ok(PointsDiagnostic { t, conditions })
}
