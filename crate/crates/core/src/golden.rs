//! Reference instances with known Betti tables, stored as CSV under `golden/`.

use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polycore::Field;
use crate::resolution::{betti_numbers, numeric_invariants, BettiTable, NumericInvariants};
use crate::varieties::Recipe;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReproTarget {
    /// Monomial curve `(11,10,9,8,7,5,0)` of degree 11 in `P^6`.
    MonomialCurve,
    /// `ν_3` of the Fermat sextic: a canonical curve of genus 10 in `P^9`.
    CanonicalCurve,
    /// `ν_2` of the quartic `s^4 + t^4 - w^4` in `P^5`.
    QuarticExtremal,
    /// `ν_3` of the octic `s^8 + t^8 - w^8` projected to `P^5` from the span
    /// of the images of `[1:0:±1]` and `[0:1:±1]`.
    DelPezzoProjection,
}

impl ReproTarget {
    pub const ALL: [ReproTarget; 4] = [
        ReproTarget::MonomialCurve,
        ReproTarget::CanonicalCurve,
        ReproTarget::QuarticExtremal,
        ReproTarget::DelPezzoProjection,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ReproTarget::MonomialCurve => "ex-monomial-2e1",
            ReproTarget::CanonicalCurve => "ex-canonical-2e2",
            ReproTarget::QuarticExtremal => "ex-quartic-extremal",
            ReproTarget::DelPezzoProjection => "ex-delpezzo-projection",
        }
    }

    pub fn recipe_text(&self) -> &'static str {
        match self {
            ReproTarget::MonomialCurve => "M(11,10,9,8,7,5,0)",
            ReproTarget::CanonicalCurve => "nu(3):x0^6 + x1^6 + x2^6",
            ReproTarget::QuarticExtremal => "nu(2):x0^4 + x1^4 - x2^4",
            ReproTarget::DelPezzoProjection => {
                "nu(3):x0^8 + x1^8 - x2^8 | proj(1,0,1,0,0,1,0,0,0,1;1,0,-1,0,0,1,0,0,0,-1;0,0,0,0,0,0,1,1,1,1;0,0,0,0,0,0,1,-1,1,-1)"
            }
        }
    }

    pub fn recipe(&self) -> Recipe {
        self.recipe_text().parse().expect("built-in recipes parse")
    }

    fn csv(&self) -> &'static str {
        match self {
            ReproTarget::MonomialCurve => include_str!("../golden/ex-monomial-2e1.csv"),
            ReproTarget::CanonicalCurve => include_str!("../golden/ex-canonical-2e2.csv"),
            ReproTarget::QuarticExtremal => include_str!("../golden/ex-quartic-extremal.csv"),
            ReproTarget::DelPezzoProjection => include_str!("../golden/ex-delpezzo-projection.csv"),
        }
    }

    pub fn expected(&self) -> BettiTable {
        BettiTable::from_csv(self.csv()).expect("golden CSV parses")
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<Ideal<F>> {
        self.recipe().build(field, 0)
    }

    /// Builds the instance and diffs its table against the golden one.
    pub fn run<F: Field>(&self, field: &F) -> Result<ReproOutcome> {
        let ideal = self.build(field)?;
        let table = betti_numbers(&ideal)?;
        let mismatches = table.diff(&self.expected());
        let quadric_hull = match self {
            ReproTarget::DelPezzoProjection => Some(quadric_hull(&ideal)?),
            _ => None,
        };
        Ok(ReproOutcome { target: *self, table, mismatches, quadric_hull })
    }
}

impl fmt::Display for ReproTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ReproTarget {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        ReproTarget::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| AlgebraError::InvalidConstruction(format!("unknown target '{s}'")))
    }
}

/// Invariants of the scheme cut out by the quadrics of `ideal`.
pub fn quadric_hull<F: Field>(ideal: &Ideal<F>) -> Result<NumericInvariants> {
    let quadrics = ideal.truncate_generators(2);
    let table = betti_numbers(&quadrics)?;
    numeric_invariants(&quadrics, &table)
}

#[derive(Clone, Debug)]
pub struct ReproOutcome {
    pub target: ReproTarget,
    pub table: BettiTable,
    /// `(i, j, computed, expected)` for every differing cell.
    pub mismatches: Vec<(usize, usize, u64, u64)>,
    pub quadric_hull: Option<NumericInvariants>,
}

impl ReproOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.quadric_hull.as_ref().is_none_or(|h| (h.dimension, h.degree, h.codimension) == (2, 5, 3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::PrimeField;

    #[test]
    fn targets_round_trip_and_golden_tables_are_consistent() {
        for t in ReproTarget::ALL {
            assert_eq!(t.id().parse::<ReproTarget>().unwrap(), t);
            let expected = t.expected();
            assert_eq!(expected.get(0, 0), 1);
            // alternating sum vanishes at t = 1 for a proper quotient of dimension >= 1
            assert_eq!(expected.euler_numerator().iter().sum::<i64>(), 0, "{t}");
            assert!(!t.recipe().stages.is_empty());
        }
        assert!("ex-nothing".parse::<ReproTarget>().is_err());
    }

    #[test]
    fn quartic_target_passes() {
        let out = ReproTarget::QuarticExtremal.run(&PrimeField::new(32003).unwrap()).unwrap();
        assert!(out.passed(), "{:?}", out.mismatches);
    }
}
