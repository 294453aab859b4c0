//! Text recipes for the constructors, e.g. `nu(3):x0^8+x1^8-x2^8 | proj(1,0,0,1,0,0,0,0,0,1)`.
//!
//! A recipe is a source stage optionally followed by `|`-separated
//! transformations:
//!
//! | stage                | meaning                                              |
//! |----------------------|------------------------------------------------------|
//! | `S(a1,...,ak)`       | rational normal scroll                               |
//! | `nu(d):<poly>`       | `ν_d` of the plane curve `V(poly)` (`0` for `P^2`)   |
//! | `M(e0,...,er)`       | monomial curve `[s^e0 : s^e1 t^(e0-e1) : ... : t^e0]` |
//! | `pts(r,d[,seed])`    | `d` random points of `P^r`                           |
//! | `rncpts(r,d[,seed])` | `d` random points on the rational normal curve       |
//! | `div(a,b,beta[,seed])` | random divisor of class `2H + beta F` on `S(a,b)`  |
//! | `cut(k[,seed])`      | `k` general hyperplane sections                      |
//! | `proj(p1;p2;...)`    | projection from the span of integer points           |
//!
//! Omitted seeds fall back to the caller's default.

use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polycore::{parse_polynomial, Field, Polynomial, Ring};

use super::{
    hyperplane_section, monomial_curve, project_from_span, random_points, random_points_on_rational_normal_curve,
    rational_normal_scroll, scroll_divisor, veronese_embed_plane_curve, PointConfiguration, ScrollSpec,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    Scroll(Vec<u32>),
    Veronese { d: u32, curve: String },
    Monomial(Vec<u32>),
    Points { r: usize, d: usize, seed: Option<u64> },
    CurvePoints { r: usize, d: usize, seed: Option<u64> },
    Divisor { a: u32, b: u32, beta: i32, seed: Option<u64> },
    Cut { count: usize, seed: Option<u64> },
    Project(Vec<Vec<i64>>),
}

impl Stage {
    fn is_source(&self) -> bool {
        !matches!(self, Stage::Cut { .. } | Stage::Project(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub stages: Vec<Stage>,
    text: String,
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn syntax(stage: &str, message: impl Into<String>) -> AlgebraError {
    AlgebraError::InvalidConstruction(format!("'{stage}': {}", message.into()))
}

fn numbers<T: FromStr>(stage: &str, list: &str, sep: char) -> Result<Vec<T>> {
    list.split(sep)
        .map(|s| s.trim().parse::<T>().map_err(|_| syntax(stage, format!("bad number '{}'", s.trim()))))
        .collect()
}

/// `name(args)` → `args`.
fn call<'a>(stage: &'a str, name: &str) -> Option<&'a str> {
    stage.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

fn seeded(stage: &str, args: &[u64], fixed: usize) -> Result<Option<u64>> {
    match args.len() {
        n if n == fixed => Ok(None),
        n if n == fixed + 1 => Ok(Some(args[fixed])),
        _ => Err(syntax(stage, format!("expected {fixed} or {} arguments", fixed + 1))),
    }
}

fn parse_stage(stage: &str) -> Result<Stage> {
    let s = stage.trim();
    if let Some(rest) = s.strip_prefix("nu(") {
        let (d, curve) = rest.split_once("):").ok_or_else(|| syntax(s, "expected nu(d):<poly>"))?;
        let d = d.trim().parse().map_err(|_| syntax(s, "bad degree"))?;
        return Ok(Stage::Veronese { d, curve: curve.trim().to_string() });
    }
    if let Some(args) = call(s, "S") {
        return Ok(Stage::Scroll(numbers(s, args, ',')?));
    }
    if let Some(args) = call(s, "M") {
        return Ok(Stage::Monomial(numbers(s, args, ',')?));
    }
    if let Some(args) = call(s, "rncpts") {
        let v: Vec<u64> = numbers(s, args, ',')?;
        let seed = seeded(s, &v, 2)?;
        return Ok(Stage::CurvePoints { r: v[0] as usize, d: v[1] as usize, seed });
    }
    if let Some(args) = call(s, "pts") {
        let v: Vec<u64> = numbers(s, args, ',')?;
        let seed = seeded(s, &v, 2)?;
        return Ok(Stage::Points { r: v[0] as usize, d: v[1] as usize, seed });
    }
    if let Some(args) = call(s, "div") {
        let v: Vec<i64> = numbers(s, args, ',')?;
        if v.len() < 3 || v.len() > 4 || v[0] < 0 || v[1] < 0 || v.get(3).is_some_and(|&x| x < 0) {
            return Err(syntax(s, "expected div(a,b,beta[,seed]) with a, b, seed >= 0"));
        }
        let beta = i32::try_from(v[2]).map_err(|_| syntax(s, "beta out of range"))?;
        return Ok(Stage::Divisor { a: v[0] as u32, b: v[1] as u32, beta, seed: v.get(3).map(|&x| x as u64) });
    }
    if let Some(args) = call(s, "cut") {
        let v: Vec<u64> = numbers(s, args, ',')?;
        let seed = seeded(s, &v, 1)?;
        return Ok(Stage::Cut { count: v[0] as usize, seed });
    }
    if let Some(args) = call(s, "proj") {
        let points = args.split(';').map(|p| numbers(s, p, ',')).collect::<Result<Vec<Vec<i64>>>>()?;
        return Ok(Stage::Project(points));
    }
    Err(syntax(s, "unknown construction"))
}

impl FromStr for Recipe {
    type Err = AlgebraError;

    fn from_str(text: &str) -> Result<Self> {
        let stages = text.split('|').map(parse_stage).collect::<Result<Vec<_>>>()?;
        if !stages[0].is_source() {
            return Err(syntax(text, "a recipe must start with S, nu, M, pts, rncpts or div"));
        }
        if let Some(s) = stages[1..].iter().find(|s| s.is_source()) {
            return Err(syntax(text, format!("{s:?} can only start a recipe")));
        }
        Ok(Recipe { stages, text: text.trim().to_string() })
    }
}

impl Recipe {
    /// Runs the stages over `field`; `seed` replaces omitted seeds.
    pub fn build<F: Field>(&self, field: &F, seed: u64) -> Result<Ideal<F>> {
        let mut ideal = source(&self.stages[0], field, seed)?;
        for stage in &self.stages[1..] {
            ideal = match stage {
                Stage::Cut { count, seed: s } => hyperplane_section(&ideal, *count, s.unwrap_or(seed))?,
                Stage::Project(points) => {
                    let pts = points.iter().map(|p| p.iter().map(|&c| field.from_i64(c)).collect()).collect();
                    let center = PointConfiguration::new(ideal.num_vars() - 1, pts)?;
                    project_from_span(&ideal, &center)?
                }
                _ => unreachable!("sources are rejected after the first stage"),
            };
        }
        Ok(ideal)
    }
}

fn source<F: Field>(stage: &Stage, field: &F, seed: u64) -> Result<Ideal<F>> {
    match stage {
        Stage::Scroll(a) => rational_normal_scroll(field, &ScrollSpec::new(a.clone())?),
        Stage::Veronese { d, curve } => {
            let plane = Ring::new(field.clone(), 3)?;
            let f = if curve == "0" { Polynomial::zero() } else { parse_polynomial(curve, &plane)? };
            veronese_embed_plane_curve(&plane, &f, *d)
        }
        Stage::Monomial(e) => monomial_curve(field, e),
        Stage::Points { r, d, seed: s } => Ok(random_points(field, *r, *d, s.unwrap_or(seed))?.1),
        Stage::CurvePoints { r, d, seed: s } => Ok(random_points_on_rational_normal_curve(field, *r, *d, s.unwrap_or(seed))?.1),
        Stage::Divisor { a, b, beta, seed: s } => scroll_divisor(field, *a, *b, *beta, s.unwrap_or(seed)),
        Stage::Cut { .. } | Stage::Project(_) => Err(AlgebraError::InvalidConstruction("not a source stage".into())),
    }
}
