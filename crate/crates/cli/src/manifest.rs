//! TOML manifests describing a surface and the data attached to it.

use std::collections::BTreeMap;
use std::path::Path;

use ellfib_core::basechange::{BaseChangeMap, Multisection};
use ellfib_core::parse::{parse_constant, parse_expr, parse_ratfunc};
use ellfib_core::rankjump::SecondFibration;
use ellfib_core::rational::Rat;
use ellfib_core::{Point, RatFunc, WeierstrassModel};
use num_traits::Zero;
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub surface: Option<SurfaceSpec>,
    pub basechange: Option<BaseChangeSpec>,
    #[serde(default)]
    pub sections: BTreeMap<String, SectionSpec>,
    pub multisection: Option<MultisectionSpec>,
    pub scan: Option<ScanSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    #[serde(default = "default_var")]
    pub var: char,
    #[serde(default = "zero_literal")]
    pub a1: String,
    #[serde(default = "zero_literal")]
    pub a2: String,
    #[serde(default = "zero_literal")]
    pub a3: String,
    #[serde(default = "zero_literal")]
    pub a4: String,
    #[serde(default = "zero_literal")]
    pub a6: String,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BaseChangeSpec {
    pub phi: String,
}

/// `[x, y]`, or the string `"O"` for the zero section.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SectionSpec {
    Zero(String),
    Affine([String; 2]),
}

/// A coordinate `c0` or `[c0, c1]` meaning `c0 + c1 w`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Coordinate {
    Base(String),
    Quadratic([String; 2]),
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MultisectionSpec {
    /// Base change `t = phi(t)`; defaults to the identity.
    pub phi: Option<String>,
    /// `g` with `w^2 = g`.
    pub ext: Option<String>,
    pub x: Coordinate,
    pub y: Coordinate,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    /// `[a1, a2, a3, a4, a6]` of the fiber curve of the second fibration.
    pub curve: [String; 5],
    /// Names of the curve's coordinates, e.g. `["T", "Y"]`.
    pub vars: [char; 2],
    pub embed_t: String,
    pub embed_x: String,
    pub embed_y: String,
    pub generator: [String; 2],
    #[serde(default = "default_count")]
    pub count: u32,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub primes: Option<u64>,
    pub height_bound: Option<u64>,
    #[serde(default)]
    pub partial: bool,
}

fn default_var() -> char {
    't'
}

fn zero_literal() -> String {
    "0".into()
}

fn default_count() -> u32 {
    6
}

impl Manifest {
    pub fn parse(src: &str) -> Result<Manifest> {
        toml::from_str(src).map_err(|e| CliError::Manifest(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        let src = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        Manifest::parse(&src)
    }

    pub fn var(&self) -> char {
        self.surface.as_ref().map_or('t', |s| s.var)
    }

    fn func(&self, src: &str) -> Result<RatFunc> {
        Ok(parse_ratfunc(src, self.var())?)
    }

    pub fn model(&self) -> Result<WeierstrassModel<RatFunc>> {
        let s = self.surface.as_ref().ok_or_else(|| CliError::Manifest("missing [surface]".into()))?;
        Ok(WeierstrassModel::new(
            self.func(&s.a1)?,
            self.func(&s.a2)?,
            self.func(&s.a3)?,
            self.func(&s.a4)?,
            self.func(&s.a6)?,
        ))
    }

    pub fn base_change_map(&self) -> Result<BaseChangeMap> {
        let b = self.basechange.as_ref().ok_or_else(|| CliError::Manifest("missing [basechange]".into()))?;
        Ok(BaseChangeMap::new(self.func(&b.phi)?)?)
    }

    /// Named sections in key order.
    pub fn sections(&self) -> Result<Vec<(String, Point<RatFunc>)>> {
        self.sections
            .iter()
            .map(|(name, s)| {
                let p = match s {
                    SectionSpec::Zero(z) if z == "O" => Point::Zero,
                    SectionSpec::Zero(z) => {
                        return Err(CliError::Manifest(format!("section {name}: expected [x, y] or \"O\", got \"{z}\"")))
                    }
                    SectionSpec::Affine([x, y]) => Point::Affine(self.func(x)?, self.func(y)?),
                };
                Ok((name.clone(), p))
            })
            .collect()
    }

    pub fn multisection(&self) -> Result<Option<Multisection>> {
        let Some(m) = &self.multisection else {
            return Ok(None);
        };
        let map = match &m.phi {
            Some(phi) => BaseChangeMap::new(self.func(phi)?)?,
            None => BaseChangeMap::identity(),
        };
        let split = |c: &Coordinate| -> Result<(RatFunc, RatFunc)> {
            Ok(match c {
                Coordinate::Base(a) => (self.func(a)?, RatFunc::zero()),
                Coordinate::Quadratic([a, b]) => (self.func(a)?, self.func(b)?),
            })
        };
        let (x, y) = (split(&m.x)?, split(&m.y)?);
        Ok(Some(match &m.ext {
            Some(g) => Multisection::quadratic(x, y, self.func(g)?, map),
            None => {
                if !x.1.is_zero() || !y.1.is_zero() {
                    return Err(CliError::Manifest("multisection uses w but has no ext".into()));
                }
                Multisection::parametric(x.0, y.0, map)
            }
        }))
    }

    pub fn second_fibration(&self) -> Result<SecondFibration> {
        let s = self.scan.as_ref().ok_or_else(|| CliError::Manifest("missing [scan]".into()))?;
        let c: Vec<Rat> = s.curve.iter().map(|a| parse_constant(a)).collect::<std::result::Result<_, _>>()?;
        let curve = WeierstrassModel::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone());
        let embedding = [parse_expr(&s.embed_t)?, parse_expr(&s.embed_x)?, parse_expr(&s.embed_y)?];
        let generator = Point::Affine(parse_constant(&s.generator[0])?, parse_constant(&s.generator[1])?);
        Ok(SecondFibration::new(curve, (s.vars[0], s.vars[1]), embedding, generator)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        let err = Manifest::parse("[surface]\na4 = \"t\"\ncolour = \"red\"\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(Manifest::parse("[nonsense]\n").is_err());
    }

    #[test]
    fn defaults_and_sections() {
        let m = Manifest::parse(
            "[surface]\nvar = \"s\"\na6 = \"s^2\"\n[sections]\nP = [\"0\", \"s\"]\nZ = \"O\"\n",
        )
        .unwrap();
        let e = m.model().unwrap();
        assert!(e.a4.is_zero() && e.a6 == parse_ratfunc("s^2", 's').unwrap());
        let secs = m.sections().unwrap();
        assert_eq!(secs[0].0, "P");
        assert_eq!(secs[1].1, Point::Zero);
        assert_eq!(m.options, Options::default());
    }

    #[test]
    fn bad_literal_is_a_parse_error() {
        let m = Manifest::parse("[surface]\na4 = \"t^^2\"\n").unwrap();
        assert_eq!(m.model().unwrap_err().exit_code(), 2);
    }
}
