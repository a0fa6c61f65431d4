//! The four threshold processes and their exact parameters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A rational threshold `p/q` with `0 < p/q < 1`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alpha {
    num: u64,
    den: u64,
}

impl Alpha {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::Model(format!(
                "alpha must satisfy 0 < p/q < 1, got {num}/{den}"
            )));
        }
        let g = num.gcd(&den);
        Ok(Alpha {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn to_ratio(self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `count ≥ α·deg`, evaluated as `q·count ≥ p·deg`.
    #[inline]
    pub fn reached(self, count: usize, deg: usize) -> bool {
        self.den as u128 * count as u128 >= self.num as u128 * deg as u128
    }

    /// `⌈α·d⌉`: the least neighbor count meeting the threshold at degree `d`.
    pub fn ceil_times(self, d: usize) -> usize {
        (self.num as u128 * d as u128).div_ceil(self.den as u128) as usize
    }

    /// `⌈1/(1−α)⌉`.
    pub fn ceil_inv_complement(self) -> usize {
        self.den.div_ceil(self.den - self.num) as usize
    }

    /// `⌊1/α⌋`.
    pub fn floor_inv(self) -> usize {
        (self.den / self.num) as usize
    }

    /// Compares against `a/b`.
    pub fn cmp_frac(self, a: u64, b: u64) -> std::cmp::Ordering {
        (self.num as u128 * b as u128).cmp(&(a as u128 * self.den as u128))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Model(format!("alpha must be written P/Q, got {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Alpha::new(p, q)
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which of the four processes runs, with its exact parameter.
///
/// One-way variants keep black nodes black; two-way variants recompute every
/// node each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ThresholdModel {
    R { r: usize },
    #[serde(rename = "twoway-r")]
    TwoWayR { r: usize },
    Alpha { alpha: Alpha },
    #[serde(rename = "twoway-alpha")]
    TwoWayAlpha { alpha: Alpha },
}

impl ThresholdModel {
    pub fn r(r: usize) -> Self {
        ThresholdModel::R { r }
    }

    pub fn two_way_r(r: usize) -> Self {
        ThresholdModel::TwoWayR { r }
    }

    pub fn alpha(alpha: Alpha) -> Self {
        ThresholdModel::Alpha { alpha }
    }

    pub fn two_way_alpha(alpha: Alpha) -> Self {
        ThresholdModel::TwoWayAlpha { alpha }
    }

    /// Builds a model from its CLI name (`r`, `twoway-r`, `alpha`,
    /// `twoway-alpha`) and the matching parameter.
    pub fn from_parts(name: &str, r: Option<usize>, alpha: Option<Alpha>) -> Result<Self> {
        let need_r = || {
            r.filter(|&r| r >= 1)
                .ok_or_else(|| Error::Model(format!("model {name} needs --r >= 1")))
        };
        let need_alpha =
            || alpha.ok_or_else(|| Error::Model(format!("model {name} needs --alpha P/Q")));
        let m = match name {
            "r" => ThresholdModel::r(need_r()?),
            "twoway-r" => ThresholdModel::two_way_r(need_r()?),
            "alpha" => ThresholdModel::alpha(need_alpha()?),
            "twoway-alpha" => ThresholdModel::two_way_alpha(need_alpha()?),
            other => return Err(Error::Model(format!("unknown model {other:?}"))),
        };
        match m {
            ThresholdModel::R { .. } | ThresholdModel::TwoWayR { .. } if alpha.is_some() => {
                Err(Error::Model(format!("model {name} takes --r, not --alpha")))
            }
            ThresholdModel::Alpha { .. } | ThresholdModel::TwoWayAlpha { .. } if r.is_some() => {
                Err(Error::Model(format!("model {name} takes --alpha, not --r")))
            }
            m => Ok(m),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ThresholdModel::R { .. } => "r",
            ThresholdModel::TwoWayR { .. } => "twoway-r",
            ThresholdModel::Alpha { .. } => "alpha",
            ThresholdModel::TwoWayAlpha { .. } => "twoway-alpha",
        }
    }

    pub fn is_two_way(&self) -> bool {
        matches!(
            self,
            ThresholdModel::TwoWayR { .. } | ThresholdModel::TwoWayAlpha { .. }
        )
    }

    pub fn integer_threshold(&self) -> Option<usize> {
        match *self {
            ThresholdModel::R { r } | ThresholdModel::TwoWayR { r } => Some(r),
            _ => None,
        }
    }

    pub fn fraction(&self) -> Option<Alpha> {
        match *self {
            ThresholdModel::Alpha { alpha } | ThresholdModel::TwoWayAlpha { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// Does a node of degree `deg` with `count` black neighbors meet the threshold?
    #[inline]
    pub fn reached(&self, count: usize, deg: usize) -> bool {
        match *self {
            ThresholdModel::R { r } | ThresholdModel::TwoWayR { r } => count >= r,
            ThresholdModel::Alpha { alpha } | ThresholdModel::TwoWayAlpha { alpha } => {
                alpha.reached(count, deg)
            }
        }
    }

    /// Least black-neighbor count meeting the threshold at degree `deg`.
    pub fn required(&self, deg: usize) -> usize {
        match *self {
            ThresholdModel::R { r } | ThresholdModel::TwoWayR { r } => r,
            ThresholdModel::Alpha { alpha } | ThresholdModel::TwoWayAlpha { alpha } => {
                alpha.ceil_times(deg)
            }
        }
    }

    /// Checks parameter ranges and the standing assumption `r ≤ δ(g)`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        match *self {
            ThresholdModel::R { r } | ThresholdModel::TwoWayR { r } => {
                if r == 0 {
                    return Err(Error::Model("r must be at least 1".into()));
                }
                if r > g.min_degree() {
                    return Err(Error::Model(format!(
                        "r = {r} exceeds the minimum degree {}",
                        g.min_degree()
                    )));
                }
                Ok(())
            }
            ThresholdModel::Alpha { alpha } | ThresholdModel::TwoWayAlpha { alpha } => {
                Alpha::new(alpha.num, alpha.den).map(|_| ())
            }
        }
    }
}

impl fmt::Display for ThresholdModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdModel::R { r } | ThresholdModel::TwoWayR { r } => {
                write!(f, "{} r={r}", self.name())
            }
            ThresholdModel::Alpha { alpha } | ThresholdModel::TwoWayAlpha { alpha } => {
                write!(f, "{} alpha={alpha}", self.name())
            }
        }
    }
}
