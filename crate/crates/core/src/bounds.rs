//! Closed-form bounds on the minimum sizes, evaluated exactly.
//!
//! Values have the form `c·√m + k` with rational `c`, `k` and a square-free
//! integer `m`, so bounds such as `2α√n − 1` compare against integer minima
//! without rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Alpha, ThresholdModel};

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Sign of `c·√b + k` for `b ≥ 0`.
fn sign_surd(c: &BigRational, b: &BigInt, k: &BigRational) -> Ordering {
    let zero = BigRational::zero();
    if c.is_zero() || b.is_zero() {
        return k.cmp(&zero);
    }
    let s = c.cmp(&zero);
    if k.is_zero() || k.cmp(&zero) == s {
        return s;
    }
    // opposite signs: the larger magnitude wins
    let lhs = c * c * int(b.clone());
    match lhs.cmp(&(k * k)) {
        Ordering::Greater => s,
        Ordering::Less => s.reverse(),
        Ordering::Equal => Ordering::Equal,
    }
}

/// Exact value `coeff·√radicand + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    coeff: BigRational,
    radicand: BigInt,
    offset: BigRational,
}

impl BoundValue {
    pub fn rational(q: BigRational) -> Self {
        BoundValue {
            coeff: BigRational::zero(),
            radicand: BigInt::zero(),
            offset: q,
        }
    }

    pub fn integer(v: usize) -> Self {
        Self::rational(int(v))
    }

    /// `coeff·√radicand + offset`, with the radicand reduced to square-free form.
    pub fn surd(coeff: BigRational, radicand: BigRational, offset: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        // √(p/q) = √(pq)/q
        let q = radicand.denom().clone();
        let mut m = radicand.numer() * &q;
        let mut outside = BigInt::one();
        let mut f = BigInt::from(2u32);
        let limit = BigInt::from(1u32 << 20);
        while &f * &f <= m && f < limit {
            let sq = &f * &f;
            while (&m % &sq).is_zero() {
                m /= &sq;
                outside *= &f;
            }
            f += 1u32;
        }
        let root = m.sqrt();
        if &root * &root == m {
            outside *= root;
            m = BigInt::one();
        }
        let coeff = coeff * int(outside) / int(q);
        if m.is_one() || coeff.is_zero() {
            return Self::rational(coeff * int(m.is_one() as u8) + offset);
        }
        BoundValue {
            coeff,
            radicand: m,
            offset,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.offset)
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        let m = self.radicand.to_f64().unwrap_or(f64::NAN);
        let k = self.offset.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            k
        } else {
            c * m.sqrt() + k
        }
    }

    /// Sign of `self − k` for rational `k`.
    fn cmp_rational(&self, k: &BigRational) -> Ordering {
        sign_surd(&self.coeff, &self.radicand, &(&self.offset - k))
    }

    /// Least integer `≥ self`.
    pub fn ceil(&self) -> BigInt {
        let mut f = BigInt::from(self.to_f64().ceil() as i64);
        while self.cmp_rational(&int(f.clone() - 1)) != Ordering::Greater {
            f -= 1;
        }
        while self.cmp_rational(&int(f.clone())) == Ordering::Greater {
            f += 1;
        }
        f
    }

    /// Greatest integer `≤ self`.
    pub fn floor(&self) -> BigInt {
        -self.neg().ceil()
    }

    fn neg(&self) -> Self {
        BoundValue {
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
            offset: -&self.offset,
        }
    }

    /// Is the integer `k` at least this value?
    pub fn le_int(&self, k: usize) -> bool {
        self.cmp_rational(&int(k)) != Ordering::Greater
    }

    /// Is the integer `k` at most this value?
    pub fn ge_int(&self, k: usize) -> bool {
        self.cmp_rational(&int(k)) != Ordering::Less
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl Ord for BoundValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if other.is_rational() {
            return self.cmp_rational(&other.offset);
        }
        if self.is_rational() {
            return other.cmp_rational(&self.offset).reverse();
        }
        if self.radicand == other.radicand {
            let c = &self.coeff - &other.coeff;
            return sign_surd(&c, &self.radicand, &(&self.offset - &other.offset));
        }
        // u = a√p + k against v = b√q
        let (a, p) = (&self.coeff, &self.radicand);
        let (b, q) = (&other.coeff, &other.radicand);
        let k = &self.offset - &other.offset;
        let su = sign_surd(a, p, &k);
        let sv = b.cmp(&BigRational::zero());
        if su != sv {
            return su.cmp(&sv);
        }
        if su == Ordering::Equal {
            return Ordering::Equal;
        }
        let two = int(2);
        let squares = sign_surd(
            &(two * a * &k),
            p,
            &(a * a * int(p.clone()) + &k * &k - b * b * int(q.clone())),
        );
        if su == Ordering::Greater {
            squares
        } else {
            squares.reverse()
        }
    }
}

impl PartialOrd for BoundValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_ratio(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_ratio(&self.offset));
        }
        if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)?;
        } else {
            write!(f, "{}*sqrt({})", fmt_ratio(&self.coeff), self.radicand)?;
        }
        match self.offset.cmp(&BigRational::zero()) {
            Ordering::Greater => write!(f, " + {}", fmt_ratio(&self.offset)),
            Ordering::Less => write!(f, " - {}", fmt_ratio(&-&self.offset)),
            Ordering::Equal => Ok(()),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundValue", 3)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.serialize_field("ceil", &self.ceil().to_string())?;
        st.end()
    }
}

/// How well a bound is matched by a known graph family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tightness {
    /// Attained exactly by some family.
    Exact,
    /// Attained up to an additive constant.
    UpToConstant,
    /// Attained up to lower-order terms.
    Asymptotic,
    /// Not known to be attained.
    Unknown,
}

/// Graph parameters the formulas depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<bool>,
}

impl GraphParams {
    pub fn new(n: usize) -> Self {
        GraphParams {
            n,
            delta: None,
            bipartite: None,
            tree: None,
        }
    }

    pub fn with_delta(mut self, delta: usize) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_bipartite(mut self, bipartite: bool) -> Self {
        self.bipartite = Some(bipartite);
        self
    }

    pub fn with_tree(mut self, tree: bool) -> Self {
        self.tree = Some(tree);
        self
    }

    pub fn of(g: &Graph) -> Self {
        GraphParams {
            n: g.n(),
            delta: Some(g.min_degree()),
            bipartite: Some(g.is_bipartite()),
            tree: Some(g.is_tree()),
        }
    }

    fn check(&self, m: ThresholdModel) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        if let Some(d) = self.delta {
            if d >= self.n {
                return Err(Error::Precondition(format!(
                    "minimum degree {d} is impossible with n = {}",
                    self.n
                )));
            }
        }
        if let Some(r) = m.integer_threshold() {
            if r == 0 {
                return Err(Error::Model("r must be at least 1".into()));
            }
            let bound = self.delta.unwrap_or(self.n - 1);
            if r > bound {
                return Err(Error::Model(format!("r = {r} exceeds the minimum degree {bound}")));
            }
        }
        Ok(())
    }

    fn need_delta(&self) -> Result<usize> {
        self.delta
            .ok_or_else(|| Error::Precondition("this bound needs the minimum degree".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundPair {
    pub lower: BoundValue,
    pub upper: BoundValue,
    pub lower_tightness: Tightness,
    pub upper_tightness: Tightness,
    /// Which case of the formula applied.
    pub regime: &'static str,
}

impl BoundPair {
    /// Does `k` lie within `[lower, upper]`?
    pub fn contains(&self, k: usize) -> bool {
        self.lower.le_int(k) && self.upper.ge_int(k)
    }
}

fn pair(
    lower: BoundValue,
    upper: BoundValue,
    lower_tightness: Tightness,
    upper_tightness: Tightness,
    regime: &'static str,
) -> BoundPair {
    debug_assert!(lower <= upper, "{lower} > {upper} in {regime}");
    BoundPair {
        lower,
        upper,
        lower_tightness,
        upper_tightness,
        regime,
    }
}

/// A bound together with the model and parameters it was evaluated at.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    #[serde(flatten)]
    pub model: ThresholdModel,
    pub params: GraphParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_x: Option<u8>,
    pub dynamo: BoundPair,
    pub monotone_dynamo_lower: MonotoneBound,
    pub stable: BoundPair,
    pub immortal: BoundPair,
}

/// `2α√n − 1`.
fn two_alpha_sqrt_n(alpha: Alpha, n: usize) -> BoundValue {
    BoundValue::surd(int(2) * alpha.to_ratio(), int(n), int(-1))
}

/// Bounds on the minimum dynamo.
pub fn dynamo_bounds(m: ThresholdModel, p: &GraphParams) -> Result<BoundPair> {
    use Tightness::*;
    p.check(m)?;
    let n = p.n;
    let all = BoundValue::integer(n);
    Ok(match m {
        ThresholdModel::Alpha { alpha } => {
            // ((δ + 1/α)/(δ + 1))·αn = (αδ + 1)·n/(δ + 1)
            let d = p.need_delta()?;
            let a = alpha.to_ratio();
            let upper = (a * int(d) + int(1)) * int(n) / int(d + 1);
            pair(BoundValue::integer(1), BoundValue::rational(upper), Exact, UpToConstant, "alpha")
        }
        ThresholdModel::TwoWayAlpha { alpha } => {
            if alpha.cmp_frac(3, 4) == Ordering::Greater {
                let lower = two_alpha_sqrt_n(alpha, n).max(BoundValue::integer(1));
                pair(lower, all, Asymptotic, Exact, "alpha > 3/4")
            } else if alpha.cmp_frac(1, 2) == Ordering::Greater {
                pair(BoundValue::integer(1), all, Unknown, Exact, "1/2 < alpha <= 3/4")
            } else {
                pair(BoundValue::integer(1), all, Exact, Unknown, "alpha <= 1/2")
            }
        }
        ThresholdModel::R { r } => {
            let d = p.need_delta()?;
            let upper = int(r) * int(n) / int(d + 1);
            pair(BoundValue::integer(r), BoundValue::rational(upper), Exact, Exact, "r")
        }
        ThresholdModel::TwoWayR { r: 1 } => match p.bipartite {
            Some(true) => pair(BoundValue::integer(2), BoundValue::integer(2), Exact, Exact, "r = 1, bipartite"),
            Some(false) => pair(BoundValue::integer(1), BoundValue::integer(1), Exact, Exact, "r = 1, non-bipartite"),
            None => pair(BoundValue::integer(1), BoundValue::integer(2), Exact, Exact, "r = 1"),
        },
        ThresholdModel::TwoWayR { r } => pair(BoundValue::integer(r), all, Exact, Exact, "r >= 2"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneBound {
    pub value: BoundValue,
    pub tightness: Tightness,
    pub regime: &'static str,
}

/// Lower bound on the minimum monotone dynamo.
///
/// In one-way processes every dynamo is monotone, so the dynamo lower bound
/// applies. For two-way α-BP with α ≤ 1/2 only the trivial bound 2 is known.
pub fn monotone_dynamo_lower(m: ThresholdModel, n: usize, is_tree: bool) -> Result<MonotoneBound> {
    use Tightness::*;
    GraphParams::new(n).check(m)?;
    let bound = |value, tightness, regime| Ok(MonotoneBound { value, tightness, regime });
    match m {
        ThresholdModel::R { r } => bound(BoundValue::integer(r), Exact, "one-way"),
        ThresholdModel::Alpha { .. } => bound(BoundValue::integer(1), Exact, "one-way"),
        ThresholdModel::TwoWayR { r } => bound(BoundValue::integer((r + 1).min(n)), Exact, "r + 1"),
        ThresholdModel::TwoWayAlpha { alpha } => {
            let trivial = BoundValue::integer(2.min(n));
            if alpha.cmp_frac(1, 2) != Ordering::Greater {
                return bound(trivial, Exact, "trivial");
            }
            let a = alpha.to_ratio();
            let one = int(1);
            let general = if alpha.cmp_frac(3, 4) != Ordering::Greater {
                // √(α/(1−α)·n) − 1
                BoundValue::surd(one.clone(), &a / (&one - &a) * int(n), -one.clone())
            } else {
                // positive root of βD² + (1−β)D = n, β = (1−α)/α
                let b = (&one - &a) / &a;
                let c = &one - &b;
                BoundValue::surd(
                    &one / (int(2) * &b),
                    &c * &c + int(4) * &b * int(n),
                    -c / (int(2) * &b),
                )
            };
            let general = general.max(trivial);
            if is_tree {
                // α/(2−α)·n
                let tree = BoundValue::rational(&a / (int(2) - &a) * int(n));
                if tree >= general {
                    return bound(tree, Unknown, "tree");
                }
            }
            bound(general, UpToConstant, "general")
        }
    }
}

/// Bounds on the minimum stable set and the minimum immortal set.
pub fn stable_immortal_bounds(m: ThresholdModel, p: &GraphParams) -> Result<(BoundPair, BoundPair)> {
    use Tightness::*;
    p.check(m)?;
    let n = p.n;
    let v = BoundValue::integer;
    Ok(match m {
        ThresholdModel::R { .. } | ThresholdModel::Alpha { .. } => (
            pair(v(1), v(1), Exact, Exact, "one-way"),
            pair(v(1), v(1), Exact, Exact, "one-way"),
        ),
        ThresholdModel::TwoWayAlpha { alpha } => {
            // V itself is always stable
            let stable_lower = v(alpha.ceil_inv_complement().min(n));
            if alpha.cmp_frac(1, 2) == Ordering::Greater {
                (
                    pair(stable_lower, v(n), Exact, Exact, "alpha > 1/2"),
                    pair(v(1), v(n), Exact, Exact, "alpha > 1/2"),
                )
            } else {
                // largest part of a min-cut partition into c = ⌊1/α⌋ parts
                let c = alpha.floor_inv();
                let part = BoundValue::rational(int(n) / int(c) + int(2 * c)).min(v(n));
                (
                    pair(stable_lower, part.clone(), Exact, UpToConstant, "alpha <= 1/2"),
                    pair(v(1), part, Exact, UpToConstant, "alpha <= 1/2"),
                )
            }
        }
        ThresholdModel::TwoWayR { r: 1 } => (
            pair(v(2), v(2), Exact, Exact, "r = 1"),
            pair(v(1), v(1), Exact, Exact, "r = 1"),
        ),
        ThresholdModel::TwoWayR { r: 2 } => {
            let upper = if n.is_multiple_of(2) { n / 2 } else { n };
            (
                pair(v(3), v(n), Exact, Exact, "r = 2"),
                pair(v(2), v(upper), UpToConstant, Exact, "r = 2"),
            )
        }
        ThresholdModel::TwoWayR { r } => (
            pair(v(r + 1), v(n), Exact, Exact, "r >= 3"),
            pair(v(r), v(n), UpToConstant, UpToConstant, "r >= 3"),
        ),
    })
}

/// `x = 1` for even `n`, `0` for odd.
pub fn parity_x(n: usize) -> u8 {
    n.is_multiple_of(2) as u8
}

/// Every bound for one model at the given parameters.
pub fn report(m: ThresholdModel, p: &GraphParams) -> Result<BoundsReport> {
    let dynamo = dynamo_bounds(m, p)?;
    let (stable, immortal) = stable_immortal_bounds(m, p)?;
    let monotone = monotone_dynamo_lower(m, p.n, p.tree.unwrap_or(false))?;
    Ok(BoundsReport {
        model: m,
        params: *p,
        parity_x: matches!(m, ThresholdModel::TwoWayR { r: 2 }).then(|| parity_x(p.n)),
        dynamo,
        monotone_dynamo_lower: monotone,
        stable,
        immortal,
    })
}

/// `δ ≥ n/2 + r`, compared as `2δ ≥ n + 2r`.
pub fn gunderson_condition(n: usize, delta: usize, r: usize) -> bool {
    2 * delta >= n + 2 * r
}

/// Expected size of the labeling dynamo over uniform orderings:
/// `Σ_v ⌈αd(v)⌉/(d(v)+1)` in α-BP, `Σ_v r/(d(v)+1)` in r-BP.
pub fn labeling_expectation(g: &Graph, m: ThresholdModel) -> Result<BigRational> {
    if m.is_two_way() {
        return Err(Error::Model(format!("labeling dynamos need a one-way model, got {}", m.name())));
    }
    m.validate(g)?;
    Ok((0..g.n())
        .map(|v| {
            let d = g.degree(v);
            int(m.required(d).min(d + 1)) / int(d + 1)
        })
        .fold(BigRational::zero(), |acc, x| acc + x))
}
