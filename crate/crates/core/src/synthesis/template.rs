use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Domain, Interval, Poly, Rational, TransferFunction};
use crate::error::{Error, Result};

/// Degree structure of a controller `y(s)/x(s)`.
///
/// Parameters are ordered `[y_0 .. y_m, x_0 .. x_{k-1}]` for a monic
/// denominator and `[y_0 .. y_m, x_0 .. x_k]` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ControllerTemplate {
    pub num_degree: usize,
    pub den_degree: usize,
    #[serde(default = "default_monic")]
    pub monic_den: bool,
}

fn default_monic() -> bool {
    true
}

impl ControllerTemplate {
    /// Monic denominator.
    pub fn new(num_degree: usize, den_degree: usize) -> Self {
        ControllerTemplate {
            num_degree,
            den_degree,
            monic_den: true,
        }
    }

    pub fn param_count(&self) -> usize {
        self.num_degree + 1 + self.den_degree + usize::from(!self.monic_den)
    }

    pub fn labels(&self) -> Vec<String> {
        let den_terms = self.den_degree + usize::from(!self.monic_den);
        (0..=self.num_degree)
            .map(|i| format!("y{i}"))
            .chain((0..den_terms).map(|j| format!("x{j}")))
            .collect()
    }

    /// Numerator and denominator before reduction.
    pub fn polys(&self, theta: &[Rational]) -> Result<(Poly, Poly)> {
        if theta.len() != self.param_count() {
            return Err(Error::DimensionMismatch {
                expected: self.param_count(),
                found: theta.len(),
            });
        }
        let (y, x) = theta.split_at(self.num_degree + 1);
        let mut den = x.to_vec();
        if self.monic_den {
            den.push(Rational::one());
        }
        Ok((Poly::new(y.to_vec()), Poly::new(den)))
    }

    pub fn controller(&self, theta: &[Rational], domain: Domain) -> Result<TransferFunction> {
        let (num, den) = self.polys(theta)?;
        TransferFunction::new(num, den, domain)
    }
}

impl fmt::Display for ControllerTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.num_degree, self.den_degree)
    }
}

impl std::str::FromStr for ControllerTemplate {
    type Err = Error;
    /// `"m,k"` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("template `{s}` is not of the form m,k"));
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (m, k) = inner.split_once(',').ok_or_else(bad)?;
        let m = m.trim().parse().map_err(|_| bad())?;
        let k = k.trim().parse().map_err(|_| bad())?;
        Ok(ControllerTemplate::new(m, k))
    }
}

/// Axis-aligned parameter box. Serialized as a list of `[lo, hi]` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamBox {
    bounds: Vec<Interval>,
}

impl Eq for ParamBox {}

impl ParamBox {
    pub fn new(bounds: Vec<Interval>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidArgument(
                "parameter box has no dimensions".into(),
            ));
        }
        if let Some(b) = bounds
            .iter()
            .find(|b| !(b.lo.is_finite() && b.hi.is_finite() && b.lo <= b.hi))
        {
            return Err(Error::InvalidArgument(format!("invalid box side {b:?}")));
        }
        Ok(ParamBox { bounds })
    }

    /// `[lo, hi]^dim`.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        ParamBox::new(vec![Interval::new(lo, hi); dim])
    }

    pub fn bounds(&self) -> &[Interval] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.bounds.iter().map(Interval::mid).collect()
    }

    pub fn max_width(&self) -> f64 {
        self.bounds.iter().map(Interval::width).fold(0.0, f64::max)
    }

    pub fn widest(&self) -> usize {
        let mut best = 0;
        for (i, b) in self.bounds.iter().enumerate() {
            if b.width() > self.bounds[best].width() {
                best = i;
            }
        }
        best
    }

    pub fn split(&self, axis: usize) -> (ParamBox, ParamBox) {
        let (a, b) = self.bounds[axis].bisect();
        let mut left = self.bounds.clone();
        let mut right = self.bounds.clone();
        left[axis] = a;
        right[axis] = b;
        (ParamBox { bounds: left }, ParamBox { bounds: right })
    }
}

impl Serialize for ParamBox {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.bounds.iter().map(|b| [b.lo, b.hi]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamBox {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        if let Some(p) = pairs
            .iter()
            .find(|p| p.iter().any(|x| x.is_nan()) || p[0] > p[1])
        {
            return Err(serde::de::Error::custom(format!(
                "box side [{}, {}] is empty",
                p[0], p[1]
            )));
        }
        ParamBox::new(
            pairs
                .into_iter()
                .map(|[lo, hi]| Interval::new(lo, hi))
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SplitStrategy {
    /// Bisect the widest side.
    #[default]
    Widest,
    /// Cycle through the sides by depth.
    RoundRobin,
}

/// Budget and determinism knobs for [`super::feasibility_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    /// Boxes processed before giving up.
    pub max_boxes: usize,
    /// Boxes narrower than this on every side are not split further.
    pub min_width: Rational,
    pub splits: SplitStrategy,
    /// Seeds the extra probe points drawn inside each box.
    pub seed: u64,
    /// Seeded probe points per box in addition to the midpoint.
    pub probes: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_boxes: 20_000,
            min_width: Rational::frac(1, 1_000_000_000),
            splits: SplitStrategy::Widest,
            seed: 0,
            probes: 4,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_boxes == 0 {
            return Err(Error::InvalidArgument("max_boxes must be positive".into()));
        }
        if !self.min_width.is_positive() {
            return Err(Error::InvalidArgument("min_width must be positive".into()));
        }
        Ok(())
    }
}
