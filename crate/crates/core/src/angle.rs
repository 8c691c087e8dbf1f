//! Time points, carried as exact rational multiples of π where possible.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::linalg::{unit_phase, I, ONE};

/// `t = p·π/q`, always reduced with `q > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle {
    p: i64,
    q: i64,
}

impl RationalAngle {
    /// Panics if `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "denominator must be nonzero");
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let g = p.gcd(&q).max(1);
        RationalAngle { p: p / g, q: q / g }
    }

    pub const ZERO: RationalAngle = RationalAngle { p: 0, q: 1 };
    pub const HALF_PI: RationalAngle = RationalAngle { p: 1, q: 2 };
    pub const PI: RationalAngle = RationalAngle { p: 1, q: 1 };
    pub const TWO_PI: RationalAngle = RationalAngle { p: 2, q: 1 };

    /// `2π/h`.
    pub fn two_pi_over(h: usize) -> Self {
        Self::new(2, h as i64)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * self.p as f64 / self.q as f64
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.p * k, self.q)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.p * other.q + other.p * self.q, self.q * other.q)
    }

    pub fn neg(&self) -> Self {
        RationalAngle {
            p: -self.p,
            q: self.q,
        }
    }

    /// `exp(-i·t·λ)`, reducing `p·λ` modulo `2q` in integers first so that
    /// large eigenvalues lose no precision. Quarter turns are returned exactly.
    pub fn phase(&self, lambda: i64) -> Complex64 {
        let q = self.q as i128;
        let k = ((self.p as i128) * (lambda as i128)).rem_euclid(2 * q);
        if (2 * k) % q == 0 {
            match (2 * k / q) % 4 {
                0 => ONE,
                1 => -I,
                2 => -ONE,
                _ => I,
            }
        } else {
            unit_phase(-std::f64::consts::PI * k as f64 / q as f64)
        }
    }
}

impl fmt::Debug for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match self.p {
            0 => return write!(f, "0"),
            1 => "π".to_string(),
            -1 => "-π".to_string(),
            p => format!("{p}π"),
        };
        if self.q == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", self.q)
        }
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    /// Parses `"p/q"` (meaning `pπ/q`) or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidTime(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        if q <= 0 {
            return Err(bad());
        }
        Ok(RationalAngle::new(p, q))
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalAngle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A time point: exact rational multiple of π, or a raw real number of radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Time {
    Rational(RationalAngle),
    Real(f64),
}

impl Time {
    pub fn radians(&self) -> f64 {
        match self {
            Time::Rational(a) => a.radians(),
            Time::Real(t) => *t,
        }
    }

    /// `exp(-i·t·λ)`.
    pub fn phase(&self, lambda: i64) -> Complex64 {
        match self {
            Time::Rational(a) => a.phase(lambda),
            Time::Real(t) => unit_phase(-t * lambda as f64),
        }
    }

    /// `λ·t`.
    pub fn scale(&self, k: i64) -> Time {
        match self {
            Time::Rational(a) => Time::Rational(a.scale(k)),
            Time::Real(t) => Time::Real(t * k as f64),
        }
    }

    pub fn as_rational(&self) -> Option<RationalAngle> {
        match self {
            Time::Rational(a) => Some(*a),
            Time::Real(_) => None,
        }
    }
}

impl From<RationalAngle> for Time {
    fn from(a: RationalAngle) -> Self {
        Time::Rational(a)
    }
}

impl From<f64> for Time {
    fn from(t: f64) -> Self {
        Time::Real(t)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Time::Rational(a) => write!(f, "{a:?}"),
            Time::Real(t) => write!(f, "{t}"),
        }
    }
}

/// Default scan grid: every reduced `pπ/q` with `1 <= q <= 8` and
/// `0 < p/q <= 2`, sorted by value.
pub fn default_grid() -> Vec<RationalAngle> {
    let mut grid: Vec<RationalAngle> = (1..=8i64)
        .flat_map(|q| (1..=2 * q).filter(move |p| p.gcd(&q) == 1).map(move |p| RationalAngle::new(p, q)))
        .collect();
    grid.sort_by(|a, b| (a.p * b.q).cmp(&(b.p * a.q)));
    grid.dedup();
    grid
}
