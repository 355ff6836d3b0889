//! Closed-form invariants of the diagonal double Kodaira fibration of a structure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::structures::{k_subgroups, DDKStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("invalid input: group order {order}, b = {b}, n = {n}")]
    InvalidInput { order: u64, b: u64, n: u64 },
    #[error("{quantity} = {value} is not an integer")]
    NonIntegral { quantity: &'static str, value: String },
    #[error("first Betti number {0} is odd")]
    OddBetti(u64),
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// An exact rational serialized as `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvariantError::BadRational(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn q(x: u64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn integral(quantity: &'static str, x: &BigRational) -> Result<i64, InvariantError> {
    let err = || InvariantError::NonIntegral {
        quantity,
        value: format!("{}/{}", x.numer(), x.denom()),
    };
    if !x.is_integer() {
        return Err(err());
    }
    x.to_integer().to_i64().ok_or_else(err)
}

fn validate(order: u64, b: u64, n: u64) -> Result<(), InvariantError> {
    if order < 1 || b < 2 || n < 2 {
        return Err(InvariantError::InvalidInput { order, b, n });
    }
    Ok(())
}

/// `𝔫 = 1 - 1/n`.
pub fn frak_n(n: u64) -> BigRational {
    BigRational::one() - BigRational::new(1.into(), n.into())
}

/// `σ = ⅓ |G| (2b - 2)(1 - 1/n²)`.
pub fn signature(order: u64, b: u64, n: u64) -> Result<i64, InvariantError> {
    validate(order, b, n)?;
    let s = q(order) * q(2 * b - 2) * (BigRational::one() - BigRational::new(1.into(), (n * n).into()))
        / q(3);
    integral("signature", &s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chern {
    pub c1sq: i64,
    pub c2: i64,
    pub slope: Rational,
}

/// `c₁² = |G|(2b-2)(4b-4+4𝔫-𝔫²)`, `c₂ = |G|(2b-2)(2b-2+𝔫)` and their ratio.
pub fn chern_invariants(order: u64, b: u64, n: u64) -> Result<Chern, InvariantError> {
    validate(order, b, n)?;
    let nn = frak_n(n);
    let base = q(order) * q(2 * b - 2);
    let c1sq = &base * (q(4 * b - 4) + q(4) * &nn - &nn * &nn);
    let c2 = &base * (q(2 * b - 2) + &nn);
    let slope = &c1sq / &c2;
    Ok(Chern {
        c1sq: integral("c1sq", &c1sq)?,
        c2: integral("c2", &c2)?,
        slope: Rational(slope),
    })
}

/// `0 < ν - 2 < 6 - 4√2`, decided as `s > 0`, `6 - s > 0`, `(6 - s)² > 32`.
pub fn slope_in_diagonal_window(slope: &Rational) -> bool {
    let s = &slope.0 - q(2);
    let r = q(6) - &s;
    s.is_positive() && r.is_positive() && &r * &r > q(32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genera {
    pub b1: i64,
    pub b2: i64,
    pub g1: i64,
    pub g2: i64,
}

/// `b_i - 1 = m_i (b - 1)` and `2g_i - 2 = (|G|/m_i)(2b - 2 + 𝔫)`.
pub fn genera(order: u64, b: u64, n: u64, m1: u64, m2: u64) -> Result<Genera, InvariantError> {
    validate(order, b, n)?;
    let nn = frak_n(n);
    let base_genus = |m: u64| integral("base genus", &(q(m) * q(b - 1) + q(1)));
    let fibre_genus = |m: u64| {
        integral(
            "fibre genus",
            &((q(order) / q(m) * (q(2 * b - 2) + &nn) + q(2)) / q(2)),
        )
    };
    Ok(Genera {
        b1: base_genus(m1)?,
        b2: base_genus(m2)?,
        g1: fibre_genus(m1)?,
        g2: fibre_genus(m2)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hodge {
    pub chi: i64,
    pub q_irr: i64,
    pub p_g: i64,
    pub maximal: bool,
}

/// `χ = (c₁² + c₂)/12`, `q = b₁(S)/2`, `p_g = χ - 1 + q`, maximal iff `b₁(S) = 4b`.
pub fn hodge_numbers(c1sq: i64, c2: i64, first_betti: u64, b: u64) -> Result<Hodge, InvariantError> {
    if !first_betti.is_multiple_of(2) {
        return Err(InvariantError::OddBetti(first_betti));
    }
    let chi = integral("chi", &BigRational::new((c1sq + c2).into(), 12.into()))?;
    let q_irr = (first_betti / 2) as i64;
    Ok(Hodge {
        chi,
        q_irr,
        p_g: chi - 1 + q_irr,
        maximal: first_betti == 4 * b,
    })
}

/// Every closed-form invariant of a structure's fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub group_order: u64,
    pub b: u64,
    pub n: u64,
    pub frak_n: Rational,
    pub m1: u64,
    pub m2: u64,
    pub b1: i64,
    pub b2: i64,
    pub g1: i64,
    pub g2: i64,
    pub c1sq: i64,
    pub c2: i64,
    pub slope: Rational,
    pub sigma: i64,
    pub chi: i64,
    pub first_betti: Option<u64>,
    pub q_irr: Option<i64>,
    pub p_g: Option<i64>,
    pub maximal: Option<bool>,
}

impl FibrationReport {
    pub fn from_data(order: u64, b: u64, n: u64, m1: u64, m2: u64) -> Result<Self, InvariantError> {
        let ch = chern_invariants(order, b, n)?;
        let ge = genera(order, b, n, m1, m2)?;
        let sigma = signature(order, b, n)?;
        let chi = integral("chi", &BigRational::new((ch.c1sq + ch.c2).into(), 12.into()))?;
        Ok(FibrationReport {
            group_order: order,
            b,
            n,
            frak_n: Rational(frak_n(n)),
            m1,
            m2,
            b1: ge.b1,
            b2: ge.b2,
            g1: ge.g1,
            g2: ge.g2,
            c1sq: ch.c1sq,
            c2: ch.c2,
            slope: ch.slope,
            sigma,
            chi,
            first_betti: None,
            q_irr: None,
            p_g: None,
            maximal: None,
        })
    }

    /// Fills the fields that depend on the first Betti number of the surface.
    pub fn with_first_betti(mut self, first_betti: u64) -> Result<Self, InvariantError> {
        let h = hodge_numbers(self.c1sq, self.c2, first_betti, self.b)?;
        self.first_betti = Some(first_betti);
        self.q_irr = Some(h.q_irr);
        self.p_g = Some(h.p_g);
        self.maximal = Some(h.maximal);
        Ok(self)
    }
}

/// The report of a verified structure, without homology data.
pub fn fibration_data(s: &DDKStructure<'_>) -> Result<FibrationReport, InvariantError> {
    let k = k_subgroups(s);
    let t = s.stype();
    FibrationReport::from_data(
        s.ambient().order() as u64,
        t.b as u64,
        t.n as u64,
        k.m1 as u64,
        k.m2 as u64,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub group_order: u64,
    pub b: u64,
    pub n: u64,
    pub sigma: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundScan {
    pub rows: Vec<ScanRow>,
    pub minimum: i64,
    pub minimizers: Vec<(u64, u64, u64)>,
}

/// Scans `32 ≤ |G| ≤ max_order`, `2 ≤ b ≤ max_b`, `2 ≤ n ≤ max_n`, keeping
/// triples with `n | |G|` whose `c₁²`, `c₂` and `σ` are integers.
pub fn signature_bound_scan(max_order: u64, max_b: u64, max_n: u64) -> BoundScan {
    let mut rows = Vec::new();
    for order in 32..=max_order {
        for b in 2..=max_b {
            for n in 2..=max_n {
                if order % n != 0 || chern_invariants(order, b, n).is_err() {
                    continue;
                }
                if let Ok(sigma) = signature(order, b, n) {
                    rows.push(ScanRow {
                        group_order: order,
                        b,
                        n,
                        sigma,
                    });
                }
            }
        }
    }
    let minimum = rows.iter().map(|r| r.sigma).min().unwrap_or(0);
    let minimizers = rows
        .iter()
        .filter(|r| r.sigma == minimum)
        .map(|r| (r.group_order, r.b, r.n))
        .collect();
    BoundScan {
        rows,
        minimum,
        minimizers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_32_numbers() {
        let c = chern_invariants(32, 2, 2).unwrap();
        assert_eq!((c.c1sq, c.c2), (368, 160));
        assert_eq!(c.slope, Rational::new(23, 10));
        assert!(slope_in_diagonal_window(&c.slope));
        assert_eq!(signature(32, 2, 2).unwrap(), 16);
        let g = genera(32, 2, 2, 1, 1).unwrap();
        assert_eq!((g.b1, g.b2, g.g1, g.g2), (2, 2, 41, 41));
        let h = hodge_numbers(368, 160, 8, 2).unwrap();
        assert_eq!((h.chi, h.q_irr, h.p_g, h.maximal), (44, 4, 47, true));
    }

    #[test]
    fn legacy_datapoint() {
        assert_eq!(signature(243, 2, 3).unwrap(), 144);
        assert_eq!(genera(243, 2, 3, 1, 1).unwrap().g1, 325);
    }

    #[test]
    fn arithmetic_edge_cases() {
        let h = hodge_numbers(0, 12, 0, 2).unwrap();
        assert_eq!((h.chi, h.q_irr, h.p_g), (1, 0, 0));
        assert!(!hodge_numbers(368, 160, 10, 2).unwrap().maximal);
        assert_eq!(hodge_numbers(368, 160, 9, 2), Err(InvariantError::OddBetti(9)));
        assert!(matches!(signature(5, 2, 2), Err(InvariantError::NonIntegral { .. })));
        assert!(matches!(signature(32, 1, 2), Err(InvariantError::InvalidInput { .. })));
    }

    #[test]
    fn window_bounds() {
        assert!(!slope_in_diagonal_window(&Rational::new(2, 1)));
        assert!(slope_in_diagonal_window(&Rational::new(2343, 1000)));
        assert!(!slope_in_diagonal_window(&Rational::new(2344, 1000)));
    }

    #[test]
    fn rational_serialization() {
        let r = Rational::new(46, 20);
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"23/10\"");
        assert_eq!(serde_json::from_str::<Rational>("\"23/10\"").unwrap(), r);
        assert_eq!("4".parse::<Rational>().unwrap().to_string(), "4/1");
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn sharp_bound() {
        let scan = signature_bound_scan(64, 3, 3);
        assert_eq!(scan.minimum, 16);
        assert_eq!(scan.minimizers, vec![(32, 2, 2)]);
    }
}
