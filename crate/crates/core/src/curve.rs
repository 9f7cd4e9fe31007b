//! Elliptic curve models over the rationals and the chord-tangent group law.
//!
//! Two models appear: the long Weierstrass form
//!
//! ```text
//! Y^2 + a1*XY + a3*Y = X^3 + a2*X^2 + a4*X + a6
//! ```
//!
//! and the Tate normal form `E(a,b): Y^2 + a*XY + b*Y = X^3 - b*X^2`,
//! which is the long form with `(a1, a2, a3, a4, a6) = (a, -b, b, 0, 0)`.
//! For `b != 0` a Tate curve carries three distinguished rational points
//! `(0,0)`, `(b,0)` and `(0,-b)`, and above `X = b` the second branch is
//! `(b, -b(a+1))`.
//!
//! The group law is implemented directly on the long form — no reduction
//! to short Weierstrass form, since the coordinate changes involved can
//! scramble the y-coordinates the rest of the crate cares about.

use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Errors from curve operations whose inputs are data, not code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// A point handed to a group-law operation does not lie on the curve.
    OffCurve(CurvePoint),
    /// A Tate-form operation that needs `b != 0` got `b = 0`.
    ZeroB,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::OffCurve(p) => write!(f, "point {p} is not on the curve"),
            CurveError::ZeroB => write!(f, "Tate form requires b != 0"),
        }
    }
}

impl std::error::Error for CurveError {}

/// A curve in long Weierstrass form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeierstrassCurve {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

/// The Tate normal form `E(a,b)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TateCurve {
    pub a: Rational,
    pub b: Rational,
}

/// A rational point: affine coordinates or the point at infinity (the
/// group identity). Equality is structural on canonical rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Affine { x: Rational, y: Rational },
    Infinity,
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn infinity() -> Self {
        CurvePoint::Infinity
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
            CurvePoint::Infinity => write!(f, "infinity"),
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl WeierstrassCurve {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    /// The discriminant via the standard b-quantities; nonzero exactly
    /// when the curve is nonsingular.
    pub fn discriminant(&self) -> Rational {
        let (b2, b4, b6, b8) = self.b_quantities();
        -(&b2 * &b2) * &b8 - Rational::from(8) * &b4 * &b4 * &b4
            - Rational::from(27) * &b6 * &b6
            + Rational::from(9) * &b2 * &b4 * &b6
    }

    fn b_quantities(&self) -> (Rational, Rational, Rational, Rational) {
        let b2 = &self.a1 * &self.a1 + Rational::from(4) * &self.a2;
        let b4 = Rational::from(2) * &self.a4 + &self.a1 * &self.a3;
        let b6 = &self.a3 * &self.a3 + Rational::from(4) * &self.a6;
        let b8 = &self.a1 * &self.a1 * &self.a6 + Rational::from(4) * &self.a2 * &self.a6
            - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4;
        (b2, b4, b6, b8)
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// Exact membership in the defining equation; infinity always counts.
    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    fn require_on_curve(&self, p: &CurvePoint) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::OffCurve(p.clone()))
        }
    }

    /// Group negation: `-(x, y) = (x, -y - a1*x - a3)`.
    pub fn negate(&self, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.require_on_curve(p)?;
        Ok(self.negate_unchecked(p))
    }

    pub(crate) fn negate_unchecked(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y - &self.a1 * x - &self.a3,
            },
        }
    }

    /// Chord-tangent addition on the long form.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.require_on_curve(p)?;
        self.require_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };

        // Vertical chord first: q = -p gives the identity. Two on-curve
        // points sharing an x-coordinate are either equal or negatives,
        // so doubling is the only other possibility when x1 = x2.
        let (lambda, nu) = if x1 == x2 {
            if *q == self.negate_unchecked(p) {
                return CurvePoint::Infinity;
            }
            let denom = Rational::from(2) * y1 + &self.a1 * x1 + &self.a3;
            let lambda = (Rational::from(3) * x1 * x1 + Rational::from(2) * &self.a2 * x1
                + &self.a4
                - &self.a1 * y1)
                / &denom;
            let nu = (-(x1 * x1 * x1) + &self.a4 * x1 + Rational::from(2) * &self.a6
                - &self.a3 * y1)
                / &denom;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            let lambda = (y2 - y1) / &dx;
            let nu = (y1 * x2 - y2 * x1) / &dx;
            (lambda, nu)
        };

        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - &nu - &self.a3;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// `k`-fold sum by double-and-add; `k = 0` gives infinity and
    /// negative `k` negates.
    pub fn scalar_mul(&self, k: i64, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.require_on_curve(p)?;
        Ok(self.scalar_mul_unchecked(k, p))
    }

    fn scalar_mul_unchecked(&self, k: i64, p: &CurvePoint) -> CurvePoint {
        if k < 0 {
            return self.negate_unchecked(&self.scalar_mul_unchecked(-k, p));
        }
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        acc
    }

    /// Applies an admissible coordinate change, returning the curve the
    /// points map onto. See [`CoordChange::apply_to_point`] for the
    /// induced point map.
    pub fn transform(&self, ch: &CoordChange) -> WeierstrassCurve {
        let CoordChange { u, r, s, t } = ch;
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let two = Rational::from(2);
        let three = Rational::from(3);
        let a1 = (&self.a1 + &two * s) / u;
        let a2 = (&self.a2 - s * &self.a1 + &three * r - s * s) / &u2;
        let a3 = (&self.a3 + r * &self.a1 + &two * t) / &u3;
        let a4 = (&self.a4 - s * &self.a3 + &two * r * &self.a2 - (t + r * s) * &self.a1
            + &three * r * r
            - &two * s * t)
            / &u4;
        let a6 = (&self.a6 + r * &self.a4 + r * r * &self.a2 + r * r * r
            - t * &self.a3
            - t * t
            - r * t * &self.a1)
            / &u6;
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    /// Recognizes the Tate shape `a2 = -a3, a4 = a6 = 0` and extracts
    /// `E(a, b)`; `None` otherwise.
    pub fn as_tate(&self) -> Option<TateCurve> {
        (self.a4.is_zero() && self.a6.is_zero() && self.a2 == -&self.a3).then(|| TateCurve {
            a: self.a1.clone(),
            b: self.a3.clone(),
        })
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Y^2 + ({})XY + ({})Y = X^3 + ({})X^2 + ({})X + ({})",
            self.a1, self.a3, self.a2, self.a4, self.a6
        )
    }
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TateCurve {
    pub fn new(a: Rational, b: Rational) -> Self {
        TateCurve { a, b }
    }

    /// The long Weierstrass coefficients `(a, -b, b, 0, 0)`.
    pub fn to_weierstrass(&self) -> WeierstrassCurve {
        WeierstrassCurve {
            a1: self.a.clone(),
            a2: -&self.b,
            a3: self.b.clone(),
            a4: Rational::zero(),
            a6: Rational::zero(),
        }
    }

    pub fn discriminant(&self) -> Rational {
        self.to_weierstrass().discriminant()
    }

    /// The distinguished points `(0,0)`, `(b,0)`, `(0,-b)`.
    /// Errors when `b = 0` (the curve is singular and carries none).
    pub fn tate_points(&self) -> Result<[CurvePoint; 3], CurveError> {
        if self.b.is_zero() {
            return Err(CurveError::ZeroB);
        }
        Ok([
            CurvePoint::affine(Rational::zero(), Rational::zero()),
            CurvePoint::affine(self.b.clone(), Rational::zero()),
            CurvePoint::affine(Rational::zero(), -&self.b),
        ])
    }

    /// The second y-root above `x = b`, namely `-b(a+1)`.
    pub fn second_branch_at_b(&self) -> CurvePoint {
        let y = -&self.b * (&self.a + Rational::one());
        CurvePoint::affine(self.b.clone(), y)
    }
}

impl fmt::Display for TateCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({}, {})", self.a, self.b)
    }
}

impl fmt::Debug for TateCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `{"tate": {"a": ..., "b": ...}}` to stay distinguishable
/// from a long-form curve object.
impl Serialize for TateCurve {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Inner<'a> {
            a: &'a Rational,
            b: &'a Rational,
        }
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry(
            "tate",
            &Inner {
                a: &self.a,
                b: &self.b,
            },
        )?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for TateCurve {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Inner {
            a: Rational,
            b: Rational,
        }
        #[derive(Deserialize)]
        struct Outer {
            tate: Inner,
        }
        let outer = Outer::deserialize(deserializer)?;
        Ok(TateCurve {
            a: outer.tate.a,
            b: outer.tate.b,
        })
    }
}

/// An admissible change of variables `x = u^2 x' + r`,
/// `y = u^3 y' + s u^2 x' + t` with `u != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChange {
    u: Rational,
    r: Rational,
    s: Rational,
    t: Rational,
}

impl CoordChange {
    /// Panics if `u` is zero; every other parameter is unrestricted.
    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Self {
        assert!(!u.is_zero(), "coordinate change requires u != 0");
        CoordChange { u, r, s, t }
    }

    pub fn identity() -> Self {
        CoordChange::new(
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// Pure rescaling `x = u^2 x'`, `y = u^3 y'`.
    pub fn scaling(u: Rational) -> Self {
        CoordChange::new(u, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// Maps a point of the original curve to the transformed curve:
    /// `x' = (x - r)/u^2`, `y' = (y - s(x - r) - t)/u^3`.
    pub fn apply_to_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                let u3 = &u2 * &self.u;
                let dx = x - &self.r;
                let xp = &dx / &u2;
                let yp = (y - &self.s * &dx - &self.t) / &u3;
                CurvePoint::Affine { x: xp, y: yp }
            }
        }
    }

    /// The inverse change, undoing `self` on curves and points.
    pub fn inverse(&self) -> CoordChange {
        let u_inv = self.u.recip();
        let u2 = &self.u * &self.u;
        let u3 = &u2 * &self.u;
        CoordChange {
            u: u_inv,
            r: -(&self.r) / &u2,
            s: -(&self.s) / &self.u,
            t: (&self.r * &self.s - &self.t) / &u3,
        }
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CurvePoint::Infinity => serializer.serialize_str("infinity"),
            CurvePoint::Affine { x, y } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("x", x)?;
                map.serialize_entry("y", y)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for CurvePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PointVisitor;

        impl<'de> Visitor<'de> for PointVisitor {
            type Value = CurvePoint;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"infinity\" or an object with x and y")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<CurvePoint, E> {
                if v == "infinity" {
                    Ok(CurvePoint::Infinity)
                } else {
                    Err(E::custom("expected the string \"infinity\""))
                }
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<CurvePoint, A::Error> {
                let mut x: Option<Rational> = None;
                let mut y: Option<Rational> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "x" => x = Some(map.next_value()?),
                        "y" => y = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["x", "y"])),
                    }
                }
                let x = x.ok_or_else(|| de::Error::missing_field("x"))?;
                let y = y.ok_or_else(|| de::Error::missing_field("y"))?;
                Ok(CurvePoint::Affine { x, y })
            }
        }

        deserializer.deserialize_any(PointVisitor)
    }
}
