//! Univariate polynomials over the rationals.
//!
//! Dense ascending-coefficient representation; the degrees that occur in
//! this crate never exceed five, so nothing sparser is warranted. The one
//! nontrivial operation is [`rational_roots`], which extracts every
//! rational root with multiplicity via the rational-root theorem applied
//! to the primitive integer form of the polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::rational::Rational;

/// A polynomial with [`Rational`] coefficients, lowest degree first.
///
/// The zero polynomial has an empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The affine polynomial `constant + slope·x`.
    pub fn affine(constant: Rational, slope: Rational) -> Self {
        Self::from_coeffs(vec![constant, slope])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that constants (including zero) have
    /// degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True when `self` equals `other` times a nonzero rational constant.
    pub fn is_scalar_multiple_of(&self, other: &RationalPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        let scale = &self.coeffs[self.coeffs.len() - 1] / &other.coeffs[other.coeffs.len() - 1];
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| *a == b * &scale)
    }

    /// Divides by `(x - root)`, panicking unless `root` really is a root.
    fn deflate(&self, root: &Rational) -> RationalPoly {
        let n = self.coeffs.len();
        assert!(n >= 2, "cannot deflate a constant");
        let mut out = vec![Rational::zero(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            out[i] = carry.clone();
            carry = &self.coeffs[i] + &(carry * root);
        }
        assert!(carry.is_zero(), "deflation by a non-root");
        RationalPoly::from_coeffs(out)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RationalPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RationalPoly::from_coeffs(coeffs)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        RationalPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Renders like `7168*a^3 + ... + 35840`, highest degree first, using `a`
/// for the indeterminate (the parameter name throughout the search).
impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_integer() || mag != Rational::one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "a")?;
                    } else {
                        write!(f, "a^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact determinant of a square matrix of polynomials, by cofactor
/// expansion along the first row. Panics on ragged or non-square input.
pub fn det_poly(rows: &[Vec<RationalPoly>]) -> RationalPoly {
    let n = rows.len();
    assert!(n > 0, "determinant of empty matrix");
    assert!(
        rows.iter().all(|r| r.len() == n),
        "det_poly requires a square matrix"
    );
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut total = RationalPoly::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RationalPoly>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * &det_poly(&minor);
        total = if j % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

/// All rational roots of `p` with multiplicities, sorted ascending.
///
/// Works on the primitive integer form of `p`: any rational root written
/// in lowest terms has numerator dividing the constant term and
/// denominator dividing the leading coefficient. Panics on the zero
/// polynomial — an identically vanishing determinant is a case the caller
/// must branch on first.
pub fn rational_roots(p: &RationalPoly) -> Vec<(Rational, usize)> {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let mut roots: Vec<(Rational, usize)> = Vec::new();

    // Factor out x^m first.
    let mut coeffs = p.coeffs().to_vec();
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        coeffs.drain(..zeros);
        roots.push((Rational::zero(), zeros));
    }
    if coeffs.len() <= 1 {
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        return roots;
    }

    // Primitive integer form.
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut int_coeffs: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for c in &int_coeffs {
        gcd = gcd.gcd(c);
    }
    for c in &mut int_coeffs {
        *c = &*c / &gcd;
    }

    let constant = int_coeffs[0].abs();
    let leading = int_coeffs[int_coeffs.len() - 1].abs();
    let mut candidates: Vec<Rational> = Vec::new();
    for p_div in divisors(&constant) {
        for q_div in divisors(&leading) {
            let cand = Rational::new(p_div.clone(), q_div.clone());
            candidates.push(cand.clone());
            candidates.push(-cand);
        }
    }
    candidates.sort();
    candidates.dedup();

    let reduced = RationalPoly::from_coeffs(coeffs);
    for cand in candidates {
        if !reduced.eval(&cand).is_zero() {
            continue;
        }
        let mut mult = 0;
        let mut q = reduced.clone();
        while !q.is_zero() && q.degree() >= 1 && q.eval(&cand).is_zero() {
            q = q.deflate(&cand);
            mult += 1;
        }
        roots.push((cand, mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

/// Positive divisors of `|n|` by trial division; `n` must be nonzero.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut out = Vec::new();
    let mut d = BigInt::one();
    loop {
        let sq = &d * &d;
        if sq > n {
            break;
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += BigInt::one();
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ri(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::from_coeffs(coeffs.iter().map(|&c| ri(c)).collect())
    }

    #[test]
    fn normalization_and_degree() {
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[3]).degree(), 0);
        assert_eq!(poly(&[1, 2, 0]).degree(), 1);
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = poly(&[1, 1]); // 1 + a
        let sq = &p * &p;
        assert_eq!(sq, poly(&[1, 2, 1]));
        assert_eq!(sq.eval(&ri(3)), ri(16));
        assert_eq!((&sq - &sq), RationalPoly::zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(poly(&[1, 2, 1]).to_string(), "a^2 + 2*a + 1");
        assert_eq!(poly(&[-3072, -6144, -3072]).to_string(), "-3072*a^2 - 6144*a - 3072");
        assert_eq!(poly(&[0]).to_string(), "0");
        assert_eq!(poly(&[0, 1]).to_string(), "a");
        assert_eq!(
            RationalPoly::affine(r(1, 2), r(-1, 3)).to_string(),
            "-1/3*a + 1/2"
        );
    }

    #[test]
    fn det_poly_diagonal() {
        let a1 = RationalPoly::affine(ri(1), ri(1));
        let z = RationalPoly::zero();
        let d = det_poly(&[vec![a1.clone(), z.clone()], vec![z, a1]]);
        assert_eq!(d, poly(&[1, 2, 1])); // (a+1)^2 = a^2 + 2a + 1
    }

    #[test]
    fn roots_of_squared_linear() {
        assert_eq!(rational_roots(&poly(&[1, 2, 1])), vec![(ri(-1), 2)]);
    }

    #[test]
    fn roots_of_scaled_cubic() {
        // 7168(a+1)^2 (4a+5)
        let p = &(&poly(&[1, 2, 1]) * &poly(&[5, 4])) * &poly(&[7168]);
        assert_eq!(rational_roots(&p), vec![(r(-5, 4), 1), (ri(-1), 2)]);
    }

    #[test]
    fn no_rational_roots() {
        assert!(rational_roots(&poly(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn root_at_zero() {
        // a^2 (2a - 1)
        let p = &poly(&[0, 0, 1]) * &poly(&[-1, 2]);
        assert_eq!(rational_roots(&p), vec![(ri(0), 2), (r(1, 2), 1)]);
    }

    #[test]
    #[should_panic(expected = "zero polynomial")]
    fn roots_of_zero_poly_panics() {
        rational_roots(&RationalPoly::zero());
    }

    #[test]
    fn scalar_multiple_detection() {
        let p = poly(&[1, 2, 1]);
        let q = poly(&[-3072, -6144, -3072]);
        assert!(q.is_scalar_multiple_of(&p));
        assert!(!poly(&[1, 2]).is_scalar_multiple_of(&p));
        assert!(!poly(&[1, 2, 2]).is_scalar_multiple_of(&p));
    }

    fn arb_affine() -> impl Strategy<Value = RationalPoly> {
        ((-6i64..7), (-6i64..7)).prop_map(|(c, s)| RationalPoly::affine(ri(c), ri(s)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// det_poly evaluated at any rational t equals the scalar
        /// determinant of the entry-wise evaluated matrix.
        #[test]
        fn det_poly_commutes_with_evaluation(
            entries in proptest::collection::vec(arb_affine(), 9),
            t_num in -8i64..9,
            t_den in 1i64..5,
        ) {
            let rows: Vec<Vec<RationalPoly>> =
                entries.chunks(3).map(|c| c.to_vec()).collect();
            let t = Rational::new(t_num, t_den);
            let evaluated = crate::linalg::RationalMatrix::from_rows(
                rows.iter()
                    .map(|row| row.iter().map(|p| p.eval(&t)).collect())
                    .collect(),
            );
            prop_assert_eq!(det_poly(&rows).eval(&t), evaluated.determinant());
        }

        /// rational_roots finds exactly the rationals where the polynomial
        /// vanishes, cross-checked against a brute-force scan of every
        /// candidate the rational-root theorem allows.
        #[test]
        fn roots_match_brute_force(coeffs in proptest::collection::vec(-10i64..11, 1..6)) {
            let p = RationalPoly::from_coeffs(coeffs.iter().map(|&c| ri(c)).collect());
            prop_assume!(!p.is_zero());
            let found = rational_roots(&p);
            for (root, mult) in &found {
                prop_assert!(p.eval(root).is_zero());
                prop_assert!(*mult >= 1);
            }
            // brute force over a small grid that covers all candidates for
            // these coefficient sizes
            for num in -10i64..=10 {
                for den in 1i64..=10 {
                    let cand = Rational::new(num, den);
                    let vanishes = p.eval(&cand).is_zero();
                    let reported = found.iter().any(|(r, _)| *r == cand);
                    prop_assert_eq!(vanishes, reported);
                }
            }
        }
    }
}
