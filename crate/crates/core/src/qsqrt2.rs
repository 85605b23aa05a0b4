//! Exact arithmetic in the quadratic field `Q(√2)` and polynomials over it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// `a + b √2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Self::new(rational(v, 1), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(rational(num, den), BigRational::zero())
    }

    /// `(a_num/a_den) + (b_num/b_den) √2`.
    pub fn from_parts(a: (i64, i64), b: (i64, i64)) -> Self {
        Self::new(rational(a.0, a.1), rational(b.0, b.1))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            // Opposite signs: compare a^2 with 2 b^2.
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(2));
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√2)", self.a, self.b)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2::new(
            &self.a * &o.a + &self.b * &o.b * two,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl<'a> Div<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn div(self, o: &QSqrt2) -> QSqrt2 {
        assert!(!o.is_zero(), "division by zero in Q(√2)");
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &o.a * &o.a - &o.b * &o.b * two;
        let num = self * &o.conjugate();
        QSqrt2::new(num.a / &norm, num.b / norm)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: QSqrt2) -> QSqrt2 { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: &QSqrt2) -> QSqrt2 { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        -&self
    }
}

/// Polynomial in one variable with `Q(√2)` coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<QSqrt2>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QSqrt2>) -> Self {
        while coeffs.last().is_some_and(QSqrt2::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: QSqrt2) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `y`.
    pub fn var() -> Self {
        Self::new(vec![QSqrt2::zero(), QSqrt2::one()])
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QSqrt2 {
        self.coeffs.get(i).cloned().unwrap_or_else(QSqrt2::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &QSqrt2::int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &QSqrt2) -> QSqrt2 {
        self.coeffs.iter().rev().fold(QSqrt2::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// `self(inner(y))`.
    pub fn compose(&self, inner: &Poly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..len).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..len).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![QSqrt2::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

/// `+`, `-` or `0`.
pub fn sign_char(x: &QSqrt2) -> char {
    match x.signum() {
        Ordering::Greater => '+',
        Ordering::Less => '-',
        Ordering::Equal => '0',
    }
}

/// `|x|` as an exact field element.
pub fn abs(x: &QSqrt2) -> QSqrt2 {
    if x.signum() == Ordering::Less {
        -x
    } else {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let s = QSqrt2::sqrt2();
        assert_eq!(&s * &s, QSqrt2::int(2));
        let x = QSqrt2::from_parts((3, 1), (-2, 1)); // 3 - 2√2 > 0
        assert_eq!(x.signum(), Ordering::Greater);
        let y = QSqrt2::from_parts((-3, 2), (1, 1)); // √2 - 1.5 < 0
        assert_eq!(y.signum(), Ordering::Less);
        assert_eq!(&(&x / &y) * &y, x);
        assert!((x.to_f64() - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(QSqrt2::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn polynomial_algebra() {
        let y = Poly::var();
        let one = Poly::constant(QSqrt2::one());
        let p = &(&y - &one) * &(&y + &one); // y^2 - 1
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&QSqrt2::sqrt2()), QSqrt2::one());
        assert_eq!(p.derivative(), y.scale(&QSqrt2::int(2)));
        // (y^2 - 1)(y + 1) = y^3 + y^2 - y - 1
        let q = p.compose(&(&y + &one));
        assert_eq!(q.eval(&QSqrt2::int(0)), QSqrt2::zero());
        assert_eq!(q.eval(&QSqrt2::int(1)), QSqrt2::int(3));
        assert!((&p - &p).is_zero());
    }
}
