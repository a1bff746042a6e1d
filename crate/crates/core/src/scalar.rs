//! Exact scalar rings.
//!
//! Two realizations share the [`Scalar`] interface: [`Rational`] for spot
//! evaluation and [`Poly`], a polynomial in the four family parameters
//! `l1..l4` with rational coefficients. Every geometric routine in the crate
//! is generic over [`Scalar`], so the same code produces closed-form
//! polynomial identities and concrete numbers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseRationalError;

/// Number of family parameters carried by [`Poly`].
pub const NUM_VARS: usize = 4;

/// A commutative ring with exact equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// Multiplies by a rational constant.
    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r.clone())
    }
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num, den)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"p"` or `"p/q"` with optional sign on `p`. Decimal notation
    /// is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        if s.contains(['.', 'e', 'E']) {
            return Err(ParseRationalError::Decimal(s.to_string()));
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str, allow_sign: bool| -> Result<BigInt, ParseRationalError> {
            let digits = if allow_sign {
                t.strip_prefix(['-', '+']).unwrap_or(t)
            } else {
                t
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRationalError::Malformed(s.to_string()));
            }
            t.parse::<BigInt>()
                .map_err(|_| ParseRationalError::Malformed(s.to_string()))
        };
        let n = parse_int(num, true)?;
        let d = match den {
            Some(d) => parse_int(d, false)?,
            None => BigInt::one(),
        };
        Rational::from_big(n, d).ok_or(ParseRationalError::ZeroDenominator(s.to_string()))
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    /// # Panics
    /// Panics on division by zero.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.0.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.0.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

/// Exponent vector `(e1, e2, e3, e4)` of a monomial `l1^e1 * .. * l4^e4`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `l1`, then `l2`, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; NUM_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_VARS]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "l{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Polynomial in `l1..l4` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        Poly { terms }
    }

    /// The parameter `l{index+1}`.
    ///
    /// # Panics
    /// Panics if `index >= 4`.
    pub fn var(index: usize) -> Self {
        assert!(index < NUM_VARS, "variable index out of range");
        let mut e = [0; NUM_VARS];
        e[index] = 1;
        Poly::monomial(Monomial(e), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated monomials add.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ([u32; NUM_VARS], Rational)>,
    {
        let mut p = Poly::default();
        for (e, c) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Substitutes `l_i := point[i]`.
    pub fn eval(&self, point: &[Rational; NUM_VARS]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Rational `c` with `self = c * q`, where `q` has integer coprime
    /// coefficients and a positive leading coefficient.
    pub fn content(&self) -> Rational {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return Rational::zero();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if lead.is_negative() {
            num_gcd = -num_gcd;
        }
        Rational::from_big(num_gcd, den_lcm).expect("lcm of denominators is nonzero")
    }

    /// Divides every coefficient by a nonzero rational.
    pub fn div_rational(&self, r: &Rational) -> Poly {
        let inv = r.recip().expect("division by zero");
        self.scale(&inv)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag == Rational::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Scalar for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: Rational) -> Self {
        Poly::constant(r)
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }
}

/// Renders with the rational content factored out, e.g.
/// `-3/2*(l1^2 + l2^2 - l3^2 - l4^2)`. Single terms print bare:
/// `-1/4*l1*l2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.len() {
            0 => f.write_str("0"),
            1 => self.fmt_terms(f),
            _ => {
                let content = self.content();
                let inner = self.div_rational(&content);
                if content == Rational::one() {
                    inner.fmt_terms(f)
                } else if content == -Rational::one() {
                    f.write_str("-(")?;
                    inner.fmt_terms(f)?;
                    f.write_str(")")
                } else {
                    write!(f, "{content}*(")?;
                    inner.fmt_terms(f)?;
                    f.write_str(")")
                }
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl From<Rational> for Poly {
    fn from(r: Rational) -> Self {
        Poly::constant(r)
    }
}

impl Poly {
    /// Evaluates in an arbitrary ring by substituting `l_i := point[i]`.
    pub fn eval_in<S: Scalar>(&self, point: &[S; NUM_VARS]) -> S {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(c.clone());
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// `Some(r)` with `other = r * self`, when `self` is nonzero and such a
    /// rational exists.
    pub fn ratio_to(&self, other: &Poly) -> Option<Rational> {
        let (m, c) = self.terms.iter().next_back()?;
        let r = &other.coefficient(m) / c;
        if self.scale(&r) == *other {
            Some(r)
        } else {
            None
        }
    }
}

/// The four parameters as polynomials `[l1, l2, l3, l4]`.
pub fn symbolic_lambda() -> [Poly; NUM_VARS] {
    [Poly::var(0), Poly::var(1), Poly::var(2), Poly::var(3)]
}

/// Lifts a rational parameter vector into any scalar ring.
pub fn lift_lambda<S: Scalar>(lam: &[Rational; NUM_VARS]) -> [S; NUM_VARS] {
    [
        S::from_rational(lam[0].clone()),
        S::from_rational(lam[1].clone()),
        S::from_rational(lam[2].clone()),
        S::from_rational(lam[3].clone()),
    ]
}
