//! Laurent polynomials in one variable `q` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]`.
///
/// Stored as exponent -> coefficient with zero coefficients never present, so the
/// derived equality is equality in the ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `q`
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `coeff * q^exp`
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    /// The ring involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Value at `q = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `q -> q^factor`.
    pub fn dilate(&self, factor: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * factor, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

/// Balanced quantum integer `[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn quantum_integer(n: u32) -> LaurentPolynomial {
    let n = n as i64;
    LaurentPolynomial::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1)))
}

/// `[n]! = [1][2]...[n]`, bar-invariant.
pub fn quantum_factorial(n: u32) -> LaurentPolynomial {
    (1..=n).fold(LaurentPolynomial::one(), |acc, k| {
        &acc * &quantum_integer(k)
    })
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// Renders a single term with its sign stripped: `q^-3`, `2*q^-1`, `q`, `7`.
fn fmt_unsigned_term(f: &mut fmt::Formatter<'_>, exp: i64, abs: &BigInt) -> fmt::Result {
    if exp == 0 {
        return write!(f, "{abs}");
    }
    if !abs.is_one() {
        write!(f, "{abs}*")?;
    }
    if exp == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{exp}")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_unsigned_term(f, *e, &c.abs())?;
        }
        Ok(())
    }
}

struct TermParser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl<'a> TermParser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|(_, c)| *c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.chars.peek()?.0;
        let mut end = start;
        while let Some((i, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                end = i + c.len_utf8();
                self.chars.next();
            } else {
                break;
            }
        }
        (end > start).then(|| &self.src[start..end])
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(1, format!("bad Laurent polynomial {:?}: {msg}", self.src))
    }

    /// term := INT ['*' mono] | mono ;  mono := 'q' ['^' ['-'] INT]
    fn term(&mut self) -> Result<(i64, BigInt)> {
        let coeff = match self.digits() {
            Some(d) => {
                let c: BigInt = d.parse().map_err(|_| self.err("bad coefficient"))?;
                if !self.eat('*') {
                    return Ok((0, c));
                }
                c
            }
            None => BigInt::one(),
        };
        if !self.eat('q') {
            return Err(self.err("expected `q`"));
        }
        let mut exp = 1i64;
        if self.eat('^') {
            let neg = self.eat('-');
            let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            exp = d.parse().map_err(|_| self.err("bad exponent"))?;
            if neg {
                exp = -exp;
            }
        }
        Ok((exp, coeff))
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    /// Parses the rendering grammar, e.g. `q^-3 + 2*q^-1 + q` or `-q^-3 + q`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = TermParser {
            chars: s.char_indices().peekable(),
            src: s,
        };
        let mut out = LaurentPolynomial::zero();
        let mut negative = p.eat('-');
        if !negative {
            p.eat('+');
        }
        loop {
            let (e, c) = p.term()?;
            out.add_term(e, if negative { -c } else { c });
            match p.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return Err(p.err("unexpected character")),
            }
            p.chars.next();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(
            &LaurentPolynomial::q() + &LaurentPolynomial::q_pow(-1),
            lp("q^-1 + q")
        );
        let p = lp("3*q^2 - q^-1");
        assert_eq!(&p + &LaurentPolynomial::zero(), p);
        let sum = &lp("1 + q^2") + &lp("-1 - q^2");
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn multiplication_examples() {
        // (q^-1 + q)(q^-2 + 1), expanded by hand
        let prod = &lp("q^-1 + q") * &lp("q^-2 + 1");
        assert_eq!(
            prod,
            LaurentPolynomial::from_terms([(-3, 1), (-1, 2), (1, 1)])
        );
        let p = lp("2*q^-5 + 7");
        assert_eq!(&p * &LaurentPolynomial::one(), p);
        assert_eq!(
            &LaurentPolynomial::q_pow(4) * &LaurentPolynomial::q_pow(-9),
            LaurentPolynomial::q_pow(-5)
        );
    }

    #[test]
    fn bar_examples() {
        assert_eq!(
            LaurentPolynomial::q_pow(2).bar(),
            LaurentPolynomial::q_pow(-2)
        );
        assert_eq!(lp("q + q^-1").bar(), lp("q + q^-1"));
        assert!(LaurentPolynomial::zero().bar().is_zero());
    }

    #[test]
    fn quantum_factorials() {
        assert_eq!(quantum_factorial(0), LaurentPolynomial::one());
        assert_eq!(quantum_factorial(2), lp("q + q^-1"));
        let three = &lp("q + q^-1") * &lp("q^2 + 1 + q^-2");
        assert_eq!(quantum_factorial(3), three);
        assert_eq!(three, lp("q^-3 + 2*q^-1 + 2*q + q^3"));
        for n in 0..=8 {
            assert!(quantum_factorial(n).is_bar_invariant(), "[{n}]!");
            // [n]! at q = 1 is n!
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(quantum_factorial(n).eval_at_one(), BigInt::from(fact));
        }
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(lp("1 + q^2").eval_at_one(), BigInt::from(2));
        assert_eq!(LaurentPolynomial::zero().eval_at_one(), BigInt::zero());
        assert_eq!(lp("q - q^-3").eval_at_one(), BigInt::zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(lp("q^-3 + 2*q^-1 + q").to_string(), "q^-3 + 2*q^-1 + q");
        assert_eq!(lp("q - q^-3").to_string(), "-q^-3 + q");
        assert_eq!(lp("q^2 + 1").to_string(), "1 + q^2");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(LaurentPolynomial::constant(-4).to_string(), "-4");
        assert_eq!(lp("q^-1 - 3*q").to_string(), "q^-1 - 3*q");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<LaurentPolynomial>().is_err());
        assert!("q^".parse::<LaurentPolynomial>().is_err());
        assert!("2*x".parse::<LaurentPolynomial>().is_err());
        assert!("q + + q".parse::<LaurentPolynomial>().is_err());
    }

    fn arb_lp() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(LaurentPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_lp(), b in arb_lp(), c in arb_lp()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_involutive_homomorphism(a in arb_lp(), b in arb_lp()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn eval_at_one_is_homomorphism(a in arb_lp(), b in arb_lp()) {
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
            prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
        }

        #[test]
        fn render_parse_roundtrip(a in arb_lp()) {
            let back: LaurentPolynomial = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
