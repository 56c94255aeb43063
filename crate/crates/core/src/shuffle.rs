//! The graded quantum shuffle algebra on words of a quiver.
//!
//! For words `i = [i_1 .. i_m]` and `j = [j_1 .. j_n]` the product is
//!
//! ```text
//! i o j = sum over shuffles w of q^(-e(w)) w,
//! e(w)  = sum of (alpha_a, alpha_b) over letter pairs a from i, b from j with a placed before b,
//! ```
//!
//! where `(-, -)` is the symmetric Cartan pairing of the quiver.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qlaurent::LaurentPolynomial;
use crate::quiver::{DimVector, Quiver, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleElement {
    quiver: Arc<Quiver>,
    terms: BTreeMap<Word, LaurentPolynomial>,
}

impl ShuffleElement {
    pub fn zero(quiver: Arc<Quiver>) -> Self {
        Self {
            quiver,
            terms: BTreeMap::new(),
        }
    }

    /// The empty word with coefficient 1, the unit of the shuffle product.
    pub fn one(quiver: Arc<Quiver>) -> Self {
        Self::word(quiver, Word::empty())
    }

    pub fn word(quiver: Arc<Quiver>, w: Word) -> Self {
        Self::monomial(quiver, w, LaurentPolynomial::one())
    }

    pub fn monomial(quiver: Arc<Quiver>, w: Word, coeff: LaurentPolynomial) -> Self {
        let mut out = Self::zero(quiver);
        out.add_term(w, coeff);
        out
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn add_term(&mut self, w: Word, coeff: LaurentPolynomial) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> LaurentPolynomial {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in rendering order: by weight, then lexicographically by word.
    pub fn terms(&self) -> Vec<(&Word, &LaurentPolynomial)> {
        let n = self.quiver.num_vertices();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(w, _)| (w.weight(n), (*w).clone()));
        v
    }

    /// Weights of the homogeneous components present.
    pub fn weights(&self) -> Vec<DimVector> {
        let n = self.quiver.num_vertices();
        let mut ws: Vec<DimVector> = self.terms.keys().map(|w| w.weight(n)).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    fn check_same_quiver(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_quiver(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPolynomial) -> Self {
        let mut out = Self::zero(self.quiver.clone());
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Bilinear extension of the word shuffle product.
    pub fn shuffle_product(&self, other: &Self) -> Result<Self> {
        self.check_same_quiver(other)?;
        let mut out = Self::zero(self.quiver.clone());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let coeff = ca * cb;
                for (w, e) in shuffle_words(&self.quiver, wa, wb) {
                    out.add_term(w, coeff.shift(-e));
                }
            }
        }
        Ok(out)
    }

    /// Coefficientwise value at `q = 1`, zeros dropped.
    pub fn specialize_q1(&self) -> BTreeMap<Word, BigInt> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval_at_one()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// All shuffles of `a` and `b` with their exponents `e`, one entry per shuffle
/// (so repeated words appear repeatedly).
pub fn shuffle_words(quiver: &Quiver, a: &Word, b: &Word) -> Vec<(Word, i64)> {
    let (m, n) = (a.len(), b.len());
    let mut out = Vec::new();
    // `from_a[p]` says whether position p of the result takes the next letter of `a`.
    let mut from_a = vec![false; m + n];
    fn rec(
        quiver: &Quiver,
        a: &[usize],
        b: &[usize],
        pos: usize,
        left_a: usize,
        from_a: &mut Vec<bool>,
        out: &mut Vec<(Word, i64)>,
    ) {
        let total = from_a.len();
        if pos == total {
            let (mut ia, mut ib) = (0, 0);
            let mut letters = Vec::with_capacity(total);
            let mut placed_a: Vec<usize> = Vec::with_capacity(a.len());
            let mut e = 0i64;
            for &take_a in from_a.iter() {
                if take_a {
                    letters.push(a[ia]);
                    placed_a.push(a[ia]);
                    ia += 1;
                } else {
                    let v = b[ib];
                    letters.push(v);
                    e += placed_a
                        .iter()
                        .map(|&u| quiver.cartan_pairing(u, v))
                        .sum::<i64>();
                    ib += 1;
                }
            }
            out.push((Word(letters), e));
            return;
        }
        let left_b = (total - pos) - left_a;
        if left_a > 0 {
            from_a[pos] = true;
            rec(quiver, a, b, pos + 1, left_a - 1, from_a, out);
        }
        if left_b > 0 {
            from_a[pos] = false;
            rec(quiver, a, b, pos + 1, left_a, from_a, out);
        }
    }
    rec(
        quiver,
        a.letters(),
        b.letters(),
        0,
        m,
        &mut from_a,
        &mut out,
    );
    out
}

/// Parses a product of bracketed words such as `[1] o [2] o [1 2]`.
pub fn parse_product(quiver: &Arc<Quiver>, expr: &str) -> Result<ShuffleElement> {
    let mut acc = ShuffleElement::one(quiver.clone());
    let mut rest = expr.trim();
    let mut expect_word = true;
    while !rest.is_empty() {
        if expect_word {
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::parse(1, format!("expected `[` in {expr:?}")))?;
            let close = body
                .find(']')
                .ok_or_else(|| Error::parse(1, format!("unclosed `[` in {expr:?}")))?;
            let w = quiver.parse_word(&body[..close])?;
            acc = acc.shuffle_product(&ShuffleElement::word(quiver.clone(), w))?;
            rest = body[close + 1..].trim_start();
        } else {
            rest = rest
                .strip_prefix('o')
                .or_else(|| rest.strip_prefix('∘'))
                .or_else(|| rest.strip_prefix('*'))
                .ok_or_else(|| Error::parse(1, format!("expected `o` between words in {expr:?}")))?
                .trim_start();
        }
        expect_word = !expect_word;
    }
    if expect_word {
        return Err(Error::parse(
            1,
            format!("expression {expr:?} must end with a word"),
        ));
    }
    Ok(acc)
}

/// Collects the vertex tokens mentioned in a word expression, in first-seen order.
pub fn vertices_in_expr(expr: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut inside = false;
    let mut cur = String::new();
    for ch in expr.chars() {
        match ch {
            '[' => inside = true,
            ']' | ' ' | ',' if inside => {
                if !cur.is_empty() && !out.contains(&cur) {
                    out.push(cur.clone());
                }
                cur.clear();
                if ch == ']' {
                    inside = false;
                }
            }
            c if inside => cur.push(c),
            _ => {}
        }
    }
    out
}

impl fmt::Display for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms().into_iter().enumerate() {
            let word = self.quiver.render_word(w);
            let (negative, body) = if c.num_terms() == 1 {
                let (e, x) = c.terms().next().unwrap();
                let negative = *x < BigInt::zero();
                let mono = LaurentPolynomial::monomial(if negative { -x } else { x.clone() }, e);
                if mono == LaurentPolynomial::one() {
                    (negative, word)
                } else {
                    (negative, format!("{mono}*{word}"))
                }
            } else {
                (false, format!("({c})*{word}"))
            };
            match (k, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lp(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn single_letter_products() {
        let pt = Arc::new(Quiver::builtin("pt").unwrap());
        let i = ShuffleElement::word(pt.clone(), Word(vec![0]));
        let ii = i.shuffle_product(&i).unwrap();
        assert_eq!(ii.coeff(&Word(vec![0, 0])), lp("1 + q^-2"));
        assert_eq!(ii.to_string(), "(q^-2 + 1)*[i i]");

        let a2 = Arc::new(Quiver::linear(2));
        let one = ShuffleElement::word(a2.clone(), Word(vec![0]));
        let two = ShuffleElement::word(a2.clone(), Word(vec![1]));
        let prod = one.shuffle_product(&two).unwrap();
        assert_eq!(prod.coeff(&Word(vec![0, 1])), lp("q"));
        assert_eq!(prod.coeff(&Word(vec![1, 0])), LaurentPolynomial::one());
        assert_eq!(prod.to_string(), "q*[1 2] + [2 1]");
    }

    #[test]
    fn unit_and_mismatch() {
        let a2 = Arc::new(Quiver::linear(2));
        let x = ShuffleElement::monomial(a2.clone(), Word(vec![1, 0, 1]), lp("q^-1 + 3"));
        let unit = ShuffleElement::one(a2.clone());
        assert_eq!(x.shuffle_product(&unit).unwrap(), x);
        assert_eq!(unit.shuffle_product(&x).unwrap(), x);
        let other = ShuffleElement::one(Arc::new(Quiver::linear(3)));
        assert!(matches!(
            x.shuffle_product(&other),
            Err(Error::QuiverMismatch)
        ));
    }

    #[test]
    fn specialization() {
        let pt = Arc::new(Quiver::builtin("pt").unwrap());
        let x = ShuffleElement::monomial(pt.clone(), Word(vec![0, 0]), lp("1 + q^-2"));
        assert_eq!(
            x.specialize_q1().get(&Word(vec![0, 0])),
            Some(&BigInt::from(2))
        );
        let a2 = Arc::new(Quiver::linear(2));
        let mut y = ShuffleElement::monomial(a2.clone(), Word(vec![0, 1]), lp("q"));
        y.add_term(Word(vec![1, 0]), LaurentPolynomial::one());
        let s = y.specialize_q1();
        assert_eq!(s.len(), 2);
        assert!(s.values().all(|c| c.is_one()));
        assert!(ShuffleElement::zero(a2).specialize_q1().is_empty());
    }

    #[test]
    fn parse_products() {
        let a2 = Arc::new(Quiver::linear(2));
        assert_eq!(
            parse_product(&a2, "[1] o [2]").unwrap().to_string(),
            "q*[1 2] + [2 1]"
        );
        assert_eq!(parse_product(&a2, "[] o [1]").unwrap().to_string(), "[1]");
        assert!(parse_product(&a2, "[1] [2]").is_err());
        assert!(parse_product(&a2, "[1] o").is_err());
        assert!(parse_product(&a2, "[3]").is_err());
        assert_eq!(vertices_in_expr("[i j] o [k]"), ["i", "j", "k"]);
    }

    #[test]
    fn rendering_signs() {
        let a2 = Arc::new(Quiver::linear(2));
        let mut x = ShuffleElement::monomial(a2.clone(), Word(vec![1, 0]), lp("-1"));
        x.add_term(Word(vec![0, 1]), lp("2*q^-1"));
        x.add_term(Word(vec![0]), lp("-q"));
        assert_eq!(x.to_string(), "-q*[1] + 2*q^-1*[1 2] - [2 1]");
    }

    fn random_word(rng: &mut ChaCha8Rng, n_vertices: usize) -> Word {
        let len = rng.gen_range(0..=3);
        Word((0..len).map(|_| rng.gen_range(0..n_vertices)).collect())
    }

    #[test]
    fn associativity_grading_and_classical_commutativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [Quiver::linear(2), Quiver::linear(3)] {
            let n = q.num_vertices();
            let q = Arc::new(q);
            for _ in 0..60 {
                let [a, b, c] =
                    [0; 3].map(|_| ShuffleElement::word(q.clone(), random_word(&mut rng, n)));
                let left = a.shuffle_product(&b).unwrap().shuffle_product(&c).unwrap();
                let right = a.shuffle_product(&b.shuffle_product(&c).unwrap()).unwrap();
                assert_eq!(left, right);

                let ab = a.shuffle_product(&b).unwrap();
                let expected = a.weights()[0].add(&b.weights()[0]);
                assert!(ab.weights().iter().all(|w| *w == expected));
                assert_eq!(
                    ab.specialize_q1(),
                    b.shuffle_product(&a).unwrap().specialize_q1()
                );
            }
        }
    }
}
