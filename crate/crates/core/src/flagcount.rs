//! Point counts of stable-flag varieties over prime fields, counting polynomials
//! recovered by interpolation, Serre polynomials, and dimensions of the flag-module
//! incidence varieties by exhaustive enumeration.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffmod::{GradedSubspace, ModpModule, PPModule};
use crate::linalg::{primes_from, Field, Matrix, PrimeField};
use crate::qlaurent::LaurentPolynomial;
use crate::quiver::{DimVector, Quiver, Word};

/// Knobs shared by every counting routine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountOptions {
    /// Smallest prime sampled.
    pub primes_floor: u64,
    /// Overrides the default interpolation degree bound.
    pub degree_bound: Option<u32>,
    /// Largest number of matrix tuples enumerated per prime by [`dim_lambda_word`].
    pub max_enum: u64,
    /// Largest total dimension accepted by [`naive_flag_count`].
    pub naive_dim_cap: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            primes_floor: 2,
            degree_bound: None,
            max_enum: 1_000_000,
            naive_dim_cap: 4,
        }
    }
}

fn weight_check(quiver: &Quiver, dim: &DimVector, word: &Word) -> Result<()> {
    let weight = word.weight(quiver.num_vertices());
    if &weight == dim {
        return Ok(());
    }
    Err(Error::WeightMismatch {
        word: quiver.render_word(word),
        weight: quiver.render_dim(&weight),
        expected: quiver.render_dim(dim),
    })
}

/// Number of complete flags in `F_p^n`, i.e. `prod_{m<=n} (p^m - 1)/(p - 1)`.
fn full_flag_count(p: u64, n: usize) -> Option<u64> {
    let mut total = 1u64;
    let mut qint = 0u64;
    let mut pm = 1u64;
    for _ in 0..n {
        qint = qint.checked_add(pm)?;
        pm = pm.checked_mul(p)?;
        total = total.checked_mul(qint)?;
    }
    Some(total)
}

/// Normalised representatives of the projective space `P^{k-1}(F_p)`.
fn projective_points(p: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..k).flat_map(move |lead| {
        let free = k - lead - 1;
        let total = (p as u64).pow(free as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![0u32; k];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (code % p as u64) as u32;
                code /= p as u64;
            }
            v
        })
    })
}

fn count_rec(z: &ModpModule, letters: &[usize], shortcut: bool) -> Result<u64> {
    let Some((&v, rest)) = letters.split_first() else {
        return Ok(1);
    };
    let p = z.field().p();
    if shortcut && z.is_zero_action() {
        let mut total = 1u64;
        for &d in &z.dim().0 {
            let flags =
                full_flag_count(p as u64, d as usize).ok_or(Error::Overflow("flag count"))?;
            total = total
                .checked_mul(flags)
                .ok_or(Error::Overflow("flag count"))?;
        }
        return Ok(total);
    }
    let kernel = z.outgoing_kernel(v);
    let f = z.field();
    let mut total = 0u64;
    for c in projective_points(p, kernel.cols()) {
        let line: Vec<u32> = (0..kernel.rows())
            .map(|r| {
                (0..kernel.cols()).fold(0u32, |acc, k| f.add(&acc, &f.mul(kernel.get(r, k), &c[k])))
            })
            .collect();
        let sub = count_rec(&z.quotient_by_line(v, &line), rest, shortcut)?;
        total = total
            .checked_add(sub)
            .ok_or(Error::Overflow("flag count"))?;
    }
    Ok(total)
}

/// Number of complete `z`-stable flags of type `word`: the first step is a stable
/// line at the vertex `word[0]`, and so on up to the whole space.
pub fn count_stable_flags(z: &ModpModule, word: &Word) -> Result<u64> {
    weight_check(z.quiver(), z.dim(), word)?;
    count_rec(z, word.letters(), true)
}

/// The same count without the closed form for modules with zero action.
pub fn count_stable_flags_recursive(z: &ModpModule, word: &Word) -> Result<u64> {
    weight_check(z.quiver(), z.dim(), word)?;
    count_rec(z, word.letters(), false)
}

/// All `d`-dimensional subspaces of `F_p^n`, as row-reduced `d x n` matrices.
fn subspaces(p: u32, n: usize, d: usize) -> Vec<Matrix<u32>> {
    fn pivots(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            pivots(n, d, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut choices = Vec::new();
    pivots(n, d, 0, &mut Vec::new(), &mut choices);
    let mut out = Vec::new();
    for piv in choices {
        // free slots: (row, col) with col > pivot of the row and col not a pivot column
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                ((piv[r] + 1)..n)
                    .filter(|c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = Matrix::filled(d, n, 0u32);
            for (r, &c) in piv.iter().enumerate() {
                m.set(r, c, 1);
            }
            for &(r, c) in &free {
                m.set(r, c, (code % p as u64) as u32);
                code /= p as u64;
            }
            out.push(m);
        }
    }
    out
}

/// All graded subspaces with the given dimension vector inside a space of dimension `dim`.
fn graded_subspaces(field: PrimeField, dim: &DimVector, sub: &DimVector) -> Vec<GradedSubspace> {
    let mut acc: Vec<Vec<Matrix<u32>>> = vec![Vec::new()];
    for v in 0..dim.len() {
        let options = subspaces(field.p(), dim.get(v), sub.get(v));
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |s| {
                    let mut next = prefix.clone();
                    next.push(s.transpose());
                    next
                })
            })
            .collect();
    }
    acc.into_iter()
        .map(|bases| GradedSubspace::new(field, bases))
        .collect()
}

/// Enumerates every chain of graded subspaces with the dimension steps of `word`,
/// tests stability of each member, and counts the chains. Independent of the
/// recursion in [`count_stable_flags`]; limited to total dimension `cap`.
pub fn naive_flag_count(z: &ModpModule, word: &Word, cap: usize) -> Result<u64> {
    if z.total_dim() > cap {
        return Err(Error::CapExceeded(format!(
            "naive flag count on total dimension {} (cap {cap})",
            z.total_dim()
        )));
    }
    let n = z.quiver().num_vertices();
    if &word.weight(n) != z.dim() {
        return Ok(0);
    }
    let field = z.field();
    let mut prefix = DimVector::zero(n);
    let mut level: Vec<(GradedSubspace, u64)> = vec![(GradedSubspace::zero(field, z.dim()), 1)];
    for &v in word.letters() {
        prefix.0[v] += 1;
        let next: Vec<(GradedSubspace, u64)> = graded_subspaces(field, z.dim(), &prefix)
            .into_iter()
            .filter(|u| z.is_stable(u))
            .map(|u| {
                let ways = level
                    .iter()
                    .filter(|(prev, _)| u.contains(prev))
                    .map(|(_, w)| w)
                    .sum();
                (u, ways)
            })
            .collect();
        level = next;
    }
    Ok(level.iter().map(|(_, w)| w).sum())
}

/// A polynomial in `t` with nonnegative integer coefficients matching point counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    coefficients: Vec<BigUint>,
    samples: Vec<(u64, u64)>,
    held_out: (u64, u64),
}

impl CountingPolynomial {
    /// Coefficients in ascending degree, without trailing zeros.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// `(prime, count)` pairs used for interpolation.
    pub fn samples(&self) -> &[(u64, u64)] {
        &self.samples
    }

    /// `(prime, count)` at the verification prime.
    pub fn held_out(&self) -> (u64, u64) {
        self.held_out
    }

    pub fn eval(&self, t: u64) -> BigUint {
        self.coefficients
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coefficients.iter().sum()
    }
}

impl fmt::Display for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match (k, c.is_one()) {
                (0, _) => c.to_string(),
                (1, true) => "t".into(),
                (1, false) => format!("{c}*t"),
                (_, true) => format!("t^{k}"),
                (_, false) => format!("{c}*t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Lagrange interpolation through `(x, y)` points; coefficients ascending.
pub fn interpolate(points: &[(u64, u64)]) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); points.len()];
    for (j, &(xj, yj)) in points.iter().enumerate() {
        // basis polynomial prod_{m != j} (t - x_m) / (x_j - x_m)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (m, &(xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            let xm = BigRational::from_integer(BigInt::from(xm));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xm;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xj)) - xm;
        }
        let scale = BigRational::from_integer(BigInt::from(yj)) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    coeffs
}

/// An integer polynomial fitted to point counts, verified at a held-out prime. Used
/// for incidence varieties, whose counts may have negative coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCountPolynomial {
    coefficients: Vec<BigInt>,
    samples: Vec<(u64, u64)>,
    held_out: (u64, u64),
}

impl PointCountPolynomial {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn samples(&self) -> &[(u64, u64)] {
        &self.samples
    }

    pub fn held_out(&self) -> (u64, u64) {
        self.held_out
    }

    pub fn eval(&self, t: i64) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for PointCountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "t".into(),
                (1, false) => format!("{mag}*t"),
                (_, true) => format!("t^{k}"),
                (_, false) => format!("{mag}*t^{k}"),
            };
            match (out.is_empty(), c.is_negative()) {
                (true, false) => out += &body,
                (true, true) => out += &format!("-{body}"),
                (false, false) => out += &format!(" + {body}"),
                (false, true) => out += &format!(" - {body}"),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Interpolates the first `samples.len() - 1` points, requires integer coefficients,
/// and checks the last point.
fn fit_integral(samples: Vec<(u64, u64)>) -> Result<PointCountPolynomial> {
    let (&held_out, fitted) = samples.split_last().expect("at least two samples");
    let rational = interpolate(fitted);
    let mut coefficients = Vec::with_capacity(rational.len());
    for (k, c) in rational.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::Interpolation(format!(
                "coefficient of t^{k} is {c} from samples {fitted:?}"
            )));
        }
        coefficients.push(c.to_integer());
    }
    while coefficients.last().is_some_and(Zero::is_zero) {
        coefficients.pop();
    }
    let poly = PointCountPolynomial {
        coefficients,
        samples: fitted.to_vec(),
        held_out,
    };
    let predicted = poly.eval(held_out.0 as i64);
    if predicted != BigInt::from(held_out.1) {
        return Err(Error::Interpolation(format!(
            "held-out prime {} predicts {predicted} but the count is {}",
            held_out.0, held_out.1
        )));
    }
    Ok(poly)
}

/// As [`fit_integral`], additionally requiring nonnegative coefficients.
fn fit(samples: Vec<(u64, u64)>) -> Result<CountingPolynomial> {
    let poly = fit_integral(samples)?;
    if let Some((k, c)) = poly
        .coefficients
        .iter()
        .enumerate()
        .find(|(_, c)| c.is_negative())
    {
        return Err(Error::Interpolation(format!(
            "coefficient of t^{k} is {c} from samples {:?}",
            poly.samples
        )));
    }
    Ok(CountingPolynomial {
        coefficients: poly
            .coefficients
            .iter()
            .map(|c| c.to_biguint().expect("nonnegative"))
            .collect(),
        samples: poly.samples,
        held_out: poly.held_out,
    })
}

/// Counts flags of type `word` on the reductions of `z` at the first `D + 1`
/// non-degenerate primes, interpolates, and verifies at one more prime.
/// `D` defaults to the flag-variety dimension of the weight.
pub fn counting_polynomial(
    z: &PPModule,
    word: &Word,
    opts: &CountOptions,
) -> Result<CountingPolynomial> {
    weight_check(z.quiver(), z.dim(), word)?;
    z.ensure_valid()?;
    let degree = opts
        .degree_bound
        .map_or(z.dim().flag_dimension(), |d| d as usize);
    let reductions: Vec<ModpModule> = primes_from(opts.primes_floor)
        .map(|p| z.reduce_mod_p(PrimeField::new(p).expect("prime")))
        .filter(|r| !r.is_degenerate())
        .map(|r| r.module)
        .take(degree + 2)
        .collect();
    let samples = reductions
        .par_iter()
        .map(|m| Ok((m.field().p() as u64, count_stable_flags(m, word)?)))
        .collect::<Result<Vec<_>>>()?;
    fit(samples)
}

/// `chi_q`: a counting polynomial with `t` replaced by `q^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerrePolynomial(LaurentPolynomial);

impl SerrePolynomial {
    pub fn as_laurent(&self) -> &LaurentPolynomial {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentPolynomial {
        self.0
    }
}

impl fmt::Display for SerrePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn serre_polynomial(c: &CountingPolynomial) -> SerrePolynomial {
    SerrePolynomial(LaurentPolynomial::from_terms(
        c.coefficients
            .iter()
            .enumerate()
            .map(|(k, a)| (2 * k as i64, BigInt::from(a.clone()))),
    ))
}

/// Point count of the incidence variety of (module, stable flag of type `word`) over
/// `F_p`: every tuple of double-quiver matrices is enumerated, and the nilpotent
/// ones satisfying the relation contribute their flag counts.
pub fn lambda_point_count(
    quiver: &Quiver,
    word: &Word,
    field: PrimeField,
    max_enum: u64,
) -> Result<u64> {
    let dim = word.weight(quiver.num_vertices());
    let das = quiver.double_arrows();
    let shapes: Vec<(usize, usize)> = das
        .iter()
        .map(|a| (dim.get(a.target), dim.get(a.source)))
        .collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let p = field.p() as u64;
    let workload = u32::try_from(entries).ok().and_then(|e| p.checked_pow(e));
    if workload.is_none_or(|w| w > max_enum) {
        return Err(Error::CapExceeded(format!(
            "{p}^{entries} matrix tuples over F_{p} (cap {max_enum})"
        )));
    }
    let quiver = std::sync::Arc::new(quiver.clone());
    let build = |code: u64| {
        let mut code = code;
        let maps: Vec<Matrix<u32>> = shapes
            .iter()
            .map(|&(r, c)| {
                Matrix::from_fn(r, c, |_, _| {
                    let x = (code % p) as u32;
                    code /= p;
                    x
                })
            })
            .collect();
        ModpModule::new(field, quiver.clone(), dim.clone(), maps).expect("shapes match")
    };
    if entries == 0 {
        return count_stable_flags(&build(0), word);
    }
    // split on the first entry so the enumeration runs in parallel
    let rest = p.pow(entries as u32 - 1);
    let partial = (0..p)
        .into_par_iter()
        .map(|first| {
            let mut total = 0u64;
            for tail in 0..rest {
                let z = build(first + p * tail);
                if !z.satisfies_relation() || !z.is_nilpotent() {
                    continue;
                }
                let c = count_stable_flags(&z, word)?;
                total = total
                    .checked_add(c)
                    .ok_or(Error::Overflow("incidence count"))?;
            }
            Ok(total)
        })
        .collect::<Result<Vec<u64>>>()?;
    partial
        .into_iter()
        .try_fold(0u64, |acc, x| acc.checked_add(x))
        .ok_or(Error::Overflow("incidence count"))
}

/// Counting polynomial of the incidence variety for `word`. The default degree
/// bound is the dimension of the double-quiver representation space plus the
/// flag-variety dimension.
pub fn lambda_counting_polynomial(
    quiver: &Quiver,
    word: &Word,
    opts: &CountOptions,
) -> Result<PointCountPolynomial> {
    let dim = word.weight(quiver.num_vertices());
    let ambient: usize = quiver
        .double_arrows()
        .iter()
        .map(|a| dim.get(a.target) * dim.get(a.source))
        .sum();
    let degree = opts
        .degree_bound
        .map_or(ambient + dim.flag_dimension(), |d| d as usize);
    let primes: Vec<u64> = primes_from(opts.primes_floor).take(degree + 2).collect();
    let samples = primes
        .iter()
        .map(|&p| {
            Ok((
                p,
                lambda_point_count(quiver, word, PrimeField::new(p)?, opts.max_enum)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    fit_integral(samples)
}

/// `d_i`: the degree of the incidence variety's counting polynomial.
pub fn dim_lambda_word(quiver: &Quiver, word: &Word, opts: &CountOptions) -> Result<u32> {
    let poly = lambda_counting_polynomial(quiver, word, opts)?;
    let degree = poly
        .degree()
        .ok_or_else(|| Error::Interpolation("incidence variety has no points".into()))?;
    Ok(degree as u32)
}
