//! Induction-product values on strata, dual semicanonical vectors, the pairing with
//! words, the quantum Serre relation checked pointwise, and the `q = 1` shadow.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffmod::{parse_module_lines, PPModule};
use crate::flagcount::{self, counting_polynomial, serre_polynomial, CountOptions};
use crate::linalg::{self, primes_from, Matrix, PrimeField, Rationals};
use crate::qlaurent::LaurentPolynomial;
use crate::quiver::{strip_comment, DimVector, Quiver, Word};
use crate::shuffle::ShuffleElement;

/// A named irreducible component, represented by a point the author asserts is generic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpec {
    pub name: String,
    pub description: Option<String>,
    point: PPModule,
    dims: BTreeMap<Word, u32>,
}

impl ComponentSpec {
    pub fn new(name: impl Into<String>, point: PPModule) -> Result<Self> {
        point.ensure_valid()?;
        Ok(Self {
            name: name.into(),
            description: None,
            point,
            dims: BTreeMap::new(),
        })
    }

    pub fn with_description(mut self, text: impl Into<String>) -> Self {
        self.description = Some(text.into());
        self
    }

    /// Records `d_i` for a word so it is not recomputed.
    pub fn with_dimension(mut self, word: Word, d: u32) -> Result<Self> {
        let q = self.point.quiver();
        if &word.weight(q.num_vertices()) != self.point.dim() {
            return Err(Error::WeightMismatch {
                word: q.render_word(&word),
                weight: q.render_dim(&word.weight(q.num_vertices())),
                expected: q.render_dim(self.point.dim()),
            });
        }
        self.dims.insert(word, d);
        Ok(self)
    }

    pub fn point(&self) -> &PPModule {
        &self.point
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.point.quiver()
    }

    pub fn dim(&self) -> &DimVector {
        self.point.dim()
    }

    pub fn cached_dimension(&self, word: &Word) -> Option<u32> {
        self.dims.get(word).copied()
    }

    pub fn cached_dimensions(&self) -> &BTreeMap<Word, u32> {
        &self.dims
    }

    /// Parses a component file: a module file plus `component <name>`, an optional
    /// `description: ...` and optional `d[<word>] = <int>` lines.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut name = None;
        let mut description = None;
        let mut dims = Vec::new();
        let mut module_lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("component") {
                let rest = rest.trim();
                if rest.is_empty() {
                    return Err(Error::parse(lineno, "component needs a name"));
                }
                name = Some(rest.to_owned());
            } else if let Some(rest) = line.strip_prefix("description:") {
                description = Some(rest.trim().to_owned());
            } else if let Some(rest) = line.strip_prefix("d[") {
                let (word, value) = rest
                    .split_once(']')
                    .and_then(|(w, v)| Some((w, v.trim().strip_prefix('=')?.trim())))
                    .ok_or_else(|| Error::parse(lineno, "expected `d[<word>] = <int>`"))?;
                let value: u32 = value
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad dimension {value:?}")))?;
                dims.push((lineno, word.to_owned(), value));
            } else {
                module_lines.push((lineno, line));
            }
        }
        let name = name.ok_or_else(|| Error::parse(1, "missing `component <name>` line"))?;
        let point = parse_module_lines(&module_lines, base)?;
        let mut spec = ComponentSpec::new(name, point)?;
        spec.description = description;
        for (lineno, word, d) in dims {
            let w = spec
                .quiver()
                .parse_word(&word)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            spec = spec
                .with_dimension(w, d)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent())
    }
}

/// Outcome of the Serre-relation check on one stratum point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreCheck {
    pub label: String,
    pub iji: LaurentPolynomial,
    pub iij: LaurentPolynomial,
    pub jii: LaurentPolynomial,
    /// `(q^-1 + q) val[iji] - val[iij] - val[jii]`.
    pub defect: LaurentPolynomial,
    pub is_zero_point: bool,
}

impl SerreCheck {
    /// Nonzero strata must satisfy the relation exactly; at zero the defect is the
    /// correction term `g(q)`.
    pub fn passes(&self) -> bool {
        self.is_zero_point || self.defect.is_zero()
    }

    pub fn correction(&self) -> Option<&LaurentPolynomial> {
        self.is_zero_point.then_some(&self.defect)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub checks: Vec<SerreCheck>,
}

impl SerreReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(SerreCheck::passes)
    }

    pub fn correction(&self) -> Option<&LaurentPolynomial> {
        self.checks.iter().find_map(SerreCheck::correction)
    }
}

impl fmt::Display for SerreReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{}: [iji] = {}, [iij] = {}, [jii] = {}",
                c.label, c.iji, c.iij, c.jii
            )?;
            if c.is_zero_point {
                writeln!(f, "{}: correction g(q) = {}", c.label, c.defect)?;
            } else if c.defect.is_zero() {
                writeln!(f, "{}: relation holds", c.label)?;
            } else {
                writeln!(f, "{}: relation FAILS, defect {}", c.label, c.defect)?;
            }
        }
        Ok(())
    }
}

/// Holds counting options and a shared cache of `d_i` values.
#[derive(Debug, Default)]
pub struct Engine {
    opts: CountOptions,
    allow_multi_edge: bool,
    dims: Mutex<HashMap<(Quiver, Word), u32>>,
}

impl Engine {
    pub fn new(opts: CountOptions) -> Self {
        Self {
            opts,
            allow_multi_edge: false,
            dims: Mutex::new(HashMap::new()),
        }
    }

    pub fn allow_multi_edge(mut self, allow: bool) -> Self {
        self.allow_multi_edge = allow;
        self
    }

    pub fn options(&self) -> &CountOptions {
        &self.opts
    }

    /// Seeds the `d_i` cache with a known value.
    pub fn seed_dimension(&self, quiver: &Quiver, word: &Word, d: u32) {
        self.dims
            .lock()
            .unwrap()
            .insert((quiver.clone(), word.clone()), d);
    }

    /// `d_i`, from the cache or by exhaustive point counting.
    pub fn dimension(&self, quiver: &Quiver, word: &Word) -> Result<u32> {
        let key = (quiver.clone(), word.clone());
        if let Some(&d) = self.dims.lock().unwrap().get(&key) {
            return Ok(d);
        }
        let d = flagcount::dim_lambda_word(quiver, word, &self.opts)?;
        self.dims.lock().unwrap().insert(key, d);
        Ok(d)
    }

    /// `q^{-d_i} chi_q(Gr_i(z))`. `d_i` is only needed when the Serre polynomial is nonzero.
    pub fn induction_value(
        &self,
        word: &Word,
        z: &PPModule,
        d: Option<u32>,
    ) -> Result<LaurentPolynomial> {
        let chi = serre_polynomial(&counting_polynomial(z, word, &self.opts)?).into_laurent();
        if chi.is_zero() {
            return Ok(chi);
        }
        let d = match d {
            Some(d) => d,
            None => self.dimension(z.quiver(), word)?,
        };
        Ok(chi.shift(-(d as i64)))
    }

    /// The sum over words of weight `alpha` of `pairing(i, Z) * i`.
    pub fn delta_vector(&self, comp: &ComponentSpec) -> Result<ShuffleElement> {
        comp.quiver().ensure_simply_laced(self.allow_multi_edge)?;
        let words = comp.quiver().words_of_weight(comp.dim());
        let values = words
            .par_iter()
            .map(|w| self.induction_value(w, comp.point(), comp.cached_dimension(w)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = ShuffleElement::zero(comp.quiver().clone());
        for (w, v) in words.into_iter().zip(values) {
            out.add_term(w, v);
        }
        Ok(out)
    }

    pub fn pairing(&self, word: &Word, comp: &ComponentSpec) -> Result<LaurentPolynomial> {
        self.induction_value(word, comp.point(), comp.cached_dimension(word))
    }

    /// Recomputes every cached `d_i` of a component; returns `(word, cached, computed)`
    /// for the ones that disagree.
    pub fn check_cached_dimensions(&self, comp: &ComponentSpec) -> Result<Vec<(Word, u32, u32)>> {
        let mut bad = Vec::new();
        for (w, &d) in comp.cached_dimensions() {
            let fresh = flagcount::dim_lambda_word(comp.quiver(), w, &self.opts)?;
            if fresh != d {
                bad.push((w.clone(), d, fresh));
            }
        }
        Ok(bad)
    }

    /// Checks `(q^-1 + q) val[iji] = val[iij] + val[jii]` at each labelled point of
    /// weight `2 alpha_i + alpha_j`; at the zero point the difference is reported as `g(q)`.
    pub fn verify_serre(
        &self,
        quiver: &Quiver,
        i: usize,
        j: usize,
        strata: &[(PPModule, String)],
    ) -> Result<SerreReport> {
        let n = quiver.num_vertices();
        if i >= n || j >= n || i == j {
            return Err(Error::Hypothesis("need two distinct vertices".into()));
        }
        match quiver.edges_between(i, j) {
            0 => {
                return Err(Error::Hypothesis(format!(
                    "vertices {} and {} are not joined by an edge",
                    quiver.vertex_name(i),
                    quiver.vertex_name(j)
                )))
            }
            1 => {}
            _ if self.allow_multi_edge => {}
            _ => {
                return Err(Error::MultiEdge(
                    quiver.vertex_name(i).to_owned(),
                    quiver.vertex_name(j).to_owned(),
                ))
            }
        }
        let alpha = DimVector::simple(n, i, 2).add(&DimVector::simple(n, j, 1));
        let iji = Word::new(vec![i, j, i]);
        let iij = Word::new(vec![i, i, j]);
        let jii = Word::new(vec![j, i, i]);
        let bracket = LaurentPolynomial::q_pow(-1) + LaurentPolynomial::q();
        let mut checks = Vec::new();
        for (z, label) in strata {
            if z.quiver().as_ref() != quiver || z.dim() != &alpha {
                return Err(Error::Hypothesis(format!(
                    "stratum {label} has dimension {} on a different quiver or weight, expected {}",
                    z.quiver().render_dim(z.dim()),
                    quiver.render_dim(&alpha)
                )));
            }
            let v_iji = self.induction_value(&iji, z, None)?;
            let v_iij = self.induction_value(&iij, z, None)?;
            let v_jii = self.induction_value(&jii, z, None)?;
            let defect = &(&bracket * &v_iji) - &(&v_iij + &v_jii);
            checks.push(SerreCheck {
                label: label.clone(),
                iji: v_iji,
                iij: v_iij,
                jii: v_jii,
                defect,
                is_zero_point: z.is_zero_action(),
            });
        }
        Ok(SerreReport { checks })
    }

    /// Euler characteristic of `Gr_i(z)`; zero for a word of the wrong weight.
    pub fn euler_value(&self, word: &Word, z: &PPModule) -> Result<BigInt> {
        if &word.weight(z.quiver().num_vertices()) != z.dim() {
            return Ok(BigInt::zero());
        }
        Ok(serre_polynomial(&counting_polynomial(z, word, &self.opts)?)
            .as_laurent()
            .eval_at_one())
    }
}

type ConvolutionKey = (Vec<u32>, Vec<Matrix<i64>>, Vec<usize>);

/// Euler characteristic of `Gr_i(z)` computed line by line over the rationals: the
/// value is the Euler-characteristic integral, over the projective space of stable
/// lines `L` at `i_1`, of the value of the remaining word on `z / L`. The integral is
/// obtained by summing over `F_p`-points of that projective space for several primes
/// and evaluating the interpolated polynomial at 1.
pub fn euler_convolution(word: &Word, z: &PPModule) -> Result<BigInt> {
    if &word.weight(z.quiver().num_vertices()) != z.dim() {
        return Ok(BigInt::zero());
    }
    z.ensure_valid()?;
    let mut memo = HashMap::new();
    convolve(
        z.quiver(),
        z.dim().0.clone(),
        z.maps().to_vec(),
        word.letters(),
        &mut memo,
    )
}

fn convolve(
    quiver: &Quiver,
    dim: Vec<u32>,
    maps: Vec<Matrix<i64>>,
    letters: &[usize],
    memo: &mut HashMap<ConvolutionKey, BigInt>,
) -> Result<BigInt> {
    let Some((&v, rest)) = letters.split_first() else {
        return Ok(BigInt::one());
    };
    let key = (dim, maps, letters.to_vec());
    if let Some(x) = memo.get(&key) {
        return Ok(x.clone());
    }
    let (dim, maps, _) = &key;

    // stable lines at v: the kernel of every arrow leaving v, over Q
    let das = quiver.double_arrows();
    let mut stacked = Matrix::filled(0, dim[v] as usize, BigRational::zero());
    for a in das.iter().filter(|a| a.source == v) {
        stacked = stacked.vstack(&maps[a.index()].to_rational());
    }
    let kernel = linalg::kernel(&Rationals, &stacked);
    let k = kernel.cols();

    let value = match k {
        0 => BigInt::zero(),
        1 => {
            let line = primitive(&kernel, &[BigInt::one()])?;
            let (d, m) = quotient_by_integer_line(quiver, dim, maps, v, &line)?;
            convolve(quiver, d, m, rest, memo)?
        }
        _ => {
            let denominators = kernel
                .entries()
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let primes: Vec<u64> = primes_from(5)
                .filter(|&p| !(&denominators % BigInt::from(p)).is_zero())
                .take(k + 1)
                .collect();
            let mut samples = Vec::with_capacity(primes.len());
            for &p in &primes {
                let field = PrimeField::new(p)?;
                let mut total = BigInt::zero();
                for c in projective_points(p, k) {
                    let lift: Vec<BigInt> = c
                        .iter()
                        .map(|&x| BigInt::from(field.lift_symmetric(x)))
                        .collect();
                    let line = primitive(&kernel, &lift)?;
                    let (d, m) = quotient_by_integer_line(quiver, dim, maps, v, &line)?;
                    total += convolve(quiver, d, m, rest, memo)?;
                }
                samples.push((p, total));
            }
            euler_at_one(&samples)?
        }
    };
    memo.insert(key, value.clone());
    Ok(value)
}

fn projective_points(p: u64, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..k {
        let free = (k - lead - 1) as u32;
        for mut code in 0..p.pow(free) {
            let mut v = vec![0u32; k];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (code % p) as u32;
                code /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Interpolates `(p, W(p))` through all but the last sample, checks the last one, and
/// returns the value at 1.
fn euler_at_one(samples: &[(u64, BigInt)]) -> Result<BigInt> {
    let (last, fitted) = samples.split_last().expect("samples");
    let eval = |t: i64| -> BigRational {
        let mut total = BigRational::zero();
        for (j, (xj, yj)) in fitted.iter().enumerate() {
            let mut term = BigRational::from_integer(yj.clone());
            for (m, (xm, _)) in fitted.iter().enumerate() {
                if m != j {
                    term *= BigRational::new(
                        BigInt::from(t) - BigInt::from(*xm),
                        BigInt::from(*xj) - BigInt::from(*xm),
                    );
                }
            }
            total += term;
        }
        total
    };
    let predicted = eval(last.0 as i64);
    if predicted != BigRational::from_integer(last.1.clone()) {
        return Err(Error::Interpolation(format!(
            "line sum at held-out prime {} predicted {predicted}, found {}",
            last.0, last.1
        )));
    }
    let at_one = eval(1);
    if !at_one.is_integer() {
        return Err(Error::Interpolation(format!(
            "Euler integral {at_one} is not an integer"
        )));
    }
    Ok(at_one.to_integer())
}

/// `kernel * coeffs`, scaled to a primitive integer vector.
fn primitive(kernel: &Matrix<BigRational>, coeffs: &[BigInt]) -> Result<Vec<i64>> {
    let v: Vec<BigRational> = (0..kernel.rows())
        .map(|r| {
            coeffs
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (c, x)| {
                    acc + kernel.get(r, c) * BigRational::from_integer(x.clone())
                })
        })
        .collect();
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_i64().ok_or(Error::Overflow("line vector")))
        .collect()
}

/// Quotient of an integer module by the line spanned by the primitive vector `line`
/// at vertex `v`, computed in a basis where `line` is the first basis vector.
fn quotient_by_integer_line(
    quiver: &Quiver,
    dim: &[u32],
    maps: &[Matrix<i64>],
    v: usize,
    line: &[i64],
) -> Result<(Vec<u32>, Vec<Matrix<i64>>)> {
    let (u, u_inv) = unimodular_to_e1(line)?;
    let n = line.len();
    let keep: Vec<usize> = (1..n).collect();
    let mut out = Vec::with_capacity(maps.len());
    for a in quiver.double_arrows() {
        let mut m = maps[a.index()].clone();
        if a.target == v {
            m = u.checked_mul(&m)?.select_rows(&keep);
        }
        if a.source == v {
            m = m.checked_mul(&u_inv)?.select_columns(&keep);
        }
        out.push(m);
    }
    let mut dim = dim.to_vec();
    dim[v] -= 1;
    Ok((dim, out))
}

/// A unimodular `U` with `U * line = e_1`, and its inverse.
fn unimodular_to_e1(line: &[i64]) -> Result<(Matrix<i64>, Matrix<i64>)> {
    let n = line.len();
    let mut v = line.to_vec();
    let mut u = Matrix::identity(n);
    let mut u_inv = Matrix::identity(n);
    let overflow = || Error::Overflow("unimodular reduction");
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        let m = *nonzero
            .iter()
            .min_by_key(|&&i| v[i].unsigned_abs())
            .expect("nonzero line");
        if nonzero.len() == 1 {
            // move to the front and make it +1
            if m != 0 {
                for c in 0..n {
                    let (a, b) = (*u.get(0, c), *u.get(m, c));
                    u.set(0, c, b);
                    u.set(m, c, a);
                }
                for r in 0..n {
                    let (a, b) = (*u_inv.get(r, 0), *u_inv.get(r, m));
                    u_inv.set(r, 0, b);
                    u_inv.set(r, m, a);
                }
                v.swap(0, m);
            }
            if v[0] < 0 {
                for c in 0..n {
                    u.set(0, c, -*u.get(0, c));
                }
                for r in 0..n {
                    u_inv.set(r, 0, -*u_inv.get(r, 0));
                }
                v[0] = -v[0];
            }
            debug_assert_eq!(v[0], 1, "line must be primitive");
            return Ok((u, u_inv));
        }
        for &i in &nonzero {
            if i == m {
                continue;
            }
            let k = v[i].div_euclid(v[m]);
            // row_i -= k row_m on U, column_m += k column_i on U^{-1}
            v[i] -= k * v[m];
            for c in 0..n {
                let x = u
                    .get(i, c)
                    .checked_sub(k.checked_mul(*u.get(m, c)).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
                u.set(i, c, x);
            }
            for r in 0..n {
                let x = u_inv
                    .get(r, m)
                    .checked_add(k.checked_mul(*u_inv.get(r, i)).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
                u_inv.set(r, m, x);
            }
        }
    }
}
