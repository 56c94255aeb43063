//! Points of the nilpotent variety: representations of the double quiver satisfying
//! the preprojective relation, over the integers and over prime fields.
//!
//! Matrix convention: the matrix of an arrow `a: s -> t` has shape `dim(t) x dim(s)`,
//! columns indexing the source space. `z_a z_b` means "apply `b`, then `a`".

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Field, Matrix, PrimeField, Rationals};
use crate::quiver::{strip_comment, DimVector, Quiver};

/// A point of the nilpotent variety over the integers. Maps are indexed like
/// [`Quiver::double_arrows`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PPModule {
    quiver: Arc<Quiver>,
    dim: DimVector,
    maps: Vec<Matrix<i64>>,
}

/// A representation of the double quiver over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModpModule {
    field: PrimeField,
    quiver: Arc<Quiver>,
    dim: DimVector,
    maps: Vec<Matrix<u32>>,
}

/// Outcome of checking the preprojective relation and nilpotency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Vertices at which the preprojective relation fails.
    pub relation_failures: Vec<usize>,
    /// Number of radical-filtration steps needed to reach zero; `None` if it stalls.
    pub loewy_length: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.relation_failures.is_empty() && self.loewy_length.is_some()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.loewy_length.is_some()
    }

    pub fn render(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for v in 0..quiver.num_vertices() {
            let status = if self.relation_failures.contains(&v) {
                "relation fails"
            } else {
                "relation holds"
            };
            out += &format!("{status} at vertex {}\n", quiver.vertex_name(v));
        }
        match self.loewy_length {
            Some(n) => out += &format!("nilpotent: radical filtration reaches 0 in {n} steps\n"),
            None => out += "not nilpotent: radical filtration stalls\n",
        }
        out
    }
}

fn check_shapes<T: Clone>(quiver: &Quiver, dim: &DimVector, maps: &[Matrix<T>]) -> Result<()> {
    if dim.len() != quiver.num_vertices() {
        return Err(Error::ShapeMismatch(format!(
            "dimension vector has {} entries for {} vertices",
            dim.len(),
            quiver.num_vertices()
        )));
    }
    let das = quiver.double_arrows();
    if maps.len() != das.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} matrices for {} double-quiver arrows",
            maps.len(),
            das.len()
        )));
    }
    for (a, m) in das.iter().zip(maps) {
        let want = (dim.get(a.target), dim.get(a.source));
        if m.shape() != want {
            return Err(Error::ShapeMismatch(format!(
                "matrix {} is {}x{}, expected {}x{}",
                a.name(quiver),
                m.rows(),
                m.cols(),
                want.0,
                want.1
            )));
        }
    }
    Ok(())
}

/// Vertices where `sum over a with t(a)=v of sign(a) z_a z_abar` is nonzero.
fn relation_failures<F: Field>(
    f: &F,
    quiver: &Quiver,
    dim: &DimVector,
    maps: &[Matrix<F::Elem>],
) -> Vec<usize> {
    let das = quiver.double_arrows();
    (0..quiver.num_vertices())
        .filter(|&v| {
            let mut acc = linalg::zeros(f, dim.get(v), dim.get(v));
            for a in das.iter().filter(|a| a.target == v) {
                let prod = linalg::mul(f, &maps[a.index()], &maps[a.partner_index()]);
                for r in 0..acc.rows() {
                    for c in 0..acc.cols() {
                        let x = if a.sign() > 0 {
                            f.add(acc.get(r, c), prod.get(r, c))
                        } else {
                            f.sub(acc.get(r, c), prod.get(r, c))
                        };
                        acc.set(r, c, x);
                    }
                }
            }
            !linalg::is_zero_matrix(f, &acc)
        })
        .collect()
}

/// Radical filtration `R_0 = V`, `R_{k+1} = sum_a z_a(R_k)`. Returns the first `k`
/// with `R_k = 0`, or `None` once the filtration stops decreasing above zero.
fn loewy_length<F: Field>(
    f: &F,
    quiver: &Quiver,
    dim: &DimVector,
    maps: &[Matrix<F::Elem>],
) -> Option<usize> {
    let das = quiver.double_arrows();
    let n = quiver.num_vertices();
    let mut layer: Vec<Matrix<F::Elem>> = (0..n).map(|v| linalg::identity(f, dim.get(v))).collect();
    let mut steps = 0;
    loop {
        let size: usize = layer.iter().map(Matrix::cols).sum();
        if size == 0 {
            return Some(steps);
        }
        let next: Vec<Matrix<F::Elem>> = (0..n)
            .map(|v| {
                let mut gens = linalg::zeros(f, dim.get(v), 0);
                for a in das.iter().filter(|a| a.target == v) {
                    gens = gens.hstack(&linalg::mul(f, &maps[a.index()], &layer[a.source]));
                }
                linalg::column_space(f, &gens)
            })
            .collect();
        if next.iter().map(Matrix::cols).sum::<usize>() == size {
            return None;
        }
        layer = next;
        steps += 1;
    }
}

impl PPModule {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector, maps: Vec<Matrix<i64>>) -> Result<Self> {
        check_shapes(&quiver, &dim, &maps)?;
        Ok(Self { quiver, dim, maps })
    }

    /// The module with every arrow acting by zero.
    pub fn zero(quiver: Arc<Quiver>, dim: DimVector) -> Self {
        let maps = quiver
            .double_arrows()
            .iter()
            .map(|a| Matrix::zeros(dim.get(a.target), dim.get(a.source)))
            .collect();
        Self { quiver, dim, maps }
    }

    /// Replaces the matrix of the named double arrow (`a` or `a~`).
    pub fn with_map(mut self, name: &str, rows: Vec<Vec<i64>>) -> Result<Self> {
        let a = self
            .quiver
            .double_arrow_by_name(name)
            .ok_or_else(|| Error::ShapeMismatch(format!("no arrow named {name}")))?;
        let (r, c) = (self.dim.get(a.target), self.dim.get(a.source));
        let m = if rows.is_empty() && (r == 0 || c == 0) {
            Matrix::zeros(r, c)
        } else {
            Matrix::from_rows(rows, c)?
        };
        if m.shape() != (r, c) {
            return Err(Error::ShapeMismatch(format!(
                "matrix {name} is {}x{}, expected {r}x{c}",
                m.rows(),
                m.cols()
            )));
        }
        self.maps[a.index()] = m;
        Ok(self)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[Matrix<i64>] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dim.total()
    }

    pub fn is_zero_action(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    fn rational_maps(&self) -> Vec<Matrix<num_rational::BigRational>> {
        self.maps.iter().map(Matrix::to_rational).collect()
    }

    /// Checks the preprojective relation at every vertex and nilpotency.
    pub fn validate(&self) -> ValidationReport {
        let maps = self.rational_maps();
        ValidationReport {
            relation_failures: relation_failures(&Rationals, &self.quiver, &self.dim, &maps),
            loewy_length: loewy_length(&Rationals, &self.quiver, &self.dim, &maps),
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            return Ok(());
        }
        Err(Error::InvalidModule(
            report.render(&self.quiver).trim_end().replace('\n', "; "),
        ))
    }

    /// Entrywise reduction, flagged degenerate when some arrow loses rank mod `p`.
    pub fn reduce_mod_p(&self, field: PrimeField) -> Reduction {
        let maps: Vec<Matrix<u32>> = self.maps.iter().map(|m| m.reduce_mod(field)).collect();
        let rank_drops = self
            .maps
            .iter()
            .zip(&maps)
            .enumerate()
            .filter_map(|(k, (mz, mp))| {
                let (rq, rp) = (
                    linalg::rank(&Rationals, &mz.to_rational()),
                    linalg::rank(&field, mp),
                );
                (rq != rp).then_some((k, rq, rp))
            })
            .collect();
        Reduction {
            module: ModpModule {
                field,
                quiver: self.quiver.clone(),
                dim: self.dim.clone(),
                maps,
            },
            rank_drops,
        }
    }

    /// Parses the module file format:
    ///
    /// ```text
    /// quiver: A2
    /// dim: 1=1 2=1
    /// matrix a: [[1]]
    /// matrix a~: [[0]]
    /// ```
    ///
    /// The quiver is a builtin name or a path relative to `base`. Missing matrices are zero.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, strip_comment(l)))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        parse_module_lines(&lines, base)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent())
    }

    /// Module file text, naming the quiver by `quiver_ref`.
    pub fn to_text(&self, quiver_ref: &str) -> String {
        let mut out = format!(
            "quiver: {quiver_ref}\ndim: {}\n",
            self.quiver.render_dim(&self.dim)
        );
        for (a, m) in self.quiver.double_arrows().iter().zip(&self.maps) {
            if !m.is_zero() {
                out += &format!("matrix {}: {}\n", a.name(&self.quiver), render_matrix(m));
            }
        }
        out
    }
}

fn render_matrix(m: &Matrix<i64>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub(crate) fn parse_module_lines(lines: &[(usize, &str)], base: Option<&Path>) -> Result<PPModule> {
    let mut quiver: Option<Arc<Quiver>> = None;
    let mut dim: Option<DimVector> = None;
    let mut matrices: Vec<(usize, String, Vec<Vec<i64>>)> = Vec::new();
    for &(lineno, line) in lines {
        let at = |e: Error| match e {
            Error::Parse { message, .. } => Error::parse(lineno, message),
            other => Error::parse(lineno, other.to_string()),
        };
        if let Some(rest) = line.strip_prefix("quiver:") {
            quiver = Some(Arc::new(Quiver::resolve(rest.trim(), base).map_err(at)?));
        } else if let Some(rest) = line.strip_prefix("dim:") {
            let q = quiver
                .as_ref()
                .ok_or_else(|| Error::parse(lineno, "`dim:` before `quiver:`"))?;
            dim = Some(q.parse_dim(rest).map_err(at)?);
        } else if let Some(rest) = line.strip_prefix("matrix") {
            let (name, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno, "expected `matrix <arrow>: [[...]]`"))?;
            let rows: Vec<Vec<i64>> = serde_json::from_str(body.trim())
                .map_err(|e| Error::parse(lineno, format!("bad matrix literal: {e}")))?;
            matrices.push((lineno, name.trim().to_owned(), rows));
        } else {
            return Err(Error::parse(lineno, format!("unrecognised line {line:?}")));
        }
    }
    let first = lines.first().map_or(1, |l| l.0);
    let quiver = quiver.ok_or_else(|| Error::parse(first, "missing `quiver:` line"))?;
    let dim = dim.ok_or_else(|| Error::parse(first, "missing `dim:` line"))?;
    let mut module = PPModule::zero(quiver, dim);
    for (lineno, name, rows) in matrices {
        module = module
            .with_map(&name, rows)
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
    }
    Ok(module)
}

/// Result of [`PPModule::reduce_mod_p`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub module: ModpModule,
    /// `(double-arrow index, rank over Q, rank over F_p)` for every arrow losing rank.
    pub rank_drops: Vec<(usize, usize, usize)>,
}

impl Reduction {
    pub fn is_degenerate(&self) -> bool {
        !self.rank_drops.is_empty()
    }
}

/// A subspace of each vertex space, given by column bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    field: PrimeField,
    bases: Vec<Matrix<u32>>,
}

impl GradedSubspace {
    /// Builds from column bases, reducing each to independent columns.
    pub fn new(field: PrimeField, bases: Vec<Matrix<u32>>) -> Self {
        let bases = bases
            .iter()
            .map(|b| linalg::column_space(&field, b))
            .collect();
        Self { field, bases }
    }

    pub fn zero(field: PrimeField, dim: &DimVector) -> Self {
        Self {
            field,
            bases: dim
                .0
                .iter()
                .map(|&d| Matrix::filled(d as usize, 0, 0))
                .collect(),
        }
    }

    pub fn full(field: PrimeField, dim: &DimVector) -> Self {
        Self {
            field,
            bases: dim
                .0
                .iter()
                .map(|&d| linalg::identity(&field, d as usize))
                .collect(),
        }
    }

    pub fn basis(&self, v: usize) -> &Matrix<u32> {
        &self.bases[v]
    }

    pub fn dimension_vector(&self) -> DimVector {
        DimVector(self.bases.iter().map(|b| b.cols() as u32).collect())
    }

    pub fn contains(&self, other: &GradedSubspace) -> bool {
        self.bases
            .iter()
            .zip(&other.bases)
            .all(|(b, o)| linalg::span_contains(&self.field, b, o))
    }
}

impl ModpModule {
    pub fn new(
        field: PrimeField,
        quiver: Arc<Quiver>,
        dim: DimVector,
        maps: Vec<Matrix<u32>>,
    ) -> Result<Self> {
        check_shapes(&quiver, &dim, &maps)?;
        let maps = maps
            .into_iter()
            .map(|m| m.map(|&x| x % field.p()))
            .collect();
        Ok(Self {
            field,
            quiver,
            dim,
            maps,
        })
    }

    pub fn zero(field: PrimeField, quiver: Arc<Quiver>, dim: DimVector) -> Self {
        let maps = quiver
            .double_arrows()
            .iter()
            .map(|a| Matrix::filled(dim.get(a.target), dim.get(a.source), 0))
            .collect();
        Self {
            field,
            quiver,
            dim,
            maps,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[Matrix<u32>] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dim.total()
    }

    pub fn is_zero_action(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.entries().iter().all(|&x| x == 0))
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            relation_failures: relation_failures(&self.field, &self.quiver, &self.dim, &self.maps),
            loewy_length: loewy_length(&self.field, &self.quiver, &self.dim, &self.maps),
        }
    }

    pub(crate) fn satisfies_relation(&self) -> bool {
        relation_failures(&self.field, &self.quiver, &self.dim, &self.maps).is_empty()
    }

    pub(crate) fn is_nilpotent(&self) -> bool {
        loewy_length(&self.field, &self.quiver, &self.dim, &self.maps).is_some()
    }

    /// Kernel of all outgoing arrows at `v`, i.e. the space of vectors at `v` whose
    /// lines are submodules. Returned as a graded subspace concentrated at `v`.
    pub fn stable_line_space(&self, v: usize) -> GradedSubspace {
        let mut bases: Vec<Matrix<u32>> = self
            .dim
            .0
            .iter()
            .map(|&d| Matrix::filled(d as usize, 0, 0))
            .collect();
        bases[v] = self.outgoing_kernel(v);
        GradedSubspace {
            field: self.field,
            bases,
        }
    }

    pub(crate) fn outgoing_kernel(&self, v: usize) -> Matrix<u32> {
        let f = &self.field;
        let mut stacked = Matrix::filled(0, self.dim.get(v), 0u32);
        for a in self.quiver.double_arrows().iter().filter(|a| a.source == v) {
            stacked = stacked.vstack(&self.maps[a.index()]);
        }
        linalg::kernel(f, &stacked)
    }

    pub fn is_stable(&self, u: &GradedSubspace) -> bool {
        let f = &self.field;
        self.quiver.double_arrows().iter().all(|a| {
            let image = linalg::mul(f, &self.maps[a.index()], u.basis(a.source));
            linalg::span_contains(f, u.basis(a.target), &image)
        })
    }

    /// The induced representation on `V / U`.
    pub fn quotient(&self, u: &GradedSubspace) -> Result<ModpModule> {
        if u.bases.len() != self.quiver.num_vertices()
            || u.bases
                .iter()
                .zip(&self.dim.0)
                .any(|(b, &d)| b.rows() != d as usize)
        {
            return Err(Error::ShapeMismatch(
                "subspace does not match the module".into(),
            ));
        }
        if !self.is_stable(u) {
            return Err(Error::NotStable);
        }
        let f = &self.field;
        // For each vertex: the reduced basis rows, their pivots, and the complementary coordinates.
        let reduced: Vec<(Matrix<u32>, Vec<usize>, Vec<usize>)> = u
            .bases
            .iter()
            .map(|b| {
                let (rows, pivots) = linalg::rref(f, &b.transpose());
                let comp = (0..b.rows()).filter(|c| !pivots.contains(c)).collect();
                (rows, pivots, comp)
            })
            .collect();
        let project = |v: usize, x: &mut [u32]| -> Vec<u32> {
            let (rows, pivots, comp) = &reduced[v];
            for (r, &pc) in pivots.iter().enumerate() {
                let coef = x[pc];
                if coef != 0 {
                    for (k, xk) in x.iter_mut().enumerate() {
                        *xk = f.sub(xk, &f.mul(&coef, rows.get(r, k)));
                    }
                }
            }
            comp.iter().map(|&k| x[k]).collect()
        };
        let maps = self
            .quiver
            .double_arrows()
            .iter()
            .map(|a| {
                let m = &self.maps[a.index()];
                let src_comp = &reduced[a.source].2;
                let cols: Vec<Vec<u32>> = src_comp
                    .iter()
                    .map(|&c| project(a.target, &mut m.column(c)))
                    .collect();
                let rows = reduced[a.target].2.len();
                Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
            })
            .collect();
        let dim = DimVector(reduced.iter().map(|r| r.2.len() as u32).collect());
        Ok(ModpModule {
            field: self.field,
            quiver: self.quiver.clone(),
            dim,
            maps,
        })
    }

    /// Quotient by the line spanned by `vector` at vertex `v`. The line must be stable.
    pub(crate) fn quotient_by_line(&self, v: usize, vector: &[u32]) -> ModpModule {
        let f = &self.field;
        let j = vector
            .iter()
            .position(|&x| x != 0)
            .expect("nonzero line vector");
        let inv = f.inv(&vector[j]);
        let line: Vec<u32> = vector.iter().map(|x| f.mul(x, &inv)).collect();
        let keep: Vec<usize> = (0..line.len()).filter(|&k| k != j).collect();
        let maps = self
            .quiver
            .double_arrows()
            .iter()
            .map(|a| {
                let m = &self.maps[a.index()];
                if a.source == v {
                    m.select_columns(&keep)
                } else if a.target == v {
                    Matrix::from_fn(keep.len(), m.cols(), |r, c| {
                        let k = keep[r];
                        f.sub(m.get(k, c), &f.mul(&line[k], m.get(j, c)))
                    })
                } else {
                    m.clone()
                }
            })
            .collect();
        let mut dim = self.dim.clone();
        dim.0[v] -= 1;
        ModpModule {
            field: self.field,
            quiver: self.quiver.clone(),
            dim,
            maps,
        }
    }
}

impl fmt::Display for ModpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{} module, dim {}",
            self.field.p(),
            self.quiver.render_dim(&self.dim)
        )?;
        for (a, m) in self.quiver.double_arrows().iter().zip(&self.maps) {
            write!(f, "; {} = {:?}", a.name(&self.quiver), m.to_rows())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear(2))
    }

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn a2_module(za: i64, zabar: i64) -> PPModule {
        PPModule::zero(a2(), DimVector(vec![1, 1]))
            .with_map("a", vec![vec![za]])
            .unwrap()
            .with_map("a~", vec![vec![zabar]])
            .unwrap()
    }

    #[test]
    fn validation_examples() {
        let report = a2_module(1, 0).validate();
        assert!(report.is_valid());
        assert_eq!(report.loewy_length, Some(2));

        let report = a2_module(1, 1).validate();
        assert!(!report.is_valid());
        assert_eq!(report.relation_failures, vec![0, 1]);
        // a a~ is the identity on vertex 2, so nothing is nilpotent either
        assert!(!report.is_nilpotent());

        for dim in [vec![0, 0], vec![2, 3]] {
            assert!(PPModule::zero(a2(), DimVector(dim)).validate().is_valid());
        }
    }

    #[test]
    fn relation_cancellation_is_not_enough_for_nilpotency() {
        // A3 with z_a = z_a~ = z_b = z_b~ = 1: the relation at vertex 2 cancels
        // (a a~ - b~ b = 0) but fails at the ends.
        let a3 = Arc::new(Quiver::linear(3));
        let z = PPModule::zero(a3, DimVector(vec![1, 1, 1]))
            .with_map("a", vec![vec![1]])
            .unwrap()
            .with_map("a~", vec![vec![1]])
            .unwrap()
            .with_map("b", vec![vec![1]])
            .unwrap()
            .with_map("b~", vec![vec![1]])
            .unwrap();
        assert_eq!(z.validate().relation_failures, vec![0, 2]);
    }

    #[test]
    fn shape_errors() {
        assert!(PPModule::zero(a2(), DimVector(vec![1, 1]))
            .with_map("a", vec![vec![1, 2]])
            .is_err());
        assert!(PPModule::new(a2(), DimVector(vec![1, 1]), vec![]).is_err());
        assert!(PPModule::zero(a2(), DimVector(vec![1, 0]))
            .with_map("a", vec![])
            .is_ok());
    }

    #[test]
    fn reduction_examples() {
        let one = a2_module(1, 0).reduce_mod_p(fp(2));
        assert!(!one.is_degenerate());
        assert_eq!(one.module.maps()[0].entries(), &[1]);

        let two = a2_module(2, 0).reduce_mod_p(fp(2));
        assert!(two.is_degenerate());
        assert_eq!(two.rank_drops, vec![(0, 1, 0)]);
        assert_eq!(two.module.maps()[0].entries(), &[0]);

        let three = a2_module(3, 0).reduce_mod_p(fp(2));
        assert!(!three.is_degenerate());
        assert_eq!(three.module.maps()[0].entries(), &[1]);
        assert!(three.module.validate().is_valid());
    }

    #[test]
    fn stable_line_space_examples() {
        let z = a2_module(1, 0).reduce_mod_p(fp(3)).module;
        assert_eq!(
            z.stable_line_space(0).dimension_vector(),
            DimVector(vec![0, 0])
        );
        assert_eq!(
            z.stable_line_space(1).dimension_vector(),
            DimVector(vec![0, 1])
        );
        let zero = ModpModule::zero(fp(3), a2(), DimVector(vec![2, 1]));
        assert_eq!(
            zero.stable_line_space(0).dimension_vector(),
            DimVector(vec![2, 0])
        );
    }

    #[test]
    fn quotient_examples() {
        let f = fp(3);
        let z = a2_module(1, 0).reduce_mod_p(f).module;
        let same = z.quotient(&GradedSubspace::zero(f, z.dim())).unwrap();
        assert_eq!(same, z);
        let nothing = z.quotient(&GradedSubspace::full(f, z.dim())).unwrap();
        assert_eq!(nothing.total_dim(), 0);

        let s1 = z.quotient(&z.stable_line_space(1)).unwrap();
        assert_eq!(s1.dim(), &DimVector(vec![1, 0]));
        assert!(s1.is_zero_action());

        let unstable =
            GradedSubspace::new(f, vec![Matrix::filled(1, 1, 1), Matrix::filled(1, 0, 0)]);
        assert!(matches!(z.quotient(&unstable), Err(Error::NotStable)));
    }

    #[test]
    fn quotient_by_line_matches_general_quotient() {
        let f = fp(5);
        // i -> j, z_a~ = (1, 2)^T: vertex i has a 2-dim space, every i-line is stable.
        let ij = Arc::new(Quiver::builtin("ij").unwrap());
        let z = PPModule::zero(ij, DimVector(vec![2, 1]))
            .with_map("a~", vec![vec![1], vec![2]])
            .unwrap()
            .reduce_mod_p(f)
            .module;
        for vec in [[1u32, 0], [0, 1], [1, 3], [2, 4]] {
            let line = GradedSubspace::new(
                f,
                vec![
                    Matrix::from_rows(vec![vec![vec[0]], vec![vec[1]]], 1).unwrap(),
                    Matrix::filled(1, 0, 0),
                ],
            );
            let general = z.quotient(&line).unwrap();
            let fast = z.quotient_by_line(0, &vec);
            assert_eq!(general.dim(), fast.dim());
            // both coordinates systems drop the pivot coordinate of the line
            assert_eq!(general.maps(), fast.maps(), "line {vec:?}");
            assert!(fast.validate().is_valid());
        }
    }

    #[test]
    fn module_file_roundtrip_and_errors() {
        let text = "quiver: A2\ndim: 1=1 2=1\nmatrix a: [[1]]\n";
        let z = PPModule::parse(text, None).unwrap();
        assert_eq!(z, a2_module(1, 0));
        assert_eq!(PPModule::parse(&z.to_text("A2"), None).unwrap(), z);

        let err =
            PPModule::parse("quiver: A2\ndim: 1=1 2=1\nmatrix a: [[1,2]]\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = PPModule::parse("quiver: A2\nfoo\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = PPModule::parse("quiver: A2\ndim: 3=1\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(PPModule::parse("dim: 1=1\n", None).is_err());
    }
}
