//! Quivers, double quivers, dimension vectors and words.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver without loops. Vertices and arrows keep their declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Original,
    Reversed,
}

/// An arrow of the double quiver. Reversed arrows carry sign -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DoubleArrow {
    /// Index of the underlying arrow of the quiver.
    pub arrow: usize,
    pub direction: Direction,
    pub source: usize,
    pub target: usize,
}

impl DoubleArrow {
    pub fn sign(&self) -> i64 {
        match self.direction {
            Direction::Original => 1,
            Direction::Reversed => -1,
        }
    }

    /// Position of this arrow in [`Quiver::double_arrows`].
    pub fn index(&self) -> usize {
        2 * self.arrow + usize::from(self.direction == Direction::Reversed)
    }

    /// Position of the opposite arrow in [`Quiver::double_arrows`].
    pub fn partner_index(&self) -> usize {
        self.index() ^ 1
    }

    /// `a` for original arrows, `a~` for reversed ones.
    pub fn name(&self, quiver: &Quiver) -> String {
        let base = &quiver.arrows[self.arrow].name;
        match self.direction {
            Direction::Original => base.clone(),
            Direction::Reversed => format!("{base}~"),
        }
    }
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// Builds a quiver from vertex names and `(arrow name, source, target)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !valid_token(v) {
                return Err(Error::InvalidQuiver(format!("bad vertex name {v:?}")));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidQuiver(format!("undeclared vertex {name}")))
        };
        let mut names = HashSet::new();
        let mut out = Vec::new();
        for (name, src, tgt) in arrows {
            if !valid_token(&name) {
                return Err(Error::InvalidQuiver(format!("bad arrow name {name:?}")));
            }
            if !names.insert(name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {name}")));
            }
            let (source, target) = (index(&src)?, index(&tgt)?);
            if source == target {
                return Err(Error::InvalidQuiver(format!("arrow {name} is a loop")));
            }
            out.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(Self {
            vertices,
            arrows: out,
        })
    }

    /// Equioriented type A: vertices `1..=n`, arrows `a: 1 -> 2`, `b: 2 -> 3`, ...
    pub fn linear(n: usize) -> Self {
        assert!((1..=27).contains(&n), "linear quiver size out of range");
        let vertices: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        let arrows = (1..n).map(|k| {
            let name = char::from(b'a' + (k - 1) as u8).to_string();
            (name, k.to_string(), (k + 1).to_string())
        });
        Self::new(vertices.clone(), arrows).expect("linear quiver is valid")
    }

    /// Named quivers usable in place of a quiver file: `A<n>`, `pt` (one vertex `i`)
    /// and `ij` (one arrow `a: i -> j`).
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "pt" => Some(Self::new(["i"], []).unwrap()),
            "ij" => Some(Self::new(["i", "j"], [("a".into(), "i".into(), "j".into())]).unwrap()),
            _ => {
                let n: usize = name.strip_prefix('A')?.parse().ok()?;
                (1..=27).contains(&n).then(|| Self::linear(n))
            }
        }
    }

    /// Parses the line-oriented quiver format:
    ///
    /// ```text
    /// vertices: i j
    /// arrow a: i -> j
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Option<Vec<String>> = None;
        let mut arrows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let lineno = lineno + 1;
            if let Some(rest) = line.strip_prefix("vertices:") {
                if vertices.is_some() {
                    return Err(Error::parse(lineno, "vertices declared twice"));
                }
                vertices = Some(rest.split_whitespace().map(str::to_owned).collect());
            } else if let Some(rest) = line.strip_prefix("arrow") {
                let (name, ends) = rest.split_once(':').ok_or_else(|| {
                    Error::parse(lineno, "expected `arrow <name>: <src> -> <tgt>`")
                })?;
                let (src, tgt) = ends
                    .split_once("->")
                    .ok_or_else(|| Error::parse(lineno, "expected `->`"))?;
                arrows.push((
                    name.trim().to_owned(),
                    src.trim().to_owned(),
                    tgt.trim().to_owned(),
                ));
            } else {
                return Err(Error::parse(lineno, format!("unrecognised line {line:?}")));
            }
        }
        let vertices = vertices.ok_or_else(|| Error::parse(1, "missing `vertices:` line"))?;
        Self::new(vertices, arrows).map_err(|e| Error::parse(1, e.to_string()))
    }

    /// Resolves a builtin name, or reads a quiver file (relative paths against `base`).
    pub fn resolve(spec: &str, base: Option<&Path>) -> Result<Self> {
        if let Some(q) = Self::builtin(spec) {
            return Ok(q);
        }
        let path = match base {
            Some(dir) if Path::new(spec).is_relative() => dir.join(spec),
            _ => Path::new(spec).to_path_buf(),
        };
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.vertices.join(" "));
        for a in &self.arrows {
            out += &format!(
                "arrow {}: {} -> {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            );
        }
        out
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    /// Number of arrows between `i` and `j`, in either direction.
    pub fn edges_between(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.source, a.target) == (i, j) || (a.source, a.target) == (j, i))
            .count()
    }

    /// First unordered vertex pair joined by more than one arrow, if any.
    pub fn multi_edge(&self) -> Option<(usize, usize)> {
        let n = self.num_vertices();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.edges_between(i, j) > 1)
    }

    /// Errors unless the quiver has at most one edge between any two vertices, or `allow` is set.
    pub fn ensure_simply_laced(&self, allow: bool) -> Result<()> {
        match self.multi_edge() {
            Some((i, j)) if !allow => Err(Error::MultiEdge(
                self.vertices[i].clone(),
                self.vertices[j].clone(),
            )),
            _ => Ok(()),
        }
    }

    /// The double quiver: arrow `k` yields entries `2k` (original) and `2k+1` (reversed).
    pub fn double_arrows(&self) -> Vec<DoubleArrow> {
        self.arrows
            .iter()
            .enumerate()
            .flat_map(|(k, a)| {
                [
                    DoubleArrow {
                        arrow: k,
                        direction: Direction::Original,
                        source: a.source,
                        target: a.target,
                    },
                    DoubleArrow {
                        arrow: k,
                        direction: Direction::Reversed,
                        source: a.target,
                        target: a.source,
                    },
                ]
            })
            .collect()
    }

    /// Looks up a double arrow by its file name (`a` or `a~`).
    pub fn double_arrow_by_name(&self, name: &str) -> Option<DoubleArrow> {
        let (base, reversed) = match name.strip_suffix('~') {
            Some(b) => (b, true),
            None => (name, false),
        };
        let k = self.arrows.iter().position(|a| a.name == base)?;
        Some(self.double_arrows()[2 * k + usize::from(reversed)])
    }

    /// Symmetric Cartan pairing of simple roots: 2 on the diagonal, minus the
    /// number of edges otherwise.
    pub fn cartan_pairing(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else {
            -(self.edges_between(i, j) as i64)
        }
    }

    /// All words of the given weight, in lexicographic order of vertex indices.
    pub fn words_of_weight(&self, weight: &DimVector) -> Vec<Word> {
        fn rec(remaining: &mut Vec<u32>, prefix: &mut Vec<usize>, out: &mut Vec<Word>) {
            if remaining.iter().all(|&c| c == 0) {
                out.push(Word(prefix.clone()));
                return;
            }
            for v in 0..remaining.len() {
                if remaining[v] > 0 {
                    remaining[v] -= 1;
                    prefix.push(v);
                    rec(remaining, prefix, out);
                    prefix.pop();
                    remaining[v] += 1;
                }
            }
        }
        assert_eq!(weight.len(), self.num_vertices(), "dimension vector length");
        let mut out = Vec::new();
        rec(&mut weight.0.clone(), &mut Vec::new(), &mut out);
        out
    }

    /// Parses a word given as vertex tokens, optionally wrapped in brackets: `i j i`, `[1 2]`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(s);
        inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                self.vertex_index(t)
                    .ok_or_else(|| Error::parse(1, format!("unknown vertex {t:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render_word(&self, w: &Word) -> String {
        let names: Vec<&str> = w.0.iter().map(|&v| self.vertex_name(v)).collect();
        format!("[{}]", names.join(" "))
    }

    /// `v1=d1 v2=d2 ...`
    pub fn render_dim(&self, d: &DimVector) -> String {
        self.vertices
            .iter()
            .zip(&d.0)
            .map(|(v, c)| format!("{v}={c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `v1=d1 v2=d2 ...`; unlisted vertices get dimension 0.
    pub fn parse_dim(&self, s: &str) -> Result<DimVector> {
        let mut dims = vec![0u32; self.num_vertices()];
        for tok in s.split_whitespace() {
            let (v, d) = tok
                .split_once('=')
                .ok_or_else(|| Error::parse(1, format!("expected `vertex=dim`, got {tok:?}")))?;
            let idx = self
                .vertex_index(v)
                .ok_or_else(|| Error::parse(1, format!("unknown vertex {v:?}")))?;
            dims[idx] = d
                .parse()
                .map_err(|_| Error::parse(1, format!("bad dimension {d:?}")))?;
        }
        Ok(DimVector(dims))
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// A dimension vector, indexed by vertex position in the owning quiver.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The simple root at vertex `i`, scaled by `k`.
    pub fn simple(n: usize, i: usize, k: u32) -> Self {
        let mut d = Self::zero(n);
        d.0[i] = k;
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&d| d as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise order.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `sum_v d_v (d_v - 1) / 2`, the dimension of the complete flag variety of this vector.
    pub fn flag_dimension(&self) -> usize {
        self.0
            .iter()
            .map(|&d| (d as usize) * (d as usize).saturating_sub(1) / 2)
            .sum()
    }
}

/// A word in the vertices of a quiver, stored as vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `[v v ... v]` with `k` letters.
    pub fn power(v: usize, k: usize) -> Self {
        Self(vec![v; k])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the simple roots of the letters, over a quiver with `n` vertices.
    pub fn weight(&self, n: usize) -> DimVector {
        let mut d = DimVector::zero(n);
        for &v in &self.0 {
            d.0[v] += 1;
        }
        d
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arrow(n: &str, s: &str, t: &str) -> (String, String, String) {
        (n.into(), s.into(), t.into())
    }

    #[test]
    fn validation() {
        assert!(Quiver::new(["1", "1"], []).is_err());
        assert!(Quiver::new(["1", "2"], [arrow("a", "1", "1")]).is_err());
        assert!(Quiver::new(["1", "2"], [arrow("a", "1", "3")]).is_err());
        assert!(Quiver::new(["1", "2"], [arrow("a", "1", "2"), arrow("a", "2", "1")]).is_err());
        assert!(Quiver::new(["x-y"], []).is_err());
        let kronecker =
            Quiver::new(["1", "2"], [arrow("a", "1", "2"), arrow("b", "1", "2")]).unwrap();
        assert_eq!(kronecker.multi_edge(), Some((0, 1)));
        assert!(kronecker.ensure_simply_laced(false).is_err());
        assert!(kronecker.ensure_simply_laced(true).is_ok());
        assert_eq!(kronecker.cartan_pairing(0, 1), -2);
    }

    #[test]
    fn double_quiver_examples() {
        let a2 = Quiver::linear(2);
        let d = a2.double_arrows();
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].source, d[0].target, d[0].sign()), (0, 1, 1));
        assert_eq!((d[1].source, d[1].target, d[1].sign()), (1, 0, -1));
        assert_eq!(d[0].name(&a2), "a");
        assert_eq!(d[1].name(&a2), "a~");
        assert_eq!(d[0].partner_index(), 1);
        assert!(Quiver::new(["1"], []).unwrap().double_arrows().is_empty());
        assert_eq!(Quiver::linear(3).double_arrows().len(), 4);
        assert_eq!(a2.double_arrow_by_name("a~"), Some(d[1]));
        assert_eq!(a2.double_arrow_by_name("b"), None);
    }

    #[test]
    fn cartan_examples() {
        let a2 = Quiver::linear(2);
        assert_eq!(a2.cartan_pairing(0, 0), 2);
        assert_eq!(a2.cartan_pairing(0, 1), -1);
        assert_eq!(a2.cartan_pairing(1, 0), -1);
        let disc = Quiver::new(["1", "2"], []).unwrap();
        assert_eq!(disc.cartan_pairing(0, 1), 0);
    }

    #[test]
    fn words_examples() {
        let a2 = Quiver::linear(2);
        let w = a2.words_of_weight(&DimVector(vec![1, 1]));
        assert_eq!(w, vec![Word(vec![0, 1]), Word(vec![1, 0])]);
        let ij = Quiver::builtin("ij").unwrap();
        let w = ij.words_of_weight(&DimVector(vec![2, 1]));
        let rendered: Vec<String> = w.iter().map(|w| ij.render_word(w)).collect();
        assert_eq!(rendered, ["[i i j]", "[i j i]", "[j i i]"]);
        assert_eq!(
            a2.words_of_weight(&DimVector(vec![0, 0])),
            vec![Word::empty()]
        );
    }

    #[test]
    fn parse_and_render() {
        let q = Quiver::parse("# A2\nvertices: 1 2\narrow a: 1 -> 2\n").unwrap();
        assert_eq!(q, Quiver::linear(2));
        assert_eq!(Quiver::parse(&q.to_text()).unwrap(), q);
        assert!(matches!(
            Quiver::parse("vertices: 1 2\narrow a 1 -> 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Quiver::parse("arrow a: 1 -> 2").is_err());
        assert_eq!(q.parse_word("[2 1]").unwrap(), Word(vec![1, 0]));
        assert_eq!(q.parse_word("1 2 1").unwrap(), Word(vec![0, 1, 0]));
        assert_eq!(q.parse_word("[]").unwrap(), Word::empty());
        assert!(q.parse_word("3").is_err());
        assert_eq!(q.render_word(&Word(vec![1, 0])), "[2 1]");
        let d = q.parse_dim("2=3").unwrap();
        assert_eq!(d, DimVector(vec![0, 3]));
        assert_eq!(q.render_dim(&d), "1=0 2=3");
    }

    fn multinomial(parts: &[u32]) -> usize {
        let mut total = 0u64;
        let mut acc = 1u64;
        for &p in parts {
            for k in 1..=p as u64 {
                total += 1;
                acc = acc * total / k;
            }
        }
        acc as usize
    }

    proptest! {
        #[test]
        fn words_have_the_right_weight_and_count(d in prop::collection::vec(0u32..3, 3)) {
            let q = Quiver::linear(3);
            let dv = DimVector(d.clone());
            let words = q.words_of_weight(&dv);
            prop_assert_eq!(words.len(), multinomial(&d));
            for w in &words {
                prop_assert_eq!(w.weight(3), dv.clone());
            }
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted, words);
        }

        #[test]
        fn cartan_is_symmetric(i in 0usize..4, j in 0usize..4) {
            let q = Quiver::linear(4);
            prop_assert_eq!(q.cartan_pairing(i, j), q.cartan_pairing(j, i));
        }
    }
}
