//! Bundled verification suites, each a list of expected-versus-computed checks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::flagcount::{count_stable_flags, naive_flag_count};
use crate::linalg::PrimeField;
use crate::qlaurent::{quantum_factorial, LaurentPolynomial};
use crate::quiver::{DimVector, Word};
use crate::semican::Engine;
use crate::shuffle::ShuffleElement;

pub const SUITES: [&str; 5] = [
    "serre-example",
    "factorials",
    "oracle",
    "shuffle-axioms",
    "all",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    fn new(
        name: impl Into<String>,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
    ) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self {
            name: name.into(),
            pass: expected == computed,
            expected,
            computed,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {}: expected {}, computed {}",
            self.name, self.expected, self.computed
        )
    }
}

/// Runs a named suite.
pub fn run_suite(name: &str, engine: &Engine) -> Result<Vec<Check>> {
    match name {
        "serre-example" => serre_example(engine),
        "factorials" => factorials(engine),
        "oracle" => oracle(),
        "shuffle-axioms" => shuffle_axioms(),
        "all" => {
            let mut out = Vec::new();
            for s in &SUITES[..4] {
                out.extend(run_suite(s, engine)?);
            }
            Ok(out)
        }
        other => Err(Error::Hypothesis(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn lp(s: &str) -> LaurentPolynomial {
    s.parse().expect("literal")
}

/// The value table, dimensions, Serre relation and correction term on `ij`.
pub fn serre_example(engine: &Engine) -> Result<Vec<Check>> {
    let q = fixtures::ij();
    let strata = [
        ("Z1", fixtures::z1()),
        ("Z2", fixtures::z2()),
        ("0", fixtures::ij_zero()),
    ];
    let table = [
        ("Z1", "i j i", "q^-2"),
        ("Z1", "i i j", "q^-3 + q^-1"),
        ("Z1", "j i i", "0"),
        ("Z2", "i j i", "q^-2"),
        ("Z2", "i i j", "0"),
        ("Z2", "j i i", "q^-3 + q^-1"),
        ("0", "i j i", "q^-2 + 1"),
        ("0", "i i j", "q^-3 + q^-1"),
        ("0", "j i i", "q^-3 + q^-1"),
    ];
    let mut out = Vec::new();
    for (label, word, expected) in table {
        let z = &strata.iter().find(|s| s.0 == label).expect("stratum").1;
        let w = q.parse_word(word)?;
        let value = engine.induction_value(&w, z, None)?;
        out.push(Check::new(
            format!("value [{word}] at {label}"),
            lp(expected),
            value,
        ));
    }
    for (word, d) in [("i j i", 2), ("i i j", 3), ("j i i", 3)] {
        let w = q.parse_word(word)?;
        out.push(Check::new(
            format!("d[{word}]"),
            d,
            engine.dimension(&q, &w)?,
        ));
    }
    let labelled: Vec<_> = strata
        .iter()
        .map(|(l, z)| (z.clone(), l.to_string()))
        .collect();
    let report = engine.verify_serre(&q, 0, 1, &labelled)?;
    for c in &report.checks {
        if !c.is_zero_point {
            out.push(Check::new(
                format!("Serre relation at {}", c.label),
                "0",
                &c.defect,
            ));
        }
    }
    let bracket = lp("q^-1 + q");
    let g = &(&LaurentPolynomial::q_pow(-1) * &bracket.pow(2))
        - &(&lp("q^-3 + q^-1") * &LaurentPolynomial::constant(2));
    let computed = report
        .correction()
        .map_or_else(|| "none".to_string(), ToString::to_string);
    out.push(Check::new("correction g(q) at 0", &g, &computed));
    out.push(Check::new("g(q) simplified", lp("-q^-3 + q"), &g));
    Ok(out)
}

/// `[i]^p` on the zero module of dimension `p` gives `[p]!`.
pub fn factorials(engine: &Engine) -> Result<Vec<Check>> {
    let q = fixtures::point_quiver();
    (1..=4u32)
        .map(|p| {
            let z = crate::ffmod::PPModule::zero(q.clone(), DimVector(vec![p]));
            let value = engine.induction_value(&Word::power(0, p as usize), &z, None)?;
            Ok(Check::new(
                format!("[i]^{p} on zero module"),
                quantum_factorial(p),
                value,
            ))
        })
        .collect()
}

/// Recursive flag counts against full subspace-chain enumeration.
pub fn oracle() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (label, z) in fixtures::oracle_modules() {
        let words = z.quiver().words_of_weight(z.dim());
        for p in [2, 3] {
            let m = z.reduce_mod_p(PrimeField::new(p)?).module;
            let mut fast = Vec::new();
            let mut naive = Vec::new();
            for w in &words {
                fast.push(count_stable_flags(&m, w)?);
                naive.push(naive_flag_count(&m, w, 4)?);
            }
            out.push(Check::new(
                format!("{label} over F_{p}, {} words", words.len()),
                format!("{naive:?}"),
                format!("{fast:?}"),
            ));
        }
    }
    Ok(out)
}

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> Word {
    let len = rng.gen_range(0..=3);
    Word::new((0..len).map(|_| rng.gen_range(0..n)).collect())
}

/// Associativity, grading and `q = 1` commutativity on seeded random word triples.
pub fn shuffle_axioms() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, quiver) in [("A2", fixtures::a2()), ("A3", fixtures::a3())] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let n = quiver.num_vertices();
        let (mut assoc, mut graded, mut commute) = (0, 0, 0);
        let trials = 100;
        for _ in 0..trials {
            let words: Vec<Word> = (0..3).map(|_| random_word(&mut rng, n)).collect();
            let [a, b, c] =
                [0, 1, 2].map(|k| ShuffleElement::word(quiver.clone(), words[k].clone()));
            let left = a.shuffle_product(&b)?.shuffle_product(&c)?;
            let right = a.shuffle_product(&b.shuffle_product(&c)?)?;
            assoc += usize::from(left == right);
            let ab = a.shuffle_product(&b)?;
            let weight = words[0].weight(n).add(&words[1].weight(n));
            graded += usize::from(ab.weights().iter().all(|w| w == &weight));
            commute += usize::from(ab.specialize_q1() == b.shuffle_product(&a)?.specialize_q1());
        }
        let expect = format!("{trials}/{trials}");
        out.push(Check::new(
            format!("{name} associativity"),
            &expect,
            format!("{assoc}/{trials}"),
        ));
        out.push(Check::new(
            format!("{name} grading"),
            &expect,
            format!("{graded}/{trials}"),
        ));
        out.push(Check::new(
            format!("{name} commutativity at q=1"),
            &expect,
            format!("{commute}/{trials}"),
        ));
    }
    Ok(out)
}
