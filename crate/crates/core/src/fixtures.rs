//! Shipped components and test modules.
//!
//! The two-vertex example uses the quiver `ij` (one arrow `a: i -> j`) with weight
//! `2 alpha_i + alpha_j`. Its two nonzero components are represented by
//!
//! * `Z1`: `z_a = 0`, `z_a~ = (1, 0)^T`, a nonzero map from the `j` line into `C^2`;
//! * `Z2`: `z_a = (1 0)`, `z_a~ = 0`, a nonzero map `C^2 -> C`.
//!
//! With stable lines taken as submodules, `[i i j]` has a projective line of flags on
//! `Z1` and none on `Z2`; `[j i i]` is the mirror image.

use std::sync::Arc;

use crate::ffmod::PPModule;
use crate::quiver::{DimVector, Quiver};
use crate::semican::ComponentSpec;

fn module(quiver: &Arc<Quiver>, dim: &[u32], maps: &[(&str, Vec<Vec<i64>>)]) -> PPModule {
    let mut z = PPModule::zero(quiver.clone(), DimVector(dim.to_vec()));
    for (name, rows) in maps {
        z = z.with_map(name, rows.clone()).expect("fixture shape");
    }
    z
}

fn component(name: &str, description: &str, z: PPModule) -> ComponentSpec {
    ComponentSpec::new(name, z)
        .expect("fixture is a valid point")
        .with_description(description)
}

pub fn a2() -> Arc<Quiver> {
    Arc::new(Quiver::linear(2))
}

pub fn a3() -> Arc<Quiver> {
    Arc::new(Quiver::linear(3))
}

pub fn ij() -> Arc<Quiver> {
    Arc::new(Quiver::builtin("ij").expect("builtin"))
}

pub fn point_quiver() -> Arc<Quiver> {
    Arc::new(Quiver::builtin("pt").expect("builtin"))
}

/// The component `Lambda_{alpha_v}`: a single simple module.
pub fn simple_root(quiver: &Arc<Quiver>, v: usize) -> ComponentSpec {
    let dim = DimVector::simple(quiver.num_vertices(), v, 1);
    component(
        &format!("S_{}", quiver.vertex_name(v)),
        "simple module",
        PPModule::zero(quiver.clone(), dim),
    )
}

/// The two components of weight `alpha_1 + alpha_2` on A2.
pub fn a2_components() -> Vec<ComponentSpec> {
    let q = a2();
    vec![
        component(
            "a",
            "z_a nonzero, z_a~ = 0",
            module(&q, &[1, 1], &[("a", vec![vec![1]])]),
        ),
        component(
            "abar",
            "z_a~ nonzero, z_a = 0",
            module(&q, &[1, 1], &[("a~", vec![vec![1]])]),
        ),
    ]
}

pub fn z1() -> PPModule {
    module(&ij(), &[2, 1], &[("a~", vec![vec![1], vec![0]])])
}

pub fn z2() -> PPModule {
    module(&ij(), &[2, 1], &[("a", vec![vec![1, 0]])])
}

pub fn ij_zero() -> PPModule {
    PPModule::zero(ij(), DimVector(vec![2, 1]))
}

/// Components `Z1`, `Z2` of weight `2 alpha_i + alpha_j` on `ij`.
pub fn ij_components() -> Vec<ComponentSpec> {
    vec![
        component("Z1", "z_a = 0, z_a~ injective", z1()),
        component("Z2", "z_a~ = 0, z_a surjective", z2()),
    ]
}

/// Every shipped component.
pub fn components() -> Vec<ComponentSpec> {
    let mut out = vec![
        simple_root(&point_quiver(), 0),
        simple_root(&a2(), 0),
        simple_root(&a2(), 1),
    ];
    out.extend(a2_components());
    out.extend(ij_components());
    out
}

/// Valid modules of total dimension at most 4, labelled, for oracle comparisons.
pub fn oracle_modules() -> Vec<(String, PPModule)> {
    let pt = point_quiver();
    let a2 = a2();
    let a3 = a3();
    let mut out: Vec<(String, PPModule)> = (1..=4)
        .map(|n| {
            (
                format!("pt zero dim {n}"),
                PPModule::zero(pt.clone(), DimVector(vec![n])),
            )
        })
        .collect();
    out.push((
        "A2 zero (1,1)".into(),
        PPModule::zero(a2.clone(), DimVector(vec![1, 1])),
    ));
    for c in a2_components() {
        out.push((format!("A2 component {}", c.name), c.point().clone()));
    }
    out.push((
        "A2 zero (2,1)".into(),
        PPModule::zero(a2.clone(), DimVector(vec![2, 1])),
    ));
    out.push((
        "A2 (2,2) z_a = I".into(),
        module(&a2, &[2, 2], &[("a", vec![vec![1, 0], vec![0, 1]])]),
    ));
    out.push((
        "A2 (2,2) split".into(),
        module(
            &a2,
            &[2, 2],
            &[
                ("a", vec![vec![1, 0], vec![0, 0]]),
                ("a~", vec![vec![0, 0], vec![0, 1]]),
            ],
        ),
    ));
    out.push(("ij Z1".into(), z1()));
    out.push(("ij Z2".into(), z2()));
    out.push(("ij zero".into(), ij_zero()));
    out.push((
        "A3 (1,1,1) a b".into(),
        module(
            &a3,
            &[1, 1, 1],
            &[("a", vec![vec![1]]), ("b", vec![vec![1]])],
        ),
    ));
    out.push((
        "A3 (1,1,1) a b~".into(),
        module(
            &a3,
            &[1, 1, 1],
            &[("a", vec![vec![1]]), ("b~", vec![vec![1]])],
        ),
    ));
    out.push((
        "A3 (1,1,1) a~ b".into(),
        module(
            &a3,
            &[1, 1, 1],
            &[("a~", vec![vec![1]]), ("b", vec![vec![1]])],
        ),
    ));
    out.push((
        "A3 (1,2,1) chain".into(),
        module(
            &a3,
            &[1, 2, 1],
            &[("a", vec![vec![1], vec![0]]), ("b", vec![vec![0, 1]])],
        ),
    ));
    // z_a z_a~ = z_b~ z_b is nonzero here, so the relation at the middle vertex is used
    out.push((
        "A3 (1,2,1) relation".into(),
        module(
            &a3,
            &[1, 2, 1],
            &[
                ("a", vec![vec![1], vec![0]]),
                ("a~", vec![vec![0, 1]]),
                ("b", vec![vec![0, 1]]),
                ("b~", vec![vec![1], vec![0]]),
            ],
        ),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid_and_small() {
        for (label, z) in oracle_modules() {
            assert!(z.validate().is_valid(), "{label}");
            assert!(z.total_dim() <= 4, "{label}");
        }
        for c in components() {
            assert!(c.point().validate().is_valid(), "{}", c.name);
        }
    }

    #[test]
    fn relation_fixture_uses_the_relation() {
        let (_, z) = oracle_modules()
            .into_iter()
            .find(|(l, _)| l == "A3 (1,2,1) relation")
            .unwrap();
        let q = z.quiver().clone();
        let a = &z.maps()[q.double_arrow_by_name("a").unwrap().index()];
        let abar = &z.maps()[q.double_arrow_by_name("a~").unwrap().index()];
        assert!(!a.checked_mul(abar).unwrap().is_zero());
    }
}
