//! End-to-end properties of the decomposition across partitions, module
//! families and seeds: classification of the parts, exact reassembly,
//! agreement with the projection oracle, and sensitivity of the
//! predicates to corruption.

use jordec_core::algebra::{corner_scalar_bimodule, natural_bimodule, regular_bimodule};
use jordec_core::linalg::Scalar;
use jordec_core::maps::{check_kind, is_kind, vanishes_on_diagonal, KindWitness};
use jordec_core::{
    decompose, project_decompose_oracle, sample_map, space_basis, Bimodule, BlockPartition,
    LinearMap, MapKind, Rational,
};
use proptest::prelude::*;
use std::sync::Arc;

const PARTITIONS: &[&[usize]] = &[&[1, 1], &[2, 1], &[1, 2], &[1, 1, 1], &[2, 2]];

fn module(parts: &[usize], family: usize) -> Arc<Bimodule> {
    let p = BlockPartition::new(parts.to_vec()).unwrap();
    Arc::new(match family {
        0 => natural_bimodule(&p),
        1 => regular_bimodule(&p),
        _ => corner_scalar_bimodule(&p).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decomposition_round_trip(
        part_idx in 0..PARTITIONS.len(),
        family in 0usize..3,
        seed in 0u64..1000,
    ) {
        let m = module(PARTITIONS[part_idx], family);
        let jordan = space_basis(MapKind::Jordan, &m);
        let f = sample_map(&jordan, seed);
        let (pair, trace) = decompose(&f).unwrap();
        prop_assert!(is_kind(&pair.d, MapKind::Derivation));
        prop_assert!(is_kind(&pair.alpha, MapKind::Antiderivation));
        prop_assert!(vanishes_on_diagonal(&pair.alpha));
        prop_assert_eq!(pair.d.add(&pair.alpha).unwrap(), f);
        prop_assert_eq!(trace.levels.len(), PARTITIONS[part_idx].len() - 1);
    }

    #[test]
    fn recursive_and_projection_answers_agree(
        part_idx in 0..PARTITIONS.len(),
        family in 0usize..3,
        seed in 0u64..1000,
    ) {
        let m = module(PARTITIONS[part_idx], family);
        let jordan = space_basis(MapKind::Jordan, &m);
        let f = sample_map(&jordan, seed);
        let (pair, _) = decompose(&f).unwrap();
        let oracle = project_decompose_oracle(&f).unwrap();
        prop_assert_eq!(pair.d, oracle.d);
        prop_assert_eq!(pair.alpha, oracle.alpha);
    }

    #[test]
    fn corrupting_a_derivation_is_detected(
        part_idx in 0..PARTITIONS.len(),
        family in 0usize..3,
        seed in 0u64..1000,
    ) {
        let m = module(PARTITIONS[part_idx], family);
        if m.dim() == 0 {
            // Nothing to corrupt in a zero module.
            return Ok(());
        }
        let der = space_basis(MapKind::Derivation, &m);
        let f = sample_map(&der, seed);
        prop_assert!(is_kind(&f, MapKind::Derivation));

        // Bump the first coordinate whose unit bump is itself not a
        // derivation; the sum then cannot be one either.
        let total = m.basis().len() * m.dim();
        let bumped = (0..total).find_map(|t| {
            let mut coords = vec![Rational::zero(); total];
            coords[t] = Rational::one();
            let bump = LinearMap::from_coordinates(Arc::clone(&m), &coords).unwrap();
            if is_kind(&bump, MapKind::Derivation) {
                return None;
            }
            Some(f.add(&bump).unwrap())
        });
        let Some(corrupted) = bumped else {
            // Every unit bump staying a derivation would mean the space is
            // everything; the dimension counts elsewhere rule that out.
            return Err(TestCaseError::fail("no corruptible coordinate"));
        };
        let witness = check_kind(&corrupted, MapKind::Derivation)
            .expect("corrupted map must fail the predicate");
        match witness {
            KindWitness::Identity { a, b, .. } => {
                // The reported pair must genuinely violate the identity.
                let ea = jordec_core::AlgebraElement::matrix_unit(
                    m.partition().clone(), a.0, a.1,
                ).unwrap();
                let eb = jordec_core::AlgebraElement::matrix_unit(
                    m.partition().clone(), b.0, b.1,
                ).unwrap();
                let lhs = corrupted.apply(&ea.multiply(&eb).unwrap()).unwrap();
                let da = corrupted.apply(&ea).unwrap();
                let db = corrupted.apply(&eb).unwrap();
                let rhs: Vec<Rational> = m
                    .act_right_vec(&eb, &da)
                    .unwrap()
                    .iter()
                    .zip(&m.act_left_vec(&ea, &db).unwrap())
                    .map(|(x, y)| x.add(y))
                    .collect();
                prop_assert_ne!(lhs, rhs);
            }
            other => return Err(TestCaseError::fail(format!("unexpected witness {other}"))),
        }
    }
}

#[test]
fn uniqueness_holds_across_module_families() {
    // Any alternative split (d - beta, alpha + beta) with beta a nonzero
    // diagonal-vanishing antiderivation loses one of the two
    // classifications; the decomposition is rigid.
    for parts in PARTITIONS {
        for family in 0..3 {
            let m = module(parts, family);
            let jordan = space_basis(MapKind::Jordan, &m);
            let anti0 = space_basis(MapKind::AntiderivationDiag0, &m);
            let f = sample_map(&jordan, 42);
            let (pair, _) = decompose(&f).unwrap();
            for beta in anti0.maps() {
                if beta.is_zero() {
                    continue;
                }
                let d2 = pair.d.sub(beta).unwrap();
                let a2 = pair.alpha.add(beta).unwrap();
                assert!(
                    !is_kind(&d2, MapKind::Derivation)
                        || !is_kind(&a2, MapKind::Antiderivation),
                    "shifted pair stayed valid over {parts:?} family {family}"
                );
            }
        }
    }
}
