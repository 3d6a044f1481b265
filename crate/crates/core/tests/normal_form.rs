//! Systematic normal-form sweep over every small discrete chain: the
//! computed form is equivalent to its input, idempotent, unique per
//! divisor class, and faithful to the class coordinates.

use chaincycles::chain::{
    normal_form_discrete, vertex_of_class, CycleSpec, DiscreteChain, NormalForm, PointPosition,
};
use chaincycles::oracle::{dhar_reduce, effective_divisors, linear_equivalent};
use rayon::prelude::*;
use std::collections::BTreeSet;

fn all_chains(max_genus: usize, max_size: usize) -> Vec<DiscreteChain> {
    let mut options = Vec::new();
    for size in 2..=max_size {
        for attach in 2..=size {
            options.push(CycleSpec { size, attach });
        }
    }
    let mut out = Vec::new();
    for g in 1..=max_genus {
        let mut idx = vec![0usize; g];
        'odometer: loop {
            out.push(
                DiscreteChain::new(idx.iter().map(|&i| options[i]).collect())
                    .expect("options are valid cycles"),
            );
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < options.len() {
                    continue 'odometer;
                }
                *slot = 0;
            }
            break;
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn normal_forms_enumerate_the_divisor_classes() {
    // Distinct normal forms must land in distinct classes; comparing
    // 0-reduced representatives shows exactly one class per form.
    all_chains(3, 4).par_iter().for_each(|chain| {
        let graph = chain.graph();
        let sizes: Vec<usize> = (1..=chain.genus()).map(|i| chain.size(i)).collect();
        let class_count: usize = sizes.iter().product();
        let mut reduced = BTreeSet::new();
        let mut vertices = vec![1usize; sizes.len()];
        'odometer: loop {
            let nf = NormalForm {
                degree: chain.genus() as i64,
                vertices: vertices.clone(),
            };
            reduced.insert(
                dhar_reduce(&graph, &nf.to_divisor(chain), 0)
                    .coeffs()
                    .to_vec(),
            );
            for (slot, &size) in vertices.iter_mut().zip(&sizes) {
                *slot += 1;
                if *slot <= size {
                    continue 'odometer;
                }
                *slot = 1;
            }
            break;
        }
        assert_eq!(reduced.len(), class_count, "chain {:?}", chain.cycles());
    });
}

#[test]
fn normal_form_is_equivalent_idempotent_and_faithful() {
    all_chains(3, 4).par_iter().for_each(|chain| {
        let graph = chain.graph();
        let n = chain.vertex_count();
        for degree in 0..=4 {
            for divisor in effective_divisors(n, degree) {
                let nf = normal_form_discrete(chain, &divisor);
                assert_eq!(nf.degree, degree);
                let back = nf.to_divisor(chain);
                assert!(
                    linear_equivalent(&graph, &divisor, &back),
                    "chain {:?} divisor {:?}",
                    chain.cycles(),
                    divisor
                );
                assert_eq!(normal_form_discrete(chain, &back), nf);

                // Class coordinates point back at the same vertices; a
                // Generic coordinate can only come from a vertex that is
                // not a class point of its ring.
                let representing = nf.to_representing(chain);
                for i in 1..=chain.genus() {
                    match representing.position(i) {
                        PointPosition::IntegerClass(xi) => {
                            assert_eq!(vertex_of_class(chain, i, xi), nf.vertices[i - 1]);
                        }
                        PointPosition::Generic => {
                            assert!(gcd(chain.attach(i) - 1, chain.size(i)) > 1);
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn normal_form_handles_mixed_sign_divisors() {
    all_chains(3, 4).par_iter().for_each(|chain| {
        let graph = chain.graph();
        let canonical = graph.canonical_divisor();
        for divisor in effective_divisors(chain.vertex_count(), 2) {
            let shifted = divisor.minus(&canonical);
            let nf = normal_form_discrete(chain, &shifted);
            assert_eq!(nf.degree, shifted.degree());
            assert!(linear_equivalent(&graph, &shifted, &nf.to_divisor(chain)));
            assert_eq!(normal_form_discrete(chain, &nf.to_divisor(chain)), nf);
        }
    });
}
