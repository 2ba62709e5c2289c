use num_traits::Zero;

use hilbk3::fixtures;
use hilbk3::frobenius::build_algebra;
use hilbk3::linalg::{q, Matrix};

fn split_gram(dim: usize) -> Matrix {
    let mut g = Matrix::zeros(dim, dim);
    g[(0, 1)] = q(1);
    g[(1, 0)] = q(1);
    for k in 2..dim {
        g[(k, k)] = q(if k == 2 { 2 } else { -1 });
    }
    g
}

#[test]
fn orthogonal_maps_are_automorphisms() {
    let mut rng = fixtures::rng(12);
    for dim in 2..=4 {
        // (dim 4, n 3) spends most of its time in degree-6 Cayley entries
        for n in 1..=(if dim == 4 { 2 } else { 3 }) {
            let a = build_algebra(&split_gram(dim), n).unwrap();
            for _ in 0..2 {
                let g = fixtures::cayley_orthogonal(a.space().gram(), &mut rng).unwrap();
                let check = a.check_automorphism(&g).unwrap();
                assert!(check.passed(), "dim {dim}, n {n}: {check:?}");
            }
        }
    }
}

#[test]
fn anisotropic_top_powers_survive() {
    let mut rng = fixtures::rng(13);
    for dim in 2..=4 {
        for n in 1..=3 {
            let a = build_algebra(&split_gram(dim), n).unwrap();
            for _ in 0..10 {
                let v = fixtures::random_vector(&mut rng, dim, 4, 3);
                if a.norm(&v).unwrap().is_zero() {
                    continue;
                }
                assert!(!a.top_power(&v).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn random_forms_give_the_same_pattern() {
    let mut rng = fixtures::rng(14);
    for dim in 2..=4 {
        let g = fixtures::random_gram(&mut rng, dim);
        let a = build_algebra(&g, 2).unwrap();
        assert!(a.pairing_nondegenerate().unwrap());
    }
}
