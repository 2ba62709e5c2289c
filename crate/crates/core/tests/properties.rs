use proptest::prelude::*;

use hilbk3::bb_lattice::{obstruction_coefficient, pullback, H2Class, H2Lattice};
use hilbk3::cohomology::{hilbert_poincare, hilbert_poincare_with, SurfaceBetti};
use hilbk3::exec::Mode;
use hilbk3::invariant_ideals::MonomialIdeal;
use hilbk3::linalg::{frac, Matrix, Q};
use hilbk3::partitions::{
    codim_diagonal, fiber_dimension, is_triangular, partitions, trianalytic_candidates_with,
    YoungDiagram,
};

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=6).prop_map(|(a, b)| frac(a, b))
}

fn diagram() -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1usize..=6, 1..=6).prop_map(|p| YoungDiagram::from_unsorted(p).unwrap())
}

fn small_lattice() -> impl Strategy<Value = H2Lattice> {
    (2usize..=12, prop::collection::vec(rational(), 10)).prop_filter_map("degenerate", |(n, e)| {
        let mut g = Matrix::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                g[(i, j)] = e[k].clone();
                g[(j, i)] = e[k].clone();
                k += 1;
            }
        }
        H2Lattice::new(n, g).ok()
    })
}

fn class(dim_v: usize) -> impl Strategy<Value = H2Class> {
    (prop::collection::vec(rational(), dim_v), rational()).prop_map(|(v, d)| H2Class::new(v, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semismall_equality(a in diagram()) {
        prop_assert_eq!(codim_diagonal(&a), 2 * fiber_dimension(&a));
        prop_assert_eq!(codim_diagonal(&a), 2 * (a.weight() - a.len()));
    }

    #[test]
    fn refinement_round_trips(a in diagram()) {
        let r = a.refinement();
        prop_assert_eq!(r.multiplicities.iter().sum::<usize>(), a.len());
        let rebuilt: Vec<usize> = r
            .distinct_values
            .iter()
            .zip(&r.multiplicities)
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect();
        prop_assert_eq!(rebuilt.as_slice(), a.parts());
    }

    #[test]
    fn bb_pair_symmetric_and_bilinear(
        l in small_lattice(),
        x in class(4),
        y in class(4),
        z in class(4),
        s in rational(),
    ) {
        prop_assert_eq!(l.bb_pair(&x, &y).unwrap(), l.bb_pair(&y, &x).unwrap());
        let xv = x.to_vec();
        let zv = z.to_vec();
        let sum: Vec<Q> = xv.iter().zip(&zv).map(|(a, b)| a * &s + b).collect();
        let lhs = l.bb_pair(&H2Class::from_vec(sum).unwrap(), &y).unwrap();
        let rhs = l.bb_pair(&x, &y).unwrap() * &s + l.bb_pair(&z, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_identity_on_v(x in class(22), y in class(22), k in 1usize..=3, l in 1usize..=4) {
        let t = k * (k + 1) / 2;
        let n = t * l;
        prop_assume!(n >= 2);
        let src = H2Lattice::k3(n).unwrap();
        let px = pullback(&src, l, &x).unwrap();
        let py = pullback(&src, l, &y).unwrap();
        prop_assert_eq!(&px.v, &x.v);
        let vx = src.class_from_v(x.v.clone()).unwrap();
        let vy = src.class_from_v(y.v.clone()).unwrap();
        let tgt_pair = if l == 1 {
            src.gram().bilinear(&px.v, &py.v).unwrap()
        } else {
            let pvx = src.class_from_v(px.v.clone()).unwrap();
            let pvy = src.class_from_v(py.v.clone()).unwrap();
            H2Lattice::k3(l).unwrap().bb_pair(&pvx, &pvy).unwrap()
        };
        prop_assert_eq!(src.bb_pair(&vx, &vy).unwrap(), tgt_pair);
    }

    #[test]
    fn obstruction_vanishes_only_on_the_diagonal(k in 1usize..=10, l in 2usize..=30) {
        let n = l * k * (k + 1) / 2;
        let c = obstruction_coefficient(n, l).unwrap();
        prop_assert_eq!(num_traits::Zero::is_zero(&c), k == 1);
    }

    #[test]
    fn duality_for_arbitrary_surfaces(b2 in 0u64..40, n in 1usize..=5) {
        let s = SurfaceBetti::new(1, b2, 1).unwrap();
        let p = hilbert_poincare(&s, n).unwrap().total;
        prop_assert!(p.satisfies_duality());
        prop_assert!(p.odd_vanish());
        prop_assert_eq!(p.betti().len(), 4 * n + 1);
        prop_assert_eq!(p.get(2), b2 + u64::from(n >= 2));
    }

    #[test]
    fn staircases_are_ideals_and_powers_are_triangular(a in diagram()) {
        let m = MonomialIdeal::new(a.clone());
        for (x, y) in m.generators() {
            prop_assert!(m.contains(x, y));
            if x > 0 { prop_assert!(!m.contains(x - 1, y)); }
            if y > 0 { prop_assert!(!m.contains(x, y - 1)); }
        }
        if let Some(l) = m.as_power() {
            prop_assert_eq!(is_triangular(a.weight()), Some(l));
        }
    }
}

#[test]
fn modes_agree() {
    for n in 2..=12 {
        let a = hilbert_poincare_with(&SurfaceBetti::K3, n, Mode::Sequential).unwrap();
        let b = hilbert_poincare_with(&SurfaceBetti::K3, n, Mode::Parallel).unwrap();
        assert_eq!(a.total, b.total);
        let ca = trianalytic_candidates_with(n, Mode::Sequential).unwrap();
        let cb = trianalytic_candidates_with(n, Mode::Parallel).unwrap();
        assert_eq!(
            format!("{:?}", ca.candidates),
            format!("{:?}", cb.candidates)
        );
        assert_eq!(partitions(n).len(), a.ledger.len());
    }
}
