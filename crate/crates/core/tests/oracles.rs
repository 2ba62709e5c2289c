//! Independent oracles: brute-force enumerations and generating functions
//! computed without touching the library's own recursions.

use num_traits::Zero;

use hilbk3::cohomology::{hilbert_poincare, symmetric_power_poincare, SurfaceBetti};
use hilbk3::fixtures;
use hilbk3::frobenius::{sym_dimension, SymSpace};
use hilbk3::linalg::{axpy, q, Matrix, Q};
use hilbk3::partitions::{natural_shapes, partitions};

/// Betti numbers of `Sym^n` of a space with `b[i]` classes in degree `i`
/// (even degrees only), by listing multisets of basis classes.
fn brute_symmetric_power(b: &[u64], n: usize) -> Vec<u64> {
    let degrees: Vec<usize> = b
        .iter()
        .enumerate()
        .flat_map(|(d, &c)| std::iter::repeat_n(d, c as usize))
        .collect();
    let mut out = vec![0u64; 4 * n + 1];
    fn go(degrees: &[usize], start: usize, left: usize, deg: usize, out: &mut [u64]) {
        if left == 0 {
            out[deg] += 1;
            return;
        }
        for i in start..degrees.len() {
            go(degrees, i, left - 1, deg + degrees[i], out);
        }
    }
    go(&degrees, 0, n, 0, &mut out);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn gottsche(b: [u64; 5], max_n: usize) -> Vec<Vec<u64>> {
    let top = 4 * max_n + 1;
    let mut series = vec![vec![0u128; top]; max_n + 1];
    series[0][0] = 1;
    for k in 1..=max_n {
        for (i, &bi) in b.iter().enumerate() {
            let shift = 2 * k - 2 + i;
            let mut next = vec![vec![0u128; top]; max_n + 1];
            for (n, row) in series.iter().enumerate() {
                let (mut coeff, mut m) = (1u128, 0usize);
                while n + k * m <= max_n {
                    for (d, &v) in row.iter().enumerate() {
                        if v != 0 && d + shift * m < top {
                            next[n + k * m][d + shift * m] += v * coeff;
                        }
                    }
                    m += 1;
                    coeff = coeff * (bi as u128 + m as u128 - 1) / m as u128;
                }
            }
            series = next;
        }
    }
    series
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as u64).collect())
        .collect()
}

#[test]
fn symmetric_powers_match_multiset_count() {
    for (b, max_n) in [
        (vec![1u64, 0, 22, 0, 1], 4),
        (vec![1, 0, 2, 0, 1], 6),
        (vec![1, 0, 0, 0, 1], 6),
    ] {
        let s = SurfaceBetti::from_betti(&b).unwrap();
        for n in 1..=max_n {
            assert_eq!(
                symmetric_power_poincare(&s, n).unwrap().betti(),
                brute_symmetric_power(&b, n).as_slice(),
                "Sym^{n} of {b:?}"
            );
        }
    }
}

#[test]
fn hilbert_betti_match_product_formula_for_other_surfaces() {
    for b in [[1u64, 0, 1, 0, 1], [1, 0, 10, 0, 1], [1, 0, 22, 0, 1]] {
        let oracle = gottsche(b, 7);
        let s = SurfaceBetti::new(b[0], b[2], b[4]).unwrap();
        for (n, expect) in oracle.iter().enumerate().skip(1) {
            let got = hilbert_poincare(&s, n).unwrap().total;
            assert_eq!(got.betti(), &expect[..=4 * n], "n = {n}, b = {b:?}");
        }
    }
}

#[test]
fn euler_characteristics_match_eta_power() {
    // ∏ (1 − q^m)^{−24}
    let max_n = 10;
    let mut series = vec![0i128; max_n + 1];
    series[0] = 1;
    for m in 1..=max_n {
        for _ in 0..24 {
            for n in m..=max_n {
                series[n] += series[n - m];
            }
        }
    }
    assert_eq!(series[2], 324);
    for (n, &expect) in series.iter().enumerate().skip(1) {
        let p = hilbert_poincare(&SurfaceBetti::K3, n).unwrap().total;
        assert_eq!(p.euler_characteristic(), expect, "n = {n}");
    }
}

#[test]
fn partition_counts_match_pentagonal_recurrence() {
    let max_n = 30;
    let mut p = vec![0i64; max_n + 1];
    p[0] = 1;
    for n in 1..=max_n as i64 {
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n as usize] += sign * p[(n - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                p[n as usize] += sign * p[(n - g2) as usize];
            }
            k += 1;
        }
    }
    for (n, &count) in p.iter().enumerate().skip(1) {
        assert_eq!(partitions(n).len() as i64, count, "p({n})");
    }
}

#[test]
fn marked_set_partition_counts() {
    // Σ_k S(n, k) 2^k
    let mut stirling = vec![vec![0u64; 8]; 8];
    stirling[0][0] = 1;
    for n in 1..8 {
        for k in 1..=n {
            stirling[n][k] = k as u64 * stirling[n - 1][k] + stirling[n - 1][k - 1];
        }
    }
    for (n, row) in stirling.iter().enumerate().take(7).skip(1) {
        let expect: u64 = row.iter().enumerate().map(|(k, s)| s << k).sum();
        assert_eq!(natural_shapes(n).unwrap().len() as u64, expect, "n = {n}");
    }
    assert_eq!(natural_shapes(4).unwrap().len(), 94);
}

#[test]
fn laplacian_commutator_with_q() {
    // Δ(q x) = 2(m + 2d) x + q Δx for x ∈ S^d, m = dim V
    let mut rng = fixtures::rng(31);
    for m in 2..=4 {
        let s = SymSpace::new(fixtures::random_gram(&mut rng, m)).unwrap();
        let qe = s.q_element().unwrap();
        for d in 1..=4 {
            let x = fixtures::random_vector(&mut rng, sym_dimension(m, d), 5, 3);
            let lhs = s.laplacian(&s.multiply(&qe, 2, &x, d), d + 2).unwrap();
            let mut rhs: Vec<Q> = x.iter().map(|c| c * q(2 * (m + 2 * d) as i64)).collect();
            if d >= 2 {
                let lx = s.laplacian(&x, d).unwrap();
                let qlx = s.multiply(&qe, 2, &lx, d - 2);
                axpy(&mut rhs, &q(1), &qlx);
            }
            assert_eq!(lhs, rhs, "m = {m}, d = {d}");
        }
    }
}

#[test]
fn harmonic_dimensions_at_k3_rank() {
    let g = hilbk3::bb_lattice::H2Lattice::k3(2).unwrap().full_gram();
    let s = SymSpace::new(g).unwrap();
    assert_eq!(s.dim_v(), 23);
    assert_eq!(s.harmonic_dimension(2).unwrap(), 276 - 1);
    assert_eq!(s.harmonic_dimension(3).unwrap(), 2300 - 23);
}

#[test]
fn isotropic_powers_span_harmonics() {
    // degree 2, dim 3: the squares of isotropic vectors span ker Δ
    let g = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let s = SymSpace::new(g.clone()).unwrap();
    let mut rng = fixtures::rng(3);
    let base = vec![q(1), q(0), q(0)];
    let mut span = hilbk3::linalg::Span::new(s.dimension(2));
    for _ in 0..20 {
        let a = fixtures::isotropic_through(&g, &base, &mut rng).unwrap();
        let a2 = s.power(&a, 2);
        assert!(s.laplacian(&a2, 2).unwrap().iter().all(Zero::is_zero));
        span.insert(&a2);
    }
    assert_eq!(span.dim(), s.harmonic_dimension(2).unwrap());
}
