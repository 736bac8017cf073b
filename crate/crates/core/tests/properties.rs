use num_bigint::BigInt;
use proptest::prelude::*;

use posicat::dyck::{count_avoiding_paths, synthesize};
use posicat::fset::is_centrally_symmetric;
use posicat::harness::{
    census_report, enumerate_bounded, verify_engine, verify_main_theorem, verify_structure,
    verify_synthesis, VerificationReport,
};
use posicat::paths::nu_bar;
use posicat::{
    inversion_multiset, BoundedAffinePerm, Engine, Frame, IntPoly, LatticeMultiset, LatticeVec,
};

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..20, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
}

/// A uniformly random element of Theta with period in `2..=max_n`.
fn theta(max_n: usize) -> impl Strategy<Value = BoundedAffinePerm> {
    (2..=max_n)
        .prop_flat_map(|n| Just((1..n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|rest| {
            let mut cycle = vec![0];
            cycle.extend(rest);
            BoundedAffinePerm::from_cycle(&cycle).unwrap()
        })
}

fn bounded(n: usize) -> impl Strategy<Value = BoundedAffinePerm> {
    prop::sample::select(enumerate_bounded(n))
}

/// Ascending coefficients of the Gaussian binomial `[n choose k]_q`.
fn q_binomial(n: usize, k: usize) -> Vec<i64> {
    let mut rows = vec![vec![vec![1i64]; 1]; n + 1];
    for m in 1..=n {
        rows[m] = (0..=m)
            .map(|j| {
                if j == 0 || j == m {
                    return vec![1];
                }
                // [m, j] = [m-1, j-1] + q^j [m-1, j]
                let (a, b) = (&rows[m - 1][j - 1], &rows[m - 1][j]);
                let mut out = vec![0; a.len().max(b.len() + j)];
                for (t, x) in a.iter().enumerate() {
                    out[t] += x;
                }
                for (t, x) in b.iter().enumerate() {
                    out[t + j] += x;
                }
                out
            })
            .collect();
    }
    rows[n][k].clone()
}

fn brute_dyck(k: i64, n: i64, forbidden: &[(i64, i64)]) -> u64 {
    let m = n - k;
    (0u64..1 << n)
        .filter(|w| w.count_ones() as i64 == k)
        .filter(|w| {
            let (mut a, mut b) = (0i64, 0i64);
            (0..n).all(|t| {
                if w >> t & 1 == 1 { a += 1 } else { b += 1 }
                a * m >= k * b && !forbidden.contains(&(a, b))
            })
        })
        .count() as u64
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in -5i64..5) {
        let x = BigInt::from(x);
        prop_assert_eq!((&a * &b).eval_at(&x), a.eval_at(&x) * b.eval_at(&x));
        prop_assert_eq!((&a + &b).eval_at(&x), a.eval_at(&x) + b.eval_at(&x));
    }

    #[test]
    fn poly_json_round_trip(a in poly()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), a);
    }

    #[test]
    fn perm_text_and_json_round_trip(f in theta(9)) {
        prop_assert_eq!(f.to_string().parse::<BoundedAffinePerm>().unwrap(), f.clone());
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<BoundedAffinePerm>(&s).unwrap(), f);
    }

    #[test]
    fn theta_elements_are_n_cycles_with_integral_k(f in theta(9)) {
        prop_assert!(f.is_theta());
        prop_assert!(f.reduction().is_n_cycle());
        prop_assert!(f.k() >= 1 && f.k() < f.n() as i64);
        let sum: i64 = (0..f.n() as i64).map(|i| f.apply(i) - i).sum();
        prop_assert_eq!(sum, f.k() * f.n() as i64);
    }

    #[test]
    fn inverse_undoes_apply(f in theta(9), x in -50i64..50) {
        prop_assert_eq!(f.apply_inverse(f.apply(x)), x);
        prop_assert_eq!(f.apply(x + f.n() as i64), f.apply(x) + f.n() as i64);
    }

    #[test]
    fn rotation_is_an_involution(f in theta(9)) {
        let g = f.rotate_180().unwrap();
        prop_assert_eq!(g.k(), f.k());
        prop_assert_eq!(g.rotate_180().unwrap(), f);
    }

    #[test]
    fn conjugation_is_an_involution(f in bounded(5), i in 0i64..5) {
        let g = f.conjugate_s(i).unwrap();
        if let Some(h) = g.bounded() {
            let back = h.conjugate_s(i).unwrap();
            prop_assert_eq!(back.bounded(), Some(f));
            prop_assert_eq!(back.length_delta, -g.length_delta);
        }
    }

    #[test]
    fn inversion_multiset_shape(f in theta(8)) {
        let fp = inversion_multiset(&f, Frame::Sheared).unwrap();
        prop_assert_eq!(fp.total(), f.length());
        prop_assert!(is_centrally_symmetric(&fp));
        prop_assert_eq!(fp.to_frame(Frame::Rect).to_frame(Frame::Sheared), fp.clone());
        let back = LatticeMultiset::from_json(&fp.to_json()).unwrap();
        prop_assert_eq!(back, fp);
    }

    #[test]
    fn catalan_is_shift_invariant(f in theta(7)) {
        let mut engine = Engine::new();
        let c = engine.compute_c(&f).unwrap();
        prop_assert_eq!(engine.compute_c(&f.cyclic_shift()).unwrap(), c.clone());
        let rt = engine.compute_rtilde(&f).unwrap();
        prop_assert_eq!(rt.eval_at(&BigInt::from(1)), BigInt::from(c));
        prop_assert_eq!(engine.compute_rtilde(&f.cyclic_shift()).unwrap(), rt);
    }

    #[test]
    fn nu_bar_is_a_residue(f in theta(9)) {
        let d = num_integer::gcd(f.k(), f.n() as i64);
        let v = nu_bar(&f).unwrap();
        prop_assert!((0..d).contains(&v));
    }

    #[test]
    fn dyck_count_matches_brute_force(
        (k, n) in (3i64..=8).prop_flat_map(|n| (1..n, Just(n))),
        mask in any::<u32>(),
    ) {
        let cells: Vec<(i64, i64)> = (1..k).flat_map(|a| (1..n - k).map(move |b| (a, b))).collect();
        let forbidden: Vec<(i64, i64)> = cells
            .iter()
            .enumerate()
            .filter(|(t, _)| mask >> (t % 32) & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let set = LatticeMultiset::from_points(
            Frame::Rect,
            k,
            n,
            forbidden.iter().map(|&(a, b)| LatticeVec { a, b }),
        ).unwrap();
        prop_assert_eq!(count_avoiding_paths(k, n, &set), brute_dyck(k, n, &forbidden).into());
    }

    #[test]
    fn synthesis_reproduces_realized_sets(f in theta(8)) {
        let fset = inversion_multiset(&f, Frame::Rect).unwrap();
        prop_assume!(fset.is_set());
        let s = synthesize(&fset).unwrap();
        prop_assert_eq!(inversion_multiset(&s.perm, Frame::Rect).unwrap(), fset);
        prop_assert!(s.profile.validate().is_valid());
    }
}

#[test]
fn rtilde_of_top_cell_is_the_rational_q_catalan() {
    let mut engine = Engine::new();
    for n in 2..=10usize {
        for k in 1..n {
            if num_integer::gcd(k, n) != 1 {
                continue;
            }
            let f = BoundedAffinePerm::translation(k as i64, n).unwrap();
            let bracket_n = IntPoly::from_i64s(&vec![1; n]);
            let expected = IntPoly::from_i64s(&q_binomial(n, k)).exact_div(&bracket_n).unwrap();
            assert_eq!(engine.compute_rtilde(&f).unwrap(), expected, "({k},{n})");
        }
    }
}

fn strip(mut r: VerificationReport) -> String {
    r.elapsed = 0.0;
    serde_json::to_string(&r).unwrap()
}

#[test]
fn parallel_and_serial_reports_agree() {
    type Suite = fn(usize, usize) -> VerificationReport;
    let suites: [Suite; 5] = [
        verify_main_theorem,
        verify_synthesis,
        verify_engine,
        verify_structure,
        census_report,
    ];
    for suite in suites {
        assert_eq!(strip(suite(6, 1)), strip(suite(6, 4)));
    }
}
