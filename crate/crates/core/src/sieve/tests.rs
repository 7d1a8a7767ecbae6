use super::*;
use crate::ffpoly::PrimeField;
use crate::ring::RingDescriptor;
use crate::tuples::Tuple;

fn int_params(tuple: Vec<i64>, n: u64, theta: f64, delta: f64, d0: u64) -> SieveParams {
    SieveParams::new(
        RingDescriptor::Integers,
        Tuple::from_integers(tuple).unwrap(),
        n,
        theta,
        delta,
        d0,
        None,
    )
    .unwrap()
}

fn int_params_r(tuple: Vec<i64>, n: u64, r: f64, d0: u64) -> SieveParams {
    SieveParams::new(
        RingDescriptor::Integers,
        Tuple::from_integers(tuple).unwrap(),
        n,
        0.5,
        0.05,
        d0,
        Some(r),
    )
    .unwrap()
}

fn poly_params_r(q: u64, tuple: Vec<Vec<u64>>, n: u64, r: f64, d0: u64) -> SieveParams {
    let field = PrimeField::new(q).unwrap();
    let polys = tuple.into_iter().map(|c| Poly::new(field, c)).collect();
    SieveParams::new(
        RingDescriptor::poly_ring(q).unwrap(),
        Tuple::from_polys(polys).unwrap(),
        n,
        0.5,
        0.05,
        d0,
        Some(r),
    )
    .unwrap()
}

#[test]
fn v0_translates_coprime_to_w() {
    let p = int_params(vec![0, 2], 1000, 0.5, 0.05, 7);
    assert_eq!(p.w.norm(), 30);
    let v0 = match p.v0 {
        Element::Int(v) => v,
        _ => unreachable!(),
    };
    assert_eq!(v0, 11); // smallest valid residue per prime, CRT-combined
    for h in p.tuple.integer_values().unwrap() {
        assert_eq!(num_integer::gcd((v0 + h).unsigned_abs(), 30), 1);
    }
}

#[test]
fn v0_poly_translates_coprime_to_w() {
    let p = poly_params_r(3, vec![vec![], vec![1]], 3u64.pow(6), 9.0, 4);
    let (v0, w) = match (&p.v0, p.w.value()) {
        (Element::Poly(v), ModulusValue::Poly(w)) => (v.clone(), w.clone()),
        _ => unreachable!(),
    };
    for e in p.tuple.elements() {
        if let Element::Poly(h) = e {
            let translate = v0.add(h).unwrap();
            assert_eq!(translate.gcd(&w).unwrap().degree(), Some(0));
        }
    }
}

#[test]
fn norm2_primes_must_divide_w() {
    let err = SieveParams::new(
        RingDescriptor::Integers,
        Tuple::from_integers(vec![0, 2]).unwrap(),
        1000,
        0.5,
        0.05,
        2,
        None,
    );
    assert!(err.is_err());
}

#[test]
fn y_table_matches_direct_evaluation() {
    // Z, k=2, R=100: y at (7, 11) is 1 - (log 7 + log 11)/log 100
    let params = int_params_r(vec![0, 2], 10_000, 100.0, 3);
    let f = TestFunctionF::power(2, 1).unwrap();
    let support = SupportIndex::build(&params, 1 << 20).unwrap();
    let y = compute_y_from_f(&params, &support, &f);
    let pos = support
        .tuples
        .iter()
        .position(|t| {
            let n0 = support.moduli[t[0] as usize].norm();
            let n1 = support.moduli[t[1] as usize].norm();
            (n0, n1) == (7, 11)
        })
        .expect("(7,11) in support");
    let expect = 1.0 - (7f64.ln() + 11f64.ln()) / 100f64.ln();
    assert!((y[pos] - expect).abs() < 1e-14);
}

#[test]
fn lambda_k1_hand_sum() {
    // Z, k=1, R=4, w=1 is unreachable (D0 >= 3), so the hand sum uses the
    // same three-term structure with D0 = 3, w = 2, support {1, 3}:
    // lambda_1 = 1 + (1 - log3/log4)/2, lambda_3 = -3 (1 - log3/log4)/2.
    let params = int_params_r(vec![0], 100, 4.0, 3);
    let f = TestFunctionF::power(1, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    let log4 = 4f64.ln();
    let y3 = 1.0 - 3f64.ln() / log4;
    let idx_unit = ws
        .support
        .tuples
        .iter()
        .position(|t| ws.support.moduli[t[0] as usize].norm() == 1)
        .unwrap();
    let idx3 = ws
        .support
        .tuples
        .iter()
        .position(|t| ws.support.moduli[t[0] as usize].norm() == 3)
        .unwrap();
    assert!((ws.lambda[idx_unit] - (1.0 + y3 / 2.0)).abs() < 1e-12);
    assert!((ws.lambda[idx3] - (-3.0 * y3 / 2.0)).abs() < 1e-12);
    // the norm-3 modulus has no proper multiples below R = 4
    assert!((ws.lambda[idx3].abs() - 3.0 * ws.y[idx3] / 2.0).abs() < 1e-12);
}

#[test]
fn zero_y_gives_zero_lambda() {
    let params = int_params_r(vec![0, 2], 1000, 10.0, 3);
    let support = SupportIndex::build(&params, 1 << 20).unwrap();
    let zeros = vec![0.0; support.len()];
    assert!(compute_lambda_from_y(&support, &zeros).iter().all(|&v| v == 0.0));
    assert!(invert_lambda_to_y(&support, &zeros).iter().all(|&v| v == 0.0));
}

#[test]
fn roundtrip_integers() {
    let params = int_params_r(vec![0, 2], 10_000, 30.0, 5);
    let f = TestFunctionF::power(2, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    assert!(ws.roundtrip_error() < 1e-12, "err = {}", ws.roundtrip_error());
}

#[test]
fn roundtrip_poly() {
    let params = poly_params_r(3, vec![vec![], vec![1]], 3u64.pow(6), 27.0, 5);
    let f = TestFunctionF::power(2, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    assert!(ws.roundtrip_error() < 1e-12, "err = {}", ws.roundtrip_error());
}

#[test]
fn roundtrip_random_tables() {
    // the transforms are inverse on arbitrary tables, not only F-induced ones
    let params = int_params_r(vec![0, 4], 10_000, 26.0, 5);
    let support = SupportIndex::build(&params, 1 << 20).unwrap();
    let mut state = 0xfeedface_u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
    };
    for _ in 0..50 {
        let lambda: Vec<f64> = (0..support.len()).map(|_| next()).collect();
        let y = invert_lambda_to_y(&support, &lambda);
        let back = compute_lambda_from_y(&support, &y);
        let scale = lambda.iter().fold(1e-300, |a: f64, v| a.max(v.abs()));
        for (a, b) in lambda.iter().zip(&back) {
            assert!((a - b).abs() / scale < 1e-10);
        }
    }
}

#[test]
fn roundtrip_k1() {
    let params = int_params_r(vec![0], 1000, 10.0, 3);
    let f = TestFunctionF::power(1, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    assert!(ws.roundtrip_error() < 1e-12);
}

#[test]
fn ym_unit_entry_equals_lambda_unit_for_k1() {
    let params = int_params_r(vec![0], 1000, 10.0, 3);
    let f = TestFunctionF::power(1, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    let ym = compute_ym(&ws, 0).unwrap();
    let idx_unit = ws
        .support
        .tuples
        .iter()
        .position(|t| t[0] == 0)
        .unwrap();
    // only d_1 = 1 contributes, with prefactor 1
    assert!((ym[idx_unit] - ws.lambda[idx_unit]).abs() < 1e-12);
    // entries with r_m != unit vanish
    for (t, &v) in ws.support.tuples.iter().zip(&ym) {
        if t[0] != 0 {
            assert_eq!(v, 0.0);
        }
    }
}

#[test]
fn ym_matches_exhaustive_definition() {
    // k=2 over F_3[t], R=9: compare against a direct evaluation of the sum
    let params = poly_params_r(3, vec![vec![], vec![1]], 3u64.pow(6), 9.0, 4);
    let f = TestFunctionF::power(2, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    for m in 0..2 {
        let ym = compute_ym(&ws, m).unwrap();
        for (ri, rt) in ws.support.tuples.iter().enumerate() {
            if rt[m] != 0 {
                assert_eq!(ym[ri], 0.0);
                continue;
            }
            // direct: sum over d-tuples with r_i | d_i and d_m = unit
            let mut acc = 0.0;
            for (di, dt) in ws.support.tuples.iter().enumerate() {
                if dt[m] != 0 || ws.lambda[di] == 0.0 {
                    continue;
                }
                let divides_all = (0..2).all(|slot| {
                    ws.support.divisors[dt[slot] as usize].contains(&rt[slot])
                });
                if divides_all {
                    let phi_prod: f64 = dt
                        .iter()
                        .map(|&i| ws.support.phis[i as usize] as f64)
                        .product();
                    acc += ws.lambda[di] / phi_prod;
                }
            }
            let pref: f64 = rt
                .iter()
                .map(|&i| ws.support.mus[i as usize] as f64 * ws.support.g_value(i))
                .product();
            let want = pref * acc;
            assert!(
                (ym[ri] - want).abs() <= 1e-12 * want.abs().max(1.0),
                "m={m} r={rt:?}: {} vs {}",
                ym[ri],
                want
            );
        }
    }
}

#[test]
fn ym_clean_over_f2_with_d0_3() {
    // over F_2[t] admissibility for a pair forces h_1 = h_2 mod t(t+1);
    // with D0 = 3 the norm-2 primes divide w and g stays positive
    let params = poly_params_r(2, vec![vec![], vec![0, 1, 1]], 2u64.pow(7), 8.0, 3);
    let f = TestFunctionF::power(2, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    assert!(ws.support.len() > 1);
    assert!(compute_ym(&ws, 0).is_ok());
    // and D0 = 2 is rejected outright for this ring
    let field = PrimeField::new(2).unwrap();
    let polys = vec![Poly::new(field, vec![]), Poly::new(field, vec![0, 1, 1])];
    let err = SieveParams::new(
        RingDescriptor::poly_ring(2).unwrap(),
        Tuple::from_polys(polys).unwrap(),
        2u64.pow(7),
        0.5,
        0.05,
        2,
        Some(8.0),
    );
    assert!(err.is_err());
}

#[test]
fn ym_lemma_approximation_loose() {
    // y^(m) should track sum_a y[r with a in slot m] / phi(a) within 25%
    // on instances with D0 >= 11
    let params = int_params_r(vec![0, 2], 100_000, 40.0, 11);
    let f = TestFunctionF::power(2, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    let ym = compute_ym(&ws, 1).unwrap();
    for (ri, rt) in ws.support.tuples.iter().enumerate() {
        if rt[1] != 0 || ws.y[ri] == 0.0 {
            continue;
        }
        let mut main = 0.0;
        for (si, st) in ws.support.tuples.iter().enumerate() {
            if st[0] == rt[0] {
                main += ws.y[si] / ws.support.phis[st[1] as usize] as f64;
            }
        }
        let rel = (ym[ri] - main).abs() / main.abs().max(1e-12);
        assert!(rel < 0.25, "r={rt:?}: ym={} main={main} rel={rel}", ym[ri]);
    }
}

#[test]
fn brute_force_zero_table() {
    let params = int_params_r(vec![0, 2], 2000, 10.0, 3);
    let f = TestFunctionF::power(2, 1).unwrap();
    let mut ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    ws.lambda.iter_mut().for_each(|v| *v = 0.0);
    let (s1, s2) = brute_force_sums(&ws, 1 << 24, 2).unwrap();
    assert_eq!((s1, s2), (0.0, 0.0));
}

#[test]
fn brute_force_unit_support_counts_progression() {
    // k=1, tuple (0), R = 2: support is the unit tuple only, so
    // S1 counts the progression and S2 counts its primes
    let params = int_params_r(vec![0], 20, 2.0, 3);
    let f = TestFunctionF::power(1, 0).unwrap(); // F = 1 on the simplex
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    assert_eq!(ws.support.len(), 1);
    let lam = ws.lambda[0];
    let (s1, s2) = brute_force_sums(&ws, 1 << 24, 1).unwrap();
    // alpha in (20, 40], alpha = 1 mod 2: the 10 odd values, 4 primes
    assert!((s1 - 10.0 * lam * lam).abs() < 1e-12);
    assert!((s2 - 4.0 * lam * lam).abs() < 1e-12);
}

#[test]
fn s2_at_most_k_s1() {
    let params = int_params_r(vec![0, 2, 6], 30_000, 20.0, 5);
    let f = TestFunctionF::power(3, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    let (s1, s2) = brute_force_sums(&ws, 1 << 24, 4).unwrap();
    assert!(s1 >= 0.0 && s2 >= 0.0);
    assert!(s2 <= 3.0 * s1 + 1e-9);
}

#[test]
fn sums_identical_across_thread_counts() {
    let params = int_params_r(vec![0, 2], 50_000, 15.0, 5);
    let f = TestFunctionF::power(2, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    let a = brute_force_sums(&ws, 1 << 24, 1).unwrap();
    let b = brute_force_sums(&ws, 1 << 24, 8).unwrap();
    assert_eq!(a.0.to_bits(), b.0.to_bits());
    assert_eq!(a.1.to_bits(), b.1.to_bits());

    let params = poly_params_r(3, vec![vec![], vec![1]], 3u64.pow(8), 9.0, 4);
    let f = TestFunctionF::power(2, 1).unwrap();
    let ws = WeightSystem::from_test_function(params, &f, 1 << 20).unwrap();
    let a = brute_force_sums(&ws, 1 << 24, 1).unwrap();
    let b = brute_force_sums(&ws, 1 << 24, 8).unwrap();
    assert_eq!(a.0.to_bits(), b.0.to_bits());
    assert_eq!(a.1.to_bits(), b.1.to_bits());
}

#[test]
fn prediction_plugin_k1_constant() {
    // k=1, F = 1: I = J = 1, so S1_pred = phi(w) |A| c_A log R / w^2
    let params = int_params_r(vec![0], 10_000, 10.0, 3);
    let f = TestFunctionF::power(1, 0).unwrap();
    let (s1, _s2) = predicted_main_terms(&params, &f).unwrap();
    let expect = 1.0 * 10_000.0 * 10f64.ln() / 4.0;
    assert!((s1 - expect).abs() < 1e-9 * expect);
}

#[test]
fn prediction_poly_positive() {
    let params = poly_params_r(3, vec![vec![], vec![1]], 3u64.pow(8), 9.0, 4);
    let f = TestFunctionF::power(2, 1).unwrap();
    let (s1, s2) = predicted_main_terms(&params, &f).unwrap();
    assert!(s1 > 0.0 && s2 > 0.0);
}

#[test]
fn zero_test_function_predicts_zero() {
    let params = int_params_r(vec![0, 2], 10_000, 10.0, 3);
    let basis = SymmetricBasis::standard(2, 1).unwrap();
    let f = TestFunctionF::from_coefficients(basis, vec![0.0, 0.0]).unwrap();
    let (s1, s2) = predicted_main_terms(&params, &f).unwrap();
    assert_eq!((s1, s2), (0.0, 0.0));
}

#[test]
fn ggpy_zero_weight() {
    // G = 1 - x at x = 1 kills the top; G = 0 overall comes from a zero
    // coefficient vector, checked through the zero test function above.
    // Here: lhs and rhs vanish together when the ratio inputs are scaled
    // by zero is trivial, so check instead the frozen oracle values.
    let s = ggpy_sum_check(RingDescriptor::Integers, GFunction::One, 100_000, 1 << 20).unwrap();
    // direct-enumeration value, frozen: the constant-order term pushes the
    // ratio well above 1 at this scale
    assert!((s.lhs - 12.8455).abs() < 2e-3, "lhs = {}", s.lhs);
    assert!((s.ratio - 1.1157).abs() < 2e-3, "ratio = {}", s.ratio);
    assert!((s.singular_series - 1.0).abs() < 1e-9);

    let s = ggpy_sum_check(RingDescriptor::Integers, GFunction::X, 100_000, 1 << 20).unwrap();
    assert!((s.ratio - 1.0115).abs() < 2e-3, "ratio = {}", s.ratio);
}

#[test]
fn ggpy_poly_matches_generating_function_oracle() {
    let ring = RingDescriptor::poly_ring(3).unwrap();
    let s = ggpy_sum_check(ring, GFunction::One, 3u64.pow(8), 1 << 20).unwrap();
    // oracle: per-degree sums from the Euler-product generating function
    let oracle = f3_squarefree_g_sums(8);
    let lhs_oracle: f64 = oracle.iter().sum();
    assert!((s.lhs - lhs_oracle).abs() < 1e-9, "{} vs {lhs_oracle}", s.lhs);
    assert!((s.ratio - 1.0793).abs() < 2e-3, "ratio = {}", s.ratio);

    let s = ggpy_sum_check(ring, GFunction::X, 3u64.pow(8), 1 << 20).unwrap();
    let lhs_oracle: f64 = oracle
        .iter()
        .enumerate()
        .map(|(d, v)| v * d as f64 / 8.0)
        .sum();
    assert!((s.lhs - lhs_oracle).abs() < 1e-9);
}

/// Independent route: expand prod_e (1 + u^e/(3^e - 1))^{N_e} to degree cap.
fn f3_squarefree_g_sums(cap: usize) -> Vec<f64> {
    let mut acc = vec![0.0f64; cap];
    acc[0] = 1.0;
    for e in 1..cap {
        let ne = crate::ffpoly::count_irreducibles(3, e as u32).unwrap();
        let ge = 1.0 / (3f64.powi(e as i32) - 1.0);
        let mut coef = vec![1.0f64];
        let mut c = 1.0f64;
        for j in 1..=cap / e {
            c *= (ne as f64 - (j as f64 - 1.0)) / j as f64;
            coef.push(c * ge.powi(j as i32));
        }
        let mut next = vec![0.0f64; cap];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &cf) in coef.iter().enumerate() {
                if i + j * e < cap {
                    next[i + j * e] += a * cf;
                }
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn ggpy_rejects_bad_z() {
    let ring = RingDescriptor::poly_ring(3).unwrap();
    assert!(ggpy_sum_check(ring, GFunction::One, 100, 1 << 20).is_err()); // not a power of 3
    assert!(ggpy_sum_check(RingDescriptor::Integers, GFunction::One, 1, 1 << 20).is_err());
}

#[test]
fn proposition_trend_poly_ring() {
    // same pre-asymptotic contraction toward 1 over F_3[t], tuple (0, 1)
    let mut ratios = Vec::new();
    for n in [3u64.pow(8), 3u64.pow(10)] {
        let params = SieveParams::new(
            RingDescriptor::poly_ring(3).unwrap(),
            Tuple::from_polys(vec![
                Poly::new(PrimeField::new(3).unwrap(), vec![]),
                Poly::new(PrimeField::new(3).unwrap(), vec![1]),
            ])
            .unwrap(),
            n,
            0.5,
            0.05,
            4,
            None,
        )
        .unwrap();
        let f = TestFunctionF::power(2, 1).unwrap();
        let ws = WeightSystem::from_test_function(params.clone(), &f, 1 << 20).unwrap();
        let (s1, _) = brute_force_sums(&ws, 1 << 24, 4).unwrap();
        let (p1, _) = predicted_main_terms(&params, &f).unwrap();
        ratios.push(s1 / p1);
    }
    assert!((ratios[0] - 53.39).abs() < 0.5, "n=3^8 ratio {}", ratios[0]);
    assert!((ratios[1] - 34.17).abs() < 0.5, "n=3^10 ratio {}", ratios[1]);
    assert!((ratios[1] - 1.0).abs() < (ratios[0] - 1.0).abs());
}

#[test]
fn proposition_trend_instrumented() {
    // the pre-asymptotic ratios shrink toward 1 as N grows; frozen from the
    // enumeration oracle (see the acceptance suite for the band check)
    let mut ratios = Vec::new();
    for n in [10_000u64, 100_000] {
        let params = int_params(vec![0, 2], n, 0.5, 0.05, 7);
        let f = TestFunctionF::power(2, 1).unwrap();
        let ws = WeightSystem::from_test_function(params.clone(), &f, 1 << 20).unwrap();
        let (s1, _) = brute_force_sums(&ws, 1 << 24, 4).unwrap();
        let (p1, _) = predicted_main_terms(&params, &f).unwrap();
        ratios.push(s1 / p1);
    }
    assert!((ratios[0] - 49.83).abs() < 0.5, "N=1e4 ratio {}", ratios[0]);
    assert!((ratios[1] - 32.05).abs() < 0.5, "N=1e5 ratio {}", ratios[1]);
    assert!((ratios[1] - 1.0).abs() < (ratios[0] - 1.0).abs());
}
