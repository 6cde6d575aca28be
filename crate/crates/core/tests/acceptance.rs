//! Acceptance suite: one line per criterion, with its runtime and limit.
//! Every comparison is exact; the tolerance is zero throughout.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use expfun_core::charclass::{delta_indecomposable, det_twist_coeffs};
use expfun_core::expfunctor::{build_model, check_associativity, check_kappa_iso, functor_dims_by_classes, recover_r};
use expfun_core::linalg::SparseVec;
use expfun_core::rmatrix::{box_sum, box_tensor};
use expfun_core::scalar::{rational, Rational};
use expfun_core::symgroup::{binomial, Permutation};
use expfun_core::thoma::{character, character_cycle, extract, invariant_dimension, DimensionMethod};
use expfun_core::{Caps, RMatrix};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// `e_n` of a list of integers by the recurrence over its elements.
fn elementary(xs: &[u64], n: usize) -> u128 {
    let mut e = vec![0u128; n + 1];
    e[0] = 1;
    for &x in xs {
        for k in (1..=n).rev() {
            e[k] += e[k - 1] * x as u128;
        }
    }
    e[n]
}

fn repeated(b: &[u64], times: usize) -> Vec<u64> {
    b.iter().flat_map(|&x| std::iter::repeat_n(x, times)).collect()
}

fn nonempty(max: u64) -> Vec<Vec<u64>> {
    multisets(max).into_iter().filter(|b| !b.is_empty()).collect()
}

fn criterion_1() -> Outcome {
    let bs: [&[u64]; 5] = [&[1], &[2], &[3], &[1, 1], &[1, 2]];
    for b in bs {
        let k1: Rational = b.iter().map(|&x| rational(x as i64, x as i64 + 1)).sum();
        let k2: Rational = b.iter().map(|&x| rational(x as i64, 2 * (x as i64 + 1).pow(2))).sum();
        let got = delta_indecomposable(b, 3);
        ensure(got == vec![k1.clone(), k2.clone()], || format!("b = {b:?}: got {got:?}, expected [{k1}, {k2}]"))?;
    }
    Ok(format!("{} multisets", bs.len()))
}

fn criterion_2() -> Outcome {
    for n in 2..=6 {
        let got = det_twist_coeffs(n);
        let mut expected = vec![Rational::zero(); n - 1];
        expected[0] = Rational::one();
        ensure(got == expected, || format!("n = {n}: got {got:?}"))?;
    }
    Ok("n = 2..6".into())
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for a in multisets(3) {
        for b in multisets(4) {
            if a.is_empty() && b.is_empty() {
                continue;
            }
            let p = params(&a, &b);
            let r = nf(&a, &b);
            let got = extract(&r, false).map_err(err)?;
            ensure(got == p, || format!("{p}: extracted {got}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} parameter sets, d ≤ 7"))
}

fn criterion_4() -> Outcome {
    let caps = Caps::default();
    let all = all_params(4, 4, 4);
    let mut count = 0;
    for p in &all {
        for q in &all {
            if p.d() + q.d() > 4 {
                continue;
            }
            let (r, s) = (normal_form_of(p), normal_form_of(q));
            let sum = box_sum(&r, &s);
            let dim = |x: u64| Rational::from_integer(x.into());
            for n in 2..=6u32 {
                // cycle values of the sum through the dense sweep, parts through transfer matrices
                let lhs = character(&sum, &Permutation::long_cycle(n as usize), &caps).map_err(err)? * dim(p.d() + q.d()).pow(n as i32);
                let rhs = character_cycle(&r, n as usize).map_err(err)? * dim(p.d()).pow(n as i32)
                    + character_cycle(&s, n as usize).map_err(err)? * dim(q.d()).pow(n as i32);
                ensure(lhs == rhs, || format!("{p} ⊞ {q}, n = {n}: {lhs} ≠ {rhs}"))?;
            }
            let got = extract(&sum, false).map_err(err)?;
            ensure(got == p.union(q), || format!("{p} ⊞ {q}: extracted {got}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs, n = 2..6"))
}

fn normal_form_of(p: &expfun_core::ThomaParams) -> RMatrix {
    expfun_core::rmatrix::normal_form(p).unwrap()
}

fn criterion_5() -> Outcome {
    let caps = Caps::default();
    let mut count = 0;
    for b in nonempty(3) {
        let r = nf(&[], &b);
        for k in 1..=2usize {
            let rt = box_tensor(&r, &RMatrix::flip(k));
            for n in 0..=5 {
                let burnside = invariant_dimension(&rt, n, DimensionMethod::Burnside, &caps).map_err(err)?;
                let rank = invariant_dimension(&rt, n, DimensionMethod::Rank, &caps).map_err(err)?;
                let closed = expfun_core::thoma::e_n_closed_form(&b, k as u64, n);
                let oracle = elementary(&repeated(&b, k), n);
                ensure(
                    burnside as u128 == oracle && rank as u128 == oracle && closed == oracle,
                    || format!("b = {b:?}, V_dim = {k}, n = {n}: burnside {burnside}, rank {rank}, closed {closed}, e_n {oracle}"),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, ambient up to 6^5"))
}

fn criterion_6() -> Outcome {
    let caps = Caps::default();
    let mut count = 0;
    for b in nonempty(3) {
        let r = nf(&[], &b);
        for k in 0..=3usize {
            let dims = functor_dims_by_classes(&r, k).map_err(err)?;
            let total: u128 = dims.iter().map(|&x| x as u128).sum();
            let expected: u128 = b.iter().map(|&x| (1 + x as u128).pow(k as u32)).product();
            ensure(total == expected, || format!("b = {b:?}, k = {k}: Σ dims {total} ≠ {expected}"))?;
            // where the ambient space fits, the explicit invariant bases agree degree by degree
            let d = b.iter().sum::<u64>() as usize * k;
            if k > 0 && d.pow(dims.len() as u32 - 1) <= 1296 {
                let model = build_model(&r, k, dims.len() - 1, &caps).map_err(err)?;
                let explicit: Vec<u64> = model.dims().iter().map(|&x| x as u64).collect();
                ensure(explicit == dims, || format!("b = {b:?}, k = {k}: bases {explicit:?}, class sums {dims:?}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} (b, k) pairs"))
}

fn criterion_7() -> Outcome {
    let caps = Caps::default();
    let mut g = ChaCha8Rng::seed_from_u64(7);
    for t in 0..200 {
        let r = random_r(3, &mut g);
        let n = g.gen_range(2..=5);
        let s = random_perm(n, &mut g);
        let (w1, w2) = (s.adjacent_word(), alternative_word(&s, &mut g));
        ensure(w1 != w2 && Permutation::from_word(n, &w2).map_err(err)? == s, || format!("triple {t}: words not distinct"))?;
        let m1 = r.rep_matrix_of_word(n, &w1, &caps).map_err(err)?;
        let m2 = r.rep_matrix_of_word(n, &w2, &caps).map_err(err)?;
        ensure(m1 == m2, || format!("triple {t}: d = {}, n = {n}, σ = {s}: matrices differ", r.d()))?;
    }
    for t in 0..100 {
        let r = random_r(3, &mut g);
        let n = g.gen_range(2..=5);
        let (s1, s2) = (random_perm(n, &mut g), random_perm(n, &mut g));
        let prod = r.rep_matrix(n, &s1.compose(&s2), &caps).map_err(err)?;
        for x in 0..prod.cols() {
            let col = r.rep_apply_sparse(n, &s1, &r.rep_apply_sparse(n, &s2, &SparseVec::basis(x)));
            ensure(col == prod.sparse_column(x), || format!("pair {t}: ρ(σσ′) ≠ ρ(σ)ρ(σ′) in column {x}"))?;
        }
    }
    Ok("200 word pairs, 100 products".into())
}

fn criterion_8() -> Outcome {
    let caps = Caps::default();
    let mut count = 0;
    for b in nonempty(3) {
        let r = nf(&[], &b);
        let model = build_model(&r, 2, 2, &caps).map_err(err)?;
        let got = recover_r(&model, &caps).map_err(err)?;
        ensure(&got == r.matrix(), || format!("b = {b:?}: recovered matrix differs"))?;
        count += 1;
    }
    Ok(format!("{count} multisets"))
}

fn criterion_9() -> Outcome {
    let caps = Caps::default();
    let (mut kappa, mut assoc) = (0, 0);
    for b in nonempty(2) {
        let r = nf(&[], &b);
        for v1 in 1..=2 {
            for v2 in 1..=2 {
                for n in 0..=3 {
                    let report = check_kappa_iso(&r, v1, v2, n, &caps).map_err(err)?;
                    ensure(report.passed(), || format!("b = {b:?}, V = ({v1}, {v2}), n = {n}: {:?}", report.failures))?;
                    for block in &report.blocks {
                        let expected = Rational::from_integer(binomial(n as u64, block.i as u64).into());
                        ensure(
                            block.domain_dim == 0 || block.isometry_constant.as_ref() == Some(&expected),
                            || format!("b = {b:?}, Φ_{{{},{}}}: constant {:?}", block.i, block.j, block.isometry_constant),
                        )?;
                    }
                    kappa += 1;
                }
                for v3 in 1..=2 {
                    for i in 0..=3 {
                        for j in 0..=3 - i {
                            for k in 0..=3 - i - j {
                                let report = check_associativity(&r, (v1, v2, v3), (i, j, k), &caps).map_err(err)?;
                                ensure(report.holds(), || {
                                    format!("b = {b:?}, V = ({v1}, {v2}, {v3}), degrees ({i}, {j}, {k}): {:?}", report.mismatch)
                                })?;
                                assoc += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{kappa} κ instances, {assoc} associativity instances"))
}

fn criterion_10() -> Outcome {
    let caps = Caps::default();
    let mut g = ChaCha8Rng::seed_from_u64(10);
    let mut rs: Vec<RMatrix> = all_params(3, 3, 3).iter().map(normal_form_of).collect();
    let conjugated: Vec<RMatrix> = rs.iter().map(|r| r.conjugate(&random_unitary(r.d(), &mut g)).unwrap()).collect();
    rs.extend(conjugated);
    let mut count = 0;
    for r in &rs {
        let cycles: Vec<Rational> = (0..=5).map(|l| character_cycle(r, l)).collect::<Result<_, _>>().map_err(err)?;
        for n in 1..=5 {
            for s in all_perms(n) {
                let lhs = character(r, &s, &caps).map_err(err)?;
                let rhs: Rational = s.cycle_type().parts().iter().map(|&l| cycles[l].clone()).product();
                ensure(lhs == rhs, || format!("d = {}, σ = {s}: {lhs} ≠ {rhs}", r.d()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{} R-matrices, {count} (R, σ) pairs", rs.len()))
}

fn criterion_11() -> Outcome {
    let mut count = 0;
    for b in nonempty(2) {
        for du in 1..=2 {
            let t = box_tensor(&nf(&[], &b), &RMatrix::flip(du));
            let got = extract(&t, false).map_err(err)?;
            let expected = params(&[], &repeated(&b, du));
            ensure(got == expected, || format!("b = {b:?}, d_U = {du}: extracted {got}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("δ coefficients of indecomposable blocks", 1, criterion_1),
        ("determinant twist is a₃", 1, criterion_2),
        ("Thoma round trip", 30, criterion_3),
        ("box-sum union rule", 60, criterion_4),
        ("three-way dimension agreement", 120, criterion_5),
        ("functor dimension law", 60, criterion_6),
        ("representation well-definedness", 60, criterion_7),
        ("R recovery", 120, criterion_8),
        ("κ isometry and associativity", 120, criterion_9),
        ("character multiplicativity", 60, criterion_10),
        ("box-tensor parameter repetition", 60, criterion_11),
    ];
    // optional criterion numbers on the command line select a subset
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        if !selected.is_empty() && !selected.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "[{tag}] criterion {}: {name}: {detail} ({:.2} s, limit {limit} s, tolerance exact)",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {ran} criteria passed", ran - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
