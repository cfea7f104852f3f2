//! The nine acceptance criteria. Runs without the libtest harness so that
//! every criterion prints its own PASS/FAIL line.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qsl2_core::basis::{
    decompose, enumerate_basis, localize, oracle_decompose, recompose, verify_freeness, BasisIndex,
    Decomposition, LocalChart,
};
use qsl2_core::cyclo::p_coeff;
use qsl2_core::frobenius::{closure_diagnostic, lift, Side};
use qsl2_core::qalgebra::{
    antipode_holds, coassociativity_holds, coproduct, counit_holds, ClassicalElement, ClassicalGen, Gen,
    QElement, QMonomial, Tensor,
};
use qsl2_core::selftest::{random_element, random_word};
use qsl2_core::RootSpec;

use support::{product_expansion, spec, WordOracle};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn reduced_monomials_below(l: u32) -> Vec<QMonomial> {
    let mut out = Vec::new();
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    let m = QMonomial::new(a, b, c, d);
                    if m.is_reduced() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn rank_and_freeness() -> Outcome {
    for (l, n) in [(2, 8), (3, 27), (5, 125)] {
        let count = enumerate_basis(l).map_err(|e| e.to_string())?.len();
        ensure(count == n, || format!("l={l}: {count} generators"))?;
    }
    for l in [2, 3] {
        let left = verify_freeness(l, Side::Left, 2).map_err(|e| e.to_string())?;
        ensure(left.kernel_dimension == 0 && left.all_decomposed, || format!("l={l} left: {left:?}"))?;
        let right = verify_freeness(l, Side::Right, 2).map_err(|e| e.to_string())?;
        ensure(right.kernel_dimension == 0, || format!("l={l} right: {right:?}"))?;
    }
    Ok(())
}

fn decompose_matches_oracle() -> Outcome {
    for l in [2, 3] {
        let s = spec(l);
        for m in reduced_monomials_below(l as u32) {
            let x = QElement::monomial(&s, m);
            for side in [Side::Left, Side::Right] {
                let ours = decompose(&x, side).map_err(|e| e.to_string())?;
                let oracle = oracle_decompose(&x, side, None).map_err(|e| format!("{m}: {e}"))?;
                ensure(ours == oracle, || format!("l={l} {m} {}", side.name()))?;
            }
        }
    }
    Ok(())
}

fn roundtrip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    for l in [2, 3, 5] {
        let s = spec(l);
        let mut words = WordOracle::new(&s);
        for i in 0..200 {
            let side = if i % 2 == 0 { Side::Left } else { Side::Right };
            let x = random_element(&s, &mut rng, 3, 2 * l as u32);
            let d = decompose(&x, side).map_err(|e| e.to_string())?;
            ensure(recompose(&d) == x, || format!("l={l}: {x}"))?;
            if l < 5 && i < 20 {
                ensure(words.recompose(&d) == x, || format!("l={l}: word expansion of {x}"))?;
            }
        }
    }
    Ok(())
}

fn p_coefficients() -> Outcome {
    for l in [2u32, 3, 5, 7] {
        let s = spec(l as i64);
        let mut words = WordOracle::new(&s);
        for k in 0..=l {
            let expanded = product_expansion(&s, k);
            let mut w = vec![0u8; k as usize];
            w.extend(vec![3u8; k as usize]);
            let adk = words.eval_word(&w);
            for j in 0..=k {
                let p = p_coeff(&s, k as i64, j as i64).map_err(|e| e.to_string())?;
                ensure(p == expanded[j as usize], || format!("l={l}: p_{{{k},{j}}} vs product"))?;
                ensure(p == adk.coeff(&QMonomial::new(0, j, j, 0)), || {
                    format!("l={l}: p_{{{k},{j}}} vs a^k d^k")
                })?;
            }
            ensure(expanded[0].is_one(), || format!("l={l}: p_{{{k},0}} != 1"))?;
        }
        for j in 1..l {
            ensure(expanded_is_zero(&s, l, j), || format!("l={l}: p_{{l,{j}}} != 0"))?;
        }
    }
    Ok(())
}

fn expanded_is_zero(s: &RootSpec, l: u32, j: u32) -> bool {
    p_coeff(s, l as i64, j as i64).map(|p| p.is_zero()).unwrap_or(false)
}

fn frobenius_subalgebra() -> Outcome {
    for l in [3u32, 5] {
        let s = spec(l as i64);
        let al = QElement::generator(&s, Gen::A).power(l);
        let expected = Tensor::pure(&s, [QMonomial::power(Gen::A, l), QMonomial::power(Gen::A, l)], s.one())
            .try_add(&Tensor::pure(&s, [QMonomial::power(Gen::B, l), QMonomial::power(Gen::C, l)], s.one()))
            .map_err(|e| e.to_string())?;
        ensure(coproduct(&al) == expected, || format!("l={l}: coproduct of a^l"))?;
        let mut words = WordOracle::new(&s);
        let from_words = words.coproduct(&al);
        ensure(
            from_words.len() == 2 && expected.terms().all(|([m, n], c)| from_words.get(&(*m, *n)) == Some(c)),
            || format!("l={l}: word-level coproduct of a^l"),
        )?;
        let g = |x| ClassicalElement::generator(&s, x);
        let det = &(&g(ClassicalGen::Alpha) * &g(ClassicalGen::Delta))
            - &(&g(ClassicalGen::Beta) * &g(ClassicalGen::Gamma));
        ensure(lift(&det) == QElement::one(&s), || format!("l={l}: lift of the determinant"))?;
        ensure(words.lift(&det) == QElement::one(&s), || format!("l={l}: word determinant"))?;
    }
    Ok(())
}

fn hopf_axioms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    for l in [2, 3] {
        let s = spec(l);
        let mut words = WordOracle::new(&s);
        let mut samples: Vec<QElement> = Gen::ALL.iter().map(|&g| QElement::generator(&s, g)).collect();
        samples.extend((0..50).map(|_| random_word(&s, &mut rng, 4)));
        for x in &samples {
            ensure(coassociativity_holds(x), || format!("l={l}: coassociativity on {x}"))?;
            ensure(counit_holds(x), || format!("l={l}: counit on {x}"))?;
            ensure(antipode_holds(x), || format!("l={l}: antipode on {x}"))?;
            // m(S ⊗ id)Δ = ε·1 through the word expansion.
            let mut sum = QElement::zero(&s);
            for ((m, n), c) in words.coproduct(x) {
                let left = words.antipode(&QElement::monomial(&s, m));
                sum = &sum + &words.product(&left, &QElement::monomial(&s, n)).scale(&c);
            }
            let eps = x
                .terms()
                .filter(|(m, _)| m.b == 0 && m.c == 0)
                .fold(s.zero(), |mut acc, (_, c)| {
                    acc += c;
                    acc
                });
            ensure(sum == QElement::scalar(&s, eps), || format!("l={l}: word antipode on {x}"))?;
        }
    }
    Ok(())
}

fn closure_cases() -> Outcome {
    let open = closure_diagnostic(3, 6).map_err(|e| e.to_string())?;
    ensure(open.lth_relation.to_string() == "a^3 d^3 = 1 - b^3 c^3", || open.lth_relation.to_string())?;
    ensure(!open.coproduct_closes, || "order 6: coproduct closes".into())?;
    ensure(!open.determinant_closes, || "order 6: determinant closes".into())?;
    let mut words = WordOracle::new(&RootSpec::with_order(3, 6, None).map_err(|e| e.to_string())?);
    let w: Vec<u8> = [0, 0, 0, 3, 3, 3].to_vec();
    let s6 = words.spec;
    let expected = QElement::one(&s6).try_sub(&QElement::monomial(&s6, QMonomial::new(0, 3, 3, 0))).unwrap();
    ensure(words.eval_word(&w) == expected, || "order 6: word expansion of a^3 d^3".into())?;

    for (l, order) in [(3, 3), (2, 4)] {
        let r = closure_diagnostic(l, order).map_err(|e| e.to_string())?;
        let want = format!("a^{l} d^{l} = 1 + b^{l} c^{l}");
        ensure(r.lth_relation.to_string() == want, || format!("({l},{order}): {}", r.lth_relation))?;
        ensure(r.determinant_closes && r.coproduct_closes && r.powers_commute, || {
            format!("({l},{order}) does not close")
        })?;
    }
    Ok(())
}

fn localization() -> Outcome {
    let s = spec(3);
    let mut words = WordOracle::new(&s);
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..50 {
        let terms = rng.gen_range(1..=3);
        let x = random_element(&s, &mut rng, terms, 5);
        for (chart, g) in [(LocalChart::UAlpha, ClassicalGen::Alpha), (LocalChart::UBeta, ClassicalGen::Beta)] {
            let loc = localize(&x, chart).map_err(|e| e.to_string())?;
            let (k, cleared) = loc.clear_denominators();
            let gk = words.lift(&ClassicalElement::generator(&s, g).pow(k));
            ensure(cleared == words.product(&gk, &x), || format!("{chart:?}: {x}"))?;
        }
    }
    Ok(())
}

fn even_signs() -> Outcome {
    let s = spec(2);
    let i = s.q_pow(1);
    let mut words = WordOracle::new(&s);
    let a = QElement::generator(&s, Gen::A);
    let b = QElement::generator(&s, Gen::B);
    let a2 = a.power(2);
    ensure(&a2 * &b == -(&b * &a2), || "a^2 b != -b a^2".into())?;
    ensure(words.product(&a2, &b) == -words.product(&b, &a2), || "word a^2 b".into())?;

    let d = decompose(&a, Side::Left).map_err(|e| e.to_string())?;
    let mut want = Decomposition::zero(&s, Side::Left);
    want.add(BasisIndex::FamilyD { n: 0, s: 0, r: 1 }, &ClassicalElement::generator(&s, ClassicalGen::Alpha));
    want.add(BasisIndex::FamilyA { m: 1, n: 1, s: 1 }, &ClassicalElement::scalar(&s, -i));
    ensure(d == want, || format!("decompose(a):\n{d}"))?;
    ensure(recompose(&d) == a && words.recompose(&d) == a, || "decompose(a) roundtrip".into())?;

    let ab = &a * &b;
    let left = decompose(&ab, Side::Left).map_err(|e| e.to_string())?;
    let right = decompose(&ab, Side::Right).map_err(|e| e.to_string())?;
    let negated: Vec<_> = right.entries().map(|(k, v)| (*k, -v)).collect();
    let left_entries: Vec<_> = left.entries().map(|(k, v)| (*k, v.clone())).collect();
    ensure(!left.is_empty() && left_entries == negated, || format!("left:\n{left}\nright:\n{right}"))?;
    for dec in [&left, &right] {
        ensure(recompose(dec) == ab && words.recompose(dec) == ab, || format!("roundtrip of ab:\n{dec}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("free of rank l^3", rank_and_freeness),
        ("decompose agrees with the linear-algebra oracle", decompose_matches_oracle),
        ("decompose/recompose roundtrip", roundtrip),
        ("p-coefficients", p_coefficients),
        ("Frobenius Hopf subalgebra", frobenius_subalgebra),
        ("Hopf axioms", hopf_axioms),
        ("closure diagnostic", closure_cases),
        ("localization", localization),
        ("even-case signs", even_signs),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2}s)", n + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {why}", n + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
