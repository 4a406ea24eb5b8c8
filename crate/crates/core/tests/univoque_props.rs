use ggr_core::numerics::Bracket;
use ggr_core::univoque::{
    certify_trivial, enumerate_expansions, estimate_g, is_unique_exact, q_of, Alphabet, Certificate, Certifier,
    CertifyOptions, EnumerateOptions, EstimateOptions, Verdict,
};
use ggr_core::words::{check_lex_bounds_ep, sigma_zero_one_bar, EpWord, Sigma};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::btree_set;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn f(q: &BigRational) -> f64 {
    Bracket::from_rational(q).to_f64()
}

/// `{0} ∪ {k/4}` with one to three positive digits.
fn alphabet() -> impl Strategy<Value = Alphabet> {
    btree_set(1i64..24, 1..4).prop_map(|ks| {
        let mut digits = vec![rat(0, 1)];
        digits.extend(ks.into_iter().map(|k| rat(k, 4)));
        Alphabet::new(digits).unwrap()
    })
}

/// An alphabet with a rational base in `(1, q(A)]`.
fn alphabet_and_base() -> impl Strategy<Value = (Alphabet, BigRational)> {
    (alphabet(), 1i64..=100).prop_map(|(a, k)| {
        let q = q_of(&a);
        let beta = rat(1, 1) + (&q - rat(1, 1)) * rat(k, 100);
        (a, beta)
    })
}

/// Splits a ternary witness into its run of leading top digits and the rest.
fn strip_top(w: &EpWord) -> (usize, EpWord) {
    let mut j = 0;
    while j < w.pre().len() && w.letter(j) == 2 {
        j += 1;
    }
    (j, w.tail(j))
}

fn tails_after(w: &EpWord, letter: u8) -> Vec<EpWord> {
    (0..w.pre().len() + w.period().len()).filter(|&i| w.letter(i) == letter).map(|i| w.tail(i + 1)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn alive_prefixes_extend_greedily((a, beta) in alphabet_and_base(), t in 0.0f64..=1.0, depth in 1usize..10) {
        let b = f(&beta);
        prop_assume!(b > 1.05);
        let digits: Vec<f64> = a.digits().iter().map(f).collect();
        let (low, high) = (digits[0] / (b - 1.0), digits[a.top()] / (b - 1.0));
        let x = low + t * (high - low);
        let report = enumerate_expansions(
            Bracket::from_f64(x),
            Bracket::from_rational(&beta),
            &a.to_brackets(),
            depth,
            EnumerateOptions { max_nodes: 1 << 16, max_listed: 64 },
        )
        .unwrap();
        prop_assert!(report.alive_count >= 1);
        let slack = 1e-9 * b.powi(depth as i32 + 20);
        for p in &report.prefixes {
            let mut r = x;
            for &j in p {
                r = b * r - digits[j as usize];
            }
            prop_assert!(r >= low - slack && r <= high + slack, "prefix {p:?}: {r}");
            for _ in 0..20 {
                r = r.clamp(low, high);
                let next = digits.iter().rev().map(|d| b * r - d).find(|&s| s >= low - slack).unwrap();
                prop_assert!(next <= high + slack, "greedy step left the range: {next}");
                r = next;
            }
        }
    }

    #[test]
    fn refinement_only_shrinks((a, beta) in alphabet_and_base()) {
        let mut c = Certifier::new(&a, &beta).unwrap();
        for _ in 0..12 {
            let before = c.sets().to_vec();
            if !c.step() {
                break;
            }
            for (new, old) in c.sets().iter().zip(&before) {
                prop_assert!(new.is_subset(old), "{new} not inside {old}");
            }
        }
    }

    #[test]
    fn widest_gap_word_is_unique_above_its_threshold(a in alphabet()) {
        let d = a.top();
        let span = &a.digits()[d] - &a.digits()[0];
        for j in 0..d {
            let gap = &a.digits()[j + 1] - &a.digits()[j];
            let beta = rat(1, 1) + &span / gap + rat(1, 1000);
            let w = EpWord::new(vec![j as u8], vec![d as u8]);
            prop_assert_eq!(is_unique_exact(&w, &beta, &a), Verdict::Unique, "j = {}, beta = {}", j, beta);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn estimate_never_exceeds_q(a in alphabet()) {
        let opts = EstimateOptions { samples: 16, tol: 1e-4, ..EstimateOptions::default() };
        let e = estimate_g(&a, &opts);
        prop_assert!(e.upper.lo().to_f64() <= f(&q_of(&a)) + 1e-12, "{e:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn small_bases_admit_only_trivial_words(m in 1001i64..=2000, b in 1001i64..2000) {
        let a = Alphabet::ternary(&rat(m, 1000)).unwrap();
        let c = certify_trivial(&a, &rat(b, 1000), CertifyOptions::default()).unwrap();
        prop_assert!(matches!(c, Certificate::Certified { .. }), "m = {}/1000, beta = {}/1000: {:?}", m, b, c);
    }
}

#[test]
fn ternary_witnesses_have_the_expected_shape() {
    let mut witnesses = 0;
    for k in 21..=40 {
        let m = rat(k, 20);
        let top = 1.0 + (k as f64 / 20.0).sqrt();
        let beta = rat((top * 200.0).floor() as i64, 200);
        let a = Alphabet::ternary(&m).unwrap();
        let Certificate::Witness { word, .. } = certify_trivial(&a, &beta, CertifyOptions::default()).unwrap() else {
            continue;
        };
        witnesses += 1;
        let (_, rest) = strip_top(&word);
        let binary = rest.letters().take(rest.pre().len() + rest.period().len()).all(|c| c <= 1);
        assert!(binary || rest == EpWord::constant(2), "m = {m}: {}", a.format_word(&word));
        if !binary {
            continue;
        }

        let inf = tails_after(&rest, 1).into_iter().min().expect("a nontrivial word contains a 1");
        assert_eq!(check_lex_bounds_ep(&inf), None, "m = {m}: inf word {inf}");
        let p = inf.period().len() as u32;
        let hit = Sigma::enumerate(p + 1).iter().any(|s| s.image_of(1).len() as u32 == p && sigma_zero_one_bar(s) == inf);
        assert!(!hit, "m = {m}: inf word {inf} is an endpoint word");
        let sup = tails_after(&rest, 1).into_iter().map(|t| t.prepend(&[0])).max().unwrap();
        assert_eq!(check_lex_bounds_ep(&sup), None, "m = {m}: sup word {sup}");
    }
    assert!(witnesses >= 10, "only {witnesses} witnesses found");
}
