use ggr_core::golden::m_of_word;
use ggr_core::numerics::{
    ep_series_value, parry_digits, solve_monotone, truncated_series_value, Bracket, Dd, SolveOptions,
};
use ggr_core::words::EpWord;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn encloses(b: Bracket, exact: &BigRational) -> bool {
    b.lo().to_rational().unwrap() <= *exact && *exact <= b.hi().to_rational().unwrap()
}

fn word() -> impl Strategy<Value = EpWord> {
    (vec(0u8..2, 0..6), vec(0u8..2, 1..6)).prop_map(|(pre, period)| EpWord::new(pre, period))
}

fn pair() -> impl Strategy<Value = (BigRational, BigRational)> {
    ((-1000i64..1000, 1i64..300), (-1000i64..1000, 1i64..300)).prop_map(|((a, b), (c, d))| (rat(a, b), rat(c, d)))
}

proptest! {
    #[test]
    fn arithmetic_encloses_exact_results((a, b) in pair()) {
        let (x, y) = (Bracket::from_rational(&a), Bracket::from_rational(&b));
        prop_assert!(encloses(x, &a));
        prop_assert!(encloses(x + y, &(&a + &b)));
        prop_assert!(encloses(x - y, &(&a - &b)));
        prop_assert!(encloses(x * y, &(&a * &b)));
        if b != rat(0, 1) {
            prop_assert!(encloses(x / y, &(&a / &b)));
        }
    }

    #[test]
    fn series_enclosure_is_sound(u in word(), (n, d) in (6i64..40, 5i64..10)) {
        prop_assume!(n > d);
        let x = n as f64 / d as f64;
        let value = ep_series_value(&u, 1, Bracket::from_ratio(n, d)).unwrap();
        let partial: f64 = (0..10_000).map(|k| u.letter(k) as f64 * x.powi(-(k as i32) - 1)).sum();
        prop_assert!(value.widen(1e-12).contains(Dd::from_f64(partial)), "{value} vs {partial}");
    }

    #[test]
    fn truncated_series_covers_extensions(prefix in vec(0u8..2, 1..12), tail in word(), (n, d) in (6i64..40, 5i64..10)) {
        prop_assume!(n > d);
        let x = Bracket::from_ratio(n, d);
        let outer = truncated_series_value(&prefix, x).unwrap();
        let inner = ep_series_value(&tail.prepend(&prefix), 1, x).unwrap();
        // Both ends carry their own outward padding, so containment holds up to it.
        prop_assert!(outer.widen(1e-15).contains_bracket(inner), "{outer} vs {inner}");
    }

    #[test]
    fn solver_brackets_a_sign_change(r in 1.0f64..3.0, c in 0.0f64..2.0) {
        let root = Bracket::from_f64(r);
        let f = |x: Bracket| {
            let t = x - root;
            t * t * t + Bracket::from_f64(c) * t
        };
        let b = solve_monotone(f, Dd::from_f64(0.5), Dd::from_f64(3.5), SolveOptions::default()).unwrap();
        prop_assert!(b.contains(Dd::from_f64(r)));
        prop_assert_eq!(f(Bracket::point(b.lo())).sign(), Some(std::cmp::Ordering::Less));
        prop_assert_eq!(f(Bracket::point(b.hi())).sign(), Some(std::cmp::Ordering::Greater));
    }
}

#[test]
fn parry_digits_recover_the_word() {
    for u in [EpWord::constant(1), EpWord::new(vec![0], vec![1]), EpWord::periodic(vec![0, 1])] {
        let m = m_of_word(&u, SolveOptions::default()).unwrap();
        let beta = Bracket::from_f64(1.0) + m.sqrt();
        let stream = parry_digits(beta, 60).unwrap();
        assert!(stream.decided_depth >= 40, "{u}: {stream:?}");
        assert_eq!(stream.digits[0], 2);
        assert_eq!(stream.tail()[..39], u.prefix(39)[..], "{u}");
    }
}
