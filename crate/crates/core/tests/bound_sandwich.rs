mod common;

use std::collections::HashMap;

use delball_core::bounds::{
    calabi_hartnett_max, exact_max, hirschberg_regnier_bounds, levenshtein_bounds, new_lower_bound,
    new_upper_bound, report, CalabiHartnett, ReportSubject,
};
use delball_core::exact::count_exact;
use delball_core::word::canonical_word;
use delball_core::{BigCount, Word};

fn all_words(q: u32, n: usize) -> impl Iterator<Item = Word> {
    (0..(q as usize).pow(n as u32)).map(move |mut code| {
        let symbols = (0..n)
            .map(|_| {
                let s = (code % q as usize) as u32;
                code /= q as usize;
                s
            })
            .collect();
        Word::new(symbols, q).unwrap()
    })
}

fn check_word(word: &Word, ch: &mut CalabiHartnett) {
    let q = word.alphabet_size();
    let n = word.len() as i64;
    let r = word.run_count() as i64;
    for t in 0..=n {
        let e: BigCount = count_exact(word, t);
        let (ll, lu) = levenshtein_bounds(r, t);
        let (hl, hu) = hirschberg_regnier_bounds(q, n, r, t).unwrap();
        assert!(ll <= e && e <= lu, "levenshtein {word} t={t}");
        assert!(ll <= hl, "hr lower below levenshtein lower r={r} t={t}");
        assert!(hl <= e && e <= hu, "hirschberg-regnier {word} t={t}");
        assert!(e <= ch.get(n, t), "calabi-hartnett {word} t={t}");
        assert!(
            new_lower_bound(n, r, t).unwrap() <= e,
            "new lower {word} t={t}"
        );
        assert!(
            e <= new_upper_bound(q, n, r, t).unwrap(),
            "new upper {word} t={t}"
        );
    }
}

#[test]
fn every_short_word_is_sandwiched() {
    for q in 2..=3u32 {
        let mut ch = CalabiHartnett::new(q).unwrap();
        for n in 1..=8 {
            for word in all_words(q, n) {
                check_word(&word, &mut ch);
            }
        }
    }
}

#[test]
fn random_words_are_sandwiched() {
    let mut rng = common::rng(11);
    let mut ch: HashMap<u32, CalabiHartnett> = HashMap::new();
    for _ in 0..1000 {
        let word = common::random_word(&mut rng, 12, 4);
        if word.is_empty() {
            continue;
        }
        let ch = ch
            .entry(word.alphabet_size())
            .or_insert_with_key(|&q| CalabiHartnett::new(q).unwrap());
        check_word(&word, ch);
    }
}

#[test]
fn calabi_hartnett_is_attained_by_cyclic_words() {
    for q in 1..=4u32 {
        for n in 0..=12usize {
            let cyclic = Word::new((0..n as u32).map(|i| i % q).collect(), q).unwrap();
            for t in 0..=n as i64 {
                assert_eq!(
                    calabi_hartnett_max(q, n as i64, t).unwrap(),
                    count_exact::<BigCount>(&cyclic, t)
                );
            }
        }
    }
}

#[test]
fn parameter_reports_are_sandwiched() {
    for q in 2..=4u32 {
        for n in 1..=12i64 {
            for r in 1..=n {
                for t in 0..=n {
                    let rep = report(&ReportSubject::Params { q, n, r }, t, true).unwrap();
                    assert!(rep.sandwich_violations().is_empty());
                    assert_eq!(rep.exact, Some(exact_max(q, n, r, t).unwrap()));
                }
            }
        }
    }
}

#[test]
fn new_upper_is_tight_when_runs_divide_length() {
    for q in 2..=4u32 {
        for r in 1..=6i64 {
            for k in 1..=3i64 {
                let n = r * k;
                for t in 0..=n {
                    let balanced = canonical_word(&vec![k as usize; r as usize], q).unwrap();
                    assert_eq!(
                        new_upper_bound(q, n, r, t).unwrap(),
                        count_exact::<BigCount>(&balanced, t)
                    );
                    if n <= 12 {
                        assert_eq!(
                            new_upper_bound(q, n, r, t).unwrap(),
                            exact_max(q, n, r, t).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn new_lower_is_attained_by_binary_words() {
    for n in 1..=10i64 {
        for r in 1..=n {
            for t in 0..=n {
                let min = all_words(2, n as usize)
                    .filter(|w| w.run_count() as i64 == r)
                    .map(|w| count_exact::<BigCount>(&w, t))
                    .min()
                    .unwrap();
                assert_eq!(new_lower_bound(n, r, t).unwrap(), min, "n={n} r={r} t={t}");
            }
        }
    }
}
