//! Attack behavior on realistic text, plus the keyword keyspace check.
//!
//! These use fixed slices of the bundled English corpus; the randomized
//! multi-trial success-rate suites live in the workspace acceptance tests.

use cipherlab::caesar::{self, CaesarKey};
use cipherlab::cryptanalysis::{crack_caesar, crack_vigenere, estimate_key_length};
use cipherlab::textcodec::normalize;
use cipherlab::vigenere::{self, VigenereKey};
use std::collections::HashSet;

const CORPUS: &str = include_str!("fixtures/english.txt");

fn corpus_slice(start: usize, len: usize) -> cipherlab::NormalizedText {
    let letters = normalize(CORPUS);
    assert!(start + len <= letters.len(), "corpus too short for slice");
    normalize(&letters.as_str()[start..start + len])
}

#[test]
fn corpus_is_large_enough_for_the_trial_suites() {
    assert!(normalize(CORPUS).len() >= 2000);
}

#[test]
fn caesar_crack_recovers_a_known_shift_from_english() {
    let plain = corpus_slice(250, 240);
    let cipher = caesar::encrypt(&plain, CaesarKey::new(3));
    let report = crack_caesar(&cipher).unwrap();
    assert_eq!(report.best_key, 3);
    assert_eq!(report.plaintext, plain);
    assert!(!report.low_confidence);
}

#[test]
fn key_length_estimate_ranks_the_true_length_high() {
    let plain = corpus_slice(0, 640);
    let key = VigenereKey::new("DISCRETE").unwrap();
    let cipher = vigenere::encrypt(&plain, &key);
    let ranked = estimate_key_length(&cipher, 20).unwrap();
    assert!(
        ranked[..3].iter().any(|&len| len == 8 || len % 8 == 0 || 8 % len == 0),
        "no divisor or multiple of 8 in the top 3: {ranked:?}"
    );
}

#[test]
fn key_length_estimate_on_caesar_text_says_one() {
    let plain = corpus_slice(100, 500);
    let cipher = caesar::encrypt(&plain, CaesarKey::new(9));
    let ranked = estimate_key_length(&cipher, 12).unwrap();
    assert_eq!(ranked[0], 1, "ranking was {ranked:?}");
}

#[test]
fn vigenere_crack_recovers_the_exact_keyword() {
    let plain = corpus_slice(40, 560); // 70 letters per column
    let key = VigenereKey::new("DISCRETE").unwrap();
    let cipher = vigenere::encrypt(&plain, &key);
    let report = crack_vigenere(&cipher, 8).unwrap();
    assert_eq!(report.best_key.word().as_str(), "DISCRETE");
    assert_eq!(report.plaintext, plain);
}

#[test]
fn keyword_keyspace_is_26_to_the_k_and_injective() {
    // For k <= 3, distinct keys of length k number 26^k, and for a fixed
    // known plaintext at least k long, no two keys produce one ciphertext.
    let plain = normalize("OBSERVATORY");
    for k in 1u32..=3 {
        let expected = 26usize.pow(k);
        let mut keys = HashSet::new();
        let mut ciphertexts = HashSet::new();
        for index in 0..expected {
            let mut word = String::new();
            let mut v = index;
            for _ in 0..k {
                word.push((b'A' + (v % 26) as u8) as char);
                v /= 26;
            }
            let key = VigenereKey::new(&word).unwrap();
            keys.insert(key.clone());
            ciphertexts.insert(String::from(vigenere::encrypt(&plain, &key)));
        }
        assert_eq!(keys.len(), expected, "distinct keys for k={k}");
        assert_eq!(ciphertexts.len(), expected, "injectivity for k={k}");
    }
}
