//! Property tests for the cipher and number-theory invariants.

use cipherlab::caesar::{self, CaesarKey};
use cipherlab::numtheory;
use cipherlab::textcodec::{normalize, NormalizedText};
use cipherlab::vigenere::{self, VigenereKey};
use cipherlab::{rsa, Indexing};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn letter_string(max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(0u8..26, 0..max_len)
        .prop_map(|values| values.into_iter().map(|v| (b'A' + v) as char).collect())
}

fn text(max_len: usize) -> impl Strategy<Value = NormalizedText> {
    letter_string(max_len).prop_map(|s| normalize(&s))
}

fn keyword() -> impl Strategy<Value = VigenereKey> {
    prop::collection::vec(0u8..26, 1..12).prop_map(|values| {
        let word: String = values.into_iter().map(|v| (b'A' + v) as char).collect();
        VigenereKey::new(&word).expect("nonempty by construction")
    })
}

proptest! {
    #[test]
    fn normalize_is_idempotent_on_arbitrary_input(s in ".{0,120}") {
        let once = normalize(&s);
        prop_assert_eq!(normalize(once.as_str()), once);
    }

    #[test]
    fn normalize_output_is_letters_only(s in ".{0,120}") {
        prop_assert!(normalize(&s).bytes().iter().all(u8::is_ascii_uppercase));
    }

    #[test]
    fn codec_roundtrips_under_both_conventions(v in 0u8..26) {
        for indexing in [Indexing::ZeroBased, Indexing::OneBased] {
            let letter = cipherlab::textcodec::index_to_letter(
                if indexing == Indexing::OneBased { v + 1 } else { v },
                indexing,
            ).unwrap();
            let back = cipherlab::textcodec::letter_to_index(letter, indexing).unwrap();
            prop_assert_eq!(back, if indexing == Indexing::OneBased { v + 1 } else { v });
        }
    }

    #[test]
    fn caesar_roundtrips_for_every_shift(t in text(200), k in 0i64..26) {
        let key = CaesarKey::new(k);
        prop_assert_eq!(caesar::decrypt(&caesar::encrypt(&t, key), key), t);
    }

    #[test]
    fn caesar_shifts_compose_additively(t in text(120), k1 in 0i64..26, k2 in 0i64..26) {
        let twice = caesar::encrypt(&caesar::encrypt(&t, CaesarKey::new(k1)), CaesarKey::new(k2));
        let once = caesar::encrypt(&t, CaesarKey::new(k1 + k2));
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn caesar_preserves_the_count_multiset(t in text(120), k in 0i64..26) {
        let cipher = caesar::encrypt(&t, CaesarKey::new(k));
        let histogram = |s: &NormalizedText| {
            let mut counts = [0u32; 26];
            for &b in s.bytes() { counts[(b - b'A') as usize] += 1; }
            counts.sort_unstable();
            counts
        };
        prop_assert_eq!(histogram(&t), histogram(&cipher));
    }

    #[test]
    fn vigenere_roundtrips(t in text(200), key in keyword()) {
        let cipher = vigenere::encrypt(&t, &key);
        prop_assert_eq!(cipher.len(), t.len());
        prop_assert_eq!(vigenere::decrypt(&cipher, &key), t);
    }

    #[test]
    fn square_lookup_agrees_with_the_formula(t in text(200), key in keyword()) {
        prop_assert_eq!(vigenere::square_encrypt(&t, &key), vigenere::encrypt(&t, &key));
    }

    #[test]
    fn expanded_keys_repeat_cyclically(key in keyword(), len in 0usize..100) {
        let expanded = vigenere::expand_key(&key, len);
        prop_assert_eq!(expanded.len(), len);
        let word = key.word().bytes();
        for (i, &b) in expanded.bytes().iter().enumerate() {
            prop_assert_eq!(b, word[i % word.len()]);
        }
    }

    #[test]
    fn single_letter_keys_behave_like_caesar(t in text(120), shift in 0u8..26) {
        let letter = (b'A' + shift) as char;
        let key = VigenereKey::new(&letter.to_string()).unwrap();
        prop_assert_eq!(
            vigenere::encrypt(&t, &key),
            caesar::encrypt(&t, CaesarKey::new(i64::from(shift)))
        );
    }

    #[test]
    fn bezout_identity_holds(a in 0u64..1_000_000, b in 1u64..1_000_000) {
        let triple = numtheory::extended_gcd(&BigUint::from(a), &BigUint::from(b)).unwrap();
        let lhs = BigInt::from(a) * &triple.x + BigInt::from(b) * &triple.y;
        prop_assert_eq!(lhs, BigInt::from(triple.g));
    }

    #[test]
    fn gcd_divides_both_arguments(a in 1u64..1_000_000, b in 0u64..1_000_000) {
        let g = numtheory::gcd(&BigUint::from(a), &BigUint::from(b)).unwrap();
        prop_assert!((BigUint::from(a) % &g).bits() == 0);
        prop_assert!((BigUint::from(b) % &g).bits() == 0);
    }

    #[test]
    fn gcd_satisfies_the_euclidean_recurrence(a in 0u64..1_000_000, b in 1u64..1_000_000) {
        let g = numtheory::gcd(&BigUint::from(a), &BigUint::from(b)).unwrap();
        let step = numtheory::gcd(&BigUint::from(b), &BigUint::from(a % b));
        prop_assert_eq!(g, step.unwrap());
    }

    #[test]
    fn mod_pow_matches_naive_multiplication(b in 0u64..500, e in 0u32..40, m in 1u64..10_000) {
        let naive = (0..e).fold(1u128, |acc, _| acc * u128::from(b) % u128::from(m));
        let got = numtheory::mod_pow(&BigUint::from(b), &BigUint::from(e), &BigUint::from(m));
        prop_assert_eq!(got.unwrap(), BigUint::from(naive));
    }

    #[test]
    fn mod_inverse_is_a_least_positive_inverse(e in 1u64..5_000, m in 2u64..5_000) {
        if let Ok(d) = numtheory::mod_inverse(&BigUint::from(e), &BigUint::from(m)) {
            prop_assert!(d >= BigUint::from(1u32));
            prop_assert!(d < BigUint::from(m));
            prop_assert_eq!((BigUint::from(e) * d) % BigUint::from(m), BigUint::from(1u32));
        } else {
            let g = numtheory::gcd(&BigUint::from(e), &BigUint::from(m)).unwrap();
            prop_assert!(g > BigUint::from(1u32));
        }
    }
}

const SMALL_PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Every generated keypair decrypts every message value below its modulus,
/// checked exhaustively on a sampled set of prime pairs up to pq of a
/// million. The sweep runs in machine words mirroring the generated
/// exponents; the library path is spot-checked alongside.
#[test]
fn rsa_roundtrips_every_value_on_sampled_prime_pairs() {
    let pairs: [(u64, u64); 7] =
        [(2, 7), (3, 11), (5, 11), (101, 103), (211, 293), (503, 509), (953, 967)];
    for (p, q) in pairs {
        let pair =
            rsa::generate_keypair(&BigUint::from(p), &BigUint::from(q), None, None).unwrap();
        assert!(pair.invariants_hold(), "invariants for p={p} q={q}");
        let n = p * q;
        let e = biguint_to_u64(&pair.public.e);
        let d = biguint_to_u64(&pair.private.d);
        for m in 0..n {
            let c = mod_pow_u64(m, e, n);
            assert_eq!(mod_pow_u64(c, d, n), m, "n = {n}, m = {m}");
        }
        for m in [0, 1, 2, p, q, n - 1] {
            let c = rsa::encrypt_value(&BigUint::from(m), &pair.public).unwrap();
            assert_eq!(
                rsa::decrypt_value(&c, &pair.private).unwrap(),
                BigUint::from(m)
            );
            assert_eq!(c, BigUint::from(mod_pow_u64(m, e, n)), "library vs mirror");
        }
    }
}

fn biguint_to_u64(v: &BigUint) -> u64 {
    u64::try_from(v.clone()).expect("sampled keys fit in a machine word")
}

fn mod_pow_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = u128::from(m);
    let mut result = 1 % m;
    let mut base = u128::from(base) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result as u64
}

proptest! {
    #[test]
    fn rsa_roundtrips_over_sampled_keypairs(
        pi in 0usize..16,
        qi in 0usize..16,
        m_seed in 0u64..10_000,
    ) {
        prop_assume!(pi != qi);
        // phi(2 * 3) = 2 leaves no room for any e with 1 < e < phi.
        prop_assume!(SMALL_PRIMES[pi] * SMALL_PRIMES[qi] != 6);
        let p = BigUint::from(SMALL_PRIMES[pi]);
        let q = BigUint::from(SMALL_PRIMES[qi]);
        let pair = rsa::generate_keypair(&p, &q, None, None).unwrap();
        let m = BigUint::from(m_seed) % &pair.n;
        let c = rsa::encrypt_value(&m, &pair.public).unwrap();
        prop_assert_eq!(rsa::decrypt_value(&c, &pair.private).unwrap(), m);
    }

    #[test]
    fn rsa_text_mode_roundtrips_when_letters_fit(t in text(40)) {
        // n = 5 * 11 = 55 > 26, so every letter value fits.
        let pair = rsa::generate_keypair(
            &BigUint::from(5u32), &BigUint::from(11u32), None, None,
        ).unwrap();
        let cipher = rsa::encrypt_text(&t, &pair.public).unwrap();
        prop_assert_eq!(rsa::decrypt_text(&cipher, &pair.private).unwrap(), t);
    }

    #[test]
    fn private_exponents_in_the_same_class_decrypt_identically(k in 0u64..6, m_seed in 0u64..100) {
        // d and d + k*phi are interchangeable.
        let pair = rsa::generate_keypair(
            &BigUint::from(3u32), &BigUint::from(11u32), None, None,
        ).unwrap();
        let shifted = rsa::RsaPrivateKey {
            d: &pair.private.d + BigUint::from(k) * &pair.phi,
            n: pair.n.clone(),
        };
        let m = BigUint::from(m_seed) % &pair.n;
        let c = rsa::encrypt_value(&m, &pair.public).unwrap();
        prop_assert_eq!(
            rsa::decrypt_value(&c, &pair.private).unwrap(),
            rsa::decrypt_value(&c, &shifted).unwrap()
        );
    }
}
