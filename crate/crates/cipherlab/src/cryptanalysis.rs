//! The attacks: frequency analysis against the shift cipher, repeated-key
//! exploitation against the keyword cipher, and factoring against small RSA
//! moduli.
//!
//! The shift attack scores all 26 trial decryptions against an English
//! letter-distribution table with the chi-squared statistic (lower is a
//! better fit). The keyword attack first estimates the key length from
//! repeated-trigram distances, then treats each key position's letters as an
//! independent shift cipher. The RSA attack factors the modulus by trial
//! division, recomputes the totient, and inverts the public exponent.

use crate::caesar::{self, CaesarKey};
use crate::numtheory::{self, NumTheoryError};
use crate::rsa::{RsaPrivateKey, RsaPublicKey};
use crate::textcodec::{index_to_letter, Indexing, NormalizedText};
use crate::vigenere::{self, VigenereKey};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CryptanalysisError {
    #[error("text must contain at least one letter")]
    EmptyText,
    #[error("text of {len} letter(s) is too short; need at least {min}")]
    TextTooShort { len: usize, min: usize },
    #[error("key length {key_length} is invalid for a text of {text_len} letter(s)")]
    InvalidKeyLength { key_length: usize, text_len: usize },
    #[error("{0} is not a product of exactly two primes")]
    NotSemiprime(BigUint),
    #[error("modulus {n} exceeds the factoring bound {bound}; the attack is infeasible at this scale")]
    ModulusTooLarge { n: BigUint, bound: BigUint },
    #[error("malformed frequency table: {0}")]
    MalformedFrequencyTable(String),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

impl CryptanalysisError {
    pub fn name(&self) -> &'static str {
        match self {
            CryptanalysisError::EmptyText => "EmptyText",
            CryptanalysisError::TextTooShort { .. } => "TextTooShort",
            CryptanalysisError::InvalidKeyLength { .. } => "InvalidKeyLength",
            CryptanalysisError::NotSemiprime(_) => "NotSemiprime",
            CryptanalysisError::ModulusTooLarge { .. } => "ModulusTooLarge",
            CryptanalysisError::MalformedFrequencyTable(_) => "MalformedFrequencyTable",
            CryptanalysisError::NumTheory(e) => e.name(),
        }
    }
}

/// Average letter distribution of English text, as percentages per letter
/// A..Z. The values sum to 100.0001, so the built-in table normalizes them.
const ENGLISH_LETTER_PERCENTAGES: [f64; 26] = [
    8.4966,  // A
    2.0720,  // B
    4.5388,  // C
    3.3844,  // D
    11.1607, // E
    1.8121,  // F
    2.4705,  // G
    3.0034,  // H
    7.5448,  // I
    0.1965,  // J
    1.1016,  // K
    5.4893,  // L
    3.0129,  // M
    6.6544,  // N
    7.1635,  // O
    3.1671,  // P
    0.1962,  // Q
    7.5809,  // R
    5.7351,  // S
    6.9509,  // T
    3.6308,  // U
    1.0074,  // V
    1.2899,  // W
    0.2902,  // X
    1.7779,  // Y
    0.2722,  // Z
];

/// Per-letter proportions summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    proportions: [f64; 26],
}

impl FrequencyTable {
    /// The built-in English distribution, normalized to unit sum.
    pub fn english() -> &'static FrequencyTable {
        static ENGLISH: OnceLock<FrequencyTable> = OnceLock::new();
        ENGLISH.get_or_init(|| {
            FrequencyTable::from_weights(ENGLISH_LETTER_PERCENTAGES)
                .expect("built-in percentages are positive")
        })
    }

    /// Normalize arbitrary nonnegative weights into proportions.
    pub fn from_weights(weights: [f64; 26]) -> Result<FrequencyTable, CryptanalysisError> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(CryptanalysisError::MalformedFrequencyTable(
                "weights must be finite and nonnegative".to_string(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(CryptanalysisError::MalformedFrequencyTable(
                "weights must not all be zero".to_string(),
            ));
        }
        let mut proportions = weights;
        for p in &mut proportions {
            *p /= total;
        }
        Ok(FrequencyTable { proportions })
    }

    /// Parse an override table: 26 lines of `<letter> <proportion>`, one per
    /// letter A..Z in any order. Proportions are normalized to unit sum.
    pub fn from_lines(text: &str) -> Result<FrequencyTable, CryptanalysisError> {
        let malformed = |msg: String| CryptanalysisError::MalformedFrequencyTable(msg);
        let mut weights = [f64::NAN; 26];
        let mut seen = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(letter), Some(value), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(malformed(format!(
                    "line {}: expected '<letter> <proportion>'",
                    lineno + 1
                )));
            };
            let [byte] = letter.as_bytes() else {
                return Err(malformed(format!("line {}: bad letter '{letter}'", lineno + 1)));
            };
            let idx = byte.to_ascii_uppercase().wrapping_sub(b'A') as usize;
            if idx >= 26 {
                return Err(malformed(format!("line {}: bad letter '{letter}'", lineno + 1)));
            }
            if !weights[idx].is_nan() {
                return Err(malformed(format!("duplicate entry for '{letter}'")));
            }
            weights[idx] = value
                .parse::<f64>()
                .map_err(|_| malformed(format!("line {}: bad proportion '{value}'", lineno + 1)))?;
            seen += 1;
        }
        if seen != 26 {
            return Err(malformed(format!("expected 26 letters, found {seen}")));
        }
        FrequencyTable::from_weights(weights)
    }

    /// Proportion of the given uppercase letter.
    pub fn proportion(&self, letter: char) -> f64 {
        assert!(letter.is_ascii_uppercase(), "letter must be A-Z");
        self.proportions[(letter as u8 - b'A') as usize]
    }

    /// Proportions as an array indexed by letter position A..Z.
    pub fn proportions(&self) -> &[f64; 26] {
        &self.proportions
    }
}

/// Per-letter counts of a text, indexed by letter position A..Z.
pub fn letter_counts(text: &NormalizedText) -> [u64; 26] {
    let mut counts = [0u64; 26];
    for &b in text.bytes() {
        counts[(b - b'A') as usize] += 1;
    }
    counts
}

/// Observed per-letter proportions of a nonempty text.
pub fn observed_frequencies(text: &NormalizedText) -> Result<FrequencyTable, CryptanalysisError> {
    if text.is_empty() {
        return Err(CryptanalysisError::EmptyText);
    }
    let counts = letter_counts(text);
    let total = text.len() as f64;
    let mut proportions = [0.0f64; 26];
    for (p, c) in proportions.iter_mut().zip(counts) {
        *p = c as f64 / total;
    }
    Ok(FrequencyTable { proportions })
}

/// Chi-squared goodness of fit between observed and expected letter counts,
/// where counts are proportions scaled by `length`.
///
/// A letter with zero expected proportion contributes nothing when it is also
/// unobserved, and infinity otherwise (the fit is then maximally bad).
pub fn chi_squared(observed: &FrequencyTable, expected: &FrequencyTable, length: usize) -> f64 {
    let len = length as f64;
    observed
        .proportions
        .iter()
        .zip(&expected.proportions)
        .map(|(&obs_p, &exp_p)| {
            let observed_count = obs_p * len;
            let expected_count = exp_p * len;
            if expected_count == 0.0 {
                if observed_count == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                let diff = observed_count - expected_count;
                diff * diff / expected_count
            }
        })
        .sum()
}

/// Sample sizes below this make the fit statistic unreliable; reports note it.
pub const MIN_RELIABLE_SAMPLE: usize = 20;

/// Outcome of a key-recovery attack: the ranked candidates (ascending score,
/// lower fits better), the winner, and the plaintext it produces.
#[derive(Debug, Clone, PartialEq)]
pub struct CrackReport<K> {
    pub best_key: K,
    pub score: f64,
    pub plaintext: NormalizedText,
    /// Sorted ascending by score; `best_key` is `candidates[0]`.
    pub candidates: Vec<(K, f64)>,
    /// Set when the statistic ran on fewer than [`MIN_RELIABLE_SAMPLE`]
    /// letters per decision.
    pub low_confidence: bool,
}

/// Score all 26 shifts against the built-in English table.
pub fn crack_caesar(cipher: &NormalizedText) -> Result<CrackReport<u8>, CryptanalysisError> {
    crack_caesar_with_table(cipher, FrequencyTable::english())
}

/// Score all 26 shifts against a caller-supplied expected distribution. The
/// report always ranks exactly 26 candidates covering shifts 0..=25.
pub fn crack_caesar_with_table(
    cipher: &NormalizedText,
    expected: &FrequencyTable,
) -> Result<CrackReport<u8>, CryptanalysisError> {
    if cipher.is_empty() {
        return Err(CryptanalysisError::EmptyText);
    }
    let mut candidates: Vec<(u8, f64)> = (0u8..26)
        .map(|shift| {
            let trial = caesar::decrypt(cipher, CaesarKey::new(i64::from(shift)));
            let observed = observed_frequencies(&trial).expect("cipher is nonempty");
            (shift, chi_squared(&observed, expected, cipher.len()))
        })
        .collect();
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let (best_key, score) = candidates[0];
    Ok(CrackReport {
        best_key,
        score,
        plaintext: caesar::decrypt(cipher, CaesarKey::new(i64::from(best_key))),
        candidates,
        low_confidence: cipher.len() < MIN_RELIABLE_SAMPLE,
    })
}

const KASISKI_GRAM_LEN: usize = 3;

/// A candidate key length is "supported" when it divides at least this
/// fraction of the repeat distances. Key-induced repeats all land on
/// multiples of the true length; chance repeats are the minority.
const KASISKI_SUPPORT: f64 = 0.6;

/// With fewer repeat distances than this, a couple of chance collisions can
/// outvote the key-induced repeats, so the distance statistic is ignored.
const MIN_KASISKI_DISTANCES: usize = 10;

/// Rank candidate key lengths 1..=max_len, most plausible first.
///
/// Distances between repeated trigrams must be multiples of the key length,
/// so each candidate is scored by how many distances it divides. Every
/// divisor of the true length inherits all of its hits (1 divides
/// everything), so raw counts cannot separate the true length from its
/// divisors; instead, the candidates dividing at least [`KASISKI_SUPPORT`]
/// of the distances rank first, largest first - the largest consistent
/// period. The remainder follow by raw count, ties toward the smaller
/// length. A text with no repeated trigram (or too few repeats to vote,
/// [`MIN_KASISKI_DISTANCES`]) is ranked by the average index of coincidence
/// of each candidate's column split instead.
pub fn estimate_key_length(
    cipher: &NormalizedText,
    max_len: usize,
) -> Result<Vec<usize>, CryptanalysisError> {
    if cipher.len() < KASISKI_GRAM_LEN {
        return Err(CryptanalysisError::TextTooShort {
            len: cipher.len(),
            min: KASISKI_GRAM_LEN,
        });
    }
    let distances = repeated_gram_distances(cipher.bytes());
    if distances.len() < MIN_KASISKI_DISTANCES {
        let mut scored: Vec<(usize, f64)> = (1..=max_len)
            .map(|candidate| (candidate, average_column_ioc(cipher.bytes(), candidate)))
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        return Ok(scored.into_iter().map(|(len, _)| len).collect());
    }

    let needed = (KASISKI_SUPPORT * distances.len() as f64).ceil() as usize;
    let mut supported = Vec::new();
    let mut longshots = Vec::new();
    for candidate in 1..=max_len {
        let count = distances.iter().filter(|&&d| d % candidate == 0).count();
        if count >= needed {
            supported.push(candidate);
        } else {
            longshots.push((candidate, count));
        }
    }
    supported.sort_by(|a, b| b.cmp(a));
    longshots.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    supported.extend(longshots.into_iter().map(|(len, _)| len));
    Ok(supported)
}

/// Pairwise distances between occurrences of every repeated trigram.
/// Occurrences per trigram are capped so degenerate texts stay linear.
fn repeated_gram_distances(bytes: &[u8]) -> Vec<usize> {
    const MAX_OCCURRENCES: usize = 20;
    let mut positions: HashMap<&[u8], Vec<usize>> = HashMap::new();
    for (pos, gram) in bytes.windows(KASISKI_GRAM_LEN).enumerate() {
        let entry = positions.entry(gram).or_default();
        if entry.len() < MAX_OCCURRENCES {
            entry.push(pos);
        }
    }
    let mut distances = Vec::new();
    for occurrences in positions.values() {
        for (i, &first) in occurrences.iter().enumerate() {
            for &second in &occurrences[i + 1..] {
                distances.push(second - first);
            }
        }
    }
    distances
}

/// Mean index of coincidence over the columns of a key-length split.
/// Columns with fewer than two letters carry no signal and are skipped.
fn average_column_ioc(bytes: &[u8], key_length: usize) -> f64 {
    let mut total = 0.0;
    let mut columns = 0usize;
    for start in 0..key_length.min(bytes.len()) {
        let mut counts = [0u64; 26];
        let mut len = 0u64;
        for &b in bytes.iter().skip(start).step_by(key_length) {
            counts[(b - b'A') as usize] += 1;
            len += 1;
        }
        if len < 2 {
            continue;
        }
        let coincidences: u64 = counts.iter().map(|&c| c * c.saturating_sub(1)).sum();
        total += coincidences as f64 / (len * (len - 1)) as f64;
        columns += 1;
    }
    if columns == 0 {
        0.0
    } else {
        total / columns as f64
    }
}

/// Recover a keyword of known length by cracking each column as a shift
/// cipher, using the built-in English table.
pub fn crack_vigenere(
    cipher: &NormalizedText,
    key_length: usize,
) -> Result<CrackReport<VigenereKey>, CryptanalysisError> {
    crack_vigenere_with_table(cipher, key_length, FrequencyTable::english())
}

/// Like [`crack_vigenere`] with a caller-supplied expected distribution.
///
/// The report's runner-up candidates are the best keyword with a single
/// position swapped for that column's next-ranked shift, capped at 26
/// entries; with key length 1 that list is exactly the shift attack's.
pub fn crack_vigenere_with_table(
    cipher: &NormalizedText,
    key_length: usize,
    expected: &FrequencyTable,
) -> Result<CrackReport<VigenereKey>, CryptanalysisError> {
    if key_length == 0 || key_length > cipher.len() {
        return Err(CryptanalysisError::InvalidKeyLength {
            key_length,
            text_len: cipher.len(),
        });
    }

    let mut columns: Vec<String> = vec![String::new(); key_length];
    for (i, letter) in cipher.letters().enumerate() {
        columns[i % key_length].push(letter);
    }
    let min_column_len = columns.iter().map(String::len).min().unwrap_or(0);

    let column_reports: Vec<CrackReport<u8>> = columns
        .iter()
        .map(|column| {
            crack_caesar_with_table(&NormalizedText::from_letters(column.clone()), expected)
        })
        .collect::<Result<_, _>>()?;

    let best_shifts: Vec<u8> = column_reports.iter().map(|r| r.best_key).collect();
    let total_score: f64 = column_reports.iter().map(|r| r.score).sum();
    let best_key = VigenereKey::from_shifts(&best_shifts).expect("key_length >= 1");

    // Runner-ups: perturb one column at a time to its next-ranked shifts.
    let mut candidates: Vec<(VigenereKey, f64)> = vec![(best_key.clone(), total_score)];
    for (position, report) in column_reports.iter().enumerate() {
        for &(shift, column_score) in report.candidates.iter().skip(1) {
            let mut shifts = best_shifts.clone();
            shifts[position] = shift;
            candidates.push((
                VigenereKey::from_shifts(&shifts).expect("key_length >= 1"),
                total_score - report.score + column_score,
            ));
        }
    }
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    candidates.truncate(26);

    Ok(CrackReport {
        plaintext: vigenere::decrypt(cipher, &best_key),
        best_key,
        score: total_score,
        candidates,
        low_confidence: min_column_len < MIN_RELIABLE_SAMPLE,
    })
}

/// Factor a product of exactly two primes (possibly equal) by trial
/// division, returning the factors with `p <= q`.
pub fn factor_semiprime(n: &BigUint) -> Result<(BigUint, BigUint), CryptanalysisError> {
    let not_semiprime = || CryptanalysisError::NotSemiprime(n.clone());
    if *n < BigUint::from(4u32) {
        return Err(not_semiprime());
    }
    let p = smallest_prime_factor(n).ok_or_else(not_semiprime)?; // prime n has none
    let q = n / &p;
    if !numtheory::is_prime(&q) {
        return Err(not_semiprime()); // three or more prime factors
    }
    Ok((p, q))
}

/// Smallest prime factor below the square root, or None when n is prime.
fn smallest_prime_factor(n: &BigUint) -> Option<BigUint> {
    if let Some(small) = n.to_u64() {
        return smallest_prime_factor_u64(small).map(BigUint::from);
    }
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return Some(two);
    }
    let mut i = BigUint::from(3u32);
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            return Some(i);
        }
        i += &two;
    }
    None
}

fn smallest_prime_factor_u64(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut i = 3u64;
    while i * i <= n {
        if n % i == 0 {
            return Some(i);
        }
        i += 2;
    }
    None
}

/// Default ceiling for [`break_rsa`]: moduli above this are reported
/// infeasible instead of ground through trial division.
pub fn default_factoring_bound() -> BigUint {
    BigUint::from(1_000_000_000_000u64) // 10^12
}

/// Recover the private key from a public key whose modulus is small enough
/// to factor: factor n, recompute phi, invert e.
pub fn break_rsa(key: &RsaPublicKey) -> Result<RsaPrivateKey, CryptanalysisError> {
    break_rsa_with_bound(key, &default_factoring_bound())
}

/// [`break_rsa`] with an explicit trial-division ceiling.
pub fn break_rsa_with_bound(
    key: &RsaPublicKey,
    bound: &BigUint,
) -> Result<RsaPrivateKey, CryptanalysisError> {
    if key.n > *bound {
        return Err(CryptanalysisError::ModulusTooLarge {
            n: key.n.clone(),
            bound: bound.clone(),
        });
    }
    let (p, q) = factor_semiprime(&key.n)?;
    let phi = numtheory::totient_semiprime(&p, &q)?;
    let d = numtheory::mod_inverse(&key.e, &phi)?;
    Ok(RsaPrivateKey {
        d,
        n: key.n.clone(),
    })
}

/// Render a shift candidate as its zero-based key letter. Convenience for
/// presenting shift-attack results next to keyword-attack results.
pub fn shift_to_letter(shift: u8) -> char {
    index_to_letter(shift % 26, Indexing::ZeroBased).expect("reduced shift decodes")
}
