use cipherlab::cryptanalysis::{self, CrackReport, FrequencyTable};
use cipherlab::rsa::{self, RsaKeyFile, RsaPublicKey};
use cipherlab::textcodec::{normalize, NormalizedText};
use cipherlab::vigenere::{self, VigenereKey};
use cipherlab::{caesar, CaesarKey};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use std::fmt::Display;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "cipherlab",
    version,
    about = "Classical ciphers, textbook RSA, and the attacks that break them",
    long_about = "Classical ciphers, textbook RSA, and the attacks that break them.\n\n\
        Text is read from standard input unless --input is given, and is \
        normalized before processing: ASCII letters are uppercased and every \
        other character (spaces, digits, punctuation) is dropped. All ciphers \
        operate on the 26 letters A-Z only.\n\n\
        Exit codes: 0 success, 1 usage error, 2 domain error."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-shift substitution cipher
    Caesar {
        #[command(subcommand)]
        action: CaesarAction,
    },
    /// Repeating-keyword polyalphabetic cipher
    Vigenere {
        #[command(subcommand)]
        action: VigenereAction,
    },
    /// Textbook RSA on integer values and single letters
    Rsa {
        #[command(subcommand)]
        action: RsaAction,
    },
    /// Letter-frequency statistics
    Freq {
        #[command(subcommand)]
        action: FreqAction,
    },
}

#[derive(Args)]
struct InputArg {
    /// Read text from this file instead of standard input
    #[arg(long, short = 'i', value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct CrackArgs {
    /// Print only the top N candidates
    #[arg(long, value_name = "N")]
    top: Option<usize>,
    /// Expected letter distribution file (26 lines `<letter> <proportion>`)
    /// overriding the built-in English table
    #[arg(long, value_name = "FILE")]
    freq_table: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CaesarAction {
    /// Shift each letter forward by the key
    Encrypt {
        /// Shift amount; reduced mod 26
        #[arg(long)]
        shift: i64,
        #[command(flatten)]
        input: InputArg,
    },
    /// Shift each letter back by the key
    Decrypt {
        #[arg(long)]
        shift: i64,
        #[command(flatten)]
        input: InputArg,
    },
    /// Recover the shift by frequency analysis over all 26 candidates
    Crack {
        #[command(flatten)]
        crack: CrackArgs,
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum VigenereAction {
    /// Add the repeating keyword position by position
    Encrypt {
        /// Keyword; normalized to letters, must be nonempty
        #[arg(long)]
        key: String,
        #[command(flatten)]
        input: InputArg,
    },
    /// Subtract the repeating keyword position by position
    Decrypt {
        #[arg(long)]
        key: String,
        #[command(flatten)]
        input: InputArg,
    },
    /// Estimate the key length, then crack each column as a shift cipher
    Crack {
        /// Assume this key length instead of estimating one
        #[arg(long, value_name = "L")]
        key_length: Option<usize>,
        /// Largest key length considered by the estimate
        #[arg(long, value_name = "M", default_value_t = 20)]
        max_key_length: usize,
        #[command(flatten)]
        crack: CrackArgs,
        #[command(flatten)]
        input: InputArg,
    },
    /// Print the 26x26 cipher square, one row per line
    Square,
}

#[derive(Subcommand)]
enum RsaAction {
    /// Generate a keypair from two distinct primes and write key files
    Keygen {
        #[arg(long)]
        p: BigUint,
        #[arg(long)]
        q: BigUint,
        /// Public exponent; defaults to the smallest valid one
        #[arg(long)]
        e: Option<BigUint>,
        /// Private exponent; defaults to the inverse of e mod phi
        #[arg(long)]
        d: Option<BigUint>,
        /// Write `<prefix>.pub` and `<prefix>.priv`
        #[arg(long, value_name = "PATH")]
        out_prefix: PathBuf,
    },
    /// Encrypt with a public key file: letters from input, or one --value
    Encrypt {
        #[arg(long, value_name = "FILE")]
        key_file: PathBuf,
        /// Integer mode: encrypt this value instead of reading text
        #[arg(long, value_name = "M")]
        value: Option<BigUint>,
        #[command(flatten)]
        input: InputArg,
    },
    /// Decrypt with a private key file: a ciphertext stream, or one --value
    Decrypt {
        #[arg(long, value_name = "FILE")]
        key_file: PathBuf,
        #[arg(long, value_name = "C")]
        value: Option<BigUint>,
        #[command(flatten)]
        input: InputArg,
    },
    /// Recover the private key by factoring the modulus of a public key file
    Break {
        #[arg(long, value_name = "FILE")]
        key_file: PathBuf,
        /// Trial-division ceiling; moduli above it are reported infeasible
        #[arg(long, value_name = "B")]
        bound: Option<BigUint>,
    },
}

#[derive(Subcommand)]
enum FreqAction {
    /// Print 26 lines `<letter> <count> <proportion>` for the input text
    Analyze {
        #[command(flatten)]
        input: InputArg,
    },
}

/// Anything that maps to exit code 2: a library domain error or an I/O
/// failure on a named file.
#[derive(Debug)]
pub enum CliError {
    Lib(cipherlab::Error),
    Io { path: PathBuf, source: std::io::Error },
    WrongKeyKind { expected: &'static str },
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.name(),
            CliError::Io { .. } => "IoError",
            CliError::WrongKeyKind { .. } => "WrongKeyType",
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::WrongKeyKind { expected } => {
                write!(f, "key file holds the wrong kind of key; expected {expected}")
            }
        }
    }
}

impl<E: Into<cipherlab::Error>> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::Lib(e.into())
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Caesar { action } => run_caesar(action),
        Command::Vigenere { action } => run_vigenere(action),
        Command::Rsa { action } => run_rsa(action),
        Command::Freq { action } => run_freq(action),
    }
}

fn run_caesar(action: CaesarAction) -> Result<(), CliError> {
    match action {
        CaesarAction::Encrypt { shift, input } => {
            let text = read_text(&input)?;
            println!("{}", caesar::encrypt(&text, CaesarKey::new(shift)));
        }
        CaesarAction::Decrypt { shift, input } => {
            let text = read_text(&input)?;
            println!("{}", caesar::decrypt(&text, CaesarKey::new(shift)));
        }
        CaesarAction::Crack { crack, input } => {
            let text = read_text(&input)?;
            let table = load_table(&crack)?;
            let report = cryptanalysis::crack_caesar_with_table(&text, &table)?;
            print_report(&report, crack.top, |shift| shift.to_string());
        }
    }
    Ok(())
}

fn run_vigenere(action: VigenereAction) -> Result<(), CliError> {
    match action {
        VigenereAction::Encrypt { key, input } => {
            let text = read_text(&input)?;
            let key = VigenereKey::new(&key)?;
            println!("{}", vigenere::encrypt(&text, &key));
        }
        VigenereAction::Decrypt { key, input } => {
            let text = read_text(&input)?;
            let key = VigenereKey::new(&key)?;
            println!("{}", vigenere::decrypt(&text, &key));
        }
        VigenereAction::Crack {
            key_length,
            max_key_length,
            crack,
            input,
        } => {
            let text = read_text(&input)?;
            let table = load_table(&crack)?;
            let key_length = match key_length {
                Some(len) => len,
                None => cryptanalysis::estimate_key_length(&text, max_key_length)?
                    .into_iter()
                    .find(|&len| len <= text.len())
                    .unwrap_or(1),
            };
            let report = cryptanalysis::crack_vigenere_with_table(&text, key_length, &table)?;
            print_report(&report, crack.top, |key| key.word().as_str().to_string());
        }
        VigenereAction::Square => {
            println!("{}", vigenere::build_square());
        }
    }
    Ok(())
}

fn run_rsa(action: RsaAction) -> Result<(), CliError> {
    match action {
        RsaAction::Keygen { p, q, e, d, out_prefix } => {
            let pair = rsa::generate_keypair(&p, &q, e.as_ref(), d.as_ref())?;
            let pub_path = with_suffix(&out_prefix, ".pub");
            let priv_path = with_suffix(&out_prefix, ".priv");
            write_file(&pub_path, &pair.public.to_key_file())?;
            write_file(&priv_path, &pair.private.to_key_file())?;
            println!("p {}", pair.p);
            println!("q {}", pair.q);
            println!("n {}", pair.n);
            println!("phi {}", pair.phi);
            println!("e {}", pair.public.e);
            println!("d {}", pair.private.d);
        }
        RsaAction::Encrypt { key_file, value, input } => {
            let key = read_public_key(&key_file)?;
            match value {
                Some(m) => println!("{}", rsa::encrypt_value(&m, &key)?),
                None => {
                    let text = read_text(&input)?;
                    let values = rsa::encrypt_text(&text, &key)?;
                    println!("{}", rsa::format_ciphertext(&values));
                }
            }
        }
        RsaAction::Decrypt { key_file, value, input } => {
            let key = match parse_key_file(&key_file)? {
                RsaKeyFile::Private(key) => key,
                RsaKeyFile::Public(_) => {
                    return Err(CliError::WrongKeyKind { expected: "a private key" })
                }
            };
            match value {
                Some(c) => println!("{}", rsa::decrypt_value(&c, &key)?),
                None => {
                    let stream = read_raw(&input)?;
                    let values = rsa::parse_ciphertext(&stream)?;
                    println!("{}", rsa::decrypt_text(&values, &key)?);
                }
            }
        }
        RsaAction::Break { key_file, bound } => {
            let key = read_public_key(&key_file)?;
            let bound = bound.unwrap_or_else(cryptanalysis::default_factoring_bound);
            let recovered = cryptanalysis::break_rsa_with_bound(&key, &bound)?;
            print!("{}", recovered.to_key_file());
        }
    }
    Ok(())
}

fn run_freq(action: FreqAction) -> Result<(), CliError> {
    match action {
        FreqAction::Analyze { input } => {
            let text = read_text(&input)?;
            let table = cryptanalysis::observed_frequencies(&text)?;
            let counts = cryptanalysis::letter_counts(&text);
            for (i, letter) in ('A'..='Z').enumerate() {
                println!("{letter} {} {:.6}", counts[i], table.proportion(letter));
            }
        }
    }
    Ok(())
}

/// Candidate table (`<rank> <key> <score>`, scores to 4 decimals), a blank
/// line, then the winning plaintext.
fn print_report<K>(report: &CrackReport<K>, top: Option<usize>, render: impl Fn(&K) -> String) {
    let shown = top.unwrap_or(report.candidates.len());
    for (rank, (key, score)) in report.candidates.iter().take(shown).enumerate() {
        println!("{} {} {score:.4}", rank + 1, render(key));
    }
    println!();
    println!("{}", report.plaintext);
}

fn read_raw(input: &InputArg) -> Result<String, CliError> {
    match &input.input {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdin>"),
                    source,
                })?;
            Ok(buffer)
        }
    }
}

fn read_text(input: &InputArg) -> Result<NormalizedText, CliError> {
    Ok(normalize(&read_raw(input)?))
}

fn load_table(crack: &CrackArgs) -> Result<FrequencyTable, CliError> {
    match &crack.freq_table {
        Some(path) => {
            let contents = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(FrequencyTable::from_lines(&contents)?)
        }
        None => Ok(FrequencyTable::english().clone()),
    }
}

fn parse_key_file(path: &Path) -> Result<RsaKeyFile, CliError> {
    let contents = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(RsaKeyFile::parse(&contents)?)
}

fn read_public_key(path: &Path) -> Result<RsaPublicKey, CliError> {
    match parse_key_file(path)? {
        RsaKeyFile::Public(key) => Ok(key),
        RsaKeyFile::Private(_) => Err(CliError::WrongKeyKind { expected: "a public key" }),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
