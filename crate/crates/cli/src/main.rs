//! `rankpke` — key generation, encryption, decryption, analysis and
//! parameter reporting for the rank-metric schemes.
//!
//! Exit codes: 0 success · 2 usage or parameter error · 3 decoding failure ·
//! 4 malformed or corrupted file.

mod bytecodec;
mod commands;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankpke::{Error, Scheme};

#[derive(Parser)]
#[command(name = "rankpke", version, about = "Rank-metric public-key encryption toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a key pair and write both key files
    Keygen(KeygenArgs),
    /// Encrypt a message under a public key
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext and verify its consistency
    Decrypt(DecryptArgs),
    /// Run distinguisher and resistance checks, or estimate attack costs
    Analyze(AnalyzeArgs),
    /// Print the parameter registry and the published size comparison
    Params(ParamsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
}

/// Parameter selection: a named preset or an explicit shape.
#[derive(Args)]
struct ParamArgs {
    /// Named set: a registry row (mod1-128, …) or a demo preset (mod1-demo, …)
    #[arg(long, conflicts_with_all = ["scheme", "q", "m", "n", "k", "l", "lambda"])]
    preset: Option<String>,
    /// Scheme for explicit parameters: loidreau, mod1 or mod2
    #[arg(long, value_parser = Scheme::parse)]
    scheme: Option<Scheme>,
    /// Base field size (prime)
    #[arg(long)]
    q: Option<u8>,
    /// Extension degree
    #[arg(long)]
    m: Option<usize>,
    /// Code length
    #[arg(long)]
    n: Option<usize>,
    /// Code dimension
    #[arg(long)]
    k: Option<usize>,
    /// Mask dimension (subcode co-dimension for mod1, column rank for mod2)
    #[arg(long)]
    l: Option<usize>,
    /// Dimension of the scrambler subspace V (≥ 2)
    #[arg(long)]
    lambda: Option<usize>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<rankpke::SchemeParams, Failure> {
        if let Some(name) = &self.preset {
            return Ok(rankpke::analysis::preset(name)?);
        }
        let scheme = self.scheme.ok_or_else(|| {
            Failure::Usage("pass --preset NAME, or --scheme with --q --m --n --k".into())
        })?;
        let missing = |flag: &str| Failure::Usage(format!("--{flag} is required with --scheme"));
        let q = self.q.ok_or_else(|| missing("q"))?;
        let m = self.m.ok_or_else(|| missing("m"))?;
        let n = self.n.ok_or_else(|| missing("n"))?;
        let k = self.k.ok_or_else(|| missing("k"))?;
        let l = self.l.unwrap_or(0);
        let lambda = self.lambda.unwrap_or(2);
        Ok(rankpke::SchemeParams::new(scheme, q, m, n, k, l, lambda)?)
    }
}

/// Seed selection; the stream construction is pinned (ChaCha20 keyed by the
/// 32-byte seed), so equal seeds give byte-identical runs.
#[derive(Args)]
struct SeedArgs {
    /// 32-byte seed, 64 hex characters ($RANKPKE_SEED is the fallback)
    #[arg(long)]
    seed: Option<String>,
    /// Refuse to fall back to OS randomness when no seed is given
    #[arg(long)]
    deterministic: bool,
}

impl SeedArgs {
    fn resolve(&self) -> Result<[u8; 32], Failure> {
        let hex_seed = match &self.seed {
            Some(s) => Some(s.clone()),
            None => std::env::var("RANKPKE_SEED").ok(),
        };
        match hex_seed {
            Some(s) => {
                let bytes = hex::decode(s.trim())
                    .map_err(|e| Failure::Usage(format!("seed is not valid hex: {e}")))?;
                <[u8; 32]>::try_from(bytes.as_slice()).map_err(|_| {
                    Failure::Usage(format!(
                        "seed must be 32 bytes (64 hex characters), got {}",
                        bytes.len()
                    ))
                })
            }
            None if self.deterministic => Err(Failure::Usage(
                "--deterministic needs --seed or RANKPKE_SEED".into(),
            )),
            None => Ok(rand::random()),
        }
    }
}

#[derive(Args)]
struct KeygenArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    seed: SeedArgs,
    /// Where to write the public key
    #[arg(long = "pub", value_name = "FILE")]
    pub_path: PathBuf,
    /// Where to write the secret key
    #[arg(long = "sec", value_name = "FILE")]
    sec_path: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

#[derive(Args)]
struct EncryptArgs {
    /// Public key file
    #[arg(long = "pub", value_name = "FILE")]
    pub_path: PathBuf,
    /// Message file: a serialized message, or raw bytes with --encode-bytes
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Where to write the ciphertext
    #[arg(long = "out", value_name = "FILE")]
    output: PathBuf,
    /// Treat the input as raw bytes and pack them into message symbols
    #[arg(long)]
    encode_bytes: bool,
    #[command(flatten)]
    seed: SeedArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

#[derive(Args)]
struct DecryptArgs {
    /// Secret key file
    #[arg(long = "sec", value_name = "FILE")]
    sec_path: PathBuf,
    /// Ciphertext file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Where to write the recovered message
    #[arg(long = "out", value_name = "FILE")]
    output: PathBuf,
    /// Unpack the message symbols back into the raw bytes they encode
    #[arg(long)]
    encode_bytes: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Analyze a stored key pair instead of generating fresh ones
    #[arg(long = "sec", value_name = "FILE", conflicts_with = "preset")]
    sec_path: Option<PathBuf>,
    /// Fresh key pairs to examine
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Print generic-attack cost estimates instead of running trials
    #[arg(long)]
    costs: bool,
    #[command(flatten)]
    seed: SeedArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

/// Anything a command can fail with, mapped onto the exit-code contract.
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::DecodingFailure) => 3,
            Failure::Core(Error::Format(_)) | Failure::Core(Error::Corruption) => 4,
            Failure::Core(_) | Failure::Io(..) | Failure::Usage(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

fn read_file(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Io(path.clone(), e))
}

fn write_file(path: &PathBuf, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::Io(path.clone(), e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Keygen(args) => commands::keygen(args),
        Cmd::Encrypt(args) => commands::encrypt(args),
        Cmd::Decrypt(args) => commands::decrypt(args),
        Cmd::Analyze(args) => commands::analyze(args),
        Cmd::Params(args) => commands::params(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
