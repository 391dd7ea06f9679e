//! Prime corpus files: one decimal prime per line, `#` comments and blank
//! lines ignored.

use std::fs;
use std::path::Path;

use modsqrt_core::OddPrimeField;
use num_bigint::BigUint;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: invalid integer {text:?}")]
    Parse { line: usize, text: String },
    #[error("line {line}: not prime")]
    NotPrime { line: usize },
}

pub fn load_prime_corpus(path: impl AsRef<Path>) -> Result<Vec<OddPrimeField>, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_prime_corpus(&text)
}

pub fn parse_prime_corpus(text: &str) -> Result<Vec<OddPrimeField>, CorpusError> {
    let mut fields = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let p: BigUint = trimmed.parse().map_err(|_| CorpusError::Parse {
            line,
            text: trimmed.to_owned(),
        })?;
        fields.push(OddPrimeField::new(p).map_err(|_| CorpusError::NotPrime { line })?);
    }
    Ok(fields)
}
