use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A word of length n with optional erasures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    symbols: Vec<Option<u64>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad symbol token {token:?} at position {position}")]
pub struct CodewordParseError {
    pub position: usize,
    pub token: String,
}

impl Codeword {
    pub fn from_values(values: Vec<u64>) -> Self {
        Codeword {
            symbols: values.into_iter().map(Some).collect(),
        }
    }

    pub fn from_symbols(symbols: Vec<Option<u64>>) -> Self {
        Codeword { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Option<u64>] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.symbols[i]
    }

    pub fn erase(&mut self, i: usize) {
        self.symbols[i] = None;
    }

    pub fn with_erasures(&self, erased: &[usize]) -> Self {
        let mut out = self.clone();
        for &e in erased {
            out.erase(e);
        }
        out
    }

    pub fn erased(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.symbols[i].is_none()).collect()
    }

    pub fn erasure_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }

    /// All values, if nothing is erased.
    pub fn values(&self) -> Option<Vec<u64>> {
        self.symbols.iter().copied().collect()
    }
}

/// Space-separated integers with `?` marking erasures.
impl FromStr for Codeword {
    type Err = CodewordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols = s
            .split_whitespace()
            .enumerate()
            .map(|(i, tok)| {
                if tok == "?" {
                    Ok(None)
                } else {
                    tok.parse::<u64>().map(Some).map_err(|_| CodewordParseError {
                        position: i + 1,
                        token: tok.to_string(),
                    })
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Codeword { symbols })
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match s {
                Some(v) => write!(f, "{v}")?,
                None => f.write_str("?")?,
            }
        }
        Ok(())
    }
}
