//! Single-line text format for states.
//!
//! Every state type prints as space-separated `key=value` tokens in a
//! fixed order and parses back from exactly that shape:
//!
//! ```text
//! N=8 n=3 a=0,1,2          rhythm
//! N=8 n=3 k=0 a=0,1,2      marked rhythm
//! N=8 n=3 d=6,1,1          gap vector
//! N=8 n=3 k=0 d=6,1,1      marked gap vector
//! ```
//!
//! Parsers are strict: keys must appear in order, values must be plain
//! decimal integers, and trailing tokens are rejected.  Structural
//! validation (ranges, distinctness, gap sums) is done by the type
//! constructors, so a line that parses still fails on an invalid state.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rhythm::{DifferenceVector, MarkedDifference, MarkedRhythm, Rhythm, SpaceParams};

fn fmt_list(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    let mut first = true;
    for v in values {
        if !first {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
        first = false;
    }
    Ok(())
}

impl fmt::Display for Rhythm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} n={} a=", self.params().beats(), self.params().onsets())?;
        fmt_list(f, self.entries())
    }
}

impl fmt::Display for MarkedRhythm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} n={} k={} a=",
            self.params().beats(),
            self.params().onsets(),
            self.marker()
        )?;
        fmt_list(f, self.rhythm().entries())
    }
}

impl fmt::Display for DifferenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} n={} d=", self.params().beats(), self.params().onsets())?;
        fmt_list(f, self.gaps())
    }
}

impl fmt::Display for MarkedDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} n={} k={} d=",
            self.params().beats(),
            self.params().onsets(),
            self.marker()
        )?;
        fmt_list(f, self.gaps().gaps())
    }
}

/// Token-by-token reader for one state line.
struct Tokens<'a> {
    iter: std::str::SplitAsciiWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    fn new(line: &'a str) -> Self {
        Self {
            iter: line.split_ascii_whitespace(),
        }
    }

    /// The value part of the next token, which must be `key=...`.
    fn value_of(&mut self, key: &str) -> Result<&'a str> {
        let tok = self
            .iter
            .next()
            .ok_or_else(|| Error::Parse(format!("missing `{key}=...`")))?;
        let rest = tok
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| Error::Parse(format!("expected `{key}=...`, got `{tok}`")))?;
        if rest.is_empty() {
            return Err(Error::Parse(format!("empty value for `{key}=`")));
        }
        Ok(rest)
    }

    /// Rejects any leftover tokens.
    fn finish(mut self) -> Result<()> {
        match self.iter.next() {
            Some(tok) => Err(Error::Parse(format!("unexpected trailing `{tok}`"))),
            None => Ok(()),
        }
    }
}

fn parse_number(s: &str, what: &str) -> Result<u32> {
    s.parse::<u32>()
        .map_err(|_| Error::Parse(format!("invalid {what} `{s}`: expected a decimal integer")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|item| parse_number(item, what))
        .collect()
}

fn parse_params(tokens: &mut Tokens<'_>) -> Result<SpaceParams> {
    let beats = parse_number(tokens.value_of("N")?, "beat count")?;
    let onsets = parse_number(tokens.value_of("n")?, "onset count")?;
    SpaceParams::new(beats, onsets)
}

/// Parses a bare parameter pair, `N=<int> n=<int>`.
pub fn parse_space_params(line: &str) -> Result<SpaceParams> {
    let mut tokens = Tokens::new(line);
    let params = parse_params(&mut tokens)?;
    tokens.finish()?;
    Ok(params)
}

/// Parses `N=<int> n=<int> a=<int>,<int>,...`.
pub fn parse_rhythm(line: &str) -> Result<Rhythm> {
    let mut tokens = Tokens::new(line);
    let params = parse_params(&mut tokens)?;
    let entries = parse_list(tokens.value_of("a")?, "entry")?;
    tokens.finish()?;
    Rhythm::new(params, entries)
}

/// Parses `N=<int> n=<int> k=<int> a=<int>,<int>,...`.
pub fn parse_marked_rhythm(line: &str) -> Result<MarkedRhythm> {
    let mut tokens = Tokens::new(line);
    let params = parse_params(&mut tokens)?;
    let marker = parse_number(tokens.value_of("k")?, "marker")?;
    let entries = parse_list(tokens.value_of("a")?, "entry")?;
    tokens.finish()?;
    MarkedRhythm::new(marker, Rhythm::new(params, entries)?)
}

/// Parses `N=<int> n=<int> d=<int>,<int>,...`.
pub fn parse_difference(line: &str) -> Result<DifferenceVector> {
    let mut tokens = Tokens::new(line);
    let params = parse_params(&mut tokens)?;
    let gaps = parse_list(tokens.value_of("d")?, "gap")?;
    tokens.finish()?;
    DifferenceVector::new(params, gaps)
}

/// Parses `N=<int> n=<int> k=<int> d=<int>,<int>,...`.
pub fn parse_marked_difference(line: &str) -> Result<MarkedDifference> {
    let mut tokens = Tokens::new(line);
    let params = parse_params(&mut tokens)?;
    let marker = parse_number(tokens.value_of("k")?, "marker")?;
    let gaps = parse_list(tokens.value_of("d")?, "gap")?;
    tokens.finish()?;
    MarkedDifference::new(marker, DifferenceVector::new(params, gaps)?)
}

impl FromStr for Rhythm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rhythm(s)
    }
}

impl FromStr for MarkedRhythm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_marked_rhythm(s)
    }
}

impl FromStr for DifferenceVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_difference(s)
    }
}

impl FromStr for MarkedDifference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_marked_difference(s)
    }
}
