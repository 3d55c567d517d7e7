//! Ingestion of plain-text books into normalized token streams.
//!
//! A token is a maximal run of Unicode letters, where an apostrophe is kept
//! only when it has a letter on both sides (`don't`, `o'clock`). Everything
//! else, digits included, separates tokens. Tokens are lowercased and never
//! stemmed, so `work`, `works` and `worked` are three types.

use std::collections::HashMap;
use std::io::{BufRead, Read, Write};

use crate::{Error, Result};

const START_MARKER: &str = "*** START OF";
const END_MARKER: &str = "*** END OF";

/// Raw text of one book together with a label (usually the Gutenberg id).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawText {
    pub source_id: String,
    pub content: String,
}

impl RawText {
    pub fn new(source_id: impl Into<String>, content: impl Into<String>) -> Self {
        Self {
            source_id: source_id.into(),
            content: content.into(),
        }
    }
}

/// Result of [`strip_gutenberg`].
#[derive(Clone, Debug)]
pub struct Stripped {
    pub text: RawText,
    /// `false` when no `*** START OF` / `*** END OF` pair was found and the
    /// input was passed through unchanged.
    pub boilerplate_found: bool,
}

/// Removes the Project Gutenberg header and licence trailer.
///
/// Keeps the lines strictly between the first line containing `*** START OF`
/// and the next line containing `*** END OF`. Input without both markers is
/// returned unchanged.
pub fn strip_gutenberg(raw: RawText) -> Result<Stripped> {
    let content = &raw.content;
    let mut start = None;
    let mut end = None;
    let mut offset = 0;
    for line in content.split_inclusive('\n') {
        let next = offset + line.len();
        match start {
            None if line.contains(START_MARKER) => start = Some(next),
            Some(_) if line.contains(END_MARKER) => {
                end = Some(offset);
                break;
            }
            _ => {}
        }
        offset = next;
    }
    let (Some(start), Some(end)) = (start, end) else {
        return Ok(Stripped {
            text: raw,
            boilerplate_found: false,
        });
    };
    let body = content[start..end].trim();
    if body.is_empty() {
        return Err(Error::EmptyBody);
    }
    Ok(Stripped {
        text: RawText::new(raw.source_id, body),
        boilerplate_found: true,
    })
}

/// Ordered, lowercased word tokens of one text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenStream {
    pub source_id: String,
    tokens: Vec<String>,
}

impl TokenStream {
    /// Builds a stream from already-normalized tokens.
    ///
    /// Every token must be something [`tokenize`] could have produced.
    pub fn from_tokens(source_id: impl Into<String>, tokens: Vec<String>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::NoTokens);
        }
        if let Some(bad) = tokens.iter().find(|t| !is_normalized_token(t)) {
            return Err(Error::Parse(format!("not a normalized token: {bad:?}")));
        }
        Ok(Self {
            source_id: source_id.into(),
            tokens,
        })
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Total token count, T_tot.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Maps every token to a dense type id in order of first appearance.
    ///
    /// Returns the id sequence and the number of distinct types.
    pub fn type_ids(&self) -> (Vec<u32>, usize) {
        let mut index: HashMap<&str, u32> = HashMap::new();
        let ids = self
            .tokens
            .iter()
            .map(|t| {
                let next = index.len() as u32;
                *index.entry(t.as_str()).or_insert(next)
            })
            .collect();
        (ids, index.len())
    }

    /// Writes one token per line.
    pub fn write_tokens<W: Write>(&self, mut w: W) -> Result<()> {
        for t in &self.tokens {
            writeln!(w, "{t}")?;
        }
        Ok(())
    }

    /// Reads a token file written by [`TokenStream::write_tokens`].
    pub fn read_tokens<R: BufRead>(source_id: impl Into<String>, r: R) -> Result<Self> {
        let mut tokens = Vec::new();
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if !line.is_empty() {
                tokens.push(line.to_string());
            }
        }
        Self::from_tokens(source_id, tokens)
    }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_normalized_token(t: &str) -> bool {
    let chars: Vec<char> = t.chars().collect();
    !chars.is_empty()
        && chars.iter().enumerate().all(|(i, &c)| {
            if c == '\'' {
                i > 0 && i + 1 < chars.len() && chars[i - 1].is_alphabetic() && chars[i + 1].is_alphabetic()
            } else {
                c.is_alphabetic() && c.to_lowercase().eq(std::iter::once(c))
            }
        })
}

/// Splits text into lowercase word tokens.
pub fn tokenize(raw: &RawText) -> Result<TokenStream> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut chars = raw.content.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_alphabetic() {
            // A few capitals lowercase to a letter plus a combining mark; keep the letters.
            current.extend(c.to_lowercase().filter(|l| l.is_alphabetic()));
        } else if is_apostrophe(c) && !current.is_empty() && chars.peek().is_some_and(|n| n.is_alphabetic()) {
            current.push('\'');
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    if tokens.is_empty() {
        return Err(Error::NoTokens);
    }
    Ok(TokenStream {
        source_id: raw.source_id.clone(),
        tokens,
    })
}

/// Occurrence count per type (T_i in the urn model).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCensus {
    counts: HashMap<String, u64>,
    total: u64,
}

impl TypeCensus {
    pub fn from_counts(counts: HashMap<String, u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::NoTokens);
        }
        if counts.values().any(|&c| c == 0) {
            return Err(Error::Parse("census count of zero".into()));
        }
        let total = counts.values().sum();
        Ok(Self { counts, total })
    }

    pub fn get(&self, ty: &str) -> u64 {
        self.counts.get(ty).copied().unwrap_or(0)
    }

    /// V_tot.
    pub fn num_types(&self) -> usize {
        self.counts.len()
    }

    /// T_tot.
    pub fn total_tokens(&self) -> u64 {
        self.total
    }

    /// Counts without type labels, in descending order.
    pub fn count_vector(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.counts.values().copied().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Entries sorted by descending count, ties broken lexicographically.
    pub fn sorted(&self) -> Vec<(&str, u64)> {
        let mut v: Vec<(&str, u64)> = self.counts.iter().map(|(k, &c)| (k.as_str(), c)).collect();
        v.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Writes the `type,count` CSV.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["type", "count"])?;
        for (ty, count) in self.sorted() {
            out.write_record([ty, &count.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a CSV written by [`TypeCensus::write_csv`].
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let mut counts = HashMap::new();
        for row in rdr.records() {
            let row = row?;
            if row.len() != 2 {
                return Err(Error::Parse(format!("expected 2 columns, got {}", row.len())));
            }
            let count: u64 = row[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad count {:?}", &row[1])))?;
            if counts.insert(row[0].to_string(), count).is_some() {
                return Err(Error::Parse(format!("duplicate type {:?}", &row[0])));
            }
        }
        Self::from_counts(counts)
    }
}

/// Counts occurrences of every type in the stream.
pub fn census(stream: &TokenStream) -> TypeCensus {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for t in stream.tokens() {
        *counts.entry(t.clone()).or_default() += 1;
    }
    TypeCensus {
        counts,
        total: stream.len() as u64,
    }
}
