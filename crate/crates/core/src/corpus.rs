//! Corpus ingestion: tokenization, E2E meaning-representation parsing and
//! the uniform [`Sample`]/[`Corpus`] model shared by every other module.
//!
//! Two input formats are supported:
//!
//! * E2E CSV with a `mr,ref` header, where `mr` is a meaning representation
//!   such as `name[The Vaults], eatType[pub]`.
//! * Flattened JSONL, one `{"data": [[slot, value], ...], "text": "..."}`
//!   object per line. Three-element entries are read as
//!   `[subject, relation, object]` triples.
//!
//! [`Corpus::write_jsonl`] emits the flattened format (plus ids and token
//! columns), so a written corpus loads back through [`load_jsonl`].

use std::borrow::Cow;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Characters split off the start and end of a whitespace chunk.
pub const DETACHED_PUNCTUATION: &[char] =
    &['.', ',', '!', '?', ';', ':', '(', ')', '[', ']', '"', '\''];

/// A non-empty unit token with no whitespace inside.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Token(String);

impl Token {
    /// Returns `None` if `surface` is empty or contains whitespace.
    pub fn new(surface: impl Into<String>) -> Option<Self> {
        let surface = surface.into();
        if surface.is_empty() || surface.chars().any(char::is_whitespace) {
            None
        } else {
            Some(Token(surface))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Token {
    type Error = String;

    fn try_from(value: String) -> std::result::Result<Self, Self::Error> {
        Token::new(value.clone()).ok_or_else(|| format!("invalid token {value:?}"))
    }
}

impl From<Token> for String {
    fn from(t: Token) -> String {
        t.0
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Which part of a sample a statistic or metric looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Data,
    Text,
    /// Data tokens followed by text tokens.
    Joint,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Data, Side::Text, Side::Joint];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Data => "data",
            Side::Text => "text",
            Side::Joint => "joint",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "data" => Ok(Side::Data),
            "text" => Ok(Side::Text),
            "joint" => Ok(Side::Joint),
            other => Err(Error::config(format!(
                "unknown side {other:?} (expected data, text or joint)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotValue {
    pub slot: String,
    pub value_tokens: Vec<Token>,
}

impl SlotValue {
    /// The slot name as it appears in a linearized sequence. Internal
    /// whitespace (E2E has `customer rating`) is replaced with `_` so the
    /// slot stays a single token.
    pub fn slot_token(&self) -> Token {
        let joined = self.slot.split_whitespace().collect::<Vec<_>>().join("_");
        Token::new(joined).expect("slot names are validated non-empty on construction")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub id: usize,
    pub data: Vec<SlotValue>,
    pub data_tokens: Vec<Token>,
    pub text_tokens: Vec<Token>,
    pub raw_text: String,
}

impl Sample {
    pub fn new(id: usize, data: Vec<SlotValue>, raw_text: impl Into<String>) -> Self {
        let raw_text = raw_text.into();
        Sample {
            id,
            data_tokens: linearize_data(&data),
            text_tokens: tokenize(&raw_text),
            data,
            raw_text,
        }
    }

    /// Token sequence for one side. `Joint` is data tokens followed by text tokens.
    pub fn tokens(&self, side: Side) -> Cow<'_, [Token]> {
        match side {
            Side::Data => Cow::Borrowed(&self.data_tokens),
            Side::Text => Cow::Borrowed(&self.text_tokens),
            Side::Joint => {
                let mut joint = Vec::with_capacity(self.data_tokens.len() + self.text_tokens.len());
                joint.extend_from_slice(&self.data_tokens);
                joint.extend_from_slice(&self.text_tokens);
                Cow::Owned(joint)
            }
        }
    }
}

/// An immutable, id-ordered collection of samples. Ids are `0..len()`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    samples: Vec<Sample>,
}

impl Corpus {
    /// Builds a corpus from `(data, raw_text)` pairs, assigning ids in order.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Vec<SlotValue>, S)>,
        S: Into<String>,
    {
        let samples = pairs
            .into_iter()
            .enumerate()
            .map(|(id, (data, text))| Sample::new(id, data, text))
            .collect();
        Corpus { samples }
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&Sample> {
        self.samples.get(id)
    }

    /// Writes the canonical corpus JSONL: one object per sample with `id`,
    /// `data`, `text`, `data_tokens` and `text_tokens`. Values are written as
    /// their tokens joined by single spaces.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for sample in &self.samples {
            let record = CanonicalRecord {
                id: sample.id,
                data: sample
                    .data
                    .iter()
                    .map(|sv| vec![sv.slot.clone(), join_tokens(&sv.value_tokens)])
                    .collect(),
                text: &sample.raw_text,
                data_tokens: &sample.data_tokens,
                text_tokens: &sample.text_tokens,
            };
            serde_json::to_writer(&mut out, &record)?;
            out.write_all(b"\n")
                .map_err(|e| Error::io("<corpus output>", e))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct CanonicalRecord<'a> {
    id: usize,
    data: Vec<Vec<String>>,
    text: &'a str,
    data_tokens: &'a [Token],
    text_tokens: &'a [Token],
}

fn join_tokens(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(Token::as_str)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Splits on whitespace, then detaches leading and trailing
/// [`DETACHED_PUNCTUATION`] characters as single-character tokens.
/// Case is preserved.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let start = chunk
            .char_indices()
            .find(|(_, c)| !DETACHED_PUNCTUATION.contains(c))
            .map(|(i, _)| i)
            .unwrap_or(chunk.len());
        let end = chunk
            .char_indices()
            .rev()
            .find(|(_, c)| !DETACHED_PUNCTUATION.contains(c))
            .map(|(i, c)| i + c.len_utf8())
            .unwrap_or(start)
            .max(start);

        tokens.extend(chunk[..start].chars().map(|c| Token(c.to_string())));
        if start < end {
            tokens.push(Token(chunk[start..end].to_owned()));
        }
        tokens.extend(chunk[end..].chars().map(|c| Token(c.to_string())));
    }
    tokens
}

/// Emits each slot name as one token followed by its value tokens.
pub fn linearize_data(data: &[SlotValue]) -> Vec<Token> {
    let mut out = Vec::new();
    for sv in data {
        out.push(sv.slot_token());
        out.extend(sv.value_tokens.iter().cloned());
    }
    out
}

fn mr_error(offset: usize, message: impl Into<String>) -> Error {
    Error::MeaningRepresentation {
        offset,
        message: message.into(),
    }
}

/// Parses an E2E meaning representation, `slot[value](, slot[value])*`.
pub fn parse_e2e_mr(mr: &str) -> Result<Vec<SlotValue>> {
    let bytes = mr.as_bytes();
    let skip_ws = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };

    let mut pairs = Vec::new();
    let mut pos = skip_ws(0);
    if pos == bytes.len() {
        return Err(mr_error(pos, "empty meaning representation"));
    }

    loop {
        let slot_start = pos;
        let open = match mr[pos..].find(['[', ']', ',']) {
            Some(rel) if bytes[pos + rel] == b'[' => pos + rel,
            Some(rel) => return Err(mr_error(pos + rel, "expected '[' after slot name")),
            None => return Err(mr_error(bytes.len(), "expected '[' after slot name")),
        };
        let slot = mr[slot_start..open].trim();
        if slot.is_empty() {
            return Err(mr_error(slot_start, "empty slot name"));
        }

        let value_start = open + 1;
        let close = match mr[value_start..].find(['[', ']']) {
            Some(rel) if bytes[value_start + rel] == b']' => value_start + rel,
            Some(rel) => return Err(mr_error(value_start + rel, "nested '[' inside value")),
            None => return Err(mr_error(open, "unbalanced '['")),
        };
        let value_tokens = tokenize(&mr[value_start..close]);
        if value_tokens.is_empty() {
            return Err(mr_error(
                value_start,
                format!("empty value for slot {slot:?}"),
            ));
        }
        pairs.push(SlotValue {
            slot: slot.to_owned(),
            value_tokens,
        });

        pos = skip_ws(close + 1);
        match bytes.get(pos) {
            None => break,
            Some(b',') => pos = skip_ws(pos + 1),
            Some(_) => return Err(mr_error(pos, "expected ',' between slot-value pairs")),
        }
        if pos == bytes.len() {
            return Err(mr_error(pos, "trailing ','"));
        }
    }
    Ok(pairs)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Loads an E2E CSV (`mr,ref` header). Row numbers in errors count data
/// records from 1, excluding the header.
pub fn load_e2e(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    read_e2e(open(path)?)
}

pub fn read_e2e<R: std::io::Read>(input: R) -> Result<Corpus> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Row {
                row: 0,
                message: format!("missing column {name:?} in header"),
            })
    };
    let mr_col = column("mr")?;
    let ref_col = column("ref")?;

    let mut pairs = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| Error::Row {
            row,
            message: e.to_string(),
        })?;
        let (Some(mr), Some(text)) = (record.get(mr_col), record.get(ref_col)) else {
            return Err(Error::Row {
                row,
                message: "missing mr or ref field".into(),
            });
        };
        let data = parse_e2e_mr(mr).map_err(|e| Error::Row {
            row,
            message: e.to_string(),
        })?;
        pairs.push((data, text.to_owned()));
    }
    Ok(Corpus::from_pairs(pairs))
}

#[derive(Deserialize)]
struct FlatRecord {
    #[serde(default)]
    id: Option<usize>,
    data: Vec<Vec<String>>,
    text: String,
}

fn flat_entry(entry: Vec<String>) -> std::result::Result<SlotValue, String> {
    let (slot, value_tokens) = match entry.as_slice() {
        [slot, value] => (slot.clone(), tokenize(value)),
        [subject, relation, object] => {
            let mut tokens = tokenize(subject);
            tokens.extend(tokenize(object));
            (relation.clone(), tokens)
        }
        _ => {
            return Err(format!(
                "data entries must be [slot, value] or [subject, relation, object], got {} fields",
                entry.len()
            ))
        }
    };
    if slot.trim().is_empty() {
        return Err("empty slot name".into());
    }
    if value_tokens.is_empty() {
        return Err(format!("empty value for slot {slot:?}"));
    }
    Ok(SlotValue {
        slot: slot.trim().to_owned(),
        value_tokens,
    })
}

/// Loads a flattened corpus JSONL. Blank lines are ignored; line numbers in
/// errors are 1-based physical lines.
pub fn load_jsonl(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    read_jsonl(BufReader::new(open(path)?))
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Corpus> {
    let mut pairs = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Line {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::Line {
            line: line_no,
            message,
        };
        let record: FlatRecord = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        if let Some(id) = record.id {
            if id != pairs.len() {
                return Err(bad(format!(
                    "id {id} out of sequence, expected {}",
                    pairs.len()
                )));
            }
        }
        let data = record
            .data
            .into_iter()
            .map(flat_entry)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(bad)?;
        pairs.push((data, record.text));
    }
    Ok(Corpus::from_pairs(pairs))
}
