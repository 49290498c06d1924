//! Labeled text corpora: ingestion, normalization, deduplication,
//! vocabularies, and the two vectorizations (token counts and averaged
//! pretrained word vectors).

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};

use crate::error::{Error, Result};
use crate::matrix::{ClassId, FeatureMatrix};

/// One text with its category name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub text: String,
    pub label: String,
}

/// Dense label-string <-> class-id bijection, ids assigned in
/// first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelIndex {
    names: Vec<String>,
    ids: HashMap<String, ClassId>,
}

impl LabelIndex {
    pub fn id_of(&self, label: &str) -> Option<ClassId> {
        self.ids.get(label).copied()
    }

    pub fn name_of(&self, id: ClassId) -> Option<&str> {
        self.names.get(id).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn intern(&mut self, label: &str) -> ClassId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.names.len();
        self.names.push(label.to_string());
        self.ids.insert(label.to_string(), id);
        id
    }
}

/// An ordered document collection with its label vocabulary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledCorpus {
    documents: Vec<Document>,
    label_index: LabelIndex,
}

impl LabeledCorpus {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a document. Raw ingestion rejects empty text and empty labels.
    pub fn push(&mut self, text: impl Into<String>, label: impl Into<String>) -> Result<()> {
        let text = text.into();
        let label = label.into();
        let index = self.documents.len();
        if text.is_empty() {
            return Err(Error::EmptyText { index });
        }
        if label.is_empty() {
            return Err(Error::EmptyLabel { index });
        }
        self.label_index.intern(&label);
        self.documents.push(Document { text, label });
        Ok(())
    }

    pub fn from_documents(docs: impl IntoIterator<Item = Document>) -> Result<Self> {
        let mut corpus = Self::new();
        for d in docs {
            corpus.push(d.text, d.label)?;
        }
        Ok(corpus)
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn label_index(&self) -> &LabelIndex {
        &self.label_index
    }

    /// Class id of document `i`.
    pub fn class_id(&self, i: usize) -> ClassId {
        self.label_index.id_of(&self.documents[i].label).unwrap()
    }

    /// Reads a JSON Lines stream: one object per line with string fields
    /// `text` and `label`; unknown fields are ignored. Errors carry the
    /// 1-based line number.
    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self> {
        let mut corpus = Self::new();
        for (idx, line) in r.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let doc: Document = serde_json::from_str(&line).map_err(|e| Error::Format {
                line: line_no,
                message: e.to_string(),
            })?;
            corpus.push(doc.text, doc.label).map_err(|e| Error::Format {
                line: line_no,
                message: e.to_string(),
            })?;
        }
        Ok(corpus)
    }

    /// Writes the JSON Lines form, one document per line.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for doc in &self.documents {
            serde_json::to_writer(&mut w, doc).map_err(std::io::Error::other)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Default stopword list bundled with the crate.
static DEFAULT_STOPWORDS: LazyLock<HashSet<String>> = LazyLock::new(|| {
    parse_stopwords(include_str!("../data/stopwords_es.txt").as_bytes())
        .expect("bundled stopword list is valid")
});

/// Parses a stopword file: one token per line, `#` starts a comment line.
/// Entries are themselves normalized (lowercased, punctuation stripped).
pub fn parse_stopwords<R: BufRead>(r: R) -> Result<HashSet<String>> {
    // built by hand: NormalizeConfig::default() reads DEFAULT_STOPWORDS,
    // whose initializer is this very function
    let entry_config = NormalizeConfig {
        lowercase: true,
        strip_punctuation: true,
        strip_control_chars: true,
        drop_digits: false,
        stopwords: HashSet::new(),
    };
    let mut set = HashSet::new();
    for line in r.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        for token in normalize(trimmed, &entry_config) {
            set.insert(token);
        }
    }
    Ok(set)
}

/// Text normalization switches. The default matches the pipeline the rest of
/// the crate assumes: lowercase, strip punctuation and control characters,
/// keep digits, bundled Spanish stopwords.
#[derive(Debug, Clone)]
pub struct NormalizeConfig {
    pub lowercase: bool,
    pub strip_punctuation: bool,
    pub strip_control_chars: bool,
    pub drop_digits: bool,
    pub stopwords: HashSet<String>,
}

impl Default for NormalizeConfig {
    fn default() -> Self {
        Self {
            lowercase: true,
            strip_punctuation: true,
            strip_control_chars: true,
            drop_digits: false,
            stopwords: DEFAULT_STOPWORDS.clone(),
        }
    }
}

impl NormalizeConfig {
    /// The default switches with no stopword removal.
    pub fn without_stopwords() -> Self {
        Self {
            stopwords: HashSet::new(),
            ..Self::default()
        }
    }
}

/// Punctuation means Unicode general categories P* and S*.
fn is_punctuation_or_symbol(c: char) -> bool {
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        ConnectorPunctuation
            | DashPunctuation
            | OpenPunctuation
            | ClosePunctuation
            | InitialPunctuation
            | FinalPunctuation
            | OtherPunctuation
            | MathSymbol
            | CurrencySymbol
            | ModifierSymbol
            | OtherSymbol
    )
}

/// Lowercases, deletes punctuation/symbols, replaces control characters with
/// spaces, optionally drops digits, splits on Unicode whitespace, and removes
/// stopwords. Total: never fails, may return an empty sequence.
pub fn normalize(text: &str, config: &NormalizeConfig) -> Vec<String> {
    let lowered = if config.lowercase {
        text.to_lowercase()
    } else {
        text.to_string()
    };
    let mut filtered = String::with_capacity(lowered.len());
    for c in lowered.chars() {
        if config.strip_control_chars && c.is_control() {
            filtered.push(' ');
        } else if config.strip_punctuation && is_punctuation_or_symbol(c) {
            // deleted, not replaced: "¡urgente!" -> "urgente"
        } else if config.drop_digits && c.is_numeric() {
            // deleted
        } else {
            filtered.push(c);
        }
    }
    filtered
        .split_whitespace()
        .filter(|t| !config.stopwords.contains(*t))
        .map(str::to_string)
        .collect()
}

/// Collapses documents whose normalized token sequence AND label coincide,
/// keeping the first occurrence in order. Returns the new corpus and the
/// number of documents removed.
pub fn dedupe(corpus: &LabeledCorpus, config: &NormalizeConfig) -> (LabeledCorpus, usize) {
    let mut seen: HashSet<(Vec<String>, &str)> = HashSet::new();
    let mut kept = LabeledCorpus::new();
    let mut removed = 0;
    for doc in corpus.documents() {
        let key = (normalize(&doc.text, config), doc.label.as_str());
        if seen.insert(key) {
            kept.push(doc.text.clone(), doc.label.clone())
                .expect("documents already validated");
        } else {
            removed += 1;
        }
    }
    (kept, removed)
}

/// Token <-> column-index bijection over the tokens meeting a frequency
/// threshold, indices in first-appearance order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    ids: HashMap<String, usize>,
    min_frequency: usize,
}

impl Vocabulary {
    /// Builds the vocabulary of all normalized tokens occurring at least
    /// `min_frequency` times across the corpus.
    pub fn build(
        corpus: &LabeledCorpus,
        config: &NormalizeConfig,
        min_frequency: usize,
    ) -> Result<Self> {
        assert!(min_frequency >= 1, "min_frequency must be at least 1");
        let mut counts: HashMap<String, usize> = HashMap::new();
        let mut order: Vec<String> = Vec::new();
        for doc in corpus.documents() {
            for token in normalize(&doc.text, config) {
                let n = counts.entry(token.clone()).or_insert(0);
                if *n == 0 {
                    order.push(token);
                }
                *n += 1;
            }
        }
        let tokens: Vec<String> = order
            .into_iter()
            .filter(|t| counts[t] >= min_frequency)
            .collect();
        if tokens.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        let ids = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(Self {
            tokens,
            ids,
            min_frequency,
        })
    }

    pub fn from_tokens(tokens: Vec<String>, min_frequency: usize) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        let ids = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(Self {
            tokens,
            ids,
            min_frequency,
        })
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.ids.get(token).copied()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn min_frequency(&self) -> usize {
        self.min_frequency
    }
}

/// Raw token counts over the vocabulary, one row per document;
/// out-of-vocabulary tokens are ignored.
pub fn bow_vectorize(
    corpus: &LabeledCorpus,
    vocab: &Vocabulary,
    config: &NormalizeConfig,
) -> FeatureMatrix {
    let mut m = FeatureMatrix::with_dim(vocab.len()).expect("vocabulary is non-empty");
    let mut row = vec![0.0; vocab.len()];
    for (i, doc) in corpus.documents().iter().enumerate() {
        row.fill(0.0);
        for token in normalize(&doc.text, config) {
            if let Some(j) = vocab.index_of(&token) {
                row[j] += 1.0;
            }
        }
        m.push_row(&row, corpus.class_id(i))
            .expect("counts are finite");
    }
    m
}

/// Pretrained word vectors: insertion-ordered token -> vector map with a
/// fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    words: Vec<String>,
    vectors: Vec<Vec<f64>>,
    index: HashMap<String, usize>,
}

impl EmbeddingTable {
    /// Parses the text format: a `V d` header line, then exactly `V` lines
    /// `token v1 ... vd`. Errors carry the offending 1-based line number.
    pub fn parse<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| format_err(1, "missing header line"))??;
        let mut parts = header.split_whitespace();
        let v: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format_err(1, "header must be two integers: V d"))?;
        let d: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format_err(1, "header must be two integers: V d"))?;
        if parts.next().is_some() {
            return Err(format_err(1, "header must be exactly two integers: V d"));
        }
        if d == 0 {
            return Err(format_err(1, "dimension must be at least 1"));
        }

        let mut table = Self {
            dimension: d,
            words: Vec::with_capacity(v),
            vectors: Vec::with_capacity(v),
            index: HashMap::with_capacity(v),
        };
        let mut line_no = 1;
        for line in lines {
            line_no += 1;
            let line = line?;
            if table.words.len() == v {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(format_err(
                    line_no,
                    &format!("expected {v} entries, found more"),
                ));
            }
            let mut parts = line.split_whitespace();
            let token = parts
                .next()
                .ok_or_else(|| format_err(line_no, "empty entry line"))?;
            let mut vector = Vec::with_capacity(d);
            for part in parts {
                let value: f64 = part.parse().map_err(|_| {
                    format_err(line_no, &format!("non-numeric component {part:?}"))
                })?;
                vector.push(value);
            }
            if vector.len() != d {
                return Err(format_err(
                    line_no,
                    &format!("expected {d} components, got {}", vector.len()),
                ));
            }
            if table.index.contains_key(token) {
                return Err(format_err(line_no, &format!("duplicate token {token:?}")));
            }
            table.index.insert(token.to_string(), table.words.len());
            table.words.push(token.to_string());
            table.vectors.push(vector);
        }
        if table.words.len() != v {
            return Err(format_err(
                line_no + 1,
                &format!("expected {v} entries, got {}", table.words.len()),
            ));
        }
        Ok(table)
    }

    /// Writes the same text format `parse` reads, entries in insertion order.
    pub fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.words.len(), self.dimension)?;
        for (word, vector) in self.words.iter().zip(&self.vectors) {
            write!(w, "{word}")?;
            for v in vector {
                write!(w, " {v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.index.get(token).map(|&i| self.vectors[i].as_slice())
    }
}

fn format_err(line: usize, message: &str) -> Error {
    Error::Format {
        line,
        message: message.to_string(),
    }
}

/// One row per document: the arithmetic mean of the vectors of its
/// in-vocabulary tokens; the zero vector when none are covered.
pub fn average_embedding(
    corpus: &LabeledCorpus,
    table: &EmbeddingTable,
    config: &NormalizeConfig,
) -> FeatureMatrix {
    let d = table.dimension();
    let mut m = FeatureMatrix::with_dim(d).expect("dimension is at least 1");
    let mut row = vec![0.0; d];
    for (i, doc) in corpus.documents().iter().enumerate() {
        row.fill(0.0);
        let mut covered = 0usize;
        for token in normalize(&doc.text, config) {
            if let Some(vector) = table.get(&token) {
                for (acc, v) in row.iter_mut().zip(vector) {
                    *acc += v;
                }
                covered += 1;
            }
        }
        if covered > 0 {
            for acc in row.iter_mut() {
                *acc /= covered as f64;
            }
        }
        m.push_row(&row, corpus.class_id(i))
            .expect("means of finite vectors are finite");
    }
    m
}

/// Count and share of one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassShare {
    pub label: String,
    pub class_id: ClassId,
    pub count: usize,
    /// Raw percentage, `100 * count / total`; render at two decimals.
    pub percent: f64,
}

/// Per-class counts and percentages, in class-id order.
pub fn class_distribution(corpus: &LabeledCorpus) -> Vec<ClassShare> {
    let total = corpus.len();
    let mut counts = vec![0usize; corpus.label_index().len()];
    for i in 0..corpus.len() {
        counts[corpus.class_id(i)] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(class_id, count)| ClassShare {
            label: corpus.label_index().name_of(class_id).unwrap().to_string(),
            class_id,
            count,
            percent: 100.0 * count as f64 / total as f64,
        })
        .collect()
}
