//! On-disk cache for computed lattice spans.
//!
//! A span is stored under a name derived from its recipe text and
//! support, in a little-endian length-prefixed binary format with a
//! checksum over the payload. Loading returns `None` on any mismatch,
//! so a stale or truncated file silently falls back to recomputation.
//! The cache directory comes from configuration; the `TREELIE_CACHE`
//! environment variable is one way to set it.

use crate::coef::Coef;
use crate::expand::Word;
use crate::johnson::Span;
use crate::lattice::{Lattice, Vector};
use crate::symplectic::Label;
use crate::tree::TreeKey;
use num_bigint::BigInt;
use sha2::{Digest, Sha256};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 8] = b"TLSPAN1\n";

/// File path for one recipe and support inside the cache directory.
pub fn span_path(dir: &Path, recipe: &str, support: &[u32]) -> PathBuf {
    let mut h = Sha256::new();
    h.update(MAGIC);
    h.update(recipe.as_bytes());
    h.update(b"\n");
    for i in support {
        h.update(i.to_le_bytes());
    }
    let digest = h.finalize();
    let mut name = String::from("span-");
    for byte in digest.iter().take(16) {
        name.push_str(&format!("{byte:02x}"));
    }
    name.push_str(".bin");
    dir.join(name)
}

/// Writes a span atomically: to a temporary sibling, then renamed.
pub fn store_span(dir: &Path, recipe: &str, support: &[u32], span: &Span) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut payload = Vec::new();
    write_lattice(&mut payload, &span.symbolic, |key| key.as_str().as_bytes().to_vec());
    write_lattice(&mut payload, &span.tensor, word_bytes);
    let mut h = Sha256::new();
    h.update(&payload);
    let digest = h.finalize();

    let path = span_path(dir, recipe, support);
    let tmp = path.with_extension("tmp");
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(MAGIC)?;
    f.write_all(&digest)?;
    f.write_all(&payload)?;
    f.sync_all()?;
    std::fs::rename(&tmp, &path)
}

/// Reads a span back; `None` on a missing, foreign or corrupt file.
pub fn load_span(dir: &Path, recipe: &str, support: &[u32]) -> Option<Span> {
    let path = span_path(dir, recipe, support);
    let mut f = std::fs::File::open(path).ok()?;
    let mut magic = [0u8; 8];
    f.read_exact(&mut magic).ok()?;
    if &magic != MAGIC {
        return None;
    }
    let mut stored = [0u8; 32];
    f.read_exact(&mut stored).ok()?;
    let mut payload = Vec::new();
    f.read_to_end(&mut payload).ok()?;
    let mut h = Sha256::new();
    h.update(&payload);
    if h.finalize().as_slice() != stored {
        return None;
    }
    let mut cursor = &payload[..];
    let symbolic = read_lattice(&mut cursor, |bytes| {
        std::str::from_utf8(bytes).ok().map(TreeKey::from_raw)
    })?;
    let tensor = read_lattice(&mut cursor, parse_word)?;
    if !cursor.is_empty() {
        return None;
    }
    Some(Span { symbolic, tensor })
}

fn write_lattice<K: Ord + Clone>(
    out: &mut Vec<u8>,
    lattice: &Lattice<K>,
    key_bytes: impl Fn(&K) -> Vec<u8>,
) {
    out.extend((lattice.rank() as u64).to_le_bytes());
    for v in lattice.basis() {
        out.extend((v.len() as u64).to_le_bytes());
        for (k, c) in v {
            let kb = key_bytes(k);
            out.extend((kb.len() as u64).to_le_bytes());
            out.extend(kb);
            let cb = c.to_string().into_bytes();
            out.extend((cb.len() as u64).to_le_bytes());
            out.extend(cb);
        }
    }
}

fn read_lattice<K: Ord + Clone>(
    cursor: &mut &[u8],
    parse_key: impl Fn(&[u8]) -> Option<K>,
) -> Option<Lattice<K>> {
    let count = read_len(cursor)?;
    let mut vectors = Vec::with_capacity(count);
    for _ in 0..count {
        let entries = read_len(cursor)?;
        let mut v: Vector<K> = Vector::new();
        for _ in 0..entries {
            let key = parse_key(read_chunk(cursor)?)?;
            let coef = parse_coef(read_chunk(cursor)?)?;
            v.insert(key, coef);
        }
        if v.is_empty() {
            return None;
        }
        vectors.push(v);
    }
    Some(Lattice::from_basis(vectors))
}

fn read_len(cursor: &mut &[u8]) -> Option<usize> {
    let (head, rest) = cursor.split_first_chunk::<8>()?;
    *cursor = rest;
    usize::try_from(u64::from_le_bytes(*head)).ok()
}

fn read_chunk<'a>(cursor: &mut &'a [u8]) -> Option<&'a [u8]> {
    let len = read_len(cursor)?;
    if cursor.len() < len {
        return None;
    }
    let (head, rest) = cursor.split_at(len);
    *cursor = rest;
    Some(head)
}

fn word_bytes(word: &Word) -> Vec<u8> {
    let text: Vec<String> = word.iter().map(|l| l.to_string()).collect();
    text.join(" ").into_bytes()
}

fn parse_word(bytes: &[u8]) -> Option<Word> {
    let text = std::str::from_utf8(bytes).ok()?;
    let mut word = Vec::new();
    for piece in text.split(' ') {
        word.push(Label::parse(piece).ok()?);
    }
    Some(word)
}

fn parse_coef(bytes: &[u8]) -> Option<Coef> {
    let big = BigInt::parse_bytes(bytes, 10)?;
    let c = Coef::from(big);
    if c.is_zero() {
        return None;
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::{build_span, GenModule};

    fn small_span() -> Span {
        let support = vec![1, 2];
        let mut gens = Vec::new();
        for l in GenModule::A2B.gens(&support) {
            for r in GenModule::AB2.gens(&support) {
                gens.push(l.bracket(&r));
            }
        }
        build_span(gens)
    }

    #[test]
    fn round_trip_preserves_both_lattices() {
        let dir = tempfile::tempdir().unwrap();
        let span = small_span();
        store_span(dir.path(), "[W(a2b),W(ab2)]", &[1, 2], &span).unwrap();
        let back = load_span(dir.path(), "[W(a2b),W(ab2)]", &[1, 2]).unwrap();
        assert!(span.symbolic.equal(&back.symbolic));
        assert!(span.tensor.equal(&back.tensor));
        assert_eq!(span.symbolic.rank(), back.symbolic.rank());
    }

    #[test]
    fn different_support_is_a_different_entry() {
        let dir = tempfile::tempdir().unwrap();
        let span = small_span();
        store_span(dir.path(), "[W(a2b),W(ab2)]", &[1, 2], &span).unwrap();
        assert!(load_span(dir.path(), "[W(a2b),W(ab2)]", &[1, 2, 3]).is_none());
        assert!(load_span(dir.path(), "[W(a3),W(b3)]", &[1, 2]).is_none());
    }

    #[test]
    fn corrupt_payload_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let span = small_span();
        store_span(dir.path(), "r", &[1, 2], &span).unwrap();
        let path = span_path(dir.path(), "r", &[1, 2]);
        let mut bytes = std::fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 0x55;
        std::fs::write(&path, bytes).unwrap();
        assert!(load_span(dir.path(), "r", &[1, 2]).is_none());
    }
}
