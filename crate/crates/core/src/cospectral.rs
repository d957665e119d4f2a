//! Cospectral censuses: every isomorphism class of one order grouped by the
//! exact characteristic polynomial of one matrix kind.
//!
//! File layout: the magic `SPCENSUS`, a little-endian `u32` header length, a
//! JSON header, then the body. The body lists classes in key order; each is a
//! `u16` key length, the key bytes, a `u32` member count and the members as
//! packed canonical codes of fixed width. The header carries the SHA-256 of
//! the body.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{canonical_code, CanonicalCode};
use crate::enumerate::{enumerate, GraphFilter, WorkPartition};
use crate::graph::Graph;
use crate::linalg::{build_matrix, char_poly, char_poly_fixed, CharPoly, MatrixKind};
use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"SPCENSUS";
const FORMAT: &str = "cospec-census";
const VERSION: u32 = 1;
pub const GENERATOR: &str = concat!("cospec ", env!("CARGO_PKG_VERSION"), " canonical-augmentation");

/// Exact fingerprint of a characteristic polynomial: its non-leading
/// coefficients, constant first, each zigzag-encoded as LEB128.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectrumKey {
    kind: MatrixKind,
    bytes: Box<[u8]>,
}

fn push_leb(out: &mut Vec<u8>, mut z: u128) {
    loop {
        let low = (z & 0x7f) as u8;
        z >>= 7;
        if z == 0 {
            out.push(low);
            return;
        }
        out.push(low | 0x80);
    }
}

fn zigzag(c: i128) -> Option<u128> {
    if c >= 0 {
        (c as u128).checked_mul(2)
    } else {
        (c.unsigned_abs() - 1).checked_mul(2).map(|z| z + 1)
    }
}

fn push_big(out: &mut Vec<u8>, c: &BigInt) {
    if let Some(z) = c.to_i128().and_then(zigzag) {
        push_leb(out, z);
        return;
    }
    let mag = c.magnitude();
    let mut z = if c.sign() == Sign::Minus {
        (mag - 1u32) * 2u32 + 1u32
    } else {
        mag * 2u32
    };
    let mask = num_bigint::BigUint::from(0x7fu32);
    loop {
        let low = (&z & &mask).to_u8().expect("seven bits");
        z >>= 7;
        if z.is_zero() {
            out.push(low);
            return;
        }
        out.push(low | 0x80);
    }
}

impl SpectrumKey {
    pub fn from_poly(kind: MatrixKind, p: &CharPoly) -> Self {
        let c = p.coeffs();
        let mut bytes = Vec::with_capacity(c.len() * 2);
        for x in &c[..c.len() - 1] {
            push_big(&mut bytes, x);
        }
        SpectrumKey {
            kind,
            bytes: bytes.into_boxed_slice(),
        }
    }

    pub fn of(g: &Graph, kind: MatrixKind) -> Self {
        let m = build_matrix(g, kind);
        match char_poly_fixed(&m) {
            Some(c) => {
                let mut bytes = Vec::with_capacity(c.len() * 2);
                for &x in &c[..c.len() - 1] {
                    match zigzag(x) {
                        Some(z) => push_leb(&mut bytes, z),
                        None => push_big(&mut bytes, &BigInt::from(x)),
                    }
                }
                SpectrumKey {
                    kind,
                    bytes: bytes.into_boxed_slice(),
                }
            }
            None => SpectrumKey::from_poly(kind, &char_poly(&m)),
        }
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    fn from_bytes(kind: MatrixKind, bytes: &[u8]) -> Result<Self> {
        let key = SpectrumKey {
            kind,
            bytes: bytes.into(),
        };
        if bytes.last().is_some_and(|b| b & 0x80 != 0) {
            return Err(Error::Corrupt("truncated spectrum key".into()));
        }
        Ok(key)
    }

    /// Decodes back to the polynomial.
    pub fn to_poly(&self) -> CharPoly {
        let mut coeffs = Vec::new();
        let mut z = num_bigint::BigUint::zero();
        let mut shift = 0;
        for &b in self.bytes.iter() {
            z |= num_bigint::BigUint::from(b & 0x7f) << shift;
            shift += 7;
            if b & 0x80 == 0 {
                let half: BigInt = BigInt::from(&z >> 1u32);
                let c = if (&z & num_bigint::BigUint::from(1u32)).is_zero() {
                    half
                } else {
                    -half - 1
                };
                coeffs.push(c);
                z = num_bigint::BigUint::zero();
                shift = 0;
            }
        }
        coeffs.push(BigInt::from(1));
        CharPoly::from_coeffs(coeffs).expect("leading coefficient appended")
    }
}

/// Decimal coefficients, constant first, as in [`CharPoly`]'s display.
impl fmt::Display for SpectrumKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}

impl fmt::Debug for SpectrumKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpectrumKey({}: {})", self.kind, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusMeta {
    pub order: usize,
    pub kind: MatrixKind,
    pub filter: GraphFilter,
    pub generator: String,
    /// Present only on partial censuses built from one shard.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<WorkPartition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub meta: CensusMeta,
    classes: Vec<(SpectrumKey, Vec<CanonicalCode>)>,
}

impl Census {
    fn finalize(meta: CensusMeta, map: HashMap<SpectrumKey, Vec<CanonicalCode>>) -> Self {
        let mut classes: Vec<_> = map.into_iter().collect();
        for (_, members) in &mut classes {
            members.sort_unstable();
        }
        classes.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Census { meta, classes }
    }

    pub fn order(&self) -> usize {
        self.meta.order
    }

    pub fn kind(&self) -> MatrixKind {
        self.meta.kind
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn graph_count(&self) -> usize {
        self.classes.iter().map(|(_, m)| m.len()).sum()
    }

    pub fn classes(&self) -> impl Iterator<Item = (&SpectrumKey, &[CanonicalCode])> {
        self.classes.iter().map(|(k, m)| (k, m.as_slice()))
    }

    pub fn class(&self, key: &SpectrumKey) -> Option<&[CanonicalCode]> {
        self.classes
            .binary_search_by(|(k, _)| k.cmp(key))
            .ok()
            .map(|i| self.classes[i].1.as_slice())
    }

    /// Number of classes of each size.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for (_, m) in &self.classes {
            *h.entry(m.len()).or_insert(0) += 1;
        }
        h
    }
}

pub fn classify_shard(
    n: usize,
    kind: MatrixKind,
    filter: GraphFilter,
    partition: WorkPartition,
) -> Result<Census> {
    let mut map: HashMap<SpectrumKey, Vec<CanonicalCode>> = HashMap::new();
    for g in enumerate(n, filter, partition)? {
        map.entry(SpectrumKey::of(&g, kind))
            .or_default()
            .push(canonical_code(&g));
    }
    let meta = CensusMeta {
        order: n,
        kind,
        filter,
        generator: GENERATOR.to_string(),
        shard: (partition.shard_count > 1).then_some(partition),
    };
    Ok(Census::finalize(meta, map))
}

/// Combines the censuses of every shard of one partition. The result does
/// not depend on the order of `parts` and equals the unsharded census.
pub fn merge(parts: Vec<Census>) -> Result<Census> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Parameter("nothing to merge".into()))?;
    let mut meta = first.meta.clone();
    meta.shard = None;
    let count = first.meta.shard.map_or(1, |s| s.shard_count);
    let mut seen = vec![false; count];
    for p in &parts {
        let same = p.meta.order == meta.order
            && p.meta.kind == meta.kind
            && p.meta.filter == meta.filter
            && p.meta.generator == meta.generator;
        let idx = p.meta.shard.map_or(Some(0), |s| (s.shard_count == count).then_some(s.shard_index));
        match idx {
            Some(i) if same && !seen[i] => seen[i] = true,
            _ => {
                return Err(Error::Parameter(
                    "shards do not form one partition of one census".into(),
                ))
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Parameter("missing shards in merge".into()));
    }
    let mut map: HashMap<SpectrumKey, Vec<CanonicalCode>> = HashMap::new();
    for p in parts {
        for (k, members) in p.classes {
            map.entry(k).or_default().extend(members);
        }
    }
    Ok(Census::finalize(meta, map))
}

pub fn classify(n: usize, kind: MatrixKind, filter: GraphFilter, shards: usize) -> Result<Census> {
    let parts = WorkPartition::all(shards)?
        .into_iter()
        .map(|p| classify_shard(n, kind, filter, p))
        .collect::<Result<Vec<_>>>()?;
    merge(parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminationStatus {
    pub das: bool,
    pub dls: bool,
    pub dqs: bool,
}

impl DeterminationStatus {
    pub fn get(&self, kind: MatrixKind) -> bool {
        match kind {
            MatrixKind::A => self.das,
            MatrixKind::L => self.dls,
            MatrixKind::Q => self.dqs,
        }
    }
}

fn check_census(g: &Graph, kind: MatrixKind, census: &Census) -> Result<()> {
    if census.order() != g.order() || census.kind() != kind || census.meta.shard.is_some() {
        return Err(Error::MissingCensus {
            order: g.order(),
            kind,
        });
    }
    Ok(())
}

/// The other members of `g`'s cospectral class, as canonical forms.
pub fn mates(g: &Graph, kind: MatrixKind, census: &Census) -> Result<Vec<Graph>> {
    check_census(g, kind, census)?;
    let code = canonical_code(g);
    let class = census.class(&SpectrumKey::of(g, kind)).unwrap_or(&[]);
    if !class.contains(&code) {
        return Err(Error::Precondition(format!(
            "{g} is not covered by the census filter {}",
            census.meta.filter
        )));
    }
    Ok(class
        .iter()
        .filter(|&&c| c != code)
        .map(|c| c.to_graph())
        .collect())
}

pub fn determination_status(g: &Graph, store: &CensusStore) -> Result<DeterminationStatus> {
    let mut flags = [false; 3];
    for (flag, kind) in flags.iter_mut().zip(MatrixKind::ALL) {
        let census = store.get(g.order(), kind)?;
        *flag = mates(g, kind, &census)?.is_empty();
    }
    Ok(DeterminationStatus {
        das: flags[0],
        dls: flags[1],
        dqs: flags[2],
    })
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    #[serde(flatten)]
    meta: CensusMeta,
    class_count: usize,
    graph_count: usize,
    checksum: String,
}

pub fn write_census<W: Write>(c: &Census, mut out: W) -> Result<()> {
    let mut body = Vec::new();
    for (key, members) in &c.classes {
        let len = u16::try_from(key.bytes.len())
            .map_err(|_| Error::Capacity("spectrum key longer than 65535 bytes".into()))?;
        body.extend_from_slice(&len.to_le_bytes());
        body.extend_from_slice(&key.bytes);
        body.extend_from_slice(&(members.len() as u32).to_le_bytes());
        for m in members {
            body.extend_from_slice(m.as_bytes());
        }
    }
    let header = Header {
        format: FORMAT.into(),
        version: VERSION,
        meta: c.meta.clone(),
        class_count: c.class_count(),
        graph_count: c.graph_count(),
        checksum: hex::encode(Sha256::digest(&body)),
    };
    let json = serde_json::to_vec(&header)?;
    out.write_all(MAGIC)?;
    out.write_all(&(json.len() as u32).to_le_bytes())?;
    out.write_all(&json)?;
    out.write_all(&body)?;
    Ok(())
}

struct Cursor<'a> {
    data: &'a [u8],
}

impl<'a> Cursor<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.data.len() < k {
            return Err(Error::Corrupt("unexpected end of census body".into()));
        }
        let (head, rest) = self.data.split_at(k);
        self.data = rest;
        Ok(head)
    }
}

pub fn read_census<R: Read>(mut input: R) -> Result<Census> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    if data.len() < 12 || &data[..8] != MAGIC {
        return Err(Error::Version("not a census file (bad magic)".into()));
    }
    let hlen = u32::from_le_bytes(data[8..12].try_into().expect("4 bytes")) as usize;
    let json = data
        .get(12..12 + hlen)
        .ok_or_else(|| Error::Corrupt("truncated header".into()))?;
    let value: serde_json::Value = serde_json::from_slice(json)
        .map_err(|e| Error::Corrupt(format!("header: {e}")))?;
    if value.get("format").and_then(|v| v.as_str()) != Some(FORMAT)
        || value.get("version").and_then(|v| v.as_u64()) != Some(VERSION as u64)
    {
        return Err(Error::Version(format!(
            "expected {FORMAT} version {VERSION}, found {} version {}",
            value.get("format").unwrap_or(&serde_json::Value::Null),
            value.get("version").unwrap_or(&serde_json::Value::Null)
        )));
    }
    let header: Header =
        serde_json::from_value(value).map_err(|e| Error::Corrupt(format!("header: {e}")))?;
    let body = &data[12 + hlen..];
    if hex::encode(Sha256::digest(body)) != header.checksum {
        return Err(Error::Checksum);
    }
    let width = CanonicalCode::byte_len(header.meta.order);
    let mut cur = Cursor { data: body };
    let mut classes = Vec::with_capacity(header.class_count);
    for _ in 0..header.class_count {
        let klen = u16::from_le_bytes(cur.take(2)?.try_into().expect("2 bytes")) as usize;
        let key = SpectrumKey::from_bytes(header.meta.kind, cur.take(klen)?)?;
        let count = u32::from_le_bytes(cur.take(4)?.try_into().expect("4 bytes")) as usize;
        let mut members = Vec::with_capacity(count);
        for _ in 0..count {
            let code = CanonicalCode::from_bytes(cur.take(width)?)?;
            if code.order() != header.meta.order {
                return Err(Error::Corrupt("member of the wrong order".into()));
            }
            members.push(code);
        }
        if members.is_empty() {
            return Err(Error::Corrupt("empty class".into()));
        }
        classes.push((key, members));
    }
    if !cur.data.is_empty() {
        return Err(Error::Corrupt("trailing bytes after the last class".into()));
    }
    let census = Census {
        meta: header.meta,
        classes,
    };
    if census.graph_count() != header.graph_count {
        return Err(Error::Corrupt("graph count does not match header".into()));
    }
    Ok(census)
}

pub fn save_census(c: &Census, path: &Path) -> Result<()> {
    let tmp = path.with_extension("partial");
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        write_census(c, &mut f)?;
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_census(path: &Path) -> Result<Census> {
    read_census(std::io::BufReader::new(fs::File::open(path)?))
}

pub type CensusBuilder = dyn Fn(usize, MatrixKind) -> Result<Census> + Send + Sync;

/// Full censuses by order and kind: cached in memory, optionally persisted
/// in a directory, built on demand up to a maximum order.
pub struct CensusStore {
    max_order: usize,
    dir: Option<PathBuf>,
    builder: Box<CensusBuilder>,
    cache: Mutex<HashMap<(usize, MatrixKind), Arc<Census>>>,
}

impl CensusStore {
    pub fn new(max_order: usize) -> Self {
        CensusStore {
            max_order,
            dir: None,
            builder: Box::new(|n, kind| classify(n, kind, GraphFilter::All, 1)),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.dir = Some(dir.into());
        self
    }

    pub fn with_builder(
        mut self,
        builder: impl Fn(usize, MatrixKind) -> Result<Census> + Send + Sync + 'static,
    ) -> Self {
        self.builder = Box::new(builder);
        self
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn file_name(order: usize, kind: MatrixKind) -> String {
        format!("census-n{order}-{kind}.bin")
    }

    pub fn get(&self, order: usize, kind: MatrixKind) -> Result<Arc<Census>> {
        if let Some(c) = self.cache.lock().expect("poisoned").get(&(order, kind)) {
            return Ok(c.clone());
        }
        if order > self.max_order {
            return Err(Error::MissingCensus { order, kind });
        }
        let path = self.dir.as_ref().map(|d| d.join(Self::file_name(order, kind)));
        let loaded = match &path {
            Some(p) if p.exists() => {
                let c = load_census(p)?;
                let ok = c.order() == order
                    && c.kind() == kind
                    && c.meta.filter == GraphFilter::All
                    && c.meta.shard.is_none();
                ok.then_some(c)
            }
            _ => None,
        };
        let census = match loaded {
            Some(c) => c,
            None => {
                let c = (self.builder)(order, kind)?;
                if let Some(p) = &path {
                    fs::create_dir_all(p.parent().expect("file in a directory"))?;
                    save_census(&c, p)?;
                }
                c
            }
        };
        let census = Arc::new(census);
        self.cache
            .lock()
            .expect("poisoned")
            .insert((order, kind), census.clone());
        Ok(census)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named, Family};

    #[test]
    fn order_three_is_all_singletons() {
        let c = classify(3, MatrixKind::Q, GraphFilter::All, 1).unwrap();
        assert_eq!((c.class_count(), c.graph_count()), (4, 4));
        assert!(c.classes().all(|(_, m)| m.len() == 1));
        for kind in MatrixKind::ALL {
            let c = classify(1, kind, GraphFilter::All, 1).unwrap();
            assert_eq!(c.class_count(), 1);
        }
    }

    #[test]
    fn keys_round_trip_through_polynomials() {
        let g = make_named(Family::Friendship(2)).unwrap();
        for kind in MatrixKind::ALL {
            let p = char_poly(&build_matrix(&g, kind));
            let key = SpectrumKey::of(&g, kind);
            assert_eq!(key, SpectrumKey::from_poly(kind, &p));
            assert_eq!(key.to_poly(), p);
        }
        let big = CharPoly::from_coeffs(vec![
            BigInt::from(i128::MIN) * 5,
            BigInt::from(u128::MAX),
            BigInt::from(1),
        ])
        .unwrap();
        assert_eq!(SpectrumKey::from_poly(MatrixKind::Q, &big).to_poly(), big);
    }

    #[test]
    fn mates_of_small_graphs() {
        let c3 = classify(3, MatrixKind::Q, GraphFilter::All, 1).unwrap();
        assert!(mates(&Graph::complete(3).unwrap(), MatrixKind::Q, &c3).unwrap().is_empty());
        let c2 = classify(2, MatrixKind::Q, GraphFilter::All, 1).unwrap();
        assert!(mates(&Graph::empty(2).unwrap(), MatrixKind::Q, &c2).unwrap().is_empty());
        let c4 = classify(4, MatrixKind::Q, GraphFilter::All, 1).unwrap();
        let star = make_named(Family::Star(3)).unwrap();
        let m = mates(&star, MatrixKind::Q, &c4).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].edge_count(), 3);
        assert_eq!(m[0].triangle_count(), 1);
        assert!(matches!(
            mates(&star, MatrixKind::L, &c4),
            Err(Error::MissingCensus { order: 4, .. })
        ));
    }

    #[test]
    fn status_through_the_store() {
        let store = CensusStore::new(5);
        let k3 = Graph::complete(3).unwrap();
        let s = determination_status(&k3, &store).unwrap();
        assert!(s.das && s.dls && s.dqs);
        let star = make_named(Family::Star(3)).unwrap();
        assert!(!determination_status(&star, &store).unwrap().dqs);
        assert!(matches!(
            determination_status(&Graph::empty(6).unwrap(), &store),
            Err(Error::MissingCensus { order: 6, .. })
        ));
    }

    #[test]
    fn persistence_round_trip_and_errors() {
        let c = classify(4, MatrixKind::Q, GraphFilter::All, 1).unwrap();
        let mut bytes = Vec::new();
        write_census(&c, &mut bytes).unwrap();
        assert_eq!(read_census(bytes.as_slice()).unwrap(), c);

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(read_census(bad.as_slice()), Err(Error::Version(_))));
        let mut bad = bytes.clone();
        *bad.last_mut().unwrap() ^= 1;
        assert!(matches!(read_census(bad.as_slice()), Err(Error::Checksum)));
        let mut bad = bytes.clone();
        let at = bad
            .windows(11)
            .position(|w| w == b"\"version\":1")
            .unwrap();
        bad[at + 10] = b'7';
        assert!(matches!(read_census(bad.as_slice()), Err(Error::Version(_))));
    }

    #[test]
    fn sharded_merge_matches_whole() {
        let whole = classify(6, MatrixKind::L, GraphFilter::All, 1).unwrap();
        let mut parts: Vec<_> = WorkPartition::all(4)
            .unwrap()
            .into_iter()
            .map(|p| classify_shard(6, MatrixKind::L, GraphFilter::All, p).unwrap())
            .collect();
        parts.reverse();
        assert_eq!(merge(parts.clone()).unwrap(), whole);
        parts.pop();
        assert!(merge(parts).is_err());
    }
}
