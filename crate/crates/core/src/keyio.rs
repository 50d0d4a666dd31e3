//! Wire format for keys, ciphertexts and messages.
//!
//! Layout: magic `RKC1` · kind byte · scheme byte · q, m, n, k, l, λ, t as
//! u16 little-endian · the packed field modulus (m+1 digits) · the packed
//! payload · CRC32. Every base-q digit takes ⌈log₂ q⌉ bits, filled
//! little-endian within bytes, and every vector or matrix unit is padded to
//! a byte boundary at its end. Field elements are m digits, matrices
//! row-major.
//!
//! Public keys of the systematic schemes (mod1/mod2) store only the
//! non-identity block of [I | T]; the original scheme stores the full k×n
//! matrix. Secret keys store a, the V-basis, P, S (mod2 only) and the public
//! matrix, and recompute the cached inverses on load.
//!
//! The CRC (reflected 0xEDB88320) detects accidental corruption; it is not a
//! MAC and offers nothing against tampering.

use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::gabidulin::GabidulinCode;
use crate::linalg::{FieldMatrix, FieldVector, SubspaceBasisQ};
use crate::schemes::{Ciphertext, PublicKey, Scheme, SchemeParams, SecretKey};

pub const MAGIC: [u8; 4] = *b"RKC1";
/// magic + kind + scheme + seven u16 parameter fields.
const HEADER_BYTES: usize = 4 + 1 + 1 + 14;

/// What a wire object holds, mapped to the kind byte.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ObjectKind {
    PublicKey = 0,
    SecretKey = 1,
    Ciphertext = 2,
    Message = 3,
}

impl ObjectKind {
    fn from_byte(b: u8) -> Result<ObjectKind> {
        Ok(match b {
            0 => ObjectKind::PublicKey,
            1 => ObjectKind::SecretKey,
            2 => ObjectKind::Ciphertext,
            3 => ObjectKind::Message,
            _ => return Err(Error::Format(format!("unknown object kind {b}"))),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ObjectKind::PublicKey => "public key",
            ObjectKind::SecretKey => "secret key",
            ObjectKind::Ciphertext => "ciphertext",
            ObjectKind::Message => "message",
        }
    }
}

impl std::fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A deserialized file: one of the four object kinds.
#[derive(Clone, Debug)]
pub enum WireObject {
    Public(PublicKey),
    Secret(SecretKey),
    Cipher(Ciphertext),
    Message(SchemeParams, FieldVector),
}

impl WireObject {
    pub fn kind(&self) -> ObjectKind {
        match self {
            WireObject::Public(_) => ObjectKind::PublicKey,
            WireObject::Secret(_) => ObjectKind::SecretKey,
            WireObject::Cipher(_) => ObjectKind::Ciphertext,
            WireObject::Message(..) => ObjectKind::Message,
        }
    }

    pub fn params(&self) -> &SchemeParams {
        match self {
            WireObject::Public(pk) => &pk.params,
            WireObject::Secret(sk) => &sk.params,
            WireObject::Cipher(ct) => &ct.params,
            WireObject::Message(p, _) => p,
        }
    }

    fn wrong_kind(&self, wanted: ObjectKind) -> Error {
        Error::Format(format!("file holds a {}, expected a {wanted}", self.kind()))
    }

    pub fn into_public(self) -> Result<PublicKey> {
        match self {
            WireObject::Public(pk) => Ok(pk),
            other => Err(other.wrong_kind(ObjectKind::PublicKey)),
        }
    }

    pub fn into_secret(self) -> Result<SecretKey> {
        match self {
            WireObject::Secret(sk) => Ok(sk),
            other => Err(other.wrong_kind(ObjectKind::SecretKey)),
        }
    }

    pub fn into_ciphertext(self) -> Result<Ciphertext> {
        match self {
            WireObject::Cipher(ct) => Ok(ct),
            other => Err(other.wrong_kind(ObjectKind::Ciphertext)),
        }
    }

    pub fn into_message(self) -> Result<FieldVector> {
        match self {
            WireObject::Message(_, v) => Ok(v),
            other => Err(other.wrong_kind(ObjectKind::Message)),
        }
    }
}

// ---------------------------------------------------------------------------
// bit-level packing
// ---------------------------------------------------------------------------

fn bits_per_digit(q: u8) -> u32 {
    debug_assert!(q >= 2);
    8 - (q - 1).leading_zeros()
}

struct BitWriter {
    out: Vec<u8>,
    acc: u32,
    nbits: u32,
}

impl BitWriter {
    fn new() -> BitWriter {
        BitWriter {
            out: Vec::new(),
            acc: 0,
            nbits: 0,
        }
    }

    fn push(&mut self, digit: u8, width: u32) {
        self.acc |= (digit as u32) << self.nbits;
        self.nbits += width;
        while self.nbits >= 8 {
            self.out.push(self.acc as u8);
            self.acc >>= 8;
            self.nbits -= 8;
        }
    }

    /// End a vector/matrix unit: flush the partial byte, zero-padded.
    fn pad_to_byte(&mut self) {
        if self.nbits > 0 {
            self.out.push(self.acc as u8);
            self.acc = 0;
            self.nbits = 0;
        }
    }
}

struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
    acc: u32,
    nbits: u32,
}

impl<'a> BitReader<'a> {
    fn new(data: &'a [u8]) -> BitReader<'a> {
        BitReader {
            data,
            pos: 0,
            acc: 0,
            nbits: 0,
        }
    }

    fn read(&mut self, width: u32) -> Result<u8> {
        while self.nbits < width {
            let byte = *self
                .data
                .get(self.pos)
                .ok_or_else(|| Error::Format("truncated stream".into()))?;
            self.acc |= (byte as u32) << self.nbits;
            self.nbits += 8;
            self.pos += 1;
        }
        let digit = (self.acc & ((1u32 << width) - 1)) as u8;
        self.acc >>= width;
        self.nbits -= width;
        Ok(digit)
    }

    /// End a unit: discard padding bits up to the next byte boundary.
    fn align_to_byte(&mut self) {
        self.acc = 0;
        self.nbits = 0;
    }

    fn consumed(&self) -> usize {
        self.pos
    }
}

/// Packed size of `digits` base-q digits, as one padded unit.
fn unit_bytes(digits: usize, q: u8) -> usize {
    (digits * bits_per_digit(q) as usize).div_ceil(8)
}

fn elems_bytes(count: usize, m: usize, q: u8) -> usize {
    unit_bytes(count * m, q)
}

/// Byte length of the packed public-key payload as written to the wire.
/// Differs from `analysis::public_key_size_bytes` (the fractional-bit
/// accounting the scheme is graded on) by at most the ⌈·⌉ padding.
pub fn public_key_wire_bytes(params: &SchemeParams) -> usize {
    let (n, k, l, m, q) = (
        params.n(),
        params.k(),
        params.l(),
        params.m(),
        params.q(),
    );
    let symbols = match params.scheme() {
        Scheme::Loidreau => k * n,
        Scheme::Mod1 => (k - l) * (n - k + l),
        Scheme::Mod2 => k * (n - k),
    };
    elems_bytes(symbols, m, q)
}

// ---------------------------------------------------------------------------
// crc32
// ---------------------------------------------------------------------------

/// Reflected CRC-32, polynomial 0xEDB88320 (the zlib/PNG one).
fn crc32(data: &[u8]) -> u32 {
    let mut crc = 0xFFFF_FFFFu32;
    for &b in data {
        crc ^= b as u32;
        for _ in 0..8 {
            let mask = (crc & 1).wrapping_neg();
            crc = (crc >> 1) ^ (0xEDB8_8320 & mask);
        }
    }
    !crc
}

// ---------------------------------------------------------------------------
// serialize
// ---------------------------------------------------------------------------

fn push_elements<'a, I>(w: &mut BitWriter, elems: I, width: u32)
where
    I: IntoIterator<Item = &'a FieldElement>,
{
    for e in elems {
        for &d in e.coeffs() {
            w.push(d, width);
        }
    }
}

fn push_matrix(w: &mut BitWriter, mat: &FieldMatrix, width: u32) {
    for i in 0..mat.rows() {
        push_elements(w, mat.row(i), width);
    }
    w.pad_to_byte();
}

fn push_vector(w: &mut BitWriter, v: &[FieldElement], width: u32) {
    push_elements(w, v, width);
    w.pad_to_byte();
}

/// Encode an object to its deterministic byte representation.
pub fn serialize(obj: &WireObject) -> Vec<u8> {
    let params = obj.params();
    let q = params.q();
    let width = bits_per_digit(q);

    let mut out = Vec::new();
    out.extend_from_slice(&MAGIC);
    out.push(obj.kind() as u8);
    out.push(params.scheme() as u8);
    for v in [
        q as u16,
        params.m() as u16,
        params.n() as u16,
        params.k() as u16,
        params.l() as u16,
        params.lambda() as u16,
        params.t() as u16,
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }

    let mut w = BitWriter::new();
    for &d in params.field().modulus() {
        w.push(d, width);
    }
    w.pad_to_byte();

    match obj {
        WireObject::Public(pk) => match params.scheme() {
            Scheme::Loidreau => push_matrix(&mut w, &pk.g_pub, width),
            Scheme::Mod1 | Scheme::Mod2 => {
                let r = params.msg_len();
                let t_block = systematic_block(&pk.g_pub, r);
                push_matrix(&mut w, &t_block, width);
            }
        },
        WireObject::Secret(sk) => {
            push_vector(&mut w, sk.code.a(), width);
            push_vector(&mut w, sk.v_basis.elements(), width);
            push_matrix(&mut w, &sk.p, width);
            if let Some(s) = &sk.s {
                push_matrix(&mut w, s, width);
            }
            push_matrix(&mut w, &sk.g_pub, width);
        }
        WireObject::Cipher(ct) => push_vector(&mut w, &ct.c, width),
        WireObject::Message(_, v) => push_vector(&mut w, v, width),
    }

    out.extend_from_slice(&w.out);
    let crc = crc32(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

/// The T of a systematic generator [I | T]; the schemes that publish in
/// systematic form guarantee the identity block, so losing it is lossless.
fn systematic_block(g_pub: &FieldMatrix, r: usize) -> FieldMatrix {
    let id = FieldMatrix::identity(g_pub.field(), r);
    assert_eq!(
        g_pub.submatrix(0, r, 0, r),
        id,
        "public generator is not in systematic form"
    );
    g_pub.submatrix(0, r, r, g_pub.cols())
}

// ---------------------------------------------------------------------------
// deserialize
// ---------------------------------------------------------------------------

fn read_u16(bytes: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([bytes[at], bytes[at + 1]])
}

fn read_elements(
    r: &mut BitReader<'_>,
    field: &ExtField,
    count: usize,
    width: u32,
) -> Result<FieldVector> {
    let q = field.q();
    let m = field.m();
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0u8; m];
    for _ in 0..count {
        for d in digits.iter_mut() {
            *d = r.read(width)?;
            if *d >= q {
                return Err(Error::Format(format!("digit {d} out of range for q = {q}")));
            }
        }
        out.push(field.element(&digits)?);
    }
    Ok(out)
}

fn read_vector(
    r: &mut BitReader<'_>,
    field: &ExtField,
    count: usize,
    width: u32,
) -> Result<FieldVector> {
    let v = read_elements(r, field, count, width)?;
    r.align_to_byte();
    Ok(v)
}

fn read_matrix(
    r: &mut BitReader<'_>,
    field: &ExtField,
    rows: usize,
    cols: usize,
    width: u32,
) -> Result<FieldMatrix> {
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        out.push(read_elements(r, field, cols, width)?);
    }
    r.align_to_byte();
    FieldMatrix::from_rows(out)
}

/// Decode a byte string produced by [`serialize`].
///
/// Errors: wrong magic, bad length or malformed digits give [`Error::Format`];
/// a CRC mismatch gives [`Error::Corruption`]; headers describing invalid
/// parameters give [`Error::InvalidParams`].
pub fn deserialize(bytes: &[u8]) -> Result<WireObject> {
    if bytes.len() < HEADER_BYTES + 4 {
        return Err(Error::Format("truncated stream".into()));
    }
    if bytes[..4] != MAGIC {
        return Err(Error::Format("bad magic; not a key/ciphertext file".into()));
    }
    let kind = ObjectKind::from_byte(bytes[4])?;
    let scheme = match bytes[5] {
        0 => Scheme::Loidreau,
        1 => Scheme::Mod1,
        2 => Scheme::Mod2,
        b => return Err(Error::Format(format!("unknown scheme byte {b}"))),
    };
    let q16 = read_u16(bytes, 6);
    let m = read_u16(bytes, 8) as usize;
    let n = read_u16(bytes, 10) as usize;
    let k = read_u16(bytes, 12) as usize;
    let l = read_u16(bytes, 14) as usize;
    let lambda = read_u16(bytes, 16) as usize;
    let t_header = read_u16(bytes, 18) as usize;

    // sanity bounds before any size arithmetic
    let q = u8::try_from(q16).map_err(|_| Error::InvalidParams(format!("q = {q16} too large")))?;
    if q < 2 {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime")));
    }
    if m == 0 || m > crate::field::MAX_M {
        return Err(Error::InvalidParams(format!("extension degree m = {m}")));
    }
    if n == 0 || n > m || k == 0 || k >= n || l >= n {
        return Err(Error::InvalidParams(format!(
            "dimensions n = {n}, k = {k}, l = {l} out of range for m = {m}"
        )));
    }

    // total length is implied by the header; a mismatch is a framing error,
    // not corruption
    let msg_len = match scheme {
        Scheme::Mod1 => k - l,
        _ => k,
    };
    let width = bits_per_digit(q);
    let modulus_bytes = unit_bytes(m + 1, q);
    let payload_bytes = {
        let per = |count: usize| unit_bytes(count * m, q);
        match kind {
            ObjectKind::PublicKey => match scheme {
                Scheme::Loidreau => per(k * n),
                Scheme::Mod1 => per((k - l) * (n - k + l)),
                Scheme::Mod2 => per(k * (n - k)),
            },
            ObjectKind::SecretKey => {
                per(n) + per(lambda)
                    + per(n * n)
                    + per(msg_len * n)
                    + if scheme == Scheme::Mod2 { per(k * k) } else { 0 }
            }
            ObjectKind::Ciphertext => per(n),
            ObjectKind::Message => per(msg_len),
        }
    };
    let expected = HEADER_BYTES + modulus_bytes + payload_bytes + 4;
    if bytes.len() != expected {
        return Err(Error::Format(format!(
            "length {} does not match the {expected} implied by the header",
            bytes.len()
        )));
    }

    let body = &bytes[..bytes.len() - 4];
    let stored = u32::from_le_bytes(bytes[bytes.len() - 4..].try_into().unwrap());
    if crc32(body) != stored {
        return Err(Error::Corruption);
    }

    // modulus and field
    let mut r = BitReader::new(&bytes[HEADER_BYTES..bytes.len() - 4]);
    let mut modulus = vec![0u8; m + 1];
    for d in modulus.iter_mut() {
        *d = r.read(width)?;
        if *d >= q {
            return Err(Error::Format(format!("modulus digit {d} out of range")));
        }
    }
    r.align_to_byte();
    let field = ExtField::with_modulus(q, m, modulus)?;
    let params = SchemeParams::with_field(scheme, field.clone(), n, k, l, lambda)?;
    if params.t() != t_header {
        return Err(Error::InvalidParams(format!(
            "announced t = {t_header} does not match derived t = {}",
            params.t()
        )));
    }

    let obj = match kind {
        ObjectKind::PublicKey => {
            let g_pub = match scheme {
                Scheme::Loidreau => read_matrix(&mut r, &field, k, n, width)?,
                Scheme::Mod1 | Scheme::Mod2 => {
                    let rows = params.msg_len();
                    let t_block = read_matrix(&mut r, &field, rows, n - rows, width)?;
                    FieldMatrix::identity(&field, rows).hstack(&t_block)
                }
            };
            WireObject::Public(PublicKey {
                params: params.clone(),
                g_pub,
            })
        }
        ObjectKind::SecretKey => {
            let a = read_vector(&mut r, &field, n, width)?;
            let v = read_vector(&mut r, &field, lambda, width)?;
            let p = read_matrix(&mut r, &field, n, n, width)?;
            let s = if scheme == Scheme::Mod2 {
                Some(read_matrix(&mut r, &field, k, k, width)?)
            } else {
                None
            };
            let g_pub = read_matrix(&mut r, &field, params.msg_len(), n, width)?;

            let code = GabidulinCode::new(a, k)?;
            let v_basis = SubspaceBasisQ::from_elements(v)?;
            let p_inv = p
                .inverse()
                .map_err(|_| Error::Format("stored scrambler is singular".into()))?;
            let s_inv = match &s {
                Some(mat) => Some(
                    mat.inverse()
                        .map_err(|_| Error::Format("stored S is singular".into()))?,
                ),
                None => None,
            };
            WireObject::Secret(SecretKey {
                params: params.clone(),
                code,
                p,
                p_inv,
                s,
                s_inv,
                v_basis,
                g_pub,
            })
        }
        ObjectKind::Ciphertext => {
            let c = read_vector(&mut r, &field, n, width)?;
            WireObject::Cipher(Ciphertext {
                params: params.clone(),
                c,
            })
        }
        ObjectKind::Message => {
            let v = read_vector(&mut r, &field, params.msg_len(), width)?;
            WireObject::Message(params.clone(), v)
        }
    };
    debug_assert_eq!(r.consumed(), modulus_bytes + payload_bytes);
    Ok(obj)
}
