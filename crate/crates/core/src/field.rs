//! Arithmetic in F_{q^m} = F_q[x]/(f), q prime, with the Frobenius map x ↦ x^q.
//!
//! Elements are dense coefficient vectors (m base-field digits, lowest degree
//! first). The modulus defaults to the lexicographically smallest monic
//! irreducible of degree m — "smallest" meaning ascending integer value
//! Σ cᵢ qⁱ — so two parties that agree on (q, m) agree on the field without
//! further coordination; serialized keys still carry the modulus explicitly.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rng::DetRng;

/// Hard cap on the extension degree; keeps multiplication buffers on the stack.
pub const MAX_M: usize = 64;

// ---------------------------------------------------------------------------
// base-field scalar helpers
// ---------------------------------------------------------------------------

fn is_prime(q: u8) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u16;
    while d * d <= q as u16 {
        if q as u16 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod_q(a: u8, q: u8) -> u8 {
    // extended Euclid on integers; a != 0 mod q, q prime
    let (mut t, mut new_t) = (0i32, 1i32);
    let (mut r, mut new_r) = (q as i32, a as i32);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "not invertible mod q");
    (t.rem_euclid(q as i32)) as u8
}

// ---------------------------------------------------------------------------
// dense polynomials over F_q (little-endian coefficients, used only for
// modulus setup: irreducibility testing and inverses)
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<u8>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_rem(mut a: Vec<u8>, f: &[u8], q: u8) -> Vec<u8> {
    // f monic of degree f.len()-1
    let df = f.len() - 1;
    while a.len() > df {
        let lead = a[a.len() - 1];
        let shift = a.len() - 1 - df;
        if lead != 0 {
            for j in 0..df {
                let v = (a[shift + j] as u16 + (q - f[j]) as u16 * lead as u16) % q as u16;
                a[shift + j] = v as u8;
            }
        }
        a.pop();
    }
    a
}

fn poly_mul_mod(a: &[u8], b: &[u8], f: &[u8], q: u8) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += ai as u32 * bj as u32;
        }
    }
    let reduced: Vec<u8> = prod.iter().map(|&v| (v % q as u32) as u8).collect();
    let mut r = poly_rem(reduced, f, q);
    poly_trim(&mut r);
    r
}

/// g^q mod f by square-and-multiply on the (small) exponent q.
fn poly_pow_q_mod(g: &[u8], f: &[u8], q: u8) -> Vec<u8> {
    let mut result = vec![1u8];
    let mut base = g.to_vec();
    let mut e = q as u32;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, f, q);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul_mod(&base, &base, f, q);
        }
    }
    result
}

fn poly_gcd(mut a: Vec<u8>, mut b: Vec<u8>, q: u8) -> Vec<u8> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // make b monic so poly_rem applies
        let lead_inv = inv_mod_q(b[b.len() - 1], q);
        let monic: Vec<u8> = b
            .iter()
            .map(|&c| ((c as u16 * lead_inv as u16) % q as u16) as u8)
            .collect();
        let mut r = poly_rem(a, &monic, q);
        poly_trim(&mut r);
        a = b;
        b = r;
    }
    a
}

fn prime_divisors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Rabin's test: f of degree m is irreducible over F_q iff x^(q^m) ≡ x (mod f)
/// and gcd(x^(q^(m/p)) − x, f) = 1 for every prime p dividing m.
fn is_irreducible(f: &[u8], q: u8) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0u8, 1];
    let checkpoints: Vec<usize> = prime_divisors(m).iter().map(|p| m / p).collect();
    let mut u = poly_rem(x.clone(), f, q);
    poly_trim(&mut u);
    let mut saved: HashMap<usize, Vec<u8>> = HashMap::new();
    for i in 1..=m {
        u = poly_pow_q_mod(&u, f, q);
        if checkpoints.contains(&i) {
            saved.insert(i, u.clone());
        }
    }
    // u is now x^(q^m) mod f; must equal x
    let mut xr = poly_rem(x.clone(), f, q);
    poly_trim(&mut xr);
    if u != xr {
        return false;
    }
    for (_, v) in saved {
        // gcd(v − x, f) must be trivial
        let mut diff = v;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = ((diff[1] as u16 + (q - 1) as u16) % q as u16) as u8;
        poly_trim(&mut diff);
        let g = poly_gcd(f.to_vec(), diff, q);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over F_q,
/// scanning tails in ascending integer value Σ cᵢ qⁱ.
fn smallest_irreducible(q: u8, m: usize) -> Vec<u8> {
    let mut v: u64 = 0;
    loop {
        let mut f = vec![0u8; m + 1];
        let mut rest = v;
        for digit in f.iter_mut().take(m) {
            *digit = (rest % q as u64) as u8;
            rest /= q as u64;
        }
        assert_eq!(rest, 0, "scanned past q^m without finding an irreducible");
        f[m] = 1;
        if is_irreducible(&f, q) {
            return f;
        }
        v += 1;
    }
}

fn modulus_cache() -> &'static Mutex<HashMap<(u8, usize), Vec<u8>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, usize), Vec<u8>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

// ---------------------------------------------------------------------------
// the extension field
// ---------------------------------------------------------------------------

struct FieldInner {
    q: u8,
    m: usize,
    modulus: Vec<u8>,
    /// frob[s] is the m×m row-major F_q-matrix of x ↦ x^(q^s); built lazily.
    frob: OnceLock<Vec<Vec<u8>>>,
}

/// Handle to F_{q^m}; cheap to clone, equality means same (q, m, modulus).
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<FieldInner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.q == other.inner.q
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}
impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.inner.q, self.inner.m)
    }
}

impl ExtField {
    /// Field with the default (lexicographically smallest irreducible) modulus.
    pub fn new(q: u8, m: usize) -> Result<ExtField> {
        let modulus = {
            let mut cache = modulus_cache().lock().unwrap();
            if let Some(f) = cache.get(&(q, m)) {
                f.clone()
            } else {
                Self::validate_qm(q, m)?;
                let f = smallest_irreducible(q, m);
                cache.insert((q, m), f.clone());
                f
            }
        };
        ExtField::with_modulus(q, m, modulus)
    }

    pub fn with_modulus(q: u8, m: usize, modulus: Vec<u8>) -> Result<ExtField> {
        Self::validate_qm(q, m)?;
        if modulus.len() != m + 1 {
            return Err(Error::InvalidParams(format!(
                "modulus must have degree {m}"
            )));
        }
        if modulus[m] != 1 {
            return Err(Error::InvalidParams("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= q) {
            return Err(Error::InvalidParams("modulus digit out of range".into()));
        }
        if !is_irreducible(&modulus, q) {
            return Err(Error::InvalidParams("modulus is reducible".into()));
        }
        Ok(ExtField {
            inner: Arc::new(FieldInner {
                q,
                m,
                modulus,
                frob: OnceLock::new(),
            }),
        })
    }

    fn validate_qm(q: u8, m: usize) -> Result<()> {
        if !is_prime(q) {
            return Err(Error::InvalidParams(format!("q = {q} is not prime")));
        }
        if m == 0 || m > MAX_M {
            return Err(Error::InvalidParams(format!(
                "extension degree must be in 1..={MAX_M}, got {m}"
            )));
        }
        Ok(())
    }

    pub fn q(&self) -> u8 {
        self.inner.q
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn modulus(&self) -> &[u8] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.inner.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    /// The residue class of x (written α in the tests).
    pub fn alpha(&self) -> FieldElement {
        let m = self.inner.m;
        let mut poly = vec![0u8; m + 1];
        poly[1] = 1;
        let r = poly_rem(poly, &self.inner.modulus, self.inner.q);
        let mut coeffs = r;
        coeffs.resize(m, 0);
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Embed a base-field digit (taken mod q).
    pub fn from_base(&self, c: u8) -> FieldElement {
        let mut coeffs = vec![0; self.inner.m];
        coeffs[0] = c % self.inner.q;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element from explicit digits, lowest degree first; at most m of them.
    pub fn element(&self, digits: &[u8]) -> Result<FieldElement> {
        if digits.len() > self.inner.m {
            return Err(Error::InvalidParams("too many digits".into()));
        }
        if digits.iter().any(|&d| d >= self.inner.q) {
            return Err(Error::InvalidParams("digit out of range".into()));
        }
        let mut coeffs = digits.to_vec();
        coeffs.resize(self.inner.m, 0);
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    pub fn random(&self, rng: &mut DetRng) -> FieldElement {
        let q = self.inner.q;
        let coeffs = (0..self.inner.m).map(|_| rng.digit(q)).collect();
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// All q^m elements in digit-counter order; only sensible for tiny fields.
    pub fn iter_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.inner.q as u64;
        let m = self.inner.m;
        let total = q.checked_pow(m as u32).expect("field too large to enumerate");
        (0..total).map(move |v| {
            let mut coeffs = vec![0u8; m];
            let mut rest = v;
            for c in coeffs.iter_mut() {
                *c = (rest % q) as u8;
                rest /= q;
            }
            FieldElement {
                field: self.clone(),
                coeffs,
            }
        })
    }

    fn frob_tables(&self) -> &Vec<Vec<u8>> {
        self.inner.frob.get_or_init(|| {
            let m = self.inner.m;
            let q = self.inner.q;
            let f = &self.inner.modulus;
            let mut tables = Vec::with_capacity(m);
            // s = 0: identity
            let mut ident = vec![0u8; m * m];
            for i in 0..m {
                ident[i * m + i] = 1;
            }
            tables.push(ident);
            if m > 1 {
                // s = 1: column c holds (x^c)^q = (x^q)^c mod f
                let x = vec![0u8, 1];
                let xq = poly_pow_q_mod(&x, f, q);
                let mut mat = vec![0u8; m * m];
                mat[0] = 1; // image of x^0
                let mut p = vec![1u8];
                for c in 1..m {
                    p = poly_mul_mod(&p, &xq, f, q);
                    for (r, &coef) in p.iter().enumerate() {
                        mat[r * m + c] = coef;
                    }
                }
                tables.push(mat);
                // s ≥ 2 by composition: M_s = M_1 · M_{s−1}
                for s in 2..m {
                    let m1 = &tables[1];
                    let prev = &tables[s - 1];
                    let mut next = vec![0u8; m * m];
                    let mut acc_row = [0u32; MAX_M];
                    for r in 0..m {
                        let acc = &mut acc_row[..m];
                        acc.fill(0);
                        for t in 0..m {
                            let a = m1[r * m + t];
                            if a == 0 {
                                continue;
                            }
                            let a = a as u32;
                            let prow = &prev[t * m..(t + 1) * m];
                            for (o, &p) in acc.iter_mut().zip(prow) {
                                *o += a * p as u32;
                            }
                        }
                        for (o, &v) in next[r * m..(r + 1) * m].iter_mut().zip(acc.iter()) {
                            *o = (v % q as u32) as u8;
                        }
                    }
                    tables.push(next);
                }
            }
            tables
        })
    }
}

// ---------------------------------------------------------------------------
// elements
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct FieldElement {
    field: ExtField,
    coeffs: Vec<u8>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "α")?,
                (1, _) => write!(f, "{c}α")?,
                (_, 1) => write!(f, "α^{i}")?,
                _ => write!(f, "{c}α^{i}")?,
            }
        }
        Ok(())
    }
}

/// Widened product buffer + fold of x^i (i ≥ m) through the modulus relation.
/// Bound check: conv terms ≤ 64·250² and each fold adds ≤ 64·250·251, well
/// inside u32.
fn reduce_into(buf: &mut [u32], modulus: &[u8], q: u8, out: &mut [u8]) {
    let m = modulus.len() - 1;
    let qw = q as u32;
    for i in (m..buf.len()).rev() {
        let hi = buf[i] % qw;
        if hi == 0 {
            continue;
        }
        for (j, &fj) in modulus.iter().take(m).enumerate() {
            if fj != 0 {
                buf[i - m + j] += hi * (qw - fj as u32);
            }
        }
    }
    for j in 0..m {
        out[j] = (buf[j] % qw) as u8;
    }
}

fn conv_into(a: &[u8], b: &[u8], buf: &mut [u32]) {
    // widen b once so the inner loop is a pure u32 saxpy
    let mut bw = [0u32; MAX_M];
    let bw = &mut bw[..b.len()];
    for (w, &x) in bw.iter_mut().zip(b) {
        *w = x as u32;
    }
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let ai = ai as u32;
        let dst = &mut buf[i..i + bw.len()];
        for (d, &bj) in dst.iter_mut().zip(bw.iter()) {
            *d += ai * bj;
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "field mismatch: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    /// self += a·b without allocating; the workhorse of row elimination.
    pub fn mul_acc(&mut self, a: &FieldElement, b: &FieldElement) {
        self.assert_same_field(a);
        self.assert_same_field(b);
        let m = self.field.inner.m;
        let mut buf = [0u32; 2 * MAX_M];
        let buf = &mut buf[..2 * m - 1];
        conv_into(&a.coeffs, &b.coeffs, buf);
        for (j, &c) in self.coeffs.iter().enumerate() {
            buf[j] += c as u32;
        }
        reduce_into(buf, &self.field.inner.modulus, self.field.inner.q, &mut self.coeffs);
    }

    /// self −= a·b without allocating.
    pub fn mul_sub(&mut self, a: &FieldElement, b: &FieldElement) {
        self.assert_same_field(a);
        self.assert_same_field(b);
        let m = self.field.inner.m;
        let q = self.field.inner.q;
        let mut buf = [0u32; 2 * MAX_M];
        let buf = &mut buf[..2 * m - 1];
        conv_into(&a.coeffs, &b.coeffs, buf);
        let mut prod = [0u8; MAX_M];
        reduce_into(buf, &self.field.inner.modulus, q, &mut prod[..m]);
        for (j, c) in self.coeffs.iter_mut().enumerate() {
            *c = ((*c as u16 + (q - prod[j]) as u16) % q as u16) as u8;
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.field.inner.q;
        let f = &self.field.inner.modulus;
        // extended Euclid: maintain r ≡ s·self (mod f)
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (mut r0, mut s0) = (f.clone(), Vec::new());
        let (mut r1, mut s1) = (a, vec![1u8]);
        while r1.len() > 1 {
            let lead_inv = inv_mod_q(r1[r1.len() - 1], q);
            let monic: Vec<u8> = r1
                .iter()
                .map(|&c| ((c as u16 * lead_inv as u16) % q as u16) as u8)
                .collect();
            // long division of r0 by monic, tracking the quotient
            let mut rem = r0.clone();
            let mut quot = vec![0u8; rem.len().saturating_sub(monic.len()) + 1];
            while rem.len() >= monic.len() {
                let lead = rem[rem.len() - 1];
                let shift = rem.len() - monic.len();
                if lead != 0 {
                    quot[shift] = lead;
                    for j in 0..monic.len() - 1 {
                        let v =
                            (rem[shift + j] as u16 + (q - monic[j]) as u16 * lead as u16) % q as u16;
                        rem[shift + j] = v as u8;
                    }
                }
                rem.pop();
                poly_trim(&mut rem);
                if rem.len() < monic.len() {
                    break;
                }
            }
            // fold the leading-coefficient normalization into the quotient
            let quot: Vec<u8> = quot
                .iter()
                .map(|&c| ((c as u16 * lead_inv as u16) % q as u16) as u8)
                .collect();
            // s2 = s0 − quot·s1
            let mut s2 = s0.clone();
            let prod_len = quot.len() + s1.len();
            s2.resize(s2.len().max(prod_len.saturating_sub(1)), 0);
            for (i, &qc) in quot.iter().enumerate() {
                if qc == 0 {
                    continue;
                }
                for (j, &sc) in s1.iter().enumerate() {
                    let v = (s2[i + j] as u16 + (q as u16 - (qc as u16 * sc as u16) % q as u16))
                        % q as u16;
                    s2[i + j] = v as u8;
                }
            }
            poly_trim(&mut s2);
            (r0, s0) = (r1, s1);
            (r1, s1) = (rem, s2);
        }
        assert!(!r1.is_empty(), "gcd not constant: modulus not irreducible?");
        let c_inv = inv_mod_q(r1[0], q);
        let mut coeffs: Vec<u8> = s1
            .iter()
            .map(|&c| ((c as u16 * c_inv as u16) % q as u16) as u8)
            .collect();
        coeffs = poly_rem(coeffs, f, q);
        coeffs.resize(self.field.inner.m, 0);
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut result = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// a^(q^s); negative s walks the automorphism backwards. Reduced mod m.
    pub fn frobenius(&self, s: i64) -> FieldElement {
        let m = self.field.inner.m as i64;
        let s = s.rem_euclid(m) as usize;
        if s == 0 {
            return self.clone();
        }
        let tables = self.field.frob_tables();
        let mat = &tables[s];
        let m = self.field.inner.m;
        let q = self.field.inner.q as u32;
        let mut xw = [0u32; MAX_M];
        let xw = &mut xw[..m];
        for (w, &x) in xw.iter_mut().zip(&self.coeffs) {
            *w = x as u32;
        }
        let mut out = vec![0u8; m];
        for (r, o) in out.iter_mut().enumerate() {
            let row = &mat[r * m..(r + 1) * m];
            let mut acc = 0u32;
            for (&a, &x) in row.iter().zip(xw.iter()) {
                acc += a as u32 * x;
            }
            *o = (acc % q) as u8;
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: out,
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let q = self.field.inner.q as u16;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| ((a as u16 + b as u16) % q) as u8)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let q = self.field.inner.q as u16;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| ((a as u16 + q - b as u16) % q) as u8)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let q = self.field.inner.q as u16;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((q - a as u16) % q) as u8)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let m = self.field.inner.m;
        let mut buf = [0u32; 2 * MAX_M];
        let buf = &mut buf[..2 * m - 1];
        conv_into(&self.coeffs, &rhs.coeffs, buf);
        let mut coeffs = vec![0u8; m];
        reduce_into(buf, &self.field.inner.modulus, self.field.inner.q, &mut coeffs);
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
