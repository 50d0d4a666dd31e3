//! The three cryptosystems.
//!
//! All share the skeleton: a Gabidulin code G_{n,k}(a) hidden by a column
//! scrambler P whose entries live in a λ-dimensional F_q-subspace V, so that
//! ciphertext errors of rank t stay decodable after multiplication by P
//! (rank grows at most λ-fold).
//!
//! * `loidreau` — G_pub = G·P⁻¹ published in full.
//! * `mod1` — the generator of a random (k−l)-dimensional subcode of G is
//!   scrambled instead, then systematized; the public code no longer sums to
//!   dimension k+1 under one Frobenius shift, which removes the structure
//!   the Coggia–Couvreur attack feeds on.
//! * `mod2` — a random column-rank-l matrix M is added to G before
//!   scrambling (G_M = G + M), and a row scrambler S brings the result to
//!   systematic form; decoding absorbs mSM + eP within the radius budget
//!   l + λt.

use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::gabidulin::{moore_matrix, sample_generator_vector, GabidulinCode};
use crate::linalg::{
    column_rank_q, rank_q, rank_weight, sample_subspace, vec_sub, FieldMatrix, FieldVector,
    SubspaceBasisQ, SAMPLING_CAP,
};
use crate::rng::DetRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Loidreau,
    Mod1,
    Mod2,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Loidreau => "loidreau",
            Scheme::Mod1 => "mod1",
            Scheme::Mod2 => "mod2",
        }
    }

    pub fn parse(s: &str) -> Result<Scheme> {
        match s {
            "loidreau" => Ok(Scheme::Loidreau),
            "mod1" => Ok(Scheme::Mod1),
            "mod2" => Ok(Scheme::Mod2),
            other => Err(Error::InvalidParams(format!("unknown scheme '{other}'"))),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Validated parameter set; t is always derived, never chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    scheme: Scheme,
    n: usize,
    k: usize,
    l: usize,
    lambda: usize,
    t: usize,
    field: ExtField,
}

impl SchemeParams {
    pub fn new(
        scheme: Scheme,
        q: u8,
        m: usize,
        n: usize,
        k: usize,
        l: usize,
        lambda: usize,
    ) -> Result<SchemeParams> {
        let field = ExtField::new(q, m)?;
        Self::with_field(scheme, field, n, k, l, lambda)
    }

    pub fn with_field(
        scheme: Scheme,
        field: ExtField,
        n: usize,
        k: usize,
        l: usize,
        lambda: usize,
    ) -> Result<SchemeParams> {
        let m = field.m();
        if n > m {
            return Err(Error::InvalidParams(format!(
                "n = {n} must not exceed m = {m}"
            )));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidParams(format!(
                "k = {k} must satisfy 1 ≤ k < n = {n}"
            )));
        }
        if lambda < 2 {
            // λ = 1 keeps P inside one Frobenius orbit and the scheme falls
            // to the same attacks as an unmasked Gabidulin code
            return Err(Error::InvalidParams(
                "λ must be at least 2".into(),
            ));
        }
        let t = match scheme {
            Scheme::Loidreau | Scheme::Mod1 => (n - k) / (2 * lambda),
            Scheme::Mod2 => (n - k).saturating_sub(2 * l) / (2 * lambda),
        };
        if t == 0 {
            return Err(Error::InvalidParams(
                "derived error weight t is zero; increase n − k".into(),
            ));
        }
        match scheme {
            Scheme::Loidreau => {
                if l != 0 {
                    return Err(Error::InvalidParams(
                        "l is not a parameter of the original scheme".into(),
                    ));
                }
            }
            Scheme::Mod1 => {
                let l_min = 1.max(k.saturating_sub(n / 2));
                if l < l_min {
                    return Err(Error::InvalidParams(format!(
                        "subcode co-dimension l = {l} below minimum {l_min}"
                    )));
                }
                if l >= k {
                    return Err(Error::InvalidParams(format!(
                        "subcode co-dimension l = {l} must stay below k = {k}"
                    )));
                }
            }
            Scheme::Mod2 => {
                if l == 0 {
                    return Err(Error::InvalidParams("mask column rank l must be ≥ 1".into()));
                }
                if l >= k.min(n - k) {
                    return Err(Error::InvalidParams(format!(
                        "mask column rank l = {l} too large for k = {k}, n−k = {}",
                        n - k
                    )));
                }
                if l + lambda * t > (n - k) / 2 {
                    return Err(Error::InvalidParams(
                        "error budget l + λt exceeds the decoding radius".into(),
                    ));
                }
            }
        }
        Ok(SchemeParams {
            scheme,
            n,
            k,
            l,
            lambda,
            t,
            field,
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
    pub fn q(&self) -> u8 {
        self.field.q()
    }
    pub fn m(&self) -> usize {
        self.field.m()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn l(&self) -> usize {
        self.l
    }
    pub fn lambda(&self) -> usize {
        self.lambda
    }
    /// Public error weight, derived from the decoding-radius budget.
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// Length of a plaintext vector (k, except k−l for the subcode variant).
    pub fn msg_len(&self) -> usize {
        match self.scheme {
            Scheme::Mod1 => self.k - self.l,
            _ => self.k,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PublicKey {
    pub params: SchemeParams,
    /// Full k×n for loidreau; systematic [I | T] for mod1 (k−l rows) and
    /// mod2 (k rows).
    pub g_pub: FieldMatrix,
}

#[derive(Clone, Debug)]
pub struct SecretKey {
    pub params: SchemeParams,
    pub code: GabidulinCode,
    pub p: FieldMatrix,
    pub p_inv: FieldMatrix,
    /// Row scrambler S = B⁻¹ and its inverse B, mod2 only.
    pub s: Option<FieldMatrix>,
    pub s_inv: Option<FieldMatrix>,
    /// The subspace the scrambler entries were drawn from; kept for
    /// white-box analysis, not needed to decrypt.
    pub v_basis: SubspaceBasisQ,
    /// Echo of the public matrix for the re-encryption consistency check.
    pub g_pub: FieldMatrix,
}

#[derive(Clone, Debug)]
pub struct KeyPair {
    pub public: PublicKey,
    pub secret: SecretKey,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ciphertext {
    pub params: SchemeParams,
    pub c: FieldVector,
}

// ---------------------------------------------------------------------------
// samplers
// ---------------------------------------------------------------------------

/// Invertible n×n matrix with every entry in the span of V; returns the
/// inverse along with it since the rejection loop computes it anyway.
pub fn sample_p(
    field: &ExtField,
    n: usize,
    v: &SubspaceBasisQ,
    rng: &mut DetRng,
) -> Result<(FieldMatrix, FieldMatrix)> {
    for _ in 0..SAMPLING_CAP {
        let p = FieldMatrix::from_fn(field, n, n, |_, _| v.random_member(rng));
        if let Ok(p_inv) = p.inverse() {
            return Ok((p, p_inv));
        }
    }
    Err(Error::SamplingFailure(SAMPLING_CAP))
}

/// Full-rank r×c digit matrix over F_q.
fn sample_full_rank_digits(
    q: u8,
    r: usize,
    c: usize,
    rng: &mut DetRng,
) -> Result<Vec<Vec<u8>>> {
    for _ in 0..SAMPLING_CAP {
        let mat: Vec<Vec<u8>> = (0..r)
            .map(|_| (0..c).map(|_| rng.digit(q)).collect())
            .collect();
        if rank_q(mat.clone(), q) == r.min(c) {
            return Ok(mat);
        }
    }
    Err(Error::SamplingFailure(SAMPLING_CAP))
}

/// Vector of rank weight exactly t: a t-dimensional support basis combined
/// through a full-rank t×n digit matrix.
pub fn sample_rank_error(
    field: &ExtField,
    n: usize,
    t: usize,
    rng: &mut DetRng,
) -> Result<FieldVector> {
    if t == 0 || t > field.m().min(n) {
        return Err(Error::InvalidParams(format!(
            "error rank t = {t} out of range 1..={}",
            field.m().min(n)
        )));
    }
    let support = sample_subspace(field, t, rng)?;
    let combo = sample_full_rank_digits(field.q(), t, n, rng)?;
    let mut e = vec![field.zero(); n];
    for (i, beta) in support.elements().iter().enumerate() {
        for (j, ej) in e.iter_mut().enumerate() {
            if combo[i][j] != 0 {
                let c = field.from_base(combo[i][j]);
                ej.mul_acc(&c, beta);
            }
        }
    }
    debug_assert_eq!(rank_weight(&e), t);
    Ok(e)
}

/// k×n matrix with F_q-column rank exactly l, as C·E with C of column rank l
/// over F_q and E a full-rank l×n digit matrix.
pub fn sample_low_colrank_matrix(
    field: &ExtField,
    k: usize,
    n: usize,
    l: usize,
    rng: &mut DetRng,
) -> Result<FieldMatrix> {
    if l == 0 || l > (k * field.m()).min(n) {
        return Err(Error::InvalidParams(format!(
            "column rank l = {l} out of range 1..={}",
            (k * field.m()).min(n)
        )));
    }
    let c = {
        let mut found = None;
        for _ in 0..SAMPLING_CAP {
            let cand = FieldMatrix::random(field, k, l, rng);
            if column_rank_q(&cand) == l {
                found = Some(cand);
                break;
            }
        }
        found.ok_or(Error::SamplingFailure(SAMPLING_CAP))?
    };
    let e = sample_full_rank_digits(field.q(), l, n, rng)?;
    let m = FieldMatrix::from_fn(field, k, n, |i, j| {
        let mut acc = field.zero();
        for s in 0..l {
            if e[s][j] != 0 {
                let d = field.from_base(e[s][j]);
                acc.mul_acc(&d, &c[(i, s)]);
            }
        }
        acc
    });
    debug_assert_eq!(column_rank_q(&m), l);
    Ok(m)
}

// ---------------------------------------------------------------------------
// keygen / encrypt / decrypt
// ---------------------------------------------------------------------------

pub fn keygen(params: &SchemeParams, rng: &mut DetRng) -> Result<KeyPair> {
    let field = params.field().clone();
    let (n, k, l) = (params.n(), params.k(), params.l());

    let a = sample_generator_vector(&field, n, rng)?;
    let code = GabidulinCode::new(a, k)?;
    let v_basis = sample_subspace(&field, params.lambda(), rng)?;

    match params.scheme() {
        Scheme::Loidreau => {
            let (p, p_inv) = sample_p(&field, n, &v_basis, rng)?;
            let g_pub = code.generator() * &p_inv;
            finish(params, code, p, p_inv, None, None, v_basis, g_pub)
        }
        Scheme::Mod1 => {
            // parity check of the chosen subcode: the code's own check matrix
            // extended by l random rows, kept only when the stack stays full
            // rank (which a random A almost surely is)
            let b = code.dual_generator_vector()?;
            let h = moore_matrix(&b, n - k);
            let g_sub = (0..SAMPLING_CAP)
                .find_map(|_| {
                    let a_rows = FieldMatrix::random(&field, l, n, rng);
                    let h_sub = a_rows.vstack(&h);
                    if h_sub.rank() != n - k + l {
                        return None;
                    }
                    Some(h_sub.kernel_basis())
                })
                .ok_or(Error::SamplingFailure(SAMPLING_CAP))?;
            debug_assert_eq!(g_sub.rows(), k - l);
            // scramble and systematize; a singular leading block means we
            // resample P rather than permute columns
            for _ in 0..SAMPLING_CAP {
                let (p, p_inv) = sample_p(&field, n, &v_basis, rng)?;
                let g_scr = &g_sub * &p_inv;
                let lead = g_scr.submatrix(0, k - l, 0, k - l);
                let Ok(lead_inv) = lead.inverse() else {
                    continue;
                };
                let g_pub = &lead_inv * &g_scr;
                return finish(params, code, p, p_inv, None, None, v_basis, g_pub);
            }
            Err(Error::SamplingFailure(SAMPLING_CAP))
        }
        Scheme::Mod2 => {
            let mask = sample_low_colrank_matrix(&field, k, n, l, rng)?;
            let mut g_m = code.generator().clone();
            for i in 0..k {
                for j in 0..n {
                    let v = &g_m[(i, j)] + &mask[(i, j)];
                    g_m[(i, j)] = v;
                }
            }
            for _ in 0..SAMPLING_CAP {
                let (p, p_inv) = sample_p(&field, n, &v_basis, rng)?;
                let g_scr = &g_m * &p_inv;
                let lead = g_scr.submatrix(0, k, 0, k);
                let Ok(s) = lead.inverse() else {
                    continue;
                };
                let g_pub = &s * &g_scr;
                return finish(params, code, p, p_inv, Some(s), Some(lead), v_basis, g_pub);
            }
            Err(Error::SamplingFailure(SAMPLING_CAP))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    params: &SchemeParams,
    code: GabidulinCode,
    p: FieldMatrix,
    p_inv: FieldMatrix,
    s: Option<FieldMatrix>,
    s_inv: Option<FieldMatrix>,
    v_basis: SubspaceBasisQ,
    g_pub: FieldMatrix,
) -> Result<KeyPair> {
    debug_assert_eq!(g_pub.rows(), params.msg_len());
    let public = PublicKey {
        params: params.clone(),
        g_pub: g_pub.clone(),
    };
    let secret = SecretKey {
        params: params.clone(),
        code,
        p,
        p_inv,
        s,
        s_inv,
        v_basis,
        g_pub,
    };
    Ok(KeyPair { public, secret })
}

pub fn encrypt(pk: &PublicKey, msg: &[FieldElement], rng: &mut DetRng) -> Result<Ciphertext> {
    if msg.len() != pk.params.msg_len() {
        return Err(Error::DimensionMismatch(format!(
            "message length {} ≠ {}",
            msg.len(),
            pk.params.msg_len()
        )));
    }
    let e = sample_rank_error(pk.params.field(), pk.params.n(), pk.params.t(), rng)?;
    let mut c = pk.g_pub.left_mul_vec(msg);
    for (ci, ei) in c.iter_mut().zip(&e) {
        *ci = &*ci + ei;
    }
    Ok(Ciphertext {
        params: pk.params.clone(),
        c,
    })
}

pub fn decrypt(sk: &SecretKey, ct: &Ciphertext) -> Result<FieldVector> {
    if ct.params != sk.params {
        return Err(Error::InvalidParams(
            "ciphertext was made for different parameters".into(),
        ));
    }
    let params = &sk.params;
    // undo the column scrambler; the error rank grows at most λ-fold (plus
    // the mask contribution for mod2), staying inside the decoding radius
    let c_unscrambled = sk.p.left_mul_vec(&ct.c);
    let (_, e_scr, inner) = sk.code.decode(&c_unscrambled)?;
    debug_assert!(
        rank_weight(&e_scr)
            <= params.l() * usize::from(params.scheme() == Scheme::Mod2)
                + params.lambda() * params.t()
    );

    let msg = match params.scheme() {
        Scheme::Loidreau => inner,
        Scheme::Mod1 => {
            // the plaintext sits on the systematic coordinates once the
            // true error is stripped off
            let e = sk.p_inv.left_mul_vec(&e_scr);
            let cleaned = vec_sub(&ct.c, &e);
            cleaned[..params.msg_len()].to_vec()
        }
        Scheme::Mod2 => {
            let b = sk.s_inv.as_ref().expect("mod2 secret key carries S");
            b.left_mul_vec(&inner)
        }
    };

    // re-encryption consistency: the residual must be a legal rank-t error
    let residual = vec_sub(&ct.c, &sk.g_pub.left_mul_vec(&msg));
    if rank_weight(&residual) > params.t() {
        return Err(Error::DecodingFailure);
    }
    Ok(msg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::solve_right;

    fn demo(scheme: Scheme) -> SchemeParams {
        match scheme {
            Scheme::Loidreau => SchemeParams::new(Scheme::Loidreau, 2, 24, 24, 13, 0, 2),
            Scheme::Mod1 => SchemeParams::new(Scheme::Mod1, 2, 28, 28, 15, 1, 2),
            Scheme::Mod2 => SchemeParams::new(Scheme::Mod2, 2, 28, 28, 16, 1, 2),
        }
        .unwrap()
    }

    #[test]
    fn derived_t_values() {
        assert_eq!(demo(Scheme::Loidreau).t(), 2); // ⌊11/4⌋
        assert_eq!(demo(Scheme::Mod1).t(), 3); // ⌊13/4⌋
        assert_eq!(demo(Scheme::Mod2).t(), 2); // ⌊(12−2)/4⌋
        let full = SchemeParams::new(Scheme::Mod1, 3, 42, 42, 23, 2, 2).unwrap();
        assert_eq!(full.t(), 4); // ⌊19/4⌋
        let full2 = SchemeParams::new(Scheme::Mod2, 3, 44, 44, 30, 1, 2).unwrap();
        assert_eq!(full2.t(), 3); // ⌊12/4⌋
        let full3 = SchemeParams::new(Scheme::Loidreau, 3, 37, 37, 17, 0, 2).unwrap();
        assert_eq!(full3.t(), 5); // ⌊20/4⌋
    }

    #[test]
    fn parameter_validation_rejects_bad_shapes() {
        // λ = 1 is always rejected
        assert!(SchemeParams::new(Scheme::Loidreau, 2, 24, 24, 13, 0, 1).is_err());
        // n > m
        assert!(SchemeParams::new(Scheme::Loidreau, 2, 20, 24, 13, 0, 2).is_err());
        // t would be zero
        assert!(SchemeParams::new(Scheme::Loidreau, 2, 24, 24, 22, 0, 2).is_err());
        // loidreau takes no l
        assert!(SchemeParams::new(Scheme::Loidreau, 2, 24, 24, 13, 1, 2).is_err());
        // mod1: l below k − n/2
        assert!(SchemeParams::new(Scheme::Mod1, 2, 24, 24, 14, 1, 2).is_err());
        assert!(SchemeParams::new(Scheme::Mod1, 2, 24, 24, 14, 2, 2).is_ok());
        // mod1: l ≥ k
        assert!(SchemeParams::new(Scheme::Mod1, 2, 28, 28, 4, 4, 2).is_err());
        // mod2: l = 0, and t collapsing to zero
        assert!(SchemeParams::new(Scheme::Mod2, 2, 28, 28, 16, 0, 2).is_err());
        assert!(SchemeParams::new(Scheme::Mod2, 2, 28, 28, 24, 1, 2).is_err());
    }

    #[test]
    fn sampled_p_is_invertible_with_entries_in_v() {
        let f = ExtField::new(3, 8).unwrap();
        let mut rng = DetRng::from_u64_seed(40);
        let v = sample_subspace(&f, 2, &mut rng).unwrap();
        let (p, p_inv) = sample_p(&f, 6, &v, &mut rng).unwrap();
        assert_eq!(&p * &p_inv, FieldMatrix::identity(&f, 6));
        for i in 0..6 {
            for j in 0..6 {
                assert!(v.contains(&p[(i, j)]));
            }
        }
    }

    #[test]
    fn sample_p_is_deterministic_in_the_seed() {
        let f = ExtField::new(3, 8).unwrap();
        let v = {
            let mut rng = DetRng::from_u64_seed(41);
            sample_subspace(&f, 2, &mut rng).unwrap()
        };
        let mut r1 = DetRng::from_u64_seed(42);
        let mut r2 = DetRng::from_u64_seed(42);
        let (p1, _) = sample_p(&f, 5, &v, &mut r1).unwrap();
        let (p2, _) = sample_p(&f, 5, &v, &mut r2).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn rank_errors_have_exact_weight() {
        let f = ExtField::new(3, 10).unwrap();
        let mut rng = DetRng::from_u64_seed(43);
        for t in 1..=4 {
            for _ in 0..25 {
                let e = sample_rank_error(&f, 9, t, &mut rng).unwrap();
                assert_eq!(rank_weight(&e), t);
            }
        }
        assert!(sample_rank_error(&f, 9, 0, &mut rng).is_err());
        assert!(sample_rank_error(&f, 9, 10, &mut rng).is_err());
    }

    #[test]
    fn rank_one_error_coordinates_share_a_support_line() {
        let f = ExtField::new(3, 8).unwrap();
        let mut rng = DetRng::from_u64_seed(44);
        let e = sample_rank_error(&f, 6, 1, &mut rng).unwrap();
        let pivot = e.iter().find(|x| !x.is_zero()).unwrap();
        let base = SubspaceBasisQ::from_elements(vec![pivot.clone()]).unwrap();
        assert!(e.iter().all(|x| x.is_zero() || base.contains(x)));
    }

    #[test]
    fn low_colrank_masks_have_exact_column_rank() {
        let f = ExtField::new(3, 8).unwrap();
        let mut rng = DetRng::from_u64_seed(45);
        for l in 1..=3 {
            for _ in 0..10 {
                let m = sample_low_colrank_matrix(&f, 5, 8, l, &mut rng).unwrap();
                assert_eq!(column_rank_q(&m), l);
            }
        }
    }

    #[test]
    fn low_colrank_row_space_has_bounded_rank_weight() {
        let f = ExtField::new(3, 8).unwrap();
        let mut rng = DetRng::from_u64_seed(46);
        let l = 2;
        let m = sample_low_colrank_matrix(&f, 5, 8, l, &mut rng).unwrap();
        for _ in 0..20 {
            let x: FieldVector = (0..5).map(|_| f.random(&mut rng)).collect();
            let row = m.transpose().right_mul_vec(&x); // x·M
            assert!(rank_weight(&row) <= l);
        }
    }

    #[test]
    fn loidreau_public_key_unscrambles_to_the_moore_matrix() {
        let params = demo(Scheme::Loidreau);
        let mut rng = DetRng::from_u64_seed(47);
        let kp = keygen(&params, &mut rng).unwrap();
        assert_eq!(kp.public.g_pub.rows(), 13);
        assert_eq!(
            &kp.public.g_pub * &kp.secret.p,
            *kp.secret.code.generator()
        );
    }

    #[test]
    fn mod1_public_rows_unscramble_into_the_gabidulin_code() {
        let params = demo(Scheme::Mod1);
        let mut rng = DetRng::from_u64_seed(48);
        let kp = keygen(&params, &mut rng).unwrap();
        let g_pub = &kp.public.g_pub;
        assert_eq!(g_pub.rows(), 14); // k − l
        // systematic left block
        assert_eq!(
            g_pub.submatrix(0, 14, 0, 14),
            FieldMatrix::identity(params.field(), 14)
        );
        // every row of G_pub·P is a codeword of G_{n,k}(a)
        let unscrambled = g_pub * &kp.secret.p;
        let moore = kp.secret.code.generator();
        for i in 0..unscrambled.rows() {
            assert!(solve_right(moore, unscrambled.row(i)).is_ok());
        }
    }

    #[test]
    fn mod2_key_equation_recovers_a_rank_l_mask() {
        let params = demo(Scheme::Mod2);
        let mut rng = DetRng::from_u64_seed(49);
        let kp = keygen(&params, &mut rng).unwrap();
        let g_pub = &kp.public.g_pub;
        assert_eq!(
            g_pub.submatrix(0, 16, 0, 16),
            FieldMatrix::identity(params.field(), 16)
        );
        // S⁻¹·G_pub·P − G must be the sampled mask: column rank exactly l
        let b = kp.secret.s_inv.as_ref().unwrap();
        let mut mask = &(b * g_pub) * &kp.secret.p;
        let moore = kp.secret.code.generator();
        for i in 0..16 {
            for j in 0..28 {
                let v = &mask[(i, j)] - &moore[(i, j)];
                mask[(i, j)] = v;
            }
        }
        assert_eq!(column_rank_q(&mask), params.l());
    }

    #[test]
    fn round_trips_at_demo_scale() {
        for scheme in [Scheme::Loidreau, Scheme::Mod1, Scheme::Mod2] {
            let params = demo(scheme);
            let mut rng = DetRng::from_u64_seed(50);
            let kp = keygen(&params, &mut rng).unwrap();
            for trial in 0..5 {
                let msg: FieldVector = (0..params.msg_len())
                    .map(|_| params.field().random(&mut rng))
                    .collect();
                let ct = encrypt(&kp.public, &msg, &mut rng).unwrap();
                let back = decrypt(&kp.secret, &ct).unwrap();
                assert_eq!(back, msg, "{scheme} trial {trial}");
            }
        }
    }

    #[test]
    fn zero_message_round_trips_to_zero() {
        let params = demo(Scheme::Mod2);
        let mut rng = DetRng::from_u64_seed(51);
        let kp = keygen(&params, &mut rng).unwrap();
        let msg = vec![params.field().zero(); params.msg_len()];
        let ct = encrypt(&kp.public, &msg, &mut rng).unwrap();
        // ciphertext is then exactly the error vector
        assert_eq!(rank_weight(&ct.c), params.t());
        assert_eq!(decrypt(&kp.secret, &ct).unwrap(), msg);
    }

    #[test]
    fn encryption_is_deterministic_per_seed() {
        let params = demo(Scheme::Loidreau);
        let mut rng = DetRng::from_u64_seed(52);
        let kp = keygen(&params, &mut rng).unwrap();
        let msg: FieldVector = (0..params.msg_len())
            .map(|_| params.field().random(&mut rng))
            .collect();
        let mut r1 = DetRng::from_seed([3u8; 32]);
        let mut r2 = DetRng::from_seed([3u8; 32]);
        assert_eq!(
            encrypt(&kp.public, &msg, &mut r1).unwrap(),
            encrypt(&kp.public, &msg, &mut r2).unwrap()
        );
    }

    #[test]
    fn keygen_is_deterministic_per_seed() {
        let params = demo(Scheme::Mod1);
        let mut r1 = DetRng::from_seed([5u8; 32]);
        let mut r2 = DetRng::from_seed([5u8; 32]);
        let kp1 = keygen(&params, &mut r1).unwrap();
        let kp2 = keygen(&params, &mut r2).unwrap();
        assert_eq!(kp1.public.g_pub, kp2.public.g_pub);
        assert_eq!(kp1.secret.p, kp2.secret.p);
    }

    #[test]
    fn oversized_injected_error_is_rejected() {
        let params = demo(Scheme::Loidreau);
        let mut rng = DetRng::from_u64_seed(53);
        let kp = keygen(&params, &mut rng).unwrap();
        let msg: FieldVector = (0..params.msg_len())
            .map(|_| params.field().random(&mut rng))
            .collect();
        // rank-12 injected error: even after P it cannot fit the radius
        let big = sample_rank_error(params.field(), params.n(), 12, &mut rng).unwrap();
        let mut c = kp.public.g_pub.left_mul_vec(&msg);
        for (ci, ei) in c.iter_mut().zip(&big) {
            *ci = &*ci + ei;
        }
        let ct = Ciphertext {
            params: params.clone(),
            c,
        };
        assert!(decrypt(&kp.secret, &ct).is_err());
    }

    #[test]
    fn ciphertext_for_other_params_is_rejected() {
        let p1 = demo(Scheme::Loidreau);
        let p2 = demo(Scheme::Mod1);
        let mut rng = DetRng::from_u64_seed(54);
        let kp1 = keygen(&p1, &mut rng).unwrap();
        let kp2 = keygen(&p2, &mut rng).unwrap();
        let msg: FieldVector = (0..p2.msg_len())
            .map(|_| p2.field().random(&mut rng))
            .collect();
        let ct = encrypt(&kp2.public, &msg, &mut rng).unwrap();
        assert!(decrypt(&kp1.secret, &ct).is_err());
    }

    #[test]
    fn wrong_message_length_is_rejected() {
        let params = demo(Scheme::Mod1);
        let mut rng = DetRng::from_u64_seed(55);
        let kp = keygen(&params, &mut rng).unwrap();
        let short = vec![params.field().zero(); 3];
        assert!(matches!(
            encrypt(&kp.public, &short, &mut rng),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
