//! Structural analysis of the public codes: the Gabidulin distinguisher, a
//! white-box replay of the Coggia–Couvreur chain construction against all
//! three schemes, generic decoding-cost estimates, and the registry of
//! suggested parameter sets.
//!
//! "White-box" means the checks are run with the secret key in hand: the
//! resistance claims are statements about dimensions and containments of
//! codes built from γ, g and h, which an attacker would have to recover but
//! which we can compute directly. That verifies the underlying mathematics
//! without implementing the full key-recovery attack.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::gabidulin::moore_matrix;
use crate::linalg::{rank_weight, vec_add, vec_frobenius, FieldMatrix, FieldVector, LinearCode};
use crate::schemes::{KeyPair, Scheme, SchemeParams, SecretKey};

// ---------------------------------------------------------------------------
// distinguisher
// ---------------------------------------------------------------------------

/// What the Frobenius-sum test says about a code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CodeVerdict {
    /// dim(C + C^[1]) ≤ dim C + 1 — the signature of a Gabidulin code.
    GabidulinLike,
    /// dim(C + C^[1]) is larger, as for a uniformly random code.
    RandomLike,
}

impl std::fmt::Display for CodeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CodeVerdict::GabidulinLike => "gabidulin-like",
            CodeVerdict::RandomLike => "random-like",
        })
    }
}

/// dim(C + C^[1] + … + C^[s]).
///
/// For a Gabidulin code this grows by one per step (k + s for k + s ≤ n);
/// for a random code it jumps to min((s+1)·dim C, n) with high probability,
/// which is what makes it a distinguisher.
pub fn frobenius_sum_dim(code: &LinearCode, s: usize) -> usize {
    let mut stack = code.basis().clone();
    for i in 1..=s {
        stack = stack.vstack(&code.basis().frobenius(i as i64));
    }
    stack.rank()
}

/// One-step Frobenius-sum test.
pub fn distinguish_gabidulin(code: &LinearCode) -> CodeVerdict {
    if frobenius_sum_dim(code, 1) <= code.dim() + 1 {
        CodeVerdict::GabidulinLike
    } else {
        CodeVerdict::RandomLike
    }
}

// ---------------------------------------------------------------------------
// white-box decomposition of the scrambler
// ---------------------------------------------------------------------------

/// The secret structure the Coggia–Couvreur attack recovers for λ = 2.
///
/// With V = ⟨α, β⟩ normalized to ⟨1, γ⟩ (γ = α⁻¹β), the scrambler satisfies
/// (α⁻¹P)ᵀ = P0 + γ·P1 with P0, P1 over the base field, and the public dual
/// is built from g = b·P0 and h = b·P1 where b generates the dual of the
/// secret Gabidulin code.
pub struct WhiteboxDecomposition {
    pub gamma: FieldElement,
    pub p0: FieldMatrix,
    pub p1: FieldMatrix,
    /// Generator vector of the dual code: G_{n,k}(a)^⊥ = span{b^[i]}.
    pub b: FieldVector,
    pub g: FieldVector,
    pub h: FieldVector,
}

impl WhiteboxDecomposition {
    /// span{g^[i] + γ·h^[i] : 0 ≤ i < dim} — the public dual of an unmasked
    /// key, phrased purely in recovered quantities.
    pub fn dual_span(&self, dim: usize) -> LinearCode {
        let rows: Vec<FieldVector> = (0..dim).map(|i| self.dual_row(i)).collect();
        LinearCode::from_generators(&FieldMatrix::from_rows(rows).expect("rows same length"))
    }

    fn dual_row(&self, i: usize) -> FieldVector {
        let gi = vec_frobenius(&self.g, i as i64);
        let hi = vec_frobenius(&self.h, i as i64);
        vec_add(&gi, &scale(&self.gamma, &hi))
    }

    /// The two-dimensional space the chain intersection collapses to on a
    /// vulnerable key: span{g^[r] + γ^[r]·h^[r], g^[r+1] + γ^[1]·h^[r+1]}.
    ///
    /// The exponents are forced by which chain term is binding: the last
    /// term pins the coefficient of h^[r] to γ^[r], the first term pins the
    /// coefficient of h^[r+1] to γ^[1].
    pub fn chain_target(&self, r: usize) -> LinearCode {
        let v1 = vec_add(
            &vec_frobenius(&self.g, r as i64),
            &scale(&self.gamma.frobenius(r as i64), &vec_frobenius(&self.h, r as i64)),
        );
        let v2 = vec_add(
            &vec_frobenius(&self.g, r as i64 + 1),
            &scale(&self.gamma.frobenius(1), &vec_frobenius(&self.h, r as i64 + 1)),
        );
        LinearCode::from_generators(&FieldMatrix::from_rows(vec![v1, v2]).expect("equal length"))
    }
}

fn scale(c: &FieldElement, v: &[FieldElement]) -> FieldVector {
    v.iter().map(|x| c * x).collect()
}

/// Express the scrambler of `sk` in the normalized two-element basis.
///
/// Only defined for λ = 2; the published attack (and hence the resistance
/// arguments replayed here) do not extend past that case.
pub fn whitebox_decompose(sk: &SecretKey) -> Result<WhiteboxDecomposition> {
    let basis = sk.v_basis.elements();
    if basis.len() != 2 {
        return Err(Error::Unsupported(
            "scrambler decomposition is defined for λ = 2 only".into(),
        ));
    }
    let alpha_inv = basis[0].inv()?;
    let gamma = &alpha_inv * &basis[1];
    let n = sk.params.n();

    // (α⁻¹P)ᵀ entry-wise; every entry of P lies in ⟨α, β⟩, so every entry
    // here lies in ⟨1, γ⟩ and splits uniquely as p0 + γ·p1 with p0, p1 ∈ F_q
    let field = sk.params.field();
    let mut p0 = FieldMatrix::zero(field, n, n);
    let mut p1 = FieldMatrix::zero(field, n, n);
    let gd = gamma.coeffs();
    let q = field.q();
    // γ ∉ F_q because α, β are independent over F_q, so some higher digit
    // of γ is nonzero and determines the ⟨1, γ⟩-coordinates digit-wise
    let pivot = (1..gd.len())
        .find(|&i| gd[i] != 0)
        .expect("γ has a component outside the base field");
    let pivot_inv = inv_mod(gd[pivot], q);
    for i in 0..n {
        for j in 0..n {
            let e = &alpha_inv * &sk.p[(j, i)];
            let ed = e.coeffs();
            let c1 = (ed[pivot] as u16 * pivot_inv as u16 % q as u16) as u8;
            let y = (c1 as u16 * gd[0] as u16 % q as u16) as u8;
            let c0 = ((ed[0] as u16 + q as u16 - y as u16) % q as u16) as u8;
            // the remaining digits must agree, otherwise the entry fell
            // outside ⟨1, γ⟩ and the key was not built by this scheme family
            for d in 1..ed.len() {
                if (c1 as u16 * gd[d] as u16) % q as u16 != ed[d] as u16 {
                    return Err(Error::NoSolution);
                }
            }
            p0[(i, j)] = field.from_base(c0);
            p1[(i, j)] = field.from_base(c1);
        }
    }

    let b = sk.code.dual_generator_vector()?;
    let g = p0.left_mul_vec(&b);
    let h = p1.left_mul_vec(&b);
    Ok(WhiteboxDecomposition {
        gamma,
        p0,
        p1,
        b,
        g,
        h,
    })
}

fn inv_mod(a: u8, q: u8) -> u8 {
    // tiny fields: scan (q ≤ 251)
    (1..q).find(|&x| (a as u16 * x as u16) % q as u16 == 1).expect("q prime, a ≠ 0")
}

/// Genericity condition for the chain collapse: the (n−k+2)-dimensional
/// Gabidulin-style codes generated by g and h intersect trivially (which also
/// needs both vectors to have rank weight at least n−k+2).
pub fn check_assumption1(w: &WhiteboxDecomposition, n: usize, k: usize) -> bool {
    let dim = n - k + 2;
    if rank_weight(&w.g) < dim || rank_weight(&w.h) < dim {
        return false;
    }
    let cg = LinearCode::from_generators(&moore_matrix(&w.g, dim));
    let ch = LinearCode::from_generators(&moore_matrix(&w.h, dim));
    match cg.intersection(&ch) {
        Ok(both) => both.dim() == 0,
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// the chain intersection and per-scheme resistance reports
// ---------------------------------------------------------------------------

/// ⋂_{i=0}^{depth} (D^[i] + D^[i+1]) for D = C_pub^⊥.
///
/// On a plain scrambled Gabidulin code with λ = 2 this collapses to the
/// two-dimensional space `WhiteboxDecomposition::chain_target(n−k−1)`;
/// the modified schemes are built so that it does not.
pub fn cc_chain_intersection(c_pub: &LinearCode, depth: usize) -> LinearCode {
    let d = c_pub.dual();
    let mut acc: Option<LinearCode> = None;
    for i in 0..=depth {
        let term = d
            .frobenius(i as i64)
            .sum(&d.frobenius(i as i64 + 1))
            .expect("same length and field");
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.intersection(&term).expect("same length and field"),
        });
    }
    acc.expect("at least one chain term")
}

/// Outcome of replaying the chain construction against a subcode key.
#[derive(Clone, Copy, Debug)]
pub struct Mod1Resistance {
    pub n: usize,
    /// dim(C_pub^⊥ + (C_pub^⊥)^[1]); resistance needs this to be n.
    pub dim_sum: usize,
    /// min(2(n−k+l), n) — what a random-like dual would give.
    pub expected: usize,
    /// 2(n−k+l) ≥ n; below this the sum cannot fill the space and the
    /// parameter shape itself is unsafe.
    pub shape_ok: bool,
    pub resistant: bool,
}

/// The shape condition above, exposed for parameter vetting.
pub fn mod1_shape_ok(n: usize, k: usize, l: usize) -> bool {
    2 * (n - k + l) >= n
}

/// Check that the first modification hides the Gabidulin structure: the dual
/// of the published subcode must look random under the Frobenius-sum test,
/// i.e. fill the whole space in one step.
pub fn verify_mod1_resistance(kp: &KeyPair) -> Result<Mod1Resistance> {
    let params = &kp.public.params;
    if params.scheme() != Scheme::Mod1 {
        return Err(Error::Unsupported(
            "the subcode-dual argument applies to the first modification".into(),
        ));
    }
    let (n, k, l) = (params.n(), params.k(), params.l());
    let c_pub = LinearCode::from_generators(&kp.public.g_pub);
    let d = c_pub.dual();
    let dim_sum = frobenius_sum_dim(&d, 1);
    let expected = n.min(2 * (n - k + l));
    let shape_ok = mod1_shape_ok(n, k, l);
    Ok(Mod1Resistance {
        n,
        dim_sum,
        expected,
        shape_ok,
        resistant: shape_ok && dim_sum == n,
    })
}

/// Outcome of replaying the chain construction against a masked key
/// (or an unmasked one, where it demonstrates the vulnerability instead).
#[derive(Clone, Copy, Debug)]
pub struct Mod2Resistance {
    pub chain_dim: usize,
    /// Whether the two-dimensional white-box target lies inside the chain
    /// intersection. Containment is exactly what the attack needs, so
    /// resistance means `false` here.
    pub contains_target: bool,
    /// Rank of the additive mask over F_{q^m} (0 for an unmasked key).
    pub mask_rank: usize,
    /// dim(C_pub^⊥ ∩ span{g^[i] + γh^[i]}) …
    pub subcode_dim: usize,
    /// … which must be at least (n−k) − rank(mask).
    pub subcode_floor: usize,
    pub resistant: bool,
}

/// Replay the chain attack white-box against a masked (mod2) or original
/// (loidreau) key. For mod2 the containment must fail; for an unmasked key
/// it holds, which is the vulnerability demonstration.
pub fn verify_mod2_resistance(kp: &KeyPair) -> Result<Mod2Resistance> {
    let params = &kp.public.params;
    if params.scheme() == Scheme::Mod1 {
        return Err(Error::Unsupported(
            "the masked-chain argument does not apply to the subcode variant".into(),
        ));
    }
    let (n, k) = (params.n(), params.k());
    let w = whitebox_decompose(&kp.secret)?;
    let r = n - k - 1;

    let c_pub = LinearCode::from_generators(&kp.public.g_pub);
    let chain = cc_chain_intersection(&c_pub, r);
    let target = w.chain_target(r);
    let contains_target = chain.contains_code(&target);

    // reconstruct the mask: S⁻¹·G_pub·P − G is exactly M (zero for loidreau)
    let unscrambled = &kp.public.g_pub * &kp.secret.p;
    let unmasked = match &kp.secret.s_inv {
        Some(s_inv) => s_inv * &unscrambled,
        None => unscrambled,
    };
    let mut mask = unmasked;
    let gen = kp.secret.code.generator();
    for i in 0..mask.rows() {
        for j in 0..mask.cols() {
            let v = &mask[(i, j)] - &gen[(i, j)];
            mask[(i, j)] = v;
        }
    }
    let mask_rank = mask.rank();

    // the public dual still shares a large subcode with the unmasked dual;
    // the mask can only cut its dimension by rank(M)
    let d_unmasked = w.dual_span(n - k);
    let subcode_dim = c_pub.dual().intersection(&d_unmasked)?.dim();
    let subcode_floor = (n - k).saturating_sub(mask_rank);

    Ok(Mod2Resistance {
        chain_dim: chain.dim(),
        contains_target,
        mask_rank,
        subcode_dim,
        subcode_floor,
        resistant: !contains_target,
    })
}

// ---------------------------------------------------------------------------
// generic decoding cost estimates
// ---------------------------------------------------------------------------

/// log₂ costs of the two generic rank-decoding attack families, with all
/// O-constants taken as 1.
#[derive(Clone, Copy, Debug)]
pub struct AttackCostReport {
    /// Support-enumeration branch: (n−k)³m³ · q^(t·⌊km/n⌋).
    pub log2_comb_support: f64,
    /// Extended-code branch: (n−k)³m³ · q^((t−1)·⌊(k+1)m/n⌋).
    pub log2_comb_extended: f64,
    /// min of the two combinatorial branches.
    pub log2_combinatorial: f64,
    /// Algebraic (Gröbner-style) cost t³k³ · q^(t·E), E = ⌈((t+1)(k+1)−(n+1))/t⌉,
    /// only defined when E ≤ k.
    pub log2_algebraic: Option<f64>,
    pub log2_min: f64,
}

/// The code dimensions an attacker actually faces: the subcode variant
/// publishes a (k−l)-row generator, the others a k-row one.
fn attacker_view(params: &SchemeParams) -> (usize, usize, usize, usize, f64) {
    let n = params.n();
    let k = params.msg_len();
    let m = params.m();
    let t = params.t();
    (n, k, m, t, (params.q() as f64).log2())
}

pub fn combinatorial_attack_cost(params: &SchemeParams) -> f64 {
    let r = attack_cost_report(params);
    r.log2_combinatorial
}

pub fn algebraic_attack_cost(params: &SchemeParams) -> Option<f64> {
    attack_cost_report(params).log2_algebraic
}

pub fn attack_cost_report(params: &SchemeParams) -> AttackCostReport {
    let (n, k, m, t, log2_q) = attacker_view(params);
    let poly = 3.0 * ((n - k) as f64).log2() + 3.0 * (m as f64).log2();
    let support = poly + (t * (k * m / n)) as f64 * log2_q;
    let extended = poly + ((t - 1) * ((k + 1) * m / n)) as f64 * log2_q;
    let comb = support.min(extended);

    let num = (t + 1) * (k + 1);
    let algebraic = if num > n {
        let e = (num - (n + 1)).div_ceil(t);
        (e <= k).then(|| {
            3.0 * (t as f64).log2() + 3.0 * (k as f64).log2() + (t * e) as f64 * log2_q
        })
    } else {
        // (t+1)(k+1) ≤ n: the system is underdetermined before any guess
        Some(3.0 * (t as f64).log2() + 3.0 * (k as f64).log2())
    };

    AttackCostReport {
        log2_comb_support: support,
        log2_comb_extended: extended,
        log2_combinatorial: comb,
        log2_algebraic: algebraic,
        log2_min: algebraic.map_or(comb, |a| comb.min(a)),
    }
}

// ---------------------------------------------------------------------------
// key sizes and rates
// ---------------------------------------------------------------------------

/// Published-key size in bytes under the fractional log₂(q)-bits-per-symbol
/// accounting, rounded to the nearest byte. This is the size the scheme is
/// graded on; the wire format pads each packed vector to whole bytes and so
/// may run slightly larger.
pub fn public_key_size_bytes(params: &SchemeParams) -> u64 {
    let (n, k, l, m) = (params.n(), params.k(), params.l(), params.m());
    let symbols = match params.scheme() {
        Scheme::Loidreau => k * n,
        Scheme::Mod1 => (k - l) * (n - k + l),
        Scheme::Mod2 => k * (n - k),
    } * m;
    let bits = symbols as f64 * (params.q() as f64).log2();
    (bits / 8.0).round() as u64
}

/// Plaintext symbols per codeword symbol: (k−l)/n for the subcode variant,
/// k/n otherwise.
pub fn information_rate(params: &SchemeParams) -> f64 {
    params.msg_len() as f64 / params.n() as f64
}

/// Probability that a random (k+l)-dimensional extension of a k-dimensional
/// code is a direct sum, i.e. that l uniformly drawn rows miss the span —
/// the chance the subcode key generator succeeds on the first try.
///
/// Evaluated exactly as ∏_{i=0}^{l−1} (q^{mn} − q^{m(k+i)})/(q^{mn} − q^{mi})
/// with big integers; floating point would underflow at q^{mn}.
pub fn trivial_intersection_prob_bound(
    n: usize,
    k: usize,
    l: usize,
    m: usize,
    q: u8,
) -> Result<f64> {
    if k + l >= n {
        return Err(Error::InvalidParams(format!(
            "k + l = {} must stay below n = {n}",
            k + l
        )));
    }
    if l == 0 {
        return Ok(1.0);
    }
    let qm = BigUint::from(q).pow((m) as u32);
    let q_mn = qm.pow(n as u32);
    let mut num = BigUint::from(1u8);
    let mut den = BigUint::from(1u8);
    for i in 0..l {
        num *= &q_mn - qm.pow((k + i) as u32);
        den *= &q_mn - qm.pow(i as u32);
    }
    // num/den ∈ (0, 1]; take 64 fractional bits and convert
    let scaled = (num << 64usize) / den;
    let scaled = u128::try_from(&scaled).map_err(|_| {
        Error::InvalidParams("probability out of range".into())
    })?;
    Ok(scaled as f64 / 2f64.powi(64))
}

// ---------------------------------------------------------------------------
// parameter registry
// ---------------------------------------------------------------------------

/// One suggested parameter set, with the key size and rate announced for it.
#[derive(Clone, Copy, Debug)]
pub struct ParamRegistryEntry {
    pub name: &'static str,
    pub scheme: Scheme,
    pub q: u8,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub lambda: usize,
    /// Error weight the set was announced with (derivable from the rest).
    pub t: usize,
    pub security_bits: u32,
    /// Announced public-key bytes; `public_key_size_bytes` must reproduce it.
    pub public_key_bytes: u64,
    /// Announced information rate, two decimals.
    pub information_rate: f64,
}

impl ParamRegistryEntry {
    pub fn params(&self) -> Result<SchemeParams> {
        SchemeParams::new(self.scheme, self.q, self.m, self.n, self.k, self.l, self.lambda)
    }
}

const fn entry(
    name: &'static str,
    scheme: Scheme,
    m: usize,
    n: usize,
    k: usize,
    l: usize,
    t: usize,
    security_bits: u32,
    public_key_bytes: u64,
    information_rate: f64,
) -> ParamRegistryEntry {
    ParamRegistryEntry {
        name,
        scheme,
        q: 3,
        m,
        n,
        k,
        l,
        lambda: 2,
        t,
        security_bits,
        public_key_bytes,
        information_rate,
    }
}

/// The nine suggested sets: three security levels per scheme, all over F_3
/// with λ = 2.
pub const REGISTRY: [ParamRegistryEntry; 9] = [
    entry("loidreau-128", Scheme::Loidreau, 37, 37, 17, 0, 5, 128, 4611, 0.46),
    entry("loidreau-192", Scheme::Loidreau, 45, 45, 21, 0, 6, 192, 8425, 0.47),
    entry("loidreau-256", Scheme::Loidreau, 52, 52, 24, 0, 7, 256, 12857, 0.46),
    entry("mod1-128", Scheme::Mod1, 42, 42, 23, 2, 4, 128, 3670, 0.50),
    entry("mod1-192", Scheme::Mod1, 48, 48, 25, 1, 5, 192, 5478, 0.50),
    entry("mod1-256", Scheme::Mod1, 56, 56, 29, 1, 6, 256, 8698, 0.50),
    entry("mod2-128", Scheme::Mod2, 44, 44, 30, 1, 3, 128, 3661, 0.68),
    entry("mod2-192", Scheme::Mod2, 51, 51, 33, 1, 4, 192, 6002, 0.65),
    entry("mod2-256", Scheme::Mod2, 57, 57, 35, 1, 5, 256, 8696, 0.61),
];

/// Key sizes from the designers' cross-system comparison, 128/192/256 bits.
/// The 128-bit subcode entry is listed there as 3693 bytes while the
/// per-parameter computation gives 3670; both constants are kept and the
/// parameter report labels the difference rather than guessing.
pub const COMPARISON_SIZES_MOD1: [u64; 3] = [3693, 5478, 8698];
pub const COMPARISON_SIZES_MOD2: [u64; 3] = [3661, 6002, 8696];

/// Small parameter sets for fast demonstrations and tests. Not suggested
/// sets; chosen so keygen/analysis run in milliseconds over F_2.
pub const DEMO_PRESETS: [(&str, Scheme, u8, usize, usize, usize, usize, usize); 3] = [
    ("loidreau-demo", Scheme::Loidreau, 2, 24, 24, 13, 0, 2),
    ("mod1-demo", Scheme::Mod1, 2, 28, 28, 15, 1, 2),
    ("mod2-demo", Scheme::Mod2, 2, 28, 28, 16, 1, 2),
];

/// Look up a named parameter set ("mod1-128", "loidreau-demo", …).
pub fn preset(name: &str) -> Result<SchemeParams> {
    for e in &REGISTRY {
        if e.name == name {
            return e.params();
        }
    }
    for &(pname, scheme, q, m, n, k, l, lambda) in &DEMO_PRESETS {
        if pname == name {
            return SchemeParams::new(scheme, q, m, n, k, l, lambda);
        }
    }
    let known: Vec<&str> = REGISTRY
        .iter()
        .map(|e| e.name)
        .chain(DEMO_PRESETS.iter().map(|d| d.0))
        .collect();
    Err(Error::InvalidParams(format!(
        "unknown preset {name:?}; known presets: {}",
        known.join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ExtField;
    use crate::gabidulin::{sample_generator_vector, GabidulinCode};
    use crate::rng::DetRng;
    use crate::schemes::keygen;

    fn gabidulin_code(q: u8, m: usize, n: usize, k: usize, seed: u64) -> LinearCode {
        let f = ExtField::new(q, m).unwrap();
        let mut rng = DetRng::from_u64_seed(seed);
        let a = sample_generator_vector(&f, n, &mut rng).unwrap();
        let code = GabidulinCode::new(a, k).unwrap();
        LinearCode::from_generators(code.generator())
    }

    #[test]
    fn frobenius_sum_grows_by_one_per_step_on_gabidulin() {
        let c = gabidulin_code(2, 12, 12, 4, 7);
        assert_eq!(frobenius_sum_dim(&c, 0), 4);
        assert_eq!(frobenius_sum_dim(&c, 1), 5);
        assert_eq!(frobenius_sum_dim(&c, 3), 7);
        assert_eq!(distinguish_gabidulin(&c), CodeVerdict::GabidulinLike);
    }

    #[test]
    fn random_codes_fill_two_steps() {
        let f = ExtField::new(2, 20).unwrap();
        let mut rng = DetRng::from_u64_seed(11);
        let mut random_like = 0;
        for _ in 0..20 {
            let gen = FieldMatrix::random(&f, 8, 20, &mut rng);
            let c = LinearCode::from_generators(&gen);
            assert_eq!(c.dim(), 8, "random 8×20 generator should be full rank");
            if frobenius_sum_dim(&c, 1) == 16 {
                random_like += 1;
            }
        }
        assert!(random_like >= 19, "only {random_like}/20 looked random");
    }

    #[test]
    fn decomposition_reconstructs_the_scrambler() {
        let params = preset("loidreau-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(42);
        let kp = keygen(&params, &mut rng).unwrap();
        let w = whitebox_decompose(&kp.secret).unwrap();

        let alpha = &kp.secret.v_basis.elements()[0];
        let n = params.n();
        let q = params.q() as usize;
        for i in 0..n {
            for j in 0..n {
                // entries of P0/P1 are base-field digits
                assert!(w.p0[(i, j)].coeffs().iter().skip(1).all(|&d| d == 0));
                assert!(w.p1[(i, j)].coeffs().iter().skip(1).all(|&d| d == 0));
                assert!((w.p0[(i, j)].coeffs()[0] as usize) < q);
                let rebuilt = &(&w.p0[(i, j)] + &(&w.gamma * &w.p1[(i, j)])) * alpha;
                assert_eq!(rebuilt, kp.secret.p[(j, i)]);
            }
        }
    }

    #[test]
    fn public_dual_is_spanned_by_g_gamma_h_rows() {
        let params = preset("loidreau-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(5);
        let kp = keygen(&params, &mut rng).unwrap();
        let w = whitebox_decompose(&kp.secret).unwrap();
        let c_pub = LinearCode::from_generators(&kp.public.g_pub);
        let span = w.dual_span(params.n() - params.k());
        assert_eq!(c_pub.dual(), span);
    }

    #[test]
    fn assumption1_is_impossible_at_the_boundary_and_generic_above_it() {
        // at k = n/2 + 1 two (n−k+2)-dimensional codes cannot avoid each
        // other (13 + 13 > 24), so the genericity condition never holds —
        // the chain still collapses there, it just needs no filtering
        let params = preset("loidreau-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(13);
        let kp = keygen(&params, &mut rng).unwrap();
        let w = whitebox_decompose(&kp.secret).unwrap();
        assert!(!check_assumption1(&w, params.n(), params.k()));

        // one dimension higher the count allows it and it holds generically
        let params = SchemeParams::new(Scheme::Loidreau, 2, 24, 24, 14, 0, 2).unwrap();
        let mut held = 0;
        for _ in 0..5 {
            let kp = keygen(&params, &mut rng).unwrap();
            let w = whitebox_decompose(&kp.secret).unwrap();
            if check_assumption1(&w, 24, 14) {
                held += 1;
            }
        }
        assert!(held >= 4, "assumption held only {held}/5 times");

        // degenerate case: g = h forces full intersection
        let kp = keygen(&params, &mut rng).unwrap();
        let mut w = whitebox_decompose(&kp.secret).unwrap();
        w.h = w.g.clone();
        assert!(!check_assumption1(&w, 24, 14));
    }

    #[test]
    fn chain_collapses_on_the_original_scheme() {
        let params = preset("loidreau-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(2024);
        for _ in 0..4 {
            let kp = keygen(&params, &mut rng).unwrap();
            let w = whitebox_decompose(&kp.secret).unwrap();
            let c_pub = LinearCode::from_generators(&kp.public.g_pub);
            let r = params.n() - params.k() - 1;
            let chain = cc_chain_intersection(&c_pub, r);
            assert_eq!(chain.dim(), 2);
            assert_eq!(chain, w.chain_target(r));
        }
    }

    #[test]
    fn chain_depth_zero_is_a_single_term() {
        let c = gabidulin_code(2, 16, 16, 6, 3);
        let d = c.dual();
        let expected = d.sum(&d.frobenius(1)).unwrap();
        assert_eq!(cc_chain_intersection(&c, 0), expected);
    }

    #[test]
    fn subcode_dual_fills_the_space() {
        let params = preset("mod1-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(77);
        for _ in 0..3 {
            let kp = keygen(&params, &mut rng).unwrap();
            let r = verify_mod1_resistance(&kp).unwrap();
            assert!(r.shape_ok);
            assert_eq!(r.dim_sum, params.n());
            assert_eq!(r.expected, params.n());
            assert!(r.resistant);
        }
        assert!(!mod1_shape_ok(28, 20, 1));
    }

    #[test]
    fn masked_chain_does_not_contain_the_target() {
        let params = preset("mod2-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(99);
        for _ in 0..3 {
            let kp = keygen(&params, &mut rng).unwrap();
            let r = verify_mod2_resistance(&kp).unwrap();
            assert!(!r.contains_target, "mask failed to break the chain");
            assert!(r.resistant);
            assert!(r.mask_rank >= 1 && r.mask_rank <= params.l());
            assert!(
                r.subcode_dim >= r.subcode_floor,
                "shared subcode dim {} below floor {}",
                r.subcode_dim,
                r.subcode_floor
            );
        }
    }

    #[test]
    fn unmasked_key_is_flagged_vulnerable_by_the_masked_check() {
        let params = preset("loidreau-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(4);
        let kp = keygen(&params, &mut rng).unwrap();
        let r = verify_mod2_resistance(&kp).unwrap();
        assert_eq!(r.mask_rank, 0);
        assert!(r.contains_target);
        assert!(!r.resistant);
        assert_eq!(r.subcode_dim, params.n() - params.k());
    }

    #[test]
    fn mod1_keys_are_rejected_by_the_masked_check() {
        let params = preset("mod1-demo").unwrap();
        let mut rng = DetRng::from_u64_seed(4);
        let kp = keygen(&params, &mut rng).unwrap();
        assert!(matches!(
            verify_mod2_resistance(&kp),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn cost_report_matches_hand_evaluation() {
        let params = preset("mod2-128").unwrap();
        assert_eq!((params.n(), params.k(), params.t()), (44, 30, 3));
        let r = attack_cost_report(&params);
        let lq = 3f64.log2();
        let poly = 3.0 * 14f64.log2() + 3.0 * 44f64.log2();
        assert!((r.log2_comb_support - (poly + 90.0 * lq)).abs() < 1e-9);
        assert!((r.log2_comb_extended - (poly + 62.0 * lq)).abs() < 1e-9);
        let alg = 3.0 * 3f64.log2() + 3.0 * 30f64.log2() + 81.0 * lq;
        assert!((r.log2_algebraic.unwrap() - alg).abs() < 1e-9);
        assert!((r.log2_min - r.log2_comb_extended).abs() < 1e-9);
        // the often-quoted approximations
        assert!((r.log2_comb_support - 170.4).abs() < 0.1);
        assert!((r.log2_comb_extended - 126.1).abs() < 0.1);
        assert!((r.log2_algebraic.unwrap() - 147.8).abs() < 0.1);
    }

    #[test]
    fn cost_floor_holds_across_the_registry() {
        for e in &REGISTRY {
            let params = e.params().unwrap();
            let r = attack_cost_report(&params);
            assert!(
                r.log2_min >= e.security_bits as f64 - 8.0,
                "{}: min cost {:.1} under {} − 8",
                e.name,
                r.log2_min,
                e.security_bits
            );
        }
    }

    #[test]
    fn registry_sizes_and_rates_reproduce() {
        for e in &REGISTRY {
            let params = e.params().unwrap();
            assert_eq!(params.t(), e.t, "{}: derived t", e.name);
            assert_eq!(
                public_key_size_bytes(&params),
                e.public_key_bytes,
                "{}: key size",
                e.name
            );
            let rate = information_rate(&params);
            assert!(
                ((rate * 100.0).round() / 100.0 - e.information_rate).abs() < 1e-9,
                "{}: rate {rate:.4} vs announced {}",
                e.name,
                e.information_rate
            );
        }
        // the comparison constants share all non-disputed values
        assert_eq!(&COMPARISON_SIZES_MOD1[1..], &[5478u64, 8698]);
        assert_eq!(COMPARISON_SIZES_MOD2, [3661u64, 6002, 8696]);
        assert_ne!(COMPARISON_SIZES_MOD1[0], REGISTRY[3].public_key_bytes);
    }

    #[test]
    fn demo_presets_validate_and_unknown_names_report() {
        for &(name, ..) in &DEMO_PRESETS {
            preset(name).unwrap();
        }
        let err = preset("mod3-512").unwrap_err();
        assert!(matches!(err, Error::InvalidParams(_)));
        assert!(err.to_string().contains("mod1-128"));
    }

    #[test]
    fn trivial_intersection_probability_evaluates_exactly() {
        assert_eq!(trivial_intersection_prob_bound(4, 2, 0, 4, 2).unwrap(), 1.0);
        let p = trivial_intersection_prob_bound(4, 1, 1, 4, 2).unwrap();
        let expect = (65536.0 - 16.0) / (65536.0 - 1.0);
        assert!((p - expect).abs() < 1e-12);
        assert!(trivial_intersection_prob_bound(4, 3, 1, 4, 2).is_err());
        // stays in (0, 1] and close to 1 at realistic sizes
        let big = trivial_intersection_prob_bound(42, 23, 2, 42, 3).unwrap();
        assert!(big > 0.999_999 && big <= 1.0);
    }

    #[test]
    fn t1_cost_is_polynomial_only_in_the_extended_branch() {
        // t = 1 zeroes the (t−1) exponent: the branch is purely polynomial
        let params = SchemeParams::new(Scheme::Loidreau, 2, 24, 24, 17, 0, 2).unwrap();
        assert_eq!(params.t(), 1);
        let poly = 3.0 * 7f64.log2() + 3.0 * 24f64.log2();
        let r = attack_cost_report(&params);
        assert!((r.log2_comb_extended - poly).abs() < 1e-9);
        assert!(r.log2_comb_support > poly);
    }
}
