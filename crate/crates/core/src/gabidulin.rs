//! Gabidulin codes: Moore-matrix construction, encoding, bounded rank-error
//! decoding, and the dual code's generator vector.
//!
//! The decoder is a Welch–Berlekamp-style reconstruction: find nonzero
//! linearized polynomials (V, N) with q-deg V ≤ t and q-deg N ≤ k+t−1 such
//! that V(yᵢ) = N(aᵢ) at every coordinate, then recover the message
//! polynomial as the exact left quotient of N by V. Any y within rank
//! distance t = ⌊(n−k)/2⌋ of a codeword decodes to it; everything else is
//! rejected by the final re-encode + rank-weight check, so a wrong answer is
//! never returned silently.

use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::linalg::{rank_weight, FieldMatrix, FieldVector, SAMPLING_CAP};
use crate::rng::DetRng;

/// k×n matrix whose row s is the coordinate-wise q^s power of a.
pub fn moore_matrix(a: &[FieldElement], k: usize) -> FieldMatrix {
    assert!(k >= 1 && !a.is_empty(), "moore_matrix: empty shape");
    let field = a[0].field().clone();
    let n = a.len();
    let mut rows: Vec<FieldVector> = Vec::with_capacity(k);
    rows.push(a.to_vec());
    for s in 1..k {
        let prev = &rows[s - 1];
        rows.push(prev.iter().map(|e| e.frobenius(1)).collect());
    }
    FieldMatrix::from_fn(&field, k, n, |i, j| rows[i][j].clone())
}

/// Random length-n vector with rank weight exactly n (needs n ≤ m).
pub fn sample_generator_vector(
    field: &ExtField,
    n: usize,
    rng: &mut DetRng,
) -> Result<FieldVector> {
    if n > field.m() {
        return Err(Error::InvalidParams(
            "generator vector needs n ≤ m".into(),
        ));
    }
    for _ in 0..SAMPLING_CAP {
        let a: FieldVector = (0..n).map(|_| field.random(rng)).collect();
        if rank_weight(&a) == n {
            return Ok(a);
        }
    }
    Err(Error::SamplingFailure(SAMPLING_CAP))
}

#[derive(Clone, Debug)]
pub struct GabidulinCode {
    a: FieldVector,
    k: usize,
    gen: FieldMatrix,
}

impl GabidulinCode {
    pub fn new(a: FieldVector, k: usize) -> Result<GabidulinCode> {
        if a.is_empty() {
            return Err(Error::InvalidParams("empty generator vector".into()));
        }
        let n = a.len();
        let m = a[0].field().m();
        if n > m {
            return Err(Error::InvalidParams(format!("n = {n} exceeds m = {m}")));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!("k = {k} out of 1..={n}")));
        }
        if rank_weight(&a) != n {
            return Err(Error::InvalidParams(
                "generator vector must have full rank weight".into(),
            ));
        }
        let gen = moore_matrix(&a, k);
        Ok(GabidulinCode { a, k, gen })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &ExtField {
        self.a[0].field()
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.gen
    }

    /// Unique-decoding radius ⌊(n−k)/2⌋.
    pub fn radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    pub fn encode(&self, msg: &[FieldElement]) -> Result<FieldVector> {
        if msg.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "message length {} ≠ k = {}",
                msg.len(),
                self.k
            )));
        }
        Ok(self.gen.left_mul_vec(msg))
    }

    /// Decode y to the unique codeword within rank distance ⌊(n−k)/2⌋, if one
    /// exists; returns (codeword, error, message).
    pub fn decode(&self, y: &[FieldElement]) -> Result<(FieldVector, FieldVector, FieldVector)> {
        if y.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "received word length {} ≠ n = {}",
                y.len(),
                self.n()
            )));
        }
        let field = self.field().clone();
        let (n, k, t) = (self.n(), self.k, self.radius());

        // Interpolation system: for each coordinate i,
        //   Σ_j v_j·yᵢ^[j]  −  Σ_d n_d·aᵢ^[d]  =  0,
        // unknowns (v_0..v_t, n_0..n_{k+t−1}) over F_{q^m}.
        let vs = t + 1;
        let ns = k + t;
        let sys = FieldMatrix::from_fn(&field, n, vs + ns, |i, col| {
            if col < vs {
                y[i].frobenius(col as i64)
            } else {
                -&self.a[i].frobenius((col - vs) as i64)
            }
        });
        let kernel = sys.kernel_basis();
        if kernel.rows() == 0 {
            return Err(Error::DecodingFailure);
        }
        let sol = kernel.row(0);
        let v_coeffs = trim_lin(&sol[..vs]);
        let n_coeffs = trim_lin(&sol[vs..]);
        if v_coeffs.is_empty() {
            // V = 0 forces N(aᵢ) = 0 for all i, impossible for nonzero N with
            // q-deg ≤ k+t−1 < n over a full-rank-weight a; nothing decodable.
            return Err(Error::DecodingFailure);
        }

        // message polynomial: exact left quotient N = V ∘ f
        let Some(f) = lin_left_divide(&v_coeffs, &n_coeffs) else {
            return Err(Error::DecodingFailure);
        };
        if f.len() > k {
            return Err(Error::DecodingFailure);
        }
        let mut msg = f;
        msg.resize(k, field.zero());

        let c = self.encode(&msg)?;
        let e: FieldVector = y.iter().zip(&c).map(|(yi, ci)| yi - ci).collect();
        if rank_weight(&e) > t {
            return Err(Error::DecodingFailure);
        }
        Ok((c, e, msg))
    }

    /// Vector b' whose (n−k)-row Moore matrix generates the dual code.
    ///
    /// b spans the 1-dim kernel of the (n−1)-row Moore matrix of a; the
    /// right Frobenius twist is (k−n+1) mod m, confirmed by an orthogonality
    /// post-check (with a scan over all exponents as a safety net).
    pub fn dual_generator_vector(&self) -> Result<FieldVector> {
        let (n, k, m) = (self.n(), self.k, self.field().m());
        if k == n {
            return Err(Error::InvalidParams(
                "full-dimension code has a zero dual".into(),
            ));
        }
        let kern = moore_matrix(&self.a, n - 1).kernel_basis();
        assert_eq!(kern.rows(), 1, "Moore matrix of full-weight a is MRD");
        let b = kern.row_vec(0);

        let primary = (k as i64 - n as i64 + 1).rem_euclid(m as i64);
        let mut exponents: Vec<i64> = vec![primary];
        exponents.extend((0..m as i64).filter(|&e| e != primary));
        for e in exponents {
            let b_twist = crate::linalg::vec_frobenius(&b, e);
            if self.orthogonal_to(&b_twist) {
                return Ok(b_twist);
            }
        }
        unreachable!("no Frobenius twist of the kernel vector is orthogonal");
    }

    fn orthogonal_to(&self, b: &[FieldElement]) -> bool {
        let h = moore_matrix(b, self.n() - self.k);
        let prod = &h * &self.gen.transpose();
        prod.is_zero()
    }
}

/// Drop leading (high-degree) zero coefficients of a linearized polynomial.
fn trim_lin(coeffs: &[FieldElement]) -> FieldVector {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Evaluate Σ cᵢ·x^[i].
#[cfg(test)]
fn lin_eval(coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    let mut xq = x.clone();
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            xq = xq.frobenius(1);
        }
        acc.mul_acc(c, &xq);
    }
    acc
}

/// Coefficients of V ∘ F (composition of linearized polynomials):
/// (V∘F)_d = Σ_{i+j=d} vᵢ·fⱼ^[i].
fn lin_compose(v: &[FieldElement], f: &[FieldElement]) -> FieldVector {
    if v.is_empty() || f.is_empty() {
        return Vec::new();
    }
    let field = v[0].field().clone();
    let mut out = vec![field.zero(); v.len() + f.len() - 1];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, fj) in f.iter().enumerate() {
            let term = fj.frobenius(i as i64);
            out[i + j].mul_acc(vi, &term);
        }
    }
    out
}

/// Exact left division: the F with N = V ∘ F, or None when V does not divide
/// N on the left. V must be trimmed and nonzero; N trimmed.
fn lin_left_divide(v: &[FieldElement], n: &[FieldElement]) -> Option<FieldVector> {
    let field = v.last().expect("divisor is nonzero").field().clone();
    if n.is_empty() {
        return Some(Vec::new());
    }
    let tau = v.len() - 1;
    if n.len() - 1 < tau {
        return None;
    }
    let deg_f = n.len() - 1 - tau;
    let v_top_inv = v[tau].inv().ok()?;
    let mut f = vec![field.zero(); deg_f + 1];
    for j in (0..=deg_f).rev() {
        let d = j + tau;
        // N_d = Σ_i vᵢ·f_{d−i}^[i]; isolate the i = τ term
        let mut rhs = n[d].clone();
        for (i, vi) in v.iter().enumerate().take(tau) {
            let idx = d - i;
            if idx > deg_f || f[idx].is_zero() {
                continue;
            }
            let term = f[idx].frobenius(i as i64);
            rhs.mul_sub(vi, &term);
        }
        f[j] = (&rhs * &v_top_inv).frobenius(-(tau as i64));
    }
    // the quotient must reproduce N exactly (checks the sub-τ coefficients)
    if lin_compose(v, &f) == n.to_vec() {
        Some(f)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{sample_subspace, LinearCode};

    fn f16() -> ExtField {
        ExtField::new(2, 4).unwrap()
    }

    /// Error vector of exact rank weight t: support basis times random full
    /// rank digit matrix.
    fn random_error(field: &ExtField, n: usize, t: usize, rng: &mut DetRng) -> FieldVector {
        loop {
            let support = sample_subspace(field, t, rng).unwrap();
            let e: FieldVector = (0..n).map(|_| support.random_member(rng)).collect();
            if rank_weight(&e) == t {
                return e;
            }
        }
    }

    #[test]
    fn moore_with_one_row_is_the_vector() {
        let f = f16();
        let a = vec![f.one(), f.alpha()];
        let m = moore_matrix(&a, 1);
        assert_eq!(m.row(0), &a[..]);
    }

    #[test]
    fn moore_rows_are_frobenius_powers() {
        let f = f16();
        let al = f.alpha();
        let a = vec![f.one(), al.clone(), &al * &al];
        let m = moore_matrix(&a, 2);
        // second row: squares (q = 2); α^4 = α + 1
        assert_eq!(m.row(1)[0], f.one());
        assert_eq!(m.row(1)[1], al.pow(2));
        assert_eq!(m.row(1)[2], f.element(&[1, 1]).unwrap());
    }

    #[test]
    fn moore_matrix_of_full_weight_vector_has_full_rank() {
        let f = ExtField::new(3, 10).unwrap();
        let mut rng = DetRng::from_u64_seed(30);
        let a = sample_generator_vector(&f, 8, &mut rng).unwrap();
        for k in [1, 3, 8] {
            assert_eq!(moore_matrix(&a, k).rank(), k);
        }
    }

    #[test]
    fn code_construction_validates() {
        let f = f16();
        let a = vec![f.one(), f.alpha()];
        assert!(GabidulinCode::new(a.clone(), 0).is_err());
        assert!(GabidulinCode::new(a.clone(), 3).is_err());
        // dependent coordinates: rank weight < n
        let bad = vec![f.one(), f.one()];
        assert!(GabidulinCode::new(bad, 1).is_err());
        // n > m
        let f2 = ExtField::new(2, 2).unwrap();
        let too_long = vec![f2.one(), f2.alpha(), &f2.one() + &f2.alpha()];
        assert!(GabidulinCode::new(too_long, 1).is_err());
    }

    #[test]
    fn encode_selects_rows() {
        let f = ExtField::new(2, 8).unwrap();
        let mut rng = DetRng::from_u64_seed(31);
        let a = sample_generator_vector(&f, 6, &mut rng).unwrap();
        let code = GabidulinCode::new(a.clone(), 3).unwrap();
        let mut e1 = vec![f.zero(); 3];
        e1[0] = f.one();
        assert_eq!(code.encode(&e1).unwrap(), a);
        let zero = vec![f.zero(); 3];
        assert!(code.encode(&zero).unwrap().iter().all(|e| e.is_zero()));
        assert!(code.encode(&[f.one()]).is_err());
    }

    #[test]
    fn decode_codeword_returns_zero_error() {
        let f = ExtField::new(3, 10).unwrap();
        let mut rng = DetRng::from_u64_seed(32);
        let a = sample_generator_vector(&f, 10, &mut rng).unwrap();
        let code = GabidulinCode::new(a, 4).unwrap();
        let msg: FieldVector = (0..4).map(|_| f.random(&mut rng)).collect();
        let c = code.encode(&msg).unwrap();
        let (c2, e, msg2) = code.decode(&c).unwrap();
        assert_eq!(c2, c);
        assert!(e.iter().all(|x| x.is_zero()));
        assert_eq!(msg2, msg);
    }

    #[test]
    fn decode_corrects_every_weight_up_to_radius() {
        let f = ExtField::new(3, 12).unwrap();
        let mut rng = DetRng::from_u64_seed(33);
        let a = sample_generator_vector(&f, 12, &mut rng).unwrap();
        let code = GabidulinCode::new(a, 4).unwrap(); // radius 4
        for t in 1..=code.radius() {
            for _ in 0..5 {
                let msg: FieldVector = (0..4).map(|_| f.random(&mut rng)).collect();
                let c = code.encode(&msg).unwrap();
                let e = random_error(&f, 12, t, &mut rng);
                let y: FieldVector = c.iter().zip(&e).map(|(a, b)| a + b).collect();
                let (c2, e2, msg2) = code.decode(&y).unwrap();
                assert_eq!(c2, c, "t = {t}");
                assert_eq!(e2, e);
                assert_eq!(msg2, msg);
            }
        }
    }

    #[test]
    fn decode_rejects_oversized_errors_or_verifies() {
        // beyond the radius there is no guarantee of a nearby codeword; the
        // decoder must either fail or return something genuinely in range
        let f = ExtField::new(2, 12).unwrap();
        let mut rng = DetRng::from_u64_seed(34);
        let a = sample_generator_vector(&f, 10, &mut rng).unwrap();
        let code = GabidulinCode::new(a, 4).unwrap(); // radius 3
        let mut failures = 0;
        for _ in 0..20 {
            let msg: FieldVector = (0..4).map(|_| f.random(&mut rng)).collect();
            let c = code.encode(&msg).unwrap();
            let e = random_error(&f, 10, 5, &mut rng);
            let y: FieldVector = c.iter().zip(&e).map(|(a, b)| a + b).collect();
            match code.decode(&y) {
                Err(Error::DecodingFailure) => failures += 1,
                Ok((c2, e2, _)) => {
                    assert!(rank_weight(&e2) <= code.radius());
                    let recomputed: FieldVector =
                        y.iter().zip(&c2).map(|(a, b)| a - b).collect();
                    assert_eq!(recomputed, e2);
                }
                Err(other) => panic!("unexpected error {other:?}"),
            }
        }
        assert!(failures > 0, "rank-5 errors on a radius-3 code never failed");
    }

    #[test]
    fn decode_works_when_n_is_less_than_m() {
        let f = ExtField::new(2, 20).unwrap();
        let mut rng = DetRng::from_u64_seed(35);
        let a = sample_generator_vector(&f, 16, &mut rng).unwrap();
        let code = GabidulinCode::new(a, 8).unwrap(); // radius 4
        let msg: FieldVector = (0..8).map(|_| f.random(&mut rng)).collect();
        let c = code.encode(&msg).unwrap();
        let e = random_error(&f, 16, 4, &mut rng);
        let y: FieldVector = c.iter().zip(&e).map(|(a, b)| a + b).collect();
        let (_, _, msg2) = code.decode(&y).unwrap();
        assert_eq!(msg2, msg);
    }

    #[test]
    fn minimum_distance_on_exhaustive_tiny_code() {
        // q=2, m=n=4, k=2: all 255 nonzero codewords have rank weight ≥ 3
        let f = f16();
        let a: FieldVector = vec![
            f.one(),
            f.alpha(),
            f.alpha().pow(2),
            f.alpha().pow(3),
        ];
        let code = GabidulinCode::new(a, 2).unwrap();
        let mut min_wt = usize::MAX;
        for m0 in f.iter_elements() {
            for m1 in f.iter_elements() {
                if m0.is_zero() && m1.is_zero() {
                    continue;
                }
                let c = code.encode(&[m0.clone(), m1.clone()]).unwrap();
                min_wt = min_wt.min(rank_weight(&c));
            }
        }
        assert_eq!(min_wt, 3); // n − k + 1
    }

    #[test]
    fn frobenius_power_sum_climbs_one_dimension_per_step() {
        let f = ExtField::new(2, 10).unwrap();
        let mut rng = DetRng::from_u64_seed(36);
        let a = sample_generator_vector(&f, 9, &mut rng).unwrap();
        let code = GabidulinCode::new(a.clone(), 3).unwrap();
        let c = LinearCode::from_generators(code.generator());
        let mut acc = c.clone();
        for s in 1..=4 {
            acc = acc.sum(&c.frobenius(s as i64)).unwrap();
            // the sum telescopes to the Gabidulin code of dimension k+s
            let bigger = LinearCode::from_generators(&moore_matrix(&a, 3 + s));
            assert_eq!(acc, bigger, "s = {s}");
        }
    }

    #[test]
    fn dual_generator_is_orthogonal_and_full_weight() {
        let f = ExtField::new(3, 9).unwrap();
        let mut rng = DetRng::from_u64_seed(37);
        let a = sample_generator_vector(&f, 9, &mut rng).unwrap();
        for k in [1, 4, 8] {
            let code = GabidulinCode::new(a.clone(), k).unwrap();
            let b = code.dual_generator_vector().unwrap();
            assert_eq!(rank_weight(&b), 9, "k = {k}");
            let h = moore_matrix(&b, 9 - k);
            assert!((&h * &code.generator().transpose()).is_zero());
            // spans exactly the dual
            let dual = LinearCode::from_generators(code.generator()).dual();
            assert_eq!(LinearCode::from_generators(&h), dual);
        }
    }

    #[test]
    fn dual_of_full_dimension_code_errors() {
        let f = f16();
        let a = vec![f.one(), f.alpha()];
        let code = GabidulinCode::new(a, 2).unwrap();
        assert!(code.dual_generator_vector().is_err());
    }

    #[test]
    fn linearized_helpers_agree() {
        let f = ExtField::new(3, 7).unwrap();
        let mut rng = DetRng::from_u64_seed(38);
        for _ in 0..10 {
            let v: FieldVector = (0..3).map(|_| f.random(&mut rng)).collect();
            let g: FieldVector = (0..4).map(|_| f.random(&mut rng)).collect();
            let v = trim_lin(&v);
            let g = trim_lin(&g);
            if v.is_empty() || g.is_empty() {
                continue;
            }
            let comp = lin_compose(&v, &g);
            // (V∘G)(x) = V(G(x)) pointwise
            for _ in 0..5 {
                let x = f.random(&mut rng);
                assert_eq!(lin_eval(&comp, &x), lin_eval(&v, &lin_eval(&g, &x)));
            }
            // division inverts composition
            let quotient = lin_left_divide(&v, &comp).expect("exact quotient exists");
            assert_eq!(quotient, g);
        }
    }

    #[test]
    fn left_division_detects_non_divisibility() {
        let f = ExtField::new(2, 6).unwrap();
        let v = vec![f.one(), f.one()]; // x + x^2
        let n = vec![f.alpha(), f.zero(), f.one()];
        // generic N of q-degree 2 is not a left multiple of V
        if let Some(q) = lin_left_divide(&v, &n) {
            assert_eq!(lin_compose(&v, &q), n);
        }
    }
}
