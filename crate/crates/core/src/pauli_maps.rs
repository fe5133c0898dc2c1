//! Pauli diagonal maps on N-qubit systems: multiplier tensors, spectral
//! transforms, CP/coCP/PPT predicates, exact Choi matrices with Bell-basis
//! eigen-verification, realignment sums, Schur composition, and the named
//! one-qubit map families.

use crate::exact_arith::{GaussRat, Rat, RatMatrix};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The spectral transform for the Choi matrix: spec(C) = D^{⊗N}μ.
pub fn d_matrix() -> RatMatrix {
    RatMatrix::from_ints(
        4,
        4,
        &[1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1],
        2,
    )
}

/// The spectral transform for the partially transposed Choi matrix.
pub fn d_tilde_matrix() -> RatMatrix {
    RatMatrix::from_ints(
        4,
        4,
        &[1, -1, -1, -1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1],
        2,
    )
}

/// K = D̃·Dᵀ, the involution linking the two spectra: q = K^{⊗N}p.
pub fn k_matrix() -> RatMatrix {
    RatMatrix::from_ints(
        4,
        4,
        &[-1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1],
        2,
    )
}

/// The Pauli basis of M₂ (index 1..4): identity, then the three Pauli
/// matrices in the fixed order used throughout.
pub fn sigma(i: usize) -> CMatrix {
    let g = |re: i64, im: i64| GaussRat::from_ints(re, im);
    let entries = match i {
        1 => [g(1, 0), g(0, 0), g(0, 0), g(1, 0)],
        2 => [g(0, 0), g(1, 0), g(1, 0), g(0, 0)],
        3 => [g(1, 0), g(0, 0), g(0, 0), g(-1, 0)],
        4 => [g(0, 0), g(0, -1), g(0, 1), g(0, 0)],
        _ => panic!("Pauli index out of range: {i}"),
    };
    CMatrix::new(2, 2, entries.to_vec())
}

/// Unnormalized Bell columns (√2 × the columns of the first Bell-basis
/// unitary); these are the Choi eigenvectors in the fixed spectrum order.
pub fn bell_columns() -> [Vec<Rat>; 4] {
    let v = |a: i64, b: i64, c: i64, d: i64| {
        vec![
            Rat::from_integer(a.into()),
            Rat::from_integer(b.into()),
            Rat::from_integer(c.into()),
            Rat::from_integer(d.into()),
        ]
    };
    [v(1, 0, 0, 1), v(0, 1, 1, 0), v(1, 0, 0, -1), v(0, 1, -1, 0)]
}

/// Unnormalized columns of the second Bell-basis unitary; eigenvectors of the
/// partially transposed Choi matrix in the fixed order of the second spectrum.
pub fn bell_columns_tilde() -> [Vec<Rat>; 4] {
    let v = |a: i64, b: i64, c: i64, d: i64| {
        vec![
            Rat::from_integer(a.into()),
            Rat::from_integer(b.into()),
            Rat::from_integer(c.into()),
            Rat::from_integer(d.into()),
        ]
    };
    [v(0, 1, -1, 0), v(1, 0, 0, -1), v(0, 1, 1, 0), v(1, 0, 0, 1)]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PauliMapError {
    #[error("coefficient count {got} does not match 4^{n}")]
    CoeffCount { n: usize, got: usize },
    #[error("tensor orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("realignment sum requires a unital trace-preserving map (μ at index (1,…,1) must be 1)")]
    NotNormalized,
}

/// Multiplier tensor μ ∈ (Q⁴)^{⊗N}, flattened lexicographically with the
/// first slot index most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierTensor {
    n: usize,
    coeffs: Vec<Rat>,
}

impl MultiplierTensor {
    pub fn new(n: usize, coeffs: Vec<Rat>) -> Result<Self, PauliMapError> {
        if n < 1 || coeffs.len() != 1usize << (2 * n) {
            return Err(PauliMapError::CoeffCount { n, got: coeffs.len() });
        }
        Ok(MultiplierTensor { n, coeffs })
    }

    pub fn qubit(c0: Rat, c1: Rat, c2: Rat, c3: Rat) -> Self {
        MultiplierTensor { n: 1, coeffs: vec![c0, c1, c2, c3] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Tensor product of multipliers (orders add).
    pub fn tensor(&self, other: &MultiplierTensor) -> MultiplierTensor {
        MultiplierTensor {
            n: self.n + other.n,
            coeffs: crate::exact_arith::kron_vec(&self.coeffs, &other.coeffs),
        }
    }

    /// The 4×4 coefficient matrix view of an order-2 multiplier.
    pub fn as_matrix(&self) -> RatMatrix {
        assert_eq!(self.n, 2, "matrix view requires order 2");
        RatMatrix::new(4, 4, self.coeffs.clone())
    }

    pub fn from_matrix(m: &RatMatrix) -> Self {
        assert!(m.rows() == 4 && m.cols() == 4);
        MultiplierTensor { n: 2, coeffs: m.entries().to_vec() }
    }
}

impl Serialize for MultiplierTensor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MultiplierTensor", 2)?;
        st.serialize_field("n", &self.n)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(crate::exact_arith::rat_to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for MultiplierTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| crate::exact_arith::parse_rat(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        MultiplierTensor::new(raw.n, coeffs).map_err(D::Error::custom)
    }
}

/// The ordered spectra (p, q) of the Choi matrix and its partial transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumPair {
    n: usize,
    p: Vec<Rat>,
    q: Vec<Rat>,
}

impl SpectrumPair {
    /// Builds a pair, verifying the defining relation q = K^{⊗N}p exactly.
    pub fn new(n: usize, p: Vec<Rat>, q: Vec<Rat>) -> Self {
        assert_eq!(p.len(), 1usize << (2 * n));
        assert_eq!(q.len(), p.len());
        let kq = k_matrix().kron_pow(n).mul_vec(&p);
        assert_eq!(kq, q, "spectrum pair violates q = K^{{⊗N}}p");
        SpectrumPair { n, p, q }
    }

    /// Builds from p alone, deriving q = K^{⊗N}p.
    pub fn from_p(n: usize, p: Vec<Rat>) -> Self {
        assert_eq!(p.len(), 1usize << (2 * n));
        let q = k_matrix().kron_pow(n).mul_vec(&p);
        SpectrumPair { n, p, q }
    }

    /// Constructs without re-checking the invariant; for callers that already
    /// maintain it (e.g. the symmetry action, which preserves it exactly).
    pub(crate) fn from_parts_unchecked(n: usize, p: Vec<Rat>, q: Vec<Rat>) -> Self {
        SpectrumPair { n, p, q }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &[Rat] {
        &self.p
    }

    pub fn q(&self) -> &[Rat] {
        &self.q
    }

    /// Both spectra entrywise nonnegative (membership in the PPT-spectra cone).
    pub fn in_cone(&self) -> bool {
        self.p.iter().chain(self.q.iter()).all(|v| !v.is_negative())
    }
}

/// p = D^{⊗N}μ and q = D̃^{⊗N}μ.
pub fn mult_to_spectrum(mu: &MultiplierTensor) -> SpectrumPair {
    let n = mu.n();
    let p = d_matrix().kron_pow(n).mul_vec(mu.coeffs());
    let q = d_tilde_matrix().kron_pow(n).mul_vec(mu.coeffs());
    SpectrumPair { n, p, q }
}

/// μ = (Dᵀ)^{⊗N}p; inverse of `mult_to_spectrum` by orthogonality of D.
pub fn spectrum_to_mult(pair: &SpectrumPair) -> MultiplierTensor {
    let coeffs = d_matrix().transpose().kron_pow(pair.n()).mul_vec(pair.p());
    MultiplierTensor { n: pair.n(), coeffs }
}

/// Completely positive ⟺ D^{⊗N}μ entrywise ≥ 0.
pub fn is_cp(mu: &MultiplierTensor) -> bool {
    mult_to_spectrum(mu).p().iter().all(|v| !v.is_negative())
}

/// Completely copositive ⟺ D̃^{⊗N}μ entrywise ≥ 0.
pub fn is_cocp(mu: &MultiplierTensor) -> bool {
    mult_to_spectrum(mu).q().iter().all(|v| !v.is_negative())
}

/// PPT = completely positive and completely copositive.
pub fn is_ppt(mu: &MultiplierTensor) -> bool {
    let pair = mult_to_spectrum(mu);
    pair.in_cone()
}

/// Dense complex (Gaussian-rational) matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussRat>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussRat>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        CMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, entries: vec![GaussRat::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.entries[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut GaussRat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        *out.get_mut(i * other.rows + k, j * other.cols + l) = a * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &CMatrix, factor: &Rat) {
        assert!(self.rows == other.rows && self.cols == other.cols);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            let scaled = b.scale(factor);
            *a = &*a + &scaled;
        }
    }

    /// Applies the matrix to a real rational vector.
    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<GaussRat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussRat::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        let term = self.get(i, j).scale(&v[j]);
                        acc = &acc + &term;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if *self.get(i, j) != self.get(j, i).conj() {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self) -> GaussRat {
        assert_eq!(self.rows, self.cols);
        let mut acc = GaussRat::zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = CMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &a * other.get(k, j);
                    *out.get_mut(i, j) = &*out.get(i, j) + &prod;
                }
            }
        }
        out
    }
}

/// Exact Choi matrix of the map (or, with `transposed`, of its composition
/// with the slotwise transpose), in the slot-reshuffled tensor order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiMatrix {
    pub n: usize,
    pub entries: CMatrix,
    pub transposed: bool,
}

/// C = Σ μ/2^N · (σ⊗σᵀ)⊗…⊗(σ⊗σᵀ); with `transposed` the σ⊗σ form.
pub fn build_choi(mu: &MultiplierTensor, transposed: bool) -> ChoiMatrix {
    let n = mu.n();
    let blocks: Vec<CMatrix> = (1..=4)
        .map(|i| {
            let s = sigma(i);
            if transposed {
                s.kron(&s)
            } else {
                let st = s.transpose();
                s.kron(&st)
            }
        })
        .collect();
    let dim = 1usize << (2 * n);
    let weight = Rat::new(1.into(), (1i64 << n).into());
    let mut c = CMatrix::zero(dim, dim);
    for (flat, coeff) in mu.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        // decode the flat index into per-slot Pauli indices, first slot most
        // significant
        let mut term: Option<CMatrix> = None;
        for slot in 0..n {
            let digit = (flat >> (2 * (n - 1 - slot))) & 3;
            let b = &blocks[digit];
            term = Some(match term {
                None => b.clone(),
                Some(t) => t.kron(b),
            });
        }
        c.add_scaled(&term.unwrap(), &(coeff * &weight));
    }
    debug_assert!(c.is_hermitian());
    ChoiMatrix { n, entries: c, transposed }
}

/// Verifies the eigen-equations C·v_k = p_k·v_k for the tensor products of
/// unnormalized Bell columns, for both Choi matrices. This is the exact
/// oracle pinning the spectrum ordering of `mult_to_spectrum`.
pub fn verify_spectrum(mu: &MultiplierTensor) -> bool {
    let n = mu.n();
    assert!(n <= 3, "verify_spectrum supports N ≤ 3");
    let pair = mult_to_spectrum(mu);
    let checks = [
        (build_choi(mu, false), bell_columns(), pair.p()),
        (build_choi(mu, true), bell_columns_tilde(), pair.q()),
    ];
    for (choi, cols, spectrum) in checks {
        for flat in 0..1usize << (2 * n) {
            let mut v: Option<Vec<Rat>> = None;
            for slot in 0..n {
                let digit = (flat >> (2 * (n - 1 - slot))) & 3;
                v = Some(match v {
                    None => cols[digit].clone(),
                    Some(prev) => crate::exact_arith::kron_vec(&prev, &cols[digit]),
                });
            }
            let v = v.unwrap();
            let cv = choi.entries.mul_rat_vec(&v);
            let eig = &spectrum[flat];
            for (lhs, comp) in cv.iter().zip(&v) {
                if !lhs.is_real() || lhs.re != eig * comp {
                    return false;
                }
            }
        }
    }
    true
}

/// Σ|μ| over all coefficients; requires the unital trace-preserving
/// normalization μ₁…₁ = 1. Sums above 2^N witness a non-entanglement-breaking
/// map.
pub fn realignment_sum(mu: &MultiplierTensor) -> Result<Rat, PauliMapError> {
    if !mu.coeffs()[0].is_one() {
        return Err(PauliMapError::NotNormalized);
    }
    Ok(mu.coeffs().iter().map(|c| c.abs()).sum())
}

/// Entrywise (Schur) product; composition of Pauli diagonal maps.
pub fn schur_compose(
    mu1: &MultiplierTensor,
    mu2: &MultiplierTensor,
) -> Result<MultiplierTensor, PauliMapError> {
    if mu1.n() != mu2.n() {
        return Err(PauliMapError::OrderMismatch(mu1.n(), mu2.n()));
    }
    let coeffs = mu1.coeffs().iter().zip(mu2.coeffs()).map(|(a, b)| a * b).collect();
    Ok(MultiplierTensor { n: mu1.n(), coeffs })
}

/// Named one-qubit Pauli diagonal map families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedQubitMap {
    /// μ = (1, t, t, t): depolarizing-type channel.
    Depolarizing(Rat),
    /// μ = (1, 1, 1, 1−2a): convex mix of identity and transpose.
    Theta(Rat),
    /// μ = (1, b, 0, b).
    Lambda(Rat),
    /// μ = (1, x, y, z).
    Custom(Rat, Rat, Rat),
}

impl NamedQubitMap {
    pub fn multiplier(&self) -> MultiplierTensor {
        let one = Rat::one();
        match self {
            NamedQubitMap::Depolarizing(t) => {
                MultiplierTensor::qubit(one, t.clone(), t.clone(), t.clone())
            }
            NamedQubitMap::Theta(a) => {
                let z = &one - &(Rat::from_integer(2.into()) * a);
                MultiplierTensor::qubit(one.clone(), one.clone(), one, z)
            }
            NamedQubitMap::Lambda(b) => {
                MultiplierTensor::qubit(one, b.clone(), Rat::zero(), b.clone())
            }
            NamedQubitMap::Custom(x, y, z) => {
                MultiplierTensor::qubit(one, x.clone(), y.clone(), z.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{dot, rat, rint};

    fn mu1(a: i64, b: i64, c: i64, d: i64) -> MultiplierTensor {
        MultiplierTensor::qubit(rint(a), rint(b), rint(c), rint(d))
    }

    #[test]
    fn transform_matrices_are_orthogonal() {
        let d = d_matrix();
        let dt = d_tilde_matrix();
        assert_eq!(d.mul(&d.transpose()), RatMatrix::identity(4));
        assert_eq!(dt.mul(&dt.transpose()), RatMatrix::identity(4));
        assert_eq!(dt.mul(&d.transpose()), k_matrix());
        // K is an involution
        assert_eq!(k_matrix().mul(&k_matrix()), RatMatrix::identity(4));
    }

    #[test]
    fn spectrum_of_named_families() {
        let dep = NamedQubitMap::Depolarizing(rat(1, 2)).multiplier();
        assert_eq!(
            mult_to_spectrum(&dep).p(),
            &[rat(5, 4), rat(1, 4), rat(1, 4), rat(1, 4)]
        );
        let th = NamedQubitMap::Theta(rat(1, 3)).multiplier();
        assert_eq!(
            mult_to_spectrum(&th).p(),
            &[rat(5, 3), rat(1, 3), rat(1, 3), rat(-1, 3)]
        );
        let dep0 = mu1(1, 0, 0, 0);
        assert_eq!(mult_to_spectrum(&dep0).p(), vec![rat(1, 2); 4]);
        // λ_b family spectrum: ½(1+2b, 1, 1−2b, 1)
        let lam = NamedQubitMap::Lambda(rat(1, 3)).multiplier();
        assert_eq!(
            mult_to_spectrum(&lam).p(),
            &[rat(5, 6), rat(1, 2), rat(1, 6), rat(1, 2)]
        );
    }

    #[test]
    fn spectrum_round_trip() {
        let pair = SpectrumPair::from_p(1, vec![rint(2), rint(0), rint(0), rint(0)]);
        assert_eq!(spectrum_to_mult(&pair), mu1(1, 1, 1, 1));
        // (1,1,0,0) is a fixed point of D, hence its own multiplier
        let pair = SpectrumPair::from_p(1, vec![rint(1), rint(1), rint(0), rint(0)]);
        assert_eq!(spectrum_to_mult(&pair), mu1(1, 1, 0, 0));
        assert_eq!(mult_to_spectrum(&mu1(1, 1, 0, 0)).p(), pair.p());
    }

    #[test]
    fn cp_cocp_predicates() {
        assert!(is_cp(&mu1(1, 1, 1, 1)));
        assert!(!is_cocp(&mu1(1, 1, 1, 1)));
        assert!(!is_cp(&mu1(1, 1, 1, -1)));
        assert!(is_cocp(&mu1(1, 1, 1, -1)));
        assert!(is_ppt(&mu1(1, 0, 0, 0)));
        // transposed spectrum of the transpose map is (0,0,0,2)
        assert_eq!(
            mult_to_spectrum(&mu1(1, 1, 1, -1)).q(),
            &[rint(0), rint(0), rint(0), rint(2)]
        );
    }

    #[test]
    fn choi_of_identity_and_depolarizing() {
        let c = build_choi(&mu1(1, 1, 1, 1), false);
        // 2·ω₂: ones at the four corners of the (0,3) block pattern
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i == 0 || i == 3) && (j == 0 || j == 3) {
                    GaussRat::one()
                } else {
                    GaussRat::zero()
                };
                assert_eq!(*c.entries.get(i, j), want, "at ({i},{j})");
            }
        }
        let c = build_choi(&mu1(1, 0, 0, 0), false);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j {
                    GaussRat::from_rat(rat(1, 2))
                } else {
                    GaussRat::zero()
                };
                assert_eq!(*c.entries.get(i, j), want);
            }
        }
    }

    #[test]
    fn transpose_map_eigen_equations() {
        assert!(verify_spectrum(&mu1(1, 1, 1, -1)));
        assert!(verify_spectrum(&mu1(1, 0, 0, 0)));
        let odd = MultiplierTensor::qubit(rat(1, 3), rat(-2, 7), rint(5), rat(9, 2));
        assert!(verify_spectrum(&odd));
    }

    #[test]
    fn verify_spectrum_n2() {
        let a = MultiplierTensor::qubit(rat(1, 2), rat(-1, 3), rat(2, 5), rint(3));
        let b = MultiplierTensor::qubit(rint(1), rat(7, 4), rat(-1, 6), rat(0, 1));
        assert!(verify_spectrum(&a.tensor(&b)));
    }

    #[test]
    fn realignment_examples() {
        // the cross multiplier: row-major (1/3)·[3,1,1,−1 | −1,1,−1,1 | −1,−1,1,1 | 1,1,1,1]
        let nums = [3, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, 1, 1, 1, 1];
        let coeffs: Vec<Rat> = nums.iter().map(|&v| rat(v, 3)).collect();
        let mu = MultiplierTensor::new(2, coeffs).unwrap();
        assert_eq!(realignment_sum(&mu).unwrap(), rint(6));
        assert_eq!(realignment_sum(&mu1(1, 0, 0, 0)).unwrap(), rint(1));
        assert_eq!(realignment_sum(&mu1(1, 1, 1, 1)).unwrap(), rint(4));
        assert!(realignment_sum(&mu1(2, 0, 0, 0)).is_err());
    }

    #[test]
    fn schur_composition() {
        let id = mu1(1, 1, 1, 1);
        let t = NamedQubitMap::Depolarizing(rat(1, 2)).multiplier();
        assert_eq!(schur_compose(&t, &id).unwrap(), t);
        assert_eq!(
            schur_compose(&t, &t).unwrap(),
            MultiplierTensor::qubit(rint(1), rat(1, 4), rat(1, 4), rat(1, 4))
        );
        let two = id.tensor(&id);
        assert!(schur_compose(&t, &two).is_err());
    }

    #[test]
    fn choi_trace_inner_product_identity() {
        // ⟨μ,κ⟩ = Tr(C_μ·C_κ) for real multipliers
        let a = MultiplierTensor::qubit(rat(1, 2), rat(-1, 3), rat(2, 5), rint(2));
        let b = MultiplierTensor::qubit(rint(1), rat(3, 4), rat(-5, 6), rat(1, 7));
        let lhs = dot(a.coeffs(), b.coeffs());
        let ca = build_choi(&a, false);
        let cb = build_choi(&b, false);
        let tr = ca.entries.mul(&cb.entries).trace();
        assert!(tr.is_real());
        assert_eq!(tr.re, lhs);
    }

    #[test]
    fn json_round_trip() {
        let mu = MultiplierTensor::qubit(rint(1), rat(1, 2), rat(-2, 3), rint(0));
        let s = serde_json::to_string(&mu).unwrap();
        assert!(s.contains("\"coeffs\":[\"1\",\"1/2\",\"-2/3\",\"0\"]"), "{s}");
        let back: MultiplierTensor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, mu);
        assert!(serde_json::from_str::<MultiplierTensor>("{\"n\":1,\"coeffs\":[\"1\"]}").is_err());
        assert!(serde_json::from_str::<MultiplierTensor>(
            "{\"n\":1,\"coeffs\":[\"1\",\"x\",\"0\",\"0\"]}"
        )
        .is_err());
    }
}
