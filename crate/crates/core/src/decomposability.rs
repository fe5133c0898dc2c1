//! Decomposability and positivity decisions: the exact ray-sweep test with
//! LP certificates, closed-form criteria for one- and two-qubit Pauli maps,
//! tensor-square positivity, entanglement-breaking-cone membership, the
//! PPT-composition sweep over cross pairs, the counterexample region
//! predicates, and a floating-point positivity probe.

use crate::cone_geometry::{OrbitLabel, RayGenerator};
use crate::exact_arith::{dot, lp_feasible, rat, Rat, RatMatrix};
use crate::pauli_maps::{d_matrix, d_tilde_matrix, mult_to_spectrum, schur_compose, MultiplierTensor};
use itertools::Itertools;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum DecompError {
    #[error("ray sweep and LP certificate disagree — the ray list is incomplete")]
    InternalInconsistency,
    #[error("parameter {name} = {value} outside [0,1]")]
    ParamOutOfRange { name: &'static str, value: String },
    #[error(transparent)]
    Lp(#[from] crate::exact_arith::LpError),
}

/// Outcome of a decomposability decision, with a verifying certificate.
#[derive(Debug, Clone)]
pub enum DecompVerdict {
    /// μ = Dᵀ^{⊗N}s1 + D̃ᵀ^{⊗N}s2 with s1, s2 ≥ 0.
    Decomposable { s1: Vec<Rat>, s2: Vec<Rat> },
    /// A ray of the PPT-spectra cone with ⟨s, p_ray⟩ < 0.
    NotDecomposable { violating_ray: RayGenerator, inner_product: Rat },
}

impl DecompVerdict {
    pub fn decomposable(&self) -> bool {
        matches!(self, DecompVerdict::Decomposable { .. })
    }

    /// Re-verifies the certificate exactly against μ.
    pub fn verify(&self, mu: &MultiplierTensor) -> bool {
        match self {
            DecompVerdict::Decomposable { s1, s2 } => {
                if s1.iter().chain(s2).any(|v| v.is_negative()) {
                    return false;
                }
                let n = mu.n();
                let a = d_matrix().transpose().kron_pow(n).mul_vec(s1);
                let b = d_tilde_matrix().transpose().kron_pow(n).mul_vec(s2);
                let sum: Vec<Rat> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                sum == mu.coeffs()
            }
            DecompVerdict::NotDecomposable { violating_ray, inner_product } => {
                let s = mult_to_spectrum(mu);
                let got = dot(s.p(), violating_ray.pair().p());
                got == *inner_product && got.is_negative()
            }
        }
    }
}

/// Exact decomposability by sweeping ⟨s, p⟩ ≥ 0 over the complete extremal
/// ray list; a decomposable verdict carries an LP-produced CP + coCP split.
pub fn is_decomposable(
    mu: &MultiplierTensor,
    rays: &[RayGenerator],
) -> Result<DecompVerdict, DecompError> {
    let n = mu.n();
    let s = mult_to_spectrum(mu);
    for ray in rays {
        let ip = dot(s.p(), ray.pair().p());
        if ip.is_negative() {
            return Ok(DecompVerdict::NotDecomposable {
                violating_ray: ray.clone(),
                inner_product: ip,
            });
        }
    }
    let dim = 1usize << (2 * n);
    let dt = d_matrix().transpose().kron_pow(n);
    let dtt = d_tilde_matrix().transpose().kron_pow(n);
    let mut rows: Vec<Rat> = Vec::with_capacity(dim * 2 * dim);
    for i in 0..dim {
        rows.extend(dt.row(i).iter().cloned());
        rows.extend(dtt.row(i).iter().cloned());
    }
    let a = RatMatrix::new(dim, 2 * dim, rows);
    let x = lp_feasible(&a, mu.coeffs(), 2 * dim)?
        .ok_or(DecompError::InternalInconsistency)?;
    let (s1, s2) = x.split_at(dim);
    Ok(DecompVerdict::Decomposable { s1: s1.to_vec(), s2: s2.to_vec() })
}

/// One-qubit closed form: with s = Dμ sorted descending, decomposability
/// (equivalently positivity of the map) holds iff s₃ ≥ 0 and s₃ + s₄ ≥ 0.
pub fn is_decomposable_n1_closed_form(mu: &MultiplierTensor) -> bool {
    assert_eq!(mu.n(), 1, "closed form requires order 1");
    let mut s = mult_to_spectrum(mu).p().to_vec();
    s.sort_by(|a, b| b.cmp(a));
    !s[2].is_negative() && !(&s[2] + &s[3]).is_negative()
}

fn all_perms4() -> Vec<[usize; 4]> {
    (0..4usize).permutations(4).map(|p| [p[0], p[1], p[2], p[3]]).collect()
}

/// Two-qubit closed form: all four inequality families on the spectral
/// matrix S = DμDᵀ, over all 576 permutation pairs.
pub fn is_decomposable_n2_closed_form(mu: &MultiplierTensor) -> bool {
    assert_eq!(mu.n(), 2, "closed form requires order 2");
    let d = d_matrix();
    let s = d.mul(&mu.as_matrix()).mul(&d.transpose());
    let perms = all_perms4();
    for a in &perms {
        for b in &perms {
            let e = |i: usize, j: usize| &s[(a[i], b[j])];
            let f1 = e(0, 0) + e(0, 1) + e(1, 0) + e(1, 1);
            if f1.is_negative() {
                return false;
            }
            let f2 = e(0, 0) + e(1, 1) + e(2, 2) + e(3, 3);
            if f2.is_negative() {
                return false;
            }
            let f3 = e(0, 0) + e(1, 1) + e(2, 2) + e(3, 0) + e(3, 1) + e(3, 2);
            if f3.is_negative() {
                return false;
            }
            let f4 = e(0, 0) + e(1, 1) + e(2, 2) + e(0, 3) + e(1, 3) + e(2, 3);
            if f4.is_negative() {
                return false;
            }
        }
    }
    true
}

/// The first two inequality families alone (satisfied by every positive map).
pub fn n2_first_two_families_hold(mu: &MultiplierTensor) -> bool {
    assert_eq!(mu.n(), 2);
    let d = d_matrix();
    let s = d.mul(&mu.as_matrix()).mul(&d.transpose());
    let perms = all_perms4();
    for a in &perms {
        for b in &perms {
            let e = |i: usize, j: usize| &s[(a[i], b[j])];
            if (e(0, 0) + e(0, 1) + e(1, 0) + e(1, 1)).is_negative() {
                return false;
            }
            if (e(0, 0) + e(1, 1) + e(2, 2) + e(3, 3)).is_negative() {
                return false;
            }
        }
    }
    true
}

/// Positivity of the tensor square of the qubit map with μ = (1,x,y,z):
/// 1+x² ≥ y²+z², 1+y² ≥ x²+z², 1+z² ≥ x²+y².
pub fn tensor_square_positive(x: &Rat, y: &Rat, z: &Rat) -> bool {
    let one = Rat::one();
    let (x2, y2, z2) = (x * x, y * y, z * z);
    !(&(&one + &x2) - &(&y2 + &z2)).is_negative()
        && !(&(&one + &y2) - &(&x2 + &z2)).is_negative()
        && !(&(&one + &z2) - &(&x2 + &y2)).is_negative()
}

/// Decomposability of the positive tensor square: with s = D(1,x,y,z)ᵀ,
/// [s_{σ₁(1)}+s_{σ₁(4)}]s_{σ₂(1)} + [s_{σ₁(2)}+s_{σ₁(4)}]s_{σ₂(2)} +
/// [s_{σ₁(3)}+s_{σ₁(4)}]s_{σ₂(3)} ≥ 0 for all permutation pairs.
pub fn tensor_square_decomposable(x: &Rat, y: &Rat, z: &Rat) -> bool {
    assert!(
        tensor_square_positive(x, y, z),
        "tensor_square_decomposable requires the positivity inequalities"
    );
    let mu = MultiplierTensor::qubit(Rat::one(), x.clone(), y.clone(), z.clone());
    let s = mult_to_spectrum(&mu).p().to_vec();
    let perms = all_perms4();
    for a in &perms {
        for b in &perms {
            let val = (&s[a[0]] + &s[a[3]]) * &s[b[0]]
                + (&s[a[1]] + &s[a[3]]) * &s[b[1]]
                + (&s[a[2]] + &s[a[3]]) * &s[b[2]];
            if val.is_negative() {
                return false;
            }
        }
    }
    true
}

/// Conic membership of a 4×4 spectral matrix in cone(boxes ∪ diagonals),
/// decided by exact LP over the labeled N=2 census.
pub fn in_box_diagonal_cone(s: &RatMatrix, rays: &[RayGenerator]) -> bool {
    assert!(s.rows() == 4 && s.cols() == 4, "spectral matrix must be 4×4");
    let generators: Vec<&RayGenerator> = rays
        .iter()
        .filter(|r| {
            matches!(r.orbit_label, Some(OrbitLabel::Box) | Some(OrbitLabel::Diagonal))
        })
        .collect();
    assert_eq!(generators.len(), 60, "census must carry box/diagonal labels");
    let mut rows: Vec<Rat> = Vec::with_capacity(16 * generators.len());
    for flat in 0..16 {
        for g in &generators {
            rows.push(g.pair().p()[flat].clone());
        }
    }
    let a = RatMatrix::new(16, generators.len(), rows);
    let rhs: Vec<Rat> = s.entries().to_vec();
    lp_feasible(&a, &rhs, generators.len()).expect("well-formed LP").is_some()
}

/// Multiplier matrix of a ray's P-matrix: μ = Dᵀ·P·D.
pub fn ray_multiplier_matrix(ray: &RayGenerator) -> MultiplierTensor {
    let d = d_matrix();
    MultiplierTensor::from_matrix(&d.transpose().mul(&ray.p_matrix()).mul(&d))
}

fn cross_composition_spectral(m1: &MultiplierTensor, m2: &MultiplierTensor) -> RatMatrix {
    let d = d_matrix();
    let composed = schur_compose(m1, m2).expect("equal orders");
    d.mul(&composed.as_matrix()).mul(&d.transpose())
}

/// Verifies that every ordered pair of cross rays composes (Schur product of
/// multiplier matrices) into cone(boxes ∪ diagonals). Boxes and diagonals
/// themselves are entanglement breaking and need no LP.
pub fn verify_ppt_squared(rays: &[RayGenerator]) -> bool {
    let crosses: Vec<&RayGenerator> = rays
        .iter()
        .filter(|r| r.orbit_label == Some(OrbitLabel::Cross))
        .collect();
    assert_eq!(crosses.len(), 192, "census must carry cross labels");
    let mults: Vec<MultiplierTensor> = crosses.iter().map(|r| ray_multiplier_matrix(r)).collect();
    // membership is permutation-invariant, so solve each distinct spectral
    // matrix once; the 36864 ordered pairs collapse to a few hundred
    let mut unique: std::collections::HashSet<Vec<Rat>> = std::collections::HashSet::new();
    for m1 in &mults {
        for m2 in &mults {
            unique.insert(cross_composition_spectral(m1, m2).entries().to_vec());
        }
    }
    let list: Vec<Vec<Rat>> = unique.into_iter().collect();
    list.par_iter()
        .all(|e| in_box_diagonal_cone(&RatMatrix::new(4, 4, e.clone()), rays))
}

/// Canonical form of a 4×4 matrix under independent row/column permutations.
fn two_sided_canonical(p: &RatMatrix) -> Vec<Rat> {
    let perms = all_perms4();
    let mut best: Option<Vec<Rat>> = None;
    for a in &perms {
        for b in &perms {
            let cand: Vec<Rat> = (0..4)
                .flat_map(|i| (0..4).map(move |j| p[(a[i], b[j])].clone()))
                .collect();
            if best.as_ref().map_or(true, |x| cand < *x) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// Symmetry-reduced composition sweep: one representative per two-sided
/// row/column-permutation class of cross P-matrices, composed against all 192
/// crosses. Conjugating the left factor by the corresponding local unitaries
/// re-parametrizes the right factor within the cross set, so the verdict over
/// representatives × all crosses covers every ordered pair.
pub fn verify_ppt_squared_reduced(rays: &[RayGenerator]) -> bool {
    let crosses: Vec<&RayGenerator> = rays
        .iter()
        .filter(|r| r.orbit_label == Some(OrbitLabel::Cross))
        .collect();
    assert_eq!(crosses.len(), 192);
    let mut reps: Vec<&RayGenerator> = Vec::new();
    let mut seen: Vec<Vec<Rat>> = Vec::new();
    for c in &crosses {
        let key = two_sided_canonical(&c.p_matrix());
        if !seen.contains(&key) {
            seen.push(key);
            reps.push(c);
        }
    }
    let rep_mults: Vec<MultiplierTensor> = reps.iter().map(|r| ray_multiplier_matrix(r)).collect();
    let all_mults: Vec<MultiplierTensor> = crosses.iter().map(|r| ray_multiplier_matrix(r)).collect();
    let mut unique: std::collections::HashSet<Vec<Rat>> = std::collections::HashSet::new();
    for m1 in &rep_mults {
        for m2 in &all_mults {
            unique.insert(cross_composition_spectral(m1, m2).entries().to_vec());
        }
    }
    let list: Vec<Vec<Rat>> = unique.into_iter().collect();
    list.par_iter()
        .all(|e| in_box_diagonal_cone(&RatMatrix::new(4, 4, e.clone()), rays))
}

/// Number of two-sided permutation classes among the cross P-matrices.
pub fn cross_representative_count(rays: &[RayGenerator]) -> usize {
    let mut seen: Vec<Vec<Rat>> = Vec::new();
    for r in rays {
        if r.orbit_label == Some(OrbitLabel::Cross) {
            let key = two_sided_canonical(&r.p_matrix());
            if !seen.contains(&key) {
                seen.push(key);
            }
        }
    }
    seen.len()
}

/// Classified point of a two-parameter region scan.
#[derive(Debug, Clone)]
pub struct RegionPoint {
    pub params: Vec<(&'static str, Rat)>,
    /// None encodes "unknown" for maps without an exact positivity criterion.
    pub positive: Option<bool>,
    pub decomposable: bool,
    pub cp: bool,
    pub cocp: bool,
    pub ppt: bool,
    /// The family's closed-form residual, reported when negative.
    pub violation: Option<Rat>,
}

fn check_range(name: &'static str, v: &Rat) -> Result<(), DecompError> {
    if v.is_negative() || v > &Rat::one() {
        return Err(DecompError::ParamOutOfRange { name, value: v.to_string() });
    }
    Ok(())
}

/// Classifies T_t ⊗ θ_a: positive iff t ≤ 1/(2a+1); decomposable iff
/// positive and not (t > 1/3 and a > 0). The decomposable flag is
/// independently recomputed from the two-qubit closed form and asserted
/// equal.
pub fn region_theta(a: &Rat, t: &Rat) -> Result<RegionPoint, DecompError> {
    check_range("a", a)?;
    check_range("t", t)?;
    let mu_t = crate::pauli_maps::NamedQubitMap::Depolarizing(t.clone()).multiplier();
    let mu_a = crate::pauli_maps::NamedQubitMap::Theta(a.clone()).multiplier();
    let mu = mu_t.tensor(&mu_a);
    let two = Rat::from_integer(2.into());
    let positive = !(t * &(&(&two * a) + &Rat::one()) - Rat::one()).is_positive();
    let third = rat(1, 3);
    let decomposable = positive && !(t > &third && a.is_positive());
    assert_eq!(
        decomposable,
        is_decomposable_n2_closed_form(&mu),
        "region formula disagrees with the spectral closed form at (a,t)=({a},{t})"
    );
    let residual = &two * a * &(Rat::one() - Rat::from_integer(3.into()) * t);
    Ok(RegionPoint {
        params: vec![("a", a.clone()), ("t", t.clone())],
        positive: Some(positive),
        decomposable,
        cp: crate::pauli_maps::is_cp(&mu),
        cocp: crate::pauli_maps::is_cocp(&mu),
        ppt: crate::pauli_maps::is_ppt(&mu),
        violation: if residual.is_negative() { Some(residual) } else { None },
    })
}

/// Classifies T_t ⊗ Π_{λ_b}: positive iff t ≤ 1/(2b) (vacuous at b = 0);
/// decomposable iff positive and not 3 < 2b + t + 2bt; residual
/// 2(3 − 2b − t − 2tb) reported when negative.
pub fn region_lambda(b: &Rat, t: &Rat) -> Result<RegionPoint, DecompError> {
    check_range("b", b)?;
    check_range("t", t)?;
    let mu_t = crate::pauli_maps::NamedQubitMap::Depolarizing(t.clone()).multiplier();
    let mu_b = crate::pauli_maps::NamedQubitMap::Lambda(b.clone()).multiplier();
    let mu = mu_t.tensor(&mu_b);
    let two = Rat::from_integer(2.into());
    let three = Rat::from_integer(3.into());
    let positive = if b.is_zero() {
        true
    } else {
        !(&(&two * b) * t - Rat::one()).is_positive()
    };
    let threshold = &(&two * b) + t + &(&two * b) * t;
    let decomposable = positive && !(threshold > three);
    assert_eq!(
        decomposable,
        is_decomposable_n2_closed_form(&mu),
        "region formula disagrees with the spectral closed form at (b,t)=({b},{t})"
    );
    let residual = &two * &(&three - &threshold);
    Ok(RegionPoint {
        params: vec![("b", b.clone()), ("t", t.clone())],
        positive: Some(positive),
        decomposable,
        cp: crate::pauli_maps::is_cp(&mu),
        cocp: crate::pauli_maps::is_cocp(&mu),
        ppt: crate::pauli_maps::is_ppt(&mu),
        violation: if residual.is_negative() { Some(residual) } else { None },
    })
}

const PROBE_RADII: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Floating-point necessary-condition sampler for positivity of an order-2
/// map: for Bloch states ρ_x over a polar mesh (radii 0..1, angles
/// grid×grid), applies the map to (ρ_x⊗I)ω(ρ_x⊗I) and requires the minimum
/// eigenvalue to stay above −tol. Not a proof of positivity.
pub fn positivity_probe(mu4: &MultiplierTensor, grid: usize, tol: f64) -> bool {
    assert_eq!(mu4.n(), 2, "probe requires order 2");
    assert!(grid >= 8, "probe requires grid ≥ 8");
    let mu: Vec<f64> = mu4
        .coeffs()
        .iter()
        .map(|r| {
            let n: f64 = approx_big(r.numer());
            let d: f64 = approx_big(r.denom());
            n / d
        })
        .collect();
    let paulis = pauli_f64();
    for r in PROBE_RADII {
        for i in 0..grid {
            for j in 0..grid {
                let phi1 = std::f64::consts::PI * i as f64 / (grid - 1) as f64;
                let phi2 = 2.0 * std::f64::consts::PI * j as f64 / (grid - 1) as f64;
                let x = [
                    r * phi1.sin() * phi2.cos(),
                    r * phi1.sin() * phi2.sin(),
                    r * phi1.cos(),
                ];
                if !probe_point(&mu, &paulis, x, tol) {
                    return false;
                }
            }
        }
    }
    true
}

fn approx_big(v: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::INFINITY)
}

type C2 = [[Complex64; 2]; 2];

fn pauli_f64() -> [C2; 4] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        [[o, z], [z, o]],
        [[z, o], [o, z]],
        [[o, z], [z, -o]],
        [[z, -i], [i, z]],
    ]
}

fn probe_point(mu: &[f64], paulis: &[C2; 4], x: [f64; 3], tol: f64) -> bool {
    // ρ_x = ½(1 + x₁σ₂ + x₂σ₄ + x₃σ₃); the probe input is vec(ρ)vec(ρ)†
    let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            rho[a][b] = 0.5
                * (paulis[0][a][b]
                    + x[0] * paulis[1][a][b]
                    + x[1] * paulis[3][a][b]
                    + x[2] * paulis[2][a][b]);
        }
    }
    let psi = [rho[0][0], rho[0][1], rho[1][0], rho[1][1]];
    let mut input = [[Complex64::new(0.0, 0.0); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            input[a][b] = psi[a] * psi[b].conj();
        }
    }
    // expand in the σ_k⊗σ_l basis, scale by μ, and resum
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for k in 0..4 {
        for l in 0..4 {
            let mut coeff = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        for d in 0..2 {
                            // Tr[(σ_k⊗σ_l)·X] picks X[(b,d),(a,c)]
                            coeff += paulis[k][a][b] * paulis[l][c][d] * input[2 * b + d][2 * a + c];
                        }
                    }
                }
            }
            let weight = mu[4 * k + l] * 0.25;
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        for d in 0..2 {
                            out[2 * a + c][2 * b + d] += weight * coeff * paulis[k][a][b] * paulis[l][c][d];
                        }
                    }
                }
            }
        }
    }
    min_eigenvalue_hermitian(out) >= -tol
}

/// Minimum eigenvalue of a 4×4 Hermitian matrix by cyclic complex Jacobi
/// rotations.
fn min_eigenvalue_hermitian(mut a: [[Complex64; 4]; 4]) -> f64 {
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..4 {
            for q in p + 1..4 {
                off += a[p][q].norm_sqr();
            }
        }
        if off < 1e-26 {
            break;
        }
        for p in 0..4 {
            for q in p + 1..4 {
                let apq = a[p][q];
                let beta = apq.norm();
                if beta < 1e-300 {
                    continue;
                }
                let u = apq / beta;
                let alpha = a[p][p].re;
                let gamma = a[q][q].re;
                let tau = (gamma - alpha) / (2.0 * beta);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let w = u.conj();
                // G restricted to (p,q): [[c, s], [−w·s, w·c]]
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = -w * s;
                let gqq = w * c;
                for i in 0..4 {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = aip * gpp + aiq * gqp;
                    a[i][q] = aip * gpq + aiq * gqq;
                }
                for j in 0..4 {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = gpp.conj() * apj + gqp.conj() * aqj;
                    a[q][j] = gpq.conj() * apj + gqq.conj() * aqj;
                }
            }
        }
    }
    (0..4).map(|i| a[i][i].re).fold(f64::INFINITY, f64::min)
}
