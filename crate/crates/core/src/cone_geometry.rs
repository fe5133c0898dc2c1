//! The polyhedral cone of Pauli PPT spectra in p-coordinates
//! {p ≥ 0, K^{⊗N}p ≥ 0}: zero patterns, the exact extremality test, the rank
//! bound, tensor products of rays, and extremal-ray enumeration by the double
//! description method.

use crate::exact_arith::{primitive, to_primitive_ints, Rat, RatMatrix};
use crate::pauli_maps::{k_matrix, SpectrumPair};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

/// Index sets of vanishing entries of (p, q), as bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZeroPattern {
    pub n: usize,
    pub p_zeros: u64,
    pub q_zeros: u64,
}

impl ZeroPattern {
    /// |pattern| = |p_zeros| + |q_zeros|.
    pub fn size(&self) -> u32 {
        self.p_zeros.count_ones() + self.q_zeros.count_ones()
    }
}

/// Exact entrywise zero test of both spectra.
pub fn zero_pattern(pair: &SpectrumPair) -> ZeroPattern {
    let mask = |v: &[Rat]| {
        v.iter()
            .enumerate()
            .filter(|(_, x)| x.is_zero())
            .fold(0u64, |m, (i, _)| m | (1 << i))
    };
    ZeroPattern { n: pair.n(), p_zeros: mask(pair.p()), q_zeros: mask(pair.q()) }
}

/// Pattern order: a ≤_Z b iff both zero sets of a are contained in b's.
pub fn leq_z(a: &ZeroPattern, b: &ZeroPattern) -> bool {
    assert_eq!(a.n, b.n, "pattern order requires equal orders");
    a.p_zeros & !b.p_zeros == 0 && a.q_zeros & !b.q_zeros == 0
}

/// Symmetry-orbit tag for N=2 rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitLabel {
    Box,
    Diagonal,
    Cross,
    Other,
}

/// A primitive integer generator of an extremal ray, as the pair (p, q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayGenerator {
    pair: SpectrumPair,
    pattern: ZeroPattern,
    pub orbit_label: Option<OrbitLabel>,
}

impl RayGenerator {
    /// Builds from a primitive integer p-vector; q is derived and the whole
    /// pair rescaled to joint primitive integer form.
    pub fn from_p_ints(n: usize, p: &[BigInt]) -> Self {
        let dim = 1usize << (2 * n);
        assert_eq!(p.len(), dim);
        let scale = BigInt::from(1i64 << n);
        // q = K^{⊗n}p = (integer row sums)/2^n; scale the pair jointly and
        // reduce so that gcd over all 2·4^n entries is 1.
        let l = scaled_k_rows(n);
        let q_num: Vec<BigInt> = (0..dim)
            .map(|j| l[j].iter().zip(p).map(|(a, b)| a * b).sum())
            .collect();
        let mut joint: Vec<BigInt> = p.iter().map(|x| x * &scale).collect();
        joint.extend(q_num);
        let joint = primitive(&joint);
        let (pp, qq) = joint.split_at(dim);
        let to_rat = |v: &[BigInt]| v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let pair = SpectrumPair::from_parts_unchecked(n, to_rat(pp), to_rat(qq));
        let pattern = zero_pattern(&pair);
        RayGenerator { pair, pattern, orbit_label: None }
    }

    /// Builds from an arbitrary rational cone member by primitive rescaling.
    pub fn from_pair(pair: &SpectrumPair) -> Self {
        let p_int = to_primitive_ints(pair.p());
        Self::from_p_ints(pair.n(), &p_int)
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn pair(&self) -> &SpectrumPair {
        &self.pair
    }

    pub fn pattern(&self) -> &ZeroPattern {
        &self.pattern
    }

    /// Integer entries of p (the pair is primitive integer by construction).
    pub fn p_ints(&self) -> Vec<BigInt> {
        self.pair.p().iter().map(|r| r.numer().clone()).collect()
    }

    pub fn q_ints(&self) -> Vec<BigInt> {
        self.pair.q().iter().map(|r| r.numer().clone()).collect()
    }

    /// The p-vector reshaped as a 4×4 matrix (order 2 only).
    pub fn p_matrix(&self) -> RatMatrix {
        assert_eq!(self.n(), 2);
        RatMatrix::new(4, 4, self.pair.p().to_vec())
    }
}

/// Rows of 2^n·K^{⊗n} as integer vectors (entries ±1).
pub fn scaled_k_rows(n: usize) -> Vec<Vec<BigInt>> {
    let k = k_matrix().kron_pow(n);
    let scale = Rat::from_integer(BigInt::from(1i64 << n));
    (0..k.rows())
        .map(|i| {
            k.row(i)
                .iter()
                .map(|r| {
                    let v = r * &scale;
                    assert!(v.is_integer());
                    v.numer().clone()
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum ConeError {
    #[error("zero pair is excluded from extremality testing")]
    ZeroPair,
    #[error("pair lies outside the cone (negative entry in p or q)")]
    OutsideCone,
}

/// Extremality of a cone member: the solution space of
/// {x: x_i = 0 ∀ i ∈ p_zeros, (K^{⊗n}x)_j = 0 ∀ j ∈ q_zeros} must be a line.
pub fn is_extremal(pair: &SpectrumPair) -> Result<bool, ConeError> {
    if pair.p().iter().all(|v| v.is_zero()) {
        return Err(ConeError::ZeroPair);
    }
    if !pair.in_cone() {
        return Err(ConeError::OutsideCone);
    }
    let n = pair.n();
    let dim = 1usize << (2 * n);
    let pattern = zero_pattern(pair);
    let k = k_matrix().kron_pow(n);
    let mut rows: Vec<Rat> = Vec::new();
    let mut count = 0usize;
    for i in 0..dim {
        if pattern.p_zeros & (1 << i) != 0 {
            for j in 0..dim {
                rows.push(if i == j { Rat::from_integer(1.into()) } else { Rat::zero() });
            }
            count += 1;
        }
    }
    for j in 0..dim {
        if pattern.q_zeros & (1 << j) != 0 {
            rows.extend(k.row(j).iter().cloned());
            count += 1;
        }
    }
    if count == 0 {
        // no constraints at all: solution space is the full ambient space
        return Ok(dim == 1);
    }
    let m = RatMatrix::new(count, dim, rows);
    Ok(dim - m.rank() == 1)
}

/// The rank bound satisfied by every extremal ray: |pattern| ≥ 4^n − 1.
pub fn check_rank_bound(pattern: &ZeroPattern) -> bool {
    pattern.size() as usize >= (1usize << (2 * pattern.n)) - 1
}

/// Tensor product of two extremal rays (orders add); the result generates an
/// extremal ray of the higher-order cone.
pub fn tensor_rays(a: &RayGenerator, b: &RayGenerator) -> RayGenerator {
    let kron = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut out = Vec::with_capacity(x.len() * y.len());
        for u in x {
            for v in y {
                out.push(u * v);
            }
        }
        out
    };
    let p = kron(&a.p_ints(), &b.p_ints());
    RayGenerator::from_p_ints(a.n() + b.n(), &p)
}

/// Complete duplicate-free census of the extremal rays of
/// {p ≥ 0, K^{⊗n}p ≥ 0} by the double description method, returned in
/// lexicographic (p, q) order.
pub fn enumerate_rays(n: usize) -> Vec<RayGenerator> {
    let dim = 1usize << (2 * n);
    let halfspaces = scaled_k_rows(n);
    let order: Vec<usize> = (0..dim).collect();
    let mut rays = enumerate_rays_with_order(n, &halfspaces, &order);
    rays.sort_by_key(|r| (r.p_ints(), r.q_ints()));
    rays
}

/// Double description with an explicit halfspace insertion order; exposed so
/// order-independence can be tested.
pub fn enumerate_rays_with_order(
    n: usize,
    halfspaces: &[Vec<BigInt>],
    order: &[usize],
) -> Vec<RayGenerator> {
    let dim = 1usize << (2 * n);
    // start from the nonnegative orthant's generators
    let mut rays: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();

    let mut inserted: Vec<usize> = Vec::new();
    for &h in order {
        let vals: Vec<BigInt> = rays
            .iter()
            .map(|r| halfspaces[h].iter().zip(r).map(|(a, b)| a * b).sum())
            .collect();

        // tight-constraint bitmask over the orthant constraints and the
        // halfspaces inserted so far (bits dim..)
        let tight: Vec<u128> = rays
            .iter()
            .map(|r| {
                let mut m = 0u128;
                for (i, x) in r.iter().enumerate() {
                    if x.is_zero() {
                        m |= 1 << i;
                    }
                }
                for (slot, &g) in inserted.iter().enumerate() {
                    let v: BigInt = halfspaces[g].iter().zip(r.iter()).map(|(a, b)| a * b).sum();
                    if v.is_zero() {
                        m |= 1 << (dim + slot);
                    }
                }
                m
            })
            .collect();

        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        if neg.is_empty() {
            inserted.push(h);
            continue;
        }

        // combine adjacent (+,−) pairs into new rays tight on this halfspace
        let pairs: Vec<(usize, usize)> = pos
            .iter()
            .flat_map(|&i| neg.iter().map(move |&j| (i, j)))
            .collect();
        let mut fresh: Vec<Vec<BigInt>> = pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let common = tight[i] & tight[j];
                let blocked = (0..rays.len())
                    .any(|k| k != i && k != j && tight[k] & common == common);
                if blocked {
                    return None;
                }
                let combo: Vec<BigInt> = rays[i]
                    .iter()
                    .zip(&rays[j])
                    .map(|(ri, rj)| &vals[i] * rj - &vals[j] * ri)
                    .collect();
                Some(primitive(&combo))
            })
            .collect();

        let mut next: Vec<Vec<BigInt>> = (0..rays.len())
            .filter(|&i| !vals[i].is_negative())
            .map(|i| rays[i].clone())
            .collect();
        fresh.sort();
        fresh.dedup();
        for f in fresh {
            if !next.contains(&f) {
                next.push(f);
            }
        }
        rays = next;
        inserted.push(h);
    }

    rays.iter().map(|p| RayGenerator::from_p_ints(n, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{dot, rint};

    fn pair_from(p: &[i64]) -> SpectrumPair {
        SpectrumPair::from_p(
            (p.len().trailing_zeros() / 2) as usize,
            p.iter().map(|&v| rint(v)).collect(),
        )
    }

    #[test]
    fn zero_pattern_examples() {
        let pat = zero_pattern(&pair_from(&[1, 1, 0, 0]));
        assert_eq!(pat.p_zeros, 0b1100);
        assert_eq!(pat.q_zeros, 0b0011);
        let pat = zero_pattern(&pair_from(&[1, 1, 1, 1]));
        assert_eq!(pat.p_zeros, 0);
        // cross pair: P₃ and Q₃ each have 6 ones, hence 10 zeros each
        let p3 = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0];
        let pat = zero_pattern(&pair_from(&p3));
        assert_eq!(pat.p_zeros.count_ones(), 10);
        assert_eq!(pat.q_zeros.count_ones(), 10);
        assert_eq!(pat.size(), 20);
    }

    #[test]
    fn cross_q_matches_printed_matrix() {
        let p3 = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0];
        let pair = pair_from(&p3);
        let q3 = [1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0];
        let want: Vec<Rat> = q3.iter().map(|&v| rint(v)).collect();
        assert_eq!(pair.q(), &want[..]);
    }

    #[test]
    fn pattern_order() {
        let a = zero_pattern(&pair_from(&[1, 1, 0, 0]));
        assert!(leq_z(&a, &a));
        let empty = ZeroPattern { n: 1, p_zeros: 0, q_zeros: 0 };
        assert!(leq_z(&empty, &a));
        // box vs diagonal at order 2: incomparable both ways
        let box_p = [1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        let diag_p = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];
        let b = zero_pattern(&pair_from(&box_p));
        let d = zero_pattern(&pair_from(&diag_p));
        assert!(!leq_z(&b, &d));
        assert!(!leq_z(&d, &b));
    }

    #[test]
    fn extremality_examples() {
        assert!(is_extremal(&pair_from(&[1, 1, 0, 0])).unwrap());
        // all-ones p is fixed by K; its solution space is 2-dimensional
        assert!(!is_extremal(&pair_from(&[1, 1, 1, 1])).unwrap());
        let diag_p = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];
        assert!(is_extremal(&pair_from(&diag_p)).unwrap());
        assert!(matches!(
            is_extremal(&pair_from(&[0, 0, 0, 0])),
            Err(ConeError::ZeroPair)
        ));
        assert!(matches!(
            is_extremal(&pair_from(&[1, 1, 1, -1])),
            Err(ConeError::OutsideCone)
        ));
    }

    #[test]
    fn rank_bound_examples() {
        let box1 = zero_pattern(&pair_from(&[1, 1, 0, 0]));
        assert!(check_rank_bound(&box1));
        let diag_p = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];
        let d = zero_pattern(&pair_from(&diag_p));
        assert_eq!(d.size(), 24);
        assert!(check_rank_bound(&d));
        let small = ZeroPattern { n: 2, p_zeros: 0x7f, q_zeros: 0x7f }; // 14 zeros
        assert!(!check_rank_bound(&small));
    }

    #[test]
    fn census_n1() {
        let rays = enumerate_rays(1);
        assert_eq!(rays.len(), 6);
        let mut expected: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let mut p = vec![BigInt::from(0); 4];
                p[i] = BigInt::from(1);
                p[j] = BigInt::from(1);
                expected.push(p);
            }
        }
        expected.sort();
        let mut got: Vec<Vec<BigInt>> = rays.iter().map(|r| r.p_ints()).collect();
        got.sort();
        assert_eq!(got, expected);
        // each q is the complement indicator
        for r in &rays {
            let p = r.p_ints();
            let q = r.q_ints();
            for i in 0..4 {
                assert_eq!(&p[i] + &q[i], BigInt::from(1));
            }
            assert!(is_extremal(r.pair()).unwrap());
            assert!(check_rank_bound(r.pattern()));
        }
    }

    #[test]
    fn tensor_of_boxes() {
        let rays = enumerate_rays(1);
        let r12 = rays
            .iter()
            .find(|r| r.p_ints() == vec![1.into(), 1.into(), 0.into(), 0.into()])
            .unwrap();
        let boxed = tensor_rays(r12, r12);
        let want = [1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(boxed.p_ints(), want.map(BigInt::from).to_vec());
        assert!(is_extremal(boxed.pair()).unwrap());
    }

    #[test]
    fn orthogonality_of_ray_pairs_n1() {
        let rays = enumerate_rays(1);
        for a in &rays {
            for b in &rays {
                let pp = dot(a.pair().p(), b.pair().p());
                let qq = dot(a.pair().q(), b.pair().q());
                assert_eq!(pp.is_zero(), qq.is_zero());
            }
        }
    }

    #[test]
    fn no_ray_pattern_strictly_below_another_n1() {
        let rays = enumerate_rays(1);
        for a in &rays {
            for b in &rays {
                if a != b {
                    assert!(!(leq_z(a.pattern(), b.pattern()) && a.pattern() != b.pattern()));
                }
            }
        }
    }
}
