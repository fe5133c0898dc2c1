//! The symmetry group S₄^N × S_N × {0,1} acting on spectrum pairs: the group
//! action, canonical orbit representatives by exhaustive sweep, and the
//! decomposition of ray censuses into labeled orbits.

use crate::cone_geometry::{OrbitLabel, RayGenerator};
use crate::exact_arith::Rat;
use crate::pauli_maps::{k_matrix, SpectrumPair};
use itertools::Itertools;
use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Group element (τ, (σ₁…σ_N), x) acting as V_τ·(⊗U_{σᵢ})·(K^{⊗N})^x.
/// `tau[k]` is the image slot of slot k; `sigmas[k][d]` the image of digit d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub tau: Vec<usize>,
    pub sigmas: Vec<[usize; 4]>,
    pub x: bool,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            tau: (0..n).collect(),
            sigmas: vec![[0, 1, 2, 3]; n],
            x: false,
        }
    }

    pub fn n(&self) -> usize {
        self.tau.len()
    }

    /// Semidirect-product composition: `self · other` acts as applying
    /// `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let n = self.n();
        assert_eq!(n, other.n());
        let tau = (0..n).map(|k| self.tau[other.tau[k]]).collect();
        let sigmas = (0..n)
            .map(|k| {
                let a = &self.sigmas[other.tau[k]];
                let b = &other.sigmas[k];
                [a[b[0]], a[b[1]], a[b[2]], a[b[3]]]
            })
            .collect();
        GroupElement { tau, sigmas, x: self.x ^ other.x }
    }

    /// All 2·N!·24^N group elements.
    pub fn all(n: usize) -> Vec<GroupElement> {
        let perms4: Vec<[usize; 4]> = (0..4usize)
            .permutations(4)
            .map(|p| [p[0], p[1], p[2], p[3]])
            .collect();
        let mut out = Vec::new();
        for tau in (0..n).permutations(n) {
            for sigmas in (0..n).map(|_| perms4.iter()).multi_cartesian_product() {
                for x in [false, true] {
                    out.push(GroupElement {
                        tau: tau.clone(),
                        sigmas: sigmas.iter().map(|s| **s).collect(),
                        x,
                    });
                }
            }
        }
        out
    }
}

/// Index permutation of the flat tensor index induced by the σ/τ part of a
/// group element: `map[i]` is the image index of i.
fn index_map(g: &GroupElement) -> Vec<usize> {
    let n = g.n();
    let dim = 1usize << (2 * n);
    let mut map = vec![0usize; dim];
    for (i, slot_map) in map.iter_mut().enumerate() {
        let mut digits = vec![0usize; n];
        for k in 0..n {
            digits[k] = (i >> (2 * (n - 1 - k))) & 3;
        }
        // slot-wise permutation of digit values, then slot relocation by τ
        let mut image = vec![0usize; n];
        for k in 0..n {
            image[g.tau[k]] = g.sigmas[k][digits[k]];
        }
        let mut flat = 0usize;
        for (k, d) in image.iter().enumerate() {
            flat |= d << (2 * (n - 1 - k));
        }
        *slot_map = flat;
    }
    map
}

/// Applies a group element to a spectrum pair: (K^{⊗N})^x first, then the
/// slot-wise permutations, then the slot relocation — to both p and q.
pub fn act(g: &GroupElement, pair: &SpectrumPair) -> SpectrumPair {
    let n = pair.n();
    assert_eq!(g.n(), n, "group element and pair have different orders");
    let (p0, q0): (Vec<Rat>, Vec<Rat>) = if g.x {
        let k = k_matrix().kron_pow(n);
        (k.mul_vec(pair.p()), k.mul_vec(pair.q()))
    } else {
        (pair.p().to_vec(), pair.q().to_vec())
    };
    let map = index_map(g);
    let dim = p0.len();
    let mut p = vec![Rat::default(); dim];
    let mut q = vec![Rat::default(); dim];
    for i in 0..dim {
        p[map[i]] = p0[i].clone();
        q[map[i]] = q0[i].clone();
    }
    let out = SpectrumPair::new(n, p, q);
    if pair.in_cone() {
        assert!(out.in_cone(), "group action left the cone");
    }
    out
}

/// Canonical orbit representative: the lexicographically smallest (p‖q)
/// concatenation over all group images, after primitive-integer
/// normalization. Two cone members lie in the same orbit iff their canonical
/// forms coincide.
pub fn canonical_form(pair: &SpectrumPair) -> SpectrumPair {
    let n = pair.n();
    let prim = RayGenerator::from_pair(pair);
    let p0 = prim.p_ints();
    let q0 = prim.q_ints();
    let mut best: Option<Vec<BigInt>> = None;
    let perms4: Vec<[usize; 4]> = (0..4usize)
        .permutations(4)
        .map(|p| [p[0], p[1], p[2], p[3]])
        .collect();
    for tau in (0..n).permutations(n) {
        for sigmas in (0..n).map(|_| perms4.iter()).multi_cartesian_product() {
            let g = GroupElement {
                tau: tau.clone(),
                sigmas: sigmas.iter().map(|s| **s).collect(),
                x: false,
            };
            let map = index_map(&g);
            for x in [false, true] {
                // for cone members (K^{⊗N})^x exactly swaps p and q
                let (src_p, src_q) = if x { (&q0, &p0) } else { (&p0, &q0) };
                let dim = src_p.len();
                let mut cand = vec![BigInt::default(); 2 * dim];
                for i in 0..dim {
                    cand[map[i]] = src_p[i].clone();
                    cand[dim + map[i]] = src_q[i].clone();
                }
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
    }
    let best = best.unwrap();
    let dim = best.len() / 2;
    let to_rat = |v: &[BigInt]| v.iter().map(|x| Rat::from_integer(x.clone())).collect();
    SpectrumPair::new(n, to_rat(&best[..dim]), to_rat(&best[dim..]))
}

/// One symmetry orbit of a ray census.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub representative: RayGenerator,
    pub size: usize,
    pub label: OrbitLabel,
}

impl Serialize for OrbitReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Rep {
            p: Vec<i64>,
            q: Vec<i64>,
        }
        let small = |v: Vec<BigInt>| -> Vec<i64> {
            v.iter().map(|x| i64::try_from(x).expect("ray entry fits i64")).collect()
        };
        let mut st = s.serialize_struct("OrbitReport", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field(
            "representative",
            &Rep { p: small(self.representative.p_ints()), q: small(self.representative.q_ints()) },
        )?;
        st.end()
    }
}

/// The reference generators of the three N=2 orbits, in the order
/// box, diagonal, cross.
pub fn reference_rays_n2() -> [RayGenerator; 3] {
    let mk = |p: [i64; 16]| RayGenerator::from_p_ints(2, &p.map(BigInt::from));
    [
        mk([1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
        mk([1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
        mk([1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0]),
    ]
}

/// Groups rays by canonical form; for order 2 the orbits are labeled by
/// matching the canonical forms of the box/diagonal/cross references.
pub fn orbit_decompose(rays: &[RayGenerator]) -> Vec<OrbitReport> {
    use rayon::prelude::*;
    if rays.is_empty() {
        return Vec::new();
    }
    let n = rays[0].n();
    let keys: Vec<(Vec<BigInt>, Vec<BigInt>)> = rays
        .par_iter()
        .map(|r| {
            let c = canonical_form(r.pair());
            let ints = |v: &[Rat]| v.iter().map(|x| x.numer().clone()).collect();
            (ints(c.p()), ints(c.q()))
        })
        .collect();
    let mut groups: BTreeMap<(Vec<BigInt>, Vec<BigInt>), Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        groups.entry(k.clone()).or_default().push(i);
    }
    let labels: Vec<((Vec<BigInt>, Vec<BigInt>), OrbitLabel)> = if n == 2 {
        reference_rays_n2()
            .iter()
            .zip([OrbitLabel::Box, OrbitLabel::Diagonal, OrbitLabel::Cross])
            .map(|(r, l)| {
                let c = canonical_form(r.pair());
                let ints = |v: &[Rat]| v.iter().map(|x: &Rat| x.numer().clone()).collect();
                ((ints(c.p()), ints(c.q())), l)
            })
            .collect()
    } else {
        Vec::new()
    };
    groups
        .into_iter()
        .map(|(key, members)| {
            let label = labels
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, l)| *l)
                .unwrap_or(OrbitLabel::Other);
            let mut rep = rays[members[0]].clone();
            rep.orbit_label = Some(label);
            OrbitReport { representative: rep, size: members.len(), label }
        })
        .collect()
}

/// Attaches orbit labels to every ray of a census (order 2).
pub fn label_rays(rays: &mut [RayGenerator]) {
    use rayon::prelude::*;
    if rays.is_empty() {
        return;
    }
    let n = rays[0].n();
    if n != 2 {
        for r in rays.iter_mut() {
            r.orbit_label = Some(OrbitLabel::Other);
        }
        return;
    }
    let refs: Vec<(Vec<Rat>, Vec<Rat>)> = reference_rays_n2()
        .iter()
        .map(|r| {
            let c = canonical_form(r.pair());
            (c.p().to_vec(), c.q().to_vec())
        })
        .collect();
    let labels: Vec<OrbitLabel> = rays
        .par_iter()
        .map(|r| {
            let c = canonical_form(r.pair());
            let key = (c.p().to_vec(), c.q().to_vec());
            if key == refs[0] {
                OrbitLabel::Box
            } else if key == refs[1] {
                OrbitLabel::Diagonal
            } else if key == refs[2] {
                OrbitLabel::Cross
            } else {
                OrbitLabel::Other
            }
        })
        .collect();
    for (r, l) in rays.iter_mut().zip(labels) {
        r.orbit_label = Some(l);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone_geometry::enumerate_rays;
    use crate::exact_arith::rint;

    fn pair_from(p: &[i64]) -> SpectrumPair {
        SpectrumPair::from_p(
            (p.len().trailing_zeros() / 2) as usize,
            p.iter().map(|&v| rint(v)).collect(),
        )
    }

    #[test]
    fn identity_acts_trivially() {
        let pair = pair_from(&[1, 1, 0, 0]);
        assert_eq!(act(&GroupElement::identity(1), &pair), pair);
    }

    #[test]
    fn x_flip_swaps_p_and_q() {
        let pair = pair_from(&[1, 1, 0, 0]);
        let mut g = GroupElement::identity(1);
        g.x = true;
        let img = act(&g, &pair);
        assert_eq!(img.p(), pair.q());
        assert_eq!(img.q(), pair.p());
    }

    #[test]
    fn stabilizing_swap() {
        // swapping digits 2 and 3 (0-based) fixes (|{1,2}⟩,|{3,4}⟩)
        let pair = pair_from(&[1, 1, 0, 0]);
        let g = GroupElement { tau: vec![0], sigmas: vec![[0, 1, 3, 2]], x: false };
        assert_eq!(act(&g, &pair), pair);
    }

    #[test]
    fn group_order() {
        assert_eq!(GroupElement::all(1).len(), 48);
    }

    #[test]
    fn composition_matches_successive_action() {
        let pair = pair_from(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0]);
        let g = GroupElement {
            tau: vec![1, 0],
            sigmas: vec![[2, 0, 3, 1], [1, 3, 0, 2]],
            x: true,
        };
        let h = GroupElement {
            tau: vec![0, 1],
            sigmas: vec![[3, 1, 2, 0], [0, 2, 1, 3]],
            x: true,
        };
        assert_eq!(act(&g.compose(&h), &pair), act(&g, &act(&h, &pair)));
        let h2 = GroupElement {
            tau: vec![1, 0],
            sigmas: vec![[1, 0, 2, 3], [0, 1, 3, 2]],
            x: false,
        };
        assert_eq!(act(&g.compose(&h2), &pair), act(&g, &act(&h2, &pair)));
    }

    #[test]
    fn canonical_form_idempotent_and_orbit_n1() {
        let rays = enumerate_rays(1);
        let c0 = canonical_form(rays[0].pair());
        assert_eq!(canonical_form(&c0), c0);
        for r in &rays[1..] {
            assert_eq!(canonical_form(r.pair()), c0);
        }
        let reports = orbit_decompose(&rays);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].size, 6);
    }

    #[test]
    fn empty_census() {
        assert!(orbit_decompose(&[]).is_empty());
    }

    #[test]
    fn k_commutes_with_digit_permutations() {
        // [K, U_σ] = 0 for every σ ∈ S₄
        use crate::exact_arith::RatMatrix;
        use num_traits::One;
        let k = k_matrix();
        for sigma in (0..4usize).permutations(4) {
            let mut u = RatMatrix::zero(4, 4);
            for (j, &i) in sigma.iter().enumerate() {
                u[(i, j)] = Rat::one();
            }
            assert_eq!(k.mul(&u), u.mul(&k));
        }
    }
}
