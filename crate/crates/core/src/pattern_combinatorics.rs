//! Combinatorics of 8-zero patterns in 4×4 matrices: integer partitions of 8,
//! Kostka numbers by tableau enumeration, the Brualdi count of (0,1)-matrices
//! with prescribed row/column sums, explicit pattern enumeration and
//! classification up to row/column permutation, and the box/diagonal/cross
//! orthogonality rules as testable predicates.

use crate::exact_arith::{Rat, RatMatrix};
use crate::pauli_maps::SpectrumPair;
use itertools::Itertools;
use num_traits::Zero;

#[derive(Debug, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, each ≤ 4, and sum to 8: {0:?}")]
    Invalid([u8; 4]),
}

/// A partition of 8 into at most four parts, each at most 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: [u8; 4],
}

impl Partition {
    pub fn new(parts: [u8; 4]) -> Result<Self, PartitionError> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        let sum: u8 = parts.iter().sum();
        if !decreasing || sum != 8 || parts.iter().any(|&p| p > 4) {
            return Err(PartitionError::Invalid(parts));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> [u8; 4] {
        self.parts
    }

    /// All eight partitions of 8 with ≤4 parts, each ≤4, largest first.
    pub fn universe() -> Vec<Partition> {
        [
            [4, 4, 0, 0],
            [4, 3, 1, 0],
            [4, 2, 2, 0],
            [4, 2, 1, 1],
            [3, 3, 2, 0],
            [3, 3, 1, 1],
            [3, 2, 2, 1],
            [2, 2, 2, 2],
        ]
        .into_iter()
        .map(|p| Partition::new(p).unwrap())
        .collect()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.parts;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Conjugate partition: r*_j = |{i : r_i ≥ j}|.
pub fn conjugate(p: &Partition) -> Partition {
    let mut out = [0u8; 4];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = p.parts.iter().filter(|&&r| r as usize >= j + 1).count() as u8;
    }
    Partition::new(out).expect("conjugation stays in the universe")
}

/// Majorization: prefix sums of `a` dominate those of `b` (totals both 8).
pub fn majorizes(a: &Partition, b: &Partition) -> bool {
    let mut pa = 0u8;
    let mut pb = 0u8;
    for k in 0..4 {
        pa += a.parts[k];
        pb += b.parts[k];
        if pa < pb {
            return false;
        }
    }
    true
}

/// Kostka number: semistandard Young tableaux of the given shape and content,
/// counted by exhaustive cell-by-cell filling (weakly increasing rows,
/// strictly increasing columns).
pub fn kostka(shape: &Partition, content: &Partition) -> u64 {
    let rows = shape.parts;
    let mut remaining = content.parts.map(|c| c as i8);
    let mut grid = [[0u8; 4]; 4];
    fill(&rows, &mut remaining, &mut grid, 0, 0)
}

fn fill(rows: &[u8; 4], remaining: &mut [i8; 4], grid: &mut [[u8; 4]; 4], i: usize, j: usize) -> u64 {
    if i == 4 {
        return 1;
    }
    if j >= rows[i] as usize {
        return fill(rows, remaining, grid, i + 1, 0);
    }
    let mut count = 0;
    let min_row = if j > 0 { grid[i][j - 1] } else { 1 };
    let min_col = if i > 0 && rows[i - 1] as usize > j { grid[i - 1][j] + 1 } else { 1 };
    for v in min_row.max(min_col)..=4 {
        if remaining[v as usize - 1] > 0 {
            remaining[v as usize - 1] -= 1;
            grid[i][j] = v;
            count += fill(rows, remaining, grid, i, j + 1);
            remaining[v as usize - 1] += 1;
        }
    }
    count
}

/// Number of 4×4 (0,1)-matrices with row sums r and column sums s:
/// Σ_{s ≼ λ ≼ r*} K_{λ*,r}·K_{λ,s}.
pub fn brualdi_count(r: &Partition, s: &Partition) -> u64 {
    let rstar = conjugate(r);
    Partition::universe()
        .iter()
        .filter(|lam| majorizes(lam, s) && majorizes(&rstar, lam))
        .map(|lam| kostka(&conjugate(lam), r) * kostka(lam, s))
        .sum()
}

/// A 4×4 (0,1)-matrix; row/column sums count the ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternMatrix {
    entries: [[u8; 4]; 4],
}

impl PatternMatrix {
    pub fn new(entries: [[u8; 4]; 4]) -> Self {
        assert!(
            entries.iter().flatten().all(|&e| e <= 1),
            "entries must be 0 or 1"
        );
        PatternMatrix { entries }
    }

    pub fn entries(&self) -> [[u8; 4]; 4] {
        self.entries
    }

    pub fn row_sums(&self) -> [u8; 4] {
        self.entries.map(|row| row.iter().sum())
    }

    pub fn col_sums(&self) -> [u8; 4] {
        let mut out = [0u8; 4];
        for row in &self.entries {
            for (j, &e) in row.iter().enumerate() {
                out[j] += e;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[j][i] = self.entries[i][j];
            }
        }
        PatternMatrix { entries: out }
    }

    /// Row-major bit packing with entry (0,0) in the most significant bit, so
    /// numeric order on the packed value is lexicographic order on the flat
    /// entry sequence.
    pub fn packed(&self) -> u16 {
        let mut out = 0u16;
        for i in 0..4 {
            for j in 0..4 {
                out |= (self.entries[i][j] as u16) << (15 - (4 * i + j));
            }
        }
        out
    }

    fn from_packed(packed: u16) -> Self {
        let mut entries = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                entries[i][j] = ((packed >> (15 - (4 * i + j))) & 1) as u8;
            }
        }
        PatternMatrix { entries }
    }

    /// Lexicographically minimal image over all 24×24 row/column permutations.
    pub fn canonical(&self) -> Self {
        let perms = perms4();
        let mut best = u16::MAX;
        for a in &perms {
            for b in &perms {
                let mut cand = 0u16;
                for i in 0..4 {
                    for j in 0..4 {
                        cand |= (self.entries[a[i]][b[j]] as u16) << (15 - (4 * i + j));
                    }
                }
                best = best.min(cand);
            }
        }
        PatternMatrix::from_packed(best)
    }
}

fn perms4() -> Vec<[usize; 4]> {
    (0..4usize).permutations(4).map(|p| [p[0], p[1], p[2], p[3]]).collect()
}

/// Exhaustive backtracking enumeration of the (0,1)-matrices with row sums r
/// and column sums s.
pub fn enumerate_patterns(r: &Partition, s: &Partition) -> Vec<PatternMatrix> {
    let mut out = Vec::new();
    let mut grid = [[0u8; 4]; 4];
    let mut col_left = s.parts;
    enumerate_rows(&r.parts, &mut col_left, &mut grid, 0, &mut out);
    out
}

fn enumerate_rows(
    rows: &[u8; 4],
    col_left: &mut [u8; 4],
    grid: &mut [[u8; 4]; 4],
    i: usize,
    out: &mut Vec<PatternMatrix>,
) {
    if i == 4 {
        if col_left.iter().all(|&c| c == 0) {
            out.push(PatternMatrix::new(*grid));
        }
        return;
    }
    let k = rows[i] as usize;
    for cols in (0..4usize).combinations(k) {
        if cols.iter().any(|&j| col_left[j] == 0) {
            continue;
        }
        grid[i] = [0; 4];
        for &j in &cols {
            grid[i][j] = 1;
            col_left[j] -= 1;
        }
        enumerate_rows(rows, col_left, grid, i + 1, out);
        for &j in &cols {
            col_left[j] += 1;
        }
    }
    grid[i] = [0; 4];
}

/// One canonical representative per row/column-permutation class, sorted.
pub fn classify_up_to_permutation(patterns: &[PatternMatrix]) -> Vec<PatternMatrix> {
    let mut reps: Vec<PatternMatrix> = patterns.iter().map(|p| p.canonical()).collect();
    reps.sort();
    reps.dedup();
    reps
}

/// Class count when transpose-related classes are additionally merged.
pub fn count_classes_merging_transposes(patterns: &[PatternMatrix]) -> usize {
    let mut keys: Vec<u16> = patterns
        .iter()
        .map(|p| p.canonical().packed().min(p.transpose().canonical().packed()))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len()
}

fn p_as_matrix(pair: &SpectrumPair) -> RatMatrix {
    RatMatrix::new(4, 4, pair.p().to_vec())
}

fn q_as_matrix(pair: &SpectrumPair) -> RatMatrix {
    RatMatrix::new(4, 4, pair.q().to_vec())
}

/// Box rule: ⟨{i,j}|P|{k,l}⟩ = 0 versus ⟨{i,j}ᶜ|Q|{k,l}ᶜ⟩ = 0, with 1-based
/// indices i<j and k<l. Equal booleans on every cone member.
pub fn rule_box(pair: &SpectrumPair, i: usize, j: usize, k: usize, l: usize) -> (bool, bool) {
    assert_eq!(pair.n(), 2, "box rule requires order 2");
    assert!(
        (1..=4).contains(&i) && (1..=4).contains(&j) && i < j,
        "need 1 ≤ i < j ≤ 4"
    );
    assert!(
        (1..=4).contains(&k) && (1..=4).contains(&l) && k < l,
        "need 1 ≤ k < l ≤ 4"
    );
    let p = p_as_matrix(pair);
    let q = q_as_matrix(pair);
    let block = |m: &RatMatrix, rows: &[usize], cols: &[usize]| -> Rat {
        let mut sum = Rat::zero();
        for &r in rows {
            for &c in cols {
                sum += &m[(r - 1, c - 1)];
            }
        }
        sum
    };
    let comp = |a: usize, b: usize| -> Vec<usize> { (1..=4).filter(|&x| x != a && x != b).collect() };
    (
        block(&p, &[i, j], &[k, l]).is_zero(),
        block(&q, &comp(i, j), &comp(k, l)).is_zero(),
    )
}

fn perm_trace(m: &RatMatrix, sigma: &[usize; 4]) -> Rat {
    // Tr(U_σ M) = Σ_k M[k, σ(k)] with σ 0-based
    (0..4).map(|k| m[(k, sigma[k])].clone()).fold(Rat::zero(), |acc, v| acc + v)
}

/// Diagonal rule: Tr(U_σ P) = 0 versus Tr(U_σ Q) = 0.
pub fn rule_diagonal(pair: &SpectrumPair, sigma: &[usize; 4]) -> (bool, bool) {
    assert_eq!(pair.n(), 2, "diagonal rule requires order 2");
    (
        perm_trace(&p_as_matrix(pair), sigma).is_zero(),
        perm_trace(&q_as_matrix(pair), sigma).is_zero(),
    )
}

fn u_sigma(sigma: &[usize; 4]) -> RatMatrix {
    let mut m = RatMatrix::zero(4, 4);
    for (j, &img) in sigma.iter().enumerate() {
        m[(img, j)] = num_traits::One::one();
    }
    m
}

/// Cross rule: Tr(U_{σ₁}·C·U_{σ₂}·P) = 0 versus Tr(U_{σ₁}·Cᵀ·U_{σ₂}·Q) = 0
/// with C the reference cross matrix; side = 1 exchanges the roles of P and Q.
pub fn rule_cross(
    pair: &SpectrumPair,
    sigma1: &[usize; 4],
    sigma2: &[usize; 4],
    side: u8,
) -> (bool, bool) {
    assert_eq!(pair.n(), 2, "cross rule requires order 2");
    assert!(side <= 1, "side must be 0 or 1");
    let cross = RatMatrix::from_ints(
        4,
        4,
        &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0],
        1,
    );
    let u1 = u_sigma(sigma1);
    let u2 = u_sigma(sigma2);
    let (first, second) = if side == 0 {
        (p_as_matrix(pair), q_as_matrix(pair))
    } else {
        (q_as_matrix(pair), p_as_matrix(pair))
    };
    (
        u1.mul(&cross).mul(&u2).mul(&first).trace().is_zero(),
        u1.mul(&cross.transpose()).mul(&u2).mul(&second).trace().is_zero(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::reference_rays_n2;

    fn p(parts: [u8; 4]) -> Partition {
        Partition::new(parts).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new([4, 4, 0, 0]).is_ok());
        assert!(Partition::new([0, 4, 4, 0]).is_err());
        assert!(Partition::new([5, 3, 0, 0]).is_err());
        assert!(Partition::new([4, 3, 0, 0]).is_err());
        assert_eq!(Partition::universe().len(), 8);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&p([4, 4, 0, 0])), p([2, 2, 2, 2]));
        assert_eq!(conjugate(&p([4, 3, 1, 0])), p([3, 2, 2, 1]));
        assert_eq!(conjugate(&p([2, 2, 2, 2])), p([4, 4, 0, 0]));
        for q in Partition::universe() {
            assert_eq!(conjugate(&conjugate(&q)), q);
        }
    }

    #[test]
    fn majorization_examples() {
        for q in Partition::universe() {
            assert!(majorizes(&q, &q));
        }
        assert!(majorizes(&p([4, 4, 0, 0]), &p([2, 2, 2, 2])));
        assert!(!majorizes(&p([4, 2, 1, 1]), &p([3, 3, 2, 0])));
        assert!(!majorizes(&p([3, 3, 2, 0]), &p([4, 2, 1, 1])));
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p([4, 4, 0, 0]), &p([4, 4, 0, 0])), 1);
        assert_eq!(kostka(&p([4, 3, 1, 0]), &p([2, 2, 2, 2])), 7);
        assert_eq!(kostka(&p([3, 2, 2, 1]), &p([2, 2, 2, 2])), 3);
        assert_eq!(kostka(&p([2, 2, 2, 2]), &p([4, 4, 0, 0])), 0);
    }

    #[test]
    fn brualdi_examples() {
        assert_eq!(brualdi_count(&p([2, 2, 2, 2]), &p([2, 2, 2, 2])), 90);
        assert_eq!(brualdi_count(&p([4, 4, 0, 0]), &p([2, 2, 2, 2])), 1);
        assert_eq!(brualdi_count(&p([3, 2, 2, 1]), &p([3, 3, 1, 1])), 12);
        assert_eq!(brualdi_count(&p([4, 4, 0, 0]), &p([4, 4, 0, 0])), 0);
    }

    #[test]
    fn enumeration_matches_counts() {
        assert_eq!(enumerate_patterns(&p([2, 2, 2, 2]), &p([2, 2, 2, 2])).len(), 90);
        assert_eq!(enumerate_patterns(&p([4, 4, 0, 0]), &p([4, 4, 0, 0])).len(), 0);
        assert_eq!(enumerate_patterns(&p([4, 2, 2, 0]), &p([3, 3, 1, 1])).len(), 1);
        for m in enumerate_patterns(&p([3, 3, 1, 1]), &p([3, 2, 2, 1])) {
            assert_eq!(m.row_sums(), [3, 3, 1, 1]);
            assert_eq!(m.col_sums(), [3, 2, 2, 1]);
        }
    }

    #[test]
    fn classification_examples() {
        let cell = enumerate_patterns(&p([2, 2, 2, 2]), &p([2, 2, 2, 2]));
        assert_eq!(classify_up_to_permutation(&cell).len(), 2);
        let cell = enumerate_patterns(&p([4, 4, 0, 0]), &p([2, 2, 2, 2]));
        assert_eq!(classify_up_to_permutation(&cell).len(), 1);
        let cell = enumerate_patterns(&p([3, 3, 1, 1]), &p([3, 2, 2, 1]));
        assert_eq!(classify_up_to_permutation(&cell).len(), 3);
    }

    #[test]
    fn canonical_is_permutation_invariant() {
        let m = PatternMatrix::new([
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [1, 1, 1, 0],
        ]);
        let swapped = PatternMatrix::new([
            [0, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 1, 0],
            [1, 1, 1, 0],
        ]);
        assert_eq!(m.canonical(), swapped.canonical());
        assert_eq!(m.canonical().canonical(), m.canonical());
    }

    #[test]
    fn rules_on_reference_rays() {
        let [bx, diag, cross] = reference_rays_n2();
        assert_eq!(rule_box(bx.pair(), 3, 4, 3, 4), (true, true));
        assert_eq!(rule_box(diag.pair(), 1, 2, 3, 4), (true, true));
        let id = [0usize, 1, 2, 3];
        assert_eq!(rule_diagonal(diag.pair(), &id), (false, false));
        assert_eq!(rule_diagonal(bx.pair(), &id), (false, false));
        // the reference cross annihilates its own transposed witness
        let (a, b) = rule_cross(cross.pair(), &id, &id, 1);
        assert_eq!(a, b);
    }

    #[test]
    fn rules_agree_on_census() {
        let rays = crate::cone_geometry::enumerate_rays(2);
        let perms = super::perms4();
        for ray in rays.iter().step_by(7) {
            for (i, j, k, l) in [(1, 2, 1, 2), (1, 3, 2, 4), (3, 4, 1, 2)] {
                let (a, b) = rule_box(ray.pair(), i, j, k, l);
                assert_eq!(a, b);
            }
            for sigma in perms.iter().step_by(5) {
                let (a, b) = rule_diagonal(ray.pair(), sigma);
                assert_eq!(a, b);
                for side in [0, 1] {
                    let (a, b) = rule_cross(ray.pair(), sigma, &[1, 0, 3, 2], side);
                    assert_eq!(a, b, "cross rule failed on {:?} side {side}", ray.p_ints());
                }
            }
        }
    }
}
