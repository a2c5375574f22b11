//! Root systems and finite-dimensional representation data for the
//! simple compact Lie algebras: Weyl dimension formula, Freudenthal
//! weight multiplicities, self-conjugacy, and reality types.
//!
//! Conventions. Simple roots are indexed 0-based following the standard
//! Bourbaki numbering. The Cartan matrix is stored with rows giving the
//! simple roots in the fundamental-weight basis: `a[i][j] = <alpha_i,
//! alpha_j^vee>`. Weights are coordinate vectors in the fundamental-weight
//! basis; dominant weights have non-negative coordinates (Dynkin labels).

use crate::linalg::{int_det, rat_rref};
use crate::scalar::Int;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Killing-Cartan series label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootDataError {
    /// Series/rank combination outside the supported bounds
    /// (A r>=1, B r>=2, C r>=3, D r>=4, E 6..8, F 4, G 2).
    InvalidRank { series: Series, rank: usize },
    RankMismatch { expected: usize, got: usize },
    NegativeLabel,
}

impl fmt::Display for RootDataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootDataError::InvalidRank { series, rank } => {
                write!(f, "invalid rank {rank} for series {series}")
            }
            RootDataError::RankMismatch { expected, got } => {
                write!(f, "weight has {got} labels, algebra has rank {expected}")
            }
            RootDataError::NegativeLabel => write!(f, "dominant weight labels must be >= 0"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RootDataError {}

/// A simple compact Lie algebra, identified by series and rank.
///
/// Rank bounds exclude the low-rank duplicates (B1 = C1 = A1, C2 = B2,
/// D3 = A3, D2 not simple); use [`SimpleAlgebraId::canonical`] to map a
/// raw series/rank pair to its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleAlgebraId {
    series: Series,
    rank: usize,
}

impl SimpleAlgebraId {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootDataError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleAlgebraId { series, rank })
        } else {
            Err(RootDataError::InvalidRank { series, rank })
        }
    }

    /// Canonical representative of a possibly out-of-bounds series/rank
    /// pair under the low-rank isomorphisms. Returns `None` when the
    /// pair does not name a simple algebra (such as D1, D2).
    pub fn canonical(series: Series, rank: usize) -> Option<Self> {
        match (series, rank) {
            (Series::B, 1) | (Series::C, 1) => Self::new(Series::A, 1).ok(),
            (Series::C, 2) => Self::new(Series::B, 2).ok(),
            (Series::D, 3) => Self::new(Series::A, 3).ok(),
            (Series::D, 0..=2) => None,
            _ => Self::new(series, rank).ok(),
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Outer automorphism group of the compact simple algebra.
    pub fn outer_group(&self) -> OuterGroup {
        match (self.series, self.rank) {
            (Series::A, 1) => OuterGroup::Trivial,
            (Series::A, _) => OuterGroup::Z2,
            (Series::B, _) | (Series::C, _) => OuterGroup::Trivial,
            (Series::D, 4) => OuterGroup::S3,
            (Series::D, _) => OuterGroup::Z2,
            (Series::E, 6) => OuterGroup::Z2,
            _ => OuterGroup::Trivial,
        }
    }
}

impl fmt::Display for SimpleAlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OuterGroup {
    Trivial,
    Z2,
    S3,
}

/// Frobenius-Schur reality class of an irreducible representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reality {
    Complex,
    Real,
    Quaternionic,
}

impl Reality {
    /// Frobenius-Schur indicator: 0, +1, -1.
    pub fn indicator(&self) -> i8 {
        match self {
            Reality::Complex => 0,
            Reality::Real => 1,
            Reality::Quaternionic => -1,
        }
    }
}

impl fmt::Display for Reality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reality::Complex => "complex",
            Reality::Real => "real",
            Reality::Quaternionic => "quaternionic",
        };
        write!(f, "{s}")
    }
}

/// Dominant weight in Dynkin-label coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HighestWeight {
    pub labels: Vec<i64>,
}

impl HighestWeight {
    pub fn fundamental(rank: usize, index: usize) -> Self {
        let mut labels = vec![0; rank];
        labels[index] = 1;
        HighestWeight { labels }
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// An irreducible representation together with its basic invariants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IrrepInfo {
    pub algebra: SimpleAlgebraId,
    pub weight: HighestWeight,
    pub dim: u64,
    pub reality: Reality,
}

fn checked_labels<'a>(
    a: SimpleAlgebraId,
    w: &'a HighestWeight,
) -> Result<&'a [i64], RootDataError> {
    if w.labels.len() != a.rank() {
        return Err(RootDataError::RankMismatch {
            expected: a.rank(),
            got: w.labels.len(),
        });
    }
    if w.labels.iter().any(|&x| x < 0) {
        return Err(RootDataError::NegativeLabel);
    }
    Ok(&w.labels)
}

/// Precomputed data for one root system. Construction is cheap; callers
/// in hot loops should reuse one instance per algebra.
pub struct RootSystem {
    id: SimpleAlgebraId,
    /// Row i = simple root alpha_i in the fundamental-weight basis.
    cartan: Vec<Vec<i64>>,
    /// Positive roots as coefficient vectors over the simple roots.
    pos_roots: Vec<Vec<i64>>,
    /// Positive coroots as coefficient vectors over the simple coroots.
    pos_coroots: Vec<Vec<i64>>,
    /// Coordinate sums of the positive coroots: pairing with 2 rho^vee.
    coroot_sums: Vec<i64>,
    inv_cartan: Vec<Vec<BigRational>>,
    /// det(cartan) * (omega_i, omega_j): integer symmetric Gram matrix.
    scaled_gram: Vec<Vec<i128>>,
    cartan_det: i64,
}

fn series_data(a: SimpleAlgebraId) -> (Vec<(usize, usize)>, Vec<i64>) {
    let r = a.rank();
    let chain = |upto: usize| (0..upto).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match a.series() {
        Series::A => (chain(r - 1), vec![1; r]),
        Series::B => {
            let mut d = vec![2; r];
            d[r - 1] = 1;
            (chain(r - 1), d)
        }
        Series::C => {
            let mut d = vec![1; r];
            d[r - 1] = 2;
            (chain(r - 1), d)
        }
        Series::D => {
            let mut e = chain(r - 2);
            e.push((r - 3, r - 1));
            (e, vec![1; r])
        }
        Series::E => {
            // Chain 0-2-3-4-...-(r-1) with node 1 attached to node 3.
            let mut e = vec![(0, 2), (1, 3)];
            for i in 2..r - 1 {
                e.push((i, i + 1));
            }
            (e, vec![1; r])
        }
        Series::F => (chain(3), vec![2, 2, 1, 1]),
        Series::G => (vec![(0, 1)], vec![3, 1]),
    }
}

impl RootSystem {
    pub fn new(id: SimpleAlgebraId) -> Self {
        let r = id.rank();
        let (edges, half_lengths) = series_data(id);
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            cartan[i][i] = 2;
        }
        for &(i, j) in &edges {
            let m = half_lengths[i].max(half_lengths[j]);
            cartan[i][j] = -m / half_lengths[j];
            cartan[j][i] = -m / half_lengths[i];
        }

        let pos_roots = positive_roots(&cartan);
        // Symmetrized form on the root lattice: (alpha_i, alpha_j).
        let mut sym = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                sym[i][j] = cartan[i][j] * half_lengths[j];
            }
        }
        let mut pos_coroots = Vec::with_capacity(pos_roots.len());
        for m in &pos_roots {
            let mut norm2 = 0i64;
            for i in 0..r {
                for j in 0..r {
                    norm2 += m[i] * m[j] * sym[i][j];
                }
            }
            debug_assert!(norm2 > 0 && norm2 % 2 == 0);
            let half = norm2 / 2;
            let c: Vec<i64> = (0..r)
                .map(|i| {
                    let num = m[i] * half_lengths[i];
                    debug_assert_eq!(num % half, 0);
                    num / half
                })
                .collect();
            pos_coroots.push(c);
        }
        let coroot_sums: Vec<i64> = (0..r)
            .map(|i| pos_coroots.iter().map(|c| c[i]).sum())
            .collect();

        let inv_cartan = invert_integer_matrix(&cartan);
        let cartan_det = {
            let m: Vec<Vec<Int>> = cartan
                .iter()
                .map(|row| row.iter().map(|&x| Int::from_i64(x)).collect())
                .collect();
            int_det(m).to_i128().expect("small determinant") as i64
        };
        let mut scaled_gram = vec![vec![0i128; r]; r];
        for i in 0..r {
            for j in 0..r {
                let g = &inv_cartan[i][j]
                    * BigRational::from_integer((half_lengths[j] * cartan_det).into());
                debug_assert!(g.is_integer());
                scaled_gram[i][j] = g.to_integer().to_i128().expect("gram entry fits i128");
            }
        }
        for i in 0..r {
            for j in 0..r {
                debug_assert_eq!(scaled_gram[i][j], scaled_gram[j][i]);
            }
        }

        RootSystem {
            id,
            cartan,
            pos_roots,
            pos_coroots,
            coroot_sums,
            inv_cartan,
            scaled_gram,
            cartan_det,
        }
    }

    pub fn id(&self) -> SimpleAlgebraId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &[Vec<BigRational>] {
        &self.inv_cartan
    }

    pub fn positive_root_count(&self) -> usize {
        self.pos_roots.len()
    }

    /// Dimension of the algebra itself.
    pub fn dim_algebra(&self) -> usize {
        self.rank() + 2 * self.pos_roots.len()
    }

    /// Order of the center of the simply connected group.
    pub fn center_order(&self) -> u64 {
        self.cartan_det as u64
    }

    /// Pairing of a weight with twice the half-sum of positive coroots.
    pub fn height_pairing(&self, labels: &[i64]) -> i64 {
        labels
            .iter()
            .zip(self.coroot_sums.iter())
            .map(|(l, s)| l * s)
            .sum()
    }

    /// Weyl dimension formula, exact integer arithmetic.
    pub fn dim(&self, labels: &[i64]) -> BigUint {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for c in &self.pos_coroots {
            let mut top = 0i64;
            let mut bot = 0i64;
            for (ci, li) in c.iter().zip(labels.iter()) {
                top += ci * (li + 1);
                bot += ci;
            }
            num *= BigUint::from(top as u64);
            den *= BigUint::from(bot as u64);
        }
        let q = &num / &den;
        assert!((num - &q * den).is_zero(), "Weyl dimension must divide exactly");
        q
    }

    /// Scaled invariant inner product of two weights given in the
    /// fundamental-weight basis. The common scale factor det(cartan)
    /// cancels in every quotient taken here.
    fn inner(&self, x: &[i64], y: &[i64]) -> i128 {
        let r = self.rank();
        let mut acc = 0i128;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as i128;
            for j in 0..r {
                if y[j] != 0 {
                    acc += xi * self.scaled_gram[i][j] * (y[j] as i128);
                }
            }
        }
        acc
    }

    /// Root in the fundamental-weight basis from its simple-root
    /// coefficients.
    fn root_in_weight_basis(&self, m: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|j| (0..r).map(|i| m[i] * self.cartan[i][j]).sum())
            .collect()
    }

    /// Full weight system with multiplicities, keyed by weight
    /// coordinates in the fundamental-weight basis (Freudenthal
    /// recursion, level by level).
    pub fn weights(&self, labels: &[i64]) -> BTreeMap<Vec<i64>, u64> {
        let r = self.rank();
        let lam = labels.to_vec();
        let lam_rho: Vec<i64> = lam.iter().map(|x| x + 1).collect();
        let lam_rho_norm = self.inner(&lam_rho, &lam_rho);
        let roots_omega: Vec<Vec<i64>> = self
            .pos_roots
            .iter()
            .map(|m| self.root_in_weight_basis(m))
            .collect();

        // Keyed by depth coordinates n with mu = lambda - sum n_i alpha_i.
        let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        mult.insert(vec![0i64; r], 1);
        let mut level: Vec<Vec<i64>> = vec![vec![0i64; r]];
        let depth_cap = self.height_pairing(&lam) + 1;
        let mut depth = 0i64;
        loop {
            depth += 1;
            assert!(depth <= depth_cap + 1, "weight recursion failed to close");
            let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
            for n in &level {
                for i in 0..r {
                    let mut next = n.clone();
                    next[i] += 1;
                    candidates.insert(next);
                }
            }
            let mut next_level = Vec::new();
            for n in candidates {
                let mu = self.weight_at_depth(&lam, &n);
                let mut num = 0i128;
                for (m_alpha, alpha_w) in self.pos_roots.iter().zip(roots_omega.iter()) {
                    let mut k = 1i64;
                    loop {
                        let mut nk = n.clone();
                        let mut ok = true;
                        for (a, b) in nk.iter_mut().zip(m_alpha.iter()) {
                            *a -= k * b;
                            if *a < 0 {
                                ok = false;
                            }
                        }
                        if !ok {
                            break;
                        }
                        if let Some(&m) = mult.get(&nk) {
                            let mut mu_k = mu.clone();
                            for (x, a) in mu_k.iter_mut().zip(alpha_w.iter()) {
                                *x += k * a;
                            }
                            num += (m as i128) * self.inner(&mu_k, alpha_w);
                        }
                        k += 1;
                    }
                }
                if num == 0 {
                    continue;
                }
                let mu_rho: Vec<i64> = mu.iter().map(|x| x + 1).collect();
                let den = lam_rho_norm - self.inner(&mu_rho, &mu_rho);
                assert!(den > 0, "Freudenthal denominator must be positive");
                let twice = 2 * num;
                assert_eq!(twice % den, 0, "Freudenthal multiplicity must be integral");
                let m = (twice / den) as u64;
                mult.insert(n.clone(), m);
                next_level.push(n);
            }
            if next_level.is_empty() {
                break;
            }
            level = next_level;
        }

        mult.into_iter()
            .map(|(n, m)| (self.weight_at_depth(&lam, &n), m))
            .collect()
    }

    fn weight_at_depth(&self, lam: &[i64], n: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|j| lam[j] - (0..r).map(|i| n[i] * self.cartan[i][j]).sum::<i64>())
            .collect()
    }

    /// Linear height functional used to locate highest weights inside
    /// weight multisets: scaled pairing with rho.
    fn height_functional(&self, w: &[i64]) -> i128 {
        let r = self.rank();
        let mut acc = 0i128;
        for i in 0..r {
            if w[i] != 0 {
                let s: i128 = (0..r).map(|j| self.scaled_gram[i][j]).sum();
                acc += (w[i] as i128) * s;
            }
        }
        acc
    }
}

/// Closure of the simple roots under root-string addition; returns all
/// positive roots as coefficient vectors.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut level: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        set.insert(e.clone());
        level.push(e);
    }
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..r {
                let mut gamma = beta.clone();
                gamma[i] += 1;
                if set.contains(&gamma) {
                    continue;
                }
                // beta + alpha_i is a root iff p > <beta, alpha_i^vee>,
                // where p counts how far the string extends below beta.
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0i64;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if down[i] < 0 || !set.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing > 0 {
                    set.insert(gamma.clone());
                    next.push(gamma);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Vec<i64>> = set.into_iter().collect();
    out.sort_by_key(|m| (m.iter().sum::<i64>(), m.clone()));
    out
}

fn invert_integer_matrix(a: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let r = a.len();
    let mut aug: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..2 * r)
                .map(|j| {
                    if j < r {
                        BigRational::from_integer(a[i][j].into())
                    } else if j - r == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let pivots = rat_rref(&mut aug);
    assert_eq!(pivots, (0..r).collect::<Vec<_>>(), "matrix must be invertible");
    aug.into_iter().map(|row| row[r..].to_vec()).collect()
}

/// Label permutation realizing the weight conjugation lambda -> -w0(lambda).
fn conjugation_permutation(a: SimpleAlgebraId) -> Vec<usize> {
    let r = a.rank();
    let id: Vec<usize> = (0..r).collect();
    match (a.series(), r) {
        (Series::A, _) => (0..r).rev().collect(),
        (Series::D, _) if r % 2 == 1 => {
            let mut p = id;
            p.swap(r - 2, r - 1);
            p
        }
        (Series::E, 6) => vec![5, 1, 4, 3, 2, 0],
        _ => id,
    }
}

/// All diagram automorphisms of the algebra as label permutations.
pub fn diagram_automorphisms(a: SimpleAlgebraId) -> Vec<Vec<usize>> {
    let r = a.rank();
    let id: Vec<usize> = (0..r).collect();
    match (a.series(), r) {
        (Series::A, n) if n >= 2 => vec![id, (0..r).rev().collect()],
        (Series::D, 4) => {
            // Node 1 is central; the outer nodes 0, 2, 3 may be permuted
            // arbitrarily.
            let outer = [0usize, 2, 3];
            let mut out = Vec::new();
            let perms3 = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            for p in perms3 {
                let mut perm = vec![0usize; 4];
                perm[1] = 1;
                for (k, &src) in outer.iter().enumerate() {
                    perm[src] = outer[p[k]];
                }
                out.push(perm);
            }
            out
        }
        (Series::D, n) if n >= 5 => {
            let mut sw = id.clone();
            sw.swap(r - 2, r - 1);
            vec![id, sw]
        }
        (Series::E, 6) => vec![id, vec![5, 1, 4, 3, 2, 0]],
        _ => vec![id],
    }
}

/// Conjugate (dual) highest weight.
pub fn conjugate_weight(
    a: SimpleAlgebraId,
    w: &HighestWeight,
) -> Result<HighestWeight, RootDataError> {
    let labels = checked_labels(a, w)?;
    let perm = conjugation_permutation(a);
    let mut out = vec![0i64; labels.len()];
    for (i, &x) in labels.iter().enumerate() {
        out[perm[i]] = x;
    }
    Ok(HighestWeight { labels: out })
}

/// Dimension of the irreducible representation with the given highest
/// weight (Weyl dimension formula, exact arithmetic).
pub fn dimension(a: SimpleAlgebraId, w: &HighestWeight) -> Result<BigUint, RootDataError> {
    let labels = checked_labels(a, w)?;
    Ok(RootSystem::new(a).dim(labels))
}

/// Reality class of the irreducible representation: complex when not
/// self-conjugate, otherwise real or quaternionic by the parity of the
/// pairing with twice the half-sum of positive coroots.
pub fn reality_type(a: SimpleAlgebraId, w: &HighestWeight) -> Result<Reality, RootDataError> {
    let labels = checked_labels(a, w)?;
    let conj = conjugate_weight(a, w)?;
    if conj.labels != labels {
        return Ok(Reality::Complex);
    }
    let pairing = RootSystem::new(a).height_pairing(labels);
    Ok(if pairing % 2 == 0 {
        Reality::Real
    } else {
        Reality::Quaternionic
    })
}

/// Reality class of a tensor product from factor classes: any complex
/// factor makes the product complex here (the factors considered in the
/// enumeration never mix complex with self-dual); otherwise the
/// indicators multiply.
pub fn reality_of_tensor(factors: &[Reality]) -> Reality {
    if factors.iter().any(|f| *f == Reality::Complex) {
        return Reality::Complex;
    }
    let quats = factors
        .iter()
        .filter(|f| **f == Reality::Quaternionic)
        .count();
    if quats % 2 == 1 {
        Reality::Quaternionic
    } else {
        Reality::Real
    }
}

/// Multiplicity of `target` (fundamental-weight coordinates) in the
/// irreducible representation with highest weight `w`.
pub fn weight_multiplicity(
    a: SimpleAlgebraId,
    w: &HighestWeight,
    target: &[i64],
) -> Result<u64, RootDataError> {
    let labels = checked_labels(a, w)?;
    if target.len() != a.rank() {
        return Err(RootDataError::RankMismatch {
            expected: a.rank(),
            got: target.len(),
        });
    }
    let ws = RootSystem::new(a).weights(labels);
    Ok(ws.get(target).copied().unwrap_or(0))
}

/// Full weight system of the irreducible representation, keyed by
/// fundamental-weight coordinates.
pub fn weight_system(
    a: SimpleAlgebraId,
    w: &HighestWeight,
) -> Result<BTreeMap<Vec<i64>, u64>, RootDataError> {
    let labels = checked_labels(a, w)?;
    Ok(RootSystem::new(a).weights(labels))
}

/// Decomposes a finite weight multiset (with multiplicities) into
/// irreducible highest weights by repeated peeling of a maximal weight.
/// Panics if the multiset is not a genuine representation weight set.
pub fn decompose_weight_multiset(
    a: SimpleAlgebraId,
    mut multiset: BTreeMap<Vec<i64>, u64>,
) -> Vec<(Vec<i64>, u64)> {
    let rs = RootSystem::new(a);
    let mut out: Vec<(Vec<i64>, u64)> = Vec::new();
    multiset.retain(|_, m| *m > 0);
    while !multiset.is_empty() {
        let top = multiset
            .iter()
            .max_by(|(wa, _), (wb, _)| {
                rs.height_functional(wa)
                    .cmp(&rs.height_functional(wb))
                    .then(wa.cmp(wb))
            })
            .map(|(w, _)| w.clone())
            .expect("nonempty");
        assert!(
            top.iter().all(|&x| x >= 0),
            "maximal weight of a representation multiset must be dominant"
        );
        let m = multiset[&top];
        for (w, c) in rs.weights(&top) {
            let entry = multiset
                .get_mut(&w)
                .expect("weight system must be contained in the multiset");
            assert!(*entry >= m * c, "multiset is not a sum of weight systems");
            *entry -= m * c;
        }
        multiset.retain(|_, v| *v > 0);
        out.push((top, m));
    }
    out.sort();
    out
}

fn rank_range(series: Series, cap: usize) -> Vec<usize> {
    let lo = match series {
        Series::A => 1,
        Series::B => 2,
        Series::C => 3,
        Series::D => 4,
        Series::E => 6,
        Series::F => 4,
        Series::G => 2,
    };
    let hi = match series {
        Series::E => 8.min(cap),
        Series::F => 4.min(cap),
        Series::G => 2.min(cap),
        _ => cap,
    };
    if hi < lo {
        Vec::new()
    } else {
        match series {
            Series::F => vec![4],
            Series::G => vec![2],
            _ => (lo..=hi).collect(),
        }
    }
}

/// Lower bound for the dimension of a nontrivial irrep of `a`, restricted
/// to self-dual ones when `kind` is real or quaternionic. Used to discard
/// whole rank ranges before running any weight search.
fn smallest_admissible_dim(a: SimpleAlgebraId, kind: Reality) -> u128 {
    let r = a.rank() as u128;
    match a.series() {
        Series::A => {
            if kind == Reality::Complex {
                r + 1
            } else {
                // A nonzero palindromic weight dominates either the adjoint
                // weight or, at odd rank, the middle fundamental weight, and
                // dimension is monotone under entrywise domination.
                let adjoint = r * (r + 2);
                if r % 2 == 1 && r < 80 {
                    let mut binom = 1u128;
                    for i in 0..(r + 1) / 2 {
                        binom = binom * (r + 1 - i) / (i + 1);
                    }
                    adjoint.min(binom)
                } else {
                    adjoint
                }
            }
        }
        Series::B => {
            if r == 2 {
                4
            } else {
                2 * r + 1
            }
        }
        Series::C => 2 * r,
        Series::D => {
            let spin = if r >= 64 { u128::MAX } else { 1u128 << (r - 1) };
            (2 * r).min(spin)
        }
        Series::E => match a.rank() {
            6 => 27,
            7 => 56,
            _ => 248,
        },
        Series::F => 26,
        Series::G => 7,
    }
}

/// Complete list of nontrivial irreducible representations with bounded
/// dimension and the requested reality class, over all simple algebras
/// within the rank bounds. Deterministic order: series, rank, labels.
pub fn enumerate_selfdual_irreps(kind: Reality, max_dim: u64) -> Vec<IrrepInfo> {
    let mut out: Vec<IrrepInfo> = Vec::new();
    let bound = BigUint::from(max_dim);
    for series in [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ] {
        // Every nontrivial irrep of a rank-r algebra has dimension > r.
        let cap = max_dim.saturating_sub(1) as usize;
        for rank in rank_range(series, cap) {
            let a = SimpleAlgebraId::new(series, rank).expect("in-range");
            if kind == Reality::Complex {
                let id: Vec<usize> = (0..rank).collect();
                if conjugation_permutation(a) == id {
                    continue;
                }
            }
            if smallest_admissible_dim(a, kind) > max_dim as u128 {
                continue;
            }
            let rs = RootSystem::new(a);
            let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
            let zero = vec![0i64; rank];
            seen.insert(zero.clone());
            let mut queue = vec![zero];
            while let Some(w) = queue.pop() {
                for i in 0..rank {
                    let mut next = w.clone();
                    next[i] += 1;
                    if seen.contains(&next) {
                        continue;
                    }
                    if rs.dim(&next) <= bound {
                        seen.insert(next.clone());
                        queue.push(next);
                    }
                }
            }
            for labels in seen {
                if labels.iter().all(|&x| x == 0) {
                    continue;
                }
                let w = HighestWeight {
                    labels: labels.clone(),
                };
                let reality = reality_type(a, &w).expect("validated");
                if reality != kind {
                    continue;
                }
                let dim = rs.dim(&labels).to_u64().expect("bounded dimension");
                out.push(IrrepInfo {
                    algebra: a,
                    weight: w,
                    dim,
                    reality,
                });
            }
        }
    }
    out.sort_by(|x, y| {
        (x.algebra, &x.weight.labels).cmp(&(y.algebra, &y.weight.labels))
    });
    out
}

/// Order of the image of the center of the simply connected group under
/// the central character of the given highest weight: the values on the
/// center generators are sums of inverse-Cartan entries weighted by the
/// labels, read modulo 1.
pub fn central_character_order(
    a: SimpleAlgebraId,
    w: &HighestWeight,
) -> Result<u64, RootDataError> {
    let labels = checked_labels(a, w)?;
    let rs = RootSystem::new(a);
    let r = a.rank();
    let mut order = 1u64;
    for j in 0..r {
        let mut v = BigRational::zero();
        for i in 0..r {
            if labels[i] != 0 {
                v += &rs.inverse_cartan()[i][j] * BigRational::from_integer(labels[i].into());
            }
        }
        // Denominator of v mod 1 = order of this generator's value in Q/Z.
        let den = v.denom().to_u64().expect("small denominator");
        order = num_integer::lcm(order, den);
    }
    Ok(order)
}

/// String rendering "series+rank" plus labels, used in diagnostics.
pub fn irrep_name(a: SimpleAlgebraId, w: &HighestWeight) -> String {
    use alloc::format;
    format!("{a}{w}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(series: Series, rank: usize) -> SimpleAlgebraId {
        SimpleAlgebraId::new(series, rank).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            (id(Series::A, 3), 6),
            (id(Series::B, 3), 9),
            (id(Series::C, 3), 9),
            (id(Series::D, 4), 12),
            (id(Series::G, 2), 6),
            (id(Series::F, 4), 24),
            (id(Series::E, 6), 36),
            (id(Series::E, 7), 63),
            (id(Series::E, 8), 120),
        ];
        for (a, count) in cases {
            assert_eq!(RootSystem::new(a).positive_root_count(), count, "{a}");
        }
    }

    #[test]
    fn algebra_dimensions() {
        let cases = [
            (id(Series::A, 2), 8),
            (id(Series::B, 2), 10),
            (id(Series::C, 3), 21),
            (id(Series::D, 6), 66),
            (id(Series::G, 2), 14),
            (id(Series::F, 4), 52),
            (id(Series::E, 6), 78),
            (id(Series::E, 7), 133),
            (id(Series::E, 8), 248),
        ];
        for (a, dim) in cases {
            assert_eq!(RootSystem::new(a).dim_algebra(), dim, "{a}");
        }
    }

    #[test]
    fn center_orders() {
        let cases = [
            (id(Series::A, 4), 5),
            (id(Series::B, 3), 2),
            (id(Series::C, 3), 2),
            (id(Series::D, 5), 4),
            (id(Series::E, 6), 3),
            (id(Series::E, 7), 2),
            (id(Series::E, 8), 1),
            (id(Series::F, 4), 1),
            (id(Series::G, 2), 1),
        ];
        for (a, z) in cases {
            assert_eq!(RootSystem::new(a).center_order(), z, "{a}");
        }
    }

    #[test]
    fn outer_groups() {
        assert_eq!(id(Series::A, 1).outer_group(), OuterGroup::Trivial);
        assert_eq!(id(Series::A, 2).outer_group(), OuterGroup::Z2);
        assert_eq!(id(Series::B, 4).outer_group(), OuterGroup::Trivial);
        assert_eq!(id(Series::C, 4).outer_group(), OuterGroup::Trivial);
        assert_eq!(id(Series::D, 4).outer_group(), OuterGroup::S3);
        assert_eq!(id(Series::D, 5).outer_group(), OuterGroup::Z2);
        assert_eq!(id(Series::E, 6).outer_group(), OuterGroup::Z2);
        assert_eq!(id(Series::E, 7).outer_group(), OuterGroup::Trivial);
    }

    #[test]
    fn canonical_low_rank_identifications() {
        assert_eq!(
            SimpleAlgebraId::canonical(Series::B, 1),
            Some(id(Series::A, 1))
        );
        assert_eq!(
            SimpleAlgebraId::canonical(Series::C, 2),
            Some(id(Series::B, 2))
        );
        assert_eq!(
            SimpleAlgebraId::canonical(Series::D, 3),
            Some(id(Series::A, 3))
        );
        assert_eq!(SimpleAlgebraId::canonical(Series::D, 2), None);
        assert_eq!(
            SimpleAlgebraId::canonical(Series::C, 4),
            Some(id(Series::C, 4))
        );
    }

    #[test]
    fn spin_dimensions_by_series() {
        // so(5): vector 5, spin 4; so(7): vector 7, spin 8.
        let b2 = RootSystem::new(id(Series::B, 2));
        assert_eq!(b2.dim(&[1, 0]), BigUint::from(5u32));
        assert_eq!(b2.dim(&[0, 1]), BigUint::from(4u32));
        let b3 = RootSystem::new(id(Series::B, 3));
        assert_eq!(b3.dim(&[1, 0, 0]), BigUint::from(7u32));
        assert_eq!(b3.dim(&[0, 0, 1]), BigUint::from(8u32));
        // sp(6): defining 6.
        let c3 = RootSystem::new(id(Series::C, 3));
        assert_eq!(c3.dim(&[1, 0, 0]), BigUint::from(6u32));
        // so(8): vector and the two half-spins all 8.
        let d4 = RootSystem::new(id(Series::D, 4));
        assert_eq!(d4.dim(&[1, 0, 0, 0]), BigUint::from(8u32));
        assert_eq!(d4.dim(&[0, 0, 1, 0]), BigUint::from(8u32));
        assert_eq!(d4.dim(&[0, 0, 0, 1]), BigUint::from(8u32));
        // Small exceptional checks.
        let g2 = RootSystem::new(id(Series::G, 2));
        assert_eq!(g2.dim(&[0, 1]), BigUint::from(7u32));
        assert_eq!(g2.dim(&[1, 0]), BigUint::from(14u32));
        let f4 = RootSystem::new(id(Series::F, 4));
        assert_eq!(f4.dim(&[0, 0, 0, 1]), BigUint::from(26u32));
        let e6 = RootSystem::new(id(Series::E, 6));
        assert_eq!(e6.dim(&[1, 0, 0, 0, 0, 0]), BigUint::from(27u32));
        let e7 = RootSystem::new(id(Series::E, 7));
        assert_eq!(e7.dim(&[0, 0, 0, 0, 0, 0, 1]), BigUint::from(56u32));
    }

    #[test]
    fn central_character_orders_of_defining_weights() {
        // su(4) defining: faithful on the full center Z4.
        assert_eq!(
            central_character_order(id(Series::A, 3), &HighestWeight::fundamental(3, 0)).unwrap(),
            4
        );
        // su(4) adjoint-adjacent [0,1,0]: kernel Z2, image order 2.
        assert_eq!(
            central_character_order(
                id(Series::A, 3),
                &HighestWeight {
                    labels: vec![0, 1, 0]
                }
            )
            .unwrap(),
            2
        );
        // so(7) vector kills the center; spin is faithful.
        assert_eq!(
            central_character_order(id(Series::B, 3), &HighestWeight::fundamental(3, 0)).unwrap(),
            1
        );
        assert_eq!(
            central_character_order(id(Series::B, 3), &HighestWeight::fundamental(3, 2)).unwrap(),
            2
        );
    }

    #[test]
    fn selfdual_pruning_bound_is_sharp_at_low_rank() {
        // Brute-force check of the A-series bound used by
        // smallest_admissible_dim: no nonzero palindromic weight of A_r has
        // dimension below the bound, and some weight attains it.
        for r in 1..=12usize {
            let a = id(Series::A, r);
            let bound = smallest_admissible_dim(a, Reality::Real);
            let rs = RootSystem::new(a);
            let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
            let zero = vec![0i64; r];
            seen.insert(zero.clone());
            let mut queue = vec![zero];
            let mut attained = false;
            while let Some(w) = queue.pop() {
                for i in 0..r {
                    let mut next = w.clone();
                    next[i] += 1;
                    if seen.contains(&next) || rs.dim(&next) > BigUint::from(bound) {
                        continue;
                    }
                    let palindromic = (0..r).all(|j| next[j] == next[r - 1 - j]);
                    if palindromic {
                        let d = rs.dim(&next);
                        assert!(
                            d >= BigUint::from(bound),
                            "A{r} weight {next:?} undercuts the pruning bound"
                        );
                        attained |= d == BigUint::from(bound);
                    }
                    seen.insert(next.clone());
                    queue.push(next);
                }
            }
            assert!(attained, "A{r} pruning bound {bound} not attained");
        }
    }
}
