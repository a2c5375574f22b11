//! Primitive subalgebra candidates of the compact classical algebras.
//!
//! The ambient algebras are su(n), so(n) and sp(n), acting on their
//! defining representations. A subalgebra is primitive when its inclusion
//! is not an instance of the diagonal/product reductions handled by the
//! [`crate::reduction`] module; the candidates here come in three streams:
//!
//! * reducible subalgebras: stabilizers of an orthogonal/unitary/symplectic
//!   block decomposition, plus `u(p)` inside the self-dual ambients;
//! * irreducible tensor products of non-simple algebras, acting by the
//!   outer tensor product of defining representations;
//! * simple algebras acting by an irreducible representation of the exact
//!   ambient dimension and matching reality class.
//!
//! The simple stream is complete only after removing a short classical
//! list of non-maximal exceptions; that list is supplied externally as an
//! [`ExceptionTable`] and threaded through [`ExceptionFilter`] so callers
//! can see whether filtering actually happened.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::normalizer::FiniteGroupExpr;
use crate::rootdata::{
    diagram_automorphisms, dimension, enumerate_selfdual_irreps, reality_type, HighestWeight,
    IrrepInfo, Reality, Series, SimpleAlgebraId,
};

/// Classical matrix algebra series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    Su,
    So,
    Sp,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraKind::Su => "su",
            AlgebraKind::So => "so",
            AlgebraKind::Sp => "sp",
        };
        write!(f, "{s}")
    }
}

/// A compact classical algebra su(n), so(n) or sp(n) together with its
/// defining representation size.
///
/// Bounds cut off the low-rank coincidences: su(n) needs n >= 2, so(n)
/// needs n >= 5, sp(n) needs even n >= 4. Within these bounds the ambient
/// algebras are pairwise non-isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicalAlgebra {
    kind: AlgebraKind,
    n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimsubError {
    /// Kind/size combination outside the supported bounds.
    InvalidAmbient { kind: AlgebraKind, n: usize },
    /// Malformed exception table line.
    ExceptionParse { line: usize, message: String },
    /// Structurally valid exception table failing an integrity condition.
    ExceptionInvalid { message: String },
}

impl fmt::Display for PrimsubError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimsubError::InvalidAmbient { kind, n } => {
                write!(f, "{kind}({n}) is out of bounds")
            }
            PrimsubError::ExceptionParse { line, message } => {
                write!(f, "exception table line {line}: {message}")
            }
            PrimsubError::ExceptionInvalid { message } => {
                write!(f, "exception table: {message}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PrimsubError {}

impl ClassicalAlgebra {
    pub fn new(kind: AlgebraKind, n: usize) -> Result<Self, PrimsubError> {
        let ok = match kind {
            AlgebraKind::Su => n >= 2,
            AlgebraKind::So => n >= 5,
            AlgebraKind::Sp => n >= 4 && n % 2 == 0,
        };
        if ok {
            Ok(ClassicalAlgebra { kind, n })
        } else {
            Err(PrimsubError::InvalidAmbient { kind, n })
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The ambient algebra as a simple root-system id, in canonical form.
    pub fn simple_id(&self) -> SimpleAlgebraId {
        let opt = match self.kind {
            AlgebraKind::Su => SimpleAlgebraId::canonical(Series::A, self.n - 1),
            AlgebraKind::So => {
                if self.n % 2 == 1 {
                    SimpleAlgebraId::canonical(Series::B, (self.n - 1) / 2)
                } else {
                    SimpleAlgebraId::canonical(Series::D, self.n / 2)
                }
            }
            AlgebraKind::Sp => SimpleAlgebraId::canonical(Series::C, self.n / 2),
        };
        opt.expect("ambient bounds keep the rank in range")
    }
}

impl fmt::Display for ClassicalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n)
    }
}

/// Kind of one summand in a block-diagonal subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    So,
    Sp,
    U,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockKind::So => "so",
            BlockKind::Sp => "sp",
            BlockKind::U => "u",
        };
        write!(f, "{s}")
    }
}

/// Behavior of a candidate under conjugation by determinant -1 elements
/// of the full orthogonal group, defined for even orthogonal ambients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Z2Status {
    /// Some orientation-reversing orthogonal element normalizes the
    /// subalgebra, so the candidate stays primitive in O(n) terms.
    Z2Primitive,
    /// Every normalizing orthogonal element has determinant +1.
    NotZ2,
    /// The question does not arise (odd n, or su/sp ambient, or a stream
    /// where the distinction is not tracked).
    NotApplicable,
}

/// Shape of a primitive subalgebra candidate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SubalgebraVariant {
    /// Block-diagonal stabilizer of a decomposition of the defining
    /// representation. Block sizes are defining-representation sizes and
    /// sum to the ambient n; blocks are sorted by descending size, then
    /// by kind.
    DirectSum { blocks: Vec<(BlockKind, usize)> },
    /// Outer tensor product of defining representations of classical
    /// factors. Factor sizes multiply to the ambient n. The kernel is the
    /// finite central subgroup killed by the tensor action, expressed in
    /// the factor product group.
    TensorProduct {
        factors: Vec<(AlgebraKind, usize)>,
        kernel: FiniteGroupExpr,
    },
    /// u(p) acting on the realification (in so(2p)) or the doubled space
    /// (in sp(2p)).
    UInSelfDual { p: usize },
    /// A simple algebra acting by one irreducible representation of the
    /// exact ambient dimension and matching reality class.
    SimpleIrreducible { irrep: IrrepInfo },
}

/// One primitive subalgebra candidate of a classical ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubalgebraDescriptor {
    pub variant: SubalgebraVariant,
    /// Whether the subalgebra is maximal among proper subalgebras. The
    /// non-maximal rows are still primitive and are kept because their
    /// normalizers matter for the product reductions.
    pub is_maximal_subalgebra: bool,
    pub z2_status: Z2Status,
}

/// One classical exception row: an irreducible simple subalgebra that
/// fails to be maximal in its ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionEntry {
    pub algebra: SimpleAlgebraId,
    pub weight: HighestWeight,
    pub ambient: ClassicalAlgebra,
    /// Non-maximal but still primitive; the row is kept in candidate
    /// lists with `is_maximal_subalgebra = false` instead of dropped.
    pub primitive: bool,
}

/// The classical list of non-maximal irreducible simple subalgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionTable {
    pub entries: Vec<ExceptionEntry>,
    pub source_uri: String,
}

impl ExceptionTable {
    /// Parses the line-oriented exception format:
    ///
    /// ```text
    /// # comment; a line "# source: <uri>" sets the provenance field
    /// <series> <rank> <label1,...,labelr> <ambient-kind> <ambient-n> [primitive]
    /// ```
    pub fn parse(text: &str) -> Result<Self, PrimsubError> {
        let mut entries = Vec::new();
        let mut source_uri = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(uri) = rest.strip_prefix("source:") {
                    if source_uri.is_empty() {
                        source_uri = uri.trim().to_string();
                    }
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let body = match line.find('#') {
                Some(pos) => line[..pos].trim_end(),
                None => line,
            };
            entries.push(Self::parse_entry(body, lineno)?);
        }
        Ok(ExceptionTable {
            entries,
            source_uri,
        })
    }

    fn parse_entry(body: &str, lineno: usize) -> Result<ExceptionEntry, PrimsubError> {
        let bad = |message: String| PrimsubError::ExceptionParse {
            line: lineno,
            message,
        };
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() < 5 {
            return Err(bad("expected: series rank labels kind n [primitive]".into()));
        }
        let series = match toks[0] {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            other => return Err(bad(format!("unknown series {other}"))),
        };
        let rank: usize = toks[1]
            .parse()
            .map_err(|_| bad(format!("bad rank {}", toks[1])))?;
        let algebra = SimpleAlgebraId::new(series, rank).map_err(|e| bad(format!("{e}")))?;
        let mut labels = Vec::new();
        for part in toks[2].split(',') {
            let v: i64 = part
                .parse()
                .map_err(|_| bad(format!("bad weight label {part}")))?;
            if v < 0 {
                return Err(bad("negative weight label".into()));
            }
            labels.push(v);
        }
        if labels.len() != rank {
            return Err(bad(format!(
                "weight has {} labels, rank is {rank}",
                labels.len()
            )));
        }
        let kind = match toks[3] {
            "su" => AlgebraKind::Su,
            "so" => AlgebraKind::So,
            "sp" => AlgebraKind::Sp,
            other => return Err(bad(format!("unknown ambient kind {other}"))),
        };
        let n: usize = toks[4]
            .parse()
            .map_err(|_| bad(format!("bad ambient size {}", toks[4])))?;
        let ambient = ClassicalAlgebra::new(kind, n).map_err(|e| bad(format!("{e}")))?;
        let mut primitive = false;
        for flag in &toks[5..] {
            match *flag {
                "primitive" => primitive = true,
                other => return Err(bad(format!("unknown flag {other}"))),
            }
        }
        Ok(ExceptionEntry {
            algebra,
            weight: HighestWeight { labels },
            ambient,
            primitive,
        })
    }

    /// Integrity conditions on a fully loaded table: exactly 18 rows, each
    /// row dimension- and reality-consistent with its ambient, and the
    /// one primitive-but-not-maximal row (D6 fourth fundamental weight,
    /// dimension 495) present and flagged.
    pub fn validate(&self) -> Result<(), PrimsubError> {
        let invalid = |message: String| PrimsubError::ExceptionInvalid { message };
        for e in &self.entries {
            let dim = dimension(e.algebra, &e.weight).map_err(|err| invalid(format!("{err}")))?;
            if dim != BigUint::from(e.ambient.n as u64) {
                return Err(invalid(format!(
                    "{}{} has dimension {dim}, ambient is {}",
                    e.algebra, e.weight, e.ambient
                )));
            }
            let reality =
                reality_type(e.algebra, &e.weight).map_err(|err| invalid(format!("{err}")))?;
            let expected = ambient_reality(e.ambient.kind);
            if reality != expected {
                return Err(invalid(format!(
                    "{}{} is {reality}, ambient {} needs {expected}",
                    e.algebra, e.weight, e.ambient
                )));
            }
        }
        if self.entries.len() != 18 {
            return Err(invalid(format!(
                "expected 18 entries, found {}",
                self.entries.len()
            )));
        }
        let d6 = SimpleAlgebraId::new(Series::D, 6).expect("valid id");
        let w4 = HighestWeight::fundamental(6, 3);
        let found = self.entries.iter().any(|e| {
            e.algebra == d6
                && e.weight == w4
                && e.ambient.kind == AlgebraKind::So
                && e.ambient.n == 495
                && e.primitive
        });
        if !found {
            return Err(invalid(
                "missing the primitive-flagged D6 half-size exterior power row in so(495)".into(),
            ));
        }
        Ok(())
    }
}

/// Whether the classical exception list was available when the simple
/// stream was produced. With `Absent` the stream is complete but may
/// contain the handful of classically known non-maximal rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionFilter {
    Loaded(ExceptionTable),
    Absent,
}

/// Aggregated candidate list for one ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveList {
    pub ambient: ClassicalAlgebra,
    pub descriptors: Vec<SubalgebraDescriptor>,
    /// True when the simple stream could not be filtered against the
    /// exception list and may include non-maximal rows.
    pub simple_unfiltered: bool,
}

fn ambient_reality(kind: AlgebraKind) -> Reality {
    match kind {
        AlgebraKind::Su => Reality::Complex,
        AlgebraKind::So => Reality::Real,
        AlgebraKind::Sp => Reality::Quaternionic,
    }
}

fn sort_blocks(blocks: &mut [(BlockKind, usize)]) {
    blocks.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
}

fn sum_descriptor(
    g: ClassicalAlgebra,
    mut blocks: Vec<(BlockKind, usize)>,
    maximal: bool,
) -> SubalgebraDescriptor {
    sort_blocks(&mut blocks);
    debug_assert_eq!(blocks.iter().map(|b| b.1).sum::<usize>(), g.n);
    let variant = SubalgebraVariant::DirectSum { blocks };
    let z2_status = z2_of_variant(&variant, g);
    SubalgebraDescriptor {
        variant,
        is_maximal_subalgebra: maximal,
        z2_status,
    }
}

fn tensor_descriptor(
    g: ClassicalAlgebra,
    factors: Vec<(AlgebraKind, usize)>,
    maximal: bool,
) -> SubalgebraDescriptor {
    debug_assert_eq!(factors.iter().map(|f| f.1).product::<usize>(), g.n);
    let kernel = tensor_kernel(g.kind, &factors);
    let variant = SubalgebraVariant::TensorProduct { factors, kernel };
    let z2_status = z2_of_variant(&variant, g);
    SubalgebraDescriptor {
        variant,
        is_maximal_subalgebra: maximal,
        z2_status,
    }
}

/// Finite central subgroup of the factor product acting trivially on the
/// tensor product of the defining representations.
///
/// In the unitary case scalar pairs (z, z^-1) of matching determinant
/// survive; in the orthogonal and symplectic cases only sign tuples with
/// product +1 do, and a -1 exists exactly in sp factors and in even-size
/// so factors.
fn tensor_kernel(ambient: AlgebraKind, factors: &[(AlgebraKind, usize)]) -> FiniteGroupExpr {
    match ambient {
        AlgebraKind::Su => {
            if factors.len() == 2 {
                let d = gcd(factors[0].1 as u64, factors[1].1 as u64);
                FiniteGroupExpr::cyclic(d)
            } else {
                let p = factors[0].1 as u64;
                debug_assert!(factors.iter().all(|f| f.1 as u64 == p));
                FiniteGroupExpr::power(FiniteGroupExpr::cyclic(p), factors.len() as u64 - 1)
            }
        }
        AlgebraKind::So | AlgebraKind::Sp => {
            let m = factors
                .iter()
                .filter(|(k, size)| *k == AlgebraKind::Sp || size % 2 == 0)
                .count();
            if m <= 1 {
                FiniteGroupExpr::one()
            } else {
                FiniteGroupExpr::power(FiniteGroupExpr::cyclic(2), m as u64 - 1)
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Block-diagonal candidates: two-block stabilizers (maximal) and their
/// uniform refinements with three or more blocks (primitive but not
/// maximal), plus u(p) in the self-dual ambients.
pub fn reducible_candidates(g: ClassicalAlgebra) -> Vec<SubalgebraDescriptor> {
    let n = g.n;
    let mut out = Vec::new();
    match g.kind {
        AlgebraKind::Su => {
            for q in 1..=n / 2 {
                let p = n - q;
                out.push(sum_descriptor(
                    g,
                    vec![(BlockKind::U, p), (BlockKind::U, q)],
                    true,
                ));
            }
            for l in 3..=n {
                if n % l == 0 {
                    let p = n / l;
                    out.push(sum_descriptor(g, vec![(BlockKind::U, p); l], false));
                }
            }
        }
        AlgebraKind::So => {
            for q in 1..=n / 2 {
                let p = n - q;
                out.push(sum_descriptor(
                    g,
                    vec![(BlockKind::So, p), (BlockKind::So, q)],
                    true,
                ));
            }
            for l in 3..=n / 2 {
                if n % l == 0 && n / l >= 2 {
                    let p = n / l;
                    out.push(sum_descriptor(g, vec![(BlockKind::So, p); l], false));
                }
            }
            if n % 2 == 0 && n / 2 >= 3 {
                let p = n / 2;
                let variant = SubalgebraVariant::UInSelfDual { p };
                let z2_status = z2_of_variant(&variant, g);
                out.push(SubalgebraDescriptor {
                    variant,
                    is_maximal_subalgebra: true,
                    z2_status,
                });
            }
        }
        AlgebraKind::Sp => {
            let mut q = 2;
            while 2 * q <= n {
                let p = n - q;
                out.push(sum_descriptor(
                    g,
                    vec![(BlockKind::Sp, p), (BlockKind::Sp, q)],
                    true,
                ));
                q += 2;
            }
            for l in 3..=n / 2 {
                if n % l == 0 && (n / l) % 2 == 0 {
                    let p = n / l;
                    out.push(sum_descriptor(g, vec![(BlockKind::Sp, p); l], false));
                }
            }
            let p = n / 2;
            if p >= 2 {
                let variant = SubalgebraVariant::UInSelfDual { p };
                let z2_status = z2_of_variant(&variant, g);
                out.push(SubalgebraDescriptor {
                    variant,
                    is_maximal_subalgebra: true,
                    z2_status,
                });
            }
        }
    }
    out
}

/// Irreducible tensor-product candidates over non-simple algebras. Factor
/// sizes are defining-representation sizes; two-factor products are
/// maximal, longer products and the distinguished three-factor rows with
/// two sp(2) legs are primitive but not maximal.
pub fn irreducible_nonsimple_candidates(g: ClassicalAlgebra) -> Vec<SubalgebraDescriptor> {
    let n = g.n;
    let mut out = Vec::new();
    match g.kind {
        AlgebraKind::Su => {
            for q in 2..=n {
                if q * q > n {
                    break;
                }
                if n % q == 0 {
                    let p = n / q;
                    out.push(tensor_descriptor(
                        g,
                        vec![(AlgebraKind::Su, p), (AlgebraKind::Su, q)],
                        true,
                    ));
                }
            }
            for (p, l) in uniform_factorizations(n, 2, 3) {
                out.push(tensor_descriptor(g, vec![(AlgebraKind::Su, p); l], false));
            }
        }
        AlgebraKind::So => {
            for q in 3..=n {
                if q * q > n {
                    break;
                }
                if n % q == 0 {
                    let p = n / q;
                    if p != 4 && q != 4 && p >= 3 {
                        out.push(tensor_descriptor(
                            g,
                            vec![(AlgebraKind::So, p), (AlgebraKind::So, q)],
                            true,
                        ));
                    }
                }
            }
            let mut b = 2;
            while b * b <= n {
                if n % b == 0 {
                    let a = n / b;
                    if a % 2 == 0 {
                        out.push(tensor_descriptor(
                            g,
                            vec![(AlgebraKind::Sp, a), (AlgebraKind::Sp, b)],
                            true,
                        ));
                    }
                }
                b += 2;
            }
            for (p, l) in uniform_factorizations(n, 3, 3) {
                if p != 4 {
                    out.push(tensor_descriptor(g, vec![(AlgebraKind::So, p); l], false));
                }
            }
            for (a, l) in uniform_factorizations(n, 2, 4) {
                if a % 2 == 0 && l % 2 == 0 {
                    out.push(tensor_descriptor(g, vec![(AlgebraKind::Sp, a); l], false));
                }
            }
            if n % 4 == 0 {
                let p = n / 4;
                if p >= 3 && p != 4 {
                    out.push(tensor_descriptor(
                        g,
                        vec![
                            (AlgebraKind::So, p),
                            (AlgebraKind::Sp, 2),
                            (AlgebraKind::Sp, 2),
                        ],
                        false,
                    ));
                }
            }
        }
        AlgebraKind::Sp => {
            for q in 3..=n {
                if n % q == 0 {
                    let a = n / q;
                    if a >= 2 && a % 2 == 0 && q != 4 && a * q == n {
                        out.push(tensor_descriptor(
                            g,
                            vec![(AlgebraKind::Sp, a), (AlgebraKind::So, q)],
                            true,
                        ));
                    }
                }
            }
            for (a, l) in uniform_factorizations(n, 2, 3) {
                if a % 2 == 0 && l % 2 == 1 {
                    out.push(tensor_descriptor(g, vec![(AlgebraKind::Sp, a); l], false));
                }
            }
            if n % 8 == 0 {
                let a = n / 4;
                if a >= 4 {
                    out.push(tensor_descriptor(
                        g,
                        vec![
                            (AlgebraKind::Sp, a),
                            (AlgebraKind::Sp, 2),
                            (AlgebraKind::Sp, 2),
                        ],
                        false,
                    ));
                }
            }
        }
    }
    out
}

/// All (p, l) with p^l = n, p >= min_p >= 2, l >= min_l >= 3.
fn uniform_factorizations(n: usize, min_p: usize, min_l: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = min_p;
    loop {
        let mut pw: u128 = 1;
        for _ in 0..min_l {
            pw *= p as u128;
        }
        if pw > n as u128 {
            break;
        }
        let mut l = min_l;
        while pw < n as u128 {
            pw *= p as u128;
            l += 1;
        }
        if pw == n as u128 {
            out.push((p, l));
        }
        p += 1;
    }
    out
}

/// Simple algebras acting irreducibly with the exact ambient dimension
/// and reality class. The ambient's own defining copy is excluded; known
/// non-maximal rows are dropped or downgraded through the exception
/// filter. The boolean is true when no filter was available.
pub fn simple_irreducible_candidates(
    g: ClassicalAlgebra,
    filter: &ExceptionFilter,
) -> (Vec<SubalgebraDescriptor>, bool) {
    let kind = ambient_reality(g.kind);
    let ambient_id = g.simple_id();
    let mut out = Vec::new();
    for info in enumerate_selfdual_irreps(kind, g.n as u64) {
        if info.dim != g.n as u64 {
            continue;
        }
        if info.algebra == ambient_id {
            continue;
        }
        let mut maximal = true;
        let mut keep = true;
        if let ExceptionFilter::Loaded(table) = filter {
            for e in &table.entries {
                if e.ambient != g || e.algebra != info.algebra {
                    continue;
                }
                if !weights_in_same_orbit(info.algebra, &e.weight, &info.weight) {
                    continue;
                }
                if e.primitive {
                    maximal = false;
                } else {
                    keep = false;
                }
                break;
            }
        }
        if keep {
            out.push(SubalgebraDescriptor {
                variant: SubalgebraVariant::SimpleIrreducible { irrep: info },
                is_maximal_subalgebra: maximal,
                z2_status: Z2Status::NotApplicable,
            });
        }
    }
    (out, matches!(filter, ExceptionFilter::Absent))
}

/// Whether two dominant weights differ by a diagram automorphism, so that
/// an exception row matches every equivalent labeling of the same
/// subalgebra image.
fn weights_in_same_orbit(a: SimpleAlgebraId, w1: &HighestWeight, w2: &HighestWeight) -> bool {
    diagram_automorphisms(a).iter().any(|perm| {
        (0..perm.len()).all(|i| w1.labels[perm[i]] == w2.labels[i])
    })
}

/// Behavior under orientation-reversing orthogonal conjugation, for
/// candidates in an even orthogonal ambient; everything else is
/// `NotApplicable`. Block sums always extend (flip one block); the
/// remaining families extend exactly when some factor admits an
/// odd-determinant normalizing element or an odd-signed factor swap.
pub fn z2_invariance(desc: &SubalgebraDescriptor, g: ClassicalAlgebra) -> Z2Status {
    z2_of_variant(&desc.variant, g)
}

fn z2_of_variant(variant: &SubalgebraVariant, g: ClassicalAlgebra) -> Z2Status {
    if g.kind != AlgebraKind::So || g.n % 2 == 1 {
        return Z2Status::NotApplicable;
    }
    match variant {
        SubalgebraVariant::DirectSum { .. } => Z2Status::Z2Primitive,
        SubalgebraVariant::UInSelfDual { p } => {
            // Complex conjugation has determinant (-1)^p on the realified
            // space.
            if p % 2 == 1 {
                Z2Status::Z2Primitive
            } else {
                Z2Status::NotZ2
            }
        }
        SubalgebraVariant::TensorProduct { factors, .. } => z2_of_tensor(factors),
        SubalgebraVariant::SimpleIrreducible { .. } => Z2Status::NotApplicable,
    }
}

fn z2_of_tensor(factors: &[(AlgebraKind, usize)]) -> Z2Status {
    let yes = |cond: bool| {
        if cond {
            Z2Status::Z2Primitive
        } else {
            Z2Status::NotZ2
        }
    };
    match factors {
        // det(x tensor 1) = det(x)^q: a reflection in one so factor works
        // exactly when the other size is odd; for equal sizes only the
        // factor swap is available, with determinant (-1)^(p(p-1)/2).
        [(AlgebraKind::So, p), (AlgebraKind::So, q)] => {
            if p != q {
                yes(p % 2 == 1 || q % 2 == 1)
            } else {
                yes((p / 2) % 2 == 1)
            }
        }
        // Symplectic groups have no odd-determinant normalizer in their
        // own leg; only the equal-size swap can reverse orientation.
        [(AlgebraKind::Sp, a), (AlgebraKind::Sp, b)] => yes(a == b && (a / 2) % 2 == 1),
        [(AlgebraKind::So, p), (AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2)] => {
            // The sp(2) swap acts as id_p tensor P with det P = -1, so the
            // total determinant is (-1)^p.
            yes(p % 2 == 1)
        }
        _ => Z2Status::NotZ2,
    }
}

/// All primitive subalgebra candidates of the ambient algebra, sorted and
/// deduplicated across the three streams.
pub fn primitive_subalgebras(g: ClassicalAlgebra, filter: &ExceptionFilter) -> PrimitiveList {
    let mut descriptors = reducible_candidates(g);
    descriptors.extend(irreducible_nonsimple_candidates(g));
    let (simple, simple_unfiltered) = simple_irreducible_candidates(g, filter);
    descriptors.extend(simple);
    descriptors.sort();
    descriptors.dedup();
    PrimitiveList {
        ambient: g,
        descriptors,
        simple_unfiltered,
    }
}

/// Human-readable algebra label for a candidate, written additively for
/// block sums ("R + su(4) + su(2)", "so(3)^3") and multiplicatively for
/// tensor products ("sp(6) x sp(2)").
pub fn algebra_label(desc: &SubalgebraDescriptor, g: ClassicalAlgebra) -> String {
    match &desc.variant {
        SubalgebraVariant::DirectSum { blocks } => sum_label(blocks, g),
        SubalgebraVariant::UInSelfDual { p } => format!("u({p})"),
        SubalgebraVariant::TensorProduct { factors, .. } => {
            let parts: Vec<String> = factors
                .iter()
                .map(|(k, size)| format!("{k}({size})"))
                .collect();
            parts.join(" x ")
        }
        SubalgebraVariant::SimpleIrreducible { irrep } => {
            format!("{}{} (dim {})", irrep.algebra, irrep.weight, irrep.dim)
        }
    }
}

fn sum_label(blocks: &[(BlockKind, usize)], g: ClassicalAlgebra) -> String {
    let mut abelian = 0usize;
    let mut simple_parts: Vec<String> = Vec::new();
    match g.kind {
        AlgebraKind::Su => {
            // s(u(p1) + ... + u(pl)) = R^(l-1) + sum of su(pi), pi >= 2.
            abelian = blocks.len() - 1;
            push_compressed(
                &mut simple_parts,
                blocks.iter().filter(|b| b.1 >= 2).map(|b| b.1),
                "su",
            );
        }
        AlgebraKind::So => {
            let sizes: Vec<usize> = blocks.iter().map(|b| b.1).filter(|&p| p >= 2).collect();
            if sizes == [4] {
                return "su(2) + su(2)".into();
            }
            abelian = sizes.iter().filter(|&&p| p == 2).count();
            push_compressed(
                &mut simple_parts,
                sizes.iter().copied().filter(|&p| p >= 3),
                "so",
            );
        }
        AlgebraKind::Sp => {
            push_compressed(&mut simple_parts, blocks.iter().map(|b| b.1), "sp");
        }
    }
    let mut parts: Vec<String> = Vec::new();
    match abelian {
        0 => {}
        1 => parts.push("R".into()),
        k => parts.push(format!("R^{k}")),
    }
    parts.extend(simple_parts);
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Appends "kind(p)" labels, compressing runs of three or more equal
/// sizes to "kind(p)^l". Sizes arrive sorted descending.
fn push_compressed<I: Iterator<Item = usize>>(parts: &mut Vec<String>, sizes: I, kind: &str) {
    let sizes: Vec<usize> = sizes.collect();
    let mut i = 0;
    while i < sizes.len() {
        let mut j = i;
        while j < sizes.len() && sizes[j] == sizes[i] {
            j += 1;
        }
        let run = j - i;
        if run >= 3 {
            parts.push(format!("{kind}({})^{run}", sizes[i]));
        } else {
            for _ in 0..run {
                parts.push(format!("{kind}({})", sizes[i]));
            }
        }
        i = j;
    }
}
