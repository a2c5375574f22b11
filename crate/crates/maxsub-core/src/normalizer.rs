//! Component-group assembly for maximal subgroups: finite group
//! expressions, centralizer quotients, diagram-automorphism components,
//! and the per-family case analysis combining them.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A finite group built from cyclic and symmetric atoms by direct
/// products, central products over a shared central Z2, and split or
/// non-split extensions.
///
/// Grammar (loosest to tightest binding):
///
/// ```text
/// ext     := central (( ":" | "." ) central)*     left associative
/// central := product ("*Z2*" product)*
/// product := power ("x" power)*
/// power   := atom ("^" int)?
/// atom    := "1" | "Z" int | "S" int | "(" ext ")"
/// ```
///
/// `N : Q` is an extension of Q by normal subgroup N that splits;
/// `N . Q` is one that does not. Canonical forms: Z1 = S1 = 1, S2 = Z2,
/// products are flattened and sorted (cyclic by order, then symmetric
/// by degree) with trivial factors dropped, a central product absorbs
/// plain Z2 parts, and extensions by or of the trivial group collapse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiniteGroupExpr {
    One,
    Cyclic(u64),
    Symmetric(u64),
    Product(Vec<FiniteGroupExpr>),
    CentralZ2(Vec<FiniteGroupExpr>),
    Split(Box<FiniteGroupExpr>, Box<FiniteGroupExpr>),
    NonSplit(Box<FiniteGroupExpr>, Box<FiniteGroupExpr>),
}

use FiniteGroupExpr as Fge;

impl FiniteGroupExpr {
    pub fn one() -> Self {
        Fge::One
    }

    pub fn cyclic(k: u64) -> Self {
        match k {
            0 | 1 => Fge::One,
            _ => Fge::Cyclic(k),
        }
    }

    pub fn symmetric(l: u64) -> Self {
        match l {
            0 | 1 => Fge::One,
            2 => Fge::Cyclic(2),
            _ => Fge::Symmetric(l),
        }
    }

    pub fn product(parts: Vec<Self>) -> Self {
        Fge::Product(parts).canonical()
    }

    /// Direct power: `k` copies of `base`.
    pub fn power(base: Self, k: u64) -> Self {
        Self::product(vec![base; k as usize])
    }

    pub fn central_z2(parts: Vec<Self>) -> Self {
        Fge::CentralZ2(parts).canonical()
    }

    pub fn split(normal: Self, quotient: Self) -> Self {
        Fge::Split(Box::new(normal), Box::new(quotient)).canonical()
    }

    pub fn nonsplit(normal: Self, quotient: Self) -> Self {
        Fge::NonSplit(Box::new(normal), Box::new(quotient)).canonical()
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Fge::One)
    }

    pub fn order(&self) -> u128 {
        match self {
            Fge::One => 1,
            Fge::Cyclic(k) => *k as u128,
            Fge::Symmetric(l) => (1..=*l as u128).product(),
            Fge::Product(parts) => parts.iter().map(|p| p.order()).product(),
            Fge::CentralZ2(parts) => {
                let raw: u128 = parts.iter().map(|p| p.order()).product();
                let glue = 1u128 << (parts.len().saturating_sub(1));
                raw / glue
            }
            Fge::Split(n, q) | Fge::NonSplit(n, q) => n.order() * q.order(),
        }
    }

    /// Canonical structural form; idempotent.
    pub fn canonical(&self) -> Self {
        match self {
            Fge::One => Fge::One,
            Fge::Cyclic(k) => Self::cyclic(*k),
            Fge::Symmetric(l) => Self::symmetric(*l),
            Fge::Product(parts) => {
                let mut flat = Vec::new();
                for p in parts {
                    match p.canonical() {
                        Fge::One => {}
                        Fge::Product(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                flat.sort_by(atom_sort_key);
                match flat.len() {
                    0 => Fge::One,
                    1 => flat.pop().expect("len checked"),
                    _ => Fge::Product(flat),
                }
            }
            Fge::CentralZ2(parts) => {
                // A central product with a plain Z2 part amalgamates that
                // part into the shared center.
                let mut flat = Vec::new();
                for p in parts {
                    match p.canonical() {
                        Fge::Cyclic(2) => {}
                        Fge::CentralZ2(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                flat.sort_by(atom_sort_key);
                match flat.len() {
                    0 => Fge::Cyclic(2),
                    1 => flat.pop().expect("len checked"),
                    _ => Fge::CentralZ2(flat),
                }
            }
            Fge::Split(n, q) => {
                let n = n.canonical();
                let q = q.canonical();
                if n.is_trivial() {
                    q
                } else if q.is_trivial() {
                    n
                } else {
                    Fge::Split(Box::new(n), Box::new(q))
                }
            }
            Fge::NonSplit(n, q) => {
                let n = n.canonical();
                let q = q.canonical();
                if n.is_trivial() {
                    q
                } else if q.is_trivial() {
                    n
                } else {
                    Fge::NonSplit(Box::new(n), Box::new(q))
                }
            }
        }
    }

    /// Parses the grammar above; accepts optional whitespace and an
    /// optional underscore after Z or S.
    pub fn parse(input: &str) -> Result<Self, String> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let e = p.ext()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(format!("trailing input at byte {}", p.pos));
        }
        Ok(e.canonical())
    }
}

fn atom_sort_key(a: &Fge, b: &Fge) -> core::cmp::Ordering {
    fn key(e: &Fge) -> (u8, u64, String) {
        match e {
            Fge::Cyclic(k) => (0, *k, String::new()),
            Fge::Symmetric(l) => (1, *l, String::new()),
            other => (2, 0, other.to_string()),
        }
    }
    key(a).cmp(&key(b))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, String> {
        self.skip_ws();
        if self.eat(b'_') {
            self.skip_ws();
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected number at byte {}", start));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits")
            .parse::<u64>()
            .map_err(|e| e.to_string())
    }

    fn ext(&mut self) -> Result<Fge, String> {
        let mut acc = self.central()?;
        loop {
            if self.eat(b':') {
                let rhs = self.central()?;
                acc = Fge::Split(Box::new(acc), Box::new(rhs));
            } else if self.eat(b'.') {
                let rhs = self.central()?;
                acc = Fge::NonSplit(Box::new(acc), Box::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn central(&mut self) -> Result<Fge, String> {
        let first = self.product()?;
        let mut parts = vec![first];
        loop {
            self.skip_ws();
            if self.eat_str("*Z2*") {
                parts.push(self.product()?);
            } else {
                break;
            }
        }
        if parts.len() == 1 {
            Ok(parts.pop().expect("one part"))
        } else {
            Ok(Fge::CentralZ2(parts))
        }
    }

    fn product(&mut self) -> Result<Fge, String> {
        let first = self.power()?;
        let mut parts = vec![first];
        while self.peek() == Some(b'x') {
            self.pos += 1;
            parts.push(self.power()?);
        }
        if parts.len() == 1 {
            Ok(parts.pop().expect("one part"))
        } else {
            Ok(Fge::Product(parts))
        }
    }

    fn power(&mut self) -> Result<Fge, String> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let k = self.number()?;
            Ok(Fge::Product(vec![base; k as usize]))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Fge, String> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Fge::One)
            }
            Some(b'Z') => {
                self.pos += 1;
                Ok(Fge::Cyclic(self.number()?))
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(Fge::Symmetric(self.number()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.ext()?;
                if !self.eat(b')') {
                    return Err(format!("expected ')' at byte {}", self.pos));
                }
                Ok(e)
            }
            other => Err(format!("unexpected input {:?} at byte {}", other, self.pos)),
        }
    }
}

// Rendering precedence levels: extension 0, central product 1, direct
// product 2, atom 3.
fn level(e: &Fge) -> u8 {
    match e {
        Fge::One | Fge::Cyclic(_) | Fge::Symmetric(_) => 3,
        Fge::Product(_) => 2,
        Fge::CentralZ2(_) => 1,
        Fge::Split(_, _) | Fge::NonSplit(_, _) => 0,
    }
}

fn render(e: &Fge, min_level: u8, out: &mut String) {
    let needs_parens = level(e) < min_level;
    if needs_parens {
        out.push('(');
    }
    match e {
        Fge::One => out.push('1'),
        Fge::Cyclic(k) => {
            out.push('Z');
            out.push_str(&k.to_string());
        }
        Fge::Symmetric(l) => {
            out.push('S');
            out.push_str(&l.to_string());
        }
        Fge::Product(parts) => {
            // Group equal consecutive factors as powers.
            let mut i = 0;
            let mut first = true;
            while i < parts.len() {
                let mut j = i + 1;
                while j < parts.len() && parts[j] == parts[i] {
                    j += 1;
                }
                if !first {
                    out.push_str(" x ");
                }
                first = false;
                render(&parts[i], 3, out);
                if j - i > 1 {
                    out.push('^');
                    out.push_str(&(j - i).to_string());
                }
                i = j;
            }
        }
        Fge::CentralZ2(parts) => {
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    out.push_str(" *Z2* ");
                }
                render(p, 2, out);
            }
        }
        // Extension chains are left associative, so the left child may
        // itself be an unparenthesized extension.
        Fge::Split(n, q) => {
            render(n, 0, out);
            out.push_str(" : ");
            render(q, 1, out);
        }
        Fge::NonSplit(n, q) => {
            render(n, 0, out);
            out.push_str(" . ");
            render(q, 1, out);
        }
    }
    if needs_parens {
        out.push(')');
    }
}

impl fmt::Display for FiniteGroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render(&self.canonical(), 0, &mut s);
        write!(f, "{s}")
    }
}

use crate::primsub::{
    primitive_subalgebras, AlgebraKind, BlockKind, ClassicalAlgebra, ExceptionFilter,
    SubalgebraDescriptor, SubalgebraVariant, Z2Status,
};
use crate::rootdata::{
    central_character_order, diagram_automorphisms, HighestWeight, IrrepInfo, Reality, Series,
    SimpleAlgebraId,
};

/// Kind of compact ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    SU,
    SO,
    Sp,
}

impl GroupKind {
    pub fn algebra_kind(self) -> AlgebraKind {
        match self {
            GroupKind::SU => AlgebraKind::Su,
            GroupKind::SO => AlgebraKind::So,
            GroupKind::Sp => AlgebraKind::Sp,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::SU => "SU",
            GroupKind::SO => "SO",
            GroupKind::Sp => "Sp",
        };
        write!(f, "{s}")
    }
}

impl core::str::FromStr for GroupKind {
    type Err = NormalizerError;

    fn from_str(s: &str) -> Result<Self, NormalizerError> {
        if s.eq_ignore_ascii_case("su") {
            Ok(GroupKind::SU)
        } else if s.eq_ignore_ascii_case("so") {
            Ok(GroupKind::SO)
        } else if s.eq_ignore_ascii_case("sp") {
            Ok(GroupKind::Sp)
        } else {
            Err(NormalizerError::UnsupportedDescriptor {
                message: format!("unknown group kind {s:?}"),
            })
        }
    }
}

/// One of the compact groups SU(n) with n >= 2, SO(n) with n >= 5, or
/// Sp(n) acting on C^n with even n >= 4.
///
/// The small orthogonal ranks are excluded because so(n) for n <= 4 is
/// not simple (or not of orthogonal shape), so the ambient group would
/// coincide with a smaller unitary or symplectic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicalGroup {
    kind: GroupKind,
    n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizerError {
    /// Kind/size combination outside the supported bounds.
    InvalidGroup { kind: GroupKind, n: usize },
    /// A subalgebra descriptor that cannot occur in the given ambient
    /// group, or whose shape is not one of the classified families.
    UnsupportedDescriptor { message: String },
}

impl fmt::Display for NormalizerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizerError::InvalidGroup { kind, n } => {
                write!(f, "{kind}({n}) is out of bounds")
            }
            NormalizerError::UnsupportedDescriptor { message } => {
                write!(f, "unsupported subalgebra: {message}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NormalizerError {}

fn unsupported(message: String) -> NormalizerError {
    NormalizerError::UnsupportedDescriptor { message }
}

impl ClassicalGroup {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self, NormalizerError> {
        let ok = match kind {
            GroupKind::SU => n >= 2,
            GroupKind::SO => n >= 5,
            GroupKind::Sp => n >= 4 && n % 2 == 0,
        };
        if ok {
            Ok(ClassicalGroup { kind, n })
        } else {
            Err(NormalizerError::InvalidGroup { kind, n })
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The Lie algebra of the group.
    pub fn algebra(&self) -> ClassicalAlgebra {
        ClassicalAlgebra::new(self.kind.algebra_kind(), self.n)
            .expect("group bounds imply algebra bounds")
    }

    /// Order of the finite center: n for SU(n), 2 for even SO(n) and for
    /// Sp(n), 1 for odd SO(n).
    pub fn center_order(&self) -> u64 {
        match self.kind {
            GroupKind::SU => self.n as u64,
            GroupKind::SO => {
                if self.n % 2 == 0 {
                    2
                } else {
                    1
                }
            }
            GroupKind::Sp => 2,
        }
    }

    /// The center as a finite group expression; always cyclic.
    pub fn center(&self) -> FiniteGroupExpr {
        Fge::cyclic(self.center_order())
    }
}

impl fmt::Display for ClassicalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n)
    }
}

/// How the maximality of a subgroup arises. Every row produced here is
/// the full normalizer of its identity component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaximalType {
    NormalizerType,
    NormalType,
    TrivialType,
}

impl fmt::Display for MaximalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MaximalType::NormalizerType => "normalizer_type",
            MaximalType::NormalType => "normal_type",
            MaximalType::TrivialType => "trivial_type",
        };
        write!(f, "{s}")
    }
}

/// A maximal subgroup H of an ambient classical group, described through
/// its identity component H0 and the finite quotients assembling the
/// component group H/H0.
///
/// `hi_mod_h0` is Hi/H0 for the intermediate subgroup Hi = H0 Z(G); it
/// is always central and cyclic or a product of cyclics. `h_mod_hi` is
/// H/Hi, the part acting on H0 by outer automorphisms. `h_mod_h0` is the
/// assembled component group with extension markers. The latter two are
/// `None` when the data here does not decide which outer automorphisms
/// extend: a simple H0 whose highest weight is fixed by a nontrivial
/// diagram automorphism, sitting in an orthogonal or symplectic ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSubgroupRecord {
    pub group: ClassicalGroup,
    pub descriptor: SubalgebraDescriptor,
    pub h0_label: String,
    pub hi_mod_h0: FiniteGroupExpr,
    pub h_mod_hi: Option<FiniteGroupExpr>,
    pub h_mod_h0: Option<FiniteGroupExpr>,
    pub mtype: MaximalType,
    /// True exactly when H0 is non-simple; these rows are the ones the
    /// shipped classification tables list.
    pub tabulated: bool,
}

impl MaximalSubgroupRecord {
    /// Whether the full component group is pinned down.
    pub fn determined(&self) -> bool {
        self.h_mod_h0.is_some()
    }
}

/// Classification output for one ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSubgroupList {
    pub group: ClassicalGroup,
    pub records: Vec<MaximalSubgroupRecord>,
    /// Mirrors the subalgebra stream flag: true when the simple rows
    /// could not be checked against the non-maximality exception list.
    pub simple_unfiltered: bool,
}

struct CaseData {
    h0_label: String,
    hi: FiniteGroupExpr,
    h_mod_hi: Option<FiniteGroupExpr>,
    h_mod_h0: Option<FiniteGroupExpr>,
    tabulated: bool,
}

impl CaseData {
    /// Row with trivial central part, so H/H0 = H/Hi.
    fn central_free(label: String, outer: FiniteGroupExpr) -> Self {
        CaseData {
            h0_label: label,
            hi: Fge::one(),
            h_mod_hi: Some(outer.clone()),
            h_mod_h0: Some(outer),
            tabulated: true,
        }
    }
}

/// Finite quotient Hi/H0 where Hi = H0 Z(G): the central part of the
/// component group of the normalizer of the subalgebra.
pub fn center_quotient(
    desc: &SubalgebraDescriptor,
    g: ClassicalGroup,
) -> Result<FiniteGroupExpr, NormalizerError> {
    Ok(assemble_component_group(desc, g)?.hi_mod_h0)
}

/// Finite quotient H/Hi: the outer-automorphism part of the component
/// group. `None` means the classification data leaves it undetermined.
pub fn diagram_component(
    desc: &SubalgebraDescriptor,
    g: ClassicalGroup,
) -> Result<Option<FiniteGroupExpr>, NormalizerError> {
    Ok(assemble_component_group(desc, g)?.h_mod_hi)
}

/// Builds the full maximal-subgroup record for one subalgebra descriptor
/// inside one ambient group.
pub fn assemble_component_group(
    desc: &SubalgebraDescriptor,
    g: ClassicalGroup,
) -> Result<MaximalSubgroupRecord, NormalizerError> {
    let data = case_data(desc, g)?;
    Ok(MaximalSubgroupRecord {
        group: g,
        descriptor: desc.clone(),
        h0_label: data.h0_label,
        hi_mod_h0: data.hi.canonical(),
        h_mod_hi: data.h_mod_hi.map(|e| e.canonical()),
        h_mod_h0: data.h_mod_h0.map(|e| e.canonical()),
        mtype: MaximalType::NormalizerType,
        tabulated: data.tabulated,
    })
}

/// All maximal subgroups of the ambient group, one record per primitive
/// subalgebra, plus the defining orthogonal and symplectic subgroups of
/// SU(n) which do not arise from a proper complex irreducible action.
pub fn maximal_subgroups(
    g: ClassicalGroup,
    filter: &ExceptionFilter,
) -> Result<MaximalSubgroupList, NormalizerError> {
    let list = primitive_subalgebras(g.algebra(), filter);
    let mut records = Vec::with_capacity(list.descriptors.len() + 2);
    for desc in &list.descriptors {
        records.push(assemble_component_group(desc, g)?);
    }
    if g.kind == GroupKind::SU {
        // so(n) in su(n) for n >= 3; the n = 4 copy is already listed as
        // the su(2) x su(2) tensor row.
        if g.n >= 3 && g.n != 4 {
            let desc = classical_descriptor(orthogonal_defining_irrep(g.n));
            records.push(assemble_component_group(&desc, g)?);
        }
        if g.n >= 4 && g.n % 2 == 0 {
            let desc = classical_descriptor(symplectic_defining_irrep(g.n));
            records.push(assemble_component_group(&desc, g)?);
        }
    }
    Ok(MaximalSubgroupList {
        group: g,
        records,
        simple_unfiltered: list.simple_unfiltered,
    })
}

fn classical_descriptor(irrep: IrrepInfo) -> SubalgebraDescriptor {
    SubalgebraDescriptor {
        variant: SubalgebraVariant::SimpleIrreducible { irrep },
        is_maximal_subalgebra: true,
        z2_status: Z2Status::NotApplicable,
    }
}

/// The n-dimensional real defining representation of so(n), by the id of
/// the isomorphic canonical simple algebra.
fn orthogonal_defining_irrep(n: usize) -> IrrepInfo {
    let (algebra, labels) = match n {
        3 => (SimpleAlgebraId::canonical(Series::A, 1), vec![2]),
        5 => (SimpleAlgebraId::canonical(Series::B, 2), vec![1, 0]),
        6 => (SimpleAlgebraId::canonical(Series::A, 3), vec![0, 1, 0]),
        _ if n % 2 == 1 => {
            let r = (n - 1) / 2;
            let mut labels = vec![0; r];
            labels[0] = 1;
            (SimpleAlgebraId::canonical(Series::B, r), labels)
        }
        _ => {
            let r = n / 2;
            let mut labels = vec![0; r];
            labels[0] = 1;
            (SimpleAlgebraId::canonical(Series::D, r), labels)
        }
    };
    IrrepInfo {
        algebra: algebra.expect("orthogonal rank in range"),
        weight: HighestWeight { labels },
        dim: n as u64,
        reality: Reality::Real,
    }
}

/// The n-dimensional quaternionic defining representation of sp(n).
fn symplectic_defining_irrep(n: usize) -> IrrepInfo {
    let (algebra, labels) = if n == 4 {
        (SimpleAlgebraId::canonical(Series::B, 2), vec![0, 1])
    } else {
        let r = n / 2;
        let mut labels = vec![0; r];
        labels[0] = 1;
        (SimpleAlgebraId::canonical(Series::C, r), labels)
    };
    IrrepInfo {
        algebra: algebra.expect("symplectic rank in range"),
        weight: HighestWeight { labels },
        dim: n as u64,
        reality: Reality::Quaternionic,
    }
}

fn case_data(desc: &SubalgebraDescriptor, g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    match (&desc.variant, g.kind) {
        (SubalgebraVariant::SimpleIrreducible { irrep }, _) => simple_case(irrep, g),
        (SubalgebraVariant::DirectSum { blocks }, GroupKind::SU) => su_sum_case(blocks, g),
        (SubalgebraVariant::DirectSum { blocks }, GroupKind::SO) => so_sum_case(blocks, g),
        (SubalgebraVariant::DirectSum { blocks }, GroupKind::Sp) => sp_sum_case(blocks, g),
        (SubalgebraVariant::TensorProduct { factors, .. }, GroupKind::SU) => {
            su_tensor_case(factors, g)
        }
        (SubalgebraVariant::TensorProduct { factors, .. }, GroupKind::SO) => {
            so_tensor_case(factors, g)
        }
        (SubalgebraVariant::TensorProduct { factors, .. }, GroupKind::Sp) => {
            sp_tensor_case(factors, g)
        }
        (SubalgebraVariant::UInSelfDual { p }, GroupKind::SO) => so_u_case(*p, g),
        (SubalgebraVariant::UInSelfDual { p }, GroupKind::Sp) => sp_u_case(*p, g),
        (SubalgebraVariant::UInSelfDual { .. }, GroupKind::SU) => {
            Err(unsupported(format!("u(p) rows do not occur in {g}")))
        }
    }
}

fn check_blocks(
    blocks: &[(BlockKind, usize)],
    want: BlockKind,
    g: ClassicalGroup,
) -> Result<Vec<usize>, NormalizerError> {
    if blocks.len() < 2 {
        return Err(unsupported("a block-diagonal row needs two blocks".into()));
    }
    if let Some(bad) = blocks.iter().find(|b| b.0 != want) {
        return Err(unsupported(format!(
            "{:?} block in a {} block-diagonal row",
            bad.0, g
        )));
    }
    let total: usize = blocks.iter().map(|b| b.1).sum();
    if total != g.n {
        return Err(unsupported(format!(
            "block sizes sum to {total}, ambient needs {}",
            g.n
        )));
    }
    Ok(blocks.iter().map(|b| b.1).collect())
}

fn check_factors(
    factors: &[(AlgebraKind, usize)],
    g: ClassicalGroup,
) -> Result<(), NormalizerError> {
    if factors.len() < 2 {
        return Err(unsupported("a tensor row needs two factors".into()));
    }
    let total: usize = factors.iter().map(|f| f.1).product();
    if total != g.n {
        return Err(unsupported(format!(
            "factor sizes multiply to {total}, ambient needs {}",
            g.n
        )));
    }
    if factors.iter().any(|f| f.1 < 2) {
        return Err(unsupported("tensor factor of size < 2".into()));
    }
    Ok(())
}

/// All entries equal: the common value.
fn uniform_run<T: Copy + PartialEq>(xs: &[(T, usize)]) -> Option<(T, usize)> {
    let first = xs.first()?;
    xs.iter().all(|x| x == first).then_some(*first)
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn su_sum_case(blocks: &[(BlockKind, usize)], g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    let sizes = check_blocks(blocks, BlockKind::U, g)?;
    match sizes.as_slice() {
        [p, q] => {
            let outer = if p == q { Fge::cyclic(2) } else { Fge::one() };
            Ok(CaseData::central_free(
                format!("S(U({p}) x U({q}))"),
                outer,
            ))
        }
        _ => {
            let l = sizes.len();
            let (_, p) = uniform_run(blocks).ok_or_else(|| {
                unsupported("a block sum with three or more blocks must be uniform".into())
            })?;
            Ok(CaseData::central_free(
                format!("S(U({p})^{l})"),
                Fge::symmetric(l as u64),
            ))
        }
    }
}

fn su_tensor_case(
    factors: &[(AlgebraKind, usize)],
    g: ClassicalGroup,
) -> Result<CaseData, NormalizerError> {
    check_factors(factors, g)?;
    if factors.iter().any(|f| f.0 != AlgebraKind::Su) {
        return Err(unsupported(format!(
            "non-unitary tensor factor in {g}"
        )));
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.1).collect();
    match sizes.as_slice() {
        [p, q] => {
            let (p, q) = (*p, *q);
            let d = gcd(p as u64, q as u64);
            let label = if d == 1 {
                format!("SU({p}) x SU({q})")
            } else {
                format!("SU({p}) x_{{Z{d}}} SU({q})")
            };
            if p != q {
                Ok(CaseData {
                    h0_label: label,
                    hi: Fge::cyclic(d),
                    h_mod_hi: Some(Fge::one()),
                    h_mod_h0: Some(Fge::cyclic(d)),
                    tabulated: true,
                })
            } else {
                // The swap composed with conjugation normalizes; its
                // square is the scalar i exactly when p = 2 mod 4.
                let pd = p as u64;
                let full = if pd % 4 == 2 {
                    Fge::central_z2(vec![Fge::cyclic(pd), Fge::cyclic(4)])
                } else {
                    Fge::product(vec![Fge::cyclic(pd), Fge::cyclic(2)])
                };
                Ok(CaseData {
                    h0_label: label,
                    hi: Fge::cyclic(d),
                    h_mod_hi: Some(Fge::cyclic(2)),
                    h_mod_h0: Some(full),
                    tabulated: true,
                })
            }
        }
        _ => {
            let l = sizes.len();
            let (_, p) = uniform_run(factors).ok_or_else(|| {
                unsupported("a tensor with three or more factors must be uniform".into())
            })?;
            // Scalars of the image: all p^(l-1)-th roots of unity.
            let scalars = (g.n / p) as u64;
            let kernel = Fge::power(Fge::cyclic(p as u64), (l - 1) as u64);
            let sym = Fge::symmetric(l as u64);
            Ok(CaseData {
                h0_label: format!("SU({p})^{l} / {kernel}"),
                hi: Fge::cyclic(scalars),
                h_mod_hi: Some(sym.clone()),
                h_mod_h0: Some(Fge::product(vec![Fge::cyclic(scalars), sym])),
                tabulated: true,
            })
        }
    }
}

fn so_sum_case(blocks: &[(BlockKind, usize)], g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    let sizes = check_blocks(blocks, BlockKind::So, g)?;
    match sizes.as_slice() {
        [p, 1] => {
            // Stabilizer of a line: O(n-1) embedded by padding with the
            // determinant. The reflection class is central exactly when
            // it is -1 on the big block.
            let p = *p;
            let (hi, outer) = if p % 2 == 1 {
                (Fge::cyclic(2), Fge::one())
            } else {
                (Fge::one(), Fge::cyclic(2))
            };
            Ok(CaseData {
                h0_label: format!("SO({p})"),
                hi,
                h_mod_hi: Some(outer),
                h_mod_h0: Some(Fge::cyclic(2)),
                tabulated: p == 4,
            })
        }
        [p, q] => {
            let (p, q) = (*p, *q);
            let both_odd = p % 2 == 1 && q % 2 == 1;
            let hi = if both_odd { Fge::cyclic(2) } else { Fge::one() };
            let (outer, full) = if p > q {
                let full = Fge::cyclic(2);
                let outer = if both_odd { Fge::one() } else { Fge::cyclic(2) };
                (outer, full)
            } else if p % 2 == 1 {
                // Swap times a pair of reflections squares to -1.
                (Fge::cyclic(2), Fge::cyclic(4))
            } else {
                let k = Fge::power(Fge::cyclic(2), 2);
                (k.clone(), k)
            };
            Ok(CaseData {
                h0_label: format!("SO({p}) x SO({q})"),
                hi,
                h_mod_hi: Some(outer),
                h_mod_h0: Some(full),
                tabulated: true,
            })
        }
        _ => {
            let l = sizes.len() as u64;
            let (_, p) = uniform_run(blocks).ok_or_else(|| {
                unsupported("a block sum with three or more blocks must be uniform".into())
            })?;
            let label = format!("SO({p})^{}", sizes.len());
            let sym = Fge::symmetric(l);
            if p % 2 == 1 {
                // Even sign patterns survive; no set of coset choices
                // for the block swaps closes into a complement.
                let signs = Fge::power(Fge::cyclic(2), l - 1);
                Ok(CaseData {
                    h0_label: label,
                    hi: signs.clone(),
                    h_mod_hi: Some(sym.clone()),
                    h_mod_h0: Some(Fge::nonsplit(signs, sym)),
                    tabulated: true,
                })
            } else {
                let full = Fge::split(Fge::power(Fge::cyclic(2), l - 1), sym);
                Ok(CaseData::central_free(label, full))
            }
        }
    }
}

fn sp_sum_case(blocks: &[(BlockKind, usize)], g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    let sizes = check_blocks(blocks, BlockKind::Sp, g)?;
    if sizes.iter().any(|s| s % 2 == 1) {
        return Err(unsupported("odd symplectic block size".into()));
    }
    match sizes.as_slice() {
        [a, b] => {
            let outer = if a == b { Fge::cyclic(2) } else { Fge::one() };
            Ok(CaseData::central_free(
                format!("Sp({a}) x Sp({b})"),
                outer,
            ))
        }
        _ => {
            let l = sizes.len();
            let (_, a) = uniform_run(blocks).ok_or_else(|| {
                unsupported("a block sum with three or more blocks must be uniform".into())
            })?;
            Ok(CaseData::central_free(
                format!("Sp({a})^{l}"),
                Fge::symmetric(l as u64),
            ))
        }
    }
}

fn so_u_case(p: usize, g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    if 2 * p != g.n {
        return Err(unsupported(format!("u({p}) row in {g}")));
    }
    // Conjugation normalizes U(p); as an orthogonal map on the
    // realification it has determinant (-1)^p.
    let outer = if p % 2 == 0 { Fge::cyclic(2) } else { Fge::one() };
    Ok(CaseData::central_free(format!("U({p})"), outer))
}

fn sp_u_case(p: usize, g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    if 2 * p != g.n {
        return Err(unsupported(format!("u({p}) row in {g}")));
    }
    // The symplectic form conjugates U(p) to its complex conjugate copy.
    Ok(CaseData::central_free(format!("U({p})"), Fge::cyclic(2)))
}

fn so_tensor_case(
    factors: &[(AlgebraKind, usize)],
    g: ClassicalGroup,
) -> Result<CaseData, NormalizerError> {
    check_factors(factors, g)?;
    if factors.iter().any(|f| f.0 == AlgebraKind::Su) {
        return Err(unsupported(format!("unitary tensor factor in {g}")));
    }
    if factors.len() >= 3 {
        if let Some((kind, size)) = uniform_run(factors) {
            let l = factors.len();
            return match kind {
                AlgebraKind::So => uniform_so_tensor(size, l),
                AlgebraKind::Sp => {
                    if l % 2 == 1 {
                        Err(unsupported(
                            "odd number of symplectic tensor legs in an orthogonal ambient".into(),
                        ))
                    } else {
                        Ok(uniform_sp_tensor(size, l))
                    }
                }
                AlgebraKind::Su => unreachable!("checked above"),
            };
        }
    }
    match factors {
        [(AlgebraKind::So, p), (AlgebraKind::So, q)] => {
            let (p, q) = (*p, *q);
            if p < 3 || q < 3 {
                return Err(unsupported("orthogonal tensor factor of size < 3".into()));
            }
            if p == 4 && q == 4 {
                return Ok(uniform_sp_tensor(2, 4));
            }
            let both_even = p % 2 == 0 && q % 2 == 0;
            let label = if both_even {
                format!("SO({p}) x_{{Z2}} SO({q})")
            } else {
                format!("SO({p}) x SO({q})")
            };
            let full = if p != q {
                if both_even {
                    Fge::power(Fge::cyclic(2), 2)
                } else {
                    Fge::one()
                }
            } else if p % 2 == 1 {
                Fge::cyclic(2)
            } else if p % 4 == 2 {
                Fge::power(Fge::cyclic(2), 2)
            } else {
                // The two per-factor sign classes and the swap; the swap
                // acts on the signs by exchanging them.
                Fge::split(Fge::power(Fge::cyclic(2), 2), Fge::cyclic(2))
            };
            Ok(CaseData::central_free(label, full))
        }
        [(AlgebraKind::Sp, a), (AlgebraKind::Sp, b)] => {
            let (a, b) = (*a, *b);
            if a % 2 == 1 || b % 2 == 1 {
                return Err(unsupported("odd symplectic tensor factor size".into()));
            }
            let full = if a == b && (a / 2) % 2 == 0 {
                Fge::cyclic(2)
            } else {
                Fge::one()
            };
            Ok(CaseData::central_free(
                format!("Sp({a}) x_{{Z2}} Sp({b})"),
                full,
            ))
        }
        [(AlgebraKind::So, p), (AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2)] => {
            let p = *p;
            if p == 4 {
                return Ok(uniform_sp_tensor(2, 4));
            }
            let (big, small) = if p > 4 { (p, 4) } else { (4, p) };
            let (label, full) = if p % 2 == 0 {
                (
                    format!("SO({big}) x_{{Z2}} SO({small})"),
                    Fge::power(Fge::cyclic(2), 2),
                )
            } else {
                (format!("SO({big}) x SO({small})"), Fge::one())
            };
            Ok(CaseData::central_free(label, full))
        }
        _ => Err(unsupported(format!(
            "tensor shape not classified in {g}"
        ))),
    }
}

fn sp_tensor_case(
    factors: &[(AlgebraKind, usize)],
    g: ClassicalGroup,
) -> Result<CaseData, NormalizerError> {
    check_factors(factors, g)?;
    if factors.iter().any(|f| f.0 == AlgebraKind::Su) {
        return Err(unsupported(format!("unitary tensor factor in {g}")));
    }
    if factors.len() >= 3 {
        if let Some((kind, size)) = uniform_run(factors) {
            let l = factors.len();
            return match kind {
                AlgebraKind::Sp if l % 2 == 1 => Ok(uniform_sp_tensor(size, l)),
                AlgebraKind::Sp => Err(unsupported(
                    "even number of symplectic tensor legs in a symplectic ambient".into(),
                )),
                _ => Err(unsupported(
                    "orthogonal uniform tensor in a symplectic ambient".into(),
                )),
            };
        }
    }
    let mixed_pair = match factors {
        [(AlgebraKind::Sp, a), (AlgebraKind::So, q)] => Some((*a, *q)),
        [(AlgebraKind::So, q), (AlgebraKind::Sp, a)] => Some((*a, *q)),
        _ => None,
    };
    if let Some((a, q)) = mixed_pair {
        if a % 2 == 1 {
            return Err(unsupported("odd symplectic tensor factor size".into()));
        }
        if q < 3 {
            return Err(unsupported("orthogonal tensor factor of size < 3".into()));
        }
        if a == 2 && q == 4 {
            return Ok(uniform_sp_tensor(2, 3));
        }
        let (label, full) = if q % 2 == 1 {
            (format!("Sp({a}) x SO({q})"), Fge::one())
        } else {
            (format!("Sp({a}) x_{{Z2}} SO({q})"), Fge::cyclic(2))
        };
        return Ok(CaseData::central_free(label, full));
    }
    match factors {
        [(AlgebraKind::Sp, a), (AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2)] => {
            let a = *a;
            if a % 2 == 1 || a < 4 {
                return Err(unsupported("malformed three-leg symplectic tensor".into()));
            }
            Ok(CaseData::central_free(
                format!("Sp({a}) x_{{Z2}} SO(4)"),
                Fge::cyclic(2),
            ))
        }
        _ => Err(unsupported(format!(
            "tensor shape not classified in {g}"
        ))),
    }
}

fn uniform_so_tensor(p: usize, l: usize) -> Result<CaseData, NormalizerError> {
    if p < 3 {
        return Err(unsupported("orthogonal tensor factor of size < 3".into()));
    }
    if p == 4 {
        return Ok(uniform_sp_tensor(2, 2 * l));
    }
    let sym = Fge::symmetric(l as u64);
    if p % 2 == 1 {
        // A reflection on one leg is the global scalar -1 times a
        // rotation, so the per-leg sign classes die in the quotient.
        Ok(CaseData::central_free(format!("SO({p})^{l}"), sym))
    } else {
        let kernel = Fge::power(Fge::cyclic(2), (l - 1) as u64);
        let full = Fge::split(Fge::power(Fge::cyclic(2), l as u64), sym);
        Ok(CaseData::central_free(
            format!("SO({p})^{l} / {kernel}"),
            full,
        ))
    }
}

fn uniform_sp_tensor(a: usize, l: usize) -> CaseData {
    let kernel = Fge::power(Fge::cyclic(2), (l - 1) as u64);
    CaseData::central_free(
        format!("Sp({a})^{l} / {kernel}"),
        Fge::symmetric(l as u64),
    )
}

fn simple_case(irrep: &IrrepInfo, g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    if irrep.dim != g.n as u64 {
        return Err(unsupported(format!(
            "irreducible row of dimension {} in {g}",
            irrep.dim
        )));
    }
    match (g.kind, irrep.reality) {
        (GroupKind::SU, Reality::Real) => {
            if g.n < 3 || g.n == 4 || *irrep != orthogonal_defining_irrep(g.n) {
                return Err(unsupported(format!(
                    "real irreducible row in {g} must be the defining orthogonal copy"
                )));
            }
            // The full orthogonal group times the ambient scalars; one
            // component class per scalar for odd n, and for even n the
            // reflection classes contribute square roots.
            let n = g.n as u64;
            let (hi, outer) = if n % 2 == 1 {
                (Fge::cyclic(n), Fge::one())
            } else {
                (Fge::cyclic(n / 2), Fge::cyclic(2))
            };
            Ok(CaseData {
                h0_label: format!("SO({})", g.n),
                hi,
                h_mod_hi: Some(outer),
                h_mod_h0: Some(Fge::cyclic(n)),
                tabulated: false,
            })
        }
        (GroupKind::SU, Reality::Quaternionic) => {
            if g.n < 4 || g.n % 2 == 1 || *irrep != symplectic_defining_irrep(g.n) {
                return Err(unsupported(format!(
                    "quaternionic irreducible row in {g} must be the defining symplectic copy"
                )));
            }
            let scalars = Fge::cyclic(g.n as u64 / 2);
            Ok(CaseData {
                h0_label: format!("Sp({})", g.n),
                hi: scalars.clone(),
                h_mod_hi: Some(Fge::one()),
                h_mod_h0: Some(scalars),
                tabulated: false,
            })
        }
        (GroupKind::SU, Reality::Complex)
        | (GroupKind::SO, Reality::Real)
        | (GroupKind::Sp, Reality::Quaternionic) => generic_simple_case(irrep, g),
        (kind, reality) => Err(unsupported(format!(
            "{reality} irreducible row in a {kind} ambient"
        ))),
    }
}

fn generic_simple_case(irrep: &IrrepInfo, g: ClassicalGroup) -> Result<CaseData, NormalizerError> {
    let c = central_character_order(irrep.algebra, &irrep.weight).map_err(|e| {
        unsupported(format!(
            "central character of {}{}: {e}",
            irrep.algebra, irrep.weight
        ))
    })?;
    let z = g.center_order();
    if z % c != 0 {
        return Err(unsupported(format!(
            "central character order {c} does not divide the ambient center order {z}"
        )));
    }
    let hi = Fge::cyclic(z / c);
    // An ambient element acting by an outer automorphism would exhibit
    // the twisted action as equivalent, so only automorphisms fixing the
    // highest weight can occur. When none do, the outer part is trivial;
    // when one does, whether it extends is not decided here.
    let fixed = nontrivial_auto_fixes_weight(irrep.algebra, &irrep.weight);
    let (outer, full) = if fixed {
        (None, None)
    } else {
        (Some(Fge::one()), Some(hi.clone()))
    };
    Ok(CaseData {
        h0_label: format!("{}{} (dim {})", irrep.algebra, irrep.weight, irrep.dim),
        hi,
        h_mod_hi: outer,
        h_mod_h0: full,
        tabulated: false,
    })
}

fn nontrivial_auto_fixes_weight(a: SimpleAlgebraId, w: &HighestWeight) -> bool {
    diagram_automorphisms(a).iter().any(|perm| {
        let identity = perm.iter().enumerate().all(|(i, &j)| i == j);
        !identity
            && perm
                .iter()
                .enumerate()
                .all(|(i, &j)| w.labels[j] == w.labels[i])
    })
}

#[cfg(test)]
mod expr_tests {
    use super::*;

    fn roundtrip(s: &str) -> String {
        FiniteGroupExpr::parse(s).unwrap().to_string()
    }

    #[test]
    fn parse_and_render_atoms() {
        assert_eq!(roundtrip("1"), "1");
        assert_eq!(roundtrip("Z4"), "Z4");
        assert_eq!(roundtrip("Z_4"), "Z4");
        assert_eq!(roundtrip("S5"), "S5");
        assert_eq!(roundtrip("Z1"), "1");
        assert_eq!(roundtrip("S1"), "1");
        assert_eq!(roundtrip("S2"), "Z2");
    }

    #[test]
    fn product_sorting_and_powers() {
        assert_eq!(roundtrip("Z4 x Z2"), "Z2 x Z4");
        assert_eq!(roundtrip("S3 x Z2"), "Z2 x S3");
        assert_eq!(roundtrip("Z2 x Z2 x Z2"), "Z2^3");
        assert_eq!(roundtrip("Z2^3"), "Z2^3");
        assert_eq!(roundtrip("Z3 x 1 x Z3"), "Z3^2");
        assert_eq!(roundtrip("(Z2 x Z3)^2"), "Z2^2 x Z3^2");
    }

    #[test]
    fn central_product_rules() {
        assert_eq!(roundtrip("Z2 *Z2* Z4"), "Z4");
        assert_eq!(roundtrip("Z4 *Z2* Z4"), "Z4 *Z2* Z4");
        assert_eq!(roundtrip("Z2 *Z2* Z2"), "Z2");
        let e = FiniteGroupExpr::parse("Z4 *Z2* Z4").unwrap();
        assert_eq!(e.order(), 8);
    }

    #[test]
    fn extension_precedence_and_associativity() {
        assert_eq!(roundtrip("Z2 x Z2 : S3"), "Z2^2 : S3");
        assert_eq!(roundtrip("Z2^2 . S3"), "Z2^2 . S3");
        // Left associative chains render without parentheses.
        let left = FiniteGroupExpr::parse("Z2 : Z3 : Z5").unwrap();
        assert_eq!(left.to_string(), "Z2 : Z3 : Z5");
        let reparsed = FiniteGroupExpr::parse(&left.to_string()).unwrap();
        assert_eq!(left, reparsed);
        // Right nesting requires parentheses and keeps them.
        let right = FiniteGroupExpr::split(
            FiniteGroupExpr::cyclic(2),
            FiniteGroupExpr::split(FiniteGroupExpr::cyclic(3), FiniteGroupExpr::cyclic(5)),
        );
        assert_eq!(right.to_string(), "Z2 : (Z3 : Z5)");
        assert_eq!(
            FiniteGroupExpr::parse(&right.to_string()).unwrap(),
            right
        );
        // An extension inside a product needs parentheses.
        let p = FiniteGroupExpr::product(vec![
            FiniteGroupExpr::cyclic(2),
            FiniteGroupExpr::split(FiniteGroupExpr::cyclic(2), FiniteGroupExpr::cyclic(2)),
        ]);
        assert_eq!(p.to_string(), "Z2 x (Z2 : Z2)");
    }

    #[test]
    fn trivial_collapses_in_extensions() {
        assert_eq!(roundtrip("1 : S3"), "S3");
        assert_eq!(roundtrip("S3 : 1"), "S3");
        assert_eq!(roundtrip("Z1 . S4"), "S4");
    }

    #[test]
    fn orders() {
        let cases = [
            ("1", 1u128),
            ("Z6", 6),
            ("S4", 24),
            ("Z2^3 : S3", 48),
            ("Z3 x Z3 . Z2", 18),
            ("Z6 *Z2* Z4", 12),
        ];
        for (s, n) in cases {
            assert_eq!(FiniteGroupExpr::parse(s).unwrap().order(), n, "{s}");
        }
    }

    #[test]
    fn canonical_is_idempotent() {
        for s in [
            "Z2 x Z4 : S3 . Z2",
            "(Z3 x Z3) : Z2",
            "Z5 *Z2* Z4 x Z2",
            "Z2^4 : S4",
        ] {
            let e = FiniteGroupExpr::parse(s).unwrap();
            assert_eq!(e.canonical(), e);
            assert_eq!(FiniteGroupExpr::parse(&e.to_string()).unwrap(), e);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_expr() -> impl Strategy<Value = FiniteGroupExpr> {
            let leaf = prop_oneof![
                Just(FiniteGroupExpr::One),
                (0u64..8).prop_map(FiniteGroupExpr::cyclic),
                (0u64..6).prop_map(FiniteGroupExpr::symmetric),
            ];
            // Central products only ever amalgamate groups that really
            // contain a central Z2, so draw those parts from even cyclics.
            let central_part = (1u64..5).prop_map(|k| FiniteGroupExpr::cyclic(2 * k));
            leaf.prop_recursive(3, 24, 4, move |inner| {
                prop_oneof![
                    proptest::collection::vec(inner.clone(), 1..4)
                        .prop_map(FiniteGroupExpr::product),
                    proptest::collection::vec(central_part.clone(), 1..3)
                        .prop_map(FiniteGroupExpr::central_z2),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| FiniteGroupExpr::split(a, b)),
                    (inner.clone(), inner)
                        .prop_map(|(a, b)| FiniteGroupExpr::nonsplit(a, b)),
                ]
            })
        }

        proptest! {
            #[test]
            fn display_parse_roundtrip(e in arb_expr()) {
                let rendered = e.to_string();
                let reparsed = FiniteGroupExpr::parse(&rendered).unwrap();
                prop_assert_eq!(&reparsed, &e.canonical());
                prop_assert_eq!(reparsed.order(), e.order());
            }
        }
    }
}

#[cfg(test)]
mod assembly_tests {
    use super::*;
    use crate::rootdata::{dimension, reality_type};
    use num_bigint::BigUint;

    fn su(n: usize) -> ClassicalGroup {
        ClassicalGroup::new(GroupKind::SU, n).unwrap()
    }

    fn so(n: usize) -> ClassicalGroup {
        ClassicalGroup::new(GroupKind::SO, n).unwrap()
    }

    fn sp(n: usize) -> ClassicalGroup {
        ClassicalGroup::new(GroupKind::Sp, n).unwrap()
    }

    fn sum(kind: BlockKind, sizes: &[usize]) -> SubalgebraDescriptor {
        SubalgebraDescriptor {
            variant: SubalgebraVariant::DirectSum {
                blocks: sizes.iter().map(|&s| (kind, s)).collect(),
            },
            is_maximal_subalgebra: true,
            z2_status: Z2Status::NotApplicable,
        }
    }

    fn tensor(factors: &[(AlgebraKind, usize)]) -> SubalgebraDescriptor {
        SubalgebraDescriptor {
            variant: SubalgebraVariant::TensorProduct {
                factors: factors.to_vec(),
                kernel: FiniteGroupExpr::one(),
            },
            is_maximal_subalgebra: true,
            z2_status: Z2Status::NotApplicable,
        }
    }

    fn u_row(p: usize) -> SubalgebraDescriptor {
        SubalgebraDescriptor {
            variant: SubalgebraVariant::UInSelfDual { p },
            is_maximal_subalgebra: true,
            z2_status: Z2Status::NotApplicable,
        }
    }

    fn simple(irrep: IrrepInfo) -> SubalgebraDescriptor {
        SubalgebraDescriptor {
            variant: SubalgebraVariant::SimpleIrreducible { irrep },
            is_maximal_subalgebra: true,
            z2_status: Z2Status::NotApplicable,
        }
    }

    fn record(desc: &SubalgebraDescriptor, g: ClassicalGroup) -> MaximalSubgroupRecord {
        assemble_component_group(desc, g).unwrap()
    }

    fn full(desc: &SubalgebraDescriptor, g: ClassicalGroup) -> String {
        record(desc, g).h_mod_h0.expect("determined row").to_string()
    }

    #[test]
    fn unitary_flag_components() {
        let r = record(&sum(BlockKind::U, &[3, 3]), su(6));
        assert_eq!(r.h0_label, "S(U(3) x U(3))");
        assert_eq!(r.hi_mod_h0.to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");
        assert!(r.tabulated);

        assert_eq!(full(&sum(BlockKind::U, &[4, 2]), su(6)), "1");
        assert_eq!(full(&sum(BlockKind::U, &[2, 1]), su(3)), "1");
        assert_eq!(full(&sum(BlockKind::U, &[1, 1]), su(2)), "Z2");

        let r = record(&sum(BlockKind::U, &[2, 2, 2]), su(6));
        assert_eq!(r.h0_label, "S(U(2)^3)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S3");
    }

    #[test]
    fn unitary_tensor_components() {
        let d = tensor(&[(AlgebraKind::Su, 6), (AlgebraKind::Su, 2)]);
        let r = record(&d, su(12));
        assert_eq!(r.h0_label, "SU(6) x_{Z2} SU(2)");
        assert_eq!(r.hi_mod_h0.to_string(), "Z2");
        assert_eq!(r.h_mod_hi.unwrap().to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");

        let d = tensor(&[(AlgebraKind::Su, 4), (AlgebraKind::Su, 3)]);
        let r = record(&d, su(12));
        assert_eq!(r.h0_label, "SU(4) x SU(3)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "1");

        // Equal factors: the swap contributes an outer Z2 whose preimage
        // in the component group depends on p mod 4.
        let d = tensor(&[(AlgebraKind::Su, 6), (AlgebraKind::Su, 6)]);
        let r = record(&d, su(36));
        assert_eq!(r.h0_label, "SU(6) x_{Z6} SU(6)");
        assert_eq!(r.hi_mod_h0.to_string(), "Z6");
        assert_eq!(r.h_mod_hi.unwrap().to_string(), "Z2");
        let assembled = r.h_mod_h0.unwrap();
        assert_eq!(assembled.to_string(), "Z4 *Z2* Z6");
        assert_eq!(assembled.order(), 12);

        let d = tensor(&[(AlgebraKind::Su, 3), (AlgebraKind::Su, 3)]);
        assert_eq!(full(&d, su(9)), "Z2 x Z3");
        let d = tensor(&[(AlgebraKind::Su, 4), (AlgebraKind::Su, 4)]);
        assert_eq!(full(&d, su(16)), "Z2 x Z4");
        // p = 2: the central amalgam collapses to a single Z4.
        let d = tensor(&[(AlgebraKind::Su, 2), (AlgebraKind::Su, 2)]);
        assert_eq!(full(&d, su(4)), "Z4");
    }

    #[test]
    fn unitary_uniform_tensor_components() {
        let d = tensor(&[(AlgebraKind::Su, 2), (AlgebraKind::Su, 2), (AlgebraKind::Su, 2)]);
        let r = record(&d, su(8));
        assert_eq!(r.h0_label, "SU(2)^3 / Z2^2");
        assert_eq!(r.hi_mod_h0.to_string(), "Z4");
        assert_eq!(r.h_mod_hi.unwrap().to_string(), "S3");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z4 x S3");

        let d = tensor(&[(AlgebraKind::Su, 3), (AlgebraKind::Su, 3), (AlgebraKind::Su, 3)]);
        let r = record(&d, su(27));
        assert_eq!(r.h0_label, "SU(3)^3 / Z3^2");
        assert_eq!(r.hi_mod_h0.to_string(), "Z9");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z9 x S3");
    }

    #[test]
    fn orthogonal_sum_components() {
        // Both blocks odd: the diagonal -1 is a product of per-block
        // central elements, so the extra component is already central.
        let r = record(&sum(BlockKind::So, &[7, 3]), so(10));
        assert_eq!(r.hi_mod_h0.to_string(), "Z2");
        assert_eq!(r.h_mod_hi.unwrap().to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");

        let r = record(&sum(BlockKind::So, &[8, 2]), so(10));
        assert_eq!(r.hi_mod_h0.to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");

        assert_eq!(full(&sum(BlockKind::So, &[3, 3]), so(6)), "Z4");
        assert_eq!(full(&sum(BlockKind::So, &[6, 6]), so(12)), "Z2^2");
        assert_eq!(full(&sum(BlockKind::So, &[5, 5]), so(10)), "Z4");

        // Line stabilizers: tabulated only when the big block is so(4).
        let r = record(&sum(BlockKind::So, &[4, 1]), so(5));
        assert_eq!(r.h0_label, "SO(4)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");
        assert!(r.tabulated);
        let r = record(&sum(BlockKind::So, &[8, 1]), so(9));
        assert_eq!(r.h0_label, "SO(8)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");
        assert!(!r.tabulated);
        let r = record(&sum(BlockKind::So, &[9, 1]), so(10));
        assert_eq!(r.hi_mod_h0.to_string(), "Z2");
        assert_eq!(r.h_mod_hi.unwrap().to_string(), "1");
    }

    #[test]
    fn orthogonal_uniform_sum_components() {
        let r = record(&sum(BlockKind::So, &[3, 3, 3]), so(9));
        assert_eq!(r.h0_label, "SO(3)^3");
        assert_eq!(r.hi_mod_h0.to_string(), "Z2^2");
        assert_eq!(r.h_mod_hi.unwrap().to_string(), "S3");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2^2 . S3");

        // Even blocks split; so(2)-blocks give the torus normalizer,
        // whose component group is the D-series Weyl group.
        let r = record(&sum(BlockKind::So, &[2, 2, 2]), so(6));
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z2^2 : S3");
        assert_eq!(r.h_mod_h0.unwrap().order(), 24);
        assert_eq!(full(&sum(BlockKind::So, &[4, 4, 4]), so(12)), "Z2^2 : S3");
    }

    #[test]
    fn self_dual_u_components() {
        assert_eq!(full(&u_row(5), so(10)), "1");
        assert_eq!(full(&u_row(4), so(8)), "Z2");
        assert_eq!(full(&u_row(4), sp(8)), "Z2");
        assert_eq!(full(&u_row(3), sp(6)), "Z2");
        let r = record(&u_row(5), so(10));
        assert_eq!(r.h0_label, "U(5)");
        assert!(r.tabulated);
    }

    #[test]
    fn orthogonal_tensor_components() {
        let d = tensor(&[(AlgebraKind::So, 8), (AlgebraKind::So, 8)]);
        let r = record(&d, so(64));
        assert_eq!(r.h0_label, "SO(8) x_{Z2} SO(8)");
        assert_eq!(r.hi_mod_h0.to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2^2 : Z2");

        let d = tensor(&[(AlgebraKind::So, 6), (AlgebraKind::So, 6)]);
        assert_eq!(full(&d, so(36)), "Z2^2");
        let d = tensor(&[(AlgebraKind::So, 5), (AlgebraKind::So, 5)]);
        assert_eq!(full(&d, so(25)), "Z2");
        let d = tensor(&[(AlgebraKind::So, 5), (AlgebraKind::So, 3)]);
        let r = record(&d, so(15));
        assert_eq!(r.h0_label, "SO(5) x SO(3)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "1");
        let d = tensor(&[(AlgebraKind::So, 8), (AlgebraKind::So, 6)]);
        let r = record(&d, so(48));
        assert_eq!(r.h0_label, "SO(8) x_{Z2} SO(6)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2^2");

        // Symplectic pairs inside an orthogonal ambient.
        let d = tensor(&[(AlgebraKind::Sp, 4), (AlgebraKind::Sp, 4)]);
        assert_eq!(full(&d, so(16)), "Z2");
        let d = tensor(&[(AlgebraKind::Sp, 6), (AlgebraKind::Sp, 6)]);
        assert_eq!(full(&d, so(36)), "1");
        let d = tensor(&[(AlgebraKind::Sp, 6), (AlgebraKind::Sp, 2)]);
        assert_eq!(full(&d, so(12)), "1");

        // Three-leg rows carrying an so(4) factor.
        let d = tensor(&[(AlgebraKind::So, 3), (AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2)]);
        let r = record(&d, so(12));
        assert_eq!(r.h0_label, "SO(4) x SO(3)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "1");
        let d = tensor(&[(AlgebraKind::So, 6), (AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2)]);
        let r = record(&d, so(24));
        assert_eq!(r.h0_label, "SO(6) x_{Z2} SO(4)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2^2");

        // Uniform tensor powers.
        let d = tensor(&[(AlgebraKind::So, 3), (AlgebraKind::So, 3), (AlgebraKind::So, 3)]);
        let r = record(&d, so(27));
        assert_eq!(r.h0_label, "SO(3)^3");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S3");
        let d = tensor(&[(AlgebraKind::So, 6), (AlgebraKind::So, 6), (AlgebraKind::So, 6)]);
        let r = record(&d, so(216));
        assert_eq!(r.h0_label, "SO(6)^3 / Z2^2");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2^3 : S3");
        let d = tensor(&[(AlgebraKind::Sp, 2); 4]);
        let r = record(&d, so(16));
        assert_eq!(r.h0_label, "Sp(2)^4 / Z2^3");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S4");
        // The same data reached through the so(4) x so(4) shape.
        let d = tensor(&[(AlgebraKind::So, 4), (AlgebraKind::So, 4)]);
        let r = record(&d, so(16));
        assert_eq!(r.h0_label, "Sp(2)^4 / Z2^3");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S4");
    }

    #[test]
    fn symplectic_components() {
        assert_eq!(full(&sum(BlockKind::Sp, &[6, 2]), sp(8)), "1");
        assert_eq!(full(&sum(BlockKind::Sp, &[4, 4]), sp(8)), "Z2");
        let r = record(&sum(BlockKind::Sp, &[2, 2, 2]), sp(6));
        assert_eq!(r.h0_label, "Sp(2)^3");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S3");

        let d = tensor(&[(AlgebraKind::So, 3), (AlgebraKind::Sp, 2)]);
        let r = record(&d, sp(6));
        assert_eq!(r.h0_label, "Sp(2) x SO(3)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "1");
        let d = tensor(&[(AlgebraKind::So, 6), (AlgebraKind::Sp, 4)]);
        let r = record(&d, sp(24));
        assert_eq!(r.h0_label, "Sp(4) x_{Z2} SO(6)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");

        let d = tensor(&[(AlgebraKind::Sp, 4), (AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2)]);
        let r = record(&d, sp(16));
        assert_eq!(r.h0_label, "Sp(4) x_{Z2} SO(4)");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");

        // The 2 x 2 x 2 cube: treated as the uniform power, where the
        // full leg-permutation group acts.
        let d = tensor(&[(AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2), (AlgebraKind::Sp, 2)]);
        let r = record(&d, sp(8));
        assert_eq!(r.h0_label, "Sp(2)^3 / Z2^2");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S3");
        // Same data through the sp(2) tensor so(4) shape.
        let d = tensor(&[(AlgebraKind::Sp, 2), (AlgebraKind::So, 4)]);
        let r = record(&d, sp(8));
        assert_eq!(r.h0_label, "Sp(2)^3 / Z2^2");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S3");

        let d = tensor(&[(AlgebraKind::Sp, 4), (AlgebraKind::Sp, 4), (AlgebraKind::Sp, 4)]);
        let r = record(&d, sp(64));
        assert_eq!(r.h0_label, "Sp(4)^3 / Z2^2");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "S3");
    }

    #[test]
    fn irreducible_simple_components() {
        // Symmetric square of the defining su(3) representation.
        let ir = IrrepInfo {
            algebra: SimpleAlgebraId::canonical(Series::A, 2).unwrap(),
            weight: HighestWeight { labels: vec![2, 0] },
            dim: 6,
            reality: Reality::Complex,
        };
        let r = record(&simple(ir), su(6));
        assert_eq!(r.h0_label, "A2[2,0] (dim 6)");
        assert_eq!(r.hi_mod_h0.to_string(), "Z2");
        assert_eq!(r.h_mod_hi.unwrap().to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "Z2");
        assert!(!r.tabulated);

        let ir = IrrepInfo {
            algebra: SimpleAlgebraId::canonical(Series::G, 2).unwrap(),
            weight: HighestWeight { labels: vec![1, 0] },
            dim: 7,
            reality: Reality::Real,
        };
        let r = record(&simple(ir), so(7));
        assert_eq!(r.hi_mod_h0.to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "1");

        let ir = IrrepInfo {
            algebra: SimpleAlgebraId::canonical(Series::A, 1).unwrap(),
            weight: HighestWeight { labels: vec![5] },
            dim: 6,
            reality: Reality::Quaternionic,
        };
        let r = record(&simple(ir), sp(6));
        assert_eq!(r.hi_mod_h0.to_string(), "1");
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "1");

        // A weight fixed by the nontrivial diagram flip: the outer part
        // stays open.
        let ir = IrrepInfo {
            algebra: SimpleAlgebraId::canonical(Series::D, 6).unwrap(),
            weight: HighestWeight {
                labels: vec![0, 0, 0, 1, 0, 0],
            },
            dim: 495,
            reality: Reality::Real,
        };
        let r = record(&simple(ir), so(495));
        assert_eq!(r.hi_mod_h0.to_string(), "1");
        assert!(r.h_mod_hi.is_none());
        assert!(r.h_mod_h0.is_none());
        assert!(!r.determined());

        // Adjoint of so(10): also flip-fixed.
        let ir = IrrepInfo {
            algebra: SimpleAlgebraId::canonical(Series::D, 5).unwrap(),
            weight: HighestWeight {
                labels: vec![0, 1, 0, 0, 0],
            },
            dim: 45,
            reality: Reality::Real,
        };
        let r = record(&simple(ir), so(45));
        assert!(r.h_mod_h0.is_none());

        // A half-spin weight moves under the flip, so the outer part is
        // decided even though the algebra has outer automorphisms.
        let ir = IrrepInfo {
            algebra: SimpleAlgebraId::canonical(Series::D, 8).unwrap(),
            weight: HighestWeight {
                labels: vec![0, 0, 0, 0, 0, 0, 0, 1],
            },
            dim: 128,
            reality: Reality::Real,
        };
        let r = record(&simple(ir), so(128));
        assert_eq!(r.h_mod_h0.unwrap().to_string(), "1");
    }

    #[test]
    fn defining_classical_subgroups_of_su() {
        let list = maximal_subgroups(su(7), &ExceptionFilter::Absent).unwrap();
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "SO(7)")
            .unwrap();
        assert_eq!(r.hi_mod_h0.to_string(), "Z7");
        assert_eq!(r.h_mod_hi.clone().unwrap().to_string(), "1");
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z7");
        assert!(!r.tabulated);

        let list = maximal_subgroups(su(8), &ExceptionFilter::Absent).unwrap();
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "SO(8)")
            .unwrap();
        assert_eq!(r.hi_mod_h0.to_string(), "Z4");
        assert_eq!(r.h_mod_hi.clone().unwrap().to_string(), "Z2");
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z8");
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "Sp(8)")
            .unwrap();
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z4");

        let list = maximal_subgroups(su(6), &ExceptionFilter::Absent).unwrap();
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "SO(6)")
            .unwrap();
        assert_eq!(r.hi_mod_h0.to_string(), "Z3");
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z6");
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "Sp(6)")
            .unwrap();
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z3");

        // n = 4: no separate orthogonal row; the tensor square carries
        // the same subgroup, with matching component group Z4.
        let list = maximal_subgroups(su(4), &ExceptionFilter::Absent).unwrap();
        assert!(list.records.iter().all(|r| r.h0_label != "SO(4)"));
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "SU(2) x_{Z2} SU(2)")
            .unwrap();
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z4");
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "Sp(4)")
            .unwrap();
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z2");
    }

    #[test]
    fn classical_defining_irreps_are_consistent() {
        for n in 3..=24usize {
            if n == 4 {
                continue;
            }
            let ir = orthogonal_defining_irrep(n);
            assert_eq!(
                dimension(ir.algebra, &ir.weight).unwrap(),
                BigUint::from(n),
                "orthogonal dim at n = {n}"
            );
            assert_eq!(
                reality_type(ir.algebra, &ir.weight).unwrap(),
                Reality::Real,
                "orthogonal reality at n = {n}"
            );
        }
        for n in (4..=24usize).step_by(2) {
            let ir = symplectic_defining_irrep(n);
            assert_eq!(
                dimension(ir.algebra, &ir.weight).unwrap(),
                BigUint::from(n),
                "symplectic dim at n = {n}"
            );
            assert_eq!(
                reality_type(ir.algebra, &ir.weight).unwrap(),
                Reality::Quaternionic,
                "symplectic reality at n = {n}"
            );
        }
    }

    #[test]
    fn listed_subgroups_match_known_small_cases() {
        let list = maximal_subgroups(so(5), &ExceptionFilter::Absent).unwrap();
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "SO(4)")
            .unwrap();
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z2");
        assert!(r.tabulated);

        let list = maximal_subgroups(so(10), &ExceptionFilter::Absent).unwrap();
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "U(5)")
            .unwrap();
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "1");

        let list = maximal_subgroups(su(2), &ExceptionFilter::Absent).unwrap();
        let r = list
            .records
            .iter()
            .find(|r| r.h0_label == "S(U(1) x U(1))")
            .unwrap();
        assert_eq!(r.h_mod_h0.clone().unwrap().to_string(), "Z2");
    }

    #[test]
    fn tabulated_rows_of_so12() {
        let list = maximal_subgroups(so(12), &ExceptionFilter::Absent).unwrap();
        let mut rows: Vec<(String, String)> = list
            .records
            .iter()
            .filter(|r| r.tabulated)
            .map(|r| {
                (
                    r.h0_label.clone(),
                    r.h_mod_h0.clone().expect("tabulated rows are determined").to_string(),
                )
            })
            .collect();
        rows.sort();
        let expected: Vec<(String, String)> = [
            ("SO(10) x SO(2)", "Z2"),
            ("SO(9) x SO(3)", "Z2"),
            ("SO(8) x SO(4)", "Z2"),
            ("SO(7) x SO(5)", "Z2"),
            ("SO(6) x SO(6)", "Z2^2"),
            ("SO(4)^3", "Z2^2 : S3"),
            ("SO(3)^4", "Z2^3 . S4"),
            ("SO(2)^6", "Z2^5 : S6"),
            ("U(6)", "Z2"),
            ("SO(4) x SO(3)", "1"),
            ("Sp(6) x_{Z2} Sp(2)", "1"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(rows, expected);
    }

    #[test]
    fn component_group_invariants_hold_in_range() {
        let mut groups = Vec::new();
        for n in 2..=14 {
            groups.push(su(n));
        }
        for n in 5..=14 {
            groups.push(so(n));
        }
        for n in (4..=14).step_by(2) {
            groups.push(sp(n));
        }
        for g in groups {
            let list = maximal_subgroups(g, &ExceptionFilter::Absent).unwrap();
            assert_eq!(list.group, g);
            for r in &list.records {
                assert_eq!(r.mtype, MaximalType::NormalizerType);
                assert_eq!(
                    r.h_mod_hi.is_some(),
                    r.h_mod_h0.is_some(),
                    "partial determination in {g}: {}",
                    r.h0_label
                );
                if let (Some(outer), Some(full)) = (&r.h_mod_hi, &r.h_mod_h0) {
                    assert_eq!(
                        full.order(),
                        r.hi_mod_h0.order() * outer.order(),
                        "order mismatch in {g}: {}",
                        r.h0_label
                    );
                }
                let expect_tab = match &r.descriptor.variant {
                    SubalgebraVariant::SimpleIrreducible { .. } => false,
                    SubalgebraVariant::DirectSum { blocks }
                        if g.kind() == GroupKind::SO && blocks.last().map(|b| b.1) == Some(1) =>
                    {
                        blocks[0].1 == 4
                    }
                    _ => true,
                };
                assert_eq!(r.tabulated, expect_tab, "tabulated flag in {g}: {}", r.h0_label);
                if r.tabulated {
                    assert!(r.determined(), "tabulated row undetermined in {g}: {}", r.h0_label);
                }
            }
        }
    }

    #[test]
    fn malformed_descriptors_are_rejected() {
        assert!(assemble_component_group(&u_row(3), su(6)).is_err());
        assert!(assemble_component_group(&sum(BlockKind::So, &[3, 3]), su(6)).is_err());
        assert!(assemble_component_group(&sum(BlockKind::U, &[3, 3]), so(6)).is_err());
        assert!(assemble_component_group(&sum(BlockKind::Sp, &[3, 3]), sp(6)).is_err());
        assert!(assemble_component_group(&sum(BlockKind::U, &[4, 3]), su(6)).is_err());
        let d = tensor(&[(AlgebraKind::Su, 3), (AlgebraKind::Su, 2)]);
        assert!(assemble_component_group(&d, so(6)).is_err());
        let d = tensor(&[(AlgebraKind::So, 3), (AlgebraKind::Sp, 2)]);
        assert!(assemble_component_group(&d, so(6)).is_err());
        let d = tensor(&[(AlgebraKind::Sp, 4), (AlgebraKind::Sp, 2)]);
        assert!(assemble_component_group(&d, sp(8)).is_err());
        let ir = IrrepInfo {
            algebra: SimpleAlgebraId::canonical(Series::A, 2).unwrap(),
            weight: HighestWeight { labels: vec![2, 0] },
            dim: 6,
            reality: Reality::Complex,
        };
        assert!(assemble_component_group(&simple(ir.clone()), so(6)).is_err());
        assert!(assemble_component_group(&simple(ir), su(7)).is_err());
    }

    #[test]
    fn group_kind_parsing_and_bounds() {
        assert_eq!("su".parse::<GroupKind>().unwrap(), GroupKind::SU);
        assert_eq!("SO".parse::<GroupKind>().unwrap(), GroupKind::SO);
        assert_eq!("Sp".parse::<GroupKind>().unwrap(), GroupKind::Sp);
        assert!("spin".parse::<GroupKind>().is_err());
        assert!(ClassicalGroup::new(GroupKind::SU, 1).is_err());
        assert!(ClassicalGroup::new(GroupKind::SO, 4).is_err());
        assert!(ClassicalGroup::new(GroupKind::Sp, 5).is_err());
        assert_eq!(su(6).center_order(), 6);
        assert_eq!(so(7).center_order(), 1);
        assert_eq!(so(8).center_order(), 2);
        assert_eq!(sp(8).center_order(), 2);
        assert_eq!(su(6).to_string(), "SU(6)");
        assert_eq!(su(6).algebra().to_string(), "su(6)");
    }
}
