//! Maximal invariant subgroups of a power of a simple compact group.
//!
//! Input: a product `G_s x ... x G_s` of `n` copies of a simple group,
//! together with a symmetry group Σ that permutes the copies (and may act
//! on each copy by outer automorphisms), plus a data table listing the
//! maximal Σ_s-invariant subgroups of the single factor. Output: the
//! maximal Σ-invariant connected-full subgroups of the product, each of
//! which either
//!
//! * replaces the factors along one Σ-orbit by a maximal invariant
//!   subgroup and keeps the remaining factors whole, or
//! * collapses several factors onto a diagonally embedded copy.
//!
//! The first kind is normal in the ambient product exactly when the
//! replacement subgroup is discrete; every diagonal is self-normalizing
//! up to components, hence of normalizer kind.
//!
//! Everything here is label-level bookkeeping: the factor subgroups are
//! opaque strings with a discreteness flag, and Σ is given by explicit
//! generators. The only real computation is the block analysis that finds
//! the coarsest diagonal compatible with a transitive Σ.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

/// Outer-automorphism label meaning "act trivially on the factor".
pub const OUTER_TRIVIAL: &str = "1";

/// One generator of the symmetry group Σ of a product of identical
/// factors: a permutation of the copies together with a per-copy outer
/// automorphism applied before the shuffle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaGenerator {
    /// Permutation as an image table: copy `i` is sent to `perm[i]`.
    pub perm: Vec<usize>,
    /// Outer-automorphism label applied on copy `i`; `"1"` is trivial.
    pub outer: Vec<String>,
}

impl SigmaGenerator {
    /// A generator that only permutes, with no outer twist.
    pub fn pure(perm: Vec<usize>) -> Self {
        let outer = vec![OUTER_TRIVIAL.to_string(); perm.len()];
        SigmaGenerator { perm, outer }
    }
}

/// A product of `copies` identical simple factors with a symmetry group
/// given by explicit generators. `sigma` empty means the trivial
/// symmetry: every factor is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGroupSpec {
    /// Display label of the repeated factor, e.g. `"SO(3)"`.
    pub factor: String,
    /// Number of factors, at least 1.
    pub copies: usize,
    /// Generators of the symmetry group.
    pub sigma: Vec<SigmaGenerator>,
}

impl ProductGroupSpec {
    pub fn new(factor: &str, copies: usize, sigma: Vec<SigmaGenerator>) -> Self {
        ProductGroupSpec {
            factor: factor.to_string(),
            copies,
            sigma,
        }
    }

    fn validate(&self) -> Result<(), ReductionError> {
        let bad = |message: String| ReductionError::InvalidSpec { message };
        if self.copies == 0 {
            return Err(bad("a product needs at least one factor".into()));
        }
        for (k, gen) in self.sigma.iter().enumerate() {
            if gen.perm.len() != self.copies || gen.outer.len() != self.copies {
                return Err(bad(format!(
                    "generator {k} has length {} / {} but the product has {} factors",
                    gen.perm.len(),
                    gen.outer.len(),
                    self.copies
                )));
            }
            let mut seen = vec![false; self.copies];
            for &img in &gen.perm {
                if img >= self.copies || seen[img] {
                    return Err(bad(format!("generator {k} is not a permutation")));
                }
                seen[img] = true;
            }
        }
        Ok(())
    }

    /// Distinct nontrivial outer labels used by the generators: the part
    /// of Σ that acts on a single factor and that the per-factor subgroup
    /// table must be invariant under.
    pub fn outer_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = Vec::new();
        for gen in &self.sigma {
            for label in &gen.outer {
                if label != OUTER_TRIVIAL && !labels.contains(label) {
                    labels.push(label.clone());
                }
            }
        }
        labels.sort();
        labels
    }

    /// Whether the permutation part moves every copy into every other.
    pub fn is_transitive(&self) -> bool {
        orbits(self.copies, &self.sigma).len() == 1
    }
}

/// One maximal invariant subgroup of the single factor, as supplied data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSubgroupEntry {
    /// Display label, e.g. `"O(2)"` or `"I"`.
    pub label: String,
    /// Component group of the subgroup (the whole group when discrete),
    /// kept as free text: the finite groups here (A5 for one) fall
    /// outside the cyclic/symmetric expression language used elsewhere.
    pub component_group: String,
    /// Discrete subgroups give normal maximal subgroups of the product;
    /// positive-dimensional ones give normalizer-kind subgroups.
    pub discrete: bool,
}

/// Table of the maximal invariant subgroups of one simple factor,
/// invariant under the outer labels in `sigma_s`. This is input data,
/// not something the crate derives: for each factor group it comes from
/// the corresponding classification (for SO(3), the classical finite
/// subgroup list plus O(2)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMaximalData {
    /// Factor the table describes; must match `ProductGroupSpec::factor`.
    pub factor: String,
    /// Outer labels the listed subgroups are invariant under. The
    /// trivial label is always understood.
    pub sigma_s: Vec<String>,
    pub entries: Vec<FactorSubgroupEntry>,
    /// Provenance from a `# source:` comment, empty if absent.
    pub source_uri: String,
}

impl FactorMaximalData {
    /// Parses the line-oriented factor table format:
    ///
    /// ```text
    /// # comment; "# source: <uri>" sets the provenance field
    /// # factor: <label>
    /// # sigma_s: <label1,...,labelr>     (optional, default trivial)
    /// <subgroup-label> <component-group> <discrete|continuous>
    /// ```
    pub fn parse(text: &str) -> Result<Self, ReductionError> {
        let mut factor = String::new();
        let mut sigma_s = Vec::new();
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
                } else if let Some(name) = rest.strip_prefix("factor:") {
                    factor = name.trim().to_string();
                } else if let Some(list) = rest.strip_prefix("sigma_s:") {
                    for label in list.split(',') {
                        let label = label.trim();
                        if !label.is_empty() && label != OUTER_TRIVIAL {
                            sigma_s.push(label.to_string());
                        }
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
        if factor.is_empty() {
            return Err(ReductionError::ParseError {
                line: 0,
                message: "missing \"# factor:\" header".into(),
            });
        }
        sigma_s.sort();
        sigma_s.dedup();
        Ok(FactorMaximalData {
            factor,
            sigma_s,
            entries,
            source_uri,
        })
    }

    fn parse_entry(body: &str, lineno: usize) -> Result<FactorSubgroupEntry, ReductionError> {
        let bad = |message: String| ReductionError::ParseError {
            line: lineno,
            message,
        };
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(bad(
                "expected: label component-group discrete|continuous".into(),
            ));
        }
        let discrete = match toks[2] {
            "discrete" => true,
            "continuous" => false,
            other => return Err(bad(format!("unknown dimension flag {other}"))),
        };
        Ok(FactorSubgroupEntry {
            label: toks[0].to_string(),
            component_group: toks[1].to_string(),
            discrete,
        })
    }
}

/// How a record sits inside the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    /// The factors along one Σ-orbit are replaced by a maximal invariant
    /// subgroup; all other factors stay whole.
    OrbitReplacement,
    /// Several whole factors are collapsed onto a diagonal copy.
    Diagonal,
}

/// Whether the subgroup is normal in the product or only recovered as a
/// normalizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalKind {
    Normal,
    Normalizer,
}

/// One maximal Σ-invariant subgroup of the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMaximalRecord {
    pub kind: ReductionKind,
    pub maximal_kind: MaximalKind,
    /// Display label, factors joined by " x " in copy order, diagonals
    /// rendered as `diag_p <factor>`.
    pub label: String,
    /// Component group of the replacement subgroup, for orbit
    /// replacements built from a single table entry.
    pub component_group: Option<String>,
    /// For a diagonal over a transitive Σ: `(p, q)` with `p` factors
    /// collapsing onto each of `q` diagonal copies, `p * q = copies`.
    pub partition: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionError {
    InvalidSpec { message: String },
    FactorDataMismatch { message: String },
    ParseError { line: usize, message: String },
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::InvalidSpec { message } => {
                write!(f, "invalid product spec: {message}")
            }
            ReductionError::FactorDataMismatch { message } => {
                write!(f, "factor data mismatch: {message}")
            }
            ReductionError::ParseError { line, message } => {
                write!(f, "factor table line {line}: {message}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ReductionError {}

/// Orbit partition of `{0, ..., n-1}` under the permutation parts of the
/// generators. Orbits are sorted internally and by smallest element.
fn orbits(n: usize, gens: &[SigmaGenerator]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for gen in gens {
        for (i, &img) in gen.perm.iter().enumerate() {
            uf.union(i, img);
        }
    }
    uf.classes()
}

/// Union-find over `0..n` with class extraction; small and allocation
/// friendly, which is all the block analysis needs.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the call actually merged two classes.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.retain(|c| !c.is_empty());
        by_root
    }
}

/// Finest Σ-compatible equivalence relation that merges `a` with `b`:
/// close the single identification under every generator. For a
/// transitive Σ the classes form a block system (all classes have equal
/// size and generators permute them).
fn minimal_blocks(n: usize, gens: &[SigmaGenerator], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = queue.pop() {
        for gen in gens {
            let (gx, gy) = (gen.perm[x], gen.perm[y]);
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    uf.classes()
}

/// Blocks of the coarsest diagonal a transitive Σ allows: the partition
/// of the copies with the smallest block size above 1 that generators
/// carry to itself. Always exists for `copies > 1` (the single all-copy
/// block at worst). Returns `None` for one copy or a non-transitive Σ;
/// when several partitions share the minimal block size, any one of them
/// supports a maximal diagonal and the first found is returned.
pub fn minimal_invariant_partition(spec: &ProductGroupSpec) -> Option<Vec<Vec<usize>>> {
    let n = spec.copies;
    if n <= 1 || !spec.is_transitive() {
        return None;
    }
    let mut best: Option<Vec<Vec<usize>>> = None;
    for x in 1..n {
        let classes = minimal_blocks(n, &spec.sigma, 0, x);
        let size = classes[0].len();
        debug_assert!(classes.iter().all(|c| c.len() == size));
        debug_assert_eq!(n % size, 0);
        if best.as_ref().map_or(true, |b| size < b[0].len()) {
            best = Some(classes);
        }
    }
    best
}

/// Diagonal shape available over a transitive Σ: the unique `(p, q)`
/// with `p` minimal such that the copies split into `q` blocks of size
/// `p > 1` permuted by Σ, each block collapsing onto one diagonal
/// factor. Empty for a single copy. Callers with a non-transitive Σ
/// should decompose into orbits first; this returns empty for them.
pub fn diagonal_partitions(spec: &ProductGroupSpec) -> Vec<(usize, usize)> {
    match minimal_invariant_partition(spec) {
        Some(blocks) => {
            let p = blocks[0].len();
            vec![(p, spec.copies / p)]
        }
        None => Vec::new(),
    }
}

/// Restriction of the generators to one orbit, reindexed along the
/// sorted orbit. Identity generators are kept; transitivity of the
/// restricted action on the orbit is automatic.
fn restrict_to_orbit(n: usize, orbit: &[usize], gens: &[SigmaGenerator]) -> Vec<SigmaGenerator> {
    let mut position = vec![usize::MAX; n];
    for (slot, &copy) in orbit.iter().enumerate() {
        position[copy] = slot;
    }
    gens.iter()
        .map(|gen| {
            let mut perm = vec![0; orbit.len()];
            let mut outer = vec![String::new(); orbit.len()];
            for (slot, &copy) in orbit.iter().enumerate() {
                perm[slot] = position[gen.perm[copy]];
                outer[slot] = gen.outer[copy].clone();
            }
            SigmaGenerator { perm, outer }
        })
        .collect()
}

/// Rows for a transitively permuted product: one replacement row per
/// table entry (the same subgroup in every copy), then the coarsest
/// diagonal.
fn transitive_rows(
    spec: &ProductGroupSpec,
    data: &FactorMaximalData,
) -> Vec<ProductMaximalRecord> {
    let n = spec.copies;
    let mut rows = Vec::new();
    for entry in &data.entries {
        let parts = vec![entry.label.clone(); n];
        rows.push(ProductMaximalRecord {
            kind: ReductionKind::OrbitReplacement,
            maximal_kind: if entry.discrete {
                MaximalKind::Normal
            } else {
                MaximalKind::Normalizer
            },
            label: parts.join(" x "),
            component_group: Some(entry.component_group.clone()),
            partition: None,
        });
    }
    for (p, q) in diagonal_partitions(spec) {
        let one = format!("diag_{p} {}", spec.factor);
        let parts = vec![one; q];
        rows.push(ProductMaximalRecord {
            kind: ReductionKind::Diagonal,
            maximal_kind: MaximalKind::Normalizer,
            label: parts.join(" x "),
            component_group: None,
            partition: Some((p, q)),
        });
    }
    rows
}

/// The maximal Σ-invariant subgroups of the product, from the per-factor
/// table.
///
/// For a transitive Σ every row either replaces all copies by the same
/// table subgroup or collapses the copies onto the coarsest invariant
/// diagonal. Otherwise the copies split into Σ-orbits and every row
/// either replaces one whole orbit (by a row of the orbit's own
/// transitive problem) while keeping the rest, or collapses a pair of
/// fixed copies onto a plain two-fold diagonal. Pairwise diagonals of
/// orbits of size above one need an equivariant matching of the two
/// orbit actions and are not modeled; only fixed-copy pairs produce
/// diagonal rows here.
///
/// A single copy passes the table through unchanged. Row order: orbits
/// by smallest copy, within an orbit table order then diagonals, then
/// the fixed-pair diagonals.
pub fn product_maximal_subgroups(
    spec: &ProductGroupSpec,
    data: &FactorMaximalData,
) -> Result<Vec<ProductMaximalRecord>, ReductionError> {
    spec.validate()?;
    if data.factor != spec.factor {
        return Err(ReductionError::FactorDataMismatch {
            message: format!(
                "table describes {} but the product repeats {}",
                data.factor, spec.factor
            ),
        });
    }
    for label in spec.outer_labels() {
        if !data.sigma_s.contains(&label) {
            return Err(ReductionError::FactorDataMismatch {
                message: format!("table entries are not known to be invariant under {label}"),
            });
        }
    }
    if data.entries.is_empty() {
        return Err(ReductionError::FactorDataMismatch {
            message: "factor table has no entries".into(),
        });
    }
    let n = spec.copies;
    if n == 1 {
        let single = ProductGroupSpec::new(&spec.factor, 1, Vec::new());
        return Ok(transitive_rows(&single, data));
    }
    let orbit_list = orbits(n, &spec.sigma);
    if orbit_list.len() == 1 {
        return Ok(transitive_rows(spec, data));
    }

    let mut rows = Vec::new();
    for (which, orbit) in orbit_list.iter().enumerate() {
        // Rows of the orbit's own transitive problem, with every other
        // orbit kept whole.
        let sub_spec = ProductGroupSpec {
            factor: spec.factor.clone(),
            copies: orbit.len(),
            sigma: restrict_to_orbit(n, orbit, &spec.sigma),
        };
        for inner in transitive_rows(&sub_spec, data) {
            let mut parts = Vec::new();
            for (j, other) in orbit_list.iter().enumerate() {
                if j == which {
                    parts.push(inner.label.clone());
                } else {
                    parts.extend(vec![spec.factor.clone(); other.len()]);
                }
            }
            rows.push(ProductMaximalRecord {
                kind: ReductionKind::OrbitReplacement,
                maximal_kind: inner.maximal_kind,
                label: parts.join(" x "),
                component_group: inner.component_group.clone(),
                partition: None,
            });
        }
    }
    let fixed: Vec<usize> = orbit_list
        .iter()
        .filter(|o| o.len() == 1)
        .map(|o| o[0])
        .collect();
    for i in 0..fixed.len() {
        for j in i + 1..fixed.len() {
            let mut parts = Vec::new();
            for orbit in &orbit_list {
                if orbit.len() == 1 && orbit[0] == fixed[j] {
                    continue;
                }
                if orbit.len() == 1 && orbit[0] == fixed[i] {
                    parts.push(format!("diag_2 {}", spec.factor));
                } else {
                    parts.extend(vec![spec.factor.clone(); orbit.len()]);
                }
            }
            rows.push(ProductMaximalRecord {
                kind: ReductionKind::Diagonal,
                maximal_kind: MaximalKind::Normalizer,
                label: parts.join(" x "),
                component_group: None,
                partition: None,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3_table() -> FactorMaximalData {
        FactorMaximalData::parse(
            "# source: test\n\
             # factor: SO(3)\n\
             O S4 discrete\n\
             I A5 discrete\n\
             O(2) Z2 continuous\n",
        )
        .unwrap()
    }

    fn swap2() -> SigmaGenerator {
        SigmaGenerator::pure(vec![1, 0])
    }

    fn labels(rows: &[ProductMaximalRecord]) -> Vec<String> {
        rows.iter().map(|r| r.label.clone()).collect()
    }

    #[test]
    fn factor_table_parses_headers_and_rows() {
        let data = so3_table();
        assert_eq!(data.factor, "SO(3)");
        assert_eq!(data.source_uri, "test");
        assert!(data.sigma_s.is_empty());
        assert_eq!(data.entries.len(), 3);
        assert_eq!(data.entries[0].label, "O");
        assert_eq!(data.entries[0].component_group, "S4");
        assert!(data.entries[0].discrete);
        assert!(!data.entries[2].discrete);
    }

    #[test]
    fn factor_table_rejects_malformed_input() {
        assert!(FactorMaximalData::parse("O S4 discrete\n").is_err());
        assert!(FactorMaximalData::parse("# factor: G\nO S4\n").is_err());
        assert!(FactorMaximalData::parse("# factor: G\nO S4 finite\n").is_err());
    }

    #[test]
    fn singleton_product_passes_the_table_through() {
        let spec = ProductGroupSpec::new("SO(3)", 1, Vec::new());
        let rows = product_maximal_subgroups(&spec, &so3_table()).unwrap();
        assert_eq!(labels(&rows), ["O", "I", "O(2)"]);
        assert_eq!(rows[0].maximal_kind, MaximalKind::Normal);
        assert_eq!(rows[1].maximal_kind, MaximalKind::Normal);
        assert_eq!(rows[2].maximal_kind, MaximalKind::Normalizer);
        assert!(rows.iter().all(|r| r.kind == ReductionKind::OrbitReplacement));
    }

    // Two fixed copies: each factor replaced separately, plus the
    // two-fold diagonal.
    #[test]
    fn untwisted_square_lists_asymmetric_rows_and_the_diagonal() {
        let spec = ProductGroupSpec::new("SO(3)", 2, Vec::new());
        let rows = product_maximal_subgroups(&spec, &so3_table()).unwrap();
        assert_eq!(
            labels(&rows),
            [
                "O x SO(3)",
                "I x SO(3)",
                "O(2) x SO(3)",
                "SO(3) x O",
                "SO(3) x I",
                "SO(3) x O(2)",
                "diag_2 SO(3)",
            ]
        );
        let normal: Vec<bool> = rows
            .iter()
            .map(|r| r.maximal_kind == MaximalKind::Normal)
            .collect();
        assert_eq!(normal, [true, true, false, true, true, false, false]);
        assert_eq!(rows[6].kind, ReductionKind::Diagonal);
        assert_eq!(rows[6].partition, None);
    }

    // Swap-invariant subgroups of the square: both copies move together.
    #[test]
    fn swapped_square_lists_symmetric_rows_and_the_diagonal() {
        let spec = ProductGroupSpec::new("SO(3)", 2, vec![swap2()]);
        let rows = product_maximal_subgroups(&spec, &so3_table()).unwrap();
        assert_eq!(
            labels(&rows),
            ["O x O", "I x I", "O(2) x O(2)", "diag_2 SO(3)"]
        );
        assert_eq!(rows[0].maximal_kind, MaximalKind::Normal);
        assert_eq!(rows[1].maximal_kind, MaximalKind::Normal);
        assert_eq!(rows[2].maximal_kind, MaximalKind::Normalizer);
        assert_eq!(rows[3].kind, ReductionKind::Diagonal);
        assert_eq!(rows[3].maximal_kind, MaximalKind::Normalizer);
        assert_eq!(rows[3].partition, Some((2, 1)));
    }

    #[test]
    fn two_copy_swap_collapses_fully() {
        let spec = ProductGroupSpec::new("G", 2, vec![swap2()]);
        assert_eq!(diagonal_partitions(&spec), [(2, 1)]);
    }

    // A 4-cycle only preserves the pairing of opposite copies, so the
    // coarsest diagonal glues copies {0, 2} and {1, 3}.
    #[test]
    fn four_cycle_pairs_opposite_copies() {
        let spec = ProductGroupSpec::new("G", 4, vec![SigmaGenerator::pure(vec![1, 2, 3, 0])]);
        assert_eq!(diagonal_partitions(&spec), [(2, 2)]);
        let blocks = minimal_invariant_partition(&spec).unwrap();
        assert_eq!(blocks, [vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn full_symmetric_group_on_three_copies_allows_only_the_full_diagonal() {
        let spec = ProductGroupSpec::new(
            "G",
            3,
            vec![
                SigmaGenerator::pure(vec![1, 0, 2]),
                SigmaGenerator::pure(vec![1, 2, 0]),
            ],
        );
        assert_eq!(diagonal_partitions(&spec), [(3, 1)]);
    }

    #[test]
    fn single_copy_has_no_diagonal() {
        let spec = ProductGroupSpec::new("G", 1, Vec::new());
        assert_eq!(diagonal_partitions(&spec), Vec::<(usize, usize)>::new());
    }

    #[test]
    fn klein_four_action_keeps_the_minimal_pairing() {
        // <(01)(23), (02)(13)> is transitive; 0~1 closes to the two-block
        // pairing {0,1},{2,3}.
        let spec = ProductGroupSpec::new(
            "G",
            4,
            vec![
                SigmaGenerator::pure(vec![1, 0, 3, 2]),
                SigmaGenerator::pure(vec![2, 3, 0, 1]),
            ],
        );
        assert_eq!(diagonal_partitions(&spec), [(2, 2)]);
    }

    #[test]
    fn four_copy_rows_under_a_four_cycle() {
        let spec = ProductGroupSpec::new("SO(3)", 4, vec![SigmaGenerator::pure(vec![1, 2, 3, 0])]);
        let rows = product_maximal_subgroups(&spec, &so3_table()).unwrap();
        assert_eq!(
            labels(&rows),
            [
                "O x O x O x O",
                "I x I x I x I",
                "O(2) x O(2) x O(2) x O(2)",
                "diag_2 SO(3) x diag_2 SO(3)",
            ]
        );
        assert_eq!(rows[3].partition, Some((2, 2)));
    }

    #[test]
    fn mixed_orbits_replace_each_orbit_and_pair_only_fixed_copies() {
        // Copies {0,1} swapped, copy 2 fixed: the swapped pair is
        // replaced as a unit (symmetric rows or its inner diagonal), the
        // fixed copy separately; no fixed pair exists, so no outer
        // diagonal row.
        let gen = SigmaGenerator::pure(vec![1, 0, 2]);
        let spec = ProductGroupSpec::new("SO(3)", 3, vec![gen]);
        let rows = product_maximal_subgroups(&spec, &so3_table()).unwrap();
        assert_eq!(
            labels(&rows),
            [
                "O x O x SO(3)",
                "I x I x SO(3)",
                "O(2) x O(2) x SO(3)",
                "diag_2 SO(3) x SO(3)",
                "SO(3) x SO(3) x O",
                "SO(3) x SO(3) x I",
                "SO(3) x SO(3) x O(2)",
            ]
        );
        // The inner diagonal of the swapped pair is a normalizer-kind
        // replacement row at the level of the three-copy product.
        assert_eq!(rows[3].kind, ReductionKind::OrbitReplacement);
        assert_eq!(rows[3].maximal_kind, MaximalKind::Normalizer);
    }

    #[test]
    fn three_fixed_copies_pair_all_three_ways() {
        let spec = ProductGroupSpec::new("SO(3)", 3, Vec::new());
        let rows = product_maximal_subgroups(&spec, &so3_table()).unwrap();
        let diagonals: Vec<&ProductMaximalRecord> = rows
            .iter()
            .filter(|r| r.kind == ReductionKind::Diagonal)
            .collect();
        assert_eq!(diagonals.len(), 3);
        assert_eq!(diagonals[0].label, "diag_2 SO(3) x SO(3)");
        assert_eq!(diagonals[1].label, "diag_2 SO(3) x SO(3)");
        assert_eq!(diagonals[2].label, "SO(3) x diag_2 SO(3)");
    }

    #[test]
    fn outer_twists_must_be_covered_by_the_table() {
        let mut gen = swap2();
        gen.outer[0] = "conj".to_string();
        let spec = ProductGroupSpec::new("SO(3)", 2, vec![gen]);
        let err = product_maximal_subgroups(&spec, &so3_table()).unwrap_err();
        assert!(matches!(err, ReductionError::FactorDataMismatch { .. }));

        let covered = FactorMaximalData::parse(
            "# factor: SO(3)\n# sigma_s: conj\nO S4 discrete\n",
        )
        .unwrap();
        let mut gen = swap2();
        gen.outer[0] = "conj".to_string();
        let spec = ProductGroupSpec::new("SO(3)", 2, vec![gen]);
        assert!(product_maximal_subgroups(&spec, &covered).is_ok());
    }

    #[test]
    fn spec_and_table_must_agree() {
        let spec = ProductGroupSpec::new("SU(2)", 2, vec![swap2()]);
        assert!(matches!(
            product_maximal_subgroups(&spec, &so3_table()),
            Err(ReductionError::FactorDataMismatch { .. })
        ));

        let empty = FactorMaximalData::parse("# factor: SO(3)\n").unwrap();
        let spec = ProductGroupSpec::new("SO(3)", 2, vec![swap2()]);
        assert!(matches!(
            product_maximal_subgroups(&spec, &empty),
            Err(ReductionError::FactorDataMismatch { .. })
        ));

        let bad = ProductGroupSpec::new("SO(3)", 2, vec![SigmaGenerator::pure(vec![0, 0])]);
        assert!(matches!(
            product_maximal_subgroups(&bad, &so3_table()),
            Err(ReductionError::InvalidSpec { .. })
        ));
    }

    // Independent oracle: enumerate every partition of the copies into
    // blocks of size d and test invariance directly.
    fn some_partition_with_block_size(n: usize, d: usize, gens: &[SigmaGenerator]) -> bool {
        fn invariant(blocks: &[Vec<usize>], gens: &[SigmaGenerator]) -> bool {
            gens.iter().all(|gen| {
                blocks.iter().all(|block| {
                    let mut image: Vec<usize> = block.iter().map(|&x| gen.perm[x]).collect();
                    image.sort_unstable();
                    blocks.contains(&image)
                })
            })
        }
        fn search(
            remaining: &mut Vec<usize>,
            blocks: &mut Vec<Vec<usize>>,
            d: usize,
            gens: &[SigmaGenerator],
        ) -> bool {
            if remaining.is_empty() {
                return invariant(blocks, gens);
            }
            let anchor = remaining[0];
            let rest: Vec<usize> = remaining[1..].to_vec();
            let mut chosen = vec![anchor];
            fn pick(
                rest: &[usize],
                start: usize,
                chosen: &mut Vec<usize>,
                blocks: &mut Vec<Vec<usize>>,
                d: usize,
                gens: &[SigmaGenerator],
            ) -> bool {
                if chosen.len() == d {
                    let mut next: Vec<usize> = rest
                        .iter()
                        .filter(|x| !chosen.contains(x))
                        .copied()
                        .collect();
                    blocks.push(chosen.clone());
                    let ok = search(&mut next, blocks, d, gens);
                    blocks.pop();
                    return ok;
                }
                for idx in start..rest.len() {
                    chosen.push(rest[idx]);
                    if pick(rest, idx + 1, chosen, blocks, d, gens) {
                        return true;
                    }
                    chosen.pop();
                }
                false
            }
            pick(&rest, 0, &mut chosen, blocks, d, gens)
        }
        let mut all: Vec<usize> = (0..n).collect();
        search(&mut all, &mut Vec::new(), d, gens)
    }

    // Sweep of transitive actions on up to six copies: the reported
    // partition is invariant with the claimed shape, and no invariant
    // partition with a smaller block size exists.
    #[test]
    fn minimal_partition_agrees_with_exhaustive_search() {
        let mut cases: Vec<(usize, Vec<SigmaGenerator>)> = Vec::new();
        for n in 2..=6usize {
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            cases.push((n, vec![SigmaGenerator::pure(cycle.clone())]));
            let mut transposition: Vec<usize> = (0..n).collect();
            transposition.swap(0, 1);
            cases.push((
                n,
                vec![
                    SigmaGenerator::pure(cycle),
                    SigmaGenerator::pure(transposition),
                ],
            ));
        }
        cases.push((
            4,
            vec![
                SigmaGenerator::pure(vec![1, 0, 3, 2]),
                SigmaGenerator::pure(vec![2, 3, 0, 1]),
            ],
        ));
        cases.push((
            6,
            vec![
                SigmaGenerator::pure(vec![1, 2, 0, 4, 5, 3]),
                SigmaGenerator::pure(vec![3, 4, 5, 0, 1, 2]),
            ],
        ));
        for (n, gens) in cases {
            let spec = ProductGroupSpec::new("G", n, gens.clone());
            assert!(spec.is_transitive(), "case n={n} not transitive");
            let parts = diagonal_partitions(&spec);
            assert_eq!(parts.len(), 1);
            let (p, q) = parts[0];
            assert_eq!(p * q, n);
            assert!(p > 1);
            assert!(q < n);
            let blocks = minimal_invariant_partition(&spec).unwrap();
            assert_eq!(blocks.len(), q);
            assert!(blocks.iter().all(|b| b.len() == p));
            for gen in &gens {
                for block in &blocks {
                    let mut image: Vec<usize> = block.iter().map(|&x| gen.perm[x]).collect();
                    image.sort_unstable();
                    assert!(blocks.contains(&image), "n={n} block image escapes");
                }
            }
            assert!(some_partition_with_block_size(n, p, &gens));
            for d in 2..p {
                if n % d == 0 {
                    assert!(
                        !some_partition_with_block_size(n, d, &gens),
                        "n={n}: found invariant partition with blocks of {d} < {p}"
                    );
                }
            }
        }
    }
}
