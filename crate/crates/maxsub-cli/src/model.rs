//! Bridging between engine output and table rows, plus the JSON shapes.

use crate::golden::{ConcreteAlgebraRow, ConcreteGroupRow, Family};
use maxsub_core::normalizer::{MaximalSubgroupList, MaximalSubgroupRecord};
use maxsub_core::primsub::{
    algebra_label, z2_invariance, BlockKind, ClassicalAlgebra, PrimitiveList, SubalgebraDescriptor,
    SubalgebraVariant, Z2Status,
};
use serde::{Deserialize, Serialize};

/// Family of a descriptor, `None` for the simple irreducible rows that
/// the tables do not list.
pub fn family_of(desc: &SubalgebraDescriptor) -> Option<Family> {
    match &desc.variant {
        SubalgebraVariant::DirectSum { .. } => Some(Family::Sum),
        SubalgebraVariant::TensorProduct { .. } => Some(Family::Tensor),
        SubalgebraVariant::UInSelfDual { .. } => Some(Family::Unitary),
        SubalgebraVariant::SimpleIrreducible { .. } => None,
    }
}

pub fn z2_str(status: Z2Status) -> &'static str {
    match status {
        Z2Status::Z2Primitive => "z2_primitive",
        Z2Status::NotZ2 => "not_z2",
        Z2Status::NotApplicable => "-",
    }
}

/// Whether an algebra-table candidate is displayed as a table row.
/// Orthogonal line stabilizers so(n-1) are cross-referenced rather than
/// repeated, except at n = 5 where the big block degenerates.
pub fn algebra_displayed(desc: &SubalgebraDescriptor, alg: ClassicalAlgebra) -> bool {
    match &desc.variant {
        SubalgebraVariant::SimpleIrreducible { .. } => false,
        SubalgebraVariant::DirectSum { blocks } => {
            let has_line = blocks
                .iter()
                .any(|&(kind, size)| kind == BlockKind::So && size == 1);
            !has_line || alg.n() == 5
        }
        _ => true,
    }
}

/// Tabulated normalizer rows in table form.
pub fn engine_group_rows(list: &MaximalSubgroupList) -> Vec<ConcreteGroupRow> {
    list.records
        .iter()
        .filter(|r| r.tabulated)
        .map(|r| ConcreteGroupRow {
            family: family_of(&r.descriptor).expect("tabulated rows are never simple"),
            label: r.h0_label.clone(),
            component: component_str(r),
        })
        .collect()
}

pub fn component_str(record: &MaximalSubgroupRecord) -> String {
    match &record.h_mod_h0 {
        Some(e) => e.to_string(),
        None => "undetermined".to_string(),
    }
}

/// Displayed candidate rows in table form.
pub fn engine_algebra_rows(list: &PrimitiveList) -> Vec<ConcreteAlgebraRow> {
    list.descriptors
        .iter()
        .filter(|d| algebra_displayed(d, list.ambient))
        .map(|d| ConcreteAlgebraRow {
            family: family_of(d).expect("displayed rows are never simple"),
            label: algebra_label(d, list.ambient),
            maximal: d.is_maximal_subalgebra,
            z2: z2_str(z2_invariance(d, list.ambient)).to_string(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// JSON output shapes. Field order is the serialization order, and the
// round trip parse -> render is byte-identical.

pub const SCHEMA: &str = "maxsub/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListDocument {
    pub schema: String,
    pub command: String,
    pub groups: Vec<ListGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListGroup {
    pub group: String,
    pub kind: String,
    pub n: usize,
    pub simple_unfiltered: bool,
    pub subgroups: Vec<ListRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListRow {
    pub h0: String,
    pub family: String,
    pub central: String,
    pub outer: Option<String>,
    pub component: Option<String>,
    pub tabulated: bool,
    pub maximal_subalgebra: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveDocument {
    pub schema: String,
    pub command: String,
    pub algebras: Vec<PrimitiveAlgebra>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveAlgebra {
    pub algebra: String,
    pub kind: String,
    pub n: usize,
    pub simple_unfiltered: bool,
    pub rows: Vec<PrimitiveRow>,
    pub simple_rows: Vec<SimpleRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveRow {
    pub subalgebra: String,
    pub family: String,
    pub maximal: bool,
    pub z2: String,
    pub displayed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleRow {
    pub subalgebra: String,
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema: String,
    pub command: String,
    pub checks: Vec<VerifyCheckRow>,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCheckRow {
    pub group: String,
    pub subalgebra: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

pub fn list_document(lists: &[MaximalSubgroupList]) -> ListDocument {
    let groups = lists
        .iter()
        .map(|list| ListGroup {
            group: list.group.to_string(),
            kind: list.group.kind().to_string(),
            n: list.group.n(),
            simple_unfiltered: list.simple_unfiltered,
            subgroups: list
                .records
                .iter()
                .map(|r| ListRow {
                    h0: r.h0_label.clone(),
                    family: family_of(&r.descriptor)
                        .map(|f| f.as_str().to_string())
                        .unwrap_or_else(|| "simple".to_string()),
                    central: r.hi_mod_h0.to_string(),
                    outer: r.h_mod_hi.as_ref().map(|e| e.to_string()),
                    component: r.h_mod_h0.as_ref().map(|e| e.to_string()),
                    tabulated: r.tabulated,
                    maximal_subalgebra: r.descriptor.is_maximal_subalgebra,
                })
                .collect(),
        })
        .collect();
    ListDocument {
        schema: SCHEMA.to_string(),
        command: "list".to_string(),
        groups,
    }
}

pub fn primitive_document(lists: &[PrimitiveList]) -> PrimitiveDocument {
    let algebras = lists
        .iter()
        .map(|list| {
            let mut rows = Vec::new();
            let mut simple_rows = Vec::new();
            for d in &list.descriptors {
                match family_of(d) {
                    Some(f) => rows.push(PrimitiveRow {
                        subalgebra: algebra_label(d, list.ambient),
                        family: f.as_str().to_string(),
                        maximal: d.is_maximal_subalgebra,
                        z2: z2_str(z2_invariance(d, list.ambient)).to_string(),
                        displayed: algebra_displayed(d, list.ambient),
                    }),
                    None => simple_rows.push(SimpleRow {
                        subalgebra: algebra_label(d, list.ambient),
                        maximal: d.is_maximal_subalgebra,
                    }),
                }
            }
            PrimitiveAlgebra {
                algebra: list.ambient.to_string(),
                kind: list.ambient.kind().to_string(),
                n: list.ambient.n(),
                simple_unfiltered: list.simple_unfiltered,
                rows,
                simple_rows,
            }
        })
        .collect();
    PrimitiveDocument {
        schema: SCHEMA.to_string(),
        command: "primitive".to_string(),
        algebras,
    }
}
