//! Text rendering and table comparison.

use crate::golden::{ConcreteAlgebraRow, ConcreteGroupRow};
use crate::model::{algebra_displayed, component_str, family_of, z2_str};
use maxsub_core::normalizer::MaximalSubgroupList;
use maxsub_core::primsub::{algebra_label, z2_invariance, AlgebraKind, PrimitiveList};
use std::collections::BTreeMap;

fn two_column(out: &mut String, rows: &[(String, String)], left_header: &str, right_header: &str) {
    let width = rows
        .iter()
        .map(|(l, _)| l.len())
        .chain([left_header.len()])
        .max()
        .unwrap_or(0);
    out.push_str(&format!("  {left_header:width$} | {right_header}\n"));
    for (l, r) in rows {
        out.push_str(&format!("  {l:width$} | {r}\n"));
    }
}

fn one_column(out: &mut String, rows: &[String], header: &str) {
    out.push_str(&format!("  {header}\n"));
    for l in rows {
        out.push_str(&format!("  {l}\n"));
    }
}

/// Text layout of the maximal-subgroup lists: one section per ambient
/// group, a two-column H0 | H/H0 table of the tabulated rows, then the
/// irreducible simple rows.
pub fn render_list_text(lists: &[MaximalSubgroupList]) -> String {
    let mut out = String::new();
    for (i, list) in lists.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("{}\n", list.group));
        let tabulated: Vec<(String, String)> = list
            .records
            .iter()
            .filter(|r| r.tabulated)
            .map(|r| (r.h0_label.clone(), component_str(r)))
            .collect();
        two_column(&mut out, &tabulated, "H0", "H/H0");
        let simple: Vec<(String, String)> = list
            .records
            .iter()
            .filter(|r| !r.tabulated)
            .map(|r| (r.h0_label.clone(), component_str(r)))
            .collect();
        if !simple.is_empty() {
            out.push_str("  irreducible simple subgroups:\n");
            two_column(&mut out, &simple, "H0", "H/H0");
        }
        if list.simple_unfiltered {
            out.push_str("  note: simple rows unfiltered (no exception table loaded)\n");
        }
    }
    out
}

/// Text layout of the primitive-subalgebra tables: maximal rows, then
/// non-maximal rows, with the orientation column for orthogonal ambients.
pub fn render_primitive_text(lists: &[PrimitiveList]) -> String {
    let mut out = String::new();
    for (i, list) in lists.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("{}\n", list.ambient));
        let with_z2 = list.ambient.kind() == AlgebraKind::So;
        for (maximal, title) in [(true, "maximal:"), (false, "not maximal:")] {
            let rows: Vec<_> = list
                .descriptors
                .iter()
                .filter(|d| {
                    family_of(d).is_some()
                        && algebra_displayed(d, list.ambient)
                        && d.is_maximal_subalgebra == maximal
                })
                .collect();
            if rows.is_empty() {
                continue;
            }
            out.push_str(&format!("  {title}\n"));
            if with_z2 {
                let table: Vec<(String, String)> = rows
                    .iter()
                    .map(|d| {
                        (
                            algebra_label(d, list.ambient),
                            z2_str(z2_invariance(d, list.ambient)).to_string(),
                        )
                    })
                    .collect();
                two_column(&mut out, &table, "subalgebra", "z2");
            } else {
                let table: Vec<String> = rows
                    .iter()
                    .map(|d| algebra_label(d, list.ambient))
                    .collect();
                one_column(&mut out, &table, "subalgebra");
            }
        }
        if list.simple_unfiltered {
            out.push_str("  note: simple rows unfiltered (no exception table loaded)\n");
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Table comparison.

/// Comparison outcome: one line per divergence, empty means agreement.
#[derive(Clone, Debug, Default)]
pub struct DiffReport {
    pub lines: Vec<String>,
    pub rows_checked: usize,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn extend(&mut self, other: DiffReport) {
        self.lines.extend(other.lines);
        self.rows_checked += other.rows_checked;
    }
}

fn keyed<K: Ord, V, I: IntoIterator<Item = (K, V)>>(items: I) -> BTreeMap<K, Vec<V>> {
    let mut map: BTreeMap<K, Vec<V>> = BTreeMap::new();
    for (k, v) in items {
        map.entry(k).or_default().push(v);
    }
    map
}

fn diff_keyed<V: Ord + Clone + std::fmt::Display>(
    context: &str,
    golden: BTreeMap<(String, String), Vec<V>>,
    engine: BTreeMap<(String, String), Vec<V>>,
    what: &str,
) -> Vec<String> {
    let mut lines = Vec::new();
    let keys: Vec<_> = golden.keys().chain(engine.keys()).cloned().collect();
    let mut seen = std::collections::BTreeSet::new();
    for key in keys {
        if !seen.insert(key.clone()) {
            continue;
        }
        let mut g = golden.get(&key).cloned().unwrap_or_default();
        let mut e = engine.get(&key).cloned().unwrap_or_default();
        g.sort();
        e.sort();
        if g == e {
            continue;
        }
        let (family, label) = &key;
        if g.len() == 1 && e.len() == 1 {
            lines.push(format!(
                "{context}: {family} {label}: {what} differs: table {}, engine {}",
                g[0], e[0]
            ));
            continue;
        }
        for v in &g {
            if !e.contains(v) {
                lines.push(format!(
                    "{context}: missing from engine: {family} {label} [{v}]"
                ));
            }
        }
        for v in &e {
            if !g.contains(v) {
                lines.push(format!(
                    "{context}: not in table: {family} {label} [{v}]"
                ));
            }
        }
    }
    lines
}

pub fn diff_group_rows(
    context: &str,
    golden: &[ConcreteGroupRow],
    engine: &[ConcreteGroupRow],
) -> DiffReport {
    let g = keyed(golden.iter().map(|r| {
        (
            (r.family.as_str().to_string(), r.label.clone()),
            r.component.clone(),
        )
    }));
    let e = keyed(engine.iter().map(|r| {
        (
            (r.family.as_str().to_string(), r.label.clone()),
            r.component.clone(),
        )
    }));
    DiffReport {
        lines: diff_keyed(context, g, e, "component"),
        rows_checked: golden.len(),
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct AlgebraPayload {
    maximal: bool,
    z2: String,
}

impl std::fmt::Display for AlgebraPayload {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m = if self.maximal { "maximal" } else { "nonmaximal" };
        write!(f, "({m}, z2 {})", self.z2)
    }
}

pub fn diff_algebra_rows(
    context: &str,
    golden: &[ConcreteAlgebraRow],
    engine: &[ConcreteAlgebraRow],
) -> DiffReport {
    let g = keyed(golden.iter().map(|r| {
        (
            (r.family.as_str().to_string(), r.label.clone()),
            AlgebraPayload {
                maximal: r.maximal,
                z2: r.z2.clone(),
            },
        )
    }));
    let e = keyed(engine.iter().map(|r| {
        (
            (r.family.as_str().to_string(), r.label.clone()),
            AlgebraPayload {
                maximal: r.maximal,
                z2: r.z2.clone(),
            },
        )
    }));
    DiffReport {
        lines: diff_keyed(context, g, e, "row data"),
        rows_checked: golden.len(),
    }
}
