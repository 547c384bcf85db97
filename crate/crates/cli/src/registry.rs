//! Built-in example structures, addressable as `@name`.

use crate::format::{graded_block, lie_block, poly_terms, prelie_block, rep_block, rows, LieField, StructureFile};
use rbx::homotopy::examples::{aff1_dg, aff1_dg_homotopy_rbo, solve_two_term_prelie};
use rbx::registry;
use rbx::structures::{LieAlgebra, Rbo};

pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    /// `verify` kinds each example must pass.
    pub verify: &'static [&'static str],
}

pub const ENTRIES: &[Entry] = &[
    Entry { name: "abelian-n", description: "abelian Lie algebra of dimension n (e.g. abelian-3)", verify: &["lie"] },
    Entry { name: "aff1", description: "[e1,e2] = e2", verify: &["lie", "linf"] },
    Entry { name: "aff1-T0", description: "aff(1) with T(e1) = e1, T(e2) = 0 on the adjoint representation", verify: &["lie", "rep", "rbo", "rrb", "hrbo"] },
    Entry { name: "aff1-nilpotent", description: "aff(1) with the square-zero operator [[1,1],[-1,-1]]", verify: &["lie", "rep", "rbo", "rrb"] },
    Entry { name: "heis3", description: "Heisenberg algebra [e1,e2] = e3", verify: &["lie", "linf"] },
    Entry { name: "sl2", description: "[h,e] = 2e, [h,f] = -2f, [e,f] = h", verify: &["lie"] },
    Entry { name: "sl2-r-he", description: "sl(2) with the r-matrix h^e", verify: &["lie", "cybe"] },
    Entry { name: "aff1-dg", description: "two-term L-infinity algebra from aff(1) + <b>, dx = b, with a non-strict operator", verify: &["linf", "hrbo"] },
    Entry { name: "prelie-2term", description: "pre-Lie-infinity structure on degrees -1, 0 with a ternary product", verify: &["prelie"] },
];

fn with_lie(name: &str, description: &str, lie: &LieAlgebra) -> StructureFile {
    let mut f = StructureFile::empty();
    f.name = Some(name.into());
    f.description = Some(description.into());
    f.lie = Some(LieField::Inline(lie_block(lie)));
    f
}

fn with_rbo(name: &str, description: &str, rbo: &Rbo) -> StructureFile {
    let mut f = with_lie(name, description, rbo.lie());
    f.rep = Some(rep_block(rbo.as_relative().rep()));
    f.operator = Some(rows(rbo.t()));
    f
}

fn description(name: &str) -> &'static str {
    ENTRIES.iter().find(|e| e.name == name).map_or("", |e| e.description)
}

pub fn abelian_dim(name: &str) -> Option<usize> {
    name.strip_prefix("abelian-")?.parse().ok().filter(|n| (1..=8).contains(n))
}

pub fn lookup(name: &str) -> Option<StructureFile> {
    if let Some(n) = abelian_dim(name) {
        return Some(with_lie(name, &format!("abelian Lie algebra of dimension {n}"), &registry::abelian(n)));
    }
    let d = description(name);
    Some(match name {
        "aff1" => with_lie(name, d, &registry::aff1()),
        "heis3" => with_lie(name, d, &registry::heis3()),
        "sl2" => with_lie(name, d, &registry::sl2()),
        "aff1-T0" => with_rbo(name, d, &registry::aff1_t0()),
        "aff1-nilpotent" => with_rbo(name, d, &registry::aff1_nilpotent()),
        "sl2-r-he" => {
            let t = registry::sl2_r_he();
            let mut f = with_lie(name, d, t.lie());
            f.r = Some(poly_terms(t.r()));
            f
        }
        "aff1-dg" => {
            let mut f = StructureFile::empty();
            f.name = Some(name.into());
            f.description = Some(d.into());
            f.graded = Some(graded_block(&aff1_dg(), Some(&aff1_dg_homotopy_rbo())));
            f
        }
        "prelie-2term" => {
            let mut f = StructureFile::empty();
            f.name = Some(name.into());
            f.description = Some(d.into());
            f.graded = Some(prelie_block(&solve_two_term_prelie()?));
            f
        }
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Report;

    fn concrete_names() -> Vec<String> {
        ENTRIES.iter().map(|e| if e.name == "abelian-n" { "abelian-3".to_string() } else { e.name.to_string() }).collect()
    }

    #[test]
    fn every_entry_round_trips() {
        for name in concrete_names() {
            let f = lookup(&name).unwrap_or_else(|| panic!("{name} missing"));
            let text = f.emit();
            let back = StructureFile::parse(&text).unwrap();
            assert_eq!(back, f, "{name}");
            assert_eq!(back.emit(), text, "{name}");
        }
    }

    #[test]
    fn every_entry_passes_its_own_checks() {
        for (e, name) in ENTRIES.iter().zip(concrete_names()) {
            let f = lookup(&name).unwrap();
            for kind in e.verify {
                let mut rep = Report::new(format!("verify {kind} @{name}"));
                if *kind == "prelie" {
                    crate::commands::prelie_cmd("subadjacent", &f, &mut rep).unwrap();
                } else {
                    crate::commands::verify(kind, &f, None, &mut rep).unwrap();
                }
                assert!(rep.ok, "{name} {kind}: {:?}", rep.checks);
            }
        }
    }

    #[test]
    fn abelian_family_is_bounded() {
        assert_eq!(abelian_dim("abelian-4"), Some(4));
        assert_eq!(abelian_dim("abelian-0"), None);
        assert_eq!(abelian_dim("abelian-x"), None);
        assert!(lookup("no-such-thing").is_none());
    }

    #[test]
    fn references_resolve_inside_files() {
        let text = r#"{"format": 1, "field": "rational", "lie": "@aff1", "rep": {"kind": "adjoint"}, "operator": [["1", "0"], ["0", "0"]]}"#;
        let f = StructureFile::parse(text).unwrap();
        let op = crate::commands::loader().relative(&f).unwrap();
        assert!(op.verify().ok);
    }
}
