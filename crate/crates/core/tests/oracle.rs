use sphmap::degrees::mapping_degree_set;
use sphmap::groups::GroupSpec;
use sphmap::lens::DegreeSet;
use sphmap::oracle::{brute_degree_set, list_tables, verify_all, verify_table, Status};
use sphmap::Error;

fn spec(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

#[test]
fn exact_tables_pass() {
    for id in ["conj-O48", "conj-I120", "char-subgroups", "subgroups-O48", "subgroups-I120", "out-groups", "example-5.2", "self-degree-O48", "lens-remark", "aut-I120"] {
        let r = verify_table(id).unwrap();
        assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.rows.iter().filter(|x| x.status != Status::Pass).collect::<Vec<_>>());
    }
}

#[test]
fn row_counts() {
    assert_eq!(verify_table("conj-I120").unwrap().rows.len(), 9);
    assert_eq!(verify_table("example-5.2").unwrap().rows.len(), 12);
}

#[test]
fn nothing_fails() {
    let reports = verify_all();
    assert_eq!(reports.len(), list_tables().len());
    for r in &reports {
        assert_ne!(r.status, Status::Fail, "{}", r.table_id);
        for row in &r.rows {
            if row.status != Status::Pass {
                assert!(row.note.is_some() || row.reproducer.is_some(), "{}: {}", r.table_id, row.label);
            }
        }
    }
}

#[test]
fn lens_covers_is_discrepancy() {
    let r = verify_table("lens-covers").unwrap();
    assert_eq!(r.status, Status::Discrepancy);
    assert!(r.count(Status::Pass) > r.count(Status::Discrepancy));
}

#[test]
fn unknown_table() {
    assert!(matches!(verify_table("no-such-table"), Err(Error::UnknownTable(_))));
}

#[test]
fn brute_agrees_with_engine() {
    let pairs = [
        ("D*(2)", "D*(2)"),
        ("D*(4)", "D*(2)"),
        ("T'(1)", "T'(1)"),
        ("T'(2)", "L(9;1,1)"),
        ("T'(2)", "L(9;1,2)"),
        ("D'(3,2)", "D'(3,2)"),
        ("L(120;1,7)", "Z(5)xO*"),
        ("L(8;1,3)", "D*(2)"),
        ("O*", "O*"),
    ];
    for (a, b) in pairs {
        let (a, b) = (spec(a), spec(b));
        assert_eq!(brute_degree_set(&a, &b).unwrap(), mapping_degree_set(&a, &b).unwrap(), "{a} -> {b}");
    }
}

#[test]
fn lens_remark_pair() {
    let d = mapping_degree_set(&spec("L(3;1,1)"), &spec("L(3;1,2)")).unwrap();
    assert_eq!(d, DegreeSet::new(3, [0, 2]));
}
