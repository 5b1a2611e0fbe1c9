use std::collections::HashSet;

use super::{real_valued, Engine, RuleError};
use crate::pos::parse_tagged;
use crate::types::{FeatureId, FeatureKind};

const TABLE: &str = include_str!("../../tests/fixtures/rule_fixtures.tsv");

struct Row<'a> {
    line: usize,
    feature: FeatureId,
    positive: bool,
    anchor: &'a str,
    text: &'a str,
}

fn rows() -> Vec<Row<'static>> {
    TABLE
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(n, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            assert_eq!(cols.len(), 4, "line {}", n + 1);
            Row {
                line: n + 1,
                feature: FeatureId::from_code(cols[0]).unwrap(),
                positive: cols[1] == "+",
                anchor: cols[2],
                text: cols[3],
            }
        })
        .collect()
}

fn check(engine: &Engine, row: &Row) -> Result<(), String> {
    let toks = parse_tagged(row.text);
    if row.feature.kind() == FeatureKind::RealValued {
        let got = real_valued(&toks);
        return match (row.positive, got) {
            (true, Ok(v)) => {
                let want: f64 = row.anchor.parse().unwrap();
                let v = if row.feature == FeatureId::Awl { v.awl } else { v.ttr };
                if v == want { Ok(()) } else { Err(format!("got {v}, want {want}")) }
            }
            (false, Err(RuleError::EmptyChunk)) => Ok(()),
            (_, other) => Err(format!("unexpected {other:?}")),
        };
    }
    let fired = engine.fire(&toks);
    let at: Vec<usize> = (0..toks.len()).filter(|&i| fired[i].contains(row.feature)).collect();
    if row.positive {
        let anchor: usize = row.anchor.parse().unwrap();
        if at.contains(&anchor) {
            Ok(())
        } else {
            Err(format!("expected at {anchor}, fired at {at:?}"))
        }
    } else if at.is_empty() {
        Ok(())
    } else {
        Err(format!("expected nowhere, fired at {at:?}"))
    }
}

#[test]
fn every_fixture_passes() {
    let engine = Engine::default();
    let failures: Vec<String> = rows()
        .iter()
        .filter_map(|r| {
            check(&engine, r)
                .err()
                .map(|e| format!("line {} {} {}: {e} [{}]", r.line, r.feature, if r.positive { "+" } else { "-" }, r.text))
        })
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_feature_has_positive_and_negative() {
    let rows = rows();
    assert!(rows.len() >= 192);
    let pos: HashSet<FeatureId> = rows.iter().filter(|r| r.positive).map(|r| r.feature).collect();
    let neg: HashSet<FeatureId> = rows.iter().filter(|r| !r.positive).map(|r| r.feature).collect();
    for f in FeatureId::ALL {
        assert!(pos.contains(&f), "{f} lacks a positive fixture");
        assert!(neg.contains(&f), "{f} lacks a negative fixture");
    }
}

#[test]
fn figure_one_snippet_through_builtin_tagger() {
    let toks = crate::pos::PosProvider::builtin().tag_text("It doesn't seem likely ...");
    let fired = Engine::default().fire(&toks);
    let at = |f: FeatureId| -> Vec<&str> {
        toks.iter().zip(&fired).filter(|(_, s)| s.contains(f)).map(|(t, _)| t.surface.as_str()).collect()
    };
    assert_eq!(at(FeatureId::Pit), ["It"]);
    assert_eq!(at(FeatureId::Cont), ["n't"]);
    assert_eq!(at(FeatureId::Xx0), ["n't"]);
    assert_eq!(at(FeatureId::Smp), ["seem"]);
}

#[test]
fn phrase_overlap_leftmost_wins() {
    let mut lists = super::WordLists::builtin();
    lists.other_subordinators = vec!["as long as".into(), "long as".into()];
    let e = Engine::new(lists);
    let fired = e.fire(&parse_tagged("as/IN long/RB as/IN you/PRP stay/VBP"));
    let at: Vec<usize> = (0..5).filter(|&i| fired[i].contains(FeatureId::Osub)).collect();
    assert_eq!(at, [0]);
    let fired = e.fire(&parse_tagged("so/RB long/RB as/IN you/PRP stay/VBP"));
    assert!(fired[1].contains(FeatureId::Osub));
}
