//! The defining relations of framed tangles, checked in the skein quotient,
//! plus framing helpers and a bracket-versus-oracle corpus run.

use crate::dsl;
use crate::library::link_corpus;
use crate::ring::{LaurentPoly, Ring};
use crate::skein::{statesum_oracle, SkeinContext};
use crate::tangle::TangleExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub left: &'static str,
    pub right: &'static str,
    pub holds: bool,
}

/// Each relation as a pair of words that must agree in the quotient.
const RELATIONS: &[(&str, &str, &str)] = &[
    ("T0 left zigzag", "(cup * id(1)) ; (id(1) * cap)", "id(1)"),
    ("T0 right zigzag", "(id(1) * cup) ; (cap * id(1))", "id(1)"),
    (
        "T0' x+/x-",
        "(id(1) * cup) ; (x+ * id(1))",
        "(cup * id(1)) ; (id(1) * x-)",
    ),
    (
        "T0' x-/x+",
        "(id(1) * cup) ; (x- * id(1))",
        "(cup * id(1)) ; (id(1) * x+)",
    ),
    (
        "T1'",
        "(cup * cup) ; (x+ * x-) ; (id(1) * cap * id(1))",
        "cup",
    ),
    ("T2 x+;x-", "x+ ; x-", "id(2)"),
    ("T2 x-;x+", "x- ; x+", "id(2)"),
    (
        "T3 x+",
        "(x+ * id(1)) ; (id(1) * x+) ; (x+ * id(1))",
        "(id(1) * x+) ; (x+ * id(1)) ; (id(1) * x+)",
    ),
    (
        "T3 x-",
        "(x- * id(1)) ; (id(1) * x-) ; (x- * id(1))",
        "(id(1) * x-) ; (x- * id(1)) ; (id(1) * x-)",
    ),
];

/// Checks every relation with symbolic `A`, plus the loop value and
/// `e;e = delta e`.
pub fn relation_suite() -> Vec<RelationCheck> {
    let ctx = SkeinContext::<LaurentPoly>::symbolic();
    let expr =
        |s: &str| TangleExpr::from_word(dsl::parse_word(s).expect("built-in relation text parses"));
    let mut out: Vec<RelationCheck> = RELATIONS
        .iter()
        .map(|&(name, left, right)| RelationCheck {
            name: name.to_string(),
            left,
            right,
            holds: ctx
                .quotient_equal(&expr(left), &expr(right))
                .unwrap_or(false),
        })
        .collect();

    let loop_word = dsl::parse_word("cup ; cap").expect("parses");
    out.push(RelationCheck {
        name: "loop value".to_string(),
        left: "cup ; cap",
        right: "-A^2 - A^-2",
        holds: ctx.bracket(&loop_word).ok() == Some(LaurentPoly::delta()),
    });
    let ee = expr("cap ; cup ; cap ; cup");
    let de = expr("cap ; cup").scale(&LaurentPoly::delta());
    out.push(RelationCheck {
        name: "e;e = delta e".to_string(),
        left: "cap ; cup ; cap ; cup",
        right: "(-A^2 - A^-2) (cap ; cup)",
        holds: ctx.quotient_equal(&ee, &de).unwrap_or(false),
    });
    out
}

/// The factor `-A^3` picked up by a positive kink.
pub fn kink_unit() -> LaurentPoly {
    LaurentPoly::monomial(-1, 3)
}

/// Divides a bracket by `u^writhe`, giving an invariant of unframed links.
pub fn normalize_framing(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let u = kink_unit().powi(-writhe).expect("the kink unit is a unit");
    bracket * &u
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleReport {
    pub checked: usize,
    pub agreed: usize,
}

/// Compares the bracket with the state sum on a seeded random corpus.
pub fn oracle_corpus(
    seed: u64,
    count: usize,
    max_crossings: usize,
    max_width: usize,
) -> OracleReport {
    let ctx = SkeinContext::<LaurentPoly>::symbolic();
    let corpus = link_corpus(seed, count, max_crossings, max_width);
    let agreed = corpus
        .iter()
        .filter(|w| matches!((ctx.bracket(w), statesum_oracle(w)), (Ok(a), Ok(b)) if a == b))
        .count();
    OracleReport {
        checked: corpus.len(),
        agreed,
    }
}
