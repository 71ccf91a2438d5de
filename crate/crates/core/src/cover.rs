//! Universal cover verdicts for compact complex surfaces from numerical
//! invariants and special tensor data.
//!
//! Every condition is evaluated in three-valued logic. Rules are tried in a
//! fixed order and the first one whose conditions are all established fires:
//!
//! 1. `Ball`: `K² > 0`, `K² = 9χ`, `P₂ > 0` (Miyaoka–Yau equality)
//! 2. `HxH`: special or semispecial tensor of unique type, `K² > 0`, `P₂ ≥ 1`
//! 3. `P1xP1`: unique special tensor, `K² = 8`, `P₂ = 0`, `h⁰(Ω¹(−K)) = 6`
//! 4. `P1xC`: `P₁₂ = 0`, `q = 1`, `K² = 0`
//! 5. `P1xH`: `P₁₂ = 0`, `q ≥ 2`, `K² = 8(1 − q)`
//! 6. `C2`: `P₁₂ = 1`, `q ∈ {1, 2}`, `K² = 0`
//! 7. `CxH`: `P₁₂ ≥ 2`, `e = 0`
//!
//! Rules 4–7 assume a Kähler surface and are suppressed when `kaehler` is
//! known to be false. A fired verdict is demoted to `Inconsistent` when a
//! rule for a different cover also holds, or when the verdict contradicts
//! its own necessary conditions. With this demotion, erasing fields from a
//! record can only turn its verdict into `NoRuleApplies`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum TensorStatus {
    None,
    SpecialUnique,
    SpecialNonUnique,
    SemiSpecialUniqueType,
    SemiSpecialOther,
    #[default]
    Unknown,
}

/// Absent fields are unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceInvariants {
    #[serde(rename = "K2", default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_g: Option<i64>,
    #[serde(rename = "P2", default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<i64>,
    #[serde(rename = "P12", default, skip_serializing_if = "Option::is_none")]
    pub p12: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    /// `h⁰(Ω¹(−K))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0_omega_mk: Option<i64>,
    #[serde(default)]
    pub tensor_status: TensorStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kaehler: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cover {
    P1xP1,
    P1xC,
    P1xH,
    C2,
    CxH,
    HxH,
    Ball,
    NoRuleApplies,
    Inconsistent,
}

impl Cover {
    pub fn is_concrete(self) -> bool {
        !matches!(self, Cover::NoRuleApplies | Cover::Inconsistent)
    }

    pub fn name(self) -> &'static str {
        match self {
            Cover::P1xP1 => "P1xP1",
            Cover::P1xC => "P1xC",
            Cover::P1xH => "P1xH",
            Cover::C2 => "C2",
            Cover::CxH => "CxH",
            Cover::HxH => "HxH",
            Cover::Ball => "Ball",
            Cover::NoRuleApplies => "NoRuleApplies",
            Cover::Inconsistent => "Inconsistent",
        }
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverVerdict {
    pub cover: Cover,
    /// Empty for `NoRuleApplies` and `Inconsistent`.
    pub fired_rule: String,
    /// Unknown fields blocking the closest rule, for `NoRuleApplies`.
    pub missing_data: Vec<String>,
    /// Why the record is inconsistent or why no rule applies.
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FindingLevel {
    Contradiction,
    Unverifiable,
    Informational,
    OpenQuestion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub level: FindingLevel,
    pub condition: String,
    pub message: String,
}

impl Finding {
    fn new(level: FindingLevel, condition: &str, message: String) -> Self {
        Self {
            level,
            condition: condition.to_string(),
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tri {
    True,
    False,
    Unknown(Vec<&'static str>),
}

fn all(conds: Vec<Tri>) -> Tri {
    let mut missing: Vec<&'static str> = Vec::new();
    for c in conds {
        match c {
            Tri::False => return Tri::False,
            Tri::Unknown(fs) => {
                for f in fs {
                    if !missing.contains(&f) {
                        missing.push(f);
                    }
                }
            }
            Tri::True => {}
        }
    }
    if missing.is_empty() {
        Tri::True
    } else {
        Tri::Unknown(missing)
    }
}

fn tri(b: bool) -> Tri {
    if b {
        Tri::True
    } else {
        Tri::False
    }
}

fn one(name: &'static str, v: Option<i64>, p: impl Fn(i64) -> bool) -> Tri {
    v.map_or(Tri::Unknown(vec![name]), |x| tri(p(x)))
}

fn two(
    (n1, v1): (&'static str, Option<i64>),
    (n2, v2): (&'static str, Option<i64>),
    p: impl Fn(i64, i64) -> bool,
) -> Tri {
    match (v1, v2) {
        (Some(a), Some(b)) => tri(p(a, b)),
        _ => Tri::Unknown(
            [(n1, v1.is_none()), (n2, v2.is_none())]
                .into_iter()
                .filter_map(|(n, m)| m.then_some(n))
                .collect(),
        ),
    }
}

fn tensor(s: &SurfaceInvariants, accept: &[TensorStatus]) -> Tri {
    match s.tensor_status {
        TensorStatus::Unknown => Tri::Unknown(vec!["tensor_status"]),
        t => tri(accept.contains(&t)),
    }
}

struct Rule {
    cover: Cover,
    citation: &'static str,
    kaehler: bool,
    conds: fn(&SurfaceInvariants) -> Vec<Tri>,
}

const RULES: [Rule; 7] = [
    Rule {
        cover: Cover::Ball,
        citation: "Miyaoka–Yau equality: K² = 9χ > 0 and P₂ > 0",
        kaehler: false,
        conds: |s| {
            vec![
                one("K2", s.k2, |k| k > 0),
                two(("K2", s.k2), ("chi", s.chi), |k, c| k == 9 * c),
                one("P2", s.p2, |p| p > 0),
            ]
        },
    },
    Rule {
        cover: Cover::HxH,
        citation: "bidisk criterion: semispecial tensor of unique type, K² > 0, P₂ ≥ 1",
        kaehler: false,
        conds: |s| {
            vec![
                tensor(s, &[TensorStatus::SemiSpecialUniqueType, TensorStatus::SpecialUnique]),
                one("K2", s.k2, |k| k > 0),
                one("P2", s.p2, |p| p >= 1),
            ]
        },
    },
    Rule {
        cover: Cover::P1xP1,
        citation: "quadric criterion: unique special tensor, K² = 8, P₂ = 0, h⁰(Ω¹(−K)) = 6",
        kaehler: false,
        conds: |s| {
            vec![
                tensor(s, &[TensorStatus::SpecialUnique]),
                one("K2", s.k2, |k| k == 8),
                one("P2", s.p2, |p| p == 0),
                one("h0_omega_mk", s.h0_omega_mk, |h| h == 6),
            ]
        },
    },
    Rule {
        cover: Cover::P1xC,
        citation: "Kähler surface table: P₁₂ = 0, q = 1, K² = 0",
        kaehler: true,
        conds: |s| {
            vec![
                one("P12", s.p12, |p| p == 0),
                one("q", s.q, |q| q == 1),
                one("K2", s.k2, |k| k == 0),
            ]
        },
    },
    Rule {
        cover: Cover::P1xH,
        citation: "Kähler surface table: P₁₂ = 0, q ≥ 2, K² = 8(1 − q)",
        kaehler: true,
        conds: |s| {
            vec![
                one("P12", s.p12, |p| p == 0),
                one("q", s.q, |q| q >= 2),
                two(("K2", s.k2), ("q", s.q), |k, q| k == 8 * (1 - q)),
            ]
        },
    },
    Rule {
        cover: Cover::C2,
        citation: "Kähler surface table: P₁₂ = 1, q ∈ {1, 2}, K² = 0",
        kaehler: true,
        conds: |s| {
            vec![
                one("P12", s.p12, |p| p == 1),
                one("q", s.q, |q| q == 1 || q == 2),
                one("K2", s.k2, |k| k == 0),
            ]
        },
    },
    Rule {
        cover: Cover::CxH,
        citation: "Kähler surface table: P₁₂ ≥ 2, e = 0",
        kaehler: true,
        conds: |s| vec![one("P12", s.p12, |p| p >= 2), one("e", s.e, |e| e == 0)],
    },
];

fn evaluate(rule: &Rule, s: &SurfaceInvariants) -> Tri {
    if rule.kaehler && s.kaehler == Some(false) {
        return Tri::False;
    }
    all((rule.conds)(s))
}

/// Violations of `χ = 1 + p_g − q` and negative plurigenera.
fn screen(s: &SurfaceInvariants) -> Vec<Finding> {
    let mut out = Vec::new();
    if let (Some(chi), Some(q), Some(pg)) = (s.chi, s.q, s.p_g) {
        if chi != 1 + pg - q {
            out.push(Finding::new(
                FindingLevel::Contradiction,
                "chi = 1 + p_g - q",
                format!("χ = {chi} but 1 + p_g − q = {}", 1 + pg - q),
            ));
        }
    }
    for (name, v) in [
        ("q", s.q),
        ("p_g", s.p_g),
        ("P2", s.p2),
        ("P12", s.p12),
        ("h0_omega_mk", s.h0_omega_mk),
    ] {
        if let Some(x) = v.filter(|&x| x < 0) {
            out.push(Finding::new(
                FindingLevel::Contradiction,
                "nonnegative dimensions",
                format!("{name} = {x} is negative"),
            ));
        }
    }
    out
}

fn cover_findings(s: &SurfaceInvariants, cover: Cover, out: &mut Vec<Finding>) {
    let ratio = |r: i64, cond: &str, out: &mut Vec<Finding>| match (s.k2, s.chi) {
        (Some(k), Some(c)) if k != r * c => out.push(Finding::new(
            FindingLevel::Contradiction,
            cond,
            format!("{cover} requires K² = {r}χ but {k} ≠ {}", r * c),
        )),
        (Some(_), Some(_)) => {}
        _ => out.push(Finding::new(
            FindingLevel::Unverifiable,
            cond,
            format!("{cover} requires K² = {r}χ; K² or χ unknown"),
        )),
    };
    match cover {
        Cover::HxH | Cover::P1xP1 => ratio(8, "K2 = 8 chi", out),
        Cover::Ball => ratio(9, "K2 = 9 chi", out),
        _ => {}
    }
    if cover == Cover::HxH {
        if let (Some(chi), Some(p2)) = (s.chi, s.p2) {
            if chi >= 1 && p2 < 2 {
                out.push(Finding::new(
                    FindingLevel::Informational,
                    "P2 >= 2",
                    format!("χ = {chi} ≥ 1 with K ample gives P₂ ≥ 2 by Kodaira–Mumford vanishing, but P₂ = {p2}"),
                ));
            }
        }
    }
}

fn open_question(s: &SurfaceInvariants, out: &mut Vec<Finding>) {
    let unique_type = matches!(
        s.tensor_status,
        TensorStatus::SemiSpecialUniqueType | TensorStatus::SpecialUnique
    );
    if s.q == Some(0) && unique_type && s.p2.is_some_and(|p| p >= 2) {
        out.push(Finding::new(
            FindingLevel::OpenQuestion,
            "q = 0, unique type, P2 >= 2",
            "open problem: a surface with q = 0, a semispecial tensor of unique type and P₂ ≥ 2 is not known \
             to be uniformized by the bidisk without further hypotheses"
                .into(),
        ));
    }
}

/// Necessary conditions for a claimed cover, plus the screening checks.
pub fn consistency_report_for(s: &SurfaceInvariants, claimed: Option<Cover>) -> Vec<Finding> {
    let mut out = screen(s);
    if let Some(c) = claimed {
        cover_findings(s, c, &mut out);
    }
    open_question(s, &mut out);
    out
}

/// Findings for the cover of the first rule whose conditions all hold.
pub fn consistency_report(s: &SurfaceInvariants) -> Vec<Finding> {
    let first = RULES.iter().find(|r| evaluate(r, s) == Tri::True).map(|r| r.cover);
    consistency_report_for(s, first)
}

fn has_contradiction(f: &[Finding]) -> bool {
    f.iter().any(|x| x.level == FindingLevel::Contradiction)
}

pub fn classify_surface(s: &SurfaceInvariants) -> CoverVerdict {
    let screened = screen(s);
    if has_contradiction(&screened) {
        return CoverVerdict {
            cover: Cover::Inconsistent,
            fired_rule: String::new(),
            missing_data: Vec::new(),
            reason: screened.iter().map(|f| f.message.as_str()).collect::<Vec<_>>().join("; "),
        };
    }
    let evals: Vec<Tri> = RULES.iter().map(|r| evaluate(r, s)).collect();
    if let Some(i) = evals.iter().position(|t| *t == Tri::True) {
        let rule = &RULES[i];
        if let Some(j) = (i + 1..RULES.len()).find(|&j| evals[j] == Tri::True && RULES[j].cover != rule.cover) {
            return CoverVerdict {
                cover: Cover::Inconsistent,
                fired_rule: String::new(),
                missing_data: Vec::new(),
                reason: format!("both {} and {} hold", rule.cover, RULES[j].cover),
            };
        }
        let mut own = Vec::new();
        cover_findings(s, rule.cover, &mut own);
        if has_contradiction(&own) {
            return CoverVerdict {
                cover: Cover::Inconsistent,
                fired_rule: String::new(),
                missing_data: Vec::new(),
                reason: own.iter().map(|f| f.message.as_str()).collect::<Vec<_>>().join("; "),
            };
        }
        return CoverVerdict {
            cover: rule.cover,
            fired_rule: rule.citation.to_string(),
            missing_data: Vec::new(),
            reason: String::new(),
        };
    }
    let closest = evals
        .iter()
        .zip(RULES.iter())
        .filter_map(|(t, r)| match t {
            Tri::Unknown(fs) => Some((fs, r)),
            _ => None,
        })
        .min_by_key(|(fs, _)| fs.len());
    match closest {
        Some((fs, r)) => CoverVerdict {
            cover: Cover::NoRuleApplies,
            fired_rule: String::new(),
            missing_data: fs.iter().map(|f| f.to_string()).collect(),
            reason: format!("closest rule {} is blocked by unknown data", r.cover),
        },
        None => CoverVerdict {
            cover: Cover::NoRuleApplies,
            fired_rule: String::new(),
            missing_data: Vec::new(),
            reason: "every rule fails on the known data".into(),
        },
    }
}

/// Classifies records in parallel; output order matches input order.
pub fn classify_batch(records: &[SurfaceInvariants]) -> Vec<CoverVerdict> {
    records.par_iter().map(classify_surface).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreefoldCover {
    PolydiskH3,
    NoRuleApplies,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldVerdict {
    pub cover: ThreefoldCover,
    pub fired_rule: String,
    pub note: String,
}

/// A threefold with a semispecial tensor and ample `K` is a quotient of `ℍ³`.
pub fn classify_threefold(tensor_present: bool, k_ample: bool) -> ThreefoldVerdict {
    if tensor_present && k_ample {
        ThreefoldVerdict {
            cover: ThreefoldCover::PolydiskH3,
            fired_rule: "semispecial tensor and ample K in dimension 3".into(),
            note: String::new(),
        }
    } else {
        let mut missing = Vec::new();
        if !tensor_present {
            missing.push("semispecial tensor");
        }
        if !k_ample {
            missing.push("ample K");
        }
        ThreefoldVerdict {
            cover: ThreefoldCover::NoRuleApplies,
            fired_rule: String::new(),
            note: format!(
                "missing {}; in dimension ≥ 4 both conditions together do not force a polydisk cover",
                missing.join(" and ")
            ),
        }
    }
}

/// The frozen regression suite: each record with its expected cover.
pub fn frozen_examples() -> Vec<(SurfaceInvariants, Cover)> {
    let base = SurfaceInvariants::default;
    vec![
        (
            SurfaceInvariants {
                p12: Some(0),
                q: Some(1),
                k2: Some(0),
                kaehler: Some(true),
                ..base()
            },
            Cover::P1xC,
        ),
        (
            SurfaceInvariants {
                p12: Some(0),
                q: Some(3),
                k2: Some(-16),
                kaehler: Some(true),
                ..base()
            },
            Cover::P1xH,
        ),
        (
            SurfaceInvariants {
                p12: Some(1),
                q: Some(2),
                k2: Some(0),
                kaehler: Some(true),
                ..base()
            },
            Cover::C2,
        ),
        (
            SurfaceInvariants {
                p12: Some(5),
                e: Some(0),
                kaehler: Some(true),
                ..base()
            },
            Cover::CxH,
        ),
        (
            SurfaceInvariants {
                tensor_status: TensorStatus::SemiSpecialUniqueType,
                k2: Some(8),
                chi: Some(1),
                p2: Some(3),
                ..base()
            },
            Cover::HxH,
        ),
        (
            SurfaceInvariants {
                tensor_status: TensorStatus::SpecialUnique,
                k2: Some(8),
                p2: Some(0),
                h0_omega_mk: Some(6),
                ..base()
            },
            Cover::P1xP1,
        ),
        (
            SurfaceInvariants {
                k2: Some(9),
                chi: Some(1),
                p2: Some(2),
                ..base()
            },
            Cover::Ball,
        ),
        (
            SurfaceInvariants {
                q: Some(0),
                p_g: Some(1),
                chi: Some(3),
                ..base()
            },
            Cover::Inconsistent,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_suite() {
        for (rec, want) in frozen_examples() {
            let v = classify_surface(&rec);
            assert_eq!(v.cover, want, "{rec:?} → {v:?}");
            if want.is_concrete() {
                assert!(!v.fired_rule.is_empty());
            }
        }
    }

    #[test]
    fn partial_data_names_missing_field() {
        let rec = SurfaceInvariants {
            p12: Some(0),
            q: Some(1),
            ..Default::default()
        };
        let v = classify_surface(&rec);
        assert_eq!(v.cover, Cover::NoRuleApplies);
        assert_eq!(v.missing_data, vec!["K2".to_string()]);
    }

    #[test]
    fn kaehler_false_suppresses_table() {
        let rec = SurfaceInvariants {
            p12: Some(0),
            q: Some(1),
            k2: Some(0),
            kaehler: Some(false),
            ..Default::default()
        };
        assert_eq!(classify_surface(&rec).cover, Cover::NoRuleApplies);
    }

    #[test]
    fn overlapping_rules_are_inconsistent() {
        let rec = SurfaceInvariants {
            tensor_status: TensorStatus::SpecialUnique,
            k2: Some(9),
            chi: Some(1),
            p2: Some(2),
            ..Default::default()
        };
        assert_eq!(classify_surface(&rec).cover, Cover::Inconsistent);
    }

    #[test]
    fn reports() {
        let rec = SurfaceInvariants {
            k2: Some(8),
            chi: Some(2),
            ..Default::default()
        };
        let f = consistency_report_for(&rec, Some(Cover::HxH));
        assert!(f.iter().any(|x| x.level == FindingLevel::Contradiction && x.message.contains("8 ≠ 16")));
        let rec = SurfaceInvariants {
            k2: Some(18),
            chi: Some(2),
            ..Default::default()
        };
        assert!(consistency_report_for(&rec, Some(Cover::Ball)).is_empty());
        assert!(consistency_report(&SurfaceInvariants::default()).is_empty());
    }

    #[test]
    fn open_question_is_a_finding() {
        let rec = SurfaceInvariants {
            q: Some(0),
            tensor_status: TensorStatus::SemiSpecialUniqueType,
            p2: Some(2),
            ..Default::default()
        };
        let f = consistency_report(&rec);
        assert!(f.iter().any(|x| x.level == FindingLevel::OpenQuestion));
        assert_eq!(classify_surface(&rec).cover, Cover::NoRuleApplies);
    }

    #[test]
    fn threefolds() {
        assert_eq!(classify_threefold(true, true).cover, ThreefoldCover::PolydiskH3);
        assert_eq!(classify_threefold(true, false).cover, ThreefoldCover::NoRuleApplies);
        assert_eq!(classify_threefold(false, true).cover, ThreefoldCover::NoRuleApplies);
    }

    #[test]
    fn json_field_names() {
        let rec: SurfaceInvariants = serde_json::from_str(r#"{"P12":0,"q":1,"K2":0}"#).unwrap();
        assert_eq!(classify_surface(&rec).cover, Cover::P1xC);
        assert!(serde_json::from_str::<SurfaceInvariants>(r#"{"K3":0}"#).is_err());
    }
}
