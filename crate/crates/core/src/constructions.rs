//! Case decomposition and closed-form double total dominating sets for
//! Harary graphs (k = 2).
//!
//! Formulas are written in the 1-based labels they were published with and
//! reduced modulo the order afterwards. No formula is trusted: every
//! result carries a `validated` flag computed by [`is_ktds`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domination::is_ktds;
use crate::graph::{build_harary, CirculantGraph, Graph, HararyParams, ParityClass};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimKind {
    Exact,
    Bracket,
    Suspect,
    None,
}

/// What the closed-form result asserts about the double total domination number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub kind: ClaimKind,
    pub lo: Option<usize>,
    pub hi: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Claim {
    pub fn exact(value: usize) -> Self {
        Self {
            kind: ClaimKind::Exact,
            lo: Some(value),
            hi: Some(value),
            reason: None,
        }
    }

    pub fn bracket(lo: usize, hi: usize) -> Self {
        Self {
            kind: ClaimKind::Bracket,
            lo: Some(lo),
            hi: Some(hi),
            reason: None,
        }
    }

    pub fn suspect(value: usize, reason: impl Into<String>) -> Self {
        Self {
            kind: ClaimKind::Suspect,
            lo: Some(value),
            hi: Some(value),
            reason: Some(reason.into()),
        }
    }

    pub fn none(reason: impl Into<String>) -> Self {
        Self {
            kind: ClaimKind::None,
            lo: None,
            hi: None,
            reason: Some(reason.into()),
        }
    }

    /// Closed interval the claim allows, if it makes one.
    pub fn interval(&self) -> Option<(usize, usize)> {
        self.lo.zip(self.hi)
    }

    pub fn admits(&self, gamma: usize) -> Option<bool> {
        self.interval().map(|(lo, hi)| lo <= gamma && gamma <= hi)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.interval()) {
            (ClaimKind::Bracket, Some((lo, hi))) => write!(f, "BRACKET({lo}, {hi})"),
            (ClaimKind::Exact, Some((v, _))) => write!(f, "EXACT({v})"),
            (ClaimKind::Suspect, Some((v, _))) => write!(f, "SUSPECT({v})"),
            _ => f.write_str("NONE"),
        }
    }
}

/// Decomposition `order = d*l + r` and `l + r = 2m*lp + rp` with the claim
/// that applies to the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub l: usize,
    pub r: usize,
    pub lp: usize,
    pub rp: usize,
    pub m: usize,
    pub parity: ParityClass,
    pub claim: Claim,
    /// Even degree only: `ceil(order / m)`, the value the degree bound forces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_alt: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special: Option<String>,
}

impl CaseDescriptor {
    /// `d*l + r` and `2m*lp + rp - l`, which must give back `order` and `r`.
    pub fn reconstruct(&self, d: usize) -> (usize, usize) {
        (d * self.l + self.r, 2 * self.m * self.lp + self.rp - self.l)
    }
}

pub fn classify(p: &HararyParams) -> CaseDescriptor {
    let d = p.d();
    let order = p.n();
    let m = p.half_degree();
    let (l, r) = (order / d, order % d);
    let (lp, rp) = ((l + r) / (2 * m), (l + r) % (2 * m));
    let mut case = CaseDescriptor {
        l,
        r,
        lp,
        rp,
        m,
        parity: p.parity_class(),
        claim: Claim::none("no closed form applies"),
        candidate_alt: None,
        special: None,
    };

    match p.parity_class() {
        ParityClass::EvenD => {
            case.candidate_alt = Some(order.div_ceil(m));
            if order.is_multiple_of(2) {
                let half = order / 2;
                case.claim = Claim::suspect(
                    half.div_ceil(m),
                    "printed even-degree value ceil(n/m) sits below the degree bound ceil(2n/m)",
                );
            } else {
                case.claim = Claim::none("even-degree closed form covers even order only");
            }
        }
        ParityClass::OddDEvenN => {
            let lo = (2 * order).div_ceil(d);
            let lp_window = lp == 0 && (1..=m).contains(&rp);
            if (l, r, m) == (1, 1, 1) {
                case.special = Some("K4".into());
                case.claim = Claim::exact(3);
            } else if (1..=m).contains(&r) && !lp_window {
                case.claim = Claim::bracket(lo, lo + 1);
            } else {
                case.claim = Claim::exact(lo);
            }
        }
        ParityClass::OddDOddN => {
            let lo = (2 * order - 1).div_ceil(d);
            let exact = ((2..=m).contains(&r) && (1..=m).contains(&rp) && lp == 0)
                || r == 1
                || (m + 2..=2 * m).contains(&r);
            case.claim = if exact {
                Claim::exact(lo)
            } else {
                Claim::bracket(lo, lo + 1)
            };
        }
    }
    case
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormulaId {
    #[serde(rename = "T22")]
    T22,
    #[serde(rename = "T22X")]
    T22X,
    #[serde(rename = "T23_K4")]
    T23K4,
    #[serde(rename = "T23_R0")]
    T23R0,
    #[serde(rename = "T23_LP0")]
    T23Lp0,
    #[serde(rename = "T23_ODD")]
    T23Odd,
    #[serde(rename = "T23_ODD_ALT")]
    T23OddAlt,
    #[serde(rename = "T23_EVEN")]
    T23Even,
    #[serde(rename = "T24_R0")]
    T24R0,
    #[serde(rename = "T24_R1")]
    T24R1,
    #[serde(rename = "T24_LP0")]
    T24Lp0,
    #[serde(rename = "T24_ODD")]
    T24Odd,
    #[serde(rename = "T24_EVEN")]
    T24Even,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::T22 => "T22",
            FormulaId::T22X => "T22X",
            FormulaId::T23K4 => "T23_K4",
            FormulaId::T23R0 => "T23_R0",
            FormulaId::T23Lp0 => "T23_LP0",
            FormulaId::T23Odd => "T23_ODD",
            FormulaId::T23OddAlt => "T23_ODD_ALT",
            FormulaId::T23Even => "T23_EVEN",
            FormulaId::T24R0 => "T24_R0",
            FormulaId::T24R1 => "T24_R1",
            FormulaId::T24Lp0 => "T24_LP0",
            FormulaId::T24Odd => "T24_ODD",
            FormulaId::T24Even => "T24_EVEN",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A formula evaluated on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub id: FormulaId,
    #[serde(rename = "labels")]
    pub set: VertexSet,
    #[serde(rename = "size")]
    pub cardinality: usize,
    pub validated: bool,
    /// Cardinality the formula is published with.
    pub stated: usize,
    /// Labels that landed on an already-used position after reduction.
    pub collapsed: usize,
}

/// Raw formula output before reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaLabels {
    pub id: FormulaId,
    pub labels: Vec<i64>,
    pub stated: usize,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

fn pairs(count: usize, step: i64, a: i64, b: i64) -> impl Iterator<Item = i64> {
    (0..count as i64).flat_map(move |i| [step * i + a, step * i + b])
}

/// Evaluates every formula that applies to the instance's case.
pub fn formula_labels(p: &HararyParams, case: &CaseDescriptor) -> Vec<FormulaLabels> {
    let order = p.n();
    let d = p.d() as i64;
    let m = case.m as i64;
    let (l, r) = (case.l, case.r);
    let lp_window = case.lp == 0 && (1..=case.m).contains(&case.rp);
    let mut out = Vec::new();

    match case.parity {
        ParityClass::EvenD => {
            let spaced = |count: usize| (0..count as i64).map(|i| i * m + 1).collect::<Vec<_>>();
            if order.is_multiple_of(2) {
                let count = (order / 2).div_ceil(case.m);
                out.push(FormulaLabels {
                    id: FormulaId::T22,
                    labels: spaced(count),
                    stated: count,
                });
            }
            let count = order.div_ceil(case.m);
            out.push(FormulaLabels {
                id: FormulaId::T22X,
                labels: spaced(count),
                stated: count,
            });
        }
        ParityClass::OddDEvenN => {
            let n = (order / 2) as i64;
            if case.special.is_some() {
                out.push(FormulaLabels {
                    id: FormulaId::T23K4,
                    labels: vec![1, 2, 3],
                    stated: 3,
                });
                return out;
            }
            if r == 0 {
                out.push(FormulaLabels {
                    id: FormulaId::T23R0,
                    labels: pairs(l, d, 1, m + 1).collect(),
                    stated: 2 * l,
                });
                return out;
            }
            // The published sub-case stops at rp < m; rp == m is tried both ways.
            if lp_window {
                out.push(FormulaLabels {
                    id: FormulaId::T23Lp0,
                    labels: pairs(l, 2 * m, 1, m + 1).chain([2 * n - m + 1]).collect(),
                    stated: 2 * l + 1,
                });
            }
            if !(case.lp == 0 && (1..case.m).contains(&case.rp)) {
                if r % 2 == 1 {
                    let lower = (n / d) as usize;
                    let upper = ceil_div(n, d) as usize;
                    let odd = |last_count: i64| -> Vec<i64> {
                        pairs(lower, d, n + m + 1, n + 2 * m + 2)
                            .chain(pairs(upper, d, 1, m + 1))
                            .chain([n + 1, d * (last_count - 1) + n + m + 1])
                            .collect()
                    };
                    out.push(FormulaLabels {
                        id: FormulaId::T23Odd,
                        labels: odd(ceil_div(n, m + 1)),
                        stated: 2 * l + 2,
                    });
                    out.push(FormulaLabels {
                        id: FormulaId::T23OddAlt,
                        labels: odd(ceil_div(n, d)),
                        stated: 2 * l + 2,
                    });
                } else {
                    let half = l / 2;
                    let r = r as i64;
                    out.push(FormulaLabels {
                        id: FormulaId::T23Even,
                        labels: pairs(half, d, n + 1, n + m + 1)
                            .chain(pairs(half, d, 1, m + 1))
                            .chain([n + 1 - r / 2, 2 * n + 1 - r / 2])
                            .collect(),
                        stated: 2 * l + 2,
                    });
                }
            }
        }
        ParityClass::OddDOddN => {
            let n = ((order - 1) / 2) as i64;
            let quad: Vec<i64> = (0..(l / 2) as i64)
                .flat_map(|i| {
                    let a = d * i;
                    [a + 1, a + m + 1, a + n + 1, a + n + m + 1]
                })
                .collect();
            let with = |tail: &[i64]| quad.iter().chain(tail).copied().collect::<Vec<_>>();
            let r = r as i64;
            if r == 0 {
                out.push(FormulaLabels {
                    id: FormulaId::T24R0,
                    labels: with(&[n - m + 1, 2 * n - m + 1, 2 * n + 1]),
                    stated: 2 * l + 1,
                });
            } else if r == 1 {
                out.push(FormulaLabels {
                    id: FormulaId::T24R1,
                    labels: with(&[2 * n + 1]),
                    stated: 2 * l + 1,
                });
            } else if lp_window {
                out.push(FormulaLabels {
                    id: FormulaId::T24Lp0,
                    labels: pairs(l, 2 * m, 1, m + 1).chain([2 * n + 2 - m]).collect(),
                    stated: 2 * l + 1,
                });
            } else if r % 2 == 1 {
                let s = (r - 1) / 2;
                out.push(FormulaLabels {
                    id: FormulaId::T24Odd,
                    labels: with(&[n + 1 - s, 2 * n + 1 - s]),
                    stated: 2 * l + 2,
                });
            } else {
                let s = (r - 2) / 2;
                out.push(FormulaLabels {
                    id: FormulaId::T24Even,
                    labels: with(&[n - s, n - m - s, 2 * n + 1 - s, 2 * n + 1 - m - s]),
                    stated: 2 * l + 2,
                });
            }
        }
    }
    out
}

/// Evaluates and validates every applicable formula on an already-built graph.
pub fn construct_2tds_on(
    p: &HararyParams,
    g: &CirculantGraph,
    case: &CaseDescriptor,
) -> Vec<ConstructionResult> {
    formula_labels(p, case)
        .into_iter()
        .map(|f| {
            let (set, collapsed) = VertexSet::from_labels_wrapping(g.order(), &f.labels);
            let validated = is_ktds(g, &set, 2).expect("k = 2 and positions in range");
            ConstructionResult {
                id: f.id,
                cardinality: set.len(),
                set,
                validated,
                stated: f.stated,
                collapsed,
            }
        })
        .collect()
}

pub fn construct_2tds(p: &HararyParams) -> Vec<ConstructionResult> {
    let g = build_harary(p);
    construct_2tds_on(p, &g, &classify(p))
}

/// Rotates `s` by `t` positions around the circle.
pub fn translate_set(g: &CirculantGraph, s: &VertexSet, t: i64) -> VertexSet {
    s.rotated(g.order(), t)
}
