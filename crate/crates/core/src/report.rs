//! Per-instance conformance reports and the verdict function.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    classify, construct_2tds_on, CaseDescriptor, Claim, ClaimKind, ConstructionResult, FormulaId,
};
use crate::domination::{lower_bounds, BoundsRecord};
use crate::error::Result;
use crate::graph::{build_harary, HararyParams};
use crate::solver::{solve_exact, Method, SolveOptions, SolveOutcome};
use crate::vertex_set::VertexSet;

/// Bumped whenever the report layout changes; part of the cache key.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    pub d: usize,
    pub n: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<usize>,
    /// Minimum witness, or the best set found before the budget ran out.
    pub witness: VertexSet,
    pub method: Method,
    pub nodes: u64,
    pub ms: u64,
}

impl OracleRecord {
    pub fn from_outcome(outcome: &SolveOutcome) -> Self {
        let stats = outcome.stats();
        let ms = stats.elapsed.as_millis() as u64;
        match outcome {
            SolveOutcome::Solved(r) => Self {
                gamma: Some(r.gamma),
                lo: None,
                hi: None,
                witness: r.witness.clone(),
                method: r.method,
                nodes: stats.nodes,
                ms,
            },
            SolveOutcome::Timeout(i) => Self {
                gamma: None,
                lo: Some(i.lo),
                hi: Some(i.hi),
                witness: i.best.clone(),
                method: i.method,
                nodes: stats.nodes,
                ms,
            },
        }
    }

    /// `(lo, hi)` containing the optimum.
    pub fn interval(&self) -> (usize, usize) {
        match self.gamma {
            Some(g) => (g, g),
            None => (self.lo.unwrap_or(0), self.hi.unwrap_or(usize::MAX)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirms,
    WithinBracket,
    ConstructionInvalid,
    ClaimContradicted,
    Unresolved,
    NoClaim,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirms => "CONFIRMS",
            Verdict::WithinBracket => "WITHIN_BRACKET",
            Verdict::ConstructionInvalid => "CONSTRUCTION_INVALID",
            Verdict::ClaimContradicted => "CLAIM_CONTRADICTED",
            Verdict::Unresolved => "UNRESOLVED",
            Verdict::NoClaim => "NO_CLAIM",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub params: Params,
    pub case: CaseDescriptor,
    pub bounds: BoundsRecord,
    pub constructions: Vec<ConstructionResult>,
    pub oracle: OracleRecord,
    pub verdict: Verdict,
    pub justification: String,
    pub invalid_constructions: Vec<FormulaId>,
}

impl InstanceReport {
    /// Smallest validated construction, if any.
    pub fn best_valid_size(&self) -> Option<usize> {
        self.constructions
            .iter()
            .filter(|c| c.validated)
            .map(|c| c.cardinality)
            .min()
    }

    /// Zeroes timing so reports compare byte-for-byte.
    pub fn without_timing(mut self) -> Self {
        self.oracle.ms = 0;
        self
    }
}

/// Decides the verdict from the other report fields.
///
/// Precedence: a contradicted claim wins, then an undecided one, then any
/// construction that failed validation; otherwise the claim is confirmed,
/// bracketed, or absent. Failed constructions are listed separately either way.
pub fn judge(
    claim: &Claim,
    bounds: &BoundsRecord,
    constructions: &[ConstructionResult],
    oracle: &OracleRecord,
) -> (Verdict, String) {
    let lower = bounds.best();
    let (olo, ohi) = oracle.interval();
    let invalid: Vec<&str> = constructions
        .iter()
        .filter(|c| !c.validated)
        .map(|c| c.id.as_str())
        .collect();

    let Some((clo, chi)) = claim.interval() else {
        return if invalid.is_empty() {
            let found = match oracle.gamma {
                Some(g) => format!("oracle gamma={g}"),
                None => format!("oracle interval [{olo},{ohi}]"),
            };
            (Verdict::NoClaim, format!("no claim; {found}"))
        } else {
            (
                Verdict::ConstructionInvalid,
                format!("no claim; failed validation: {}", invalid.join(",")),
            )
        };
    };

    if chi < lower {
        return (
            Verdict::ClaimContradicted,
            format!(
                "claim {claim} below lower bound {}={lower}",
                bounds.best_name()
            ),
        );
    }
    if ohi < clo || olo > chi {
        let found = match oracle.gamma {
            Some(g) => format!("oracle gamma={g}"),
            None => format!("oracle interval [{olo},{ohi}]"),
        };
        return (
            Verdict::ClaimContradicted,
            format!("{found} outside claim {claim}"),
        );
    }
    let Some(gamma) = oracle.gamma else {
        if claim.kind == ClaimKind::Bracket && clo <= olo && ohi <= chi {
            return with_invalid(
                Verdict::WithinBracket,
                format!("oracle interval [{olo},{ohi}] inside claim {claim}"),
                &invalid,
            );
        }
        return (
            Verdict::Unresolved,
            format!("oracle interval [{olo},{ohi}] undecided against claim {claim}"),
        );
    };

    match claim.kind {
        ClaimKind::Bracket => with_invalid(
            Verdict::WithinBracket,
            format!("oracle gamma={gamma} inside claim {claim}"),
            &invalid,
        ),
        _ => {
            let witness = constructions
                .iter()
                .find(|c| c.validated && c.cardinality == gamma);
            match witness {
                Some(c) => with_invalid(
                    Verdict::Confirms,
                    format!("oracle gamma={gamma} equals claim {claim}; {} validated at {gamma}", c.id),
                    &invalid,
                ),
                None => (
                    Verdict::ConstructionInvalid,
                    format!("oracle gamma={gamma} equals claim {claim} but no construction validates at {gamma}"),
                ),
            }
        }
    }
}

fn with_invalid(verdict: Verdict, why: String, invalid: &[&str]) -> (Verdict, String) {
    if invalid.is_empty() {
        (verdict, why)
    } else {
        (
            Verdict::ConstructionInvalid,
            format!("{why}; failed validation: {}", invalid.join(",")),
        )
    }
}

/// Builds `H_{d,n}`, runs bounds, constructions (k = 2 only) and the oracle.
pub fn evaluate_instance(
    p: &HararyParams,
    k: usize,
    solve: &SolveOptions,
) -> Result<InstanceReport> {
    let g = build_harary(p);
    let bounds = lower_bounds(&g, k)?;
    let mut case = classify(p);
    let constructions = if k == 2 {
        construct_2tds_on(p, &g, &case)
    } else {
        case.claim = Claim::none("closed forms cover k = 2 only");
        Vec::new()
    };
    let oracle = OracleRecord::from_outcome(&solve_exact(&g, k, solve)?);
    let (verdict, justification) = judge(&case.claim, &bounds, &constructions, &oracle);
    let invalid_constructions = constructions
        .iter()
        .filter(|c| !c.validated)
        .map(|c| c.id)
        .collect();
    Ok(InstanceReport {
        params: Params {
            d: p.d(),
            n: p.n(),
            k,
        },
        case,
        bounds,
        constructions,
        oracle,
        verdict,
        justification,
        invalid_constructions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(d: usize, n: usize) -> InstanceReport {
        let p = HararyParams::new(d, n).unwrap();
        evaluate_instance(&p, 2, &SolveOptions::new(Method::Bnb)).unwrap()
    }

    fn oracle(gamma: Option<usize>, lo: usize, hi: usize) -> OracleRecord {
        OracleRecord {
            gamma,
            lo: gamma.is_none().then_some(lo),
            hi: gamma.is_none().then_some(hi),
            witness: VertexSet::empty(),
            method: Method::Bnb,
            nodes: 0,
            ms: 0,
        }
    }

    const BOUNDS: BoundsRecord = BoundsRecord {
        trivial: 3,
        degree: 4,
        degree_sum: 4,
        upper: 8,
    };

    #[test]
    fn sweep_examples() {
        let r = report(3, 4);
        assert_eq!((r.verdict, r.oracle.gamma), (Verdict::Confirms, Some(3)));
        let r = report(3, 5);
        assert_eq!(
            (r.verdict, r.oracle.gamma),
            (Verdict::WithinBracket, Some(3))
        );
        let r = report(3, 6);
        assert_eq!((r.verdict, r.oracle.gamma), (Verdict::Confirms, Some(4)));
        let r = report(4, 8);
        assert_eq!(r.verdict, Verdict::ClaimContradicted);
        assert_eq!(r.oracle.gamma, Some(4));
        assert!(
            r.justification.contains("below lower bound degree=4"),
            "{}",
            r.justification
        );
        assert_eq!(r.invalid_constructions, vec![FormulaId::T22]);
        let r = report(2, 5);
        assert_eq!((r.verdict, r.oracle.gamma), (Verdict::NoClaim, Some(5)));
    }

    #[test]
    fn failed_construction_is_reported_alongside() {
        // H_{5,9}: claim holds, but the published set fails validation.
        let r = report(5, 9);
        assert_eq!(r.oracle.gamma, Some(4));
        assert_eq!(r.case.claim, Claim::exact(4));
        assert_eq!(r.verdict, Verdict::ConstructionInvalid);
        assert_eq!(r.invalid_constructions, vec![FormulaId::T24Even]);
    }

    #[test]
    fn timeout_inside_claim_is_unresolved() {
        let (v, _) = judge(&Claim::exact(4), &BOUNDS, &[], &oracle(None, 4, 5));
        assert_eq!(v, Verdict::Unresolved);
        let (v, _) = judge(&Claim::bracket(4, 5), &BOUNDS, &[], &oracle(None, 4, 5));
        assert_eq!(v, Verdict::WithinBracket);
        let (v, _) = judge(&Claim::bracket(4, 5), &BOUNDS, &[], &oracle(None, 4, 7));
        assert_eq!(v, Verdict::Unresolved);
    }

    #[test]
    fn timeout_can_still_contradict() {
        let (v, why) = judge(&Claim::exact(4), &BOUNDS, &[], &oracle(None, 5, 6));
        assert_eq!(v, Verdict::ClaimContradicted);
        assert!(why.contains("outside"));
        let (v, _) = judge(&Claim::suspect(2, "x"), &BOUNDS, &[], &oracle(None, 3, 9));
        assert_eq!(v, Verdict::ClaimContradicted);
    }

    #[test]
    fn exact_without_matching_construction() {
        let (v, _) = judge(&Claim::exact(4), &BOUNDS, &[], &oracle(Some(4), 0, 0));
        assert_eq!(v, Verdict::ConstructionInvalid);
    }

    #[test]
    fn json_round_trip() {
        for (d, n) in [(3, 5), (4, 8), (2, 5), (7, 10)] {
            let r = report(d, n);
            let text = serde_json::to_string(&r).unwrap();
            let back: InstanceReport = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn json_keys() {
        let v = serde_json::to_value(report(3, 6)).unwrap();
        for key in [
            "params",
            "case",
            "bounds",
            "constructions",
            "oracle",
            "verdict",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["case"]["claim"]["kind"], "EXACT");
        assert_eq!(
            v["constructions"][0]["labels"],
            serde_json::json!([1, 2, 4, 5])
        );
        assert_eq!(v["oracle"]["gamma"], 4);
        assert_eq!(v["verdict"], "CONFIRMS");
    }
}
