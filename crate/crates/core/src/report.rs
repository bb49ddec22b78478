//! Machine-readable reports.
//!
//! Every report serializes to a single JSON document with a fixed field
//! order, so identical inputs produce byte-identical output. Torsion
//! coefficients are emitted as exact JSON numbers of any size. A plain
//! text rendering backs the CLI's `--pretty` flag.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::abelian::{abelianize, AbelianInvariants};
use crate::calculus::{ExprError, GroupExpr};
use crate::oracle::HomCount;
use crate::presentation::Presentation;
use crate::realize::{realize, RealizeError, TripleRequest};

fn render_torsion(torsion: &[BigInt]) -> String {
    if torsion.is_empty() {
        "(none)".to_string()
    } else {
        let parts: Vec<String> = torsion.iter().map(BigInt::to_string).collect();
        parts.join(", ")
    }
}

fn serialize_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        let number: serde_json::Number = x
            .to_string()
            .parse()
            .expect("integer literal is a valid JSON number");
        seq.serialize_element(&number)?;
    }
    seq.end()
}

/// Analysis of one presentation or expression input.
///
/// For raw presentations the exact rank is not computable, so only the
/// interval `[betti, generator count]` is reported, and co-rank is absent.
/// Expression inputs carry the full triple plus the isotropy interval
/// `[corank, betti]` and the torsion-freeness flag.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corank: Option<usize>,
    pub betti: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_bounds: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isotropy_interval: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
}

impl Report {
    pub fn for_presentation(input: &str, p: &Presentation) -> Report {
        let invariants = abelianize(p);
        Report {
            input: input.to_string(),
            corank: None,
            betti: invariants.betti,
            torsion: invariants.torsion,
            rank: None,
            rank_bounds: Some([invariants.betti, p.generator_count()]),
            isotropy_interval: None,
            torsion_free: None,
            oracle: None,
        }
    }

    pub fn for_expression(input: &str, e: &GroupExpr) -> Result<Report, ExprError> {
        let triple = e.invariants()?;
        let invariants = e.abelian_invariants()?;
        Ok(Report {
            input: input.to_string(),
            corank: Some(triple.corank),
            betti: triple.betti,
            torsion: invariants.torsion,
            rank: Some(triple.rank),
            rank_bounds: None,
            isotropy_interval: Some([triple.corank, triple.betti]),
            torsion_free: Some(e.is_torsion_free()),
            oracle: None,
        })
    }

    pub fn with_oracle(mut self, section: OracleSection) -> Report {
        self.oracle = Some(section);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn render_pretty(&self) -> String {
        let mut lines = vec![
            format!("input:             {}", self.input),
            format!("betti:             {}", self.betti),
            format!("torsion:           {}", render_torsion(&self.torsion)),
        ];
        if let Some(corank) = self.corank {
            lines.insert(1, format!("corank:            {corank}"));
        }
        if let Some(rank) = self.rank {
            lines.push(format!("rank:              {rank}"));
        }
        if let Some([lo, hi]) = self.rank_bounds {
            lines.push(format!("rank bounds:       [{lo}, {hi}]"));
        }
        if let Some([lo, hi]) = self.isotropy_interval {
            lines.push(format!("isotropy interval: [{lo}, {hi}]"));
        }
        if let Some(flag) = self.torsion_free {
            lines.push(format!("torsion free:      {flag}"));
        }
        if let Some(oracle) = &self.oracle {
            lines.push("oracle:".to_string());
            for hc in &oracle.hom_counts {
                lines.push(format!(
                    "  prime {:<4} count {:<10} log_dim {}",
                    hc.prime, hc.count, hc.log_dim
                ));
            }
            lines.push(format!("  betti:  {}", oracle.betti));
            lines.push(format!("  agrees: {}", oracle.agrees));
            if let Some(warning) = &oracle.warning {
                lines.push(format!("  warning: {warning}"));
            }
        }
        lines.join("\n")
    }
}

/// Per-prime homomorphism counts and the resulting Betti estimate.
#[derive(Clone, Debug, Serialize)]
pub struct OracleSection {
    pub hom_counts: Vec<HomCount>,
    pub betti: usize,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Outcome of a realization request.
#[derive(Clone, Debug, Serialize)]
pub struct RealizeReport {
    pub request: RequestEcho,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RequestEcho {
    pub corank: usize,
    pub betti: usize,
    pub rank: usize,
}

/// What to include in a [`RealizeReport`].
#[derive(Clone, Copy, Debug)]
pub struct RealizeOptions {
    pub emit_expression: bool,
    pub emit_presentation: bool,
    pub verify: bool,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            emit_expression: true,
            emit_presentation: true,
            verify: false,
        }
    }
}

/// Mismatch found while re-deriving a witness's invariants. This would
/// indicate a defect in the construction, not bad input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("witness verification failed for ({corank}, {betti}, {rank}): {detail}")]
pub struct VerifyError {
    pub corank: usize,
    pub betti: usize,
    pub rank: usize,
    pub detail: String,
}

impl RealizeReport {
    /// Builds the witness report; `Err` carries the structured rejection
    /// for inadmissible triples.
    pub fn build(
        request: TripleRequest,
        options: RealizeOptions,
    ) -> Result<Result<RealizeReport, VerifyError>, RealizeError> {
        let echo = RequestEcho {
            corank: request.corank,
            betti: request.betti,
            rank: request.rank,
        };
        let witness = realize(request)?;
        let mut report = RealizeReport {
            request: echo,
            admissible: true,
            violation: None,
            expression: options.emit_expression.then(|| witness.to_string()),
            presentation: options
                .emit_presentation
                .then(|| witness.to_presentation().to_string()),
            torsion_free: Some(witness.is_torsion_free()),
            verified: None,
        };
        if options.verify {
            if let Err(e) = verify_witness(request, &witness) {
                return Ok(Err(e));
            }
            report.verified = Some(true);
        }
        Ok(Ok(report))
    }

    pub fn rejection(request: TripleRequest, error: &RealizeError) -> RealizeReport {
        RealizeReport {
            request: RequestEcho {
                corank: request.corank,
                betti: request.betti,
                rank: request.rank,
            },
            admissible: false,
            violation: Some(error.to_string()),
            expression: None,
            presentation: None,
            torsion_free: None,
            verified: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn render_pretty(&self) -> String {
        let mut lines = vec![format!(
            "request:      (corank {}, betti {}, rank {})",
            self.request.corank, self.request.betti, self.request.rank
        )];
        lines.push(format!("admissible:   {}", self.admissible));
        if let Some(violation) = &self.violation {
            lines.push(format!("violation:    {violation}"));
        }
        if let Some(expression) = &self.expression {
            lines.push(format!("expression:   {expression}"));
        }
        if let Some(presentation) = &self.presentation {
            lines.push(format!("presentation: {presentation}"));
        }
        if let Some(flag) = self.torsion_free {
            lines.push(format!("torsion free: {flag}"));
        }
        if let Some(flag) = self.verified {
            lines.push(format!("verified:     {flag}"));
        }
        lines.join("\n")
    }
}

/// Re-derives the requested triple along both available routes: the
/// structural rules on the witness expression, and Smith normal form on
/// the emitted presentation.
pub fn verify_witness(request: TripleRequest, witness: &GroupExpr) -> Result<(), VerifyError> {
    let fail = |detail: String| VerifyError {
        corank: request.corank,
        betti: request.betti,
        rank: request.rank,
        detail,
    };
    let triple = witness
        .invariants()
        .map_err(|e| fail(format!("witness expression is invalid: {e}")))?;
    if (triple.corank, triple.betti, triple.rank)
        != (request.corank, request.betti, request.rank)
    {
        return Err(fail(format!(
            "calculus produced ({}, {}, {})",
            triple.corank, triple.betti, triple.rank
        )));
    }
    let presentation = witness.to_presentation();
    if presentation.generator_count() != request.rank {
        return Err(fail(format!(
            "presentation has {} generators",
            presentation.generator_count()
        )));
    }
    let invariants = abelianize(&presentation);
    if invariants.betti != request.betti {
        return Err(fail(format!(
            "presentation betti came out as {}",
            invariants.betti
        )));
    }
    let expected = expected_witness_torsion(request);
    if invariants != expected {
        return Err(fail(format!(
            "presentation torsion came out as {:?}",
            invariants.torsion
        )));
    }
    if witness.is_torsion_free() != (request.betti == request.rank) {
        return Err(fail("torsion-freeness flag is wrong".to_string()));
    }
    Ok(())
}

/// The witness abelianizes to `Z^betti + (Z/2)^(rank - betti)`.
fn expected_witness_torsion(request: TripleRequest) -> AbelianInvariants {
    AbelianInvariants {
        betti: request.betti,
        torsion: vec![BigInt::from(2); request.rank - request.betti],
    }
}

/// Parse-only validation result.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub input: String,
    pub valid: bool,
    pub generators: usize,
    pub relators: usize,
    pub normalized: String,
}

impl CheckReport {
    pub fn new(input: &str, p: &Presentation) -> CheckReport {
        CheckReport {
            input: input.to_string(),
            valid: true,
            generators: p.generator_count(),
            relators: p.relator_count(),
            normalized: p.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
