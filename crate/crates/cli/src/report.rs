//! Reports: the result of one command plus the invocation, timing and
//! version, rendered as text or JSON from the same value.

use serde::{Deserialize, Serialize};
use simstab::champagne::CatalogRecord;
use simstab::proof::Diagnostics;
use simstab::synthesis::Properized;
use simstab::{
    Certificate, Domain, Poly, ProblemFile, Rational, RealSet, SearchOutcome, SearchStatus,
    StabilityVerdict, ThresholdBracket, TransferFunction, Variant,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: Vec<String>,
    pub result: T,
    pub elapsed_ms: u64,
    pub version: String,
}

/// Text rendering plus whether the requested claim holds (exit code 0).
pub trait Render {
    fn text(&self) -> String;
    fn holds(&self) -> bool;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyCheck {
    pub domain: Domain,
    pub poly: Poly,
    pub verdict: StabilityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub controller: TransferFunction,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub delta: Rational,
    pub variant: Variant,
    pub stabilizable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleCheck {
    pub id: String,
    pub delta: Rational,
    pub expected: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplesReport {
    pub entries: Vec<ExampleCheck>,
    pub all_passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Proof,
    Search,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Synthesis {
    pub method: Method,
    pub delta: Rational,
    pub variant: Variant,
    pub domain: Domain,
    pub controller: Option<TransferFunction>,
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explored: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    pub delta: Rational,
    pub range: RealSet,
}

/// Longest expression printed in full in text mode; JSON always has everything.
const TEXT_LIMIT: usize = 160;

fn brief(expr: String, what: &str, degree: usize) -> String {
    if expr.len() <= TEXT_LIMIT {
        expr
    } else {
        format!(
            "<{what} of degree {degree}, {} characters; see --json>",
            expr.len()
        )
    }
}

fn tf_text(c: &TransferFunction) -> String {
    brief(c.display(), "controller", c.order())
}

fn certificate_text(c: &Certificate, var: &str) -> String {
    let mut out = String::new();
    for (i, p) in c.per_plant.iter().enumerate() {
        let poly = brief(
            p.char_poly.display_in(var),
            "polynomial",
            p.char_poly.degree().unwrap_or(0),
        );
        out.push_str(&format!(
            "  plant {}: {:?}  {poly}\n",
            i + 1,
            p.verdict.status
        ));
    }
    out.push_str(&format!(
        "overall: {}",
        if c.overall {
            "stabilizing"
        } else {
            "not stabilizing"
        }
    ));
    out
}

impl Render for PolyCheck {
    fn text(&self) -> String {
        let w = self
            .verdict
            .witness
            .as_ref()
            .map(|w| format!(" ({w:?})"))
            .unwrap_or_default();
        format!(
            "{}: {:?}{w}",
            self.poly.display_in(self.domain.var()),
            self.verdict.status
        )
    }
    fn holds(&self) -> bool {
        self.verdict.is_stable()
    }
}

impl Render for Verification {
    fn text(&self) -> String {
        format!(
            "controller {}\n{}",
            tf_text(&self.controller),
            certificate_text(&self.certificate, self.controller.domain().var())
        )
    }
    fn holds(&self) -> bool {
        self.certificate.overall
    }
}

impl Render for VerdictReport {
    fn text(&self) -> String {
        let what = if self.stabilizable {
            "simultaneously stabilizable"
        } else {
            "not stabilizable"
        };
        format!("delta = {} ({:?}): {what}", self.delta, self.variant)
    }
    fn holds(&self) -> bool {
        self.stabilizable
    }
}

impl Render for ExamplesReport {
    fn text(&self) -> String {
        let mut lines: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let mark = if e.passed { "ok  " } else { "FAIL" };
                format!(
                    "{mark} {:<6} delta = {:<7} {}",
                    e.id,
                    e.delta.to_string(),
                    e.detail
                )
            })
            .collect();
        let passed = self.entries.iter().filter(|e| e.passed).count();
        lines.push(format!("{passed}/{} entries pass", self.entries.len()));
        lines.join("\n")
    }
    fn holds(&self) -> bool {
        self.all_passed
    }
}

impl Render for Synthesis {
    fn text(&self) -> String {
        let mut out = format!(
            "{:?} synthesis at delta = {} ({:?}, {})\n",
            self.method, self.delta, self.variant, self.domain
        );
        match (&self.controller, &self.certificate) {
            (Some(c), Some(cert)) => {
                out.push_str(&format!(
                    "controller {}\n{}",
                    tf_text(c),
                    certificate_text(cert, self.domain.var())
                ));
                if let Some(d) = &self.diagnostics {
                    out.push_str(&format!(
                        "\nTaylor degree {}, product terms {}, mu {}",
                        d.taylor_degree,
                        d.product_terms,
                        d.mu.map_or("n/a".into(), |m| format!("{m:.3e}"))
                    ));
                }
            }
            _ => out.push_str(&format!(
                "no controller: {}",
                self.failure.as_deref().unwrap_or("not found")
            )),
        }
        if let Some(n) = self.explored {
            out.push_str(&format!("\nboxes explored: {n}"));
        }
        out
    }
    fn holds(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.overall)
    }
}

impl Render for ThresholdBracket {
    fn text(&self) -> String {
        let mut out: Vec<String> = self
            .probes
            .iter()
            .map(|p| {
                format!(
                    "  delta = {:<14} {} ({} boxes)",
                    p.delta.to_string(),
                    if p.found { "found" } else { "none" },
                    p.explored
                )
            })
            .collect();
        out.push(format!(
            "threshold in ({}, {}]; witness at {}: {}",
            self.lo,
            self.hi,
            self.hi,
            self.witness.display()
        ));
        out.join("\n")
    }
    fn holds(&self) -> bool {
        true
    }
}

impl Render for Properized {
    fn text(&self) -> String {
        let eps: Vec<String> = self.eps.iter().map(Rational::to_string).collect();
        format!(
            "controller {}\nadded terms [{}]\n{}",
            tf_text(&self.controller),
            eps.join(", "),
            certificate_text(&self.certificate, self.controller.domain().var())
        )
    }
    fn holds(&self) -> bool {
        self.certificate.overall
    }
}

impl Render for ProblemFile {
    fn text(&self) -> String {
        let mut out: Vec<String> = self
            .plants
            .iter()
            .enumerate()
            .map(|(i, p)| format!("p{} = {}", i + 1, p.display()))
            .collect();
        if let Some(c) = &self.controller {
            out.push(format!("c = {}", c.display()));
        }
        out.join("\n")
    }
    fn holds(&self) -> bool {
        true
    }
}

impl Render for SearchOutcome {
    fn text(&self) -> String {
        let head = match &self.status {
            SearchStatus::Found {
                controller,
                certificate,
            } => {
                format!(
                    "found {}\n{}",
                    tf_text(controller),
                    certificate_text(certificate, controller.domain().var())
                )
            }
            SearchStatus::NotFoundAtBudget => "not found within budget".into(),
            SearchStatus::BoxInfeasible => "box infeasible: every sub-box disproved".into(),
        };
        format!("{head}\nboxes explored: {}", self.explored)
    }
    fn holds(&self) -> bool {
        self.is_found()
    }
}

impl Render for RangeReport {
    fn text(&self) -> String {
        format!(
            "admissible constant controllers at delta = {}: {}",
            self.delta, self.range
        )
    }
    fn holds(&self) -> bool {
        !self.range.is_empty()
    }
}

impl Render for Vec<CatalogRecord> {
    fn text(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
    fn holds(&self) -> bool {
        true
    }
}
