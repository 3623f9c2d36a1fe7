//! Machine-readable report documents. The JSON schema is versioned under
//! the top-level `schema` key; key order is fixed by field declaration, and
//! every integer invariant is emitted as an exact JSON integer.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use singlab::family::{FamilyReport, SampleRecord};
use singlab::invariants::{InvariantReport, RandomSectionReport};
use singlab::newton::{NewtonComplex, StabilizedNewtonNumber, VolumeVector};
use singlab::ExponentVector;

pub const SCHEMA: &str = "singlab/1";

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ReportDocument {
    pub schema: String,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton: Option<NewtonDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section: Option<SectionDoc>,
}

impl ReportDocument {
    pub fn new(command: &str, input: InputEcho) -> Self {
        ReportDocument {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input,
            timing_ms: 0,
            invariants: None,
            family: None,
            newton: None,
            section: None,
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct InputEcho {
    pub poly: String,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct InvariantsDoc {
    pub mu: i64,
    pub mu_route: String,
    pub mu_certified: bool,
    pub nu: i64,
    pub nu_stabilized: bool,
    pub multiplicity: u64,
    pub convenient: bool,
    pub nondegenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_face: Option<WitnessDoc>,
    pub faces_checked: usize,
    pub kouchnirenko: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct WitnessDoc {
    pub dim: usize,
    pub points: Vec<Vec<u32>>,
}

impl From<&InvariantReport> for InvariantsDoc {
    fn from(r: &InvariantReport) -> Self {
        InvariantsDoc {
            mu: r
                .mu
                .as_ref()
                .and_then(|m| m.to_i64())
                .expect("Milnor number fits in an i64"),
            mu_route: r
                .mu_route
                .expect("route is set with mu")
                .as_str()
                .to_string(),
            mu_certified: r.mu_certified,
            nu: r.nu.to_i64().expect("Newton number fits in an i64"),
            nu_stabilized: r.nu_stabilized,
            multiplicity: r.mult,
            convenient: r.convenient,
            nondegenerate: r.nondeg.nondegenerate,
            witness_face: r.nondeg.witness.as_ref().map(|f| WitnessDoc {
                dim: f.dim,
                points: points_doc(&f.points),
            }),
            faces_checked: r.nondeg.faces_checked,
            kouchnirenko: r.kouchnirenko.as_str().to_string(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SampleDoc {
    pub t: String,
    pub invariants: InvariantsDoc,
}

impl From<&SampleRecord> for SampleDoc {
    fn from(s: &SampleRecord) -> Self {
        SampleDoc {
            t: s.t0.to_string(),
            invariants: InvariantsDoc::from(&s.report),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct FamilyDoc {
    pub base: SampleDoc,
    pub samples: Vec<SampleDoc>,
    pub mu_constant: String,
    pub equimultiple: String,
    pub family_nondegenerate: String,
    pub newton_boundary_constant: bool,
    pub verdict: String,
    pub control_function: String,
    pub control_vertices: Vec<Vec<u32>>,
}

impl From<&FamilyReport> for FamilyDoc {
    fn from(r: &FamilyReport) -> Self {
        FamilyDoc {
            base: SampleDoc::from(&r.base),
            samples: r.samples.iter().map(SampleDoc::from).collect(),
            mu_constant: r.mu_constant.as_str().to_string(),
            equimultiple: r.equimultiple.as_str().to_string(),
            family_nondegenerate: r.family_nondegenerate.as_str().to_string(),
            newton_boundary_constant: r.newton_boundary_constant,
            verdict: r.verdict.as_str().to_string(),
            control_function: r.control.text.clone(),
            control_vertices: points_doc(&r.control.vertices),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct NewtonDoc {
    pub vertices: Vec<Vec<u32>>,
    /// `face_counts[d]` is the number of d-dimensional compact faces.
    pub face_counts: Vec<usize>,
    pub convenient: bool,
    /// V_1..V_n as exact rational strings; only for convenient supports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<String>>,
    pub nu: i64,
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub added_axes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis_exponent: Option<u32>,
}

impl NewtonDoc {
    pub fn build(
        complex: &NewtonComplex,
        volumes: Option<&VolumeVector>,
        stab: &StabilizedNewtonNumber,
    ) -> Self {
        NewtonDoc {
            vertices: points_doc(&complex.vertices()),
            face_counts: complex.faces_by_dim.iter().map(Vec::len).collect(),
            convenient: complex.convenient,
            v: volumes.map(|v| v.v.iter().map(|q| q.to_string()).collect()),
            nu: stab.value.to_i64().expect("Newton number fits in an i64"),
            stabilized: stab.stabilized,
            added_axes: stab.added_axes.clone(),
            axis_exponent: stab.axis_exponent,
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SectionDoc {
    pub hyperplane: String,
    pub mu: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomSectionDoc>,
    /// Explicit-hyperplane sections need not be generic; published sectional
    /// invariants usually refer to generic sections, which `--random`
    /// approximates by minimizing over samples.
    pub note: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct RandomSectionDoc {
    pub min_mu: u64,
    pub samples: usize,
    pub skipped: usize,
    pub seed: u64,
}

impl RandomSectionDoc {
    pub fn build(r: &RandomSectionReport, seed: u64) -> Self {
        RandomSectionDoc {
            min_mu: r.min_mu,
            samples: r.samples,
            skipped: r.skipped,
            seed,
        }
    }
}

fn points_doc(points: &[ExponentVector]) -> Vec<Vec<u32>> {
    points.iter().map(|p| p.entries().to_vec()).collect()
}

/// Plain-text rendering with the same integer values as the JSON form.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("command: {}", doc.command));
    push(&mut out, format!("poly: {}", doc.input.poly));
    if let Some(inv) = &doc.invariants {
        render_invariants(&mut out, inv, "");
    }
    if let Some(newton) = &doc.newton {
        push(&mut out, format!("convenient: {}", newton.convenient));
        push(
            &mut out,
            format!(
                "vertices: {}",
                newton
                    .vertices
                    .iter()
                    .map(|p| format!("{p:?}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        );
        push(&mut out, format!("face_counts: {:?}", newton.face_counts));
        if let Some(v) = &newton.v {
            push(&mut out, format!("V: {}", v.join(", ")));
        }
        push(
            &mut out,
            format!(
                "nu: {}{}",
                newton.nu,
                if newton.stabilized {
                    " (stabilized)"
                } else {
                    ""
                }
            ),
        );
    }
    if let Some(family) = &doc.family {
        push(&mut out, format!("verdict: {}", family.verdict));
        push(&mut out, format!("mu_constant: {}", family.mu_constant));
        push(&mut out, format!("equimultiple: {}", family.equimultiple));
        push(
            &mut out,
            format!("family_nondegenerate: {}", family.family_nondegenerate),
        );
        push(
            &mut out,
            format!(
                "newton_boundary_constant: {}",
                family.newton_boundary_constant
            ),
        );
        push(
            &mut out,
            format!("control_function: {}", family.control_function),
        );
        push(&mut out, format!("base (t = {}):", family.base.t));
        render_invariants(&mut out, &family.base.invariants, "  ");
        for s in &family.samples {
            push(&mut out, format!("sample (t = {}):", s.t));
            render_invariants(&mut out, &s.invariants, "  ");
        }
    }
    if let Some(section) = &doc.section {
        push(&mut out, format!("hyperplane: {}", section.hyperplane));
        push(&mut out, format!("mu: {}", section.mu));
        if let Some(r) = &section.random {
            push(
                &mut out,
                format!(
                    "random_min_mu: {} (over {} samples, {} skipped, seed {})",
                    r.min_mu, r.samples, r.skipped, r.seed
                ),
            );
        }
    }
    out
}

fn render_invariants(out: &mut String, inv: &InvariantsDoc, indent: &str) {
    let mut push = |line: String| {
        out.push_str(indent);
        out.push_str(&line);
        out.push('\n');
    };
    push(format!(
        "mu: {} ({} route{})",
        inv.mu,
        inv.mu_route,
        if inv.mu_certified { ", certified" } else { "" }
    ));
    push(format!(
        "nu: {}{}",
        inv.nu,
        if inv.nu_stabilized {
            " (stabilized)"
        } else {
            ""
        }
    ));
    push(format!("multiplicity: {}", inv.multiplicity));
    push(format!("convenient: {}", inv.convenient));
    push(format!(
        "nondegenerate: {} ({} faces checked)",
        inv.nondegenerate, inv.faces_checked
    ));
    if let Some(w) = &inv.witness_face {
        push(format!("witness_face: dim {} points {:?}", w.dim, w.points));
    }
    push(format!("kouchnirenko: {}", inv.kouchnirenko));
}
