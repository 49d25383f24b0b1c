//! Runtime values of the script language and their canonical renderings.

use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::bogomolov::{BranchReport, ChiCubic, InstabilityReport};
use crate::bundle::BundleClass;
use crate::discriminant::DiscriminantReport;
use crate::graded::{GradedClass, Rat, VarietyModel};
use crate::proj::ProjBundle;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Variety(VarietyModel),
    Bundle(BundleClass),
    Class(GradedClass),
    Proj(ProjBundle),
    Number(Rat),
    Ints(Vec<BigInt>),
    Report(ReportValue),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Discriminant(DiscriminantReport),
    Branch(BranchReport),
    Chi(ChiCubic),
    Instability(InstabilityReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Json,
}

impl Value {
    pub fn type_tag(&self) -> &'static str {
        match self {
            Value::Variety(_) => "variety",
            Value::Bundle(_) => "bundle",
            Value::Class(_) => "class",
            Value::Proj(_) => "projbundle",
            Value::Number(_) => "number",
            Value::Ints(_) => "ints",
            Value::Report(_) => "report",
        }
    }

    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Text => self.render_text(),
            RenderFormat::Json => format!(
                r#"{{"type":{},"text":{},"value":{}}}"#,
                Json::String(self.type_tag().to_string()),
                Json::String(self.render_text()),
                self.render_structured()
            ),
        }
    }

    pub fn render_text(&self) -> String {
        match self {
            Value::Variety(model) => {
                let gens: Vec<String> = model
                    .generators()
                    .iter()
                    .map(|g| match g.power_cap {
                        Some(cap) => format!("{}:{} (cap {cap})", g.name, g.degree),
                        None => format!("{}:{}", g.name, g.degree),
                    })
                    .collect();
                format!("variety(dim {}; {})", model.dimension(), gens.join(", "))
            }
            Value::Bundle(bundle) => {
                format!(
                    "bundle(rank {}; c = {})",
                    bundle.rank(),
                    bundle.total_chern()
                )
            }
            Value::Class(class) => class.render(),
            Value::Proj(proj) => format!(
                "proj_bundle(fiber rank {}, dim {})",
                proj.fiber_rank(),
                proj.dimension()
            ),
            Value::Number(number) => number.to_string(),
            Value::Ints(values) => {
                let rendered: Vec<String> = values.iter().map(BigInt::to_string).collect();
                format!("[{}]", rendered.join(", "))
            }
            Value::Report(report) => report.render_text(),
        }
    }

    fn render_structured(&self) -> Json {
        match self {
            Value::Variety(model) => json!({
                "dimension": model.dimension(),
                "generators": model
                    .generators()
                    .iter()
                    .map(|g| {
                        json!({
                            "name": g.name,
                            "degree": g.degree,
                            "cap": g.power_cap,
                        })
                    })
                    .collect::<Vec<_>>(),
                "integrable": model.has_table(),
            }),
            Value::Bundle(bundle) => json!({
                "rank": bundle.rank(),
                "chern": class_terms(bundle.total_chern()),
            }),
            Value::Class(class) => class_terms(class),
            Value::Proj(proj) => json!({
                "base_dimension": proj.base().dimension(),
                "fiber_rank": proj.fiber_rank(),
                "dimension": proj.dimension(),
            }),
            Value::Number(number) => Json::String(number.to_string()),
            Value::Ints(values) => {
                Json::Array(values.iter().map(|v| Json::String(v.to_string())).collect())
            }
            Value::Report(report) => report.render_structured(),
        }
    }
}

fn class_terms(class: &GradedClass) -> Json {
    Json::Array(
        class
            .sorted_terms()
            .iter()
            .map(|(mono, coeff)| {
                json!({
                    "mono": class.model().render_monomial(mono),
                    "coeff": coeff.to_string(),
                })
            })
            .collect(),
    )
}

impl ReportValue {
    fn render_text(&self) -> String {
        match self {
            ReportValue::Discriminant(report) => format!(
                "discriminant(delta = {}, defect_positive = {}; {})",
                report.expected_degree, report.defect_positive, report.hypotheses_note
            ),
            ReportValue::Branch(report) => format!(
                "branch(d = {}, class = {}; {})",
                report.multidegree, report.class, report.sign_note
            ),
            ReportValue::Chi(cubic) => format!(
                "chi(m) = ({}) + ({})*m + ({})*m^2 + ({})*m^3",
                cubic.coefficients[0],
                cubic.coefficients[1],
                cubic.coefficients[2],
                cubic.coefficients[3]
            ),
            ReportValue::Instability(report) => format!(
                "instability(bogomolov_inequality = {}, destabilizer_valid = {}, c2_consistent = {}; \
                 discriminant_number = {}, destabilizer_square = {}, destabilizer_dot_ample = {})",
                report.bogomolov_inequality,
                report.destabilizer_valid,
                report.c2_consistent,
                report.discriminant_number,
                report.destabilizer_square,
                report.destabilizer_dot_ample
            ),
        }
    }

    fn render_structured(&self) -> Json {
        match self {
            ReportValue::Discriminant(report) => json!({
                "report": "discriminant",
                "expected_degree": report.expected_degree.to_string(),
                "defect_positive": report.defect_positive,
                "note": report.hypotheses_note,
            }),
            ReportValue::Branch(report) => json!({
                "report": "branch",
                "multidegree": report.multidegree,
                "class": class_terms(&report.class),
                "note": report.sign_note,
            }),
            ReportValue::Chi(cubic) => json!({
                "report": "chi",
                "m0": class_terms(&cubic.coefficients[0]),
                "m1": class_terms(&cubic.coefficients[1]),
                "m2": class_terms(&cubic.coefficients[2]),
                "m3": class_terms(&cubic.coefficients[3]),
            }),
            ReportValue::Instability(report) => json!({
                "report": "instability",
                "bogomolov_inequality": report.bogomolov_inequality,
                "destabilizer_valid": report.destabilizer_valid,
                "c2_consistent": report.c2_consistent,
                "discriminant_number": report.discriminant_number.to_string(),
                "destabilizer_square": report.destabilizer_square.to_string(),
                "destabilizer_dot_ample": report.destabilizer_dot_ample.to_string(),
            }),
        }
    }
}
