//! JSON documents for cut sets.

use serde::{Deserialize, Serialize};

use crate::algorithms::{BranchCut, CutForm, CutSet, Provenance, SemiAlgSystem, Warning};
use crate::classify::CutClass;
use crate::interval::ExtInterval;

/// Label attached to classifications, which come from numeric probing rather than proof.
pub const NUMERIC_VERDICT: &str = "numeric-verdict";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub expression: String,
    pub variable: String,
    pub method: String,
    pub cuts: Vec<CutRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub systems: Option<Vec<SystemRecord>>,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutRecord {
    /// `real_variable` or `parametric`
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dependent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    pub solution: String,
    pub range: ExtInterval,
    pub provenance: Provenance,
    pub classification: ClassRecord,
    /// Structured form of the curve, used when reading the document back.
    pub exact: CutForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassRecord {
    #[serde(flatten)]
    pub class: CutClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub text: String,
    pub system: SemiAlgSystem,
}

impl CutRecord {
    pub fn new(cut: &BranchCut, classified: bool) -> Self {
        let (form, dependent, parameter) = match &cut.form {
            CutForm::RealVariable { solution, .. } => {
                ("real_variable", Some(solution.dependent.name().to_string()), None)
            }
            CutForm::Parametric { .. } => ("parametric", None, Some("a".to_string())),
        };
        CutRecord {
            form: form.into(),
            dependent,
            parameter,
            solution: cut.solution_text(),
            range: cut.range().clone(),
            provenance: cut.provenance.clone(),
            classification: ClassRecord {
                class: cut.classification.clone(),
                evidence: classified.then(|| NUMERIC_VERDICT.to_string()),
            },
            exact: cut.form.clone(),
        }
    }

    pub fn to_cut(&self) -> BranchCut {
        BranchCut {
            form: self.exact.clone(),
            provenance: self.provenance.clone(),
            classification: self.classification.class.clone(),
        }
    }
}

impl Document {
    pub fn new(expression: &str, variable: &str, method: &str, cs: &CutSet, classified: bool) -> Self {
        Document {
            expression: expression.into(),
            variable: variable.into(),
            method: method.into(),
            cuts: cs.cuts.iter().map(|c| CutRecord::new(c, classified)).collect(),
            systems: None,
            warnings: cs.warnings.clone(),
        }
    }

    pub fn with_systems(mut self, systems: &[SemiAlgSystem]) -> Self {
        self.systems = Some(systems.iter().map(|s| SystemRecord { text: s.to_string(), system: s.clone() }).collect());
        self
    }

    pub fn cut_set(&self) -> CutSet {
        CutSet { cuts: self.cuts.iter().map(CutRecord::to_cut).collect(), warnings: self.warnings.clone() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
