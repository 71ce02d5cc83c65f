//! JSON forms of operators, basis manifests, ideals and reports.
//!
//! Operators are written as `{name, domain, codomain, entries}` with entries
//! `[row, col, scalarText]` sorted by row then column, so that the output is
//! byte-stable for a fixed configuration.

use serde::{Deserialize, Serialize};

use crate::braidedmod::Intertwiner;
use crate::braiding::{BraidingCertificate, BraidingOperator};
use crate::operator::SparseOperator;
use crate::repcore::WeightModule;
use crate::ring::{Exponent, QScalar, RingError};

pub const FORMAT_VERSION: u32 = 1;

/// Basis labels and weights of a module, in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisManifest {
    pub module: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<String>>,
}

impl BasisManifest {
    pub fn of(module: &WeightModule) -> Self {
        BasisManifest {
            module: module.name.clone(),
            dim: module.dim(),
            labels: module.labels.clone(),
            weights: module
                .weights
                .iter()
                .map(|w| w.iter().map(|e| exponent_text(*e)).collect())
                .collect(),
        }
    }
}

/// `aμ + c` written as `mu`, `2mu-1`, `3`, ...
pub fn exponent_text(e: Exponent) -> String {
    let mu = match e.mu {
        0 => String::new(),
        1 => "mu".into(),
        -1 => "-mu".into(),
        a => format!("{a}mu"),
    };
    match (mu.is_empty(), e.c) {
        (true, c) => c.to_string(),
        (false, 0) => mu,
        (false, c) if c > 0 => format!("{mu}+{c}"),
        (false, c) => format!("{mu}{c}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl OperatorJson {
    pub fn new(name: impl Into<String>, op: &SparseOperator, domain: &str, codomain: &str) -> Self {
        OperatorJson {
            name: name.into(),
            domain: domain.into(),
            codomain: codomain.into(),
            rows: op.nrows(),
            cols: op.ncols(),
            entries: op
                .entries()
                .map(|(r, c, v)| (r, c, v.to_string()))
                .collect(),
        }
    }

    /// Parses the entries back; the inverse of [`OperatorJson::new`].
    pub fn to_operator(&self) -> Result<SparseOperator, RingError> {
        let mut trip = Vec::with_capacity(self.entries.len());
        for (r, c, s) in &self.entries {
            if *r >= self.rows || *c >= self.cols {
                return Err(RingError::Parse(format!(
                    "entry ({r}, {c}) outside {}x{}",
                    self.rows, self.cols
                )));
            }
            trip.push((*r, *c, s.parse::<QScalar>()?));
        }
        Ok(SparseOperator::from_triplets(self.rows, self.cols, trip))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorBundle {
    pub format_version: u32,
    pub kind: String,
    pub arithmetic: String,
    pub manifests: Vec<BasisManifest>,
    pub operators: Vec<OperatorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl OperatorBundle {
    pub fn operator(&self, name: &str) -> Option<&OperatorJson> {
        self.operators.iter().find(|o| o.name == name)
    }
}

/// The Chevalley operators `e_i`, `f_i` of a module.
pub fn export_module(module: &WeightModule) -> OperatorBundle {
    let name = &module.name;
    let mut operators = Vec::new();
    for (i, e) in module.gens.e.iter().enumerate() {
        operators.push(OperatorJson::new(format!("e{}", i + 1), e, name, name));
    }
    for (i, f) in module.gens.f.iter().enumerate() {
        operators.push(OperatorJson::new(format!("f{}", i + 1), f, name, name));
    }
    OperatorBundle {
        format_version: FORMAT_VERSION,
        kind: "module".into(),
        arithmetic: module.mode.label(),
        manifests: vec![BasisManifest::of(module)],
        operators,
        certificate: None,
    }
}

/// `Ψ(g)` for every adjoint basis element, followed by the Chevalley operators.
pub fn export_intertwiner(psi: &Intertwiner) -> OperatorBundle {
    let name = &psi.module.name;
    let mut bundle = export_module(&psi.module);
    bundle.kind = "intertwiner".into();
    let mut operators: Vec<OperatorJson> = psi
        .adjoint
        .labels
        .iter()
        .zip(&psi.ops)
        .map(|(label, op)| OperatorJson::new(format!("psi({label})"), op, name, name))
        .collect();
    operators.append(&mut bundle.operators);
    bundle.operators = operators;
    bundle.manifests.push(BasisManifest::of(&psi.adjoint));
    bundle.certificate =
        Some(serde_json::json!({ "alpha": psi.alpha.to_string(), "module": psi.spec.label() }));
    bundle
}

#[derive(Serialize)]
struct BraidingExtra<'a> {
    n: usize,
    certificate: &'a BraidingCertificate,
}

/// `S` and `T` on the tensor square with the solve certificate.
pub fn export_braiding(b: &BraidingOperator) -> OperatorBundle {
    let name = &b.square.name;
    OperatorBundle {
        format_version: FORMAT_VERSION,
        kind: "braiding".into(),
        arithmetic: b.mode.label(),
        manifests: vec![BasisManifest::of(&b.square)],
        operators: vec![
            OperatorJson::new("S", &b.s, name, name),
            OperatorJson::new("T", &b.t, name, name),
        ],
        certificate: Some(
            serde_json::to_value(BraidingExtra {
                n: b.n,
                certificate: &b.certificate,
            })
            .expect("certificate serializes"),
        ),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidedmod::build_intertwiner;
    use crate::repcore::{chevalley_action, ModuleSpec};
    use crate::ring::ArithmeticMode;

    #[test]
    fn exponent_texts() {
        assert_eq!(exponent_text(Exponent::mu_plus(0)), "mu");
        assert_eq!(exponent_text(Exponent::mu_plus(-2)), "mu-2");
        assert_eq!(exponent_text(Exponent::int(-3)), "-3");
        assert_eq!(exponent_text(Exponent { mu: 2, c: 1 }), "2mu+1");
    }

    #[test]
    fn operator_round_trip() {
        let m = chevalley_action(&ModuleSpec::finite(
            3,
            2,
            ArithmeticMode::ExactIntegerWeight,
        ))
        .unwrap();
        let bundle = export_module(&m);
        let text = to_json(&bundle);
        let back: OperatorBundle = serde_json::from_str(&text).unwrap();
        assert_eq!(back, bundle);
        assert_eq!(
            back.operator("e1").unwrap().to_operator().unwrap(),
            m.gens.e[0]
        );
        assert_eq!(to_json(&export_module(&m)), text);
    }

    #[test]
    fn rank_one_lowering_pattern() {
        let psi = build_intertwiner(
            &ModuleSpec::finite(2, 1, ArithmeticMode::ExactIntegerWeight),
            &QScalar::one(),
        )
        .unwrap();
        let b = export_intertwiner(&psi);
        let g21 = b.operator("psi(g2,1)").unwrap();
        let f1 = b.operator("f1").unwrap();
        let pattern = |o: &OperatorJson| {
            o.entries
                .iter()
                .map(|(r, c, _)| (*r, *c))
                .collect::<Vec<_>>()
        };
        assert_eq!(pattern(g21), pattern(f1));
    }
}
