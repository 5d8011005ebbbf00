//! On-disk algebra format: a JSON file listing bracket values per basis
//! pair. Unlisted pairs are zero; listing both `(u,v)` and `(v,u)` is
//! accepted only when the coefficient lists are exact negations. Scalar
//! literals are strings so exact rationals survive round trips.

use lieclass_core::{LieAlgebra4, Scalar, Tensor3};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const DEFAULT_BASIS: [&str; 4] = ["X", "Y", "Z", "W"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarsMode {
    Rational,
    Float,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default = "default_basis")]
    pub basis: Vec<String>,
    pub scalars: ScalarsMode,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub pair: [String; 2],
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, String>>,
}

fn default_basis() -> Vec<String> {
    DEFAULT_BASIS.iter().map(|s| s.to_string()).collect()
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid algebra file: {e}"))
    }

    fn basis_index(&self, label: &str) -> Result<usize, String> {
        self.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| format!("unknown basis label `{label}`"))
    }

    /// Build the structure-constant table in this file's scalar mode.
    pub fn to_algebra<S: Scalar>(&self, tol: f64) -> Result<LieAlgebra4<S>, String> {
        if self.basis.len() != 4 {
            return Err(format!(
                "basis must list exactly 4 labels, found {}",
                self.basis.len()
            ));
        }
        for (i, a) in self.basis.iter().enumerate() {
            if self.basis[i + 1..].contains(a) {
                return Err(format!("duplicate basis label `{a}`"));
            }
        }

        let mut c = Tensor3::<S>::zero();
        let mut listed: Vec<(usize, usize)> = Vec::new();
        for entry in &self.brackets {
            let i = self.basis_index(&entry.pair[0])?;
            let j = self.basis_index(&entry.pair[1])?;
            if i == j {
                return Err(format!(
                    "bracket pair [{}, {}] repeats a label; [u,u] is identically zero",
                    entry.pair[0], entry.pair[1]
                ));
            }
            let mut value: [S; 4] = std::array::from_fn(|_| S::zero());
            for (label, literal) in &entry.coeffs {
                let k = self.basis_index(label)?;
                value[k] = S::parse_literal(literal).map_err(|e| {
                    format!(
                        "bad coefficient for {label} in [{}, {}]: {e}",
                        entry.pair[0], entry.pair[1]
                    )
                })?;
            }
            if listed.contains(&(i, j)) {
                return Err(format!(
                    "pair [{}, {}] is listed twice",
                    entry.pair[0], entry.pair[1]
                ));
            }
            if listed.contains(&(j, i)) {
                // The mirror was already stored; this listing must agree
                // with its negation.
                for (k, v) in value.iter().enumerate() {
                    if (v.clone() + c.get(j, i, k).clone()).is_negligible(tol) {
                        continue;
                    }
                    return Err(format!(
                        "inconsistent duplicate: [{}, {}] is not the negation of [{}, {}]",
                        entry.pair[0], entry.pair[1], entry.pair[1], entry.pair[0]
                    ));
                }
            }
            listed.push((i, j));
            for (k, v) in value.into_iter().enumerate() {
                c.set(i, j, k, v.clone());
                c.set(j, i, k, -v);
            }
        }
        LieAlgebra4::new(c, tol).map_err(|e| e.to_string())
    }

    /// Serialize an algebra over the default basis, listing the nonzero
    /// brackets of the six normal-form pairs.
    pub fn from_algebra<S: Scalar>(
        alg: &LieAlgebra4<S>,
        scalars: ScalarsMode,
        metadata: Option<Metadata>,
        tol: f64,
    ) -> Self {
        let pairs = [(3usize, 2usize), (2, 0), (2, 1), (3, 0), (3, 1), (1, 0)];
        let mut brackets = Vec::new();
        for (i, j) in pairs {
            let v = alg.bracket_basis(i, j);
            if v.is_zero(tol) {
                continue;
            }
            let mut coeffs = BTreeMap::new();
            for (k, value) in v.0.iter().enumerate() {
                if !value.is_negligible(tol) {
                    coeffs.insert(DEFAULT_BASIS[k].to_string(), value.render());
                }
            }
            brackets.push(BracketEntry {
                pair: [DEFAULT_BASIS[i].to_string(), DEFAULT_BASIS[j].to_string()],
                coeffs,
            });
        }
        AlgebraFile {
            basis: default_basis(),
            scalars,
            brackets,
            metadata,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file serializes")
    }
}
