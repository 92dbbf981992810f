//! Polynomial text format.
//!
//! ```json
//! {"num_vars": 4, "terms": [{"coeff": "-1", "exps": [0,1,1,0]}, {"coeff": "1", "exps": [1,0,0,1]}]}
//! ```
//! Terms are written in ascending grevlex order, coefficients as `"p/q"`.

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TermRecord {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PolynomialRecord {
    pub num_vars: usize,
    pub terms: Vec<TermRecord>,
}

impl<F: Field> Polynomial<F> {
    pub fn to_record(&self) -> PolynomialRecord {
        PolynomialRecord {
            num_vars: self.num_vars(),
            terms: self
                .terms()
                .map(|(m, c)| TermRecord {
                    coeff: c.to_exact_string(),
                    exps: m.exps().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &PolynomialRecord) -> Result<Self> {
        let mut terms = Vec::with_capacity(rec.terms.len());
        for t in &rec.terms {
            if t.exps.len() != rec.num_vars {
                return Err(Error::Parse(format!(
                    "term has {} exponents, expected {}",
                    t.exps.len(),
                    rec.num_vars
                )));
            }
            terms.push((Monomial::new(t.exps.clone()), F::parse_exact(&t.coeff)?));
        }
        Polynomial::from_terms(rec.num_vars, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: PolynomialRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&rec)
    }
}
