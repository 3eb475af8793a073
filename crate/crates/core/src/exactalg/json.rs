//! JSON form: a list of `{"coeff": "<decimal>", "mono": {"t1": e, ...}}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, SPoly};
use super::var::Var;
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub mono: BTreeMap<String, u32>,
}

pub fn to_json_terms(p: &SPoly) -> Vec<JsonTerm> {
    p.terms()
        .map(|(m, c)| JsonTerm {
            coeff: c.to_string(),
            mono: m.pairs().iter().map(|&(v, e)| (v.to_string(), e)).collect(),
        })
        .collect()
}

pub fn from_json_terms(ts: &[JsonTerm]) -> Result<SPoly, ExactError> {
    let mut p = SPoly::zero();
    for t in ts {
        let c: BigInt = t
            .coeff
            .parse()
            .map_err(|_| ExactError::Parse(format!("bad coefficient {:?}", t.coeff)))?;
        let mut pairs = Vec::new();
        for (name, &e) in &t.mono {
            let v = Var::parse(name).ok_or_else(|| ExactError::Parse(format!("unknown variable {name}")))?;
            pairs.push((v, e));
        }
        p.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(p)
}
