//! Class expansions Σ c_ν σ_ν with c_ν ∈ S[q], their text and JSON forms,
//! specializations and the positivity report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{parse_spoly, render, to_integral, to_rational, ExactError, QPoly, SPoly, Var};
use crate::partitions::{LieType, StrictPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecializeError {
    #[error("type B specialization needs a type D expansion, got type {0}")]
    NotTypeD(LieType),
    #[error("unknown specialization mode {0:?}; expected q0, t0 or typeB")]
    UnknownMode(String),
}

/// Coefficient of q^d σ_ν in JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonClassTerm {
    pub nu: StrictPartition,
    pub d: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassExpansion {
    pub lie: LieType,
    pub n: u32,
    terms: BTreeMap<StrictPartition, SPoly>,
}

impl ClassExpansion {
    pub fn new(lie: LieType, n: u32, mut terms: BTreeMap<StrictPartition, SPoly>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        ClassExpansion { lie, n, terms }
    }

    pub fn terms(&self) -> &BTreeMap<StrictPartition, SPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, nu: &StrictPartition) -> SPoly {
        self.terms.get(nu).cloned().unwrap_or_default()
    }

    /// c^{ν,d}: the q^d part of the coefficient of σ_ν.
    pub fn structure_constant(&self, nu: &StrictPartition, d: u32) -> SPoly {
        self.coefficient(nu).by_power(Var::Q).remove(&d).unwrap_or_default()
    }

    /// (ν, d, c^{ν,d}) with ν descending in the canonical order, then d ascending.
    pub fn graded_terms(&self) -> Vec<(StrictPartition, u32, SPoly)> {
        let mut out = Vec::new();
        for (nu, c) in self.terms.iter().rev() {
            for (d, part) in c.by_power(Var::Q) {
                out.push((nu.clone(), d, part));
            }
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<JsonClassTerm> {
        self.graded_terms()
            .into_iter()
            .map(|(nu, d, c)| JsonClassTerm { nu, d, coeff: render(&c) })
            .collect()
    }

    pub fn from_json_terms(lie: LieType, n: u32, ts: &[JsonClassTerm]) -> Result<Self, ExactError> {
        let mut terms: BTreeMap<StrictPartition, SPoly> = BTreeMap::new();
        for t in ts {
            let c = parse_spoly(&t.coeff)?;
            if c.variables().contains(&Var::Q) {
                return Err(ExactError::Parse(format!("coefficient {:?} must not contain q", t.coeff)));
            }
            *terms.entry(t.nu.clone()).or_default() += &(&SPoly::var(Var::Q).pow(t.d) * &c);
        }
        Ok(Self::new(lie, n, terms))
    }

    pub fn map_coefficients(&self, f: impl Fn(&SPoly) -> SPoly) -> Self {
        Self::new(self.lie, self.n, self.terms.iter().map(|(k, v)| (k.clone(), f(v))).collect())
    }
}

/// One `coeff*s[ν]` term per graded piece, e.g. `2*t1*s[1] + q*s[]`.
impl fmt::Display for ClassExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts = self.graded_terms();
        if ts.is_empty() {
            return f.write_str("0");
        }
        for (i, (nu, d, c)) in ts.iter().enumerate() {
            let qpart = match d {
                0 => String::new(),
                1 => "q*".to_string(),
                _ => format!("q^{d}*"),
            };
            let s = render(c);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if c.len() == 1 => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            let body = if c.len() > 1 { format!("({body})") } else { body };
            let coeff = if body == "1" { String::new() } else { format!("{body}*") };
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}{coeff}{qpart}s[{nu}]")?;
        }
        Ok(())
    }
}

/// Specialization modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Q0,
    T0,
    TypeB,
}

impl FromStr for Mode {
    type Err = SpecializeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "q0" | "q=0" => Ok(Mode::Q0),
            "t0" | "t=0" => Ok(Mode::T0),
            "typeB" | "B" => Ok(Mode::TypeB),
            _ => Err(SpecializeError::UnknownMode(s.to_string())),
        }
    }
}

/// q ↦ 0; all t ↦ 0; or t₁ ↦ 0 with tᵢ ↦ tᵢ₋₁ (type D only).
pub fn specialize(exp: &ClassExpansion, mode: Mode) -> Result<ClassExpansion, SpecializeError> {
    let f: Box<dyn Fn(&SPoly) -> SPoly> = match mode {
        Mode::Q0 => Box::new(|c: &SPoly| c.substitute(|v| (v == Var::Q).then(SPoly::zero))),
        Mode::T0 => Box::new(|c: &SPoly| c.substitute(|v| matches!(v, Var::T(_)).then(SPoly::zero))),
        Mode::TypeB => {
            if exp.lie != LieType::D {
                return Err(SpecializeError::NotTypeD(exp.lie));
            }
            Box::new(type_b_shift)
        }
    };
    Ok(exp.map_coefficients(|c| f(c)))
}

/// t₁ ↦ 0 and tᵢ ↦ tᵢ₋₁.
pub fn type_b_shift(c: &SPoly) -> SPoly {
    c.substitute(|v| match v {
        Var::T(1) => Some(SPoly::zero()),
        Var::T(i) => Some(SPoly::var(Var::T(i - 1))),
        _ => None,
    })
}

/// Simple-root coordinates zᵢ and tⱼ written in them.
///
/// Type D: z0 = t1 + t2, z1 = t2 − t1, zᵢ = tᵢ₊₁ − tᵢ (2 ≤ i ≤ n).
/// Type C: z0 = 2t1, zᵢ = tᵢ₊₁ − tᵢ (1 ≤ i < n); unverified convention.
pub fn t_in_roots(lie: LieType, n: u32) -> Vec<QPoly> {
    let z = |i: u32| QPoly::var(Var::Root(i));
    let half = QPoly::constant(BigRational::new(BigInt::from(1), BigInt::from(2)));
    let mut ts = Vec::new();
    match lie {
        LieType::D => {
            ts.push(&half * &(&z(0) - &z(1)));
            ts.push(&half * &(&z(0) + &z(1)));
            for i in 2..=n {
                let prev = ts.last().cloned().expect("nonempty");
                ts.push(&prev + &z(i));
            }
        }
        LieType::C => {
            ts.push(&half * &z(0));
            for i in 1..n {
                let prev = ts.last().cloned().expect("nonempty");
                ts.push(&prev + &z(i));
            }
        }
    }
    ts
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub positive: bool,
    /// (ν, d, coefficient in z) for every nonzero structure constant.
    pub rewritten: Vec<(String, u32, String)>,
    pub failures: Vec<String>,
}

/// Rewrites every c^{ν,d} in simple-root coordinates and checks that all
/// coefficients are nonnegative integers.
pub fn positivity_check(exp: &ClassExpansion) -> PositivityReport {
    let ts = t_in_roots(exp.lie, exp.n);
    let mut rewritten = Vec::new();
    let mut failures = Vec::new();
    for (nu, d, c) in exp.graded_terms() {
        let z = to_rational(&c).substitute(|v| match v {
            Var::T(j) => Some(ts.get(j as usize - 1).cloned().unwrap_or_else(QPoly::zero)),
            _ => None,
        });
        let ok = z.terms().all(|(_, k)| k.is_integer() && !k.is_negative() && !k.is_zero());
        let shown = to_integral(&z).map(|p| render(&p)).unwrap_or_else(|| render(&z));
        if !ok {
            failures.push(format!("q^{d} s[{nu}]: {shown}"));
        }
        rewritten.push((nu.to_string(), d, shown));
    }
    PositivityReport { positive: failures.is_empty(), rewritten, failures }
}
