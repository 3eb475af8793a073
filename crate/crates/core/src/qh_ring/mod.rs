//! The quotient rings S[q][X₁..Xₙ]/⟨R₁⁽q⁾..Rₙ⁽q⁾⟩ of types C and D: normal
//! forms, Pfaffian classes X_λ, change of basis and structure constants.
//!
//! Ring elements in normal form are vectors indexed by subsets of {1..n}
//! (bit i−1 ↔ Xᵢ), i.e. by square-free monomials X^μ.

mod cache;
mod expansion;
mod symmetric;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::chevalley::{ChevalleyError, ChevalleyOperator};
use crate::exactalg::{q, DegreeTable, Monomial, SPoly, Var};
use crate::factorial_basis::{coeff_f, coeff_g, index_set};
use crate::partitions::{enumerate_sp, LieType, PartitionError, StrictPartition};
use crate::pfaffian::class_polynomial_reduced;

pub use cache::{StructureCache, CacheEntry, CacheTerm, CacheError, SCHEMA_VERSION, CACHE_ENV};
pub use expansion::{positivity_check, specialize, type_b_shift, ClassExpansion, JsonClassTerm, Mode, PositivityReport, SpecializeError};
pub use symmetric::{q0_constants_via_symmetric_functions, SymmetricError};

/// Rank above which computations are outside the tested range.
pub const DESK_RANK: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("X{var}-terms of {what} are not divisible by 2: {poly}")]
    NonExactHalving { var: u32, what: String, poly: String },
    #[error("relation R{0} does not lead with X{0}^2")]
    BadLeadingTerm(u32),
    #[error("basis change is not unitriangular at row {row}, column {col}")]
    NotUnitriangular { row: String, col: String },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

type Elem = Vec<SPoly>;

/// Presentation data and memoized rewriting tables for one (type, n).
#[derive(Debug)]
pub struct RingContext {
    pub lie: LieType,
    pub n: u32,
    pub truncation: u32,
    pub deg_q: u32,
    pub q_zero: bool,
    relations: Vec<SPoly>,
    /// Xᵢ² − Rᵢ split into (X-exponents, S[q]-coefficient).
    tails: Vec<Vec<(Vec<u32>, SPoly)>>,
    basis: Vec<StrictPartition>,
    mask_index: HashMap<u32, usize>,
    mul_var_memo: RwLock<HashMap<(u32, u32), Arc<Elem>>>,
    classes: OnceLock<Vec<Elem>>,
    change: OnceLock<Result<BasisChangeMatrix, RingError>>,
}

/// Rows λ: X_λ = Σ_μ c_{λμ} X^μ, columns in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChangeMatrix {
    pub basis: Vec<StrictPartition>,
    pub entries: Vec<Vec<SPoly>>,
    /// X^ρ = Σ_ν inverse[ρ][ν] X_ν.
    pub inverse: Vec<Vec<SPoly>>,
}

pub fn mask_of(lambda: &StrictPartition) -> u32 {
    lambda.parts().iter().fold(0, |m, &p| m | 1 << (p - 1))
}

pub fn partition_of_mask(mask: u32) -> StrictPartition {
    let parts: Vec<u32> = (1..=32).rev().filter(|i| mask >> (i - 1) & 1 == 1).collect();
    StrictPartition::new(parts).expect("distinct parts")
}

fn sign(e: u32) -> BigInt {
    BigInt::from(if e % 2 == 0 { 1 } else { -1 })
}

impl RingContext {
    pub fn build(lie: LieType, n: u32) -> Result<Self, RingError> {
        Self::build_with(lie, n, false)
    }

    /// The ring with q = 0 in every relation.
    pub fn build_q0(lie: LieType, n: u32) -> Result<Self, RingError> {
        Self::build_with(lie, n, true)
    }

    fn build_with(lie: LieType, n: u32, q_zero: bool) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::ZeroRank);
        }
        if n > DESK_RANK {
            log::warn!("rank {n} exceeds the tested range {DESK_RANK}");
        }
        let (truncation, deg_q) = match lie {
            LieType::C => (n, n + 1),
            LieType::D => (n + 1, 2 * n),
        };
        let basis = enumerate_sp(n);
        let mask_index = basis.iter().enumerate().map(|(i, l)| (mask_of(l), i)).collect();
        let mut ctx = RingContext {
            lie,
            n,
            truncation,
            deg_q,
            q_zero,
            relations: Vec::new(),
            tails: Vec::new(),
            basis,
            mask_index,
            mul_var_memo: RwLock::new(HashMap::new()),
            classes: OnceLock::new(),
            change: OnceLock::new(),
        };
        for i in 1..=n {
            let r = ctx.two_row_entry(i, i)?;
            let lead = Monomial::var_pow(Var::X(i), 2);
            if r.coeff(&lead) != BigInt::from(1) {
                return Err(RingError::BadLeadingTerm(i));
            }
            let tail = &SPoly::term(lead, BigInt::from(1)) - &r;
            ctx.tails.push(ctx.split_x(&tail));
            ctx.relations.push(r);
        }
        Ok(ctx)
    }

    pub fn degree_table(&self) -> DegreeTable {
        DegreeTable::new(self.deg_q)
    }

    pub fn relations(&self) -> &[SPoly] {
        &self.relations
    }

    pub fn basis(&self) -> &[StrictPartition] {
        &self.basis
    }

    fn quantum_value(&self) -> SPoly {
        if self.q_zero {
            SPoly::zero()
        } else {
            q()
        }
    }

    /// X_k X_l + Σ coefficient · X_r X_s with X₀ = 1, before substitution.
    pub fn raw_two_row(&self, k: u32, l: u32) -> SPoly {
        let x = |i: u32| if i == 0 { SPoly::one() } else { SPoly::var(Var::X(i)) };
        let mut acc = &x(k) * &x(l);
        for (r, s) in index_set(k, l) {
            let c = match self.lie {
                LieType::C => coeff_f(k, l, r, s, Some(self.truncation)),
                LieType::D => coeff_g(k, l, r, s, Some(self.truncation)),
            };
            if !c.is_zero() {
                acc += &c * &(&x(r) * &x(s));
            }
        }
        acc
    }

    /// X_{k,l} in S[q][X₁..Xₙ] after eliminating X_{n+1}..X_{2n}.
    pub fn two_row_entry(&self, k: u32, l: u32) -> Result<SPoly, RingError> {
        let raw = self.raw_two_row(k, l);
        let n = self.n;
        match self.lie {
            LieType::D => {
                let top = self.quantum_value().scale(&sign(n - 1));
                Ok(raw.substitute(|v| match v {
                    Var::X(j) if j > n && j < 2 * n => Some(SPoly::zero()),
                    Var::X(j) if j == 2 * n => Some(top.clone()),
                    _ => None,
                }))
            }
            LieType::C => {
                let raw = raw.substitute(|v| match v {
                    Var::X(j) if j > n + 1 => Some(SPoly::zero()),
                    _ => None,
                });
                let mut out = SPoly::zero();
                let two = BigInt::from(2);
                for (e, part) in raw.by_power(Var::X(n + 1)) {
                    let rest = part.substitute(|v| (v == Var::X(n + 1)).then(SPoly::one));
                    match e {
                        0 => out += &rest,
                        1 => {
                            let halves = rest.terms().all(|(_, c)| c.is_multiple_of(&two));
                            if !halves {
                                return Err(RingError::NonExactHalving {
                                    var: n + 1,
                                    what: format!("X_{{{k},{l}}}"),
                                    poly: rest.to_string(),
                                });
                            }
                            let half = crate::exactalg::div_exact_int(&rest, &two).expect("checked");
                            out += &(&half * &self.quantum_value());
                        }
                        _ => {
                            return Err(RingError::NonExactHalving {
                                var: n + 1,
                                what: format!("X_{{{k},{l}}} (power {e})"),
                                poly: part.to_string(),
                            })
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Groups terms by their X-part.
    fn split_x(&self, p: &SPoly) -> Vec<(Vec<u32>, SPoly)> {
        let mut groups: BTreeMap<Vec<u32>, SPoly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut exps = vec![0u32; self.n as usize];
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match v {
                    Var::X(i) if i >= 1 && i <= self.n => exps[(i - 1) as usize] = e,
                    Var::X(i) => panic!("X{i} outside the ring of rank {}", self.n),
                    _ => rest.push((v, e)),
                }
            }
            groups.entry(exps).or_default().add_term(Monomial::from_pairs(rest), c.clone());
        }
        groups.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn zero_elem(&self) -> Elem {
        vec![SPoly::zero(); 1 << self.n]
    }

    fn unit_elem(&self, mask: u32) -> Elem {
        let mut v = self.zero_elem();
        v[mask as usize] = SPoly::one();
        v
    }

    /// Normal form of Xⱼ · X^S for square-free S.
    fn mul_var(&self, j: u32, mask: u32) -> Arc<Elem> {
        let bit = 1u32 << (j - 1);
        if mask & bit == 0 {
            return Arc::new(self.unit_elem(mask | bit));
        }
        if let Some(v) = self.mul_var_memo.read().expect("memo lock").get(&(j, mask)) {
            return v.clone();
        }
        let base = mask & !bit;
        let mut out = self.zero_elem();
        for (exps, c) in &self.tails[(j - 1) as usize] {
            let mut w = self.unit_elem(base);
            for (k, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    w = self.mul_elem_var(&w, k as u32 + 1);
                }
            }
            for (o, wi) in out.iter_mut().zip(&w) {
                if !wi.is_zero() {
                    *o += &(c * wi);
                }
            }
        }
        let out = Arc::new(out);
        self.mul_var_memo.write().expect("memo lock").insert((j, mask), out.clone());
        out
    }

    fn mul_elem_var(&self, v: &Elem, j: u32) -> Elem {
        let mut out = self.zero_elem();
        for (s, vs) in v.iter().enumerate() {
            if vs.is_zero() {
                continue;
            }
            let r = self.mul_var(j, s as u32);
            for (o, rt) in out.iter_mut().zip(r.iter()) {
                if !rt.is_zero() {
                    *o += &(vs * rt);
                }
            }
        }
        out
    }

    fn mul_elem_monomial(&self, v: &Elem, exps: &[u32]) -> Elem {
        let mut w = v.clone();
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                w = self.mul_elem_var(&w, k as u32 + 1);
            }
        }
        w
    }

    fn to_elem(&self, p: &SPoly) -> Elem {
        let mut out = self.zero_elem();
        let one = self.unit_elem(0);
        for (exps, c) in self.split_x(p) {
            let w = self.mul_elem_monomial(&one, &exps);
            for (o, wi) in out.iter_mut().zip(&w) {
                if !wi.is_zero() {
                    *o += &(&c * wi);
                }
            }
        }
        out
    }

    fn from_elem(&self, v: &Elem) -> SPoly {
        let mut acc = SPoly::zero();
        for (mask, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = Monomial::from_pairs((1..=self.n).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| (Var::X(i), 1)));
            acc += &c.mul_monomial(&mono, &BigInt::from(1));
        }
        acc
    }

    fn mul_elems(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = self.zero_elem();
        for (t, bt) in b.iter().enumerate() {
            if bt.is_zero() {
                continue;
            }
            let exps: Vec<u32> = (0..self.n).map(|i| (t as u32 >> i) & 1).collect();
            let w = self.mul_elem_monomial(a, &exps);
            for (o, wi) in out.iter_mut().zip(&w) {
                if !wi.is_zero() {
                    *o += &(bt * wi);
                }
            }
        }
        out
    }

    /// Square-free representative modulo the relations.
    pub fn normal_form(&self, p: &SPoly) -> SPoly {
        self.from_elem(&self.to_elem(p))
    }

    /// X_λ = Pf(X_{λᵢ,λⱼ}) in normal form.
    pub fn giambelli_class(&self, lambda: &StrictPartition) -> Result<SPoly, RingError> {
        lambda.check_fits(self.n)?;
        let mut entries: HashMap<(u32, u32), SPoly> = HashMap::new();
        let parts = lambda.padded().parts().to_vec();
        for (i, &k) in parts.iter().enumerate() {
            for &l in &parts[i + 1..] {
                let e = if l == 0 { SPoly::var(Var::X(k)) } else { self.two_row_entry(k, l)? };
                entries.insert((k, l), e);
            }
        }
        let reduce = |p: SPoly| self.normal_form(&p);
        let pf = class_polynomial_reduced(lambda, |k, l| entries[&(k, l)].clone(), &reduce);
        Ok(self.normal_form(&pf))
    }

    fn class_elems(&self) -> Result<&Vec<Elem>, RingError> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let mut out = Vec::with_capacity(self.basis.len());
        for l in &self.basis {
            out.push(self.to_elem(&self.giambelli_class(l)?));
        }
        Ok(self.classes.get_or_init(|| out))
    }

    /// The matrix (c_{λμ}) and its inverse, checked to be unitriangular.
    pub fn basis_change(&self) -> Result<&BasisChangeMatrix, RingError> {
        self.change.get_or_init(|| self.compute_basis_change()).as_ref().map_err(Clone::clone)
    }

    fn compute_basis_change(&self) -> Result<BasisChangeMatrix, RingError> {
        let classes = self.class_elems()?;
        let size = self.basis.len();
        let mut entries = vec![vec![SPoly::zero(); size]; size];
        for (row, v) in classes.iter().enumerate() {
            for (mask, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    entries[row][self.mask_index[&(mask as u32)]] = c.clone();
                }
            }
        }
        for row in 0..size {
            for col in 0..size {
                let bad = if col == row {
                    entries[row][col] != SPoly::one()
                } else {
                    col > row && !entries[row][col].is_zero()
                };
                if bad {
                    return Err(RingError::NotUnitriangular {
                        row: self.basis[row].to_string(),
                        col: self.basis[col].to_string(),
                    });
                }
            }
        }
        // X^ρ = X_ρ − Σ_{μ<ρ} c_{ρμ} X^μ, expanded recursively.
        let mut inverse = vec![vec![SPoly::zero(); size]; size];
        for rho in 0..size {
            inverse[rho][rho] = SPoly::one();
            for mu in 0..rho {
                let c = &entries[rho][mu];
                if c.is_zero() {
                    continue;
                }
                for nu in 0..=mu {
                    if !inverse[mu][nu].is_zero() {
                        let d = c * &inverse[mu][nu];
                        inverse[rho][nu] -= &d;
                    }
                }
            }
        }
        Ok(BasisChangeMatrix { basis: self.basis.clone(), entries, inverse })
    }

    fn expand_in_classes(&self, v: &Elem) -> Result<BTreeMap<StrictPartition, SPoly>, RingError> {
        let bc = self.basis_change()?;
        let size = self.basis.len();
        let mut acc = vec![SPoly::zero(); size];
        for (mask, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rho = self.mask_index[&(mask as u32)];
            for (nu, inv) in bc.inverse[rho].iter().enumerate() {
                if !inv.is_zero() {
                    acc[nu] += &(c * inv);
                }
            }
        }
        Ok(self.basis.iter().cloned().zip(acc).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Expansion of an arbitrary ring element in the classes X_ν.
    pub fn expand(&self, p: &SPoly) -> Result<ClassExpansion, RingError> {
        let terms = self.expand_in_classes(&self.to_elem(p))?;
        Ok(ClassExpansion::new(self.lie, self.n, terms))
    }

    /// σ_λ * σ_μ = Σ c_{λμ}^{ν,d} q^d σ_ν via the ring.
    pub fn schubert_product(&self, lambda: &StrictPartition, mu: &StrictPartition) -> Result<ClassExpansion, RingError> {
        lambda.check_fits(self.n)?;
        mu.check_fits(self.n)?;
        let classes = self.class_elems()?;
        let a = &classes[self.mask_index[&mask_of(lambda)]];
        let b = &classes[self.mask_index[&mask_of(mu)]];
        let terms = self.expand_in_classes(&self.mul_elems(a, b))?;
        Ok(ClassExpansion::new(self.lie, self.n, terms))
    }

    /// Product of three classes, (σ_λ * σ_μ) * σ_ν, through the class basis.
    pub fn triple_product(
        &self,
        lambda: &StrictPartition,
        mu: &StrictPartition,
        nu: &StrictPartition,
    ) -> Result<ClassExpansion, RingError> {
        let first = self.schubert_product(lambda, mu)?;
        let mut acc: BTreeMap<StrictPartition, SPoly> = BTreeMap::new();
        for (rho, c) in first.terms() {
            for (k, v) in self.schubert_product(rho, nu)?.terms() {
                *acc.entry(k.clone()).or_default() += &(c * v);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(ClassExpansion::new(self.lie, self.n, acc))
    }
}

/// σ_λ * σ_μ from the quantum Chevalley rule alone.
pub fn multiply_via_chevalley(
    op: &ChevalleyOperator,
    lambda: &StrictPartition,
    mu: &StrictPartition,
) -> Result<ClassExpansion, RingError> {
    mu.check_fits(op.n)?;
    let table = op.multiplication_by(lambda)?;
    let terms = table.products.get(mu).cloned().unwrap_or_default();
    Ok(ClassExpansion::new(op.lie, op.n, terms))
}
