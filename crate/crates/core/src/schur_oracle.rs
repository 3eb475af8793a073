//! Ground-truth evaluation of factorial P- and Q-functions by brute-force
//! symmetrization over S_N at exact points.
//!
//! The x-coordinates of a point are exact rationals; the t-coordinates are
//! polynomials, so a point may keep some tⱼ symbolic. Identity checks use
//! fully symbolic t together with a finite set of integer x-configurations
//! whose evaluation matrix on a basis of Γ'_{≤d} (products of odd power
//! sums) has full column rank. Vanishing on such a set is a proof of
//! vanishing in Z[t] ⊗ Γ' up to degree d.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{permutations, to_rational, ExactError, QPoly, SPoly, TruncatedSeries, Var};
use crate::partitions::StrictPartition;

/// Number of x-variables used for certification.
pub const ORACLE_N: usize = 6;

/// Restriction Γ'_d → 6 variables is injective for d below this bound.
pub const INJECTIVITY_BOUND: u32 = 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("x-values must be pairwise distinct and nonzero")]
    CoincidentX,
    #[error("number of x-variables must be even, got {0}")]
    OddN(usize),
    #[error("partition of length {len} needs at least that many variables, have {n}")]
    TooManyRows { len: usize, n: usize },
    #[error("non-exact division in the symmetrization: {0}")]
    NonExactDivision(String),
    #[error("no certifying grid for degree {0}")]
    GridTooSmall(u32),
    #[error("degree {0} is beyond the injectivity range of six variables")]
    DegreeTooLarge(u32),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Exact evaluation point: x₁..x_N and t₁, t₂, … (zero past the list).
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint {
    pub x: Vec<BigRational>,
    pub t: Vec<QPoly>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl EvalPoint {
    pub fn new(x: Vec<BigRational>, t: Vec<QPoly>) -> Result<Self, OracleError> {
        if x.len() % 2 == 1 {
            return Err(OracleError::OddN(x.len()));
        }
        for i in 0..x.len() {
            if x[i].is_zero() || x[..i].contains(&x[i]) {
                return Err(OracleError::CoincidentX);
            }
        }
        Ok(EvalPoint { x, t })
    }

    /// Integer x-values and t₁..t_m kept symbolic.
    pub fn symbolic(x: &[i64], m: u32) -> Result<Self, OracleError> {
        Self::new(x.iter().map(|&v| rat(v)).collect(), (1..=m).map(|j| QPoly::var(Var::T(j))).collect())
    }

    pub fn numeric(x: &[i64], t: &[i64]) -> Result<Self, OracleError> {
        Self::new(x.iter().map(|&v| rat(v)).collect(), t.iter().map(|&v| QPoly::constant(rat(v))).collect())
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn t_value(&self, j: usize) -> QPoly {
        if j == 0 {
            return QPoly::zero();
        }
        self.t.get(j - 1).cloned().unwrap_or_default()
    }

    /// The point with t replaced by (0, t₁, t₂, …).
    pub fn shifted(&self) -> EvalPoint {
        let mut t = vec![QPoly::zero()];
        t.extend(self.t.iter().cloned());
        EvalPoint { x: self.x.clone(), t }
    }
}

/// (x|t)^k = (x − t₁)⋯(x − t_k).
pub fn generalized_factorial(x: &BigRational, pt: &EvalPoint, k: usize) -> QPoly {
    let xc = QPoly::constant(x.clone());
    let mut acc = QPoly::one();
    for j in 1..=k {
        acc = &acc * &(&xc - &pt.t_value(j));
    }
    acc
}

fn common_denominator(x: &[BigRational]) -> BigInt {
    x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Integer lift of a point: y = D·x with y integral, t' = D·t.
fn lift(pt: &EvalPoint) -> (BigInt, Vec<BigInt>, EvalPoint) {
    let d = common_denominator(&pt.x);
    let y: Vec<BigInt> = pt.x.iter().map(|v| (v * BigRational::from_integer(d.clone())).to_integer()).collect();
    let dq = BigRational::from_integer(d.clone());
    let lifted = EvalPoint {
        x: y.iter().map(|v| BigRational::from_integer(v.clone())).collect(),
        t: pt.t.iter().map(|p| p.scale(&dq)).collect(),
    };
    (d, y, lifted)
}

fn has_integral_coefficients(p: &QPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

/// P_λ(x|t) from the symmetrization over all N! permutations.
pub fn eval_p_direct(lambda: &StrictPartition, pt: &EvalPoint) -> Result<QPoly, OracleError> {
    let n = pt.n();
    let l = lambda.len();
    if l > n {
        return Err(OracleError::TooManyRows { len: l, n });
    }
    let (d, y, lifted) = lift(pt);
    let mut vandermonde = BigInt::one();
    for a in 0..n {
        for b in a + 1..n {
            vandermonde *= &y[a] - &y[b];
        }
    }
    if vandermonde.is_zero() {
        return Err(OracleError::CoincidentX);
    }
    // Terms sharing w(1..ℓ) share their t-factor; sum their x-parts first.
    let mut by_prefix: HashMap<Vec<usize>, BigInt> = HashMap::new();
    for w in permutations(n)? {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..l {
            for j in i + 1..n {
                num *= &y[w[i]] + &y[w[j]];
                den *= &y[w[i]] - &y[w[j]];
            }
        }
        let cof = crate::exactalg::Coeff::div_exact(&vandermonde, &den)
            .ok_or_else(|| OracleError::NonExactDivision("Vandermonde cofactor".into()))?;
        *by_prefix.entry(w[..l].to_vec()).or_insert_with(BigInt::zero) += num * cof;
    }
    let mut prefixes: Vec<_> = by_prefix.into_iter().collect();
    prefixes.sort();
    let mut sum = QPoly::zero();
    for (prefix, c) in prefixes {
        if c.is_zero() {
            continue;
        }
        let mut tp = QPoly::constant(BigRational::from_integer(c));
        for (i, &a) in prefix.iter().enumerate() {
            tp = &tp * &generalized_factorial(&lifted.x[a], &lifted, lambda.parts()[i] as usize);
        }
        sum += tp;
    }
    let divisor = factorial(n - l) * &vandermonde;
    if has_integral_coefficients(&sum) {
        let ok = sum.terms().all(|(_, c)| (c.to_integer() % &divisor).is_zero());
        if !ok {
            return Err(OracleError::NonExactDivision(format!("sum not divisible by (N-l)!·V for {lambda}")));
        }
    }
    let scale = BigRational::new(BigInt::one(), divisor * d.pow(lambda.weight()));
    Ok(sum.scale(&scale))
}

/// Q_λ(x|t) = 2^ℓ P_λ(x|0, t₁, t₂, …).
pub fn eval_q_direct(lambda: &StrictPartition, pt: &EvalPoint) -> Result<QPoly, OracleError> {
    let p = eval_p_direct(lambda, &pt.shifted())?;
    Ok(p.scale(&BigRational::from_integer(BigInt::from(2).pow(lambda.len() as u32))))
}

/// Ordinary P_i(x) from ∏(1 + xⱼu)/(1 − xⱼu) = 1 + Σ 2Pᵢ(x)uⁱ.
pub fn eval_p_onerow(i: usize, pt: &EvalPoint) -> Result<BigRational, OracleError> {
    if i == 0 {
        return Ok(BigRational::one());
    }
    let (d, y, _) = lift(pt);
    let mut s = TruncatedSeries::one(i);
    for v in &y {
        let v = BigRational::from_integer(v.clone());
        let num = TruncatedSeries::linear(BigRational::one(), v.clone(), i);
        let den = TruncatedSeries::linear(BigRational::one(), -v, i).inverse()?;
        s = s.mul(&num).mul(&den);
    }
    let c = s.coeff(i);
    if !c.is_integer() || c.to_integer().is_odd() {
        return Err(OracleError::NonExactDivision(format!("odd series coefficient at u^{i}")));
    }
    Ok(BigRational::new(c.to_integer(), BigInt::from(2) * d.pow(i as u32)))
}

/// Value of an expression in generators P̄ᵢ = Pᵢ(x) and tⱼ at a point.
pub fn eval_symbolic(expr: &SPoly, pt: &EvalPoint) -> Result<QPoly, OracleError> {
    let mut gens: HashMap<u32, QPoly> = HashMap::new();
    for v in expr.variables() {
        if let Var::Gen(i) = v {
            gens.insert(i, QPoly::constant(eval_p_onerow(i as usize, pt)?));
        }
    }
    Ok(to_rational(expr).substitute(|v| match v {
        Var::Gen(i) => gens.get(&i).cloned(),
        Var::T(j) => Some(pt.t_value(j as usize)),
        _ => None,
    }))
}

/// Odd partitions ν (all parts odd) with |ν| ≤ d.
fn odd_partitions(d: u32) -> Vec<Vec<u32>> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        let mut p = max.min(rem);
        if p % 2 == 0 {
            p = p.saturating_sub(1);
        }
        while p >= 1 {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
            if p < 2 {
                break;
            }
            p -= 2;
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &piv;
            for k in c..cols {
                let sub = &f * &rows[r][k];
                rows[i][k] -= sub;
            }
        }
        r += 1;
    }
    r
}

const PRIMES: [i64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// The k-th deterministic x-configuration: six distinct primes with a sign pattern.
pub fn x_configuration(k: usize) -> Vec<i64> {
    (0..ORACLE_N)
        .map(|i| {
            let p = PRIMES[(k + 5 * i) % PRIMES.len()] + 2 * (k / PRIMES.len()) as i64 * PRIMES[i];
            if (k >> i) & 1 == 1 { -p } else { p }
        })
        .collect()
}

/// Deterministic x-grid certifying degree ≤ d, with the rank it achieved.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Grid {
    pub degree_bound: u32,
    pub basis_size: usize,
    pub points: Vec<Vec<i64>>,
}

fn distinct_abs(x: &[i64]) -> bool {
    (0..x.len()).all(|i| (0..i).all(|j| x[i].abs() != x[j].abs()))
}

fn build_grid(d: u32) -> Result<Grid, OracleError> {
    let basis = odd_partitions(d);
    let mut points = Vec::new();
    let mut rows = Vec::new();
    let mut k = 0;
    while points.len() < basis.len() + 2 {
        if k > 40 * (basis.len() + 10) {
            return Err(OracleError::GridTooSmall(d));
        }
        let x = x_configuration(k);
        k += 1;
        if !distinct_abs(&x) {
            continue;
        }
        let power_sum = |e: u32| x.iter().map(|&v| rat(v).pow(e as i32)).fold(BigRational::zero(), |a, b| a + b);
        let ps: Vec<BigRational> = (0..=d).map(power_sum).collect();
        let row: Vec<BigRational> =
            basis.iter().map(|nu| nu.iter().fold(BigRational::one(), |a, &p| a * &ps[p as usize])).collect();
        rows.push(row);
        let r = rank(rows.clone());
        if r < rows.len() && r < basis.len() {
            rows.pop();
            continue;
        }
        points.push(x);
    }
    if rank(rows) < basis.len() {
        return Err(OracleError::GridTooSmall(d));
    }
    Ok(Grid { degree_bound: d, basis_size: basis.len(), points })
}

/// Memoized certifying grid for total degree ≤ d.
pub fn certifying_grid(d: u32) -> Result<Grid, OracleError> {
    if d >= INJECTIVITY_BOUND {
        return Err(OracleError::DegreeTooLarge(d));
    }
    static GRIDS: OnceLock<Mutex<HashMap<u32, Grid>>> = OnceLock::new();
    let cache = GRIDS.get_or_init(Default::default);
    if let Some(g) = cache.lock().expect("grid cache").get(&d) {
        return Ok(g.clone());
    }
    let g = build_grid(d)?;
    cache.lock().expect("grid cache").insert(d, g.clone());
    Ok(g)
}

/// Outcome of an identity check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
    pub degree_bound: u32,
    pub points_checked: usize,
    pub basis_size: usize,
    pub symbolic_t: u32,
    pub first_failure: Option<Vec<i64>>,
}

/// Checks lhs ≡ rhs on the certifying grid with t₁..t_m symbolic.
pub fn identity_check<L, R>(name: &str, lhs: L, rhs: R, degree_bound: u32, m: u32) -> Result<Certificate, OracleError>
where
    L: Fn(&EvalPoint) -> Result<QPoly, OracleError> + Sync,
    R: Fn(&EvalPoint) -> Result<QPoly, OracleError> + Sync,
{
    let grid = certifying_grid(degree_bound)?;
    let mut cert = Certificate {
        name: name.to_string(),
        holds: true,
        degree_bound,
        points_checked: 0,
        basis_size: grid.basis_size,
        symbolic_t: m,
        first_failure: None,
    };
    // Points are independent; the first failing index in grid order is reported.
    let outcome: Vec<Result<bool, OracleError>> = grid
        .points
        .par_iter()
        .map(|x| {
            let pt = EvalPoint::symbolic(x, m)?;
            Ok(lhs(&pt)? == rhs(&pt)?)
        })
        .collect();
    for (x, r) in grid.points.iter().zip(outcome) {
        cert.points_checked += 1;
        if !r? {
            cert.holds = false;
            cert.first_failure = Some(x.clone());
            break;
        }
    }
    Ok(cert)
}

/// Value at s = 0 of the polynomial of degree < values.len() through (sᵢ, vᵢ).
pub fn extrapolate_to_zero(samples: &[(BigRational, QPoly)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (si, vi)) in samples.iter().enumerate() {
        let mut w = BigRational::one();
        for (j, (sj, _)) in samples.iter().enumerate() {
            if i != j {
                w *= sj / (sj - si);
            }
        }
        acc += vi.scale(&w);
    }
    acc
}

/// P_λ(x₁..x_{N−2}, 0, 0 | t), reached by interpolating along (…, s, 2s).
pub fn eval_p_with_two_zeros(lambda: &StrictPartition, head: &[BigRational], t: &[QPoly]) -> Result<QPoly, OracleError> {
    let deg = lambda.weight() as i64;
    let scale = head.iter().map(|v| v.abs()).fold(BigRational::one(), |a, b| if b > a { b } else { a });
    let mut samples = Vec::new();
    for s in 1..=deg + 1 {
        let s = BigRational::new(BigInt::from(s), BigInt::one()) / (&scale * rat(4 * (deg + 2)));
        let mut x = head.to_vec();
        x.push(s.clone());
        x.push(&s * rat(2));
        let pt = EvalPoint::new(x, t.to_vec())?;
        samples.push((s, eval_p_direct(lambda, &pt)?));
    }
    Ok(extrapolate_to_zero(&samples))
}

/// Upper bound on the total degree of an expression in P̄ and t.
pub fn gamma_degree(expr: &SPoly) -> u32 {
    expr.terms()
        .map(|(m, _)| {
            m.pairs()
                .iter()
                .map(|&(v, e)| match v {
                    Var::Gen(i) => i * e,
                    _ => e,
                })
                .sum::<u32>()
        })
        .max()
        .unwrap_or(0)
}

pub fn to_f64_lossy(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_qpoly, parse_spoly};

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    #[test]
    fn factorial_power() {
        let pt = EvalPoint::numeric(&[3, 4], &[1, 2]).unwrap();
        assert_eq!(generalized_factorial(&rat(3), &pt, 2), QPoly::from_i64(2));
        assert_eq!(generalized_factorial(&rat(3), &pt, 0), QPoly::one());
        let zero = EvalPoint::numeric(&[3, 4], &[]).unwrap();
        assert_eq!(generalized_factorial(&rat(3), &zero, 3), QPoly::from_i64(27));
    }

    #[test]
    fn empty_and_one_row() {
        let pt = EvalPoint::symbolic(&[2, 3, 5, 7, 11, 13], 4).unwrap();
        assert_eq!(eval_p_direct(&sp(""), &pt).unwrap(), QPoly::one());
        assert_eq!(eval_p_direct(&sp("1"), &pt).unwrap(), QPoly::from_i64(41));
    }

    #[test]
    fn onerow_values() {
        let pt = EvalPoint::numeric(&[1, 2], &[]).unwrap();
        assert_eq!(eval_p_onerow(2, &pt).unwrap(), rat(9));
        let anti = EvalPoint::numeric(&[1, -1, 2, -2], &[]).unwrap();
        assert_eq!(eval_p_onerow(1, &anti).unwrap(), rat(0));
    }

    #[test]
    fn direct_matches_onerow_at_t_zero() {
        let pt = EvalPoint::numeric(&[2, -3, 5, 7, -11, 13], &[]).unwrap();
        for i in 1..=6 {
            let a = eval_p_direct(&StrictPartition::row(i), &pt).unwrap();
            assert_eq!(a, QPoly::constant(eval_p_onerow(i as usize, &pt).unwrap()));
        }
    }

    #[test]
    fn schur_p21_at_t_zero() {
        let pt = EvalPoint::numeric(&[1, 2, 3, 4], &[]).unwrap();
        let p = |i| eval_p_onerow(i, &pt).unwrap();
        let expect = p(2) * p(1) - p(3);
        assert_eq!(eval_p_direct(&sp("2,1"), &pt).unwrap(), QPoly::constant(expect));
    }

    #[test]
    fn rational_points_scale() {
        let half = BigRational::new(1.into(), 2.into());
        let x: Vec<BigRational> = [1, 3, 5, 7].iter().map(|&v| rat(v) * &half).collect();
        let pt = EvalPoint::new(x, vec![QPoly::var(Var::T(1)), QPoly::var(Var::T(2))]).unwrap();
        let big = EvalPoint::symbolic(&[1, 3, 5, 7], 2).unwrap();
        let a = eval_p_direct(&sp("2,1"), &pt).unwrap();
        // P(x/2 | t) = 2^{-3} P(x | 2t)
        let b = eval_p_direct(&sp("2,1"), &big).unwrap();
        let b = b.substitute(|v| match v {
            Var::T(j) => Some(QPoly::var(Var::T(j)).scale(&rat(2))),
            _ => None,
        });
        assert_eq!(a, b.scale(&BigRational::new(1.into(), 8.into())));
    }

    #[test]
    fn symbolic_generators() {
        let pt = EvalPoint::numeric(&[1, 2, 3, 4], &[]).unwrap();
        let e = parse_spoly("P1^2 - P2").unwrap();
        assert!(eval_symbolic(&e, &pt).unwrap().is_zero());
        assert_eq!(eval_symbolic(&SPoly::one(), &pt).unwrap(), QPoly::one());
        let sym = EvalPoint::symbolic(&[1, 2], 2).unwrap();
        assert_eq!(
            eval_symbolic(&parse_spoly("t2*P1").unwrap(), &sym).unwrap(),
            parse_qpoly("3*t2").unwrap()
        );
    }

    #[test]
    fn rejects_bad_points() {
        assert_eq!(EvalPoint::numeric(&[1, 1], &[]), Err(OracleError::CoincidentX));
        assert_eq!(EvalPoint::numeric(&[1, 2, 3], &[]), Err(OracleError::OddN(3)));
        assert_eq!(EvalPoint::numeric(&[0, 2], &[]), Err(OracleError::CoincidentX));
        let pt = EvalPoint::numeric(&[1, 2], &[]).unwrap();
        assert!(matches!(eval_p_direct(&sp("3,2,1"), &pt), Err(OracleError::TooManyRows { .. })));
    }

    #[test]
    fn odd_partition_counts() {
        // 1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10 odd partitions of 0..10
        assert_eq!(odd_partitions(10).len(), 43);
        assert_eq!(odd_partitions(3).len(), 5);
    }

    #[test]
    fn grid_has_full_rank() {
        let g = certifying_grid(6).unwrap();
        assert!(g.points.len() >= g.basis_size);
        assert!(certifying_grid(30).is_err());
    }

    #[test]
    fn extrapolation_recovers_constant_term() {
        let samples: Vec<(BigRational, QPoly)> =
            (1..=3).map(|s| (rat(s), QPoly::from_i64(5 + 2 * s + s * s))).collect();
        assert_eq!(extrapolate_to_zero(&samples), QPoly::from_i64(5));
    }
}
