//! Pfaffians of skew-symmetric matrices of polynomials by first-row
//! expansion, and Pfaffian classes indexed by strict partitions.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactalg::{Coeff, Poly};
use crate::partitions::StrictPartition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PfaffianError {
    #[error("Pfaffian of a matrix of odd size {0}")]
    OddSize(usize),
    #[error("matrix of size {0} exceeds the supported bound of 32")]
    TooLarge(usize),
}

/// Skew-symmetric matrix holding only the strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<R: Coeff> {
    size: usize,
    upper: Vec<Poly<R>>,
}

impl<R: Coeff> SkewMatrix<R> {
    pub fn zeros(size: usize) -> Self {
        SkewMatrix { size, upper: vec![Poly::zero(); size * size.saturating_sub(1) / 2] }
    }

    /// Builds the matrix from `f(i, j)` for 0 ≤ i < j < size.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Poly<R>) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in i + 1..size {
                let k = m.index(i, j);
                m.upper[k] = f(i, j);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.size);
        i * (2 * self.size - i - 1) / 2 + (j - i - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly<R>) {
        assert!(i != j, "diagonal of a skew matrix is zero");
        if i < j {
            let k = self.index(i, j);
            self.upper[k] = v;
        } else {
            let k = self.index(j, i);
            self.upper[k] = -v;
        }
    }

    /// Entry a_{ij}, with a_{ji} = −a_{ij} and a_{ii} = 0.
    pub fn get(&self, i: usize, j: usize) -> Poly<R> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Poly::zero(),
            Less => self.upper[self.index(i, j)].clone(),
            Greater => -&self.upper[self.index(j, i)],
        }
    }

    fn upper_ref(&self, i: usize, j: usize) -> &Poly<R> {
        &self.upper[self.index(i, j)]
    }
}

type Reduce<'a, R> = &'a (dyn Fn(Poly<R>) -> Poly<R> + Sync);

fn check_size<R: Coeff>(a: &SkewMatrix<R>) -> Result<(), PfaffianError> {
    if a.size % 2 == 1 {
        return Err(PfaffianError::OddSize(a.size));
    }
    if a.size > 32 {
        return Err(PfaffianError::TooLarge(a.size));
    }
    Ok(())
}

/// Pf(A) by first-row expansion, memoized on the set of remaining indices.
pub fn pfaffian<R: Coeff>(a: &SkewMatrix<R>) -> Result<Poly<R>, PfaffianError> {
    pfaffian_reduced(a, &|p| p)
}

/// As [`pfaffian`], applying `reduce` after every product (e.g. a normal form).
pub fn pfaffian_reduced<R: Coeff>(a: &SkewMatrix<R>, reduce: Reduce<'_, R>) -> Result<Poly<R>, PfaffianError> {
    check_size(a)?;
    let full: u32 = if a.size == 32 { u32::MAX } else { (1u32 << a.size) - 1 };
    let mut memo = HashMap::new();
    Ok(pf_memo(a, full, reduce, &mut memo))
}

fn pf_memo<R: Coeff>(a: &SkewMatrix<R>, mask: u32, reduce: Reduce<'_, R>, memo: &mut HashMap<u32, Poly<R>>) -> Poly<R> {
    if mask == 0 {
        return Poly::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut acc = Poly::zero();
    let mut pos = 0;
    let mut m = rest;
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        m &= m - 1;
        let entry = a.upper_ref(first, j);
        if !entry.is_zero() {
            let minor = pf_memo(a, rest & !(1 << j), reduce, memo);
            let term = reduce(entry * &minor);
            if pos % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Plain recursive expansion without memoization.
pub fn pfaffian_naive<R: Coeff>(a: &SkewMatrix<R>) -> Result<Poly<R>, PfaffianError> {
    check_size(a)?;
    let idx: Vec<usize> = (0..a.size).collect();
    Ok(pf_naive(a, &idx))
}

fn pf_naive<R: Coeff>(a: &SkewMatrix<R>, idx: &[usize]) -> Poly<R> {
    if idx.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for p in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&v| v != idx[p]).collect();
        let term = &a.get(idx[0], idx[p]) * &pf_naive(a, &rest);
        if p % 2 == 1 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Pf of (entry(λᵢ, λⱼ)) over the padded partition.
pub fn class_polynomial<R: Coeff>(lambda: &StrictPartition, entry: impl Fn(u32, u32) -> Poly<R>) -> Poly<R> {
    class_polynomial_reduced(lambda, entry, &|p| p)
}

pub fn class_polynomial_reduced<R: Coeff>(
    lambda: &StrictPartition,
    entry: impl Fn(u32, u32) -> Poly<R>,
    reduce: Reduce<'_, R>,
) -> Poly<R> {
    let parts = lambda.padded().parts().to_vec();
    match parts.len() {
        0 => Poly::one(),
        2 => entry(parts[0], parts[1]),
        r => {
            let m = SkewMatrix::from_fn(r, |i, j| entry(parts[i], parts[j]));
            pfaffian_reduced(&m, reduce).expect("padded length is even")
        }
    }
}

/// Odd-length form Σᵢ (−1)^{i−1} entry(λᵢ, 0) · Pf(λ without λᵢ).
pub fn odd_length_expansion<R: Coeff>(lambda: &StrictPartition, entry: &dyn Fn(u32, u32) -> Poly<R>) -> Poly<R> {
    let parts = lambda.parts();
    assert!(parts.len() % 2 == 1, "odd-length expansion needs odd length");
    let mut acc = Poly::zero();
    for i in 0..parts.len() {
        let rest: Vec<u32> = parts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        let rest = StrictPartition::new(rest).expect("sub-list of a strict partition is strict");
        let term = &entry(parts[i], 0) * &class_polynomial(&rest, entry);
        if i % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_spoly, SPoly};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::from(1);
        }
        let mut acc = BigInt::from(0);
        for c in 0..n {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect()).collect();
            let t = &m[0][c] * det(&minor);
            if c % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc
    }

    fn sym(i: usize, j: usize) -> SPoly {
        parse_spoly(&format!("t{}", 10 * (i + 1) + j + 1)).unwrap()
    }

    #[test]
    fn small_sizes() {
        let m0 = SkewMatrix::<BigInt>::zeros(0);
        assert_eq!(pfaffian(&m0).unwrap(), SPoly::one());
        let m2 = SkewMatrix::from_fn(2, sym);
        assert_eq!(pfaffian(&m2).unwrap(), sym(0, 1));
        let m4 = SkewMatrix::from_fn(4, sym);
        let want = &(&sym(0, 1) * &sym(2, 3)) - &(&sym(0, 2) * &sym(1, 3)) + &sym(0, 3) * &sym(1, 2);
        assert_eq!(pfaffian(&m4).unwrap(), want);
        assert_eq!(pfaffian(&SkewMatrix::<BigInt>::zeros(3)), Err(PfaffianError::OddSize(3)));
    }

    #[test]
    fn square_is_determinant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for size in [2usize, 4, 6] {
            for _ in 0..20 {
                let vals: Vec<Vec<i64>> = (0..size).map(|_| (0..size).map(|_| rng.gen_range(-9..=9)).collect()).collect();
                let m = SkewMatrix::<BigInt>::from_fn(size, |i, j| SPoly::from_i64(vals[i][j]));
                let dense: Vec<Vec<BigInt>> = (0..size)
                    .map(|i| (0..size).map(|j| m.get(i, j).constant_term()).collect())
                    .collect();
                let pf = pfaffian(&m).unwrap().constant_term();
                assert_eq!(&pf * &pf, det(&dense));
            }
        }
    }

    #[test]
    fn memo_matches_naive() {
        for size in [2usize, 4, 6] {
            let m = SkewMatrix::from_fn(size, sym);
            assert_eq!(pfaffian(&m).unwrap(), pfaffian_naive(&m).unwrap());
        }
    }

    #[test]
    fn single_entry_shapes() {
        let entry = |k: u32, l: u32| parse_spoly(&format!("P{k}*t{}", l + 1)).unwrap();
        let one: StrictPartition = "3".parse().unwrap();
        assert_eq!(class_polynomial(&one, entry), parse_spoly("P3*t1").unwrap());
        let two: StrictPartition = "2,1".parse().unwrap();
        assert_eq!(class_polynomial(&two, entry), parse_spoly("P2*t2").unwrap());
        assert_eq!(class_polynomial(&StrictPartition::empty(), entry), SPoly::one());
    }
}
