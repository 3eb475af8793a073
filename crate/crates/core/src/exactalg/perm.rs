use super::ExactError;

pub const DEFAULT_PERMUTATION_BOUND: usize = 8;

/// Lexicographic enumeration of all permutations of 0..n.
pub struct Permutations {
    cur: Vec<usize>,
    done: bool,
}

pub fn permutations(n: usize) -> Result<Permutations, ExactError> {
    permutations_bounded(n, DEFAULT_PERMUTATION_BOUND)
}

pub fn permutations_bounded(n: usize, bound: usize) -> Result<Permutations, ExactError> {
    if n > bound {
        return Err(ExactError::PermutationBound { n, bound });
    }
    Ok(Permutations { cur: (0..n).collect(), done: false })
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let a = &mut self.cur;
        match (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
            None => self.done = true,
            Some(i) => {
                let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("pivot");
                a.swap(i - 1, j);
                a[i..].reverse();
            }
        }
        Some(out)
    }
}
