use std::fmt;

/// Indeterminates shared by every polynomial in the crate.
///
/// `T` are equivariant parameters, `Root` simple-root coordinates, `Q` the
/// quantum parameter, `X` ring generators, `XV` oracle variables and `Gen`
/// the ordinary one-row generators P̄ᵢ, `Pow` the odd power sums pᵢ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T(u32),
    Root(u32),
    Q,
    X(u32),
    XV(u32),
    Gen(u32),
    Pow(u32),
}

impl Var {
    /// Coefficient-side variables are grouped inside the coefficient of an
    /// outer monomial when rendering.
    pub fn is_inner(&self) -> bool {
        matches!(self, Var::T(_) | Var::Root(_))
    }

    /// Position in the ordering q < X₁ < X₂ < … used for outer monomials.
    pub(crate) fn outer_rank(&self) -> u64 {
        match *self {
            Var::Q => 0,
            Var::X(i) => 1 + i as u64,
            Var::XV(i) => (1 << 32) + i as u64,
            Var::Gen(i) => (2 << 32) + i as u64,
            Var::Pow(i) => (5 << 32) + i as u64,
            Var::T(i) => (3 << 32) + i as u64,
            Var::Root(i) => (4 << 32) + i as u64,
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        if s == "q" {
            return Some(Var::Q);
        }
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i)?);
        if tail.is_empty() || !tail.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let i: u32 = tail.parse().ok()?;
        match head {
            "t" => Some(Var::T(i)),
            "z" => Some(Var::Root(i)),
            "X" => Some(Var::X(i)),
            "x" => Some(Var::XV(i)),
            "P" => Some(Var::Gen(i)),
            "p" => Some(Var::Pow(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i) => write!(f, "t{i}"),
            Var::Root(i) => write!(f, "z{i}"),
            Var::Q => write!(f, "q"),
            Var::X(i) => write!(f, "X{i}"),
            Var::XV(i) => write!(f, "x{i}"),
            Var::Gen(i) => write!(f, "P{i}"),
            Var::Pow(i) => write!(f, "p{i}"),
        }
    }
}

/// Degrees of the indeterminates for a given quantum degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub deg_q: u32,
}

impl DegreeTable {
    pub fn new(deg_q: u32) -> Self {
        DegreeTable { deg_q }
    }

    pub fn degree(&self, v: Var) -> u32 {
        match v {
            Var::T(_) | Var::Root(_) | Var::XV(_) => 1,
            Var::Q => self.deg_q,
            Var::X(i) | Var::Gen(i) | Var::Pow(i) => i,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [Var::T(3), Var::Root(0), Var::Q, Var::X(12), Var::XV(1), Var::Gen(5), Var::Pow(3)] {
            assert_eq!(Var::parse(&v.to_string()), Some(v));
        }
        assert_eq!(Var::parse("y1"), None);
        assert_eq!(Var::parse("t"), None);
        assert_eq!(Var::parse("t1a"), None);
    }

    #[test]
    fn degrees_positive() {
        let d = DegreeTable::new(4);
        assert_eq!(d.degree(Var::X(3)), 3);
        assert_eq!(d.degree(Var::Q), 4);
        assert_eq!(d.degree(Var::T(9)), 1);
    }
}
