//! Symbolic integers: concrete values or a multiple of a free family parameter.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Name and lower bound of the (single) free parameter of a diagram family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Param {
    pub name: char,
    pub min: u64,
}

impl Param {
    pub fn new(name: char, min: u64) -> Self {
        Self { name, min }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymInt {
    Concrete(u64),
    /// `mult * param`, the parameter ranging over `param.min..`.
    Scaled { mult: u64, param: Param },
}

/// Three-valued answer for statements quantified over a family parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    Always,
    Never,
    Sometimes,
}

impl Truth {
    pub fn holds(self) -> bool {
        self == Truth::Always
    }

    pub fn from_bool(b: bool) -> Self {
        truth(b)
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::Never, _) | (_, Truth::Never) => Truth::Never,
            (Truth::Always, Truth::Always) => Truth::Always,
            _ => Truth::Sometimes,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::Always, _) | (_, Truth::Always) => Truth::Always,
            (Truth::Never, Truth::Never) => Truth::Never,
            _ => Truth::Sometimes,
        }
    }
}

impl SymInt {
    pub fn n(mult: u64, param: &Param) -> Self {
        SymInt::Scaled { mult, param: param.clone() }
    }

    pub fn concrete(&self) -> Option<u64> {
        match self {
            SymInt::Concrete(v) => Some(*v),
            SymInt::Scaled { .. } => None,
        }
    }

    pub fn param(&self) -> Option<&Param> {
        match self {
            SymInt::Concrete(_) => None,
            SymInt::Scaled { param, .. } => Some(param),
        }
    }

    /// Smallest value the integer takes.
    pub fn min_value(&self) -> u64 {
        match self {
            SymInt::Concrete(v) => *v,
            SymInt::Scaled { mult, param } => mult * param.min,
        }
    }

    pub fn instantiate(&self, value: u64) -> u64 {
        match self {
            SymInt::Concrete(v) => *v,
            SymInt::Scaled { mult, .. } => mult * value,
        }
    }

    pub fn scale(&self, k: u64) -> SymInt {
        match self {
            SymInt::Concrete(v) => SymInt::Concrete(v * k),
            SymInt::Scaled { mult, param } => SymInt::Scaled { mult: mult * k, param: param.clone() },
        }
    }

    /// Whether `self` divides `other` for every admissible parameter value.
    pub fn divides(&self, other: &SymInt) -> Truth {
        match (self, other) {
            (SymInt::Concrete(a), SymInt::Concrete(b)) => truth(*a != 0 && b % a == 0),
            // a | b*n for all n iff a | b
            (SymInt::Concrete(a), SymInt::Scaled { mult, .. }) => {
                if mult % a == 0 {
                    Truth::Always
                } else {
                    Truth::Sometimes
                }
            }
            (SymInt::Scaled { .. }, SymInt::Concrete(b)) => {
                if *b == 0 {
                    Truth::Always
                } else {
                    Truth::Sometimes
                }
            }
            (SymInt::Scaled { mult: a, param: p }, SymInt::Scaled { mult: b, param: q }) => {
                if p.name != q.name {
                    Truth::Sometimes
                } else if b % a == 0 {
                    Truth::Always
                } else {
                    Truth::Sometimes
                }
            }
        }
    }

    /// Whether the integer equals `v` for every admissible parameter value.
    pub fn equals(&self, v: u64) -> Truth {
        match self {
            SymInt::Concrete(a) => truth(*a == v),
            SymInt::Scaled { mult, param } => {
                if mult * param.min > v {
                    Truth::Never
                } else {
                    Truth::Sometimes
                }
            }
        }
    }

    /// Least common multiple, when it is again of the form `c` or `c*n`.
    pub fn lcm(&self, other: &SymInt) -> Option<SymInt> {
        if self.divides(other).holds() {
            return Some(other.clone());
        }
        if other.divides(self).holds() {
            return Some(self.clone());
        }
        match (self, other) {
            (SymInt::Concrete(a), SymInt::Concrete(b)) => Some(SymInt::Concrete(num_integer::lcm(*a, *b))),
            _ => None,
        }
    }

    /// Whether the integer is even for every parameter value (`Always`), odd
    /// for every value (`Never`), or neither.
    pub fn is_even(&self) -> Truth {
        match self {
            SymInt::Concrete(v) => truth(v % 2 == 0),
            SymInt::Scaled { mult, .. } if mult % 2 == 0 => Truth::Always,
            SymInt::Scaled { .. } => Truth::Sometimes,
        }
    }

    /// Halve an integer known to be even.
    pub fn half(&self) -> Option<SymInt> {
        self.ratio(&SymInt::Concrete(2))
    }

    /// `self / other` when the quotient is again of the form `c` or `c*n`.
    pub fn ratio(&self, other: &SymInt) -> Option<SymInt> {
        match (self, other) {
            (SymInt::Concrete(a), SymInt::Concrete(b)) => (*b != 0 && a % b == 0).then(|| SymInt::Concrete(a / b)),
            (SymInt::Scaled { mult: a, param: p }, SymInt::Scaled { mult: b, param: q }) => {
                (p.name == q.name && a % b == 0).then(|| SymInt::Concrete(a / b))
            }
            (SymInt::Scaled { mult, param }, SymInt::Concrete(b)) => {
                (mult % b == 0).then(|| SymInt::Scaled { mult: mult / b, param: param.clone() })
            }
            (SymInt::Concrete(_), SymInt::Scaled { .. }) => None,
        }
    }
}

fn truth(b: bool) -> Truth {
    if b {
        Truth::Always
    } else {
        Truth::Never
    }
}

impl From<u64> for SymInt {
    fn from(v: u64) -> Self {
        SymInt::Concrete(v)
    }
}

impl fmt::Display for SymInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymInt::Concrete(v) => write!(f, "{v}"),
            SymInt::Scaled { mult: 1, param } => write!(f, "{}", param.name),
            SymInt::Scaled { mult, param } => write!(f, "{mult}{}", param.name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_divisibility() {
        let p = Param::new('n', 1);
        assert_eq!(SymInt::n(1, &p).divides(&SymInt::n(2, &p)), Truth::Always);
        assert_eq!(SymInt::n(2, &p).divides(&SymInt::n(1, &p)), Truth::Sometimes);
        assert_eq!(SymInt::Concrete(2).divides(&SymInt::n(2, &p)), Truth::Always);
        assert_eq!(SymInt::Concrete(4).divides(&SymInt::n(2, &p)), Truth::Sometimes);
        assert_eq!(SymInt::n(1, &p).divides(&SymInt::Concrete(4)), Truth::Sometimes);
    }

    #[test]
    fn n_and_2n_are_distinct() {
        let p = Param::new('n', 1);
        assert_ne!(SymInt::n(1, &p), SymInt::n(2, &p));
        assert_eq!(SymInt::n(2, &p).to_string(), "2n");
        assert_eq!(SymInt::n(2, &p).instantiate(5), 10);
    }
}
