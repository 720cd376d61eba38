//! Monomials as dense exponent vectors over an ordered variable table.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of distinct variable names. Index `i` is the variable `x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Arc<[String]>,
}

impl VariableTable {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidVariables("empty variable name".into()));
            }
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                || name.starts_with(|c: char| c.is_ascii_digit())
            {
                return Err(Error::InvalidVariables(format!(
                    "bad variable name {name:?}"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVariables(format!(
                    "duplicate variable {name:?}"
                )));
            }
        }
        Ok(VariableTable {
            names: names.into(),
        })
    }

    /// Variables `a, b, c, ...` for `n <= 26`, otherwise `x1, ..., xn`.
    pub fn standard(n: usize) -> Self {
        let names: Vec<String> = if n <= 26 {
            (0..n)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        VariableTable {
            names: names.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when every name is a single character, so monomials can be
    /// written without separators (`ab^2e`).
    pub fn single_letter(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.len())
    }

    pub fn format(&self, m: &Monomial) -> String {
        debug_assert_eq!(m.nvars(), self.len());
        let single = self.single_letter();
        let mut out = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !single && !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.names[i]);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl fmt::Debug for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A monomial `x_1^{a_1} ... x_n^{a_n}`; the zero vector is the monomial 1.
///
/// Monomials do not carry their variable table. Two monomials are compatible
/// when they have the same number of variables; the `try_*` operations check
/// this and the plain operations panic on a mismatch.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into(),
        }
    }

    pub fn from_exponents(exps: impl Into<Vec<u32>>) -> Self {
        Monomial {
            exps: exps.into().into(),
        }
    }

    /// Square-free monomial with support given by the low `nvars` bits of `mask`.
    pub fn from_mask(mask: u64, nvars: usize) -> Self {
        assert!(nvars <= 64);
        Monomial {
            exps: (0..nvars).map(|i| ((mask >> i) & 1) as u32).collect(),
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Bitmask of the variables with nonzero exponent (first 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .take(64)
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    fn check(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    pub fn try_divides(&self, other: &Monomial) -> Result<bool> {
        self.check(other)?;
        Ok(self.divides(other))
    }

    pub fn try_lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(self.lcm(other))
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    /// `self | other`, exponentwise `<=`.
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.nvars(), other.nvars(), "variable table mismatch");
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Divides and is not equal.
    pub fn strictly_divides(&self, other: &Monomial) -> bool {
        self.divides(other) && self != other
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable table mismatch");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable table mismatch");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable table mismatch");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, r: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&a| a * r).collect(),
        }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", &self.exps[..])
    }
}

/// Total degree first; within a degree, larger exponent vectors (in the
/// variable order) come first, so `x < y < z < xy < xz < yz < xyz`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    a.try_divides(b)
}

pub fn lcm(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    a.try_lcm(b)
}

pub fn multiply(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    a.try_mul(b)
}

pub fn is_squarefree(m: &Monomial) -> bool {
    m.is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn divides_examples() {
        // a..f
        let abe = mono(&[1, 1, 0, 0, 1, 0]);
        assert!(divides(&abe, &abe).unwrap());
        let abcd = mono(&[1, 1, 1, 1, 0, 0]);
        let abcdef = mono(&[1, 1, 1, 1, 1, 1]);
        assert!(divides(&abcd, &abcdef).unwrap());
        // x^2 vs xyz
        assert!(!divides(&mono(&[2, 0, 0]), &mono(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn mismatched_tables_error() {
        let a = mono(&[1, 0]);
        let b = mono(&[1, 0, 0]);
        assert!(matches!(
            divides(&a, &b),
            Err(Error::VariableMismatch { .. })
        ));
        assert!(lcm(&a, &b).is_err());
        assert!(multiply(&a, &b).is_err());
    }

    #[test]
    fn lcm_and_multiply_examples() {
        let xy = mono(&[1, 1, 0]);
        let xz = mono(&[1, 0, 1]);
        assert_eq!(lcm(&xy, &xz).unwrap(), mono(&[1, 1, 1]));
        assert_eq!(lcm(&xy, &xy).unwrap(), xy);
        let abe = mono(&[1, 1, 0, 0, 1, 0]);
        let cdf = mono(&[0, 0, 1, 1, 0, 1]);
        assert_eq!(lcm(&abe, &cdf).unwrap(), mono(&[1; 6]));
        let bc = mono(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(multiply(&abe, &bc).unwrap(), mono(&[1, 2, 1, 0, 1, 0]));
        assert_eq!(multiply(&abe, &Monomial::one(6)).unwrap(), abe);
        assert_eq!(multiply(&mono(&[1]), &mono(&[1])).unwrap(), mono(&[2]));
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(&mono(&[1, 1, 0, 0, 1, 0])));
        assert!(!is_squarefree(&mono(&[2])));
        assert!(is_squarefree(&Monomial::one(3)));
    }

    #[test]
    fn ordering_and_format() {
        let vars = VariableTable::new(["x", "y", "z"]).unwrap();
        let mut ms = [
            mono(&[1, 1, 1]),
            mono(&[0, 1, 1]),
            mono(&[1, 0, 1]),
            mono(&[0, 0, 1]),
            mono(&[1, 0, 0]),
        ];
        ms.sort();
        let shown: Vec<String> = ms.iter().map(|m| vars.format(m)).collect();
        assert_eq!(shown, ["x", "z", "xz", "yz", "xyz"]);
        assert_eq!(vars.format(&mono(&[2, 0, 1])), "x^2z");
        assert_eq!(vars.format(&Monomial::one(3)), "1");
        let starred = VariableTable::new(["x1", "x2"]).unwrap();
        assert_eq!(starred.format(&mono(&[1, 3])), "x1*x2^3");
    }

    #[test]
    fn variable_table_validation() {
        assert!(VariableTable::new(["a", "a"]).is_err());
        assert!(VariableTable::new([""]).is_err());
        assert!(VariableTable::new(["1x"]).is_err());
        assert_eq!(VariableTable::standard(3).names(), ["a", "b", "c"]);
        assert_eq!(VariableTable::standard(27).names()[26], "x27");
    }
}
