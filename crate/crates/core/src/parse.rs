//! Text syntax for monomials and ideals.
//!
//! A monomial is a product of variable tokens, either juxtaposed single
//! letters (`abe`, `x^2y`) or `*`-separated names (`x1*x2^3`). An ideal is a
//! comma-separated list of monomials. The starred form is selected when the
//! text contains `*` or a variable name with digits; variables are numbered in
//! order of first appearance unless an explicit list is supplied.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, VariableTable};

#[derive(Clone, Debug)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    /// False when minimalization dropped some of the listed generators.
    pub was_minimal: bool,
}

impl ParsedIdeal {
    pub fn warning(&self) -> Option<String> {
        (!self.was_minimal).then(|| {
            format!(
                "input generators were not minimal; using {} minimal generators",
                self.ideal.q()
            )
        })
    }
}

struct Factor {
    name: String,
    exp: u32,
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn starred_mode(text: &str) -> bool {
    if text.contains('*') {
        return true;
    }
    let bytes = text.as_bytes();
    let mut in_exponent = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'^' => in_exponent = true,
            b'0'..=b'9' => {
                if !in_exponent
                    && i > 0
                    && (bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_')
                {
                    return true;
                }
            }
            _ => in_exponent = false,
        }
    }
    false
}

fn parse_exponent(chars: &[(usize, char)], k: &mut usize) -> Result<u32> {
    // chars[*k] is '^'
    let caret = chars[*k].0;
    *k += 1;
    let start = *k;
    while *k < chars.len() && chars[*k].1.is_ascii_digit() {
        *k += 1;
    }
    if start == *k {
        return Err(err(caret, "expected digits after '^'"));
    }
    let digits: String = chars[start..*k].iter().map(|&(_, c)| c).collect();
    digits
        .parse::<u32>()
        .map_err(|_| err(chars[start].0, "exponent too large"))
}

fn parse_single(piece: &[(usize, char)]) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < piece.len() {
        let (pos, c) = piece[k];
        if c.is_ascii_alphabetic() {
            k += 1;
            let exp = if k < piece.len() && piece[k].1 == '^' {
                parse_exponent(piece, &mut k)?
            } else {
                1
            };
            out.push(Factor {
                name: c.to_string(),
                exp,
                pos,
            });
        } else {
            return Err(err(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

fn parse_starred(piece: &[(usize, char)]) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let Some(&(pos, c)) = piece.get(k) else {
            let pos = piece.last().map(|p| p.0 + 1).unwrap_or(0);
            return Err(err(pos, "expected a variable"));
        };
        if !(c.is_ascii_alphabetic() || c == '_') {
            return Err(err(pos, format!("expected a variable, found {c:?}")));
        }
        let start = k;
        while k < piece.len() && (piece[k].1.is_ascii_alphanumeric() || piece[k].1 == '_') {
            k += 1;
        }
        let name: String = piece[start..k].iter().map(|&(_, c)| c).collect();
        let exp = if k < piece.len() && piece[k].1 == '^' {
            parse_exponent(piece, &mut k)?
        } else {
            1
        };
        out.push(Factor { name, exp, pos });
        match piece.get(k) {
            None => return Ok(out),
            Some(&(_, '*')) => k += 1,
            Some(&(p, c)) => return Err(err(p, format!("expected '*' or ',', found {c:?}"))),
        }
    }
}

fn parse_pieces(text: &str, starred: bool) -> Result<Vec<(usize, Vec<Factor>)>> {
    let mut pieces = Vec::new();
    let mut offset = 0;
    for raw in text.split(',') {
        let chars: Vec<(usize, char)> = raw
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + offset, c))
            .collect();
        let start = offset;
        offset += raw.len() + 1;
        if chars.is_empty() {
            return Err(err(start, "empty monomial"));
        }
        let factors = if chars.len() == 1 && chars[0].1 == '1' {
            Vec::new()
        } else if starred {
            parse_starred(&chars)?
        } else {
            parse_single(&chars)?
        };
        pieces.push((start, factors));
    }
    Ok(pieces)
}

fn build(vars: &VariableTable, factors: &[Factor]) -> Result<Monomial> {
    let mut exps = vec![0u32; vars.len()];
    for f in factors {
        let i = vars
            .index_of(&f.name)
            .ok_or_else(|| err(f.pos, format!("unknown variable {:?}", f.name)))?;
        exps[i] = exps[i]
            .checked_add(f.exp)
            .ok_or_else(|| err(f.pos, "exponent too large"))?;
    }
    Ok(Monomial::from_exponents(exps))
}

/// Parses one monomial over a fixed variable table.
pub fn parse_monomial(text: &str, vars: &VariableTable) -> Result<Monomial> {
    let starred = starred_mode(text) || !vars.single_letter();
    let pieces = parse_pieces(text, starred)?;
    if pieces.len() != 1 {
        return Err(err(
            pieces[1].0.saturating_sub(1),
            "expected a single monomial",
        ));
    }
    build(vars, &pieces[0].1)
}

/// Parses a comma-separated generator list into a minimalized ideal.
pub fn parse_ideal(text: &str, vars: Option<&[String]>) -> Result<ParsedIdeal> {
    if text.trim().is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let table = match vars {
        Some(names) => Some(VariableTable::new(names.iter().cloned())?),
        None => None,
    };
    let starred = starred_mode(text) || table.as_ref().is_some_and(|t| !t.single_letter());
    let pieces = parse_pieces(text, starred)?;
    let table = match table {
        Some(t) => t,
        None => {
            let mut names: Vec<String> = Vec::new();
            for (_, factors) in &pieces {
                for f in factors {
                    if !names.contains(&f.name) {
                        names.push(f.name.clone());
                    }
                }
            }
            VariableTable::new(names)?
        }
    };
    let gens = pieces
        .iter()
        .map(|(_, f)| build(&table, f))
        .collect::<Result<Vec<_>>>()?;
    let (ideal, was_minimal) = MonomialIdeal::new_reporting(table, gens)?;
    Ok(ParsedIdeal { ideal, was_minimal })
}
