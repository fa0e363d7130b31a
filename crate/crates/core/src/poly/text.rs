//! Canonical text form: terms in decreasing lexicographic order of exponent
//! vectors, e.g. `2*x1*x2^2 - x3 + 7`; the zero polynomial is `0`.

use super::{PolyError, SparsePoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{x}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            offset: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<&str, PolyError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }
}

type Term = (Vec<(usize, u16)>, BigInt);

fn parse_terms(text: &str) -> Result<Vec<Term>, PolyError> {
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = BigInt::one();
    match lx.peek() {
        Some(b'-') => {
            sign = -sign;
            lx.pos += 1;
        }
        Some(b'+') => lx.pos += 1,
        None => return Err(lx.err("empty polynomial")),
        _ => {}
    }
    loop {
        let mut coef = sign.clone();
        let mut vars = Vec::new();
        loop {
            match lx.peek() {
                Some(b'x') => {
                    lx.pos += 1;
                    let at = lx.pos;
                    let i: usize = lx.digits()?.parse().map_err(|_| lx.err("bad index"))?;
                    if i == 0 {
                        return Err(PolyError::Parse {
                            offset: at,
                            msg: "variables are numbered from 1".into(),
                        });
                    }
                    let mut e = 1u16;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        lx.skip_ws();
                        e = lx.digits()?.parse().map_err(|_| lx.err("bad exponent"))?;
                    }
                    vars.push((i, e));
                }
                Some(c) if c.is_ascii_digit() => {
                    let n: BigInt = lx.digits()?.parse().expect("digits parse");
                    coef *= n;
                }
                _ => return Err(lx.err("expected a coefficient or variable")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        terms.push((vars, coef));
        match lx.peek() {
            None => break,
            Some(b'+') => sign = BigInt::one(),
            Some(b'-') => sign = -BigInt::one(),
            Some(_) => return Err(lx.err("expected + or -")),
        }
        lx.pos += 1;
    }
    Ok(terms)
}

impl SparsePoly {
    /// Parses the canonical grammar in exactly `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<SparsePoly, PolyError> {
        let terms = parse_terms(text)?;
        let mut out = SparsePoly::zero(nvars);
        for (vars, c) in terms {
            let mut e = vec![0u16; nvars];
            for (i, k) in vars {
                if i > nvars {
                    return Err(PolyError::VariableIndex(i));
                }
                e[i - 1] += k;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl FromStr for SparsePoly {
    type Err = PolyError;

    /// Parses with as many variables as the largest index used.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let terms = parse_terms(s)?;
        let n = terms
            .iter()
            .flat_map(|(v, _)| v.iter().map(|&(i, _)| i))
            .max()
            .unwrap_or(0);
        let mut out = SparsePoly::zero(n);
        for (vars, c) in terms {
            let mut e = vec![0u16; n];
            for (i, k) in vars {
                e[i - 1] += k;
            }
            if !c.is_zero() {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let p: SparsePoly = "7 - x3 + 2*x2^2*x1".parse().unwrap();
        assert_eq!(p.to_string(), "2*x1*x2^2 - x3 + 7");
        assert_eq!(p.to_string().parse::<SparsePoly>().unwrap(), p);
        assert_eq!(SparsePoly::zero(3).to_string(), "0");
        assert!("0".parse::<SparsePoly>().unwrap().is_zero());
        assert_eq!("-x1 + x1".parse::<SparsePoly>().unwrap().to_string(), "0");
        assert_eq!(SparsePoly::parse("x2", 4).unwrap().nvars(), 4);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "x1 + * x2".parse::<SparsePoly>(),
            Err(PolyError::Parse { offset: 5, .. })
        ));
        assert!("x0".parse::<SparsePoly>().is_err());
        assert!(SparsePoly::parse("x5", 4).is_err());
        assert!("".parse::<SparsePoly>().is_err());
    }
}
