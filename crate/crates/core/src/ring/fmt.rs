//! Textual forms of ring elements.
//!
//! Integers and residues print in decimal, rationals as `num/den`, field
//! elements of `F_{p^k}` (`k > 1`) as polynomials in `x`, and parameter
//! polynomials as sums of terms like `3*t1^2*t2`. [`Ring::parse`] reads all of
//! these back, and more generally any sum of products of integers, fractions,
//! `x` and parameter names.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Elem, Ring};
use crate::error::{Error, Result};

impl Ring {
    pub fn format(&self, a: &Elem) -> String {
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) => x.to_string(),
            (Ring::Rationals, Elem::Rat(x)) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (Ring::ModN(_), Elem::Res(x)) => x.to_string(),
            (Ring::FiniteField(f), Elem::Gf(x)) => {
                if f.k() == 1 || *x == 0 {
                    return f.digits(*x)[0].to_string();
                }
                let d = f.digits(*x);
                let mut parts = Vec::new();
                for (i, &c) in d.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "x".to_string(),
                        _ => format!("x^{i}"),
                    };
                    parts.push(match (c, i) {
                        (_, 0) => c.to_string(),
                        (1, _) => mono,
                        _ => format!("{c}*{mono}"),
                    });
                }
                parts.join("+")
            }
            (Ring::ParamPoly(pr), Elem::Poly(x)) => {
                if x.is_empty() {
                    return "0".to_string();
                }
                let mut out = String::new();
                for (m, c) in x.iter().rev() {
                    let mut coef = pr.base.format(c);
                    let mut neg = false;
                    if let Some(rest) = coef.strip_prefix('-') {
                        if !rest.contains(['+', '-']) {
                            neg = true;
                            coef = rest.to_string();
                        }
                    }
                    if coef.contains(['+', '-']) {
                        coef = format!("({coef})");
                    }
                    let mono: Vec<String> = m
                        .exps()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| if e == 1 { pr.params[i].clone() } else { format!("{}^{e}", pr.params[i]) })
                        .collect();
                    let term = if mono.is_empty() {
                        coef
                    } else if coef == "1" {
                        mono.join("*")
                    } else {
                        format!("{coef}*{}", mono.join("*"))
                    };
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    out.push_str(&term);
                }
                out
            }
            _ => format!("{a:?}"),
        }
    }

    /// Parses a sum of products of integers, fractions `a/b`, the field
    /// generator `x` (for `F_{p^k}`, `k > 1`) and parameter names.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let bad = || Error::InvalidArgument(format!("cannot parse {s:?} as an element of {self:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut acc = self.zero();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0i32;
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 && !cur.ends_with('^') => {
                    if !cur.is_empty() {
                        terms.push((neg, core::mem::take(&mut cur)));
                    } else if !terms.is_empty() {
                        return Err(bad());
                    }
                    neg = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        terms.push((neg, cur));
        for (neg, term) in terms {
            let mut t = self.one();
            for factor in split_top(&term, '*') {
                let f = self.parse_factor(&factor).ok_or_else(bad)?;
                t = self.mul(&t, &f);
            }
            acc = if neg { self.sub(&acc, &t) } else { self.add(&acc, &t) };
        }
        Ok(acc)
    }

    fn parse_factor(&self, f: &str) -> Option<Elem> {
        if let Some(inner) = f.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            return self.parse(inner).ok();
        }
        let (head, exp) = match f.split_once('^') {
            Some((h, e)) => (h, e.parse::<u64>().ok()?),
            None => (f, 1),
        };
        let value = if head.chars().next()?.is_ascii_digit() {
            self.parse_number(head)?
        } else if let Some(i) = self.param_index(head) {
            self.param(i).ok()?
        } else if head == "x" {
            let f = self.base().galois_field()?;
            if f.k() < 2 {
                return None;
            }
            self.constant(Elem::Gf(f.p()))
        } else {
            return None;
        };
        Some(self.pow(&value, exp))
    }

    fn parse_number(&self, s: &str) -> Option<Elem> {
        match s.split_once('/') {
            None => Some(self.from_bigint(&s.parse::<BigInt>().ok()?)),
            Some((n, d)) => {
                let n: BigInt = n.parse().ok()?;
                let d: BigInt = d.parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                if self.is_q_algebra() {
                    let r = BigRational::new(n, d);
                    return Some(self.constant(Elem::Rat(r)));
                }
                let num = self.from_bigint(&n);
                let den = self.from_bigint(&d.abs());
                let q = self.div(&num, &den).ok()?;
                Some(if d.is_negative() { self.neg(&q) } else { q })
            }
        }
    }
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(core::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}
