//! Text formats for weights and roots.
//!
//! Weights: `ξ0,ξ1,…,ξr[;ξ]` or a linear form such as `2ϖ0+ϖ1-2δ`
//! (`w0`, `delta` as ASCII spellings). Roots: `2*α0+α1`, `α0+t*δ`
//! (`a0`, `alpha0`, `delta` as ASCII spellings).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Rat};
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, RootElement, Weight};

#[derive(Debug, PartialEq)]
enum Symbol {
    Indexed(usize),
    Delta,
}

fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad number {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

/// Splits `a+b-c` into signed terms.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        if (ch == '+' || ch == '-' || ch == '−') && !cur.is_empty() && !cur.ends_with('/') {
            out.push((neg, core::mem::take(&mut cur)));
            neg = ch != '+';
        } else if (ch == '+' || ch == '-' || ch == '−') && cur.is_empty() {
            if ch != '+' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Parses `[coeff][*]symbol` where the symbol uses one of the given
/// prefixes for indexed generators.
fn parse_term(term: &str, prefixes: &[&str]) -> Result<(Rat, Symbol)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    let (coeff_str, sym_str) = if let Some((c, s)) = term.split_once('*') {
        (c.to_string(), s.to_string())
    } else {
        let idx =
            term.char_indices().find(|(_, c)| !(c.is_ascii_digit() || *c == '/')).map(|(i, _)| i).ok_or_else(bad)?;
        (term[..idx].to_string(), term[idx..].to_string())
    };
    let coeff = if coeff_str.is_empty() { Rat::one() } else { parse_rational(&coeff_str)? };
    let lower = sym_str.to_lowercase();
    if lower == "δ" || lower == "delta" {
        return Ok((coeff, Symbol::Delta));
    }
    for p in prefixes {
        if let Some(rest) = lower.strip_prefix(p) {
            let rest = rest.trim_start_matches('_');
            if let Ok(i) = rest.parse::<usize>() {
                return Ok((coeff, Symbol::Indexed(i)));
            }
        }
    }
    Err(bad())
}

const ROOT_PREFIXES: [&str; 3] = ["alpha", "α", "a"];
const WEIGHT_PREFIXES: [&str; 4] = ["varpi", "ϖ", "omega", "w"];

pub fn parse_root(datum: &RootDatum, s: &str) -> Result<RootElement> {
    let n = datum.n();
    let mut coeffs = vec![Rat::zero(); n];
    for (neg, term) in split_terms(s)? {
        let (c, sym) = parse_term(&term, &ROOT_PREFIXES)?;
        let c = if neg { -c } else { c };
        match sym {
            Symbol::Delta => {
                for (slot, a) in coeffs.iter_mut().zip(&datum.marks) {
                    *slot += &c * rat(*a);
                }
            }
            Symbol::Indexed(i) if i < n => coeffs[i] += c,
            Symbol::Indexed(i) => return Err(Error::Parse(format!("index {i} out of range in {s:?}"))),
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return Err(Error::Parse(format!("non-integral root coefficient in {s:?}")));
        }
        out.push(i64::try_from(c.to_integer()).map_err(|_| Error::Parse(format!("coefficient overflow in {s:?}")))?);
    }
    Ok(RootElement::new(out))
}

pub fn parse_weight(datum: &RootDatum, s: &str) -> Result<Weight> {
    let n = datum.n();
    let s = s.trim();
    let is_linear = s.chars().any(|c| c == 'ϖ' || c == 'w' || c == 'δ' || c == 'o' || c == 'v') || s.contains("delta");
    if !is_linear {
        let (hs, ds) = match s.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let mut h = Vec::new();
        for part in hs.split(',') {
            let part = part.trim().replace('−', "-");
            h.push(part.parse::<i64>().map_err(|_| Error::Parse(format!("bad weight entry {part:?} in {s:?}")))?);
        }
        if h.len() != n {
            return Err(Error::Parse(format!("weight {s:?} needs {n} entries")));
        }
        let d = match ds {
            Some(x) => parse_rational(&x.replace('−', "-"))?,
            None => Rat::zero(),
        };
        return Ok(Weight::with_d(h, d));
    }
    let mut h = vec![Rat::zero(); n];
    let mut d = Rat::zero();
    for (neg, term) in split_terms(s)? {
        let (c, sym) = parse_term(&term, &WEIGHT_PREFIXES)?;
        let c = if neg { -c } else { c };
        match sym {
            Symbol::Delta => d += c,
            Symbol::Indexed(i) if i < n => h[i] += c,
            Symbol::Indexed(i) => return Err(Error::Parse(format!("index {i} out of range in {s:?}"))),
        }
    }
    let mut hv = Vec::with_capacity(n);
    for x in h {
        if !x.is_integer() {
            return Err(Error::Parse(format!("non-integral ϖ coefficient in {s:?}")));
        }
        hv.push(i64::try_from(x.to_integer()).map_err(|_| Error::Parse(format!("overflow in {s:?}")))?);
    }
    Ok(Weight::with_d(hv, d))
}

/// `ξ0,ξ1,…[;ξ]` (the `;ξ` part only when nonzero).
pub fn format_weight(w: &Weight) -> String {
    let mut s = w.h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if !w.d.is_zero() {
        s.push(';');
        s.push_str(&w.d.to_string());
    }
    s
}

/// `2ϖ0+ϖ1-2δ` style rendering.
pub fn format_weight_linear(w: &Weight) -> String {
    let mut terms: Vec<(Rat, String)> =
        w.h.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (rat(x), format!("ϖ{i}"))).collect();
    if !w.d.is_zero() {
        terms.push((w.d.clone(), "δ".to_string()));
    }
    join_linear(&terms)
}

fn join_linear(terms: &[(Rat, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (c, sym)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        let mag = c.abs();
        if !mag.is_one() {
            s.push_str(&mag.to_string());
            s.push('*');
        }
        s.push_str(sym);
    }
    s
}

/// `2*α0+α1` style rendering.
pub fn format_root(g: &RootElement) -> String {
    let terms: Vec<(Rat, String)> =
        g.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (rat(c), format!("α{i}"))).collect();
    join_linear(&terms)
}

/// `γ₀+t*δ` rendering when `γ` is a positive real root, else `format_root`.
pub fn format_root_affine(datum: &RootDatum, g: &RootElement) -> String {
    if datum.is_positive_real_root(g) {
        for base in datum.base_roots() {
            let diff = g.sub(&base);
            if let Some(t) = datum.delta_multiple(&diff) {
                if t >= 0 {
                    let b = format_root(&base);
                    return match t {
                        0 => b,
                        1 => format!("{b}+δ"),
                        _ => format!("{b}+{t}*δ"),
                    };
                }
            }
        }
    }
    format_root(g)
}
