//! Typeset-style rendering of K0 matrices and parsing of typeset polynomials.

use num_traits::{One, Signed, Zero};
use zigcat::exact::{Rat, TriPoly};
use zigcat::ktheory::PolyMatrix;

fn mono(coef: Rat, q: i64, s: u8) -> String {
    let mut body = String::new();
    if s == 1 {
        body.push('s');
    }
    match q {
        0 => {}
        1 => body.push('q'),
        e => body.push_str(&format!("q^{{{}}}", e)),
    }
    let c = coef.abs();
    if body.is_empty() {
        c.to_string()
    } else if c.is_one() {
        body
    } else {
        format!("{}{}", c, body)
    }
}

/// A K0 entry written as in the displays: "-sq", "-(1+s)", "q^{-1}".
pub fn k0_entry(p: &TriPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(i64, u8, Rat)> = p.terms().map(|(&(_, q, s), c)| (q, s, *c)).collect();
    terms.sort_by_key(|t| (t.0, t.1));
    let all_neg = terms.iter().all(|t| t.2 < Rat::zero());
    if terms.len() == 1 {
        let (q, s, c) = terms[0];
        let sign = if c < Rat::zero() { "-" } else { "" };
        return format!("{}{}", sign, mono(c, q, s));
    }
    if all_neg {
        let inner: Vec<String> = terms.iter().map(|&(q, s, c)| mono(c, q, s)).collect();
        return format!("-({})", inner.join("+"));
    }
    let mut out = String::new();
    for (i, &(q, s, c)) in terms.iter().enumerate() {
        let neg = c < Rat::zero();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        out.push_str(&mono(c, q, s));
    }
    out
}

pub fn latex_rows(m: &PolyMatrix) -> Vec<String> {
    m.iter()
        .map(|r| format!("{} \\\\", r.iter().map(k0_entry).collect::<Vec<_>>().join(" & ")))
        .collect()
}

/// Collapses whitespace so typeset rows can be compared byte for byte.
pub fn normalize_row(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses sums of monomials such as "1 + q_1q_2^{-1} + q_3" in q_1, q_2, q_3.
pub fn parse_typeset_poly(s: &str) -> Result<TriPoly, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '$').collect();
    if t.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut out = TriPoly::zero();
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0;
    for ch in t.chars() {
        match ch {
            '{' => {
                depth += 1;
                cur.push(ch)
            }
            '}' => {
                depth -= 1;
                cur.push(ch)
            }
            '+' | '-' if depth == 0 => {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        pieces.push((neg, cur));
    }
    for (neg, m) in pieces {
        let mut e = [0i64; 3];
        let mut coef: i128 = 1;
        let b = m.as_bytes();
        let mut i = 0;
        let digits = m.chars().take_while(|c| c.is_ascii_digit()).count();
        if digits > 0 {
            coef = m[..digits].parse().map_err(|_| format!("bad coefficient in {:?}", m))?;
            i = digits;
        }
        while i < b.len() {
            if b[i] != b'q' || b.get(i + 1) != Some(&b'_') {
                return Err(format!("bad monomial {:?}", m));
            }
            let v = (*b.get(i + 2).ok_or("truncated monomial")? as char)
                .to_digit(10)
                .filter(|d| (1..=3).contains(d))
                .ok_or_else(|| format!("bad variable in {:?}", m))? as usize;
            i += 3;
            let mut p = 1i64;
            if b.get(i) == Some(&b'^') {
                i += 1;
                if b.get(i) == Some(&b'{') {
                    let close = m[i..].find('}').ok_or("unclosed exponent")? + i;
                    p = m[i + 1..close].parse().map_err(|_| format!("bad exponent in {:?}", m))?;
                    i = close + 1;
                } else {
                    let end = m[i..].find(|c: char| !c.is_ascii_digit() && c != '-').map_or(m.len(), |k| k + i);
                    p = m[i..end].parse().map_err(|_| format!("bad exponent in {:?}", m))?;
                    i = end;
                }
            }
            e[v - 1] += p;
        }
        let c = Rat::from_integer(if neg { -coef } else { coef });
        out = &out + &TriPoly::term(c, e[0], e[1], e[2].rem_euclid(2) as u8);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use zigcat::exact::VarNames;

    fn k(s: &str) -> TriPoly {
        TriPoly::parse_with(s, VarNames::K0).unwrap()
    }

    #[test]
    fn entries() {
        assert_eq!(k0_entry(&k("-q*s")), "-sq");
        assert_eq!(k0_entry(&k("-1 - s")), "-(1+s)");
        assert_eq!(k0_entry(&k("-q")), "-q");
        assert_eq!(k0_entry(&k("q^-1")), "q^{-1}");
        assert_eq!(k0_entry(&k("1 - q")), "1-q");
    }

    #[test]
    fn typeset_polys() {
        let p = parse_typeset_poly("1 + q_1q_2^{-1} + q_3 + q_1q_2^{-1} q_1q_3").unwrap();
        assert_eq!(p, TriPoly::parse("1 + q1*q2^-1 + q3 + q1^2*q2^-1*q3").unwrap());
        assert_eq!(parse_typeset_poly("q_2 +q_2q_3").unwrap(), TriPoly::parse("q2 + q2*q3").unwrap());
        assert!(parse_typeset_poly("q_4").is_err());
    }
}
