//! Concrete syntax for differential polynomials.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := [rational] factor ('*' factor)*
//! factor := atom ['^' opword]
//! atom   := var | '[' poly ',' poly ']' | '(' poly ')'
//! var    := 'x' digits
//! opword := opname+
//! ```
//!
//! Whitespace is ignored between tokens. A leading sign is allowed on any
//! polynomial, `−` (U+2212) is read as `-`, and the lone text `0` is the
//! zero polynomial. `u^gh` means `g(h(u))`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{DiffMonomial, DiffPoly, OperatorBasis};
use crate::exact::{self, Scalar};
use crate::{Error, Result};

/// A variable with the word of generators applied to it.
type Letter = (usize, Vec<usize>);
type Expr = BTreeMap<Vec<Letter>, Scalar>;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ob: &'a OperatorBasis,
    vars: BTreeSet<usize>,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn add_into(acc: &mut Expr, key: Vec<Letter>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(key.clone()).or_insert_with(Scalar::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&c| if c == '\u{2212}' { '-' } else { c })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(syntax(self.pos, format!("expected `{c}`, found `{d}`"))),
            None => Err(syntax(self.pos, format!("expected `{c}`, found end of input"))),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn poly(&mut self) -> Result<Expr> {
        let mut acc = Expr::new();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -Scalar::one()
            }
            Some('+') => {
                self.pos += 1;
                Scalar::one()
            }
            _ => Scalar::one(),
        };
        loop {
            for (k, c) in self.term()? {
                add_into(&mut acc, k, &sign * c);
            }
            sign = match self.peek() {
                Some('+') => Scalar::one(),
                Some('-') => -Scalar::one(),
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn rational(&mut self) -> Result<Option<Scalar>> {
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(None);
        }
        let start = self.pos;
        let num: BigInt = self.digits().parse().expect("digits");
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.digits();
            if d.is_empty() {
                return Err(syntax(self.pos, "expected a denominator"));
            }
            let den: BigInt = d.parse().expect("digits");
            if den.is_zero() {
                return Err(syntax(start, "zero denominator"));
            }
            return Ok(Some(Scalar::new(num, den)));
        }
        Ok(Some(Scalar::from_integer(num)))
    }

    fn term(&mut self) -> Result<Expr> {
        let coeff = self.rational()?;
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            acc = self.multiply(&acc, &rhs, at)?;
        }
        if let Some(c) = coeff {
            acc = acc.into_iter().map(|(k, x)| (k, x * &c)).filter(|(_, x)| !x.is_zero()).collect();
        }
        Ok(acc)
    }

    fn multiply(&self, a: &Expr, b: &Expr, at: usize) -> Result<Expr> {
        let mut out = Expr::new();
        for (ka, xa) in a {
            for (kb, xb) in b {
                if ka.iter().any(|(v, _)| kb.iter().any(|(w, _)| v == w)) {
                    let v = ka.iter().find(|(v, _)| kb.iter().any(|(w, _)| v == w)).unwrap().0;
                    return Err(Error::NotMultilinear(format!(
                        "x{} occurs twice in a product (near position {at})",
                        v + 1
                    )));
                }
                let mut k = ka.clone();
                k.extend(kb.iter().cloned());
                add_into(&mut out, k, xa * xb);
            }
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len()
                && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
            {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            if text.is_empty() {
                return Err(syntax(start, "expected an operator word after `^`"));
            }
            let word = segment(&text, self.ob.generator_names(), start)?;
            for &g in word.iter().rev() {
                e = apply_generator(&e, g);
            }
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.pos;
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let d = self.digits();
                let i: usize = d
                    .parse()
                    .ok()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| syntax(self.pos, "expected a variable index ≥ 1 after `x`"))?;
                self.vars.insert(i - 1);
                let mut e = Expr::new();
                e.insert(alloc::vec![(i - 1, Vec::new())], Scalar::one());
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.poly()?;
                self.expect(',')?;
                let v = self.poly()?;
                self.expect(']')?;
                let uv = self.multiply(&u, &v, at)?;
                let vu = self.multiply(&v, &u, at)?;
                let mut out = uv;
                for (k, x) in vu {
                    add_into(&mut out, k, -x);
                }
                Ok(out)
            }
            Some('(') => {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected `{c}`"))),
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }
}

/// Leibniz rule on the intermediate form: prepend `g` to each letter in turn.
fn apply_generator(e: &Expr, g: usize) -> Expr {
    let mut out = Expr::new();
    for (k, x) in e {
        for i in 0..k.len() {
            let mut k2 = k.clone();
            k2[i].1.insert(0, g);
            add_into(&mut out, k2, x.clone());
        }
    }
    out
}

/// Splits juxtaposed operator names; the split must be unique.
fn segment(text: &str, names: &[String], start: usize) -> Result<Vec<usize>> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    // ways[i]: number of segmentations of chars[i..] (capped at 2), with the first name
    let mut ways = alloc::vec![(0u8, usize::MAX); n + 1];
    ways[n] = (1, usize::MAX);
    for i in (0..n).rev() {
        for (g, name) in names.iter().enumerate() {
            let len = name.chars().count();
            if len == 0 || i + len > n {
                continue;
            }
            if chars[i..i + len].iter().copied().eq(name.chars()) && ways[i + len].0 > 0 {
                let total = ways[i].0.saturating_add(ways[i + len].0).min(2);
                ways[i] = (total, if ways[i].0 == 0 { g } else { ways[i].1 });
            }
        }
    }
    match ways[0].0 {
        0 => Err(Error::UnknownOperator(text.to_string())),
        1 => {
            let mut out = Vec::new();
            let mut i = 0;
            while i < n {
                let g = ways[i].1;
                out.push(g);
                i += names[g].chars().count();
            }
            Ok(out)
        }
        _ => Err(syntax(start, format!("operator word `{text}` splits in more than one way"))),
    }
}

/// Parses a differential polynomial over the generators of `ob`.
///
/// The variables must be exactly `x1, …, xn` and every expanded monomial
/// must use each of them once.
pub fn parse_diff_poly(src: &str, ob: &OperatorBasis) -> Result<DiffPoly> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        ob,
        vars: BTreeSet::new(),
    };
    if src.trim() == "0" {
        return Ok(DiffPoly::zero(0));
    }
    let expr = p.poly()?;
    if let Some(c) = p.peek() {
        return Err(syntax(p.pos, format!("unexpected `{c}`")));
    }
    let n = p.vars.len();
    if let Some(&v) = p.vars.iter().find(|&&v| v >= n) {
        return Err(Error::NotMultilinear(format!(
            "variables must be x1..x{n}, found x{}",
            v + 1
        )));
    }
    let k = ob.len();
    let mut out = DiffPoly::zero(n);
    for (letters, c) in expr {
        if letters.len() != n {
            let present: BTreeSet<usize> = letters.iter().map(|(v, _)| *v).collect();
            let missing = (0..n).find(|v| !present.contains(v)).unwrap_or(0);
            return Err(Error::NotMultilinear(format!(
                "x{} is missing from a monomial",
                missing + 1
            )));
        }
        let perm: Vec<usize> = letters.iter().map(|(v, _)| *v).collect();
        let coords: Vec<Vec<Scalar>> = letters.iter().map(|(_, w)| ob.word_coords(w)).collect();
        // expand the tensor product of label coordinates
        let mut partial: Vec<(Vec<usize>, Scalar)> = alloc::vec![(Vec::new(), c)];
        for cs in &coords {
            let mut next = Vec::new();
            for (labels, x) in &partial {
                for h in 0..k {
                    if !cs[h].is_zero() {
                        let mut l = labels.clone();
                        l.push(h);
                        next.push((l, x * &cs[h]));
                    }
                }
            }
            partial = next;
        }
        for (labels, x) in partial {
            out.add_term(DiffMonomial::new(perm.clone(), labels), x);
        }
    }
    Ok(out)
}

/// Renders `p` in the grammar accepted by [`parse_diff_poly`], e.g.
/// `2 x1^eps*x2 - x2*x1`.
pub fn format_diff_poly(p: &DiffPoly, ob: &OperatorBasis) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !abs.is_one() {
            out.push_str(&exact::format_scalar(&abs));
            out.push(' ');
        }
        for (j, (v, h)) in m.perm.iter().zip(&m.labels).enumerate() {
            if j > 0 {
                out.push('*');
            }
            out.push_str(&format!("x{}", v + 1));
            if *h != 0 {
                out.push('^');
                out.push_str(&ob.word_text(*h));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::exact::int;
    use crate::free::operator_basis;

    fn ut2() -> OperatorBasis {
        let ut = builtin("UT2eps").unwrap();
        operator_basis(&ut.algebra, &ut.action, 4).unwrap()
    }

    #[test]
    fn generators_of_ut2eps() {
        let ob = ut2();
        let p = parse_diff_poly("[x1,x2]^eps - [x1,x2]", &ob).unwrap();
        assert_eq!(p.degree(), 2);
        // four terms from the derivative, two from the commutator
        assert_eq!(p.len(), 6);
        assert!(p.terms().values().all(|c| c.abs() == int(1)));
        let q = parse_diff_poly("x1^eps * x2^eps", &ob).unwrap();
        assert_eq!(q.len(), 1);
        // eps∘eps = eps in the image, so this one vanishes identically
        let r = parse_diff_poly("x1^epseps - x1^eps", &ob).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.degree(), 1);
    }

    #[test]
    fn commutator_has_identity_labels() {
        let ob = ut2();
        let p = parse_diff_poly("x1*x2 - x2*x1", &ob).unwrap();
        assert!(p.is_ordinary());
        assert_eq!(p, parse_diff_poly("[x1, x2]", &ob).unwrap());
    }

    #[test]
    fn errors() {
        let ob = ut2();
        assert!(matches!(parse_diff_poly("x1*x1", &ob), Err(Error::NotMultilinear(_))));
        assert!(matches!(parse_diff_poly("x1 + x1*x2", &ob), Err(Error::NotMultilinear(_))));
        assert!(matches!(parse_diff_poly("x2", &ob), Err(Error::NotMultilinear(_))));
        assert!(matches!(parse_diff_poly("x1^foo", &ob), Err(Error::UnknownOperator(_))));
        assert!(matches!(parse_diff_poly("x1 +", &ob), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_diff_poly("[x1 x2]", &ob), Err(Error::Syntax { .. })));
        assert!(matches!(parse_diff_poly("1/0 x1", &ob), Err(Error::Syntax { .. })));
    }

    #[test]
    fn ambiguous_words_are_rejected() {
        let names = ["a".to_string(), "aa".to_string()];
        assert!(matches!(segment("aa", &names, 0), Err(Error::Syntax { .. })));
        assert_eq!(segment("a", &names, 0).unwrap(), [0]);
        let names = ["eps".to_string(), "delta".to_string()];
        assert_eq!(segment("epsdeltaeps", &names, 0).unwrap(), [0, 1, 0]);
    }

    #[test]
    fn print_then_parse() {
        let ob = ut2();
        for src in ["2 x1^eps*x2 - x2*x1", "-1/3 [x1,x2]^eps", "(x1 + x1^eps)*x2^eps"] {
            let p = parse_diff_poly(src, &ob).unwrap();
            let printed = format_diff_poly(&p, &ob);
            assert_eq!(parse_diff_poly(&printed, &ob).unwrap(), p, "{printed}");
        }
        let p = parse_diff_poly("2 x1^eps*x2", &ob).unwrap();
        assert_eq!(format_diff_poly(&p, &ob), "2 x1^eps*x2");
    }
}
