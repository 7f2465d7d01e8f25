//! Parsers for the command-line expression, action and support syntaxes.
//!
//! Expressions are integer combinations of caterpillar terms and nested
//! brackets:
//!
//! ```text
//! expr   := ['+'|'-'] [int] factor (('+'|'-') [int] factor)*
//! factor := term | '[' expr ',' expr ']'
//! term   := 't(' label (',' label)+ ')'
//! ```
//!
//! Actions are whitespace-separated generator lists applied left to
//! right: `transv(1->3,+1)` adds a_1 to a_3 and `perm(1 2)(3 4)` swaps
//! indices in cycle notation. Supports are inclusive ranges `1..6` or
//! comma lists `1,3,4` of 1-based indices.

use crate::coef::Coef;
use crate::gl::GlMap;
use crate::symplectic::Label;
use crate::tree::TreeSum;
use crate::{Error, Result};
use num_bigint::BigInt;

/// Parses and evaluates an expression to an exact tree sum.
pub fn parse_expr(text: &str) -> Result<TreeSum> {
    let mut p = Cursor { text: text.as_bytes(), pos: 0 };
    let sum = expr(&mut p)?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(Error::Usage(format!("trailing input at byte {} of expression", p.pos)));
    }
    Ok(sum)
}

/// Parses a whitespace-separated list of label substitutions.
///
/// The returned maps are meant to be applied in list order.
pub fn parse_action(text: &str) -> Result<Vec<GlMap>> {
    let mut p = Cursor { text: text.as_bytes(), pos: 0 };
    let mut maps = Vec::new();
    loop {
        p.skip_ws();
        if p.pos == p.text.len() {
            break;
        }
        maps.push(generator(&mut p)?);
    }
    if maps.is_empty() {
        return Err(Error::Usage("empty action".into()));
    }
    Ok(maps)
}

/// Parses a support as a sorted list of distinct 1-based indices.
pub fn parse_support(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    let mut out: Vec<u32> = Vec::new();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = support_index(lo)?;
        let hi = support_index(hi)?;
        out.extend(lo..=hi);
    } else {
        for piece in text.split(',') {
            out.push(support_index(piece)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Domain("empty support".into()));
    }
    if out[0] == 0 {
        return Err(Error::Domain("support indices are 1-based".into()));
    }
    Ok(out)
}

fn support_index(piece: &str) -> Result<u32> {
    piece
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::Usage(format!("bad support index {:?}", piece.trim())))
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Usage(format!("expected '{}' at byte {}", c as char, self.pos)))
        }
    }

    fn lit(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        Some(std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Usage(format!("expected a label at byte {}", start)));
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos]).expect("ascii label"))
    }
}

fn sign_opt(p: &mut Cursor) -> Option<i64> {
    match p.peek() {
        Some(b'+') => {
            p.pos += 1;
            Some(1)
        }
        Some(b'-') => {
            p.pos += 1;
            Some(-1)
        }
        _ => None,
    }
}

fn coef_opt(p: &mut Cursor) -> Result<Option<Coef>> {
    match p.digits() {
        None => Ok(None),
        Some(d) => {
            let big = d
                .parse::<BigInt>()
                .map_err(|_| Error::Usage(format!("bad integer coefficient {d:?}")))?;
            Ok(Some(Coef::from(big)))
        }
    }
}

fn expr(p: &mut Cursor) -> Result<TreeSum> {
    let mut out = TreeSum::zero();
    let mut sign = sign_opt(p).unwrap_or(1);
    loop {
        let mut coef = coef_opt(p)?.unwrap_or(Coef::ONE);
        if sign < 0 {
            coef = coef.neg();
        }
        let f = factor(p)?;
        out.add_assign(&f.scaled(&coef));
        sign = match sign_opt(p) {
            Some(s) => s,
            None => break,
        };
    }
    Ok(out)
}

fn factor(p: &mut Cursor) -> Result<TreeSum> {
    if p.lit("[") {
        let l = expr(p)?;
        p.eat(b',')?;
        let r = expr(p)?;
        p.eat(b']')?;
        return Ok(l.bracket(&r));
    }
    if p.lit("t(") {
        let mut labels = vec![label(p)?];
        while p.lit(",") {
            labels.push(label(p)?);
        }
        p.eat(b')')?;
        if labels.len() < 3 {
            return Err(Error::Domain("a tree term needs at least three leaves".into()));
        }
        return Ok(TreeSum::caterpillar(&labels));
    }
    Err(Error::Usage(format!("expected 't(' or '[' at byte {}", p.pos)))
}

fn label(p: &mut Cursor) -> Result<Label> {
    let word = p.ident()?;
    Label::parse(word)
}

fn generator(p: &mut Cursor) -> Result<GlMap> {
    if p.lit("transv(") {
        let i = index(p)?;
        p.eat(b'-')?;
        p.eat(b'>')?;
        let j = index(p)?;
        p.eat(b',')?;
        let sign = sign_opt(p).unwrap_or(1);
        let mag = p
            .digits()
            .ok_or_else(|| Error::Usage(format!("expected an offset at byte {}", p.pos)))?;
        let mag = mag
            .parse::<i64>()
            .map_err(|_| Error::Usage(format!("bad transvection offset {mag:?}")))?;
        p.eat(b')')?;
        return GlMap::transvection(i, j, sign * mag);
    }
    if p.lit("perm") {
        let mut moves = Vec::new();
        while p.lit("(") {
            let mut cycle = vec![index(p)?];
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                cycle.push(index(p)?);
            }
            p.eat(b')')?;
            for t in 0..cycle.len() {
                moves.push((cycle[t], cycle[(t + 1) % cycle.len()]));
            }
        }
        if moves.is_empty() {
            return Err(Error::Usage("perm needs at least one cycle".into()));
        }
        return GlMap::permutation(&moves);
    }
    Err(Error::Usage(format!("expected 'transv(' or 'perm' at byte {}", p.pos)))
}

fn index(p: &mut Cursor) -> Result<u32> {
    let d = p
        .digits()
        .ok_or_else(|| Error::Usage(format!("expected an index at byte {}", p.pos)))?;
    d.parse::<u32>().map_err(|_| Error::Usage(format!("bad index {d:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{a, b};

    #[test]
    fn single_term_with_coefficient() {
        let s = parse_expr("2 t(a2,a1,b1,a4)").unwrap();
        let t = TreeSum::caterpillar(&[a(2), a(1), b(1), a(4)]).scaled(&Coef::from(2));
        assert_eq!(format!("{s}"), format!("{t}"));
    }

    #[test]
    fn signed_sums_and_brackets() {
        let s = parse_expr("[t(a1,a2,a3), t(b3,b2,b1)] - t(a2,a3,b3,b2)").unwrap();
        let l = TreeSum::caterpillar(&[a(1), a(2), a(3)]);
        let r = TreeSum::caterpillar(&[b(3), b(2), b(1)]);
        let mut want = l.bracket(&r);
        want.add_assign(&TreeSum::caterpillar(&[a(2), a(3), b(3), b(2)]).neg());
        assert_eq!(format!("{s}"), format!("{want}"));
    }

    #[test]
    fn nested_brackets_parse() {
        let s = parse_expr("[[t(b2,b1,b5),t(a5,a1,b6)],t(a6,b3,b4)]").unwrap();
        assert_eq!(s.degree(), Some(3));
    }

    #[test]
    fn leading_minus_flips_the_first_term() {
        let s = parse_expr("-t(a1,a2,a3)").unwrap();
        assert_eq!(s, TreeSum::caterpillar(&[a(1), a(2), a(3)]).neg());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_expr("t(a1,a2"), Err(Error::Usage(_))));
        assert!(matches!(parse_expr("t(a1,a2,c3)"), Err(Error::Usage(_))));
        assert!(matches!(parse_expr("t(a1,a2,a3) junk"), Err(Error::Usage(_))));
        assert!(matches!(parse_expr("t(a1,b1)"), Err(Error::Domain(_))));
    }

    #[test]
    fn action_list_applies_in_order() {
        let maps = parse_action("transv(1->3,+1) perm(1 2)(3 4)").unwrap();
        assert_eq!(maps.len(), 2);
        let t = TreeSum::caterpillar(&[a(3), b(2), a(4)]);
        let mut s = t;
        for m in &maps {
            s = m.apply(&s);
        }
        let mut want = TreeSum::caterpillar(&[a(4), b(1), a(3)]);
        want.add_assign(&TreeSum::caterpillar(&[a(2), b(1), a(3)]));
        assert!(crate::expand::eq_rational(&s, &want));
    }

    #[test]
    fn perm_cycles_compose_within_one_map() {
        let maps = parse_action("perm(1 2 3)").unwrap();
        assert_eq!(maps.len(), 1);
        let t = TreeSum::caterpillar(&[a(1), a(2), b(3)]);
        assert_eq!(maps[0].apply(&t), TreeSum::caterpillar(&[a(2), a(3), b(1)]));
    }

    #[test]
    fn support_ranges_and_lists() {
        assert_eq!(parse_support("1..6").unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(parse_support("4,1,3,3").unwrap(), vec![1, 3, 4]);
        assert!(matches!(parse_support("6..1"), Err(Error::Domain(_))));
        assert!(matches!(parse_support("0..2"), Err(Error::Domain(_))));
        assert!(matches!(parse_support("x"), Err(Error::Usage(_))));
    }
}
