//! Text syntax for elements.
//!
//! ```text
//! element := term (('+'|'-') term)*
//! term    := [scalar] factor*
//! factor  := 's' word | 't' word | '1' | '(' element ')'
//! word    := digit+ | '[' int (',' int)* ']'
//! scalar  := rat | rat 'i' | '(' rat ('+'|'-') rat 'i' ')'
//! rat     := int ['/' int]
//! ```
//!
//! Juxtaposition is multiplication. A leading sign on the whole element is
//! also accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::element::LeavittElement;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Scalar};
use crate::word::{check_alphabet, Word};

pub fn parse_element(d: u32, text: &str) -> Result<LeavittElement> {
    check_alphabet(d)?;
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, d, len: text.len() };
    let e = p.element()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    d: u32,
    len: usize,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.len)
    }

    fn error(&self, msg: &str) -> Error {
        let found = match self.peek() {
            Some(c) => format!(" (found {c:?})"),
            None => " (found end of input)".to_string(),
        };
        Error::Syntax { pos: self.offset(), msg: format!("{msg}{found}") }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn element(&mut self) -> Result<LeavittElement> {
        self.skip_ws();
        let negate_first = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LeavittElement> {
        self.skip_ws();
        let start = self.offset();
        let coeff = self.try_scalar()?;
        let mut acc = match &coeff {
            Some(c) => LeavittElement::scalar(self.d, c.clone()),
            None => LeavittElement::one(self.d),
        };
        let mut factors = 0;
        while let Some(f) = self.factor()? {
            acc = &acc * &f;
            factors += 1;
        }
        if coeff.is_none() && factors == 0 {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("expected a term{}", match self.peek() {
                    Some(c) => format!(" (found {c:?})"),
                    None => " (found end of input)".into(),
                }),
            });
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Option<LeavittElement>> {
        self.skip_ws();
        match self.peek() {
            Some('s') => {
                self.pos += 1;
                Ok(Some(LeavittElement::s_word(self.word()?)))
            }
            Some('t') => {
                self.pos += 1;
                Ok(Some(LeavittElement::t_word(self.word()?)))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Some(LeavittElement::one(self.d)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.element()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(Some(e))
            }
            _ => Ok(None),
        }
    }

    fn word(&mut self) -> Result<Word> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut letters = Vec::new();
                loop {
                    self.skip_ws();
                    let at = self.offset();
                    let n = self.int()?.ok_or_else(|| self.error("expected a letter"))?;
                    letters.push(self.letter(n, at)?);
                    if self.eat(',') {
                        continue;
                    }
                    if self.eat(']') {
                        break;
                    }
                    return Err(self.error("expected ',' or ']'"));
                }
                Word::new(self.d, letters)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut letters = Vec::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                    let at = self.offset();
                    letters.push(self.letter(BigInt::from(c.to_digit(10).unwrap()), at)?);
                    self.pos += 1;
                }
                Word::new(self.d, letters)
            }
            _ => Err(self.error("expected a word after generator")),
        }
    }

    fn letter(&self, n: BigInt, at: usize) -> Result<u32> {
        let out_of_range = || Error::Syntax {
            pos: at,
            msg: format!("letter {n} out of range [1, {}]", self.d),
        };
        let v: u32 = n.clone().try_into().map_err(|_| out_of_range())?;
        if v == 0 || v > self.d {
            return Err(out_of_range());
        }
        Ok(v)
    }

    fn int(&mut self) -> Result<Option<BigInt>> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(Some(s.parse::<BigInt>().expect("ascii digits")))
    }

    fn rat(&mut self) -> Result<Option<BigRational>> {
        let Some(num) = self.int()? else { return Ok(None) };
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.int()?.ok_or_else(|| self.error("expected denominator"))?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(Some(BigRational::new(num, den)));
        }
        self.pos = save;
        Ok(Some(BigRational::from_integer(num)))
    }

    /// A plain rational, optionally followed by `i`, or a parenthesized
    /// `(a ± b i)`. A `1` not followed by `/` or `i` is still read as the
    /// scalar 1, which is the same element as the factor `1`.
    fn try_scalar(&mut self) -> Result<Option<Scalar>> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = self.rat()?.expect("digit present");
                if self.peek() == Some('i') {
                    self.pos += 1;
                    return Ok(Some(Scalar::new(BigRational::zero(), q)));
                }
                Ok(Some(Scalar::from_rational(q)))
            }
            Some('(') => {
                let save = self.pos;
                match self.complex_literal() {
                    Some(z) => Ok(Some(z)),
                    None => {
                        self.pos = save;
                        Ok(None)
                    }
                }
            }
            _ => Ok(None),
        }
    }

    fn complex_literal(&mut self) -> Option<Scalar> {
        if !self.eat('(') {
            return None;
        }
        self.skip_ws();
        let re = self.rat().ok()??;
        let negative = if self.eat('+') {
            false
        } else if self.eat('-') {
            true
        } else {
            return None;
        };
        self.skip_ws();
        let im = self.rat().ok()??;
        if self.peek() != Some('i') {
            return None;
        }
        self.pos += 1;
        if !self.eat(')') {
            return None;
        }
        Some(Scalar::new(re, if negative { -im } else { im }))
    }
}

/// Renders an element in the text syntax; [`parse_element`] reads it back to
/// an equal element.
pub fn format_element(a: &LeavittElement) -> String {
    let mut out = String::new();
    for (alpha, beta, coeff) in a.terms() {
        let (negative, magnitude) = split_sign(coeff);
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = monomial_text(alpha, beta);
        match (magnitude.is_one(), mono.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&mono),
            (false, true) => out.push_str(&scalar_text(&magnitude)),
            (false, false) => {
                out.push_str(&scalar_text(&magnitude));
                out.push(' ');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Pulls a leading minus out of real or purely imaginary coefficients.
fn split_sign(c: &Scalar) -> (bool, Scalar) {
    if c.im.is_zero() && c.re.is_negative() {
        (true, -c)
    } else if c.re.is_zero() && c.im.is_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn scalar_text(c: &Scalar) -> String {
    if c.im.is_zero() {
        format_rational(&c.re)
    } else if c.re.is_zero() {
        format!("{}i", format_rational(&c.im))
    } else {
        c.to_string()
    }
}

fn monomial_text(alpha: &Word, beta: &Word) -> String {
    match (alpha.is_empty(), beta.is_empty()) {
        (true, true) => String::new(),
        (false, true) => format!("s{alpha}"),
        (true, false) => format!("t{beta}"),
        (false, false) => format!("s{alpha} t{beta}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: u32, letters: &[u32]) -> Word {
        Word::new(d, letters.to_vec()).unwrap()
    }

    #[test]
    fn grammar_example() {
        let a = parse_element(2, "s1 t2 + 3/2 s12 t1").unwrap();
        let want = LeavittElement::from_terms(
            2,
            [
                (w(2, &[1]), w(2, &[2]), Scalar::one()),
                (w(2, &[1, 2]), w(2, &[1]), Scalar::ratio(3, 2)),
            ],
        )
        .unwrap();
        assert_eq!(a, want);
    }

    #[test]
    fn relation_reduces_on_parse() {
        assert_eq!(parse_element(2, "t1 s1").unwrap(), LeavittElement::one(2));
        assert_eq!(parse_element(2, "s1 t1 + s2 t2").unwrap(), LeavittElement::one(2));
        assert!(parse_element(2, "t1 s2").unwrap().is_zero());
    }

    #[test]
    fn bracket_words() {
        let a = parse_element(12, "s[1,10] t[3]").unwrap();
        let want = LeavittElement::matrix_unit(w(12, &[1, 10]), w(12, &[3])).unwrap();
        assert_eq!(a, want);
        assert_eq!(format_element(&a), "s[1,10] t[3]");
    }

    #[test]
    fn scalars() {
        let a = parse_element(2, "(1/2-3i) s1 + 2i t2 - 1").unwrap();
        let want = LeavittElement::from_terms(
            2,
            [
                (w(2, &[1]), w(2, &[]), Scalar::gaussian((1, 2), (-3, 1))),
                (w(2, &[]), w(2, &[2]), Scalar::gaussian((0, 1), (2, 1))),
                (w(2, &[]), w(2, &[]), Scalar::from_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(a, want);
        assert_eq!(parse_element(2, "-s1").unwrap(), (-&parse_element(2, "s1").unwrap()));
    }

    #[test]
    fn parenthesized_products() {
        let a = parse_element(2, "(s1 + s2)(t1 + t2)").unwrap();
        let b = parse_element(2, "s1 t1 + s1 t2 + s2 t1 + s2 t2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_position() {
        match parse_element(2, "s1 + s3") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_element(2, "s1 + ") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_element(2, "s[1,"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element(2, "s1 )"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element(2, "3/0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn format_round_trips() {
        for text in ["0", "1", "-s1", "s1 t2 + 3/2 s12 t1", "(1/2+1i) s1 - 2i t2", "-3 + t11"] {
            let a = parse_element(2, text).unwrap();
            let back = parse_element(2, &format_element(&a)).unwrap();
            assert_eq!(a, back, "{text} -> {}", format_element(&a));
        }
        assert_eq!(format_element(&LeavittElement::zero(2)), "0");
        assert_eq!(format_element(&parse_element(2, "s1 t1 + s2 t2").unwrap()), "1");
    }
}
