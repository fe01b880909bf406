//! Text form of forms and Malcev presentations.
//!
//! ```text
//! tuple      := "(" entry ("," entry)* ")"
//! entry      := "0" | signed-sum
//! signed-sum := ["+"|"-"] term (("+"|"-") term)*
//! term       := [rational] "e^{" index+ "}"
//! index      := digit | "(" integer ")"
//! ```
//!
//! Whitespace is insignificant. `e^{17(10)}` is `e^1 ∧ e^7 ∧ e^10`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Form, MalcevPresentation};
use crate::scalar::{parse_decimal_ratio, Scalar};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

type RawTerms<T> = Vec<(T, Vec<usize>)>;

enum Entry<T> {
    Zero,
    Ellipsis,
    Sum(RawTerms<T>),
}

fn parse_index_list(cur: &mut Cursor<'_>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    loop {
        match cur.peek() {
            Some('}') => {
                cur.bump();
                break;
            }
            Some('(') => {
                cur.bump();
                let d = cur
                    .digits()
                    .ok_or_else(|| cur.error("expected an integer index"))?;
                out.push(d.parse().map_err(|_| cur.error("index too large"))?);
                cur.expect(')')?;
            }
            Some(c) if c.is_ascii_digit() => {
                cur.bump();
                out.push(c as usize - '0' as usize);
            }
            _ => return Err(cur.error("expected an index digit, '(' or '}'")),
        }
    }
    if out.is_empty() {
        return Err(cur.error("empty index list"));
    }
    if out.contains(&0) {
        return Err(cur.error("basis indices start at 1"));
    }
    Ok(out)
}

fn parse_term<T: Scalar>(cur: &mut Cursor<'_>, negative: bool) -> Result<(T, Vec<usize>)> {
    let coeff_start = cur.pos;
    let coeff = match cur.digits() {
        None => T::one(),
        Some(num) => {
            let den = if cur.eat('/') {
                Some(
                    cur.digits()
                        .ok_or_else(|| cur.error("expected a denominator"))?,
                )
            } else {
                None
            };
            parse_decimal_ratio(num, den).ok_or(Error::Syntax {
                pos: coeff_start,
                msg: "coefficient is not representable".into(),
            })?
        }
    };
    if !cur.eat_str("e^{") {
        return Err(cur.error("expected 'e^{'"));
    }
    let idx = parse_index_list(cur)?;
    Ok((if negative { -coeff } else { coeff }, idx))
}

fn at_entry_end(cur: &mut Cursor<'_>) -> bool {
    matches!(cur.peek(), None | Some(',') | Some(')'))
}

fn parse_entry<T: Scalar>(cur: &mut Cursor<'_>) -> Result<Entry<T>> {
    if cur.eat_str("...") || cur.eat_str("\u{2026}") {
        return Ok(Entry::Ellipsis);
    }
    let save = cur.pos;
    if cur.eat('0') && at_entry_end(cur) {
        return Ok(Entry::Zero);
    }
    cur.pos = save;
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some(c) if is_minus(c) => {
                cur.bump();
                true
            }
            _ if first => false,
            _ => return Err(cur.error("expected '+' or '-' between terms")),
        };
        terms.push(parse_term(cur, negative)?);
        first = false;
        if at_entry_end(cur) {
            break;
        }
    }
    Ok(Entry::Sum(terms))
}

fn build_form<T: Scalar>(terms: RawTerms<T>) -> Result<Form<T>> {
    let degree = terms[0].1.len();
    let mut f = Form::zero(degree);
    for (c, idx) in terms {
        if idx.len() != degree {
            return Err(Error::Degree {
                expected: degree,
                found: idx.len(),
            });
        }
        f.add_term(&idx, c);
    }
    Ok(f)
}

fn check_range<T: Scalar>(f: &Form<T>, dim: usize) -> Result<()> {
    let m = f.max_index();
    if m > dim {
        return Err(Error::IndexOutOfRange { index: m, dim });
    }
    Ok(())
}

/// Parses a single form such as `-e^{146}+e^{356}` or `0`.
///
/// A literal `0` yields the zero form of degree `zero_degree`. When `dim` is
/// given, indices above it are rejected.
pub fn parse_form<T: Scalar>(text: &str, zero_degree: usize, dim: Option<usize>) -> Result<Form<T>> {
    let mut cur = Cursor::new(text);
    let f = match parse_entry::<T>(&mut cur)? {
        Entry::Zero => Form::zero(zero_degree),
        Entry::Ellipsis => return Err(cur.error("'...' is only allowed inside a tuple")),
        Entry::Sum(terms) => build_form(terms)?,
    };
    if !cur.at_end() {
        return Err(cur.error("trailing input after form"));
    }
    if let Some(dim) = dim {
        check_range(&f, dim)?;
    }
    Ok(f)
}

fn parse_entries<T: Scalar>(text: &str) -> Result<Vec<(usize, Entry<T>)>> {
    let mut cur = Cursor::new(text);
    cur.expect('(')?;
    let mut entries = Vec::new();
    loop {
        let at = {
            cur.skip_ws();
            cur.pos
        };
        entries.push((at, parse_entry(&mut cur)?));
        match cur.bump() {
            Some(',') => continue,
            Some(')') => break,
            _ => return Err(Error::Syntax {
                pos: cur.pos,
                msg: "expected ',' or ')'".into(),
            }),
        }
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input after tuple"));
    }
    Ok(entries)
}

fn assemble<T: Scalar>(entries: Vec<(usize, Entry<T>)>) -> Result<MalcevPresentation<T>> {
    let dim = entries.len();
    let mut diffs = Vec::with_capacity(dim);
    for (at, entry) in entries {
        let f = match entry {
            Entry::Zero => Form::zero(2),
            Entry::Ellipsis => {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "'...' needs a declared dimension".into(),
                })
            }
            Entry::Sum(terms) => build_form(terms)?,
        };
        if !f.is_zero() && f.degree() != 2 {
            return Err(Error::Degree {
                expected: 2,
                found: f.degree(),
            });
        }
        check_range(&f, dim)?;
        diffs.push(f);
    }
    MalcevPresentation::new(diffs)
}

/// Parses a Malcev tuple such as `(0,0,0,-e^{12},-e^{23},-e^{14}+e^{35})`.
pub fn parse_malcev<T: Scalar>(text: &str) -> Result<MalcevPresentation<T>> {
    assemble(parse_entries(text)?)
}

/// Parses a tuple against a declared dimension.
///
/// Missing leading entries are taken to be zero, and a single `...` entry
/// expands to as many zeros as needed, so `(0,...,0, e^{15}-e^{36}, ...)`
/// can be read exactly as written.
pub fn parse_malcev_with_dim<T: Scalar>(text: &str, dim: usize) -> Result<MalcevPresentation<T>> {
    let mut entries = parse_entries::<T>(text)?;
    let ellipses: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter(|(_, (_, e))| matches!(e, Entry::Ellipsis))
        .map(|(i, _)| i)
        .collect();
    if ellipses.len() > 1 {
        return Err(Error::Syntax {
            pos: entries[ellipses[1]].0,
            msg: "at most one '...' per tuple".into(),
        });
    }
    let given = entries.len() - ellipses.len();
    if given > dim {
        return Err(Error::SizeMismatch {
            expected: dim,
            found: given,
        });
    }
    let fill = dim - given;
    let at = match ellipses.first() {
        Some(&i) => {
            entries.remove(i);
            i
        }
        None => 0,
    };
    let pad = (0..fill).map(|_| (0, Entry::Zero));
    entries.splice(at..at, pad);
    assemble(entries)
}

fn write_index(f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
    if i < 10 {
        write!(f, "{i}")
    } else {
        write!(f, "({i})")
    }
}

impl<T: Scalar> fmt::Display for Form<T> {
    /// Terms in lexicographic order of index tuples, e.g. `-e^{146}+e^{356}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if n > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "e^{{")?;
            for &i in idx {
                write_index(f, i)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for MalcevPresentation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, de) in self.differentials().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{de}")?;
        }
        write!(f, ")")
    }
}

pub fn print_malcev<T: Scalar>(p: &MalcevPresentation<T>) -> String {
    p.to_string()
}
