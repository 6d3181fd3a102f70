use std::collections::HashMap;
use std::str::FromStr;

use num_traits::Zero;

use super::{
    AggregateAtom, AggregateFunction, Body, BodyLiteral, Comparator, Program, Rational, Rule,
    SetEntry, SetTerm,
};
use crate::error::{Error, ParseError, ParseErrorKind};
use crate::four::{Formula, TruthValue};
use crate::lattice::{AtomId, AtomSet, Universe, MAX_REPRESENTABLE_ATOMS};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    Hash(String),
    Number(Rational),
    Neck,
    Dot,
    Comma,
    Semi,
    Colon,
    Bar,
    Amp,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Cmp(Comparator),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Not => "`not`".into(),
            Tok::Hash(s) => format!("`#{s}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Neck => "`:-`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Cmp(c) => format!("`{}`", c.symbol()),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> Error {
    Error::Parse(ParseError { line, column, kind })
}

fn lex(text: &str) -> Result<Vec<Spanned>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ':' if chars.get(i + 1) == Some(&'-') => push(Tok::Neck, 2, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            '|' => push(Tok::Bar, 1, &mut i, &mut col),
            '&' => push(Tok::Amp, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            '=' => push(Tok::Cmp(Comparator::Eq), 1, &mut i, &mut col),
            '<' if chars.get(i + 1) == Some(&'=') => {
                push(Tok::Cmp(Comparator::Le), 2, &mut i, &mut col)
            }
            '<' => push(Tok::Cmp(Comparator::Lt), 1, &mut i, &mut col),
            '>' if chars.get(i + 1) == Some(&'=') => {
                push(Tok::Cmp(Comparator::Ge), 2, &mut i, &mut col)
            }
            '>' => push(Tok::Cmp(Comparator::Gt), 1, &mut i, &mut col),
            '#' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i + 1..j].iter().collect();
                if word.is_empty() {
                    return Err(err(line, col, ParseErrorKind::UnexpectedChar('#')));
                }
                push(Tok::Hash(word), j - i, &mut i, &mut col);
            }
            c if c.is_ascii_digit()
                || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                // A fractional part or a denominator needs a digit right after
                // the separator, so the rule-ending `.` is left alone.
                if j + 1 < chars.len()
                    && (chars[j] == '.' || chars[j] == '/')
                    && chars[j + 1].is_ascii_digit()
                {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let lexeme: String = chars[i..j].iter().collect();
                let value = parse_number(&lexeme)
                    .ok_or_else(|| err(line, col, ParseErrorKind::BadNumber(lexeme.clone())))?;
                push(Tok::Number(value), j - i, &mut i, &mut col);
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = if word == "not" {
                    Tok::Not
                } else {
                    Tok::Ident(word)
                };
                push(tok, j - i, &mut i, &mut col);
            }
            other => return Err(err(line, col, ParseErrorKind::UnexpectedChar(other))),
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn parse_number(s: &str) -> Option<Rational> {
    if let Some((n, d)) = s.split_once('/') {
        let d = i64::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(i64::from_str(n).ok()?, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        let negative = int.starts_with('-');
        let whole = i64::from_str(int).ok()?;
        let part = i64::from_str(frac).ok()?;
        let numer = whole.checked_mul(scale)?;
        let numer = if negative {
            numer.checked_sub(part)?
        } else {
            numer.checked_add(part)?
        };
        return Some(Rational::new(numer, scale));
    }
    i64::from_str(s).ok().map(Rational::from_integer)
}

/// Formulas and literals refer to atoms by their order of first mention
/// until the whole text is read and the sorted universe is known.
struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    names: Vec<String>,
    ids: HashMap<String, AtomId>,
}

enum Item {
    Lit(BodyLiteral),
    Formula(Formula),
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Error {
        let (line, column) = self.here();
        err(
            line,
            column,
            ParseErrorKind::Unexpected {
                expected: expected.to_string(),
                found: self.peek().describe(),
            },
        )
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), Error> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn intern(&mut self, name: String) -> Result<AtomId, Error> {
        if let Some(&id) = self.ids.get(&name) {
            return Ok(id);
        }
        let id = self.names.len();
        if id >= MAX_REPRESENTABLE_ATOMS {
            return Err(Error::CapExceeded {
                size: id + 1,
                cap: MAX_REPRESENTABLE_ATOMS,
            });
        }
        self.names.push(name.clone());
        self.ids.insert(name, id);
        Ok(id)
    }

    fn atom(&mut self) -> Result<AtomId, Error> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                self.intern(name)
            }
            _ => Err(self.unexpected("an atom")),
        }
    }

    fn number(&mut self) -> Result<Rational, Error> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn rule(&mut self) -> Result<Rule, Error> {
        let mut head = AtomSet::EMPTY.with(self.atom()?);
        while *self.peek() == Tok::Bar {
            self.bump();
            if !matches!(self.peek(), Tok::Ident(_)) {
                let (line, column) = self.here();
                return Err(err(line, column, ParseErrorKind::EmptyDisjunct));
            }
            head = head.with(self.atom()?);
        }
        let body = match self.peek() {
            Tok::Dot => Body::Conj(Vec::new()),
            Tok::Neck => {
                self.bump();
                self.body()?
            }
            _ => return Err(self.unexpected("`|`, `:-` or `.`")),
        };
        self.expect(Tok::Dot, "`.`")?;
        Ok(Rule { head, body })
    }

    fn body(&mut self) -> Result<Body, Error> {
        if *self.peek() == Tok::Dot {
            return Ok(Body::Conj(Vec::new()));
        }
        let start = self.here();
        let mut items = vec![self.item()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            items.push(self.item()?);
        }
        if items.len() == 1 {
            if let Item::Formula(_) = items[0] {
                let Some(Item::Formula(f)) = items.pop() else {
                    unreachable!()
                };
                return Ok(Body::Formula(f));
            }
        }
        let mut lits = Vec::with_capacity(items.len());
        for item in items {
            match item {
                Item::Lit(l) => lits.push(l),
                Item::Formula(_) => {
                    return Err(err(start.0, start.1, ParseErrorKind::CompoundInLiteralList))
                }
            }
        }
        Ok(Body::Conj(lits))
    }

    fn ends_item(tok: &Tok) -> bool {
        matches!(tok, Tok::Comma | Tok::Dot)
    }

    fn item(&mut self) -> Result<Item, Error> {
        let negated = *self.peek() == Tok::Not;
        let offset = usize::from(negated);
        match self.peek_at(offset).clone() {
            Tok::Ident(_) if Self::ends_item(self.peek_at(offset + 1)) => {
                if negated {
                    self.bump();
                }
                let a = self.atom()?;
                Ok(Item::Lit(if negated {
                    BodyLiteral::Neg(a)
                } else {
                    BodyLiteral::Pos(a)
                }))
            }
            Tok::Hash(word) if !is_constant(&word) => {
                if negated {
                    self.bump();
                }
                let agg = self.aggregate()?;
                if !Self::ends_item(self.peek()) {
                    let (line, column) = self.here();
                    return Err(err(line, column, ParseErrorKind::AggregateInFormula));
                }
                Ok(Item::Lit(if negated {
                    BodyLiteral::NegAgg(agg)
                } else {
                    BodyLiteral::PosAgg(agg)
                }))
            }
            _ => Ok(Item::Formula(self.disjunction()?)),
        }
    }

    fn aggregate(&mut self) -> Result<AggregateAtom, Error> {
        let (line, column) = self.here();
        let function = match self.bump() {
            Tok::Hash(word) => match word.as_str() {
                "sum" => AggregateFunction::Sum,
                "count" => AggregateFunction::Count,
                "max" => AggregateFunction::Max,
                _ => return Err(err(line, column, ParseErrorKind::UnknownAggregate(word))),
            },
            _ => unreachable!("caller checked for `#`"),
        };
        self.expect(Tok::LBrace, "`{`")?;
        let mut entries = vec![self.entry()?];
        while *self.peek() == Tok::Semi {
            self.bump();
            entries.push(self.entry()?);
        }
        self.expect(Tok::RBrace, "`}`")?;
        let comparator = match self.peek() {
            Tok::Cmp(c) => *c,
            _ => return Err(self.unexpected("a comparison")),
        };
        self.bump();
        let bound = self.number()?;
        Ok(AggregateAtom {
            function,
            term: SetTerm { entries },
            comparator,
            bound,
        })
    }

    fn entry(&mut self) -> Result<SetEntry, Error> {
        let mut weights = vec![self.number()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            weights.push(self.number()?);
        }
        self.expect(Tok::Colon, "`:`")?;
        let mut condition = AtomSet::EMPTY.with(self.atom()?);
        while *self.peek() == Tok::Amp {
            self.bump();
            condition = condition.with(self.atom()?);
        }
        Ok(SetEntry { weights, condition })
    }

    fn disjunction(&mut self) -> Result<Formula, Error> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, Error> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, Error> {
        let (line, column) = self.here();
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.disjunction()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) => Ok(Formula::Atom(self.atom()?)),
            Tok::Hash(word) => {
                self.bump();
                match constant(&word) {
                    Some(v) => Ok(Formula::Const(v)),
                    None if matches!(word.as_str(), "sum" | "count" | "max") => {
                        Err(err(line, column, ParseErrorKind::AggregateInFormula))
                    }
                    None => Err(err(line, column, ParseErrorKind::UnknownAggregate(word))),
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

fn constant(word: &str) -> Option<TruthValue> {
    match word {
        "true" => Some(TruthValue::T),
        "false" => Some(TruthValue::F),
        "unknown" => Some(TruthValue::U),
        "contradictory" => Some(TruthValue::C),
        _ => None,
    }
}

fn is_constant(word: &str) -> bool {
    constant(word).is_some()
}

/// Parses program text. The universe is the sorted set of all atom names
/// mentioned, including those that only occur in set-term conditions.
pub fn parse(text: &str) -> Result<Program, Error> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        names: Vec::new(),
        ids: HashMap::new(),
    };
    let mut rules = Vec::new();
    while *parser.peek() != Tok::Eof {
        rules.push(parser.rule()?);
    }
    let universe = Universe::new(parser.names.iter().cloned())?;
    let remap: Vec<AtomId> = parser
        .names
        .iter()
        .map(|n| universe.id(n).expect("interned name is in the universe"))
        .collect();
    let rules = rules.into_iter().map(|r| remap_rule(r, &remap)).collect();
    Program::new(universe, rules)
}

fn remap_set(set: AtomSet, remap: &[AtomId]) -> AtomSet {
    AtomSet::from_atoms(set.iter().map(|a| remap[a]))
}

fn remap_formula(f: Formula, remap: &[AtomId]) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(remap[a]),
        Formula::Const(v) => Formula::Const(v),
        Formula::Not(g) => Formula::not(remap_formula(*g, remap)),
        Formula::And(a, b) => Formula::and(remap_formula(*a, remap), remap_formula(*b, remap)),
        Formula::Or(a, b) => Formula::or(remap_formula(*a, remap), remap_formula(*b, remap)),
    }
}

fn remap_aggregate(mut g: AggregateAtom, remap: &[AtomId]) -> AggregateAtom {
    for e in &mut g.term.entries {
        e.condition = remap_set(e.condition, remap);
    }
    g
}

fn remap_rule(rule: Rule, remap: &[AtomId]) -> Rule {
    let body = match rule.body {
        Body::Formula(f) => Body::Formula(remap_formula(f, remap)),
        Body::Conj(lits) => Body::Conj(
            lits.into_iter()
                .map(|l| match l {
                    BodyLiteral::Pos(a) => BodyLiteral::Pos(remap[a]),
                    BodyLiteral::Neg(a) => BodyLiteral::Neg(remap[a]),
                    BodyLiteral::PosAgg(g) => BodyLiteral::PosAgg(remap_aggregate(g, remap)),
                    BodyLiteral::NegAgg(g) => BodyLiteral::NegAgg(remap_aggregate(g, remap)),
                })
                .collect(),
        ),
    };
    Rule {
        head: remap_set(rule.head, remap),
        body,
    }
}
