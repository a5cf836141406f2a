//! Terms over a single binary operation, identities between them, and the
//! symbolic transforms used on Bol-Moufang type identities.
//!
//! Two text grammars are supported:
//!
//! * [`Grammar::Compact`]: juxtaposition (`xy`) binds tighter than the mid-dot
//!   (`·` or ASCII `.`), both associate to the left, parentheses override.
//!   `xy·zx` is `(x*y)*(z*x)` and `(xy·z)x` is `((x*y)*z)*x`.
//! * [`Grammar::Explicit`]: binary products written with `*`, every nested
//!   product parenthesized. `((x*y)*z)*x`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the three variable symbols an identity may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        Var::ALL.get(i).copied()
    }

    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            'y' => Some(Var::Y),
            'z' => Some(Var::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A binary tree whose leaves are variables and whose inner nodes are products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Prod(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn prod(left: Term, right: Term) -> Term {
        Term::Prod(Box::new(left), Box::new(right))
    }

    /// Leaves read left to right.
    pub fn leaves(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::Prod(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Prod(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Prod(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Swaps the operands of every product, i.e. rewrites the term for the
    /// operation `x * y = y · x`.
    pub fn mirror(&self) -> Term {
        match self {
            Term::Var(v) => Term::Var(*v),
            Term::Prod(l, r) => Term::prod(r.mirror(), l.mirror()),
        }
    }

    /// Substitutes `map[v.index()]` for every variable `v`.
    pub fn rename(&self, map: &[Var; 3]) -> Term {
        match self {
            Term::Var(v) => Term::Var(map[v.index()]),
            Term::Prod(l, r) => Term::prod(l.rename(map), r.rename(map)),
        }
    }

    /// True if some subterm is a square `vv` of a single variable.
    pub fn contains_square(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Prod(l, r) => {
                matches!((&**l, &**r), (Term::Var(a), Term::Var(b)) if a == b)
                    || l.contains_square()
                    || r.contains_square()
            }
        }
    }

    pub fn format(&self, grammar: Grammar) -> String {
        format_term(self, grammar)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_term(self, Grammar::Compact))
    }
}

/// Input/output notation for terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Grammar {
    #[default]
    Compact,
    Explicit,
}

/// `lhs = rhs`, optionally labelled with a catalog name and abbreviation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub name: Option<String>,
    pub abbrev: Option<String>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        Identity {
            lhs,
            rhs,
            name: None,
            abbrev: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Identity {
        self.name = Some(name.into());
        self
    }

    pub fn with_abbrev(mut self, abbrev: impl Into<String>) -> Identity {
        self.abbrev = Some(abbrev.into());
        self
    }

    /// Same identity written right-to-left.
    pub fn swapped(&self) -> Identity {
        Identity {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            name: self.name.clone(),
            abbrev: self.abbrev.clone(),
        }
    }

    /// Distinct variables in order of first occurrence, LHS first.
    pub fn variables(&self) -> Vec<Var> {
        let mut seen = Vec::with_capacity(3);
        for v in self.lhs.leaves().into_iter().chain(self.rhs.leaves()) {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen
    }

    pub fn contains_square(&self) -> bool {
        self.lhs.contains_square() || self.rhs.contains_square()
    }

    pub fn format(&self, grammar: Grammar) -> String {
        format_identity(self, grammar)
    }

    /// The catalog name if present, otherwise the compact text.
    pub fn label(&self) -> String {
        match &self.name {
            Some(name) => name.clone(),
            None => self.format(Grammar::Compact),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_identity(self, Grammar::Compact))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("unexpected end of input at byte {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("unknown variable {found:?} at byte {offset} (expected x, y or z)")]
    UnknownVariable { offset: usize, found: char },
    #[error("identity has no '='")]
    MissingEquals,
    #[error("second '=' at byte {offset}")]
    RepeatedEquals { offset: usize },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
    grammar: Grammar,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn offset(&self) -> usize {
        self.base + self.pos
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(found) => ParseError::UnexpectedChar {
                offset: self.offset(),
                found,
            },
            None => ParseError::UnexpectedEnd {
                offset: self.offset(),
            },
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump(c);
                Ok(())
            }
            _ => Err(self.unexpected()),
        }
    }

    fn variable(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(c) => match Var::from_symbol(c) {
                Some(v) => {
                    self.bump(c);
                    Ok(Term::Var(v))
                }
                None if c.is_alphabetic() => Err(ParseError::UnknownVariable {
                    offset: self.offset(),
                    found: c,
                }),
                None => Err(self.unexpected()),
            },
            None => Err(self.unexpected()),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.grammar {
            Grammar::Compact => self.dotted(),
            Grammar::Explicit => self.explicit(),
        }
    }

    // dotted := juxtaposed (dot juxtaposed)*
    fn dotted(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.juxtaposed()?;
        while let Some(c @ ('·' | '.')) = self.peek() {
            self.bump(c);
            let rhs = self.juxtaposed()?;
            acc = Term::prod(acc, rhs);
        }
        Ok(acc)
    }

    // juxtaposed := atom atom*
    fn juxtaposed(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        while matches!(self.peek(), Some(c) if c == '(' || c.is_alphabetic()) {
            let rhs = self.atom()?;
            acc = Term::prod(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some('(') {
            self.bump('(');
            let inner = self.dotted()?;
            self.expect(')')?;
            Ok(inner)
        } else {
            self.variable()
        }
    }

    // explicit := operand ('*' operand)?
    fn explicit(&mut self) -> Result<Term, ParseError> {
        let lhs = self.operand()?;
        if self.peek() == Some('*') {
            self.bump('*');
            let rhs = self.operand()?;
            Ok(Term::prod(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn operand(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some('(') {
            self.bump('(');
            let inner = self.explicit()?;
            self.expect(')')?;
            Ok(inner)
        } else {
            self.variable()
        }
    }
}

fn parse_at(text: &str, base: usize, grammar: Grammar) -> Result<Term, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        src: text,
        pos: 0,
        base,
        grammar,
    };
    let term = p.term()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(term)
}

pub fn parse_term(text: &str, grammar: Grammar) -> Result<Term, ParseError> {
    parse_at(text, 0, grammar)
}

/// Parses `lhs = rhs`. No balance check is made; see [`classify`].
pub fn parse_identity(text: &str, grammar: Grammar) -> Result<Identity, ParseError> {
    let mut eqs = text.match_indices('=').map(|(i, _)| i);
    let eq = eqs.next().ok_or(ParseError::MissingEquals)?;
    if let Some(offset) = eqs.next() {
        return Err(ParseError::RepeatedEquals { offset });
    }
    let lhs = parse_at(&text[..eq], 0, grammar)?;
    let rhs = parse_at(&text[eq + 1..], eq + 1, grammar)?;
    Ok(Identity::new(lhs, rhs))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    // anywhere a dotted expression may stand
    Dotted,
    // left operand of a juxtaposition, right operand of a dot
    Juxtaposed,
    // right operand of a juxtaposition
    Atom,
}

fn compact(t: &Term, slot: Slot, out: &mut String) {
    match t {
        Term::Var(v) => out.push(v.symbol()),
        Term::Prod(l, r) => {
            let dotted = !matches!(**l, Term::Var(_)) && !matches!(**r, Term::Var(_));
            let wrap = if dotted {
                slot != Slot::Dotted
            } else {
                slot == Slot::Atom
            };
            if wrap {
                out.push('(');
            }
            if dotted {
                compact(l, Slot::Dotted, out);
                out.push('·');
                compact(r, Slot::Juxtaposed, out);
            } else {
                compact(l, Slot::Juxtaposed, out);
                compact(r, Slot::Atom, out);
            }
            if wrap {
                out.push(')');
            }
        }
    }
}

fn explicit(t: &Term, top: bool, out: &mut String) {
    match t {
        Term::Var(v) => out.push(v.symbol()),
        Term::Prod(l, r) => {
            if !top {
                out.push('(');
            }
            explicit(l, false, out);
            out.push('*');
            explicit(r, false, out);
            if !top {
                out.push(')');
            }
        }
    }
}

/// Prints a term so that [`parse_term`] reads it back unchanged.
///
/// The compact printer uses the mid-dot only between two compound operands
/// (`xy·zx`) and otherwise juxtaposes, adding parentheses where precedence
/// requires them (`x(yz)`).
pub fn format_term(t: &Term, grammar: Grammar) -> String {
    let mut out = String::new();
    match grammar {
        Grammar::Compact => compact(t, Slot::Dotted, &mut out),
        Grammar::Explicit => explicit(t, true, &mut out),
    }
    out
}

pub fn format_identity(id: &Identity, grammar: Grammar) -> String {
    format!(
        "{} = {}",
        format_term(&id.lhs, grammar),
        format_term(&id.rhs, grammar)
    )
}

/// Strongest Bol-Moufang label that applies to an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BolMoufangClass {
    Classical,
    Generalized,
    Neither,
}

impl fmt::Display for BolMoufangClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BolMoufangClass::Classical => "classical",
            BolMoufangClass::Generalized => "generalized",
            BolMoufangClass::Neither => "neither",
        })
    }
}

fn multiset(leaves: &[Var]) -> [usize; 3] {
    let mut counts = [0; 3];
    for v in leaves {
        counts[v.index()] += 1;
    }
    counts
}

/// Both sides have the same four leaves: three distinct letters, one twice.
pub fn is_generalized(id: &Identity) -> bool {
    let (l, r) = (id.lhs.leaves(), id.rhs.leaves());
    if l.len() != 4 || r.len() != 4 {
        return false;
    }
    let counts = multiset(&l);
    counts == multiset(&r) && counts.iter().all(|&c| c >= 1)
}

/// Generalized, and the two sides list their leaves in the same order.
pub fn is_classical(id: &Identity) -> bool {
    is_generalized(id) && id.lhs.leaves() == id.rhs.leaves()
}

pub fn classify(id: &Identity) -> BolMoufangClass {
    if is_classical(id) {
        BolMoufangClass::Classical
    } else if is_generalized(id) {
        BolMoufangClass::Generalized
    } else {
        BolMoufangClass::Neither
    }
}

/// Renames variables to x, y, z in order of first occurrence, reading the
/// LHS leaves before the RHS leaves. Labels are kept.
pub fn canonical_rename(id: &Identity) -> Identity {
    let mut map = Var::ALL;
    for (i, v) in id.variables().into_iter().enumerate() {
        map[v.index()] = Var::ALL[i];
    }
    Identity {
        lhs: id.lhs.rename(&map),
        rhs: id.rhs.rename(&map),
        name: id.name.clone(),
        abbrev: id.abbrev.clone(),
    }
}

/// The (12)-parastrophic identity: every product mirrored, then renamed
/// canonically. A groupoid satisfies `id` iff its transpose satisfies the
/// result. Labels are dropped.
pub fn parastrophe_identity(id: &Identity) -> Identity {
    let mirrored = Identity::new(id.lhs.mirror(), id.rhs.mirror());
    canonical_rename(&mirrored)
}

/// Equality up to renaming of variables and up to exchanging the two sides.
pub fn identities_equal(a: &Identity, b: &Identity) -> bool {
    let a = canonical_rename(a);
    let same = |c: Identity| a.lhs == c.lhs && a.rhs == c.rhs;
    same(canonical_rename(b)) || same(canonical_rename(&b.swapped()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: char) -> Term {
        Term::Var(Var::from_symbol(c).unwrap())
    }

    fn p(l: Term, r: Term) -> Term {
        Term::prod(l, r)
    }

    fn compact(s: &str) -> Identity {
        parse_identity(s, Grammar::Compact).unwrap()
    }

    #[test]
    fn parse_compact_examples() {
        assert_eq!(
            parse_term("xy·zx", Grammar::Compact).unwrap(),
            p(p(v('x'), v('y')), p(v('z'), v('x')))
        );
        assert_eq!(parse_term("x", Grammar::Compact).unwrap(), v('x'));
        assert_eq!(
            parse_term("(xy.z)x", Grammar::Compact).unwrap(),
            p(p(p(v('x'), v('y')), v('z')), v('x'))
        );
        assert_eq!(
            parse_term("x(y·zx)", Grammar::Compact).unwrap(),
            p(v('x'), p(v('y'), p(v('z'), v('x'))))
        );
        assert_eq!(
            parse_term("(x·yz)x", Grammar::Compact).unwrap(),
            p(p(v('x'), p(v('y'), v('z'))), v('x'))
        );
    }

    #[test]
    fn parse_explicit_example() {
        assert_eq!(
            parse_term("((x*y)*z)*x", Grammar::Explicit).unwrap(),
            p(p(p(v('x'), v('y')), v('z')), v('x'))
        );
        assert_eq!(parse_term(" ( x ) ", Grammar::Explicit).unwrap(), v('x'));
    }

    #[test]
    fn explicit_has_no_precedence() {
        assert!(matches!(
            parse_term("x*y*z", Grammar::Explicit),
            Err(ParseError::UnexpectedChar {
                offset: 3,
                found: '*'
            })
        ));
        assert!(parse_term("xy", Grammar::Explicit).is_err());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            parse_term("xw", Grammar::Compact),
            Err(ParseError::UnknownVariable {
                offset: 1,
                found: 'w'
            })
        );
        assert_eq!(
            parse_term("(xy", Grammar::Compact),
            Err(ParseError::UnexpectedEnd { offset: 3 })
        );
        assert_eq!(
            parse_term("x)", Grammar::Compact),
            Err(ParseError::UnexpectedChar {
                offset: 1,
                found: ')'
            })
        );
        assert_eq!(parse_term("  ", Grammar::Compact), Err(ParseError::Empty));
        // offsets are bytes: '·' is two bytes wide
        assert_eq!(
            parse_term("x··", Grammar::Compact),
            Err(ParseError::UnexpectedChar {
                offset: 3,
                found: '·'
            })
        );
    }

    #[test]
    fn parse_identity_examples() {
        let f1 = compact("xy·zx = (xy·z)x");
        assert_eq!(f1.lhs, p(p(v('x'), v('y')), p(v('z'), v('x'))));
        assert_eq!(f1.rhs, p(p(p(v('x'), v('y')), v('z')), v('x')));

        let trivial = compact("x = x");
        assert_eq!((trivial.lhs, trivial.rhs), (v('x'), v('x')));

        let cr = compact("(x(xy))z = (yx)(xz)");
        assert_eq!(cr.lhs, p(p(v('x'), p(v('x'), v('y'))), v('z')));
        assert_eq!(cr.rhs, p(p(v('y'), v('x')), p(v('x'), v('z'))));
    }

    #[test]
    fn identity_equals_errors() {
        assert_eq!(
            parse_identity("xy", Grammar::Compact),
            Err(ParseError::MissingEquals)
        );
        assert_eq!(
            parse_identity("x = y = z", Grammar::Compact),
            Err(ParseError::RepeatedEquals { offset: 6 })
        );
        assert_eq!(
            parse_identity("x = yq", Grammar::Compact),
            Err(ParseError::UnknownVariable {
                offset: 5,
                found: 'q'
            })
        );
        assert_eq!(
            parse_identity("x = ", Grammar::Compact),
            Err(ParseError::Empty)
        );
    }

    #[test]
    fn format_examples() {
        let f1 = compact("xy·zx = (xy·z)x");
        assert_eq!(format_term(&f1.lhs, Grammar::Compact), "xy·zx");
        assert_eq!(format_term(&v('x'), Grammar::Explicit), "x");
        let t = p(v('x'), p(v('y'), v('z')));
        assert_eq!(format_term(&t, Grammar::Compact), "x(yz)");
        assert_eq!(parse_term("x(yz)", Grammar::Compact).unwrap(), t);
        assert_eq!(format_term(&f1.rhs, Grammar::Explicit), "((x*y)*z)*x");
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&compact("xy·zx = (xy·z)x")),
            BolMoufangClass::Classical
        );
        assert_eq!(
            classify(&compact("(xy)(xz) = (xx)(zy)")),
            BolMoufangClass::Generalized
        );
        assert_eq!(classify(&compact("x·yz = x")), BolMoufangClass::Neither);
        assert_eq!(classify(&compact("x = x")), BolMoufangClass::Neither);
        // duplicated letter differs between sides
        assert_eq!(
            classify(&compact("(xx)(yz) = (yy)(xz)")),
            BolMoufangClass::Neither
        );
        // two distinct letters only
        assert_eq!(
            classify(&compact("(xx)(yy) = x(x(yy))")),
            BolMoufangClass::Neither
        );
    }

    #[test]
    fn canonical_rename_examples() {
        let f3 = compact("xy·zx = x(y·zx)");
        let renamed = canonical_rename(&compact("zy·xz = z(y·xz)"));
        assert_eq!((renamed.lhs, renamed.rhs), (f3.lhs.clone(), f3.rhs.clone()));

        let f1 = compact("xy·zx = (xy·z)x");
        assert_eq!(canonical_rename(&f1), f1);

        // mirror of F3 written out by hand, before renaming
        let mirrored = compact("xz·yx = (xz·y)x");
        assert_eq!(mirrored.lhs, f3.lhs.mirror());
        assert_eq!(mirrored.rhs, f3.rhs.mirror());
        let renamed = canonical_rename(&mirrored);
        assert_eq!((renamed.lhs, renamed.rhs), (f1.lhs, f1.rhs));

        // variables seen only on the right continue the sequence
        let r = canonical_rename(&compact("y = zy"));
        assert_eq!(r.format(Grammar::Compact), "x = yx");
    }

    #[test]
    fn parastrophe_examples() {
        let f1 = compact("xy·zx = (xy·z)x");
        let f3 = compact("xy·zx = x(y·zx)");
        let f6 = compact("(xy·z)x = x(y·zx)");
        let star = parastrophe_identity(&f1);
        assert_eq!(
            (star.lhs.clone(), star.rhs.clone()),
            (f3.lhs.clone(), f3.rhs.clone())
        );
        assert!(identities_equal(&star, &f3));
        assert!(identities_equal(&parastrophe_identity(&f6), &f6));
        let trivial = compact("x = x");
        assert_eq!(parastrophe_identity(&trivial), trivial);
        assert!(parastrophe_identity(&f1.clone().with_name("F1"))
            .name
            .is_none());
    }

    #[test]
    fn equality_examples() {
        let f1 = compact("xy·zx = (xy·z)x");
        let f2 = compact("xy·zx = (x·yz)x");
        assert!(!identities_equal(&f1, &f2));
        assert!(identities_equal(&f1, &f1));
        assert!(identities_equal(&f1, &f1.swapped()));
        assert!(identities_equal(&f1, &compact("zx·yz = (zx·y)z")));
    }

    #[test]
    fn squares_are_detected() {
        assert!(compact("xx·yz = (x·xy)z").contains_square());
        assert!(!compact("xy·zx = (xy·z)x").contains_square());
    }
}
