//! Stock lattices and the sum/product constructions, plus a small
//! expression language for building them from the command line.
//!
//! Indexing is deterministic: in `ordinal_sum(L, M)` and
//! `horizontal_sum(L, M)` the left operand keeps its indices, glued
//! elements take the left operand's index, and the remaining elements of
//! `M` are appended in index order. The same expression therefore always
//! produces the identical lattice, which keeps golden tests stable.

use crate::error::{LattError, Result};
use crate::lattice::FiniteLattice;

/// The `n`-element chain `0 < 1 < ... < n-1`.
pub fn chain(k: usize) -> Result<FiniteLattice> {
    if k < 1 {
        return Err(LattError::Parse("chain needs at least 1 element".into()));
    }
    let covers: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_covers(k, &covers)
}

/// The Boolean lattice `C_2^k` of subsets of a `k`-element set; element
/// indices are the subset bitmasks. `k = 0` gives the one-element lattice.
pub fn boolean(k: usize) -> Result<FiniteLattice> {
    if k > 12 {
        return Err(LattError::CapExceeded(1 << k, crate::lattice::MAX_ELEMENTS));
    }
    let n = 1usize << k;
    let mut covers = Vec::new();
    for mask in 0..n {
        for b in 0..k {
            if mask >> b & 1 == 0 {
                covers.push((mask, mask | (1 << b)));
            }
        }
    }
    FiniteLattice::from_covers(n, &covers)
}

/// The length-3 modular lattice with `k` atoms: bottom `0`, middles
/// `1..=k`, top `k+1`. For `k = 1` this is the 3-element chain.
pub fn m_kappa(k: usize) -> Result<FiniteLattice> {
    if k < 1 {
        return Err(LattError::Parse("mk needs at least 1 atom".into()));
    }
    let n = k + 2;
    let mut covers = Vec::new();
    for m in 1..=k {
        covers.push((0, m));
        covers.push((m, k + 1));
    }
    FiniteLattice::from_covers(n, &covers)
}

/// The pentagon: horizontal sum of a 3-chain and a 4-chain.
/// Elements: `0`, `1` (the side of the 3-chain), `2` (top), `3 < 4` (the
/// long side).
pub fn n5() -> FiniteLattice {
    horizontal_sum(&chain(3).unwrap(), &chain(4).unwrap()).unwrap()
}

/// Stacks `M` on top of `L`, identifying the top of `L` with the bottom
/// of `M`. The result has `|L| + |M| - 1` elements.
pub fn ordinal_sum(l: &FiniteLattice, m: &FiniteLattice) -> Result<FiniteLattice> {
    let n = l.n() + m.n() - 1;
    let mut map_m = vec![0usize; m.n()];
    let mut next = l.n();
    for j in 0..m.n() {
        if j == m.bottom() {
            map_m[j] = l.top();
        } else {
            map_m[j] = next;
            next += 1;
        }
    }
    let mut covers = l.covers();
    for (a, b) in m.covers() {
        covers.push((map_m[a], map_m[b]));
    }
    FiniteLattice::from_covers(n, &covers)
}

/// Glues the bottoms of `L` and `M` together and their tops together,
/// leaving the interiors mutually incomparable. Both summands must have
/// at least 2 elements; the result has `|L| + |M| - 2`.
pub fn horizontal_sum(l: &FiniteLattice, m: &FiniteLattice) -> Result<FiniteLattice> {
    if l.n() < 2 || m.n() < 2 {
        return Err(LattError::TrivialSummand);
    }
    let n = l.n() + m.n() - 2;
    let mut map_m = vec![0usize; m.n()];
    let mut next = l.n();
    for j in 0..m.n() {
        if j == m.bottom() {
            map_m[j] = l.bottom();
        } else if j == m.top() {
            map_m[j] = l.top();
        } else {
            map_m[j] = next;
            next += 1;
        }
    }
    let mut covers = l.covers();
    for (a, b) in m.covers() {
        covers.push((map_m[a], map_m[b]));
    }
    FiniteLattice::from_covers(n, &covers)
}

/// Direct product with componentwise order; `(i, j)` gets index
/// `i * |M| + j`.
pub fn product(l: &FiniteLattice, m: &FiniteLattice) -> Result<FiniteLattice> {
    let n = l.n().checked_mul(m.n()).ok_or(LattError::CapExceeded(
        usize::MAX,
        crate::lattice::MAX_ELEMENTS,
    ))?;
    let mut covers = Vec::new();
    for (a, b) in l.covers() {
        for j in 0..m.n() {
            covers.push((a * m.n() + j, b * m.n() + j));
        }
    }
    for (a, b) in m.covers() {
        for i in 0..l.n() {
            covers.push((i * m.n() + a, i * m.n() + b));
        }
    }
    FiniteLattice::from_covers(n, &covers)
}

/// Expression tree over the stock lattices and constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionExpr {
    Chain(usize),
    Boolean(usize),
    MKappa(usize),
    N5,
    OSum(Box<ConstructionExpr>, Box<ConstructionExpr>),
    HSum(Box<ConstructionExpr>, Box<ConstructionExpr>),
    Product(Box<ConstructionExpr>, Box<ConstructionExpr>),
    Dual(Box<ConstructionExpr>),
    Interval(Box<ConstructionExpr>, usize, usize),
}

use ConstructionExpr as E;

impl E {
    pub fn osum(a: E, b: E) -> E {
        E::OSum(Box::new(a), Box::new(b))
    }
    pub fn hsum(a: E, b: E) -> E {
        E::HSum(Box::new(a), Box::new(b))
    }
    pub fn product(a: E, b: E) -> E {
        E::Product(Box::new(a), Box::new(b))
    }
    pub fn dual(a: E) -> E {
        E::Dual(Box::new(a))
    }

    /// Builds the lattice denoted by the expression.
    pub fn eval(&self) -> Result<FiniteLattice> {
        match self {
            E::Chain(k) => chain(*k),
            E::Boolean(k) => boolean(*k),
            E::MKappa(k) => m_kappa(*k),
            E::N5 => Ok(n5()),
            E::OSum(a, b) => ordinal_sum(&a.eval()?, &b.eval()?),
            E::HSum(a, b) => horizontal_sum(&a.eval()?, &b.eval()?),
            E::Product(a, b) => product(&a.eval()?, &b.eval()?),
            E::Dual(a) => Ok(a.eval()?.dual()),
            E::Interval(a, x, y) => {
                let lat = a.eval()?;
                if *x >= lat.n() || *y >= lat.n() {
                    return Err(LattError::Parse(format!(
                        "interval endpoints {x},{y} out of range"
                    )));
                }
                Ok(lat.interval(*x, *y)?.0)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            E::OSum(..) => 1,
            E::HSum(..) => 2,
            E::Product(..) => 3,
            _ => 4,
        }
    }
}

impl std::fmt::Display for E {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn child(f: &mut std::fmt::Formatter<'_>, e: &E, min: u8) -> std::fmt::Result {
            if e.precedence() < min {
                write!(f, "(")?;
                write!(f, "{e}")?;
                write!(f, ")")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            E::Chain(k) => write!(f, "chain:{k}"),
            E::Boolean(k) => write!(f, "bool:{k}"),
            E::MKappa(k) => write!(f, "mk:{k}"),
            E::N5 => write!(f, "n5"),
            E::OSum(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            E::HSum(a, b) => {
                child(f, a, 2)?;
                write!(f, " | ")?;
                child(f, b, 3)
            }
            E::Product(a, b) => {
                child(f, a, 3)?;
                write!(f, " * ")?;
                child(f, b, 4)
            }
            E::Dual(a) => write!(f, "dual({a})"),
            E::Interval(a, x, y) => write!(f, "interval({a}, {x}, {y})"),
        }
    }
}

/// Parses the expression mini-grammar.
///
/// Leaves: `chain:K`, `bool:K`, `mk:K`, `n5`. Operators by increasing
/// binding strength: `+` (ordinal sum), `|` (horizontal sum), `*`
/// (product), all left-associative; parentheses group. `dual(e)` and
/// `interval(e, a, b)` are accepted as function forms.
pub fn parse(input: &str) -> Result<ConstructionExpr> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.parse_osum()?;
    if p.pos != p.tokens.len() {
        return Err(LattError::Parse(format!(
            "unexpected trailing input at token {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(usize),
    Plus,
    Bar,
    Star,
    LParen,
    RParen,
    Colon,
    Comma,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '|' => {
                chars.next();
                out.push(Tok::Bar);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            ':' => {
                chars.next();
                out.push(Tok::Colon);
            }
            ',' => {
                chars.next();
                out.push(Tok::Comma);
            }
            '0'..='9' => {
                let mut v = 0usize;
                while let Some(&d) = chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dig as usize))
                            .ok_or_else(|| LattError::Parse("number overflow".into()))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(v));
            }
            'a'..='z' | 'A'..='Z' => {
                let mut w = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        w.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Word(w));
            }
            other => {
                return Err(LattError::Parse(format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(LattError::Parse(format!(
                "expected {t:?}, found {:?}",
                self.peek()
            )))
        }
    }

    fn number(&mut self) -> Result<usize> {
        match self.peek() {
            Some(&Tok::Num(v)) => {
                self.pos += 1;
                Ok(v)
            }
            other => Err(LattError::Parse(format!("expected number, found {other:?}"))),
        }
    }

    fn parse_osum(&mut self) -> Result<E> {
        let mut e = self.parse_hsum()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            e = E::osum(e, self.parse_hsum()?);
        }
        Ok(e)
    }

    fn parse_hsum(&mut self) -> Result<E> {
        let mut e = self.parse_product()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            e = E::hsum(e, self.parse_product()?);
        }
        Ok(e)
    }

    fn parse_product(&mut self) -> Result<E> {
        let mut e = self.parse_atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            e = E::product(e, self.parse_atom()?);
        }
        Ok(e)
    }

    fn parse_atom(&mut self) -> Result<E> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.parse_osum()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Word(w)) => {
                self.pos += 1;
                match w.as_str() {
                    "n5" => Ok(E::N5),
                    "chain" | "bool" | "mk" => {
                        self.expect(Tok::Colon)?;
                        let k = self.number()?;
                        Ok(match w.as_str() {
                            "chain" => E::Chain(k),
                            "bool" => E::Boolean(k),
                            _ => E::MKappa(k),
                        })
                    }
                    "dual" => {
                        self.expect(Tok::LParen)?;
                        let e = self.parse_osum()?;
                        self.expect(Tok::RParen)?;
                        Ok(E::dual(e))
                    }
                    "interval" => {
                        self.expect(Tok::LParen)?;
                        let e = self.parse_osum()?;
                        self.expect(Tok::Comma)?;
                        let a = self.number()?;
                        self.expect(Tok::Comma)?;
                        let b = self.number()?;
                        self.expect(Tok::RParen)?;
                        Ok(E::Interval(Box::new(e), a, b))
                    }
                    other => Err(LattError::Parse(format!("unknown constructor {other:?}"))),
                }
            }
            other => Err(LattError::Parse(format!(
                "expected expression, found {other:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    fn iso(a: &FiniteLattice, b: &FiniteLattice) -> bool {
        are_isomorphic(a, b).is_some()
    }

    #[test]
    fn stock_lattices() {
        assert_eq!(chain(2).unwrap().covers(), vec![(0, 1)]);
        let m3 = m_kappa(3).unwrap();
        let triple = horizontal_sum(
            &horizontal_sum(&chain(3).unwrap(), &chain(3).unwrap()).unwrap(),
            &chain(3).unwrap(),
        )
        .unwrap();
        assert!(iso(&m3, &triple));
        assert!(iso(
            &boolean(2).unwrap(),
            &horizontal_sum(&chain(3).unwrap(), &chain(3).unwrap()).unwrap()
        ));
        assert!(iso(&m_kappa(1).unwrap(), &chain(3).unwrap()));
        assert!(iso(&m_kappa(2).unwrap(), &boolean(2).unwrap()));
    }

    #[test]
    fn ordinal_sums() {
        let s = ordinal_sum(&chain(2).unwrap(), &chain(2).unwrap()).unwrap();
        assert!(iso(&s, &chain(3).unwrap()));
        let s = ordinal_sum(&chain(3).unwrap(), &chain(3).unwrap()).unwrap();
        assert!(iso(&s, &chain(5).unwrap()));
        let s = ordinal_sum(&boolean(2).unwrap(), &chain(2).unwrap()).unwrap();
        assert_eq!(s.n(), 5);
        assert!(s.join_irreducibles().contains(s.top()));
    }

    #[test]
    fn horizontal_sums() {
        assert!(iso(
            &horizontal_sum(&chain(3).unwrap(), &chain(4).unwrap()).unwrap(),
            &n5()
        ));
        for lat in [boolean(2).unwrap(), n5(), chain(4).unwrap()] {
            let s = horizontal_sum(&lat, &chain(2).unwrap()).unwrap();
            assert!(iso(&s, &lat), "C_2 is neutral");
            let s = horizontal_sum(&chain(2).unwrap(), &lat).unwrap();
            assert!(iso(&s, &lat));
        }
        let (l, m) = (boolean(2).unwrap(), chain(4).unwrap());
        let s = horizontal_sum(&l, &m).unwrap();
        assert_eq!(s.atoms().len(), l.atoms().len() + m.atoms().len());
        assert!(matches!(
            horizontal_sum(&chain(1).unwrap(), &chain(3).unwrap()),
            Err(LattError::TrivialSummand)
        ));
    }

    #[test]
    fn products() {
        let p = product(&chain(2).unwrap(), &chain(3).unwrap()).unwrap();
        assert_eq!(p.n(), 6);
        // elements (i,j) -> 3i + j; covers follow the componentwise order
        assert_eq!(
            p.covers(),
            vec![(0, 1), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5)]
        );
        assert_eq!(p.atoms().len(), 2);
        let q = product(&chain(1).unwrap(), &n5()).unwrap();
        assert!(iso(&q, &n5()));
        let r = product(&boolean(2).unwrap(), &chain(4).unwrap()).unwrap();
        assert_eq!(
            r.atoms().len(),
            boolean(2).unwrap().atoms().len() + chain(4).unwrap().atoms().len()
        );
    }

    #[test]
    fn eval_and_parse() {
        let e = parse("chain:2 + (chain:3|chain:3)").unwrap();
        let lat = e.eval().unwrap();
        assert_eq!(lat.n(), 5);
        assert!(iso(
            &lat,
            &ordinal_sum(&chain(2).unwrap(), &boolean(2).unwrap()).unwrap()
        ));
        // the hexagon
        let hexagon = parse("chain:4|chain:4").unwrap().eval().unwrap();
        assert_eq!(hexagon.n(), 6);
        assert_eq!(hexagon.atoms().len(), 2);
        assert_eq!(hexagon.coatoms().len(), 2);
        // chains with a pentagon on top, as used in the classification
        for k in 1..4 {
            let e = E::osum(E::Chain(k), E::hsum(E::Chain(3), E::Chain(4)));
            assert_eq!(e.eval().unwrap().n(), k + 4);
        }
        assert!(parse("chain:0").unwrap().eval().is_err());
        assert!(parse("chain:2 +").is_err());
        assert!(parse("mystery:3").is_err());
        // precedence: * binds tighter than |, | tighter than +
        let e = parse("chain:2 + chain:3 | chain:3 * chain:2").unwrap();
        assert_eq!(
            e,
            E::osum(
                E::Chain(2),
                E::hsum(E::Chain(3), E::product(E::Chain(3), E::Chain(2)))
            )
        );
        let again = parse(&e.to_string()).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn dual_and_interval_expressions() {
        let e = parse("dual(chain:2 + (chain:3|chain:3))").unwrap();
        assert!(iso(
            &e.eval().unwrap(),
            &ordinal_sum(&boolean(2).unwrap(), &chain(2).unwrap()).unwrap()
        ));
        let e = parse("interval(bool:3, 1, 7)").unwrap();
        assert!(iso(&e.eval().unwrap(), &boolean(2).unwrap()));
    }

    #[test]
    fn sum_identities_up_to_isomorphism() {
        let parts = [chain(2).unwrap(), chain(3).unwrap(), boolean(2).unwrap(), n5()];
        for a in &parts {
            for b in &parts {
                // dual laws
                let d1 = ordinal_sum(a, b).unwrap().dual();
                let d2 = ordinal_sum(&b.dual(), &a.dual()).unwrap();
                assert!(iso(&d1, &d2));
                let h1 = horizontal_sum(a, b).unwrap().dual();
                let h2 = horizontal_sum(&a.dual(), &b.dual()).unwrap();
                assert!(iso(&h1, &h2));
                // commutativity of the horizontal sum
                assert!(iso(
                    &horizontal_sum(a, b).unwrap(),
                    &horizontal_sum(b, a).unwrap()
                ));
                for c in &parts {
                    let l = ordinal_sum(&ordinal_sum(a, b).unwrap(), c).unwrap();
                    let r = ordinal_sum(a, &ordinal_sum(b, c).unwrap()).unwrap();
                    assert!(iso(&l, &r));
                    let l = horizontal_sum(&horizontal_sum(a, b).unwrap(), c).unwrap();
                    let r = horizontal_sum(a, &horizontal_sum(b, c).unwrap()).unwrap();
                    assert!(iso(&l, &r));
                }
            }
        }
    }

    #[test]
    fn eval_is_deterministic() {
        let e = parse("(chain:3|chain:4) + bool:2 * chain:2").unwrap();
        let a = e.eval().unwrap();
        let b = e.eval().unwrap();
        assert_eq!(a.covers(), b.covers());
    }
}
