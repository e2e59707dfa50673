//! Grothendieck groups of `GL_n(F)` and `GL_m(D_d)` on the basis of
//! representations induced from discrete series of standard Levi subgroups,
//! and the transfer `LJ` between them.
//!
//! Discrete series are opaque tags. The correspondence on tags is supplied by
//! the caller.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrothendieckError {
    #[error("d = {d} does not divide n = {n}")]
    Indivisible { n: u32, d: u32 },
    #[error("composition {composition:?} does not sum to {expected}")]
    BadComposition { composition: Vec<u32>, expected: u32 },
    #[error("composition has {blocks} blocks but {labels} labels")]
    LabelCount { blocks: usize, labels: usize },
    #[error("cannot combine elements of {0} and {1}")]
    SideMismatch(Side, Side),
    #[error("lj is defined on the split side only")]
    NotSplit,
    #[error("no element given at place {0}")]
    MissingPlace(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Side {
    /// `GL_n(F)`.
    Split { n: u32 },
    /// `GL_m(D_d)`.
    Inner { m: u32, d: u32 },
}

impl Side {
    /// Sum of the composition entries.
    pub fn size(&self) -> u32 {
        match *self {
            Side::Split { n } => n,
            Side::Inner { m, .. } => m,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Side::Split { n } => write!(f, "GL_{n}(F)"),
            Side::Inner { m, d } => write!(f, "GL_{m}(D_{d})"),
        }
    }
}

/// `i_{G,L} sigma` with `L = prod GL_{n_i}` and `sigma = (x) sigma_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub composition: Vec<u32>,
    pub labels: Vec<String>,
    pub side: Side,
}

impl BasisElement {
    pub fn new(composition: Vec<u32>, labels: Vec<String>, side: Side) -> Result<Self, GrothendieckError> {
        if composition.len() != labels.len() {
            return Err(GrothendieckError::LabelCount { blocks: composition.len(), labels: labels.len() });
        }
        if composition.contains(&0) || composition.iter().sum::<u32>() != side.size() {
            return Err(GrothendieckError::BadComposition { composition, expected: side.size() });
        }
        Ok(BasisElement { composition, labels, side })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.composition.iter().map(|n| n.to_string()).collect();
        write!(f, "({}):{}", c.join(","), self.labels.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: i64,
    pub basis: BasisElement,
}

/// Finite `Z`-combination of basis elements on one side. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "VirtualRepr", try_from = "VirtualRepr")]
pub struct VirtualElement {
    side: Side,
    terms: BTreeMap<BasisElement, i64>,
}

#[derive(Serialize, Deserialize)]
struct VirtualRepr {
    side: Side,
    terms: Vec<Term>,
}

impl From<VirtualElement> for VirtualRepr {
    fn from(v: VirtualElement) -> Self {
        VirtualRepr {
            side: v.side,
            terms: v.terms.into_iter().map(|(basis, coefficient)| Term { coefficient, basis }).collect(),
        }
    }
}

impl TryFrom<VirtualRepr> for VirtualElement {
    type Error = GrothendieckError;
    fn try_from(r: VirtualRepr) -> Result<Self, Self::Error> {
        let mut v = VirtualElement::zero(r.side);
        for t in r.terms {
            v.add_term(t.coefficient, BasisElement::new(t.basis.composition, t.basis.labels, t.basis.side)?)?;
        }
        Ok(v)
    }
}

impl VirtualElement {
    pub fn zero(side: Side) -> Self {
        VirtualElement { side, terms: BTreeMap::new() }
    }

    pub fn basis(b: BasisElement) -> Self {
        let mut v = Self::zero(b.side);
        v.terms.insert(b, 1);
        v
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, i64)> {
        self.terms.iter().map(|(b, &c)| (b, c))
    }

    pub fn coefficient(&self, b: &BasisElement) -> i64 {
        self.terms.get(b).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, c: i64, b: BasisElement) -> Result<(), GrothendieckError> {
        if b.side != self.side {
            return Err(GrothendieckError::SideMismatch(self.side, b.side));
        }
        let e = self.terms.entry(b).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
        Ok(())
    }

    pub fn add(&self, other: &VirtualElement) -> Result<VirtualElement, GrothendieckError> {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(c, b.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> VirtualElement {
        let mut out = Self::zero(self.side);
        if k != 0 {
            out.terms = self.terms.iter().map(|(b, &c)| (b.clone(), c * k)).collect();
        }
        out
    }

    /// External product for `G_1 x G_2` inside `GL_{n_1 + n_2}`: blocks and
    /// labels are concatenated.
    pub fn product(&self, other: &VirtualElement) -> Result<VirtualElement, GrothendieckError> {
        let side = match (self.side, other.side) {
            (Side::Split { n: a }, Side::Split { n: b }) => Side::Split { n: a + b },
            (Side::Inner { m: a, d }, Side::Inner { m: b, d: e }) if d == e => Side::Inner { m: a + b, d },
            (a, b) => return Err(GrothendieckError::SideMismatch(a, b)),
        };
        let mut out = Self::zero(side);
        for (x, c) in self.terms() {
            for (y, e) in other.terms() {
                let comp = x.composition.iter().chain(&y.composition).copied().collect();
                let labels = x.labels.iter().chain(&y.labels).cloned().collect();
                out.add_term(c * e, BasisElement { composition: comp, labels, side })?;
            }
        }
        Ok(out)
    }

    /// Parses `(2,4):a,b + 3*(6):c - (1,5):x,y`; `0` is the zero element.
    pub fn parse(text: &str, side: Side) -> Result<Self, GrothendieckError> {
        Parser { s: text.as_bytes(), text, pos: 0 }.element(side)
    }
}

impl fmt::Display for VirtualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms().enumerate() {
            let (sign, a) = (c < 0, c.unsigned_abs());
            match (i, sign) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, GrothendieckError> {
        Err(GrothendieckError::Parse { offset: self.pos, message: message.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64, GrothendieckError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        match self.text[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("integer out of range")
            }
        }
    }

    fn tag(&mut self) -> Result<String, GrothendieckError> {
        let start = self.pos;
        let stop = |c: char| c.is_whitespace() || ",+*():".contains(c);
        let rest = &self.text[self.pos..];
        if rest.starts_with('-') {
            return self.err("a tag cannot start with '-'");
        }
        let len = rest.find(stop).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a tag");
        }
        self.pos += len;
        Ok(self.text[start..self.pos].to_string())
    }

    fn term(&mut self, side: Side) -> Result<(i64, BasisElement), GrothendieckError> {
        let mut coef = 1i64;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coef = self.int()? as i64;
            self.ws();
            if !self.eat(b'*') {
                return self.err("expected '*' after coefficient");
            }
            self.ws();
        }
        let at = self.pos;
        if !self.eat(b'(') {
            return self.err("expected '('");
        }
        let mut comp = Vec::new();
        loop {
            self.ws();
            let v = self.int()?;
            comp.push(u32::try_from(v).or_else(|_| self.err("block too large"))?);
            self.ws();
            if self.eat(b')') {
                break;
            }
            if !self.eat(b',') {
                return self.err("expected ',' or ')'");
            }
        }
        self.ws();
        if !self.eat(b':') {
            return self.err("expected ':' after composition");
        }
        let mut labels = Vec::new();
        loop {
            self.ws();
            labels.push(self.tag()?);
            let save = self.pos;
            self.ws();
            if !self.eat(b',') {
                self.pos = save;
                break;
            }
        }
        match BasisElement::new(comp, labels, side) {
            Ok(b) => Ok((coef, b)),
            Err(e) => {
                self.pos = at;
                self.err(e.to_string())
            }
        }
    }

    fn element(mut self, side: Side) -> Result<VirtualElement, GrothendieckError> {
        let mut v = VirtualElement::zero(side);
        self.ws();
        if self.eat(b'0') {
            self.ws();
            if self.pos != self.s.len() {
                return self.err("unexpected input after 0");
            }
            return Ok(v);
        }
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            self.ws();
            let (c, b) = self.term(side)?;
            v.add_term(sign * c, b)?;
            self.ws();
            match self.peek() {
                None => return Ok(v),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }
}

/// Standard Levi of `GL_m(D_d)` matching `prod GL_{n_i}`, when every `n_i` is
/// divisible by `d`.
pub fn levi_transfers(composition: &[u32], d: u32) -> Result<Option<Vec<u32>>, GrothendieckError> {
    let n: u32 = composition.iter().sum();
    if d == 0 || n % d != 0 {
        return Err(GrothendieckError::Indivisible { n, d });
    }
    Ok(composition.iter().all(|k| k % d == 0).then(|| composition.iter().map(|k| k / d).collect()))
}

/// Default correspondence on tags: `St` goes to `St'`.
pub fn prime_tag(tag: &str) -> String {
    format!("{tag}'")
}

pub fn lj_map(
    x: &VirtualElement,
    d: u32,
    transfer: &dyn Fn(&str) -> String,
) -> Result<VirtualElement, GrothendieckError> {
    let Side::Split { n } = x.side else {
        return Err(GrothendieckError::NotSplit);
    };
    if d == 0 || n % d != 0 {
        return Err(GrothendieckError::Indivisible { n, d });
    }
    let side = Side::Inner { m: n / d, d };
    let mut out = VirtualElement::zero(side);
    for (b, c) in x.terms() {
        if let Some(comp) = levi_transfers(&b.composition, d)? {
            let labels = b.labels.iter().map(|t| transfer(t)).collect();
            out.add_term(c, BasisElement { composition: comp, labels, side })?;
        }
    }
    Ok(out)
}

/// `(-1)^(n-m)`, the sign relating characters of `sigma` and `C(sigma)`.
pub fn character_sign(n: u32, m: u32) -> Result<i32, GrothendieckError> {
    if m == 0 || n % m != 0 {
        return Err(GrothendieckError::Indivisible { n, d: m });
    }
    Ok(if (n - m) % 2 == 0 { 1 } else { -1 })
}

pub fn is_d_compatible(x: &VirtualElement, d: u32) -> Result<bool, GrothendieckError> {
    Ok(!lj_map(x, d, &prime_tag)?.is_zero())
}

/// Compatibility at every place with `d_v > 1`.
pub fn global_d_compatibility(
    degrees: &BTreeMap<String, u32>,
    elements: &BTreeMap<String, VirtualElement>,
) -> Result<bool, GrothendieckError> {
    for (v, &d) in degrees.iter().filter(|(_, &d)| d > 1) {
        let x = elements.get(v).ok_or_else(|| GrothendieckError::MissingPlace(v.clone()))?;
        if !is_d_compatible(x, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Steinberg representation of `GL_n(F)`, tag `St`.
pub fn steinberg(n: u32) -> VirtualElement {
    VirtualElement::basis(BasisElement { composition: vec![n], labels: vec!["St".into()], side: Side::Split { n } })
}

/// Trivial representation of `GL_2(F)`: `1 = i(delta^{-1/2}) - St`.
pub fn trivial_gl2() -> VirtualElement {
    let side = Side::Split { n: 2 };
    let mut v = VirtualElement::zero(side);
    let torus = BasisElement { composition: vec![1, 1], labels: vec!["nu^-1/2".into(), "nu^1/2".into()], side };
    v.add_term(1, torus).expect("same side");
    v.add(&steinberg(2).scale(-1)).expect("same side")
}
