//! Local-to-global bookkeeping: auxiliary primes from quadratic reciprocity,
//! places of a 2-power tower above a fixed prime, cocycles with values in
//! `A(G_ad)`, and Hasse vectors of central simple algebras.
//!
//! Places are symbolic. Only cardinalities, splitting verdicts and sums in
//! `Q/Z` are computed.

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlobalizeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("count must be positive")]
    ZeroCount,
    #[error("class {class} is zero in Z/{order}")]
    TrivialClass { class: u64, order: u64 },
    #[error("class order must be positive")]
    ZeroOrder,
    #[error("the set S is empty")]
    EmptyS,
    #[error("place {0} of S is not in T")]
    NotInT(String),
    #[error("{places} places cannot hold a nonempty S of size a multiple of {order}")]
    TooFewPlaces { places: usize, order: u64 },
    #[error("invariant {value} at {place} has denominator not dividing n = {n}")]
    Denominator { place: String, value: String, n: u64 },
    #[error("invariant {value} at archimedean place {place} is not allowed")]
    Archimedean { place: String, value: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Element of `Q/Z`, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QZ(Rational64);

impl QZ {
    pub fn new(num: i64, den: i64) -> Self {
        QZ::from_rational(Rational64::new(num, den))
    }

    pub fn from_rational(r: Rational64) -> Self {
        let f = r - r.floor();
        QZ(f)
    }

    pub fn zero() -> Self {
        QZ(Rational64::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn times(&self, k: i64) -> Self {
        QZ::from_rational(self.0 * k)
    }
}

impl std::ops::Add for QZ {
    type Output = QZ;
    fn add(self, o: QZ) -> QZ {
        QZ::from_rational(self.0 + o.0)
    }
}

impl std::iter::Sum for QZ {
    fn sum<I: Iterator<Item = QZ>>(it: I) -> QZ {
        it.fold(QZ::zero(), |a, b| a + b)
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for QZ {
    type Err = GlobalizeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GlobalizeError::Parse(format!("bad fraction {s:?}"));
        let s = s.trim();
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let a: i64 = a.parse().map_err(|_| bad())?;
        let b: i64 = b.parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        Ok(QZ::new(a, b))
    }
}

impl Serialize for QZ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QZ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PlaceKind {
    /// `prime` is `None` for places given only by name.
    Finite { prime: Option<u64>, residue_degree: u32 },
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlaceLabel {
    pub id: String,
    pub kind: PlaceKind,
}

impl PlaceLabel {
    pub fn finite(id: impl Into<String>, prime: Option<u64>) -> Self {
        PlaceLabel {
            id: id.into(),
            kind: PlaceKind::Finite { prime, residue_degree: 1 },
        }
    }

    pub fn real(id: impl Into<String>) -> Self {
        PlaceLabel { id: id.into(), kind: PlaceKind::Real }
    }

    pub fn complex(id: impl Into<String>) -> Self {
        PlaceLabel { id: id.into(), kind: PlaceKind::Complex }
    }

    pub fn is_archimedean(&self) -> bool {
        !matches!(self.kind, PlaceKind::Finite { .. })
    }
}

impl fmt::Display for PlaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PlaceKind::Finite { prime: Some(p), .. } => write!(f, "{}@{p}", self.id),
            PlaceKind::Finite { prime: None, .. } => write!(f, "{}", self.id),
            PlaceKind::Real => write!(f, "real:{}", self.id),
            PlaceKind::Complex => write!(f, "complex:{}", self.id),
        }
    }
}

impl FromStr for PlaceLabel {
    type Err = GlobalizeError;
    /// `v1`, `v1@5`, `real:r1`, `complex:c1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || GlobalizeError::Parse(format!("bad place {s:?}"));
        if let Some(id) = s.strip_prefix("real:") {
            return if id.is_empty() { Err(bad()) } else { Ok(PlaceLabel::real(id)) };
        }
        if let Some(id) = s.strip_prefix("complex:") {
            return if id.is_empty() { Err(bad()) } else { Ok(PlaceLabel::complex(id)) };
        }
        let (id, prime) = match s.split_once('@') {
            Some((id, p)) => {
                let p: u64 = p.parse().map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(GlobalizeError::NotPrime(p));
                }
                (id, Some(p))
            }
            None => (s, None),
        };
        if id.is_empty() || id.contains([',', '=', ' ']) {
            return Err(bad());
        }
        Ok(PlaceLabel::finite(id, prime))
    }
}

/// Finite-support map from places to `Q/Z`. Serialized as a map keyed by
/// the printed place label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HasseVector {
    pub entries: BTreeMap<PlaceLabel, QZ>,
}

impl Serialize for HasseVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, QZ> = self.entries.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HasseVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, QZ>::deserialize(d)?;
        let mut h = HasseVector::new();
        for (k, v) in m {
            h.insert(k.parse().map_err(serde::de::Error::custom)?, v);
        }
        Ok(h)
    }
}

impl HasseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, place: PlaceLabel, value: QZ) {
        self.entries.insert(place, value);
    }

    pub fn sum(&self) -> QZ {
        self.entries.values().copied().sum()
    }

    /// Places with nonzero entry.
    pub fn support(&self) -> Vec<PlaceLabel> {
        self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(p, _)| p.clone()).collect()
    }
}

impl FromStr for HasseVector {
    type Err = GlobalizeError;
    /// `v1=1/2,v2=1/3,real:r=1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut h = HasseVector::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (p, v) = item
                .split_once('=')
                .ok_or_else(|| GlobalizeError::Parse(format!("expected place=fraction, got {item:?}")))?;
            let place: PlaceLabel = p.parse()?;
            if h.entries.keys().any(|k| k.id == place.id) {
                return Err(GlobalizeError::Parse(format!("place {} given twice", place.id)));
            }
            h.insert(place, v.parse()?);
        }
        Ok(h)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// `q* = (-1)^((q-1)/2) q` for odd `q`.
pub fn q_star(q: u64) -> i64 {
    if q % 4 == 1 {
        q as i64
    } else {
        -(q as i64)
    }
}

/// Whether `p` splits in `Q(sqrt(q*))`.
pub fn splits(p: u64, q: u64) -> bool {
    let qs = q_star(q);
    if p == 2 {
        return qs.rem_euclid(8) == 1;
    }
    let a = qs.rem_euclid(p as i64) as u64;
    a != 0 && pow_mod(a, (p - 1) / 2, p) == 1
}

/// The first `count` odd primes `q != p` such that `p` splits in `Q(sqrt(q*))`.
pub fn split_primes(p: u64, count: usize) -> Result<Vec<u64>, GlobalizeError> {
    if !is_prime(p) {
        return Err(GlobalizeError::NotPrime(p));
    }
    if count == 0 {
        return Err(GlobalizeError::ZeroCount);
    }
    Ok((3..)
        .step_by(2)
        .filter(|&q| q != p && is_prime(q) && splits(p, q))
        .take(count)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacePlan {
    pub base_prime: u64,
    pub r: u32,
    pub tower_primes: Vec<u64>,
    /// `[F : Q]`-type degree of the tower, `2^r`.
    pub degree: u64,
    /// `l` places above the base prime with completion isomorphic to the base field.
    pub places: Vec<PlaceLabel>,
    /// Recorded, not verified: every place above the base prime has the same completion.
    pub assumption: String,
}

/// Smallest `r` with `2^r >= l`.
pub fn tower_exponent(l: usize) -> u32 {
    l.max(1).next_power_of_two().trailing_zeros()
}

pub fn plan_places(p: u64, l: usize) -> Result<PlacePlan, GlobalizeError> {
    if !is_prime(p) {
        return Err(GlobalizeError::NotPrime(p));
    }
    if l == 0 {
        return Err(GlobalizeError::ZeroCount);
    }
    let r = tower_exponent(l);
    let tower_primes = if r == 0 { Vec::new() } else { split_primes(p, r as usize)? };
    let places = (0..l).map(|i| PlaceLabel::finite(format!("v{i}"), Some(p))).collect();
    Ok(PlacePlan {
        base_prime: p,
        r,
        tower_primes,
        degree: 1 << r,
        places,
        assumption: format!("p = {p} splits completely in the tower, so each of the {} places above it has completion Q_{p}", 1u64 << r),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle {
    pub class_order: u64,
    pub class: u64,
    /// `class / class_order` on `S`, `0` elsewhere.
    pub assignment: HasseVector,
    pub sum: QZ,
    pub valid: bool,
}

pub fn build_cocycle(
    places: &[PlaceLabel],
    s: &[PlaceLabel],
    class_order: u64,
    class: u64,
) -> Result<Cocycle, GlobalizeError> {
    if class_order == 0 {
        return Err(GlobalizeError::ZeroOrder);
    }
    if class % class_order == 0 {
        return Err(GlobalizeError::TrivialClass { class, order: class_order });
    }
    if s.is_empty() {
        return Err(GlobalizeError::EmptyS);
    }
    if let Some(v) = s.iter().find(|v| !places.contains(v)) {
        return Err(GlobalizeError::NotInT(v.to_string()));
    }
    let phi = QZ::new(class as i64, class_order as i64);
    let mut assignment = HasseVector::new();
    for v in places {
        assignment.insert(v.clone(), if s.contains(v) { phi } else { QZ::zero() });
    }
    let sum = assignment.sum();
    Ok(Cocycle {
        class_order,
        class,
        assignment,
        sum,
        valid: sum.is_zero(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalizationPlan {
    #[serde(flatten)]
    pub places: PlacePlan,
    pub s: Vec<PlaceLabel>,
    pub s_multiple_of: u64,
    pub cocycle: Cocycle,
}

/// Places plus a cocycle on the largest `S` of size a multiple of `class_order`.
pub fn globalization_plan(p: u64, l: usize, class_order: u64, class: u64) -> Result<GlobalizationPlan, GlobalizeError> {
    let places = plan_places(p, l)?;
    if class_order == 0 {
        return Err(GlobalizeError::ZeroOrder);
    }
    let size = l / class_order as usize * class_order as usize;
    if size == 0 {
        return Err(GlobalizeError::TooFewPlaces { places: l, order: class_order });
    }
    let s = places.places[..size].to_vec();
    let cocycle = build_cocycle(&places.places, &s, class_order, class)?;
    Ok(GlobalizationPlan {
        places,
        s,
        s_multiple_of: class_order,
        cocycle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalAlgebra {
    pub place: PlaceLabel,
    pub invariant: QZ,
    pub d: u64,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionAlgebraReport {
    pub n: u64,
    pub sum: QZ,
    pub valid: bool,
    pub local: Vec<LocalAlgebra>,
    /// Places where the algebra is not split.
    pub ramified: Vec<PlaceLabel>,
}

/// Checks that a Hasse vector comes from a central simple algebra of degree `n`.
pub fn global_division_algebra(n: u64, inv: &HasseVector) -> Result<DivisionAlgebraReport, GlobalizeError> {
    if n == 0 {
        return Err(GlobalizeError::ZeroCount);
    }
    let mut local = Vec::new();
    for (place, &x) in &inv.entries {
        let d = x.denom() as u64;
        match place.kind {
            PlaceKind::Real if d > 2 => {
                return Err(GlobalizeError::Archimedean { place: place.to_string(), value: x.to_string() })
            }
            PlaceKind::Complex if d > 1 => {
                return Err(GlobalizeError::Archimedean { place: place.to_string(), value: x.to_string() })
            }
            _ => {}
        }
        if n % d != 0 {
            return Err(GlobalizeError::Denominator { place: place.to_string(), value: x.to_string(), n });
        }
        local.push(LocalAlgebra { place: place.clone(), invariant: x, d, m: n / d });
    }
    let sum = inv.sum();
    Ok(DivisionAlgebraReport {
        n,
        sum,
        valid: sum.is_zero(),
        local,
        ramified: inv.support(),
    })
}
