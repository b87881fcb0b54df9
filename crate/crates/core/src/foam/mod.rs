//! Closed pre-foams and their evaluation in the sl3 TQFT built on
//! `A = Z[X]/(X³)`.
//!
//! A pre-foam is stored abstractly: facets (genus, dots, boundary slots)
//! and singular circles, each a cyclically ordered triple of facet slots.
//!
//! Text format, one item per line (`#` starts a comment):
//!
//! ```text
//! facet 0 genus=0 dots=1 slots=0
//! facet 1 genus=0 dots=0 slots=0 color=b
//! circle 0.0,1.0,2.0
//! ```

mod theta;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use theta::THETA;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoamError {
    #[error("slot {facet}.{slot} lies on {count} singular circles (expected exactly 1)")]
    NotClosed {
        facet: usize,
        slot: usize,
        count: usize,
    },
    #[error("singular circle {circle} refers to missing slot {facet}.{slot}")]
    MissingSlot {
        circle: usize,
        facet: usize,
        slot: usize,
    },
    #[error("duplicate facet id {0}")]
    DuplicateFacet(usize),
    #[error("facet {facet} lists slot {slot} twice")]
    DuplicateSlot { facet: usize, slot: usize },
    #[error("facet {0} has no color")]
    Uncolored(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An element `c0 + c1 X + c2 X²` of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusElement {
    pub coeffs: [BigRational; 3],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FrobeniusElement {
    pub fn new(c0: i64, c1: i64, c2: i64) -> Self {
        FrobeniusElement {
            coeffs: [rat(c0), rat(c1), rat(c2)],
        }
    }

    pub fn zero() -> Self {
        FrobeniusElement::new(0, 0, 0)
    }

    pub fn one() -> Self {
        FrobeniusElement::new(1, 0, 0)
    }

    pub fn x() -> Self {
        FrobeniusElement::new(0, 1, 0)
    }

    /// `X^k`, zero for `k ≥ 3`.
    pub fn x_pow(k: u32) -> Self {
        let mut e = FrobeniusElement::zero();
        if k < 3 {
            e.coeffs[k as usize] = rat(1);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        FrobeniusElement {
            coeffs: self.coeffs.clone().map(|c| c * k),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(FrobeniusElement::one(), |acc, _| &acc * self)
    }

    /// `deg 1 = -2`, `deg X = 0`, `deg X² = 2`; `None` unless homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut nonzero = (0..3).filter(|&k| !self.coeffs[k].is_zero());
        let k = nonzero.next()?;
        nonzero.next().is_none().then_some(2 * k as i64 - 2)
    }
}

impl Add for &FrobeniusElement {
    type Output = FrobeniusElement;
    fn add(self, rhs: &FrobeniusElement) -> FrobeniusElement {
        FrobeniusElement {
            coeffs: [0, 1, 2].map(|k| &self.coeffs[k] + &rhs.coeffs[k]),
        }
    }
}

impl Neg for &FrobeniusElement {
    type Output = FrobeniusElement;
    fn neg(self) -> FrobeniusElement {
        FrobeniusElement {
            coeffs: self.coeffs.clone().map(|c| -c),
        }
    }
}

impl Mul for &FrobeniusElement {
    type Output = FrobeniusElement;
    fn mul(self, rhs: &FrobeniusElement) -> FrobeniusElement {
        let mut out = FrobeniusElement::zero();
        for i in 0..3 {
            for j in 0..3 - i {
                out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        out
    }
}

impl fmt::Display for FrobeniusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["1", "X", "X^2"];
        let terms: Vec<String> = (0..3)
            .filter(|&k| !self.coeffs[k].is_zero())
            .map(|k| format!("{}*{}", self.coeffs[k], names[k]))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

pub fn frob_mul(a: &FrobeniusElement, b: &FrobeniusElement) -> FrobeniusElement {
    a * b
}

/// `τ(1) = τ(X) = 0`, `τ(X²) = -1`.
pub fn frob_trace(a: &FrobeniusElement) -> BigRational {
    -a.coeffs[2].clone()
}

/// `Δ(a)` as a list of simple tensors.
pub fn frob_comul(a: &FrobeniusElement) -> Vec<(FrobeniusElement, FrobeniusElement)> {
    // Δ(1) = -1⊗X² - X⊗X - X²⊗1, and Δ(a) = (a⊗1)Δ(1)
    (0..3)
        .map(|k| {
            (
                (&a.scale(&rat(-1)) * &FrobeniusElement::x_pow(k)),
                FrobeniusElement::x_pow(2 - k),
            )
        })
        .filter(|(l, _)| !l.is_zero())
        .collect()
}

/// The trilinear theta pairing.
pub fn theta(a1: &FrobeniusElement, a2: &FrobeniusElement, a3: &FrobeniusElement) -> BigRational {
    let mut total = BigRational::zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let t = THETA[i][j][k];
                if t != 0 {
                    total += &a1.coeffs[i] * &a2.coeffs[j] * &a3.coeffs[k] * rat(t);
                }
            }
        }
    }
    total
}

/// Idempotent labels of the Gornik deformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FacetColor {
    A,
    B,
    C,
}

impl FacetColor {
    pub fn letter(self) -> char {
        match self {
            FacetColor::A => 'a',
            FacetColor::B => 'b',
            FacetColor::C => 'c',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub id: usize,
    pub genus: u32,
    pub dots: u32,
    pub slots: Vec<usize>,
    pub color: Option<FacetColor>,
}

/// A slot on a facet: `(facet id, slot id)`.
pub type SlotRef = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreFoam {
    pub facets: Vec<Facet>,
    pub circles: Vec<[SlotRef; 3]>,
}

impl PreFoam {
    pub fn new(facets: Vec<Facet>, circles: Vec<[SlotRef; 3]>) -> Result<PreFoam, FoamError> {
        let f = PreFoam { facets, circles };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), FoamError> {
        let mut uses: BTreeMap<SlotRef, usize> = BTreeMap::new();
        let mut ids = HashSet::new();
        for f in &self.facets {
            if !ids.insert(f.id) {
                return Err(FoamError::DuplicateFacet(f.id));
            }
            for &s in &f.slots {
                if uses.insert((f.id, s), 0).is_some() {
                    return Err(FoamError::DuplicateSlot {
                        facet: f.id,
                        slot: s,
                    });
                }
            }
        }
        for (c, triple) in self.circles.iter().enumerate() {
            for &(facet, slot) in triple {
                *uses.get_mut(&(facet, slot)).ok_or(FoamError::MissingSlot {
                    circle: c,
                    facet,
                    slot,
                })? += 1;
            }
        }
        match uses.into_iter().find(|(_, n)| *n != 1) {
            Some(((facet, slot), count)) => Err(FoamError::NotClosed { facet, slot, count }),
            None => Ok(()),
        }
    }

    fn facet(id: usize, genus: u32, dots: u32, slots: Vec<usize>) -> Facet {
        Facet {
            id,
            genus,
            dots,
            slots,
            color: None,
        }
    }

    /// A closed surface of genus `g` with `dots` dots.
    pub fn closed_surface(genus: u32, dots: u32) -> PreFoam {
        PreFoam {
            facets: vec![PreFoam::facet(0, genus, dots, vec![])],
            circles: vec![],
        }
    }

    pub fn sphere(dots: u32) -> PreFoam {
        PreFoam::closed_surface(0, dots)
    }

    /// Three disks on one singular circle, in the given cyclic order.
    pub fn theta(dots: [u32; 3]) -> PreFoam {
        PreFoam {
            facets: (0..3)
                .map(|i| PreFoam::facet(i, 0, dots[i], vec![0]))
                .collect(),
            circles: vec![[(0, 0), (1, 0), (2, 0)]],
        }
    }

    /// Side by side; ids of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &PreFoam) -> PreFoam {
        let shift = self.facets.iter().map(|f| f.id + 1).max().unwrap_or(0);
        let mut facets = self.facets.clone();
        facets.extend(other.facets.iter().map(|f| Facet {
            id: f.id + shift,
            ..f.clone()
        }));
        let mut circles = self.circles.clone();
        circles.extend(other.circles.iter().map(|t| t.map(|(f, s)| (f + shift, s))));
        PreFoam { facets, circles }
    }

    pub fn total_dots(&self) -> u64 {
        self.facets.iter().map(|f| f.dots as u64).sum()
    }

    /// `Σ (2 - 2g - b)` over facets.
    pub fn euler_characteristic(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| 2 - 2 * f.genus as i64 - f.slots.len() as i64)
            .sum()
    }

    pub fn degree(&self) -> i64 {
        -2 * self.euler_characteristic() + 2 * self.total_dots() as i64
    }

    /// Facet contents `X^d (m∘Δ(1))^g = X^d (-3X²)^g`.
    pub fn contents(&self) -> Vec<FrobeniusElement> {
        let handle = FrobeniusElement::new(0, 0, -3);
        self.facets
            .iter()
            .map(|f| &FrobeniusElement::x_pow(f.dots) * &handle.pow(f.genus))
            .collect()
    }

    /// True iff the three facets at every singular circle carry distinct colors.
    pub fn well_colored(&self) -> Result<bool, FoamError> {
        let color: HashMap<usize, FacetColor> = self
            .facets
            .iter()
            .map(|f| f.color.map(|c| (f.id, c)).ok_or(FoamError::Uncolored(f.id)))
            .collect::<Result<_, _>>()?;
        Ok(self.circles.iter().all(|t| {
            let [a, b, c] = t.map(|(f, _)| color[&f]);
            a != b && b != c && a != c
        }))
    }
}

pub fn degree(f: &PreFoam) -> i64 {
    f.degree()
}

/// A facet during evaluation: a sphere with holes and an element of `A`.
#[derive(Clone)]
struct Piece {
    content: FrobeniusElement,
    slots: Vec<SlotRef>,
}

/// Neck-cutting choices.
enum Order<'a> {
    Fixed,
    Random(&'a mut ChaCha8Rng),
}

fn state_sum(pieces: Vec<Piece>, circles: &[[SlotRef; 3]], order: &mut Order) -> BigRational {
    if pieces.iter().any(|p| p.content.is_zero()) {
        return BigRational::zero();
    }
    let cuttable: Vec<usize> = (0..pieces.len())
        .filter(|&i| pieces[i].slots.len() >= 2)
        .collect();
    let Some(&first) = cuttable.first() else {
        return assemble(&pieces, circles);
    };
    let (i, k, content_left) = match order {
        Order::Fixed => (first, 0, true),
        Order::Random(rng) => {
            let i = *cuttable.choose(*rng).unwrap();
            let k = rng.gen_range(0..pieces[i].slots.len());
            (i, k, rng.gen_bool(0.5))
        }
    };
    let piece = &pieces[i];
    let mut rest = piece.slots.clone();
    let split = rest.remove(k);
    // Δ(c) = (c⊗1)Δ(1) = (1⊗c)Δ(1)
    let terms = if content_left {
        frob_comul(&piece.content)
    } else {
        frob_comul(&FrobeniusElement::one())
            .into_iter()
            .map(|(l, r)| (l, &r * &piece.content))
            .collect()
    };
    let mut total = BigRational::zero();
    for (l, r) in terms {
        let mut next = pieces.clone();
        next[i] = Piece {
            content: l,
            slots: vec![split],
        };
        next.push(Piece {
            content: r,
            slots: rest.clone(),
        });
        total += state_sum(next, circles, order);
    }
    total
}

/// Every piece has at most one slot: closed pieces give `τ`, each circle a theta.
fn assemble(pieces: &[Piece], circles: &[[SlotRef; 3]]) -> BigRational {
    let mut at: HashMap<SlotRef, &FrobeniusElement> = HashMap::new();
    let mut value = BigRational::one();
    for p in pieces {
        match p.slots.as_slice() {
            [] => value *= frob_trace(&p.content),
            [s] => {
                at.insert(*s, &p.content);
            }
            _ => unreachable!("uncut piece"),
        }
    }
    for t in circles {
        value *= theta(at[&t[0]], at[&t[1]], at[&t[2]]);
    }
    value
}

impl PreFoam {
    fn pieces(&self, contents: &[FrobeniusElement]) -> Vec<Piece> {
        self.facets
            .iter()
            .zip(contents)
            .map(|(f, c)| Piece {
                content: c.clone(),
                slots: f.slots.iter().map(|&s| (f.id, s)).collect(),
            })
            .collect()
    }

    pub fn evaluate(&self) -> Result<BigRational, FoamError> {
        self.evaluate_contents(&self.contents())
    }

    /// Evaluate with explicit facet contents in place of genus and dots.
    pub fn evaluate_contents(
        &self,
        contents: &[FrobeniusElement],
    ) -> Result<BigRational, FoamError> {
        self.validate()?;
        Ok(state_sum(
            self.pieces(contents),
            &self.circles,
            &mut Order::Fixed,
        ))
    }

    /// Evaluate with neck cuts taken in an order drawn from `seed`.
    pub fn evaluate_randomized(&self, seed: u64) -> Result<BigRational, FoamError> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(state_sum(
            self.pieces(&self.contents()),
            &self.circles,
            &mut Order::Random(&mut rng),
        ))
    }
}

pub fn evaluate(f: &PreFoam) -> Result<BigRational, FoamError> {
    f.evaluate()
}

/// A random closed pre-foam with `circles` singular circles and up to
/// `extra` further closed facets.
pub fn random_prefoam(seed: u64, circles: usize, extra: usize) -> PreFoam {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_slots = 3 * circles;
    let n_facets = if n_slots == 0 {
        0
    } else {
        rng.gen_range(1..=n_slots)
    };
    let mut facets: Vec<Facet> = (0..n_facets)
        .map(|id| Facet {
            id,
            genus: rng.gen_range(0..=1),
            dots: rng.gen_range(0..=2),
            slots: vec![],
            color: None,
        })
        .collect();
    let mut slot_refs = Vec::with_capacity(n_slots);
    for k in 0..n_slots {
        // the first slots go one per facet so no facet is left without
        let id = if k < n_facets {
            k
        } else {
            rng.gen_range(0..n_facets)
        };
        let s = facets[id].slots.len();
        facets[id].slots.push(s);
        slot_refs.push((id, s));
    }
    slot_refs.shuffle(&mut rng);
    let circles = slot_refs.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
    for _ in 0..rng.gen_range(0..=extra) {
        let id = facets.len();
        facets.push(Facet {
            id,
            genus: rng.gen_range(0..=1),
            dots: rng.gen_range(0..=3),
            slots: vec![],
            color: None,
        });
    }
    PreFoam { facets, circles }
}

/// A random closed pre-foam of degree 0 built from disks, annuli and
/// closed tori or spheres, so that its evaluation is usually nonzero.
pub fn random_balanced_prefoam(seed: u64, circles: usize, extra: usize) -> PreFoam {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slot_refs: Vec<SlotRef> = Vec::new();
    let mut facets: Vec<Facet> = Vec::new();
    let mut remaining = 3 * circles;
    while remaining > 0 {
        let id = facets.len();
        let b = if remaining >= 2 && rng.gen_bool(0.3) {
            2
        } else {
            1
        };
        slot_refs.extend((0..b).map(|s| (id, s)));
        facets.push(Facet {
            id,
            genus: 0,
            dots: 0,
            slots: (0..b).collect(),
            color: None,
        });
        remaining -= b;
    }
    for _ in 0..rng.gen_range(0..=extra) {
        let id = facets.len();
        facets.push(Facet {
            id,
            genus: rng.gen_range(0..=1),
            dots: 0,
            slots: vec![],
            color: None,
        });
    }
    slot_refs.shuffle(&mut rng);
    let circles = slot_refs.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
    let mut f = PreFoam { facets, circles };
    // dots = χ gives degree 0; at most two per facet
    let mut open: Vec<usize> = (0..f.facets.len())
        .filter(|&k| f.facets[k].genus == 0)
        .collect();
    for _ in 0..f.euler_characteristic().max(0) {
        open.retain(|&k| f.facets[k].dots < 2);
        let Some(&k) = open.choose(&mut rng) else {
            break;
        };
        f.facets[k].dots += 1;
    }
    f
}

fn parse_slot_ref(s: &str) -> Option<SlotRef> {
    let (f, k) = s.trim().split_once('.')?;
    Some((f.parse().ok()?, k.parse().ok()?))
}

pub fn parse_foam(text: &str) -> Result<PreFoam, FoamError> {
    let mut facets = Vec::new();
    let mut circles = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| FoamError::Parse { line, message };
        let body = raw.split('#').next().unwrap().trim();
        let mut words = body.split_whitespace();
        match words.next() {
            None => continue,
            Some("facet") => {
                let id: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err("facet needs a numeric id".into()))?;
                let mut facet = Facet {
                    id,
                    genus: 0,
                    dots: 0,
                    slots: vec![],
                    color: None,
                };
                let mut seen_slots = false;
                for w in words {
                    let (key, value) = w
                        .split_once('=')
                        .ok_or_else(|| err(format!("expected key=value, found {w:?}")))?;
                    let number = || {
                        value
                            .parse::<u32>()
                            .map_err(|_| err(format!("bad value for {key}: {value:?}")))
                    };
                    match key {
                        "genus" => facet.genus = number()?,
                        "dots" => facet.dots = number()?,
                        "slots" => {
                            seen_slots = true;
                            if !value.is_empty() {
                                facet.slots = value
                                    .split(',')
                                    .map(|s| {
                                        s.parse().map_err(|_| err(format!("bad slot id {s:?}")))
                                    })
                                    .collect::<Result<_, _>>()?;
                            }
                        }
                        "color" => {
                            facet.color = Some(match value {
                                "a" => FacetColor::A,
                                "b" => FacetColor::B,
                                "c" => FacetColor::C,
                                _ => {
                                    return Err(err(format!(
                                        "color must be a, b or c, found {value:?}"
                                    )))
                                }
                            })
                        }
                        _ => return Err(err(format!("unknown key {key:?}"))),
                    }
                }
                if !seen_slots {
                    return Err(err("facet needs slots=...".into()));
                }
                facets.push(facet);
            }
            Some("circle") => {
                let joined: String = words.collect::<Vec<_>>().join("");
                let refs: Vec<SlotRef> = joined
                    .split(',')
                    .map(|s| {
                        parse_slot_ref(s).ok_or_else(|| err(format!("bad slot reference {s:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                if refs.len() != 3 {
                    return Err(err(format!(
                        "a singular circle joins 3 slots, found {}",
                        refs.len()
                    )));
                }
                circles.push([refs[0], refs[1], refs[2]]);
            }
            Some(w) => return Err(err(format!("unknown item {w:?}"))),
        }
    }
    PreFoam::new(facets, circles)
}

pub fn render_foam(f: &PreFoam) -> String {
    let mut out = String::new();
    for facet in &f.facets {
        let slots: Vec<String> = facet.slots.iter().map(|s| s.to_string()).collect();
        out.push_str(&format!(
            "facet {} genus={} dots={} slots={}",
            facet.id,
            facet.genus,
            facet.dots,
            slots.join(",")
        ));
        if let Some(c) = facet.color {
            out.push_str(&format!(" color={}", c.letter()));
        }
        out.push('\n');
    }
    for t in &f.circles {
        let refs: Vec<String> = t.iter().map(|(a, b)| format!("{a}.{b}")).collect();
        out.push_str(&format!("circle {}\n", refs.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        rat(n)
    }

    #[test]
    fn structure_maps() {
        assert_eq!(frob_trace(&FrobeniusElement::x_pow(2)), r(-1));
        assert_eq!(frob_trace(&FrobeniusElement::x()), r(0));
        let d = frob_comul(&FrobeniusElement::x_pow(2));
        assert_eq!(
            d,
            vec![(FrobeniusElement::new(0, 0, -1), FrobeniusElement::x_pow(2))]
        );
        assert!(frob_mul(&FrobeniusElement::x(), &FrobeniusElement::x_pow(2)).is_zero());
        // m∘Δ(1) = -3X²
        let handle = frob_comul(&FrobeniusElement::one())
            .iter()
            .fold(FrobeniusElement::zero(), |acc, (a, b)| &acc + &(a * b));
        assert_eq!(handle, FrobeniusElement::new(0, 0, -3));
        assert_eq!(FrobeniusElement::x().degree(), Some(0));
        assert_eq!(FrobeniusElement::new(1, 0, 1).degree(), None);
    }

    #[test]
    fn theta_table() {
        let x = |k| FrobeniusElement::x_pow(k);
        assert_eq!(theta(&x(0), &x(1), &x(2)), r(1));
        assert_eq!(theta(&x(1), &x(2), &x(0)), r(1));
        assert_eq!(theta(&x(0), &x(2), &x(1)), r(-1));
        assert_eq!(theta(&x(1), &x(1), &x(1)), r(0));
        assert_eq!(theta(&x(0), &x(0), &x(2)), r(0));
    }

    #[test]
    fn base_cases() {
        assert_eq!(PreFoam::sphere(2).evaluate().unwrap(), r(-1));
        assert_eq!(PreFoam::sphere(0).evaluate().unwrap(), r(0));
        assert_eq!(PreFoam::sphere(1).evaluate().unwrap(), r(0));
        assert_eq!(PreFoam::closed_surface(1, 0).evaluate().unwrap(), r(3));
        assert_eq!(PreFoam::closed_surface(2, 0).evaluate().unwrap(), r(0));
        assert_eq!(PreFoam::theta([0, 1, 2]).evaluate().unwrap(), r(1));
        assert_eq!(PreFoam::theta([1, 1, 1]).evaluate().unwrap(), r(0));
    }

    #[test]
    fn degrees() {
        assert_eq!(PreFoam::theta([0, 0, 0]).degree(), -6);
        assert_eq!(PreFoam::theta([0, 1, 2]).degree(), 0);
        assert_eq!(PreFoam::sphere(2).degree(), 0);
    }

    #[test]
    fn annuli_between_two_circles() {
        let facets = (0..3)
            .map(|i| PreFoam::facet(i, 0, 0, vec![0, 1]))
            .collect();
        let f = PreFoam::new(
            facets,
            vec![[(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 1), (2, 1)]],
        )
        .unwrap();
        assert_eq!(f.degree(), 0);
        assert_eq!(f.evaluate().unwrap(), r(6));
        for seed in 0..6 {
            assert_eq!(f.evaluate_randomized(seed).unwrap(), r(6));
        }
    }

    #[test]
    fn validation() {
        let open = PreFoam::new(vec![PreFoam::facet(0, 0, 0, vec![0])], vec![]);
        assert!(matches!(open, Err(FoamError::NotClosed { .. })));
        let missing = PreFoam::new(vec![], vec![[(0, 0), (1, 0), (2, 0)]]);
        assert!(matches!(missing, Err(FoamError::MissingSlot { .. })));
    }

    #[test]
    fn coloring() {
        let mut t = PreFoam::theta([0, 0, 0]);
        assert_eq!(t.well_colored(), Err(FoamError::Uncolored(0)));
        for (f, c) in t
            .facets
            .iter_mut()
            .zip([FacetColor::A, FacetColor::B, FacetColor::C])
        {
            f.color = Some(c);
        }
        assert_eq!(t.well_colored(), Ok(true));
        t.facets[1].color = Some(FacetColor::A);
        assert_eq!(t.well_colored(), Ok(false));
        let mut s = PreFoam::sphere(0);
        s.facets[0].color = Some(FacetColor::B);
        assert_eq!(s.well_colored(), Ok(true));
    }

    #[test]
    fn text_round_trip() {
        let text = "# theta\nfacet 0 genus=0 dots=1 slots=0 color=a\nfacet 1 genus=0 dots=0 slots=0\nfacet 2 genus=1 dots=2 slots=0\nfacet 3 genus=0 dots=2 slots=\ncircle 0.0, 1.0, 2.0\n";
        let f = parse_foam(text).unwrap();
        assert_eq!(f.facets.len(), 4);
        assert_eq!(parse_foam(&render_foam(&f)).unwrap(), f);
        let err = parse_foam("facet 0 genus=x slots=").unwrap_err();
        assert!(matches!(err, FoamError::Parse { line: 1, .. }));
        let err = parse_foam("facet 0 slots=0\nfacet 1 slots=0\ncircle 0.0,1.0").unwrap_err();
        assert!(matches!(err, FoamError::Parse { line: 3, .. }));
    }

    #[test]
    fn random_foams_are_closed() {
        for seed in 0..20 {
            let f = random_prefoam(seed, 2, 2);
            assert!(f.validate().is_ok());
            assert_eq!(parse_foam(&render_foam(&f)).unwrap(), f);
        }
    }

    #[test]
    fn random_foams_confluent_and_graded() {
        for seed in 0..40 {
            let f = random_prefoam(seed, 2, 1);
            let v = f.evaluate().unwrap();
            for k in 0..5 {
                assert_eq!(
                    f.evaluate_randomized(1000 * seed + k).unwrap(),
                    v,
                    "seed {seed}"
                );
            }
            if f.degree() != 0 {
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn multiplicative_and_linear() {
        let a = PreFoam::theta([2, 0, 1]);
        let b = PreFoam::closed_surface(1, 0);
        assert_eq!(
            a.disjoint_union(&b).evaluate().unwrap(),
            a.evaluate().unwrap() * b.evaluate().unwrap()
        );
        for seed in 0..10 {
            let f = random_prefoam(seed, 1, 0);
            let mut c1 = f.contents();
            let mut c2 = f.contents();
            c1[0] = FrobeniusElement::new(2, -1, 0);
            c2[0] = FrobeniusElement::new(0, 3, 5);
            let mut sum = f.contents();
            sum[0] = &c1[0] + &c2[0];
            assert_eq!(
                f.evaluate_contents(&sum).unwrap(),
                f.evaluate_contents(&c1).unwrap() + f.evaluate_contents(&c2).unwrap()
            );
        }
    }

    #[test]
    fn balanced_foams() {
        let mut nonzero = 0;
        for seed in 0..30 {
            let f = random_balanced_prefoam(seed, 2, 1);
            assert!(f.validate().is_ok());
            let v = f.evaluate().unwrap();
            nonzero += usize::from(!v.is_zero());
            assert_eq!(f.evaluate_randomized(seed).unwrap(), v);
        }
        assert!(nonzero > 0);
    }
}
