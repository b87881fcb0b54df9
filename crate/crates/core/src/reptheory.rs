//! Exact evaluation of webs drawn as slice scripts: every level is a
//! tensor product of elementary intertwiners between `V^±`, contracted
//! over Laurent polynomials in `q^{1/2}`.
//!
//! Script files hold one level per line. A level lists a token for every
//! strand group, left to right (`id+ bpm id-`), or uses the shorthand
//! `@k tok` to apply one generator at strand `k` with identities elsewhere.
//! An optional first line `domain <signs>` sets the bottom boundary; `#`
//! starts a comment.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qpoly::LaurentPoly;
use crate::signs::{Sign, SignSequence};
use crate::web::Web;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("level {level}: expects {expected} below it but receives {found}")]
    LevelMismatch {
        level: usize,
        expected: SignSequence,
        found: SignSequence,
    },
}

/// Elementary maps. Names spell the signs of the codomain, then `_` and the
/// signs of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Id(Sign),
    /// `b^{+-}: C → V⁺⊗V⁻`
    Bpm,
    /// `b^{-+}: C → V⁻⊗V⁺`
    Bmp,
    /// `σ_{+-}: V⁺⊗V⁻ → C`
    Spm,
    /// `σ_{-+}: V⁻⊗V⁺ → C`
    Smp,
    /// `t^{+++}: C → V⁺⊗V⁺⊗V⁺`
    Tppp,
    /// `t^{---}: C → V⁻⊗V⁻⊗V⁻`
    Tmmm,
    /// `t^{++}_-: V⁻ → V⁺⊗V⁺`
    TppM,
    /// `t^{--}_+: V⁺ → V⁻⊗V⁻`
    TmmP,
    /// `t^{+}_{--}: V⁻⊗V⁻ → V⁺`
    TpMm,
    /// `t^{-}_{++}: V⁺⊗V⁺ → V⁻`
    TmPp,
    /// `t_{+++}: V⁺⊗V⁺⊗V⁺ → C`
    TPpp,
    /// `t_{---}: V⁻⊗V⁻⊗V⁻ → C`
    TMmm,
}

use Generator::*;

pub const PRIMITIVES: [Generator; 6] = [Bpm, Bmp, Spm, Smp, Tppp, Tmmm];

pub const ALL_GENERATORS: [Generator; 14] = [
    Id(Sign::Plus),
    Id(Sign::Minus),
    Bpm,
    Bmp,
    Spm,
    Smp,
    Tppp,
    Tmmm,
    TppM,
    TmmP,
    TpMm,
    TmPp,
    TPpp,
    TMmm,
];

fn signs(s: &str) -> SignSequence {
    s.parse().expect("literal sign string")
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Id(Sign::Plus) => "id+",
            Id(Sign::Minus) => "id-",
            Bpm => "bpm",
            Bmp => "bmp",
            Spm => "spm",
            Smp => "smp",
            Tppp => "tppp",
            Tmmm => "tmmm",
            TppM => "tpp_m",
            TmmP => "tmm_p",
            TpMm => "tp_mm",
            TmPp => "tm_pp",
            TPpp => "t_ppp",
            TMmm => "t_mmm",
        }
    }

    pub fn from_name(name: &str) -> Result<Generator, ScriptError> {
        let name = name.replace('−', "-");
        ALL_GENERATORS
            .into_iter()
            .find(|g| g.name() == name)
            .ok_or(ScriptError::UnknownGenerator(name))
    }

    pub fn domain(self) -> SignSequence {
        signs(match self {
            Id(Sign::Plus) => "+",
            Id(Sign::Minus) => "-",
            Bpm | Bmp | Tppp | Tmmm => "",
            Spm => "+-",
            Smp => "-+",
            TppM => "-",
            TmmP => "+",
            TpMm => "--",
            TmPp => "++",
            TPpp => "+++",
            TMmm => "---",
        })
    }

    pub fn codomain(self) -> SignSequence {
        signs(match self {
            Id(Sign::Plus) => "+",
            Id(Sign::Minus) => "-",
            Bpm => "+-",
            Bmp => "-+",
            Spm | Smp | TPpp | TMmm => "",
            Tppp => "+++",
            Tmmm => "---",
            TppM => "++",
            TmmP => "--",
            TpMm => "+",
            TmPp => "-",
        })
    }

    /// The generator drawn upside down with reversed orientations.
    pub fn conjugate(self) -> Generator {
        match self {
            Id(s) => Id(s),
            Bpm => Spm,
            Spm => Bpm,
            Bmp => Smp,
            Smp => Bmp,
            Tppp => TPpp,
            TPpp => Tppp,
            Tmmm => TMmm,
            TMmm => Tmmm,
            TppM => TmPp,
            TmPp => TppM,
            TmmP => TpMm,
            TpMm => TmmP,
        }
    }

    pub fn vertices(self) -> usize {
        match self {
            Id(_) | Bpm | Bmp | Spm | Smp => 0,
            _ => 1,
        }
    }

    /// The coefficient tensor.
    pub fn tensor(self) -> &'static QTensor {
        static TABLE: OnceLock<HashMap<Generator, QTensor>> = OnceLock::new();
        &TABLE.get_or_init(build_generator_table)[&self]
    }

    pub fn web(self) -> Web {
        match self {
            Id(s) => Web::identity(&SignSequence::new(vec![s])),
            Bpm => Web::top_arc(Sign::Plus, Sign::Minus).unwrap(),
            Bmp => Web::top_arc(Sign::Minus, Sign::Plus).unwrap(),
            Spm => Web::bottom_arc(Sign::Plus, Sign::Minus).unwrap(),
            Smp => Web::bottom_arc(Sign::Minus, Sign::Plus).unwrap(),
            g => Web::single_vertex(g.domain(), g.codomain()).unwrap(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A map `V^domain → V^codomain` as a sparse array. Basis vectors of `V^±`
/// are indexed by -1, 0, 1; keys are `(codomain index, domain index)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QTensor {
    pub domain: SignSequence,
    pub codomain: SignSequence,
    pub entries: BTreeMap<(Vec<i8>, Vec<i8>), LaurentPoly>,
}

impl QTensor {
    pub fn identity(s: &SignSequence) -> QTensor {
        let entries = all_indices(s.len())
            .into_iter()
            .map(|i| ((i.clone(), i), LaurentPoly::one()))
            .collect();
        QTensor {
            domain: s.clone(),
            codomain: s.clone(),
            entries,
        }
    }

    fn from_entries(
        domain: SignSequence,
        codomain: SignSequence,
        entries: impl IntoIterator<Item = ((Vec<i8>, Vec<i8>), LaurentPoly)>,
    ) -> QTensor {
        let entries = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        QTensor {
            domain,
            codomain,
            entries,
        }
    }

    pub fn get(&self, out: &[i8], input: &[i8]) -> LaurentPoly {
        self.entries
            .get(&(out.to_vec(), input.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// The value of a map `C → C`.
    pub fn scalar(&self) -> Option<LaurentPoly> {
        if self.domain.is_empty() && self.codomain.is_empty() {
            Some(self.get(&[], &[]))
        } else {
            None
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == QTensor::identity(&self.domain)
    }

    /// Rows grouped by domain index.
    fn by_input(&self) -> HashMap<Vec<i8>, Vec<(Vec<i8>, LaurentPoly)>> {
        let mut m: HashMap<Vec<i8>, Vec<(Vec<i8>, LaurentPoly)>> = HashMap::new();
        for ((o, i), v) in &self.entries {
            m.entry(i.clone()).or_default().push((o.clone(), v.clone()));
        }
        m
    }

    /// `upper ∘ self`.
    pub fn then(&self, upper: &QTensor) -> Result<QTensor, ScriptError> {
        if self.codomain != upper.domain {
            return Err(ScriptError::LevelMismatch {
                level: 0,
                expected: upper.domain.clone(),
                found: self.codomain.clone(),
            });
        }
        let rows = upper.by_input();
        let mut acc: HashMap<(Vec<i8>, Vec<i8>), LaurentPoly> = HashMap::new();
        for ((mid, input), v) in &self.entries {
            if let Some(outs) = rows.get(mid) {
                for (out, u) in outs {
                    *acc.entry((out.clone(), input.clone())).or_default() += u * v;
                }
            }
        }
        Ok(QTensor::from_entries(
            self.domain.clone(),
            upper.codomain.clone(),
            acc,
        ))
    }

    /// `self ⊗ other`, `other` to the right.
    pub fn tensor(&self, other: &QTensor) -> QTensor {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for ((o1, i1), v1) in &self.entries {
            for ((o2, i2), v2) in &other.entries {
                entries.push(((cat(o1, o2), cat(i1, i2)), v1 * v2));
            }
        }
        QTensor::from_entries(
            self.domain.concat(&other.domain),
            self.codomain.concat(&other.codomain),
            entries,
        )
    }

    /// Post-compose with one script level, never materialising the level's
    /// own (mostly identity) tensor.
    fn apply_level(&self, level: &[Generator]) -> QTensor {
        let rows: Vec<HashMap<Vec<i8>, Vec<(Vec<i8>, LaurentPoly)>>> =
            level.iter().map(|g| g.tensor().by_input()).collect();
        let widths: Vec<usize> = level.iter().map(|g| g.domain().len()).collect();
        let mut acc: HashMap<(Vec<i8>, Vec<i8>), LaurentPoly> = HashMap::new();
        for ((mid, input), v) in &self.entries {
            let mut partial: Vec<(Vec<i8>, LaurentPoly)> = vec![(Vec::new(), v.clone())];
            let mut at = 0;
            for (g, w) in rows.iter().zip(&widths) {
                let piece = &mid[at..at + w];
                at += w;
                let Some(outs) = g.get(piece) else {
                    partial.clear();
                    break;
                };
                let mut next = Vec::with_capacity(partial.len() * outs.len());
                for (o, c) in &partial {
                    for (o2, c2) in outs {
                        next.push((cat(o, o2), c * c2));
                    }
                }
                partial = next;
            }
            for (o, c) in partial {
                *acc.entry((o, input.clone())).or_default() += c;
            }
        }
        let codomain = level
            .iter()
            .fold(SignSequence::empty(), |a, g| a.concat(&g.codomain()));
        QTensor::from_entries(self.domain.clone(), codomain, acc)
    }
}

impl fmt::Display for QTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.scalar() {
            return write!(f, "{s}");
        }
        writeln!(f, "map V^({}) -> V^({})", self.domain, self.codomain)?;
        let idx = |v: &[i8]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        for ((o, i), v) in &self.entries {
            writeln!(f, "  ({}) <- ({}): {}", idx(o), idx(i), v)?;
        }
        Ok(())
    }
}

fn cat(a: &[i8], b: &[i8]) -> Vec<i8> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v
}

fn all_indices(n: usize) -> Vec<Vec<i8>> {
    crate::coloring::BoundaryColoring::all(n)
        .into_iter()
        .map(|b| b.0)
        .collect()
}

/// The pairing pattern shared by all four cups and caps, indexed
/// (left strand, right strand): `(-1,1) ↦ q`, `(0,0) ↦ 1`, `(1,-1) ↦ q^{-1}`.
fn pairing() -> Vec<(Vec<i8>, LaurentPoly)> {
    vec![
        (vec![-1, 1], LaurentPoly::monomial_s(2, 1)),
        (vec![0, 0], LaurentPoly::one()),
        (vec![1, -1], LaurentPoly::monomial_s(-2, 1)),
    ]
}

/// `t^{+++}` and `t^{---}` share one table; exponents are in `q^{1/2}`.
fn trivalent() -> Vec<(Vec<i8>, LaurentPoly)> {
    [
        ([1, 0, -1], -3),
        ([0, 1, -1], -1),
        ([1, -1, 0], -1),
        ([0, -1, 1], 1),
        ([-1, 1, 0], 1),
        ([-1, 0, 1], 3),
    ]
    .into_iter()
    .map(|(i, e)| (i.to_vec(), LaurentPoly::monomial_s(e, 1)))
    .collect()
}

fn primitive_tensor(g: Generator) -> QTensor {
    let (rows, creation) = match g {
        Id(s) => return QTensor::identity(&SignSequence::new(vec![s])),
        Bpm | Bmp | Spm | Smp => (pairing(), matches!(g, Bpm | Bmp)),
        Tppp | Tmmm => (trivalent(), true),
        _ => unreachable!("derived generator"),
    };
    let entries = rows.into_iter().map(|(i, v)| {
        if creation {
            ((i, vec![]), v)
        } else {
            ((vec![], i), v)
        }
    });
    QTensor::from_entries(g.domain(), g.codomain(), entries)
}

/// Scripts in primitives defining the remaining trivalent maps: the legs
/// of `t^{±±±}` are bent down on the right with nested caps.
pub fn derived_definition(g: Generator) -> Option<SliceScript> {
    let text = match g {
        TppM => "domain -\ntppp id-\nid+ id+ spm",
        TmmP => "domain +\ntmmm id+\nid- id- smp",
        TpMm => "domain --\nid- id- tppp\nid- smp id+ id+\nsmp id+",
        TmPp => "domain ++\nid+ id+ tmmm\nid+ spm id- id-\nspm id-",
        TPpp => "domain +++\nid+ id+ id+ tmmm\nid+ id+ spm id- id-\nid+ spm id-\nspm",
        TMmm => "domain ---\nid- id- id- tppp\nid- id- smp id+ id+\nid- smp id+\nsmp",
        _ => return None,
    };
    Some(parse_script(text).expect("built-in script"))
}

fn build_generator_table() -> HashMap<Generator, QTensor> {
    let mut table: HashMap<Generator, QTensor> = HashMap::new();
    for g in [
        Id(Sign::Plus),
        Id(Sign::Minus),
        Bpm,
        Bmp,
        Spm,
        Smp,
        Tppp,
        Tmmm,
    ] {
        table.insert(g, primitive_tensor(g));
    }
    // derived maps only use primitives, so evaluate them against the partial table
    for g in [TppM, TmmP, TpMm, TmPp, TPpp, TMmm] {
        let script = derived_definition(g).unwrap();
        let mut t = QTensor::identity(&script.domain);
        for level in &script.levels {
            t = apply_with(&t, level, &table);
        }
        table.insert(g, t);
    }
    table
}

fn apply_with(t: &QTensor, level: &[Generator], table: &HashMap<Generator, QTensor>) -> QTensor {
    let pieces = level
        .iter()
        .map(|g| table[g].clone())
        .reduce(|a, b| a.tensor(&b))
        .expect("non-empty level");
    t.then(&pieces).expect("built-in script composes")
}

/// A diagram cut into horizontal levels, read bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceScript {
    pub domain: SignSequence,
    pub levels: Vec<Vec<Generator>>,
}

fn level_domain(level: &[Generator]) -> SignSequence {
    level
        .iter()
        .fold(SignSequence::empty(), |a, g| a.concat(&g.domain()))
}

fn level_codomain(level: &[Generator]) -> SignSequence {
    level
        .iter()
        .fold(SignSequence::empty(), |a, g| a.concat(&g.codomain()))
}

impl SliceScript {
    pub fn new(
        domain: SignSequence,
        levels: Vec<Vec<Generator>>,
    ) -> Result<SliceScript, ScriptError> {
        let s = SliceScript { domain, levels };
        s.codomain_checked()?;
        Ok(s)
    }

    pub fn empty(domain: SignSequence) -> SliceScript {
        SliceScript {
            domain,
            levels: Vec::new(),
        }
    }

    fn codomain_checked(&self) -> Result<SignSequence, ScriptError> {
        let mut cur = self.domain.clone();
        for (k, level) in self.levels.iter().enumerate() {
            let d = level_domain(level);
            if d != cur {
                return Err(ScriptError::LevelMismatch {
                    level: k + 1,
                    expected: d,
                    found: cur,
                });
            }
            cur = level_codomain(level);
        }
        Ok(cur)
    }

    pub fn codomain(&self) -> SignSequence {
        self.codomain_checked().expect("validated script")
    }

    pub fn is_closed(&self) -> bool {
        self.domain.is_empty() && self.codomain().is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().flatten().map(|g| g.vertices()).sum()
    }

    /// Append one level holding `g` at strand `pos` and identities elsewhere.
    pub fn push_at(&mut self, pos: usize, g: Generator) -> Result<(), ScriptError> {
        let cur = self.codomain();
        let level = padded(&cur, pos, g).ok_or_else(|| ScriptError::LevelMismatch {
            level: self.levels.len() + 1,
            expected: g.domain(),
            found: cur.clone(),
        })?;
        self.levels.push(level);
        Ok(())
    }

    /// `other` stacked on top of `self`.
    pub fn then(&self, other: &SliceScript) -> Result<SliceScript, ScriptError> {
        let mut levels = self.levels.clone();
        levels.extend(other.levels.iter().cloned());
        SliceScript::new(self.domain.clone(), levels)
    }

    /// Mirror image: levels reversed, generators conjugated.
    pub fn conjugate(&self) -> SliceScript {
        let levels = self
            .levels
            .iter()
            .rev()
            .map(|l| l.iter().map(|g| g.conjugate()).collect())
            .collect();
        SliceScript {
            domain: self.codomain(),
            levels,
        }
    }
}

fn padded(cur: &SignSequence, pos: usize, g: Generator) -> Option<Vec<Generator>> {
    let d = g.domain();
    if pos + d.len() > cur.len() || (0..d.len()).any(|k| cur[pos + k] != d[k]) {
        return None;
    }
    let mut level: Vec<Generator> = (0..pos).map(|k| Id(cur[k])).collect();
    level.push(g);
    level.extend((pos + d.len()..cur.len()).map(|k| Id(cur[k])));
    Some(level)
}

pub fn parse_script(text: &str) -> Result<SliceScript, ScriptError> {
    let mut domain: Option<SignSequence> = None;
    let mut script: Option<SliceScript> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| ScriptError::Parse { line, message };
        let mut words = body.split_whitespace();
        let first = words.next().unwrap();
        if first == "domain" {
            if script.is_some() || domain.is_some() {
                return Err(err("domain must come first and only once".into()));
            }
            let s = words.next().unwrap_or("");
            domain = Some(s.parse().map_err(|e| err(format!("{e}")))?);
            if words.next().is_some() {
                return Err(err("trailing tokens after domain".into()));
            }
            continue;
        }
        let s =
            script.get_or_insert_with(|| SliceScript::empty(domain.clone().unwrap_or_default()));
        if let Some(pos) = first.strip_prefix('@') {
            let pos: usize = pos
                .parse()
                .map_err(|_| err(format!("bad strand position {first:?}")))?;
            let name = words
                .next()
                .ok_or_else(|| err("missing generator after position".into()))?;
            let g = Generator::from_name(name).map_err(|e| err(e.to_string()))?;
            if words.next().is_some() {
                return Err(err("a positioned level holds one generator".into()));
            }
            s.push_at(pos, g).map_err(|e| err(e.to_string()))?;
        } else {
            let level = std::iter::once(first)
                .chain(words)
                .map(|w| Generator::from_name(w).map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let cur = s.codomain();
            if level_domain(&level) != cur {
                return Err(err(format!(
                    "level expects {} but the strands below are {}",
                    level_domain(&level),
                    cur
                )));
            }
            s.levels.push(level);
        }
    }
    Ok(script.unwrap_or_else(|| SliceScript::empty(domain.unwrap_or_default())))
}

pub fn render_script(s: &SliceScript) -> String {
    let mut out = String::new();
    if !s.domain.is_empty() {
        out.push_str(&format!("domain {}\n", s.domain));
    }
    for level in &s.levels {
        let names: Vec<&str> = level.iter().map(|g| g.name()).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out
}

pub fn generator_tensor(name: &str) -> Result<QTensor, ScriptError> {
    Ok(Generator::from_name(name)?.tensor().clone())
}

pub fn evaluate_script(s: &SliceScript) -> Result<QTensor, ScriptError> {
    s.codomain_checked()?;
    let mut t = QTensor::identity(&s.domain);
    for level in &s.levels {
        t = t.apply_level(level);
    }
    Ok(t)
}

pub fn script_to_web(s: &SliceScript) -> Result<Web, ScriptError> {
    s.codomain_checked()?;
    let mut w = Web::identity(&s.domain);
    for (k, level) in s.levels.iter().enumerate() {
        let piece = level
            .iter()
            .map(|g| g.web())
            .reduce(|a, b| a.tensor(&b))
            .unwrap_or_else(Web::empty);
        w = w.then(&piece).map_err(|_| ScriptError::LevelMismatch {
            level: k + 1,
            expected: level_domain(level),
            found: w.top().clone(),
        })?;
    }
    Ok(w)
}

/// A random closed script with at most `max_vertices` trivalent vertices:
/// a random walk of creations, splits and merges, closed off greedily.
pub fn random_closed_script(seed: u64, max_vertices: usize) -> SliceScript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(s) = try_random_closed(&mut rng, max_vertices) {
            return s;
        }
    }
}

fn try_random_closed(rng: &mut ChaCha8Rng, max_vertices: usize) -> Option<SliceScript> {
    let mut s = SliceScript::empty(SignSequence::empty());
    let steps = rng.gen_range(1..=3 * max_vertices.max(1));
    for _ in 0..steps {
        let cur = s.codomain();
        let n = cur.len();
        let mut moves: Vec<(usize, Generator)> = Vec::new();
        if n < 7 {
            for i in 0..=n {
                moves.extend([(i, Bpm), (i, Bmp)]);
                if n < 5 {
                    moves.extend([(i, Tppp), (i, Tmmm)]);
                }
            }
            for i in 0..n {
                moves.push((i, if cur[i] == Sign::Minus { TppM } else { TmmP }));
            }
        }
        for i in 0..n.saturating_sub(1) {
            moves.push((
                i,
                match (cur[i], cur[i + 1]) {
                    (Sign::Plus, Sign::Plus) => TmPp,
                    (Sign::Minus, Sign::Minus) => TpMm,
                    (Sign::Plus, Sign::Minus) => Spm,
                    (Sign::Minus, Sign::Plus) => Smp,
                },
            ));
        }
        let &(i, g) = moves.choose(rng)?;
        s.push_at(i, g).ok()?;
    }
    close_greedily(&mut s, rng);
    (s.vertex_count() <= max_vertices && s.vertex_count() > 0 || max_vertices == 0).then_some(s)
}

fn close_greedily(s: &mut SliceScript, rng: &mut ChaCha8Rng) {
    loop {
        let cur = s.codomain();
        let n = cur.len();
        if n == 0 {
            return;
        }
        let caps: Vec<usize> = (0..n - 1).filter(|&i| cur[i] != cur[i + 1]).collect();
        if let Some(&i) = caps.choose(rng) {
            let g = if cur[i] == Sign::Plus { Spm } else { Smp };
            s.push_at(i, g).unwrap();
            continue;
        }
        // all strands carry the same sign, and there are a multiple of three
        let g = if cur[0] == Sign::Plus { TPpp } else { TMmm };
        s.push_at(0, g).unwrap();
    }
}
