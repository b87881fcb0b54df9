//! The non-elliptic basis `NE(ε)` and its size.
//!
//! Every non-elliptic ε-web carries a cap, λ or H against two adjacent
//! boundary points, and removing it leaves a non-elliptic web. Read
//! backwards this generates `NE(ε)` from smaller boundaries, graded by the
//! number of vertices; the dominant path count says when to stop.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reptheory::{parse_script, render_script, script_to_web, Generator, SliceScript};
use crate::signs::{Sign, SignSequence};
use crate::web::io::{parse_web, render_web};
use crate::web::{trace_close, CanonicalForm, PatternKind, Web};

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("{0} is not admissible")]
    NotAdmissible(SignSequence),
    #[error("generated {found} non-elliptic webs for {epsilon} but the path count is {expected}")]
    CountMismatch {
        epsilon: SignSequence,
        expected: u128,
        found: usize,
    },
    #[error("cache file {path}: {message}")]
    Cache { path: PathBuf, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A dominant weight `m1 ω1 + m2 ω2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight {
    pub m1: u32,
    pub m2: u32,
}

fn steps(s: Sign) -> [(i64, i64); 3] {
    match s {
        Sign::Plus => [(1, 0), (-1, 1), (0, -1)],
        Sign::Minus => [(0, 1), (1, -1), (-1, 0)],
    }
}

/// `dim hom(V^ε, C)`: walks from 0 back to 0 through dominant weights, one
/// weight of `V^{ε_i}` per step.
pub fn count_invariants(eps: &SignSequence) -> u128 {
    let mut layer: HashMap<(i64, i64), u128> = HashMap::from([((0, 0), 1)]);
    for s in eps.iter() {
        let mut next = HashMap::new();
        for ((a, b), n) in layer {
            for (da, db) in steps(s) {
                let (x, y) = (a + da, b + db);
                if x >= 0 && y >= 0 {
                    *next.entry((x, y)).or_insert(0) += n;
                }
            }
        }
        layer = next;
    }
    layer.get(&(0, 0)).copied().unwrap_or(0)
}

/// The dominant paths themselves (weights after each step, starting at 0).
pub fn dominant_paths(eps: &SignSequence) -> Vec<Vec<DominantWeight>> {
    let mut paths = vec![vec![(0i64, 0i64)]];
    for s in eps.iter() {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let (a, b) = *p.last().unwrap();
                steps(s).into_iter().filter_map(move |(da, db)| {
                    let (x, y) = (a + da, b + db);
                    (x >= 0 && y >= 0).then(|| {
                        let mut q = p.clone();
                        q.push((x, y));
                        q
                    })
                })
            })
            .collect();
    }
    paths
        .into_iter()
        .filter(|p| *p.last().unwrap() == (0, 0))
        .map(|p| {
            p.into_iter()
                .map(|(a, b)| DominantWeight {
                    m1: a as u32,
                    m2: b as u32,
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebBasis {
    pub epsilon: SignSequence,
    pub webs: Vec<Web>,
    pub scripts: Vec<SliceScript>,
}

impl WebBasis {
    pub fn len(&self) -> usize {
        self.webs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.webs.is_empty()
    }
}

type Stratum = Arc<Vec<(Web, SliceScript)>>;

/// Non-elliptic ε-webs graded by vertex count, shared across calls.
#[derive(Default)]
pub struct Enumerator {
    strata: Mutex<HashMap<(SignSequence, usize), Stratum>>,
}

impl Enumerator {
    pub fn new() -> Self {
        Enumerator::default()
    }

    /// Non-elliptic ε-webs with exactly `v` vertices, each with a script.
    pub fn stratum(&self, eps: &SignSequence, v: usize) -> Stratum {
        let key = (eps.clone(), v);
        if let Some(s) = self.strata.lock().unwrap().get(&key) {
            return s.clone();
        }
        let computed = Arc::new(self.compute(eps, v));
        self.strata.lock().unwrap().insert(key, computed.clone());
        computed
    }

    fn compute(&self, eps: &SignSequence, v: usize) -> Vec<(Web, SliceScript)> {
        if eps.is_empty() {
            return if v == 0 {
                vec![(Web::empty(), SliceScript::empty(SignSequence::empty()))]
            } else {
                Vec::new()
            };
        }
        if !eps.is_admissible() {
            return Vec::new();
        }
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut out = Vec::new();
        let mut offer = |w: Web, s: SliceScript| {
            if w.is_non_elliptic() && seen.insert(w.canonical_form()) {
                out.push((w, s));
            }
        };
        for i in 0..eps.len() - 1 {
            let (a, b) = (eps[i], eps[i + 1]);
            for (smaller, kind) in smaller_boundaries(eps, i) {
                let needed = match kind {
                    PatternKind::Cap => 0,
                    PatternKind::Lambda => 1,
                    PatternKind::H => 2,
                };
                if v < needed {
                    continue;
                }
                for (w, s) in self.stratum(&smaller, v - needed).iter() {
                    let mut script = s.clone();
                    match kind {
                        PatternKind::Cap => script
                            .push_at(
                                i,
                                if a == Sign::Plus {
                                    Generator::Bpm
                                } else {
                                    Generator::Bmp
                                },
                            )
                            .unwrap(),
                        PatternKind::Lambda => script
                            .push_at(
                                i,
                                if a == Sign::Plus {
                                    Generator::TppM
                                } else {
                                    Generator::TmmP
                                },
                            )
                            .unwrap(),
                        PatternKind::H => {
                            let (split, merge) = if a == Sign::Plus {
                                (Generator::TppM, Generator::TmPp)
                            } else {
                                (Generator::TmmP, Generator::TpMm)
                            };
                            script.push_at(i, split).unwrap();
                            script.push_at(i + 1, merge).unwrap();
                        }
                    }
                    debug_assert!(kind != PatternKind::Lambda || a == b);
                    let n = s.levels.len();
                    let mut web = w.clone();
                    for level in &script.levels[n..] {
                        let piece = level
                            .iter()
                            .map(|g| g.web())
                            .reduce(|x, y| x.tensor(&y))
                            .unwrap();
                        web = web.then(&piece).expect("levels compose");
                    }
                    offer(web, script);
                }
            }
        }
        out
    }
}

/// Boundaries one pattern smaller, with the pattern attached at `i, i+1`.
fn smaller_boundaries(eps: &SignSequence, i: usize) -> Vec<(SignSequence, PatternKind)> {
    let (a, b) = (eps[i], eps[i + 1]);
    if a == b {
        vec![(eps.splice(i, 2, &[-a]), PatternKind::Lambda)]
    } else {
        vec![
            (eps.splice(i, 2, &[]), PatternKind::Cap),
            (eps.splice(i, 2, &[-a, -b]), PatternKind::H),
        ]
    }
}

fn shared() -> &'static Enumerator {
    static E: OnceLock<Enumerator> = OnceLock::new();
    E.get_or_init(Enumerator::new)
}

/// Largest vertex count tried before giving up.
fn vertex_bound(l: usize) -> usize {
    (l * l).max(4)
}

/// `NE(ε)`, each web with a script drawing it.
pub fn enumerate_ne(eps: &SignSequence) -> Result<WebBasis, EnumerationError> {
    enumerate_with(shared(), eps)
}

pub fn enumerate_with(e: &Enumerator, eps: &SignSequence) -> Result<WebBasis, EnumerationError> {
    if !eps.is_admissible() {
        return Err(EnumerationError::NotAdmissible(eps.clone()));
    }
    let expected = count_invariants(eps);
    let mut basis = WebBasis {
        epsilon: eps.clone(),
        webs: Vec::new(),
        scripts: Vec::new(),
    };
    for v in 0..=vertex_bound(eps.len()) {
        for (w, s) in e.stratum(eps, v).iter() {
            basis.webs.push(w.clone());
            basis.scripts.push(s.clone());
        }
        if basis.webs.len() as u128 >= expected {
            break;
        }
    }
    if basis.webs.len() as u128 != expected {
        return Err(EnumerationError::CountMismatch {
            epsilon: eps.clone(),
            expected,
            found: basis.webs.len(),
        });
    }
    Ok(basis)
}

/// Exhaustive search over Morse presentations: scripts built level by
/// level from every generator, keeping only non-elliptic partial webs with
/// at most `max_strands` strands and `max_vertices` vertices.
pub fn enumerate_by_slices(
    eps: &SignSequence,
    max_strands: usize,
    max_vertices: usize,
) -> Vec<Web> {
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let start = Web::empty();
    seen.insert(start.canonical_form());
    let mut frontier = vec![start];
    let mut found: BTreeMap<CanonicalForm, Web> = BTreeMap::new();
    while let Some(w) = frontier.pop() {
        if w.top() == eps {
            found.insert(w.canonical_form(), w.clone());
        }
        let cur = w.top().clone();
        for g in crate::reptheory::ALL_GENERATORS {
            if matches!(g, Generator::Id(_)) {
                continue;
            }
            let d = g.domain();
            for pos in 0..=cur.len().saturating_sub(d.len()) {
                if pos + d.len() > cur.len() || (0..d.len()).any(|k| cur[pos + k] != d[k]) {
                    continue;
                }
                let new_len = cur.len() - d.len() + g.codomain().len();
                if new_len > max_strands || w.vertex_count() + g.vertices() > max_vertices {
                    continue;
                }
                let level = Web::identity(&cur.splice(pos, cur.len() - pos, &[]))
                    .tensor(&g.web())
                    .tensor(&Web::identity(&cur.splice(0, pos + d.len(), &[])));
                let next = w.then(&level).expect("level matches strands");
                if next.is_non_elliptic() && seen.insert(next.canonical_form()) {
                    frontier.push(next);
                }
            }
        }
    }
    found.into_values().collect()
}

/// Two random members of `NE(ε)` closed up, with the script of the closure.
pub fn random_closed_pair(
    eps: &SignSequence,
    seed: u64,
) -> Result<(Web, SliceScript), EnumerationError> {
    let basis = enumerate_ne(eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = rng.gen_range(0..basis.len());
    let j = rng.gen_range(0..basis.len());
    let w = trace_close(&basis.webs[i], &basis.webs[j]).expect("same boundary");
    let s = basis.scripts[j]
        .then(&basis.scripts[i].conjugate())
        .expect("same boundary");
    Ok((w, s))
}

pub fn random_closed_web(eps: &SignSequence, seed: u64) -> Result<Web, EnumerationError> {
    Ok(random_closed_pair(eps, seed)?.0)
}

/// Default cache directory: `$SL3WEBS_CACHE_DIR`, else `$XDG_CACHE_HOME/sl3webs`,
/// else `~/.cache/sl3webs`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("SL3WEBS_CACHE_DIR") {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("sl3webs");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("sl3webs"),
        None => std::env::temp_dir().join("sl3webs"),
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    epsilon: String,
    webs: Vec<String>,
    scripts: Vec<String>,
}

fn cache_path(dir: &Path, eps: &SignSequence) -> PathBuf {
    let name: String = eps
        .iter()
        .map(|s| if s == Sign::Plus { 'p' } else { 'm' })
        .collect();
    dir.join(format!(
        "ne-{}.json",
        if name.is_empty() {
            "empty".to_string()
        } else {
            name
        }
    ))
}

/// `NE(ε)` through an on-disk cache. Cached entries are re-checked (count,
/// scripts redraw the stored webs) before use; bad entries are rebuilt.
pub fn enumerate_ne_cached(eps: &SignSequence, dir: &Path) -> Result<WebBasis, EnumerationError> {
    let path = cache_path(dir, eps);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(basis) = load_entry(&text, eps) {
            return Ok(basis);
        }
    }
    let basis = enumerate_ne(eps)?;
    std::fs::create_dir_all(dir)?;
    let entry = CacheEntry {
        epsilon: eps.to_string(),
        webs: basis.webs.iter().map(render_web).collect(),
        scripts: basis.scripts.iter().map(render_script).collect(),
    };
    let text = serde_json::to_string_pretty(&entry).expect("cache entry serialises");
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, &path)?;
    Ok(basis)
}

fn load_entry(text: &str, eps: &SignSequence) -> Result<WebBasis, String> {
    let entry: CacheEntry = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if entry.epsilon != eps.to_string() || entry.webs.len() != entry.scripts.len() {
        return Err("entry does not match".into());
    }
    if entry.webs.len() as u128 != count_invariants(eps) {
        return Err("wrong count".into());
    }
    let mut basis = WebBasis {
        epsilon: eps.clone(),
        webs: Vec::new(),
        scripts: Vec::new(),
    };
    for (w, s) in entry.webs.iter().zip(&entry.scripts) {
        let w = parse_web(w).map_err(|e| e.to_string())?;
        let s = parse_script(s).map_err(|e| e.to_string())?;
        let drawn = script_to_web(&s).map_err(|e| e.to_string())?;
        if w.top() != eps || !w.is_non_elliptic() || !drawn.is_isomorphic(&w) {
            return Err("stored web does not check out".into());
        }
        basis.webs.push(w);
        basis.scripts.push(s);
    }
    Ok(basis)
}
