//! The structure monoid `M(S, τs) = ⟨S | x∘y = θ_x(y)∘(x·y)⟩` and its growth.
//!
//! All defining relations relate words of length two, so the congruence never
//! mixes lengths and each length is a finite closure problem. Two engines
//! solve it:
//!
//! * [`WordClosure`] runs union-find over all `n^ℓ` words of one length,
//!   linking every word to each single-position rewrite.
//! * [`StratifiedClosure`] builds length `ℓ` from the classes of length `ℓ-2`:
//!   a word `u·a·b` is represented by `(class(u), a, b)`. Rewrites inside the
//!   prefix `u·a` are already decided by the length `ℓ-1` classes and rewrites
//!   of the final pair are the relations themselves, so union-find over these
//!   `c_{ℓ-2}·n²` nodes is exact. This is what makes `ℓ = 10` cheap.
//!
//! The exhaustive engine is kept as the reference for the stratified one.

use crate::analysis::retract;
use crate::error::{Error, Result};
use crate::solution::SolutionTable;

/// Word budget per length for either engine.
pub const DEFAULT_MAX_WORDS: usize = 1 << 24;

/// Generators `0..n` with length-two relations, normalized so that `lhs ≤ rhs`, sorted, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: usize,
    relations: Vec<([usize; 2], [usize; 2])>,
}

impl MonoidPresentation {
    pub fn new(generators: usize, relations: impl IntoIterator<Item = ([usize; 2], [usize; 2])>) -> Result<Self> {
        if generators == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut rels: Vec<([usize; 2], [usize; 2])> = Vec::new();
        for (l, r) in relations {
            if let Some(&bad) = l.iter().chain(r.iter()).find(|&&v| v >= generators) {
                return Err(Error::OutOfRange { index: bad, size: generators });
            }
            rels.push(if l <= r { (l, r) } else { (r, l) });
        }
        rels.sort_unstable();
        rels.dedup();
        Ok(MonoidPresentation { generators, relations: rels })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[([usize; 2], [usize; 2])] {
        &self.relations
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &([usize; 2], [usize; 2])> {
        self.relations.iter().filter(|(l, r)| l != r)
    }

    /// For every pair `a·n + b`, the pairs it is related to.
    fn partners(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.generators;
        let mut adj = vec![Vec::new(); n * n];
        for &([a, b], [c, d]) in self.nontrivial() {
            adj[a * n + b].push((c, d));
            adj[c * n + d].push((a, b));
        }
        adj
    }
}

/// `x∘y = θ_x(y)∘(x·y)` for all `x, y`.
pub fn presentation_of(s: &SolutionTable) -> MonoidPresentation {
    let n = s.size();
    let rels = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| {
        let (xy, t) = s.apply(x, y);
        ([x, y], [t, xy])
    });
    MonoidPresentation::new(n, rels).expect("relations of a valid table are in range")
}

/// `counts[ℓ]` = number of congruence classes of words of length `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    pub counts: Vec<u64>,
}

impl GrowthSeries {
    /// `B(ℓ) = Σ_{k ≤ ℓ} c_k`.
    pub fn cumulative(&self) -> Vec<u64> {
        self.counts
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so that roots are class minima
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    /// Dense class ids in order of first occurrence, and the class count.
    fn labels(mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut id = vec![u32::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0u32;
        for x in 0..n as u32 {
            let r = self.find(x) as usize;
            if id[r] == u32::MAX {
                id[r] = next;
                next += 1;
            }
            out.push(id[r]);
        }
        (out, next as usize)
    }
}

fn words_of_length(n: usize, len: usize, max_words: usize) -> Result<usize> {
    let mut total = 1usize;
    for _ in 0..len {
        total = total
            .checked_mul(n)
            .filter(|&t| t <= max_words)
            .ok_or_else(|| Error::BudgetExceeded(format!("{n}^{len} words exceeds the budget of {max_words}")))?;
    }
    Ok(total)
}

/// Classes of all words of one length; word `w_0 … w_{ℓ-1}` is the base-`n` integer with `w_0` most significant.
#[derive(Debug, Clone)]
pub struct WordClosure {
    pub generators: usize,
    pub length: usize,
    pub class_of: Vec<u32>,
    pub count: usize,
}

impl WordClosure {
    pub fn compute(p: &MonoidPresentation, length: usize, max_words: usize) -> Result<Self> {
        let n = p.generators;
        let total = words_of_length(n, length, max_words)?;
        let partners = p.partners();
        let mut uf = UnionFind::new(total);
        let mut letters = vec![0usize; length];
        for w in 0..total {
            let mut rest = w;
            for i in (0..length).rev() {
                letters[i] = rest % n;
                rest /= n;
            }
            let mut place = total / n; // weight of position 0
            for i in 0..length.saturating_sub(1) {
                let (a, b) = (letters[i], letters[i + 1]);
                let (wa, wb) = (place, place / n);
                for &(c, d) in &partners[a * n + b] {
                    let other = w - a * wa - b * wb + c * wa + d * wb;
                    uf.union(w as u32, other as u32);
                }
                place /= n;
            }
        }
        let (class_of, count) = uf.labels();
        Ok(WordClosure { generators: n, length, class_of, count })
    }

    /// Smallest word of every class, sorted.
    pub fn normal_forms(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.count];
        let mut out = Vec::with_capacity(self.count);
        for (w, &c) in self.class_of.iter().enumerate() {
            if !std::mem::replace(&mut seen[c as usize], true) {
                out.push(decode(w as u128, self.generators, self.length));
            }
        }
        out
    }
}

fn decode(mut w: u128, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for i in (0..len).rev() {
        out[i] = (w % n as u128) as usize;
        w /= n as u128;
    }
    out
}

/// Growth by exhaustive closure at every length.
pub fn growth_series_exhaustive(p: &MonoidPresentation, max_len: usize, max_words: usize) -> Result<GrowthSeries> {
    let counts = (0..=max_len)
        .map(|len| WordClosure::compute(p, len, max_words).map(|c| c.count as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthSeries { counts })
}

#[derive(Debug, Clone)]
struct Stratum {
    count: usize,
    /// Smallest word of each class, base-`n`.
    min_word: Vec<u128>,
    /// `(class at previous length, letter) ↦ class here`; empty at length 0.
    right: Vec<u32>,
}

/// Length-by-length closure on `(class of prefix, last two letters)` nodes.
pub struct StratifiedClosure {
    generators: usize,
    partners: Vec<Vec<(usize, usize)>>,
    max_words: usize,
    /// Strata for the last two lengths computed, oldest first.
    window: Vec<Stratum>,
    length: usize,
}

impl StratifiedClosure {
    pub fn new(p: &MonoidPresentation, max_words: usize) -> Self {
        let empty = Stratum { count: 1, min_word: vec![0], right: Vec::new() };
        StratifiedClosure { generators: p.generators, partners: p.partners(), max_words, window: vec![empty], length: 0 }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn count(&self) -> usize {
        self.current().count
    }

    fn current(&self) -> &Stratum {
        self.window.last().expect("non-empty window")
    }

    /// Sorted smallest words of the classes at the current length.
    pub fn normal_forms(&self) -> Vec<Vec<usize>> {
        let mut words = self.current().min_word.clone();
        words.sort_unstable();
        words.into_iter().map(|w| decode(w, self.generators, self.length)).collect()
    }

    pub fn advance(&mut self) -> Result<()> {
        let n = self.generators;
        let next = if self.length == 0 {
            Stratum { count: n, min_word: (0..n as u128).collect(), right: (0..n as u32).collect() }
        } else {
            let older = &self.window[0];
            let newer = self.current();
            let nodes = older
                .count
                .checked_mul(n * n)
                .filter(|&t| t <= self.max_words && t <= u32::MAX as usize)
                .ok_or_else(|| Error::BudgetExceeded(format!("length {} needs more than {} nodes", self.length + 1, self.max_words)))?;
            let node = |c: usize, a: usize, b: usize| ((c * n + a) * n + b) as u32;
            let mut uf = UnionFind::new(nodes);
            // rewrites of the last pair
            for c in 0..older.count {
                for a in 0..n {
                    for b in 0..n {
                        for &(a2, b2) in &self.partners[a * n + b] {
                            uf.union(node(c, a, b), node(c, a2, b2));
                        }
                    }
                }
            }
            // rewrites inside the prefix: equal prefix class at the previous length
            let mut anchor = vec![u32::MAX; newer.count * n];
            for c in 0..older.count {
                for a in 0..n {
                    let prefix = newer.right[c * n + a] as usize;
                    for b in 0..n {
                        let slot = &mut anchor[prefix * n + b];
                        if *slot == u32::MAX {
                            *slot = node(c, a, b);
                        } else {
                            uf.union(*slot, node(c, a, b));
                        }
                    }
                }
            }
            let (class_of, count) = uf.labels();
            let mut min_word = vec![u128::MAX; count];
            let mut right = vec![u32::MAX; newer.count * n];
            let n2 = (n * n) as u128;
            for c in 0..older.count {
                for a in 0..n {
                    let prefix = newer.right[c * n + a] as usize;
                    for b in 0..n {
                        let k = class_of[node(c, a, b) as usize];
                        let w = older.min_word[c] * n2 + (a * n + b) as u128;
                        let slot = &mut min_word[k as usize];
                        *slot = (*slot).min(w);
                        right[prefix * n + b] = k;
                    }
                }
            }
            Stratum { count, min_word, right }
        };
        self.window.push(next);
        if self.window.len() > 2 {
            self.window.remove(0);
        }
        self.length += 1;
        Ok(())
    }
}

/// Class counts for lengths `0..=max_len` of an arbitrary length-two presentation.
pub fn growth_series_of(p: &MonoidPresentation, max_len: usize, max_words: usize) -> Result<GrowthSeries> {
    let mut engine = StratifiedClosure::new(p, max_words);
    let mut counts = vec![engine.count() as u64];
    while engine.length() < max_len {
        engine.advance()?;
        counts.push(engine.count() as u64);
    }
    Ok(GrowthSeries { counts })
}

pub fn growth_series(s: &SolutionTable, max_len: usize) -> Result<GrowthSeries> {
    growth_series_of(&presentation_of(s), max_len, DEFAULT_MAX_WORDS)
}

/// Smallest word of each class of length `len`, sorted.
pub fn normal_forms(s: &SolutionTable, len: usize) -> Result<Vec<Vec<usize>>> {
    let mut engine = StratifiedClosure::new(&presentation_of(s), DEFAULT_MAX_WORDS);
    while engine.length() < len {
        engine.advance()?;
    }
    Ok(engine.normal_forms())
}

/// `|E(S)| / |Ret(S, s)|` for an involutive solution.
pub fn rank_expected(s: &SolutionTable) -> Result<usize> {
    let ret = retract(s)?.quotient.size();
    let (m, _) = s.derive_tables();
    let e = m.idempotents().len();
    if e % ret != 0 {
        return Err(Error::Internal(format!("|Ret| = {ret} does not divide |E(S)| = {e}")));
    }
    Ok(e / ret)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeEstimate {
    /// `B(ℓ)` agrees with a polynomial of this degree from `onset` on.
    Polynomial { degree: usize, onset: usize },
    /// No difference order became constant over three or more trailing values.
    Inconclusive,
}

impl DegreeEstimate {
    pub fn degree(&self) -> Option<usize> {
        match *self {
            DegreeEstimate::Polynomial { degree, .. } => Some(degree),
            DegreeEstimate::Inconclusive => None,
        }
    }
}

/// Minimum number of equal trailing values required of a difference sequence.
pub const STABLE_RUN: usize = 3;

/// Smallest `d` whose `d`-th difference of the cumulative counts ends in a constant run of at least three.
pub fn estimate_growth_degree(g: &GrowthSeries) -> DegreeEstimate {
    let mut diffs: Vec<i128> = g.cumulative().into_iter().map(i128::from).collect();
    let mut degree = 0;
    while diffs.len() >= STABLE_RUN {
        let last = *diffs.last().expect("non-empty");
        let run = diffs.iter().rev().take_while(|&&v| v == last).count();
        if run >= STABLE_RUN {
            return DegreeEstimate::Polynomial { degree, onset: diffs.len() - run };
        }
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        degree += 1;
    }
    DegreeEstimate::Inconclusive
}
