//! Exhaustive enumeration of involutive solutions on small carriers.
//!
//! The search works on raw tables and knows only two facts: `s∘s = id` and
//! the pentagon identity on triples. Nothing about the structure theory of
//! solutions is assumed, so the class counts it produces are an independent
//! check of that theory.
//!
//! A table on `0..n` is a map on the `n²` cells `i·n + j`. Every cell carries
//! a domain of candidate values (a bitmask over the `n²` cells, hence the
//! `n ≤ 6` limit). For the triple `(x, y, z)` the pentagon identity reads
//!
//! ```text
//! s(x,y) = (p,q)   s(p,z) = (r,u)   s(q,u) = (v,w)      left side  (r, v, w)
//! s(y,z) = (c,d)   s(x,c) = (e,f)                       right side (e, f, d)
//! ```
//!
//! and propagation narrows domains whenever enough of these five entries
//! are known.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::analysis::{classify, ClassificationTriple};
use crate::error::{Error, Result};
use crate::isomorphism::{canonical_form, find_isomorphism};
use crate::solution::SolutionTable;

pub const MAX_NAIVE_SIZE: usize = 3;
pub const MAX_PRUNED_SIZE: usize = 6;

/// Number of branching decisions made before the tree is handed out to workers.
const SPLIT_DEPTH: usize = 2;

#[derive(Debug, Clone, Default)]
pub struct EnumerationOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    /// Wall-clock budget; `None` is unbounded.
    pub budget: Option<Duration>,
}

#[derive(Debug, Clone)]
pub struct EnumerationOutcome {
    pub size: usize,
    /// Sorted ascending.
    pub tables: Vec<SolutionTable>,
    /// `false` when the budget ran out; `tables` is then a strict prefix of the search.
    pub complete: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Every involution of the `n²` cells that satisfies the pentagon identity, by listing
/// all involutions and filtering.
pub fn enumerate_naive(n: usize) -> Result<Vec<SolutionTable>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MAX_NAIVE_SIZE {
        return Err(Error::UnsupportedSize { size: n, reason: "naive enumeration is limited to n ≤ 3" });
    }
    fn rec(cells: &mut Vec<Option<usize>>, n: usize, out: &mut Vec<SolutionTable>) {
        let Some(p) = cells.iter().position(Option::is_none) else {
            let flat: Vec<usize> = cells.iter().map(|c| c.expect("complete")).collect();
            let s = SolutionTable::from_cells(n, &flat);
            if s.check_pentagon() {
                out.push(s);
            }
            return;
        };
        cells[p] = Some(p);
        rec(cells, n, out);
        for q in p + 1..cells.len() {
            if cells[q].is_none() {
                cells[p] = Some(q);
                cells[q] = Some(p);
                rec(cells, n, out);
                cells[q] = None;
            }
        }
        cells[p] = None;
    }
    let mut out = Vec::new();
    rec(&mut vec![None; n * n], n, &mut out);
    out.sort();
    Ok(out)
}

#[derive(Clone)]
struct State {
    dom: Vec<u64>,
    /// Singleton cells whose involution partner has been propagated.
    paired: Vec<bool>,
}

struct Searcher {
    n: usize,
    first: Vec<u64>,
    second: Vec<u64>,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
    nodes: AtomicU64,
}

impl Searcher {
    fn new(n: usize, deadline: Option<Instant>) -> Self {
        let cells = n * n;
        let mut first = vec![0u64; n];
        let mut second = vec![0u64; n];
        for v in 0..cells {
            first[v / n] |= 1 << v;
            second[v % n] |= 1 << v;
        }
        Searcher { n, first, second, deadline, timed_out: AtomicBool::new(false), nodes: AtomicU64::new(0) }
    }

    fn root(&self) -> State {
        let cells = self.n * self.n;
        let all = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
        State { dom: vec![all; cells], paired: vec![false; cells] }
    }

    #[inline]
    fn known(&self, st: &State, cell: usize) -> Option<(usize, usize)> {
        let d = st.dom[cell];
        if d != 0 && d & (d - 1) == 0 {
            let v = d.trailing_zeros() as usize;
            Some((v / self.n, v % self.n))
        } else {
            None
        }
    }

    /// Intersects a domain; `false` on wipe-out.
    #[inline]
    fn restrict(st: &mut State, cell: usize, mask: u64, changed: &mut bool) -> bool {
        let d = st.dom[cell];
        let nd = d & mask;
        if nd != d {
            st.dom[cell] = nd;
            *changed = true;
        }
        nd != 0
    }

    fn propagate(&self, st: &mut State) -> bool {
        let n = self.n;
        let cells = n * n;
        let val = |k: usize, l: usize| 1u64 << (k * n + l);
        loop {
            let mut changed = false;
            // involution: s(p) = q forces s(q) = p and keeps p, q out of every other cell
            for p in 0..cells {
                if st.paired[p] {
                    continue;
                }
                let d = st.dom[p];
                if d & (d - 1) != 0 {
                    continue;
                }
                st.paired[p] = true;
                let q = d.trailing_zeros() as usize;
                if !Self::restrict(st, q, 1 << p, &mut changed) {
                    return false;
                }
                let clear = !((1u64 << p) | (1u64 << q));
                for r in 0..cells {
                    if r != p && r != q && !Self::restrict(st, r, clear, &mut changed) {
                        return false;
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let Some((p, q)) = self.known(st, x * n + y) else { continue };
                    for z in 0..n {
                        let e2 = self.known(st, p * n + z);
                        let e4 = self.known(st, y * n + z);
                        let e5 = e4.and_then(|(c, _)| self.known(st, x * n + c));
                        if let (Some((_, d)), Some((e, f))) = (e4, e5) {
                            if !Self::restrict(st, p * n + z, self.first[e], &mut changed) {
                                return false;
                            }
                            if let Some((_, u)) = e2 {
                                if !Self::restrict(st, q * n + u, val(f, d), &mut changed) {
                                    return false;
                                }
                            }
                        }
                        let Some((r, u)) = e2 else { continue };
                        if let Some((c, _)) = e4 {
                            if !Self::restrict(st, x * n + c, self.first[r], &mut changed) {
                                return false;
                            }
                        }
                        if let Some((v, w)) = self.known(st, q * n + u) {
                            if !Self::restrict(st, y * n + z, self.second[w], &mut changed) {
                                return false;
                            }
                            if let Some((c, _)) = e4 {
                                if !Self::restrict(st, x * n + c, val(r, v), &mut changed) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch_cell(&self, st: &State) -> Option<usize> {
        st.dom.iter().position(|&d| d & (d - 1) != 0)
    }

    fn children(&self, st: &State, cell: usize) -> Vec<State> {
        let mut out = Vec::new();
        let mut d = st.dom[cell];
        while d != 0 {
            let v = d.trailing_zeros();
            d &= d - 1;
            let mut child = st.clone();
            child.dom[cell] = 1 << v;
            if self.propagate(&mut child) {
                out.push(child);
            }
        }
        out
    }

    fn leaf(&self, st: &State) -> SolutionTable {
        let flat: Vec<usize> = st.dom.iter().map(|d| d.trailing_zeros() as usize).collect();
        SolutionTable::from_cells(self.n, &flat)
    }

    fn out_of_time(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed);
        if count % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&self, st: State, out: &mut Vec<SolutionTable>) {
        if self.out_of_time() {
            return;
        }
        match self.branch_cell(&st) {
            None => out.push(self.leaf(&st)),
            Some(cell) => {
                for child in self.children(&st, cell) {
                    self.dfs(child, out);
                }
            }
        }
    }

    /// Frontier after `depth` branching decisions, in lexicographic order; leaves reached earlier go to `done`.
    fn frontier(&self, depth: usize, done: &mut Vec<SolutionTable>) -> Vec<State> {
        let mut root = self.root();
        if !self.propagate(&mut root) {
            return Vec::new();
        }
        let mut level = vec![root];
        for _ in 0..depth {
            let mut next = Vec::new();
            for st in level {
                match self.branch_cell(&st) {
                    None => done.push(self.leaf(&st)),
                    Some(cell) => next.extend(self.children(&st, cell)),
                }
            }
            level = next;
        }
        level
    }
}

/// Backtracking enumeration with propagation; same solution set as [`enumerate_naive`].
pub fn enumerate_pruned(n: usize, opts: &EnumerationOptions) -> Result<EnumerationOutcome> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MAX_PRUNED_SIZE {
        return Err(Error::UnsupportedSize { size: n, reason: "pruned enumeration is limited to n ≤ 6" });
    }
    let start = Instant::now();
    let searcher = Searcher::new(n, opts.budget.map(|b| start + b));
    let mut tables = Vec::new();
    let frontier = searcher.frontier(SPLIT_DEPTH, &mut tables);
    let run = || -> Vec<SolutionTable> {
        frontier
            .into_par_iter()
            .map(|st| {
                let mut out = Vec::new();
                searcher.dfs(st, &mut out);
                out
            })
            .flatten()
            .collect()
    };
    let found = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    tables.extend(found);
    tables.sort();
    Ok(EnumerationOutcome {
        size: n,
        tables,
        complete: !searcher.timed_out.load(Ordering::Relaxed),
        nodes: searcher.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

/// `binom(k+2, 2)` where `2^k` is the largest power of two dividing `n`.
pub fn expected_count(n: usize) -> u64 {
    assert!(n >= 1, "carrier must be non-empty");
    let k = n.trailing_zeros() as u64;
    (k + 2) * (k + 1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub triple: ClassificationTriple,
    /// Number of raw tables in the class.
    pub members: usize,
    /// Lexicographically smallest table in the class.
    pub representative: SolutionTable,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub size: usize,
    pub raw_count: usize,
    pub class_count: usize,
    /// Sorted by classification triple.
    pub classes: Vec<IsoClass>,
    pub elapsed: Duration,
}

impl EnumerationReport {
    pub fn representatives(&self) -> impl Iterator<Item = &SolutionTable> {
        self.classes.iter().map(|c| &c.representative)
    }
}

/// Enumerates and groups into isomorphism classes two ways: by classification triple, and by
/// explicit isomorphism (search for `n ≤ 4`, canonical forms above). The two must agree.
pub fn count_up_to_iso(n: usize, opts: &EnumerationOptions) -> Result<EnumerationReport> {
    let start = Instant::now();
    let outcome = enumerate_pruned(n, opts)?;
    if !outcome.complete {
        return Err(Error::BudgetExceeded(format!(
            "enumeration of size {n} stopped after {} nodes with {} tables",
            outcome.nodes,
            outcome.tables.len()
        )));
    }
    let tables = outcome.tables;
    if let Some(bad) = tables.iter().find(|t| !(t.check_pentagon() && t.check_involutive())) {
        return Err(Error::Internal(format!("search emitted a non-solution: {bad:?}")));
    }
    let triples = tables.iter().map(classify).collect::<Result<Vec<_>>>()?;

    // explicit grouping
    let mut group_of = vec![0usize; tables.len()];
    let mut anchors: Vec<usize> = Vec::new();
    let mut forms: Vec<SolutionTable> = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        let found = if n <= 4 {
            let mut hit = None;
            for (g, &a) in anchors.iter().enumerate() {
                if find_isomorphism(&tables[a], t)?.is_some() {
                    hit = Some(g);
                    break;
                }
            }
            hit
        } else {
            let form = canonical_form(t)?;
            let hit = forms.iter().position(|f| *f == form);
            if hit.is_none() {
                forms.push(form);
            }
            hit
        };
        group_of[i] = found.unwrap_or_else(|| {
            anchors.push(i);
            anchors.len() - 1
        });
    }
    let mut classes = Vec::with_capacity(anchors.len());
    for (g, &anchor) in anchors.iter().enumerate() {
        let triple = triples[anchor];
        let members: Vec<usize> = (0..tables.len()).filter(|&i| group_of[i] == g).collect();
        if members.iter().any(|&i| triples[i] != triple) {
            return Err(Error::Internal(format!("isomorphism class {g} mixes classification triples")));
        }
        classes.push(IsoClass { triple, members: members.len(), representative: canonical_form(&tables[anchor])? });
    }
    classes.sort_by_key(|c| c.triple);
    if classes.windows(2).any(|w| w[0].triple == w[1].triple) {
        return Err(Error::Internal("two isomorphism classes share a classification triple".into()));
    }
    Ok(EnumerationReport {
        size: n,
        raw_count: tables.len(),
        class_count: classes.len(),
        classes,
        elapsed: start.elapsed(),
    })
}
