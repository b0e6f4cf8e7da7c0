//! The solution families: groups, irretractable solutions on `C2^r`,
//! extensions `Ext_X^σ(A, t_A)`, canonical products `X × A × G`,
//! endomorphism and idempotent-pair solutions, and cycle solutions `E × G`.
//!
//! Product carriers are encoded row-major in the declared factor order,
//! e.g. `(x, a, g) ↦ (x·2^a_dim + a)·2^g_dim + g`. This encoding is stable.

use crate::error::{Error, Result};
use crate::group::{all_permutations, GroupTable};
use crate::solution::{product_solution, Bijection, MultTable, SolutionTable};

/// `σ: A → Sym(X)`, one permutation of `0..x_size` per element of `C2^a_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaMap {
    x_size: usize,
    a_dim: u32,
    perms: Vec<Bijection>,
}

impl SigmaMap {
    pub fn new(x_size: usize, a_dim: u32, perms: Vec<Bijection>) -> Result<Self> {
        if perms.len() != 1 << a_dim {
            return Err(Error::DimensionMismatch(format!(
                "sigma has {} permutations, A has {} elements",
                perms.len(),
                1usize << a_dim
            )));
        }
        if let Some(p) = perms.iter().find(|p| p.len() != x_size) {
            return Err(Error::DimensionMismatch(format!("permutation on {} points, |X| = {x_size}", p.len())));
        }
        Ok(SigmaMap { x_size, a_dim, perms })
    }

    pub fn identity(x_size: usize, a_dim: u32) -> Self {
        SigmaMap { x_size, a_dim, perms: vec![Bijection::identity(x_size); 1 << a_dim] }
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn a_dim(&self) -> u32 {
        self.a_dim
    }

    pub fn get(&self, a: usize) -> &Bijection {
        &self.perms[a]
    }

    pub fn perms(&self) -> &[Bijection] {
        &self.perms
    }
}

/// `S = X × A × G` with `|X| = x_size`, `A = C2^a_dim`, `G = C2^g_dim`, plus an optional `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub x_size: usize,
    pub a_dim: u32,
    pub g_dim: u32,
    pub sigma: Option<SigmaMap>,
}

impl Decomposition {
    pub fn new(x_size: usize, a_dim: u32, g_dim: u32) -> Result<Self> {
        if x_size == 0 {
            return Err(Error::EmptyCarrier);
        }
        Ok(Decomposition { x_size, a_dim, g_dim, sigma: None })
    }

    pub fn with_sigma(mut self, sigma: SigmaMap) -> Result<Self> {
        if sigma.x_size != self.x_size || sigma.a_dim != self.a_dim {
            return Err(Error::DimensionMismatch(format!(
                "sigma is for |X| = {}, dim A = {}; decomposition has |X| = {}, dim A = {}",
                sigma.x_size, sigma.a_dim, self.x_size, self.a_dim
            )));
        }
        self.sigma = Some(sigma);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.x_size << (self.a_dim + self.g_dim)
    }
}

/// `s(x, y) = (xy, y)` on a group.
pub fn group_solution(g: &GroupTable) -> SolutionTable {
    SolutionTable::from_fn(g.size(), |x, y| (g.op(x, y), y)).expect("group carrier is non-empty")
}

/// `t(x, y) = (x, x + y)` on `C2^r`.
pub fn irretractable_solution(r: u32) -> SolutionTable {
    SolutionTable::from_fn(1 << r, |x, y| (x, x ^ y)).expect("non-empty")
}

/// `Ext_X^σ(A, t_A)`: `s((x,a),(y,b)) = ((x,a), (σ_{a+b} σ_b⁻¹(y), a+b))`, index `x·2^a_dim + a`.
pub fn ext_solution(d: &Decomposition) -> Result<SolutionTable> {
    if d.x_size == 0 {
        return Err(Error::EmptyCarrier);
    }
    if d.g_dim != 0 {
        return Err(Error::DimensionMismatch("extension requires g_dim = 0".into()));
    }
    let sigma = match &d.sigma {
        Some(s) if s.x_size != d.x_size || s.a_dim != d.a_dim => {
            return Err(Error::DimensionMismatch("sigma does not match the decomposition".into()))
        }
        Some(s) => s.clone(),
        None => SigmaMap::identity(d.x_size, d.a_dim),
    };
    let na = 1usize << d.a_dim;
    let inverses: Vec<Bijection> = sigma.perms.iter().map(Bijection::inverse).collect();
    SolutionTable::from_fn(d.x_size * na, |u, v| {
        let (a, y, b) = (u % na, v / na, v % na);
        let c = a ^ b;
        let y2 = sigma.get(c).apply(inverses[b].apply(y));
        (u, y2 * na + c)
    })
}

/// `Ext_X^σ(A, t_A) × (G, s_G)` for a full decomposition, index row-major over `(x, a, g)`.
pub fn decomposition_solution(d: &Decomposition) -> Result<SolutionTable> {
    let left = ext_solution(&Decomposition { g_dim: 0, ..d.clone() })?;
    Ok(product_solution(&left, &group_solution(&GroupTable::elementary(d.g_dim))))
}

/// `s((x,a,g),(y,b,h)) = ((x,a,g·h),(y,a+b,h))`, the representative of the class `(x_size, a_dim, g_dim)`.
pub fn canonical_solution(x_size: usize, a_dim: u32, g_dim: u32) -> Result<SolutionTable> {
    if x_size == 0 {
        return Err(Error::EmptyCarrier);
    }
    let (na, ng) = (1usize << a_dim, 1usize << g_dim);
    let split = |u: usize| (u / (na * ng), (u / ng) % na, u % ng);
    let join = |x: usize, a: usize, g: usize| (x * na + a) * ng + g;
    SolutionTable::from_fn(x_size * na * ng, |u, v| {
        let (x, a, g) = split(u);
        let (y, b, h) = split(v);
        (join(x, a, g ^ h), join(y, a ^ b, h))
    })
}

/// `s(x, y) = (xy, f(y))` for an idempotent endomorphism `f` of a semigroup.
pub fn endo_solution(m: &MultTable, f: &[usize]) -> Result<SolutionTable> {
    m.require_associative()?;
    let n = m.size();
    if f.len() != n {
        return Err(Error::WrongLength { expected: n, found: f.len() });
    }
    if let Some(&bad) = f.iter().find(|&&v| v >= n) {
        return Err(Error::OutOfRange { index: bad, size: n });
    }
    if (0..n).any(|x| f[f[x]] != f[x]) {
        return Err(Error::NotIdempotentEndomorphism("f∘f ≠ f".into()));
    }
    if !m.is_endomorphism(f) {
        return Err(Error::NotIdempotentEndomorphism("f(xy) ≠ f(x)f(y)".into()));
    }
    SolutionTable::from_fn(n, |x, y| (m.get(x, y), f[y]))
}

/// `s(x, y) = (f(x), g(y))` for commuting idempotent maps.
pub fn idempotent_pair_solution(n: usize, f: &[usize], g: &[usize]) -> Result<SolutionTable> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    for map in [f, g] {
        if map.len() != n {
            return Err(Error::WrongLength { expected: n, found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { index: bad, size: n });
        }
    }
    if (0..n).any(|x| f[f[x]] != f[x]) {
        return Err(Error::NotCommutingIdempotents("f is not idempotent".into()));
    }
    if (0..n).any(|x| g[g[x]] != g[x]) {
        return Err(Error::NotCommutingIdempotents("g is not idempotent".into()));
    }
    if (0..n).any(|x| f[g[x]] != g[f[x]]) {
        return Err(Error::NotCommutingIdempotents("f∘g ≠ g∘f".into()));
    }
    SolutionTable::from_fn(n, |x, y| (f[x], g[y]))
}

/// Checks `σ^{σ(i)+1} = σ^i` for every label `i ∈ 1..=n`, exponents taken literally.
/// Returns the first failing 1-based label.
pub fn sigma_condition_witness(sigma: &Bijection) -> Option<usize> {
    let n = sigma.len();
    // powers[k] = σ^k for k up to n + 1, the largest exponent that occurs
    let mut powers = Vec::with_capacity(n + 2);
    powers.push(Bijection::identity(n));
    for k in 1..=n + 1 {
        let next = sigma.compose(&powers[k - 1]);
        powers.push(next);
    }
    (1..=n).find(|&label| {
        let image_label = sigma.apply(label - 1) + 1;
        powers[image_label + 1] != powers[label]
    })
}

/// `s((i,a),(j,b)) = ((i, ab), (σ^i(j), b))` on `E × G`, `E = {1..n}` stored as `0..n`,
/// index `(i-1)·|G| + a`.
pub fn cycle_solution(sigma: &Bijection, g: &GroupTable) -> Result<SolutionTable> {
    if sigma.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    if let Some(label) = sigma_condition_witness(sigma) {
        return Err(Error::SigmaCondition { label });
    }
    let ng = g.size();
    let n = sigma.len();
    // σ^label for the labels 1..=n
    let powers: Vec<Bijection> = (1..=n).map(|label| sigma.pow(label)).collect();
    SolutionTable::from_fn(n * ng, |u, v| {
        let (i, a) = (u / ng, u % ng);
        let (j, b) = (v / ng, v % ng);
        (i * ng + g.op(a, b), powers[i].apply(j) * ng + b)
    })
}

/// All `σ ∈ Sym(n)` with `σ^{σ(i)+1} = σ^i` for every `i`, in lexicographic order of images.
pub fn sigma_search(n: usize) -> Vec<Bijection> {
    all_permutations(n).into_iter().filter(|p| sigma_condition_witness(p).is_none()).collect()
}
