//! Finite quadratic sets `(S, s)` and the axiom predicates on them.
//!
//! Elements of `S` are the dense indices `0..n`. A [`SolutionTable`] stores
//! `s(i, j) = (k, l)` for every input pair in lexicographic `(i, j)` order.
//! Writing `s(x, y) = (x·y, θ_x(y))`, the two projections are exposed as a
//! [`MultTable`] and a [`ThetaFamily`].
//!
//! On `S³` the three lifts of `s` are
//!
//! * `s12(x, y, z) = (s(x, y), z)`
//! * `s23(x, y, z) = (x, s(y, z))`
//! * `s13 = (τ × id)(id × s)(τ × id)`, i.e. `s13(x, y, z) = (x·z, y, θ_x(z))`
//!
//! and every predicate below compares two composites of these lifts on all
//! triples. None of them fail on malformed algebra: they answer `false`.

use crate::error::{Error, Result};

/// A permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bijection {
    images: Vec<usize>,
}

impl Bijection {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::NotAPermutation { size: n });
            }
            seen[v] = true;
        }
        Ok(Bijection { images })
    }

    pub fn identity(n: usize) -> Self {
        Bijection { images: (0..n).collect() }
    }

    /// Permutation from disjoint cycles over `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &from) in cycle.iter().enumerate() {
                let to = cycle[(i + 1) % cycle.len()];
                if from >= n || to >= n {
                    return Err(Error::OutOfRange { index: from.max(to), size: n });
                }
                images[from] = to;
            }
        }
        Bijection::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Bijection { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Bijection) -> Self {
        Bijection { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    /// `self^k` by repeated composition.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Bijection::identity(self.len());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, lcm)
    }

    /// Cycle lengths, sorted ascending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    /// Cycle notation with 1-based labels, fixed points omitted; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.images[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// The first projection `x·y` of a solution, or any binary operation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultTable {
    size: usize,
    mul: Vec<usize>,
}

impl MultTable {
    pub fn new(size: usize, mul: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if mul.len() != size * size {
            return Err(Error::WrongLength { expected: size * size, found: mul.len() });
        }
        if let Some(&bad) = mul.iter().find(|&&v| v >= size) {
            return Err(Error::OutOfRange { index: bad, size });
        }
        Ok(MultTable { size, mul })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mul = (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        MultTable::new(size, mul)
    }

    /// `x·y = x`.
    pub fn left_zero(size: usize) -> Result<Self> {
        MultTable::from_fn(size, |x, _| x)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mul
    }

    /// First triple violating `(xy)z = x(yz)`, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                for z in 0..n {
                    if self.get(xy, z) != self.get(x, self.get(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn require_associative(&self) -> Result<()> {
        match self.associativity_witness() {
            Some((x, y, z)) => Err(Error::NotAssociative(x, y, z)),
            None => Ok(()),
        }
    }

    /// Idempotents `e = e·e` in increasing order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&e| self.get(e, e) == e).collect()
    }

    /// Whether `f` is an endomorphism: `f(xy) = f(x)f(y)`.
    pub fn is_endomorphism(&self, f: &[usize]) -> bool {
        let n = self.size;
        f.len() == n
            && f.iter().all(|&v| v < n)
            && (0..n).all(|x| (0..n).all(|y| f[self.get(x, y)] == self.get(f[x], f[y])))
    }
}

/// The second projection: for each `x` the map `y ↦ θ_x(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaFamily {
    size: usize,
    theta: Vec<usize>,
}

impl ThetaFamily {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.theta[x * self.size + y]
    }

    /// The table of `θ_x` as a slice indexed by `y`.
    pub fn map(&self, x: usize) -> &[usize] {
        &self.theta[x * self.size..(x + 1) * self.size]
    }

    pub fn is_bijective(&self, x: usize) -> bool {
        let mut seen = vec![false; self.size];
        self.map(x).iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_identity(&self, x: usize) -> bool {
        self.map(x).iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn fixed_points(&self, x: usize) -> usize {
        self.map(x).iter().enumerate().filter(|(i, &v)| *i == v).count()
    }
}

/// Violation of an identity between two composites on `S³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleWitness {
    pub triple: [usize; 3],
    pub lhs: [usize; 3],
    pub rhs: [usize; 3],
}

/// A total map `s: S×S → S×S` on `S = 0..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolutionTable {
    size: usize,
    entries: Vec<(usize, usize)>,
}

impl SolutionTable {
    pub fn new(size: usize, entries: Vec<(usize, usize)>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if entries.len() != size * size {
            return Err(Error::WrongLength { expected: size * size, found: entries.len() });
        }
        for &(k, l) in &entries {
            if k >= size || l >= size {
                return Err(Error::OutOfRange { index: k.max(l), size });
            }
        }
        Ok(SolutionTable { size, entries })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<Self> {
        let entries = (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        SolutionTable::new(size, entries)
    }

    /// The identity map on `S×S`.
    pub fn identity(size: usize) -> Result<Self> {
        SolutionTable::from_fn(size, |x, y| (x, y))
    }

    /// The flip `τ(x, y) = (y, x)`.
    pub fn flip(size: usize) -> Result<Self> {
        SolutionTable::from_fn(size, |x, y| (y, x))
    }

    /// Table from the encoded form used by the enumerator: cell `i·n+j` holds `k·n+l`.
    pub(crate) fn from_cells(size: usize, cells: &[usize]) -> Self {
        let entries = cells.iter().map(|&v| (v / size, v % size)).collect();
        SolutionTable { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.entries[x * self.size + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.apply(x, y).0
    }

    #[inline]
    pub fn theta(&self, x: usize, y: usize) -> usize {
        self.apply(x, y).1
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size;
        self.entries.iter().enumerate().all(|(p, &(k, l))| (k, l) == (p / n, p % n))
    }

    pub fn derive_tables(&self) -> (MultTable, ThetaFamily) {
        let mul = self.entries.iter().map(|e| e.0).collect();
        let theta = self.entries.iter().map(|e| e.1).collect();
        (MultTable { size: self.size, mul }, ThetaFamily { size: self.size, theta })
    }

    /// `τ s τ`.
    pub fn flip_conjugate(&self) -> Self {
        SolutionTable::from_fn(self.size, |x, y| {
            let (k, l) = self.apply(y, x);
            (l, k)
        })
        .expect("same carrier")
    }

    /// `self ∘ other` as maps on `S×S`.
    pub fn compose(&self, other: &SolutionTable) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(self.size, other.size));
        }
        Ok(SolutionTable::from_fn(self.size, |x, y| {
            let (k, l) = other.apply(x, y);
            self.apply(k, l)
        })
        .expect("same carrier"))
    }

    /// The table of `f × f ∘ s ∘ (f × f)⁻¹`; `f` is then an isomorphism from `self` onto the result.
    pub fn relabel(&self, f: &Bijection) -> Result<Self> {
        if f.len() != self.size {
            return Err(Error::SizeMismatch(self.size, f.len()));
        }
        let n = self.size;
        let mut entries = vec![(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                let (k, l) = self.apply(x, y);
                entries[f.apply(x) * n + f.apply(y)] = (f.apply(k), f.apply(l));
            }
        }
        Ok(SolutionTable { size: n, entries })
    }

    #[inline]
    fn on12(&self, [x, y, z]: [usize; 3]) -> [usize; 3] {
        let (a, b) = self.apply(x, y);
        [a, b, z]
    }

    #[inline]
    fn on23(&self, [x, y, z]: [usize; 3]) -> [usize; 3] {
        let (b, c) = self.apply(y, z);
        [x, b, c]
    }

    #[inline]
    fn on13(&self, [x, y, z]: [usize; 3]) -> [usize; 3] {
        let (a, c) = self.apply(x, z);
        [a, y, c]
    }

    fn first_violation(&self, lhs: impl Fn([usize; 3]) -> [usize; 3], rhs: impl Fn([usize; 3]) -> [usize; 3]) -> Option<TripleWitness> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = [x, y, z];
                    let (l, r) = (lhs(t), rhs(t));
                    if l != r {
                        return Some(TripleWitness { triple: t, lhs: l, rhs: r });
                    }
                }
            }
        }
        None
    }

    /// First triple where `s23 s13 s12 ≠ s12 s23`.
    pub fn pentagon_witness(&self) -> Option<TripleWitness> {
        self.first_violation(|t| self.on23(self.on13(self.on12(t))), |t| self.on12(self.on23(t)))
    }

    pub fn check_pentagon(&self) -> bool {
        self.pentagon_witness().is_none()
    }

    /// The pentagon equation through the three identities on `(·, θ)`:
    /// associativity, `θ_x(y)·θ_{xy}(z) = θ_x(yz)` and `θ_{θ_x(y)} θ_{xy} = θ_y`.
    pub fn satisfies_pentagon_identities(&self) -> bool {
        let n = self.size;
        let (m, th) = self.derive_tables();
        for x in 0..n {
            for y in 0..n {
                let xy = m.get(x, y);
                let txy = th.get(x, y);
                for z in 0..n {
                    if m.get(xy, z) != m.get(x, m.get(y, z))
                        || m.get(txy, th.get(xy, z)) != th.get(x, m.get(y, z))
                        || th.get(txy, th.get(xy, z)) != th.get(y, z)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// First triple where `s12 s13 s23 ≠ s23 s12`.
    pub fn reversed_pentagon_witness(&self) -> Option<TripleWitness> {
        self.first_violation(|t| self.on12(self.on13(self.on23(t))), |t| self.on23(self.on12(t)))
    }

    pub fn check_reversed_pentagon(&self) -> bool {
        self.reversed_pentagon_witness().is_none()
    }

    /// The reversed pentagon equation through `xy = (xθ_y(z))(yz)`,
    /// `θ_{xθ_y(z)}(yz) = θ_x(y)z` and `θ_{θ_x(y)} = θ_x θ_y`.
    pub fn satisfies_reversed_pentagon_identities(&self) -> bool {
        let n = self.size;
        let (m, th) = self.derive_tables();
        for x in 0..n {
            for y in 0..n {
                let txy = th.get(x, y);
                for z in 0..n {
                    let tyz = th.get(y, z);
                    let yz = m.get(y, z);
                    let x_tyz = m.get(x, tyz);
                    if m.get(x_tyz, yz) != m.get(x, y)
                        || th.get(x_tyz, yz) != m.get(txy, z)
                        || th.get(txy, z) != th.get(x, tyz)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn check_involutive(&self) -> bool {
        let n = self.size;
        self.entries.iter().enumerate().all(|(p, &(k, l))| self.apply(k, l) == (p / n, p % n))
    }

    pub fn check_bijective(&self) -> bool {
        let n = self.size;
        let mut seen = vec![false; n * n];
        self.entries.iter().all(|&(k, l)| !std::mem::replace(&mut seen[k * n + l], true))
    }

    /// Smallest `m ≤ cap` with `s^m = id`.
    pub fn order_of(&self, cap: usize) -> Option<usize> {
        if !self.check_bijective() {
            return None;
        }
        let n = self.size;
        // Track the orbit of every cell at once.
        let mut cur: Vec<usize> = (0..n * n).collect();
        for m in 1..=cap {
            for c in cur.iter_mut() {
                let (k, l) = self.entries[*c];
                *c = k * n + l;
            }
            if cur.iter().enumerate().all(|(p, &c)| p == c) {
                return Some(m);
            }
        }
        None
    }

    /// `s12 s13 = s13 s12`.
    pub fn check_commutative(&self) -> bool {
        self.first_violation(|t| self.on12(self.on13(t)), |t| self.on13(self.on12(t))).is_none()
    }

    /// `s13 s23 = s23 s13`.
    pub fn check_cocommutative(&self) -> bool {
        self.first_violation(|t| self.on13(self.on23(t)), |t| self.on23(self.on13(t))).is_none()
    }
}

/// Whether `f: 0..n → 0..n'` satisfies `(f×f)s = s'(f×f)`.
pub fn is_morphism(f: &[usize], s: &SolutionTable, target: &SolutionTable) -> bool {
    let n = s.size();
    if f.len() != n || f.iter().any(|&v| v >= target.size()) {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (k, l) = s.apply(x, y);
            target.apply(f[x], f[y]) == (f[k], f[l])
        })
    })
}

/// The product solution on `S1 × S2`, index `i1·n2 + i2`.
pub fn product_solution(s1: &SolutionTable, s2: &SolutionTable) -> SolutionTable {
    let n2 = s2.size();
    SolutionTable::from_fn(s1.size() * n2, |x, y| {
        let (a1, b1) = s1.apply(x / n2, y / n2);
        let (a2, b2) = s2.apply(x % n2, y % n2);
        (a1 * n2 + a2, b1 * n2 + b2)
    })
    .expect("product of valid tables")
}
