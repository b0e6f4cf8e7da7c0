//! Structure of involutive solutions: the retract `x ∼ y ⟺ θ_x = θ_y`,
//! the group `x + y = θ_x(y)` on irretractable solutions, the left-group
//! decomposition of the underlying semigroup, and the classification triple
//! `(|X|, dim A, dim G)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::solution::{MultTable, SolutionTable};

fn require_involutive_solution(s: &SolutionTable) -> Result<()> {
    if s.check_involutive() && s.check_pentagon() {
        Ok(())
    } else {
        Err(Error::NotInvolutiveSolution)
    }
}

/// The quotient by `θ_x = θ_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractResult {
    pub quotient: SolutionTable,
    /// Class of every element; classes numbered by their smallest member.
    pub class_of: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

/// Classes of `θ_x = θ_y`, numbered in order of smallest member.
fn theta_classes(s: &SolutionTable) -> (Vec<usize>, Vec<usize>) {
    let n = s.size();
    let (_, theta) = s.derive_tables();
    let mut ids: HashMap<&[usize], usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(n);
    let mut reps = Vec::new();
    for x in 0..n {
        let next = ids.len();
        let id = *ids.entry(theta.map(x)).or_insert_with(|| {
            reps.push(x);
            next
        });
        class_of.push(id);
    }
    (class_of, reps)
}

pub fn retract(s: &SolutionTable) -> Result<RetractResult> {
    require_involutive_solution(s)?;
    let (class_of, reps) = theta_classes(s);
    let k = reps.len();
    let mut class_sizes = vec![0; k];
    for &c in &class_of {
        class_sizes[c] += 1;
    }
    let quotient = SolutionTable::from_fn(k, |a, b| (a, class_of[s.theta(reps[a], reps[b])]))?;
    Ok(RetractResult { quotient, class_of, class_sizes })
}

/// All `θ_x` pairwise distinct.
pub fn is_irretractable(s: &SolutionTable) -> Result<bool> {
    require_involutive_solution(s)?;
    Ok(theta_classes(s).1.len() == s.size())
}

/// Sizes of the iterated retracts, starting with `|S|` and stopping once the size repeats.
pub fn retract_tower(s: &SolutionTable) -> Result<Vec<usize>> {
    let mut sizes = vec![s.size()];
    let mut cur = s.clone();
    loop {
        let next = retract(&cur)?.quotient;
        let done = next.size() == cur.size();
        sizes.push(next.size());
        if done {
            return Ok(sizes);
        }
        cur = next;
    }
}

/// The elementary abelian 2-group `x + y = θ_x(y)` on an irretractable solution.
pub fn abelian_structure(s: &SolutionTable) -> Result<GroupTable> {
    if !is_irretractable(s)? {
        return Err(Error::NotIrretractable);
    }
    let n = s.size();
    let cayley: Vec<usize> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| s.theta(x, y)).collect();
    let g = GroupTable::new(n, cayley)?;
    if !g.is_elementary_abelian_2() {
        return Err(Error::Internal("θ-addition is not elementary abelian".into()));
    }
    let (_, theta) = s.derive_tables();
    if !theta.is_identity(g.identity()) {
        return Err(Error::Internal("group identity does not have θ = id".into()));
    }
    Ok(g)
}

/// `S ≅ E × G` with `E` the idempotents (a left zero band) and `G ≅ eSe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftGroupDecomposition {
    pub idempotents: Vec<usize>,
    /// `eSe` for the smallest idempotent `e`, in increasing order of element index.
    pub group_elements: Vec<usize>,
    /// Cayley table of `eSe`, indexed by positions in `group_elements`.
    pub group_part: GroupTable,
}

/// `Some` iff the semigroup is a left group.
pub fn left_group_decomposition(m: &MultTable) -> Result<Option<LeftGroupDecomposition>> {
    m.require_associative()?;
    let n = m.size();
    let idempotents = m.idempotents();
    let Some(&e) = idempotents.first() else { return Ok(None) };
    if idempotents.iter().any(|&f| idempotents.iter().any(|&h| m.get(f, h) != f)) {
        return Ok(None);
    }
    let mut group_elements: Vec<usize> = (0..n).map(|x| m.get(m.get(e, x), e)).collect();
    group_elements.sort_unstable();
    group_elements.dedup();
    let pos = |x: usize| group_elements.binary_search(&x).ok();
    let k = group_elements.len();
    let mut cayley = Vec::with_capacity(k * k);
    for &a in &group_elements {
        for &b in &group_elements {
            cayley.push(pos(m.get(a, b)).expect("eSe is closed"));
        }
    }
    let Ok(group_part) = GroupTable::new(k, cayley) else { return Ok(None) };
    if idempotents.len() * k != n {
        return Ok(None);
    }
    // (f, g) ↦ f·g must be a bijection E × G → S respecting (f1,g1)(f2,g2) = (f1, g1 g2).
    let mut seen = vec![false; n];
    for &f in &idempotents {
        for &g in &group_elements {
            let x = m.get(f, g);
            if std::mem::replace(&mut seen[x], true) {
                return Ok(None);
            }
        }
    }
    for &f1 in &idempotents {
        for &g1 in &group_elements {
            for &f2 in &idempotents {
                for &g2 in &group_elements {
                    if m.get(m.get(f1, g1), m.get(f2, g2)) != m.get(f1, m.get(g1, g2)) {
                        return Ok(None);
                    }
                }
            }
        }
    }
    Ok(Some(LeftGroupDecomposition { idempotents, group_elements, group_part }))
}

/// No proper two-sided ideals: `x ∈ S¹ y S¹` for all `x, y`.
pub fn check_simple(m: &MultTable) -> Result<bool> {
    m.require_associative()?;
    let n = m.size();
    for y in 0..n {
        let mut ideal = vec![false; n];
        ideal[y] = true;
        for a in 0..n {
            let ay = m.get(a, y);
            ideal[ay] = true;
            ideal[m.get(y, a)] = true;
            for b in 0..n {
                ideal[m.get(ay, b)] = true;
            }
        }
        if ideal.iter().any(|&inside| !inside) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(|X|, dim A, dim G)` with `|S| = |X|·2^(dim A)·2^(dim G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassificationTriple {
    pub x_size: usize,
    pub a_dim: u32,
    pub g_dim: u32,
}

impl ClassificationTriple {
    pub fn size(&self) -> usize {
        self.x_size << (self.a_dim + self.g_dim)
    }
}

impl std::fmt::Display for ClassificationTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.x_size, self.a_dim, self.g_dim)
    }
}

fn exact_log2(v: usize, what: &str) -> Result<u32> {
    if v.is_power_of_two() {
        Ok(v.trailing_zeros())
    } else {
        Err(Error::Internal(format!("{what} = {v} is not a power of two")))
    }
}

pub fn classify(s: &SolutionTable) -> Result<ClassificationTriple> {
    let ret = retract(s)?;
    let n = s.size();
    let a_dim = exact_log2(ret.quotient.size(), "|Ret(S,s)|")?;
    let (m, _) = s.derive_tables();
    let e = m.idempotents().len();
    if e == 0 || n % e != 0 {
        return Err(Error::Internal(format!("|E(S)| = {e} does not divide |S| = {n}")));
    }
    let g_dim = exact_log2(n / e, "|S|/|E(S)|")?;
    if e % (1 << a_dim) != 0 {
        return Err(Error::Internal(format!("|Ret| does not divide |E(S)| = {e}")));
    }
    Ok(ClassificationTriple { x_size: e >> a_dim, a_dim, g_dim })
}

pub fn is_isomorphic_invariant(s: &SolutionTable, t: &SolutionTable) -> Result<bool> {
    Ok(classify(s)? == classify(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;
    use crate::solution::Bijection;

    #[test]
    fn retract_examples() {
        let t = irretractable_solution(1);
        assert_eq!(retract(&t).unwrap().quotient, t);
        let r = retract(&SolutionTable::identity(5).unwrap()).unwrap();
        assert_eq!(r.quotient.size(), 1);
        assert_eq!(r.class_sizes, vec![5]);
        let ext = ext_solution(&Decomposition::new(3, 1, 0).unwrap()).unwrap();
        let r = retract(&ext).unwrap();
        assert_eq!(r.quotient, irretractable_solution(1));
        assert_eq!(r.class_sizes, vec![3, 3]);
    }

    #[test]
    fn retract_rejects_non_involutive() {
        let c4 = group_solution(&GroupTable::cyclic(4).unwrap());
        assert_eq!(retract(&c4), Err(Error::NotInvolutiveSolution));
        assert_eq!(retract(&SolutionTable::flip(2).unwrap()), Err(Error::NotInvolutiveSolution));
    }

    #[test]
    fn irretractable_examples() {
        assert!(is_irretractable(&irretractable_solution(2)).unwrap());
        assert!(!is_irretractable(&SolutionTable::identity(2).unwrap()).unwrap());
        assert!(!is_irretractable(&canonical_solution(1, 0, 1).unwrap()).unwrap());
    }

    #[test]
    fn tower_examples() {
        let ext = ext_solution(&Decomposition::new(2, 1, 0).unwrap()).unwrap();
        assert_eq!(retract_tower(&ext).unwrap(), vec![4, 2, 2]);
        assert_eq!(retract_tower(&irretractable_solution(1)).unwrap(), vec![2, 2]);
        assert_eq!(retract_tower(&canonical_solution(3, 1, 1).unwrap()).unwrap(), vec![12, 2, 2]);
    }

    #[test]
    fn abelian_structure_examples() {
        let c2 = abelian_structure(&irretractable_solution(1)).unwrap();
        assert_eq!(c2.cayley(), GroupTable::cyclic(2).unwrap().cayley());
        assert_eq!(abelian_structure(&irretractable_solution(0)).unwrap().size(), 1);
        let v4 = abelian_structure(&irretractable_solution(2)).unwrap();
        assert_eq!(v4.size(), 4);
        assert_eq!(v4.exponent(), 2);
        assert_eq!(abelian_structure(&SolutionTable::identity(2).unwrap()), Err(Error::NotIrretractable));
    }

    #[test]
    fn abelian_structure_reconstructs_the_table() {
        for r in 0..=3 {
            let t = irretractable_solution(r);
            let g = abelian_structure(&t).unwrap();
            let rebuilt = SolutionTable::from_fn(t.size(), |x, y| (x, g.op(x, y))).unwrap();
            assert_eq!(rebuilt, t);
        }
    }

    #[test]
    fn left_group_examples() {
        let (m, _) = canonical_solution(3, 1, 1).unwrap().derive_tables();
        let d = left_group_decomposition(&m).unwrap().unwrap();
        assert_eq!(d.idempotents.len(), 6);
        assert_eq!(d.group_part.size(), 2);

        let d = left_group_decomposition(&MultTable::left_zero(4).unwrap()).unwrap().unwrap();
        assert_eq!(d.idempotents.len(), 4);
        assert_eq!(d.group_part.size(), 1);

        let c3 = MultTable::from_fn(3, |x, y| (x + y) % 3).unwrap();
        let d = left_group_decomposition(&c3).unwrap().unwrap();
        assert_eq!(d.idempotents, vec![0]);
        assert_eq!(d.group_part.size(), 3);
        assert_eq!(d.group_part.exponent(), 3);

        // right zero band is not a left group
        let rz = MultTable::from_fn(2, |_, y| y).unwrap();
        assert_eq!(left_group_decomposition(&rz).unwrap(), None);
        let null = MultTable::from_fn(2, |_, _| 0).unwrap();
        assert_eq!(left_group_decomposition(&null).unwrap(), None);
        let bad = MultTable::new(2, vec![1, 0, 0, 0]).unwrap();
        assert!(left_group_decomposition(&bad).is_err());
    }

    #[test]
    fn simple_examples() {
        assert!(check_simple(&MultTable::left_zero(3).unwrap()).unwrap());
        assert!(check_simple(&MultTable::from_fn(2, |x, y| x ^ y).unwrap()).unwrap());
        assert!(!check_simple(&MultTable::from_fn(2, |_, _| 0).unwrap()).unwrap());
        assert!(check_simple(&MultTable::new(2, vec![1, 0, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn classify_examples() {
        let t = |x, a, g| ClassificationTriple { x_size: x, a_dim: a, g_dim: g };
        assert_eq!(classify(&canonical_solution(3, 1, 1).unwrap()).unwrap(), t(3, 1, 1));
        for n in 1..=6 {
            assert_eq!(classify(&SolutionTable::identity(n).unwrap()).unwrap(), t(n, 0, 0));
        }
        let v4 = group_solution(&GroupTable::elementary(2));
        assert_eq!(classify(&v4).unwrap(), t(1, 0, 2));
        assert_eq!(classify(&canonical_solution(1, 0, 2).unwrap()).unwrap(), t(1, 0, 2));
    }

    #[test]
    fn classify_recovers_every_canonical_triple() {
        for x in 1..=6usize {
            for a in 0..=3u32 {
                for g in 0..=3u32 {
                    if x << (a + g) > 24 {
                        continue;
                    }
                    let want = ClassificationTriple { x_size: x, a_dim: a, g_dim: g };
                    assert_eq!(classify(&canonical_solution(x, a, g).unwrap()).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn invariant_isomorphism_examples() {
        let swap = Bijection::new(vec![1, 0]).unwrap();
        let sigma = SigmaMap::new(2, 1, vec![Bijection::identity(2), swap]).unwrap();
        let ext = ext_solution(&Decomposition::new(2, 1, 0).unwrap().with_sigma(sigma).unwrap()).unwrap();
        assert!(is_isomorphic_invariant(&ext, &canonical_solution(2, 1, 0).unwrap()).unwrap());
        assert!(!is_isomorphic_invariant(&irretractable_solution(1), &canonical_solution(1, 0, 1).unwrap()).unwrap());
        assert!(is_isomorphic_invariant(&ext, &ext).unwrap());
    }

    #[test]
    fn left_zero_thetas_are_identity_or_fixed_point_free() {
        for sigma_imgs in [vec![vec![0, 1, 2], vec![1, 2, 0]], vec![vec![2, 1, 0], vec![0, 2, 1]]] {
            let perms = sigma_imgs.into_iter().map(|v| Bijection::new(v).unwrap()).collect();
            let sigma = SigmaMap::new(3, 1, perms).unwrap();
            let s = ext_solution(&Decomposition::new(3, 1, 0).unwrap().with_sigma(sigma).unwrap()).unwrap();
            let (m, theta) = s.derive_tables();
            assert_eq!(m, MultTable::left_zero(6).unwrap());
            for x in 0..6 {
                assert!(theta.is_bijective(x));
                assert!(theta.is_identity(x) || theta.fixed_points(x) == 0);
            }
        }
    }
}
