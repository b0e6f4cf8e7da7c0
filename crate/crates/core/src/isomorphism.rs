//! Brute-force isomorphism search between solutions and lexicographically
//! smallest relabelings.

use crate::error::{Error, Result};
use crate::group::all_permutations;
use crate::solution::{Bijection, SolutionTable};

pub const DEFAULT_ISOMORPHISM_BOUND: usize = 8;

/// Relabeling-invariant data about one element, compared before any descent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ElementSignature {
    idempotent: bool,
    left_identity_count: usize,
    theta_fixed_points: usize,
    theta_image_size: usize,
    theta_orbit_sizes: Vec<usize>,
}

fn signatures(s: &SolutionTable) -> Vec<ElementSignature> {
    let n = s.size();
    let (m, theta) = s.derive_tables();
    (0..n)
        .map(|x| {
            let map = theta.map(x);
            let mut image = map.to_vec();
            image.sort_unstable();
            image.dedup();
            // orbit size of each point under iteration of θ_x (tail + cycle length)
            let mut orbit_sizes: Vec<usize> = (0..n)
                .map(|y| {
                    let mut seen = vec![false; n];
                    let mut cur = y;
                    let mut k = 0;
                    while !seen[cur] {
                        seen[cur] = true;
                        cur = map[cur];
                        k += 1;
                    }
                    k
                })
                .collect();
            orbit_sizes.sort_unstable();
            ElementSignature {
                idempotent: m.get(x, x) == x,
                left_identity_count: (0..n).filter(|&y| m.get(x, y) == x).count(),
                theta_fixed_points: theta.fixed_points(x),
                theta_image_size: image.len(),
                theta_orbit_sizes: orbit_sizes,
            }
        })
        .collect()
}

struct Search<'a> {
    s: &'a SolutionTable,
    t: &'a SolutionTable,
    allowed: Vec<Vec<bool>>,
}

impl Search<'_> {
    /// Sets `f(x) = y` and closes under `f(s(a,b)) = t(f a, f b)`.
    fn assign(&self, f: &mut [Option<usize>], used: &mut [bool], x: usize, y: usize) -> bool {
        let n = self.s.size();
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match f[x] {
                Some(v) if v == y => continue,
                Some(_) => return false,
                None => {}
            }
            if used[y] || !self.allowed[x][y] {
                return false;
            }
            f[x] = Some(y);
            used[y] = true;
            for a in 0..n {
                let Some(fa) = f[a] else { continue };
                for (p, q) in [(x, a), (a, x)] {
                    let (fp, fq) = if p == x { (y, fa) } else { (fa, y) };
                    let (k, l) = self.s.apply(p, q);
                    let (k2, l2) = self.t.apply(fp, fq);
                    queue.push((k, k2));
                    queue.push((l, l2));
                }
            }
        }
        true
    }

    fn descend(&self, f: Vec<Option<usize>>, used: Vec<bool>) -> Option<Vec<usize>> {
        let Some(x) = f.iter().position(Option::is_none) else {
            return Some(f.into_iter().map(|v| v.expect("complete")).collect());
        };
        for y in 0..self.t.size() {
            if used[y] || !self.allowed[x][y] {
                continue;
            }
            let (mut f2, mut used2) = (f.clone(), used.clone());
            if self.assign(&mut f2, &mut used2, x, y) {
                if let Some(done) = self.descend(f2, used2) {
                    return Some(done);
                }
            }
        }
        None
    }
}

/// A bijection `f` with `(f×f)s = t(f×f)`, for carriers of at most `bound` elements.
pub fn find_isomorphism_bounded(s: &SolutionTable, t: &SolutionTable, bound: usize) -> Result<Option<Bijection>> {
    if s.size() != t.size() {
        return Err(Error::SizeMismatch(s.size(), t.size()));
    }
    if s.size() > bound {
        return Err(Error::BoundExceeded { size: s.size(), bound });
    }
    let (sig_s, sig_t) = (signatures(s), signatures(t));
    let (mut sorted_s, mut sorted_t) = (sig_s.clone(), sig_t.clone());
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return Ok(None);
    }
    let allowed = sig_s.iter().map(|a| sig_t.iter().map(|b| a == b).collect()).collect();
    let search = Search { s, t, allowed };
    let n = s.size();
    Ok(search.descend(vec![None; n], vec![false; n]).map(|f| Bijection::new(f).expect("injective by construction")))
}

pub fn find_isomorphism(s: &SolutionTable, t: &SolutionTable) -> Result<Option<Bijection>> {
    find_isomorphism_bounded(s, t, DEFAULT_ISOMORPHISM_BOUND)
}

/// The lexicographically smallest table among all relabelings of `s`.
pub fn canonical_form(s: &SolutionTable) -> Result<SolutionTable> {
    if s.size() > DEFAULT_ISOMORPHISM_BOUND {
        return Err(Error::BoundExceeded { size: s.size(), bound: DEFAULT_ISOMORPHISM_BOUND });
    }
    Ok(all_permutations(s.size())
        .iter()
        .map(|f| s.relabel(f).expect("same size"))
        .min()
        .expect("at least one permutation"))
}
