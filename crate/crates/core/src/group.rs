//! Finite groups given by Cayley tables, and elementary abelian 2-groups as bitmask groups.

use crate::error::{Error, GroupAxiom, Result};
use crate::solution::{lcm, Bijection};

/// A finite group on `0..n` given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    size: usize,
    cayley: Vec<usize>,
    identity: usize,
    exponent: usize,
}

impl GroupTable {
    /// Validates associativity, the identity law and invertibility.
    pub fn new(size: usize, cayley: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if cayley.len() != size * size {
            return Err(Error::WrongLength { expected: size * size, found: cayley.len() });
        }
        if let Some(&bad) = cayley.iter().find(|&&v| v >= size) {
            return Err(Error::OutOfRange { index: bad, size });
        }
        let op = |a: usize, b: usize| cayley[a * size + b];
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(Error::GroupAxiom { axiom: GroupAxiom::Associativity, witness: vec![a, b, c] });
                    }
                }
            }
        }
        let identity = (0..size)
            .find(|&e| (0..size).all(|a| op(e, a) == a && op(a, e) == a))
            .ok_or(Error::GroupAxiom { axiom: GroupAxiom::Identity, witness: vec![] })?;
        for a in 0..size {
            if !(0..size).any(|b| op(a, b) == identity && op(b, a) == identity) {
                return Err(Error::GroupAxiom { axiom: GroupAxiom::Inverse, witness: vec![a] });
            }
        }
        let mut g = GroupTable { size, cayley, identity, exponent: 1 };
        g.exponent = (0..size).map(|a| g.element_order(a)).fold(1, lcm);
        Ok(g)
    }

    pub fn trivial() -> Self {
        GroupTable::new(1, vec![0]).expect("trivial group")
    }

    /// `Z/n` with `0` as identity.
    pub fn cyclic(n: usize) -> Result<Self> {
        GroupTable::new(n, (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect())
    }

    /// `C2^r` as bitmasks under exclusive-or.
    pub fn elementary(r: u32) -> Self {
        Elementary2Group::new(r).to_table()
    }

    /// The symmetric group on `k` points, elements numbered by lexicographic order of image sequences.
    pub fn symmetric(k: usize) -> Result<Self> {
        let perms = all_permutations(k);
        let index = |p: &Bijection| perms.binary_search(p).expect("closed under composition");
        let n = perms.len();
        let mut cayley = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                cayley.push(index(&a.compose(b)));
            }
        }
        GroupTable::new(n, cayley)
    }

    /// `G × H` with row-major index `g·|H| + h`.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Self {
        let (ng, nh) = (g.size, h.size);
        let n = ng * nh;
        let cayley = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| g.op(x / nh, y / nh) * nh + h.op(x % nh, y % nh))
            .collect();
        GroupTable::new(n, cayley).expect("product of groups is a group")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn cayley(&self) -> &[usize] {
        &self.cayley
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.size + b]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.is_abelian() && (0..self.size).all(|a| self.op(a, a) == self.identity)
    }

    /// `log2 |G|` when `G` is an elementary abelian 2-group.
    pub fn elementary_rank(&self) -> Option<u32> {
        (self.is_elementary_abelian_2() && self.size.is_power_of_two()).then(|| self.size.trailing_zeros())
    }
}

/// `C2^r`: elements `0..2^r`, operation exclusive-or, identity `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Elementary2Group {
    dim: u32,
}

impl Elementary2Group {
    pub fn new(dim: u32) -> Self {
        assert!(dim < usize::BITS / 2, "dimension {dim} too large for a Cayley table");
        Elementary2Group { dim }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn order(&self) -> usize {
        1 << self.dim
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        a ^ b
    }

    pub fn to_table(&self) -> GroupTable {
        let n = self.order();
        let cayley = (0..n).flat_map(|a| (0..n).map(move |b| a ^ b)).collect();
        GroupTable { size: n, cayley, identity: 0, exponent: if n == 1 { 1 } else { 2 } }
    }
}

/// All permutations of `0..k` in lexicographic order of image sequences.
pub fn all_permutations(k: usize) -> Vec<Bijection> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(Bijection::new(cur.clone()).expect("permutation"));
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
