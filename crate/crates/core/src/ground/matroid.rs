//! Rank oracle for the column matroid of an instance.
//!
//! Subsets of the ground set are bitmasks (`u64`, bit `e` for element `e`).
//! Integer instances are reduced modulo a large prime: every square
//! subdeterminant of a TU matrix is in {-1,0,1}, so ranks agree with the
//! rational ones.

use std::sync::OnceLock;

use super::instance::Instance;
use super::linalg::Scalars;
use crate::error::{Error, Result};

/// Prime used to read integer (TU) matrices.
pub const WIDE_PRIME: u64 = 2_147_483_647;
/// Largest ground set with a precomputed rank table.
pub const TABLE_MAX: usize = 20;
/// Largest ground set for flat enumeration.
pub const FLATS_MAX: usize = 16;
/// Largest ground set any mask-based routine accepts.
pub const GROUND_MAX: usize = 63;

pub type Mask = u64;

pub fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_elements(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(e)
        }
    })
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Incremental row-echelon basis over GF(p); `insert` reports independence.
#[derive(Clone, Debug)]
pub(crate) struct EchelonBasis {
    p: u64,
    /// (pivot index, vector with a 1 at the pivot)
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub(crate) fn new(p: u64) -> Self {
        EchelonBasis {
            p,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u128 + (p - c) as u128 * r as u128) % p as u128) as u64;
                }
            }
        }
    }

    pub(crate) fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        match w.iter().position(|&x| x != 0) {
            None => false,
            Some(piv) => {
                let inv = inv_mod(w[piv], self.p);
                for x in w.iter_mut() {
                    *x = ((*x as u128 * inv as u128) % self.p as u128) as u64;
                }
                self.rows.push((piv, w));
                true
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }
}

/// The matroid of a set of column vectors over GF(p).
#[derive(Debug)]
pub struct Matroid {
    field: u64,
    columns: Vec<Vec<u64>>,
    rank: usize,
    table: OnceLock<Vec<u8>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid::from_columns(self.field, self.columns.clone())
    }
}

impl Matroid {
    pub fn from_instance(inst: &Instance) -> Self {
        let field = match inst.scalars {
            Scalars::Integer => WIDE_PRIME,
            Scalars::Prime(p) => p as u64,
        };
        let columns = (0..inst.ground_size())
            .map(|j| {
                inst.matrix
                    .column(j)
                    .into_iter()
                    .map(|v| v.rem_euclid(field as i64) as u64)
                    .collect()
            })
            .collect();
        Matroid::from_columns(field, columns)
    }

    pub fn from_columns(field: u64, columns: Vec<Vec<u64>>) -> Self {
        let mut basis = EchelonBasis::new(field);
        for c in &columns {
            basis.insert(c);
        }
        Matroid {
            field,
            rank: basis.len(),
            columns,
            table: OnceLock::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> u64 {
        self.field
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    pub fn full(&self) -> Mask {
        full_mask(self.ground_size())
    }

    fn direct_rank(&self, mask: Mask) -> usize {
        let mut basis = EchelonBasis::new(self.field);
        for e in mask_elements(mask) {
            basis.insert(&self.columns[e]);
        }
        basis.len()
    }

    /// Rank of every subset, indexed by mask. Built by a depth-first walk
    /// that extends one echelon basis per level.
    pub fn rank_table(&self) -> Result<&[u8]> {
        let n = self.ground_size();
        if n > TABLE_MAX {
            return Err(Error::SizeCap {
                what: "ground set for rank table",
                size: n,
                cap: TABLE_MAX,
            });
        }
        Ok(self.table.get_or_init(|| {
            let mut table = vec![0u8; 1 << n];
            fn walk(m: &Matroid, e: usize, mask: Mask, basis: &EchelonBasis, table: &mut [u8]) {
                if e == m.ground_size() {
                    table[mask as usize] = basis.len() as u8;
                    return;
                }
                walk(m, e + 1, mask, basis, table);
                let mut next = basis.clone();
                next.insert(&m.columns[e]);
                walk(m, e + 1, mask | (1 << e), &next, table);
            }
            walk(self, 0, 0, &EchelonBasis::new(self.field), &mut table);
            table
        }))
    }

    pub fn rank_of(&self, mask: Mask) -> usize {
        if self.ground_size() <= TABLE_MAX {
            if let Some(t) = self.table.get() {
                return t[mask as usize] as usize;
            }
        }
        self.direct_rank(mask)
    }

    pub fn closure(&self, mask: Mask) -> Mask {
        let r = self.rank_of(mask);
        let mut out = mask;
        for e in 0..self.ground_size() {
            if mask & (1 << e) == 0 && self.rank_of(mask | (1 << e)) == r {
                out |= 1 << e;
            }
        }
        out
    }

    pub fn is_flat(&self, mask: Mask) -> bool {
        self.closure(mask) == mask
    }

    /// All flats in increasing mask order.
    pub fn flats(&self) -> Result<Vec<Mask>> {
        let n = self.ground_size();
        if n > FLATS_MAX {
            return Err(Error::SizeCap {
                what: "ground set for flats",
                size: n,
                cap: FLATS_MAX,
            });
        }
        let table = self.rank_table()?;
        let mut out = Vec::new();
        'next: for mask in 0..(1u64 << n) {
            let r = table[mask as usize];
            for e in 0..n {
                if mask & (1 << e) == 0 && table[(mask | (1 << e)) as usize] == r {
                    continue 'next;
                }
            }
            out.push(mask);
        }
        Ok(out)
    }

    /// Rank in the contraction `M/u` of a subset disjoint from `u`.
    pub fn contracted_rank(&self, u: Mask, s: Mask) -> usize {
        self.rank_of(s | u) - self.rank_of(u)
    }

    /// Rank in the dual matroid.
    pub fn dual_rank_of(&self, mask: Mask) -> usize {
        let comp = self.full() & !mask;
        mask.count_ones() as usize + self.rank_of(comp) - self.rank
    }

    /// Circuits (minimal dependent sets), for small ground sets.
    pub fn circuits(&self) -> Result<Vec<Mask>> {
        let table = self.rank_table()?;
        let n = self.ground_size();
        Ok((1..(1u64 << n))
            .filter(|&m| {
                let k = m.count_ones() as usize;
                table[m as usize] as usize == k - 1
                    && mask_elements(m).all(|e| table[(m & !(1 << e)) as usize] as usize == k - 1)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::graph::OrientedGraph;
    use crate::ground::instance::{Instance, Side};
    use crate::ground::linalg::Matrix;

    fn triangle(side: Side) -> Matroid {
        let g = OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        Matroid::from_instance(&Instance::from_graph("t", g, side))
    }

    fn fano() -> Matroid {
        let inst = Instance::from_gfp_matrix(
            "fano",
            2,
            Matrix::new(
                7,
                vec![
                    vec![1, 0, 0, 1, 1, 0, 1],
                    vec![0, 1, 0, 1, 0, 1, 1],
                    vec![0, 0, 1, 0, 1, 1, 1],
                ],
            ),
        )
        .unwrap();
        Matroid::from_instance(&inst)
    }

    #[test]
    fn ranks() {
        let m = triangle(Side::Cycle);
        assert_eq!(m.rank_of(0), 0);
        for e in 0..3 {
            assert_eq!(m.rank_of(1 << e), 1);
        }
        assert_eq!(fano().rank_of(0b111_1111), 3);
    }

    #[test]
    fn table_matches_direct() {
        let m = fano();
        let t = m.rank_table().unwrap().to_vec();
        for mask in 0..128u64 {
            assert_eq!(t[mask as usize] as usize, m.direct_rank(mask));
        }
    }

    #[test]
    fn closure_and_flats() {
        let m = triangle(Side::Cycle);
        assert_eq!(m.closure(0b001), 0b111);
        assert_eq!(m.closure(0b111), 0b111);
        let v = triangle(Side::Vertex);
        assert_eq!(v.flats().unwrap(), vec![0, 1, 2, 4, 7]);
        // Fano: 1 + 7 points + 7 lines + 1
        assert_eq!(fano().flats().unwrap().len(), 16);
    }

    #[test]
    fn circuits_of_fano() {
        let c = fano().circuits().unwrap();
        assert_eq!(c.iter().filter(|m| m.count_ones() == 3).count(), 7);
        assert_eq!(c.iter().filter(|m| m.count_ones() == 4).count(), 7);
        assert_eq!(c.len(), 14);
    }

    #[test]
    fn dual_rank_of_triangle() {
        let v = triangle(Side::Vertex);
        let c = triangle(Side::Cycle);
        for mask in 0..8 {
            assert_eq!(v.dual_rank_of(mask), c.rank_of(mask));
        }
    }
}
