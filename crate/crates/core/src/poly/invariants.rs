use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::types::{BiPoly, LaurentPoly, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::ground::graph::OrientedGraph;
use crate::ground::instance::{Instance, Side};
use crate::ground::matroid::{inv_mod, mask_elements, Matroid, TABLE_MAX};

/// Largest ground set accepted by deletion–contraction.
pub const DC_MAX: usize = 28;

/// `R(M;λ,x)`: subset expansion up to `TABLE_MAX` elements, memoized
/// deletion–contraction beyond.
pub fn rank_gen_poly(m: &Matroid) -> Result<BiPoly> {
    if m.ground_size() <= TABLE_MAX {
        rank_gen_poly_subsets(m)
    } else {
        rank_gen_poly_dc(m)
    }
}

pub fn rank_gen_poly_subsets(m: &Matroid) -> Result<BiPoly> {
    let table = m.rank_table()?;
    let r = m.rank() as u32;
    let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
    for (mask, &rk) in table.iter().enumerate() {
        let rk = rk as u32;
        *counts.entry((r - rk, mask.count_ones() - rk)).or_default() += 1;
    }
    let mut p = BiPoly::zero();
    for ((l, x), c) in counts {
        p.add_term(l, x, BigInt::from(c));
    }
    Ok(p)
}

type Columns = Vec<Vec<u64>>;

struct DeletionContraction {
    p: u64,
    memo: Mutex<HashMap<Columns, BiPoly>>,
}

/// Row-reduce the matrix whose columns are given, drop zero rows, and sort
/// the columns. Matrices with equal keys have isomorphic matroids.
fn canonical(p: u64, cols: &Columns) -> Columns {
    let n = cols.len();
    let h = cols.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u64>> = (0..h)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect();
    let mut rank = 0;
    for j in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][j] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][j], p);
        for v in rows[rank].iter_mut() {
            *v = (*v as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][j] != 0 {
                let c = rows[i][j];
                for k in 0..n {
                    let sub = c as u128 * rows[rank][k] as u128 % p as u128;
                    rows[i][k] = ((rows[i][k] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    let mut out: Columns = (0..n)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    out.sort();
    out
}

fn column_rank(p: u64, cols: &[Vec<u64>]) -> usize {
    let mut b = crate::ground::matroid::EchelonBasis::new(p);
    for c in cols {
        b.insert(c);
    }
    b.len()
}

impl DeletionContraction {
    fn solve(&self, cols: &Columns) -> BiPoly {
        let canon = canonical(self.p, cols);
        if canon.is_empty() {
            return BiPoly::one();
        }
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&canon) {
            return hit.clone();
        }
        let rank = canon[0].len();
        let n = canon.len();
        let last = &canon[n - 1];
        let result = if last.iter().all(|&v| v == 0) {
            // every column is a loop
            loops_only(n as u32)
        } else {
            let deletion: Columns = canon[..n - 1].to_vec();
            let i = last.iter().position(|&v| v != 0).expect("nonzero column");
            let inv = inv_mod(last[i], self.p);
            let contraction: Columns = deletion
                .iter()
                .map(|c| {
                    let f = c[i] as u128 * inv as u128 % self.p as u128;
                    (0..rank)
                        .filter(|&k| k != i)
                        .map(|k| {
                            let sub = f * last[k] as u128 % self.p as u128;
                            ((c[k] as u128 + self.p as u128 - sub) % self.p as u128) as u64
                        })
                        .collect()
                })
                .collect();
            if column_rank(self.p, &deletion) < rank {
                let mut lp1 = BiPoly::one();
                lp1.add_term(1, 0, BigInt::one());
                mul_bipoly(&lp1, &self.solve(&contraction))
            } else {
                let (d, c) = if n > 12 {
                    rayon::join(|| self.solve(&deletion), || self.solve(&contraction))
                } else {
                    (self.solve(&deletion), self.solve(&contraction))
                };
                add_bipoly(&d, &c)
            }
        };
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert(canon, result.clone());
        result
    }
}

/// `(1 + x)^k`, the rank polynomial of `k` loops.
fn loops_only(k: u32) -> BiPoly {
    let mut r = BiPoly::zero();
    let mut c = BigInt::one();
    for j in 0..=k {
        r.add_term(0, j, c.clone());
        c = c * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    r
}

fn add_bipoly(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = a.clone();
    for (&(l, x), c) in b.terms() {
        out.add_term(l, x, c.clone());
    }
    out
}

fn mul_bipoly(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (&(l1, x1), c1) in a.terms() {
        for (&(l2, x2), c2) in b.terms() {
            out.add_term(l1 + l2, x1 + x2, c1 * c2);
        }
    }
    out
}

pub fn rank_gen_poly_dc(m: &Matroid) -> Result<BiPoly> {
    let n = m.ground_size();
    if n > DC_MAX {
        return Err(Error::SizeCap {
            what: "ground set for deletion-contraction",
            size: n,
            cap: DC_MAX,
        });
    }
    let dc = DeletionContraction {
        p: m.field(),
        memo: Mutex::new(HashMap::new()),
    };
    let cols: Columns = m.columns().to_vec();
    Ok(dc.solve(&cols))
}

/// `T(M;u,v) = R(M;u−1,v−1)`.
pub fn tutte(m: &Matroid) -> Result<BiPoly> {
    Ok(rank_gen_poly(m)?.shift(-1, -1))
}

/// `χ(M;λ) = (−1)^r R(M;−λ,−1)`.
pub fn char_poly_from_rank_poly(r_poly: &BiPoly, r: u32) -> UniPoly {
    let mut out = UniPoly::zero();
    for (&(i, j), c) in r_poly.terms() {
        let sign = if (r + i + j) % 2 == 0 { 1 } else { -1 };
        out.add_term(i as i64, c * sign);
    }
    out
}

/// `Σ_B (−1)^|B| λ^(r−rk B)`.
pub fn char_poly_subsets(m: &Matroid) -> Result<UniPoly> {
    let table = m.rank_table()?;
    let r = m.rank() as i64;
    let mut acc: HashMap<i64, i64> = HashMap::new();
    for (mask, &rk) in table.iter().enumerate() {
        let s = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *acc.entry(r - rk as i64).or_default() += s;
    }
    let mut out = UniPoly::zero();
    for (k, c) in acc {
        out.add_term(k, BigInt::from(c));
    }
    Ok(out)
}

/// Characteristic polynomial; both routes are computed and compared when
/// the ground set is small enough for subset expansion.
pub fn char_poly(m: &Matroid) -> Result<UniPoly> {
    let via_r = char_poly_from_rank_poly(&rank_gen_poly(m)?, m.rank() as u32);
    if m.ground_size() <= TABLE_MAX {
        let direct = char_poly_subsets(m)?;
        if direct != via_r {
            return Err(Error::Internal(format!(
                "characteristic polynomial routes disagree: {via_r} vs {direct}"
            )));
        }
    }
    Ok(via_r)
}

/// `χ(M;λ)` at an integer.
pub fn char_value(m: &Matroid, lambda: i64) -> Result<BigInt> {
    Ok(char_poly(m)?.eval_int(lambda).expect("polynomial"))
}

/// `Σ c_ij q^i u^(r−i+j) v^(n−r+i−j)`, which equals
/// `Σ_B q^(r−rk B) u^|B| v^(n−|B|)`. With `u = a0 − a1`, `v = a1` this is
/// the flow sum `Σ_h Π_e (a0 if h(e)=0 else a1)` over a group of order q.
pub fn eval_flow_form<T: Ring>(r_poly: &BiPoly, r: u32, n: u32, q: &BigInt, u: &T, v: &T) -> T {
    let up = u.ring_powers(n as usize);
    let vp = v.ring_powers(n as usize);
    let mut acc = u.ring_zero();
    for (&(i, j), c) in r_poly.terms() {
        let coeff = c * num_traits::pow(q.clone(), i as usize);
        let t = up[(r - i + j) as usize].ring_mul(&vp[(n - r + i - j) as usize]);
        acc = acc.ring_add(&t.ring_scale(&coeff));
    }
    acc
}

/// `W(x) = (x−1)^r R(M; q/(x−1), x−1) = Σ_k N_k x^k`, with `N_k` the number
/// of flows over a group of order `q` vanishing on exactly `k` elements.
pub fn flow_census_from_rank_poly(r_poly: &BiPoly, r: u32, n: u32, q: u64) -> Result<UniPoly> {
    let x_minus_1 = LaurentPoly::from_coeffs(&[-1, 1]);
    let w = eval_flow_form(
        r_poly,
        r,
        n,
        &BigInt::from(q),
        &x_minus_1,
        &LaurentPoly::constant(1),
    );
    let mut total = BigInt::zero();
    for (&k, c) in w.terms() {
        if k < 0 || c.is_negative() {
            return Err(Error::Internal(format!(
                "flow census has a bad term {c}*x^{k}"
            )));
        }
        total += c;
    }
    if total != num_traits::pow(BigInt::from(q), r as usize) {
        return Err(Error::Internal(format!(
            "flow census sums to {total}, not {q}^{r}"
        )));
    }
    Ok(w)
}

pub fn flow_census_poly(m: &Matroid, q: u64) -> Result<UniPoly> {
    let r_poly = rank_gen_poly(m)?;
    flow_census_from_rank_poly(&r_poly, m.rank() as u32, m.ground_size() as u32, q)
}

/// `Σ_{U flat} χ(M/U; q) x^|U|`.
pub fn crapo_tutte_convolution(m: &Matroid, q: u64) -> Result<UniPoly> {
    let flats = m.flats()?;
    let table = m.rank_table()?;
    let r = m.rank() as u32;
    let full = m.full();
    let qb = BigInt::from(q);
    let qpow: Vec<BigInt> = (0..=r)
        .map(|k| num_traits::pow(qb.clone(), k as usize))
        .collect();
    let mut out = UniPoly::zero();
    for u in flats {
        let comp = full & !u;
        let mut chi = BigInt::zero();
        // all submasks of the complement, including the empty one
        let mut s = comp;
        loop {
            let t = &qpow[(r - table[(s | u) as usize] as u32) as usize];
            if s.count_ones() % 2 == 0 {
                chi += t;
            } else {
                chi -= t;
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & comp;
        }
        out.add_term(u.count_ones() as i64, chi);
    }
    Ok(out)
}

/// Chromatic polynomial `P(Γ;λ) = λ^c χ(M(H);λ)` with `H` the vertex-edge matrix.
pub fn chromatic_poly(g: &OrientedGraph) -> Result<UniPoly> {
    let inst = Instance::from_graph("g", g.clone(), Side::Vertex);
    let chi = char_poly(&Matroid::from_instance(&inst))?;
    Ok(&chi * &LaurentPoly::monomial(g.component_count() as i64, BigInt::one()))
}

/// Flow polynomial `F(Γ;λ) = χ(M(G);λ)` with `G` the cycle-edge matrix.
pub fn flow_poly(g: &OrientedGraph) -> Result<UniPoly> {
    let inst = Instance::from_graph("g", g.clone(), Side::Cycle);
    char_poly(&Matroid::from_instance(&inst))
}

/// Elements of a mask as a sorted list (for reports).
pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    mask_elements(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::linalg::Matrix;

    fn poly(terms: &[(u32, u32, i64)]) -> BiPoly {
        let mut p = BiPoly::zero();
        for &(l, x, c) in terms {
            p.add_term(l, x, BigInt::from(c));
        }
        p
    }

    fn graph(n: usize, e: &[(usize, usize)], side: Side) -> Matroid {
        Matroid::from_instance(&Instance::from_graph(
            "g",
            OrientedGraph::new(n, e.to_vec()),
            side,
        ))
    }

    #[test]
    fn small_rank_polys() {
        let coloop = graph(2, &[(0, 1)], Side::Vertex);
        assert_eq!(
            rank_gen_poly(&coloop).unwrap(),
            poly(&[(1, 0, 1), (0, 0, 1)])
        );
        let lp = graph(1, &[(0, 0)], Side::Vertex);
        assert_eq!(rank_gen_poly(&lp).unwrap(), poly(&[(0, 1, 1), (0, 0, 1)]));
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)], Side::Vertex);
        assert_eq!(
            rank_gen_poly(&tri).unwrap(),
            poly(&[(2, 0, 1), (1, 0, 3), (0, 0, 3), (0, 1, 1)])
        );
        assert_eq!(
            tutte(&tri).unwrap(),
            poly(&[(2, 0, 1), (1, 0, 1), (0, 1, 1)])
        );
        assert_eq!(tutte(&coloop).unwrap(), poly(&[(1, 0, 1)]));
        assert_eq!(tutte(&lp).unwrap(), poly(&[(0, 1, 1)]));
    }

    #[test]
    fn characteristic_polys() {
        let coloop = graph(2, &[(0, 1)], Side::Vertex);
        assert_eq!(
            char_poly(&coloop).unwrap(),
            LaurentPoly::from_coeffs(&[-1, 1])
        );
        let lp = graph(1, &[(0, 0)], Side::Vertex);
        assert!(char_poly(&lp).unwrap().is_zero());
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)], Side::Vertex);
        assert_eq!(
            char_poly(&tri).unwrap(),
            LaurentPoly::from_coeffs(&[2, -3, 1])
        );
    }

    #[test]
    fn deletion_contraction_matches_subsets() {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for side in [Side::Vertex, Side::Cycle] {
            let m = graph(4, &k4, side);
            assert_eq!(
                rank_gen_poly_dc(&m).unwrap(),
                rank_gen_poly_subsets(&m).unwrap()
            );
        }
        let fano = Instance::from_gfp_matrix(
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
        let m = Matroid::from_instance(&fano);
        assert_eq!(
            rank_gen_poly_dc(&m).unwrap(),
            rank_gen_poly_subsets(&m).unwrap()
        );
        let tree = graph(3, &[(0, 1), (1, 2)], Side::Cycle);
        assert_eq!(
            rank_gen_poly_dc(&tree).unwrap(),
            poly(&[(0, 0, 1), (0, 1, 2), (0, 2, 1)])
        );
    }

    #[test]
    fn k4_tutte() {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let t = tutte(&graph(4, &k4, Side::Vertex)).unwrap();
        // x³ + 3x² + 2x + 4xy + 2y + 3y² + y³ in (u, v)
        let want = poly(&[
            (3, 0, 1),
            (2, 0, 3),
            (1, 0, 2),
            (1, 1, 4),
            (0, 1, 2),
            (0, 2, 3),
            (0, 3, 1),
        ]);
        assert_eq!(t, want);
    }

    #[test]
    fn flow_census_examples() {
        let tri_c = graph(3, &[(0, 1), (1, 2), (2, 0)], Side::Cycle);
        assert_eq!(
            flow_census_poly(&tri_c, 2).unwrap(),
            LaurentPoly::from_coeffs(&[1, 0, 0, 1])
        );
        assert_eq!(
            flow_census_poly(&tri_c, 3).unwrap(),
            LaurentPoly::from_coeffs(&[2, 0, 0, 1])
        );
        assert_eq!(
            crapo_tutte_convolution(&tri_c, 2).unwrap(),
            LaurentPoly::from_coeffs(&[1, 0, 0, 1])
        );
        let tree = graph(4, &[(0, 1), (1, 2), (1, 3)], Side::Cycle);
        assert_eq!(
            flow_census_poly(&tree, 5).unwrap(),
            LaurentPoly::monomial(3, BigInt::one())
        );
        assert_eq!(
            crapo_tutte_convolution(&tree, 5).unwrap(),
            LaurentPoly::monomial(3, BigInt::one())
        );
        let tri_v = graph(3, &[(0, 1), (1, 2), (2, 0)], Side::Vertex);
        for q in 2..6 {
            assert_eq!(
                flow_census_poly(&tri_v, q).unwrap(),
                crapo_tutte_convolution(&tri_v, q).unwrap()
            );
        }
    }

    #[test]
    fn graph_polys() {
        let k4 = OrientedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let p = chromatic_poly(&k4).unwrap();
        assert_eq!(p.eval_int(4).unwrap(), BigInt::from(24));
        assert_eq!(p.eval_int(3).unwrap(), BigInt::zero());
        let c4 = OrientedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(flow_poly(&c4).unwrap().eval_int(2).unwrap(), BigInt::one());
    }
}
