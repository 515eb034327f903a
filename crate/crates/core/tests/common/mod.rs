//! Independent oracles shared by the integration tests. Everything here
//! is computed from definitions, without calling the library algorithms
//! it is compared against.

#![allow(dead_code)]

use std::collections::BTreeMap;

use thetalift::partitions::{dominance_leq, LieType};
use thetalift::Partition;

/// All partitions of `total`, largest part first.
pub fn partitions_of(total: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out.into_iter().map(|v| Partition::new(v).unwrap()).collect()
}

/// Parity rule for nilpotent orbits: in `so` even parts, in `sp` odd parts
/// occur with even multiplicity.
pub fn is_valid(p: &Partition, orthogonal: bool) -> bool {
    let bad = if orthogonal { 0 } else { 1 };
    p.rows()
        .iter()
        .filter(|&&r| r % 2 == bad)
        .fold(BTreeMap::new(), |mut m, &r| {
            *m.entry(r).or_insert(0usize) += 1;
            m
        })
        .values()
        .all(|c| c % 2 == 0)
}

/// The dominance-maximal valid partition below `p`, by exhaustive search.
pub fn brute_collapse(p: &Partition, orthogonal: bool) -> Partition {
    let below: Vec<Partition> =
        partitions_of(p.total()).into_iter().filter(|m| is_valid(m, orthogonal) && dominance_leq(m, p)).collect();
    below.iter().find(|m| below.iter().all(|o| dominance_leq(o, m))).cloned().expect("a dominance maximum exists")
}

pub fn lie_type(total: usize, orthogonal: bool) -> LieType {
    if orthogonal {
        LieType::so(total)
    } else {
        LieType::sp(total).unwrap()
    }
}

/// Arithmetic modulo a 31-bit prime.
pub const PRIME: u64 = 2_147_483_647;

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % PRIME, PRIME - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % PRIME;
        }
        base = base * base % PRIME;
        exp >>= 1;
    }
    acc
}

pub fn to_fp(x: i64) -> u64 {
    x.rem_euclid(PRIME as i64) as u64
}

/// Row-reduces in place and returns the pivot columns.
fn row_reduce(rows: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * inv % PRIME;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + PRIME - f * y % PRIME) % PRIME;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    row_reduce(&mut rows, ncols).len()
}

/// Basis of `{v : A v = 0}` for `A` given by rows.
pub fn null_space_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let pivots = row_reduce(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (PRIME - rows[i][f]) % PRIME;
            }
            v
        })
        .collect()
}

/// Complex dimension of the nilpotent orbit of Jordan type `p` in `so` or
/// `sp`: build the Jordan matrix `X`, find a nondegenerate invariant form
/// `B` with `X^T B + B X = 0`, and count `dim g - dim z_g(X)` modulo a prime.
/// Returns `None` when no nondegenerate form exists.
pub fn centralizer_orbit_dim(p: &Partition, orthogonal: bool) -> Option<usize> {
    let n = p.total();
    let mut x = vec![vec![0u64; n]; n];
    let mut start = 0;
    for &len in p.rows() {
        for i in 1..len {
            x[start + i - 1][start + i] = 1;
        }
        start += len;
    }
    let idx = |i: usize, j: usize| i * n + j;
    let sign: u64 = if orthogonal { 1 } else { PRIME - 1 };
    // Forms B: B^T = ±B and X^T B + B X = 0.
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0u64; n * n];
            row[idx(j, i)] = 1;
            row[idx(i, j)] = (row[idx(i, j)] + PRIME - sign) % PRIME;
            eqs.push(row);
            let mut row = vec![0u64; n * n];
            for k in 0..n {
                row[idx(k, j)] = (row[idx(k, j)] + x[k][i]) % PRIME;
                row[idx(i, k)] = (row[idx(i, k)] + x[k][j]) % PRIME;
            }
            eqs.push(row);
        }
    }
    let forms = null_space_mod_p(eqs, n * n);
    let b = (1..6u64).find_map(|s| {
        let mut b = vec![0u64; n * n];
        let mut c = s;
        for v in &forms {
            c = (c * 48271 + 11) % PRIME;
            for (e, &y) in b.iter_mut().zip(v) {
                *e = (*e + c * y) % PRIME;
            }
        }
        let rows: Vec<Vec<u64>> = (0..n).map(|i| b[i * n..(i + 1) * n].to_vec()).collect();
        (rank_mod_p(rows, n) == n).then_some(b)
    })?;
    // g = {Y : Y^T B + B Y = 0}; z = g ∩ {X Y - Y X = 0}.
    let mut g_eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0u64; n * n];
            for k in 0..n {
                row[idx(k, i)] = (row[idx(k, i)] + b[idx(k, j)]) % PRIME;
                row[idx(k, j)] = (row[idx(k, j)] + b[idx(i, k)]) % PRIME;
            }
            g_eqs.push(row);
        }
    }
    let dim_g = n * n - rank_mod_p(g_eqs.clone(), n * n);
    let mut z_eqs = g_eqs;
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0u64; n * n];
            for k in 0..n {
                row[idx(k, j)] = (row[idx(k, j)] + x[i][k]) % PRIME;
                row[idx(i, k)] = (row[idx(i, k)] + PRIME - x[k][j]) % PRIME;
            }
            z_eqs.push(row);
        }
    }
    let dim_z = n * n - rank_mod_p(z_eqs, n * n);
    Some(dim_g - dim_z)
}

/// Torus weights of the identity-sector variables, in the layout of the
/// Fock group `O(p) x O(q) x U(n)`: `floor(p/2)`, then `floor(q/2)`, then
/// `n` coordinates.
pub type Weight = Vec<i32>;

/// One coordinate of `W = M_{p,n} + M_{q,n}` in a basis adapted to the
/// maximal tori: row index `(block, k, sign)` and column `j`.
#[derive(Clone, Copy)]
struct Coord {
    block: usize,
    /// `Some((k, ±1))` for the isotropic pair `k`, `None` for the middle
    /// vector of an odd-dimensional block.
    pair: Option<(usize, i32)>,
    col: usize,
}

fn coords(p: usize, q: usize, n: usize) -> Vec<Coord> {
    let mut out = Vec::new();
    for (block, m) in [p, q].into_iter().enumerate() {
        for col in 0..n {
            for k in 0..m / 2 {
                out.push(Coord { block, pair: Some((k, 1)), col });
                out.push(Coord { block, pair: Some((k, -1)), col });
            }
            if m % 2 == 1 {
                out.push(Coord { block, pair: None, col });
            }
        }
    }
    out
}

fn weight_of(c: &Coord, p: usize, q: usize, n: usize) -> Weight {
    let mut w = vec![0; p / 2 + q / 2 + n];
    if let Some((k, s)) = c.pair {
        let off = if c.block == 0 { 0 } else { p / 2 };
        w[off + k] = s;
    }
    w[p / 2 + q / 2 + c.col] = if c.block == 0 { 1 } else { -1 };
    w
}

fn monomials(nvars: usize, degree: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, nvars: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..nvars {
            cur.push(v);
            rec(v, nvars, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, nvars, degree, &mut Vec::new(), &mut out);
    out
}

/// A polynomial as a map from sorted variable multisets to coefficients.
type Poly = BTreeMap<Vec<usize>, i64>;

/// The quadrics `sum_k w_{k i} w_{k j}` for each block, in adapted
/// coordinates where the form is `sum u_k^+ u_k^- + u_0^2`.
fn quadrics(cs: &[Coord], p: usize, q: usize, n: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for (block, m) in [p, q].into_iter().enumerate() {
        for i in 0..n {
            for j in i..n {
                let mut f = Poly::new();
                let find = |pair: Option<(usize, i32)>, col: usize| {
                    cs.iter().position(|c| c.block == block && c.pair == pair && c.col == col).unwrap()
                };
                for k in 0..m / 2 {
                    for (a, b) in [(i, j), (j, i)] {
                        let mut key = vec![find(Some((k, 1)), a), find(Some((k, -1)), b)];
                        key.sort();
                        *f.entry(key).or_insert(0) += 1;
                    }
                }
                if m % 2 == 1 {
                    let mut key = vec![find(None, i), find(None, j)];
                    key.sort();
                    *f.entry(key).or_insert(0) += 2;
                }
                out.push(f);
            }
        }
    }
    out
}

/// Weight multiplicities of `C[W]/I` in each degree `<= dmax`, where `I`
/// is generated by the quadratic invariants (the null cone) or is zero.
/// Degree `d` of the ideal is spanned by monomial multiples of the
/// generators; its dimension in each weight space is a rank modulo a prime.
pub fn quotient_weights(p: usize, q: usize, n: usize, dmax: usize, with_relations: bool) -> Vec<BTreeMap<Weight, i64>> {
    let cs = coords(p, q, n);
    let weights: Vec<Weight> = cs.iter().map(|c| weight_of(c, p, q, n)).collect();
    let gens = if with_relations { quadrics(&cs, p, q, n) } else { Vec::new() };
    let mono_weight = |m: &[usize]| -> Weight {
        let mut w = vec![0; weights[0].len()];
        for &v in m {
            for (a, b) in w.iter_mut().zip(&weights[v]) {
                *a += b;
            }
        }
        w
    };
    let mut out = Vec::new();
    for d in 0..=dmax {
        let basis = monomials(cs.len(), d);
        let mut by_weight: BTreeMap<Weight, Vec<Vec<usize>>> = BTreeMap::new();
        for m in basis {
            by_weight.entry(mono_weight(&m)).or_default().push(m);
        }
        let multipliers = if d >= 2 { monomials(cs.len(), d - 2) } else { Vec::new() };
        let mut rows_by_weight: BTreeMap<Weight, Vec<Poly>> = BTreeMap::new();
        for g in &gens {
            for m in &multipliers {
                let mut prod = Poly::new();
                for (key, c) in g {
                    let mut k: Vec<usize> = key.iter().chain(m).copied().collect();
                    k.sort();
                    *prod.entry(k).or_insert(0) += c;
                }
                let w = mono_weight(prod.keys().next().unwrap());
                rows_by_weight.entry(w).or_default().push(prod);
            }
        }
        let mut level = BTreeMap::new();
        for (w, monos) in &by_weight {
            let index: BTreeMap<&Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let rank = rows_by_weight.get(w).map_or(0, |polys| {
                let rows = polys
                    .iter()
                    .map(|f| {
                        let mut r = vec![0u64; monos.len()];
                        for (k, c) in f {
                            r[index[k]] = to_fp(*c);
                        }
                        r
                    })
                    .collect();
                rank_mod_p(rows, monos.len())
            });
            let dim = monos.len() as i64 - rank as i64;
            if dim != 0 {
                level.insert(w.clone(), dim);
            }
        }
        out.push(level);
    }
    out
}
