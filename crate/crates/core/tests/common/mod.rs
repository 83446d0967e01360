//! Slow, independent reference implementations used by the property suites.
//! None of them call into the library's algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Element of a free graded-commutative algebra as sorted words.
pub type WordPoly = BTreeMap<Vec<usize>, Q>;

/// Sorts a word by adjacent swaps, picking up `(-1)^{|a||b|}` per swap.
/// `None` when an odd letter repeats.
pub fn normalize_word(word: &[usize], degrees: &[u32]) -> Option<(Vec<usize>, i32)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                if degrees[w[j]] % 2 == 1 && degrees[w[j + 1]] % 2 == 1 {
                    sign = -sign;
                }
                w.swap(j, j + 1);
            }
        }
    }
    for pair in w.windows(2) {
        if pair[0] == pair[1] && degrees[pair[0]] % 2 == 1 {
            return None;
        }
    }
    Some((w, sign))
}

pub fn add_word(p: &mut WordPoly, word: &[usize], c: Q, degrees: &[u32]) {
    if let Some((w, s)) = normalize_word(word, degrees) {
        let c = if s < 0 { -c } else { c };
        let e = p.entry(w.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            p.remove(&w);
        }
    }
}

pub fn word_mul(a: &WordPoly, b: &WordPoly, degrees: &[u32]) -> WordPoly {
    let mut out = WordPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend(wb);
            add_word(&mut out, &w, ca * cb, degrees);
        }
    }
    out
}

pub fn word_degree(w: &[usize], degrees: &[u32]) -> u32 {
    w.iter().map(|&g| degrees[g]).sum()
}

/// `d(w1...wk) = Σ (-1)^{|w1...w_{j-1}|} w1...d(wj)...wk`, expanded letter by letter.
pub fn word_d(p: &WordPoly, d: &[WordPoly], degrees: &[u32]) -> WordPoly {
    let mut out = WordPoly::new();
    for (w, c) in p {
        for j in 0..w.len() {
            let sign = if word_degree(&w[..j], degrees) % 2 == 1 { -1 } else { 1 };
            for (dw, dc) in &d[w[j]] {
                let mut nw = w[..j].to_vec();
                nw.extend(dw);
                nw.extend(&w[j + 1..]);
                let coeff = if sign < 0 { -(c * dc) } else { c * dc };
                add_word(&mut out, &nw, coeff, degrees);
            }
        }
    }
    out
}

/// Exponent vectors of total degree `k` (odd letters at most once).
pub fn brute_basis(degrees: &[u32], k: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, degrees: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if degrees[i] % 2 == 1 { 1 } else { left / degrees[i] };
        for e in 0..=max {
            if e * degrees[i] > left {
                break;
            }
            cur.push(e);
            go(i + 1, left - e * degrees[i], degrees, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, degrees, &mut Vec::new(), &mut out);
    out
}

pub fn exps_to_word(e: &[u32]) -> Vec<usize> {
    e.iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
        .collect()
}

/// Rank over Q by plain Gaussian elimination on fractions.
pub fn rank_q(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..ncols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Betti numbers of `(ΛV, d)` in degrees `0..=up_to` from the word oracle.
pub fn brute_betti(degrees: &[u32], d: &[WordPoly], up_to: u32) -> Vec<usize> {
    let bases: Vec<Vec<Vec<u32>>> = (0..=up_to + 1).map(|k| brute_basis(degrees, k)).collect();
    let rank_of = |k: usize| -> usize {
        if bases[k].is_empty() || bases[k + 1].is_empty() {
            return 0;
        }
        let index: BTreeMap<Vec<usize>, usize> = bases[k + 1]
            .iter()
            .enumerate()
            .map(|(i, e)| (exps_to_word(e), i))
            .collect();
        let rows = bases[k]
            .iter()
            .map(|e| {
                let mut p = WordPoly::new();
                p.insert(exps_to_word(e), Q::one());
                let img = word_d(&p, d, degrees);
                let mut row = vec![Q::zero(); bases[k + 1].len()];
                for (w, c) in img {
                    row[index[&w]] = c;
                }
                row
            })
            .collect();
        rank_q(rows)
    };
    let ranks: Vec<usize> = (0..=up_to as usize).map(rank_of).collect();
    (0..=up_to as usize)
        .map(|k| bases[k].len() - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect()
}

/// All points of `{z in (K*)^n : z^r = 1 for every row r}` when that set is
/// finite, as exponent vectors over `Z/modulus` (a point is
/// `(exp(2 pi i a_j / modulus))_j`). `w` is the number of roots of unity in
/// `K` (`None` = all). The caller supplies a `modulus` that every point order
/// divides.
pub fn brute_points(rows: &[Vec<i64>], n: usize, modulus: i64, w: Option<i64>) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut a = vec![0i64; n];
    loop {
        let ok = rows
            .iter()
            .all(|r| r.iter().zip(&a).map(|(x, y)| x * y).sum::<i64>().rem_euclid(modulus) == 0);
        let in_field = a.iter().all(|&x| match w {
            None => true,
            // order of exp(2 pi i x / modulus) divides w
            Some(w) => (x * w).rem_euclid(modulus) == 0,
        });
        if ok && in_field {
            out.insert(a.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            a[i] += 1;
            if a[i] < modulus {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Integer membership of `v` in the row lattice of a full-rank square `rows`,
/// by Cramer's rule.
pub fn in_row_lattice(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let n = rows.len();
    let d = {
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| rows[j][i]).collect()).collect();
        signed_det(&t)
    };
    if d == 0 {
        return false;
    }
    (0..n).all(|k| {
        // solve x * rows = v, i.e. rows^T x = v
        let t: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if j == k { v[i] } else { rows[j][i] }).collect())
            .collect();
        signed_det(&t) % d == 0
    })
}

pub fn signed_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * signed_det(&minor)
        })
        .sum()
}

/// Number of prime factors with multiplicity, by trial division.
pub fn big_omega(mut m: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            m /= p;
            count += 1;
        }
        p += 1;
    }
    if m > 1 {
        count += 1;
    }
    count
}

/// Longest chain (in elements) of a strict order given as `gt[a][b]`.
pub fn longest_chain(gt: &[Vec<bool>]) -> usize {
    fn from(a: usize, gt: &[Vec<bool>], memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(v) = memo[a] {
            return v;
        }
        let best = (0..gt.len())
            .filter(|&b| gt[a][b])
            .map(|b| from(b, gt, memo))
            .max()
            .unwrap_or(0);
        memo[a] = Some(best + 1);
        best + 1
    }
    let mut memo = vec![None; gt.len()];
    (0..gt.len()).map(|a| from(a, gt, &mut memo)).max().unwrap_or(0)
}

/// Covering pairs of a strict order, 1-based, by definition.
pub fn covers(gt: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = gt.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if gt[a][b] && !(0..n).any(|c| gt[a][c] && gt[c][b]) {
                out.push((a + 1, b + 1));
            }
        }
    }
    out
}

/// Determinant over Q by fraction elimination.
pub fn det_q(m: &[Vec<BigInt>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let sub = &f * &a[c][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}
