use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GradedMatrix;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::ideal::Ideal;
use crate::limits::{self, MAX_MINOR_STATES};
use crate::poly::Poly;

/// Laplace expansion along the first remaining row, memoized on
/// `(row set, column set)`.
pub(crate) struct Minors<'a> {
    m: &'a GradedMatrix,
    memo: HashMap<(u16, u16), Poly>,
}

impl<'a> Minors<'a> {
    pub(crate) fn new(m: &'a GradedMatrix) -> Result<Self> {
        m.check_size()?;
        Ok(Minors {
            m,
            memo: HashMap::new(),
        })
    }

    pub(crate) fn det(&mut self, rows: u16, cols: u16) -> Result<Poly> {
        if rows == 0 {
            return Ok(self.m.ring().polys().one());
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return Ok(p.clone());
        }
        if self.memo.len() >= MAX_MINOR_STATES {
            return Err(Error::ResourceLimit(format!(
                "minor expansion exceeded {MAX_MINOR_STATES} memoized states"
            )));
        }
        if self.memo.len().is_multiple_of(1024) {
            limits::check_deadline()?;
        }
        let polys = self.m.ring().polys();
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r0);
        let mut acc = Poly::zero();
        let mut k = 0;
        let mut cs = cols;
        while cs != 0 {
            let c = cs.trailing_zeros() as usize;
            cs &= cs - 1;
            let a = self.m.entry(r0, c);
            if !a.is_zero() {
                let sub = self.det(rest, cols & !(1 << c))?;
                if !sub.is_zero() {
                    let term = polys.mul(a, &sub);
                    acc = if k % 2 == 0 {
                        polys.add(&acc, &term)
                    } else {
                        polys.sub(&acc, &term)
                    };
                }
            }
            k += 1;
        }
        self.memo.insert((rows, cols), acc.clone());
        Ok(acc)
    }

    /// All nonzero `k x k` minors, rows and columns in increasing order.
    pub(crate) fn all(&mut self, k: usize) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for rows in subsets(self.m.rows(), k) {
            for cols in subsets(self.m.cols(), k) {
                let d = self.det(rows, cols)?;
                if !d.is_zero() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        Ok(out)
    }

    fn any_nonzero(&mut self, k: usize) -> Result<bool> {
        for rows in subsets(self.m.rows(), k) {
            for cols in subsets(self.m.cols(), k) {
                if !self.det(rows, cols)?.is_zero() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Bitmasks of all `k`-subsets of `0..n`, in increasing numeric order.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = u16> {
    (0u32..(1u32 << n))
        .filter(move |s| s.count_ones() as usize == k)
        .map(|s| s as u16)
}

/// The ideal of `r x r` minors; the unit ideal for `r <= 0`.
pub fn minors_ideal(r: i64, m: &GradedMatrix) -> Result<Ideal> {
    let ring = m.ring();
    if r <= 0 {
        return Ok(Ideal::unit(ring));
    }
    let r = r as usize;
    if r > m.rows().min(m.cols()) {
        return Ok(Ideal::zero(ring));
    }
    let mut cache = Minors::new(m)?;
    Ideal::new(ring, cache.all(r)?)
}

/// Largest `r` with a nonzero `r x r` minor.
pub fn rank(m: &GradedMatrix) -> Result<usize> {
    Ok(rank_and_cache(m)?.0)
}

/// The ideal of maximal nonvanishing minors `I_{rank}`.
pub fn max_minors(m: &GradedMatrix) -> Result<Ideal> {
    Ok(rank_and_max_minors(m)?.1)
}

/// Rank together with `I_{rank}`, sharing one minor expansion.
pub fn rank_and_max_minors(m: &GradedMatrix) -> Result<(usize, Ideal)> {
    let (r, mut cache) = rank_and_cache(m)?;
    if r == 0 {
        return Ok((0, Ideal::unit(m.ring())));
    }
    Ok((r, Ideal::new(m.ring(), cache.all(r)?)?))
}

pub(crate) fn rank_and_cache(m: &GradedMatrix) -> Result<(usize, Minors<'_>)> {
    let mut cache = Minors::new(m)?;
    if m.is_zero() {
        return Ok((0, cache));
    }
    let (mut r, rows, cols) = numeric_guess(m);
    // a nonzero evaluation makes this minor nonzero; expanding it certifies
    // the lower bound symbolically
    let witness = cache.det(rows, cols)?;
    debug_assert!(!witness.is_zero());
    let cap = m.rows().min(m.cols());
    while r < cap && cache.any_nonzero(r + 1)? {
        r += 1;
    }
    Ok((r, cache))
}

/// Rank at a few random points, with the rows and columns of a nonsingular
/// square block realizing it.
fn numeric_guess(m: &GradedMatrix) -> (usize, u16, u16) {
    let ring = m.ring();
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(ring.seed());
    let mut best = (0, 0, 0);
    for _ in 0..3 {
        let point: Vec<Scalar> = (0..ring.nvars()).map(|_| rng.gen_range(0..field.modulus())).collect();
        let vals: Vec<Vec<Scalar>> = m
            .entries()
            .iter()
            .map(|row| row.iter().map(|e| ring.polys().eval(e, &point)).collect())
            .collect();
        let rows = independent(field, &vals, (0..m.rows()).collect());
        let sub: Vec<Vec<Scalar>> = (0..m.cols())
            .map(|j| rows.iter().map(|&i| vals[i][j]).collect())
            .collect();
        let cols = independent(field, &sub, (0..m.cols()).collect());
        if rows.len() > best.0 {
            let mask = |v: &[usize]| v.iter().fold(0u16, |acc, &i| acc | (1 << i));
            best = (rows.len(), mask(&rows), mask(&cols));
        }
        if best.0 == m.rows().min(m.cols()) {
            break;
        }
    }
    best
}

/// Greedily picks linearly independent rows, in order.
fn independent(field: &PrimeField, vecs: &[Vec<Scalar>], order: Vec<usize>) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut chosen = Vec::new();
    for i in order {
        let mut v = vecs[i].clone();
        for (p, b) in &basis {
            if v[*p] != 0 {
                let f = v[*p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.sub(*x, field.mul(f, *y));
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let inv = field.inv(v[p]).expect("nonzero");
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            basis.push((p, v));
            chosen.push(i);
        }
    }
    chosen
}
