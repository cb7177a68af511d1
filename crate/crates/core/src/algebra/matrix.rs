//! Dense matrices over any [`Ring`], with the Berkowitz characteristic
//! polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::PolyA;
use super::rat::RatK;
use super::ring::{Field, Ring, Twist};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Mat<R: Ring> {
    rows: usize,
    cols: usize,
    ctx: R::Ctx,
    data: Vec<R>,
}

impl<R: Ring> fmt::Debug for Mat<R> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(fm, "[")?;
        for i in 0..self.rows {
            writeln!(fm, "  {:?}", self.row(i))?;
        }
        write!(fm, "]")
    }
}

impl<R: Ring> Mat<R> {
    pub fn from_vec(ctx: &R::Ctx, rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Mat { rows, cols, ctx: ctx.clone(), data }
    }
    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<R> = rows.into_iter().flatten().collect();
        Self::from_vec(ctx, r, c, data)
    }
    pub fn from_fn(ctx: &R::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(ctx, rows, cols, data)
    }
    pub fn zeros(ctx: &R::Ctx, rows: usize, cols: usize) -> Self {
        Self::from_vec(ctx, rows, cols, vec![R::zero_in(ctx); rows * cols])
    }
    pub fn identity(ctx: &R::Ctx, n: usize) -> Self {
        Self::scalar(ctx, n, &R::one_in(ctx))
    }
    pub fn scalar(ctx: &R::Ctx, n: usize, x: &R) -> Self {
        Self::from_fn(ctx, n, n, |i, j| if i == j { x.clone() } else { R::zero_in(ctx) })
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: R) {
        self.data[i * self.cols + j] = x;
    }
    pub fn entries(&self) -> &[R] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat::from_vec(ctx, self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, x: &R) -> Self {
        Self::from_vec(&self.ctx, self.rows, self.cols, self.data.iter().map(|y| x.times(y)).collect())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!("{}x{} + {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect();
        Ok(Self::from_vec(&self.ctx, self.rows, self.cols, data))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(&self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(R::zero_in(&self.ctx), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(&self.ctx, self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).times(o.get(i % o.rows, j % o.cols))
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::identity(&self.ctx, self.rows);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Sub-block rows r0..r1, cols c0..c1.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(&self.ctx, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Characteristic polynomial det(X·I − M), ascending coefficients with
    /// leading 1, computed without division (Berkowitz).
    pub fn charpoly(&self) -> Vec<R> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let ctx = &self.ctx;
        let one = R::one_in(ctx);
        if n == 0 {
            return vec![one];
        }
        // coefficients highest degree first
        let mut c = vec![one.clone(), self.get(0, 0).negate()];
        for r in 1..n {
            let a = self.get(r, r);
            let row: Vec<R> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut s: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut q = Vec::with_capacity(r + 2);
            q.push(one.clone());
            q.push(a.negate());
            for k in 0..r {
                // −R·A_r^k·S
                let dot = row.iter().zip(&s).fold(R::zero_in(ctx), |acc, (x, y)| acc.plus(&x.times(y)));
                q.push(dot.negate());
                if k + 1 < r {
                    s = (0..r)
                        .map(|i| (0..r).fold(R::zero_in(ctx), |acc, j| acc.plus(&self.get(i, j).times(&s[j]))))
                        .collect();
                }
            }
            let mut next = vec![R::zero_in(ctx); r + 2];
            for (j, cj) in c.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                for (i, qi) in q.iter().enumerate().take(r + 2 - j) {
                    next[i + j] = next[i + j].plus(&qi.times(cj));
                }
            }
            c = next;
        }
        c.reverse();
        c
    }

    /// Determinant via the characteristic polynomial.
    pub fn det(&self) -> R {
        let c = self.charpoly();
        if self.rows.is_multiple_of(2) {
            c[0].clone()
        } else {
            c[0].negate()
        }
    }

    /// Evaluate a polynomial (ascending coefficients) at this matrix.
    pub fn eval_poly(&self, coeffs: &[R]) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(&self.ctx, n, n);
        for c in coeffs.iter().rev() {
            acc = &(&acc * self) + &Self::scalar(&self.ctx, n, c);
        }
        acc
    }

    /// Nilpotency index (smallest k with M^k = 0), if at most the size.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let n = self.rows;
        let mut p = Self::identity(&self.ctx, n);
        for k in 0..=n {
            if p.is_zero() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }
}

impl<R: Twist> Mat<R> {
    pub fn twist(&self, n: u32) -> Self {
        Self::from_vec(&self.ctx, self.rows, self.cols, self.data.iter().map(|x| x.twist(n)).collect())
    }
}

impl<R: Field> Mat<R> {
    /// Determinant by Gaussian elimination.
    pub fn det_gauss(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = R::one_in(&self.ctx);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return R::zero_in(&self.ctx);
            };
            if piv != col {
                for j in 0..n {
                    m.data.swap(piv * n + j, col * n + j);
                }
                det = det.negate();
            }
            let p = m.get(col, col).clone();
            det = det.times(&p);
            let pinv = p.inverse().expect("nonzero pivot");
            for i in col + 1..n {
                let factor = m.get(i, col).times(&pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(i, j).minus(&factor.times(m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.data.swap(piv * cols + j, rank * cols + j);
            }
            let pinv = m.get(rank, col).inverse().expect("nonzero pivot");
            for i in rank + 1..rows {
                let factor = m.get(i, col).times(&pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..cols {
                    let v = m.get(i, j).minus(&factor.times(m.get(rank, j)));
                    m.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solves self·x = b. Returns `None` when inconsistent, otherwise one
    /// solution (free variables set to zero) and the nullity.
    pub fn solve(&self, b: &[R]) -> Option<(Vec<R>, usize)> {
        assert_eq!(b.len(), self.rows);
        let (rows, cols) = (self.rows, self.cols);
        let w = cols + 1;
        let mut m: Vec<R> = Vec::with_capacity(rows * w);
        for i in 0..rows {
            m.extend_from_slice(self.row(i));
            m.push(b[i].clone());
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&i| !m[i * w + col].is_zero()) else {
                continue;
            };
            for j in 0..w {
                m.swap(piv * w + j, rank * w + j);
            }
            let pinv = m[rank * w + col].inverse().expect("nonzero pivot");
            for j in col..w {
                m[rank * w + j] = m[rank * w + j].times(&pinv);
            }
            for i in 0..rows {
                if i == rank || m[i * w + col].is_zero() {
                    continue;
                }
                let factor = m[i * w + col].clone();
                for j in col..w {
                    let v = m[i * w + j].minus(&factor.times(&m[rank * w + j]));
                    m[i * w + j] = v;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if (rank..rows).any(|i| !m[i * w + cols].is_zero()) {
            return None;
        }
        let mut x = vec![R::zero_in(&self.ctx); cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = m[i * w + cols].clone();
        }
        Some((x, cols - rank))
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Self::identity(&self.ctx, n);
        for col in 0..n {
            let piv = (col..n).find(|&i| !a.get(i, col).is_zero()).ok_or(Error::DivisionByZero)?;
            for j in 0..n {
                a.data.swap(piv * n + j, col * n + j);
                b.data.swap(piv * n + j, col * n + j);
            }
            let pinv = a.get(col, col).inverse().expect("nonzero pivot");
            for j in 0..n {
                a.set(col, j, a.get(col, j).times(&pinv));
                b.set(col, j, b.get(col, j).times(&pinv));
            }
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).clone();
                for j in 0..n {
                    a.set(i, j, a.get(i, j).minus(&factor.times(a.get(col, j))));
                    b.set(i, j, b.get(i, j).minus(&factor.times(b.get(col, j))));
                }
            }
        }
        Ok(b)
    }
}

/// Characteristic polynomial of a matrix over A by a second route:
/// Gaussian-elimination determinants of x·I − M over K at n + 1 points
/// followed by Lagrange interpolation.
pub fn charpoly_by_interpolation(m: &Mat<PolyA>) -> Vec<PolyA> {
    let n = m.rows();
    let fq = *m.ctx();
    let mk = m.map(&fq, |x| RatK::from_poly(x.clone()));
    let pts: Vec<RatK> = (0..=n).map(|k| RatK::from_poly(PolyA::monic_from_index(fq, 1 + k / fq.q() as usize, k as u64))).collect();
    let vals: Vec<RatK> = pts.iter().map(|x| (&Mat::scalar(&fq, n, x) - &mk).det_gauss()).collect();
    // Lagrange basis polynomials in X with coefficients in K
    let mut out = vec![RatK::zero(fq); n + 1];
    for (i, xi) in pts.iter().enumerate() {
        let mut basis = vec![RatK::one(fq)];
        let mut denom = RatK::one(fq);
        for (j, xj) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![RatK::zero(fq); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + b;
                next[k] = &next[k] - &(b * xj);
            }
            basis = next;
            denom = &denom * &(xi - xj);
        }
        let w = &vals[i] / &denom;
        for (k, b) in basis.iter().enumerate() {
            out[k] = &out[k] + &(b * &w);
        }
    }
    out.into_iter().map(|x| x.as_poly().expect("characteristic polynomial over A").clone()).collect()
}

impl<'a, R: Ring> Add<&'a Mat<R>> for &'a Mat<R> {
    type Output = Mat<R>;
    fn add(self, o: &'a Mat<R>) -> Mat<R> {
        self.try_add(o).expect("dimension mismatch")
    }
}
impl<'a, R: Ring> Sub<&'a Mat<R>> for &'a Mat<R> {
    type Output = Mat<R>;
    fn sub(self, o: &'a Mat<R>) -> Mat<R> {
        self.try_add(&-o).expect("dimension mismatch")
    }
}
impl<'a, R: Ring> Mul<&'a Mat<R>> for &'a Mat<R> {
    type Output = Mat<R>;
    fn mul(self, o: &'a Mat<R>) -> Mat<R> {
        self.try_mul(o).expect("dimension mismatch")
    }
}
impl<R: Ring> Neg for &Mat<R> {
    type Output = Mat<R>;
    fn neg(self) -> Mat<R> {
        Mat::from_vec(&self.ctx, self.rows, self.cols, self.data.iter().map(|x| x.negate()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_mat(f: Fq, n: usize, rng: &mut ChaCha8Rng) -> Mat<PolyA> {
        Mat::from_fn(&f, n, n, |_, _| PolyA::random(f, 3, rng))
    }

    #[test]
    fn two_by_two_trace_det() {
        let f = Fq::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = rand_mat(f, 2, &mut rng);
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        let cp = m.charpoly();
        assert_eq!(cp[2], PolyA::one(f));
        assert_eq!(cp[1], -&(a + d));
        assert_eq!(cp[0], &(a * d) - &(b * c));
    }

    #[test]
    fn identity_charpoly() {
        let f = Fq::prime(5).unwrap();
        let cp = Mat::<PolyA>::identity(&f, 3).charpoly();
        // (X − 1)³ = X³ − 3X² + 3X − 1
        assert_eq!(cp, vec![PolyA::constant(f, 4), PolyA::constant(f, 3), PolyA::constant(f, 2), PolyA::one(f)]);
    }

    #[test]
    fn berkowitz_matches_interpolation_and_cayley_hamilton() {
        let f = Fq::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=4 {
            let m = rand_mat(f, n, &mut rng);
            let cp = m.charpoly();
            assert_eq!(cp, charpoly_by_interpolation(&m));
            assert!(m.eval_poly(&cp).is_zero());
        }
    }

    #[test]
    fn inverse_over_k() {
        let f = Fq::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = rand_mat(f, 3, &mut rng).map(&f, |x| RatK::from_poly(x.clone()));
        if !m.det_gauss().is_zero() {
            let i = m.inverse().unwrap();
            assert_eq!(&m * &i, Mat::identity(&f, 3));
        }
    }
}
