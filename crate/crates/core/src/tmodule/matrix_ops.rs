//! The matrix operations ⊗², Sym², Alt² on r×r matrices.
//!
//! A matrix M acts on row-indexed coordinates; the induced matrices use the
//! lexicographically ordered bases e_i⊗e_j, e_ie_j (i ≤ j) and e_i∧e_j (i < j).

use serde::Serialize;

use crate::algebra::matrix::Mat;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    Tensor2,
    Sym2,
    Alt2,
}

impl TensorKind {
    pub fn name(self) -> &'static str {
        match self {
            TensorKind::Tensor2 => "tensor2",
            TensorKind::Sym2 => "sym2",
            TensorKind::Alt2 => "alt2",
        }
    }
    /// Size of the induced matrix for an r×r input.
    pub fn size(self, r: usize) -> usize {
        match self {
            TensorKind::Tensor2 => r * r,
            TensorKind::Sym2 => r * (r + 1) / 2,
            TensorKind::Alt2 => r * r.saturating_sub(1) / 2,
        }
    }
    pub fn all() -> [TensorKind; 3] {
        [TensorKind::Tensor2, TensorKind::Sym2, TensorKind::Alt2]
    }
}

impl std::str::FromStr for TensorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor" | "tensor2" => Ok(TensorKind::Tensor2),
            "sym" | "sym2" => Ok(TensorKind::Sym2),
            "alt" | "alt2" => Ok(TensorKind::Alt2),
            _ => Err(Error::Config(format!("unknown kind `{s}`"))),
        }
    }
}

fn pairs(r: usize, strict: bool) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..r {
        for j in i..r {
            if !(strict && i == j) {
                v.push((i, j));
            }
        }
    }
    v
}

/// T(M) for the chosen kind. Sym² and Alt² refuse characteristic 2.
pub fn matrix_t<R: Ring>(m: &Mat<R>, kind: TensorKind) -> Result<Mat<R>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let ctx = m.ctx().clone();
    if kind != TensorKind::Tensor2 && R::characteristic(&ctx) == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    let r = m.rows();
    let g = |i: usize, j: usize| m.get(i, j);
    Ok(match kind {
        TensorKind::Tensor2 => m.kron(m),
        TensorKind::Sym2 => {
            let b = pairs(r, false);
            Mat::from_fn(&ctx, b.len(), b.len(), |x, y| {
                let (i, j) = b[x];
                let (k, l) = b[y];
                if k == l {
                    g(i, k).times(g(j, k))
                } else {
                    g(i, k).times(g(j, l)).plus(&g(j, k).times(g(i, l)))
                }
            })
        }
        TensorKind::Alt2 => {
            let b = pairs(r, true);
            Mat::from_fn(&ctx, b.len(), b.len(), |x, y| {
                let (i, j) = b[x];
                let (k, l) = b[y];
                g(i, k).times(g(j, l)).minus(&g(j, k).times(g(i, l)))
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;
    use crate::algebra::poly::PolyA;

    #[test]
    fn rank2_displays() {
        let f = Fq::prime(5).unwrap();
        let e = |c: &[i64]| PolyA::from_ints(f, c);
        let m = Mat::from_rows(&f, vec![vec![e(&[1, 1]), e(&[2])], vec![e(&[0, 3]), e(&[4, 0, 1])]]);
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        let alt = matrix_t(&m, TensorKind::Alt2).unwrap();
        assert_eq!(alt.get(0, 0), &m.det());
        let s = matrix_t(&m, TensorKind::Sym2).unwrap();
        let two = PolyA::constant(f, 2);
        let want = Mat::from_rows(
            &f,
            vec![
                vec![a * a, &two * &(a * b), b * b],
                vec![a * c, &(a * d) + &(b * c), b * d],
                vec![c * c, &two * &(c * d), d * d],
            ],
        );
        assert_eq!(s, want);
        let id = Mat::<PolyA>::identity(&f, 3);
        assert_eq!(matrix_t(&id, TensorKind::Sym2).unwrap(), Mat::identity(&f, 6));
        assert_eq!(matrix_t(&id, TensorKind::Alt2).unwrap(), Mat::identity(&f, 3));
    }

    #[test]
    fn rejects_characteristic_two() {
        let f = Fq::prime(2).unwrap();
        let id = Mat::<PolyA>::identity(&f, 2);
        assert!(matrix_t(&id, TensorKind::Sym2).is_err());
        assert!(matrix_t(&id, TensorKind::Tensor2).is_ok());
    }
}
