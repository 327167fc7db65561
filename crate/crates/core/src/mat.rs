//! Small 3x3 matrix helpers over the rationals and the integers.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratfun::{q, Q};

pub type Mat3 = [[Q; 3]; 3];
pub type IMat3 = [[i64; 3]; 3];

pub fn from_int(m: &IMat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| q(m[i][j])))
}

pub fn identity() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() }))
}

pub fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Q::zero(), |s, k| s + &a[i][k] * &b[k][j]))
    })
}

pub fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn scale(a: &Mat3, c: &Q) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * c))
}

pub fn det(a: &Mat3) -> Q {
    &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
        - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
        + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
}

/// Adjugate (transpose of the cofactor matrix).
pub fn adjugate(a: &Mat3) -> Mat3 {
    let c = |r: usize, s: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != s).collect();
        let m = &a[rows[0]][cols[0]] * &a[rows[1]][cols[1]] - &a[rows[0]][cols[1]] * &a[rows[1]][cols[0]];
        if (r + s) % 2 == 0 {
            m
        } else {
            -m
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| c(j, i)))
}

pub fn inverse(a: &Mat3) -> Result<Mat3> {
    let d = det(a);
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(scale(&adjugate(a), &d.recip()))
}

pub fn rank(a: &Mat3) -> usize {
    let mut m = a.clone();
    let mut r = 0;
    for col in 0..3 {
        let Some(piv) = (r..3).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, piv);
        for i in 0..3 {
            if i != r && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                for j in 0..3 {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn imul(a: &IMat3, b: &IMat3) -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn idet(a: &IMat3) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}
