//! Exact linear algebra over the rationals: reduced row echelon form,
//! rank, linear solving, and kernel bases.  Deterministic pivoting (first
//! nonzero entry, top to bottom) so equal inputs give identical outputs.

use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Reduced row echelon form together with the pivot column of each pivot
/// row.
pub fn rref(mut m: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in &mut m[r] {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    rref(m.to_vec()).1.len()
}

/// Solves `A·x = b` exactly.  Returns `None` when the system is
/// inconsistent; with free columns, they are set to zero, so the result is
/// the unique solution whenever `A` has full column rank.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len(), "matrix and right-hand side must agree");
    let cols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(aug);
    if pivots.contains(&cols) {
        return None; // a pivot in the augmented column: 0 = 1
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    Some(x)
}

/// Basis of the kernel of `m` in reduced echelon convention: one vector
/// per free column, ascending, with a `1` in the free position.
pub fn kernel_basis(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = m.first().map_or(0, Vec::len);
    let (e, pivots) = rref(m.to_vec());
    let mut out = Vec::new();
    for f in 0..cols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -e[row][f].clone();
        }
        out.push(v);
    }
    out
}

/// Scales a nonzero rational vector to the primitive integer vector with
/// the same direction: multiply by the common denominator, divide by the
/// gcd, keep the sign pattern.
pub fn scale_to_integers(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from(lcm.clone())).to_integer()).collect();
    let mut gcd = Int::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() || gcd.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}
