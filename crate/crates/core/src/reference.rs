//! Reference values for the four-parameter family, as polynomials in
//! `l1..l4`, in the compact chained form they are usually tabulated in:
//! a row `m1*T_a = m2*T_b = ... = value` lists each component with its
//! multiplier, so component `T_a = value / m1`.
//!
//! Indices are 1-based here to keep the tables readable; the accessors
//! return 0-based indices.

use crate::scalar::{Poly, Rational, Scalar};

fn lam(i: usize) -> Poly {
    Poly::var(i - 1)
}

fn sq(i: usize) -> Poly {
    lam(i) * lam(i)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `l1^2 + l2^2 - l3^2 - l4^2`, the polynomial every family invariant is a
/// multiple of.
pub fn neutral_square() -> Poly {
    sq(1) + sq(2) - sq(3) - sq(4)
}

/// Decodes a three- or four-digit index literal such as `1221`.
fn digits(code: u32, len: usize) -> Vec<usize> {
    let s = code.to_string();
    assert_eq!(s.len(), len, "index literal {code} has wrong arity");
    s.bytes().map(|b| (b - b'1') as usize).collect()
}

/// Curvature components `R_{ijks}` as listed for the family (18 entries).
pub fn curvature_table() -> Vec<(Vec<usize>, Poly)> {
    let quarter = |p: Poly| p.scale(&q(1, 4));
    let rows: Vec<(u32, Poly)> = vec![
        (1221, quarter(-(sq(1) + sq(2)))),
        (1331, quarter(sq(2) - sq(4))),
        (1441, quarter(-(sq(1) - sq(4)))),
        (2332, quarter(sq(2) - sq(3))),
        (2442, quarter(sq(1) - sq(3))),
        (3443, quarter(sq(3) + sq(4))),
        (1341, quarter(-(lam(1) * lam(2)))),
        (2342, quarter(-(lam(1) * lam(2)))),
        (2132, quarter(lam(1) * lam(3))),
        (4134, quarter(-(lam(1) * lam(3)))),
        (1231, quarter(lam(1) * lam(4))),
        (4234, quarter(-(lam(1) * lam(4)))),
        (2142, quarter(lam(2) * lam(3))),
        (3143, quarter(-(lam(2) * lam(3)))),
        (1241, quarter(lam(2) * lam(4))),
        (3243, quarter(-(lam(2) * lam(4)))),
        (3123, quarter(lam(3) * lam(4))),
        (4124, quarter(lam(3) * lam(4))),
    ];
    rows.into_iter().map(|(c, v)| (digits(c, 4), v)).collect()
}

/// One chained row: `(multiplier, index)` pairs sharing `value`.
struct ChainRow {
    entries: &'static [(i64, u32)],
    value: (i64, i64, usize),
}

fn expand(rows: &[ChainRow]) -> Vec<(Vec<usize>, Poly)> {
    let mut out = Vec::new();
    for row in rows {
        let (n, d, var) = row.value;
        let value = lam(var).scale(&q(n, d));
        for &(mult, code) in row.entries {
            out.push((digits(code, 3), value.scale(&q(1, mult))));
        }
    }
    out
}

/// Nonzero components `(F_2)_{ijk}`.
pub fn f2_table() -> Vec<(Vec<usize>, Poly)> {
    expand(&[
        ChainRow {
            entries: &[
                (-1, 122), (-1, 144), (2, 212), (2, 221), (2, 234),
                (2, 243), (2, 414), (-2, 423), (-2, 432), (2, 441),
            ],
            value: (1, 1, 1),
        },
        ChainRow {
            entries: &[
                (2, 112), (2, 121), (2, 134), (2, 143), (-1, 211),
                (-1, 233), (-2, 314), (2, 323), (2, 332), (-2, 341),
            ],
            value: (1, 1, 2),
        },
        ChainRow {
            entries: &[
                (2, 214), (-2, 223), (-2, 232), (2, 241), (1, 322),
                (1, 344), (-2, 412), (-2, 421), (-2, 434), (-2, 443),
            ],
            value: (1, 1, 3),
        },
        ChainRow {
            entries: &[
                (-2, 114), (2, 123), (2, 132), (-2, 141), (-2, 312),
                (-2, 321), (-2, 334), (-2, 343), (1, 411), (1, 433),
            ],
            value: (1, 1, 4),
        },
    ])
}

/// Nonzero components `(F_1)_{ijk}`.
pub fn f1_table() -> Vec<(Vec<usize>, Poly)> {
    expand(&[
        ChainRow {
            entries: &[
                (1, 114), (-1, 123), (1, 132), (-1, 141),
                (1, 213), (1, 224), (-1, 231), (-1, 242),
            ],
            value: (1, 2, 1),
        },
        ChainRow {
            entries: &[
                (-1, 113), (-1, 124), (1, 131), (1, 142),
                (1, 214), (-1, 223), (1, 232), (-1, 241),
            ],
            value: (1, 2, 2),
        },
        ChainRow {
            entries: &[
                (-1, 314), (1, 323), (-1, 332), (1, 341),
                (1, 413), (1, 424), (-1, 431), (-1, 442),
            ],
            value: (1, 2, 3),
        },
        ChainRow {
            entries: &[
                (-1, 313), (-1, 324), (1, 331), (1, 342),
                (-1, 414), (1, 423), (-1, 432), (1, 441),
            ],
            value: (1, 2, 4),
        },
    ])
}

/// Nonzero components `(F_3)_{ijk}` exactly as tabulated. The eight
/// entries carrying multiplier `+-2` disagree with the linking identity
/// `F3(x,y,z) = F1(x,J2y,z) - F2(x,y,J1z)` applied to [`f1_table`] and
/// [`f2_table`] by a factor of 4; see [`crate::audit`].
pub fn f3_table() -> Vec<(Vec<usize>, Poly)> {
    expand(&[
        ChainRow {
            entries: &[
                (1, 112), (1, 121), (-1, 134), (-1, 143), (-2, 211),
                (-2, 244), (1, 413), (1, 431), (1, 424), (1, 442),
            ],
            value: (1, 2, 1),
        },
        ChainRow {
            entries: &[
                (2, 122), (2, 133), (-1, 212), (-1, 221), (1, 234),
                (1, 243), (-1, 313), (-1, 331), (-1, 324), (-1, 342),
            ],
            value: (1, 2, 2),
        },
        ChainRow {
            entries: &[
                (1, 213), (1, 231), (1, 224), (1, 242), (-1, 312),
                (-1, 321), (1, 343), (1, 334), (-2, 422), (-2, 433),
            ],
            value: (1, 2, 3),
        },
        ChainRow {
            entries: &[
                (-1, 113), (-1, 124), (-1, 131), (-1, 142), (2, 311),
                (2, 344), (1, 412), (1, 421), (-1, 434), (-1, 443),
            ],
            value: (1, 2, 4),
        },
    ])
}

/// Lee form components `(theta_alpha)_i` for `alpha = 1, 2, 3`.
pub fn lee_forms() -> [Vec<Poly>; 3] {
    [
        vec![-lam(4), lam(3), -lam(2), lam(1)],
        vec![Poly::zero(); 4],
        vec![Poly::zero(); 4],
    ]
}

/// Basic components `d theta_1 (X_i, X_j)` (six independent entries).
pub fn d_theta1_table() -> Vec<(Vec<usize>, Poly)> {
    let l = lam;
    vec![
        (vec![0, 1], sq(1) + sq(2)),
        (vec![1, 3], l(1) * l(4) + l(2) * l(3)),
        (vec![2, 0], l(1) * l(4) + l(2) * l(3)),
        (vec![2, 3], -sq(3) - sq(4)),
        (vec![0, 3], l(1) * l(3) - l(2) * l(4)),
        (vec![1, 2], l(1) * l(3) - l(2) * l(4)),
    ]
}

/// Closed forms for the scalar invariants.
pub struct ReferenceScalars {
    pub tau: Poly,
    pub tau_star: [Poly; 3],
    /// `||nabla J_alpha||`, from `-2||nabla J1|| = ||nabla J2|| = ||nabla J3|| = 4 P`.
    pub nabla_j: [Poly; 3],
    /// `||N_2|| = ||N_3|| = 32 P`; `N_1 = 0`.
    pub nijenhuis: [Poly; 3],
    /// `||theta_1|| = -P`.
    pub theta1_norm: Poly,
}

pub fn scalars() -> ReferenceScalars {
    let p = neutral_square();
    ReferenceScalars {
        tau: p.scale(&q(-3, 2)),
        tau_star: [
            p.scale(&q(1, 2)),
            lam(1) * lam(3) + lam(2) * lam(4),
            lam(1) * lam(4) - lam(2) * lam(3),
        ],
        nabla_j: [p.scale(&q(-2, 1)), p.scale(&q(4, 1)), p.scale(&q(4, 1))],
        nijenhuis: [Poly::zero(), p.scale(&q(32, 1)), p.scale(&q(32, 1))],
        theta1_norm: -p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        assert_eq!(curvature_table().len(), 18);
        assert_eq!(f1_table().len(), 32);
        assert_eq!(f2_table().len(), 40);
        assert_eq!(f3_table().len(), 40);
    }

    #[test]
    fn tables_have_no_duplicate_indices() {
        for t in [f1_table(), f2_table(), f3_table(), curvature_table()] {
            let mut idx: Vec<_> = t.iter().map(|(i, _)| i.clone()).collect();
            idx.sort();
            idx.dedup();
            assert_eq!(idx.len(), t.len());
        }
    }

    #[test]
    fn chained_rows_decode() {
        let f2 = f2_table();
        let get = |i: [usize; 3]| f2.iter().find(|(k, _)| k == &i.to_vec()).unwrap().1.clone();
        assert_eq!(get([1, 0, 1]), lam(1).scale(&q(1, 2)));
        assert_eq!(get([0, 1, 1]), -lam(1));
        let f3 = f3_table();
        let get3 = |i: [usize; 3]| f3.iter().find(|(k, _)| k == &i.to_vec()).unwrap().1.clone();
        assert_eq!(get3([1, 0, 0]), lam(1).scale(&q(-1, 4)));
    }
}
