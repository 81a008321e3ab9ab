//! Exact feasibility of `A x = b, x ≥ 0` over the rationals.
//!
//! Phase one of the simplex method on a dense tableau with one artificial
//! variable per row, pivoting by Bland's rule so it always terminates. An
//! infeasible system yields a Farkas vector `y` with `yᵀA ≥ 0` and
//! `yᵀb < 0`, read off the final reduced costs of the artificials.

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

/// `a` is row-major with `b.len()` rows of equal length.
pub fn solve_feasibility(a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let m = b.len();
    assert_eq!(a.len(), m, "one right-hand side per row");
    let n = a.first().map_or(0, Vec::len);
    let width = n + m;

    // Rows with b < 0 are negated so the artificial basis starts feasible.
    let sign: Vec<bool> = b.iter().map(Rational::is_negative).collect();
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width + 1);
            for x in &a[i] {
                row.push(if sign[i] { -x } else { x.clone() });
            }
            for j in 0..m {
                row.push(if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                });
            }
            row.push(if sign[i] { -&b[i] } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    let cost = |j: usize| {
        if j >= n {
            Rational::one()
        } else {
            Rational::zero()
        }
    };

    let reduced = |t: &[Vec<Rational>], basis: &[usize]| -> Vec<Rational> {
        (0..width)
            .map(|j| {
                let mut d = cost(j);
                for (i, &bi) in basis.iter().enumerate() {
                    if bi >= n && !t[i][j].is_zero() {
                        d -= &t[i][j];
                    }
                }
                d
            })
            .collect()
    };

    loop {
        let d = reduced(&t, &basis);
        let Some(enter) = (0..width).find(|&j| d[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below by zero.
        let (r, _) = leave.expect("phase one is never unbounded");
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }

    let objective: Rational = basis
        .iter()
        .enumerate()
        .filter(|&(_, &j)| j >= n)
        .map(|(i, _)| t[i][width].clone())
        .sum();
    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &j) in basis.iter().enumerate() {
            if j < n {
                x[j] = t[i][width].clone();
            }
        }
        LpOutcome::Feasible(x)
    } else {
        // Row duals u_i = 1 - d(artificial i); y = -u, undoing the negation.
        let d = reduced(&t, &basis);
        let y = (0..m)
            .map(|i| {
                let u = Rational::one() - &d[n + i];
                if sign[i] {
                    u
                } else {
                    -u
                }
            })
            .collect();
        LpOutcome::Infeasible(y)
    }
}

fn pivot(t: &mut [Vec<Rational>], r: usize, c: usize) {
    let p = t[r][c].recip();
    for x in t[r].iter_mut() {
        if !x.is_zero() {
            *x = &*x * &p;
        }
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &(&f * y);
            }
        }
    }
}

/// Checks a Farkas certificate directly against the system.
pub fn is_farkas_certificate(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) -> bool {
    if y.len() != b.len() {
        return false;
    }
    let n = a.first().map_or(0, Vec::len);
    let yb: Rational = y.iter().zip(b).map(|(y, b)| y * b).sum();
    yb.is_negative()
        && (0..n).all(|j| {
            let col: Rational = y.iter().zip(a).map(|(y, row)| y * &row[j]).sum();
            !col.is_negative()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn finds_a_point() {
        // x + y = 1, x - y = 1/2
        let a = vec![r(&[1, 1]), r(&[1, -1])];
        let b = vec![frac(1, 1), frac(1, 2)];
        assert_eq!(
            solve_feasibility(&a, &b),
            LpOutcome::Feasible(vec![frac(3, 4), frac(1, 4)])
        );
    }

    #[test]
    fn certifies_infeasibility() {
        // x + y = 1, x + y = 2
        let a = vec![r(&[1, 1]), r(&[1, 1])];
        let b = r(&[1, 2]);
        match solve_feasibility(&a, &b) {
            LpOutcome::Infeasible(y) => assert!(is_farkas_certificate(&a, &b, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
        // x = -1 with a negative right-hand side.
        let a = vec![r(&[1])];
        let b = r(&[-1]);
        match solve_feasibility(&a, &b) {
            LpOutcome::Infeasible(y) => assert!(is_farkas_certificate(&a, &b, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn redundant_rows() {
        let a = vec![r(&[1, 1, 0]), r(&[2, 2, 0]), r(&[0, 1, 1])];
        let b = r(&[1, 2, 1]);
        let LpOutcome::Feasible(x) = solve_feasibility(&a, &b) else {
            panic!("feasible")
        };
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: Rational = row.iter().zip(&x).map(|(a, x)| a * x).sum();
            assert_eq!(&lhs, rhs);
        }
    }
}
