//! Dense tableau simplex over exact rationals with Bland's pivoting rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: BigRational,
    pub point: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Maximizes c·z subject to A z ≤ b, z ≥ 0. Requires b ≥ 0 so that the
/// slack basis is feasible.
pub fn maximize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::Internal("simplex: inconsistent dimensions".into()));
    }
    if let Some(r) = b.iter().position(|x| x.is_negative()) {
        return Err(Error::InfeasibleStart(r));
    }
    let width = n + m + 1;
    // rows 0..m constraints, row m objective (reduced costs, negated c)
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (r, row) in a.iter().enumerate() {
        let mut v = vec![BigRational::zero(); width];
        v[..n].clone_from_slice(row);
        v[n + r] = BigRational::one();
        v[width - 1] = b[r].clone();
        t.push(v);
    }
    let mut obj = vec![BigRational::zero(); width];
    for (j, cj) in c.iter().enumerate() {
        obj[j] = -cj.clone();
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: lowest-index entering column with negative reduced cost
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Error::Unbounded);
        };
        let piv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &piv;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r == pr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[pr] = enter;
    }
    let mut point = vec![BigRational::zero(); n];
    for (r, &var) in basis.iter().enumerate() {
        if var < n {
            point[var] = t[r][width - 1].clone();
        }
    }
    Ok(LpSolution {
        value: t[m][width - 1].clone(),
        point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn textbook() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let s = maximize(&r(&[3, 5]), &[r(&[1, 0]), r(&[0, 2]), r(&[3, 2])], &r(&[4, 12, 18])).unwrap();
        assert_eq!(s.value, rat(36));
        assert_eq!(s.point, r(&[2, 6]));
    }

    #[test]
    fn unbounded_and_infeasible_start() {
        assert!(matches!(maximize(&r(&[1, 0]), &[r(&[0, 1])], &r(&[1])), Err(Error::Unbounded)));
        assert!(matches!(maximize(&r(&[1]), &[r(&[1])], &r(&[-1])), Err(Error::InfeasibleStart(0))));
    }

    #[test]
    fn degenerate_does_not_cycle() {
        // Beale's example, cycles under the largest-coefficient rule
        let half = BigRational::new(1.into(), 2.into());
        let c = vec![
            BigRational::new(3.into(), 4.into()),
            rat(-150),
            BigRational::new(1.into(), 50.into()),
            rat(-6),
        ];
        let a = vec![
            vec![BigRational::new(1.into(), 4.into()), rat(-60), BigRational::new((-1).into(), 25.into()), rat(9)],
            vec![half.clone(), rat(-90), BigRational::new((-1).into(), 50.into()), rat(3)],
            r(&[0, 0, 1, 0]),
        ];
        let s = maximize(&c, &a, &r(&[0, 0, 1])).unwrap();
        assert_eq!(s.value, BigRational::new(1.into(), 20.into()));
    }
}
