use super::{Arrangement, Hyperplane};
use crate::error::{precondition, Result};
use crate::field::Field;

/// The coordinate hyperplanes of K^l.
pub fn boolean<F: Field>(field: &F, l: usize) -> Result<Arrangement<F>> {
    let hs = (0..l)
        .map(|i| Hyperplane {
            normal: (0..l).map(|j| if i == j { field.one() } else { field.zero() }).collect(),
            constant: field.zero(),
        })
        .collect();
    Arrangement::new(field, l, hs)
}

/// n lines through the origin of K^2: x = 0, y = 0, then x + k y = 0.
pub fn central_lines<F: Field>(field: &F, n: usize) -> Result<Arrangement<F>> {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| match i {
            0 => vec![1, 0, 0],
            1 => vec![0, 1, 0],
            k => vec![1, k as i64 - 1, 0],
        })
        .collect();
    Arrangement::from_int_rows(field, 2, &rows)
}

/// n lines in general position in K^2 (no two parallel, no three through a
/// point): x = 0, y = 0, x + y = 1, then the first small-integer candidates
/// that keep the arrangement generic.
pub fn generic_lines<F: Field>(field: &F, n: usize) -> Result<Arrangement<F>> {
    let mut rows: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, -1]];
    rows.truncate(n);
    let mut candidates = Vec::new();
    for c in 1..=12i64 {
        for a in -4..=4i64 {
            for b in 1..=4i64 {
                candidates.push(vec![a, b, -c]);
            }
        }
    }
    let mut it = candidates.into_iter();
    while rows.len() < n {
        let Some(cand) = it.next() else {
            return precondition(format!("no generic configuration of {n} lines found"));
        };
        let mut trial = rows.clone();
        trial.push(cand);
        if let Ok(a) = Arrangement::from_int_rows(field, 2, &trial) {
            if a.is_generic() {
                rows = trial;
            }
        }
    }
    Arrangement::from_int_rows(field, 2, &rows)
}
