//! Presentation ideals of two other spaces whose cohomology is generated in
//! degree one: orientable surfaces and link complements.

use std::collections::VecDeque;

use crate::error::{precondition, Result};
use crate::exterior::{ExtElem, Exterior};
use crate::field::Field;

/// Ideal of the cohomology ring of the genus-g surface in the exterior
/// algebra on a_1, b_1, .., a_g, b_g (a_i = e_{2i-1}, b_i = e_{2i}).
pub fn surface_algebra_ideal<F: Field>(field: &F, g: usize) -> Result<(Exterior<F>, Vec<ExtElem<F::Scalar>>)> {
    if g == 0 {
        return precondition("genus must be at least 1");
    }
    let ext = Exterior::new(2 * g, field)?;
    let a = |i: usize| 2 * i;
    let b = |i: usize| 2 * i + 1;
    let pair = |x: usize, y: usize| ext.mul(&ext.var(x), &ext.var(y));
    let mut gens = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            gens.push(pair(a(i), a(j)));
            gens.push(pair(b(i), b(j)));
        }
    }
    for i in 0..g {
        for j in 0..g {
            if i != j {
                gens.push(pair(a(i), b(j)));
            }
        }
    }
    for i in 0..g.saturating_sub(1) {
        gens.push(ext.sub(&pair(a(i), b(i)), &pair(a(i + 1), b(i + 1))));
    }
    Ok((ext, gens))
}

/// Ideal of the cohomology ring of a link complement, from the linking
/// matrix. Requires characteristic 0 and a connected linking graph.
pub fn link_complement_ideal<F: Field>(field: &F, linking: &[Vec<i64>]) -> Result<(Exterior<F>, Vec<ExtElem<F::Scalar>>)> {
    if field.characteristic() != 0 {
        return precondition("link complement ideal needs characteristic 0");
    }
    let n = linking.len();
    for (i, row) in linking.iter().enumerate() {
        if row.len() != n || row[i] != 0 {
            return precondition("linking matrix must be square with zero diagonal");
        }
        for j in 0..n {
            if linking[j][i] != row[j] {
                return precondition("linking matrix must be symmetric");
            }
        }
    }
    let ext = Exterior::new(n, field)?;
    let edge = |i: usize, j: usize| linking[i][j] != 0;

    // BFS spanning tree from the first component
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    if n > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if edge(u, v) && !seen[v] {
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return precondition("linking graph is disconnected");
    }

    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !edge(i, j) {
                gens.push(ext.mul(&ext.var(i), &ext.var(j)));
            }
        }
    }
    let path_to_root = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    for u in 0..n {
        for v in u + 1..n {
            if !edge(u, v) || parent[v] == u || parent[u] == v {
                continue;
            }
            // cycle u -> v, then back to u along the tree
            let pv = path_to_root(v);
            let pu = path_to_root(u);
            let common = *pv.iter().find(|x| pu.contains(x)).expect("tree paths meet");
            let mut cycle = vec![u];
            cycle.extend(pv.iter().take_while(|x| **x != common));
            if common != u {
                cycle.push(common);
            }
            let back: Vec<usize> = pu.iter().take_while(|x| **x != common).copied().collect();
            cycle.extend(back.into_iter().rev().filter(|x| *x != u));
            let mut rel = ExtElem::zero();
            for k in 0..cycle.len() {
                let (x, y) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                let c = field.inv(&field.from_i64(linking[x][y]));
                rel = ext.add(&rel, &ext.scale(&ext.mul(&ext.var(x), &ext.var(y)), &c));
            }
            gens.push(rel);
        }
    }
    Ok((ext, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn surfaces() {
        let q = Rationals;
        assert!(surface_algebra_ideal(&q, 1).unwrap().1.is_empty());
        let (ext, g2) = surface_algebra_ideal(&q, 2).unwrap();
        assert_eq!(g2.len(), 5);
        assert_eq!(g2.iter().filter(|g| g.is_monomial()).count(), 4);
        assert_eq!(g2[4], ext.parse("e1e2 - e3e4", None).unwrap());
    }

    #[test]
    fn links() {
        let q = Rationals;
        let (_, hopf) = link_complement_ideal(&q, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(hopf.is_empty());
        let (ext, chain) = link_complement_ideal(&q, &[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(chain, vec![ext.parse("e1e3", None).unwrap()]);
        let (ext, tri) = link_complement_ideal(&q, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(tri, vec![ext.parse("e1e2 + e2e3 - e1e3", None).unwrap()]);
        let (ext, weighted) = link_complement_ideal(&q, &[vec![0, 2, 3], vec![2, 0, 1], vec![3, 1, 0]]).unwrap();
        assert_eq!(weighted, vec![ext.parse("1/2*e1e2 + e2e3 - 1/3*e1e3", None).unwrap()]);
    }

    #[test]
    fn link_preconditions() {
        let q = Rationals;
        assert!(link_complement_ideal(&q, &[vec![0, 0], vec![0, 0]]).is_err());
        let p = PrimeField::new(7).unwrap();
        assert!(link_complement_ideal(&p, &[vec![0, 1], vec![1, 0]]).is_err());
    }
}
