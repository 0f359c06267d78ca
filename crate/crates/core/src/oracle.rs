//! Brute-force twisted conjugacy counts in finite quotients, independent of
//! the determinant formula.
//!
//! The quotient by `m` reduces the abelianised coordinates mod `m` and the
//! central coordinates mod `m / gcd(m, 2)`. The power `x^m` has central part
//! `C(m, 2) z_i z_j`, which vanishes only modulo `m / 2` when `m` is even, so
//! this is the smallest fully invariant reduction of the group law.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactlin::{smith_normal_form, ExtNat, IntMatrix, LinAlgError};
use crate::morphism::Endo;
use crate::nilgroup::{GroupElement, Presentation};

/// Largest quotient the oracle will enumerate.
pub const MAX_QUOTIENT_ORDER: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("quotient of order {order} exceeds the limit of {limit} elements")]
    TooLarge { order: String, limit: u64 },
    #[error("automorphism belongs to a different graph")]
    GraphMismatch,
}

#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    presentation: Presentation,
    modulus: u64,
    t_modulus: u64,
    order: u64,
}

impl FiniteQuotient {
    pub fn new(presentation: Presentation, modulus: u64) -> Result<Self, OracleError> {
        if modulus < 2 {
            return Err(OracleError::ModulusTooSmall(modulus));
        }
        let t_modulus = if modulus % 2 == 0 {
            modulus / 2
        } else {
            modulus
        };
        let order = BigInt::from(modulus).pow(presentation.n() as u32)
            * BigInt::from(t_modulus).pow(presentation.big_n() as u32);
        match order.to_u64() {
            Some(o) if o <= MAX_QUOTIENT_ORDER => Ok(Self {
                presentation,
                modulus,
                t_modulus,
                order: o,
            }),
            _ => Err(OracleError::TooLarge {
                order: order.to_string(),
                limit: MAX_QUOTIENT_ORDER,
            }),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn t_modulus(&self) -> u64 {
        self.t_modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn radix(&self, k: usize) -> u64 {
        if k < self.presentation.n() {
            self.modulus
        } else {
            self.t_modulus
        }
    }

    /// Coordinates `z` then `t`, reduced.
    pub fn reduce(&self, g: &GroupElement) -> Vec<u64> {
        g.z.iter()
            .chain(&g.t)
            .enumerate()
            .map(|(k, x)| {
                x.mod_floor(&BigInt::from(self.radix(k)))
                    .to_u64()
                    .expect("reduced below the modulus")
            })
            .collect()
    }

    pub fn encode(&self, v: &[u64]) -> u64 {
        v.iter()
            .enumerate()
            .rev()
            .fold(0, |acc, (k, &d)| acc * self.radix(k) + d)
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u64> {
        let len = self.presentation.n() + self.presentation.big_n();
        (0..len)
            .map(|k| {
                let d = idx % self.radix(k);
                idx /= self.radix(k);
                d
            })
            .collect()
    }

    pub fn multiply(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.presentation.n();
        let (m, mt) = (self.modulus, self.t_modulus);
        let mut out: Vec<u64> = (0..n).map(|k| (a[k] + b[k]) % m).collect();
        for (l, &(i, j)) in self.presentation.nonedges().iter().enumerate() {
            let c = (b[i] % mt) * (a[j] % mt) % mt;
            out.push((a[n + l] + b[n + l] + c) % mt);
        }
        out
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        Self {
            parent: (0..size as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb) as usize] = ra.min(rb);
        true
    }
}

/// Orbits of `b ↦ c b φ(c)^{-1}` on the quotient.
pub fn count_twisted_classes(q: &FiniteQuotient, e: &Endo) -> Result<u64, OracleError> {
    let p = q.presentation();
    if e.presentation().graph() != p.graph() {
        return Err(OracleError::GraphMismatch);
    }
    let inv = |g: &GroupElement| p.inverse(g).expect("images have the right shape");
    let mut gens = Vec::new();
    for (i, img) in e.images().iter().enumerate() {
        gens.push((q.reduce(&p.x(i)), q.reduce(&inv(img))));
    }
    for l in 0..p.big_n() {
        gens.push((q.reduce(&p.y(l)), q.reduce(&inv(&e.image_of_y(l)))));
    }
    let mut uf = UnionFind::new(q.order() as usize);
    let mut classes = q.order();
    for idx in 0..q.order() {
        let b = q.decode(idx);
        for (c, phi_c_inv) in &gens {
            let image = q.multiply(&q.multiply(c, &b), phi_c_inv);
            if uf.union(idx as u32, q.encode(&image) as u32) {
                classes -= 1;
            }
        }
    }
    Ok(classes)
}

/// `|coker(I - M)|`, read off the Smith normal form.
pub fn abelian_class_count(mat: &IntMatrix) -> Result<ExtNat, LinAlgError> {
    Ok(smith_normal_form(&mat.identity_minus()?).cokernel_order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::morphism::endo_from_matrix;

    fn quotient(g: Graph, m: u64) -> FiniteQuotient {
        FiniteQuotient::new(Presentation::new(g), m).unwrap()
    }

    fn endo(g: &Graph, rows: &[Vec<i64>]) -> Endo {
        let p = Presentation::new(g.clone());
        endo_from_matrix(&p, &IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    // ordinary conjugacy classes by orbit enumeration over all conjugators
    fn conjugacy_classes(q: &FiniteQuotient) -> u64 {
        let all: Vec<Vec<u64>> = (0..q.order()).map(|i| q.decode(i)).collect();
        let inverse = |a: &[u64]| {
            (0..q.order())
                .map(|i| q.decode(i))
                .find(|b| q.encode(&q.multiply(a, b)) == 0)
                .unwrap()
        };
        let invs: Vec<Vec<u64>> = all.iter().map(|a| inverse(a)).collect();
        let mut seen = vec![false; all.len()];
        let mut count = 0;
        for b in 0..all.len() {
            if seen[b] {
                continue;
            }
            count += 1;
            for (g, gi) in all.iter().zip(&invs) {
                let c = q.multiply(&q.multiply(g, &all[b]), gi);
                seen[q.encode(&c) as usize] = true;
            }
        }
        count
    }

    #[test]
    fn codec_round_trip() {
        let q = quotient(Graph::path(3), 4);
        assert_eq!(q.order(), 4 * 4 * 4 * 2);
        for i in 0..q.order() {
            assert_eq!(q.encode(&q.decode(i)), i);
        }
    }

    #[test]
    fn multiplication_matches_the_integer_law() {
        let g = Graph::empty(3);
        let p = Presentation::new(g.clone());
        let q = quotient(g, 6);
        let a = GroupElement::from_i64(&[5, -7, 2], &[3, -1, 11]);
        let b = GroupElement::from_i64(&[-4, 9, 13], &[-8, 2, 0]);
        let ab = p.multiply(&a, &b).unwrap();
        assert_eq!(q.multiply(&q.reduce(&a), &q.reduce(&b)), q.reduce(&ab));
    }

    #[test]
    fn identity_twist_counts_conjugacy_classes() {
        for (g, m) in [
            (Graph::empty(2), 4),
            (Graph::empty(2), 3),
            (Graph::path(3), 2),
        ] {
            let q = quotient(g.clone(), m);
            let id = Endo::identity(&Presentation::new(g));
            assert_eq!(
                count_twisted_classes(&q, &id).unwrap(),
                conjugacy_classes(&q)
            );
        }
    }

    #[test]
    fn heisenberg_example() {
        let g = Graph::empty(2);
        let e = endo(&g, &[vec![1, 1], vec![1, 0]]);
        assert_eq!(e.reidemeister_number().unwrap().r, ExtNat::from(2));
        for m in [4, 8] {
            assert_eq!(
                count_twisted_classes(&quotient(g.clone(), m), &e).unwrap(),
                2
            );
        }
    }

    #[test]
    fn abelian_example() {
        let g = Graph::complete(2);
        let e = endo(&g, &[vec![2, 1], vec![1, 1]]);
        assert_eq!(
            count_twisted_classes(&quotient(g.clone(), 2), &e).unwrap(),
            1
        );
        // abelian counts are stable under multiples of r
        let e = endo(&g, &[vec![-1, 0], vec![0, -1]]);
        for m in [4, 8, 12] {
            assert_eq!(
                count_twisted_classes(&quotient(g.clone(), m), &e).unwrap(),
                4
            );
        }
    }

    #[test]
    fn abelian_counts() {
        let minus = IntMatrix::from_i64(&[[-1, 0], [0, -1]]);
        assert_eq!(abelian_class_count(&minus).unwrap(), ExtNat::from(4));
        assert_eq!(
            abelian_class_count(&IntMatrix::identity(3)).unwrap(),
            ExtNat::Infinite
        );
        let fib = IntMatrix::from_i64(&[[1, 1], [1, 0]]);
        assert_eq!(abelian_class_count(&fib).unwrap(), ExtNat::from(1));
    }

    #[test]
    fn guards() {
        let p = Presentation::new(Graph::empty(4));
        assert_eq!(
            FiniteQuotient::new(p.clone(), 1).unwrap_err(),
            OracleError::ModulusTooSmall(1)
        );
        assert!(matches!(
            FiniteQuotient::new(p, 16),
            Err(OracleError::TooLarge { .. })
        ));
        let q = quotient(Graph::empty(2), 4);
        let other = Endo::identity(&Presentation::new(Graph::complete(2)));
        assert_eq!(
            count_twisted_classes(&q, &other),
            Err(OracleError::GraphMismatch)
        );
    }
}
