//! Exact arithmetic in `G_Γ`, the 2-step nilpotent quotient of the
//! right-angled Artin group of a graph.
//!
//! Elements are held in the normal form `x_1^z_1 … x_n^z_n y_1^t_1 … y_N^t_N`,
//! where `y_l = [x_{j_l}, x_{i_l}]` runs over the non-edges `(i_l, j_l)` in
//! lexicographic order. The product of `(z, t)` and `(v, s)` is
//! `(z + v, t + s + v_{i_l} z_{j_l})`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactlin::IntMatrix;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("element has {z} x-exponents and {t} y-exponents, presentation needs {n} and {big_n}")]
    Dimension {
        z: usize,
        t: usize,
        n: usize,
        big_n: usize,
    },
}

/// Layout of `G_Γ`: generator counts and the ordered non-edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    graph: Graph,
    nonedges: Vec<(usize, usize)>,
}

impl Presentation {
    pub fn new(graph: Graph) -> Self {
        let nonedges = graph.nonedges();
        Self { graph, nonedges }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn nonedges(&self) -> &[(usize, usize)] {
        &self.nonedges
    }

    /// Number of `x` generators.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Number of `y` generators (non-edges).
    pub fn big_n(&self) -> usize {
        self.nonedges.len()
    }

    /// Position of the non-edge `{a, b}` in the `y` ordering.
    pub fn nonedge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.nonedges.binary_search(&key).ok()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.n(), self.big_n())
    }

    /// The generator `x_i`.
    pub fn x(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        g.z[i] = BigInt::from(1);
        g
    }

    /// The generator `y_l`.
    pub fn y(&self, l: usize) -> GroupElement {
        let mut g = self.identity();
        g.t[l] = BigInt::from(1);
        g
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if a.z.len() != self.n() || a.t.len() != self.big_n() {
            return Err(GroupError::Dimension {
                z: a.z.len(),
                t: a.t.len(),
                n: self.n(),
                big_n: self.big_n(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        let z = a.z.iter().zip(&b.z).map(|(x, y)| x + y).collect();
        let t = self
            .nonedges
            .iter()
            .enumerate()
            .map(|(l, &(i, j))| &a.t[l] + &b.t[l] + &b.z[i] * &a.z[j])
            .collect();
        Ok(GroupElement { z, t })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        // (z, t)(-z, s) = (0, t + s - z_i z_j)  =>  s = z_i z_j - t
        let t = self
            .nonedges
            .iter()
            .enumerate()
            .map(|(l, &(i, j))| &a.z[i] * &a.z[j] - &a.t[l])
            .collect();
        Ok(GroupElement {
            z: a.z.iter().map(|x| -x).collect(),
            t,
        })
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: &GroupElement, k: &BigInt) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        // (z, t)^k = (k z, k t + C(k, 2) z_i z_j), valid for negative k as well
        let binom = k * (k - 1) / 2;
        let t = self
            .nonedges
            .iter()
            .enumerate()
            .map(|(l, &(i, j))| k * &a.t[l] + &binom * &a.z[i] * &a.z[j])
            .collect();
        Ok(GroupElement {
            z: a.z.iter().map(|x| k * x).collect(),
            t,
        })
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`, by its bilinear closed form.
    pub fn commutator(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            z: vec![BigInt::zero(); self.n()],
            t: commutator_t(&self.nonedges, &a.z, &b.z),
        })
    }

    /// Rank of `Z(G_Γ)`: the `y`'s together with the universal vertices.
    pub fn center_rank(&self) -> usize {
        self.big_n() + self.graph.universal_vertices().len()
    }

    /// Rank of `γ_2(G_Γ)`.
    pub fn gamma2_rank(&self) -> usize {
        self.big_n()
    }

    /// Hirsch length of the centralizer of `a`.
    ///
    /// `g = (v, s)` commutes with `a` iff `v_{i_l} z_{j_l} - v_{j_l} z_{i_l} = 0`
    /// for every non-edge `l`; the `s` part is free. So the answer is `N` plus
    /// the nullity of that constraint system in `v`.
    pub fn centralizer_hirsch(&self, a: &GroupElement) -> Result<usize, GroupError> {
        self.check(a)?;
        if a.z.iter().all(Zero::is_zero) {
            return Ok(self.n() + self.big_n());
        }
        let mut m = IntMatrix::zeros(self.big_n(), self.n());
        for (l, &(i, j)) in self.nonedges.iter().enumerate() {
            m[(l, i)] = a.z[j].clone();
            m[(l, j)] = -&a.z[i];
        }
        Ok(self.big_n() + m.kernel_rank())
    }
}

/// `t`-vector of `[a, b]` for x-parts `za`, `zb`: `za[j] zb[i] - za[i] zb[j]`.
pub(crate) fn commutator_t(
    nonedges: &[(usize, usize)],
    za: &[BigInt],
    zb: &[BigInt],
) -> Vec<BigInt> {
    nonedges
        .iter()
        .map(|&(i, j)| &za[j] * &zb[i] - &za[i] * &zb[j])
        .collect()
}

/// Normal-form exponents `(z, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupElement {
    #[serde(with = "crate::exactlin::json::int_vec")]
    pub z: Vec<BigInt>,
    #[serde(with = "crate::exactlin::json::int_vec")]
    pub t: Vec<BigInt>,
}

impl GroupElement {
    pub fn identity(n: usize, big_n: usize) -> Self {
        Self {
            z: vec![BigInt::zero(); n],
            t: vec![BigInt::zero(); big_n],
        }
    }

    pub fn from_i64(z: &[i64], t: &[i64]) -> Self {
        Self {
            z: z.iter().map(|&v| BigInt::from(v)).collect(),
            t: t.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().chain(&self.t).all(Zero::is_zero)
    }

    pub fn is_central_part(&self) -> bool {
        self.z.iter().all(Zero::is_zero)
    }
}
