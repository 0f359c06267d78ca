//! Endomorphisms of `G_Γ` given by generator images, their induced maps on
//! the abelianization (`phi1`, n×n) and on the commutator subgroup
//! (`phi2`, N×N), and exact Reidemeister numbers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlin::{ExtNat, IntMatrix, LinAlgError};
use crate::graph::Graph;
use crate::nilgroup::{commutator_t, GroupElement, GroupError, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("relation violated on edge {{{0}, {1}}}: images do not commute")]
    RelationViolation(usize, usize),
    #[error("not an automorphism: det(phi1) = {0}")]
    NotAutomorphism(BigInt),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("companion construction needs the complete graph on n-1 vertices plus one isolated last vertex")]
    WrongShape,
    #[error("polynomial must be monic of degree {expected}")]
    NotMonic { expected: usize },
    #[error("polynomial constant term must be 1 or -1, got {0}")]
    NonUnitConstant(BigInt),
    #[error("polynomial family needs n >= 4, got {0}")]
    FamilyTooSmall(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// An endomorphism of `G_Γ`. Column `i` of `phi1` is the x-part of the
/// image of `x_i`; column `l` of `phi2` is the t-part of the image of `y_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo {
    presentation: Presentation,
    images: Vec<GroupElement>,
    phi1: IntMatrix,
    phi2: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReidemeisterResult {
    pub r1: ExtNat,
    pub r2: ExtNat,
    pub r: ExtNat,
}

/// Validate generator images against the graph relations and build the Endo.
pub fn make_endo(p: &Presentation, images: Vec<GroupElement>) -> Result<Endo, MorphismError> {
    if images.len() != p.n() {
        return Err(MorphismError::ImageCount {
            expected: p.n(),
            got: images.len(),
        });
    }
    // dimension check for every image
    for g in &images {
        p.multiply(g, &p.identity())?;
    }
    for (i, j) in p.graph().edges() {
        let t = commutator_t(p.nonedges(), &images[i].z, &images[j].z);
        if !t.iter().all(Zero::is_zero) {
            return Err(MorphismError::RelationViolation(i, j));
        }
    }
    let n = p.n();
    let mut phi1 = IntMatrix::zeros(n, n);
    for (c, g) in images.iter().enumerate() {
        for r in 0..n {
            phi1[(r, c)] = g.z[r].clone();
        }
    }
    let phi2 = induce_phi2(p, &phi1)?;
    Ok(Endo {
        presentation: p.clone(),
        images,
        phi1,
        phi2,
    })
}

/// Endo with the given abelianization matrix and zero t-parts.
pub fn endo_from_matrix(p: &Presentation, phi1: &IntMatrix) -> Result<Endo, MorphismError> {
    if phi1.rows() != p.n() || phi1.cols() != p.n() {
        return Err(LinAlgError::Mismatch {
            op: "endo_from_matrix",
            left: (phi1.rows(), phi1.cols()),
            right: (p.n(), p.n()),
        }
        .into());
    }
    let images = (0..p.n())
        .map(|c| GroupElement {
            z: phi1.column(c),
            t: vec![BigInt::zero(); p.big_n()],
        })
        .collect();
    make_endo(p, images)
}

/// `phi2` from `phi1` alone: entry `(m, l)` is the 2×2 minor of `phi1` on
/// rows `{i_m, j_m}` and columns `{i_l, j_l}`.
pub fn induce_phi2(p: &Presentation, phi1: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
    if phi1.rows() != p.n() || phi1.cols() != p.n() {
        return Err(LinAlgError::Mismatch {
            op: "induce_phi2",
            left: (phi1.rows(), phi1.cols()),
            right: (p.n(), p.n()),
        });
    }
    let ne = p.nonedges();
    let mut out = IntMatrix::zeros(ne.len(), ne.len());
    for (m, &(im, jm)) in ne.iter().enumerate() {
        for (l, &(il, jl)) in ne.iter().enumerate() {
            out[(m, l)] = &phi1[(jm, jl)] * &phi1[(im, il)] - &phi1[(im, jl)] * &phi1[(jm, il)];
        }
    }
    Ok(out)
}

/// True iff `det(1 - m) == 0`.
pub fn has_eigenvalue_one(m: &IntMatrix) -> Result<bool, LinAlgError> {
    Ok(m.identity_minus()?.det()?.is_zero())
}

impl Endo {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn phi1(&self) -> &IntMatrix {
        &self.phi1
    }

    pub fn phi2(&self) -> &IntMatrix {
        &self.phi2
    }

    pub fn identity(p: &Presentation) -> Self {
        endo_from_matrix(p, &IntMatrix::identity(p.n())).expect("identity preserves every relation")
    }

    pub fn is_automorphism(&self) -> bool {
        self.phi1.is_unimodular()
    }

    /// Image of `y_l`: the commutator `[φ(x_{j_l}), φ(x_{i_l})]`.
    pub fn image_of_y(&self, l: usize) -> GroupElement {
        GroupElement {
            z: vec![BigInt::zero(); self.presentation.n()],
            t: self.phi2.column(l),
        }
    }

    /// `φ(g)` for `g = x^z y^t`, computed in the group.
    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        let p = &self.presentation;
        let mut acc = p.identity();
        for (i, e) in g.z.iter().enumerate() {
            acc = p.multiply(&acc, &p.pow(&self.images[i], e)?)?;
        }
        let mut central = p.identity();
        for (l, e) in g.t.iter().enumerate() {
            central = p.multiply(&central, &p.pow(&self.image_of_y(l), e)?)?;
        }
        p.multiply(&acc, &central)
    }

    pub fn reidemeister_number(&self) -> Result<ReidemeisterResult, MorphismError> {
        if !self.is_automorphism() {
            return Err(MorphismError::NotAutomorphism(self.phi1.det()?));
        }
        let r1 = ExtNat::from_int(&self.phi1.identity_minus()?.det()?);
        let r2 = ExtNat::from_int(&self.phi2.identity_minus()?.det()?);
        let r = r1.clone() * r2.clone();
        Ok(ReidemeisterResult { r1, r2, r })
    }
}

/// Companion matrix of the monic polynomial with coefficients `coeffs`
/// (lowest degree first, leading 1 included).
pub fn companion_matrix(coeffs: &[BigInt]) -> Result<IntMatrix, MorphismError> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 || !coeffs[d].is_one() {
        return Err(MorphismError::NotMonic { expected: d });
    }
    let mut c = IntMatrix::zeros(d, d);
    for r in 1..d {
        c[(r, r - 1)] = BigInt::one();
    }
    for r in 0..d {
        c[(r, d - 1)] = -&coeffs[r];
    }
    Ok(c)
}

/// Automorphism of `G` for `K_{n-1} ⊔ pt` acting by the companion matrix of
/// `poly` on the clique and by inversion on the isolated vertex.
pub fn companion_automorphism(p: &Presentation, poly: &[BigInt]) -> Result<Endo, MorphismError> {
    let n = p.n();
    if n < 2 || *p.graph() != Graph::complete_plus_isolated(n) {
        return Err(MorphismError::WrongShape);
    }
    if poly.len() != n || !poly[n - 1].is_one() {
        return Err(MorphismError::NotMonic { expected: n - 1 });
    }
    if poly[0].abs() != BigInt::one() {
        return Err(MorphismError::NonUnitConstant(poly[0].clone()));
    }
    let c = companion_matrix(poly)?;
    let phi1 = c.direct_sum(&IntMatrix::diagonal(&[BigInt::from(-1)]));
    endo_from_matrix(p, &phi1)
}

fn family_coeffs(n: usize, low: [i64; 3]) -> Result<Vec<BigInt>, MorphismError> {
    if n < 4 {
        return Err(MorphismError::FamilyTooSmall(n));
    }
    let mut c = vec![BigInt::zero(); n];
    c[n - 1] = BigInt::one();
    for (i, v) in low.into_iter().enumerate() {
        c[i] = BigInt::from(v);
    }
    Ok(c)
}

/// Polynomial of degree `n-1` whose companion automorphism has `R = 2(2k-1)`.
pub fn q_poly(n: usize, k: i64) -> Result<Vec<BigInt>, MorphismError> {
    if n % 2 == 1 {
        family_coeffs(n, [1, k - 1, k - 2])
    } else {
        family_coeffs(n, [1, k - 2, k - 1])
    }
}

/// Polynomial of degree `n-1` whose companion automorphism has `R = 8k`.
pub fn r_poly(n: usize, k: i64) -> Result<Vec<BigInt>, MorphismError> {
    if n % 2 == 1 {
        family_coeffs(n, [1, k - 1, k - 1])
    } else {
        family_coeffs(n, [1, k - 2, k])
    }
}

/// Automorphism file: explicit generator images or a bare matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutomorphismFile {
    Images { images: Vec<GroupElement> },
    Matrix { matrix: IntMatrix },
}

impl AutomorphismFile {
    pub fn into_endo(self, p: &Presentation) -> Result<Endo, MorphismError> {
        match self {
            Self::Images { images } => make_endo(p, images),
            Self::Matrix { matrix } => endo_from_matrix(p, &matrix),
        }
    }
}
