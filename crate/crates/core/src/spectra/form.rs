//! Closed-form Reidemeister spectra and exact membership tests.
//!
//! Every form implicitly contains ∞. Finite members are positive integers.

use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::exactlin::ExtNat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumForm {
    /// All positive integers.
    FullN0,
    /// Even positive integers.
    TwoN0,
    /// Positive multiples of 4.
    FourN0,
    /// Odd positive integers and positive multiples of 4.
    OddUnion4N0,
    /// `2(2N0-1) ∪ 8N0`.
    TwoOddUnion8N0,
    /// `2N0^2 ∪ 2|N^2-4|`.
    TwoSquares,
    /// `4N0^2 ∪ 4|N^2-4|`.
    FourSquares,
    /// `{2}`.
    Z1,
    /// `{2|nm(n+m)^2|, 2|nm(n^2-m^2-4m)| : n, m in Z}`.
    OneEdgeFamily,
    /// `2N0^2 ∪ {|nm(n+m)^2|, |nm(n^2-m^2-4m)|, |(n-2)(n+2)^2| : n, m in Z}`.
    TwoEdgeFamily,
    /// No finite members.
    RInfinityOnly,
    /// Products `a_1 · … · a_k` with `a_i` in the i-th factor.
    Product { factors: Vec<SpectrumForm> },
    /// Union over `i = 1..=k` of products of `i` members of `base`.
    UnionOfPartialProducts { base: Box<SpectrumForm>, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("membership is only decided for finite values below 2^64, got {0}")]
    TooLarge(String),
}

fn is_square(w: u64) -> bool {
    let r = w.sqrt();
    r * r == w
}

/// `w = k^2` with `k >= 1`, or `w = |j^2 - 4|` for some integer `j`.
fn square_or_shifted_square(w: u64) -> bool {
    if w == 0 {
        return false;
    }
    // |j^2 - 4| = w means j^2 = w + 4 or j^2 = 4 - w
    is_square(w) || is_square(w + 4) || (w <= 4 && is_square(4 - w))
}

fn divisors(w: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= w {
        if w % d == 0 {
            small.push(d);
            if d * d != w {
                large.push(w / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn signed_divisors(w: u64) -> Vec<i128> {
    divisors(w)
        .into_iter()
        .flat_map(|d| [d as i128, -(d as i128)])
        .collect()
}

/// `w = |nm(n+m)^2|` or `w = |nm(n^2-m^2-4m)|` for integers n, m.
///
/// Both expressions are multiples of n and of m, so for `w >= 1` it suffices
/// to run n and m over the signed divisors of w.
fn two_parameter_family(w: u64) -> bool {
    if w == 0 {
        return false;
    }
    let ds = signed_divisors(w);
    let w = w as i128;
    ds.iter().any(|&n| {
        ds.iter().any(|&m| {
            let s = n + m;
            (n * m * s * s).abs() == w || (n * m * (n * n - m * m - 4 * m)).abs() == w
        })
    })
}

/// `w = |(n-2)(n+2)^2|`; `n - 2` divides w, so n - 2 runs over signed divisors.
fn shifted_cube_family(w: u64) -> bool {
    if w == 0 {
        return false;
    }
    let target = w as i128;
    signed_divisors(w).into_iter().any(|d| {
        let s = d + 4;
        (d * s * s).abs() == target
    })
}

impl SpectrumForm {
    pub fn product(factors: Vec<SpectrumForm>) -> Self {
        Self::Product { factors }
    }

    pub fn partial_products(base: SpectrumForm, k: usize) -> Self {
        Self::UnionOfPartialProducts {
            base: Box::new(base),
            k,
        }
    }

    /// Membership of a value of `ℕ₀ ∪ {∞}`.
    pub fn contains(&self, v: &ExtNat) -> Result<bool, FormError> {
        match v {
            ExtNat::Infinite => Ok(true),
            ExtNat::Finite(x) => {
                let x = u64::try_from(x).map_err(|_| FormError::TooLarge(x.to_string()))?;
                Ok(self.contains_u64(x))
            }
        }
    }

    /// Membership of a finite value. Zero is never a member.
    pub fn contains_u64(&self, v: u64) -> bool {
        if v == 0 {
            return false;
        }
        match self {
            Self::FullN0 => true,
            Self::TwoN0 => v % 2 == 0,
            Self::FourN0 => v % 4 == 0,
            Self::OddUnion4N0 => v % 2 == 1 || v % 4 == 0,
            Self::TwoOddUnion8N0 => v % 4 == 2 || v % 8 == 0,
            Self::TwoSquares => v % 2 == 0 && square_or_shifted_square(v / 2),
            Self::FourSquares => v % 4 == 0 && square_or_shifted_square(v / 4),
            Self::Z1 => v == 2,
            Self::OneEdgeFamily => v % 2 == 0 && two_parameter_family(v / 2),
            Self::TwoEdgeFamily => {
                (v % 2 == 0 && is_square(v / 2))
                    || two_parameter_family(v)
                    || shifted_cube_family(v)
            }
            Self::RInfinityOnly => false,
            Self::Product { factors } => product_contains(factors, v),
            Self::UnionOfPartialProducts { base, k } => {
                (1..=*k).any(|i| product_contains(&vec![(**base).clone(); i], v))
            }
        }
    }

    /// Finite members up to `limit`, ascending.
    pub fn members_up_to(&self, limit: u64) -> Vec<u64> {
        (1..=limit).filter(|&v| self.contains_u64(v)).collect()
    }

    /// Rewrite into an equal but simpler form where a known identity applies.
    pub fn simplify(self) -> Self {
        match self {
            Self::Product { factors } => {
                let mut flat = Vec::new();
                for f in factors {
                    match f.simplify() {
                        Self::Product { factors } => flat.extend(factors),
                        other => flat.push(other),
                    }
                }
                if flat.contains(&Self::RInfinityOnly) {
                    return Self::RInfinityOnly;
                }
                let mut acc: Vec<Self> = Vec::new();
                for f in flat {
                    let mut merged = Some(f);
                    for slot in acc.iter_mut() {
                        if let Some(m) = pair_product(slot, merged.as_ref().expect("still pending"))
                        {
                            *slot = m;
                            merged = None;
                            break;
                        }
                    }
                    if let Some(f) = merged {
                        acc.push(f);
                    }
                }
                match acc.len() {
                    1 => acc.pop().expect("one factor"),
                    _ => Self::Product { factors: acc },
                }
            }
            Self::UnionOfPartialProducts { base, k } => {
                let base = base.simplify();
                if k == 1 || base.is_multiplicatively_closed() {
                    base
                } else {
                    Self::UnionOfPartialProducts {
                        base: Box::new(base),
                        k,
                    }
                }
            }
            other => other,
        }
    }

    fn is_multiplicatively_closed(&self) -> bool {
        matches!(
            self,
            Self::FullN0 | Self::TwoN0 | Self::FourN0 | Self::OddUnion4N0 | Self::RInfinityOnly
        )
    }

    fn contains_one(&self) -> bool {
        self.contains_u64(1)
    }

    /// Text without the trailing `∪ {inf}`.
    fn core(&self) -> String {
        match self {
            Self::FullN0 => "N0".into(),
            Self::TwoN0 => "2N0".into(),
            Self::FourN0 => "4N0".into(),
            Self::OddUnion4N0 => "(2N0-1) ∪ 4N0".into(),
            Self::TwoOddUnion8N0 => "2(2N0-1) ∪ 8N0".into(),
            Self::TwoSquares => "2N0^2 ∪ 2|N^2-4|".into(),
            Self::FourSquares => "4N0^2 ∪ 4|N^2-4|".into(),
            Self::Z1 => "{2}".into(),
            Self::OneEdgeFamily => "{2|nm(n+m)^2|, 2|nm(n^2-m^2-4m)| : n,m in Z}".into(),
            Self::TwoEdgeFamily => {
                "2N0^2 ∪ {|nm(n+m)^2|, |nm(n^2-m^2-4m)|, |(n-2)(n+2)^2| : n,m in Z}".into()
            }
            Self::RInfinityOnly => "{}".into(),
            Self::Product { factors } => factors
                .iter()
                .map(|f| format!("({})", f.core()))
                .collect::<Vec<_>>()
                .join(" · "),
            Self::UnionOfPartialProducts { base, k } => {
                format!("U_{{i=1..{k}}} ({})^i", base.core())
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Self::RInfinityOnly => "{inf}".into(),
            Self::Z1 => "{2, inf}".into(),
            other => format!("{} ∪ {{inf}}", other.core()),
        }
    }
}

impl fmt::Display for SpectrumForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn pair_product(a: &SpectrumForm, b: &SpectrumForm) -> Option<SpectrumForm> {
    use SpectrumForm::*;
    let (a, b) = if rank(a) <= rank(b) { (a, b) } else { (b, a) };
    match (a, b) {
        (Z1, FullN0) => Some(TwoN0),
        (Z1, TwoN0) => Some(FourN0),
        (Z1, OddUnion4N0) => Some(TwoOddUnion8N0),
        (Z1, TwoSquares) => Some(FourSquares),
        (FullN0, FullN0) | (FullN0, TwoN0) | (FullN0, FourN0) => Some(b.clone()),
        (FullN0, other) if other.contains_one() => Some(FullN0),
        _ => None,
    }
}

// fixed order so that pair_product sees each unordered pair once
fn rank(f: &SpectrumForm) -> u8 {
    use SpectrumForm::*;
    match f {
        Z1 => 0,
        FullN0 => 1,
        _ => 2,
    }
}

fn product_contains(factors: &[SpectrumForm], v: u64) -> bool {
    match factors {
        [] => v == 1,
        [only] => only.contains_u64(v),
        [first, rest @ ..] => divisors(v)
            .into_iter()
            .any(|d| first.contains_u64(d) && product_contains(rest, v / d)),
    }
}

/// Smallest finite member up to `limit`, if any.
pub fn min_member(form: &SpectrumForm, limit: u64) -> Option<u64> {
    (1..=limit).find(|&v| form.contains_u64(v))
}
