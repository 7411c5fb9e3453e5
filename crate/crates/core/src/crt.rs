//! Simultaneous congruences solved as a common-successor search across
//! congruence layers, with Garner's mixed-radix reconstruction as the
//! algebraic reference.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted modulus product, exclusive.
pub const MAX_PRODUCT: u64 = 1 << 63;

/// `x ≡ remainder (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    pub remainder: u64,
    pub modulus: u64,
}

impl Congruence {
    pub fn new(remainder: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Validation(format!("modulus must be at least 2, got {modulus}")));
        }
        if remainder >= modulus {
            return Err(Error::Validation(format!(
                "remainder {remainder} is not below modulus {modulus}"
            )));
        }
        Ok(Self { remainder, modulus })
    }
}

impl FromStr for Congruence {
    type Err = Error;

    /// Parses `"<r> mod <m>"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("expected \"<r> mod <m>\", got {s:?}"));
        let mut parts = s.split_whitespace();
        let (Some(r), Some("mod"), Some(m), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(bad());
        };
        let r = r.parse().map_err(|_| bad())?;
        let m = m.parse().map_err(|_| bad())?;
        Congruence::new(r, m)
    }
}

/// A validated system with pairwise-coprime moduli.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceSystem {
    items: Vec<Congruence>,
    product: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checks remainders, pairwise coprimality and the product bound.
pub fn validate_system(items: &[Congruence]) -> Result<u64> {
    if items.is_empty() {
        return Err(Error::Validation("a congruence system needs at least one item".into()));
    }
    for c in items {
        Congruence::new(c.remainder, c.modulus)?;
    }
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            let g = gcd(a.modulus, b.modulus);
            if g != 1 {
                return Err(Error::NotCoprime { first: a.modulus, second: b.modulus, gcd: g });
            }
        }
    }
    let product = items
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.modulus).filter(|&p| p < MAX_PRODUCT))
        .ok_or_else(|| Error::Overflow("modulus product must stay below 2^63".into()))?;
    Ok(product)
}

impl CongruenceSystem {
    pub fn new(items: Vec<Congruence>) -> Result<Self> {
        let product = validate_system(&items)?;
        Ok(Self { items, product })
    }

    pub fn items(&self) -> &[Congruence] {
        &self.items
    }

    /// `M = m_1 · … · m_k`.
    pub fn modulus_product(&self) -> u64 {
        self.product
    }

    fn max_modulus(&self) -> u64 {
        self.items.iter().map(|c| c.modulus).max().unwrap_or(0)
    }

    /// Layer ceiling used by the graphical search, `M + max m_i`.
    pub fn search_ceiling(&self) -> u64 {
        self.product + self.max_modulus()
    }

    pub fn is_satisfied_by(&self, x: u64) -> bool {
        self.items.iter().all(|c| x % c.modulus == c.remainder)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrtMethod {
    Graphical,
    Garner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtSolution {
    pub x0: u64,
    pub modulus_product: u64,
    /// Smallest common successor found by the graphical search.
    pub witness: Option<u64>,
    pub method: CrtMethod,
}

impl CrtSolution {
    /// Single-line JSON with sorted keys; `witness` is `null` for Garner.
    pub fn to_json(&self) -> String {
        serde_json::to_value(self).expect("solution is serializable").to_string()
    }
}

/// First successor of `m` in layer `r`: `m + r`, or `2m` when `r = 0`.
fn first_successor(r: u64, m: u64) -> u64 {
    if r == 0 {
        2 * m
    } else {
        m + r
    }
}

/// Successors of node `m` in layer `r`, truncated at `limit`:
/// `{x ∈ (m, limit] : x ≡ r (mod m)}`.
pub fn successor_set(r: u64, m: u64, limit: u64) -> Result<Vec<u64>> {
    if m <= r {
        return Err(Error::Domain(format!("node {m} is not in layer r = {r}")));
    }
    let mut out = Vec::new();
    let mut x = first_successor(r, m);
    while x <= limit {
        out.push(x);
        x += m;
    }
    Ok(out)
}

/// Smallest common successor of the moduli nodes, found by advancing every
/// arithmetic progression to the current maximum until all coincide.
pub fn solve_graphical(sys: &CongruenceSystem) -> Result<CrtSolution> {
    let ceiling = sys.search_ceiling();
    let mut heads: Vec<(u64, u64)> = sys
        .items()
        .iter()
        .map(|c| (first_successor(c.remainder, c.modulus), c.modulus))
        .collect();

    let witness = loop {
        let front = heads.iter().map(|&(v, _)| v).max().expect("system is non-empty");
        if front > ceiling {
            return Err(Error::Internal(format!(
                "no common successor up to {ceiling} for a coprime system"
            )));
        }
        let mut aligned = true;
        for (v, step) in heads.iter_mut() {
            if *v < front {
                *v += (front - *v).div_ceil(*step) * *step;
            }
            aligned &= *v == front;
        }
        if aligned {
            break front;
        }
    };

    let x0 = witness % sys.modulus_product();
    debug_assert!(sys.is_satisfied_by(x0));
    Ok(CrtSolution {
        x0,
        modulus_product: sys.modulus_product(),
        witness: Some(witness),
        method: CrtMethod::Graphical,
    })
}

/// Inverse of `a` modulo `m`; `gcd(a, m)` must be 1.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Mixed-radix reconstruction `x = v_1 + v_2 m_1 + v_3 m_1 m_2 + …`.
pub fn solve_garner(sys: &CongruenceSystem) -> Result<CrtSolution> {
    let mut x: u128 = 0;
    let mut radix: u128 = 1;
    for c in sys.items() {
        let m = c.modulus as u128;
        let partial = (radix % m) as u64;
        let inv = mod_inverse(partial, c.modulus)
            .ok_or_else(|| Error::Internal(format!("no inverse of {partial} mod {m}")))?;
        // v = (r - x) · radix^{-1}  (mod m)
        let diff = (c.remainder as u128 + m - x % m) % m;
        let v = diff * inv as u128 % m;
        x += v * radix;
        radix *= m;
    }
    let x0 = x as u64;
    debug_assert!(sys.is_satisfied_by(x0));
    Ok(CrtSolution {
        x0,
        modulus_product: sys.modulus_product(),
        witness: None,
        method: CrtMethod::Garner,
    })
}
