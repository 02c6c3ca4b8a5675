//! Finite abelian groups presented as direct products of cyclic groups.
//!
//! A [`GroupSpec`] keeps the factors in the order the user wrote them
//! (`Z4xZ3` has factors `[4, 3]`); structural questions such as isomorphism
//! go through the primary decomposition, see [`GroupSpec::canonical`].
//! Elements are plain residue tuples and iterate in mixed-radix
//! lexicographic order (last coordinate fastest), so index 0 is always the
//! identity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group spec `{0}`: expected Z<n>(xZ<n>)* or `trivial`")]
    Syntax(String),
    #[error("cyclic factor Z{0} is not allowed: factors must be at least 2")]
    FactorTooSmall(u64),
    #[error("element has {found} coordinates but the group has {expected} factors")]
    Arity { expected: usize, found: usize },
    #[error("invalid element `{0}`: expected (r1,r2,...)")]
    ElementSyntax(String),
    #[error("group order overflows u64")]
    Overflow,
}

/// A finite abelian group `Z_{n1} x ... x Z_{nt}`; the empty product is the
/// trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GroupSpec {
    factors: Vec<u64>,
    order: u64,
}

/// A residue tuple. Coordinates are reduced modulo the matching factor of
/// the group the element was produced by.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GroupElement {
    residues: Vec<u64>,
}

/// One cyclic factor of prime-power order in a primary decomposition,
/// remembering which user factor it was split out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimaryFactor {
    pub prime: u64,
    pub exponent: u32,
    pub order: u64,
    pub source: usize,
}

impl GroupSpec {
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupError> {
        let mut order: u64 = 1;
        for &f in &factors {
            if f < 2 {
                return Err(GroupError::FactorTooSmall(f));
            }
            order = order.checked_mul(f).ok_or(GroupError::Overflow)?;
        }
        Ok(GroupSpec { factors, order })
    }

    pub fn trivial() -> Self {
        GroupSpec { factors: Vec::new(), order: 1 }
    }

    /// `Z_n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        match n {
            0 => Err(GroupError::FactorTooSmall(0)),
            1 => Ok(Self::trivial()),
            _ => Self::new(vec![n]),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.factors.len()] }
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement, GroupError> {
        self.check_arity(residues.len())?;
        let residues = residues.iter().zip(&self.factors).map(|(&r, &f)| r.rem_euclid(f as i64) as u64).collect();
        Ok(GroupElement { residues })
    }

    fn check_arity(&self, found: usize) -> Result<(), GroupError> {
        if found == self.factors.len() {
            Ok(())
        } else {
            Err(GroupError::Arity { expected: self.factors.len(), found })
        }
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        self.check_arity(g.residues.len())
    }

    /// True when `g` has the right arity and every coordinate is reduced.
    pub fn contains(&self, g: &GroupElement) -> bool {
        g.residues.len() == self.factors.len() && g.residues.iter().zip(&self.factors).all(|(r, f)| r < f)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.factors)
            .map(|((&x, &y), &f)| ((x as u128 + y as u128) % f as u128) as u64)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        let residues = g.residues.iter().zip(&self.factors).map(|(&x, &f)| (f - x % f) % f).collect();
        Ok(GroupElement { residues })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.add(a, &self.neg(b)?)
    }

    /// `c·g` for any integer `c`, computed per coordinate.
    pub fn scalar_mul(&self, c: i64, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        let residues = g
            .residues
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| {
                let c = c.rem_euclid(f as i64) as u128;
                ((c * x as u128) % f as u128) as u64
            })
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn sum<'a, I>(&self, items: I) -> Result<GroupElement, GroupError>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        items.into_iter().try_fold(self.zero(), |acc, g| self.add(&acc, g))
    }

    pub fn elements(&self) -> Elements<'_> {
        Elements { group: self, next: Some(self.zero()) }
    }

    /// Position of `g` in the mixed-radix enumeration order.
    pub fn index_of(&self, g: &GroupElement) -> Result<usize, GroupError> {
        self.check(g)?;
        let mut idx: u64 = 0;
        for (&r, &f) in g.residues.iter().zip(&self.factors) {
            idx = idx * f + r % f;
        }
        Ok(idx as usize)
    }

    /// Inverse of [`index_of`](Self::index_of); `None` past the group order.
    pub fn element_at(&self, index: usize) -> Option<GroupElement> {
        if index as u64 >= self.order {
            return None;
        }
        let mut rest = index as u64;
        let mut residues = vec![0; self.factors.len()];
        for (slot, &f) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = rest % f;
            rest /= f;
        }
        Some(GroupElement { residues })
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.residues.iter().all(|&r| r == 0)
    }

    pub fn is_involution(&self, g: &GroupElement) -> bool {
        !self.is_identity(g)
            && g.residues.iter().zip(&self.factors).all(|(&r, &f)| (2 * r as u128).is_multiple_of(f as u128))
    }

    /// All non-identity `g` with `2g = e`. There are `2^t - 1` of them, `t`
    /// being the number of even factors.
    pub fn involutions(&self) -> Vec<GroupElement> {
        // each coordinate is 0 or f/2 for even f
        let choices: Vec<Vec<u64>> =
            self.factors.iter().map(|&f| if f % 2 == 0 { vec![0, f / 2] } else { vec![0] }).collect();
        let mut out = vec![Vec::new()];
        for options in &choices {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    options.iter().map(move |&c| {
                        let mut next = prefix.clone();
                        next.push(c);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(|residues| GroupElement { residues }).filter(|g| !self.is_identity(g)).collect()
    }

    /// `s(Γ)`: the unique involution if there is exactly one, otherwise `e`.
    pub fn sum_of_elements(&self) -> GroupElement {
        let mut involutions = self.involutions();
        if involutions.len() == 1 {
            involutions.pop().unwrap()
        } else {
            self.zero()
        }
    }

    /// Whether some element satisfies `2g != e`.
    pub fn has_non_involution(&self) -> bool {
        self.factors.iter().any(|&f| f > 2)
    }

    /// Primary decomposition, sorted by `(prime, exponent, source)`.
    pub fn primary_factors(&self) -> Vec<PrimaryFactor> {
        let mut out: Vec<PrimaryFactor> = self
            .factors
            .iter()
            .enumerate()
            .flat_map(|(source, &f)| {
                factorize(f).into_iter().map(move |(prime, exponent)| PrimaryFactor {
                    prime,
                    exponent,
                    order: prime.pow(exponent),
                    source,
                })
            })
            .collect();
        out.sort();
        out
    }

    /// Canonical form: prime-power factors sorted ascending by
    /// `(prime, exponent)`. Two specs are isomorphic iff these agree.
    pub fn canonical(&self) -> GroupSpec {
        let factors = self.primary_factors().iter().map(|p| p.order).collect();
        GroupSpec { factors, order: self.order }
    }

    pub fn is_isomorphic(&self, other: &GroupSpec) -> bool {
        self.canonical().factors == other.canonical().factors
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement, GroupError> {
        let trimmed = text.trim();
        let inner = trimmed.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(trimmed).trim();
        let values: Vec<i64> = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|part| part.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| GroupError::ElementSyntax(text.to_string()))?
        };
        self.element(&values)
    }

    /// Splits off a cyclic factor `Z_{2^s}`; see [`CyclicSplit`].
    pub fn find_cyclic_two_factor(&self, s: u32) -> Option<CyclicSplit> {
        if s == 0 || s >= 63 {
            return None;
        }
        self.split_cyclic(1u64 << s)
    }

    /// Exhibits `Γ ≅ Z_order × A` when it exists.
    ///
    /// By Krull–Schmidt this happens exactly when every prime-power part
    /// `p^e ∥ order` occurs as a primary factor of `Γ`. When several
    /// primary factors qualify, the one from the earliest user factor wins.
    pub fn split_cyclic(&self, order: u64) -> Option<CyclicSplit> {
        if order < 2 || !self.order.is_multiple_of(order) {
            return None;
        }
        let primaries = self.primary_factors();
        let mut taken = vec![false; primaries.len()];
        let mut cyclic_idx = Vec::new();
        for (prime, exponent) in factorize(order) {
            let want = prime.pow(exponent);
            let pos = primaries.iter().enumerate().find(|(i, p)| !taken[*i] && p.order == want).map(|(i, _)| i)?;
            taken[pos] = true;
            cyclic_idx.push(pos);
        }
        let rest_idx: Vec<usize> = (0..primaries.len()).filter(|&i| !taken[i]).collect();
        let complement = GroupSpec::new(rest_idx.iter().map(|&i| primaries[i].order).collect())
            .expect("primary orders are at least 2");
        Some(CyclicSplit { group: self.clone(), cyclic: order, complement, primaries, cyclic_idx, rest_idx })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text == "trivial" {
            return Ok(Self::trivial());
        }
        let factors = text
            .split('x')
            .map(|part| {
                part.strip_prefix('Z')
                    .filter(|digits| !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|digits| digits.parse::<u64>().ok())
                    .ok_or_else(|| GroupError::Syntax(text.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GroupSpec::new(factors)
    }
}

impl From<GroupSpec> for String {
    fn from(spec: GroupSpec) -> Self {
        spec.to_string()
    }
}

impl TryFrom<String> for GroupSpec {
    type Error = GroupError;

    fn try_from(text: String) -> Result<Self, Self::Error> {
        text.parse()
    }
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<GroupElement> for String {
    fn from(g: GroupElement) -> Self {
        g.to_string()
    }
}

impl TryFrom<String> for GroupElement {
    type Error = GroupError;

    fn try_from(text: String) -> Result<Self, Self::Error> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GroupError::ElementSyntax(text.clone()))?;
        let residues = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| GroupError::ElementSyntax(text.clone()))?
        };
        Ok(GroupElement { residues })
    }
}

pub struct Elements<'a> {
    group: &'a GroupSpec,
    next: Option<GroupElement>,
}

impl Iterator for Elements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for (slot, &f) in succ.residues.iter_mut().zip(&self.group.factors).rev() {
            *slot += 1;
            if *slot < f {
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// An explicit isomorphism `Γ → Z_c × A` built from the primary
/// decomposition and the Chinese remainder theorem. `A` is made of the
/// remaining primary factors in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSplit {
    group: GroupSpec,
    cyclic: u64,
    complement: GroupSpec,
    primaries: Vec<PrimaryFactor>,
    cyclic_idx: Vec<usize>,
    rest_idx: Vec<usize>,
}

impl CyclicSplit {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Order `c` of the cyclic part.
    pub fn cyclic_order(&self) -> u64 {
        self.cyclic
    }

    /// The complement `A`.
    pub fn complement(&self) -> &GroupSpec {
        &self.complement
    }

    /// `g ↦ (z, a)`.
    pub fn to_pair(&self, g: &GroupElement) -> Result<(u64, GroupElement), GroupError> {
        self.group.check(g)?;
        let primary = |i: usize| {
            let p = &self.primaries[i];
            g.residues[p.source] % p.order
        };
        let z = crt(self.cyclic_idx.iter().map(|&i| (primary(i), self.primaries[i].order)));
        let a = GroupElement { residues: self.rest_idx.iter().map(|&i| primary(i)).collect() };
        Ok((z, a))
    }

    /// `(z, a) ↦ g`; `z` is taken modulo the cyclic order.
    pub fn from_pair(&self, z: i64, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.complement.check(a)?;
        let z = z.rem_euclid(self.cyclic as i64) as u64;
        let mut primary = vec![0u64; self.primaries.len()];
        for &i in &self.cyclic_idx {
            primary[i] = z % self.primaries[i].order;
        }
        for (slot, &i) in self.rest_idx.iter().enumerate() {
            primary[i] = a.residues[slot] % self.primaries[i].order;
        }
        let residues = (0..self.group.factors.len())
            .map(|source| {
                crt(self.primaries.iter().zip(&primary).filter(|(p, _)| p.source == source).map(|(p, &r)| (r, p.order)))
            })
            .collect();
        Ok(GroupElement { residues })
    }
}

/// Combines `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
fn crt<I: IntoIterator<Item = (u64, u64)>>(parts: I) -> u64 {
    let mut acc: i128 = 0;
    let mut modulus: i128 = 1;
    for (r, m) in parts {
        let (r, m) = (r as i128, m as i128);
        // acc + modulus·t ≡ r (mod m)
        let inv = mod_inverse(modulus.rem_euclid(m), m);
        let t = ((r - acc).rem_euclid(m) * inv).rem_euclid(m);
        acc += modulus * t;
        modulus *= m;
        acc = acc.rem_euclid(modulus);
    }
    acc as u64
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "moduli must be coprime");
    old_s.rem_euclid(m)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `n` with parts in non-increasing order, largest first part
/// first: `3 → [3], [2,1], [1,1,1]`.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One representative per isomorphism class of abelian groups of order `n`,
/// each written as prime-power factors (primes ascending, exponents
/// descending within a prime).
pub fn enumerate_abelian_groups(n: u64) -> Vec<GroupSpec> {
    if n == 0 {
        return Vec::new();
    }
    let mut specs: Vec<Vec<u64>> = vec![Vec::new()];
    for (prime, exponent) in factorize(n) {
        let choices = partitions(exponent);
        specs = specs
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |parts| {
                    let mut factors = prefix.clone();
                    factors.extend(parts.iter().map(|&e| prime.pow(e)));
                    factors
                })
            })
            .collect();
    }
    specs.into_iter().map(|factors| GroupSpec::new(factors).expect("prime powers are at least 2")).collect()
}
