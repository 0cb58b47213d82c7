//! Finite abelian groups in primary form, and graded homology tables.
//!
//! Groups are stored as multisets of prime powers `p^r`, kept sorted, so
//! structural equality is multiset equality.  Orders are exact `u64` values;
//! construction fails rather than overflow.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A prime power `p^r` with `p` prime and `r >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub r: u32,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimePower {
    /// Validated constructor.  `p` must be prime, `r >= 1`, and `p^r` must
    /// fit comfortably in a `u64`.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::RangeExceeded {
                what: format!("{p} is not prime"),
            });
        }
        if r == 0 {
            return Err(Error::RangeExceeded {
                what: "exponent r must be at least 1".into(),
            });
        }
        let mut v: u64 = 1;
        for _ in 0..r {
            v = v.checked_mul(p).ok_or_else(|| Error::RangeExceeded {
                what: format!("{p}^{r} overflows"),
            })?;
        }
        if v > (1 << 40) {
            return Err(Error::RangeExceeded {
                what: format!("{p}^{r} exceeds the supported order bound 2^40"),
            });
        }
        Ok(PrimePower { p, r })
    }

    /// The integer `p^r`.
    #[must_use]
    pub fn value(&self) -> u64 {
        self.p.pow(self.r)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.value())
    }
}

/// Factor `q >= 2` into prime powers, sorted by `(p, r)`.
pub fn factor_prime_powers(q: u64) -> Result<Vec<PrimePower>> {
    if q < 2 {
        return Err(Error::RangeExceeded {
            what: format!("cannot factor {q} as a nontrivial cyclic order"),
        });
    }
    let mut q = q;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut r = 0u32;
            while q.is_multiple_of(p) {
                q /= p;
                r += 1;
            }
            out.push(PrimePower::new(p, r)?);
        }
        p += 1;
    }
    if q > 1 {
        out.push(PrimePower::new(q, 1)?);
    }
    out.sort();
    Ok(out)
}

/// A finite abelian group `(+)_i Z/p_i^{r_i}` in canonical (sorted) primary
/// form.  The trivial group is the empty sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    summands: Vec<PrimePower>,
}

impl FinAbGroup {
    /// The trivial group.
    #[must_use]
    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    /// Build from a list of prime powers; sorts into canonical form.
    #[must_use]
    pub fn from_prime_powers(mut summands: Vec<PrimePower>) -> Self {
        summands.sort();
        FinAbGroup { summands }
    }

    /// Build from a list of cyclic orders, splitting composite orders into
    /// their prime-power parts.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let mut summands = Vec::new();
        for &q in orders {
            summands.extend(factor_prime_powers(q)?);
        }
        Ok(FinAbGroup::from_prime_powers(summands))
    }

    #[must_use]
    pub fn summands(&self) -> &[PrimePower] {
        &self.summands
    }

    #[must_use]
    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    /// The subgroup of summands with the given prime.
    #[must_use]
    pub fn primary_part(&self, p: u64) -> FinAbGroup {
        FinAbGroup {
            summands: self.summands.iter().copied().filter(|s| s.p == p).collect(),
        }
    }

    /// The subgroup of summands whose prime differs from `p`.
    #[must_use]
    pub fn away_from(&self, p: u64) -> FinAbGroup {
        FinAbGroup {
            summands: self.summands.iter().copied().filter(|s| s.p != p).collect(),
        }
    }

    /// Exponents `r` of the `p`-primary summands, in canonical order.
    #[must_use]
    pub fn exponents_of(&self, p: u64) -> Vec<u32> {
        self.summands
            .iter()
            .filter(|s| s.p == p)
            .map(|s| s.r)
            .collect()
    }

    /// Direct sum.
    #[must_use]
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        FinAbGroup::from_prime_powers(summands)
    }

    /// Remove one copy of `Z/p^r`; fails with [`Error::SummandAbsent`] if the
    /// group has no such summand.
    pub fn remove_summand(&self, p: u64, r: u32) -> Result<FinAbGroup> {
        let mut summands = self.summands.clone();
        match summands.iter().position(|s| s.p == p && s.r == r) {
            Some(i) => {
                summands.remove(i);
                Ok(FinAbGroup { summands })
            }
            None => Err(Error::SummandAbsent { p, r }),
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A nonnegatively graded abelian group with finitely many nonzero degrees:
/// in each degree a free rank and a finite torsion group.  Zero parts are
/// never stored, so equality is degreewise equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAb {
    parts: BTreeMap<u32, (u64, FinAbGroup)>,
}

impl GradedAb {
    #[must_use]
    pub fn zero() -> Self {
        GradedAb::default()
    }

    /// Add `Z^rank (+) torsion` in the given degree.
    pub fn add(&mut self, degree: u32, rank: u64, torsion: FinAbGroup) {
        if rank == 0 && torsion.is_trivial() {
            return;
        }
        let entry = self
            .parts
            .entry(degree)
            .or_insert_with(|| (0, FinAbGroup::trivial()));
        entry.0 += rank;
        entry.1 = entry.1.direct_sum(&torsion);
    }

    pub fn add_free(&mut self, degree: u32, rank: u64) {
        self.add(degree, rank, FinAbGroup::trivial());
    }

    pub fn add_torsion(&mut self, degree: u32, torsion: FinAbGroup) {
        self.add(degree, 0, torsion);
    }

    /// Direct sum with another graded group.
    pub fn merge(&mut self, other: &GradedAb) {
        for (&deg, (rank, tors)) in &other.parts {
            self.add(deg, *rank, tors.clone());
        }
    }

    /// The same group with all degrees shifted up by `k` (suspension).
    #[must_use]
    pub fn shifted(&self, k: u32) -> GradedAb {
        GradedAb {
            parts: self
                .parts
                .iter()
                .map(|(&deg, part)| (deg + k, part.clone()))
                .collect(),
        }
    }

    /// `(rank, torsion)` in one degree; zero if absent.
    #[must_use]
    pub fn part(&self, degree: u32) -> (u64, FinAbGroup) {
        self.parts
            .get(&degree)
            .cloned()
            .unwrap_or((0, FinAbGroup::trivial()))
    }

    /// Iterate over nonzero degrees in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &(u64, FinAbGroup))> {
        self.parts.iter().map(|(&d, part)| (d, part))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for GradedAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut lines = Vec::new();
        for (&deg, (rank, tors)) in &self.parts {
            let mut pieces = Vec::new();
            match rank {
                0 => {}
                1 => pieces.push("Z".to_string()),
                r => pieces.push(format!("Z^{r}")),
            }
            if !tors.is_trivial() {
                pieces.push(tors.to_string());
            }
            lines.push(format!("H_{deg} = {}", pieces.join(" + ")));
        }
        write!(f, "{}", lines.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_validation() {
        assert!(PrimePower::new(2, 3).is_ok());
        assert!(PrimePower::new(4, 1).is_err());
        assert!(PrimePower::new(3, 0).is_err());
        assert_eq!(PrimePower::new(3, 2).unwrap().value(), 9);
    }

    #[test]
    fn factoring_composite_orders() {
        let f = factor_prime_powers(12).unwrap();
        assert_eq!(
            f,
            vec![PrimePower::new(2, 2).unwrap(), PrimePower::new(3, 1).unwrap()]
        );
        assert!(factor_prime_powers(1).is_err());
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let a = FinAbGroup::from_cyclic_orders(&[4, 2, 9]).unwrap();
        let b = FinAbGroup::from_cyclic_orders(&[9, 2, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "Z/2 + Z/4 + Z/9");
        assert_eq!(a.exponents_of(2), vec![1, 2]);
        assert_eq!(a.away_from(2).to_string(), "Z/9");
    }

    #[test]
    fn remove_summand_reports_absence() {
        let g = FinAbGroup::from_cyclic_orders(&[4]).unwrap();
        assert!(g.remove_summand(2, 2).is_ok());
        assert_eq!(
            g.remove_summand(2, 1),
            Err(Error::SummandAbsent { p: 2, r: 1 })
        );
    }

    #[test]
    fn graded_shift_and_merge() {
        let mut g = GradedAb::zero();
        g.add(3, 2, FinAbGroup::from_cyclic_orders(&[2]).unwrap());
        g.add_free(5, 1);
        let s = g.shifted(1);
        assert_eq!(s.part(4).0, 2);
        assert_eq!(s.part(6).0, 1);
        let mut h = GradedAb::zero();
        h.merge(&g);
        h.merge(&s);
        assert_eq!(h.part(4), (2, FinAbGroup::from_cyclic_orders(&[2]).unwrap()));
    }
}
