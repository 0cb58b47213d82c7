//! The space catalog.
//!
//! Every decomposition this crate produces is a wedge of terms from a fixed
//! catalog: spheres, Moore spaces `P^m(Z/p^r)`, the two Chang complexes with
//! nontrivial `Sq^2`, and cones on the stable attaching classes that the
//! classification can leave behind.  Each term knows its exact reduced
//! homology, how it suspends, what survives localization away from 2, and
//! which cohomology operations it supports.
//!
//! Printed grammar (stable, consumed by tests):
//!
//! * `S^m` sphere
//! * `P^m(Z/q)` Moore space, top cell in dimension `m`
//! * `C_eta^m` elementary Chang complex `S^{m-2} u_eta e^m`
//! * `C_{r}^m(Z/2^r)` Chang complex `P^{m-1}(Z/2^r) u_{i*eta} e^m`
//! * `(X u_{g} e^k)` cone on the class `g` of `X`
//!
//! Wedges print their terms sorted, joined by ` + `; the empty wedge prints
//! as `*` (a point).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::torsion::{factor_prime_powers, FinAbGroup, GradedAb, PrimePower};
use crate::{Error, Result};

/// Largest cell dimension the catalog accepts.
pub const MAX_DIM: u32 = 64;

/// One indecomposable wedge summand.
///
/// The derived `Ord` is the canonical sort used for printing and multiset
/// comparison: variant tag first, then dimension, then torsion data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SpaceTerm {
    /// `S^m`.
    Sphere { m: u32 },
    /// `P^m(Z/p^r)`: bottom cell in dimension `m-1`, top cell attached by
    /// degree `p^r`.
    Moore { m: u32, q: PrimePower },
    /// `S^n u_eta e^{n+2}`: the elementary Chang complex, carrying `Sq^2`.
    ChangEta { n: u32 },
    /// `P^{n+1}(Z/2^r) u_{i*eta} e^{n+2}`: the Chang complex carrying both a
    /// Bockstein of order `r` and `Sq^2`.
    ChangR { n: u32, r: u32 },
    /// `S^n u_{eta^2} e^{n+3}`.
    ConeEta2 { n: u32 },
    /// `P^{n+1}(Z/2^r) u_{teta_r} e^{n+3}`.
    ConeTildeEta { n: u32, r: u32 },
    /// `P^{n+1}(Z/2^r) u_{i*eta^2} e^{n+3}`.
    Cone2rEta2 { n: u32, r: u32 },
    /// `P^n(Z/2^r) u_{teta_r*eta} e^{n+3}`.
    ConeTildeEtaEta { n: u32, r: u32 },
    /// `C^{n+1}_r u_{iP*teta_r*eta} e^{n+3}`: cone over a Chang complex.
    ConeChang { n: u32, r: u32 },
    /// `S^3 u_{eta^3} e^7`.  Fixed dimensions; does not suspend within the
    /// catalog.
    ConeEta3,
    /// `S^m u_{alpha1} e^{m+4}`.
    ConeAlpha1 { m: u32 },
    /// `P^m(Z/3^r) u_{talpha1} e^{m+4}`.
    ConeTildeAlpha1 { m: u32, r: u32 },
    /// `P^{m+1}(Z/3^r) u_{i*alpha1} e^{m+4}`.
    ConeIAlpha1 { m: u32, r: u32 },
}

fn check_dim(what: &str, value: u32, min: u32, max: u32) -> Result<()> {
    if value < min || value > max {
        return Err(Error::RangeExceeded {
            what: format!("{what} = {value} outside supported range {min}..={max}"),
        });
    }
    Ok(())
}

fn check_exp(r: u32) -> Result<()> {
    if r == 0 || r > 40 {
        return Err(Error::RangeExceeded {
            what: format!("torsion exponent r = {r} outside supported range 1..=40"),
        });
    }
    Ok(())
}

impl SpaceTerm {
    pub fn sphere(m: u32) -> Result<Self> {
        check_dim("sphere dimension m", m, 1, MAX_DIM)?;
        Ok(SpaceTerm::Sphere { m })
    }

    /// `P^m(Z/p^r)`; requires `m >= 3` so the space is simply connected.
    pub fn moore(q: PrimePower, m: u32) -> Result<Self> {
        check_dim("Moore top dimension m", m, 3, MAX_DIM)?;
        Ok(SpaceTerm::Moore { m, q })
    }

    pub fn chang_eta(n: u32) -> Result<Self> {
        check_dim("Chang bottom dimension n", n, 2, MAX_DIM - 2)?;
        Ok(SpaceTerm::ChangEta { n })
    }

    pub fn chang_r(n: u32, r: u32) -> Result<Self> {
        check_dim("Chang bottom dimension n", n, 2, MAX_DIM - 2)?;
        check_exp(r)?;
        Ok(SpaceTerm::ChangR { n, r })
    }

    pub fn cone_eta2(n: u32) -> Result<Self> {
        check_dim("cone bottom dimension n", n, 2, MAX_DIM - 3)?;
        Ok(SpaceTerm::ConeEta2 { n })
    }

    /// `teta_r` lives on `P^{n+1}(Z/2^r)` only once the bottom cell has
    /// dimension at least 3, hence `n >= 3`.
    pub fn cone_tilde_eta(n: u32, r: u32) -> Result<Self> {
        check_dim("cone bottom dimension n", n, 3, MAX_DIM - 3)?;
        check_exp(r)?;
        Ok(SpaceTerm::ConeTildeEta { n, r })
    }

    pub fn cone_2r_eta2(n: u32, r: u32) -> Result<Self> {
        check_dim("cone bottom dimension n", n, 3, MAX_DIM - 3)?;
        check_exp(r)?;
        Ok(SpaceTerm::Cone2rEta2 { n, r })
    }

    /// Base `P^n(Z/2^r)` must itself have bottom dimension at least 3,
    /// hence `n >= 4`.
    pub fn cone_tilde_eta_eta(n: u32, r: u32) -> Result<Self> {
        check_dim("cone bottom dimension n", n, 4, MAX_DIM - 3)?;
        check_exp(r)?;
        Ok(SpaceTerm::ConeTildeEtaEta { n, r })
    }

    pub fn cone_chang(n: u32, r: u32) -> Result<Self> {
        check_dim("cone bottom dimension n", n, 4, MAX_DIM - 3)?;
        check_exp(r)?;
        Ok(SpaceTerm::ConeChang { n, r })
    }

    #[must_use]
    pub fn cone_eta3() -> Self {
        SpaceTerm::ConeEta3
    }

    pub fn cone_alpha1(m: u32) -> Result<Self> {
        check_dim("cone bottom dimension m", m, 3, MAX_DIM - 4)?;
        Ok(SpaceTerm::ConeAlpha1 { m })
    }

    pub fn cone_tilde_alpha1(m: u32, r: u32) -> Result<Self> {
        check_dim("cone bottom dimension m", m, 4, MAX_DIM - 4)?;
        check_exp(r)?;
        Ok(SpaceTerm::ConeTildeAlpha1 { m, r })
    }

    pub fn cone_i_alpha1(m: u32, r: u32) -> Result<Self> {
        check_dim("cone bottom dimension m", m, 4, MAX_DIM - 4)?;
        check_exp(r)?;
        Ok(SpaceTerm::ConeIAlpha1 { m, r })
    }

    /// Dimension of the top cell.
    #[must_use]
    pub fn top_dim(&self) -> u32 {
        match *self {
            SpaceTerm::Sphere { m } => m,
            SpaceTerm::Moore { m, .. } => m,
            SpaceTerm::ChangEta { n } | SpaceTerm::ChangR { n, .. } => n + 2,
            SpaceTerm::ConeEta2 { n }
            | SpaceTerm::ConeTildeEta { n, .. }
            | SpaceTerm::Cone2rEta2 { n, .. }
            | SpaceTerm::ConeTildeEtaEta { n, .. }
            | SpaceTerm::ConeChang { n, .. } => n + 3,
            SpaceTerm::ConeEta3 => 7,
            SpaceTerm::ConeAlpha1 { m }
            | SpaceTerm::ConeTildeAlpha1 { m, .. }
            | SpaceTerm::ConeIAlpha1 { m, .. } => m + 4,
        }
    }

    /// Exact reduced integral homology.
    #[must_use]
    pub fn reduced_homology(&self) -> GradedAb {
        let mut h = GradedAb::zero();
        let cyc = |p: u64, r: u32| FinAbGroup::from_prime_powers(vec![PrimePower { p, r }]);
        match *self {
            SpaceTerm::Sphere { m } => h.add_free(m, 1),
            SpaceTerm::Moore { m, q } => h.add_torsion(m - 1, cyc(q.p, q.r)),
            SpaceTerm::ChangEta { n } => {
                h.add_free(n, 1);
                h.add_free(n + 2, 1);
            }
            SpaceTerm::ChangR { n, r } => {
                h.add_torsion(n, cyc(2, r));
                h.add_free(n + 2, 1);
            }
            SpaceTerm::ConeEta2 { n } => {
                h.add_free(n, 1);
                h.add_free(n + 3, 1);
            }
            SpaceTerm::ConeTildeEta { n, r } | SpaceTerm::Cone2rEta2 { n, r } => {
                h.add_torsion(n, cyc(2, r));
                h.add_free(n + 3, 1);
            }
            SpaceTerm::ConeTildeEtaEta { n, r } => {
                h.add_torsion(n - 1, cyc(2, r));
                h.add_free(n + 3, 1);
            }
            SpaceTerm::ConeChang { n, r } => {
                h.add_torsion(n - 1, cyc(2, r));
                h.add_free(n + 1, 1);
                h.add_free(n + 3, 1);
            }
            SpaceTerm::ConeEta3 => {
                h.add_free(3, 1);
                h.add_free(7, 1);
            }
            SpaceTerm::ConeAlpha1 { m } => {
                h.add_free(m, 1);
                h.add_free(m + 4, 1);
            }
            SpaceTerm::ConeTildeAlpha1 { m, r } => {
                h.add_torsion(m - 1, cyc(3, r));
                h.add_free(m + 4, 1);
            }
            SpaceTerm::ConeIAlpha1 { m, r } => {
                h.add_torsion(m, cyc(3, r));
                h.add_free(m + 4, 1);
            }
        }
        h
    }

    /// Suspend once.  Fails for `ConeEta3`, whose suspension is outside the
    /// catalog.
    pub fn suspend(&self) -> Result<SpaceTerm> {
        match *self {
            SpaceTerm::Sphere { m } => SpaceTerm::sphere(m + 1),
            SpaceTerm::Moore { m, q } => SpaceTerm::moore(q, m + 1),
            SpaceTerm::ChangEta { n } => SpaceTerm::chang_eta(n + 1),
            SpaceTerm::ChangR { n, r } => SpaceTerm::chang_r(n + 1, r),
            SpaceTerm::ConeEta2 { n } => SpaceTerm::cone_eta2(n + 1),
            SpaceTerm::ConeTildeEta { n, r } => SpaceTerm::cone_tilde_eta(n + 1, r),
            SpaceTerm::Cone2rEta2 { n, r } => SpaceTerm::cone_2r_eta2(n + 1, r),
            SpaceTerm::ConeTildeEtaEta { n, r } => SpaceTerm::cone_tilde_eta_eta(n + 1, r),
            SpaceTerm::ConeChang { n, r } => SpaceTerm::cone_chang(n + 1, r),
            SpaceTerm::ConeEta3 => Err(Error::RangeExceeded {
                what: "the suspension of (S^3 u_{eta^3} e^7) is not a catalog space".into(),
            }),
            SpaceTerm::ConeAlpha1 { m } => SpaceTerm::cone_alpha1(m + 1),
            SpaceTerm::ConeTildeAlpha1 { m, r } => SpaceTerm::cone_tilde_alpha1(m + 1, r),
            SpaceTerm::ConeIAlpha1 { m, r } => SpaceTerm::cone_i_alpha1(m + 1, r),
        }
    }

    /// The wedge this term becomes after inverting 2: mod-2 Moore parts
    /// collapse, `eta`-family attachings become trivial, odd-primary cones
    /// are untouched.  The result may be empty (a point).
    #[must_use]
    pub fn localize_away_from_2(&self) -> Vec<SpaceTerm> {
        let s = |m: u32| SpaceTerm::Sphere { m };
        match *self {
            SpaceTerm::Sphere { m } => vec![s(m)],
            SpaceTerm::Moore { m, q } => {
                if q.p == 2 {
                    vec![]
                } else {
                    vec![SpaceTerm::Moore { m, q }]
                }
            }
            SpaceTerm::ChangEta { n } => vec![s(n), s(n + 2)],
            SpaceTerm::ChangR { n, .. } => vec![s(n + 2)],
            SpaceTerm::ConeEta2 { n } => vec![s(n), s(n + 3)],
            SpaceTerm::ConeTildeEta { n, .. }
            | SpaceTerm::Cone2rEta2 { n, .. }
            | SpaceTerm::ConeTildeEtaEta { n, .. } => vec![s(n + 3)],
            SpaceTerm::ConeChang { n, .. } => vec![s(n + 1), s(n + 3)],
            SpaceTerm::ConeEta3 => vec![s(3), s(7)],
            SpaceTerm::ConeAlpha1 { m } => vec![SpaceTerm::ConeAlpha1 { m }],
            SpaceTerm::ConeTildeAlpha1 { m, r } => vec![SpaceTerm::ConeTildeAlpha1 { m, r }],
            SpaceTerm::ConeIAlpha1 { m, r } => vec![SpaceTerm::ConeIAlpha1 { m, r }],
        }
    }

    /// The cohomology operations this term supports, by degree.
    #[must_use]
    pub fn operation_signature(&self) -> OperationSignature {
        let mut sig = OperationSignature::default();
        match *self {
            SpaceTerm::Sphere { .. } | SpaceTerm::ConeEta2 { .. } | SpaceTerm::ConeEta3 => {}
            SpaceTerm::Moore { m, q } => sig.add_bockstein(m - 1, q.p, q.r),
            SpaceTerm::ChangEta { n } => sig.set_sq2(n),
            SpaceTerm::ChangR { n, r } => {
                sig.set_sq2(n);
                sig.add_bockstein(n, 2, r);
            }
            SpaceTerm::ConeTildeEta { n, r } => {
                sig.set_sq2(n + 1);
                sig.add_bockstein(n, 2, r);
            }
            SpaceTerm::Cone2rEta2 { n, r } => {
                sig.set_theta(n);
                sig.add_bockstein(n, 2, r);
            }
            SpaceTerm::ConeTildeEtaEta { n, r } => {
                sig.set_theta(n);
                sig.add_bockstein(n - 1, 2, r);
            }
            SpaceTerm::ConeChang { n, r } => {
                sig.set_theta(n);
                sig.set_sq2(n - 1);
                sig.add_bockstein(n - 1, 2, r);
            }
            SpaceTerm::ConeAlpha1 { m } => sig.set_p1(m),
            SpaceTerm::ConeTildeAlpha1 { m, r } => {
                sig.set_p1(m);
                sig.add_bockstein(m - 1, 3, r);
            }
            SpaceTerm::ConeIAlpha1 { m, r } => {
                sig.set_p1(m);
                sig.add_bockstein(m, 3, r);
            }
        }
        sig
    }
}

impl fmt::Display for SpaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SpaceTerm::Sphere { m } => write!(f, "S^{m}"),
            SpaceTerm::Moore { m, q } => write!(f, "P^{m}(Z/{})", q.value()),
            SpaceTerm::ChangEta { n } => write!(f, "C_eta^{}", n + 2),
            SpaceTerm::ChangR { n, r } => {
                write!(f, "C_{{{r}}}^{}(Z/{})", n + 2, 1u64 << r)
            }
            SpaceTerm::ConeEta2 { n } => write!(f, "(S^{n} u_{{eta^2}} e^{})", n + 3),
            SpaceTerm::ConeTildeEta { n, r } => write!(
                f,
                "(P^{}(Z/{}) u_{{teta_{r}}} e^{})",
                n + 1,
                1u64 << r,
                n + 3
            ),
            SpaceTerm::Cone2rEta2 { n, r } => write!(
                f,
                "(P^{}(Z/{}) u_{{i*eta^2}} e^{})",
                n + 1,
                1u64 << r,
                n + 3
            ),
            SpaceTerm::ConeTildeEtaEta { n, r } => write!(
                f,
                "(P^{n}(Z/{}) u_{{teta_{r}*eta}} e^{})",
                1u64 << r,
                n + 3
            ),
            SpaceTerm::ConeChang { n, r } => write!(
                f,
                "(C_{{{r}}}^{}(Z/{}) u_{{iP*teta_{r}*eta}} e^{})",
                n + 1,
                1u64 << r,
                n + 3
            ),
            SpaceTerm::ConeEta3 => write!(f, "(S^3 u_{{eta^3}} e^7)"),
            SpaceTerm::ConeAlpha1 { m } => write!(f, "(S^{m} u_{{alpha1}} e^{})", m + 4),
            SpaceTerm::ConeTildeAlpha1 { m, r } => write!(
                f,
                "(P^{m}(Z/{}) u_{{talpha1}} e^{})",
                3u64.pow(r),
                m + 4
            ),
            SpaceTerm::ConeIAlpha1 { m, r } => write!(
                f,
                "(P^{}(Z/{}) u_{{i*alpha1}} e^{})",
                m + 1,
                3u64.pow(r),
                m + 4
            ),
        }
    }
}

/// Parse the sphere / Moore / Chang fragment of the grammar.  Accepts both
/// superscript-first and subscript-first spellings for Chang complexes
/// (`C_eta^5` and `C^5_eta`; `C_{2}^5(Z/4)` and `C^5_2(Z/4)`).
pub fn parse_space_term(input: &str) -> Result<SpaceTerm> {
    let s = input.trim();
    let bad = |why: &str| Error::ShapeMismatch {
        what: format!("cannot parse space {s:?}: {why}"),
    };

    fn parse_u32(t: &str, why: &str) -> Result<u32> {
        t.parse::<u32>().map_err(|_| Error::ShapeMismatch {
            what: format!("expected a number for {why}, got {t:?}"),
        })
    }
    // "... (Z/q)" suffix -> (head, Some(q))
    fn split_order(s: &str) -> Result<(&str, Option<u64>)> {
        match s.find('(') {
            None => Ok((s, None)),
            Some(i) => {
                let head = &s[..i];
                let tail = s[i..]
                    .strip_prefix("(Z/")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or(Error::ShapeMismatch {
                        what: format!("expected (Z/q) suffix in {s:?}"),
                    })?;
                let q = tail.parse::<u64>().map_err(|_| Error::ShapeMismatch {
                    what: format!("bad cyclic order in {s:?}"),
                })?;
                Ok((head, Some(q)))
            }
        }
    }

    if let Some(rest) = s.strip_prefix("S^") {
        return SpaceTerm::sphere(parse_u32(rest, "sphere dimension")?);
    }
    if let Some(rest) = s.strip_prefix("P^") {
        let (head, order) = split_order(rest)?;
        let m = parse_u32(head, "Moore dimension")?;
        let q = order.ok_or_else(|| bad("Moore space needs (Z/q)"))?;
        let factors = factor_prime_powers(q)?;
        if factors.len() != 1 {
            return Err(bad("Moore order must be a prime power here"));
        }
        return SpaceTerm::moore(factors[0], m);
    }
    if let Some(rest) = s.strip_prefix("C") {
        let (head, order) = split_order(rest)?;
        // Normalize "C^m_tag" and "C_tag^m" to (tag, m).
        let (tag, m) = if let Some(t) = head.strip_prefix('^') {
            let (m_str, tag) = t.split_once('_').ok_or_else(|| bad("missing _ tag"))?;
            (tag.to_string(), parse_u32(m_str, "Chang dimension")?)
        } else if let Some(t) = head.strip_prefix('_') {
            let (tag, m_str) = t.rsplit_once('^').ok_or_else(|| bad("missing ^ dim"))?;
            (tag.to_string(), parse_u32(m_str, "Chang dimension")?)
        } else {
            return Err(bad("expected C^m_tag or C_tag^m"));
        };
        let tag = tag.trim_matches(['{', '}']).to_string();
        if m < 4 {
            return Err(Error::RangeExceeded {
                what: format!("Chang top dimension m = {m} must be at least 4"),
            });
        }
        if tag == "eta" {
            return SpaceTerm::chang_eta(m - 2);
        }
        let r = parse_u32(&tag, "Chang torsion exponent")?;
        if let Some(q) = order {
            if q != 1u64 << r {
                return Err(bad("Chang order must be 2^r"));
            }
        }
        return SpaceTerm::chang_r(m - 2, r);
    }
    Err(bad("unknown space form"))
}

/// A finite wedge of catalog terms, kept sorted; the empty wedge is a point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wedge {
    terms: Vec<SpaceTerm>,
}

impl Wedge {
    #[must_use]
    pub fn point() -> Self {
        Wedge::default()
    }

    #[must_use]
    pub fn from_terms(mut terms: Vec<SpaceTerm>) -> Self {
        terms.sort();
        Wedge { terms }
    }

    pub fn push(&mut self, t: SpaceTerm) {
        let pos = self.terms.partition_point(|x| x <= &t);
        self.terms.insert(pos, t);
    }

    pub fn extend(&mut self, terms: impl IntoIterator<Item = SpaceTerm>) {
        self.terms.extend(terms);
        self.terms.sort();
    }

    #[must_use]
    pub fn terms(&self) -> &[SpaceTerm] {
        &self.terms
    }

    #[must_use]
    pub fn is_point(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn reduced_homology(&self) -> GradedAb {
        let mut h = GradedAb::zero();
        for t in &self.terms {
            h.merge(&t.reduced_homology());
        }
        h
    }

    pub fn suspend(&self) -> Result<Wedge> {
        let terms: Result<Vec<_>> = self.terms.iter().map(SpaceTerm::suspend).collect();
        Ok(Wedge::from_terms(terms?))
    }

    #[must_use]
    pub fn localize_away_from_2(&self) -> Wedge {
        let mut out = Vec::new();
        for t in &self.terms {
            out.extend(t.localize_away_from_2());
        }
        Wedge::from_terms(out)
    }

    #[must_use]
    pub fn operation_signature(&self) -> OperationSignature {
        let mut sig = OperationSignature::default();
        for t in &self.terms {
            sig.merge(&t.operation_signature());
        }
        sig
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "*");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Operations supported in each degree: `Sq^2`, the secondary operation
/// detecting `eta^2`, the mod-3 power operation `P^1`, and Bockstein orders
/// as a multiset of `(p, r)` pairs.  The degree of a Bockstein entry is the
/// homology degree of the torsion class it acts on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationSignature {
    per_degree: std::collections::BTreeMap<u32, DegreeOps>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOps {
    pub sq2: bool,
    pub theta: bool,
    pub p1: bool,
    pub bocksteins: Vec<(u64, u32)>,
}

impl OperationSignature {
    fn at(&mut self, degree: u32) -> &mut DegreeOps {
        self.per_degree.entry(degree).or_default()
    }

    pub fn set_sq2(&mut self, degree: u32) {
        self.at(degree).sq2 = true;
    }

    pub fn set_theta(&mut self, degree: u32) {
        self.at(degree).theta = true;
    }

    pub fn set_p1(&mut self, degree: u32) {
        self.at(degree).p1 = true;
    }

    pub fn add_bockstein(&mut self, degree: u32, p: u64, r: u32) {
        let ops = self.at(degree);
        ops.bocksteins.push((p, r));
        ops.bocksteins.sort_unstable();
    }

    pub fn merge(&mut self, other: &OperationSignature) {
        for (&deg, ops) in &other.per_degree {
            let mine = self.at(deg);
            mine.sq2 |= ops.sq2;
            mine.theta |= ops.theta;
            mine.p1 |= ops.p1;
            mine.bocksteins.extend_from_slice(&ops.bocksteins);
            mine.bocksteins.sort_unstable();
        }
    }

    /// All degrees shifted up by `k`; suspension acts on signatures this way.
    #[must_use]
    pub fn shifted(&self, k: u32) -> OperationSignature {
        OperationSignature {
            per_degree: self
                .per_degree
                .iter()
                .map(|(&d, ops)| (d + k, ops.clone()))
                .collect(),
        }
    }

    #[must_use]
    pub fn degree(&self, degree: u32) -> DegreeOps {
        self.per_degree.get(&degree).cloned().unwrap_or_default()
    }

    /// True if some degree supports the given selector.
    #[must_use]
    pub fn any(&self, f: impl Fn(&DegreeOps) -> bool) -> bool {
        self.per_degree.values().any(f)
    }
}
