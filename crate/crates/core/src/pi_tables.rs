//! Exact homotopy groups of catalog spaces in the metastable range the
//! decomposition needs, together with the composition relations between
//! their generators.
//!
//! Groups are finite direct sums of cyclic groups, each summand tagged with
//! a named generator.  Tables are total on the supported `(degree, space)`
//! pairs and fail with [`Error::UnsupportedPair`] outside them; composition
//! fails with [`Error::UnknownComposite`] rather than ever guessing zero.
//!
//! Printed forms are stable: a group prints as `Z/4<j*lambda> + Z/2<teta_1*eta>`,
//! the trivial group as `0`, an infinite summand as `Z<nu_4>`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::SpaceTerm;
use crate::{Error, Result};

/// Named generators and structure maps.
///
/// Elements and maps share one symbol type; composition is only defined for
/// the pairs stored in the relation database.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    /// Identity class of `S^m`.
    One { m: u32 },
    /// Identity class of a mod-2 Moore space in its self-mapping group.
    OneP,
    /// Hopf class suspension in degree +1.
    Eta,
    /// `eta o eta`.
    Eta2,
    /// `eta o eta o eta`.
    Eta3,
    /// Generator of the 3-stem on `S^3`.
    NuPrime,
    /// Hopf class of `S^7 -> S^4`.
    Nu4,
    /// Suspension of `nu'` inside the 3-stem on `S^4`.
    SigmaNuPrime,
    /// Stable 3-stem generator on `S^m`, `m >= 5`.
    Nu { m: u32 },
    /// Bottom-cell inclusion `S^n -> P^{n+1}(Z/q)` (or into a Chang complex).
    I { n: u32 },
    /// `i o eta` on a mod-2 Moore space.
    IEta,
    /// `i o eta^2` on a mod-2 Moore space.
    IEta2,
    /// The order-lifting class `teta_r` with `q o teta_r = eta`.
    Teta { r: u32 },
    /// `teta_r o eta`.
    TetaEta { r: u32 },
    /// The non-suspension generator of the 3-stem on `P^4(Z/2^r)`.
    JLambda { r: u32 },
    /// `i_3 o nu'`.
    I3NuPrime,
    /// `i_4 o nu_4` on `P^5(Z/2^r)`.
    INu4,
    /// `i_4 o sigma*nu'` on `P^5(Z/2^r)`.
    ISigmaNuPrime,
    /// `i_P o j*lambda` pushed into a Chang complex.
    IPJLambda { r: u32 },
    /// `i_P o teta_r o eta` pushed into a Chang complex.
    IPTetaEta { r: u32 },
    /// First odd-primary alpha class on `S^m`.
    Alpha1 { m: u32 },
    /// Its order-lifting class on a mod-3 Moore space.
    TAlpha1 { m: u32 },
    /// `i_m o alpha1(m)` on a mod-3 Moore space.
    IAlpha1 { m: u32 },
    /// Degree-reduction map between mod-2 Moore spaces of exponents `r -> s`.
    BChi { r: u32, s: u32 },
    /// `i o eta o q` in a Moore self-mapping group.
    IEtaQ,
    /// Pinch map `P^m(Z/q) -> S^m`.
    Q { n: u32 },
    /// Moore-part inclusion into a Chang complex.
    IP,
    /// Inclusion of the elementary Chang complex into `C^{n+2}_r`.
    IEtaIncl,
    /// Co-pinch `C^{n+2}_eta -> S^n` with `zeta_bar o i_n = 2`.
    ZetaBar,
    /// Exponent-raising map `C^{n+2}_r -> P^{n+1}(Z/2^{r+1})`.
    XiBar { r: u32 },
    /// Chang-complex comparison map of exponents `r -> s`.
    AlphaRS { r: u32, s: u32 },
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::One { m } => write!(f, "1_{m}"),
            Gen::OneP => write!(f, "1_P"),
            Gen::Eta => write!(f, "eta"),
            Gen::Eta2 => write!(f, "eta^2"),
            Gen::Eta3 => write!(f, "eta^3"),
            Gen::NuPrime => write!(f, "nu'"),
            Gen::Nu4 => write!(f, "nu_4"),
            Gen::SigmaNuPrime => write!(f, "sigma*nu'"),
            Gen::Nu { m } => write!(f, "nu_{m}"),
            Gen::I { n } => write!(f, "i_{n}"),
            Gen::IEta => write!(f, "i*eta"),
            Gen::IEta2 => write!(f, "i*eta^2"),
            Gen::Teta { r } => write!(f, "teta_{r}"),
            Gen::TetaEta { r } => write!(f, "teta_{r}*eta"),
            Gen::JLambda { .. } => write!(f, "j*lambda"),
            Gen::I3NuPrime => write!(f, "i3*nu'"),
            Gen::INu4 => write!(f, "i*nu_4"),
            Gen::ISigmaNuPrime => write!(f, "i*sigma*nu'"),
            Gen::IPJLambda { .. } => write!(f, "iP*j*lambda"),
            Gen::IPTetaEta { r } => write!(f, "iP*teta_{r}*eta"),
            Gen::Alpha1 { .. } => write!(f, "alpha1"),
            Gen::TAlpha1 { .. } => write!(f, "talpha1"),
            Gen::IAlpha1 { .. } => write!(f, "i*alpha1"),
            Gen::BChi { r, s } => write!(f, "B(chi^{r}_{s})"),
            Gen::IEtaQ => write!(f, "i*eta*q"),
            Gen::Q { n } => write!(f, "q_{n}"),
            Gen::IP => write!(f, "i_P"),
            Gen::IEtaIncl => write!(f, "i_eta"),
            Gen::ZetaBar => write!(f, "zeta_bar"),
            Gen::XiBar { r } => write!(f, "xi_bar_{r}"),
            Gen::AlphaRS { r, s } => write!(f, "alpha^{r}_{s}"),
        }
    }
}

/// Integer formal sum of generators.  The zero sum is empty; coefficients
/// are never stored as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Gen, i64>,
}

impl FormalSum {
    #[must_use]
    pub fn zero() -> Self {
        FormalSum::default()
    }

    #[must_use]
    pub fn gen(g: Gen) -> Self {
        FormalSum::of(1, g)
    }

    #[must_use]
    pub fn of(coeff: i64, g: Gen) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(coeff, g);
        s
    }

    pub fn add_term(&mut self, coeff: i64, g: Gen) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(g).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn add(&mut self, other: &FormalSum) {
        for (&g, &c) in &other.terms {
            self.add_term(c, g);
        }
    }

    #[must_use]
    pub fn scaled(&self, k: i64) -> FormalSum {
        let mut out = FormalSum::zero();
        for (&g, &c) in &self.terms {
            out.add_term(c * k, g);
        }
        out
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    #[must_use]
    pub fn coeff(&self, g: Gen) -> i64 {
        self.terms.get(&g).copied().unwrap_or(0)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, &c)| if c == 1 { g.to_string() } else { format!("{c}*{g}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One cyclic summand; `order == 0` means an infinite cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicSummand {
    pub order: u64,
    pub gen: Gen,
}

/// A homotopy (or mapping) group as an ordered direct sum of tagged cyclic
/// summands, plus rewrite aliases expressing known non-basis classes in the
/// basis (e.g. `i*eta^2 = 2*teta_1` when the extension is nonsplit).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiGroup {
    pub summands: Vec<CyclicSummand>,
    aliases: Vec<(Gen, FormalSum)>,
}

impl PiGroup {
    #[must_use]
    pub fn trivial() -> Self {
        PiGroup::default()
    }

    fn of(summands: Vec<(u64, Gen)>) -> Self {
        PiGroup {
            summands: summands
                .into_iter()
                .map(|(order, gen)| CyclicSummand { order, gen })
                .collect(),
            aliases: Vec::new(),
        }
    }

    fn with_alias(mut self, from: Gen, to: FormalSum) -> Self {
        self.aliases.push((from, to));
        self
    }

    #[must_use]
    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    /// Total order; `None` when some summand is infinite.
    #[must_use]
    pub fn order(&self) -> Option<u64> {
        let mut n = 1u64;
        for s in &self.summands {
            if s.order == 0 {
                return None;
            }
            n *= s.order;
        }
        Some(n)
    }

    /// Canonical form of a sum in this group: aliases substituted, then each
    /// coefficient reduced to `0..order`.  Fails if a generator is neither a
    /// basis element nor an alias.
    pub fn reduce(&self, x: &FormalSum) -> Result<FormalSum> {
        let mut work = x.clone();
        // Alias substitution terminates: aliases only map outside-basis
        // generators to basis generators.
        for _ in 0..8 {
            let mut next = FormalSum::zero();
            let mut substituted = false;
            for (g, c) in work.iter() {
                if let Some((_, rhs)) = self.aliases.iter().find(|(from, _)| *from == g) {
                    next.add(&rhs.scaled(c));
                    substituted = true;
                } else {
                    next.add_term(c, g);
                }
            }
            work = next;
            if !substituted {
                break;
            }
        }
        let mut out = FormalSum::zero();
        for (g, c) in work.iter() {
            let summand = self.summands.iter().find(|s| s.gen == g).ok_or_else(|| {
                Error::UnsupportedPair {
                    what: format!("generator {g} is not a member of {self}"),
                }
            })?;
            let c = if summand.order == 0 {
                c
            } else {
                c.rem_euclid(summand.order as i64)
            };
            out.add_term(c, g);
        }
        Ok(out)
    }
}

impl fmt::Display for PiGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                if s.order == 0 {
                    format!("Z<{}>", s.gen)
                } else {
                    format!("Z/{}<{}>", s.order, s.gen)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `delta_r`: 1 for `r = 1`, else 0.  Controls which 3-stem summands of a
/// mod-2 Moore space collapse at exponent 1.
#[must_use]
pub fn delta(r: u32) -> u32 {
    u32::from(r == 1)
}

/// `varrho_r`: `r + 1` for `r <= 2`, else `r`.  The 2-exponent of the
/// `j*lambda` summand.
#[must_use]
pub fn varrho(r: u32) -> u32 {
    if r <= 2 {
        r + 1
    } else {
        r
    }
}

fn pow2(e: u32) -> u64 {
    1u64 << e
}

fn unsupported(m: u32, what: &dyn fmt::Display) -> Error {
    Error::UnsupportedPair {
        what: format!("pi_{m} of {what} is outside the stored tables"),
    }
}

/// The homotopy group `pi_m(x)` for catalog spaces in the supported range.
///
/// Spheres are covered through the 3-stem, Moore spaces through the range
/// that attaching vectors live in, Chang complexes in the single degree the
/// classification consumes.  Everything else is an explicit error.
pub fn pi(m: u32, x: &SpaceTerm) -> Result<PiGroup> {
    match *x {
        SpaceTerm::Sphere { m: k } => {
            if k < 2 {
                return Err(unsupported(m, x));
            }
            if m < k {
                return Ok(PiGroup::trivial());
            }
            match m - k {
                0 => Ok(PiGroup::of(vec![(0, Gen::One { m: k })])),
                1 if k == 2 => Ok(PiGroup::of(vec![(0, Gen::Eta)])),
                1 => Ok(PiGroup::of(vec![(2, Gen::Eta)])),
                2 => Ok(PiGroup::of(vec![(2, Gen::Eta2)])),
                3 if k == 3 => Ok(PiGroup::of(vec![(12, Gen::NuPrime)])
                    .with_alias(Gen::Eta3, FormalSum::of(6, Gen::NuPrime))
                    .with_alias(Gen::Alpha1 { m: 3 }, FormalSum::of(8, Gen::NuPrime))),
                3 if k == 4 => Ok(PiGroup::of(vec![
                    (0, Gen::Nu4),
                    (12, Gen::SigmaNuPrime),
                ])),
                3 if k >= 5 => {
                    let g = PiGroup::of(vec![(24, Gen::Nu { m: k })]);
                    if k == 5 {
                        Ok(g.with_alias(Gen::Alpha1 { m: 5 }, FormalSum::of(16, Gen::Nu { m: 5 })))
                    } else {
                        Ok(g)
                    }
                }
                _ => Err(unsupported(m, x)),
            }
        }
        SpaceTerm::Moore { m: mm, q } => {
            let b = mm - 1;
            if m < b {
                return Ok(PiGroup::trivial());
            }
            if b < 3 {
                return Err(unsupported(m, x));
            }
            if m == b {
                return Ok(PiGroup::of(vec![(q.value(), Gen::I { n: b })]));
            }
            if m == b + 1 {
                return if q.p == 2 {
                    Ok(PiGroup::of(vec![(2, Gen::IEta)]))
                } else {
                    Ok(PiGroup::trivial())
                };
            }
            if m == b + 2 {
                return match (q.p, q.r) {
                    (2, 1) => Ok(PiGroup::of(vec![(4, Gen::Teta { r: 1 })])
                        .with_alias(Gen::IEta2, FormalSum::of(2, Gen::Teta { r: 1 }))),
                    (2, r) => Ok(PiGroup::of(vec![
                        (2, Gen::Teta { r }),
                        (2, Gen::IEta2),
                    ])),
                    _ => Ok(PiGroup::trivial()),
                };
            }
            if mm == 4 && m == 6 && q.p == 2 {
                let r = q.r;
                let mut summands = vec![(pow2(varrho(r)), Gen::JLambda { r })];
                if delta(r) == 0 {
                    summands.push((2, Gen::I3NuPrime));
                }
                summands.push((2, Gen::TetaEta { r }));
                return Ok(PiGroup::of(summands));
            }
            if mm == 5 && m == 7 && q.p == 2 {
                let r = q.r;
                let mut summands = vec![(pow2(r + 1), Gen::INu4)];
                let e = r.saturating_sub(1).min(2);
                if e > 0 {
                    summands.push((pow2(e), Gen::ISigmaNuPrime));
                }
                summands.push((2, Gen::TetaEta { r }));
                return Ok(PiGroup::of(summands));
            }
            if mm == 5 && m == 8 && q.p % 2 == 1 {
                return if q.p == 3 {
                    Ok(PiGroup::of(vec![(3, Gen::TAlpha1 { m: 5 })]))
                } else {
                    Ok(PiGroup::trivial())
                };
            }
            if mm == 6 && m == 8 && q.p % 2 == 1 {
                return if q.p == 3 {
                    Ok(PiGroup::of(vec![(3, Gen::IAlpha1 { m: 5 })]))
                } else {
                    Ok(PiGroup::trivial())
                };
            }
            Err(unsupported(m, x))
        }
        SpaceTerm::ChangEta { n } => {
            if m < n {
                return Ok(PiGroup::trivial());
            }
            if n == 3 && m == 6 {
                return Ok(PiGroup::of(vec![(6, Gen::I3NuPrime)]));
            }
            Err(unsupported(m, x))
        }
        SpaceTerm::ChangR { n, r } => {
            if m < n {
                return Ok(PiGroup::trivial());
            }
            if n == 3 && m == 6 {
                let mut summands = vec![(pow2(r + delta(r)), Gen::IPJLambda { r })];
                if delta(r) == 0 {
                    summands.push((2, Gen::I3NuPrime));
                }
                summands.push((2, Gen::IPTetaEta { r }));
                return Ok(PiGroup::of(summands));
            }
            Err(unsupported(m, x))
        }
        _ => Err(unsupported(m, x)),
    }
}

/// The mapping group `[P^m(Z/2^r), P^m(Z/2^s)]` for `m >= 4`.
pub fn moore_mapping_group(m: u32, r: u32, s: u32) -> Result<PiGroup> {
    if m < 4 || r == 0 || s == 0 {
        return Err(Error::UnsupportedPair {
            what: format!("[P^{m}(Z/2^{r}), P^{m}(Z/2^{s})] is outside the stored tables"),
        });
    }
    if r == 1 && s == 1 {
        return Ok(PiGroup::of(vec![(4, Gen::OneP)])
            .with_alias(Gen::IEtaQ, FormalSum::of(2, Gen::OneP)));
    }
    Ok(PiGroup::of(vec![
        (pow2(r.min(s)), Gen::BChi { r, s }),
        (2, Gen::IEtaQ),
    ]))
}

fn unknown(f: &Gen, g: &Gen) -> Error {
    Error::UnknownComposite {
        what: format!("{f} o {g} has no entry in the relation database"),
    }
}

/// Composition of a single structure map with a single generator.
fn compose_gen(f: &Gen, g: &Gen) -> Result<FormalSum> {
    use Gen::*;
    let one = |g: Gen| Ok(FormalSum::gen(g));
    match (*f, *g) {
        // Pinch maps: q o teta_r = eta, q o talpha1 = alpha1, q o (i o -) = 0.
        (Q { .. }, Teta { .. }) => one(Eta),
        (Q { n }, TAlpha1 { m }) if n == m => one(Alpha1 { m }),
        (Q { n }, I { n: b }) if b + 1 == n => Ok(FormalSum::zero()),
        (Q { .. }, IEta) | (Q { .. }, IEta2) | (Q { .. }, INu4) | (Q { .. }, ISigmaNuPrime) => {
            Ok(FormalSum::zero())
        }
        // q_n o B(chi^r_s) = 2^{r-s} q_n for r >= s, q_n for r <= s.
        (Q { n }, BChi { r, s }) => {
            if r >= s {
                Ok(FormalSum::of(1i64 << (r - s), Q { n }))
            } else {
                one(Q { n })
            }
        }
        // Degree-reduction maps on Moore spaces.
        (BChi { r, s }, I { n }) => {
            if r >= s {
                one(I { n })
            } else {
                Ok(FormalSum::of(1i64 << (s - r), I { n }))
            }
        }
        (BChi { r, s }, IEta) | (BChi { r, s }, IEta2) => {
            // (B(chi) o i) o x; the coefficient 2^{s-r} kills an order-2 class.
            if r >= s {
                one(*g)
            } else {
                Ok(FormalSum::zero())
            }
        }
        (BChi { r, s }, Teta { r: t }) if t == r && s >= r => one(Teta { r: s }),
        (BChi { r, s }, TetaEta { r: t }) if t == r && s >= r => one(TetaEta { r: s }),
        (BChi { r, s }, TAlpha1 { m }) if s >= r => one(TAlpha1 { m }),
        // Chang-complex structure maps.
        (ZetaBar, I { n }) => Ok(FormalSum::of(2, One { m: n })),
        (XiBar { r }, IPTetaEta { r: t }) if t == r => one(TetaEta { r: r + 1 }),
        (AlphaRS { r, s }, IPTetaEta { r: t }) if t == r && r <= s => one(IPTetaEta { r: s }),
        (IP, TetaEta { r }) => one(IPTetaEta { r }),
        (IP, JLambda { r }) => one(IPJLambda { r }),
        (IP, I3NuPrime) => one(I3NuPrime),
        (IEtaIncl, I3NuPrime) => one(I3NuPrime),
        // Bottom-cell inclusions.
        (I { n: 3 }, Alpha1 { m: 3 }) => Ok(FormalSum::of(2, I3NuPrime)),
        (I { n: 3 }, NuPrime) => one(I3NuPrime),
        (I { n: 3 }, Eta3) => Ok(FormalSum::of(6, I3NuPrime)),
        (I { n: 4 }, Nu4) => one(INu4),
        (I { n: 4 }, SigmaNuPrime) => one(ISigmaNuPrime),
        (I { n: 5 }, Alpha1 { m: 5 }) => one(IAlpha1 { m: 5 }),
        (I { .. }, Eta) => one(IEta),
        (I { .. }, Eta2) => one(IEta2),
        _ => Err(unknown(f, g)),
    }
}

/// Linear extension of the relation database: `f o (sum c_i g_i)`.
pub fn compose(f: &Gen, x: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (g, c) in x.iter() {
        out.add(&compose_gen(f, &g)?.scaled(c));
    }
    Ok(out)
}

/// Generators of `pi_m(x)` that are suspensions, listed as formal sums in
/// the `pi_m` basis.  These are exactly the classes an attaching vector may
/// use.  A space can be supported with an empty list (nothing desuspends).
pub fn suspended_generators(m: u32, x: &SpaceTerm) -> Result<Vec<FormalSum>> {
    use Gen::*;
    match (m, x) {
        (6, SpaceTerm::Sphere { m: 3 }) => Ok(vec![FormalSum::of(6, NuPrime)]),
        (6, SpaceTerm::Sphere { m: 5 }) => Ok(vec![FormalSum::gen(Eta)]),
        (6, SpaceTerm::Moore { m: 5, q }) if q.p == 2 => {
            if q.r == 1 {
                Ok(vec![FormalSum::gen(Teta { r: 1 })])
            } else {
                Ok(vec![
                    FormalSum::gen(Teta { r: q.r }),
                    FormalSum::gen(IEta2),
                ])
            }
        }
        (6, SpaceTerm::Moore { m: 4, q }) if q.p == 2 => {
            // j*lambda and i3*nu' do not desuspend; only teta_r*eta does.
            Ok(vec![FormalSum::gen(TetaEta { r: q.r })])
        }
        (6, SpaceTerm::ChangEta { n: 3 }) => Ok(vec![]),
        (6, SpaceTerm::ChangR { n: 3, r }) => Ok(vec![FormalSum::gen(IPTetaEta { r: *r })]),
        (8, SpaceTerm::Sphere { m: 5 }) => Ok(vec![FormalSum::gen(Nu { m: 5 })]),
        (8, SpaceTerm::Moore { m: 5, q }) if q.p == 3 => Ok(vec![FormalSum::gen(TAlpha1 { m: 5 })]),
        (8, SpaceTerm::Moore { m: 6, q }) if q.p == 3 => Ok(vec![FormalSum::gen(IAlpha1 { m: 5 })]),
        (8, SpaceTerm::Moore { m: 5 | 6, q }) if q.p >= 5 => Ok(vec![]),
        _ => Err(Error::UnsupportedPair {
            what: format!("suspended generators of pi_{m}({x}) are outside the stored tables"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::PrimePower;

    fn pp(p: u64, r: u32) -> PrimePower {
        PrimePower::new(p, r).unwrap()
    }

    fn moore(p: u64, r: u32, m: u32) -> SpaceTerm {
        SpaceTerm::moore(pp(p, r), m).unwrap()
    }

    fn sphere(m: u32) -> SpaceTerm {
        SpaceTerm::sphere(m).unwrap()
    }

    #[test]
    fn delta_and_varrho_values() {
        assert_eq!(delta(1), 1);
        assert_eq!(delta(2), 0);
        assert_eq!(delta(5), 0);
        assert_eq!(varrho(1), 2);
        assert_eq!(varrho(2), 3);
        assert_eq!(varrho(3), 3);
        assert_eq!(varrho(4), 4);
    }

    #[test]
    fn sphere_stems() {
        assert_eq!(pi(3, &sphere(2)).unwrap().to_string(), "Z<eta>");
        assert_eq!(pi(4, &sphere(3)).unwrap().to_string(), "Z/2<eta>");
        assert_eq!(pi(5, &sphere(3)).unwrap().to_string(), "Z/2<eta^2>");
        assert_eq!(pi(6, &sphere(3)).unwrap().to_string(), "Z/12<nu'>");
        assert_eq!(
            pi(7, &sphere(4)).unwrap().to_string(),
            "Z<nu_4> + Z/12<sigma*nu'>"
        );
        assert_eq!(pi(8, &sphere(5)).unwrap().to_string(), "Z/24<nu_5>");
        assert_eq!(pi(9, &sphere(6)).unwrap().to_string(), "Z/24<nu_6>");
        assert_eq!(pi(4, &sphere(4)).unwrap().to_string(), "Z<1_4>");
        assert_eq!(pi(2, &sphere(4)).unwrap().to_string(), "0");
        assert!(pi(10, &sphere(5)).is_err());
    }

    #[test]
    fn eta_cubed_and_alpha_reduce_in_the_sphere_groups() {
        let g6 = pi(6, &sphere(3)).unwrap();
        assert_eq!(
            g6.reduce(&FormalSum::gen(Gen::Eta3)).unwrap(),
            FormalSum::of(6, Gen::NuPrime)
        );
        assert_eq!(
            g6.reduce(&FormalSum::gen(Gen::Alpha1 { m: 3 })).unwrap(),
            FormalSum::of(8, Gen::NuPrime)
        );
        let g8 = pi(8, &sphere(5)).unwrap();
        assert_eq!(
            g8.reduce(&FormalSum::gen(Gen::Alpha1 { m: 5 })).unwrap(),
            FormalSum::of(16, Gen::Nu { m: 5 })
        );
    }

    #[test]
    fn moore_low_rows() {
        assert_eq!(pi(3, &moore(2, 2, 4)).unwrap().to_string(), "Z/4<i_3>");
        assert_eq!(pi(4, &moore(2, 2, 4)).unwrap().to_string(), "Z/2<i*eta>");
        assert_eq!(pi(4, &moore(3, 1, 4)).unwrap().to_string(), "0");
        assert_eq!(
            pi(5, &moore(2, 1, 4)).unwrap().to_string(),
            "Z/4<teta_1>"
        );
        assert_eq!(
            pi(5, &moore(2, 3, 4)).unwrap().to_string(),
            "Z/2<teta_3> + Z/2<i*eta^2>"
        );
        assert_eq!(pi(5, &moore(5, 1, 4)).unwrap().to_string(), "0");
        // The nonsplit extension at exponent 1.
        let g = pi(5, &moore(2, 1, 4)).unwrap();
        assert_eq!(
            g.reduce(&FormalSum::gen(Gen::IEta2)).unwrap(),
            FormalSum::of(2, Gen::Teta { r: 1 })
        );
    }

    #[test]
    fn three_stem_of_small_moore_spaces() {
        assert_eq!(
            pi(6, &moore(2, 1, 4)).unwrap().to_string(),
            "Z/4<j*lambda> + Z/2<teta_1*eta>"
        );
        assert_eq!(
            pi(6, &moore(2, 2, 4)).unwrap().to_string(),
            "Z/8<j*lambda> + Z/2<i3*nu'> + Z/2<teta_2*eta>"
        );
        assert_eq!(
            pi(6, &moore(2, 3, 4)).unwrap().to_string(),
            "Z/8<j*lambda> + Z/2<i3*nu'> + Z/2<teta_3*eta>"
        );
        assert_eq!(
            pi(7, &moore(2, 1, 5)).unwrap().to_string(),
            "Z/4<i*nu_4> + Z/2<teta_1*eta>"
        );
        assert_eq!(
            pi(7, &moore(2, 2, 5)).unwrap().to_string(),
            "Z/8<i*nu_4> + Z/2<i*sigma*nu'> + Z/2<teta_2*eta>"
        );
        assert_eq!(
            pi(7, &moore(2, 4, 5)).unwrap().to_string(),
            "Z/32<i*nu_4> + Z/4<i*sigma*nu'> + Z/2<teta_4*eta>"
        );
    }

    #[test]
    fn odd_primary_rows() {
        assert_eq!(
            pi(8, &moore(3, 2, 5)).unwrap().to_string(),
            "Z/3<talpha1>"
        );
        assert_eq!(
            pi(8, &moore(3, 1, 6)).unwrap().to_string(),
            "Z/3<i*alpha1>"
        );
        assert_eq!(pi(8, &moore(5, 1, 5)).unwrap().to_string(), "0");
        assert_eq!(pi(8, &moore(5, 2, 6)).unwrap().to_string(), "0");
        assert!(pi(8, &moore(2, 1, 5)).is_err());
    }

    #[test]
    fn chang_rows() {
        assert_eq!(
            pi(6, &SpaceTerm::chang_eta(3).unwrap()).unwrap().to_string(),
            "Z/6<i3*nu'>"
        );
        assert_eq!(
            pi(6, &SpaceTerm::chang_r(3, 1).unwrap()).unwrap().to_string(),
            "Z/4<iP*j*lambda> + Z/2<iP*teta_1*eta>"
        );
        assert_eq!(
            pi(6, &SpaceTerm::chang_r(3, 2).unwrap()).unwrap().to_string(),
            "Z/4<iP*j*lambda> + Z/2<i3*nu'> + Z/2<iP*teta_2*eta>"
        );
        assert_eq!(
            pi(6, &SpaceTerm::chang_r(3, 3).unwrap()).unwrap().to_string(),
            "Z/8<iP*j*lambda> + Z/2<i3*nu'> + Z/2<iP*teta_3*eta>"
        );
        assert!(pi(7, &SpaceTerm::chang_eta(3).unwrap()).is_err());
    }

    #[test]
    fn mapping_group_rows() {
        assert_eq!(
            moore_mapping_group(4, 1, 1).unwrap().to_string(),
            "Z/4<1_P>"
        );
        assert_eq!(
            moore_mapping_group(4, 3, 2).unwrap().to_string(),
            "Z/4<B(chi^3_2)> + Z/2<i*eta*q>"
        );
        assert_eq!(
            moore_mapping_group(5, 1, 4).unwrap().to_string(),
            "Z/2<B(chi^1_4)> + Z/2<i*eta*q>"
        );
    }

    #[test]
    fn composition_relations() {
        use Gen::*;
        let teta = FormalSum::gen(Teta { r: 3 });
        assert_eq!(
            compose(&Q { n: 5 }, &teta).unwrap(),
            FormalSum::gen(Eta)
        );
        // B(chi^r_s) i = i (r >= s) and 2^{s-r} i (r <= s).
        assert_eq!(
            compose(&BChi { r: 3, s: 1 }, &FormalSum::gen(I { n: 3 })).unwrap(),
            FormalSum::gen(I { n: 3 })
        );
        assert_eq!(
            compose(&BChi { r: 1, s: 3 }, &FormalSum::gen(I { n: 3 })).unwrap(),
            FormalSum::of(4, I { n: 3 })
        );
        assert_eq!(
            compose(&BChi { r: 2, s: 3 }, &FormalSum::gen(Teta { r: 2 })).unwrap(),
            FormalSum::gen(Teta { r: 3 })
        );
        assert_eq!(
            compose(&ZetaBar, &FormalSum::gen(I { n: 4 })).unwrap(),
            FormalSum::of(2, One { m: 4 })
        );
        assert_eq!(
            compose(&XiBar { r: 2 }, &FormalSum::gen(IPTetaEta { r: 2 })).unwrap(),
            FormalSum::gen(TetaEta { r: 3 })
        );
        assert_eq!(
            compose(&AlphaRS { r: 1, s: 3 }, &FormalSum::gen(IPTetaEta { r: 1 })).unwrap(),
            FormalSum::gen(IPTetaEta { r: 3 })
        );
        assert_eq!(
            compose(&Q { n: 5 }, &FormalSum::gen(TAlpha1 { m: 5 })).unwrap(),
            FormalSum::gen(Alpha1 { m: 5 })
        );
        // i_3 alpha1(3) = 2 i3*nu', of order 3 in pi_6 of the elementary
        // Chang complex.
        let lift = compose(&I { n: 3 }, &FormalSum::gen(Alpha1 { m: 3 })).unwrap();
        assert_eq!(lift, FormalSum::of(2, I3NuPrime));
        let chang = pi(6, &SpaceTerm::chang_eta(3).unwrap()).unwrap();
        let three = chang.reduce(&lift.scaled(3)).unwrap();
        assert!(three.is_zero());
        // Unknown pairs fail loudly instead of pretending to vanish.
        assert!(compose(&IP, &FormalSum::gen(Eta)).is_err());
        assert!(compose(&BChi { r: 3, s: 1 }, &FormalSum::gen(Teta { r: 3 })).is_err());
    }

    #[test]
    fn chained_degree_reductions_agree_on_monotone_towers() {
        use Gen::*;
        // Ascending exponent chains, on every stored class they act on.
        for r in 1..=4u32 {
            for s in r..=4 {
                for u in s..=4 {
                    for x in [
                        FormalSum::gen(I { n: 3 }),
                        FormalSum::gen(IEta),
                        FormalSum::gen(Teta { r }),
                        FormalSum::gen(TetaEta { r }),
                        FormalSum::gen(TAlpha1 { m: 5 }),
                    ] {
                        let step = compose(&BChi { r, s }, &x).unwrap();
                        let via = compose(&BChi { r: s, s: u }, &step).unwrap();
                        let direct = compose(&BChi { r, s: u }, &x).unwrap();
                        assert_eq!(via, direct, "ascending chain r={r} s={s} u={u} on {x}");
                    }
                }
            }
        }
        // Descending chains act on the bottom inclusion.
        for r in (1..=4u32).rev() {
            for s in 1..=r {
                for u in 1..=s {
                    let x = FormalSum::gen(I { n: 4 });
                    let step = compose(&BChi { r, s }, &x).unwrap();
                    let via = compose(&BChi { r: s, s: u }, &step).unwrap();
                    let direct = compose(&BChi { r, s: u }, &x).unwrap();
                    assert_eq!(via, direct, "descending chain r={r} s={s} u={u}");
                }
            }
        }
    }

    #[test]
    fn suspended_generator_lists() {
        use Gen::*;
        assert_eq!(
            suspended_generators(6, &sphere(3)).unwrap(),
            vec![FormalSum::of(6, NuPrime)]
        );
        assert_eq!(
            suspended_generators(6, &moore(2, 1, 5)).unwrap(),
            vec![FormalSum::gen(Teta { r: 1 })]
        );
        assert_eq!(
            suspended_generators(6, &moore(2, 3, 5)).unwrap(),
            vec![FormalSum::gen(Teta { r: 3 }), FormalSum::gen(IEta2)]
        );
        assert_eq!(
            suspended_generators(6, &moore(2, 2, 4)).unwrap(),
            vec![FormalSum::gen(TetaEta { r: 2 })]
        );
        assert_eq!(
            suspended_generators(6, &SpaceTerm::chang_eta(3).unwrap()).unwrap(),
            vec![]
        );
        assert_eq!(
            suspended_generators(8, &moore(3, 2, 6)).unwrap(),
            vec![FormalSum::gen(IAlpha1 { m: 5 })]
        );
        assert_eq!(suspended_generators(8, &moore(5, 1, 5)).unwrap(), vec![]);
        assert!(suspended_generators(7, &sphere(4)).is_err());
    }
}
