//! Attaching vectors and their normalization.
//!
//! The top cell of the complex attaches to a wedge of catalog spaces by a
//! sum of suspended classes, one coefficient block per wedge summand
//! ("slot").  Changing the wedge splitting by a self-equivalence of the
//! target rewrites the vector; the moves below are exactly the rewrites
//! realizable that way, oriented so each application zeroes one
//! coefficient.  Normal forms have at most one nonzero coefficient, of unit
//! value, and the cofiber of a normal form is read off termwise.
//!
//! The rule table is data, not code, so a deliberately corrupted table can
//! be audited against the canonical one (see `oracle::check_rule_soundness`).
//!
//! Coefficient conventions: every coefficient is stored modulo 2 or 3.  On
//! a `P^5(Z/2)` slot the group of suspended classes is `Z/4<teta_1>`, but
//! the pair `(teta_1, i*eta^2)` still spans it since `i*eta^2 = 2*teta_1`;
//! vectors keep the two mod-2 coordinates and the moves never need the unit
//! `3 = -1`, whose sign is absorbed by a self-equivalence.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::catalog::{SpaceTerm, Wedge};
use crate::pi_tables::Gen;
use crate::{Error, Result};

/// Generator classes the rewrite rules distinguish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Teta,
    IEta2,
    Eta,
    Eta3,
    TetaEta,
    IpTetaEta,
    Alpha,
    Talpha,
    IAlpha,
}

fn kind_of(g: &Gen) -> Option<GenKind> {
    match g {
        Gen::Teta { .. } => Some(GenKind::Teta),
        Gen::IEta2 => Some(GenKind::IEta2),
        Gen::Eta => Some(GenKind::Eta),
        Gen::Eta3 => Some(GenKind::Eta3),
        Gen::TetaEta { .. } => Some(GenKind::TetaEta),
        Gen::IPTetaEta { .. } => Some(GenKind::IpTetaEta),
        Gen::Alpha1 { .. } => Some(GenKind::Alpha),
        Gen::TAlpha1 { .. } => Some(GenKind::Talpha),
        Gen::IAlpha1 { .. } => Some(GenKind::IAlpha),
        _ => None,
    }
}

/// Exponent side condition between the pivot's and the victim's torsion
/// exponents.  For same-kind rules, equal exponents are broken by slot
/// index so exactly one orientation of each pair applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpRel {
    Any,
    PivotLeq,
    PivotGeq,
    PivotLt,
}

/// Rule identifiers, named pivot-first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    TetaAbsorbsTeta,
    TetaAbsorbsIEta2,
    TetaAbsorbsEta,
    TetaAbsorbsTetaEta,
    TetaAbsorbsIpTetaEta,
    TetaAbsorbsEta3,
    TetaEtaAbsorbsTetaEta,
    IpTetaEtaAbsorbsIpTetaEta,
    TetaEtaAbsorbsIpTetaEta,
    IpTetaEtaAbsorbsTetaEta,
    TetaEtaAbsorbsIEta2,
    TetaEtaAbsorbsEta3,
    IpTetaEtaAbsorbsIEta2,
    IpTetaEtaAbsorbsEta3,
    IEta2AbsorbsIEta2,
    IEta2AbsorbsEta3,
    EtaAbsorbsEta,
    EtaAbsorbsEta3,
    EtaAbsorbsIEta2,
    EtaAbsorbsTetaEta,
    EtaAbsorbsIpTetaEta,
    Eta3AbsorbsEta3,
    TalphaAbsorbsAlpha,
    TalphaAbsorbsIAlpha,
    TalphaAbsorbsTalpha,
    AlphaAbsorbsIAlpha,
    AlphaAbsorbsAlpha,
    IAlphaAbsorbsIAlpha,
    UnitNormalize,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One oriented rewrite rule: a nonzero pivot coefficient of one kind
/// zeroes a nonzero victim coefficient of another (or the same) kind,
/// subject to an exponent side condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSpec {
    pub id: RuleId,
    pub pivot: GenKind,
    pub victim: GenKind,
    pub exp: ExpRel,
}

const fn rule(id: RuleId, pivot: GenKind, victim: GenKind, exp: ExpRel) -> RuleSpec {
    RuleSpec {
        id,
        pivot,
        victim,
        exp,
    }
}

/// Rules for vectors out of `S^6`, in priority order.  The `teta` block
/// absorbs everything; the two `eta`-composite blocks absorb each other by
/// exponent and everything below; `i*eta^2` keeps its largest exponent;
/// `eta` absorbs the composites; `eta^3` only collapses with itself.
const RULES_DIM6: [RuleSpec; 22] = [
    rule(RuleId::TetaAbsorbsTeta, GenKind::Teta, GenKind::Teta, ExpRel::PivotLeq),
    rule(RuleId::TetaAbsorbsIEta2, GenKind::Teta, GenKind::IEta2, ExpRel::Any),
    rule(RuleId::TetaAbsorbsEta, GenKind::Teta, GenKind::Eta, ExpRel::Any),
    rule(RuleId::TetaAbsorbsTetaEta, GenKind::Teta, GenKind::TetaEta, ExpRel::Any),
    rule(RuleId::TetaAbsorbsIpTetaEta, GenKind::Teta, GenKind::IpTetaEta, ExpRel::Any),
    rule(RuleId::TetaAbsorbsEta3, GenKind::Teta, GenKind::Eta3, ExpRel::Any),
    rule(RuleId::TetaEtaAbsorbsTetaEta, GenKind::TetaEta, GenKind::TetaEta, ExpRel::PivotLeq),
    rule(RuleId::IpTetaEtaAbsorbsIpTetaEta, GenKind::IpTetaEta, GenKind::IpTetaEta, ExpRel::PivotLeq),
    rule(RuleId::TetaEtaAbsorbsIpTetaEta, GenKind::TetaEta, GenKind::IpTetaEta, ExpRel::PivotLeq),
    rule(RuleId::IpTetaEtaAbsorbsTetaEta, GenKind::IpTetaEta, GenKind::TetaEta, ExpRel::PivotLt),
    rule(RuleId::TetaEtaAbsorbsIEta2, GenKind::TetaEta, GenKind::IEta2, ExpRel::Any),
    rule(RuleId::TetaEtaAbsorbsEta3, GenKind::TetaEta, GenKind::Eta3, ExpRel::Any),
    rule(RuleId::IpTetaEtaAbsorbsIEta2, GenKind::IpTetaEta, GenKind::IEta2, ExpRel::Any),
    rule(RuleId::IpTetaEtaAbsorbsEta3, GenKind::IpTetaEta, GenKind::Eta3, ExpRel::Any),
    rule(RuleId::IEta2AbsorbsIEta2, GenKind::IEta2, GenKind::IEta2, ExpRel::PivotGeq),
    rule(RuleId::IEta2AbsorbsEta3, GenKind::IEta2, GenKind::Eta3, ExpRel::Any),
    rule(RuleId::EtaAbsorbsEta, GenKind::Eta, GenKind::Eta, ExpRel::Any),
    rule(RuleId::EtaAbsorbsEta3, GenKind::Eta, GenKind::Eta3, ExpRel::Any),
    rule(RuleId::EtaAbsorbsIEta2, GenKind::Eta, GenKind::IEta2, ExpRel::Any),
    rule(RuleId::EtaAbsorbsTetaEta, GenKind::Eta, GenKind::TetaEta, ExpRel::Any),
    rule(RuleId::EtaAbsorbsIpTetaEta, GenKind::Eta, GenKind::IpTetaEta, ExpRel::Any),
    rule(RuleId::Eta3AbsorbsEta3, GenKind::Eta3, GenKind::Eta3, ExpRel::Any),
];

/// Rules for vectors out of `S^8`: the Moore-top class dominates, then the
/// sphere class, then the Moore-bottom class; exponent sides keep the
/// smallest `talpha1` and the largest `i*alpha1`.
const RULES_DIM8: [RuleSpec; 6] = [
    rule(RuleId::TalphaAbsorbsAlpha, GenKind::Talpha, GenKind::Alpha, ExpRel::Any),
    rule(RuleId::TalphaAbsorbsIAlpha, GenKind::Talpha, GenKind::IAlpha, ExpRel::Any),
    rule(RuleId::TalphaAbsorbsTalpha, GenKind::Talpha, GenKind::Talpha, ExpRel::PivotLeq),
    rule(RuleId::AlphaAbsorbsIAlpha, GenKind::Alpha, GenKind::IAlpha, ExpRel::Any),
    rule(RuleId::AlphaAbsorbsAlpha, GenKind::Alpha, GenKind::Alpha, ExpRel::Any),
    rule(RuleId::IAlphaAbsorbsIAlpha, GenKind::IAlpha, GenKind::IAlpha, ExpRel::PivotGeq),
];

/// The canonical rule table for a source dimension (6 or 8).
#[must_use]
pub fn canonical_rules(source_dim: u32) -> &'static [RuleSpec] {
    match source_dim {
        6 => &RULES_DIM6,
        8 => &RULES_DIM8,
        _ => &[],
    }
}

/// The coefficient block a slot carries: suspended generators with their
/// coefficient modulus.
pub fn slot_basis(source_dim: u32, target: &SpaceTerm) -> Result<Vec<(Gen, u8)>> {
    match (source_dim, target) {
        (6, SpaceTerm::Sphere { m: 3 }) => Ok(vec![(Gen::Eta3, 2)]),
        (6, SpaceTerm::Sphere { m: 5 }) => Ok(vec![(Gen::Eta, 2)]),
        (6, SpaceTerm::Moore { m: 5, q }) if q.p == 2 => Ok(vec![
            (Gen::Teta { r: q.r }, 2),
            (Gen::IEta2, 2),
        ]),
        (6, SpaceTerm::Moore { m: 4, q }) if q.p == 2 => {
            Ok(vec![(Gen::TetaEta { r: q.r }, 2)])
        }
        (6, SpaceTerm::ChangR { n: 3, r }) => Ok(vec![(Gen::IPTetaEta { r: *r }, 2)]),
        (6, SpaceTerm::ChangEta { n: 3 }) => Ok(vec![]),
        (8, SpaceTerm::Sphere { m: 5 }) => Ok(vec![(Gen::Alpha1 { m: 5 }, 3)]),
        (8, SpaceTerm::Moore { m: 5, q }) if q.p == 3 => {
            Ok(vec![(Gen::TAlpha1 { m: 5 }, 3)])
        }
        (8, SpaceTerm::Moore { m: 6, q }) if q.p == 3 => {
            Ok(vec![(Gen::IAlpha1 { m: 5 }, 3)])
        }
        (8, SpaceTerm::Moore { m: 5 | 6, q }) if q.p >= 5 => Ok(vec![]),
        _ => Err(Error::UnsupportedPair {
            what: format!("no attaching-coefficient block for maps S^{source_dim} -> {target}"),
        }),
    }
}

/// One coefficient of an attaching vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffState {
    pub gen: Gen,
    pub modulus: u8,
    pub value: u8,
}

/// One wedge summand of the target with its coefficient block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotState {
    pub target: SpaceTerm,
    pub coeffs: Vec<CoeffState>,
}

/// An attaching map `S^{source_dim} -> target wedge`, written in the
/// suspended-generator basis of each slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachingVector {
    source_dim: u32,
    slots: Vec<SlotState>,
}

/// One oriented rewrite step: `pivot` and `victim` index `(slot, coeff)`.
/// `UnitNormalize` has `pivot == victim` and rewrites the value 2 to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub rule: RuleId,
    pub pivot: (usize, usize),
    pub victim: (usize, usize),
}

impl AttachingVector {
    /// An all-zero vector over the given target wedge, slots in the given
    /// order.
    pub fn over(source_dim: u32, targets: Vec<SpaceTerm>) -> Result<Self> {
        if source_dim != 6 && source_dim != 8 {
            return Err(Error::RangeExceeded {
                what: format!("attaching vectors are supported out of S^6 and S^8, not S^{source_dim}"),
            });
        }
        let slots = targets
            .into_iter()
            .map(|target| {
                let coeffs = slot_basis(source_dim, &target)?
                    .into_iter()
                    .map(|(gen, modulus)| CoeffState {
                        gen,
                        modulus,
                        value: 0,
                    })
                    .collect();
                Ok(SlotState { target, coeffs })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AttachingVector { source_dim, slots })
    }

    #[must_use]
    pub fn source_dim(&self) -> u32 {
        self.source_dim
    }

    #[must_use]
    pub fn slots(&self) -> &[SlotState] {
        &self.slots
    }

    pub fn set_value(&mut self, slot: usize, coeff: usize, value: u8) -> Result<()> {
        let c = self
            .slots
            .get_mut(slot)
            .and_then(|s| s.coeffs.get_mut(coeff))
            .ok_or_else(|| Error::ShapeMismatch {
                what: format!("no coefficient at slot {slot}, position {coeff}"),
            })?;
        if value >= c.modulus {
            return Err(Error::ShapeMismatch {
                what: format!(
                    "coefficient value {value} out of range for modulus {}",
                    c.modulus
                ),
            });
        }
        c.value = value;
        Ok(())
    }

    fn coeff(&self, pos: (usize, usize)) -> &CoeffState {
        &self.slots[pos.0].coeffs[pos.1]
    }

    /// Torsion exponent of a slot's target, if it has one.
    fn slot_exp(&self, slot: usize) -> Option<u32> {
        match self.slots[slot].target {
            SpaceTerm::Moore { q, .. } => Some(q.r),
            SpaceTerm::ChangR { r, .. } => Some(r),
            _ => None,
        }
    }

    /// All coefficient positions, row-major.
    fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (si, slot) in self.slots.iter().enumerate() {
            for ci in 0..slot.coeffs.len() {
                out.push((si, ci));
            }
        }
        out
    }

    fn rule_matches(
        &self,
        spec: &RuleSpec,
        pivot: (usize, usize),
        victim: (usize, usize),
        require_victim_nonzero: bool,
    ) -> bool {
        if pivot == victim {
            return false;
        }
        let p = self.coeff(pivot);
        let v = self.coeff(victim);
        if kind_of(&p.gen) != Some(spec.pivot) || kind_of(&v.gen) != Some(spec.victim) {
            return false;
        }
        if p.value == 0 || (require_victim_nonzero && v.value == 0) {
            return false;
        }
        let same_kind = spec.pivot == spec.victim;
        let ep = self.slot_exp(pivot.0);
        let ev = self.slot_exp(victim.0);
        match spec.exp {
            ExpRel::Any => {
                // Same-kind collapses keep the leftmost copy.
                !same_kind || pivot.0 < victim.0
            }
            ExpRel::PivotLeq => match (ep, ev) {
                (Some(a), Some(b)) => {
                    if same_kind {
                        a < b || (a == b && pivot.0 < victim.0)
                    } else {
                        a <= b
                    }
                }
                _ => false,
            },
            ExpRel::PivotGeq => match (ep, ev) {
                (Some(a), Some(b)) => {
                    if same_kind {
                        a > b || (a == b && pivot.0 < victim.0)
                    } else {
                        a >= b
                    }
                }
                _ => false,
            },
            ExpRel::PivotLt => matches!((ep, ev), (Some(a), Some(b)) if a < b),
        }
    }

    /// Applicable moves under the given rule table, in priority order:
    /// rules first, then pivot position, then victim position, with unit
    /// normalizations last.
    #[must_use]
    pub fn moves_under(&self, rules: &[RuleSpec]) -> Vec<Move> {
        let positions = self.positions();
        let mut out = Vec::new();
        for spec in rules {
            for &pivot in &positions {
                for &victim in &positions {
                    if self.rule_matches(spec, pivot, victim, true) {
                        out.push(Move {
                            rule: spec.id,
                            pivot,
                            victim,
                        });
                    }
                }
            }
        }
        for &pos in &positions {
            let c = self.coeff(pos);
            if c.modulus == 3 && c.value == 2 {
                out.push(Move {
                    rule: RuleId::UnitNormalize,
                    pivot: pos,
                    victim: pos,
                });
            }
        }
        out
    }

    /// Apply one move.
    #[must_use]
    pub fn apply(&self, mv: &Move) -> AttachingVector {
        let mut next = self.clone();
        let c = &mut next.slots[mv.victim.0].coeffs[mv.victim.1];
        c.value = if mv.rule == RuleId::UnitNormalize { 1 } else { 0 };
        next
    }

    /// Normalize under the canonical rules, returning the normal form and
    /// the trace of moves taken.
    pub fn normalize(&self) -> Result<(AttachingVector, Vec<Move>)> {
        self.normalize_with(canonical_rules(self.source_dim))
    }

    /// Normalize under an arbitrary rule table.  Each canonical move
    /// strictly decreases `(nonzero count, value sum)`, so the step bound
    /// only trips for defective tables.
    pub fn normalize_with(&self, rules: &[RuleSpec]) -> Result<(AttachingVector, Vec<Move>)> {
        let bound = 3 * self.positions().len() as u64 + 4;
        let mut current = self.clone();
        let mut trace = Vec::new();
        for _ in 0..bound {
            let moves = current.moves_under(rules);
            let Some(mv) = moves.first() else {
                return Ok((current, trace));
            };
            current = current.apply(mv);
            trace.push(*mv);
        }
        if current.moves_under(rules).is_empty() {
            Ok((current, trace))
        } else {
            Err(Error::NonTermination { steps: bound })
        }
    }

    /// Normal means: at most one nonzero coefficient, and of unit value.
    #[must_use]
    pub fn is_normal(&self) -> bool {
        let nonzero: Vec<_> = self
            .positions()
            .into_iter()
            .filter(|&p| self.coeff(p).value != 0)
            .collect();
        nonzero.len() <= 1 && nonzero.iter().all(|&p| self.coeff(p).value == 1)
    }

    /// The unique nonzero position of a normal form, if any.
    #[must_use]
    pub fn survivor(&self) -> Option<(usize, usize)> {
        self.positions()
            .into_iter()
            .find(|&p| self.coeff(p).value != 0)
    }

    /// The cofiber of a normalized vector, as a wedge: the slot the
    /// survivor lives on becomes the cone on that class, every other slot
    /// passes through, and the zero vector contributes a top sphere.
    pub fn cofiber(&self) -> Result<Wedge> {
        if !self.is_normal() {
            return Err(Error::NotNormalized {
                what: format!("cofiber of {self} requires a normal form"),
            });
        }
        let mut terms: Vec<SpaceTerm> = Vec::new();
        let survivor = self.survivor();
        for (si, slot) in self.slots.iter().enumerate() {
            match survivor {
                Some((s, ci)) if s == si => {
                    terms.push(cone_on(&slot.target, &slot.coeffs[ci].gen)?);
                }
                _ => terms.push(slot.target.clone()),
            }
        }
        if survivor.is_none() {
            terms.push(SpaceTerm::sphere(self.source_dim + 1)?);
        }
        Ok(Wedge::from_terms(terms))
    }

    /// Canonical byte encoding of the coefficient values (targets fixed).
    #[must_use]
    pub fn encode(&self) -> Vec<u8> {
        self.positions()
            .into_iter()
            .map(|p| self.coeff(p).value)
            .collect()
    }

    /// States one move away: forward moves plus their exact inverses
    /// (restoring a zeroed victim to each unit value, or de-normalizing a
    /// unit back to 2 where the modulus allows).
    #[must_use]
    pub fn neighbors(&self) -> Vec<AttachingVector> {
        let rules = canonical_rules(self.source_dim);
        let mut out: Vec<AttachingVector> = self
            .moves_under(rules)
            .iter()
            .map(|mv| self.apply(mv))
            .collect();
        let positions = self.positions();
        for spec in rules {
            for &pivot in &positions {
                for &victim in &positions {
                    if self.coeff(victim).value == 0
                        && self.rule_matches(spec, pivot, victim, false)
                    {
                        let units = if self.coeff(victim).modulus == 3 {
                            vec![1, 2]
                        } else {
                            vec![1]
                        };
                        for u in units {
                            let mut next = self.clone();
                            next.slots[victim.0].coeffs[victim.1].value = u;
                            out.push(next);
                        }
                    }
                }
            }
        }
        for &pos in &positions {
            let c = self.coeff(pos);
            if c.modulus == 3 && c.value == 1 {
                let mut next = self.clone();
                next.slots[pos.0].coeffs[pos.1].value = 2;
                out.push(next);
            }
        }
        out
    }
}

impl fmt::Display for AttachingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (si, slot) in self.slots.iter().enumerate() {
            for c in &slot.coeffs {
                if c.value != 0 {
                    if c.value == 1 {
                        parts.push(format!("{}@{si}", c.gen));
                    } else {
                        parts.push(format!("{}*{}@{si}", c.value, c.gen));
                    }
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The cone a surviving class produces on its slot.
fn cone_on(target: &SpaceTerm, gen: &Gen) -> Result<SpaceTerm> {
    match (target, gen) {
        (SpaceTerm::Sphere { m: 5 }, Gen::Eta) => SpaceTerm::chang_eta(5),
        (SpaceTerm::Sphere { m: 3 }, Gen::Eta3) => Ok(SpaceTerm::cone_eta3()),
        (SpaceTerm::Moore { m: 5, q }, Gen::Teta { r }) if q.p == 2 && q.r == *r => {
            SpaceTerm::cone_tilde_eta(4, *r)
        }
        (SpaceTerm::Moore { m: 5, q }, Gen::IEta2) if q.p == 2 => {
            SpaceTerm::cone_2r_eta2(4, q.r)
        }
        (SpaceTerm::Moore { m: 4, q }, Gen::TetaEta { r }) if q.p == 2 && q.r == *r => {
            SpaceTerm::cone_tilde_eta_eta(4, *r)
        }
        (SpaceTerm::ChangR { n: 3, r }, Gen::IPTetaEta { r: t }) if r == t => {
            SpaceTerm::cone_chang(4, *r)
        }
        (SpaceTerm::Sphere { m: 5 }, Gen::Alpha1 { m: 5 }) => SpaceTerm::cone_alpha1(5),
        (SpaceTerm::Moore { m: 5, q }, Gen::TAlpha1 { m: 5 }) if q.p == 3 => {
            SpaceTerm::cone_tilde_alpha1(5, q.r)
        }
        (SpaceTerm::Moore { m: 6, q }, Gen::IAlpha1 { m: 5 }) if q.p == 3 => {
            SpaceTerm::cone_i_alpha1(5, q.r)
        }
        _ => Err(Error::NotNormalized {
            what: format!("no cone is defined for {gen} on {target}"),
        }),
    }
}

/// Breadth-first search of the move graph (canonical moves and their
/// inverses).  `Ok(false)` means the full orbit of `a` was explored within
/// the depth bound and `b` is not in it; hitting the bound with states
/// still unexplored is [`Error::DepthExceeded`], and overflowing
/// `node_cap` is [`Error::CapExceeded`].
pub fn orbit_equivalent(
    a: &AttachingVector,
    b: &AttachingVector,
    max_depth: u32,
    node_cap: usize,
) -> Result<bool> {
    if a.source_dim != b.source_dim
        || a.slots.len() != b.slots.len()
        || a.slots
            .iter()
            .zip(&b.slots)
            .any(|(x, y)| x.target != y.target)
    {
        return Err(Error::ShapeMismatch {
            what: "orbit comparison requires identical target wedges".into(),
        });
    }
    let goal = b.encode();
    if a.encode() == goal {
        return Ok(true);
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(a.encode());
    let mut frontier: VecDeque<(AttachingVector, u32)> = VecDeque::new();
    frontier.push_back((a.clone(), 0));
    while let Some((state, depth)) = frontier.pop_front() {
        if depth == max_depth {
            return Err(Error::DepthExceeded { depth: max_depth });
        }
        for next in state.neighbors() {
            let key = next.encode();
            if key == goal {
                return Ok(true);
            }
            if seen.insert(key) {
                if seen.len() > node_cap {
                    return Err(Error::CapExceeded {
                        requested: seen.len() as u64,
                        cap: node_cap as u64,
                    });
                }
                frontier.push_back((next, depth + 1));
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::PrimePower;

    fn pp(p: u64, r: u32) -> PrimePower {
        PrimePower::new(p, r).unwrap()
    }

    /// Standard test wedge: P^5(Z/2), P^5(Z/8), S^3, S^5, P^4(Z/4), C^5_2.
    fn targets() -> Vec<SpaceTerm> {
        vec![
            SpaceTerm::moore(pp(2, 1), 5).unwrap(),
            SpaceTerm::moore(pp(2, 3), 5).unwrap(),
            SpaceTerm::sphere(3).unwrap(),
            SpaceTerm::sphere(5).unwrap(),
            SpaceTerm::moore(pp(2, 2), 4).unwrap(),
            SpaceTerm::chang_r(3, 2).unwrap(),
        ]
    }

    fn vector(entries: &[(usize, usize, u8)]) -> AttachingVector {
        let mut v = AttachingVector::over(6, targets()).unwrap();
        for &(s, c, val) in entries {
            v.set_value(s, c, val).unwrap();
        }
        v
    }

    #[test]
    fn teta_absorbs_everything() {
        // teta on the Z/8 slot, plus every other kind of class.
        let v = vector(&[
            (1, 0, 1), // teta_3
            (0, 1, 1), // i*eta^2 on the Z/2 slot
            (2, 0, 1), // eta^3
            (3, 0, 1), // eta
            (4, 0, 1), // teta_2*eta
            (5, 0, 1), // iP*teta_2*eta
        ]);
        let (nf, trace) = v.normalize().unwrap();
        assert!(nf.is_normal());
        assert_eq!(nf.survivor(), Some((1, 0)));
        assert_eq!(trace.len(), 5);
        assert_eq!(nf.to_string(), "teta_3@1");
    }

    #[test]
    fn teta_pair_keeps_smaller_exponent() {
        let v = vector(&[(0, 0, 1), (1, 0, 1)]);
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((0, 0)), "teta_1 beats teta_3");
    }

    #[test]
    fn ieta2_pair_keeps_larger_exponent() {
        let v = vector(&[(0, 1, 1), (1, 1, 1)]);
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((1, 1)), "i*eta^2 on Z/8 beats Z/2");
    }

    #[test]
    fn teta_absorbs_own_ieta2_coordinate() {
        let v = vector(&[(1, 0, 1), (1, 1, 1)]);
        let (nf, trace) = v.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((1, 0)));
        assert_eq!(trace[0].rule, RuleId::TetaAbsorbsIEta2);
    }

    #[test]
    fn eta_beats_the_composites_but_loses_to_teta() {
        let v = vector(&[(3, 0, 1), (4, 0, 1), (5, 0, 1), (2, 0, 1)]);
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.to_string(), "eta@3");
        let w = vector(&[(3, 0, 1), (0, 0, 1)]);
        let (nf, _) = w.normalize().unwrap();
        assert_eq!(nf.to_string(), "teta_1@0");
    }

    #[test]
    fn composite_cross_rules_follow_exponents() {
        // teta_2*eta (slot 4, r = 2) vs iP*teta_2*eta (slot 5, r = 2):
        // equal exponents keep the plain Moore composite.
        let v = vector(&[(4, 0, 1), (5, 0, 1)]);
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((4, 0)));
        // A smaller Chang exponent wins over a larger Moore one.
        let mut t = targets();
        t[4] = SpaceTerm::moore(pp(2, 3), 4).unwrap(); // r = 3
        let mut w = AttachingVector::over(6, t).unwrap();
        w.set_value(4, 0, 1).unwrap();
        w.set_value(5, 0, 1).unwrap(); // Chang r = 2
        let (nf, _) = w.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((5, 0)));
    }

    #[test]
    fn ieta2_and_composites_beat_eta3() {
        let v = vector(&[(0, 1, 1), (2, 0, 1)]);
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((0, 1)));
        let w = vector(&[(4, 0, 1), (2, 0, 1)]);
        let (nf, _) = w.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((4, 0)));
    }

    #[test]
    fn normal_form_is_order_independent_on_a_mixed_vector() {
        // Explore every move order by brute force and confirm a single
        // fixpoint (the full sweep lives in the oracle).
        let v = vector(&[(0, 1, 1), (3, 0, 1), (4, 0, 1), (2, 0, 1)]);
        let mut fixpoints = std::collections::HashSet::new();
        let mut stack = vec![v];
        let mut seen = std::collections::HashSet::new();
        while let Some(s) = stack.pop() {
            if !seen.insert(s.encode()) {
                continue;
            }
            let moves = s.moves_under(canonical_rules(6));
            if moves.is_empty() {
                fixpoints.insert(s.encode());
            }
            for mv in moves {
                stack.push(s.apply(&mv));
            }
        }
        assert_eq!(fixpoints.len(), 1);
        let v2 = vector(&[(0, 1, 1), (3, 0, 1), (4, 0, 1), (2, 0, 1)]);
        let (nf, _) = v2.normalize().unwrap();
        assert!(fixpoints.contains(&nf.encode()));
        assert_eq!(nf.to_string(), "eta@3");
    }

    #[test]
    fn cofiber_of_zero_adds_a_top_sphere() {
        let v = vector(&[]);
        let w = v.cofiber().unwrap();
        let mut expect = targets();
        expect.push(SpaceTerm::sphere(7).unwrap());
        assert_eq!(w, Wedge::from_terms(expect));
    }

    #[test]
    fn cofiber_replaces_the_surviving_slot() {
        let v = vector(&[(1, 0, 1)]);
        let w = v.cofiber().unwrap();
        let mut expect = targets();
        expect[1] = SpaceTerm::cone_tilde_eta(4, 3).unwrap();
        assert_eq!(w, Wedge::from_terms(expect));

        let v = vector(&[(5, 0, 1)]);
        let w = v.cofiber().unwrap();
        let mut expect = targets();
        expect[5] = SpaceTerm::cone_chang(4, 2).unwrap();
        assert_eq!(w, Wedge::from_terms(expect));

        let unnormal = vector(&[(0, 0, 1), (2, 0, 1)]);
        assert!(matches!(
            unnormal.cofiber(),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn mod3_vectors_normalize_units_and_hierarchy() {
        let t = vec![
            SpaceTerm::sphere(5).unwrap(),
            SpaceTerm::moore(pp(3, 1), 5).unwrap(),
            SpaceTerm::moore(pp(3, 2), 5).unwrap(),
            SpaceTerm::moore(pp(3, 1), 6).unwrap(),
            SpaceTerm::moore(pp(3, 2), 6).unwrap(),
        ];
        let mut v = AttachingVector::over(8, t.clone()).unwrap();
        v.set_value(0, 0, 2).unwrap();
        v.set_value(2, 0, 1).unwrap();
        v.set_value(3, 0, 2).unwrap();
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.to_string(), "talpha1@2");
        // talpha keeps the smaller exponent, i*alpha the larger.
        let mut v = AttachingVector::over(8, t.clone()).unwrap();
        v.set_value(1, 0, 2).unwrap();
        v.set_value(2, 0, 2).unwrap();
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((1, 0)));
        let mut v = AttachingVector::over(8, t.clone()).unwrap();
        v.set_value(3, 0, 1).unwrap();
        v.set_value(4, 0, 1).unwrap();
        let (nf, _) = v.normalize().unwrap();
        assert_eq!(nf.survivor(), Some((4, 0)));
        // A bare coefficient 2 normalizes to the unit representative.
        let mut v = AttachingVector::over(8, t).unwrap();
        v.set_value(4, 0, 2).unwrap();
        let (nf, trace) = v.normalize().unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].rule, RuleId::UnitNormalize);
        assert_eq!(nf.to_string(), "i*alpha1@4");
        assert_eq!(nf.cofiber().unwrap().terms()[4],
            SpaceTerm::cone_i_alpha1(5, 2).unwrap());
    }

    #[test]
    fn orbit_distinguishes_ieta2_exponents() {
        // i*eta^2 on the Z/2 slot vs on the Z/8 slot: no move connects
        // them (the collapse only runs from larger to smaller exponent,
        // and its inverse needs the larger-exponent pivot present).
        let a = vector(&[(0, 1, 1)]);
        let b = vector(&[(1, 1, 1)]);
        assert_eq!(orbit_equivalent(&a, &b, 6, 100_000), Ok(false));
    }

    #[test]
    fn orbit_connects_vectors_with_the_same_normal_form() {
        let a = vector(&[(0, 1, 1), (2, 0, 1)]);
        let b = vector(&[(0, 1, 1), (3, 0, 0)]);
        // a normalizes to i*eta^2@0 by absorbing eta^3; b is already that.
        assert_eq!(orbit_equivalent(&a, &b, 4, 100_000), Ok(true));
        // And the inverse direction works too.
        assert_eq!(orbit_equivalent(&b, &a, 4, 100_000), Ok(true));
    }

    #[test]
    fn orbit_depth_bound_is_a_distinct_outcome() {
        let a = vector(&[(1, 0, 1), (0, 1, 1), (2, 0, 1), (3, 0, 1)]);
        let b = vector(&[(0, 0, 1)]);
        assert_eq!(
            orbit_equivalent(&a, &b, 0, 100_000),
            Err(Error::DepthExceeded { depth: 0 })
        );
        let err = orbit_equivalent(&a, &b, 2, 3);
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn orbit_requires_matching_shapes() {
        let a = vector(&[]);
        let mut t = targets();
        t.pop();
        let b = AttachingVector::over(6, t).unwrap();
        assert!(matches!(
            orbit_equivalent(&a, &b, 2, 1000),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn slot_bases_are_spanned_by_suspended_classes() {
        use crate::pi_tables::{pi, suspended_generators, FormalSum};
        let mut cases: Vec<(u32, SpaceTerm)> =
            targets().into_iter().map(|t| (6, t)).collect();
        cases.push((8, SpaceTerm::sphere(5).unwrap()));
        cases.push((8, SpaceTerm::moore(pp(3, 2), 5).unwrap()));
        cases.push((8, SpaceTerm::moore(pp(3, 1), 6).unwrap()));
        for (m, t) in cases {
            let basis = slot_basis(m, &t).unwrap();
            let group = pi(m, &t).unwrap();
            let allowed: Vec<Gen> = suspended_generators(m, &t)
                .unwrap()
                .iter()
                .flat_map(|g| group.reduce(g).unwrap().iter().map(|(gen, _)| gen).collect::<Vec<_>>())
                .collect();
            for (bgen, _) in basis {
                let reduced = group.reduce(&FormalSum::gen(bgen)).unwrap();
                assert!(!reduced.is_zero(), "{bgen} reduces to 0 in pi_{m}({t})");
                for (gen, _) in reduced.iter() {
                    assert!(
                        allowed.contains(&gen),
                        "{bgen} involves {gen}, which no suspended class of {t} hits"
                    );
                }
            }
        }
    }
}
