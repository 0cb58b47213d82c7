//! End-to-end decomposition pipeline.
//!
//! Input is a JSON document describing the homology of an `(n-1)`-connected
//! `(2n+2)`-dimensional Poincare duality complex together with either a
//! cohomology-operation profile (`mode = "ops"`) or a raw top-cell
//! attaching vector (`mode = "attach"`).  Output is the wedge decomposition
//! of the suspension, possibly as a short list of candidates when the
//! supplied operations do not pin the answer down.
//!
//! The pipeline: reduce the degree-`n` Steenrod data to the pair
//! `(c1, c2)` and a set of chosen torsion columns, build the homology
//! section as a wedge of spheres, Moore spaces and Chang complexes, then
//! modify it according to the decision tree (operations mode) or by
//! normalizing the attaching vector and taking its cofiber (attaching
//! mode).
//!
//! Torsion bookkeeping: the input torsion list keeps its order, and every
//! index in this module (matrix columns, `chosen`, coefficient blocks)
//! refers to the positions of the relevant primary summands within that
//! input order.

use serde::{Deserialize, Serialize};

use crate::catalog::{SpaceTerm, Wedge};
use crate::normalizer::AttachingVector;
use crate::pi_tables::Gen;
use crate::torsion::PrimePower;
use crate::{Error, Result};

/// Upper bound on the free ranks and the torsion summand count, to keep
/// wedge sizes sane.
const MAX_RANK: usize = 64;

// ---------------------------------------------------------------------------
// Input document (the JSON surface)
// ---------------------------------------------------------------------------

/// The top-level JSON input.  Unknown keys are rejected.  Serialization is
/// the exact inverse, so enumerated documents can be fed back in.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema: u32,
    pub n: u32,
    pub l: u32,
    pub d: u32,
    #[serde(default)]
    pub torsion: Vec<(u64, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sq2: Option<Sq2Field>,
    pub mode: ModeField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<CoeffsField>,
    #[serde(default)]
    pub localize: bool,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModeField {
    Ops,
    Attach,
}

/// Degree-`n` Steenrod data: either the raw mod-2 matrices `(A, B)` of the
/// square on the free and torsion generators, or the already-reduced
/// triple.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Sq2Field {
    Matrices {
        #[serde(rename = "A")]
        a: Vec<Vec<u8>>,
        #[serde(rename = "B")]
        b: Vec<Vec<u8>>,
    },
    Reduced {
        c1: u32,
        c2: u32,
        chosen: Vec<usize>,
    },
}

/// Operation profile as it appears in JSON.  Which fields must be present
/// depends on `n`; see [`OperationProfile`].
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileField {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w2_nonzero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<CaseR>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tertiary: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sq2_h5: Option<CaseR>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<CaseR>,
}

/// A named case with an optional torsion exponent.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CaseR {
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
}

/// Raw attaching coefficients.  For n = 2 the blocks are `x`, `eps` (one
/// mod-2 entry per 2-primary torsion summand), `y` (per leftover degree-3
/// sphere), `z` (per leftover degree-5 sphere), `s` (per unchosen
/// 2-primary summand) and `t` (per chosen one).  For n = 3 the blocks are
/// `a` (mod-3, per degree-5 sphere), `b` and `c` (per 3-primary summand).
/// Absent blocks mean all-zero and are only accepted when their required
/// length is zero.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffsField {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<u8>>,
}

// ---------------------------------------------------------------------------
// Typed profile
// ---------------------------------------------------------------------------

/// Secondary-operation case on the degree-n class (n = 2, spin).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaCase {
    Trivial,
    NoBocksteinLink { r: u32 },
    BocksteinImage { r: u32 },
}

/// `Sq^2` on degree-5 cohomology (n = 2, non-spin).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sq2H5Case {
    NoBocksteinImage,
    BocksteinImage { r: u32 },
}

/// Mod-3 primary operation case (n = 3 and, restricted, n = 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P1Case {
    Trivial,
    Free,
    BocksteinImage { r: u32 },
    BocksteinSource { r: u32 },
}

/// Validated, typed operation profile.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OperationProfile {
    pub w2_nonzero: Option<bool>,
    pub theta: Option<ThetaCase>,
    pub tertiary: Option<bool>,
    pub sq2_h5: Option<Sq2H5Case>,
    pub p1: Option<P1Case>,
}

fn case_r(c: &CaseR, field: &str) -> Result<u32> {
    c.r.ok_or_else(|| Error::ShapeMismatch {
        what: format!("{field} case \"{}\" requires an exponent r", c.case),
    })
}

fn case_no_r(c: &CaseR, field: &str) -> Result<()> {
    if c.r.is_some() {
        return Err(Error::ShapeMismatch {
            what: format!("{field} case \"{}\" takes no exponent", c.case),
        });
    }
    Ok(())
}

fn parse_theta(c: &CaseR) -> Result<ThetaCase> {
    match c.case.as_str() {
        "trivial" => {
            case_no_r(c, "theta")?;
            Ok(ThetaCase::Trivial)
        }
        "no_bockstein_link" => Ok(ThetaCase::NoBocksteinLink { r: case_r(c, "theta")? }),
        "bockstein_image" => Ok(ThetaCase::BocksteinImage { r: case_r(c, "theta")? }),
        other => Err(Error::ShapeMismatch {
            what: format!("unknown theta case \"{other}\""),
        }),
    }
}

fn parse_sq2_h5(c: &CaseR) -> Result<Sq2H5Case> {
    match c.case.as_str() {
        "no_bockstein_image" => {
            case_no_r(c, "sq2_h5")?;
            Ok(Sq2H5Case::NoBocksteinImage)
        }
        "bockstein_image" => Ok(Sq2H5Case::BocksteinImage { r: case_r(c, "sq2_h5")? }),
        other => Err(Error::ShapeMismatch {
            what: format!("unknown sq2_h5 case \"{other}\""),
        }),
    }
}

fn parse_p1(c: &CaseR) -> Result<P1Case> {
    match c.case.as_str() {
        "trivial" => {
            case_no_r(c, "p1")?;
            Ok(P1Case::Trivial)
        }
        "free" => {
            case_no_r(c, "p1")?;
            Ok(P1Case::Free)
        }
        "bockstein_image" => Ok(P1Case::BocksteinImage { r: case_r(c, "p1")? }),
        "bockstein_source" => Ok(P1Case::BocksteinSource { r: case_r(c, "p1")? }),
        other => Err(Error::ShapeMismatch {
            what: format!("unknown p1 case \"{other}\""),
        }),
    }
}

impl OperationProfile {
    /// Parse and range-check the JSON profile (field-name level only; the
    /// per-`n` consistency rules live in [`validate`]).
    pub fn from_field(f: &ProfileField) -> Result<Self> {
        Ok(OperationProfile {
            w2_nonzero: f.w2_nonzero,
            theta: f.theta.as_ref().map(parse_theta).transpose()?,
            tertiary: f.tertiary,
            sq2_h5: f.sq2_h5.as_ref().map(parse_sq2_h5).transpose()?,
            p1: f.p1.as_ref().map(parse_p1).transpose()?,
        })
    }

    /// Render the profile back into its JSON field form; inverse to
    /// [`OperationProfile::from_field`] on parsed values.
    #[must_use]
    pub fn to_field(&self) -> ProfileField {
        let case = |name: &str| CaseR {
            case: name.to_owned(),
            r: None,
        };
        let case_r = |name: &str, r: u32| CaseR {
            case: name.to_owned(),
            r: Some(r),
        };
        ProfileField {
            w2_nonzero: self.w2_nonzero,
            theta: self.theta.map(|t| match t {
                ThetaCase::Trivial => case("trivial"),
                ThetaCase::NoBocksteinLink { r } => case_r("no_bockstein_link", r),
                ThetaCase::BocksteinImage { r } => case_r("bockstein_image", r),
            }),
            tertiary: self.tertiary,
            sq2_h5: self.sq2_h5.map(|s| match s {
                Sq2H5Case::NoBocksteinImage => case("no_bockstein_image"),
                Sq2H5Case::BocksteinImage { r } => case_r("bockstein_image", r),
            }),
            p1: self.p1.map(|p| match p {
                P1Case::Trivial => case("trivial"),
                P1Case::Free => case("free"),
                P1Case::BocksteinImage { r } => case_r("bockstein_image", r),
                P1Case::BocksteinSource { r } => case_r("bockstein_source", r),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Validated input
// ---------------------------------------------------------------------------

/// Top-cell data after validation.
#[derive(Clone, Debug)]
pub enum TopData {
    Ops(OperationProfile),
    Attach(CoeffsField),
}

/// A fully validated input: shapes checked, torsion factored, Steenrod
/// data reduced to `(c1, c2, chosen)`.
#[derive(Clone, Debug)]
pub struct ValidatedInput {
    pub n: u32,
    pub l: usize,
    pub d: usize,
    /// Torsion summands in input order.
    pub torsion: Vec<PrimePower>,
    pub c1: usize,
    pub c2: usize,
    /// Indices into the 2-primary sublist (input order), ascending.
    pub chosen: Vec<usize>,
    pub top: TopData,
    pub localize: bool,
}

impl ValidatedInput {
    /// The p-primary summands as `(input torsion index, exponent)` pairs,
    /// in input order.
    #[must_use]
    pub fn primary(&self, p: u64) -> Vec<(usize, u32)> {
        self.torsion
            .iter()
            .enumerate()
            .filter(|(_, q)| q.p == p)
            .map(|(i, q)| (i, q.r))
            .collect()
    }

    fn unchosen_two(&self) -> Vec<(usize, u32)> {
        self.primary(2)
            .into_iter()
            .enumerate()
            .filter(|(k, _)| !self.chosen.contains(k))
            .map(|(_, pair)| pair)
            .collect()
    }

    fn chosen_two(&self) -> Vec<u32> {
        let two = self.primary(2);
        self.chosen.iter().map(|&k| two[k].1).collect()
    }
}

/// Reduce the degree-n Steenrod matrices to `(c1, c2, chosen)`.
///
/// `a` is the `l x l` mod-2 matrix on the free generators, `b` the
/// `l x t2` matrix into the 2-primary torsion generators, and `exps[j]`
/// the exponent of the j-th 2-primary summand.  `c1` is the rank of `a`;
/// the `b` columns are then eliminated in order of decreasing exponent
/// (larger torsion absorbs smaller), and the pivot columns are returned by
/// their sublist index, ascending.  The returned index set depends on this
/// canonical elimination order and is reported for reproducibility only;
/// only its size and exponent multiset are decomposition invariants.
pub fn reduce_phi(
    a: &[Vec<u8>],
    b: &[Vec<u8>],
    exps: &[u32],
) -> Result<(usize, usize, Vec<usize>)> {
    let l = a.len();
    let t2 = exps.len();
    if a.iter().any(|row| row.len() != l) {
        return Err(Error::ShapeMismatch {
            what: format!("matrix A must be {l} x {l}"),
        });
    }
    if b.len() != l || b.iter().any(|row| row.len() != t2) {
        return Err(Error::ShapeMismatch {
            what: format!("matrix B must be {l} x {t2}"),
        });
    }
    if a.iter().chain(b).flatten().any(|&e| e > 1) {
        return Err(Error::ShapeMismatch {
            what: "matrix entries must be 0 or 1".into(),
        });
    }
    let mut order: Vec<usize> = (0..t2).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(exps[j]), j));
    let mut rows: Vec<Vec<u8>> = (0..l)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(order.iter().map(|&j| b[i][j]));
            row
        })
        .collect();
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..l + t2 {
        let Some(pr) = (rank..l).find(|&i| rows[i][col] == 1) else {
            continue;
        };
        rows.swap(rank, pr);
        for i in 0..l {
            if i != rank && rows[i][col] == 1 {
                let pivot_row = rows[rank].clone();
                for (e, pe) in rows[i].iter_mut().zip(&pivot_row) {
                    *e ^= pe;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let c1 = pivot_cols.iter().filter(|&&c| c < l).count();
    let mut chosen: Vec<usize> = pivot_cols
        .iter()
        .filter(|&&c| c >= l)
        .map(|&c| order[c - l])
        .collect();
    chosen.sort_unstable();
    let c2 = chosen.len();
    Ok((c1, c2, chosen))
}

/// Validate a parsed document: ranges, torsion primality, Steenrod shapes,
/// per-`n` profile consistency, and the mode/field pairing.
pub fn validate(doc: &InputDocument) -> Result<ValidatedInput> {
    if !(2..=5).contains(&doc.n) {
        return Err(Error::RangeExceeded {
            what: format!("n = {} is outside the classified range 2..=5", doc.n),
        });
    }
    let n = doc.n;
    let (l, d) = (doc.l as usize, doc.d as usize);
    if l > MAX_RANK || d > MAX_RANK || doc.torsion.len() > MAX_RANK {
        return Err(Error::RangeExceeded {
            what: format!("ranks and torsion summand counts are capped at {MAX_RANK}"),
        });
    }
    let torsion = doc
        .torsion
        .iter()
        .map(|&(p, r)| PrimePower::new(p, r))
        .collect::<Result<Vec<_>>>()?;
    if n >= 3 && !doc.localize {
        return Err(Error::UnsupportedPair {
            what: format!(
                "the n = {n} classification holds away from 2 only; set \"localize\": true"
            ),
        });
    }
    let two_exps: Vec<u32> = torsion.iter().filter(|q| q.p == 2).map(|q| q.r).collect();
    let t2 = two_exps.len();
    let (c1, c2, chosen) = match &doc.sq2 {
        Some(Sq2Field::Matrices { a, b }) => {
            if a.len() != l {
                return Err(Error::ShapeMismatch {
                    what: format!("matrix A must have l = {l} rows, got {}", a.len()),
                });
            }
            reduce_phi(a, b, &two_exps)?
        }
        Some(Sq2Field::Reduced { c1, c2, chosen }) => {
            let (c1, c2) = (*c1 as usize, *c2 as usize);
            let mut ch = chosen.clone();
            ch.sort_unstable();
            ch.dedup();
            if ch.len() != chosen.len() || ch.iter().any(|&j| j >= t2) {
                return Err(Error::ShapeMismatch {
                    what: format!(
                        "chosen columns must be distinct indices into the {t2} 2-primary summands"
                    ),
                });
            }
            if ch.len() != c2 {
                return Err(Error::ShapeMismatch {
                    what: format!("c2 = {c2} but {} chosen columns were given", ch.len()),
                });
            }
            (c1, c2, ch)
        }
        None => {
            if n == 2 {
                return Err(Error::ShapeMismatch {
                    what: "n = 2 requires the sq2 field (matrices A, B or a reduced triple)"
                        .into(),
                });
            }
            (0, 0, Vec::new())
        }
    };
    if c1 > l || c1 + c2 > l {
        return Err(Error::ShapeMismatch {
            what: format!("need c1 + c2 <= l, got c1 = {c1}, c2 = {c2}, l = {l}"),
        });
    }
    let top = match doc.mode {
        ModeField::Ops => {
            if doc.coeffs.is_some() {
                return Err(Error::ShapeMismatch {
                    what: "operations mode takes a profile, not coeffs".into(),
                });
            }
            let profile =
                OperationProfile::from_field(doc.profile.as_ref().unwrap_or(&ProfileField::default()))?;
            check_profile(n, &profile)?;
            TopData::Ops(profile)
        }
        ModeField::Attach => {
            if doc.profile.is_some() {
                return Err(Error::ShapeMismatch {
                    what: "attaching mode takes coeffs, not a profile".into(),
                });
            }
            if n > 3 {
                return Err(Error::UnsupportedPair {
                    what: format!("attaching mode is defined for n = 2 and n = 3, not n = {n}"),
                });
            }
            TopData::Attach(doc.coeffs.clone().unwrap_or_default())
        }
    };
    Ok(ValidatedInput {
        n,
        l,
        d,
        torsion,
        c1,
        c2,
        chosen,
        top,
        localize: doc.localize,
    })
}

/// Per-`n` profile consistency: exactly the fields the matching theorem
/// reads may be set.
fn check_profile(n: u32, p: &OperationProfile) -> Result<()> {
    let reject = |what: &str| -> Result<()> {
        Err(Error::InconsistentProfile { what: what.into() })
    };
    match n {
        2 => {
            let Some(w2) = p.w2_nonzero else {
                return Err(Error::ShapeMismatch {
                    what: "n = 2 requires the w2_nonzero bit".into(),
                });
            };
            if p.p1.is_some() {
                return reject("p1 is an odd-primary invariant for n = 3 and n = 4");
            }
            if w2 {
                if p.theta.is_some() {
                    return reject("theta applies only when w2 vanishes");
                }
                if p.sq2_h5.is_none() {
                    return Err(Error::ShapeMismatch {
                        what: "w2_nonzero = true requires the sq2_h5 case".into(),
                    });
                }
                if p.tertiary == Some(true) {
                    return reject(
                        "the tertiary operation only refines the trivial-theta spin case",
                    );
                }
            } else {
                if p.sq2_h5.is_some() {
                    return reject("sq2_h5 applies only when w2 is nonzero");
                }
                let Some(theta) = p.theta else {
                    return Err(Error::ShapeMismatch {
                        what: "w2_nonzero = false requires the theta case".into(),
                    });
                };
                if theta != ThetaCase::Trivial && p.tertiary == Some(true) {
                    return reject(
                        "the tertiary operation only refines the trivial-theta spin case",
                    );
                }
            }
        }
        3 | 4 => {
            if p.w2_nonzero.is_some() || p.theta.is_some() || p.tertiary.is_some()
                || p.sq2_h5.is_some()
            {
                return reject("w2_nonzero, theta, tertiary and sq2_h5 are n = 2 data");
            }
            let Some(p1) = p.p1 else {
                return Err(Error::ShapeMismatch {
                    what: format!("n = {n} requires the p1 case"),
                });
            };
            if n == 4 && matches!(p1, P1Case::Free | P1Case::BocksteinSource { .. }) {
                return reject("n = 4 distinguishes only the trivial and bockstein_image cases");
            }
        }
        5 => {
            if *p != OperationProfile::default() {
                return reject("the n = 5 splitting is unconditional; no operation data applies");
            }
        }
        _ => unreachable!("validated above"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Homology section
// ---------------------------------------------------------------------------

/// The homology section below the top cell, as a wedge.
///
/// For n >= 3 this is the unsuspended section (bottom class in degree n);
/// for n = 2 it is the suspended one (bottom class in degree 3), which is
/// also the section of the suspension.
pub fn homology_section(doc: &InputDocument) -> Result<Wedge> {
    let v = validate(doc)?;
    Ok(Wedge::from_terms(section_terms(&v)?))
}

/// Section terms with bottom degree `m = n (+1 for n = 2)`: spheres
/// `S^{m+1} x d`, `S^m x (l - c1)`, `S^{m+2} x (l - c1 - c2)`, full
/// torsion in degree m+1 via `P^{m+2}`, the odd and unchosen 2-primary
/// torsion in degree m via `P^{m+1}`, plus `c1` eta-Chang complexes and
/// one `C^{m+2}_r` per chosen column.
fn section_terms(v: &ValidatedInput) -> Result<Vec<SpaceTerm>> {
    let m = if v.n == 2 { 3 } else { v.n };
    let mut terms = Vec::new();
    for _ in 0..v.d {
        terms.push(SpaceTerm::sphere(m + 1)?);
    }
    for q in &v.torsion {
        terms.push(SpaceTerm::moore(*q, m + 2)?);
    }
    for _ in 0..v.l - v.c1 {
        terms.push(SpaceTerm::sphere(m)?);
    }
    for _ in 0..v.l - v.c1 - v.c2 {
        terms.push(SpaceTerm::sphere(m + 2)?);
    }
    for q in v.torsion.iter().filter(|q| q.p != 2) {
        terms.push(SpaceTerm::moore(*q, m + 1)?);
    }
    for (_, r) in v.unchosen_two() {
        terms.push(SpaceTerm::moore(PrimePower::new(2, r)?, m + 1)?);
    }
    for _ in 0..v.c1 {
        terms.push(SpaceTerm::chang_eta(m)?);
    }
    for r in v.chosen_two() {
        terms.push(SpaceTerm::chang_r(m, r)?);
    }
    Ok(terms)
}

// ---------------------------------------------------------------------------
// Decomposition results
// ---------------------------------------------------------------------------

/// One candidate wedge, optionally labeled with the side condition that
/// selects it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub wedge: Wedge,
    pub note: Option<String>,
}

/// The decomposition of the suspension: one or more candidates (more than
/// one only when the supplied operations leave a documented ambiguity),
/// plus the reduced Steenrod data for reporting.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub candidates: Vec<Candidate>,
    pub localized: bool,
    pub c1: usize,
    pub c2: usize,
    pub chosen: Vec<usize>,
}

/// Decompose a validated document.
pub fn decompose(doc: &InputDocument) -> Result<Decomposition> {
    let v = validate(doc)?;
    let candidates = match &v.top {
        TopData::Ops(profile) => match v.n {
            2 => decide_n2(&v, profile)?,
            3 | 4 => decide_odd(&v, profile)?,
            5 => vec![Candidate {
                wedge: Wedge::from_terms(localized_base(&v)?),
                note: None,
            }],
            _ => unreachable!(),
        },
        TopData::Attach(coeffs) => {
            let (vector, extras) = build_attach(&v, coeffs)?;
            let (nf, _) = vector.normalize()?;
            let mut terms = nf.cofiber()?.terms().to_vec();
            terms.extend(extras);
            vec![Candidate {
                wedge: Wedge::from_terms(terms),
                note: None,
            }]
        }
    };
    let res = Decomposition {
        candidates,
        localized: false,
        c1: v.c1,
        c2: v.c2,
        chosen: v.chosen.clone(),
    };
    // n >= 3 statements hold away from 2, so their results are always
    // reported localized; n = 2 localizes on request.
    if v.n >= 3 || v.localize {
        Ok(localize_result(&res))
    } else {
        Ok(res)
    }
}

/// Localize a result away from 2, termwise, collapsing candidates that
/// become identical.
#[must_use]
pub fn localize_result(res: &Decomposition) -> Decomposition {
    let mut candidates: Vec<Candidate> = Vec::new();
    for c in &res.candidates {
        let wedge = c.wedge.localize_away_from_2();
        if let Some(existing) = candidates.iter_mut().find(|e| e.wedge == wedge) {
            // The distinction did not survive localization.
            existing.note = None;
        } else {
            candidates.push(Candidate {
                wedge,
                note: c.note.clone(),
            });
        }
    }
    Decomposition {
        candidates,
        localized: true,
        c1: res.c1,
        c2: res.c2,
        chosen: res.chosen.clone(),
    }
}

fn remove_term(terms: &mut Vec<SpaceTerm>, t: &SpaceTerm, why: &str) -> Result<()> {
    match terms.iter().position(|x| x == t) {
        Some(i) => {
            terms.remove(i);
            Ok(())
        }
        None => Err(Error::InconsistentProfile {
            what: format!("{why}: the section has no {t} summand"),
        }),
    }
}

/// n = 2 decision tree.  The base is the suspended section; each branch
/// either appends the top sphere or fuses it onto one summand as a cone.
fn decide_n2(v: &ValidatedInput, p: &OperationProfile) -> Result<Vec<Candidate>> {
    let base = section_terms(v)?;
    let top = SpaceTerm::sphere(7)?;
    let two = v.primary(2);
    let spin = !p.w2_nonzero.unwrap_or(false);
    let mut out = Vec::new();
    if spin {
        match p.theta.expect("validated") {
            ThetaCase::Trivial => {
                let eta3_possible = v.l - v.c1 >= 1;
                let untwisted = |note: Option<String>| {
                    let mut t = base.clone();
                    t.push(top.clone());
                    Candidate {
                        wedge: Wedge::from_terms(t),
                        note,
                    }
                };
                let twisted = |note: Option<String>| -> Result<Candidate> {
                    let mut t = base.clone();
                    remove_term(&mut t, &SpaceTerm::sphere(3)?, "an eta^3 attachment needs a free degree-3 class")?;
                    t.push(SpaceTerm::cone_eta3());
                    Ok(Candidate {
                        wedge: Wedge::from_terms(t),
                        note,
                    })
                };
                match p.tertiary {
                    Some(false) => out.push(untwisted(None)),
                    Some(true) => {
                        if !eta3_possible {
                            return Err(Error::InconsistentProfile {
                                what: "a nontrivial tertiary operation needs l - c1 >= 1".into(),
                            });
                        }
                        out.push(twisted(None)?);
                    }
                    None => {
                        if eta3_possible {
                            out.push(untwisted(Some("epsilon = 0".into())));
                            out.push(twisted(Some("epsilon = 1 (eta^3 attachment)".into()))?);
                        } else {
                            // No free degree-3 class is left, so the twist
                            // cannot occur.
                            out.push(untwisted(None));
                        }
                    }
                }
            }
            ThetaCase::NoBocksteinLink { r } => {
                if !two.iter().any(|&(_, e)| e == r) {
                    return Err(Error::InconsistentProfile {
                        what: format!("theta names exponent {r}, but the torsion has no Z/2^{r} summand"),
                    });
                }
                let mut t = base;
                remove_term(&mut t, &SpaceTerm::moore(PrimePower::new(2, r)?, 5)?, "theta case no_bockstein_link")?;
                t.push(SpaceTerm::cone_2r_eta2(4, r)?);
                out.push(Candidate {
                    wedge: Wedge::from_terms(t),
                    note: None,
                });
            }
            ThetaCase::BocksteinImage { r } => {
                let in_unchosen = v.unchosen_two().iter().any(|&(_, e)| e == r);
                let in_chosen = v.chosen_two().contains(&r);
                if !in_unchosen && !in_chosen {
                    return Err(Error::InconsistentProfile {
                        what: format!("theta names exponent {r}, but the torsion has no Z/2^{r} summand"),
                    });
                }
                let both = in_unchosen && in_chosen;
                if in_unchosen {
                    let mut t = base.clone();
                    remove_term(&mut t, &SpaceTerm::moore(PrimePower::new(2, r)?, 4)?, "theta case bockstein_image")?;
                    t.push(SpaceTerm::cone_tilde_eta_eta(4, r)?);
                    out.push(Candidate {
                        wedge: Wedge::from_terms(t),
                        note: both.then(|| format!("surviving class teta_{r}*eta")),
                    });
                }
                if in_chosen {
                    let mut t = base;
                    remove_term(&mut t, &SpaceTerm::chang_r(3, r)?, "theta case bockstein_image")?;
                    t.push(SpaceTerm::cone_chang(4, r)?);
                    out.push(Candidate {
                        wedge: Wedge::from_terms(t),
                        note: both.then(|| format!("surviving class iP*teta_{r}*eta")),
                    });
                }
            }
        }
    } else {
        match p.sq2_h5.expect("validated") {
            Sq2H5Case::NoBocksteinImage => {
                if v.l - v.c1 - v.c2 == 0 {
                    return Err(Error::InconsistentProfile {
                        what: "sq2 on a free degree-5 class needs l - c1 - c2 >= 1".into(),
                    });
                }
                let mut t = base;
                remove_term(&mut t, &SpaceTerm::sphere(5)?, "sq2_h5 case no_bockstein_image")?;
                t.push(SpaceTerm::chang_eta(5)?);
                out.push(Candidate {
                    wedge: Wedge::from_terms(t),
                    note: None,
                });
            }
            Sq2H5Case::BocksteinImage { r } => {
                if !two.iter().any(|&(_, e)| e == r) {
                    return Err(Error::InconsistentProfile {
                        what: format!("sq2_h5 names exponent {r}, but the torsion has no Z/2^{r} summand"),
                    });
                }
                let mut t = base;
                remove_term(&mut t, &SpaceTerm::moore(PrimePower::new(2, r)?, 5)?, "sq2_h5 case bockstein_image")?;
                t.push(SpaceTerm::cone_tilde_eta(4, r)?);
                out.push(Candidate {
                    wedge: Wedge::from_terms(t),
                    note: None,
                });
            }
        }
    }
    Ok(out)
}

/// The already-localized trivial wedge for n >= 3:
/// `l x (S^{n+1} v S^{n+3})`, `d x S^{n+2}`, odd torsion in degrees n+1
/// and n+2, and the top sphere.
fn localized_base(v: &ValidatedInput) -> Result<Vec<SpaceTerm>> {
    let n = v.n;
    let mut terms = Vec::new();
    for _ in 0..v.l {
        terms.push(SpaceTerm::sphere(n + 1)?);
        terms.push(SpaceTerm::sphere(n + 3)?);
    }
    for _ in 0..v.d {
        terms.push(SpaceTerm::sphere(n + 2)?);
    }
    for q in v.torsion.iter().filter(|q| q.p != 2) {
        terms.push(SpaceTerm::moore(*q, n + 2)?);
        terms.push(SpaceTerm::moore(*q, n + 3)?);
    }
    terms.push(SpaceTerm::sphere(2 * n + 3)?);
    Ok(terms)
}

/// n = 3 and n = 4 decision, away from 2.
fn decide_odd(v: &ValidatedInput, p: &OperationProfile) -> Result<Vec<Candidate>> {
    let mut terms = localized_base(v)?;
    let n = v.n;
    let top = SpaceTerm::sphere(2 * n + 3)?;
    let three = v.primary(3);
    let check_r = |r: u32, field: &str| -> Result<()> {
        if three.iter().any(|&(_, e)| e == r) {
            Ok(())
        } else {
            Err(Error::InconsistentProfile {
                what: format!("{field} names exponent {r}, but the torsion has no Z/3^{r} summand"),
            })
        }
    };
    match p.p1.expect("validated") {
        P1Case::Trivial => {}
        P1Case::Free => {
            if v.d == 0 {
                return Err(Error::InconsistentProfile {
                    what: "p1 on a free degree-5 class needs d >= 1".into(),
                });
            }
            remove_term(&mut terms, &SpaceTerm::sphere(n + 2)?, "p1 case free")?;
            remove_term(&mut terms, &top, "p1 case free")?;
            terms.push(SpaceTerm::cone_alpha1(n + 2)?);
        }
        P1Case::BocksteinImage { r } => {
            // The cone P^{2n-1}(3^r) u_{talpha1} e^{2n+3} carries its
            // torsion in degree 2n-2, so it replaces the degree-(2n-1)
            // Moore summand: P^{n+2} for n = 3, P^{n+3} for n = 4.
            check_r(r, "p1")?;
            let q = PrimePower::new(3, r)?;
            remove_term(&mut terms, &SpaceTerm::moore(q, 2 * n - 1)?, "p1 case bockstein_image")?;
            remove_term(&mut terms, &top, "p1 case bockstein_image")?;
            terms.push(SpaceTerm::cone_tilde_alpha1(2 * n - 1, r)?);
        }
        P1Case::BocksteinSource { r } => {
            check_r(r, "p1")?;
            let q = PrimePower::new(3, r)?;
            remove_term(&mut terms, &SpaceTerm::moore(q, 2 * n)?, "p1 case bockstein_source")?;
            remove_term(&mut terms, &top, "p1 case bockstein_source")?;
            terms.push(SpaceTerm::cone_i_alpha1(2 * n - 1, r)?);
        }
    }
    Ok(vec![Candidate {
        wedge: Wedge::from_terms(terms),
        note: None,
    }])
}

// ---------------------------------------------------------------------------
// Attaching mode
// ---------------------------------------------------------------------------

fn block(src: &Option<Vec<u8>>, name: &str, want: usize) -> Result<Vec<u8>> {
    let vals = src.clone().unwrap_or_default();
    if vals.len() != want {
        return Err(Error::ShapeMismatch {
            what: format!("coefficient block {name} must have length {want}, got {}", vals.len()),
        });
    }
    Ok(vals)
}

fn forbid(blockv: &Option<Vec<u8>>, name: &str, n: u32) -> Result<()> {
    if blockv.is_some() {
        return Err(Error::ShapeMismatch {
            what: format!("coefficient block {name} does not apply to n = {n}"),
        });
    }
    Ok(())
}

/// Build the attaching vector over the coefficient-bearing section
/// summands, plus the pass-through terms the top cell cannot hit.
pub fn attach_vector(doc: &InputDocument) -> Result<(AttachingVector, Vec<SpaceTerm>)> {
    let v = validate(doc)?;
    match &v.top {
        TopData::Attach(coeffs) => build_attach(&v, coeffs),
        TopData::Ops(_) => Err(Error::ShapeMismatch {
            what: "attaching-vector construction needs mode = \"attach\"".into(),
        }),
    }
}

fn build_attach(v: &ValidatedInput, coeffs: &CoeffsField) -> Result<(AttachingVector, Vec<SpaceTerm>)> {
    match v.n {
        2 => build_attach_n2(v, coeffs),
        3 => build_attach_n3(v, coeffs),
        _ => Err(Error::UnsupportedPair {
            what: format!("attaching mode is defined for n = 2 and n = 3, not n = {}", v.n),
        }),
    }
}

/// n = 2 slots, in order: one `P^5(2^r)` per 2-primary summand (blocks x,
/// eps), `S^3 x (l - c1)` (block y), `S^5 x (l - c1 - c2)` (block z), one
/// `P^4(2^r)` per unchosen summand (block s), one Chang complex per chosen
/// one (block t).
fn build_attach_n2(v: &ValidatedInput, coeffs: &CoeffsField) -> Result<(AttachingVector, Vec<SpaceTerm>)> {
    for (b, name) in [(&coeffs.a, "a"), (&coeffs.b, "b"), (&coeffs.c, "c")] {
        forbid(b, name, 2)?;
    }
    let two = v.primary(2);
    let t2 = two.len();
    let x = block(&coeffs.x, "x", t2)?;
    let eps = block(&coeffs.eps, "eps", t2)?;
    let y = block(&coeffs.y, "y", v.l - v.c1)?;
    let z = block(&coeffs.z, "z", v.l - v.c1 - v.c2)?;
    let s = block(&coeffs.s, "s", t2 - v.c2)?;
    let t = block(&coeffs.t, "t", v.c2)?;

    let mut targets = Vec::new();
    for &(ti, _) in &two {
        targets.push(SpaceTerm::moore(v.torsion[ti], 5)?);
    }
    for _ in 0..v.l - v.c1 {
        targets.push(SpaceTerm::sphere(3)?);
    }
    for _ in 0..v.l - v.c1 - v.c2 {
        targets.push(SpaceTerm::sphere(5)?);
    }
    for (_, r) in v.unchosen_two() {
        targets.push(SpaceTerm::moore(PrimePower::new(2, r)?, 4)?);
    }
    for r in v.chosen_two() {
        targets.push(SpaceTerm::chang_r(3, r)?);
    }
    let mut vector = AttachingVector::over(6, targets)?;
    let mut slot = 0;
    for i in 0..t2 {
        vector.set_value(slot, 0, x[i])?;
        vector.set_value(slot, 1, eps[i])?;
        slot += 1;
    }
    for &val in y.iter().chain(&z).chain(&s).chain(&t) {
        vector.set_value(slot, 0, val)?;
        slot += 1;
    }

    let mut extras = Vec::new();
    for _ in 0..v.d {
        extras.push(SpaceTerm::sphere(4)?);
    }
    for q in v.torsion.iter().filter(|q| q.p != 2) {
        extras.push(SpaceTerm::moore(*q, 5)?);
        extras.push(SpaceTerm::moore(*q, 4)?);
    }
    for _ in 0..v.c1 {
        extras.push(SpaceTerm::chang_eta(3)?);
    }
    Ok((vector, extras))
}

/// n = 3 slots (localized targets): `S^5 x d` (block a, mod 3), one
/// `P^5(3^r)` (block b) and one `P^6(3^r)` (block c) per 3-primary
/// summand.  Summands at primes >= 5 admit no nonzero coefficient and pass
/// through.
fn build_attach_n3(v: &ValidatedInput, coeffs: &CoeffsField) -> Result<(AttachingVector, Vec<SpaceTerm>)> {
    for (b, name) in [
        (&coeffs.x, "x"),
        (&coeffs.eps, "eps"),
        (&coeffs.y, "y"),
        (&coeffs.z, "z"),
        (&coeffs.s, "s"),
        (&coeffs.t, "t"),
    ] {
        forbid(b, name, 3)?;
    }
    let three = v.primary(3);
    let t3 = three.len();
    let a = block(&coeffs.a, "a", v.d)?;
    let b = block(&coeffs.b, "b", t3)?;
    let c = block(&coeffs.c, "c", t3)?;

    let mut targets = Vec::new();
    for _ in 0..v.d {
        targets.push(SpaceTerm::sphere(5)?);
    }
    for &(ti, _) in &three {
        targets.push(SpaceTerm::moore(v.torsion[ti], 5)?);
    }
    for &(ti, _) in &three {
        targets.push(SpaceTerm::moore(v.torsion[ti], 6)?);
    }
    let mut vector = AttachingVector::over(8, targets)?;
    for (slot, &val) in a.iter().chain(&b).chain(&c).enumerate() {
        vector.set_value(slot, 0, val)?;
    }

    let mut extras = Vec::new();
    for _ in 0..v.l {
        extras.push(SpaceTerm::sphere(4)?);
        extras.push(SpaceTerm::sphere(6)?);
    }
    for q in v.torsion.iter().filter(|q| q.p >= 5) {
        extras.push(SpaceTerm::moore(*q, 5)?);
        extras.push(SpaceTerm::moore(*q, 6)?);
    }
    Ok((vector, extras))
}

/// The operation profile a normalized attaching vector exhibits on its
/// cofiber: the surviving class determines every case.
pub fn profile_from_vector(n: u32, vector: &AttachingVector) -> Result<OperationProfile> {
    let (nf, _) = vector.normalize()?;
    let survivor = nf.survivor().map(|(si, ci)| {
        let slot = &nf.slots()[si];
        (slot.target.clone(), slot.coeffs[ci].gen)
    });
    match n {
        2 => {
            let mut p = OperationProfile {
                w2_nonzero: Some(false),
                theta: Some(ThetaCase::Trivial),
                tertiary: Some(false),
                ..OperationProfile::default()
            };
            match survivor {
                None => {}
                Some((_, Gen::Eta3)) => p.tertiary = Some(true),
                Some((SpaceTerm::Moore { q, .. }, Gen::IEta2)) => {
                    p.theta = Some(ThetaCase::NoBocksteinLink { r: q.r });
                    p.tertiary = None;
                }
                Some((_, Gen::TetaEta { r } | Gen::IPTetaEta { r })) => {
                    p.theta = Some(ThetaCase::BocksteinImage { r });
                    p.tertiary = None;
                }
                Some((_, Gen::Eta)) => {
                    p = OperationProfile {
                        w2_nonzero: Some(true),
                        sq2_h5: Some(Sq2H5Case::NoBocksteinImage),
                        ..OperationProfile::default()
                    };
                }
                Some((_, Gen::Teta { r })) => {
                    p = OperationProfile {
                        w2_nonzero: Some(true),
                        sq2_h5: Some(Sq2H5Case::BocksteinImage { r }),
                        ..OperationProfile::default()
                    };
                }
                Some((t, g)) => {
                    return Err(Error::UnsupportedPair {
                        what: format!("no n = 2 profile reads off {g} on {t}"),
                    })
                }
            }
            Ok(p)
        }
        3 => {
            let p1 = match survivor {
                None => P1Case::Trivial,
                Some((_, Gen::Alpha1 { .. })) => P1Case::Free,
                Some((SpaceTerm::Moore { m: 5, q }, Gen::TAlpha1 { .. })) => {
                    P1Case::BocksteinImage { r: q.r }
                }
                Some((SpaceTerm::Moore { m: 6, q }, Gen::IAlpha1 { .. })) => {
                    P1Case::BocksteinSource { r: q.r }
                }
                Some((t, g)) => {
                    return Err(Error::UnsupportedPair {
                        what: format!("no n = 3 profile reads off {g} on {t}"),
                    })
                }
            };
            Ok(OperationProfile {
                p1: Some(p1),
                ..OperationProfile::default()
            })
        }
        _ => Err(Error::UnsupportedPair {
            what: format!("profiles are read off vectors for n = 2 and n = 3, not n = {n}"),
        }),
    }
}
