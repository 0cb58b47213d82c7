//! Independent consistency checks over exhaustively enumerated inputs.
//!
//! Every check in this module recomputes its expected answer from first
//! principles rather than trusting the code under test: homology is
//! recomputed from cellular chain complexes by Smith reduction instead of
//! the catalog tables, rewrite moves are audited against brute-force
//! orbits, and attaching-mode decompositions are compared against
//! operations-mode decompositions of the profile the vector itself
//! exhibits.  Reports are structured pass/fail values carrying a witness
//! for every violation, so callers (tests and the `verify` subcommand) can
//! aggregate them deterministically.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::catalog::{SpaceTerm, Wedge};
use crate::decomposer::{
    attach_vector, decompose, localize_result, profile_from_vector, reduce_phi, CoeffsField,
    InputDocument, ModeField, OperationProfile, P1Case, Sq2Field, Sq2H5Case, ThetaCase,
};
use crate::normalizer::{canonical_rules, orbit_equivalent, AttachingVector, ExpRel, GenKind, RuleId, RuleSpec};
use crate::torsion::{FinAbGroup, GradedAb, PrimePower};
use crate::{Error, Result};

/// Default ceiling on enumerated cases before a sweep aborts with
/// [`Error::CapExceeded`].
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Abort threshold for exhaustive sweeps: the `SUSPSPLIT_CAP` environment
/// variable when set to a number, [`DEFAULT_CAP`] otherwise.
#[must_use]
pub fn enumeration_cap() -> u64 {
    std::env::var("SUSPSPLIT_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

// ---------------------------------------------------------------------------
// Reports and bounds
// ---------------------------------------------------------------------------

/// Outcome of one check: how many cases ran and which ones failed.  At
/// most [`CheckReport::MAX_WITNESSES`] witness strings are retained;
/// `failed` counts all failures.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub const MAX_WITNESSES: usize = 25;

    fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self) {
        self.cases += 1;
    }

    fn fail(&mut self, witness: String) {
        self.failed += 1;
        if self.failures.len() < Self::MAX_WITNESSES {
            self.failures.push(witness);
        }
    }

    #[must_use]
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: pass ({} cases)", self.name, self.cases)
        } else {
            write!(
                f,
                "{}: FAIL ({}/{} cases): {}",
                self.name,
                self.failed,
                self.cases,
                self.failures.first().map_or("", |s| s.as_str())
            )
        }
    }
}

/// Shape bounds for exhaustive input enumeration: free ranks `l` and `d`,
/// number of torsion summands at the relevant prime, their maximal
/// exponent, and the inclusive `n` range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_l: u32,
    pub max_d: u32,
    pub max_t2: u32,
    pub max_r: u32,
    pub n_min: u32,
    pub n_max: u32,
}

impl EnumerationBounds {
    #[must_use]
    pub fn new(max_l: u32, max_d: u32, max_t2: u32, max_r: u32, n_min: u32, n_max: u32) -> Self {
        EnumerationBounds {
            max_l,
            max_d,
            max_t2,
            max_r,
            n_min,
            n_max,
        }
    }

    /// Small bounds for the rewrite-system audits, where every vector pays
    /// for an orbit search.
    #[must_use]
    pub fn desk() -> Self {
        EnumerationBounds::new(1, 1, 2, 2, 2, 3)
    }
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds::new(1, 1, 1, 2, 2, 2)
    }
}

// ---------------------------------------------------------------------------
// Cellular homology by Smith reduction
// ---------------------------------------------------------------------------

/// Diagonalize an integer matrix by row/column operations and return the
/// absolute diagonal entries (no divisibility chaining; callers factor the
/// entries themselves).
fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in &mut a {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    for (x, p) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                        *x -= q * p;
                    }
                    if a[i][t] != 0 {
                        // Strictly smaller remainder; promote it to pivot.
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut() {
                        let sub = q * row[t];
                        row[j] -= sub;
                    }
                    if a[t][j] != 0 {
                        for row in &mut a {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty
                && (t + 1..rows).all(|i| a[i][t] == 0)
                && (t + 1..cols).all(|j| a[t][j] == 0)
            {
                break;
            }
        }
        t += 1;
    }
    (0..rows.min(cols)).map(|i| a[i][i].abs()).collect()
}

/// Cells of one catalog term as `(degree, boundary coefficient onto the
/// term's cell one degree below)`.  Every catalog term has at most one
/// cell per degree, and the only nonzero cellular boundaries are the
/// degree-`p^r` attachments of Moore-type bottom pairs; cells glued along
/// `eta`-, `eta^2`-, `eta^3`- or `alpha_1`-type maps are invisible to the
/// boundary operator.
fn term_cells(t: &SpaceTerm) -> Vec<(u32, i128)> {
    match t {
        SpaceTerm::Sphere { m } => vec![(*m, 0)],
        SpaceTerm::Moore { m, q } => vec![(m - 1, 0), (*m, i128::from(q.value()))],
        SpaceTerm::ChangEta { n } => vec![(*n, 0), (n + 2, 0)],
        SpaceTerm::ChangR { n, r } => vec![(*n, 0), (n + 1, 1i128 << r), (n + 2, 0)],
        SpaceTerm::ConeEta2 { n } => vec![(*n, 0), (n + 3, 0)],
        SpaceTerm::ConeTildeEta { n, r } | SpaceTerm::Cone2rEta2 { n, r } => {
            vec![(*n, 0), (n + 1, 1i128 << r), (n + 3, 0)]
        }
        SpaceTerm::ConeTildeEtaEta { n, r } => vec![(n - 1, 0), (*n, 1i128 << r), (n + 3, 0)],
        SpaceTerm::ConeChang { n, r } => {
            vec![(n - 1, 0), (*n, 1i128 << r), (n + 1, 0), (n + 3, 0)]
        }
        SpaceTerm::ConeEta3 => vec![(3, 0), (7, 0)],
        SpaceTerm::ConeAlpha1 { m } => vec![(*m, 0), (m + 4, 0)],
        SpaceTerm::ConeTildeAlpha1 { m, r } => vec![(m - 1, 0), (*m, 3i128.pow(*r)), (m + 4, 0)],
        SpaceTerm::ConeIAlpha1 { m, r } => vec![(*m, 0), (m + 1, 3i128.pow(*r)), (m + 4, 0)],
    }
}

/// Reduced homology of a wedge computed from its cellular chain complex,
/// independently of the catalog's homology tables.
#[must_use]
pub fn chain_homology(w: &Wedge) -> GradedAb {
    let mut by_deg: std::collections::BTreeMap<u32, Vec<(usize, i128)>> =
        std::collections::BTreeMap::new();
    let mut pos: HashMap<(usize, u32), usize> = HashMap::new();
    for (ti, term) in w.terms().iter().enumerate() {
        for (deg, coeff) in term_cells(term) {
            let list = by_deg.entry(deg).or_default();
            pos.insert((ti, deg), list.len());
            list.push((ti, coeff));
        }
    }
    let boundary = |k: u32| -> Vec<Vec<i128>> {
        let cols = by_deg.get(&k).map_or(0, Vec::len);
        let rows = if k == 0 {
            0
        } else {
            by_deg.get(&(k - 1)).map_or(0, Vec::len)
        };
        let mut m = vec![vec![0i128; cols]; rows];
        if rows > 0 && cols > 0 {
            for (j, &(ti, coeff)) in by_deg[&k].iter().enumerate() {
                if coeff != 0 {
                    m[pos[&(ti, k - 1)]][j] = coeff;
                }
            }
        }
        m
    };
    let mut h = GradedAb::zero();
    let degrees: Vec<u32> = by_deg.keys().copied().collect();
    for k in degrees {
        let n_k = by_deg[&k].len();
        let d_k = smith_diagonal(boundary(k));
        let d_k1 = smith_diagonal(boundary(k + 1));
        let rank_k = d_k.iter().filter(|&&e| e != 0).count();
        let rank_k1 = d_k1.iter().filter(|&&e| e != 0).count();
        let free = (n_k - rank_k - rank_k1) as u64;
        let orders: Vec<u64> = d_k1
            .iter()
            .filter(|&&e| e > 1)
            .map(|&e| u64::try_from(e).expect("cell boundary orders fit in u64"))
            .collect();
        let torsion =
            FinAbGroup::from_cyclic_orders(&orders).expect("boundary entries are valid orders");
        h.add(k, free, torsion);
    }
    h
}

fn away_from_two(g: &GradedAb) -> GradedAb {
    let mut out = GradedAb::zero();
    for (deg, (rank, torsion)) in g.iter() {
        out.add(deg, *rank, torsion.away_from(2));
    }
    out
}

/// First degree where two graded groups disagree, rendered as a witness.
#[must_use]
pub fn homology_mismatch(got: &GradedAb, want: &GradedAb) -> Option<String> {
    if got == want {
        return None;
    }
    let degrees: BTreeSet<u32> = got
        .iter()
        .map(|(d, _)| d)
        .chain(want.iter().map(|(d, _)| d))
        .collect();
    for d in degrees {
        let (gr, gt) = got.part(d);
        let (wr, wt) = want.part(d);
        if gr != wr || gt != wt {
            return Some(format!(
                "degree {d}: got Z^{gr} + {gt}, want Z^{wr} + {wt}"
            ));
        }
    }
    Some("graded groups differ".into())
}

/// The reduced homology any decomposition of the suspension must realize:
/// `Z^l (+) T` in degree `n+1`, `Z^d (+) T` in degree `n+2`, `Z^l` in
/// degree `n+3` and `Z` on top, with `T` replaced by its odd part when
/// localized away from 2.
#[must_use]
pub fn expected_suspension_homology(
    n: u32,
    l: u64,
    d: u64,
    torsion: &[PrimePower],
    localized: bool,
) -> GradedAb {
    let full = FinAbGroup::from_prime_powers(torsion.to_vec());
    let t = if localized { full.away_from(2) } else { full };
    let mut h = GradedAb::zero();
    h.add(n + 1, l, t.clone());
    h.add(n + 2, d, t);
    h.add_free(n + 3, l);
    h.add_free(2 * n + 3, 1);
    h
}

/// The single localized wedge every n = 2 decomposition collapses to:
/// `l` copies of `S^3 v S^5`, `d` copies of `S^4`, the odd torsion carried
/// by Moore spaces in degrees 4 and 5, and the top sphere.
#[must_use]
pub fn corollary_local_wedge(l: usize, d: usize, torsion: &[PrimePower]) -> Wedge {
    let mut terms = Vec::new();
    for _ in 0..l {
        terms.push(SpaceTerm::sphere(3).expect("valid sphere"));
        terms.push(SpaceTerm::sphere(5).expect("valid sphere"));
    }
    for _ in 0..d {
        terms.push(SpaceTerm::sphere(4).expect("valid sphere"));
    }
    for q in torsion.iter().filter(|q| q.p != 2) {
        terms.push(SpaceTerm::moore(*q, 4).expect("valid Moore space"));
        terms.push(SpaceTerm::moore(*q, 5).expect("valid Moore space"));
    }
    terms.push(SpaceTerm::sphere(7).expect("valid sphere"));
    Wedge::from_terms(terms)
}

// ---------------------------------------------------------------------------
// Input enumeration
// ---------------------------------------------------------------------------

/// Nondecreasing exponent tuples of sizes `0..=max_count` over
/// `1..=max_r`, smallest sizes first.
fn exponent_multisets(max_count: usize, max_r: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_count {
        let mut next = Vec::new();
        for base in &level {
            let lo = *base.last().unwrap_or(&1);
            for r in lo..=max_r {
                let mut v = base.clone();
                v.push(r);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// All `radix^len` digit vectors in counter order (all-zero first).
fn radix_vectors(len: usize, radix: u8) -> Vec<Vec<u8>> {
    let total = (radix as usize).checked_pow(len as u32).expect("sweep size fits usize");
    let mut out = Vec::with_capacity(total);
    let mut counter = vec![0u8; len];
    loop {
        out.push(counter.clone());
        let mut k = 0;
        loop {
            if k == len {
                return out;
            }
            counter[k] += 1;
            if counter[k] < radix {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Debug)]
struct ShapeN2 {
    l: usize,
    d: usize,
    torsion: Vec<(u64, u32)>,
    exps2: Vec<u32>,
    c1: usize,
    c2: usize,
    chosen: Vec<usize>,
}

#[derive(Clone, Debug)]
struct ShapeOdd {
    l: usize,
    d: usize,
    torsion: Vec<(u64, u32)>,
    exps3: Vec<u32>,
}

/// Optional extra odd-primary summand, exercised only when torsion is
/// enumerated at all.
fn odd_extra(b: &EnumerationBounds, p: u64) -> Vec<Vec<(u64, u32)>> {
    if b.max_t2 >= 1 {
        vec![Vec::new(), vec![(p, 1)]]
    } else {
        vec![Vec::new()]
    }
}

fn n2_shapes(b: &EnumerationBounds) -> Vec<ShapeN2> {
    let mut out = Vec::new();
    for l in 0..=b.max_l as usize {
        for d in 0..=b.max_d as usize {
            for exps2 in exponent_multisets(b.max_t2 as usize, b.max_r) {
                for extra in odd_extra(b, 3) {
                    let mut torsion: Vec<(u64, u32)> =
                        exps2.iter().map(|&r| (2, r)).collect();
                    torsion.extend(extra.iter().copied());
                    for c1 in 0..=l {
                        for c2 in 0..=(l - c1).min(exps2.len()) {
                            for chosen in (0..exps2.len()).combinations(c2) {
                                out.push(ShapeN2 {
                                    l,
                                    d,
                                    torsion: torsion.clone(),
                                    exps2: exps2.clone(),
                                    c1,
                                    c2,
                                    chosen,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn odd_shapes(b: &EnumerationBounds) -> Vec<ShapeOdd> {
    let mut out = Vec::new();
    for l in 0..=b.max_l as usize {
        for d in 0..=b.max_d as usize {
            for exps3 in exponent_multisets(b.max_t2 as usize, b.max_r) {
                for extra in odd_extra(b, 5) {
                    let mut torsion: Vec<(u64, u32)> =
                        exps3.iter().map(|&r| (3, r)).collect();
                    torsion.extend(extra.iter().copied());
                    out.push(ShapeOdd {
                        l,
                        d,
                        torsion,
                        exps3: exps3.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Every operation profile a given n = 2 shape admits.
fn n2_profiles(s: &ShapeN2) -> Vec<OperationProfile> {
    let spin = |theta, tertiary| OperationProfile {
        w2_nonzero: Some(false),
        theta: Some(theta),
        tertiary,
        ..OperationProfile::default()
    };
    let nonspin = |case| OperationProfile {
        w2_nonzero: Some(true),
        sq2_h5: Some(case),
        ..OperationProfile::default()
    };
    let mut out = vec![spin(ThetaCase::Trivial, Some(false))];
    if s.l > s.c1 {
        out.push(spin(ThetaCase::Trivial, Some(true)));
    }
    out.push(spin(ThetaCase::Trivial, None));
    for &r in s.exps2.iter().collect::<BTreeSet<_>>() {
        out.push(spin(ThetaCase::NoBocksteinLink { r }, None));
        out.push(spin(ThetaCase::BocksteinImage { r }, None));
    }
    if s.l > s.c1 + s.c2 {
        out.push(nonspin(Sq2H5Case::NoBocksteinImage));
    }
    for &r in s.exps2.iter().collect::<BTreeSet<_>>() {
        out.push(nonspin(Sq2H5Case::BocksteinImage { r }));
    }
    out
}

/// Every operation profile a given shape admits for n in 3..=5.
fn odd_profiles(n: u32, s: &ShapeOdd) -> Vec<OperationProfile> {
    if n == 5 {
        return vec![OperationProfile::default()];
    }
    let p1 = |case| OperationProfile {
        p1: Some(case),
        ..OperationProfile::default()
    };
    let mut out = vec![p1(P1Case::Trivial)];
    if n == 3 && s.d >= 1 {
        out.push(p1(P1Case::Free));
    }
    for &r in s.exps3.iter().collect::<BTreeSet<_>>() {
        out.push(p1(P1Case::BocksteinImage { r }));
        if n == 3 {
            out.push(p1(P1Case::BocksteinSource { r }));
        }
    }
    out
}

fn ops_doc_n2(s: &ShapeN2, p: &OperationProfile) -> InputDocument {
    InputDocument {
        schema: 1,
        n: 2,
        l: s.l as u32,
        d: s.d as u32,
        torsion: s.torsion.clone(),
        sq2: Some(Sq2Field::Reduced {
            c1: s.c1 as u32,
            c2: s.c2 as u32,
            chosen: s.chosen.clone(),
        }),
        mode: ModeField::Ops,
        profile: Some(p.to_field()),
        coeffs: None,
        localize: false,
    }
}

fn ops_doc_odd(n: u32, s: &ShapeOdd, p: &OperationProfile) -> InputDocument {
    InputDocument {
        schema: 1,
        n,
        l: s.l as u32,
        d: s.d as u32,
        torsion: s.torsion.clone(),
        sq2: None,
        mode: ModeField::Ops,
        profile: Some(p.to_field()),
        coeffs: None,
        localize: true,
    }
}

/// Lengths of the six n = 2 coefficient blocks in input order.
fn n2_block_lens(s: &ShapeN2) -> [usize; 6] {
    let t2 = s.exps2.len();
    [
        t2,
        t2,
        s.l - s.c1,
        s.l - s.c1 - s.c2,
        t2 - s.c2,
        s.c2,
    ]
}

fn n2_coeffs(bits: &[u8], lens: [usize; 6]) -> CoeffsField {
    let mut off = 0;
    let mut take = |len: usize| -> Option<Vec<u8>> {
        let part = bits[off..off + len].to_vec();
        off += len;
        Some(part)
    };
    CoeffsField {
        x: take(lens[0]),
        eps: take(lens[1]),
        y: take(lens[2]),
        z: take(lens[3]),
        s: take(lens[4]),
        t: take(lens[5]),
        ..CoeffsField::default()
    }
}

fn n3_coeffs(vals: &[u8], d: usize, t3: usize) -> CoeffsField {
    CoeffsField {
        a: Some(vals[..d].to_vec()),
        b: Some(vals[d..d + t3].to_vec()),
        c: Some(vals[d + t3..d + 2 * t3].to_vec()),
        ..CoeffsField::default()
    }
}

fn attach_doc_n2(s: &ShapeN2, coeffs: CoeffsField) -> InputDocument {
    InputDocument {
        schema: 1,
        n: 2,
        l: s.l as u32,
        d: s.d as u32,
        torsion: s.torsion.clone(),
        sq2: Some(Sq2Field::Reduced {
            c1: s.c1 as u32,
            c2: s.c2 as u32,
            chosen: s.chosen.clone(),
        }),
        mode: ModeField::Attach,
        profile: None,
        coeffs: Some(coeffs),
        localize: false,
    }
}

fn attach_doc_n3(s: &ShapeOdd, coeffs: CoeffsField) -> InputDocument {
    InputDocument {
        schema: 1,
        n: 3,
        l: s.l as u32,
        d: s.d as u32,
        torsion: s.torsion.clone(),
        sq2: None,
        mode: ModeField::Attach,
        profile: None,
        coeffs: Some(coeffs),
        localize: true,
    }
}

fn doc_key(doc: &InputDocument) -> String {
    let sq2 = match &doc.sq2 {
        Some(Sq2Field::Reduced { c1, c2, chosen }) => format!("c1={c1},c2={c2},chosen={chosen:?}"),
        Some(Sq2Field::Matrices { .. }) => "matrices".into(),
        None => "-".into(),
    };
    format!(
        "n={} l={} d={} T={:?} sq2[{sq2}] mode={:?} profile={:?} coeffs={:?}",
        doc.n, doc.l, doc.d, doc.torsion, doc.mode, doc.profile, doc.coeffs
    )
}

/// Walk every input document within the bounds in a fixed deterministic
/// order, without materializing the list: all attaching-coefficient
/// vectors over each n = 2 and n = 3 shape, and every admissible
/// operation profile for n = 4 and n = 5 (which carry no top-cell
/// coefficients).  Visiting more than `cap` documents aborts with
/// [`Error::CapExceeded`].
pub fn for_each_input<F>(b: &EnumerationBounds, cap: u64, mut f: F) -> Result<()>
where
    F: FnMut(InputDocument) -> Result<()>,
{
    if b.n_min < 2 || b.n_max > 5 || b.n_min > b.n_max {
        return Err(Error::UnsupportedPair {
            what: format!(
                "enumeration covers 2 <= n <= 5, got {}..={}",
                b.n_min, b.n_max
            ),
        });
    }
    let mut count: u64 = 0;
    let mut emit = |doc: InputDocument| -> Result<()> {
        if count >= cap {
            return Err(Error::CapExceeded {
                requested: count + 1,
                cap,
            });
        }
        count += 1;
        f(doc)
    };
    for n in b.n_min..=b.n_max {
        match n {
            2 => {
                for s in n2_shapes(b) {
                    let lens = n2_block_lens(&s);
                    for bits in radix_vectors(lens.iter().sum(), 2) {
                        emit(attach_doc_n2(&s, n2_coeffs(&bits, lens)))?;
                    }
                }
            }
            3 => {
                for s in odd_shapes(b) {
                    let t3 = s.exps3.len();
                    for vals in radix_vectors(s.d + 2 * t3, 3) {
                        emit(attach_doc_n3(&s, n3_coeffs(&vals, s.d, t3)))?;
                    }
                }
            }
            4 | 5 => {
                for s in odd_shapes(b) {
                    for p in odd_profiles(n, &s) {
                        emit(ops_doc_odd(n, &s, &p))?;
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(())
}

/// Deterministically enumerate every input document within the bounds.
/// Exceeding `cap` aborts with [`Error::CapExceeded`]; prefer small
/// bounds, since the list is fully materialized.
pub fn enumerate_inputs(b: &EnumerationBounds, cap: u64) -> Result<Vec<InputDocument>> {
    let mut out = Vec::new();
    for_each_input(b, cap, |doc| {
        out.push(doc);
        Ok(())
    })?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Catalog and branch homology
// ---------------------------------------------------------------------------

fn all_catalog_terms() -> Vec<SpaceTerm> {
    let mut terms = Vec::new();
    for m in 1..=8 {
        terms.push(SpaceTerm::sphere(m).expect("valid sphere"));
    }
    for p in [2u64, 3, 5] {
        for r in 1..=3 {
            for m in 3..=6 {
                let q = PrimePower::new(p, r).expect("valid prime power");
                terms.push(SpaceTerm::moore(q, m).expect("valid Moore space"));
            }
        }
    }
    for n in 2..=5 {
        terms.push(SpaceTerm::chang_eta(n).expect("valid Chang complex"));
        for r in 1..=3 {
            terms.push(SpaceTerm::chang_r(n, r).expect("valid Chang complex"));
        }
    }
    for n in 2..=4 {
        terms.push(SpaceTerm::cone_eta2(n).expect("valid cone"));
    }
    for n in 3..=4 {
        for r in 1..=3 {
            terms.push(SpaceTerm::cone_tilde_eta(n, r).expect("valid cone"));
            terms.push(SpaceTerm::cone_2r_eta2(n, r).expect("valid cone"));
        }
    }
    for n in 4..=5 {
        for r in 1..=3 {
            terms.push(SpaceTerm::cone_tilde_eta_eta(n, r).expect("valid cone"));
            terms.push(SpaceTerm::cone_chang(n, r).expect("valid cone"));
        }
    }
    terms.push(SpaceTerm::cone_eta3());
    for m in 3..=7 {
        terms.push(SpaceTerm::cone_alpha1(m).expect("valid cone"));
    }
    for m in 4..=7 {
        for r in 1..=3 {
            terms.push(SpaceTerm::cone_tilde_alpha1(m, r).expect("valid cone"));
            terms.push(SpaceTerm::cone_i_alpha1(m, r).expect("valid cone"));
        }
    }
    terms
}

/// Recompute every catalog term's homology table from its cell structure,
/// and check that suspension shifts it and localization strips its
/// 2-primary part.
#[must_use]
pub fn check_catalog_homology() -> CheckReport {
    let mut rep = CheckReport::new("catalog-homology");
    for term in all_catalog_terms() {
        rep.case();
        let single = Wedge::from_terms(vec![term.clone()]);
        let table = term.reduced_homology();
        let chains = chain_homology(&single);
        if let Some(w) = homology_mismatch(&chains, &table) {
            rep.fail(format!("{term}: chain homology vs table: {w}"));
            continue;
        }
        if let Ok(suspended) = term.suspend() {
            let got = chain_homology(&Wedge::from_terms(vec![suspended.clone()]));
            if let Some(w) = homology_mismatch(&got, &table.shifted(1)) {
                rep.fail(format!("{term}: suspension to {suspended}: {w}"));
            }
        }
        let localized = Wedge::from_terms(term.localize_away_from_2());
        let got = chain_homology(&localized);
        if let Some(w) = homology_mismatch(&got, &away_from_two(&table)) {
            rep.fail(format!("{term}: localization to {localized}: {w}"));
        }
    }
    rep
}

fn branch_label(n: u32, p: &OperationProfile) -> String {
    match n {
        2 => {
            if p.w2_nonzero == Some(true) {
                match p.sq2_h5 {
                    Some(Sq2H5Case::NoBocksteinImage) => "n2-nonspin-no-bockstein-image".into(),
                    Some(Sq2H5Case::BocksteinImage { .. }) => "n2-nonspin-bockstein-image".into(),
                    None => "n2-nonspin-unknown".into(),
                }
            } else {
                match (p.theta, p.tertiary) {
                    (Some(ThetaCase::Trivial), Some(false)) => "n2-spin-trivial".into(),
                    (Some(ThetaCase::Trivial), Some(true)) => "n2-spin-eta3".into(),
                    (Some(ThetaCase::Trivial), None) => "n2-spin-open".into(),
                    (Some(ThetaCase::NoBocksteinLink { .. }), _) => {
                        "n2-spin-no-bockstein-link".into()
                    }
                    (Some(ThetaCase::BocksteinImage { .. }), _) => "n2-spin-bockstein-image".into(),
                    _ => "n2-spin-unknown".into(),
                }
            }
        }
        3 | 4 => match p.p1 {
            Some(P1Case::Trivial) => format!("n{n}-trivial"),
            Some(P1Case::Free) => format!("n{n}-free"),
            Some(P1Case::BocksteinImage { .. }) => format!("n{n}-bockstein-image"),
            Some(P1Case::BocksteinSource { .. }) => format!("n{n}-bockstein-source"),
            None => format!("n{n}-unknown"),
        },
        _ => "n5-local".into(),
    }
}

fn required_branches(b: &EnumerationBounds) -> BTreeSet<String> {
    let mut req = BTreeSet::new();
    let torsion = b.max_t2 >= 1;
    for n in b.n_min..=b.n_max {
        match n {
            2 => {
                req.insert("n2-spin-trivial".into());
                req.insert("n2-spin-open".into());
                if b.max_l >= 1 {
                    req.insert("n2-spin-eta3".into());
                    req.insert("n2-nonspin-no-bockstein-image".into());
                }
                if torsion {
                    req.insert("n2-spin-no-bockstein-link".into());
                    req.insert("n2-spin-bockstein-image".into());
                    req.insert("n2-nonspin-bockstein-image".into());
                }
            }
            3 => {
                req.insert("n3-trivial".into());
                if b.max_d >= 1 {
                    req.insert("n3-free".into());
                }
                if torsion {
                    req.insert("n3-bockstein-image".into());
                    req.insert("n3-bockstein-source".into());
                }
            }
            4 => {
                req.insert("n4-trivial".into());
                if torsion {
                    req.insert("n4-bockstein-image".into());
                }
            }
            5 => {
                req.insert("n5-local".into());
            }
            _ => {}
        }
    }
    req
}

/// Chain homology is a pure function of the wedge, and enumerated inputs
/// hit the same few thousand wedges millions of times, so sweeps share one
/// memo.  The cached value is exactly what `chain_homology` would return.
type ChainMemo = HashMap<Vec<SpaceTerm>, GradedAb>;

fn chain_homology_memo<'a>(memo: &'a mut ChainMemo, w: &Wedge) -> &'a GradedAb {
    memo.entry(w.terms().to_vec())
        .or_insert_with(|| chain_homology(w))
}

fn check_doc_homology(rep: &mut CheckReport, memo: &mut ChainMemo, doc: &InputDocument) {
    rep.case();
    let dec = match decompose(doc) {
        Ok(d) => d,
        Err(e) => {
            rep.fail(format!("{}: decompose failed: {e}", doc_key(doc)));
            return;
        }
    };
    let torsion: Vec<PrimePower> = doc
        .torsion
        .iter()
        .map(|&(p, r)| PrimePower::new(p, r).expect("enumerated torsion is valid"))
        .collect();
    let expected = expected_suspension_homology(
        doc.n,
        u64::from(doc.l),
        u64::from(doc.d),
        &torsion,
        dec.localized,
    );
    for cand in &dec.candidates {
        let table = cand.wedge.reduced_homology();
        if let Some(w) = homology_mismatch(&table, &expected) {
            rep.fail(format!(
                "{}: candidate {}: table homology: {w}",
                doc_key(doc),
                cand.wedge
            ));
        }
        let chains = chain_homology_memo(memo, &cand.wedge);
        if let Some(w) = homology_mismatch(chains, &expected) {
            rep.fail(format!(
                "{}: candidate {}: chain homology: {w}",
                doc_key(doc),
                cand.wedge
            ));
        }
    }
}

/// Sweep every decision branch over every enumerated shape, plus every
/// enumerated attaching-coefficient input, and check each output wedge's
/// homology (catalog tables and chain complexes alike) against the
/// expected suspension table.  Also fails if a branch the bounds should
/// reach was never exercised.
pub fn check_branch_homology(b: &EnumerationBounds, cap: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("branch-homology");
    let mut memo = ChainMemo::new();
    let mut seen = BTreeSet::new();
    for n in b.n_min..=b.n_max {
        if n == 2 {
            for s in n2_shapes(b) {
                for p in n2_profiles(&s) {
                    seen.insert(branch_label(2, &p));
                    check_doc_homology(&mut rep, &mut memo, &ops_doc_n2(&s, &p));
                }
            }
        } else {
            for s in odd_shapes(b) {
                for p in odd_profiles(n, &s) {
                    seen.insert(branch_label(n, &p));
                    check_doc_homology(&mut rep, &mut memo, &ops_doc_odd(n, &s, &p));
                }
            }
        }
    }
    for_each_input(b, cap, |doc| {
        if doc.mode == ModeField::Attach {
            check_doc_homology(&mut rep, &mut memo, &doc);
        }
        Ok(())
    })?;
    for missing in required_branches(b).difference(&seen) {
        rep.fail(format!("branch {missing} was never exercised"));
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Mode agreement
// ---------------------------------------------------------------------------

type OpsMemo = HashMap<String, std::result::Result<Vec<Wedge>, String>>;

fn ops_candidates<'a>(memo: &'a mut OpsMemo, ops_doc: &InputDocument) -> &'a std::result::Result<Vec<Wedge>, String> {
    let key = doc_key(ops_doc);
    memo.entry(key).or_insert_with(|| {
        decompose(ops_doc)
            .map(|dec| dec.candidates.iter().map(|c| c.wedge.clone()).collect())
            .map_err(|e| e.to_string())
    })
}

fn agree_one(rep: &mut CheckReport, memo: &mut OpsMemo, doc: &InputDocument) {
    rep.case();
    let (vector, extras) = match attach_vector(doc) {
        Ok(pair) => pair,
        Err(e) => {
            rep.fail(format!("{}: attach build failed: {e}", doc_key(doc)));
            return;
        }
    };
    let nf = match vector.normalize() {
        Ok((nf, _)) => nf,
        Err(e) => {
            rep.fail(format!("{}: normalization failed: {e}", doc_key(doc)));
            return;
        }
    };
    let mut terms = match nf.cofiber() {
        Ok(w) => w.terms().to_vec(),
        Err(e) => {
            rep.fail(format!("{}: cofiber failed: {e}", doc_key(doc)));
            return;
        }
    };
    terms.extend(extras);
    let attach_wedge = Wedge::from_terms(terms);
    let profile = match profile_from_vector(doc.n, &vector) {
        Ok(p) => p,
        Err(e) => {
            rep.fail(format!("{}: profile read-off failed: {e}", doc_key(doc)));
            return;
        }
    };
    let ops_doc = InputDocument {
        mode: ModeField::Ops,
        profile: Some(profile.to_field()),
        coeffs: None,
        ..doc.clone()
    };
    match ops_candidates(memo, &ops_doc) {
        Ok(wedges) => {
            if !wedges.contains(&attach_wedge) {
                rep.fail(format!(
                    "{}: attach result {} not among operations-mode candidates [{}]",
                    doc_key(doc),
                    attach_wedge,
                    wedges.iter().map(ToString::to_string).join(" | ")
                ));
            }
        }
        Err(e) => rep.fail(format!(
            "{}: operations-mode decompose failed: {e}",
            doc_key(doc)
        )),
    }
}

/// Exhaustive n = 2 and n = 3 attaching-coefficient sweeps: each
/// attaching-mode decomposition must appear among the operations-mode
/// candidates for the profile the vector exhibits.
pub fn check_mode_agreement(b: &EnumerationBounds, cap: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("mode-agreement");
    let mut memo: OpsMemo = HashMap::new();
    let sweep = EnumerationBounds {
        n_min: b.n_min.max(2),
        n_max: b.n_max.min(3),
        ..*b
    };
    if sweep.n_min > sweep.n_max {
        return Ok(rep);
    }
    for_each_input(&sweep, cap, |doc| {
        agree_one(&mut rep, &mut memo, &doc);
        Ok(())
    })?;
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Rewrite-system audits
// ---------------------------------------------------------------------------

/// Cap on assignments per target wedge in the rewrite audits; larger
/// wedges are skipped to keep the orbit searches at desk scale.
const MAX_VECTORS_PER_TARGET: usize = 256;

fn vector_count(source_dim: u32, targets: &[SpaceTerm]) -> usize {
    AttachingVector::over(source_dim, targets.to_vec()).map_or(usize::MAX, |proto| {
        proto
            .slots()
            .iter()
            .flat_map(|s| s.coeffs.iter())
            .fold(1usize, |acc, c| acc.saturating_mul(c.modulus as usize))
    })
}

/// Target wedges for the rewrite audits, mirroring the slot layouts the
/// decomposer produces (including coefficient-free summands).
fn audit_targets(source_dim: u32, b: &EnumerationBounds) -> Vec<Vec<SpaceTerm>> {
    let msets = exponent_multisets(b.max_t2 as usize, b.max_r);
    let mut out = Vec::new();
    match source_dim {
        6 => {
            for m5 in &msets {
                for a in 0..=b.max_l as usize {
                    for z in 0..=b.max_l as usize {
                        for m4 in &msets {
                            for ch in &msets {
                                if m4.len() + ch.len() > b.max_t2 as usize {
                                    continue;
                                }
                                for chang_eta in 0..=1usize {
                                    let mut t = Vec::new();
                                    for &r in m5 {
                                        let q = PrimePower::new(2, r).expect("valid prime power");
                                        t.push(SpaceTerm::moore(q, 5).expect("valid Moore space"));
                                    }
                                    for _ in 0..a {
                                        t.push(SpaceTerm::sphere(3).expect("valid sphere"));
                                    }
                                    for _ in 0..z {
                                        t.push(SpaceTerm::sphere(5).expect("valid sphere"));
                                    }
                                    for &r in m4 {
                                        let q = PrimePower::new(2, r).expect("valid prime power");
                                        t.push(SpaceTerm::moore(q, 4).expect("valid Moore space"));
                                    }
                                    for &r in ch {
                                        t.push(SpaceTerm::chang_r(3, r).expect("valid Chang complex"));
                                    }
                                    for _ in 0..chang_eta {
                                        t.push(SpaceTerm::chang_eta(3).expect("valid Chang complex"));
                                    }
                                    if vector_count(6, &t) <= MAX_VECTORS_PER_TARGET {
                                        out.push(t);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        8 => {
            for m5 in &msets {
                for m6 in &msets {
                    for a in 0..=b.max_l as usize {
                        for p5 in 0..=1usize {
                            let mut t = Vec::new();
                            for _ in 0..a {
                                t.push(SpaceTerm::sphere(5).expect("valid sphere"));
                            }
                            for &r in m5 {
                                let q = PrimePower::new(3, r).expect("valid prime power");
                                t.push(SpaceTerm::moore(q, 5).expect("valid Moore space"));
                            }
                            for &r in m6 {
                                let q = PrimePower::new(3, r).expect("valid prime power");
                                t.push(SpaceTerm::moore(q, 6).expect("valid Moore space"));
                            }
                            for _ in 0..p5 {
                                let q = PrimePower::new(5, 1).expect("valid prime power");
                                t.push(SpaceTerm::moore(q, 5).expect("valid Moore space"));
                            }
                            if vector_count(8, &t) <= MAX_VECTORS_PER_TARGET {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// All coefficient assignments over a target wedge, counter order.
fn all_vectors(source_dim: u32, targets: &[SpaceTerm]) -> Vec<AttachingVector> {
    let proto = AttachingVector::over(source_dim, targets.to_vec()).expect("valid audit targets");
    let coords: Vec<(usize, usize, u8)> = proto
        .slots()
        .iter()
        .enumerate()
        .flat_map(|(si, s)| {
            s.coeffs
                .iter()
                .enumerate()
                .map(move |(ci, c)| (si, ci, c.modulus))
        })
        .collect();
    let mut out = Vec::new();
    let mut counter = vec![0u8; coords.len()];
    loop {
        let mut v = proto.clone();
        for (k, &(si, ci, _)) in coords.iter().enumerate() {
            v.set_value(si, ci, counter[k]).expect("value below modulus");
        }
        out.push(v);
        let mut k = 0;
        loop {
            if k == coords.len() {
                return out;
            }
            counter[k] += 1;
            if counter[k] < coords[k].2 {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

fn targets_label(targets: &[SpaceTerm]) -> String {
    if targets.is_empty() {
        "*".into()
    } else {
        targets.iter().map(ToString::to_string).join(" + ")
    }
}

/// Audit a rule table: every move it proposes must stay inside the
/// brute-force canonical orbit of the vector it rewrites, and the cofiber
/// of the resulting normal form must have the same chain-level homology as
/// the trivial attachment.  Run against [`canonical_rules`] this must
/// pass; run against a corrupted table it must produce witnesses.
#[must_use]
pub fn check_rule_soundness(
    source_dim: u32,
    rules: &[RuleSpec],
    b: &EnumerationBounds,
    max_depth: u32,
    node_cap: usize,
) -> CheckReport {
    let mut rep = CheckReport::new(format!("rule-soundness-dim{source_dim}"));
    for targets in audit_targets(source_dim, b) {
        let base_homology = {
            let mut with_top = targets.clone();
            with_top.push(SpaceTerm::sphere(source_dim + 1).expect("valid sphere"));
            chain_homology(&Wedge::from_terms(with_top))
        };
        let mut checked_nf: HashSet<Vec<u8>> = HashSet::new();
        for v in all_vectors(source_dim, &targets) {
            rep.case();
            let moves = v.moves_under(rules);
            if !moves.is_empty() {
                // With the default depth the orbit test degenerates to
                // one-step reachability; precompute the neighbor set once.
                let neighbors: Option<HashSet<Vec<u8>>> = (max_depth == 1)
                    .then(|| v.neighbors().iter().map(AttachingVector::encode).collect());
                for mv in &moves {
                    let w = v.apply(mv);
                    let ok = match &neighbors {
                        Some(set) => Ok(set.contains(&w.encode())),
                        None => orbit_equivalent(&v, &w, max_depth, node_cap),
                    };
                    match ok {
                        Ok(true) => {}
                        Ok(false) => rep.fail(format!(
                            "[{}] move {} on {} -> {} leaves the canonical orbit",
                            targets_label(&targets),
                            mv.rule,
                            v,
                            w
                        )),
                        Err(e) => rep.fail(format!(
                            "[{}] move {} on {} -> {}: orbit search: {e}",
                            targets_label(&targets),
                            mv.rule,
                            v,
                            w
                        )),
                    }
                }
            }
            match v.normalize_with(rules) {
                Ok((nf, _)) if nf.is_normal() => {
                    if checked_nf.insert(nf.encode()) {
                        match nf.cofiber() {
                            Ok(cw) => {
                                if let Some(wit) =
                                    homology_mismatch(&chain_homology(&cw), &base_homology)
                                {
                                    rep.fail(format!(
                                        "[{}] normal form {} cofiber {}: {wit}",
                                        targets_label(&targets),
                                        nf,
                                        cw
                                    ));
                                }
                            }
                            Err(e) => rep.fail(format!(
                                "[{}] normal form {}: cofiber failed: {e}",
                                targets_label(&targets),
                                nf
                            )),
                        }
                    }
                }
                Ok((nf, _)) => rep.fail(format!(
                    "[{}] {} reached the fixpoint {} which is not a normal form",
                    targets_label(&targets),
                    v,
                    nf
                )),
                Err(e) => rep.fail(format!(
                    "[{}] {}: normalization failed: {e}",
                    targets_label(&targets),
                    v
                )),
            }
        }
    }
    rep
}

/// Deliberately wrong rule tables (one flipped exponent side condition or
/// one reversed absorption) that the soundness audit must reject.
#[must_use]
pub fn corrupted_rule_tables() -> Vec<(String, u32, Vec<RuleSpec>)> {
    let flip = |dim: u32, id: RuleId, exp: ExpRel| -> (String, u32, Vec<RuleSpec>) {
        let table: Vec<RuleSpec> = canonical_rules(dim)
            .iter()
            .map(|r| {
                let mut r = *r;
                if r.id == id {
                    r.exp = exp;
                }
                r
            })
            .collect();
        (format!("{id}->{exp:?}"), dim, table)
    };
    let mut out = vec![
        flip(6, RuleId::TetaAbsorbsTeta, ExpRel::PivotGeq),
        flip(6, RuleId::IEta2AbsorbsIEta2, ExpRel::PivotLeq),
        flip(6, RuleId::TetaEtaAbsorbsIpTetaEta, ExpRel::PivotGeq),
        flip(8, RuleId::TalphaAbsorbsTalpha, ExpRel::PivotGeq),
    ];
    let reversed: Vec<RuleSpec> = canonical_rules(6)
        .iter()
        .map(|r| {
            let mut r = *r;
            if r.id == RuleId::TetaAbsorbsIEta2 {
                r.pivot = GenKind::IEta2;
                r.victim = GenKind::Teta;
            }
            r
        })
        .collect();
    out.push(("TetaAbsorbsIEta2->reversed".into(), 6, reversed));
    out
}

/// Run the soundness audit against every corrupted table and demand that
/// each one is rejected with a witness.
#[must_use]
pub fn check_rule_mutations(b: &EnumerationBounds, max_depth: u32, node_cap: usize) -> CheckReport {
    let mut rep = CheckReport::new("rule-mutation-detection");
    for (name, dim, table) in corrupted_rule_tables() {
        rep.case();
        let sub = check_rule_soundness(dim, &table, b, max_depth, node_cap);
        if sub.passed() {
            rep.fail(format!(
                "corrupted table {name} passed the soundness sweep ({} cases)",
                sub.cases
            ));
        }
    }
    rep
}

fn fixpoint_set(
    v: &AttachingVector,
    memo: &mut HashMap<Vec<u8>, BTreeSet<Vec<u8>>>,
) -> BTreeSet<Vec<u8>> {
    let key = v.encode();
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let moves = v.moves_under(canonical_rules(v.source_dim()));
    let mut set = BTreeSet::new();
    if moves.is_empty() {
        set.insert(key.clone());
    } else {
        for mv in &moves {
            set.extend(fixpoint_set(&v.apply(mv), memo));
        }
    }
    memo.insert(key, set.clone());
    set
}

/// Every order of applying canonical moves must reach the same single
/// fixpoint, and that fixpoint must be the normal form `normalize`
/// returns.
#[must_use]
pub fn check_confluence(source_dim: u32, b: &EnumerationBounds) -> CheckReport {
    let mut rep = CheckReport::new(format!("confluence-dim{source_dim}"));
    for targets in audit_targets(source_dim, b) {
        let mut memo = HashMap::new();
        for v in all_vectors(source_dim, &targets) {
            rep.case();
            let fps = fixpoint_set(&v, &mut memo);
            match v.normalize() {
                Ok((nf, _)) => {
                    if fps.len() != 1 || !fps.contains(&nf.encode()) {
                        rep.fail(format!(
                            "[{}] {} reaches {} distinct fixpoints (normal form {})",
                            targets_label(&targets),
                            v,
                            fps.len(),
                            nf
                        ));
                    }
                }
                Err(e) => rep.fail(format!(
                    "[{}] {}: normalization failed: {e}",
                    targets_label(&targets),
                    v
                )),
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Localization, Steenrod kernel, signatures
// ---------------------------------------------------------------------------

/// Every n = 2 decomposition, localized termwise away from 2, must equal
/// the single localized wedge determined by `(l, d, T)` alone.  Sweeps all
/// operation profiles within the bounds and all attaching vectors at desk
/// scale.
pub fn check_localization(b: &EnumerationBounds, cap: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("localization");
    if !(b.n_min..=b.n_max).contains(&2) {
        return Ok(rep);
    }
    let compare = |rep: &mut CheckReport, doc: &InputDocument| {
        rep.case();
        let dec = match decompose(doc) {
            Ok(d) => d,
            Err(e) => {
                rep.fail(format!("{}: decompose failed: {e}", doc_key(doc)));
                return;
            }
        };
        let torsion: Vec<PrimePower> = doc
            .torsion
            .iter()
            .map(|&(p, r)| PrimePower::new(p, r).expect("enumerated torsion is valid"))
            .collect();
        let expected = corollary_local_wedge(doc.l as usize, doc.d as usize, &torsion);
        for cand in &localize_result(&dec).candidates {
            if cand.wedge != expected {
                rep.fail(format!(
                    "{}: localized candidate {} differs from {}",
                    doc_key(doc),
                    cand.wedge,
                    expected
                ));
            }
        }
    };
    for s in n2_shapes(b) {
        for p in n2_profiles(&s) {
            if rep.cases >= cap {
                return Err(Error::CapExceeded {
                    requested: rep.cases + 1,
                    cap,
                });
            }
            compare(&mut rep, &ops_doc_n2(&s, &p));
        }
    }
    let n2_only = EnumerationBounds {
        n_min: 2,
        n_max: 2,
        ..*b
    };
    for_each_input(&n2_only, cap, |doc| {
        compare(&mut rep, &doc);
        Ok(())
    })?;
    Ok(rep)
}

/// `reduce_phi` must report `(0, 0)` exactly for the zero matrices;
/// exhaustive over all mod-2 matrices within the bounds.
#[must_use]
pub fn check_phi_kernel(max_l: usize, max_t2: usize) -> CheckReport {
    let mut rep = CheckReport::new("phi-kernel");
    for l in 0..=max_l {
        for t2 in 0..=max_t2 {
            let exps: Vec<u32> = (0..t2).map(|j| [2u32, 1, 3][j % 3]).collect();
            for abits in radix_vectors(l * l, 2) {
                let a: Vec<Vec<u8>> = (0..l).map(|i| abits[i * l..(i + 1) * l].to_vec()).collect();
                for bbits in radix_vectors(l * t2, 2) {
                    rep.case();
                    let bm: Vec<Vec<u8>> =
                        (0..l).map(|i| bbits[i * t2..(i + 1) * t2].to_vec()).collect();
                    let zero = abits.iter().all(|&x| x == 0) && bbits.iter().all(|&x| x == 0);
                    match reduce_phi(&a, &bm, &exps) {
                        Ok((c1, c2, _)) => {
                            if (c1 == 0 && c2 == 0) != zero {
                                rep.fail(format!(
                                    "l={l} t2={t2} A={a:?} B={bm:?}: got (c1, c2) = ({c1}, {c2})"
                                ));
                            }
                        }
                        Err(e) => rep.fail(format!("l={l} t2={t2} A={a:?} B={bm:?}: {e}")),
                    }
                }
            }
        }
    }
    rep
}

fn has_bockstein(term: &SpaceTerm, degree: u32, p: u64, r: u32) -> bool {
    term.operation_signature()
        .degree(degree)
        .bocksteins
        .contains(&(p, r))
}

fn signature_violation(n: u32, p: &OperationProfile, wedge: &Wedge) -> Option<String> {
    let terms = wedge.terms();
    let any_term = |f: &dyn Fn(&SpaceTerm) -> bool| terms.iter().any(f);
    match n {
        2 => {
            if p.w2_nonzero == Some(true) {
                if any_term(&|t| t.operation_signature().degree(4).theta) {
                    return Some("unexpected secondary operation on the degree-4 class".into());
                }
                match p.sq2_h5 {
                    Some(Sq2H5Case::NoBocksteinImage) => {
                        if !any_term(&|t| {
                            let sig = t.operation_signature();
                            sig.degree(5).sq2 && !sig.any(|o| !o.bocksteins.is_empty())
                        }) {
                            return Some("no torsion-free summand carries Sq^2 on degree 5".into());
                        }
                    }
                    Some(Sq2H5Case::BocksteinImage { r })
                        if !any_term(&|t| {
                            t.operation_signature().degree(5).sq2 && has_bockstein(t, 4, 2, r)
                        }) =>
                    {
                        return Some(format!(
                            "no summand couples Sq^2 on degree 5 to a 2^{r}-Bockstein"
                        ));
                    }
                    _ => {}
                }
            } else {
                match p.theta {
                    Some(ThetaCase::Trivial) | None => {
                        if any_term(&|t| t.operation_signature().degree(4).theta) {
                            return Some(
                                "unexpected secondary operation on the degree-4 class".into(),
                            );
                        }
                        if any_term(&|t| t.operation_signature().degree(5).sq2) {
                            return Some("unexpected Sq^2 on the degree-5 class".into());
                        }
                    }
                    Some(ThetaCase::NoBocksteinLink { r }) => {
                        if !any_term(&|t| {
                            t.operation_signature().degree(4).theta && has_bockstein(t, 4, 2, r)
                        }) {
                            return Some(format!(
                                "no summand couples the secondary operation to a 2^{r}-Bockstein in degree 4"
                            ));
                        }
                    }
                    Some(ThetaCase::BocksteinImage { r }) => {
                        if !any_term(&|t| {
                            t.operation_signature().degree(4).theta && has_bockstein(t, 3, 2, r)
                        }) {
                            return Some(format!(
                                "no summand couples the secondary operation to a 2^{r}-Bockstein in degree 3"
                            ));
                        }
                    }
                }
            }
            None
        }
        3 | 4 => {
            let deg = 2 * n - 1;
            match p.p1 {
                Some(P1Case::Trivial) | None => {
                    if any_term(&|t| t.operation_signature().degree(deg).p1) {
                        return Some(format!("unexpected mod-3 operation on degree {deg}"));
                    }
                }
                Some(P1Case::Free) => {
                    if !any_term(&|t| {
                        let sig = t.operation_signature();
                        sig.degree(deg).p1 && !sig.any(|o| !o.bocksteins.is_empty())
                    }) {
                        return Some(format!(
                            "no torsion-free summand carries the mod-3 operation on degree {deg}"
                        ));
                    }
                }
                Some(P1Case::BocksteinImage { r }) => {
                    if !any_term(&|t| {
                        t.operation_signature().degree(deg).p1 && has_bockstein(t, deg - 1, 3, r)
                    }) {
                        return Some(format!(
                            "no summand couples the mod-3 operation to a 3^{r}-Bockstein in degree {}",
                            deg - 1
                        ));
                    }
                }
                Some(P1Case::BocksteinSource { r }) => {
                    if !any_term(&|t| {
                        t.operation_signature().degree(deg).p1 && has_bockstein(t, deg, 3, r)
                    }) {
                        return Some(format!(
                            "no summand couples the mod-3 operation to a 3^{r}-Bockstein in degree {deg}"
                        ));
                    }
                }
            }
            None
        }
        _ => {
            if any_term(&|t| t.operation_signature().any(|o| o.p1)) {
                return Some("unexpected mod-3 operation in an n = 5 decomposition".into());
            }
            None
        }
    }
}

/// Every candidate wedge must exhibit, summand by summand, exactly the
/// operation couplings its input profile demanded.
#[must_use]
pub fn check_signature_consistency(b: &EnumerationBounds) -> CheckReport {
    let mut rep = CheckReport::new("signature-consistency");
    let run = |rep: &mut CheckReport, n: u32, p: &OperationProfile, doc: &InputDocument| {
        rep.case();
        match decompose(doc) {
            Ok(dec) => {
                for cand in &dec.candidates {
                    // The open spin case covers two candidates whose
                    // difference (the tertiary attachment) no signature in
                    // the catalog sees; both satisfy the trivial-theta
                    // assertions.
                    if let Some(w) = signature_violation(n, p, &cand.wedge) {
                        rep.fail(format!("{}: candidate {}: {w}", doc_key(doc), cand.wedge));
                    }
                }
            }
            Err(e) => rep.fail(format!("{}: decompose failed: {e}", doc_key(doc))),
        }
    };
    for n in b.n_min..=b.n_max {
        if n == 2 {
            for s in n2_shapes(b) {
                for p in n2_profiles(&s) {
                    run(&mut rep, 2, &p, &ops_doc_n2(&s, &p));
                }
            }
        } else {
            for s in odd_shapes(b) {
                for p in odd_profiles(n, &s) {
                    run(&mut rep, n, &p, &ops_doc_odd(n, &s, &p));
                }
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Aggregate runner
// ---------------------------------------------------------------------------

/// Knobs for [`verify_all`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Shape bounds for the homology, agreement, localization and
    /// signature sweeps.
    pub bounds: EnumerationBounds,
    /// Orbit search depth for the rewrite audits.
    pub depth: u32,
    /// Node cap for orbit searches.
    pub node_cap: usize,
    /// Case cap for the exhaustive sweeps.
    pub cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bounds: EnumerationBounds::new(3, 3, 2, 3, 2, 5),
            depth: 1,
            node_cap: 200_000,
            cap: enumeration_cap(),
        }
    }
}

/// Run the full check suite and return one report per check.
pub fn verify_all(o: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let desk = EnumerationBounds::desk();
    Ok(vec![
        check_catalog_homology(),
        check_branch_homology(&o.bounds, o.cap)?,
        check_mode_agreement(&o.bounds, o.cap)?,
        check_rule_soundness(6, canonical_rules(6), &desk, o.depth, o.node_cap),
        check_rule_soundness(8, canonical_rules(8), &desk, o.depth, o.node_cap),
        check_rule_mutations(&desk, o.depth, o.node_cap),
        check_confluence(6, &desk),
        check_confluence(8, &desk),
        check_localization(&o.bounds, o.cap)?,
        check_phi_kernel(3, 3),
        check_signature_consistency(&o.bounds),
    ])
}
