//! Convolutional codes from split character-code parity-check matrices.
//!
//! The parity-check matrix of `C_q(r, m; l)` is cut into contiguous weight
//! bands `H_0, H_1, ..., H_μ` (heaviest rows first). Each band is padded with
//! zero rows to `κ = rank H_0` rows and the padded blocks become the
//! coefficients of `G(D) = H̃_0 + H̃_1 D + ... + H̃_μ D^μ`. When
//! `rank H_i <= κ` for all `i` the result is reduced and basic, and its free
//! distance is at least the minimum distance of the dual block code.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charcode::{
    binary_dim, build_char_code, designed_distance, designed_dual_distance, lary_dim,
    lary_weight_count,
};
use crate::distance::{self, Budget, CertificateStatus};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matfq::MatrixFq;
use crate::polymat::{Basicness, PolyMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    /// Unit-memory codes from `C_q(r, m)`.
    #[serde(rename = "t2")]
    UnitMemoryBinary,
    /// Designed parameters of the dual of a unit-memory binary-group code.
    #[serde(rename = "cor1")]
    DualUnitMemoryBinary,
    #[serde(rename = "t3")]
    TwoMemoryBinary,
    /// Unit-memory codes from `C_q(r, m; l)`, `l >= 3`.
    #[serde(rename = "t4")]
    UnitMemoryLary,
    #[serde(rename = "multi")]
    MultiMemory,
}

impl Construction {
    pub fn id(self) -> &'static str {
        match self {
            Construction::UnitMemoryBinary => "t2",
            Construction::DualUnitMemoryBinary => "cor1",
            Construction::TwoMemoryBinary => "t3",
            Construction::UnitMemoryLary => "t4",
            Construction::MultiMemory => "multi",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Which distance the lower bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `d_f >= d⊥`, the minimum distance of the dual block code.
    Primal,
    /// `d_f⊥ >= min(d_0 + 1, d)`.
    Dual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: Construction,
    pub q: u32,
    pub l: u32,
    pub m: u32,
    pub r: u32,
    pub u: u32,
    pub v: Option<u32>,
    /// Weight cuts `u_0 > u_1 > ... > u_μ = r` defining the slices.
    pub cuts: Vec<u32>,
}

/// `(n, k, δ; μ, d_f >= bound)`. `memory = None` prints as `μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignedParams {
    pub n: u64,
    pub k: u64,
    pub degree: u64,
    pub memory: Option<u64>,
    pub df_lower: u64,
    pub bound: BoundKind,
}

impl DesignedParams {
    pub fn tuple(&self) -> String {
        let mu = self
            .memory
            .map(|m| m.to_string())
            .unwrap_or_else(|| "μ".into());
        format!(
            "({}, {}, {}; {}, d_f ≥ {})",
            self.n, self.k, self.degree, mu, self.df_lower
        )
    }

    pub fn tuple_q(&self, q: u32) -> String {
        format!("{}_{q}", self.tuple())
    }
}

/// Bookkeeping for one slice `H_i`: its row range in `H` and weight band.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceInfo {
    pub start: usize,
    pub end: usize,
    /// Smallest and largest `||x||` of the rows in the slice.
    pub weight_min: u32,
    pub weight_max: u32,
}

#[derive(Debug, Clone)]
pub struct ConvRecord {
    pub provenance: Provenance,
    pub designed: DesignedParams,
    pub kappa: usize,
    pub slices: Vec<SliceInfo>,
    /// `G(D)`. For dual records this generates the primal code.
    pub generator: PolyMatrix,
    /// Findings where a stated value differs from what the construction produces.
    pub notes: Vec<String>,
}

/// A named precondition and whether it holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl Condition {
    fn new(name: &'static str, holds: bool, detail: String) -> Self {
        Condition {
            name,
            holds,
            detail,
        }
    }
}

fn first_failure(conds: &[Condition]) -> Result<()> {
    match conds.iter().find(|c| !c.holds) {
        Some(c) => Err(Error::Precondition {
            name: c.name,
            detail: c.detail.clone(),
        }),
        None => Ok(()),
    }
}

/// `Σ_{i=lo+1..=hi} (m, i)_l`.
fn band(l: u32, m: u32, lo: u32, hi: u32) -> u64 {
    ((lo + 1)..=hi)
        .map(|i| lary_weight_count(m, i, l).unwrap_or(0))
        .sum()
}

fn q_conditions(q: u32, l: u32) -> Vec<Condition> {
    vec![
        Condition::new("q odd", q % 2 == 1, format!("q = {q}")),
        Condition::new(
            "l | q-1",
            l >= 1 && (q.saturating_sub(1)) % l == 0,
            format!("l = {l}, q - 1 = {}", q.saturating_sub(1)),
        ),
    ]
}

/// Preconditions of the unit-memory binary construction (and its dual).
pub fn unit_memory_binary_conditions(q: u32, m: u32, r: u32, u: u32) -> Vec<Condition> {
    let mut c = q_conditions(q, 2);
    c.push(Condition::new("m >= 3", m >= 3, format!("m = {m}")));
    c.push(Condition::new("r >= 1", r >= 1, format!("r = {r}")));
    c.push(Condition::new("r < u", r < u, format!("r = {r}, u = {u}")));
    c.push(Condition::new("u < m", u < m, format!("u = {u}, m = {m}")));
    if r < u && u < m {
        let tail = band(2, m, u, m);
        let lower = band(2, m, r, u);
        c.push(Condition::new(
            "tail >= band",
            tail >= lower,
            format!(
                "Σ_{{i={}..{m}}} C({m},i) = {tail} vs Σ_{{i={}..{u}}} C({m},i) = {lower}",
                u + 1,
                r + 1
            ),
        ));
    }
    c
}

/// Preconditions of the two-memory binary construction.
pub fn two_memory_binary_conditions(q: u32, m: u32, r: u32, v: u32, u: u32) -> Vec<Condition> {
    let mut c = q_conditions(q, 2);
    c.push(Condition::new("m >= 4", m >= 4, format!("m = {m}")));
    c.push(Condition::new("r >= 1", r >= 1, format!("r = {r}")));
    c.push(Condition::new("r < v", r < v, format!("r = {r}, v = {v}")));
    c.push(Condition::new("v < u", v < u, format!("v = {v}, u = {u}")));
    c.push(Condition::new("u < m", u < m, format!("u = {u}, m = {m}")));
    if r < v && v < u && u < m {
        let tail = band(2, m, u, m);
        let low = band(2, m, r, v);
        let mid = band(2, m, v, u);
        c.push(Condition::new(
            "tail >= lower band",
            tail >= low,
            format!(
                "Σ_{{i={}..{m}}} = {tail} vs Σ_{{i={}..{v}}} = {low}",
                u + 1,
                r + 1
            ),
        ));
        c.push(Condition::new(
            "lower band >= middle band",
            low >= mid,
            format!(
                "Σ_{{i={}..{v}}} = {low} vs Σ_{{i={}..{u}}} = {mid}",
                r + 1,
                v + 1
            ),
        ));
    }
    c
}

/// Preconditions of the unit-memory `l`-ary construction. The tail sum runs
/// up to the largest weight `m(l-1)`.
pub fn unit_memory_lary_conditions(q: u32, l: u32, m: u32, r: u32, u: u32) -> Vec<Condition> {
    let mut c = q_conditions(q, l);
    c.push(Condition::new("m >= 3", m >= 3, format!("m = {m}")));
    c.push(Condition::new("l >= 3", l >= 3, format!("l = {l}")));
    c.push(Condition::new("r >= 1", r >= 1, format!("r = {r}")));
    c.push(Condition::new("r < u", r < u, format!("r = {r}, u = {u}")));
    let top = m * l.saturating_sub(1);
    c.push(Condition::new(
        "u < m(l-1)",
        u < top,
        format!("u = {u}, m(l-1) = {top}"),
    ));
    if l >= 2 && r < u && u < top {
        let tail = band(l, m, u, top);
        let lower = band(l, m, r, u);
        c.push(Condition::new(
            "tail >= band",
            tail >= lower,
            format!(
                "Σ_{{i={}..{top}}} ({m},i)_{l} = {tail} vs Σ_{{i={}..{u}}} ({m},i)_{l} = {lower}",
                u + 1,
                r + 1
            ),
        ));
    }
    c
}

/// Literal variants of the printed conditions, for reporting alongside the
/// governing ones: the strict inequality of the introduction's parameter list
/// for the binary families, and the tail sum truncated at `m` for the
/// `l`-ary family.
pub fn literal_conditions(p: &Provenance) -> Vec<Condition> {
    let (l, m, r, u) = (p.l, p.m, p.r, p.u);
    match p.construction {
        Construction::UnitMemoryBinary | Construction::DualUnitMemoryBinary if r < u && u < m => {
            let tail = band(2, m, u, m);
            let lower = band(2, m, r, u);
            vec![Condition::new(
                "tail > band (strict)",
                tail > lower,
                format!("{tail} > {lower}"),
            )]
        }
        Construction::UnitMemoryLary if r < u => {
            let upper = m.min(m * (l - 1));
            let tail = if u < upper { band(l, m, u, upper) } else { 0 };
            let lower = band(l, m, r, u);
            vec![Condition::new(
                "tail >= band (sum to m)",
                tail >= lower,
                format!(
                    "Σ_{{i={}..{m}}} ({m},i)_{l} = {tail} vs Σ_{{i={}..{u}}} ({m},i)_{l} = {lower}",
                    u + 1,
                    r + 1
                ),
            )]
        }
        _ => Vec::new(),
    }
}

/// Row counts of the weight bands defined by `cuts`.
fn band_counts(l: u32, m: u32, cuts: &[u32]) -> Vec<u64> {
    let top = m * (l - 1);
    let mut counts = vec![band(l, m, cuts[0], top)];
    for w in cuts.windows(2) {
        counts.push(band(l, m, w[1], w[0]));
    }
    counts
}

/// Degree of `Σ H̃_i D^i` when slice `i` has `counts[i]` independent rows.
fn degree_from_counts(counts: &[u64]) -> u64 {
    let kappa = counts[0];
    (0..kappa)
        .map(|t| counts.iter().rposition(|&c| c > t).unwrap_or(0) as u64)
        .sum()
}

fn check_cuts(l: u32, m: u32, cuts: &[u32]) -> Result<()> {
    if cuts.is_empty() {
        return Err(Error::precondition(
            "cuts nonempty",
            "at least one cut is required",
        ));
    }
    if l < 2 {
        return Err(Error::precondition("l >= 2", format!("l = {l}")));
    }
    if cuts.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::precondition(
            "cuts descending",
            format!("cuts {cuts:?} are not strictly descending"),
        ));
    }
    if cuts[0] >= m * (l - 1) {
        return Err(Error::precondition(
            "u < m(l-1)",
            format!(
                "largest cut {} must be below m(l-1) = {}",
                cuts[0],
                m * (l - 1)
            ),
        ));
    }
    Ok(())
}

/// Designed parameters of the primal code cut at `cuts`, by arithmetic only.
pub fn designed_from_cuts(l: u32, m: u32, cuts: &[u32]) -> Result<DesignedParams> {
    check_cuts(l, m, cuts)?;
    let counts = band_counts(l, m, cuts);
    let kappa = counts[0];
    if let Some((i, &c)) = counts.iter().enumerate().skip(1).find(|(_, &c)| c > kappa) {
        return Err(Error::RankCondition {
            slice: i,
            detail: format!("rank {c} exceeds kappa = {kappa}"),
        });
    }
    let r = *cuts.last().unwrap();
    Ok(DesignedParams {
        n: (l as u64).pow(m),
        k: kappa,
        degree: degree_from_counts(&counts),
        memory: Some(counts.len() as u64 - 1),
        df_lower: designed_dual_distance(l, m, r)?,
        bound: BoundKind::Primal,
    })
}

/// `(2^m, 2^m - s_m(u), s_m(u) - s_m(r); 1, d_f >= 2^(r+1))`.
pub fn designed_unit_memory_binary(m: u32, r: u32, u: u32) -> Result<DesignedParams> {
    first_failure(&unit_memory_binary_conditions(3, m, r, u))?;
    Ok(DesignedParams {
        n: 1 << m,
        k: (1 << m) - binary_dim(m, u)?,
        degree: binary_dim(m, u)? - binary_dim(m, r)?,
        memory: Some(1),
        df_lower: 1 << (r + 1),
        bound: BoundKind::Primal,
    })
}

/// `(2^m, s_m(u), s_m(u) - s_m(r); μ, d_f >= 2^(m-u) + 1)`.
pub fn designed_dual_unit_memory_binary(m: u32, r: u32, u: u32) -> Result<DesignedParams> {
    first_failure(&unit_memory_binary_conditions(3, m, r, u))?;
    Ok(DesignedParams {
        n: 1 << m,
        k: binary_dim(m, u)?,
        degree: binary_dim(m, u)? - binary_dim(m, r)?,
        memory: None,
        df_lower: (1 << (m - u)) + 1,
        bound: BoundKind::Dual,
    })
}

/// Two-memory parameters; the degree is the row-degree sum of the assembled
/// generator (see [`stated_two_memory_degree`] for the printed formula).
pub fn designed_two_memory_binary(m: u32, r: u32, v: u32, u: u32) -> Result<DesignedParams> {
    first_failure(&two_memory_binary_conditions(3, m, r, v, u))?;
    designed_from_cuts(2, m, &[u, v, r])
}

/// `Σ_{i=r+1..v} C(m, i)`, the rank of the `D^2` slice.
pub fn stated_two_memory_degree(m: u32, r: u32, v: u32) -> u64 {
    band(2, m, r, v)
}

/// `(l^m, l^m - S_m(u), S_m(u) - S_m(r); 1, d_f >= (b+2) l^a)`.
pub fn designed_unit_memory_lary(q: u32, l: u32, m: u32, r: u32, u: u32) -> Result<DesignedParams> {
    first_failure(&unit_memory_lary_conditions(q, l, m, r, u))?;
    let n = (l as u64).pow(m);
    Ok(DesignedParams {
        n,
        k: n - lary_dim(m, u, l)?,
        degree: lary_dim(m, u, l)? - lary_dim(m, r, l)?,
        memory: Some(1),
        df_lower: designed_dual_distance(l, m, r)?,
        bound: BoundKind::Primal,
    })
}

/// Cuts `H` into consecutive row blocks of the given sizes.
pub fn split_parity_check(h: &MatrixFq, row_counts: &[usize]) -> Result<Vec<MatrixFq>> {
    let total: usize = row_counts.iter().sum();
    if total != h.rows() || row_counts.iter().any(|&c| c == 0) {
        return Err(Error::DimensionMismatch(format!(
            "row counts {row_counts:?} do not partition {} rows",
            h.rows()
        )));
    }
    let mut start = 0;
    row_counts
        .iter()
        .map(|&c| {
            let idx: Vec<usize> = (start..start + c).collect();
            start += c;
            h.take_rows(&idx)
        })
        .collect()
}

/// `G(D) = Σ H̃_i D^i` with each slice padded to `κ = rank H_0` rows.
pub fn assemble_generator(slices: &[MatrixFq]) -> Result<PolyMatrix> {
    let first = slices
        .first()
        .ok_or_else(|| Error::DimensionMismatch("no slices".into()))?;
    let kappa = first.rank();
    if kappa != first.rows() {
        return Err(Error::RankCondition {
            slice: 0,
            detail: format!("H_0 has {} rows but rank {kappa}", first.rows()),
        });
    }
    let mut padded = Vec::with_capacity(slices.len());
    for (i, s) in slices.iter().enumerate() {
        let rank = s.rank();
        if rank > kappa || s.rows() > kappa {
            return Err(Error::RankCondition {
                slice: i,
                detail: format!("{} rows of rank {rank} against kappa = {kappa}", s.rows()),
            });
        }
        padded.push(s.pad_zero_rows(kappa)?);
    }
    PolyMatrix::from_coefficients(&padded)
}

fn build_record(
    field: &FieldSpec,
    construction: Construction,
    l: u32,
    m: u32,
    cuts: &[u32],
    v: Option<u32>,
) -> Result<ConvRecord> {
    check_cuts(l, m, cuts)?;
    let r = *cuts.last().unwrap();
    let code = build_char_code(field, l, m, r)?;
    let top = m * (l - 1);
    let mut bounds = vec![(cuts[0] + 1, top)];
    for w in cuts.windows(2) {
        bounds.push((w[1] + 1, w[0]));
    }
    let counts: Vec<usize> = bounds
        .iter()
        .map(|&(lo, hi)| code.rows_in_weight_band(lo, hi))
        .collect();
    let slices = split_parity_check(&code.parity_check, &counts)?;
    let generator = assemble_generator(&slices)?;
    let params = generator.params()?;

    let mut start = 0;
    let infos = counts
        .iter()
        .zip(&bounds)
        .map(|(&c, &(lo, hi))| {
            let info = SliceInfo {
                start,
                end: start + c,
                weight_min: lo,
                weight_max: hi,
            };
            start += c;
            info
        })
        .collect();

    Ok(ConvRecord {
        provenance: Provenance {
            construction,
            q: field.q(),
            l,
            m,
            r,
            u: cuts[0],
            v,
            cuts: cuts.to_vec(),
        },
        designed: DesignedParams {
            n: generator.cols() as u64,
            k: generator.rows() as u64,
            degree: params.degree as u64,
            memory: Some(params.memory as u64),
            df_lower: designed_dual_distance(l, m, r)?,
            bound: BoundKind::Primal,
        },
        kappa: generator.rows(),
        slices: infos,
        generator,
        notes: Vec::new(),
    })
}

fn expect_params(rec: &ConvRecord, formula: &DesignedParams) -> Result<()> {
    if &rec.designed != formula {
        return Err(Error::Parameter(format!(
            "constructed {} disagrees with the parameter formula {}",
            rec.designed.tuple(),
            formula.tuple()
        )));
    }
    Ok(())
}

/// Unit-memory code from `C_q(r, m)` split at weight `u`.
pub fn construct_unit_memory_binary(
    field: &FieldSpec,
    m: u32,
    r: u32,
    u: u32,
) -> Result<ConvRecord> {
    first_failure(&unit_memory_binary_conditions(field.q(), m, r, u))?;
    let rec = build_record(field, Construction::UnitMemoryBinary, 2, m, &[u, r], None)?;
    expect_params(&rec, &designed_unit_memory_binary(m, r, u)?)?;
    Ok(rec)
}

/// Parameter certificate for the dual of a unit-memory binary record.
pub fn dual_record(rec: &ConvRecord) -> Result<ConvRecord> {
    if rec.provenance.construction != Construction::UnitMemoryBinary {
        return Err(Error::WrongProvenance {
            expected: "t2",
            found: rec.provenance.construction.to_string(),
        });
    }
    let p = &rec.provenance;
    let mut out = rec.clone();
    out.provenance.construction = Construction::DualUnitMemoryBinary;
    out.designed = designed_dual_unit_memory_binary(p.m, p.r, p.u)?;
    Ok(out)
}

/// Two-memory code: slices `> u`, `(v, u]`, `(r, v]`.
pub fn construct_two_memory_binary(
    field: &FieldSpec,
    m: u32,
    r: u32,
    v: u32,
    u: u32,
) -> Result<ConvRecord> {
    first_failure(&two_memory_binary_conditions(field.q(), m, r, v, u))?;
    let mut rec = build_record(
        field,
        Construction::TwoMemoryBinary,
        2,
        m,
        &[u, v, r],
        Some(v),
    )?;
    expect_params(&rec, &designed_two_memory_binary(m, r, v, u)?)?;
    let stated = stated_two_memory_degree(m, r, v);
    if stated != rec.designed.degree {
        rec.notes.push(format!(
            "degree: stated formula gives Σ_{{i={}..{v}}} C({m},i) = {stated}; the generator's row degrees sum to {}",
            r + 1,
            rec.designed.degree
        ));
    }
    Ok(rec)
}

/// Unit-memory code from `C_q(r, m; l)` split at weight `u`.
pub fn construct_unit_memory_lary(
    field: &FieldSpec,
    l: u32,
    m: u32,
    r: u32,
    u: u32,
) -> Result<ConvRecord> {
    first_failure(&unit_memory_lary_conditions(field.q(), l, m, r, u))?;
    let rec = build_record(field, Construction::UnitMemoryLary, l, m, &[u, r], None)?;
    expect_params(&rec, &designed_unit_memory_lary(field.q(), l, m, r, u)?)?;
    Ok(rec)
}

/// General split at descending weight cuts `u_0 > ... > u_μ = r`.
pub fn construct_multi_memory(
    field: &FieldSpec,
    l: u32,
    m: u32,
    cuts: &[u32],
) -> Result<ConvRecord> {
    first_failure(&q_conditions(field.q(), l))?;
    designed_from_cuts(l, m, cuts)?;
    let v = (cuts.len() == 3).then(|| cuts[1]);
    build_record(field, Construction::MultiMemory, l, m, cuts, v)
}

/// Rebuilds the record named by a provenance.
pub fn construct_from_provenance(field: &FieldSpec, p: &Provenance) -> Result<ConvRecord> {
    match p.construction {
        Construction::UnitMemoryBinary => construct_unit_memory_binary(field, p.m, p.r, p.u),
        Construction::DualUnitMemoryBinary => {
            dual_record(&construct_unit_memory_binary(field, p.m, p.r, p.u)?)
        }
        Construction::TwoMemoryBinary => {
            let v =
                p.v.ok_or_else(|| Error::Parameter("two-memory provenance lacks v".into()))?;
            construct_two_memory_binary(field, p.m, p.r, v, p.u)
        }
        Construction::UnitMemoryLary => construct_unit_memory_lary(field, p.l, p.m, p.r, p.u),
        Construction::MultiMemory => construct_multi_memory(field, p.l, p.m, &p.cuts),
    }
}

/// Valid `(m, r, u)` for the unit-memory binary family with `3 <= m <= max_m`.
pub fn valid_unit_memory_binary(max_m: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 3..=max_m {
        for u in 2..m {
            for r in 1..u {
                if unit_memory_binary_conditions(3, m, r, u)
                    .iter()
                    .all(|c| c.holds)
                {
                    out.push((m, r, u));
                }
            }
        }
    }
    out
}

/// Valid `(m, r, v, u)` for the two-memory binary family.
pub fn valid_two_memory_binary(max_m: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 4..=max_m {
        for u in 3..m {
            for v in 2..u {
                for r in 1..v {
                    if two_memory_binary_conditions(3, m, r, v, u)
                        .iter()
                        .all(|c| c.holds)
                    {
                        out.push((m, r, v, u));
                    }
                }
            }
        }
    }
    out
}

/// Valid `(m, r, u)` for the unit-memory `l`-ary family over GF(q).
pub fn valid_unit_memory_lary(q: u32, l: u32, max_m: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 3..=max_m {
        let top = m * (l - 1);
        for u in 2..top {
            for r in 1..u {
                if unit_memory_lary_conditions(q, l, m, r, u)
                    .iter()
                    .all(|c| c.holds)
                {
                    out.push((m, r, u));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The oracle could not decide within its budget.
    Uncertified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: detail.into(),
        });
    }

    /// No check failed; uncertified checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.status)
    }
}

/// Formula values for a provenance, independent of any matrix.
pub fn formula_params(p: &Provenance) -> Result<DesignedParams> {
    match p.construction {
        Construction::UnitMemoryBinary => designed_unit_memory_binary(p.m, p.r, p.u),
        Construction::DualUnitMemoryBinary => designed_dual_unit_memory_binary(p.m, p.r, p.u),
        Construction::TwoMemoryBinary => {
            designed_two_memory_binary(p.m, p.r, p.v.unwrap_or(0), p.u)
        }
        Construction::UnitMemoryLary => designed_unit_memory_lary(p.q, p.l, p.m, p.r, p.u),
        Construction::MultiMemory => designed_from_cuts(p.l, p.m, &p.cuts),
    }
}

/// Runs the structural checks on a record and certifies its distance bound.
pub fn verify_record(rec: &ConvRecord, budget: &Budget) -> VerificationReport {
    let mut report = VerificationReport::default();
    let g = &rec.generator;
    let f = g.field();
    let p = &rec.provenance;
    let is_dual = rec.designed.bound == BoundKind::Dual;

    let maxdeg = g.max_degree().unwrap_or(0);
    let coeffs: Vec<MatrixFq> = (0..=maxdeg).map(|i| g.coefficient_matrix(i)).collect();
    let kappa = coeffs[0].rank();
    report.push(
        "kappa",
        kappa == rec.kappa && kappa == g.rows(),
        format!(
            "rank H̃_0 = {kappa}, kappa = {}, rows = {}",
            rec.kappa,
            g.rows()
        ),
    );
    let ranks: Vec<usize> = coeffs.iter().map(MatrixFq::rank).collect();
    report.push(
        "slice-ranks",
        ranks.iter().all(|&r| r <= kappa),
        format!("ranks of H̃_i: {ranks:?}"),
    );

    match construct_from_provenance(f, p) {
        Ok(rebuilt) => report.push(
            "split-rebuild",
            &rebuilt.generator == g,
            "G(D) equals the split of the rebuilt parity-check matrix",
        ),
        Err(e) => report.push("split-rebuild", false, e.to_string()),
    }

    match (g.params(), formula_params(p)) {
        (Ok(measured), Ok(formula)) => {
            let n_ok = measured.n as u64 == formula.n && rec.designed.n == formula.n;
            let (k_measured, degree_ok, memory_ok) = if is_dual {
                (
                    measured.n as u64 - measured.k as u64,
                    measured.degree as u64 == formula.degree,
                    rec.designed.memory.is_none(),
                )
            } else {
                (
                    measured.k as u64,
                    measured.degree as u64 == formula.degree
                        && rec.designed.degree == formula.degree,
                    Some(measured.memory as u64) == formula.memory
                        && rec.designed.memory == formula.memory,
                )
            };
            let k_ok = k_measured == formula.k && rec.designed.k == formula.k;
            let bound_ok = rec.designed.df_lower == formula.df_lower;
            report.push(
                "parameters",
                n_ok && k_ok && degree_ok && memory_ok && bound_ok,
                format!(
                    "record {}, formula {}, generator n={} k={} δ={} μ={}",
                    rec.designed.tuple(),
                    formula.tuple(),
                    measured.n,
                    measured.k,
                    measured.degree,
                    measured.memory
                ),
            );
        }
        (Err(e), _) | (_, Err(e)) => report.push("parameters", false, e.to_string()),
    }

    match g.is_basic() {
        Ok(Basicness::Basic { right_inverse }) => {
            let ok = g
                .mul(&right_inverse)
                .map(|m| m.is_identity())
                .unwrap_or(false);
            report.push("basic", ok, "polynomial right inverse R with G·R = I");
        }
        Ok(Basicness::NotBasic { invariant_factor }) => report.push(
            "basic",
            false,
            format!("invariant factor {}", invariant_factor.pretty()),
        ),
        Err(e) => report.push("basic", false, e.to_string()),
    }

    match g.is_reduced() {
        Ok(ok) => report.push("reduced", ok, "rank of the high-order coefficient matrix"),
        Err(e) => report.push("reduced", false, e.to_string()),
    }

    let cert = distance::certify_bound(rec, budget);
    report.checks.push(Check {
        name: "distance-bound".into(),
        status: match cert.status {
            CertificateStatus::Certified => CheckStatus::Pass,
            CertificateStatus::Refuted => CheckStatus::Fail,
            CertificateStatus::Uncertified => CheckStatus::Uncertified,
        },
        detail: cert.detail,
    });

    if is_dual {
        report.push_window_orthogonality(rec, &coeffs);
    }
    report
}

impl VerificationReport {
    /// Every coefficient block of every row of `G(D)` is orthogonal to the
    /// block code `C_q(r, m)`, so each codeword of `C_q(r, m)`, placed at any
    /// time offset, lies in the dual of the convolutional code.
    fn push_window_orthogonality(&mut self, rec: &ConvRecord, coeffs: &[MatrixFq]) {
        let p = &rec.provenance;
        let f = rec.generator.field();
        match build_char_code(f, p.l, p.m, p.r) {
            Ok(code) => {
                let gt = code.generator.transpose();
                let ok = coeffs
                    .iter()
                    .all(|c| c.mul(&gt).map(|m| m.is_zero()).unwrap_or(false));
                self.push(
                    "dual-window-orthogonality",
                    ok,
                    format!(
                        "{} coefficient blocks against {} codewords of C_{}({},{})",
                        coeffs.len(),
                        code.k(),
                        f.q(),
                        p.r,
                        p.m
                    ),
                );
            }
            Err(e) => self.push("dual-window-orthogonality", false, e.to_string()),
        }
    }
}

/// Designed minimum distance `d_0` of `C_q(u, m; l)`, the code with parity check `H_0`.
pub fn designed_d0(p: &Provenance) -> Result<u64> {
    designed_distance(p.l, p.m, p.u)
}

/// Serialized form of a [`ConvRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDocument {
    pub format: String,
    pub provenance: Provenance,
    pub designed: DesignedParams,
    pub tuple: String,
    pub kappa: usize,
    pub slices: Vec<SliceInfo>,
    #[serde(default)]
    pub notes: Vec<String>,
    /// `p^e:modulus`.
    pub field: String,
    /// `G(D)` in the polynomial-matrix text format.
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

pub const RECORD_FORMAT: &str = "charconv-record/1";

impl ConvRecord {
    pub fn to_document(&self, verification: Option<VerificationReport>) -> RecordDocument {
        RecordDocument {
            format: RECORD_FORMAT.into(),
            provenance: self.provenance.clone(),
            designed: self.designed.clone(),
            tuple: self.designed.tuple_q(self.provenance.q),
            kappa: self.kappa,
            slices: self.slices.clone(),
            notes: self.notes.clone(),
            field: self.generator.field().to_string(),
            generator: self.generator.to_text(),
            verification,
        }
    }

    pub fn to_json(&self, verification: Option<VerificationReport>) -> String {
        serde_json::to_string_pretty(&self.to_document(verification)).expect("record serializes")
    }

    pub fn from_document(doc: &RecordDocument) -> Result<ConvRecord> {
        if doc.format != RECORD_FORMAT {
            return Err(Error::parse(
                1,
                format!("unknown record format `{}`", doc.format),
            ));
        }
        let field: FieldSpec = doc.field.parse()?;
        let generator = PolyMatrix::from_text(&doc.generator)?;
        if generator.field() != &field {
            return Err(Error::parse(
                1,
                format!(
                    "generator is over {} but the record names {field}",
                    generator.field()
                ),
            ));
        }
        if field.q() != doc.provenance.q {
            return Err(Error::parse(1, "field order disagrees with the provenance"));
        }
        Ok(ConvRecord {
            provenance: doc.provenance.clone(),
            designed: doc.designed.clone(),
            kappa: doc.kappa,
            slices: doc.slices.clone(),
            generator,
            notes: doc.notes.clone(),
        })
    }

    pub fn from_json(text: &str) -> Result<ConvRecord> {
        let doc: RecordDocument =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        ConvRecord::from_document(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charcode::binomial;
    use crate::gf::{field_of_order, make_field};

    fn gf(q: u64) -> FieldSpec {
        field_of_order(q).unwrap()
    }

    #[test]
    fn split_examples() {
        let f = gf(3);
        let code = build_char_code(&f, 2, 5, 1).unwrap();
        let h = &code.parity_check;
        let single = split_parity_check(h, &[26]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(&single[0], h);
        let two = split_parity_check(h, &[16, 10]).unwrap();
        let upper = build_char_code(&f, 2, 5, 2).unwrap();
        assert_eq!(two[0], upper.parity_check);
        assert!(code.row_weights[16..].iter().all(|&w| w == 2));
        assert_eq!(MatrixFq::vstack(&[&two[0], &two[1]]).unwrap(), *h);
        let three = split_parity_check(h, &[16, 6, 4]).unwrap();
        assert_eq!(
            three.iter().map(MatrixFq::rows).collect::<Vec<_>>(),
            vec![16, 6, 4]
        );
        assert!(split_parity_check(h, &[16, 9]).is_err());
        assert!(split_parity_check(h, &[26, 0]).is_err());
    }

    #[test]
    fn assemble_examples() {
        let f = gf(3);
        let h = build_char_code(&f, 2, 5, 1).unwrap().parity_check;
        let g = assemble_generator(&[h.clone()]).unwrap();
        assert_eq!(g.max_degree(), Some(0));
        assert_eq!(g.coefficient_matrix(0), h);

        let s = split_parity_check(&h, &[16, 10]).unwrap();
        let g = assemble_generator(&s).unwrap();
        let prm = g.params().unwrap();
        assert_eq!(prm.row_degrees.iter().filter(|&&d| d == 1).count(), 10);
        assert_eq!(prm.row_degrees.iter().filter(|&&d| d == 0).count(), 6);

        let swapped = [s[1].clone(), s[0].clone()];
        assert!(matches!(
            assemble_generator(&swapped),
            Err(Error::RankCondition { slice: 1, .. })
        ));
    }

    #[test]
    fn unit_memory_binary_examples() {
        let f = gf(3);
        let rec = construct_unit_memory_binary(&f, 6, 1, 2).unwrap();
        assert_eq!(rec.designed.tuple(), "(64, 42, 15; 1, d_f ≥ 4)");
        let rec5 = construct_unit_memory_binary(&f, 5, 1, 2).unwrap();
        assert_eq!(rec5.designed.tuple(), "(32, 16, 10; 1, d_f ≥ 4)");
        assert_eq!(rec5.kappa, 16);
        let d = designed_unit_memory_binary(7, 2, 3).unwrap();
        assert_eq!(d.tuple(), "(128, 64, 35; 1, d_f ≥ 8)");
        assert!(matches!(
            construct_unit_memory_binary(&f, 4, 1, 2),
            Err(Error::Precondition {
                name: "tail >= band",
                ..
            })
        ));
        assert!(matches!(
            construct_unit_memory_binary(&f, 5, 2, 2),
            Err(Error::Precondition { name: "r < u", .. })
        ));
    }

    #[test]
    fn dual_examples() {
        let f = gf(3);
        let rec = construct_unit_memory_binary(&f, 6, 1, 2).unwrap();
        let dual = dual_record(&rec).unwrap();
        assert_eq!(dual.designed.tuple(), "(64, 22, 15; μ, d_f ≥ 17)");
        assert_eq!(dual.designed.k + rec.designed.k, 64);
        let d5 = dual_record(&construct_unit_memory_binary(&f, 5, 1, 2).unwrap()).unwrap();
        assert_eq!(d5.designed.tuple(), "(32, 16, 10; μ, d_f ≥ 9)");
        assert!(matches!(
            dual_record(&dual),
            Err(Error::WrongProvenance { .. })
        ));
    }

    #[test]
    fn two_memory_conditions() {
        let c = two_memory_binary_conditions(3, 7, 1, 2, 3);
        assert!(
            !c.iter()
                .find(|c| c.name == "lower band >= middle band")
                .unwrap()
                .holds
        );
        let c = two_memory_binary_conditions(3, 7, 2, 3, 4);
        assert!(
            !c.iter()
                .find(|c| c.name == "tail >= lower band")
                .unwrap()
                .holds
        );
        assert!(construct_two_memory_binary(&gf(3), 7, 1, 2, 3).is_err());
    }

    #[test]
    fn two_memory_scan_matches_binomial_oracle() {
        let tail = |m: i64, a: i64, b: i64| (a..=b).map(|i| binomial(m, i)).sum::<u128>();
        let mut oracle = Vec::new();
        for m in 4..=10u32 {
            let mi = m as i64;
            for u in 3..m {
                for v in 2..u {
                    for r in 1..v {
                        let (ui, vi, ri) = (u as i64, v as i64, r as i64);
                        let t = tail(mi, ui + 1, mi);
                        let low = tail(mi, ri + 1, vi);
                        let mid = tail(mi, vi + 1, ui);
                        if t >= low && low >= mid {
                            oracle.push((m, r, v, u));
                        }
                    }
                }
            }
        }
        assert_eq!(valid_two_memory_binary(10), oracle);
        assert!(!oracle.is_empty());
    }

    #[test]
    fn two_memory_record_degree_note() {
        let f = gf(3);
        let (m, r, v, u) = valid_two_memory_binary(8)[0];
        let rec = construct_two_memory_binary(&f, m, r, v, u).unwrap();
        assert_eq!(rec.designed.memory, Some(2));
        let h2 = stated_two_memory_degree(m, r, v);
        assert_eq!(rec.designed.degree, 2 * h2);
        assert_eq!(rec.notes.len(), 1);
        assert!(verify_record(&rec, &Budget::default()).passed());
    }

    #[test]
    fn lary_example() {
        let f = gf(7);
        let rec = construct_unit_memory_lary(&f, 3, 3, 1, 2).unwrap();
        assert_eq!(rec.designed.tuple(), "(27, 17, 6; 1, d_f ≥ 3)");
        assert_eq!(rec.designed.k + lary_dim(3, 2, 3).unwrap(), 27);
        // d⊥ agrees with the designed distance of the reflected code C_q(4, 3; 3).
        assert_eq!(designed_distance(3, 3, 4).unwrap(), 3);
        assert!(construct_unit_memory_lary(&gf(5), 3, 3, 1, 2).is_err());
    }

    #[test]
    fn literal_lary_condition_reported() {
        let p = Provenance {
            construction: Construction::UnitMemoryLary,
            q: 7,
            l: 3,
            m: 3,
            r: 1,
            u: 2,
            v: None,
            cuts: vec![2, 1],
        };
        let lit = literal_conditions(&p);
        // Σ_{i=3..3} (3,i)_3 = 7 >= (3,2)_3 = 6
        assert_eq!(lit.len(), 1);
        assert!(lit[0].holds);
        let p = Provenance {
            u: 3,
            r: 2,
            cuts: vec![3, 2],
            ..p
        };
        assert!(!literal_conditions(&p)[0].holds);
    }

    #[test]
    fn multi_memory_specializes() {
        let f = gf(5);
        let a = construct_unit_memory_binary(&f, 6, 2, 3).unwrap();
        let b = construct_multi_memory(&f, 2, 6, &[3, 2]).unwrap();
        assert_eq!(a.generator.to_text(), b.generator.to_text());
        assert_eq!(a.designed, b.designed);

        let (m, r, v, u) = valid_two_memory_binary(8)[0];
        let t3 = construct_two_memory_binary(&f, m, r, v, u).unwrap();
        let mm = construct_multi_memory(&f, 2, m, &[u, v, r]).unwrap();
        assert_eq!(t3.generator, mm.generator);

        let d = designed_from_cuts(2, 9, &[3, 2, 1]).unwrap();
        assert_eq!(d.k, 382);
        assert_eq!(band_counts(2, 9, &[3, 2, 1]), vec![382, 84, 36]);
        assert_eq!(d.memory, Some(2));
        assert_eq!(d.degree, 2 * 36 + (84 - 36));

        assert!(construct_multi_memory(&f, 2, 5, &[1, 2]).is_err());
        assert!(matches!(
            construct_multi_memory(&f, 2, 5, &[3, 1]),
            Err(Error::RankCondition { slice: 1, .. })
        ));
    }

    #[test]
    fn record_json_round_trip() {
        let f = gf(5);
        let rec = construct_unit_memory_binary(&f, 5, 1, 2).unwrap();
        let text = rec.to_json(None);
        let back = ConvRecord::from_json(&text).unwrap();
        assert_eq!(back.generator, rec.generator);
        assert_eq!(back.designed, rec.designed);
        assert_eq!(back.to_json(None), text);
        assert!(matches!(
            ConvRecord::from_json("{"),
            Err(Error::Parse { .. })
        ));
        let bad = text.replace("charconv-record/1", "other");
        assert!(ConvRecord::from_json(&bad).is_err());
    }

    #[test]
    fn single_slice_record_verifies() {
        let f = gf(3);
        let rec = construct_multi_memory(&f, 2, 3, &[1]).unwrap();
        assert_eq!(rec.designed.memory, Some(0));
        assert_eq!(rec.designed.degree, 0);
        let rep = verify_record(&rec, &Budget::default());
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn corrupted_record_fails() {
        let f = gf(3);
        let rec = construct_unit_memory_binary(&f, 5, 1, 2).unwrap();
        let g = &rec.generator;
        let entries = (0..g.rows() * g.cols())
            .map(|idx| {
                let (i, j) = (idx / g.cols(), idx % g.cols());
                if i == 12 {
                    crate::polymat::Poly::zero()
                } else {
                    g.get(i, j).clone()
                }
            })
            .collect();
        let mut bad = rec.clone();
        bad.generator = PolyMatrix::new(&f, g.rows(), g.cols(), entries).unwrap();
        let rep = verify_record(&bad, &Budget::default());
        assert!(!rep.passed());
        assert_eq!(rep.status("kappa"), Some(CheckStatus::Fail));
        assert_eq!(rep.status("basic"), Some(CheckStatus::Fail));
    }

    #[test]
    fn records_verify_across_small_sweep() {
        for q in [3u64, 5, 7, 9] {
            let f = gf(q);
            for (m, r, u) in valid_unit_memory_binary(5) {
                let rec = construct_unit_memory_binary(&f, m, r, u).unwrap();
                let rep = verify_record(&rec, &Budget::default());
                assert!(rep.passed(), "q={q} m={m} r={r} u={u}: {rep:?}");
                let dual = dual_record(&rec).unwrap();
                let rep = verify_record(&dual, &Budget::default());
                assert!(rep.passed(), "dual q={q} m={m}: {rep:?}");
                assert_eq!(
                    rep.status("dual-window-orthogonality"),
                    Some(CheckStatus::Pass)
                );
            }
        }
        let f = make_field(7, 1).unwrap();
        for (m, r, u) in valid_unit_memory_lary(7, 3, 3) {
            let rec = construct_unit_memory_lary(&f, 3, m, r, u).unwrap();
            assert!(verify_record(&rec, &Budget::default()).passed());
        }
    }

    #[test]
    fn primal_bound_depends_only_on_r() {
        for (m, r, u) in valid_unit_memory_binary(10) {
            let d = designed_unit_memory_binary(m, r, u).unwrap();
            assert_eq!(d.df_lower, 1 << (r + 1));
            assert_eq!(designed_from_cuts(2, m, &[u, r]).unwrap(), d);
        }
        for (m, r, v, u) in valid_two_memory_binary(10) {
            assert_eq!(
                designed_two_memory_binary(m, r, v, u).unwrap().df_lower,
                1 << (r + 1)
            );
        }
    }
}
