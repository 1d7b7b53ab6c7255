//! Minimum distance of block codes and free distance of convolutional codes.
//!
//! Block-code routes: codeword enumeration, smallest linearly dependent column
//! set of a parity-check matrix, and a direct low-weight support search. Free
//! distance: Dijkstra over the controller trellis (exact) or a bounded
//! depth-first search (upper bound only).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::charcode::{build_char_code, designed_distance, CharCode};
use crate::convo::{BoundKind, ConvRecord};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matfq::{axpy, MatrixFq};
use crate::polymat::{encode, weight, Poly, PolyMatrix};

/// Work limits for the searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Codewords or coefficient patterns visited by enumeration routes and
    /// trellis edges.
    pub codewords: u64,
    /// Column subsets visited by the dependent-columns search.
    pub subsets: u64,
    /// Trellis states, or nodes of the bounded search.
    pub nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            codewords: 10_000_000,
            subsets: 10_000_000,
            nodes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceKind {
    Exact,
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    DependentColumns,
    SupportEnumeration,
    TrellisSearch,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// A nonzero codeword given by its support and the values there.
    Block {
        support: Vec<usize>,
        values: Vec<u32>,
    },
    /// Input polynomials (`c0,c1,...`) whose encoding attains the weight.
    Convolutional { input: Vec<String>, weight: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: usize,
    pub kind: DistanceKind,
    pub method: Method,
    pub weight_cap: Option<usize>,
    pub degree_cap: Option<usize>,
    pub witness: Option<Witness>,
}

impl DistanceResult {
    fn new(value: usize, kind: DistanceKind, method: Method) -> Self {
        DistanceResult {
            value,
            kind,
            method,
            weight_cap: None,
            degree_cap: None,
            witness: None,
        }
    }
}

fn block_witness(word: &[u32]) -> Witness {
    let support: Vec<usize> = (0..word.len()).filter(|&i| word[i] != 0).collect();
    let values = support.iter().map(|&i| word[i]).collect();
    Witness::Block { support, values }
}

fn hamming(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

fn saturating_pow(base: u64, exp: u64) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Number of nonzero codewords up to scalar multiples, `(q^k - 1)/(q - 1)`.
pub fn enumeration_cost(q: u32, k: usize) -> u64 {
    let total = saturating_pow(q as u64, k as u64);
    if total == u64::MAX {
        u64::MAX
    } else {
        (total - 1) / (q as u64 - 1)
    }
}

/// `Σ_{w=1..=cap} C(n, w)`, saturating.
pub fn subset_cost(n: usize, cap: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u128 = 1;
    for w in 1..=cap.min(n) {
        c = c * (n - w + 1) as u128 / w as u128;
        total = total.saturating_add(c.min(u64::MAX as u128) as u64);
    }
    total
}

/// Minimum weight over the row space of `g` by visiting one codeword per
/// projective point.
pub fn min_distance_enumeration(g: &MatrixFq, budget: &Budget) -> Result<DistanceResult> {
    let f = g.field().clone();
    let k = g.rows();
    if k == 0 || g.rank() == 0 {
        return Err(Error::Parameter(
            "the zero code has no minimum distance".into(),
        ));
    }
    let cost = enumeration_cost(f.q(), k);
    if cost > budget.codewords {
        return Err(Error::BudgetExceeded {
            what: "codeword enumeration",
            needed: cost,
            budget: budget.codewords,
        });
    }
    let n = g.cols();
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut stack: Vec<Vec<u32>> = vec![vec![0; n]; k + 1];

    fn walk(
        f: &FieldSpec,
        g: &MatrixFq,
        i: usize,
        stack: &mut Vec<Vec<u32>>,
        best: &mut Option<(usize, Vec<u32>)>,
    ) {
        let k = g.rows();
        if i == k {
            let w = hamming(&stack[k]);
            if w > 0 && best.as_ref().map_or(true, |(b, _)| w < *b) {
                *best = Some((w, stack[k].clone()));
            }
            return;
        }
        for c in f.elements() {
            let mut next = stack[i].clone();
            axpy(f, &mut next, c, g.row(i));
            stack[i + 1] = next;
            walk(f, g, i + 1, stack, best);
        }
    }

    for lead in 0..k {
        stack[lead + 1] = g.row(lead).to_vec();
        walk(&f, g, lead + 1, &mut stack, &mut best);
    }
    let (value, word) = best.ok_or_else(|| Error::Parameter("all codewords are zero".into()))?;
    let mut res = DistanceResult::new(value, DistanceKind::Exact, Method::Enumeration);
    res.witness = Some(block_witness(&word));
    Ok(res)
}

struct Echelon {
    /// Reduced vector, pivot position, combination over the chosen columns.
    basis: Vec<(Vec<u32>, usize, Vec<u32>)>,
}

impl Echelon {
    /// Reduces `col` against the basis; returns the residual and the
    /// combination (with the new column at position `slot`).
    fn reduce(&self, f: &FieldSpec, col: &[u32], slot: usize) -> (Vec<u32>, Vec<u32>) {
        let mut v = col.to_vec();
        let mut combo = vec![0u32; slot + 1];
        combo[slot] = 1;
        for (b, p, bc) in &self.basis {
            if v[*p] != 0 {
                let c = f.neg(f.div(v[*p], b[*p]).expect("pivot is nonzero"));
                axpy(f, &mut v, c, b);
                axpy(f, &mut combo[..bc.len()], c, bc);
            }
        }
        (v, combo)
    }
}

/// Smallest set of linearly dependent columns of `h`, searched by subset size
/// up to `w_cap`. For a parity-check matrix this is the minimum distance of
/// the code, and the dependency is a minimum-weight codeword.
///
/// Returns `Exact` with a witness when a set is found, `AtLeast w_cap + 1`
/// when none exists up to the cap, and `AtLeast w` when the subset budget
/// runs out while scanning size `w`.
pub fn min_dependent_columns(
    h: &MatrixFq,
    w_cap: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    let f = h.field().clone();
    let n = h.cols();
    let cols: Vec<Vec<u32>> = h.transpose().row_iter().map(|r| r.to_vec()).collect();
    let mut visited: u64 = 0;

    struct Search<'a> {
        f: &'a FieldSpec,
        cols: &'a [Vec<u32>],
        chosen: Vec<usize>,
        ech: Echelon,
        visited: &'a mut u64,
        limit: u64,
    }

    enum Step {
        Found(Vec<usize>, Vec<u32>),
        Exhausted,
        OutOfBudget,
    }

    impl Search<'_> {
        fn dfs(&mut self, level: usize, start: usize, w: usize) -> Step {
            let n = self.cols.len();
            for c in start..=(n - (w - level)) {
                *self.visited += 1;
                if *self.visited > self.limit {
                    return Step::OutOfBudget;
                }
                let (v, combo) = self.ech.reduce(self.f, &self.cols[c], level);
                let pivot = v.iter().position(|&x| x != 0);
                match pivot {
                    None if level == w - 1 => {
                        let mut set = self.chosen.clone();
                        set.push(c);
                        return Step::Found(set, combo);
                    }
                    // A smaller dependent set would have been found already.
                    None => continue,
                    Some(_) if level == w - 1 => continue,
                    Some(p) => {
                        self.chosen.push(c);
                        self.ech.basis.push((v, p, combo));
                        let step = self.dfs(level + 1, c + 1, w);
                        self.ech.basis.pop();
                        self.chosen.pop();
                        if !matches!(step, Step::Exhausted) {
                            return step;
                        }
                    }
                }
            }
            Step::Exhausted
        }
    }

    for w in 1..=w_cap.min(n) {
        let mut s = Search {
            f: &f,
            cols: &cols,
            chosen: Vec::new(),
            ech: Echelon { basis: Vec::new() },
            visited: &mut visited,
            limit: budget.subsets,
        };
        match s.dfs(0, 0, w) {
            Step::Found(set, combo) => {
                let lead = f.inv(combo[0])?;
                let values = combo.iter().map(|&c| f.mul(c, lead)).collect();
                let mut res = DistanceResult::new(w, DistanceKind::Exact, Method::DependentColumns);
                res.weight_cap = Some(w_cap);
                res.witness = Some(Witness::Block {
                    support: set,
                    values,
                });
                return Ok(res);
            }
            Step::OutOfBudget => {
                let mut res =
                    DistanceResult::new(w, DistanceKind::AtLeast, Method::DependentColumns);
                res.weight_cap = Some(w_cap);
                return Ok(res);
            }
            Step::Exhausted => {}
        }
    }
    let mut res = DistanceResult::new(
        w_cap.min(n) + 1,
        DistanceKind::AtLeast,
        Method::DependentColumns,
    );
    res.weight_cap = Some(w_cap);
    Ok(res)
}

/// Minimum weight of a nonzero `x` with `h x^T = 0`, found by trying every
/// support of size `w <= w_cap` with every pattern of nonzero values (first
/// value fixed to 1).
pub fn min_distance_low_weight(
    h: &MatrixFq,
    w_cap: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    let f = h.field().clone();
    let n = h.cols();
    let cols: Vec<Vec<u32>> = h.transpose().row_iter().map(|r| r.to_vec()).collect();
    let nonzero: Vec<u32> = f.elements().filter(|&a| a != 0).collect();
    let mut visited: u64 = 0;

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        f: &FieldSpec,
        cols: &[Vec<u32>],
        nonzero: &[u32],
        syndrome: &[u32],
        level: usize,
        start: usize,
        w: usize,
        support: &mut Vec<(usize, u32)>,
        visited: &mut u64,
        limit: u64,
    ) -> Option<bool> {
        let n = cols.len();
        for c in start..=(n - (w - level)) {
            let values: &[u32] = if level == 0 { &nonzero[..1] } else { nonzero };
            for &a in values {
                *visited += 1;
                if *visited > limit {
                    return None;
                }
                let mut s = syndrome.to_vec();
                axpy(f, &mut s, a, &cols[c]);
                support.push((c, a));
                if level == w - 1 {
                    if s.iter().all(|&x| x == 0) {
                        return Some(true);
                    }
                } else if dfs(
                    f,
                    cols,
                    nonzero,
                    &s,
                    level + 1,
                    c + 1,
                    w,
                    support,
                    visited,
                    limit,
                )? {
                    return Some(true);
                }
                support.pop();
            }
        }
        Some(false)
    }

    for w in 1..=w_cap.min(n) {
        let mut support = Vec::new();
        let zero = vec![0u32; h.rows()];
        match dfs(
            &f,
            &cols,
            &nonzero,
            &zero,
            0,
            0,
            w,
            &mut support,
            &mut visited,
            budget.codewords,
        ) {
            Some(true) => {
                let mut res =
                    DistanceResult::new(w, DistanceKind::Exact, Method::SupportEnumeration);
                res.weight_cap = Some(w_cap);
                res.witness = Some(Witness::Block {
                    support: support.iter().map(|p| p.0).collect(),
                    values: support.iter().map(|p| p.1).collect(),
                });
                return Ok(res);
            }
            Some(false) => {}
            None => {
                let mut res =
                    DistanceResult::new(w, DistanceKind::AtLeast, Method::SupportEnumeration);
                res.weight_cap = Some(w_cap);
                return Ok(res);
            }
        }
    }
    let mut res = DistanceResult::new(
        w_cap.min(n) + 1,
        DistanceKind::AtLeast,
        Method::SupportEnumeration,
    );
    res.weight_cap = Some(w_cap);
    Ok(res)
}

/// Exact minimum distance of a code given both matrices, by whichever
/// exhaustive route is cheaper.
pub fn min_distance_of(
    parity: &MatrixFq,
    generator: &MatrixFq,
    budget: &Budget,
) -> Result<DistanceResult> {
    let q = generator.field().q();
    let n = generator.cols();
    let k = generator.rank();
    if enumeration_cost(q, generator.rows()) <= budget.codewords {
        return min_distance_enumeration(generator, budget);
    }
    // Singleton: d <= n - k + 1.
    let res = min_dependent_columns(parity, n - k + 1, budget)?;
    if res.kind != DistanceKind::Exact {
        return Err(Error::BudgetExceeded {
            what: "dependent-columns search",
            needed: subset_cost(n, res.value),
            budget: budget.subsets,
        });
    }
    Ok(res)
}

/// Exact minimum distance of a character code.
pub fn min_distance_exact(code: &CharCode, budget: &Budget) -> Result<DistanceResult> {
    min_distance_of(&code.parity_check, &code.generator, budget)
}

/// Caps for the free-distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCaps {
    /// Largest input degree tried by the bounded search.
    pub degree_cap: usize,
    /// Codewords heavier than this are not reported.
    pub weight_cap: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            degree_cap: 4,
            weight_cap: usize::MAX,
        }
    }
}

/// Controller-form description of `G(D)`: per-row degrees and coefficient vectors.
struct Controller {
    f: FieldSpec,
    k: usize,
    n: usize,
    nu: Vec<usize>,
    /// `coef[i][s]` is the coefficient of `D^s` in row `i`.
    coef: Vec<Vec<Vec<u32>>>,
    /// Offset of row `i`'s window in the flat state.
    offset: Vec<usize>,
    delta: usize,
}

impl Controller {
    fn new(g: &PolyMatrix) -> Result<Self> {
        let params = g.params()?;
        let f = g.field().clone();
        let (k, n) = (g.rows(), g.cols());
        let nu = params.row_degrees.clone();
        let coef = (0..k)
            .map(|i| {
                (0..=nu[i])
                    .map(|s| (0..n).map(|j| g.get(i, j).coeff(s)).collect())
                    .collect()
            })
            .collect();
        let mut offset = Vec::with_capacity(k);
        let mut acc = 0;
        for &d in &nu {
            offset.push(acc);
            acc += d;
        }
        Ok(Controller {
            f,
            k,
            n,
            nu,
            coef,
            offset,
            delta: acc,
        })
    }

    /// Output block and next state for input `x` from state `win`.
    fn step(&self, win: &[u32], x: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = &self.f;
        let mut out = vec![0u32; self.n];
        let mut next = vec![0u32; self.delta];
        for i in 0..self.k {
            let o = self.offset[i];
            if x[i] != 0 {
                axpy(f, &mut out, x[i], &self.coef[i][0]);
            }
            for s in 1..=self.nu[i] {
                let a = win[o + s - 1];
                if a != 0 {
                    axpy(f, &mut out, a, &self.coef[i][s]);
                }
            }
            if self.nu[i] > 0 {
                next[o] = x[i];
                next[o + 1..o + self.nu[i]].copy_from_slice(&win[o..o + self.nu[i] - 1]);
            }
        }
        (out, next)
    }

    fn flush_weight(&self, win: &[u32]) -> usize {
        let zero = vec![0u32; self.k];
        let mut w = 0;
        let mut s = win.to_vec();
        let steps = self.nu.iter().copied().max().unwrap_or(0);
        for _ in 0..steps {
            let (out, next) = self.step(&s, &zero);
            w += hamming(&out);
            s = next;
        }
        w
    }
}

fn digits(mut idx: u64, q: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (idx % q) as u32;
            idx /= q;
            d
        })
        .collect()
}

fn index(d: &[u32], q: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * q + x as u64)
}

fn inputs_to_polys(inputs: &[Vec<u32>], k: usize) -> Vec<Poly> {
    (0..k)
        .map(|i| Poly::from_coeffs(inputs.iter().map(|x| x[i]).collect()))
        .collect()
}

fn conv_witness(g: &PolyMatrix, inputs: &[Vec<u32>]) -> Result<(usize, Witness)> {
    let u = inputs_to_polys(inputs, g.rows());
    let w = weight(&encode(&u, g)?);
    Ok((
        w,
        Witness::Convolutional {
            input: u.iter().map(Poly::to_text).collect(),
            weight: w,
        },
    ))
}

/// Free distance by Dijkstra over the `q^δ` controller states: the lightest
/// path that leaves the zero state and first returns to it.
pub fn free_distance_trellis(g: &PolyMatrix, budget: &Budget) -> Result<DistanceResult> {
    let c = Controller::new(g)?;
    let q = c.f.q() as u64;
    let states = saturating_pow(q, c.delta as u64);
    let inputs = saturating_pow(q, c.k as u64);
    if states > budget.nodes {
        return Err(Error::BudgetExceeded {
            what: "trellis states",
            needed: states,
            budget: budget.nodes,
        });
    }
    if states.saturating_mul(inputs) > budget.codewords {
        return Err(Error::BudgetExceeded {
            what: "trellis edges",
            needed: states.saturating_mul(inputs),
            budget: budget.codewords,
        });
    }
    const START: u64 = u64::MAX;
    let mut dist = vec![u64::MAX; states as usize];
    let mut pred: Vec<(u64, u64)> = vec![(START, 0); states as usize];
    let mut best: Option<(u64, u64, u64)> = None; // weight, from state, input
    let mut heap = BinaryHeap::new();
    let input_digits: Vec<Vec<u32>> = (0..inputs).map(|x| digits(x, q, c.k)).collect();
    let zero_state = vec![0u32; c.delta];

    let relax = |from: u64,
                 base: u64,
                 win: &[u32],
                 x: u64,
                 dist: &mut Vec<u64>,
                 pred: &mut Vec<(u64, u64)>,
                 heap: &mut BinaryHeap<Reverse<(u64, u64)>>,
                 best: &mut Option<(u64, u64, u64)>| {
        let (out, next) = c.step(win, &input_digits[x as usize]);
        let d = base + hamming(&out) as u64;
        let ni = index(&next, q);
        if ni == 0 {
            if best.map_or(true, |(b, _, _)| d < b) {
                *best = Some((d, from, x));
            }
        } else if d < dist[ni as usize] {
            dist[ni as usize] = d;
            pred[ni as usize] = (from, x);
            heap.push(Reverse((d, ni)));
        }
    };

    for x in 1..inputs {
        relax(
            START,
            0,
            &zero_state,
            x,
            &mut dist,
            &mut pred,
            &mut heap,
            &mut best,
        );
    }
    while let Some(Reverse((d, s))) = heap.pop() {
        if d > dist[s as usize] {
            continue;
        }
        if best.map_or(false, |(b, _, _)| d >= b) {
            break;
        }
        let win = digits(s, q, c.delta);
        for x in 0..inputs {
            relax(s, d, &win, x, &mut dist, &mut pred, &mut heap, &mut best);
        }
    }
    let (value, mut from, last) = best.ok_or(Error::NoWitness {
        weight_cap: usize::MAX,
    })?;
    let mut seq = vec![input_digits[last as usize].clone()];
    while from != START {
        let (p, x) = pred[from as usize];
        seq.push(input_digits[x as usize].clone());
        from = p;
    }
    seq.reverse();
    let (w, witness) = conv_witness(g, &seq)?;
    debug_assert_eq!(w as u64, value);
    let mut res = DistanceResult::new(value as usize, DistanceKind::Exact, Method::TrellisSearch);
    res.witness = Some(witness);
    Ok(res)
}

/// Upper bound on the free distance from inputs of degree at most
/// `caps.degree_cap`. When `q^k` is large each input block has at most one
/// nonzero symbol.
pub fn free_distance_bounded(
    g: &PolyMatrix,
    caps: &SearchCaps,
    budget: &Budget,
) -> Result<DistanceResult> {
    let c = Controller::new(g)?;
    let q = c.f.q() as u64;
    let full = saturating_pow(q, c.k as u64);
    let alphabet: Vec<Vec<u32>> = if full <= 4096 {
        (0..full).map(|x| digits(x, q, c.k)).collect()
    } else {
        let mut v = vec![vec![0u32; c.k]];
        for i in 0..c.k {
            for a in c.f.elements().filter(|&a| a != 0) {
                let mut x = vec![0u32; c.k];
                x[i] = a;
                v.push(x);
            }
        }
        v
    };

    struct Dfs<'a> {
        c: &'a Controller,
        alphabet: &'a [Vec<u32>],
        caps: &'a SearchCaps,
        nodes: u64,
        limit: u64,
        path: Vec<Vec<u32>>,
        best: Option<(usize, Vec<Vec<u32>>)>,
    }

    impl Dfs<'_> {
        fn bound(&self) -> usize {
            self.best
                .as_ref()
                .map_or(self.caps.weight_cap.saturating_add(1), |b| {
                    b.0.min(self.caps.weight_cap.saturating_add(1))
                })
        }

        fn go(&mut self, win: &[u32], acc: usize) -> bool {
            self.nodes += 1;
            if self.nodes > self.limit {
                return false;
            }
            let t = self.path.len();
            if t > 0 {
                let total = acc + self.c.flush_weight(win);
                if total < self.bound() {
                    self.best = Some((total, self.path.clone()));
                }
            }
            if t > self.caps.degree_cap {
                return true;
            }
            for (xi, x) in self.alphabet.iter().enumerate() {
                if t == 0 && xi == 0 {
                    continue;
                }
                let (out, next) = self.c.step(win, x);
                let w = acc + hamming(&out);
                if w >= self.bound() {
                    continue;
                }
                self.path.push(x.clone());
                let ok = self.go(&next, w);
                self.path.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    let mut dfs = Dfs {
        c: &c,
        alphabet: &alphabet,
        caps,
        nodes: 0,
        limit: budget.nodes,
        path: Vec::new(),
        best: None,
    };
    let zero = vec![0u32; c.delta];
    let finished = dfs.go(&zero, 0);
    match dfs.best {
        Some((value, mut inputs)) => {
            inputs.extend(
                std::iter::repeat(vec![0u32; c.k]).take(c.nu.iter().copied().max().unwrap_or(0)),
            );
            let (_, witness) = conv_witness(g, &inputs)?;
            let mut res = DistanceResult::new(value, DistanceKind::AtMost, Method::BranchAndBound);
            res.degree_cap = Some(caps.degree_cap);
            res.weight_cap = Some(caps.weight_cap);
            res.witness = Some(witness);
            Ok(res)
        }
        None if finished => Err(Error::NoWitness {
            weight_cap: caps.weight_cap,
        }),
        None => Err(Error::BudgetExceeded {
            what: "bounded free-distance search",
            needed: dfs.nodes,
            budget: budget.nodes,
        }),
    }
}

/// Trellis search when the state space fits the budget, bounded search otherwise.
pub fn free_distance_search(
    g: &PolyMatrix,
    caps: &SearchCaps,
    budget: &Budget,
) -> Result<DistanceResult> {
    match free_distance_trellis(g, budget) {
        Err(Error::BudgetExceeded { .. }) => free_distance_bounded(g, caps, budget),
        other => other,
    }
}

/// Minimum output weight over all inputs of degree at most `degree_cap` with
/// `u(0) != 0`. Exponential; for cross-checking small codes.
pub fn free_distance_bruteforce(g: &PolyMatrix, degree_cap: usize) -> Result<(usize, Vec<Poly>)> {
    let f = g.field();
    let q = f.q() as u64;
    let k = g.rows();
    let len = k * (degree_cap + 1);
    let total = saturating_pow(q, len as u64);
    if total > 10_000_000 {
        return Err(Error::SizeGuard {
            what: "brute-force input space",
            size: total,
            limit: 10_000_000,
        });
    }
    let mut best: Option<(usize, Vec<Poly>)> = None;
    for idx in 1..total {
        let d = digits(idx, q, len);
        // digit t*k + i is the coefficient of D^t in u_i
        if d[..k].iter().all(|&x| x == 0) {
            continue;
        }
        let blocks: Vec<Vec<u32>> = d.chunks(k).map(|c| c.to_vec()).collect();
        let u = inputs_to_polys(&blocks, k);
        let w = weight(&encode(&u, g)?);
        if best.as_ref().map_or(true, |b| w < b.0) {
            best = Some((w, u));
        }
    }
    best.ok_or(Error::NoWitness {
        weight_cap: usize::MAX,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    Certified,
    Refuted,
    Uncertified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: CertificateStatus,
    pub detail: String,
    pub results: Vec<DistanceResult>,
}

/// Decides whether the code with the given parity-check and generator
/// matrices has minimum distance at least `target`.
pub fn certify_min_distance(
    parity: &MatrixFq,
    generator: &MatrixFq,
    target: usize,
    budget: &Budget,
) -> (CertificateStatus, Option<DistanceResult>) {
    let q = generator.field().q();
    let enum_cost = enumeration_cost(q, generator.rows());
    // Sizes below the target settle the bound; size `target` also pins the value.
    let cap = if subset_cost(parity.cols(), target) <= budget.subsets {
        target
    } else {
        target.saturating_sub(1)
    };
    let cols_cost = subset_cost(parity.cols(), cap);
    let attempt = if enum_cost <= budget.codewords && enum_cost <= cols_cost {
        min_distance_enumeration(generator, budget)
    } else if cols_cost <= budget.subsets {
        min_dependent_columns(parity, cap, budget)
    } else {
        return (CertificateStatus::Uncertified, None);
    };
    match attempt {
        Ok(res) => {
            let status = match res.kind {
                DistanceKind::Exact if res.value >= target => CertificateStatus::Certified,
                DistanceKind::Exact => CertificateStatus::Refuted,
                DistanceKind::AtLeast if res.value >= target => CertificateStatus::Certified,
                _ => CertificateStatus::Uncertified,
            };
            (status, Some(res))
        }
        Err(_) => (CertificateStatus::Uncertified, None),
    }
}

fn combine(a: CertificateStatus, b: CertificateStatus) -> CertificateStatus {
    use CertificateStatus::*;
    match (a, b) {
        (Refuted, _) | (_, Refuted) => Refuted,
        (Certified, Certified) => Certified,
        _ => Uncertified,
    }
}

/// Checks the record's free-distance lower bound against block-code distances.
///
/// Primal records: `d_f >= d⊥`, so the dual of `C_q(r, m; l)` (parity-check
/// matrix `G_C`) must have minimum distance at least the stated bound.
/// Dual records: `d_f⊥ >= min(d_0 + 1, d)` where `d_0` and `d` are the
/// distances of `C_q(u, m)` and `C_q(r, m)`.
pub fn certify_bound(rec: &ConvRecord, budget: &Budget) -> Certificate {
    let p = &rec.provenance;
    let f = rec.generator.field();
    let target = rec.designed.df_lower as usize;
    let built = |r: u32| build_char_code(f, p.l, p.m, r);
    match rec.designed.bound {
        BoundKind::Primal => {
            let code = match built(p.r) {
                Ok(c) => c,
                Err(e) => return failed(e),
            };
            let (status, res) =
                certify_min_distance(&code.generator, &code.parity_check, target, budget);
            Certificate {
                status,
                detail: format!(
                    "d⊥ of C_{}({},{};{}) against d_f ≥ {target}: {}",
                    f.q(),
                    p.r,
                    p.m,
                    p.l,
                    describe(&res)
                ),
                results: res.into_iter().collect(),
            }
        }
        BoundKind::Dual => {
            let (c0, c) = match (built(p.u), built(p.r)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return failed(e),
            };
            let t0 = target.saturating_sub(1);
            let (s0, r0) = certify_min_distance(&c0.parity_check, &c0.generator, t0, budget);
            let (s1, r1) = certify_min_distance(&c.parity_check, &c.generator, target, budget);
            let designed = designed_distance(p.l, p.m, p.r).unwrap_or(0);
            Certificate {
                status: combine(s0, s1),
                detail: format!(
                    "d_0 of C_{q}({},{}) against {t0}: {}; d of C_{q}({},{}) (designed {designed}) against {target}: {}",
                    p.u,
                    p.m,
                    describe(&r0),
                    p.r,
                    p.m,
                    describe(&r1),
                    q = f.q(),
                ),
                results: r0.into_iter().chain(r1).collect(),
            }
        }
    }
}

fn failed(e: Error) -> Certificate {
    Certificate {
        status: CertificateStatus::Uncertified,
        detail: e.to_string(),
        results: Vec::new(),
    }
}

fn describe(res: &Option<DistanceResult>) -> String {
    match res {
        None => "out of budget".into(),
        Some(r) => {
            let rel = match r.kind {
                DistanceKind::Exact => "=",
                DistanceKind::AtLeast => "≥",
                DistanceKind::AtMost => "≤",
            };
            format!("{rel} {} ({:?})", r.value, r.method)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charcode::{binary_dim, dual_reference_code};
    use crate::gf::{field_of_order, make_field};
    use proptest::prelude::*;

    fn gf(q: u64) -> FieldSpec {
        field_of_order(q).unwrap()
    }

    fn pm(f: &FieldSpec, rows: usize, cols: usize, e: &[&[u32]]) -> PolyMatrix {
        PolyMatrix::new(
            f,
            rows,
            cols,
            e.iter().map(|c| Poly::from_coeffs(c.to_vec())).collect(),
        )
        .unwrap()
    }

    /// Exhaustive weight distribution minimum over every nonzero vector of the row space.
    fn oracle_min_weight(g: &MatrixFq) -> usize {
        let f = g.field();
        let q = f.q() as u64;
        let k = g.rows();
        (1..q.pow(k as u32))
            .filter_map(|idx| {
                let msg = digits(idx, q, k);
                let w = hamming(&g.left_mul_vec(&msg).unwrap());
                (w > 0).then_some(w)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn routes_agree_on_small_char_codes() {
        let b = Budget::default();
        for q in [3u64, 5, 7] {
            let f = gf(q);
            for m in 2..=3u32 {
                for r in 0..m {
                    let code = build_char_code(&f, 2, m, r).unwrap();
                    let d = 1usize << (m - r);
                    let e = min_distance_enumeration(&code.generator, &b).unwrap();
                    assert_eq!(e.value, d);
                    if code.parity_check.rows() > 0 {
                        let c = min_dependent_columns(&code.parity_check, d + 1, &b).unwrap();
                        assert_eq!((c.value, c.kind), (d, DistanceKind::Exact));
                        let s = min_distance_low_weight(&code.parity_check, d, &b).unwrap();
                        assert_eq!(s.value, d);
                    }
                    if code.k() <= 4 {
                        assert_eq!(oracle_min_weight(&code.generator), d);
                    }
                }
            }
        }
    }

    #[test]
    fn dependent_columns_example() {
        // Dual of C_3(1,5): parity-check G_C, d⊥ = 4.
        let f = gf(3);
        let code = build_char_code(&f, 2, 5, 1).unwrap();
        let b = Budget::default();
        let none = min_dependent_columns(&code.generator, 3, &b).unwrap();
        assert_eq!((none.value, none.kind), (4, DistanceKind::AtLeast));
        let res = min_dependent_columns(&code.generator, 4, &b).unwrap();
        assert_eq!((res.value, res.kind), (4, DistanceKind::Exact));
        let Some(Witness::Block { support, values }) = res.witness else {
            panic!("witness expected")
        };
        assert_eq!(support.len(), 4);
        let mut word = vec![0u32; 32];
        for (&s, &v) in support.iter().zip(&values) {
            word[s] = v;
        }
        let syn = code
            .generator
            .mul(
                &MatrixFq::from_rows(&f, 1, &word.iter().map(|&x| vec![x]).collect::<Vec<_>>())
                    .unwrap(),
            )
            .unwrap();
        assert!(syn.is_zero());
        // and the word is in the span of H
        let stacked = MatrixFq::vstack(&[
            &code.parity_check,
            &MatrixFq::from_rows(&f, 32, &[word]).unwrap(),
        ])
        .unwrap();
        assert_eq!(stacked.rank(), code.parity_check.rank());
    }

    #[test]
    fn support_enumeration_on_lary_dual() {
        let f = gf(7);
        let code = build_char_code(&f, 3, 3, 1).unwrap();
        let res = min_distance_low_weight(&code.generator, 3, &Budget::default()).unwrap();
        assert_eq!((res.value, res.kind), (3, DistanceKind::Exact));
        assert_eq!(designed_distance(3, 3, 4).unwrap(), 3);
        let reflected = dual_reference_code(&f, 3, 3, 1).unwrap();
        assert_eq!(
            min_distance_exact(&reflected, &Budget::default())
                .unwrap()
                .value,
            3
        );
    }

    #[test]
    fn budgets_are_enforced() {
        let f = gf(3);
        let code = build_char_code(&f, 2, 5, 2).unwrap();
        let tiny = Budget {
            codewords: 10,
            subsets: 10,
            nodes: 10,
        };
        assert!(matches!(
            min_distance_enumeration(&code.generator, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
        let r = min_dependent_columns(&code.parity_check, 8, &tiny).unwrap();
        assert_eq!(r.kind, DistanceKind::AtLeast);
    }

    #[test]
    fn free_distance_known_codes() {
        let f = make_field(3, 1).unwrap();
        // [1 + D, 1 + 2D]: inputs 1 gives weight 4 and no lighter path exists.
        let g = pm(&f, 1, 2, &[&[1, 1], &[1, 2]]);
        let t = free_distance_trellis(&g, &Budget::default()).unwrap();
        assert_eq!((t.value, t.kind), (4, DistanceKind::Exact));
        let (bf, _) = free_distance_bruteforce(&g, 6).unwrap();
        assert_eq!(bf, 4);
        // Constant generator: free distance equals the block distance.
        let g = pm(&f, 1, 3, &[&[1], &[1], &[2]]);
        assert_eq!(
            free_distance_trellis(&g, &Budget::default()).unwrap().value,
            3
        );
    }

    #[test]
    fn bounded_search_reports_upper_bound() {
        let f = gf(3);
        let g = pm(&f, 1, 2, &[&[1, 1, 1], &[1, 0, 2]]);
        let exact = free_distance_trellis(&g, &Budget::default()).unwrap();
        let tiny = Budget {
            nodes: 5,
            ..Budget::default()
        };
        let b = free_distance_search(&g, &SearchCaps::default(), &tiny).unwrap();
        assert_eq!(b.kind, DistanceKind::AtMost);
        assert!(b.value >= exact.value);
        let capped = SearchCaps {
            degree_cap: 4,
            weight_cap: exact.value - 1,
        };
        assert!(matches!(
            free_distance_bounded(&g, &capped, &Budget::default()),
            Err(Error::NoWitness { .. })
        ));
    }

    #[test]
    fn certify_small_records() {
        let f = gf(3);
        let rec = crate::convo::construct_unit_memory_binary(&f, 5, 1, 2).unwrap();
        let cert = certify_bound(&rec, &Budget::default());
        assert_eq!(cert.status, CertificateStatus::Certified, "{}", cert.detail);
        assert_eq!(binary_dim(5, 1).unwrap(), 6);
    }

    fn small_generator() -> impl Strategy<Value = Vec<Vec<u32>>> {
        proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn strategies_agree_on_tiny_codes(entries in small_generator()) {
            let f = make_field(3, 1).unwrap();
            let polys: Vec<Poly> = entries.into_iter().map(Poly::from_coeffs).collect();
            prop_assume!(polys.iter().all(|p| !p.is_zero()));
            let g = PolyMatrix::new(&f, 1, 2, polys.clone()).unwrap();
            // k = 1: basic iff the entries are coprime.
            prop_assume!(polys[0].gcd(&polys[1], &f).is_unit());
            let t = free_distance_trellis(&g, &Budget::default()).unwrap();
            let (bf, _) = free_distance_bruteforce(&g, 8).unwrap();
            prop_assert_eq!(t.value, bf);
            let caps = SearchCaps { degree_cap: 8, weight_cap: usize::MAX };
            let b = free_distance_bounded(&g, &caps, &Budget::default()).unwrap();
            prop_assert_eq!(b.value, t.value);
            if let Some(Witness::Convolutional { weight: w, .. }) = t.witness {
                prop_assert_eq!(w, t.value);
            }
        }

        #[test]
        fn enumeration_matches_columns(rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 7), 1..4)) {
            let f = make_field(5, 1).unwrap();
            let g = MatrixFq::from_rows(&f, 7, &rows).unwrap();
            prop_assume!(g.rank() == g.rows());
            let h = g.kernel_basis();
            prop_assume!(h.rows() > 0);
            let e = min_distance_enumeration(&g, &Budget::default()).unwrap();
            let c = min_dependent_columns(&h, 7, &Budget::default()).unwrap();
            let s = min_distance_low_weight(&h, 7, &Budget::default()).unwrap();
            prop_assert_eq!(e.value, oracle_min_weight(&g));
            prop_assert_eq!(c.value, e.value);
            prop_assert_eq!(s.value, e.value);
        }
    }
}
