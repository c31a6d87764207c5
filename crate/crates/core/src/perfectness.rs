//! Checks of the perfectness conditions for a KR crystal.
//!
//! Condition (1) is module-theoretic and only recorded. Conditions (2)–(5)
//! are decided by exhaustive enumeration: connectivity of `B ⊗ B`, the
//! weight support and extremal vector, the minimal level of `ε`, and
//! bijectivity of `ε` and `φ` on the minimal elements.

use num_rational::Ratio;
use serde::Serialize;

use crate::affine::{classical_crystal, has_affine_structure, kr_crystal, KrCrystal};
use crate::cartan::{tau, CartanType, Family, KrIndex, Weight};
use crate::error::{KrError, Result};
use crate::minimal::{minimal_element, witness_pair_b, witness_pair_c, WitnessPair};
use crate::tableaux::{crystal_size, ClassicalCrystal, Tableau};

/// Largest `|B|` for which `B ⊗ B` is enumerated.
pub const TENSOR_LIMIT: usize = 5_000;

/// Largest predicted `|B|` accepted by [`verdict`].
pub const SIZE_LIMIT: f64 = 200_000.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ByConstruction,
    Passed,
    Failed,
    Unchecked,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionCheck {
    pub condition: u8,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Perfect { level: i64 },
    NotPerfect { condition: u8, reason: String },
    Partial { unchecked: Vec<u8> },
}

impl Verdict {
    pub fn is_perfect(&self) -> bool {
        matches!(self, Verdict::Perfect { .. })
    }
}

/// Elements sharing one value of `ε` (or `φ`).
#[derive(Clone, Debug, Serialize)]
pub struct MinimalClass {
    pub weight: Weight,
    pub elements: Vec<Tableau>,
}

/// Minimal level and the `ε`/`φ` fibres over `P^+_ℓ`, as vertex indices.
#[derive(Clone, Debug)]
pub struct Classification {
    pub min_level: i64,
    pub weights: Vec<Weight>,
    pub eps_classes: Vec<Vec<usize>>,
    pub phi_classes: Vec<Vec<usize>>,
}

impl Classification {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.eps_classes.iter().map(Vec::len).collect()
    }

    fn is_bijective(classes: &[Vec<usize>]) -> bool {
        classes.iter().all(|c| c.len() == 1)
    }

    pub fn eps_bijective(&self) -> bool {
        Self::is_bijective(&self.eps_classes)
    }

    pub fn phi_bijective(&self) -> bool {
        Self::is_bijective(&self.phi_classes)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TauTable {
    pub weights: Vec<Weight>,
    /// `permutation[j] = k` means `τ(weights[j]) = weights[k]`.
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub pair: WitnessPair,
    pub in_minimal_class: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectnessReport {
    pub idx: KrIndex,
    pub size: usize,
    pub verdict: Verdict,
    pub conditions: Vec<ConditionCheck>,
    pub predicted_perfect: bool,
    pub predicted_min_level: i64,
    pub min_level: Option<i64>,
    pub minimal_elements: Vec<MinimalClass>,
    pub phi_classes: Vec<MinimalClass>,
    pub class_sizes: Vec<usize>,
    pub tau_empirical: Option<TauTable>,
    pub tau_matches_formula: Option<bool>,
    pub witnesses: Option<WitnessCheck>,
    /// Pairs reachable from `u ⊗ u` along `f_i` arrows.
    pub directed_reach: Option<usize>,
}

impl PerfectnessReport {
    /// Whether the verdict agrees with the prediction `c_r | s`.
    /// `None` for partial verdicts.
    pub fn agrees_with_prediction(&self) -> Option<bool> {
        match &self.verdict {
            Verdict::Perfect { level } => Some(
                self.predicted_perfect && *level == self.predicted_min_level,
            ),
            Verdict::NotPerfect { .. } => Some(!self.predicted_perfect),
            Verdict::Partial { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb) as usize] = ra.min(rb);
        true
    }
}

/// `f_i` on `x ⊗ y`: acts on `x` iff `φ_i(x) > ε_i(y)`.
pub fn tensor_f(k: &KrCrystal, i: usize, x: usize, y: usize) -> Option<(usize, usize)> {
    if k.phi_i(i, x) > k.eps_i(i, y) {
        k.f(i, x).map(|x2| (x2, y))
    } else {
        k.f(i, y).map(|y2| (x, y2))
    }
}

/// `e_i` on `x ⊗ y`: acts on `y` iff `ε_i(y) > φ_i(x)`.
pub fn tensor_e(k: &KrCrystal, i: usize, x: usize, y: usize) -> Option<(usize, usize)> {
    if k.eps_i(i, y) > k.phi_i(i, x) {
        k.e(i, y).map(|y2| (x, y2))
    } else {
        k.e(i, x).map(|x2| (x2, y))
    }
}

/// Number of weakly connected components of `B ⊗ B`.
pub fn tensor_components(k: &KrCrystal) -> usize {
    let n = k.len();
    let mut uf = UnionFind::new(n * n);
    let mut comps = n * n;
    for i in 0..=k.ct().rank() {
        for x in 0..n {
            for y in 0..n {
                if let Some((x2, y2)) = tensor_f(k, i, x, y) {
                    if uf.union((x * n + y) as u32, (x2 * n + y2) as u32) {
                        comps -= 1;
                    }
                }
            }
        }
    }
    comps
}

/// Condition (2): `B ⊗ B` is connected.
pub fn check_condition_2(k: &KrCrystal) -> bool {
    tensor_components(k) == 1
}

/// Number of pairs reachable from `u ⊗ u` along `f_i` arrows.
pub fn directed_reach(k: &KrCrystal, u: usize) -> usize {
    let n = k.len();
    let mut seen = vec![false; n * n];
    let mut stack = vec![(u, u)];
    seen[u * n + u] = true;
    let mut count = 1;
    while let Some((x, y)) = stack.pop() {
        for i in 0..=k.ct().rank() {
            if let Some((x2, y2)) = tensor_f(k, i, x, y) {
                if !seen[x2 * n + y2] {
                    seen[x2 * n + y2] = true;
                    count += 1;
                    stack.push((x2, y2));
                }
            }
        }
    }
    count
}

type Q = Ratio<i64>;

/// Inverse of the classical Cartan matrix `(⟨h_i, α_j⟩)_{i,j ≥ 1}`.
fn classical_cartan_inverse(ct: &CartanType) -> Vec<Vec<Q>> {
    let n = ct.rank();
    let a = ct.cartan_matrix();
    let mut m: Vec<Vec<Q>> = (1..=n)
        .map(|i| {
            let mut row: Vec<Q> = (1..=n).map(|j| Q::from_integer(a[i][j])).collect();
            row.extend((1..=n).map(|j| Q::from_integer((i == j) as i64)));
            row
        })
        .collect();
    let zero = Q::from_integer(0);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| m[r][col] != zero)
            .expect("classical Cartan matrix is invertible");
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != zero {
                let factor = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= factor * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Data behind condition (3) with `λ = sω_r` (classical part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalCheck {
    /// Vertices of classical weight `λ`.
    pub extremal: Vec<usize>,
    /// `λ − wt(b)` is a `Z_{≥0}`-combination of classical simple roots for all `b`.
    pub below_integral: bool,
    /// The same with nonnegative rational coefficients.
    pub below_rational: bool,
}

impl ExtremalCheck {
    pub fn holds(&self) -> bool {
        self.below_integral && self.extremal.len() == 1
    }

    fn detail(&self, cl: &ClassicalCrystal) -> String {
        match (self.holds(), self.extremal.as_slice()) {
            (true, [v]) => format!("extremal element {}", cl.elements[*v]),
            _ if self.extremal.len() != 1 => {
                format!("{} elements have weight λ", self.extremal.len())
            }
            _ if self.below_rational => {
                "λ − wt(b) needs non-integral coefficients on the classical simple roots".into()
            }
            _ => "some weight is not below λ".into(),
        }
    }
}

/// Classical weight `(⟨h_1, wt⟩, …, ⟨h_n, wt⟩)` of a vertex.
fn classical_weight(cl: &ClassicalCrystal, n: usize, v: usize) -> Vec<i64> {
    (1..=n).map(|i| cl.phi(i, v) as i64 - cl.eps(i, v) as i64).collect()
}

/// Condition (3) on the classical crystal underlying `B^{r,s}`.
pub fn condition_3(cl: &ClassicalCrystal, idx: &KrIndex) -> ExtremalCheck {
    let n = idx.ct.rank();
    let inv = classical_cartan_inverse(&idx.ct);
    let mut lambda = vec![0i64; n];
    lambda[idx.r - 1] = idx.s as i64;
    let zero = Q::from_integer(0);
    let mut out = ExtremalCheck { extremal: Vec::new(), below_integral: true, below_rational: true };
    for v in 0..cl.len() {
        let wt = classical_weight(cl, n, v);
        let diff: Vec<i64> = lambda.iter().zip(&wt).map(|(a, b)| a - b).collect();
        if diff.iter().all(|&d| d == 0) {
            out.extremal.push(v);
            continue;
        }
        // diff = Σ_j c_j α_j, α_j = column j of the Cartan matrix
        for row in &inv {
            let c: Q = row.iter().zip(&diff).map(|(x, &d)| *x * d).sum();
            if c < zero {
                out.below_rational = false;
                out.below_integral = false;
            } else if !c.is_integer() {
                out.below_integral = false;
            }
        }
    }
    out
}

/// Condition (3) for an affine crystal.
pub fn check_condition_3(k: &KrCrystal) -> bool {
    condition_3(&k.classical, &k.idx).holds()
}

/// Minimal level of `ε` and the fibres of `ε`, `φ` over `P^+_ℓ`.
pub fn classify_minimal(k: &KrCrystal) -> Classification {
    let ct = k.ct();
    let min_level = (0..k.len())
        .map(|v| ct.level(k.eps(v)))
        .min()
        .unwrap_or(0);
    let weights = ct.dominant_weights(min_level);
    let mut eps_classes = vec![Vec::new(); weights.len()];
    let mut phi_classes = vec![Vec::new(); weights.len()];
    let slot = |w: &Weight| weights.iter().position(|x| x == w);
    for v in 0..k.len() {
        if ct.level(k.eps(v)) == min_level {
            if let Some(j) = slot(k.eps(v)) {
                eps_classes[j].push(v);
            }
        }
        if ct.level(k.phi(v)) == min_level {
            if let Some(j) = slot(k.phi(v)) {
                phi_classes[j].push(v);
            }
        }
    }
    Classification { min_level, weights, eps_classes, phi_classes }
}

/// `τ = ε ∘ φ^{-1}` on `P^+_ℓ`, when `φ` is a bijection on minimal elements
/// and `ε` of the preimages is again minimal.
pub fn tau_empirical(k: &KrCrystal, cls: &Classification) -> Option<TauTable> {
    if !cls.eps_bijective() || !cls.phi_bijective() {
        return None;
    }
    let permutation = cls
        .phi_classes
        .iter()
        .map(|c| cls.weights.iter().position(|w| w == k.eps(c[0])))
        .collect::<Option<Vec<_>>>()?;
    Some(TauTable { weights: cls.weights.clone(), permutation })
}

fn render(k: &KrCrystal, weights: &[Weight], classes: &[Vec<usize>]) -> Vec<MinimalClass> {
    weights
        .iter()
        .zip(classes)
        .map(|(w, c)| MinimalClass {
            weight: w.clone(),
            elements: c.iter().map(|&v| k.element(v).clone()).collect(),
        })
        .collect()
}

fn check(condition: u8, status: Status, detail: impl Into<String>) -> ConditionCheck {
    ConditionCheck { condition, status, detail: detail.into() }
}

fn condition_1() -> ConditionCheck {
    check(1, Status::ByConstruction, "B is the crystal of a KR module")
}

/// Witness pair for odd `s` in types `B_n^{(1)}` (`r = n`) and `C_n^{(1)}` (`r < n`).
fn witness(k: &KrCrystal, cls: &Classification) -> Option<WitnessCheck> {
    let idx = &k.idx;
    let n = idx.ct.rank();
    if idx.s.is_multiple_of(2) {
        return None;
    }
    let half = idx.s / 2;
    let pair = match idx.ct.family() {
        Family::B1 if idx.r == n => witness_pair_b(n, half).ok()?,
        Family::C1 if idx.r < n => witness_pair_c(n, idx.r, half).ok()?,
        _ => return None,
    };
    let in_minimal_class = cls.eps_classes.iter().any(|c| {
        let tabs: Vec<&Tableau> = c.iter().map(|&v| k.element(v)).collect();
        pair.elements.iter().all(|t| tabs.contains(&t))
    });
    Some(WitnessCheck { pair, in_minimal_class })
}

/// Full report for a crystal with affine operators.
pub fn affine_report(k: &KrCrystal) -> PerfectnessReport {
    let idx = k.idx;
    let mut conditions = vec![condition_1()];

    let (c2, reach) = if k.len() <= TENSOR_LIMIT {
        let comps = tensor_components(k);
        let status = if comps == 1 { Status::Passed } else { Status::Failed };
        (check(2, status, format!("B ⊗ B has {comps} component(s)")), true)
    } else {
        let detail = format!("|B| = {} exceeds {TENSOR_LIMIT}", k.len());
        (check(2, Status::Unchecked, detail), false)
    };
    conditions.push(c2);

    let c3 = condition_3(&k.classical, &idx);
    let status = if c3.holds() { Status::Passed } else { Status::Failed };
    conditions.push(check(3, status, c3.detail(&k.classical)));

    let cls = classify_minimal(k);
    let l = cls.min_level;
    conditions.push(if l > 0 {
        check(4, Status::Passed, format!("lev ε(b) ≥ {l} for all b"))
    } else {
        check(4, Status::Failed, "some ε(b) has level 0")
    });

    let eps_ok = cls.eps_bijective();
    let phi_ok = cls.phi_bijective();
    conditions.push(if eps_ok && phi_ok {
        check(5, Status::Passed, format!("ε and φ are bijections B_min → P^+_{l}"))
    } else {
        let side = |ok: bool, classes: &[Vec<usize>], name: &str| -> Option<String> {
            (!ok).then(|| {
                let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
                format!("{name}-fibre sizes {sizes:?}")
            })
        };
        let parts: Vec<String> = [
            side(eps_ok, &cls.eps_classes, "ε"),
            side(phi_ok, &cls.phi_classes, "φ"),
        ]
        .into_iter()
        .flatten()
        .collect();
        check(5, Status::Failed, parts.join("; "))
    });

    let verdict = verdict_from(&conditions, l);
    let tau_table = tau_empirical(k, &cls);
    let tau_matches_formula = tau_table.as_ref().map(|t| {
        t.weights.iter().enumerate().all(|(j, w)| {
            tau(&idx, w).map(|img| img == t.weights[t.permutation[j]]).unwrap_or(false)
        })
    });
    let directed = match (c3.extremal.as_slice(), reach) {
        ([u], true) => Some(directed_reach(k, *u)),
        _ => None,
    };
    PerfectnessReport {
        idx,
        size: k.len(),
        verdict,
        conditions,
        predicted_perfect: idx.predicted_perfect(),
        predicted_min_level: idx.predicted_min_level(),
        min_level: Some(l),
        minimal_elements: render(k, &cls.weights, &cls.eps_classes),
        phi_classes: render(k, &cls.weights, &cls.phi_classes),
        class_sizes: cls.class_sizes(),
        tau_empirical: tau_table,
        tau_matches_formula,
        witnesses: witness(k, &cls),
        directed_reach: directed,
    }
}

fn verdict_from(conditions: &[ConditionCheck], level: i64) -> Verdict {
    if let Some(c) = conditions.iter().find(|c| c.status == Status::Failed) {
        return Verdict::NotPerfect { condition: c.condition, reason: c.detail.clone() };
    }
    let unchecked: Vec<u8> = conditions
        .iter()
        .filter(|c| c.status == Status::Unchecked)
        .map(|c| c.condition)
        .collect();
    if unchecked.is_empty() {
        Verdict::Perfect { level }
    } else {
        Verdict::Partial { unchecked }
    }
}

/// Report for an index without affine operators: only the classical
/// conditions are decided, and minimal elements come from the explicit
/// constructions, singled out by their classical `ε` and `φ`.
fn classical_report(idx: &KrIndex, cl: &ClassicalCrystal) -> PerfectnessReport {
    let mut conditions = vec![condition_1()];
    conditions.push(check(2, Status::Unchecked, "no affine operators"));
    let c3 = condition_3(cl, idx);
    let status = if c3.holds() { Status::Passed } else { Status::Failed };
    conditions.push(check(3, status, c3.detail(cl)));
    conditions.push(check(4, Status::Unchecked, "ε_0 is not available"));
    let level = idx.predicted_min_level();
    let mut minimal_elements = Vec::new();
    let mut built = 0;
    if idx.predicted_perfect() {
        for w in idx.ct.dominant_weights(level) {
            let elements = minimal_element(idx, &w)
                .map(|m| vec![m.tableau])
                .unwrap_or_default();
            built += elements.len();
            minimal_elements.push(MinimalClass { weight: w, elements });
        }
    }
    conditions.push(check(
        5,
        Status::Unchecked,
        format!("{built} constructed minimal elements, each classically unique"),
    ));
    let class_sizes = minimal_elements.iter().map(|c| c.elements.len()).collect();
    PerfectnessReport {
        idx: *idx,
        size: cl.len(),
        verdict: verdict_from(&conditions, level),
        conditions,
        predicted_perfect: idx.predicted_perfect(),
        predicted_min_level: level,
        min_level: None,
        minimal_elements,
        phi_classes: Vec::new(),
        class_sizes,
        tau_empirical: None,
        tau_matches_formula: None,
        witnesses: None,
        directed_reach: None,
    }
}

/// Runs every checkable condition for `B^{r,s}`.
pub fn verdict(idx: &KrIndex) -> Result<PerfectnessReport> {
    let size = crystal_size(idx)?;
    if size > SIZE_LIMIT {
        return Err(KrError::OutOfRange(format!(
            "{idx} has {size} elements, above the limit {SIZE_LIMIT}"
        )));
    }
    if has_affine_structure(idx) {
        Ok(affine_report(kr_crystal(idx)?.as_ref()))
    } else {
        Ok(classical_report(idx, &classical_crystal(idx)?))
    }
}
