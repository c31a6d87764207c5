//! Explicit minimal elements `b_Λ` with `ε(b_Λ) = Λ`, and the witness pairs
//! showing that `B^{r,s}` is not perfect when `c_r` does not divide `s`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::affine::{classical_crystal, has_affine_structure, kr_crystal, KrCrystal};
use crate::cartan::{tau_inverse, CartanType, Family, KrIndex, Weight};
use crate::error::{KrError, Result};
use crate::letters::{Letter, SpinColumn};
use crate::pm_diagrams::{
    derive_operator_string, diagram_of_fundamental, diagram_of_weight, in_sigma_family,
    tableau_of_fundamental, PmColumn, PmDiagram,
};
use crate::tableaux::{crystal_size, ClassicalCrystal, Column, Tableau};

/// Crystals above this size are not cross-checked by enumeration.
pub const VALIDATION_LIMIT: f64 = 50_000.0;

/// How a minimal element is constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// Row counts `x_ij` of a type `A_n^{(1)}` rectangle.
    TypeAXij,
    /// `f(Λ_n)^{ℓ_n} ⋯ f(Λ_2)^{ℓ_2} Φ(diagram(Λ))`.
    FamilyString,
    /// Preimage of the ambient `A_{2n-1}^{(2)}` minimal element (types `C_n^{(1)}`, `r < n`, and `B_n^{(1)}`, `r = n`).
    EmbeddedFamily,
    /// Preimage of the ambient `C_n^{(1)}` minimal element under the doubling map.
    Doubled,
    /// Row counts for the spin nodes of `D_n^{(1)}`.
    DnSpinXij,
    /// Operator strings on columns of height `n` in `C_n^{(1)}`.
    CnSpinString,
    /// Row counts for `D_{n+1}^{(2)}`, `r = n`.
    D2SpinXij,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Validation {
    /// `ε(b) = Λ`, `φ(b) = τ^{-1}(Λ)`, and no other element has `ε = Λ`.
    Verified,
    /// The classical parts of `ε` and `φ` match and single out `b`.
    ClassicallyVerified,
    /// The crystal exceeds [`VALIDATION_LIMIT`].
    Unvalidated,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalElement {
    pub idx: KrIndex,
    pub weight: Weight,
    pub route: Route,
    pub tableau: Tableau,
    pub validation: Validation,
}

pub fn route(idx: &KrIndex) -> Result<Route> {
    let n = idx.ct.rank();
    Ok(match idx.ct.family() {
        Family::A1 => Route::TypeAXij,
        _ if in_sigma_family(idx) => Route::FamilyString,
        Family::B1 | Family::C1 if has_affine_structure(idx) => Route::EmbeddedFamily,
        Family::A2Even | Family::D2 if idx.r < n => Route::Doubled,
        Family::D1 => Route::DnSpinXij,
        Family::C1 => Route::CnSpinString,
        Family::D2 => Route::D2SpinXij,
        _ => {
            return Err(KrError::OutOfScope(format!("minimal elements of {idx}")));
        }
    })
}

fn check_weight(idx: &KrIndex, w: &Weight) -> Result<i64> {
    if w.0.len() != idx.ct.rank() + 1 || !w.is_dominant() {
        return Err(KrError::InvalidWeight(w.to_string()));
    }
    if !idx.predicted_perfect() {
        return Err(KrError::NotPerfect(idx.to_string()));
    }
    let level = (idx.s / idx.c_r()) as i64;
    let got = idx.ct.level(w);
    if got != level {
        return Err(KrError::LevelMismatch { expected: level, got });
    }
    Ok(level)
}

/// Builds `b_Λ` by the route of `idx` and cross-checks it when feasible.
pub fn minimal_element(idx: &KrIndex, w: &Weight) -> Result<MinimalElement> {
    check_weight(idx, w)?;
    let n = idx.ct.rank();
    let route = route(idx)?;
    let tableau = match route {
        Route::TypeAXij => minimal_type_a(n, idx.r, idx.s, w)?,
        Route::FamilyString => minimal_family(idx, w)?,
        Route::EmbeddedFamily | Route::Doubled => minimal_embedded(idx, w)?,
        Route::DnSpinXij => minimal_dn_spin(n, idx.r, idx.s, w)?,
        Route::CnSpinString => minimal_cn_spin(n, idx.s, w)?,
        Route::D2SpinXij => minimal_d2_spin(n, idx.s, w)?,
    };
    let validation = if crystal_size(idx)? > VALIDATION_LIMIT {
        Validation::Unvalidated
    } else if has_affine_structure(idx) {
        validate_affine(kr_crystal(idx)?.as_ref(), w, &tableau)?
    } else {
        validate_classical(idx, w, &tableau)?
    };
    Ok(MinimalElement {
        idx: *idx,
        weight: w.clone(),
        route,
        tableau,
        validation,
    })
}

fn validate_affine(k: &KrCrystal, w: &Weight, t: &Tableau) -> Result<Validation> {
    let v = k
        .index_of(t)
        .ok_or_else(|| KrError::Construction(format!("{t} is not an element of {}", k.idx)))?;
    if k.eps(v) != w {
        return Err(KrError::Construction(format!("ε({t}) = {} instead of {w}", k.eps(v))));
    }
    let expected_phi = tau_inverse(&k.idx, w)?;
    if k.phi(v) != &expected_phi {
        return Err(KrError::Construction(format!("φ({t}) = {} instead of {expected_phi}", k.phi(v))));
    }
    let count = (0..k.len()).filter(|&u| k.eps(u) == w).count();
    if count != 1 {
        return Err(KrError::Construction(format!("{count} elements have ε = {w}")));
    }
    Ok(Validation::Verified)
}

static CLASSICAL: OnceLock<Mutex<HashMap<KrIndex, Arc<ClassicalCrystal>>>> = OnceLock::new();

fn cached_classical(idx: &KrIndex) -> Result<Arc<ClassicalCrystal>> {
    let cache = CLASSICAL.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("cache lock").get(idx) {
        return Ok(Arc::clone(c));
    }
    let built = Arc::new(classical_crystal(idx)?);
    Ok(Arc::clone(cache.lock().expect("cache lock").entry(*idx).or_insert(built)))
}

fn validate_classical(idx: &KrIndex, w: &Weight, t: &Tableau) -> Result<Validation> {
    let cl = cached_classical(idx)?;
    let n = idx.ct.rank();
    let phi_w = tau_inverse(idx, w)?;
    let matches = |v: usize| {
        (1..=n).all(|i| cl.eps(i, v) as i64 == w.0[i] && cl.phi(i, v) as i64 == phi_w.0[i])
    };
    let v = cl
        .index_of(t)
        .ok_or_else(|| KrError::Construction(format!("{t} is not an element of {idx}")))?;
    if !matches(v) {
        return Err(KrError::Construction(format!(
            "classical ε/φ of {t} do not match {w} / {phi_w}"
        )));
    }
    let count = (0..cl.len()).filter(|&u| matches(u)).count();
    if count != 1 {
        return Err(KrError::Construction(format!("{count} elements match {w} classically")));
    }
    Ok(Validation::ClassicallyVerified)
}

fn columns_from_rows(rows: &[Vec<Letter>], s: usize) -> Result<Vec<Vec<Letter>>> {
    if rows.iter().any(|r| r.len() != s) {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(KrError::Construction(format!("row lengths {lens:?} differ from {s}")));
    }
    Ok((0..s).map(|c| rows.iter().map(|r| r[c]).collect()).collect())
}

fn rows_from_counts(counts: &[Vec<(Letter, i64)>]) -> Vec<Vec<Letter>> {
    counts
        .iter()
        .map(|row| {
            let mut v: Vec<Letter> = row
                .iter()
                .flat_map(|&(x, k)| std::iter::repeat_n(x, k.max(0) as usize))
                .collect();
            v.sort();
            v
        })
        .collect()
}

/// Type `A_n^{(1)}`: `x_ii = ℓ_0 + Σ_{α=i}^{r−1} ℓ_{α+r'}`, `x_ij = ℓ_{j−i}`
/// for `i < j < i + r'`, `x_{i,i+r'} = Σ_{α=0}^{i−1} ℓ_{α+r'}` with `r' = n+1−r`.
pub fn minimal_type_a(n: usize, r: usize, s: usize, w: &Weight) -> Result<Tableau> {
    let l = &w.0;
    if l.len() != n + 1 || l.iter().sum::<i64>() != s as i64 {
        return Err(KrError::LevelMismatch {
            expected: s as i64,
            got: l.iter().sum(),
        });
    }
    let rp = n + 1 - r;
    let counts: Vec<Vec<(Letter, i64)>> = (1..=r)
        .map(|i| {
            let mut row = vec![(
                Letter::Unbarred(i as u8),
                l[0] + (i..r).map(|a| l[a + rp]).sum::<i64>(),
            )];
            for j in i + 1..i + rp {
                row.push((Letter::Unbarred(j as u8), l[j - i]));
            }
            row.push((
                Letter::Unbarred((i + rp) as u8),
                (0..i).map(|a| l[a + rp]).sum::<i64>(),
            ));
            row
        })
        .collect();
    Ok(Tableau::from_letter_columns(columns_from_rows(&rows_from_counts(&counts), s)?))
}

/// The operator word `f(Λ_k)` in application order, over `{2, …, n}`.
pub fn family_string(idx: &KrIndex, k: usize) -> Result<Vec<usize>> {
    let d = diagram_of_fundamental(idx, k)?;
    let small = KrIndex::new(idx.ct, idx.r, d.width())?;
    let kc = kr_crystal(&small)?;
    let phi = kc
        .phi_map()
        .ok_or_else(|| KrError::Construction(format!("{small} has no ±-diagrams")))?;
    let source = phi.phi(&PmDiagram::new(idx.r, d.columns))?;
    let target_t = tableau_of_fundamental(idx, k)?;
    let target = kc
        .index_of(&target_t)
        .ok_or_else(|| KrError::Construction(format!("T(Λ_{k}) = {target_t} is not in {small}")))?;
    let indices: Vec<usize> = (2..=idx.ct.rank()).collect();
    derive_operator_string(&kc.classical, source, target, &indices)
}

/// `b = f(Λ_n)^{ℓ_n} ⋯ f(Λ_2)^{ℓ_2} Φ(diagram(Λ))`.
pub fn minimal_family(idx: &KrIndex, w: &Weight) -> Result<Tableau> {
    let k = kr_crystal(idx)?;
    let phi = k
        .phi_map()
        .ok_or_else(|| KrError::OutOfRange(format!("{idx} is not realized through ±-diagrams")))?;
    let mut v = phi.phi(&diagram_of_weight(idx, w)?)?;
    for (kk, &l) in w.0.iter().enumerate().skip(2) {
        if l == 0 {
            continue;
        }
        let word = family_string(idx, kk)?;
        for _ in 0..l {
            v = k.classical.apply_word(&word, v).ok_or_else(|| {
                KrError::Construction(format!("f(Λ_{kk}) is undefined on {}", k.element(v)))
            })?;
        }
    }
    Ok(k.element(v).clone())
}

/// Pulls the ambient minimal element back through the virtual embedding.
pub fn minimal_embedded(idx: &KrIndex, w: &Weight) -> Result<Tableau> {
    let k = kr_crystal(idx)?;
    let emb = k
        .embedding()
        .ok_or_else(|| KrError::OutOfRange(format!("{idx} is not an embedded realization")))?;
    let amb_w = emb.map_weight(w);
    let amb_idx = emb.ambient.idx;
    let amb_t = minimal_element(&amb_idx, &amb_w)?.tableau;
    let a = emb
        .ambient
        .index_of(&amb_t)
        .ok_or_else(|| KrError::Construction(format!("{amb_t} is not in {amb_idx}")))?;
    let v = emb.preimage(a).ok_or_else(|| {
        KrError::Construction(format!("ambient minimal element {amb_t} is not in the image"))
    })?;
    Ok(k.element(v).clone())
}

fn spin_tableau(rows: &[Vec<Letter>], n: usize, s: usize) -> Result<Tableau> {
    let cols = columns_from_rows(rows, s)?;
    let mut out = Vec::with_capacity(s);
    for c in cols {
        let mut signs = vec![None; n];
        for x in &c {
            let (k, plus) = match *x {
                Letter::Unbarred(k) => (k, true),
                Letter::Barred(k) => (k, false),
                Letter::Zero => return Err(KrError::Construction("zero in a spin column".into())),
            };
            if signs[k as usize - 1].replace(plus).is_some() {
                return Err(KrError::Construction(format!("column {c:?} repeats index {k}")));
            }
        }
        let signs: Vec<bool> = signs.into_iter().map(|x| x.expect("n letters, distinct indices")).collect();
        out.push(Column::Spin(SpinColumn(signs)));
    }
    Ok(Tableau { columns: out })
}

fn add(row: &mut Vec<(Letter, i64)>, x: Letter, k: i64) {
    if k != 0 {
        row.push((x, k));
    }
}

/// `D_n^{(1)}`, `r ∈ {n−1, n}`: row counts of an `n × s` spin tableau.
pub fn minimal_dn_spin(n: usize, r: usize, s: usize, w: &Weight) -> Result<Tableau> {
    if r == n - 1 {
        let mut l = w.0.clone();
        l.swap(n - 1, n);
        let t = minimal_dn_spin(n, n, s, &Weight(l))?;
        let cols = t
            .columns
            .into_iter()
            .map(|c| match c {
                Column::Spin(mut sc) => {
                    sc.0[n - 1] = !sc.0[n - 1];
                    Column::Spin(sc)
                }
                other => other,
            })
            .collect();
        return Ok(Tableau { columns: cols });
    }
    let l = &w.0;
    let even = n.is_multiple_of(2);
    let u = |k: usize| Letter::Unbarred(k as u8);
    let b = |k: usize| Letter::Barred(k as u8);
    let sum = |a: usize, z: usize| -> i64 { if a > z { 0 } else { l[a..=z].iter().sum() } };
    let (ln1, ln) = (l[n - 1], l[n]);
    let mut x: Vec<Vec<(Letter, i64)>> = vec![Vec::new(); n + 1];
    add(&mut x[1], u(1), l[0] + sum(2, n - 2) + if even { ln1 } else { ln });
    for j in 2..n {
        add(&mut x[1], u(j), l[j - 1]);
    }
    if even {
        add(&mut x[1], b(n), ln);
    } else {
        add(&mut x[1], u(n), ln1);
    }
    for i in 2..n {
        let row = &mut x[i];
        add(row, u(i), l[0] + sum(2, n - i));
        for j in i + 1..n {
            add(row, u(j), l[j - i]);
        }
        let v = l[n - i] + if i >= 3 { l[n - i + 1] } else { 0 };
        add(row, if (n - i).is_multiple_of(2) { u(n) } else { b(n) }, v);
        for j in n - i + 3..n {
            add(row, b(j), l[2 * n + 1 - i - j]);
        }
        if i == 2 {
            if even {
                add(row, u(n), ln1);
            } else {
                add(row, b(n), ln);
            }
        } else {
            add(row, b(n - i + 2), if even { ln1 } else { ln });
        }
        add(row, b(n - i + 1), sum(n - i + 1, n - 2) + if even { ln } else { ln1 });
    }
    add(&mut x[n], u(n), l[0]);
    for j in 3..n {
        add(&mut x[n], b(j), l[n + 1 - j]);
    }
    add(&mut x[n], b(2), if even { ln1 } else { ln });
    add(&mut x[n], b(1), sum(1, n - 2) + if even { ln } else { ln1 });
    spin_tableau(&rows_from_counts(&x[1..]), n, s)
}

/// `D_{n+1}^{(2)}`, `r = n`: `x_ii = ℓ_0 + ⋯ + ℓ_{n−i}`, `x_ij = ℓ_{j−i}` for
/// `j ≤ n`, `x_{i,\overline{n−i+1}} = ℓ_{n−i+1} + ⋯ + ℓ_n`, and
/// `x_{i,\bar j} = ℓ_{2n+1−i−j}` for `n−i+2 ≤ j ≤ n`.
pub fn minimal_d2_spin(n: usize, s: usize, w: &Weight) -> Result<Tableau> {
    let l = &w.0;
    let sum = |a: usize, z: usize| -> i64 { if a > z { 0 } else { l[a..=z].iter().sum() } };
    let x: Vec<Vec<(Letter, i64)>> = (1..=n)
        .map(|i| {
            let mut row = Vec::new();
            add(&mut row, Letter::Unbarred(i as u8), sum(0, n - i));
            for j in i + 1..=n {
                add(&mut row, Letter::Unbarred(j as u8), l[j - i]);
            }
            add(&mut row, Letter::Barred((n - i + 1) as u8), sum(n - i + 1, n));
            for j in n - i + 2..=n {
                add(&mut row, Letter::Barred(j as u8), l[2 * n + 1 - i - j]);
            }
            row
        })
        .collect();
    spin_tableau(&rows_from_counts(&x), n, s)
}

/// The word `f(Λ_k)` for `C_n^{(1)}`, `r = n`: from the column `1, …, n`
/// to `k+1, …, n, n̄, …, \overline{n−k+1}`, in application order.
pub fn cn_spin_string(n: usize, k: usize) -> Result<Vec<usize>> {
    let idx = KrIndex::new(CartanType::new(Family::C1, n)?, n, 1)?;
    let cl = cached_classical(&idx)?;
    let target_t = tableau_of_fundamental(&idx, k)?;
    let target = cl
        .index_of(&target_t)
        .ok_or_else(|| KrError::Construction(format!("T(Λ_{k}) = {target_t} is not in {idx}")))?;
    let indices: Vec<usize> = (1..=n).collect();
    derive_operator_string(&cl, cl.components[0].highest, target, &indices)
}

/// `C_n^{(1)}`, `r = n`: `b = f(Λ_n)^{ℓ_n} ⋯ f(Λ_1)^{ℓ_1} b_s`.
pub fn minimal_cn_spin(n: usize, s: usize, w: &Weight) -> Result<Tableau> {
    let ct = CartanType::new(Family::C1, n)?.classical();
    let mut t = Tableau::from_letter_columns(vec![(1..=n as u8).map(Letter::Unbarred).collect(); s]);
    for (k, &l) in w.0.iter().enumerate().skip(1) {
        if l == 0 {
            continue;
        }
        let word = cn_spin_string(n, k)?;
        for _ in 0..l {
            for &i in &word {
                t = ct.f(i, &t).ok_or_else(|| {
                    KrError::Construction(format!("f(Λ_{k}) is undefined on {t}"))
                })?;
            }
        }
    }
    Ok(t)
}

/// Two distinct elements with equal `ε` of level `⌈s/c_r⌉`, exhibiting the
/// failure of perfectness for odd `s`.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessPair {
    pub idx: KrIndex,
    pub ambient: KrIndex,
    pub elements: [Tableau; 2],
    pub ambient_elements: [Tableau; 2],
    pub epsilon: Weight,
    pub ambient_epsilon: Weight,
}

fn finish_pair(k: &KrCrystal, amb: [usize; 2]) -> Result<WitnessPair> {
    let emb = k.embedding().expect("embedded realization");
    let src = amb.map(|a| {
        emb.preimage(a).ok_or_else(|| {
            KrError::Construction(format!("{} is not in the image", emb.ambient.element(a)))
        })
    });
    let [s1, s2] = src;
    let (s1, s2) = (s1?, s2?);
    if k.eps(s1) != k.eps(s2) || s1 == s2 {
        return Err(KrError::Construction("witnesses do not share ε".into()));
    }
    Ok(WitnessPair {
        idx: k.idx,
        ambient: emb.ambient.idx,
        elements: [k.element(s1).clone(), k.element(s2).clone()],
        ambient_elements: amb.map(|a| emb.ambient.element(a).clone()),
        epsilon: k.eps(s1).clone(),
        ambient_epsilon: emb.ambient.eps(amb[0]).clone(),
    })
}

/// The operator word `a = (n, (n−1)², n, (n−2)², (n−1)², n, …, 2², …, (n−1)², n)`.
pub fn witness_word_b(n: usize) -> Vec<usize> {
    let mut a = Vec::new();
    for lo in (2..=n).rev() {
        for j in lo..n {
            a.extend([j, j]);
        }
        a.push(n);
    }
    a
}

/// `B_n^{(1)}` `B^{n,2s+1}`: `b_i = f_a Φ(P_i)` inside `A_{2n-1}^{(2)}`.
pub fn witness_pair_b(n: usize, s: usize) -> Result<WitnessPair> {
    let idx = KrIndex::new(CartanType::new(Family::B1, n)?, n, 2 * s + 1)?;
    let k = kr_crystal(&idx)?;
    let emb = k.embedding().expect("B spin is embedded");
    let amb = &emb.ambient;
    let phi = amb.phi_map().expect("ambient has ±-diagrams");
    let small = if n % 2 == 1 {
        PmColumn::new(0, false, true)
    } else {
        PmColumn::new(0, true, true)
    };
    let word = witness_word_b(n);
    let mut pts = [0usize; 2];
    for (slot, big) in [PmColumn::new(n - 1, true, false), PmColumn::new(n - 1, false, true)]
        .into_iter()
        .enumerate()
    {
        let mut cols = vec![big];
        cols.extend(std::iter::repeat_n(small, 2 * s));
        let start = phi.phi(&PmDiagram::new(n, cols))?;
        pts[slot] = amb.apply_word(&word, start).ok_or_else(|| {
            KrError::Construction(format!("f_a is undefined on {}", amb.element(start)))
        })?;
    }
    let pair = finish_pair(&k, pts)?;
    let mut expected = amb.ct().zero_weight();
    expected.0[1] = 2 * s as i64;
    expected.0[n] = 1;
    if pair.ambient_epsilon != expected {
        return Err(KrError::Construction(format!(
            "witness ε = {} instead of {expected}",
            pair.ambient_epsilon
        )));
    }
    Ok(pair)
}

/// `C_n^{(1)}` `B^{r,2s+1}` for `r < n`: explicit σ-fixed columns in
/// `A_{2n+1}^{(2)}` `B^{r,2s+1}`.
pub fn witness_pair_c(n: usize, r: usize, s: usize) -> Result<WitnessPair> {
    let idx = KrIndex::new(CartanType::new(Family::C1, n)?, r, 2 * s + 1)?;
    if r >= n {
        return Err(KrError::OutOfRange(format!("witness pair needs r < n, got {idx}")));
    }
    let k = kr_crystal(&idx)?;
    let amb = &k.embedding().expect("C is embedded").ambient;
    let big_n = n + 1;
    let u = |k: usize| Letter::Unbarred(k as u8);
    let bar = |k: usize| Letter::Barred(k as u8);
    let low: Vec<Letter> = (1..=r).map(u).collect();
    let high: Vec<Letter> = (1..=r).rev().map(bar).collect();
    let mid1: Vec<Letter> = (2..=r + 1).rev().map(bar).collect();
    let mut mid2: Vec<Letter> = (r + 2..=big_n.min(2 * r + 1)).map(u).collect();
    let mut next = big_n;
    while mid2.len() < r {
        mid2.push(bar(next));
        next -= 1;
    }
    let mut pts = [0usize; 2];
    for (slot, mid) in [mid1, mid2].into_iter().enumerate() {
        let mut cols = vec![low.clone(); s];
        cols.push(mid);
        cols.extend(std::iter::repeat_n(high.clone(), s));
        let t = Tableau::from_letter_columns(cols);
        pts[slot] = amb
            .index_of(&t)
            .ok_or_else(|| KrError::Construction(format!("{t} is not in {}", amb.idx)))?;
    }
    let pair = finish_pair(&k, pts)?;
    let mut expected = amb.ct().zero_weight();
    if r > 1 {
        expected.0[r] = s as i64;
        expected.0[r + 1] = 1;
    } else {
        expected.0[0] = s as i64;
        expected.0[1] = s as i64;
        expected.0[2] = 1;
    }
    if pair.ambient_epsilon != expected {
        return Err(KrError::Construction(format!(
            "witness ε = {} instead of {expected}",
            pair.ambient_epsilon
        )));
    }
    Ok(pair)
}
