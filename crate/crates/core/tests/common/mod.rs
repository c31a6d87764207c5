//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use kr_core::affine::{has_affine_structure, kr_crystal, KrCrystal, Realization};
use kr_core::cartan::{CartanType, Family, KrIndex, Weight};
use kr_core::letters::{ClassicalKind, ClassicalType, Letter};
use kr_core::tableaux::{classical_decomposition, crystal_size, uses_spin_columns, Tableau};

pub fn idx(t: &str, r: usize, s: usize) -> KrIndex {
    KrIndex::new(t.parse().unwrap(), r, s).unwrap()
}

/// Every index with affine operators, small rank, `s ≤ 3` and at most
/// `limit` elements.
pub fn corpus(limit: f64) -> Vec<KrIndex> {
    let families = [
        (Family::A1, 1..=3),
        (Family::B1, 3..=4),
        (Family::C1, 2..=3),
        (Family::D1, 4..=5),
        (Family::A2Even, 2..=3),
        (Family::A2Odd, 3..=4),
        (Family::D2, 3..=4),
    ];
    let mut out = Vec::new();
    for (family, ranks) in families {
        for n in ranks {
            let Ok(ct) = CartanType::new(family, n) else { continue };
            for r in 1..=n {
                for s in 1..=3 {
                    let i = KrIndex::new(ct, r, s).unwrap();
                    if has_affine_structure(&i) && crystal_size(&i).unwrap() <= limit {
                        out.push(i);
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// letters and the signature rule, written out from scratch

/// `(ε_i, φ_i)` of a single letter.
pub fn letter_stats(ct: ClassicalType, i: usize, x: Letter) -> (usize, usize) {
    use Letter::*;
    let n = ct.n;
    let u = |k: usize| Unbarred(k as u8);
    let b = |k: usize| Barred(k as u8);
    if ct.kind == ClassicalKind::A || i < n {
        if x == u(i) || x == b(i + 1) {
            return (0, 1);
        }
        if x == u(i + 1) || x == b(i) {
            return (1, 0);
        }
        return (0, 0);
    }
    match ct.kind {
        ClassicalKind::B => match x {
            _ if x == u(n) => (0, 2),
            Zero => (1, 1),
            _ if x == b(n) => (2, 0),
            _ => (0, 0),
        },
        ClassicalKind::C => match x {
            _ if x == u(n) => (0, 1),
            _ if x == b(n) => (1, 0),
            _ => (0, 0),
        },
        ClassicalKind::D => {
            if x == u(n - 1) || x == u(n) {
                (0, 1)
            } else if x == b(n) || x == b(n - 1) {
                (1, 0)
            } else {
                (0, 0)
            }
        }
        ClassicalKind::A => unreachable!(),
    }
}

fn letter_f(ct: ClassicalType, i: usize, x: Letter) -> Letter {
    use Letter::*;
    let n = ct.n as u8;
    let i8 = i as u8;
    if ct.kind == ClassicalKind::A || i < ct.n {
        return match x {
            Unbarred(k) if k == i8 => Unbarred(i8 + 1),
            Barred(k) if k == i8 + 1 => Barred(i8),
            _ => panic!("f_{i} undefined on {x}"),
        };
    }
    match (ct.kind, x) {
        (ClassicalKind::B, Unbarred(k)) if k == n => Zero,
        (ClassicalKind::B, Zero) => Barred(n),
        (ClassicalKind::C, Unbarred(k)) if k == n => Barred(n),
        (ClassicalKind::D, Unbarred(k)) if k == n - 1 => Barred(n),
        (ClassicalKind::D, Unbarred(k)) if k == n => Barred(n - 1),
        _ => panic!("f_{i} undefined on {x}"),
    }
}

/// Factors `(column, row)` in tensor order: columns right to left, each
/// column bottom to top.
fn factors(t: &Tableau) -> Vec<(usize, usize)> {
    let cols = t.letter_columns();
    (0..cols.len())
        .rev()
        .flat_map(|c| (0..cols[c].len()).map(move |r| (c, r)))
        .collect()
}

/// `f_i` on a lettered tableau by cancelling `+ −` pairs in the sign string.
pub fn oracle_f(ct: ClassicalType, i: usize, t: &Tableau) -> Option<Tableau> {
    let mut cols = t.letter_columns();
    let mut open: Vec<(usize, usize)> = Vec::new();
    for (c, r) in factors(t) {
        let (eps, phi) = letter_stats(ct, i, cols[c][r]);
        for _ in 0..eps {
            open.pop();
        }
        for _ in 0..phi {
            open.push((c, r));
        }
    }
    // the leftmost surviving `+`
    let &(c, r) = open.first()?;
    cols[c][r] = letter_f(ct, i, cols[c][r]);
    Some(Tableau::from_letter_columns(cols))
}

/// `(ε_i, φ_i)` of a lettered tableau from the sign string.
pub fn oracle_stats(ct: ClassicalType, i: usize, t: &Tableau) -> (usize, usize) {
    let cols = t.letter_columns();
    let (mut minus, mut plus) = (0usize, 0usize);
    for (c, r) in factors(t) {
        let (eps, phi) = letter_stats(ct, i, cols[c][r]);
        let cancel = eps.min(plus);
        plus -= cancel;
        minus += eps - cancel;
        plus += phi;
    }
    (minus, plus)
}

// ---------------------------------------------------------------------------
// Weyl dimension formula in orthogonal coordinates

fn positive_roots(kind: ClassicalKind, n: usize) -> Vec<Vec<f64>> {
    let dim = if kind == ClassicalKind::A { n + 1 } else { n };
    let unit = |i: usize| {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        v
    };
    let comb = |a: &[f64], b: &[f64], s: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + s * y).collect()
    };
    let mut roots = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            roots.push(comb(&unit(i), &unit(j), -1.0));
            if kind != ClassicalKind::A {
                roots.push(comb(&unit(i), &unit(j), 1.0));
            }
        }
        match kind {
            ClassicalKind::B => roots.push(unit(i)),
            ClassicalKind::C => roots.push(comb(&unit(i), &unit(i), 1.0)),
            _ => {}
        }
    }
    roots
}

fn rho(kind: ClassicalKind, n: usize) -> Vec<f64> {
    match kind {
        ClassicalKind::A => (0..=n).map(|i| (n - i) as f64).collect(),
        ClassicalKind::B => (0..n).map(|i| (n - i) as f64 - 0.5).collect(),
        ClassicalKind::C => (0..n).map(|i| (n - i) as f64).collect(),
        ClassicalKind::D => (0..n).map(|i| (n - 1 - i) as f64).collect(),
    }
}

fn weyl_dim(kind: ClassicalKind, n: usize, lambda: &[f64]) -> f64 {
    let rho = rho(kind, n);
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let shifted: Vec<f64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    positive_roots(kind, n)
        .iter()
        .map(|a| dot(&shifted, a) / dot(&rho, a))
        .product()
}

/// `|B^{r,s}|` as a sum of Weyl dimensions over the classical decomposition.
pub fn oracle_size(idx: &KrIndex) -> f64 {
    let ct = idx.ct.classical();
    let dim = if ct.kind == ClassicalKind::A { ct.n + 1 } else { ct.n };
    classical_decomposition(idx)
        .unwrap()
        .iter()
        .map(|sh| {
            let mut lambda = vec![0.0; dim];
            for &h in &sh.heights {
                for x in lambda.iter_mut().take(h) {
                    *x += 1.0;
                }
            }
            for _ in 0..sh.spin_columns {
                for (j, x) in lambda.iter_mut().enumerate() {
                    let last = j + 1 == dim && sh.odd_spin;
                    *x += if last { -0.5 } else { 0.5 };
                }
            }
            weyl_dim(ct.kind, ct.n, &lambda)
        })
        .sum()
}

// ---------------------------------------------------------------------------
// crystal axioms

pub fn string_length(k: &KrCrystal, i: usize, v: usize, raise: bool) -> usize {
    let mut x = v;
    let mut steps = 0;
    while let Some(y) = if raise { k.e(i, x) } else { k.f(i, x) } {
        x = y;
        steps += 1;
        assert!(steps <= k.len(), "{i}-string through {} does not end", k.element(v));
    }
    steps
}

/// Signature-rule axioms and `wt(f_i b) = wt(b) − α_i`, over every vertex
/// and every `i` including 0.
pub fn axiom_violations(k: &KrCrystal) -> Vec<String> {
    let ct = k.ct();
    let n = ct.rank();
    let mut bad = Vec::new();
    for v in 0..k.len() {
        let b = k.element(v);
        if ct.level(&k.weight(v)) != 0 {
            bad.push(format!("wt({b}) has nonzero level"));
        }
        for i in 0..=n {
            if string_length(k, i, v, true) != k.eps_i(i, v)
                || string_length(k, i, v, false) != k.phi_i(i, v)
            {
                bad.push(format!("ε_{i}/φ_{i} of {b} disagree with string lengths"));
            }
            if k.phi_i(i, v) as i64 - k.eps_i(i, v) as i64 != k.weight(v).0[i] {
                bad.push(format!("φ_{i} − ε_{i} ≠ ⟨h_{i}, wt⟩ at {b}"));
            }
            if let Some(w) = k.f(i, v) {
                if k.e(i, w) != Some(v) {
                    bad.push(format!("e_{i} f_{i} {b} ≠ {b}"));
                }
                if k.weight(w) != &k.weight(v) - &ct.simple_root(i) {
                    bad.push(format!("wt(f_{i} {b}) ≠ wt({b}) − α_{i}"));
                }
                if k.eps_i(i, w) != k.eps_i(i, v) + 1 {
                    bad.push(format!("ε_{i}(f_{i} {b}) ≠ ε_{i}({b}) + 1"));
                }
            }
            if let Some(w) = k.e(i, v) {
                if k.f(i, w) != Some(v) {
                    bad.push(format!("f_{i} e_{i} {b} ≠ {b}"));
                }
            }
        }
    }
    bad
}

/// Classical arrows against the from-scratch signature rule.
pub fn classical_violations(k: &KrCrystal) -> Vec<String> {
    if uses_spin_columns(&k.idx) {
        return Vec::new();
    }
    let ct = k.idx.ct.classical();
    let mut bad = Vec::new();
    for v in 0..k.len() {
        let b = k.element(v);
        for i in 1..=ct.n {
            let expected = oracle_f(ct, i, b);
            let got = k.f(i, v).map(|w| k.element(w).clone());
            if expected != got {
                bad.push(format!("f_{i}({b}) = {got:?}, signature rule gives {expected:?}"));
            }
            if oracle_stats(ct, i, b) != (k.eps_i(i, v), k.phi_i(i, v)) {
                bad.push(format!("(ε_{i}, φ_{i}) of {b} differ from the signature rule"));
            }
        }
    }
    bad
}

/// `σ² = id`, `σ f_i = f_i σ` for `i ≥ 2`, and `f_0 = σ f_1 σ`.
pub fn sigma_violations(k: &KrCrystal) -> Vec<String> {
    let Some(sigma) = k.sigma() else { return Vec::new() };
    let n = k.ct().rank();
    let mut bad = Vec::new();
    for v in 0..k.len() {
        let b = k.element(v);
        if sigma[sigma[v]] != v {
            bad.push(format!("σ² {b} ≠ {b}"));
        }
        for i in 2..=n {
            if k.f(i, v).map(|w| sigma[w]) != k.f(i, sigma[v]) {
                bad.push(format!("σ f_{i} ≠ f_{i} σ at {b}"));
            }
        }
        if k.f(0, v) != k.f(1, sigma[v]).map(|w| sigma[w]) {
            bad.push(format!("f_0 ≠ σ f_1 σ at {b}"));
        }
    }
    bad
}

/// Promotion has order `n + 1` and shifts every arrow label by one.
pub fn promotion_violations(k: &KrCrystal) -> Vec<String> {
    let Some(pr) = k.promotion() else { return Vec::new() };
    let n = k.ct().rank();
    let mut bad = Vec::new();
    for v in 0..k.len() {
        let b = k.element(v);
        let x = (0..=n).fold(v, |x, _| pr[x]);
        if x != v {
            bad.push(format!("pr^{} {b} ≠ {b}", n + 1));
        }
        for i in 0..=n {
            let j = (i + 1) % (n + 1);
            if k.f(i, v).map(|w| pr[w]) != k.f(j, pr[v]) {
                bad.push(format!("pr f_{i} ≠ f_{j} pr at {b}"));
            }
        }
    }
    bad
}

/// `S(f_i b) = f_{w_i}(S b)` where `w_i` is the ambient word (a power
/// `f_i^{m_i}` whenever multiplicities apply), and `ε(S b) = S(ε(b))`.
pub fn embedding_violations(k: &KrCrystal) -> Vec<String> {
    let Some(emb) = k.embedding() else { return Vec::new() };
    let amb = &emb.ambient;
    let mut bad = Vec::new();
    for v in 0..k.len() {
        let b = k.element(v);
        let sb = emb.image(v);
        if amb.eps(sb) != &emb.map_weight(k.eps(v)) || amb.phi(sb) != &emb.map_weight(k.phi(v)) {
            bad.push(format!("ε/φ of S({b}) are not the images of ε/φ"));
        }
        for (i, word) in emb.words.iter().enumerate() {
            let lhs = k.f(i, v).map(|w| emb.image(w));
            let rhs = amb.apply_word(word, sb);
            if lhs != rhs {
                bad.push(format!("S(f_{i} {b}) ≠ f^{word:?} S({b})"));
            }
        }
    }
    bad
}

pub fn all_violations(k: &KrCrystal) -> Vec<String> {
    let mut v = axiom_violations(k);
    v.extend(classical_violations(k));
    v.extend(sigma_violations(k));
    v.extend(promotion_violations(k));
    v.extend(embedding_violations(k));
    v
}

pub fn realization_name(k: &KrCrystal) -> &'static str {
    match k.realization {
        Realization::Promotion { .. } => "promotion",
        Realization::Sigma { .. } => "sigma",
        Realization::Embedded(_) => "embedded",
    }
}

// ---------------------------------------------------------------------------
// perfectness oracles

/// `f_i` on `x ⊗ y` from the sign string `−^{ε(x)} +^{φ(x)} −^{ε(y)} +^{φ(y)}`.
fn pair_f(k: &KrCrystal, i: usize, x: usize, y: usize) -> Option<(usize, usize)> {
    let plus_x = k.phi_i(i, x);
    let minus_y = k.eps_i(i, y);
    let surviving_x = plus_x - plus_x.min(minus_y);
    if surviving_x > 0 {
        Some((k.f(i, x)?, y))
    } else {
        Some((x, k.f(i, y)?))
    }
}

/// Weak connectivity of `B ⊗ B` by breadth-first search over all arrows.
pub fn oracle_tensor_connected(k: &KrCrystal) -> bool {
    let n = k.len();
    let r = k.ct().rank();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            for i in 0..=r {
                if let Some((a, b)) = pair_f(k, i, x, y) {
                    adj[x * n + y].push((a * n + b) as u32);
                    adj[a * n + b].push((x * n + y) as u32);
                }
            }
        }
    }
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::from([0u32]);
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = queue.pop_front() {
        for &q in &adj[p as usize] {
            if !seen[q as usize] {
                seen[q as usize] = true;
                count += 1;
                queue.push_back(q);
            }
        }
    }
    count == n * n
}

/// Condition (3) by walking down from `λ = sω_r` along classical simple
/// roots: every weight must be reached, and `λ` must occur once.
pub fn oracle_condition_3(k: &KrCrystal) -> bool {
    let ct = k.ct();
    let n = ct.rank();
    let cl = |w: &Weight| w.0[1..].to_vec();
    let weights: Vec<Vec<i64>> = (0..k.len()).map(|v| cl(&k.weight(v))).collect();
    let mut lambda = vec![0i64; n];
    lambda[k.idx.r - 1] = k.idx.s as i64;
    let targets: HashSet<Vec<i64>> = weights.iter().cloned().collect();
    let roots: Vec<Vec<i64>> = (1..=n).map(|i| cl(&ct.simple_root(i))).collect();
    // weights of V(sω_r) satisfy |⟨h_i, μ⟩| ≤ 2s, and they are linked to λ
    // through such weights
    let bound = 2 * k.idx.s as i64;
    let mut seen = HashSet::from([lambda.clone()]);
    let mut frontier = vec![lambda.clone()];
    loop {
        let mut next = Vec::new();
        for w in &frontier {
            for a in &roots {
                let u: Vec<i64> = w.iter().zip(a).map(|(x, y)| x - y).collect();
                if u.iter().all(|x| x.abs() <= bound) && seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let all_below = targets.iter().all(|w| seen.contains(w));
    let unique = weights.iter().filter(|w| **w == lambda).count() == 1;
    all_below && unique
}

/// Elements whose `ε` equals `w`, by exhaustive scan.
pub fn eps_preimages(k: &KrCrystal, w: &Weight) -> Vec<usize> {
    (0..k.len()).filter(|&v| k.eps(v) == w).collect()
}

pub fn crystal(i: &KrIndex) -> std::sync::Arc<KrCrystal> {
    kr_crystal(i).unwrap()
}
