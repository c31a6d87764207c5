//! Affine crystal structure on `B^{r,s}`: promotion for type `A_n^{(1)}`,
//! the involution `σ` for `B_n^{(1)}`, `D_n^{(1)}`, `A_{2n-1}^{(2)}`, and
//! virtual embeddings for the remaining realized cases.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::cartan::{CartanType, Family, KrIndex, Weight};
use crate::error::{KrError, Result};
use crate::letters::Letter;
use crate::pm_diagrams::{in_sigma_family, PhiMap, PmColumn, PmDiagram};
use crate::tableaux::{classical_decomposition, ClassicalCrystal, Column, Tableau};

fn grid(t: &Tableau, r: usize, s: usize) -> Result<Vec<Vec<Option<u8>>>> {
    let cols = t.letter_columns();
    if cols.len() != s || cols.iter().any(|c| c.len() != r) {
        return Err(KrError::Malformed(format!("{t} is not an {r}x{s} rectangle")));
    }
    (0..r)
        .map(|i| {
            cols.iter()
                .map(|c| match c[i] {
                    Letter::Unbarred(k) => Ok(Some(k)),
                    x => Err(KrError::Malformed(format!("letter {x} in type A"))),
                })
                .collect()
        })
        .collect()
}

fn from_grid(g: &[Vec<Option<u8>>]) -> Tableau {
    let s = g.first().map_or(0, Vec::len);
    Tableau::from_letter_columns(
        (0..s)
            .map(|j| g.iter().map(|row| Letter::Unbarred(row[j].expect("filled"))).collect())
            .collect(),
    )
}

/// Schützenberger promotion on an `r × s` rectangle over `{1, …, n+1}`:
/// remove the letters `n+1`, slide the holes to the top-left corner, add one
/// to every entry and fill the holes with `1`.
pub fn promotion(n: usize, t: &Tableau) -> Result<Tableau> {
    let (r, s) = rect(t);
    let top = n as u8 + 1;
    let mut g = grid(t, r, s)?;
    let mut active: Vec<(usize, usize)> = Vec::new();
    for (i, row) in g.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if *x == Some(top) {
                *x = None;
                active.push((i, j));
            }
        }
    }
    // Row-major order; the first active hole always has filled cells above and left.
    for &(mut i, mut j) in &active {
        loop {
            let up = if i > 0 { g[i - 1][j] } else { None };
            let left = if j > 0 { g[i][j - 1] } else { None };
            match (up, left) {
                (None, None) => break,
                (Some(a), Some(b)) if b > a => {
                    g[i][j] = Some(b);
                    g[i][j - 1] = None;
                    j -= 1;
                }
                (Some(a), _) => {
                    g[i][j] = Some(a);
                    g[i - 1][j] = None;
                    i -= 1;
                }
                (None, Some(b)) => {
                    g[i][j] = Some(b);
                    g[i][j - 1] = None;
                    j -= 1;
                }
            }
        }
    }
    for x in g.iter_mut().flatten() {
        *x = Some(x.map_or(1, |v| v + 1));
    }
    Ok(from_grid(&g))
}

/// Inverse of [`promotion`].
pub fn promotion_inverse(n: usize, t: &Tableau) -> Result<Tableau> {
    let (r, s) = rect(t);
    let top = n as u8 + 1;
    let mut g = grid(t, r, s)?;
    let mut active: Vec<(usize, usize)> = Vec::new();
    for (i, row) in g.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if *x == Some(1) {
                *x = None;
                active.push((i, j));
            }
        }
    }
    for &(mut i, mut j) in active.iter().rev() {
        loop {
            let down = if i + 1 < r { g[i + 1][j] } else { None };
            let right = if j + 1 < s { g[i][j + 1] } else { None };
            match (down, right) {
                (None, None) => break,
                (Some(a), Some(b)) if b < a => {
                    g[i][j] = Some(b);
                    g[i][j + 1] = None;
                    j += 1;
                }
                (Some(a), _) => {
                    g[i][j] = Some(a);
                    g[i + 1][j] = None;
                    i += 1;
                }
                (None, Some(b)) => {
                    g[i][j] = Some(b);
                    g[i][j + 1] = None;
                    j += 1;
                }
            }
        }
    }
    for x in g.iter_mut().flatten() {
        *x = Some(x.map_or(top, |v| v - 1));
    }
    Ok(from_grid(&g))
}

fn rect(t: &Tableau) -> (usize, usize) {
    (t.columns.first().map_or(0, Column::height), t.columns.len())
}

/// An operator-intertwining injection of `B^{r,s}` into an ambient KR crystal.
#[derive(Debug)]
pub struct VirtualEmbedding {
    pub source: KrIndex,
    pub ambient: Arc<KrCrystal>,
    /// Ambient operator word (application order) standing for source `f_i`.
    pub words: Vec<Vec<usize>>,
    /// Image of `Λ_i` in the ambient weight lattice.
    pub weight_images: Vec<Weight>,
    map: Vec<usize>,
    inverse: HashMap<usize, usize>,
}

impl VirtualEmbedding {
    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn preimage(&self, w: usize) -> Option<usize> {
        self.inverse.get(&w).copied()
    }

    pub fn map_weight(&self, w: &Weight) -> Weight {
        let mut out = self.ambient.idx.ct.zero_weight();
        for (l, img) in w.0.iter().zip(&self.weight_images) {
            out += &(*l * img);
        }
        out
    }

    /// Multiplicities `m_i` when every word is a power of a single operator.
    pub fn multiplicities(&self) -> Option<Vec<usize>> {
        self.words
            .iter()
            .enumerate()
            .map(|(i, w)| w.iter().all(|&j| j == i).then_some(w.len()))
            .collect()
    }
}

/// How the affine operators `e_0`, `f_0` are obtained.
#[derive(Debug)]
pub enum Realization {
    Promotion { pr: Vec<usize> },
    Sigma { sigma: Vec<usize>, phi: PhiMap },
    Embedded(VirtualEmbedding),
}

/// A KR crystal with its full affine structure.
#[derive(Debug)]
pub struct KrCrystal {
    pub idx: KrIndex,
    pub classical: ClassicalCrystal,
    pub realization: Realization,
    f0: Vec<Option<usize>>,
    e0: Vec<Option<usize>>,
    eps: Vec<Weight>,
    phi: Vec<Weight>,
}

/// `true` when affine operators are available for `idx`.
pub fn has_affine_structure(idx: &KrIndex) -> bool {
    let n = idx.ct.rank();
    match idx.ct.family() {
        Family::A1 | Family::B1 | Family::A2Odd => true,
        Family::D1 => idx.r + 2 <= n,
        Family::C1 | Family::A2Even | Family::D2 => idx.r < n,
    }
}

/// The classical crystal underlying `B^{r,s}` (available for every index).
pub fn classical_crystal(idx: &KrIndex) -> Result<ClassicalCrystal> {
    ClassicalCrystal::build(idx.ct.classical(), &classical_decomposition(idx)?)
}

fn string_stats(f: &[Option<usize>], e: &[Option<usize>]) -> (Vec<usize>, Vec<usize>) {
    let n = f.len();
    let mut eps = vec![0; n];
    let mut phi = vec![0; n];
    for start in (0..n).filter(|&v| e[v].is_none()) {
        let mut chain = vec![start];
        let mut x = start;
        while let Some(y) = f[x] {
            chain.push(y);
            x = y;
        }
        let len = chain.len();
        for (k, &v) in chain.iter().enumerate() {
            eps[v] = k;
            phi[v] = len - 1 - k;
        }
    }
    (eps, phi)
}

fn invert(f: &[Option<usize>]) -> Result<Vec<Option<usize>>> {
    let mut e = vec![None; f.len()];
    for (v, &w) in f.iter().enumerate() {
        if let Some(w) = w {
            if e[w].replace(v).is_some() {
                return Err(KrError::Construction(format!("f_0 is not injective at #{w}")));
            }
        }
    }
    Ok(e)
}

impl KrCrystal {
    /// Builds `B^{r,s}` with affine operators; spin cases are out of scope.
    pub fn build(idx: &KrIndex) -> Result<Self> {
        if !has_affine_structure(idx) {
            return Err(KrError::OutOfScope(format!("affine operators for {idx}")));
        }
        let classical = classical_crystal(idx)?;
        let (realization, f0) = match idx.ct.family() {
            Family::A1 => realize_promotion(idx, &classical)?,
            _ if in_sigma_family(idx) => realize_sigma(idx, &classical)?,
            Family::B1 => realize_b_spin(idx, &classical)?,
            Family::C1 => realize_c(idx, &classical)?,
            Family::A2Even | Family::D2 => realize_doubling(idx, &classical)?,
            _ => unreachable!("has_affine_structure covers every family"),
        };
        let e0 = invert(&f0)?;
        let n = idx.ct.rank();
        let len = classical.len();
        let mut eps = vec![vec![0i64; n + 1]; len];
        let mut phi = vec![vec![0i64; n + 1]; len];
        for i in 0..=n {
            let (fi, ei): (Vec<_>, Vec<_>) = if i == 0 {
                (f0.clone(), e0.clone())
            } else {
                (
                    (0..len).map(|v| classical.f(i, v)).collect(),
                    (0..len).map(|v| classical.e(i, v)).collect(),
                )
            };
            let (ep, ph) = string_stats(&fi, &ei);
            for v in 0..len {
                eps[v][i] = ep[v] as i64;
                phi[v][i] = ph[v] as i64;
            }
        }
        Ok(KrCrystal {
            idx: *idx,
            classical,
            realization,
            f0,
            e0,
            eps: eps.into_iter().map(Weight).collect(),
            phi: phi.into_iter().map(Weight).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.classical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classical.is_empty()
    }

    pub fn ct(&self) -> CartanType {
        self.idx.ct
    }

    pub fn element(&self, v: usize) -> &Tableau {
        &self.classical.elements[v]
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.classical.index_of(t)
    }

    pub fn f(&self, i: usize, v: usize) -> Option<usize> {
        if i == 0 {
            self.f0[v]
        } else {
            self.classical.f(i, v)
        }
    }

    pub fn e(&self, i: usize, v: usize) -> Option<usize> {
        if i == 0 {
            self.e0[v]
        } else {
            self.classical.e(i, v)
        }
    }

    /// Applies `f_{w_1}`, then `f_{w_2}`, …
    pub fn apply_word(&self, word: &[usize], v: usize) -> Option<usize> {
        word.iter().try_fold(v, |x, &i| self.f(i, x))
    }

    /// Undoes [`KrCrystal::apply_word`].
    pub fn apply_e_word(&self, word: &[usize], v: usize) -> Option<usize> {
        word.iter().rev().try_fold(v, |x, &i| self.e(i, x))
    }

    pub fn eps(&self, v: usize) -> &Weight {
        &self.eps[v]
    }

    pub fn phi(&self, v: usize) -> &Weight {
        &self.phi[v]
    }

    pub fn eps_i(&self, i: usize, v: usize) -> usize {
        self.eps[v].0[i] as usize
    }

    pub fn phi_i(&self, i: usize, v: usize) -> usize {
        self.phi[v].0[i] as usize
    }

    /// Affine weight `φ(b) − ε(b)` in `Λ`-coordinates.
    pub fn weight(&self, v: usize) -> Weight {
        &self.phi[v] - &self.eps[v]
    }

    pub fn sigma(&self) -> Option<&[usize]> {
        match &self.realization {
            Realization::Sigma { sigma, .. } => Some(sigma),
            _ => None,
        }
    }

    pub fn phi_map(&self) -> Option<&PhiMap> {
        match &self.realization {
            Realization::Sigma { phi, .. } => Some(phi),
            _ => None,
        }
    }

    pub fn promotion(&self) -> Option<&[usize]> {
        match &self.realization {
            Realization::Promotion { pr } => Some(pr),
            _ => None,
        }
    }

    pub fn embedding(&self) -> Option<&VirtualEmbedding> {
        match &self.realization {
            Realization::Embedded(e) => Some(e),
            _ => None,
        }
    }

    /// All edges `(b, i, f_i b)`, ordered by source then label.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let n = self.idx.ct.rank();
        (0..self.len())
            .flat_map(|v| (0..=n).filter_map(move |i| self.f(i, v).map(|w| (v, i, w))))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", self.idx);
        for (v, t) in self.classical.elements.iter().enumerate() {
            let _ = writeln!(out, "  v{v} [label=\"{t}\"];");
        }
        for (v, i, w) in self.edges() {
            let style = if i == 0 { ", color=red, style=dashed" } else { "" };
            let _ = writeln!(out, "  v{v} -> v{w} [label=\"{i}\"{style}];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.idx.ct.to_string(),
            "r": self.idx.r,
            "s": self.idx.s,
            "vertices": self.classical.elements,
            "edges": self.edges().iter().map(|&(v, i, w)| json!({"src": v, "dst": w, "label": i})).collect::<Vec<_>>(),
        })
    }
}

type Built = (Realization, Vec<Option<usize>>);

fn realize_promotion(idx: &KrIndex, cl: &ClassicalCrystal) -> Result<Built> {
    let n = idx.ct.rank();
    let lookup = |t: Tableau| {
        cl.index_of(&t)
            .ok_or_else(|| KrError::Construction(format!("promotion leaves the crystal at {t}")))
    };
    let pr = cl
        .elements
        .iter()
        .map(|t| lookup(promotion(n, t)?))
        .collect::<Result<Vec<_>>>()?;
    let pr_inv = cl
        .elements
        .iter()
        .map(|t| lookup(promotion_inverse(n, t)?))
        .collect::<Result<Vec<_>>>()?;
    let f0 = (0..cl.len())
        .map(|v| cl.f(1, pr[v]).map(|w| pr_inv[w]))
        .collect();
    Ok((Realization::Promotion { pr }, f0))
}

fn realize_sigma(idx: &KrIndex, cl: &ClassicalCrystal) -> Result<Built> {
    let n = idx.ct.rank();
    let phi = PhiMap::new(cl, idx.r, idx.s)?;
    let mut sigma = vec![usize::MAX; cl.len()];
    let mut queue = VecDeque::new();
    for d in phi.diagrams() {
        let v = phi.phi(d)?;
        sigma[v] = phi.phi(&d.sigma())?;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for i in 2..=n {
            if let Some(u) = cl.f(i, v) {
                let w = cl.f(i, sigma[v]).ok_or_else(|| {
                    KrError::Construction(format!("σ does not commute with f_{i} at {}", cl.elements[v]))
                })?;
                if sigma[u] == usize::MAX {
                    sigma[u] = w;
                    queue.push_back(u);
                } else if sigma[u] != w {
                    return Err(KrError::Construction("σ is not well defined".into()));
                }
            }
        }
    }
    if sigma.contains(&usize::MAX) {
        return Err(KrError::Construction("σ is not defined everywhere".into()));
    }
    let f0 = (0..cl.len())
        .map(|v| cl.f(1, sigma[v]).map(|w| sigma[w]))
        .collect();
    Ok((Realization::Sigma { sigma, phi }, f0))
}

fn embed(
    idx: &KrIndex,
    cl: &ClassicalCrystal,
    ambient: Arc<KrCrystal>,
    hw_images: Vec<usize>,
    words: Vec<Vec<usize>>,
    weight_images: Vec<Weight>,
) -> Result<Built> {
    let n = idx.ct.rank();
    let mut map = vec![usize::MAX; cl.len()];
    let mut queue = VecDeque::new();
    for (comp, img) in cl.components.iter().zip(hw_images) {
        map[comp.highest] = img;
        queue.push_back(comp.highest);
    }
    while let Some(v) = queue.pop_front() {
        for (i, word) in words.iter().enumerate().take(n + 1).skip(1) {
            if let Some(u) = cl.f(i, v) {
                let w = ambient.apply_word(word, map[v]).ok_or_else(|| {
                    KrError::Construction(format!("ambient word for f_{i} undefined at {}", cl.elements[v]))
                })?;
                if map[u] == usize::MAX {
                    map[u] = w;
                    queue.push_back(u);
                } else if map[u] != w {
                    return Err(KrError::Construction("embedding is not well defined".into()));
                }
            }
        }
    }
    let mut inverse = HashMap::with_capacity(map.len());
    for (v, &w) in map.iter().enumerate() {
        if inverse.insert(w, v).is_some() {
            return Err(KrError::Construction(format!("embedding is not injective at {}", ambient.element(w))));
        }
    }
    let f0 = map
        .iter()
        .map(|&w| match ambient.apply_word(&words[0], w) {
            None => Ok(None),
            Some(x) => inverse.get(&x).copied().map(Some).ok_or_else(|| {
                KrError::Construction(format!("f_0 leaves the image at {}", ambient.element(w)))
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    let emb = VirtualEmbedding {
        source: *idx,
        ambient,
        words,
        weight_images,
        map,
        inverse,
    };
    Ok((Realization::Embedded(emb), f0))
}

fn component_by_heights(amb: &KrCrystal, heights: &[usize]) -> Result<usize> {
    amb.classical
        .components
        .iter()
        .find(|c| c.shape.spin_columns == 0 && c.shape.heights == heights)
        .map(|c| c.highest)
        .ok_or_else(|| KrError::Construction(format!("no ambient component with column heights {heights:?}")))
}

fn multiplicity_words(m: &[usize]) -> Vec<Vec<usize>> {
    m.iter().enumerate().map(|(i, &k)| vec![i; k]).collect()
}

fn scaled_fundamentals(ct: CartanType, m: &[usize]) -> Vec<Weight> {
    m.iter()
        .enumerate()
        .map(|(i, &k)| k as i64 * &ct.fundamental(i))
        .collect()
}

/// `B_n^{(1)}`, `r = n`: inside `A_{2n-1}^{(2)}` `B^{n,s}` with `m = (2, …, 2, 1)`.
fn realize_b_spin(idx: &KrIndex, cl: &ClassicalCrystal) -> Result<Built> {
    let n = idx.ct.rank();
    let amb_ct = CartanType::new(Family::A2Odd, n)?;
    let ambient = kr_crystal(&KrIndex::new(amb_ct, n, idx.s)?)?;
    let hw = cl
        .components
        .iter()
        .map(|c| {
            let mut h: Vec<usize> = c.shape.heights.iter().flat_map(|&x| [x, x]).collect();
            h.extend(std::iter::repeat_n(n, c.shape.spin_columns));
            h.sort_unstable_by(|a, b| b.cmp(a));
            component_by_heights(&ambient, &h)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = vec![2; n + 1];
    m[n] = 1;
    embed(idx, cl, ambient, hw, multiplicity_words(&m), scaled_fundamentals(amb_ct, &m))
}

/// `C_n^{(1)}`, `r < n`: the σ-fixed points of `A_{2n+1}^{(2)}` `B^{r,s}`.
fn realize_c(idx: &KrIndex, cl: &ClassicalCrystal) -> Result<Built> {
    let n = idx.ct.rank();
    let (r, s) = (idx.r, idx.s);
    let amb_ct = CartanType::new(Family::A2Odd, n + 1)?;
    let ambient = kr_crystal(&KrIndex::new(amb_ct, r, s)?)?;
    let phi = ambient
        .phi_map()
        .ok_or_else(|| KrError::Construction("ambient has no ±-diagrams".into()))?;
    let mut hw = Vec::new();
    for comp in &cl.components {
        let mut heights = comp.shape.heights.clone();
        heights.resize(s, 0);
        let mut cols = Vec::new();
        let mut k = 0;
        while k < heights.len() {
            let h = heights[k];
            let count = heights[k..].iter().take_while(|&&x| x == h).count();
            k += count;
            if h == r {
                cols.extend(std::iter::repeat_n(PmColumn::new(r, false, false), count));
                continue;
            }
            if count % 2 == 1 {
                return Err(KrError::Construction(format!("shape {:?} has an odd row", comp.shape.rows())));
            }
            let pair = if (r - h) % 2 == 1 {
                [PmColumn::new(h, true, false), PmColumn::new(h, false, true)]
            } else {
                [PmColumn::new(h, true, true), PmColumn::new(h, false, false)]
            };
            for _ in 0..count / 2 {
                cols.extend(pair);
            }
        }
        hw.push(phi.phi(&PmDiagram::new(r, cols))?);
    }
    let mut words = vec![vec![1, 0]];
    words.extend((1..=n).map(|i| vec![i + 1]));
    let mut images = vec![&amb_ct.fundamental(0) + &amb_ct.fundamental(1)];
    images.extend((1..=n).map(|i| amb_ct.fundamental(i + 1)));
    embed(idx, cl, ambient, hw, words, images)
}

/// `A_{2n}^{(2)}` and `D_{n+1}^{(2)}`, `r < n`: inside `C_n^{(1)}` `B^{r,2s}`.
fn realize_doubling(idx: &KrIndex, cl: &ClassicalCrystal) -> Result<Built> {
    let n = idx.ct.rank();
    let amb_ct = CartanType::new(Family::C1, n)?;
    let ambient = kr_crystal(&KrIndex::new(amb_ct, idx.r, 2 * idx.s)?)?;
    let hw = cl
        .components
        .iter()
        .map(|c| {
            let h: Vec<usize> = c.shape.heights.iter().flat_map(|&x| [x, x]).collect();
            component_by_heights(&ambient, &h)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = vec![2; n + 1];
    m[0] = 1;
    if idx.ct.family() == Family::D2 {
        m[n] = 1;
    }
    embed(idx, cl, ambient, hw, multiplicity_words(&m), scaled_fundamentals(amb_ct, &m))
}

static CACHE: OnceLock<Mutex<HashMap<KrIndex, Arc<KrCrystal>>>> = OnceLock::new();

/// Memoized [`KrCrystal::build`].
pub fn kr_crystal(idx: &KrIndex) -> Result<Arc<KrCrystal>> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(k) = cache.lock().expect("cache lock").get(idx) {
        return Ok(Arc::clone(k));
    }
    let built = Arc::new(KrCrystal::build(idx)?);
    let mut guard = cache.lock().expect("cache lock");
    Ok(Arc::clone(guard.entry(*idx).or_insert(built)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(t: &str, r: usize, s: usize) -> KrIndex {
        KrIndex::new(t.parse().unwrap(), r, s).unwrap()
    }

    #[test]
    fn promotion_single_box() {
        for k in 1..=3u8 {
            let t: Tableau = k.to_string().parse().unwrap();
            let p = promotion(2, &t).unwrap();
            assert_eq!(p.to_string(), (k % 3 + 1).to_string());
            assert_eq!(promotion_inverse(2, &p).unwrap(), t);
        }
    }

    #[test]
    fn type_a_f0() {
        let k = kr_crystal(&idx("A2~1", 1, 1)).unwrap();
        let v = k.index_of(&"3".parse().unwrap()).unwrap();
        assert_eq!(k.element(k.f(0, v).unwrap()).to_string(), "1");
    }

    #[test]
    fn c3_b21_size_and_zero_arrows() {
        let k = kr_crystal(&idx("C3~1", 2, 1)).unwrap();
        assert_eq!(k.len(), 14);
        let zero: Vec<_> = k.edges().into_iter().filter(|e| e.1 == 0).collect();
        assert_eq!(zero.len(), 4);
    }

    #[test]
    fn spin_cases_out_of_scope() {
        assert!(matches!(KrCrystal::build(&idx("D4~1", 4, 1)), Err(KrError::OutOfScope(_))));
        assert!(matches!(KrCrystal::build(&idx("C3~1", 3, 1)), Err(KrError::OutOfScope(_))));
    }
}
