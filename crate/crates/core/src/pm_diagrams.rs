//! ±-diagrams: nested shapes `λ ⊆ μ ⊆ Λ` where `μ/λ` carries `+` and
//! `Λ/μ` carries `−`. They index the `{2, …, n}`-highest-weight elements of
//! `B^{r,s}` for types `B_n^{(1)}`, `D_n^{(1)}` and `A_{2n-1}^{(2)}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::cartan::{Family, KrIndex, Weight};
use crate::error::{KrError, Result};
use crate::letters::{ClassicalType, Letter};
use crate::tableaux::{ClassicalCrystal, Tableau};

/// One column: `inner` sign-free cells, then an optional `+`, then an optional `−`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PmColumn {
    pub inner: usize,
    pub plus: bool,
    pub minus: bool,
}

impl PmColumn {
    pub const fn new(inner: usize, plus: bool, minus: bool) -> Self {
        PmColumn { inner, plus, minus }
    }

    pub fn middle(&self) -> usize {
        self.inner + self.plus as usize
    }

    pub fn outer(&self) -> usize {
        self.middle() + self.minus as usize
    }

    fn key(&self) -> (usize, usize, usize) {
        (self.outer(), self.middle(), self.inner)
    }

    /// The column image under the diagram involution for node `r`.
    pub fn sigma(&self, r: usize) -> PmColumn {
        if self.inner == r {
            return *self;
        }
        if (r - self.inner) % 2 == 1 {
            PmColumn::new(self.inner, !self.plus, !self.minus)
        } else {
            let full = !self.plus;
            PmColumn::new(self.inner, full, full)
        }
    }
}

/// A ±-diagram with exactly `s` columns (empty columns included), kept in
/// canonical order: decreasing outer height, then middle, then inner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PmDiagram {
    pub r: usize,
    pub columns: Vec<PmColumn>,
}

fn conjugate(rows: &[usize], width: usize) -> Vec<usize> {
    (0..width)
        .map(|j| rows.iter().filter(|&&x| x > j).count())
        .collect()
}

impl PmDiagram {
    pub fn new(r: usize, mut columns: Vec<PmColumn>) -> Self {
        columns.sort_by_key(|c| std::cmp::Reverse(c.key()));
        PmDiagram { r, columns }
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    fn shape(&self, f: impl Fn(&PmColumn) -> usize) -> Vec<usize> {
        let h = self.columns.iter().map(&f).max().unwrap_or(0);
        let heights: Vec<usize> = self.columns.iter().map(f).collect();
        (0..h).map(|i| heights.iter().filter(|&&x| x > i).count()).collect()
    }

    /// Row lengths of the inner shape `λ`.
    pub fn inner(&self) -> Vec<usize> {
        self.shape(|c| c.inner)
    }

    /// Row lengths of the middle shape `μ`.
    pub fn middle(&self) -> Vec<usize> {
        self.shape(PmColumn::middle)
    }

    /// Row lengths of the outer shape `Λ`.
    pub fn outer(&self) -> Vec<usize> {
        self.shape(PmColumn::outer)
    }

    /// Both strips are horizontal: the column triples are simultaneously sorted.
    pub fn is_nested(&self) -> bool {
        self.columns.windows(2).all(|w| {
            w[0].inner >= w[1].inner && w[0].middle() >= w[1].middle() && w[0].outer() >= w[1].outer()
        })
    }

    pub fn sigma(&self) -> PmDiagram {
        PmDiagram::new(self.r, self.columns.iter().map(|c| c.sigma(self.r)).collect())
    }

    /// Concatenation of columns.
    pub fn concat(&self, other: &PmDiagram) -> PmDiagram {
        let mut cols = self.columns.clone();
        cols.extend(other.columns.iter().copied());
        PmDiagram::new(self.r, cols)
    }

    /// Doubles every column (the image shape of a doubling embedding).
    pub fn doubled(&self) -> PmDiagram {
        self.concat(self)
    }

    /// Reads a diagram off a `{2, …, n}`-highest-weight tableau: the outer
    /// shape is the column shape, the inner rows are `wt_2, …, wt_n` and the
    /// middle rows count unbarred letters per row.
    pub fn from_tableau(ct: ClassicalType, r: usize, s: usize, t: &Tableau) -> Result<PmDiagram> {
        let cols = t.letter_columns();
        if cols.len() > s || cols.iter().any(|c| c.len() > r) {
            return Err(KrError::Malformed(format!("{t} does not fit in {r}x{s}")));
        }
        let count = |x: Letter| cols.iter().flatten().filter(|&&y| y == x).count() as i64;
        let inner_rows: Vec<i64> = (2..=ct.n as u8)
            .map(|k| count(Letter::Unbarred(k)) - count(Letter::Barred(k)))
            .collect();
        if inner_rows.iter().any(|&x| x < 0) || inner_rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(KrError::NotHighestWeight(t.to_string()));
        }
        let inner_rows: Vec<usize> = inner_rows.into_iter().map(|x| x as usize).collect();
        let mid_rows: Vec<usize> = (0..r)
            .map(|i| {
                cols.iter()
                    .filter(|c| c.get(i).is_some_and(Letter::is_unbarred))
                    .count()
            })
            .collect();
        let inner = conjugate(&inner_rows, s);
        let mid = conjugate(&mid_rows, s);
        let mut outer: Vec<usize> = cols.iter().map(Vec::len).collect();
        outer.resize(s, 0);
        let mut columns = Vec::with_capacity(s);
        for j in 0..s {
            if inner[j] > mid[j] || mid[j] > inner[j] + 1 || outer[j] < mid[j] || outer[j] > mid[j] + 1 {
                return Err(KrError::Malformed(format!("{t} has no ±-diagram")));
            }
            columns.push(PmColumn::new(inner[j], mid[j] > inner[j], outer[j] > mid[j]));
        }
        Ok(PmDiagram::new(r, columns))
    }

    /// Row-by-row text picture, top row first: `·` sign-free, `+`, `−`.
    pub fn render(&self) -> String {
        let h = self.columns.iter().map(PmColumn::outer).max().unwrap_or(0);
        if h == 0 {
            return "∅".into();
        }
        let mut lines = Vec::new();
        for y in (1..=h).rev() {
            let line: String = self
                .columns
                .iter()
                .filter(|c| c.outer() >= y)
                .map(|c| {
                    if y <= c.inner {
                        '·'
                    } else if y == c.inner + 1 && c.plus {
                        '+'
                    } else {
                        '−'
                    }
                })
                .collect();
            lines.push(line);
        }
        lines.join("\n")
    }
}

impl fmt::Display for PmDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .filter(|c| c.outer() > 0)
            .map(|c| {
                format!(
                    "{}{}{}",
                    c.inner,
                    if c.plus { "+" } else { "" },
                    if c.minus { "-" } else { "" }
                )
            })
            .collect();
        if cols.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "[{}]", cols.join(" "))
        }
    }
}

/// Classical rank that bounds the inner height: `inner ≤ n − 1`.
fn admissible_columns(r: usize, n: usize) -> Vec<PmColumn> {
    let mut out = Vec::new();
    let mut outer = r as i64;
    while outer >= 0 {
        let o = outer as usize;
        for (p, m) in [(false, false), (true, false), (false, true), (true, true)] {
            let extra = p as usize + m as usize;
            if extra <= o && o - extra < n {
                out.push(PmColumn::new(o - extra, p, m));
            }
        }
        outer -= 2;
    }
    out
}

/// Every admissible ±-diagram for `B^{r,s}` of a type in the σ-family.
pub fn admissible_diagrams(idx: &KrIndex) -> Result<Vec<PmDiagram>> {
    check_family(idx)?;
    let n = idx.ct.rank();
    let cols = admissible_columns(idx.r, n);
    let mut out = Vec::new();
    fn rec(start: usize, left: usize, cols: &[PmColumn], cur: &mut Vec<PmColumn>, r: usize, out: &mut Vec<PmDiagram>) {
        if left == 0 {
            let d = PmDiagram::new(r, cur.clone());
            if d.is_nested() {
                out.push(d);
            }
            return;
        }
        for k in start..cols.len() {
            cur.push(cols[k]);
            rec(k, left - 1, cols, cur, r, out);
            cur.pop();
        }
    }
    rec(0, idx.s, &cols, &mut Vec::new(), idx.r, &mut out);
    out.sort();
    Ok(out)
}

/// `true` for the indices realized by the diagram involution.
pub fn in_sigma_family(idx: &KrIndex) -> bool {
    let n = idx.ct.rank();
    match idx.ct.family() {
        Family::B1 => idx.r < n,
        Family::D1 => idx.r + 2 <= n,
        Family::A2Odd => true,
        _ => false,
    }
}

fn check_family(idx: &KrIndex) -> Result<()> {
    if in_sigma_family(idx) {
        Ok(())
    } else {
        Err(KrError::OutOfRange(format!("{idx} is not realized through ±-diagrams")))
    }
}

/// The ±-diagram attached to the fundamental weight `Λ_k`.
pub fn diagram_of_fundamental(idx: &KrIndex, k: usize) -> Result<PmDiagram> {
    check_family(idx)?;
    let n = idx.ct.rank();
    let r = idx.r;
    if k > n {
        return Err(KrError::OutOfRange(format!("Λ_{k} for rank {n}")));
    }
    let c = PmColumn::new;
    let cols = match k {
        0 if r.is_multiple_of(2) => vec![c(0, false, false)],
        1 if r.is_multiple_of(2) => vec![c(0, true, true)],
        0 => vec![c(0, true, false)],
        1 => vec![c(0, false, true)],
        _ if k <= r && (r - k) % 2 == 1 => vec![c(k - 1, true, true), c(k - 1, false, false)],
        _ if k <= r => vec![c(k - 1, true, false), c(k - 1, false, true)],
        _ => {
            let spin = match idx.ct.family() {
                Family::D1 => k >= n - 1,
                Family::B1 => k == n,
                _ => false,
            };
            if spin {
                vec![c(r, false, false)]
            } else {
                vec![c(r, false, false), c(r, false, false)]
            }
        }
    };
    Ok(PmDiagram::new(r, cols))
}

/// Concatenation of `ℓ_k` copies of each `diagram(Λ_k)`; must have exactly `s` columns.
pub fn diagram_of_weight(idx: &KrIndex, w: &Weight) -> Result<PmDiagram> {
    check_family(idx)?;
    if !w.is_dominant() || w.0.len() != idx.ct.rank() + 1 {
        return Err(KrError::InvalidWeight(w.to_string()));
    }
    let mut cols = Vec::new();
    for (k, &l) in w.0.iter().enumerate() {
        let d = diagram_of_fundamental(idx, k)?;
        for _ in 0..l {
            cols.extend(d.columns.iter().copied());
        }
    }
    if cols.len() != idx.s {
        return Err(KrError::LevelMismatch {
            expected: idx.s as i64,
            got: idx.ct.level(w),
        });
    }
    Ok(PmDiagram::new(idx.r, cols))
}

fn column(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    letters.into_iter().collect()
}

fn unbarred(range: std::ops::RangeInclusive<usize>) -> Vec<Letter> {
    range.map(|k| Letter::Unbarred(k as u8)).collect()
}

/// Barred letters `hi̅, …, lo̅` in increasing letter order (i.e. `hi` first).
fn barred_desc(hi: usize, lo: usize) -> Vec<Letter> {
    (lo..=hi).rev().map(|k| Letter::Barred(k as u8)).collect()
}

/// The target tableau `T(Λ_k)` of the σ-family, or of `C_n^{(1)}` with `r = n`.
pub fn tableau_of_fundamental(idx: &KrIndex, k: usize) -> Result<Tableau> {
    let n = idx.ct.rank();
    let r = idx.r;
    if k > n {
        return Err(KrError::OutOfRange(format!("Λ_{k} for rank {n}")));
    }
    if idx.ct.family() == Family::C1 && r == n {
        let col = if k == 0 {
            unbarred(1..=n)
        } else {
            let mut c = unbarred(k + 1..=n);
            c.extend(barred_desc(n, n - k + 1));
            c
        };
        return Ok(Tableau::from_letter_columns(vec![col]));
    }
    check_family(idx)?;
    let cols = match k {
        0 if r.is_multiple_of(2) => vec![],
        1 if r.is_multiple_of(2) => vec![column([Letter::Unbarred(2), Letter::Barred(2)])],
        0 => vec![vec![Letter::Unbarred(1)]],
        1 => vec![vec![Letter::Barred(1)]],
        _ if k <= r && (r - k) % 2 == 1 => {
            let mut c1 = unbarred(2..=k + 1);
            c1.push(Letter::Barred(k as u8 + 1));
            vec![c1, barred_desc(k, 2)]
        }
        _ if k <= r => vec![unbarred(1..=k), barred_desc(k, 1)],
        _ => match idx.ct.family() {
            Family::D1 if k >= n - 1 => {
                // Bottom entry n for Λ_{n−1} and n̄ for Λ_n, then alternating.
                let bottom_plain = k == n - 1;
                let c = (0..r)
                    .map(|p| {
                        if (p % 2 == 0) == bottom_plain {
                            Letter::Unbarred(n as u8)
                        } else {
                            Letter::Barred(n as u8)
                        }
                    })
                    .collect();
                vec![c]
            }
            Family::B1 if k == n => vec![vec![Letter::Zero; r]],
            _ => vec![unbarred(k - r + 1..=k), barred_desc(k, k - r + 1)],
        },
    };
    Ok(Tableau::from_letter_columns(cols))
}

/// `Φ` and its inverse on a classical crystal of `B^{r,s}`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pub r: usize,
    pub s: usize,
    to_element: HashMap<PmDiagram, usize>,
    to_diagram: HashMap<usize, PmDiagram>,
}

impl PhiMap {
    /// Reads off the diagrams of all `{2, …, n}`-highest-weight elements and
    /// checks that they are distinct.
    pub fn new(crystal: &ClassicalCrystal, r: usize, s: usize) -> Result<Self> {
        let ct = crystal.ct;
        let indices: Vec<usize> = (2..=ct.n).collect();
        let mut to_element = HashMap::new();
        let mut to_diagram = HashMap::new();
        for v in crystal.highest_weight_elements(&indices) {
            let d = PmDiagram::from_tableau(ct, r, s, &crystal.elements[v])?;
            if to_element.insert(d.clone(), v).is_some() {
                return Err(KrError::Construction(format!("diagram {d} occurs twice")));
            }
            to_diagram.insert(v, d);
        }
        Ok(PhiMap {
            r,
            s,
            to_element,
            to_diagram,
        })
    }

    pub fn len(&self) -> usize {
        self.to_element.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_element.is_empty()
    }

    pub fn phi(&self, d: &PmDiagram) -> Result<usize> {
        self.to_element
            .get(d)
            .copied()
            .ok_or_else(|| KrError::Malformed(format!("inadmissible ±-diagram {d}")))
    }

    pub fn phi_inverse(&self, v: usize) -> Result<&PmDiagram> {
        self.to_diagram
            .get(&v)
            .ok_or_else(|| KrError::NotHighestWeight(format!("element #{v}")))
    }

    pub fn diagrams(&self) -> HashSet<&PmDiagram> {
        self.to_element.keys().collect()
    }
}

/// Shortest `f_i` path from `source` to `target` using only `indices`,
/// returned in application order. Ties break towards smaller indices.
pub fn derive_operator_string(
    crystal: &ClassicalCrystal,
    source: usize,
    target: usize,
    indices: &[usize],
) -> Result<Vec<usize>> {
    let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut queue = VecDeque::from([source]);
    let mut seen = HashSet::from([source]);
    while let Some(v) = queue.pop_front() {
        if v == target {
            let mut word = Vec::new();
            let mut x = v;
            while let Some(&(p, i)) = prev.get(&x) {
                word.push(i);
                x = p;
            }
            word.reverse();
            return Ok(word);
        }
        for &i in indices {
            if let Some(w) = crystal.f(i, v) {
                if seen.insert(w) {
                    prev.insert(w, (v, i));
                    queue.push_back(w);
                }
            }
        }
    }
    Err(KrError::NoPath {
        from: crystal.elements[source].to_string(),
        to: crystal.elements[target].to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;

    fn idx(t: &str, r: usize, s: usize) -> KrIndex {
        KrIndex::new(t.parse::<CartanType>().unwrap(), r, s).unwrap()
    }

    #[test]
    fn sigma_is_an_involution_on_columns() {
        for r in 1..5 {
            for c in admissible_columns(r, 6) {
                assert_eq!(c.sigma(r).sigma(r), c);
                assert_eq!(c.sigma(r).outer() % 2, r % 2);
            }
        }
    }

    #[test]
    fn fundamental_table() {
        let i = idx("D5~1", 2, 2);
        assert_eq!(diagram_of_fundamental(&i, 0).unwrap().to_string(), "∅");
        assert_eq!(diagram_of_fundamental(&i, 1).unwrap().to_string(), "[0+-]");
        assert_eq!(diagram_of_fundamental(&i, 2).unwrap().to_string(), "[1+ 1-]");
        assert_eq!(diagram_of_fundamental(&i, 3).unwrap().to_string(), "[2 2]");
        assert_eq!(diagram_of_fundamental(&i, 4).unwrap().to_string(), "[2]");
        let j = idx("B4~1", 3, 1);
        assert_eq!(diagram_of_fundamental(&j, 0).unwrap().to_string(), "[0+]");
        assert_eq!(diagram_of_fundamental(&j, 2).unwrap().to_string(), "[1+- 1]");
    }

    #[test]
    fn weight_diagrams() {
        let i = idx("B3~1", 1, 2);
        let d = diagram_of_weight(&i, &Weight(vec![1, 1, 0, 0])).unwrap();
        assert_eq!(d.render(), "+−");
        assert!(diagram_of_weight(&i, &Weight(vec![1, 0, 0, 0])).is_err());
    }

    #[test]
    fn target_tableaux() {
        let i = idx("D4~1", 2, 2);
        assert_eq!(tableau_of_fundamental(&i, 2).unwrap().to_string(), "1,2|-2,-1");
        assert_eq!(tableau_of_fundamental(&i, 1).unwrap().to_string(), "2,-2");
        let c = idx("C2~1", 2, 1);
        assert_eq!(tableau_of_fundamental(&c, 2).unwrap().to_string(), "-2,-1");
        assert_eq!(tableau_of_fundamental(&c, 1).unwrap().to_string(), "2,-2");
        let j = idx("B4~1", 3, 1);
        assert_eq!(tableau_of_fundamental(&j, 2).unwrap().to_string(), "2,3,-3|-2");
    }
}
