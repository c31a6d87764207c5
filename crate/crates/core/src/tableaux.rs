//! Column tableaux as crystal elements, classical crystals generated by
//! `f_i`-closure, and classical decompositions of `B^{r,s}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cartan::{Family, KrIndex};
use crate::error::{KrError, Result};
use crate::letters::{signature, ClassicalKind, ClassicalType, Letter, Signature, SpinColumn};

/// One column of a tableau, stored bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Letters(Vec<Letter>),
    Spin(SpinColumn),
}

impl Column {
    pub fn letters(&self) -> Vec<Letter> {
        match self {
            Column::Letters(v) => v.clone(),
            Column::Spin(c) => c.letters(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Column::Letters(v) => v.len(),
            Column::Spin(c) => c.0.len(),
        }
    }
}

/// A crystal element: a list of columns `c_1, …, c_s` (left to right).
/// Empty columns are not stored; the empty tableau is `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Tableau {
    pub columns: Vec<Column>,
}

impl Tableau {
    pub fn from_letter_columns(cols: Vec<Vec<Letter>>) -> Self {
        Tableau {
            columns: cols
                .into_iter()
                .filter(|c| !c.is_empty())
                .map(Column::Letters)
                .collect(),
        }
    }

    pub fn empty() -> Self {
        Tableau::default()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn heights(&self) -> Vec<usize> {
        self.columns.iter().map(Column::height).collect()
    }

    pub fn letter_columns(&self) -> Vec<Vec<Letter>> {
        self.columns.iter().map(Column::letters).collect()
    }

    /// Rows of the rendering, row 1 (smallest entries) first.
    pub fn rows(&self) -> Vec<Vec<Letter>> {
        let cols = self.letter_columns();
        let h = cols.iter().map(Vec::len).max().unwrap_or(0);
        (0..h)
            .map(|i| cols.iter().filter_map(|c| c.get(i).copied()).collect())
            .collect()
    }

    /// Tensor factors in reading order `c_s ⊗ ⋯ ⊗ c_1`: letter columns
    /// contribute one factor per letter (bottom to top), spin columns one
    /// factor each.
    fn factors(&self) -> Vec<(usize, Option<usize>)> {
        let mut out = Vec::new();
        for (c, col) in self.columns.iter().enumerate().rev() {
            match col {
                Column::Letters(v) => out.extend((0..v.len()).map(|r| (c, Some(r)))),
                Column::Spin(_) => out.push((c, None)),
            }
        }
        out
    }

    /// The reading word (letters only), in tensor order.
    pub fn reading_word(&self) -> Vec<Letter> {
        self.factors()
            .into_iter()
            .flat_map(|(c, r)| match (&self.columns[c], r) {
                (Column::Letters(v), Some(r)) => vec![v[r]],
                (col, _) => col.letters(),
            })
            .collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.columns.is_empty() {
            return write!(f, "u");
        }
        let cols: Vec<String> = self
            .letter_columns()
            .iter()
            .map(|c| {
                c.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", cols.join("|"))
    }
}

/// Parses `"1,2|-2,-1"` (columns bottom to top, separated by `|`) or `"u"`.
impl FromStr for Tableau {
    type Err = KrError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "u" || s.is_empty() {
            return Ok(Tableau::empty());
        }
        let cols = s
            .split('|')
            .map(|c| c.split(',').map(str::parse).collect::<Result<Vec<Letter>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Tableau::from_letter_columns(cols))
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letter_columns().serialize(s)
    }
}

impl ClassicalType {
    fn factor_eps_phi(&self, t: &Tableau, (c, r): (usize, Option<usize>), i: usize) -> (usize, usize) {
        match (&t.columns[c], r) {
            (Column::Letters(v), Some(r)) => self.letter_eps_phi(i, v[r]),
            (Column::Spin(sc), _) => sc.eps_phi(self.kind, i),
            _ => unreachable!("factor positions come from the tableau"),
        }
    }

    pub fn signature_of(&self, t: &Tableau, i: usize) -> (Signature, Vec<(usize, Option<usize>)>) {
        let pos = t.factors();
        let sig = signature(pos.iter().map(|&p| self.factor_eps_phi(t, p, i)));
        (sig, pos)
    }

    pub fn eps(&self, i: usize, t: &Tableau) -> usize {
        self.signature_of(t, i).0.eps
    }

    pub fn phi(&self, i: usize, t: &Tableau) -> usize {
        self.signature_of(t, i).0.phi
    }

    pub fn f(&self, i: usize, t: &Tableau) -> Option<Tableau> {
        let (sig, pos) = self.signature_of(t, i);
        let (c, r) = pos[sig.f_pos?];
        let mut out = t.clone();
        match (&mut out.columns[c], r) {
            (Column::Letters(v), Some(r)) => v[r] = self.letter_f(i, v[r])?,
            (Column::Spin(sc), _) => *sc = sc.f(self.kind, i)?,
            _ => unreachable!(),
        }
        Some(out)
    }

    pub fn e(&self, i: usize, t: &Tableau) -> Option<Tableau> {
        let (sig, pos) = self.signature_of(t, i);
        let (c, r) = pos[sig.e_pos?];
        let mut out = t.clone();
        match (&mut out.columns[c], r) {
            (Column::Letters(v), Some(r)) => v[r] = self.letter_e(i, v[r])?,
            (Column::Spin(sc), _) => *sc = sc.e(self.kind, i)?,
            _ => unreachable!(),
        }
        Some(out)
    }

    /// Classical weight `(φ_i − ε_i)_{i=1..n}`.
    pub fn weight(&self, t: &Tableau) -> Vec<i64> {
        let mut w = vec![0i64; self.n];
        for col in &t.columns {
            let part = match col {
                Column::Letters(v) => {
                    let mut acc = vec![0i64; self.n];
                    for &x in v {
                        for (a, b) in acc.iter_mut().zip(self.letter_weight(x)) {
                            *a += b;
                        }
                    }
                    acc
                }
                Column::Spin(sc) => sc.weight(self.kind),
            };
            for (a, b) in w.iter_mut().zip(part) {
                *a += b;
            }
        }
        w
    }

    pub fn is_highest(&self, t: &Tableau, indices: impl IntoIterator<Item = usize>) -> bool {
        indices.into_iter().all(|i| self.eps(i, t) == 0)
    }
}

/// The shape of a classical highest-weight element: optional leading spin
/// columns followed by letter columns of the given heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Shape {
    pub spin_columns: usize,
    /// Spin columns carry a `-` in the last position (the other spin node of `D_n`).
    pub odd_spin: bool,
    pub heights: Vec<usize>,
}

impl Shape {
    pub fn letters(heights: Vec<usize>) -> Self {
        let mut heights: Vec<usize> = heights.into_iter().filter(|&h| h > 0).collect();
        heights.sort_unstable_by(|a, b| b.cmp(a));
        Shape {
            spin_columns: 0,
            odd_spin: false,
            heights,
        }
    }

    /// Shape from partition rows.
    pub fn from_rows(rows: &[usize]) -> Self {
        let width = rows.iter().copied().max().unwrap_or(0);
        Shape::letters(
            (0..width)
                .map(|j| rows.iter().filter(|&&x| x > j).count())
                .collect(),
        )
    }

    pub fn rows(&self) -> Vec<usize> {
        let h = self.heights.first().copied().unwrap_or(0);
        (0..h)
            .map(|i| self.heights.iter().filter(|&&x| x > i).count())
            .collect()
    }

    /// The highest-weight tableau: column `j` is `1, …, h_j`.
    pub fn highest_weight_tableau(&self, ct: ClassicalType) -> Tableau {
        let mut cols = Vec::new();
        for _ in 0..self.spin_columns {
            let mut sc = SpinColumn::highest(ct.n);
            if self.odd_spin {
                sc.0[ct.n - 1] = false;
            }
            cols.push(Column::Spin(sc));
        }
        for &h in &self.heights {
            cols.push(Column::Letters(
                (1..=h as u8).map(Letter::Unbarred).collect(),
            ));
        }
        Tableau { columns: cols }
    }

    pub fn weight(&self, ct: ClassicalType) -> Vec<i64> {
        ct.weight(&self.highest_weight_tableau(ct))
    }

    /// Coordinates of the highest weight in the orthogonal basis `ε_1, …, ε_n`
    /// (`ε_1, …, ε_{n+1}` for type A).
    fn orthogonal_coords(&self, ct: ClassicalType) -> Vec<f64> {
        let len = if ct.kind == ClassicalKind::A { ct.n + 1 } else { ct.n };
        let mut l: Vec<f64> = (0..len)
            .map(|i| self.heights.iter().filter(|&&h| h > i).count() as f64)
            .collect();
        let half = self.spin_columns as f64 / 2.0;
        for (i, x) in l.iter_mut().enumerate() {
            *x += if self.odd_spin && i + 1 == len { -half } else { half };
        }
        l
    }

    /// Weyl dimension of the irreducible module with this highest weight.
    pub fn dimension(&self, ct: ClassicalType) -> f64 {
        let l = self.orthogonal_coords(ct);
        let m = l.len();
        let rho: Vec<f64> = (0..m)
            .map(|i| {
                let k = (m - i) as f64;
                match ct.kind {
                    ClassicalKind::A => -(i as f64),
                    ClassicalKind::B => k - 0.5,
                    ClassicalKind::C => k,
                    ClassicalKind::D => k - 1.0,
                }
            })
            .collect();
        let x: Vec<f64> = l.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut d = 1.0;
        for i in 0..m {
            for j in i + 1..m {
                d *= match ct.kind {
                    ClassicalKind::A => (x[i] - x[j]) / (rho[i] - rho[j]),
                    _ => (x[i] * x[i] - x[j] * x[j]) / (rho[i] * rho[i] - rho[j] * rho[j]),
                };
            }
            if matches!(ct.kind, ClassicalKind::B | ClassicalKind::C) {
                d *= x[i] / rho[i];
            }
        }
        d.round()
    }
}

/// Breadth-first closure of `highest` under all classical `f_i`.
pub fn generate_component(ct: ClassicalType, highest: &Tableau) -> Result<Vec<Tableau>> {
    if !ct.is_highest(highest, 1..=ct.n) {
        return Err(KrError::NotHighestWeight(highest.to_string()));
    }
    let mut seen: HashMap<Tableau, ()> = HashMap::new();
    let mut order = vec![highest.clone()];
    seen.insert(highest.clone(), ());
    let mut queue = VecDeque::from([highest.clone()]);
    while let Some(t) = queue.pop_front() {
        for i in 1..=ct.n {
            if let Some(u) = ct.f(i, &t) {
                if seen.insert(u.clone(), ()).is_none() {
                    order.push(u.clone());
                    queue.push_back(u);
                }
            }
        }
    }
    Ok(order)
}

/// A classical component inside a [`ClassicalCrystal`].
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub shape: Shape,
    pub highest: usize,
    pub start: usize,
    pub len: usize,
}

/// A finite classical crystal with precomputed `f_i`, `e_i` tables.
#[derive(Clone, Debug)]
pub struct ClassicalCrystal {
    pub ct: ClassicalType,
    pub elements: Vec<Tableau>,
    pub components: Vec<Component>,
    index: HashMap<Tableau, usize>,
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
}

impl ClassicalCrystal {
    pub fn build(ct: ClassicalType, shapes: &[Shape]) -> Result<Self> {
        let mut elements = Vec::new();
        let mut components = Vec::new();
        let mut index = HashMap::new();
        for shape in shapes {
            let hw = shape.highest_weight_tableau(ct);
            let comp = generate_component(ct, &hw)?;
            let start = elements.len();
            for t in comp {
                if index.insert(t.clone(), elements.len()).is_some() {
                    return Err(KrError::Construction(format!(
                        "components overlap at {t}"
                    )));
                }
                elements.push(t);
            }
            components.push(Component {
                shape: shape.clone(),
                highest: start,
                start,
                len: elements.len() - start,
            });
        }
        let mut f = vec![vec![None; elements.len()]; ct.n];
        let mut e = vec![vec![None; elements.len()]; ct.n];
        for (v, t) in elements.iter().enumerate() {
            for i in 1..=ct.n {
                if let Some(u) = ct.f(i, t) {
                    let w = index[&u];
                    f[i - 1][v] = Some(w);
                    e[i - 1][w] = Some(v);
                }
            }
        }
        Ok(ClassicalCrystal {
            ct,
            elements,
            components,
            index,
            f,
            e,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn f(&self, i: usize, v: usize) -> Option<usize> {
        self.f[i - 1][v]
    }

    pub fn e(&self, i: usize, v: usize) -> Option<usize> {
        self.e[i - 1][v]
    }

    pub fn eps(&self, i: usize, v: usize) -> usize {
        let mut k = 0;
        let mut x = v;
        while let Some(y) = self.e(i, x) {
            k += 1;
            x = y;
        }
        k
    }

    pub fn phi(&self, i: usize, v: usize) -> usize {
        let mut k = 0;
        let mut x = v;
        while let Some(y) = self.f(i, x) {
            k += 1;
            x = y;
        }
        k
    }

    /// Elements with `ε_j = 0` for all `j ∈ indices`.
    pub fn highest_weight_elements(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| indices.iter().all(|&j| self.e(j, v).is_none()))
            .collect()
    }

    pub fn component_of(&self, v: usize) -> &Component {
        self.components
            .iter()
            .find(|c| (c.start..c.start + c.len).contains(&v))
            .expect("every element lies in a component")
    }

    /// Applies `f_{i_1}`, then `f_{i_2}`, … (the word is read left to right).
    pub fn apply_word(&self, word: &[usize], v: usize) -> Option<usize> {
        word.iter().try_fold(v, |x, &i| self.f(i, x))
    }
}

fn vertical_domino_heights(r: usize, width: usize) -> Vec<Vec<usize>> {
    let choices: Vec<usize> = (0..=r / 2).map(|k| r - 2 * k).collect();
    let mut out = Vec::new();
    fn rec(pos: usize, width: usize, choices: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == width {
            out.push(cur.clone());
            return;
        }
        for k in pos..choices.len() {
            cur.push(choices[k]);
            rec(k, width, choices, cur, out);
            cur.pop();
        }
    }
    rec(0, width, &choices, &mut Vec::new(), &mut out);
    out
}

fn partitions_in_box(rows: usize, width: usize, parity: Option<usize>) -> Vec<Vec<usize>> {
    // Weakly decreasing row lengths; optional fixed parity of every row.
    let values: Vec<usize> = (0..=width)
        .rev()
        .filter(|v| parity.is_none_or(|p| v % 2 == p % 2))
        .collect();
    let mut out = Vec::new();
    fn rec(pos: usize, rows: usize, values: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rows {
            out.push(cur.clone());
            return;
        }
        for k in pos..values.len() {
            cur.push(values[k]);
            rec(k, rows, values, cur, out);
            cur.pop();
        }
    }
    rec(0, rows, &values, &mut Vec::new(), &mut out);
    out
}

/// Classical highest weights of `B^{r,s}`, largest shape first.
pub fn classical_decomposition(idx: &KrIndex) -> Result<Vec<Shape>> {
    let ct = idx.ct;
    let n = ct.rank();
    let (r, s) = (idx.r, idx.s);
    let vertical = |r: usize, width: usize| -> Vec<Shape> {
        vertical_domino_heights(r, width)
            .into_iter()
            .map(Shape::letters)
            .collect()
    };
    let spin = |odd: bool| Shape {
        spin_columns: s,
        odd_spin: odd,
        heights: vec![],
    };
    Ok(match ct.family() {
        Family::A1 => vec![Shape::letters(vec![r; s])],
        Family::D1 if r == n => vec![spin(false)],
        Family::D1 if r == n - 1 => vec![spin(true)],
        Family::B1 if r == n => {
            let mut shapes = vertical(n, s / 2);
            if s % 2 == 1 {
                for sh in &mut shapes {
                    sh.spin_columns = 1;
                }
            }
            shapes
        }
        Family::B1 | Family::D1 | Family::A2Odd => vertical(r, s),
        Family::C1 if r == n => vec![Shape::letters(vec![n; s])],
        Family::C1 => partitions_in_box(r, s, Some(s))
            .iter()
            .map(|rows| Shape::from_rows(rows))
            .collect(),
        Family::D2 if r == n => vec![spin(false)],
        Family::A2Even | Family::D2 => partitions_in_box(r, s, None)
            .iter()
            .map(|rows| Shape::from_rows(rows))
            .collect(),
    })
}

/// Number of elements of `B^{r,s}`, from the Weyl dimension formula.
pub fn crystal_size(idx: &KrIndex) -> Result<f64> {
    let ct = idx.ct.classical();
    Ok(classical_decomposition(idx)?
        .iter()
        .map(|sh| sh.dimension(ct))
        .sum())
}

/// `true` when the classical type of `idx` uses the given kind of spin columns.
pub fn uses_spin_columns(idx: &KrIndex) -> bool {
    let n = idx.ct.rank();
    match idx.ct.family() {
        Family::D1 => idx.r >= n - 1,
        Family::B1 | Family::D2 => idx.r == n,
        _ => false,
    }
}

/// Kind used by spin columns of `idx` (B or D).
pub fn spin_kind(idx: &KrIndex) -> ClassicalKind {
    idx.ct.classical().kind
}
