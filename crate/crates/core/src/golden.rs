//! Bundled reference data for `B^{2,s}` of type `C_3^{(1)}`, `s = 1, 2, 3`,
//! and comparisons of the generated crystals against it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::affine::kr_crystal;
use crate::cartan::{CartanType, Family, KrIndex, Weight};
use crate::error::{KrError, Result};
use crate::perfectness::classify_minimal;
use crate::tableaux::Tableau;

const B21_GRAPH: &str = include_str!("../fixtures/c3_b21_graph.txt");
const B22_F0: &str = include_str!("../fixtures/c3_b22_f0.txt");
const B21_MINIMAL: &str = include_str!("../fixtures/c3_b21_minimal.txt");
const B22_MINIMAL: &str = include_str!("../fixtures/c3_b22_minimal.txt");
const B23_MINIMAL: &str = include_str!("../fixtures/c3_b23_minimal.txt");
const B23_IMAGES: &str = include_str!("../fixtures/c3_b23_images.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GoldenCase {
    B21,
    B22,
    B23,
}

impl GoldenCase {
    pub const ALL: [GoldenCase; 3] = [GoldenCase::B21, GoldenCase::B22, GoldenCase::B23];

    pub fn idx(self) -> KrIndex {
        let s = match self {
            GoldenCase::B21 => 1,
            GoldenCase::B22 => 2,
            GoldenCase::B23 => 3,
        };
        let ct = CartanType::new(Family::C1, 3).expect("C3 is valid");
        KrIndex::new(ct, 2, s).expect("B^{2,s} is valid")
    }
}

impl fmt::Display for GoldenCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for GoldenCase {
    type Err = KrError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B21" => Ok(GoldenCase::B21),
            "B22" => Ok(GoldenCase::B22),
            "B23" => Ok(GoldenCase::B23),
            _ => Err(KrError::Malformed(format!("unknown golden case {s:?}"))),
        }
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn malformed(line: &str) -> KrError {
    KrError::Malformed(format!("bad fixture line {line:?}"))
}

pub type Edge = (Tableau, Tableau, usize);

/// Edges of `B^{2,1}`.
pub fn figure_edges() -> Result<Vec<Edge>> {
    data_lines(B21_GRAPH)
        .map(|line| match line.split_whitespace().collect::<Vec<_>>()[..] {
            [a, b, i] => Ok((a.parse()?, b.parse()?, i.parse().map_err(|_| malformed(line))?)),
            _ => Err(malformed(line)),
        })
        .collect()
}

/// `(b, f_0(b))` for the `{2,3}`-highest weight elements of `B^{2,2}`.
pub fn f0_table() -> Result<Vec<(Tableau, Option<Tableau>)>> {
    data_lines(B22_F0)
        .map(|line| match line.split_whitespace().collect::<Vec<_>>()[..] {
            [a, "none"] => Ok((a.parse()?, None)),
            [a, b] => Ok((a.parse()?, Some(b.parse()?))),
            _ => Err(malformed(line)),
        })
        .collect()
}

/// Minimal elements grouped by `ε`, in the order of the reference table.
pub fn minimal_table(case: GoldenCase) -> Result<Vec<(Weight, Vec<Tableau>)>> {
    let text = match case {
        GoldenCase::B21 => B21_MINIMAL,
        GoldenCase::B22 => B22_MINIMAL,
        GoldenCase::B23 => B23_MINIMAL,
    };
    data_lines(text)
        .map(|line| {
            let (w, elems) = line.split_once(';').ok_or_else(|| malformed(line))?;
            let w = w
                .trim()
                .split(',')
                .map(|x| x.parse().map_err(|_| malformed(line)))
                .collect::<Result<Vec<i64>>>()?;
            let elems = elems
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<Tableau>>>()?;
            Ok((Weight(w), elems))
        })
        .collect()
}

/// Two elements of `B^{2,3}` with their images in the ambient crystal.
pub fn designated_images() -> Result<Vec<(Tableau, Tableau)>> {
    data_lines(B23_IMAGES)
        .map(|line| match line.split_whitespace().collect::<Vec<_>>()[..] {
            [a, b] => Ok((a.parse()?, b.parse()?)),
            _ => Err(malformed(line)),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphComparison {
    pub vertices: usize,
    pub expected_vertices: usize,
    pub zero_arrows: usize,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

impl GraphComparison {
    pub fn matches(&self) -> bool {
        self.vertices == self.expected_vertices && self.missing.is_empty() && self.extra.is_empty()
    }
}

fn edge_string((a, b, i): &Edge) -> String {
    format!("{a} -{i}-> {b}")
}

/// Generated `B^{2,1}` against the bundled edge list. Vertices carry their
/// tableau labels, so equality of edge sets is the isomorphism test.
pub fn compare_graph() -> Result<GraphComparison> {
    let k = kr_crystal(&GoldenCase::B21.idx())?;
    let generated: BTreeSet<String> = k
        .edges()
        .into_iter()
        .map(|(a, i, b)| edge_string(&(k.element(a).clone(), k.element(b).clone(), i)))
        .collect();
    let fixture = figure_edges()?;
    let expected: BTreeSet<String> = fixture.iter().map(edge_string).collect();
    let expected_vertices = fixture
        .iter()
        .flat_map(|(a, b, _)| [a.clone(), b.clone()])
        .collect::<BTreeSet<_>>()
        .len();
    Ok(GraphComparison {
        vertices: k.len(),
        expected_vertices,
        zero_arrows: k.edges().iter().filter(|e| e.1 == 0).count(),
        missing: expected.difference(&generated).cloned().collect(),
        extra: generated.difference(&expected).cloned().collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct F0Row {
    pub element: Tableau,
    pub expected: Option<Tableau>,
    pub f0: Option<Tableau>,
    pub e0: Option<Tableau>,
}

impl F0Row {
    pub fn f0_matches(&self) -> bool {
        self.f0 == self.expected
    }

    pub fn e0_matches(&self) -> bool {
        self.e0 == self.expected
    }
}

/// `f_0` and `e_0` of the generated `B^{2,2}` on every row of the reference table.
pub fn compare_f0() -> Result<Vec<F0Row>> {
    let k = kr_crystal(&GoldenCase::B22.idx())?;
    f0_table()?
        .into_iter()
        .map(|(b, expected)| {
            let v = k
                .index_of(&b)
                .ok_or_else(|| KrError::Malformed(format!("{b} is not in {}", k.idx)))?;
            Ok(F0Row {
                f0: k.f(0, v).map(|w| k.element(w).clone()),
                e0: k.e(0, v).map(|w| k.element(w).clone()),
                element: b,
                expected,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalRow {
    pub weight: Weight,
    pub expected: Vec<Tableau>,
    pub found: Vec<Tableau>,
}

impl MinimalRow {
    pub fn matches(&self) -> bool {
        let a: BTreeSet<&Tableau> = self.expected.iter().collect();
        let b: BTreeSet<&Tableau> = self.found.iter().collect();
        a == b && self.expected.len() == self.found.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalComparison {
    pub case: GoldenCase,
    pub min_level: i64,
    pub rows: Vec<MinimalRow>,
}

impl MinimalComparison {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(MinimalRow::matches)
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.found.len()).collect()
    }
}

/// Generated minimal classes against the reference table, row by row.
pub fn compare_minimal(case: GoldenCase) -> Result<MinimalComparison> {
    let k = kr_crystal(&case.idx())?;
    let cls = classify_minimal(&k);
    let rows = minimal_table(case)?
        .into_iter()
        .map(|(weight, expected)| {
            let found = cls
                .weights
                .iter()
                .position(|w| *w == weight)
                .map(|j| cls.eps_classes[j].iter().map(|&v| k.element(v).clone()).collect())
                .unwrap_or_default();
            MinimalRow { weight, expected, found }
        })
        .collect();
    Ok(MinimalComparison { case, min_level: cls.min_level, rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageRow {
    pub source: Tableau,
    pub expected: Tableau,
    pub found: Tableau,
    pub ambient_epsilon: Weight,
}

impl ImageRow {
    pub fn matches(&self) -> bool {
        self.found == self.expected
    }
}

/// Images of the designated `B^{2,3}` elements under the virtual embedding.
pub fn compare_images() -> Result<Vec<ImageRow>> {
    let k = kr_crystal(&GoldenCase::B23.idx())?;
    let emb = k
        .embedding()
        .ok_or_else(|| KrError::Construction("B^{2,3} is not embedded".into()))?;
    designated_images()?
        .into_iter()
        .map(|(source, expected)| {
            let v = k
                .index_of(&source)
                .ok_or_else(|| KrError::Malformed(format!("{source} is not in {}", k.idx)))?;
            let w = emb.image(v);
            Ok(ImageRow {
                source,
                expected,
                found: emb.ambient.element(w).clone(),
                ambient_epsilon: emb.ambient.eps(w).clone(),
            })
        })
        .collect()
}

/// Everything bundled for one case.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub case: GoldenCase,
    pub graph: Option<GraphComparison>,
    pub f0_rows: Option<Vec<F0Row>>,
    pub minimal: MinimalComparison,
    pub images: Option<Vec<ImageRow>>,
}

impl GoldenReport {
    pub fn matches(&self) -> bool {
        self.graph.as_ref().is_none_or(GraphComparison::matches)
            && self
                .f0_rows
                .as_ref()
                .is_none_or(|rows| rows.iter().all(F0Row::f0_matches))
            && self.minimal.matches()
            && self
                .images
                .as_ref()
                .is_none_or(|rows| rows.iter().all(ImageRow::matches))
    }
}

pub fn run(case: GoldenCase) -> Result<GoldenReport> {
    Ok(GoldenReport {
        case,
        graph: (case == GoldenCase::B21).then(compare_graph).transpose()?,
        f0_rows: (case == GoldenCase::B22).then(compare_f0).transpose()?,
        minimal: compare_minimal(case)?,
        images: (case == GoldenCase::B23).then(compare_images).transpose()?,
    })
}
