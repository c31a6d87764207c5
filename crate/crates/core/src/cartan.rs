//! Affine Cartan data: families, Cartan matrices, levels, weights and the
//! automorphisms `τ` of the perfect KR crystals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KrError, Result};
use crate::letters::{ClassicalKind, ClassicalType};

/// The seven nonexceptional affine families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `A_n^(1)`
    A1,
    /// `B_n^(1)`
    B1,
    /// `C_n^(1)`
    C1,
    /// `D_n^(1)`
    D1,
    /// `A_{2n}^(2)`
    A2Even,
    /// `A_{2n-1}^(2)`
    A2Odd,
    /// `D_{n+1}^(2)`
    D2,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A1,
        Family::B1,
        Family::C1,
        Family::D1,
        Family::A2Even,
        Family::A2Odd,
        Family::D2,
    ];

    fn min_rank(self) -> usize {
        match self {
            Family::A1 => 1,
            Family::C1 | Family::A2Even | Family::D2 => 2,
            Family::B1 | Family::A2Odd => 3,
            Family::D1 => 4,
        }
    }
}

/// An affine Cartan type: a family together with its rank `n`
/// (the number of non-zero Dynkin nodes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    family: Family,
    n: usize,
}

impl CartanType {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_rank() {
            return Err(KrError::InvalidType(format!(
                "rank {n} is below the minimum {} for {family:?}",
                family.min_rank()
            )));
        }
        Ok(CartanType { family, n })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// The classical subalgebra obtained by removing node 0.
    pub fn classical(&self) -> ClassicalType {
        let kind = match self.family {
            Family::A1 => ClassicalKind::A,
            Family::B1 | Family::D2 => ClassicalKind::B,
            Family::C1 | Family::A2Even | Family::A2Odd => ClassicalKind::C,
            Family::D1 => ClassicalKind::D,
        };
        ClassicalType::new(kind, self.n)
    }

    /// Cartan matrix `a_ij = <h_i, α_j>`, rows and columns indexed by `0..=n`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A1 => {
                if n == 1 {
                    bond(0, 1, -2, -2);
                } else {
                    for i in 0..=n {
                        bond(i, (i + 1) % (n + 1), -1, -1);
                    }
                }
            }
            Family::B1 | Family::D1 | Family::A2Odd => {
                bond(0, 2, -1, -1);
                bond(1, 2, -1, -1);
                let chain_end = if self.family == Family::D1 { n - 2 } else { n - 1 };
                for i in 2..chain_end {
                    bond(i, i + 1, -1, -1);
                }
                match self.family {
                    Family::B1 => bond(n - 1, n, -1, -2),
                    Family::A2Odd => bond(n - 1, n, -2, -1),
                    _ => {
                        bond(n - 2, n - 1, -1, -1);
                        bond(n - 2, n, -1, -1);
                    }
                }
            }
            Family::C1 | Family::A2Even | Family::D2 => {
                if self.family == Family::C1 {
                    bond(0, 1, -1, -2);
                } else {
                    bond(0, 1, -2, -1);
                }
                for i in 1..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
                if self.family == Family::D2 {
                    bond(n - 1, n, -1, -2);
                } else {
                    bond(n - 1, n, -2, -1);
                }
            }
        }
        a
    }

    /// Dual Kac labels `a_i^∨`; the level of `Λ_i` is `level_vector()[i]`.
    pub fn level_vector(&self) -> Vec<i64> {
        let n = self.n;
        match self.family {
            Family::A1 | Family::C1 => vec![1; n + 1],
            Family::B1 => {
                let mut v = vec![2; n + 1];
                v[0] = 1;
                v[1] = 1;
                v[n] = 1;
                v
            }
            Family::D1 => {
                let mut v = vec![2; n + 1];
                for i in [0, 1, n - 1, n] {
                    v[i] = 1;
                }
                v
            }
            Family::A2Even => {
                let mut v = vec![2; n + 1];
                v[0] = 1;
                v
            }
            Family::A2Odd => {
                let mut v = vec![2; n + 1];
                v[0] = 1;
                v[1] = 1;
                v
            }
            Family::D2 => {
                let mut v = vec![2; n + 1];
                v[0] = 1;
                v[n] = 1;
                v
            }
        }
    }

    pub fn level(&self, w: &Weight) -> i64 {
        self.level_vector()
            .iter()
            .zip(&w.0)
            .map(|(a, l)| a * l)
            .sum()
    }

    /// `α_i` in Λ-coordinates: column `i` of the Cartan matrix.
    pub fn simple_root(&self, i: usize) -> Weight {
        let a = self.cartan_matrix();
        Weight((0..=self.n).map(|j| a[j][i]).collect())
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut v = vec![0; self.n + 1];
        v[i] = 1;
        Weight(v)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight(vec![0; self.n + 1])
    }

    /// All dominant weights of exact level `level`, in descending
    /// lexicographic order of `(ℓ_0, …, ℓ_n)`.
    pub fn dominant_weights(&self, level: i64) -> Vec<Weight> {
        let labels = self.level_vector();
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.n + 1];
        fn rec(i: usize, rest: i64, labels: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
            if i == labels.len() {
                if rest == 0 {
                    out.push(Weight(cur.clone()));
                }
                return;
            }
            let max = rest / labels[i];
            for k in (0..=max).rev() {
                cur[i] = k;
                rec(i + 1, rest - k * labels[i], labels, cur, out);
            }
            cur[i] = 0;
        }
        if level >= 0 {
            rec(0, level, &labels, &mut cur, &mut out);
        }
        out
    }

    /// The divisor `c_r`: perfectness is expected exactly when `c_r | s`.
    pub fn c_r(&self, r: usize) -> usize {
        match self.family {
            Family::B1 if r == self.n => 2,
            Family::C1 if r < self.n => 2,
            _ => 1,
        }
    }

    fn letter(&self) -> (char, usize, usize) {
        let n = self.n;
        match self.family {
            Family::A1 => ('A', n, 1),
            Family::B1 => ('B', n, 1),
            Family::C1 => ('C', n, 1),
            Family::D1 => ('D', n, 1),
            Family::A2Even => ('A', 2 * n, 2),
            Family::A2Odd => ('A', 2 * n - 1, 2),
            Family::D2 => ('D', n + 1, 2),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, sub, tw) = self.letter();
        write!(f, "{c}{sub}~{tw}")
    }
}

impl FromStr for CartanType {
    type Err = KrError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || KrError::InvalidType(format!("cannot parse affine type {s:?}"));
        let (head, twist) = s.trim().split_once('~').ok_or_else(bad)?;
        let mut chars = head.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let sub: usize = chars.as_str().parse().map_err(|_| bad())?;
        let twist: usize = twist.parse().map_err(|_| bad())?;
        let (family, n) = match (letter, twist) {
            ('A', 1) => (Family::A1, sub),
            ('B', 1) => (Family::B1, sub),
            ('C', 1) => (Family::C1, sub),
            ('D', 1) => (Family::D1, sub),
            ('A', 2) if sub.is_multiple_of(2) => (Family::A2Even, sub / 2),
            ('A', 2) => (Family::A2Odd, sub.div_ceil(2)),
            ('D', 2) if sub >= 1 => (Family::D2, sub - 1),
            _ => return Err(bad()),
        };
        CartanType::new(family, n)
    }
}

impl Serialize for KrIndex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("KrIndex", 3)?;
        st.serialize_field("type", &self.ct.to_string())?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("s", &self.s)?;
        st.end()
    }
}

/// An integral weight `Σ ℓ_i Λ_i`, stored as `(ℓ_0, …, ℓ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&l| l >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &l) in self.0.iter().enumerate() {
            if l == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if l > 0 { "+" } else { "-" })?;
            } else if l < 0 {
                write!(f, "-")?;
            }
            first = false;
            if l.abs() != 1 {
                write!(f, "{}", l.abs())?;
            }
            write!(f, "Λ{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, o: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, o: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a -= b;
        }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.into_iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: &Weight) -> Weight {
        Weight(w.0.iter().map(|a| self * a).collect())
    }
}

/// A KR index `B^{r,s}` of a given affine type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KrIndex {
    pub ct: CartanType,
    pub r: usize,
    pub s: usize,
}

impl KrIndex {
    pub fn new(ct: CartanType, r: usize, s: usize) -> Result<Self> {
        if r == 0 || r > ct.rank() {
            return Err(KrError::OutOfRange(format!(
                "node r={r} is not a classical node of {ct}"
            )));
        }
        if s == 0 {
            return Err(KrError::OutOfRange("s must be positive".into()));
        }
        Ok(KrIndex { ct, r, s })
    }

    pub fn c_r(&self) -> usize {
        self.ct.c_r(self.r)
    }

    /// `true` when `s / c_r` is an integer.
    pub fn predicted_perfect(&self) -> bool {
        self.s.is_multiple_of(self.c_r())
    }

    /// Smallest integer not below `s / c_r`.
    pub fn predicted_min_level(&self) -> i64 {
        self.s.div_ceil(self.c_r()) as i64
    }
}

impl fmt::Display for KrIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B^{{{},{}}} of type {}", self.r, self.s, self.ct)
    }
}

fn permute(w: &Weight, image: impl Fn(usize) -> usize) -> Weight {
    let mut out = vec![0; w.0.len()];
    for (i, &l) in w.0.iter().enumerate() {
        out[image(i)] += l;
    }
    Weight(out)
}

/// The automorphism `τ = ε ∘ φ^{-1}` of `P^+_ℓ` for a perfect `B^{r,s}`.
///
/// On minimal elements `φ(b) = τ^{-1}(ε(b))`.
pub fn tau(idx: &KrIndex, w: &Weight) -> Result<Weight> {
    if !idx.predicted_perfect() {
        return Err(KrError::NotPerfect(idx.to_string()));
    }
    let n = idx.ct.rank();
    let r = idx.r;
    let swap01 = |i: usize| match i {
        0 => 1,
        1 => 0,
        _ => i,
    };
    let reflect = |i: usize| n - i;
    Ok(match idx.ct.family() {
        Family::A1 => permute(w, |i| (i + n + 1 - r % (n + 1)) % (n + 1)),
        Family::B1 if r == n => {
            if n.is_multiple_of(2) {
                w.clone()
            } else {
                permute(w, swap01)
            }
        }
        Family::D1 if r >= n - 1 => {
            let spin = |i: usize| -> usize {
                if n.is_multiple_of(2) {
                    match i {
                        0 => n,
                        1 => n - 1,
                        _ if i == n - 1 => 1,
                        _ if i == n => 0,
                        _ => n - i,
                    }
                } else {
                    match i {
                        0 => n - 1,
                        1 => n,
                        _ if i == n - 1 => 1,
                        _ if i == n => 0,
                        _ => n - i,
                    }
                }
            };
            if r == n {
                permute(w, spin)
            } else {
                // B^{n-1,s} is the image of B^{n,s} under the diagram
                // automorphism exchanging the two spin nodes.
                let flip = |i: usize| {
                    if i == n {
                        n - 1
                    } else if i == n - 1 {
                        n
                    } else {
                        i
                    }
                };
                permute(w, |i| flip(spin(flip(i))))
            }
        }
        Family::B1 | Family::D1 | Family::A2Odd => {
            if r.is_multiple_of(2) {
                w.clone()
            } else if idx.ct.family() == Family::D1 {
                permute(w, |i| {
                    if i == n - 1 {
                        n
                    } else if i == n {
                        n - 1
                    } else {
                        swap01(i)
                    }
                })
            } else {
                permute(w, swap01)
            }
        }
        Family::C1 if r == n => permute(w, reflect),
        Family::D2 if r == n => permute(w, reflect),
        Family::C1 | Family::A2Even | Family::D2 => w.clone(),
    })
}

/// Inverse of [`tau`].
pub fn tau_inverse(idx: &KrIndex, w: &Weight) -> Result<Weight> {
    // τ permutes fundamental weights, so invert it on the basis.
    let n = idx.ct.rank();
    let mut out = vec![0; n + 1];
    for (j, slot) in out.iter_mut().enumerate() {
        let img = tau(idx, &idx.ct.fundamental(j))?;
        let i = img.0.iter().position(|&x| x == 1).expect("τ permutes basis");
        *slot = w.0[i];
    }
    Ok(Weight(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["A2~1", "B3~1", "C3~1", "D4~1", "A4~2", "A5~2", "D4~2"] {
            let ct: CartanType = s.parse().unwrap();
            assert_eq!(ct.to_string(), s);
        }
        let ct: CartanType = "A5~2".parse().unwrap();
        assert_eq!((ct.family(), ct.rank()), (Family::A2Odd, 3));
        let ct: CartanType = "D4~2".parse().unwrap();
        assert_eq!((ct.family(), ct.rank()), (Family::D2, 3));
        assert!("D3~1".parse::<CartanType>().is_err());
        assert!("E6~1".parse::<CartanType>().is_err());
    }

    #[test]
    fn c3_alpha0() {
        let ct: CartanType = "C3~1".parse().unwrap();
        assert_eq!(ct.simple_root(0), Weight(vec![2, -2, 0, 0]));
        let a2: CartanType = "A2~1".parse().unwrap();
        assert_eq!(a2.simple_root(0), Weight(vec![2, -1, -1]));
    }

    #[test]
    fn levels() {
        let c3: CartanType = "C3~1".parse().unwrap();
        assert_eq!(c3.level(&Weight(vec![1, 0, 1, 0])), 2);
        let b3: CartanType = "B3~1".parse().unwrap();
        assert_eq!(b3.level(&b3.fundamental(2)), 2);
        assert_eq!(
            b3.dominant_weights(1),
            vec![b3.fundamental(0), b3.fundamental(1), b3.fundamental(3)]
        );
        assert_eq!(c3.dominant_weights(2).len(), 10);
    }

    #[test]
    fn c_r_table() {
        let c3: CartanType = "C3~1".parse().unwrap();
        let b3: CartanType = "B3~1".parse().unwrap();
        assert_eq!((c3.c_r(2), c3.c_r(3), b3.c_r(3), b3.c_r(1)), (2, 1, 2, 1));
    }

    #[test]
    fn tau_examples() {
        let a2: CartanType = "A2~1".parse().unwrap();
        let idx = KrIndex::new(a2, 1, 1).unwrap();
        assert_eq!(tau(&idx, &a2.fundamental(0)).unwrap(), a2.fundamental(2));
        let c3: CartanType = "C3~1".parse().unwrap();
        let idx = KrIndex::new(c3, 2, 2).unwrap();
        let w = Weight(vec![0, 1, 1, 0]);
        assert_eq!(tau(&idx, &w).unwrap(), w);
        let d2: CartanType = "D4~2".parse().unwrap();
        let idx = KrIndex::new(d2, 3, 2).unwrap();
        assert_eq!(tau(&idx, &d2.fundamental(1)).unwrap(), d2.fundamental(2));
        assert!(tau(&KrIndex::new(c3, 2, 1).unwrap(), &c3.fundamental(0)).is_err());
    }
}
