//! Letter crystals of the classical types, spin columns, and the signature
//! rule for tensor products.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{KrError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassicalKind {
    A,
    B,
    C,
    D,
}

/// A classical Cartan type `X_n` with index set `{1, …, n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassicalType {
    pub kind: ClassicalKind,
    pub n: usize,
}

/// A letter of the vector representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Unbarred(u8),
    Zero,
    Barred(u8),
}

impl Letter {
    fn key(&self) -> (u8, i16) {
        match *self {
            Letter::Unbarred(k) => (0, k as i16),
            Letter::Zero => (1, 0),
            Letter::Barred(k) => (2, -(k as i16)),
        }
    }

    /// The index `k` of `k` or `k̄`; zero for the letter `0`.
    pub fn index(&self) -> usize {
        match *self {
            Letter::Unbarred(k) | Letter::Barred(k) => k as usize,
            Letter::Zero => 0,
        }
    }

    pub fn is_unbarred(&self) -> bool {
        matches!(self, Letter::Unbarred(_))
    }
}

// 1 < 2 < … < n < 0 < n̄ < … < 1̄; D-type n and n̄ are ordered arbitrarily.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Unbarred(k) => write!(f, "{k}"),
            Letter::Zero => write!(f, "0"),
            Letter::Barred(k) => write!(f, "-{k}"),
        }
    }
}

impl FromStr for Letter {
    type Err = KrError;
    fn from_str(s: &str) -> Result<Self> {
        let v: i32 = s
            .trim()
            .parse()
            .map_err(|_| KrError::Malformed(format!("bad letter {s:?}")))?;
        Ok(match v {
            0 => Letter::Zero,
            k if k > 0 => Letter::Unbarred(k as u8),
            k => Letter::Barred((-k) as u8),
        })
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl ClassicalType {
    pub fn new(kind: ClassicalKind, n: usize) -> Self {
        ClassicalType { kind, n }
    }

    /// All letters of the vector representation, in increasing order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let n = self.n as u8;
        match self.kind {
            ClassicalKind::A => (1..=n + 1).map(Letter::Unbarred).collect(),
            _ => {
                let mut v: Vec<Letter> = (1..=n).map(Letter::Unbarred).collect();
                if self.kind == ClassicalKind::B {
                    v.push(Letter::Zero);
                }
                v.extend((1..=n).rev().map(Letter::Barred));
                v
            }
        }
    }

    pub fn is_valid_letter(&self, x: Letter) -> bool {
        let n = self.n as u8;
        match (self.kind, x) {
            (ClassicalKind::A, Letter::Unbarred(k)) => (1..=n + 1).contains(&k),
            (ClassicalKind::A, _) => false,
            (ClassicalKind::B, Letter::Zero) => true,
            (_, Letter::Zero) => false,
            (_, Letter::Unbarred(k) | Letter::Barred(k)) => (1..=n).contains(&k),
        }
    }

    /// `f_i` on a single letter.
    pub fn letter_f(&self, i: usize, x: Letter) -> Option<Letter> {
        let n = self.n;
        let i8 = i as u8;
        use Letter::*;
        if self.kind == ClassicalKind::A {
            return match x {
                Unbarred(k) if k == i8 => Some(Unbarred(k + 1)),
                _ => None,
            };
        }
        if i < n {
            return match x {
                Unbarred(k) if k == i8 => Some(Unbarred(k + 1)),
                Barred(k) if k == i8 + 1 => Some(Barred(i8)),
                _ => None,
            };
        }
        let n8 = n as u8;
        match (self.kind, x) {
            (ClassicalKind::C, Unbarred(k)) if k == n8 => Some(Barred(n8)),
            (ClassicalKind::B, Unbarred(k)) if k == n8 => Some(Zero),
            (ClassicalKind::B, Zero) => Some(Barred(n8)),
            (ClassicalKind::D, Unbarred(k)) if k == n8 - 1 => Some(Barred(n8)),
            (ClassicalKind::D, Unbarred(k)) if k == n8 => Some(Barred(n8 - 1)),
            _ => None,
        }
    }

    /// `e_i` on a single letter.
    pub fn letter_e(&self, i: usize, x: Letter) -> Option<Letter> {
        self.alphabet()
            .into_iter()
            .find(|&y| self.letter_f(i, y) == Some(x))
    }

    /// `(ε_i, φ_i)` of a single letter.
    pub fn letter_eps_phi(&self, i: usize, x: Letter) -> (usize, usize) {
        use Letter::*;
        let n = self.n;
        let i8 = i as u8;
        let b = |c: bool| c as usize;
        if self.kind == ClassicalKind::A {
            return (b(x == Unbarred(i8 + 1)), b(x == Unbarred(i8)));
        }
        if i < n {
            return (
                b(x == Unbarred(i8 + 1) || x == Barred(i8)),
                b(x == Unbarred(i8) || x == Barred(i8 + 1)),
            );
        }
        let n8 = n as u8;
        match self.kind {
            ClassicalKind::B => match x {
                Unbarred(k) if k == n8 => (0, 2),
                Zero => (1, 1),
                Barred(k) if k == n8 => (2, 0),
                _ => (0, 0),
            },
            ClassicalKind::C => (b(x == Barred(n8)), b(x == Unbarred(n8))),
            _ => (
                b(x == Barred(n8) || x == Barred(n8 - 1)),
                b(x == Unbarred(n8) || x == Unbarred(n8 - 1)),
            ),
        }
    }

    /// Classical weight `(φ_i − ε_i)_{i=1..n}` of a letter.
    pub fn letter_weight(&self, x: Letter) -> Vec<i64> {
        (1..=self.n)
            .map(|i| {
                let (e, p) = self.letter_eps_phi(i, x);
                p as i64 - e as i64
            })
            .collect()
    }

    /// Entry `<h_i, α_j>` of the classical Cartan matrix, `1 ≤ i, j ≤ n`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        let n = self.n;
        if i == j {
            return 2;
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        match self.kind {
            ClassicalKind::A => {
                if hi == lo + 1 {
                    -1
                } else {
                    0
                }
            }
            ClassicalKind::B | ClassicalKind::C => {
                if hi != lo + 1 {
                    0
                } else if hi == n {
                    // B: <h_n, α_{n-1}> = -2; C: <h_{n-1}, α_n> = -2.
                    let double = (self.kind == ClassicalKind::B) == (i == n);
                    if double {
                        -2
                    } else {
                        -1
                    }
                } else {
                    -1
                }
            }
            ClassicalKind::D => {
                if hi == n {
                    if lo == n - 2 {
                        -1
                    } else {
                        0
                    }
                } else if hi == lo + 1 {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.n)
    }
}

/// A spin column: one of `k`, `k̄` for each `k`, recorded as a sign vector
/// (`true` for `+`, i.e. the letter `k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinColumn(pub Vec<bool>);

impl SpinColumn {
    pub fn highest(n: usize) -> Self {
        SpinColumn(vec![true; n])
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&b| !b).count()
    }

    /// The equivalent letter column, increasing from bottom to top.
    pub fn letters(&self) -> Vec<Letter> {
        let n = self.0.len();
        let mut v: Vec<Letter> = (0..n)
            .filter(|&k| self.0[k])
            .map(|k| Letter::Unbarred(k as u8 + 1))
            .collect();
        v.extend(
            (0..n)
                .rev()
                .filter(|&k| !self.0[k])
                .map(|k| Letter::Barred(k as u8 + 1)),
        );
        v
    }

    /// `(ε_i, φ_i)` in the spin crystal of type `kind` (B or D).
    pub fn eps_phi(&self, kind: ClassicalKind, i: usize) -> (usize, usize) {
        let s = &self.0;
        let n = s.len();
        if i < n {
            let e = (!s[i - 1] && s[i]) as usize;
            let p = (s[i - 1] && !s[i]) as usize;
            return (e, p);
        }
        match kind {
            ClassicalKind::B => ((!s[n - 1]) as usize, s[n - 1] as usize),
            _ => (
                (!s[n - 2] && !s[n - 1]) as usize,
                (s[n - 2] && s[n - 1]) as usize,
            ),
        }
    }

    pub fn f(&self, kind: ClassicalKind, i: usize) -> Option<SpinColumn> {
        if self.eps_phi(kind, i).1 == 0 {
            return None;
        }
        let mut s = self.0.clone();
        let n = s.len();
        if i < n {
            s[i - 1] = false;
            s[i] = true;
        } else if kind == ClassicalKind::B {
            s[n - 1] = false;
        } else {
            s[n - 2] = false;
            s[n - 1] = false;
        }
        Some(SpinColumn(s))
    }

    pub fn e(&self, kind: ClassicalKind, i: usize) -> Option<SpinColumn> {
        if self.eps_phi(kind, i).0 == 0 {
            return None;
        }
        let mut s = self.0.clone();
        let n = s.len();
        if i < n {
            s[i - 1] = true;
            s[i] = false;
        } else if kind == ClassicalKind::B {
            s[n - 1] = true;
        } else {
            s[n - 2] = true;
            s[n - 1] = true;
        }
        Some(SpinColumn(s))
    }

    /// Classical weight `(φ_i − ε_i)_{i=1..n}`.
    pub fn weight(&self, kind: ClassicalKind) -> Vec<i64> {
        (1..=self.0.len())
            .map(|i| {
                let (e, p) = self.eps_phi(kind, i);
                p as i64 - e as i64
            })
            .collect()
    }
}

/// Result of the signature rule on a sequence of tensor factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub eps: usize,
    pub phi: usize,
    /// Factor on which `e_i` acts.
    pub e_pos: Option<usize>,
    /// Factor on which `f_i` acts.
    pub f_pos: Option<usize>,
}

/// Signature rule. Factors are given in tensor order as `(ε_i, φ_i)`; each
/// contributes `-^ε +^φ`, and every `+` followed by a `-` cancels.
pub fn signature<I: IntoIterator<Item = (usize, usize)>>(factors: I) -> Signature {
    let mut stack: Vec<usize> = Vec::new();
    let mut eps = 0;
    let mut e_pos = None;
    for (k, (e, p)) in factors.into_iter().enumerate() {
        for _ in 0..e {
            if stack.pop().is_none() {
                eps += 1;
                e_pos = Some(k);
            }
        }
        for _ in 0..p {
            stack.push(k);
        }
    }
    Signature {
        eps,
        phi: stack.len(),
        e_pos,
        f_pos: stack.first().copied(),
    }
}

/// A word of letters, in tensor order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub ct: ClassicalType,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(ct: ClassicalType, letters: Vec<Letter>) -> Result<Self> {
        if let Some(x) = letters.iter().find(|&&x| !ct.is_valid_letter(x)) {
            return Err(KrError::Malformed(format!("letter {x} not in {ct}")));
        }
        Ok(Word { ct, letters })
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.ct.n {
            return Err(KrError::OutOfRange(format!("index {i} for {}", self.ct)));
        }
        Ok(())
    }

    pub fn signature(&self, i: usize) -> Result<Signature> {
        self.check(i)?;
        Ok(signature(
            self.letters.iter().map(|&x| self.ct.letter_eps_phi(i, x)),
        ))
    }

    pub fn eps(&self, i: usize) -> Result<usize> {
        Ok(self.signature(i)?.eps)
    }

    pub fn phi(&self, i: usize) -> Result<usize> {
        Ok(self.signature(i)?.phi)
    }

    pub fn apply_f(&self, i: usize) -> Result<Option<Word>> {
        let sig = self.signature(i)?;
        Ok(sig.f_pos.map(|k| {
            let mut w = self.clone();
            w.letters[k] = self.ct.letter_f(i, w.letters[k]).expect("φ_i > 0");
            w
        }))
    }

    pub fn apply_e(&self, i: usize) -> Result<Option<Word>> {
        let sig = self.signature(i)?;
        Ok(sig.e_pos.map(|k| {
            let mut w = self.clone();
            w.letters[k] = self.ct.letter_e(i, w.letters[k]).expect("ε_i > 0");
            w
        }))
    }

    pub fn weight(&self) -> Vec<i64> {
        let mut w = vec![0; self.ct.n];
        for &x in &self.letters {
            for (a, b) in w.iter_mut().zip(self.ct.letter_weight(x)) {
                *a += b;
            }
        }
        w
    }
}

/// Letter crystal edges `(x, i, f_i x)`.
pub fn letter_crystal_edges(ct: ClassicalType) -> Vec<(Letter, usize, Letter)> {
    let mut out = Vec::new();
    for x in ct.alphabet() {
        for i in 1..=ct.n {
            if let Some(y) = ct.letter_f(i, x) {
                out.push((x, i, y));
            }
        }
    }
    out
}
