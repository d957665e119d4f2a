//! Exact integer linear algebra on graph matrices.
//!
//! Characteristic polynomials use Faddeev–LeVerrier and determinants use
//! Bareiss elimination. Both run first in checked `i64`, then checked
//! `i128`, and only fall back to [`BigInt`] when a fixed-width step overflows,
//! so results are always exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixKind {
    /// Adjacency matrix.
    A,
    /// Laplacian `D - A`.
    L,
    /// Signless Laplacian `D + A`.
    Q,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 3] = [MatrixKind::A, MatrixKind::L, MatrixKind::Q];

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::A => "A",
            MatrixKind::L => "L",
            MatrixKind::Q => "Q",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(MatrixKind::A),
            "L" | "l" => Ok(MatrixKind::L),
            "Q" | "q" => Ok(MatrixKind::Q),
            _ => Err(Error::Parameter(format!("unknown matrix kind {s:?}"))),
        }
    }
}

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(order: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::Parameter(format!(
                "{} entries do not form a {order}x{order} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { order, entries })
    }

    pub fn zeros(order: usize) -> Self {
        IntMatrix {
            order,
            entries: vec![0; order * order],
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.order + j] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The matrix with row and column `k` deleted.
    pub fn minor(&self, k: usize) -> IntMatrix {
        let n = self.order;
        let mut out = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != k) {
            for j in (0..n).filter(|&j| j != k) {
                out.push(self.get(i, j));
            }
        }
        IntMatrix {
            order: n - 1,
            entries: out,
        }
    }
}

pub fn build_matrix(g: &Graph, kind: MatrixKind) -> IntMatrix {
    let n = g.order();
    let mut m = IntMatrix::zeros(n);
    let off = if kind == MatrixKind::L { -1 } else { 1 };
    for (u, v) in g.edges() {
        m.set(u, v, off);
        m.set(v, u, off);
    }
    if kind != MatrixKind::A {
        for v in 0..n {
            m.set(v, v, g.degree(v) as i64);
        }
    }
    m
}

/// Monic characteristic polynomial `det(λI - M)`, coefficients stored
/// constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Coefficients must be constant-first with leading coefficient 1.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if c.is_one() => Ok(CharPoly { coeffs }),
            _ => Err(Error::Parameter("characteristic polynomial must be monic".into())),
        }
    }

    pub(crate) fn from_fixed(coeffs: &[i128]) -> Self {
        CharPoly {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// `λ^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        CharPoly { coeffs }
    }

    /// `λ - root`.
    pub fn linear(root: i64) -> Self {
        CharPoly {
            coeffs: vec![BigInt::from(-root), BigInt::one()],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> CharPoly {
        (0..k).fold(CharPoly::monomial(0), |acc, _| acc.mul(self))
    }
}

/// Decimal coefficients, constant term first, comma separated.
impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CharPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parameter(format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CharPoly::from_coeffs(coeffs)
    }
}

/// Integer arithmetic that reports overflow instead of wrapping.
pub(crate) trait Exact: Clone {
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

macro_rules! exact_prim {
    ($t:ty) => {
        impl Exact for $t {
            #[inline]
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            #[inline]
            fn is_nil(&self) -> bool {
                *self == 0
            }
            #[inline]
            fn add(&self, o: &Self) -> Option<Self> {
                self.checked_add(*o)
            }
            #[inline]
            fn sub(&self, o: &Self) -> Option<Self> {
                self.checked_sub(*o)
            }
            #[inline]
            fn mul(&self, o: &Self) -> Option<Self> {
                self.checked_mul(*o)
            }
            #[inline]
            fn div_exact(&self, o: &Self) -> Option<Self> {
                debug_assert_eq!(self % o, 0);
                self.checked_div(*o)
            }
            #[inline]
            fn neg(&self) -> Option<Self> {
                self.checked_neg()
            }
            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    };
}

exact_prim!(i64);
exact_prim!(i128);

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!((self % o).is_zero());
        Some(self / o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Faddeev–LeVerrier: with `N_1 = I`, `c_{n-k} = -tr(M N_k) / k` and
/// `N_{k+1} = M N_k + c_{n-k} I`.
fn faddeev_leverrier<T: Exact>(m: &IntMatrix) -> Option<Vec<T>> {
    let n = m.order();
    let a: Vec<T> = m.entries().iter().map(|&v| T::from_i64(v)).collect();
    let zero = T::from_i64(0);
    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = T::from_i64(1);
    let mut cur = vec![zero.clone(); n * n];
    for i in 0..n {
        cur[i * n + i] = T::from_i64(1);
    }
    let mut prod = vec![zero.clone(); n * n];
    for k in 1..=n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for l in 0..n {
                    let x = &a[i * n + l];
                    if x.is_nil() {
                        continue;
                    }
                    acc = acc.add(&x.mul(&cur[l * n + j])?)?;
                }
                prod[i * n + j] = acc;
            }
        }
        let mut trace = zero.clone();
        for i in 0..n {
            trace = trace.add(&prod[i * n + i])?;
        }
        let c = trace.neg()?.div_exact(&T::from_i64(k as i64))?;
        if k < n {
            for i in 0..n {
                prod[i * n + i] = prod[i * n + i].add(&c)?;
            }
            std::mem::swap(&mut cur, &mut prod);
        }
        coeffs[n - k] = c;
    }
    Some(coeffs)
}

/// Fixed-width path used by the census: `None` only if `i128` overflows.
pub(crate) fn char_poly_fixed(m: &IntMatrix) -> Option<Vec<i128>> {
    if let Some(c) = faddeev_leverrier::<i64>(m) {
        return Some(c.into_iter().map(i128::from).collect());
    }
    faddeev_leverrier::<i128>(m)
}

pub fn char_poly(m: &IntMatrix) -> CharPoly {
    if let Some(c) = char_poly_fixed(m) {
        return CharPoly::from_fixed(&c);
    }
    let coeffs = faddeev_leverrier::<BigInt>(m).expect("big integers do not overflow");
    CharPoly { coeffs }
}

fn bareiss<T: Exact>(m: &IntMatrix) -> Option<T> {
    let n = m.order();
    if n == 0 {
        return Some(T::from_i64(1));
    }
    let mut a: Vec<T> = m.entries().iter().map(|&v| T::from_i64(v)).collect();
    let mut negate = false;
    let mut prev = T::from_i64(1);
    for k in 0..n - 1 {
        if a[k * n + k].is_nil() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_nil()) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    negate = !negate;
                }
                None => return Some(T::from_i64(0)),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i * n + j].mul(&pivot)?;
                let rhs = a[i * n + k].mul(&a[k * n + j])?;
                a[i * n + j] = lhs.sub(&rhs)?.div_exact(&prev)?;
            }
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if negate {
        det.neg()
    } else {
        Some(det)
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    if let Some(d) = bareiss::<i128>(m) {
        return BigInt::from(d);
    }
    bareiss::<BigInt>(m).expect("big integers do not overflow")
}

fn power_traces<T: Exact>(m: &IntMatrix, k_max: usize) -> Option<Vec<BigInt>> {
    let n = m.order();
    let a: Vec<T> = m.entries().iter().map(|&v| T::from_i64(v)).collect();
    let zero = T::from_i64(0);
    let mut out = vec![BigInt::from(n)];
    let mut cur = vec![zero.clone(); n * n];
    for i in 0..n {
        cur[i * n + i] = T::from_i64(1);
    }
    let mut next = cur.clone();
    for _ in 1..=k_max {
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for l in 0..n {
                    acc = acc.add(&cur[i * n + l].mul(&a[l * n + j])?)?;
                }
                next[i * n + j] = acc;
            }
        }
        std::mem::swap(&mut cur, &mut next);
        let mut trace = zero.clone();
        for i in 0..n {
            trace = trace.add(&cur[i * n + i])?;
        }
        out.push(trace.to_big());
    }
    Some(out)
}

/// `T_k = trace(M^k)` for `k = 0..=k_max`, by explicit matrix powers.
pub fn spectral_moments(g: &Graph, kind: MatrixKind, k_max: usize) -> Vec<BigInt> {
    let m = build_matrix(g, kind);
    power_traces::<i128>(&m, k_max)
        .unwrap_or_else(|| power_traces::<BigInt>(&m, k_max).expect("big integers do not overflow"))
}

/// Power sums of the roots of `p` by Newton's identities.
pub fn power_sums(p: &CharPoly, k_max: usize) -> Vec<BigInt> {
    let n = p.degree();
    // b[i] is the coefficient of λ^(n-i).
    let b: Vec<&BigInt> = p.coeffs().iter().rev().collect();
    let mut sums = vec![BigInt::from(n)];
    for k in 1..=k_max {
        let mut s = if k <= n {
            -BigInt::from(k) * b[k]
        } else {
            BigInt::zero()
        };
        for i in 1..k.min(n + 1) {
            s -= b[i] * &sums[k - i];
        }
        sums.push(s);
    }
    sums
}

/// Multiplicity of the root 0.
pub fn zero_multiplicity(p: &CharPoly) -> usize {
    p.coeffs().iter().take_while(|c| c.is_zero()).count()
}

/// Product of the nonzero roots, or 1 when every root is zero.
pub fn pseudo_det(p: &CharPoly) -> BigInt {
    let z = zero_multiplicity(p);
    let a = &p.coeffs()[z];
    if (p.degree() - z) % 2 == 1 {
        -a
    } else {
        a.clone()
    }
}

/// Number of spanning trees via the Matrix-Tree theorem. Zero for the null
/// graph and for disconnected graphs.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    if g.order() == 0 {
        return BigInt::zero();
    }
    let reduced = build_matrix(g, MatrixKind::L).minor(0);
    determinant(&reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named, Family};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn named(f: Family) -> Graph {
        make_named(f).unwrap()
    }

    #[test]
    fn matrices_of_k2_and_k3() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(build_matrix(&k2, MatrixKind::Q).entries(), &[1, 1, 1, 1]);
        assert_eq!(build_matrix(&k2, MatrixKind::L).entries(), &[1, -1, -1, 1]);
        let q = build_matrix(&Graph::complete(3).unwrap(), MatrixKind::Q);
        assert_eq!(q.entries(), &[2, 1, 1, 1, 2, 1, 1, 1, 2]);
        assert!(q.is_symmetric());
    }

    #[test]
    fn char_poly_examples() {
        let k3 = Graph::complete(3).unwrap();
        let p = char_poly(&build_matrix(&k3, MatrixKind::Q));
        assert_eq!(p.coeffs(), big(&[-4, 9, -6, 1]).as_slice());
        let p4 = named(Family::Path(4));
        let p = char_poly(&build_matrix(&p4, MatrixKind::L));
        assert_eq!(p.coeffs(), big(&[0, -4, 10, -6, 1]).as_slice());
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(char_poly(&build_matrix(&e3, MatrixKind::A)), CharPoly::monomial(3));
        assert_eq!(char_poly(&IntMatrix::zeros(0)), CharPoly::monomial(0));
    }

    #[test]
    fn big_integer_fallback_agrees() {
        let k = Graph::complete(crate::MAX_ORDER).unwrap();
        let m = build_matrix(&k, MatrixKind::Q);
        let fixed = char_poly(&m);
        let big_path = faddeev_leverrier::<BigInt>(&m).unwrap();
        assert_eq!(fixed.coeffs(), big_path.as_slice());
        assert_eq!(
            determinant(&m),
            bareiss::<BigInt>(&m).unwrap()
        );
    }

    #[test]
    fn determinants() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(determinant(&build_matrix(&k3, MatrixKind::Q)), BigInt::from(4));
        let c4 = named(Family::Cycle(4));
        assert_eq!(determinant(&build_matrix(&c4, MatrixKind::Q)), BigInt::zero());
        let bowtie = named(Family::Friendship(2));
        assert_eq!(determinant(&build_matrix(&bowtie, MatrixKind::L)), BigInt::zero());
        // Needs a row swap: the leading entry is zero.
        let m = IntMatrix::new(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(determinant(&m), BigInt::from(-1));
    }

    #[test]
    fn moments_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(spectral_moments(&k3, MatrixKind::Q, 3), big(&[3, 6, 18, 66]));
        let e4 = Graph::empty(4).unwrap();
        assert_eq!(spectral_moments(&e4, MatrixKind::Q, 2), big(&[4, 0, 0]));
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(spectral_moments(&k2, MatrixKind::Q, 2), big(&[2, 2, 4]));
    }

    #[test]
    fn newton_matches_traces() {
        let g = named(Family::Friendship(2));
        for kind in MatrixKind::ALL {
            let p = char_poly(&build_matrix(&g, kind));
            assert_eq!(power_sums(&p, 7), spectral_moments(&g, kind, 7), "{kind}");
        }
    }

    #[test]
    fn zero_multiplicity_and_pseudo_det() {
        let p4 = named(Family::Path(4));
        let lp4 = char_poly(&build_matrix(&p4, MatrixKind::L));
        assert_eq!(zero_multiplicity(&lp4), 1);
        assert_eq!(pseudo_det(&lp4), BigInt::from(4));

        let c4 = named(Family::Cycle(4));
        let qc4 = char_poly(&build_matrix(&c4, MatrixKind::Q));
        assert_eq!(zero_multiplicity(&qc4), 1);
        let lc4 = char_poly(&build_matrix(&c4, MatrixKind::L));
        assert_eq!(pseudo_det(&lc4), BigInt::from(16));

        let k3 = Graph::complete(3).unwrap();
        assert_eq!(zero_multiplicity(&char_poly(&build_matrix(&k3, MatrixKind::Q))), 0);
        let e5 = Graph::empty(5).unwrap();
        assert_eq!(pseudo_det(&char_poly(&build_matrix(&e5, MatrixKind::A))), BigInt::one());
    }

    #[test]
    fn spanning_trees() {
        assert_eq!(spanning_tree_count(&named(Family::Cycle(4))), BigInt::from(4));
        assert_eq!(spanning_tree_count(&Graph::complete(4).unwrap()), BigInt::from(16));
        let p3_k1 = named(Family::Path(3)).with_vertex(0).unwrap();
        assert_eq!(spanning_tree_count(&p3_k1), BigInt::zero());
        assert_eq!(spanning_tree_count(&Graph::empty(1).unwrap()), BigInt::one());
    }

    #[test]
    fn poly_text_round_trip() {
        let p: CharPoly = "-4,9,-6,1".parse().unwrap();
        assert_eq!(p.to_string(), "-4,9,-6,1");
        assert!("1,2".parse::<CharPoly>().is_err());
        assert_eq!(CharPoly::linear(2).mul(&CharPoly::monomial(1)).to_string(), "0,-2,1");
    }
}
