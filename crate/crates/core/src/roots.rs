//! Exact root location for real-rooted integer polynomials.
//!
//! Characteristic polynomials of symmetric matrices have only real roots, so
//! Descartes' rule of signs is exact for them: the number of roots above a
//! rational point `x` equals the number of sign changes in the coefficients of
//! `p(x + u)`. Everything here is decided with integer and rational arithmetic;
//! floating point only appears when a root is finally reported as an `f64`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::CharPoly;

fn trim_rat(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db && !is_zero_poly(&r) {
        let dr = r.len() - 1;
        let f = &r[dr] / &b[db];
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &f * c;
        }
        r.pop();
        if r.is_empty() {
            r.push(BigRational::zero());
            break;
        }
        trim_rat(&mut r);
    }
    r
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn to_rat(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Clears denominators and content; the leading coefficient becomes positive.
fn primitive(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = if content.is_zero() {
        ints
    } else {
        ints.into_iter().map(|c| c / &content).collect()
    };
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in &mut out {
            *c = -&*c;
        }
    }
    out
}

fn gcd_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim_rat(&mut x);
    trim_rat(&mut y);
    while !is_zero_poly(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    if p.len() <= 1 {
        return vec![BigInt::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn exact_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let f = &r[k + db] / &b[db];
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &f * c;
        }
        q[k] = f;
    }
    debug_assert!(is_zero_poly(&r));
    q
}

/// `p / gcd(p, p')` as a primitive integer polynomial: same roots, all simple.
pub(crate) fn squarefree(p: &[BigInt]) -> Vec<BigInt> {
    let pr = to_rat(p);
    if p.len() <= 2 {
        return primitive(&pr);
    }
    let g = gcd_rat(&pr, &to_rat(&derivative(p)));
    primitive(&exact_div(&pr, &g))
}

fn common_factor(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    primitive(&gcd_rat(&to_rat(p), &to_rat(q)))
}

fn sign_changes(coeffs: &[BigInt]) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for c in coeffs {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of roots strictly greater than `x`, counted with multiplicity.
/// Exact when every root of `p` is real.
pub fn roots_above(p: &[BigInt], x: &BigRational) -> usize {
    let d = p.len() - 1;
    let (num, den) = (x.numer(), x.denom());
    // s(y) = den^d p(y / den), then shift y -> y + num.
    let mut scale = BigInt::one();
    let mut s = vec![BigInt::zero(); d + 1];
    for i in (0..=d).rev() {
        s[i] = &p[i] * &scale;
        scale *= den;
    }
    for i in 0..d {
        for j in (i..d).rev() {
            let t = &s[j + 1] * num;
            s[j] += t;
        }
    }
    sign_changes(&s)
}

pub(crate) fn eval_rat(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// `x` is a root of `p` and no root of `p` exceeds it.
pub fn is_largest_root(p: &CharPoly, x: &BigRational) -> bool {
    eval_rat(p.coeffs(), x).is_zero() && roots_above(p.coeffs(), x) == 0
}

/// The largest root of a squarefree real-rooted polynomial, held as the only
/// root in the half-open interval `(lo, hi]`.
#[derive(Clone, Debug)]
struct Isolated {
    poly: Vec<BigInt>,
    lo: BigRational,
    hi: BigRational,
}

impl Isolated {
    fn new(sqf: Vec<BigInt>) -> Option<Self> {
        if sqf.len() < 2 {
            return None;
        }
        let bound = sqf
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("nonempty")
            + BigInt::from(2);
        let mut iso = Isolated {
            lo: BigRational::from_integer(-&bound),
            hi: BigRational::from_integer(bound),
            poly: sqf,
        };
        while roots_above(&iso.poly, &iso.lo) > 1 {
            iso.bisect();
        }
        Some(iso)
    }

    fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        if roots_above(&self.poly, &mid) >= 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Largest root of a real-rooted polynomial to within `tol`, or `None` for a
/// constant polynomial.
pub fn largest_root(p: &CharPoly, tol: f64) -> Option<f64> {
    let mut iso = Isolated::new(squarefree(p.coeffs()))?;
    let tol = BigRational::from_float(tol.max(f64::MIN_POSITIVE))
        .unwrap_or_else(|| BigRational::new(BigInt::one(), BigInt::from(1u64 << 40)));
    while iso.width() > tol {
        iso.bisect();
    }
    let mid = (&iso.lo + &iso.hi) / BigRational::from_integer(BigInt::from(2));
    mid.to_f64()
}

/// Compares the largest roots of two real-rooted polynomials exactly.
///
/// Both roots are isolated and bisected on rational points until the
/// intervals separate; if they still overlap, a root of `gcd(p, q)` inside the
/// overlap proves the two roots equal.
pub fn compare_largest_roots(p: &CharPoly, q: &CharPoly) -> Ordering {
    let sp = squarefree(p.coeffs());
    let sq = squarefree(q.coeffs());
    let common = common_factor(&sp, &sq);
    let (mut a, mut b) = match (Isolated::new(sp), Isolated::new(sq)) {
        (Some(a), Some(b)) => (a, b),
        (None, None) => return Ordering::Equal,
        (Some(_), None) => return Ordering::Greater,
        (None, Some(_)) => return Ordering::Less,
    };
    loop {
        if a.lo >= b.hi {
            return Ordering::Greater;
        }
        if b.lo >= a.hi {
            return Ordering::Less;
        }
        if common.len() >= 2 {
            let lo = (&a.lo).max(&b.lo);
            let hi = (&a.hi).min(&b.hi);
            if roots_above(&common, lo) > roots_above(&common, hi) {
                return Ordering::Equal;
            }
        }
        if a.width() >= b.width() {
            a.bisect();
        } else {
            b.bisect();
        }
    }
}
