//! Exact complex rationals and the bits of linear algebra needed to compute
//! spans of Dirac components without any floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A complex number `re + im*i` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: Self) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: Self) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: Self) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form: `3`, `-1/2`, `i`, `-2*i`, `1/2+3/4*i`, `1-i`.
impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_abs = self.im.abs();
        let im_body = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rational(&im_abs))
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{im_body}")
                } else {
                    write!(f, "{im_body}")
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{sign}{im_body}", fmt_rational(&self.re))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed complex rational `{0}`")]
pub struct ComplexParseError(pub String);

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return None;
    }
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num.parse().ok()?, den))
}

/// Parses one signed term: a rational, `i`, or `q*i`. Returns (value, is_imaginary).
fn parse_term(s: &str) -> Option<(BigRational, bool)> {
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (value, imag) = if body == "i" {
        (BigRational::one(), true)
    } else if let Some(coef) = body.strip_suffix("*i") {
        (parse_rational(coef)?, true)
    } else {
        (parse_rational(body)?, false)
    };
    Some((if neg { -value } else { value }, imag))
}

impl FromStr for ComplexRational {
    type Err = ComplexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ComplexParseError(s.to_string());
        if s.is_empty() {
            return Err(err());
        }
        // split at a sign that is not the leading one
        let split = s
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i);
        let terms: Vec<&str> = match split {
            Some(i) => vec![&s[..i], &s[i..]],
            None => vec![s],
        };
        let mut out = ComplexRational::zero();
        let mut seen = (false, false);
        for t in terms {
            let (v, imag) = parse_term(t).ok_or_else(err)?;
            if imag {
                if seen.1 {
                    return Err(err());
                }
                seen.1 = true;
                out.im = v;
            } else {
                if seen.0 || seen.1 {
                    return Err(err());
                }
                seen.0 = true;
                out.re = v;
            }
        }
        Ok(out)
    }
}

/// Dense matrix of complex rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ComplexRational>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<ComplexRational>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, r: usize, c: usize) -> &ComplexRational {
        &self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ComplexRational::is_zero)
    }

    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conj());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    pub fn row_vecs(&self) -> Vec<Vec<ComplexRational>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form, in place. Returns the pivot columns.
fn rref(rows: &mut [Vec<ComplexRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of the span of the given vectors (all of the same length).
pub fn rank(vectors: &[Vec<ComplexRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows = vectors.to_vec();
    rref(&mut rows).len()
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[Vec<ComplexRational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = 0;
    for i in 0..vectors.len() {
        let mut trial: Vec<_> = chosen.iter().map(|&k| vectors[k].clone()).collect();
        trial.push(vectors[i].clone());
        let r = rank(&trial);
        if r > current {
            chosen.push(i);
            current = r;
        }
    }
    chosen
}

/// Coordinates of `target` in the (independent) `basis`, if it lies in the span.
pub fn coordinates(
    basis: &[Vec<ComplexRational>],
    target: &[ComplexRational],
) -> Option<Vec<ComplexRational>> {
    let n = basis.len();
    let dim = target.len();
    // augmented system: columns are basis vectors, last column is target
    let mut rows: Vec<Vec<ComplexRational>> = (0..dim)
        .map(|k| {
            let mut row: Vec<_> = basis.iter().map(|b| b[k].clone()).collect();
            row.push(target[k].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut coords = vec![ComplexRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        coords[c] = rows[r][n].clone();
    }
    Some(coords)
}
