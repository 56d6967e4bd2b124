use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::lattice::{Int, Rat};

/// Univariate polynomial with integer coefficients, dense by degree, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Int>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Int::one())
    }

    pub fn constant(c: Int) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`
    pub fn monomial(c: Int, k: usize) -> Self {
        let mut v = vec![Int::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t − 1`
    pub fn t_minus_one() -> Self {
        Self::from_i64(&[-1, 1])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &Int) -> Int {
        self.coeffs.iter().rev().fold(Int::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_rat(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + Rat::from(c.clone()))
    }

    pub fn eval_one(&self) -> Int {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `t^k · p(t)`
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Int::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// `t^n · p(1/t)`; requires `deg p ≤ n`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.coeffs.len() <= n + 1, "degree exceeds reversal bound");
        let mut v = vec![Int::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(v)
    }

    /// Terms of degree `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().take(k).cloned().collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Substitutes `t ↦ u^a v^b`.
    pub fn substitute(&self, a: i64, b: i64) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.add_term(a * k as i64, b * k as i64, c.clone());
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write_term(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &Int, mono: &str, first: bool) -> fmt::Result {
    let sign = if c.is_negative() { "-" } else { "+" };
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    let a = c.abs();
    if mono.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{a}{mono}")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Int::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(UniPoly, Add add, Sub sub, Mul mul);
forward_owned!(LaurentPoly2, Add add, Sub sub, Mul mul);

/// Laurent polynomial in `u, v` with integer coefficients; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), Int>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Int::one())
    }

    pub fn constant(c: Int) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c·u^i v^j`
    pub fn monomial(i: i64, j: i64, c: Int) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: &[(i64, i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, Int::from(c));
        }
        p
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: Int) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// `(i, j, c)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Int)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: i64, j: i64) -> Int {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i >= 0 && j >= 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// Largest `i + j` over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, k: &Int) -> Self {
        let mut p = Self::zero();
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j, c * k);
        }
        p
    }

    /// `u^a v^b · p`
    pub fn shift(&self, a: i64, b: i64) -> Self {
        self.map_exponents(|i, j| (i + a, j + b))
    }

    /// Applies a map on exponent pairs (a monomial substitution).
    pub fn map_exponents(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> Self {
        let mut p = Self::zero();
        for (&(i, j), c) in &self.terms {
            let (a, b) = f(i, j);
            p.add_term(a, b, c.clone());
        }
        p
    }

    /// `p(v, u)`
    pub fn swap(&self) -> Self {
        self.map_exponents(|i, j| (j, i))
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        let mut s = Rat::zero();
        for (&(i, j), c) in &self.terms {
            s += Rat::from(c.clone()) * rat_pow(u, i) * rat_pow(v, j);
        }
        s
    }

    /// `p(1, v)` as a Laurent polynomial in `v` (stored with `u`-exponent 0).
    pub fn at_u_one(&self) -> Self {
        self.map_exponents(|_, j| (0, j))
    }

    /// `p(u, 0)`: terms with `v`-exponent 0. Requires no negative `v`-exponents.
    pub fn at_v_zero(&self) -> Self {
        let mut p = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                p.add_term(i, 0, c.clone());
            }
        }
        p
    }

    /// `p(u, 1)` as a Laurent polynomial in `u`.
    pub fn at_v_one(&self) -> Self {
        self.map_exponents(|i, _| (i, 0))
    }

    pub fn is_nonnegative_signed(&self) -> bool {
        self.terms().all(|(i, j, c)| {
            let s = if (i + j) % 2 == 0 { c.clone() } else { -c.clone() };
            !s.is_negative()
        })
    }
}

fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            let mut mono = String::new();
            for (name, e) in [("u", i), ("v", j)] {
                match e {
                    0 => {}
                    1 => mono.push_str(name),
                    _ => mono.push_str(&format!("{name}^{e}")),
                }
            }
            write_term(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, -c.clone());
        }
        p
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut p = LaurentPoly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        self.scale(&Int::from(-1))
    }
}
