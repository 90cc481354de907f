use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::gen::{Bidegree, Gen};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat, Rational};

/// Product of generator powers in canonical order.
///
/// Factors are sorted by generator, exponents are nonzero, odd generators
/// appear at most once and only invertible generators have negative
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Gen, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[(Gen, i32)] {
        &self.0
    }

    pub fn degree(&self) -> Bidegree {
        self.0.iter().fold(Bidegree::ZERO, |acc, (g, k)| acc + g.degree().scaled(*k))
    }

    pub fn parity(&self) -> u8 {
        self.degree().parity()
    }

    /// Canonical product with its Koszul sign, or `None` when an odd
    /// generator would be squared.
    fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let mut negative = false;
        // every odd factor of `other` moves left past the larger odd factors of `self`
        for (b, _) in other.0.iter().filter(|(g, _)| g.is_odd()) {
            let passed = self.0.iter().filter(|(a, _)| a.is_odd() && a > b).count();
            if passed % 2 == 1 {
                negative = !negative;
            }
        }
        let mut out: Vec<(Gen, i32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take_left = j >= other.0.len() || (i < self.0.len() && self.0[i].0 <= other.0[j].0);
            let (g, k) = if take_left {
                i += 1;
                self.0[i - 1].clone()
            } else {
                j += 1;
                other.0[j - 1].clone()
            };
            match out.last_mut() {
                Some((last, e)) if *last == g => {
                    if g.is_odd() {
                        return None;
                    }
                    *e += k;
                    if *e == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, k)),
            }
        }
        Some((Monomial(out), negative))
    }

    fn render(&self) -> String {
        self.0
            .iter()
            .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{g}^{k}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Element of the free bigraded-commutative algebra with rational
/// coefficients.
///
/// A nonzero `Expr` is homogeneous: all its terms share one bidegree. Adding
/// two nonzero expressions of different bidegree is a programming error and
/// panics; use [`Expr::try_add`] or [`super::Mixed`] for sums across sectors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rational>,
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1, 1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn gen(g: &Gen) -> Self {
        Self::term(rat(1, 1), Monomial(vec![(g.clone(), 1)]))
    }

    /// `g^k`; negative `k` requires an invertible generator, and odd
    /// generators vanish for `k >= 2`.
    pub fn gen_pow(g: &Gen, k: i32) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one());
        }
        if k < 0 && !g.is_invertible() {
            return Err(Error::Algebra(format!("{g} is not invertible")));
        }
        if g.is_odd() && k >= 2 {
            return Ok(Self::zero());
        }
        Ok(Self::term(rat(1, 1), Monomial(vec![(g.clone(), k)])))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Bidegree of a nonzero expression.
    pub fn degree(&self) -> Option<Bidegree> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn parity(&self) -> Option<u8> {
        self.degree().map(Bidegree::parity)
    }

    /// The constant value, when the expression is a rational number.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Whether generator `g` occurs anywhere in the expression.
    pub fn contains(&self, g: &Gen) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|(h, _)| h == g))
    }

    pub fn try_add(&self, other: &Expr) -> Result<Expr> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::Algebra(format!("cannot add bidegree {a} to bidegree {b}")));
            }
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let v = terms.remove(m).unwrap_or_else(Rational::zero) + c;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Ok(Expr { terms })
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Expr {
        (0..k).fold(Expr::one(), |acc, _| acc * self.clone())
    }

    /// Inverse of a single term built from invertible generators.
    pub fn recip(&self) -> Option<Expr> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !m.0.iter().all(|(g, _)| g.is_invertible()) {
            return None;
        }
        let inv = Monomial(m.0.iter().map(|(g, k)| (g.clone(), -k)).collect());
        Some(Expr::term(c.recip(), inv))
    }

    /// Algebra homomorphism fixing constants: every generator `g` with
    /// `subst(g) = Some(e)` is replaced by `e`.
    pub fn substitute(&self, subst: &dyn Fn(&Gen) -> Option<Expr>) -> Result<Expr> {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let mut prod = Expr::constant(c.clone());
            for (g, k) in &m.0 {
                let factor = match subst(g) {
                    Some(image) => {
                        let base = if *k < 0 {
                            image.recip().ok_or_else(|| Error::Algebra(format!("image of {g} is not invertible")))?
                        } else {
                            image
                        };
                        base.pow(k.unsigned_abs())
                    }
                    None => Expr::gen_pow(g, *k)?,
                };
                prod = prod * factor;
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }

    /// The quotient `q` with `q * g == self` for an odd generator `g`
    /// dividing every term.
    pub fn right_quotient(&self, g: &Gen) -> Result<Expr> {
        if !g.is_odd() {
            return Err(Error::Algebra(format!("{g} is even")));
        }
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let pos = m.0.iter().position(|(h, _)| h == g).ok_or_else(|| Error::Algebra(format!("{g} does not divide {self}")))?;
            let after = m.0[pos + 1..].iter().filter(|(h, _)| h.is_odd()).count();
            let rest = Monomial(m.0.iter().filter(|(h, _)| h != g).cloned().collect());
            let c = if after % 2 == 1 { -c.clone() } else { c.clone() };
            out = out.try_add(&Expr::term(c, rest))?;
        }
        Ok(out)
    }

    /// Collects the expression as `sum_k coeff_k * g^k` in a single even
    /// generator `g`.
    pub fn collect_powers(&self, g: &Gen) -> BTreeMap<i32, Expr> {
        let mut out: BTreeMap<i32, Expr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0.iter().find(|(h, _)| h == g).map_or(0, |(_, k)| *k);
            let rest = Monomial(m.0.iter().filter(|(h, _)| h != g).cloned().collect());
            let entry = out.entry(k).or_default();
            *entry = entry.clone() + Expr::term(c.clone(), rest);
        }
        out
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match self.try_add(&rhs) {
            Ok(e) => e,
            Err(err) => panic!("{err}: {self} + {rhs}"),
        }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = if negative { -(ca * cb) } else { ca * cb };
                    let v = terms.remove(&m).unwrap_or_else(Rational::zero) + c;
                    if !v.is_zero() {
                        terms.insert(m, v);
                    }
                }
            }
        }
        Expr { terms }
    }
}

impl crate::scalar::Scalar for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn one() -> Self {
        Expr::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: Rational) -> Self {
        Expr::constant(r)
    }
    fn try_recip(&self) -> Option<Self> {
        self.recip()
    }
    fn scale(&self, r: &Rational) -> Self {
        Expr::scale(self, r)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let body = m.render();
            if body.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{}*{body}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> (Gen, Gen, Gen, Gen) {
        let dx = Gen::build("xt_dx").form(1).build().unwrap();
        let de = Gen::build("xt_de").form(1).build().unwrap();
        let e = Gen::build("xt_e").invertible().field().build().unwrap();
        let c = Gen::build("xt_c").ghost(1).field().build().unwrap();
        (dx, de, e, c)
    }

    #[test]
    fn odd_squares_vanish() {
        let (dx, _, _, c) = gens();
        assert!((Expr::gen(&dx) * Expr::gen(&dx)).is_zero());
        assert!((Expr::gen(&c) * Expr::gen(&c)).is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        let (dx, de, _, c) = gens();
        let a = Expr::gen(&dx) * Expr::gen(&de);
        let b = Expr::gen(&de) * Expr::gen(&dx);
        assert!(!a.is_zero());
        assert_eq!(a, -b);
        // form and ghost degrees share one parity
        assert_eq!(Expr::gen(&dx) * Expr::gen(&c), -(Expr::gen(&c) * Expr::gen(&dx)));
    }

    #[test]
    fn inverse_pairs_cancel() {
        let (_, _, e, _) = gens();
        let inv = Expr::gen_pow(&e, -1).unwrap();
        assert_eq!(Expr::gen(&e) * inv.clone(), Expr::one());
        assert_eq!(Expr::gen(&e).recip().unwrap(), inv);
        assert!(Expr::gen_pow(&e.prolong().unwrap(), -1).is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        let (dx, _, e, _) = gens();
        let x = Expr::gen(&dx) * Expr::gen_pow(&e, -2).unwrap().scale(&rat(-3, 2)) + Expr::zero();
        assert_eq!(x.to_string(), "-3/2*xt_e^-2*xt_dx");
        assert_eq!(Expr::zero().to_string(), "0");
    }

    #[test]
    #[should_panic(expected = "cannot add bidegree")]
    fn mixed_sums_are_rejected() {
        let (dx, _, e, _) = gens();
        let _ = Expr::gen(&dx) + Expr::gen(&e);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let (dx, _, e, _) = gens();
        let x = Expr::gen_pow(&e, -2).unwrap() * Expr::gen(&dx);
        let y = x
            .substitute(&|g| if *g == e { Some(Expr::int(2)) } else { None })
            .unwrap();
        assert_eq!(y, Expr::gen(&dx).scale(&rat(1, 4)));
    }
}
