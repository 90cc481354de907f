use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::derivation::Derivation;
use super::expr::Expr;
use super::gen::Bidegree;
use crate::error::Result;
use crate::scalar::{Rational, Scalar};

/// Inhomogeneous element: a sum of homogeneous [`Expr`]s, one per
/// bidegree sector.
#[derive(Clone, PartialEq, Default)]
pub struct Mixed {
    sectors: BTreeMap<Bidegree, Expr>,
}

impl Mixed {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn sector(&self, b: Bidegree) -> Expr {
        self.sectors.get(&b).cloned().unwrap_or_default()
    }

    pub fn sectors(&self) -> impl Iterator<Item = (&Bidegree, &Expr)> {
        self.sectors.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    fn insert(&mut self, e: Expr) {
        let Some(b) = e.degree() else { return };
        let sum = self.sector(b) + e;
        if sum.is_zero() {
            self.sectors.remove(&b);
        } else {
            self.sectors.insert(b, sum);
        }
    }

    /// Applies a derivation sector by sector.
    pub fn apply(&self, d: &Derivation) -> Result<Mixed> {
        let mut out = Mixed::zero();
        for e in self.sectors.values() {
            out.insert(d.apply(e)?);
        }
        Ok(out)
    }
}

impl From<Expr> for Mixed {
    fn from(e: Expr) -> Self {
        let mut m = Mixed::zero();
        m.insert(e);
        m
    }
}

impl Add for Mixed {
    type Output = Mixed;
    fn add(mut self, rhs: Mixed) -> Mixed {
        for e in rhs.sectors.into_values() {
            self.insert(e);
        }
        self
    }
}

impl Neg for Mixed {
    type Output = Mixed;
    fn neg(self) -> Mixed {
        Mixed { sectors: self.sectors.into_iter().map(|(b, e)| (b, -e)).collect() }
    }
}

impl Sub for Mixed {
    type Output = Mixed;
    fn sub(self, rhs: Mixed) -> Mixed {
        self + (-rhs)
    }
}

impl Mul for Mixed {
    type Output = Mixed;
    fn mul(self, rhs: Mixed) -> Mixed {
        let mut out = Mixed::zero();
        for a in self.sectors.values() {
            for b in rhs.sectors.values() {
                out.insert(a.clone() * b.clone());
            }
        }
        out
    }
}

impl Scalar for Mixed {
    fn zero() -> Self {
        Mixed::zero()
    }
    fn one() -> Self {
        Expr::one().into()
    }
    fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }
    fn from_rational(r: Rational) -> Self {
        Expr::constant(r).into()
    }
    /// Only elements living in the `(0,0)` sector are inverted.
    fn try_recip(&self) -> Option<Self> {
        match self.sectors.len() {
            1 => self.sectors.get(&Bidegree::ZERO).and_then(Expr::recip).map(Mixed::from),
            _ => None,
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        Mixed { sectors: self.sectors.iter().map(|(b, e)| (*b, e.scale(r))).filter(|(_, e)| !e.is_zero()).collect() }
    }
}

impl fmt::Display for Mixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sectors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.sectors.iter().map(|(b, e)| format!("{b}: {e}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl fmt::Debug for Mixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mixed({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symba::Gen;

    #[test]
    fn sectors_stay_separate() {
        let dx = Gen::build("mt_dx").form(1).build().unwrap();
        let c = Gen::build("mt_c").ghost(1).build().unwrap();
        let a = Mixed::from(Expr::gen(&dx)) + Mixed::from(Expr::gen(&c));
        let sq = a.clone() * a;
        // dx*c + c*dx cancels by the Koszul sign, the squares vanish
        assert!(sq.is_zero());
        let b = Mixed::from(Expr::int(2)) + Mixed::from(Expr::gen(&dx));
        assert_eq!(b.sector(Bidegree::new(1, 0)), Expr::gen(&dx));
        assert!(b.try_recip().is_none());
    }
}
