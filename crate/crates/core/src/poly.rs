//! Truncated multivariate polynomials.
//!
//! These are the brute-force representatives behind the Lie bracket and the
//! adjoint action: a jet is turned into its polynomial map, maps are
//! composed or differentiated, and the result is read back as a jet.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::jet::{Jet2, Jet3};
use crate::scalar::{Rational, Scalar};
use crate::symtensor::SymTensor;

/// Polynomial in `nvars` variables with every monomial of degree above
/// `max_deg` discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    nvars: usize,
    max_deg: u32,
    terms: BTreeMap<Vec<u32>, T>,
}

/// Vector of polynomials: the components of a map or a vector field.
pub type PolyMap<T> = Vec<Poly<T>>;

impl<T: Scalar> Poly<T> {
    pub fn zero(nvars: usize, max_deg: u32) -> Self {
        Self { nvars, max_deg, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, max_deg: u32, c: T) -> Self {
        let mut p = Self::zero(nvars, max_deg);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, max_deg: u32, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars, max_deg);
        p.add_term(e, T::one());
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: T) {
        if exps.iter().sum::<u32>() > self.max_deg || c.is_zero() {
            return;
        }
        let entry = self.terms.remove(&exps);
        let v = match entry {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(exps, v);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Truncated product; coefficients of `self` stay on the left.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.max_deg);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > self.max_deg {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale_left(&self, c: &T) -> Self {
        let mut out = Self::zero(self.nvars, self.max_deg);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), c.clone() * v.clone());
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.max_deg);
        for (e, v) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, T::from_int(i64::from(e[i])) * v.clone());
        }
        out
    }

    /// Substitutes `subs[i]` for variable `i`, truncating at `max_deg` of the
    /// substituted polynomials.
    pub fn compose(&self, subs: &[Poly<T>]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let nv = subs[0].nvars;
        let md = subs[0].max_deg;
        let top = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<Self>> = subs
            .iter()
            .map(|p| {
                let mut row = vec![Self::constant(nv, md, T::one())];
                for k in 1..=top as usize {
                    let next = row[k - 1].mul(p);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out = Self::zero(nv, md);
        for (e, c) in &self.terms {
            let mut prod = Self::constant(nv, md, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    prod = prod.mul(&powers[i][k as usize]);
                }
            }
            for (m, v) in prod.terms {
                out.add_term(m, v);
            }
        }
        out
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        let mut out = Poly::zero(self.nvars, self.max_deg);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), f(v));
        }
        out
    }
}

impl<T: Scalar> Add for Poly<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, v) in rhs.terms {
            self.add_term(e, v);
        }
        self
    }
}

impl<T: Scalar> Neg for Poly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|v| -v.clone())
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Number of ordered index tuples that sort to the given multi-index.
pub fn multiplicity(sorted: &[usize]) -> Rational {
    let fact = |k: usize| (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i));
    let mut denom = BigInt::from(1);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        denom *= fact(j - i);
        i = j;
    }
    BigRational::new(fact(sorted.len()), denom)
}

fn exps_of(n: usize, idx: &[usize]) -> Vec<u32> {
    let mut e = vec![0; n];
    for &i in idx {
        e[i] += 1;
    }
    e
}

/// Adds the homogeneous part `sum_{a..} t^mu_{a..} u^a ...` to `map`.
pub(crate) fn add_sym_part<T: Scalar>(map: &mut PolyMap<T>, t: &SymTensor<T>) {
    let n = t.dim();
    for (mu, idx, v) in t.entries() {
        let c = v.scale(&multiplicity(&idx));
        map[mu].add_term(exps_of(n, &idx), c);
    }
}

/// Reads the homogeneous part of degree `rank` back into symmetric storage.
pub(crate) fn read_sym_part<T: Scalar>(map: &PolyMap<T>, rank: usize) -> SymTensor<T> {
    let n = map.len();
    SymTensor::from_fn(n, rank, |mu, idx| {
        let m = multiplicity(idx);
        map[mu].coeff(&exps_of(n, idx)).scale(&m.recip())
    })
}

fn linear_and_const<T: Scalar>(base: &[T], e1: &[Vec<T>], max_deg: u32) -> PolyMap<T> {
    let n = base.len();
    (0..n)
        .map(|mu| {
            let mut p = Poly::constant(n, max_deg, base[mu].clone());
            for (a, c) in e1[mu].iter().enumerate() {
                p.add_term(exps_of(n, &[a]), c.clone());
            }
            p
        })
        .collect()
}

/// Polynomial representative of a 2-jet, truncated at `max_deg`.
pub fn jet2_to_map<T: Scalar>(f: &Jet2<T>, max_deg: u32) -> PolyMap<T> {
    let mut m = linear_and_const(&f.base, &f.e1, max_deg);
    add_sym_part(&mut m, &f.e2);
    m
}

pub fn jet3_to_map<T: Scalar>(f: &Jet3<T>, max_deg: u32) -> PolyMap<T> {
    let mut m = jet2_to_map(&f.jet2, max_deg);
    add_sym_part(&mut m, &f.e3);
    m
}

pub fn map_to_jet2<T: Scalar>(m: &PolyMap<T>) -> Jet2<T> {
    let n = m.len();
    let zero = vec![0; n];
    let base = m.iter().map(|p| p.coeff(&zero)).collect();
    let e1 = (0..n).map(|mu| (0..n).map(|a| m[mu].coeff(&exps_of(n, &[a]))).collect()).collect();
    Jet2 { base, e1, e2: read_sym_part(m, 2) }
}

pub fn map_to_jet3<T: Scalar>(m: &PolyMap<T>) -> Jet3<T> {
    Jet3 { jet2: map_to_jet2(m), e3: read_sym_part(m, 3) }
}

/// The identity map `u -> u`.
pub fn identity_map<T: Scalar>(n: usize, max_deg: u32) -> PolyMap<T> {
    (0..n).map(|i| Poly::var(n, max_deg, i)).collect()
}

pub fn compose_maps<T: Scalar>(outer: &PolyMap<T>, inner: &PolyMap<T>) -> PolyMap<T> {
    outer.iter().map(|p| p.compose(inner)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&[0, 0]), rat(1, 1));
        assert_eq!(multiplicity(&[0, 1]), rat(2, 1));
        assert_eq!(multiplicity(&[0, 1, 2]), rat(6, 1));
        assert_eq!(multiplicity(&[0, 0, 1]), rat(3, 1));
    }

    #[test]
    fn jet_round_trip_through_polynomials() {
        let mut e2 = SymTensor::zeros(2, 2);
        e2.set(0, &[0, 1], rat(3, 1));
        e2.set(1, &[1, 1], rat(-1, 2));
        let f = Jet2::new(vec![rat(1, 1), rat(0, 1)], vec![vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(1, 1)]], e2)
            .unwrap();
        let m = jet2_to_map(&f, 2);
        // the off-diagonal symmetric entry appears twice in the full sum
        assert_eq!(m[0].coeff(&[1, 1]), rat(6, 1));
        assert_eq!(map_to_jet2(&m), f);
    }
}
