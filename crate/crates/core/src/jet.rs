//! 2-jets and 3-jets of local diffeomorphisms of `R^n`.
//!
//! A jet stores the raw Taylor coefficients of its polynomial representative
//!
//! ```text
//! f^mu(u) = x^mu + e^mu_a u^a + e^mu_ab u^a u^b + e^mu_abc u^a u^b u^c
//! ```
//!
//! summed over all index values, with `e^mu_ab` and `e^mu_abc` symmetric. The
//! `k`-th derivative is therefore `k!` times the stored coefficient; see
//! [`crate::convention`] for the conversion.
//!
//! Composition `f . g` is only defined when `g` fixes the origin, which is the
//! case for elements of the differential groups `G2` and `G3`.

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational, Scalar};
use crate::symtensor::SymTensor;

/// Square matrix stored row-major as nested vectors.
pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity_matrix<T: Scalar>(n: usize) -> Matrix<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(T::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse. Pivots must be invertible ring elements.
pub fn mat_inv<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity_matrix::<T>(n);
    for col in 0..n {
        let (row, pivot_inv) = (col..n)
            .find_map(|r| a[r][col].try_recip().map(|p| (r, p)))
            .ok_or(Error::Singular)?;
        a.swap(col, row);
        inv.swap(col, row);
        for j in 0..n {
            a[col][j] = pivot_inv.clone() * a[col][j].clone();
            inv[col][j] = pivot_inv.clone() * inv[col][j].clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].clone() - factor.clone() * a[col][j].clone();
                inv[r][j] = inv[r][j].clone() - factor.clone() * inv[col][j].clone();
            }
        }
    }
    Ok(inv)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<T = Rational> {
    pub base: Vec<T>,
    pub e1: Matrix<T>,
    pub e2: SymTensor<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jet3<T = Rational> {
    pub jet2: Jet2<T>,
    pub e3: SymTensor<T>,
}

fn check_square<T>(n: usize, m: &Matrix<T>) -> Result<()> {
    if m.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.len() });
    }
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: row.len() });
    }
    Ok(())
}

fn check_tensor<T: Scalar>(n: usize, rank: usize, t: &SymTensor<T>) -> Result<()> {
    if t.dim() != n || t.rank() != rank {
        return Err(Error::DimensionMismatch { expected: n, found: t.dim() });
    }
    Ok(())
}

impl<T: Scalar> Jet2<T> {
    pub fn new(base: Vec<T>, e1: Matrix<T>, e2: SymTensor<T>) -> Result<Self> {
        let n = base.len();
        if n == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        check_square(n, &e1)?;
        check_tensor(n, 2, &e2)?;
        Ok(Self { base, e1, e2 })
    }

    /// One-dimensional jet `(x, e1, e2)`.
    pub fn scalar(x: T, e1: T, e2: T) -> Self {
        let mut t = SymTensor::zeros(1, 2);
        t.set(0, &[0, 0], e2);
        Self { base: vec![x], e1: vec![vec![e1]], e2: t }
    }

    /// The identity element `(0, delta, 0)` of `G2`.
    pub fn identity(n: usize) -> Self {
        natural_frame(vec![T::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn is_group_element(&self) -> bool {
        self.base.iter().all(Scalar::is_zero)
    }

    /// Same jet moved to the origin.
    pub fn at_origin(&self) -> Self {
        Self { base: vec![T::zero(); self.dim()], ..self.clone() }
    }

    /// Zero-padded lift into order three.
    pub fn to_jet3(&self) -> Jet3<T> {
        Jet3 { jet2: self.clone(), e3: SymTensor::zeros(self.dim(), 3) }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Jet2<U> {
        Jet2 {
            base: self.base.iter().map(&f).collect(),
            e1: self.e1.iter().map(|r| r.iter().map(&f).collect()).collect(),
            e2: self.e2.map(&f),
        }
    }
}

impl<T: Scalar> Jet3<T> {
    pub fn new(base: Vec<T>, e1: Matrix<T>, e2: SymTensor<T>, e3: SymTensor<T>) -> Result<Self> {
        let jet2 = Jet2::new(base, e1, e2)?;
        check_tensor(jet2.dim(), 3, &e3)?;
        Ok(Self { jet2, e3 })
    }

    pub fn scalar(x: T, e1: T, e2: T, e3: T) -> Self {
        let mut t = SymTensor::zeros(1, 3);
        t.set(0, &[0, 0, 0], e3);
        Self { jet2: Jet2::scalar(x, e1, e2), e3: t }
    }

    pub fn identity(n: usize) -> Self {
        Jet2::identity(n).to_jet3()
    }

    pub fn dim(&self) -> usize {
        self.jet2.dim()
    }

    pub fn base(&self) -> &[T] {
        &self.jet2.base
    }

    pub fn e1(&self) -> &Matrix<T> {
        &self.jet2.e1
    }

    pub fn e2(&self) -> &SymTensor<T> {
        &self.jet2.e2
    }

    pub fn is_group_element(&self) -> bool {
        self.jet2.is_group_element()
    }

    pub fn at_origin(&self) -> Self {
        Self { jet2: self.jet2.at_origin(), e3: self.e3.clone() }
    }

    /// Forgets the third-order coefficients.
    pub fn truncate(&self) -> Jet2<T> {
        self.jet2.clone()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Jet3<U> {
        Jet3 { jet2: self.jet2.map(&f), e3: self.e3.map(&f) }
    }
}

/// The natural 2-frame `(x, delta, 0)`: the 2-jet of the translation `u -> x + u`.
pub fn natural_frame<T: Scalar>(x: Vec<T>) -> Jet2<T> {
    let n = x.len();
    Jet2 { base: x, e1: identity_matrix(n), e2: SymTensor::zeros(n, 2) }
}

fn check_composable<T: Scalar>(f: &Jet2<T>, g: &Jet2<T>) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    if !g.is_group_element() {
        return Err(Error::NonOriginBase);
    }
    Ok(())
}

fn compose2_unchecked<T: Scalar>(f: &Jet2<T>, g: &Jet2<T>) -> Jet2<T> {
    let n = f.dim();
    let e1 = mat_mul(&f.e1, &g.e1);
    let e2 = SymTensor::from_fn(n, 2, |mu, ij| {
        let (i, j) = (ij[0], ij[1]);
        let mut acc = T::zero();
        for a in 0..n {
            for b in 0..n {
                acc = acc + f.e2.get(mu, &[a, b]).clone() * g.e1[a][i].clone() * g.e1[b][j].clone();
            }
            acc = acc + f.e1[mu][a].clone() * g.e2.get(a, &[i, j]).clone();
        }
        acc
    });
    Jet2 { base: f.base.clone(), e1, e2 }
}

/// 2-jet of `f . g` for `g` in `G2`.
pub fn compose2<T: Scalar>(f: &Jet2<T>, g: &Jet2<T>) -> Result<Jet2<T>> {
    check_composable(f, g)?;
    Ok(compose2_unchecked(f, g))
}

/// Third-order coefficients of `f . g`.
///
/// With `f = E1 u + E2 uu + E3 uuu` and `g = G1 v + G2 vv + G3 vvv`, the cubic
/// part of `f(g(v))` is `E1 G3 + 2 E2(G1 v, G2 vv) + E3(G1 v, G1 v, G1 v)`;
/// the middle term is symmetrized over the three lower slots. The last term
/// is contracted one slot at a time.
fn compose3_top<T: Scalar>(f: &Jet3<T>, g: &Jet3<T>) -> SymTensor<T> {
    let n = f.dim();
    let two_thirds = T::from_rational(rat(2, 3));
    let (fe1, fe2, fe3) = (f.e1(), f.e2(), &f.e3);
    let (ge1, ge2, ge3) = (g.e1(), g.e2(), &g.e3);
    let sum = |terms: &mut dyn Iterator<Item = T>| terms.fold(T::zero(), |s, t| s + t);
    // p[mu][e][a] = E2^mu_de G1^d_a
    let p: Vec<Vec<Vec<T>>> = (0..n)
        .map(|mu| {
            (0..n)
                .map(|e| (0..n).map(|a| sum(&mut (0..n).map(|d| fe2.get(mu, &[d, e]).clone() * ge1[d][a].clone()))).collect())
                .collect()
        })
        .collect();
    // q1[mu][d][e][c] = E3^mu_deh G1^h_c, q2[mu][d][b][c] = q1[mu][d][e][c] G1^e_b
    let q1: Vec<Vec<Vec<Vec<T>>>> = (0..n)
        .map(|mu| {
            (0..n)
                .map(|d| {
                    (0..n)
                        .map(|e| {
                            (0..n)
                                .map(|c| sum(&mut (0..n).map(|h| fe3.get(mu, &[d, e, h]).clone() * ge1[h][c].clone())))
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let q2: Vec<Vec<Vec<Vec<T>>>> = (0..n)
        .map(|mu| {
            (0..n)
                .map(|d| {
                    (0..n)
                        .map(|b| (0..n).map(|c| sum(&mut (0..n).map(|e| q1[mu][d][e][c].clone() * ge1[e][b].clone()))).collect())
                        .collect()
                })
                .collect()
        })
        .collect();
    SymTensor::from_fn(n, 3, |mu, abc| {
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        let mut acc = T::zero();
        for d in 0..n {
            acc = acc + fe1[mu][d].clone() * ge3.get(d, &[a, b, c]).clone();
            acc = acc + q2[mu][d][b][c].clone() * ge1[d][a].clone();
        }
        let middle = sum(&mut (0..n).map(|e| {
            p[mu][e][a].clone() * ge2.get(e, &[b, c]).clone()
                + p[mu][e][b].clone() * ge2.get(e, &[a, c]).clone()
                + p[mu][e][c].clone() * ge2.get(e, &[a, b]).clone()
        }));
        acc + two_thirds.clone() * middle
    })
}

/// 3-jet of `f . g` for `g` in `G3`.
pub fn compose3<T: Scalar>(f: &Jet3<T>, g: &Jet3<T>) -> Result<Jet3<T>> {
    check_composable(&f.jet2, &g.jet2)?;
    let jet2 = compose2_unchecked(&f.jet2, &g.jet2);
    let e3 = compose3_top(f, g);
    Ok(Jet3 { jet2, e3 })
}

/// Inverse 2-jet.
///
/// The result is the jet at the origin of `w -> f^-1(x + w)`, where `x` is
/// the base point of `f`; so `compose2(f, &inverse2(f)?)` is the natural frame
/// at `x`, and for group elements it is the identity.
pub fn inverse2<T: Scalar>(f: &Jet2<T>) -> Result<Jet2<T>> {
    let n = f.dim();
    let h1 = mat_inv(&f.e1)?;
    // h^a_{mu nu} = - h^a_l f^l_{bc} h^b_mu h^c_nu
    let h2 = SymTensor::from_fn(n, 2, |a, mn| {
        let (m, nu) = (mn[0], mn[1]);
        let mut acc = T::zero();
        for l in 0..n {
            for b in 0..n {
                for c in 0..n {
                    acc = acc
                        + h1[a][l].clone()
                            * f.e2.get(l, &[b, c]).clone()
                            * h1[b][m].clone()
                            * h1[c][nu].clone();
                }
            }
        }
        -acc
    });
    Ok(Jet2 { base: vec![T::zero(); n], e1: h1, e2: h2 })
}

/// Inverse 3-jet, with the same base-point handling as [`inverse2`].
pub fn inverse3<T: Scalar>(f: &Jet3<T>) -> Result<Jet3<T>> {
    let n = f.dim();
    let low = inverse2(&f.jet2)?;
    let partial = Jet3 { jet2: low, e3: SymTensor::zeros(n, 3) };
    // f . h has cubic part E1 H3 + (terms without H3); make it vanish.
    let rest = compose3_top(&f.at_origin(), &partial);
    let h1 = &partial.jet2.e1;
    let h3 = SymTensor::from_fn(n, 3, |a, idx| {
        -(0..n).fold(T::zero(), |acc, l| acc + h1[a][l].clone() * rest.get(l, idx).clone())
    });
    Ok(Jet3 { e3: h3, ..partial })
}

/// Splits `g` in `G2 = GL0 x| GL1` as `(g^a_b, 0) . (delta, (g^-1) g2)`.
pub fn semidirect_split<T: Scalar>(g: &Jet2<T>) -> Result<(Jet2<T>, Jet2<T>)> {
    if !g.is_group_element() {
        return Err(Error::NonOriginBase);
    }
    let n = g.dim();
    let inv = mat_inv(&g.e1)?;
    let linear = Jet2 { base: vec![T::zero(); n], e1: g.e1.clone(), e2: SymTensor::zeros(n, 2) };
    let k = SymTensor::from_fn(n, 2, |a, ij| {
        (0..n).fold(T::zero(), |acc, b| acc + inv[a][b].clone() * g.e2.get(b, ij).clone())
    });
    let unipotent = Jet2 { base: vec![T::zero(); n], e1: identity_matrix(n), e2: k };
    Ok((linear, unipotent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j2(x: i64, e1: (i64, i64), e2: (i64, i64)) -> Jet2 {
        Jet2::scalar(rat(x, 1), rat(e1.0, e1.1), rat(e2.0, e2.1))
    }

    fn j3(v: [i64; 4]) -> Jet3 {
        Jet3::scalar(rat(v[0], 1), rat(v[1], 1), rat(v[2], 1), rat(v[3], 1))
    }

    #[test]
    fn compose2_examples() {
        // 2(u+u^2) + 3(u+u^2)^2 = 2u + 5u^2 + ...
        assert_eq!(compose2(&j2(0, (2, 1), (3, 1)), &j2(0, (1, 1), (1, 1))).unwrap(), j2(0, (2, 1), (5, 1)));
        let f = j2(4, (2, 1), (3, 1));
        assert_eq!(compose2(&f, &Jet2::identity(1)).unwrap(), f);
        assert_eq!(compose2(&j2(0, (1, 1), (0, 1)), &j2(0, (3, 1), (-1, 1))).unwrap(), j2(0, (3, 1), (-1, 1)));
    }

    #[test]
    fn compose_errors() {
        let f = j2(0, (1, 1), (0, 1));
        assert_eq!(compose2(&f, &j2(1, (1, 1), (0, 1))), Err(Error::NonOriginBase));
        assert!(matches!(compose2(&f, &Jet2::identity(2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn compose3_examples() {
        // (u+u^2) + (u+u^2)^3 = u + u^2 + u^3 + O(u^4)
        assert_eq!(compose3(&j3([0, 1, 0, 1]), &j3([0, 1, 1, 0])).unwrap(), j3([0, 1, 1, 1]));
        assert_eq!(compose3(&j3([0, 2, 0, 0]), &j3([0, 1, 0, 1])).unwrap(), j3([0, 2, 0, 2]));
        let g = j3([0, 3, -2, 5]);
        assert_eq!(compose3(&Jet3::identity(1), &g).unwrap(), g);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse2(&j2(0, (2, 1), (3, 1))).unwrap(), j2(0, (1, 2), (-3, 8)));
        assert_eq!(inverse2(&j2(0, (1, 1), (5, 1))).unwrap(), j2(0, (1, 1), (-5, 1)));
        assert_eq!(inverse2(&Jet2::<Rational>::identity(2)).unwrap(), Jet2::identity(2));
        assert_eq!(inverse3(&j3([0, 1, 0, 1])).unwrap(), j3([0, 1, 0, -1]));
        assert_eq!(inverse2(&j2(0, (0, 1), (1, 1))), Err(Error::Singular));
    }

    #[test]
    fn inverse_recentres_at_image_point() {
        let f = j2(7, (2, 1), (3, 1));
        let h = inverse2(&f).unwrap();
        assert!(h.is_group_element());
        assert_eq!(compose2(&f, &h).unwrap(), natural_frame(vec![rat(7, 1)]));
    }

    #[test]
    fn natural_frames() {
        assert_eq!(natural_frame(vec![rat(7, 1)]), j2(7, (1, 1), (0, 1)));
        let nf = natural_frame(vec![rat(1, 1), rat(2, 1)]);
        assert_eq!(nf.e1, identity_matrix::<Rational>(2));
        assert!(nf.e2.is_zero());
    }

    #[test]
    fn split_examples() {
        let (l, u) = semidirect_split(&j2(0, (2, 1), (6, 1))).unwrap();
        assert_eq!(l, j2(0, (2, 1), (0, 1)));
        assert_eq!(u, j2(0, (1, 1), (3, 1)));
        assert_eq!(compose2(&l, &u).unwrap(), j2(0, (2, 1), (6, 1)));
        let only_lin = j2(0, (5, 1), (0, 1));
        assert_eq!(semidirect_split(&only_lin).unwrap(), (only_lin.clone(), Jet2::identity(1)));
        let only_uni = j2(0, (1, 1), (4, 1));
        assert_eq!(semidirect_split(&only_uni).unwrap(), (Jet2::identity(1), only_uni.clone()));
    }
}
