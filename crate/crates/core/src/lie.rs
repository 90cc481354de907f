//! The graded Lie algebra `g = gl(-1) + gl(0) + gl(1)` of 2-jets of vector
//! fields at the origin, its bracket, and the adjoint action of `G3`.
//!
//! A [`VecJet`] stores the raw coefficients of
//! `X(u) = (X^a + X^a_b u^b + X^a_bc u^b u^c) d_a`. The normative bracket
//! ([`bracket_oracle`]) is minus the Lie bracket of the polynomial vector
//! fields, truncated at order two; the normative adjoint action
//! ([`adjoint`]) differentiates the conjugation `g . (id + tX) . g^-1` at
//! `t = 0` exactly, using dual numbers.
//!
//! The closed component formulas ([`bracket_paper`], [`adjoint_paper`]) are
//! kept as literal transcriptions and are compared against the oracles in
//! the test suite. They agree once the order-two components are read as
//! second derivatives, see [`VecJet::to_derivative`].

use crate::convention::{coeff_from_derivative, derivative_from_coeff};
use crate::error::{Error, Result};
use crate::jet::{inverse2, inverse3, mat_inv, Jet2, Jet3, Matrix};
use crate::poly::{add_sym_part, compose_maps, jet3_to_map, read_sym_part, Poly, PolyMap};
use crate::scalar::{Dual, Scalar};
use crate::symtensor::SymTensor;

#[derive(Clone, Debug, PartialEq)]
pub struct VecJet<T> {
    /// `X^a`
    pub m1: Vec<T>,
    /// `X^a_b`, row `a`, column `b`
    pub c0: Matrix<T>,
    /// `X^a_bc`
    pub c1: SymTensor<T>,
}

impl<T: Scalar> VecJet<T> {
    pub fn zero(n: usize) -> Self {
        Self { m1: vec![T::zero(); n], c0: vec![vec![T::zero(); n]; n], c1: SymTensor::zeros(n, 2) }
    }

    pub fn new(m1: Vec<T>, c0: Matrix<T>, c1: SymTensor<T>) -> Result<Self> {
        let n = m1.len();
        if c0.len() != n || c0.iter().any(|r| r.len() != n) || c1.dim() != n || c1.rank() != 2 {
            return Err(Error::Malformed("vector jet components have inconsistent dimensions".into()));
        }
        Ok(Self { m1, c0, c1 })
    }

    /// One-dimensional `(X, X', X'')` in stored coefficients:
    /// `X(u) = x0 + x1 u + x2 u^2`.
    pub fn scalar(x0: T, x1: T, x2: T) -> Self {
        let mut c1 = SymTensor::zeros(1, 2);
        c1.set(0, &[0, 0], x2);
        Self { m1: vec![x0], c0: vec![vec![x1]], c1 }
    }

    pub fn dim(&self) -> usize {
        self.m1.len()
    }

    pub fn is_zero(&self) -> bool {
        self.m1.iter().all(Scalar::is_zero) && self.c0.iter().flatten().all(Scalar::is_zero) && self.c1.is_zero()
    }

    /// Graded components of degree `-1`, `0`, `+1`.
    pub fn part(&self, degree: i32) -> Self {
        let n = self.dim();
        let mut out = Self::zero(n);
        match degree {
            -1 => out.m1 = self.m1.clone(),
            0 => out.c0 = self.c0.clone(),
            1 => out.c1 = self.c1.clone(),
            _ => {}
        }
        out
    }

    /// The grade of a nonzero homogeneous element.
    pub fn grade(&self) -> Option<i32> {
        let nz: Vec<i32> = [-1, 0, 1].into_iter().filter(|&k| !self.part(k).is_zero()).collect();
        match nz.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> VecJet<U> {
        VecJet {
            m1: self.m1.iter().map(&f).collect(),
            c0: self.c0.iter().map(|r| r.iter().map(&f).collect()).collect(),
            c1: self.c1.map(&f),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        VecJet {
            m1: self.m1.iter().zip(&other.m1).map(|(a, b)| f(a, b)).collect(),
            c0: self
                .c0
                .iter()
                .zip(&other.c0)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
                .collect(),
            c1: self.c1.zip_with(&other.c1, &f),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// Same element with `X^a_bc` replaced by `d_b d_c X^a(0)`.
    pub fn to_derivative(&self) -> Self {
        VecJet { c1: self.c1.map(|v| derivative_from_coeff(2, v)), ..self.clone() }
    }

    pub fn from_derivative(&self) -> Self {
        VecJet { c1: self.c1.map(|v| coeff_from_derivative(2, v)), ..self.clone() }
    }

    /// Polynomial vector field `X(u)` with monomials of degree above
    /// `max_deg` dropped.
    pub fn to_field(&self, max_deg: u32) -> PolyMap<T> {
        let n = self.dim();
        let mut field: PolyMap<T> = (0..n)
            .map(|a| {
                let mut p = Poly::constant(n, max_deg, self.m1[a].clone());
                for b in 0..n {
                    let mut e = vec![0; n];
                    e[b] = 1;
                    p.add_term(e, self.c0[a][b].clone());
                }
                p
            })
            .collect();
        add_sym_part(&mut field, &self.c1);
        field
    }

    /// Reads the 2-jet at the origin of a polynomial vector field.
    pub fn from_field(field: &PolyMap<T>) -> Self {
        let n = field.len();
        let m1 = field.iter().map(|p| p.coeff(&vec![0; n])).collect();
        let c0 = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut e = vec![0; n];
                        e[b] = 1;
                        field[a].coeff(&e)
                    })
                    .collect()
            })
            .collect();
        Self { m1, c0, c1: read_sym_part(field, 2) }
    }
}

fn check_dims<T: Scalar>(x: &VecJet<T>, y: &VecJet<T>) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    Ok(())
}

/// Minus the Lie bracket of polynomial vector fields,
/// `Y^b d_b X^a - X^b d_b Y^a`, truncated at the fields' `max_deg`.
///
/// Coefficients of `x` are always multiplied from the left, which is what
/// makes the same routine serve as the graded bracket of Lie-algebra-valued
/// forms.
pub fn field_bracket<T: Scalar>(x: &PolyMap<T>, y: &PolyMap<T>) -> PolyMap<T> {
    let n = x.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| x[a].derivative(b).mul(&y[b]) - x[b].mul(&y[a].derivative(b)))
                .reduce(|s, t| s + t)
                .expect("positive dimension")
        })
        .collect()
}

/// Normative bracket on `g`.
pub fn bracket_oracle<T: Scalar>(x: &VecJet<T>, y: &VecJet<T>) -> Result<VecJet<T>> {
    check_dims(x, y)?;
    Ok(VecJet::from_field(&field_bracket(&x.to_field(2), &y.to_field(2))))
}

/// Component formulas for the bracket, transcribed term by term:
///
/// ```text
/// [X,Y]^a    = X^a_b Y^b - Y^a_b X^b
/// [X,Y]^a_b  = X^a_c Y^c_b + X^a_bc Y^c - (X <-> Y)
/// [X,Y]^a_bc = X^a_d Y^d_bc + X^a_dc Y^d_b + X^a_bd Y^d_c - (X <-> Y)
/// ```
///
/// On stored coefficients this differs from [`bracket_oracle`] by a factor
/// two in the `X^a_bc Y^c` term; on [`VecJet::to_derivative`] data the two
/// agree exactly.
pub fn bracket_paper<T: Scalar>(x: &VecJet<T>, y: &VecJet<T>) -> Result<VecJet<T>> {
    check_dims(x, y)?;
    let n = x.dim();
    let half = |p: &VecJet<T>, q: &VecJet<T>| -> VecJet<T> {
        let m1 = (0..n).map(|a| (0..n).fold(T::zero(), |s, b| s + p.c0[a][b].clone() * q.m1[b].clone())).collect();
        let c0 = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (0..n).fold(T::zero(), |s, c| {
                            s + p.c0[a][c].clone() * q.c0[c][b].clone()
                                + p.c1.get(a, &[b, c]).clone() * q.m1[c].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        let c1 = SymTensor::from_fn(n, 2, |a, bc| {
            let (b, c) = (bc[0], bc[1]);
            (0..n).fold(T::zero(), |s, d| {
                s + p.c0[a][d].clone() * q.c1.get(d, &[b, c]).clone()
                    + p.c1.get(a, &[d, c]).clone() * q.c0[d][b].clone()
                    + p.c1.get(a, &[b, d]).clone() * q.c0[d][c].clone()
            })
        });
        VecJet { m1, c0, c1 }
    };
    Ok(half(x, y).sub(&half(y, x)))
}

/// Grade of `[x, y]` for homogeneous `x`, `y`, or `None` when the bracket
/// vanishes.
///
/// Fails when the inputs are not homogeneous, or when the bracket is
/// nonzero but does not sit in degree `deg x + deg y`.
pub fn grading_check<T: Scalar>(x: &VecJet<T>, y: &VecJet<T>) -> Result<Option<i32>> {
    let (k, l) = match (x.grade(), y.grade()) {
        (Some(k), Some(l)) => (k, l),
        _ => return Err(Error::Algebra("grading check needs nonzero homogeneous elements".into())),
    };
    let b = bracket_oracle(x, y)?;
    if b.is_zero() {
        return Ok(None);
    }
    match b.grade() {
        Some(g) if g == k + l => Ok(Some(g)),
        other => Err(Error::Algebra(format!("bracket of degrees {k} and {l} landed in {other:?}"))),
    }
}

/// `[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]` for [`bracket_oracle`].
pub fn jacobiator<T: Scalar>(x: &VecJet<T>, y: &VecJet<T>, z: &VecJet<T>) -> Result<VecJet<T>> {
    let term = |a: &VecJet<T>, b: &VecJet<T>, c: &VecJet<T>| bracket_oracle(a, &bracket_oracle(b, c)?);
    Ok(term(x, y, z)?.add(&term(y, z, x)?).add(&term(z, x, y)?))
}

/// What truncation throws away: with `R(Y,Z)` the cubic part of the
/// untruncated field bracket, returns `sum_cyc j2[X, R(Y,Z)]`.
///
/// The jacobiator of [`bracket_oracle`] is exactly minus this sum. It
/// vanishes in one dimension and on `gl(0) + gl(1)`, but not on all of `g`
/// once `n >= 2`.
pub fn truncation_defect<T: Scalar>(x: &VecJet<T>, y: &VecJet<T>, z: &VecJet<T>) -> Result<VecJet<T>> {
    check_dims(x, y)?;
    check_dims(x, z)?;
    let cubic = |a: &VecJet<T>, b: &VecJet<T>| -> Result<PolyMap<T>> {
        let full = field_bracket(&a.to_field(3), &b.to_field(3));
        let low = bracket_oracle(a, b)?.to_field(3);
        Ok(full.into_iter().zip(low).map(|(f, l)| f - l).collect())
    };
    let term = |a: &VecJet<T>, b: &VecJet<T>, c: &VecJet<T>| -> Result<VecJet<T>> {
        Ok(VecJet::from_field(&field_bracket(&a.to_field(3), &cubic(b, c)?)))
    };
    Ok(term(x, y, z)?.add(&term(y, z, x)?).add(&term(z, x, y)?))
}

fn lift_dual<T: Scalar>(m: &PolyMap<T>) -> PolyMap<Dual<T>> {
    m.iter().map(|p| p.map_coeffs(|c| Dual::real(c.clone()))).collect()
}

/// `d/dt|0 j2(g . (id + tX) . g^-1)(0)` for `g` in `G3`.
pub fn adjoint<T: Scalar>(g: &Jet3<T>, x: &VecJet<T>) -> Result<VecJet<T>> {
    if g.dim() != x.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: x.dim() });
    }
    if !g.is_group_element() {
        return Err(Error::NonOriginBase);
    }
    let n = g.dim();
    let ginv = inverse3(g)?;
    let outer = lift_dual(&jet3_to_map(g, 3));
    let inv = lift_dual(&jet3_to_map(&ginv, 2));
    let field = x.to_field(2);
    let flow: PolyMap<Dual<T>> = (0..n)
        .map(|a| {
            let id = Poly::<T>::var(n, 2, a).map_coeffs(|c| Dual::real(c.clone()));
            id + field[a].map_coeffs(|c| Dual::new(T::zero(), c.clone()))
        })
        .collect();
    let conj = compose_maps(&outer, &compose_maps(&flow, &inv));
    let eps: PolyMap<T> = conj.iter().map(|p| p.map_coeffs(|d| d.eps.clone())).collect();
    Ok(VecJet::from_field(&eps))
}

/// Adjoint action of a `G2` element, zero-padded into `G3`.
pub fn adjoint2<T: Scalar>(g: &Jet2<T>, x: &VecJet<T>) -> Result<VecJet<T>> {
    adjoint(&g.to_jet3(), x)
}

/// Closed chain-rule formulas for the adjoint action, transcribed term by
/// term. Both `g` and `x` must be given by derivatives (`g^a'_ab = d_a d_b g`,
/// `X^a_bc = d_b d_c X^a`); `g^a_b'` and `g^a_b'c'` are the derivatives of
/// the inverse.
pub fn adjoint_paper<T: Scalar>(g_first: &Matrix<T>, g_second: &SymTensor<T>, g_third: &SymTensor<T>, x: &VecJet<T>) -> Result<VecJet<T>> {
    let n = x.dim();
    let gi = mat_inv(g_first)?;
    // second derivative of the inverse map
    let coeff_jet = Jet2 {
        base: vec![T::zero(); n],
        e1: g_first.clone(),
        e2: g_second.map(|v| coeff_from_derivative(2, v)),
    };
    let gi2 = inverse2(&coeff_jet)?.e2.map(|v| derivative_from_coeff(2, v));
    let g = g_first;
    let m1 = (0..n).map(|ap| (0..n).fold(T::zero(), |s, a| s + g[ap][a].clone() * x.m1[a].clone())).collect();
    let c0 = (0..n)
        .map(|ap| {
            (0..n)
                .map(|bp| {
                    let mut s = T::zero();
                    for a in 0..n {
                        for b in 0..n {
                            s = s + g_second.get(ap, &[a, b]).clone() * x.m1[b].clone() * gi[a][bp].clone()
                                + g[ap][a].clone() * x.c0[a][b].clone() * gi[b][bp].clone();
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    let c1 = SymTensor::from_fn(n, 2, |ap, bc| {
        let (bp, cp) = (bc[0], bc[1]);
        let mut s = T::zero();
        for a in 0..n {
            for b in 0..n {
                s = s + g_second.get(ap, &[a, b]).clone() * x.m1[b].clone() * gi2.get(a, &[bp, cp]).clone()
                    + g[ap][a].clone() * x.c0[a][b].clone() * gi2.get(b, &[bp, cp]).clone();
                for c in 0..n {
                    s = s
                        + g_third.get(ap, &[a, b, c]).clone()
                            * x.m1[c].clone()
                            * gi[b][bp].clone()
                            * gi[a][cp].clone()
                        + g_second.get(ap, &[a, b]).clone()
                            * x.c0[b][c].clone()
                            * gi[c][bp].clone()
                            * gi[a][cp].clone()
                        + g_second.get(ap, &[a, c]).clone()
                            * gi[c][bp].clone()
                            * x.c0[a][b].clone()
                            * gi[b][cp].clone()
                        + g[ap][a].clone() * x.c1.get(a, &[b, c]).clone() * gi[c][bp].clone() * gi[b][cp].clone();
                }
            }
        }
        s
    });
    Ok(VecJet { m1, c0, c1 })
}

/// Convenience wrapper: [`adjoint_paper`] fed from a stored-coefficient jet
/// and vector jet, with the result converted back to stored coefficients.
pub fn adjoint_paper_from_coeffs<T: Scalar>(g: &Jet3<T>, x: &VecJet<T>) -> Result<VecJet<T>> {
    let second = g.e2().map(|v| derivative_from_coeff(2, v));
    let third = g.e3.map(|v| derivative_from_coeff(3, v));
    Ok(adjoint_paper(g.e1(), &second, &third, &x.to_derivative())?.from_derivative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn v(x0: i64, x1: i64, x2: i64) -> VecJet<Rational> {
        VecJet::scalar(rat(x0, 1), rat(x1, 1), rat(x2, 1))
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(bracket_oracle(&v(1, 0, 0), &v(0, 1, 0)).unwrap(), v(-1, 0, 0));
        assert!(bracket_oracle(&v(2, 3, -1), &v(2, 3, -1)).unwrap().is_zero());
        assert_eq!(bracket_oracle(&v(0, 1, 0), &v(0, 0, 1)).unwrap(), v(0, 0, -1));
    }

    #[test]
    fn literal_examples() {
        assert_eq!(bracket_paper(&v(1, 0, 0), &v(0, 1, 0)).unwrap(), v(-1, 0, 0));
        assert!(bracket_paper(&v(2, 3, -1), &v(2, 3, -1)).unwrap().is_zero());
        assert_eq!(bracket_paper(&v(0, 1, 0), &v(0, 0, 1)).unwrap(), v(0, 0, -1));
    }

    #[test]
    fn literal_mixed_term_differs_by_two_on_stored_coefficients() {
        let x = v(1, 0, 0);
        let y = v(0, 0, 1);
        assert_eq!(bracket_oracle(&x, &y).unwrap(), v(0, -2, 0));
        assert_eq!(bracket_paper(&x, &y).unwrap(), v(0, -1, 0));
        let lit = bracket_paper(&x.to_derivative(), &y.to_derivative()).unwrap();
        assert_eq!(lit, bracket_oracle(&x, &y).unwrap().to_derivative());
    }

    #[test]
    fn grading_examples() {
        assert_eq!(grading_check(&v(1, 0, 0), &v(3, 0, 0)).unwrap(), None);
        assert_eq!(grading_check(&v(0, 2, 0), &v(0, 5, 0)).unwrap(), None);
        assert_eq!(grading_check(&v(1, 0, 0), &v(0, 0, 1)).unwrap(), Some(0));
        assert!(grading_check(&v(1, 1, 0), &v(0, 0, 1)).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let x = v(1, -2, 3);
        assert_eq!(adjoint(&Jet3::identity(1), &x).unwrap(), x);
        let dil = Jet3::scalar(rat(0, 1), rat(2, 1), rat(0, 1), rat(0, 1));
        assert_eq!(adjoint(&dil, &v(1, 0, 0)).unwrap(), v(2, 0, 0));
        let shifted = Jet3::scalar(rat(1, 1), rat(2, 1), rat(0, 1), rat(0, 1));
        assert_eq!(adjoint(&shifted, &x), Err(Error::NonOriginBase));
    }

    #[test]
    fn adjoint_matches_closed_formulas_in_one_dimension() {
        let g = Jet3::scalar(rat(0, 1), rat(3, 1), rat(-2, 1), rat(5, 7));
        let x = v(2, -1, 4);
        assert_eq!(adjoint_paper_from_coeffs(&g, &x).unwrap(), adjoint(&g, &x).unwrap());
    }

    #[test]
    fn jacobi_fails_on_the_full_algebra_in_two_dimensions() {
        let o = Rational::from_integer(0.into());
        let l = Rational::from_integer(1.into());
        let field = |m1: [i64; 2], c1: &[(usize, [usize; 2])]| {
            let mut t = SymTensor::zeros(2, 2);
            for (a, bc) in c1 {
                t.set(*a, bc, l.clone());
            }
            VecJet::new(m1.iter().map(|&v| rat(v, 1)).collect(), vec![vec![o.clone(); 2]; 2], t).unwrap()
        };
        // d_u, u^2 d_u, uv d_v
        let x = field([1, 0], &[]);
        let y = field([0, 0], &[(0, [0, 0])]);
        let z = field([0, 0], &[(1, [0, 1])]);
        let j = jacobiator(&x, &y, &z).unwrap();
        assert!(!j.is_zero());
        assert_eq!(j.add(&truncation_defect(&x, &y, &z).unwrap()), VecJet::zero(2));
    }
}
