//! Cartan connections on the second-order frame bundle of a line.
//!
//! A connection is a triple of 1-forms valued in `gl(-1) + gl(0) + gl(1)`.
//! Its components are written with derivatives, `X(u) = X + X_u u +
//! 1/2 X_uu u^2`, which is how frame coordinates are written too. Brackets,
//! adjoint actions and Maurer-Cartan terms are delegated to the jet-level
//! oracles in [`crate::lie`] and [`crate::jet`] through [`GValued::to_vecjet`].

use std::ops::{Add, Neg, Sub};

use crate::convention::{coeff_from_derivative, derivative_from_coeff};
use crate::error::{Error, Result};
use crate::jet::{compose2, inverse2, Jet2, Jet3};
use crate::lie::{adjoint, bracket_oracle, VecJet};
use crate::scalar::{rat, Dual, Scalar};
use crate::symba::{Bidegree, Derivation, Differentiable, Expr, Gen};

/// A `g`-valued element in one dimension: `(X, X_u, X_uu)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GValued<T = Expr> {
    pub m1: T,
    pub c0: T,
    /// Second derivative `X_uu`, not the Taylor coefficient.
    pub c1: T,
}

impl<T: Scalar> GValued<T> {
    pub fn new(m1: T, c0: T, c1: T) -> Self {
        Self { m1, c0, c1 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.m1.is_zero() && self.c0.is_zero() && self.c1.is_zero()
    }

    /// Stored-coefficient vector jet.
    pub fn to_vecjet(&self) -> VecJet<T> {
        VecJet::scalar(self.m1.clone(), self.c0.clone(), coeff_from_derivative(2, &self.c1))
    }

    pub fn from_vecjet(v: &VecJet<T>) -> Result<Self> {
        if v.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: v.dim() });
        }
        Ok(Self::new(v.m1[0].clone(), v.c0[0][0].clone(), derivative_from_coeff(2, v.c1.get(0, &[0, 0]))))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GValued<U> {
        GValued::new(f(&self.m1), f(&self.c0), f(&self.c1))
    }

    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<GValued<U>> {
        Ok(GValued::new(f(&self.m1)?, f(&self.c0)?, f(&self.c1)?))
    }

    pub fn scale(&self, r: &crate::scalar::Rational) -> Self {
        self.map(|v| v.scale(r))
    }

    /// Components as a list, lowest degree first.
    pub fn parts(&self) -> [&T; 3] {
        [&self.m1, &self.c0, &self.c1]
    }
}

impl<T: Differentiable> GValued<T> {
    pub fn derive(&self, d: &Derivation) -> Result<Self> {
        self.try_map(|v| v.derive(d))
    }
}

impl<T: Scalar> Add for GValued<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.m1 + rhs.m1, self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl<T: Scalar> Sub for GValued<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.m1 - rhs.m1, self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl<T: Scalar> Neg for GValued<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.m1, -self.c0, -self.c1)
    }
}

/// Graded bracket of `g`-valued forms. Coefficients of `a` stay on the left
/// of coefficients of `b`, which produces the Koszul signs.
pub fn bracket<T: Scalar>(a: &GValued<T>, b: &GValued<T>) -> Result<GValued<T>> {
    GValued::from_vecjet(&bracket_oracle(&a.to_vecjet(), &b.to_vecjet())?)
}

/// `Ad(g) a`; the base point of `g` is ignored.
pub fn adjoint_action<T: Scalar>(g: &Jet3<T>, a: &GValued<T>) -> Result<GValued<T>> {
    GValued::from_vecjet(&adjoint(&g.at_origin(), &a.to_vecjet())?)
}

fn vecjet_of_jet<T: Scalar>(j: &Jet2<T>) -> VecJet<T> {
    VecJet { m1: j.base.clone(), c0: j.e1.clone(), c1: j.e2.clone() }
}

fn with_variation<T: Differentiable>(j: &Jet2<T>, d: &Derivation) -> Result<Jet2<Dual<T>>> {
    let vary = |v: &T| -> Result<Dual<T>> { Ok(Dual::new(v.clone(), v.derive(d)?)) };
    Ok(Jet2 {
        base: j.base.iter().map(vary).collect::<Result<_>>()?,
        e1: j.e1.iter().map(|r| r.iter().map(vary).collect::<Result<_>>()).collect::<Result<_>>()?,
        e2: {
            let mut t = j.e2.map(|v| Dual::real(v.clone()));
            for (mu, idx, v) in j.e2.entries() {
                t.set(mu, &idx, vary(v)?);
            }
            t
        },
    })
}

/// Maurer-Cartan term `g . D g^-1` of a 2-jet valued function, for the
/// derivation `D` (the base point of `g` is ignored).
pub fn maurer_cartan<T: Differentiable>(g: &Jet2<T>, d: &Derivation) -> Result<GValued<T>> {
    let g0 = g.at_origin();
    let h = inverse2(&g0)?;
    let prod = compose2(&g0.map(|v| Dual::real(v.clone())), &with_variation(&h, d)?)?;
    GValued::from_vecjet(&vecjet_of_jet(&prod.map(|v| v.eps.clone())))
}

/// The same term written as `-(D g) . g^-1`.
pub fn maurer_cartan_right<T: Differentiable>(g: &Jet2<T>, d: &Derivation) -> Result<GValued<T>> {
    let g0 = g.at_origin();
    let h = inverse2(&g0)?;
    let prod = compose2(&with_variation(&g0, d)?, &h.map(|v| Dual::real(v.clone())))?;
    Ok(-GValued::from_vecjet(&vecjet_of_jet(&prod.map(|v| v.eps.clone())))?)
}

/// `Ad(g) omega + g . D g^-1`.
pub fn gauge_transform<T: Differentiable>(omega: &GValued<T>, g: &Jet3<T>, d: &Derivation) -> Result<GValued<T>> {
    Ok(adjoint_action(g, omega)? + maurer_cartan(&g.truncate(), d)?)
}

/// `K = d omega + 1/2 [omega, omega]`.
pub fn curvature<T: Differentiable>(omega: &GValued<T>, d: &Derivation) -> Result<GValued<T>> {
    Ok(omega.derive(d)? + bracket(omega, omega)?.scale(&rat(1, 2)))
}

/// `d omega_-1 + omega_0 ^ omega_-1`.
pub fn torsion<T: Differentiable>(omega: &GValued<T>, d: &Derivation) -> Result<T> {
    Ok(omega.m1.derive(d)? + omega.c0.clone() * omega.m1.clone())
}

/// Coordinate algebra of the second-order frame bundle of a line.
///
/// Generators: the point `x`, the frame coordinates `e = e^x_u` (invertible)
/// and `e2 = e^x_uu`, their differentials, and an opaque 1-form `w` standing
/// for the `gl(1)` part of the connection, with `d w = dw`. Any field
/// generator `f` is also allowed, with `d f = dx f'`.
#[derive(Clone, Debug)]
pub struct FrameBundle {
    pub x: Gen,
    pub e: Gen,
    pub e2: Gen,
    pub dx: Gen,
    pub de: Gen,
    pub de2: Gen,
    pub w: Gen,
    pub dw: Gen,
    d: Derivation,
}

impl FrameBundle {
    pub fn new() -> Result<Self> {
        let x = Gen::build("x").build()?;
        let e = Gen::build("e").invertible().build()?;
        let e2 = Gen::build("e2").build()?;
        let dx = Gen::build("dx").form(1).build()?;
        let de = Gen::build("de").form(1).build()?;
        let de2 = Gen::build("de2").form(1).build()?;
        let w = Gen::build("w").form(1).build()?;
        let dw = Gen::build("dw").form(2).build()?;
        let table = [(x.clone(), dx.clone()), (e.clone(), de.clone()), (e2.clone(), de2.clone()), (w.clone(), dw.clone())];
        let base = dx.clone();
        let d = Derivation::new("d", Bidegree::new(1, 0), move |g| {
            if let Some((_, dg)) = table.iter().find(|(h, _)| h == g) {
                return Ok(Expr::gen(dg));
            }
            if g.is_field() {
                return Ok(Expr::gen(&base) * Expr::gen(&g.prolong()?));
            }
            Ok(Expr::zero())
        });
        Ok(Self { x, e, e2, dx, de, de2, w, dw, d })
    }

    pub fn d(&self) -> &Derivation {
        &self.d
    }

    fn g(&self, g: &Gen) -> Expr {
        Expr::gen(g)
    }

    fn e_pow(&self, k: i32) -> Expr {
        Expr::gen_pow(&self.e, k).expect("e is invertible")
    }

    /// `(e^u_x, e^u_xx) = (e^-1, -e2 e^-3)`.
    pub fn inverse_frame(&self) -> (Expr, Expr) {
        (self.e_pow(-1), -(self.g(&self.e2) * self.e_pow(-3)))
    }

    /// `chi = e^u_xx e^x_u = -e2 e^-2`.
    pub fn chi(&self) -> Expr {
        self.inverse_frame().1 * self.g(&self.e)
    }

    /// `(theta^u, theta^u_u) = (e^-1 dx, e^-1 de - e2 e^-2 dx)`.
    pub fn solder_forms(&self) -> (Expr, Expr) {
        let (eu, euu) = self.inverse_frame();
        let theta = eu.clone() * self.g(&self.dx);
        let theta_u = self.g(&self.e) * euu * self.g(&self.dx) + eu * self.g(&self.de);
        (theta, theta_u)
    }

    /// `(theta^u, theta^u_u, w)`.
    pub fn connection(&self) -> GValued {
        let (t, tu) = self.solder_forms();
        GValued::new(t, tu, self.g(&self.w))
    }

    /// The frame `(x, e, e2)` as a jet with stored coefficients.
    pub fn frame_jet(&self) -> Jet2<Expr> {
        Jet2::scalar(self.g(&self.x), self.g(&self.e), coeff_from_derivative(2, &self.g(&self.e2)))
    }

    /// Projective lift of the frame into order three.
    pub fn lift(&self) -> Result<Jet3<Expr>> {
        crate::projective::lift_jet(&self.frame_jet())
    }

    /// `Gamma = Ad(l(e2)) omega + e2 . d e2^-1` for an arbitrary `gl(1)`
    /// component `omega_1` (a 1-form).
    pub fn gamma_with(&self, omega1: &Expr) -> Result<GValued> {
        let mut omega = self.connection();
        omega.c1 = omega1.clone();
        gauge_transform(&omega, &self.lift()?, &self.d)
    }

    pub fn gamma(&self) -> Result<GValued> {
        self.gamma_with(&self.g(&self.w))
    }

    /// The component formulas for `Gamma`, transcribed term by term in one
    /// dimension with the projective lift `e3 = 3/2 e2^2 e^-1`.
    pub fn gamma_components(&self) -> Result<GValued> {
        let e = self.g(&self.e);
        let e2 = self.g(&self.e2);
        let e3 = e2.clone() * e2.clone() * self.e_pow(-1).scale(&rat(3, 2));
        let (eu, euu) = self.inverse_frame();
        let (theta, theta_u) = self.solder_forms();
        let w = self.g(&self.w);
        let d = |a: &Expr| self.d.apply(a);
        let eu_sq = eu.clone() * eu.clone();
        let g_m1 = e.clone() * theta.clone();
        let g_0 = e.clone() * theta_u.clone() * eu.clone() + e2.clone() * theta.clone() * eu.clone() + e.clone() * d(&eu)?;
        let g_1 = e3 * theta.clone() * eu_sq.clone()
            + e2.clone() * theta * euu.clone()
            + e2.clone() * theta_u.clone() * eu_sq.clone()
            + e2.clone() * eu.clone() * theta_u.clone() * eu.clone()
            + e.clone() * theta_u * euu.clone()
            + e.clone() * w * eu_sq.clone()
            + e * d(&euu)?
            + e2 * d(&eu_sq)?;
        Ok(GValued::new(g_m1, g_0, g_1))
    }

    /// Evaluates at the point `e = 1, e2 = 0` of the fibre; differentials
    /// are kept.
    pub fn at_identity_frame(&self, a: &Expr) -> Result<Expr> {
        a.substitute(&|g| {
            if *g == self.e {
                Some(Expr::one())
            } else if *g == self.e2 {
                Some(Expr::zero())
            } else {
                None
            }
        })
    }

    /// Pulls back along the constant natural frame field: `e = 1, e2 = 0`
    /// and `de = de2 = 0`.
    pub fn at_natural_frame(&self, a: &Expr) -> Result<Expr> {
        let a = self.at_identity_frame(a)?;
        a.substitute(&|g| if *g == self.de || *g == self.de2 { Some(Expr::zero()) } else { None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solder_forms_at_the_natural_frame() {
        let fb = FrameBundle::new().unwrap();
        let (t, tu) = fb.solder_forms();
        assert_eq!(fb.at_natural_frame(&t).unwrap(), Expr::gen(&fb.dx));
        assert_eq!(fb.at_identity_frame(&tu).unwrap(), Expr::gen(&fb.de));
        assert!(fb.at_natural_frame(&tu).unwrap().is_zero());
        assert_eq!(tu.to_string(), "-e^-2*e2*dx + e^-1*de");
    }

    #[test]
    fn solder_forms_are_torsion_free() {
        let fb = FrameBundle::new().unwrap();
        let omega = fb.connection();
        assert!(torsion(&omega, fb.d()).unwrap().is_zero());
        let k = curvature(&omega, fb.d()).unwrap();
        assert!(k.m1.is_zero());
    }

    #[test]
    fn gl0_self_bracket_vanishes_in_one_dimension() {
        let fb = FrameBundle::new().unwrap();
        let omega = fb.connection();
        let zero_part = GValued::new(Expr::zero(), omega.c0.clone(), Expr::zero());
        assert!(bracket(&zero_part, &zero_part).unwrap().is_zero());
        let k = curvature(&omega, fb.d()).unwrap();
        let cross = bracket(&GValued::new(omega.m1.clone(), Expr::zero(), Expr::zero()), &GValued::new(Expr::zero(), Expr::zero(), omega.c1.clone()))
            .unwrap()
            .scale(&rat(2, 1));
        assert_eq!(k.c0, fb.d().apply(&omega.c0).unwrap() + cross.c0.scale(&rat(1, 2)));
    }

    #[test]
    fn gauge_transform_by_identity() {
        let fb = FrameBundle::new().unwrap();
        let omega = fb.connection();
        assert_eq!(gauge_transform(&omega, &Jet3::identity(1), fb.d()).unwrap(), omega);
    }

    #[test]
    fn maurer_cartan_two_ways() {
        let fb = FrameBundle::new().unwrap();
        let g = fb.frame_jet();
        assert_eq!(maurer_cartan(&g, fb.d()).unwrap(), maurer_cartan_right(&g, fb.d()).unwrap());
    }

    #[test]
    fn christoffel_components() {
        let fb = FrameBundle::new().unwrap();
        let gamma = fb.gamma().unwrap();
        assert_eq!(gamma.m1, Expr::gen(&fb.dx));
        assert!(gamma.c0.is_zero());
        assert_eq!(gamma, fb.gamma_components().unwrap());
    }

    #[test]
    fn curvature_is_covariant() {
        let fb = FrameBundle::new().unwrap();
        let k_gamma = curvature(&fb.gamma().unwrap(), fb.d()).unwrap();
        let k_omega = curvature(&fb.connection(), fb.d()).unwrap();
        assert!(!k_omega.is_zero());
        assert_eq!(k_gamma, adjoint_action(&fb.lift().unwrap(), &k_omega).unwrap());
    }

    #[test]
    fn gauge_transforms_compose() {
        let fb = FrameBundle::new().unwrap();
        let jet = |names: [&str; 3]| {
            let a = Gen::build(names[0]).invertible().field().build().unwrap();
            let b = Gen::build(names[1]).field().build().unwrap();
            let c = Gen::build(names[2]).field().build().unwrap();
            Jet3::scalar(Expr::zero(), Expr::gen(&a), Expr::gen(&b), Expr::gen(&c))
        };
        let g = jet(["ct_g1", "ct_g2", "ct_g3"]);
        let h = jet(["ct_h1", "ct_h2", "ct_h3"]);
        let omega = fb.connection();
        let twice = gauge_transform(&gauge_transform(&omega, &g, fb.d()).unwrap(), &h, fb.d()).unwrap();
        let once = gauge_transform(&omega, &crate::jet::compose3(&h, &g).unwrap(), fb.d()).unwrap();
        assert_eq!(twice, once);
    }
}
