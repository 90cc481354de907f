//! The projective line: projective frames, their third-order lift, the
//! projective connection and the Schwarzian derivative.
//!
//! Frames are written with derivatives, `(x, e, e2) = (f(0), f'(0), f''(0))`
//! for the frame map `f`, as are coordinate changes `phi`. Conversions to the
//! stored coefficients of [`Jet2`] and [`Jet3`] go through
//! [`crate::convention`].

use crate::cartan::FrameBundle;
use crate::convention::{coeff_from_derivative, derivative_from_coeff};
use crate::error::{Error, Result};
use crate::jet::{Jet2, Jet3};
use crate::scalar::{rat, Rational, Scalar};
use crate::symba::{Derivation, Expr, Gen};

/// A projective 2-frame `(x, e^x_u, e^x_uu)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjFrame2<T = Rational> {
    pub x: T,
    pub e: T,
    pub e2: T,
}

/// A 3-frame `(x, e^x_u, e^x_uu, e^x_uuu)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjFrame3<T = Rational> {
    pub x: T,
    pub e: T,
    pub e2: T,
    pub e3: T,
}

impl<T: Scalar> ProjFrame2<T> {
    pub fn new(x: T, e: T, e2: T) -> Result<Self> {
        if e.try_recip().is_none() {
            return Err(Error::Singular);
        }
        Ok(Self { x, e, e2 })
    }

    pub fn to_jet(&self) -> Jet2<T> {
        Jet2::scalar(self.x.clone(), self.e.clone(), coeff_from_derivative(2, &self.e2))
    }

    pub fn from_jet(j: &Jet2<T>) -> Result<Self> {
        if j.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: j.dim() });
        }
        Self::new(j.base[0].clone(), j.e1[0][0].clone(), derivative_from_coeff(2, j.e2.get(0, &[0, 0])))
    }

    /// `(e^u_x, e^u_xx)`, the derivatives of the inverse map at `x`.
    pub fn inverse(&self) -> Result<(T, T)> {
        let h = crate::jet::inverse2(&self.to_jet())?;
        Ok((h.e1[0][0].clone(), derivative_from_coeff(2, h.e2.get(0, &[0, 0]))))
    }

    /// `chi = e^u_xx e^x_u`.
    pub fn chi(&self) -> Result<T> {
        Ok(self.inverse()?.1 * self.e.clone())
    }
}

impl<T: Scalar> ProjFrame3<T> {
    pub fn to_jet(&self) -> Jet3<T> {
        Jet3::scalar(
            self.x.clone(),
            self.e.clone(),
            coeff_from_derivative(2, &self.e2),
            coeff_from_derivative(3, &self.e3),
        )
    }

    pub fn from_jet(j: &Jet3<T>) -> Result<Self> {
        let low = ProjFrame2::from_jet(&j.jet2)?;
        Ok(Self { x: low.x, e: low.e, e2: low.e2, e3: derivative_from_coeff(3, j.e3.get(0, &[0, 0, 0])) })
    }
}

/// Unique projective lift: `e3 = 3/2 e2^2 / e`.
pub fn lift3<T: Scalar>(f: &ProjFrame2<T>) -> Result<ProjFrame3<T>> {
    let inv = f.e.try_recip().ok_or(Error::Singular)?;
    let e3 = (f.e2.clone() * f.e2.clone() * inv).scale(&rat(3, 2));
    Ok(ProjFrame3 { x: f.x.clone(), e: f.e.clone(), e2: f.e2.clone(), e3 })
}

/// [`lift3`] on stored coefficients, `e3 = e2^2 / e1`.
pub fn lift_jet<T: Scalar>(f: &Jet2<T>) -> Result<Jet3<T>> {
    Ok(lift3(&ProjFrame2::from_jet(f)?)?.to_jet())
}

/// `[[1, b], [0, 1]] . [[a, 0], [c, 1/a]]`, acting on the line by
/// `u -> b + a u / (c u + 1/a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Element {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Sl2Element {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a == rat(0, 1) {
            return Err(Error::Singular);
        }
        Ok(Self { a, b, c })
    }

    /// Product in the isotropy subgroup (`b = 0` on both sides).
    pub fn mul(&self, other: &Sl2Element) -> Result<Sl2Element> {
        if self.b != rat(0, 1) || other.b != rat(0, 1) {
            return Err(Error::NonOriginBase);
        }
        let a = &self.a * &other.a;
        let c = &self.c * &other.a + &other.c / &self.a;
        Sl2Element::new(a, rat(0, 1), c)
    }

    /// 2-jet at the origin, `(a^2, -a^3 c)` in stored coefficients.
    pub fn embed(&self) -> Result<Jet2> {
        Ok(self.mobius_jet()?.truncate())
    }

    /// 3-jet at the origin of `u -> a^2 u / (1 + a c u)`.
    pub fn mobius_jet(&self) -> Result<Jet3> {
        if self.b != rat(0, 1) {
            return Err(Error::NonOriginBase);
        }
        let (a, c) = (&self.a, &self.c);
        let g1 = a * a;
        let ac = a * c;
        Ok(Jet3::scalar(rat(0, 1), g1.clone(), -(&g1 * &ac), &g1 * &ac * &ac))
    }
}

/// Squares of the matrix entries `((g')^{1/2}, -1/2 g'' (g')^{-3/2})`
/// attached to a 2-jet; for an embedded element they are `(a^2, c^2)`.
pub fn matrix_entries_squared(g: &Jet2) -> Result<(Rational, Rational)> {
    let f = ProjFrame2::from_jet(g)?;
    let lower_sq = &f.e2 * &f.e2 / (&f.e * &f.e * &f.e) * rat(1, 4);
    Ok((f.e, lower_sq))
}

/// `f'''/f' - 3/2 (f''/f')^2` from the derivatives.
pub fn schwarzian_of<T: Scalar>(f1: &T, f2: &T, f3: &T) -> Result<T> {
    let inv = f1.try_recip().ok_or(Error::VanishingDerivative)?;
    let ratio = f2.clone() * inv.clone();
    Ok(f3.clone() * inv - (ratio.clone() * ratio).scale(&rat(3, 2)))
}

/// Schwarzian of a one-dimensional 3-jet at its base point.
pub fn schwarzian<T: Scalar>(j: &Jet3<T>) -> Result<T> {
    let f = ProjFrame3::from_jet(j).map_err(|e| match e {
        Error::Singular => Error::VanishingDerivative,
        other => other,
    })?;
    schwarzian_of(&f.e, &f.e2, &f.e3)
}

/// Schwarzian at `point` of the polynomial `sum_k coeffs[k] x^k`.
pub fn schwarzian_poly(coeffs: &[Rational], point: &Rational) -> Result<Rational> {
    let derivative = |k: usize| -> Rational {
        let mut acc = rat(0, 1);
        for (n, c) in coeffs.iter().enumerate().skip(k) {
            let falling = ((n - k + 1)..=n).fold(rat(1, 1), |p, i| p * rat(i as i64, 1));
            acc += c * falling * num_traits::pow(point.clone(), n - k);
        }
        acc
    };
    schwarzian_of(&derivative(1), &derivative(2), &derivative(3))
}

/// Frame coordinates after the coordinate change `x -> phi(x)`, given the
/// derivatives `(phi, phi', phi'')` at `x`:
/// `e -> phi' e` and `e2 -> phi' e2 + phi'' e^2`.
pub fn transform_frame<T: Scalar>(f: &ProjFrame2<T>, phi: &[T; 3]) -> Result<ProjFrame2<T>> {
    if phi[1].try_recip().is_none() {
        return Err(Error::Singular);
    }
    let e = phi[1].clone() * f.e.clone();
    let e2 = phi[1].clone() * f.e2.clone() + phi[2].clone() * f.e.clone() * f.e.clone();
    Ok(ProjFrame2 { x: phi[0].clone(), e, e2 })
}

/// The same transformation computed by composing jets, `j2(phi . f)`.
pub fn transform_frame_by_composition<T: Scalar>(f: &ProjFrame2<T>, phi: &[T; 3]) -> Result<ProjFrame2<T>> {
    let phi_jet = ProjFrame2 { x: phi[0].clone(), e: phi[1].clone(), e2: phi[2].clone() }.to_jet();
    ProjFrame2::from_jet(&crate::jet::compose2(&phi_jet, &f.to_jet().at_origin())?)
}

/// Inverse frame after the coordinate change, by the closed formulas
/// `e^u_x' = (dx/dx') e^u_x` and
/// `e^u_x'x' = (dx/dx')^2 e^u_xx - (dx/dx')^3 phi'' e^u_x`.
pub fn transform_inverse_frame<T: Scalar>(f: &ProjFrame2<T>, phi: &[T; 3]) -> Result<(T, T)> {
    let (eu, euu) = f.inverse()?;
    let r = phi[1].try_recip().ok_or(Error::Singular)?;
    let r2 = r.clone() * r.clone();
    let r3 = r2.clone() * r.clone();
    Ok((r.clone() * eu.clone(), r2 * euu - r3 * phi[2].clone() * eu))
}

/// `Gamma^x_xx = e^u_x omega1 + d chi - 1/2 chi^2 dx` on the frame bundle.
pub fn proj_gamma(fb: &FrameBundle, omega1: &Expr) -> Result<Expr> {
    let (eu, _) = fb.inverse_frame();
    let chi = fb.chi();
    Ok(eu * omega1.clone() + fb.d().apply(&chi)? - (chi.clone() * chi * Expr::gen(&fb.dx)).scale(&rat(1, 2)))
}

/// Symbolic coordinate change: the field generator `phi` stands for
/// `dx'/dx`, with `phi'`, `phi''`, ... its derivatives.
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    pub phi: Gen,
}

impl CoordinateChange {
    pub fn new() -> Result<Self> {
        Ok(Self { phi: Gen::build("phi").invertible().field().build()? })
    }

    /// `d^k x' / dx^k` for `k >= 1`.
    pub fn derivative(&self, k: u32) -> Result<Expr> {
        if k == 0 {
            return Err(Error::Algebra("the coordinate itself is not part of the tower".into()));
        }
        Ok(Expr::gen(&self.phi.at_order(k - 1)?))
    }

    pub fn schwarzian(&self) -> Result<Expr> {
        schwarzian_of(&self.derivative(1)?, &self.derivative(2)?, &self.derivative(3)?)
    }

    /// Rewrites a frame-bundle expression in the primed coordinates: frames
    /// by [`transform_frame`], `dx' = phi' dx`, differentials recomputed, and
    /// the `gl(1)` form `w` left unchanged.
    pub fn transform(&self, fb: &FrameBundle, a: &Expr) -> Result<Expr> {
        let p1 = self.derivative(1)?;
        let p2 = self.derivative(2)?;
        let frame = ProjFrame2 { x: Expr::gen(&fb.x), e: Expr::gen(&fb.e), e2: Expr::gen(&fb.e2) };
        let moved = transform_frame(&frame, &[Expr::gen(&fb.x), p1.clone(), p2])?;
        let de = fb.d().apply(&moved.e)?;
        let de2 = fb.d().apply(&moved.e2)?;
        let dx = p1 * Expr::gen(&fb.dx);
        a.substitute(&|g| {
            if *g == fb.e {
                Some(moved.e.clone())
            } else if *g == fb.e2 {
                Some(moved.e2.clone())
            } else if *g == fb.de {
                Some(de.clone())
            } else if *g == fb.de2 {
                Some(de2.clone())
            } else if *g == fb.dx {
                Some(dx.clone())
            } else {
                None
            }
        })
    }

    /// `Gamma^x_xx - phi' Gamma^x'_x'x' - S(phi) dx`, which vanishes.
    pub fn gamma_law_residual(&self, fb: &FrameBundle) -> Result<Expr> {
        let gamma = proj_gamma(fb, &Expr::gen(&fb.w))?;
        let primed = self.transform(fb, &gamma)?;
        Ok(gamma - self.derivative(1)? * primed - self.schwarzian()? * Expr::gen(&fb.dx))
    }

    /// `chi - phi' chi' - phi''/phi'`, which vanishes: `chi` picks up the
    /// inhomogeneous term of an affine connection.
    pub fn chi_law_residual(&self, fb: &FrameBundle) -> Result<Expr> {
        let chi = fb.chi();
        let primed = self.transform(fb, &chi)?;
        let p1 = self.derivative(1)?;
        let affine = self.derivative(2)? * p1.recip().ok_or(Error::Singular)?;
        Ok(chi - p1 * primed - affine)
    }
}

/// A frame field along the line, written through its inverse: `E = e^u_x`
/// (invertible) and `F = e^u_xx`, together with the `gl(1)` coefficient
/// `W = omega^u_uu,x`. All three are fields with jet towers; `d = dx d/dx`.
#[derive(Clone, Debug)]
pub struct FrameField {
    pub dx: Gen,
    pub eu: Gen,
    pub euu: Gen,
    pub w: Gen,
    d: Derivation,
    dxdx: Derivation,
}

impl FrameField {
    pub fn new() -> Result<Self> {
        let dx = Gen::build("dx").form(1).build()?;
        Ok(Self {
            eu: Gen::build("E").invertible().field().build()?,
            euu: Gen::build("F").field().build()?,
            w: Gen::build("W").field().build()?,
            d: Derivation::base_de_rham(&dx),
            dxdx: Derivation::total_x(),
            dx,
        })
    }

    pub fn d(&self) -> &Derivation {
        &self.d
    }

    /// The total derivative `d/dx`.
    pub fn dxdx(&self) -> &Derivation {
        &self.dxdx
    }

    pub fn eu_pow(&self, k: i32) -> Expr {
        Expr::gen_pow(&self.eu, k).expect("E is invertible")
    }

    /// `(e^x_u, e^x_uu) = (E^-1, -F E^-3)`.
    pub fn frame(&self) -> (Expr, Expr) {
        (self.eu_pow(-1), -(Expr::gen(&self.euu) * self.eu_pow(-3)))
    }

    /// `chi = e^u_xx e^x_u = F E^-1`.
    pub fn chi(&self) -> Expr {
        Expr::gen(&self.euu) * self.eu_pow(-1)
    }

    /// `Gamma^x_xx,x = E W + chi' - 1/2 chi^2`.
    pub fn gamma_coefficient(&self) -> Result<Expr> {
        let chi = self.chi();
        Ok(Expr::gen(&self.eu) * Expr::gen(&self.w) + self.dxdx.apply(&chi)? - (chi.clone() * chi).scale(&rat(1, 2)))
    }

    /// Pulls a frame-bundle expression back along the frame field.
    pub fn pullback(&self, fb: &FrameBundle, a: &Expr) -> Result<Expr> {
        let (e, e2) = self.frame();
        let de = self.d.apply(&e)?;
        let de2 = self.d.apply(&e2)?;
        let w = Expr::gen(&self.w) * Expr::gen(&self.dx);
        a.substitute(&|g| {
            if *g == fb.e {
                Some(e.clone())
            } else if *g == fb.e2 {
                Some(e2.clone())
            } else if *g == fb.de {
                Some(de.clone())
            } else if *g == fb.de2 {
                Some(de2.clone())
            } else if *g == fb.w {
                Some(w.clone())
            } else if *g == fb.dw {
                Some(Expr::zero())
            } else {
                None
            }
        })
    }
}
