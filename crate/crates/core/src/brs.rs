//! BRS differential algebra of a projective frame field on the line.
//!
//! The ghost vector field `xi` is an odd field with ghost number one. The
//! BRS operator `s` is defined on generators only (the variation of the
//! frame field under diffeomorphisms and `s xi = xi xi'`) and commutes with
//! `d/dx`; everything else in this module is a consequence that is checked,
//! not assumed.

use crate::cartan::{adjoint_action, bracket, gauge_transform, maurer_cartan, GValued};
use crate::error::Result;
use crate::jet::Jet3;
use crate::projective::{lift_jet, FrameField, ProjFrame2};
use crate::report::Check;
use crate::scalar::rat;
use crate::symba::{compose_check, Bidegree, Derivation, Expr, Gen, Mixed};

/// Pulled-back frame field with its ghost and BRS operator.
#[derive(Clone, Debug)]
pub struct BrsContext {
    pub field: FrameField,
    pub xi: Gen,
    s: Derivation,
    interior: Derivation,
}

impl BrsContext {
    pub fn new() -> Result<Self> {
        let field = FrameField::new()?;
        let xi = Gen::build("xi").ghost(1).field().build()?;
        let s = lifted_frame_variation(&field, &xi);
        let interior = {
            let (dx, xi) = (field.dx.clone(), xi.clone());
            Derivation::new("i_xi", Bidegree::new(-1, 1), move |g| Ok(if *g == dx { Expr::gen(&xi) } else { Expr::zero() }))
        };
        Ok(Self { field, xi, s, interior })
    }

    /// The BRS operator.
    pub fn s(&self) -> &Derivation {
        &self.s
    }

    pub fn d(&self) -> &Derivation {
        self.field.d()
    }

    /// Interior product with the ghost vector field: `dx -> xi`.
    pub fn interior(&self) -> &Derivation {
        &self.interior
    }

    /// `d^k xi / dx^k`.
    pub fn xi_k(&self, k: u32) -> Expr {
        Expr::gen(&self.xi.at_order(k).expect("xi is a field"))
    }

    fn dx(&self) -> Expr {
        Expr::gen(&self.field.dx)
    }

    fn dxdx(&self, a: &Expr) -> Result<Expr> {
        self.field.dxdx().apply(a)
    }

    /// Order-zero generators of the algebra.
    pub fn generators(&self) -> Vec<Expr> {
        let f = &self.field;
        vec![Expr::gen(&f.eu), f.eu_pow(-1), Expr::gen(&f.euu), Expr::gen(&f.w), Expr::gen(&self.xi), self.dx()]
    }

    /// Coefficients `(theta^u_,x, theta^u_u,x, omega^u_uu,x)` of the
    /// pulled-back connection: `(E, E^-1 F - E^-1 E', W)`.
    pub fn connection_coefficients(&self) -> Result<GValued> {
        let f = &self.field;
        let (ex, _) = f.frame();
        let theta_u = ex.clone() * Expr::gen(&f.euu) + Expr::gen(&f.eu) * self.dxdx(&ex)?;
        Ok(GValued::new(Expr::gen(&f.eu), theta_u, Expr::gen(&f.w)))
    }

    /// The pulled-back connection `e2^* omega`.
    pub fn connection(&self) -> Result<GValued> {
        Ok(self.connection_coefficients()?.map(|c| c.clone() * self.dx()))
    }

    /// The ghost `gamma = omega(xi)`, componentwise `coefficient * xi`.
    pub fn ghost_from_vector(&self) -> Result<GValued> {
        Ok(self.connection_coefficients()?.map(|c| c.clone() * Expr::gen(&self.xi)))
    }

    /// `gamma` as `i_xi` applied to the connection.
    pub fn ghost_by_interior(&self) -> Result<GValued> {
        self.connection()?.derive(&self.interior)
    }

    /// The frame field as a projective 2-frame `(0, E^-1, -F E^-3)`.
    pub fn frame(&self) -> ProjFrame2<Expr> {
        let (e, e2) = self.field.frame();
        ProjFrame2 { x: Expr::zero(), e, e2 }
    }

    pub fn lift(&self) -> Result<Jet3<Expr>> {
        lift_jet(&self.frame().to_jet())
    }

    /// `Gamma = Ad(l(e2)) omega + e2 . d e2^-1` on the line.
    pub fn gamma(&self) -> Result<GValued> {
        gauge_transform(&self.connection()?, &self.lift()?, self.d())
    }

    /// `(Gamma^x_,x, Gamma^x_x,x, Gamma^x_xx,x)`: the coefficients of `dx`.
    pub fn gamma_coefficients(&self) -> Result<GValued> {
        self.gamma()?.try_map(|c| c.right_quotient(&self.field.dx))
    }

    /// The residual ghost `c = Ad(l(e2)) gamma + e2 . s e2^-1`.
    pub fn residual_ghost(&self) -> Result<GValued> {
        Ok(adjoint_action(&self.lift()?, &self.ghost_from_vector()?)? + maurer_cartan(&self.frame().to_jet(), &self.s)?)
    }

    /// The three defining combinations of the residual ghost, written out
    /// with frame coordinates and `s e^u_x`, `s e^u_xx`.
    pub fn residual_ghost_components(&self) -> Result<GValued> {
        let f = &self.field;
        let (ex, exx) = f.frame();
        let (eux, euxx) = (Expr::gen(&f.eu), Expr::gen(&f.euu));
        let g = self.ghost_from_vector()?;
        let s_eux = self.s.apply(&eux)?;
        let s_euxx = self.s.apply(&euxx)?;
        let cx = ex.clone() * g.m1.clone();
        let cxx = exx.clone() * eux.clone() * g.m1.clone() + g.c0.clone() + ex.clone() * s_eux.clone();
        let cxxx = (euxx.clone() * euxx * ex.clone().pow(3)).scale(&rat(1, 2)) * g.m1.clone()
            + exx.clone() * eux.clone() * eux.clone() * g.c0
            + g.c1 * eux.clone()
            + (exx * eux * s_eux).scale(&rat(2, 1))
            + ex * s_euxx;
        Ok(GValued::new(cx, cxx, cxxx))
    }
}

/// The BRS operator on a frame field: `s e^u_x = (e^u_x xi)'`,
/// `s e^u_xx = e^u_xx' xi + 2 e^u_xx xi' + e^u_x xi''`,
/// `s W = (W xi)'`, `s xi = xi xi'`, `s dx = 0`, extended to jet towers by
/// commuting with `d/dx`.
pub fn lifted_frame_variation(field: &FrameField, xi: &Gen) -> Derivation {
    let (e, f, w, xi, dxdx) = (field.eu.clone(), field.euu.clone(), field.w.clone(), xi.clone(), Derivation::total_x());
    Derivation::commuting_with_x("s", Bidegree::new(0, 1), move |g| {
        let x0 = Expr::gen(&xi);
        let x1 = dxdx.apply(&x0)?;
        let x2 = dxdx.apply(&x1)?;
        if *g == e || *g == w {
            dxdx.apply(&(Expr::gen(g) * x0))
        } else if *g == f {
            let fe = Expr::gen(&f);
            Ok(dxdx.apply(&fe)? * x0 + (fe * x1).scale(&rat(2, 1)) + Expr::gen(&e) * x2)
        } else if *g == xi {
            Ok(x0 * x1)
        } else {
            Ok(Expr::zero())
        }
    })
}

/// `s omega = -d gamma - [omega, gamma]`.
pub fn brs_on_connection(omega: &GValued, gamma: &GValued, d: &Derivation) -> Result<GValued> {
    Ok(-gamma.derive(d)? - bracket(omega, gamma)?)
}

const PARTS: [&str; 3] = ["-1", "0", "1"];

fn componentwise(id: &str, reference: &str, lhs: &GValued, rhs: &GValued) -> Vec<Check> {
    let diff = lhs.clone() - rhs.clone();
    diff.parts().iter().zip(PARTS).map(|(r, k)| Check::expr(&format!("{id}[{k}]"), reference, r)).collect()
}

/// `s^2 = 0` and `ds + sd = 0` on the generators and their derivatives.
pub fn nilpotency_checks(ctx: &BrsContext, prolong_to: u32) -> Result<Vec<Check>> {
    let basis = ctx.generators();
    let render = |r: Vec<crate::symba::Residual>| r.first().map(|x| x.value.clone()).unwrap_or_default();
    Ok(vec![
        Check::expr("s^2 = 0", "eq. (11)", &render(compose_check(ctx.s(), ctx.s(), &basis, prolong_to)?))
            .with_note(&format!("generators to jet order {prolong_to}")),
        Check::expr("ds + sd = 0", "eq. (11)", &render(compose_check(ctx.d(), ctx.s(), &basis, prolong_to)?))
            .with_note(&format!("generators to jet order {prolong_to}")),
        Check::expr("d^2 = 0", "eq. (11)", &render(compose_check(ctx.d(), ctx.d(), &basis, prolong_to)?)),
    ])
}

/// The ghost of a vector field and its cross-check through `i_xi`.
pub fn ghost_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let f = &ctx.field;
    let (ex, _) = f.frame();
    let xi = Expr::gen(&ctx.xi);
    let g = ctx.ghost_from_vector()?;
    let chi = Expr::gen(&f.euu) * ex.clone();
    let displayed = GValued::new(
        Expr::gen(&f.eu) * xi.clone(),
        (chi + Expr::gen(&f.eu) * ctx.dxdx(&ex)?) * xi.clone(),
        Expr::gen(&f.w) * xi,
    );
    let mut out = componentwise("gamma = omega(xi)", "eq. (14)", &g, &displayed);
    out.extend(componentwise("gamma = i_xi omega", "eq. (14)", &g, &ctx.ghost_by_interior()?));
    Ok(out)
}

/// `s omega = -d gamma - [omega, gamma] = d/dx(coefficient xi) dx = L_xi omega`.
pub fn lie_derivative_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let omega = ctx.connection()?;
    let gamma = ctx.ghost_from_vector()?;
    let s_omega = omega.derive(ctx.s())?;
    let rhs = brs_on_connection(&omega, &gamma, ctx.d())?;
    let coeffs = ctx.connection_coefficients()?;
    let s_coeffs = coeffs.derive(ctx.s())?;
    let transport = coeffs.try_map(|c| ctx.dxdx(&(c.clone() * Expr::gen(&ctx.xi))))?;
    let lie = omega.derive(ctx.d())?.derive(ctx.interior())? - omega.derive(ctx.interior())?.derive(ctx.d())?;
    let mut out = componentwise("s omega = -d gamma - [omega, gamma]", "eq. (15)", &s_omega, &rhs);
    out.extend(componentwise("s coefficient = (coefficient xi)'", "eq. (15)", &s_coeffs, &transport));
    out.extend(componentwise("s omega = (i_xi d - d i_xi) omega", "eq. (15)", &s_omega, &lie));
    Ok(out)
}

/// The frame variations: the first display and the derivation of the second
/// one from the variations of the connection coefficients.
pub fn frame_variation_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let f = &ctx.field;
    let s = ctx.s();
    let (eux, euxx) = (Expr::gen(&f.eu), Expr::gen(&f.euu));
    let (ex, _) = f.frame();
    let xi = Expr::gen(&ctx.xi);
    let first = s.apply(&eux)? - ctx.dxdx(&(eux.clone() * xi.clone()))?;
    // variations of the coefficients as they come out of the connection
    let theta_u = ctx.connection_coefficients()?.c0;
    let s_theta_u = ctx.dxdx(&(theta_u * xi.clone()))?;
    let s_eux = ctx.dxdx(&(eux.clone() * xi.clone()))?;
    let s_ex = -(ex.clone() * ex.clone() * s_eux.clone());
    let middle = eux.clone() * s_theta_u
        + ex.clone() * euxx.clone() * s_eux.clone()
        + ex * ctx.dxdx(&eux)? * s_eux
        - eux.clone() * eux.clone() * ctx.dxdx(&s_ex)?;
    let last = ctx.dxdx(&euxx)? * xi.clone() + (euxx.clone() * ctx.xi_k(1)).scale(&rat(2, 1)) + eux * ctx.xi_k(2);
    Ok(vec![
        Check::expr("s e^u_x = (e^u_x xi)'", "eq. (16)", &first),
        Check::expr("s e^u_xx from s theta", "eq. (16)", &(middle - last.clone())),
        Check::expr("s e^u_xx closed form", "eq. (16)", &(s.apply(&euxx)? - last)),
    ])
}

/// The residual ghosts evaluate to `(xi, xi', xi'' + Gamma xi)`.
pub fn residual_ghost_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let literal = ctx.residual_ghost_components()?;
    let gamma = ctx.field.gamma_coefficient()?;
    let expected = GValued::new(ctx.xi_k(0), ctx.xi_k(1), ctx.xi_k(2) + gamma * ctx.xi_k(0));
    let mut out = componentwise("c evaluated", "eq. (17)", &literal, &expected);
    out.extend(componentwise("c = Ad(l(e2)) gamma + e2 . s e2^-1", "eq. (13)", &ctx.residual_ghost()?, &literal));
    Ok(out)
}

/// The local connection on the line, `Gamma = (1, 0, Gamma^x_xx,x) dx`.
pub fn gamma_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let coeffs = ctx.gamma_coefficients()?;
    let expected = GValued::new(Expr::one(), Expr::zero(), ctx.field.gamma_coefficient()?);
    Ok(componentwise("Gamma coefficients", "eq. (10)", &coeffs, &expected))
}

/// Transformation of the projective connection under `s`.
pub fn virasoro_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let s = ctx.s();
    let coeffs = ctx.gamma_coefficients()?;
    let g = coeffs.c1.clone();
    let dg = ctx.dxdx(&g)?;
    let xi = ctx.xi_k(0);
    let expected = ctx.xi_k(3) + xi.clone() * dg.clone() + (ctx.xi_k(1) * g.clone()).scale(&rat(2, 1));
    let c = ctx.residual_ghost_components()?.m1;
    let c1 = ctx.dxdx(&c)?;
    let c3 = ctx.field.dxdx().apply_n(&c, 3)?;
    let in_c = c3 + c.clone() * dg + (c1 * g.clone()).scale(&rat(2, 1));
    let s_c = s.apply(&c)? - c.clone() * ctx.dxdx(&c)?;
    Ok(vec![
        Check::expr("s Gamma^x_,x = 0", "eq. (18)", &s.apply(&coeffs.m1)?),
        Check::expr("s Gamma^x_x,x = 0", "eq. (18)", &s.apply(&coeffs.c0)?),
        Check::expr("s Gamma^x_xx,x", "eq. (18)", &(s.apply(&g)? - expected)),
        Check::expr("s Gamma^x_xx,x in terms of c", "eq. (19)", &(s.apply(&g)? - in_c)),
        Check::expr("s c^x = c^x c^x'", "eq. (19)", &s_c),
        Check::expr("s^2 Gamma^x_xx,x = 0", "eq. (19)", &s.apply_n(&g, 2)?),
    ])
}

/// `(d + s)(omega + gamma) + 1/2 [omega + gamma, omega + gamma] =
/// d omega + 1/2 [omega, omega]`, sector by sector.
pub fn russian_formula_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let omega = ctx.connection()?.map(|c| Mixed::from(c.clone()));
    let gamma = ctx.ghost_from_vector()?.map(|c| Mixed::from(c.clone()));
    let both = omega.clone() + gamma;
    let half = rat(1, 2);
    let lhs = both.derive(ctx.d())? + both.derive(ctx.s())? + bracket(&both, &both)?.scale(&half);
    let rhs = omega.derive(ctx.d())? + bracket(&omega, &omega)?.scale(&half);
    let diff = lhs - rhs;
    let mut out = Vec::new();
    for (form, ghost) in [(2, 0), (1, 1), (0, 2)] {
        let b = Bidegree::new(form, ghost);
        let residuals: Vec<Expr> = diff.parts().iter().map(|m| m.sector(b)).collect();
        out.push(Check::exprs(&format!("Russian formula sector {b}"), "eq. (12)", &residuals));
    }
    let stray: Vec<Expr> = diff
        .parts()
        .iter()
        .flat_map(|m| m.sectors().map(|(_, e)| e.clone()).collect::<Vec<_>>())
        .collect();
    out.push(Check::exprs("Russian formula, all sectors", "eq. (12)", &stray));
    Ok(out)
}

/// `s Gamma = -dc - [Gamma, c]` and `s c = -1/2 [c, c]` for the projective
/// parametrization.
pub fn projective_parametrization_checks(ctx: &BrsContext) -> Result<Vec<Check>> {
    let gamma = ctx.gamma()?;
    let c = ctx.residual_ghost()?;
    let s_gamma = gamma.derive(ctx.s())?;
    let mut out = componentwise("s Gamma = -dc - [Gamma, c]", "eq. (13)", &s_gamma, &brs_on_connection(&gamma, &c, ctx.d())?);
    let s_c = c.derive(ctx.s())?;
    out.extend(componentwise("s c = -1/2 [c, c]", "eq. (13)", &s_c, &-bracket(&c, &c)?.scale(&rat(1, 2))));
    Ok(out)
}

/// Every check of this module.
pub fn all_checks(prolong_to: u32) -> Result<Vec<Check>> {
    let ctx = BrsContext::new()?;
    let mut out = nilpotency_checks(&ctx, prolong_to)?;
    out.extend(ghost_checks(&ctx)?);
    out.extend(lie_derivative_checks(&ctx)?);
    out.extend(frame_variation_checks(&ctx)?);
    out.extend(gamma_checks(&ctx)?);
    out.extend(residual_ghost_checks(&ctx)?);
    out.extend(virasoro_checks(&ctx)?);
    out.extend(russian_formula_checks(&ctx)?);
    out.extend(projective_parametrization_checks(&ctx)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds() {
        for c in all_checks(4).unwrap() {
            assert!(c.passed, "{} {}: {}", c.reference, c.id, c.residual);
        }
    }

    #[test]
    fn ghost_squares() {
        let ctx = BrsContext::new().unwrap();
        let xi = Expr::gen(&ctx.xi);
        assert!(ctx.s().apply_n(&xi, 2).unwrap().is_zero());
        assert!((ctx.xi_k(3) * ctx.xi_k(3)).is_zero());
        assert!(brs_on_connection(&ctx.connection().unwrap(), &GValued::zero(), ctx.d()).unwrap().is_zero());
    }

    #[test]
    fn flat_frame_values() {
        let ctx = BrsContext::new().unwrap();
        let f = &ctx.field;
        // constant natural frame: E = 1, F = 0, W = 0
        let flat = |a: &Expr| {
            a.substitute(&|g| {
                if g.tower_base() == f.eu {
                    Some(if g.jet_order() == 0 { Expr::one() } else { Expr::zero() })
                } else if g.tower_base() == f.euu || g.tower_base() == f.w {
                    Some(Expr::zero())
                } else {
                    None
                }
            })
            .unwrap()
        };
        let g = ctx.gamma_coefficients().unwrap().c1;
        assert_eq!(flat(&ctx.s().apply(&g).unwrap()), ctx.xi_k(3));
        let gh = ctx.ghost_from_vector().unwrap();
        assert_eq!(flat(&gh.m1), ctx.xi_k(0));
        assert!(flat(&gh.c0).is_zero());
    }
}
