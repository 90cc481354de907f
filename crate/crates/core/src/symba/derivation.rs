use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::expr::Expr;
use super::gen::{Bidegree, Gen};
use crate::error::{Error, Result};
use crate::scalar::rat;

type Rule = dyn Fn(&Gen) -> Result<Expr> + Send + Sync;

/// A graded derivation of the symbolic algebra, given by its values on
/// generators.
///
/// The value on a product follows the graded Leibniz rule
/// `D(ab) = D(a) b + (-1)^{|D||a|} a D(b)`. Generator images are computed
/// once and cached.
#[derive(Clone)]
pub struct Derivation {
    name: String,
    shift: Bidegree,
    rule: Arc<Rule>,
    cache: Arc<Mutex<HashMap<Gen, Expr>>>,
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({} {})", self.name, self.shift)
    }
}

impl Derivation {
    pub fn new(name: &str, shift: Bidegree, rule: impl Fn(&Gen) -> Result<Expr> + Send + Sync + 'static) -> Self {
        Self { name: name.to_string(), shift, rule: Arc::new(rule), cache: Default::default() }
    }

    /// Derivation with a fixed table of generator images; any other
    /// generator is an error.
    pub fn from_table(name: &str, shift: Bidegree, table: Vec<(Gen, Expr)>) -> Self {
        let table: HashMap<Gen, Expr> = table.into_iter().collect();
        let label = name.to_string();
        Self::new(name, shift, move |g| {
            table.get(g).cloned().ok_or_else(|| Error::Algebra(format!("{label} is undefined on {g}")))
        })
    }

    /// The total derivative `d/dx` along the base: moves each field
    /// generator one step up its jet tower and kills everything else.
    pub fn total_x() -> Self {
        Self::new("dx/dx", Bidegree::ZERO, |g| if g.is_field() { Ok(Expr::gen(&g.prolong()?)) } else { Ok(Expr::zero()) })
    }

    /// The base de Rham differential `d = dx * d/dx`.
    pub fn base_de_rham(dx: &Gen) -> Self {
        let dx = dx.clone();
        Self::new("d", Bidegree::new(1, 0), move |g| {
            if g.is_field() {
                Ok(Expr::gen(&dx) * Expr::gen(&g.prolong()?))
            } else {
                Ok(Expr::zero())
            }
        })
    }

    /// Derivation commuting with `d/dx`: `base` gives the images of
    /// order-zero generators, and prolonged generators get
    /// `D(g^(k)) = d/dx D(g^(k-1))`.
    pub fn commuting_with_x(
        name: &str,
        shift: Bidegree,
        base: impl Fn(&Gen) -> Result<Expr> + Send + Sync + 'static,
    ) -> Self {
        let dxdx = Derivation::total_x();
        let base: Arc<Rule> = Arc::new(base);
        Self::new(name, shift, move |g| {
            let mut image = base(&g.tower_base())?;
            for _ in 0..g.jet_order() {
                image = dxdx.apply(&image)?;
            }
            Ok(image)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shift(&self) -> Bidegree {
        self.shift
    }

    pub fn parity(&self) -> u8 {
        self.shift.parity()
    }

    /// Image of a single generator.
    pub fn on_gen(&self, g: &Gen) -> Result<Expr> {
        if let Some(v) = self.cache.lock().expect("derivation cache poisoned").get(g) {
            return Ok(v.clone());
        }
        let v = (self.rule)(g)?;
        if let Some(deg) = v.degree() {
            if deg != g.degree() + self.shift {
                return Err(Error::Algebra(format!(
                    "{} sends {g} of bidegree {} to bidegree {deg}",
                    self.name,
                    g.degree()
                )));
            }
        }
        self.cache.lock().expect("derivation cache poisoned").insert(g.clone(), v.clone());
        Ok(v)
    }

    pub fn apply(&self, a: &Expr) -> Result<Expr> {
        let mut out = Expr::zero();
        for (m, c) in a.terms() {
            let factors = m.factors();
            for (i, (g, k)) in factors.iter().enumerate() {
                let dg = self.on_gen(g)?;
                if dg.is_zero() {
                    continue;
                }
                // D(g^k) = k g^(k-1) D(g) for even g; odd g has k = 1
                let dpow = if g.is_odd() {
                    dg
                } else {
                    Expr::gen_pow(g, k - 1)?.scale(&rat(i64::from(*k), 1)) * dg
                };
                let mut prefix = Expr::constant(c.clone());
                for (h, j) in &factors[..i] {
                    prefix = prefix * Expr::gen_pow(h, *j)?;
                }
                let mut suffix = Expr::one();
                for (h, j) in &factors[i + 1..] {
                    suffix = suffix * Expr::gen_pow(h, *j)?;
                }
                let prefix_parity = prefix.parity().unwrap_or(0);
                let mut term = prefix * dpow * suffix;
                if self.parity() * prefix_parity == 1 {
                    term = -term;
                }
                out = out.try_add(&term)?;
            }
        }
        Ok(out)
    }

    /// `D^k a`.
    pub fn apply_n(&self, a: &Expr, k: u32) -> Result<Expr> {
        (0..k).try_fold(a.clone(), |acc, _| self.apply(&acc))
    }
}

/// Graded commutator `D1 D2 - (-1)^{|D1||D2|} D2 D1` evaluated on `a`.
pub fn graded_commutator(d1: &Derivation, d2: &Derivation, a: &Expr) -> Result<Expr> {
    let lhs = d1.apply(&d2.apply(a)?)?;
    let rhs = d2.apply(&d1.apply(a)?)?;
    if d1.parity() * d2.parity() == 1 {
        lhs.try_add(&rhs)
    } else {
        lhs.try_add(&-rhs)
    }
}

/// A basis element whose graded commutator did not vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub input: Expr,
    pub value: Expr,
}

/// Evaluates the graded commutator of `d1` and `d2` on every basis element
/// and on its first `prolong_to` total x-derivatives, returning the
/// non-vanishing results.
pub fn compose_check(d1: &Derivation, d2: &Derivation, basis: &[Expr], prolong_to: u32) -> Result<Vec<Residual>> {
    let dxdx = Derivation::total_x();
    let mut out = Vec::new();
    for b in basis {
        let mut input = b.clone();
        for k in 0..=prolong_to {
            if k > 0 {
                input = dxdx.apply(&input)?;
            }
            let value = graded_commutator(d1, d2, &input)?;
            if !value.is_zero() {
                out.push(Residual { input: input.clone(), value });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differential_of_an_inverse() {
        let x = Gen::build("dt_x").build().unwrap();
        let e = Gen::build("dt_e").invertible().build().unwrap();
        let dx = Gen::build("dt_dx").form(1).build().unwrap();
        let de = Gen::build("dt_de").form(1).build().unwrap();
        let d = Derivation::from_table(
            "d",
            Bidegree::new(1, 0),
            vec![
                (x.clone(), Expr::gen(&dx)),
                (e.clone(), Expr::gen(&de)),
                (dx.clone(), Expr::zero()),
                (de.clone(), Expr::zero()),
            ],
        );
        assert_eq!(d.apply(&Expr::gen(&x)).unwrap(), Expr::gen(&dx));
        let inv = Expr::gen_pow(&e, -1).unwrap();
        assert_eq!(d.apply(&inv).unwrap(), -(Expr::gen_pow(&e, -2).unwrap() * Expr::gen(&de)));
        let basis = [Expr::gen(&x), Expr::gen(&e), inv];
        assert!(compose_check(&d, &d, &basis, 0).unwrap().is_empty());
        let y = Gen::build("dt_y").build().unwrap();
        assert!(d.apply(&Expr::gen(&y)).is_err());
    }

    #[test]
    fn jet_towers_grow_on_demand() {
        let xi = Gen::build("dt_xi").ghost(1).field().build().unwrap();
        let dxdx = Derivation::total_x();
        let once = dxdx.apply(&Expr::gen(&xi)).unwrap();
        assert_eq!(once, Expr::gen(&xi.prolong().unwrap()));
        assert_eq!(dxdx.apply_n(&Expr::gen(&xi), 5).unwrap(), Expr::gen(&xi.at_order(5).unwrap()));
    }

    #[test]
    fn base_differential_squares_to_zero() {
        let dx = Gen::build("dt_bdx").form(1).build().unwrap();
        let f = Gen::build("dt_f").invertible().field().build().unwrap();
        let xi = Gen::build("dt_bxi").ghost(1).field().build().unwrap();
        let d = Derivation::base_de_rham(&dx);
        let basis = [Expr::gen(&f), Expr::gen(&xi), Expr::gen_pow(&f, -2).unwrap() * Expr::gen(&xi)];
        assert!(compose_check(&d, &d, &basis, 3).unwrap().is_empty());
    }
}
