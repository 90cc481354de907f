use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{Error, Result};

/// Form degree and ghost number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bidegree {
    pub form: i32,
    pub ghost: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { form: 0, ghost: 0 };

    pub const fn new(form: i32, ghost: i32) -> Self {
        Self { form, ghost }
    }

    /// Total degree mod 2; this is what decides Koszul signs.
    pub fn parity(self) -> u8 {
        ((self.form + self.ghost).rem_euclid(2)) as u8
    }

    pub fn scaled(self, k: i32) -> Self {
        Self::new(self.form * k, self.ghost * k)
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.form + rhs.form, self.ghost + rhs.ghost)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.form, self.ghost)
    }
}

#[derive(Debug)]
struct GenData {
    name: String,
    jet_order: u32,
    degree: Bidegree,
    invertible: bool,
    field: bool,
}

/// A generator of the free graded-commutative algebra.
///
/// Generators are interned by `(name, jet order)` in a process-wide
/// registry, so two handles with the same name are the same generator.
/// Field generators carry a jet tower `g, g', g'', ...` created on demand by
/// [`Gen::prolong`].
#[derive(Clone)]
pub struct Gen(Arc<GenData>);

static REGISTRY: LazyLock<RwLock<HashMap<(String, u32), Gen>>> = LazyLock::new(Default::default);

/// Declaration of a generator; see [`Gen::build`].
#[derive(Clone, Debug)]
pub struct GenBuilder {
    name: String,
    degree: Bidegree,
    invertible: bool,
    field: bool,
}

impl GenBuilder {
    pub fn form(mut self, k: i32) -> Self {
        self.degree.form = k;
        self
    }

    pub fn ghost(mut self, k: i32) -> Self {
        self.degree.ghost = k;
        self
    }

    /// Allows negative exponents. Only for generators of bidegree `(0,0)`.
    pub fn invertible(mut self) -> Self {
        self.invertible = true;
        self
    }

    /// Marks the generator as a function on the base, with a jet tower.
    pub fn field(mut self) -> Self {
        self.field = true;
        self
    }

    pub fn build(self) -> Result<Gen> {
        if self.name.is_empty() || self.name.contains(['\'', '^', '*', ' ']) {
            return Err(Error::Algebra(format!("invalid generator name {:?}", self.name)));
        }
        if self.degree.form < 0 || self.degree.ghost < 0 {
            return Err(Error::Algebra(format!("negative degree for {}", self.name)));
        }
        if self.invertible && self.degree != Bidegree::ZERO {
            return Err(Error::Algebra(format!("invertible generator {} must have bidegree (0,0)", self.name)));
        }
        Gen::intern(GenData {
            name: self.name,
            jet_order: 0,
            degree: self.degree,
            invertible: self.invertible,
            field: self.field,
        })
    }
}

impl Gen {
    pub fn build(name: &str) -> GenBuilder {
        GenBuilder { name: name.to_string(), degree: Bidegree::ZERO, invertible: false, field: false }
    }

    fn intern(data: GenData) -> Result<Gen> {
        let key = (data.name.clone(), data.jet_order);
        if let Some(g) = REGISTRY.read().expect("generator registry poisoned").get(&key) {
            return g.check_same(&data).map(|_| g.clone());
        }
        let mut reg = REGISTRY.write().expect("generator registry poisoned");
        // another writer may have won the race
        if let Some(g) = reg.get(&key) {
            return g.check_same(&data).map(|_| g.clone());
        }
        let g = Gen(Arc::new(data));
        reg.insert(key, g.clone());
        Ok(g)
    }

    fn check_same(&self, data: &GenData) -> Result<()> {
        let d = &self.0;
        if d.degree != data.degree || d.invertible != data.invertible || d.field != data.field {
            return Err(Error::Algebra(format!("generator {} redeclared with different attributes", data.name)));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn jet_order(&self) -> u32 {
        self.0.jet_order
    }

    pub fn degree(&self) -> Bidegree {
        self.0.degree
    }

    pub fn parity(&self) -> u8 {
        self.0.degree.parity()
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }

    pub fn is_invertible(&self) -> bool {
        self.0.invertible && self.0.jet_order == 0
    }

    pub fn is_field(&self) -> bool {
        self.0.field
    }

    /// Next generator of the jet tower, `g -> g'`.
    pub fn prolong(&self) -> Result<Gen> {
        if !self.is_field() {
            return Err(Error::Algebra(format!("{self} has no jet tower")));
        }
        Gen::intern(GenData {
            name: self.0.name.clone(),
            jet_order: self.0.jet_order + 1,
            degree: self.0.degree,
            invertible: self.0.invertible,
            field: true,
        })
    }

    /// Jet-order-`k` member of the tower this generator belongs to.
    pub fn at_order(&self, k: u32) -> Result<Gen> {
        let mut g = self.tower_base();
        for _ in 0..k {
            g = g.prolong()?;
        }
        Ok(g)
    }

    /// The order-zero member of this generator's tower.
    pub fn tower_base(&self) -> Gen {
        if self.jet_order() == 0 {
            return self.clone();
        }
        REGISTRY.read().expect("generator registry poisoned")[&(self.0.name.clone(), 0)].clone()
    }
}

impl PartialEq for Gen {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Gen {}

impl Hash for Gen {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state);
        self.0.jet_order.hash(state);
    }
}

/// Even generators sort before odd ones, then by name and jet order.
impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.is_odd(), self.0.name.as_str(), self.0.jet_order).cmp(&(other.is_odd(), other.0.name.as_str(), other.0.jet_order))
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.jet_order {
            0 => write!(f, "{}", self.0.name),
            k @ 1..=3 => write!(f, "{}{}", self.0.name, "'".repeat(k as usize)),
            k => write!(f, "{}^({})", self.0.name, k),
        }
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}{}", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_and_towers() {
        let a = Gen::build("gtest_a").field().build().unwrap();
        let b = Gen::build("gtest_a").field().build().unwrap();
        assert_eq!(a, b);
        let a3 = a.at_order(3).unwrap();
        assert_eq!(a3.to_string(), "gtest_a'''");
        assert_eq!(a3.tower_base(), a);
        assert_eq!(a.at_order(4).unwrap().to_string(), "gtest_a^(4)");
        assert!(Gen::build("gtest_a").form(1).build().is_err());
    }

    #[test]
    fn invertible_generators_are_even_scalars() {
        assert!(Gen::build("gtest_bad").form(1).invertible().build().is_err());
        let e = Gen::build("gtest_e").invertible().field().build().unwrap();
        assert!(e.is_invertible());
        assert!(!e.prolong().unwrap().is_invertible());
        let dx = Gen::build("gtest_dx").form(1).build().unwrap();
        assert!(dx.is_odd());
        assert!(dx.prolong().is_err());
    }
}
