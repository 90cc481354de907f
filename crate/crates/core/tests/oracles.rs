//! Jet arithmetic against a separate truncated power-series model, plus
//! the group and Lie algebra laws as properties.

use std::collections::BTreeMap;

use jetframe::jet::{compose2, compose3, inverse2, inverse3, Jet2, Jet3};
use jetframe::lie::{adjoint, bracket_oracle, jacobiator, VecJet};
use jetframe::projective::{lift_jet, schwarzian};
use jetframe::scalar::{rat, Rational};
use jetframe::symtensor::SymTensor;
use num_traits::Zero;
use proptest::prelude::*;

/// Power series in `n` variables truncated above degree `deg`.
#[derive(Clone, Debug, PartialEq)]
struct Series {
    n: usize,
    deg: u32,
    c: BTreeMap<Vec<u32>, Rational>,
}

impl Series {
    fn zero(n: usize, deg: u32) -> Self {
        Series { n, deg, c: BTreeMap::new() }
    }

    fn push(&mut self, e: Vec<u32>, v: Rational) {
        if e.iter().sum::<u32>() > self.deg || v.is_zero() {
            return;
        }
        let slot = self.c.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.c.remove(&e);
        }
    }

    fn plus(&self, o: &Series) -> Series {
        let mut out = self.clone();
        for (e, v) in &o.c {
            out.push(e.clone(), v.clone());
        }
        out
    }

    fn times(&self, o: &Series) -> Series {
        let mut out = Series::zero(self.n, self.deg);
        for (a, x) in &self.c {
            for (b, y) in &o.c {
                out.push(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        out
    }

    /// `self(s_0, .., s_{n-1})`; every `s_i` must have zero constant term or
    /// `self` must be a polynomial, which holds for truncated jets.
    fn subst(&self, s: &[Series]) -> Series {
        let (n, deg) = (s[0].n, s[0].deg);
        let mut out = Series::zero(n, deg);
        for (e, v) in &self.c {
            let mut term = Series::zero(n, deg);
            term.push(vec![0; n], v.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.times(&s[i]);
                }
            }
            out = out.plus(&term);
        }
        out
    }

    fn at(&self, e: &[u32]) -> Rational {
        self.c.get(e).cloned().unwrap_or_else(Rational::zero)
    }
}

fn unit(n: usize, idx: &[usize]) -> Vec<u32> {
    let mut e = vec![0; n];
    for &i in idx {
        e[i] += 1;
    }
    e
}

/// Components of the map, summing over every ordered index tuple.
fn series_of(base: &[Rational], e1: &[Vec<Rational>], tensors: &[&SymTensor<Rational>], deg: u32) -> Vec<Series> {
    let n = base.len();
    (0..n)
        .map(|mu| {
            let mut s = Series::zero(n, deg);
            s.push(vec![0; n], base[mu].clone());
            for (a, c) in e1[mu].iter().enumerate() {
                s.push(unit(n, &[a]), c.clone());
            }
            for t in tensors {
                let rank = t.rank();
                let mut idx = vec![0usize; rank];
                loop {
                    s.push(unit(n, &idx), t.get(mu, &idx).clone());
                    let mut k = 0;
                    while k < rank && idx[k] == n - 1 {
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == rank {
                        break;
                    }
                    idx[k] += 1;
                }
            }
            s
        })
        .collect()
}

fn series2(j: &Jet2) -> Vec<Series> {
    series_of(&j.base, &j.e1, &[&j.e2], 2)
}

fn series3(j: &Jet3) -> Vec<Series> {
    series_of(&j.jet2.base, &j.jet2.e1, &[&j.jet2.e2, &j.e3], 3)
}

/// Reads a symmetric tensor back: the coefficient of a monomial is the
/// tensor entry times the number of orderings.
fn read_tensor(s: &[Series], rank: usize) -> SymTensor<Rational> {
    let n = s.len();
    SymTensor::from_fn(n, rank, |mu, idx| {
        let e = unit(n, idx);
        let orderings: u64 = {
            let fact = |k: u64| (1..=k).product::<u64>();
            e.iter().fold(fact(rank as u64), |acc, &k| acc / fact(u64::from(k)))
        };
        s[mu].at(&e) / rat(orderings as i64, 1)
    })
}

fn jet2_of(s: &[Series]) -> Jet2 {
    let n = s.len();
    Jet2 {
        base: s.iter().map(|c| c.at(&vec![0; n])).collect(),
        e1: (0..n).map(|mu| (0..n).map(|a| s[mu].at(&unit(n, &[a]))).collect()).collect(),
        e2: read_tensor(s, 2),
    }
}

fn jet3_of(s: &[Series]) -> Jet3 {
    Jet3 { jet2: jet2_of(s), e3: read_tensor(s, 3) }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

fn tensor(n: usize, rank: usize) -> impl Strategy<Value = SymTensor<Rational>> {
    let len = n * jetframe::symtensor::multiset_count(n, rank);
    prop::collection::vec(rational(), len).prop_map(move |v| {
        let mut it = v.into_iter();
        SymTensor::from_fn(n, rank, |_, _| it.next().expect("enough entries"))
    })
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), n), n)
        .prop_filter("invertible", |m| jetframe::jet::mat_inv(m).is_ok())
}

fn group3(n: usize) -> impl Strategy<Value = Jet3> {
    (matrix(n), tensor(n, 2), tensor(n, 3))
        .prop_map(move |(e1, e2, e3)| Jet3 { jet2: Jet2 { base: vec![rat(0, 1); n], e1, e2 }, e3 })
}

fn frame3(n: usize) -> impl Strategy<Value = Jet3> {
    (group3(n), prop::collection::vec(rational(), n)).prop_map(|(mut j, b)| {
        j.jet2.base = b;
        j
    })
}

fn vecjet(n: usize) -> impl Strategy<Value = VecJet<Rational>> {
    (prop::collection::vec(rational(), n), prop::collection::vec(prop::collection::vec(rational(), n), n), tensor(n, 2))
        .prop_map(|(m1, c0, c1)| VecJet::new(m1, c0, c1).unwrap())
}

fn dims() -> impl Strategy<Value = usize> {
    1usize..=3
}

/// `-(X . grad Y - Y . grad X)` written out on series, truncated at two.
fn minus_lie_bracket(x: &VecJet<Rational>, y: &VecJet<Rational>) -> VecJet<Rational> {
    let n = x.dim();
    let field = |v: &VecJet<Rational>| series_of(&v.m1, &v.c0, &[&v.c1], 2);
    let (fx, fy) = (field(x), field(y));
    let partial = |s: &Series, i: usize| {
        let mut out = Series::zero(n, 2);
        for (e, v) in &s.c {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.push(d, v * rat(i64::from(e[i]), 1));
            }
        }
        out
    };
    let comps: Vec<Series> = (0..n)
        .map(|a| {
            let mut out = Series::zero(n, 2);
            for b in 0..n {
                out = out.plus(&fy[b].times(&partial(&fx[a], b)));
                let neg = fx[b].times(&partial(&fy[a], b));
                for (e, v) in neg.c {
                    out.push(e, -v);
                }
            }
            out
        })
        .collect();
    let j = jet2_of(&comps);
    VecJet::new(j.base, j.e1, j.e2).unwrap()
}

#[test]
fn scalar_examples_match_the_model() {
    let f = Jet2::scalar(rat(0, 1), rat(2, 1), rat(3, 1));
    let g = Jet2::scalar(rat(0, 1), rat(1, 1), rat(1, 1));
    let via_model = jet2_of(&series2(&f).iter().map(|c| c.subst(&series2(&g))).collect::<Vec<_>>());
    assert_eq!(compose2(&f, &g).unwrap(), via_model);
    assert_eq!(via_model, Jet2::scalar(rat(0, 1), rat(2, 1), rat(5, 1)));
    let inv = inverse2(&f).unwrap();
    assert_eq!(inv, Jet2::scalar(rat(0, 1), rat(1, 2), rat(-3, 8)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn composition_matches_series_substitution((f, g) in dims().prop_flat_map(|n| (frame3(n), group3(n)))) {
        let inner = series3(&g);
        let outer = series3(&f);
        let model: Vec<Series> = outer.iter().map(|c| c.subst(&inner)).collect();
        prop_assert_eq!(compose3(&f, &g).unwrap(), jet3_of(&model));
        let inner2 = series2(&g.jet2);
        let model2: Vec<Series> = series2(&f.jet2).iter().map(|c| c.subst(&inner2)).collect();
        prop_assert_eq!(compose2(&f.jet2, &g.jet2).unwrap(), jet2_of(&model2));
    }

    #[test]
    fn group_axioms((f, g, h) in dims().prop_flat_map(|n| (group3(n), group3(n), group3(n)))) {
        let n = f.dim();
        prop_assert_eq!(
            compose3(&compose3(&f, &g).unwrap(), &h).unwrap(),
            compose3(&f, &compose3(&g, &h).unwrap()).unwrap()
        );
        let id = Jet3::identity(n);
        prop_assert_eq!(&compose3(&f, &id).unwrap(), &f);
        prop_assert_eq!(&compose3(&id, &f).unwrap(), &f);
        let fi = inverse3(&f).unwrap();
        prop_assert_eq!(compose3(&f, &fi).unwrap(), id.clone());
        prop_assert_eq!(compose3(&fi, &f).unwrap(), id);
        let (f2, g2, h2) = (f.truncate(), g.truncate(), h.truncate());
        prop_assert_eq!(
            compose2(&compose2(&f2, &g2).unwrap(), &h2).unwrap(),
            compose2(&f2, &compose2(&g2, &h2).unwrap()).unwrap()
        );
        prop_assert_eq!(compose2(&f2, &inverse2(&f2).unwrap()).unwrap(), Jet2::identity(n));
    }

    #[test]
    fn bracket_matches_vector_fields((x, y) in (1usize..=3).prop_flat_map(|n| (vecjet(n), vecjet(n)))) {
        let b = bracket_oracle(&x, &y).unwrap();
        prop_assert_eq!(&b, &minus_lie_bracket(&x, &y));
        prop_assert_eq!(b, bracket_oracle(&y, &x).unwrap().map(|c| -c.clone()));
    }

    #[test]
    fn jacobi_in_one_dimension(x in vecjet(1), y in vecjet(1), z in vecjet(1)) {
        prop_assert!(jacobiator(&x, &y, &z).unwrap().is_zero());
    }

    #[test]
    fn adjoint_is_a_homomorphism((g, h, x) in (1usize..=2).prop_flat_map(|n| (group3(n), group3(n), vecjet(n)))) {
        prop_assert_eq!(
            adjoint(&compose3(&g, &h).unwrap(), &x).unwrap(),
            adjoint(&g, &adjoint(&h, &x).unwrap()).unwrap()
        );
    }

    #[test]
    fn schwarzian_cocycle(f in group3(1), g in group3(1)) {
        let g1 = g.e1()[0][0].clone();
        let lhs = schwarzian(&compose3(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, schwarzian(&f).unwrap() * &g1 * &g1 + schwarzian(&g).unwrap());
    }

    #[test]
    fn projective_lifts_are_flat(f in group3(1)) {
        prop_assert!(schwarzian(&lift_jet(&f.truncate()).unwrap()).unwrap().is_zero());
    }
}
