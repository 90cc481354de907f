use jetframe::scalar::rat;
use jetframe::symba::{Bidegree, Derivation, Expr, Gen};
use proptest::prelude::*;

struct Pool {
    even: Vec<Gen>,
    forms: Vec<Gen>,
    ghosts: Vec<Gen>,
}

fn pool() -> Pool {
    Pool {
        even: vec![
            Gen::build("p_a").invertible().build().unwrap(),
            Gen::build("p_b").build().unwrap(),
            Gen::build("p_h").form(1).ghost(1).build().unwrap(),
        ],
        forms: ["p_dx", "p_dy", "p_dz"].iter().map(|n| Gen::build(n).form(1).build().unwrap()).collect(),
        ghosts: ["p_c1", "p_c2"].iter().map(|n| Gen::build(n).ghost(1).build().unwrap()).collect(),
    }
}

/// Homogeneous expression: each term is a random even monomial times `nf`
/// distinct forms and `ng` distinct ghosts, all terms sharing the optional
/// factor of bidegree (1,1).
fn expr_strategy(max_terms: usize) -> impl Strategy<Value = Expr> {
    (0usize..=2, 0usize..=1, any::<bool>()).prop_flat_map(move |(nf, ng, with_h)| {
        prop::collection::vec(
            (-4i64..=4, prop::collection::vec(-2i32..=2, 2), prop::sample::subsequence(vec![0, 1, 2], nf), prop::sample::subsequence(vec![0, 1], ng), any::<bool>()),
            1..=max_terms,
        )
        .prop_map(move |terms| {
            let p = pool();
            let mut out = Expr::zero();
            for (c, exps, fs, gs, swap) in terms {
                let mut t = Expr::constant(rat(c, 1));
                t = t * Expr::gen_pow(&p.even[0], exps[0]).unwrap();
                t = t * Expr::gen_pow(&p.even[1], exps[1].abs()).unwrap();
                if with_h {
                    t = t * Expr::gen(&p.even[2]);
                }
                let mut odd: Vec<Expr> = fs.iter().map(|&i| Expr::gen(&p.forms[i])).collect();
                odd.extend(gs.iter().map(|&i| Expr::gen(&p.ghosts[i])));
                if swap {
                    odd.reverse();
                }
                for o in odd {
                    t = t * o;
                }
                out = out + t;
            }
            out
        })
    })
}

fn sign(p: u8) -> Expr {
    if p == 1 {
        Expr::int(-1)
    } else {
        Expr::one()
    }
}

fn d_rule() -> Derivation {
    let p = pool();
    let (a, b, h) = (p.even[0].clone(), p.even[1].clone(), p.even[2].clone());
    let (dx, dy, dz) = (p.forms[0].clone(), p.forms[1].clone(), p.forms[2].clone());
    let (c1, c2) = (p.ghosts[0].clone(), p.ghosts[1].clone());
    Derivation::from_table(
        "s",
        Bidegree::new(0, 1),
        vec![
            (a.clone(), Expr::gen(&a) * Expr::gen(&c1)),
            (b.clone(), Expr::gen(&c2) + Expr::gen(&b) * Expr::gen(&c1)),
            (h.clone(), Expr::gen(&dx) * Expr::gen(&c1) * Expr::gen(&c2)),
            (dx.clone(), Expr::gen(&h)),
            (dy.clone(), Expr::gen(&dz) * Expr::gen(&c2)),
            (dz.clone(), Expr::zero()),
            (c1.clone(), Expr::gen(&c1) * Expr::gen(&c2)),
            (c2.clone(), Expr::zero()),
        ],
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_is_associative(a in expr_strategy(3), b in expr_strategy(3), c in expr_strategy(3)) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a * (b * c));
    }

    #[test]
    fn product_is_graded_commutative(a in expr_strategy(4), b in expr_strategy(4)) {
        let pa = a.parity().unwrap_or(0);
        let pb = b.parity().unwrap_or(0);
        prop_assert_eq!(a.clone() * b.clone(), sign(pa * pb) * b * a);
    }

    #[test]
    fn derivations_obey_leibniz(a in expr_strategy(3), b in expr_strategy(3)) {
        let s = d_rule();
        let lhs = s.apply(&(a.clone() * b.clone())).unwrap();
        let pa = a.parity().unwrap_or(0);
        let rhs = s.apply(&a).unwrap() * b.clone() + sign(pa) * a * s.apply(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_is_stable(a in expr_strategy(4)) {
        // rebuilding from the terms gives back the same canonical value
        let mut rebuilt = Expr::zero();
        for (m, c) in a.terms() {
            rebuilt = rebuilt + Expr::term(c.clone(), m.clone());
        }
        prop_assert_eq!(rebuilt.to_string(), a.to_string());
        prop_assert_eq!(rebuilt, a);
    }
}
