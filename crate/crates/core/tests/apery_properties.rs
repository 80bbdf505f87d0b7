use std::collections::{HashMap, HashSet};

use diomon::apery::{apery_box, apery_closed_form, AperyTable, DEFAULT_GUARD};
use diomon::decompose::{decompose, elliott_decompose, elliott_scheme_from_apery};
use diomon::exact_arith::{gcd, Rational};
use diomon::hilbert::HilbertBasis;
use diomon::oracle::{brute_apery, brute_hilbert, enumerate_solutions, SearchBox};
use diomon::{EquationSpec, LatticePoint};
use proptest::prelude::*;

fn spec(raw: &[u64]) -> EquationSpec {
    EquationSpec::normalize(raw).unwrap()
}

fn table(raw: &[u64]) -> AperyTable {
    apery_box(&spec(raw), DEFAULT_GUARD).unwrap()
}

const SAMPLES: &[&[u64]] = &[
    &[4, 5, 7],
    &[2, 3, 6],
    &[1, 1, 1, 2],
    &[3, 1, 7],
    &[1, 5, 13],
    &[6, 4, 9],
    &[3, 4, 5, 12],
    &[2, 7, 9, 11],
    &[6, 10, 15, 30],
    &[1, 2, 3, 4, 6],
];

#[test]
fn box_and_definition_agree() {
    for raw in SAMPLES {
        let t = table(raw);
        assert_eq!(
            t.elements(),
            &brute_apery(t.spec(), DEFAULT_GUARD).unwrap()[..],
            "{raw:?}"
        );
        assert!(t.contains(&t.origin()));
        let volume: i64 = t.spec().widths().iter().product();
        assert_eq!(volume % t.len() as i64, 0);
    }
}

#[test]
fn apery_is_where_every_lambda_is_below_one() {
    for raw in SAMPLES {
        let t = table(raw);
        let m = t.spec();
        let region = SearchBox::new(m.widths().iter().map(|w| 2 * w).collect()).unwrap();
        for x in enumerate_solutions(m, &region, DEFAULT_GUARD).unwrap() {
            let below = (0..m.dim()).all(|i| m.lambda(i, &x).unwrap() < Rational::ONE);
            assert_eq!(below, t.contains(&x), "{raw:?} {x}");
            assert_eq!(m.nu(&x).unwrap() < Rational::ONE, t.contains(&x));
        }
    }
}

#[test]
fn oplus_is_an_abelian_group() {
    for raw in SAMPLES {
        let t = table(raw);
        let e = t.elements();
        let zero = t.origin();
        for a in e {
            assert_eq!(&t.oplus(a, &zero).unwrap(), a);
            let inv = t.inverse(a).unwrap();
            assert_eq!(t.oplus(a, &inv).unwrap(), zero, "{raw:?} inverse of {a}");
            for b in e {
                let ab = t.oplus(a, b).unwrap();
                assert_eq!(ab, t.oplus(b, a).unwrap());
                for c in e {
                    assert_eq!(t.oplus(&ab, c).unwrap(), t.oplus(a, &t.oplus(b, c).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn carry_properties() {
    for raw in SAMPLES {
        let t = table(raw);
        let e = t.elements();
        let zero = t.origin();
        for a in e {
            for b in e {
                let (s, i_ab) = t.oplus_with_carry(a, b).unwrap();
                // a + b = (a ⊕ b) + I(a, b)
                let mut rebuilt = s.clone();
                for (k, q) in t.spec().rays().iter().enumerate() {
                    rebuilt = rebuilt
                        .checked_add(&q.checked_scale(i_ab.0[k] as i64).unwrap())
                        .unwrap();
                }
                assert_eq!(rebuilt, a.checked_add(b).unwrap());
                assert_eq!(i_ab, t.carry(b, a).unwrap());
                if !a.is_zero() && s == zero {
                    assert!(!i_ab.is_zero() && !i_ab.is_single_ray(), "{raw:?} I({a},{b}) = {i_ab}");
                }
                if e.len() <= 50 {
                    for c in e {
                        let lhs = i_ab.add(&t.carry(&s, c).unwrap());
                        let rhs = t
                            .carry(b, c)
                            .unwrap()
                            .add(&t.carry(a, &t.oplus(b, c).unwrap()).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn carry_sum_over_multiples_is_not_a_multiple() {
    for raw in SAMPLES {
        let t = table(raw);
        for a in t.elements().iter().filter(|a| !a.is_zero()) {
            let n = t.spec().cale_data(a).unwrap().n;
            let mut sum = vec![0u64; t.spec().dim()];
            for i in 1..n {
                let c = t.carry(a, &t.bar_multiple(i, a).unwrap()).unwrap();
                for (s, ci) in sum.iter_mut().zip(&c.0) {
                    *s += ci;
                }
            }
            assert!(sum.iter().any(|s| s % n != 0), "{raw:?} a={a} sum={sum:?}");
        }
    }
}

#[test]
fn reduce_is_a_bijection_on_the_tripled_box() {
    for raw in SAMPLES {
        let t = table(raw);
        let m = t.spec();
        let region = SearchBox::new(m.widths().iter().map(|w| 3 * w).collect()).unwrap();
        let mut seen = HashSet::new();
        for x in enumerate_solutions(m, &region, DEFAULT_GUARD).unwrap() {
            let (a, carries) = t.reduce(&x).unwrap();
            assert!(t.contains(&a));
            assert!(carries.0.iter().all(|&k| k < 3));
            let d = decompose(m, &x).unwrap();
            assert_eq!(d.apery_part, a);
            assert_eq!(d.ray_mults, carries.0);
            assert_eq!(d.recompose(m).unwrap(), x);
            assert!(seen.insert((a, carries)));
        }
        // every (apery element, carries < 3) pair is hit
        assert_eq!(seen.len(), t.len() * 3usize.pow(m.dim() as u32));
    }
}

#[test]
fn closed_form_matches_box_on_full_sweep() {
    for c in 2..=30u64 {
        for a in 1..c {
            for b in 1..c {
                if gcd(gcd(a as i64, b as i64), c as i64) != 1 {
                    continue;
                }
                let m = spec(&[a, b, c]);
                let boxed = apery_box(&m, DEFAULT_GUARD).unwrap();
                assert_eq!(apery_closed_form(&m).unwrap(), boxed);
                // distinct coordinates in both positions
                let xs: HashSet<i64> = boxed.elements().iter().map(|p| p[0]).collect();
                let ys: HashSet<i64> = boxed.elements().iter().map(|p| p[1]).collect();
                assert_eq!(xs.len(), boxed.len());
                assert_eq!(ys.len(), boxed.len());
            }
        }
    }
}

#[test]
fn ell_clears_every_lambda() {
    for raw in SAMPLES {
        let t = table(raw);
        let m = t.spec();
        let ells = t.ells().unwrap();
        let region = SearchBox::new(m.widths().iter().map(|w| 2 * w + 1).collect()).unwrap();
        for x in enumerate_solutions(m, &region, DEFAULT_GUARD).unwrap() {
            for (i, &l) in ells.iter().enumerate() {
                let v = m
                    .lambda(i, &x)
                    .unwrap()
                    .checked_mul(&Rational::from_integer(l as i64))
                    .unwrap();
                assert!(v.is_integer());
            }
        }
        // and ℓ is least: some Apéry element has denominator exactly ℓ's prime powers
        for (i, &l) in ells.iter().enumerate() {
            for k in 1..l {
                let all = t.elements().iter().all(|a| {
                    m.lambda(i, a)
                        .unwrap()
                        .checked_mul(&Rational::from_integer(k as i64))
                        .unwrap()
                        .is_integer()
                });
                assert!(!all, "{raw:?} ray {i}: {k} < {l} already clears");
            }
        }
    }
}

fn generated_by(basis: &[LatticePoint], target: &LatticePoint, memo: &mut HashMap<LatticePoint, bool>) -> bool {
    if target.is_zero() {
        return true;
    }
    if let Some(&known) = memo.get(target) {
        return known;
    }
    let found = basis.iter().any(|h| {
        !h.is_zero() && h.le_componentwise(target) && generated_by(basis, &target.checked_sub(h).unwrap(), memo)
    });
    memo.insert(target.clone(), found);
    found
}

#[test]
fn hilbert_basis_matches_brute_force_and_generates() {
    for raw in SAMPLES {
        let t = table(raw);
        let m = t.spec();
        let h = HilbertBasis::from_apery(&t);
        let bound = 3 * m.modulus();
        if (bound as u128 + 1).pow(m.dim() as u32) <= 2_000_000 {
            assert_eq!(h.sorted(), brute_hilbert(m, bound, DEFAULT_GUARD).unwrap(), "{raw:?}");
        }
        let basis = h.sorted();
        let mut memo = HashMap::new();
        for a in t.elements() {
            assert!(generated_by(&basis, a, &mut memo), "{raw:?}: {a}");
        }
    }
}

#[test]
fn hilbert_matches_brute_force_on_two_variable_sweep() {
    for c in 2..=30u64 {
        for a in 1..c {
            for b in 1..c {
                if gcd(gcd(a as i64, b as i64), c as i64) != 1 {
                    continue;
                }
                let t = table(&[a, b, c]);
                let h = HilbertBasis::from_apery(&t);
                assert_eq!(
                    h.sorted(),
                    brute_hilbert(t.spec(), 3 * c as i64, DEFAULT_GUARD).unwrap()
                );
            }
        }
    }
}

#[test]
fn elliott_parameters_biject_onto_apery() {
    for c in 2..=25u64 {
        for a in 1..c {
            for b in 1..c {
                if gcd(gcd(a as i64, b as i64), c as i64) != 1 {
                    continue;
                }
                let t = table(&[a, b, c]);
                let m = t.spec();
                let Ok(s) = elliott_scheme_from_apery(&t) else { continue };
                let lam =
                    |p: &Option<LatticePoint>, i: usize| p.as_ref().map_or(Rational::ZERO, |p| m.lambda(i, p).unwrap());
                let mut images = HashSet::new();
                for &(mm, nn) in &s.admissible {
                    let p = s.point(mm, nn).unwrap_or_else(|| t.origin());
                    assert!(t.contains(&p), "{a},{b},{c}: ({mm},{nn}) -> {p}");
                    assert!(images.insert(p));
                    for i in 0..m.dim() {
                        let total = Rational::from_integer(mm as i64)
                            .checked_mul(&lam(&s.u, i))
                            .unwrap()
                            .checked_add(&Rational::from_integer(nn as i64).checked_mul(&lam(&s.v, i)).unwrap())
                            .unwrap();
                        assert!(total < Rational::ONE);
                    }
                }
                assert_eq!(images.len(), t.len());
                // conversely, anything satisfying the strict bounds is admissible
                for mm in 0..=c {
                    for nn in 0..=c {
                        let ok = (0..m.dim()).all(|i| {
                            let u = s.u.as_ref().map_or(0, |u| u[i]);
                            let v = s.v.as_ref().map_or(0, |v| v[i]);
                            mm as i64 * u + nn as i64 * v < m.widths()[i]
                        });
                        let ok = ok && (s.u.is_some() || mm == 0) && (s.v.is_some() || nn == 0);
                        assert_eq!(ok, s.admissible.contains(&(mm, nn)), "{a},{b},{c}: ({mm},{nn})");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elliott_representation_recomposes(
        (a, b, c) in (3u64..25).prop_flat_map(|c| (1..c, 1..c, Just(c))),
        pick in 0usize..1000,
        k0 in 0i64..4,
        k1 in 0i64..4,
    ) {
        prop_assume!(gcd(gcd(a as i64, b as i64), c as i64) == 1);
        let t = table(&[a, b, c]);
        let m = t.spec().clone();
        let Ok(s) = elliott_scheme_from_apery(&t) else { return Ok(()) };
        let base = &t.elements()[pick % t.len()];
        let w = m.widths();
        let x = vec![base[0] + k0 * w[0], base[1] + k1 * w[1]];
        let rep = elliott_decompose(&s, &m, &x).unwrap();
        let mut rebuilt = s.point(rep.m, rep.n).unwrap_or_else(|| t.origin());
        for (k, q) in m.rays().iter().enumerate() {
            rebuilt = rebuilt.checked_add(&q.checked_scale(rep.ray_mults[k] as i64).unwrap()).unwrap();
        }
        prop_assert_eq!(rebuilt.coords(), &x[..]);
        prop_assert!(s.admissible.contains(&(rep.m, rep.n)));
    }
}
