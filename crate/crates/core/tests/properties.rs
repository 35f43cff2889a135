use proptest::prelude::*;

use curvegraph::ends::{cb_derivative, characteristic_system, CharSystem, EndSpace};
use curvegraph::graphs::{build_word_ball, farey_apply, farey_distance, GraphKind, Matrix, Slope};
use curvegraph::planar::{
    intersection_number, ArcClass, Class, CurveClass, Fingerprint, Generator, Marks, PuncturedDisk,
    SecondaryFingerprint, Word,
};

const N: usize = 6;

fn generator() -> impl Strategy<Value = Generator> {
    (1..N as u8, any::<bool>()).prop_map(|(i, p)| Generator::new(i, p))
}

fn word(max: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(), 0..=max)
}

fn seed() -> impl Strategy<Value = Class> {
    prop_oneof![
        (1..N as u8, 1..N as u8).prop_map(|(i, d)| {
            let j = (i + d).min(N as u8);
            let i = i.min(j - 1);
            Class::Arc(ArcClass::over(N, i, j).unwrap())
        }),
        (1..N as u8 - 1, 1..N as u8 - 1).prop_map(|(lo, d)| {
            let hi = (lo + d).min(N as u8 - 1).max(lo + 1);
            Class::Curve(CurveClass::round(N, lo, hi).unwrap())
        }),
    ]
}

fn class(max: usize) -> impl Strategy<Value = Class> {
    (seed(), word(max)).prop_map(|(s, w)| Word(w).apply(&s).unwrap())
}

fn slope() -> impl Strategy<Value = Slope> {
    (-30i64..=30, 0i64..=30).prop_filter("0/0", |&(p, q)| p != 0 || q != 0).prop_map(|(p, q)| Slope::new(p, q).unwrap())
}

fn sl2() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(
        prop_oneof![Just(Matrix([[1, 1], [0, 1]])), Just(Matrix([[1, 0], [1, 1]])), Just(Matrix([[1, -1], [0, 1]]))],
        0..6,
    )
    .prop_map(|ms| ms.iter().fold(Matrix::IDENTITY, |acc, m| acc.mul(m)))
}

fn end_space() -> impl Strategy<Value = EndSpace> {
    let leaf = prop_oneof![
        (1u64..5).prop_map(EndSpace::Finite),
        (0u32..4, 1u64..4).prop_map(|(rank, top)| EndSpace::CharSpace { rank, top }),
        Just(EndSpace::Cantor),
    ];
    prop::collection::vec(leaf, 1..4).prop_map(|v| if v.len() == 1 { v[0].clone() } else { EndSpace::Union(v) })
}

fn splice(w: &[Generator], at: usize, mid: &[Generator]) -> Word {
    let at = at.min(w.len());
    Word([&w[..at], mid, &w[at..]].concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn braid_relations_act_trivially(x in class(6), w in word(4), at in 0usize..5, i in 1..N as u8 - 1, j in 1..N as u8) {
        let (a, b) = (Generator::new(i, true), Generator::new(i + 1, true));
        let lhs = splice(&w, at, &[a, b, a]).apply(&x).unwrap();
        let rhs = splice(&w, at, &[b, a, b]).apply(&x).unwrap();
        prop_assert_eq!(Fingerprint::of(&lhs), Fingerprint::of(&rhs));
        if i.abs_diff(j) >= 2 {
            let c = Generator::new(j, false);
            let lhs = splice(&w, at, &[a, c]).apply(&x).unwrap();
            let rhs = splice(&w, at, &[c, a]).apply(&x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        let back = splice(&w, at, &[a, a.inverse()]).apply(&x).unwrap();
        prop_assert_eq!(back, Word(w.clone()).apply(&x).unwrap());
    }

    #[test]
    fn intersection_is_symmetric_and_invariant(x in class(6), y in class(6), g in word(3)) {
        let i = intersection_number(&x, &y);
        prop_assert_eq!(i, intersection_number(&y, &x));
        let g = Word(g);
        prop_assert_eq!(i, intersection_number(&g.apply(&x).unwrap(), &g.apply(&y).unwrap()));
    }

    #[test]
    fn triangulations_agree(x in class(7), y in class(7)) {
        let same = Fingerprint::of(&x) == Fingerprint::of(&y);
        prop_assert_eq!(same, SecondaryFingerprint::of(&x) == SecondaryFingerprint::of(&y));
        prop_assert_eq!(same, x == y);
        prop_assert_eq!(Fingerprint::of(&x).to_class().unwrap(), x);
    }

    #[test]
    fn farey_distance_is_symmetric_and_invariant(s in slope(), t in slope(), m in sl2()) {
        let d = farey_distance(s, t);
        prop_assert_eq!(d, farey_distance(t, s));
        prop_assert_eq!(d, farey_distance(farey_apply(&m, s).unwrap(), farey_apply(&m, t).unwrap()));
        prop_assert_eq!(d == 0, s == t);
    }

    #[test]
    fn derivative_commutes_with_union(a in end_space(), b in end_space()) {
        let joined = cb_derivative(&EndSpace::Union(vec![a.clone(), b.clone()]));
        let apart = EndSpace::Union(vec![cb_derivative(&a), cb_derivative(&b)]).normalize();
        prop_assert_eq!(joined, apart);
    }

    #[test]
    fn characteristic_system_ignores_order(a in end_space(), b in end_space()) {
        let ab = characteristic_system(&EndSpace::Union(vec![a.clone(), b.clone()]));
        let ba = characteristic_system(&EndSpace::Union(vec![b, a]));
        prop_assert_eq!(ab, ba);
        if let CharSystem::System { n, .. } = ab {
            prop_assert!(n >= 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn word_ball_is_deterministic(lo in 1u8..4, radius in 1usize..3) {
        let disk = PuncturedDisk::new(5, Marks::Points(vec![1, 2, 3, 4, 5])).unwrap();
        let seed = Class::Curve(CurveClass::round(5, lo, lo + 1).unwrap());
        let a = build_word_ball(GraphKind::Sep2, &disk, std::slice::from_ref(&seed), radius).unwrap();
        let b = build_word_ball(GraphKind::Sep2, &disk, &[seed], radius).unwrap();
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
