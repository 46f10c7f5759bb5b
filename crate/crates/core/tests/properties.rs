use once_cell::sync::Lazy;
use proptest::prelude::*;
use rbhopf::constructions::{family, sweedler_h4, taft, FamilyParams};
use rbhopf::hopf_core::{check_hopf, HopfData, HopfFile, LinearMap, Vector};
use rbhopf::rb_group::{
    check_rb, derived_group, enumerate_rb, weight_flip, GroupFile, GroupMap, GroupTable, DEFAULT_CAP,
};
use rbhopf::rb_hopf::{check_rrbo, exact_factorization_rrb, RrbFile};
use rbhopf::rb_lie::{check_lie, check_rb_lie_weight, LieData, LieFile};
use rbhopf::scalars::{FieldCtx, Scalar};

static TAFT3: Lazy<HopfData> = Lazy::new(|| taft(3, &FieldCtx::cyclotomic(3).unwrap()).unwrap());
static H4: Lazy<HopfData> = Lazy::new(|| sweedler_h4(&FieldCtx::rationals()).unwrap());

fn element(h: &HopfData) -> impl Strategy<Value = Vector> + '_ {
    let ctx = h.ctx().clone();
    proptest::collection::vec(-3i64..=3, h.dim())
        .prop_map(move |cs| Vector::from_terms(cs.into_iter().enumerate().map(|(i, c)| (i, ctx.from_int(c)))))
}

fn scalar(ctx: FieldCtx) -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(move |(n, d)| &ctx.from_int(n) * &ctx.from_int(d).inv().unwrap())
}

fn hopf() -> impl Strategy<Value = &'static HopfData> {
    prop_oneof![Just(&*TAFT3), Just(&*H4)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comultiplication_is_multiplicative((h, a, b) in hopf().prop_flat_map(|h| (Just(h), element(h), element(h)))) {
        let lhs = h.delta(&h.product(&a, &b));
        let rhs = h.tensor_product(&h.delta(&a), &h.delta(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_reverses_products((h, a, b) in hopf().prop_flat_map(|h| (Just(h), element(h), element(h)))) {
        prop_assert_eq!(h.s(&h.product(&a, &b)), h.product(&h.s(&b), &h.s(&a)));
    }

    #[test]
    fn product_is_bilinear((a, b, c, t) in (element(&H4), element(&H4), element(&H4), scalar(FieldCtx::rationals()))) {
        let h = &*H4;
        let lhs = h.product(&a.add(&b.scale(&t)), &c);
        let rhs = h.product(&a, &c).add(&h.product(&b, &c).scale(&t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_is_multiplicative((h, a, b) in hopf().prop_flat_map(|h| (Just(h), element(h), element(h)))) {
        prop_assert_eq!(h.counit(&h.product(&a, &b)), &h.counit(&a) * &h.counit(&b));
    }

    #[test]
    fn family_files_round_trip(m in 2usize..=5, modular in any::<bool>()) {
        // l = 2m needs {2m, q}_ζ = 0, which holds in characteristic 3 for ζ = −1
        let (k, params) = if modular {
            let k = FieldCtx::prime(3).unwrap();
            let params = FamilyParams::new(2, -k.one(), 6, vec![]).unwrap();
            (k, params)
        } else {
            let k = FieldCtx::cyclotomic(m as u32).unwrap();
            let params = FamilyParams::taft(m, &k).unwrap();
            (k, params)
        };
        let h = family(&params, &k).unwrap();
        let text = serde_json::to_string(&HopfFile::from_hopf(&h)).unwrap();
        let back: HopfFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.into_hopf().unwrap(), h);
    }

    #[test]
    fn weight_flip_is_an_involution_between_weights(which in 0usize..6) {
        let g = [
            GroupTable::cyclic(4),
            GroupTable::symmetric(3),
            GroupTable::dihedral(4),
            GroupTable::quaternion(),
            GroupTable::cyclic(6),
            GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)),
        ][which].clone();
        for b in enumerate_rb(&g, 1, DEFAULT_CAP).unwrap() {
            let flipped = weight_flip(&b, &g);
            prop_assert!(check_rb(&g, &flipped, -1).unwrap().passed());
            prop_assert_eq!(weight_flip(&flipped, &g), b);
        }
    }

    #[test]
    fn derived_group_keeps_the_identity(which in 0usize..3) {
        let g = [GroupTable::symmetric(3), GroupTable::quaternion(), GroupTable::dihedral(3)][which].clone();
        for b in enumerate_rb(&g, 1, DEFAULT_CAP).unwrap() {
            let (derived, report) = derived_group(&g, &b).unwrap();
            prop_assert!(report.passed());
            prop_assert_eq!(derived.identity(), g.identity());
        }
    }

    #[test]
    fn group_files_round_trip(n in 1usize..=8, symmetric in any::<bool>()) {
        let g = if symmetric && n <= 4 { GroupTable::symmetric(n) } else { GroupTable::cyclic(n) };
        let text = serde_json::to_string(&GroupFile::from_group(&g)).unwrap();
        let back: GroupFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_group().unwrap(), g);
    }

    #[test]
    fn random_maps_agree_with_a_direct_evaluation(images in proptest::collection::vec(0usize..6, 6)) {
        let g = GroupTable::symmetric(3);
        let b = GroupMap::new(images.clone());
        let direct = (0..6).all(|x| (0..6).all(|y| {
            g.mul(images[x], images[y]) == images[g.product(&[x, images[x], y, g.inv(images[x])])]
        }));
        let report = check_rb(&g, &b, 1).unwrap();
        prop_assert_eq!(report.passed(), direct);
        if let Some(w) = report.witness {
            let (x, y) = (w.indices[0], w.indices[1]);
            prop_assert_ne!(g.mul(images[x], images[y]), images[g.product(&[x, images[x], y, g.inv(images[x])])]);
        }
    }

    #[test]
    fn scaled_identity_is_a_lie_operator(n in -4i64..=4, d in 1i64..=3) {
        let q = FieldCtx::rationals();
        let lambda = &q.from_int(n) * &q.from_int(d).inv().unwrap();
        for g in [LieData::sl2(&q), LieData::affine_line(&q), LieData::abelian(2, &q)] {
            let b = LinearMap::identity(g.dim(), &q).scale(&-lambda.clone());
            prop_assert!(check_rb_lie_weight(&g, &b, &lambda).passed());
        }
    }

    #[test]
    fn rescaled_sl2_is_a_lie_algebra(n in -4i64..=4) {
        let q = FieldCtx::rationals();
        let g = LieData::sl2(&q).rescale(&q.from_int(n));
        prop_assert!(check_lie(&g).passed());
        let text = serde_json::to_string(&LieFile::from_lie(&g)).unwrap();
        let back: LieFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_lie().unwrap(), g);
    }
}

#[test]
fn shipped_fixtures_reload() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let expected = [
        ("s3.json", GroupTable::symmetric(3)),
        ("z2.json", GroupTable::cyclic(2)),
        ("z3.json", GroupTable::cyclic(3)),
        ("z4.json", GroupTable::cyclic(4)),
        ("f21.json", GroupTable::f21()),
    ];
    for (name, g) in expected {
        let file: GroupFile = serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap();
        assert_eq!(file.to_group().unwrap(), g, "{name}");
    }
    for name in ["h4-rrb-exact-factorization.json", "s3-rrb-exact-factorization.json"] {
        let file: RrbFile = serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap();
        let data = file.to_data().unwrap();
        assert!(check_rrbo(&data).passed(), "{name}");
        assert_eq!(RrbFile::from_data(&data), file);
    }
    let s3 = GroupTable::symmetric(3);
    let at = |l: &str| s3.index_of(l).unwrap();
    let data = exact_factorization_rrb(
        &s3,
        &s3.generated(&[at("(1 2 3)")]),
        &s3.generated(&[at("(1 2)")]),
        &FieldCtx::rationals(),
    )
    .unwrap();
    let file: RrbFile =
        serde_json::from_str(&std::fs::read_to_string(dir.join("s3-rrb-exact-factorization.json")).unwrap()).unwrap();
    assert_eq!(file.to_data().unwrap().b, data.b);
}

#[test]
fn corrupted_product_has_a_genuine_witness() {
    let h = &*H4;
    let mut file = HopfFile::from_hopf(h);
    // x·x = 1 instead of 0 breaks the algebra
    let q = FieldCtx::rationals();
    file.mult.push(rbhopf::hopf_core::ProductEntry {
        i: 1,
        j: 1,
        terms: vec![rbhopf::hopf_core::Term { k: 0, c: q.one() }],
    });
    let broken = file.into_hopf().unwrap();
    let report = check_hopf(&broken);
    assert!(!report.passed());
    let w = report.witness.unwrap();
    assert_eq!(report.failed_identity.as_deref(), Some(w.identity.as_str()));
    assert_ne!(w.lhs, w.rhs);
}
