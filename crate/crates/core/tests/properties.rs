use frusta_core::catalog::{make_solid, nine_part_frustum, SolidSpec};
use frusta_core::congruence::find_congruence;
use frusta_core::dissection::{verify_certificate, Overall};
use frusta_core::formulas::{evaluate_formula, identity_checks, FormulaId};
use frusta_core::geometry::{HalfSpace, Matrix3, Point3, Rational, RigidMotion, Vector3};
use frusta_core::polytope::ConvexPolytope;
use proptest::prelude::*;

fn positive() -> impl Strategy<Value = Rational> {
    (1..=40i64, 1..=40i64).prop_map(|(n, d)| Rational::new(n, d))
}

fn signed() -> impl Strategy<Value = Rational> {
    (-40..=40i64, 1..=40i64).prop_map(|(n, d)| Rational::new(n, d))
}

fn triple() -> impl Strategy<Value = (Rational, Rational, Rational)> {
    (positive(), positive(), positive())
        .prop_filter("a != b", |(x, y, _)| x != y)
        .prop_map(|(x, y, h)| if x > y { (x, y, h) } else { (y, x, h) })
}

fn point() -> impl Strategy<Value = Point3> {
    (signed(), signed(), signed()).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn motion() -> impl Strategy<Value = RigidMotion> {
    (
        prop::array::uniform4(-3..=3i64).prop_filter("nonzero", |q| q.iter().any(|x| *x != 0)),
        any::<bool>(),
        signed(),
        signed(),
        signed(),
    )
        .prop_map(|([a, b, c, d], reflect, tx, ty, tz)| {
            let n = a * a + b * b + c * c + d * d;
            let entries = [
                [
                    a * a + b * b - c * c - d * d,
                    2 * (b * c - a * d),
                    2 * (b * d + a * c),
                ],
                [
                    2 * (b * c + a * d),
                    a * a - b * b + c * c - d * d,
                    2 * (c * d - a * b),
                ],
                [
                    2 * (b * d - a * c),
                    2 * (c * d + a * b),
                    a * a - b * b - c * c + d * d,
                ],
            ];
            let mut m = Matrix3(entries.map(|row| row.map(|x| Rational::new(x, n))));
            if reflect {
                m = m.mul_matrix(&Matrix3::from_ints([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]));
            }
            RigidMotion::new(m, Vector3::new(tx, ty, tz))
        })
}

fn solid() -> impl Strategy<Value = ConvexPolytope> {
    (0..6usize, triple()).prop_map(|(k, (a, b, h))| {
        let spec = match k {
            0 => SolidSpec::cuboid(a, b, h),
            1 => SolidSpec::symmetric_frustum(a, b, h),
            2 => SolidSpec::right_frustum(a, b, h),
            3 => SolidSpec::symmetric_pyramid(a, h),
            4 => SolidSpec::yangma(a, b, h),
            _ => SolidSpec::qiandu(a, b, h),
        };
        make_solid(&spec).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn side_matches_evaluate(n in (signed(), signed(), signed()), c in signed(), p in point()) {
        let normal = Vector3::new(n.0, n.1, n.2);
        prop_assume!(!normal.is_zero());
        let hs = HalfSpace::new(normal, c).unwrap();
        prop_assert_eq!(hs.side(&p), hs.evaluate(&p).cmp(&Rational::from(0)));
        prop_assert_eq!(hs.primitive().side(&p), hs.side(&p));
    }

    #[test]
    fn motions_are_isometries(m in motion(), p in point(), q in point()) {
        prop_assert!(m.is_valid());
        let (mp, mq) = (m.apply(&p).unwrap(), m.apply(&q).unwrap());
        prop_assert_eq!((&mp - &mq).norm_squared(), (&p - &q).norm_squared());
        let back = m.inverse().unwrap().apply(&mp).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn volume_is_motion_invariant(s in solid(), m in motion()) {
        let moved = s.transform(&m).unwrap();
        prop_assert_eq!(moved.volume(), s.volume());
        if m.is_proper() {
            prop_assert!(find_congruence(&s, &moved, false).is_some());
        }
        prop_assert!(find_congruence(&s, &moved, true).is_some());
    }

    #[test]
    fn volume_scales_cubically(s in solid(), k in positive()) {
        let scaled = s.scale(&k).unwrap();
        prop_assert_eq!(scaled.volume(), s.volume() * k.cube());
    }

    #[test]
    fn clip_splits_volume(s in solid(), n in (signed(), signed(), signed()), c in signed()) {
        let normal = Vector3::new(n.0, n.1, n.2);
        prop_assume!(!normal.is_zero());
        let hs = HalfSpace::new(normal, c).unwrap();
        let inside = s.clip(&hs).map(|p| p.volume()).unwrap_or_default();
        let outside = s.clip(&hs.complement()).map(|p| p.volume()).unwrap_or_default();
        prop_assert_eq!(inside + outside, s.volume());
    }

    #[test]
    fn frustum_formulas_agree((a, b, h) in triple()) {
        let t = evaluate_formula(FormulaId::Frustum, &a, &b, &h).unwrap();
        prop_assert_eq!(&evaluate_formula(FormulaId::FrustumAlternative, &a, &b, &h).unwrap(), &t);
        prop_assert_eq!(&evaluate_formula(FormulaId::Factored, &a, &b, &h).unwrap(), &t);
        let geometric = make_solid(&SolidSpec::symmetric_frustum(a.clone(), b.clone(), h)).unwrap().volume();
        prop_assert_eq!(geometric, t);
        prop_assert!(identity_checks(&a, &b).all_hold());
    }

    #[test]
    fn rational_text_round_trip(r in signed()) {
        let text = r.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nine_part_is_exact((a, b, h) in triple()) {
        let cert = nine_part_frustum(&a, &b, &h).unwrap();
        let verdict = verify_certificate(&cert).unwrap();
        prop_assert_eq!(verdict.overall(), Overall::Exact);
    }
}
