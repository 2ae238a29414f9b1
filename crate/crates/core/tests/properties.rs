use proptest::prelude::*;
use toroidal::descent::lift;
use toroidal::oracle::{oracle_rank, uniform_point};
use toroidal::principalize::run;
use toroidal::row::rank2;
use toroidal::scenario_file::ScenarioFile;
use toroidal::{
    blowup, enumerate_centers, is_principal, ExponentRow, LocalForm, MonomialPresentation, Scenario,
};

fn rows(k: std::ops::RangeInclusive<usize>, max: u64) -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    k.prop_flat_map(move |k| (prop::collection::vec(0..=max, k), prop::collection::vec(0..=max, k)))
}

fn permutation(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle()
}

fn f5_with_perm() -> impl Strategy<Value = (MonomialPresentation, Vec<usize>)> {
    rows(2..=4, 6)
        .prop_filter_map("valid F5", |(u, v)| {
            MonomialPresentation::in_chart(LocalForm::f5(&u, &v), u.len(), 1).ok()
        })
        .prop_flat_map(|p| {
            let k = p.k();
            (Just(p), permutation(k))
        })
}

proptest! {
    #[test]
    fn principality_is_permutation_invariant((p, perm) in f5_with_perm()) {
        let q = p.permute_columns(&perm);
        prop_assert_eq!(is_principal(&p), is_principal(&q));
        prop_assert_eq!(enumerate_centers(&p).len(), enumerate_centers(&q).len());
        prop_assert_eq!(uniform_point(&p).unwrap(), uniform_point(&q).unwrap());
    }

    #[test]
    fn blowup_commutes_with_permutation((p, perm) in f5_with_perm()) {
        let q = p.permute_columns(&perm);
        // old column c sits at position pos[c] after permuting
        let mut pos = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        for c in enumerate_centers(&p) {
            let toroidal::Center::VarVar { i, j } = c else { unreachable!() };
            let moved = toroidal::Center::VarVar { i: pos[i], j: pos[j] };
            let a = blowup(&p, &c).unwrap();
            let b = blowup(&q, &moved).unwrap();
            for (x, y) in a.iter().zip(b.iter()) {
                prop_assert_eq!(x.label, y.label);
                prop_assert_eq!(uniform_point(&x.presentation).unwrap(), uniform_point(&y.presentation).unwrap());
            }
        }
    }

    #[test]
    fn lift_commutes_with_permutation((p, perm) in f5_with_perm()) {
        prop_assume!(is_principal(&p));
        let a = lift(&p).unwrap();
        let b = lift(&p.permute_columns(&perm)).unwrap();
        prop_assert_eq!(a.image, b.image);
        prop_assert_eq!(a.lifted.permute_columns(&perm), b.lifted);
    }

    #[test]
    fn run_ends_principal_and_lifts((u, v) in rows(2..=3, 5)) {
        let Ok(p) = MonomialPresentation::in_chart(LocalForm::f5(&u, &v), u.len(), 1) else { return Ok(()) };
        let s = Scenario::new(u.len(), vec![true], vec![p]).unwrap();
        let (end, _) = run(&s, 100_000).unwrap();
        prop_assert!(end.active().next().is_none());
        for leaf in end.leaves() {
            let l = lift(&leaf.presentation).unwrap();
            prop_assert!(l.template.check().is_ok());
        }
    }

    #[test]
    fn rank_agrees_with_oracle((u, v) in rows(1..=4, 6)) {
        let (u, v) = (ExponentRow::from_u64s(&u), ExponentRow::from_u64s(&v));
        prop_assert_eq!(rank2(&u, &v), oracle_rank(&u, &v));
    }

    #[test]
    fn invalid_one_points_are_rejected((u, v) in rows(1..=3, 4)) {
        let ok = MonomialPresentation::in_chart(LocalForm::f1(&u, &v), u.len() + 1, 1).is_ok();
        let expected = u.iter().all(|&a| a > 0) && u.iter().zip(&v).all(|(a, b)| b <= a);
        prop_assert_eq!(ok, expected);
    }

    #[test]
    fn scenario_json_round_trips((u, v) in rows(2..=3, 6)) {
        let form = LocalForm::f5(&u, &v);
        prop_assume!(MonomialPresentation::in_chart(form.clone(), u.len(), 1).is_ok());
        let text = format!(
            r#"{{"version":1,"n":{},"m_charts":1,"q_in_e":[true],"presentations":[{}]}}"#,
            u.len(),
            serde_json::json!({"chart": 1, "form": "F5", "u": u, "v": v})
        );
        let f = ScenarioFile::from_json(&text).unwrap();
        prop_assert_eq!(&f.presentations[0].form, &form);
        prop_assert_eq!(ScenarioFile::from_json(&f.to_json()).unwrap(), f);
    }
}

#[test]
fn huge_exponents_survive_json() {
    let big = "123456789012345678901234567890";
    let text = format!(
        r#"{{"version":1,"n":2,"m_charts":1,"q_in_e":[true],"presentations":[{{"chart":1,"form":"F5","u":["{big}",0],"v":[0,3]}}]}}"#
    );
    let f = ScenarioFile::from_json(&text).unwrap();
    let again = ScenarioFile::from_json(&f.to_json()).unwrap();
    assert_eq!(f, again);
    assert!(f.to_json().contains(big));
}
