//! The non-principal locus of a scenario and its invariants Ω and ω.
//!
//!     cargo run --example locus

use toroidal::{locus_report, LocalForm, MonomialPresentation, Scenario};

fn main() {
    let ps = vec![
        MonomialPresentation::in_chart(LocalForm::f5(&[3, 0, 1], &[0, 2, 0]), 3, 1).unwrap(),
        MonomialPresentation::in_chart(LocalForm::f1(&[4, 2], &[1, 2]), 3, 2).unwrap(),
        MonomialPresentation::in_chart(LocalForm::F6, 3, 3).unwrap(),
    ];
    let s = Scenario::new(3, vec![true, true, false], ps).unwrap();
    let report = locus_report(&s);
    for e in &report.centers {
        println!(
            "chart {} {} center {:18} {:?} = {}",
            e.chart_index,
            e.presentation,
            e.center.to_string(),
            e.kind,
            e.value
        );
    }
    println!("Ω max = {}, ω max = {}", report.bigomega_max, report.omega_max);
    println!("next center: {:?}", s.select());
}
