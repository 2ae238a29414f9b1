//! Runs the driver on a 2-point until every presentation is principal.
//!
//!     cargo run --example principalize [a1 a2 b1 b2]

use toroidal::principalize::run;
use toroidal::{LocalForm, MonomialPresentation, Scenario};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (u, v) = match args.as_slice() {
        [a1, a2, b1, b2] => ([*a1, *a2], [*b1, *b2]),
        _ => ([2, 0], [0, 3]),
    };
    let p = MonomialPresentation::in_chart(LocalForm::f5(&u, &v), 2, 1).expect("valid 2-point");
    let s = Scenario::new(2, vec![true], vec![p]).unwrap();
    let budget = s.default_budget();
    let (end, trace) = run(&s, budget).expect("terminates");
    for step in &trace.steps {
        println!(
            "step {}: {:?} ω = {} on {} -> {}",
            step.index,
            step.phase,
            step.value,
            step.parent_presentation.form(),
            step.after.omega_max
        );
    }
    println!("{} steps, {} leaves", trace.steps.len(), end.leaves().count());
    for leaf in end.leaves() {
        println!("  {} {}", leaf.id, leaf.presentation.form());
    }
}
