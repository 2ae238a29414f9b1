//! Lifting through the blowup of the base point and classifying the
//! lifts, for two rounds.
//!
//!     cargo run --example descent

use toroidal::descent::{run_rounds, BasePoint, RoundBudget, Slope};
use toroidal::{LocalForm, MonomialPresentation};

fn main() {
    // chart 1 has one branch of E through q, chart 2 both
    let ps = vec![
        MonomialPresentation::in_chart(LocalForm::f1(&[3], &[1]), 2, 1).unwrap(),
        MonomialPresentation::in_chart(LocalForm::f5(&[2, 0], &[0, 1]), 2, 2).unwrap(),
    ];
    let base = BasePoint::from_charts(vec![1, 2]);
    let rounds = run_rounds(2, base, ps, &[Slope::Zero], RoundBudget::default()).unwrap();
    for r in &rounds {
        println!("round {} ({} blowups)", r.round, r.trace.steps.len());
        for leaf in &r.leaves {
            let upgraded = if leaf.template != leaf.lift.template { "  (upgraded)" } else { "" };
            println!(
                "  {} {} -> at {}: {}{upgraded}",
                leaf.id,
                leaf.presentation.form(),
                leaf.lift.image,
                leaf.template
            );
        }
    }
}
