//! Exhaustive search over every choice of centers, compared with the
//! driver's single run.
//!
//!     cargo run --release --example oracle

use toroidal::oracle::{exhaustive_search, search_point, Point, SearchBound};
use toroidal::principalize::run;
use toroidal::{LocalForm, MonomialPresentation, OracleError, Scenario};

fn main() {
    for (u, v) in [([2, 0], [0, 3]), ([5, 0], [0, 3]), ([3, 1], [1, 4])] {
        let p = MonomialPresentation::in_chart(LocalForm::f5(&u, &v), 2, 1).unwrap();
        let s = Scenario::new(2, vec![true], vec![p]).unwrap();
        let (_, trace) = run(&s, 1000).unwrap();
        let r = exhaustive_search(&s, &SearchBound::depth(64)).unwrap();
        println!(
            "u={u:?} v={v:?}: driver {} blowups, any choice {}..={} ({} states)",
            trace.steps.len(),
            r.min_depth,
            r.max_depth,
            r.states
        );
    }

    // at a 3-point a bad choice of centers can go on forever
    let p = Point::new(vec![[3, 0], [0, 2], [1, 0]]);
    if let Err(OracleError::BoundExceeded { path, .. }) = search_point(&p, 12) {
        println!("\nchain of {} blowups from {:?}:", path.len(), p.0);
        for step in path.iter().take(6) {
            println!("  {:?} center {:?} child {}", step.point.0, step.center, step.child);
        }
    }
}
