//! Local presentations: validation, point type, principality and template
//! matching.
//!
//!     cargo run --example forms

use toroidal::{classify_point, is_principal, match_template, EBranchData, LocalForm, MonomialPresentation};

fn main() {
    let candidates = [
        ("1-point", LocalForm::f1(&[3], &[1]), 2),
        ("1-point, a = b", LocalForm::f1(&[2, 1], &[2, 1]), 3),
        ("2-point", LocalForm::f5(&[2, 0], &[0, 3]), 2),
        ("comparable 2-point", LocalForm::f5(&[1, 1], &[2, 3]), 2),
        ("rank 1", LocalForm::f5(&[2, 4], &[1, 2]), 2),
        ("smooth chart", LocalForm::F6, 2),
    ];
    for (name, form, n) in candidates {
        match MonomialPresentation::in_chart(form, n, 1) {
            Ok(p) => println!(
                "{name:20} {p}  {}-point, principal: {}",
                classify_point(&p),
                is_principal(&p)
            ),
            Err(e) => println!("{name:20} rejected: {e}"),
        }
    }

    // a lifted 1-point u = x1^2 x2, v = x3 is T1 against a single branch
    let p = MonomialPresentation::in_chart(LocalForm::f1(&[2, 1], &[0, 0]), 3, 1).unwrap();
    let e = EBranchData {
        branch_count: 1,
        chart_branches: 1,
    };
    println!("\ntemplate of {p}: {}", match_template(&p, &e).unwrap());
}
