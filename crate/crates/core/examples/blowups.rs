//! The three charts of a permissible blowup on each kind of point.
//!
//!     cargo run --example blowups

use toroidal::{blowup, enumerate_centers, is_principal, LocalForm, MonomialPresentation};

fn show(form: LocalForm, n: usize) {
    let p = MonomialPresentation::in_chart(form, n, 1).unwrap();
    println!("{p}");
    for c in enumerate_centers(&p) {
        println!("  center {c}");
        for d in blowup(&p, &c).unwrap().iter() {
            let tag = if is_principal(&d.presentation) { "principal" } else { "" };
            println!("    {:20} {} {tag}", format!("{:?}", d.label), d.presentation.form());
        }
    }
}

fn main() {
    show(LocalForm::f1(&[3], &[1]), 2);
    show(LocalForm::f5(&[2, 0], &[0, 3]), 2);
    show(LocalForm::f5(&[1, 1, 1], &[1, 0, 2]), 3);
    show(LocalForm::F6, 2);
}
