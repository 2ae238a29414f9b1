//! Scenario file in, trace out, trace replayed.
//!
//!     cargo run --example run_and_verify [scenario.json]

use toroidal::cli::{render_text, run_scenario, verify_trace};
use toroidal::scenario_file::ScenarioFile;

const DEFAULT: &str = r#"{
  "version": 1,
  "n": 3,
  "m_charts": 2,
  "q_in_e": [true, false],
  "presentations": [
    { "chart": 1, "form": "F5", "u": [3, 0, 1], "v": [0, 2, 0] },
    { "chart": 2, "form": "F6" }
  ],
  "y_blowups": [{ "point": "infinite" }]
}"#;

fn main() {
    let file = match std::env::args().nth(1) {
        Some(path) => ScenarioFile::load(path.as_ref()),
        None => ScenarioFile::from_json(DEFAULT).map_err(toroidal::scenario_file::LoadError::Schema),
    };
    let file = match file {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let doc = run_scenario(&file, None);
    print!("{}", render_text(&doc.canonical));
    match verify_trace(&doc.canonical) {
        Ok(r) => println!("verified: {} rounds, {} steps, {} leaves", r.rounds, r.steps, r.leaves),
        Err(v) => println!("verification failed: {v}"),
    }
}
