//! Runs every acceptance criterion and prints the reports.

use sl3qt::verify::criteria::{run_all, Options};

fn main() {
    let reports = run_all(&Options::default());
    for r in &reports {
        print!("{}", r.render(false));
    }
    std::process::exit(if reports.iter().all(|r| r.passed()) { 0 } else { 1 });
}
