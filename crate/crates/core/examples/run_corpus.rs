//! Runs every check on the bundled fixtures and prints one line per instance.

use std::path::Path;

use skewrec::cli::{collect_paths, run_file, Command, Options};
use skewrec::report::Verdict;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let paths = collect_paths(&[dir]).unwrap();
    for p in paths {
        let report = run_file(Command::All, &p, &Options::default()).unwrap();
        println!(
            "{:<22} {:>2} checks, {} pass, {} fail, {} inconclusive",
            report.instance,
            report.checks.len(),
            report.count(Verdict::Pass),
            report.count(Verdict::Fail),
            report.inconclusive()
        );
    }
}
