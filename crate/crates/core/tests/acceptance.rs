use std::process::ExitCode;
use std::time::Instant;

use virasoro_core::acceptance::criterion;

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=12 {
        let start = Instant::now();
        let o = criterion(id);
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!("[{mark}] {:>2}. {}: {} ({:.2?})", o.id, o.title, o.detail, start.elapsed());
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
