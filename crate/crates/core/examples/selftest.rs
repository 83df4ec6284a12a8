use elementary_ops::selftest;

fn main() {
    let report = selftest::run(7, 3, 10);
    for s in &report.suites {
        println!("{:<18} {}/{} ok", s.name, s.trials - s.failures, s.trials);
    }
    println!("passed: {}", report.passed);
}
