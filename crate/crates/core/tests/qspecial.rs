use qtau_core::identities::{glim_errors, identity_suite};
use qtau_core::num::Precision;

#[test]
fn identity_suite_at_50_digits() {
    let t = std::time::Instant::now();
    let res = identity_suite(100, 2024, Precision::digits(50));
    for r in &res {
        println!(
            "{:50} {:4} {:8.2} {}",
            r.name, r.trials, r.max_log10, r.passed
        );
    }
    println!("{:?}", t.elapsed());
    for r in &res {
        assert!(r.passed, "{}: {}", r.name, r.max_log10);
        assert!(r.name.starts_with("Glim") || r.max_log10 < -40.0);
    }
}

#[test]
fn glim_errors_shrink() {
    let e = glim_errors(1.5, Precision::digits(30)).unwrap();
    assert!(e[0] > e[1] && e[1] > e[2], "{e:?}");
}
