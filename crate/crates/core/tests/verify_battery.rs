use bellqec::experiment::{verify, VerifyOptions};

#[test]
fn default_battery_passes() {
    let report = verify(&VerifyOptions::default()).unwrap();
    for c in &report.checks {
        println!("{c}");
        for d in &c.details {
            println!("    {d}");
        }
    }
    assert!(report.passed());
}
