use tilewalk::verify::{run_suite, Suite, VerifyOptions};

#[test]
fn every_suite_passes_offline() {
    let checks = run_suite(Suite::All, &VerifyOptions::default());
    assert!(checks.len() > 40);
    for c in &checks {
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn sharded_theorem_suite_agrees() {
    let opts = VerifyOptions { shards: 4, brute_w_upto: 8, ..VerifyOptions::default() };
    assert!(run_suite(Suite::Theorems, &opts).iter().all(|c| c.passed));
}

#[test]
fn tiny_budget_fails_brute_legs() {
    let opts = VerifyOptions { budget: tilewalk::walk::Budget::new(10), ..VerifyOptions::default() };
    let checks = run_suite(Suite::Theorems, &opts);
    let brute: Vec<_> = checks.iter().filter(|c| c.name.contains("brute")).collect();
    assert!(!brute.is_empty());
    assert!(brute.iter().all(|c| !c.passed));
}

/// Downloads a b-file into a fresh cache. Runs only with
/// `TILEWALK_ONLINE_TESTS=1`, since the default test run is hermetic.
#[cfg(feature = "net")]
#[test]
fn cold_fetch_creates_cache_file() {
    if std::env::var("TILEWALK_ONLINE_TESTS").as_deref() != Ok("1") {
        eprintln!("skipped: set TILEWALK_ONLINE_TESTS=1 to run");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let (b, src) =
        tilewalk::oeis::fetch_bfile_with("A030186", dir.path(), Some(&tilewalk::oeis::UreqTransport)).unwrap();
    assert_eq!(src, tilewalk::oeis::Source::Network);
    assert!(dir.path().join("b030186.txt").exists());
    assert!(b.entries.len() >= 20);
}
