//! Twisted horizontal subgroups of N₃(F_4): almost conjugate, and conjugate
//! exactly when the twists differ by a multiplication.

use sunada::suites::twist_lemma_suite;

fn main() -> sunada::Result<()> {
    for (p, n) in [(2, 2), (3, 2)] {
        let r = twist_lemma_suite(p, n)?;
        println!(
            "p={p} n={n}: |G|={} maps={} pairs={} classes={} (expected {}) confirmed={}",
            r.group_order, r.maps, r.pairs, r.conjugacy_classes, r.expected_classes, r.confirmed
        );
    }
    Ok(())
}
