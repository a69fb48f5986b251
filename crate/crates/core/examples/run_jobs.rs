//! Running CLI jobs from the library.

use sunada::job::{parse_job, run_job};

fn main() {
    let jobs = [
        r#"{"kind":"heisenberg_suite","p":2,"n":2}"#,
        r#"{"group":{"type":"affine","p":3,"n":2}}"#,
        r#"{"forms":{"field":{"minpoly":[-2,0,1]},"X":"R","n":4,"action":"search_admissible","height":3}}"#,
        r#"{"kind":"certify","group":{"type":"symmetric","n":3}}"#,
    ];
    for text in jobs {
        match parse_job(text) {
            Ok(job) => {
                let r = run_job(&job);
                println!("{} {:?} {}", job.kind.name(), r.status, &r.job_hash[..16]);
            }
            Err(e) => println!("rejected: {e}"),
        }
    }
}
