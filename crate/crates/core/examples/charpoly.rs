//! Exact characteristic polynomial of an integer matrix and its radical.

use sunada::algebra::{int_matrix, integer_charpoly, poly_radical};

fn main() -> sunada::Result<()> {
    // adjacency of the 4-cycle
    let m = int_matrix(&[vec![0, 1, 0, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
    let p = integer_charpoly(&m)?;
    println!("charpoly: {p}");
    println!("radical:  {}", poly_radical(&p)?);
    Ok(())
}
