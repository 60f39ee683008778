//! Dimension of the space of partial derivatives of elementary symmetric
//! polynomials, set against the depth-3 lower bound `binom(n, d)`.

use seplab::functions::elementary_symmetric;
use seplab::measures::{dim_partials, dim_partials_with, partial_deriv_matrix, PartialsOptions};
use seplab::Field;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    println!("{:>3} {:>3} {:>6} {:>8} {:>10}", "n", "d", "dim", "binom", "rows x cols");
    for n in 4..=8usize {
        for d in 1..=(n / 2).min(3) {
            let f = elementary_symmetric(2 * d, n, q)?;
            let m = partial_deriv_matrix(&f)?;
            println!(
                "{n:>3} {d:>3} {:>6} {:>8} {:>5} x {}",
                dim_partials(&f),
                binom(n as u64, d as u64),
                m.rows(),
                m.cols()
            );
        }
    }

    let f = elementary_symmetric(4, 8, q)?;
    let without_f = PartialsOptions { include_order_zero: false, max_order: None };
    println!("e_{{4,8}} with f itself: {}, without: {}", dim_partials(&f), dim_partials_with(&f, without_f));
    Ok(())
}
