//! Hessian ranks: the permanent of a 2x2 matrix has a constant Hessian of
//! full rank, while the 3x3 determinant drops rank on singular matrices.

use seplab::functions::{determinant_poly, permanent_poly};
use seplab::measures::{hessian, hessian_rank_at, sample_singular_matrix};
use seplab::seed::rng_from_seed;
use seplab::Field;

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    let perm = permanent_poly(2, q)?;
    for row in hessian(&perm)? {
        println!("{}", row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("  "));
    }

    let det = determinant_poly(3, q)?;
    let id: Vec<_> = [1, 0, 0, 0, 1, 0, 0, 0, 1].iter().map(|&v| q.from_i64(v)).collect();
    println!("rank Hess(det_3) at I: {}", hessian_rank_at(&det, &id)?);

    let mut rng = rng_from_seed(8);
    for field in [q, Field::Prime(7)] {
        let det = determinant_poly(3, field)?;
        let ranks: Vec<usize> = (0..10)
            .map(|_| hessian_rank_at(&det, &sample_singular_matrix(3, field, &mut rng, 3)))
            .collect::<seplab::Result<_>>()?;
        println!("singular points over {field}: {ranks:?}");
    }
    Ok(())
}
