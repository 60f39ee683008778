//! Rank measures are unchanged by invertible linear changes of variables,
//! while a naive measure like the number of terms is not.

use seplab::functions::{determinant_poly, elementary_symmetric};
use seplab::group::{invariance_check, invariance_check_exhaustive, random_invertible};
use seplab::measures::Measure;
use seplab::seed::rng_from_seed;
use seplab::Field;

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    let f = elementary_symmetric(2, 4, q)?;
    let g = random_invertible(4, q, &mut rng_from_seed(1), 3);
    println!("f      = {f}");
    println!("f(Ax)  = {}", g.apply(&f)?);

    let measures =
        [Measure::dim_partials(), Measure::Shifted { order: 1, shift_degree: 1 }, Measure::TermCount];
    for m in &measures {
        let rep = invariance_check(m, &f, 20, 7)?;
        println!("{:<13} base {:>3}, invariant over 20 maps: {}", m.name(), rep.base_value, rep.all_equal);
    }

    // every element of GL_3(F_2), not a sample
    let det = determinant_poly(2, Field::Prime(2))?;
    let exhaustive = invariance_check_exhaustive(&Measure::dim_partials(), &elementary_symmetric(2, 3, Field::Prime(2))?)?;
    println!("e_{{2,3}} over F_2, all {} elements of GL_3: {}", exhaustive.values.len(), exhaustive.all_equal);
    println!("det_2 over F_2 has {} partials", Measure::dim_partials().evaluate(&det)?);
    Ok(())
}
