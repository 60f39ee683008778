//! A binary quadratic form under a symbolic linear substitution: the
//! discriminant picks up the square of the determinant.
//!
//! Variables: x1, x2 are the form's variables, x3..x5 its coefficients
//! (a, b, c) and x6..x9 the matrix entries.

use seplab::{Field, Poly};

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    let n = 9;
    let v = |i| Poly::var(n, q, i);
    let f = Poly::parse(n, q, "x3*x1^2 + x4*x1*x2 + x5*x2^2")?;

    let mut images: Vec<Poly> = (0..n).map(v).collect();
    images[0] = &(&v(5) * &v(0)) + &(&v(6) * &v(1));
    images[1] = &(&v(7) * &v(0)) + &(&v(8) * &v(1));
    let g = f.compose(&images)?;

    // coefficient of x1^i x2^j in g, as a polynomial in the remaining variables
    let coeff = |i: u32, j: u32| {
        let terms = g.terms().filter(|(m, _)| m.exps()[0] == i && m.exps()[1] == j).map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e[0] = 0;
            e[1] = 0;
            (e, c.clone())
        });
        Poly::from_terms(n, q, terms)
    };
    let (a, b, c) = (coeff(2, 0)?, coeff(1, 1)?, coeff(0, 2)?);
    let four = q.from_i64(4);
    let disc_after = &(&b * &b) - &(&a * &c).scale(&four);

    let det = &(&v(5) * &v(8)) - &(&v(6) * &v(7));
    let disc = &(&v(3) * &v(3)) - &(&v(2) * &v(4)).scale(&four);
    let predicted = &(&det * &det) * &disc;

    println!("a' = {a}");
    println!("b' = {b}");
    println!("c' = {c}");
    println!("b'^2 - 4a'c' == det^2 (b^2 - 4ac): {}", disc_after == predicted);
    Ok(())
}
