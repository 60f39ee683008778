//! Vanishing ideal of GL_2(F_2) and the intersection of annihilators of
//! the rank-bounded span of a polynomial's twists.

use seplab::f2lab::{gk_intersection_test, gl_points, vanishing_ideal_basis, IntersectionStrategy};
use seplab::group::enumerate_gl;
use seplab::{Field, Matrix, Poly};

fn main() -> seplab::Result<()> {
    let f2 = Field::Prime(2);
    let pts = gl_points(2, f2)?;
    let ideal = vanishing_ideal_basis(f2, &pts, 4)?;
    println!("{} points, ideal dimension {}", pts.len(), ideal.dim());
    for p in ideal.polys().iter().take(4) {
        println!("  {p}");
    }

    let f = Poly::parse(4, f2, "x1*x2*x3*x4")?;
    let set = vec![Matrix::identity(f2, 2)];
    for strategy in [IntersectionStrategy::Pairwise, IntersectionStrategy::Stacked] {
        let rep = gk_intersection_test(&f, 2, 0, &set, None, strategy)?;
        println!("{strategy:?}: intersection dim {}, holds {}", rep.intersection_dim, rep.property_holds);
    }

    let f3 = Field::Prime(3);
    let g = Poly::parse(4, f3, "x1*x4 - x2*x3")?;
    let group = enumerate_gl(2, f3)?;
    let rep = gk_intersection_test(&g, 2, 1, &group[..3], None, IntersectionStrategy::Stacked)?;
    println!("det_2 over F_3, r=1: lambda {}, ideal {}, intersection {}", rep.lambda_dim, rep.ideal_dim, rep.intersection_dim);
    Ok(())
}
