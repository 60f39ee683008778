//! Products of test modules vanish where either factor vanishes.

use seplab::group::CoeffSpace;
use seplab::measures::Measure;
use seplab::sepmod::{module_product, SpanBasis, TestModule};
use seplab::{Field, Poly};

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    let space = CoeffSpace::homogeneous(2, 2, q);
    let k = space.dim();
    let a = TestModule::explicit(space.clone(), SpanBasis::from_polys(k, q, [Poly::var(k, q, 0)])?)?;
    let c = TestModule::explicit(space.clone(), SpanBasis::from_polys(k, q, [Poly::var(k, q, 2)])?)?;
    let ac = module_product(&a, &c)?;
    println!("{ac} materializes to {:?}", ac.materialize()?.map(|s| s.basis().iter().map(|p| p.to_string()).collect::<Vec<_>>()));

    for f in ["x1^2 + x2^2", "x1*x2 + x2^2", "x1*x2"] {
        let f = Poly::parse(2, q, f)?;
        println!("{f:<14} a: {:<5} c: {:<5} a*c: {}", a.vanishes_on(&f)?, c.vanishes_on(&f)?, ac.vanishes_on(&f)?);
    }

    let rank_le_1 = TestModule::minors(space.clone(), Measure::dim_partials(), 2);
    let squares = module_product(&rank_le_1, &a)?;
    let f = Poly::parse(2, q, "x1*x2")?;
    println!("{squares} on {f}: {}", squares.vanishes_on(&f)?);
    Ok(())
}
