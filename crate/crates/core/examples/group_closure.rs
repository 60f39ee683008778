//! Closing a test module under a group: exactly for the symmetric group,
//! by sampling until the span stops growing for GL.

use seplab::group::{all_permutations, CoeffSpace, GroupElement};
use seplab::sepmod::{group_closure, is_fixed_by, ClosureGroup, SpanBasis};
use seplab::{Field, Poly};

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    let space = CoeffSpace::homogeneous(3, 2, q);
    let k = space.dim();
    println!("coefficients of a ternary quadric: {:?}", space.monomials().iter().map(|m| m.exps().to_vec()).collect::<Vec<_>>());

    for i in [0, 1] {
        let t = SpanBasis::from_polys(k, q, [Poly::var(k, q, i)])?;
        let closed = group_closure(&t, &space, ClosureGroup::Symmetric)?;
        let fixed = all_permutations(3)
            .into_iter()
            .map(GroupElement::permutation)
            .all(|g| g.and_then(|g| is_fixed_by(&closed.span, &space, &g)).unwrap_or(false));
        println!("{:?}: dim {} ({}), fixed by S_3: {fixed}", space.monomials()[i].exps(), closed.span.dim(), closed.label);
    }

    let t = SpanBasis::from_polys(k, q, [Poly::var(k, q, 0)])?;
    let gl = group_closure(&t, &space, ClosureGroup::SampledGl { seed: 5 })?;
    println!("GL closure: dim {} after {} samples, stabilized: {}", gl.span.dim(), gl.samples, gl.stabilized);
    Ok(())
}
