//! A minors-of-partials test module vanishes on every sampled depth-3
//! circuit of top fan-in 1 yet not on `e_{4,8}`.

use seplab::circuit::{sample_depth3, verify_nw_bound, EasyClass};
use seplab::functions::elementary_symmetric;
use seplab::group::CoeffSpace;
use seplab::measures::Measure;
use seplab::seed::rng_from_seed;
use seplab::sepmod::{run_separation, TestModule};
use seplab::Field;

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    let c = sample_depth3(8, 4, 1, q, &mut rng_from_seed(3))?;
    let check = verify_nw_bound(&c);
    println!("one sampled circuit: dim = {}, bound s*2^d = {}", check.measure, check.bound);

    let easy: EasyClass = "depth3:8,4,1".parse()?;
    let module = TestModule::minors(CoeffSpace::homogeneous(8, 4, q), Measure::dim_partials(), 16);
    let hard = elementary_symmetric(4, 8, q)?;
    let rep = run_separation(&module, &easy, &hard, "esym:4,8", 40, 1)?;
    println!("module {}", rep.module);
    println!("vanishes on {}/{} easy samples", rep.easy_vanish_count, rep.trials);
    println!("hard rank {}, separating: {}", rep.hard_rank.unwrap_or(0), rep.separating);
    Ok(())
}
