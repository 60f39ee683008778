//! Distance from MOD_3 to low-degree polynomials over F_2.

use seplab::f2lab::{code_dimension, distance_to_degree, TruthTable, MAX_CODE_DIMENSION};

fn main() -> seplab::Result<()> {
    let t = TruthTable::mod3(3, 0)?;
    println!("MOD_3 on 3 bits: {}", t.bits().iter().map(|&b| if b { '1' } else { '0' }).collect::<String>());
    println!("as a multilinear polynomial: {}", t.to_multilinear()?);

    println!("{:>3} {:>3} {:>9} {:>9}", "n", "d", "distance", "fraction");
    for n in 3..=10 {
        for d in (1..=2).filter(|&d| code_dimension(n, d) <= MAX_CODE_DIMENSION as u64) {
            let rep = distance_to_degree(&TruthTable::mod3(n, 0)?, d)?;
            println!("{n:>3} {d:>3} {:>9} {:>9.4}", rep.distance, rep.distance as f64 / (1u64 << n) as f64);
        }
    }
    let rep = distance_to_degree(&TruthTable::mod3(4, 0)?, 2)?;
    println!("nearest quadratic for n=4: {}", rep.witness);
    Ok(())
}
