//! The braid move in I2(m) turns a square into an (m + 2)-gon.

use subword_complex::demo::demo_i2;

fn main() -> subword_complex::Result<()> {
    for m in 3..=8 {
        let d = demo_i2(m)?;
        let r = &d.report;
        println!(
            "m = {m}: case {}, f(delta2) = {:?}, f(delta1) = {:?}, gamma_1 gain {:?}, witness verified {}",
            r.case,
            r.delta2.f,
            r.delta1.f,
            d.gamma1_gain,
            r.is_verified()
        );
    }
    Ok(())
}
