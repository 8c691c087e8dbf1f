use pstneps::oracle::{certify, ORACLE_TOL};
use pstneps::spectral::transition;
use pstneps::{default_grid, NepsSpec};

fn main() -> pstneps::Result<()> {
    let spec = NepsSpec::hamming(&[6, 2, 2])?;
    let mut worst = 0.0f64;
    for t in default_grid() {
        let h = transition(&spec, t)?;
        let c = certify(&spec, t.radians(), &h, ORACLE_TOL)?;
        worst = worst.max(c.deviation);
        if !c.passed {
            println!("{t:?} failed: {:.2e}", c.deviation);
        }
    }
    println!("H(6,2,2): worst deviation over the grid {worst:.2e}");
    Ok(())
}
