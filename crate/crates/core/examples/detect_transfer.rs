use pstneps::analyzer::{detect_periodic, detect_pst, DEFAULT_TOL};
use pstneps::spectral::transition;
use pstneps::{default_grid, NepsSpec, Time};

fn main() -> pstneps::Result<()> {
    let q3 = NepsSpec::hamming(&[2, 2, 2])?;
    for t in default_grid() {
        let h = transition(&q3, t)?;
        let events = detect_pst(&h, &q3, Time::from(t), DEFAULT_TOL)?;
        if let Some(e) = events.first() {
            println!("{t:?}: {} events, e.g. {:?} -> {:?}", events.len(), e.source, e.target);
        }
        if let Some(p) = detect_periodic(&h, DEFAULT_TOL) {
            println!("{t:?}: periodic, phase {:?}", p.scalar);
        }
    }
    Ok(())
}
