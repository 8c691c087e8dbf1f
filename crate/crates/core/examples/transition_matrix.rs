use pstneps::spectral::{transition, transition_full_spectrum};
use pstneps::{NepsSpec, RationalAngle, Time};

fn main() -> pstneps::Result<()> {
    let spec = NepsSpec::from_rows(&[4, 2], &[&[1, 1]])?;
    let t = RationalAngle::HALF_PI;
    let h = transition(&spec, t)?;
    println!("H({t:?}) for K_4 x K_2:\n{h:?}");
    println!("unitarity residual {:.1e}", h.unitarity_residual());

    let full = transition_full_spectrum(&spec, t)?;
    println!("product vs full spectrum: {:.1e}", h.max_norm_diff(&full)?);

    let raw = transition(&spec, Time::Real(0.3))?;
    println!("|H(0.3)[0,0]| = {:.6}", raw[(0, 0)].norm());
    Ok(())
}
