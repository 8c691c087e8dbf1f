use pstneps::closed_form::{closed_form, delta_case_table, delta_from_factors, ClosedForm};
use pstneps::spectral::transition;
use pstneps::NepsSpec;

fn main() -> pstneps::Result<()> {
    let spec = NepsSpec::from_rows(&[4, 2, 2], &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]])?;
    let (m, rec) = closed_form(&spec, &ClosedForm::MixedQuarter)?;
    let h = transition(&spec, rec.time)?;
    println!("rule {} at {:?}: phase {} shift {}", rec.rule, rec.time, rec.phase, rec.shift);
    println!("deviation from H: {:.1e}", m.max_norm_diff(&h)?);
    println!("δ table {} / product {}", delta_case_table(&spec)?, delta_from_factors(&spec));

    let fiber = NepsSpec::from_rows(&[6, 2, 2], &[&[1, 0, 0], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1], &[0, 1, 0]])?;
    let (m, rec) = closed_form(&fiber, &ClosedForm::MixedFiber)?;
    println!("rule {}: phase {} shift {}, deviation {:.1e}", rec.rule, rec.phase, rec.shift, m.max_norm_diff(&transition(&fiber, rec.time)?)?);
    Ok(())
}
