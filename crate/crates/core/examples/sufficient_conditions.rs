use pstneps::analyzer::analyze;
use pstneps::NepsSpec;

fn main() -> pstneps::Result<()> {
    let specs = [
        NepsSpec::from_rows(&[3, 6, 2, 2], &[&[1, 1, 0, 0], &[1, 0, 0, 0]])?,
        NepsSpec::from_rows(&[3, 2, 2], &[&[0, 1, 0], &[0, 0, 1]])?,
        NepsSpec::from_rows(&[4, 2], &[&[1, 1]])?,
        NepsSpec::hamming(&[8, 4, 2, 2])?,
        NepsSpec::from_rows(&[2, 2, 2], &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])?,
    ];
    for spec in &specs {
        let report = analyze(spec, &[], 1e-9)?;
        println!("{:?}", spec.factors());
        for (p, v) in report.predictions.iter().zip(&report.verification) {
            let target = p.target_shift.as_ref().map(|s| s.to_string()).unwrap_or_default();
            println!("  {:<14} {:?} at {:?} {target} confirmed={}", p.rule.to_string(), p.kind, p.time, v.confirmed);
        }
    }
    Ok(())
}
