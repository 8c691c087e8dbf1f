use pstneps::io::{load_spec, save_spec, SpecDocument};
use pstneps::NepsSpec;

fn main() -> pstneps::Result<()> {
    let spec = NepsSpec::hamming(&[4, 2, 2])?;
    let path = std::env::temp_dir().join("pstneps-h422.json");
    save_spec(&path, &SpecDocument::from_spec(&spec, Some("H(4,2,2)".into())))?;
    let (doc, back) = load_spec(&path)?;
    println!("{} round-trips: {}", doc.name.unwrap_or_default(), back == spec);
    Ok(())
}
