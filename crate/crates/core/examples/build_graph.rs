use pstneps::spectral::neps_spectrum;
use pstneps::{neps_adjacency, NepsSpec};

fn main() -> pstneps::Result<()> {
    // K_3 x K_2 x K_2 with two activation patterns
    let spec = NepsSpec::from_rows(&[3, 2, 2], &[&[1, 1, 0], &[0, 0, 1]])?;
    let a = neps_adjacency(&spec)?;
    println!("{} vertices, degree {}", spec.vertex_count(), spec.degree());
    for i in 0..a.dim() {
        let row: String = a.row(i).iter().map(|z| if z.re > 0.5 { '1' } else { '.' }).collect();
        println!("{row}");
    }
    for (lambda, mult) in neps_spectrum(&spec) {
        println!("eigenvalue {lambda:>3}  x{mult}");
    }
    Ok(())
}
