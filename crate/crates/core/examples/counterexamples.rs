use pstneps::reproduce::run_examples_default;

fn main() -> pstneps::Result<()> {
    for c in run_examples_default()? {
        println!("{:<12} {:<46} {}", c.example, c.check, if c.passed { "ok" } else { "FAIL" });
    }
    Ok(())
}
