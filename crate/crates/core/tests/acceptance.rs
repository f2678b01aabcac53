use opclosure::verify::{run, Suite};

fn main() {
    let reports = run(Suite::All);
    let mut failed = 0;
    for r in &reports {
        println!("{r}");
        failed += usize::from(!r.passed);
    }
    println!(
        "{} of {} criteria passed",
        reports.len() - failed,
        reports.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
