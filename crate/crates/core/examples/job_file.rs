//! Parses a job in the key=value format and renders the wall table as CSV.

use bmwalls::io::{parse_job, run, Command};

const JOB: &str = "\
# two points on the Hirzebruch surface Sigma_1
[surface]
preset = hirzebruch
e = 1
[character]
n = 2
[search]
max_rank = 1
c1_bound = 3
[output]
format = csv
";

fn main() -> bmwalls::Result<()> {
    let job = parse_job(JOB)?;
    print!("{}", run(Command::Walls, &job)?);
    match parse_job("[frame]\nu = 0.5\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("decimals are not accepted"),
    }
    Ok(())
}
