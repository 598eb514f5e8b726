// Drive the batch front end in-process: load a problem file, verify and solve it,
// and read a profile back from the CSV output.

use std::path::Path;

use singular_periodic::cli::{read_profile, run, Command, RunConfig};

fn main() -> singular_periodic::Result<()> {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/variable.toml");
    let out = std::env::temp_dir().join("singper-config-example");

    for command in [Command::Constants, Command::Verify, Command::Solve] {
        let mut rc = RunConfig::new(command, &config);
        rc.out = out.clone();
        let summary = run(&rc, &mut std::io::stdout())?;
        for file in &summary.files {
            println!("-> {}", file.display());
        }
    }

    let u = read_profile(&out.join("profile_1.csv"), 2.0)?;
    println!("reloaded profile: n = {}, m = {}, norm = {:.12}", u.n(), u.m(), u.norm());
    Ok(())
}
