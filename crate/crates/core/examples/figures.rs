//! Writes every figure's data set to a directory (default `figures/`) and
//! reports its shape check.

use std::path::PathBuf;

use pbgsim::harness::{run_figure, shape_check, write_record, FigureName, FigureOverrides};

fn main() -> pbgsim::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("figures"), PathBuf::from);
    for name in FigureName::ALL {
        let record = run_figure(name, &FigureOverrides::default())?;
        let path = dir.join(format!("{name}.csv"));
        write_record(&record, &path)?;
        let shape = match shape_check(name, &record) {
            Ok(()) => "shape ok".to_string(),
            Err(e) => e,
        };
        println!(
            "{name}: {} rows -> {} ({shape})",
            record.rows.len(),
            path.display()
        );
    }
    Ok(())
}
