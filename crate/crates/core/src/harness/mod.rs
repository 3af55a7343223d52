//! Parameter sweeps, tabular output, figure presets and engine comparison.

mod compare;
mod figures;
mod io;
mod spec;
mod sweep;

pub use compare::{compare_engines, write_comparison, ComparisonRow};
pub use figures::{figure_spec, run_figure, shape_check, FigureName, FigureOverrides};
pub use io::{
    format_number, header, read_csv, read_record, read_spec, sidecar_path, sidecar_toml, write_csv,
    write_record, Sidecar,
};
pub use spec::{parse_grid, parse_pump, range_grid, Engine, Quantity, SweepSpec};
pub use sweep::{run_sweep, Cell, Flag, Metadata, Row, RunRecord};
