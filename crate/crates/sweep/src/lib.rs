//! Control-parameter sweeps of spin chains: free energy, entropy, mean values
//! and entanglement at each grid point, finite-difference markers, CSV output.

pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use config::{parse_config, parse_config_str, SweepConfig};
pub use error::{Result, SweepError};
pub use output::write_csv;
pub use sweep::{run_sweep, SingularityReport, SweepOutput, SweepRecord};
