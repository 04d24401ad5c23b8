//! Prints the four condition scores of every pinned scenario.
//!
//! `cargo run --example presets`

use twirlmit::mitigation::{mitigate_pipeline, Condition};
use twirlmit::scenarios::Preset;

fn main() -> twirlmit::Result<()> {
    for preset in Preset::ALL {
        let s = preset.scenario();
        let report = mitigate_pipeline(&s.circuit, &s.noise, &s.config, None)?;
        print!("{preset:<12}");
        for (cond, q) in Condition::ALL.iter().zip(report.exact.conditions()) {
            print!("  {}={:.4}", cond.name(), s.target.score(&q)?);
        }
        println!();
    }
    Ok(())
}
