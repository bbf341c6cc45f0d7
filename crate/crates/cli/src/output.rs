//! Output formatting helpers: all numeric output is plain decimal strings,
//! never locale-formatted; JSON objects use sorted, stable field layouts.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Stable JSON envelope: every structured output carries the subcommand
/// name and the reproducibility seed.
#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub command: &'static str,
    pub seed: u64,
    #[serde(flatten)]
    pub body: T,
}

pub fn print_json<T: Serialize>(command: &'static str, seed: u64, body: T) {
    let env = Envelope { command, seed, body };
    println!("{}", serde_json::to_string_pretty(&env).expect("json serialization"));
}
