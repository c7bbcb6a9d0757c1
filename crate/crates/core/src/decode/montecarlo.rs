//! All-zero-codeword Monte-Carlo FER/BER estimation.
//!
//! Trial `k` at SNR index `s` draws its noise from a ChaCha8 stream keyed by
//! the user seed with stream id `(s << 32) | k`, so results do not depend on
//! how trials are spread over worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::channel::{channel_reliability, noiseless_reliability, sigma_for_ebn0};
use super::layered::{build_layer_schedule, DecoderConfig, LayeredDecoder, Partition};
use crate::construct::ParityCheck;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

#[derive(Debug, Clone, PartialEq)]
pub struct SimRow {
    pub snr_db: f64,
    pub trials: u64,
    pub frame_errors: u64,
    pub symbol_errors: u64,
    pub bit_errors: u64,
    pub total_iters: u64,
    /// Code length in symbols.
    pub symbols_per_frame: u64,
    pub bits_per_symbol: u64,
}

impl SimRow {
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.trials as f64
    }

    pub fn ber(&self) -> f64 {
        self.bit_errors as f64
            / (self.trials * self.symbols_per_frame * self.bits_per_symbol) as f64
    }

    pub fn ser(&self) -> f64 {
        self.symbol_errors as f64 / (self.trials * self.symbols_per_frame) as f64
    }

    pub fn avg_iters(&self) -> f64 {
        self.total_iters as f64 / self.trials as f64
    }
}

pub const CSV_HEADER: &str = "snr_db,trials,frame_errors,symbol_errors,fer,ber,avg_iters";

pub fn render_csv(rows: &[SimRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.snr_db,
            r.trials,
            r.frame_errors,
            r.symbol_errors,
            r.fer(),
            r.ber(),
            r.avg_iters()
        ));
    }
    out
}

#[derive(Default, Clone, Copy)]
struct Tally {
    frames: u64,
    symbols: u64,
    bits: u64,
    iters: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            frames: self.frames + o.frames,
            symbols: self.symbols + o.symbols,
            bits: self.bits + o.bits,
            iters: self.iters + o.iters,
        }
    }
}

/// Nominal code rate `1 - rows/cols` used to convert Eb/N0 into a noise level.
pub fn nominal_rate(h: &ParityCheck) -> f64 {
    1.0 - h.rows() as f64 / h.cols() as f64
}

/// Simulates `trials` all-zero frames per SNR point (Eb/N0 in dB; `+inf`
/// means a noiseless channel).
pub fn run_monte_carlo(
    field: &Field,
    h: &ParityCheck,
    snrs_db: &[f64],
    trials: u64,
    partition: Partition,
    config: &DecoderConfig,
) -> Result<Vec<SimRow>> {
    if snrs_db.is_empty() {
        return Err(Error::InvalidParameters("empty SNR list".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParameters(
            "at least one trial is required".into(),
        ));
    }
    let schedule = build_layer_schedule(h, partition)?;
    let mut cfg = config.clone();
    cfg.trace = false;
    let decoder = LayeredDecoder::new(field, h, &schedule, cfg)?;
    let rate = nominal_rate(h);
    let zero = vec![Gf::ZERO; h.cols()];
    let mut rows = Vec::with_capacity(snrs_db.len());
    for (si, &snr) in snrs_db.iter().enumerate() {
        let sigma = if snr == f64::INFINITY {
            None
        } else {
            Some(sigma_for_ebn0(snr, rate)?)
        };
        let tally = (0..trials)
            .into_par_iter()
            .map(|k| -> Result<Tally> {
                let channel = match sigma {
                    None => noiseless_reliability(field, &zero),
                    Some(s) => {
                        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                        rng.set_stream(((si as u64) << 32) | k);
                        channel_reliability(field, &zero, s, &mut rng)?
                    }
                };
                let res = decoder.decode(&channel)?;
                let symbols = res.symbols.iter().filter(|s| !s.is_zero()).count() as u64;
                let bits = res
                    .symbols
                    .iter()
                    .map(|s| s.bits().count_ones() as u64)
                    .sum();
                Ok(Tally {
                    frames: u64::from(symbols > 0),
                    symbols,
                    bits,
                    iters: res.iterations as u64,
                })
            })
            .try_reduce(Tally::default, |a, b| Ok(a + b))?;
        rows.push(SimRow {
            snr_db: snr,
            trials,
            frame_errors: tally.frames,
            symbol_errors: tally.symbols,
            bit_errors: tally.bits,
            total_iters: tally.iters,
            symbols_per_frame: h.cols() as u64,
            bits_per_symbol: field.m() as u64,
        });
    }
    Ok(rows)
}
