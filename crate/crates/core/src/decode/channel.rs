//! Bit-interleaved BPSK over AWGN, folded into per-symbol reliabilities.

use rand::Rng;
use rand_distr::StandardNormal;

use super::message::MessageVec;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

/// Per-bit penalty used for the noiseless (hard) channel.
pub const NOISELESS_PENALTY: f64 = 64.0;

/// Noise standard deviation for a given Eb/N0 (dB) and code rate, with unit
/// energy per coded bit.
pub fn sigma_for_ebn0(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidParameters(format!(
            "code rate {rate} is not in (0, 1]"
        )));
    }
    let ebn0 = 10f64.powf(ebn0_db / 10.0);
    Ok((1.0 / (2.0 * rate * ebn0)).sqrt())
}

/// BPSK-maps every bit of every symbol (0 → +1, 1 → −1), adds Gaussian
/// noise of standard deviation `sigma`, and scores each candidate symbol by
/// the summed |LLR| of the bits where it disagrees with the hard decision.
pub fn channel_reliability<R: Rng + ?Sized>(
    field: &Field,
    tx: &[Gf],
    sigma: f64,
    rng: &mut R,
) -> Result<Vec<MessageVec>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidSigma(sigma));
    }
    let m = field.m() as usize;
    let q = field.q();
    let scale = 2.0 / (sigma * sigma);
    let mut out = Vec::with_capacity(tx.len());
    let mut mags = vec![0.0; m];
    for sym in tx {
        let mut hard = 0usize;
        for (bit, mag) in mags.iter_mut().enumerate() {
            let s = if sym.bits() >> bit & 1 == 1 {
                -1.0
            } else {
                1.0
            };
            let noise: f64 = rng.sample(StandardNormal);
            let y = s + sigma * noise;
            if y < 0.0 {
                hard |= 1 << bit;
            }
            *mag = (scale * y).abs();
        }
        let vals = (0..q)
            .map(|a| {
                let diff = a ^ hard;
                (0..m).filter(|b| diff >> b & 1 == 1).map(|b| mags[b]).sum()
            })
            .collect();
        out.push(MessageVec::new(vals).normalized());
    }
    Ok(out)
}

/// Zero-noise limit: the transmitted symbol scores 0 and every other symbol
/// scores [`NOISELESS_PENALTY`] per disagreeing bit.
pub fn noiseless_reliability(field: &Field, tx: &[Gf]) -> Vec<MessageVec> {
    tx.iter()
        .map(|sym| {
            let vals = (0..field.q())
                .map(|a| (a ^ sym.index()).count_ones() as f64 * NOISELESS_PENALTY)
                .collect();
            MessageVec::new(vals)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn noiseless_marks_the_sent_symbol() {
        let f = Field::new(3).unwrap();
        let msgs = noiseless_reliability(&f, &[Gf(5), Gf(0)]);
        assert_eq!(msgs[0].argmin(), 5);
        assert_eq!(msgs[0][5], 0.0);
        assert!(msgs[0]
            .as_slice()
            .iter()
            .enumerate()
            .all(|(i, &v)| i == 5 || v >= NOISELESS_PENALTY));
        assert!(msgs[1].is_normalized());
    }

    #[test]
    fn single_bit_penalty_splits_field_in_half() {
        let f = Field::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let msgs = channel_reliability(&f, &[Gf(0); 50], 0.8, &mut rng).unwrap();
        for m in &msgs {
            assert!(m.is_normalized());
            // Each bit's magnitude appears in exactly q/2 entries: those that
            // disagree with the hard decision on that bit.
            let hard = m.argmin();
            for bit in 0..3 {
                let count = (0..8).filter(|a| (a ^ hard) >> bit & 1 == 1).count();
                assert_eq!(count, 4);
            }
            // entry for a single flipped bit equals that bit's penalty alone
            let total: f64 = (0..3).map(|b| m[hard ^ (1 << b)]).sum();
            assert!((m[hard ^ 7] - total).abs() < 1e-9);
        }
    }

    #[test]
    fn reproducible_and_validated() {
        let f = Field::new(2).unwrap();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            channel_reliability(&f, &[Gf(1), Gf(2), Gf(3)], 0.7, &mut rng).unwrap()
        };
        assert_eq!(run(11), run(11));
        assert_ne!(run(11), run(12));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(channel_reliability(&f, &[Gf(0)], 0.0, &mut rng).is_err());
        assert!(channel_reliability(&f, &[Gf(0)], -1.0, &mut rng).is_err());
    }

    #[test]
    fn sigma_from_snr() {
        let s = sigma_for_ebn0(0.0, 0.5).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(sigma_for_ebn0(1.0, 0.0).is_err());
    }
}
