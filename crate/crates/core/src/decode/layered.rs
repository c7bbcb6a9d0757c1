//! Layered Min-Max decoding.
//!
//! For every check row of the current layer:
//! 1. extrinsic `L_cv = L_v - R_cv` using the `R_cv` stored for this row by
//!    the previous iteration (zero before the first),
//! 2. `R_cv` from the Min-Max check node in the label-permuted domain,
//! 3. posterior `L_v = L_cv + R_cv`, renormalized.
//!
//! Layers are processed top to bottom; posteriors updated by one layer are
//! seen by the next within the same iteration.

use super::message::{check_node_min_max, permute_message, Direction, MessageVec, Quantizer};
use crate::construct::ParityCheck;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

/// Reliability given to nonzero symbols by a degree-1 check.
pub const DEGREE_ONE_PENALTY: f64 = 1.0e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partition {
    /// One layer per CPM block row (`q - 1` rows).
    LayerI,
    /// One layer per row of `H`.
    LayerII,
}

impl Partition {
    pub fn name(self) -> &'static str {
        match self {
            Partition::LayerI => "layer1",
            Partition::LayerII => "layer2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSchedule {
    pub partition: Partition,
    pub layers: Vec<Vec<usize>>,
}

impl LayerSchedule {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Rows per layer.
    pub fn height(&self) -> usize {
        self.layers.first().map_or(0, Vec::len)
    }
}

/// Partitions the rows of `h` into layers and checks that no column is hit
/// twice inside a layer.
pub fn build_layer_schedule(h: &ParityCheck, partition: Partition) -> Result<LayerSchedule> {
    let layers: Vec<Vec<usize>> = match partition {
        Partition::LayerI => {
            let bs = h.block_size();
            (0..h.rows() / bs)
                .map(|b| (b * bs..(b + 1) * bs).collect())
                .collect()
        }
        Partition::LayerII => (0..h.rows()).map(|r| vec![r]).collect(),
    };
    let mut seen = vec![usize::MAX; h.cols()];
    for (t, layer) in layers.iter().enumerate() {
        for &r in layer {
            for &(c, _) in h.row(r) {
                if seen[c] == t {
                    return Err(Error::InvalidSchedule(format!(
                        "column {c} appears twice in layer {t}"
                    )));
                }
                seen[c] = t;
            }
        }
    }
    Ok(LayerSchedule { partition, layers })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoderConfig {
    pub max_iter: usize,
    pub quant: Option<Quantizer>,
    /// Seed for channel simulation; the decoder itself is deterministic.
    pub seed: u64,
    pub early_stop: bool,
    /// Record posteriors after every iteration.
    pub trace: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            max_iter: 10,
            quant: None,
            seed: 0,
            early_stop: true,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub symbols: Vec<Gf>,
    pub iterations: usize,
    pub syndrome_zero: bool,
    /// Posteriors after each iteration, when tracing was requested.
    pub trace: Vec<Vec<MessageVec>>,
}

/// One check-node update with stored-message bookkeeping.
///
/// `posteriors[e]` is the current posterior of the variable on edge `e`
/// (with label `labels[e]`); `stored[e]` holds the previous `R` for that
/// edge and is overwritten with the new one. Returns the new posteriors.
pub fn update_check(
    field: &Field,
    labels: &[Gf],
    posteriors: &[MessageVec],
    stored: &mut [MessageVec],
    quant: Option<&Quantizer>,
) -> Result<Vec<MessageVec>> {
    let dc = labels.len();
    if posteriors.len() != dc || stored.len() != dc {
        return Err(Error::DimensionMismatch(
            "edge count mismatch in check update".into(),
        ));
    }
    if dc == 0 {
        return Ok(Vec::new());
    }
    let extrinsic: Vec<MessageVec> = posteriors
        .iter()
        .zip(stored.iter())
        .map(|(l, r)| {
            let mut e = MessageVec::new(
                l.as_slice()
                    .iter()
                    .zip(r.as_slice())
                    .map(|(a, b)| a - b)
                    .collect(),
            );
            e.normalize();
            if let Some(q) = quant {
                q.apply_msg(&mut e);
            }
            e
        })
        .collect();
    let fresh: Vec<MessageVec> = if dc == 1 {
        let mut v = vec![DEGREE_ONE_PENALTY; field.q()];
        v[0] = 0.0;
        vec![MessageVec::new(v)]
    } else {
        let permuted = extrinsic
            .iter()
            .zip(labels)
            .map(|(m, &h)| permute_message(field, m, h, Direction::Forward))
            .collect::<Result<Vec<_>>>()?;
        check_node_min_max(&permuted)?
            .iter()
            .zip(labels)
            .map(|(m, &h)| permute_message(field, m, h, Direction::Backward))
            .collect::<Result<Vec<_>>>()?
    };
    let mut out = Vec::with_capacity(dc);
    for ((e, mut r), slot) in extrinsic.iter().zip(fresh).zip(stored.iter_mut()) {
        if let Some(q) = quant {
            q.apply_msg(&mut r);
        }
        let mut post = MessageVec::new(
            e.as_slice()
                .iter()
                .zip(r.as_slice())
                .map(|(a, b)| a + b)
                .collect(),
        );
        post.normalize();
        if let Some(q) = quant {
            q.apply_msg(&mut post);
        }
        *slot = r;
        out.push(post);
    }
    Ok(out)
}

/// Posteriors plus the per-edge stored check messages.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderState {
    pub posteriors: Vec<MessageVec>,
    /// `stored[row][e]` for the `e`-th entry of `row`.
    pub stored: Vec<Vec<MessageVec>>,
}

impl DecoderState {
    pub fn new(
        h: &ParityCheck,
        q: usize,
        channel: &[MessageVec],
        quant: Option<&Quantizer>,
    ) -> Self {
        let posteriors = channel
            .iter()
            .map(|m| {
                let mut m = m.clone().normalized();
                if let Some(qz) = quant {
                    qz.apply_msg(&mut m);
                }
                m
            })
            .collect();
        let stored = h
            .row_entries()
            .iter()
            .map(|r| vec![MessageVec::zeros(q); r.len()])
            .collect();
        DecoderState { posteriors, stored }
    }

    pub fn hard_decision(&self) -> Vec<Gf> {
        self.posteriors
            .iter()
            .map(|m| Gf(m.argmin() as u8))
            .collect()
    }
}

pub struct LayeredDecoder<'a> {
    field: &'a Field,
    h: &'a ParityCheck,
    schedule: &'a LayerSchedule,
    config: DecoderConfig,
}

impl<'a> LayeredDecoder<'a> {
    pub fn new(
        field: &'a Field,
        h: &'a ParityCheck,
        schedule: &'a LayerSchedule,
        config: DecoderConfig,
    ) -> Result<Self> {
        if h.block_size() != field.order() {
            return Err(Error::DimensionMismatch(format!(
                "H block size {} does not match GF({})",
                h.block_size(),
                field.q()
            )));
        }
        if schedule.layers.iter().flatten().any(|&r| r >= h.rows()) {
            return Err(Error::DimensionMismatch(
                "schedule references rows outside H".into(),
            ));
        }
        Ok(LayeredDecoder {
            field,
            h,
            schedule,
            config,
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.config
    }

    pub fn init_state(&self, channel: &[MessageVec]) -> Result<DecoderState> {
        if channel.len() != self.h.cols() || channel.iter().any(|m| m.len() != self.field.q()) {
            return Err(Error::DimensionMismatch(format!(
                "{} channel messages for {} columns over GF({})",
                channel.len(),
                self.h.cols(),
                self.field.q()
            )));
        }
        Ok(DecoderState::new(
            self.h,
            self.field.q(),
            channel,
            self.config.quant.as_ref(),
        ))
    }

    /// Processes every row of layer `t`.
    pub fn layer_update(&self, state: &mut DecoderState, t: usize) -> Result<()> {
        for &r in &self.schedule.layers[t] {
            let row = self.h.row(r);
            let labels: Vec<Gf> = row.iter().map(|&(_, h)| h).collect();
            let posts: Vec<MessageVec> = row
                .iter()
                .map(|&(c, _)| state.posteriors[c].clone())
                .collect();
            let new = update_check(
                self.field,
                &labels,
                &posts,
                &mut state.stored[r],
                self.config.quant.as_ref(),
            )?;
            for (&(c, _), p) in row.iter().zip(new) {
                state.posteriors[c] = p;
            }
        }
        Ok(())
    }

    pub fn decode(&self, channel: &[MessageVec]) -> Result<DecodeResult> {
        let mut state = self.init_state(channel)?;
        let mut trace = Vec::new();
        let mut iterations = 0;
        let mut symbols = state.hard_decision();
        let mut syndrome_zero = false;
        for it in 1..=self.config.max_iter {
            for t in 0..self.schedule.len() {
                self.layer_update(&mut state, t)?;
            }
            iterations = it;
            if self.config.trace {
                trace.push(state.posteriors.clone());
            }
            symbols = state.hard_decision();
            syndrome_zero = self.h.is_codeword(self.field, &symbols)?;
            if self.config.early_stop && syndrome_zero {
                break;
            }
        }
        if self.config.max_iter == 0 {
            syndrome_zero = self.h.is_codeword(self.field, &symbols)?;
        }
        Ok(DecodeResult {
            symbols,
            iterations,
            syndrome_zero,
            trace,
        })
    }
}
