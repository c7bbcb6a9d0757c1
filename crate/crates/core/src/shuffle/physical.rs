//! A decoder that never indexes posteriors by column.
//!
//! Posteriors live in VNU slots. Each CNU is hard-wired to the slots used by
//! its layer-0 row; between layers the slot contents are moved only by the
//! transition fabric (fixed wires for Class-I, a configured Beneš network on
//! the group level plus fixed intra-group rotation for Class-II). Labels are
//! per-layer constants, looked up once from `H` at construction time.

use super::benes::BenesNetwork;
use super::perm::VnuPermutation;
use super::route::{padded_width, route_groups};
use super::schedule::{check_alignment, class1_wrap_passes, schedule_class1, SlotPlan};
use crate::construct::{Code, CodeClass};
use crate::decode::{
    build_layer_schedule, update_check, DecodeResult, DecoderConfig, MessageVec, Partition,
};
use crate::error::{Error, Result};
use crate::gf::Gf;

enum Mover {
    /// A fixed wire permutation applied `passes` times.
    Wires {
        wires: VnuPermutation,
        passes: usize,
    },
    /// Group-level network followed by a fixed rotation inside every group.
    Network { net: BenesNetwork, rotate: usize },
}

pub struct ShuffledDecoder<'a> {
    code: &'a Code,
    config: DecoderConfig,
    /// Slots read by each CNU, from the layer-0 rows.
    wiring: Vec<Vec<usize>>,
    /// `labels[layer][cnu][edge]`.
    labels: Vec<Vec<Vec<Gf>>>,
    movers: Vec<Mover>,
    slot0: VnuPermutation,
}

impl<'a> ShuffledDecoder<'a> {
    pub fn new(code: &'a Code, partition: Partition, config: DecoderConfig) -> Result<Self> {
        let schedule = build_layer_schedule(&code.h, partition)?;
        let plan = SlotPlan::for_code(code, partition)?;
        if let Some(m) = check_alignment(code, &schedule, &plan) {
            return Err(Error::InvalidSchedule(format!(
                "layer {} CNU {} is not aligned: {}",
                m.layer, m.cnu, m.detail
            )));
        }
        let h = &code.h;
        let g = plan.group_size;
        let slot0 = plan.slots[0].clone();
        let wiring: Vec<Vec<usize>> = schedule.layers[0]
            .iter()
            .map(|&r| h.row(r).iter().map(|&(c, _)| slot0.get(c)).collect())
            .collect();
        let labels = schedule
            .layers
            .iter()
            .enumerate()
            .map(|(t, rows)| {
                let back = plan.slots[t].inverse();
                rows.iter()
                    .zip(&wiring)
                    .map(|(&r, slots)| slots.iter().map(|&s| h.get(r, back.get(s))).collect())
                    .collect()
            })
            .collect();
        let layers = plan.layers();
        let movers = match code.spec.class {
            CodeClass::ClassI => {
                let wires = schedule_class1(plan.groups, g + 1, code.spec.c)?;
                let order = wires.order();
                (0..layers)
                    .map(|t| {
                        let want = plan.transition(t);
                        let found = match partition {
                            Partition::LayerI => {
                                let passes = if t + 1 < layers {
                                    1
                                } else {
                                    class1_wrap_passes(order, layers)
                                };
                                (wires.pow(passes) == want).then_some(Mover::Wires {
                                    wires: wires.clone(),
                                    passes,
                                })
                            }
                            // inside a block row: a fixed rotation; at block
                            // boundaries: the layer wiring plus a rotation
                            Partition::LayerII => Some(Mover::Wires {
                                wires: want.clone(),
                                passes: 1,
                            }),
                        };
                        found.ok_or_else(|| {
                            Error::InvalidSchedule(format!(
                                "transition {t} is not a power of the fixed wiring"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            CodeClass::ClassII => (0..layers)
                .map(|t| {
                    let (groups, rotate) = plan.transition(t).factor(g).ok_or_else(|| {
                        Error::InvalidSchedule(format!("transition {t} is not group-wise"))
                    })?;
                    let (net, ok) = route_groups(&groups)?;
                    if !ok {
                        return Err(Error::InvalidSchedule(format!("transition {t} misrouted")));
                    }
                    Ok(Mover::Network { net, rotate })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(ShuffledDecoder {
            code,
            config,
            wiring,
            labels,
            movers,
            slot0,
        })
    }

    fn move_slots(&self, t: usize, slots: Vec<MessageVec>) -> Vec<MessageVec> {
        let g = self.code.field.order();
        match &self.movers[t] {
            Mover::Wires { wires, passes } => (0..*passes).fold(slots, |s, _| wires.apply(&s)),
            Mover::Network { net, rotate } => {
                let groups = slots.len() / g;
                let mut bundles: Vec<Vec<MessageVec>> =
                    slots.chunks(g).map(<[MessageVec]>::to_vec).collect();
                bundles.resize(padded_width(groups), Vec::new());
                let moved = net.simulate(&bundles);
                let mut out = vec![MessageVec::zeros(0); slots.len()];
                for (grp, bundle) in moved.into_iter().take(groups).enumerate() {
                    for (j, m) in bundle.into_iter().enumerate() {
                        out[grp * g + (j + rotate) % g] = m;
                    }
                }
                out
            }
        }
    }

    pub fn decode(&self, channel: &[MessageVec]) -> Result<DecodeResult> {
        let f = &self.code.field;
        let h = &self.code.h;
        if channel.len() != h.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} channel messages for {} columns",
                channel.len(),
                h.cols()
            )));
        }
        let quant = self.config.quant.as_ref();
        let init: Vec<MessageVec> = channel
            .iter()
            .map(|m| {
                let mut m = m.clone().normalized();
                if let Some(qz) = quant {
                    qz.apply_msg(&mut m);
                }
                m
            })
            .collect();
        let mut slots = self.slot0.apply(&init);
        let mut stored: Vec<Vec<Vec<MessageVec>>> = self
            .labels
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|l| vec![MessageVec::zeros(f.q()); l.len()])
                    .collect()
            })
            .collect();
        let back0 = self.slot0.inverse();
        let mut trace = Vec::new();
        let mut iterations = 0;
        let mut symbols: Vec<Gf> = init.iter().map(|m| Gf(m.argmin() as u8)).collect();
        let mut syndrome_zero = false;
        for it in 1..=self.config.max_iter {
            for (t, (labels, store)) in self.labels.iter().zip(stored.iter_mut()).enumerate() {
                for (s, slot_ids) in self.wiring.iter().enumerate() {
                    let posts: Vec<MessageVec> =
                        slot_ids.iter().map(|&p| slots[p].clone()).collect();
                    let new = update_check(f, &labels[s], &posts, &mut store[s], quant)?;
                    for (&p, m) in slot_ids.iter().zip(new) {
                        slots[p] = m;
                    }
                }
                slots = self.move_slots(t, slots);
            }
            iterations = it;
            let posteriors = back0.apply(&slots);
            symbols = posteriors.iter().map(|m| Gf(m.argmin() as u8)).collect();
            if self.config.trace {
                trace.push(posteriors);
            }
            syndrome_zero = h.is_codeword(f, &symbols)?;
            if self.config.early_stop && syndrome_zero {
                break;
            }
        }
        if self.config.max_iter == 0 {
            syndrome_zero = h.is_codeword(f, &symbols)?;
        }
        Ok(DecodeResult {
            symbols,
            iterations,
            syndrome_zero,
            trace,
        })
    }
}
