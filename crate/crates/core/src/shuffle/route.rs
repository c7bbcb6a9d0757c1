//! Realizing layer transitions on hardware: fixed wires for Class-I, a
//! Beneš network on the group level for Class-II.

use super::benes::{stage_count, switch_count, switch_count_formula, BenesNetwork};
use super::perm::VnuPermutation;
use super::schedule::{check_alignment, class1_wrap_passes, schedule_class1, SlotPlan};
use crate::construct::{Code, CodeClass};
use crate::decode::{build_layer_schedule, Partition};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fabric {
    /// Fixed interconnect traversed `passes` times.
    FixedWires {
        passes: usize,
    },
    Benes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionRoute {
    pub from: usize,
    pub to: usize,
    /// VNU-level movement.
    pub perm: VnuPermutation,
    /// Group-level component.
    pub groups: VnuPermutation,
    /// Uniform rotation inside each group (fixed wires).
    pub rotate: usize,
    pub fabric: Fabric,
    pub stages: usize,
    pub switches: usize,
    pub control_bits: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingReport {
    pub class: CodeClass,
    pub partition: Partition,
    pub groups: usize,
    /// Network width after padding to a power of two.
    pub width: usize,
    pub stages: usize,
    pub switches: usize,
    pub transitions: Vec<TransitionRoute>,
    /// `None` when every layer lines up with the layer-0 CNU wiring.
    pub misalignment: Option<String>,
}

impl RoutingReport {
    pub fn total_control_bits(&self) -> usize {
        self.transitions.iter().map(|t| t.control_bits).sum()
    }

    pub fn all_verified(&self) -> bool {
        self.transitions.iter().all(|t| t.verified)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "class={} partition={} groups={} width={} stages={} switches={}\n",
            self.class.number(),
            self.partition.name(),
            self.groups,
            self.width,
            self.stages,
            self.switches
        );
        for t in &self.transitions {
            let fabric = match t.fabric {
                Fabric::FixedWires { passes } => format!("wires passes={passes}"),
                Fabric::Benes => "benes".to_string(),
            };
            out.push_str(&format!(
                "transition {}->{} fabric={} groups={} rotate={} stages={} switches={} control_bits={} verified={}\n",
                t.from,
                t.to,
                fabric,
                t.groups.cycle_notation(),
                t.rotate,
                t.stages,
                t.switches,
                t.control_bits,
                yes_no(t.verified)
            ));
        }
        out.push_str(&format!(
            "total configurations={} control_bits={} aligned={}\n",
            self.transitions
                .iter()
                .filter(|t| t.fabric == Fabric::Benes)
                .count(),
            self.total_control_bits(),
            yes_no(self.misalignment.is_none())
        ));
        if let Some(m) = &self.misalignment {
            out.push_str(&format!("misalignment: {m}\n"));
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("from_layer,to_layer,fabric,group_cycles,rotate,stages,switches,control_bits,verified\n");
        for t in &self.transitions {
            let fabric = match t.fabric {
                Fabric::FixedWires { .. } => "wires",
                Fabric::Benes => "benes",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                t.from,
                t.to,
                fabric,
                t.groups.cycle_notation(),
                t.rotate,
                t.stages,
                t.switches,
                t.control_bits,
                t.verified
            ));
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Smallest power of two `>= n`, at least 2.
pub fn padded_width(n: usize) -> usize {
    n.next_power_of_two().max(2)
}

/// Extends a group map with fixed-point dummy terminals up to `width`.
pub fn pad_permutation(groups: &VnuPermutation, width: usize) -> Vec<usize> {
    let mut p = groups.map().to_vec();
    p.extend(groups.len()..width);
    p
}

/// Routes `groups` (padded) and checks the token simulation.
pub fn route_groups(groups: &VnuPermutation) -> Result<(BenesNetwork, bool)> {
    let padded = pad_permutation(groups, padded_width(groups.len()));
    let net = BenesNetwork::route(&padded)?;
    let ok = net.realized() == padded;
    Ok((net, ok))
}

/// Routes every layer transition of `code` under `partition`.
pub fn route_schedule(code: &Code, partition: Partition) -> Result<RoutingReport> {
    let plan = SlotPlan::for_code(code, partition)?;
    let schedule = build_layer_schedule(&code.h, partition)?;
    let misalignment = check_alignment(code, &schedule, &plan)
        .map(|m| format!("layer {} CNU {}: {}", m.layer, m.cnu, m.detail));
    let g = plan.group_size;
    let layers = plan.layers();
    let width = padded_width(plan.groups);
    let mut transitions = Vec::with_capacity(layers);
    let wiring = match code.spec.class {
        CodeClass::ClassI => Some(schedule_class1(plan.groups, g + 1, code.spec.c)?),
        CodeClass::ClassII => None,
    };
    for t in 0..layers {
        let perm = plan.transition(t);
        let (groups, rotate) = perm.factor(g).ok_or_else(|| {
            Error::InvalidSchedule(format!("transition {t} does not act group-wise"))
        })?;
        let route = match &wiring {
            Some(w) => {
                let passes = class1_passes(w, &perm, g, partition, t, layers);
                TransitionRoute {
                    from: t,
                    to: (t + 1) % layers,
                    perm,
                    groups,
                    rotate,
                    fabric: Fabric::FixedWires {
                        passes: passes.unwrap_or(0),
                    },
                    stages: 0,
                    switches: 0,
                    control_bits: 0,
                    verified: passes.is_some(),
                }
            }
            None => {
                let (net, ok) = route_groups(&groups)?;
                if !ok {
                    return Err(Error::InvalidSchedule(format!(
                        "transition {t} is not realized by the network"
                    )));
                }
                TransitionRoute {
                    from: t,
                    to: (t + 1) % layers,
                    perm,
                    groups,
                    rotate,
                    fabric: Fabric::Benes,
                    stages: net.stages(),
                    switches: net.switches(),
                    control_bits: net.control_bits(),
                    verified: ok,
                }
            }
        };
        transitions.push(route);
    }
    let (stages, switches) = match code.spec.class {
        CodeClass::ClassI => (0, 0),
        CodeClass::ClassII => (stage_count(width), switch_count(width)),
    };
    Ok(RoutingReport {
        class: code.spec.class,
        partition,
        groups: plan.groups,
        width,
        stages,
        switches,
        transitions,
        misalignment,
    })
}

/// How many traversals of the fixed Class-I wiring produce `perm`. Layer-I
/// transitions use it once, except the wrap back to layer 0, which needs
/// `order - L + 1` passes. Layer-II transitions combine `k` passes with a
/// fixed intra-group rotation.
fn class1_passes(
    wiring: &VnuPermutation,
    perm: &VnuPermutation,
    group_size: usize,
    partition: Partition,
    t: usize,
    layers: usize,
) -> Option<usize> {
    let order = wiring.order();
    match partition {
        Partition::LayerI => {
            let passes = if t + 1 < layers {
                1
            } else {
                class1_wrap_passes(order, layers)
            };
            (wiring.pow(passes) == *perm).then_some(passes)
        }
        Partition::LayerII => (0..order).find(|&k| {
            let rest = wiring.pow(k).inverse().then(perm);
            rest.factor(group_size)
                .is_some_and(|(grp, _)| grp.is_identity())
        }),
    }
}

/// Class-I group map `i -> (i-1) mod ρ` routed on a Beneš network.
#[derive(Debug, Clone, PartialEq)]
pub struct UnifiedRoute {
    pub network: BenesNetwork,
    pub groups: VnuPermutation,
    pub rotate: usize,
    pub padded_width: usize,
    pub padded_switches: usize,
    /// `ρ(log2 ρ - 1/2)` evaluated at the unpadded width.
    pub unpadded_switches: f64,
    pub verified: bool,
}

pub fn unified_class1_via_benes(rho: usize, q: usize, c: usize) -> Result<UnifiedRoute> {
    let s = schedule_class1(rho, q, c)?;
    let (groups, rotate) = s.factor(q - 1).expect("Class-I schedule is group-wise");
    let (network, verified) = route_groups(&groups)?;
    let padded_width = network.width();
    Ok(UnifiedRoute {
        padded_switches: network.switches(),
        network,
        groups,
        rotate,
        padded_width,
        unpadded_switches: switch_count_formula(rho),
        verified,
    })
}
