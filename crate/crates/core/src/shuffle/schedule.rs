//! Inter-layer VNU schedules.
//!
//! VNU `i(q-1) + j` holds the posterior of column `j` of column block `i`
//! while layer 0 is processed. Before layer `t` the posteriors are moved so
//! that every row of layer `t` finds its variables on the same VNUs that the
//! corresponding row of layer 0 uses; the CNU wiring therefore never changes.
//! A [`SlotPlan`] records, per layer, where each column currently sits.

use super::index::IndexMatrix;
use super::perm::VnuPermutation;
use crate::construct::{Code, CodeClass};
use crate::decode::{LayerSchedule, Partition};
use crate::error::{Error, Result};
use crate::gf::Gf;

/// Class-I transition: VNU `(i, j)` passes to `((i-1) mod ρ, (j-c) mod (q-1))`.
/// `c = q-1` (the `n = 1` factorization) is a pure group shift.
pub fn schedule_class1(rho: usize, q: usize, c: usize) -> Result<VnuPermutation> {
    if rho == 0 || q < 3 || c > q - 1 {
        return Err(Error::InvalidParameters(format!(
            "Class-I schedule needs rho >= 1 and c <= q-1; got rho = {rho}, q = {q}, c = {c}"
        )));
    }
    let g = q - 1;
    let c = c % g;
    let map = (0..rho * g)
        .map(|v| {
            let (i, j) = (v / g, v % g);
            ((i + rho - 1) % rho) * g + (j + g - c) % g
        })
        .collect();
    VnuPermutation::new(map)
}

/// The fixed wire list `(source VNU, destination VNU)` realizing the Class-I
/// transition.
pub fn class1_static_wiring(rho: usize, q: usize, c: usize) -> Result<Vec<(usize, usize)>> {
    Ok(schedule_class1(rho, q, c)?
        .map()
        .iter()
        .copied()
        .enumerate()
        .collect())
}

/// Passes of the Class-I wiring (of multiplicative order `order`) that bring
/// the last of `layers` layers back into the layer-0 placement.
pub fn class1_wrap_passes(order: usize, layers: usize) -> usize {
    (order + 1 - layers % order) % order
}

/// Class-II transition into layer `v`: the VNUs of group
/// `index(v-1, i mod n) + n⌊i/n⌋` pass to group `index(v, i mod n) + n⌊i/n⌋`
/// (rows of `index` taken mod `n`), unchanged inside the group.
pub fn schedule_class2(
    rho: usize,
    q: usize,
    index: &IndexMatrix,
    v: usize,
) -> Result<VnuPermutation> {
    let n = index.n();
    if v == 0 {
        return Err(Error::InvalidParameters(
            "Class-II transitions start at layer 1".into(),
        ));
    }
    if rho == 0 || !rho.is_multiple_of(n) {
        return Err(Error::InvalidParameters(format!(
            "Class-II schedule needs n | rho; got n = {n}, rho = {rho}"
        )));
    }
    let mut groups = vec![usize::MAX; rho];
    for i in 0..rho {
        let base = n * (i / n);
        let src = index.get((v - 1) % n, i % n) + base;
        let dst = index.get(v % n, i % n) + base;
        groups[src] = dst;
    }
    let groups = VnuPermutation::new(groups)?;
    Ok(VnuPermutation::from_groups(&groups, q - 1, 0))
}

/// Per-layer placement of columns on VNUs: `slots[t].get(col)` is the VNU
/// holding column `col` while layer `t` runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotPlan {
    pub class: CodeClass,
    pub partition: Partition,
    pub group_size: usize,
    pub groups: usize,
    pub slots: Vec<VnuPermutation>,
}

impl SlotPlan {
    pub fn for_code(code: &Code, partition: Partition) -> Result<Self> {
        let g = code.field.order();
        let groups = code.spec.rho;
        let block_rows = code.spec.gamma;
        let rotate = |r: usize| {
            VnuPermutation::from_groups(&VnuPermutation::identity(groups), g, (g - r % g) % g)
        };
        let base: Vec<VnuPermutation> = match code.spec.class {
            CodeClass::ClassI => {
                let s = schedule_class1(groups, g + 1, code.spec.c)?;
                (0..block_rows).map(|k| s.pow(k)).collect()
            }
            CodeClass::ClassII => (0..block_rows)
                .map(|v| class2_group_slots(code, v).map(|p| VnuPermutation::from_groups(&p, g, 0)))
                .collect::<Result<_>>()?,
        };
        let slots = match partition {
            Partition::LayerI => base,
            Partition::LayerII => base
                .iter()
                .flat_map(|b| (0..g).map(move |r| (b, r)))
                .map(|(b, r)| b.then(&rotate(r)))
                .collect(),
        };
        Ok(SlotPlan {
            class: code.spec.class,
            partition,
            group_size: g,
            groups,
            slots,
        })
    }

    pub fn layers(&self) -> usize {
        self.slots.len()
    }

    /// Movement from the placement of layer `t` to that of layer
    /// `(t + 1) mod L`.
    pub fn transition(&self, t: usize) -> VnuPermutation {
        let next = (t + 1) % self.slots.len();
        self.slots[t].inverse().then(&self.slots[next])
    }

    pub fn transitions(&self) -> Vec<VnuPermutation> {
        (0..self.slots.len()).map(|t| self.transition(t)).collect()
    }
}

/// Group placement for base row `v = i·n + k` of a Class-II code: column
/// group `(j, l)` goes to `(idx(δ_i + δ_j), idx(β_k + β_l))`, the group of
/// layer 0 carrying the same base-matrix entry.
fn class2_group_slots(code: &Code, v: usize) -> Result<VnuPermutation> {
    let f = &code.field;
    let (beta, delta) = (&code.indexing.beta, &code.indexing.delta);
    let n = beta.len();
    let (i, k) = (v / n, v % n);
    let pos = |list: &[Gf], x: Gf| list.iter().position(|&e| e == x);
    let map = (0..code.spec.rho)
        .map(|grp| {
            let (j, l) = (grp / n, grp % n);
            let jj = pos(delta, f.add(delta[i], delta[j]));
            let ll = pos(beta, f.add(beta[k], beta[l]));
            match (jj, ll) {
                (Some(jj), Some(ll)) if jj * n + ll < code.spec.rho => Ok(jj * n + ll),
                _ => Err(Error::InvalidSchedule(format!(
                    "base row {v}: column group {grp} has no counterpart inside the first {} groups",
                    code.spec.rho
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    VnuPermutation::new(map).map_err(|e| Error::InvalidSchedule(format!("base row {v}: {e}")))
}

/// First place where a layer's rows do not line up with the layer-0 wiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Misalignment {
    pub layer: usize,
    pub cnu: usize,
    pub detail: String,
}

/// Checks that under `plan`, row `s` of every layer touches exactly the VNUs
/// of row `s` of layer 0 and that its labels are a constant multiple of the
/// layer-0 labels (so each CNU sees the same check up to scaling).
pub fn check_alignment(
    code: &Code,
    schedule: &LayerSchedule,
    plan: &SlotPlan,
) -> Option<Misalignment> {
    let f = &code.field;
    let h = &code.h;
    if plan.layers() != schedule.len() {
        return Some(Misalignment {
            layer: 0,
            cnu: 0,
            detail: format!("{} placements for {} layers", plan.layers(), schedule.len()),
        });
    }
    let place = |t: usize, r: usize| -> Vec<(usize, Gf)> {
        let mut v: Vec<(usize, Gf)> = h
            .row(r)
            .iter()
            .map(|&(c, x)| (plan.slots[t].get(c), x))
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    };
    for t in 0..schedule.len() {
        for (s, &r) in schedule.layers[t].iter().enumerate() {
            let here = place(t, r);
            let there = place(0, schedule.layers[0][s]);
            let bad = |detail: String| {
                Some(Misalignment {
                    layer: t,
                    cnu: s,
                    detail,
                })
            };
            if here.len() != there.len() || here.iter().zip(&there).any(|(a, b)| a.0 != b.0) {
                return bad(format!("row {r} does not use the VNUs of CNU {s}"));
            }
            let mut ratio = None;
            for (a, b) in here.iter().zip(&there) {
                let x = f.mul(a.1, f.inv(b.1).ok()?);
                if *ratio.get_or_insert(x) != x {
                    return bad(format!(
                        "row {r} labels are not a scaled copy of the layer-0 row"
                    ));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::CodeSpec;
    use crate::decode::build_layer_schedule;
    use crate::shuffle::index::build_index_matrix;

    #[test]
    fn class1_worked_example() {
        let p = schedule_class1(3, 4, 1).unwrap();
        assert_eq!(p.get(7), 3);
        assert_eq!(p.get(0), 2 * 3 + 2);
        let wires = class1_static_wiring(3, 4, 1).unwrap();
        assert_eq!(wires.len(), 9);
        assert!(wires.iter().all(|&(s, d)| p.get(s) == d));
        assert!(schedule_class1(3, 4, 4).is_err());
        assert_eq!(schedule_class1(2, 8, 7).unwrap().get(0), 7);
    }

    #[test]
    fn class2_example() {
        let idx = build_index_matrix(2).unwrap();
        let p = schedule_class2(4, 4, &idx, 1).unwrap();
        assert_eq!(&p.map()[..3], &[3, 4, 5]);
        assert!(schedule_class2(4, 4, &idx, 0).is_err());
        assert!(schedule_class2(3, 4, &idx, 1).is_err());
    }

    #[test]
    fn example_codes_align() {
        for spec in [
            CodeSpec::class1(2, 1, 3, 2, 3),
            CodeSpec::class2(2, 1, 2, 4),
        ] {
            let code = Code::build(&spec).unwrap();
            for part in [Partition::LayerI, Partition::LayerII] {
                let plan = SlotPlan::for_code(&code, part).unwrap();
                let sched = build_layer_schedule(&code.h, part).unwrap();
                assert_eq!(
                    check_alignment(&code, &sched, &plan),
                    None,
                    "{spec:?} {part:?}"
                );
            }
        }
    }

    #[test]
    fn class1_alignment_depends_on_width() {
        let aligned = |rho| {
            let code = Code::build(&CodeSpec::class1(4, 3, 5, 2, rho)).unwrap();
            let plan = SlotPlan::for_code(&code, Partition::LayerI).unwrap();
            let sched = build_layer_schedule(&code.h, Partition::LayerI).unwrap();
            check_alignment(&code, &sched, &plan).is_none()
        };
        assert!(aligned(5));
        assert!(!aligned(7));
    }
}
