//! The finite group `Sp(4, F2)` (isomorphic to `S6`), the reduction map from
//! the Fricke-extended paramodular group, and the sign character.

mod audit;
mod matrix;

pub use audit::{uniqueness_audit, AuditReport, CandidateVerdict};
pub use matrix::F2Matrix;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::{ScaledMatrix, SymplecticForm};
use crate::groups;

const ABSENT: u16 = u16::MAX;

/// All 720 elements of `Sp(4, F2)` with an ordinal index and the derived
/// subgroup as a membership mask.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    elements: Vec<F2Matrix>,
    index: Vec<u16>,
    derived: Vec<bool>,
}

/// Scans all `2^16` matrices over F2 and keeps those preserving the form.
pub fn enumerate_sp4f2() -> FiniteGroupTable {
    let elements: Vec<F2Matrix> = (0..=u16::MAX)
        .map(F2Matrix::from_bits)
        .filter(|m| m.is_symplectic())
        .collect();
    let mut index = vec![ABSENT; 1 << 16];
    for (k, m) in elements.iter().enumerate() {
        index[m.bits() as usize] = k as u16;
    }
    let mut table = FiniteGroupTable {
        elements,
        index,
        derived: Vec::new(),
    };
    table.derived = derived_subgroup(&table);
    table
}

/// Membership mask of the subgroup generated by all commutators.
pub fn derived_subgroup(t: &FiniteGroupTable) -> Vec<bool> {
    let mut commutators: Vec<F2Matrix> = Vec::new();
    let mut seen = vec![false; t.order()];
    for &a in &t.elements {
        let a_inv = a.symplectic_inverse();
        for &b in &t.elements {
            let c = a.mul(b).mul(a_inv).mul(b.symplectic_inverse());
            let k = t.ordinal(c).expect("closed");
            if !seen[k] {
                seen[k] = true;
                commutators.push(c);
            }
        }
    }
    t.closure_mask(&commutators)
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[F2Matrix] {
        &self.elements
    }

    pub fn ordinal(&self, m: F2Matrix) -> Option<usize> {
        match self.index[m.bits() as usize] {
            ABSENT => None,
            k => Some(k as usize),
        }
    }

    pub fn contains(&self, m: F2Matrix) -> bool {
        self.ordinal(m).is_some()
    }

    pub fn derived_mask(&self) -> &[bool] {
        &self.derived
    }

    pub fn derived_order(&self) -> usize {
        self.derived.iter().filter(|&&b| b).count()
    }

    pub fn in_derived(&self, m: F2Matrix) -> Result<bool> {
        let k = self.ordinal(m).ok_or(Error::NotInGroup)?;
        Ok(self.derived[k])
    }

    /// `+1` on the derived subgroup (the `A6` image), `-1` off it.
    pub fn sign_char(&self, m: F2Matrix) -> Result<i8> {
        Ok(if self.in_derived(m)? { 1 } else { -1 })
    }

    pub fn centralizer(&self, x: F2Matrix) -> Result<Vec<F2Matrix>> {
        if !self.contains(x) {
            return Err(Error::NotInGroup);
        }
        Ok(self
            .elements
            .iter()
            .copied()
            .filter(|&g| g.mul(x) == x.mul(g))
            .collect())
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure_mask(&self, gens: &[F2Matrix]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        let start = self.ordinal(F2Matrix::IDENTITY).expect("identity");
        mask[start] = true;
        let mut queue = VecDeque::from([F2Matrix::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = x.mul(g);
                let k = self.ordinal(y).expect("generators lie in the group");
                if !mask[k] {
                    mask[k] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    pub fn generated_order(&self, gens: &[F2Matrix]) -> usize {
        self.closure_mask(gens).iter().filter(|&&b| b).count()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<F2Matrix>> {
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for &x in &self.elements {
            if assigned[self.ordinal(x).expect("member")] {
                continue;
            }
            let mut class = Vec::new();
            for &g in &self.elements {
                let y = g.mul(x).mul(g.symplectic_inverse());
                let k = self.ordinal(y).expect("member");
                if !assigned[k] {
                    assigned[k] = true;
                    class.push(y);
                }
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    /// Normal closures of every element, deduplicated; one per conjugacy class
    /// suffices since conjugate elements share a normal closure.
    pub fn normal_closures(&self) -> Vec<Vec<bool>> {
        let mut out: Vec<Vec<bool>> = Vec::new();
        for class in self.conjugacy_classes() {
            let mask = self.closure_mask(&class);
            if !out.contains(&mask) {
                out.push(mask);
            }
        }
        out
    }

    /// Index-2 subgroups among the normal closures of single elements.
    pub fn index_two_normal_closures(&self) -> Vec<Vec<bool>> {
        let half = self.order() / 2;
        self.normal_closures()
            .into_iter()
            .filter(|m| m.iter().filter(|&&b| b).count() == half)
            .collect()
    }

    pub fn element_order(&self, m: F2Matrix) -> u32 {
        let mut x = m;
        let mut k = 1;
        while x != F2Matrix::IDENTITY {
            x = x.mul(m);
            k += 1;
        }
        k
    }

    /// Shortest word (as generator indices) reaching each element by right
    /// multiplication from the identity; `None` when unreachable.
    pub fn word_table(&self, gens: &[F2Matrix]) -> Vec<Option<Vec<usize>>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order()];
        let start = self.ordinal(F2Matrix::IDENTITY).expect("identity");
        words[start] = Some(Vec::new());
        let mut queue = VecDeque::from([F2Matrix::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            let base = words[self.ordinal(x).expect("member")].clone().expect("visited");
            for (gi, &g) in gens.iter().enumerate() {
                let y = x.mul(g);
                let k = self.ordinal(y).expect("generators lie in the group");
                if words[k].is_none() {
                    let mut w = base.clone();
                    w.push(gi);
                    words[k] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
    }
}

/// The extension of the mod-2 reduction to the Fricke-extended group:
/// `pi(g)` on the integral group and `pi(g W) iota` on the other coset.
pub fn pi_star(g: &ScaledMatrix) -> Result<F2Matrix> {
    let form = SymplecticForm::LambdaP(g.p());
    if g.is_integral() && g.preserves(form) {
        return g.mod2();
    }
    let w = groups::make_wtilde(g.p());
    match g.mul(&w) {
        Ok(gw) if gw.is_integral() && gw.preserves(form) => Ok(gw.mod2()?.mul(F2Matrix::IOTA)),
        _ => Err(Error::NotInGammaStar),
    }
}
