//! Mechanical replay of the argument that `pi*` is the only extension of the
//! mod-2 reduction to the Fricke-extended group.

use std::fmt;

use super::{enumerate_sp4f2, F2Matrix};
use crate::error::{Error, Result};
use crate::exact::{Prime, ScaledMatrix, SymplecticForm};
use crate::groups::{self, default_generators};

/// The fate of one candidate image of `W̃_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateVerdict {
    pub candidate: F2Matrix,
    /// Label of the upper-left block: `1`, `S`, `U` or `L`.
    pub block: &'static str,
    /// Name and value of an element `h` with `pi(W h W) != w pi(h) w`.
    pub excluded_by: Option<(String, ScaledMatrix)>,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub p: Prime,
    pub h1_commutes: bool,
    pub h2_commutes: bool,
    pub centralizer_of_iota: usize,
    pub involutions: usize,
    pub full_scan: Vec<F2Matrix>,
    pub narrowed: Vec<F2Matrix>,
    pub verdicts: Vec<CandidateVerdict>,
    /// The displayed exclusion matrices reject exactly their intended blocks.
    pub displayed_exclusions_hold: bool,
    pub survivors: Vec<F2Matrix>,
}

impl AuditReport {
    pub fn unique_iota(&self) -> bool {
        self.survivors == [F2Matrix::IOTA]
    }
}

const BLOCKS: [(&str, [[bool; 2]; 2]); 4] = [
    ("1", [[true, false], [false, true]]),
    ("S", [[false, true], [true, false]]),
    ("U", [[true, true], [false, true]]),
    ("L", [[true, false], [true, true]]),
];

fn inv_transpose(a: [[bool; 2]; 2]) -> [[bool; 2]; 2] {
    // over F2 an invertible 2x2 matrix has determinant 1, so the inverse
    // transpose is [[d, c], [b, a]]
    [[a[1][1], a[1][0]], [a[0][1], a[0][0]]]
}

fn fails_on(w: F2Matrix, wt: &ScaledMatrix, h: &ScaledMatrix) -> Result<bool> {
    let conj = wt.mul(h)?.mul(wt)?;
    let lhs = conj.mod2()?;
    let ph = h.mod2()?;
    Ok(lhs != w.mul(ph).mul(w))
}

pub fn uniqueness_audit(p: Prime) -> Result<AuditReport> {
    let fail = |step: char, detail: String| Error::AuditFailed { step, detail };
    let table = enumerate_sp4f2();
    let wt = groups::make_wtilde(p);
    let h1 = groups::h1(p);
    let h2 = groups::h2(p);
    let form = SymplecticForm::LambdaP(p);

    // (a)
    let h1_commutes = wt.mul(&h1)? == h1.mul(&wt)?;
    let h2_commutes = wt.mul(&h2)? == h2.mul(&wt)?;
    for (name, h) in [("h1", &h1), ("h2", &h2)] {
        if !(h.is_integral() && h.preserves(form)) {
            return Err(fail('a', format!("{name} is not in the integral group")));
        }
    }
    if !(h1_commutes && h2_commutes) {
        return Err(fail('a', "h1 or h2 does not commute with the Fricke element".into()));
    }
    let (ph1, ph2) = (h1.mod2()?, h2.mod2()?);
    let centralizer_of_iota = table.centralizer(F2Matrix::IOTA)?.len();
    if !table.centralizer(F2Matrix::IOTA)?.contains(&ph1) || !table.centralizer(F2Matrix::IOTA)?.contains(&ph2) {
        return Err(fail('a', "pi(h1) or pi(h2) does not centralize iota".into()));
    }

    // (b)
    let is_candidate = |w: F2Matrix| {
        w.mul(w) == F2Matrix::IDENTITY && w.mul(ph1) == ph1.mul(w) && w.mul(ph2) == ph2.mul(w)
    };
    let involutions = table
        .elements()
        .iter()
        .filter(|w| w.mul(**w) == F2Matrix::IDENTITY)
        .count();
    let mut full_scan: Vec<F2Matrix> = table.elements().iter().copied().filter(|&w| is_candidate(w)).collect();
    full_scan.sort();
    let mut narrowed = Vec::new();
    let mut labels = Vec::new();
    for (label, a) in BLOCKS {
        let w = F2Matrix::block_diagonal(a, inv_transpose(a));
        if !table.contains(w) {
            return Err(fail('b', format!("block candidate {label} is not symplectic")));
        }
        if is_candidate(w) {
            narrowed.push(w);
            labels.push(label);
        }
    }
    let mut sorted = narrowed.clone();
    sorted.sort();
    if sorted != full_scan {
        return Err(fail(
            'b',
            format!("narrowed set {narrowed:?} differs from full scan {full_scan:?}"),
        ));
    }

    // (c)
    let named: Vec<(String, ScaledMatrix)> = [
        ("exclusion-1".to_string(), groups::exclusion_identity(p)),
        ("exclusion-2".to_string(), groups::exclusion_unipotent(p)),
    ]
    .into_iter()
    .chain(
        default_generators(p)
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("generator-{i}"), g)),
    )
    .collect();
    let mut verdicts = Vec::new();
    for (&w, &label) in narrowed.iter().zip(&labels) {
        let mut excluded_by = None;
        for (name, h) in &named {
            if fails_on(w, &wt, h)? {
                excluded_by = Some((name.clone(), h.clone()));
                break;
            }
        }
        verdicts.push(CandidateVerdict {
            candidate: w,
            block: label,
            excluded_by,
        });
    }
    let e1 = groups::exclusion_identity(p);
    let e2 = groups::exclusion_unipotent(p);
    let block_of = |label: &str| {
        let a = BLOCKS.iter().find(|(l, _)| *l == label).expect("label").1;
        F2Matrix::block_diagonal(a, inv_transpose(a))
    };
    let displayed_exclusions_hold = fails_on(block_of("1"), &wt, &e1)?
        && fails_on(block_of("U"), &wt, &e2)?
        && fails_on(block_of("L"), &wt, &e2)?
        && !fails_on(F2Matrix::IOTA, &wt, &e1)?
        && !fails_on(F2Matrix::IOTA, &wt, &e2)?;
    if !displayed_exclusions_hold {
        return Err(fail('c', "displayed exclusion matrices do not act as claimed".into()));
    }

    // (d)
    let survivors: Vec<F2Matrix> = verdicts
        .iter()
        .filter(|v| v.excluded_by.is_none())
        .map(|v| v.candidate)
        .collect();
    if survivors != [F2Matrix::IOTA] {
        return Err(fail('d', format!("surviving candidates {survivors:?}")));
    }

    Ok(AuditReport {
        p,
        h1_commutes,
        h2_commutes,
        centralizer_of_iota,
        involutions,
        full_scan,
        narrowed,
        verdicts,
        displayed_exclusions_hold,
        survivors,
    })
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "uniqueness audit p={}", self.p)?;
        writeln!(
            f,
            "(a) W h1 = h1 W: {}  W h2 = h2 W: {}  |centr(iota)| = {}",
            self.h1_commutes, self.h2_commutes, self.centralizer_of_iota
        )?;
        writeln!(
            f,
            "(b) involutions in Sp(4,F2): {}  commuting with pi(h1), pi(h2): {} (full scan {})",
            self.involutions,
            self.narrowed.len(),
            self.full_scan.len()
        )?;
        for v in &self.verdicts {
            match &v.excluded_by {
                Some((name, _)) => writeln!(f, "(c) A={} [{}] excluded by {}", v.block, v.candidate, name)?,
                None => writeln!(f, "(c) A={} [{}] survives", v.block, v.candidate)?,
            }
        }
        writeln!(f, "(c) displayed exclusions hold: {}", self.displayed_exclusions_hold)?;
        let names: Vec<String> = self.survivors.iter().map(|m| m.to_string()).collect();
        write!(f, "(d) survivors: {} unique_iota={}", names.join(", "), self.unique_iota())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audit_small_primes() {
        for p in [3, 5, 7] {
            let r = uniqueness_audit(Prime::new(p).unwrap()).unwrap();
            assert!(r.unique_iota());
            assert!(r.displayed_exclusions_hold);
            assert_eq!(r.narrowed.len(), 4);
        }
    }

    #[test]
    fn step_a_commutator_vanishes() {
        let p = Prime::new(3).unwrap();
        let w = groups::make_wtilde(p);
        let h = groups::h1(p);
        assert_eq!(w.mul(&h).unwrap(), h.mul(&w).unwrap());
    }
}
