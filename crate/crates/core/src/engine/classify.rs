use crate::model::{JointTable, SupportKind};

use super::moments::TableMoments;
use super::{EngineError, Lattice, Point, SetDescriptor, SetKind};

/// Smallest member of each parity lattice.
pub fn lattice_representative(l: Lattice) -> Point {
    match l {
        Lattice::A1 => (2, 2),
        Lattice::A2 => (2, 1),
        Lattice::A3 => (1, 2),
        Lattice::A4 => (1, 1),
    }
}

/// Lattices whose representative is uncorrelated in `t`.
pub(crate) fn lattice_zeros(t: &JointTable) -> Vec<Lattice> {
    let tm = TableMoments::new(t, 2, 2);
    Lattice::ALL
        .into_iter()
        .filter(|l| {
            let (j, k) = lattice_representative(*l);
            tm.covariance(j, k).is_zero()
        })
        .collect()
}

/// Classifies the uncorrelatedness set of a table on `{−α, 0, α}` as a
/// union of parity lattices, checking eight further points per lattice.
pub fn classify_symmetric(t: &JointTable) -> Result<SetDescriptor, EngineError> {
    for s in [t.support_x(), t.support_y()] {
        if s.kind() != SupportKind::SymmetricZero {
            return Err(EngineError::IncompatibleDescriptor {
                descriptor: "lattice".into(),
                reason: format!("support {s} is not of the form {{-a, 0, a}}"),
            });
        }
    }
    let tm = TableMoments::new(t, 6, 6);
    let mut members = Vec::new();
    for l in Lattice::ALL {
        let (j0, k0) = lattice_representative(l);
        let inside = tm.covariance(j0, k0).is_zero();
        for a in 0..3 {
            for b in 0..3 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let p = (j0 + 2 * a, k0 + 2 * b);
                if tm.covariance(p.0, p.1).is_zero() != inside {
                    return Err(EngineError::LatticeInconsistent { lattice: l, point: p });
                }
            }
        }
        if inside {
            members.push(l);
        }
    }
    Ok(SetDescriptor::global(SetKind::lattices(members)))
}
