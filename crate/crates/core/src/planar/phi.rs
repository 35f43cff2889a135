//! The boundary of a regular neighbourhood of an arc, and the Sep₂ vertex
//! conditions for curves.

use super::class::{ArcClass, Crossing, CurveClass, Half};
use super::disk::PuncturedDisk;
use crate::error::Result;

/// Loop once around `p_k`, entering and leaving through `half`.
fn turn(k: u8, half: Half, out: &mut Vec<Crossing>) {
    match half {
        Half::Upper => {
            out.push(Crossing::new(k - 1, false));
            out.push(Crossing::new(k, true));
        }
        Half::Lower => {
            out.push(Crossing::new(k, true));
            out.push(Crossing::new(k - 1, false));
        }
    }
}

/// The curve bounding a regular neighbourhood of `a`: a parallel copy of `a`,
/// a turn around the far endpoint, the other parallel copy back, and a turn
/// around the near endpoint.
pub fn phi_boundary(a: &ArcClass) -> Result<CurveClass> {
    let (alpha, beta) = a.endpoints();
    let cr = a.crossings();
    let mut w = Vec::with_capacity(2 * cr.len() + 4);
    w.extend_from_slice(cr);
    turn(beta, a.last_half(), &mut w);
    w.extend(cr.iter().rev().map(|c| c.flipped()));
    turn(alpha, a.first_half(), &mut w);
    CurveClass::from_cycle(a.n(), &w)
}

/// Whether no block of the marks is split by `c` and each side holds at least
/// two whole blocks.
pub fn is_sep2_vertex(c: &CurveClass, disk: &PuncturedDisk) -> bool {
    let inside = c.inside();
    let (mut ins, mut outs) = (0, 0);
    for b in disk.blocks() {
        let k = b.iter().filter(|p| inside.contains(p)).count();
        if k == b.len() {
            ins += 1;
        } else if k == 0 {
            outs += 1;
        } else {
            return false;
        }
    }
    ins >= 2 && outs >= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{intersection_number, Class, Marks, Word};

    #[test]
    fn phi_of_straight_arc() {
        let a = ArcClass::over(5, 1, 2).unwrap();
        assert_eq!(phi_boundary(&a).unwrap(), CurveClass::round(5, 1, 2).unwrap());
        let a = ArcClass::over(5, 3, 4).unwrap();
        assert_eq!(phi_boundary(&a).unwrap(), CurveClass::round(5, 3, 4).unwrap());
    }

    #[test]
    fn phi_commutes_with_twists() {
        let a = Class::Arc(ArcClass::over(6, 2, 3).unwrap());
        let c = Class::Curve(phi_boundary(a.as_arc().unwrap()).unwrap());
        for wd in ["s1", "s3 S2", "s4 s1 S5 s3", "s2 s2 s3 S1 s4"] {
            let g: Word = wd.parse().unwrap();
            let ga = g.apply(&a).unwrap();
            let lhs = Class::Curve(phi_boundary(ga.as_arc().unwrap()).unwrap());
            assert_eq!(lhs, g.apply(&c).unwrap(), "{wd}");
            assert_eq!(intersection_number(&lhs, &ga), 0);
        }
    }

    #[test]
    fn sep2_conditions() {
        let d8 = PuncturedDisk::all_marked(8).unwrap();
        assert!(is_sep2_vertex(&CurveClass::round(8, 1, 2).unwrap(), &d8));
        assert!(!is_sep2_vertex(&CurveClass::round(8, 1, 7).unwrap(), &d8));
        let q = PuncturedDisk::new(5, Marks::Blocks(vec![vec![1, 2], vec![3], vec![4], vec![5]])).unwrap();
        assert!(!is_sep2_vertex(&CurveClass::round(5, 2, 3).unwrap(), &q));
        assert!(is_sep2_vertex(&CurveClass::round(5, 1, 3).unwrap(), &q));
    }
}
