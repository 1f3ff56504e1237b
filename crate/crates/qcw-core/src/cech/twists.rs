//! Line-bundle twists on the projective line: hom dimensions, local
//! projectivity and generation by finite sums of twists.

use super::cohomology::cohomology;
use super::semilattice::SemilatticeRep;
use crate::diagram::{cokernel, direct_sum, hom_space, p1_rep, p1_twist_over, DiagModule, DiagMorphism};
use crate::error::{Error, Result};
use crate::exact_arith::RingMatrix;

/// dim Hom(O(m), O(n)) by the constraint solver and as dim H⁰(O(n − m)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistHom {
    pub m: i64,
    pub n: i64,
    pub direct: usize,
    pub via_sections: usize,
}

impl TwistHom {
    pub fn agree(&self) -> bool {
        self.direct == self.via_sections
    }

    pub fn dimension(&self) -> Result<usize> {
        if !self.agree() {
            return Err(Error::Invalid(format!(
                "Hom(O({}), O({})): solver gives {}, sections give {}",
                self.m, self.n, self.direct, self.via_sections
            )));
        }
        Ok(self.direct)
    }
}

pub fn hom_twists(m: i64, n: i64) -> Result<TwistHom> {
    let rep = SemilatticeRep::new(p1_rep())?;
    let w = m.abs() + n.abs() + 1;
    let direct = hom_space(&p1_twist_over(&rep.rep, m)?, &p1_twist_over(&rep.rep, n)?, Some((-w, w)))?.len();
    let difference = p1_twist_over(&rep.rep, n - m)?;
    let via_sections = cohomology(&rep, &difference, &[0, 1], None)?.total(0);
    Ok(TwistHom { m, n, direct, via_sections })
}

pub fn locally_projective(m: &DiagModule) -> Result<bool> {
    m.rep.require_module_algebra()?;
    for ring in &m.rep.rings {
        ring.require_euclidean()?;
    }
    m.is_locally_projective()
}

/// Whether the sum of O(t) over the listed twists and all homs in the window maps onto M.
pub fn twist_generation_check(m: &DiagModule, twists: &[i64], window: Option<(i64, i64)>) -> Result<bool> {
    locally_projective(m)?;
    let window = window.unwrap_or_else(|| {
        let spread = m.vertices.iter().filter_map(|v| v.grading.as_ref()).flatten().map(|d| d.abs()).max().unwrap_or(0);
        let w = twists.iter().map(|t| t.abs()).max().unwrap_or(0) + spread + 2;
        (-w, w)
    });
    let mut maps: Vec<DiagMorphism> = Vec::new();
    for &t in twists {
        maps.extend(hom_space(&p1_twist_over(&m.rep, t)?, m, Some(window))?);
    }
    let Some(first) = maps.first() else {
        return m.is_zero();
    };
    let mut source = first.source.clone();
    for f in &maps[1..] {
        source = direct_sum(&source, &f.source)?.sum;
    }
    let comps = (0..m.len())
        .map(|y| maps[1..].iter().fold(maps[0].components[y].clone(), |acc, f| acc.hstack(&f.components[y])))
        .collect::<Vec<RingMatrix>>();
    let total = DiagMorphism::new(source, m.clone(), comps)?;
    cokernel(&total)?.0.is_zero()
}
