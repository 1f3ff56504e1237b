//! Cohomology of the global sections of a Čech resolution, one internal
//! degree at a time.

use super::resolution::{cech_resolution, CechComplex};
use super::sections::Sections;
use super::semilattice::SemilatticeRep;
use crate::diagram::DiagModule;
use crate::error::Result;
use crate::exact_arith::{rat, QMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub window: (i64, i64),
    /// `dims[p]` lists (internal degree, dim Hᵖ in that degree).
    pub dims: Vec<Vec<(i64, usize)>>,
    pub warnings: Vec<String>,
}

impl CohomologyTable {
    pub fn total(&self, p: usize) -> usize {
        self.dims.get(p).map_or(0, |row| row.iter().map(|x| x.1).sum())
    }
}

/// Largest absolute generator degree, used for the default window.
fn twist_bound(m: &DiagModule) -> i64 {
    m.vertices.iter().filter_map(|v| v.grading.as_ref()).flatten().map(|d| d.abs()).max().unwrap_or(0)
}

pub fn default_window(m: &DiagModule) -> (i64, i64) {
    let w = twist_bound(m) + 2;
    (-w, w)
}

/// The degree-k global sections of each Čech term, with the coordinates of
/// all summands concatenated.
struct Level {
    summands: Vec<Sections>,
    offsets: Vec<usize>,
}

impl Level {
    fn new(terms: &[DiagModule], k: i64) -> Result<Self> {
        let summands = terms.iter().map(|t| Sections::new(t, k)).collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for s in &summands {
            offsets.push(offsets.last().unwrap() + s.width());
        }
        Ok(Self { summands, offsets })
    }

    fn width(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn place(&self, pick: impl Fn(&Sections) -> &QMat) -> QMat {
        let cols = self.summands.iter().map(|s| pick(s).cols()).sum();
        let mut out = QMat::zeros(self.width(), cols);
        let mut c0 = 0;
        for (s, off) in self.summands.iter().zip(&self.offsets) {
            out.set_block(*off, c0, pick(s));
            c0 += pick(s).cols();
        }
        out
    }

    fn span(&self) -> QMat {
        self.place(|s| &s.span)
    }

    fn relations(&self) -> QMat {
        self.place(|s| &s.relations)
    }
}

fn cohomology_in_degree(c: &CechComplex, k: i64) -> Result<Vec<usize>> {
    let levels = c.terms.iter().map(|terms| Level::new(terms, k)).collect::<Result<Vec<_>>>()?;
    // D_p applied to the spanning families of level p
    let mut images = Vec::new();
    for (p, level) in levels.iter().enumerate() {
        let span = level.span();
        let Some(next) = levels.get(p + 1) else {
            images.push(QMat::zeros(0, span.cols()));
            break;
        };
        let mut cols = Vec::with_capacity(span.cols());
        for j in 0..span.cols() {
            let v = span.column(j);
            let mut out = vec![rat(0); next.width()];
            for b in &c.differentials[p] {
                let (from, to) = (&level.summands[b.source], &next.summands[b.target]);
                let part = &v[level.offsets[b.source]..level.offsets[b.source + 1]];
                for (i, x) in from.apply(&b.map, to, part)?.into_iter().enumerate() {
                    out[next.offsets[b.target] + i] += x;
                }
            }
            cols.push(out);
        }
        images.push(QMat::from_columns(next.width(), &cols));
    }
    let mut dims = Vec::new();
    for (p, level) in levels.iter().enumerate() {
        let span = level.span();
        let cycles = match levels.get(p + 1) {
            Some(next) => {
                let system = images[p].hstack(&next.relations().neg());
                let null = system.nullspace();
                span.mul(&null.select_rows(&(0..span.cols()).collect::<Vec<_>>()))
            }
            None => span,
        };
        let mut bounded = level.relations();
        if p > 0 {
            bounded = bounded.hstack(&images[p - 1]);
        }
        dims.push(cycles.hstack(&bounded).rank() - bounded.rank());
    }
    Ok(dims)
}

/// Hᵖ(M) degreewise over the window, from the global sections of the Čech resolution.
pub fn cohomology(
    rep: &SemilatticeRep,
    m: &DiagModule,
    cover: &[usize],
    window: Option<(i64, i64)>,
) -> Result<CohomologyTable> {
    let c = cech_resolution(rep, m, cover)?;
    let window = window.unwrap_or_else(|| default_window(m));
    let per_degree = std::thread::scope(|scope| {
        let handles: Vec<_> = (window.0..=window.1)
            .map(|k| {
                scope.spawn({
                    let c = &c;
                    move || cohomology_in_degree(c, k)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("cohomology worker panicked")).collect::<Result<Vec<_>>>()
    })?;
    let mut dims = vec![Vec::new(); c.terms.len()];
    for (k, row) in (window.0..=window.1).zip(&per_degree) {
        for (p, &d) in row.iter().enumerate() {
            dims[p].push((k, d));
        }
    }
    let mut warnings = Vec::new();
    for (p, row) in dims.iter().enumerate() {
        for &(k, d) in row {
            if d != 0 && (k == window.0 || k == window.1) {
                warnings.push(format!("H{p} is nonzero in boundary degree {k}; the window may not have stabilized"));
            }
        }
    }
    Ok(CohomologyTable { window, dims, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{p1_rep, p1_twist_over};

    fn table(d: i64) -> CohomologyTable {
        let rep = SemilatticeRep::new(p1_rep()).unwrap();
        let m = p1_twist_over(&rep.rep, d).unwrap();
        cohomology(&rep, &m, &[0, 1], None).unwrap()
    }

    #[test]
    fn known_twists() {
        let t = table(2);
        assert_eq!((t.total(0), t.total(1)), (3, 0));
        assert_eq!(t.dims[0].iter().filter(|x| x.1 > 0).map(|x| x.0).collect::<Vec<_>>(), vec![0, 1, 2]);
        let t = table(-2);
        assert_eq!((t.total(0), t.total(1)), (0, 1));
        assert_eq!(t.dims[1].iter().find(|x| x.1 > 0).map(|x| x.0), Some(-1));
        let t = table(0);
        assert_eq!((t.total(0), t.total(1)), (1, 0));
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn narrow_window_warns() {
        let rep = SemilatticeRep::new(p1_rep()).unwrap();
        let m = p1_twist_over(&rep.rep, 3).unwrap();
        let t = cohomology(&rep, &m, &[0, 1], Some((0, 1))).unwrap();
        assert_eq!(t.total(0), 2);
        assert!(!t.warnings.is_empty());
    }
}
