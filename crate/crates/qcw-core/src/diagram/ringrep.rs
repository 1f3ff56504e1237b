use std::collections::BTreeMap;

use super::poset::FinitePoset;
use crate::error::{Error, Result};
use crate::exact_arith::{MonoidRing, RingMap, RingMapKind, RingSpec};

/// A functor from a finite poset to the whitelisted rings. Maps are stored for
/// every strict pair; identities are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingRep {
    pub name: String,
    pub poset: FinitePoset,
    pub rings: Vec<RingSpec>,
    maps: BTreeMap<(usize, usize), RingMap>,
}

impl RingRep {
    /// Builds a ring representation from maps on some strict pairs (at least
    /// the covers); missing pairs are filled by composing along Hasse paths.
    pub fn new(
        name: &str,
        poset: FinitePoset,
        rings: Vec<RingSpec>,
        given: Vec<((usize, usize), RingMap)>,
    ) -> Result<Self> {
        if rings.len() != poset.len() {
            return Err(Error::Invalid("one ring per poset element is required".into()));
        }
        let mut maps = BTreeMap::new();
        for ((i, j), f) in given {
            if !poset.lt(i, j) {
                return Err(Error::Invalid(format!(
                    "{} <= {} is not a strict relation",
                    poset.label(i),
                    poset.label(j)
                )));
            }
            if f.source != rings[i] || f.target != rings[j] {
                return Err(Error::TypeMismatch(format!(
                    "map on {} <= {} has the wrong endpoints",
                    poset.label(i),
                    poset.label(j)
                )));
            }
            maps.insert((i, j), f);
        }
        for (i, j) in poset.covers() {
            if !maps.contains_key(&(i, j)) {
                let f = RingMap::canonical(&rings[i], &rings[j]).map_err(|_| {
                    Error::Invalid(format!("no ring map given for {} <= {}", poset.label(i), poset.label(j)))
                })?;
                maps.insert((i, j), f);
            }
        }
        // fill remaining pairs by composing along a Hasse path
        for (i, j) in poset.strict_pairs() {
            if maps.contains_key(&(i, j)) {
                continue;
            }
            let path = poset.hasse_paths(i, j).into_iter().next().expect("comparable elements are joined by a path");
            let mut f = RingMap::identity(rings[i].clone());
            for w in path.windows(2) {
                f = f.compose(&maps[&(w[0], w[1])])?;
            }
            maps.insert((i, j), f);
        }
        Ok(Self { name: name.to_string(), poset, rings, maps })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// R^i_j for i <= j.
    pub fn map(&self, i: usize, j: usize) -> RingMap {
        if i == j {
            return RingMap::identity(self.rings[i].clone());
        }
        self.maps.get(&(i, j)).cloned().unwrap_or_else(|| panic!("no ring map for {i} <= {j}"))
    }

    pub fn edge_maps(&self) -> impl Iterator<Item = (&(usize, usize), &RingMap)> {
        self.maps.iter()
    }

    /// Functoriality violations: R^i_k must agree with R^j_k composed with R^i_j.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.poset.lt(i, j) && self.poset.lt(j, k) {
                        let via = self.map(i, j).compose(&self.map(j, k));
                        match via {
                            Ok(g) if g.same_action(&self.map(i, k)) => {}
                            _ => out.push(format!(
                                "composition fails on {} <= {} <= {}",
                                self.poset.label(i),
                                self.poset.label(j),
                                self.poset.label(k)
                            )),
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether any vertex carries a multivariate ring (data-only diagram).
    pub fn is_data_only(&self) -> bool {
        self.rings.iter().any(|r| matches!(r, RingSpec::Monoid(_)))
    }

    pub fn require_module_algebra(&self) -> Result<()> {
        if self.is_data_only() {
            return Err(Error::UnsupportedRing(format!(
                "ring diagram {} has multivariate rings; module operations are unavailable",
                self.name
            )));
        }
        Ok(())
    }

    /// Whether every ring is the coefficient field.
    pub fn is_field_constant(&self) -> bool {
        self.rings.iter().all(RingSpec::is_field)
    }

    /// The constant field representation on a poset.
    pub fn constant_field(name: &str, poset: FinitePoset) -> Self {
        let rings = vec![RingSpec::Field; poset.len()];
        Self::new(name, poset, rings, vec![]).expect("identities form a representation")
    }

    /// The three-vertex diagram k[x] -> k[x, x^-1] <- k[x^-1].
    pub fn p1() -> Self {
        let poset = FinitePoset::new(vec!["u0".into(), "u1".into(), "u01".into()], &[(0, 2), (1, 2)]).unwrap();
        let rings = vec![RingSpec::poly("x"), RingSpec::ipoly("x"), RingSpec::laurent("x")];
        Self::new("P1", poset, rings, vec![]).expect("P1 diagram is valid")
    }

    /// The seven-vertex diagram of the standard affine cover of P^2 and its
    /// intersections, with rings as monoid subrings of k[x^±1, y^±1].
    pub fn p2() -> Self {
        let labels = ["u0", "u1", "u2", "u01", "u02", "u12", "u012"];
        let poset = FinitePoset::new(
            labels.iter().map(|s| s.to_string()).collect(),
            &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
        )
        .unwrap();
        let vars = ["x".to_string(), "y".to_string()];
        let chart = |gens: &[[i64; 2]]| RingSpec::Monoid(MonoidRing { vars: vars.clone(), generators: gens.to_vec() });
        let u0 = [[1, 0], [0, 1]];
        let u1 = [[-1, 0], [-1, 1]];
        let u2 = [[0, -1], [1, -1]];
        let union = |a: &[[i64; 2]], b: &[[i64; 2]]| -> Vec<[i64; 2]> { a.iter().chain(b).copied().collect() };
        let rings = vec![
            chart(&u0),
            chart(&u1),
            chart(&u2),
            chart(&union(&u0, &u1)),
            chart(&union(&u0, &u2)),
            chart(&union(&u1, &u2)),
            chart(&[[1, 0], [-1, 0], [0, 1], [0, -1]]),
        ];
        let mut given = Vec::new();
        for (i, j) in poset.covers() {
            let f = RingMap::new(rings[i].clone(), rings[j].clone(), RingMapKind::Inclusion).expect("chart inclusions");
            given.push(((i, j), f));
        }
        Self::new("P2", poset, rings, given).expect("P2 diagram is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_functorial() {
        assert!(RingRep::p1().validate().is_empty());
        let p2 = RingRep::p2();
        assert_eq!(p2.len(), 7);
        assert!(p2.validate().is_empty());
        assert!(p2.require_module_algebra().is_err());
    }

    #[test]
    fn swapped_chart() {
        let poset = FinitePoset::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        let f = RingMap::new(RingSpec::poly("y"), RingSpec::laurent("x"), RingMapKind::SwapInclusion).unwrap();
        let r =
            RingRep::new("swap", poset, vec![RingSpec::poly("y"), RingSpec::laurent("x")], vec![((0, 1), f)]).unwrap();
        assert!(r.validate().is_empty());
    }
}
