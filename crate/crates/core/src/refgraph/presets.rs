use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coxeter::{Component, CoxeterGroup, CoxeterSpec, SimpleSet};

use super::{RefgraphError, ReflectionHypergraph};

/// Named reflection (hyper)graphs. Generator indices are 0-based in the
/// canonical order of [`Component::coxeter_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    C4,
    C6,
    EvenCycle(u32),
    SubdividedK4,
    Q3Hypercube,
    K14,
    OctahedronSubdivision,
    K22ReplacementOctahedron,
    TetraFlag3Graph,
    GowersOctahedron(usize),
    MK(usize),
    /// `(k, r)`-incidence graph of the simplex on `n` vertices.
    SimplexIncidence { n: usize, k: usize, r: usize },
}

pub const MAX_PRESET_UNIFORMITY: usize = 8;

impl Preset {
    /// The fixed-parameter presets plus small instances of the families.
    pub fn catalogue() -> Vec<Preset> {
        vec![
            Preset::C4,
            Preset::C6,
            Preset::SubdividedK4,
            Preset::Q3Hypercube,
            Preset::K14,
            Preset::OctahedronSubdivision,
            Preset::K22ReplacementOctahedron,
            Preset::TetraFlag3Graph,
            Preset::GowersOctahedron(2),
            Preset::GowersOctahedron(3),
            Preset::MK(2),
            Preset::MK(3),
        ]
    }

    pub fn definition(self) -> Result<(CoxeterSpec, Vec<SimpleSet>), RefgraphError> {
        let set = |v: &[usize]| SimpleSet::from_indices(v.iter().copied());
        let comps = |c: Vec<Component>| CoxeterSpec::new(c);
        let all_but = |rank: usize| -> Vec<SimpleSet> { (0..rank).map(|i| SimpleSet::full(rank).without(i)).collect() };
        let check_k = |k: usize| {
            if (2..=MAX_PRESET_UNIFORMITY).contains(&k) {
                Ok(())
            } else {
                Err(RefgraphError::UnknownPreset(format!("{self}: k must be in 2..={MAX_PRESET_UNIFORMITY}")))
            }
        };
        Ok(match self {
            Preset::C4 => (comps(vec![Component::a(1), Component::a(1)]), vec![set(&[0]), set(&[1])]),
            Preset::C6 => (comps(vec![Component::i2(3)]), vec![set(&[0]), set(&[1])]),
            Preset::EvenCycle(m) => {
                if m < 3 {
                    return Err(RefgraphError::UnknownPreset(format!("{self}: needs m >= 3 (use c4 for m = 2)")));
                }
                (comps(vec![Component::i2(m)]), vec![set(&[0]), set(&[1])])
            }
            Preset::SubdividedK4 => (comps(vec![Component::a(3)]), vec![set(&[1, 2]), set(&[0, 2])]),
            Preset::Q3Hypercube => (comps(vec![Component::d(3)]), vec![set(&[1, 2]), set(&[0, 2])]),
            Preset::K14 => (comps(vec![Component::a(3)]), vec![set(&[1, 2]), set(&[0, 1, 2])]),
            Preset::OctahedronSubdivision => (comps(vec![Component::d(3)]), vec![set(&[0, 1]), set(&[2])]),
            Preset::K22ReplacementOctahedron => (comps(vec![Component::b(3)]), vec![set(&[0, 1]), set(&[2])]),
            Preset::TetraFlag3Graph => (comps(vec![Component::a(3)]), all_but(3)),
            Preset::GowersOctahedron(k) => {
                check_k(k)?;
                (comps(vec![Component::a(1); k]), all_but(k))
            }
            Preset::MK(k) => {
                check_k(k)?;
                (comps(vec![Component::a(1); k]), (0..k).map(|i| set(&[i])).collect())
            }
            Preset::SimplexIncidence { n, k, r } => {
                if n < 2 || k >= r || r > n - 1 {
                    return Err(RefgraphError::UnknownPreset(format!("{self}: needs 0 <= k < r <= n-1 and n >= 2")));
                }
                let rank = n - 1;
                // the k-face class is stabilised by every generator except s_k;
                // the whole simplex (face index n-1) by all of them
                let face = |d: usize| if d < rank { SimpleSet::full(rank).without(d) } else { SimpleSet::full(rank) };
                (comps(vec![Component::a(rank)]), vec![face(k), face(r)])
            }
        })
    }

    pub fn build(self) -> Result<ReflectionHypergraph, RefgraphError> {
        self.build_with_cap(crate::coxeter::DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(self, order_cap: u64) -> Result<ReflectionHypergraph, RefgraphError> {
        let (spec, subsets) = self.definition()?;
        let group = Arc::new(CoxeterGroup::build(&spec.with_order_cap(order_cap))?);
        ReflectionHypergraph::build(group, &subsets)
    }
}

pub fn preset(name: &str) -> Result<ReflectionHypergraph, RefgraphError> {
    name.parse::<Preset>()?.build()
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::C4 => write!(f, "c4"),
            Preset::C6 => write!(f, "c6"),
            Preset::EvenCycle(m) => write!(f, "even_cycle({m})"),
            Preset::SubdividedK4 => write!(f, "subdivided_k4"),
            Preset::Q3Hypercube => write!(f, "q3_hypercube"),
            Preset::K14 => write!(f, "k1_4"),
            Preset::OctahedronSubdivision => write!(f, "octahedron_subdivision"),
            Preset::K22ReplacementOctahedron => write!(f, "k22_replacement_octahedron"),
            Preset::TetraFlag3Graph => write!(f, "tetra_flag_3graph"),
            Preset::GowersOctahedron(k) => write!(f, "gowers_octahedron({k})"),
            Preset::MK(k) => write!(f, "m_k({k})"),
            Preset::SimplexIncidence { n, k, r } => write!(f, "simplex_incidence({n},{k},{r})"),
        }
    }
}

/// Accepts `name`, `name(a,b)` and `name:a,b`.
impl FromStr for Preset {
    type Err = RefgraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || RefgraphError::UnknownPreset(s.to_string());
        let s = s.trim();
        let (name, args) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
            (&s[..open], Some(inner))
        } else if let Some((name, rest)) = s.split_once(':') {
            (name, Some(rest))
        } else {
            (s, None)
        };
        let nums: Vec<usize> = match args {
            Some(a) => a.split(',').map(|x| x.trim().parse().map_err(|_| unknown())).collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        let preset = match (name, nums.as_slice()) {
            ("c4", []) => Preset::C4,
            ("c6", []) => Preset::C6,
            ("even_cycle", [m]) => Preset::EvenCycle(*m as u32),
            ("subdivided_k4", []) => Preset::SubdividedK4,
            ("q3_hypercube", []) => Preset::Q3Hypercube,
            ("k1_4", []) => Preset::K14,
            ("octahedron_subdivision", []) => Preset::OctahedronSubdivision,
            ("k22_replacement_octahedron", []) => Preset::K22ReplacementOctahedron,
            ("tetra_flag_3graph", []) => Preset::TetraFlag3Graph,
            ("gowers_octahedron", [k]) => Preset::GowersOctahedron(*k),
            ("m_k", [k]) => Preset::MK(*k),
            ("simplex_incidence", [n, k, r]) => Preset::SimplexIncidence { n: *n, k: *k, r: *r },
            _ => return Err(unknown()),
        };
        preset.definition()?;
        Ok(preset)
    }
}
