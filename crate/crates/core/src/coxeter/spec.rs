use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CoxeterError;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// Irreducible family of a finite reflection group component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    /// Dihedral group of order `2m`.
    I2(u32),
    H3,
    F4,
    /// Arbitrary Coxeter matrix. Finiteness is only discovered during
    /// enumeration, so these are always bounded by the order cap.
    Custom(Vec<Vec<u32>>),
}

/// One direct factor of a [`CoxeterSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn a(rank: usize) -> Self {
        Self { family: Family::A, rank }
    }
    pub fn b(rank: usize) -> Self {
        Self { family: Family::B, rank }
    }
    pub fn d(rank: usize) -> Self {
        Self { family: Family::D, rank }
    }
    pub fn i2(m: u32) -> Self {
        Self { family: Family::I2(m), rank: 2 }
    }
    pub fn h3() -> Self {
        Self { family: Family::H3, rank: 3 }
    }
    pub fn f4() -> Self {
        Self { family: Family::F4, rank: 4 }
    }
    pub fn custom(matrix: Vec<Vec<u32>>) -> Self {
        let rank = matrix.len();
        Self { family: Family::Custom(matrix), rank }
    }

    fn validate(&self) -> Result<(), CoxeterError> {
        let bad = |msg: String| Err(CoxeterError::InvalidSpec(msg));
        if self.rank == 0 {
            return bad("component rank must be positive".into());
        }
        match &self.family {
            Family::A | Family::B => Ok(()),
            Family::D if self.rank < 2 => bad(format!("D{} is not defined; D needs rank >= 2", self.rank)),
            Family::D => Ok(()),
            Family::I2(m) if *m < 3 => bad(format!("I2:{m} needs dihedral order m >= 3")),
            Family::I2(_) if self.rank != 2 => bad("I2 components have rank 2".into()),
            Family::I2(_) => Ok(()),
            Family::H3 if self.rank != 3 => bad("H3 has rank 3".into()),
            Family::F4 if self.rank != 4 => bad("F4 has rank 4".into()),
            Family::H3 | Family::F4 => Ok(()),
            Family::Custom(m) => {
                let n = m.len();
                for (i, row) in m.iter().enumerate() {
                    if row.len() != n {
                        return bad("Coxeter matrix is not square".into());
                    }
                    for (j, &v) in row.iter().enumerate() {
                        if (i == j) != (v == 1) || v == 0 || m[j][i] != v {
                            return bad(format!("invalid Coxeter matrix entry ({i},{j}) = {v}"));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Order of the component group, when known in closed form.
    pub fn predicted_order(&self) -> Option<u64> {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => Some(fact(n + 1)),
            Family::B => Some((1u64 << n) * fact(n)),
            Family::D => Some((1u64 << (n - 1)) * fact(n)),
            Family::I2(m) => Some(2 * m as u64),
            Family::H3 => Some(120),
            Family::F4 => Some(1152),
            Family::Custom(_) => None,
        }
    }

    /// Coxeter matrix of the component, generators in the canonical order.
    ///
    /// `B` puts the order-4 bond between the first two generators and `D`
    /// attaches the first generator to the third.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank;
        if let Family::Custom(m) = &self.family {
            return m.clone();
        }
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut bond = |i: usize, j: usize, v: u32| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| bond(i, i + 1, 3)),
            Family::B => {
                for i in 0..n.saturating_sub(1) {
                    bond(i, i + 1, if i == 0 { 4 } else { 3 });
                }
            }
            Family::D => {
                if n >= 3 {
                    bond(0, 2, 3);
                }
                for i in 1..n.saturating_sub(1) {
                    bond(i, i + 1, 3);
                }
            }
            Family::I2(mm) => bond(0, 1, mm),
            Family::H3 => {
                bond(0, 1, 5);
                bond(1, 2, 3);
            }
            Family::F4 => {
                bond(0, 1, 3);
                bond(1, 2, 4);
                bond(2, 3, 3);
            }
            Family::Custom(_) => unreachable!(),
        }
        m
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::B => write!(f, "B{}", self.rank),
            Family::D => write!(f, "D{}", self.rank),
            Family::I2(m) => write!(f, "I2:{m}"),
            Family::H3 => write!(f, "H3"),
            Family::F4 => write!(f, "F4"),
            Family::Custom(m) => {
                let rows: Vec<String> = m
                    .iter()
                    .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "M[{}]", rows.join(";"))
            }
        }
    }
}

/// A direct product of irreducible components plus an enumeration cap.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterSpec {
    pub components: Vec<Component>,
    pub order_cap: u64,
}

impl CoxeterSpec {
    pub fn new(components: Vec<Component>) -> Self {
        Self { components, order_cap: DEFAULT_ORDER_CAP }
    }

    pub fn with_order_cap(mut self, cap: u64) -> Self {
        self.order_cap = cap;
        self
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// Product of the component orders, if every component has a closed form.
    pub fn predicted_order(&self) -> Option<u64> {
        self.components
            .iter()
            .try_fold(1u64, |acc, c| c.predicted_order().and_then(|o| acc.checked_mul(o)))
    }

    pub fn validate(&self) -> Result<(), CoxeterError> {
        if self.components.is_empty() {
            return Err(CoxeterError::InvalidSpec("no components".into()));
        }
        if self.rank() > 64 {
            return Err(CoxeterError::InvalidSpec("total rank above 64 is not supported".into()));
        }
        for c in &self.components {
            c.validate()?;
        }
        if let Some(order) = self.predicted_order() {
            if order > self.order_cap {
                return Err(CoxeterError::OrderCapExceeded { cap: self.order_cap });
            }
        }
        Ok(())
    }

    /// Block-diagonal Coxeter matrix of the product, components in the given order.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        let mut offset = 0;
        for c in &self.components {
            let cm = c.coxeter_matrix();
            for i in 0..c.rank {
                for j in 0..c.rank {
                    m[offset + i][offset + j] = cm[i][j];
                }
            }
            offset += c.rank;
        }
        m
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(Component::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Parses the compact group grammar: `A3`, `B4`, `D3`, `I2:5`, `H3`, `F4`,
/// joined by `x` for direct products (`B3xA1`).
impl FromStr for CoxeterSpec {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoxeterError::Parse(s.to_string());
        let s_trim = s.trim();
        if s_trim.is_empty() {
            return Err(bad());
        }
        let mut components = Vec::new();
        for token in s_trim.split('x') {
            let token = token.trim();
            let comp = if let Some(rest) = token.strip_prefix("I2:") {
                Component::i2(rest.parse().map_err(|_| bad())?)
            } else if token == "H3" {
                Component::h3()
            } else if token == "F4" {
                Component::f4()
            } else {
                let mut chars = token.chars();
                let letter = chars.next().ok_or_else(bad)?;
                let digits = chars.as_str();
                if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let rank: usize = digits.parse().map_err(|_| bad())?;
                match letter {
                    'A' => Component::a(rank),
                    'B' => Component::b(rank),
                    'D' => Component::d(rank),
                    _ => return Err(bad()),
                }
            };
            components.push(comp);
        }
        let spec = CoxeterSpec::new(components);
        for c in &spec.components {
            c.validate()?;
        }
        Ok(spec)
    }
}
