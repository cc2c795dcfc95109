//! Integer chip configurations on the vertices of a graph.

use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub, SubAssign};

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Chips on each vertex, indexed like the vertices of the graph it was made
/// for. Operations taking a graph check that the sizes agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    coeffs: Vec<i64>,
}

impl Divisor {
    pub fn zero(g: &MultiGraph) -> Self {
        Divisor { coeffs: vec![0; g.vertex_count()] }
    }

    pub fn from_coefficients(coeffs: Vec<i64>) -> Self {
        Divisor { coeffs }
    }

    /// One chip on each listed vertex; repeats accumulate.
    pub fn from_vertices(g: &MultiGraph, vertices: &[usize]) -> Self {
        let mut d = Self::zero(g);
        for &v in vertices {
            d.coeffs[v] += 1;
        }
        d
    }

    /// Builds from `(name, coefficient)` pairs; repeats accumulate.
    pub fn from_named(g: &MultiGraph, entries: &[(&str, i64)]) -> Result<Self> {
        let mut d = Self::zero(g);
        for (name, c) in entries {
            d.coeffs[g.vertex(name)?] += c;
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Vertices with a nonzero coefficient, in order.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (v, c))
    }

    pub(crate) fn check(&self, g: &MultiGraph) -> Result<()> {
        if self.coeffs.len() == g.vertex_count() {
            Ok(())
        } else {
            Err(Error::DivisorMismatch {
                expected: g.vertex_count(),
                found: self.coeffs.len(),
            })
        }
    }

    /// Zero-extends to a graph that contains this one's vertices as a prefix.
    pub fn extended(&self, len: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len.max(coeffs.len()), 0);
        Divisor { coeffs }
    }

    /// JSON object from vertex name to coefficient; zeros are omitted.
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        let mut map = Map::new();
        for (v, c) in self.support() {
            map.insert(g.vertex_name(v).to_string(), Value::from(c));
        }
        Value::Object(map)
    }

    pub fn from_json(g: &MultiGraph, value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidArgument("divisor must be a JSON object".into()))?;
        let mut d = Self::zero(g);
        for (name, c) in obj {
            let c = c.as_i64().ok_or_else(|| {
                Error::InvalidArgument(format!("coefficient of `{name}` is not an integer"))
            })?;
            d.coeffs[g.vertex(name)?] = c;
        }
        Ok(d)
    }

    pub fn parse(g: &MultiGraph, text: &str) -> Result<Self> {
        Self::from_json(g, &serde_json::from_str(text)?)
    }
}

impl Index<usize> for Divisor {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.coeffs[v]
    }
}

impl IndexMut<usize> for Divisor {
    fn index_mut(&mut self, v: usize) -> &mut i64 {
        &mut self.coeffs[v]
    }
}

impl AddAssign<&Divisor> for Divisor {
    fn add_assign(&mut self, rhs: &Divisor) {
        assert_eq!(self.len(), rhs.len(), "divisors on different graphs");
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&Divisor> for Divisor {
    fn sub_assign(&mut self, rhs: &Divisor) {
        assert_eq!(self.len(), rhs.len(), "divisors on different graphs");
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a -= b);
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn json_round_trip_skips_zeros() {
        let g = catalog::cycle_graph(3).unwrap();
        let d = Divisor::from_named(&g, &[("v0", 2), ("v2", -1)]).unwrap();
        let json = d.to_json(&g);
        assert_eq!(json.to_string(), r#"{"v0":2,"v2":-1}"#);
        assert_eq!(Divisor::from_json(&g, &json).unwrap(), d);
        assert_eq!(d.degree(), 1);
        assert!(!d.is_effective());
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let g = catalog::cycle_graph(3).unwrap();
        assert!(matches!(Divisor::parse(&g, r#"{"zz": 1}"#), Err(Error::UnknownVertex(_))));
        assert!(Divisor::parse(&g, r#"{"v0": 1.5}"#).is_err());
        assert!(Divisor::parse(&g, "[1]").is_err());
    }

    #[test]
    fn arithmetic() {
        let g = catalog::cycle_graph(2).unwrap();
        let a = Divisor::from_vertices(&g, &[0, 0, 1]);
        let b = Divisor::from_vertices(&g, &[1]);
        assert_eq!((&a - &b).coefficients(), [2, 0]);
        assert_eq!((&a + &b).coefficients(), [2, 2]);
        assert_eq!((-&a).degree(), -3);
        assert_eq!(a.extended(4).coefficients(), [2, 1, 0, 0]);
    }
}
