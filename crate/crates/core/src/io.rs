//! JSON file formats: rings, connections, maps, families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::conn::Connection;
use crate::error::{Error, Result};
use crate::exactalg::{parse_loc, parse_poly, vars_of, LocRing, Ring};
use crate::gaussmanin::Family;
use crate::locmat::{self, Mat};
use crate::pullback::PolyMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingFile {
    pub vars: Vec<String>,
    #[serde(default)]
    pub denominators: Vec<String>,
}

impl RingFile {
    pub fn build(&self) -> Result<Ring> {
        let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let vars = vars_of(&names);
        let dens = self.denominators.iter().map(|d| parse_poly(&vars, d)).collect::<Result<_>>()?;
        LocRing::new(vars, dens)
    }

    pub fn of(ring: &Ring) -> Self {
        RingFile { vars: ring.vars().to_vec(), denominators: ring.dens().iter().map(|d| d.render()).collect() }
    }
}

/// `{ "vars", "denominators", "rank", "matrices": { var: [[..]] } }`; missing variables get zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionFile {
    pub vars: Vec<String>,
    #[serde(default)]
    pub denominators: Vec<String>,
    pub rank: usize,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

fn parse_matrix(ring: &Ring, rank: usize, m: &[Vec<String>], what: &str) -> Result<Mat> {
    if m.len() != rank || m.iter().any(|r| r.len() != rank) {
        return Err(Error::Shape(format!("matrix for {what} is not {rank}x{rank}")));
    }
    m.iter().map(|r| r.iter().map(|s| parse_loc(ring, s)).collect()).collect()
}

impl ConnectionFile {
    pub fn build(&self) -> Result<Connection> {
        let ring = RingFile { vars: self.vars.clone(), denominators: self.denominators.clone() }.build()?;
        self.build_over(&ring)
    }

    pub fn build_over(&self, ring: &Ring) -> Result<Connection> {
        if let Some(v) = self.matrices.keys().find(|k| !self.vars.contains(k)) {
            return Err(Error::UnknownVariable(v.clone()));
        }
        let mats = self
            .vars
            .iter()
            .map(|v| match self.matrices.get(v) {
                Some(m) => parse_matrix(ring, self.rank, m, v),
                None => Ok(locmat::zeros(ring, self.rank, self.rank)),
            })
            .collect::<Result<_>>()?;
        Connection::new(ring, self.rank, mats)
    }

    pub fn of(c: &Connection) -> Self {
        let ring = c.ring();
        ConnectionFile {
            vars: ring.vars().to_vec(),
            denominators: ring.dens().iter().map(|d| d.render()).collect(),
            rank: c.rank(),
            matrices: ring.vars().iter().cloned().zip(c.mats().iter().map(locmat::render)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: RingFile,
    pub target: RingFile,
    /// One per target variable, in the source ring.
    pub components: Vec<String>,
}

impl MapFile {
    pub fn build(&self) -> Result<PolyMap> {
        let src = self.source.build()?;
        let tgt = self.target.build()?;
        let comps = self.components.iter().map(|s| parse_loc(&src, s)).collect::<Result<_>>()?;
        PolyMap::new(&src, &tgt, comps)
    }

    pub fn of(f: &PolyMap) -> Self {
        MapFile {
            source: RingFile::of(f.source()),
            target: RingFile::of(f.target()),
            components: f.components().iter().map(|c| c.render()).collect(),
        }
    }
}

/// Connection file for a map's target: its ring must match the map's target ring.
pub fn connection_on_target(f: &PolyMap, c: &ConnectionFile) -> Result<Connection> {
    let desc = RingFile { vars: c.vars.clone(), denominators: c.denominators.clone() };
    if desc.build()?.vars() != f.target().vars() {
        return Err(Error::VarMismatch(c.vars.clone(), f.target().vars().to_vec()));
    }
    c.build_over(f.target())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub fiber_var: String,
    pub base_var: String,
    pub h: String,
    #[serde(default)]
    pub base_denominators: Vec<String>,
    #[serde(default = "one")]
    pub rank: usize,
    #[serde(rename = "A_x", default, skip_serializing_if = "Option::is_none")]
    pub a_x: Option<Vec<Vec<String>>>,
    #[serde(rename = "A_lam", default, skip_serializing_if = "Option::is_none")]
    pub a_lam: Option<Vec<Vec<String>>>,
}

fn one() -> usize {
    1
}

impl FamilyFile {
    pub fn untwisted(h: &str, base: &[&str]) -> Self {
        FamilyFile {
            fiber_var: "x".into(),
            base_var: "lam".into(),
            h: h.into(),
            base_denominators: base.iter().map(|s| s.to_string()).collect(),
            rank: 1,
            a_x: None,
            a_lam: None,
        }
    }

    pub fn build(&self) -> Result<Family> {
        let base: Vec<&str> = self.base_denominators.iter().map(|s| s.as_str()).collect();
        let zero = || vec![vec!["0".to_string(); self.rank]; self.rank];
        let twist = match (&self.a_x, &self.a_lam) {
            (None, None) => None,
            (ax, al) => Some((ax.clone().unwrap_or_else(zero), al.clone().unwrap_or_else(zero))),
        };
        Family::new(
            &self.fiber_var,
            &self.base_var,
            &self.h,
            &base,
            self.rank,
            twist.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice())),
        )
    }

    pub fn of(f: &Family) -> Self {
        let twist = f.is_twisted().then(|| {
            let m = f.connection().mats();
            (locmat::render(&m[0]), locmat::render(&m[1]))
        });
        FamilyFile {
            fiber_var: f.fiber_var().into(),
            base_var: f.base_var().into(),
            h: f.h().render(),
            base_denominators: f.base_denominators().iter().map(|d| d.render()).collect(),
            rank: f.rank(),
            a_x: twist.as_ref().map(|t| t.0.clone()),
            a_lam: twist.map(|t| t.1),
        }
    }
}

pub fn from_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Input(format!("bad JSON: {e}")))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    from_json(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connection_round_trip() {
        let s = r#"{"vars":["x"],"denominators":["x"],"rank":1,"matrices":{"x":[["c/x"]]}}"#;
        assert!(from_json::<ConnectionFile>(s).unwrap().build().is_err());
        let s = r#"{"vars":["x"],"denominators":["x"],"rank":1,"matrices":{"x":[["3/x"]]}}"#;
        let desc: ConnectionFile = from_json(s).unwrap();
        let c = desc.build().unwrap();
        assert_eq!(ConnectionFile::of(&c), desc);
    }

    #[test]
    fn family_defaults() {
        let s = r#"{"fiber_var":"x","base_var":"lam","h":"x^2 - lam","base_denominators":["lam"]}"#;
        let f: FamilyFile = from_json(s).unwrap();
        assert_eq!(f.rank, 1);
        let fam = f.build().unwrap();
        assert!(!fam.is_twisted());
        assert_eq!(FamilyFile::of(&fam), f);
        let t = r#"{"fiber_var":"x","base_var":"lam","h":"x - lam","rank":1,"A_lam":[["1"]]}"#;
        assert!(from_json::<FamilyFile>(t).unwrap().build().unwrap().is_twisted());
    }

    #[test]
    fn map_schema() {
        let s = r#"{"source":{"vars":["x"],"denominators":["x"]},"target":{"vars":["y"],"denominators":["y"]},"components":["x^2"]}"#;
        let f = from_json::<MapFile>(s).unwrap().build().unwrap();
        assert_eq!(MapFile::of(&f).components, vec!["x^2"]);
    }
}
