//! Versioned, self-describing session files holding computed local data.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::data::GaloisData;
use super::field::{LocalElem, LocalField};
use crate::arith::IntPoly;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

pub const SESSION_VERSION: &str = "galois-session/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredGroup {
    pub degree: usize,
    /// Generators in 1-based cycle notation.
    pub generators: Vec<String>,
}

impl StoredGroup {
    pub fn from_group(g: &PermGroup) -> StoredGroup {
        StoredGroup {
            degree: g.degree(),
            generators: g.generators().iter().map(Perm::to_string).collect(),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|s| Perm::parse(self.degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub version: String,
    /// Input text as the user gave it.
    pub input: String,
    pub polys: Vec<IntPoly>,
    pub prime: u64,
    pub residue_degree: usize,
    /// Every precision the roots have been held at, in order.
    pub precision_history: Vec<u32>,
    pub local: LocalField,
    pub roots: Vec<LocalElem>,
    pub group: Option<StoredGroup>,
}

impl Session {
    pub fn new(input: &str, data: &GaloisData) -> Session {
        Session {
            version: SESSION_VERSION.to_string(),
            input: input.to_string(),
            polys: data.polys.clone(),
            prime: data.local.p,
            residue_degree: data.local.degree(),
            precision_history: vec![data.local.k],
            local: data.local.clone(),
            roots: data.roots.clone(),
            group: data.group.as_ref().map(StoredGroup::from_group),
        }
    }

    /// Store newer data, appending to the precision history when it grew.
    pub fn update(&mut self, data: &GaloisData) {
        if self.precision_history.last() != Some(&data.local.k) {
            self.precision_history.push(data.local.k);
        }
        self.local = data.local.clone();
        self.roots = data.roots.clone();
        self.group = data.group.as_ref().map(StoredGroup::from_group);
    }

    pub fn data(&self) -> Result<GaloisData> {
        let data = GaloisData {
            polys: self.polys.clone(),
            local: self.local.clone(),
            roots: self.roots.clone(),
            group: self.group.as_ref().map(StoredGroup::to_group).transpose()?,
        };
        if data.roots.len() != data.product().deg() || !data.check_roots() {
            return Err(Error::Session("stored roots do not satisfy the stored polynomials".into()));
        }
        Ok(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sessions serialize")
    }

    pub fn from_json(s: &str) -> Result<Session> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Session(e.to_string()))?;
        match v.get("version").and_then(|x| x.as_str()) {
            Some(SESSION_VERSION) => {}
            Some(other) => return Err(Error::Session(format!("unsupported version {other}"))),
            None => return Err(Error::Session("missing version tag".into())),
        }
        serde_json::from_value(v).map_err(|e| Error::Session(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Session(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Session> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Session(format!("{}: {e}", path.display())))?;
        Session::from_json(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::galois_group;

    #[test]
    fn round_trip_keeps_everything() {
        let (g, data) = galois_group(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap();
        let s = Session::new("x^3-2", &data);
        let back = Session::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
        let d = back.data().unwrap();
        assert_eq!(d.roots, data.roots);
        assert_eq!(d.group.unwrap(), g);
    }

    #[test]
    fn wrong_version_is_refused() {
        let (_, data) = galois_group(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        let j = Session::new("x^2-2", &data).to_json().replace(SESSION_VERSION, "galois-session/0");
        assert!(matches!(Session::from_json(&j), Err(Error::Session(_))));
    }
}
