use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::builtin::ZONES;
use super::{csv_err, fmt_opt, writer, DataError, Table};

pub const CATALOG_HEADER: [&str; 6] = ["index", "name", "zone", "lat_deg", "lon_deg", "depth_m"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub index: u32,
    pub name: String,
    pub zone: String,
    pub lat_deg: f64,
    pub lon_deg: f64,
    pub depth_m: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SiteCatalog {
    entries: Vec<CatalogEntry>,
}

impl SiteCatalog {
    /// Build a catalog, rejecting duplicate indices or names, coordinates
    /// outside the globe and non-positive depths.
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self, DataError> {
        check_entries(&entries, |i, message| {
            DataError::Invalid(format!("entry {i}: {message}"))
        })?;
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Zone names in order of first appearance.
    pub fn zones(&self) -> Vec<&str> {
        let mut zones: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !zones.contains(&e.zone.as_str()) {
                zones.push(&e.zone);
            }
        }
        zones
    }

    /// Keep only the named points, in catalog order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, DataError> {
        for name in names {
            if self.get(name.as_ref()).is_none() {
                return Err(DataError::UnknownPoint(name.as_ref().to_string()));
            }
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .filter(|e| names.iter().any(|n| n.as_ref() == e.name))
                .cloned()
                .collect(),
        })
    }

    /// Fill every missing depth with `depth`.
    pub fn with_default_depth(mut self, depth: f64) -> Result<Self, DataError> {
        if !(depth.is_finite() && depth > 0.0) {
            return Err(DataError::Invalid(format!(
                "depth must be positive, got {depth}"
            )));
        }
        for e in &mut self.entries {
            e.depth_m.get_or_insert(depth);
        }
        Ok(self)
    }

    pub fn entries_mut(&mut self) -> impl Iterator<Item = &mut CatalogEntry> {
        self.entries.iter_mut()
    }
}

fn check_entries<E>(entries: &[CatalogEntry], fail: impl Fn(usize, String) -> E) -> Result<(), E> {
    let mut indices = HashSet::new();
    let mut names = HashSet::new();
    for (i, e) in entries.iter().enumerate() {
        if e.name.is_empty() || e.zone.is_empty() {
            return Err(fail(i, "name and zone must be non-empty".into()));
        }
        if !indices.insert(e.index) {
            return Err(fail(i, format!("duplicate index {}", e.index)));
        }
        if !names.insert(e.name.as_str()) {
            return Err(fail(i, format!("duplicate name {:?}", e.name)));
        }
        if !(-90.0..=90.0).contains(&e.lat_deg) {
            return Err(fail(i, format!("latitude {} out of range", e.lat_deg)));
        }
        if !(-180.0..=180.0).contains(&e.lon_deg) {
            return Err(fail(i, format!("longitude {} out of range", e.lon_deg)));
        }
        if let Some(d) = e.depth_m {
            if !(d.is_finite() && d > 0.0) {
                return Err(fail(i, format!("depth must be positive, got {d}")));
            }
        }
    }
    Ok(())
}

/// The 105 southern Caspian points, indexed 1..=105 in port order. No depths.
pub fn builtin_catalog() -> SiteCatalog {
    let mut entries = Vec::with_capacity(105);
    for block in &ZONES {
        for (i, (lat, lon)) in block.latitudes.iter().zip(block.longitudes).enumerate() {
            entries.push(CatalogEntry {
                index: entries.len() as u32 + 1,
                name: format!("{}{}", block.prefix, i + 1),
                zone: block.zone.to_string(),
                lat_deg: *lat,
                lon_deg: *lon,
                depth_m: None,
            });
        }
    }
    SiteCatalog { entries }
}

/// Read a catalog with the `index,name,zone,lat_deg,lon_deg,depth_m` schema.
/// `depth_m` may be left empty.
pub fn load_catalog(path: &Path) -> Result<SiteCatalog, DataError> {
    let mut table = Table::open(path, &CATALOG_HEADER)?;
    let rows = table.rows()?;
    let mut entries = Vec::with_capacity(rows.len());
    let mut lines = Vec::with_capacity(rows.len());
    for row in rows {
        let index_raw = row.text(path, 0, "index")?;
        let index = index_raw.parse::<u32>().map_err(|_| {
            DataError::parse(
                path,
                row.line,
                format!("index: expected an integer, got {index_raw:?}"),
            )
        })?;
        entries.push(CatalogEntry {
            index,
            name: row.text(path, 1, "name")?,
            zone: row.text(path, 2, "zone")?,
            lat_deg: row.f64(path, 3, "lat_deg")?,
            lon_deg: row.f64(path, 4, "lon_deg")?,
            depth_m: row.opt_f64(path, 5, "depth_m")?,
        });
        lines.push(row.line);
    }
    check_entries(&entries, |i, message| {
        DataError::parse(path, lines[i], message)
    })?;
    Ok(SiteCatalog { entries })
}

pub fn write_catalog(catalog: &SiteCatalog, path: &Path) -> Result<(), DataError> {
    let mut w = writer(path)?;
    w.write_record(CATALOG_HEADER).map_err(csv_err(path))?;
    for e in &catalog.entries {
        w.write_record([
            e.index.to_string(),
            e.name.clone(),
            e.zone.clone(),
            e.lat_deg.to_string(),
            e.lon_deg.to_string(),
            fmt_opt(e.depth_m),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(super::io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shape() {
        let c = builtin_catalog();
        assert_eq!(c.len(), 105);
        let indices: Vec<u32> = c.entries().iter().map(|e| e.index).collect();
        assert_eq!(indices, (1..=105).collect::<Vec<_>>());
        let sizes: Vec<usize> = c
            .zones()
            .iter()
            .map(|z| c.entries().iter().filter(|e| e.zone == *z).count())
            .collect();
        assert_eq!(sizes, [12, 11, 13, 12, 12, 11, 12, 11, 11]);
        for e in c.entries() {
            assert!((36.0..=39.0).contains(&e.lat_deg), "{e:?}");
            assert!((48.0..=54.0).contains(&e.lon_deg), "{e:?}");
            assert!(e.depth_m.is_none());
        }
        assert!(SiteCatalog::new(c.entries().to_vec()).is_ok());
    }

    #[test]
    fn builtin_spot_checks() {
        let c = builtin_catalog();
        let k4 = c.get("K4").unwrap();
        assert_eq!(
            (k4.lat_deg, k4.lon_deg, k4.zone.as_str(), k4.index),
            (37.7, 50.1, "Kiashahr", 75)
        );
        let t1 = c.get("T1").unwrap();
        assert_eq!(
            (t1.lat_deg, t1.lon_deg, t1.zone.as_str(), t1.index),
            (37.3, 53.7, "Torkaman", 1)
        );
        let s11 = c.get("S11").unwrap();
        assert_eq!((s11.lat_deg, s11.lon_deg, s11.index), (38.1, 49.1, 105));
        let b13 = c.get("B13").unwrap();
        assert_eq!((b13.lat_deg, b13.lon_deg, b13.index), (36.7, 52.5, 36));
    }

    #[test]
    fn selection() {
        let c = builtin_catalog();
        let s = c.select(&["K4", "T1"]).unwrap();
        let names: Vec<&str> = s.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["T1", "K4"]);
        assert!(matches!(c.select(&["Q9"]), Err(DataError::UnknownPoint(_))));
    }

    #[test]
    fn duplicates_rejected_in_memory() {
        let mut entries = builtin_catalog().entries()[..2].to_vec();
        entries[1].name = entries[0].name.clone();
        assert!(SiteCatalog::new(entries).is_err());
    }
}
