//! Southern Caspian coast assessment points, grouped by port.

pub(super) struct ZoneBlock {
    pub zone: &'static str,
    pub prefix: &'static str,
    pub latitudes: &'static [f64],
    pub longitudes: &'static [f64],
}

pub(super) const ZONES: [ZoneBlock; 9] = [
    ZoneBlock {
        zone: "Torkaman",
        prefix: "T",
        latitudes: &[
            37.3, 37.3, 37.3, 37.2, 37.2, 37.2, 37.1, 37.1, 37.1, 37.0, 37.0, 37.0,
        ],
        longitudes: &[
            53.7, 53.8, 53.9, 53.7, 53.8, 53.9, 53.7, 53.8, 53.9, 53.7, 53.8, 53.9,
        ],
    },
    ZoneBlock {
        zone: "Amirabad",
        prefix: "A",
        latitudes: &[
            37.1, 37.1, 37.1, 37.1, 37.0, 37.0, 37.0, 37.0, 36.9, 36.9, 36.9,
        ],
        longitudes: &[
            53.2, 53.3, 53.4, 53.5, 53.2, 53.3, 53.4, 53.5, 53.2, 53.3, 53.4,
        ],
    },
    ZoneBlock {
        zone: "Babolsar",
        prefix: "B",
        latitudes: &[
            37.0, 37.0, 37.0, 37.0, 36.9, 36.9, 36.9, 36.9, 36.8, 36.8, 36.8, 36.8, 36.7,
        ],
        longitudes: &[
            52.5, 52.6, 52.7, 52.8, 52.5, 52.6, 52.7, 52.8, 52.5, 52.6, 52.7, 52.8, 52.5,
        ],
    },
    ZoneBlock {
        zone: "Mahmoud-Abad",
        prefix: "M",
        latitudes: &[
            36.9, 36.9, 36.9, 36.9, 36.8, 36.8, 36.8, 36.8, 36.7, 36.7, 36.7, 36.7,
        ],
        longitudes: &[
            52.1, 52.2, 52.3, 52.4, 52.1, 52.2, 52.3, 52.4, 52.1, 52.2, 52.3, 52.4,
        ],
    },
    ZoneBlock {
        zone: "Nowshahr",
        prefix: "N",
        latitudes: &[
            36.9, 36.9, 36.9, 36.9, 36.8, 36.8, 36.8, 36.8, 36.7, 36.7, 36.7, 36.7,
        ],
        longitudes: &[
            51.4, 51.5, 51.6, 51.7, 51.4, 51.5, 51.6, 51.7, 51.4, 51.5, 51.6, 51.7,
        ],
    },
    ZoneBlock {
        zone: "Ramsar",
        prefix: "R",
        latitudes: &[
            37.2, 37.2, 37.2, 37.2, 37.1, 37.1, 37.1, 37.1, 37.0, 37.0, 37.0,
        ],
        longitudes: &[
            50.5, 50.6, 50.7, 50.8, 50.5, 50.6, 50.7, 50.8, 50.6, 50.7, 50.8,
        ],
    },
    ZoneBlock {
        zone: "Kiashahr",
        prefix: "K",
        latitudes: &[
            37.7, 37.7, 37.7, 37.7, 37.6, 37.6, 37.6, 37.6, 37.5, 37.5, 37.5, 37.5,
        ],
        longitudes: &[
            49.8, 49.9, 50.0, 50.1, 49.8, 49.9, 50.0, 50.1, 49.8, 49.9, 50.0, 50.1,
        ],
    },
    ZoneBlock {
        zone: "Anzali",
        prefix: "Z",
        latitudes: &[
            37.7, 37.7, 37.7, 37.7, 37.6, 37.6, 37.6, 37.6, 37.5, 37.5, 37.5,
        ],
        longitudes: &[
            49.4, 49.5, 49.6, 49.7, 49.4, 49.5, 49.6, 49.7, 49.4, 49.5, 49.6,
        ],
    },
    ZoneBlock {
        zone: "Astara",
        prefix: "S",
        latitudes: &[
            38.4, 38.4, 38.4, 38.3, 38.3, 38.3, 38.2, 38.2, 38.2, 38.1, 38.1,
        ],
        longitudes: &[
            48.9, 49.0, 49.1, 48.9, 49.0, 49.1, 48.9, 49.0, 49.1, 49.0, 49.1,
        ],
    },
];
