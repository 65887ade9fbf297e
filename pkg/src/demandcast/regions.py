"""The five grid regions, their city catalogs, and weather feature naming."""

from dataclasses import dataclass
from enum import Enum


class Region(str, Enum):
    NR = "NR"   # Northern
    WR = "WR"   # Western
    ER = "ER"   # Eastern
    SR = "SR"   # Southern
    NER = "NER"  # Northeastern

REGION_NAMES = {
    Region.NR: "Northern",
    Region.WR: "Western",
    Region.ER: "Eastern",
    Region.SR: "Southern",
    Region.NER: "Northeastern",
}


@dataclass(frozen=True)
class City:
    name: str
    region: Region
    lat: float
    lon: float
    pop_weight: float  # share of the region's catalog population


# Largest cities per grid region (Howrah excluded: same grid cell as Kolkata).
_CITY_ROWS = [
    # name, region, lat, lon, population (millions, metro)
    ("Delhi", Region.NR, 28.61, 77.21, 29.4),
    ("Jaipur", Region.NR, 26.91, 75.79, 3.9),
    ("Lucknow", Region.NR, 26.85, 80.95, 3.4),
    ("Kanpur", Region.NR, 26.45, 80.33, 3.1),
    ("Ghaziabad", Region.NR, 28.67, 77.42, 2.8),
    ("Ludhiana", Region.NR, 30.90, 75.86, 1.8),
    ("Agra", Region.NR, 27.18, 78.01, 2.1),
    ("Mumbai", Region.WR, 19.08, 72.88, 20.4),
    ("Ahmadabad", Region.WR, 23.02, 72.57, 7.9),
    ("Surat", Region.WR, 21.17, 72.83, 7.2),
    ("Pune", Region.WR, 18.52, 73.86, 6.5),
    ("Nagpur", Region.WR, 21.15, 79.09, 2.9),
    ("Thane", Region.WR, 19.22, 72.98, 2.5),
    ("Bhopal", Region.WR, 23.26, 77.41, 2.4),
    ("Indore", Region.WR, 22.72, 75.86, 2.9),
    ("Pimpri-Chinchwad", Region.WR, 18.63, 73.80, 2.1),
    ("Kolkata", Region.ER, 22.57, 88.36, 14.9),
    ("Patna", Region.ER, 25.59, 85.14, 2.4),
    ("Ranchi", Region.ER, 23.34, 85.31, 1.5),
    ("Hyderabad", Region.SR, 17.38, 78.49, 9.7),
    ("Bangalore", Region.SR, 12.97, 77.59, 12.3),
    ("Chennai", Region.SR, 13.08, 80.27, 10.5),
    ("Visakhapatnam", Region.SR, 17.69, 83.22, 2.3),
    ("Coimbatore", Region.SR, 11.02, 76.96, 2.8),
    ("Vijayawada", Region.SR, 16.51, 80.65, 1.8),
    ("Madurai", Region.SR, 9.93, 78.12, 1.7),
    ("Guwahati", Region.NER, 26.14, 91.74, 1.1),
    ("Agartala", Region.NER, 23.83, 91.28, 0.6),
    ("Imphal", Region.NER, 24.82, 93.94, 0.5),
]

# Hourly reanalysis variables retained per city: specific humidity,
# temperature, eastward and northward wind (2 m and 10 m), plus the three
# precipitable water columns.
WEATHER_VARS = [
    "qv2m", "qv10m", "t2m", "t10m",
    "u2m", "u10m", "v2m", "v10m",
    "tqi", "tql", "tqv",
]
WEATHER_STATS = ["min", "max", "avg"]

TEMPERATURE_VARS = {"t2m", "t10m"}


class CityCatalog:
    """Region -> ordered city list with coordinates and population weight."""

    def __init__(self, cities=None):
        cities = cities if cities is not None else default_cities()
        self._by_region: dict[Region, list[City]] = {r: [] for r in Region}
        for c in cities:
            self._by_region[c.region].append(c)
        for region, group in self._by_region.items():
            if not group:
                raise ValueError(f"no cities for region {region.value}")
            total = sum(c.pop_weight for c in group)
            self._by_region[region] = [
                City(c.name, c.region, c.lat, c.lon, c.pop_weight / total)
                for c in group
            ]

    def cities(self, region: Region) -> list[City]:
        return list(self._by_region[region])

    def city_names(self, region: Region) -> list[str]:
        return [c.name for c in self._by_region[region]]

    def all_city_names(self) -> list[str]:
        return [c.name for r in Region for c in self._by_region[r]]

    def counts(self) -> dict[Region, int]:
        return {r: len(g) for r, g in self._by_region.items()}


def default_cities() -> list[City]:
    return [City(n, r, lat, lon, pop) for n, r, lat, lon, pop in _CITY_ROWS]


def feature_name(city: str, var: str, stat: str) -> str:
    return f"{city} {var} {stat}"
