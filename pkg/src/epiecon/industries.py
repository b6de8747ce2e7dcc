"""Industry and occupation reference tables.

Twenty 2-digit NAICS industries with customer-facing flags and essential
scores (local region and rest-of-country), plus the 22 major SOC occupation
groups with their remote-labor index (probability that a worker in that
occupation can work from home).
"""

import numpy as np

# code, name, customer_facing, essential score (local), relative weight of the
# industry's venues in community foot traffic (used by the synthetic visit
# generator), venue count weight.
_INDUSTRY_ROWS = [
    ("11", "Agriculture", 0, 1.00, 0.0, 0.0),
    ("21", "Mining", 0, 1.00, 0.0, 0.0),
    ("22", "Utilities", 0, 1.00, 0.0, 0.0),
    ("23", "Construction", 0, 0.49, 3.2e3, 192),
    ("31-33", "Manufacturing", 0, 0.56, 1.3e4, 1101),
    ("42", "Wholesale trade", 0, 0.81, 0.0, 0.0),
    ("44-45", "Retail trade", 1, 0.65, 1.41e7, 53108),
    ("48-49", "Transportation and warehousing", 1, 0.99, 9.4e5, 27210),
    ("51", "Information", 0, 0.78, 1.9e3, 2379),
    ("52", "Finance and insurance", 0, 1.00, 5.0e5, 11812),
    ("53", "Real estate and rental", 0, 0.91, 2.8e4, 3285),
    ("54", "Professional services", 0, 0.60, 1.7e5, 12519),
    ("55", "Management of companies", 0, 1.00, 0.0, 189),
    ("56", "Administrative and waste services", 0, 0.45, 1.1e4, 3201),
    ("61", "Educational services", 1, 0.40, 2.15e6, 19305),
    ("62", "Health care and social assistance", 1, 1.00, 1.43e6, 28438),
    ("71", "Arts and entertainment", 1, 0.00, 4.2e6, 49717),
    ("72", "Accommodation and food services", 1, 0.22, 6.0e6, 67877),
    ("81", "Other services", 1, 0.66, 1.65e6, 37573),
    ("92", "Public administration", 0, 1.00, 2.6e5, 6055),
]

N_INDUSTRIES = len(_INDUSTRY_ROWS)
INDUSTRY_CODES = [r[0] for r in _INDUSTRY_ROWS]
INDUSTRY_NAMES = [r[1] for r in _INDUSTRY_ROWS]
CUSTOMER_FACING = np.array([r[2] for r in _INDUSTRY_ROWS], dtype=bool)
ESSENTIAL_LOCAL = np.array([r[3] for r in _INDUSTRY_ROWS], dtype=float)

# The rest-of-country closures were on average looser; construction and
# manufacturing are the documented cases.
ESSENTIAL_REST = ESSENTIAL_LOCAL.copy()
ESSENTIAL_REST[INDUSTRY_NAMES.index("Construction")] = 0.94
ESSENTIAL_REST[INDUSTRY_NAMES.index("Manufacturing")] = 0.86

COMMUNITY_WEIGHT = np.array([r[4] for r in _INDUSTRY_ROWS], dtype=float)
VENUE_COUNT_WEIGHT = np.array([r[5] for r in _INDUSTRY_ROWS], dtype=float)

# Sentinel for venues that are not an economic activity (parks, rivers, ...).
NO_INDUSTRY = -1

# SOC major group, title, remote labor index.
_OCCUPATION_ROWS = [
    ("11-0000", "Management", 0.71),
    ("13-0000", "Business and Financial Operations", 0.77),
    ("15-0000", "Computer and Mathematical", 0.72),
    ("17-0000", "Architecture and Engineering", 0.63),
    ("19-0000", "Life, Physical, and Social Science", 0.49),
    ("21-0000", "Community and Social Service", 0.59),
    ("23-0000", "Legal", 0.54),
    ("25-0000", "Education, Training, and Library", 0.59),
    ("27-0000", "Arts, Design, Entertainment, Sports, and Media", 0.64),
    ("29-0000", "Healthcare Practitioners and Technical", 0.34),
    ("31-0000", "Healthcare Support", 0.18),
    ("33-0000", "Protective Service", 0.19),
    ("35-0000", "Food Preparation and Serving Related", 0.34),
    ("37-0000", "Building and Grounds Cleaning and Maintenance", 0.18),
    ("39-0000", "Personal Care and Service", 0.28),
    ("41-0000", "Sales and Related", 0.65),
    ("43-0000", "Office and Administrative Support", 0.54),
    ("45-0000", "Farming, Fishing, and Forestry", 0.09),
    ("47-0000", "Construction and Extraction", 0.21),
    ("49-0000", "Installation, Maintenance, and Repair", 0.19),
    ("51-0000", "Production", 0.17),
    ("53-0000", "Transportation and Material Moving", 0.18),
]

N_OCCUPATIONS = len(_OCCUPATION_ROWS)
OCCUPATION_CODES = [r[0] for r in _OCCUPATION_ROWS]
OCCUPATION_TITLES = [r[1] for r in _OCCUPATION_ROWS]
REMOTE_LABOR_INDEX = np.array([r[2] for r in _OCCUPATION_ROWS], dtype=float)


def industry_index(name_or_code):
    """Resolve an industry by NAICS code or by name; returns its index."""
    if name_or_code in INDUSTRY_CODES:
        return INDUSTRY_CODES.index(name_or_code)
    if name_or_code in INDUSTRY_NAMES:
        return INDUSTRY_NAMES.index(name_or_code)
    raise KeyError(f"unknown industry: {name_or_code!r}")
