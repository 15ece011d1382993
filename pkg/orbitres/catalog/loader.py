"""
Loading of case files and their Betti-table oracles
"""
import hashlib
import logging
import re
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from orbitres.algebra.complexes import BettiTable
from orbitres.catalog.models import BettiKind, CaseData, CaseFile, OrbitDatum, OrbitEntry
from orbitres.catalog.rings import case_ring
from orbitres.core.config import catalog_dir, settings
from orbitres.core.exceptions import InputError, VerificationMismatch


logger = logging.getLogger("catalog.loader")

CASE_IDS = ("E6a1", "E6a2", "E6a3", "E6a4", "F4a1", "F4a2", "F4a3", "F4a4", "G2a1", "G2a2")

_HEADER = re.compile(r"^\[(\d+)\s+(ring|normalization|cokernel)\]$")
_ROW = re.compile(r"^(-?\d+):\s*(.*)$")


def normalize_case_id(case_id: str) -> str:
    """Accept 'E6a4', 'e6a4', 'E6α4' and '(E6, alpha4)' spellings"""
    text = str(case_id).strip().replace("α", "a").replace("alpha", "a")
    text = re.sub(r"[\s(),_-]", "", text)
    for known in CASE_IDS:
        if known.lower() == text.lower():
            return known
    raise InputError(f"unknown case id '{case_id}'; known cases: {', '.join(CASE_IDS)}")


def case_path(case_id: str, catalog: Optional[str] = None) -> Path:
    return catalog_dir(catalog) / f"{normalize_case_id(case_id)}.json"


def read_case_file(case_id: str, catalog: Optional[str] = None) -> CaseFile:
    path = case_path(case_id, catalog)
    if not path.exists():
        raise InputError(f"no case file {path}")
    return CaseFile.model_validate_json(path.read_text(encoding="utf-8"))


# -- Betti oracle files ----------------------------------------------------------

def parse_betti_text(text: str, source: str = "") -> Dict[Tuple[int, BettiKind], BettiTable]:
    """
    Sections '[orbit kind]' with an optional 'shift: s' line, a 'total:' line
    and printed rows 'r: v v ...' ('.' for zero). Rows are stored as printed;
    shift moves every twist by s. Totals are checked against the rows.
    """
    tables: Dict[Tuple[int, BettiKind], BettiTable] = {}
    current: Optional[Tuple[int, BettiKind]] = None
    rows: Dict[int, List[int]] = {}
    totals: Optional[List[int]] = None
    shift = 0

    def close():
        if current is None:
            return
        table = BettiTable.from_rows(rows)
        if totals is not None and table.totals() != totals:
            raise VerificationMismatch(
                f"{source} [{current[0]} {current[1].value}]: rows give totals "
                f"{table.totals()}, printed {totals}"
            )
        tables[current] = table.shifted(shift) if shift else table

    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            close()
            current = (int(m.group(1)), BettiKind(m.group(2)))
            if current in tables:
                raise InputError(f"{source}:{n}: duplicate section {line}")
            rows, totals, shift = {}, None, 0
            continue
        if current is None:
            raise InputError(f"{source}:{n}: data before the first section header")
        if line.startswith("shift:"):
            shift = int(line.split(":", 1)[1])
        elif line.startswith("total:"):
            totals = [int(v) for v in line.split(":", 1)[1].split()]
        else:
            m = _ROW.match(line)
            if not m:
                raise InputError(f"{source}:{n}: cannot read '{raw}'")
            rows[int(m.group(1))] = [0 if v == "." else int(v) for v in m.group(2).split()]
    close()
    return tables


def betti_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_betti(data: CaseFile, base: Path) -> Dict[Tuple[int, BettiKind], BettiTable]:
    if not data.betti_file:
        return {}
    path = base / data.betti_file
    digest = betti_digest(path)
    if data.betti_sha256 and digest != data.betti_sha256:
        raise VerificationMismatch(
            f"{data.id}: checksum of {data.betti_file} is {digest}, case file records {data.betti_sha256}"
        )
    return parse_betti_text(path.read_text(encoding="utf-8"), data.betti_file)


# -- orbit representatives -----------------------------------------------------

def random_values(support: List[str], seed: int, height: int) -> Dict[str, str]:
    """Nonzero rationals n/d with |n| <= height and 1 <= d <= height, from a seeded generator"""
    rng = np.random.default_rng(seed)
    out: Dict[str, str] = {}
    for name in support:
        n = 0
        while n == 0:
            n = int(rng.integers(-height, height + 1))
        d = int(rng.integers(1, height + 1))
        out[name] = str(Fraction(n, d))
    return out


def _representative(entry: OrbitEntry, ring, seed: int):
    values = dict(entry.representative)
    if entry.random_support:
        values.update(random_values(entry.random_support, seed, settings.RANDOM_HEIGHT))
    return ring.point(values)


# -- public ------------------------------------------------------------------------

def _check_consistency(case: CaseData) -> None:
    dense = case.dense
    if dense.dimension != case.ring.ngens:
        raise InputError(
            f"{case.id}: dense orbit has dimension {dense.dimension}, ring has {case.ring.ngens} variables"
        )
    for k, recipe in case.recipes.items():
        for step in recipe.ideal:
            if step.orbit is not None and step.orbit not in case.flags:
                raise InputError(f"{case.id} orbit {k}: recipe refers to unknown orbit {step.orbit}")
    if case.table is not None and len(case.table) != len(case.orbits):
        raise InputError(f"{case.id}: containment table has {len(case.table)} rows for {len(case.orbits)} orbits")


@lru_cache(maxsize=None)
def _load_case(case_id: str, catalog: Optional[str], seed: int) -> CaseData:
    data = read_case_file(case_id, catalog)
    base = catalog_dir(catalog)
    ring = case_ring(data.id, catalog)
    orbits = [OrbitDatum(o.id, o.dimension, _representative(o, ring, seed), o.label) for o in data.orbits]
    case = CaseData(
        id=data.id,
        title=data.title,
        ring=ring,
        orbits=orbits,
        flags={o.id: o for o in data.orbits},
        expected_betti=_load_betti(data, base),
        recipes={r.orbit: r for r in data.recipes},
        table=data.table,
        errata=list(data.errata),
        notes=list(data.notes),
    )
    _check_consistency(case)
    logger.info(f"loaded case {case.id}: {ring.ngens} variables, {len(orbits)} orbits, "
                f"{len(case.expected_betti)} Betti tables")
    return case


def load_case(case_id: str, catalog: Optional[str] = None, seed: Optional[int] = None) -> CaseData:
    """
    Fully populated case data. `seed` fixes the random representatives
    (the (F4, alpha2) orbit 9); it defaults to ORBIT9_SEED.
    """
    return _load_case(normalize_case_id(case_id), catalog, settings.ORBIT9_SEED if seed is None else seed)


def expected_betti(case: CaseData, k: int, which: BettiKind = BettiKind.RING) -> Optional[BettiTable]:
    """The stored table for (orbit, kind); None when the source prints none"""
    return case.expected_betti.get((k, BettiKind(which)))
