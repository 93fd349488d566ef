"""Covering systems of F_q[x] and the exhaustive coverage oracle.

A system is a finite list of progressions offset + <modulus> with monic
nonconstant moduli. Coverage of the whole ring is decided by enumerating
the residues mod the lcm of the moduli: membership in each progression
only depends on that residue, so the ring is covered exactly when every
residue class mod the lcm is. The oracle reports the canonically least
uncovered residue as a witness, which is what the certifier is checked
against.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import residues
from .algebra import (
    FieldSpec,
    Poly,
    canonical_key,
    divisors,
    enumerate_irreducibles,
    format_poly,
    parse_poly,
    poly_from_index,
    poly_lcm,
)
from .errors import DegreeZeroError, NotMonicError, PolyParseError

DEFAULT_LIMIT_BITS = 24


@dataclass(frozen=True)
class Progression:
    """offset + <modulus> with the offset stored reduced mod the modulus."""

    offset: Poly
    modulus: Poly

    def __post_init__(self):
        if not self.modulus.is_monic:
            raise NotMonicError(f"modulus {self.modulus} is not monic")
        if self.modulus.degree < 1:
            raise DegreeZeroError("progression moduli must be nonconstant")
        if self.offset.field != self.modulus.field:
            raise ValueError("offset and modulus belong to different fields")
        reduced = self.offset % self.modulus
        if reduced.coeffs != self.offset.coeffs:
            object.__setattr__(self, "offset", reduced)

    def contains(self, f: Poly) -> bool:
        return ((f - self.offset) % self.modulus).is_zero

    def __str__(self):
        return f"{format_poly(self.offset)} | {format_poly(self.modulus)}"


class CoveringSystem:
    """A nonempty multiset of progressions, kept sorted by modulus then offset."""

    __slots__ = ("field", "progressions")

    def __init__(self, field: FieldSpec, progressions: Iterable[Progression]):
        progs = sorted(
            progressions,
            key=lambda pr: (canonical_key(pr.modulus), canonical_key(pr.offset)),
        )
        if not progs:
            raise ValueError("a covering system needs at least one progression")
        for pr in progs:
            if pr.modulus.field != field:
                raise ValueError("progression field does not match the system field")
        self.field = field
        self.progressions = tuple(progs)

    def __len__(self):
        return len(self.progressions)

    def __iter__(self):
        return iter(self.progressions)

    def __eq__(self, other):
        if not isinstance(other, CoveringSystem):
            return NotImplemented
        return self.field == other.field and self.progressions == other.progressions

    def __hash__(self):
        return hash((self.field, self.progressions))

    def __repr__(self):
        return f"CoveringSystem({self.field!r}, {len(self.progressions)} progressions)"


def multiplicity(system: CoveringSystem) -> int:
    """Largest number of progressions sharing one modulus."""
    counts: dict[Poly, int] = {}
    for pr in system:
        counts[pr.modulus] = counts.get(pr.modulus, 0) + 1
    return max(counts.values())


def is_distinct(system: CoveringSystem) -> bool:
    return multiplicity(system) == 1


def lcm_modulus(system: CoveringSystem) -> Poly:
    out = None
    for pr in system:
        out = pr.modulus if out is None else poly_lcm(out, pr.modulus)
    return out


def density_sum(system: CoveringSystem) -> Fraction:
    """Sum of 1/|modulus|; a covering system necessarily has sum >= 1."""
    return sum((Fraction(1, pr.modulus.norm) for pr in system), Fraction(0))


@dataclass(frozen=True)
class CoverageReport:
    covers: bool
    witness: Optional[Poly]
    lcm_degree: int
    residues_checked: int

    def to_json_dict(self) -> dict:
        return {
            "covers": self.covers,
            "witness": None if self.witness is None else format_poly(self.witness),
            "lcm_degree": self.lcm_degree,
            "residues_checked": self.residues_checked,
        }


def covers(system: CoveringSystem, limit_bits: int = DEFAULT_LIMIT_BITS) -> CoverageReport:
    """Exhaustively decide coverage mod the lcm of the moduli.

    Returns the canonically least uncovered residue as a witness when the
    system does not cover.
    """
    field = system.field
    lcm = lcm_modulus(system)
    degree = int(lcm.degree)
    size = residues.check_enumerable(field, degree, limit_bits)
    flags = residues.coverage_flags(field, system.progressions, degree)
    witness_idx = residues.canonical_least_unset(field, flags, degree)
    if witness_idx is None:
        return CoverageReport(True, None, degree, size)
    witness = poly_from_index(field, witness_idx)
    return CoverageReport(False, witness, degree, size)


def search_distinct(
    field: FieldSpec,
    min_degree: int,
    lcm_bound: Poly,
    limit_bits: int = DEFAULT_LIMIT_BITS,
) -> Optional[CoveringSystem]:
    """Find a distinct covering system with moduli dividing lcm_bound.

    Every modulus degree must be at least min_degree. The search assigns one
    residue to every eligible modulus (adding progressions never breaks
    coverage, so searching full assignments loses no solutions) and prunes
    branches whose remaining density cannot finish the cover. Returns the
    first solution in canonical order, or None.
    """
    if not lcm_bound.is_monic:
        raise NotMonicError("lcm bound must be monic")
    if lcm_bound.degree < 1:
        raise DegreeZeroError("lcm bound must be nonconstant")
    degree = int(lcm_bound.degree)
    size = residues.check_enumerable(field, degree, limit_bits)
    eligible = [
        d for d in divisors(lcm_bound) if d.degree >= max(min_degree, 1)
    ]
    if not eligible:
        return None
    if sum(Fraction(1, d.norm) for d in eligible) < 1:
        return None

    q = field.q
    # per modulus: one coverage bitmask (as a big int) per residue choice
    masks: list[list[int]] = []
    offsets: list[list[Poly]] = []
    for d in eligible:
        offs = sorted(
            (poly_from_index(field, i) for i in range(q ** int(d.degree))),
            key=canonical_key,
        )
        row = []
        for off in offs:
            flags = residues.coverage_flags(field, [Progression(off, d)], degree)
            mask = 0
            for idx in flags.nonzero()[0]:
                mask |= 1 << int(idx)
            row.append(mask)
        masks.append(row)
        offsets.append(offs)

    full = (1 << size) - 1
    # residues a later modulus can still cover, for pruning
    coverable = [0] * (len(eligible) + 1)
    for i in range(len(eligible) - 1, -1, -1):
        coverable[i] = coverable[i + 1] + size // eligible[i].norm

    chosen: list[int] = []

    def dfs(i: int, cov: int) -> bool:
        if cov == full:
            return True
        if i == len(eligible):
            return False
        if cov.bit_count() + coverable[i] < size:
            return False
        for c, mask in enumerate(masks[i]):
            chosen.append(c)
            if dfs(i + 1, cov | mask):
                return True
            chosen.pop()
        return False

    if not dfs(0, 0):
        return None
    # a win may happen before every modulus is assigned; keep the prefix
    progs = [Progression(offsets[k][c], eligible[k]) for k, c in enumerate(chosen)]
    return CoveringSystem(field, progs)


def random_system(
    field: FieldSpec,
    rng: random.Random,
    max_lcm_degree: int = 8,
    max_progressions: int = 6,
    cover_bias: float = 0.2,
) -> CoveringSystem:
    """Sample a small random system; used for test corpora.

    With probability cover_bias the sample is completed into a guaranteed
    cover by adding every residue mod one degree-1 modulus, so both verdict
    classes show up.
    """
    q = field.q
    # assemble a modulus budget from low-degree irreducible powers
    pool = enumerate_irreducibles(field, 1) + (
        enumerate_irreducibles(field, 2) if max_lcm_degree >= 2 else []
    )
    target = Poly.one(field)
    budget = rng.randint(1, max_lcm_degree)
    attempts = 0
    while budget >= 1 and attempts < 12:
        attempts += 1
        p = rng.choice(pool)
        e = rng.randint(1, 2)
        grow = int(p.degree) * e
        if grow > budget or p.divides(target):
            continue
        target = target * p**e
        budget -= grow
    if target.degree < 1:
        target = pool[0]

    divs = [d for d in divisors(target) if d.degree >= 1]
    n = rng.randint(1, max_progressions)
    progs = []
    for _ in range(n):
        d = rng.choice(divs)
        off = poly_from_index(field, rng.randrange(d.norm))
        progs.append(Progression(off, d))
    if rng.random() < cover_bias:
        d = rng.choice([dv for dv in divs if dv.degree == 1] or [divs[0]])
        for code in range(q ** int(d.degree)):
            progs.append(Progression(poly_from_index(field, code), d))
    return CoveringSystem(field, progs)


# -- text and JSON formats -----------------------------------------------------

_HEADER_RE = re.compile(r"^q=(\d+)(?:\^(\d+))?(?:;modulus=(.+))?$")


def parse_system(text: str) -> CoveringSystem:
    """Parse the system file format: a q= header then `offset | modulus` lines."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise PolyParseError("empty system file")
    m = _HEADER_RE.match(lines[0].replace(" ", ""))
    if not m:
        raise PolyParseError(f"bad header line {lines[0]!r}")
    p = int(m.group(1))
    e = int(m.group(2)) if m.group(2) else 1
    modulus = None
    if m.group(3):
        base = FieldSpec(p)
        modulus = parse_poly(m.group(3), base, var="t").coeffs
    field = FieldSpec(p, e, modulus)
    progs = []
    for line in lines[1:]:
        parts = line.split("|")
        if len(parts) != 2:
            raise PolyParseError(f"expected 'offset | modulus', got {line!r}")
        progs.append(
            Progression(parse_poly(parts[0], field), parse_poly(parts[1], field))
        )
    return CoveringSystem(field, progs)


def load_system(path) -> CoveringSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def format_system(system: CoveringSystem) -> str:
    field = system.field
    if field.e == 1:
        header = f"q={field.p}"
    else:
        mod = format_poly(Poly(FieldSpec(field.p), field.modulus), var="t")
        header = f"q={field.p}^{field.e};modulus={mod}"
    lines = [header]
    lines.extend(str(pr) for pr in system)
    return "\n".join(lines) + "\n"


def system_digest(system: CoveringSystem) -> str:
    return hashlib.sha256(format_system(system).encode()).hexdigest()


def system_to_json_dict(system: CoveringSystem) -> dict:
    field = system.field
    mod_text = None
    if field.e > 1:
        mod_text = format_poly(Poly(FieldSpec(field.p), field.modulus), var="t")
    return {
        "field": {"p": field.p, "e": field.e, "modulus": mod_text},
        "progressions": [
            {"offset": format_poly(pr.offset), "modulus": format_poly(pr.modulus)}
            for pr in system
        ],
    }


def system_to_json(system: CoveringSystem) -> str:
    return json.dumps(system_to_json_dict(system), sort_keys=True, indent=2) + "\n"
