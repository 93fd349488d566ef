"""Distorted probability measures and non-covering certificates.

The certifier factors the lcm of the moduli into a tower of prime powers,
reveals the progressions level by level (the level-j bad set collects the
progressions whose modulus first divides the level-j partial product), and
pushes an exactly represented probability measure through the tower. At
each level a distortion parameter delta in [0, 1/2] shifts mass away from
the bad set. The certificate sums, per level, an upper bound for the mass
the final measure can give that level's bad set:

    term_j = first_moment                      when delta_j = 0
    term_j = min(first_moment,
                 second_moment / (4 delta_j (1 - delta_j)))   otherwise

If the total is below 1, the progressions cannot cover the ring: the final
measure gives positive mass to uncovered residues. Everything on the
certificate path is an exact rational; floats appear only in diagnostics
and in the min-degree threshold evaluator.

Two modes are supported. Exact mode evaluates the moments from the measure
itself, enumerating residues (feasible for small lcm degree). Bounded mode
never enumerates: it uses the exact friable-tail bound for levels with
delta = 0 and the explicit product bound for levels with delta = 1/2, so it
scales to arbitrarily large systems, at the price of coarser terms. Bounded
mode therefore insists on that two-phase schedule shape; the tail bound is
only valid when every earlier level is undistorted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import residues
from .algebra import (
    Poly,
    factor,
    format_poly,
    poly_from_index,
    poly_gcd,
    poly_to_index,
)
from .covering import (
    DEFAULT_LIMIT_BITS,
    CoveringSystem,
    covers,
    lcm_modulus,
    multiplicity,
    system_digest,
    system_to_json_dict,
)
from .errors import (
    ExhaustiveLimitExceededError,
    LevelOutOfRangeError,
    ScheduleShapeError,
)
from .friable import friable_tail_top

HALF = Fraction(1, 2)

VERDICT_CERTIFIED = "NOT_COVERING_CERTIFIED"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


# -- prime tower -----------------------------------------------------------------


@dataclass(frozen=True)
class PrimeTower:
    """Factored lcm with partial products: partials[j] = prod_{i<=j} p_i^e_i."""

    field: FieldSpec
    primes: tuple[Poly, ...]
    exponents: tuple[int, ...]
    partials: tuple[Poly, ...]

    @property
    def levels(self) -> int:
        return len(self.primes)

    @property
    def modulus(self) -> Poly:
        return self.partials[-1]

    def check_level(self, j: int) -> None:
        if not 1 <= j <= self.levels:
            raise LevelOutOfRangeError(f"level {j} outside 1..{self.levels}")

    def level_degree(self, j: int) -> int:
        return int(self.partials[j].degree)


def build_tower(system: CoveringSystem) -> PrimeTower:
    """Factor the lcm of the moduli, primes ordered by norm then coefficients."""
    lcm = lcm_modulus(system)
    fac = factor(lcm)
    primes = tuple(p for p, _ in fac.factors)
    exponents = tuple(k for _, k in fac.factors)
    partials = [Poly.one(system.field)]
    for p, k in fac.factors:
        partials.append(partials[-1] * p**k)
    return PrimeTower(
        field=system.field,
        primes=primes,
        exponents=exponents,
        partials=tuple(partials),
    )


@dataclass(frozen=True)
class BadSet:
    """Progressions first expressible at this level, viewed mod partials[level]."""

    level: int
    modulus: Poly
    progressions: tuple[Progression, ...]

    @property
    def is_empty(self) -> bool:
        return not self.progressions

    def contains(self, f: Poly) -> bool:
        return any(pr.contains(f) for pr in self.progressions)


def bad_set(system: CoveringSystem, tower: PrimeTower, j: int) -> BadSet:
    tower.check_level(j)
    above, below = tower.partials[j], tower.partials[j - 1]
    progs = tuple(
        pr
        for pr in system
        if pr.modulus.divides(above) and not pr.modulus.divides(below)
    )
    return BadSet(level=j, modulus=above, progressions=progs)


# -- per-level enumeration data ----------------------------------------------------


def _level_data(system: CoveringSystem, tower: PrimeTower, j: int):
    """Bad-set flags mod partials[j], parent map, and per-parent bad counts."""
    field = tower.field
    above, below = tower.partials[j], tower.partials[j - 1]
    n_j = int(above.degree)
    n_parent = int(below.degree)
    flags = residues.coverage_flags(field, bad_set(system, tower, j).progressions, n_j)
    if n_parent == 0:
        parents = np.zeros(field.q**n_j, dtype=np.int64)
    else:
        parents = residues.parent_map(above, below)
    counts = np.bincount(parents[flags != 0], minlength=field.q**n_parent)
    return flags, parents, counts


def bad_fraction(system: CoveringSystem, tower: PrimeTower, j: int, residue: Poly) -> Fraction:
    """Fraction of the level-(j-1) fibre of the residue lying in the level-j bad set."""
    tower.check_level(j)
    field = tower.field
    below = tower.partials[j - 1]
    gap = tower.level_degree(j) - int(below.degree)
    base = residue % below if below.degree >= 1 else Poly.zero(field)
    bs = bad_set(system, tower, j)
    if bs.is_empty:
        return Fraction(0)
    count = 0
    for code in range(field.q**gap):
        child = base + below * poly_from_index(field, code)
        if bs.contains(child):
            count += 1
    return Fraction(count, field.q**gap)


# -- measures ------------------------------------------------------------------------


@dataclass(frozen=True)
class MeasureTable:
    """Class masses of the level-j measure, indexed by packed residue mod partials[j]."""

    level: int
    modulus: Poly
    masses: tuple[Fraction, ...]

    def total(self) -> Fraction:
        return sum(self.masses, Fraction(0))

    def mass_of(self, residue: Poly) -> Fraction:
        if self.modulus.degree < 1:
            return self.masses[0]
        return self.masses[poly_to_index(residue % self.modulus)]


def initial_measure(tower: PrimeTower) -> MeasureTable:
    """The uniform starting measure: one class, full mass."""
    return MeasureTable(level=0, modulus=tower.partials[0], masses=(Fraction(1),))


def _step_factors(alpha: Fraction, delta: Fraction) -> tuple[Fraction, Fraction]:
    """Mass multipliers (inside bad set, outside bad set) for one parent class."""
    if alpha < delta:
        return Fraction(0), 1 / (1 - alpha)
    if alpha == 0:
        # empty fibre intersection: nothing to distort
        return Fraction(1), Fraction(1)
    return (alpha - delta) / (alpha * (1 - delta)), 1 / (1 - delta)


def _apply_step(table, flags, parents, counts, gap_size, delta, level, level_modulus):
    masses_prev = table.masses
    in_val: list[Optional[Fraction]] = [None] * len(masses_prev)
    out_val: list[Optional[Fraction]] = [None] * len(masses_prev)
    zero = Fraction(0)
    for r, mass in enumerate(masses_prev):
        if not mass:
            in_val[r] = out_val[r] = zero
            continue
        alpha = Fraction(int(counts[r]), gap_size)
        f_in, f_out = _step_factors(alpha, delta)
        base = mass / gap_size
        in_val[r] = base * f_in
        out_val[r] = base * f_out
    parent_list = parents.tolist()
    flag_list = flags.tolist()
    masses = tuple(
        in_val[parent_list[c]] if flag_list[c] else out_val[parent_list[c]]
        for c in range(len(flag_list))
    )
    return MeasureTable(level=level, modulus=level_modulus, masses=masses)


def measure_step(
    table: MeasureTable,
    system: CoveringSystem,
    tower: PrimeTower,
    j: int,
    delta: Fraction,
) -> MeasureTable:
    """Advance the measure one level, distorting mass away from the bad set."""
    tower.check_level(j)
    if table.level != j - 1:
        raise LevelOutOfRangeError(f"table is at level {table.level}, expected {j - 1}")
    delta = Fraction(delta)
    if not 0 <= delta <= HALF:
        raise ValueError("distortion parameter must lie in [0, 1/2]")
    flags, parents, counts = _level_data(system, tower, j)
    gap = tower.level_degree(j) - int(table.modulus.degree)
    gap_size = tower.field.q**gap
    return _apply_step(table, flags, parents, counts, gap_size, delta, j, tower.partials[j])


def exact_moment(
    table: MeasureTable,
    system: CoveringSystem,
    tower: PrimeTower,
    j: int,
    power: int,
) -> Fraction:
    """Expectation of the bad fraction (or its square) under the level-(j-1) measure."""
    tower.check_level(j)
    if table.level != j - 1:
        raise LevelOutOfRangeError(f"table is at level {table.level}, expected {j - 1}")
    if power not in (1, 2):
        raise ValueError("only the first and second moments are defined")
    _, _, counts = _level_data(system, tower, j)
    gap = tower.level_degree(j) - tower.level_degree(j - 1)
    gap_size = tower.field.q**gap
    total = Fraction(0)
    for r, mass in enumerate(table.masses):
        if mass and counts[r]:
            total += Fraction(int(counts[r]), gap_size) ** power * mass
    return total


# -- moment bounds ----------------------------------------------------------------


def first_moment_bound(system: CoveringSystem, tower: PrimeTower, j: int) -> Fraction:
    """Exact friable-tail bound for the level-j first moment.

    Valid only when every earlier level is undistorted (delta = 0 below j):
    multiplicity times the exact norm tail over monic polynomials of degree
    at least the least modulus degree whose top factor degree equals the
    level prime's degree.
    """
    tower.check_level(j)
    s = multiplicity(system)
    least_degree = min(int(pr.modulus.degree) for pr in system)
    prime_degree = int(tower.primes[j - 1].degree)
    return s * friable_tail_top(tower.field, least_degree, prime_degree)


def second_moment_bound(system: CoveringSystem, tower: PrimeTower, j: int) -> Fraction:
    """Closed-form product bound for the level-j second moment, any schedule.

    s^2/(|p_j|-1)^2 times prod_{i<j} L(|p_i|) with
    L(P) = 1 + 2*(2x/(1-x)^2 + x/(1-x)) at x = 1/P.
    """
    tower.check_level(j)
    s = multiplicity(system)
    p_norm = tower.primes[j - 1].norm
    out = Fraction(s * s, (p_norm - 1) ** 2)
    for i in range(j - 1):
        x = Fraction(1, tower.primes[i].norm)
        out *= 1 + 2 * (2 * x / (1 - x) ** 2 + x / (1 - x))
    return out


# -- schedules -------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaSchedule:
    """Per-level distortion parameters, each in [0, 1/2]."""

    values: tuple[Fraction, ...]
    provenance: str

    def __post_init__(self):
        for v in self.values:
            if not 0 <= v <= HALF:
                raise ValueError(f"distortion parameter {v} outside [0, 1/2]")

    def two_phase_split(self) -> Optional[int]:
        """Index k if the schedule is k zeros then halves, else None."""
        k = 0
        while k < len(self.values) and self.values[k] == 0:
            k += 1
        if all(v == HALF for v in self.values[k:]):
            return k
        return None


def explicit_schedule(values: Sequence[Fraction | int | str]) -> DeltaSchedule:
    return DeltaSchedule(tuple(Fraction(v) for v in values), provenance="explicit")


def uniform_schedule(levels: int, delta: Fraction | int | str) -> DeltaSchedule:
    d = Fraction(delta)
    return DeltaSchedule((d,) * levels, provenance=f"uniform({d})")


def auto_schedule(
    system: CoveringSystem, tower: PrimeTower, cutoff: Fraction | int | str
) -> DeltaSchedule:
    """Two-phase schedule: delta = 0 up to the degree cutoff, 1/2 above.

    The cutoff is C + 3 log_q(multiplicity); the comparison
    deg p <= C + 3 log_q(s) is decided exactly as q^(b*(deg p) - a) <= s^(3b)
    for C = a/b, avoiding floating-point boundaries.
    """
    c = Fraction(cutoff)
    if c < 0:
        raise ValueError("cutoff constant must be nonnegative")
    s = multiplicity(system)
    q = tower.field.q
    values = []
    for p in tower.primes:
        excess = Fraction(int(p.degree)) - c
        if excess <= 0:
            small = True
        else:
            a, b = excess.numerator, excess.denominator
            small = q**a <= s ** (3 * b)
        values.append(Fraction(0) if small else HALF)
    return DeltaSchedule(tuple(values), provenance=f"auto(C={c})")


# -- certificates -----------------------------------------------------------------


@dataclass(frozen=True)
class MomentReport:
    level: int
    delta: Fraction
    term: Fraction
    first_moment: Optional[Fraction] = None
    second_moment: Optional[Fraction] = None
    first_moment_bound: Optional[Fraction] = None
    second_moment_bound: Optional[Fraction] = None
    bad_mass: Optional[Fraction] = None
    final_bad_mass: Optional[Fraction] = None


def _frac(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Certificate:
    mode: str
    system: CoveringSystem
    tower: PrimeTower
    schedule: DeltaSchedule
    levels: tuple[MomentReport, ...]
    covered_mass_bound: Fraction
    verdict: str
    oracle: Optional[dict]

    @property
    def certified(self) -> bool:
        return self.verdict == VERDICT_CERTIFIED

    def to_json_dict(self) -> dict:
        tower = self.tower
        return {
            "format": "fqcover-certificate/1",
            "mode": self.mode,
            "system": {
                "digest": system_digest(self.system),
                **system_to_json_dict(self.system),
            },
            "tower": {
                "primes": [format_poly(p) for p in tower.primes],
                "exponents": list(tower.exponents),
                "lcm": format_poly(tower.modulus),
                "lcm_degree": int(tower.modulus.degree),
            },
            "schedule": {
                "provenance": self.schedule.provenance,
                "values": [_frac(v) for v in self.schedule.values],
            },
            "levels": [
                {
                    "level": rep.level,
                    "prime": format_poly(tower.primes[rep.level - 1]),
                    "exponent": tower.exponents[rep.level - 1],
                    "delta": _frac(rep.delta),
                    "term": _frac(rep.term),
                    "first_moment": _frac(rep.first_moment),
                    "second_moment": _frac(rep.second_moment),
                    "first_moment_bound": _frac(rep.first_moment_bound),
                    "second_moment_bound": _frac(rep.second_moment_bound),
                    "bad_mass": _frac(rep.bad_mass),
                    "final_bad_mass": _frac(rep.final_bad_mass),
                }
                for rep in self.levels
            ],
            "covered_mass_bound": _frac(self.covered_mass_bound),
            "verdict": self.verdict,
            "oracle": self.oracle,
            "metadata": {"log_convention": "natural"},
        }

    def to_json(self) -> str:
        import json

        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _oracle_report(system: CoveringSystem, limit_bits: int) -> dict:
    try:
        report = covers(system, limit_bits=limit_bits)
    except ExhaustiveLimitExceededError:
        return {"checked": False, "covers": None, "witness": None}
    return {
        "checked": True,
        "covers": report.covers,
        "witness": None if report.witness is None else format_poly(report.witness),
    }


def certify(
    system: CoveringSystem,
    schedule: Optional[DeltaSchedule] = None,
    mode: str = "exact",
    limit_bits: int = DEFAULT_LIMIT_BITS,
    auto_cutoff: Fraction | int | str = 0,
    check_oracle: bool = True,
) -> Certificate:
    """Build a non-covering certificate; verdict certified iff the bound < 1."""
    if mode not in ("exact", "bounded"):
        raise ValueError(f"unknown mode {mode!r}")
    tower = build_tower(system)
    levels = tower.levels
    if schedule is None:
        schedule = auto_schedule(system, tower, auto_cutoff)
    if len(schedule.values) != levels:
        raise ScheduleShapeError(
            f"schedule has {len(schedule.values)} entries for {levels} levels"
        )

    if mode == "bounded":
        reports = _certify_bounded(system, tower, schedule)
    else:
        reports = _certify_exact(system, tower, schedule, limit_bits)

    eta = sum((rep.term for rep in reports), Fraction(0))
    verdict = VERDICT_CERTIFIED if eta < 1 else VERDICT_INCONCLUSIVE
    oracle = None
    if check_oracle:
        oracle = _oracle_report(system, limit_bits)
        if oracle["checked"]:
            oracle["agrees"] = not (verdict == VERDICT_CERTIFIED and oracle["covers"])
        else:
            oracle["agrees"] = None
    return Certificate(
        mode=mode,
        system=system,
        tower=tower,
        schedule=schedule,
        levels=tuple(reports),
        covered_mass_bound=eta,
        verdict=verdict,
        oracle=oracle,
    )


def _certify_bounded(system, tower, schedule) -> list[MomentReport]:
    split = schedule.two_phase_split()
    if split is None:
        raise ScheduleShapeError(
            "bounded mode needs the two-phase schedule (zeros then halves): "
            "the tail bound is only proven with no earlier distortion"
        )
    reports = []
    for j in range(1, tower.levels + 1):
        delta = schedule.values[j - 1]
        m2b = second_moment_bound(system, tower, j)
        if j <= split:
            m1b = first_moment_bound(system, tower, j)
            term = m1b
        else:
            # 4 * (1/2) * (1/2) = 1, so the second-moment term is the bound itself
            m1b = None
            term = m2b
        reports.append(
            MomentReport(
                level=j,
                delta=delta,
                term=term,
                first_moment_bound=m1b,
                second_moment_bound=m2b,
            )
        )
    return reports


def _certify_exact(system, tower, schedule, limit_bits) -> list[MomentReport]:
    field = tower.field
    residues.check_enumerable(field, int(tower.modulus.degree), limit_bits)
    table = initial_measure(tower)
    zeros_so_far = True
    projected: list[np.ndarray] = []
    reports: list[MomentReport] = []
    for j in range(1, tower.levels + 1):
        delta = schedule.values[j - 1]
        flags, parents, counts = _level_data(system, tower, j)
        gap = tower.level_degree(j) - tower.level_degree(j - 1)
        gap_size = field.q**gap

        m1 = Fraction(0)
        m2 = Fraction(0)
        for r, mass in enumerate(table.masses):
            if mass and counts[r]:
                alpha = Fraction(int(counts[r]), gap_size)
                m1 += alpha * mass
                m2 += alpha * alpha * mass
        if delta == 0:
            term = m1
        else:
            term = min(m1, m2 / (4 * delta * (1 - delta)))

        m1b = first_moment_bound(system, tower, j) if zeros_so_far else None
        m2b = second_moment_bound(system, tower, j)
        zeros_so_far = zeros_so_far and delta == 0

        table = _apply_step(
            table, flags, parents, counts, gap_size, delta, j, tower.partials[j]
        )
        projected = [pf[parents] for pf in projected]
        projected.append(flags)
        bad_mass = _mass_on(table.masses, flags)
        if bad_mass > term:
            raise AssertionError(
                f"level {j}: bad-set mass {bad_mass} exceeds its certified term {term}"
            )
        reports.append(
            MomentReport(
                level=j,
                delta=delta,
                term=term,
                first_moment=m1,
                second_moment=m2,
                first_moment_bound=m1b,
                second_moment_bound=m2b,
                bad_mass=bad_mass,
            )
        )
    final = [_mass_on(table.masses, pf) for pf in projected]
    for j, rep in enumerate(reports):
        if final[j] != rep.bad_mass:
            raise AssertionError(
                f"level {j + 1}: bad-set mass changed after later levels"
            )
        reports[j] = replace(rep, final_bad_mass=final[j])
    return reports


def _mass_on(masses: Sequence[Fraction], flags: np.ndarray) -> Fraction:
    total = Fraction(0)
    for idx in np.flatnonzero(flags):
        total += masses[int(idx)]
    return total


# -- lemma-level exact bounds -------------------------------------------------------


def bad_fraction_bound(
    system: CoveringSystem, tower: PrimeTower, j: int, residue: Poly
) -> Fraction:
    """Exact evaluation of the divisor-sum upper bound for the bad fraction.

    Sums, over progressions entering at level j with modulus g * p_j^r,
    the indicator that the residue meets the progression mod g, weighted
    by |p_j|^-r.
    """
    tower.check_level(j)
    p_j = tower.primes[j - 1]
    total = Fraction(0)
    for pr in bad_set(system, tower, j).progressions:
        rho = 0
        g = pr.modulus
        while True:
            quot, rem = divmod(g, p_j)
            if not rem.is_zero:
                break
            g = quot
            rho += 1
        if g.degree < 1 or ((residue - pr.offset) % g).is_zero:
            total += Fraction(1, p_j.norm**rho)
    return total


def progression_mass(
    table: MeasureTable, tower: PrimeTower, offset: Poly, divisor: Poly
) -> Fraction:
    """Exact mass the table's measure gives the progression offset + <divisor>.

    The divisor must divide the tower modulus. Within one class mod the
    table modulus the measure is uniform, so the progression mass is the
    matching-class mass scaled by the part of the divisor not visible at
    this level.
    """
    if not divisor.is_monic:
        raise ValueError("divisor must be monic")
    if not divisor.divides(tower.modulus):
        raise ValueError("divisor must divide the tower modulus")
    field = tower.field
    level_mod = table.modulus
    if level_mod.degree < 1:
        return Fraction(1, divisor.norm)
    g = poly_gcd(divisor, level_mod) if divisor.degree >= 1 else Poly.one(field)
    hidden = divisor // g
    if g.degree < 1:
        matched = Fraction(1)
    else:
        flags = np.zeros(field.q ** int(level_mod.degree), dtype=np.uint8)
        residues.mark_progression(flags, offset % g, g, int(level_mod.degree))
        matched = _mass_on(table.masses, flags)
    return matched / (field.q ** int(hidden.degree) if not hidden.is_zero else 1)


def progression_mass_bound(
    tower: PrimeTower, schedule: DeltaSchedule, level: int, divisor: Poly
) -> Fraction:
    """Upper bound q^-deg(d) * prod 1/(1 - delta_i) over tower primes dividing d."""
    if not 0 <= level <= tower.levels:
        raise LevelOutOfRangeError(f"level {level} outside 0..{tower.levels}")
    out = Fraction(1, divisor.norm)
    for i in range(level):
        if tower.primes[i].divides(divisor):
            out /= 1 - schedule.values[i]
    return out


# -- headline threshold --------------------------------------------------------------


def min_degree_threshold(q: int, s: int, c: float) -> float:
    """Float value 3(c + 3 log_q s) * ln(cs + 3 s log_q s).

    The bare logarithm is taken as natural; IEEE double rounding applies
    (this evaluator is diagnostic, not part of the exact certificate path).
    """
    if s < 1:
        raise ValueError("multiplicity must be at least 1")
    if c <= 0:
        raise ValueError("the constant must be positive")
    log_q_s = math.log(s, q)
    y = c + 3 * log_q_s
    return 3 * y * math.log(s * y)
