"""Radial profiles and exact convergence verdicts for boundary series.

A :class:`RadialProfile` describes an infinite, radially layered graph
by four per-radius sequences: the layer boundary weight ``dB(r)``
(total edge weight between sphere ``r`` and sphere ``r+1``), the sphere
measure ``m(S_r)``, the sphere killing ``c(S_r)`` and the sphere vertex
count ``|S_r|``.  Each sequence consists of an explicit finite prefix
plus a tail model valid beyond the prefix: either the closed form

    a(r) = C * (r+1)^p * rho^r        (power base r+1, so r=0 is regular)

or a ``custom`` marker carrying only a declared convergence flag for
``sum_r a(r)``.

Global properties of the graph are decided by the convergence of seven
canonical series (:class:`SeriesKind`).  For closed-form tails the
verdicts are exact: all terms are positive, a finite prefix never
affects convergence, and the term sequences stay inside the closed-form
grammar under the operations used here (products, reciprocals, squares,
cumulative sums and complement sums).  The single lossy step is that a
cumulative sum of a ``p = -1`` power tail grows like ``log r``, which
the grammar records as ``p = 0``; dropped logarithm factors never flip
the convergence of any series built here, because they multiply terms
whose power-law part already decides the verdict strictly, and at the
boundary exponent both the plain and the log-corrected series diverge.

Verdict semantics in this module are series-level: ``Holds`` always
means "the series converges".  Property-level readings (transience,
Feller property, ...) live in :mod:`formuniq.criteria`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence, TextIO, Union

import mpmath as mp
import numpy as np

from .errors import GraphFormatError, PreconditionError, StructuralError
from .graph import WeightedGraph
from .symmetry import SphereDecomposition, is_weakly_spherically_symmetric

# ---------------------------------------------------------------------------
# tail models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerGeomTail:
    """Closed-form tail ``a(r) = coeff * (r+1)^power * ratio^r``.

    ``coeff = 0`` denotes the identically-zero tail (used for killing
    sequences); otherwise ``coeff > 0`` and ``ratio > 0``.
    """

    coeff: float
    power: float = 0.0
    ratio: float = 1.0

    def __post_init__(self) -> None:
        if self.coeff < 0:
            raise ValueError("tail coefficient must be nonnegative")
        if self.ratio <= 0:
            raise ValueError("tail ratio must be positive")

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def value(self, r: int) -> float:
        if self.coeff == 0:
            return 0.0
        return self.coeff * (r + 1.0) ** self.power * self.ratio**r

    def describe(self) -> str:
        return f"{self.coeff:.6g}*(r+1)^{self.power:.6g}*{self.ratio:.6g}^r"


@dataclass(frozen=True)
class CustomTail:
    """Opaque tail: values are unknown beyond the prefix.

    ``convergent`` declares whether ``sum_r a(r)`` converges:
    True / False / None (unknown).
    """

    convergent: bool | None = None

    def describe(self) -> str:
        flag = {True: "yes", False: "no", None: "unknown"}[self.convergent]
        return f"custom convergent={flag}"


TailModel = Union[PowerGeomTail, CustomTail]

ZERO_TAIL = PowerGeomTail(0.0)
ONES_TAIL = PowerGeomTail(1.0)


# ---------------------------------------------------------------------------
# tail-class algebra
#
# A "class" is a PowerGeomTail describing the asymptotic shape of a
# positive sequence, or None when unknown.  Coefficients are carried as
# rough asymptotic estimates; convergence decisions depend only on
# (is_zero, power, ratio).
# ---------------------------------------------------------------------------


def tail_converges(t: TailModel | None) -> bool | None:
    """Does ``sum_r a(r)`` converge?  None when undecidable."""
    if t is None:
        return None
    if isinstance(t, CustomTail):
        return t.convergent
    if t.is_zero:
        return True
    if t.ratio < 1:
        return True
    if t.ratio > 1:
        return False
    return t.power < -1


def _closed(t: TailModel | None) -> PowerGeomTail | None:
    return t if isinstance(t, PowerGeomTail) else None


def tail_mul(a: PowerGeomTail | None, b: PowerGeomTail | None) -> PowerGeomTail | None:
    if a is None or b is None:
        return None
    if a.is_zero or b.is_zero:
        return ZERO_TAIL
    return PowerGeomTail(a.coeff * b.coeff, a.power + b.power, a.ratio * b.ratio)


def tail_reciprocal(a: PowerGeomTail | None) -> PowerGeomTail | None:
    if a is None:
        return None
    if a.is_zero:
        raise ValueError("cannot take the reciprocal of a zero tail")
    return PowerGeomTail(1.0 / a.coeff, -a.power, 1.0 / a.ratio)


def tail_square(a: PowerGeomTail | None) -> PowerGeomTail | None:
    return tail_mul(a, a)


def tail_sqrt(a: PowerGeomTail | None) -> PowerGeomTail | None:
    if a is None:
        return None
    if a.is_zero:
        return ZERO_TAIL
    return PowerGeomTail(math.sqrt(a.coeff), a.power / 2.0, math.sqrt(a.ratio))


def tail_shift(a: PowerGeomTail | None, k: int) -> PowerGeomTail | None:
    """Class of ``r -> a(r + k)`` (same power and ratio)."""
    if a is None or a.is_zero:
        return a
    return PowerGeomTail(a.coeff * a.ratio**k, a.power, a.ratio)


def tail_add(a: PowerGeomTail | None, b: PowerGeomTail | None) -> PowerGeomTail | None:
    """Class of a sum of two positive sequences: the dominant one."""
    if a is None or b is None:
        return None
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if (a.ratio, a.power) == (b.ratio, b.power):
        return PowerGeomTail(a.coeff + b.coeff, a.power, a.ratio)
    if (a.ratio, a.power) > (b.ratio, b.power):
        return a
    return b


def tail_cumsum_class(
    a: PowerGeomTail | None, total: float | None = None
) -> PowerGeomTail | None:
    """Class of partial sums ``A(r) = sum_{k<=r} a(k)`` for a positive
    sequence whose class is ``a``.

    When the sum converges the partial sums approach a positive
    constant (our sequences always have a positive prefix); ``total``
    may supply its value.  Logarithmic growth at ``power == -1`` is
    recorded as a constant class (see module docstring).
    """
    if a is None:
        return None
    conv = tail_converges(a)
    if conv:
        return PowerGeomTail(total if total and math.isfinite(total) else 1.0)
    if a.ratio > 1:
        return PowerGeomTail(a.coeff * a.ratio / (a.ratio - 1.0), a.power, a.ratio)
    # ratio == 1, power >= -1
    if a.power > -1:
        return PowerGeomTail(a.coeff / (a.power + 1.0), a.power + 1.0, 1.0)
    return PowerGeomTail(a.coeff, 0.0, 1.0)


def tail_complement_class(a: PowerGeomTail | None) -> PowerGeomTail | None:
    """Class of the complement sums ``A^c(r) = sum_{k>r} a(k)``.

    Only meaningful when the sum converges; raises otherwise.
    """
    if a is None:
        return None
    if a.is_zero:
        return ZERO_TAIL
    if not tail_converges(a):
        raise ValueError("complement sums of a divergent sequence are infinite")
    if a.ratio < 1:
        return PowerGeomTail(a.coeff * a.ratio / (1.0 - a.ratio), a.power, a.ratio)
    return PowerGeomTail(a.coeff / (-a.power - 1.0), a.power + 1.0, 1.0)


def tail_sum_exact(a: PowerGeomTail, r_from: int = 0) -> float:
    """``sum_{r >= r_from} a(r)`` in closed form (inf when divergent).

    Uses the Lerch transcendent for geometric tails and the Hurwitz
    zeta function for power tails.
    """
    if a.is_zero:
        return 0.0
    conv = tail_converges(a)
    if not conv:
        return math.inf
    K = int(r_from)
    with mp.workdps(30):
        if a.ratio < 1:
            # sum_{r>=K} C (r+1)^p rho^r = (C/rho) rho^(K+1) Phi(rho, -p, K+1)
            val = (
                mp.mpf(a.coeff)
                / a.ratio
                * mp.power(a.ratio, K + 1)
                * mp.lerchphi(a.ratio, -a.power, K + 1)
            )
        else:
            val = mp.mpf(a.coeff) * mp.zeta(-a.power, K + 1)
        return float(val)


# ---------------------------------------------------------------------------
# radial profiles
# ---------------------------------------------------------------------------


def _parse_prefix(values: Sequence[float]) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or len(arr) == 0:
        raise ValueError("prefix must be a nonempty 1-d sequence")
    return arr


@dataclass(frozen=True)
class RadialProfile:
    """Per-radius description of an infinite radially layered graph.

    All four prefixes share one length ``r0 >= 1``; tail models take
    over at ``r >= r0``.  Invariants: ``dB(r) > 0``, ``m(S_r) > 0``,
    ``c(S_r) >= 0`` and integral ``|S_r| >= 1`` wherever values are
    defined.
    """

    boundary_prefix: np.ndarray
    measure_prefix: np.ndarray
    killing_prefix: np.ndarray
    count_prefix: np.ndarray
    boundary_tail: TailModel
    measure_tail: TailModel
    killing_tail: TailModel = ZERO_TAIL
    count_tail: TailModel = ONES_TAIL
    name: str = ""

    def __post_init__(self) -> None:
        bp = _parse_prefix(self.boundary_prefix)
        mprefix = _parse_prefix(self.measure_prefix)
        cp = _parse_prefix(self.killing_prefix)
        np_ = _parse_prefix(self.count_prefix)
        lens = {len(bp), len(mprefix), len(cp), len(np_)}
        if len(lens) != 1:
            raise ValueError(f"prefix arrays must share one length, got {sorted(lens)}")
        if not np.all(bp > 0):
            raise ValueError("boundary prefix must be strictly positive")
        if not np.all(mprefix > 0):
            raise ValueError("measure prefix must be strictly positive")
        if not np.all(cp >= 0):
            raise ValueError("killing prefix must be nonnegative")
        if not np.all(np_ >= 1) or not np.allclose(np_, np.round(np_)):
            raise ValueError("count prefix must consist of integers >= 1")
        for tail, label in (
            (self.boundary_tail, "boundary"),
            (self.measure_tail, "measure"),
            (self.count_tail, "count"),
        ):
            if isinstance(tail, PowerGeomTail) and tail.is_zero:
                raise ValueError(f"{label} tail cannot be identically zero")
        for arr, attr in (
            (bp, "boundary_prefix"),
            (mprefix, "measure_prefix"),
            (cp, "killing_prefix"),
            (np_, "count_prefix"),
        ):
            arr.flags.writeable = False
            object.__setattr__(self, attr, arr)

    # -- value accessors -----------------------------------------------------

    @property
    def prefix_len(self) -> int:
        return len(self.boundary_prefix)

    def _value(self, prefix: np.ndarray, tail: TailModel, r: int, label: str) -> float:
        if r < 0:
            raise ValueError(f"radius must be nonnegative, got {r}")
        if r < len(prefix):
            return float(prefix[r])
        if isinstance(tail, CustomTail):
            raise StructuralError(
                f"{label} sequence has a custom tail: no values beyond radius "
                f"{len(prefix) - 1}"
            )
        return tail.value(r)

    def boundary(self, r: int) -> float:
        return self._value(self.boundary_prefix, self.boundary_tail, r, "boundary")

    def sphere_measure(self, r: int) -> float:
        return self._value(self.measure_prefix, self.measure_tail, r, "measure")

    def sphere_killing(self, r: int) -> float:
        return self._value(self.killing_prefix, self.killing_tail, r, "killing")

    def sphere_count(self, r: int) -> float:
        return self._value(self.count_prefix, self.count_tail, r, "count")

    def value_depth(self, *sequences: str) -> float:
        """Largest radius count with defined values for the named
        sequences ('boundary', 'measure', 'killing', 'count'); inf when
        all involved tails are closed form."""
        tails = {
            "boundary": self.boundary_tail,
            "measure": self.measure_tail,
            "killing": self.killing_tail,
            "count": self.count_tail,
        }
        depth = math.inf
        for s in sequences:
            if isinstance(tails[s], CustomTail):
                depth = min(depth, self.prefix_len)
        return depth

    # -- certifiable structure -----------------------------------------------

    @property
    def is_birth_death(self) -> bool:
        """Certifiably one vertex per sphere."""
        if not np.all(self.count_prefix == 1):
            return False
        t = self.count_tail
        return (
            isinstance(t, PowerGeomTail)
            and t.coeff == 1
            and t.power == 0
            and t.ratio == 1
        )

    @property
    def killing_is_zero(self) -> bool:
        """Certifiably zero killing everywhere."""
        if np.any(self.killing_prefix != 0):
            return False
        t = self.killing_tail
        return isinstance(t, PowerGeomTail) and t.is_zero

    # -- aggregate quantities --------------------------------------------------

    def _total(self, prefix: np.ndarray, tail: TailModel) -> float | None:
        """Total sum of a sequence; None when not computable."""
        if isinstance(tail, CustomTail):
            return None
        return float(prefix.sum()) + tail_sum_exact(tail, self.prefix_len)

    def total_measure(self) -> float | None:
        return self._total(self.measure_prefix, self.measure_tail)

    def total_killing(self) -> float | None:
        return self._total(self.killing_prefix, self.killing_tail)

    def measure_beyond(self, r: int) -> float | None:
        """``m`` of all spheres at radius > r (None when not computable)."""
        if isinstance(self.measure_tail, CustomTail):
            return None
        total = self.total_measure()
        if not math.isfinite(total):
            return math.inf
        head = sum(self.sphere_measure(k) for k in range(r + 1))
        return max(total - head, 0.0)

    def mass_beyond(self, r: int) -> float | None:
        """``(c+m)`` of all spheres at radius > r."""
        mb = self.measure_beyond(r)
        if mb is None or isinstance(self.killing_tail, CustomTail):
            return None
        ct = self.total_killing()
        if not math.isfinite(ct):
            return math.inf
        cb = ct - sum(self.sphere_killing(k) for k in range(r + 1))
        return mb + max(cb, 0.0)


# ---------------------------------------------------------------------------
# series kinds and verdicts
# ---------------------------------------------------------------------------


class SeriesKind(Enum):
    RESISTANCE = "resistance"
    TOTAL_MASS = "total_mass"
    STOCHASTIC_MASS = "stochastic_mass"
    FELLER_TAIL = "feller_tail"
    ENERGY_WEIGHT = "energy_weight"
    BOUNDED_HARMONIC = "bounded_harmonic"
    HAMBURGER = "hamburger"


_SERIES_LABEL = {
    SeriesKind.RESISTANCE: "sum of 1/dB(r)",
    SeriesKind.TOTAL_MASS: "sum of (c+m)(S_r)",
    SeriesKind.STOCHASTIC_MASS: "sum of m(B_r)/dB(r)",
    SeriesKind.FELLER_TAIL: "sum of m(X \\ B_r)/dB(r)",
    SeriesKind.ENERGY_WEIGHT: "sum of m(B_r)^2/dB(r)",
    SeriesKind.BOUNDED_HARMONIC: "sum of (c+m)(B_r)/dB(r)",
    SeriesKind.HAMBURGER: "sum of (sum_{k<=r} 1/b(k,k+1))^2 m(r+1)",
}


class VerdictState(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decidable yes/no question with diagnostics.

    ``state == HOLDS`` asserts exactly what ``label`` says.  Partial
    sums (monotone nondecreasing, positive terms) are recorded at the
    sampled depths for auditability; they never influence the state.
    """

    state: VerdictState
    label: str
    reason: str
    kind: str = ""
    sample_depths: tuple[int, ...] = ()
    partial_sums: tuple[float, ...] = ()

    @property
    def holds(self) -> bool:
        return self.state is VerdictState.HOLDS

    @property
    def fails(self) -> bool:
        return self.state is VerdictState.FAILS

    @property
    def inconclusive(self) -> bool:
        return self.state is VerdictState.INCONCLUSIVE

    @property
    def decided(self) -> bool:
        return self.state is not VerdictState.INCONCLUSIVE

    def __str__(self) -> str:
        return f"{self.state.value}: {self.label} ({self.reason})"


def _state(conv: bool | None) -> VerdictState:
    if conv is None:
        return VerdictState.INCONCLUSIVE
    return VerdictState.HOLDS if conv else VerdictState.FAILS


PARTIAL_SUM_FLOOR_DEPTH = 256
PARTIAL_SUM_MARGIN = 64


def _sample_depths(n: int) -> list[int]:
    depths = []
    d = 1
    while d < n:
        depths.append(d)
        d *= 2
    depths.append(n)
    return depths


def _term_functions(p: RadialProfile, kind: SeriesKind) -> tuple[Callable[[int], float], float, str]:
    """Term evaluator, available depth, and a representation note."""
    note = ""
    if kind is SeriesKind.RESISTANCE:
        depth = p.value_depth("boundary")
        term = lambda r: 1.0 / p.boundary(r)
    elif kind is SeriesKind.TOTAL_MASS:
        depth = p.value_depth("measure", "killing")
        term = lambda r: p.sphere_measure(r) + p.sphere_killing(r)
    elif kind is SeriesKind.STOCHASTIC_MASS:
        depth = p.value_depth("boundary", "measure")
        acc = {"m": 0.0}

        def term(r: int) -> float:
            acc["m"] += p.sphere_measure(r)
            return acc["m"] / p.boundary(r)

    elif kind is SeriesKind.FELLER_TAIL:
        total = p.measure_beyond(-1) if not isinstance(p.measure_tail, CustomTail) else None
        if total is not None and math.isfinite(total):
            depth = p.value_depth("boundary", "measure")
            acc = {"m": 0.0}

            def term(r: int) -> float:
                acc["m"] += p.sphere_measure(r)
                return max(total - acc["m"], 0.0) / p.boundary(r)

        else:
            # interchange representation: same sum, finite terms
            note = "terms via sum_r (sum_{k<r} 1/dB(k)) m(S_r)"
            depth = p.value_depth("boundary", "measure")
            acc = {"inv": 0.0}

            def term(r: int) -> float:
                t = acc["inv"] * p.sphere_measure(r)
                acc["inv"] += 1.0 / p.boundary(r)
                return t

    elif kind is SeriesKind.ENERGY_WEIGHT:
        depth = p.value_depth("boundary", "measure")
        acc = {"m": 0.0}

        def term(r: int) -> float:
            acc["m"] += p.sphere_measure(r)
            return acc["m"] ** 2 / p.boundary(r)

    elif kind is SeriesKind.BOUNDED_HARMONIC:
        depth = p.value_depth("boundary", "measure", "killing")
        acc = {"cm": 0.0}

        def term(r: int) -> float:
            acc["cm"] += p.sphere_measure(r) + p.sphere_killing(r)
            return acc["cm"] / p.boundary(r)

    elif kind is SeriesKind.HAMBURGER:
        depth = p.value_depth("boundary", "measure")
        if math.isfinite(depth):
            depth = max(depth - 1, 0)
        acc = {"inv": 0.0}

        def term(r: int) -> float:
            acc["inv"] += 1.0 / p.boundary(r)
            return acc["inv"] ** 2 * p.sphere_measure(r + 1)

    else:  # pragma: no cover
        raise ValueError(f"unknown series kind {kind}")
    return term, depth, note


def series_terms(p: RadialProfile, kind: SeriesKind, depth: int) -> np.ndarray:
    """First ``depth`` terms of the series (clipped to available values)."""
    term, avail, _ = _term_functions(p, kind)
    n = int(min(depth, avail))
    return np.array([term(r) for r in range(n)])


def _partial_sums(p: RadialProfile, kind: SeriesKind) -> tuple[tuple[int, ...], tuple[float, ...], str]:
    term, avail, note = _term_functions(p, kind)
    n = int(min(max(p.prefix_len + PARTIAL_SUM_MARGIN, PARTIAL_SUM_FLOOR_DEPTH), avail))
    if n <= 0:
        return (), (), note
    depths = _sample_depths(n)
    sums = []
    acc = 0.0
    it = iter(depths)
    nxt = next(it)
    for r in range(n):
        acc += term(r)
        if r + 1 == nxt:
            sums.append(acc)
            nxt = next(it, None)
    return tuple(depths), tuple(sums), note


def _decide(p: RadialProfile, kind: SeriesKind) -> tuple[bool | None, str]:
    """Convergence decision plus a one-line reason."""
    bt = _closed(p.boundary_tail)
    mt = _closed(p.measure_tail)
    ct = _closed(p.killing_tail)
    b_flag = tail_converges(p.boundary_tail)  # sum dB(r) converges?
    m_conv = tail_converges(p.measure_tail)
    c_conv = tail_converges(p.killing_tail)

    def closed_reason(cls: PowerGeomTail | None) -> str:
        conv = tail_converges(cls)
        return f"term class {cls.describe()} -> {'converges' if conv else 'diverges'}"

    # resistance decision is reused by several kinds
    if bt is not None:
        res_conv = tail_converges(tail_reciprocal(bt))
    elif b_flag is True:
        res_conv = False  # dB summable forces dB -> 0, so 1/dB diverges
    else:
        res_conv = None

    if kind is SeriesKind.RESISTANCE:
        if bt is not None:
            cls = tail_reciprocal(bt)
            return tail_converges(cls), closed_reason(cls)
        if b_flag is True:
            return False, "declared sum dB < inf forces dB -> 0, 1/dB diverges"
        return None, "custom boundary tail without a deciding flag"

    if kind is SeriesKind.TOTAL_MASS:
        conv = None
        if m_conv is False or c_conv is False:
            conv = False
        elif m_conv and c_conv:
            conv = True
        parts = []
        for lbl, t, fl in (("m", mt, m_conv), ("c", ct, c_conv)):
            parts.append(f"{lbl}: {t.describe() if t else f'custom({fl})'}")
        return conv, "; ".join(parts)

    if kind is SeriesKind.STOCHASTIC_MASS or kind is SeriesKind.BOUNDED_HARMONIC:
        with_killing = kind is SeriesKind.BOUNDED_HARMONIC
        if with_killing:
            if mt is not None and ct is not None:
                seq = tail_add(mt, ct)
                seq_conv = tail_converges(seq)
            else:
                seq = None
                seq_conv = (
                    None
                    if (m_conv is None or c_conv is None) and not (m_conv is False or c_conv is False)
                    else (m_conv and c_conv)
                )
                if m_conv is False or c_conv is False:
                    seq_conv = False
        else:
            seq, seq_conv = mt, m_conv
        if seq is not None and bt is not None:
            total = p.mass_beyond(-1) if with_killing else p.total_measure()
            cls = tail_mul(tail_cumsum_class(seq, total), tail_reciprocal(bt))
            return tail_converges(cls), closed_reason(cls)
        if res_conv is False:
            return False, "cumulative mass >= its first term while sum 1/dB diverges"
        if seq_conv is True and res_conv is not None:
            return res_conv, (
                "finite total mass pins cumulative sums between positive "
                "constants; verdict follows sum 1/dB"
            )
        return None, "undecidable with the available tail information"

    if kind is SeriesKind.FELLER_TAIL:
        if m_conv is False:
            return False, "infinite total measure makes every complement infinite"
        if m_conv is None:
            return None, "custom measure tail without a deciding flag"
        # total measure finite
        if mt is not None and bt is not None:
            cls = tail_mul(tail_complement_class(mt), tail_reciprocal(bt))
            return tail_converges(cls), closed_reason(cls)
        if b_flag is True:
            return False, "declared sum dB < inf forces 1/dB -> inf against positive complements"
        if res_conv is True:
            return True, (
                "bounded cumulative resistance and finite total measure "
                "(interchange bound)"
            )
        return None, "undecidable with the available tail information"

    if kind is SeriesKind.ENERGY_WEIGHT:
        if mt is not None and bt is not None:
            cls = tail_mul(
                tail_square(tail_cumsum_class(mt, p.total_measure())),
                tail_reciprocal(bt),
            )
            return tail_converges(cls), closed_reason(cls)
        if res_conv is False:
            return False, "squared cumulative measure >= a positive constant while sum 1/dB diverges"
        if m_conv is True and res_conv is not None:
            return res_conv, (
                "finite total measure pins squared cumulative sums; verdict "
                "follows sum 1/dB"
            )
        return None, "undecidable with the available tail information"

    if kind is SeriesKind.HAMBURGER:
        if not p.is_birth_death:
            raise PreconditionError(
                "the chain growth criterion requires one vertex per sphere"
            )
        if not p.killing_is_zero:
            raise PreconditionError(
                "the chain growth criterion requires zero killing"
            )
        if m_conv is False:
            return False, "inner sums >= 1/b(0,1) > 0 against infinite total measure"
        if bt is not None and mt is not None:
            cls = tail_mul(
                tail_square(tail_cumsum_class(tail_reciprocal(bt))),
                tail_shift(mt, 1),
            )
            return tail_converges(cls), closed_reason(cls)
        if m_conv is True and res_conv is True:
            return True, "bounded inner sums against finite total measure"
        return None, "undecidable with the available tail information"

    raise ValueError(f"unknown series kind {kind}")  # pragma: no cover


def series_verdict(p: RadialProfile, kind: SeriesKind) -> Verdict:
    """Exact convergence verdict for one of the canonical series.

    ``Holds`` means the series converges.  Raises
    :class:`PreconditionError` for :data:`SeriesKind.HAMBURGER` on a
    profile that is not certifiably a chain with zero killing.
    """
    conv, reason = _decide(p, kind)
    depths, sums, note = _partial_sums(p, kind)
    if note:
        reason = f"{reason}; {note}"
    return Verdict(
        state=_state(conv),
        label=f"{_SERIES_LABEL[kind]} converges",
        reason=reason,
        kind=kind.value,
        sample_depths=depths,
        partial_sums=sums,
    )


def verdict_bundle(p: RadialProfile) -> dict[SeriesKind, Verdict]:
    """Verdicts for every applicable series kind."""
    kinds = [
        SeriesKind.RESISTANCE,
        SeriesKind.TOTAL_MASS,
        SeriesKind.STOCHASTIC_MASS,
        SeriesKind.FELLER_TAIL,
        SeriesKind.ENERGY_WEIGHT,
        SeriesKind.BOUNDED_HARMONIC,
    ]
    out = {k: series_verdict(p, k) for k in kinds}
    if p.is_birth_death and p.killing_is_zero:
        out[SeriesKind.HAMBURGER] = series_verdict(p, SeriesKind.HAMBURGER)
    return out


def bundle_consistency(bundle: dict[SeriesKind, Verdict]) -> list[str]:
    """Cross-check the provable implications between decided verdicts.

    Returns human-readable descriptions of violations (empty when
    consistent): convergence of the cumulative-mass series forces
    convergence of the resistance series; convergence of the energy
    series forces both the resistance and cumulative-mass series; and
    finite total mass together with convergent resistance forces the
    energy series.
    """
    v = bundle
    out = []

    def decided(*kinds: SeriesKind) -> bool:
        return all(k in v and v[k].decided for k in kinds)

    if decided(SeriesKind.STOCHASTIC_MASS, SeriesKind.RESISTANCE):
        if v[SeriesKind.STOCHASTIC_MASS].holds and not v[SeriesKind.RESISTANCE].holds:
            out.append("stochastic_mass converges but resistance diverges")
    if decided(SeriesKind.ENERGY_WEIGHT, SeriesKind.RESISTANCE):
        if v[SeriesKind.ENERGY_WEIGHT].holds and not v[SeriesKind.RESISTANCE].holds:
            out.append("energy_weight converges but resistance diverges")
    if decided(SeriesKind.ENERGY_WEIGHT, SeriesKind.BOUNDED_HARMONIC):
        if v[SeriesKind.ENERGY_WEIGHT].holds and not v[SeriesKind.BOUNDED_HARMONIC].holds:
            out.append("energy_weight converges but bounded_harmonic diverges")
    if decided(SeriesKind.TOTAL_MASS, SeriesKind.RESISTANCE, SeriesKind.ENERGY_WEIGHT):
        if (
            v[SeriesKind.TOTAL_MASS].holds
            and v[SeriesKind.RESISTANCE].holds
            and not v[SeriesKind.ENERGY_WEIGHT].holds
        ):
            out.append("total_mass and resistance converge but energy_weight diverges")
    return out


# ---------------------------------------------------------------------------
# profiles from graphs, quotient chains
# ---------------------------------------------------------------------------


def profile_from_graph(
    g: WeightedGraph,
    dec: SphereDecomposition,
    depth: int,
    name: str = "",
) -> RadialProfile:
    """Radial profile read off a finite graph through radius ``depth``.

    The prefix covers radii ``0 .. depth-1``; all four tails are custom
    with unknown convergence (a finite truncation says nothing about
    the sequel).  Requires weak spherical symmetry through ``depth``
    and ``depth <= dec.radius`` so every recorded boundary weight is
    positive.
    """
    depth = int(depth)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > dec.radius:
        raise StructuralError(
            f"graph has radius {dec.radius}; cannot read a depth-{depth} profile"
        )
    report = is_weakly_spherically_symmetric(g, dec, max_radius=depth)
    if not report.symmetric:
        raise StructuralError(f"not weakly spherically symmetric: {report.witness}")
    counts = [len(dec.spheres[r]) for r in range(depth)]
    return RadialProfile(
        boundary_prefix=dec.boundary[:depth].copy(),
        measure_prefix=dec.sphere_measure[:depth].copy(),
        killing_prefix=dec.sphere_killing[:depth].copy(),
        count_prefix=np.array(counts, dtype=float),
        boundary_tail=CustomTail(None),
        measure_tail=CustomTail(None),
        killing_tail=CustomTail(None),
        count_tail=CustomTail(None),
        name=name,
    )


def quotient_graph(p: RadialProfile, depth: int) -> WeightedGraph:
    """Chain carrying the radial structure of the profile.

    Vertex ``r`` (0..depth) has measure ``m(S_r)`` and killing
    ``c(S_r)``; the edge ``r -- r+1`` has weight ``dB(r)``.  For a
    weakly spherically symmetric graph, sphere-constant functions have
    the same Laplacian, energy and norms on the quotient as on the
    original graph.
    """
    depth = int(depth)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    edges = [(r, r + 1, p.boundary(r)) for r in range(depth)]
    m = [p.sphere_measure(r) for r in range(depth + 1)]
    c = [p.sphere_killing(r) for r in range(depth + 1)]
    return WeightedGraph(depth + 1, edges, m, c)


# ---------------------------------------------------------------------------
# profile text format
#
#   [prefix]
#   boundary = 1.0 2.0
#   sphere_m = 1.0 0.5
#   sphere_c = 0.0 0.0
#   sphere_count = 1 1
#   [tail]
#   boundary = C=1 p=0 rho=2
#   sphere_m = custom convergent=yes
#   ...
#
# '#' starts a comment.  Tail values follow a(r) = C*(r+1)^p*rho^r.
# ---------------------------------------------------------------------------

_SEQ_KEYS = ("boundary", "sphere_m", "sphere_c", "sphere_count")


def _parse_tail(text: str) -> TailModel:
    parts = text.split()
    if not parts:
        raise ValueError("empty tail entry")
    if parts[0] == "custom":
        flag: bool | None = None
        for p_ in parts[1:]:
            if not p_.startswith("convergent="):
                raise ValueError(f"unknown custom tail field {p_!r}")
            word = p_.split("=", 1)[1]
            flag = {"yes": True, "no": False, "unknown": None}.get(word, "bad")
            if flag == "bad":
                raise ValueError(f"convergent must be yes|no|unknown, got {word!r}")
        return CustomTail(flag)
    vals: dict[str, float] = {}
    for p_ in parts:
        if "=" not in p_:
            raise ValueError(f"expected key=value, got {p_!r}")
        k, v = p_.split("=", 1)
        if k not in ("C", "p", "rho"):
            raise ValueError(f"unknown tail field {k!r}")
        vals[k] = float(v)
    if "C" not in vals:
        raise ValueError("tail needs at least C=")
    return PowerGeomTail(vals["C"], vals.get("p", 0.0), vals.get("rho", 1.0))


def _format_tail(t: TailModel) -> str:
    if isinstance(t, CustomTail):
        flag = {True: "yes", False: "no", None: "unknown"}[t.convergent]
        return f"custom convergent={flag}"
    return f"C={t.coeff!r} p={t.power!r} rho={t.ratio!r}"


def parse_profile_text(text: str, name: str = "") -> RadialProfile:
    section = None
    prefixes: dict[str, list[float]] = {}
    tails: dict[str, TailModel] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("["):
                if line not in ("[prefix]", "[tail]"):
                    raise ValueError(f"unknown section {line}")
                section = line[1:-1]
                continue
            if section is None:
                raise ValueError("data before a [prefix] or [tail] section")
            if "=" not in line:
                raise ValueError("expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in _SEQ_KEYS:
                raise ValueError(f"unknown sequence {key!r}")
            if section == "prefix":
                if key in prefixes:
                    raise ValueError(f"duplicate prefix for {key}")
                prefixes[key] = [float(v) for v in value.split()]
            else:
                if key in tails:
                    raise ValueError(f"duplicate tail for {key}")
                tails[key] = _parse_tail(value)
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None

    missing = [k for k in _SEQ_KEYS if k not in prefixes]
    if missing:
        raise GraphFormatError(f"missing [prefix] entries: {', '.join(missing)}")
    missing = [k for k in _SEQ_KEYS if k not in tails]
    if missing:
        raise GraphFormatError(f"missing [tail] entries: {', '.join(missing)}")
    try:
        return RadialProfile(
            boundary_prefix=np.array(prefixes["boundary"]),
            measure_prefix=np.array(prefixes["sphere_m"]),
            killing_prefix=np.array(prefixes["sphere_c"]),
            count_prefix=np.array(prefixes["sphere_count"]),
            boundary_tail=tails["boundary"],
            measure_tail=tails["sphere_m"],
            killing_tail=tails["sphere_c"],
            count_tail=tails["sphere_count"],
            name=name,
        )
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_profile_text(p: RadialProfile) -> str:
    lines = []
    if p.name:
        lines.append(f"# {p.name}")
    lines.append("[prefix]")
    for key, arr in (
        ("boundary", p.boundary_prefix),
        ("sphere_m", p.measure_prefix),
        ("sphere_c", p.killing_prefix),
        ("sphere_count", p.count_prefix),
    ):
        lines.append(f"{key} = " + " ".join(repr(float(v)) for v in arr))
    lines.append("[tail]")
    for key, tail in (
        ("boundary", p.boundary_tail),
        ("sphere_m", p.measure_tail),
        ("sphere_c", p.killing_tail),
        ("sphere_count", p.count_tail),
    ):
        lines.append(f"{key} = {_format_tail(tail)}")
    return "\n".join(lines) + "\n"


def load_profile(source: str | TextIO, name: str = "") -> RadialProfile:
    if hasattr(source, "read"):
        return parse_profile_text(source.read(), name=name)
    with open(source, "r", encoding="utf-8") as fh:
        return parse_profile_text(fh.read(), name=name or str(source))


def save_profile(p: RadialProfile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_profile_text(p))
