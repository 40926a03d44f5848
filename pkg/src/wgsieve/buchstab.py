"""Iterated sieve integrals c_r(b), their sums C(b), and the r decision rules.

The depth-(r-2) recursion

    I_1(T) = int_2^T log(u-1)/u du
    I_j(T) = int_{j+1}^T I_{j-1}(u-1)/u du

is evaluated by building each level I_j as a piecewise-Chebyshev cumulative
interpolant on panels geometric in (u - j); level j integrates the level-(j-1)
interpolant, so the whole stack costs one pass.  Each level carries a
cumulative error curve E_j: interpolation defects are measured at check nodes
(times a safety factor) and propagated through the same integral operator,
which preserves the factorial suppression of the integrals themselves (a
sup-norm recursion would instead grow like (log s)^j).

c_r(b) = I_{r-2}(s_b) with s_b = (73b-36)/(36-b), and C(b) sums c_r over
r0 < r <= M(b).  Levels are cut once sup I_j < LEVEL_CUT; deeper values are
reported as 0 with the cut bound kept in the enclosure.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev

from .intervals import IntervalValue

SCHEMA_VERSION = 1
LEVEL_CUT = 1e-12
C_TAIL_CUTOFF = 1e-10
DEFAULT_TOL = 1e-9
DEFECT_SAFETY = 8.0
# (Chebyshev degree, geometric panel ratio), coarse to fine
_RUNGS = ((32, 1.6), (48, 1.35), (72, 1.18))

LOG2 = math.log(2)


class QuadratureError(RuntimeError):
    """Raised when no refinement rung reaches the requested tolerance."""


# ---------------------------------------------------------------------------
# budgets


@dataclass(frozen=True)
class SieveBudget:
    """Derived sieve parameters for one exponent b (with epsilon = 0)."""

    b: int
    s: Fraction  # upper limit of the iterated integrals
    M: int  # last contributing r
    D_exponent: Fraction
    z_exponent: Fraction
    U2_exponent: Fraction

    def __post_init__(self):
        if self.s != Fraction(72 * self.b, 36 - self.b) - 1:
            raise ValueError("s inconsistent with 72b/(36-b) - 1")
        if self.M != math.floor(self.s + 1):
            raise ValueError("M inconsistent with floor(s+1)")
        if self.D_exponent <= 0:
            raise ValueError("D-exponent must be positive")
        if self.s + 1 != self.U2_exponent / self.z_exponent:
            raise ValueError("exponent identity s+1 = (1/2)/z_exp broken")


def budget(b: int) -> SieveBudget:
    if not 12 <= b <= 35:
        raise ValueError("b must lie in 12..35")
    d_exp = Fraction(3, 4 * b) - Fraction(1, 48)
    return SieveBudget(
        b=b,
        s=Fraction(73 * b - 36, 36 - b),
        M=(72 * b) // (36 - b),
        D_exponent=d_exp,
        z_exponent=d_exp / 3,
        U2_exponent=Fraction(1, 2),
    )


# ---------------------------------------------------------------------------
# level representation


class _Level:
    """Cumulative integral I_j on [lo, hi] as per-panel Chebyshev pieces.

    `chebs[k]` includes the running offset, so evaluation needs no prefix sum.
    `err_cum[k]` bounds |approx - true| for arguments up to breaks[k]; the
    step-up lookup in error_at keeps it an upper bound between breakpoints.
    """

    __slots__ = ("level", "breaks", "chebs", "err_cum")

    def __init__(self, level: int, breaks: np.ndarray, chebs: list, err_cum: np.ndarray):
        self.level = level
        self.breaks = breaks
        self.chebs = chebs
        self.err_cum = err_cum

    @property
    def lo(self) -> float:
        return float(self.breaks[0])

    @property
    def hi(self) -> float:
        return float(self.breaks[-1])

    def __call__(self, x):
        x = np.clip(np.asarray(x, dtype=float), self.lo, self.hi)
        idx = np.clip(np.searchsorted(self.breaks, x, side="right") - 1, 0, len(self.chebs) - 1)
        out = np.empty_like(x)
        for k in np.unique(idx):
            m = idx == k
            out[m] = self.chebs[k](x[m])
        return out

    def value_at(self, t: float) -> float:
        return float(self(np.array([t]))[0])

    def error_at(self, t: float) -> float:
        i = min(np.searchsorted(self.breaks, t, side="left"), len(self.err_cum) - 1)
        return float(self.err_cum[i])

    @property
    def sup(self) -> float:
        return float(self.chebs[-1](self.hi))


def _geometric_breaks(lo: float, hi: float, shift: float, ratio: float) -> np.ndarray:
    pts = [lo]
    while pts[-1] < hi:
        pts.append(min(shift + (pts[-1] - shift) * ratio, hi))
    if len(pts) > 2 and (pts[-1] - pts[-2]) < 0.2 * (pts[-2] - pts[-3]):
        del pts[-2]
    return np.asarray(pts, dtype=float)


def _check_nodes(a: float, c: float, deg: int) -> np.ndarray:
    # Chebyshev points of a finer order; interleaves the interpolation nodes
    k = np.arange(2 * deg + 5)
    return 0.5 * (a + c) + 0.5 * (c - a) * np.cos(np.pi * k / (2 * deg + 4))


def _build_level(prev: _Level | None, j: int, s: float, deg: int, ratio: float) -> _Level | None:
    lo = float(j + 1)
    if lo >= s:
        return None
    if j == 1:
        g = lambda u: np.log(u - 1.0) / u
    else:
        g = lambda u: prev(u - 1.0) / u
    breaks = _geometric_breaks(lo, s, float(j), ratio)
    chebs: list[Chebyshev] = []
    err_cum = [0.0]
    acc = 0.0
    err_acc = 0.0
    for a, c in zip(breaks[:-1], breaks[1:]):
        ch = Chebyshev.interpolate(g, deg, domain=[a, c])
        xs = _check_nodes(a, c, deg)
        defect = float(np.max(np.abs(ch(xs) - g(xs))))
        cum = ch.integ(lbnd=a) + acc
        acc = float(cum(c))
        err_acc += DEFECT_SAFETY * defect * (c - a)
        if prev is not None:
            err_acc += prev.error_at(c - 1.0) * math.log(c / a)
        err_cum.append(err_acc)
        chebs.append(cum)
    return _Level(j, breaks, chebs, np.asarray(err_cum))


class _LevelStack:
    """Levels 1..cut for one (s, rung), built lazily and cached in memory."""

    def __init__(self, s: float, rung: int):
        self.s = s
        self.rung = rung
        self.levels: list[_Level | None] = []
        self.cut_at: int | None = None

    def get(self, j: int) -> _Level | None:
        """Level j, or None if the domain is empty or past the cut."""
        deg, ratio = _RUNGS[self.rung]
        while len(self.levels) < j:
            nxt = len(self.levels) + 1
            if self.cut_at is not None:
                self.levels.append(None)
                continue
            prev = self.levels[-1] if nxt > 1 else None
            lev = _build_level(prev, nxt, self.s, deg, ratio)
            if lev is not None and lev.sup < LEVEL_CUT:
                self.cut_at = nxt
                lev = None
            if lev is None and self.cut_at is None and nxt > 1:
                self.cut_at = nxt  # empty domain: everything deeper is empty too
            self.levels.append(lev)
        return self.levels[j - 1]


_stacks: dict[tuple, _LevelStack] = {}
_stack_lock = threading.Lock()


def _stack_for(s: float, rung: int) -> _LevelStack:
    key = (round(s, 12), rung)
    with _stack_lock:
        return _stacks.setdefault(key, _LevelStack(s, rung))


# ---------------------------------------------------------------------------
# disk cache (budget-based stacks only)


def cache_dir() -> Path:
    root = os.environ.get("WG_CACHE_DIR")
    if root:
        return Path(root)
    return Path.home() / ".cache" / "wgsieve"


def _level_payload(lev: _Level, b: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "b": b,
        "level": lev.level,
        "panel_breakpoints": lev.breaks.tolist(),
        "coefficients": [ch.coef.tolist() for ch in lev.chebs],
        "error_cumulative": lev.err_cum.tolist(),
        "sup_error": float(lev.err_cum[-1]),
    }


def _payload_checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _save_level(lev: _Level, b: int, rung: int) -> None:
    d = cache_dir() / f"levels_b{b}_r{rung}_v{SCHEMA_VERSION}"
    try:
        d.mkdir(parents=True, exist_ok=True)
        payload = _level_payload(lev, b)
        payload["checksum"] = _payload_checksum(_level_payload(lev, b))
        fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, d / f"level_{lev.level}.json")
    except OSError:
        pass  # cache is best-effort


def _load_level(b: int, j: int, rung: int) -> _Level | None:
    path = cache_dir() / f"levels_b{b}_r{rung}_v{SCHEMA_VERSION}" / f"level_{j}.json"
    try:
        payload = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    stated = payload.pop("checksum", None)
    if stated != _payload_checksum(payload) or payload.get("schema_version") != SCHEMA_VERSION:
        return None
    breaks = np.asarray(payload["panel_breakpoints"])
    chebs = [
        Chebyshev(np.asarray(cf), domain=[a, c])
        for cf, a, c in zip(payload["coefficients"], breaks[:-1], breaks[1:])
    ]
    return _Level(j, breaks, chebs, np.asarray(payload["error_cumulative"]))


class _BudgetStack(_LevelStack):
    """Level stack tied to a budget b, with write-through disk persistence."""

    def __init__(self, b: int, rung: int):
        super().__init__(float(budget(b).s), rung)
        self.b = b

    def get(self, j: int) -> _Level | None:
        deg, ratio = _RUNGS[self.rung]
        while len(self.levels) < j:
            nxt = len(self.levels) + 1
            if self.cut_at is not None:
                self.levels.append(None)
                continue
            lev = _load_level(self.b, nxt, self.rung)
            if lev is None:
                prev = self.levels[-1] if nxt > 1 else None
                lev = _build_level(prev, nxt, self.s, deg, ratio)
                if lev is not None:
                    _save_level(lev, self.b, self.rung)
            if lev is not None and lev.sup < LEVEL_CUT:
                self.cut_at = nxt
                lev = None
            if lev is None and self.cut_at is None and nxt > 1:
                self.cut_at = nxt
            self.levels.append(lev)
        return self.levels[j - 1]


def _budget_stack(b: int, rung: int) -> _BudgetStack:
    key = ("budget", b, rung)
    with _stack_lock:
        st = _stacks.get(key)
        if st is None:
            st = _stacks[key] = _BudgetStack(b, rung)
    return st


# ---------------------------------------------------------------------------
# public evaluation


def _eval_from_stack(stack: _LevelStack, r: int, s: float, tol: float) -> IntervalValue | None:
    """Enclosure of I_{r-2}(s) from one stack, or None if tol is not met."""
    lev = stack.get(r - 2)
    if lev is None:
        if stack.cut_at is not None and stack.cut_at <= r - 2:
            return IntervalValue(0.0, 0.0, LEVEL_CUT)
        return IntervalValue.exact(0.0)
    point = lev.value_at(s)
    err = lev.error_at(s)
    if 2 * err > tol:
        return None
    return IntervalValue(point, max(0.0, point - err), point + err)


def iterated_integral(r: int, s: float, tol: float = DEFAULT_TOL) -> IntervalValue:
    """Enclosure of I_{r-2}(s); 0 when s <= r-1."""
    if r < 3:
        raise ValueError("r must be >= 3")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if s <= r - 1:
        return IntervalValue.exact(0.0)
    for rung in range(len(_RUNGS)):
        got = _eval_from_stack(_stack_for(s, rung), r, s, tol)
        if got is not None:
            return got
    raise QuadratureError(f"tolerance {tol} unreachable at r={r}, s={s}")


def c_r(r: int, b: int, tol: float = DEFAULT_TOL) -> IntervalValue:
    """c_r(b) = I_{r-2}(s_b)."""
    if r < 3:
        raise ValueError("r must be >= 3")
    if tol <= 0:
        raise ValueError("tol must be positive")
    bud = budget(b)
    s = float(bud.s)
    if s <= r - 1:
        return IntervalValue.exact(0.0)
    for rung in range(len(_RUNGS)):
        got = _eval_from_stack(_budget_stack(b, rung), r, s, tol)
        if got is not None:
            return got
    raise QuadratureError(f"tolerance {tol} unreachable at r={r}, b={b}")


def C_total(b: int, r0: int, tol: float = DEFAULT_TOL) -> IntervalValue:
    """Sum of c_r(b) over r0 < r <= M(b), with a conservative truncation tail.

    Terms whose point value drops below C_TAIL_CUTOFF are not summed; instead
    (number of remaining terms) x (last computed term) is added to hi.
    """
    if r0 < 2:
        raise ValueError("r0 must be >= 2")
    bud = budget(b)
    total = IntervalValue.exact(0.0)
    for r in range(r0 + 1, bud.M + 1):
        term = c_r(r, b, tol)
        if term.point < C_TAIL_CUTOFF:
            remaining = bud.M - r + 1
            return IntervalValue(total.point, total.lo, total.hi + remaining * term.hi)
        total = total + term
    return total


def sieve_F(s: float) -> float:
    """Upper linear-sieve function 2 e^gamma / s on its validity window [1, 3]."""
    if not 1 <= s <= 3:
        raise ValueError("F is only used on [1, 3]")
    return 2 * math.exp(np.euler_gamma) / s


def sieve_f(s: float) -> float:
    """Lower linear-sieve function 2 e^gamma log(s-1)/s on its window [2, 4]."""
    if not 2 <= s <= 4:
        raise ValueError("f is only used on [2, 4]")
    return 2 * math.exp(np.euler_gamma) * math.log(s - 1) / s


def min_r(b: int, tol: float = DEFAULT_TOL) -> int:
    """Smallest r >= 3 with C_total(b, r).hi < log 2."""
    bud = budget(b)
    for r in range(3, bud.M + 2):
        if C_total(b, r, tol).hi < LOG2:
            return r
    raise AssertionError(f"no admissible r found for b={b}; C should vanish by r=M")


def lumu_r(a: int, b: int) -> int:
    """floor((4/3) / (1/a + 1/b - 5/18)) under 5/18 < 1/a + 1/b <= 1/3, exactly."""
    if a < 3 or b < 3:
        raise ValueError("exponents must be >= 3")
    x = Fraction(1, a) + Fraction(1, b) - Fraction(5, 18)
    if not (0 < x <= Fraction(1, 18)):
        raise ValueError(f"(a, b) = {(a, b)} outside the admissible range")
    return int(Fraction(4, 3) / x)
