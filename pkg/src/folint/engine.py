"""The decision pipeline for rational first integrals: fixed-degree search,
the cone-of-curves certificate loop, and first-integral extraction from an
independent system of algebraic solutions."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence

from . import cones, linalg, linsys
from .cluster import Configuration, Decomposition, DivisorClass, \
    decompose_in_AS, t_from_system
from .polyforms import (
    HomogeneousForm, ProjectiveOneForm, divides, foliation_degree, gcd3,
    is_first_integral, is_invariant_curve,
)


class NotAnIndependentSystem(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    d_max: int = 30
    lam_max: int = 60
    depth_cap: int = 50


@dataclass(frozen=True)
class Verdict:
    outcome: str                        # integral | no_integral | inconclusive
    numerator: Optional[HomogeneousForm] = None
    denominator: Optional[HomogeneousForm] = None
    reason: str = ""

    @classmethod
    def integral(cls, F, G, omega) -> "Verdict":
        g = gcd3(F, G)
        if g.degree > 0:
            F, G = divides(g, F), divides(g, G)
        if not is_first_integral(F, G, omega):
            raise ValueError("claimed first integral fails the wedge test")
        return cls("integral", F, G)

    @classmethod
    def no_integral(cls, reason) -> "Verdict":
        return cls("no_integral", reason=reason)

    @classmethod
    def inconclusive(cls, reason) -> "Verdict":
        return cls("inconclusive", reason=reason)

    @property
    def is_integral(self):
        return self.outcome == "integral"


class IndependentSystem:
    """s invariant curves with nonpositive strict squares whose classes,
    together with the strict non-dicritical exceptionals, have full rank."""

    def __init__(self, curves: Sequence[HomogeneousForm],
                 config: Configuration, classes=None):
        self.config = config
        self.curves = list(curves)
        if classes is None:
            classes = [linsys.strict_class(c, config) for c in curves]
        self.classes = list(classes)
        s = config.dicritical_count
        if len(self.curves) != s:
            raise NotAnIndependentSystem(
                "%d curves for %d dicritical divisors" % (len(self.curves), s))
        for c, cl in zip(self.curves, self.classes):
            if cl.square() > 0:
                raise NotAnIndependentSystem(
                    "strict transform of a system curve has positive square")
        rows = [cl.coordinates() for cl in self.classes]
        rows += [config.exceptional_strict_class(q).coordinates()
                 for q in config.non_dicritical_indices()]
        if linalg.rank_int(rows) != config.size:
            raise NotAnIndependentSystem("classes are linearly dependent")
        self._t = None

    @property
    def T(self) -> DivisorClass:
        if self._t is None:
            self._t = t_from_system(self.classes, self.config)
        return self._t

    def decomposition(self) -> Decomposition:
        return decompose_in_AS(self.T, self.classes, self.config)


# ---------------------------------------------------------------------------
# the degree bound
# ---------------------------------------------------------------------------

def w_function(k: int, positive: bool) -> Optional[Fraction]:
    """Minimum positive value of 1 - sum (s-1)/s (or its negative) over all
    subsets of the divisors of k; None when no positive value exists."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    terms = [Fraction(s - 1, s) for s in range(1, k + 1) if k % s == 0]
    half = len(terms) // 2
    sums_a = _subset_sums(terms[:half])
    sums_b = sorted(_subset_sums(terms[half:]))
    best = None
    one = Fraction(1)
    for a in sums_a:
        if positive:
            # want the largest a + b strictly below 1
            idx = bisect_left(sums_b, one - a) - 1
            if idx >= 0:
                value = one - a - sums_b[idx]
                if best is None or value < best:
                    best = value
        else:
            # want the smallest a + b strictly above 1
            idx = bisect_right(sums_b, one - a)
            if idx < len(sums_b):
                value = a + sums_b[idx] - one
                if value > 0 and (best is None or value < best):
                    best = value
    return best


def _subset_sums(terms):
    sums = {Fraction(0)}
    for t in terms:
        sums |= {s + t for s in sums}
    return sorted(sums)


def delta_bound(omega: ProjectiveOneForm, system: IndependentSystem,
                decomposition: Decomposition) -> Optional[Fraction]:
    """The upper bound for the multiplier alpha with D = alpha T; None means
    not well defined, which already rules out a rational first integral."""
    coeffs = list(decomposition.alpha) + list(decomposition.beta.values())
    if any(c <= 0 for c in coeffs):
        raise ValueError("the bound needs a strictly positive decomposition")
    r = 1
    for c in coeffs:
        r = r * c.denominator // gcd(r, c.denominator)
    T = system.T
    entries = [r * v for v in T.coordinates()]
    k0 = 0
    for v in entries:
        k0 = gcd(k0, int(v))
    numer = foliation_degree(omega) + 2 - sum(c.degree for c in system.curves)
    if numer <= 0:
        return None
    w = w_function(k0, positive=numer > 0)
    if w is None:
        return None
    denom = w * sum(a * c.degree
                    for a, c in zip(decomposition.alpha, system.curves))
    return Fraction(numer) / denom


# ---------------------------------------------------------------------------
# condition classification and Algorithm 2
# ---------------------------------------------------------------------------

@dataclass
class ConditionReport:
    conditions: set
    alpha: Optional[int]            # min of Sigma(F, S) when certified
    sigma_capped: bool              # search for condition (3) hit lam_max
    decomposition: Optional[Decomposition]


def classify_conditions(system: IndependentSystem,
                        lam_max: int = 60) -> ConditionReport:
    """Which of the three usability conditions the system satisfies."""
    conds = set()
    T = system.T
    if T.square() != 0:
        conds.add(1)
    decomposition = None
    try:
        decomposition = system.decomposition()
        coeffs = list(decomposition.alpha) + list(decomposition.beta.values())
        if coeffs and all(c > 0 for c in coeffs):
            conds.add(2)
    except Exception:
        decomposition = None
    alpha = None
    capped = False
    for lam in range(1, lam_max + 1):
        if linsys.h0(lam * T, system.config) >= 2:
            alpha = lam
            conds.add(3)
            break
    else:
        capped = True
    return ConditionReport(conds, alpha, capped, decomposition)


def algorithm2(omega: ProjectiveOneForm, config: Configuration,
               system: IndependentSystem, lam_max: int = 60) -> Verdict:
    """First-integral extraction from an independent system."""
    T = system.T
    if T.square() != 0:
        return Verdict.no_integral("T^2 = %d is nonzero" % T.square())
    report = classify_conditions(system, lam_max=lam_max)
    if 2 in report.conditions:
        bound = delta_bound(omega, system, report.decomposition)
        if bound is None:
            return Verdict.no_integral("the degree bound is not well defined")
        alpha = None
        for lam in range(1, int(bound) + 1):
            if linsys.h0(lam * T, config) >= 2:
                alpha = lam
                break
        if alpha is None:
            return Verdict.no_integral(
                "no multiple of T up to the bound %s moves in a pencil"
                % bound)
    elif report.alpha is not None:
        alpha = report.alpha
    else:
        return Verdict.inconclusive(
            "condition (3) could not be certified for lambda <= %d" % lam_max)
    D = alpha * T
    dim = linsys.h0(D, config)
    if dim > 2:
        return Verdict.no_integral("h0(alpha T) = %d exceeds 2" % dim)
    F, G = linsys.basis(D, config)
    if is_first_integral(F, G, omega):
        return Verdict.integral(F, G, omega)
    return Verdict.no_integral("the candidate pencil is not invariant")


# ---------------------------------------------------------------------------
# Algorithm 1: fixed-degree decision
# ---------------------------------------------------------------------------

def _candidate_multiplicities(config: Configuration, d: int, mode: str):
    """All e-vectors with the proximity relations of one enumeration mode.

    Mode "zero-sum": the fixed-degree search; non-dicritical points carry the
    proximity equality, dicritical values roam [-d, d].  Mode "effective":
    the cone search; every point obeys the proximity inequality within
    [0, d].  Both prune on sum e^2 <= d^2.
    """
    m = config.size
    prox_children = config.proximate_children
    dicritical = [p.dicritical for p in config.points]
    zero_sum = mode == "zero-sum"
    out = []
    e = [0] * m

    def descend(idx, acc):
        if idx < 0:
            out.append(tuple(e))
            return
        forced = sum(e[p] for p in prox_children[idx])
        if zero_sum:
            choices = range(-d, d + 1) if dicritical[idx] else (forced,)
        else:
            choices = range(max(forced, 0), d + 1)
        for v in choices:
            extra = v * v
            if zero_sum and acc + extra > d * d:
                if v >= 0:
                    break
                continue
            e[idx] = v
            descend(idx - 1, acc + extra)
        e[idx] = 0

    descend(m - 1, 0)
    return sorted(out)


def algorithm1(omega: ProjectiveOneForm, config: Configuration,
               d: int) -> Verdict:
    """Decide a rational first integral of the exact degree d."""
    if d < 1:
        raise ValueError("degree must be positive")
    if config.size < 2:
        raise ValueError("the fixed-degree search needs >= 2 points")
    dic_strict = [(q, config.exceptional_strict_class(q))
                  for q in config.dicritical_indices()]
    for e in _candidate_multiplicities(config, d, "zero-sum"):
        D = config.divisor(d, e)
        if D.square() != 0:
            continue
        if any(D.intersect(cl) <= 0 for _, cl in dic_strict):
            continue
        if linsys.h0(D, config) != 2:
            continue
        F, G = linsys.basis(D, config)
        if is_first_integral(F, G, omega):
            return Verdict.integral(F, G, omega)
    return Verdict.no_integral("no degree-%d pencil is invariant" % d)


# ---------------------------------------------------------------------------
# Algorithm 3: independent-system search under polyhedrality
# ---------------------------------------------------------------------------

@dataclass
class Algorithm3Result:
    verdict: Optional[Verdict]
    system: Optional[IndependentSystem]
    curve_set: List[HomogeneousForm]
    dual_history: List[list] = dc_field(default_factory=list)


def algorithm3(omega: ProjectiveOneForm, config: Configuration,
               d_max: int = 30, trace=None,
               debug: bool = False) -> Algorithm3Result:
    """Search for an independent system of algebraic solutions, growing the
    cone V and the curve set G degree by degree.

    The loop conditions are evaluated lazily: the negative-square test on the
    dual holds automatically before the first cone mutation (any root point
    with a child, or two plane points, produce a witness), so duals are only
    computed right after V grows.
    """
    if config.size < 2:
        raise ValueError("the cone search needs >= 2 points")
    s = config.dicritical_count
    nf = config.non_dicritical_indices()
    nf_rows = [config.exceptional_strict_class(q).coordinates() for q in nf]
    V = cones.RationalCone(
        [config.exceptional_strict_class(i).coordinates()
         for i in range(config.size)], dim=config.size + 1)
    g_curves: List[HomogeneousForm] = []
    g_classes: List[DivisorClass] = []
    history: List[list] = []
    K = config.canonical_class()

    def emit(line):
        if trace is not None:
            trace(line)

    for d in range(1, d_max + 1):
        for e in _candidate_multiplicities(config, d, "effective"):
            C2 = d * d - sum(v * v for v in e)
            KC = -3 * d + sum(e)
            if not (C2 == KC == -1 or (C2 < 0 and KC >= 0)):
                continue
            D = config.divisor(d, e)
            label = "%d %s" % (d, list(e))
            if cones.contains(V, D.coordinates()):
                emit("%s | reject(in V)" % label)
                continue
            if linsys.h0(D, config) != 1:
                emit("%s | reject(h0 != 1)" % label)
                continue
            Q = linsys.basis(D, config)[0]
            if linsys.strict_class(Q, config) != D:
                emit("%s | reject(section class differs)" % label)
                continue
            V = V.with_generator(D.coordinates())
            emit("%s | V+" % label)
            if is_invariant_curve(Q, omega):
                if debug:
                    for prior in g_curves:
                        if divides(prior, Q) is not None:
                            raise AssertionError(
                                "a curve of G reappeared as a component")
                rows = [cl.coordinates() for cl in g_classes]
                rows.append(D.coordinates())
                rows.extend(nf_rows)
                if linalg.rank_int(rows) == len(rows):
                    g_curves.append(Q)
                    g_classes.append(D)
                    emit("%s | G+" % label)
            if len(g_curves) >= s:
                system = IndependentSystem(g_curves, config,
                                           classes=g_classes)
                return Algorithm3Result(None, system, g_curves, history)
            dual = cones.dual(V)
            history.append(list(dual.extremal_rays))
            rays = dual.extremal_rays + [r for pair in
                                         ((l, tuple(-x for x in l))
                                          for l in dual.lineality)
                                         for r in pair]
            if not rays:
                negative = False
            else:
                negative = cones.exists_negative_square(
                    cones.RationalCone(rays, dim=config.size + 1))
            if not negative:
                return Algorithm3Result(
                    Verdict.no_integral(
                        "the dual cone left the negative-square region with "
                        "only %d of %d solutions found" % (len(g_curves), s)),
                    None, g_curves, history)
    return Algorithm3Result(
        Verdict.inconclusive("degree cap %d reached; the cone of curves may "
                             "not be polyhedral" % d_max),
        None, g_curves, history)


# ---------------------------------------------------------------------------
# shortcuts and the full pipeline
# ---------------------------------------------------------------------------

def memo_fastpath(omega: ProjectiveOneForm, config: Configuration,
                  system: IndependentSystem) -> Optional[Verdict]:
    """When K.T < 0 the pencil, if any, is spanned by the T-system itself."""
    T = system.T
    if config.canonical_class().intersect(T) >= 0:
        return None
    if linsys.h0(T, config) != 2:
        return Verdict.no_integral("K.T < 0 but T does not move in a pencil")
    F, G = linsys.basis(T, config)
    if is_first_integral(F, G, omega):
        return Verdict.integral(F, G, omega)
    return Verdict.no_integral("K.T < 0 and the T-pencil is not invariant")


def discard_checks(omega: ProjectiveOneForm, config: Configuration,
                   invariant_curves: Sequence[HomogeneousForm]
                   ) -> Optional[Verdict]:
    """The two strict-transform sign tests that rule out a first integral."""
    classes = []
    for curve in invariant_curves:
        if not is_invariant_curve(curve, omega):
            raise ValueError("discard checks expect invariant curves")
        classes.append(linsys.strict_class(curve, config))
    for cl in classes:
        if cl.square() > 0:
            return Verdict.no_integral(
                "an invariant curve has positive strict self-intersection")
    for i, a in enumerate(classes):
        if a.square() != 0:
            continue
        for j, b in enumerate(classes):
            if i != j and a.intersect(b) != 0:
                return Verdict.no_integral(
                    "an invariant curve with null strict square meets "
                    "another invariant curve")
    return None


def _lines_through(config: Configuration):
    point = config.points[0].origin
    field = config.field
    rows = [[point[0], point[1], point[2]]]
    kernel = linalg.nullspace(rows, field)
    lines = []
    for vec in kernel:
        coeffs = {}
        for idx, c in enumerate(vec):
            if not c.is_zero():
                expo = [0, 0, 0]
                expo[idx] = 1
                coeffs[tuple(expo)] = c
        lines.append(HomogeneousForm(field, 1, coeffs))
    return lines


def pipeline(omega: ProjectiveOneForm, config: Configuration,
             caps: Caps = Caps(), trace=None) -> Verdict:
    """End-to-end decision: small configurations by hand, then the cone
    search followed by the memo shortcut or the extraction algorithm."""
    if config.size == 0:
        return Verdict.no_integral("no dicritical points")
    if config.size == 1:
        L1, L2 = _lines_through(config)
        if is_first_integral(L1, L2, omega):
            return Verdict.integral(L1, L2, omega)
        return Verdict.no_integral(
            "the line pencil through the single dicritical point is not "
            "invariant")
    result = algorithm3(omega, config, d_max=caps.d_max, trace=trace)
    if result.verdict is not None:
        return result.verdict
    system = result.system
    shortcut = memo_fastpath(omega, config, system)
    if shortcut is not None:
        return shortcut
    report = classify_conditions(system, lam_max=caps.lam_max)
    if not report.conditions:
        return Verdict.inconclusive(
            "the system satisfies none of the usability conditions within "
            "the caps")
    return algorithm2(omega, config, system, lam_max=caps.lam_max)
