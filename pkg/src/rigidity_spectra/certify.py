"""Spectral sufficient conditions for rigidity properties as certificates.

Every strict inequality ``lhs > rhs`` is evaluated through its margin
``lhs - rhs``. A condition passes when the margin exceeds ``BAND``, fails
when it is below ``-BAND``, and is flagged boundary in between, since
floating point cannot settle equality. A certificate is granted only when
every precondition holds exactly and every condition passes, so a
certified verdict always has all margins above ``EPS``.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import SizeGuardError
from .graph import Graph, is_connected, is_regular, min_degree
from .spectral import (
    RAMANUJAN_TOL,
    adjacency_array,
    eigenvalues_array,
    lambda2,
    laplacian_array,
    mu2,
    nontrivial_adjacency_bound,
    q2,
)

EPS = 1e-9
BAND = 1e-7
MAX_THEOREM_N = 300

THEOREM_IDS = ("eigkrig", "kdisrig", "strcor", "maincor", "redund", "glob", "gzeig", "ramanujan_glob")

CERTIFIED = "certified"
NOT_APPLICABLE = "not_applicable"
CONDITION_FAILED = "condition_failed"
BOUNDARY = "boundary"


@dataclass
class Condition:
    kind: str  # "precondition" or "spectral"
    label: str
    description: str
    lhs: float
    rhs: float
    relation: str  # ">", ">=" or "<="
    where: Optional[list[int]] = None
    margin: float = field(init=False)
    status: str = field(init=False)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if self.relation == "<=":
            self.margin = self.rhs - self.lhs
        else:
            self.margin = self.lhs - self.rhs
        self.status = _status(self.kind, self.relation, self.margin)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Condition":
        keys = ("kind", "label", "description", "lhs", "rhs", "relation", "where")
        return cls(**{k: data[k] for k in keys})


def _status(kind: str, relation: str, margin: float) -> str:
    if kind == "precondition":
        return "pass" if margin >= 0 else "fail"
    if relation == ">":
        if abs(margin) <= BAND:
            return "boundary"
        return "pass" if margin > 0 else "fail"
    # non-strict spectral inequalities tolerate rounding at RAMANUJAN_TOL
    return "pass" if margin >= -RAMANUJAN_TOL else "fail"


@dataclass
class Certificate:
    theorem_id: str
    k: int
    verdict: str
    conditions: list[Condition]
    implied_property: str

    @property
    def failed_at(self) -> Optional[str]:
        """Label of the first condition that did not pass."""
        for c in self.conditions:
            if c.status != "pass":
                return c.label
        return None

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "k": self.k,
            "verdict": self.verdict,
            "implied_property": self.implied_property,
            "conditions": [c.to_dict() for c in self.conditions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(
            data["theorem_id"],
            data["k"],
            data["verdict"],
            [Condition.from_dict(c) for c in data["conditions"]],
            data["implied_property"],
        )

    def text(self) -> str:
        lines = [f"{self.theorem_id} (k={self.k}): {self.verdict} -> {self.implied_property}"]
        for c in self.conditions:
            tag = {"pass": "PASS", "fail": "FAIL", "boundary": "BOUNDARY"}[c.status]
            where = f" at {c.where}" if c.where else ""
            lines.append(
                f"  [{tag}] {c.label} {c.description}{where}: "
                f"{c.lhs:.12g} {c.relation} {c.rhs:.12g} (margin {c.margin:.12g})"
            )
        return "\n".join(lines)


def _verdict(conditions: list[Condition]) -> str:
    pre = [c for c in conditions if c.kind == "precondition"]
    spec = [c for c in conditions if c.kind != "precondition"]
    if any(c.status != "pass" for c in pre):
        return NOT_APPLICABLE
    if any(c.status == "fail" for c in spec):
        return CONDITION_FAILED
    if any(c.status == "boundary" for c in spec):
        return BOUNDARY
    return CERTIFIED


def _degree_floor(g: Graph, need: int) -> Condition:
    return Condition("precondition", "pre", f"min degree >= {need}", min_degree(g), need, ">=")


# -- three-level conditions over G - Z -----------------------------------------------

class _Deletions:
    """mu2 and min degree of G - Z from principal submatrices of L(G)."""

    def __init__(self, g: Graph):
        self.g = g
        self.lap = laplacian_array(g)
        self.adj = adjacency_array(g)

    def evaluate(self, z: tuple[int, ...]) -> tuple[float, int]:
        keep = np.setdiff1d(np.arange(self.g.n), np.asarray(z, dtype=np.intp))
        sub = self.lap[np.ix_(keep, keep)]
        if z:
            lost = self.adj[np.ix_(keep, np.asarray(z, dtype=np.intp))].sum(axis=1)
            sub[np.diag_indices_from(sub)] -= lost
        deg = np.diag(sub)
        values = eigenvalues_array(sub).values
        return float(values[1]), int(round(deg.min()))


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _level(
    g: Graph,
    deletions: _Deletions,
    size: int,
    numerator: int,
    label: str,
    jobs: Optional[int],
) -> Condition:
    """Worst instance over all |Z| = size of mu2(G-Z) > numerator/(delta(G-Z)+1)."""
    subsets = list(combinations(range(g.n), size))
    jobs = jobs or _default_jobs()
    if jobs > 1 and len(subsets) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(deletions.evaluate, subsets, chunksize=16))
    else:
        results = [deletions.evaluate(z) for z in subsets]
    worst = None
    for z, (m2, delta) in zip(subsets, results):
        rhs = numerator / (delta + 1)
        if worst is None or m2 - rhs < worst[0]:
            worst = (m2 - rhs, z, m2, rhs)
    _, z, m2, rhs = worst
    names = {0: "mu2(G)", 1: "mu2(G-u)", 2: "mu2(G-v-w)"}
    deg = {0: "delta(G)", 1: "delta(G-u)", 2: "delta(G-v-w)"}
    return Condition(
        "spectral",
        label,
        f"{names[size]} > {numerator}/({deg[size]}+1)",
        m2,
        rhs,
        ">",
        list(z) if size else None,
    )


def _three_level(
    g: Graph,
    theorem_id: str,
    k: int,
    floor: int,
    numerators: tuple[int, int, int],
    implied: str,
    force: bool,
    jobs: Optional[int],
) -> Certificate:
    if g.n > MAX_THEOREM_N and not force:
        raise SizeGuardError(
            f"{theorem_id} needs C(n,2) eigensolves; refusing n={g.n} > {MAX_THEOREM_N} without force"
        )
    pre = _degree_floor(g, floor)
    conditions = [pre]
    if pre.status == "pass":
        deletions = _Deletions(g)
        for size, num in enumerate(numerators):
            conditions.append(_level(g, deletions, size, num, f"({size + 1})", jobs))
    return Certificate(theorem_id, k, _verdict(conditions), conditions, implied)


def _packing_property(k: int) -> str:
    return f"{k} edge-disjoint spanning rigid subgraphs"


def certify_eigkrig(
    g: Graph, k: int, force: bool = False, jobs: Optional[int] = None, theorem_id: str = "eigkrig"
) -> Certificate:
    """mu2(G-Z) > (6k - 2k|Z| - 1)/(delta(G-Z) + 1) for all |Z| <= 2, given delta >= 6k.

    Certified graphs contain k edge-disjoint spanning rigid subgraphs. Every
    level is evaluated and the worst vertex or pair is recorded.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    nums = (6 * k - 1, 4 * k - 1, 2 * k - 1)
    implied = "rigid" if theorem_id == "strcor" else _packing_property(k)
    return _three_level(g, theorem_id, k, 6 * k, nums, implied, force, jobs)


def certify_strcor(g: Graph, force: bool = False, jobs: Optional[int] = None) -> Certificate:
    return certify_eigkrig(g, 1, force, jobs, theorem_id="strcor")


def certify_gzeig(g: Graph, k: int, force: bool = False, jobs: Optional[int] = None) -> Certificate:
    return certify_eigkrig(g, k, force, jobs, theorem_id="gzeig")


def certify_redund(g: Graph, force: bool = False, jobs: Optional[int] = None) -> Certificate:
    """Three-level check with numerators 6, 4, 2; grants redundant rigidity."""
    return _three_level(g, "redund", 1, 6, (6, 4, 2), "redundantly rigid", force, jobs)


def certify_corollary(g: Graph, k: int, which: str) -> Certificate:
    """mu2(G) > 2 + (2k-1)/(delta-1) (kdisrig), 2 + 1/(delta-1) (maincor) or
    2 + 2/(delta-1) (glob), each given delta >= 6k."""
    if which not in ("kdisrig", "maincor", "glob"):
        raise ValueError(f"unknown corollary {which!r}")
    if k < 1:
        raise ValueError("k must be >= 1")
    if which in ("maincor", "glob") and k != 1:
        raise ValueError(f"{which} is stated for k = 1 only")
    pre = _degree_floor(g, 6 * k)
    conditions = [pre]
    numerator = {"kdisrig": 2 * k - 1, "maincor": 1, "glob": 2}[which]
    implied = {"kdisrig": _packing_property(k), "maincor": "rigid", "glob": "globally rigid"}[which]
    if pre.status == "pass":
        delta = pre.lhs
        conditions.append(
            Condition(
                "spectral", "(1)", f"mu2(G) > 2 + {numerator}/(delta-1)",
                mu2(g), 2 + numerator / (delta - 1), ">",
            )
        )
    return Certificate(which, k, _verdict(conditions), conditions, implied)


def certify_ramanujan_glob(g: Graph) -> Certificate:
    """Connected d-regular Ramanujan graphs with d >= 8 are globally rigid.

    The route: Ramanujan gives mu2 = d - lambda_2 >= d - 2 sqrt(d-1), which
    exceeds 2 + 2/(d-1) once d >= 8; the last inequality is then checked on
    the computed mu2 as for the glob condition.
    """
    connected = g.n >= 2 and is_connected(g)
    regular = is_regular(g)
    conditions = [
        Condition("precondition", "pre", "connected", float(connected), 1.0, ">="),
        Condition("precondition", "pre", "regular", float(regular), 1.0, ">="),
    ]
    d = g.degree(0)
    conditions.append(Condition("precondition", "pre", "degree d >= 8", d, 8, ">="))
    if all(c.status == "pass" for c in conditions):
        _, worst = nontrivial_adjacency_bound(g)
        bound = 2 * math.sqrt(d - 1)
        m2 = mu2(g)
        conditions += [
            Condition("spectral", "(R)", "max nontrivial |lambda| <= 2 sqrt(d-1)", worst, bound, "<="),
            Condition("spectral", "(S)", "mu2(G) >= d - 2 sqrt(d-1)", m2, d - bound, ">="),
            Condition("spectral", "(1)", "mu2(G) > 2 + 2/(d-1)", m2, 2 + 2 / (d - 1), ">"),
        ]
    return Certificate("ramanujan_glob", 1, _verdict(conditions), conditions, "globally rigid")


def certify(
    g: Graph, theorem_id: str, k: int = 1, force: bool = False, jobs: Optional[int] = None
) -> Certificate:
    """Dispatch on theorem id."""
    if theorem_id in ("eigkrig", "gzeig"):
        return certify_eigkrig(g, k, force, jobs, theorem_id=theorem_id)
    if theorem_id == "strcor":
        return certify_strcor(g, force, jobs)
    if theorem_id == "redund":
        return certify_redund(g, force, jobs)
    if theorem_id in ("kdisrig", "maincor", "glob"):
        return certify_corollary(g, k, theorem_id)
    if theorem_id == "ramanujan_glob":
        return certify_ramanujan_glob(g)
    raise ValueError(f"unknown theorem id {theorem_id!r}")


# -- adjacency and signless reformulations --------------------------------------------

@dataclass
class VariantReport:
    applicable: bool
    delta: int
    lambda2: Optional[float] = None
    lambda2_rhs: Optional[float] = None
    lambda2_fires: bool = False
    q2: Optional[float] = None
    q2_rhs: Optional[float] = None
    q2_fires: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def eigenvalue_variant_report(g: Graph) -> VariantReport:
    """Whether lambda2 < delta - 2 - 2/(delta-1) or q2 < 2 delta - 2 - 2/(delta-1)
    holds; each is a separate sufficient condition for global rigidity when
    delta >= 6."""
    delta = min_degree(g)
    if delta < 6:
        return VariantReport(False, delta)
    shift = 2 + 2 / (delta - 1)
    l2, s2 = lambda2(g), q2(g)
    l_rhs, q_rhs = delta - shift, 2 * delta - shift
    return VariantReport(
        True, delta, l2, l_rhs, l_rhs - l2 > BAND, s2, q_rhs, q_rhs - s2 > BAND
    )
