"""Exact transversal, matching and 2-packing numbers with certificates."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import kernels
from .system import LinearSystem, degree_profile, require_valid

TRANSVERSAL = "transversal"
MATCHING = "matching"
TWO_PACKING = "two-packing"


@dataclass(frozen=True)
class InvariantCertificate:
    """Optimal value plus a witness; ``proof`` holds the search statistics."""

    kind: str
    value: int
    witness: tuple[int, ...]
    proof: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> str:
        d = asdict(self)
        d["witness"] = list(self.witness)
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "InvariantCertificate":
        d = json.loads(text)
        if d.get("kind") not in (TRANSVERSAL, MATCHING, TWO_PACKING):
            raise ValueError(f"unknown certificate kind {d.get('kind')!r}")
        return cls(d["kind"], int(d["value"]), tuple(int(x) for x in d["witness"]), d.get("proof", {}))


def _bits(x: int) -> tuple[int, ...]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return tuple(out)


def greedy_transversal(sys: LinearSystem) -> int:
    """Repeatedly take the point hitting most unhit lines (lowest index on ties)."""
    unhit = (1 << sys.num_lines) - 1
    chosen = 0
    pl = sys.point_lines
    while unhit:
        p = max(range(sys.num_points), key=lambda x: ((pl[x] & unhit).bit_count(), -x))
        chosen |= 1 << p
        unhit &= ~pl[p]
    return chosen


def tau_exact(sys: LinearSystem, backend: str | None = None) -> InvariantCertificate:
    require_valid(sys)
    greedy = greedy_transversal(sys)
    ub = greedy.bit_count()
    allowed = (1 << sys.num_points) - 1
    size, mask, nodes = kernels.hitting_set(sys.masks, sys.point_lines, 0, allowed, ub,
                                            backend=backend)
    if size < 0:
        size, mask = ub, greedy
    return InvariantCertificate(TRANSVERSAL, size, _bits(mask),
                                {"nodes": nodes, "greedy_upper_bound": ub,
                                 "lower_bound": "greedy disjoint unhit lines"})


def line_order(sys: LinearSystem) -> list[int]:
    """Lines by decreasing sum of point degrees, ties by index."""
    deg = sys.degrees
    return sorted(range(sys.num_lines), key=lambda i: (-sum(deg[p] for p in sys.lines[i]), i))


def _packing(sys: LinearSystem, cap: int, kind: str, backend: str | None) -> InvariantCertificate:
    require_valid(sys)
    size, mask, nodes = kernels.packing(sys.masks, line_order(sys), cap, 0,
                                        sys.num_lines + 1, sys.num_points, backend=backend)
    return InvariantCertificate(kind, size, _bits(mask),
                                {"nodes": nodes, "lower_bound": "current + compatible candidates",
                                 "cap": cap})


def nu_exact(sys: LinearSystem, backend: str | None = None) -> InvariantCertificate:
    return _packing(sys, 1, MATCHING, backend)


def nu2_exact(sys: LinearSystem, backend: str | None = None) -> InvariantCertificate:
    return _packing(sys, 2, TWO_PACKING, backend)


@dataclass(frozen=True)
class Theorem2Check:
    lines: int
    delta: int
    delta_prime: int
    nu2: int
    tau: int

    @property
    def hypothesis(self) -> bool:
        return self.lines <= self.delta + self.delta_prime + self.nu2 - 3

    @property
    def conclusion(self) -> bool:
        return self.tau <= self.nu2 - 1

    @property
    def violated(self) -> bool:
        return self.hypothesis and not self.conclusion


def theorem2_predicate(sys: LinearSystem) -> Theorem2Check:
    """Evaluate |L| <= D + D' + nu2 - 3  =>  tau <= nu2 - 1 with exact invariants."""
    prof = degree_profile(sys)
    return Theorem2Check(sys.num_lines, prof.delta, prof.delta_prime,
                         nu2_exact(sys).value, tau_exact(sys).value)


def verify_certificate(sys: LinearSystem, cert: InvariantCertificate) -> list[str]:
    """Problems with ``cert`` against ``sys``: witness validity, size and optimality."""
    from . import oracles

    problems = []
    if len(set(cert.witness)) != len(cert.witness) or len(cert.witness) != cert.value:
        problems.append(f"witness size {len(cert.witness)} does not match value {cert.value}")
    if cert.kind == TRANSVERSAL:
        if any(not 0 <= p < sys.num_points for p in cert.witness) or \
                not oracles.is_transversal(sys, cert.witness):
            problems.append("witness does not hit every line")
        exact = tau_exact(sys).value
    elif cert.kind == MATCHING:
        if not oracles.is_matching(sys, cert.witness):
            problems.append("witness lines are not pairwise disjoint")
        exact = nu_exact(sys).value
    else:
        if not oracles.is_two_packing(sys, cert.witness):
            problems.append("witness has a point on three or more of its lines")
        exact = nu2_exact(sys).value
    if exact != cert.value:
        problems.append(f"claimed value {cert.value} but exhaustive search gives {exact}")
    return problems
