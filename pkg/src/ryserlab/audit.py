"""Statement audits over catalogs and the exhaustive search for f_l(r).

f_l(r) is the fewest lines of an intersecting r-partite linear system whose
transversal number is r - 1. Proved statements are audited as cross-checks
of the solvers; open statements are only reported.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import lsformat
from .cliquerep import (Budget, CliquePartition, EnumerationIncomplete, PartitionEnumerator,
                        from_clique_partition, nu2_rep, tau_rep, to_clique_partition)
from .constructions import InfeasibleError, projective_plane, random_linear_system, truncate
from .invariants import InvariantCertificate, nu2_exact, tau_exact
from .oracles import NU_MAX_LINES, TAU_MAX_POINTS, nu2_oracle, tau_oracle
from .parallel import Workers
from .system import (LinearSystem, SidePartition, degree_profile, find_partition,
                     is_intersecting, require_valid)


class SolverOracleMismatch(RuntimeError):
    """The exact solver and an independent check disagree: a bug, never a result."""


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    sys: LinearSystem
    sides: SidePartition | None = None


@dataclass(frozen=True)
class Facts:
    label: str
    lines: int
    r: int | None
    intersecting: bool
    partite: bool | None
    tau: int
    nu2: int
    delta: int
    delta_prime: int


def instance_facts(entry: CatalogEntry) -> Facts:
    sys = entry.sys
    require_valid(sys)
    r = sys.uniformity()
    inter = is_intersecting(sys)
    partite = None
    if inter and r is not None:
        if entry.sides is not None and entry.sides.r == r and entry.sides.check(sys):
            partite = True
        else:
            partite = find_partition(sys, r) is not None
    prof = degree_profile(sys)
    return Facts(entry.label, sys.num_lines, r, inter, partite,
                 tau_exact(sys).value, nu2_exact(sys).value, prof.delta, prof.delta_prime)


@dataclass(frozen=True)
class Statement:
    ident: str
    text: str
    domain: Callable[[Facts], bool]
    hypothesis: Callable[[Facts], bool]
    conclusion: Callable[[Facts], bool]


def _odd(f: Facts, lo: int) -> bool:
    return f.r is not None and f.r % 2 == 1 and f.r >= lo


def _even(f: Facts, lo: int) -> bool:
    return f.r is not None and f.r % 2 == 0 and f.r >= lo


def _uni(f: Facts) -> bool:
    return f.intersecting and f.r is not None


def _part(f: Facts) -> bool:
    return f.intersecting and bool(f.partite)


STATEMENTS: dict[str, Statement] = {s.ident: s for s in [
    Statement("T2", "linear: |L| <= D + D' + nu2 - 3 implies tau <= nu2 - 1",
              lambda f: f.lines >= 1,
              lambda f: f.lines <= f.delta + f.delta_prime + f.nu2 - 3,
              lambda f: f.tau <= f.nu2 - 1),
    Statement("L3", "intersecting r-uniform, r odd >= 3: tau = r implies nu2 = r + 1",
              lambda f: _uni(f) and _odd(f, 3),
              lambda f: f.tau == f.r, lambda f: f.nu2 == f.r + 1),
    Statement("C5", "intersecting r-partite, r odd >= 3: nu2 <= r implies tau <= r - 1",
              lambda f: _part(f) and _odd(f, 3),
              lambda f: f.nu2 <= f.r, lambda f: f.tau <= f.r - 1),
    Statement("L4", "intersecting r-uniform, r even >= 2: nu2 = r + 1 implies tau = (r + 2) / 2",
              lambda f: _uni(f) and _even(f, 2),
              lambda f: f.nu2 == f.r + 1, lambda f: 2 * f.tau == f.r + 2),
    Statement("L5", "intersecting r-uniform, r even >= 4: tau = r implies nu2 = r",
              lambda f: _uni(f) and _even(f, 4),
              lambda f: f.tau == f.r, lambda f: f.nu2 == f.r),
    Statement("L6", "intersecting r-uniform, r even >= 4: tau = r - 1 implies nu2 = r",
              lambda f: _uni(f) and _even(f, 4),
              lambda f: f.tau == f.r - 1, lambda f: f.nu2 == f.r),
    Statement("L6P", "intersecting r-partite, r even >= 4: tau = r - 1 implies nu2 = r",
              lambda f: _part(f) and _even(f, 4),
              lambda f: f.tau == f.r - 1, lambda f: f.nu2 == f.r),
    Statement("C7", "intersecting r-partite, r even >= 4: nu2 <= r - 1 implies tau <= r - 2",
              lambda f: _part(f) and _even(f, 4),
              lambda f: f.nu2 <= f.r - 1, lambda f: f.tau <= f.r - 2),
    Statement("C8", "intersecting r-uniform, r even >= 4: tau in {r - 1, r} implies nu2 = r",
              lambda f: _uni(f) and _even(f, 4),
              lambda f: f.tau in (f.r - 1, f.r), lambda f: f.nu2 == f.r),
    Statement("T1", "intersecting r-partite, r even >= 4: |L| <= 3(r - 2) implies tau != r - 1",
              lambda f: _part(f) and _even(f, 4),
              lambda f: f.lines <= 3 * (f.r - 2), lambda f: f.tau != f.r - 1),
    Statement("CONJ-ODD", "intersecting r-partite, r odd >= 3: nu2 = r + 1 implies tau <= r - 1",
              lambda f: _part(f) and _odd(f, 3),
              lambda f: f.nu2 == f.r + 1, lambda f: f.tau <= f.r - 1),
    Statement("CONJ-EVEN", "intersecting r-partite, r even >= 4: nu2 = r implies tau <= r - 1",
              lambda f: _part(f) and _even(f, 4),
              lambda f: f.nu2 == f.r, lambda f: f.tau <= f.r - 1),
]}

OPEN_STATEMENTS = {"CONJ-ODD", "CONJ-EVEN"}


@dataclass
class AuditReport:
    lemma_id: str
    statement: str
    catalog: str
    instances_checked: int = 0
    vacuous: int = 0
    confirmed: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    filtered_out: int = 0
    status: str = "complete"
    notes: list[str] = field(default_factory=list)

    def consistent(self) -> bool:
        return self.instances_checked == self.vacuous + self.confirmed + len(self.counterexamples)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        lines = [
            f"audit {self.lemma_id}: {self.statement}",
            f"  catalog: {self.catalog}",
            f"  status: {self.status}",
            f"  checked {self.instances_checked}  vacuous {self.vacuous}  "
            f"confirmed {self.confirmed}  counterexamples {len(self.counterexamples)}  "
            f"(outside domain: {self.filtered_out})",
        ]
        for n in self.notes:
            lines.append(f"  note: {n}")
        for cx in self.counterexamples:
            lines.append(f"  counterexample {cx['label']}: {cx['facts']}")
        lines.append("--- machine-readable ---")
        lines.append(json.dumps(self.to_dict(), sort_keys=True))
        return "\n".join(lines) + "\n"


def reverify(entry: CatalogEntry, facts: Facts) -> str:
    """Recheck tau and nu2 of ``entry`` independently; returns which check ran.

    Uses the brute-force oracles when the instance is within their caps and
    the clique-partition computations otherwise (intersecting systems only).
    """
    sys = entry.sys
    if sys.num_points <= TAU_MAX_POINTS and sys.num_lines <= NU_MAX_LINES:
        tau, nu2, how = tau_oracle(sys), nu2_oracle(sys), "oracle"
    elif facts.intersecting and sys.num_lines >= 2:
        cp = to_clique_partition(sys)
        tau, nu2, how = tau_rep(cp), nu2_rep(cp), "dual"
    else:
        return "unverified (over oracle caps)"
    if (tau, nu2) != (facts.tau, facts.nu2):
        raise SolverOracleMismatch(
            f"{entry.label}: solver tau={facts.tau}, nu2={facts.nu2}; {how} tau={tau}, nu2={nu2}")
    return how


def audit_lemma(lemma_id: str, catalog: list[CatalogEntry], catalog_name: str = "",
                workers: Workers | None = None) -> AuditReport:
    if lemma_id not in STATEMENTS:
        raise KeyError(f"unknown statement id {lemma_id!r}; known: {sorted(STATEMENTS)}")
    st = STATEMENTS[lemma_id]
    facts = workers.map(instance_facts, catalog) if workers else [instance_facts(e) for e in catalog]
    return classify(st, catalog, facts, catalog_name)


def classify(st: Statement, catalog: list[CatalogEntry], facts: list[Facts],
             catalog_name: str = "") -> AuditReport:
    rep = AuditReport(st.ident, st.text, catalog_name)
    if st.ident in OPEN_STATEMENTS:
        rep.notes.append("open statement: results are reported, not asserted")
    for entry, f in zip(catalog, facts):
        if not st.domain(f):
            rep.filtered_out += 1
            continue
        rep.instances_checked += 1
        if not st.hypothesis(f):
            rep.vacuous += 1
        elif st.conclusion(f):
            rep.confirmed += 1
        else:
            how = reverify(entry, f)
            rep.counterexamples.append({
                "label": entry.label, "facts": asdict(f), "verified_by": how,
                "system": lsformat.dumps(entry.sys, entry.sides),
            })
    return rep


# -- catalogs ---------------------------------------------------------------

def random_catalog(count: int, seed: int, r_choices=(2, 3, 4), max_lines: int = 10) -> list[CatalogEntry]:
    """``count`` seeded random linear systems; draws that fail to place all lines are skipped."""
    rng = random.Random(seed)
    out: list[CatalogEntry] = []
    while len(out) < count:
        r = rng.choice(r_choices)
        n = rng.randint(r, 3 * r + 3)
        m = rng.randint(1, max_lines)
        s = rng.getrandbits(32)
        try:
            sys = random_linear_system(n, m, r, s, max_rejections=50)
        except InfeasibleError:
            continue
        out.append(CatalogEntry(f"random#{len(out)} n={n} m={m} r={r} seed={s}", sys))
    return out


def enumerated_catalog(m_max: int, rs, workers: Workers | None = None,
                       budget: Budget | None = None) -> list[CatalogEntry]:
    """Every r-partite realisable class of intersecting systems with 1..m_max lines."""
    out = []
    for r in rs:
        enum = PartitionEnumerator(r, budget, workers)
        for m in range(1, m_max + 1):
            for i, cp in enumerate(enum.level(m)):
                real = from_clique_partition(cp, r)
                if real is not None:
                    out.append(CatalogEntry(f"enum r={r} m={m} class={i}", *real))
    return out


def uniform_catalog(m_max: int, rs, budget: Budget | None = None) -> list[CatalogEntry]:
    """r-uniform (not necessarily r-partite) realisations: each line padded to r points."""
    out = []
    for r in rs:
        enum = PartitionEnumerator(r, budget)
        for m in range(1, m_max + 1):
            for i, cp in enumerate(enum.level(m)):
                k = len(cp.cliques)
                lines = [[j for j, c in enumerate(cp.cliques) if v in c] for v in range(m)]
                for ln in lines:
                    while len(ln) < r:
                        ln.append(k)
                        k += 1
                out.append(CatalogEntry(f"uniform r={r} m={m} class={i}", LinearSystem(k, lines)))
    return out


def planes_catalog(qs=(2, 3, 4, 5)) -> list[CatalogEntry]:
    out = []
    for q in qs:
        plane = projective_plane(q)
        out.append(CatalogEntry(f"plane q={q}", plane.sys))
        out.append(CatalogEntry(f"truncated plane q={q}", *truncate(plane)))
    return out


# -- f_l search ---------------------------------------------------------------

@dataclass
class FlResult:
    r: int
    status: str  # exact | lower_bound_only | budget_exhausted
    value: int | None
    bound: int  # f_l(r) >= bound, from exhausted line counts
    witness: LinearSystem | None = None
    witness_sides: SidePartition | None = None
    witness_cert: InvariantCertificate | None = None
    witness_check: str = ""
    exhaustion_log: list[dict] = field(default_factory=list)
    conjecture_candidates: list[dict] = field(default_factory=list)
    budget: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "r": self.r, "status": self.status, "value": self.value, "bound": self.bound,
            "witness": lsformat.dumps(self.witness, self.witness_sides) if self.witness else None,
            "witness_certificate": json.loads(self.witness_cert.to_json()) if self.witness_cert else None,
            "witness_check": self.witness_check,
            "exhaustion_log": self.exhaustion_log,
            "conjecture_candidates": self.conjecture_candidates,
            "budget": self.budget,
        }

    def to_text(self) -> str:
        head = [f"f_l search r={self.r}: status {self.status}"]
        if self.value is not None:
            head.append(f"  f_l({self.r}) = {self.value}  (witness check: {self.witness_check})")
        else:
            head.append(f"  f_l({self.r}) >= {self.bound}")
        for row in self.exhaustion_log:
            if not row["complete"]:
                head.append(f"  m={row['m']}: incomplete (budget ran out)")
                continue
            head.append(f"  m={row['m']}: classes {row['classes']}, r-partite {row['realizable']}, "
                        f"tau histogram {row['tau_histogram']}, complete {row['complete']}")
        if self.conjecture_candidates:
            head.append(f"  conjecture counterexample candidates: {len(self.conjecture_candidates)}")
        head.append("--- machine-readable ---")
        head.append(json.dumps(self.to_dict(), sort_keys=True))
        return "\n".join(head) + "\n"


def _scan(job: tuple[CliquePartition, int]) -> tuple[bool, int]:
    cp, r = job
    if from_clique_partition(cp, r) is None:
        return False, -1
    return True, tau_rep(cp)


def _level_digest(cps: list[CliquePartition]) -> str:
    h = hashlib.sha256()
    for cp in cps:
        h.update(cp.to_text().encode() + b"\n")
    return h.hexdigest()[:16]


def verify_realization(cp: CliquePartition, r: int, expected_tau: int) -> tuple[LinearSystem, SidePartition, InvariantCertificate, str]:
    """Realise ``cp`` and recheck everything about it from scratch."""
    real = from_clique_partition(cp, r)
    if real is None:
        raise SolverOracleMismatch(f"{cp.to_text()} lost its r-partite realisation")
    sys, sides = real
    require_valid(sys)
    if not (is_intersecting(sys) and sides.check(sys) and sys.uniformity() == r):
        raise SolverOracleMismatch(f"realisation of {cp.to_text()} is not intersecting r-partite")
    cert = tau_exact(sys)
    if cert.value != expected_tau:
        raise SolverOracleMismatch(f"tau_rep={expected_tau} but tau_exact={cert.value}")
    how = "tau_rep + tau_exact"
    if sys.num_points <= TAU_MAX_POINTS:
        if tau_oracle(sys) != expected_tau:
            raise SolverOracleMismatch(f"tau_oracle disagrees on {cp.to_text()}")
        how += " + tau_oracle"
    return sys, sides, cert, how


def _scan_levels(r: int, m_max: int, budget: Budget | None, workers: Workers | None,
                 stop_at_hit: bool) -> tuple[list[dict], list, int, bool]:
    """Walk m = 1..m_max; returns (log, hits[(m, cp)], last complete m, budget ran out)."""
    enum = PartitionEnumerator(r, budget, workers)
    log: list[dict] = []
    hits: list[tuple[int, CliquePartition]] = []
    last = 0
    try:
        for m in range(1, m_max + 1):
            cps = enum.level(m)
            jobs = [(cp, r) for cp in cps]
            scans = workers.map(_scan, jobs) if workers else [_scan(j) for j in jobs]
            taus = Counter(t for ok, t in scans if ok)
            log.append({"m": m, "classes": len(cps), "realizable": sum(taus.values()),
                        "tau_histogram": {str(k): v for k, v in sorted(taus.items())},
                        "digest": _level_digest(cps), "complete": True})
            last = m
            level_hits = [(m, cp, t) for cp, (ok, t) in zip(cps, scans) if ok and t >= r - 1]
            hits.extend(level_hits)
            if stop_at_hit and any(t == r - 1 for _, _, t in level_hits):
                break
    except EnumerationIncomplete:
        log.append({"m": last + 1, "complete": False})
        return log, hits, last, True
    return log, hits, last, False


def search_fl(r: int, m_max: int, budget: Budget | None = None,
              workers: Workers | None = None) -> FlResult:
    """Smallest m <= m_max with an intersecting r-partite linear system on m lines and tau = r-1."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    budget = budget or Budget()
    log, hits, last, ran_out = _scan_levels(r, m_max, budget, workers, stop_at_hit=True)
    res = FlResult(r, "lower_bound_only", None, last + 1, exhaustion_log=log,
                   budget=budget.describe())
    for m, cp, t in hits:
        if t >= r:
            sys, sides, cert, how = verify_realization(cp, r, t)
            res.conjecture_candidates.append({"m": m, "tau": t, "verified_by": how,
                                              "system": lsformat.dumps(sys, sides)})
    exact = [(m, cp) for m, cp, t in hits if t == r - 1]
    if exact:
        m, cp = exact[0]
        sys, sides, cert, how = verify_realization(cp, r, r - 1)
        res.status, res.value, res.bound = "exact", m, m
        res.witness, res.witness_sides, res.witness_cert, res.witness_check = sys, sides, cert, how
    elif ran_out:
        res.status = "budget_exhausted"
    return res


def verify_theorem1(r: int, budget: Budget | None = None,
                    workers: Workers | None = None) -> AuditReport:
    """Exhaustively look for tau = r-1 among intersecting r-partite systems with <= 3(r-2) lines."""
    if r < 4 or r % 2:
        raise ValueError(f"the 3(r-2)+1 lower bound concerns even r >= 4, got r={r}")
    budget = budget or Budget()
    m_max = 3 * (r - 2)
    st = STATEMENTS["T1"]
    rep = AuditReport("T1", st.text, f"exhaustive r={r}, m <= {m_max}")
    log, hits, last, ran_out = _scan_levels(r, m_max, budget, workers, stop_at_hit=False)
    rep.instances_checked = sum(row.get("realizable", 0) for row in log)
    for m, cp, t in hits:
        if t == r - 1:
            sys, sides, cert, how = verify_realization(cp, r, t)
            rep.counterexamples.append({
                "label": f"exhaustive r={r} m={m}", "verified_by": how,
                "facts": {"lines": m, "tau": t, "nu2": nu2_exact(sys).value},
                "system": lsformat.dumps(sys, sides),
            })
    rep.confirmed = rep.instances_checked - len(rep.counterexamples)
    if ran_out:
        rep.status = "budget_exhausted"
        rep.notes.append(f"exhausted m <= {last} of {m_max}; budget {budget.describe()}")
    elif rep.counterexamples:
        rep.notes.append("bound refuted by exhaustion")
    else:
        rep.notes.append("bound verified by exhaustion")
    return rep
