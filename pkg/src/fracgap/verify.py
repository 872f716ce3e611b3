"""Exact checks of the gap and ratio bounds between alpha_f and alpha'.

Quantities are kept as integers: ``alpha_f_halves = 2*alpha_f`` and
``gap_sixths = 6*(alpha_f - alpha')``. For a connected graph on n >= 5
vertices the bounds are

    gap_sixths <= n - 2
    alpha_f_halves * (n + 1) <= 3 * n * alpha'

and for arbitrary graphs ``gap_sixths <= n`` and ``alpha_f_halves <= 3*alpha'``.
"""

from __future__ import annotations

import enum
import multiprocessing
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Literal

from .fractional import _hamiltonian, alpha_f_halves, canonical_matching, canonical_stats
from .graph import Graph, component_masks, components, encode_graph6, popcount
from .matching import DEFAULT_CAP, matching_number, tutte_berge_witness

Mode = Literal["connected", "union"]


class ExtremalClass(str, enum.Enum):
    NOT_EXTREMAL = "NotExtremal"
    C5 = "C5Type"
    K2K3 = "K2K3Type"
    TRIANGLE_STAR = "TriangleStar"
    DISJOINT_TRIANGLES = "DisjointTriangles"


class TheoremFalsified(AssertionError):
    """A proof step failed on concrete values. Raised only if the code is wrong."""

    def __init__(self, message: str, certificate: CaseCertificate | None = None):
        super().__init__(message)
        self.certificate = certificate


class CorpusInputError(ValueError):
    pass


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------

def _is_triangle(adj, mask: int) -> bool:
    if popcount(mask) != 3:
        return False
    return all(popcount(adj[v] & mask) == 2 for v in range(len(adj)) if mask >> v & 1)


def _triangle_star_center(g: Graph) -> int | None:
    if g.n < 5 or g.n % 3 != 2:
        return None
    for v in range(g.n):
        comps = component_masks(g.adj, g.full_mask & ~(1 << v))
        singles = [c for c in comps if popcount(c) == 1]
        if len(singles) == 1 and all(_is_triangle(g.adj, c) for c in comps if popcount(c) != 1):
            return v
    return None


def _has_triangle_plus_edge(g: Graph) -> bool:
    adj = g.adj
    for a, b in g.edges:
        for c in range(b + 1, g.n):
            if adj[a] >> c & 1 and adj[b] >> c & 1:
                tri = (1 << a) | (1 << b) | (1 << c)
                if any(not (tri >> u & 1 or tri >> v & 1) for u, v in g.edges):
                    return True
    return False


def classify_extremal(g: Graph) -> ExtremalClass:
    """Which equality family ``g`` belongs to.

    At n = 5 the subgraph descriptions win: C5Type, then K2K3Type.
    """
    connected = g.n > 0 and g.is_connected()
    if connected and g.n == 5:
        if _hamiltonian(g.adj, g.full_mask):
            return ExtremalClass.C5
        if _has_triangle_plus_edge(g):
            return ExtremalClass.K2K3
    if connected and _triangle_star_center(g) is not None:
        return ExtremalClass.TRIANGLE_STAR
    if g.n and all(_is_triangle(g.adj, c) for c in component_masks(g.adj, g.full_mask)):
        return ExtremalClass.DISJOINT_TRIANGLES
    return ExtremalClass.NOT_EXTREMAL


# --------------------------------------------------------------------------
# per-graph records
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GapRatioRecord:
    graph6: str
    n: int
    alpha: int
    alpha_f_halves: int
    gap_sixths: int
    regime: Mode
    gap_ok: bool
    ratio_ok: bool
    equality_gap: bool
    equality_ratio: bool
    cls: ExtremalClass

    def to_json(self) -> dict:
        d = asdict(self)
        d["class"] = d.pop("cls").value
        return d


def evaluate(g: Graph, mode: Mode | None = None) -> GapRatioRecord:
    """Bounds and equality flags for one graph.

    ``mode="connected"`` applies the connected-graph bounds and requires a
    connected graph with n >= 5; ``mode="union"`` applies the bounds valid for
    every graph. By default connected graphs with n >= 5 get the former.
    """
    n = g.n
    connected = n > 0 and g.is_connected()
    if mode is None:
        mode = "connected" if connected and n >= 5 else "union"
    alpha = matching_number(g)
    afh = alpha_f_halves(g)
    gap = 3 * afh - 6 * alpha
    if mode == "connected":
        if not connected or n < 5:
            raise CorpusInputError(f"{encode_graph6(g)}: connected bounds need a connected graph with n >= 5")
        gap_ok, eq_gap = gap <= n - 2, gap == n - 2
        ratio_ok, eq_ratio = afh * (n + 1) <= 3 * n * alpha, afh * (n + 1) == 3 * n * alpha
    elif mode == "union":
        gap_ok, eq_gap = gap <= n, n > 0 and gap == n
        if alpha:
            ratio_ok, eq_ratio = afh <= 3 * alpha, afh == 3 * alpha
        else:
            ratio_ok, eq_ratio = True, False
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return GapRatioRecord(encode_graph6(g), n, alpha, afh, gap, mode,
                          gap_ok, ratio_ok, eq_gap, eq_ratio, classify_extremal(g))


def expected_equality(rec: GapRatioRecord) -> bool:
    """Whether the characterization predicts equality for this record."""
    if rec.regime == "connected":
        if rec.n == 5:
            return rec.cls in (ExtremalClass.C5, ExtremalClass.K2K3)
        return rec.cls == ExtremalClass.TRIANGLE_STAR
    return rec.cls == ExtremalClass.DISJOINT_TRIANGLES


# --------------------------------------------------------------------------
# proof-case certificates
# --------------------------------------------------------------------------

_OPS: dict[str, Callable[[int, int], bool]] = {
    "==": lambda a, b: a == b,
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
}


@dataclass(frozen=True)
class Step:
    label: str
    lhs: int
    op: str
    rhs: int

    @property
    def holds(self) -> bool:
        return _OPS[self.op](self.lhs, self.rhs)


@dataclass(frozen=True)
class CaseCertificate:
    theorem: Literal["gap", "ratio"]
    case: str
    values: dict[str, int]
    steps: tuple[Step, ...]
    tight: bool

    @property
    def chain_holds(self) -> bool:
        return all(s.holds for s in self.steps)

    def failed(self) -> list[Step]:
        return [s for s in self.steps if not s.holds]

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem, "case": self.case, "values": self.values,
            "steps": [[s.label, s.lhs, s.op, s.rhs, s.holds] for s in self.steps],
            "chain_holds": self.chain_holds, "tight": self.tight,
        }


def _finish(cert: CaseCertificate, g: Graph) -> CaseCertificate:
    if not cert.chain_holds:
        bad = "; ".join(f"{s.label}: {s.lhs} {s.op} {s.rhs}" for s in cert.failed())
        raise TheoremFalsified(f"{encode_graph6(g)} {cert.theorem} case {cert.case}: {bad}", cert)
    return cert


def _require_connected5(g: Graph) -> None:
    if g.n < 5 or not g.is_connected():
        raise ValueError("certificates need a connected graph with n >= 5")


def case_certificate_gap(g: Graph, cap: int = DEFAULT_CAP) -> CaseCertificate:
    """Replay the deficiency argument for the gap bound on ``g``.

    S is the largest maximum-deficiency set; x counts isolated vertices and y
    the other components of G - S. All values are in half-units of matching
    size, so ``gap`` below is ``2*(alpha_f - alpha')``.
    """
    _require_connected5(g)
    n = g.n
    wit = tutte_berge_witness(g, cap)
    prof = components(g, wit.S)
    s, x, y = len(wit.S), prof.isolated, prof.big_odd
    alpha = matching_number(g)
    afh = alpha_f_halves(g)
    dfc, dfc_f = wit.value, n - afh
    gap = afh - 2 * alpha
    steps = [
        Step("n = 2 alpha' + def(S)", n, "==", 2 * alpha + dfc),
        Step("even components of G-S", prof.even, "==", 0),
        Step("gap = def(S) - def_f(G)", gap, "==", dfc - dfc_f),
    ]
    if s == 0:
        case = "empty-S"
        steps += [
            Step("2 alpha' >= n - 1", 2 * alpha, ">=", n - 1),
            Step("gap <= 1", gap, "<=", 1),
            Step("3 <= n - 2", 3, "<=", n - 2),
        ]
    elif x == 0:
        case = "1"
        steps += [
            Step("def(S) = y - |S|", dfc, "==", y - s),
            Step("def_f(G) >= 0", dfc_f, ">=", 0),
            Step("gap <= y - |S|", gap, "<=", y - s),
            Step("3y <= n - |S|", 3 * y, "<=", n - s),
            Step("3(y - |S|) <= n - 4|S|", 3 * (y - s), "<=", n - 4 * s),
            Step("n - 4|S| <= n - 4", n - 4 * s, "<=", n - 4),
            Step("3 gap < n - 2", 3 * gap, "<", n - 2),
        ]
    else:
        case = "2"
        steps += [
            Step("def(S) = x + y - |S|", dfc, "==", x + y - s),
            Step("x - |S| <= def_f(G)", x - s, "<=", dfc_f),
            Step("gap <= y", gap, "<=", y),
            Step("3y <= n - x - |S|", 3 * y, "<=", n - x - s),
            Step("n - x - |S| <= n - 2", n - x - s, "<=", n - 2),
        ]
    cert = CaseCertificate("gap", case, {"n": n, "S": s, "x": x, "y": y, "alpha": alpha,
                                         "alpha_f_halves": afh},
                           tuple(steps), 3 * gap == n - 2)
    return _finish(cert, g)


def case_certificate_ratio(g: Graph) -> CaseCertificate:
    """Replay the canonical-matching argument for the ratio bound on ``g``.

    Every ratio comparison is cross-multiplied; ``alpha_f_halves`` stands for
    2*alpha_f and ``C`` for the number of half-weight cycles.
    """
    _require_connected5(g)
    n = g.n
    f = canonical_matching(g)
    st = canonical_stats(g, f)
    w0, w1, C = st.w0, st.w1, st.cycles
    alpha = matching_number(g)
    afh = alpha_f_halves(g)
    values = {"n": n, "w0": w0, "w1": w1, "C": C, "alpha": alpha, "alpha_f_halves": afh}
    steps = [
        Step("n = w0 + 2w1 + sum (2i+1)c_i", n, "==", st.order),
        Step("2 alpha_f = 2w1 + sum (2i+1)c_i", afh, "==", st.size_halves),
        Step("alpha' >= w1 + sum i c_i", alpha, ">=", st.matching_lower_bound),
    ]
    if w0 == 0 and w1 == 0:
        case = "1"
        i = next(iter(st.c)) if len(st.c) == 1 else 0
        values["i"] = i
        steps += [
            Step("one half-weight cycle", C, "==", 1),
            Step("n = 2i + 1", n, "==", 2 * i + 1),
            Step("i >= 2", i, ">=", 2),
            Step("alpha' = i", alpha, "==", i),
            Step("ratio <= 1 + 1/(2i)", afh * 2 * i, "<=", (2 * i + 1) * 2 * alpha),
            Step("1 + 1/(2i) <= 5/4", 4 * (2 * i + 1), "<=", 5 * 2 * i),
            Step("ratio <= 3n/(2n+2)", afh * (n + 1), "<=", 3 * n * alpha),
        ]
    elif w1 == 0:
        cert = CaseCertificate("ratio", "2", values, tuple(steps), False)
        raise TheoremFalsified(f"{encode_graph6(g)}: unweighted vertices without any 1-edge", cert)
    elif w0 == 0:
        case = "3"
        steps += [
            Step("3 sum c_i <= n - 2w1", 3 * C, "<=", n - 2 * w1),
            Step("2 alpha_f = n - w0", afh, "==", n - w0),
            Step("2(w1 + sum i c_i) = n - w0 - sum c_i", 2 * st.matching_lower_bound, "==", n - w0 - C),
            Step("ratio <= n/(n - sum c_i)", afh * (n - C), "<=", n * 2 * alpha),
            Step("n/(n - sum c_i) <= 3n/(2n + 2w1)", n * (2 * n + 2 * w1), "<=", 3 * n * (n - C)),
            Step("w1 >= 1", w1, ">=", 1),
            Step("ratio <= 3n/(2n+2)", afh * (n + 1), "<=", 3 * n * alpha),
        ]
    else:
        case = "4"
        steps += [
            Step("3 sum c_i <= n - 2w1 - w0", 3 * C, "<=", n - 2 * w1 - w0),
            Step("2 alpha_f = n - w0", afh, "==", n - w0),
            Step("2(w1 + sum i c_i) = n - w0 - sum c_i", 2 * st.matching_lower_bound, "==", n - w0 - C),
            Step("ratio <= (n-w0)/(n-w0-sum c_i)", afh * (n - w0 - C), "<=", (n - w0) * 2 * alpha),
            Step("(n-w0)/(n-w0-sum c_i) <= 3(n-w0)/(2(n+w1-w0))",
                 (n - w0) * 2 * (n + w1 - w0), "<=", 3 * (n - w0) * (n - w0 - C)),
            Step("3(n-w0)/(2(n+w1-w0)) < 3n/(2(n+w1))",
                 3 * (n - w0) * 2 * (n + w1), "<", 3 * n * 2 * (n + w1 - w0)),
            Step("w1 >= 1", w1, ">=", 1),
            Step("ratio < 3n/(2n+2)", afh * (n + 1), "<", 3 * n * alpha),
        ]
    cert = CaseCertificate("ratio", case, values, tuple(steps), afh * (n + 1) == 3 * n * alpha)
    return _finish(cert, g)


# --------------------------------------------------------------------------
# corpus runs
# --------------------------------------------------------------------------

@dataclass
class VerificationReport:
    mode: Mode
    total: int = 0
    by_n: Counter = field(default_factory=Counter)
    class_counts: Counter = field(default_factory=Counter)
    violations: list[str] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)
    equality: list[str] = field(default_factory=list)

    def add(self, rec: GapRatioRecord) -> None:
        self.total += 1
        self.by_n[rec.n] += 1
        self.class_counts[rec.cls.value] += 1
        if not (rec.gap_ok and rec.ratio_ok):
            self.violations.append(rec.graph6)
        expected = expected_equality(rec)
        if rec.equality_gap != expected or (rec.alpha and rec.equality_ratio != expected):
            self.mismatches.append(rec.graph6)
        if rec.equality_gap or rec.equality_ratio:
            self.equality.append(rec.graph6)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.mismatches

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "summary": True,
            "mode": self.mode,
            "total": self.total,
            "by_n": {str(k): v for k, v in sorted(self.by_n.items())},
            "class_counts": dict(sorted(self.class_counts.items())),
            "violations": sorted(self.violations),
            "mismatches": sorted(self.mismatches),
            "equality": sorted(self.equality),
            "ok": self.ok,
        }


def _evaluate_task(args: tuple[Graph, Mode]) -> GapRatioRecord:
    return evaluate(*args)


def evaluate_many(graphs: Iterable[Graph], mode: Mode | None = None, jobs: int = 1):
    """Records in input order; ``jobs > 1`` spreads the work over processes."""
    tasks = ((g, mode) for g in graphs)
    if jobs <= 1:
        yield from map(_evaluate_task, tasks)
        return
    with multiprocessing.Pool(jobs) as pool:
        yield from pool.imap(_evaluate_task, tasks, chunksize=256)


def verify_corpus(graphs: Iterable[Graph], mode: Mode, jobs: int = 1,
                  on_record: Callable[[GapRatioRecord], None] | None = None) -> VerificationReport:
    """Check every graph against the bounds and equality characterization of ``mode``.

    In union mode edgeless graphs are skipped, since the ratio is undefined.
    """
    if mode == "union":
        graphs = (g for g in graphs if g.m)
    report = VerificationReport(mode)
    for rec in evaluate_many(graphs, mode, jobs):
        report.add(rec)
        if on_record is not None:
            on_record(rec)
    return report
