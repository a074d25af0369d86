"""Recompute every published numeric result and compare it with the stored value."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from . import reference_values as ref
from .core import Btu, cage, count_nonisomorphic, gf2_rank, girth, is_isomorphic, psi
from .cycle_index import CycleIndexPoly, CycleType, cap, named_poly, z_cyclic, z_dihedral, z_symmetric
from .partitions import Partition, count_p2, enumerate_p2
from .permutations import (
    Permutation,
    classical_count,
    enumerate_compatible_with_partition,
    published_f_beta,
)

GROUPS = (
    "e-table",
    "p2-table",
    "canonical-forms",
    "isomorphism",
    "partition-identity",
    "rank",
    "girth",
    "cycle-index",
    "f-beta-corollary",
)


@dataclass
class ReportRow:
    group: str
    item: str
    expected: str
    computed: str
    passed: bool


@dataclass
class Report:
    rows: list[ReportRow] = field(default_factory=list)
    divergences: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rows": [asdict(row) for row in self.rows],
            "divergences": self.divergences,
        }

    def to_text(self) -> str:
        width = max((len(r.item) for r in self.rows), default=10)
        lines = [f"{'group':<18} {'item':<{width}}  {'expected':>10} {'computed':>10}  result"]
        for r in self.rows:
            verdict = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.group:<18} {r.item:<{width}}  {r.expected:>10} {r.computed:>10}  {verdict}")
        if self.divergences:
            lines.append("")
            lines.append("Divergence appendix")
            for d in self.divergences:
                lines.append("  " + "; ".join(f"{k}={v}" for k, v in d.items()))
        lines.append("")
        lines.append("ALL PASS" if self.ok else "FAILURES PRESENT")
        return "\n".join(lines)


def _poly_from_table(n: int, table: dict) -> CycleIndexPoly:
    return CycleIndexPoly(n, {CycleType(k): Fraction(*v) for k, v in table.items()})


def _e_table(report: Report) -> None:
    for (m, r), expected in ref.E_TABLE.items():
        got = count_nonisomorphic(m, r)
        report.rows.append(ReportRow("e-table", f"E({m},{r})", str(expected), str(got), got == expected))


def _p2_table(report: Report) -> None:
    for m, listed in ref.P2_TABLE.items():
        expected = sorted(Partition(p) for p in listed)
        got = sorted(enumerate_p2(m))
        report.rows.append(
            ReportRow("p2-table", f"P2({m})", str(len(expected)), str(len(got)), expected == got)
        )
    for m, listed in ref.P2_TABLE_ERRANT.items():
        listed_set = {Partition(p) for p in listed}
        got = set(enumerate_p2(m))
        report.divergences.append({
            "topic": f"P2({m}) listing",
            "listed": len(listed),
            "distinct_listed": len(listed_set),
            "computed": len(got),
            "missing_from_listing": " ".join(str(p) for p in sorted(got - listed_set)),
        })


def _canonical_forms(report: Report) -> None:
    built = {}
    for parts, printed in ref.PRINTED_PSI.items():
        beta = Partition(parts)
        g = psi(beta)
        built[beta] = g
        ok = is_isomorphic(g, Btu.from_matrix(printed))
        report.rows.append(ReportRow("canonical-forms", f"Psi({beta}) ~ printed", "iso", "iso" if ok else "not", ok))
    distinct = all(not is_isomorphic(a, b) for a, b in combinations(built.values(), 2))
    report.rows.append(
        ReportRow("canonical-forms", "four (6,2) forms pairwise non-iso", "yes", "yes" if distinct else "no", distinct)
    )


def _isomorphism(report: Report) -> None:
    a, b = (Btu.from_matrix(x) for x in ref.ISOMORPHIC_PAIR)
    ok = is_isomorphic(a, b)
    report.rows.append(ReportRow("isomorphism", "equivalent pair", "iso", "iso" if ok else "not", ok))
    a, b = (Btu.from_matrix(x) for x in ref.NONISOMORPHIC_PAIR)
    ok = not is_isomorphic(a, b)
    report.rows.append(ReportRow("isomorphism", "inequivalent pair", "not", "not" if ok else "iso", ok))


def _partition_identity(report: Report) -> None:
    ok = all(count_p2(m) == len(enumerate_p2(m)) for m in range(2, 31))
    report.rows.append(ReportRow("partition-identity", "|P2(m)| = p(m)-p(m-1), m<=30", "holds", "holds" if ok else "fails", ok))
    got = count_p2(6)
    report.rows.append(ReportRow("partition-identity", "E(6,2) = p(6)-p(5)", "4", str(got), got == 4))


def _rank(report: Report) -> None:
    ok = all(gf2_rank(psi(b)) == m - len(b) for m in range(2, 13) for b in enumerate_p2(m))
    report.rows.append(ReportRow("rank", "rank Psi(beta) = m-k, m<=12", "holds", "holds" if ok else "fails", ok))


def _girth(report: Report) -> None:
    for m in range(2, 9):
        got = girth(psi(Partition([m])))
        report.rows.append(ReportRow("girth", f"max girth ({m},2)", str(2 * m), str(got), got == 2 * m))
    ok = all(girth(cage(g)) == g for g in range(4, 17, 2))
    report.rows.append(ReportRow("girth", "girth(cage(g)) = g, g<=16", "holds", "holds" if ok else "fails", ok))


def _cycle_index(report: Report) -> None:
    for label, built, table in (
        ("Z(S3)", z_symmetric(3), ref.Z_S3),
        ("Z(C3)", z_cyclic(3), ref.Z_C3),
        ("Z(D3)", z_dihedral(3), ref.Z_D3),
        ("Z(D5)", z_dihedral(5), ref.Z_D5),
    ):
        expected = _poly_from_table(built.n, table)
        report.rows.append(
            ReportRow("cycle-index", label, "printed", "match" if built == expected else "differs", built == expected)
        )
    for name, expected in ref.CAP_VALUES.items():
        poly = named_poly(name)
        got = cap([poly, poly])
        report.rows.append(ReportRow("cycle-index", f"cap {name} x2", str(expected), str(got), got == expected))


def _f_beta(report: Report) -> None:
    for m in range(2, 7):
        identity = Permutation.identity(m)
        for beta in enumerate_p2(m):
            brute = len(enumerate_compatible_with_partition(identity, beta))
            formula = published_f_beta(m, 2, beta)
            if beta.parts == (m,):
                report.rows.append(
                    ReportRow("f-beta-corollary", f"f(({m})) = ({m}-1)!", str(formula), str(brute), formula == brute)
                )
            elif formula != brute:
                report.divergences.append({
                    "topic": "general f(beta) formula",
                    "m": m,
                    "beta": str(beta),
                    "formula": str(formula),
                    "exhaustive": brute,
                    "classical": classical_count(beta),
                })


_BUILDERS = {
    "e-table": _e_table,
    "p2-table": _p2_table,
    "canonical-forms": _canonical_forms,
    "isomorphism": _isomorphism,
    "partition-identity": _partition_identity,
    "rank": _rank,
    "girth": _girth,
    "cycle-index": _cycle_index,
    "f-beta-corollary": _f_beta,
}


def build_report(only: list[str] | None = None) -> Report:
    report = Report()
    for group in only or GROUPS:
        _BUILDERS[group](report)
    return report
