"""Command-line interface: one subcommand per operation, text or JSON output.

Exit codes: 0 ok, 2 usage, 3 domain error, 4 resource limit, 5 not found,
6 a ``reproduce`` row failed.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import signal
import sys
from dataclasses import dataclass
from typing import Any, Callable, TextIO

from . import core, cycle_index, permutations, phi
from .core import Btu
from .errors import DomainError, NotFoundError, ResourceError
from .partitions import Partition, count_p2, count_unrestricted, enumerate_p2
from .permutations import Permutation, PermutationRep
from .reproduce import GROUPS, build_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_RESOURCE = 4
EXIT_NOT_FOUND = 5
EXIT_REPRODUCE_FAIL = 6

DEFAULT_TIMEOUT_SECS = 60
THREADS_ENV = "BTU_THREADS"

EXIT_CODES = {
    "ok": EXIT_OK,
    "usage-error": EXIT_USAGE,
    "domain-error": EXIT_DOMAIN,
    "resource-error": EXIT_RESOURCE,
    "not-found": EXIT_NOT_FOUND,
    "reproduce-fail": EXIT_REPRODUCE_FAIL,
}


@dataclass
class CommandResult:
    status: str
    payload: Any = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


class _Failed(Exception):
    """Carries a non-ok result that still has a payload to print (reproduce)."""

    def __init__(self, status: str, payload: Any, text: str):
        super().__init__(status)
        self.status = status
        self.payload = payload
        self.text = text


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


# --------------------------------------------------------------------------
# input helpers


def _split_matrices(text: str) -> list[Btu]:
    text = text.strip()
    if not text:
        return []
    if text[0] in "[{":
        obj = json.loads(text)
        return [Btu.from_json(o) for o in (obj if isinstance(obj, list) else [obj])]
    lines = [ln for ln in text.splitlines() if ln.strip()]
    out = []
    while lines:
        m = int(lines[0].split()[0])
        out.append(Btu.parse("\n".join(lines[: m + 1])))
        lines = lines[m + 1 :]
    return out


def _matrices(args, stdin: TextIO) -> list[Btu]:
    found = [core.psi(Partition.parse(b)) for b in args.beta or []]
    for path in args.file or []:
        with open(path) as fh:
            found += _split_matrices(fh.read())
    if not found:
        found = _split_matrices(stdin.read())
    if not found:
        raise DomainError("no matrix given (use --beta, --file or stdin)")
    return found


def _one_matrix(args, stdin) -> Btu:
    return _matrices(args, stdin)[0]


def _rep(args, stdin) -> PermutationRep:
    if args.perm:
        return PermutationRep(Permutation.parse(p) for p in args.perm)
    return PermutationRep.parse(stdin.read())


def _spec(text: str) -> phi.PhiSpec:
    return phi.PhiSpec.parse(text)


def _girth_value(g):
    return "inf" if g == core.INFINITE_GIRTH else g


def _check_m(m: int, args) -> None:
    if m > args.max_m:
        raise ResourceError(f"m={m} exceeds --max-m {args.max_m}")


# --------------------------------------------------------------------------
# handlers return (json_payload, text)


def cmd_p2(args, stdin):
    if args.count:
        payload = {
            "m": args.m,
            "count_p2": count_p2(args.m),
            "p_m": count_unrestricted(args.m),
            "p_m_minus_1": count_unrestricted(args.m - 1),
        }
        return payload, str(payload["count_p2"])
    parts = enumerate_p2(args.m)
    return [p.to_json() for p in parts], "\n".join(str(p) for p in parts)


def cmd_psi(args, stdin):
    g = core.psi(Partition.parse(args.beta_value))
    return g.to_json(), g.to_text()


def cmd_girth(args, stdin):
    value = _girth_value(core.girth(_one_matrix(args, stdin)))
    return value, str(value)


def cmd_rank(args, stdin):
    value = core.gf2_rank(_one_matrix(args, stdin))
    return value, str(value)


def cmd_complement(args, stdin):
    g = core.complement(_one_matrix(args, stdin))
    return g.to_json(), g.to_text()


def cmd_iso(args, stdin):
    mats = _matrices(args, stdin)
    if len(mats) != 2:
        raise DomainError(f"iso needs exactly two matrices, got {len(mats)}")
    value = core.is_isomorphic(*mats)
    return value, "true" if value else "false"


def cmd_canon(args, stdin):
    g = _one_matrix(args, stdin)
    key = core.canonical_key(g)
    payload = {"key": key.hex()}
    text = key.hex()
    if args.form:
        form = Btu(key.rows, g.m)
        payload["form"] = form.to_json()
        text += "\n" + form.to_text()
    return payload, text


def cmd_enumerate(args, stdin):
    if args.r > 2:
        _check_m(args.m, args)
    mats = core.enumerate_nonisomorphic(args.m, args.r, max_m=args.max_m)
    return [g.to_json() for g in mats], "\n\n".join(g.to_text() for g in mats)


def cmd_count(args, stdin):
    if args.r > 2:
        _check_m(args.m, args)
    value = core.count_nonisomorphic(args.m, args.r, max_m=args.max_m)
    return value, str(value)


def cmd_cycles(args, stdin):
    if args.known:
        if not args.beta:
            raise DomainError("--known needs --beta")
        lengths = core.known_cycle_lengths(Partition.parse(args.beta[0]))
        return lengths, " ".join(str(x) for x in lengths)
    g = _one_matrix(args, stdin)
    limit = args.max_len if args.max_len is not None else 2 * g.m
    cycles = core.enumerate_cycles(g, limit)
    payload = [list(c) for c in cycles]
    text = "\n".join(
        f"{len(c)}: " + " ".join(("CN" if k % 2 == 0 else "VN") + str(v) for k, v in enumerate(c))
        for c in cycles
    )
    return payload, text


def cmd_cage(args, stdin):
    g = core.cage(args.girth)
    return g.to_json(), g.to_text()


def cmd_compat(args, stdin):
    existing = [Permutation.parse(p) for p in args.existing or []]
    if not existing:
        if args.m is None:
            raise DomainError("compat needs --m or --existing")
        existing = [Permutation.identity(args.m)]
    if args.m is not None and existing[0].m != args.m:
        raise DomainError("--m disagrees with --existing")
    m = existing[0].m
    if args.beta_value:
        if len(existing) != 1:
            raise DomainError("--beta filters against a single --existing permutation")
        perms = permutations.enumerate_compatible_with_partition(
            existing[0], Partition.parse(args.beta_value), ordered=args.ordered
        )
    elif args.check:
        if len(existing) != 2:
            raise DomainError("--check needs exactly two --existing permutations")
        value = permutations.is_compatible(*existing)
        return value, "true" if value else "false"
    else:
        perms = permutations.enumerate_compatible(existing, m)
    if args.count_only:
        return len(perms), str(len(perms))
    return [list(p.images) for p in perms], "\n".join(str(p) for p in perms)


def cmd_beta(args, stdin):
    a, b = Permutation.parse(args.a), Permutation.parse(args.b)
    if args.profile:
        prof = permutations.spt_successor_profile(a, b)
        payload = {
            "actual": list(prof.actual),
            "predicted": list(prof.predicted),
            "delta": list(prof.delta),
            "agrees": prof.agrees,
        }
        text = "\n".join(f"{k}: {v}" for k, v in payload.items())
        return payload, text
    fn = permutations.beta_by_traversal if args.traversal else permutations.beta_of
    beta = fn(a, b)
    return beta.to_json(), str(beta)


def cmd_fbeta(args, stdin):
    beta = Partition.parse(args.beta_value)
    value = permutations.published_f_beta(args.m, args.r, beta)
    payload = {"formula": value if isinstance(value, int) else str(value), "classical": permutations.classical_count(beta)}
    return payload, f"formula {value}\nclassical {payload['classical']}"


def cmd_phi_build(args, stdin):
    rep = phi.build_phi_member(_spec(args.spec), seed=args.seed)
    g = permutations.to_btu(rep)
    return {"rep": rep.to_json(), "btu": g.to_json()}, rep.to_text() + "\n\n" + g.to_text()


def cmd_phi_enum(args, stdin):
    spec = _spec(args.spec)
    _check_m(spec.m, args)
    result = phi.enumerate_phi(spec, limit=args.limit, max_m=args.max_m)
    payload = {"members": [rep.to_json() for rep in result], "truncated": result.truncated}
    text = "\n\n".join(rep.to_text() for rep in result)
    if result.truncated:
        text += "\n\n# truncated"
    return payload, text


def cmd_phi_count(args, stdin):
    spec = _spec(args.spec)
    _check_m(spec.m, args)
    value = phi.count_nonisomorphic_in_phi(spec, max_m=args.max_m)
    return value, str(value)


def cmd_profile(args, stdin):
    rep = _rep(args, stdin)
    prof = phi.partition_profile(rep)
    four = phi.has_4cycle(rep)
    payload = {
        "profile": [{"pair": list(k), "beta": v.to_json()} for k, v in prof.items()],
        "has_4cycle": four,
    }
    lines = [f"{i} {j}: {b}" for (i, j), b in prof.items()]
    lines.append(f"4-cycle: {'yes' if four else 'no'}")
    if args.matrix:
        g = permutations.to_btu(rep)
        payload["btu"] = g.to_json()
        lines += ["", g.to_text()]
    return payload, "\n".join(lines)


def cmd_decompose(args, stdin):
    rep = permutations.decompose(_one_matrix(args, stdin))
    return rep.to_json(), rep.to_text()


def cmd_spt(args, stdin):
    value = permutations.spt_node_count(args.m, args.depth)
    return value, str(value)


def cmd_zindex(args, stdin):
    if args.h:
        ctype = cycle_index.CycleType(int(t) for t in args.h.replace(",", " ").split())
        value = cycle_index.h_count(ctype)
        return value, str(value)
    if not args.poly:
        raise DomainError("zindex needs --poly or --h")
    poly = cycle_index.named_poly(args.poly)
    return poly.to_json(), str(poly)


def cmd_cap(args, stdin):
    value = cycle_index.cap([cycle_index.named_poly(p) for p in args.poly])
    return str(value), str(value)


def cmd_cup(args, stdin):
    poly = cycle_index.cup([cycle_index.named_poly(p) for p in args.poly])
    return poly.to_json(), str(poly)


def cmd_zpsi(args, stdin):
    poly = cycle_index.z_automorphism_of_psi(Partition.parse(args.beta_value))
    return poly.to_json(), str(poly)


def cmd_bound(args, stdin):
    value = cycle_index.upper_bound_phi(_spec(args.spec))
    return str(value), str(value)


def cmd_reproduce(args, stdin):
    report = build_report(args.only)
    payload = report.to_json()
    text = report.to_text()
    if not report.ok:
        raise _Failed("reproduce-fail", payload, text)
    return payload, text


# library operation -> subcommand that reaches it
OPERATION_COMMANDS = {
    "enumerate_p2": "p2",
    "count_unrestricted": "p2",
    "count_p2": "p2",
    "psi": "psi",
    "girth": "girth",
    "known_cycle_lengths": "cycles",
    "gf2_rank": "rank",
    "complement": "complement",
    "is_isomorphic": "iso",
    "canonical_key": "canon",
    "canonical_form": "canon",
    "enumerate_nonisomorphic": "enumerate",
    "count_nonisomorphic": "count",
    "enumerate_cycles": "cycles",
    "cage": "cage",
    "is_compatible": "compat",
    "to_btu": "profile",
    "decompose": "decompose",
    "beta_of": "beta",
    "beta_by_traversal": "beta",
    "enumerate_compatible": "compat",
    "enumerate_compatible_with_partition": "compat",
    "published_f_beta": "fbeta",
    "spt_node_count": "spt",
    "spt_successor_profile": "beta",
    "build_phi_member": "phi-build",
    "enumerate_phi": "phi-enum",
    "count_nonisomorphic_in_phi": "phi-count",
    "partition_profile": "profile",
    "has_4cycle": "profile",
    "z_symmetric": "zindex",
    "z_cyclic": "zindex",
    "z_dihedral": "zindex",
    "h_count": "zindex",
    "cap": "cap",
    "cup": "cup",
    "z_automorphism_of_psi": "zpsi",
    "upper_bound_phi": "bound",
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker cap (default ${THREADS_ENV} or 1); output is identical at any value")
    common.add_argument("--max-m", type=int, default=core.BRUTE_FORCE_MAX_M,
                        help="largest m for brute-force searches (default %(default)s)")
    common.add_argument("--timeout-secs", type=float, default=DEFAULT_TIMEOUT_SECS,
                        help="abort with a resource error after this many seconds (default %(default)s)")

    parser = _Parser(prog="btu", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=handler)
        return p

    def matrix_inputs(p):
        p.add_argument("--beta", action="append", help="use Psi(beta) as input (repeatable)")
        p.add_argument("--file", action="append", help="read matrices from a file (repeatable)")

    p = add("p2", cmd_p2, "list P2(m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print |P2(m)| = p(m) - p(m-1)")

    p = add("psi", cmd_psi, "canonical (m,2) BTU for a partition")
    p.add_argument("--beta", dest="beta_value", required=True)

    for name, handler, text in (
        ("girth", cmd_girth, "shortest cycle length"),
        ("rank", cmd_rank, "GF(2) rank"),
        ("complement", cmd_complement, "flip every bit"),
        ("iso", cmd_iso, "test two matrices for isomorphism"),
        ("decompose", cmd_decompose, "split into compatible permutations"),
    ):
        matrix_inputs(add(name, handler, text))

    p = add("canon", cmd_canon, "canonical key (hex)")
    matrix_inputs(p)
    p.add_argument("--form", action="store_true", help="also print the canonical matrix")

    for name, handler, text in (
        ("enumerate", cmd_enumerate, "one BTU per isomorphism class"),
        ("count", cmd_count, "E(m, r)"),
    ):
        p = add(name, handler, text)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--r", type=int, required=True)

    p = add("cycles", cmd_cycles, "simple cycles up to a length")
    matrix_inputs(p)
    p.add_argument("--max-len", type=int, default=None, help="default 2m")
    p.add_argument("--known", action="store_true", help="cycle lengths predicted for Psi(beta)")

    p = add("cage", cmd_cage, "(2, g)-cage")
    p.add_argument("--girth", type=int, required=True)

    p = add("compat", cmd_compat, "compatible permutations")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--existing", action="append", help="permutation as '2 3 1' (repeatable); default identity")
    p.add_argument("--beta", dest="beta_value", default=None, help="keep only q with this partition")
    p.add_argument("--ordered", action="store_true", help="with --beta: only q after the existing one")
    p.add_argument("--check", action="store_true", help="test two --existing for compatibility")
    p.add_argument("--count", dest="count_only", action="store_true")

    p = add("beta", cmd_beta, "partition between two compatible permutations")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--traversal", action="store_true", help="use the label-traversal implementation")
    p.add_argument("--profile", action="store_true", help="successor-count diagnostic along b")

    p = add("fbeta", cmd_fbeta, "published f(beta) formula next to the classical count")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--beta", dest="beta_value", required=True)

    p = add("spt", cmd_spt, "node count of the symmetric permutation tree")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)

    p = add("phi-build", cmd_phi_build, "one seeded member of a Phi family")
    p.add_argument("--spec", required=True, help="e.g. 'm=6; betas=(3,3)|(2,2,2)'")
    p.add_argument("--seed", type=int, default=0)

    p = add("phi-enum", cmd_phi_enum, "all members of a Phi family")
    p.add_argument("--spec", required=True)
    p.add_argument("--limit", type=int, default=None)

    p = add("phi-count", cmd_phi_count, "isomorphism classes inside a Phi family")
    p.add_argument("--spec", required=True)

    p = add("profile", cmd_profile, "pairwise partitions and 4-cycle test of a representation")
    p.add_argument("--perm", action="append", help="permutation (repeatable); default: stdin 'm r' + r lines")
    p.add_argument("--matrix", action="store_true", help="also print the BTU")

    p = add("zindex", cmd_zindex, "cycle index of S_n, C_n or D_n, or h(j)")
    p.add_argument("--poly", help="symmetric:n | cyclic:n | dihedral:n")
    p.add_argument("--h", help="cycle type j_1,...,j_n for h(j)")

    for name, handler, text in (("cap", cmd_cap, "superposition count"), ("cup", cmd_cup, "superposition polynomial")):
        p = add(name, handler, text)
        p.add_argument("--poly", action="append", required=True)

    p = add("zpsi", cmd_zpsi, "cycle index of Aut(Psi(beta)) on VN labels")
    p.add_argument("--beta", dest="beta_value", required=True)

    p = add("bound", cmd_bound, "upper bound on classes in a Phi family")
    p.add_argument("--spec", required=True)

    p = add("reproduce", cmd_reproduce, "recompute every published value")
    p.add_argument("--only", action="append", choices=GROUPS)
    return parser


@contextlib.contextmanager
def _deadline(seconds: float | None):
    if not seconds or seconds <= 0 or not hasattr(signal, "SIGALRM"):
        yield
        return

    def expire(signum, frame):
        raise ResourceError(f"timed out after {seconds} s")

    previous = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def _emit(out: TextIO, args, payload, text) -> None:
    if args.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif text:
        out.write(text + "\n")


def run(
    argv: list[str],
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> CommandResult:
    stdin = stdin if stdin is not None else io.StringIO("")
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"{exc}\n")
        return CommandResult("usage-error")
    except SystemExit as exc:  # --help
        return CommandResult("ok" if not exc.code else "usage-error")
    if args.threads is None:
        raw = os.environ.get(THREADS_ENV, "") or "1"
        args.threads = int(raw) if raw.strip().isdigit() else 0
    if args.threads < 1:
        stderr.write(f"btu: error: --threads / ${THREADS_ENV} must be a positive integer\n")
        return CommandResult("usage-error")

    try:
        with _deadline(args.timeout_secs):
            payload, text = args.handler(args, stdin)
    except _Failed as exc:
        _emit(stdout, args, exc.payload, exc.text)
        return CommandResult(exc.status, exc.payload)
    except NotFoundError as exc:
        stderr.write(f"not found: {exc}\n")
        return CommandResult("not-found")
    except ResourceError as exc:
        stderr.write(f"resource error: {exc}\n")
        return CommandResult("resource-error")
    except (DomainError, ValueError, KeyError) as exc:
        stderr.write(f"domain error: {exc}\n")
        return CommandResult("domain-error")
    _emit(stdout, args, payload, text)
    return CommandResult("ok", payload)


def main(argv: list[str] | None = None) -> None:
    result = run(sys.argv[1:] if argv is None else argv, stdin=sys.stdin)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
