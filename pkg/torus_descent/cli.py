"""``torus-descent`` command line: JSON on stdout, one-line errors on stderr.

Exit codes: 0 success or true, 1 a valid query answered false, 2 usage or input error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional

from tqdm import tqdm

from . import descent, repcheck
from .load_config import active_config, load_config, use_config
from .modeling.rootsys import TypeLabel, build_root_system, weight_lattice
from .modeling.subsys import enumerate_all, full_subsystem, maximal_subsystems
from .utils.intlat import ALPHA, OMEGA, WeightVec, hnf, torsion_quotient
from .utils.misc import OrbitOverflowError, canonical_json, parse_index_set, parse_vector, parse_vector_list

SCHEMA_VERSION = 1
_METHOD_NAMES = {"recursive": "recursive", "direct": "direct", "closed": "closed_form"}


class UsageError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandResult:
    exit_code: int
    payload: Optional[dict] = None
    error: Optional[str] = None

    def render(self) -> str:
        return canonical_json(self.payload) if self.payload is not None else ""


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="torus-descent", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="YAML configuration file")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("lattice", help="descent lattice in alpha-coordinates")
    p.add_argument("--type", required=True)
    p.add_argument("--method", choices=sorted(_METHOD_NAMES), default="recursive")

    p = commands.add_parser("descends", help="does L_P(lambda) descend to the torus quotient")
    p.add_argument("--type", required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated; use --lambda=-1,2 for negatives")
    p.add_argument("--parabolic", default="", help="1-based simple roots of the Levi factor")
    p.add_argument("--alpha", action="store_true", help="--lambda is in alpha-coordinates")
    p.add_argument("--witness", action="store_true", help="report a subsystem that rules lambda out")

    p = commands.add_parser("verify", help="cross-check the three computations of L")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--type")
    target.add_argument("--all", action="store_true")

    p = commands.add_parser("subsystems", help="closed full-rank subsystems")
    p.add_argument("--type", required=True)
    p.add_argument("--maximal", action="store_true")

    p = commands.add_parser("torsion", help="invariant factors of the weight lattice modulo a root span")
    p.add_argument("--type", required=True)
    p.add_argument("--sub", required=True, help="roots in alpha-coordinates, e.g. 1,0;0,2")

    p = commands.add_parser("multiplicity", help="weight multiplicity in V(lambda)")
    p.add_argument("--type", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)

    p = commands.add_parser("exponent", help="exponent of Q/L, or least descending multiple of lambda")
    p.add_argument("--type", required=True)
    p.add_argument("--lambda", dest="lam")
    return parser


def _envelope(label, command: str, **fields) -> dict:
    return {"type": str(label), "command": command, "schema_version": SCHEMA_VERSION, **fields}


def _lattice(args) -> CommandResult:
    result = descent.descent_lattice(args.type, _METHOD_NAMES[args.method])
    body = result.to_json()
    body.pop("type")
    return CommandResult(0, _envelope(result.type, "lattice", **body))


def _descends(args) -> CommandResult:
    label = TypeLabel.parse(args.type)
    coords = parse_vector(args.lam)
    weight = WeightVec(coords, ALPHA if args.alpha else OMEGA)
    report = descent.descends(label, weight, parse_index_set(args.parabolic))
    body = report.to_json()
    body.pop("type")
    if args.witness:
        # an overflow drops the witness, never the answer
        try:
            witness = descent.descent_witness(label, weight)
        except OrbitOverflowError as e:
            logging.warning(str(e))
            witness = None
            body["witness_error"] = str(e)
        body["witness"] = None if witness is None else {
            "subsystem": witness[0].to_json(),
            "translate_omega": list(witness[1].coords),
        }
    return CommandResult(0 if report.descends else 1, _envelope(label, "descends", **body))


def _verify(args) -> CommandResult:
    if not args.all:
        equal, report = descent.verify_type(args.type)
        report.pop("type")
        return CommandResult(0 if equal else 1, _envelope(TypeLabel.parse(args.type), "verify", **report))
    reports = []
    for name in tqdm(active_config().verify_types, desc="verify", file=sys.stderr):
        equal, report = descent.verify_type(name)
        reports.append(report)
    all_equal = all(r["equal"] for r in reports)
    return CommandResult(0 if all_equal else 1, _envelope("all", "verify", equal=all_equal, results=reports))


def _subsystems(args) -> CommandResult:
    label = TypeLabel.parse(args.type)
    subs = maximal_subsystems(full_subsystem(label)) if args.maximal else enumerate_all(label)
    return CommandResult(
        0, _envelope(label, "subsystems", maximal=args.maximal, subsystems=[s.to_json() for s in subs])
    )


def _torsion(args) -> CommandResult:
    label = TypeLabel.parse(args.type)
    system = build_root_system(label)
    roots = parse_vector_list(args.sub)
    for r in roots:
        if len(r) != label.rank:
            raise ValueError(f"root {list(r)} has length {len(r)}, expected {label.rank}")
    # omega-coordinates of the given alpha-vectors
    sub = hnf([system.to_omega(WeightVec(r, ALPHA)).coords for r in roots], label.rank, OMEGA)
    profile = torsion_quotient(weight_lattice(system, OMEGA), sub)
    return CommandResult(0, _envelope(label, "torsion", **profile.to_json()))


def _multiplicity(args) -> CommandResult:
    label = TypeLabel.parse(args.type)
    lam, mu = parse_vector(args.lam), parse_vector(args.mu)
    m = repcheck.weight_multiplicity(label, lam, mu)
    return CommandResult(0, _envelope(label, "multiplicity", highest_weight=list(lam), weight=list(mu), multiplicity=m))


def _exponent(args) -> CommandResult:
    label = TypeLabel.parse(args.type)
    if args.lam is None:
        return CommandResult(0, _envelope(label, "exponent", exponent=descent.quotient_exponent(label)))
    lam = parse_vector(args.lam)
    n = descent.minimal_descending_multiple(label, lam)
    return CommandResult(0, _envelope(label, "exponent", lambda_omega=list(lam), multiple=n))


_COMMANDS = {
    "lattice": _lattice,
    "descends": _descends,
    "verify": _verify,
    "subsystems": _subsystems,
    "torsion": _torsion,
    "multiplicity": _multiplicity,
    "exponent": _exponent,
}


def run(argv: List[str]) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        config = load_config(args.config) if args.config else None
        with use_config(config) as active:
            level = "DEBUG" if args.verbose else active.log_level
            logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(message)s")
            return _COMMANDS[args.command](args)
    except (ValueError, OSError, OrbitOverflowError) as e:
        return CommandResult(2, error=str(e).splitlines()[0] if str(e) else type(e).__name__)


def main():
    result = run(sys.argv[1:])
    if result.payload is not None:
        print(result.render())
    if result.error is not None:
        print(f"error: {result.error}", file=sys.stderr)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
