"""Command-line driver: single-point spectra, parameter scans, secular
roots, wavefunction export, and the verification suite.

Output is deterministic CSV (LF endings, ``.`` decimal point, shortest
round-trip float format) or JSON.  Exit codes: 0 success, 1 failed
verification, 2 bad flags (argparse), 3 sector violation under --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import verify as verify_mod
from .model import (
    IRREGULAR,
    REGULAR,
    PhysicalParams,
    QuantumState,
    SectorError,
    decompose_flux,
    is_singular_sector,
)
from .secular import (
    ExtensionParam,
    KummerParams,
    energy_from_kappa,
    normalizable_coefficients,
    solve_secular,
)
from .spectrum import closed_form_energy
from .wavefunction import build_profile

__all__ = ["main", "ScanSpec", "ScanRow"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_SECTOR = 3

CSV_HEADER = "scan_var,scan_value,n,m,s,branch,energy,kappa,exists"
SCAN_VARIABLES = ("flux", "omega", "m")


@dataclass(frozen=True)
class ScanSpec:
    variable: str
    start: float
    stop: float
    steps: int
    fixed: dict

    def __post_init__(self) -> None:
        if self.variable not in SCAN_VARIABLES:
            raise ValueError(f"scan variable must be one of {SCAN_VARIABLES}")
        if not (self.start < self.stop):
            raise ValueError(f"need start < stop, got {self.start} >= {self.stop}")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if self.variable == "m":
            if self.start != int(self.start) or self.stop != int(self.stop):
                raise ValueError("m scans need integer endpoints")
            span = int(self.stop) - int(self.start)
            if span % (self.steps - 1) != 0:
                raise ValueError("m scans need an integer stride")

    def values(self) -> list[float]:
        if self.variable == "m":
            stride = (int(self.stop) - int(self.start)) // (self.steps - 1)
            return [float(int(self.start) + stride * i) for i in range(self.steps)]
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]


@dataclass(frozen=True)
class ScanRow:
    scan_var: str
    scan_value: float
    n: int
    m: int
    s: int
    branch: str
    energy: float
    kappa: float
    exists: bool

    def csv(self) -> str:
        return (
            f"{self.scan_var},{self.scan_value!r},{self.n},{self.m},{self.s},"
            f"{self.branch},{self.energy!r},{self.kappa!r},"
            f"{'true' if self.exists else 'false'}"
        )

    def as_dict(self) -> dict:
        return {
            "scan_var": self.scan_var,
            "scan_value": self.scan_value,
            "n": self.n,
            "m": self.m,
            "s": self.s,
            "branch": self.branch,
            "energy": self.energy,
            "kappa": self.kappa,
            "exists": self.exists,
        }


def _parse_int_list(text: str) -> list[int]:
    """Comma-separated integers with a..b range expansion, e.g. '-5..-1,3'."""
    values: list[int] = []
    for piece in text.split(","):
        piece = piece.strip()
        if ".." in piece:
            lo_text, hi_text = piece.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {piece!r}")
            values.extend(range(lo, hi + 1))
        elif piece:
            values.append(int(piece))
    if not values:
        raise argparse.ArgumentTypeError(f"no integers in {text!r}")
    return values


def _parse_spins(text: str) -> list[int]:
    spins = _parse_int_list(text)
    if any(s not in (1, -1) for s in spins):
        raise argparse.ArgumentTypeError("spin entries must be +1 or -1")
    return spins


def _parse_lambda(text: str) -> ExtensionParam:
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return ExtensionParam(math.inf)
    return ExtensionParam(float(text))


def _parse_scan(text: str) -> ScanSpec:
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("scan spec must be var:start:stop:steps")
    var, start, stop, steps = parts
    try:
        return ScanSpec(var, float(start), float(stop), int(steps), fixed={})
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_physics_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eta", type=float, default=1.0, help="Coulomb strength (default 1)")
    parser.add_argument("--omega", type=float, default=0.0, help="rotation frequency (default 0)")
    parser.add_argument("--mass", type=float, default=1.0, help="particle mass (default 1)")
    parser.add_argument("--hbar", type=float, default=1.0, help="hbar (default 1)")
    parser.add_argument("--flux", type=float, default=0.0, help="AB flux phi (default 0)")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="write to this path instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")


def _params(args: argparse.Namespace) -> PhysicalParams:
    return PhysicalParams(m_e=args.mass, hbar=args.hbar, eta=args.eta, omega=args.omega)


def _branches(choice: str) -> list[str]:
    return [REGULAR, IRREGULAR] if choice == "both" else [choice]


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


class SectorViolation(Exception):
    """Raised in strict mode when an irregular request leaves |j| < 1/2."""


def _evaluate_rows(
    scan_var: str,
    scan_value: float,
    params: PhysicalParams,
    phi: float,
    ns: list[int],
    ms: list[int],
    spins: list[int],
    branches: list[str],
    strict: bool,
    notes: set,
) -> list[ScanRow]:
    flux = decompose_flux(phi)
    rows = []
    for n in ns:
        for m in ms:
            for s in spins:
                for branch in branches:
                    if branch == IRREGULAR and not is_singular_sector(m + flux.phi):
                        if strict:
                            raise SectorViolation(
                                f"irregular state needs |j| < 1/2 but m + phi = "
                                f"{m + flux.phi} (m={m}, phi={flux.phi})"
                            )
                        notes.add(
                            f"note: irregular rows with |m + phi| >= 1/2 marked "
                            f"exists=false (first at m={m}, phi={flux.phi})"
                        )
                        rows.append(
                            ScanRow(
                                scan_var, scan_value, n, m, s, branch,
                                math.nan, math.nan, False,
                            )
                        )
                        continue
                    state = QuantumState(n=n, m=m, s=s, branch=branch)
                    res = closed_form_energy(state, params, flux)
                    rows.append(
                        ScanRow(
                            scan_var, scan_value, n, m, s, branch,
                            res.energy, res.kappa, res.exists,
                        )
                    )
    return rows


def _render_rows(rows: list[ScanRow], fmt: str) -> str:
    rows = sorted(rows, key=lambda r: (r.scan_value, r.n, r.m, r.s, r.branch))
    if fmt == "json":
        return json.dumps([r.as_dict() for r in rows], indent=2) + "\n"
    lines = [CSV_HEADER] + [r.csv() for r in rows]
    return "\n".join(lines) + "\n"


def _cmd_spectrum(args: argparse.Namespace) -> int:
    params = _params(args)
    notes: set = set()
    try:
        rows = _evaluate_rows(
            "flux", args.flux, params, args.flux,
            args.n, args.m, args.spin, _branches(args.branch),
            args.strict, notes,
        )
    except SectorViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SECTOR
    for note in sorted(notes):
        print(note, file=sys.stderr)
    _emit(_render_rows(rows, args.format), args.out)
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace) -> int:
    spec = replace(
        args.scan,
        fixed={
            "eta": args.eta, "omega": args.omega, "mass": args.mass,
            "hbar": args.hbar, "flux": args.flux, "n": args.n, "m": args.m,
            "spin": args.spin, "branch": args.branch,
        },
    )
    params = _params(args)
    notes: set = set()
    rows: list[ScanRow] = []
    try:
        for value in spec.values():
            phi = value if spec.variable == "flux" else args.flux
            point_params = params
            if spec.variable == "omega":
                point_params = PhysicalParams(
                    m_e=params.m_e, hbar=params.hbar, eta=params.eta, omega=value
                )
            ms = [int(value)] if spec.variable == "m" else args.m
            rows.extend(
                _evaluate_rows(
                    spec.variable, value, point_params, phi,
                    args.n, ms, args.spin, _branches(args.branch),
                    args.strict, notes,
                )
            )
    except SectorViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SECTOR
    for note in sorted(notes):
        print(note, file=sys.stderr)
    _emit(_render_rows(rows, args.format), args.out)
    return EXIT_OK


def _cmd_secular(args: argparse.Namespace) -> int:
    params = _params(args)
    j = args.j if args.j is not None else args.m[0] + args.flux
    if len(args.spin) != 1:
        print("error: secular energies need a single --spin", file=sys.stderr)
        return EXIT_USAGE
    s = args.spin[0]
    try:
        roots = solve_secular(args.lam, j, params, args.count)
    except SectorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SECTOR
    if args.format == "json":
        payload = [
            {
                "index": i,
                "kappa": r.kappa,
                "energy": energy_from_kappa(r.kappa, j, s, params),
                "residual": r.residual,
            }
            for i, r in enumerate(roots, start=1)
        ]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["index,kappa,energy,residual"]
        for i, r in enumerate(roots, start=1):
            energy = energy_from_kappa(r.kappa, j, s, params)
            lines.append(f"{i},{r.kappa!r},{energy!r},{r.residual!r}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_wavefunction(args: argparse.Namespace) -> int:
    params = _params(args)
    flux = decompose_flux(args.flux)
    m = args.m[0]
    j = m + flux.phi
    try:
        if args.lam is not None:
            roots = solve_secular(args.lam, j, params, args.root)
            kappa = roots[args.root - 1].kappa
            coeffs = normalizable_coefficients(KummerParams.for_state(kappa, j, params))
        else:
            state = QuantumState(n=args.n[0], m=m, s=args.spin[0], branch=args.branch)
            res = closed_form_energy(state, params, flux)
            kappa = res.kappa
            coeffs = normalizable_coefficients(KummerParams.for_state(kappa, j, params))
        profile = build_profile(coeffs, kappa, j, params, points=args.points)
    except SectorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SECTOR
    lines = ["r,F"] + [
        f"{r!r},{v!r}" for r, v in zip(profile.r.tolist(), profile.values.tolist())
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify_mod.run_checks(args.only or None)
    report = verify_mod.build_report(results)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    for check in report["checks"]:
        if not check["pass"]:
            print(
                f"FAIL {check['name']}: residual {check['residual']} "
                f"exceeds {check['tolerance']}",
                file=sys.stderr,
            )
    return EXIT_OK if report["pass"] else EXIT_VERIFY_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abcoulomb",
        description=(
            "Bound states of a spin-1/2 particle with AB flux, Coulomb "
            "attraction, and frame rotation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="closed-form energies at a single point")
    _add_physics_flags(sp)
    sp.add_argument("--n", type=_parse_int_list, default=[1])
    sp.add_argument("--m", type=_parse_int_list, default=[0])
    sp.add_argument("--spin", type=_parse_spins, default=[1])
    sp.add_argument("--branch", choices=(REGULAR, IRREGULAR, "both"), default=REGULAR)
    sp.add_argument("--strict", action="store_true")
    _add_output_flags(sp)
    sp.set_defaults(handler=_cmd_spectrum)

    sc = sub.add_parser("scan", help="sweep flux, omega, or m and emit rows")
    _add_physics_flags(sc)
    sc.add_argument("--scan", type=_parse_scan, required=True,
                    help="var:start:stop:steps with var in flux|omega|m")
    sc.add_argument("--n", type=_parse_int_list, default=[1])
    sc.add_argument("--m", type=_parse_int_list, default=[0])
    sc.add_argument("--spin", type=_parse_spins, default=[1])
    sc.add_argument("--branch", choices=(REGULAR, IRREGULAR, "both"), default=REGULAR)
    sc.add_argument("--strict", action="store_true")
    _add_output_flags(sc)
    sc.set_defaults(handler=_cmd_scan)

    se = sub.add_parser("secular", help="bound states of one extension parameter")
    _add_physics_flags(se)
    se.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True,
                    help="extension parameter (finite float or 'inf')")
    se.add_argument("--j", type=float, default=None,
                    help="effective angular momentum; default m + flux")
    se.add_argument("--m", type=_parse_int_list, default=[0])
    se.add_argument("--spin", type=_parse_spins, default=[1])
    se.add_argument("--count", type=int, default=3)
    _add_output_flags(se)
    se.set_defaults(handler=_cmd_secular)

    wv = sub.add_parser("wavefunction", help="export a radial profile as CSV (r,F)")
    _add_physics_flags(wv)
    wv.add_argument("--n", type=_parse_int_list, default=[1])
    wv.add_argument("--m", type=_parse_int_list, default=[0])
    wv.add_argument("--spin", type=_parse_spins, default=[1])
    wv.add_argument("--branch", choices=(REGULAR, IRREGULAR), default=REGULAR)
    wv.add_argument("--lambda", dest="lam", type=_parse_lambda, default=None,
                    help="build the state of this extension instead of a closed form")
    wv.add_argument("--root", type=int, default=1, help="which secular root (1-based)")
    wv.add_argument("--points", type=int, default=2000)
    _add_output_flags(wv)
    wv.set_defaults(handler=_cmd_wavefunction)

    vf = sub.add_parser("verify", help="run the invariant suite, emit a JSON report")
    vf.add_argument("--only", action="append", choices=tuple(verify_mod.GROUPS),
                    help="restrict to one check group (repeatable)")
    vf.add_argument("--out", default=None)
    vf.set_defaults(handler=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
