"""Command-line front end.

Four subcommands: `beta` tabulates the walk functionals, `spectrum`
dumps localized eigenvalue pairs, `verdict` emits a basis verdict as
JSON, and `verify` runs the built-in identity suite.  Configuration
merges three layers, later winning: built-in preset, --config JSON
file, command-line flags.  Outputs are byte-stable for identical
configs; rationals serialize as 'p/q' strings and complex values as
{re, im} objects."""

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

import mpmath

from .beta import (
    alpha_n,
    beta_equal_rs_leading_exact,
    beta_minus,
    beta_plus,
    beta_plus_leading_exact,
)
from .criteria import (
    DegenerateRatioError,
    IndexSet,
    VerdictThresholds,
    concordance_report,
    criterion1_verdict,
    prop20_verdict,
    theorem31_report,
    theorem5_report,
)
from .numerics import DEFAULT_PRECISION, GaussianRational, abs_value
from .potential import TwoTermParams, _scalar_from_json, parse_potential, potential_to_json
from .spectra import (
    BoundaryCondition,
    DirichletUniquenessError,
    LocalizationError,
    attach_dirichlet,
    assemble,
    eigenvalues,
    find_working_N,
    localize_pairs,
    spectrum_csv,
)
from .verify import run_verify
from .walks import WalkSingularityError

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_SINGULARITY = 2
EXIT_LOCALIZATION = 3
EXIT_CRITERIA = 4
EXIT_USAGE = 64


class UsageError(Exception):
    """Bad flags, bad config, or bad literals; exits with code 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# built-in configs; every headline run is one command
PRESETS = {
    "thm31": {
        "report": "ratio-collapse",
        "potential": {"a": "1", "b": "1", "R": 1, "S": 3},
        "bc": "per+",
        "m_range": [2, 6],
    },
    "thm5": {
        "report": "shifted-collapse",
        "potential": {"a": "1", "b": "1", "R": 1, "S": 3},
        "m_range": [2, 7],
    },
    "prop20": {
        "report": "equal-offsets",
        "potential": {"a": "1", "b": {"re": "0", "im": "1"}, "R": 2, "S": 2},
        "bc": "per-",
    },
    "crit-compare": {
        "report": "concordance",
        "potential": {"a": "1", "b": "2", "R": 1, "S": 1},
        "K": 32,
        "range": "6,8,10,12",
    },
}

_FLAG_KEYS = ("potential", "bc", "K", "N", "caps", "precision", "delta", "range", "format", "out")


def build_parser() -> _Parser:
    parser = _Parser(prog="hillwalk", description="walk functionals and basis verdicts for Hill operators")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--potential", help="JSON literal: {'a','b','R','S'} or {'terms': [...]}")
        p.add_argument("--bc", choices=["per+", "per-", "dirichlet"])
        p.add_argument("--K", type=int, help="Galerkin truncation half-width")
        p.add_argument("--N", type=int, help="low-block cutoff; scanned when omitted")
        p.add_argument("--caps", help="shell caps 'p,q' for the crossing sums")
        p.add_argument("--precision", type=int, help="working precision in bits")
        p.add_argument("--delta", help="index family 'kind:lo:hi[:parity]' or 'explicit:5,8,11'")
        p.add_argument("--range", help="n values: comma list or 'lo:hi'")
        p.add_argument("--format", choices=["json", "csv"])
        p.add_argument("--out", help="output path; '-' or omitted for stdout")
        p.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--config", help="JSON config file; flags override")

    for name, txt in (
        ("beta", "tabulate the crossing and closed-walk sums"),
        ("spectrum", "localized eigenvalue pairs from the truncated operator"),
        ("verdict", "basis verdict for a root-function system"),
        ("verify", "built-in cross-route identity suite"),
    ):
        p = sub.add_parser(name, help=txt)
        add_common(p)
        if name == "verify":
            p.add_argument("--inject-error", action="store_true", help="perturb one closed form (negative control)")
    return parser


def merged_config(args: argparse.Namespace) -> dict:
    config: dict = {}
    if args.preset:
        config.update(PRESETS[args.preset])
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except OSError as err:
            raise UsageError(f"cannot read config: {err}")
        except json.JSONDecodeError as err:
            raise UsageError(f"config is not valid JSON: {err}")
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        config.update(loaded)
    for key in _FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    if getattr(args, "inject_error", False):
        config["inject_error"] = True
    return config


# -- config readers --------------------------------------------------------


def _read_potential(config: dict, required: bool = True):
    spec = config.get("potential")
    if spec is None:
        if required:
            raise UsageError("--potential is required here")
        return None, None
    try:
        return parse_potential(spec)
    except (ValueError, TypeError, KeyError) as err:
        raise UsageError(f"bad potential literal: {err}")


def _read_positive(config: dict, key: str, default: int) -> int:
    value = config.get(key, default)
    if not isinstance(value, int) or value < 1:
        raise UsageError(f"--{key} must be a positive integer, got {value!r}")
    return value


def _read_caps(config: dict) -> tuple:
    raw = config.get("caps", "3,2")
    if isinstance(raw, str):
        parts = raw.split(",")
    elif isinstance(raw, (list, tuple)):
        parts = list(raw)
    else:
        raise UsageError(f"bad caps {raw!r}")
    try:
        caps = tuple(int(p) for p in parts)
    except (TypeError, ValueError):
        raise UsageError(f"bad caps {raw!r}")
    if len(caps) != 2 or any(c < 0 for c in caps):
        raise UsageError("caps must be two nonnegative integers 'p,q'")
    return caps


def _read_range(config: dict, default: Optional[list] = None) -> Optional[list]:
    raw = config.get("range")
    if raw is None:
        return default
    if isinstance(raw, (list, tuple)):
        items = list(raw)
    elif isinstance(raw, str):
        raw = raw.strip()
        if not raw:
            return []
        if ":" in raw:
            try:
                lo, hi = (int(p) for p in raw.split(":"))
            except ValueError:
                raise UsageError(f"bad range {raw!r}")
            if hi < lo:
                raise UsageError(f"bad range {raw!r}")
            return list(range(lo, hi + 1))
        items = raw.split(",")
    else:
        raise UsageError(f"bad range {raw!r}")
    try:
        return [int(p) for p in items]
    except (TypeError, ValueError):
        raise UsageError(f"bad range {raw!r}")


def _read_bc(config: dict, default: str = "per+") -> BoundaryCondition:
    raw = config.get("bc", default)
    try:
        return BoundaryCondition(raw)
    except ValueError:
        raise UsageError(f"bad bc {raw!r}")


def _read_z(config: dict) -> GaussianRational:
    raw = config.get("z", 0)
    try:
        return _scalar_from_json(raw)
    except (ValueError, TypeError) as err:
        raise UsageError(f"bad z literal: {err}")


def _read_delta(config: dict) -> IndexSet:
    raw = config.get("delta")
    if raw is None:
        raise UsageError("--delta is required for a first-criterion verdict")
    parts = str(raw).split(":")
    kind = parts[0]
    try:
        if kind == "explicit":
            if len(parts) < 2:
                raise ValueError("explicit needs 'explicit:5,8,11'")
            ns = tuple(int(p) for p in parts[1].split(","))
            parity = parts[2] if len(parts) > 2 else "both"
            return IndexSet(kind, min(ns), max(ns), parity=parity, explicit=ns)
        if len(parts) not in (3, 4):
            raise ValueError("expected 'kind:lo:hi[:parity]'")
        parity = parts[3] if len(parts) == 4 else "both"
        return IndexSet(kind, int(parts[1]), int(parts[2]), parity=parity)
    except ValueError as err:
        raise UsageError(f"bad delta {raw!r}: {err}")


def _read_thresholds(config: dict) -> VerdictThresholds:
    raw = config.get("thresholds")
    if raw is None:
        return VerdictThresholds()
    if not isinstance(raw, dict):
        raise UsageError("thresholds must be an object")
    try:
        return VerdictThresholds(**raw)
    except TypeError as err:
        raise UsageError(f"bad thresholds: {err}")


# -- serialization ---------------------------------------------------------


def _jsonable(value):
    if isinstance(value, GaussianRational):
        return {"re": str(value.re), "im": str(value.im)}
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return _jsonable(complex(value)) if isinstance(value, mpmath.mpc) else float(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(text: str, config: dict) -> None:
    out = config.get("out")
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as err:
        raise UsageError(f"cannot write {out!r}: {err}")


def _dump(payload, config: dict) -> None:
    _emit(json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n", config)


# -- subcommands -----------------------------------------------------------

_BETA_COLUMNS = (
    "n,beta_plus,beta_plus_float,tail_plus,beta_minus,beta_minus_float,"
    "tail_minus,alpha,alpha_float,closed_plus"
)


def _closed_plus(params: Optional[TwoTermParams], n: int, z: GaussianRational):
    """Exact leading closed form when one applies at (n, z=0)."""
    if params is None or not z.is_zero():
        return None
    if params.R == params.S and n % params.R == 0:
        return beta_equal_rs_leading_exact(params, "+", n // params.R)
    if params.r == 1 and params.d == 1 and params.s >= 3 and (n + 1) % params.s == 0:
        m = (n + 1) // params.s
        if m >= 1:
            return beta_plus_leading_exact(params, m)
    return None


def cmd_beta(config: dict) -> int:
    pot, params = _read_potential(config)
    ns = _read_range(config, default=None)
    if ns is None:
        raise UsageError("--range is required: which n to tabulate")
    z = _read_z(config)
    x_cap, y_cap = _read_caps(config)
    rows = []
    for n in ns:
        bp = beta_plus(pot, params, n, z=z, shell_cap=x_cap) if params else None
        bm = beta_minus(pot, params, n, z=z, shell_cap=y_cap) if params else None
        al = alpha_n(pot, n, z=z)
        closed = _closed_plus(params, n, z)
        rows.append({
            "n": n,
            "beta_plus": bp.value if bp else None,
            "beta_plus_float": complex(bp.value) if bp else None,
            "tail_plus": bp.tail_estimate if bp else None,
            "beta_minus": bm.value if bm else None,
            "beta_minus_float": complex(bm.value) if bm else None,
            "tail_minus": bm.tail_estimate if bm else None,
            "alpha": al.value,
            "alpha_float": complex(al.value),
            "closed_plus": closed,
        })
    if config.get("format", "csv") == "json":
        _dump({"z": z, "caps": [x_cap, y_cap], "rows": rows}, config)
        return EXIT_OK
    lines = [_BETA_COLUMNS]
    for r in rows:
        cells = [str(r["n"])]
        for key in ("beta_plus", "beta_plus_float", "tail_plus", "beta_minus",
                    "beta_minus_float", "tail_minus", "alpha", "alpha_float", "closed_plus"):
            v = r[key]
            if v is None:
                cells.append("")
            elif isinstance(v, complex):
                cells.append(repr(v))
            elif isinstance(v, float):
                cells.append(repr(v))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    _emit("\n".join(lines) + "\n", config)
    return EXIT_OK


def cmd_spectrum(config: dict) -> int:
    pot, _ = _read_potential(config)
    bc = _read_bc(config)
    K = _read_positive(config, "K", 32)
    ns = _read_range(config, default=list(range(4, 13)))
    n_max = max(ns) if ns else 12
    N = config.get("N")
    if N is not None and (not isinstance(N, int) or N < 0):
        raise UsageError(f"--N must be a nonnegative integer, got {N!r}")
    if N is None:
        _, result = find_working_N(pot, bc, K, n_max)
    else:
        result = localize_pairs(eigenvalues(assemble(pot, bc, K)), bc, N, n_max)
    if config.get("dirichlet"):
        result = attach_dirichlet(result, pot, K)
    if config.get("format", "csv") == "json":
        payload = {
            "bc": bc.value,
            "K": K,
            "N": result.N,
            "potential": potential_to_json(pot),
            "pairs": [
                {
                    "n": p.n,
                    "lam_minus": p.lam_minus,
                    "lam_plus": p.lam_plus,
                    "z_star": p.z_star,
                    "gap": p.gap,
                    "flag": p.multiplicity_flag,
                    "mu": p.mu,
                    "deviation": p.deviation,
                }
                for p in result.pairs
            ],
            "low_block": list(result.low_block),
        }
        _dump(payload, config)
    else:
        _emit(spectrum_csv(result), config)
    return EXIT_OK


def cmd_verdict(config: dict) -> int:
    report = config.get("report")
    thresholds = _read_thresholds(config)
    caps = _read_caps(config)
    if report is None:
        pot, params = _read_potential(config)
        iset = _read_delta(config)
        verdict = criterion1_verdict(pot, params, iset, z_choice=_read_z(config),
                                     shell_caps=caps, thresholds=thresholds)
        _dump(verdict.to_json_dict(), config)
        return EXIT_OK
    pot, params = _read_potential(config)
    if params is None:
        raise UsageError("analytic reports need a two-term potential")
    if report == "ratio-collapse":
        lo, hi = config.get("m_range", [2, 6])
        verdict = theorem31_report(params.a, params.b, params.R, params.S,
                                   range(lo, hi + 1), shell_caps=caps,
                                   bc=_read_bc(config), thresholds=thresholds)
    elif report == "shifted-collapse":
        lo, hi = config.get("m_range", [2, 7])
        verdict = theorem5_report(params.a, params.b, params.S, range(lo, hi + 1),
                                  shell_caps=caps, thresholds=thresholds)
    elif report == "equal-offsets":
        verdict = prop20_verdict(params.a, params.b, params.R, _read_bc(config, "per-"),
                                 shell_caps=caps, thresholds=thresholds)
    elif report == "concordance":
        ns = _read_range(config, default=[6, 8, 10, 12])
        rep = concordance_report(params.a, params.b, ns=tuple(ns),
                                 K=_read_positive(config, "K", 32), shell_caps=caps,
                                 precision=_read_positive(config, "precision", 320))
        _dump(rep.to_json_dict(), config)
        return EXIT_OK
    else:
        raise UsageError(f"unknown report kind {report!r}")
    _dump(verdict.to_json_dict(), config)
    return EXIT_OK


def cmd_verify(config: dict) -> int:
    report = run_verify(
        K=_read_positive(config, "K", 32),
        precision=_read_positive(config, "precision", DEFAULT_PRECISION),
        inject_error=bool(config.get("inject_error")),
    )
    _emit("\n".join(report.lines()) + "\n", config)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


_COMMANDS = {
    "beta": cmd_beta,
    "spectrum": cmd_spectrum,
    "verdict": cmd_verdict,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        print(f"hillwalk: {err}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as err:  # --help
        return int(err.code or 0)
    try:
        config = merged_config(args)
        return _COMMANDS[args.command](config)
    except UsageError as err:
        print(f"hillwalk: {err}", file=sys.stderr)
        return EXIT_USAGE
    except WalkSingularityError as err:
        print(f"hillwalk: {err}", file=sys.stderr)
        return EXIT_SINGULARITY
    except (LocalizationError, DirichletUniquenessError) as err:
        print(f"hillwalk: {err}", file=sys.stderr)
        return EXIT_LOCALIZATION
    except (DegenerateRatioError, ValueError) as err:
        print(f"hillwalk: {err}", file=sys.stderr)
        return EXIT_CRITERIA


if __name__ == "__main__":
    sys.exit(main())
