"""
Command-line front end.

Every subcommand writes one report (JSON or CSV) to ``--output`` or stdout.
Reports embed the resolved configuration and the package version and
contain no timestamps, so identical invocations give identical bytes.

Subcommands: index, chern, compare-bergman, commutator-decay, verify,
spectrum and kernel.

Exit codes: 0 success, 1 malformed configuration or failed computation,
2 kernel/cokernel not stabilized, 3 symbol not Fredholm, 4 analytic and
topological index disagree (``verify`` only).

The thread count of the linear algebra backend can be pinned with the
``LANDAU_TOEPLITZ_THREADS`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field

from threadpoolctl import threadpool_limits

from . import __version__
from .bergman import CSV_COLUMNS, comparison_rows
from .chern import landau_prediction, multiplicity, odd_chern
from .errors import LandauToeplitzError, NotFredholm, NotStabilized
from .index import RANK_TOLERANCE, graded_index
from .landau import LevelSpec, landau_kernel
from .symbols import format_symbol, resolve_symbol
from .toeplitz import assemble_toeplitz, commutator_decay

THREADS_ENV = "LANDAU_TOEPLITZ_THREADS"

EXIT_OK, EXIT_CONFIG, EXIT_UNSTABLE, EXIT_NOT_FREDHOLM, EXIT_MISMATCH = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    subcommand: str
    n: int
    level: list[int] | None = None
    full_level: int | None = None
    symbol: str = "constant"
    D: int = 10
    K: int = 4
    degrees: list[int] = field(default_factory=lambda: [5, 10, 20])
    coordinate: int = 1
    samples: int = 20
    seed: int = 0
    n_theta: int = 64
    n_phi: int = 128
    rank_tolerance: float = RANK_TOLERANCE
    format: str = "json"
    output: str | None = None

    def validate(self) -> None:
        positives = {"n": self.n, "D": self.D, "K": self.K, "n_theta": self.n_theta, "n_phi": self.n_phi,
                     "coordinate": self.coordinate, "samples": self.samples}
        for name, value in positives.items():
            if value < 1:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.rank_tolerance <= 0:
            raise ConfigError("rank tolerance must be positive")
        if any(d < 1 for d in self.degrees):
            raise ConfigError("degrees must be positive")
        if self.level is not None and self.full_level is not None:
            raise ConfigError("give either --level or --full-level, not both")
        if self.level is not None and len(self.level) != self.n:
            raise ConfigError(f"--level has {len(self.level)} entries, expected n={self.n}")
        if self.level is not None and min(self.level) < 0:
            raise ConfigError("level entries must be non-negative")
        if self.full_level is not None and self.full_level < 0:
            raise ConfigError("--full-level must be non-negative")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")

    def level_spec(self) -> LevelSpec:
        if self.full_level is not None:
            return LevelSpec(self.n, self.full_level)
        return LevelSpec(self.n, tuple(self.level or [0] * self.n))

    def resolved(self) -> dict:
        out = asdict(self)
        out.pop("output")
        return out


# ---------------------------------------------------------------------------
# Output


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(config: ExperimentConfig, text: str) -> None:
    if config.output:
        _write_atomic(config.output, text)
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(config: ExperimentConfig, columns, rows) -> str:
    buf = io.StringIO()
    meta = {"config": config.resolved(), "version": __version__}
    buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def _report(config: ExperimentConfig, result: dict, columns=None, rows=None, json_rows: bool = True) -> None:
    if config.format == "csv" and rows is not None:
        _emit(config, _csv_text(config, columns, rows))
        return
    payload = {"config": config.resolved(), "version": __version__, "result": result}
    if rows is not None and json_rows:
        payload["rows"] = rows
    _emit(config, _json_text(payload))


# ---------------------------------------------------------------------------
# Subcommands


def _symbol(config: ExperimentConfig):
    return resolve_symbol(config.symbol, config.n)


def run_index(config: ExperimentConfig) -> int:
    a = _symbol(config)
    report = graded_index(config.level_spec(), a, config.D, config.rank_tolerance)
    result = report.to_dict()
    result["symbol"] = format_symbol(a)
    rows = [{"D": D, "ker": k, "coker": c} for D, k, c in report.history]
    _report(config, result, ("D", "ker", "coker"), rows, json_rows=False)
    return EXIT_OK if report.stabilized else EXIT_UNSTABLE


def run_chern(config: ExperimentConfig) -> int:
    a = _symbol(config)
    res = odd_chern(a, config.n, n_theta=config.n_theta, n_phi=config.n_phi)
    result = {
        "n": config.n,
        "symbol": format_symbol(a),
        "value_re": res.value.real,
        "value_im": res.value.imag,
        "nearest_integer": res.nearest_integer,
        "quadrature_nodes": res.quadrature_nodes,
        "converged": bool(res.converged),
    }
    _report(config, result, tuple(result), [result], json_rows=False)
    return EXIT_OK


def run_compare_bergman(config: ExperimentConfig) -> int:
    rows = comparison_rows(config.n, config.coordinate, config.D)
    _report(config, {"count": len(rows)}, CSV_COLUMNS, rows)
    return EXIT_OK


def run_commutator_decay(config: ExperimentConfig) -> int:
    a = _symbol(config)
    k = tuple(config.level or [0] * config.n)
    rows = commutator_decay(k, a, config.degrees, config.K)
    _report(config, {"symbol": format_symbol(a), "level": list(k)}, ("D", "K", "shell_norm", "full_norm"), rows)
    return EXIT_OK


def run_spectrum(config: ExperimentConfig) -> int:
    a = _symbol(config)
    t = assemble_toeplitz(config.level_spec(), a, config.D)
    sv = t.singular_values()
    rows = [{"position": i, "singular_value": float(s)} for i, s in enumerate(sv)]
    _report(config, {"shape": list(t.shape), "symbol": format_symbol(a)}, ("position", "singular_value"), rows)
    return EXIT_OK


def run_verify(config: ExperimentConfig) -> int:
    """Analytic index against multiplicity times the odd Chern pairing."""
    a = _symbol(config)
    spec = config.level_spec()
    report = graded_index(spec, a, config.D, config.rank_tolerance)
    ell = spec.level if spec.is_full else 0
    predicted = landau_prediction(ell, config.n, a, n_theta=config.n_theta, n_phi=config.n_phi)
    agree = report.stabilized and report.index == predicted
    result = {
        "analytic_index": report.index,
        "stabilized": report.stabilized,
        "multiplicity": multiplicity(ell, config.n),
        "topological_index": predicted,
        "agree": agree,
        "symbol": format_symbol(a),
    }
    _report(config, result, tuple(result), [result], json_rows=False)
    if not report.stabilized:
        return EXIT_UNSTABLE
    return EXIT_OK if agree else EXIT_MISMATCH


def run_kernel(config: ExperimentConfig) -> int:
    """Kernel values at seeded random pairs in ``|z|, |w| <= 2``."""
    import numpy as np

    spec = config.level_spec()
    rng = np.random.default_rng(config.seed)
    pts = rng.uniform(-1, 1, (2, config.samples, config.n, 2)) @ np.array([1, 1j])
    pts *= 2 / np.sqrt(2 * config.n)
    values = landau_kernel(spec, pts[0], pts[1])
    rows = []
    for z, w, v in zip(pts[0], pts[1], values):
        rows.append({
            "z": " ".join(repr(complex(x)) for x in z),
            "w": " ".join(repr(complex(x)) for x in w),
            "re": float(v.real),
            "im": float(v.imag),
        })
    _report(config, {"level": list(spec.level)}, ("z", "w", "re", "im"), rows)
    return EXIT_OK


COMMANDS = {
    "index": run_index,
    "chern": run_chern,
    "compare-bergman": run_compare_bergman,
    "commutator-decay": run_commutator_decay,
    "verify": run_verify,
    "spectrum": run_spectrum,
    "kernel": run_kernel,
}


# ---------------------------------------------------------------------------
# Argument parsing


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="landau-toeplitz", description="Toeplitz indices on Landau levels.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, symbol=True, level=True):
        p.add_argument("--n", type=int, required=True, help="complex dimension")
        if symbol:
            p.add_argument("--symbol", default="constant",
                           help="coordinate:i, su2, zpow:d, constant[:c] or a literal")
        if level:
            p.add_argument("--level", type=_int_list, help="particular level, e.g. 0,1")
            p.add_argument("--full-level", type=int, help="full level ell")
        p.add_argument("--D", type=int, default=10, help="degree cap")
        p.add_argument("--rank-tolerance", type=float, default=RANK_TOLERANCE)
        p.add_argument("--n-theta", type=int, default=64)
        p.add_argument("--n-phi", type=int, default=128)
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--output", help="report path (default stdout)")

    for name in ("index", "verify", "spectrum"):
        common(sub.add_parser(name))
    common(sub.add_parser("chern"), level=False)
    p = sub.add_parser("compare-bergman")
    common(p, symbol=False, level=False)
    p.add_argument("--coordinate", type=int, default=1, help="coordinate index i")
    p = sub.add_parser("commutator-decay")
    common(p)
    p.add_argument("--K", type=int, default=4, help="ambient levels kept on each side")
    p.add_argument("--degrees", type=_int_list, default=[5, 10, 20])
    p = sub.add_parser("kernel")
    common(p, symbol=False)
    p.add_argument("--samples", type=int, default=20, help="number of (z, w) pairs")
    p.add_argument("--seed", type=int, default=0)
    return parser


DEFAULT_FORMAT = {"compare-bergman": "csv", "commutator-decay": "csv", "spectrum": "csv", "kernel": "csv"}


def parse_config(argv) -> ExperimentConfig:
    ns = build_parser().parse_args(argv)
    fmt = ns.format or DEFAULT_FORMAT.get(ns.subcommand, "json")
    config = ExperimentConfig(
        subcommand=ns.subcommand,
        n=ns.n,
        level=getattr(ns, "level", None),
        full_level=getattr(ns, "full_level", None),
        symbol=getattr(ns, "symbol", "constant"),
        D=ns.D,
        K=getattr(ns, "K", 4),
        degrees=getattr(ns, "degrees", [5, 10, 20]),
        coordinate=getattr(ns, "coordinate", 1),
        samples=getattr(ns, "samples", 20),
        seed=getattr(ns, "seed", 0),
        n_theta=ns.n_theta,
        n_phi=ns.n_phi,
        rank_tolerance=ns.rank_tolerance,
        format=fmt,
        output=ns.output,
    )
    config.validate()
    return config


def _fail(code: int, kind: str, message: str, **extra) -> int:
    payload = {"error": kind, "message": message, "version": __version__}
    payload.update(extra)
    sys.stderr.write(_json_text(payload))
    return code


def main(argv=None) -> int:
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, "config", str(exc))
    threads = os.environ.get(THREADS_ENV)
    try:
        limit = int(threads) if threads else None
    except ValueError:
        return _fail(EXIT_CONFIG, "config", f"{THREADS_ENV} must be an integer, got {threads!r}")
    try:
        with threadpool_limits(limits=limit):
            return COMMANDS[config.subcommand](config)
    except NotFredholm as exc:
        return _fail(EXIT_NOT_FREDHOLM, "not_fredholm", str(exc),
                     witness=[[w.real, w.imag] for w in exc.witness], config=config.resolved())
    except NotStabilized as exc:
        return _fail(EXIT_UNSTABLE, "not_stabilized", str(exc), config=config.resolved())
    except (LandauToeplitzError, ValueError, IndexError) as exc:
        return _fail(EXIT_CONFIG, type(exc).__name__, str(exc), config=config.resolved())


if __name__ == "__main__":
    sys.exit(main())
