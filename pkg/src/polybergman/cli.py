"""Command-line front end.

Subcommands write CSV (header row, 17 significant digits) to ``--out`` or
standard output. Exit codes: 0 success, 1 invariant failure, 2 bad
configuration or input, 3 numerical failure.
"""

import argparse
import csv
import io
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .errors import CertificationError, NonFiniteSampleError, NotSeparableError
from .spectral import N_CAP, CompactifiedGrid, gamma_matrix
from .symbols import parse_symbol

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

CONFIG_KEYS = {"n", "alpha", "symbol", "grid", "nodes", "tol", "out", "suite",
               "z", "w", "profile", "zgrid"}


class ConfigError(ValueError):
    """Malformed configuration file, flag value or domain violation."""


def fmt(value):
    return "%.17g" % value


def parse_complex(text):
    """Parse ``1+2j``, ``1+2i``, ``i`` or a real number."""
    t = text.strip().replace(" ", "").replace("i", "j")
    if t in ("j", "+j"):
        t = "1j"
    elif t == "-j":
        t = "-1j"
    t = t.replace("+j", "+1j").replace("-j", "-1j")
    try:
        return complex(t)
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {text!r}") from exc


def read_config(path):
    """``key = value`` lines, ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _write_rows(out, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _check_common(args):
    if not 1 <= args.n <= N_CAP:
        raise ConfigError(f"--n must be in 1..{N_CAP}")
    if not args.alpha > 0:
        raise ConfigError("--alpha must be positive")
    if args.tol is not None and not args.tol > 0:
        raise ConfigError("--tol must be positive")
    if args.nodes is not None and args.nodes < 2:
        raise ConfigError("--nodes must be at least 2")


def _parse_grid(spec):
    try:
        return CompactifiedGrid.parse(spec, includes_zero=False, includes_infinity=False)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_gamma(args):
    try:
        symbol = parse_symbol(args.symbol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    grid = _parse_grid(args.grid)
    n = args.n
    pairs = [(j, k) for j in range(1, n + 1) for k in range(j, n + 1)]
    rows = []
    for x in grid.interior:
        m = gamma_matrix(n, symbol, x).entries
        rows.append([fmt(x)] + [fmt(m[j - 1, k - 1]) for j, k in pairs])
    _write_rows(args.out, ["x"] + [f"gamma_{j}_{k}" for j, k in pairs], rows)
    return EXIT_OK


def _halfline_rule(args, decay):
    if args.nodes is None:
        return None
    from .quadrature import HalfLineRule
    return HalfLineRule.gauss_laguerre(args.nodes, decay=decay)


def cmd_kernel(args):
    from .kernels import kernel_PT, kernel_PT_oracle

    z, w = parse_complex(args.z), parse_complex(args.w)
    if not (z.imag > 0 and w.imag > 0):
        raise ConfigError("z and w must lie in the upper half-plane (Im > 0)")
    closed = kernel_PT(args.n, z, w).entries
    rule = _halfline_rule(args, z.imag + w.imag)
    oracle = kernel_PT_oracle(args.n, z, w, rule=rule).entries
    rows = []
    for j in range(args.n):
        for k in range(args.n):
            c, o = closed[j, k], oracle[j, k]
            err = abs(c - o)
            rows.append([fmt(z.real), fmt(z.imag), fmt(w.real), fmt(w.imag), j + 1, k + 1,
                         fmt(c.real), fmt(c.imag), fmt(o.real), fmt(o.imag),
                         fmt(err), fmt(err / abs(c) if c != 0 else err)])
    header = ["z_re", "z_im", "w_re", "w_im", "j", "k", "closed_re", "closed_im",
              "oracle_re", "oracle_im", "abs_err", "rel_err"]
    _write_rows(args.out, header, rows)
    if args.tol is not None and max(float(r[-1]) for r in rows) > args.tol:
        print(f"closed form and oracle differ by more than {args.tol:g}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def parse_profile(spec):
    """``polyexp:k:c`` for t^k e^{-ct} or ``gauss:mu:s`` for t e^{-((t-mu)/s)^2}."""
    from .transforms import HalfLineProfile

    parts = spec.split(":")
    try:
        if parts[0] == "polyexp" and len(parts) == 3:
            k, c = float(parts[1]), float(parts[2])
            if c <= 0 or k < 0:
                raise ValueError("need k >= 0 and c > 0")
            return HalfLineProfile(lambda t: t ** k * np.exp(-c * t), c)
        if parts[0] == "gauss" and len(parts) == 3:
            mu, sd = float(parts[1]), float(parts[2])
            if sd <= 0:
                raise ValueError("need s > 0")
            return HalfLineProfile(lambda t: t * np.exp(-((t - mu) / sd) ** 2), 1.0)
    except ValueError as exc:
        raise ConfigError(f"bad profile {spec!r}: {exc}") from exc
    raise ConfigError(f"bad profile {spec!r}; expected polyexp:k:c or gauss:mu:s")


def _parse_zgrid(spec):
    try:
        x0, x1, nx, y0, y1, ny = spec.split(":")
        xs = np.linspace(float(x0), float(x1), int(nx))
        ys = np.linspace(float(y0), float(y1), int(ny))
    except ValueError as exc:
        raise ConfigError(f"bad z-grid {spec!r}; expected x0:x1:nx:y0:y1:ny") from exc
    if np.any(ys <= 0):
        raise ConfigError("z-grid must lie in the upper half-plane (y > 0)")
    return xs, ys


def cmd_transform(args):
    from .transforms import build_image_element

    a = parse_profile(args.profile)
    xs, ys = _parse_zgrid(args.zgrid)
    rows = []
    for x in xs:
        for y in ys:
            rule = _halfline_rule(args, a.decay + y)
            h = build_image_element(args.n, a, complex(x, y), rule=rule)
            for comp, value in enumerate(np.atleast_1d(h), start=1):
                rows.append([fmt(x), fmt(y), comp, fmt(value.real), fmt(value.imag)])
    _write_rows(args.out, ["x", "y", "component", "re", "im"], rows)
    return EXIT_OK


def cmd_verify(args):
    from .suites import run_suites

    # --tol replaces the 1e-2 bound of the plane-quadrature checks
    scale = 1.0 if args.tol is None else args.tol / 1e-2
    names = [s.strip() for s in args.suite.split(",") if s.strip()]
    try:
        checks = run_suites(names, args.n, args.alpha, scale=scale)
    except ValueError as exc:
        if "unknown suite" in str(exc):
            raise ConfigError(str(exc)) from exc
        raise
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} [{c.suite}] {c.name}: {c.value:.3g} (tol {c.tolerance:.3g})")
    if args.out:
        _write_rows(args.out, ["suite", "check", "passed", "value", "tolerance"],
                    [[c.suite, c.name, int(c.passed), fmt(c.value), fmt(c.tolerance)]
                     for c in checks])
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_INVARIANT


def cmd_certify(args):
    from .projections import generic_position_certificate

    grid = _parse_grid(args.grid)
    try:
        report = generic_position_certificate(args.n, grid)
    except CertificationError as exc:
        print(f"certificate failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    _write_rows(args.out, ["x", "k", "log_gamma"],
                [[fmt(x), k, fmt(lm)] for x, k, lm in report.rows])
    worst = min(report.min_log_margin.values(), key=lambda item: item[1])
    print(f"generic position certified on {grid.interior.size} points; "
          f"smallest log gamma {worst[1]:.6g} at x = {worst[0]:.6g}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--n", type=int, default=2, help="order of the poly-Bergman space")
    common.add_argument("--alpha", type=float, default=2.0, help="a_0 = chi[0, alpha/2]")
    common.add_argument("--nodes", type=int, default=None,
                        help="fixed Gauss-Laguerre node count for half-line integrals "
                             "(default: adaptive truncated rule)")
    common.add_argument("--tol", type=float, default=None, help="tolerance override")
    common.add_argument("--out", default=None, help="CSV output path (default stdout)")

    parser = argparse.ArgumentParser(
        prog="polybergman",
        description="Spectral functions, kernels and transforms of poly-Bergman spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", parents=[common], help="spectral function of a vertical symbol")
    p.add_argument("--symbol", default="indicator:0:1", help="indicator:c:d or const:c")
    p.add_argument("--grid", default="log:0.01:20:100", help="log|lin:lo:hi:count")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("kernel", parents=[common], help="reproducing kernel of Im P_T")
    p.add_argument("--z", default="i")
    p.add_argument("--w", default="i")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("transform", parents=[common], help="image element h on a z-grid")
    p.add_argument("--profile", default="polyexp:1:1", help="polyexp:k:c or gauss:mu:s")
    p.add_argument("--zgrid", default="-2:2:5:0.5:2:4", help="x0:x1:nx:y0:y1:ny")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", default="all",
                   help="specfun, spectral, projections, kernels, algebras, transforms or all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", parents=[common], help="generic-position certificate")
    p.add_argument("--grid", default="log:0.01:100:200", help="log|lin:lo:hi:count")
    p.set_defaults(func=cmd_certify)
    return parser


def _apply_config(parser, argv):
    """Re-parse with config-file values as defaults so explicit flags win."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    values = read_config(args.config)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in values.items():
        if key not in known:
            raise ConfigError(f"key {key!r} does not apply to {args.command}")
        action = known[key]
        try:
            defaults[key] = action.type(raw) if action.type else raw
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None):
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        _check_common(args)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonFiniteSampleError, FloatingPointError, NotSeparableError,
            np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
