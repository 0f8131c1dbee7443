"""Command-line interface: config parsing, verification suites, plot data.

Subcommands: ``verify``, ``expand``, ``coherent``, ``fock``, ``plot-data``.
Reports are deterministic for a fixed config and kernel backend; wall-clock
fields are excluded from the CSV summary so its bytes are reproducible.
The environment variable PSEUDOBOSON_SEED is reserved but ignored: every
computation here is deterministic.
"""

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import coherent, diagnostics, fock, kernels, quad, system, wavefun
from .diagnostics import NOT_RIESZ, RIESZ_SUFFICIENT
from .errors import ConfigError

SUITES = ("gram", "riesz", "expand", "coherent", "fock")

# expectation table for the riesz verdicts: the negative outcomes are
# assertions too, so they ship as data next to the suite
EXPECTED_RIESZ = {
    ("gaussian", "zero"): RIESZ_SUFFICIENT,
    ("gaussian", "imaginary"): RIESZ_SUFFICIENT,
    ("gaussian", "real"): NOT_RIESZ,
    ("gaussian", "general"): NOT_RIESZ,
    ("cosine", "zero"): RIESZ_SUFFICIENT,
    ("cosine", "imaginary"): RIESZ_SUFFICIENT,
    ("cosine", "real"): NOT_RIESZ,
    ("cosine", "general"): NOT_RIESZ,
    ("bounded_phi", "zero"): RIESZ_SUFFICIENT,
    ("bounded_phi", "imaginary"): RIESZ_SUFFICIENT,
    ("bounded_phi", "real"): NOT_RIESZ,
    ("bounded_phi", "general"): NOT_RIESZ,
    ("shifted", "zero"): RIESZ_SUFFICIENT,
    ("shifted", "imaginary"): RIESZ_SUFFICIENT,
    ("shifted", "real"): RIESZ_SUFFICIENT,
    ("shifted", "general"): RIESZ_SUFFICIENT,
}


def alpha_class(alpha):
    if alpha == 0:
        return "zero"
    if alpha.real == 0:
        return "imaginary"
    if alpha.imag == 0:
        return "real"
    return "general"


@dataclass
class RunConfig:
    family: str = "gaussian"
    alpha: complex = 0.5j
    params: dict = field(default_factory=dict)
    n_max: int = 20
    grid_L: float = 12.0
    grid_density: int = 32
    disk_R: float = 6.0
    disk_radial: int = 40
    disk_angular: int = 64
    suites: tuple = SUITES
    fock_alpha: complex = 1.0
    fock_beta: complex = 0.0
    fock_dim: int = 64
    out: str = "out"


@dataclass
class CheckRecord:
    check_id: str
    tag: str  # claim label, or "plumbing"
    measured: object
    expected: object
    tolerance: float
    passed: bool
    runtime_ms: float


@dataclass
class Report:
    records: list

    @property
    def passed(self):
        return all(r.passed for r in self.records)


def parse_complex(value, path):
    """Accept JSON numbers or strings like '0.5', '0.5i', '1+0.3i'."""
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        text = value.strip().replace(" ", "").replace("i", "j")
        try:
            return complex(text)
        except ValueError as exc:
            raise ConfigError(f"{path}: cannot parse complex number {value!r}") from exc
    raise ConfigError(f"{path}: expected number or string, got {type(value).__name__}")


def _require(cond, path, message):
    if not cond:
        raise ConfigError(f"{path}: {message}")


def parse_config(text):
    """Parse and validate a JSON configuration document.

    Missing fields receive the documented defaults (L=12, density=32, R=6,
    n_max=20). Violations raise ConfigError naming the field path.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("top level: expected an object")

    cfg = RunConfig()
    known = {
        "family",
        "alpha",
        "params",
        "n_max",
        "grid",
        "disk",
        "suites",
        "fock",
        "out",
    }
    for key in raw:
        if key not in known:
            raise ConfigError(f"{key}: unknown field")

    family = raw.get("family", cfg.family)
    _require(family in system.FAMILIES, "family", f"must be one of {system.FAMILIES}")
    cfg.family = family
    cfg.alpha = parse_complex(raw.get("alpha", cfg.alpha), "alpha")
    params = raw.get("params", {})
    _require(isinstance(params, dict), "params", "expected an object")
    cfg.params = params

    n_max = raw.get("n_max", cfg.n_max)
    _require(isinstance(n_max, int) and 0 <= n_max <= 40, "n_max", "must be 0..40")
    cfg.n_max = n_max

    grid = raw.get("grid", {})
    _require(isinstance(grid, dict), "grid", "expected an object")
    L = grid.get("L", cfg.grid_L)
    _require(isinstance(L, (int, float)) and L >= 5, "grid.L", "must be >= 5")
    cfg.grid_L = float(L)
    density = grid.get("density", cfg.grid_density)
    _require(
        isinstance(density, int) and density >= 16, "grid.density", "must be >= 16"
    )
    cfg.grid_density = density

    disk = raw.get("disk", {})
    _require(isinstance(disk, dict), "disk", "expected an object")
    R = disk.get("R", cfg.disk_R)
    _require(isinstance(R, (int, float)) and R >= 3, "disk.R", "must be >= 3")
    cfg.disk_R = float(R)
    radial = disk.get("radial", cfg.disk_radial)
    _require(isinstance(radial, int) and radial >= 40, "disk.radial", "must be >= 40")
    cfg.disk_radial = radial
    angular = disk.get("angular", cfg.disk_angular)
    _require(
        isinstance(angular, int) and angular >= 64, "disk.angular", "must be >= 64"
    )
    cfg.disk_angular = angular

    suites = raw.get("suites", list(SUITES))
    _require(isinstance(suites, list) and suites, "suites", "expected a nonempty list")
    for s in suites:
        _require(s in SUITES, f"suites.{s}", f"must be one of {SUITES}")
    cfg.suites = tuple(s for s in SUITES if s in suites)

    fk = raw.get("fock", {})
    _require(isinstance(fk, dict), "fock", "expected an object")
    cfg.fock_alpha = parse_complex(fk.get("alpha", cfg.fock_alpha), "fock.alpha")
    cfg.fock_beta = parse_complex(fk.get("beta", cfg.fock_beta), "fock.beta")
    dim = fk.get("dim", cfg.fock_dim)
    _require(isinstance(dim, int) and dim >= 16, "fock.dim", "must be >= 16")
    cfg.fock_dim = dim

    out = raw.get("out", cfg.out)
    _require(isinstance(out, str), "out", "expected a string")
    cfg.out = out
    return cfg


def _fmt(value):
    if isinstance(value, complex):
        return f"{value.real:.12e}{value.imag:+.12e}j"
    if isinstance(value, float):
        return f"{value:.12e}"
    return str(value)


class _Recorder:
    def __init__(self):
        self.records = []
        self._t0 = None

    def start(self):
        self._t0 = time.perf_counter()

    def add(self, check_id, tag, measured, expected, tolerance, passed):
        dt = 0.0 if self._t0 is None else 1e3 * (time.perf_counter() - self._t0)
        self.records.append(
            CheckRecord(
                check_id=check_id,
                tag=tag,
                measured=_fmt(measured),
                expected=_fmt(expected),
                tolerance=tolerance,
                passed=bool(passed),
                runtime_ms=round(dt, 3),
            )
        )
        self._t0 = None


def _suite_gram(cfg, sys_, grid, rec):
    rec.start()
    G, normalizer = quad.gram_matrix(sys_, cfg.n_max, grid)
    closed = math.sqrt(math.pi) * np.exp(cfg.alpha**2 / 4.0 - sys_.beta)
    rec.add(
        "gram.normalizer",
        "weight-integral",
        normalizer,
        complex(closed),
        1e-10,
        abs(normalizer - closed) <= 1e-10 * abs(closed),
    )
    off = G - np.diag(np.diag(G))
    rec.start()
    off_max = float(np.abs(off).max())
    rec.add("gram.offdiag_max", "biorthogonality", off_max, 0.0, 1e-8, off_max <= 1e-8)
    rec.start()
    diag_dev = float(np.abs(np.diag(G) - 1.0).max())
    rec.add("gram.diag_dev", "biorthogonality", diag_dev, 0.0, 1e-8, diag_dev <= 1e-8)


def _suite_riesz(cfg, sys_, rec):
    rec.start()
    verdict = diagnostics.riesz_ratio_sup(sys_, (8.0, 10.0, 12.0))
    expected = EXPECTED_RIESZ[(cfg.family, alpha_class(cfg.alpha))]
    rec.add(
        "riesz.verdict",
        "riesz-sufficiency",
        verdict.verdict,
        expected,
        0.0,
        verdict.verdict == expected,
    )
    rec.start()
    rec.add(
        "riesz.divergence_slope",
        "riesz-sufficiency",
        verdict.divergence_slope,
        "<=0.01 if sufficient" if expected == RIESZ_SUFFICIENT else ">=0.1",
        0.0,
        (verdict.divergence_slope <= 0.01)
        == (expected == RIESZ_SUFFICIENT),
    )


def _gaussian_target(grid):
    return np.exp(-((grid.nodes - 1.0) ** 2) / 2.0).astype(complex)


def _suite_expand(cfg, sys_, grid, rec):
    target = _gaussian_target(grid)
    rec.start()
    coeffs = diagnostics.expand(sys_, target, cfg.n_max, "phi_basis", grid)
    _, residual = diagnostics.reconstruct(sys_, coeffs, "phi_basis", grid, target)
    rec.add(
        "expand.reconstruction_residual",
        "basis-expansion",
        residual,
        0.0,
        1e-6,
        residual <= 1e-6,
    )
    rec.start()
    values, _ = diagnostics.reconstruct(sys_, coeffs, "phi_basis", grid)
    again = diagnostics.expand(sys_, values, cfg.n_max, "phi_basis", grid)
    drift = float(np.abs(again - coeffs).max())
    rec.add("expand.idempotence", "basis-expansion", drift, 0.0, 1e-8, drift <= 1e-8)


def _suite_coherent(cfg, sys_, grid, rec):
    rec.start()
    worst = 0.0
    for z in coherent.Z_LATTICE:
        r_phi, r_psi = coherent.eigen_residual(sys_, z, grid=grid)
        worst = max(worst, r_phi, r_psi)
    rec.add(
        "coherent.eigen_residual_max",
        "coherent-eigenvalue",
        worst,
        0.0,
        1e-8,
        worst <= 1e-8,
    )
    rec.start()
    disk = quad.disk_grid(cfg.disk_R, cfg.disk_radial, cfg.disk_angular)
    phi0 = wavefun.eval_wavefunction(wavefun.phi_n(sys_, 0), grid.nodes)
    got = coherent.resolution_check(sys_, "phiPsi", phi0, phi0, disk, grid)
    want = quad.inner_product(phi0, phi0, grid)
    rec.add(
        "coherent.resolution_phiPsi",
        "identity-resolution",
        got,
        want,
        1e-5,
        abs(got - want) <= 1e-5 * max(1.0, abs(want)),
    )


def _suite_fock(cfg, grid, rec):
    a, b = cfg.fock_alpha, cfg.fock_beta
    dsys = fock.displaced_system(a, b, cfg.fock_dim)

    rec.start()
    comm = dsys.A @ dsys.B - dsys.B @ dsys.A - np.eye(cfg.fock_dim)
    block = float(np.abs(comm[: cfg.fock_dim - 2, : cfg.fock_dim - 2]).max())
    rec.add("fock.commutator_block", "commutation", block, 0.0, 1e-12, block <= 1e-12)

    # lower-bound and low-block checks tolerate more top-quarter mass than
    # high-accuracy reconstructions would
    n_max = min(30, cfg.fock_dim // 2)
    leak_tol = 1e-6
    rec.start()
    G = fock.displaced_gram(dsys, n_max, leak_tol)
    factor = fock.gram_scalar(a, b)
    dev = float(np.abs(G - factor * np.eye(n_max + 1)).max())
    rec.add("fock.gram_factor", "displaced-pairing", dev, 0.0, 1e-8, dev <= 1e-8)

    rec.start()
    growth = fock.norm_growth_check(dsys, n_max, leak_tol)
    ok = all(measured >= bound - 1e-8 for _, measured, bound in growth)
    worst = min(measured - bound for _, measured, bound in growth)
    rec.add("fock.norm_growth", "norm-growth-bound", worst, ">= -1e-8", 1e-8, ok)

    rec.start()
    resid = fock.v_operator_identity(dsys)
    rec.add("fock.v_identity", "mapping-operators", resid, 0.0, 1e-7, resid <= 1e-7)

    # Bessel behavior: the collapse case plateaus at 1 on a compactly
    # supported witness; the non-collapse staircase needs slowly decaying
    # coefficients (vacuum overlaps of the displaced family are summable,
    # so the vacuum cannot exhibit the obstruction)
    rec.start()
    if np.conj(a) == b:
        f = np.zeros(cfg.fock_dim, dtype=complex)
        f[0] = 1.0
        sums = diagnostics.bessel_partial_sums(dsys, f, n_max, leak_tol=leak_tol)
        ok = abs(sums[-1] - 1.0) <= 1e-8
        rec.add("fock.bessel_plateau", "bessel-bound", float(sums[-1]), 1.0, 1e-8, ok)
    else:
        f = 1.0 / (1.0 + np.arange(cfg.fock_dim, dtype=float))
        f = f.astype(complex) / np.linalg.norm(f)
        sums = diagnostics.bessel_partial_sums(dsys, f, n_max, leak_tol=leak_tol)
        increasing = bool(np.all(np.diff(sums) > 0))
        rec.add(
            "fock.bessel_staircase",
            "bessel-bound",
            float(sums[-1]),
            "strictly increasing",
            0.0,
            increasing,
        )

    rec.start()
    f_vals = _gaussian_target(grid)
    f_vals = f_vals / quad.norm(f_vals, grid)
    disk = quad.disk_grid(cfg.disk_R, cfg.disk_radial, cfg.disk_angular)
    lhs, rhs = fock.mixed_resolution_scalar(dsys, f_vals, f_vals, grid, disk)
    dev = abs(lhs - rhs) / max(1e-30, abs(rhs))
    rec.add("fock.mixed_resolution", "mixed-dyad-failure", dev, 0.0, 1e-4, dev <= 1e-4)

    # proposition check on a modest disk: collapse control plus the
    # displaced negative control
    prop_disk = quad.disk_grid(3.5, 40, 64)
    e0 = np.zeros(64, dtype=complex)
    e0[0] = 1.0
    rec.start()
    collapse = fock.displaced_system(0.5, 0.5, 64)
    got = fock.proposition_resolution_check(collapse, e0, e0, prop_disk)
    rec.add(
        "fock.proposition_collapse",
        "tilde-resolution",
        got,
        1.0,
        1e-4,
        abs(got - 1.0) <= 1e-4,
    )
    rec.start()
    negative = fock.displaced_system(1.0, 0.0, 64)
    got = fock.proposition_resolution_check(negative, e0, e0, prop_disk, leak_tol=1e-6)
    rec.add(
        "fock.proposition_negative",
        "tilde-resolution",
        got,
        "deviation >= 10%",
        0.1,
        abs(got - 1.0) >= 0.1,
    )


def run_verify(config):
    """Run the selected suites in fixed order and return the Report."""
    rec = _Recorder()
    sys_ = system.make_system(config.family, config.alpha, config.params)
    grid = quad.real_line_grid(config.grid_L, config.grid_density)
    for suite in config.suites:
        if suite == "gram":
            _suite_gram(config, sys_, grid, rec)
        elif suite == "riesz":
            _suite_riesz(config, sys_, rec)
        elif suite == "expand":
            _suite_expand(config, sys_, grid, rec)
        elif suite == "coherent":
            _suite_coherent(config, sys_, grid, rec)
        elif suite == "fock":
            _suite_fock(config, grid, rec)
    return Report(records=rec.records)


def write_report(report, out_dir):
    """Write report.json and the wall-clock-free summary.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    payload = {
        "schema_version": 1,
        "backend": kernels.backend(),
        "passed": report.passed,
        "records": [asdict(r) for r in report.records],
    }
    (out / "report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    with open(out / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["check_id", "tag", "measured", "expected", "tolerance", "passed"]
        )
        for r in report.records:
            writer.writerow(
                [r.check_id, r.tag, r.measured, r.expected, r.tolerance, r.passed]
            )
    return out / "report.json"


def emit_plot_data(config, what, out_dir=None):
    """Write CSV plot data; returns the written path."""
    out = Path(out_dir if out_dir is not None else config.out)
    out.mkdir(parents=True, exist_ok=True)
    sys_ = system.make_system(config.family, config.alpha, config.params)
    grid = quad.real_line_grid(config.grid_L, config.grid_density)

    if what == "wavefunctions":
        n_top = min(config.n_max, 3)
        phis = wavefun.family_values(sys_, "phi", n_top, grid.nodes)
        path = out / "wavefunctions.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            header = ["x"]
            for n in range(n_top + 1):
                header += [f"phi{n}_re", f"phi{n}_im"]
            writer.writerow(header)
            for i, x in enumerate(grid.nodes):
                row = [f"{x:.12e}"]
                for n in range(n_top + 1):
                    row += [f"{phis[n, i].real:.12e}", f"{phis[n, i].imag:.12e}"]
                writer.writerow(row)
        return path

    if what == "ratio":
        x = np.linspace(-config.grid_L, config.grid_L, 801)
        dwa = sys_.w_a(x) - sys_.w_a(0.0)
        log_fwd = 2.0 * np.real(dwa) - (x**2 + sys_.alpha.real * x)
        path = out / "ratio.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "log_forward", "log_inverse"])
            for xi, lf in zip(x, log_fwd):
                writer.writerow([f"{xi:.12e}", f"{lf:.12e}", f"{-lf:.12e}"])
        return path

    if what == "bessel":
        dsys = fock.displaced_system(config.fock_alpha, config.fock_beta, config.fock_dim)
        f = 1.0 / (1.0 + np.arange(config.fock_dim, dtype=float))
        f = f.astype(complex) / np.linalg.norm(f)
        sums = diagnostics.bessel_partial_sums(
            dsys, f, config.fock_dim // 2, leak_tol=1e-6
        )
        path = out / "bessel.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n", "partial_sum"])
            for n, s in enumerate(sums):
                writer.writerow([n, f"{s:.12e}"])
        return path

    if what == "coherent_residual":
        path = out / "coherent_residual.csv"
        z = 1.0
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n_trunc", "residual_phi", "residual_psi"])
            for n_trunc in range(4, 44, 4):
                r_phi, r_psi = coherent.eigen_residual(sys_, z, n_trunc, grid)
                writer.writerow([n_trunc, f"{r_phi:.12e}", f"{r_psi:.12e}"])
        return path

    raise ConfigError(f"plot-data: unknown kind {what!r}")


def _load_config(args):
    if args.config is not None:
        cfg = parse_config(Path(args.config).read_text(encoding="utf-8"))
    else:
        cfg = RunConfig()
    if getattr(args, "nmax", None) is not None:
        if not 0 <= args.nmax <= 40:
            raise ConfigError("n_max: must be 0..40")
        cfg.n_max = args.nmax
    if getattr(args, "suite", None):
        for s in args.suite:
            if s not in SUITES:
                raise ConfigError(f"suites.{s}: must be one of {SUITES}")
        cfg.suites = tuple(s for s in SUITES if s in args.suite)
    if args.out is not None:
        cfg.out = args.out
    return cfg


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pseudoboson",
        description="Construct pseudo-boson systems and verify their structure numerically.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config path")
        p.add_argument("--out", help="output directory")
        p.add_argument("--nmax", type=int, help="override n_max")
        p.add_argument("--suite", nargs="*", help="suite names to run")

    for name in ("verify", "expand", "coherent", "fock"):
        common(sub.add_parser(name))
    plot = sub.add_parser("plot-data")
    common(plot)
    plot.add_argument(
        "--what",
        required=True,
        choices=["wavefunctions", "ratio", "bessel", "coherent_residual"],
    )

    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "verify":
        report = run_verify(cfg)
    elif args.command == "expand":
        cfg.suites = ("expand",)
        report = run_verify(cfg)
    elif args.command == "coherent":
        cfg.suites = ("coherent",)
        report = run_verify(cfg)
    elif args.command == "fock":
        cfg.suites = ("fock",)
        report = run_verify(cfg)
    elif args.command == "plot-data":
        path = emit_plot_data(cfg, args.what)
        print(f"wrote {path}")
        return 0
    else:  # pragma: no cover
        parser.error(f"unknown command {args.command}")

    path = write_report(report, cfg.out)
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.check_id}: measured={r.measured} expected={r.expected}")
    print(f"report: {path}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
