"""Batch experiments producing CSV tables.

* ``sweep``      lowest level versus ``t2/t1``: exact, binary seed and refined energies
  and their overlap with the exact ground space.
* ``converge``   energy deviation per accepted iteration for one lowest-level solve.
* ``dispersion`` full spectrum against the closed-form band energies.
* ``spectrum``   full spectrum against the Jacobi oracle, for any parameters.

Numbers are written with 12 significant digits, so identical configs give
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .errors import UsageError
from .lattice import TightBindingParams, build_tight_binding, dispersion_multiset
from .oracle import jacobi_eigen, subspace_overlap
from .samplers import ExhaustiveSampler, RemoteSampler, SamplerConfig, SimulatedAnnealingSampler
from .solver import EigensolverConfig, binary_seed, deviation, solve_lowest, solve_spectrum

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXPERIMENTS = ("sweep", "converge", "dispersion", "spectrum")
SAMPLERS = ("exhaustive", "sa", "remote")
ENDPOINT_ENV = "QE_REMOTE_ENDPOINT"


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple]

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([row[k] for row in self.rows], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([fmt(x) for x in row])
        return buf.getvalue()


@dataclass
class ExperimentConfig:
    experiment: str = "sweep"
    lattice: TightBindingParams = field(default_factory=lambda: TightBindingParams(L=8))
    sampler: str = "exhaustive"
    sampler_config: SamplerConfig = field(default_factory=SamplerConfig)
    solver: EigensolverConfig = field(default_factory=EigensolverConfig)
    t2_min: float = 0.0
    t2_max: float = 1.0
    steps: int = 11
    out: str | None = None
    endpoint: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise UsageError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if self.sampler not in SAMPLERS:
            raise UsageError(f"sampler must be one of {SAMPLERS}, got {self.sampler!r}")
        if self.steps < 1:
            raise UsageError("sweep grid needs steps >= 1")

    @property
    def seed(self) -> int:
        return self.sampler_config.seed

    def grid(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.t2_min])
        return np.linspace(self.t2_min, self.t2_max, self.steps)

    def make_sampler(self):
        if self.sampler == "exhaustive":
            return ExhaustiveSampler()
        if self.sampler == "sa":
            return SimulatedAnnealingSampler(self.sampler_config)
        endpoint = self.endpoint or os.environ.get(ENDPOINT_ENV)
        if not endpoint:
            raise UsageError(f"remote sampler needs an endpoint; set {ENDPOINT_ENV}")
        return RemoteSampler(endpoint, self.sampler_config)

    @classmethod
    def from_toml(cls, path) -> "ExperimentConfig":
        with open(path, "rb") as fh:
            return cls.from_mapping(tomllib.load(fh))

    @classmethod
    def from_mapping(cls, doc: dict, overrides: dict | None = None) -> "ExperimentConfig":
        """Build from a parsed config document; ``overrides`` uses flat CLI key names."""
        doc = {k: dict(v) if isinstance(v, dict) else v for k, v in doc.items()}
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            section, _, name = key.rpartition(".")
            target = doc.setdefault(section, {}) if section else doc
            target[name] = value

        lattice = dict(doc.get("lattice", {}))
        sampler = dict(doc.get("sampler", {}))
        solver = dict(doc.get("solver", {}))
        sweep = dict(doc.get("sweep", {}))
        kind = sampler.pop("kind", "exhaustive")
        endpoint = sampler.pop("endpoint", None)
        if "seed" in doc:
            sampler["seed"] = doc["seed"]
        _reject_unknown("lattice", lattice, TightBindingParams)
        _reject_unknown("sampler", sampler, SamplerConfig)
        _reject_unknown("solver", solver, EigensolverConfig)
        lattice.setdefault("L", 8)
        return cls(
            experiment=doc.get("experiment", "sweep"),
            lattice=TightBindingParams(**lattice),
            sampler=kind,
            sampler_config=SamplerConfig(**sampler),
            solver=EigensolverConfig(**solver),
            t2_min=float(sweep.get("t2_min", 0.0)),
            t2_max=float(sweep.get("t2_max", 1.0)),
            steps=int(sweep.get("steps", 11)),
            out=doc.get("out"),
            endpoint=endpoint,
        )


def _reject_unknown(section: str, values: dict, cls):
    known = {f.name for f in fields(cls)}
    unknown = set(values) - known
    if unknown:
        raise UsageError(f"unknown keys in [{section}]: {', '.join(sorted(unknown))}")


def run_sweep(cfg: ExperimentConfig) -> Table:
    sampler = cfg.make_sampler()
    rows = []
    for ratio in cfg.grid():
        params = replace(cfg.lattice, t2=float(ratio) * cfg.lattice.t1)
        H = build_tight_binding(params)
        exact = jacobi_eigen(H)
        ground = exact.cluster_of(0)
        seed = binary_seed(H, sampler)
        qe = solve_lowest(H, sampler, cfg.solver)
        rows.append((
            float(ratio),
            exact.values[0],
            seed.energy,
            qe.energy,
            subspace_overlap(seed.state, ground),
            subspace_overlap(qe.state, ground),
        ))
    return Table(("t2_over_t1", "E_exact", "E_binary", "E_qe", "cos_binary", "cos_qe"), rows)


def run_convergence(cfg: ExperimentConfig) -> Table:
    H = build_tight_binding(cfg.lattice)
    e_exact = jacobi_eigen(H).values[0]
    qe = solve_lowest(H, cfg.make_sampler(), cfg.solver)
    rows = [(it, e, deviation(e_exact, e), gamma) for it, e, gamma in qe.trace]
    return Table(("iter", "E_qe", "D", "gamma"), rows)


def _comparison_rows(reference: np.ndarray, computed: np.ndarray) -> list[tuple]:
    rows = []
    for k, (a, b) in enumerate(zip(reference, computed)):
        # Difference of the printed values, so every row checks out on its own.
        a, b = float(fmt(a)), float(fmt(b))
        rows.append((k, a, b, abs(a - b)))
    return rows


def run_dispersion(cfg: ExperimentConfig) -> Table:
    phase = cfg.lattice.phase()
    H = build_tight_binding(cfg.lattice)
    result = solve_spectrum(H, cfg.make_sampler(), cfg.solver)
    exact = dispersion_multiset(cfg.lattice, phase)
    return Table(("index", "eps_exact_sorted", "E_qe_sorted", "abs_diff"),
                 _comparison_rows(exact, np.sort(result.energies)))


def run_spectrum(cfg: ExperimentConfig) -> Table:
    H = build_tight_binding(cfg.lattice)
    result = solve_spectrum(H, cfg.make_sampler(), cfg.solver)
    exact = jacobi_eigen(H).values
    return Table(("index", "E_exact", "E_qe", "abs_diff"),
                 _comparison_rows(exact, np.sort(result.energies)))


RUNNERS = {
    "sweep": run_sweep,
    "converge": run_convergence,
    "dispersion": run_dispersion,
    "spectrum": run_spectrum,
}


def run(cfg: ExperimentConfig) -> Table:
    return RUNNERS[cfg.experiment](cfg)


def write_table(table: Table, out: str | os.PathLike | None) -> str:
    text = table.to_csv()
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text
