"""Ising ground-state samplers.

Every backend exposes ``sample(problem) -> SampleSet``. The eigensolver only
looks at the lowest record, so any ground-state heuristic can stand in for an
annealer:

* :class:`ExhaustiveSampler` enumerates all ``2**n`` states (exact, n <= 24).
* :class:`SimulatedAnnealingSampler` runs Metropolis anneals on the CPU.
* :class:`RemoteSampler` posts the problem to an HTTP service speaking the
  JSON wire format below.

Wire format (``POST <endpoint>/sample``)::

    request  {"n": int, "h": [float], "J": [[i, j, value], ...], "offset": float,
              "num_reads": int, "seed": uint64}
    response {"samples": [[-1|1, ...], ...], "energies": [float], "occurrences": [int]}
"""

from __future__ import annotations

import json
import logging
import time
import urllib.error
import urllib.request
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ParameterError, RetryableSamplerError, SamplerProtocolError
from .ising import IsingProblem

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 24
EXHAUSTIVE_KEEP = 2**16
ENERGY_MISMATCH_TOL = 1e-6


@dataclass(frozen=True)
class SamplerConfig:
    """Shot budget and annealing schedule.

    ``num_reads`` plays the role of the number of annealer shots and
    ``sweeps`` the per-shot annealing time.
    """

    num_reads: int = 100
    sweeps: int = 1000
    beta_initial: float = 0.1
    beta_final: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.num_reads < 1:
            raise ParameterError("num_reads must be >= 1")
        if self.sweeps < 1:
            raise ParameterError("sweeps must be >= 1")
        if not 0 < self.beta_initial < self.beta_final:
            raise ParameterError("need 0 < beta_initial < beta_final")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must fit in an unsigned 64-bit integer")


class SampleSet:
    """Distinct spin configurations ranked by ascending energy.

    Energies are always recomputed from the problem. Ties are broken by
    lexicographic spin order so that ranking is deterministic.
    """

    def __init__(self, problem: IsingProblem, spins, occurrences=None):
        S = np.asarray(spins)
        if S.ndim != 2 or S.shape[1] != problem.n:
            raise ParameterError(f"expected spin rows of length {problem.n}")
        if not np.all((S == 1) | (S == -1)):
            raise ParameterError("spins must be exactly -1 or +1")
        if occurrences is None:
            occurrences = np.ones(len(S), dtype=np.int64)
        S, inverse = np.unique(S.astype(np.int8), axis=0, return_inverse=True)
        counts = np.bincount(inverse.reshape(-1), weights=np.asarray(occurrences), minlength=len(S))
        energies = problem.energies(S)
        order = np.lexsort((*S.T[::-1], energies))
        self.problem = problem
        self.spins = S[order]
        self.energies = energies[order]
        self.occurrences = counts[order].astype(np.int64)

    def __len__(self):
        return len(self.energies)

    def __iter__(self):
        return iter(zip(self.spins, self.energies, self.occurrences))

    @property
    def lowest(self) -> np.ndarray:
        return self.spins[0]

    @property
    def lowest_energy(self) -> float:
        return float(self.energies[0])

    def to_dict(self) -> dict:
        return {
            "samples": self.spins.astype(int).tolist(),
            "energies": self.energies.tolist(),
            "occurrences": self.occurrences.tolist(),
        }

    def __eq__(self, other):
        if not isinstance(other, SampleSet):
            return NotImplemented
        return (
            np.array_equal(self.spins, other.spins)
            and np.array_equal(self.energies, other.energies)
            and np.array_equal(self.occurrences, other.occurrences)
        )

    def __repr__(self):
        return f"SampleSet(n={self.problem.n}, records={len(self)}, lowest={self.lowest_energy:.6g})"


def _spin_rows(indices: np.ndarray, n: int) -> np.ndarray:
    # Row k is the binary expansion of indices[k], most significant bit first, 0 -> -1.
    bits = (indices[:, None] >> np.arange(n - 1, -1, -1)) & 1
    return (2 * bits - 1).astype(np.int8)


def exhaustive_sample(p: IsingProblem) -> SampleSet:
    n = p.n
    if n > EXHAUSTIVE_MAX_N:
        raise CapacityError(f"exhaustive enumeration supports n <= {EXHAUSTIVE_MAX_N}, got {n}")
    total = 2**n
    if total <= EXHAUSTIVE_KEEP:
        return SampleSet(p, _spin_rows(np.arange(total), n))

    chunk = 2**18
    keep_idx = np.empty(0, dtype=np.int64)
    keep_e = np.empty(0)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        e = p.energies(_spin_rows(idx, n))
        idx = np.concatenate([keep_idx, idx])
        e = np.concatenate([keep_e, e])
        if len(e) > EXHAUSTIVE_KEEP:
            # Stable sort on (energy, index) keeps the retained set deterministic.
            order = np.lexsort((idx, e))[:EXHAUSTIVE_KEEP]
            idx, e = idx[order], e[order]
        keep_idx, keep_e = idx, e
    return SampleSet(p, _spin_rows(keep_idx, n))


def simulated_anneal(p: IsingProblem, cfg: SamplerConfig | None = None) -> SampleSet:
    """Single-spin-flip Metropolis anneals over a geometric inverse-temperature schedule.

    The problem is rescaled so its largest field or coupling has magnitude 1
    before annealing, so the schedule means the same thing for every problem.
    Reads run side by side but each draws from its own stream spawned from
    ``cfg.seed`` by read index.
    """
    cfg = cfg or SamplerConfig()
    n, reads = p.n, cfg.num_reads
    Jup = p.coupling_matrix()
    J = Jup + Jup.T
    h = p.fields
    scale = max(np.max(np.abs(h), initial=0.0), np.max(np.abs(J), initial=0.0))
    if scale == 0:
        scale = 1.0
    J = J / scale
    h = h / scale

    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(cfg.seed).spawn(reads)]
    S = np.stack([rng.choice(np.array([-1.0, 1.0]), size=n) for rng in streams])
    local = h + S @ J
    betas = np.geomspace(cfg.beta_initial, cfg.beta_final, cfg.sweeps)

    block = 64
    for start in range(0, cfg.sweeps, block):
        stop = min(start + block, cfg.sweeps)
        uniforms = np.stack([rng.random((stop - start, n)) for rng in streams], axis=1)
        for sweep in range(start, stop):
            beta = betas[sweep]
            u = uniforms[sweep - start]
            for i in range(n):
                dE = -2.0 * S[:, i] * local[:, i]
                flip = (dE <= 0) | (u[:, i] < np.exp(-beta * np.maximum(dE, 0.0)))
                if flip.any():
                    delta = np.where(flip, -2.0 * S[:, i], 0.0)
                    S[:, i] += delta
                    local += np.outer(delta, J[i])
    return SampleSet(p, S.astype(np.int8))


def _post_json(url: str, payload: dict, timeout: float) -> dict:
    body = json.dumps(payload).encode("utf-8")
    request = urllib.request.Request(
        url, data=body, headers={"Content-Type": "application/json"}, method="POST"
    )
    with urllib.request.urlopen(request, timeout=timeout) as response:
        raw = response.read()
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SamplerProtocolError(f"response is not UTF-8 JSON: {exc}") from exc


def _parse_response(p: IsingProblem, data) -> SampleSet:
    try:
        samples = data["samples"]
        energies = data["energies"]
        occurrences = data["occurrences"]
    except (KeyError, TypeError) as exc:
        raise SamplerProtocolError(f"response is missing field {exc}") from exc
    if not (len(samples) == len(energies) == len(occurrences)) or not samples:
        raise SamplerProtocolError("samples, energies and occurrences must be non-empty and equally long")
    for row in samples:
        if len(row) != p.n or any(type(x) is not int or x not in (-1, 1) for x in row):
            raise SamplerProtocolError("every sample must hold exactly n integer spins of -1 or +1")
    if any(type(c) is not int or c < 1 for c in occurrences):
        raise SamplerProtocolError("occurrences must be positive integers")
    S = np.array(samples, dtype=np.int8)
    reported = np.asarray(energies, dtype=float)
    actual = p.energies(S)
    bad = np.abs(actual - reported) > ENERGY_MISMATCH_TOL
    if bad.any():
        k = int(np.argmax(bad))
        raise SamplerProtocolError(
            f"reported energy {reported[k]!r} for sample {k} differs from recomputed {actual[k]!r}"
        )
    return SampleSet(p, S, occurrences)


def remote_sample(
    p: IsingProblem,
    endpoint: str,
    cfg: SamplerConfig | None = None,
    attempts: int = 3,
    timeout: float = 30.0,
    backoff: float = 0.2,
) -> SampleSet:
    cfg = cfg or SamplerConfig()
    payload = {**p.to_dict(), "num_reads": cfg.num_reads, "seed": cfg.seed}
    url = endpoint.rstrip("/") + "/sample"
    last = None
    for attempt in range(1, attempts + 1):
        try:
            data = _post_json(url, payload, timeout)
        except urllib.error.HTTPError as exc:
            if exc.code < 500:
                raise SamplerProtocolError(f"{url} rejected the request: HTTP {exc.code}") from exc
            last = exc
        except (urllib.error.URLError, OSError) as exc:
            last = exc
        else:
            return _parse_response(p, data)
        logger.warning("sampler request to %s failed (attempt %d/%d): %s", url, attempt, attempts, last)
        if attempt < attempts:
            time.sleep(backoff * 2 ** (attempt - 1))
    raise RetryableSamplerError(f"{url} unreachable after {attempts} attempts: {last}")


class ExhaustiveSampler:
    def sample(self, problem: IsingProblem) -> SampleSet:
        return exhaustive_sample(problem)

    def __repr__(self):
        return "ExhaustiveSampler()"


class SimulatedAnnealingSampler:
    def __init__(self, config: SamplerConfig | None = None):
        self.config = config or SamplerConfig()

    def sample(self, problem: IsingProblem) -> SampleSet:
        return simulated_anneal(problem, self.config)

    def __repr__(self):
        return f"SimulatedAnnealingSampler({self.config!r})"


class RemoteSampler:
    def __init__(self, endpoint: str, config: SamplerConfig | None = None, attempts: int = 3,
                 timeout: float = 30.0):
        self.endpoint = endpoint
        self.config = config or SamplerConfig()
        self.attempts = attempts
        self.timeout = timeout

    def sample(self, problem: IsingProblem) -> SampleSet:
        return remote_sample(problem, self.endpoint, self.config, self.attempts, self.timeout)

    def __repr__(self):
        return f"RemoteSampler({self.endpoint!r}, {self.config!r})"
