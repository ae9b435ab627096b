# Swapping the sampler
# --------------------
#  The solver only needs something with ``sample(problem)``. Exhaustive search is
#  exact for small chains; annealing and a remote service stand in for hardware.

from qeigen import (ExhaustiveSampler, RemoteSampler, SamplerConfig, SimulatedAnnealingSampler,
                    TightBindingParams, build_tight_binding, jacobi_eigen, solve_lowest)
from qeigen.loopback import LoopbackServer

H = build_tight_binding(TightBindingParams(8, delta=0.6))
print(f"exact        {jacobi_eigen(H).values[0]:.10f}")

for sampler in (ExhaustiveSampler(), SimulatedAnnealingSampler(SamplerConfig(num_reads=20, sweeps=200))):
    result = solve_lowest(H, sampler)
    print(f"{type(sampler).__name__:<12} {result.energy:.10f}  ({result.iterations} iterations)")

# A local HTTP service speaking the JSON wire format, backed by annealing.
config = SamplerConfig(num_reads=20, sweeps=200)
with LoopbackServer(config) as server:
    result = solve_lowest(H, RemoteSampler(server.endpoint, config))
    print(f"remote       {result.energy:.10f}  via {server.endpoint}")
