# How the refinement converges
# ----------------------------
#  Each accepted step lowers the Rayleigh quotient. The step scale gamma shrinks
#  when a move fails, so later corrections resolve finer amplitudes.

from qeigen import ExhaustiveSampler, TightBindingParams, build_tight_binding, jacobi_eigen, solve_lowest

params = TightBindingParams(10, delta=0.6)
H = build_tight_binding(params)
e_exact = jacobi_eigen(H).values[0]

result = solve_lowest(H, ExhaustiveSampler())
print(f"{'iter':>5} {'energy':>16} {'D':>10} {'gamma':>10}")
for iteration, energy, gamma in result.trace:
    print(f"{iteration:5d} {energy:16.12f} {abs(energy - e_exact):10.3e} {gamma:10.3e}")
print(f"stopped: {result.stop_reason} after {result.iterations} iterations")
