# Every band energy, one level at a time
# --------------------------------------
#  Found states are lifted out of the way and the next solve runs in their
#  orthogonal complement. The sorted levels should reproduce the closed-form bands.

import numpy as np

from qeigen import (ExhaustiveSampler, TightBindingParams, allowed_momenta, build_tight_binding,
                    dispersion_multiset, exact_dispersion, solve_spectrum)

for params in (TightBindingParams(8, t2=1.0), TightBindingParams(8, delta=0.6)):
    phase = params.phase()
    result = solve_spectrum(build_tight_binding(params), ExhaustiveSampler())
    exact = dispersion_multiset(params, phase)
    print(f"{phase}: {params}")
    for k in allowed_momenta(phase, params.L):
        print(f"   k = {k:6.3f}   eps = {np.round(exact_dispersion(phase, k, params), 6)}")
    print("   sorted exact :", np.round(exact, 6))
    print("   sorted solver:", np.round(np.sort(result.energies), 6))
    V = result.states
    print(f"   max |difference| {np.max(np.abs(np.sort(result.energies) - exact)):.2e}, "
          f"max |V^T V - I| {np.max(np.abs(V.T @ V - np.eye(params.L))):.2e}\n")
