# When is a variable exactly compliant for every D?
#
# p~ is constant exactly when the Fourier transform of p vanishes at every
# nonzero multiple of 1/ln F. For a normal ln X the transform decays like
# exp(-2 pi^2 sigma^2 y^2), so small F is nearly perfect but never exactly.

import math

from glorq import LawParams, NormalLogModel, PerfectModel, model_probs, perfect_deviation, ssd

m = NormalLogModel(0.0, 1.0)
for F in (1.5, 2, 8, 32):
    print(f"normal sigma=1, F={F:<4} largest harmonic = {perfect_deviation(m, F):.3g}")

# A density whose transform has compact support [-K, K] is exactly compliant
# for every F with ln F < 1/K, and for no F beyond.
perfect = PerfectModel(2.0)
for lnF in (0.25, 0.5, 0.75):
    F = math.exp(lnF)
    probs = model_probs(perfect, LawParams(F, 10))
    print(f"K=2, ln F={lnF}: harmonic={perfect_deviation(perfect, F):.3g}  "
          f"SSD(D=10)={ssd(LawParams(F, 10), probs):.2g}")
