# Simulated draws converge on the model probabilities
#
# Draws are reproducible from the seed. With a million samples the observed
# rank frequencies sit within a few standard errors of model_probs.

import numpy as np

from glorq import LawParams, NormalLogModel, histogram, model_probs, sample

m = NormalLogModel(7.217, 1.8316)
n = 1_000_000
s = sample(m, n, seed=42)
for F in (2, 8, 32):
    p = LawParams(F, 5)
    prob = model_probs(m, p)
    freq = histogram(p, s).frequencies
    z = (freq - prob) / np.sqrt(prob * (1 - prob) / n)
    print(f"F={F:<3} max |z| = {np.abs(z).max():.2f}")

# The ln-space series can hold draws far beyond the double range.
wide = sample(NormalLogModel(0, 500), 10_000, seed=1)
print(histogram(LawParams(2, 5), wide).frequencies)
