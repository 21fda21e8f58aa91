# Rank probabilities of parametric models
#
# If ln X has density p, the rank probabilities of X depend only on the
# periodized density p~(x) = sum_j p(x + j ln F) on [0, ln F). X follows the
# law exactly when p~ is flat.

import numpy as np

from glorq import (GumbelLogModel, LawParams, NormalLogModel, integral_bound, model_probs,
                   periodize, ssd)

normal = NormalLogModel(7.217, 1.8316)
gumbel = GumbelLogModel(7.836, 1.0724)

for m in (normal, gumbel):
    print(m)
    for F in (2, 8, 32):
        p = LawParams(F, 5)
        probs = model_probs(m, p)
        print(f"  F={F:<3}", np.round(probs, 8), f"SSD={ssd(p, probs):.2g}")

# How flat is p~? Its spread relative to 1/ln F tracks the SSD.
for F in (2, 8, 32):
    pd = periodize(gumbel, F, 4096)
    print(f"Gumbel F={F}: p~ in [{pd.values.min():.4f}, {pd.values.max():.4f}], "
          f"1/ln F = {1 / np.log(F):.4f}")

# D * SSD never exceeds an integral of the squared deviation of p~, and
# approaches it as D grows.
F = 8
bound = integral_bound(gumbel, F)
for D in (2, 5, 20, 100, 512):
    p = LawParams(F, D)
    print(f"D={D:<4} D*SSD={D * ssd(p, model_probs(gumbel, p)):.6f}   bound={bound:.6f}")
