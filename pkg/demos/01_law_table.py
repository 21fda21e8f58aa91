# The general law of relative quantities
#
# Pick a scale factor F > 1 and split every interval [F^k, F^(k+1)) into D
# equal-width pieces. A positive number gets the rank d of the piece it falls
# in. For F = 10 and D = 9 the rank is simply the leading decimal digit, so
# Benford's law is the special case L_{10,9}.

import numpy as np

from glorq import LawParams, flat_ssd, law_bounds, law_vector, rank, s_of_f

benford = law_vector(LawParams(10, 9))
print("Benford first-digit law:")
print(np.round(benford, 4))

# The same formula works for any F and D. Probabilities always decrease with
# the rank, and the ratio of the last to the first tends to 1/F.

for F in (2, 8, 32):
    print(f"L_{{{F},5}}:", np.round(law_vector(LawParams(F, 5)), 8))

# Each value sits between simple bounds.
p = LawParams(8, 5)
print("bounds on L_{8,5}(1):", law_bounds(p, 1))

# Ranks are invariant under multiplication by F.
x = 314.159
print("rank of x and 8x:", rank(p, x), rank(p, 8 * x))

# A sequence with every rank equally frequent is as far from the law as a
# well-spread sequence can be. Its SSD times D approaches S(F) - 1.
for F in (1.1, 2, 8, 32):
    print(f"F={F:<5} S(F)-1={s_of_f(F) - 1:.3g}   D*SSD(flat, D=1000)={flat_ssd(LawParams(F, 1000)):.3g}")
