# Checking a data set against the law
#
# Here a synthetic "population" column stands in for real data. It is
# lognormal with a wide spread, so it should follow the law closely for F = 2
# and less closely for large F.

import tempfile
from pathlib import Path

import numpy as np

from glorq import RunConfig, analyze, emit, ingest

rng = np.random.default_rng(1)
pops = np.exp(rng.normal(7.2, 1.8, 3000)).round() + 1

path = Path(tempfile.mkdtemp()) / "towns.csv"
path.write_text("town,pop\n" + "\n".join(f"t{i},{int(v)}" for i, v in enumerate(pops)))

s = ingest(path, column="pop")
print(s, s.meta)

# One report per F. The footer shows R_0.01, the max/min ratio after trimming
# 1% from each end, and log_F of it. A value of at least 3 means the data
# spans enough orders of F for the law to be a sensible expectation.
print(emit(analyze(s, RunConfig(f_list=(2, 8, 32), d=5)), "table"))
