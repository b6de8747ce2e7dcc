"""From national make/use tables to the two-region input-output system.

Runs the industry-technology transformation, regionalizes with the Flegg
location quotient, and prints the shrinkage pattern: a small region keeps
only part of its input needs local, more so in industries where it is
specialized.
"""

import numpy as np

from epiecon import presets
from epiecon.econio import MakeUse, make_use_to_industry, regionalize
from epiecon.industries import INDUSTRY_NAMES

cfg = presets.demo_make_use()
mu = MakeUse(**{k: np.asarray(cfg[k]) for k in ("V", "U", "q", "g", "h", "f_c")})
Z, A, f, x = make_use_to_industry(mu)
print(f"national system: {len(x)} industries, gross output {x.sum():,.0f}")
print(f"technical coefficient column sums: {A.sum(0).min():.2f} .. {A.sum(0).max():.2f}")

io = regionalize(A, f, np.asarray(cfg["y_region"]), np.asarray(cfg["y_nation"]),
                 delta=cfg["delta"], x=x)
print(f"\nlocal region output share: {io.x_local.sum() / io.x.sum():.1%}")

print("\nlocal sourcing (diagonal rho) for selected industries:")
share = np.asarray(cfg["y_region"]) / np.asarray(cfg["y_nation"])
for k in np.argsort(share)[[0, 1, -2, -1]]:
    print(f"  {INDUSTRY_NAMES[k]:<40s} GDP share {share[k]:>5.1%}  "
          f"rho_kk {io.rho_local[k, k]:.2f}")

row = io.Z_ll.sum(1) + io.Z_lr.sum(1) + io.f_ll.sum(1) + io.f_lr.sum(1)
print(f"\nrow identity residual: {np.max(np.abs(row - io.x_local) / io.x_local):.1e}")
print(f"value added, local: {io.va_local.sum():,.0f}; rest: {io.va_rest.sum():,.0f}")

io.to_dataframe().to_csv("demos/output_io_table.csv")
print("wrote demos/output_io_table.csv")
