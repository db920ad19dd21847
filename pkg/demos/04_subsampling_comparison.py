"""Jackknife versus node subsampling.

Subsampling estimates the variance from statistics on induced subgraphs of b
uniformly chosen nodes, rescaled by b/n for root-n statistics.  It needs a
tuning parameter; the jackknife does not.  This script reproduces the
qualitative finding at desk scale: at b = 0.2n the two largely agree, at
b = 0.05n subsampling overestimates, and the jackknife is faster because the
leave-one-out counts are incremental.
"""

import time

from netjack import (
    efron_stein_check,
    jackknife,
    parse_statistic,
    benchmark_sbm_model,
    sample_graph,
    subsample_variance,
)

model = benchmark_sbm_model()
g = sample_graph(model, 1000, seed=21).graph
tri = parse_statistic("triangle-density", rho=1.0)

start = time.perf_counter()
jk = jackknife(g, tri)
jk_time = time.perf_counter() - start
print(f"jackknife:           var_hat {jk.var_hat:.3e}   ({jk_time * 1e3:6.0f} ms)")

for b_frac in (0.05, 0.1, 0.2):
    b = round(b_frac * g.n)
    start = time.perf_counter()
    sub = subsample_variance(g, tri, b=b, B=500, seed=31)
    sub_time = time.perf_counter() - start
    print(f"subsample b={b_frac:4.2f}n:   var_hat {sub.var_hat:.3e}   "
          f"({sub_time * 1e3:6.0f} ms, {sub.dropped} dropped)")

# In expectation the jackknife sits at or above the truth (Efron-Stein-type
# conservativeness); a quick Monte Carlo check makes that visible.
report = efron_stein_check(model, 100, parse_statistic("triangle-density"),
                           reps=100, master_seed=5)
print(f"\nconservativeness at n=100 over {report.reps} replicates:")
print(f"  mean jackknife var {report.mean_jk:.3e}  vs  empirical var {report.emp_var:.3e}"
      f"  (MCSE {report.mcse:.1e}) -> conservative: {report.conservative}")
