"""Homology gradients along finite-index chains: two regimes side by side.

For the integers, the kernel chain nZ has first Betti number 1 at every
level, so the per-index ratio 1/n falls to zero.  For the product of the
integers with a rank-2 free group, the abelian kernel chain at moduli
n = 2, 3, 4 has indices 8, 27, 64 and exact Betti ratios (n^2 + 2)/n^3 —
again falling.  Every number printed here is exact rational arithmetic:
homology comes from integer Smith normal forms of Fox-derivative boundary
matrices over the enumerated coset action, not from floating point.
"""

from chainlab import gradient_series, parse_chain_spec
from chainlab.homology import estimate_trend
from chainlab.words import Presentation


def show(title, chain):
    betti = gradient_series(chain, kind="betti_q")
    torsion = gradient_series(chain, kind="log_torsion")
    print(f"\n{title}")
    print(f"{'level':>14} {'index':>6} {'b1':>4} {'ratio':>8}   log|torsion|")
    for b, t in zip(betti.points, torsion.points):
        print(f"{b.label:>14} {b.index:>6} {b.value:>4} {str(b.ratio):>8}   {t.value}")
    trend = estimate_trend(betti)
    print(
        f"trend: {trend.monotonicity}, last ratio {trend.last_ratio:.4f}, "
        f"extrapolated limit {trend.extrapolated_limit:+.4f} ({trend.evidence})"
    )


integers = Presentation(("a",), ())
show("Z with kernels nZ, n = 1..10", parse_chain_spec("abelian:n=1..10", integers))

product = Presentation(("a", "b", "c"), ((1, 2, -1, -2), (1, 3, -1, -3)))
show("Z x F2 with abelian kernels, n = 2, 3, 4", parse_chain_spec("abelian:n=2,3,4", product))

print(
    "\nBoth ratios shrink toward zero; the second group is inner amenable\n"
    "but not amenable, and its gradient vanishes along this chain exactly\n"
    "as along any other: cheap rebuildings kill the torsion growth too,\n"
    "which is why every log-torsion entry above is exactly 0."
)
