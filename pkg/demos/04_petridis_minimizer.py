"""The Petridis minimizer: one subset controls all left translates.

If |A*S| <= alpha |A|, some nonempty X inside A satisfies
|C*X*S| <= alpha |C*X| for every finite C.  The witness is simply the
X that minimizes |X*S|/|X|, and the toolkit verifies the conclusion
against every nonempty C exhaustively.
"""

from fractions import Fraction

from smalldoubling import (
    cyclic,
    petridis_minimizer,
    petridis_verify,
    product_set,
    quaternion,
)

for G, a_elems, s_elems in (
    (cyclic(8), [0, 1], [0, 1]),
    (cyclic(12), [0, 1, 6], [0, 6]),
    (quaternion(2), [0, 4], [0, 1, 4]),
):
    A, S = G.subset(a_elems), G.subset(s_elems)
    alpha = Fraction(product_set(G, A, S).cardinality, A.cardinality)
    res = petridis_minimizer(G, A, S)
    ver = petridis_verify(G, res, "exhaustive", budget=(1 << G.order) - 1)
    print(f"{G.name}: A = {A.elements()}, S = {S.elements()}")
    print(f"  |A*S|/|A| = {alpha}, minimizer X = {res.X.elements()} with K = {res.K}")
    print(
        f"  verified |C*X*S| <= K|C*X| for all {ver.checked} nonempty C "
        f"(equality at C = {{e}}: {ver.equality_at_identity})"
    )
    assert ver.ok and res.K <= alpha
    print()

print("K is never above alpha, and C = {e} always achieves equality.")
