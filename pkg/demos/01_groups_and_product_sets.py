"""Build small groups, take product sets, and measure doubling.

The doubling ratio |A*A|/|A| is the basic size statistic of this toolkit:
sets with ratio strictly below 2 carry coset structure, and everything
downstream quantifies that.
"""

from smalldoubling import (
    cyclic,
    dihedral,
    direct_product,
    doubling_ratio,
    enumerate_subgroups,
    product_set,
    symmetric,
)

Z12 = cyclic(12)
S3 = symmetric(3)
K4 = direct_product([cyclic(2), cyclic(2)])

print("Some groups and their subgroup lattices")
for G in (Z12, S3, K4, dihedral(4)):
    sizes = [H.cardinality for H in enumerate_subgroups(G)]
    kind = "abelian" if G.is_abelian else "nonabelian"
    print(f"  {G.name:7} order {G.order:2}  {kind:10}  subgroup sizes {sizes}")

print()
print("Product sets in Z12")
A = Z12.subset([0, 1, 2])
B = Z12.subset([0, 6])
print(f"  A = {A.elements()}, B = {B.elements()}")
print(f"  A+B = {product_set(Z12, A, B).elements()}")
print(f"  A+A = {product_set(Z12, A, A).elements()}")

print()
print("Doubling ratios: arithmetic progressions vs subgroups vs generic sets")
examples = [
    ("progression {0..4} in Z20", cyclic(20), range(5)),
    ("subgroup {0,4,8} in Z12", Z12, [0, 4, 8]),
    ("coset {1,5,9} in Z12", Z12, [1, 5, 9]),
    ("generic {0,1,5} in Z12", Z12, [0, 1, 5]),
    ("reflection pair in S3", S3, [0, 2]),
]
for label, G, elems in examples:
    rep = doubling_ratio(G, G.subset(elems))
    print(f"  {label:28} ratio {str(rep.ratio):5}  best epsilon {rep.epsilon}")

print()
print("A set doubles like a group exactly when it is a coset: ratio 1 above.")
