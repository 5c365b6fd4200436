"""Why U3,7 and U4,7 are excluded minors for quasi-graphic matroids.

Run:  python3 demos/uniform_excluded_minors.py
"""

from quasigraphic import graph as gr
from quasigraphic.biased import derive_bias, find_signature
from quasigraphic.frameworks import decide_quasi_graphic, enumerate_frameworks, is_excluded_minor
from quasigraphic.matroid import uniform


def show(res):
    for group in res.unlabeled_classes():
        g = group[0]
        edges = " ".join(f"{u}-{v}" for _, u, v in sorted(g.edges, key=lambda e: (e[1], e[2])))
        print(f"    {len(group):3d} labelled copies of a {g.n}-vertex graph: {edges}")


for r in (3, 4):
    six, seven = uniform(r, 6), uniform(r, 7)
    res = enumerate_frameworks(six)
    print(f"U{r},6 has {len(res.all_graphs())} frameworks in {len(res.frameworks)} classes")
    show(res)

    # every framework of U{r},7 would restrict to one of the above; none extends
    d = decide_quasi_graphic(seven)
    print(f"U{r},7 quasi-graphic? {d.quasi_graphic}  ({d.justification})")
    rep = is_excluded_minor(seven)
    minors = sorted({k.split()[0] for k, v in rep.minors.items() if v.quasi_graphic})
    print(f"  all single-element {' and '.join(minors)} minors are quasi-graphic -> excluded minor: {rep.excluded}")
    print()

# the 2K3 graph, shown with its derived bias: every cycle is unbalanced
two_k3 = gr.k_multiply(gr.cycle_graph(3), 2).relabeled([f"e{i}" for i in range(6)])
b = derive_bias(two_k3, uniform(3, 6))
print(f"2K3 over U3,6: {len(b.balanced)} balanced cycles out of {len(b.cycle_masks)};"
      f" signed graph? {find_signature(b) is not None}")
