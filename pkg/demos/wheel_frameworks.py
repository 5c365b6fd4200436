"""The rank-4 wheel has many inequivalent frameworks.

Besides the wheel itself, every way of turning M(W4) into a signed graph
(pinches, curlings) or a lift with a free loop shows up as a class.

Run:  python3 demos/wheel_frameworks.py [--jobs N]
"""

import argparse
from collections import Counter

from quasigraphic import graph as gr
from quasigraphic.frameworks import enumerate_frameworks
from quasigraphic.matroid import cycle_matroid

ap = argparse.ArgumentParser()
ap.add_argument("--jobs", type=int, default=1)
args = ap.parse_args()

w4 = gr.wheel_graph(4)
res = enumerate_frameworks(cycle_matroid(w4), jobs=args.jobs)
print(f"M(W4): {len(res.frameworks)} classes, {len(res.all_graphs())} labelled frameworks")
print(f"search mode {res.mode}; stats {res.stats}")

kinds = Counter()
for fw in res.frameworks:
    balanced = len(fw.biased.balanced_masks) == len(fw.biased.cycle_masks)
    kind = "balanced" if balanced else ("frame+lift" if fw.is_frame and fw.is_lift else "frame" if fw.is_frame else "lift")
    kinds[(fw.graph.n, kind, len(fw.graph.loops()))] += 1
print("classes by (vertices, representation, loops):")
for key, count in sorted(kinds.items()):
    print(f"  {key}: {count}")
print(f"at least 2^4 = 16 classes: {len(res.frameworks) >= 16}")
