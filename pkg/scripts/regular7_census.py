"""Census of 3-regular tournaments on 7 vertices: chi, automorphisms, and
which class contains each of the 128 Fano orientations."""
from __future__ import annotations

import collections
import json

from dichromatic.canon import canonical_code
from dichromatic.claims import search_figure1
from dichromatic.digraph import Digraph
from dichromatic.generators import gen_fano


def main() -> None:
    rep = search_figure1()
    codes = [canonical_code(Digraph(7, frozenset(tuple(a) for a in c["arcs"]))) for c in rep["classes"]]
    fano_hits = collections.Counter(codes.index(canonical_code(gen_fano(mask))) for mask in range(128))
    print(json.dumps({
        "classes": [{"chi": c["chi"], "automorphisms": c["automorphisms"], "fano_orientations": fano_hits.get(i, 0)}
                    for i, c in enumerate(rep["classes"])],
        "orbit_sum": rep["orbit_sum"],
        "labeled_count": rep["labeled_count"],
    }, indent=2))


if __name__ == "__main__":
    main()
