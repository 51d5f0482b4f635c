"""Walkthrough: supplying a small-residue elementary tree via an extension file.

Only the printed residue-5 instances ship built in. Any other group whose
order is divisible by the residue characteristic needs its tree as data;
this demo loads one for D15 at residue characteristic 5 and glues two
copies along their rotation group.
"""

from pathlib import Path

from katograph import (
    Catalog,
    FieldContext,
    InputEdge,
    InputGraphOfGroups,
    InputVertex,
    check_input,
    count_cusps_direct,
    cusp_count_char0,
    cusp_count_general,
    census,
    cyclic,
    dihedral,
    load_extension_file,
    realize,
)

ext_path = Path(__file__).parent.parent / "fixtures" / "extension_d15_k5.json"
catalog = Catalog(load_extension_file(ext_path))
ctx = FieldContext(char_K=0, p=5, m=1)

tree = catalog.elementary_tree(dihedral(15), ctx)
print(f"# extension tree for D15 at residue characteristic 5")
for c in tree.cusps:
    print(f"  cusp {c.id}: {c.stabilizer}")

raw = InputGraphOfGroups(
    ctx,
    (InputVertex("a", dihedral(15)), InputVertex("b", dihedral(15))),
    (InputEdge("e0", ("a", "b"), cyclic(15)),),
)
checked = check_input(raw, catalog)
graph = realize(checked)

print("\n# D15 *_{C15} D15 realized")
for c in graph.cusps:
    print(f"  cusp {c.id}: at {c.base}  [{c.stabilizer}]")
print(f"  direct {count_cusps_direct(graph)}, "
      f"general {cusp_count_general(checked)}, "
      f"char-0 formula {cusp_count_char0(census(graph))}")
