"""Independent PEG edge enumeration for a .pa program, checked against palab."""
import re
import sys

program_path = sys.argv[1]
variables, statements = [], set()
with open(program_path) as f:
    for line in f:
        for stmt in line.split("#")[0].split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            m = re.fullmatch(r"(\*?)(\w+'*)\s*=\s*([&*]?)(\w+'*)", stmt)
            assert m, stmt
            star, lhs, op, rhs = m.groups()
            for v in (lhs, rhs):
                if v not in variables:
                    variables.append(v)
            statements.add((star, lhs, op, rhs))

edges = set()
for star, lhs, op, rhs in statements:
    src = ("*" if star else "") + lhs
    dst = {"&": "&", "*": "*", "": ""}[op] + rhs
    label = "sa" if star else {"&": "r", "*": "as", "": "s"}[op]
    edges.add((src, label, dst))
    edges.add((dst, "-" + label, src))
for v in variables:
    for a, b in (("&" + v, v), (v, "*" + v)):
        edges.add((a, "d", b))
        edges.add((b, "-d", a))

expected = 2 * len(statements) + 4 * len(variables)
assert len(edges) == expected, (len(edges), expected)
print(f"{len(variables)} variables, {len(edges)} edges")
if program_path.endswith("intro.pa"):
    assert (len(variables), len(edges)) == (4, 22)

