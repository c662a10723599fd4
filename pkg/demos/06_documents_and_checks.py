"""The document formats and the verification surface.

Every computation is available on JSON documents (see docs/FORMAT.md); this
script round-trips the bundled free-flow model, runs two subcommands
programmatically, and shows the golden suite.  The same calls back the
`foliacoh` executable.
"""

import json
from pathlib import Path

from foliacoh import cli
from foliacoh.fixtures import run_fixtures

data = Path(cli.__file__).parent / "data"

# parse + serialize is the identity on shipped documents
doc = json.loads((data / "hopf_gstar.json").read_text())
model = cli.parse_gstar(doc["payload"])
assert cli.canonical_bytes(cli.gstar_to_payload(model)) == cli.canonical_bytes(doc["payload"])
print("round-trip on hopf_gstar.json: ok")

# equivalent of: foliacoh equivariant --input hopf_gstar.json --max-degree 8
code = cli.main(["equivariant", "--input", str(data / "hopf_gstar.json"),
                 "--max-degree", "8", "--format", "text"])
print("exit code:", code)

# equivalent of: foliacoh validate --input bad_q_odd_isolated_leaf.json
code = cli.main(["validate", "--input", str(data / "bad_q_odd_isolated_leaf.json"),
                 "--format", "text"])
print("exit code for the tampered model:", code, "(2 = invalid input)")

# the golden suite, exact comparisons only
outcomes = run_fixtures()
width = max(len(o.name) for o in outcomes)
for o in outcomes:
    print(f"  {o.name:<{width}}  {'pass' if o.passed else 'FAIL'}")
print("golden suite:", "all pass" if all(o.passed for o in outcomes) else "FAILURES")
