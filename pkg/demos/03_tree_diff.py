"""Show the edit script the tree differ produces for small source changes.

Each case parses both revisions, matches the trees, and prints the derived
insert/delete/move/update actions. Updates keep a node in place with a new
value; moves keep its subtree intact under a new parent.
"""

from revclass.astdiff import diff_asts
from revclass.pytree import parse_source

CASES = [
    (
        "guard added around a call",
        "def save(item):\n    db.write(item)\n",
        "def save(item):\n    if item.valid:\n        db.write(item)\n",
    ),
    (
        "constant and comparison updated",
        "def ready(q):\n    return len(q) > 10\n",
        "def ready(q):\n    return len(q) >= 25\n",
    ),
    (
        "helper moved below its caller",
        "def helper():\n    return 1\n\n\ndef run():\n    return helper()\n",
        "def run():\n    return helper()\n\n\ndef helper():\n    return 1\n",
    ),
]


def describe(node) -> str:
    value = f" {node.value!r}" if node.value else ""
    return f"{node.kind}{value} (line {node.start_line})"


def main() -> None:
    for title, source, destination in CASES:
        mapping = diff_asts(parse_source(source), parse_source(destination))
        print(f"{title}: {len(mapping.actions)} actions")
        for action in mapping.actions:
            node = action.src if action.src is not None else action.dst
            line = f"  {action.kind.value:<7} {describe(node)}"
            if action.kind.value == "update":
                line += f" -> {action.dst.value!r}"
            print(line)
        print()


if __name__ == "__main__":
    main()
