"""Constructive file-pair fixtures for the attribute extractor.

Each fixture is built to trigger specific attributes and carries hand-set
expectations for them (`expect` is exact, `expect_min` a lower bound).
Three variants per shape, with differing identifiers and filler so spans
and digests vary. The full 27-vector is separately checked against the
independent oracle in attr_oracle.py.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from revclass.types import FileRevisionPair


@dataclass
class Fixture:
    name: str
    source: str
    destination: str | None
    comment_line: int
    expect: dict[str, int] = field(default_factory=dict)
    expect_min: dict[str, int] = field(default_factory=dict)
    parse_failed: bool = False

    @property
    def pair(self) -> FileRevisionPair:
        return FileRevisionPair(
            file_path=f"{self.name}.py",
            source=self.source,
            destination=self.destination,
        )


FIXTURES: list[Fixture] = []


def _add(fixture: Fixture) -> None:
    FIXTURES.append(fixture)


_V = range(3)


# --- identity pairs: the whole diff-derived block must be zero -------------

for i in _V:
    src = (
        f"def ratio_{i}(a, b):\n"
        f"    if b == 0:\n"
        f"        return 0.0\n"
        f"    return a / b\n"
    )
    _add(
        Fixture(
            name=f"identity_{i}",
            source=src,
            destination=src,
            comment_line=2 + i,
            expect={
                "anyInserted": 0,
                "anyDeleted": 0,
                "getMovedSrcs": 0,
                "updatedSrcs": 0,
                "hasNewFile": 1,
                "hasOldFile": 1,
                "cyclomaticComplexity": 2,
                "commentLOC": 2 + i,
            },
        )
    )

# --- destination absent -----------------------------------------------------

for i in _V:
    src = f"def probe_{i}(x):\n    return x or {i}\n"
    _add(
        Fixture(
            name=f"dest_absent_{i}",
            source=src,
            destination=None,
            comment_line=1,
            expect={"hasNewFile": 0, "hasOldFile": 1, "anyInserted": 0, "anyDeleted": 0},
        )
    )

# --- statement insertion near the comment -----------------------------------

for i in _V:
    src = (
        f"def handle_{i}(req):\n"
        f"    data = parse(req)\n"
        f"    return data\n"
    )
    dst = (
        f"def handle_{i}(req):\n"
        f"    data = parse(req)\n"
        f"    log_access(req)\n"
        f"    return data\n"
    )
    _add(
        Fixture(
            name=f"insert_stmt_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect_min={"anyInserted": 1, "anythingInsertedIntoLine": 1},
            expect={"anyDeleted": 0, "getMovedSrcs": 0},
        )
    )

# --- whole-statement deletion inside the window ------------------------------

for i in _V:
    src = (
        f"def drain_{i}(queue):\n"
        f"    item = queue.pop()\n"
        f"    audit(item)\n"
        f"    return item\n"
    )
    dst = (
        f"def drain_{i}(queue):\n"
        f"    item = queue.pop()\n"
        f"    return item\n"
    )
    _add(
        Fixture(
            name=f"delete_stmt_{i}",
            source=src,
            destination=dst,
            comment_line=3,
            expect_min={
                "anyDeleted": 1,
                "anythingInLineDeleted": 1,
                "entireLineDeleted": 1,
            },
            expect={"anyInserted": 0},
        )
    )

# --- variable rename: several leaf updates -----------------------------------

for i in _V:
    src = (
        f"def fold_{i}(items):\n"
        f"    acc = 0\n"
        f"    for item in items:\n"
        f"        acc = acc + item\n"
        f"    return acc\n"
    )
    _add(
        Fixture(
            name=f"rename_{i}",
            source=src,
            destination=src.replace("acc", "running"),
            comment_line=2,
            expect_min={"updatedSrcs": 2, "anythingInLineUpdated": 1},
            expect={"anyInserted": 0, "anyDeleted": 0, "getMovedSrcs": 0},
        )
    )

# --- assignment right-hand side constant update -------------------------------

for i in _V:
    base = 10 * (i + 1)
    src = f"def budget_{i}():\n    limit = {base}\n    return limit\n"
    dst = f"def budget_{i}():\n    limit = {base + 5}\n    return limit\n"
    _add(
        Fixture(
            name=f"const_update_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={
                "updatedSrcs": 1,
                "updatedValueAssignments": 1,
                "anythingInLineUpdated": 1,
                "anyInserted": 0,
                "anyDeleted": 0,
            },
        )
    )

# --- call argument update ------------------------------------------------------

for i in _V:
    src = f"def ping_{i}(host):\n    return send(host, {i + 1}, retries=2)\n"
    dst = f"def ping_{i}(host):\n    return send(host, {i + 7}, retries=2)\n"
    _add(
        Fixture(
            name=f"call_arg_update_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={"updatedFunctionArguments": 1, "updatedSrcs": 1},
        )
    )

# --- string literal update ------------------------------------------------------

for i in _V:
    src = f'def greet_{i}():\n    msg = "hello {i}"\n    return msg\n'
    dst = f'def greet_{i}():\n    msg = "welcome {i}"\n    return msg\n'
    _add(
        Fixture(
            name=f"string_update_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={"stringsUpdated": 1, "updatedValueAssignments": 1},
        )
    )

# --- magic string replaced by a name --------------------------------------------

for i in _V:
    src = f'def mode_{i}(client):\n    client.start("fast-retry-{i}")\n    return client\n'
    dst = f"def mode_{i}(client):\n    client.start(RETRY_POLICY)\n    return client\n"
    _add(
        Fixture(
            name=f"magic_string_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={"magicStringsReplaced": 1},
        )
    )

# --- if statement inserted -------------------------------------------------------

for i in _V:
    src = f"def guard_{i}(x):\n    process(x)\n    return x\n"
    dst = (
        f"def guard_{i}(x):\n"
        f"    if x is None:\n"
        f"        return None\n"
        f"    process(x)\n"
        f"    return x\n"
    )
    _add(
        Fixture(
            name=f"insert_if_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect_min={"insertedIfConditions": 1, "anythingInsertedIntoLine": 1},
            expect={"deletedIfConditions": 0},
        )
    )

# --- if statement deleted ----------------------------------------------------------

for i in _V:
    src = (
        f"def relax_{i}(x):\n"
        f"    if x < 0:\n"
        f"        raise ValueError(x)\n"
        f"    return x * {i + 2}\n"
    )
    dst = f"def relax_{i}(x):\n    return x * {i + 2}\n"
    _add(
        Fixture(
            name=f"delete_if_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect_min={
                "deletedIfConditions": 1,
                "anythingInLineDeleted": 1,
                "entireLineDeleted": 1,
            },
            expect={"insertedIfConditions": 0},
        )
    )

# --- else branch added ---------------------------------------------------------------

for i in _V:
    src = (
        f"def pick_{i}(flag):\n"
        f"    if flag:\n"
        f"        return 'yes'\n"
    )
    dst = (
        f"def pick_{i}(flag):\n"
        f"    if flag:\n"
        f"        return 'yes'\n"
        f"    else:\n"
        f"        return 'no-{i}'\n"
    )
    _add(
        Fixture(
            name=f"insert_else_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={"elseInserted": 1, "elseDeleted": 0, "insertedIfConditions": 0},
        )
    )

# --- else branch removed ----------------------------------------------------------------

for i in _V:
    src = (
        f"def trim_{i}(flag):\n"
        f"    if flag:\n"
        f"        return 'yes'\n"
        f"    else:\n"
        f"        return 'no-{i}'\n"
    )
    dst = (
        f"def trim_{i}(flag):\n"
        f"    if flag:\n"
        f"        return 'yes'\n"
        f"    return 'no-{i}'\n"
    )
    _add(
        Fixture(
            name=f"delete_else_{i}",
            source=src,
            destination=dst,
            comment_line=4,
            expect={"elseDeleted": 1, "elseInserted": 0},
        )
    )

# --- try/except wrapped around existing code ----------------------------------------------

for i in _V:
    src = f"def push_{i}(msg):\n    deliver(msg)\n    return True\n"
    dst = (
        f"def push_{i}(msg):\n"
        f"    try:\n"
        f"        deliver(msg)\n"
        f"    except OSError:\n"
        f"        return False\n"
        f"    return True\n"
    )
    _add(
        Fixture(
            name=f"insert_try_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={"insertedTryCatch": 1, "removedTryCatch": 0},
        )
    )

# --- try/except unwrapped -------------------------------------------------------------------

for i in _V:
    src = (
        f"def pull_{i}(msg):\n"
        f"    try:\n"
        f"        deliver(msg)\n"
        f"    except OSError:\n"
        f"        return False\n"
        f"    return True\n"
    )
    dst = f"def pull_{i}(msg):\n    deliver(msg)\n    return True\n"
    _add(
        Fixture(
            name=f"remove_try_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={"removedTryCatch": 1, "insertedTryCatch": 0},
        )
    )

# --- assert added ------------------------------------------------------------------------------

for i in _V:
    src = f"def fetch_{i}(path):\n    data = read(path)\n    return data\n"
    dst = (
        f"def fetch_{i}(path):\n"
        f"    data = read(path)\n"
        f"    assert data is not None\n"
        f"    return data\n"
    )
    _add(
        Fixture(
            name=f"insert_assert_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect={"insertedAssertConditions": 1},
        )
    )

# --- two sibling functions swapped: pure moves ---------------------------------------------------

for i in _V:
    src = (
        f"def alpha_{i}():\n"
        f"    return {i + 1}\n"
        f"\n"
        f"def omega_{i}():\n"
        f"    return {i + 2}\n"
    )
    dst = (
        f"def omega_{i}():\n"
        f"    return {i + 2}\n"
        f"\n"
        f"def alpha_{i}():\n"
        f"    return {i + 1}\n"
    )
    _add(
        Fixture(
            name=f"func_swap_{i}",
            source=src,
            destination=dst,
            comment_line=1,
            expect_min={
                "getMovedSrcs": 2,
                "entireLineMoved": 2,
                "anythingInLineMoved": 1,
                "anythingMovedIntoLine": 1,
            },
            expect={"anyInserted": 0, "anyDeleted": 0, "updatedSrcs": 0},
        )
    )

# --- statement moved from outside the window into it ---------------------------------------------
# comment on line 2 -> window [1, 12]; the moved call starts around line 17

for i in _V:
    filler = "".join(
        f"def filler_{i}_{j}():\n    return {j}\n\n" for j in range(3)
    )
    src = (
        f"def setup_{i}(cfg):\n"
        f"    a = read(cfg)\n"
        f"    b = clean(a)\n"
        f"    return b\n"
        f"\n"
        f"{filler}"
        f"def tail_{i}():\n"
        f"    start_engine_{i}()\n"
        f"    return None\n"
    )
    dst = (
        f"def setup_{i}(cfg):\n"
        f"    a = read(cfg)\n"
        f"    start_engine_{i}()\n"
        f"    b = clean(a)\n"
        f"    return b\n"
        f"\n"
        f"{filler}"
        f"def tail_{i}():\n"
        f"    return None\n"
    )
    _add(
        Fixture(
            name=f"move_into_window_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            expect_min={"getMovedSrcs": 1, "anythingMovedIntoLine": 1},
            expect={"anythingInLineMoved": 0, "anyInserted": 0, "anyDeleted": 0},
        )
    )

# --- if bodies exchanged between two sibling ifs: the Block under the if moves --------------------

for i in _V:
    src = (
        f"def route_{i}(n):\n"
        f"    if alpha_check_{i}(n):\n"
        f"        prepare_{i}()\n"
        f"        dispatch_{i}()\n"
        f"    else:\n"
        f"        keep_a_{i}()\n"
        f"    if beta_check_{i}(n):\n"
        f"        rollback_{i}()\n"
        f"        notify_{i}()\n"
        f"    else:\n"
        f"        keep_b_{i}()\n"
    )
    dst = (
        f"def route_{i}(n):\n"
        f"    if alpha_check_{i}(n):\n"
        f"        rollback_{i}()\n"
        f"        notify_{i}()\n"
        f"    else:\n"
        f"        keep_a_{i}()\n"
        f"    if beta_check_{i}(n):\n"
        f"        prepare_{i}()\n"
        f"        dispatch_{i}()\n"
        f"    else:\n"
        f"        keep_b_{i}()\n"
    )
    _add(
        Fixture(
            name=f"moved_if_block_{i}",
            source=src,
            destination=dst,
            comment_line=3,
            expect_min={"movedBlocksInIfConditions": 1, "getMovedSrcs": 1},
            expect={"anyInserted": 0, "anyDeleted": 0},
        )
    )

# --- cyclomatic complexity spot values (identity pairs) -------------------------------------------

_CC_BODIES = [
    # straight line: 1
    ("def s(x):\n    y = x + 1\n    return y\n", 1),
    # if + while + boolop pair: 1 + 1 + 1 + 1 = 4
    (
        "def s(x):\n"
        "    if x > 0 and x < 9:\n"
        "        return 1\n"
        "    while x:\n"
        "        x -= 1\n"
        "    return x\n",
        4,
    ),
    # for + except + ternary + comprehension filter: 1+1+1+1+1 = 5
    (
        "def s(items):\n"
        "    try:\n"
        "        picked = [i for i in items if i]\n"
        "    except TypeError:\n"
        "        picked = []\n"
        "    for i in picked:\n"
        "        use(i)\n"
        "    return picked if picked else None\n",
        5,
    ),
]

for i, (body, cc) in enumerate(_CC_BODIES):
    _add(
        Fixture(
            name=f"cc_value_{i}",
            source=body,
            destination=body,
            comment_line=1,
            expect={"cyclomaticComplexity": cc, "anyInserted": 0, "anyDeleted": 0},
        )
    )

# --- destination fails to parse: diff block zeroed, flag raised -----------------------------------

for i in _V:
    src = f"def ok_{i}(x):\n    if x:\n        return 1\n    return 0\n"
    dst = f"def broken_{i}(x)\n    return x\n"  # missing colon
    _add(
        Fixture(
            name=f"parse_fail_dst_{i}",
            source=src,
            destination=dst,
            comment_line=2,
            parse_failed=True,
            expect={
                "anyInserted": 0,
                "anyDeleted": 0,
                "getMovedSrcs": 0,
                "updatedSrcs": 0,
                "cyclomaticComplexity": 2,
                "hasNewFile": 1,
                "hasOldFile": 1,
            },
        )
    )

# --- source fails to parse -------------------------------------------------------------------------

for i in _V:
    src = f"def broken_{i}(x:\n    return x\n"
    dst = f"def fixed_{i}(x):\n    return x\n"
    _add(
        Fixture(
            name=f"parse_fail_src_{i}",
            source=src,
            destination=dst,
            comment_line=1,
            parse_failed=True,
            expect={"cyclomaticComplexity": 0, "hasNewFile": 1, "hasOldFile": 1},
        )
    )

# --- larger mixed edits: oracle equality only -------------------------------------------------------

for i in _V:
    src = (
        f"import os\n"
        f"\n"
        f"def load_{i}(path):\n"
        f"    with open(path) as fh:\n"
        f"        raw = fh.read()\n"
        f"    value = int(raw)\n"
        f"    limit = {100 + i}\n"
        f"    if value > limit:\n"
        f"        report('over')\n"
        f"    return value\n"
        f"\n"
        f"def shutdown_{i}():\n"
        f"    cleanup()\n"
    )
    dst = (
        f"import os\n"
        f"import sys\n"
        f"\n"
        f"def load_{i}(path):\n"
        f"    with open(path) as fh:\n"
        f"        raw = fh.read()\n"
        f"    value = int(raw)\n"
        f"    limit = {200 + i}\n"
        f"    if value > limit:\n"
        f"        report('overflow')\n"
        f"        sys.exit(1)\n"
        f"    return value\n"
    )
    _add(
        Fixture(
            name=f"mixed_{i}",
            source=src,
            destination=dst,
            comment_line=7,
            expect_min={"anyInserted": 1, "updatedSrcs": 1, "anyDeleted": 1},
        )
    )
