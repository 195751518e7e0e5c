"""Slice the code window around a review comment and extract its attributes.

Walks one comment through the two per-comment feature steps: the +-10 line
context window (clamped to the file) and the 27-count change vector
comparing the commented revision with the merged one.
"""

from revclass.attributes import extract_attributes
from revclass.context import extract_context, extract_rcr
from revclass.types import FileRevisionPair

SOURCE = '''\
import socket

TIMEOUT = 30


def fetch(host, port):
    conn = socket.create_connection((host, port), TIMEOUT)
    data = conn.recv(4096)
    return data.decode("utf-8")


def retry_fetch(host, port):
    for attempt in range(3):
        return fetch(host, port)
'''

# merged revision: the reviewer asked for error handling around fetch()
DESTINATION = '''\
import socket

TIMEOUT = 30


def fetch(host, port):
    conn = socket.create_connection((host, port), TIMEOUT)
    try:
        data = conn.recv(4096)
    finally:
        conn.close()
    return data.decode("utf-8")


def retry_fetch(host, port):
    for attempt in range(3):
        try:
            return fetch(host, port)
        except OSError:
            continue
    raise ConnectionError(host)
'''

COMMENT_LINE = 14  # anchored on the bare `return fetch(...)` in the loop


def main() -> None:
    rcr = extract_rcr(SOURCE, COMMENT_LINE, file_path="net/client.py")
    print(f"comment on line {rcr.comment_line} -> "
          f"window lines {rcr.start_line}..{rcr.end_line}")

    context = extract_context(SOURCE, rcr)
    print("\ncontext fed to the code channel:")
    for offset, line in enumerate(context.text.split("\n"), start=rcr.start_line):
        marker = ">>" if offset == rcr.comment_line else "  "
        print(f" {marker} {offset:>3} {line}")

    pair = FileRevisionPair(
        file_path="net/client.py", source=SOURCE, destination=DESTINATION
    )
    result = extract_attributes(pair, rcr)
    print("\nnonzero attributes:")
    for name, value in result.vector.to_dict().items():
        if value:
            print(f"  {name:<28} {value}")


if __name__ == "__main__":
    main()
