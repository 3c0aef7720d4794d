"""Convert a LaTeX eqnarray listing of signed code vectors into golden text.

Usage: python3 tools/extract_listing.py SOURCE.md OUT.txt [--first-label v000]

Reads terms like ``- \\left| 11000000 \\right>`` following each
``\\left| {vXYZ} \\right>&=&`` header and writes the stanza format used by
``pluscodes expand``: a ``|vXYZ> =`` line then four terms per line.
"""

import argparse
import re
import sys

HEADER = re.compile(r"\\left\|\s*\{(v[01]+)\}\s*\\right>\s*&=&")
TERM = re.compile(r"([+-])\s*\\left\|\s*([01]+)\s*\\right>")


def extract(text: str, first_label: str) -> str:
    start = text.find("{" + first_label + "}")
    if start < 0:
        raise SystemExit(f"label {first_label} not found")
    end = text.find(r"\end{eqnarray*}", start)
    body = text[text.rfind(r"\left|", 0, start) : end]
    stanzas: list[tuple[str, list[str]]] = []
    pos = 0
    while True:
        h = HEADER.search(body, pos)
        if not h:
            break
        nxt = HEADER.search(body, h.end())
        chunk = body[h.end() : nxt.start() if nxt else len(body)]
        stanzas.append((h.group(1), [f"{s}|{w}>" for s, w in TERM.findall(chunk)]))
        pos = h.end()
    out = []
    for label, terms in stanzas:
        out.append(f"|{label}> =")
        for i in range(0, len(terms), 4):
            out.append("  " + " ".join(terms[i : i + 4]))
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("source")
    ap.add_argument("out")
    ap.add_argument("--first-label", default="v000")
    args = ap.parse_args(argv)
    with open(args.source) as fh:
        text = fh.read()
    listing = extract(text, args.first_label)
    with open(args.out, "w") as fh:
        fh.write(listing)
    print(f"wrote {listing.count('|v')} stanzas to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
