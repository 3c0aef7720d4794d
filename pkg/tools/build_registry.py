"""Regenerate the derived and catalog registry records.

Usage: python3 tools/build_registry.py [--out src/pluscodes/data/registry]

Records with provenance ``paper`` are hand transcriptions and are never
touched here.
"""

import argparse
import itertools
import sys
from pathlib import Path

from pluscodes.codes import (
    LinearCode,
    combine,
    hamming_check,
    make_bch_check,
    make_cyclic_check,
    make_extended_hamming,
    make_golay,
    make_hamming,
    make_reed_muller_1,
    make_repetition,
    min_distance,
)
from pluscodes.cssplus import build_from_weakly_self_dual, verify_plus
from pluscodes.gf2 import BinMatrix
from pluscodes.registry import Entry
from pluscodes.search import search_displacements

TOOL = "python3 tools/build_registry.py"


def classical(name, code: LinearCode, description, command=TOOL):
    return Entry(
        name=name,
        kind="classical",
        n=code.n,
        k=code.k,
        d=min_distance(code),
        provenance="derived",
        description=description,
        command=command,
        blocks={"check": code.check.to_text().split()},
    )


def plus(name, p, description, command=TOOL):
    params = verify_plus(p)
    d = min(params.d1, params.d2)
    return Entry(
        name=name,
        kind="plus",
        n=p.n,
        K=p.K,
        d=d,
        provenance="derived",
        description=description + f" ({params.label()})",
        command=command,
        blocks={"h1": p.h1.to_text().split(), "d": p.d_matrix.to_text().split()},
    )


def catalog(name, n, K, d, description):
    return Entry(name=name, kind="catalog", n=n, K=K, d=d, provenance="catalog", description=description)


def combined_11_4() -> LinearCode:
    """[8,4,4] extended Hamming + [3,3,1]: first assignment giving d = 3, dual d = 5."""
    base = make_extended_hamming(3)
    ext = LinearCode.from_generator(BinMatrix.identity(3), "all-3")
    for rows in itertools.permutations(range(base.check.n_rows), 3):
        c = combine(base, ext, rows)
        if min_distance(c) == 3 and min_distance(c.dual()) == 5:
            return c
    raise RuntimeError("no assignment reaches dual distance 5")


def hamming_form_10() -> LinearCode:
    """Shortened Hamming: columns 1..10 in binary."""
    h = hamming_check(4)
    rows = tuple(r >> 5 for r in h.rows)
    return LinearCode.from_check(BinMatrix(10, rows))


def entries():
    out = [
        classical("repetition-3", make_repetition(3), "[3,1,3] repetition code"),
        classical("hamming-7-4-3", make_hamming(3), "[7,4,3] Hamming code, column j is j in binary"),
        classical("ext-hamming-8-4-4", make_extended_hamming(3), "[8,4,4] extended Hamming code (self-dual)"),
        classical("ext-hamming-16-11-4", make_extended_hamming(4), "[16,11,4] extended Hamming code"),
        classical("rm1-16-5-8", make_reed_muller_1(4), "[16,5,8] first-order Reed-Muller code"),
        classical("golay-23-12-7", make_golay(), "[23,12,7] binary Golay code"),
        classical("hamming-form-10-6-3", hamming_form_10(), "[10,6,3] shortened Hamming check, columns 1..10 in binary"),
        classical("combined-11-4-3", combined_11_4(), "[8,4,4] extended Hamming + [3,3,1]; dual distance 5"),
        classical(
            "bch-31-21-5",
            LinearCode.from_check(make_bch_check((0, 2), 5, 2)),
            "[31,21,5] narrow-sense BCH code, x^5 = 1 + x^2",
        ),
        classical(
            "bch-31-16-7",
            LinearCode.from_check(make_bch_check((0, 2), 5, 3)),
            "[31,16,7] narrow-sense BCH code, x^5 = 1 + x^2",
        ),
    ]
    out += [
        plus("plus-7-1-3", build_from_weakly_self_dual(make_hamming(3)), "weakly self-dual [7,4,3] Hamming"),
        plus("plus-8-0-4", build_from_weakly_self_dual(make_extended_hamming(3)), "self-dual [8,4,4]"),
        plus("plus-15-7-3", build_from_weakly_self_dual(make_hamming(4)), "weakly self-dual [15,11,3] Hamming"),
        plus("plus-16-6-4", build_from_weakly_self_dual(make_extended_hamming(4)), "weakly self-dual [16,11,4]"),
        plus("golay-23-1-7", build_from_weakly_self_dual(make_golay()), "weakly self-dual [23,12,7] Golay"),
    ]
    for name, code, text in [
        ("plus-31-11-5", out[8].build(), "weakly self-dual [31,21,5] BCH"),
        ("plus-31-1-7", out[9].build(), "weakly self-dual [31,16,7] BCH"),
    ]:
        out.append(plus(name, build_from_weakly_self_dual(code), text))
    for n in range(19, 27):
        K = n - 11
        cmd = f"pluscodes search displacements --cyclic 0,3 --r 5 --n {n} --K {K} --target 3"
        rep = search_displacements(make_cyclic_check((0, 3), 5, n), K, 3)
        if rep.result is None:
            raise RuntimeError(f"no displacements found for n={n}")
        out.append(plus(f"cyclic-plus-{n}-{K}-3", rep.result, f"cyclic x^5 = 1 + x^3 check at n = {n}", cmd))
    out += [
        catalog("qr-48-0-12", 48, 0, 12, "quadratic residue self-dual code; beyond the exhaustive cap"),
        catalog("qr-80-0-16", 80, 0, 16, "quadratic residue self-dual code; beyond the exhaustive cap"),
        catalog("qr-104-0-20", 104, 0, 20, "quadratic residue self-dual code; beyond the exhaustive cap"),
        catalog("bch-63-3-11", 63, 3, 11, "BCH; beyond the exhaustive cap"),
        catalog("bch-63-15-9", 63, 15, 9, "BCH; beyond the exhaustive cap"),
        catalog("bch-127-15-17", 127, 15, 17, "BCH; beyond the exhaustive cap"),
        catalog("reduced-bch-29-11-4", 29, 11, 4, "reduced BCH with C-perp inside C"),
    ]
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "src/pluscodes/data/registry"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    for e in entries():
        path = out / f"{e.name}.code"
        if path.exists() and "provenance: paper" in path.read_text():
            print(f"skip {e.name}: hand-transcribed record")
            continue
        path.write_text(e.to_text())
        print(f"wrote {path.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
