"""Bundled code registry: one plain-text record per code.

A record is a run of ``key: value`` lines followed by matrix blocks.  A
block opens with a ``[name]`` line and runs to the next blank line::

    name: steane-8-3-3
    kind: signed
    n: 8
    K: 3
    d: 3
    provenance: paper
    offset: 0000

    [gcos]
    01010101
    ...

    [signs]
    3333
    ...

Kinds and the blocks they use:

``classical``  ``check`` or ``generator``
``plus``       ``h1`` and ``d`` (optionally a printed ``h2`` kept for comparison),
               or ``gcos`` and ``d`` for codes given in generator form
``signed``     ``gcos``, ``d`` and ``signs`` (hex, one per row), key ``offset``
``catalog``    parameters only
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .codes import LinearCode
from .cssplus import PlusCode
from .gf2 import BinMatrix
from .qstate import SignedCode

KINDS = ("classical", "plus", "signed", "catalog")
PROVENANCES = ("paper", "derived", "catalog")


class RegistryError(ValueError):
    pass


@dataclass
class Entry:
    name: str
    kind: str
    n: int
    K: int | None = None
    k: int | None = None
    d: int | None = None
    provenance: str = "derived"
    description: str = ""
    command: str = ""
    offset: str = ""
    blocks: dict[str, list[str]] = field(default_factory=dict)

    def matrix(self, block: str) -> BinMatrix:
        if block not in self.blocks:
            raise RegistryError(f"{self.name}: no [{block}] block")
        return BinMatrix.from_strings(self.blocks[block], self.n)

    def build(self):
        """The code object this record describes (None for catalog entries)."""
        if self.kind == "classical":
            if "check" in self.blocks:
                return LinearCode.from_check(self.matrix("check"), self.name)
            return LinearCode.from_generator(self.matrix("generator"), self.name)
        if self.kind == "plus":
            if "gcos" in self.blocks:
                return PlusCode.from_generator(self.matrix("gcos"), self.matrix("d"), self.name)
            return PlusCode(self.matrix("h1"), self.matrix("d"), self.name)
        if self.kind == "signed":
            return SignedCode.from_hex(
                self.matrix("gcos"), self.matrix("d"), self.blocks.get("signs", []), self.offset or "0", self.name
            )
        return None

    def signed(self) -> SignedCode:
        """Quantum view: signed codes as they are, plus codes with zero signs."""
        code = self.build()
        if isinstance(code, SignedCode):
            return code
        if isinstance(code, PlusCode):
            return SignedCode.from_plus(code, self.name)
        raise RegistryError(f"{self.name} is a {self.kind} entry, not a quantum code")

    def params(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "n": self.n}
        for key in ("K", "k", "d"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        out["provenance"] = self.provenance
        if self.description:
            out["description"] = self.description
        if self.command:
            out["command"] = self.command
        return out

    def to_text(self) -> str:
        lines = [f"name: {self.name}", f"kind: {self.kind}", f"n: {self.n}"]
        for key in ("K", "k", "d"):
            if getattr(self, key) is not None:
                lines.append(f"{key}: {getattr(self, key)}")
        lines.append(f"provenance: {self.provenance}")
        if self.description:
            lines.append(f"description: {self.description}")
        if self.command:
            lines.append(f"command: {self.command}")
        if self.offset:
            lines.append(f"offset: {self.offset}")
        for block, rows in self.blocks.items():
            lines.append("")
            lines.append(f"[{block}]")
            lines.extend(rows)
        return "\n".join(lines) + "\n"


def parse_entry(text: str, source: str = "<record>") -> Entry:
    fields: dict[str, str] = {}
    blocks: dict[str, list[str]] = {}
    current: list[str] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            current = None
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name in blocks:
                raise RegistryError(f"{source}:{lineno}: duplicate block [{name}]")
            current = blocks[name] = []
            continue
        if current is not None:
            current.append(line)
            continue
        if ":" not in line:
            raise RegistryError(f"{source}:{lineno}: expected 'key: value'")
        key, value = (s.strip() for s in line.split(":", 1))
        fields[key] = value
    try:
        entry = Entry(
            name=fields["name"],
            kind=fields["kind"],
            n=int(fields["n"]),
            K=int(fields["K"]) if "K" in fields else None,
            k=int(fields["k"]) if "k" in fields else None,
            d=int(fields["d"]) if "d" in fields else None,
            provenance=fields.get("provenance", "derived"),
            description=fields.get("description", ""),
            command=fields.get("command", ""),
            offset=fields.get("offset", ""),
            blocks=blocks,
        )
    except KeyError as exc:
        raise RegistryError(f"{source}: missing field {exc.args[0]}") from None
    except ValueError as exc:
        raise RegistryError(f"{source}: {exc}") from None
    if entry.kind not in KINDS:
        raise RegistryError(f"{source}: unknown kind {entry.kind!r}")
    if entry.provenance not in PROVENANCES:
        raise RegistryError(f"{source}: unknown provenance {entry.provenance!r}")
    if entry.provenance == "derived" and not entry.command:
        raise RegistryError(f"{source}: derived entries must record their generating command")
    return entry


class Registry:
    def __init__(self, entries: list[Entry]):
        self.entries = {e.name: e for e in entries}
        if len(self.entries) != len(entries):
            raise RegistryError("duplicate entry names")

    @classmethod
    def load(cls, path: str | Path | None = None) -> Registry:
        if path is None:
            root = resources.files("pluscodes.data").joinpath("registry")
        else:
            root = Path(path)
        entries = []
        for item in sorted(root.iterdir(), key=lambda p: p.name):
            if item.name.endswith(".code"):
                entries.append(parse_entry(item.read_text(), item.name))
        return cls(entries)

    def names(self) -> list[str]:
        return sorted(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, name: str) -> Entry:
        try:
            return self.entries[name]
        except KeyError:
            raise KeyError(f"no registry entry named {name!r}") from None

    def of_kind(self, kind: str) -> list[Entry]:
        return [self.entries[n] for n in self.names() if self.entries[n].kind == kind]


def golden_listing(name: str) -> str:
    return resources.files("pluscodes.data").joinpath("golden", f"{name}.txt").read_text()
