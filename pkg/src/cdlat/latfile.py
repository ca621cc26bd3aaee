"""The ``cdl`` lattice file format and DOT export.

A file looks like::

    cdl 1
    p 2
    d 4
    e 2
    mode full
    max 8
    member 0
    member 2 1000 0100
    cover 1 0
    name 0 ZP

Rows are base-p digit strings (comma-separated residues when p > 10).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .gfplin import Subspace
from .shapes import Poset

MODES = ("full", "verified-predicted", "predicted")


class LatticeFileError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class LatticeFile:
    p: int
    d: int
    e: int
    mode: str
    max_value: int
    members: list[Subspace]
    covers: list[tuple[int, int]]
    names: dict[int, str] = field(default_factory=dict)
    shape: str | None = None

    def poset(self) -> Poset:
        return Poset(len(self.members), tuple(self.covers), tuple(u.dim for u in self.members))


def _row_text(row, p: int) -> str:
    if p <= 10:
        return "".join(str(x) for x in row)
    return ",".join(str(x) for x in row)


def _row_parse(tok: str, p: int, d: int, lineno: int) -> tuple[int, ...]:
    vals = tok.split(",") if p > 10 else list(tok)
    try:
        row = tuple(int(x) for x in vals)
    except ValueError:
        raise LatticeFileError(lineno, f"bad row {tok!r}") from None
    if len(row) != d or any(not 0 <= x < p for x in row):
        raise LatticeFileError(lineno, f"row {tok!r} is not a vector of GF({p})^{d}")
    return row


def from_lattice(lattice, mode: str | None = None, shape: str | None = None) -> LatticeFile:
    """Wrap a CDLattice, or an (presentation, ExpectedLattice) pair, as a file object."""
    from .cdengine import covers as cover_pairs
    from .presentation import measure

    if isinstance(lattice, tuple):
        pres, exp = lattice
        members = sorted(set(exp.spaces()), key=Subspace.sort_key)
        names = {}
        for x in exp.members:
            names.setdefault(members.index(x.space), x.name)
        top = max(measure(pres, u).value for u in members)
        return LatticeFile(
            pres.p, pres.v_dim, pres.w_dim, mode or "predicted", top, members, cover_pairs(members), names, shape
        )
    pres = lattice.presentation
    return LatticeFile(
        pres.p, pres.v_dim, pres.w_dim, mode or lattice.mode, lattice.value,
        list(lattice.members), list(lattice.covers), dict(lattice.names), shape,
    )


def dumps(lf: LatticeFile) -> str:
    out = ["cdl 1", f"p {lf.p}", f"d {lf.d}", f"e {lf.e}", f"mode {lf.mode}", f"max {lf.max_value}"]
    for u in lf.members:
        out.append(" ".join(["member", str(u.dim)] + [_row_text(r, lf.p) for r in u.basis]))
    for i, j in sorted(lf.covers):
        out.append(f"cover {i} {j}")
    for i in sorted(lf.names):
        out.append(f"name {i} {lf.names[i]}")
    if lf.shape:
        out.append(f"shape {lf.shape}")
    return "\n".join(out) + "\n"


def loads(text: str) -> LatticeFile:
    header: dict[str, str] = {}
    members: list[Subspace] = []
    cov: list[tuple[int, int]] = []
    names: dict[int, str] = {}
    shape = None
    lines = [(n, ln.split("#", 1)[0].strip()) for n, ln in enumerate(text.splitlines(), 1)]
    lines = [(n, ln) for n, ln in lines if ln]
    if not lines or lines[0][1].split() != ["cdl", "1"]:
        raise LatticeFileError(lines[0][0] if lines else 1, "expected header 'cdl 1'")
    for lineno, ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        rest = rest.strip()
        if key in ("p", "d", "e", "mode", "max"):
            if key in header:
                raise LatticeFileError(lineno, f"duplicate {key}")
            header[key] = rest
            continue
        missing = [k for k in ("p", "d", "e", "mode", "max") if k not in header]
        if missing:
            raise LatticeFileError(lineno, f"header incomplete, missing {', '.join(missing)}")
        try:
            p, d = int(header["p"]), int(header["d"])
        except ValueError:
            raise LatticeFileError(lineno, "p and d must be integers") from None
        if key == "member":
            toks = rest.split()
            if not toks:
                raise LatticeFileError(lineno, "member needs a dimension")
            try:
                k = int(toks[0])
            except ValueError:
                raise LatticeFileError(lineno, f"bad dimension {toks[0]!r}") from None
            if len(toks) - 1 != k:
                raise LatticeFileError(lineno, f"member of dimension {k} lists {len(toks) - 1} rows")
            rows = [_row_parse(t, p, d, lineno) for t in toks[1:]]
            u = Subspace.span(rows, p, d)
            if u.dim != k:
                raise LatticeFileError(lineno, "member rows are linearly dependent")
            members.append(u)
        elif key == "cover":
            try:
                i, j = (int(x) for x in rest.split())
            except ValueError:
                raise LatticeFileError(lineno, "cover needs two indices") from None
            cov.append((i, j))
        elif key == "name":
            i, _, label = rest.partition(" ")
            if not label:
                raise LatticeFileError(lineno, "name needs an index and a label")
            if not i.isdigit():
                raise LatticeFileError(lineno, f"bad member index {i!r}")
            names[int(i)] = label.strip()
        elif key == "shape":
            shape = rest
        elif key == "component":
            continue
        else:
            raise LatticeFileError(lineno, f"unknown record {key!r}")
    n = len(members)
    for i, j in cov:
        if not (0 <= i < n and 0 <= j < n):
            raise LatticeFileError(0, f"cover {i} {j} out of range")
    if header.get("mode") not in MODES:
        raise LatticeFileError(0, f"mode must be one of {', '.join(MODES)}")
    return LatticeFile(
        int(header["p"]), int(header["d"]), int(header["e"]), header["mode"], int(header["max"]),
        members, cov, names, shape,
    )


def write(lf: LatticeFile, path) -> None:
    Path(path).write_text(dumps(lf))


def read(path) -> LatticeFile:
    return loads(Path(path).read_text())


def to_dot(lf: LatticeFile, labels: bool = True) -> str:
    """Hasse diagram, bottom to top, one rank per dimension."""
    out = ["digraph cd {", "  rankdir=BT;", "  node [shape=box];"]
    for i, u in enumerate(lf.members):
        text = lf.names.get(i) if labels and i in lf.names else f"dim {u.dim}"
        out.append(f'  n{i} [label="{text}"];')
    by_dim: dict[int, list[int]] = {}
    for i, u in enumerate(lf.members):
        by_dim.setdefault(u.dim, []).append(i)
    for k in sorted(by_dim):
        out.append("  { rank=same; " + " ".join(f"n{i};" for i in by_dim[k]) + " }")
    for i, j in sorted(lf.covers):
        out.append(f"  n{j} -> n{i};")
    out.append("}")
    return "\n".join(out) + "\n"
