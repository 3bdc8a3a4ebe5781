"""Self-describing text container for solutions, braces, rings and streams.

Every record starts with a `kind:` line followed by `key: value` metadata
and named table sections whose rows are whitespace-separated 0-based
indices.  Records in a stream are separated by blank lines; `#` starts a
comment.  Whatever this module writes, it parses back identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .braces import FiniteRing, SkewBrace, verify_brace, verify_ring
from .solutions import Solution, verify

SCHEMA_VERSION = 1


class ParseError(ValueError):
    pass


@dataclass
class StreamHeader:
    size: int
    mode: str
    count: int
    meta: dict = field(default_factory=dict)


@dataclass
class SolutionStream:
    header: StreamHeader
    solutions: list[Solution]


def solution_to_text(s: Solution) -> str:
    lines = [f"kind: solution", f"size: {s.size}", "sigma:"]
    lines += [" ".join(str(v) for v in row) for row in s.sigma]
    lines.append("tau:")
    lines += [" ".join(str(v) for v in row) for row in s.tau]
    return "\n".join(lines) + "\n"


def brace_to_text(A: SkewBrace) -> str:
    lines = [f"kind: brace", f"size: {A.size}", "add:"]
    lines += [" ".join(str(v) for v in row) for row in A.add]
    lines.append("mul:")
    lines += [" ".join(str(v) for v in row) for row in A.mul]
    return "\n".join(lines) + "\n"


def ring_to_text(R: FiniteRing) -> str:
    lines = [f"kind: ring", f"size: {R.size}", "add:"]
    lines += [" ".join(str(v) for v in row) for row in R.add]
    lines.append("prod:")
    lines += [" ".join(str(v) for v in row) for row in R.prod]
    return "\n".join(lines) + "\n"


def stream_to_text(header: StreamHeader, sols) -> str:
    lines = [
        "kind: enumeration-stream",
        f"schema: {SCHEMA_VERSION}",
        f"size: {header.size}",
        f"mode: {header.mode}",
        f"count: {header.count}",
    ]
    for key in sorted(header.meta):
        lines.append(f"{key}: {header.meta[key]}")
    blocks = ["\n".join(lines) + "\n"]
    blocks += [solution_to_text(s) for s in sols]
    return "\n".join(blocks)


def _record_blocks(text: str) -> list[list[str]]:
    blocks: list[list[str]] = []
    current: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            if current:
                blocks.append(current)
                current = []
            continue
        current.append(line.strip())
    if current:
        blocks.append(current)
    return blocks


def _parse_block(lines: list[str]):
    meta: dict[str, str] = {}
    tables: dict[str, list[tuple[int, ...]]] = {}
    section: str | None = None
    for line in lines:
        if ":" in line and not line.split(":", 1)[1].strip() and not line[0].isdigit():
            section = line.split(":", 1)[0].strip()
            tables[section] = []
            continue
        if ":" in line and not line[0].isdigit():
            key, value = (part.strip() for part in line.split(":", 1))
            meta[key] = value
            section = None
            continue
        if section is None:
            raise ParseError(f"table row outside any section: {line!r}")
        try:
            tables[section].append(tuple(int(tok) for tok in line.split()))
        except ValueError as exc:
            raise ParseError(f"bad table row {line!r}") from exc

    kind = meta.get("kind")
    if kind is None:
        raise ParseError("record is missing its kind")
    try:
        size = int(meta["size"])
    except (KeyError, ValueError) as exc:
        raise ParseError("record is missing a valid size") from exc

    def table(name: str) -> list[tuple[int, ...]]:
        rows = tables.get(name)
        if rows is None or len(rows) != size:
            raise ParseError(f"section {name!r} must have exactly {size} rows")
        return rows

    if kind == "solution":
        return verify(size, table("sigma"), table("tau"))
    if kind == "brace":
        add, mul = table("add"), table("mul")
        shared = _shared_identity(add, mul)
        if shared is not None and shared != 0:
            add = _relabel_table(add, shared)
            mul = _relabel_table(mul, shared)
        return verify_brace(add, mul)
    if kind == "ring":
        return verify_ring(size, table("add"), table("prod"), require_radical=False)
    if kind == "enumeration-stream":
        known = {"kind", "schema", "size", "mode", "count"}
        extra = {k: v for k, v in meta.items() if k not in known}
        return StreamHeader(
            size=size,
            mode=meta.get("mode", "involutive"),
            count=int(meta.get("count", "0")),
            meta=extra,
        )
    raise ParseError(f"unknown record kind {kind!r}")


def _shared_identity(add, mul) -> int | None:
    """The element acting as a two-sided identity in both tables, if any."""
    n = len(add)
    for e in range(n):
        try:
            if all(
                add[e][a] == a and add[a][e] == a
                and mul[e][a] == a and mul[a][e] == a
                for a in range(n)
            ):
                return e
        except (IndexError, TypeError):
            return None
    return None


def _relabel_table(rows, e: int):
    """Swap labels 0 and e so the shared identity lands on index 0."""
    n = len(rows)
    f = list(range(n))
    f[0], f[e] = e, 0
    return [
        tuple(f[rows[f[i]][f[j]]] for j in range(n)) for i in range(n)
    ]


def parse_text(text: str):
    """Parse a single record or a stream; returns the matching object."""
    blocks = _record_blocks(text)
    if not blocks:
        raise ParseError("empty input")
    first = _parse_block(blocks[0])
    if isinstance(first, StreamHeader):
        sols = []
        for block in blocks[1:]:
            record = _parse_block(block)
            if not isinstance(record, Solution):
                raise ParseError("stream records must be solutions")
            sols.append(record)
        if first.count and first.count != len(sols):
            raise ParseError(
                f"stream header announces {first.count} records, found {len(sols)}"
            )
        return SolutionStream(first, sols)
    if len(blocks) > 1:
        raise ParseError("multiple records outside a stream")
    return first


def parse_file(path) -> object:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_text(text)
