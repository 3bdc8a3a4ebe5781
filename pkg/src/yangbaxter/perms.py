"""Permutations of {0, ..., n-1} stored as image tuples: p[i] is the image of i."""

from __future__ import annotations

import itertools
import re

Perm = tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_perm(p) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """Product p*q acting as "q first, then p": (p*q)(i) = p[q[i]]."""
    return tuple(p[j] for j in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def apply_power(p: Perm, k: int) -> Perm:
    if k < 0:
        return apply_power(invert(p), -k)
    result = identity(len(p))
    for _ in range(k):
        result = compose(p, result)
    return result


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Cycle decomposition; fixed points omitted, each cycle led by its least point."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        seen[start] = True
        cyc = [start]
        j = p[start]
        while j != start:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Sorted cycle lengths, fixed points included as 1s."""
    lengths = sorted(len(c) for c in cycles(p))
    fixed = len(p) - sum(lengths)
    return tuple([1] * fixed + lengths)


def is_full_cycle(p: Perm) -> bool:
    n = len(p)
    if n <= 1:
        return True
    cs = cycles(p)
    return len(cs) == 1 and len(cs[0]) == n


def from_cycles(text: str, n: int, one_based: bool = True) -> Perm:
    """Parse cycle notation into a permutation of n points.

    Accepts "(1 2)(3 4)", "(1,2)", and the compact digit form "(12)(34)"
    where every point is a single digit.  "id" or "()" is the identity.
    Points are 1-based by default, matching the usual written convention.
    """
    text = text.strip()
    images = list(range(n))
    if text in ("", "id", "()"):
        return tuple(images)
    chunks = _CYCLE_RE.findall(text)
    if not chunks or _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    for chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            continue
        if any(sep in chunk for sep in (" ", ",")):
            points = [int(tok) for tok in chunk.replace(",", " ").split()]
        elif chunk.isdigit():
            points = [int(ch) for ch in chunk]
        else:
            raise ValueError(f"malformed cycle: ({chunk})")
        if one_based:
            points = [x - 1 for x in points]
        if any(not 0 <= x < n for x in points):
            raise ValueError(f"cycle point out of range 0..{n - 1}: ({chunk})")
        if len(set(points)) != len(points):
            raise ValueError(f"repeated point in cycle: ({chunk})")
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    if not is_perm(images):
        raise ValueError(f"cycles do not define a permutation: {text!r}")
    return tuple(images)


def to_cycles(p: Perm, one_based: bool = True) -> str:
    cs = cycles(p)
    if not cs:
        return "id"
    off = 1 if one_based else 0
    return "".join("(" + " ".join(str(x + off) for x in c) + ")" for c in cs)


def all_perms(n: int) -> list[Perm]:
    """All permutations of n points in lexicographic order (identity first)."""
    return list(itertools.permutations(range(n)))
