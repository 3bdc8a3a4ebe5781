"""Isomorph-free exhaustive enumeration of solutions and of skew braces.

The solution search backtracks over the rows of the sigma family (and, in
`all` mode, the tau family), pruning with partial braid consequences:

  * row products: sigma_{sigma_x(y)} o sigma_{tau_y(x)} = sigma_x o sigma_y,
    checked the moment all four rows are known;
  * in `all` mode that identity also pins each value tau_y(x) to the set of
    rows carrying a prescribed permutation, which yields cell domains for
    the tau rows plus a pigeonhole bound during the sigma phase;
  * partial injectivity of the pair map;
  * the remaining braid components on resolved triples.

Survivors are validated in full, canonicalized, and deduplicated, so the
pruning only ever affects speed, never the produced class set.  Work splits
into independent subtrees keyed by the first sigma row; merged output is a
sorted canonical list, identical for any parallelism degree.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

from . import braces as braces_mod
from . import groups, solutions
from .braces import SkewBrace
from .perms import all_perms, compose, invert
from .solutions import Solution

DEFAULT_CAPS = {"involutive": 6, "all": 4}
CHECKPOINT_VERSION = 1


class EnumerationCapError(ValueError):
    pass


class CheckpointMismatchError(ValueError):
    pass


class TimeBudgetExceeded(RuntimeError):
    """In-flight signal that the wall-clock deadline passed inside a task."""


class PartialResultError(RuntimeError):
    def __init__(self, message: str, completed_tasks: list, total_tasks: int):
        super().__init__(message)
        self.completed_tasks = completed_tasks
        self.total_tasks = total_tasks


@dataclass
class EnumerationTask:
    size: int
    mode: str = "involutive"  # "involutive" | "all"
    indecomposable: bool | None = None
    multipermutation: bool | None = None
    count_only: bool = False
    jobs: int = 1
    cap: int | None = None
    time_budget: float | None = None
    checkpoint_dir: str | Path | None = None

    def validate(self) -> None:
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if self.mode not in ("involutive", "all"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "all" and self.multipermutation is not None:
            raise ValueError(
                "the multipermutation filter needs involutive mode; "
                "retraction is undefined for general solutions"
            )
        cap = self.cap if self.cap is not None else DEFAULT_CAPS[self.mode]
        if self.size > cap:
            raise EnumerationCapError(
                f"size {self.size} exceeds the {self.mode} cap {cap}; "
                "raise cap= explicitly for a long run"
            )
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


@dataclass
class EnumerationResult:
    size: int
    mode: str
    canonicals: list[bytes]
    filtered: bool = False

    @property
    def classes(self) -> list[Solution]:
        return [solutions.solution_from_canonical(b) for b in self.canonicals]

    @property
    def total(self) -> int:
        return len(self.canonicals)

    def counts(self) -> dict[str, int]:
        inv = sum(1 for s in self.classes if s.involutive)
        return {
            "involutive": inv,
            "non_involutive": self.total - inv,
            "total": self.total,
        }


# ---------------------------------------------------------------------------
# Shared Sym(n) tables

_TABLE_CACHE: dict[int, tuple] = {}


def _sym_tables(n: int):
    """(perm list, index map, composition table, inverse table) for Sym(n)."""
    cached = _TABLE_CACHE.get(n)
    if cached is not None:
        return cached
    perms = all_perms(n)
    index = {p: i for i, p in enumerate(perms)}
    inv = [index[invert(p)] for p in perms]
    mul = [
        [index[compose(p, q)] for q in perms] for p in perms
    ]
    _TABLE_CACHE[n] = (perms, index, mul, inv)
    return _TABLE_CACHE[n]


def _first_row_representatives(n: int) -> list[int]:
    """Lex-minimal representatives of point-0-stabilizer conjugacy orbits.

    Relabeling a solution by any g with g(0) = 0 keeps row 0 in place and
    conjugates it, so every isomorphism class has a labeled member whose
    first sigma row is the minimum of its orbit under conjugation by
    permutations fixing 0.  Searching only those first rows is therefore
    complete, and removes the conjugate-redundant top-level branches.
    """
    perms = all_perms(n)
    index = {p: i for i, p in enumerate(perms)}
    stab = [
        (0,) + rest for rest in permutations(range(1, n))
    ]
    reps = []
    for i, p in enumerate(perms):
        smallest = min(
            index[compose(compose(g, p), invert(g))] for g in stab
        )
        if smallest == i:
            reps.append(i)
    return reps


def _second_row_candidates(n: int, first_row: int) -> list[int]:
    """Sound restriction of the second sigma row given the first.

    Permutations fixing points 0 and 1 that centralize the first row act on
    solutions by relabeling without moving rows 0, 1 or changing row 0, so
    the second row only needs to range over the minima of its conjugation
    orbits under that stabilizer.
    """
    perms, index, mul, inv = _sym_tables(n)
    if n < 2:
        return list(range(len(perms)))
    stab = [
        index[(0, 1) + rest]
        for rest in permutations(range(2, n))
    ]
    centralizer = [
        g for g in stab if mul[g][first_row] == mul[first_row][g]
    ]
    return [
        c
        for c in range(len(perms))
        if all(mul[mul[g][c]][inv[g]] >= c for g in centralizer)
    ]


def subtree_tasks(n: int) -> list[tuple[int, ...]]:
    """Independent search subtrees: symmetry-reduced (row0, row1) prefixes.

    Size 1 has a single empty-prefix task.  The identifiers double as
    checkpoint keys, so a given (size, mode) run always produces the same
    task list in the same order.
    """
    if n == 1:
        return [(0,)]
    return [
        (r0, r1)
        for r0 in _first_row_representatives(n)
        for r1 in _second_row_candidates(n, r0)
    ]


class _Deadline:
    __slots__ = ("at", "ticks")

    def __init__(self, at: float | None):
        self.at = at
        self.ticks = 0

    def tick(self) -> None:
        if self.at is None:
            return
        self.ticks += 1
        if self.ticks & 0xFFF == 0 and time.monotonic() > self.at:
            raise TimeBudgetExceeded


# ---------------------------------------------------------------------------
# Involutive search: rows of sigma only, tau is forced


def _involutive_row_ok(rows: list[int], k: int, perms, mul, inv) -> bool:
    # check the row-product identity for exactly the pairs whose last
    # dependency is row k (earlier-complete pairs were checked at lower depth)
    for x in range(k + 1):
        rx = rows[x]
        appx = perms[rx]
        mul_rx = mul[rx]
        x_is_k = x == k
        for y in range(k + 1):
            u = appx[y]
            if u > k:
                continue
            ru = rows[u]
            t = perms[inv[ru]][x]
            if t > k:
                continue
            if not (x_is_k or y == k or u == k or t == k):
                continue
            if mul[ru][rows[t]] != mul_rx[rows[y]]:
                return False
    return True


def _involutive_leaf(n: int, rows: list[int], perms, inv) -> Solution | None:
    sigma = tuple(perms[r] for r in rows)
    tau = []
    for y in range(n):
        row = [perms[inv[rows[sigma[x][y]]]][x] for x in range(n)]
        if sorted(row) != list(range(n)):
            return None
        tau.append(tuple(row))
    tau = tuple(tau)
    if solutions.diagnose(n, sigma, tau) is not None:
        return None
    return Solution(n, sigma, tau)


def _search_involutive(n: int, prefix, deadline: _Deadline) -> set[bytes]:
    perms, _, mul, inv = _sym_tables(n)
    found: set[bytes] = set()
    rows = list(prefix)
    for k in range(len(rows)):
        if not _involutive_row_ok(rows[: k + 1], k, perms, mul, inv):
            return found

    def dfs(k: int) -> None:
        deadline.tick()
        if k == n:
            leaf = _involutive_leaf(n, rows, perms, inv)
            if leaf is not None:
                found.add(solutions.canonical_form(leaf))
            return
        for cand in range(len(perms)):
            rows.append(cand)
            if _involutive_row_ok(rows, k, perms, mul, inv):
                dfs(k + 1)
            rows.pop()

    dfs(len(rows))
    return found


# ---------------------------------------------------------------------------
# General search: sigma phase, then tau rows over forced cell domains


def _sigma_phase_ok(rows: list[int], k: int, n: int, perms, mul, inv) -> bool:
    assigned = set(rows)
    pending: set[int] = set()
    for x in range(k + 1):
        appx = perms[rows[x]]
        for y in range(k + 1):
            u = appx[y]
            if u > k:
                continue
            required = mul[mul[inv[rows[u]]][rows[x]]][rows[y]]
            if required not in assigned:
                pending.add(required)
    return len(pending) <= n - 1 - k


def _tau_domains(rows: list[int], n: int, perms, mul, inv):
    """Cell domains D[y][x]: candidate values for tau_y(x), or None if empty."""
    by_value: dict[int, list[int]] = {}
    for t, rv in enumerate(rows):
        by_value.setdefault(rv, []).append(t)
    domains = []
    for y in range(n):
        drow = []
        for x in range(n):
            u = perms[rows[x]][y]
            required = mul[mul[inv[rows[u]]][rows[x]]][rows[y]]
            opts = by_value.get(required)
            if not opts:
                return None
            drow.append(opts)
        domains.append(drow)
    return domains


def _tau_row_candidates(domain_row, n: int):
    """All bijective rows consistent with per-cell domains."""
    out: list[tuple[int, ...]] = []
    row = [0] * n
    used = [False] * n

    def cells(x: int) -> None:
        if x == n:
            out.append(tuple(row))
            return
        for t in domain_row[x]:
            if not used[t]:
                used[t] = True
                row[x] = t
                cells(x + 1)
                used[t] = False

    cells(0)
    return out


def _tau_rows_ok(srows, trows, k: int, n: int, perms, mul, sig) -> bool:
    # braid component 3: tau_{tau_z(y)} o tau_{sigma_y(z)} = tau_z o tau_y
    for y in range(k + 1):
        for z in range(k + 1):
            a = perms[trows[z]][y]
            if a > k:
                continue
            b = sig[y][z]
            if b > k:
                continue
            if y != k and z != k and a != k and b != k:
                continue
            if mul[trows[a]][trows[b]] != mul[trows[z]][trows[y]]:
                return False
    # braid component 2 on resolved triples
    for y in range(k + 1):
        tr_y = perms[trows[y]]
        for x in range(n):
            t = tr_y[x]
            sig_t = sig[t]
            for z in range(k + 1):
                w = sig_t[z]
                if w > k:
                    continue
                v = sig[y][z]
                if v > k:
                    continue
                if y != k and z != k and w != k and v != k:
                    continue
                left = perms[trows[w]][sig[x][y]]
                right = sig[perms[trows[v]][x]][perms[trows[z]][y]]
                if left != right:
                    return False
    # partial injectivity of the pair map on determined columns
    seen = set()
    for y in range(k + 1):
        tr_y = perms[trows[y]]
        for x in range(n):
            code = sig[x][y] * n + tr_y[x]
            if code in seen:
                return False
            seen.add(code)
    return True


def _search_all(n: int, prefix, deadline: _Deadline) -> set[bytes]:
    perms, _, mul, inv = _sym_tables(n)
    found: set[bytes] = set()
    srows = list(prefix)

    def tau_phase(sigma_rows: list[int]) -> None:
        domains = _tau_domains(sigma_rows, n, perms, mul, inv)
        if domains is None:
            return
        sig = [perms[r] for r in sigma_rows]
        perm_index = _sym_tables(n)[1]
        trows: list[int] = []

        def dfs_tau(k: int) -> None:
            deadline.tick()
            if k == n:
                sigma = tuple(sig)
                tau = tuple(perms[r] for r in trows)
                if solutions.diagnose(n, sigma, tau) is None:
                    found.add(solutions.canonical_form(Solution(n, sigma, tau)))
                return
            for cand in _tau_row_candidates(domains[k], n):
                trows.append(perm_index[cand])
                if _tau_rows_ok(sigma_rows, trows, k, n, perms, mul, sig):
                    dfs_tau(k + 1)
                trows.pop()

        dfs_tau(0)

    def dfs_sigma(k: int) -> None:
        deadline.tick()
        if k == n:
            tau_phase(srows)
            return
        for cand in range(len(perms)):
            srows.append(cand)
            if _sigma_phase_ok(srows, k, n, perms, mul, inv):
                dfs_sigma(k + 1)
            srows.pop()

    for k in range(len(srows)):
        if not _sigma_phase_ok(srows[: k + 1], k, n, perms, mul, inv):
            return found
    dfs_sigma(len(srows))
    return found


# ---------------------------------------------------------------------------
# Task orchestration


def _run_subtree(args) -> tuple[tuple[int, ...], list[bytes]]:
    n, mode, prefix, deadline_at = args
    deadline = _Deadline(deadline_at)
    if mode == "involutive":
        found = _search_involutive(n, prefix, deadline)
    else:
        found = _search_all(n, prefix, deadline)
    return prefix, sorted(found)


def _checkpoint_path(directory: Path, mode: str, n: int, task_id) -> Path:
    suffix = "-".join(f"{r:04d}" for r in task_id)
    return directory / f"{mode}-n{n}-task{suffix}.json"


def _load_checkpoint(path: Path, mode: str, n: int, task_id) -> list[bytes] | None:
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointMismatchError(f"unreadable checkpoint {path}: {exc}") from exc
    if (
        data.get("version") != CHECKPOINT_VERSION
        or data.get("mode") != mode
        or data.get("size") != n
        or tuple(data.get("task", ())) != tuple(task_id)
    ):
        raise CheckpointMismatchError(
            f"checkpoint {path} does not match this run "
            f"(wanted version={CHECKPOINT_VERSION} mode={mode} size={n} task={task_id})"
        )
    return [bytes.fromhex(h) for h in data["classes"]]


def _store_checkpoint(
    path: Path, mode: str, n: int, task_id, classes: list[bytes]
) -> None:
    payload = {
        "version": CHECKPOINT_VERSION,
        "mode": mode,
        "size": n,
        "task": list(task_id),
        "classes": [b.hex() for b in classes],
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload))
    tmp.replace(path)


def enumerate_solutions(task: EnumerationTask) -> EnumerationResult:
    """One canonical representative per isomorphism class at the given size.

    Identical output for any `jobs` value: subtree results are merged into a
    sorted set of canonical forms.  With a checkpoint directory, finished
    subtrees are persisted and reused on resume.
    """
    task.validate()
    n = task.size
    subtree_ids = subtree_tasks(n)
    n_tasks = len(subtree_ids)
    deadline_at = (
        time.monotonic() + task.time_budget if task.time_budget is not None else None
    )

    ckpt_dir: Path | None = None
    if task.checkpoint_dir is not None:
        ckpt_dir = Path(task.checkpoint_dir)
        ckpt_dir.mkdir(parents=True, exist_ok=True)

    pending: list[tuple[int, ...]] = []
    merged: set[bytes] = set()
    completed: list[tuple[int, ...]] = []
    for task_id in subtree_ids:
        if ckpt_dir is not None:
            stored = _load_checkpoint(
                _checkpoint_path(ckpt_dir, task.mode, n, task_id), task.mode, n, task_id
            )
            if stored is not None:
                merged.update(stored)
                completed.append(task_id)
                continue
        pending.append(task_id)

    def record(task_id, classes: list[bytes]) -> None:
        merged.update(classes)
        completed.append(task_id)
        if ckpt_dir is not None:
            _store_checkpoint(
                _checkpoint_path(ckpt_dir, task.mode, n, task_id),
                task.mode,
                n,
                task_id,
                classes,
            )

    def out_of_time() -> bool:
        return deadline_at is not None and time.monotonic() > deadline_at

    args = [(n, task.mode, task_id, deadline_at) for task_id in pending]
    try:
        if task.jobs == 1 or len(args) <= 1:
            for a in args:
                if out_of_time():
                    raise TimeBudgetExceeded
                task_id, classes = _run_subtree(a)
                record(task_id, classes)
        else:
            with ProcessPoolExecutor(max_workers=task.jobs) as pool:
                for task_id, classes in pool.map(_run_subtree, args):
                    record(task_id, classes)
                    if out_of_time():
                        raise TimeBudgetExceeded
    except TimeBudgetExceeded:
        raise PartialResultError(
            f"time budget of {task.time_budget}s exceeded with "
            f"{len(completed)}/{n_tasks} subtrees done"
            + (" (completed work is checkpointed)" if ckpt_dir else ""),
            sorted(completed),
            n_tasks,
        ) from None

    canonicals = sorted(merged)
    result = EnumerationResult(n, task.mode, canonicals)
    if task.indecomposable is not None or task.multipermutation is not None:
        keep = []
        for blob, sol in zip(result.canonicals, result.classes):
            if task.indecomposable is not None:
                if solutions.is_indecomposable(sol) != task.indecomposable:
                    continue
            if task.multipermutation is not None:
                is_mp = solutions.multipermutation_level(sol) is not None
                if is_mp != task.multipermutation:
                    continue
            keep.append(blob)
        return EnumerationResult(n, task.mode, keep, filtered=True)
    return result


# ---------------------------------------------------------------------------
# Brute-force oracle (no pruning beyond validity)


def brute_force_solutions(n: int) -> list[bytes]:
    """Canonical class set by scanning every (sigma, tau) family outright.

    (n!)^(2n) candidates; keep n <= 3.
    """
    if n > 3:
        raise ValueError("the brute-force oracle is meant for n <= 3")
    perms = all_perms(n)
    found: set[bytes] = set()
    for sigma in permutations_with_repetition(perms, n):
        for tau in permutations_with_repetition(perms, n):
            if solutions.diagnose(n, sigma, tau) is None:
                found.add(solutions.canonical_form(Solution(n, sigma, tau)))
    return sorted(found)


def permutations_with_repetition(pool, length: int):
    if length == 0:
        yield ()
        return
    for head in pool:
        for rest in permutations_with_repetition(pool, length - 1):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# Skew brace enumeration


def enumerate_braces(n: int, cap: int = 8) -> list[SkewBrace]:
    """One representative per isomorphism class of skew braces of size n.

    For each additive group G (up to isomorphism), searches the maps
    a -> lambda_a into Aut(G) satisfying lambda_a lambda_b = lambda_{a o b}
    with a o b = a + lambda_a(b); these are exactly the braces with additive
    group G.  Forced values propagate, so the branching stays tiny.
    """
    if n < 1:
        raise ValueError("size must be at least 1")
    if n > cap:
        raise EnumerationCapError(f"size {n} exceeds the brace cap {cap}")
    canon: set[bytes] = set()
    for G in groups.groups_of_order(n):
        for brace in _braces_on_group(G):
            canon.add(braces_mod.brace_canonical_form(brace))
    return [braces_mod.brace_from_canonical(b) for b in sorted(canon)]


def _braces_on_group(G: groups.FiniteGroup):
    n = G.order
    auts = groups.automorphisms(G)
    aut_index = {p: i for i, p in enumerate(auts)}
    amul = [
        [aut_index[compose(p, q)] for q in auts] for p in auts
    ]
    ident_idx = aut_index[tuple(range(n))]
    assign: list[int | None] = [None] * n
    assign[0] = ident_idx
    out: list[SkewBrace] = []

    def propagate(trail: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for a in range(n):
                fa = assign[a]
                if fa is None:
                    continue
                pa = auts[fa]
                for b in range(n):
                    fb = assign[b]
                    if fb is None:
                        continue
                    c = G.table[a][pa[b]]
                    req = amul[fa][fb]
                    fc = assign[c]
                    if fc is None:
                        assign[c] = req
                        trail.append(c)
                        changed = True
                    elif fc != req:
                        return False
        return True

    def emit() -> None:
        mul = tuple(
            tuple(G.table[a][auts[assign[a]][b]] for b in range(n))
            for a in range(n)
        )
        out.append(braces_mod.verify_brace(G.table, mul))

    def dfs() -> None:
        try:
            a = assign.index(None)
        except ValueError:
            emit()
            return
        for choice in range(len(auts)):
            assign[a] = choice
            trail: list[int] = []
            if propagate(trail):
                dfs()
            for c in trail:
                assign[c] = None
            assign[a] = None

    trail0: list[int] = []
    if propagate(trail0):
        dfs()
    return out


def brute_force_braces(n: int) -> list[SkewBrace]:
    """Oracle: pair up every group table with identity 0, filter, canonicalize."""
    if n > 5:
        raise ValueError("the brace oracle is meant for n <= 5")
    tables = _all_group_tables(n)
    canon: set[bytes] = set()
    for add in tables:
        for mul in tables:
            if braces_mod.diagnose_brace(add, mul) is None:
                canon.add(
                    braces_mod.brace_canonical_form(SkewBrace(n, add, mul))
                )
    return [braces_mod.brace_from_canonical(b) for b in sorted(canon)]


def _all_group_tables(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every group table on {0..n-1} with identity 0."""
    rows_for = {
        a: [p for p in permutations(range(n)) if p[0] == a] for a in range(1, n)
    }
    table: list[tuple[int, ...]] = [tuple(range(n))]
    out: list[tuple[tuple[int, ...], ...]] = []

    def columns_ok() -> bool:
        k = len(table)
        for j in range(n):
            col = [table[i][j] for i in range(k)]
            if len(set(col)) != k:
                return False
        return True

    def dfs(a: int) -> None:
        if a == n:
            candidate = tuple(table)
            if groups.table_diagnostic(candidate) is None:
                out.append(candidate)
            return
        for p in rows_for[a]:
            table.append(p)
            if columns_ok():
                dfs(a + 1)
            table.pop()

    dfs(1)
    return out


# ---------------------------------------------------------------------------
# Corpus statistics


@dataclass(frozen=True)
class CorpusStats:
    size: int
    total: int
    multipermutation: int
    indecomposable: int
    diagonal_cycle: int
    sylow_cyclic_perm_group: int

    @property
    def multipermutation_fraction(self) -> float:
        return self.multipermutation / self.total if self.total else 0.0

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "total": self.total,
            "multipermutation": self.multipermutation,
            "indecomposable": self.indecomposable,
            "diagonal_cycle": self.diagonal_cycle,
            "sylow_cyclic_perm_group": self.sylow_cyclic_perm_group,
            "multipermutation_fraction": round(self.multipermutation_fraction, 4),
        }


def corpus_report(stream) -> CorpusStats:
    """Classify an involutive enumeration stream (iterable of Solutions)."""
    sols = list(stream)
    if not sols:
        raise ValueError("empty corpus")
    size = sols[0].size
    if any(not s.involutive for s in sols):
        raise ValueError("corpus_report expects involutive solutions")
    mp = sum(1 for s in sols if solutions.multipermutation_level(s) is not None)
    ind = sum(1 for s in sols if solutions.is_indecomposable(s))
    diag = sum(1 for s in sols if solutions.diagonal_is_full_cycle(s))
    sylow = sum(
        1
        for s in sols
        if groups.has_all_cyclic_sylows(solutions.permutation_group(s))
    )
    return CorpusStats(size, len(sols), mp, ind, diag, sylow)
