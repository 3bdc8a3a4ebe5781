#!/usr/bin/env python3
"""Tour of the solutions module: verification, constructions, retraction.

Run:  python demos/solutions_tour.py
"""

from yangbaxter import groups, perms, solutions


def main():
    print("=" * 64)
    print("  Braid-identity solutions on a finite set")
    print("=" * 64)

    # The size-4 workhorse: involutive, indecomposable, irretractable.
    s = solutions.verify(
        4,
        [perms.from_cycles(c, 4) for c in ["(12)", "(1324)", "(34)", "(1423)"]],
        [perms.from_cycles(c, 4) for c in ["(14)", "(1243)", "(23)", "(1342)"]],
    )
    print("\nsize-4 solution from cycle data:")
    print("  involutive:       ", s.involutive)
    print("  indecomposable:   ", solutions.is_indecomposable(s))
    print("  retraction fixed: ", solutions.is_isomorphic(solutions.retract(s), s))
    print("  mp level:         ", solutions.multipermutation_level(s))

    # A multipermutation solution whose retraction tower shrinks 5-3-2-1.
    ident = "id"
    t = solutions.verify(
        5,
        [perms.from_cycles(c, 5) for c in [ident, ident, ident, "(45)", "(23)(45)"]],
        [perms.from_cycles(c, 5) for c in [ident, ident, ident, "(45)", "(23)(45)"]],
    )
    sizes = [t.size]
    cur = t
    while cur.size > 1:
        cur = solutions.retract(cur)
        sizes.append(cur.size)
    print("\nretraction tower of the size-5 example:", " -> ".join(map(str, sizes)))
    print("  mp level:", solutions.multipermutation_level(t))

    # Constructions from groups.
    S3 = groups.symmetric_group(3)
    conj = solutions.make_conjugation(S3)
    print("\nconjugation solution on Sym(3): involutive?", conj.involutive)
    Z5 = groups.cyclic_group(5)
    alex = solutions.make_alexander(Z5, tuple((2 * x) % 5 for x in range(5)))
    print("Alexander solution on Z/5 with doubling: size", alex.size)
    for v in (1, 2, 3):
        w = solutions.make_wada(S3, v)
        print(f"group braid map variant {v} on Sym(3): involutive? {w.involutive}")

    # Permutation solutions: involutive exactly when tau is sigma's inverse.
    c = perms.from_cycles("(12345)", 5)
    print("\npermutation solution sigma=(12345), tau=inverse: involutive?",
          solutions.make_permutation(c, perms.invert(c)).involutive)

    # Canonical forms allow exact isomorphism bookkeeping.
    f = (2, 0, 3, 1)
    print("\ncanonical form is relabeling-invariant:",
          solutions.canonical_form(solutions.relabel(s, f))
          == solutions.canonical_form(s))


if __name__ == "__main__":
    main()
