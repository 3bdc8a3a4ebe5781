#!/usr/bin/env python3
"""Tour of skew braces: the lambda/star structure, radical rings, nilpotency.

Run:  python demos/braces_tour.py
"""

from yangbaxter import braces, groups, solutions


def main():
    print("=" * 64)
    print("  Finite skew braces")
    print("=" * 64)

    # Z/4 as a radical ring: product 2xy, circle x + y + 2xy.
    R = braces.mod4_radical_ring()
    A = braces.brace_from_radical_ring(R)
    print("\nZ/4 radical-ring brace:")
    print("  lambda_1 =", A.lam(1), " (swaps 1 and 3)")
    print("  1 * 1    =", A.star(1, 1))
    print("  two-sided:", braces.is_two_sided(A))
    print("  right nilpotency class:", braces.right_nilpotency(A))
    back = braces.ring_from_two_sided(A)
    print("  ring round-trip identical:", back.prod == R.prod)

    # The canonical solution of a brace; involutive iff the addition commutes.
    S3 = groups.symmetric_group(3)
    trivial = braces.make_trivial_brace(S3)
    s = braces.associated_solution(trivial)
    print("\ntrivial brace on Sym(3):")
    print("  solution involutive:", s.involutive)
    measured, predicted = braces.solution_order_check(trivial)
    print(f"  pair-map order {measured}, predicted 2*exp(G/Z(G)) = {predicted}")

    # Exact factorization Sym(3) = <(123)> + <(12)> gives a brace whose
    # multiplicative group is cyclic of order 6.
    rot = [i for i, p in enumerate(S3.perms)
           if p in {(0, 1, 2), (1, 2, 0), (2, 0, 1)}]
    swap = [i for i, p in enumerate(S3.perms) if p in {(0, 1, 2), (1, 0, 2)}]
    E = braces.make_exact_factorization(S3, rot, swap)
    print("\nexact-factorization brace on Sym(3):")
    print("  multiplicative exponent:", groups.exponent(braces.multiplicative_group(E)))

    # Ideals: socle and annihilator, and the quotient brace.
    print("\nideals of the Z/4 brace:")
    print("  socle:", braces.socle(A).members)
    print("  annihilator:", braces.annihilator(A).members)
    Q = braces.quotient_brace(A, braces.socle(A))
    print("  quotient by the socle has size", Q.size)

    # An 8-element radical ring: strictly upper triangular 3x3 over Z/2.
    U = braces.strictly_upper_triangular_ring(2)
    B = braces.brace_from_radical_ring(U)
    print("\nupper-triangular ring brace: size", B.size,
          "| right nilpotency:", braces.right_nilpotency(B))
    print("  its solution is involutive:",
          braces.associated_solution(B).involutive)

    # right nilpotency vs multipermutation on a non-example
    almost = braces.make_almost_trivial_brace(S3)
    print("\nalmost-trivial brace on Sym(3):")
    print("  right nilpotency:", braces.right_nilpotency(almost))
    print("  socle:", braces.socle(almost).members)
    print("  solution involutive:",
          braces.associated_solution(almost).involutive)


if __name__ == "__main__":
    main()
