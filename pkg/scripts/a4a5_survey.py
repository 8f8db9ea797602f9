"""Check A4 and A5 on every corpus ring and on hunt candidates.

No nonzero finite *-ring satisfies both: for a prime p dividing the
characteristic pick a, b with a^2 + b^2 = -1 mod p; with the central skew i
from A5, x = a + b i gives 1 + x*x in pR, which is not a unit. This script
confirms the prediction and prints the explicit x for rings satisfying A5.
"""
import itertools

from starlab import axioms as AX
from starlab.corpus import generate_corpus
from starlab.hunts import candidates
from starlab.rings import build_ring
from starlab.spectext import format_ring_spec


def sum_of_two_squares(p):
    for a, b in itertools.product(range(p), repeat=2):
        if (a * a + b * b + 1) % p == 0:
            return a, b


def characteristic(r):
    k, x = 1, r.one
    while x != 0:
        x = r.add(x, r.one)
        k += 1
    return k


def main():
    exprs = list(generate_corpus())
    for i, e in enumerate(candidates(0)):
        if i >= 60:
            break
        exprs.append(e)
    both = 0
    seen = set()
    for e in exprs:
        spec = format_ring_spec(e)
        if spec in seen:
            continue
        seen.add(spec)
        r = build_ring(e)
        a4 = AX.check_axiom(r, "A4")
        a5 = AX.check_axiom(r, "A5")
        if a4.ok and a5.ok:
            both += 1
            print(f"BOTH HOLD (unexpected): {spec}")
        if a5.ok:
            n = characteristic(r)
            p = next(q for q in range(2, n + 1) if n % q == 0)
            a, b = sum_of_two_squares(p)
            i = a5.witness
            x = r.add(sum_ones(r, a), r.mul(sum_ones(r, b), i))
            y = r.add(r.one, r.mul(r.star(x), x))
            print(f"{spec:<40} A5 via {r.render(i)}; p={p}, x={r.render(x)}, 1+x*x={r.render(y)}, "
                  f"unit={bool(r.unit_mask[y])}, A4 witness {r.render(a4.witness) if not a4.ok else '-'}")
    print(f"{len(seen)} rings checked, {both} satisfy A4 and A5")


def sum_ones(r, k):
    x = 0
    for _ in range(k):
        x = r.add(x, r.one)
    return x


if __name__ == "__main__":
    main()
