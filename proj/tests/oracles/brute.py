"""Brute-force reference values frozen into the C++ tests.

Pure Python over tuples of images; no shared code with the library.
Run: python3 tests/oracles/brute.py
"""
import itertools
import json
from math import gcd

from sympy.combinatorics import Permutation, PermutationGroup


def cyc(n, text):
    img = list(range(n))
    for part in text.replace(",", " ").strip("()").split(")("):
        if not part.strip():
            continue
        pts = [int(t) - 1 for t in part.split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def mul(a, b):  # a then b
    return tuple(b[i] for i in a)


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def close(gens, n):
    e = tuple(range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def conj(g, x):  # g x g^-1
    return mul(mul(g, x), inv(g))


def classes(G):
    left = set(G)
    sizes = []
    while left:
        x = next(iter(left))
        cl = {conj(g, x) for g in G}
        left -= cl
        sizes.append(len(cl))
    return sorted(sizes)


def all_subgroups_2gen(G, n):
    els = sorted(G)
    subs = set()
    for a in els:
        for b in els:
            subs.add(close([a, b], n))
    return subs


def mark(G, H, K):
    cnt = sum(1 for g in G if all(conj(g, k) in H for k in K))
    return cnt // len(H)


def right_cosets(G, H):
    seen = {}
    reps = []
    for g in sorted(G):
        if g in seen:
            continue
        c = frozenset(mul(h, g) for h in H)
        for x in c:
            seen[x] = len(reps)
        reps.append(g)
    return reps, seen


def splitting(G, H, D, I):
    reps, coset = right_cosets(G, H)
    m = len(reps)
    act = lambda c, g: coset[mul(reps[c], g)]

    def orbits(S):
        left = set(range(m))
        out = []
        while left:
            c = min(left)
            orb = {act(c, s) for s in S}
            left -= orb
            out.append(orb)
        return out

    iorb = orbits(I)
    res = []
    for o in orbits(D):
        sizes = {len(x) for x in iorb if x <= o}
        assert len(sizes) == 1
        e = sizes.pop()
        res.append((e, len(o) // e))
    return sorted(res)


def main():
    out = {}
    n = 4
    S4 = close([cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)")], 4)
    out["s4_order"] = len(S4)
    out["s4_class_sizes"] = classes(S4)
    out["s4_subgroups"] = len(all_subgroups_2gen(S4, 4))
    D6 = close([cyc(6, "(1 2 3 4 5 6)"), cyc(6, "(1 6)(2 5)(3 4)")], 6)
    out["d6_order"] = len(D6)
    out["d6_subgroups"] = len(all_subgroups_2gen(D6, 6))
    A4 = close([cyc(4, "(1 2 3)"), cyc(4, "(2 3 4)")], 4)
    out["a4_subgroups"] = len(all_subgroups_2gen(A4, 4))
    S5 = close([cyc(5, "(1 2)"), cyc(5, "(1 2 3 4 5)")], 5)
    out["s5_class_sizes"] = classes(S5)
    out["s5_subgroups"] = len(all_subgroups_2gen(S5, 5))
    # point stabilizers of S4: transporter between Stab(1) and Stab(2)
    st1 = frozenset(g for g in S4 if g[0] == 0)
    st2 = frozenset(g for g in S4 if g[1] == 1)
    out["s4_stab_transporters"] = sorted(
        Permutation(list(g)).cyclic_form.__repr__() for g in S4 if frozenset(conj(g, x) for x in st1) == st2
    )

    n = 9
    G = close([cyc(9, "(1 2 3)(5 6 7 8 9)"), cyc(9, "(1 2)(3 4)(5 6)")], 9)
    H1 = close([cyc(9, "(1 2)(3 4)(5 6 7)(8 9)"), cyc(9, "(1 3)(2 4)(5 6)")], 9)
    H2 = close([cyc(9, "(1 2)(3 4)(5 6 7)(8 9)"), cyc(9, "(1 4)(2 3)(5 6)")], 9)
    out["a4s5_order"] = len(G)
    out["a4s5_class_count"] = len(classes(G))
    out["h_orders"] = [len(H1), len(H2), len(H1 & H2)]
    out["marks_h1_h1"] = [mark(G, H1, H1), mark(G, H2, H1)]
    out["marks_trivial"] = mark(G, H1, [tuple(range(9))])
    out["conjugate"] = any(frozenset(conj(g, x) for x in H1) == H2 for g in G)
    I = H1 & H2
    p1 = splitting(G, H1, H1, I)
    p2 = splitting(G, H2, H1, I)
    out["split_k1"] = p1
    out["split_k2"] = p2
    out["sum_e"] = [sum(e for e, f in p1), sum(e for e, f in p2)]
    prod = lambda p: eval("*".join(str(e) for e, f in p))
    out["prod_e"] = [prod(p1), prod(p2), 6 ** 14]
    # sympy cross-check of orders
    sg = PermutationGroup([Permutation(list(cyc(9, "(1 2 3)(5 6 7 8 9)"))), Permutation(list(cyc(9, "(1 2)(3 4)(5 6)")))])
    out["a4s5_order_sympy"] = sg.order()
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
