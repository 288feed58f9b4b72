"""Fibre classes and Baer-sum tables for the small trivial-action cases."""
from monext.action import trivial_action
from monext.cofib import cohomology_monoid, fiber_classify, modes_agree
from monext.finmon import cyclic, is_isomorphic, klein, m2

CASES = [("C2", cyclic(2), "C2", cyclic(2)), ("C2", cyclic(2), "M2", m2()),
         ("M2", m2(), "C2", cyclic(2)), ("C3", cyclic(3), "C2", cyclic(2)),
         ("C2", cyclic(2), "C3", cyclic(3))]


def carrier_name(X):
    for name, N in (("C4", cyclic(4)), ("V4", klein())):
        if is_isomorphic(X, N):
            return name
    return f"order {X.order}"


def main():
    for mname, M, kname, K in CASES:
        S = trivial_action(M, K)
        H = cohomology_monoid(S)
        agree = modes_agree(fiber_classify(S, "fs"), fiber_classify(S, "bf"))
        print(f"M={mname} K={kname}: {len(H.classes)} classes, unit {H.unit}, modes agree {agree}")
        for row in H.table:
            print("   ", list(row))
        print("    carriers:", [carrier_name(E.X) for E in H.classes])


if __name__ == "__main__":
    main()
