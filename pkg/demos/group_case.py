"""Group algebras: graded-equivariant spaces against the structure-constant engine,
and the contratrace ledger over the integers.

Run with ``python demos/group_case.py``.
"""

from hopfcat.groupcase import (
    Z, class_coefficient, class_space, compare_engines, contratrace_eval, direct_sum, integer_point,
    sign_characters, trace_form_iso,
)
from hopfcat.hopf import GroupTable


def main():
    s3 = GroupTable.symmetric(3)
    sign = sign_characters(s3)[0]
    print("S3 conjugacy classes:", [[s3.labels[g] for g in c] for c in s3.conjugacy_classes()])
    for c in s3.conjugacy_classes()[1:]:
        plain = class_space(s3, c[0])
        twisted = class_space(s3, c[0], sign)
        print(f"  class of {s3.labels[c[0]]}: stable {plain.is_stable}, sign-twisted stable {twisted.is_stable}")

    cmp = compare_engines(s3, count=20, seed=1)
    agree = sum(a == b for a, b in zip(cmp.graded, cmp.generic))
    ayd = sum(a.ayd for a in cmp.graded)
    print(f"\n20 random graded spaces: verdicts agree on {agree}, {ayd} anti-Yetter-Drinfeld")

    v = direct_sum(class_space(s3, s3.conjugacy_classes()[2][0]), class_space(s3, 0))
    iso = trace_form_iso(v)
    print(f"trace-form comparison of the two hats on a dim {v.dim} space:", iso.verified)

    print("\nℤ, V = k in degree 3 ⊕ k in degree 5:")
    led = contratrace_eval(direct_sum(integer_point(3), integer_point(5)),
                           [class_coefficient(Z, n) for n in range(0, 8)])
    print(led.format_text())


if __name__ == "__main__":
    main()
