"""Walk a small module over Sweedler's 4-dimensional algebra through hat and prime.

Run with ``python demos/sweedler_hat_prime.py``.  Every step prints what was
checked; nothing is asserted silently.
"""

import numpy as np

from hopfcat import sweedler_h4
from hopfcat.functors import (
    check_adjunction, check_equalizer, fd_equivalence_formula, hat, j_module, prime, stability_transport,
)
from hopfcat.instances import sweep_instances
from hopfcat.yd import check_tau_center, is_stable, right_integrals


def show(label, ok):
    print(f"  {'ok ' if ok else 'BAD'} {label}")


def main():
    h = sweedler_h4()
    print(f"{h.name}: dim {h.dim}, S^2 = id? {np.array_equal(h.S(2), h.field.eye(h.dim))}")
    ints = right_integrals(h)
    print(f"right integrals: dim J = {ints.J.dim}, basis {ints.J.basis[:, 0].tolist()}")

    # an anti-Yetter-Drinfeld module (charge -1) feeds hat at index i = 0
    m = sweep_instances(h, -1, 1, seed=7)[0]
    print(f"\nM: dim {m.dim}, charge {m.charge}, stable {is_stable(m)}")
    show("τ is a central structure on M", check_tau_center(m).passed)

    hm = hat(m)
    print(f"hat(M): dim {hm.carrier.dim}, charge {hm.carrier.charge}")
    show("hat(M) satisfies the contramodule YD condition", hm.carrier.verified)
    show("Ŵ M ≅ M^{S²}⊗J", fd_equivalence_formula(m.comodule).verified)
    show("... but not without the twist", not fd_equivalence_formula(m.comodule, no_twist=True).verified)
    show("equalizer presentation gives the same subspace", check_equalizer(m).passed)

    pm = prime(hm.carrier)
    print(f"prime(hat(M)): dim {pm.carrier.dim}, charge {pm.carrier.charge}")
    adj = check_adjunction(m).report
    for c in adj.checks:
        show(c.anchor, c.passed)
    show("stability maps are carried along", stability_transport(m).passed)

    j = j_module(h)
    print(f"\nι⁻¹J: dim {j.dim}, charge {j.charge}, verified {j.verified}")


if __name__ == "__main__":
    main()
