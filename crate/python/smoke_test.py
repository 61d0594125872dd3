"""Smoke test for the lensinv extension module.

Build and install first:  pip install -e crates/py --no-build-isolation
"""

import json
import math

import lensinv


def main():
    two = lensinv.Scalar(3, [2, 0])
    zeta = lensinv.Scalar(3, [0, 1])
    assert (zeta * zeta * zeta) == lensinv.Scalar(3, [1, 0])
    assert (two / two) == lensinv.Scalar(3, [1, 0])
    assert lensinv.Scalar.from_json(zeta.to_json()) == zeta
    re, im = zeta.__complex__()
    assert math.isclose(re, -0.5) and math.isclose(im, math.sqrt(3) / 2)

    h = lensinv.Algebra.uqsl2(3)
    assert h.dim == 27 and h.order == 3
    failed = [name for name, ok, _ in h.verify() if not ok]
    assert not failed, failed

    for p, q in [(2, 1), (3, 1), (5, 2), (7, 3)]:
        kup = h.z_kup(p, q)
        henn = h.z_henn_closed(p, q)
        assert kup == henn, (p, q, str(kup), str(henn))
        assert kup == kup.conjugate()
        print(f"L({p},{q})  Z_Kup = Z_Henn = {kup.decimal(12)}")

    link = lensinv.MorseLink.chain_mail(2, 1)
    assert link.components == 2
    assert h.z_henn(link) == h.z_henn_closed(2, 1)
    assert lensinv.MorseLink(link.to_text()).to_text() == link.to_text()

    data = json.loads(lensinv.exponent_data(5, 2))
    assert data == {"legs": [4, 1, 3, 5, 2], "exponents": [-1, -1, 1, 3, 3], "g_power": 2}
    idx = lensinv.lens_index_data(5, 2)
    assert sorted(idx["N"]) == [1, 2, 3, 4, 5]

    for n in (2, 3):
        text = lensinv.cyclic_group_algebra(n)
        assert all(ok for _, ok, _ in lensinv.verify_structure(text))
        d, rank, ribbon = lensinv.double(text)
        assert rank == n * n and ribbon
        assert json.loads(d)["dim"] == n * n

    try:
        h.z_henn(lensinv.MorseLink.chain_mail(3, 1), budget=10)
    except lensinv.BudgetError:
        pass
    else:
        raise AssertionError("expected BudgetError")

    try:
        h.z_kup(4, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
